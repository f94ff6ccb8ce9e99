//! Power-series engine for the shock and inverted expansions.
//!
//! All operator polynomials follow the `1 - c_1 B - ... - c_m B^m`
//! convention. Binomial coefficients of `(1-B)^{-d}` come from the
//! multiplicative ratio recursion, never from Gamma differences, so they
//! stay accurate at large order.

/// Streaming coefficients of `num(B) * (1-B)^{-d} / den(B)`.
///
/// State is O(len(num) + len(den)); coefficients are produced one order at
/// a time starting from order 0 (always 1).
pub(crate) struct SeriesStream {
    d: f64,
    num: Vec<f64>,
    den: Vec<f64>,
    /// Ring of the last len(num)+1 binomial coefficients b_l of (1-B)^{-d}.
    bin: Vec<f64>,
    /// Ring of the last len(den) output coefficients.
    out: Vec<f64>,
    order: usize,
}

impl SeriesStream {
    pub(crate) fn new(d: f64, num: &[f64], den: &[f64]) -> Self {
        let mut bin = vec![0.0; num.len() + 1];
        bin[0] = 1.0; // b_0
        let mut out = vec![0.0; den.len().max(1)];
        out[0] = 1.0; // series coefficient at order 0
        SeriesStream {
            d,
            num: num.to_vec(),
            den: den.to_vec(),
            bin,
            out,
            order: 0,
        }
    }

    /// Coefficient at the next order (first call returns order 1).
    pub(crate) fn next_coeff(&mut self) -> f64 {
        self.order += 1;
        let l = self.order;
        // b_l = b_{l-1} (l - 1 + d) / l
        let blen = self.bin.len();
        let b_prev = self.bin[(l - 1) % blen];
        let b_l = b_prev * (l as f64 - 1.0 + self.d) / l as f64;
        self.bin[l % blen] = b_l;

        // multiply by num(B): s_l = b_l - sum_i num_i b_{l-i}
        let mut s = b_l;
        for (i, c) in self.num.iter().enumerate() {
            let idx = i + 1;
            if idx > l {
                break;
            }
            s -= c * self.bin[(l - idx) % blen];
        }

        // divide by den(B): out_l = s + sum_i den_i out_{l-i}
        let olen = self.out.len();
        let mut w = s;
        for (i, c) in self.den.iter().enumerate() {
            let idx = i + 1;
            if idx > l {
                break;
            }
            w += c * self.out[(l - idx) % olen];
        }
        self.out[l % olen] = w;
        w
    }
}

/// Coefficients of `theta(B) / phi(B)` up to order n inclusive.
pub(crate) fn arma_transfer(ar: &[f64], ma: &[f64], n: usize) -> Vec<f64> {
    let mut stream = SeriesStream::new(0.0, ma, ar);
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(1.0);
    for _ in 0..n {
        coeffs.push(stream.next_coeff());
    }
    coeffs
}
