//! Output plumbing shared by every subcommand.

use clap::ValueEnum;
use hyperdecay::ModelSpec;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Bare payload rows, ready for plotting tools.
    Csv,
    /// Envelope with the command, the resolved model and parameters, the
    /// payload, and the tolerances that were in effect.
    Json,
}

pub struct Report {
    pub command: &'static str,
    pub model: Option<ModelSpec>,
    pub parameters: Map<String, Value>,
    pub tolerances: Map<String, Value>,
    pub csv: String,
    pub data: Value,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            model: None,
            parameters: Map::new(),
            tolerances: Map::new(),
            csv: String::new(),
            data: Value::Null,
        }
    }

    pub fn param(&mut self, key: &str, value: Value) -> &mut Self {
        self.parameters.insert(key.to_string(), value);
        self
    }

    pub fn tolerance(&mut self, key: &str, value: f64) -> &mut Self {
        self.tolerances.insert(key.to_string(), json!(value));
        self
    }

    pub fn emit(self, format: Format) {
        match format {
            Format::Csv => print!("{}", self.csv),
            Format::Json => {
                let envelope = json!({
                    "command": self.command,
                    "model": self.model,
                    "parameters": Value::Object(self.parameters),
                    "data": self.data,
                    "metadata": {
                        "version": env!("CARGO_PKG_VERSION"),
                        "tolerances": Value::Object(self.tolerances),
                    },
                });
                println!("{envelope:#}");
            }
        }
    }
}

/// Header line plus one row per item; every line newline-terminated.
pub fn csv_table<I: IntoIterator<Item = String>>(header: &str, rows: I) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}
