use std::io::{self, Write};

use num_bigint::BigUint;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
}

/// Exact decimal number, however large.
pub fn big(n: &BigUint) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("decimal digits"))
}

/// One command result. In JSON mode it is written as a single line with keys
/// `command, input, result, witness?, warnings`.
#[derive(Debug, Clone)]
pub struct Record {
    command: &'static str,
    input: Map<String, Value>,
    result: Map<String, Value>,
    witness: Option<Value>,
    warnings: Vec<String>,
}

impl Record {
    pub fn new(command: &'static str) -> Self {
        Record {
            command,
            input: Map::new(),
            result: Map::new(),
            witness: None,
            warnings: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.input.insert(key.to_string(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.result.insert(key.to_string(), value.into());
    }

    pub fn witness(&mut self, value: impl Into<Value>) {
        self.witness = Some(value.into());
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    pub fn to_json(&self) -> Value {
        let mut object = Map::new();
        object.insert("command".into(), self.command.into());
        object.insert("input".into(), Value::Object(self.input.clone()));
        object.insert("result".into(), Value::Object(self.result.clone()));
        if let Some(witness) = &self.witness {
            object.insert("witness".into(), witness.clone());
        }
        object.insert(
            "warnings".into(),
            self.warnings.iter().cloned().map(Value::from).collect(),
        );
        Value::Object(object)
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => writeln!(out, "{}", self.to_json()),
            Format::Human => {
                for (key, value) in &self.result {
                    write_field(out, key, value)?;
                }
                if let Some(witness) = &self.witness {
                    write_field(out, "witness", witness)?;
                }
                for warning in &self.warnings {
                    writeln!(out, "warning: {warning}")?;
                }
                Ok(())
            }
        }
    }
}

fn write_field(out: &mut dyn Write, key: &str, value: &Value) -> io::Result<()> {
    match value {
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            writeln!(out, "{key}:")?;
            for item in items {
                writeln!(out, "  - {}", plain(item))?;
            }
            Ok(())
        }
        _ => writeln!(out, "{key}: {}", plain(value)),
    }
}

fn plain(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(plain).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(fields) => fields
            .iter()
            .map(|(k, v)| format!("{k}={}", plain(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}
