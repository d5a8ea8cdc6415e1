//! Deterministic CSV/JSON writers.

use std::fmt::Write as _;
use std::path::Path;

use crate::errors::CmdResult;

/// Full-precision decimal (17 significant digits) so reruns are
/// byte-identical and values round-trip through f64.
pub fn full(value: f64) -> String {
    if value == f64::INFINITY {
        return "inf".to_string();
    }
    format!("{value:.16e}")
}

/// CSV with `# key = value` header lines echoing the effective config.
pub struct Csv {
    buffer: String,
}

impl Csv {
    pub fn new(columns: &[&str], config_echo: &[(String, String)]) -> Csv {
        let mut buffer = String::new();
        for (key, value) in config_echo {
            let _ = writeln!(buffer, "# {key} = {value}");
        }
        let _ = writeln!(buffer, "{}", columns.join(","));
        Csv { buffer }
    }

    pub fn row(&mut self, fields: &[String]) {
        let _ = writeln!(self.buffer, "{}", fields.join(","));
    }

    pub fn write(&self, path: &Path) -> CmdResult<()> {
        std::fs::write(path, &self.buffer)?;
        Ok(())
    }
}

pub fn write_json(path: &Path, value: &serde_json::Value) -> CmdResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn write_json_stdout(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}
