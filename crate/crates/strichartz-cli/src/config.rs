//! Flat `key = value` configuration files with `[section]` headers.
//!
//! The format is deliberately small: `#` comments, one key per line,
//! whitespace-insensitive. Readers consume keys; leftover keys in a consumed
//! section are reported as parse errors so typos cannot silently fall back
//! to defaults.

use std::collections::BTreeMap;
use std::path::Path;

use strichartz::rational::{parse_ratio, Ratio};

use crate::errors::{CmdError, CmdResult};

#[derive(Debug, Default)]
pub struct ConfigFile {
    sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> CmdResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CmdError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CmdResult<Self> {
        let mut sections: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        let mut current = String::from("");
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| CmdError::Parse(format!("line {}: bad section header", lineno + 1)))?;
                current = name.trim().to_string();
                sections.entry(current.clone()).or_default();
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CmdError::Parse(format!("line {}: expected key = value", lineno + 1))
            })?;
            sections
                .entry(current.clone())
                .or_default()
                .insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(ConfigFile { sections })
    }

    pub fn section(&self, name: &str) -> CmdResult<Section> {
        let entries = self
            .sections
            .get(name)
            .cloned()
            .ok_or_else(|| CmdError::Parse(format!("missing [{name}] section")))?;
        Ok(Section {
            name: name.to_string(),
            entries,
        })
    }
}

/// One section with take-style accessors; call [`Section::finish`] after
/// consuming everything so unknown keys are flagged.
pub struct Section {
    name: String,
    entries: BTreeMap<String, String>,
}

impl Section {
    fn take(&mut self, key: &str) -> Option<String> {
        self.entries.remove(key)
    }

    pub fn f64(&mut self, key: &str, default: Option<f64>) -> CmdResult<f64> {
        match self.take(key) {
            Some(raw) => {
                if raw == "inf" {
                    return Ok(f64::INFINITY);
                }
                parse_ratio(&raw)
                    .map(|r| r.to_f64())
                    .map_err(|e| CmdError::Parse(format!("[{}] {key}: {e}", self.name)))
            }
            None => default.ok_or_else(|| {
                CmdError::Parse(format!("[{}] missing key {key}", self.name))
            }),
        }
    }

    pub fn usize(&mut self, key: &str, default: Option<usize>) -> CmdResult<usize> {
        match self.take(key) {
            Some(raw) => raw
                .parse()
                .map_err(|_| CmdError::Parse(format!("[{}] {key}: bad integer {raw:?}", self.name))),
            None => default.ok_or_else(|| {
                CmdError::Parse(format!("[{}] missing key {key}", self.name))
            }),
        }
    }

    pub fn u64(&mut self, key: &str, default: Option<u64>) -> CmdResult<u64> {
        match self.take(key) {
            Some(raw) => raw
                .parse()
                .map_err(|_| CmdError::Parse(format!("[{}] {key}: bad integer {raw:?}", self.name))),
            None => default.ok_or_else(|| {
                CmdError::Parse(format!("[{}] missing key {key}", self.name))
            }),
        }
    }

    pub fn bool(&mut self, key: &str, default: bool) -> CmdResult<bool> {
        match self.take(key) {
            Some(raw) => match raw.as_str() {
                "true" | "yes" | "1" => Ok(true),
                "false" | "no" | "0" => Ok(false),
                other => Err(CmdError::Parse(format!(
                    "[{}] {key}: bad boolean {other:?}",
                    self.name
                ))),
            },
            None => Ok(default),
        }
    }

    /// Whitespace-separated list of rationals, e.g. `1/8 1/16 1/32 1/64`.
    pub fn ratio_list(&mut self, key: &str, default: &[Ratio]) -> CmdResult<Vec<Ratio>> {
        match self.take(key) {
            Some(raw) => raw
                .split_whitespace()
                .map(|tok| {
                    parse_ratio(tok)
                        .map_err(|e| CmdError::Parse(format!("[{}] {key}: {e}", self.name)))
                })
                .collect(),
            None => Ok(default.to_vec()),
        }
    }

    /// Whitespace-separated `q:p` pairs, components rational.
    pub fn pair_list(&mut self, key: &str) -> CmdResult<Vec<(Ratio, Ratio)>> {
        match self.take(key) {
            Some(raw) => raw
                .split_whitespace()
                .map(|tok| {
                    let (q, p) = tok.split_once(':').ok_or_else(|| {
                        CmdError::Parse(format!("[{}] {key}: expected q:p, got {tok:?}", self.name))
                    })?;
                    let parse = |s: &str| {
                        if s == "inf" {
                            Ok(Ratio::ZERO)
                        } else {
                            parse_ratio(s).map_err(|e| {
                                CmdError::Parse(format!("[{}] {key}: {e}", self.name))
                            })
                        }
                    };
                    Ok((parse(q)?, parse(p)?))
                })
                .collect(),
            None => Ok(Vec::new()),
        }
    }

    /// Whitespace-separated word list.
    pub fn words(&mut self, key: &str, default: &[&str]) -> CmdResult<Vec<String>> {
        match self.take(key) {
            Some(raw) => Ok(raw.split_whitespace().map(str::to_string).collect()),
            None => Ok(default.iter().map(|s| s.to_string()).collect()),
        }
    }

    pub fn finish(self) -> CmdResult<()> {
        if let Some(key) = self.entries.keys().next() {
            return Err(CmdError::Parse(format!(
                "[{}] unknown key {key:?}",
                self.name
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sections_and_values() {
        let cfg = ConfigFile::parse(
            "# comment\n[sweep]\nn = 2\neps = 1/8 1/16 # trailing\n\n[probe]\nq = 2.5\n",
        )
        .unwrap();
        let mut sweep = cfg.section("sweep").unwrap();
        assert_eq!(sweep.usize("n", None).unwrap(), 2);
        let eps = sweep.ratio_list("eps", &[]).unwrap();
        assert_eq!(eps.len(), 2);
        sweep.finish().unwrap();
        let mut probe = cfg.section("probe").unwrap();
        assert_eq!(probe.f64("q", None).unwrap(), 2.5);
        probe.finish().unwrap();
    }

    #[test]
    fn unknown_keys_are_parse_errors() {
        let cfg = ConfigFile::parse("[sweep]\nn = 2\ntpyo = 1\n").unwrap();
        let mut sweep = cfg.section("sweep").unwrap();
        sweep.usize("n", None).unwrap();
        assert!(matches!(sweep.finish(), Err(CmdError::Parse(_))));
    }

    #[test]
    fn missing_section_is_parse_error() {
        let cfg = ConfigFile::parse("[a]\nx = 1\n").unwrap();
        assert!(matches!(cfg.section("sweep"), Err(CmdError::Parse(_))));
    }
}
