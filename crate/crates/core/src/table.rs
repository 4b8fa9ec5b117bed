//! Tabular output: `word,method,value,stderr`.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shortest round-trip text, in exponent form for very small or large magnitudes.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("unknown format {s:?} (expected csv or json)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyRow {
    pub word: String,
    pub method: String,
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stderr: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FrequencyTable {
    pub rows: Vec<FrequencyRow>,
}

impl FrequencyTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, word: impl Into<String>, method: impl Into<String>, value: f64, stderr: Option<f64>) {
        self.rows.push(FrequencyRow { word: word.into(), method: method.into(), value, stderr });
    }

    pub fn extend(&mut self, other: FrequencyTable) {
        self.rows.extend(other.rows);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// First value recorded for `word` by `method`.
    pub fn get(&self, word: &str, method: &str) -> Option<&FrequencyRow> {
        self.rows.iter().find(|r| r.word == word && r.method == method)
    }

    pub fn methods(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.method) {
                out.push(r.method.clone());
            }
        }
        out
    }

    pub fn words(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.word) {
                out.push(r.word.clone());
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("word,method,value,stderr\n");
        for r in &self.rows {
            let _ = write!(s, "{},{},{}", r.word, r.method, fmt_f64(r.value));
            match r.stderr {
                Some(e) => {
                    let _ = writeln!(s, ",{}", fmt_f64(e));
                }
                None => s.push_str(",\n"),
            }
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some(h) if h.trim() == "word,method,value,stderr" => {}
            _ => return Err(Error::Parse("expected header word,method,value,stderr".into())),
        }
        let mut t = FrequencyTable::new();
        for (n, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 4 {
                return Err(Error::Parse(format!("line {}: expected 4 columns", n + 2)));
            }
            let num = |c: &str| c.trim().parse::<f64>().map_err(|e| Error::Parse(format!("line {}: {e}", n + 2)));
            let stderr = if cols[3].trim().is_empty() { None } else { Some(num(cols[3])?) };
            t.push(cols[0], cols[1], num(cols[2])?, stderr);
        }
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json() + "\n",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let mut t = FrequencyTable::new();
        t.push("CG", "circle", 1.0 / 21.0, None);
        t.push("CA", "cftp", 0.1, Some(0.003));
        assert_eq!(FrequencyTable::from_csv(&t.to_csv()).unwrap(), t);
        assert_eq!(FrequencyTable::from_json(&t.to_json()).unwrap(), t);
        assert!(t.to_csv().starts_with("word,method,value,stderr\nCG,circle,0.047619047619047616,\n"));
        assert_eq!(t.methods(), vec!["circle", "cftp"]);
        assert!(FrequencyTable::from_csv("a,b\n").is_err());
        assert_eq!(fmt_f64(5.551115123125783e-17), "5.551115123125783e-17");
        assert_eq!(fmt_f64(0.25), "0.25");
        assert_eq!(fmt_f64(-0.0), "-0");
    }
}
