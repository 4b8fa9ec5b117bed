use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::table::Format;

/// A whole invocation as JSON:
///
/// ```json
/// {"command": "cftp", "model": {"kind": "simplest", "rho": 1},
///  "options": {"window": "0..3", "replicates": 1000, "algo": "v2"},
///  "seed": 7, "format": "json"}
/// ```
///
/// `model` is a model document or a shorthand string. Option keys are the
/// long flag names; arrays become comma-separated lists and `true` a bare flag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: String,
    #[serde(default)]
    pub model: Option<Value>,
    #[serde(default)]
    pub options: Map<String, Value>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub format: Option<Format>,
}

const COMMANDS: [&str; 6] = ["validate", "equilib", "simulate", "cftp", "dynamics", "compare"];

fn scalar(v: &Value, key: &str) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(Error::Parse(format!("option {key:?} must be a string, number or list of those"))),
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("run config: {e}")))
    }

    /// The equivalent command line, program name included.
    pub fn to_args(&self) -> Result<Vec<String>> {
        if !COMMANDS.contains(&self.command.as_str()) {
            return Err(Error::Parse(format!("run config: unknown command {:?}", self.command)));
        }
        let mut args = vec!["ypr".to_string(), self.command.clone()];
        if let Some(m) = &self.model {
            args.push("--model".into());
            args.push(match m {
                Value::String(s) => s.clone(),
                Value::Object(_) => m.to_string(),
                _ => return Err(Error::Parse("run config: model must be an object or a string".into())),
            });
        }
        if let Some(s) = self.seed {
            args.extend(["--seed".into(), s.to_string()]);
        }
        if let Some(f) = self.format {
            let f = match f {
                Format::Csv => "csv",
                Format::Json => "json",
            };
            args.extend(["--format".into(), f.into()]);
        }
        for (k, v) in &self.options {
            if matches!(k.as_str(), "model" | "seed" | "format") {
                return Err(Error::Parse(format!("run config: {k:?} belongs at the top level")));
            }
            let flag = format!("--{k}");
            match v {
                Value::Bool(true) => args.push(flag),
                Value::Bool(false) | Value::Null => {}
                Value::Array(xs) => {
                    let items: Vec<String> = xs.iter().map(|x| scalar(x, k)).collect::<Result<_>>()?;
                    args.extend([flag, items.join(",")]);
                }
                other => args.extend([flag, scalar(other, k)?]),
            }
        }
        Ok(args)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_arguments() {
        let c = RunConfig::from_json(
            r#"{"command":"compare","model":"simplest:1","options":{"methods":["circle","ypr"]},"seed":3}"#,
        )
        .unwrap();
        assert_eq!(
            c.to_args().unwrap(),
            ["ypr", "compare", "--model", "simplest:1", "--seed", "3", "--methods", "circle,ypr"]
        );
        assert!(RunConfig::from_json(r#"{"command":"cftp","bogus":1}"#).is_err());
        let c = RunConfig::from_json(r#"{"command":"run"}"#).unwrap();
        assert!(c.to_args().is_err());
    }
}
