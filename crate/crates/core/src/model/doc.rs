//! JSON model documents.
//!
//! Explicit form:
//! `{"v":{"A":1,"T":1,"C":1,"G":1}, "w":{...}, "r":{"CG:CA":0.5, ...}}`
//! with omitted `r` keys defaulting to 0. Shorthand forms carry a `kind`:
//! `{"kind":"simplest","rho":1}`, `{"kind":"jc69","mu":1}`,
//! `{"kind":"k80","v":1,"w":2}`, `{"kind":"symmetric","vS":..,"vW":..,"wS":..,"wW":..,"rS":..,"rW":..}`,
//! or any classical kind with positional `"args":[...]`.

use serde_json::{json, Map, Value};

use super::{from_classical, simplest, symmetric, validate, ClassicalKind, RateParameters, YprEdge};
use crate::error::{Error, Result};
use crate::nucleotide::Nucleotide;

fn num(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| Error::Parse(format!("{what} must be a number")))
}

fn field(obj: &Map<String, Value>, key: &str) -> Result<f64> {
    num(obj.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))?, key)
}

fn nucleotide_map(v: &Value, what: &str) -> Result<[f64; 4]> {
    let obj = v.as_object().ok_or_else(|| Error::Parse(format!("{what} must be an object")))?;
    let mut out = [0.0; 4];
    for (k, val) in obj {
        let x: Nucleotide = k.parse()?;
        out[x.index()] = num(val, &format!("{what}.{k}"))?;
    }
    for x in Nucleotide::ALL {
        if !obj.contains_key(&x.to_string()) {
            return Err(Error::Parse(format!("{what} is missing {x}")));
        }
    }
    Ok(out)
}

fn check_keys(obj: &Map<String, Value>, allowed: &[&str]) -> Result<()> {
    for k in obj.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(Error::Parse(format!("unexpected field {k:?}")));
        }
    }
    Ok(())
}

/// Parse a model document (explicit or shorthand) and reject hard violations.
pub fn model_from_value(v: &Value) -> Result<RateParameters> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("model document must be a JSON object".into()))?;
    let p = if let Some(kind) = obj.get("kind") {
        let kind = kind.as_str().ok_or_else(|| Error::Parse("kind must be a string".into()))?;
        shorthand(kind, obj)?
    } else {
        check_keys(obj, &["v", "w", "r"])?;
        let mut p = RateParameters::zero();
        p.v = nucleotide_map(obj.get("v").ok_or_else(|| Error::Parse("missing \"v\"".into()))?, "v")?;
        p.w = nucleotide_map(obj.get("w").ok_or_else(|| Error::Parse("missing \"w\"".into()))?, "w")?;
        if let Some(r) = obj.get("r") {
            let r = r.as_object().ok_or_else(|| Error::Parse("r must be an object".into()))?;
            for (k, val) in r {
                let e: YprEdge = k.parse()?;
                p.r[e.index()] = num(val, &format!("r.{k}"))?;
            }
        }
        p
    };
    let report = validate(&p);
    if !report.is_valid() {
        return Err(Error::InvalidParameters(report.hard_violations));
    }
    Ok(p)
}

fn shorthand(kind: &str, obj: &Map<String, Value>) -> Result<RateParameters> {
    match kind.to_ascii_lowercase().as_str() {
        "simplest" => {
            check_keys(obj, &["kind", "rho"])?;
            simplest(field(obj, "rho")?)
        }
        "symmetric" => {
            check_keys(obj, &["kind", "vS", "vW", "wS", "wW", "rS", "rW"])?;
            symmetric(
                field(obj, "vS")?,
                field(obj, "vW")?,
                field(obj, "wS")?,
                field(obj, "wW")?,
                field(obj, "rS")?,
                field(obj, "rW")?,
            )
        }
        other => {
            let kind: ClassicalKind = other.parse()?;
            let args: Vec<f64> = if let Some(a) = obj.get("args") {
                check_keys(obj, &["kind", "args"])?;
                a.as_array()
                    .ok_or_else(|| Error::Parse("args must be an array".into()))?
                    .iter()
                    .map(|x| num(x, "args[]"))
                    .collect::<Result<_>>()?
            } else {
                let names: &[&str] = match kind {
                    ClassicalKind::JC69 => &["mu"],
                    ClassicalKind::K80 => &["v", "w"],
                    ClassicalKind::Tamura => &["v1", "v2", "kappa"],
                    ClassicalKind::TamuraCpG => &["v1", "v2", "kappa", "rho"],
                    _ => {
                        return Err(Error::Parse(format!("{kind} shorthand needs positional \"args\"")));
                    }
                };
                let mut allowed = vec!["kind"];
                allowed.extend_from_slice(names);
                check_keys(obj, &allowed)?;
                names.iter().map(|n| field(obj, n)).collect::<Result<_>>()?
            };
            from_classical(kind, &args)
        }
    }
}

pub fn model_from_json(s: &str) -> Result<RateParameters> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    model_from_value(&v)
}

/// Explicit document with all 16 rates.
pub fn model_to_value(p: &RateParameters) -> Value {
    let nm = |a: &[f64; 4]| {
        let mut m = Map::new();
        for x in Nucleotide::ALL {
            m.insert(x.to_string(), json!(a[x.index()]));
        }
        Value::Object(m)
    };
    let mut r = Map::new();
    for e in YprEdge::ALL {
        r.insert(e.key().to_string(), json!(p.r(e)));
    }
    json!({"v": nm(&p.v), "w": nm(&p.w), "r": Value::Object(r)})
}

pub fn model_to_json(p: &RateParameters) -> String {
    serde_json::to_string_pretty(&model_to_value(p)).expect("model serializes")
}
