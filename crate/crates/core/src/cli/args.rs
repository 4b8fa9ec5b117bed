use std::path::Path;

use clap::{Args, Parser, Subcommand};

use super::DEFAULT_SEED;
use crate::cftp::Schedule;
use crate::error::{Error, Result};
use crate::model::{from_classical, model_from_json, simplest, symmetric, ClassicalKind, RateParameters};
use crate::nucleotide::{all_words, parse_word, Nucleotide};
use crate::simulator::Engine;
use crate::table::Format;

#[derive(Debug, Parser)]
#[command(
    name = "ypr",
    version,
    about = "Stationary laws, simulation and perfect sampling for R/Y + YpR substitution models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArg {
    /// JSON document, path to one, or shorthand such as `simplest:1`,
    /// `k80:1,2`, `symmetric:vS,vW,wS,wW,rS,rW`.
    #[arg(long, default_value = "simplest:1")]
    pub model: String,
}

#[derive(Debug, Clone, Args)]
pub struct WordsArg {
    /// Comma-separated words.
    #[arg(long, value_delimiter = ',', conflicts_with = "length")]
    pub words: Vec<String>,
    /// All words of this length.
    #[arg(long)]
    pub length: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct FormatArg {
    #[arg(long, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SimArgs {
    /// Circle size.
    #[arg(long, default_value_t = 8)]
    pub sites: usize,
    /// Final time.
    #[arg(long, default_value_t = 50.0)]
    pub t: f64,
    #[arg(long, default_value = "clocks")]
    pub engine: Engine,
    /// `uniform` or a fixed starting sequence.
    #[arg(long, default_value = "uniform")]
    pub init: String,
}

#[derive(Debug, Clone, Args)]
pub struct CftpArgs {
    /// `v1`, `v2` or `special`.
    #[arg(long, default_value = "v1")]
    pub algo: String,
    /// Look-back schedule of `v2`: `double` or `linear`.
    #[arg(long, default_value = "double")]
    pub tau: Schedule,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a model and print its derived rates.
    Validate {
        #[command(flatten)]
        model: ModelArg,
    },
    /// Exact stationary word frequencies.
    Equilib {
        #[command(flatten)]
        model: ModelArg,
        /// `circle`, `ypr`, `rational` or `closed:<family>`.
        #[arg(long, default_value = "circle")]
        method: String,
        #[command(flatten)]
        words: WordsArg,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Forward simulation of a circle; word frequencies at snapshot times.
    Simulate {
        #[command(flatten)]
        model: ModelArg,
        #[command(flatten)]
        sim: SimArgs,
        /// Extra snapshot times before `--t`.
        #[arg(long, value_delimiter = ',')]
        snapshot: Vec<f64>,
        #[arg(long, default_value_t = 1000)]
        replicates: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        words: WordsArg,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Perfect samples of the interior of a window.
    Cftp {
        #[command(flatten)]
        model: ModelArg,
        /// Circle `a..b`; sites `a+1 ..= b-1` are returned.
        #[arg(long, default_value = "0..3", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 10_000)]
        replicates: usize,
        #[command(flatten)]
        cftp: CftpArgs,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        words: WordsArg,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Integrate the frequency equations of the simplest model.
    Dynamics {
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        rho: f64,
        #[arg(long, default_value_t = 40.0)]
        horizon: f64,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// `uniform`, `stationary`, or a JSON state (inline or path).
        #[arg(long, default_value = "uniform")]
        init: String,
        /// Print every k-th step (the last step is always printed).
        #[arg(long, default_value_t = 100)]
        every: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Run several methods on the same words and compare them.
    Compare {
        #[command(flatten)]
        model: ModelArg,
        /// At least two of `circle`, `ypr`, `rational`, `closed:<family>`,
        /// `cftp`, `simulate`; the first is the reference.
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        methods: Vec<String>,
        #[command(flatten)]
        words: WordsArg,
        /// Replicates of each sampled method.
        #[arg(long, default_value_t = 100_000)]
        replicates: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        sim: SimArgs,
        #[command(flatten)]
        cftp: CftpArgs,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Run a JSON configuration file.
    Run {
        /// Path to a config, or the config itself.
        config: String,
    },
}

fn read_maybe_file(s: &str) -> Result<String> {
    let t = s.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(s.to_string());
    }
    std::fs::read_to_string(s).map_err(|e| Error::InvalidArgument(format!("cannot read {s}: {e}")))
}

pub(super) fn json_text(s: &str) -> Result<String> {
    read_maybe_file(s)
}

/// Model from a JSON document, a path to one, or `kind:arg,arg,...`.
pub fn parse_model(s: &str) -> Result<RateParameters> {
    let t = s.trim();
    if t.starts_with('{') || Path::new(t).is_file() {
        return model_from_json(&read_maybe_file(t)?);
    }
    let (kind, rest) = t.split_once(':').ok_or_else(|| Error::Parse(format!("cannot read model {s:?}")))?;
    let args: Vec<f64> = rest
        .split(',')
        .map(|a| a.trim().parse::<f64>().map_err(|e| Error::Parse(format!("model argument {a:?}: {e}"))))
        .collect::<Result<_>>()?;
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::Parse(format!("{kind} takes {n} arguments, got {}", args.len())))
        }
    };
    match kind.trim().to_ascii_lowercase().as_str() {
        "simplest" => {
            arity(1)?;
            simplest(args[0])
        }
        "symmetric" => {
            arity(6)?;
            symmetric(args[0], args[1], args[2], args[3], args[4], args[5])
        }
        other => {
            let k: ClassicalKind = other.parse()?;
            arity(k.arity())?;
            from_classical(k, &args)
        }
    }
}

/// `a..b` with `b >= a + 2`.
pub fn parse_window(s: &str) -> Result<(i64, i64)> {
    let (a, b) = s.split_once("..").ok_or_else(|| Error::Parse(format!("window {s:?} is not of the form a..b")))?;
    let num = |x: &str| x.trim().parse::<i64>().map_err(|e| Error::Parse(format!("window bound {x:?}: {e}")));
    let (a, b) = (num(a)?, num(b)?);
    if b < a + 2 {
        return Err(Error::InvalidArgument(format!("window {a}..{b} has no interior site")));
    }
    Ok((a, b))
}

/// Words from `--words`, or all words of `--length`, or `default`.
pub fn parse_words(w: &WordsArg, default: &[&str]) -> Result<Vec<Vec<Nucleotide>>> {
    if let Some(k) = w.length {
        if k == 0 || k > 8 {
            return Err(Error::InvalidArgument(format!("word length must lie in 1..=8, got {k}")));
        }
        return Ok(all_words(k));
    }
    let list: Vec<&str> =
        if w.words.is_empty() { default.to_vec() } else { w.words.iter().map(String::as_str).collect() };
    list.iter().map(|s| parse_word(s.trim())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::YprEdge;

    #[test]
    fn model_shorthands() {
        let p = parse_model("simplest:2").unwrap();
        assert_eq!(p.r(YprEdge::CgTg), 2.0);
        assert_eq!(parse_model("k80:1,3").unwrap().w, [3.0; 4]);
        assert!(parse_model("simplest:1,2").is_err());
        assert!(parse_model("nonsense").is_err());
        assert_eq!(parse_model(r#"{"kind":"simplest","rho":2}"#).unwrap(), p);
        assert_eq!(parse_window("-1..2").unwrap(), (-1, 2));
        assert!(parse_window("0..1").is_err());
    }
}
