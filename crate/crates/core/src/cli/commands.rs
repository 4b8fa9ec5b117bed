use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;

use super::args::{json_text, parse_model, parse_window, parse_words, CftpArgs, Command, SimArgs};
use super::config::RunConfig;
use super::Output;
use crate::cftp::{cftp_replicates, Algorithm, CftpSample, Schedule};
use crate::closed_forms::{closed_form_words, Family};
use crate::dynamics::{integrate, FrequencyState};
use crate::error::{Error, Result};
use crate::exact::rational::word_frequencies_exact;
use crate::exact::{nucleotide_frequencies, word_frequencies, ypr_frequencies};
use crate::model::{classify, derive, model_to_value, validate, RateParameters};
use crate::nucleotide::{encode_word, parse_word, word_string, Nucleotide, Ypr};
use crate::simulator::{simulate_replicates, InitialState};
use crate::stats::{chi_square_gof, mean_stderr, proportion_stderr, z_score, ChiSquare};
use crate::table::{fmt_f64, Format, FrequencyTable};

/// Value and, for sampled methods, its standard error.
type Estimate = (f64, Option<f64>);

const DEFAULT_WORDS: [&str; 8] = ["A", "T", "C", "G", "CG", "CA", "TG", "TA"];

/// A way of obtaining word frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Circle,
    Ypr,
    Rational,
    Closed(Family),
    Cftp,
    Simulate,
}

impl Method {
    pub fn name(self) -> String {
        match self {
            Method::Circle => "circle".into(),
            Method::Ypr => "ypr".into(),
            Method::Rational => "rational".into(),
            Method::Closed(f) => format!("closed:{f}"),
            Method::Cftp => "cftp".into(),
            Method::Simulate => "simulate".into(),
        }
    }

    pub fn is_exact(self) -> bool {
        !matches!(self, Method::Cftp | Method::Simulate)
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if let Some(f) = s.strip_prefix("closed:") {
            return Ok(Method::Closed(f.parse()?));
        }
        match s.as_str() {
            "circle" => Ok(Method::Circle),
            "ypr" => Ok(Method::Ypr),
            "rational" => Ok(Method::Rational),
            "cftp" => Ok(Method::Cftp),
            "simulate" => Ok(Method::Simulate),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

/// Exact frequencies of `words` under `p` by an exact `method`.
pub fn exact_values(p: &RateParameters, method: Method, words: &[Vec<Nucleotide>]) -> Result<Vec<f64>> {
    match method {
        Method::Circle | Method::Rational => {
            let mut cache: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
            words
                .iter()
                .map(|w| {
                    if let std::collections::btree_map::Entry::Vacant(slot) = cache.entry(w.len()) {
                        slot.insert(if method == Method::Circle {
                            word_frequencies(p, w.len())?
                        } else {
                            word_frequencies_exact(p, w.len())?.iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect()
                        });
                    }
                    Ok(cache[&w.len()][encode_word(w)])
                })
                .collect()
        }
        Method::Ypr => {
            let ypr = ypr_frequencies(p)?;
            let nuc = nucleotide_frequencies(p, &ypr)?;
            words
                .iter()
                .map(|w| match w.as_slice() {
                    [x] => Ok(nuc[x.index()]),
                    [x, y] => Ypr::from_pair(*x, *y).map(|d| ypr[d.index()]).ok_or_else(|| {
                        Error::Ineligible(format!(
                            "the ypr method gives single letters and YpR pairs, not {}",
                            word_string(w)
                        ))
                    }),
                    _ => Err(Error::Ineligible(format!(
                        "the ypr method gives single letters and YpR pairs, not {}",
                        word_string(w)
                    ))),
                })
                .collect()
        }
        Method::Closed(f) => {
            let table = closed_form_words(f, p)?;
            words
                .iter()
                .map(|w| {
                    let key = word_string(w);
                    table
                        .iter()
                        .find(|(k, _)| *k == key)
                        .map(|(_, v)| *v)
                        .ok_or_else(|| Error::Ineligible(format!("closed:{f} has no formula for {key}")))
                })
                .collect()
        }
        Method::Cftp | Method::Simulate => {
            Err(Error::InvalidArgument(format!("{} is not an exact method", method.name())))
        }
    }
}

fn parse_algorithm(c: &CftpArgs) -> Result<Algorithm> {
    match c.algo.trim().to_ascii_lowercase().as_str() {
        "v1" => Ok(Algorithm::V1),
        "v2" => Ok(Algorithm::V2(c.tau)),
        "special" => Ok(Algorithm::Special),
        other => Err(Error::Parse(format!("unknown algorithm {other:?} (expected v1, v2 or special)"))),
    }
}

fn parse_initial(s: &str, n: usize) -> Result<InitialState> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("uniform") {
        return Ok(InitialState::Uniform);
    }
    let w = parse_word(t.strip_prefix("fixed:").unwrap_or(t))?;
    if w.len() != n {
        return Err(Error::InvalidArgument(format!("initial sequence has {} sites, circle has {n}", w.len())));
    }
    Ok(InitialState::Fixed(w))
}

fn starts_with(x: &[Nucleotide], w: &[Nucleotide]) -> bool {
    x.len() >= w.len() && x[..w.len()] == *w
}

/// Proportion of samples whose interior starts with each word.
fn cftp_estimates(samples: &[CftpSample], words: &[Vec<Nucleotide>]) -> Vec<(f64, f64)> {
    let n = samples.len() as u64;
    words
        .iter()
        .map(|w| {
            let hits = samples.iter().filter(|s| starts_with(&s.window, w)).count() as f64;
            let p = hits / n as f64;
            (p, proportion_stderr(p, n))
        })
        .collect()
}

/// Fraction of circle positions where `w` starts.
fn circular_frequency(x: &[Nucleotide], w: &[Nucleotide]) -> f64 {
    let n = x.len();
    let hits = (0..n).filter(|&i| w.iter().enumerate().all(|(j, &z)| x[(i + j) % n] == z)).count();
    hits as f64 / n as f64
}

/// Per-snapshot means over replicates of the circular word frequencies.
fn simulate_estimates(
    p: &RateParameters,
    sim: &SimArgs,
    times: &[f64],
    replicates: usize,
    seed: u64,
    words: &[Vec<Nucleotide>],
) -> Result<Vec<Vec<(f64, f64)>>> {
    if replicates < 2 {
        return Err(Error::InvalidArgument("need at least two replicates".into()));
    }
    if let Some(w) = words.iter().find(|w| w.len() > sim.sites) {
        return Err(Error::InvalidArgument(format!("word {} is longer than the circle", word_string(w))));
    }
    let init = parse_initial(&sim.init, sim.sites)?;
    let runs = simulate_replicates(p, sim.sites, times, replicates, seed, sim.engine, &init)?;
    Ok((0..times.len())
        .map(|j| {
            words
                .iter()
                .map(|w| {
                    let xs: Vec<f64> = runs.iter().map(|r| circular_frequency(&r[j], w)).collect();
                    mean_stderr(&xs)
                })
                .collect()
        })
        .collect())
}

#[derive(Debug, Serialize)]
struct CftpStats {
    window: (i64, i64),
    algorithm: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    schedule: Option<Schedule>,
    replicates: usize,
    seed: u64,
    mean_depth: f64,
    max_depth: usize,
    mean_horizon: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    chi_square: Option<ChiSquare>,
}

/// Chi-square of the interior law against the exact circle law, for short windows.
fn window_chi_square(p: &RateParameters, samples: &[CftpSample]) -> Result<Option<ChiSquare>> {
    let len = samples.first().map_or(0, |s| s.window.len());
    if len == 0 || len > 5 {
        return Ok(None);
    }
    let law = word_frequencies(p, len)?;
    let mut counts = vec![0u64; law.len()];
    for s in samples {
        counts[encode_word(&s.window)] += 1;
    }
    Ok(Some(chi_square_gof(&counts, &law)?))
}

pub(super) fn dispatch(cmd: Command) -> Output {
    match execute(cmd) {
        Ok(out) => out,
        Err(e) => Output::error(e),
    }
}

fn execute(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Validate { model } => cmd_validate(&model.model),
        Command::Equilib { model, method, words, format } => {
            let p = parse_model(&model.model)?;
            let method: Method = method.parse()?;
            if !method.is_exact() {
                return Err(Error::InvalidArgument(format!("equilib needs an exact method, got {}", method.name())));
            }
            let words = parse_words(&words, &DEFAULT_WORDS)?;
            let values = exact_values(&p, method, &words)?;
            let mut t = FrequencyTable::new();
            for (w, v) in words.iter().zip(values) {
                t.push(word_string(w), method.name(), v, None);
            }
            Ok(Output::ok(t.render(format.format)))
        }
        Command::Simulate { model, sim, snapshot, replicates, seed, words, format } => {
            let p = parse_model(&model.model)?;
            let words = parse_words(&words, &DEFAULT_WORDS)?;
            let mut times = snapshot;
            times.push(sim.t);
            if times.windows(2).any(|w| w[1] < w[0]) || times[0] < 0.0 {
                return Err(Error::InvalidArgument(
                    "snapshot times must be non-negative, increasing and at most --t".into(),
                ));
            }
            let est = simulate_estimates(&p, &sim, &times, replicates, seed, &words)?;
            let engine = match sim.engine {
                crate::simulator::Engine::Clocks => "clocks",
                crate::simulator::Engine::Gillespie => "gillespie",
            };
            let mut t = FrequencyTable::new();
            for (time, row) in times.iter().zip(&est) {
                for (w, &(v, s)) in words.iter().zip(row) {
                    t.push(word_string(w), format!("{engine}@{}", fmt_f64(*time)), v, Some(s));
                }
            }
            Ok(Output::ok(t.render(format.format)))
        }
        Command::Cftp { model, window, replicates, cftp, seed, words, format } => {
            let p = parse_model(&model.model)?;
            let (a, b) = parse_window(&window)?;
            let algo = parse_algorithm(&cftp)?;
            let len = (b - a - 1) as usize;
            let words = if words.words.is_empty() && words.length.is_none() {
                if len > 4 {
                    return Err(Error::InvalidArgument("windows wider than 4 sites need --words or --length".into()));
                }
                crate::nucleotide::all_words(len)
            } else {
                parse_words(&words, &[])?
            };
            if let Some(w) = words.iter().find(|w| w.len() > len) {
                return Err(Error::InvalidArgument(format!("word {} does not fit in the window", word_string(w))));
            }
            if replicates == 0 {
                return Err(Error::InvalidArgument("need at least one replicate".into()));
            }
            let samples = cftp_replicates(&p, a, b, algo, replicates, seed)?;
            let est = cftp_estimates(&samples, &words);
            let mut t = FrequencyTable::new();
            for (w, &(v, s)) in words.iter().zip(&est) {
                t.push(word_string(w), format!("cftp-{}", algo.name()), v, Some(s));
            }
            let n = samples.len() as f64;
            let stats = CftpStats {
                window: (a, b),
                algorithm: algo.name(),
                schedule: match algo {
                    Algorithm::V2(s) => Some(s),
                    _ => None,
                },
                replicates,
                seed,
                mean_depth: samples.iter().map(|s| s.depth as f64).sum::<f64>() / n,
                max_depth: samples.iter().map(|s| s.depth).max().unwrap_or(0),
                mean_horizon: samples.iter().map(|s| s.horizon).sum::<f64>() / n,
                chi_square: window_chi_square(&p, &samples)?,
            };
            Ok(match format.format {
                Format::Json => Output::ok(
                    serde_json::to_string_pretty(&json!({"rows": t, "stats": stats})).expect("serializes") + "\n",
                ),
                Format::Csv => {
                    let mut err = String::new();
                    let v = serde_json::to_value(&stats).expect("serializes");
                    for (k, x) in v.as_object().expect("object") {
                        let _ = writeln!(err, "# {k}: {x}");
                    }
                    Output { stdout: t.to_csv(), stderr: err, code: 0 }
                }
            })
        }
        Command::Dynamics { rho, horizon, step, init, every, format } => {
            cmd_dynamics(rho, horizon, step, &init, every, format.format)
        }
        Command::Compare { model, methods, words, replicates, seed, sim, cftp, format } => {
            let p = parse_model(&model.model)?;
            let methods: Vec<Method> = methods.iter().map(|m| m.parse()).collect::<Result<_>>()?;
            if methods.len() < 2 {
                return Err(Error::InvalidArgument("compare needs at least two methods".into()));
            }
            let words = parse_words(&words, &DEFAULT_WORDS)?;
            cmd_compare(&p, &methods, &words, replicates, seed, &sim, &cftp, format.format)
        }
        Command::Run { config } => {
            let cfg = RunConfig::from_json(&json_text(&config)?)?;
            let args = cfg.to_args()?;
            Ok(super::run(args))
        }
    }
}

fn cmd_validate(model: &str) -> Result<Output> {
    let p = parse_model(model)?;
    let report = validate(&p);
    let derived = derive(&p).ok();
    let doc = json!({
        "model": model_to_value(&p),
        "report": report,
        "classical": classify(&p).iter().map(|k| k.name()).collect::<Vec<_>>(),
        "derived": derived,
    });
    let code = if report.is_valid() { 0 } else { 1 };
    Ok(Output { stdout: serde_json::to_string_pretty(&doc).expect("serializes") + "\n", stderr: String::new(), code })
}

#[derive(serde::Deserialize)]
struct InitDoc {
    #[serde(default)]
    s: f64,
    nuc: [f64; 4],
    ypr: [f64; 4],
}

fn cmd_dynamics(rho: f64, horizon: f64, step: f64, init: &str, every: usize, format: Format) -> Result<Output> {
    let start = match init.trim() {
        "uniform" => FrequencyState::uniform(),
        "stationary" => FrequencyState { s: 0.0, ..FrequencyState::stationary(rho)? },
        other => {
            let d: InitDoc = serde_json::from_str(&json_text(other)?).map_err(|e| Error::Parse(e.to_string()))?;
            let bad = d.nuc.iter().chain(&d.ypr).any(|x| !(0.0..=1.0).contains(x));
            if bad || (d.nuc.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidArgument(
                    "initial frequencies must lie in [0, 1] and F(x) must sum to 1".into(),
                ));
            }
            FrequencyState { s: d.s, nuc: d.nuc, ypr: d.ypr }
        }
    };
    if every == 0 {
        return Err(Error::InvalidArgument("--every must be positive".into()));
    }
    let traj = integrate(&start, rho, horizon, step)?;
    let last = traj.len() - 1;
    let kept: Vec<&FrequencyState> =
        traj.iter().enumerate().filter(|(i, _)| i % every == 0 || *i == last).map(|(_, s)| s).collect();
    let stdout = match format {
        Format::Json => serde_json::to_string_pretty(&kept).expect("serializes") + "\n",
        Format::Csv => {
            let mut s = String::from("s,A,T,C,G,CG,CA,TG,TA\n");
            for st in kept {
                s.push_str(&fmt_f64(st.s));
                for &v in st.nuc.iter().chain(&st.ypr) {
                    let _ = write!(s, ",{}", fmt_f64(v));
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Output::ok(stdout))
}

const EXACT_TOL: f64 = 1e-8;
const Z_MAX: f64 = 4.0;

#[allow(clippy::too_many_arguments)]
fn cmd_compare(
    p: &RateParameters,
    methods: &[Method],
    words: &[Vec<Nucleotide>],
    replicates: usize,
    seed: u64,
    sim: &SimArgs,
    cftp: &CftpArgs,
    format: Format,
) -> Result<Output> {
    let maxlen = words.iter().map(Vec::len).max().unwrap_or(1);
    let mut results: Vec<(Method, Vec<Estimate>)> = Vec::new();
    for &m in methods {
        let r: Vec<Estimate> = match m {
            Method::Cftp => {
                let samples = cftp_replicates(p, 0, maxlen as i64 + 1, parse_algorithm(cftp)?, replicates, seed)?;
                cftp_estimates(&samples, words).into_iter().map(|(v, s)| (v, Some(s))).collect()
            }
            Method::Simulate => simulate_estimates(p, sim, &[sim.t], replicates, seed, words)?
                .remove(0)
                .into_iter()
                .map(|(v, s)| (v, Some(s)))
                .collect(),
            _ => exact_values(p, m, words)?.into_iter().map(|v| (v, None)).collect(),
        };
        results.push((m, r));
    }
    let mut t = FrequencyTable::new();
    for (m, r) in &results {
        for (w, &(v, s)) in words.iter().zip(r) {
            t.push(word_string(w), m.name(), v, s);
        }
    }
    let (rm, rv) = &results[0];
    let (mut worst_diff, mut worst_z) = (0.0f64, 0.0f64);
    for (m, r) in &results[1..] {
        for ((w, &(v, s)), &(v0, s0)) in words.iter().zip(r).zip(rv) {
            match (s, s0) {
                (None, None) => {
                    worst_diff = worst_diff.max((v - v0).abs());
                    t.push(word_string(w), format!("diff:{}-{}", m.name(), rm.name()), v - v0, None);
                }
                _ => {
                    let se = (s.unwrap_or(0.0).powi(2) + s0.unwrap_or(0.0).powi(2)).sqrt();
                    let z = z_score(v, v0, se);
                    worst_z = worst_z.max(z.abs());
                    t.push(word_string(w), format!("z:{}-{}", m.name(), rm.name()), z, None);
                }
            }
        }
    }
    let pass = worst_diff <= EXACT_TOL && worst_z <= Z_MAX;
    let summary = format!(
        "max exact difference {worst_diff:e} (limit {EXACT_TOL:e}); max |z| {worst_z:.3} (limit {Z_MAX}); {}\n",
        if pass { "PASS" } else { "FAIL" }
    );
    let stdout = match format {
        Format::Json => {
            let doc = json!({"rows": t, "max_exact_difference": worst_diff, "max_abs_z": worst_z, "pass": pass});
            serde_json::to_string_pretty(&doc).expect("serializes") + "\n"
        }
        Format::Csv => t.to_csv(),
    };
    Ok(Output { stdout, stderr: summary, code: if pass { 0 } else { 1 } })
}
