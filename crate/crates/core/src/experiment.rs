//! Monte Carlo driver: trials, threshold scans and crossing estimates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::code::CodeInstance;
use crate::decoder::{judge, sample_depolarizing_with, AnnealParams, DecoderContext, DecoderKind};
use crate::error::{Error, Result};
use crate::lattice::{Family, Lattice, LatticeSpec};

pub const CSV_HEADER: [&str; 10] = ["family", "n", "qubits", "p", "decoder", "trials", "failures", "failure_rate", "stderr", "seed"];

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub sizes: Vec<usize>,
    pub p_start: f64,
    pub p_stop: f64,
    pub p_step: f64,
    pub trials: usize,
    pub decoders: Vec<DecoderKind>,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
    pub max_seconds: Option<f64>,
    pub anneal: AnnealParams,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            sizes: vec![4, 8],
            p_start: 0.005,
            p_stop: 0.04,
            p_step: 0.0025,
            trials: 1000,
            decoders: vec![DecoderKind::Simple, DecoderKind::Improved],
            seed: 1,
            output: None,
            threads: None,
            max_seconds: None,
            anneal: AnnealParams::default(),
        }
    }
}

fn list<T: std::str::FromStr>(v: &str, key: &str) -> Result<Vec<T>> {
    v.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| Error::Config(format!("bad value {x:?} for {key}"))))
        .collect()
}

fn one<T: std::str::FromStr>(v: &str, key: &str) -> Result<T> {
    v.trim().parse::<T>().map_err(|_| Error::Config(format!("bad value {v:?} for {key}")))
}

impl ExperimentConfig {
    /// Large grid: sizes 4, 8, 16, 32 and p from 0 to 5% in 0.1% steps.
    pub fn full() -> Self {
        ExperimentConfig { sizes: vec![4, 8, 16, 32], p_start: 0.0, p_stop: 0.05, p_step: 0.001, ..Default::default() }
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "sizes" => self.sizes = list(value, key)?,
            "p_start" => self.p_start = one(value, key)?,
            "p_stop" => self.p_stop = one(value, key)?,
            "p_step" => self.p_step = one(value, key)?,
            "trials" => self.trials = one(value, key)?,
            "decoder" | "decoders" => self.decoders = list(value, key)?,
            "seed" => self.seed = one(value, key)?,
            "output" => self.output = Some(PathBuf::from(value.trim())),
            "threads" => self.threads = Some(one(value, key)?),
            "max_seconds" => self.max_seconds = Some(one(value, key)?),
            "anneal_t0" => self.anneal.t0 = Some(one(value, key)?),
            "anneal_factor" => self.anneal.factor = one(value, key)?,
            "anneal_sweeps" => self.anneal.sweeps = one(value, key)?,
            "anneal_min_acceptance" => self.anneal.min_acceptance = one(value, key)?,
            "anneal_stabilizer_moves" => self.anneal.stabilizer_moves = one(value, key)?,
            _ => return Err(Error::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Applies `key=value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Config(format!("expected key=value, got {line:?}")))?;
            self.set(k.trim(), v)?;
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut c = ExperimentConfig::default();
        c.apply_text(text)?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p_step > 0.0) {
            return Err(Error::Config("p_step must be positive".into()));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.p_start) || !(0.0..=1.0).contains(&self.p_stop) {
            return Err(Error::Config("p values must lie in [0, 1]".into()));
        }
        if self.sizes.is_empty() || self.decoders.is_empty() {
            return Err(Error::Config("sizes and decoders must be non-empty".into()));
        }
        if self.p_grid().is_empty() {
            return Err(Error::Config("empty p grid".into()));
        }
        Ok(())
    }

    pub fn p_grid(&self) -> Vec<f64> {
        if !(self.p_step > 0.0) {
            return Vec::new();
        }
        let count = ((self.p_stop - self.p_start) / self.p_step + 1e-9).floor();
        if count < 0.0 {
            return Vec::new();
        }
        (0..=count as usize).map(|i| ((self.p_start + i as f64 * self.p_step) * 1e9).round() / 1e9).collect()
    }
}

/// Worker count: `TSC_THREADS` overrides the configured value.
pub fn thread_count(configured: Option<usize>) -> usize {
    std::env::var("TSC_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .or(configured)
        .unwrap_or_else(rayon::current_num_threads)
        .max(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct TrialStats {
    pub trials: usize,
    pub failures: usize,
    pub fallbacks: usize,
}

/// Runs `trials` independent decoding trials; trial i uses seed `seed + i`.
pub fn run_trials(ctx: &DecoderContext<'_>, p: f64, trials: usize, decoder: DecoderKind, seed: u64, anneal: &AnnealParams) -> Result<TrialStats> {
    let code = ctx.code;
    let one = |i: usize| -> Result<TrialStats> {
        let s_i = seed.wrapping_add(i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(s_i);
        let e = sample_depolarizing_with(code.num_qubits(), p, &mut rng)?;
        let syn = code.syndrome(&e)?;
        let d = ctx.decode(decoder, &syn, s_i, anneal)?;
        let r = judge(code, &e, &d.correction)
            .map_err(|err| Error::Decoder(format!("trial {i} (seed {s_i}, p {p}, {decoder}): {err}")))?;
        Ok(TrialStats { trials: 1, failures: !r.success as usize, fallbacks: d.fallbacks })
    };
    (0..trials).into_par_iter().map(one).try_reduce(TrialStats::default, |a, b| {
        Ok(TrialStats { trials: a.trials + b.trials, failures: a.failures + b.failures, fallbacks: a.fallbacks + b.fallbacks })
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub family: Family,
    pub n: usize,
    pub qubits: usize,
    pub p: f64,
    pub decoder: DecoderKind,
    pub trials: usize,
    pub failures: usize,
    pub seed: u64,
}

impl Record {
    pub fn failure_rate(&self) -> f64 {
        self.failures as f64 / self.trials as f64
    }

    /// Binomial standard error.
    pub fn stderr(&self) -> f64 {
        let f = self.failure_rate();
        (f * (1.0 - f) / self.trials as f64).sqrt()
    }

    fn fields(&self) -> [String; 10] {
        [
            self.family.to_string(),
            self.n.to_string(),
            self.qubits.to_string(),
            format!("{}", self.p),
            self.decoder.to_string(),
            self.trials.to_string(),
            self.failures.to_string(),
            format!("{:.6}", self.failure_rate()),
            format!("{:.6}", self.stderr()),
            self.seed.to_string(),
        ]
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ThresholdCurve {
    pub records: Vec<Record>,
    /// True when the time budget stopped the scan early.
    pub truncated: bool,
}

impl ThresholdCurve {
    pub fn for_decoder(&self, d: DecoderKind) -> Vec<Record> {
        self.records.iter().filter(|r| r.decoder == d).cloned().collect()
    }
}

pub fn read_csv<R: std::io::Read>(r: R) -> Result<Vec<Record>> {
    let mut rd = csv::Reader::from_reader(r);
    let headers = rd.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != CSV_HEADER {
        return Err(Error::Config(format!("unexpected CSV header {headers:?}")));
    }
    let mut out = Vec::new();
    for (i, row) in rd.records().enumerate() {
        let row = row?;
        let f = |k: usize| row.get(k).unwrap_or("");
        let bad = |k: usize| Error::Parse { line: i + 2, msg: format!("bad {} {:?}", CSV_HEADER[k], f(k)) };
        out.push(Record {
            family: f(0).parse()?,
            n: f(1).parse().map_err(|_| bad(1))?,
            qubits: f(2).parse().map_err(|_| bad(2))?,
            p: f(3).parse().map_err(|_| bad(3))?,
            decoder: f(4).parse()?,
            trials: f(5).parse().map_err(|_| bad(5))?,
            failures: f(6).parse().map_err(|_| bad(6))?,
            seed: f(9).parse().map_err(|_| bad(9))?,
        });
    }
    Ok(out)
}

/// Scans the (n, p, decoder) grid, writing each CSV record as soon as it is done.
pub fn threshold_scan<W: Write>(config: &ExperimentConfig, out: W) -> Result<ThresholdCurve> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count(config.threads))
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    w.flush()?;
    let start = Instant::now();
    let mut curve = ThresholdCurve::default();
    'outer: for &n in &config.sizes {
        let code = CodeInstance::build(&Lattice::generate(LatticeSpec::FiveSquares { n })?)?;
        let ctx = DecoderContext::new(&code)?;
        for p in config.p_grid() {
            for &d in &config.decoders {
                if config.max_seconds.is_some_and(|m| start.elapsed().as_secs_f64() > m) {
                    curve.truncated = true;
                    break 'outer;
                }
                let st = pool.install(|| run_trials(&ctx, p, config.trials, d, config.seed, &config.anneal))?;
                let r = Record {
                    family: Family::FiveSquares,
                    n,
                    qubits: code.num_qubits(),
                    p,
                    decoder: d,
                    trials: st.trials,
                    failures: st.failures,
                    seed: config.seed,
                };
                w.write_record(r.fields())?;
                w.flush()?;
                curve.records.push(r);
            }
        }
    }
    Ok(curve)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairCrossing {
    pub small: usize,
    pub large: usize,
    pub p: f64,
    pub sigma: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Crossing {
    Found { p_c: f64, uncertainty: f64, pairs: Vec<PairCrossing> },
    NoCrossing,
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Crossing::NoCrossing => write!(f, "no crossing in range"),
            Crossing::Found { p_c, uncertainty, pairs } => {
                writeln!(f, "p_c = {p_c:.5} +/- {uncertainty:.5}")?;
                for c in pairs {
                    writeln!(f, "  n={} vs n={}: {:.5} +/- {:.5}", c.small, c.large, c.p, c.sigma)?;
                }
                Ok(())
            }
        }
    }
}

fn pair_crossing(a: &BTreeMap<u64, &Record>, b: &BTreeMap<u64, &Record>) -> Option<(f64, f64)> {
    let common: Vec<u64> = a.keys().filter(|k| b.contains_key(k)).copied().collect();
    if common.len() < 2 {
        return None;
    }
    let p: Vec<f64> = common.iter().map(|k| a[k].p).collect();
    let d: Vec<f64> = common.iter().map(|k| b[k].failure_rate() - a[k].failure_rate()).collect();
    let s: Vec<f64> = common.iter().map(|k| (a[k].stderr().powi(2) + b[k].stderr().powi(2)).sqrt()).collect();
    if !d.iter().any(|&x| x < 0.0) || !d.iter().any(|&x| x > 0.0) {
        return None;
    }
    // step fit: larger lattice better below the crossing, worse above it
    let mut best = (0usize, 0usize);
    for i in 0..d.len() - 1 {
        let score = d[..=i].iter().filter(|&&x| x < 0.0).count() + d[i + 1..].iter().filter(|&&x| x > 0.0).count();
        if score > best.1 {
            best = (i, score);
        }
    }
    let i = best.0;
    let (d0, d1) = (d[i], d[i + 1]);
    let (pc, slope) = if d0 < d1 && d0 <= 0.0 && d1 >= 0.0 {
        let t = if d1 == d0 { 0.5 } else { -d0 / (d1 - d0) };
        (p[i] + t * (p[i + 1] - p[i]), (d1 - d0) / (p[i + 1] - p[i]))
    } else {
        (0.5 * (p[i] + p[i + 1]), 0.0)
    };
    let sd = 0.5 * (s[i] + s[i + 1]);
    let sigma = if slope > 0.0 { (sd / slope).min(p[i + 1] - p[i]) } else { 0.5 * (p[i + 1] - p[i]) };
    Some((pc, sigma))
}

/// Crossing of failure-rate curves of adjacent lattice sizes, by linear
/// interpolation of their difference; combined over size pairs.
pub fn estimate_crossing(records: &[Record]) -> Crossing {
    let sizes: BTreeSet<usize> = records.iter().map(|r| r.n).collect();
    let by_size = |n: usize| -> BTreeMap<u64, &Record> {
        records.iter().filter(|r| r.n == n).map(|r| ((r.p * 1e9).round() as u64, r)).collect()
    };
    let sizes: Vec<usize> = sizes.into_iter().collect();
    let mut pairs = Vec::new();
    for w in sizes.windows(2) {
        if let Some((p, sigma)) = pair_crossing(&by_size(w[0]), &by_size(w[1])) {
            pairs.push(PairCrossing { small: w[0], large: w[1], p, sigma });
        }
    }
    if pairs.is_empty() {
        return Crossing::NoCrossing;
    }
    let m = pairs.len() as f64;
    let p_c = pairs.iter().map(|c| c.p).sum::<f64>() / m;
    let spread = if pairs.len() > 1 { (pairs.iter().map(|c| (c.p - p_c).powi(2)).sum::<f64>() / (m - 1.0)).sqrt() } else { 0.0 };
    let stat = (pairs.iter().map(|c| c.sigma.powi(2)).sum::<f64>()).sqrt() / m;
    Crossing::Found { p_c, uncertainty: (spread * spread + stat * stat).sqrt(), pairs }
}
