use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tsc::code::{verify_code_with, VerifyOptions};
use tsc::decoder::{anneal_decode, judge, sample_depolarizing_with, AnnealParams, DecoderContext, DecoderKind};
use tsc::experiment::{estimate_crossing, read_csv, thread_count, threshold_scan, ExperimentConfig};
use tsc::lattice::{load_lattice, save_lattice};
use tsc::measurement::{measurement_counts, synthesize_schedule};
use tsc::{CodeInstance, Error, Family, Lattice, LatticeSpec, PauliOp, Result};

#[derive(Parser)]
#[command(name = "tsc", version, about = "Topological subsystem codes: build, verify, schedule and decode")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a catalog lattice and write it as a lattice file.
    Build {
        #[arg(long)]
        family: Family,
        /// Five-squares size (n × 2n unit cells).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        lx: Option<usize>,
        #[arg(long)]
        ly: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check commutation, centralizer dimension and logical pairing.
    Verify {
        #[arg(long)]
        code: PathBuf,
        /// Skip the dense rank computation.
        #[arg(long)]
        no_rank: bool,
    },
    /// Print measurement counts and link schedules.
    Schedule {
        #[arg(long)]
        code: PathBuf,
        /// Print the full schedule of this stabilizer only.
        #[arg(long)]
        stabilizer: Option<usize>,
    },
    /// Decode a single random error.
    Trial {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "improved")]
        decoder: DecoderKind,
    },
    /// Failure-rate scan over lattice sizes and error rates, written as CSV.
    Threshold {
        /// Config file of key=value lines, or a single inline key=value; repeatable.
        #[arg(long)]
        config: Vec<String>,
        /// Sizes 4, 8, 16, 32 and p from 0 to 5% in 0.1% steps.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        max_seconds: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Simulated-annealing decoding of one random error, with per-class minima.
    Anneal {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        sweeps: Option<usize>,
        #[arg(long)]
        factor: Option<f64>,
        #[arg(long)]
        t0: Option<f64>,
    },
    /// Estimate the threshold from a CSV written by `threshold`.
    Crossing {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        decoder: Option<DecoderKind>,
    },
}

fn load_code(path: &PathBuf) -> Result<CodeInstance> {
    let text = fs::read_to_string(path)?;
    CodeInstance::build(&load_lattice(&text)?)
}

fn sparse(op: &PauliOp) -> String {
    let t: Vec<String> = op.terms().iter().map(|(q, p)| format!("{}{q}", p.to_char())).collect();
    if t.is_empty() {
        "I".into()
    } else {
        t.join(" ")
    }
}

fn describe(code: &CodeInstance) -> String {
    let fam = code.family().map_or("custom".to_string(), |f| f.to_string());
    let size = code.layout().map_or(String::new(), |l| format!(" n={}", l.n()));
    format!("code {fam}{size} qubits={} k={}", code.num_qubits(), code.k())
}

fn run(cli: Cli) -> Result<bool> {
    let mut out = io::stdout().lock();
    match cli.cmd {
        Cmd::Build { family, n, lx, ly, output } => {
            let need = |v: Option<usize>, name: &str| v.ok_or_else(|| Error::Config(format!("--{name} is required for {family}")));
            let spec = match family {
                Family::FiveSquares => LatticeSpec::FiveSquares { n: need(n, "n")? },
                Family::SquareOctagon => LatticeSpec::SquareOctagon { lx: need(lx, "lx")?, ly: need(ly, "ly")? },
                Family::Honeycomb => LatticeSpec::Honeycomb { lx: need(lx, "lx")?, ly: need(ly, "ly")? },
            };
            let text = save_lattice(&Lattice::generate(spec)?);
            match output {
                Some(p) => fs::write(p, text)?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Cmd::Verify { code, no_rank } => {
            let code = load_code(&code)?;
            writeln!(out, "{}", describe(&code))?;
            let report = verify_code_with(&code, VerifyOptions { rank_check: !no_rank });
            write!(out, "{report}")?;
            return Ok(report.ok());
        }
        Cmd::Schedule { code, stabilizer } => {
            let code = load_code(&code)?;
            writeln!(out, "{}", describe(&code))?;
            match stabilizer {
                Some(s) => {
                    if s >= code.stabilizers().len() {
                        return Err(Error::Config(format!("no stabilizer {s}")));
                    }
                    write!(out, "{}", synthesize_schedule(&code, s)?)?;
                }
                None => {
                    for (role, count) in measurement_counts(&code)? {
                        let s = code.stabilizer_ids(role)[0];
                        let sch = synthesize_schedule(&code, s)?;
                        let sizes: Vec<String> = sch.levels.iter().map(|l| l.len().to_string()).collect();
                        writeln!(out, "{role}: {count} measurements, levels [{}]", sizes.join(" "))?;
                    }
                }
            }
        }
        Cmd::Trial { code, p, seed, decoder } => {
            let code = load_code(&code)?;
            let ctx = DecoderContext::new(&code)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let e = sample_depolarizing_with(code.num_qubits(), p, &mut rng)?;
            let syn = code.syndrome(&e)?;
            let d = ctx.decode(decoder, &syn, seed, &AnnealParams::default())?;
            let r = judge(&code, &e, &d.correction)?;
            writeln!(out, "{}", describe(&code))?;
            writeln!(out, "p {p} seed {seed} decoder {decoder}")?;
            writeln!(out, "error ({}): {}", e.weight(), sparse(&e))?;
            writeln!(out, "syndrome weight: {}", syn.count_ones())?;
            writeln!(out, "correction ({}): {}", d.correction.weight(), sparse(&d.correction))?;
            let bits: String = r.class_bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
            writeln!(out, "residual class: {bits}")?;
            writeln!(out, "verdict: {}", if r.success { "success" } else { "failure" })?;
        }
        Cmd::Threshold { config, full, max_seconds, output } => {
            let mut cfg = if full { ExperimentConfig::full() } else { ExperimentConfig::default() };
            for c in &config {
                let path = PathBuf::from(c);
                if path.is_file() {
                    cfg.apply_text(&fs::read_to_string(&path)?)?;
                } else {
                    cfg.apply_text(c)?;
                }
            }
            if max_seconds.is_some() {
                cfg.max_seconds = max_seconds;
            }
            if output.is_some() {
                cfg.output = output;
            }
            cfg.validate()?;
            let curve = match &cfg.output {
                Some(p) => threshold_scan(&cfg, fs::File::create(p)?)?,
                None => threshold_scan(&cfg, io::stdout())?,
            };
            if curve.truncated {
                eprintln!("stopped after {} records: time budget exhausted", curve.records.len());
            }
            for &d in &cfg.decoders {
                eprintln!("{d}: {}", estimate_crossing(&curve.for_decoder(d)));
            }
        }
        Cmd::Anneal { code, p, seed, sweeps, factor, t0 } => {
            let code = load_code(&code)?;
            let ctx = DecoderContext::new(&code)?;
            let mut params = AnnealParams::default();
            params.t0 = t0;
            if let Some(s) = sweeps {
                params.sweeps = s;
            }
            if let Some(f) = factor {
                params.factor = f;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let e = sample_depolarizing_with(code.num_qubits(), p, &mut rng)?;
            let syn = code.syndrome(&e)?;
            let a = anneal_decode(&ctx, &syn, &params, seed)?;
            let r = judge(&code, &e, &a.correction)?;
            writeln!(out, "{}", describe(&code))?;
            writeln!(out, "error weight {}", e.weight())?;
            for (c, m) in a.minima.iter().enumerate() {
                writeln!(out, "class {c:0w$b}: minimum weight {m}", w = code.logicals().len() * 2)?;
            }
            writeln!(out, "chosen class {:0w$b}", a.class, w = code.logicals().len() * 2)?;
            writeln!(out, "verdict: {}", if r.success { "success" } else { "failure" })?;
        }
        Cmd::Crossing { csv, decoder } => {
            let records = read_csv(fs::File::open(csv)?)?;
            let mut kinds: Vec<DecoderKind> = Vec::new();
            for r in &records {
                if !kinds.contains(&r.decoder) && decoder.is_none_or(|d| d == r.decoder) {
                    kinds.push(r.decoder);
                }
            }
            for d in kinds {
                let rs: Vec<_> = records.iter().filter(|r| r.decoder == d).cloned().collect();
                write!(out, "{d}: {}", estimate_crossing(&rs))?;
                writeln!(out)?;
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = rayon::ThreadPoolBuilder::new().num_threads(thread_count(None)).build_global();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
