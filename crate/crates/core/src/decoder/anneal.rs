//! Simulated-annealing minimum-weight decoding over gauge spins.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliOp};

use super::DecoderContext;

#[derive(Clone, Debug, PartialEq)]
pub struct AnnealParams {
    /// Initial temperature; chosen from `target_acceptance` when absent.
    pub t0: Option<f64>,
    pub target_acceptance: f64,
    pub factor: f64,
    pub sweeps: usize,
    pub min_acceptance: f64,
    pub max_temperatures: usize,
    /// Also propose multiplication by whole stabilizers.
    pub stabilizer_moves: bool,
}

impl Default for AnnealParams {
    fn default() -> Self {
        AnnealParams { t0: None, target_acceptance: 0.8, factor: 0.98, sweeps: 100, min_acceptance: 0.01, max_temperatures: 2000, stabilizer_moves: true }
    }
}

/// Spin configuration α over the moves (gauge generators, optionally
/// followed by stabilizers) with its energy, the weight of start · Π M_e^α(e).
#[derive(Clone, Debug, PartialEq)]
pub struct AnnealState {
    pub spins: Vec<bool>,
    pub class: usize,
    pub energy: usize,
    pub temperature: f64,
}

impl AnnealState {
    pub fn operator(&self, start: &PauliOp, gens: &[Vec<(usize, Pauli)>]) -> PauliOp {
        let mut op = start.clone();
        for (g, &s) in gens.iter().zip(&self.spins) {
            if s {
                for &(q, p) in g {
                    op.mul_at(q, p);
                }
            }
        }
        op
    }

    pub fn energy_from_scratch(&self, start: &PauliOp, gens: &[Vec<(usize, Pauli)>]) -> usize {
        self.operator(start, gens).weight()
    }
}

fn flip_delta(cur: &[Pauli], g: &[(usize, Pauli)]) -> i64 {
    g.iter()
        .map(|&(q, p)| {
            let old = cur[q];
            (old.mul(p) != Pauli::I) as i64 - (old != Pauli::I) as i64
        })
        .sum()
}

/// Anneals α to minimise weight(start · Π M_e^α(e)); returns the best state seen.
pub fn anneal_min(start: &PauliOp, gens: &[Vec<(usize, Pauli)>], params: &AnnealParams, rng: &mut ChaCha8Rng) -> AnnealState {
    let mut cur: Vec<Pauli> = (0..start.n()).map(|q| start.get(q)).collect();
    let mut spins = vec![false; gens.len()];
    let mut energy = start.weight() as i64;
    let mut best = AnnealState { spins: spins.clone(), class: 0, energy: energy as usize, temperature: f64::INFINITY };
    if gens.is_empty() {
        return best;
    }
    let mut t = params.t0.unwrap_or_else(|| {
        let pos: Vec<i64> = gens.iter().map(|g| flip_delta(&cur, g)).filter(|&d| d > 0).collect();
        let mean = if pos.is_empty() { 1.0 } else { pos.iter().sum::<i64>() as f64 / pos.len() as f64 };
        mean / (1.0 / params.target_acceptance).ln()
    });
    for _ in 0..params.max_temperatures {
        let mut accepted = 0usize;
        for _ in 0..params.sweeps {
            for _ in 0..gens.len() {
                let e = rng.gen_range(0..gens.len());
                let d = flip_delta(&cur, &gens[e]);
                if d <= 0 || rng.gen::<f64>() < (-(d as f64) / t).exp() {
                    for &(q, p) in &gens[e] {
                        cur[q] = cur[q].mul(p);
                    }
                    spins[e] ^= true;
                    energy += d;
                    accepted += (d != 0) as usize;
                    if (energy as usize) < best.energy {
                        best = AnnealState { spins: spins.clone(), class: 0, energy: energy as usize, temperature: t };
                    }
                }
            }
        }
        if (accepted as f64) < params.min_acceptance * (params.sweeps * gens.len()) as f64 {
            break;
        }
        t *= params.factor;
    }
    // zero-temperature quench from the best state
    let op = best.operator(start, gens);
    let mut cur: Vec<Pauli> = (0..op.n()).map(|q| op.get(q)).collect();
    let mut spins = best.spins.clone();
    let mut energy = best.energy as i64;
    loop {
        let mut improved = false;
        for (e, g) in gens.iter().enumerate() {
            let d = flip_delta(&cur, g);
            if d < 0 {
                for &(q, p) in g {
                    cur[q] = cur[q].mul(p);
                }
                spins[e] ^= true;
                energy += d;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    if (energy as usize) < best.energy {
        best = AnnealState { spins, class: 0, energy: energy as usize, temperature: 0.0 };
    }
    best
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnealOutcome {
    pub correction: PauliOp,
    pub class: usize,
    /// Lowest weight found for each logical class, indexed by the bit
    /// pattern over (X̄1, Z̄1, X̄2, Z̄2).
    pub minima: Vec<usize>,
}

/// Starts from the simple decoder's correction and anneals within each of
/// the 4^k logical classes; the class with the lowest minimum wins.
pub fn anneal_decode(ctx: &DecoderContext<'_>, s: &crate::bits::BitVec, params: &AnnealParams, seed: u64) -> Result<AnnealOutcome> {
    let code = ctx.code;
    let e0 = ctx.decode_simple(s)?.correction;
    let mut gens: Vec<Vec<(usize, Pauli)>> = code.links().iter().filter(|l| l.generator).map(|l| l.terms.to_vec()).collect();
    if params.stabilizer_moves {
        gens.extend((0..code.stabilizers().len()).map(|s| code.stabilizer_terms(s).clone()));
    }
    let logicals = code.logical_ops();
    if logicals.len() > 16 {
        return Err(Error::Decoder("too many logical operators for class enumeration".into()));
    }
    let mut minima = Vec::new();
    let mut best: Option<(usize, PauliOp)> = None;
    for class in 0..1usize << logicals.len() {
        let mut start = e0.clone();
        for (j, l) in logicals.iter().enumerate() {
            if class >> j & 1 == 1 {
                start.mul_assign(l)?;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(class as u64));
        let st = anneal_min(&start, &gens, params, &mut rng);
        minima.push(st.energy);
        if best.as_ref().is_none_or(|b| st.energy < minima[b.0]) {
            best = Some((class, st.operator(&start, &gens)));
        }
    }
    let (class, correction) = best.expect("at least one class");
    Ok(AnnealOutcome { correction, class, minima })
}
