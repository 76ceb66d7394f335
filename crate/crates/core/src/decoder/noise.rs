use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliOp};

/// I.i.d. depolarizing error: each qubit gets X, Y or Z with probability p/3.
pub fn sample_depolarizing(n: usize, p: f64, seed: u64) -> Result<PauliOp> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_depolarizing_with(n, p, &mut rng)
}

pub fn sample_depolarizing_with<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<PauliOp> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Probability(p));
    }
    let mut e = PauliOp::identity(n);
    if p == 0.0 {
        return Ok(e);
    }
    for q in 0..n {
        if rng.gen::<f64>() < p {
            e.set(q, Pauli::NONTRIVIAL[rng.gen_range(0..3)]);
        }
    }
    Ok(e)
}

/// Inverse temperature of the depolarizing channel, β = −½ ln(p / 3(1−p)).
pub fn beta_of_p(p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 0.75) {
        return Err(Error::Probability(p));
    }
    Ok(-0.5 * (p / (3.0 * (1.0 - p))).ln())
}
