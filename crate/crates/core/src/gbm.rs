//! Monte Carlo check of the chain reduction against moments of the integrated
//! geometric Brownian motion `∫₀ᵗ exp{(μ − σ²/2)s + σW_s} ds`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::ReductionError;
use crate::reductions::{s_n_via_generalized, ChainInstance};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GbmParams {
    pub mu: f64,
    pub sigma: f64,
    pub t: f64,
    pub steps: usize,
    pub paths: usize,
    pub seed: u64,
}

impl GbmParams {
    pub fn validate(&self) -> Result<(), ReductionError> {
        let ok = self.t > 0.0
            && self.t.is_finite()
            && self.sigma >= 0.0
            && self.mu.is_finite()
            && self.sigma.is_finite()
            && self.steps >= 1
            && self.paths >= 1;
        if ok {
            Ok(())
        } else {
            Err(ReductionError::Invalid(format!(
                "need t > 0, sigma >= 0, steps >= 1, paths >= 1; got {self:?}"
            )))
        }
    }
}

/// Trapezoidal integral of one path. Brownian increments are exact Gaussian
/// draws on the uniform grid; path `i` reads its own ChaCha stream, so the
/// result is independent of scheduling.
fn path_integral(p: &GbmParams, index: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    rng.set_stream(index);
    let h = p.t / p.steps as f64;
    let sqrt_h = h.sqrt();
    let drift = p.mu - 0.5 * p.sigma * p.sigma;
    let mut w = 0.0;
    let mut prev = 1.0;
    let mut acc = 0.0;
    for i in 1..=p.steps {
        let z: f64 = StandardNormal.sample(&mut rng);
        w += sqrt_h * z;
        let f = (drift * (i as f64 * h) + p.sigma * w).exp();
        acc += 0.5 * (prev + f);
        prev = f;
    }
    p.t * (acc / p.steps as f64)
}

/// One integral sample per path, in path order.
pub fn simulate_integral(p: &GbmParams) -> Result<Vec<f64>, ReductionError> {
    p.validate()?;
    Ok((0..p.paths as u64)
        .into_par_iter()
        .map(|i| path_integral(p, i))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentReport {
    pub n: u32,
    pub lambdas: Vec<f64>,
    pub mc_mean: f64,
    pub mc_stderr: f64,
    pub formula_value: f64,
    pub z_score: f64,
}

/// Chain weights `λ_i = t(μ + (n − i)σ²)`, `i = 1..n`.
pub fn moment_lambdas(p: &GbmParams, n: u32) -> Vec<f64> {
    (1..=n)
        .map(|i| p.t * (p.mu + f64::from(n - i) * p.sigma * p.sigma))
        .collect()
}

/// `E[(∫₀ᵗ f)^n] = t^n · n! · s_n(λ_1..λ_n)`.
pub fn moment_formula(p: &GbmParams, n: u32) -> Result<f64, ReductionError> {
    if n == 0 {
        return Err(ReductionError::Invalid("moment order must be >= 1".into()));
    }
    let chain = ChainInstance::new(moment_lambdas(p, n))?;
    let factorial: f64 = (1..=n).map(f64::from).product();
    Ok(p.t.powi(n as i32) * factorial * s_n_via_generalized(&chain)?)
}

pub fn moment_vs_s_n(p: &GbmParams, n: u32) -> Result<MomentReport, ReductionError> {
    let formula_value = moment_formula(p, n)?;
    let samples = simulate_integral(p)?;
    let powered: Vec<f64> = samples.iter().map(|x| x.powi(n as i32)).collect();
    let count = powered.len() as f64;
    let mean = powered.iter().sum::<f64>() / count;
    let var = if powered.len() > 1 {
        powered.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (count - 1.0)
    } else {
        0.0
    };
    let stderr = (var / count).sqrt();
    let diff = (mean - formula_value).abs();
    let z_score = if stderr > 0.0 {
        diff / stderr
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(MomentReport {
        n,
        lambdas: moment_lambdas(p, n),
        mc_mean: mean,
        mc_stderr: stderr,
        formula_value,
        z_score,
    })
}
