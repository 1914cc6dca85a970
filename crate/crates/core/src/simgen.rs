//! Seeded generators for the simulation designs.
//!
//! Every design returns the dataset together with its true active predictors. Output is a
//! pure function of `(spec, seed)`; replication seeds are derived by hashing, never drawn from
//! a shared stream, so results do not depend on scheduling.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Poisson, StandardNormal};

use crate::data::{Dataset, ResponseKind};
use crate::error::{Result, ScreenError};

/// Mean cap applied before the Poisson draw in design 6.
pub const POISSON_MEAN_CAP: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExperimentId {
    E1a,
    E1b,
    E1c,
    E1d,
    E2a,
    E2b,
    E2c,
    E3,
    E4,
    E5,
    E6,
    E7,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 12] = [
        ExperimentId::E1a,
        ExperimentId::E1b,
        ExperimentId::E1c,
        ExperimentId::E1d,
        ExperimentId::E2a,
        ExperimentId::E2b,
        ExperimentId::E2c,
        ExperimentId::E3,
        ExperimentId::E4,
        ExperimentId::E5,
        ExperimentId::E6,
        ExperimentId::E7,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentId::E1a => "1a",
            ExperimentId::E1b => "1b",
            ExperimentId::E1c => "1c",
            ExperimentId::E1d => "1d",
            ExperimentId::E2a => "2a",
            ExperimentId::E2b => "2b",
            ExperimentId::E2c => "2c",
            ExperimentId::E3 => "3",
            ExperimentId::E4 => "4",
            ExperimentId::E5 => "5",
            ExperimentId::E6 => "6",
            ExperimentId::E7 => "7",
        }
    }

    /// `(n, p)` used when no override is given.
    pub fn default_size(&self) -> (usize, usize) {
        match self {
            ExperimentId::E7 => (400, 1000),
            _ => (200, 3000),
        }
    }

    /// Zero-based indices of the true active predictors.
    pub fn active(&self) -> Vec<usize> {
        match self {
            ExperimentId::E1a | ExperimentId::E1b | ExperimentId::E2c => (0..8).collect(),
            ExperimentId::E1c
            | ExperimentId::E1d
            | ExperimentId::E2a
            | ExperimentId::E2b
            | ExperimentId::E6 => vec![0, 1],
            ExperimentId::E3 | ExperimentId::E4 => vec![0, 1, 2],
            ExperimentId::E5 => vec![0, 1, 2, 3, 4, 19, 20, 21],
            ExperimentId::E7 => vec![0, 1, 2, 3],
        }
    }

    pub fn kind(&self) -> ResponseKind {
        match self {
            ExperimentId::E6 => ResponseKind::Count,
            _ => ResponseKind::Continuous,
        }
    }

    /// Slice counts used for this design: the capped three-class map for counts, otherwise
    /// `3..=ceil(n^(1/3))`.
    pub fn schemes(&self, n: usize) -> Vec<usize> {
        match self.kind() {
            ResponseKind::Count => vec![3],
            _ => crate::fused::default_schemes(n).counts,
        }
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentId {
    type Err = ScreenError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        ExperimentId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or(ScreenError::UnknownExperiment(s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CovarianceKind {
    /// `sigma_jk = rho^|j - k|`.
    Ar(f64),
    /// `sigma_jj = v`, zero off the diagonal.
    DiagonalVar(f64),
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceSpec {
    pub kind: CovarianceKind,
    pub dim: usize,
}

impl CovarianceSpec {
    pub fn new(kind: CovarianceKind, dim: usize) -> Result<Self> {
        match kind {
            CovarianceKind::Ar(rho) if !(rho > -1.0 && rho < 1.0) => {
                return Err(ScreenError::invalid(format!("AR coefficient {rho} outside (-1, 1)")))
            }
            CovarianceKind::DiagonalVar(v) if !(v > 0.0 && v.is_finite()) => {
                return Err(ScreenError::invalid(format!("variance {v} must be positive")))
            }
            _ => {}
        }
        if dim == 0 {
            return Err(ScreenError::invalid("covariance dimension must be positive"));
        }
        Ok(CovarianceSpec { kind, dim })
    }
}

/// `n` draws from `N_p(0, Sigma)`, returned column-major.
///
/// The AR case uses the exact recursion `X_1 = Z_1`, `X_j = rho X_{j-1} + sqrt(1 - rho^2) Z_j`,
/// which avoids factoring a `p x p` matrix.
pub fn sample_mvn<R: Rng + ?Sized>(n: usize, cov: &CovarianceSpec, rng: &mut R) -> Vec<Vec<f64>> {
    let p = cov.dim;
    let mut cols = vec![vec![0.0; n]; p];
    match cov.kind {
        CovarianceKind::Ar(rho) => {
            let innov = (1.0 - rho * rho).sqrt();
            for i in 0..n {
                let mut prev: f64 = rng.sample(StandardNormal);
                cols[0][i] = prev;
                for col in cols.iter_mut().skip(1) {
                    let z: f64 = rng.sample(StandardNormal);
                    prev = rho * prev + innov * z;
                    col[i] = prev;
                }
            }
        }
        CovarianceKind::DiagonalVar(v) => {
            let sd = v.sqrt();
            fill_rows(&mut cols, n, || sd * rng.sample::<f64, _>(StandardNormal));
        }
        CovarianceKind::Identity => {
            fill_rows(&mut cols, n, || rng.sample(StandardNormal));
        }
    }
    cols
}

fn fill_rows(cols: &mut [Vec<f64>], n: usize, mut draw: impl FnMut() -> f64) {
    for i in 0..n {
        for col in cols.iter_mut() {
            col[i] = draw();
        }
    }
}

/// Standard Cauchy (`t_1`) via `tan(pi (U - 1/2))`.
pub fn sample_cauchy<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    (PI * (rng.random::<f64>() - 0.5)).tan()
}

/// Real odd root `sign(x) |x|^(1/9)`.
pub fn signed_ninth_root(x: f64) -> f64 {
    x.signum() * x.abs().powf(1.0 / 9.0)
}

/// One simulation design at concrete sizes and seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExperimentSpec {
    pub id: ExperimentId,
    pub n: usize,
    pub p: usize,
    pub seed: u64,
}

impl ExperimentSpec {
    pub fn new(id: ExperimentId, seed: u64) -> Self {
        let (n, p) = id.default_size();
        ExperimentSpec { id, n, p, seed }
    }

    pub fn with_size(mut self, n: usize, p: usize) -> Self {
        self.n = n;
        self.p = p;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let needed = self.id.active().into_iter().max().unwrap() + 1;
        if self.p < needed {
            return Err(ScreenError::invalid(format!(
                "design {} needs p >= {needed}, got {}",
                self.id, self.p
            )));
        }
        if self.n < 2 {
            return Err(ScreenError::invalid(format!("n must be at least 2, got {}", self.n)));
        }
        Ok(())
    }

    /// Generates the instance from `self.seed`.
    pub fn generate(&self) -> Result<GeneratedInstance> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        gen_experiment(self, &mut rng)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedInstance {
    pub dataset: Dataset,
    /// Zero-based, ascending.
    pub active: Vec<usize>,
    /// `true` where the observation was censored (design 7 only).
    pub censor_mask: Option<Vec<bool>>,
}

impl GeneratedInstance {
    pub fn censoring_rate(&self) -> Option<f64> {
        self.censor_mask
            .as_ref()
            .map(|m| m.iter().filter(|&&c| c).count() as f64 / m.len() as f64)
    }
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replication `index` under `base`.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    mix64(mix64(base.wrapping_add(0x9E37_79B9_7F4A_7C15)) ^ index.wrapping_mul(0xD6E8_FEB8_6659_FD93))
}

fn normals<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

fn iid_columns<R: Rng + ?Sized>(
    n: usize,
    p: usize,
    rng: &mut R,
    mut draw: impl FnMut(&mut R) -> f64,
) -> Vec<Vec<f64>> {
    let mut cols = vec![vec![0.0; n]; p];
    for i in 0..n {
        for col in cols.iter_mut() {
            col[i] = draw(rng);
        }
    }
    cols
}

fn linear(cols: &[Vec<f64>], beta: &[f64], i: usize) -> f64 {
    beta.iter().zip(cols).map(|(b, c)| b * c[i]).sum()
}

fn g3(x: f64) -> f64 {
    let s = (2.0 * PI * x).sin();
    s / (2.0 - s)
}

fn g4(x: f64) -> f64 {
    let s = (2.0 * PI * x).sin();
    let c = (2.0 * PI * x).cos();
    0.1 * s + 0.2 * c + 0.3 * s * s + 0.4 * c * c * c + 0.5 * s * s * s
}

/// Censoring time mixture `0.4 N(-5, 4) + 0.1 N(5, 1) + 0.5 N(55, 1)` (variances).
fn censoring_time<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    let (mean, sd) = if u < 0.4 {
        (-5.0, 2.0)
    } else if u < 0.5 {
        (5.0, 1.0)
    } else {
        (55.0, 1.0)
    };
    Normal::new(mean, sd).unwrap().sample(rng)
}

/// Draws one instance of `spec.id` at sizes `spec.n x spec.p`.
pub fn gen_experiment<R: Rng + ?Sized>(spec: &ExperimentSpec, rng: &mut R) -> Result<GeneratedInstance> {
    spec.validate()?;
    let (n, p) = (spec.n, spec.p);
    let ar = |rng: &mut R| sample_mvn(n, &CovarianceSpec { kind: CovarianceKind::Ar(0.8), dim: p }, rng);
    let cs = |rng: &mut R| {
        sample_mvn(n, &CovarianceSpec { kind: CovarianceKind::DiagonalVar(0.8), dim: p }, rng)
    };
    let mut censor_mask = None;

    let (cols, y) = match spec.id {
        ExperimentId::E1a | ExperimentId::E1b => {
            let x = ar(rng);
            let beta = [1.0; 8];
            let y = (0..n)
                .map(|i| {
                    let e = if spec.id == ExperimentId::E1a {
                        rng.sample(StandardNormal)
                    } else {
                        sample_cauchy(rng)
                    };
                    linear(&x, &beta, i) + e
                })
                .collect();
            (x, y)
        }
        ExperimentId::E1c | ExperimentId::E1d => {
            let x = cs(rng);
            let eps = normals(n, rng);
            let mut y: Vec<f64> = (0..n).map(|i| 2.0 * x[0][i] - 2.0 * x[1][i] + eps[i]).collect();
            if spec.id == ExperimentId::E1d {
                // 1-based rows
                for (row, factor) in [(10, 100.0), (30, 100.0), (50, 100.0), (70, 100.0)]
                    .into_iter()
                    .chain([(20, -100.0), (40, -100.0), (60, -100.0), (80, -100.0)])
                {
                    if row <= n {
                        y[row - 1] *= factor;
                    }
                }
            }
            (x, y)
        }
        ExperimentId::E2a => {
            let x = cs(rng);
            let eps = normals(n, rng);
            let y = (0..n)
                .map(|i| 3.0 * signed_ninth_root(x[0][i]) - 3.0 * signed_ninth_root(x[1][i]) + eps[i])
                .collect();
            (x, y)
        }
        ExperimentId::E2b => {
            let x = cs(rng);
            let eps = normals(n, rng);
            let y = (0..n).map(|i| (3.0 * x[0][i] - 3.0 * x[1][i] + eps[i]).powi(9)).collect();
            (x, y)
        }
        ExperimentId::E2c => {
            let x = ar(rng);
            let eps = normals(n, rng);
            let beta = [1.0; 8];
            let y = (0..n).map(|i| (linear(&x, &beta, i) + eps[i]).exp()).collect();
            (x, y)
        }
        ExperimentId::E3 => {
            let x = iid_columns(n, p, rng, |r| sample_cauchy(r));
            let eps = normals(n, rng);
            let y = (0..n)
                .map(|i| (3.0 * x[0][i] + 2.0 * x[1][i] + x[2][i]).powi(3) + eps[i])
                .collect();
            (x, y)
        }
        ExperimentId::E4 => {
            let x = iid_columns(n, p, rng, |r| r.random::<f64>());
            let eps = normals(n, rng);
            let y = (0..n)
                .map(|i| {
                    4.0 * x[0][i] + 2.0 * (PI * x[1][i] / 2.0).tan() + 5.0 * x[2][i] * x[2][i] + eps[i]
                })
                .collect();
            (x, y)
        }
        ExperimentId::E5 => {
            let x = ar(rng);
            let eps = normals(n, rng);
            let beta = [1.0, 0.8, 0.6, 0.4, 0.2];
            let y = (0..n)
                .map(|i| {
                    2.0 * linear(&x, &beta, i) + (x[19][i] + x[20][i] + x[21][i]).exp() * eps[i]
                })
                .collect();
            (x, y)
        }
        ExperimentId::E6 => {
            let x = iid_columns(n, p, rng, |r| sample_cauchy(r));
            let y = (0..n)
                .map(|i| {
                    let mu = (0.8 * x[0][i] - 0.8 * x[1][i]).exp().min(POISSON_MEAN_CAP);
                    if mu > 0.0 {
                        Poisson::new(mu).unwrap().sample(rng)
                    } else {
                        0.0
                    }
                })
                .collect();
            (x, y)
        }
        ExperimentId::E7 => {
            let x = sample_mvn(n, &CovarianceSpec { kind: CovarianceKind::Identity, dim: p }, rng);
            let eps = normals(n, rng);
            let latent: Vec<f64> = (0..n)
                .map(|i| {
                    let t = 2.0 * x[1][i] - 1.0;
                    5.0 * x[0][i] + 3.0 * t * t + 4.0 * g3(x[2][i]) + 6.0 * g4(x[3][i])
                        + 1.74f64.sqrt() * eps[i]
                })
                .collect();
            let c: Vec<f64> = (0..n).map(|_| censoring_time(rng)).collect();
            censor_mask = Some(latent.iter().zip(&c).map(|(y, c)| c < y).collect());
            let y = latent.iter().zip(&c).map(|(y, c)| y.min(*c)).collect();
            (x, y)
        }
    };

    let dataset = Dataset::new(y, cols, spec.id.kind())?;
    Ok(GeneratedInstance {
        dataset,
        active: spec.id.active(),
        censor_mask,
    })
}
