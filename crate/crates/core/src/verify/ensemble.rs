//! Seeded random test matrices `A = I - B`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::densela::{inverse, DenseMatrix, Matrix, NormKind};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleKind {
    /// `B >= 0` with every row sum equal to `rho_target`.
    M1,
    /// An `M1` sample with the signs of a random subset of off-diagonal entries flipped.
    H1,
    /// `I + V D V^(-1)` with the eigenvalues of `D` in `|mu| <= rho_target`, rescaled
    /// if needed so that `||B||_inf <= rho_target`.
    DiskSpectrum,
}

impl EnsembleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::M1 => "m1",
            Self::H1 => "h1",
            Self::DiskSpectrum => "disk_spectrum",
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "m1" => Ok(Self::M1),
            "h1" => Ok(Self::H1),
            "disk_spectrum" | "disk" => Ok(Self::DiskSpectrum),
            other => Err(Error::Parse(format!("unknown ensemble {other:?}"))),
        }
    }
}

/// Seed of sample `index` of size `n` in a campaign seeded with `seed` (SplitMix64 mixing).
pub fn sample_seed(seed: u64, n: usize, index: usize) -> u64 {
    let mut z = seed
        ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ (index as u64).wrapping_mul(0xc2b2_ae3d_27d4_eb4f);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn generate_ensemble(kind: EnsembleKind, n: usize, rho_target: f64, seed: u64) -> Result<DenseMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("matrix size must be >= 1".into()));
    }
    if !(rho_target > 0.0 && rho_target < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "rho_target must lie in (0, 1), got {rho_target}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = match kind {
        EnsembleKind::M1 => m1(n, rho_target, &mut rng),
        EnsembleKind::H1 => {
            let mut a = m1(n, rho_target, &mut rng);
            for i in 0..n {
                for j in 0..n {
                    if i != j && rng.gen_bool(0.5) {
                        a[(i, j)] = -a[(i, j)];
                    }
                }
            }
            a
        }
        EnsembleKind::DiskSpectrum => disk_spectrum(n, rho_target, &mut rng)?,
    };
    Ok(DenseMatrix::Real(a))
}

fn m1(n: usize, rho: f64, rng: &mut ChaCha8Rng) -> Matrix<f64> {
    let mut b = Matrix::zeros(n, n);
    for i in 0..n {
        let mut row: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let mut sum: f64 = row.iter().sum();
        if sum == 0.0 {
            row.fill(1.0);
            sum = n as f64;
        }
        for (j, v) in row.into_iter().enumerate() {
            b[(i, j)] = rho * v / sum;
        }
    }
    b.identity_minus()
}

fn disk_spectrum(n: usize, rho: f64, rng: &mut ChaCha8Rng) -> Result<Matrix<f64>> {
    // Real block-diagonal D: 1x1 blocks mu, 2x2 blocks [[a, -b], [b, a]] for a +- ib.
    let mut d = Matrix::zeros(n, n);
    let mut j = 0;
    while j < n {
        if j + 1 < n && rng.gen_bool(0.5) {
            let r = rho * rng.gen::<f64>().sqrt();
            let theta = rng.gen_range(0.0..std::f64::consts::PI);
            let (s, c) = theta.sin_cos();
            d[(j, j)] = r * c;
            d[(j + 1, j + 1)] = r * c;
            d[(j, j + 1)] = -r * s;
            d[(j + 1, j)] = r * s;
            j += 2;
        } else {
            d[(j, j)] = rho * rng.gen_range(-1.0..1.0);
            j += 1;
        }
    }
    let spread = 0.5 / (n as f64).sqrt();
    let mut v = Matrix::identity(n);
    for i in 0..n {
        for k in 0..n {
            v[(i, k)] += spread * rng.gen_range(-1.0..1.0);
        }
    }
    let shift = v.matmul(&d)?.matmul(&inverse(&v)?)?;
    let norm = shift.norm(NormKind::Inf);
    if !norm.is_finite() {
        return Err(Error::InvalidParameter("disk-spectrum sample is not finite".into()));
    }
    let shift = if norm > rho {
        shift.scale(rho / norm)
    } else {
        shift
    };
    Ok(shift.add_identity(1.0))
}
