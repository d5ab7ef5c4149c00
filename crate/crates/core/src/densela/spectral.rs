//! Spectral radius estimates and Gershgorin inclusion.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrix::Matrix;
use super::scalar::Scalar;

pub const DEFAULT_POWER_ITERS: usize = 500;
pub const DEFAULT_POWER_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralEstimate {
    pub value: f64,
    /// True when the matrix is entrywise nonnegative, so the estimate tracks
    /// the Perron root.
    pub perron: bool,
}

impl SpectralEstimate {
    pub fn note(&self) -> &'static str {
        if self.perron {
            "power iteration on B + I for entrywise nonnegative B (Perron root, reliable)"
        } else {
            "power iteration growth rate for a matrix with negative or complex entries (heuristic)"
        }
    }
}

/// Power-iteration estimate of the spectral radius with a seeded start vector.
///
/// For entrywise nonnegative real `b` the iteration runs on `b + I`, whose
/// dominant eigenvalue is `rho(b) + 1` and is strictly dominant whenever
/// `b` is irreducible; the last growth ratio in the max norm, minus one, is
/// reported.
/// Otherwise the geometric mean of the growth over the second half of the
/// run is reported.
pub fn spectral_radius_estimate<T: Scalar>(b: &Matrix<T>, iters: usize, seed: u64) -> SpectralEstimate {
    let n = b.rows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x: Vec<T> = (0..n).map(|_| T::from_real(rng.gen_range(0.5..1.5))).collect();
    let nonneg = b
        .data()
        .iter()
        .all(|v| v.as_real().is_some_and(|r| r >= 0.0));
    let iters = iters.max(1);

    if nonneg {
        let shifted = b.add_identity(T::one());
        let mut ratio = 1.0;
        for _ in 0..iters {
            let y = apply(&shifted, &x);
            ratio = inf_norm(&y);
            if ratio == 0.0 {
                break;
            }
            x = y.into_iter().map(|v| v * T::from_real(1.0 / ratio)).collect();
        }
        return SpectralEstimate {
            value: (ratio - 1.0).max(0.0),
            perron: true,
        };
    }

    let mut log_growth = 0.0;
    let mut counted = 0usize;
    normalize(&mut x);
    for it in 0..iters {
        let mut y = apply(b, &x);
        let growth = normalize(&mut y);
        if growth == 0.0 {
            return SpectralEstimate {
                value: 0.0,
                perron: false,
            };
        }
        if it >= iters / 2 {
            log_growth += growth.ln();
            counted += 1;
        }
        x = y;
    }
    SpectralEstimate {
        value: (log_growth / counted as f64).exp(),
        perron: false,
    }
}

fn apply<T: Scalar>(b: &Matrix<T>, x: &[T]) -> Vec<T> {
    (0..b.rows())
        .map(|i| {
            b.row(i)
                .iter()
                .zip(x)
                .fold(T::zero(), |acc, (&bij, &xj)| acc + bij * xj)
        })
        .collect()
}

fn inf_norm<T: Scalar>(x: &[T]) -> f64 {
    x.iter().fold(0.0, |acc, v| acc.max(v.modulus()))
}

/// Scales `x` to unit Euclidean norm and returns the previous norm.
fn normalize<T: Scalar>(x: &mut [T]) -> f64 {
    let norm = x.iter().map(|v| v.modulus_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        let inv = T::from_real(1.0 / norm);
        x.iter_mut().for_each(|v| *v *= inv);
    }
    norm
}

/// True when every Gershgorin disc of `a` lies inside the open disc `|z - 1| < 1`.
pub fn gershgorin_in_unit_disk<T: Scalar>(a: &Matrix<T>) -> bool {
    (0..a.rows()).all(|i| {
        let radius: f64 = a
            .row(i)
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.modulus())
            .sum();
        (a[(i, i)] - T::one()).modulus() + radius < 1.0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn est(rows: &[&[f64]]) -> SpectralEstimate {
        spectral_radius_estimate(
            &Matrix::from_rows(rows).unwrap(),
            DEFAULT_POWER_ITERS,
            DEFAULT_POWER_SEED,
        )
    }

    #[test]
    fn diagonal_and_swap() {
        let d = est(&[&[0.3, 0.0], &[0.0, 0.7]]);
        assert!((d.value - 0.7).abs() <= 1e-8);
        assert!(d.perron);
        let s = est(&[&[0.0, 0.5], &[0.5, 0.0]]);
        assert!((s.value - 0.5).abs() <= 1e-8);
        assert_eq!(est(&[&[0.0, 0.0], &[0.0, 0.0]]).value, 0.0);
    }

    #[test]
    fn heuristic_for_signed_matrices() {
        // eigenvalues +-0.5i
        let e = est(&[&[0.0, -0.5], &[0.5, 0.0]]);
        assert!(!e.perron);
        assert!((e.value - 0.5).abs() <= 1e-8);
        let e = est(&[&[-0.6, 0.0], &[0.0, 0.2]]);
        assert!((e.value - 0.6).abs() <= 1e-8);
    }

    #[test]
    fn gershgorin() {
        let a = Matrix::from_rows(&[[1.0, -0.5], [-0.5, 1.0]]).unwrap();
        assert!(gershgorin_in_unit_disk(&a));
        assert!(!gershgorin_in_unit_disk(&Matrix::from_diag(&[2.5])));
        assert!(!gershgorin_in_unit_disk(&Matrix::from_diag(&[0.0])));
    }
}
