use num_traits::One;
use proptest::prelude::*;

use schroeder_core::densela::{
    classify_real, comparison_matrix, from_json, from_matrix_market, inverse, lu_solve, to_json,
    to_matrix_market, DenseMatrix, Matrix, NormKind,
};
use schroeder_core::pseries::{
    binomial_coeffs, rat, schroeder_coeff_table, tail_sums, Rational, TruncatedSeries,
};
use schroeder_core::schroeder::{
    apriori_bounds, binomial_reference_root, scalar_run, Schroeder, SchroederConfig,
};
use schroeder_core::verify::{generate_ensemble, EnsembleKind};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(small_rational(), order + 1)
        .prop_map(|c| TruncatedSeries::new(c).unwrap())
}

fn unit_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    (series(order), (1i64..=9, 1i64..=5)).prop_map(|(s, (n, d))| {
        let mut c = s.into_coeffs();
        c[0] = rat(n, d);
        TruncatedSeries::new(c).unwrap()
    })
}

fn real(kind: EnsembleKind, n: usize, rho: f64, seed: u64) -> Matrix<f64> {
    match generate_ensemble(kind, n, rho, seed).unwrap() {
        DenseMatrix::Real(m) => m,
        DenseMatrix::Complex(_) => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_product_commutes(a in series(7), b in series(7)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn series_product_distributes(a in series(6), b in series(6), c in series(6)) {
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reciprocal_is_inverse(a in unit_series(8)) {
        let one = TruncatedSeries::one(8);
        prop_assert_eq!(a.mul(&a.reciprocal().unwrap()).unwrap(), one.clone());
        prop_assert_eq!(a.powi(3).unwrap().mul(&a.powi(-3).unwrap()).unwrap(), one);
    }

    #[test]
    fn compose_with_identity_polynomial(a in series(6)) {
        let id = [Rational::from_integer(0.into()), Rational::one()];
        prop_assert_eq!(a.compose_poly(&id).unwrap(), a);
    }

    #[test]
    fn tail_sums_positive_and_decreasing(p in 2u32..9, order in 1usize..40) {
        let b = binomial_coeffs(p, order).unwrap();
        let s = tail_sums(&b);
        prop_assert_eq!(&s[0], &Rational::one());
        for w in s.windows(2) {
            prop_assert!(w[1] < w[0]);
            prop_assert!(w[1] > Rational::from_integer(0.into()));
        }
    }

    #[test]
    fn iterate_rows_start_at_one(p in 2u32..6, m in 1usize..4, k in 0usize..3) {
        let table = schroeder_coeff_table(p, m, k, 12).unwrap();
        for row in table.rows() {
            prop_assert!(row[0].is_one());
        }
    }

    #[test]
    fn lu_solve_small_residual(n in 1usize..12, seed in any::<u64>()) {
        let a = real(EnsembleKind::DiskSpectrum, n, 0.7, seed);
        let rhs = real(EnsembleKind::M1, n, 0.5, seed ^ 1);
        let x = lu_solve(&a, &rhs).unwrap();
        let r = a.matmul(&x).unwrap().sub(&rhs).unwrap();
        prop_assert!(r.norm(NormKind::Inf) <= 1e-12 * rhs.norm(NormKind::Inf).max(1.0));
        let inv = inverse(&a).unwrap();
        let e = inv.matmul(&a).unwrap().sub(&Matrix::identity(n)).unwrap();
        prop_assert!(e.max_abs() <= 1e-12);
    }

    #[test]
    fn comparison_matrix_idempotent(n in 1usize..10, seed in any::<u64>()) {
        let a = real(EnsembleKind::DiskSpectrum, n, 0.8, seed);
        let once = comparison_matrix(&a);
        prop_assert_eq!(comparison_matrix(&once), once);
    }

    #[test]
    fn generated_classes(n in 1usize..16, rho in 0.05f64..0.95, seed in any::<u64>()) {
        let m1 = real(EnsembleKind::M1, n, rho, seed);
        prop_assert!(classify_real(&m1).is_m1);
        let h1 = real(EnsembleKind::H1, n, rho, seed);
        prop_assert_eq!(comparison_matrix(&h1), m1);
        prop_assert!(classify_real(&h1).is_h1);
    }

    #[test]
    fn json_round_trip_is_exact(n in 1usize..6, seed in any::<u64>()) {
        let a = DenseMatrix::Real(real(EnsembleKind::DiskSpectrum, n, 0.9, seed));
        let text = serde_json::to_string(&to_json(&a)).unwrap();
        let back = from_json(&text).unwrap();
        prop_assert_eq!(back.as_real().unwrap().data(), a.as_real().unwrap().data());
        let mm = from_matrix_market(&to_matrix_market(&a)).unwrap();
        prop_assert_eq!(mm.as_real().unwrap().data(), a.as_real().unwrap().data());
    }

    #[test]
    fn iterates_commute_with_a(n in 1usize..10, p in 2u32..6, m in 1usize..4, seed in any::<u64>()) {
        let a = real(EnsembleKind::DiskSpectrum, n, 0.6, seed);
        let mut cfg = SchroederConfig::new(p, m);
        cfg.skip_precheck = true;
        let na = a.norm(NormKind::Inf);
        let mut worst = 0.0f64;
        Schroeder::new(cfg).unwrap().run_with(&a, |_, x| {
            let c = x.matmul(&a).unwrap().sub(&a.matmul(x).unwrap()).unwrap();
            worst = worst.max(c.norm(NormKind::Inf) / (na * x.norm(NormKind::Inf)));
        }).unwrap();
        prop_assert!(worst <= 1e-12, "commutator {worst:e}");
    }

    #[test]
    fn scalar_path_matches_one_by_one(a in 0.05f64..1.95, p in 2u32..8, m in 1usize..5) {
        let mut cfg = SchroederConfig::new(p, m);
        cfg.skip_precheck = true;
        let run = Schroeder::new(cfg).unwrap().run(&Matrix::from_diag(&[a])).unwrap();
        let s = scalar_run(a, p, m, 1e-13, 60).unwrap();
        prop_assert_eq!(run.x[(0, 0)].to_bits(), s.x.to_bits());
        prop_assert_eq!(run.report.termination, s.termination);
    }

    #[test]
    fn bounds_ordered(q in 0.0f64..0.999, p in 2u32..8, m in 1usize..5, k in 0usize..5) {
        let b = apriori_bounds(q, p, m, k).unwrap();
        let next = apriori_bounds(q, p, m, k + 1).unwrap();
        prop_assert!(b.sharp <= b.plain);
        prop_assert!(next.plain <= b.plain);
    }

    #[test]
    fn reference_root_powers_back(n in 1usize..8, p in 2u32..6, seed in any::<u64>()) {
        let a = real(EnsembleKind::DiskSpectrum, n, 0.5, seed);
        let r = binomial_reference_root(&a, p, 1, 1e-15, NormKind::Inf).unwrap();
        let mut pow = Matrix::identity(n);
        for _ in 0..p {
            pow = pow.matmul(&r.root).unwrap();
        }
        prop_assert!(pow.sub(&a).unwrap().norm(NormKind::Inf) <= 1e-13);
    }
}
