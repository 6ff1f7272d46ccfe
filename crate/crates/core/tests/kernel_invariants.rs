use borngap::kernels::{
    radial_residual, resolvent_jump, schrodinger_kernel, symbol_leading_constant, symbol_omega, Resolvent,
};
use borngap::numerics::log_space;
use borngap::{ModelParams, Sign};
use num_complex::Complex64;
use proptest::prelude::*;

const CASES: [(usize, usize); 6] = [(3, 1), (5, 1), (7, 1), (9, 2), (5, 2), (11, 3)];

#[test]
fn schrodinger_profiles_solve_helmholtz() {
    for n in [3, 5, 7, 9, 11] {
        let res = Resolvent::new(n, 1).unwrap();
        for &lambda in &[1.0, 2.0, 3.0] {
            for &r in &[0.5, 1.0, 1.7, 2.4, 3.0] {
                for sign in [Sign::Plus, Sign::Minus] {
                    let residual = radial_residual(&res, sign, lambda, r);
                    assert!(residual <= 1e-6, "n={n} λ={lambda} r={r}: residual {residual:e}");
                }
            }
        }
    }
}

#[test]
fn poly_harmonic_profiles_solve_their_equation() {
    // the residual is measured against λ^{2m}|u|, which is small next to the
    // singular part of u when λr ≪ 1; stay in the oscillatory regime
    for &(n, m, min_lr) in &[(9, 2, 1.0), (5, 2, 1.0), (7, 2, 1.0), (11, 3, 2.0)] {
        let res = Resolvent::new(n, m).unwrap();
        for &lambda in &[1.0, 1.5, 2.0, 3.0] {
            for &r in &[0.5, 0.7, 1.0, 2.0, 3.0] {
                if lambda * r < min_lr {
                    continue;
                }
                let residual = radial_residual(&res, Sign::Plus, lambda, r);
                assert!(residual <= 1e-4, "n={n} m={m} λ={lambda} r={r}: residual {residual:e}");
            }
        }
    }
}

#[test]
fn splitting_difference_identity() {
    for &(n, m) in &CASES {
        let res = Resolvent::new(n, m).unwrap();
        for &lambda in &[0.5, 1.0, 2.0, 5.0] {
            for &r in &[0.3, 1.0, 2.5, 10.0] {
                // the ℓ ≥ 1 branches cancel like (λr)^{2m−2} near the diagonal
                if m > 2 && lambda * r < 1.0 {
                    continue;
                }
                let lhs = res.kernel(Sign::Plus, lambda, r) - res.kernel(Sign::Minus, lambda, r);
                let z = Complex64::new(lambda, 0.0);
                let jump = schrodinger_kernel(n, z, r).unwrap().value - schrodinger_kernel(n, -z, r).unwrap().value;
                let rhs = jump / (m as f64 * lambda.powi(2 * m as i32 - 2));
                assert!(
                    (lhs - rhs).norm() <= 1e-12 * rhs.norm(),
                    "n={n} m={m} λ={lambda} r={r}: {lhs} vs {rhs}"
                );
                // the series form of the jump agrees with the closed form
                // wherever the latter is free of cancellation
                if lambda * r >= 2.0 {
                    let series = res.jump(lambda, r);
                    assert!((series - rhs).norm() <= 1e-10 * rhs.norm());
                }
            }
        }
    }
}

#[test]
fn spec_point_nine_two() {
    let res = Resolvent::new(9, 2).unwrap();
    let lhs = res.kernel(Sign::Plus, 2.0, 1.0) - res.kernel(Sign::Minus, 2.0, 1.0);
    let jump = resolvent_jump(9, 2.0, 1.0).unwrap() / (2.0 * 4.0);
    assert!((lhs - jump).norm() <= 1e-12 * jump.norm());
}

#[test]
fn branch_terms_decay_exponentially() {
    for &(n, m) in &[(9, 2), (11, 3), (5, 2)] {
        let res = Resolvent::new(n, m).unwrap();
        let lambda = 1.0;
        for l in 1..m {
            let rate = (std::f64::consts::PI * l as f64 / m as f64).sin() / 2.0;
            let weighted = |r: f64| res.branch_term(Sign::Plus, lambda, l, r).norm() * (lambda * r * rate).exp();
            let k = weighted(1.0);
            for r in log_space(1.0, 60.0, 40) {
                assert!(weighted(r) <= k * (1.0 + 1e-12), "n={n} m={m} ℓ={l} r={r}");
            }
        }
    }
}

#[test]
fn symbol_band_and_leading_constant() {
    for &(n, m) in &[(5, 1), (7, 1), (9, 2)] {
        let params = ModelParams::with_dimension(n, m).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let c = symbol_leading_constant(&params, sign).unwrap();
            let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
            for s in log_space(1.0, 1e4, 200) {
                let bracket = (1.0 + s * s).sqrt();
                let w = symbol_omega(&params, sign, s).unwrap().norm() * bracket.powf((n as f64 - 1.0) / 2.0);
                lo = lo.min(w);
                hi = hi.max(w);
            }
            assert!(lo > 0.0 && hi / lo < 20.0, "n={n} m={m}: band [{lo}, {hi}]");
            let w = symbol_omega(&params, sign, 1e4).unwrap() * 1e4f64.powf((n as f64 - 1.0) / 2.0);
            assert!((w - c).norm() <= 1e-3 * c.norm(), "n={n} m={m}: {w} vs c = {c}");
        }
    }
}

#[test]
fn minus_boundary_value_is_conjugate() {
    for &(n, m) in &CASES {
        let res = Resolvent::new(n, m).unwrap();
        for &(lambda, r) in &[(1.0, 1.0), (3.0, 0.2), (0.4, 7.0)] {
            let plus = res.kernel(Sign::Plus, lambda, r);
            let minus = res.kernel(Sign::Minus, lambda, r);
            let dev = (minus - plus.conj()).norm() / plus.norm();
            assert!(dev <= 1e-12, "n={n} m={m} λ={lambda} r={r}: {dev:e}");
        }
    }
}

proptest! {
    #[test]
    fn schrodinger_conjugate_symmetry(n in 1usize..10, lambda in 0.01f64..50.0, r in 0.01f64..50.0) {
        let n = 2 * n + 1;
        let z = Complex64::new(lambda, 0.0);
        let plus = schrodinger_kernel(n, z, r).unwrap().value;
        let minus = schrodinger_kernel(n, -z, r).unwrap().value;
        prop_assert!((minus - plus.conj()).norm() <= 1e-14 * plus.norm());
    }

    #[test]
    fn factored_kernel_has_unit_phase_relation(lambda in 0.1f64..20.0, r in 0.1f64..20.0) {
        let res = Resolvent::new(9, 2).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let direct = res.kernel(sign, lambda, r);
            let factored = res.factored(sign, lambda, r) * Complex64::from_polar(1.0, sign.factor() * lambda * r);
            prop_assert!((direct - factored).norm() <= 1e-12 * direct.norm().max(1e-300));
        }
    }
}
