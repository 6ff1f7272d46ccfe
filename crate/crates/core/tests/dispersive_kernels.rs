use borngap::cutoff::CutoffSpec;
use borngap::dispersive::{
    dispersive_sweep, free_dispersive_kernel, schrodinger_propagator_magnitude, sigma_growth_probe, DispersiveGrid,
    DispersiveQuery,
};
use borngap::numerics::{dyadic, log_space};
use borngap::oscillatory::QuadratureSpec;
use borngap::sweep::{fit_loglog, Executor};
use borngap::ModelParams;

fn query(params: ModelParams, t: f64, big_l: f64, r: f64, sigma: f64) -> DispersiveQuery {
    DispersiveQuery { params, t, sigma, big_l, r, cutoff: CutoffSpec::dyadic_chi() }
}

#[test]
fn propagator_oracle_at_three_times() {
    let params = ModelParams::with_dimension(5, 1).unwrap();
    for &t in &[0.1, 1.0, 10.0] {
        let q = DispersiveQuery { cutoff: CutoffSpec::wide_chi(3), ..query(params, t, t.powf(-0.5), 0.0, 0.0) };
        let v = free_dispersive_kernel(&q, &QuadratureSpec::default()).unwrap();
        let ratio = v.value.norm() / schrodinger_propagator_magnitude(5, t);
        assert!((ratio - 1.0).abs() <= 0.05, "t={t}: ratio {ratio}");
    }
}

#[test]
fn parabolic_scaling_of_the_kernel() {
    // K_{L,t}(r) = t^{−n/2} K_{L t^{1/(2m)}, 1}(r t^{−1/(2m)}) for σ = 0
    let spec = QuadratureSpec::with_tolerances(1e-14, 1e-11);
    for &(n, m) in &[(5, 1), (7, 1), (9, 2)] {
        let params = ModelParams::with_dimension(n, m).unwrap();
        let k = 1.0 / (2 * m) as f64;
        for &(t, big_l, r) in &[(0.07, 3.0, 0.4), (5.0, 0.6, 2.0), (40.0, 0.3, 9.0)] {
            let lhs = free_dispersive_kernel(&query(params, t, big_l, r, 0.0), &spec).unwrap().value;
            let unit = query(params, 1.0, big_l * t.powf(k), r * t.powf(-k), 0.0);
            let rhs = free_dispersive_kernel(&unit, &spec).unwrap().value * t.powf(-(n as f64) / 2.0);
            assert!((lhs - rhs).norm() <= 1e-6 * lhs.norm(), "n={n} m={m} t={t}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn decay_on_a_fixed_unscaled_grid() {
    // a grid that does not follow t^{1/(2m)}: the sup law is no longer exact by construction
    let params = ModelParams::with_dimension(5, 1).unwrap();
    let spec = QuadratureSpec::default();
    let mut radii = vec![0.0];
    radii.extend(log_space(1e-2, 1e2, 41));
    let sup: Vec<(f64, f64)> = log_space(0.1, 10.0, 5)
        .into_iter()
        .map(|t| {
            let s = dyadic(-6, 6)
                .into_iter()
                .flat_map(|l| radii.iter().map(move |&r| (l, r)))
                .filter_map(|(l, r)| free_dispersive_kernel(&query(params, t, l, r, 0.0), &spec).ok())
                .map(|v| v.value.norm())
                .fold(0.0, f64::max);
            (t, s)
        })
        .collect();
    let fit = fit_loglog(&sup).unwrap();
    assert!((fit.slope + 2.5).abs() <= 0.15, "slope {}", fit.slope);
}

#[test]
fn sup_is_bounded_in_the_frequency_scale() {
    // at t = 1 the sup over r stays bounded as L ranges over eight octaves
    let params = ModelParams::with_dimension(7, 1).unwrap();
    let spec = QuadratureSpec::default();
    let radii = log_space(1e-2, 1e2, 41);
    let sups: Vec<f64> = dyadic(-4, 4)
        .into_iter()
        .map(|l| {
            radii
                .iter()
                .map(|&r| free_dispersive_kernel(&query(params, 1.0, l, r, 0.0), &spec).unwrap().value.norm())
                .fold(0.0, f64::max)
        })
        .collect();
    let top = sups.iter().cloned().fold(0.0, f64::max);
    assert!(top.is_finite() && top > 0.0);
    // both ends of the range are far below the maximum, so the sup is attained inside
    assert!(sups[0] < top && sups[sups.len() - 1] < top, "{sups:?}");
}

#[test]
fn standard_sweep_and_refinement_agree() {
    let params = ModelParams::with_dimension(5, 1).unwrap();
    let ex = Executor::sequential();
    let spec = QuadratureSpec::default();
    let grid = DispersiveGrid::standard().with_times(log_space(1e-2, 1e2, 5));
    let coarse = dispersive_sweep(&params, 0.0, &grid, &ex, &spec).unwrap();
    let fine = dispersive_sweep(&params, 0.0, &grid.refined(), &ex, &spec).unwrap();
    assert!((coarse.fit.slope + 2.5).abs() <= 0.15);
    assert!(coarse.fit.r_squared >= 0.99);
    for ((t, a), (_, b)) in coarse.sup.iter().zip(&fine.sup) {
        // refinement can only raise a sup, and not by much
        assert!(b >= a && *b <= 1.1 * a, "t={t}: {a} vs {b}");
    }
}

#[test]
fn sigma_probe_respects_the_upper_bound() {
    let params = ModelParams::with_dimension(5, 1).unwrap();
    let grid = DispersiveGrid::standard().with_times(log_space(1e-1, 1e1, 3));
    let probe =
        sigma_growth_probe(&params, &[0.0, 2.0, 4.0, 8.0, 16.0], &grid, &Executor::sequential(), &QuadratureSpec::default())
            .unwrap();
    assert!(probe.respects_bound(5, 0.25), "slope {}", probe.fit.slope);
    let env = probe.envelope();
    assert!(env.windows(2).all(|w| w[1] >= w[0]));
    assert!(sigma_growth_probe(&params, &[], &grid, &Executor::sequential(), &QuadratureSpec::default()).is_err());
    assert!(sigma_growth_probe(&params, &[0.0, 20.0], &grid, &Executor::sequential(), &QuadratureSpec::default()).is_err());
}
