use gk_core::models::{
    suarez_schopf_original_spec, suarez_schopf_spec, to_original_variable, SuarezSchopfParams,
};
use gk_core::{
    assemble_matrix, compare, integrate_dde_reference, integrate_reduced, project_history,
    reconstruct_state, HistorySegment, QuadratureRule,
};

fn params() -> SuarezSchopfParams {
    SuarezSchopfParams::new(0.75, 2.0).unwrap()
}

#[test]
fn reduced_rk4_order_on_suarez_schopf() {
    let spec = suarez_schopf_spec(&params());
    let sys = assemble_matrix(&spec, 6).unwrap();
    let y0 = project_history(
        &HistorySegment::Constant(0.1),
        6,
        spec.tau,
        &QuadratureRule::default(),
    )
    .unwrap();
    let t_end = 10.0;
    let end = |h: f64| {
        reconstruct_state(
            integrate_reduced(&sys, &y0, t_end, h)
                .unwrap()
                .states()
                .last()
                .unwrap(),
        )
    };
    // Richardson-extrapolated reference from the two finest runs.
    let (fine, finer) = (end(0.0025), end(0.00125));
    let reference = finer + (finer - fine) / 15.0;
    let e1 = (end(0.02) - reference).abs();
    let e2 = (end(0.01) - reference).abs();
    let ratio = e1 / e2;
    assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn zero_is_an_equilibrium_for_every_n() {
    let spec = suarez_schopf_spec(&params());
    for n in 1..=12 {
        let sys = assemble_matrix(&spec, n).unwrap();
        let mut out = vec![1.0; n];
        sys.vector_field(&vec![0.0; n], &mut out);
        assert!(out.iter().all(|&v| v == 0.0), "n={n}");
    }
}

#[test]
fn fixed_points_of_original_model_are_preserved() {
    let p = params();
    let spec = suarez_schopf_original_spec(&p);
    for fixed in p.fixed_points() {
        let traj =
            integrate_dde_reference(&spec, &HistorySegment::Constant(fixed), 10.0, 0.01).unwrap();
        let worst = traj
            .scalar_series()
            .iter()
            .fold(0.0f64, |m, x| m.max((x - fixed).abs()));
        assert!(worst < 1e-10, "fixed point {fixed}: drift {worst}");
    }
}

#[test]
fn perturbed_reduction_tracks_original_model() {
    let p = params();
    let phi = HistorySegment::Polynomial(vec![0.1, 0.05]);
    let original = integrate_dde_reference(
        &suarez_schopf_original_spec(&p),
        &phi.shifted(p.t_plus()),
        20.0,
        0.01,
    )
    .unwrap();
    let spec = suarez_schopf_spec(&p);
    let rule = QuadratureRule::default();
    let mut errors = Vec::new();
    for n in [4usize, 8, 12] {
        let sys = assemble_matrix(&spec, n).unwrap();
        let y0 = project_history(&phi, n, spec.tau, &rule).unwrap();
        let traj = integrate_reduced(&sys, &y0, 20.0, 0.01).unwrap();
        let worst = traj
            .states()
            .iter()
            .zip(original.states())
            .map(|(y, t)| (to_original_variable(reconstruct_state(y), &p) - t[0]).abs())
            .fold(0.0f64, f64::max);
        errors.push(worst);
    }
    assert!(errors[1] < errors[0] && errors[2] < errors[1], "{errors:?}");
    assert!(errors[2] < 1e-3, "{errors:?}");
}

#[test]
fn perturbed_reference_matches_original_reference() {
    let p = params();
    let phi = HistorySegment::Constant(0.1);
    let perturbed = integrate_dde_reference(&suarez_schopf_spec(&p), &phi, 15.0, 0.01).unwrap();
    let original = integrate_dde_reference(
        &suarez_schopf_original_spec(&p),
        &phi.shifted(p.t_plus()),
        15.0,
        0.01,
    )
    .unwrap();
    for (x, t) in perturbed
        .scalar_series()
        .iter()
        .zip(original.scalar_series())
    {
        assert!((to_original_variable(*x, &p) - t).abs() < 1e-12);
    }
}

#[test]
fn reduced_and_reference_agree_on_shared_grid() {
    let spec = suarez_schopf_spec(&params());
    let phi = HistorySegment::Constant(0.0);
    let reference = integrate_dde_reference(&spec, &phi, 5.0, 0.01).unwrap();
    let sys = assemble_matrix(&spec, 6).unwrap();
    let reduced = integrate_reduced(&sys, &[0.0; 6], 5.0, 0.01).unwrap();
    let report = compare(&reduced, &reference).unwrap();
    assert_eq!((report.sup, report.rms), (0.0, 0.0));
    assert_eq!(report.samples, 501);
}
