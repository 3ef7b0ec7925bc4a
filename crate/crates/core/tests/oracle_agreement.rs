use spin_eraser::analytic::{density_eraser, density_no_eraser, eraser_evolve, evaluate_state, whichway_evolve};
use spin_eraser::oracle::{compare_l2, run_schedule};
use spin_eraser::{grid, params, EraserOptions, GridSpec, PhysParams, Scenario};

/// Coarser than the analysis default but still resolving every packet.
fn grid_for(p: &PhysParams) -> GridSpec {
    GridSpec::covering(p, p.lobe_center(p.beta.max(p.b0), true), 8.0, 256, 256).unwrap()
}

#[test]
fn oracle_reproduces_each_scenario() {
    let p = PhysParams::default();
    let g = grid_for(&p);
    let cases = [
        (Scenario::NoEraser, density_no_eraser(&p, &g).unwrap()),
        (Scenario::Eraser, density_eraser(&p, &g, EraserOptions::default()).unwrap()),
        (Scenario::WhichWay, whichway_evolve(&p, &g).unwrap()),
    ];
    for (scenario, exact) in cases {
        let run = run_schedule(&p, scenario, &g, 0.01).unwrap();
        let r = compare_l2(&exact, &run.state.density()).unwrap();
        assert!(r < 1e-8, "{scenario:?}: residual {r}");
        assert!(run.norm_drift < 1e-10);
    }
}

#[test]
fn oracle_follows_magnet_timing() {
    // Entering the magnet later shortens the drift; the closed form and the
    // grid must agree on that.
    let p = PhysParams { t_i: 10.0, ..PhysParams::default() };
    let g = grid_for(&p);
    let exact = density_eraser(&p, &g, EraserOptions::default()).unwrap();
    let run = run_schedule(&p, Scenario::Eraser, &g, 0.01).unwrap();
    assert!(compare_l2(&exact, &run.state.density()).unwrap() < 1e-8);
    assert_eq!(run.magnet_steps, 200);
}

#[test]
fn state_and_oracle_agree_in_single_precision() {
    let p = params::PhysParams::<f32>::default();
    let g = grid::GridSpec::<f32>::covering(&p, p.lobe_center(p.beta, true), 8.0, 128, 128).unwrap();
    let exact = evaluate_state(&eraser_evolve(&p, EraserOptions::default()).unwrap(), &g);
    let run = run_schedule(&p, Scenario::Eraser, &g, 0.02).unwrap();
    let r = compare_l2(&exact, &run.state.density()).unwrap();
    assert!(r < 1e-3, "residual {r}");
}
