use spin_eraser::analytic::{density_eraser, density_no_eraser};
use spin_eraser::{grid, params, EraserOptions};

#[test]
fn single_precision_densities_track_double() {
    let p64 = params::PhysParams::<f64>::default();
    let p32 = params::PhysParams::<f32>::default();
    let g64 = grid::GridSpec::<f64>::default_for(&p64).unwrap();
    let g32 = grid::GridSpec::<f32>::default_for(&p32).unwrap();
    let pairs = [
        (density_eraser(&p64, &g64, EraserOptions::default()).unwrap(), density_eraser(&p32, &g32, EraserOptions::default()).unwrap()),
        (density_no_eraser(&p64, &g64).unwrap(), density_no_eraser(&p32, &g32).unwrap()),
    ];
    for (a, b) in pairs {
        let peak = a.max_value();
        let worst = a.values.iter().zip(b.values.iter()).fold(0.0f64, |m, (x, y)| m.max((x - *y as f64).abs()));
        assert!(worst < 1e-4 * peak, "{worst}");
    }
}
