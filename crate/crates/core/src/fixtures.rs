//! Published 6-D Suarez-Schopf reduction (alpha = 0.75), printed to four
//! decimals: A(tau) = M1 + M2 / tau, so M1 = Q and M2 = 2 P.

use nalgebra::DMatrix;

pub const FIXTURE_DIM: usize = 6;
/// The printed matrices are rounded to four decimals.
pub const FIXTURE_TOLERANCE: f64 = 5e-5;

pub const SUAREZ_SCHOPF_M1: [[f64; 6]; 6] = [
    [-0.25, 1.25, -2.5, 5.0, -7.75, 11.75],
    [-0.15, 0.75, -1.5, 3.0, -4.65, 7.05],
    [-0.05, 0.25, -0.5, 1.0, -1.55, 2.35],
    [-0.0206, 0.1029, -0.2059, 0.4118, -0.6382, 0.9676],
    [-0.0102, 0.0509, -0.1018, 0.2036, -0.3156, 0.4785],
    [-0.0057, 0.0286, -0.0572, 0.1143, -0.1772, 0.2687],
];

pub const SUAREZ_SCHOPF_M2: [[f64; 6]; 6] = [
    [0.0, 2.0, -3.0, 7.0, -10.0, 16.0],
    [0.0, -1.2, 7.8, -10.2, 20.4, -26.4],
    [0.0, -0.4, -2.4, 11.6, -12.2, 24.2],
    [0.0, -0.1647, -0.9882, -3.4588, 14.7412, -13.0941],
    [0.0, -0.0814, -0.4887, -1.7104, -4.4796, 17.7557],
    [0.0, -0.0457, -0.2744, -0.9605, -2.5156, -5.4886],
];

/// Largest entrywise |got - expected|. Panics on a shape mismatch.
pub fn max_abs_deviation(got: &DMatrix<f64>, expected: &[[f64; 6]; 6]) -> f64 {
    assert_eq!(got.shape(), (FIXTURE_DIM, FIXTURE_DIM));
    let mut worst = 0.0f64;
    for (i, row) in expected.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            worst = worst.max((got[(i, j)] - e).abs());
        }
    }
    worst
}
