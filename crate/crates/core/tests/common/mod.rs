#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use prokit::matlin::{block_diag, skew_block, to_complex, zeros};
use prokit::pro::relative_gap;
use prokit::{ComplexMatrix, RealMatrix, StateSpaceRealization, Tolerance, TransferFunction};
use rand::Rng;

pub fn tol() -> Tolerance {
    Tolerance::default()
}

/// The two-port example with oscillators at 1, 2, 3, 4, 1, 5 and `D = 50 J`.
pub fn two_port_example() -> StateSpaceRealization {
    let blocks: Vec<RealMatrix> = [1.0, 2.0, 3.0, 4.0, 1.0, 5.0].iter().map(|&w| skew_block(w, 1)).collect();
    let a = block_diag(&blocks);
    let bt = DMatrix::from_row_slice(
        2,
        12,
        &[
            0.0, 1e-4, 0.1, 5e-3, 0.0, 0.0, 5e-3, 0.0, 0.0, 0.0, 0.0, 1e-3, //
            1000.0, 0.0, 1.0, 0.0, 0.0, 1e-4, 0.0, 0.0, 0.0, 1e-3, 0.0, 0.0,
        ],
    );
    let d = DMatrix::from_row_slice(2, 2, &[0.0, 50.0, -50.0, 0.0]);
    StateSpaceRealization::new(zeros(2, 2), d, a, bt.transpose())
}

/// Probe points away from the imaginary axis: `Re z` in `[0.5, 5]`, `|Im z| <= 8`.
pub fn probes<R: Rng>(rng: &mut R, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|_| Complex64::new(rng.gen_range(0.5..5.0), rng.gen_range(-8.0..8.0)))
        .collect()
}

pub fn identity(m: usize) -> ComplexMatrix {
    to_complex(&RealMatrix::identity(m, m))
}

/// `|F(z) G(z) - I|` relative to `1 + |I|`, maximised over the points.
pub fn product_gap(f: &dyn TransferFunction, g: &dyn TransferFunction, points: &[Complex64]) -> f64 {
    let t = tol();
    let id = identity(f.ports());
    points
        .iter()
        .map(|&z| {
            let fz = f.eval(z, &t).expect("F evaluates");
            let gz = g.eval(z, &t).expect("inverse evaluates");
            relative_gap(&(fz * gz), &id)
        })
        .fold(0.0, f64::max)
}

/// Largest relative gap between two functions over the points.
pub fn value_gap(f: &dyn TransferFunction, g: &dyn TransferFunction, points: &[Complex64]) -> f64 {
    let t = tol();
    points
        .iter()
        .map(|&z| relative_gap(&g.eval(z, &t).unwrap(), &f.eval(z, &t).unwrap()))
        .fold(0.0, f64::max)
}
