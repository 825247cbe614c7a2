//! One-sided Jacobi singular value decomposition.
//!
//! nalgebra's bidiagonalization SVD occasionally returns inaccurate factors
//! for rank-deficient inputs, and every rank decision in this crate rests on
//! the SVD, so real and complex matrices go through this routine instead.

use alloc::vec::Vec;

use nalgebra::{ComplexField, DMatrix};
#[allow(unused_imports)] // float math is inherent only in recent `core`
use num_traits::Float;

/// `X = U[:, ..k] diag(sigma) V[:, ..k]^H` with `k = min(rows, cols)`,
/// `sigma` decreasing, `U` (`rows x rows`) and `V` (`cols x cols`) unitary.
/// `U` is empty when it was not requested.
#[derive(Clone, Debug)]
pub struct Svd<T: ComplexField> {
    pub u: DMatrix<T>,
    pub sigma: Vec<f64>,
    pub v: DMatrix<T>,
}

const MAX_SWEEPS: usize = 100;

pub fn svd<T: ComplexField<RealField = f64> + Copy>(x: &DMatrix<T>) -> Svd<T> {
    decompose(x, true)
}

/// Singular values only, decreasing.
pub fn singular_values<T: ComplexField<RealField = f64> + Copy>(x: &DMatrix<T>) -> Vec<f64> {
    decompose(x, false).sigma
}

fn decompose<T: ComplexField<RealField = f64> + Copy>(x: &DMatrix<T>, want_u: bool) -> Svd<T> {
    let (r, c) = x.shape();
    if r < c {
        // X^H = U' S V'^H, so X = V' S U'^H.
        let t = decompose(&x.adjoint(), true);
        return Svd { u: if want_u { t.v } else { DMatrix::zeros(0, 0) }, sigma: t.sigma, v: t.u };
    }
    let mut w = x.clone();
    let mut v = DMatrix::<T>::identity(c, c);
    let eps = f64::EPSILON * r.max(1) as f64;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..c {
            for q in p + 1..c {
                let alpha = w.column(p).norm_squared();
                let beta = w.column(q).norm_squared();
                let gamma = w.column(p).dotc(&w.column(q));
                let g = gamma.modulus();
                if g == 0.0 || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Make the inner product real, then rotate the pair.
                let phase = gamma.unscale(g).conjugate();
                w.column_mut(q).iter_mut().for_each(|e| *e *= phase);
                v.column_mut(q).iter_mut().for_each(|e| *e *= phase);
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                rotate(&mut w, p, q, cs, sn);
                rotate(&mut v, p, q, cs, sn);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = (0..c).map(|j| w.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..c).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let v = DMatrix::from_fn(c, c, |i, j| v[(i, order[j])]);
    if !want_u {
        return Svd { u: DMatrix::zeros(0, 0), sigma, v };
    }

    let mut u = DMatrix::<T>::zeros(r, r);
    let mut filled = 0;
    for (k, &j) in order.iter().enumerate() {
        if sigma[k] > 0.0 {
            u.set_column(filled, &w.column(j).unscale(sigma[k]));
            filled += 1;
        }
    }
    complete_basis(&mut u, filled);
    Svd { u, sigma, v }
}

fn rotate<T: ComplexField<RealField = f64> + Copy>(m: &mut DMatrix<T>, p: usize, q: usize, cs: f64, sn: f64) {
    for i in 0..m.nrows() {
        let a = m[(i, p)];
        let b = m[(i, q)];
        m[(i, p)] = a.scale(cs) - b.scale(sn);
        m[(i, q)] = a.scale(sn) + b.scale(cs);
    }
}

/// Fills columns `filled..` of `u` with an orthonormal completion of the
/// first `filled` columns: each step takes the coordinate vector with the
/// largest component outside the current span.
fn complete_basis<T: ComplexField<RealField = f64> + Copy>(u: &mut DMatrix<T>, mut filled: usize) {
    let n = u.nrows();
    while filled < n {
        let mut best: Option<(f64, DMatrix<T>)> = None;
        for candidate in 0..n {
            let mut e = DMatrix::<T>::zeros(n, 1);
            e[candidate] = T::one();
            for _ in 0..2 {
                for k in 0..filled {
                    let proj = u.column(k).dotc(&e.column(0));
                    e -= u.column(k) * proj;
                }
            }
            let norm = e.norm();
            if best.as_ref().is_none_or(|(b, _)| norm > *b) {
                best = Some((norm, e));
            }
        }
        let (norm, e) = best.expect("n > 0");
        u.set_column(filled, &e.column(0).unscale(norm));
        filled += 1;
    }
}
