//! Random instances for property tests and the command-line generator.
//!
//! Foster data is drawn through realizations (`Q_j = B_j^T B_j`,
//! `R_j = B_j^T A_j B_j`), so the domination condition holds by construction.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::matlin::{assemble, block_diag, skew_block, skew_part, symmetric_part, zeros, ComplexMatrix, RealMatrix};
use crate::pro::{FosterForm, FosterTerm, StateSpaceRealization};

pub fn normal_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> RealMatrix {
    RealMatrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the sign
/// of `diag R` fixed).
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> RealMatrix {
    if n == 0 {
        return zeros(0, 0);
    }
    let qr = normal_matrix(rng, n, n).qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

pub fn random_skew<R: Rng + ?Sized>(rng: &mut R, n: usize) -> RealMatrix {
    skew_part(&normal_matrix(rng, n, n))
}

/// `G^T G` with `G` of size `rank x n`.
pub fn random_psd<R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize) -> RealMatrix {
    let g = normal_matrix(rng, rank, n);
    symmetric_part(&(g.transpose() * g))
}

/// Symmetric with eigenvalues drawn uniformly from `[lo, hi]`.
pub fn random_definite<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: f64, hi: f64) -> RealMatrix {
    let u = random_orthogonal(rng, n);
    let d = RealMatrix::from_fn(n, n, |i, j| if i == j { rng.gen_range(lo..=hi) } else { 0.0 });
    symmetric_part(&(&u * d * u.transpose()))
}

/// Invertible skew-symmetric matrix of even size `n` with singular values in `[lo, hi]`.
pub fn random_invertible_skew<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: f64, hi: f64) -> RealMatrix {
    debug_assert!(n.is_multiple_of(2));
    let blocks: Vec<RealMatrix> = (0..n / 2).map(|_| skew_block(rng.gen_range(lo..=hi), 1)).collect();
    let u = random_orthogonal(rng, n);
    skew_part(&(&u * block_diag(&blocks) * u.transpose()))
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    (&g + g.adjoint()).map(|v| v * 0.5)
}

/// `count` frequencies in `[lo, hi]`, pairwise at least `min_gap` apart, ascending.
pub fn distinct_frequencies<R: Rng + ?Sized>(rng: &mut R, count: usize, lo: f64, hi: f64, min_gap: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(count);
    while out.len() < count {
        let w = rng.gen_range(lo..=hi);
        if out.iter().all(|&v| (v - w).abs() >= min_gap) {
            out.push(w);
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// A dominated residue pair at `omega`: `Q = B^T B`, `R = B^T A B` with
/// `A = omega [[0, I_k], [-I_k, 0]]` and `B` Gaussian of size `2k x m`.
pub fn residue_at<R: Rng + ?Sized>(rng: &mut R, omega: f64, m: usize, k: usize) -> FosterTerm {
    let b = normal_matrix(rng, 2 * k, m);
    let a = skew_block(omega, k);
    FosterTerm::new(omega, symmetric_part(&(b.transpose() * &b)), skew_part(&(b.transpose() * a * &b)))
}

/// A residue with `omega` in `[0.2, 5]` and `k` drawn from `1..=m`.
pub fn random_residue<R: Rng + ?Sized>(rng: &mut R, m: usize) -> FosterTerm {
    let omega = rng.gen_range(0.2..=5.0);
    let k = rng.gen_range(1..=m.max(1));
    residue_at(rng, omega, m, k)
}

/// Random Foster form with `terms` pole terms: resonant terms at distinct
/// frequencies in `[0.3, 8]` and (with probability 1/4, when `terms > 0`)
/// one `Q_0 / z` term in their place, plus a linear part of random rank.
pub fn random_foster<R: Rng + ?Sized>(rng: &mut R, m: usize, terms: usize) -> FosterForm {
    let rank = rng.gen_range(0..=m);
    let q = random_psd(rng, m, rank);
    let r = random_skew(rng, m);
    let mut out = Vec::with_capacity(terms);
    let mut resonant = terms;
    if terms > 0 && rng.gen_bool(0.25) {
        let rank = rng.gen_range(1..=m);
        let q0 = random_psd(rng, m, rank);
        out.push(FosterTerm::new(0.0, q0, zeros(m, m)));
        resonant -= 1;
    }
    for omega in distinct_frequencies(rng, resonant, 0.3, 8.0, 0.25) {
        let k = rng.gen_range(1..=m);
        out.push(residue_at(rng, omega, m, k));
    }
    FosterForm::new(q, r, out)
}

/// Block sizes of a random invertible realization: `m = m1 + m2 + m3` with
/// `m2` even, `oscillators` two-dimensional rotation blocks at distinct
/// frequencies and `integrators` zero eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RealizationShape {
    pub m1: usize,
    pub m2: usize,
    pub m3: usize,
    pub oscillators: usize,
    pub integrators: usize,
}

impl RealizationShape {
    pub fn m(&self) -> usize {
        self.m1 + self.m2 + self.m3
    }

    pub fn states(&self) -> usize {
        2 * self.oscillators + self.integrators
    }
}

/// A shape with `1 <= m <= max_m` that admits an invertible, controllable realization.
pub fn random_shape<R: Rng + ?Sized>(rng: &mut R, max_m: usize, max_oscillators: usize) -> RealizationShape {
    loop {
        let m = rng.gen_range(1..=max_m);
        let m2 = 2 * rng.gen_range(0..=m / 2);
        let m1 = rng.gen_range(0..=m - m2);
        let m3 = m - m2 - m1;
        let oscillators = rng.gen_range(0..=max_oscillators);
        let integrators = rng.gen_range(0..=m.min(2));
        let shape = RealizationShape { m1, m2, m3, oscillators, integrators };
        if shape.states() + m1 >= m3 {
            return shape;
        }
    }
}

/// Random realization with the given input-space split, built in the split
/// basis and rotated by a random orthogonal `V`. Generic draws are invertible
/// and controllable whenever `states + m1 >= m3` and `integrators <= m`.
pub fn random_invertible_realization<R: Rng + ?Sized>(rng: &mut R, shape: RealizationShape) -> StateSpaceRealization {
    let RealizationShape { m1, m2, m3, oscillators, integrators } = shape;
    let m = shape.m();
    let n = shape.states();

    let mut blocks: Vec<RealMatrix> = distinct_frequencies(rng, oscillators, 0.5, 6.0, 0.3)
        .into_iter()
        .map(|w| skew_block(w, 1))
        .collect();
    if integrators > 0 {
        blocks.push(zeros(integrators, integrators));
    }
    let p = random_orthogonal(rng, n);
    let a = skew_part(&(&p * block_diag(&blocks) * p.transpose()));

    let m11 = random_definite(rng, m1, 0.5, 2.0);
    let d11 = random_skew(rng, m1);
    let d12 = normal_matrix(rng, m1, m2);
    let d13 = normal_matrix(rng, m1, m3);
    let d22 = random_invertible_skew(rng, m2, 0.5, 2.0);
    let d_x = assemble(&[
        &[&d11, &d12, &d13],
        &[&(-d12.transpose()), &d22, &zeros(m2, m3)],
        &[&(-d13.transpose()), &zeros(m3, m2), &zeros(m3, m3)],
    ]);
    let m_x = block_diag(&[m11, zeros(m2 + m3, m2 + m3)]);
    let b_x = normal_matrix(rng, n, m);

    let v = random_orthogonal(rng, m);
    StateSpaceRealization::new(
        symmetric_part(&(&v * m_x * v.transpose())),
        skew_part(&(&v * d_x * v.transpose())),
        a,
        b_x * v.transpose(),
    )
}
