//! Dense real/complex matrix kernels with an explicit tolerance policy.
//!
//! Every structured routine here (symmetric, skew-symmetric, PSD) first checks
//! the claimed structure within [`Tolerance::eq_rel`], then projects onto it
//! exactly. Inputs that miss the structure by more than that are rejected.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
#[allow(unused_imports)] // float math is inherent only in recent `core`
use num_traits::Float;

use crate::{Error, Result};

pub type RealMatrix = DMatrix<f64>;
pub type ComplexMatrix = DMatrix<Complex64>;

/// Numerical thresholds shared by every operation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    /// Relative singular-value threshold used for every rank decision.
    pub rank_rel: f64,
    /// Absolute eigenvalue floor (scaled by `1 + norm`) for PSD tests.
    pub psd_abs: f64,
    /// Relative threshold for structural equalities (symmetry, skewness, identities).
    pub eq_rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rank_rel: 1e-10,
            psd_abs: 1e-9,
            eq_rel: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(rank_rel: f64, psd_abs: f64, eq_rel: f64) -> Result<Self> {
        for (name, v) in [("rank_rel", rank_rel), ("psd_abs", psd_abs), ("eq_rel", eq_rel)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(alloc::format!(
                    "tolerance {name} must be finite and strictly positive, got {v}"
                )));
            }
        }
        Ok(Self {
            rank_rel,
            psd_abs,
            eq_rel,
        })
    }

    /// Singular values at or below this value count as zero.
    pub fn rank_threshold(&self, sigma_max: f64, rows: usize, cols: usize) -> f64 {
        self.rank_rel * sigma_max * rows.max(cols) as f64
    }

    pub fn psd_floor(&self, scale: f64) -> f64 {
        self.psd_abs * (1.0 + scale)
    }

    pub fn eq_floor(&self, scale: f64) -> f64 {
        self.eq_rel * (1.0 + scale)
    }
}

// ---------------------------------------------------------------------------
// Structure checks

pub fn max_abs(x: &RealMatrix) -> f64 {
    x.iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

pub fn max_abs_complex(x: &ComplexMatrix) -> f64 {
    x.iter().fold(0.0, |acc, v| acc.max(v.norm()))
}

pub fn ensure_finite(x: &RealMatrix, what: &'static str) -> Result<()> {
    if x.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

pub fn require_square(x: &RealMatrix, what: &str) -> Result<usize> {
    if x.nrows() != x.ncols() {
        return Err(Error::Shape(alloc::format!(
            "{what} must be square, got {}x{}",
            x.nrows(),
            x.ncols()
        )));
    }
    Ok(x.nrows())
}

pub(crate) fn require_shape(x: &RealMatrix, rows: usize, cols: usize, what: &str) -> Result<()> {
    if x.shape() != (rows, cols) {
        return Err(Error::Shape(alloc::format!(
            "{what} must be {rows}x{cols}, got {}x{}",
            x.nrows(),
            x.ncols()
        )));
    }
    Ok(())
}

/// `max |x - x^T|`.
pub fn symmetry_residual(x: &RealMatrix) -> f64 {
    max_abs(&(x - x.transpose()))
}

/// `max |x + x^T|`.
pub fn skew_residual(x: &RealMatrix) -> f64 {
    max_abs(&(x + x.transpose()))
}

pub fn symmetric_part(x: &RealMatrix) -> RealMatrix {
    (x + x.transpose()) * 0.5
}

pub fn skew_part(x: &RealMatrix) -> RealMatrix {
    (x - x.transpose()) * 0.5
}

pub fn is_symmetric(x: &RealMatrix, tol: &Tolerance) -> bool {
    x.is_square() && symmetry_residual(x) <= tol.eq_floor(max_abs(x))
}

pub fn is_skew(x: &RealMatrix, tol: &Tolerance) -> bool {
    x.is_square() && skew_residual(x) <= tol.eq_floor(max_abs(x))
}

/// Returns the symmetric part of `x`, or a structural error if `x` is not
/// symmetric within `eq_rel`.
pub fn require_symmetric(x: &RealMatrix, what: &'static str, tol: &Tolerance) -> Result<RealMatrix> {
    require_square(x, what)?;
    ensure_finite(x, what)?;
    let residual = symmetry_residual(x);
    if residual > tol.eq_floor(max_abs(x)) {
        return Err(Error::Structure {
            what,
            structure: "symmetric",
            residual,
        });
    }
    Ok(symmetric_part(x))
}

pub fn require_skew(x: &RealMatrix, what: &'static str, tol: &Tolerance) -> Result<RealMatrix> {
    require_square(x, what)?;
    ensure_finite(x, what)?;
    let residual = skew_residual(x);
    if residual > tol.eq_floor(max_abs(x)) {
        return Err(Error::Structure {
            what,
            structure: "skew-symmetric",
            residual,
        });
    }
    Ok(skew_part(x))
}

// ---------------------------------------------------------------------------
// Eigendecompositions

/// Eigendecomposition of a real symmetric matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct SymEig {
    pub values: Vec<f64>,
    pub vectors: RealMatrix,
}

/// Symmetric eigendecomposition. `S V = V diag(values)` with `V` orthogonal.
pub fn sym_eig(s: &RealMatrix, tol: &Tolerance) -> Result<SymEig> {
    let s = require_symmetric(s, "matrix", tol)?;
    Ok(sym_eig_unchecked(s))
}

/// Same as [`sym_eig`] for an input already known to be exactly symmetric.
pub(crate) fn sym_eig_unchecked(s: RealMatrix) -> SymEig {
    let n = s.nrows();
    if n == 0 {
        return SymEig {
            values: Vec::new(),
            vectors: RealMatrix::zeros(0, 0),
        };
    }
    let eig = SymmetricEigen::new(s);
    let order = ascending_order(eig.eigenvalues.as_slice());
    SymEig {
        values: order.iter().map(|&i| eig.eigenvalues[i]).collect(),
        vectors: RealMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]),
    }
}

/// Eigendecomposition of a complex Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eig(h: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = h.nrows();
    if n == 0 {
        return (Vec::new(), ComplexMatrix::zeros(0, 0));
    }
    let herm = (h + h.adjoint()).map(|v| v * 0.5);
    let eig = SymmetricEigen::new(herm);
    let order = ascending_order(eig.eigenvalues.as_slice());
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    hermitian_eig(h).0
}

/// Spectrum of the Hermitian matrix `iA` for a real skew-symmetric `A`, ascending.
pub fn skew_spectrum(a: &RealMatrix) -> Vec<f64> {
    hermitian_eigenvalues(&times_i(a))
}

fn ascending_order(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    order
}

/// `i * a` as a complex matrix.
pub fn times_i(a: &RealMatrix) -> ComplexMatrix {
    a.map(|v| Complex64::new(0.0, v))
}

pub fn to_complex(a: &RealMatrix) -> ComplexMatrix {
    a.map(|v| Complex64::new(v, 0.0))
}

// ---------------------------------------------------------------------------
// Skew-symmetric canonical form

/// One `omega [[0, I_k], [-I_k, 0]]` block of a skew canonical form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SkewBlock {
    pub omega: f64,
    pub multiplicity: usize,
}

/// Real orthogonal canonical form `U^T A U = diag(omega_1 J_{k_1}, ..., 0)` of a
/// skew-symmetric `A`, where `J_k = [[0, I_k], [-I_k, 0]]`.
///
/// Blocks are ordered by strictly decreasing `omega`; the zero block comes last.
#[derive(Clone, Debug)]
pub struct SkewCanonicalForm {
    pub u: RealMatrix,
    pub blocks: Vec<SkewBlock>,
    pub zero_dim: usize,
}

impl SkewCanonicalForm {
    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    /// Row/column ranges of each nonzero block, followed by the zero block.
    pub fn block_ranges(&self) -> (Vec<Range<usize>>, Range<usize>) {
        let mut start = 0;
        let ranges = self
            .blocks
            .iter()
            .map(|b| {
                let r = start..start + 2 * b.multiplicity;
                start = r.end;
                r
            })
            .collect();
        (ranges, start..start + self.zero_dim)
    }

    /// The block-diagonal matrix `U^T A U` should equal.
    pub fn canonical_matrix(&self) -> RealMatrix {
        let mut out = RealMatrix::zeros(self.dim(), self.dim());
        let (ranges, _) = self.block_ranges();
        for (b, r) in self.blocks.iter().zip(ranges) {
            out.view_mut((r.start, r.start), (r.len(), r.len()))
                .copy_from(&skew_block(b.omega, b.multiplicity));
        }
        out
    }
}

/// `omega [[0, I_k], [-I_k, 0]]`.
pub fn skew_block(omega: f64, k: usize) -> RealMatrix {
    let mut out = RealMatrix::zeros(2 * k, 2 * k);
    for i in 0..k {
        out[(i, k + i)] = omega;
        out[(k + i, i)] = -omega;
    }
    out
}

/// Distance below which two eigenvalue locations of a spectrum with largest
/// magnitude `scale` are treated as one.
pub fn cluster_threshold(scale: f64, tol: &Tolerance) -> f64 {
    tol.rank_rel * (1.0 + scale)
}

/// Orthogonal canonical form of a real skew-symmetric matrix.
///
/// Computed from the Hermitian eigendecomposition of `iA`: an eigenvector
/// `x + iy` for the eigenvalue `w > 0` gives the real pair `(y, x)` with
/// `A y = -w x` and `A x = w y`. Eigenvalues within `rank_rel * (1 + w_max)`
/// of each other are merged into one block; those within the same distance
/// of zero form the kernel block.
pub fn skew_canonical(a: &RealMatrix, tol: &Tolerance) -> Result<SkewCanonicalForm> {
    let a = require_skew(a, "skew matrix", tol)?;
    let n = a.nrows();
    if n == 0 {
        return Ok(SkewCanonicalForm {
            u: RealMatrix::zeros(0, 0),
            blocks: Vec::new(),
            zero_dim: 0,
        });
    }
    let (values, vectors) = hermitian_eig(&times_i(&a));
    let scale = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let thr = cluster_threshold(scale, tol);

    // Positive eigenvalues, largest first, clustered by chained proximity.
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for idx in (0..n).rev().filter(|&i| values[i] > thr) {
        match clusters.last_mut() {
            Some(c) if values[*c.last().unwrap()] - values[idx] <= thr => c.push(idx),
            _ => clusters.push(vec![idx]),
        }
    }

    let nonzero: usize = clusters.iter().map(|c| 2 * c.len()).sum();
    let mut u = RealMatrix::zeros(n, n);
    let mut blocks = Vec::with_capacity(clusters.len());
    let mut col = 0;
    let root2 = 2.0f64.sqrt();
    for cluster in &clusters {
        let k = cluster.len();
        let omega = cluster.iter().map(|&i| values[i]).sum::<f64>() / k as f64;
        for (j, &idx) in cluster.iter().enumerate() {
            let v = vectors.column(idx);
            for r in 0..n {
                u[(r, col + j)] = root2 * v[r].im;
                u[(r, col + k + j)] = root2 * v[r].re;
            }
        }
        col += 2 * k;
        blocks.push(SkewBlock {
            omega,
            multiplicity: k,
        });
    }
    let zero_dim = n - nonzero;
    if zero_dim > 0 {
        let kernel = orth_complement(&u.columns(0, nonzero).into_owned());
        u.view_mut((0, nonzero), (n, zero_dim)).copy_from(&kernel);
    }
    Ok(SkewCanonicalForm {
        u,
        blocks,
        zero_dim,
    })
}

// ---------------------------------------------------------------------------
// Rank, kernels, pseudoinverse

/// Singular values in decreasing order (empty for a matrix with a zero dimension).
pub fn singular_values(x: &RealMatrix) -> Vec<f64> {
    crate::svd::singular_values(x)
}

pub fn complex_singular_values(x: &ComplexMatrix) -> Vec<f64> {
    crate::svd::singular_values(x)
}

fn count_above(sv: &[f64], rows: usize, cols: usize, tol: &Tolerance) -> usize {
    let Some(&max) = sv.first() else { return 0 };
    let thr = tol.rank_threshold(max, rows, cols);
    sv.iter().filter(|&&s| s > thr).count()
}

/// Numerical rank: singular values above `rank_rel * sigma_max * max(rows, cols)`.
pub fn rank_svd(x: &RealMatrix, tol: &Tolerance) -> usize {
    count_above(&singular_values(x), x.nrows(), x.ncols(), tol)
}

pub fn complex_rank(x: &ComplexMatrix, tol: &Tolerance) -> usize {
    count_above(&complex_singular_values(x), x.nrows(), x.ncols(), tol)
}

/// Rank certified at machine precision: singular values above
/// `max(rows, cols) * eps * sigma_max`, the floor below which an SVD cannot
/// distinguish a value from rounding. Used where the question is whether the
/// given data has exact full rank rather than whether it is far from deficient.
pub fn certified_rank_of(sv: &[f64], rows: usize, cols: usize) -> usize {
    let Some(&max) = sv.first() else { return 0 };
    let thr = certified_threshold(max, rows, cols);
    sv.iter().filter(|&&s| s > thr).count()
}

pub fn certified_threshold(sigma_max: f64, rows: usize, cols: usize) -> f64 {
    rows.max(cols).max(1) as f64 * f64::EPSILON * sigma_max
}

pub fn certified_rank(x: &RealMatrix) -> usize {
    certified_rank_of(&singular_values(x), x.nrows(), x.ncols())
}

pub fn complex_certified_rank(x: &ComplexMatrix) -> usize {
    certified_rank_of(&complex_singular_values(x), x.nrows(), x.ncols())
}

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
/// (nalgebra only provides `exp` with `std`.)
pub fn expm(x: &RealMatrix) -> RealMatrix {
    let n = x.nrows();
    let norm = x.abs().row_sum().max();
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let y = x * scale;
    let mut term = RealMatrix::identity(n, n);
    let mut sum = term.clone();
    for k in 1..=18 {
        term = &term * &y / k as f64;
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Full SVD `(u, sigma, v)`: `u` and `v` square orthogonal, `sigma` of
/// length `min(rows, cols)`, decreasing.
pub(crate) fn full_svd(x: &RealMatrix) -> (RealMatrix, Vec<f64>, RealMatrix) {
    let s = crate::svd::svd(x);
    (s.u, s.sigma, s.v)
}

/// Singular values (decreasing, exactly `cols` of them, zero-padded for wide
/// inputs) and the full `cols x cols` matrix of right singular vectors.
pub(crate) fn right_svd(x: &RealMatrix) -> (Vec<f64>, RealMatrix) {
    let c = x.ncols();
    let s = crate::svd::svd(x);
    let mut sigma = s.sigma;
    sigma.resize(c, 0.0);
    (sigma, s.v)
}

/// Orthonormal basis (columns) of `Ker x`.
pub fn kernel_basis(x: &RealMatrix, tol: &Tolerance) -> RealMatrix {
    let (r, c) = x.shape();
    if c == 0 {
        return RealMatrix::zeros(0, 0);
    }
    if r == 0 {
        return RealMatrix::identity(c, c);
    }
    let (sigma, v) = right_svd(x);
    let rank = count_above(&sigma, r, c, tol);
    v.columns(rank, c - rank).into_owned()
}

/// Orthonormal basis (columns) of `Im x`.
pub fn range_basis(x: &RealMatrix, tol: &Tolerance) -> RealMatrix {
    let (r, c) = x.shape();
    if r == 0 || c == 0 {
        return RealMatrix::zeros(r, 0);
    }
    let (u, sigma, _) = full_svd(x);
    let rank = count_above(&sigma, r, c, tol);
    u.view((0, 0), (r, rank)).into_owned()
}

/// Orthonormal basis of the orthogonal complement of the span of the
/// orthonormal columns of `q`.
pub fn orth_complement(q: &RealMatrix) -> RealMatrix {
    let (n, r) = q.shape();
    let projector = RealMatrix::identity(n, n) - q * q.transpose();
    let eig = sym_eig_unchecked(symmetric_part(&projector));
    eig.vectors.columns(r, n - r).into_owned()
}

/// Moore-Penrose pseudoinverse with the [`rank_svd`] threshold.
pub fn pinv(x: &RealMatrix, tol: &Tolerance) -> RealMatrix {
    let (r, c) = x.shape();
    if r == 0 || c == 0 {
        return RealMatrix::zeros(c, r);
    }
    let svd = crate::svd::svd(x);
    let thr = tol.rank_threshold(svd.sigma[0], r, c);
    let mut out = RealMatrix::zeros(c, r);
    for (k, &s) in svd.sigma.iter().enumerate() {
        if s > thr {
            out += svd.v.column(k) * svd.u.column(k).transpose() * (1.0 / s);
        }
    }
    out
}

/// Inverse of a square matrix; the empty matrix is its own inverse.
pub fn inverse(x: &RealMatrix, what: &str) -> Result<RealMatrix> {
    require_square(x, what)?;
    if x.nrows() == 0 {
        return Ok(x.clone());
    }
    x.clone()
        .try_inverse()
        .ok_or_else(|| Error::Domain(alloc::format!("{what} is singular")))
}

/// Solves `a x = b` for complex square `a`. `None` if `a` is singular.
pub fn solve_complex(a: &ComplexMatrix, b: &ComplexMatrix) -> Option<ComplexMatrix> {
    if a.nrows() == 0 {
        return Some(ComplexMatrix::zeros(0, b.ncols()));
    }
    a.clone().lu().solve(b)
}

// ---------------------------------------------------------------------------
// PSD tests and factorizations

/// Smallest eigenvalue of a symmetric matrix (`+inf` for the empty matrix).
pub fn min_eigenvalue(s: &RealMatrix) -> f64 {
    sym_eig_unchecked(symmetric_part(s))
        .values
        .first()
        .copied()
        .unwrap_or(f64::INFINITY)
}

/// `true` if symmetric `s` is PSD up to `psd_abs * (1 + |s|)`.
pub fn is_psd(s: &RealMatrix, tol: &Tolerance) -> bool {
    is_symmetric(s, tol) && min_eigenvalue(s) >= -tol.psd_floor(s.norm())
}

/// Decides whether the Hermitian matrix `S + iT` is PSD, via the real
/// symmetric embedding `[[S, -T], [T, S]]`.
pub fn psd_pair_check(s: &RealMatrix, t: &RealMatrix, tol: &Tolerance) -> Result<bool> {
    Ok(psd_pair_margin(s, t, tol)? >= 0.0)
}

/// Smallest eigenvalue of the embedding plus the PSD floor: nonnegative iff
/// [`psd_pair_check`] holds.
pub fn psd_pair_margin(s: &RealMatrix, t: &RealMatrix, tol: &Tolerance) -> Result<f64> {
    let m = require_square(s, "Hermitian real part")?;
    require_shape(t, m, m, "Hermitian imaginary part")?;
    let s = require_symmetric(s, "Hermitian real part", tol)?;
    let t = require_skew(t, "Hermitian imaginary part", tol)?;
    let mut emb = RealMatrix::zeros(2 * m, 2 * m);
    emb.view_mut((0, 0), (m, m)).copy_from(&s);
    emb.view_mut((m, m), (m, m)).copy_from(&s);
    emb.view_mut((0, m), (m, m)).copy_from(&(-&t));
    emb.view_mut((m, 0), (m, m)).copy_from(&t);
    Ok(min_eigenvalue(&emb) + tol.psd_floor(s.norm()))
}

/// Factor a PSD matrix as `Q = B0^T B0` with `B0` of full row rank
/// `p = rank Q`. Uses the symmetric square root restricted to the row space.
pub fn gram_factor(q: &RealMatrix, tol: &Tolerance) -> Result<RealMatrix> {
    let q = require_symmetric(q, "Gram matrix", tol)?;
    let m = q.nrows();
    let eig = sym_eig_unchecked(q.clone());
    if let Some(&min) = eig.values.first() {
        if min < -tol.psd_floor(q.norm()) {
            return Err(Error::Structure {
                what: "Gram matrix",
                structure: "positive semidefinite",
                residual: -min,
            });
        }
    }
    let max = eig.values.last().copied().unwrap_or(0.0).max(0.0);
    let thr = tol.rank_threshold(max, m, m);
    let kept: Vec<usize> = (0..m).rev().filter(|&i| eig.values[i] > thr).collect();
    let mut b0 = RealMatrix::zeros(kept.len(), m);
    for (row, &i) in kept.iter().enumerate() {
        let scale = eig.values[i].sqrt();
        for c in 0..m {
            b0[(row, c)] = scale * eig.vectors[(c, i)];
        }
    }
    Ok(b0)
}

/// Symmetric square root of a PSD matrix (negative eigenvalues clamped to zero).
pub fn psd_sqrt(s: &RealMatrix) -> RealMatrix {
    spectral_map(s, |v| v.max(0.0).sqrt())
}

/// `f(S)` for a symmetric `S`, applied through its eigendecomposition.
pub fn spectral_map(s: &RealMatrix, f: impl Fn(f64) -> f64) -> RealMatrix {
    let eig = sym_eig_unchecked(symmetric_part(s));
    let n = s.nrows();
    let mut scaled = eig.vectors.clone();
    for (j, &v) in eig.values.iter().enumerate() {
        let fv = f(v);
        for i in 0..n {
            scaled[(i, j)] *= fv;
        }
    }
    symmetric_part(&(scaled * eig.vectors.transpose()))
}

// ---------------------------------------------------------------------------
// Assembly helpers

/// Block matrix from a grid of blocks; block sizes must agree along rows and columns.
pub fn assemble(rows: &[&[&RealMatrix]]) -> RealMatrix {
    let heights: Vec<usize> = rows.iter().map(|r| r[0].nrows()).collect();
    let widths: Vec<usize> = rows[0].iter().map(|b| b.ncols()).collect();
    let mut out = RealMatrix::zeros(heights.iter().sum(), widths.iter().sum());
    let mut r0 = 0;
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), widths.len(), "ragged block row {i}");
        let mut c0 = 0;
        for (j, block) in row.iter().enumerate() {
            assert_eq!(
                block.shape(),
                (heights[i], widths[j]),
                "block ({i},{j}) has the wrong shape"
            );
            out.view_mut((r0, c0), block.shape()).copy_from(*block);
            c0 += widths[j];
        }
        r0 += heights[i];
    }
    out
}

pub fn block_diag(blocks: &[RealMatrix]) -> RealMatrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let m: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = RealMatrix::zeros(n, m);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.view_mut((r, c), b.shape()).copy_from(b);
        r += b.nrows();
        c += b.ncols();
    }
    out
}

pub fn zeros(r: usize, c: usize) -> RealMatrix {
    RealMatrix::zeros(r, c)
}

pub fn eye(n: usize) -> RealMatrix {
    RealMatrix::identity(n, n)
}
