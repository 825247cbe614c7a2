//! Conversions between Foster, state-space and Weierstrass descriptor forms,
//! plus the controllability and descriptor-minimality tests they rely on.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // float math is inherent only in recent `core`
use num_traits::Float;

use crate::matlin::{
    self, assemble, block_diag, complex_singular_values, eye, gram_factor, kernel_basis, max_abs,
    pinv, psd_pair_margin, range_basis, rank_svd, skew_block, skew_canonical, skew_part,
    symmetric_part, to_complex, zeros, ComplexMatrix, RealMatrix, Tolerance,
};
use crate::pro::{
    validate_foster, DescriptorRealization, FosterForm, FosterTerm, StateSpaceRealization,
};
use crate::{Error, Result};

/// `Q = B^T B`, `R = B^T A B` with `A = omega [[0, I_q], [-I_q, 0]]` and
/// `(A, B)` controllable.
///
/// For `omega = 0` the residue is `Q / z` and the realizing state matrix is the
/// `q x q` zero matrix with `q = rank Q`; [`LiftResult::state_matrix`] returns
/// the matching state matrix in both cases.
#[derive(Clone, Debug)]
pub struct LiftResult {
    pub omega: f64,
    /// Pole multiplicity contributed by this residue.
    pub q: usize,
    pub b: RealMatrix,
}

impl LiftResult {
    pub fn state_dim(&self) -> usize {
        self.b.nrows()
    }

    pub fn state_matrix(&self) -> RealMatrix {
        if self.omega > 0.0 {
            skew_block(self.omega, self.q)
        } else {
            zeros(self.q, self.q)
        }
    }
}

/// Residue data rotated into the canonical basis of `S0 = (B0^+)^T R B0^+`.
pub(crate) struct ResidueSplit {
    /// Rows `b_1, ..., b_p` of `U0^T B0`, grouped in `Lambda_alpha` pairs.
    pub rows: RealMatrix,
    /// Pair frequencies `omega >= alpha_1 >= ... >= alpha_k >= 0`.
    pub alphas: Vec<f64>,
    /// Number of pairs with `alpha_j = omega`.
    pub l: usize,
}

impl ResidueSplit {
    pub fn p(&self) -> usize {
        self.rows.nrows()
    }

    /// Multiplicity `l + 2(k - l) (+ 1 if p is odd)`.
    pub fn lift_size(&self) -> usize {
        let k = self.alphas.len();
        self.l + 2 * (k - self.l) + self.p() % 2
    }
}

/// `alpha` counts as equal to `omega` within this distance.
pub(crate) fn saturation_threshold(omega: f64, tol: &Tolerance) -> f64 {
    tol.psd_abs * (1.0 + omega)
}

pub(crate) fn residue_split(omega: f64, q: &RealMatrix, r: &RealMatrix, tol: &Tolerance) -> Result<ResidueSplit> {
    let b0 = gram_factor(q, tol)?;
    let p = b0.nrows();
    if p == 0 {
        return Ok(ResidueSplit {
            rows: b0,
            alphas: Vec::new(),
            l: 0,
        });
    }
    let b0_pinv = pinv(&b0, tol);
    let s0 = skew_part(&(b0_pinv.transpose() * r * &b0_pinv));
    let canon = skew_canonical(&s0, tol)?;
    let (ranges, zero) = canon.block_ranges();

    let mut cols = Vec::with_capacity(p);
    let mut alphas = Vec::with_capacity(p / 2);
    for (blk, range) in canon.blocks.iter().zip(ranges) {
        let k = blk.multiplicity;
        for i in 0..k {
            cols.push(range.start + i);
            cols.push(range.start + k + i);
            alphas.push(blk.omega.min(omega));
        }
    }
    let zero_cols: Vec<usize> = zero.collect();
    for pair in zero_cols.chunks(2) {
        cols.extend_from_slice(pair);
        if pair.len() == 2 {
            alphas.push(0.0);
        }
    }
    let u0 = RealMatrix::from_fn(p, p, |i, j| canon.u[(i, cols[j])]);
    let rows = u0.transpose() * b0;
    let thr = saturation_threshold(omega, tol);
    let l = alphas.iter().take_while(|&&a| omega - a < thr).count();
    Ok(ResidueSplit { rows, alphas, l })
}

/// Constructive factorization of a dominated residue pair `(Q, R)` at frequency `omega`.
pub fn lift_factorization(omega: f64, q: &RealMatrix, r: &RealMatrix, tol: &Tolerance) -> Result<LiftResult> {
    if !(omega.is_finite() && omega >= 0.0) {
        return Err(Error::Domain(format!("pole frequency must be finite and nonnegative, got {omega}")));
    }
    let m = matlin::require_square(q, "Q")?;
    matlin::require_shape(r, m, m, "R")?;
    let q = matlin::require_symmetric(q, "Q", tol)?;
    let r = matlin::require_skew(r, "R", tol)?;

    if omega == 0.0 {
        let res = max_abs(&r);
        if res > tol.eq_floor(max_abs(&q)) {
            return Err(Error::Domain(format!(
                "residue at omega = 0 must have R = 0 (|R| = {res:e})"
            )));
        }
        let b = gram_factor(&q, tol)?;
        return Ok(LiftResult { omega, q: b.nrows(), b });
    }

    let s = &q * omega;
    for sign in [1.0, -1.0] {
        let margin = psd_pair_margin(&s, &(&r * sign), tol)?;
        if margin < 0.0 {
            return Err(Error::Domain(format!(
                "residue pair not dominated at omega = {omega} (margin {margin:e})"
            )));
        }
    }

    let split = residue_split(omega, &q, &r, tol)?;
    let size = split.lift_size();
    let mut b = zeros(2 * size, m);
    let row = |i: usize| split.rows.row(i).into_owned();
    let mut mode = 0;
    // Saturated pairs map directly onto one mode of A.
    for j in 0..split.l {
        b.set_row(mode, &row(2 * j));
        b.set_row(size + mode, &row(2 * j + 1));
        mode += 1;
    }
    // Unsaturated pairs need two modes: a rotation by (alpha, eta) / omega
    // spreads the first row over both.
    for j in split.l..split.alphas.len() {
        let alpha = split.alphas[j];
        let eta = (omega * omega - alpha * alpha).max(0.0).sqrt();
        let first = row(2 * j);
        b.set_row(mode, &(&first * (alpha / omega)));
        b.set_row(mode + 1, &(&first * (eta / omega)));
        b.set_row(size + mode, &row(2 * j + 1));
        mode += 2;
    }
    if split.p() % 2 == 1 {
        b.set_row(mode, &row(split.p() - 1));
        mode += 1;
    }
    debug_assert_eq!(mode, size);
    Ok(LiftResult { omega, q: size, b })
}

/// Realization `M = Q`, `D = R`, `A = diag(A_j)`, `B = [B_1; ...; B_s]` from
/// lifting each (merged) Foster term.
pub fn foster_to_state_space(f: &FosterForm, tol: &Tolerance) -> Result<StateSpaceRealization> {
    let f = f.merged(tol);
    let report = validate_foster(&f, tol);
    if !report.passed() {
        return Err(Error::InvalidFoster(report));
    }
    let m = f.ports();
    let mut blocks = Vec::with_capacity(f.terms.len());
    let mut rows = Vec::with_capacity(f.terms.len());
    for t in &f.terms {
        let lift = lift_factorization(t.omega, &t.q, &t.r, tol)?;
        if lift.q == 0 {
            continue;
        }
        blocks.push(lift.state_matrix());
        rows.push(lift.b);
    }
    let n: usize = rows.iter().map(|b| b.nrows()).sum();
    let mut b = zeros(n, m);
    let mut offset = 0;
    for part in &rows {
        b.view_mut((offset, 0), part.shape()).copy_from(part);
        offset += part.nrows();
    }
    Ok(StateSpaceRealization::new(
        symmetric_part(&f.q),
        skew_part(&f.r),
        block_diag(&blocks),
        b,
    ))
}

fn require_pro_structure(r: &StateSpaceRealization, tol: &Tolerance) -> Result<()> {
    r.check_shapes()?;
    if !matlin::is_psd(&r.m, tol) {
        return Err(Error::Domain("M must be symmetric positive semidefinite".to_string()));
    }
    matlin::require_skew(&r.d, "D", tol)?;
    matlin::require_skew(&r.a, "A", tol)?;
    Ok(())
}

/// Foster data from the skew canonical form of `A`: one term per distinct
/// `omega_j` with `Q_j = B_j^T B_j`, `R_j = B_j^T A_j B_j`, where `B_j` are the
/// matching rows of `U^T B`. The kernel of `A` yields the `omega = 0` term.
/// Terms are returned in increasing frequency.
pub fn state_space_to_foster(r: &StateSpaceRealization, tol: &Tolerance) -> Result<FosterForm> {
    require_pro_structure(r, tol)?;
    let canon = skew_canonical(&r.a, tol)?;
    let ub = canon.u.transpose() * &r.b;
    let m = r.ports();
    let (ranges, zero) = canon.block_ranges();
    let mut terms = Vec::with_capacity(canon.blocks.len() + 1);
    if !zero.is_empty() {
        let bz = ub.rows(zero.start, zero.len());
        terms.push(FosterTerm::new(0.0, symmetric_part(&(bz.transpose() * bz)), zeros(m, m)));
    }
    for (blk, range) in canon.blocks.iter().zip(ranges).rev() {
        let bj = ub.rows(range.start, range.len());
        let aj = skew_block(blk.omega, blk.multiplicity);
        terms.push(FosterTerm::new(
            blk.omega,
            symmetric_part(&(bj.transpose() * bj)),
            skew_part(&(bj.transpose() * aj * bj)),
        ));
    }
    Ok(FosterForm::new(symmetric_part(&r.m), skew_part(&r.d), terms))
}

/// Weierstrass descriptor realization of dimension `n + 2q`, `q = rank M`,
/// `M = K^T K`:
///
/// ```text
/// E = [[I_n, 0, 0], [0, 0, I_q], [0, 0, 0]]   A = diag(A, I_q, I_q)
/// B = [B; 0; -K]                              C = [B; K; 0]          D = D
/// ```
pub fn state_space_to_weierstrass(r: &StateSpaceRealization, tol: &Tolerance) -> Result<DescriptorRealization> {
    require_pro_structure(r, tol)?;
    let k = gram_factor(&r.m, tol)?;
    Ok(weierstrass_from_parts(&r.a, &r.b, &k, &r.d))
}

pub(crate) fn weierstrass_from_parts(a: &RealMatrix, b: &RealMatrix, k: &RealMatrix, d: &RealMatrix) -> DescriptorRealization {
    let n = a.nrows();
    let q = k.nrows();
    let m = d.nrows();
    let (i_n, i_q) = (eye(n), eye(q));
    let (z_nq, z_qn, z_qq) = (zeros(n, q), zeros(q, n), zeros(q, q));
    let e = assemble(&[
        &[&i_n, &z_nq, &z_nq],
        &[&z_qn, &z_qq, &i_q],
        &[&z_qn, &z_qq, &z_qq],
    ]);
    let a_w = block_diag(&[a.clone(), i_q.clone(), i_q]);
    let zq = zeros(q, m);
    let b_w = assemble(&[&[b], &[&zq], &[&(-k)]]);
    let c_w = assemble(&[&[b], &[k], &[&zq]]);
    DescriptorRealization::new(e, a_w, b_w, c_w, d.clone())
}

// ---------------------------------------------------------------------------
// Controllability

/// Hautus rank of `[A - lambda I, B]` at one eigenvalue of `A`.
#[derive(Clone, Copy, Debug)]
pub struct HautusRank {
    pub lambda: Complex64,
    pub rank: usize,
    /// The `n`-th largest singular value of `[A - lambda I, B]`.
    pub smallest_singular_value: f64,
    pub largest_singular_value: f64,
}

impl HautusRank {
    /// Distance to losing rank at this eigenvalue, relative to the data scale.
    pub fn relative_margin(&self) -> f64 {
        if self.largest_singular_value > 0.0 {
            self.smallest_singular_value / self.largest_singular_value
        } else {
            0.0
        }
    }
}

/// Distinct eigenvalues of a real square matrix. Skew-symmetric inputs go
/// through the Hermitian eigensolver of `iA`.
fn distinct_eigenvalues(a: &RealMatrix, tol: &Tolerance) -> Vec<Complex64> {
    let raw: Vec<Complex64> = if matlin::is_skew(a, tol) {
        matlin::skew_spectrum(&skew_part(a))
            .into_iter()
            .map(|l| Complex64::new(0.0, -l))
            .collect()
    } else {
        a.clone().complex_eigenvalues().iter().copied().collect()
    };
    cluster_points(raw, tol)
}

fn cluster_points(mut pts: Vec<Complex64>, tol: &Tolerance) -> Vec<Complex64> {
    let scale = pts.iter().fold(1.0f64, |acc, p| acc.max(p.norm()));
    let thr = tol.rank_rel * scale * 10.0;
    pts.sort_by(|x, y| x.im.total_cmp(&y.im).then(x.re.total_cmp(&y.re)));
    let mut out: Vec<Complex64> = Vec::with_capacity(pts.len());
    for p in pts {
        if !out.iter().any(|q| (q - p).norm() <= thr) {
            out.push(p);
        }
    }
    out
}

/// Hautus ranks at every distinct eigenvalue of `A`. The rank is certified at
/// machine precision (see [`matlin::certified_rank_of`]); the relative margin
/// tells how far the pair is from losing controllability.
pub fn hautus_ranks(a: &RealMatrix, b: &RealMatrix, tol: &Tolerance) -> Result<Vec<HautusRank>> {
    let n = matlin::require_square(a, "A")?;
    if b.nrows() != n {
        return Err(Error::Shape(format!("B must have {n} rows, got {}", b.nrows())));
    }
    let m = b.ncols();
    let a_c = to_complex(a);
    let b_c = to_complex(b);
    Ok(distinct_eigenvalues(a, tol)
        .into_iter()
        .map(|lambda| {
            let mut x = ComplexMatrix::zeros(n, n + m);
            x.view_mut((0, 0), (n, n))
                .copy_from(&(&a_c - ComplexMatrix::identity(n, n) * lambda));
            x.view_mut((0, n), (n, m)).copy_from(&b_c);
            let sv = complex_singular_values(&x);
            let rank = matlin::certified_rank_of(&sv, n, n + m);
            HautusRank {
                lambda,
                rank,
                smallest_singular_value: sv.get(n - 1).copied().unwrap_or(0.0),
                largest_singular_value: sv.first().copied().unwrap_or(0.0),
            }
        })
        .collect())
}

/// `rank [A - lambda I, B] = n` at every eigenvalue `lambda` of `A`.
pub fn controllability_hautus(a: &RealMatrix, b: &RealMatrix, tol: &Tolerance) -> bool {
    let n = a.nrows();
    match hautus_ranks(a, b, tol) {
        Ok(ranks) => ranks.iter().all(|h| h.rank == n),
        Err(_) => false,
    }
}

/// Finite-horizon controllability Gramian `int_0^T e^{At} B B^T e^{A^T t} dt`,
/// from the block exponential of `[[-A, B B^T], [0, A^T]] T`. For a skew `A`
/// the pair is controllable iff this is positive definite for any `T > 0`.
/// Intended as a cross-check for small `n`.
pub fn controllability_gramian(a: &RealMatrix, b: &RealMatrix, horizon: f64) -> Result<RealMatrix> {
    let n = matlin::require_square(a, "A")?;
    if b.nrows() != n {
        return Err(Error::Shape(format!("B must have {n} rows, got {}", b.nrows())));
    }
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::Domain(format!("horizon must be positive and finite, got {horizon}")));
    }
    let bbt = b * b.transpose();
    let big = assemble(&[&[&(-a), &bbt], &[&zeros(n, n), &a.transpose()]]) * horizon;
    let e = matlin::expm(&big);
    let f12 = e.view((0, n), (n, n)).into_owned();
    let f22 = e.view((n, n), (n, n)).into_owned();
    Ok(symmetric_part(&(f22.transpose() * f12)))
}

/// Rank of the Krylov matrix `[B, AB, ..., A^{n-1} B]`. Only reliable for
/// small, well-scaled problems; kept as a cross-check for the Hautus test.
pub fn krylov_rank(a: &RealMatrix, b: &RealMatrix, tol: &Tolerance) -> usize {
    let n = a.nrows();
    let m = b.ncols();
    let mut krylov = zeros(n, n * m);
    let mut power = b.clone();
    for k in 0..n {
        krylov.view_mut((0, k * m), (n, m)).copy_from(&power);
        power = a * power;
    }
    rank_svd(&krylov, tol)
}

// ---------------------------------------------------------------------------
// Descriptor minimality

#[derive(Clone, Debug, PartialEq)]
pub struct RankCondition {
    pub label: &'static str,
    pub holds: bool,
    /// Smallest rank observed (for `(v)`, the number of kernel directions checked).
    pub rank: usize,
    pub required: usize,
    /// For `(v)`: `|(I - P_{Im E}) A (Ker E)|`; otherwise 0.
    pub residual: f64,
}

/// The five rank conditions for minimality of `D + C^T (zE - A)^{-1} B`.
/// Conditions (i) and (iii) are evaluated at the finite generalized
/// eigenvalues of the pencil plus `probes` further points.
#[derive(Clone, Debug)]
pub struct MinimalityReport {
    pub minimal: bool,
    pub conditions: [RankCondition; 5],
    pub pencil_eigenvalues: Vec<Complex64>,
    pub probes: usize,
}

const PROBE_COUNT: usize = 10;
const SHIFTS: [f64; 6] = [0.618_033_988_7, -1.324_717_957_2, 2.236_067_977_5, -0.414_213_562_4, core::f64::consts::PI, -core::f64::consts::E];
const REGULARITY_PROBES: [(f64, f64); 3] = [(0.377, 1.291), (-1.618, 0.523), (2.71, -core::f64::consts::PI)];

fn pencil(e: &RealMatrix, a: &RealMatrix, z: Complex64) -> ComplexMatrix {
    to_complex(e) * z - to_complex(a)
}

fn relative_smin(x: &ComplexMatrix) -> f64 {
    let sv = complex_singular_values(x);
    match (sv.first(), sv.last()) {
        (Some(&max), Some(&min)) if max > 0.0 => min / max,
        (Some(_), Some(_)) => 0.0,
        _ => 1.0,
    }
}

/// `det(zE - A)` not identically zero, decided by sampling at fixed points.
pub fn pencil_is_regular(e: &RealMatrix, a: &RealMatrix, tol: &Tolerance) -> bool {
    let n = e.nrows();
    REGULARITY_PROBES.iter().any(|&(re, im)| {
        relative_smin(&pencil(e, a, Complex64::new(re, im))) > tol.rank_rel * n.max(1) as f64
    })
}

/// Finite generalized eigenvalues of the regular pencil `zE - A`, via the
/// eigenvalues `mu` of `(sE - A)^{-1} E` for a real shift `s`:
/// `z = s - 1/mu` for every `mu` that is not numerically zero.
pub fn pencil_eigenvalues(e: &RealMatrix, a: &RealMatrix, tol: &Tolerance) -> Result<Vec<Complex64>> {
    let n = e.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let shift = SHIFTS
        .iter()
        .copied()
        .find(|&s| relative_smin(&pencil(e, a, Complex64::new(s, 0.0))) > 1e-6)
        .ok_or(Error::IrregularPencil)?;
    let g = matlin::inverse(&(e * shift - a), "shifted pencil")? * e;
    let mus = g.clone().complex_eigenvalues();
    let floor = 1e-6 * g.norm().max(f64::MIN_POSITIVE);
    let finite = mus
        .iter()
        .filter(|mu| mu.norm() > floor)
        .map(|mu| Complex64::new(shift, 0.0) - mu.inv())
        .collect();
    Ok(cluster_points(finite, tol))
}

pub fn descriptor_minimality(d: &DescriptorRealization, tol: &Tolerance) -> Result<MinimalityReport> {
    d.check_shapes()?;
    let n = d.states();
    let m = d.ports();
    if !pencil_is_regular(&d.e, &d.a, tol) {
        return Err(Error::IrregularPencil);
    }
    let eigs = pencil_eigenvalues(&d.e, &d.a, tol)?;
    let (probes, _) = crate::pro::sample_points(11, PROBE_COUNT, 0);
    let points: Vec<Complex64> = eigs
        .iter()
        .copied()
        .chain(probes.iter().map(|z| Complex64::new(z.re - 5.0, z.im * 0.5)))
        .collect();

    let min_pencil_rank = |e: &RealMatrix, a: &RealMatrix, b: &RealMatrix| -> usize {
        let b_c = to_complex(b);
        points
            .iter()
            .map(|&z| {
                let mut x = ComplexMatrix::zeros(n, n + m);
                x.view_mut((0, 0), (n, n)).copy_from(&pencil(e, a, z));
                x.view_mut((0, n), (n, m)).copy_from(&b_c);
                matlin::complex_certified_rank(&x)
            })
            .min()
            .unwrap_or(n)
    };
    let e_t = d.e.transpose();
    let a_t = d.a.transpose();
    let r1 = min_pencil_rank(&d.e, &d.a, &d.b);
    let r2 = matlin::certified_rank(&assemble(&[&[&d.e, &d.b]]));
    let r3 = min_pencil_rank(&e_t, &a_t, &d.c);
    let r4 = matlin::certified_rank(&assemble(&[&[&e_t, &d.c]]));

    let ker = kernel_basis(&d.e, tol);
    let im = range_basis(&d.e, tol);
    let leak = (eye(n) - &im * im.transpose()) * &d.a * &ker;
    let residual = max_abs(&leak);
    let v_holds = residual <= tol.eq_floor(max_abs(&d.a)) * (n.max(1) as f64);

    let cond = |label, rank: usize| RankCondition {
        label,
        holds: rank == n,
        rank,
        required: n,
        residual: 0.0,
    };
    let conditions = [
        cond("(i) rank [zE - A, B] = N for all z", r1),
        cond("(ii) rank [E, B] = N", r2),
        cond("(iii) rank [zE^T - A^T, C] = N for all z", r3),
        cond("(iv) rank [E^T, C] = N", r4),
        RankCondition {
            label: "(v) A Ker E is contained in Im E",
            holds: v_holds,
            rank: ker.ncols(),
            required: ker.ncols(),
            residual,
        },
    ];
    Ok(MinimalityReport {
        minimal: conditions.iter().all(|c| c.holds),
        conditions,
        probes: PROBE_COUNT,
        pencil_eigenvalues: eigs,
    })
}
