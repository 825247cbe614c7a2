//! Poles, zeros and the eigenvalue inequalities that relate them.

use alloc::vec::Vec;
use core::fmt;

use crate::invert::{decompose_input_space, inverse_state_space};
use crate::matlin::{
    self, cluster_threshold, hermitian_eigenvalues, skew_canonical, skew_spectrum, ComplexMatrix,
    RealMatrix, Tolerance,
};
use crate::pro::{FosterTerm, StateSpaceRealization};
use crate::realize::residue_split;
use crate::{Error, Result};

/// A pole or zero location: `omega >= 0` stands for the pair `+-i omega`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Location {
    Finite(f64),
    Infinity,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Finite(w) => write!(f, "{w:.6}"),
            Location::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoleEntry {
    pub location: Location,
    /// For `omega > 0`, the eigenvalues `+-i omega` each have this multiplicity.
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoleZeroReport {
    pub m: usize,
    pub poles: Vec<PoleEntry>,
    pub zeros: Vec<PoleEntry>,
}

impl PoleZeroReport {
    /// Every multiplicity is at most `m`.
    pub fn within_caps(&self) -> bool {
        self.poles.iter().chain(&self.zeros).all(|e| e.multiplicity <= self.m)
    }

    /// Finite locations that are both poles and zeros.
    pub fn co_located(&self, tol: &Tolerance) -> Vec<f64> {
        let scale = self
            .poles
            .iter()
            .chain(&self.zeros)
            .filter_map(|e| match e.location {
                Location::Finite(w) => Some(w),
                Location::Infinity => None,
            })
            .fold(0.0f64, f64::max);
        let thr = cluster_threshold(scale, tol);
        let mut out = Vec::new();
        for p in &self.poles {
            let Location::Finite(wp) = p.location else { continue };
            if self
                .zeros
                .iter()
                .any(|z| matches!(z.location, Location::Finite(wz) if (wz - wp).abs() <= thr))
            {
                out.push(wp);
            }
        }
        out
    }
}

/// Rank of a PSD matrix with an absolute floor of `psd_abs`.
fn psd_rank(m: &RealMatrix, tol: &Tolerance) -> usize {
    let n = m.nrows();
    let values = matlin::sym_eig_unchecked(matlin::symmetric_part(m)).values;
    let max = values.last().copied().unwrap_or(0.0).max(0.0);
    let thr = tol.rank_threshold(max, n, n).max(tol.psd_abs);
    values.iter().filter(|&&v| v > thr).count()
}

/// Poles of `zM + D + B^T (zI - A)^{-1} B`, assuming the realization is minimal.
/// Finite poles are listed by increasing `omega`, then the pole at infinity.
pub fn pole_report(r: &StateSpaceRealization, tol: &Tolerance) -> Result<Vec<PoleEntry>> {
    r.check_shapes()?;
    let canon = skew_canonical(&r.a, tol)?;
    let mut out = Vec::with_capacity(canon.blocks.len() + 2);
    if canon.zero_dim > 0 {
        out.push(PoleEntry { location: Location::Finite(0.0), multiplicity: canon.zero_dim });
    }
    for b in canon.blocks.iter().rev() {
        out.push(PoleEntry { location: Location::Finite(b.omega), multiplicity: b.multiplicity });
    }
    let at_infinity = psd_rank(&r.m, tol);
    if at_infinity > 0 {
        out.push(PoleEntry { location: Location::Infinity, multiplicity: at_infinity });
    }
    Ok(out)
}

/// Zeros of `F`, i.e. the poles of `F^{-1}`.
pub fn zero_report(r: &StateSpaceRealization, tol: &Tolerance) -> Result<Vec<PoleEntry>> {
    pole_report(&inverse_state_space(r, tol)?, tol)
}

pub fn pole_zero_report(r: &StateSpaceRealization, tol: &Tolerance) -> Result<PoleZeroReport> {
    Ok(PoleZeroReport {
        m: r.ports(),
        poles: pole_report(r, tol)?,
        zeros: zero_report(r, tol)?,
    })
}

/// Size of the block of `A` realizing one Foster term. Equals the lift size
/// `q` of [`crate::realize::lift_factorization`] on the same data.
pub fn foster_pole_multiplicity(term: &FosterTerm, tol: &Tolerance) -> Result<usize> {
    let q = matlin::require_symmetric(&term.q, "Q_j", tol)?;
    if term.omega == 0.0 {
        return Ok(matlin::gram_factor(&q, tol)?.nrows());
    }
    Ok(residue_split(term.omega, &q, &term.r, tol)?.lift_size())
}

// ---------------------------------------------------------------------------
// Interlacing

/// `lambda_j` of an ascending list with `-inf` below index 1 and `+inf` above the length.
pub fn indexed(values: &[f64], j: i64) -> f64 {
    if j < 1 {
        f64::NEG_INFINITY
    } else if j as usize > values.len() {
        f64::INFINITY
    } else {
        values[j as usize - 1]
    }
}

/// `rhs - lhs`, infinite when either side is an infinite placeholder.
fn slack(lhs: f64, rhs: f64) -> f64 {
    if lhs == f64::NEG_INFINITY || rhs == f64::INFINITY {
        f64::INFINITY
    } else {
        rhs - lhs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InterlaceFamily {
    /// `lambda_{j - m2/2 - m3}(iA_inv) <= lambda_j(iA)`
    InverseBelowPole,
    /// `lambda_{j+1}(iA) <= lambda_{j + m2/2 + m1 + 1}(iA_inv)`
    PoleBelowInverse,
    /// `lambda_{j - m2/2 - m1}(iA) <= lambda_j(iA_inv)`
    PoleBelowZero,
    /// `lambda_{j+1}(iA_inv) <= lambda_{j + m2/2 + m3 + 1}(iA)`
    ZeroBelowPole,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InequalityCheck {
    pub j: usize,
    pub family: InterlaceFamily,
    pub holds: bool,
    pub slack: f64,
}

/// Number of eigenvalues of one spectrum strictly between two consecutive
/// distinct eigenvalues of the other.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapCheck {
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
    pub holds: bool,
    /// `true` when counting zeros between poles, `false` for poles between zeros.
    pub zeros_between_poles: bool,
}

#[derive(Clone, Debug)]
pub struct InterlaceReport {
    /// Spectrum of `iA`, ascending.
    pub eigs_a: Vec<f64>,
    /// Spectrum of `iA_inv`, ascending.
    pub eigs_ainv: Vec<f64>,
    pub m1: usize,
    pub m2: usize,
    pub m3: usize,
    pub inequality_results: Vec<InequalityCheck>,
    pub gap_results: Vec<GapCheck>,
    /// Largest asymmetry `|lambda_j + lambda_{k+1-j}|` over both spectra.
    pub symmetry_residual: f64,
}

impl InterlaceReport {
    pub fn passed(&self) -> bool {
        self.inequality_results.iter().all(|c| c.holds) && self.gap_results.iter().all(|g| g.holds)
    }

    pub fn worst_slack(&self) -> f64 {
        self.inequality_results.iter().map(|c| c.slack).fold(f64::INFINITY, f64::min)
    }
}

fn symmetry_residual(values: &[f64]) -> f64 {
    let k = values.len();
    (0..k).map(|j| (values[j] + values[k - 1 - j]).abs()).fold(0.0, f64::max)
}

/// Distinct locations with multiplicities.
fn clusters(values: &[f64], thr: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some((last, count)) if v - *last <= thr => *count += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

fn gap_checks(outer: &[f64], inner: &[f64], m: usize, thr: f64, zeros_between_poles: bool) -> Vec<GapCheck> {
    let locations = clusters(outer, thr);
    locations
        .windows(2)
        .map(|w| {
            let (lower, upper) = (w[0].0, w[1].0);
            let count = inner.iter().filter(|&&v| v > lower + thr && v < upper - thr).count();
            GapCheck { lower, upper, count, holds: count <= m, zeros_between_poles }
        })
        .collect()
}

/// Checks every family of the pole-zero interlacing inequalities and the
/// "at most `m` in between" counts on the signed spectra of `iA` and `iA_inv`.
pub fn interlace_verify(r: &StateSpaceRealization, tol: &Tolerance) -> Result<InterlaceReport> {
    let inv = inverse_state_space(r, tol)?;
    let dec = decompose_input_space(&r.m, &r.d, &r.b, tol)?;
    let a = matlin::require_skew(&r.a, "A", tol)?;
    let eigs_a = skew_spectrum(&a);
    let eigs_ainv = skew_spectrum(&inv.a);
    let (m1, m2, m3) = (dec.m1 as i64, dec.m2 as i64, dec.m3 as i64);
    let half = m2 / 2;

    let scale = eigs_a.iter().chain(&eigs_ainv).fold(0.0f64, |acc, v| acc.max(v.abs()));
    let thr = cluster_threshold(scale, tol);
    let top = (eigs_a.len() + eigs_ainv.len()) as i64 + 1;
    let mut results = Vec::new();
    let mut push = |j: i64, family, lhs: f64, rhs: f64| {
        let s = slack(lhs, rhs);
        results.push(InequalityCheck { j: j as usize, family, holds: s >= -thr, slack: s });
    };
    for j in 0..=top {
        let (pa, pi) = (&eigs_a[..], &eigs_ainv[..]);
        push(j, InterlaceFamily::InverseBelowPole, indexed(pi, j - half - m3), indexed(pa, j));
        push(j, InterlaceFamily::PoleBelowInverse, indexed(pa, j + 1), indexed(pi, j + half + m1 + 1));
        push(j, InterlaceFamily::PoleBelowZero, indexed(pa, j - half - m1), indexed(pi, j));
        push(j, InterlaceFamily::ZeroBelowPole, indexed(pi, j + 1), indexed(pa, j + half + m3 + 1));
    }

    let m = r.ports();
    let mut gap_results = gap_checks(&eigs_a, &eigs_ainv, m, thr, true);
    gap_results.extend(gap_checks(&eigs_ainv, &eigs_a, m, thr, false));
    Ok(InterlaceReport {
        symmetry_residual: symmetry_residual(&eigs_a).max(symmetry_residual(&eigs_ainv)),
        eigs_a,
        eigs_ainv,
        m1: dec.m1,
        m2: dec.m2,
        m3: dec.m3,
        inequality_results: results,
        gap_results,
    })
}

// ---------------------------------------------------------------------------
// Weyl, inertia and Cauchy bounds

/// Outcome of one family of indexed eigenvalue inequalities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundsReport {
    pub checked: usize,
    pub worst_slack: f64,
    pub passed: bool,
}

struct Tally {
    checked: usize,
    worst: f64,
    allowance: f64,
}

impl Tally {
    fn new(allowance: f64) -> Self {
        Self { checked: 0, worst: f64::INFINITY, allowance }
    }

    fn le(&mut self, lhs: f64, rhs: f64) {
        self.checked += 1;
        self.worst = self.worst.min(slack(lhs, rhs));
    }

    fn finish(self) -> BoundsReport {
        BoundsReport {
            checked: self.checked,
            worst_slack: self.worst,
            passed: self.worst >= -self.allowance,
        }
    }
}

fn require_hermitian_pair(m: &ComplexMatrix, n: &ComplexMatrix) -> Result<usize> {
    let k = m.nrows();
    if m.ncols() != k || n.shape() != (k, k) {
        return Err(Error::Shape("Hermitian matrices must be square and of equal size".into()));
    }
    Ok(k)
}

/// `lambda_{j+k-m}(M+N) <= lambda_j(M) + lambda_k(N) <= lambda_{j+k-1}(M+N)` for all `j, k`.
pub fn weyl_check(m: &ComplexMatrix, n: &ComplexMatrix, allowance: f64) -> Result<BoundsReport> {
    let size = require_hermitian_pair(m, n)? as i64;
    let lm = hermitian_eigenvalues(m);
    let ln = hermitian_eigenvalues(n);
    let ls = hermitian_eigenvalues(&(m + n));
    let mut t = Tally::new(allowance);
    for j in 1..=size {
        for k in 1..=size {
            let mid = indexed(&lm, j) + indexed(&ln, k);
            t.le(indexed(&ls, j + k - size), mid);
            t.le(mid, indexed(&ls, j + k - 1));
        }
    }
    Ok(t.finish())
}

/// The inertia refinement: with `r+` and `r-` the positive and negative
/// eigenvalue counts of `N`,
/// `lambda_{j-r+}(M+N) <= lambda_j(M) <= lambda_{j+r-}(M+N)` and
/// `lambda_{j-r-}(M) <= lambda_j(M+N) <= lambda_{j+r+}(M)`.
/// Eigenvalues of `N` within `allowance` of zero are not counted.
pub fn inertia_check(m: &ComplexMatrix, n: &ComplexMatrix, allowance: f64) -> Result<BoundsReport> {
    let size = require_hermitian_pair(m, n)? as i64;
    let lm = hermitian_eigenvalues(m);
    let ln = hermitian_eigenvalues(n);
    let ls = hermitian_eigenvalues(&(m + n));
    let r_plus = ln.iter().filter(|&&v| v > allowance).count() as i64;
    let r_minus = ln.iter().filter(|&&v| v < -allowance).count() as i64;
    let mut t = Tally::new(allowance);
    for j in 0..=size + 1 {
        t.le(indexed(&ls, j - r_plus), indexed(&lm, j));
        t.le(indexed(&lm, j), indexed(&ls, j + r_minus));
        t.le(indexed(&lm, j - r_minus), indexed(&ls, j));
        t.le(indexed(&ls, j), indexed(&lm, j + r_plus));
    }
    Ok(t.finish())
}

/// `lambda_j(H) <= lambda_j(H_11) <= lambda_{j+k}(H)` for the leading
/// `leading x leading` block `H_11` of `H`, with `k` the size of the rest.
pub fn cauchy_check(h: &ComplexMatrix, leading: usize, allowance: f64) -> Result<BoundsReport> {
    let size = h.nrows();
    if h.ncols() != size || leading > size {
        return Err(Error::Shape("Cauchy check needs a square matrix and a leading block that fits".into()));
    }
    let k = (size - leading) as i64;
    let lh = hermitian_eigenvalues(h);
    let lm = hermitian_eigenvalues(&h.view((0, 0), (leading, leading)).into_owned());
    let mut t = Tally::new(allowance);
    for j in 0..=leading as i64 {
        t.le(indexed(&lh, j), indexed(&lm, j));
        t.le(indexed(&lm, j), indexed(&lh, j + k));
    }
    Ok(t.finish())
}

/// Weyl and inertia bounds for `M`, `N` with slack `rank_rel * (1 + |spectrum|)`.
pub fn eig_perturbation_bounds(m: &ComplexMatrix, n: &ComplexMatrix, tol: &Tolerance) -> bool {
    let scale = [m, n]
        .iter()
        .flat_map(|x| hermitian_eigenvalues(x))
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    let allowance = cluster_threshold(scale, tol);
    matches!(weyl_check(m, n, allowance), Ok(r) if r.passed)
        && matches!(inertia_check(m, n, allowance), Ok(r) if r.passed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matlin::{eye, skew_block, to_complex, zeros};
    use crate::realize::lift_factorization;
    use alloc::vec;
    use approx::assert_abs_diff_eq;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn scalar(x: f64) -> RealMatrix {
        RealMatrix::from_element(1, 1, x)
    }

    fn cdiag(v: &[f64]) -> ComplexMatrix {
        to_complex(&RealMatrix::from_diagonal(&nalgebra::DVector::from_vec(v.to_vec())))
    }

    #[test]
    fn poles_of_differentiator_block() {
        let r = StateSpaceRealization::new(eye(3), zeros(3, 3), zeros(0, 0), zeros(0, 3));
        assert_eq!(
            pole_report(&r, &tol()).unwrap(),
            vec![PoleEntry { location: Location::Infinity, multiplicity: 3 }]
        );
    }

    #[test]
    fn poles_of_z_plus_inverse_z() {
        let r = StateSpaceRealization::new(scalar(1.0), scalar(0.0), zeros(1, 1), scalar(1.0));
        assert_eq!(
            pole_report(&r, &tol()).unwrap(),
            vec![
                PoleEntry { location: Location::Finite(0.0), multiplicity: 1 },
                PoleEntry { location: Location::Infinity, multiplicity: 1 },
            ]
        );
    }

    #[test]
    fn zeros_of_resonance() {
        let r = StateSpaceRealization::new(scalar(0.0), scalar(0.0), skew_block(1.0, 1), RealMatrix::from_column_slice(2, 1, &[1.0, 0.0]));
        let zeros = zero_report(&r, &tol()).unwrap();
        assert_eq!(zeros.len(), 2);
        assert_eq!(zeros[0].multiplicity, 1);
        assert!(matches!(zeros[0].location, Location::Finite(w) if w.abs() < 1e-12));
        assert_eq!(zeros[1], PoleEntry { location: Location::Infinity, multiplicity: 1 });
    }

    #[test]
    fn zeros_of_differentiator_pair() {
        let r = StateSpaceRealization::new(eye(2), zeros(2, 2), zeros(0, 0), zeros(0, 2));
        assert_eq!(
            zero_report(&r, &tol()).unwrap(),
            vec![PoleEntry { location: Location::Finite(0.0), multiplicity: 2 }]
        );
    }

    #[test]
    fn foster_multiplicity_cases() {
        let t = |omega, r: RealMatrix| FosterTerm::new(omega, eye(2), r);
        assert_eq!(foster_pole_multiplicity(&FosterTerm::new(1.0, zeros(2, 2), zeros(2, 2)), &tol()).unwrap(), 0);
        let sat = t(2.0, skew_block(2.0, 1));
        assert_eq!(foster_pole_multiplicity(&sat, &tol()).unwrap(), 1);
        assert_eq!(lift_factorization(2.0, &sat.q, &sat.r, &tol()).unwrap().q, 1);
        let free = t(1.0, zeros(2, 2));
        assert_eq!(foster_pole_multiplicity(&free, &tol()).unwrap(), 2);
        assert_eq!(foster_pole_multiplicity(&FosterTerm::new(1.0, scalar(1.0), scalar(0.0)), &tol()).unwrap(), 1);
    }

    #[test]
    fn interlacing_for_scalar_foster_function() {
        // z + z / (z^2 + 1) has zeros at 0 and +-sqrt(2) i.
        let lift = lift_factorization(1.0, &scalar(1.0), &scalar(0.0), &tol()).unwrap();
        let r = StateSpaceRealization::new(scalar(1.0), scalar(0.0), lift.state_matrix(), lift.b);
        let rep = interlace_verify(&r, &tol()).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.eigs_ainv.len(), 3);
        let root2 = 2.0f64.sqrt();
        for (got, want) in rep.eigs_ainv.iter().zip([-root2, 0.0, root2]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn interlacing_without_states_is_vacuous() {
        let r = StateSpaceRealization::new(eye(2), zeros(2, 2), zeros(0, 0), zeros(0, 2));
        let rep = interlace_verify(&r, &tol()).unwrap();
        assert!(rep.passed());
        assert!(rep.eigs_a.is_empty());
    }

    #[test]
    fn weyl_on_diagonal_pair() {
        let m = cdiag(&[1.0, 2.0]);
        let n = cdiag(&[0.1, -0.1]);
        assert!(weyl_check(&m, &n, 1e-12).unwrap().passed);
        assert!(inertia_check(&m, &n, 1e-12).unwrap().passed);
        assert!(eig_perturbation_bounds(&m, &n, &tol()));
    }

    #[test]
    fn weyl_with_zero_perturbation_is_tight() {
        let m = cdiag(&[3.0, -1.0, 2.0]);
        let rep = weyl_check(&m, &ComplexMatrix::zeros(3, 3), 1e-12).unwrap();
        assert!(rep.passed);
        assert_abs_diff_eq!(rep.worst_slack, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn cauchy_on_two_by_two() {
        let h = to_complex(&RealMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 3.0]));
        let rep = cauchy_check(&h, 1, 1e-12).unwrap();
        assert!(rep.passed);
        let lh = hermitian_eigenvalues(&h);
        let root5 = 5.0f64.sqrt();
        assert_abs_diff_eq!(lh[0], (5.0 - root5) / 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(lh[1], (5.0 + root5) / 2.0, epsilon = 1e-14);
    }

    #[test]
    fn violated_bound_is_reported() {
        let mut t = Tally::new(1e-12);
        t.le(1.0, 0.5);
        assert!(!t.finish().passed);
    }

    #[test]
    fn co_location_detection() {
        let rep = PoleZeroReport {
            m: 2,
            poles: vec![PoleEntry { location: Location::Finite(3.0), multiplicity: 1 }],
            zeros: vec![PoleEntry { location: Location::Finite(3.0 + 1e-13), multiplicity: 1 }],
        };
        assert_eq!(rep.co_located(&tol()), vec![3.0]);
        assert!(rep.within_caps());
    }
}
