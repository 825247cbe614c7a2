//! The three representations of a positive real odd function, pointwise
//! evaluation and validation of their defining conditions.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::format;
use core::fmt;

use num_complex::Complex64;

use crate::matlin::{
    self, is_psd, max_abs, max_abs_complex, min_eigenvalue, psd_pair_margin, skew_residual,
    solve_complex, symmetry_residual, to_complex, ComplexMatrix, RealMatrix, Tolerance,
};
use crate::realize::hautus_ranks;
use crate::{Error, Result};

/// Relative pole guard for Foster evaluation: `|z^2 + w^2| > POLE_GUARD (1 + |z|^2)`.
pub const POLE_GUARD: f64 = 1e-8;

/// One partial-fraction term `(z Q_j + R_j) / (z^2 + omega^2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FosterTerm {
    pub omega: f64,
    pub q: RealMatrix,
    pub r: RealMatrix,
}

/// `F(z) = zQ + R + sum_j (z Q_j + R_j) / (z^2 + omega_j^2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FosterForm {
    pub q: RealMatrix,
    pub r: RealMatrix,
    pub terms: Vec<FosterTerm>,
}

impl FosterTerm {
    pub fn new(omega: f64, q: RealMatrix, r: RealMatrix) -> Self {
        Self { omega, q, r }
    }
}

impl FosterForm {
    pub fn new(q: RealMatrix, r: RealMatrix, terms: Vec<FosterTerm>) -> Self {
        Self { q, r, terms }
    }

    /// `F(z) = z Q` with no constant or pole terms.
    pub fn linear(q: RealMatrix) -> Self {
        let m = q.nrows();
        Self::new(q, RealMatrix::zeros(m, m), Vec::new())
    }

    pub fn ports(&self) -> usize {
        self.q.nrows()
    }

    /// Sorts terms by increasing frequency and sums the residues of terms
    /// whose frequencies lie within `rank_rel * max(1, omega_max)`.
    pub fn merged(&self, tol: &Tolerance) -> FosterForm {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| a.omega.total_cmp(&b.omega));
        let omega_max = terms.iter().fold(1.0f64, |acc, t| acc.max(t.omega.abs()));
        let thr = tol.rank_rel * omega_max;
        let mut merged: Vec<(FosterTerm, usize)> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some((last, count)) if (t.omega - last.omega / *count as f64).abs() <= thr => {
                    last.omega += t.omega;
                    last.q += &t.q;
                    last.r += &t.r;
                    *count += 1;
                }
                _ => merged.push((t, 1)),
            }
        }
        let terms = merged
            .into_iter()
            .map(|(mut t, count)| {
                t.omega /= count as f64;
                t
            })
            .collect();
        FosterForm::new(self.q.clone(), self.r.clone(), terms)
    }
}

/// `F(z) = zM + D + B^T (zI - A)^{-1} B`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateSpaceRealization {
    pub m: RealMatrix,
    pub d: RealMatrix,
    pub a: RealMatrix,
    pub b: RealMatrix,
}

impl StateSpaceRealization {
    pub fn new(m: RealMatrix, d: RealMatrix, a: RealMatrix, b: RealMatrix) -> Self {
        Self { m, d, a, b }
    }

    pub fn ports(&self) -> usize {
        self.m.nrows()
    }

    pub fn states(&self) -> usize {
        self.a.nrows()
    }

    pub(crate) fn check_shapes(&self) -> Result<()> {
        let m = matlin::require_square(&self.m, "M")?;
        let n = matlin::require_square(&self.a, "A")?;
        matlin::require_shape(&self.d, m, m, "D")?;
        matlin::require_shape(&self.b, n, m, "B")?;
        for (x, what) in [(&self.m, "M"), (&self.d, "D"), (&self.a, "A"), (&self.b, "B")] {
            matlin::ensure_finite(x, what)?;
        }
        Ok(())
    }
}

/// `F(z) = D + C^T (zE - A)^{-1} B`.
#[derive(Clone, Debug, PartialEq)]
pub struct DescriptorRealization {
    pub e: RealMatrix,
    pub a: RealMatrix,
    pub b: RealMatrix,
    pub c: RealMatrix,
    pub d: RealMatrix,
}

impl DescriptorRealization {
    pub fn new(e: RealMatrix, a: RealMatrix, b: RealMatrix, c: RealMatrix, d: RealMatrix) -> Self {
        Self { e, a, b, c, d }
    }

    pub fn ports(&self) -> usize {
        self.d.nrows()
    }

    pub fn states(&self) -> usize {
        self.e.nrows()
    }

    pub(crate) fn check_shapes(&self) -> Result<()> {
        let n = matlin::require_square(&self.e, "E")?;
        let m = matlin::require_square(&self.d, "D")?;
        matlin::require_shape(&self.a, n, n, "A")?;
        matlin::require_shape(&self.b, n, m, "B")?;
        matlin::require_shape(&self.c, n, m, "C")?;
        Ok(())
    }
}

/// Anything that can be evaluated as an `m x m` rational matrix function.
pub trait TransferFunction {
    fn ports(&self) -> usize;
    fn eval(&self, z: Complex64, tol: &Tolerance) -> Result<ComplexMatrix>;
}

impl TransferFunction for FosterForm {
    fn ports(&self) -> usize {
        FosterForm::ports(self)
    }
    fn eval(&self, z: Complex64, tol: &Tolerance) -> Result<ComplexMatrix> {
        eval_foster(self, z, tol)
    }
}

impl TransferFunction for StateSpaceRealization {
    fn ports(&self) -> usize {
        StateSpaceRealization::ports(self)
    }
    fn eval(&self, z: Complex64, tol: &Tolerance) -> Result<ComplexMatrix> {
        eval_state_space(self, z, tol)
    }
}

impl TransferFunction for DescriptorRealization {
    fn ports(&self) -> usize {
        DescriptorRealization::ports(self)
    }
    fn eval(&self, z: Complex64, tol: &Tolerance) -> Result<ComplexMatrix> {
        eval_descriptor(self, z, tol)
    }
}

pub fn eval_foster(f: &FosterForm, z: Complex64, _tol: &Tolerance) -> Result<ComplexMatrix> {
    let mut out = to_complex(&f.q) * z + to_complex(&f.r);
    let guard = POLE_GUARD * (1.0 + z.norm_sqr());
    for t in &f.terms {
        let den = z * z + t.omega * t.omega;
        if den.norm() <= guard {
            return Err(Error::PoleProximity {
                omega: Some(t.omega),
                distance: den.norm(),
            });
        }
        out += (to_complex(&t.q) * z + to_complex(&t.r)) / den;
    }
    Ok(out)
}

/// Solves `(zE - A) X = B` after checking `zE - A` is not numerically singular.
fn resolvent_solve(
    e: &ComplexMatrix,
    a: &RealMatrix,
    b: &RealMatrix,
    z: Complex64,
    tol: &Tolerance,
) -> Result<ComplexMatrix> {
    let pencil = e * z - to_complex(a);
    let sv = matlin::complex_singular_values(&pencil);
    if let Some(&smin) = sv.last() {
        let bound = tol.eq_rel * (1.0 + sv[0]);
        if smin <= bound {
            return Err(Error::PoleProximity {
                omega: None,
                distance: smin,
            });
        }
    }
    solve_complex(&pencil, &to_complex(b)).ok_or(Error::PoleProximity {
        omega: None,
        distance: 0.0,
    })
}

pub fn eval_state_space(
    r: &StateSpaceRealization,
    z: Complex64,
    tol: &Tolerance,
) -> Result<ComplexMatrix> {
    r.check_shapes()?;
    let n = r.states();
    let x = resolvent_solve(&ComplexMatrix::identity(n, n), &r.a, &r.b, z, tol)?;
    Ok(to_complex(&r.m) * z + to_complex(&r.d) + to_complex(&r.b.transpose()) * x)
}

pub fn eval_descriptor(
    d: &DescriptorRealization,
    z: Complex64,
    tol: &Tolerance,
) -> Result<ComplexMatrix> {
    d.check_shapes()?;
    let x = resolvent_solve(&to_complex(&d.e), &d.a, &d.b, z, tol)?;
    Ok(to_complex(&d.d) + to_complex(&d.c.transpose()) * x)
}

// ---------------------------------------------------------------------------
// Validation

/// One failed condition.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub condition: String,
    pub location: String,
    pub residual: f64,
}

/// Outcome of a validation; it passes iff no violation was recorded.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, condition: impl Into<String>, location: impl Into<String>, residual: f64) {
        self.violations.push(Violation {
            condition: condition.into(),
            location: location.into(),
            residual,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "passed");
        }
        writeln!(f, "failed ({} violation(s))", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  - {} at {} (residual {:.3e})", v.condition, v.location, v.residual)?;
        }
        Ok(())
    }
}

fn check_psd(report: &mut ValidationReport, x: &RealMatrix, what: &str, location: &str, tol: &Tolerance) {
    let sym = symmetry_residual(x);
    if sym > tol.eq_floor(max_abs(x)) {
        report.push(format!("{what} must be symmetric"), location, sym);
    } else if !is_psd(x, tol) {
        report.push(format!("{what} must be positive semidefinite"), location, -min_eigenvalue(x));
    }
}

fn check_skew(report: &mut ValidationReport, x: &RealMatrix, what: &str, location: &str, tol: &Tolerance) {
    let res = skew_residual(x);
    if res > tol.eq_floor(max_abs(x)) {
        report.push(format!("{what} must be skew-symmetric"), location, res);
    }
}

fn check_shape(report: &mut ValidationReport, x: &RealMatrix, rows: usize, cols: usize, what: &str, location: &str) -> bool {
    if x.shape() != (rows, cols) {
        report.push(
            format!("{what} must be {rows}x{cols}, got {}x{}", x.nrows(), x.ncols()),
            location,
            f64::NAN,
        );
        return false;
    }
    if x.iter().any(|v| !v.is_finite()) {
        report.push(format!("{what} must be finite"), location, f64::NAN);
        return false;
    }
    true
}

/// Checks `Q, Q_j >= 0`, `R, R_j` skew and `-w Q_j <= i R_j <= w Q_j` for every term.
pub fn validate_foster(f: &FosterForm, tol: &Tolerance) -> ValidationReport {
    let mut report = ValidationReport::default();
    let m = f.q.nrows();
    let shapes_ok = check_shape(&mut report, &f.q, m, m, "Q", "linear term")
        & check_shape(&mut report, &f.r, m, m, "R", "constant term");
    if shapes_ok {
        check_psd(&mut report, &f.q, "Q", "linear term", tol);
        check_skew(&mut report, &f.r, "R", "constant term", tol);
    }
    for (j, t) in f.terms.iter().enumerate() {
        let loc = format!("term {j} (omega = {})", t.omega);
        if !(t.omega.is_finite() && t.omega >= 0.0) {
            report.push("omega must be finite and nonnegative", loc.as_str(), t.omega);
            continue;
        }
        if !(check_shape(&mut report, &t.q, m, m, "Q_j", &loc) & check_shape(&mut report, &t.r, m, m, "R_j", &loc)) {
            continue;
        }
        let before = report.violations.len();
        check_psd(&mut report, &t.q, "Q_j", &loc, tol);
        check_skew(&mut report, &t.r, "R_j", &loc, tol);
        if report.violations.len() > before {
            continue;
        }
        if t.omega == 0.0 {
            let res = max_abs(&t.r);
            if res > tol.eq_floor(max_abs(&t.q)) {
                report.push("R_j must vanish at omega = 0", loc.as_str(), res);
            }
            continue;
        }
        let s = &t.q * t.omega;
        for (sign, label) in [(1.0, "w Q_j - i R_j >= 0"), (-1.0, "w Q_j + i R_j >= 0")] {
            match psd_pair_margin(&s, &(&t.r * sign), tol) {
                Ok(margin) if margin < 0.0 => {
                    report.push(format!("residue pair not dominated: {label}"), loc.as_str(), -margin)
                }
                Ok(_) => {}
                Err(e) => report.push(e.to_string(), loc.as_str(), f64::NAN),
            }
        }
    }
    report
}

/// Checks `M >= 0`, `A^T = -A`, `D^T = -D` and controllability of `(A, B)`.
pub fn validate_realization(r: &StateSpaceRealization, tol: &Tolerance) -> ValidationReport {
    let mut report = ValidationReport::default();
    let m = r.m.nrows();
    let n = r.a.nrows();
    let shapes_ok = check_shape(&mut report, &r.m, m, m, "M", "linear term")
        & check_shape(&mut report, &r.d, m, m, "D", "feedthrough")
        & check_shape(&mut report, &r.a, n, n, "A", "state matrix")
        & check_shape(&mut report, &r.b, n, m, "B", "input matrix");
    if !shapes_ok {
        return report;
    }
    check_psd(&mut report, &r.m, "M", "linear term", tol);
    check_skew(&mut report, &r.d, "D", "feedthrough", tol);
    let skew_a = skew_residual(&r.a);
    if skew_a > tol.eq_floor(max_abs(&r.a)) {
        report.push("A must be skew-symmetric", "state matrix", skew_a);
    } else {
        match hautus_ranks(&r.a, &r.b, tol) {
            Ok(ranks) => {
                if let Some(worst) = ranks.iter().min_by_key(|h| h.rank) {
                    if worst.rank < n {
                        report.push(
                            format!(
                                "(A, B) must be controllable: rank [A - lambda I, B] = {} < {n}",
                                worst.rank
                            ),
                            format!("lambda = {}i", worst.lambda.im),
                            worst.smallest_singular_value,
                        );
                    }
                }
            }
            Err(e) => report.push("(A, B) must be controllable", e.to_string(), f64::NAN),
        }
    }
    report
}

/// Sampling check of the defining conditions of a positive real odd function.
///
/// Verifies at each point of `samples` (all with `Re z > 0`) that the
/// Hermitian part of `F(z)` is PSD, and at each `t` of `axis` that `F(t)` is
/// real and `F(it)` is skew-Hermitian. Points that hit a pole are skipped.
/// Passing is a necessary condition only.
pub fn check_pro_sampling<F: TransferFunction + ?Sized>(
    f: &F,
    samples: &[Complex64],
    axis: &[f64],
    tol: &Tolerance,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    for &z in samples {
        if z.re <= 0.0 {
            report.push("sample must lie in the open right half-plane", format!("z = {z}"), z.re);
            continue;
        }
        let Ok(fz) = f.eval(z, tol) else { continue };
        let herm = (&fz + fz.adjoint()).map(|v| v * 0.5);
        let min = matlin::hermitian_eigenvalues(&herm).first().copied().unwrap_or(0.0);
        if min < -tol.psd_floor(max_abs_complex(&fz)) {
            report.push("Re F(z) must be positive semidefinite", format!("z = {z}"), -min);
        }
    }
    for &t in axis {
        if let Ok(ft) = f.eval(Complex64::new(t, 0.0), tol) {
            let imag = ft.iter().fold(0.0f64, |acc, v| acc.max(v.im.abs()));
            if imag > tol.eq_floor(max_abs_complex(&ft)) {
                report.push("F(t) must be real for real t", format!("t = {t}"), imag);
            }
        }
        if let Ok(fit) = f.eval(Complex64::new(0.0, t), tol) {
            let odd = max_abs_complex(&(&fit + fit.adjoint()));
            if odd > tol.eq_floor(max_abs_complex(&fit)) {
                report.push("F(it) + F(it)^* must vanish", format!("t = {t}"), odd);
            }
        }
    }
    report
}

fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut scale = inv;
    let mut out = 0.0;
    while index > 0 {
        out += (index % base) as f64 * scale;
        index /= base;
        scale *= inv;
    }
    out
}

/// Default sample set: 50 Halton points in `{0 < Re z <= 10, |Im z| <= 10}`
/// and 20 imaginary-axis parameters `t` in `[-10, 10]`. `seed` offsets the
/// sequence.
pub fn default_samples(seed: u64) -> (Vec<Complex64>, Vec<f64>) {
    sample_points(seed, 50, 20)
}

pub fn sample_points(seed: u64, count: usize, axis_count: usize) -> (Vec<Complex64>, Vec<f64>) {
    let offset = 1 + seed.wrapping_mul(1009) % 1_000_003;
    let samples = (0..count as u64)
        .map(|k| {
            let re = 10.0 * (1.0 - radical_inverse(offset + k, 2));
            let im = -10.0 + 20.0 * radical_inverse(offset + k, 3);
            Complex64::new(re.max(1e-3), im)
        })
        .collect();
    let axis = (0..axis_count as u64)
        .map(|k| -10.0 + 20.0 * radical_inverse(offset + k, 5))
        .collect();
    (samples, axis)
}

/// Relative distance `|X - Y| / (1 + |Y|)` in the max-entry norm.
pub fn relative_gap(x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
    max_abs_complex(&(x - y)) / (1.0 + max_abs_complex(y))
}
