//! Inversion of positive real odd functions given by a state-space realization
//! `F(z) = zM + D + B^T (zI - A)^{-1} B`.
//!
//! All constructions work in the basis `V = [V1 V2 V3]` of the input space
//! split `R^m = X1 + X2 + X3`, with `X1 = (Ker M)^perp`, `X3` the kernel of
//! `D` compressed to `Ker M`, and `X2` the rest of `Ker M`. Outputs are mapped
//! back to the original coordinates before they are returned.

use alloc::format;
use alloc::vec::Vec;

use crate::matlin::{
    self, assemble, eye, inverse, max_abs, psd_sqrt, right_svd, skew_part, spectral_map, full_svd,
    symmetric_part, zeros, RealMatrix, Tolerance,
};
use crate::pro::{DescriptorRealization, StateSpaceRealization};
use crate::realize::weierstrass_from_parts;
use crate::{Error, Result};

/// Kept and discarded singular values must be at least this far apart.
pub const GAP_RATIO: f64 = 10.0;

/// Splitting of the input space and the blocks of `B`, `D`, `M` in that basis.
#[derive(Clone, Debug)]
pub struct InputSpaceDecomposition {
    pub m1: usize,
    pub m2: usize,
    pub m3: usize,
    /// Orthogonal `m x m`; column blocks span `X1`, `X2`, `X3`.
    pub v: RealMatrix,
    pub b1: RealMatrix,
    pub b2: RealMatrix,
    pub b3: RealMatrix,
    pub d11: RealMatrix,
    pub d12: RealMatrix,
    pub d13: RealMatrix,
    pub d22: RealMatrix,
    /// `V1^T M V1`, positive definite.
    pub m11: RealMatrix,
    /// `K1^T K1 = M1`; the symmetric square root.
    pub k1: RealMatrix,
    /// Orthogonal map on `X3`; the identity in the chosen basis.
    pub xi: RealMatrix,
}

impl InputSpaceDecomposition {
    pub fn m(&self) -> usize {
        self.m1 + self.m2 + self.m3
    }
}

/// Number of values above `thr` in a decreasing list, refusing splits without
/// a clear gap.
fn gapped_rank(desc: &[f64], thr: f64, context: &'static str) -> Result<usize> {
    let rank = desc.iter().take_while(|&&s| s > thr).count();
    if rank > 0 && rank < desc.len() {
        let kept = desc[rank - 1];
        let discarded = desc[rank].abs();
        if kept < GAP_RATIO * discarded {
            return Err(Error::Degenerate { context, kept, discarded });
        }
    }
    Ok(rank)
}

fn check_structure(r: &StateSpaceRealization, tol: &Tolerance) -> Result<(RealMatrix, RealMatrix, RealMatrix)> {
    r.check_shapes()?;
    let m = matlin::require_symmetric(&r.m, "M", tol)?;
    let d = matlin::require_skew(&r.d, "D", tol)?;
    let a = matlin::require_skew(&r.a, "A", tol)?;
    Ok((m, d, a))
}

/// Eigenvectors of `M` split into `(Ker M)^perp` and `Ker M`, plus the kept eigenvalues.
fn split_m(m: &RealMatrix, tol: &Tolerance, guarded: bool) -> Result<(RealMatrix, RealMatrix)> {
    let n = m.nrows();
    let eig = matlin::sym_eig_unchecked(m.clone());
    let desc: Vec<f64> = eig.values.iter().rev().copied().collect();
    let max = desc.first().copied().unwrap_or(0.0).max(0.0);
    let thr = tol.rank_threshold(max, n, n).max(tol.psd_floor(max_abs(m)));
    let rank = if guarded {
        gapped_rank(&desc, thr, "rank of M")?
    } else {
        desc.iter().take_while(|&&s| s > thr).count()
    };
    let order: Vec<usize> = (0..n).rev().collect();
    let cols = |range: core::ops::Range<usize>| {
        RealMatrix::from_fn(n, range.len(), |i, j| eig.vectors[(i, order[range.start + j])])
    };
    Ok((cols(0..rank), cols(rank..n)))
}

pub fn decompose_input_space(
    m: &RealMatrix,
    d: &RealMatrix,
    b: &RealMatrix,
    tol: &Tolerance,
) -> Result<InputSpaceDecomposition> {
    let size = matlin::require_square(m, "M")?;
    matlin::require_shape(d, size, size, "D")?;
    if b.ncols() != size {
        return Err(Error::Shape(format!("B must have {size} columns, got {}", b.ncols())));
    }
    let m = matlin::require_symmetric(m, "M", tol)?;
    if !matlin::is_psd(&m, tol) {
        return Err(Error::Domain("M must be positive semidefinite".into()));
    }
    let d = matlin::require_skew(d, "D", tol)?;

    let (v1, ker) = split_m(&m, tol, true)?;
    let dk = ker.transpose() * &d * &ker;
    let (sigma, w) = right_svd(&dk);
    let max = sigma.first().copied().unwrap_or(0.0);
    let thr = tol
        .rank_threshold(max, dk.nrows(), dk.ncols())
        .max(tol.eq_floor(max_abs(&d)));
    let m2 = gapped_rank(&sigma, thr, "rank of D on Ker M")?;
    if m2 % 2 == 1 {
        return Err(Error::Degenerate {
            context: "odd rank of skew-symmetric D on Ker M",
            kept: sigma[m2 - 1],
            discarded: sigma.get(m2).copied().unwrap_or(0.0),
        });
    }
    let mk = ker.ncols();
    let v2 = &ker * w.columns(0, m2);
    let v3 = &ker * w.columns(m2, mk - m2);
    let (m1, m3) = (v1.ncols(), v3.ncols());
    let v = assemble(&[&[&v1, &v2, &v3]]);

    let bv = b * &v;
    let dv = skew_part(&(v.transpose() * &d * &v));
    let m11 = symmetric_part(&(v1.transpose() * &m * &v1));
    let k1 = psd_sqrt(&m11);
    Ok(InputSpaceDecomposition {
        m1,
        m2,
        m3,
        b1: bv.columns(0, m1).into_owned(),
        b2: bv.columns(m1, m2).into_owned(),
        b3: bv.columns(m1 + m2, m3).into_owned(),
        d11: dv.view((0, 0), (m1, m1)).into_owned(),
        d12: dv.view((0, m1), (m1, m2)).into_owned(),
        d13: dv.view((0, m1 + m2), (m1, m3)).into_owned(),
        d22: dv.view((m1, m1), (m2, m2)).into_owned(),
        m11,
        k1,
        xi: eye(m3),
        v,
    })
}

/// Columns of `Ker M` (orthonormal) on which `[B; D]` is evaluated.
fn stacked_on_kernel(r: &StateSpaceRealization, tol: &Tolerance) -> Result<(RealMatrix, RealMatrix)> {
    let (m, d, _) = check_structure(r, tol)?;
    let (_, ker) = split_m(&m, tol, false)?;
    let stacked = assemble(&[&[&r.b], &[&d]]) * &ker;
    Ok((ker, stacked))
}

fn injectivity_threshold(x: &RealMatrix, scale: f64, sigma_max: f64, tol: &Tolerance) -> f64 {
    tol.rank_threshold(sigma_max, x.nrows(), x.ncols()).max(tol.eq_floor(scale))
}

/// A unit vector `v` with `M v = 0`, `B v = 0` and `D v = 0` when `det F` vanishes
/// identically, `None` when `F` is invertible.
pub fn invertibility_witness(r: &StateSpaceRealization, tol: &Tolerance) -> Result<Option<Vec<f64>>> {
    let (ker, stacked) = stacked_on_kernel(r, tol)?;
    let k = ker.ncols();
    if k == 0 {
        return Ok(None);
    }
    let (sigma, w) = right_svd(&stacked);
    let scale = max_abs(&r.b).max(max_abs(&r.d));
    let thr = injectivity_threshold(&stacked, scale, sigma[0], tol);
    if sigma[k - 1] > thr {
        return Ok(None);
    }
    let null = &ker * w.column(k - 1);
    Ok(Some(null.iter().copied().collect()))
}

/// `det F(z)` is not identically zero iff `[B; D]` restricted to `Ker M` is injective.
pub fn invertibility(r: &StateSpaceRealization, tol: &Tolerance) -> bool {
    matches!(invertibility_witness(r, tol), Ok(None))
}

fn require_invertible(r: &StateSpaceRealization, tol: &Tolerance) -> Result<()> {
    match invertibility_witness(r, tol)? {
        None => Ok(()),
        Some(witness) => Err(Error::NotInvertible { witness }),
    }
}

/// Regularity of `z Ehat - Ahat` for PSD `Ehat` and skew `Ahat`: `Ahat` must
/// be injective on `Ker Ehat`.
pub fn regular_pair_check(ehat: &RealMatrix, ahat: &RealMatrix, tol: &Tolerance) -> bool {
    let n = ehat.nrows();
    if ehat.ncols() != n || ahat.shape() != (n, n) {
        return false;
    }
    let (_, ker) = match split_m(&symmetric_part(ehat), tol, false) {
        Ok(parts) => parts,
        Err(_) => return false,
    };
    let k = ker.ncols();
    if k == 0 {
        return true;
    }
    let restricted = ahat * &ker;
    let sigma = matlin::singular_values(&restricted);
    let thr = injectivity_threshold(&restricted, max_abs(ahat), sigma.first().copied().unwrap_or(0.0), tol);
    sigma.len() >= k && sigma[k - 1] > thr
}

/// `F^{-1}(z) = [0 I] (z diag(I_n, M) - [[A, B], [-B^T, -D]])^{-1} [0; I]`,
/// of size `n + m` and not minimal in general.
pub fn inverse_descriptor_raw(r: &StateSpaceRealization, tol: &Tolerance) -> Result<DescriptorRealization> {
    let (m, d, a) = check_structure(r, tol)?;
    require_invertible(r, tol)?;
    let (n, p) = (r.states(), r.ports());
    let e = matlin::block_diag(&[eye(n), m]);
    let bt = -r.b.transpose();
    let md = -d;
    let a_raw = assemble(&[&[&a, &r.b], &[&bt, &md]]);
    let io = assemble(&[&[&zeros(n, p)], &[&eye(p)]]);
    Ok(DescriptorRealization::new(e, a_raw, io.clone(), io, zeros(p, p)))
}

/// The minimal non-Weierstrass inverse realization and the intermediate
/// matrices `Atilde`, `Btilde` it is built from.
///
/// `Atilde` and `Btilde` are expressed in the decomposition basis; `ehat`,
/// `ahat`, `bhat` and `dhat` act on the original input coordinates.
#[derive(Clone, Debug)]
pub struct IntermediateInverse {
    pub a_tilde: RealMatrix,
    pub b_tilde: RealMatrix,
    pub ehat: RealMatrix,
    pub ahat: RealMatrix,
    pub bhat: RealMatrix,
    pub dhat: RealMatrix,
}

impl IntermediateInverse {
    /// `Dhat + Bhat^T (z Ehat - Ahat)^{-1} Bhat`.
    pub fn descriptor(&self) -> DescriptorRealization {
        DescriptorRealization::new(
            self.ehat.clone(),
            self.ahat.clone(),
            self.bhat.clone(),
            self.bhat.clone(),
            self.dhat.clone(),
        )
    }
}

/// Shared pieces: `Atilde`, `Btilde` and the inverses they use.
struct Reduced {
    a_tilde: RealMatrix,
    b_tilde: RealMatrix,
    k1_inv: RealMatrix,
    m11_inv: RealMatrix,
    d22_inv: RealMatrix,
}

fn check_decomposition(r: &StateSpaceRealization, dec: &InputSpaceDecomposition) -> Result<()> {
    if dec.m() != r.ports() || dec.b1.nrows() != r.states() {
        return Err(Error::Shape(format!(
            "decomposition is for {} ports and {} states, realization has {} and {}",
            dec.m(),
            dec.b1.nrows(),
            r.ports(),
            r.states()
        )));
    }
    Ok(())
}

fn reduce(r: &StateSpaceRealization, dec: &InputSpaceDecomposition, tol: &Tolerance) -> Result<Reduced> {
    let (_, _, a) = check_structure(r, tol)?;
    check_decomposition(r, dec)?;
    require_invertible(r, tol)?;
    let k1_inv = inverse(&dec.k1, "K1")?;
    let k1_inv_t = k1_inv.transpose();
    let m11_inv = inverse(&dec.m11, "M1")?;
    let d22_inv = inverse(&dec.d22, "D22")?;

    let a11 = &a - &dec.b2 * &d22_inv * dec.b2.transpose();
    let a12 = (&dec.b1 + &dec.b2 * &d22_inv * dec.d12.transpose()) * &k1_inv;
    let a21 = &k1_inv_t * (-dec.b1.transpose() + &dec.d12 * &d22_inv * dec.b2.transpose());
    let a22 = -(&k1_inv_t * (&dec.d11 + &dec.d12 * &d22_inv * dec.d12.transpose()) * &k1_inv);
    let a_tilde = skew_part(&assemble(&[&[&a11, &a12], &[&a21, &a22]]));
    let xi_t = dec.xi.transpose();
    let b_tilde = assemble(&[&[&(&dec.b3 * &xi_t)], &[&(-(&k1_inv_t * &dec.d13 * &xi_t))]]);
    Ok(Reduced { a_tilde, b_tilde, k1_inv, m11_inv, d22_inv })
}

/// The minimal descriptor realization of `F^{-1}` of size `n + m1 + m3` with
/// `Ehat = diag(I_{n+m1}, 0)` and `Ahat = [[Atilde, Btilde], [-Btilde^T, 0]]`.
pub fn inverse_descriptor_minimal(
    r: &StateSpaceRealization,
    dec: &InputSpaceDecomposition,
    tol: &Tolerance,
) -> Result<IntermediateInverse> {
    let red = reduce(r, dec, tol)?;
    let (n, m1, m2, m3) = (r.states(), dec.m1, dec.m2, dec.m3);
    let nk = n + m1;
    let ehat = matlin::block_diag(&[eye(nk), zeros(m3, m3)]);
    let bt = -red.b_tilde.transpose();
    let ahat = assemble(&[&[&red.a_tilde, &red.b_tilde], &[&bt, &zeros(m3, m3)]]);

    let k1_inv_t = red.k1_inv.transpose();
    let bhat_x = assemble(&[
        &[&zeros(n, m1), &(&dec.b2 * &red.d22_inv), &zeros(n, m3)],
        &[&k1_inv_t, &(-(&k1_inv_t * &dec.d12 * &red.d22_inv)), &zeros(m1, m3)],
        &[&zeros(m3, m1), &zeros(m3, m2), &dec.xi],
    ]);
    let dhat_x = matlin::block_diag(&[zeros(m1, m1), red.d22_inv.clone(), zeros(m3, m3)]);
    Ok(IntermediateInverse {
        a_tilde: red.a_tilde,
        b_tilde: red.b_tilde,
        ehat,
        ahat,
        bhat: bhat_x * dec.v.transpose(),
        dhat: skew_part(&(&dec.v * dhat_x * dec.v.transpose())),
    })
}

/// `(A_inv, B_inv, K_inv, D_inv)` in original input coordinates:
/// `F^{-1}(z) = z K_inv^T K_inv + D_inv + B_inv^T (zI - A_inv)^{-1} B_inv`.
struct InverseParts {
    a: RealMatrix,
    b: RealMatrix,
    k: RealMatrix,
    d: RealMatrix,
}

fn inverse_parts(r: &StateSpaceRealization, dec: &InputSpaceDecomposition, tol: &Tolerance) -> Result<InverseParts> {
    let red = reduce(r, dec, tol)?;
    let (n, m1, m2, m3) = (r.states(), dec.m1, dec.m2, dec.m3);
    let nk = n + m1;
    let xi = &dec.xi;
    let xi_t = xi.transpose();

    // Gamma spans the orthogonal complement of Im Btilde.
    let gamma = if m3 == 0 {
        eye(nk)
    } else {
        let (u, sigma, _) = full_svd(&red.b_tilde);
        let thr = tol.rank_threshold(sigma[0], nk, m3);
        let rank = gapped_rank(&sigma, thr, "range of Btilde")?;
        if rank < m3 {
            return Err(Error::NotInvertible { witness: Vec::new() });
        }
        u.view((0, m3), (nk, nk - m3)).into_owned()
    };

    let a_inv = skew_part(&(gamma.transpose() * &red.a_tilde * &gamma));
    let phi33 = symmetric_part(&(dec.b3.transpose() * &dec.b3 + dec.d13.transpose() * &red.m11_inv * &dec.d13));
    let phi23 = dec.b2.transpose() * &dec.b3 + dec.d12.transpose() * &red.m11_inv * &dec.d13;
    let phi33_inv = inverse(&phi33, "Phi33")?;
    let phi33_inv_sqrt = spectral_map(&phi33, |v| 1.0 / v.sqrt());

    // Atilde Btilde Xi equals the third block column of B_inv before scaling.
    let ab = &red.a_tilde * &red.b_tilde * xi;
    let k1_inv_t = red.k1_inv.transpose();
    let b_pre = assemble(&[
        &[&zeros(n, m1), &(&dec.b2 * &red.d22_inv), &(ab.rows(0, n) * &phi33_inv)],
        &[&k1_inv_t, &(-(&k1_inv_t * &dec.d12 * &red.d22_inv)), &(ab.rows(n, m1) * &phi33_inv)],
    ]);
    let b_inv = gamma.transpose() * b_pre;
    let k_inv = assemble(&[&[&zeros(m3, m1), &zeros(m3, m2), &(-(xi * &phi33_inv_sqrt))]]);

    let correction = xi_t.clone() * red.b_tilde.transpose() * &red.a_tilde * &red.b_tilde * xi;
    let d13_blk = -(&red.m11_inv * &dec.d13 * &phi33_inv);
    let d23_blk = -(&red.d22_inv * &phi23 * &phi33_inv);
    let d31_blk = &phi33_inv * dec.d13.transpose() * &red.m11_inv;
    let d32_blk = -(&phi33_inv * phi23.transpose() * &red.d22_inv);
    let d33_blk = -(&phi33_inv * correction * &phi33_inv);
    let d_inv = assemble(&[
        &[&zeros(m1, m1), &zeros(m1, m2), &d13_blk],
        &[&zeros(m2, m1), &red.d22_inv, &d23_blk],
        &[&d31_blk, &d32_blk, &d33_blk],
    ]);

    let v_t = dec.v.transpose();
    Ok(InverseParts {
        a: a_inv,
        b: b_inv * &v_t,
        k: k_inv * &v_t,
        d: skew_part(&(&dec.v * d_inv * v_t)),
    })
}

/// Minimal Weierstrass descriptor realization of `F^{-1}` of size `n + m1 + m3`.
pub fn inverse_weierstrass(
    r: &StateSpaceRealization,
    dec: &InputSpaceDecomposition,
    tol: &Tolerance,
) -> Result<DescriptorRealization> {
    let parts = inverse_parts(r, dec, tol)?;
    Ok(weierstrass_from_parts(&parts.a, &parts.b, &parts.k, &parts.d))
}

/// Minimal state-space realization of `F^{-1}` with `n + m1 - m3` states and
/// `M_inv = K_inv^T K_inv`.
pub fn inverse_state_space(r: &StateSpaceRealization, tol: &Tolerance) -> Result<StateSpaceRealization> {
    check_structure(r, tol)?;
    require_invertible(r, tol)?;
    let dec = decompose_input_space(&r.m, &r.d, &r.b, tol)?;
    let parts = inverse_parts(r, &dec, tol)?;
    Ok(StateSpaceRealization::new(
        symmetric_part(&(parts.k.transpose() * &parts.k)),
        parts.d,
        parts.a,
        parts.b,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matlin::{skew_block, to_complex};
    use crate::pro::{eval_descriptor, eval_state_space, relative_gap, sample_points};
    use crate::realize::descriptor_minimality;
    use alloc::vec;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn scalar(x: f64) -> RealMatrix {
        RealMatrix::from_element(1, 1, x)
    }

    fn diag(v: &[f64]) -> RealMatrix {
        RealMatrix::from_diagonal(&nalgebra::DVector::from_vec(v.to_vec()))
    }

    fn resonance() -> StateSpaceRealization {
        // z / (z^2 + 1)
        StateSpaceRealization::new(scalar(0.0), scalar(0.0), skew_block(1.0, 1), RealMatrix::from_column_slice(2, 1, &[1.0, 0.0]))
    }

    fn eval_at(d: &DescriptorRealization, z: f64) -> f64 {
        eval_descriptor(d, Complex64::new(z, 0.0), &tol()).unwrap()[(0, 0)].re
    }

    #[test]
    fn decomposition_of_definite_m() {
        let dec = decompose_input_space(&diag(&[2.0, 1.0]), &zeros(2, 2), &zeros(0, 2), &tol()).unwrap();
        assert_eq!((dec.m1, dec.m2, dec.m3), (2, 0, 0));
    }

    #[test]
    fn decomposition_with_invertible_d() {
        let d = skew_block(3.0, 1);
        let dec = decompose_input_space(&zeros(2, 2), &d, &zeros(0, 2), &tol()).unwrap();
        assert_eq!((dec.m1, dec.m2, dec.m3), (0, 2, 0));
    }

    #[test]
    fn decomposition_mixed() {
        let dec = decompose_input_space(&diag(&[1.0, 0.0, 0.0]), &zeros(3, 3), &zeros(0, 3), &tol()).unwrap();
        assert_eq!((dec.m1, dec.m2, dec.m3), (1, 0, 2));
        assert_abs_diff_eq!(dec.v.column(0).abs(), nalgebra::DVector::from_vec(vec![1.0, 0.0, 0.0]), epsilon = 1e-14);
        assert_abs_diff_eq!(dec.m11, scalar(1.0), epsilon = 1e-14);
    }

    #[test]
    fn decomposition_rejects_ambiguous_rank() {
        let err = decompose_input_space(&diag(&[1.0, 3e-9, 1e-9]), &zeros(3, 3), &zeros(0, 3), &tol()).unwrap_err();
        assert!(matches!(err, Error::Degenerate { .. }));
    }

    #[test]
    fn invertibility_cases() {
        let def = StateSpaceRealization::new(eye(2), zeros(2, 2), zeros(0, 0), zeros(0, 2));
        assert!(invertibility(&def, &tol()));
        let zero = StateSpaceRealization::new(zeros(1, 1), zeros(1, 1), zeros(0, 0), zeros(0, 1));
        assert!(!invertibility(&zero, &tol()));
        let w = invertibility_witness(&zero, &tol()).unwrap().unwrap();
        assert_abs_diff_eq!(w[0].abs(), 1.0, epsilon = 1e-14);
        assert!(invertibility(&resonance(), &tol()));
    }

    #[test]
    fn regular_pairs() {
        let a = skew_block(1.0, 2);
        assert!(regular_pair_check(&eye(4), &a, &tol()));
        assert!(!regular_pair_check(&zeros(3, 3), &zeros(3, 3), &tol()));
        assert!(regular_pair_check(&diag(&[1.0, 1.0, 0.0, 0.0]), &a, &tol()));
        assert!(!regular_pair_check(&diag(&[1.0, 1.0, 1.0, 0.0]), &zeros(4, 4), &tol()));
    }

    #[test]
    fn raw_inverse_of_differentiator() {
        let r = StateSpaceRealization::new(scalar(1.0), scalar(0.0), zeros(0, 0), zeros(0, 1));
        assert_abs_diff_eq!(eval_at(&inverse_descriptor_raw(&r, &tol()).unwrap(), 2.0), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn raw_inverse_of_resonance() {
        assert_abs_diff_eq!(eval_at(&inverse_descriptor_raw(&resonance(), &tol()).unwrap(), 2.0), 2.5, epsilon = 1e-13);
    }

    #[test]
    fn raw_inverse_rejects_zero_function() {
        let zero = StateSpaceRealization::new(zeros(1, 1), zeros(1, 1), zeros(0, 0), zeros(0, 1));
        assert!(matches!(inverse_descriptor_raw(&zero, &tol()), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn resonance_inverse_forms() {
        let r = resonance();
        let dec = decompose_input_space(&r.m, &r.d, &r.b, &tol()).unwrap();
        assert_eq!((dec.m1, dec.m2, dec.m3), (0, 0, 1));
        let w = inverse_weierstrass(&r, &dec, &tol()).unwrap();
        assert_eq!(w.states(), 3);
        assert_abs_diff_eq!(eval_at(&w, 2.0), 2.5, epsilon = 1e-13);
        assert!(descriptor_minimality(&w, &tol()).unwrap().minimal);

        let s = inverse_state_space(&r, &tol()).unwrap();
        assert_eq!(s.states(), 1);
        assert_abs_diff_eq!(s.m, scalar(1.0), epsilon = 1e-14);
        assert_abs_diff_eq!(s.a, scalar(0.0), epsilon = 1e-14);
        assert_abs_diff_eq!(s.b[(0, 0)].abs(), 1.0, epsilon = 1e-14);

        let mid = inverse_descriptor_minimal(&r, &dec, &tol()).unwrap();
        assert_abs_diff_eq!(eval_at(&mid.descriptor(), 2.0), 2.5, epsilon = 1e-13);
        assert!(descriptor_minimality(&mid.descriptor(), &tol()).unwrap().minimal);
    }

    #[test]
    fn differentiator_block_inverse() {
        let r = StateSpaceRealization::new(eye(2), zeros(2, 2), zeros(0, 0), zeros(0, 2));
        let s = inverse_state_space(&r, &tol()).unwrap();
        assert_eq!(s.states(), 2);
        assert_abs_diff_eq!(s.m, zeros(2, 2), epsilon = 1e-14);
        assert_abs_diff_eq!(s.a, zeros(2, 2), epsilon = 1e-14);
        let v = eval_state_space(&s, Complex64::new(4.0, 0.0), &tol()).unwrap();
        assert!(relative_gap(&v, &to_complex(&(eye(2) * 0.25))) < 1e-14);

        let dec = decompose_input_space(&r.m, &r.d, &r.b, &tol()).unwrap();
        let mid = inverse_descriptor_minimal(&r, &dec, &tol()).unwrap();
        assert_abs_diff_eq!(mid.a_tilde, zeros(2, 2), epsilon = 1e-14);
    }

    #[test]
    fn proper_inverse_with_invertible_d() {
        let a = skew_block(2.0, 1);
        let b = RealMatrix::from_row_slice(2, 2, &[1.0, 0.2, -0.3, 0.5]);
        let d = skew_block(1.5, 1);
        let r = StateSpaceRealization::new(zeros(2, 2), d.clone(), a.clone(), b.clone());
        let s = inverse_state_space(&r, &tol()).unwrap();
        let d_inv = inverse(&d, "D").unwrap();
        assert_abs_diff_eq!(s.a, &a - &b * &d_inv * b.transpose(), epsilon = 1e-13);
        assert_abs_diff_eq!(s.d, d_inv, epsilon = 1e-13);
        let (pts, _) = sample_points(5, 10, 0);
        for z in pts {
            let f = eval_state_space(&r, z, &tol()).unwrap();
            let g = eval_state_space(&s, z, &tol()).unwrap();
            assert!(relative_gap(&(f * g), &to_complex(&eye(2))) < 1e-12);
        }
    }
}
