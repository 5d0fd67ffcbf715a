//! Cyclic Jacobi eigenvalue solver for 4×4 complex Hermitian matrices.

use crate::error::{Error, Result};
use crate::matrix::{Matrix4, C64};

/// Hermiticity tolerance accepted on input.
pub const HERMITIAN_TOL: f64 = 1e-10;

const OFF_DIAGONAL_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 50;

fn off_diagonal_norm(m: &Matrix4) -> f64 {
    let mut sum = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                sum += m.0[i][j].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// The input is symmetrised as `(m + m†)/2` before iterating, so entries that
/// are Hermitian only up to [`HERMITIAN_TOL`] are accepted.
pub fn eigenvalues_hermitian(m: &Matrix4) -> Result<[f64; 4]> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let deviation = m.hermiticity_defect();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }

    let mut a = (*m + m.adjoint()).scale_real(0.5);
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < OFF_DIAGONAL_TOL {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                rotate(&mut a, p, q);
            }
        }
    }

    let mut values = [0.0; 4];
    for (i, v) in values.iter_mut().enumerate() {
        *v = a.0[i][i].re;
    }
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// One Jacobi rotation zeroing `a[p][q]` (and `a[q][p]`).
///
/// With `a[p][q] = g·e^{iφ}` the unitary acting on the (p, q) plane is
/// `[[c, s], [-s·e^{-iφ}, c·e^{-iφ}]]`; it removes the phase and then applies
/// the real symmetric rotation.
fn rotate(a: &mut Matrix4, p: usize, q: usize) {
    let apq = a.0[p][q];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = apq / g;
    let app = a.0[p][p].re;
    let aqq = a.0[q][q].re;

    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Columns p and q of the rotation J; every other column is a unit vector.
    let jpp = C64::new(c, 0.0);
    let jqp = -phase.conj() * s;
    let jpq = C64::new(s, 0.0);
    let jqq = phase.conj() * c;

    // a ← a·J (columns p, q)
    for k in 0..4 {
        let akp = a.0[k][p];
        let akq = a.0[k][q];
        a.0[k][p] = akp * jpp + akq * jqp;
        a.0[k][q] = akp * jpq + akq * jqq;
    }
    // a ← J†·a (rows p, q)
    for k in 0..4 {
        let apk = a.0[p][k];
        let aqk = a.0[q][k];
        a.0[p][k] = jpp.conj() * apk + jqp.conj() * aqk;
        a.0[q][k] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a.0[p][q] = C64::new(0.0, 0.0);
    a.0[q][p] = C64::new(0.0, 0.0);
    a.0[p][p].im = 0.0;
    a.0[q][q].im = 0.0;
}
