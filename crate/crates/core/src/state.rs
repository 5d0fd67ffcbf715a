//! Two-qubit density matrices and the Bell-diagonal family.

use crate::eigen::{eigenvalues_hermitian, HERMITIAN_TOL};
use crate::error::{Error, Result};
use crate::matrix::{kron, pauli, Matrix4};

pub const TRACE_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = 1e-10;
/// Slack on the four eigenvalue expressions of a Bell-diagonal state.
pub const PHYSICALITY_TOL: f64 = 1e-12;
/// Max-norm distance under which a matrix is recognised as Bell-diagonal.
pub const BELL_RECOGNITION_TOL: f64 = 1e-9;

/// A validated two-qubit density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitDensity(Matrix4);

impl TwoQubitDensity {
    /// Validates `mat` against the density-matrix invariants.
    pub fn new(mat: Matrix4) -> Result<Self> {
        let rho = Self(mat);
        rho.validate()?;
        Ok(rho)
    }

    /// Wraps a matrix known to be a density matrix by construction
    /// (Bell-diagonal builder, closed forms, CPTP images of valid states).
    pub(crate) fn from_trusted(mat: Matrix4) -> Self {
        Self(mat)
    }

    pub fn validate(&self) -> Result<()> {
        let m = &self.0;
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let deviation = m.hermiticity_defect();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = m.trace();
        if (trace - 1.0).norm() > TRACE_TOL {
            return Err(Error::NotUnitTrace { trace: trace.re });
        }
        let min_eigenvalue = eigenvalues_hermitian(m)?[0];
        if min_eigenvalue < -PSD_TOL {
            return Err(Error::PhysicalityViolation { min_eigenvalue });
        }
        Ok(())
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix4 {
        self.0
    }

    pub fn maximally_mixed() -> Self {
        Self(Matrix4::identity().scale_real(0.25))
    }

    pub fn diagonal(&self) -> [f64; 4] {
        [0, 1, 2, 3].map(|i| self.0 .0[i][i].re)
    }

    pub fn eigenvalues(&self) -> Result<[f64; 4]> {
        eigenvalues_hermitian(&self.0)
    }
}

/// Correlation triple `(c1, c2, c3)` of `¼(I⊗I + Σ cᵢ σᵢ⊗σᵢ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellCoeffs {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl BellCoeffs {
    /// Builds a physical triple; every eigenvalue expression must be ≥ −1e-12.
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        for (name, value) in [("c1", c1), ("c2", c2), ("c3", c3)] {
            if !value.is_finite() || value.abs() > 1.0 + PHYSICALITY_TOL {
                return Err(Error::CoefficientOutOfRange { name, value });
            }
        }
        let c = Self { c1, c2, c3 };
        let min_eigenvalue = c.spectrum().into_iter().fold(f64::INFINITY, f64::min);
        if min_eigenvalue < -PHYSICALITY_TOL {
            return Err(Error::PhysicalityViolation { min_eigenvalue });
        }
        Ok(c)
    }

    /// The triple without any checks; used when the caller has its own guard.
    pub const fn new_unchecked(c1: f64, c2: f64, c3: f64) -> Self {
        Self { c1, c2, c3 }
    }

    pub const fn zero() -> Self {
        Self::new_unchecked(0.0, 0.0, 0.0)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    /// Eigenvalues of the associated density matrix, unsorted:
    /// `(1−c1−c2−c3)/4, (1−c1+c2+c3)/4, (1+c1−c2+c3)/4, (1+c1+c2−c3)/4`.
    pub fn spectrum(&self) -> [f64; 4] {
        let Self { c1, c2, c3 } = *self;
        [
            (1.0 - c1 - c2 - c3) / 4.0,
            (1.0 - c1 + c2 + c3) / 4.0,
            (1.0 + c1 - c2 + c3) / 4.0,
            (1.0 + c1 + c2 - c3) / 4.0,
        ]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.c1 - other.c1)
            .abs()
            .max((self.c2 - other.c2).abs())
            .max((self.c3 - other.c3).abs())
    }
}

/// Builds `¼(I⊗I + Σ cᵢ σᵢ⊗σᵢ)` directly from its entries.
pub fn bell_to_density(c: &BellCoeffs) -> TwoQubitDensity {
    let BellCoeffs { c1, c2, c3 } = *c;
    let d_outer = (1.0 + c3) / 4.0;
    let d_inner = (1.0 - c3) / 4.0;
    let corner = (c1 - c2) / 4.0;
    let inner = (c1 + c2) / 4.0;
    TwoQubitDensity::from_trusted(Matrix4::from_real([
        [d_outer, 0.0, 0.0, corner],
        [0.0, d_inner, inner, 0.0],
        [0.0, inner, d_inner, 0.0],
        [corner, 0.0, 0.0, d_outer],
    ]))
}

/// Extracts `cᵢ = Tr(ρ σᵢ⊗σᵢ)` and checks that `ρ` is reproduced by them.
pub fn density_to_bell(rho: &TwoQubitDensity) -> Result<BellCoeffs> {
    let m = rho.matrix();
    let [c1, c2, c3] = pauli::all().map(|s| (m * &kron(&s, &s)).trace().re);
    let c = BellCoeffs::new_unchecked(c1, c2, c3);
    let deviation = m.max_abs_diff(bell_to_density(&c).matrix());
    if deviation > BELL_RECOGNITION_TOL {
        return Err(Error::NotBellDiagonal { deviation });
    }
    Ok(c)
}

/// Removes every off-diagonal entry.
pub fn dephase(rho: &TwoQubitDensity) -> TwoQubitDensity {
    TwoQubitDensity::from_trusted(Matrix4::diagonal(rho.diagonal()))
}

/// `x·log₂x` with `0·log 0 = 0`. Round-off negatives are treated as zero.
pub(crate) fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Shannon entropy in bits of a probability vector.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    -probs.iter().map(|&p| xlog2x(p)).sum::<f64>()
}

/// von Neumann entropy `−Tr ρ log₂ ρ` in bits.
pub fn von_neumann_entropy(rho: &TwoQubitDensity) -> Result<f64> {
    let ev = rho.eigenvalues()?;
    Ok(shannon_entropy(&ev).max(0.0))
}
