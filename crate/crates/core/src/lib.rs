//! Decoherence of two-qubit Bell-diagonal states under local Markovian
//! channels, and the l₁-norm and relative-entropy coherence along the way.
//!
//! * [`matrix`], [`eigen`], [`state`]: 2×2 / 4×4 complex algebra, the
//!   Hermitian eigenvalue solver, density matrices and the Bell-diagonal family.
//! * [`channels`]: Kraus sets and brute-force application engines.
//! * [`closedform`]: tabulated coefficient maps and amplitude-damping states.
//! * [`coherence`]: the two coherence measures and frozen-curve detection.

pub mod channels;
pub mod closedform;
pub mod coherence;
pub mod eigen;
pub mod error;
pub mod matrix;
pub mod state;

pub use channels::{
    apply_both, apply_both_n, apply_n, apply_one_side, completeness_defect, kraus_set, ChannelKind,
    ChannelParams, KrausSet, Side,
};
pub use closedform::{
    adc_state, adc_state_biside_n, adc_state_n, map_coeffs, MapFamily, RateParams,
};
pub use coherence::{
    c_l1, c_l1_bell, c_rel, c_rel_bell, frozen_scan, CoherenceMeasure, FrozenReport,
};
pub use eigen::eigenvalues_hermitian;
pub use error::{Error, Result};
pub use matrix::{kron, pauli, Matrix2, Matrix4, C64};
pub use state::{
    bell_to_density, density_to_bell, dephase, von_neumann_entropy, BellCoeffs, TwoQubitDensity,
};

/// The correlation triple used throughout the published figures.
pub const EXAMPLE_STATE: BellCoeffs = BellCoeffs::new_unchecked(0.3, -0.4, 0.56);
