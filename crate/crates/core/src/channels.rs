//! Kraus operator sets for the single-qubit channels and the brute-force
//! engines that apply them to two-qubit states.
//!
//! These engines are the ground truth against which every closed form in
//! [`crate::closedform`] is checked.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_unit_interval, Error, Result};
use crate::matrix::{kron, pauli, Matrix2, Matrix4, C64};
use crate::state::TwoQubitDensity;

/// Largest `n` accepted by [`apply_n`] and [`apply_both_n`].
pub const ITERATION_CAP: u64 = 10_000;

/// Completeness tolerance for [`KrausSet::new`].
pub const COMPLETENESS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChannelKind {
    BitFlip,
    PhaseFlip,
    BitPhaseFlip,
    Depolarizing,
    GeneralizedAmplitudeDamping,
    AmplitudeDamping,
    Identity,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 7] = [
        ChannelKind::BitFlip,
        ChannelKind::PhaseFlip,
        ChannelKind::BitPhaseFlip,
        ChannelKind::Depolarizing,
        ChannelKind::GeneralizedAmplitudeDamping,
        ChannelKind::AmplitudeDamping,
        ChannelKind::Identity,
    ];

    /// Lower-case short name used on the command line (`bf`, `pf`, ...).
    pub fn short_name(self) -> &'static str {
        match self {
            ChannelKind::BitFlip => "bf",
            ChannelKind::PhaseFlip => "pf",
            ChannelKind::BitPhaseFlip => "bpf",
            ChannelKind::Depolarizing => "dep",
            ChannelKind::GeneralizedAmplitudeDamping => "gad",
            ChannelKind::AmplitudeDamping => "ad",
            ChannelKind::Identity => "id",
        }
    }

    /// Whether the one-parameter channel is driven by a rate at all.
    pub fn takes_rate(self) -> bool {
        self != ChannelKind::Identity
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for ChannelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let lower = s.to_ascii_lowercase();
        ChannelKind::ALL
            .into_iter()
            .find(|k| k.short_name() == lower)
            .ok_or_else(|| format!("unknown channel `{s}`"))
    }
}

/// Decoherence probability `p` and, for GAD only, damping `gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub p: f64,
    pub gamma: f64,
}

impl ChannelParams {
    pub fn new(p: f64, gamma: f64) -> Result<Self> {
        check_unit_interval("p", p)?;
        check_unit_interval("gamma", gamma)?;
        Ok(Self { p, gamma })
    }

    /// Parameters for every channel except GAD.
    pub fn with_p(p: f64) -> Result<Self> {
        Self::new(p, 0.0)
    }
}

/// Mixing weight at which GAD keeps Bell-diagonal states Bell-diagonal.
pub const GAD_BELL_MIXING: f64 = 0.5;

/// Kraus set of GAD at mixing 1/2, damping `gamma`.
pub fn gad_bell(gamma: f64) -> Result<KrausSet> {
    kraus_set(
        ChannelKind::GeneralizedAmplitudeDamping,
        ChannelParams::new(GAD_BELL_MIXING, gamma)?,
    )
}

/// A complete set of single-qubit Kraus operators, `Σ Eₖ†Eₖ = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    ops: Vec<Matrix2>,
}

impl KrausSet {
    /// Accepts 1 to 4 operators whose completeness defect is within 1e-12.
    pub fn new(ops: Vec<Matrix2>) -> Result<Self> {
        if ops.is_empty() || ops.len() > 4 {
            return Err(Error::UnsupportedFamily(format!(
                "a qubit Kraus set needs 1 to 4 operators, got {}",
                ops.len()
            )));
        }
        if ops.iter().any(|op| !op.is_finite()) {
            return Err(Error::NonFinite);
        }
        let defect = completeness_defect(&ops);
        if defect > COMPLETENESS_TOL {
            return Err(Error::UnsupportedFamily(format!(
                "Kraus set is incomplete (defect {defect:e})"
            )));
        }
        Ok(Self { ops })
    }

    pub fn identity() -> Self {
        Self {
            ops: vec![Matrix2::identity()],
        }
    }

    pub fn ops(&self) -> &[Matrix2] {
        &self.ops
    }

    pub fn completeness_defect(&self) -> f64 {
        completeness_defect(&self.ops)
    }
}

/// Max-norm of `Σ Eₖ†Eₖ − I`.
pub fn completeness_defect(ops: &[Matrix2]) -> f64 {
    let sum = ops
        .iter()
        .fold(Matrix2::zeros(), |acc, e| acc + e.adjoint() * *e);
    sum.max_abs_diff(&Matrix2::identity())
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Kraus operators of `kind`, listed as `E₀, E₁(, E₂, E₃)`.
pub fn kraus_set(kind: ChannelKind, params: ChannelParams) -> Result<KrausSet> {
    let ChannelParams { p, gamma } = params;
    check_unit_interval("p", p)?;
    check_unit_interval("gamma", gamma)?;

    let id = Matrix2::identity();
    let flip = |sigma: Matrix2| {
        vec![
            id.scale_real((1.0 - p / 2.0).sqrt()),
            sigma.scale_real((p / 2.0).sqrt()),
        ]
    };
    let ops = match kind {
        ChannelKind::BitFlip => flip(pauli::x()),
        ChannelKind::PhaseFlip => flip(pauli::z()),
        ChannelKind::BitPhaseFlip => flip(pauli::y()),
        ChannelKind::Depolarizing => {
            let w = (p / 3.0).sqrt();
            vec![
                id.scale_real((1.0 - p).sqrt()),
                pauli::x().scale_real(w),
                pauli::y().scale_real(w),
                pauli::z().scale_real(w),
            ]
        }
        ChannelKind::GeneralizedAmplitudeDamping => {
            let a = p.sqrt();
            let b = (1.0 - p).sqrt();
            let keep = (1.0 - gamma).sqrt();
            let jump = gamma.sqrt();
            vec![
                Matrix2([[real(a), real(0.0)], [real(0.0), real(a * keep)]]),
                Matrix2([[real(0.0), real(a * jump)], [real(0.0), real(0.0)]]),
                Matrix2([[real(b * keep), real(0.0)], [real(0.0), real(b)]]),
                Matrix2([[real(0.0), real(0.0)], [real(b * jump), real(0.0)]]),
            ]
        }
        ChannelKind::AmplitudeDamping => vec![
            Matrix2([[real(1.0), real(0.0)], [real(0.0), real((1.0 - p).sqrt())]]),
            Matrix2([[real(0.0), real(p.sqrt())], [real(0.0), real(0.0)]]),
        ],
        ChannelKind::Identity => vec![id],
    };
    Ok(KrausSet { ops })
}

/// Which qubit a single-qubit channel acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    First,
    Second,
}

fn conjugate_sum(rho: &Matrix4, ops: impl Iterator<Item = Matrix4>) -> Matrix4 {
    ops.fold(Matrix4::zeros(), |acc, e| acc + (&e * rho) * e.adjoint())
}

/// `Σₖ (Eₖ⊗I) ρ (Eₖ⊗I)†` for [`Side::First`], `I⊗Eₖ` for [`Side::Second`].
pub fn apply_one_side(rho: &TwoQubitDensity, k: &KrausSet, side: Side) -> TwoQubitDensity {
    let id = Matrix2::identity();
    let lifted = k.ops.iter().map(|e| match side {
        Side::First => kron(e, &id),
        Side::Second => kron(&id, e),
    });
    TwoQubitDensity::from_trusted(conjugate_sum(rho.matrix(), lifted))
}

/// `Σᵢⱼ (Eᵢ⊗Fⱼ) ρ (Eᵢ⊗Fⱼ)†`.
pub fn apply_both(rho: &TwoQubitDensity, ka: &KrausSet, kb: &KrausSet) -> TwoQubitDensity {
    let lifted = ka
        .ops
        .iter()
        .flat_map(|e| kb.ops.iter().map(move |f| kron(e, f)));
    TwoQubitDensity::from_trusted(conjugate_sum(rho.matrix(), lifted))
}

fn check_cap(n: u64) -> Result<()> {
    if n > ITERATION_CAP {
        Err(Error::IterationCapExceeded {
            requested: n,
            cap: ITERATION_CAP,
        })
    } else {
        Ok(())
    }
}

/// `n`-fold application of `k` on one qubit; `n = 0` is the identity.
pub fn apply_n(rho: &TwoQubitDensity, k: &KrausSet, side: Side, n: u64) -> Result<TwoQubitDensity> {
    check_cap(n)?;
    Ok((0..n).fold(*rho, |acc, _| apply_one_side(&acc, k, side)))
}

/// `n`-fold application of `ka ⊗ kb`.
pub fn apply_both_n(
    rho: &TwoQubitDensity,
    ka: &KrausSet,
    kb: &KrausSet,
    n: u64,
) -> Result<TwoQubitDensity> {
    check_cap(n)?;
    Ok((0..n).fold(*rho, |acc, _| apply_both(&acc, ka, kb)))
}
