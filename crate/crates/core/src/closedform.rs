//! Closed-form evolution of Bell-diagonal states.
//!
//! The coefficient maps are transcribed row by row from the published
//! tables and are kept independent of the Kraus engines in
//! [`crate::channels`]. Which application convention each row reproduces is
//! established by comparison, not assumed here.

use std::fmt;

use crate::channels::ChannelKind;
use crate::error::{check_unit_interval, Error, Result};
use crate::matrix::Matrix4;
use crate::state::{BellCoeffs, TwoQubitDensity};

/// Powers smaller than this in magnitude are flushed to zero.
pub const POWER_FLUSH: f64 = 1e-300;

/// `base^n` with exact integer powering and underflow flushed to zero.
pub fn pow_flush(base: f64, n: u64) -> f64 {
    let r = match i32::try_from(n) {
        Ok(k) => base.powi(k),
        Err(_) => base.powf(n as f64),
    };
    if r.abs() < POWER_FLUSH {
        0.0
    } else {
        r
    }
}

/// A tabulated family of coefficient maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapFamily {
    /// One channel on the first qubit (BF, PF, BPF, DEP, GAD).
    Local(ChannelKind),
    /// The same, `n` times.
    LocalRepeated(ChannelKind, u64),
    /// The same Pauli channel on both qubits, rates `p` (first) and `q` (second).
    BiSame(ChannelKind),
    BiSameRepeated(ChannelKind, u64),
    /// Different Pauli channels: first qubit at rate `p`, second at rate `q`.
    /// Only `(BF, PF)`, `(BF, BPF)` and `(PF, BPF)` are tabulated.
    BiMixed(ChannelKind, ChannelKind),
    BiMixedRepeated(ChannelKind, ChannelKind, u64),
}

impl MapFamily {
    /// Fails for channel kinds or pairs that have no tabulated row.
    pub fn validate(&self) -> Result<()> {
        use ChannelKind::*;
        let ok = match *self {
            MapFamily::Local(k) | MapFamily::LocalRepeated(k, _) => matches!(
                k,
                BitFlip | PhaseFlip | BitPhaseFlip | Depolarizing | GeneralizedAmplitudeDamping
            ),
            MapFamily::BiSame(k) | MapFamily::BiSameRepeated(k, _) => {
                matches!(k, BitFlip | PhaseFlip | BitPhaseFlip)
            }
            MapFamily::BiMixed(a, b) | MapFamily::BiMixedRepeated(a, b, _) => matches!(
                (a, b),
                (BitFlip, PhaseFlip) | (BitFlip, BitPhaseFlip) | (PhaseFlip, BitPhaseFlip)
            ),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedFamily(format!(
                "no closed form for {self}"
            )))
        }
    }

    /// Number of applications per qubit.
    pub fn repetitions(&self) -> u64 {
        match *self {
            MapFamily::Local(_) | MapFamily::BiSame(_) | MapFamily::BiMixed(..) => 1,
            MapFamily::LocalRepeated(_, n)
            | MapFamily::BiSameRepeated(_, n)
            | MapFamily::BiMixedRepeated(_, _, n) => n,
        }
    }

    pub fn is_bi_side(&self) -> bool {
        !matches!(self, MapFamily::Local(_) | MapFamily::LocalRepeated(..))
    }

    /// Multiplicative factors `(f1, f2, f3)` with `c'ᵢ = fᵢ cᵢ`.
    pub fn factors(&self, rates: RateParams) -> Result<[f64; 3]> {
        use ChannelKind::*;
        self.validate()?;
        let n = self.repetitions();
        let fp = 1.0 - rates.p;
        let fq = 1.0 - rates.q;
        let f = match *self {
            MapFamily::Local(kind) | MapFamily::LocalRepeated(kind, _) => {
                let once = pow_flush(fp, n);
                let twice = pow_flush(fp, 2 * n);
                match kind {
                    BitFlip => [1.0, twice, twice],
                    PhaseFlip => [twice, twice, 1.0],
                    BitPhaseFlip => [twice, 1.0, twice],
                    Depolarizing => [pow_flush(1.0 - 4.0 * rates.p / 3.0, n); 3],
                    GeneralizedAmplitudeDamping => [once, once, twice],
                    _ => unreachable!("validated above"),
                }
            }
            MapFamily::BiSame(kind) | MapFamily::BiSameRepeated(kind, _) => {
                let joint = pow_flush(fp, n) * pow_flush(fq, n);
                match kind {
                    PhaseFlip => [joint, joint, 1.0],
                    BitFlip => [1.0, joint, joint],
                    BitPhaseFlip => [joint, 1.0, joint],
                    _ => unreachable!("validated above"),
                }
            }
            MapFamily::BiMixed(a, b) | MapFamily::BiMixedRepeated(a, b, _) => {
                let on_p = pow_flush(fp, n);
                let on_q = pow_flush(fq, n);
                let joint = on_p * on_q;
                match (a, b) {
                    (BitFlip, PhaseFlip) => [on_q, joint, on_p],
                    (BitFlip, BitPhaseFlip) => [on_q, on_p, joint],
                    (PhaseFlip, BitPhaseFlip) => [joint, on_p, on_q],
                    _ => unreachable!("validated above"),
                }
            }
        };
        Ok(f)
    }
}

impl fmt::Display for MapFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MapFamily::Local(k) => write!(f, "{k}"),
            MapFamily::LocalRepeated(k, n) => write!(f, "{k}^{n}"),
            MapFamily::BiSame(k) => write!(f, "{k}-{k}"),
            MapFamily::BiSameRepeated(k, n) => write!(f, "{k}^{n}-{k}^{n}"),
            MapFamily::BiMixed(a, b) => write!(f, "{a}-{b}"),
            MapFamily::BiMixedRepeated(a, b, n) => write!(f, "{a}^{n}-{b}^{n}"),
        }
    }
}

/// Decoherence probabilities on the first (`p`) and second (`q`) qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateParams {
    pub p: f64,
    pub q: f64,
}

impl RateParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        check_unit_interval("p", p)?;
        check_unit_interval("q", q)?;
        Ok(Self { p, q })
    }

    pub fn single(p: f64) -> Result<Self> {
        Self::new(p, 0.0)
    }

    /// Rates from damping constants and time, `p = 1 − e^{−γt}`.
    pub fn from_damping(gamma_a: f64, gamma_b: f64, t: f64) -> Result<Self> {
        Self::new(1.0 - (-gamma_a * t).exp(), 1.0 - (-gamma_b * t).exp())
    }
}

/// Evolved correlation triple under a tabulated family.
///
/// For GAD families the rate `p` plays the role of the damping `γ` at
/// mixing weight 1/2.
pub fn map_coeffs(family: MapFamily, c: &BellCoeffs, rates: RateParams) -> Result<BellCoeffs> {
    check_unit_interval("p", rates.p)?;
    check_unit_interval("q", rates.q)?;
    let [f1, f2, f3] = family.factors(rates)?;
    BellCoeffs::new(f1 * c.c1, f2 * c.c2, f3 * c.c3)
}

/// State after amplitude damping on the first qubit.
pub fn adc_state(c: &BellCoeffs, p: f64) -> Result<TwoQubitDensity> {
    adc_state_n(c, p, 1)
}

/// State after `n` amplitude-damping steps on the first qubit, evaluated
/// from exact powers of `1 − p`.
pub fn adc_state_n(c: &BellCoeffs, p: f64, n: u64) -> Result<TwoQubitDensity> {
    check_unit_interval("p", p)?;
    let BellCoeffs { c1, c2, c3 } = *c;
    let decay = pow_flush(1.0 - p, n);
    let coherence = pow_flush((1.0 - p).sqrt(), n);
    let corner = (c1 - c2) * coherence / 4.0;
    let inner = (c1 + c2) * coherence / 4.0;
    Ok(TwoQubitDensity::from_trusted(Matrix4::from_real([
        [(2.0 - (1.0 - c3) * decay) / 4.0, 0.0, 0.0, corner],
        [0.0, (2.0 - (1.0 + c3) * decay) / 4.0, inner, 0.0],
        [0.0, inner, (1.0 - c3) * decay / 4.0, 0.0],
        [corner, 0.0, 0.0, (1.0 + c3) * decay / 4.0],
    ])))
}

/// State after `n` amplitude-damping steps on both qubits with the same `p`.
pub fn adc_state_biside_n(c: &BellCoeffs, p: f64, n: u64) -> Result<TwoQubitDensity> {
    check_unit_interval("p", p)?;
    let BellCoeffs { c1, c2, c3 } = *c;
    let a = pow_flush(1.0 - p, n);
    let a2 = pow_flush(1.0 - p, 2 * n);
    let x = 4.0 - 4.0 * a + (1.0 + c3) * a2;
    let y = 2.0 * a - (1.0 + c3) * a2;
    let corner = (c1 - c2) * a / 4.0;
    let inner = (c1 + c2) * a / 4.0;
    Ok(TwoQubitDensity::from_trusted(Matrix4::from_real([
        [x / 4.0, 0.0, 0.0, corner],
        [0.0, y / 4.0, inner, 0.0],
        [0.0, inner, y / 4.0, 0.0],
        [corner, 0.0, 0.0, (1.0 + c3) * a2 / 4.0],
    ])))
}
