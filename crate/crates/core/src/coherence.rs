//! l₁-norm and relative-entropy coherence in the computational basis.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::state::{
    dephase, shannon_entropy, von_neumann_entropy, xlog2x, BellCoeffs, TwoQubitDensity,
};

/// Absolute spread below which a coherence curve counts as frozen.
pub const FROZEN_TOL: f64 = 1e-9;

/// Round-off band below zero that is clamped for the relative entropy.
pub const REL_ENT_CLAMP: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoherenceMeasure {
    L1,
    RelativeEntropy,
}

impl CoherenceMeasure {
    pub fn name(self) -> &'static str {
        match self {
            CoherenceMeasure::L1 => "l1",
            CoherenceMeasure::RelativeEntropy => "rel",
        }
    }

    /// Measure evaluated on a full density matrix.
    pub fn of_density(self, rho: &TwoQubitDensity) -> Result<f64> {
        match self {
            CoherenceMeasure::L1 => Ok(c_l1(rho)),
            CoherenceMeasure::RelativeEntropy => c_rel(rho),
        }
    }

    /// Measure evaluated through the Bell-diagonal specialisation.
    pub fn of_bell(self, c: &BellCoeffs) -> f64 {
        match self {
            CoherenceMeasure::L1 => c_l1_bell(c),
            CoherenceMeasure::RelativeEntropy => c_rel_bell(c),
        }
    }
}

impl fmt::Display for CoherenceMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoherenceMeasure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "l1" => Ok(CoherenceMeasure::L1),
            "rel" | "relent" => Ok(CoherenceMeasure::RelativeEntropy),
            other => Err(format!(
                "unknown coherence measure `{other}` (expected l1 or rel)"
            )),
        }
    }
}

/// Sum of the moduli of all off-diagonal entries.
pub fn c_l1(rho: &TwoQubitDensity) -> f64 {
    let m = rho.matrix();
    let mut total = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                total += m[(i, j)].norm();
            }
        }
    }
    total
}

/// `½(|c1 + c2| + |c1 − c2|)`, which equals `max(|c1|, |c2|)`.
pub fn c_l1_bell(c: &BellCoeffs) -> f64 {
    0.5 * ((c.c1 + c.c2).abs() + (c.c1 - c.c2).abs())
}

fn clamp_rel(value: f64) -> f64 {
    if value < 0.0 && value > -REL_ENT_CLAMP {
        0.0
    } else {
        value
    }
}

/// `S(ρ_diag) − S(ρ)` in bits.
pub fn c_rel(rho: &TwoQubitDensity) -> Result<f64> {
    let s_diag = shannon_entropy(&dephase(rho).diagonal());
    let s = von_neumann_entropy(rho)?;
    Ok(clamp_rel(s_diag - s))
}

/// Relative entropy of coherence of a Bell-diagonal state written in terms
/// of its correlation triple (base-2 logarithms).
pub fn c_rel_bell(c: &BellCoeffs) -> f64 {
    let BellCoeffs { c1, c2, c3 } = *c;
    let spectral = [
        1.0 - c1 - c2 - c3,
        1.0 - c1 + c2 + c3,
        1.0 + c1 - c2 + c3,
        1.0 + c1 + c2 - c3,
    ]
    .into_iter()
    .map(|a| 0.25 * xlog2x(a))
    .sum::<f64>();
    let diagonal = 0.5 * xlog2x(1.0 + c3) + 0.5 * xlog2x(1.0 - c3);
    clamp_rel(spectral - diagonal)
}

/// Outcome of scanning a coherence curve for constancy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrozenReport {
    pub is_frozen: bool,
    /// `max − min` of the scanned values.
    pub max_deviation: f64,
    pub measure: CoherenceMeasure,
    pub grid_size: usize,
}

impl fmt::Display for FrozenReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "measure={} frozen={} max_deviation={:e} grid_size={}",
            self.measure, self.is_frozen, self.max_deviation, self.grid_size
        )
    }
}

/// Checks whether `(grid_point, value)` samples stay within [`FROZEN_TOL`].
pub fn frozen_scan<G>(measure: CoherenceMeasure, values: &[(G, f64)]) -> Result<FrozenReport> {
    if values.len() < 2 {
        return Err(Error::EmptyInput { got: values.len() });
    }
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (_, v)| {
            (lo.min(*v), hi.max(*v))
        });
    let max_deviation = hi - lo;
    Ok(FrozenReport {
        is_frozen: max_deviation <= FROZEN_TOL,
        max_deviation,
        measure,
        grid_size: values.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::bell_to_density;

    fn example() -> BellCoeffs {
        BellCoeffs::new(0.3, -0.4, 0.56).unwrap()
    }

    fn bell_state() -> BellCoeffs {
        BellCoeffs::new(1.0, -1.0, 1.0).unwrap()
    }

    #[test]
    fn l1_examples() {
        assert_eq!(c_l1(&TwoQubitDensity::maximally_mixed()), 0.0);
        assert!((c_l1(&bell_to_density(&bell_state())) - 1.0).abs() < 1e-15);
        assert!((c_l1(&bell_to_density(&example())) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn l1_bell_examples() {
        assert_eq!(c_l1_bell(&BellCoeffs::new(0.0, 0.0, 0.5).unwrap()), 0.0);
        assert!((c_l1_bell(&example()) - 0.4).abs() < 1e-15);
        assert!((c_l1_bell(&BellCoeffs::new(0.7, 0.1, 0.0).unwrap()) - 0.7).abs() < 1e-15);
    }

    #[test]
    fn rel_examples() {
        let diag =
            TwoQubitDensity::new(crate::matrix::Matrix4::diagonal([0.1, 0.2, 0.3, 0.4])).unwrap();
        assert!(c_rel(&diag).unwrap().abs() < 1e-12);
        assert!((c_rel(&bell_to_density(&bell_state())).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(c_rel_bell(&BellCoeffs::zero()), 0.0);
        assert!((c_rel_bell(&bell_state()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rel_example_state_two_routes() {
        // S(diag(0.39, 0.11, 0.11, 0.39)) − S(0.085, 0.135, 0.215, 0.565)
        let h = |ps: &[f64]| -ps.iter().map(|p| p * p.log2()).sum::<f64>();
        let expected = h(&[0.39, 0.11, 0.11, 0.39]) - h(&[0.085, 0.135, 0.215, 0.565]);
        let via_matrix = c_rel(&bell_to_density(&example())).unwrap();
        let via_coeffs = c_rel_bell(&example());
        assert!((via_matrix - expected).abs() < 1e-12);
        assert!((via_coeffs - expected).abs() < 1e-12);
        assert!(expected > 0.0);
    }

    #[test]
    fn frozen_constant_list() {
        let values: Vec<(f64, f64)> = (0..101).map(|i| (i as f64 / 100.0, 0.4)).collect();
        let r = frozen_scan(CoherenceMeasure::L1, &values).unwrap();
        assert!(r.is_frozen);
        assert_eq!(r.max_deviation, 0.0);
        assert_eq!(r.grid_size, 101);
    }

    #[test]
    fn frozen_decreasing_list() {
        let values: Vec<(usize, f64)> = (0..11).map(|i| (i, 1.0 - i as f64 / 10.0)).collect();
        let r = frozen_scan(CoherenceMeasure::RelativeEntropy, &values).unwrap();
        assert!(!r.is_frozen);
        assert!((r.max_deviation - 1.0).abs() < 1e-15);
    }

    #[test]
    fn frozen_needs_two_samples() {
        assert_eq!(
            frozen_scan::<f64>(CoherenceMeasure::L1, &[]),
            Err(Error::EmptyInput { got: 0 })
        );
        assert_eq!(
            frozen_scan(CoherenceMeasure::L1, &[(0.0, 1.0)]),
            Err(Error::EmptyInput { got: 1 })
        );
    }

    #[test]
    fn measure_names_parse() {
        assert_eq!("L1".parse(), Ok(CoherenceMeasure::L1));
        assert_eq!("rel".parse(), Ok(CoherenceMeasure::RelativeEntropy));
        assert!("trace".parse::<CoherenceMeasure>().is_err());
    }
}
