//! Which Kraus application convention reproduces each closed-form family.

use std::fmt;
use std::io::{self, Write};

use bellcoh_core::{
    adc_state_biside_n, adc_state_n, apply_both_n, apply_n, bell_to_density, map_coeffs,
    BellCoeffs, ChannelKind, MapFamily, RateParams, Side, TwoQubitDensity, EXAMPLE_STATE,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::csv::fmt_g12;
use crate::sweep::{both_sides_pair_n, oracle_kraus};

/// Largest entrywise deviation accepted as a match.
pub const MATCH_TOL: f64 = 1e-12;
pub const DEFAULT_STEP: f64 = 0.05;
pub const DEFAULT_SAMPLES: usize = 8;
const SEED: u64 = 0x00be_11d1_a90a;
const REPEATS: [u64; 3] = [2, 3, 5];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// The channel acts once, on the named qubit only.
    OneSided,
    /// The channel acts as `Σᵢⱼ (Eᵢ⊗Eⱼ) ρ (Eᵢ⊗Eⱼ)†`.
    BothSides,
    Neither,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::OneSided => "one_sided",
            Convention::BothSides => "both_sides",
            Convention::Neither => "neither",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyRow {
    pub table_row: String,
    pub convention: Convention,
    pub dev_one_sided: f64,
    pub dev_both: f64,
}

#[derive(Debug, Clone, Copy)]
enum Family {
    Local(ChannelKind),
    Adc,
    AdcBiSide,
    Bi(ChannelKind, ChannelKind),
}

impl Family {
    fn label(self, repeated: bool) -> String {
        let sup = if repeated { "^n" } else { "" };
        match self {
            Family::Local(k) => format!("local{sup}:{}", k.short_name()),
            Family::Adc => format!("adc{sup}"),
            Family::AdcBiSide => "adc^(n,n)".into(),
            Family::Bi(a, b) => format!("bi{sup}:{}-{}", a.short_name(), b.short_name()),
        }
    }

    fn two_rates(self) -> bool {
        matches!(self, Family::Bi(..))
    }

    fn closed(self, c: &BellCoeffs, p: f64, q: f64, n: u64) -> TwoQubitDensity {
        let bell = |family, rates| bell_to_density(&map_coeffs(family, c, rates).unwrap());
        match self {
            Family::Local(k) => bell(
                MapFamily::LocalRepeated(k, n),
                RateParams::single(p).unwrap(),
            ),
            Family::Adc => adc_state_n(c, p, n).unwrap(),
            Family::AdcBiSide => adc_state_biside_n(c, p, n).unwrap(),
            Family::Bi(a, b) => {
                let family = if a == b {
                    MapFamily::BiSameRepeated(a, n)
                } else {
                    MapFamily::BiMixedRepeated(a, b, n)
                };
                bell(family, RateParams::new(p, q).unwrap())
            }
        }
    }

    /// `(one-sided, both-sides)` oracle outputs.
    fn oracles(
        self,
        rho: &TwoQubitDensity,
        p: f64,
        q: f64,
        n: u64,
    ) -> (TwoQubitDensity, TwoQubitDensity) {
        let k = |kind, rate| oracle_kraus(kind, rate).unwrap();
        match self {
            Family::Local(kind) => local_oracles(rho, kind, p, n, &k),
            Family::Adc => local_oracles(rho, ChannelKind::AmplitudeDamping, p, n, &k),
            Family::AdcBiSide => {
                let ad = k(ChannelKind::AmplitudeDamping, p);
                (
                    apply_both_n(rho, &ad, &ad, n).unwrap(),
                    both_sides_pair_n(rho, &ad, &ad, n),
                )
            }
            Family::Bi(a, b) => {
                let (ka, kb) = (k(a, p), k(b, q));
                (
                    apply_both_n(rho, &ka, &kb, n).unwrap(),
                    both_sides_pair_n(rho, &ka, &kb, n),
                )
            }
        }
    }
}

fn local_oracles(
    rho: &TwoQubitDensity,
    kind: ChannelKind,
    p: f64,
    n: u64,
    k: &dyn Fn(ChannelKind, f64) -> bellcoh_core::KrausSet,
) -> (TwoQubitDensity, TwoQubitDensity) {
    let ks = k(kind, p);
    (
        apply_n(rho, &ks, Side::First, n).unwrap(),
        apply_both_n(rho, &ks, &ks, n).unwrap(),
    )
}

fn families() -> Vec<(Family, bool)> {
    use ChannelKind::*;
    let mut out = Vec::new();
    let locals = [
        BitFlip,
        PhaseFlip,
        BitPhaseFlip,
        Depolarizing,
        GeneralizedAmplitudeDamping,
    ];
    let pairs = [
        (PhaseFlip, PhaseFlip),
        (BitFlip, BitFlip),
        (BitPhaseFlip, BitPhaseFlip),
        (BitFlip, PhaseFlip),
        (BitFlip, BitPhaseFlip),
        (PhaseFlip, BitPhaseFlip),
    ];
    for repeated in [false, true] {
        out.extend(locals.iter().map(|&k| (Family::Local(k), repeated)));
        out.push((Family::Adc, repeated));
    }
    out.push((Family::AdcBiSide, true));
    for repeated in [false, true] {
        out.extend(pairs.iter().map(|&(a, b)| (Family::Bi(a, b), repeated)));
    }
    out
}

/// Random physical Bell-diagonal triple with a flat-Dirichlet spectrum.
pub fn random_bell<R: Rng>(rng: &mut R) -> BellCoeffs {
    let mut cuts = [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()];
    cuts.sort_by(f64::total_cmp);
    let l = [cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], 1.0 - cuts[2]];
    BellCoeffs::new_unchecked(
        l[2] + l[3] - l[0] - l[1],
        l[1] + l[3] - l[0] - l[2],
        l[1] + l[2] - l[0] - l[3],
    )
}

fn unit_grid(step: f64) -> Vec<f64> {
    let n = (1.0 / step + 1e-9).floor() as usize;
    let mut pts: Vec<f64> = (0..=n).map(|i| i as f64 * step).collect();
    if (1.0 - pts[n]).abs() < 1e-9 {
        pts[n] = 1.0;
    } else {
        pts.push(1.0);
    }
    pts
}

/// Compares every closed-form family against both oracles on
/// `EXAMPLE_STATE` plus `state_samples` seeded random states.
pub fn consistency_report(state_samples: usize, grid_step: f64) -> Vec<ConsistencyRow> {
    assert!(
        grid_step > 0.0 && grid_step <= 0.5,
        "grid step must lie in (0, 0.5]"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut states = vec![EXAMPLE_STATE];
    states.extend((0..state_samples).map(|_| random_bell(&mut rng)));
    let grid = unit_grid(grid_step);

    families()
        .into_par_iter()
        .map(|(family, repeated)| {
            let ns: &[u64] = match (family, repeated) {
                (Family::AdcBiSide, _) => &[1, 2, 3, 5],
                (_, true) => &REPEATS,
                (_, false) => &[1],
            };
            let qs: &[f64] = if family.two_rates() { &grid } else { &[0.0] };
            let (mut dev_one, mut dev_both) = (0.0f64, 0.0f64);
            for c in &states {
                let rho = bell_to_density(c);
                for &n in ns {
                    for &p in &grid {
                        for &q in qs {
                            let closed = family.closed(c, p, q, n);
                            let (one, both) = family.oracles(&rho, p, q, n);
                            dev_one = dev_one.max(closed.matrix().max_abs_diff(one.matrix()));
                            dev_both = dev_both.max(closed.matrix().max_abs_diff(both.matrix()));
                        }
                    }
                }
            }
            let convention = if dev_one <= MATCH_TOL {
                Convention::OneSided
            } else if dev_both <= MATCH_TOL {
                Convention::BothSides
            } else {
                Convention::Neither
            };
            ConsistencyRow {
                table_row: family.label(repeated),
                convention,
                dev_one_sided: dev_one,
                dev_both,
            }
        })
        .collect()
}

pub fn write_report_csv<W: Write>(out: &mut W, rows: &[ConsistencyRow]) -> io::Result<()> {
    writeln!(out, "table_row,convention,dev_one_sided,dev_both")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{}",
            r.table_row,
            r.convention,
            fmt_g12(r.dev_one_sided),
            fmt_g12(r.dev_both)
        )?;
    }
    Ok(())
}
