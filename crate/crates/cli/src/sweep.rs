//! Parameter sweeps under the closed-form or the Kraus-oracle engine.

use std::fmt;
use std::str::FromStr;

use bellcoh_core::channels::{gad_bell, ITERATION_CAP};
use bellcoh_core::{
    adc_state_biside_n, adc_state_n, apply_both, apply_both_n, apply_n, bell_to_density, c_l1,
    c_l1_bell, c_rel, c_rel_bell, density_to_bell, kraus_set, map_coeffs, BellCoeffs, ChannelKind,
    ChannelParams, CoherenceMeasure, KrausSet, MapFamily, RateParams, Side, TwoQubitDensity,
};
use rayon::prelude::*;
use thiserror::Error;

use crate::spec::{ChannelSpec, Rate, SideSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),
    #[error("numerical invariant violated at p={p}, q={q}, n={n}: {source}")]
    Numerical {
        p: f64,
        q: f64,
        n: u64,
        source: bellcoh_core::Error,
    },
}

/// Arithmetic grid `start, start + step, …, stop` over `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub const UNIT_PERCENT: Grid = Grid {
        start: 0.0,
        stop: 1.0,
        step: 0.01,
    };

    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self, SweepError> {
        let grid = Self { start, stop, step };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        let Grid { start, stop, step } = *self;
        let in_unit = |x: f64| (0.0..=1.0).contains(&x);
        if !(in_unit(start) && in_unit(stop) && start <= stop) {
            return Err(SweepError::InvalidConfig(format!(
                "grid bounds {start}:{stop} must satisfy 0 <= start <= stop <= 1"
            )));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(SweepError::InvalidConfig(format!(
                "grid step {step} must be positive"
            )));
        }
        Ok(())
    }

    /// Number of intervals; the last point is snapped onto `stop`.
    fn intervals(&self) -> usize {
        ((self.stop - self.start) / self.step + 1e-9).floor() as usize
    }

    pub fn len(&self) -> usize {
        self.intervals() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid points computed as `start + i·step`; when `step` divides the span
    /// the points are `start + (stop − start)·i/N`, which hits both ends exactly.
    pub fn points(&self) -> Vec<f64> {
        let n = self.intervals();
        let span = self.stop - self.start;
        let exact = ((n as f64) * self.step - span).abs() <= 1e-9 * self.step.max(span);
        (0..=n)
            .map(|i| {
                if n == 0 {
                    self.start
                } else if exact {
                    self.start + span * (i as f64) / (n as f64)
                } else {
                    self.start + self.step * i as f64
                }
            })
            .collect()
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

impl FromStr for Grid {
    type Err = SweepError;

    /// `start:stop:step`
    fn from_str(s: &str) -> Result<Self, SweepError> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let bad = || SweepError::InvalidConfig(format!("grid `{s}` is not of the form a:b:step"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let nums: Vec<f64> = parts
            .iter()
            .map(|p| p.parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        Grid::new(nums[0], nums[1], nums[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    ClosedForm,
    Oracle,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::ClosedForm => "closedform",
            Engine::Oracle => "oracle",
        })
    }
}

impl FromStr for Engine {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, SweepError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "closedform" | "closed-form" => Ok(Engine::ClosedForm),
            "oracle" => Ok(Engine::Oracle),
            other => Err(SweepError::InvalidConfig(format!(
                "unknown engine `{other}` (expected closedform or oracle)"
            ))),
        }
    }
}

/// How the oracle engine applies a channel named for one qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Only on the named qubit.
    OneSided,
    /// On both qubits, `Σᵢⱼ (Eᵢ⊗Eⱼ) ρ (Eᵢ⊗Eⱼ)†`.
    BothSides,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::OneSided => "one-sided",
            Convention::BothSides => "both-sides",
        })
    }
}

impl FromStr for Convention {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, SweepError> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "one-sided" => Ok(Convention::OneSided),
            "both-sides" => Ok(Convention::BothSides),
            other => Err(SweepError::InvalidConfig(format!(
                "unknown convention `{other}` (expected one-sided or both-sides)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub state: BellCoeffs,
    pub spec: ChannelSpec,
    pub p_grid: Grid,
    pub q_grid: Grid,
    /// Repetition multipliers; a side with `^k` is applied `k·n` times.
    pub n_list: Vec<u64>,
    pub engine: Engine,
    /// Used by the oracle engine only.
    pub convention: Convention,
    pub measures: Vec<CoherenceMeasure>,
}

impl SweepConfig {
    /// Closed-form sweep over the default grids with `n = 1`.
    pub fn new(state: BellCoeffs, spec: ChannelSpec, measures: Vec<CoherenceMeasure>) -> Self {
        Self {
            state,
            spec,
            p_grid: Grid::UNIT_PERCENT,
            q_grid: Grid::UNIT_PERCENT,
            n_list: vec![1],
            engine: Engine::ClosedForm,
            convention: Convention::OneSided,
            measures,
        }
    }

    pub fn wants(&self, m: CoherenceMeasure) -> bool {
        self.measures.contains(&m)
    }

    /// p values actually visited: the grid, or `[0]` when no channel uses `p`.
    pub fn effective_p(&self) -> Vec<f64> {
        if self.spec.uses_p() {
            self.p_grid.points()
        } else {
            vec![0.0]
        }
    }

    pub fn effective_q(&self) -> Vec<f64> {
        if self.spec.uses_q() {
            self.q_grid.points()
        } else {
            vec![0.0]
        }
    }

    /// Distinct multipliers in ascending order.
    pub fn effective_n(&self) -> Vec<u64> {
        let mut n = self.n_list.clone();
        n.sort_unstable();
        n.dedup();
        n
    }

    /// Number of rows [`run_sweep`] produces.
    pub fn row_count(&self) -> usize {
        self.effective_n().len() * self.effective_p().len() * self.effective_q().len()
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        self.p_grid.validate()?;
        self.q_grid.validate()?;
        if self.n_list.is_empty() {
            return Err(SweepError::InvalidConfig("n list is empty".into()));
        }
        if self.measures.is_empty() {
            return Err(SweepError::InvalidConfig(
                "no coherence measure requested".into(),
            ));
        }
        if self.spec.side_a.is_none() && self.spec.side_b.is_none() {
            return Err(SweepError::InvalidConfig("channel spec has no side".into()));
        }
        BellCoeffs::new(self.state.c1, self.state.c2, self.state.c3)
            .map_err(|e| SweepError::InvalidConfig(format!("initial state: {e}")))?;
        if self.engine == Engine::Oracle {
            let max_n = self.n_list.iter().copied().max().unwrap_or(0);
            for side in self.spec.sides() {
                let total = u64::from(side.reps).saturating_mul(max_n);
                if total > ITERATION_CAP {
                    return Err(SweepError::InvalidConfig(format!(
                        "oracle engine would apply {} {total} times (cap {ITERATION_CAP})",
                        side.kind
                    )));
                }
            }
        }
        Ok(())
    }
}

/// One sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleRow {
    pub p: f64,
    pub q: f64,
    pub n: u64,
    /// Evolved correlation triple, absent when the output is not Bell-diagonal.
    pub coeffs: Option<BellCoeffs>,
    pub l1: Option<f64>,
    pub rel: Option<f64>,
}

impl SampleRow {
    pub fn measure(&self, m: CoherenceMeasure) -> Option<f64> {
        match m {
            CoherenceMeasure::L1 => self.l1,
            CoherenceMeasure::RelativeEntropy => self.rel,
        }
    }
}

/// What the closed-form engine evaluates for a given spec.
#[derive(Debug, Clone, Copy, PartialEq)]
enum ClosedPlan {
    Identity,
    Local {
        kind: ChannelKind,
        rate: Rate,
        reps: u32,
    },
    Adc {
        rate: Rate,
        reps: u32,
    },
    AdcBiSide {
        rate: Rate,
        reps: u32,
    },
    BiSide {
        a: ChannelKind,
        b: ChannelKind,
        rate_a: Rate,
        rate_b: Rate,
        reps: u32,
    },
}

enum Evolved {
    Bell(BellCoeffs),
    Density(Box<TwoQubitDensity>),
}

fn active(side: Option<SideSpec>) -> Option<SideSpec> {
    side.filter(|s| !s.is_identity())
}

fn resolve_closed_form(spec: &ChannelSpec) -> Result<ClosedPlan, SweepError> {
    use ChannelKind::*;
    let unsupported = || {
        SweepError::UnsupportedCombination(format!(
            "`{spec}` has no tabulated closed form (use --engine oracle)"
        ))
    };
    match (active(spec.side_a), active(spec.side_b)) {
        (None, None) => Ok(ClosedPlan::Identity),
        (None, Some(_)) => Err(unsupported()),
        (Some(a), None) => {
            let rate = a.rate.expect("non-identity side has a rate");
            match a.kind {
                AmplitudeDamping => Ok(ClosedPlan::Adc { rate, reps: a.reps }),
                kind => Ok(ClosedPlan::Local {
                    kind,
                    rate,
                    reps: a.reps,
                }),
            }
        }
        (Some(a), Some(b)) => {
            if a.reps != b.reps {
                return Err(unsupported());
            }
            let (rate_a, rate_b) = (a.rate.unwrap(), b.rate.unwrap());
            match (a.kind, b.kind) {
                (AmplitudeDamping, AmplitudeDamping) if rate_a == rate_b => {
                    Ok(ClosedPlan::AdcBiSide {
                        rate: rate_a,
                        reps: a.reps,
                    })
                }
                (x, y) => {
                    let family = if x == y {
                        MapFamily::BiSame(x)
                    } else {
                        MapFamily::BiMixed(x, y)
                    };
                    family.validate().map_err(|_| unsupported())?;
                    Ok(ClosedPlan::BiSide {
                        a: x,
                        b: y,
                        rate_a,
                        rate_b,
                        reps: a.reps,
                    })
                }
            }
        }
    }
}

fn closed_form_point(
    plan: ClosedPlan,
    state: &BellCoeffs,
    p: f64,
    q: f64,
    n: u64,
) -> Result<Evolved, bellcoh_core::Error> {
    let times = |reps: u32| u64::from(reps) * n;
    Ok(match plan {
        ClosedPlan::Identity => Evolved::Bell(*state),
        ClosedPlan::Local { kind, rate, reps } => {
            let family = MapFamily::LocalRepeated(kind, times(reps));
            let rates = RateParams::single(rate.eval(p, q))?;
            Evolved::Bell(map_coeffs(family, state, rates)?)
        }
        ClosedPlan::Adc { rate, reps } => {
            Evolved::Density(Box::new(adc_state_n(state, rate.eval(p, q), times(reps))?))
        }
        ClosedPlan::AdcBiSide { rate, reps } => Evolved::Density(Box::new(adc_state_biside_n(
            state,
            rate.eval(p, q),
            times(reps),
        )?)),
        ClosedPlan::BiSide {
            a,
            b,
            rate_a,
            rate_b,
            reps,
        } => {
            let k = times(reps);
            let family = if a == b {
                MapFamily::BiSameRepeated(a, k)
            } else {
                MapFamily::BiMixedRepeated(a, b, k)
            };
            let rates = RateParams::new(rate_a.eval(p, q), rate_b.eval(p, q))?;
            Evolved::Bell(map_coeffs(family, state, rates)?)
        }
    })
}

/// Kraus set used by the oracle for `kind` at `rate`. GAD runs at mixing 1/2
/// with `rate` as its damping.
pub fn oracle_kraus(kind: ChannelKind, rate: f64) -> Result<KrausSet, bellcoh_core::Error> {
    match kind {
        ChannelKind::GeneralizedAmplitudeDamping => gad_bell(rate),
        _ => kraus_set(kind, ChannelParams::with_p(rate)?),
    }
}

/// Evolves `rho` under `spec` with the Kraus engine: every application of
/// side A, then every application of side B.
pub fn oracle_evolve(
    spec: &ChannelSpec,
    rho: &TwoQubitDensity,
    convention: Convention,
    p: f64,
    q: f64,
    n: u64,
) -> Result<TwoQubitDensity, bellcoh_core::Error> {
    let mut out = *rho;
    for (side, slot) in [(Side::First, spec.side_a), (Side::Second, spec.side_b)] {
        let Some(s) = active(slot) else { continue };
        let k = oracle_kraus(s.kind, s.rate_at(p, q))?;
        let times = u64::from(s.reps) * n;
        out = match convention {
            Convention::OneSided => apply_n(&out, &k, side, times)?,
            Convention::BothSides => apply_both_n(&out, &k, &k, times)?,
        };
    }
    Ok(out)
}

fn row_from(
    cfg: &SweepConfig,
    evolved: Evolved,
    p: f64,
    q: f64,
    n: u64,
) -> Result<SampleRow, bellcoh_core::Error> {
    let (coeffs, l1, rel) = match evolved {
        Evolved::Bell(c) => (
            Some(c),
            cfg.wants(CoherenceMeasure::L1).then(|| c_l1_bell(&c)),
            cfg.wants(CoherenceMeasure::RelativeEntropy)
                .then(|| c_rel_bell(&c)),
        ),
        Evolved::Density(rho) => {
            let rel = if cfg.wants(CoherenceMeasure::RelativeEntropy) {
                Some(c_rel(&rho)?)
            } else {
                None
            };
            (
                density_to_bell(&rho).ok(),
                cfg.wants(CoherenceMeasure::L1).then(|| c_l1(&rho)),
                rel,
            )
        }
    };
    Ok(SampleRow {
        p,
        q,
        n,
        coeffs,
        l1,
        rel,
    })
}

/// Runs the sweep; rows are ordered by `(n, p, q)`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SampleRow>, SweepError> {
    cfg.validate()?;
    let plan = match cfg.engine {
        Engine::ClosedForm => Some(resolve_closed_form(&cfg.spec)?),
        Engine::Oracle => None,
    };
    let ps = cfg.effective_p();
    let qs = cfg.effective_q();
    let points: Vec<(u64, f64, f64)> = cfg
        .effective_n()
        .into_iter()
        .flat_map(|n| {
            let qs = &qs;
            ps.iter()
                .flat_map(move |&p| qs.iter().map(move |&q| (n, p, q)))
        })
        .collect();

    let initial = bell_to_density(&cfg.state);
    points
        .par_iter()
        .map(|&(n, p, q)| {
            let numerical = |source| SweepError::Numerical { p, q, n, source };
            let evolved = match plan {
                Some(plan) => closed_form_point(plan, &cfg.state, p, q, n).map_err(numerical)?,
                None => {
                    let rho = oracle_evolve(&cfg.spec, &initial, cfg.convention, p, q, n)
                        .map_err(numerical)?;
                    rho.validate().map_err(numerical)?;
                    Evolved::Density(Box::new(rho))
                }
            };
            row_from(cfg, evolved, p, q, n).map_err(numerical)
        })
        .collect()
}

/// Applies `ka ⊗ ka` then `kb ⊗ kb`, `n` times: both channels read as acting
/// on both qubits.
pub fn both_sides_pair_n(
    rho: &TwoQubitDensity,
    ka: &KrausSet,
    kb: &KrausSet,
    n: u64,
) -> TwoQubitDensity {
    (0..n).fold(*rho, |acc, _| apply_both(&apply_both(&acc, ka, ka), kb, kb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_channel_spec;
    use bellcoh_core::EXAMPLE_STATE;

    fn cfg(spec: &str, measures: &[CoherenceMeasure]) -> SweepConfig {
        SweepConfig::new(
            EXAMPLE_STATE,
            parse_channel_spec(spec).unwrap(),
            measures.to_vec(),
        )
    }

    #[test]
    fn grid_points_hit_endpoints() {
        let g = Grid::UNIT_PERCENT;
        let pts = g.points();
        assert_eq!(pts.len(), 101);
        assert_eq!(pts[0], 0.0);
        assert_eq!(pts[75], 0.75);
        assert_eq!(pts[100], 1.0);
        let g: Grid = "0.2:0.5:0.1".parse().unwrap();
        assert_eq!(g.len(), 4);
        let g: Grid = "0:1:0.3".parse().unwrap();
        assert_eq!(g.points().len(), 4);
        assert!((g.points()[3] - 0.9).abs() < 1e-15);
        assert!("0:1".parse::<Grid>().is_err());
        assert!("0:1:0".parse::<Grid>().is_err());
        assert!("0.5:0.2:0.1".parse::<Grid>().is_err());
    }

    #[test]
    fn frozen_l1_sweep() {
        let rows = run_sweep(&cfg("A:bpf(p)", &[CoherenceMeasure::L1])).unwrap();
        assert_eq!(rows.len(), 101);
        for r in &rows {
            assert!((r.l1.unwrap() - 0.4).abs() < 1e-12);
            assert_eq!(r.rel, None);
        }
    }

    #[test]
    fn depolarizing_dip() {
        let rows = run_sweep(&cfg("A:dep(p)", &[CoherenceMeasure::RelativeEntropy])).unwrap();
        let at = |p: f64| rows.iter().find(|r| r.p == p).unwrap().rel.unwrap();
        assert!(at(0.75) < 1e-12);
        assert!(at(0.5) > 0.0 && at(1.0) > 0.0);
    }

    #[test]
    fn identity_is_constant() {
        let rows = run_sweep(&cfg(
            "A:id()",
            &[CoherenceMeasure::L1, CoherenceMeasure::RelativeEntropy],
        ))
        .unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].coeffs, Some(EXAMPLE_STATE));
        assert!((rows[0].l1.unwrap() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn row_order_and_count() {
        let mut c = cfg("A:bf(p); B:pf(q)", &[CoherenceMeasure::RelativeEntropy]);
        c.p_grid = "0:1:0.5".parse().unwrap();
        c.q_grid = "0:1:0.25".parse().unwrap();
        c.n_list = vec![3, 1];
        let rows = run_sweep(&c).unwrap();
        assert_eq!(rows.len(), c.row_count());
        assert_eq!(rows.len(), 2 * 3 * 5);
        let keys: Vec<(u64, f64, f64)> = rows.iter().map(|r| (r.n, r.p, r.q)).collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(keys, sorted);
    }

    #[test]
    fn closed_form_rejects_untabulated_pairs() {
        for spec in [
            "A:dep(p); B:bf(q)",
            "B:bf(q)",
            "A:pf(p); B:bf(q)",
            "A:bf(p)^2; B:pf(q)^3",
            "A:ad(p); B:ad(q)",
        ] {
            let err = run_sweep(&cfg(spec, &[CoherenceMeasure::L1])).unwrap_err();
            assert!(
                matches!(err, SweepError::UnsupportedCombination(_)),
                "{spec}: {err:?}"
            );
        }
        let mut oracle = cfg("A:dep(p); B:bf(q)", &[CoherenceMeasure::L1]);
        oracle.engine = Engine::Oracle;
        oracle.p_grid = "0:1:0.5".parse().unwrap();
        oracle.q_grid = "0:1:0.5".parse().unwrap();
        assert_eq!(run_sweep(&oracle).unwrap().len(), 9);
    }

    #[test]
    fn amplitude_damping_rows_have_no_coefficients_past_zero() {
        let rows = run_sweep(&cfg("A:ad(p)", &[CoherenceMeasure::L1])).unwrap();
        assert!(rows[0].coeffs.is_some());
        assert!(rows[1..].iter().all(|r| r.coeffs.is_none()));
    }

    #[test]
    fn oracle_cap_enforced() {
        let mut c = cfg("A:bf(p)^100", &[CoherenceMeasure::L1]);
        c.engine = Engine::Oracle;
        c.n_list = vec![101];
        assert!(matches!(run_sweep(&c), Err(SweepError::InvalidConfig(_))));
    }

    #[test]
    fn oracle_matches_closed_form_with_matching_convention() {
        let measures = [CoherenceMeasure::L1, CoherenceMeasure::RelativeEntropy];
        for (spec, convention) in [
            ("A:bpf(p)", Convention::BothSides),
            ("A:dep(p)", Convention::OneSided),
            ("A:ad(p)", Convention::OneSided),
            ("A:gad(p)^2", Convention::BothSides),
            ("A:pf(p); B:bpf(q)", Convention::OneSided),
        ] {
            let mut closed = cfg(spec, &measures);
            closed.p_grid = "0:1:0.1".parse().unwrap();
            closed.q_grid = "0:1:0.2".parse().unwrap();
            closed.n_list = vec![1, 3];
            let mut oracle = closed.clone();
            oracle.engine = Engine::Oracle;
            oracle.convention = convention;
            let a = run_sweep(&closed).unwrap();
            let b = run_sweep(&oracle).unwrap();
            for (x, y) in a.iter().zip(&b) {
                for m in measures {
                    let d = (x.measure(m).unwrap() - y.measure(m).unwrap()).abs();
                    assert!(d <= 1e-10, "{spec} {m} {x:?} {y:?}");
                }
            }
        }
    }
}
