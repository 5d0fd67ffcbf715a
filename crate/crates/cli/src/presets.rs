//! Named sweeps reproducing the published figure panels.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use bellcoh_core::{CoherenceMeasure, EXAMPLE_STATE};
use thiserror::Error;

use crate::csv::emit_csv;
use crate::spec::parse_channel_spec;
use crate::sweep::{run_sweep, SweepConfig, SweepError};

pub const PRESET_NAMES: [&str; 18] = [
    "fig1a", "fig1b", "fig2a", "fig2b", "fig2c", "fig2d", "fig2e", "fig2f", "fig3", "fig4",
    "fig5a", "fig5b", "fig6a", "fig6b", "fig6c", "fig7a", "fig7b", "fig7c",
];

const REPEAT_LIST: [u64; 5] = [1, 2, 3, 10, 100];

#[derive(Debug, Error)]
pub enum PresetError {
    #[error("unknown preset `{0}` (known: {list})", list = PRESET_NAMES.join(", "))]
    UnknownPreset(String),
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

/// One curve or surface of a panel.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: &'static str,
    pub config: SweepConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub curves: Vec<Curve>,
}

impl Preset {
    /// File name for `curve`; single-curve panels use the panel name alone.
    pub fn file_name(&self, curve: &Curve) -> String {
        if self.curves.len() == 1 {
            format!("{}.csv", self.name)
        } else {
            format!("{}_{}.csv", self.name, curve.label)
        }
    }
}

fn curve(label: &'static str, spec: &str, measure: CoherenceMeasure, n: &[u64]) -> Curve {
    let mut config = SweepConfig::new(
        EXAMPLE_STATE,
        parse_channel_spec(spec).expect("preset specs are valid"),
        vec![measure],
    );
    config.n_list = n.to_vec();
    Curve { label, config }
}

const SINGLE: [(&str, &str); 6] = [
    ("bf", "A:bf(p)"),
    ("pf", "A:pf(p)"),
    ("bpf", "A:bpf(p)"),
    ("dep", "A:dep(p)"),
    ("ad", "A:ad(p)"),
    ("gad", "A:gad(p)"),
];

fn same_pairs(reps: u32) -> Vec<(&'static str, String)> {
    let r = if reps == 1 {
        String::new()
    } else {
        format!("^{reps}")
    };
    vec![
        ("bf-bf", format!("A:bf(p){r}; B:bf(q){r}")),
        ("pf-pf", format!("A:pf(p){r}; B:pf(q){r}")),
        ("bpf-bpf", format!("A:bpf(p){r}; B:bpf(q){r}")),
    ]
}

fn mixed_pair(which: char, reps: u32) -> String {
    let r = if reps == 1 {
        String::new()
    } else {
        format!("^{reps}")
    };
    let (a, b) = match which {
        'a' => ("bf", "pf"),
        'b' => ("bf", "bpf"),
        _ => ("pf", "bpf"),
    };
    format!("A:{a}(p){r}; B:{b}(q){r}")
}

/// Looks up a preset by name.
pub fn figure_preset(name: &str) -> Result<Preset, PresetError> {
    use CoherenceMeasure::{RelativeEntropy as Rel, L1};
    let key = PRESET_NAMES
        .iter()
        .copied()
        .find(|k| k.eq_ignore_ascii_case(name.trim()))
        .ok_or_else(|| PresetError::UnknownPreset(name.to_string()))?;
    let curves = match key {
        "fig1a" | "fig1b" => {
            let m = if key == "fig1a" { Rel } else { L1 };
            SINGLE.iter().map(|(l, s)| curve(l, s, m, &[1])).collect()
        }
        "fig2a" | "fig2b" | "fig2c" | "fig2d" | "fig2e" | "fig2f" => {
            let (label, spec) = match key {
                "fig2a" => SINGLE[0],
                "fig2b" => SINGLE[1],
                "fig2c" => SINGLE[2],
                "fig2d" => SINGLE[3],
                "fig2e" => SINGLE[5],
                _ => SINGLE[4],
            };
            vec![curve(label, spec, Rel, &REPEAT_LIST)]
        }
        "fig3" => vec![curve("ad-ad", "A:ad(p); B:ad(p)", Rel, &REPEAT_LIST)],
        "fig4" | "fig5a" | "fig5b" => {
            let reps = match key {
                "fig4" => 1,
                "fig5a" => 10,
                _ => 100,
            };
            same_pairs(reps)
                .iter()
                .map(|(l, s)| curve(l, s, Rel, &[1]))
                .collect()
        }
        _ => {
            let which = key.chars().last().unwrap();
            let reps = if key.starts_with("fig7") { 10 } else { 1 };
            let label = match which {
                'a' => "bf-pf",
                'b' => "bf-bpf",
                _ => "pf-bpf",
            };
            vec![curve(label, &mixed_pair(which, reps), Rel, &[1])]
        }
    };
    Ok(Preset { name: key, curves })
}

/// Runs every curve of `name` and writes its CSV files into `dir`.
pub fn write_preset(name: &str, dir: &Path) -> Result<Vec<PathBuf>, PresetError> {
    let preset = figure_preset(name)?;
    fs::create_dir_all(dir).map_err(|source| PresetError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::with_capacity(preset.curves.len());
    for c in &preset.curves {
        let rows = run_sweep(&c.config)?;
        let path = dir.join(preset.file_name(c));
        let io_err = |source| PresetError::Io {
            path: path.clone(),
            source,
        };
        let mut file = io::BufWriter::new(fs::File::create(&path).map_err(io_err)?);
        emit_csv(&mut file, &rows, &c.config).map_err(io_err)?;
        io::Write::flush(&mut file).map_err(io_err)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_resolve() {
        for name in PRESET_NAMES {
            let p = figure_preset(name).unwrap();
            assert!(!p.curves.is_empty());
            for c in &p.curves {
                c.config.validate().unwrap();
            }
        }
    }

    #[test]
    fn fig1b_is_six_l1_curves() {
        let p = figure_preset("fig1b").unwrap();
        assert_eq!(p.curves.len(), 6);
        assert!(p
            .curves
            .iter()
            .all(|c| c.config.measures == vec![CoherenceMeasure::L1]));
        assert_eq!(p.file_name(&p.curves[2]), "fig1b_bpf.csv");
    }

    #[test]
    fn fig7a_shape() {
        let p = figure_preset("FIG7A").unwrap();
        assert_eq!(p.curves.len(), 1);
        let spec = p.curves[0].config.spec;
        assert_eq!(spec.to_string(), "A:bf(p)^10; B:pf(q)^10");
        assert_eq!(p.file_name(&p.curves[0]), "fig7a.csv");
    }

    #[test]
    fn unknown_preset() {
        assert!(matches!(
            figure_preset("fig0"),
            Err(PresetError::UnknownPreset(_))
        ));
    }
}
