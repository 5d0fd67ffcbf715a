use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bellcoh::consistency::{consistency_report, write_report_csv, DEFAULT_SAMPLES, DEFAULT_STEP};
use bellcoh::csv::emit_csv;
use bellcoh::presets::{write_preset, PresetError, PRESET_NAMES};
use bellcoh::spec::ChannelSpec;
use bellcoh::sweep::{run_sweep, Convention, Engine, Grid, SweepConfig, SweepError};
use bellcoh_core::{frozen_scan, BellCoeffs, CoherenceMeasure};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bellcoh",
    version,
    about = "Coherence of Bell-diagonal states under local noise"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a channel spec over (p, q, n) and write CSV.
    Sweep {
        #[command(flatten)]
        common: SweepArgs,
        /// Comma-separated measures: l1, rel.
        #[arg(long, default_value = "l1,rel", value_parser = parse_measures)]
        measures: Measures,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the CSV files of a figure preset, or of every preset with `all`.
    Figure {
        preset: String,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Report whether a measure stays constant along a sweep.
    Frozen {
        #[command(flatten)]
        common: SweepArgs,
        #[arg(long, default_value = "l1")]
        measure: CoherenceMeasure,
    },
    /// Match every closed-form family against both Kraus conventions.
    CheckConsistency {
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Also write the report as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Correlation triple `c1,c2,c3`.
    #[arg(long, default_value = "0.3,-0.4,0.56", value_parser = parse_state, allow_hyphen_values = true)]
    state: BellCoeffs,
    /// Channel spec, e.g. `A:bf(p)^10; B:pf(q)^10`.
    #[arg(long)]
    spec: ChannelSpec,
    #[arg(long, default_value = "closedform")]
    engine: Engine,
    /// Oracle convention: one-sided or both-sides.
    #[arg(long, default_value = "one-sided")]
    convention: Convention,
    #[arg(long, default_value = "0:1:0.01")]
    p_grid: Grid,
    #[arg(long, default_value = "0:1:0.01")]
    q_grid: Grid,
    /// Comma-separated repetition multipliers.
    #[arg(long, default_value = "1", value_delimiter = ',')]
    n: Vec<u64>,
}

#[derive(Clone)]
struct Measures(Vec<CoherenceMeasure>);

fn parse_measures(s: &str) -> Result<Measures, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let m = part
            .parse::<CoherenceMeasure>()
            .map_err(|e| e.to_string())?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    if out.is_empty() {
        return Err("no measure given".into());
    }
    Ok(Measures(out))
}

fn parse_state(s: &str) -> Result<BellCoeffs, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [c1, c2, c3] => BellCoeffs::new(c1, c2, c3).map_err(|e| e.to_string()),
        _ => Err(format!(
            "expected three comma-separated numbers, got {}",
            parts.len()
        )),
    }
}

impl SweepArgs {
    fn config(self, measures: Vec<CoherenceMeasure>) -> SweepConfig {
        SweepConfig {
            state: self.state,
            spec: self.spec,
            p_grid: self.p_grid,
            q_grid: self.q_grid,
            n_list: self.n,
            engine: self.engine,
            convention: self.convention,
            measures,
        }
    }
}

enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<SweepError> for Failure {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::Numerical { .. } => Failure::Numerical(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<PresetError> for Failure {
    fn from(e: PresetError) -> Self {
        match e {
            PresetError::Sweep(s) => s.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn io_failure(path: &Path) -> impl Fn(io::Error) -> Failure + '_ {
    move |e| Failure::Usage(format!("cannot write {}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    match cli.command {
        Command::Sweep {
            common,
            measures,
            out,
        } => {
            let cfg = common.config(measures.0);
            let rows = run_sweep(&cfg)?;
            match out {
                Some(path) => {
                    let file = fs::File::create(&path).map_err(io_failure(&path))?;
                    let mut w = io::BufWriter::new(file);
                    emit_csv(&mut w, &rows, &cfg).map_err(io_failure(&path))?;
                    w.flush().map_err(io_failure(&path))?;
                }
                None => emit_csv(&mut stdout.lock(), &rows, &cfg)
                    .map_err(|e| Failure::Usage(e.to_string()))?,
            }
        }
        Command::Figure { preset, out_dir } => {
            let names: Vec<&str> = if preset.eq_ignore_ascii_case("all") {
                PRESET_NAMES.to_vec()
            } else {
                vec![preset.as_str()]
            };
            for name in names {
                for path in write_preset(name, &out_dir)? {
                    println!("{}", path.display());
                }
            }
        }
        Command::Frozen { common, measure } => {
            let cfg = common.config(vec![measure]);
            let rows = run_sweep(&cfg)?;
            let values: Vec<((u64, f64, f64), f64)> = rows
                .iter()
                .map(|r| {
                    (
                        (r.n, r.p, r.q),
                        r.measure(measure).expect("requested measure"),
                    )
                })
                .collect();
            let report =
                frozen_scan(measure, &values).map_err(|e| Failure::Usage(e.to_string()))?;
            println!("{report}");
        }
        Command::CheckConsistency { step, samples, out } => {
            if !(step > 0.0 && step <= 0.5) {
                return Err(Failure::Usage(format!(
                    "--step {step} must lie in (0, 0.5]"
                )));
            }
            let rows = consistency_report(samples, step);
            println!(
                "{:<14} {:<11} {:>14} {:>14}",
                "family", "convention", "dev_one_sided", "dev_both"
            );
            for r in &rows {
                println!(
                    "{:<14} {:<11} {:>14.3e} {:>14.3e}",
                    r.table_row, r.convention, r.dev_one_sided, r.dev_both
                );
            }
            if let Some(path) = out {
                let file = fs::File::create(&path).map_err(io_failure(&path))?;
                let mut w = io::BufWriter::new(file);
                write_report_csv(&mut w, &rows).map_err(io_failure(&path))?;
                w.flush().map_err(io_failure(&path))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical error: {msg}");
            ExitCode::from(2)
        }
    }
}
