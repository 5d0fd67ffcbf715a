//! CSV rendering of sweep rows.

use std::io::{self, Write};

use crate::sweep::{SampleRow, SweepConfig};
use bellcoh_core::ChannelKind;

pub const HEADER: &str = "p,q,n,c1,c2,c3,C_l1,C_r";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `%.12g`: 12 significant digits, trailing zeros trimmed, exponent form
/// outside `1e-5 ≤ |x| < 1e12`.
pub fn fmt_g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn cell(x: Option<f64>) -> String {
    x.map(fmt_g12).unwrap_or_default()
}

/// Writes `#` metadata, the header and one line per row.
pub fn emit_csv<W: Write>(out: &mut W, rows: &[SampleRow], cfg: &SweepConfig) -> io::Result<()> {
    let s = cfg.state;
    writeln!(out, "# bellcoh {VERSION}")?;
    writeln!(
        out,
        "# state: c1={}, c2={}, c3={}",
        fmt_g12(s.c1),
        fmt_g12(s.c2),
        fmt_g12(s.c3)
    )?;
    writeln!(out, "# spec: {}", cfg.spec)?;
    match cfg.engine {
        crate::sweep::Engine::ClosedForm => writeln!(out, "# engine: closedform")?,
        crate::sweep::Engine::Oracle => writeln!(out, "# engine: oracle ({})", cfg.convention)?,
    }
    let measures: Vec<&str> = cfg.measures.iter().map(|m| m.name()).collect();
    writeln!(out, "# measures: {}", measures.join(","))?;
    let p_axis = if cfg.spec.involves(ChannelKind::GeneralizedAmplitudeDamping) {
        "p (= gamma for GAD)"
    } else {
        "p"
    };
    let p_grid = if cfg.spec.uses_p() {
        cfg.p_grid.to_string()
    } else {
        "unused".into()
    };
    let q_grid = if cfg.spec.uses_q() {
        cfg.q_grid.to_string()
    } else {
        "unused".into()
    };
    writeln!(out, "# axes: {p_axis} grid {p_grid}; q grid {q_grid}")?;
    let ns: Vec<String> = cfg.effective_n().iter().map(u64::to_string).collect();
    writeln!(out, "# n: {}", ns.join(","))?;
    writeln!(out, "{HEADER}")?;
    for r in rows {
        let (c1, c2, c3) = match r.coeffs {
            Some(c) => (Some(c.c1), Some(c.c2), Some(c.c3)),
            None => (None, None, None),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            fmt_g12(r.p),
            fmt_g12(r.q),
            r.n,
            cell(c1),
            cell(c2),
            cell(c3),
            cell(r.l1),
            cell(r.rel),
        )?;
    }
    Ok(())
}

/// [`emit_csv`] into a byte buffer.
pub fn render_csv(rows: &[SampleRow], cfg: &SweepConfig) -> Vec<u8> {
    let mut buf = Vec::new();
    emit_csv(&mut buf, rows, cfg).expect("writing to a Vec cannot fail");
    buf
}
