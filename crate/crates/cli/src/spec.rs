//! Channel specifications such as `A:bf(p)^10; B:pf(q)^10`.
//!
//! ```text
//! spec := side (';' side)?
//! side := ('A' | 'B') ':' chan
//! chan := name '(' var? ')' ('^' uint)?
//! name := 'bf' | 'pf' | 'bpf' | 'dep' | 'gad' | 'ad' | 'id'
//! var  := 'p' | 'q' | decimal
//! ```
//!
//! Whitespace between tokens is ignored and names are case-insensitive.
//! Only `id` may omit its rate.

use std::fmt;
use std::str::FromStr;

use bellcoh_core::ChannelKind;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("parse error at byte {offset}: expected {}, found {found}", expected.join(" | "))]
    Parse {
        offset: usize,
        expected: Vec<&'static str>,
        found: String,
    },
    #[error("invalid spec at byte {offset}: {message}")]
    Semantic { offset: usize, message: String },
}

impl SpecError {
    pub fn offset(&self) -> usize {
        match self {
            SpecError::Parse { offset, .. } | SpecError::Semantic { offset, .. } => *offset,
        }
    }
}

/// Rate driving a channel: one of the sweep variables or a fixed value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rate {
    P,
    Q,
    Const(f64),
}

impl Rate {
    pub fn eval(self, p: f64, q: f64) -> f64 {
        match self {
            Rate::P => p,
            Rate::Q => q,
            Rate::Const(v) => v,
        }
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rate::P => f.write_str("p"),
            Rate::Q => f.write_str("q"),
            Rate::Const(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideSpec {
    pub kind: ChannelKind,
    /// `None` only for the identity channel.
    pub rate: Option<Rate>,
    pub reps: u32,
}

impl SideSpec {
    pub fn is_identity(&self) -> bool {
        self.kind == ChannelKind::Identity
    }

    /// Rate value at grid point `(p, q)`; the identity channel evaluates to 0.
    pub fn rate_at(&self, p: f64, q: f64) -> f64 {
        self.rate.map_or(0.0, |r| r.eval(p, q))
    }
}

impl fmt::Display for SideSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.kind)?;
        if let Some(rate) = self.rate {
            write!(f, "{rate}")?;
        }
        f.write_str(")")?;
        if self.reps != 1 {
            write!(f, "^{}", self.reps)?;
        }
        Ok(())
    }
}

/// Parsed channel specification: what acts on qubit A and on qubit B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    pub side_a: Option<SideSpec>,
    pub side_b: Option<SideSpec>,
}

impl ChannelSpec {
    pub fn sides(&self) -> impl Iterator<Item = SideSpec> {
        self.side_a.into_iter().chain(self.side_b)
    }

    fn uses(&self, wanted: Rate) -> bool {
        self.sides().any(|s| s.rate == Some(wanted))
    }

    pub fn uses_p(&self) -> bool {
        self.uses(Rate::P)
    }

    pub fn uses_q(&self) -> bool {
        self.uses(Rate::Q)
    }

    pub fn involves(&self, kind: ChannelKind) -> bool {
        self.sides().any(|s| s.kind == kind)
    }
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (label, side) in [("A", self.side_a), ("B", self.side_b)] {
            if let Some(side) = side {
                if !first {
                    f.write_str("; ")?;
                }
                write!(f, "{label}:{side}")?;
                first = false;
            }
        }
        Ok(())
    }
}

impl FromStr for ChannelSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        parse_channel_spec(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn found(&self) -> String {
        match self.src[self.pos..].chars().next() {
            Some(c) => format!("`{c}`"),
            None => "end of input".to_string(),
        }
    }

    fn error(&self, expected: Vec<&'static str>) -> SpecError {
        SpecError::Parse {
            offset: self.pos,
            expected,
            found: self.found(),
        }
    }

    fn expect(&mut self, c: char, label: &'static str) -> Result<(), SpecError> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(vec![label]))
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !pred(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn side_label(&mut self) -> Result<(char, usize), SpecError> {
        match self.peek() {
            Some(c @ ('A' | 'B' | 'a' | 'b')) => {
                let at = self.pos;
                self.pos += 1;
                Ok((c.to_ascii_uppercase(), at))
            }
            _ => Err(self.error(vec!["`A`", "`B`"])),
        }
    }

    fn channel_name(&mut self) -> Result<ChannelKind, SpecError> {
        self.skip_ws();
        let start = self.pos;
        let word = self.take_while(|c| c.is_ascii_alphabetic());
        match word.parse::<ChannelKind>() {
            Ok(kind) => Ok(kind),
            Err(_) => {
                self.pos = start;
                let mut err = self.error(vec!["channel name (bf, pf, bpf, dep, gad, ad, id)"]);
                if let (SpecError::Parse { found, .. }, false) = (&mut err, word.is_empty()) {
                    *found = format!("`{word}`");
                }
                Err(err)
            }
        }
    }

    fn rate(&mut self) -> Result<Option<(Rate, usize)>, SpecError> {
        let at = match self.peek() {
            Some(')') => return Ok(None),
            Some(_) => self.pos,
            None => return Err(self.error(vec!["`p`", "`q`", "decimal", "`)`"])),
        };
        match self.src[self.pos..].chars().next() {
            Some('p' | 'P') => {
                self.pos += 1;
                Ok(Some((Rate::P, at)))
            }
            Some('q' | 'Q') => {
                self.pos += 1;
                Ok(Some((Rate::Q, at)))
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let int = self.take_while(|c| c.is_ascii_digit());
                let mut frac = "";
                if self.src[self.pos..].starts_with('.') {
                    self.pos += 1;
                    frac = self.take_while(|c| c.is_ascii_digit());
                }
                if int.is_empty() && frac.is_empty() {
                    self.pos = at + 1;
                    return Err(self.error(vec!["digit"]));
                }
                let text = &self.src[at..self.pos];
                let value = text.parse::<f64>().map_err(|_| SpecError::Semantic {
                    offset: at,
                    message: format!("bad decimal `{text}`"),
                })?;
                Ok(Some((Rate::Const(value), at)))
            }
            _ => Err(self.error(vec!["`p`", "`q`", "decimal", "`)`"])),
        }
    }

    fn reps(&mut self) -> Result<u32, SpecError> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(self.error(vec!["unsigned integer"]));
        }
        let reps = digits.parse::<u32>().map_err(|_| SpecError::Semantic {
            offset: at,
            message: format!("repetition count `{digits}` is too large"),
        })?;
        if reps == 0 {
            return Err(SpecError::Semantic {
                offset: at,
                message: "repetition count must be at least 1".into(),
            });
        }
        Ok(reps)
    }

    fn side(&mut self) -> Result<(char, usize, SideSpec), SpecError> {
        let (label, at) = self.side_label()?;
        self.expect(':', "`:`")?;
        self.skip_ws();
        let name_at = self.pos;
        let kind = self.channel_name()?;
        self.expect('(', "`(`")?;
        let rate = self.rate()?;
        self.expect(')', "`)`")?;
        let reps = self.reps()?;

        let rate = match rate {
            Some((Rate::Const(v), rate_at)) if !(0.0..=1.0).contains(&v) => {
                return Err(SpecError::Semantic {
                    offset: rate_at,
                    message: format!("constant rate {v} lies outside [0, 1]"),
                })
            }
            Some((r, _)) => Some(r),
            None if kind.takes_rate() => {
                return Err(SpecError::Semantic {
                    offset: name_at,
                    message: format!("channel `{kind}` needs a rate (p, q or a constant)"),
                })
            }
            None => None,
        };
        Ok((label, at, SideSpec { kind, rate, reps }))
    }
}

/// Parses a channel specification.
pub fn parse_channel_spec(text: &str) -> Result<ChannelSpec, SpecError> {
    let mut parser = Parser { src: text, pos: 0 };
    let mut spec = ChannelSpec {
        side_a: None,
        side_b: None,
    };
    loop {
        let (label, at, side) = parser.side()?;
        let slot = if label == 'A' {
            &mut spec.side_a
        } else {
            &mut spec.side_b
        };
        if slot.is_some() {
            return Err(SpecError::Semantic {
                offset: at,
                message: format!("side {label} given twice"),
            });
        }
        *slot = Some(side);

        match parser.peek() {
            None => break,
            Some(';') if spec.side_a.is_none() || spec.side_b.is_none() => parser.pos += 1,
            Some(';') => {
                return Err(SpecError::Semantic {
                    offset: parser.pos,
                    message: "at most two sides may be given".into(),
                })
            }
            Some(_) => return Err(parser.error(vec!["`;`", "`^`", "end of input"])),
        }
    }
    Ok(spec)
}
