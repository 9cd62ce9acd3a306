//! Plain-text design files.
//!
//! ```text
//! # a 1-spread of PG(3,2)
//! pg 4
//! kind spread 4 2
//! D, BC, BCD
//! C, AB, ABC
//! ...
//! ```
//!
//! The first two non-blank lines are the geometry (`pg <n>`) and the kind
//! (`kind spread <u> <h>` or `kind star <n> <t> <t0>`). Every following line
//! is one flat (a ray, for stars) as comma-separated effects. `#` starts a
//! comment. Effects are letter words, or decimal Yates indices in numeric
//! notation.

use std::fmt::Write as _;

use crate::design::{Design, Flat, Spread, Star};
use crate::error::{Error, Result};
use crate::gf2::{check_dim, yates_index, Point};

/// How effects are written.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Notation {
    #[default]
    Letters,
    Numeric,
}

impl Notation {
    pub fn parse_point(self, word: &str, n: usize) -> Result<Point> {
        match self {
            Notation::Letters => Point::parse_label(word, n),
            Notation::Numeric => word
                .parse::<usize>()
                .ok()
                .and_then(|i| Point::from_yates(i, n))
                .ok_or_else(|| Error::InvalidEffect(word.to_string())),
        }
    }

    pub fn format_point(self, p: Point) -> String {
        match self {
            Notation::Letters => p.label(),
            Notation::Numeric => yates_index(p).to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Spread { u: usize, h: usize },
    Star { n: usize, t: usize, t0: usize },
}

/// A syntactically valid design file whose structure has not been checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDesign {
    pub n: usize,
    pub kind: Kind,
    /// Source line of each flat, for error messages.
    pub lines: Vec<usize>,
    pub flats: Vec<Vec<Point>>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_numbers(words: &[&str], line: usize) -> Result<Vec<usize>> {
    words
        .iter()
        .map(|w| {
            w.parse::<usize>()
                .map_err(|_| parse_err(line, format!("expected an integer, found {w:?}")))
        })
        .collect()
}

pub fn parse_raw(text: &str, notation: Notation) -> Result<RawDesign> {
    let mut n = None;
    let mut kind = None;
    let mut flats = Vec::new();
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match (n, kind) {
            (None, _) => {
                if words.len() != 2 || words[0] != "pg" {
                    return Err(parse_err(line_no, "expected `pg <n>`"));
                }
                let dim = parse_numbers(&words[1..], line_no)?[0];
                check_dim(dim).map_err(|e| parse_err(line_no, e.to_string()))?;
                n = Some(dim);
            }
            (Some(dim), None) => {
                if words.first() != Some(&"kind") || words.len() < 2 {
                    return Err(parse_err(
                        line_no,
                        "expected `kind spread <u> <h>` or `kind star <n> <t> <t0>`",
                    ));
                }
                let params = parse_numbers(&words[2..], line_no)?;
                let k = match (words[1], params.as_slice()) {
                    ("spread", &[u, h]) => Kind::Spread { u, h },
                    ("star", &[sn, t, t0]) => Kind::Star { n: sn, t, t0 },
                    _ => {
                        return Err(parse_err(
                            line_no,
                            "expected `kind spread <u> <h>` or `kind star <n> <t> <t0>`",
                        ))
                    }
                };
                let declared = match k {
                    Kind::Spread { u, .. } => u,
                    Kind::Star { n, .. } => n,
                };
                if declared != dim {
                    return Err(parse_err(
                        line_no,
                        format!("kind dimension {declared} disagrees with pg {dim}"),
                    ));
                }
                kind = Some(k);
            }
            (Some(dim), Some(_)) => {
                let pts = line
                    .split(',')
                    .map(|w| {
                        notation
                            .parse_point(w.trim(), dim)
                            .map_err(|e| parse_err(line_no, e.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                flats.push(pts);
                lines.push(line_no);
            }
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing `pg` header"))?;
    let kind = kind.ok_or_else(|| parse_err(0, "missing `kind` header"))?;
    Ok(RawDesign {
        n,
        kind,
        lines,
        flats,
    })
}

impl RawDesign {
    pub fn to_flats(&self) -> Result<Vec<Flat>> {
        self.flats
            .iter()
            .zip(&self.lines)
            .map(|(pts, &line)| Flat::new(pts.clone()).map_err(|e| parse_err(line, e.to_string())))
            .collect()
    }

    /// Checks structure and builds the design.
    pub fn build(&self) -> Result<Design> {
        let flats = self.to_flats()?;
        Ok(match self.kind {
            Kind::Spread { u, h } => Design::Spread(Spread::new(u, h, flats)?),
            Kind::Star { n, t, t0 } => Design::Star(Star::new(n, t, t0, flats)?),
        })
    }
}

pub fn parse(text: &str, notation: Notation) -> Result<Design> {
    parse_raw(text, notation)?.build()
}

/// Canonical text form; flats and points keep their display order.
pub fn write(design: &Design, notation: Notation) -> String {
    let mut out = String::new();
    writeln!(out, "pg {}", design.n()).unwrap();
    match design {
        Design::Spread(s) => writeln!(out, "kind spread {} {}", s.u(), s.h()).unwrap(),
        Design::Star(s) => writeln!(out, "kind star {} {} {}", s.n(), s.t(), s.t0()).unwrap(),
    }
    for f in design.flats() {
        let words: Vec<String> = f
            .display_points()
            .iter()
            .map(|&p| notation.format_point(p))
            .collect();
        writeln!(out, "{}", words.join(", ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parse_with_comments_and_spacing() {
        let text = "# psi\npg 4\nkind spread 4 2   # u h\n\nD,BC , BCD\nC, AB, ABC\nB, ACD, ABCD\nA, BD, ABD\nCD, AC, AD\n";
        let d = parse(text, Notation::Letters).unwrap();
        let Design::Spread(s) = &d else {
            panic!("expected spread")
        };
        assert_eq!(s, &fixtures::psi1());
        assert_eq!(write(&d, Notation::Letters), fixtures::PSI1);
    }

    #[test]
    fn numeric_notation() {
        let d = parse(fixtures::PSI1, Notation::Letters).unwrap();
        let text = write(&d, Notation::Numeric);
        assert!(text.contains("\n8, 6, 14\n"));
        let back = parse(&text, Notation::Numeric).unwrap();
        assert_eq!(back.flats(), d.flats());
    }

    #[test]
    fn error_corpus() {
        let cases = [
            ("", "missing"),
            ("pg 4\n", "missing `kind`"),
            ("pg x\n", "integer"),
            ("pg 0\nkind spread 0 0\n", "out of range"),
            ("kind spread 4 2\n", "pg"),
            ("pg 4\nkind spread 5 2\n", "disagrees"),
            ("pg 4\nkind circle 4 2\n", "kind"),
            ("pg 4\nkind spread 4\n", "kind"),
            ("pg 4\nkind spread 4 2\nA, E, AE\n", "invalid effect"),
            ("pg 4\nkind spread 4 2\nA, B\n", "not a flat"),
        ];
        for (text, needle) in cases {
            let err = parse(text, Notation::Letters).unwrap_err().to_string();
            assert!(err.contains(needle), "{text:?}: {err}");
        }
        // structurally invalid: a flat missing
        let short: String = fixtures::PSI1
            .lines()
            .take(6)
            .map(|l| format!("{l}\n"))
            .collect();
        assert!(matches!(
            parse(&short, Notation::Letters),
            Err(Error::InvalidSpread(_))
        ));
        assert!(matches!(
            parse("pg 4\nkind spread 4 2\n1, 2, 3\n", Notation::Letters),
            Err(Error::Parse { line: 3, .. })
        ));
    }
}
