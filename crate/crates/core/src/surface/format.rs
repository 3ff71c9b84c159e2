//! Line-oriented surface description format.
//!
//! ```text
//! # genus-2 theta graph
//! genus 2
//! pants A
//! pants B
//! curve c0 A.0 B.0 len=0.5 twist=0
//! curve c1 A.1 B.1 len=0.9 twist=0.1
//! curve c2 A.2 B.2 len=1.2 twist=-0.3 mark=1
//! assert systole_certified
//! ```
//!
//! Tokens are whitespace separated and `#` starts a comment. `genus` is
//! optional and cross-checked. Positive twists are left twists. Pants and
//! curve ids may be any token without `.`, `=` or `#`.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{CurvePairing, FnCoordinates, PantsDecomposition, Slot, ValidationError};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A parsed surface file.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceDocument<T> {
    pub decomposition: PantsDecomposition,
    pub coordinates: FnCoordinates<T>,
    /// `assert systole_certified` was present.
    pub systole_asserted: bool,
}

impl<T: Real> SurfaceDocument<T> {
    pub fn genus(&self) -> usize {
        self.decomposition.genus()
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &body[s..i], column: body[..s].chars().count() + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &body[s..], column: body[..s].chars().count() + 1 });
    }
    out
}

struct RawCurve<T> {
    id: String,
    sides: [(String, u8, usize); 2],
    len: T,
    twist: T,
    marked: bool,
    line: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse(ParseError { line, column, message: message.into() })
}

fn valid_id(s: &str) -> bool {
    !s.is_empty() && !s.contains(['.', '=', '#'])
}

fn parse_float<T: Real>(s: &str, line: usize, column: usize, what: &str) -> Result<T> {
    T::from_str_radix(s, 10).map_err(|_| err(line, column, format!("invalid {what} value {s:?}")))
}

fn parse_slot(tok: &Token<'_>, line: usize) -> Result<(String, u8, usize)> {
    let (pants, pos) = tok
        .text
        .rsplit_once('.')
        .ok_or_else(|| err(line, tok.column, format!("expected <pants>.<slot>, got {:?}", tok.text)))?;
    let pos: u8 = match pos {
        "0" => 0,
        "1" => 1,
        "2" => 2,
        _ => return Err(err(line, tok.column, format!("slot position must be 0, 1 or 2, got {pos:?}"))),
    };
    if !valid_id(pants) {
        return Err(err(line, tok.column, format!("invalid pants id {pants:?}")));
    }
    Ok((pants.to_string(), pos, tok.column))
}

/// Parse and validate a surface description.
pub fn parse_surface<T: Real>(text: &str) -> Result<SurfaceDocument<T>> {
    let mut declared_genus = None;
    let mut pants: Vec<String> = Vec::new();
    let mut pants_index: HashMap<String, usize> = HashMap::new();
    let mut raw: Vec<RawCurve<T>> = Vec::new();
    let mut systole_asserted = false;

    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let toks = tokenize(line);
        let Some(head) = toks.first() else { continue };
        match head.text {
            "genus" => {
                let [_, g] = toks.as_slice() else {
                    return Err(err(line_no, head.column, "expected `genus <g>`"));
                };
                let v: usize =
                    g.text.parse().map_err(|_| err(line_no, g.column, format!("invalid genus {:?}", g.text)))?;
                if declared_genus.replace(v).is_some() {
                    return Err(err(line_no, head.column, "genus declared twice"));
                }
            }
            "pants" => {
                let [_, id] = toks.as_slice() else {
                    return Err(err(line_no, head.column, "expected `pants <id>`"));
                };
                if !valid_id(id.text) {
                    return Err(err(line_no, id.column, format!("invalid pants id {:?}", id.text)));
                }
                if pants_index.insert(id.text.to_string(), pants.len()).is_some() {
                    return Err(Error::Validation(ValidationError::DuplicateId {
                        kind: "pants",
                        id: id.text.to_string(),
                    }));
                }
                pants.push(id.text.to_string());
            }
            "curve" => {
                if toks.len() < 4 {
                    return Err(err(line_no, head.column, "expected `curve <id> <p>.<s> <q>.<s> len=<x> twist=<t>`"));
                }
                let id = &toks[1];
                if !valid_id(id.text) {
                    return Err(err(line_no, id.column, format!("invalid curve id {:?}", id.text)));
                }
                let a = parse_slot(&toks[2], line_no)?;
                let b = parse_slot(&toks[3], line_no)?;
                let (mut len, mut twist, mut mark) = (None, None, None);
                for kv in &toks[4..] {
                    let (key, value) = kv
                        .text
                        .split_once('=')
                        .ok_or_else(|| err(line_no, kv.column, format!("expected key=value, got {:?}", kv.text)))?;
                    let vcol = kv.column + key.chars().count() + 1;
                    let slot = match key {
                        "len" => &mut len,
                        "twist" => &mut twist,
                        "mark" => {
                            let m = match value {
                                "0" => false,
                                "1" => true,
                                _ => return Err(err(line_no, vcol, format!("mark must be 0 or 1, got {value:?}"))),
                            };
                            if mark.replace(m).is_some() {
                                return Err(err(line_no, kv.column, "mark given twice"));
                            }
                            continue;
                        }
                        _ => return Err(err(line_no, kv.column, format!("unknown key {key:?}"))),
                    };
                    if slot.replace(parse_float::<T>(value, line_no, vcol, key)?).is_some() {
                        return Err(err(line_no, kv.column, format!("{key} given twice")));
                    }
                }
                let end = toks.last().map(|t| t.column).unwrap_or(1);
                raw.push(RawCurve {
                    id: id.text.to_string(),
                    sides: [a, b],
                    len: len.ok_or_else(|| err(line_no, end, "missing len="))?,
                    twist: twist.ok_or_else(|| err(line_no, end, "missing twist="))?,
                    marked: mark.unwrap_or(false),
                    line: line_no,
                });
            }
            "assert" => match toks.as_slice() {
                [_, flag] if flag.text == "systole_certified" => systole_asserted = true,
                [_, flag] => return Err(err(line_no, flag.column, format!("unknown assertion {:?}", flag.text))),
                _ => return Err(err(line_no, head.column, "expected `assert systole_certified`")),
            },
            other => return Err(err(line_no, head.column, format!("unknown directive {other:?}"))),
        }
    }

    let mut curves = Vec::with_capacity(raw.len());
    for rc in &raw {
        let mut sides = [Slot::new(0, 0); 2];
        for (k, (p, pos, col)) in rc.sides.iter().enumerate() {
            let idx = *pants_index
                .get(p)
                .ok_or_else(|| err(rc.line, *col, format!("curve {}: unknown pants {p:?}", rc.id)))?;
            sides[k] = Slot::new(idx, *pos);
        }
        curves.push(CurvePairing { sides, marked: rc.marked });
    }
    let decomposition = PantsDecomposition::new(pants, raw.iter().map(|c| c.id.clone()).collect(), curves)?;
    if let Some(g) = declared_genus {
        if g != decomposition.genus() {
            return Err(ValidationError::GenusMismatch { declared: g, computed: decomposition.genus() }.into());
        }
    }
    let coordinates = FnCoordinates::for_decomposition(
        &decomposition,
        raw.iter().map(|c| c.len).collect(),
        raw.iter().map(|c| c.twist).collect(),
    )?;
    Ok(SurfaceDocument { decomposition, coordinates, systole_asserted })
}

/// Canonical serialization; [`parse_surface`] inverts it bit-exactly.
pub fn to_text<T: Real>(doc: &SurfaceDocument<T>) -> String {
    let d = &doc.decomposition;
    let mut out = String::new();
    let _ = writeln!(out, "genus {}", d.genus());
    for p in d.pants_labels() {
        let _ = writeln!(out, "pants {p}");
    }
    let lengths = doc.coordinates.lengths();
    let twists = doc.coordinates.twists();
    for (i, c) in d.curves().iter().enumerate() {
        let side = |s: Slot| format!("{}.{}", d.pants_labels()[s.pants], s.position);
        // Debug keeps the shortest round-trip representation and switches to
        // exponent form for extreme magnitudes.
        let _ = write!(
            out,
            "curve {} {} {} len={:?} twist={:?}",
            d.curve_labels()[i],
            side(c.sides[0]),
            side(c.sides[1]),
            lengths[i],
            twists[i]
        );
        if c.marked {
            out.push_str(" mark=1");
        }
        out.push('\n');
    }
    if doc.systole_asserted {
        out.push_str("assert systole_certified\n");
    }
    out
}
