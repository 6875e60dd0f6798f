//! Line-oriented text files for arrangements, spectra, incidence data and
//! point sets.
//!
//! ```text
//! # comment
//! name fermat:3              optional catalog name
//! field EXT Q [1,1,1]        ground field
//! line [1,0] [0,0] [-1,0]    one row per line a x + b y + c z = 0
//!
//! spectrum d=45              or a spectrum block
//! t 3 120
//! profile 3 8
//! flags complete
//!
//! incidence d=7              or explicit point memberships
//! members 0 1 2
//! flags complete
//! ```
//!
//! Point files use `field` plus `point x y z` rows.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::arrangement::{abstract_spectrum, CoordArrangement, IncidenceStructure, Spectrum, SpectrumFlags};
use crate::fields::{field_make, parse_descriptor, parse_value, Field, Value};
use crate::projective::{ProjLine, ProjPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

#[derive(Clone, Debug)]
pub enum Body {
    Lines(CoordArrangement),
    Spectrum(Spectrum),
    Incidence(IncidenceStructure),
}

#[derive(Clone, Debug)]
pub struct ArrangementFile {
    pub name: Option<String>,
    pub body: Body,
}

impl ArrangementFile {
    pub fn kind(&self) -> &'static str {
        match self.body {
            Body::Lines(_) => "coordinates",
            Body::Spectrum(_) => "spectrum",
            Body::Incidence(_) => "incidence",
        }
    }
}

#[derive(PartialEq)]
enum Block {
    None,
    Lines,
    Spectrum(usize),
    Incidence(usize),
}

fn parse_count(no: usize, tok: Option<&str>, what: &str) -> Result<usize, ParseError> {
    match tok {
        Some(t) => t.parse().or_else(|_| err(no, format!("{what}: {t:?} is not a count"))),
        None => err(no, format!("missing {what}")),
    }
}

fn parse_size(no: usize, tok: Option<&str>) -> Result<usize, ParseError> {
    match tok.and_then(|t| t.strip_prefix("d=")) {
        Some(v) => parse_count(no, Some(v), "d"),
        None => err(no, "expected d=<lines>"),
    }
}

fn parse_triple(no: usize, field: &Field, rest: &str) -> Result<[Value; 3], ParseError> {
    let vals = parse_value(field, rest).or_else(|e| err(no, e.to_string()))?;
    <[Value; 3]>::try_from(vals).or_else(|v| err(no, format!("expected 3 coordinates, got {}", v.len())))
}

fn parse_field(no: usize, rest: &str) -> Result<Field, ParseError> {
    let desc = parse_descriptor(rest).or_else(|e| err(no, e.to_string()))?;
    field_make(&desc).or_else(|e| err(no, e.to_string()))
}

/// Significant rows: `(line number, keyword, rest)`.
fn rows(text: &str) -> impl Iterator<Item = (usize, &str, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            return None;
        }
        let (kw, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        Some((i + 1, kw, rest.trim()))
    })
}

pub fn parse_file(text: &str) -> Result<ArrangementFile, ParseError> {
    let mut name = None;
    let mut field: Option<Field> = None;
    let mut block = Block::None;
    let mut lines: Vec<(usize, ProjLine)> = Vec::new();
    let mut t: BTreeMap<usize, usize> = BTreeMap::new();
    let mut profile: BTreeMap<usize, usize> = BTreeMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut flags: Option<SpectrumFlags> = None;
    let mut last = 0;
    let enter = |block: &mut Block, next: Block, no: usize| {
        if *block != Block::None && *block != next {
            return err(
                no,
                "a file holds one of: line rows, a spectrum block, an incidence block",
            );
        }
        *block = next;
        Ok(())
    };
    for (no, kw, rest) in rows(text) {
        last = no;
        match kw {
            "name" => {
                if rest.is_empty() {
                    return err(no, "empty name");
                }
                name = Some(rest.to_string());
            }
            "field" => {
                if field.is_some() {
                    return err(no, "field given twice");
                }
                field = Some(parse_field(no, rest)?);
            }
            "line" => {
                enter(&mut block, Block::Lines, no)?;
                let f = match &field {
                    Some(f) => f,
                    None => return err(no, "line row before the field line"),
                };
                let v = parse_triple(no, f, rest)?;
                let l = ProjLine::from_values(f, v).or_else(|e| err(no, e.to_string()))?;
                lines.push((no, l));
            }
            "spectrum" => {
                if block != Block::None {
                    return err(no, "second block header");
                }
                enter(
                    &mut block,
                    Block::Spectrum(parse_size(no, rest.split_whitespace().next())?),
                    no,
                )?;
            }
            "incidence" => {
                if block != Block::None {
                    return err(no, "second block header");
                }
                enter(
                    &mut block,
                    Block::Incidence(parse_size(no, rest.split_whitespace().next())?),
                    no,
                )?;
            }
            "t" | "profile" => {
                if !matches!(block, Block::Spectrum(_)) {
                    return err(no, format!("{kw} row outside a spectrum block"));
                }
                let mut it = rest.split_whitespace();
                let k = parse_count(no, it.next(), "k")?;
                let c = parse_count(no, it.next(), "count")?;
                if it.next().is_some() {
                    return err(no, "trailing tokens");
                }
                let map = if kw == "t" { &mut t } else { &mut profile };
                if map.insert(k, c).is_some() {
                    return err(no, format!("{kw} {k} given twice"));
                }
            }
            "members" => {
                if !matches!(block, Block::Incidence(_)) {
                    return err(no, "members row outside an incidence block");
                }
                let m = rest
                    .split_whitespace()
                    .map(|tok| parse_count(no, Some(tok), "line index"))
                    .collect::<Result<Vec<_>, _>>()?;
                members.push(m);
            }
            "flags" => {
                if flags.is_some() {
                    return err(no, "flags given twice");
                }
                let mut f = SpectrumFlags::default();
                for tok in rest.split_whitespace() {
                    match tok {
                        "real" => f.real = true,
                        "complete" => f.complete = true,
                        other => return err(no, format!("unknown flag {other:?}")),
                    }
                }
                flags = Some(f);
            }
            other => return err(no, format!("unknown keyword {other:?}")),
        }
    }
    let body = match block {
        Block::None => return err(last.max(1), "no line rows, spectrum or incidence block"),
        Block::Lines => {
            let f = field.expect("lines need a field");
            let mut seen: BTreeMap<&ProjLine, usize> = BTreeMap::new();
            for (no, l) in &lines {
                if let Some(first) = seen.insert(l, *no) {
                    return err(*no, format!("same line as line {first}"));
                }
            }
            let a = CoordArrangement::new(&f, lines.into_iter().map(|(_, l)| l).collect())
                .or_else(|e| err(last, e.to_string()))?;
            match flags {
                Some(fl) if fl.complete => return err(last, "coordinate files take only the real flag"),
                Some(fl) => Body::Lines(a.with_real_flag(fl.real)),
                None => Body::Lines(a),
            }
        }
        Block::Spectrum(d) => {
            let profile = (!profile.is_empty()).then_some(profile);
            let s =
                abstract_spectrum(d, t, flags.unwrap_or_default(), profile).or_else(|e| err(last, e.to_string()))?;
            Body::Spectrum(match field {
                Some(f) => s.with_field(f),
                None => s,
            })
        }
        Block::Incidence(d) => {
            let fl = flags.unwrap_or_default();
            let is = IncidenceStructure::from_members(d, members, fl.complete, fl.real, field)
                .or_else(|e| err(last, e.to_string()))?;
            Body::Incidence(is)
        }
    };
    Ok(ArrangementFile { name, body })
}

fn flags_line(out: &mut String, real: bool, complete: bool) {
    out.push_str("flags");
    if real {
        out.push_str(" real");
    }
    if complete {
        out.push_str(" complete");
    }
    out.push('\n');
}

/// Canonical text; `parse_file` reads it back to the same content.
pub fn write_file(file: &ArrangementFile) -> String {
    let mut out = String::new();
    if let Some(n) = &file.name {
        let _ = writeln!(out, "name {n}");
    }
    match &file.body {
        Body::Lines(a) => {
            let f = a.field();
            let _ = writeln!(out, "field {f}");
            if a.is_real() != f.is_rationals() {
                flags_line(&mut out, a.is_real(), false);
            }
            for l in a.lines() {
                let [x, y, z] = l.values();
                let _ = writeln!(
                    out,
                    "line {} {} {}",
                    f.format_value(x),
                    f.format_value(y),
                    f.format_value(z)
                );
            }
        }
        Body::Spectrum(s) => {
            if let Some(f) = s.field() {
                let _ = writeln!(out, "field {f}");
            }
            let _ = writeln!(out, "spectrum d={}", s.d());
            for (k, c) in s.counts() {
                let _ = writeln!(out, "t {k} {c}");
            }
            for (k, c) in s.profile().into_iter().flatten() {
                let _ = writeln!(out, "profile {k} {c}");
            }
            flags_line(&mut out, s.is_real(), s.is_complete());
        }
        Body::Incidence(is) => {
            if let Some(f) = is.field() {
                let _ = writeln!(out, "field {f}");
            }
            let _ = writeln!(out, "incidence d={}", is.d());
            for p in is.points() {
                let m: Vec<String> = p.members.iter().flatten().map(usize::to_string).collect();
                let _ = writeln!(out, "members {}", m.join(" "));
            }
            flags_line(&mut out, is.is_real(), is.is_complete());
        }
    }
    out
}

pub fn parse_points(text: &str) -> Result<(Field, Vec<ProjPoint>), ParseError> {
    let mut field: Option<Field> = None;
    let mut points = Vec::new();
    let mut last = 0;
    for (no, kw, rest) in rows(text) {
        last = no;
        match kw {
            "field" if field.is_none() => field = Some(parse_field(no, rest)?),
            "field" => return err(no, "field given twice"),
            "point" => {
                let f = match &field {
                    Some(f) => f,
                    None => return err(no, "point row before the field line"),
                };
                let v = parse_triple(no, f, rest)?;
                points.push(ProjPoint::from_values(f, v).or_else(|e| err(no, e.to_string()))?);
            }
            other => return err(no, format!("unknown keyword {other:?} in a point file")),
        }
    }
    match field {
        Some(f) => Ok((f, points)),
        None => err(last.max(1), "point file without a field line"),
    }
}

pub fn write_points(field: &Field, points: &[ProjPoint]) -> String {
    let mut out = format!("field {field}\n");
    for p in points {
        let [x, y, z] = p.values();
        let _ = writeln!(
            out,
            "point {} {} {}",
            field.format_value(x),
            field.format_value(y),
            field.format_value(z)
        );
    }
    out
}
