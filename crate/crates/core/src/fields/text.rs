//! Text forms of field descriptors and element literals.
//!
//! ```text
//! descriptor := "Q" | "GF" <p> | "EXT" <base> <vector>
//! base       := "Q" | "GF" <p> | "(" descriptor ")"
//! literal    := <int> | <int> "/" <int> | <vector>
//! vector     := "[" literal ("," literal)* "]"
//! ```
//!
//! Extension elements and moduli are coefficient vectors, lowest degree first.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::{Field, FieldDescriptor, Rational, Value};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{message} (at column {column})")]
pub struct TextError {
    pub message: String,
    pub column: usize,
}

#[derive(Debug, Clone)]
enum Literal {
    Num(Rational),
    List(Vec<Literal>),
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, TextError> {
        Err(TextError {
            message: message.into(),
            column: self.pos + 1,
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn expect(&mut self, c: u8) -> Result<(), TextError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn integer(&mut self) -> Result<BigInt, TextError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.trim_start_matches('+').parse().unwrap())
    }

    fn literal(&mut self) -> Result<Literal, TextError> {
        if self.peek() == Some(b'[') {
            self.pos += 1;
            let mut items = vec![self.literal()?];
            while self.peek() == Some(b',') {
                self.pos += 1;
                items.push(self.literal()?);
            }
            self.expect(b']')?;
            return Ok(Literal::List(items));
        }
        let num = self.integer()?;
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let den = self.integer()?;
            if den.is_zero() {
                return self.err("zero denominator");
            }
            return Ok(Literal::Num(Rational::new(num, den)));
        }
        Ok(Literal::Num(Rational::from_integer(num)))
    }

    fn descriptor(&mut self) -> Result<FieldDescriptor, TextError> {
        match self.word() {
            "Q" => Ok(FieldDescriptor::Rationals),
            "GF" => {
                let p = self.integer()?;
                match p.to_u64() {
                    Some(p) => Ok(FieldDescriptor::Prime(p)),
                    None => self.err("prime out of range"),
                }
            }
            "EXT" => {
                let base = if self.peek() == Some(b'(') {
                    self.pos += 1;
                    let d = self.descriptor()?;
                    self.expect(b')')?;
                    d
                } else {
                    self.descriptor()?
                };
                let base_field = super::field_make(&base).map_err(|e| TextError {
                    message: e.to_string(),
                    column: self.pos + 1,
                })?;
                let Literal::List(items) = self.literal()? else {
                    return self.err("expected a bracketed modulus");
                };
                let modulus = items
                    .iter()
                    .map(|l| to_value(&base_field, l))
                    .collect::<Result<Vec<_>, String>>()
                    .or_else(|m| self.err(m))?;
                Ok(FieldDescriptor::Extension {
                    base: Box::new(base),
                    modulus,
                })
            }
            "" => self.err("expected a field descriptor"),
            other => self.err(format!("unknown field kind '{other}'")),
        }
    }
}

fn to_value(field: &Field, lit: &Literal) -> Result<Value, String> {
    match lit {
        Literal::Num(q) => field.from_rational(q).map_err(|e| e.to_string()),
        Literal::List(items) => {
            let base = field
                .base()
                .ok_or_else(|| format!("vector literal in non-extension field {field}"))?;
            let deg = field.degree();
            if items.len() > deg {
                return Err(format!(
                    "vector literal has {} coefficients, field degree is {deg}",
                    items.len()
                ));
            }
            let mut cs = items.iter().map(|l| to_value(base, l)).collect::<Result<Vec<_>, _>>()?;
            cs.resize(deg, base.zero());
            Ok(Value::Poly(cs))
        }
    }
}

pub fn parse_descriptor(s: &str) -> Result<FieldDescriptor, TextError> {
    let mut c = Cursor::new(s);
    let d = c.descriptor()?;
    if !c.at_end() {
        return c.err("trailing input after field descriptor");
    }
    Ok(d)
}

/// Parses whitespace-separated element literals.
pub fn parse_value(field: &Field, s: &str) -> Result<Vec<Value>, TextError> {
    let mut c = Cursor::new(s);
    let mut out = Vec::new();
    while !c.at_end() {
        let lit = c.literal()?;
        out.push(to_value(field, &lit).or_else(|m| c.err(m))?);
    }
    Ok(out)
}

pub(crate) fn format_value(field: &Field, v: &Value) -> String {
    match v {
        Value::Rat(q) => format_rational(q),
        Value::Residue(r) => r.to_string(),
        Value::Poly(cs) => {
            let base = field.base().expect("polynomial value in a non-extension field");
            let items: Vec<String> = cs.iter().map(|c| format_value(base, c)).collect();
            format!("[{}]", items.join(","))
        }
    }
}

fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn format_raw(v: &Value) -> String {
    match v {
        Value::Rat(q) => format_rational(q),
        Value::Residue(r) => r.to_string(),
        Value::Poly(cs) => {
            let items: Vec<String> = cs.iter().map(format_raw).collect();
            format!("[{}]", items.join(","))
        }
    }
}

pub(crate) fn format_descriptor(d: &FieldDescriptor) -> String {
    match d {
        FieldDescriptor::Rationals => "Q".to_string(),
        FieldDescriptor::Prime(p) => format!("GF {p}"),
        FieldDescriptor::Extension { base, modulus } => {
            let base = match **base {
                FieldDescriptor::Extension { .. } => format!("({})", format_descriptor(base)),
                _ => format_descriptor(base),
            };
            let coeffs: Vec<String> = modulus.iter().map(format_raw).collect();
            format!("EXT {base} [{}]", coeffs.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{cyclotomic, field_make};

    #[test]
    fn descriptor_round_trip() {
        for text in [
            "Q",
            "GF 7",
            "EXT Q [7,0,1]",
            "EXT GF 2 [1,1,1]",
            "EXT (EXT GF 2 [1,1,1]) [[0,1],[1,0],[1,0]]",
        ] {
            let d = parse_descriptor(text).unwrap();
            assert_eq!(format_descriptor(&d), text);
        }
        assert_eq!(format_descriptor(&cyclotomic(6)), "EXT Q [1,-1,1]");
    }

    #[test]
    fn descriptor_errors() {
        assert!(parse_descriptor("R").is_err());
        assert!(parse_descriptor("GF").is_err());
        assert!(parse_descriptor("Q Q").is_err());
        assert!(parse_descriptor("EXT Q 7").is_err());
    }

    #[test]
    fn literals() {
        let f = field_make(&parse_descriptor("EXT Q [7,0,1]").unwrap()).unwrap();
        let vals = parse_value(&f, "1/2 [0,-1] [3]").unwrap();
        assert_eq!(vals.len(), 3);
        assert_eq!(format_value(&f, &vals[0]), "[1/2,0]");
        assert_eq!(format_value(&f, &vals[1]), "[0,-1]");
        assert_eq!(vals[2], f.from_i64(3));
        assert!(parse_value(&f, "[1,2,3]").is_err());
        assert!(parse_value(&f, "1/0").is_err());
        let g = Field::prime(5).unwrap();
        assert_eq!(
            parse_value(&g, "-1 7 1/2").unwrap(),
            vec![Value::Residue(4), Value::Residue(2), Value::Residue(3)]
        );
        assert!(parse_value(&g, "[1]").is_err());
    }
}
