//! Report structure shared by every command, rendered as text or JSON.
//!
//! Rationals are exact everywhere. Text output adds a 4-significant-digit
//! decimal for reading; JSON carries `{"num": .., "den": ..}` with
//! arbitrary-size integers.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arrangement::Spectrum;
use crate::fields::Rational;
use crate::negativity::{CertificateReport, HFormula, HReport, MeanReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exact(pub Rational);

fn number(n: &BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&n.to_string()).expect("integers are JSON numbers")
}

fn ser_big<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    number(n).serialize(s)
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Rational", 2)?;
        st.serialize_field("num", &number(self.0.numer()))?;
        st.serialize_field("den", &number(self.0.denom()))?;
        st.end()
    }
}

impl From<&Rational> for Exact {
    fn from(r: &Rational) -> Self {
        Exact(r.clone())
    }
}

/// Reads back a `{"num", "den"}` object.
pub fn rational_from_json(v: &serde_json::Value) -> Option<Rational> {
    let int = |key: &str| match v.get(key)? {
        serde_json::Value::Number(n) => BigInt::from_str(&n.to_string()).ok(),
        _ => None,
    };
    let den = int("den")?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(int("num")?, den))
}

/// `x` with four significant digits.
pub fn decimal(r: &Rational) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let x = r.to_f64().unwrap_or(f64::NAN);
    if !x.is_finite() {
        return if r.is_negative() { "-inf" } else { "inf" }.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..=15).contains(&mag) {
        return format!("{x:.3e}");
    }
    let prec = (3 - mag).max(0) as usize;
    format!("{x:.prec$}")
}

/// `p/q (decimal)`.
pub fn show(r: &Rational) -> String {
    format!("{r} ({})", decimal(r))
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub k: usize,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumSummary {
    pub d: usize,
    pub s: usize,
    pub real: bool,
    pub complete: bool,
    pub characteristic: u64,
    pub field: Option<String>,
    pub t: Vec<Row>,
    pub profile: Option<Vec<Row>>,
}

impl From<&Spectrum> for SpectrumSummary {
    fn from(s: &Spectrum) -> Self {
        let rows = |m: &std::collections::BTreeMap<usize, usize>| {
            m.iter().map(|(&k, &count)| Row { k, count }).collect::<Vec<_>>()
        };
        SpectrumSummary {
            d: s.d(),
            s: s.s(),
            real: s.is_real(),
            complete: s.is_complete(),
            characteristic: s.characteristic(),
            field: s.field().map(ToString::to_string),
            t: rows(s.counts()),
            profile: s.profile().map(rows),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HEntry {
    pub label: String,
    pub formula: &'static str,
    pub h: Exact,
    pub d: usize,
    pub s: usize,
    #[serde(serialize_with = "ser_big")]
    pub sum_m: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub sum_m_sq: BigInt,
    pub mbar: Exact,
}

impl HEntry {
    pub fn new(label: impl Into<String>, r: &HReport) -> Self {
        HEntry {
            label: label.into(),
            formula: match r.formula {
                HFormula::GeneralQuadratic => "general_quadratic",
                HFormula::FullLocusLinear => "full_locus_linear",
            },
            h: Exact::from(&r.h),
            d: r.d,
            s: r.s,
            sum_m: r.sum_m.clone(),
            sum_m_sq: r.sum_m_sq.clone(),
            mbar: Exact::from(&r.mbar),
        }
    }

    /// A value known only through a closed form.
    pub fn formula_only(label: impl Into<String>, h: &Rational, d: usize, s: usize) -> Self {
        HEntry {
            label: label.into(),
            formula: "subconfiguration_formula",
            h: Exact::from(h),
            d,
            s,
            sum_m: BigInt::zero(),
            sum_m_sq: BigInt::zero(),
            mbar: Exact(Rational::zero()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MeanEntry {
    pub mbar: Exact,
    pub c: Exact,
    pub ordering: &'static str,
    pub uniform: bool,
    pub chain_holds: bool,
}

impl From<&MeanReport> for MeanEntry {
    fn from(m: &MeanReport) -> Self {
        MeanEntry {
            mbar: Exact::from(&m.mbar),
            c: Exact::from(&m.c),
            ordering: match m.ordering {
                Ordering::Less => "less",
                Ordering::Equal => "equal",
                Ordering::Greater => "greater",
            },
            uniform: m.uniform,
            chain_holds: m.chain_holds,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertEntry {
    pub kind: &'static str,
    pub applicable: bool,
    pub reason: String,
    pub holds: bool,
    pub strict: bool,
    pub slack: Exact,
    pub bound: Option<Exact>,
    pub e: Option<Exact>,
}

impl From<&CertificateReport> for CertEntry {
    fn from(c: &CertificateReport) -> Self {
        CertEntry {
            kind: c.kind.name(),
            applicable: c.applicable,
            reason: c.reason.clone(),
            holds: c.holds,
            strict: c.strict,
            slack: Exact::from(&c.slack),
            bound: c.bound_value.as_ref().map(Exact::from),
            e: c.e_slack.as_ref().map(Exact::from),
        }
    }
}

/// An equality the command asserts between two exact values.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub label: String,
    pub left: Exact,
    pub right: Exact,
    pub holds: bool,
}

impl Check {
    pub fn equal(label: impl Into<String>, left: &Rational, right: &Rational) -> Self {
        Check {
            label: label.into(),
            left: Exact::from(left),
            right: Exact::from(right),
            holds: left == right,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchEntry {
    pub objective: &'static str,
    pub max_remove: usize,
    pub budget: u128,
    pub candidates: u128,
    pub evaluated: u128,
    pub pruned: u128,
    pub pruning: bool,
    pub original_h: Exact,
    pub best_removed: Vec<usize>,
    pub best_h: Exact,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub name: Option<String>,
    pub input: &'static str,
    pub removed: Option<Vec<usize>>,
    pub spectrum: SpectrumSummary,
    pub h: Vec<HEntry>,
    pub infimum: Option<bool>,
    pub mean: Option<MeanEntry>,
    pub certificates: Vec<CertEntry>,
    pub checks: Vec<Check>,
    pub search: Option<SearchEntry>,
    pub notes: Vec<String>,
}

impl Report {
    /// Some applicable certificate or asserted equality fails.
    pub fn has_failure(&self) -> bool {
        self.certificates.iter().any(|c| c.applicable && !c.holds) || self.checks.iter().any(|c| !c.holds)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_failure())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let _ = writeln!(o, "command: {}", self.command);
        if let Some(n) = &self.name {
            let _ = writeln!(o, "name: {n}");
        }
        let _ = writeln!(o, "input: {}", self.input);
        let sp = &self.spectrum;
        match &sp.field {
            Some(f) => {
                let _ = writeln!(o, "field: {f}");
            }
            None => {
                let _ = writeln!(o, "field: unspecified, characteristic 0");
            }
        }
        if let Some(r) = &self.removed {
            let idx: Vec<String> = r.iter().map(usize::to_string).collect();
            let _ = writeln!(o, "removed lines: {}", idx.join(","));
        }
        let _ = writeln!(
            o,
            "d = {}, s = {}, real = {}, complete = {}",
            sp.d, sp.s, sp.real, sp.complete
        );
        let _ = writeln!(o, "spectrum:");
        for r in &sp.t {
            let _ = writeln!(o, "  t_{} = {}", r.k, r.count);
        }
        if let Some(p) = &sp.profile {
            let items: Vec<String> = p.iter().map(|r| format!("{}:{}", r.k, r.count)).collect();
            let _ = writeln!(o, "per-line profile: {}", items.join(" "));
        }
        if !self.h.is_empty() {
            let _ = writeln!(o, "H-constants:");
        }
        for h in &self.h {
            let _ = writeln!(
                o,
                "  {}: {}  [{}, d = {}, s = {}]",
                h.label,
                show(&h.h.0),
                h.formula,
                h.d,
                h.s
            );
        }
        if let Some(inf) = self.infimum {
            let _ = writeln!(o, "  full locus is the infimum over point sets: {inf}");
        }
        if let Some(m) = &self.mean {
            let _ = writeln!(
                o,
                "mean multiplicity: {} vs implicit mean with c = {}: {} (uniform = {}, chain holds = {})",
                show(&m.mbar.0),
                m.c.0,
                m.ordering,
                m.uniform,
                m.chain_holds
            );
        }
        if let Some(s) = &self.search {
            let idx: Vec<String> = s.best_removed.iter().map(usize::to_string).collect();
            let _ = writeln!(o, "search ({}, up to {} removed):", s.objective, s.max_remove);
            let _ = writeln!(
                o,
                "  candidates = {}, evaluated = {}, pruned = {}, pruning = {}",
                s.candidates, s.evaluated, s.pruned, s.pruning
            );
            let _ = writeln!(o, "  original h = {}", show(&s.original_h.0));
            let _ = writeln!(o, "  best: remove {{{}}} -> h = {}", idx.join(","), show(&s.best_h.0));
        }
        if !self.certificates.is_empty() {
            let _ = writeln!(o, "certificates:");
        }
        for c in &self.certificates {
            let status = match (c.applicable, c.holds) {
                (true, true) => "holds",
                (true, false) => "FAILS",
                (false, _) => "n/a",
            };
            let mut line = format!("  {:<18} {:<5} slack {}", c.kind, status, show(&c.slack.0));
            if let Some(b) = &c.bound {
                let _ = write!(line, ", bound {}", show(&b.0));
            }
            if let Some(e) = &c.e {
                let _ = write!(line, ", e = {}", e.0);
            }
            let _ = writeln!(o, "{line}  ({})", c.reason);
        }
        if !self.checks.is_empty() {
            let _ = writeln!(o, "checks:");
        }
        for c in &self.checks {
            let status = if c.holds { "ok" } else { "MISMATCH" };
            let _ = writeln!(o, "  {}: {} vs {} {}", c.label, c.left.0, c.right.0, status);
        }
        for n in &self.notes {
            let _ = writeln!(o, "note: {n}");
        }
        o
    }
}
