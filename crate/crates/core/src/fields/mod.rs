//! Exact scalar fields: the rationals, prime fields `GF(p)`, and simple
//! extensions `K[x]/(f)` by a monic irreducible polynomial over an
//! already-built field.
//!
//! Elements are plain [`Value`]s interpreted by a [`Field`] handle. Every
//! operation returns a canonical value, so structural equality of values is
//! field equality. [`FieldElement`] bundles a value with its field and checks
//! that operands agree.

mod cyclotomic;
pub(crate) mod poly;
mod prime;
mod surd;
mod text;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use cyclotomic::{cyclotomic, cyclotomic_field, cyclotomic_polynomial, primitive_root_of_unity};
pub use prime::{is_prime, prime_power};
pub use surd::cmp_with_surd_mean;
pub use text::{parse_descriptor, parse_value, TextError};

/// Exact rationals with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible (divisible by {factor})")]
    ReducibleModulus { factor: String },
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus must have degree at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("nonzero element is not invertible; the modulus is reducible")]
    ZeroDivisor,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("value does not belong to the field {0}")]
    ForeignValue(String),
    #[error("surd mean needs c >= 0, got {0}")]
    NegativeDiscriminantInput(Rational),
}

/// Raw element representation. Only meaningful together with a [`Field`].
///
/// `Rat` lives in the rationals, `Residue` in `GF(p)` with value in `[0, p)`,
/// and `Poly` in an extension as exactly `degree` base coefficients, lowest
/// degree first, always reduced modulo the modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Rat(Rational),
    Residue(u64),
    Poly(Vec<Value>),
}

/// Textual/structural description of a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    Prime(u64),
    /// `base[x] / (modulus)`; `modulus` is listed lowest degree first and
    /// includes the leading one.
    Extension {
        base: Box<FieldDescriptor>,
        modulus: Vec<Value>,
    },
}

/// How much we know about the irreducibility of an extension modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModulusStatus {
    /// Checked exhaustively (finite base) or by the rational root test up to degree 3.
    Validated,
    /// A cyclotomic polynomial over the rationals.
    KnownIrreducible,
    /// Accepted on the caller's word: no rational roots, degree above 3, or an
    /// infinite tower base.
    Unvalidated,
}

enum Kind {
    Rationals,
    Prime(u64),
    Extension { base: Field, modulus: Vec<Value> },
}

struct Inner {
    descriptor: FieldDescriptor,
    kind: Kind,
    status: ModulusStatus,
}

/// Shared, immutable field handle.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

/// Candidate budget for exhaustive trial division over a finite base.
const TRIAL_DIVISION_BUDGET: u64 = 1 << 20;

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(Inner {
            descriptor: FieldDescriptor::Rationals,
            kind: Kind::Rationals,
            status: ModulusStatus::Validated,
        }))
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if !is_prime(p) || p >= 1 << 63 {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field(Arc::new(Inner {
            descriptor: FieldDescriptor::Prime(p),
            kind: Kind::Prime(p),
            status: ModulusStatus::Validated,
        })))
    }

    /// Builds `base[x]/(modulus)`. The modulus is given lowest degree first.
    pub fn extension(base: &Field, modulus: Vec<Value>) -> Result<Field, FieldError> {
        let mut modulus = modulus;
        for c in &modulus {
            if !base.contains(c) {
                return Err(FieldError::ForeignValue(base.to_string()));
            }
        }
        poly::trim(base, &mut modulus);
        if modulus.len() < 3 {
            return Err(FieldError::DegreeTooSmall(modulus.len().saturating_sub(1)));
        }
        if !base.is_one(modulus.last().unwrap()) {
            return Err(FieldError::NotMonic);
        }
        let status = validate_modulus(base, &modulus)?;
        Ok(Field::extension_unchecked(base, modulus, status))
    }

    pub(crate) fn extension_unchecked(base: &Field, modulus: Vec<Value>, status: ModulusStatus) -> Field {
        let descriptor = FieldDescriptor::Extension {
            base: Box::new(base.descriptor().clone()),
            modulus: modulus.clone(),
        };
        Field(Arc::new(Inner {
            descriptor,
            kind: Kind::Extension {
                base: base.clone(),
                modulus,
            },
            status,
        }))
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0.descriptor
    }

    pub fn status(&self) -> ModulusStatus {
        self.0.status
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.0.kind, Kind::Rationals)
    }

    pub fn base(&self) -> Option<&Field> {
        match &self.0.kind {
            Kind::Extension { base, .. } => Some(base),
            _ => None,
        }
    }

    /// Degree over the immediate base; 1 for the rationals and prime fields.
    pub fn degree(&self) -> usize {
        match &self.0.kind {
            Kind::Extension { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    pub fn modulus(&self) -> Option<&[Value]> {
        match &self.0.kind {
            Kind::Extension { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &self.0.kind {
            Kind::Rationals => 0,
            Kind::Prime(p) => *p,
            Kind::Extension { base, .. } => base.characteristic(),
        }
    }

    /// Number of elements, or `None` for infinite fields.
    pub fn order(&self) -> Option<BigUint> {
        match &self.0.kind {
            Kind::Rationals => None,
            Kind::Prime(p) => Some(BigUint::from(*p)),
            Kind::Extension { base, modulus } => base.order().map(|q| q.pow((modulus.len() - 1) as u32)),
        }
    }

    /// All elements of a finite field, in a fixed order starting with zero.
    /// `None` for infinite fields or fields with more than `limit` elements.
    pub fn elements(&self, limit: u64) -> Option<Vec<Value>> {
        let order = self.order()?.to_u64()?;
        if order > limit {
            return None;
        }
        match &self.0.kind {
            Kind::Rationals => None,
            Kind::Prime(p) => Some((0..*p).map(Value::Residue).collect()),
            Kind::Extension { base, modulus } => {
                let base_elems = base.elements(limit)?;
                let deg = modulus.len() - 1;
                let mut out = Vec::with_capacity(order as usize);
                let mut idx = vec![0usize; deg];
                loop {
                    out.push(Value::Poly(idx.iter().map(|&i| base_elems[i].clone()).collect()));
                    let mut pos = 0;
                    loop {
                        if pos == deg {
                            return Some(out);
                        }
                        idx[pos] += 1;
                        if idx[pos] < base_elems.len() {
                            break;
                        }
                        idx[pos] = 0;
                        pos += 1;
                    }
                }
            }
        }
    }

    /// True when `v` has the shape of a canonical element of this field.
    pub fn contains(&self, v: &Value) -> bool {
        match (&self.0.kind, v) {
            (Kind::Rationals, Value::Rat(_)) => true,
            (Kind::Prime(p), Value::Residue(r)) => r < p,
            (Kind::Extension { base, modulus }, Value::Poly(cs)) => {
                cs.len() == modulus.len() - 1 && cs.iter().all(|c| base.contains(c))
            }
            _ => false,
        }
    }

    pub fn zero(&self) -> Value {
        match &self.0.kind {
            Kind::Rationals => Value::Rat(Rational::zero()),
            Kind::Prime(_) => Value::Residue(0),
            Kind::Extension { base, modulus } => Value::Poly(vec![base.zero(); modulus.len() - 1]),
        }
    }

    pub fn one(&self) -> Value {
        self.from_int(&BigInt::one())
    }

    pub fn from_i64(&self, n: i64) -> Value {
        self.from_int(&BigInt::from(n))
    }

    pub fn from_int(&self, n: &BigInt) -> Value {
        match &self.0.kind {
            Kind::Rationals => Value::Rat(Rational::from_integer(n.clone())),
            Kind::Prime(p) => {
                let r = n.mod_floor_u64(*p);
                Value::Residue(r)
            }
            Kind::Extension { .. } => self.embed(self.base().unwrap().from_int(n)),
        }
    }

    /// Image of a rational number; fails in characteristic `p` when `p`
    /// divides the denominator.
    pub fn from_rational(&self, q: &Rational) -> Result<Value, FieldError> {
        let num = self.from_int(q.numer());
        let den = self.from_int(q.denom());
        self.div(&num, &den)
    }

    /// Constant embedding of a base element into this extension.
    fn embed(&self, c: Value) -> Value {
        let Kind::Extension { base, modulus } = &self.0.kind else {
            return c;
        };
        let mut cs = vec![base.zero(); modulus.len() - 1];
        cs[0] = c;
        Value::Poly(cs)
    }

    /// The coset of `x` in an extension.
    pub fn generator(&self) -> Option<Value> {
        let Kind::Extension { base, modulus } = &self.0.kind else {
            return None;
        };
        let mut cs = vec![base.zero(); modulus.len() - 1];
        cs[1] = base.one();
        Some(Value::Poly(cs))
    }

    pub fn is_zero(&self, v: &Value) -> bool {
        match v {
            Value::Rat(q) => q.is_zero(),
            Value::Residue(r) => *r == 0,
            Value::Poly(cs) => {
                let base = self.base().expect("polynomial value in a non-extension field");
                cs.iter().all(|c| base.is_zero(c))
            }
        }
    }

    pub fn is_one(&self, v: &Value) -> bool {
        *v == self.one()
    }

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (&self.0.kind, a, b) {
            (Kind::Rationals, Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
            (Kind::Prime(p), Value::Residue(x), Value::Residue(y)) => {
                Value::Residue(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            (Kind::Extension { base, .. }, Value::Poly(x), Value::Poly(y)) => {
                Value::Poly(x.iter().zip(y).map(|(u, v)| base.add(u, v)).collect())
            }
            _ => panic!("value does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match (&self.0.kind, a) {
            (Kind::Rationals, Value::Rat(x)) => Value::Rat(-x),
            (Kind::Prime(p), Value::Residue(x)) => Value::Residue(if *x == 0 { 0 } else { p - x }),
            (Kind::Extension { base, .. }, Value::Poly(x)) => Value::Poly(x.iter().map(|u| base.neg(u)).collect()),
            _ => panic!("value does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        match (&self.0.kind, a, b) {
            (Kind::Rationals, Value::Rat(x), Value::Rat(y)) => Value::Rat(x - y),
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (&self.0.kind, a, b) {
            (Kind::Rationals, Value::Rat(x), Value::Rat(y)) => Value::Rat(x * y),
            (Kind::Prime(p), Value::Residue(x), Value::Residue(y)) => {
                Value::Residue(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (Kind::Extension { base, modulus }, Value::Poly(x), Value::Poly(y)) => {
                let prod = poly::mul(base, x, y);
                Value::Poly(reduce(base, modulus, prod))
            }
            _ => panic!("value does not belong to field {self}"),
        }
    }

    pub fn inv(&self, a: &Value) -> Result<Value, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        match (&self.0.kind, a) {
            (Kind::Rationals, Value::Rat(x)) => Ok(Value::Rat(x.recip())),
            (Kind::Prime(p), Value::Residue(x)) => Ok(Value::Residue(prime::inv_mod(*x, *p))),
            (Kind::Extension { base, modulus }, Value::Poly(x)) => {
                let mut x = x.clone();
                poly::trim(base, &mut x);
                let inv = poly::inverse_mod(base, &x, modulus)?;
                Ok(Value::Poly(pad(base, inv, modulus.len() - 1)))
            }
            _ => panic!("value does not belong to field {self}"),
        }
    }

    pub fn div(&self, a: &Value, b: &Value) -> Result<Value, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Value, mut e: u64) -> Value {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn element(&self, value: Value) -> Result<FieldElement, FieldError> {
        if !self.contains(&value) {
            return Err(FieldError::ForeignValue(self.to_string()));
        }
        Ok(FieldElement {
            field: self.clone(),
            value,
        })
    }

    pub fn format_value(&self, v: &Value) -> String {
        text::format_value(self, v)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.descriptor == other.0.descriptor
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_descriptor(self.descriptor()))
    }
}

/// Builds a field from its descriptor, validating primality and the modulus.
pub fn field_make(spec: &FieldDescriptor) -> Result<Field, FieldError> {
    match spec {
        FieldDescriptor::Rationals => Ok(Field::rationals()),
        FieldDescriptor::Prime(p) => Field::prime(*p),
        FieldDescriptor::Extension { base, modulus } => {
            let base = field_make(base)?;
            Field::extension(&base, modulus.clone())
        }
    }
}

fn pad(base: &Field, mut cs: Vec<Value>, len: usize) -> Vec<Value> {
    cs.resize(len, base.zero());
    cs
}

/// Reduces a polynomial modulo a monic modulus and pads to `deg` coefficients.
fn reduce(base: &Field, modulus: &[Value], mut p: Vec<Value>) -> Vec<Value> {
    let deg = modulus.len() - 1;
    while p.len() > deg {
        let top = p.pop().unwrap();
        if base.is_zero(&top) {
            continue;
        }
        let shift = p.len() - deg;
        for (i, m) in modulus[..deg].iter().enumerate() {
            let t = base.mul(&top, m);
            p[shift + i] = base.sub(&p[shift + i], &t);
        }
    }
    pad(base, p, deg)
}

fn validate_modulus(base: &Field, modulus: &[Value]) -> Result<ModulusStatus, FieldError> {
    let deg = modulus.len() - 1;
    if let Some(q) = base.order().and_then(|q| q.to_u64()) {
        let candidates: u64 = (1..=deg / 2)
            .map(|k| q.checked_pow(k as u32).unwrap_or(u64::MAX))
            .fold(0u64, |acc, c| acc.saturating_add(c));
        if candidates <= TRIAL_DIVISION_BUDGET {
            if let Some(factor) = poly::find_monic_factor(base, modulus) {
                return Err(FieldError::ReducibleModulus {
                    factor: poly::format(base, &factor),
                });
            }
            return Ok(ModulusStatus::Validated);
        }
        return Ok(ModulusStatus::Unvalidated);
    }
    if base.is_rationals() {
        let coeffs: Vec<Rational> = modulus
            .iter()
            .map(|v| match v {
                Value::Rat(q) => q.clone(),
                _ => unreachable!(),
            })
            .collect();
        match rational_root(&coeffs) {
            RootSearch::Found(r) => {
                return Err(FieldError::ReducibleModulus {
                    factor: format!("x - ({r})"),
                })
            }
            RootSearch::NoneFound if deg <= 3 => return Ok(ModulusStatus::Validated),
            _ => {}
        }
        if cyclotomic::is_cyclotomic_modulus(&coeffs) {
            return Ok(ModulusStatus::KnownIrreducible);
        }
    }
    Ok(ModulusStatus::Unvalidated)
}

enum RootSearch {
    Found(Rational),
    NoneFound,
    TooLarge,
}

/// Rational root test on a polynomial with rational coefficients.
fn rational_root(coeffs: &[Rational]) -> RootSearch {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
    if ints[0].is_zero() {
        return RootSearch::Found(Rational::zero());
    }
    let (Some(a0), Some(an)) = (ints[0].abs().to_u64(), ints.last().unwrap().abs().to_u64()) else {
        return RootSearch::TooLarge;
    };
    const LIMIT: u64 = 1 << 40;
    if a0 > LIMIT || an > LIMIT {
        return RootSearch::TooLarge;
    }
    for p in divisors(a0) {
        for q in divisors(an) {
            for sign in [1i64, -1] {
                let r = Rational::new(BigInt::from(p) * sign, BigInt::from(q));
                let value = coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &r + c);
                if value.is_zero() {
                    return RootSearch::Found(r);
                }
            }
        }
    }
    RootSearch::NoneFound
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        let m = BigInt::from(p);
        let r = ((self % &m) + &m) % &m;
        r.to_u64().unwrap()
    }
}

/// A value tied to its field. Operator impls panic on mismatched fields; the
/// `try_*` methods report [`FieldError::FieldMismatch`] instead.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Field,
    value: Value,
}

/// Operations accepted by [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ArithResult {
    Element(FieldElement),
    Bool(bool),
}

/// Applies `op` to `a` and `b`. Unary operations act on `a`; `b` must still
/// come from the same field.
pub fn arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<ArithResult, FieldError> {
    a.check(b)?;
    Ok(match op {
        ArithOp::Add => ArithResult::Element(a.try_add(b)?),
        ArithOp::Sub => ArithResult::Element(a.try_sub(b)?),
        ArithOp::Mul => ArithResult::Element(a.try_mul(b)?),
        ArithOp::Div => ArithResult::Element(a.try_div(b)?),
        ArithOp::Neg => ArithResult::Element(-a),
        ArithOp::Inv => ArithResult::Element(a.inv()?),
        ArithOp::Eq => ArithResult::Bool(a.value == b.value),
    })
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    fn with(&self, value: Value) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.with(self.field.add(&self.value, &other.value)))
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.with(self.field.sub(&self.value, &other.value)))
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.with(self.field.mul(&self.value, &other.value)))
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.with(self.field.div(&self.value, &other.value)?))
    }

    pub fn try_eq(&self, other: &FieldElement) -> Result<bool, FieldError> {
        self.check(other)?;
        Ok(self.value == other.value)
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        Ok(self.with(self.field.inv(&self.value)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow(&self.value, e))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_value(&self.value))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl std::ops::$trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).expect("field mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.field.neg(&self.value))
    }
}
