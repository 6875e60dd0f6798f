//! Cyclotomic polynomials and the fields they define over the rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Field, FieldDescriptor, ModulusStatus, Rational, Value};

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Exact division of integer polynomials by a monic divisor.
fn exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - db];
    for shift in (0..q.len()).rev() {
        let c = r[shift + db].clone();
        if c.is_zero() {
            continue;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

/// The n-th cyclotomic polynomial, lowest degree first: `x^n - 1` divided by
/// `Phi_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    let mut memo: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
    for d in divisors(n) {
        let mut p = vec![BigInt::zero(); d as usize + 1];
        p[0] = -BigInt::one();
        p[d as usize] = BigInt::one();
        for (e, phi) in &memo {
            if d.is_multiple_of(*e) {
                p = exact_div(&p, phi);
            }
        }
        memo.insert(d, p);
    }
    memo.remove(&n).unwrap()
}

/// Field containing a primitive n-th root of unity: the rationals for
/// `n <= 2`, otherwise `Q[x]/(Phi_n)`.
pub fn cyclotomic(n: u64) -> FieldDescriptor {
    if n <= 2 {
        return FieldDescriptor::Rationals;
    }
    FieldDescriptor::Extension {
        base: Box::new(FieldDescriptor::Rationals),
        modulus: rational_coeffs(&cyclotomic_polynomial(n)),
    }
}

pub fn cyclotomic_field(n: u64) -> Field {
    let q = Field::rationals();
    if n <= 2 {
        return q;
    }
    Field::extension_unchecked(
        &q,
        rational_coeffs(&cyclotomic_polynomial(n)),
        ModulusStatus::KnownIrreducible,
    )
}

/// The field of [`cyclotomic_field`] together with its distinguished
/// primitive n-th root of unity.
pub fn primitive_root_of_unity(n: u64) -> (Field, Value) {
    let f = cyclotomic_field(n);
    let zeta = match n {
        1 => f.one(),
        2 => f.from_i64(-1),
        _ => f.generator().unwrap(),
    };
    (f, zeta)
}

fn rational_coeffs(p: &[BigInt]) -> Vec<Value> {
    p.iter()
        .map(|c| Value::Rat(Rational::from_integer(c.clone())))
        .collect()
}

/// Whether a monic rational polynomial equals some `Phi_n`.
pub(crate) fn is_cyclotomic_modulus(coeffs: &[Rational]) -> bool {
    let deg = (coeffs.len() - 1) as u64;
    // phi(n) >= sqrt(n / 2), so n <= 2 deg^2
    (3..=2 * deg * deg + 2).any(|n| {
        let phi = cyclotomic_polynomial(n);
        phi.len() == coeffs.len() && phi.iter().zip(coeffs).all(|(a, b)| b.is_integer() && b.numer() == a)
    })
}
