//! Dense univariate polynomials over a [`Field`], lowest degree first.

use super::{Field, FieldError, Value};

pub(crate) fn trim(f: &Field, p: &mut Vec<Value>) {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
}

/// Degree of a trimmed polynomial; `None` for zero.
fn degree(p: &[Value]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub(crate) fn mul(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = f.mul(x, y);
            out[i + j] = f.add(&out[i + j], &t);
        }
    }
    out
}

fn sub(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    let n = a.len().max(b.len());
    let zero = f.zero();
    let mut out: Vec<Value> = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, &mut out);
    out
}

/// Quotient and remainder of `a` by nonzero trimmed `b`.
pub(crate) fn divrem(f: &Field, a: &[Value], b: &[Value]) -> Result<(Vec<Value>, Vec<Value>), FieldError> {
    let db = degree(b).ok_or(FieldError::DivisionByZero)?;
    let lead_inv = f.inv(&b[db])?;
    let mut r = a.to_vec();
    trim(f, &mut r);
    if r.len() < b.len() {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![f.zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            let t = f.mul(&c, bc);
            r[shift + i] = f.sub(&r[shift + i], &t);
        }
        q[shift] = c;
        trim(f, &mut r);
    }
    trim(f, &mut q);
    Ok((q, r))
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
pub(crate) fn inverse_mod(f: &Field, a: &[Value], m: &[Value]) -> Result<Vec<Value>, FieldError> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1): (Vec<Value>, Vec<Value>) = (Vec::new(), vec![f.one()]);
    trim(f, &mut r1);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1)?;
        let s = sub(f, &s0, &mul(f, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is the gcd; a unit exactly when it is a nonzero constant.
    if r0.len() != 1 {
        return Err(FieldError::ZeroDivisor);
    }
    let c = f.inv(&r0[0])?;
    let mut out: Vec<Value> = s0.iter().map(|x| f.mul(x, &c)).collect();
    let (_, rem) = divrem(f, &out, m)?;
    out = rem;
    Ok(out)
}

/// Searches all monic polynomials of degree `1..=deg/2` over a finite field
/// for a divisor of `p`.
pub(crate) fn find_monic_factor(f: &Field, p: &[Value]) -> Option<Vec<Value>> {
    let elems = f.elements(u64::MAX)?;
    let deg = p.len() - 1;
    for k in 1..=deg / 2 {
        let mut idx = vec![0usize; k];
        loop {
            let mut cand: Vec<Value> = idx.iter().map(|&i| elems[i].clone()).collect();
            cand.push(f.one());
            if let Ok((_, r)) = divrem(f, p, &cand) {
                if r.is_empty() {
                    return Some(cand);
                }
            }
            let mut pos = 0;
            while pos < k {
                idx[pos] += 1;
                if idx[pos] < elems.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
    }
    None
}

pub(crate) fn format(f: &Field, p: &[Value]) -> String {
    let items: Vec<String> = p.iter().map(|c| f.format_value(c)).collect();
    format!("[{}]", items.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_over_gf5() {
        let f = Field::prime(5).unwrap();
        let r = |v: &[u64]| v.iter().map(|&c| Value::Residue(c)).collect::<Vec<_>>();
        // (x^2 + 1) = (x + 2)(x + 3) over GF(5)
        let (q, rem) = divrem(&f, &r(&[1, 0, 1]), &r(&[2, 1])).unwrap();
        assert_eq!(q, r(&[3, 1]));
        assert!(rem.is_empty());
        assert_eq!(find_monic_factor(&f, &r(&[1, 0, 1])), Some(r(&[2, 1])));
        assert_eq!(find_monic_factor(&f, &r(&[2, 0, 1])), None);
    }

    #[test]
    fn inverse_mod_rational() {
        let q = Field::rationals();
        // x * (-x/7) = -x^2/7 = 1 mod x^2 + 7
        let m = vec![q.from_i64(7), q.zero(), q.one()];
        let x = vec![q.zero(), q.one()];
        let inv = inverse_mod(&q, &x, &m).unwrap();
        let expect = q
            .from_rational(&super::super::Rational::new((-1).into(), 7.into()))
            .unwrap();
        assert_eq!(inv, vec![q.zero(), expect]);
    }
}
