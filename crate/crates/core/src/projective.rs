//! Points and lines of the projective plane over an exact field.
//!
//! Both are stored as homogeneous triples in canonical form: the first
//! nonzero coordinate (in x, y, z order) is one. Canonical triples are equal
//! exactly when the projective objects are, so they serve directly as keys.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::fields::{Field, FieldElement, FieldError, Value};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectiveError {
    #[error("homogeneous coordinates are all zero")]
    AllZero,
    #[error("meet of a line with itself")]
    EqualLines,
    #[error("join of a point with itself")]
    EqualPoints,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Debug)]
struct Triple {
    field: Field,
    v: [Value; 3],
}

impl Triple {
    fn canonical(field: &Field, v: [Value; 3]) -> Result<Triple, ProjectiveError> {
        for c in &v {
            if !field.contains(c) {
                return Err(FieldError::ForeignValue(field.to_string()).into());
            }
        }
        let lead = v
            .iter()
            .position(|c| !field.is_zero(c))
            .ok_or(ProjectiveError::AllZero)?;
        let v = if field.is_one(&v[lead]) {
            v
        } else {
            let s = field.inv(&v[lead])?;
            v.map(|c| field.mul(&c, &s))
        };
        Ok(Triple {
            field: field.clone(),
            v,
        })
    }

    fn from_elements(e: [&FieldElement; 3]) -> Result<Triple, ProjectiveError> {
        let field = e[0].field();
        if e.iter().any(|x| x.field() != field) {
            return Err(FieldError::FieldMismatch.into());
        }
        Triple::canonical(field, e.map(|x| x.value().clone()))
    }

    fn dot(&self, other: &Triple) -> Result<Value, FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch);
        }
        let f = &self.field;
        let mut acc = f.mul(&self.v[0], &other.v[0]);
        for i in 1..3 {
            acc = f.add(&acc, &f.mul(&self.v[i], &other.v[i]));
        }
        Ok(acc)
    }

    fn cross(&self, other: &Triple) -> Result<[Value; 3], FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch);
        }
        let f = &self.field;
        let (a, b) = (&self.v, &other.v);
        let term = |i: usize, j: usize| f.sub(&f.mul(&a[i], &b[j]), &f.mul(&a[j], &b[i]));
        Ok([term(1, 2), term(2, 0), term(0, 1)])
    }

    fn elements(&self) -> [FieldElement; 3] {
        self.v
            .clone()
            .map(|c| self.field.element(c).expect("canonical coordinates"))
    }
}

impl PartialEq for Triple {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.field == other.field
    }
}

impl Eq for Triple {}

impl Hash for Triple {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.v.hash(state);
    }
}

impl PartialOrd for Triple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Triple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.v.cmp(&other.v)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.v;
        write!(
            f,
            "{}:{}:{}",
            self.field.format_value(x),
            self.field.format_value(y),
            self.field.format_value(z)
        )
    }
}

/// A point `[x:y:z]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(Triple);

/// The line `a x + b y + c z = 0`, stored as `[a:b:c]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine(Triple);

macro_rules! triple_accessors {
    ($ty:ident) => {
        impl $ty {
            pub fn new(x: &FieldElement, y: &FieldElement, z: &FieldElement) -> Result<Self, ProjectiveError> {
                Triple::from_elements([x, y, z]).map($ty)
            }

            /// Builds from raw values of `field`, canonicalizing.
            pub fn from_values(field: &Field, v: [Value; 3]) -> Result<Self, ProjectiveError> {
                Triple::canonical(field, v).map($ty)
            }

            pub fn from_ints(field: &Field, v: [i64; 3]) -> Result<Self, ProjectiveError> {
                Self::from_values(field, v.map(|c| field.from_i64(c)))
            }

            pub fn field(&self) -> &Field {
                &self.0.field
            }

            pub fn values(&self) -> &[Value; 3] {
                &self.0.v
            }

            pub fn elements(&self) -> [FieldElement; 3] {
                self.0.elements()
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[{}]", self.0)
            }
        }
    };
}

triple_accessors!(ProjPoint);
triple_accessors!(ProjLine);

/// Intersection point of two distinct lines (cross product of coefficients).
pub fn meet(l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint, ProjectiveError> {
    let v = l1.0.cross(&l2.0)?;
    match Triple::canonical(&l1.0.field, v) {
        Err(ProjectiveError::AllZero) => Err(ProjectiveError::EqualLines),
        r => r.map(ProjPoint),
    }
}

/// Line through two distinct points.
pub fn join(p1: &ProjPoint, p2: &ProjPoint) -> Result<ProjLine, ProjectiveError> {
    let v = p1.0.cross(&p2.0)?;
    match Triple::canonical(&p1.0.field, v) {
        Err(ProjectiveError::AllZero) => Err(ProjectiveError::EqualPoints),
        r => r.map(ProjLine),
    }
}

pub fn incident(p: &ProjPoint, l: &ProjLine) -> Result<bool, FieldError> {
    let d = p.0.dot(&l.0)?;
    Ok(p.0.field.is_zero(&d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::primitive_root_of_unity;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn meet_examples() {
        let f = q();
        let x0 = ProjLine::from_ints(&f, [1, 0, 0]).unwrap();
        let y0 = ProjLine::from_ints(&f, [0, 1, 0]).unwrap();
        assert_eq!(meet(&x0, &y0).unwrap(), ProjPoint::from_ints(&f, [0, 0, 1]).unwrap());
        let x1 = ProjLine::from_ints(&f, [1, 0, -1]).unwrap();
        let y1 = ProjLine::from_ints(&f, [0, 1, -1]).unwrap();
        assert_eq!(meet(&x1, &y1).unwrap(), ProjPoint::from_ints(&f, [1, 1, 1]).unwrap());
        assert_eq!(meet(&x1, &x1).unwrap_err(), ProjectiveError::EqualLines);
    }

    #[test]
    fn meet_over_gf2() {
        // x + y = 0 and y + z = 0: y = x, z = y, so [1:1:1]
        let f = Field::prime(2).unwrap();
        let l1 = ProjLine::from_ints(&f, [1, 1, 0]).unwrap();
        let l2 = ProjLine::from_ints(&f, [0, 1, 1]).unwrap();
        assert_eq!(meet(&l1, &l2).unwrap(), ProjPoint::from_ints(&f, [1, 1, 1]).unwrap());
    }

    #[test]
    fn join_examples() {
        let f = q();
        let p = ProjPoint::from_ints(&f, [1, 0, 0]).unwrap();
        let r = ProjPoint::from_ints(&f, [0, 1, 0]).unwrap();
        assert_eq!(join(&p, &r).unwrap(), ProjLine::from_ints(&f, [0, 0, 1]).unwrap());
        let p = ProjPoint::from_ints(&f, [0, 0, 1]).unwrap();
        let r = ProjPoint::from_ints(&f, [1, 1, 1]).unwrap();
        assert_eq!(join(&p, &r).unwrap(), ProjLine::from_ints(&f, [1, -1, 0]).unwrap());
        assert_eq!(join(&p, &p).unwrap_err(), ProjectiveError::EqualPoints);
    }

    #[test]
    fn incidence_examples() {
        let f = q();
        let o = ProjPoint::from_ints(&f, [0, 0, 1]).unwrap();
        let z0 = ProjLine::from_ints(&f, [0, 0, 1]).unwrap();
        assert!(!incident(&o, &z0).unwrap());
        let one = ProjPoint::from_ints(&f, [1, 1, 1]).unwrap();
        let diag = ProjLine::from_ints(&f, [1, -1, 0]).unwrap();
        assert!(incident(&one, &diag).unwrap());
    }

    #[test]
    fn cyclotomic_incidence() {
        // [1:zeta:0] on x - zeta y = 0 evaluates to 1 - zeta^2, nonzero
        let (f, zeta) = primitive_root_of_unity(5);
        let p = ProjPoint::from_values(&f, [f.one(), zeta.clone(), f.zero()]).unwrap();
        let l = ProjLine::from_values(&f, [f.one(), f.neg(&zeta), f.zero()]).unwrap();
        assert!(!incident(&p, &l).unwrap());
        let l2 = ProjLine::from_values(&f, [zeta.clone(), f.neg(&f.one()), f.zero()]).unwrap();
        assert!(incident(&p, &l2).unwrap());
    }

    #[test]
    fn errors() {
        let f = q();
        assert_eq!(
            ProjPoint::from_ints(&f, [0, 0, 0]).unwrap_err(),
            ProjectiveError::AllZero
        );
        let g = Field::prime(3).unwrap();
        let p = ProjPoint::from_ints(&f, [1, 0, 0]).unwrap();
        let l = ProjLine::from_ints(&g, [1, 0, 0]).unwrap();
        assert_eq!(incident(&p, &l).unwrap_err(), FieldError::FieldMismatch);
        let a = f.element(f.one()).unwrap();
        let b = g.element(g.one()).unwrap();
        assert!(matches!(
            ProjPoint::new(&a, &a, &b),
            Err(ProjectiveError::Field(FieldError::FieldMismatch))
        ));
    }

    #[test]
    fn canonical_form() {
        let f = q();
        let p = ProjPoint::from_ints(&f, [0, -3, 6]).unwrap();
        assert_eq!(p.to_string(), "[0:1:-2]");
    }

    fn small_triple() -> impl Strategy<Value = [i64; 3]> {
        prop::array::uniform3(-6i64..=6).prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
    }

    proptest! {
        #[test]
        fn meet_join_duality(a in small_triple(), b in small_triple(), s in 1i64..5) {
            let f = q();
            let l1 = ProjLine::from_ints(&f, a).unwrap();
            let l2 = ProjLine::from_ints(&f, b).unwrap();
            // scaling never changes the canonical form
            let scaled = ProjLine::from_ints(&f, a.map(|c| -s * c)).unwrap();
            prop_assert_eq!(&scaled, &l1);
            let again = ProjLine::from_values(&f, l1.values().clone()).unwrap();
            prop_assert_eq!(&again, &l1);
            if l1 != l2 {
                let p = meet(&l1, &l2).unwrap();
                prop_assert!(incident(&p, &l1).unwrap());
                prop_assert!(incident(&p, &l2).unwrap());
                prop_assert_eq!(&meet(&l2, &l1).unwrap(), &p);
            }
            let p1 = ProjPoint::from_ints(&f, a).unwrap();
            let p2 = ProjPoint::from_ints(&f, b).unwrap();
            if p1 != p2 {
                let l = join(&p1, &p2).unwrap();
                prop_assert!(incident(&p1, &l).unwrap());
                prop_assert!(incident(&p2, &l).unwrap());
            }
        }
    }
}
