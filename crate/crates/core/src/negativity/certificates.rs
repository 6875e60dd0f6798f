use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arrangement::Spectrum;
use crate::fields::Rational;

use super::{h_full, NegativityError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CertificateKind {
    Hirzebruch,
    Melchior,
    MainLowerBound,
    RealLowerBound,
    IndexBound,
    FiniteFieldBound,
}

impl CertificateKind {
    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::Hirzebruch => "hirzebruch",
            CertificateKind::Melchior => "melchior",
            CertificateKind::MainLowerBound => "main_lower_bound",
            CertificateKind::RealLowerBound => "real_lower_bound",
            CertificateKind::IndexBound => "index_bound",
            CertificateKind::FiniteFieldBound => "finite_field_bound",
        }
    }
}

/// Outcome of one inequality check. `holds` is `slack >= 0`, or `slack > 0`
/// when `strict` is set. It is filled in even when the certificate does not
/// apply, in which case it is only advisory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub kind: CertificateKind,
    pub applicable: bool,
    pub reason: String,
    pub holds: bool,
    pub strict: bool,
    pub slack: Rational,
    pub bound_value: Option<Rational>,
    pub e_slack: Option<Rational>,
}

impl CertificateReport {
    fn new(kind: CertificateKind, applicable: bool, reason: String, slack: Rational) -> Self {
        CertificateReport {
            kind,
            applicable,
            reason,
            holds: !slack.is_negative(),
            strict: false,
            slack,
            bound_value: None,
            e_slack: None,
        }
    }

    /// Applicable and violated.
    pub fn fails(&self) -> bool {
        self.applicable && !self.holds
    }
}

fn int(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn frac(n: usize, d: usize) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `e = t_2 - 3 - sum_{k>3} (k-3) t_k`.
fn melchior_excess(s: &Spectrum) -> Rational {
    let tail: usize = s
        .counts()
        .iter()
        .filter(|(&k, _)| k > 3)
        .map(|(&k, &t)| (k - 3) * t)
        .sum();
    int(s.t(2)) - int(3) - int(tail)
}

/// `t_2 + (3/4) t_3 >= d + sum_{k>=5} (k-4) t_k` for complex arrangements
/// with `t_d = t_{d-1} = 0`.
pub fn hirzebruch_check(s: &Spectrum) -> CertificateReport {
    let d = s.d();
    let tail: usize = s
        .counts()
        .iter()
        .filter(|(&k, _)| k >= 5)
        .map(|(&k, &t)| (k - 4) * t)
        .sum();
    let slack = int(s.t(2)) + frac(3 * s.t(3), 4) - int(d) - int(tail);
    let gate = if !s.is_complete() {
        Err("incomplete point data".to_string())
    } else if s.characteristic() != 0 {
        Err(format!(
            "characteristic {}: the inequality concerns complex lines",
            s.characteristic()
        ))
    } else if d < 4 {
        Err("fewer than four lines".to_string())
    } else if s.t(d) > 0 {
        Err("pencil (t_d > 0)".to_string())
    } else if s.t(d - 1) > 0 {
        Err("quasi-pencil (t_(d-1) > 0)".to_string())
    } else {
        Ok(())
    };
    match gate {
        Ok(()) => {
            let mut reason = "t_d = t_(d-1) = 0".to_string();
            if slack.is_negative() {
                reason.push_str("; violated: not realizable over the complex numbers");
            }
            CertificateReport::new(CertificateKind::Hirzebruch, true, reason, slack)
        }
        Err(reason) => CertificateReport::new(CertificateKind::Hirzebruch, false, reason, slack),
    }
}

/// `t_2 >= 3 + sum_{k>3} (k-3) t_k` for real non-concurrent arrangements.
/// The excess `e` is reported in both `slack` and `e_slack`.
pub fn melchior_check(s: &Spectrum) -> CertificateReport {
    let e = melchior_excess(s);
    let gate = if !s.is_complete() {
        Err("incomplete point data".to_string())
    } else if s.d() < 3 || s.is_pencil() {
        Err("concurrent lines".to_string())
    } else if !s.is_real() {
        Err("not asserted real".to_string())
    } else {
        Ok(())
    };
    let mut report = match gate {
        Ok(()) => {
            let mut reason = "real, non-concurrent".to_string();
            if e.is_negative() {
                reason.push_str("; violated: not realizable over the reals");
            }
            CertificateReport::new(CertificateKind::Melchior, true, reason, e.clone())
        }
        Err(mut reason) => {
            if e.is_negative() && s.is_complete() && !s.is_pencil() {
                reason.push_str("; violated => not realizable over the reals");
            }
            CertificateReport::new(CertificateKind::Melchior, false, reason, e.clone())
        }
    };
    report.e_slack = Some(e);
    report
}

/// Lower bound for `h_full`: `0` for a pencil, `-2 + 3/d` for a quasi-pencil
/// and `-4 + (2d + t_2 + t_3/4) / s` otherwise. The last case needs
/// characteristic zero.
pub fn main_lower_bound(s: &Spectrum) -> CertificateReport {
    let kind = CertificateKind::MainLowerBound;
    let h = match h_full(s) {
        Ok(r) => r.h,
        Err(e) => return CertificateReport::new(kind, false, e.to_string(), Rational::zero()),
    };
    let d = s.d();
    let (bound, reason) = if s.is_pencil() {
        (Rational::zero(), "pencil".to_string())
    } else if s.is_quasi_pencil() {
        (frac(3, d) - int(2), "quasi-pencil".to_string())
    } else {
        let bound = (int(2 * d) + int(s.t(2)) + frac(s.t(3), 4)) / int(s.s()) - int(4);
        if s.characteristic() != 0 {
            let mut r = CertificateReport::new(
                kind,
                false,
                format!("characteristic {}: the bound needs complex lines", s.characteristic()),
                &h - &bound,
            );
            r.bound_value = Some(bound);
            return r;
        }
        (bound, "t_d = t_(d-1) = 0".to_string())
    };
    let mut r = CertificateReport::new(kind, true, reason, &h - &bound);
    r.bound_value = Some(bound);
    r
}

/// Checks `h_full = d/s - 3 + (e+3)/(e+3+S')` with `S' = sum_{k>=3} (k-2) t_k`
/// and reports the bound `-3 + (e+3)/(e+3+S')`, which `h_full` exceeds by
/// `d/s`.
pub fn real_identity_and_bound(s: &Spectrum) -> Result<CertificateReport, NegativityError> {
    let h = h_full(s)?.h;
    if !s.is_real() {
        return Err(NegativityError::NotReal);
    }
    if s.d() < 3 || s.is_pencil() {
        return Err(NegativityError::Concurrent);
    }
    let e = melchior_excess(s);
    if e.is_negative() {
        return Err(NegativityError::MelchiorViolated(e));
    }
    let s_prime: usize = s
        .counts()
        .iter()
        .filter(|(&k, _)| k >= 3)
        .map(|(&k, &t)| (k - 2) * t)
        .sum();
    let e3 = &e + int(3);
    let bound = &e3 / (&e3 + int(s_prime)) - int(3);
    let rhs = frac(s.d(), s.s()) + &bound;
    if rhs != h {
        return Err(NegativityError::FormsDisagree {
            linear: Box::new(h),
            quadratic: Box::new(rhs),
        });
    }
    let mut r = CertificateReport::new(
        CertificateKind::RealLowerBound,
        true,
        "identity holds exactly".to_string(),
        &h - &bound,
    );
    r.strict = true;
    r.holds = r.slack.is_positive();
    r.bound_value = Some(bound);
    r.e_slack = Some(e);
    Ok(r)
}

/// A non-concurrent arrangement has at least as many singular points as
/// lines.
pub fn index_bound(s: &Spectrum) -> CertificateReport {
    let slack = int(s.s()) - int(s.d());
    let gate = if !s.is_complete() {
        Err("incomplete point data")
    } else if s.is_pencil() {
        Err("concurrent lines")
    } else {
        Ok("non-concurrent")
    };
    match gate {
        Ok(r) => CertificateReport::new(CertificateKind::IndexBound, true, r.to_string(), slack),
        Err(r) => CertificateReport::new(CertificateKind::IndexBound, false, r.to_string(), slack),
    }
}

/// Over a field with `q` elements every multiplicity is at most `q + 1`,
/// so `h_full > -q - 1`. The full plane attains `-q`.
pub fn finite_field_bound(s: &Spectrum, q: u64) -> CertificateReport {
    let kind = CertificateKind::FiniteFieldBound;
    let bound = -Rational::from_integer(BigInt::from(q) + 1);
    let h = match h_full(s) {
        Ok(r) => r.h,
        Err(e) => return CertificateReport::new(kind, false, e.to_string(), Rational::zero()),
    };
    let mut reason = format!("lines over a field of {q} elements");
    let qq = q as u128;
    let full = qq * qq + qq + 1;
    if s.d() as u128 == full && s.s() as u128 == full {
        if h == -Rational::from_integer(BigInt::from(q)) {
            reason.push_str("; full plane: s = d = q^2+q+1 and h = -q exactly");
        } else {
            reason.push_str("; s = d = q^2+q+1 but h differs from -q");
        }
    }
    let mut r = CertificateReport::new(kind, true, reason, &h - &bound);
    r.strict = true;
    r.holds = r.slack.is_positive();
    r.bound_value = Some(bound);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{abstract_spectrum, SpectrumFlags};
    use crate::fields::Field;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn spec(d: usize, t: &[(usize, usize)], real: bool) -> Spectrum {
        abstract_spectrum(
            d,
            t.iter().copied().collect(),
            SpectrumFlags { real, complete: true },
            None,
        )
        .unwrap()
    }

    fn klein() -> Spectrum {
        spec(21, &[(4, 21), (3, 28)], false)
    }

    fn wiman() -> Spectrum {
        spec(45, &[(5, 36), (4, 45), (3, 120)], false)
    }

    #[test]
    fn hirzebruch_values() {
        let k = hirzebruch_check(&klein());
        assert!(k.applicable && k.holds);
        assert_eq!(k.slack, rat(0, 1));
        let w = hirzebruch_check(&wiman());
        assert!(w.applicable && w.holds);
        assert_eq!(w.slack, rat(9, 1));
        let p = hirzebruch_check(&spec(5, &[(5, 1)], true));
        assert!(!p.applicable);
        assert!(p.reason.contains("pencil"));
        // seven triple points on seven lines: the Fano plane
        let fano = hirzebruch_check(&spec(7, &[(3, 7)], false));
        assert!(fano.applicable && !fano.holds);
        assert!(fano.reason.contains("not realizable"));
    }

    #[test]
    fn melchior_values() {
        let kgon4 = melchior_check(&spec(8, &[(2, 4), (3, 6), (4, 1)], true));
        assert!(kgon4.applicable && kgon4.holds);
        assert_eq!(kgon4.e_slack, Some(rat(0, 1)));
        let bor6 = melchior_check(&spec(6, &[(2, 3), (3, 4)], true));
        assert_eq!(bor6.slack, rat(0, 1));
        assert!(bor6.holds);
        let k = melchior_check(&klein());
        assert!(!k.applicable && !k.holds);
        assert_eq!(k.e_slack, Some(rat(-24, 1)));
        assert!(k.reason.contains("not realizable over the reals"));
        assert!(!melchior_check(&wiman()).holds);
    }

    #[test]
    fn main_bound_values() {
        let qp = main_lower_bound(&spec(5, &[(4, 1), (2, 4)], true));
        assert_eq!(qp.bound_value, Some(rat(-7, 5)));
        assert!(qp.holds && qp.slack.is_zero());
        let w = main_lower_bound(&wiman());
        assert_eq!(w.bound_value, Some(rat(-228, 67)));
        assert!(w.applicable && w.holds);
        let k = main_lower_bound(&klein());
        assert_eq!(k.bound_value, Some(rat(-3, 1)));
        assert!(k.slack.is_zero());
        let p = main_lower_bound(&spec(7, &[(7, 1)], true));
        assert_eq!(p.bound_value, Some(rat(0, 1)));
        assert!(p.holds);
    }

    #[test]
    fn positive_characteristic_is_gated() {
        let pg4 = spec(21, &[(5, 21)], false).with_field(Field::prime(2).unwrap());
        let m = main_lower_bound(&pg4);
        assert!(!m.applicable);
        assert!(!hirzebruch_check(&pg4).applicable);
        let ff = finite_field_bound(&pg4, 4);
        assert!(ff.applicable && ff.holds);
        assert_eq!(ff.slack, rat(1, 1));
        assert!(ff.reason.contains("h = -q"));
    }

    #[test]
    fn real_identity() {
        let g3 = real_identity_and_bound(&spec(3, &[(2, 3)], true)).unwrap();
        assert_eq!(g3.bound_value, Some(rat(-2, 1)));
        assert!(g3.holds);
        for k in 3..30usize {
            let s = crate::catalog::gen_kgon_mirror(k as u64).unwrap();
            let r = real_identity_and_bound(&s).unwrap();
            let expected = rat((4 * k + 6) as i64, (k * k + k + 2) as i64) - rat(3, 1);
            assert_eq!(h_full(&s).unwrap().h, expected);
            assert!(r.holds);
        }
        assert_eq!(real_identity_and_bound(&klein()).unwrap_err(), NegativityError::NotReal);
        assert_eq!(
            real_identity_and_bound(&spec(4, &[(4, 1)], true)).unwrap_err(),
            NegativityError::Concurrent
        );
        let fake_real = spec(21, &[(4, 21), (3, 28)], true);
        assert!(matches!(
            real_identity_and_bound(&fake_real),
            Err(NegativityError::MelchiorViolated(_))
        ));
    }

    #[test]
    fn index_values() {
        let w = index_bound(&wiman());
        assert!(w.applicable && w.holds);
        assert_eq!(w.slack, rat(156, 1));
        assert!(!index_bound(&spec(4, &[(4, 1)], true)).applicable);
    }
}
