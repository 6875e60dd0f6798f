//! Linear H-constants of line arrangements and the inequalities that bound
//! them.
//!
//! For `d` lines and a point set with multiplicities `m_i`, the constant is
//! `(d^2 - sum m_i^2) / s`. On the complete singular locus every pair of lines
//! meets exactly once, so `sum C(m_i, 2) = C(d, 2)` and the constant collapses
//! to the linear form `(d - sum m_i) / s`. Everything here is exact.

mod certificates;
mod subconfig;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arrangement::{multiplicity, ArrangementError, CoordArrangement, IncidenceStructure, PointSet, Spectrum};
use crate::fields::{cmp_with_surd_mean, FieldError, Rational};

pub use certificates::{
    finite_field_bound, hirzebruch_check, index_bound, main_lower_bound, melchior_check, real_identity_and_bound,
    CertificateKind, CertificateReport,
};
pub use subconfig::{remove_meeting_pair, subconfig_formula, wiman_pair_removal, PairRemoval};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NegativityError {
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("the points are not the complete singular locus")]
    IncompleteLocus,
    #[error("linear form {linear} and quadratic form {quadratic} disagree")]
    FormsDisagree {
        linear: Box<Rational>,
        quadratic: Box<Rational>,
    },
    #[error("fattening factor must be at least 1, got {0}")]
    BadFattening(u64),
    #[error("subconfiguration size {d_prime} must lie in 1..={d}")]
    InvalidSubsize { d: usize, d_prime: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("no point of multiplicity {0} to remove a pair through")]
    BadMultiplicity(usize),
    #[error("Melchior inequality fails (e = {0})")]
    MelchiorViolated(Rational),
    #[error("spectrum is not asserted real")]
    NotReal,
    #[error("lines are concurrent")]
    Concurrent,
    #[error("needs a per-line profile")]
    NoProfile,
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Anything that knows its line count and the multiplicities of its points.
pub trait Locus {
    fn line_count(&self) -> usize;
    fn is_complete(&self) -> bool;
    /// `k -> number of points of multiplicity k`.
    fn multiplicity_counts(&self) -> BTreeMap<usize, usize>;
}

impl Locus for Spectrum {
    fn line_count(&self) -> usize {
        self.d()
    }

    fn is_complete(&self) -> bool {
        Spectrum::is_complete(self)
    }

    fn multiplicity_counts(&self) -> BTreeMap<usize, usize> {
        self.counts().clone()
    }
}

impl Locus for IncidenceStructure {
    fn line_count(&self) -> usize {
        self.d()
    }

    fn is_complete(&self) -> bool {
        IncidenceStructure::is_complete(self)
    }

    fn multiplicity_counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for m in self.multiplicities() {
            *out.entry(m).or_insert(0) += 1;
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HFormula {
    /// `(d^2 - sum m_i^2) / s`, valid for any point set.
    GeneralQuadratic,
    /// `(d - sum m_i) / s`, valid on a complete singular locus.
    FullLocusLinear,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HReport {
    pub h: Rational,
    pub d: usize,
    pub s: usize,
    pub sum_m: BigInt,
    pub sum_m_sq: BigInt,
    /// Average multiplicity.
    pub mbar: Rational,
    pub formula: HFormula,
}

impl HReport {
    fn from_counts(d: usize, counts: &BTreeMap<usize, usize>, formula: HFormula) -> Result<HReport, NegativityError> {
        let s: usize = counts.values().sum();
        if s == 0 {
            return Err(NegativityError::EmptyPointSet);
        }
        let mut sum_m = BigInt::zero();
        let mut sum_m_sq = BigInt::zero();
        for (&k, &c) in counts {
            let k = BigInt::from(k);
            sum_m += &k * c;
            sum_m_sq += &k * &k * c;
        }
        let d_big = BigInt::from(d);
        let num = match formula {
            HFormula::GeneralQuadratic => &d_big * &d_big - &sum_m_sq,
            HFormula::FullLocusLinear => &d_big - &sum_m,
        };
        let s_big = BigInt::from(s);
        Ok(HReport {
            h: Rational::new(num, s_big.clone()),
            d,
            s,
            mbar: Rational::new(sum_m.clone(), s_big),
            sum_m,
            sum_m_sq,
            formula,
        })
    }

    /// The other closed form evaluated on the same data.
    fn alternate(&self) -> Rational {
        let d = BigInt::from(self.d);
        let num = match self.formula {
            HFormula::GeneralQuadratic => &d - &self.sum_m,
            HFormula::FullLocusLinear => &d * &d - &self.sum_m_sq,
        };
        Rational::new(num, BigInt::from(self.s))
    }
}

/// `H` of the arrangement at an arbitrary point set.
pub fn h_at_points(a: &CoordArrangement, p: &PointSet) -> Result<HReport, NegativityError> {
    let mut counts = BTreeMap::new();
    for pt in p.points() {
        *counts.entry(multiplicity(a, pt)?).or_insert(0) += 1;
    }
    HReport::from_counts(a.d(), &counts, HFormula::GeneralQuadratic)
}

/// `H` at the points of an incidence structure, whatever their multiplicities.
pub fn h_at_incidence(is: &IncidenceStructure) -> Result<HReport, NegativityError> {
    HReport::from_counts(is.d(), &is.multiplicity_counts(), HFormula::GeneralQuadratic)
}

/// `H` on the complete singular locus via the linear form, cross-checked
/// against the quadratic form.
pub fn h_full<L: Locus + ?Sized>(x: &L) -> Result<HReport, NegativityError> {
    if !x.is_complete() {
        return Err(NegativityError::IncompleteLocus);
    }
    let report = HReport::from_counts(x.line_count(), &x.multiplicity_counts(), HFormula::FullLocusLinear)?;
    let quadratic = report.alternate();
    if quadratic != report.h {
        return Err(NegativityError::FormsDisagree {
            linear: Box::new(report.h),
            quadratic: Box::new(quadratic),
        });
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveReport {
    pub report: HReport,
    /// Set when `h <= -1`: the full locus then minimizes `H` over all point
    /// sets and the value is the H-constant of the union of the lines.
    pub infimum: bool,
}

pub fn h_curve<L: Locus + ?Sized>(x: &L) -> Result<CurveReport, NegativityError> {
    let report = h_full(x)?;
    let infimum = report.h <= -Rational::one();
    Ok(CurveReport { report, infimum })
}

/// `H` at the full locus with every line taken `k` times. Computed directly
/// from `((kd)^2 - sum (k m_i)^2) / s` and checked against `k^2 h`.
pub fn h_fattened<L: Locus + ?Sized>(x: &L, k: u64) -> Result<Rational, NegativityError> {
    if k == 0 {
        return Err(NegativityError::BadFattening(k));
    }
    let base = h_full(x)?;
    let k_big = BigInt::from(k);
    let kd = &k_big * BigInt::from(base.d);
    let mut sum_sq = BigInt::zero();
    for (&m, &c) in &x.multiplicity_counts() {
        let km = &k_big * BigInt::from(m);
        sum_sq += &km * &km * c;
    }
    let direct = Rational::new(&kd * &kd - sum_sq, BigInt::from(base.s));
    let scaled = Rational::from_integer(&k_big * &k_big) * &base.h;
    if direct != scaled {
        return Err(NegativityError::FormsDisagree {
            linear: Box::new(scaled),
            quadratic: Box::new(direct),
        });
    }
    Ok(direct)
}

/// Average multiplicity against the implicit mean `m` defined by
/// `s m (m - 1) = sum m_i (m_i - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeanReport {
    pub mbar: Rational,
    /// `sum m_i (m_i - 1) / s`, so that `m = (1 + sqrt(1 + 4c)) / 2`.
    pub c: Rational,
    /// `mbar` compared with `m`; never `Greater`.
    pub ordering: Ordering,
    pub uniform: bool,
    /// Whether `h >= d/s - m`, checked from `h` itself.
    pub chain_holds: bool,
}

pub fn mean_vs_implicit_m<L: Locus + ?Sized>(x: &L) -> Result<MeanReport, NegativityError> {
    let report = h_full(x)?;
    let counts = x.multiplicity_counts();
    let s = BigInt::from(report.s);
    let c_num: BigInt = counts
        .iter()
        .map(|(&m, &n)| BigInt::from(m) * BigInt::from(m.saturating_sub(1)) * n)
        .sum();
    let c = Rational::new(c_num, s.clone());
    let ordering = cmp_with_surd_mean(&report.mbar, &c)?;
    let uniform = counts.values().filter(|&&n| n > 0).count() <= 1;
    // h >= d/s - m  <=>  m >= d/s - h
    let gap = Rational::new(BigInt::from(report.d), s) - &report.h;
    let chain_holds = cmp_with_surd_mean(&gap, &c)? != Ordering::Greater;
    Ok(MeanReport {
        mbar: report.mbar,
        c,
        ordering,
        uniform,
        chain_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{abstract_spectrum, singular_points, SpectrumFlags};
    use crate::fields::Field;
    use crate::projective::{ProjLine, ProjPoint};

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn triangle() -> CoordArrangement {
        let f = Field::rationals();
        let lines = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
            .iter()
            .map(|&c| ProjLine::from_ints(&f, c).unwrap())
            .collect();
        CoordArrangement::new(&f, lines).unwrap()
    }

    fn spectrum(d: usize, t: &[(usize, usize)]) -> Spectrum {
        abstract_spectrum(
            d,
            t.iter().copied().collect(),
            SpectrumFlags {
                real: false,
                complete: true,
            },
            None,
        )
        .unwrap()
    }

    #[test]
    fn triangle_point_sets() {
        let f = Field::rationals();
        let a = triangle();
        let v = |c| ProjPoint::from_ints(&f, c).unwrap();
        let one = PointSet::new(vec![v([1, 0, 0])]).unwrap();
        assert_eq!(h_at_points(&a, &one).unwrap().h, rat(5, 1));
        let all = PointSet::new(vec![v([1, 0, 0]), v([0, 1, 0]), v([0, 0, 1])]).unwrap();
        let r = h_at_points(&a, &all).unwrap();
        assert_eq!(r.h, rat(-1, 1));
        assert_eq!(r.sum_m_sq, BigInt::from(12));
    }

    #[test]
    fn pencil_at_its_center() {
        let f = Field::rationals();
        let lines = (0..5).map(|t| ProjLine::from_ints(&f, [1, t, 0]).unwrap()).collect();
        let a = CoordArrangement::new(&f, lines).unwrap();
        let p = PointSet::new(vec![ProjPoint::from_ints(&f, [0, 0, 1]).unwrap()]).unwrap();
        assert_eq!(h_at_points(&a, &p).unwrap().h, rat(0, 1));
    }

    #[test]
    fn published_values() {
        assert_eq!(h_full(&spectrum(9, &[(3, 12)])).unwrap().h, rat(-9, 4));
        assert_eq!(h_full(&spectrum(21, &[(4, 21), (3, 28)])).unwrap().h, rat(-3, 1));
        let wiman = spectrum(45, &[(5, 36), (4, 45), (3, 120)]);
        let c = h_curve(&wiman).unwrap();
        assert_eq!(c.report.h, rat(-225, 67));
        assert!(c.infimum);
        assert_eq!(c.report.mbar, rat(720, 201));
    }

    #[test]
    fn curve_flags() {
        let generic3 = spectrum(3, &[(2, 3)]);
        let c = h_curve(&generic3).unwrap();
        assert_eq!(c.report.h, rat(-1, 1));
        assert!(c.infimum);
        let two = spectrum(2, &[(2, 1)]);
        let c = h_curve(&two).unwrap();
        assert_eq!(c.report.h, rat(0, 1));
        assert!(!c.infimum);
    }

    #[test]
    fn incomplete_locus_rejected() {
        let s = abstract_spectrum(9, [(3, 11)].into_iter().collect(), SpectrumFlags::default(), None).unwrap();
        assert_eq!(h_full(&s).unwrap_err(), NegativityError::IncompleteLocus);
    }

    #[test]
    fn fattening() {
        let hesse = spectrum(9, &[(3, 12)]);
        assert_eq!(h_fattened(&hesse, 2).unwrap(), rat(-9, 1));
        assert_eq!(h_fattened(&hesse, 1).unwrap(), rat(-9, 4));
        let is = singular_points(&triangle()).unwrap();
        assert_eq!(h_fattened(&is, 3).unwrap(), rat(-9, 1));
        assert_eq!(h_fattened(&is, 0).unwrap_err(), NegativityError::BadFattening(0));
    }

    #[test]
    fn implicit_mean() {
        let hesse = mean_vs_implicit_m(&spectrum(9, &[(3, 12)])).unwrap();
        assert_eq!(hesse.ordering, Ordering::Equal);
        assert!(hesse.uniform && hesse.chain_holds);
        let wiman = mean_vs_implicit_m(&spectrum(45, &[(5, 36), (4, 45), (3, 120)])).unwrap();
        assert_eq!(wiman.mbar, rat(720, 201));
        assert_eq!(wiman.c, rat(45 * 44, 201));
        assert_eq!(wiman.ordering, Ordering::Less);
        assert!(!wiman.uniform && wiman.chain_holds);
        let generic4 = mean_vs_implicit_m(&spectrum(4, &[(2, 6)])).unwrap();
        assert_eq!(generic4.ordering, Ordering::Equal);
    }
}
