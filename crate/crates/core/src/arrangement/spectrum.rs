use std::collections::BTreeMap;

use crate::fields::Field;

use super::{ArrangementError, IncidenceStructure};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpectrumFlags {
    pub real: bool,
    pub complete: bool,
}

/// Line count `d` with the counts `t_k` of points where exactly `k` lines
/// meet.
///
/// `field` records the ground field when known; `None` means an unspecified
/// field of characteristic zero (the complex numbers, or the reals when
/// `real` is set).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    d: usize,
    t: BTreeMap<usize, usize>,
    real: bool,
    complete: bool,
    field: Option<Field>,
    profile: Option<BTreeMap<usize, usize>>,
}

fn binom2(k: usize) -> u128 {
    let k = k as u128;
    k * k.saturating_sub(1) / 2
}

impl Spectrum {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.t
    }

    pub fn t(&self, k: usize) -> usize {
        self.t.get(&k).copied().unwrap_or(0)
    }

    /// Number of points, `sum_k t_k`.
    pub fn s(&self) -> usize {
        self.t.values().sum()
    }

    pub fn sum_m(&self) -> u128 {
        self.t.iter().map(|(&k, &t)| k as u128 * t as u128).sum()
    }

    pub fn sum_m_sq(&self) -> u128 {
        self.t.iter().map(|(&k, &t)| (k * k) as u128 * t as u128).sum()
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn field(&self) -> Option<&Field> {
        self.field.as_ref()
    }

    pub fn characteristic(&self) -> u64 {
        self.field.as_ref().map_or(0, Field::characteristic)
    }

    pub fn profile(&self) -> Option<&BTreeMap<usize, usize>> {
        self.profile.as_ref()
    }

    /// All lines through one point.
    pub fn is_pencil(&self) -> bool {
        self.t(self.d) > 0
    }

    /// All but one line through one point.
    pub fn is_quasi_pencil(&self) -> bool {
        !self.is_pencil() && self.d >= 3 && self.t(self.d - 1) > 0
    }

    /// Points per line, read off the per-line profile.
    pub fn equidistribution(&self) -> Option<usize> {
        self.profile.as_ref().map(|p| p.values().sum())
    }

    pub fn with_field(mut self, field: Field) -> Self {
        self.field = Some(field);
        self
    }

    pub fn flags(&self) -> SpectrumFlags {
        SpectrumFlags {
            real: self.real,
            complete: self.complete,
        }
    }
}

/// Validates a spectrum given as raw counts.
pub fn abstract_spectrum(
    d: usize,
    t: BTreeMap<usize, usize>,
    flags: SpectrumFlags,
    profile: Option<BTreeMap<usize, usize>>,
) -> Result<Spectrum, ArrangementError> {
    if d == 0 {
        return Err(ArrangementError::NoLines);
    }
    let t: BTreeMap<usize, usize> = t.into_iter().filter(|&(_, c)| c > 0).collect();
    if let Some(&k) = t.keys().find(|&&k| k < 2 || k > d) {
        return Err(ArrangementError::BadMultiplicity { k, d });
    }
    if flags.complete {
        let lhs: u128 = t.iter().map(|(&k, &c)| binom2(k) * c as u128).sum();
        let rhs = binom2(d);
        if lhs != rhs {
            return Err(ArrangementError::IdentityViolation { lhs, rhs });
        }
    }
    let profile = profile.map(|p| p.into_iter().filter(|&(_, c)| c > 0).collect::<BTreeMap<_, _>>());
    if let Some(p) = &profile {
        if let Some(&k) = p.keys().find(|&&k| k < 2 || k > d) {
            return Err(ArrangementError::BadMultiplicity { k, d });
        }
        for &k in p.keys().chain(t.keys()) {
            let lhs = d as u128 * p.get(&k).copied().unwrap_or(0) as u128;
            let rhs = k as u128 * t.get(&k).copied().unwrap_or(0) as u128;
            if lhs != rhs {
                return Err(ArrangementError::ProfileInconsistent { k, lhs, rhs });
            }
        }
    }
    Ok(Spectrum {
        d,
        t,
        real: flags.real,
        complete: flags.complete,
        field: None,
        profile,
    })
}

/// Counts points by multiplicity (points of multiplicity below two are not
/// part of a spectrum). A per-line profile is attached when the structure is
/// complete and every line sees the same multiplicities.
pub fn spectrum_of(is: &IncidenceStructure) -> Spectrum {
    let mut t = BTreeMap::new();
    for m in is.multiplicities().filter(|&m| m >= 2) {
        *t.entry(m).or_insert(0) += 1;
    }
    let profile = if is.is_complete() { is.uniform_profile() } else { None };
    Spectrum {
        d: is.d(),
        t,
        real: is.is_real(),
        complete: is.is_complete(),
        field: is.field().cloned(),
        profile,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete() -> SpectrumFlags {
        SpectrumFlags {
            real: false,
            complete: true,
        }
    }

    #[test]
    fn klein_and_wiman_counts_are_complete() {
        let klein = abstract_spectrum(
            21,
            BTreeMap::from([(4, 21), (3, 28)]),
            complete(),
            Some(BTreeMap::from([(4, 4), (3, 4)])),
        )
        .unwrap();
        assert_eq!(klein.s(), 49);
        assert_eq!(klein.sum_m(), 168);
        assert_eq!(klein.equidistribution(), Some(8));
        let wiman = abstract_spectrum(
            45,
            BTreeMap::from([(5, 36), (4, 45), (3, 120)]),
            complete(),
            Some(BTreeMap::from([(5, 4), (4, 4), (3, 8)])),
        )
        .unwrap();
        assert_eq!(wiman.s(), 201);
        assert_eq!(wiman.sum_m(), 720);
        assert_eq!(wiman.equidistribution(), Some(16));
    }

    #[test]
    fn identity_violation_reports_both_sides() {
        let err = abstract_spectrum(9, BTreeMap::from([(3, 11)]), complete(), None).unwrap_err();
        assert_eq!(err, ArrangementError::IdentityViolation { lhs: 33, rhs: 36 });
        // incomplete spectra are not held to the identity
        let s = abstract_spectrum(9, BTreeMap::from([(3, 11)]), SpectrumFlags::default(), None);
        assert!(s.is_ok());
    }

    #[test]
    fn profile_and_multiplicity_errors() {
        let err = abstract_spectrum(
            21,
            BTreeMap::from([(4, 21), (3, 28)]),
            complete(),
            Some(BTreeMap::from([(4, 4), (3, 5)])),
        )
        .unwrap_err();
        assert!(matches!(err, ArrangementError::ProfileInconsistent { k: 3, .. }));
        let err = abstract_spectrum(3, BTreeMap::from([(4, 1)]), complete(), None).unwrap_err();
        assert_eq!(err, ArrangementError::BadMultiplicity { k: 4, d: 3 });
    }

    #[test]
    fn pencil_shapes() {
        let pencil = abstract_spectrum(5, BTreeMap::from([(5, 1)]), complete(), None).unwrap();
        assert!(pencil.is_pencil());
        let qp = abstract_spectrum(5, BTreeMap::from([(4, 1), (2, 4)]), complete(), None).unwrap();
        assert!(qp.is_quasi_pencil() && !qp.is_pencil());
    }
}
