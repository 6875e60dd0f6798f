use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::arrangement::{abstract_spectrum, ArrangementError, Spectrum};
use crate::catalog::gen_wiman;
use crate::fields::Rational;

use super::{h_full, HFormula, HReport, NegativityError};

/// `H` of a subarrangement of `d'` lines, measured at the original point set
/// of `s` points, when each of the `d` original lines carries `n` of them:
/// `h + (d - d')(n - 1) / s`.
pub fn subconfig_formula(
    h: &Rational,
    d: usize,
    d_prime: usize,
    n: usize,
    s: usize,
) -> Result<Rational, NegativityError> {
    if d_prime == 0 || d_prime > d {
        return Err(NegativityError::InvalidSubsize { d, d_prime });
    }
    if n == 0 || s == 0 {
        return Err(NegativityError::BadParameter(format!(
            "need n >= 1 and s >= 1, got n = {n}, s = {s}"
        )));
    }
    let shift = Rational::new(BigInt::from((d - d_prime) * (n - 1)), BigInt::from(s));
    Ok(h + shift)
}

/// Result of deleting two lines that meet at a point of given multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRemoval {
    pub meeting_multiplicity: usize,
    /// Spectrum of the remaining lines.
    pub spectrum: Spectrum,
    /// `H` at the original points, including any that are no longer singular.
    pub over_original: HReport,
    /// `H` at the singular locus of the remaining lines.
    pub over_new_locus: HReport,
}

/// Deletes two lines meeting at a point of multiplicity `m`, using only the
/// per-line profile: every other point on either line loses one line and the
/// meeting point loses two.
pub fn remove_meeting_pair(s: &Spectrum, m: usize) -> Result<PairRemoval, NegativityError> {
    if !s.is_complete() {
        return Err(NegativityError::IncompleteLocus);
    }
    let profile = s.profile().ok_or(NegativityError::NoProfile)?;
    if m < 2 || profile.get(&m).copied().unwrap_or(0) == 0 || s.d() < 3 {
        return Err(NegativityError::BadMultiplicity(m));
    }
    let mut counts: BTreeMap<usize, i128> = s.counts().iter().map(|(&k, &t)| (k, t as i128)).collect();
    for (&k, &per_line) in profile {
        let moved = 2 * per_line as i128 - if k == m { 2 } else { 0 };
        *counts.entry(k).or_insert(0) -= moved;
        *counts.entry(k - 1).or_insert(0) += moved;
    }
    *counts.entry(m).or_insert(0) -= 1;
    *counts.entry(m - 2).or_insert(0) += 1;
    if let Some((k, _)) = counts.iter().find(|(_, &c)| c < 0) {
        return Err(ArrangementError::InconsistentIncidence(format!(
            "profile removes more points of multiplicity {k} than exist"
        ))
        .into());
    }
    let counts: BTreeMap<usize, usize> = counts
        .into_iter()
        .filter(|&(_, c)| c > 0)
        .map(|(k, c)| (k, c as usize))
        .collect();
    let d = s.d() - 2;
    let over_original = HReport::from_counts(d, &counts, HFormula::GeneralQuadratic)?;
    let singular: BTreeMap<usize, usize> = counts.into_iter().filter(|&(k, _)| k >= 2).collect();
    let mut spectrum = abstract_spectrum(d, singular, s.flags(), None)?;
    if let Some(f) = s.field() {
        spectrum = spectrum.with_field(f.clone());
    }
    let over_new_locus = h_full(&spectrum)?;
    Ok(PairRemoval {
        meeting_multiplicity: m,
        spectrum,
        over_original,
        over_new_locus,
    })
}

/// Pair removal on the 45-line Wiman configuration.
pub fn wiman_pair_removal(m: usize) -> Result<PairRemoval, NegativityError> {
    if !(3..=5).contains(&m) {
        return Err(NegativityError::BadMultiplicity(m));
    }
    remove_meeting_pair(&gen_wiman(), m)
}
