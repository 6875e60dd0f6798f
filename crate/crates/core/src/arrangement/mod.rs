//! Reduced line arrangements, their singular loci and multiplicity spectra.

mod incidence;
mod spectrum;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::fields::{Field, FieldError};
use crate::projective::{incident, meet, ProjLine, ProjPoint, ProjectiveError};

pub use incidence::{equidistribution, remove_lines, IncidencePoint, IncidenceStructure, Origin, PointPolicy};
pub use spectrum::{abstract_spectrum, spectrum_of, Spectrum, SpectrumFlags};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("an arrangement needs at least one line")]
    NoLines,
    #[error("the singular locus needs at least two lines")]
    SingleLine,
    #[error("lines {first} and {second} coincide")]
    DuplicateLine { first: usize, second: usize },
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("point {0} appears twice in the point set")]
    DuplicatePoint(usize),
    #[error("no point of the set is singular on the arrangement")]
    EmptyResult,
    #[error("completeness identity fails: sum C(k,2) t_k = {lhs} but C(d,2) = {rhs}")]
    IdentityViolation { lhs: u128, rhs: u128 },
    #[error("per-line profile inconsistent at k = {k}: d * profile = {lhs} but k * t_k = {rhs}")]
    ProfileInconsistent { k: usize, lhs: u128, rhs: u128 },
    #[error("multiplicity {k} is impossible with {d} lines")]
    BadMultiplicity { k: usize, d: usize },
    #[error("operation needs point-line membership data")]
    NoIncidenceData,
    #[error("cannot remove every line")]
    RemovingAll,
    #[error("line index {index} out of range for {d} lines")]
    LineIndexOutOfRange { index: usize, d: usize },
    #[error("inconsistent incidence data: {0}")]
    InconsistentIncidence(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Projective(#[from] ProjectiveError),
}

/// A set of pairwise distinct lines with coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordArrangement {
    field: Field,
    lines: Vec<ProjLine>,
    real: bool,
}

impl CoordArrangement {
    /// Lines over `field`; the real flag defaults to true only over the
    /// rationals.
    pub fn new(field: &Field, lines: Vec<ProjLine>) -> Result<Self, ArrangementError> {
        if lines.is_empty() {
            return Err(ArrangementError::NoLines);
        }
        let mut seen: BTreeMap<&ProjLine, usize> = BTreeMap::new();
        for (i, l) in lines.iter().enumerate() {
            if l.field() != field {
                return Err(FieldError::FieldMismatch.into());
            }
            if let Some(&first) = seen.get(l) {
                return Err(ArrangementError::DuplicateLine { first, second: i });
            }
            seen.insert(l, i);
        }
        Ok(CoordArrangement {
            field: field.clone(),
            lines,
            real: field.is_rationals(),
        })
    }

    /// Like [`CoordArrangement::new`] but silently drops repeated lines,
    /// keeping the first occurrence.
    pub fn dedup(field: &Field, lines: Vec<ProjLine>) -> Result<Self, ArrangementError> {
        let mut seen = BTreeSet::new();
        let lines = lines.into_iter().filter(|l| seen.insert(l.clone())).collect();
        Self::new(field, lines)
    }

    /// Asserts (or retracts) that every line is real under an embedding of
    /// the field into the reals.
    pub fn with_real_flag(mut self, real: bool) -> Self {
        self.real = real;
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn d(&self) -> usize {
        self.lines.len()
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// The arrangement without the lines at `removed`, remaining lines keeping
    /// their relative order.
    pub fn without_lines(&self, removed: &BTreeSet<usize>) -> Result<Self, ArrangementError> {
        if let Some(&index) = removed.iter().find(|&&i| i >= self.d()) {
            return Err(ArrangementError::LineIndexOutOfRange { index, d: self.d() });
        }
        if removed.len() == self.d() {
            return Err(ArrangementError::RemovingAll);
        }
        let lines = self
            .lines
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, l)| l.clone())
            .collect();
        Ok(CoordArrangement {
            field: self.field.clone(),
            lines,
            real: self.real,
        })
    }
}

/// Number of arrangement lines through `p` (possibly 0 or 1).
pub fn multiplicity(a: &CoordArrangement, p: &ProjPoint) -> Result<usize, FieldError> {
    let mut m = 0;
    for l in &a.lines {
        if incident(p, l)? {
            m += 1;
        }
    }
    Ok(m)
}

/// The full singular locus: every pairwise meet, deduplicated by canonical
/// form and listed in canonical order, with its member lines.
pub fn singular_points(a: &CoordArrangement) -> Result<IncidenceStructure, ArrangementError> {
    let d = a.d();
    if d < 2 {
        return Err(ArrangementError::SingleLine);
    }
    let meets: Vec<Vec<(ProjPoint, usize, usize)>> = (0..d)
        .into_par_iter()
        .map(|i| {
            ((i + 1)..d)
                .map(|j| meet(&a.lines[i], &a.lines[j]).map(|p| (p, i, j)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let mut locus: BTreeMap<ProjPoint, BTreeSet<usize>> = BTreeMap::new();
    for (p, i, j) in meets.into_iter().flatten() {
        let members = locus.entry(p).or_default();
        members.insert(i);
        members.insert(j);
    }
    let points = locus
        .into_iter()
        .map(|(p, members)| IncidencePoint {
            multiplicity: members.len(),
            members: Some(members.into_iter().collect()),
            coords: Some(p),
        })
        .collect();
    Ok(IncidenceStructure::from_parts(
        d,
        points,
        true,
        Origin::Coordinates,
        a.real,
        Some(a.field.clone()),
    ))
}

/// A nonempty list of distinct points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<ProjPoint>,
}

impl PointSet {
    pub fn new(points: Vec<ProjPoint>) -> Result<Self, ArrangementError> {
        if points.is_empty() {
            return Err(ArrangementError::EmptyPointSet);
        }
        let mut seen = BTreeSet::new();
        for (i, p) in points.iter().enumerate() {
            if !seen.insert(p) {
                return Err(ArrangementError::DuplicatePoint(i));
            }
        }
        Ok(PointSet { points })
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Keeps the points of `p` where at least two lines of `a` meet, in order.
pub fn restrict_to_singular(p: &PointSet, a: &CoordArrangement) -> Result<PointSet, ArrangementError> {
    let mut kept = Vec::new();
    for pt in &p.points {
        if multiplicity(a, pt)? >= 2 {
            kept.push(pt.clone());
        }
    }
    if kept.is_empty() {
        return Err(ArrangementError::EmptyResult);
    }
    Ok(PointSet { points: kept })
}
