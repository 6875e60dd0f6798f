use std::collections::{BTreeMap, BTreeSet};

use crate::fields::Field;
use crate::projective::ProjPoint;

use super::ArrangementError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Coordinates,
    Abstract,
}

/// One point of an incidence structure. `members` lists the indices of the
/// lines through it when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidencePoint {
    pub multiplicity: usize,
    pub members: Option<Vec<usize>>,
    pub coords: Option<ProjPoint>,
}

/// Points with multiplicities relative to an arrangement of `d` lines.
///
/// When `complete` is set the points are exactly the singular locus, so
/// every pair of lines meets in exactly one listed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    d: usize,
    points: Vec<IncidencePoint>,
    complete: bool,
    origin: Origin,
    real: bool,
    field: Option<Field>,
}

/// What happens to points whose multiplicity drops under line removal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointPolicy {
    /// Keep every original point, even at multiplicity 0 or 1.
    KeepOriginalPoints,
    /// Keep only the points still singular in the subarrangement.
    RestrictToNewSingular,
}

fn binom2(k: usize) -> u128 {
    let k = k as u128;
    k * k.saturating_sub(1) / 2
}

impl IncidenceStructure {
    pub(crate) fn from_parts(
        d: usize,
        points: Vec<IncidencePoint>,
        complete: bool,
        origin: Origin,
        real: bool,
        field: Option<Field>,
    ) -> Self {
        IncidenceStructure {
            d,
            points,
            complete,
            origin,
            real,
            field,
        }
    }

    /// An abstract structure from member sets. With `complete`, every pair of
    /// lines must lie in exactly one listed point.
    pub fn from_members(
        d: usize,
        members: Vec<Vec<usize>>,
        complete: bool,
        real: bool,
        field: Option<Field>,
    ) -> Result<Self, ArrangementError> {
        if d == 0 {
            return Err(ArrangementError::NoLines);
        }
        if members.is_empty() {
            return Err(ArrangementError::EmptyPointSet);
        }
        let mut points = Vec::with_capacity(members.len());
        for (i, m) in members.into_iter().enumerate() {
            let set: BTreeSet<usize> = m.iter().copied().collect();
            if set.len() != m.len() {
                return Err(ArrangementError::InconsistentIncidence(format!(
                    "point {i} lists a line twice"
                )));
            }
            if let Some(&index) = set.iter().find(|&&l| l >= d) {
                return Err(ArrangementError::LineIndexOutOfRange { index, d });
            }
            points.push(IncidencePoint {
                multiplicity: set.len(),
                members: Some(set.into_iter().collect()),
                coords: None,
            });
        }
        if complete {
            let mut covered: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for (i, p) in points.iter().enumerate() {
                if p.multiplicity < 2 {
                    return Err(ArrangementError::InconsistentIncidence(format!(
                        "point {i} is not singular"
                    )));
                }
                let m = p.members.as_ref().unwrap();
                for (a, &x) in m.iter().enumerate() {
                    for &y in &m[a + 1..] {
                        if let Some(j) = covered.insert((x, y), i) {
                            return Err(ArrangementError::InconsistentIncidence(format!(
                                "lines {x} and {y} meet in both point {j} and point {i}"
                            )));
                        }
                    }
                }
            }
            let lhs = covered.len() as u128;
            let rhs = binom2(d);
            if lhs != rhs {
                return Err(ArrangementError::IdentityViolation { lhs, rhs });
            }
        }
        Ok(IncidenceStructure {
            d,
            points,
            complete,
            origin: Origin::Abstract,
            real,
            field,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn s(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[IncidencePoint] {
        &self.points
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn field(&self) -> Option<&Field> {
        self.field.as_ref()
    }

    pub fn has_members(&self) -> bool {
        self.points.iter().all(|p| p.members.is_some())
    }

    pub fn multiplicities(&self) -> impl Iterator<Item = usize> + '_ {
        self.points.iter().map(|p| p.multiplicity)
    }

    /// For each line, the ids of the listed points on it.
    pub fn points_on_lines(&self) -> Result<Vec<Vec<usize>>, ArrangementError> {
        let mut out = vec![Vec::new(); self.d];
        for (i, p) in self.points.iter().enumerate() {
            let members = p.members.as_ref().ok_or(ArrangementError::NoIncidenceData)?;
            for &l in members {
                out[l].push(i);
            }
        }
        Ok(out)
    }

    /// Multiplicity profile `k -> number of k-fold points` shared by every
    /// line, if all lines agree.
    pub fn uniform_profile(&self) -> Option<BTreeMap<usize, usize>> {
        let on_lines = self.points_on_lines().ok()?;
        let mut profiles = on_lines.iter().map(|ids| {
            let mut prof = BTreeMap::new();
            for &i in ids {
                *prof.entry(self.points[i].multiplicity).or_insert(0) += 1;
            }
            prof
        });
        let first = profiles.next()?;
        profiles.all(|p| p == first).then_some(first)
    }
}

/// Drops the lines at `removed`, renumbering the rest in order, and
/// decrements multiplicities accordingly.
pub fn remove_lines(
    is: &IncidenceStructure,
    removed: &BTreeSet<usize>,
    policy: PointPolicy,
) -> Result<IncidenceStructure, ArrangementError> {
    if !is.has_members() {
        return Err(ArrangementError::NoIncidenceData);
    }
    if let Some(&index) = removed.iter().find(|&&i| i >= is.d) {
        return Err(ArrangementError::LineIndexOutOfRange { index, d: is.d });
    }
    if removed.len() == is.d {
        return Err(ArrangementError::RemovingAll);
    }
    let renumber: Vec<Option<usize>> = {
        let mut next = 0;
        (0..is.d)
            .map(|i| {
                if removed.contains(&i) {
                    None
                } else {
                    next += 1;
                    Some(next - 1)
                }
            })
            .collect()
    };
    let points = is
        .points
        .iter()
        .filter_map(|p| {
            let members: Vec<usize> = p
                .members
                .as_ref()
                .unwrap()
                .iter()
                .filter_map(|&l| renumber[l])
                .collect();
            let keep = match policy {
                PointPolicy::KeepOriginalPoints => true,
                PointPolicy::RestrictToNewSingular => members.len() >= 2,
            };
            keep.then(|| IncidencePoint {
                multiplicity: members.len(),
                members: Some(members),
                coords: p.coords.clone(),
            })
        })
        .collect();
    let complete = match policy {
        PointPolicy::KeepOriginalPoints => false,
        PointPolicy::RestrictToNewSingular => is.complete,
    };
    Ok(IncidenceStructure {
        d: is.d - removed.len(),
        points,
        complete,
        origin: is.origin,
        real: is.real,
        field: is.field.clone(),
    })
}

/// The common number of listed points on every line, if there is one.
pub fn equidistribution(is: &IncidenceStructure) -> Result<Option<usize>, ArrangementError> {
    let on_lines = is.points_on_lines()?;
    let n = on_lines[0].len();
    Ok(on_lines.iter().all(|ids| ids.len() == n).then_some(n))
}
