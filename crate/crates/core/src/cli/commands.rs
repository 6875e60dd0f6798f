use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::arrangement::{
    equidistribution, remove_lines, restrict_to_singular, singular_points, spectrum_of, ArrangementError,
    IncidenceStructure, PointPolicy, PointSet, Spectrum,
};
use crate::catalog::{self, CatalogError};
use crate::fields::Rational;
use crate::negativity::{
    finite_field_bound, h_at_incidence, h_at_points, h_curve, h_full, hirzebruch_check, index_bound, main_lower_bound,
    mean_vs_implicit_m, melchior_check, real_identity_and_bound, remove_meeting_pair, subconfig_formula,
    NegativityError,
};

use super::format::{parse_file, parse_points, write_file, ArrangementFile, Body, ParseError};
use super::report::{CertEntry, Check, Exact, HEntry, MeanEntry, Report, SearchEntry, SpectrumSummary};
use super::search::{search_min_h, SearchError, SearchOptions, DEFAULT_BUDGET};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Negativity(#[from] NegativityError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("{0}")]
    Usage(String),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load(path: &Path) -> Result<ArrangementFile, CliError> {
    parse_file(&read(path)?).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutFormat {
    Coords,
    Spectrum,
}

/// Canonical file text for a catalog entry.
pub fn generate(name: &str, format: Option<OutFormat>) -> Result<String, CliError> {
    let entry = catalog::generate(name)?;
    let format = format.unwrap_or(if entry.arrangement.is_some() {
        OutFormat::Coords
    } else {
        OutFormat::Spectrum
    });
    let body = match format {
        OutFormat::Coords => match entry.arrangement {
            Some(a) => Body::Lines(a),
            None => {
                return Err(CliError::Usage(format!(
                    "{} has no coordinates; use --format spectrum",
                    entry.name
                )))
            }
        },
        OutFormat::Spectrum => match (entry.spectrum, entry.arrangement) {
            (Some(s), _) => Body::Spectrum(s),
            (None, Some(a)) => Body::Spectrum(spectrum_of(&singular_points(&a)?)),
            (None, None) => unreachable!("catalog entries carry coordinates or a spectrum"),
        },
    };
    Ok(write_file(&ArrangementFile {
        name: Some(entry.name),
        body,
    }))
}

pub fn write_output(out: Option<&PathBuf>, text: &str) -> Result<Option<String>, CliError> {
    match out {
        Some(p) => {
            fs::write(p, text).map_err(|source| CliError::Io {
                path: p.display().to_string(),
                source,
            })?;
            Ok(None)
        }
        None => Ok(Some(text.to_string())),
    }
}

fn cert_na(kind: &'static str, reason: String) -> CertEntry {
    CertEntry {
        kind,
        applicable: false,
        reason,
        holds: false,
        strict: true,
        slack: Exact(Rational::default()),
        bound: None,
        e: None,
    }
}

pub fn certificates(s: &Spectrum) -> Vec<CertEntry> {
    let mut out = vec![
        CertEntry::from(&hirzebruch_check(s)),
        CertEntry::from(&melchior_check(s)),
        CertEntry::from(&main_lower_bound(s)),
    ];
    out.push(match real_identity_and_bound(s) {
        Ok(r) => CertEntry::from(&r),
        Err(NegativityError::FormsDisagree { linear, quadratic }) => {
            let mut c = cert_na(
                "real_lower_bound",
                format!("identity fails: h = {linear} but the right side is {quadratic}"),
            );
            c.applicable = true;
            c
        }
        Err(e) => cert_na("real_lower_bound", e.to_string()),
    });
    out.push(CertEntry::from(&index_bound(s)));
    if let Some(f) = s.field().filter(|f| f.characteristic() > 0) {
        match f.order().and_then(|q| q.to_u64()) {
            Some(q) => out.push(CertEntry::from(&finite_field_bound(s, q))),
            None => out.push(cert_na("finite_field_bound", "field order too large".to_string())),
        }
    }
    out
}

fn new_report(command: &'static str, file: &ArrangementFile, s: &Spectrum) -> Report {
    Report {
        command,
        name: file.name.clone(),
        input: file.kind(),
        removed: None,
        spectrum: SpectrumSummary::from(s),
        h: Vec::new(),
        infimum: None,
        mean: None,
        certificates: Vec::new(),
        checks: Vec::new(),
        search: None,
        notes: Vec::new(),
    }
}

/// Full-locus value, infimum flag, mean comparison and certificates.
fn describe(report: &mut Report, s: &Spectrum, label: &str) -> Result<Option<Rational>, CliError> {
    report.certificates = certificates(s);
    if !s.is_complete() || s.s() == 0 {
        return Ok(None);
    }
    let curve = h_curve(s)?;
    report.h.push(HEntry::new(label, &curve.report));
    report.infimum = Some(curve.infimum);
    report.mean = Some(MeanEntry::from(&mean_vs_implicit_m(s)?));
    Ok(Some(curve.report.h))
}

fn catalog_check(report: &mut Report, h: Option<&Rational>) {
    let Some(name) = report.name.clone() else { return };
    match catalog::generate(&name) {
        Ok(entry) => {
            if let (Some(h), Some(expected)) = (h, &entry.expected_h) {
                report.checks.push(Check::equal("catalog closed form", h, expected));
            }
            report.notes.extend(entry.notes);
        }
        Err(_) => report.notes.push(format!("{name} is not a catalog name")),
    }
}

pub enum Points {
    Full,
    File(PathBuf),
}

pub fn analyze(path: &Path, points: &Points) -> Result<Report, CliError> {
    let file = load(path)?;
    match (&file.body, points) {
        (Body::Lines(a), _) => {
            let is = singular_points(a)?;
            let s = spectrum_of(&is);
            let mut report = new_report("analyze", &file, &s);
            let h = describe(&mut report, &s, "full singular locus")?;
            if let Points::File(p) = points {
                let (field, pts) = parse_points(&read(p)?).map_err(|source| CliError::Parse {
                    path: p.display().to_string(),
                    source,
                })?;
                if &field != a.field() {
                    return Err(CliError::Usage(format!(
                        "point file is over {field}, arrangement over {}",
                        a.field()
                    )));
                }
                let set = PointSet::new(pts)?;
                let at = h_at_points(a, &set)?;
                report.h.push(HEntry::new("given points", &at));
                match restrict_to_singular(&set, a) {
                    Ok(r) => {
                        let rest = h_at_points(a, &r)?;
                        report.h.push(HEntry::new("given points, singular only", &rest));
                        if at.h <= Rational::from_integer((-1).into()) {
                            let mut c = Check::equal("restriction does not raise H", &rest.h, &at.h);
                            c.holds = rest.h <= at.h;
                            report.checks.push(c);
                        }
                    }
                    Err(ArrangementError::EmptyResult) => {
                        report.notes.push("no given point is singular".to_string());
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            catalog_check(&mut report, h.as_ref());
            Ok(report)
        }
        (_, Points::File(_)) => Err(CliError::Usage("point files need coordinate input".to_string())),
        (Body::Spectrum(s), Points::Full) => {
            let mut report = new_report("analyze", &file, s);
            let h = describe(&mut report, s, "full singular locus")?;
            if !s.is_complete() {
                report
                    .notes
                    .push("spectrum not flagged complete: H-constants need the full locus".to_string());
            }
            catalog_check(&mut report, h.as_ref());
            Ok(report)
        }
        (Body::Incidence(is), Points::Full) => {
            let s = spectrum_of(is);
            let mut report = new_report("analyze", &file, &s);
            let h = describe(&mut report, &s, "full singular locus")?;
            if !is.is_complete() {
                report.h.push(HEntry::new("listed points", &h_at_incidence(is)?));
            }
            catalog_check(&mut report, h.as_ref());
            Ok(report)
        }
    }
}

fn incidence_of(file: &ArrangementFile) -> Result<IncidenceStructure, CliError> {
    match &file.body {
        Body::Lines(a) => Ok(singular_points(a)?),
        Body::Incidence(is) => Ok(is.clone()),
        Body::Spectrum(_) => Err(ArrangementError::NoIncidenceData.into()),
    }
}

pub enum SubconfigMode {
    Remove(Vec<usize>),
    PairsMeeting(usize),
    Formula { d_prime: usize, n: Option<usize> },
}

/// Parses `D`, `D,N`, `d'=D` or `d'=D,n=N`.
pub fn parse_formula_arg(s: &str) -> Result<SubconfigMode, CliError> {
    let bad = || CliError::Usage(format!("--formula expects D or D,N, got {s:?}"));
    let mut parts = s.split(',').map(str::trim);
    let num = |p: Option<&str>, prefix: &str| -> Result<Option<usize>, CliError> {
        match p {
            None => Ok(None),
            Some(p) => p.strip_prefix(prefix).unwrap_or(p).parse().map(Some).map_err(|_| bad()),
        }
    };
    let d_prime = num(parts.next(), "d'=")?.ok_or_else(bad)?;
    let n = num(parts.next(), "n=")?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(SubconfigMode::Formula { d_prime, n })
}

pub fn subconfig(path: &Path, mode: &SubconfigMode) -> Result<Report, CliError> {
    let file = load(path)?;
    match mode {
        SubconfigMode::Remove(indices) => {
            let is = incidence_of(&file)?;
            if !is.is_complete() {
                return Err(NegativityError::IncompleteLocus.into());
            }
            let set: BTreeSet<usize> = indices.iter().copied().collect();
            let d = is.d();
            if let Some(&index) = set.iter().find(|&&i| i >= d) {
                return Err(ArrangementError::LineIndexOutOfRange { index, d }.into());
            }
            if d - set.len().min(d) < 2 {
                return Err(CliError::Usage(
                    "the subarrangement needs at least two lines".to_string(),
                ));
            }
            let original = h_full(&is)?;
            let kept = h_at_incidence(&remove_lines(&is, &set, PointPolicy::KeepOriginalPoints)?)?;
            let restricted = remove_lines(&is, &set, PointPolicy::RestrictToNewSingular)?;
            let new_spec = match &file.body {
                Body::Lines(a) => spectrum_of(&singular_points(&a.without_lines(&set)?)?),
                _ => spectrum_of(&restricted),
            };
            let mut report = new_report("subconfig", &file, &new_spec);
            report.removed = Some(set.iter().copied().collect());
            report.h.push(HEntry::new("original full locus", &original));
            report
                .h
                .push(HEntry::new("subarrangement at the original points", &kept));
            let d_prime = d - set.len();
            match equidistribution(&is)? {
                Some(n) => {
                    let f = subconfig_formula(&original.h, d, d_prime, n, original.s)?;
                    report.h.push(HEntry::formula_only(
                        format!("formula at the original points (n = {n})"),
                        &f,
                        d_prime,
                        original.s,
                    ));
                    report
                        .checks
                        .push(Check::equal("formula vs direct recomputation", &f, &kept.h));
                }
                None => report
                    .notes
                    .push("lines carry different numbers of points; the formula does not apply".to_string()),
            }
            let h_new = describe(&mut report, &new_spec, "subarrangement at its singular locus")?;
            if let (Body::Lines(_), Some(h_new)) = (&file.body, h_new) {
                let via_incidence = h_full(&spectrum_of(&restricted))?.h;
                report.checks.push(Check::equal(
                    "incidence removal vs recomputed locus",
                    &via_incidence,
                    &h_new,
                ));
            }
            Ok(report)
        }
        SubconfigMode::PairsMeeting(m) => {
            let (s, is) = match &file.body {
                Body::Spectrum(s) => (s.clone(), None),
                _ => {
                    let is = incidence_of(&file)?;
                    (spectrum_of(&is), Some(is))
                }
            };
            let original = h_full(&s)?;
            let r = remove_meeting_pair(&s, *m)?;
            let mut report = new_report("subconfig", &file, &r.spectrum);
            report.h.push(HEntry::new("original full locus", &original));
            report
                .h
                .push(HEntry::new("subarrangement at the original points", &r.over_original));
            describe(&mut report, &r.spectrum, "subarrangement at its singular locus")?;
            if let Some(is) = is {
                if let Some(p) = is.points().iter().find(|p| p.multiplicity == *m) {
                    let members = p.members.as_ref().expect("incidence data");
                    let pair: BTreeSet<usize> = members[..2].iter().copied().collect();
                    let direct = spectrum_of(&remove_lines(&is, &pair, PointPolicy::RestrictToNewSingular)?);
                    report.removed = Some(pair.iter().copied().collect());
                    report.checks.push(Check::equal(
                        "profile count vs direct removal",
                        &r.over_new_locus.h,
                        &h_full(&direct)?.h,
                    ));
                    if direct.counts() != r.spectrum.counts() {
                        report
                            .notes
                            .push("direct removal gives a different spectrum".to_string());
                    }
                }
            }
            Ok(report)
        }
        SubconfigMode::Formula { d_prime, n } => {
            let (s, from_lines) = match &file.body {
                Body::Spectrum(s) => (s.clone(), s.equidistribution()),
                _ => {
                    let is = incidence_of(&file)?;
                    let n = equidistribution(&is)?;
                    (spectrum_of(&is), n)
                }
            };
            let n = n.or(from_lines).ok_or_else(|| {
                CliError::Usage("not equidistributed: pass N explicitly or give a per-line profile".to_string())
            })?;
            let original = h_full(&s)?;
            let f = subconfig_formula(&original.h, s.d(), *d_prime, n, original.s)?;
            let mut report = new_report("subconfig", &file, &s);
            report.certificates = certificates(&s);
            report.h.push(HEntry::new("original full locus", &original));
            report.h.push(HEntry::formula_only(
                format!("formula at the original points for any {d_prime} lines (n = {n})"),
                &f,
                *d_prime,
                original.s,
            ));
            Ok(report)
        }
    }
}

/// Flag, then `NEGARR_BUDGET`, then the default.
pub fn resolve_budget(flag: Option<u128>, env: Option<String>) -> Result<u128, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match env {
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("NEGARR_BUDGET={v:?} is not a count"))),
        None => Ok(DEFAULT_BUDGET),
    }
}

pub fn search(path: &Path, opts: SearchOptions) -> Result<Report, CliError> {
    let file = load(path)?;
    let is = incidence_of(&file)?;
    let original = h_full(&is)?;
    let out = search_min_h(&is, opts)?;
    let best = spectrum_of(&out.structure);
    let mut report = new_report("search", &file, &best);
    report.removed = Some(out.removed.clone());
    report.h.push(HEntry::new("original full locus", &original));
    let h = describe(&mut report, &best, "best subarrangement at its singular locus")?;
    if let Some(h) = h {
        report
            .checks
            .push(Check::equal("search value vs recomputation", &out.h, &h));
    }
    report.search = Some(SearchEntry {
        objective: "min-h",
        max_remove: opts.max_remove,
        budget: opts.budget,
        candidates: out.candidates,
        evaluated: out.evaluated,
        pruned: out.pruned,
        pruning: out.pruning,
        original_h: Exact(original.h),
        best_removed: out.removed,
        best_h: Exact(out.h),
    });
    Ok(report)
}
