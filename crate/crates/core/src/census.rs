//! Knot-table ingestion and the census harness: run the certification
//! routes over a table and report which knots fail.

use crate::decide::{
    montesinos_certify, validate_certificate, Certificate,
    CertifyOutcome, Conjecture, Route, Witness, CERTIFICATE_SCHEMA,
};
use crate::diagram::Diagram;
use crate::state::{checkerboard_states, surface_summary, State};
use crate::tangles::{MontesinosPresentation, PretzelPresentation};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("line {0}: {1}")]
    Parse(usize, String),
}

#[derive(Clone, Debug)]
pub enum Annotation {
    Alternating,
    Torus(i64, i64),
    Montesinos(MontesinosPresentation),
    Pretzel(PretzelPresentation),
    /// A manually adjusted diagram (a Reidemeister III variant of the table
    /// diagram) to try on the checkerboard route.
    RIII(Diagram),
}

#[derive(Clone, Debug)]
pub struct KnotTableEntry {
    pub name: String,
    pub diagram: Diagram,
    pub annotations: Vec<Annotation>,
}

/// Table file format: one entry per line,
/// `name | X(...) X(...) ... | annotation, annotation, ...`
/// with annotations `alt`, `torus(p,q)`, `montesinos(M(...))`,
/// `pretzel(P(...))`, `riii(X(...) ...)`.  `#` starts a comment.
pub fn load_table(text: &str) -> Result<(Vec<KnotTableEntry>, Vec<String>), CensusError> {
    let mut entries = Vec::new();
    let mut warnings = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let lineno = lineno + 1;
        let parts: Vec<&str> = line.splitn(3, '|').map(str::trim).collect();
        if parts.len() < 2 {
            return Err(CensusError::Parse(lineno, "expected name | PD | notes".into()));
        }
        let name = parts[0].to_string();
        let diagram = Diagram::parse_pd(parts[1])
            .map_err(|e| CensusError::Parse(lineno, e.to_string()))?
            .with_name(name.clone());
        if diagram.component_count() != 1 {
            return Err(CensusError::Parse(
                lineno,
                format!(
                    "{name}: diagram has {} components, expected a knot",
                    diagram.component_count()
                ),
            ));
        }
        let mut annotations = Vec::new();
        if parts.len() == 3 && !parts[2].is_empty() {
            for raw_note in split_notes(parts[2]) {
                let note = raw_note.trim();
                if note.is_empty() {
                    continue;
                }
                annotations.push(parse_note(note).map_err(|e| CensusError::Parse(lineno, e))?);
            }
        }
        entries.push(KnotTableEntry {
            name,
            diagram,
            annotations,
        });
    }
    // Census cardinality checks are advisory.
    let upto10 = entries
        .iter()
        .filter(|e| e.diagram.crossing_count() <= 10)
        .count();
    let at11 = entries
        .iter()
        .filter(|e| e.diagram.crossing_count() == 11)
        .count();
    if upto10 > 0 && upto10 != 249 {
        warnings.push(format!("expected 249 knots with at most 10 crossings, found {upto10}"));
    }
    if at11 > 0 && at11 != 552 {
        warnings.push(format!("expected 552 knots with 11 crossings, found {at11}"));
    }
    Ok((entries, warnings))
}

/// Split on commas that are not inside parentheses.
fn split_notes(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

fn parse_note(note: &str) -> Result<Annotation, String> {
    if note.eq_ignore_ascii_case("alt") {
        return Ok(Annotation::Alternating);
    }
    if let Some(body) = note.strip_prefix("torus(").and_then(|s| s.strip_suffix(')')) {
        let nums: Vec<i64> = body
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| format!("bad torus note {note}")))
            .collect::<Result<_, _>>()?;
        if nums.len() != 2 {
            return Err(format!("bad torus note {note}"));
        }
        return Ok(Annotation::Torus(nums[0], nums[1]));
    }
    if let Some(body) = note.strip_prefix("montesinos(").and_then(|s| s.strip_suffix(')')) {
        return Ok(Annotation::Montesinos(
            MontesinosPresentation::parse(body).map_err(|e| e.to_string())?,
        ));
    }
    if let Some(body) = note.strip_prefix("pretzel(").and_then(|s| s.strip_suffix(')')) {
        return Ok(Annotation::Pretzel(
            PretzelPresentation::parse(body).map_err(|e| e.to_string())?,
        ));
    }
    if let Some(body) = note.strip_prefix("riii(").and_then(|s| s.strip_suffix(')')) {
        let d = Diagram::parse_pd(body).map_err(|e| e.to_string())?;
        return Ok(Annotation::RIII(d));
    }
    Err(format!("unknown annotation {note}"))
}

/// Which routes to try, in the fixed order: plus/minus states, torus
/// annotation, Montesinos annotation, pretzel annotation, checkerboard
/// criteria, exhaustive state search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteSet {
    pub sigma_pm: bool,
    pub torus: bool,
    pub montesinos: bool,
    pub pretzel: bool,
    pub checkerboard: bool,
    pub exhaustive: bool,
}

impl RouteSet {
    pub fn all() -> Self {
        RouteSet {
            sigma_pm: true,
            torus: true,
            montesinos: true,
            pretzel: true,
            checkerboard: true,
            exhaustive: false,
        }
    }

    pub fn sigma_only() -> Self {
        RouteSet {
            sigma_pm: true,
            torus: false,
            montesinos: false,
            pretzel: false,
            checkerboard: false,
            exhaustive: false,
        }
    }
}

impl Default for RouteSet {
    fn default() -> Self {
        RouteSet::all()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CensusOptions {
    pub routes: RouteSet,
    /// Crossing cap for the exhaustive fallback.
    pub state_cap: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            routes: RouteSet::all(),
            state_cap: 16,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KnotOutcome {
    pub name: String,
    pub crossings: usize,
    pub certificate: Option<Certificate>,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusReport {
    pub outcomes: Vec<KnotOutcome>,
    pub certified: usize,
    pub failed: Vec<String>,
}

impl CensusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "knots: {}", self.outcomes.len());
        let _ = writeln!(out, "certified: {}", self.certified);
        let _ = writeln!(out, "failed: {}", self.failed.len());
        for o in &self.outcomes {
            match &o.certificate {
                Some(c) => {
                    let _ = writeln!(out, "  {:<10} {:?}", o.name, c.route);
                }
                None => {
                    let _ = writeln!(out, "  {:<10} FAILED: {}", o.name, o.failures.join(" / "));
                }
            }
        }
        out
    }
}

/// Try the routes on one table entry, returning the first validating
/// certificate or the failure trail.
pub fn certify_knot(entry: &KnotTableEntry, options: &CensusOptions) -> KnotOutcome {
    let mut failures = Vec::new();
    let d = &entry.diagram;
    let n = d.crossing_count();
    let routes = options.routes;

    if routes.sigma_pm {
        match sigma_pm_certificate(&entry.name, d) {
            Ok(cert) => {
                return KnotOutcome {
                    name: entry.name.clone(),
                    crossings: n,
                    certificate: Some(cert),
                    failures,
                }
            }
            Err(reason) => failures.push(format!("plus/minus states: {reason}")),
        }
    }
    if routes.torus {
        if let Some(Annotation::Torus(p, q)) = entry
            .annotations
            .iter()
            .find(|a| matches!(a, Annotation::Torus(..)))
        {
            let cert = Certificate {
                schema: CERTIFICATE_SCHEMA,
                subject: entry.name.clone(),
                conjecture: Conjecture::Neuwirth,
                route: Route::TorusKnotAnnulus,
                witness: Witness::TorusAnnulus { p: *p, q: *q },
                surface_facts: None,
                witness_mirrored: false,
            };
            let v = validate_certificate(&cert);
            if v.ok {
                return KnotOutcome {
                    name: entry.name.clone(),
                    crossings: n,
                    certificate: Some(cert),
                    failures,
                };
            }
            failures.push(format!("torus annotation: {}", v.trail.join("; ")));
        } else {
            failures.push("torus annotation: none".into());
        }
    }
    if routes.montesinos {
        let mut tried = false;
        for a in &entry.annotations {
            if let Annotation::Montesinos(m) = a {
                tried = true;
                match montesinos_certify(m) {
                    Ok(CertifyOutcome::Certified(mut cert)) => {
                        cert.subject = format!("{} = {}", entry.name, m);
                        let v = validate_certificate(&cert);
                        if v.ok {
                            return KnotOutcome {
                                name: entry.name.clone(),
                                crossings: n,
                                certificate: Some(cert),
                                failures,
                            };
                        }
                        failures.push(format!("montesinos: {}", v.trail.join("; ")));
                    }
                    Ok(CertifyOutcome::Failed { attempts }) => {
                        failures.push(format!("montesinos: {}", attempts.join(" / ")))
                    }
                    Err(e) => failures.push(format!("montesinos: {e}")),
                }
            }
        }
        if !tried {
            failures.push("montesinos annotation: none".into());
        }
    }
    if routes.pretzel {
        let mut tried = false;
        for a in &entry.annotations {
            if let Annotation::Pretzel(p) = a {
                tried = true;
                match montesinos_certify(&p.to_montesinos()) {
                    Ok(CertifyOutcome::Certified(mut cert)) => {
                        cert.subject = format!("{} = {}", entry.name, p);
                        let v = validate_certificate(&cert);
                        if v.ok {
                            return KnotOutcome {
                                name: entry.name.clone(),
                                crossings: n,
                                certificate: Some(cert),
                                failures,
                            };
                        }
                        failures.push(format!("pretzel: {}", v.trail.join("; ")));
                    }
                    Ok(CertifyOutcome::Failed { attempts }) => {
                        failures.push(format!("pretzel: {}", attempts.join(" / ")))
                    }
                    Err(e) => failures.push(format!("pretzel: {e}")),
                }
            }
        }
        if !tried {
            failures.push("pretzel annotation: none".into());
        }
    }
    if routes.checkerboard {
        let mut variants: Vec<(String, &Diagram)> = vec![("table diagram".into(), d)];
        for a in &entry.annotations {
            if let Annotation::RIII(v) = a {
                variants.push(("adjusted diagram".into(), v));
            }
        }
        let mut reasons = Vec::new();
        for (label, vd) in variants {
            match checkerboard_certificate(&entry.name, vd) {
                Ok(cert) => {
                    return KnotOutcome {
                        name: entry.name.clone(),
                        crossings: n,
                        certificate: Some(cert),
                        failures,
                    }
                }
                Err(r) => reasons.push(format!("{label}: {r}")),
            }
        }
        failures.push(format!("checkerboard: {}", reasons.join(" / ")));
    }
    if routes.exhaustive && n <= options.state_cap {
        if let Some(cert) = exhaustive_state_certificate(&entry.name, d) {
            return KnotOutcome {
                name: entry.name.clone(),
                crossings: n,
                certificate: Some(cert),
                failures,
            };
        }
        failures.push("exhaustive state search: nothing validated".into());
    }
    KnotOutcome {
        name: entry.name.clone(),
        crossings: n,
        certificate: None,
        failures,
    }
}

/// An adequate homogeneous non-Seifert certificate from the all-plus or
/// all-minus state.
fn sigma_pm_certificate(name: &str, d: &Diagram) -> Result<Certificate, String> {
    let n = d.crossing_count();
    let mut reasons = Vec::new();
    for s in [State::all_plus(n), State::all_minus(n)] {
        let cert = Certificate {
            schema: CERTIFICATE_SCHEMA,
            subject: name.into(),
            conjecture: Conjecture::StrongNeuwirth,
            route: Route::AdequateHomogeneousState,
            witness: Witness::StateOnDiagram {
                pd: d.to_pd_string(),
                state: s.to_string(),
            },
            surface_facts: surface_summary(d, &s).ok(),
            witness_mirrored: false,
        };
        let v = validate_certificate(&cert);
        if v.ok {
            return Ok(cert);
        }
        reasons.push(format!("{s}: {}", v.trail.last().cloned().unwrap_or_default()));
    }
    Err(reasons.join(" / "))
}

/// A checkerboard certificate through the weighted-graph criterion.
fn checkerboard_certificate(name: &str, d: &Diagram) -> Result<Certificate, String> {
    let (black, white) = checkerboard_states(d);
    let mut reasons = Vec::new();
    for s in [black, white] {
        let summary = surface_summary(d, &s).map_err(|e| e.to_string())?;
        if summary.orientable {
            reasons.push(format!("{s}: orientable"));
            continue;
        }
        let cert = Certificate {
            schema: CERTIFICATE_SCHEMA,
            subject: name.into(),
            conjecture: Conjecture::StrongNeuwirth,
            route: Route::GraphCheckerboard,
            witness: Witness::StateOnDiagram {
                pd: d.to_pd_string(),
                state: s.to_string(),
            },
            surface_facts: Some(summary),
            witness_mirrored: false,
        };
        let v = validate_certificate(&cert);
        if v.ok {
            return Ok(cert);
        }
        reasons.push(format!("{s}: {}", v.trail.last().cloned().unwrap_or_default()));
    }
    Err(reasons.join(" / "))
}

/// Last-resort search over all states, trying the adequate-homogeneous and
/// Murasugi-factor validations.
fn exhaustive_state_certificate(name: &str, d: &Diagram) -> Option<Certificate> {
    let n = d.crossing_count();
    for mask in 0..(1u64 << n) {
        let s = State::from_mask(mask, n);
        for route in [Route::AdequateHomogeneousState, Route::MurasugiMinor] {
            let cert = Certificate {
                schema: CERTIFICATE_SCHEMA,
                subject: name.into(),
                conjecture: Conjecture::StrongNeuwirth,
                route,
                witness: Witness::StateOnDiagram {
                    pd: d.to_pd_string(),
                    state: s.to_string(),
                },
                surface_facts: surface_summary(d, &s).ok(),
                witness_mirrored: false,
            };
            if validate_certificate(&cert).ok {
                return Some(cert);
            }
        }
    }
    None
}

/// Run the harness over a table; entries are processed independently and
/// reported in input order.
pub fn run_census(entries: &[KnotTableEntry], options: &CensusOptions) -> CensusReport {
    let outcomes: Vec<KnotOutcome> = entries
        .par_iter()
        .map(|e| certify_knot(e, options))
        .collect();
    let certified = outcomes.iter().filter(|o| o.certificate.is_some()).count();
    let failed = outcomes
        .iter()
        .filter(|o| o.certificate.is_none())
        .map(|o| o.name.clone())
        .collect();
    CensusReport {
        outcomes,
        certified,
        failed,
    }
}

/// Group a report's failures by crossing number (convenience for tests and
/// the command-line summary).
pub fn failures_by_crossings(report: &CensusReport) -> BTreeMap<usize, Vec<String>> {
    let mut map: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for o in &report.outcomes {
        if o.certificate.is_none() {
            map.entry(o.crossings).or_default().push(o.name.clone());
        }
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_table_lines() {
        let text = "\
# comment
3_1 | X(1,4,2,5) X(3,6,4,1) X(5,2,6,3) | alt
8_19 | X(1,4,2,5) X(3,6,4,1) X(5,2,6,3) | torus(3,4), montesinos(M(-1/2,1/3,1/3))
";
        let (entries, _) = load_table(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].name, "3_1");
        assert!(matches!(entries[0].annotations[0], Annotation::Alternating));
        assert!(matches!(entries[1].annotations[0], Annotation::Torus(3, 4)));
        assert!(matches!(entries[1].annotations[1], Annotation::Montesinos(_)));
        assert!(load_table("bad line").is_err());
        assert!(load_table("L | X(1,2,1,2) |").is_err());
        assert_eq!(load_table("").unwrap().0.len(), 0);
    }

    #[test]
    fn trefoil_and_figure8_certify_via_states() {
        let text = "\
3_1 | X(1,4,2,5) X(3,6,4,1) X(5,2,6,3) | alt
4_1 | X(8,4,1,3) X(4,8,5,7) X(2,5,3,6) X(6,1,7,2) | alt
";
        let (entries, _) = load_table(text).unwrap();
        let report = run_census(&entries, &CensusOptions::default());
        assert_eq!(report.certified, 2);
        for o in &report.outcomes {
            let c = o.certificate.as_ref().unwrap();
            assert_eq!(c.route, Route::AdequateHomogeneousState);
            assert!(validate_certificate(c).ok);
        }
    }

    #[test]
    fn deterministic_reports() {
        let text = "3_1 | X(1,4,2,5) X(3,6,4,1) X(5,2,6,3) | alt";
        let (entries, _) = load_table(text).unwrap();
        let a = run_census(&entries, &CensusOptions::default()).to_json();
        let b = run_census(&entries, &CensusOptions::default()).to_json();
        assert_eq!(a, b);
    }
}
