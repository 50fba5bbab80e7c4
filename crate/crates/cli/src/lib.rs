//! Verification pipelines and the report type behind the `mols` binary.
//!
//! Everything here is pure: inputs are parsed datasets or MOLS sets, outputs
//! are [`VerificationReport`]s. File and terminal I/O live in `main.rs`.

use std::fmt::Write as _;
use std::path::Path;

use mols_core::code::PermutationCode;
use mols_core::datasets::{self, Dataset, DmDataset, PaDataset};
use mols_core::latin::{verify_mols, MolsDocument, MolsSet};
use mols_core::{Error, Result};
use serde::Serialize;
use serde_json::{json, Map, Value};

/// Bumped whenever a field of the JSON report changes meaning or shape.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// Also convert to MOLS and verify the squares.
    pub build: bool,
    /// Stop at the first failing stage or violation.
    pub fail_fast: bool,
}

/// One expected-versus-observed comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub observed: Value,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub schema_version: u32,
    pub command: String,
    pub dataset: String,
    /// Computed quantities, keyed by camelCase name (sorted on output).
    pub facts: Map<String, Value>,
    pub checks: Vec<Check>,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
    pub pass: bool,
    /// Text mode only; JSON output must stay byte-deterministic.
    #[serde(skip)]
    pub wall_time: Option<std::time::Duration>,
}

impl VerificationReport {
    pub fn new(command: &str, dataset: &str) -> Self {
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            dataset: dataset.to_string(),
            facts: Map::new(),
            checks: Vec::new(),
            violations: Vec::new(),
            notes: Vec::new(),
            pass: false,
            wall_time: None,
        }
    }

    pub fn fact(&mut self, name: &str, value: impl Into<Value>) {
        self.facts.insert(name.to_string(), value.into());
    }

    /// Records a comparison and returns whether it matched.
    pub fn check<T: Serialize + PartialEq>(&mut self, name: &str, expected: T, observed: T) -> bool {
        let ok = expected == observed;
        self.checks.push(Check {
            name: name.to_string(),
            expected: json!(expected),
            observed: json!(observed),
            ok,
        });
        if !ok {
            self.violate(
                "mismatch",
                format!("{name}: expected {}, observed {}", json!(expected), json!(observed)),
            );
        }
        ok
    }

    pub fn violate(&mut self, kind: &str, detail: impl Into<String>) {
        self.violations.push(Violation {
            kind: kind.to_string(),
            detail: detail.into(),
        });
    }

    /// Sets `pass` from the checks and violations. Call once all stages ran.
    pub fn finish(&mut self) {
        self.pass = self.violations.is_empty() && self.checks.iter().all(|c| c.ok);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{} {}: {verdict}", self.command, self.dataset);
        for (k, v) in &self.facts {
            let _ = writeln!(out, "  {k:<24} {}", compact(v));
        }
        for c in &self.checks {
            let mark = if c.ok { "ok" } else { "MISMATCH" };
            let _ = writeln!(
                out,
                "  check {:<24} expected {} observed {}  {mark}",
                c.name,
                compact(&c.expected),
                compact(&c.observed)
            );
        }
        for v in &self.violations {
            let _ = writeln!(out, "  violation [{}] {}", v.kind, v.detail);
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        if let Some(t) = self.wall_time {
            let _ = writeln!(out, "  wall time {:.3} s", t.as_secs_f64());
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// A finished pipeline: the report, plus the squares when they were built and
/// verified.
#[derive(Debug)]
pub struct Outcome {
    pub report: VerificationReport,
    pub mols: Option<MolsSet>,
}

impl Outcome {
    fn done(mut report: VerificationReport, mols: Option<MolsSet>) -> Self {
        report.finish();
        let mols = mols.filter(|_| report.pass);
        Outcome { report, mols }
    }
}

/// Looks up an embedded dataset by name, falling back to a file path.
pub fn resolve_dataset(source: &str) -> Result<Dataset> {
    if datasets::embedded_text(source).is_some() {
        return datasets::load_embedded(source);
    }
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::UnknownDataset(format!("{source}: {e}")))?;
        return Dataset::parse(&text);
    }
    Err(Error::UnknownDataset(source.to_string()))
}

pub fn verify_dataset(command: &str, dataset: &Dataset, opts: Options) -> Outcome {
    match dataset {
        Dataset::Pa(d) => verify_pa(command, d, opts),
        Dataset::Dm(d) => verify_dm(command, d, opts),
    }
}

pub fn verify_pa(command: &str, d: &PaDataset, opts: Options) -> Outcome {
    let mut r = VerificationReport::new(command, &d.name);
    let n = d.n;
    let u = d.subgroup();
    r.fact("n", n);
    r.fact("generators", d.generators().len());
    r.fact("representatives", d.representatives().len());

    let order = match u.order() {
        Ok(order) => {
            r.fact("groupOrder", order);
            r.check("groupOrder", d.expected.order, order);
            Some(order)
        }
        Err(e) => {
            r.violate("group", e.to_string());
            None
        }
    };
    if opts.fail_fast && !r.violations.is_empty() {
        return Outcome::done(r, None);
    }

    let mut orbits = Vec::with_capacity(d.representatives().len());
    for rep in d.representatives() {
        match u.orbit(rep) {
            Ok(o) => orbits.push(o),
            Err(e) => {
                r.violate("orbit", e.to_string());
                return Outcome::done(r, None);
            }
        }
    }
    let sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    r.fact("orbitSizes", json!(sizes));
    r.check("orbitSizes", d.expected.orbit_sizes.clone(), sizes.clone());
    if let Some(order) = order {
        for (i, s) in sizes.iter().enumerate() {
            if order % s != 0 {
                r.violate(
                    "orbit",
                    format!("orbit {} has size {s}, which does not divide {order}", i + 1),
                );
            }
        }
    }
    if opts.fail_fast && !r.violations.is_empty() {
        return Outcome::done(r, None);
    }

    let code = match PermutationCode::union(n, orbits) {
        Ok(c) => c,
        Err(e) => {
            r.violate("code", e.to_string());
            return Outcome::done(r, None);
        }
    };
    r.fact("codeSize", code.len());
    r.check("codeSize", d.expected.separable * n, code.len());
    match code.min_distance() {
        Ok(dist) => {
            r.fact("minDistance", dist);
            r.check("minDistance", d.expected.min_distance, dist);
        }
        Err(e) => r.violate("code", e.to_string()),
    }
    if opts.fail_fast && !r.violations.is_empty() {
        return Outcome::done(r, None);
    }

    let separated = match code.separate() {
        Ok(s) => {
            r.fact("separableClasses", s.class_count());
            r.check("separableClasses", d.expected.separable, s.class_count());
            s
        }
        Err(e) => {
            r.violate("separation", e.to_string());
            return Outcome::done(r, None);
        }
    };
    if !opts.build || (opts.fail_fast && !r.violations.is_empty()) {
        return Outcome::done(r, None);
    }
    let mols = separated.to_mols();
    record_mols(&mut r, &mols, opts.fail_fast, Some(d.expected.separable));
    Outcome::done(r, Some(mols))
}

pub fn verify_dm(command: &str, d: &DmDataset, opts: Options) -> Outcome {
    let mut r = VerificationReport::new(command, &d.name);
    r.fact("group", d.descriptor.to_string());
    r.fact("groupOrder", d.descriptor.order());
    r.fact("rows", d.k);

    let powers = d.check_power_notes();
    r.fact("powerNotes", powers.len());
    r.check("powerNotesValid", powers.len(), powers.iter().filter(|p| p.ok).count());
    for p in powers.iter().filter(|p| !p.ok) {
        r.violate(
            "power-note",
            format!(
                "component {} exponent {}: listed {}, computed {}",
                p.component, p.exponent, p.listed, p.computed
            ),
        );
    }

    let base = d.base();
    r.fact("baseColumns", base.base_columns.len());
    r.fact("expansionVectors", base.expansion_vectors.len());
    r.fact(
        "scalarTuples",
        mols_core::dm::SCALAR_MODULUS.pow(base.expansion_vectors.len() as u32),
    );
    let matrix = match base.expand() {
        Ok(m) => m,
        Err(e) => {
            r.violate("expansion", e.to_string());
            r.notes.push(TRANSCRIPTION_NOTE.into());
            return Outcome::done(r, None);
        }
    };
    r.fact("columns", matrix.column_count());
    r.check("columns", d.expected.n, matrix.column_count());
    r.check("rows", d.k, matrix.row_count());

    let report = matrix.verify_with(opts.fail_fast);
    r.fact("rowPairsTotal", report.pairs_total);
    r.fact("rowPairsChecked", report.pairs_checked);
    r.fact("rowPairsPassed", report.pairs_passed());
    r.check("rowPairsPassed", report.pairs_total, report.pairs_passed());
    if let Some((expected, found)) = report.column_count_mismatch {
        r.violate(
            "difference-matrix",
            format!("{found} columns, expected |G| = {expected}"),
        );
    }
    for f in &report.failures {
        let mut detail = format!("rows {} and {}:", f.rows.0, f.rows.1);
        if let Some(dup) = &f.duplicated {
            let _ = write!(detail, " difference {dup} occurs more than once");
        }
        if let Some(missing) = &f.missing {
            let sep = if f.duplicated.is_some() { ";" } else { "" };
            let _ = write!(detail, "{sep} difference {missing} never occurs");
        }
        r.violate("difference-matrix", detail);
    }
    if !report.passed() {
        r.notes.push(TRANSCRIPTION_NOTE.into());
    }
    if !opts.build || !r.violations.is_empty() {
        return Outcome::done(r, None);
    }
    match matrix.to_mols() {
        Ok(mols) => {
            record_mols(&mut r, &mols, opts.fail_fast, Some(d.expected.mols));
            Outcome::done(r, Some(mols))
        }
        Err(e) => {
            r.violate("mols", e.to_string());
            Outcome::done(r, None)
        }
    }
}

const TRANSCRIPTION_NOTE: &str =
    "the difference-matrix check failed: suspect the dataset transcription before the algorithm";

/// Runs the MOLS check and folds its counts and violations into `r`.
fn record_mols(r: &mut VerificationReport, mols: &MolsSet, fail_fast: bool, expected: Option<usize>) {
    let report = verify_mols(mols, fail_fast);
    let m = mols.len();
    r.fact("molsOrder", mols.order());
    r.fact("molsSquares", m);
    r.fact("latinChecked", report.latin_checked);
    r.fact("orthogonalPairs", report.pairs_checked);
    if let Some(expected) = expected {
        r.check("molsSquares", expected, m);
    }
    r.check(
        "orthogonalPairsChecked",
        m * m.saturating_sub(1) / 2,
        report.pairs_checked,
    );
    for (i, v) in &report.latin_violations {
        r.violate("latin", format!("square {}: {v}", i + 1));
    }
    for (a, b, c) in &report.collisions {
        r.violate("orthogonality", format!("squares {} and {}: {c}", a + 1, b + 1));
    }
}

/// Reads MOLS from either the text format or its JSON mirror.
pub fn parse_mols(text: &str) -> Result<MolsSet> {
    if text.trim_start().starts_with('{') {
        let doc: MolsDocument = serde_json::from_str(text).map_err(|e| Error::MolsFormat {
            line: e.line(),
            message: e.to_string(),
        })?;
        MolsSet::from_document(&doc)
    } else {
        MolsSet::parse_text(text)
    }
}

/// Verifies one MOLS set read from `source` (a file name, for the report).
pub fn verify_mols_set(source: &str, mols: &MolsSet, fail_fast: bool) -> VerificationReport {
    let mut r = VerificationReport::new("verify-mols", source);
    record_mols(&mut r, mols, fail_fast, None);
    r.finish();
    r
}

/// Folds per-file reports into one; a single report is returned unchanged.
pub fn merge_reports(command: &str, mut reports: Vec<VerificationReport>) -> VerificationReport {
    if reports.len() == 1 {
        return reports.pop().unwrap();
    }
    let names: Vec<&str> = reports.iter().map(|r| r.dataset.as_str()).collect();
    let mut out = VerificationReport::new(command, &names.join(", "));
    let mut files = Vec::new();
    for r in &reports {
        let mut entry = r.facts.clone();
        entry.insert("source".into(), json!(r.dataset));
        entry.insert("pass".into(), json!(r.pass));
        files.push(Value::Object(entry));
        for c in &r.checks {
            out.checks.push(Check {
                name: format!("{}: {}", r.dataset, c.name),
                ..c.clone()
            });
        }
        for v in &r.violations {
            out.violate(&v.kind, format!("{}: {}", r.dataset, v.detail));
        }
    }
    out.fact("files", Value::Array(files));
    out.finish();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MolsFormat {
    Mols,
    Json,
}

pub fn render_mols(mols: &MolsSet, format: MolsFormat) -> String {
    match format {
        MolsFormat::Mols => mols.to_text(),
        MolsFormat::Json => {
            let mut s = serde_json::to_string(&mols.to_document()).expect("document serializes");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mols_core::latin::LatinSquare;

    fn cyclic(n: usize, step: usize) -> LatinSquare {
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|i| (0..n).map(|j| ((i + step * j) % n + 1) as u32).collect())
            .collect();
        LatinSquare::from_rows(&rows).unwrap()
    }

    #[test]
    fn pass_requires_checks_and_no_violations() {
        let mut r = VerificationReport::new("x", "y");
        r.finish();
        assert!(r.pass);
        assert!(!r.check("a", 1, 2));
        r.finish();
        assert!(!r.pass);
        assert_eq!(r.violations.len(), 1);
    }

    #[test]
    fn json_has_schema_version_and_no_wall_time() {
        let mut r = VerificationReport::new("verify-pa", "d");
        r.wall_time = Some(std::time::Duration::from_millis(5));
        r.finish();
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schemaVersion"], SCHEMA_VERSION);
        assert!(v.get("wallTime").is_none());
        assert!(r.to_text().contains("wall time"));
    }

    #[test]
    fn mols_formats_parse_back() {
        let mols = MolsSet::new(5, vec![cyclic(5, 1), cyclic(5, 2)]).unwrap();
        for f in [MolsFormat::Mols, MolsFormat::Json] {
            assert_eq!(parse_mols(&render_mols(&mols, f)).unwrap(), mols);
        }
        assert!(verify_mols_set("m", &mols, false).pass);
        let same = MolsSet::new(5, vec![cyclic(5, 2), cyclic(5, 2)]).unwrap();
        let r = verify_mols_set("m", &same, false);
        assert!(!r.pass);
        assert_eq!(r.violations[0].kind, "orthogonality");
    }

    #[test]
    fn unknown_dataset() {
        assert!(matches!(
            resolve_dataset("no-such-thing"),
            Err(Error::UnknownDataset(_))
        ));
    }

    #[test]
    fn deleted_representative_fails_verification() {
        let text = datasets::embedded_text("n54-pa").unwrap();
        let mut lines: Vec<&str> = text.lines().collect();
        let at = lines.iter().position(|l| l.starts_with("representative")).unwrap();
        lines.remove(at);
        while lines[at].starts_with(' ') {
            lines.remove(at);
        }
        let d = match Dataset::parse(&(lines.join("\n") + "\n")).unwrap() {
            Dataset::Pa(d) => d,
            Dataset::Dm(_) => unreachable!(),
        };
        let out = verify_pa("verify-pa", &d, Options::default());
        assert!(!out.report.pass);
        assert_eq!(out.report.facts["codeSize"], 405);
        assert!(out.report.violations.iter().any(|v| v.kind == "separation"));
    }
}
