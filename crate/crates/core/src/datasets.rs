//! Embedded constructions and the line-oriented dataset formats.
//!
//! Both formats are keyword-per-line with `#` comments. Leading comment lines
//! are kept as notes and written back by the serializers, so a file in
//! canonical layout round-trips byte for byte.
//!
//! PA files:
//!
//! ```text
//! type pa
//! name n54-pa
//! n 54
//! expect order 243
//! expect orbit-sizes 27,27,...
//! expect min-distance 53
//! expect separable 8
//! generator (1, 6, 26)(2, 4, 27)...
//!   (29, 31, 54)...
//! representative (1, 34, 20, 53, 10, 45)...
//! ```
//!
//! A cycle-notation entry continues onto the next line while its parentheses
//! are unbalanced or while the next line is indented.
//!
//! DM files:
//!
//! ```text
//! type dm
//! name n45-dm
//! group Z5*Z3*Z3
//! rows 7
//! expect n 45
//! expect mols 6
//! column (0,0,0) (0,0,0) ...
//! interchange 1:6,2:5,3:4 applied-to columns 2-8
//! vector (0,0,1) (0,2,0) ...
//! power-note 2 9 = x+1
//! ```
//!
//! `interchange` appends copies of the given (1-based, inclusive) column range
//! with the listed row pairs swapped.

use serde::Serialize;

use crate::algebra::{Component, ComponentKind, FieldElement, Gf27, Gf4, GroupDescriptor, GroupElement};
use crate::dm::{apply_row_interchange, DmBase};
use crate::isometry::{IsometryElement, IsometrySubgroup};
use crate::perm::Permutation;
use crate::{Error, Result};

pub const EMBEDDED: &[(&str, &str)] = &[
    ("n54-pa", include_str!("../data/n54-pa.txt")),
    ("n96-pa", include_str!("../data/n96-pa.txt")),
    ("n108-dm", include_str!("../data/n108-dm.txt")),
    ("n45-dm", include_str!("../data/n45-dm.txt")),
];

pub fn embedded_text(name: &str) -> Option<&'static str> {
    EMBEDDED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn load_embedded(name: &str) -> Result<Dataset> {
    let text = embedded_text(name).ok_or_else(|| Error::UnknownDataset(name.to_string()))?;
    Dataset::parse(text)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatasetSummary {
    pub name: String,
    pub kind: &'static str,
    pub n: usize,
    pub description: String,
}

pub fn list_embedded() -> Result<Vec<DatasetSummary>> {
    EMBEDDED
        .iter()
        .map(|(name, _)| load_embedded(name).map(|d| d.summary()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dataset {
    Pa(PaDataset),
    Dm(DmDataset),
}

impl Dataset {
    /// Dispatches on the `type` line.
    pub fn parse(text: &str) -> Result<Dataset> {
        let lines = Lines::new(text);
        match lines.body.iter().find(|l| l.keyword == "type") {
            Some(l) if l.rest == "pa" => PaDataset::parse(text).map(Dataset::Pa),
            Some(l) if l.rest == "dm" => DmDataset::parse(text).map(Dataset::Dm),
            Some(l) => Err(l.error(l.rest_column, format!("unknown dataset type `{}`", l.rest))),
            None => Err(Error::DatasetSyntax {
                line: 1,
                column: 1,
                message: "missing `type` line".into(),
            }),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Dataset::Pa(d) => &d.name,
            Dataset::Dm(d) => &d.name,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Dataset::Pa(d) => d.to_text(),
            Dataset::Dm(d) => d.to_text(),
        }
    }

    pub fn summary(&self) -> DatasetSummary {
        match self {
            Dataset::Pa(d) => DatasetSummary {
                name: d.name.clone(),
                kind: "pa",
                n: d.n,
                description: format!(
                    "{} generators, {} representatives",
                    d.generators.len(),
                    d.representatives.len()
                ),
            },
            Dataset::Dm(d) => DatasetSummary {
                name: d.name.clone(),
                kind: "dm",
                n: d.expected.n,
                description: format!(
                    "group {}, {} rows, {} base columns, {} expansion vector(s)",
                    d.descriptor,
                    d.k,
                    d.base_columns.len(),
                    d.vectors.len()
                ),
            },
        }
    }
}

// ---------------------------------------------------------------------------
// line handling

struct Line<'a> {
    number: usize,
    keyword: &'a str,
    rest: &'a str,
    /// 1-based column where `rest` starts.
    rest_column: usize,
}

impl Line<'_> {
    fn error(&self, column: usize, message: impl Into<String>) -> Error {
        Error::DatasetSyntax {
            line: self.number,
            column,
            message: message.into(),
        }
    }
}

struct Lines<'a> {
    notes: Vec<String>,
    body: Vec<Line<'a>>,
    raw: Vec<&'a str>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let raw: Vec<&str> = text.lines().collect();
        let mut notes = Vec::new();
        let mut body = Vec::new();
        let mut in_header = true;
        for (i, line) in raw.iter().enumerate() {
            let trimmed = line.trim();
            if let Some(comment) = trimmed.strip_prefix('#') {
                if in_header {
                    notes.push(comment.strip_prefix(' ').unwrap_or(comment).to_string());
                }
                continue;
            }
            if trimmed.is_empty() || line.starts_with(char::is_whitespace) {
                // blank, or a continuation handled by the entry reader
                continue;
            }
            in_header = false;
            let (keyword, rest) = line.split_once(' ').unwrap_or((line, ""));
            body.push(Line {
                number: i + 1,
                keyword,
                rest: rest.trim_end(),
                rest_column: keyword.len() + 2,
            });
        }
        Lines { notes, body, raw }
    }

    /// The text of a cycle-notation entry starting on `line`, including
    /// continuation lines verbatim.
    fn entry(&self, line: &Line<'a>) -> String {
        let mut text = line.rest.to_string();
        let mut balance = paren_balance(&text);
        let mut next = line.number; // 0-based index of the following line
        while next < self.raw.len() {
            let candidate = self.raw[next];
            let indented = candidate.starts_with(char::is_whitespace) && !candidate.trim().is_empty();
            if balance <= 0 && !indented {
                break;
            }
            if candidate.trim_start().starts_with('#') {
                break;
            }
            text.push('\n');
            text.push_str(candidate.trim_end());
            balance += paren_balance(candidate);
            next += 1;
        }
        text
    }
}

fn paren_balance(s: &str) -> i64 {
    s.chars()
        .map(|c| match c {
            '(' => 1,
            ')' => -1,
            _ => 0,
        })
        .sum()
}

/// Maps a byte offset inside an entry's text to a file (line, column).
fn locate(line: &Line<'_>, text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let newlines = before.matches('\n').count();
    match before.rfind('\n') {
        None => (line.number, line.rest_column + offset),
        Some(nl) => (line.number + newlines, offset - nl),
    }
}

fn entry_error(line: &Line<'_>, text: &str, what: &str, err: Error) -> Error {
    let offset = match &err {
        Error::CycleSyntax { offset, .. }
        | Error::PointOutOfRange { offset, .. }
        | Error::RepeatedPoint { offset, .. } => Some(*offset),
        _ => None,
    };
    match offset {
        Some(offset) => {
            let (l, c) = locate(line, text, offset);
            Error::DatasetSyntax {
                line: l,
                column: c,
                message: format!("{what}: {err}"),
            }
        }
        None => Error::DatasetEntry {
            line: line.number,
            what: what.to_string(),
            source: Box::new(err),
        },
    }
}

fn parse_count(line: &Line<'_>, s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| {
        line.error(
            line.rest_column,
            format!("expected a non-negative integer, found `{s}`"),
        )
    })
}

fn single<'a, T>(slot: &mut Option<T>, line: &Line<'a>, value: T) -> Result<()> {
    if slot.is_some() {
        return Err(line.error(1, format!("duplicate `{}` line", line.keyword)));
    }
    *slot = Some(value);
    Ok(())
}

fn required<T>(slot: Option<T>, what: &str) -> Result<T> {
    slot.ok_or_else(|| Error::DatasetSyntax {
        line: 0,
        column: 0,
        message: format!("missing `{what}`"),
    })
}

fn write_notes(out: &mut String, notes: &[String]) {
    for note in notes {
        if note.is_empty() {
            out.push_str("#\n");
        } else {
            out.push_str("# ");
            out.push_str(note);
            out.push('\n');
        }
    }
}

// ---------------------------------------------------------------------------
// permutation-array datasets

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PaExpectations {
    pub order: usize,
    pub orbit_sizes: Vec<usize>,
    pub min_distance: usize,
    pub separable: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaDataset {
    pub notes: Vec<String>,
    pub name: String,
    pub n: usize,
    pub expected: PaExpectations,
    generator_text: Vec<String>,
    representative_text: Vec<String>,
    generators: Vec<IsometryElement>,
    representatives: Vec<Permutation>,
}

impl PaDataset {
    pub fn parse(text: &str) -> Result<Self> {
        let lines = Lines::new(text);
        let (mut name, mut n, mut ty) = (None, None, None);
        let (mut order, mut orbits, mut min_distance, mut separable) = (None, None, None, None);
        let mut gens: Vec<(&Line, String)> = Vec::new();
        let mut reps: Vec<(&Line, String)> = Vec::new();
        for line in &lines.body {
            match line.keyword {
                "type" => single(&mut ty, line, line.rest)?,
                "name" => single(&mut name, line, line.rest.to_string())?,
                "n" => single(&mut n, line, parse_count(line, line.rest)?)?,
                "expect" => {
                    let (key, value) = line.rest.split_once(' ').unwrap_or((line.rest, ""));
                    match key {
                        "order" => single(&mut order, line, parse_count(line, value)?)?,
                        "min-distance" => single(&mut min_distance, line, parse_count(line, value)?)?,
                        "separable" => single(&mut separable, line, parse_count(line, value)?)?,
                        "orbit-sizes" => {
                            let sizes = value
                                .split(',')
                                .map(|s| parse_count(line, s))
                                .collect::<Result<Vec<_>>>()?;
                            single(&mut orbits, line, sizes)?
                        }
                        other => return Err(line.error(line.rest_column, format!("unknown expectation `{other}`"))),
                    }
                }
                "generator" => gens.push((line, lines.entry(line))),
                "representative" => reps.push((line, lines.entry(line))),
                other => return Err(line.error(1, format!("unknown keyword `{other}`"))),
            }
        }
        if ty != Some("pa") {
            return Err(Error::DatasetSyntax {
                line: 1,
                column: 1,
                message: "expected `type pa`".into(),
            });
        }
        let n = required(n, "n")?;
        if n == 0 {
            return Err(Error::DatasetSyntax {
                line: 0,
                column: 0,
                message: "n must be positive".into(),
            });
        }
        let expected = PaExpectations {
            order: required(order, "expect order")?,
            orbit_sizes: required(orbits, "expect orbit-sizes")?,
            min_distance: required(min_distance, "expect min-distance")?,
            separable: required(separable, "expect separable")?,
        };
        let generators = gens
            .iter()
            .enumerate()
            .map(|(i, (line, text))| {
                let what = format!("generator {}", i + 1);
                Permutation::parse_cycles(text, 2 * n)
                    .and_then(IsometryElement::classify)
                    .map_err(|e| entry_error(line, text, &what, e))
            })
            .collect::<Result<Vec<_>>>()?;
        let representatives = reps
            .iter()
            .enumerate()
            .map(|(i, (line, text))| {
                Permutation::parse_cycles(text, n)
                    .map_err(|e| entry_error(line, text, &format!("representative {}", i + 1), e))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PaDataset {
            notes: lines.notes,
            name: required(name, "name")?,
            n,
            expected,
            generator_text: gens.into_iter().map(|(_, t)| t).collect(),
            representative_text: reps.into_iter().map(|(_, t)| t).collect(),
            generators,
            representatives,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        write_notes(&mut out, &self.notes);
        let e = &self.expected;
        let sizes: Vec<String> = e.orbit_sizes.iter().map(usize::to_string).collect();
        out.push_str(&format!(
            "type pa\nname {}\nn {}\nexpect order {}\nexpect orbit-sizes {}\nexpect min-distance {}\nexpect separable {}\n",
            self.name,
            self.n,
            e.order,
            sizes.join(","),
            e.min_distance,
            e.separable
        ));
        for g in &self.generator_text {
            out.push_str(&format!("generator {g}\n"));
        }
        for r in &self.representative_text {
            out.push_str(&format!("representative {r}\n"));
        }
        out
    }

    pub fn generators(&self) -> &[IsometryElement] {
        &self.generators
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    pub fn generator_text(&self) -> &[String] {
        &self.generator_text
    }

    pub fn representative_text(&self) -> &[String] {
        &self.representative_text
    }

    pub fn subgroup(&self) -> IsometrySubgroup {
        IsometrySubgroup::new(self.n, self.generators.clone()).expect("generators validated at load")
    }

    /// Replaces representative `index`, rewriting its text canonically.
    pub fn set_representative(&mut self, index: usize, rep: Permutation) -> Result<()> {
        if rep.degree() != self.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: rep.degree(),
            });
        }
        self.representative_text[index] = rep.format_cycles();
        self.representatives[index] = rep;
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// difference-matrix datasets

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DmExpectations {
    pub n: usize,
    pub mols: usize,
}

/// Row swaps applied to a range of literal columns, appended as new columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interchange {
    /// 1-based row pairs.
    pub swaps: Vec<(usize, usize)>,
    /// 1-based inclusive column range.
    pub columns: (usize, usize),
}

/// `z^k` (GF4) or `x^k` (GF27) written out in expanded form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerNote {
    /// 1-based component index.
    pub component: usize,
    pub exponent: u64,
    pub value: Component,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerCheck {
    pub component: usize,
    pub exponent: u64,
    pub listed: String,
    pub computed: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DmDataset {
    pub notes: Vec<String>,
    pub name: String,
    pub descriptor: GroupDescriptor,
    pub k: usize,
    pub expected: DmExpectations,
    literal_columns: Vec<Vec<GroupElement>>,
    pub interchange: Option<Interchange>,
    pub vectors: Vec<Vec<GroupElement>>,
    pub power_notes: Vec<PowerNote>,
    base_columns: Vec<Vec<GroupElement>>,
}

fn parse_tuple_list(line: &Line<'_>, d: &GroupDescriptor) -> Result<Vec<GroupElement>> {
    let mut out = Vec::new();
    let mut rest = line.rest;
    let mut column = line.rest_column;
    loop {
        let trimmed = rest.trim_start();
        column += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            break;
        }
        if !trimmed.starts_with('(') {
            return Err(line.error(column, "expected '('"));
        }
        let close = trimmed
            .find(')')
            .ok_or_else(|| line.error(column, "unterminated element"))?;
        let element = &trimmed[..=close];
        let g = d
            .parse_element(element)
            .map_err(|e| line.error(column, format!("entry {}: {e}", out.len() + 1)))?;
        out.push(g);
        column += close + 1;
        rest = &trimmed[close + 1..];
    }
    Ok(out)
}

impl DmDataset {
    pub fn parse(text: &str) -> Result<Self> {
        let lines = Lines::new(text);
        let (mut ty, mut name, mut group, mut k) = (None, None, None, None);
        let (mut exp_n, mut exp_mols, mut interchange) = (None, None, None);
        let mut column_lines = Vec::new();
        let mut vector_lines = Vec::new();
        let mut note_lines = Vec::new();
        for line in &lines.body {
            match line.keyword {
                "type" => single(&mut ty, line, line.rest)?,
                "name" => single(&mut name, line, line.rest.to_string())?,
                "group" => {
                    let d: GroupDescriptor = line
                        .rest
                        .parse()
                        .map_err(|e| line.error(line.rest_column, format!("{e}")))?;
                    single(&mut group, line, d)?
                }
                "rows" => single(&mut k, line, parse_count(line, line.rest)?)?,
                "expect" => {
                    let (key, value) = line.rest.split_once(' ').unwrap_or((line.rest, ""));
                    match key {
                        "n" => single(&mut exp_n, line, parse_count(line, value)?)?,
                        "mols" => single(&mut exp_mols, line, parse_count(line, value)?)?,
                        other => return Err(line.error(line.rest_column, format!("unknown expectation `{other}`"))),
                    }
                }
                "column" => column_lines.push(line),
                "vector" => vector_lines.push(line),
                "interchange" => single(&mut interchange, line, parse_interchange(line)?)?,
                "power-note" => note_lines.push(line),
                other => return Err(line.error(1, format!("unknown keyword `{other}`"))),
            }
        }
        if ty != Some("dm") {
            return Err(Error::DatasetSyntax {
                line: 1,
                column: 1,
                message: "expected `type dm`".into(),
            });
        }
        let descriptor = required(group, "group")?;
        let k = required(k, "rows")?;
        let sized = |line: &Line<'_>, what: &str, i: usize| -> Result<Vec<GroupElement>> {
            let v = parse_tuple_list(line, &descriptor)?;
            if v.len() != k {
                return Err(line.error(
                    line.rest_column,
                    format!("{what} {} has {} entries, expected rows = {k}", i + 1, v.len()),
                ));
            }
            Ok(v)
        };
        let literal_columns = column_lines
            .iter()
            .enumerate()
            .map(|(i, l)| sized(l, "column", i))
            .collect::<Result<Vec<_>>>()?;
        let vectors = vector_lines
            .iter()
            .enumerate()
            .map(|(i, l)| sized(l, "vector", i))
            .collect::<Result<Vec<_>>>()?;
        let power_notes = note_lines
            .iter()
            .map(|l| parse_power_note(l, &descriptor))
            .collect::<Result<Vec<_>>>()?;

        let mut base_columns = literal_columns.clone();
        if let Some((ic, line_no)) = &interchange {
            let (lo, hi) = ic.columns;
            let err = |m: String| Error::DatasetSyntax {
                line: *line_no,
                column: 1,
                message: m,
            };
            if lo == 0 || hi < lo || hi > literal_columns.len() {
                return Err(err(format!(
                    "column range {lo}-{hi} outside 1..{}",
                    literal_columns.len()
                )));
            }
            // the swap acts on rows of the (k × width) block
            let block = &literal_columns[lo - 1..hi];
            let rows: Vec<Vec<GroupElement>> = (0..k).map(|r| block.iter().map(|c| c[r].clone()).collect()).collect();
            let swapped = apply_row_interchange(&rows, &ic.swaps).map_err(|e| err(e.to_string()))?;
            base_columns.extend((0..block.len()).map(|c| swapped.iter().map(|row| row[c].clone()).collect()));
        }

        Ok(DmDataset {
            notes: lines.notes,
            name: required(name, "name")?,
            descriptor,
            k,
            expected: DmExpectations {
                n: required(exp_n, "expect n")?,
                mols: required(exp_mols, "expect mols")?,
            },
            literal_columns,
            interchange: interchange.map(|(ic, _)| ic),
            vectors,
            power_notes,
            base_columns,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        write_notes(&mut out, &self.notes);
        out.push_str(&format!(
            "type dm\nname {}\ngroup {}\nrows {}\nexpect n {}\nexpect mols {}\n",
            self.name, self.descriptor, self.k, self.expected.n, self.expected.mols
        ));
        let join = |v: &[GroupElement]| v.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ");
        for c in &self.literal_columns {
            out.push_str(&format!("column {}\n", join(c)));
        }
        if let Some(ic) = &self.interchange {
            let swaps: Vec<String> = ic.swaps.iter().map(|(a, b)| format!("{a}:{b}")).collect();
            out.push_str(&format!(
                "interchange {} applied-to columns {}-{}\n",
                swaps.join(","),
                ic.columns.0,
                ic.columns.1
            ));
        }
        for v in &self.vectors {
            out.push_str(&format!("vector {}\n", join(v)));
        }
        for note in &self.power_notes {
            out.push_str(&format!(
                "power-note {} {} = {}\n",
                note.component, note.exponent, note.value
            ));
        }
        out
    }

    pub fn literal_columns(&self) -> &[Vec<GroupElement>] {
        &self.literal_columns
    }

    /// Literal columns followed by any interchanged copies.
    pub fn base_columns(&self) -> &[Vec<GroupElement>] {
        &self.base_columns
    }

    pub fn base(&self) -> DmBase {
        DmBase {
            descriptor: self.descriptor.clone(),
            base_columns: self.base_columns.clone(),
            expansion_vectors: self.vectors.clone(),
        }
    }

    /// Recomputes every power note from the primitive element.
    pub fn check_power_notes(&self) -> Vec<PowerCheck> {
        self.power_notes
            .iter()
            .map(|note| {
                let computed: Component = primitive(note.value.kind())
                    .expect("power notes are validated to be field components")
                    .pow(note.exponent)
                    .into();
                PowerCheck {
                    component: note.component,
                    exponent: note.exponent,
                    listed: note.value.to_string(),
                    computed: computed.to_string(),
                    ok: computed == note.value,
                }
            })
            .collect()
    }
}

fn primitive(kind: ComponentKind) -> Option<FieldElement> {
    match kind {
        ComponentKind::Gf4 => Some(FieldElement::Gf4(Gf4::Z)),
        ComponentKind::Gf27 => Some(FieldElement::Gf27(Gf27::X)),
        ComponentKind::Cyclic(_) => None,
    }
}

fn parse_interchange(line: &Line<'_>) -> Result<(Interchange, usize)> {
    let bad = |m: &str| line.error(line.rest_column, m.to_string());
    let (swaps, range) = line
        .rest
        .split_once(" applied-to columns ")
        .ok_or_else(|| bad("expected `<pairs> applied-to columns <lo>-<hi>`"))?;
    let swaps = swaps
        .split(',')
        .map(|p| {
            let (a, b) = p.split_once(':').ok_or_else(|| bad("row pair must be `a:b`"))?;
            Ok((parse_count(line, a)?, parse_count(line, b)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let (lo, hi) = range
        .split_once('-')
        .ok_or_else(|| bad("column range must be `lo-hi`"))?;
    let columns = (parse_count(line, lo)?, parse_count(line, hi)?);
    Ok((Interchange { swaps, columns }, line.number))
}

fn parse_power_note(line: &Line<'_>, d: &GroupDescriptor) -> Result<PowerNote> {
    let bad = |m: String| line.error(line.rest_column, m);
    let (lhs, rhs) = line
        .rest
        .split_once('=')
        .ok_or_else(|| bad("expected `<component> <exponent> = <expression>`".into()))?;
    let mut parts = lhs.split_whitespace();
    let (Some(c), Some(e), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(bad("expected `<component> <exponent> = <expression>`".into()));
    };
    let component = parse_count(line, c)?;
    let exponent = parse_count(line, e)? as u64;
    let kind = *d.components().get(component.wrapping_sub(1)).ok_or_else(|| {
        bad(format!(
            "component {component} out of range 1..{}",
            d.components().len()
        ))
    })?;
    if primitive(kind).is_none() {
        return Err(bad(format!("component {component} ({kind}) is not a field")));
    }
    let value = Component::parse(rhs, kind).map_err(|e| bad(e.to_string()))?;
    Ok(PowerNote {
        component,
        exponent,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pa(name: &str) -> PaDataset {
        match load_embedded(name).unwrap() {
            Dataset::Pa(d) => d,
            _ => panic!("{name} is not a PA dataset"),
        }
    }

    fn dm(name: &str) -> DmDataset {
        match load_embedded(name).unwrap() {
            Dataset::Dm(d) => d,
            _ => panic!("{name} is not a DM dataset"),
        }
    }

    #[test]
    fn listing() {
        let list = list_embedded().unwrap();
        let names: Vec<&str> = list.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["n54-pa", "n96-pa", "n108-dm", "n45-dm"]);
        assert_eq!(list[0].description, "5 generators, 16 representatives");
        assert_eq!(list[1].description, "4 generators, 6 representatives");
        assert!(matches!(load_embedded("n55-pa"), Err(Error::UnknownDataset(_))));
    }

    #[test]
    fn embedded_round_trip() {
        for (name, text) in EMBEDDED {
            let d = Dataset::parse(text).unwrap();
            assert_eq!(d.name(), *name);
            assert_eq!(&d.to_text(), text, "{name}");
        }
    }

    #[test]
    fn pa_counts() {
        let d = pa("n54-pa");
        assert_eq!(d.n, 54);
        assert_eq!(d.generators().len(), 5);
        assert_eq!(d.representatives().len(), 16);
        assert!(d.representatives().iter().all(|r| r.degree() == 54));
        assert_eq!(d.expected.order, 243);
        let d = pa("n96-pa");
        assert_eq!((d.generators().len(), d.representatives().len()), (4, 6));
        assert_eq!(d.expected.orbit_sizes, [288, 288, 288, 48, 24, 24]);
    }

    #[test]
    fn n54_generator_structure() {
        let d = pa("n54-pa");
        let x2 = &d.generators()[1];
        assert!(!x2.swaps_blocks());
        let x3 = d.generators()[2].underlying();
        let cube = x3.then(x3).then(x3);
        assert!(cube.is_identity() && !x3.is_identity());
        assert!((1..=54).all(|i| x3.image(i) != i));
        assert!((55..=108).all(|i| x3.image(i) == i));
    }

    #[test]
    fn cycle_strings_round_trip() {
        for name in ["n54-pa", "n96-pa"] {
            let d = pa(name);
            let texts = d.generator_text().iter().chain(d.representative_text());
            let perms = d
                .generators()
                .iter()
                .map(|g| g.underlying().clone())
                .chain(d.representatives().iter().cloned());
            for (text, p) in texts.zip(perms) {
                let canonical = p.format_cycles();
                // the transcribed data is already canonical up to whitespace
                let squeezed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
                assert_eq!(canonical, squeezed);
                assert_eq!(Permutation::parse_cycles(&canonical, p.degree()).unwrap(), p);
            }
        }
    }

    #[test]
    fn dm_counts() {
        let d = dm("n108-dm");
        assert_eq!((d.base_columns().len(), d.k, d.vectors.len()), (12, 10, 2));
        assert_eq!(d.descriptor.order(), 108);
        let d = dm("n45-dm");
        assert_eq!((d.base_columns().len(), d.k, d.vectors.len()), (15, 7, 1));
        assert_eq!(d.literal_columns().len(), 8);
        assert!(d.base_columns()[0].iter().all(GroupElement::is_identity));
        // E3 column 1 is E2 column 1 with rows reversed except row 7
        let e2 = &d.base_columns()[1];
        let e3 = &d.base_columns()[8];
        for (a, b) in [(0, 5), (1, 4), (2, 3)] {
            assert_eq!(e2[a], e3[b]);
            assert_eq!(e2[b], e3[a]);
        }
        assert_eq!(e2[6], e3[6]);
    }

    #[test]
    fn power_notes_check_out() {
        let checks = dm("n108-dm").check_power_notes();
        assert_eq!(checks.len(), 11);
        assert!(checks.iter().all(|c| c.ok), "{checks:?}");
    }

    #[test]
    fn expansion_vectors_related_by_x() {
        // W = x·V componentwise on the GF(27) coordinate
        let d = dm("n108-dm");
        for (v, w) in d.vectors[0].iter().zip(&d.vectors[1]) {
            let v27 = FieldElement::try_from(v.coords()[1]).unwrap();
            let prod = v27.try_mul(FieldElement::Gf27(Gf27::X)).unwrap();
            assert_eq!(Component::from(prod), w.coords()[1]);
        }
    }

    #[test]
    fn column_arity_error() {
        let text = dm("n108-dm").to_text();
        let broken = text.replacen("column (0,0) (0,0) ", "column (0,0) ", 1);
        match DmDataset::parse(&broken) {
            Err(Error::DatasetSyntax { line, message, .. }) => {
                assert_eq!(line, 9);
                assert!(message.contains("9 entries"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pa_semantic_errors_name_the_entry() {
        let text =
            "type pa\nname t\nn 3\nexpect order 1\nexpect orbit-sizes 1\nexpect min-distance 3\nexpect separable 1\n";
        let ok = format!("{text}representative (1,2,3)\n");
        assert!(PaDataset::parse(&ok).is_ok());

        let mixed = format!("{text}generator (1,2,3,4,5,6)\nrepresentative ()\n");
        match PaDataset::parse(&mixed) {
            Err(Error::DatasetEntry { line, what, source }) => {
                assert_eq!((line, what.as_str()), (8, "generator 1"));
                assert!(matches!(*source, Error::NotAnIsometry { .. }));
            }
            other => panic!("{other:?}"),
        }

        let repeated = format!("{text}representative (1,2)\n  (2,3)\n");
        match PaDataset::parse(&repeated) {
            Err(Error::DatasetSyntax { line, column, .. }) => assert_eq!((line, column), (9, 4)),
            other => panic!("{other:?}"),
        }

        let missing = "type pa\nname t\nn 3\n";
        assert!(PaDataset::parse(missing).is_err());
        assert!(Dataset::parse("type xx\n").is_err());
        assert!(Dataset::parse(&format!("{ok}bogus 1\n")).is_err());
    }

    #[test]
    fn interchange_validation() {
        let text = dm("n45-dm").to_text();
        for bad in [
            "1:6,2:5,3:4 applied-to columns 2-9",
            "1:8 applied-to columns 2-8",
            "1:6,6:2 applied-to columns 2-8",
        ] {
            let t = text.replace("1:6,2:5,3:4 applied-to columns 2-8", bad);
            assert!(DmDataset::parse(&t).is_err(), "{bad}");
        }
    }

    #[test]
    fn set_representative_rewrites_text() {
        let mut d = pa("n54-pa");
        let r = d.representatives()[0].inverse();
        d.set_representative(0, r.clone()).unwrap();
        let again = PaDataset::parse(&d.to_text()).unwrap();
        assert_eq!(again.representatives()[0], r);
        assert!(d.set_representative(0, Permutation::identity(3)).is_err());
    }
}
