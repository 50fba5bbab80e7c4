//! Latin squares, orthogonality, and the MOLS text format.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An `n × n` array of symbols in `1..=n`. Latin-ness is checked, not
/// assumed, since candidate squares under test live here too.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LatinViolation {
    /// `symbol` occurs twice in `row`, first at `columns.0`.
    Row {
        row: usize,
        symbol: u32,
        columns: (usize, usize),
    },
    Column {
        column: usize,
        symbol: u32,
        rows: (usize, usize),
    },
}

impl fmt::Display for LatinViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatinViolation::Row { row, symbol, columns } => write!(
                f,
                "row {row}: symbol {symbol} repeated in columns {} and {}",
                columns.0, columns.1
            ),
            LatinViolation::Column { column, symbol, rows } => write!(
                f,
                "column {column}: symbol {symbol} repeated in rows {} and {}",
                rows.0, rows.1
            ),
        }
    }
}

/// Two cells of a superposed pair that carry the same ordered symbol pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityCollision {
    pub pair: (u32, u32),
    pub first: (usize, usize),
    pub second: (usize, usize),
}

impl fmt::Display for OrthogonalityCollision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pair {:?} occurs at cells {:?} and {:?}",
            self.pair, self.first, self.second
        )
    }
}

impl LatinSquare {
    /// Row-major cells, symbols `1..=n`.
    pub fn from_cells(n: usize, cells: Vec<u32>) -> Result<Self> {
        if cells.len() != n * n {
            return Err(Error::Shape(format!("{} cells for order {n}", cells.len())));
        }
        if let Some(&s) = cells.iter().find(|&&s| s == 0 || s as usize > n) {
            return Err(Error::SymbolOutOfRange { symbol: s as u64, n });
        }
        Ok(LatinSquare { n, cells })
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Shape(format!(
                "row of length {} in a square of order {n}",
                r.len()
            )));
        }
        LatinSquare::from_cells(n, rows.concat())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Symbol at 1-based `(row, column)`.
    pub fn get(&self, row: usize, column: usize) -> u32 {
        self.cells[(row - 1) * self.n + column - 1]
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.cells
            .chunks(self.n.max(1))
            .map(<[u32]>::to_vec)
            .take(self.n)
            .collect()
    }

    /// Overwrites one cell (1-based), e.g. to build a candidate under test.
    pub fn set(&mut self, row: usize, column: usize, symbol: u32) {
        self.cells[(row - 1) * self.n + column - 1] = symbol;
    }

    pub fn is_latin(&self) -> bool {
        self.latin_violation().is_none()
    }

    /// First repeated symbol, scanning rows before columns. Positions are 1-based.
    pub fn latin_violation(&self) -> Option<LatinViolation> {
        let n = self.n;
        let mut seen = vec![0usize; n + 1];
        for r in 0..n {
            seen.fill(0);
            for c in 0..n {
                let s = self.cells[r * n + c];
                if seen[s as usize] != 0 {
                    return Some(LatinViolation::Row {
                        row: r + 1,
                        symbol: s,
                        columns: (seen[s as usize], c + 1),
                    });
                }
                seen[s as usize] = c + 1;
            }
        }
        for c in 0..n {
            seen.fill(0);
            for r in 0..n {
                let s = self.cells[r * n + c];
                if seen[s as usize] != 0 {
                    return Some(LatinViolation::Column {
                        column: c + 1,
                        symbol: s,
                        rows: (seen[s as usize], r + 1),
                    });
                }
                seen[s as usize] = r + 1;
            }
        }
        None
    }
}

/// First collision of `a` superposed on `b`, in row-major order, or `None`
/// when the squares are orthogonal.
pub fn orthogonality_collision(a: &LatinSquare, b: &LatinSquare) -> Result<Option<OrthogonalityCollision>> {
    if a.n != b.n {
        return Err(Error::OrderMismatch { left: a.n, right: b.n });
    }
    let n = a.n;
    // occupancy indexed by the pair code (s - 1)·n + (t - 1); 0 = free
    let mut occupied = vec![0u32; n * n];
    for (cell, (&s, &t)) in a.cells.iter().zip(&b.cells).enumerate() {
        let code = (s as usize - 1) * n + t as usize - 1;
        if occupied[code] != 0 {
            let prev = occupied[code] as usize - 1;
            return Ok(Some(OrthogonalityCollision {
                pair: (s, t),
                first: (prev / n + 1, prev % n + 1),
                second: (cell / n + 1, cell % n + 1),
            }));
        }
        occupied[code] = cell as u32 + 1;
    }
    Ok(None)
}

pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> Result<bool> {
    Ok(orthogonality_collision(a, b)?.is_none())
}

/// A family of squares of one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MolsSet {
    n: usize,
    squares: Vec<LatinSquare>,
}

impl MolsSet {
    pub fn new(n: usize, squares: Vec<LatinSquare>) -> Result<Self> {
        if let Some(s) = squares.iter().find(|s| s.n != n) {
            return Err(Error::OrderMismatch { left: n, right: s.n });
        }
        Ok(MolsSet { n, squares })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn squares(&self) -> &[LatinSquare] {
        &self.squares
    }

    pub fn squares_mut(&mut self) -> &mut [LatinSquare] {
        &mut self.squares
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    /// Text format: `mols n=<n> count=<m>`, then each square as `n` lines of
    /// `n` space-separated symbols, squares separated by a blank line.
    pub fn to_text(&self) -> String {
        let mut out = format!("mols n={} count={}\n", self.n, self.squares.len());
        for (i, sq) in self.squares.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            for row in sq.cells.chunks(self.n) {
                let line: Vec<String> = row.iter().map(u32::to_string).collect();
                out.push_str(&line.join(" "));
                out.push('\n');
            }
        }
        out
    }

    /// Strict inverse of [`MolsSet::to_text`]. Squares need not be Latin.
    pub fn parse_text(text: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::MolsFormat { line, message };
        let Some(body) = text.strip_suffix('\n') else {
            return Err(err(text.lines().count().max(1), "missing trailing newline".into()));
        };
        let lines: Vec<&str> = body.split('\n').collect();
        let header = lines[0];
        let (n, count) = header
            .strip_prefix("mols n=")
            .and_then(|rest| rest.split_once(" count="))
            .and_then(|(n, c)| Some((parse_plain(n)?, parse_plain(c)?)))
            .ok_or_else(|| err(1, format!("bad header `{header}`")))?;
        let expected_lines = 1 + count * n + count.saturating_sub(1);
        if n == 0 && count > 0 {
            return Err(err(1, "order must be positive".into()));
        }
        if lines.len() != expected_lines {
            return Err(err(
                lines.len().min(expected_lines) + 1,
                format!("expected {expected_lines} lines, found {}", lines.len()),
            ));
        }
        let mut squares = Vec::with_capacity(count);
        let mut idx = 1;
        for s in 0..count {
            if s > 0 {
                if !lines[idx].is_empty() {
                    return Err(err(idx + 1, "expected a blank separator line".into()));
                }
                idx += 1;
            }
            let mut cells = Vec::with_capacity(n * n);
            for _ in 0..n {
                let fields: Vec<&str> = lines[idx].split(' ').collect();
                if fields.len() != n {
                    return Err(err(idx + 1, format!("expected {n} symbols, found {}", fields.len())));
                }
                for f in fields {
                    let v = parse_plain(f).ok_or_else(|| err(idx + 1, format!("bad symbol `{f}`")))?;
                    if v == 0 || v > n {
                        return Err(err(idx + 1, format!("symbol {v} out of range 1..{n}")));
                    }
                    cells.push(v as u32);
                }
                idx += 1;
            }
            squares.push(LatinSquare { n, cells });
        }
        Ok(MolsSet { n, squares })
    }

    pub fn to_document(&self) -> MolsDocument {
        MolsDocument {
            n: self.n,
            count: self.squares.len(),
            squares: self.squares.iter().map(LatinSquare::rows).collect(),
        }
    }

    pub fn from_document(doc: &MolsDocument) -> Result<Self> {
        if doc.count != doc.squares.len() {
            return Err(Error::Shape(format!(
                "count {} but {} squares",
                doc.count,
                doc.squares.len()
            )));
        }
        let squares = doc
            .squares
            .iter()
            .map(|rows| LatinSquare::from_rows(rows))
            .collect::<Result<Vec<_>>>()?;
        MolsSet::new(doc.n, squares)
    }
}

fn parse_plain(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
        return None;
    }
    s.parse().ok()
}

/// JSON mirror of the MOLS text format; squares are row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MolsDocument {
    pub n: usize,
    pub count: usize,
    pub squares: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MolsReport {
    pub order: usize,
    pub squares: usize,
    pub latin_checked: usize,
    pub pairs_checked: usize,
    /// `(square index, violation)`, 0-based square index.
    pub latin_violations: Vec<(usize, LatinViolation)>,
    /// `(square a, square b, collision)`.
    pub collisions: Vec<(usize, usize, OrthogonalityCollision)>,
}

impl MolsReport {
    pub fn passed(&self) -> bool {
        self.latin_violations.is_empty() && self.collisions.is_empty()
    }
}

/// Checks every square for Latin-ness and every unordered pair for
/// orthogonality. With `fail_fast` the report stops at the first violation.
pub fn verify_mols(mols: &MolsSet, fail_fast: bool) -> MolsReport {
    let mut report = MolsReport {
        order: mols.n,
        squares: mols.squares.len(),
        ..MolsReport::default()
    };
    let latin: Vec<Option<LatinViolation>> = mols.squares.par_iter().map(|s| s.latin_violation()).collect();
    for (i, v) in latin.into_iter().enumerate() {
        report.latin_checked += 1;
        if let Some(v) = v {
            report.latin_violations.push((i, v));
            if fail_fast {
                return report;
            }
        }
    }
    let m = mols.squares.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
    let results: Vec<Option<OrthogonalityCollision>> = pairs
        .par_iter()
        .map(|&(a, b)| orthogonality_collision(&mols.squares[a], &mols.squares[b]).expect("uniform order"))
        .collect();
    for (&(a, b), c) in pairs.iter().zip(results) {
        report.pairs_checked += 1;
        if let Some(c) = c {
            report.collisions.push((a, b, c));
            if fail_fast {
                break;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn linear(n: usize, a: usize) -> LatinSquare {
        let cells = (0..n * n).map(|c| ((c / n + a * (c % n)) % n) as u32 + 1).collect();
        LatinSquare::from_cells(n, cells).unwrap()
    }

    #[test]
    fn cyclic_square_is_latin() {
        assert!(linear(4, 1).is_latin());
    }

    #[test]
    fn repeated_row_symbol_is_reported() {
        let sq = LatinSquare::from_rows(&[vec![1, 2, 3], vec![2, 2, 1], vec![3, 1, 2]]).unwrap();
        assert_eq!(
            sq.latin_violation(),
            Some(LatinViolation::Row {
                row: 2,
                symbol: 2,
                columns: (1, 2)
            })
        );
        let sq = LatinSquare::from_rows(&[vec![1, 2], vec![1, 2]]).unwrap();
        assert!(matches!(
            sq.latin_violation(),
            Some(LatinViolation::Column { column: 1, .. })
        ));
    }

    #[test]
    fn symbol_range_enforced() {
        assert!(LatinSquare::from_rows(&[vec![1, 3], vec![2, 1]]).is_err());
        assert!(LatinSquare::from_rows(&[vec![1, 0], vec![2, 1]]).is_err());
        assert!(LatinSquare::from_rows(&[vec![1, 2], vec![2]]).is_err());
    }

    #[test]
    fn orthogonality_examples() {
        let a = linear(3, 1);
        let b = linear(3, 2);
        assert!(are_orthogonal(&a, &b).unwrap());
        assert!(!are_orthogonal(&a, &a).unwrap());
        let c = orthogonality_collision(&a, &a).unwrap().unwrap();
        assert_ne!(c.first, c.second);
        assert_eq!(a.get(c.first.0, c.first.1), c.pair.0);
        assert_eq!(a.get(c.second.0, c.second.1), c.pair.0);
        assert!(are_orthogonal(&a, &linear(4, 1)).is_err());
    }

    #[test]
    fn verify_empty_and_prime_order_family() {
        let r = verify_mols(&MolsSet::new(5, vec![]).unwrap(), false);
        assert!(r.passed());
        assert_eq!(r.pairs_checked, 0);

        let family = MolsSet::new(7, (1..7).map(|a| linear(7, a)).collect()).unwrap();
        let r = verify_mols(&family, false);
        assert!(r.passed());
        assert_eq!((r.latin_checked, r.pairs_checked), (6, 15));
    }

    #[test]
    fn mutated_family_fails() {
        let mut family = MolsSet::new(5, (1..5).map(|a| linear(5, a)).collect()).unwrap();
        let s = family.squares[2].get(3, 3);
        family.squares[2].set(3, 3, s % 5 + 1);
        let r = verify_mols(&family, false);
        assert!(!r.passed());
        assert_eq!(r.latin_violations.len(), 1);
        assert!(!r.collisions.is_empty());
        let fast = verify_mols(&family, true);
        assert_eq!(fast.latin_violations.len() + fast.collisions.len(), 1);
    }

    #[test]
    fn orthogonality_survives_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 7;
        let a = linear(n, 2);
        let b = linear(n, 3);
        let c = linear(n, 1);
        for _ in 0..50 {
            let mut perm: Vec<u32> = (1..=n as u32).collect();
            perm.shuffle(&mut rng);
            let relabel = |s: &LatinSquare| {
                LatinSquare::from_cells(n, s.cells.iter().map(|&v| perm[v as usize - 1]).collect()).unwrap()
            };
            let (ra, rc) = (relabel(&a), relabel(&c));
            assert!(are_orthogonal(&ra, &b).unwrap());
            assert!(are_orthogonal(&b, &ra).unwrap());
            assert_eq!(are_orthogonal(&ra, &rc).unwrap(), are_orthogonal(&a, &c).unwrap());
        }
        // random non-Latin pairs: symmetry of the verdict
        for _ in 0..50 {
            let rand_sq = |rng: &mut ChaCha8Rng| {
                LatinSquare::from_cells(4, (0..16).map(|_| rng.gen_range(1..=4)).collect()).unwrap()
            };
            let (x, y) = (rand_sq(&mut rng), rand_sq(&mut rng));
            assert_eq!(are_orthogonal(&x, &y).unwrap(), are_orthogonal(&y, &x).unwrap());
        }
    }

    #[test]
    fn text_roundtrip_and_strictness() {
        let family = MolsSet::new(3, vec![linear(3, 1), linear(3, 2)]).unwrap();
        let text = family.to_text();
        assert_eq!(text, "mols n=3 count=2\n1 2 3\n2 3 1\n3 1 2\n\n1 3 2\n2 1 3\n3 2 1\n");
        assert_eq!(MolsSet::parse_text(&text).unwrap(), family);
        let doc = family.to_document();
        assert_eq!(MolsSet::from_document(&doc).unwrap(), family);

        for bad in [
            text.trim_end().to_string(),
            text.replace("1 2 3", "1  2 3"),
            text.replace("\n\n", "\n \n"),
            text.replace("count=2", "count=3"),
            text.replace("1 2 3", "1 2 4"),
            text.replace("mols", "MOLS"),
            format!("{text}\n"),
        ] {
            assert!(MolsSet::parse_text(&bad).is_err(), "{bad:?}");
        }
        assert_eq!(MolsSet::parse_text("mols n=4 count=0\n").unwrap().len(), 0);
    }
}
