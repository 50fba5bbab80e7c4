//! `(n, k, 1)` difference matrices over abelian product groups.
//!
//! A `k × n` matrix over a group `G` of order `n` is a difference matrix when,
//! for every pair of distinct rows `s`, `t`, the column differences
//! `d[s][j] - d[t][j]` run over `G` exactly once. Normalizing the first row to
//! the identity and translating row `m + 1` by each group element gives the
//! rows of the `m`-th of `k - 1` MOLS.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{GroupDescriptor, GroupElement};
use crate::latin::{LatinSquare, MolsSet};
use crate::{Error, Result};

/// Scalars of the expansion vectors range over `Z_3`.
pub const SCALAR_MODULUS: u64 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceMatrix {
    descriptor: GroupDescriptor,
    rows: Vec<Vec<GroupElement>>,
}

impl DifferenceMatrix {
    /// Rows must be non-empty, of equal length, with entries under `descriptor`.
    pub fn new(descriptor: GroupDescriptor, rows: Vec<Vec<GroupElement>>) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.is_empty() {
            return Err(Error::Shape("matrix has no rows".into()));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, row 1 has {width}",
                    r + 1,
                    row.len()
                )));
            }
            for g in row {
                descriptor.index_of(g)?;
            }
        }
        Ok(DifferenceMatrix { descriptor, rows })
    }

    pub fn from_columns(descriptor: GroupDescriptor, columns: &[Vec<GroupElement>]) -> Result<Self> {
        let k = columns.first().map_or(0, Vec::len);
        if let Some(c) = columns.iter().find(|c| c.len() != k) {
            return Err(Error::Shape(format!("column of height {} among height {k}", c.len())));
        }
        let rows = (0..k).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
        DifferenceMatrix::new(descriptor, rows)
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.descriptor
    }

    pub fn rows(&self) -> &[Vec<GroupElement>] {
        &self.rows
    }

    /// Number of rows `k`.
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.rows[0].len()
    }

    /// 0-based position.
    pub fn entry(&self, row: usize, column: usize) -> &GroupElement {
        &self.rows[row][column]
    }

    /// Replaces one entry (0-based position), keeping the descriptor check.
    pub fn set_entry(&mut self, row: usize, column: usize, value: GroupElement) -> Result<()> {
        self.descriptor.index_of(&value)?;
        self.rows[row][column] = value;
        Ok(())
    }

    pub fn permute_columns(&self, order: &[usize]) -> DifferenceMatrix {
        DifferenceMatrix {
            descriptor: self.descriptor.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| order.iter().map(|&c| r[c].clone()).collect())
                .collect(),
        }
    }

    /// Subtracts row 1 from every row, so the first row becomes the identity.
    pub fn normalize(&self) -> DifferenceMatrix {
        let first = &self.rows[0];
        DifferenceMatrix {
            descriptor: self.descriptor.clone(),
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().zip(first).map(|(g, h)| g.sub_unchecked(h)).collect())
                .collect(),
        }
    }

    pub fn verify(&self) -> DmReport {
        self.verify_with(false)
    }

    /// Checks every unordered row pair. `fail_fast` stops at the first
    /// failing pair (in pair order).
    pub fn verify_with(&self, fail_fast: bool) -> DmReport {
        let order = self.descriptor.order();
        let k = self.rows.len();
        let columns = self.column_count();
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|s| (s + 1..k).map(move |t| (s, t))).collect();
        let mut report = DmReport {
            group_order: order,
            rows: k,
            columns,
            pairs_total: pairs.len(),
            ..DmReport::default()
        };
        if columns != order {
            report.column_count_mismatch = Some((order, columns));
            if fail_fast {
                return report;
            }
        }
        let elements = self.descriptor.enumerate();
        let check = |&(s, t): &(usize, usize)| -> Option<RowPairFailure> {
            let mut counts = vec![0u32; order];
            for (a, b) in self.rows[s].iter().zip(&self.rows[t]) {
                counts[self.descriptor.index_unchecked(&a.sub_unchecked(b))] += 1;
            }
            let missing = counts.iter().position(|&c| c == 0);
            let duplicated = counts.iter().position(|&c| c > 1);
            if missing.is_none() && duplicated.is_none() {
                return None;
            }
            Some(RowPairFailure {
                rows: (s + 1, t + 1),
                missing: missing.map(|m| elements[m].to_string()),
                duplicated: duplicated.map(|d| elements[d].to_string()),
            })
        };
        if fail_fast {
            report.failures.extend(pairs.par_iter().find_map_first(check));
            report.pairs_checked = match report.failures.first() {
                Some(f) => pairs.iter().position(|&p| p == (f.rows.0 - 1, f.rows.1 - 1)).unwrap() + 1,
                None => pairs.len(),
            };
        } else {
            report.failures = pairs.par_iter().filter_map(check).collect();
            report.pairs_checked = pairs.len();
        }
        report
    }

    /// The `k - 1` squares of the normalized matrix. Square `m`, row `j`, is
    /// row `m + 1` translated by `g_j`, with elements numbered by their
    /// position in [`GroupDescriptor::enumerate`].
    pub fn to_mols(&self) -> Result<MolsSet> {
        let report = self.verify_with(true);
        if !report.passed() {
            return Err(Error::NotADifferenceMatrix(report.summary()));
        }
        let normalized = self.normalize();
        let elements = self.descriptor.enumerate();
        let n = elements.len();
        let squares = normalized.rows[1..]
            .par_iter()
            .map(|row| {
                let mut cells = Vec::with_capacity(n * n);
                for g in &elements {
                    cells.extend(
                        row.iter()
                            .map(|d| self.descriptor.index_unchecked(&d.add_unchecked(g)) as u32 + 1),
                    );
                }
                LatinSquare::from_cells(n, cells)
            })
            .collect::<Result<Vec<_>>>()?;
        MolsSet::new(n, squares)
    }
}

/// Base columns plus expansion vectors; see [`DmBase::expand`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DmBase {
    pub descriptor: GroupDescriptor,
    pub base_columns: Vec<Vec<GroupElement>>,
    pub expansion_vectors: Vec<Vec<GroupElement>>,
}

impl DmBase {
    /// For every base column `c` (in order) and every scalar tuple
    /// `(a₁, …, a_t) ∈ Z₃^t` (lexicographic, all-zero first), emits the
    /// column `c + Σ aᵢ·Vᵢ`.
    ///
    /// A column count different from `|G|` is not an error here; it shows up
    /// in [`DifferenceMatrix::verify`].
    pub fn expand(&self) -> Result<DifferenceMatrix> {
        let k = self.base_columns.first().map_or(0, Vec::len);
        if let Some(v) = self
            .base_columns
            .iter()
            .chain(&self.expansion_vectors)
            .find(|v| v.len() != k)
        {
            return Err(Error::Shape(format!("vector of length {} where k = {k}", v.len())));
        }
        let t = self.expansion_vectors.len();
        let tuples = scalar_tuples(t);
        let offsets: Vec<Vec<GroupElement>> = tuples
            .iter()
            .map(|tuple| {
                (0..k)
                    .map(|r| {
                        tuple
                            .iter()
                            .zip(&self.expansion_vectors)
                            .fold(self.descriptor.identity(), |acc, (&a, v)| {
                                acc.add_unchecked(&v[r].scalar_mul(a))
                            })
                    })
                    .collect()
            })
            .collect();
        let mut columns = Vec::with_capacity(self.base_columns.len() * offsets.len());
        for base in &self.base_columns {
            for off in &offsets {
                let col = base
                    .iter()
                    .zip(off)
                    .map(|(b, o)| b.add(o))
                    .collect::<Result<Vec<_>>>()?;
                columns.push(col);
            }
        }
        DifferenceMatrix::from_columns(self.descriptor.clone(), &columns)
    }
}

fn scalar_tuples(t: usize) -> Vec<Vec<u64>> {
    let count = SCALAR_MODULUS.pow(t as u32);
    (0..count)
        .map(|mut i| {
            let mut tuple = vec![0; t];
            for slot in tuple.iter_mut().rev() {
                *slot = i % SCALAR_MODULUS;
                i /= SCALAR_MODULUS;
            }
            tuple
        })
        .collect()
}

/// Swaps rows of a row-major matrix. Pairs are 1-based and must be disjoint.
pub fn apply_row_interchange<T: Clone>(rows: &[Vec<T>], swaps: &[(usize, usize)]) -> Result<Vec<Vec<T>>> {
    let mut touched = vec![false; rows.len()];
    for &(a, b) in swaps {
        for r in [a, b] {
            if r == 0 || r > rows.len() {
                return Err(Error::Interchange(format!("row {r} out of range 1..{}", rows.len())));
            }
        }
        if a == b || std::mem::replace(&mut touched[a - 1], true) || std::mem::replace(&mut touched[b - 1], true) {
            return Err(Error::Interchange(format!("pair {a}:{b} overlaps another pair")));
        }
    }
    let mut out = rows.to_vec();
    for &(a, b) in swaps {
        out.swap(a - 1, b - 1);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowPairFailure {
    /// 1-based row indices.
    pub rows: (usize, usize),
    /// An element of `G` absent from the differences, if any.
    pub missing: Option<String>,
    /// A difference occurring more than once, if any.
    pub duplicated: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DmReport {
    pub group_order: usize,
    pub rows: usize,
    pub columns: usize,
    pub pairs_total: usize,
    pub pairs_checked: usize,
    /// `(expected, found)` when the column count differs from `|G|`.
    pub column_count_mismatch: Option<(usize, usize)>,
    pub failures: Vec<RowPairFailure>,
}

impl DmReport {
    pub fn passed(&self) -> bool {
        self.column_count_mismatch.is_none() && self.failures.is_empty()
    }

    pub fn pairs_passed(&self) -> usize {
        self.pairs_checked - self.failures.len()
    }

    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if let Some((expected, found)) = self.column_count_mismatch {
            parts.push(format!("{found} columns, expected {expected}"));
        }
        if let Some(f) = self.failures.first() {
            parts.push(format!(
                "{} failing row pair(s), first {:?}: missing {}, duplicated {}",
                self.failures.len(),
                f.rows,
                f.missing.as_deref().unwrap_or("-"),
                f.duplicated.as_deref().unwrap_or("-")
            ));
        }
        if parts.is_empty() {
            format!("{}/{} row pairs pass", self.pairs_passed(), self.pairs_total)
        } else {
            parts.join("; ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::verify_mols;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn zm(m: u32) -> GroupDescriptor {
        format!("Z{m}").parse().unwrap()
    }

    fn el(d: &GroupDescriptor, s: &str) -> GroupElement {
        d.parse_element(s).unwrap()
    }

    /// Rows `i·j mod p` for i = 0..k: the classical DM over Z_p.
    fn multiplication_dm(p: u32, k: u32) -> DifferenceMatrix {
        let d = zm(p);
        let rows = (0..k)
            .map(|i| (0..p).map(|j| el(&d, &format!("({})", i * j % p))).collect())
            .collect();
        DifferenceMatrix::new(d, rows).unwrap()
    }

    // Independent oracle: sort the differences and compare with 0..p.
    fn brute_force_ok(m: &DifferenceMatrix) -> bool {
        let d = m.descriptor();
        let all = d.enumerate();
        for s in 0..m.row_count() {
            for t in s + 1..m.row_count() {
                let mut diffs: Vec<GroupElement> = (0..m.column_count())
                    .map(|j| m.entry(s, j).sub(m.entry(t, j)).unwrap())
                    .collect();
                diffs.sort();
                let mut expected = all.clone();
                expected.sort();
                if diffs != expected {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn two_row_dm_gives_cayley_table() {
        let m = multiplication_dm(5, 2);
        assert!(m.verify().passed());
        let mols = m.to_mols().unwrap();
        assert_eq!(mols.len(), 1);
        let expected: Vec<Vec<u32>> = (0..5).map(|j| (0..5).map(|c| (c + j) % 5 + 1).collect()).collect();
        assert_eq!(mols.squares()[0].rows(), expected);
    }

    #[test]
    fn prime_dm_yields_complete_mols() {
        let m = multiplication_dm(7, 7);
        let r = m.verify();
        assert!(r.passed());
        assert_eq!(r.pairs_checked, 21);
        let mols = m.to_mols().unwrap();
        assert_eq!(mols.len(), 6);
        assert!(verify_mols(&mols, false).passed());
    }

    #[test]
    fn normalization() {
        let m = multiplication_dm(5, 3);
        assert_eq!(m.normalize(), m);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let d = zm(5);
        for _ in 0..30 {
            let rows: Vec<Vec<GroupElement>> = (0..3)
                .map(|_| (0..5).map(|_| el(&d, &format!("({})", rng.gen_range(0..5)))).collect())
                .collect();
            let random = DifferenceMatrix::new(d.clone(), rows).unwrap();
            let norm = random.normalize();
            assert!(norm.rows()[0].iter().all(GroupElement::is_identity));
            assert_eq!(norm.verify().passed(), random.verify().passed());
            assert_eq!(random.verify().passed(), brute_force_ok(&random));
        }
    }

    #[test]
    fn mutation_is_detected_with_duplicate() {
        let mut m = multiplication_dm(7, 4);
        m.set_entry(2, 3, el(&zm(7), "(0)")).unwrap();
        let r = m.verify();
        assert!(!r.passed());
        assert!(!brute_force_ok(&m));
        // row 3 meets all three other rows in column 4
        assert_eq!(r.failures.len(), 3);
        assert!(r.failures.iter().all(|f| f.duplicated.is_some()));
        assert_eq!(m.verify_with(true).failures.len(), 1);
        assert!(m.to_mols().is_err());
    }

    #[test]
    fn verification_ignores_column_order() {
        let m = multiplication_dm(11, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let mut order: Vec<usize> = (0..11).collect();
            order.shuffle(&mut rng);
            assert!(m.permute_columns(&order).verify().passed());
        }
    }

    #[test]
    fn expansion_order_and_count() {
        let d: GroupDescriptor = "Z3*Z3".parse().unwrap();
        let base = DmBase {
            descriptor: d.clone(),
            base_columns: vec![vec![el(&d, "(0,0)"), el(&d, "(1,0)")]],
            expansion_vectors: vec![
                vec![el(&d, "(0,1)"), el(&d, "(0,2)")],
                vec![el(&d, "(1,0)"), el(&d, "(0,0)")],
            ],
        };
        let m = base.expand().unwrap();
        assert_eq!(m.column_count(), 9);
        // tuple order (0,0), (0,1), (0,2), (1,0), ...
        assert_eq!(m.entry(0, 1), &el(&d, "(1,0)"));
        assert_eq!(m.entry(0, 3), &el(&d, "(0,1)"));
        assert_eq!(m.entry(1, 3), &el(&d, "(1,2)"));
        assert_eq!(base.expand().unwrap(), m);

        let zero = DmBase {
            expansion_vectors: vec![vec![d.identity(), d.identity()]],
            ..base.clone()
        };
        let m = zero.expand().unwrap();
        assert_eq!(m.column_count(), 3);
        assert_eq!(m.entry(1, 0), m.entry(1, 2));
        assert!(!m.verify().passed());

        let bad = DmBase {
            expansion_vectors: vec![vec![d.identity()]],
            ..base
        };
        assert!(bad.expand().is_err());
    }

    #[test]
    fn row_interchange() {
        let rows: Vec<Vec<u8>> = (1..=7).map(|r| vec![r; 3]).collect();
        let swaps = [(1, 6), (2, 5), (3, 4)];
        let once = apply_row_interchange(&rows, &swaps).unwrap();
        let firsts: Vec<u8> = once.iter().map(|r| r[0]).collect();
        assert_eq!(firsts, [6, 5, 4, 3, 2, 1, 7]);
        assert_eq!(apply_row_interchange(&once, &swaps).unwrap(), rows);
        assert_eq!(apply_row_interchange(&rows, &[]).unwrap(), rows);
        assert!(apply_row_interchange(&rows, &[(1, 8)]).is_err());
        assert!(apply_row_interchange(&rows, &[(0, 1)]).is_err());
        assert!(apply_row_interchange(&rows, &[(1, 2), (2, 3)]).is_err());
        assert!(apply_row_interchange(&rows, &[(4, 4)]).is_err());
    }

    #[test]
    fn wrong_width_reported() {
        let d = zm(5);
        let rows = vec![
            vec![d.identity(); 4],
            (0..4).map(|i| el(&d, &format!("({i})"))).collect(),
        ];
        let r = DifferenceMatrix::new(d, rows).unwrap().verify();
        assert_eq!(r.column_count_mismatch, Some((5, 4)));
        assert!(!r.passed());
    }
}
