//! Permutation arrays, separability, and the conversion of a separated
//! code into MOLS.
//!
//! An `(n, n-1)` permutation array is `(n, m)`-separable when it splits into
//! `m` classes of `n` words, pairwise at distance `n` inside a class and at
//! distance `n - 1` across classes. Class `s`, ordered as `σ_1..σ_n`, yields
//! the Latin square with `A_s(i, j) = k` whenever `j^{σ_k} = i`.

use std::fmt;

use rayon::prelude::*;

use crate::latin::{LatinSquare, MolsSet};
use crate::perm::Permutation;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationCode {
    degree: usize,
    words: Vec<Permutation>,
}

impl PermutationCode {
    /// Words must share `degree` and be pairwise distinct.
    pub fn new(degree: usize, words: Vec<Permutation>) -> Result<Self> {
        for w in &words {
            if w.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: w.degree(),
                });
            }
        }
        let mut order: Vec<usize> = (0..words.len()).collect();
        order.sort_unstable_by(|&a, &b| words[a].cmp(&words[b]));
        if let Some(w) = order.windows(2).find(|w| words[w[0]] == words[w[1]]) {
            return Err(Error::DuplicateWord { index: w[0].max(w[1]) });
        }
        Ok(PermutationCode { degree, words })
    }

    /// Union of word sets (e.g. orbits), deduplicated and sorted.
    pub fn union<I>(degree: usize, parts: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: IntoIterator<Item = Permutation>,
    {
        let mut words: Vec<Permutation> = parts.into_iter().flatten().collect();
        words.sort_unstable();
        words.dedup();
        PermutationCode::new(degree, words)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn words(&self) -> &[Permutation] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Minimum pairwise Hamming distance; `n` for a single word.
    pub fn min_distance(&self) -> Result<usize> {
        if self.words.is_empty() {
            return Err(Error::EmptyCode);
        }
        let words = &self.words;
        Ok((0..words.len())
            .into_par_iter()
            .map(|i| {
                words[i + 1..]
                    .iter()
                    .map(|w| words[i].distance(w))
                    .min()
                    .unwrap_or(self.degree)
            })
            .min()
            .unwrap_or(self.degree)
            .min(self.degree))
    }

    /// Greedy separation into classes of `n` words.
    ///
    /// Each class is opened with the first unassigned word and collects, in
    /// code order, every unassigned word at distance `n` from that opener.
    /// The classes are then validated in full, so success certifies the
    /// separated-code invariants regardless of the greedy order.
    pub fn separate(&self) -> Result<SeparatedCode, SeparationFailure> {
        let n = self.degree;
        let size = self.words.len();
        if n == 0 || !size.is_multiple_of(n) {
            return Err(SeparationFailure::SizeNotMultiple { size, degree: n });
        }
        let mut assigned = vec![false; size];
        let mut classes: Vec<Vec<usize>> = Vec::with_capacity(size / n);
        for class_index in 0..size / n {
            let Some(first) = assigned.iter().position(|a| !a) else {
                break;
            };
            assigned[first] = true;
            let mut class = vec![first];
            for (j, taken) in assigned.iter_mut().enumerate().skip(first + 1) {
                if !*taken && self.words[first].distance(&self.words[j]) == n {
                    *taken = true;
                    class.push(j);
                }
            }
            if class.len() != n {
                return Err(SeparationFailure::ClassSize {
                    class: class_index,
                    size: class.len(),
                    opener: first,
                });
            }
            class.sort_unstable_by(|&a, &b| self.words[a].cmp(&self.words[b]));
            classes.push(class);
        }
        let separated = SeparatedCode {
            degree: n,
            classes: classes
                .iter()
                .map(|c| c.iter().map(|&i| self.words[i].clone()).collect())
                .collect(),
        };
        separated
            .validate()
            .map_err(|f| f.remap(|class, i| classes[class][i]))?;
        Ok(separated)
    }
}

/// First violated condition found while separating a code.
///
/// Word indices refer to the input code's word list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparationFailure {
    SizeNotMultiple {
        size: usize,
        degree: usize,
    },
    ClassSize {
        class: usize,
        size: usize,
        opener: usize,
    },
    IntraClassDistance {
        class: usize,
        words: (usize, usize),
        distance: usize,
    },
    InterClassDistance {
        classes: (usize, usize),
        words: (usize, usize),
        distance: usize,
    },
}

impl SeparationFailure {
    fn remap(self, index: impl Fn(usize, usize) -> usize) -> Self {
        match self {
            SeparationFailure::IntraClassDistance {
                class,
                words: (a, b),
                distance,
            } => SeparationFailure::IntraClassDistance {
                class,
                words: (index(class, a), index(class, b)),
                distance,
            },
            SeparationFailure::InterClassDistance {
                classes: (s, t),
                words: (a, b),
                distance,
            } => SeparationFailure::InterClassDistance {
                classes: (s, t),
                words: (index(s, a), index(t, b)),
                distance,
            },
            other => other,
        }
    }
}

impl fmt::Display for SeparationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeparationFailure::SizeNotMultiple { size, degree } => {
                write!(f, "code size {size} is not a multiple of n = {degree}")
            }
            SeparationFailure::ClassSize { class, size, opener } => write!(
                f,
                "class {class} opened by word {opener} collected {size} words instead of n"
            ),
            SeparationFailure::IntraClassDistance { class, words, distance } => write!(
                f,
                "class {class}: words {} and {} are at distance {distance}, expected n",
                words.0, words.1
            ),
            SeparationFailure::InterClassDistance {
                classes,
                words,
                distance,
            } => write!(
                f,
                "classes {} and {}: words {} and {} are at distance {distance}, expected n - 1",
                classes.0, classes.1, words.0, words.1
            ),
        }
    }
}

impl std::error::Error for SeparationFailure {}

/// A code split into classes of `n` words; intra-class distance `n`,
/// inter-class distance `n - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatedCode {
    degree: usize,
    classes: Vec<Vec<Permutation>>,
}

impl SeparatedCode {
    /// Checks the invariants on explicitly given classes. Word indices in a
    /// failure are positions within their class.
    pub fn new(degree: usize, classes: Vec<Vec<Permutation>>) -> Result<Self, SeparationFailure> {
        for (class, words) in classes.iter().enumerate() {
            if words.len() != degree || words.iter().any(|w| w.degree() != degree) {
                return Err(SeparationFailure::ClassSize {
                    class,
                    size: words.len(),
                    opener: 0,
                });
            }
        }
        let code = SeparatedCode { degree, classes };
        code.validate()?;
        Ok(code)
    }

    fn validate(&self) -> Result<(), SeparationFailure> {
        let n = self.degree;
        let intra = self.classes.par_iter().enumerate().find_map_first(|(class, words)| {
            first_pair(words, words, true, n).map(|(words, distance)| SeparationFailure::IntraClassDistance {
                class,
                words,
                distance,
            })
        });
        if let Some(f) = intra {
            return Err(f);
        }
        let m = self.classes.len();
        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|s| (s + 1..m).map(move |t| (s, t))).collect();
        let inter = pairs.par_iter().find_map_first(|&(s, t)| {
            first_pair(&self.classes[s], &self.classes[t], false, n - 1).map(|(words, distance)| {
                SeparationFailure::InterClassDistance {
                    classes: (s, t),
                    words,
                    distance,
                }
            })
        });
        match inter {
            Some(f) => Err(f),
            None => Ok(()),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn classes(&self) -> &[Vec<Permutation>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// One Latin square per class: `A_s(i, j) = k` iff `j^{σ_{sk}} = i`.
    ///
    /// # Panics
    /// Panics if a produced square is not Latin, which the class invariants
    /// rule out.
    pub fn to_mols(&self) -> MolsSet {
        let n = self.degree;
        let squares = self
            .classes
            .iter()
            .map(|class| {
                let mut cells = vec![0u32; n * n];
                for (k, word) in class.iter().enumerate() {
                    for (j, &i) in word.raw().iter().enumerate() {
                        cells[i as usize * n + j] = k as u32 + 1;
                    }
                }
                let square = LatinSquare::from_cells(n, cells).expect("symbols lie in 1..n");
                if let Some(v) = square.latin_violation() {
                    panic!("separated class produced a non-Latin square: {v}");
                }
                square
            })
            .collect();
        MolsSet::new(n, squares).expect("uniform order")
    }
}

fn first_pair(xs: &[Permutation], ys: &[Permutation], same: bool, expected: usize) -> Option<((usize, usize), usize)> {
    for (i, x) in xs.iter().enumerate() {
        let start = if same { i + 1 } else { 0 };
        for (j, y) in ys.iter().enumerate().skip(start) {
            let d = x.distance(y);
            if d != expected {
                return Some(((i, j), d));
            }
        }
    }
    None
}
