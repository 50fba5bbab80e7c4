//! The Hamming isometry group `Iso(n) = ⟨B₁, B₂, t_n⟩ ≤ S_{2n}` and its
//! right action on `B₁ ≅ S_n`.
//!
//! `B₁` acts on points `1..n`, `B₂` on `n+1..2n`, and `t_n` swaps `i` with
//! `n + i`. An element that preserves both blocks decomposes as `x₁ x₂` with
//! `x₁ ∈ B₁`, `x₂ ∈ B₂`, and acts by `b ↦ x₁⁻¹ · b · φ(x₂)`, where `φ`
//! relabels `n + i` as `i`. A block-swapping element `x` acts through the
//! block-preserving `x · t_n`, followed by inversion.

use std::collections::{HashSet, VecDeque};

use crate::perm::Permutation;
use crate::{Error, Result};

/// Default cap on the number of elements enumerated by [`IsometrySubgroup::order`].
pub const DEFAULT_CLOSURE_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsometryElement {
    n: usize,
    underlying: Permutation,
    swaps_blocks: bool,
}

impl IsometryElement {
    /// Validates that `g` (of degree `2n`) lies in `Iso(n)`.
    pub fn classify(g: Permutation) -> Result<Self> {
        let degree = g.degree();
        let n = degree / 2;
        let not_iso = |reason: String| Error::NotAnIsometry { degree, n, reason };
        if degree == 0 || !degree.is_multiple_of(2) {
            return Err(not_iso("degree must be a positive even number".into()));
        }
        let block = |p: usize| p >= n;
        let raw = g.raw();
        let swaps_blocks = block(raw[0] as usize);
        for (i, &img) in raw.iter().enumerate() {
            if block(i) ^ block(img as usize) != swaps_blocks {
                return Err(not_iso(format!(
                    "point {} maps to {}, which neither preserves nor swaps the blocks",
                    i + 1,
                    img + 1
                )));
            }
        }
        Ok(IsometryElement {
            n,
            underlying: g,
            swaps_blocks,
        })
    }

    pub fn identity(n: usize) -> Self {
        IsometryElement {
            n,
            underlying: Permutation::identity(2 * n),
            swaps_blocks: false,
        }
    }

    /// `t_n = (1, n+1)(2, n+2)…(n, 2n)`.
    pub fn block_swap(n: usize) -> Self {
        let images = (0..2 * n as u32).map(|i| (i + n as u32) % (2 * n as u32));
        IsometryElement {
            n,
            underlying: Permutation::from_raw(images.collect()),
            swaps_blocks: true,
        }
    }

    /// Embeds `b ∈ S_n` as an element of `B₁`.
    pub fn from_first_block(b: &Permutation) -> Self {
        let n = b.degree();
        let images = b.raw().iter().copied().chain(n as u32..2 * n as u32);
        IsometryElement {
            n,
            underlying: Permutation::from_raw(images.collect()),
            swaps_blocks: false,
        }
    }

    /// Embeds `b ∈ S_n` as an element of `B₂`.
    pub fn from_second_block(b: &Permutation) -> Self {
        let n = b.degree();
        let images = (0..n as u32).chain(b.raw().iter().map(|&i| i + n as u32));
        IsometryElement {
            n,
            underlying: Permutation::from_raw(images.collect()),
            swaps_blocks: false,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn underlying(&self) -> &Permutation {
        &self.underlying
    }

    pub fn swaps_blocks(&self) -> bool {
        self.swaps_blocks
    }

    /// The product `self · other` in `S_{2n}`.
    pub fn compose(&self, other: &IsometryElement) -> Result<IsometryElement> {
        self.check_n(other.n)?;
        Ok(self.then(other))
    }

    fn then(&self, other: &IsometryElement) -> IsometryElement {
        IsometryElement {
            n: self.n,
            underlying: self.underlying.then(&other.underlying),
            swaps_blocks: self.swaps_blocks ^ other.swaps_blocks,
        }
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::DegreeMismatch { left: self.n, right: n });
        }
        Ok(())
    }

    /// Block restrictions `(x₁, φ(x₂))` of the block-preserving element
    /// `self` (or `self · t_n` when `self` swaps blocks), both of degree `n`.
    fn block_parts(&self) -> (Permutation, Permutation) {
        let n = self.n as u32;
        let raw = self.underlying.raw();
        let (first, second) = raw.split_at(self.n);
        // Composing with t_n moves every image by n across the blocks; the
        // reduction mod n covers both cases.
        let x1 = first.iter().map(|&i| i % n).collect();
        let x2 = second.iter().map(|&i| i % n).collect();
        (Permutation::from_raw(x1), Permutation::from_raw(x2))
    }

    /// The right action `b * self` on `B₁ ≅ S_n`.
    pub fn act(&self, b: &Permutation) -> Result<Permutation> {
        self.check_n(b.degree())?;
        Ok(self.act_unchecked(b))
    }

    pub(crate) fn act_unchecked(&self, b: &Permutation) -> Permutation {
        let (x1, x2) = self.block_parts();
        let image = x1.inverse().then(b).then(&x2);
        if self.swaps_blocks {
            image.inverse()
        } else {
            image
        }
    }
}

/// A subgroup `U ≤ Iso(n)` given by generators.
#[derive(Clone, Debug)]
pub struct IsometrySubgroup {
    n: usize,
    generators: Vec<IsometryElement>,
}

impl IsometrySubgroup {
    pub fn new(n: usize, generators: Vec<IsometryElement>) -> Result<Self> {
        for g in &generators {
            g.check_n(n)?;
        }
        Ok(IsometrySubgroup { n, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[IsometryElement] {
        &self.generators
    }

    /// The orbit `b * U`, sorted lexicographically on image arrays.
    ///
    /// Computed as the closure of `{b}` under the generators, which equals the
    /// orbit of the whole (finite) group.
    pub fn orbit(&self, b: &Permutation) -> Result<Vec<Permutation>> {
        if b.degree() != self.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: b.degree(),
            });
        }
        let mut seen = HashSet::from([b.clone()]);
        let mut queue = VecDeque::from([b.clone()]);
        while let Some(c) = queue.pop_front() {
            for g in &self.generators {
                let next = g.act_unchecked(&c);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut orbit: Vec<_> = seen.into_iter().collect();
        orbit.sort_unstable();
        Ok(orbit)
    }

    pub fn order(&self) -> Result<usize> {
        self.order_with_limit(DEFAULT_CLOSURE_LIMIT)
    }

    pub fn order_with_limit(&self, limit: usize) -> Result<usize> {
        Ok(self.elements_with_limit(limit)?.len())
    }

    /// All group elements, in breadth-first order from the identity.
    pub fn elements_with_limit(&self, limit: usize) -> Result<Vec<IsometryElement>> {
        let id = IsometryElement::identity(self.n);
        let mut seen = HashSet::from([id.underlying.clone()]);
        let mut elements = vec![id];
        let mut next = 0;
        while next < elements.len() {
            let x = elements[next].clone();
            next += 1;
            for g in &self.generators {
                let y = x.then(g);
                if seen.insert(y.underlying.clone()) {
                    if elements.len() == limit {
                        return Err(Error::ClosureLimit { limit });
                    }
                    elements.push(y);
                }
            }
        }
        Ok(elements)
    }
}
