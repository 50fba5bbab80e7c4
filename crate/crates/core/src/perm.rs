//! Permutations of `{1..n}` in image-array form.
//!
//! Points are 1-based at every public boundary. Products follow the right
//! action convention used throughout: `x^(p·q) = (x^p)^q`, i.e. `p` is
//! applied first.

use std::fmt;

use crate::{Error, Result};

/// A bijection of `{1..n}`.
///
/// The derived ordering is lexicographic on the image array, which is the
/// canonical order used for orbits and code classes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based: images[i] is the image of point i + 1, minus one.
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images, `images[i - 1] = i^σ`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        let mut out = Vec::with_capacity(degree);
        for (i, &img) in images.iter().enumerate() {
            if img == 0 || img > degree {
                return Err(Error::NotAPermutation {
                    degree,
                    reason: format!("image {img} of point {} out of range", i + 1),
                });
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::NotAPermutation {
                    degree,
                    reason: format!("image {img} appears twice"),
                });
            }
            out.push((img - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    /// Caller guarantees `images` is a bijection of `0..len`.
    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        debug_assert!(is_bijection(&images));
        Permutation { images }
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.images
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based `point`.
    ///
    /// # Panics
    /// Panics if `point` is not in `1..=degree`.
    pub fn image(&self, point: usize) -> usize {
        assert!(
            (1..=self.degree()).contains(&point),
            "point {point} out of range 1..{}",
            self.degree()
        );
        self.images[point - 1] as usize + 1
    }

    /// 1-based image array.
    pub fn to_images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img as usize)
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &img)| i == img as usize)
            .count()
    }

    /// The product `self · other`: apply `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_degrees(self, other)?;
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// Number of points on which the two permutations disagree.
    pub fn hamming_distance(&self, other: &Permutation) -> Result<usize> {
        check_degrees(self, other)?;
        Ok(self.distance(other))
    }

    #[inline]
    pub(crate) fn distance(&self, other: &Permutation) -> usize {
        self.images.iter().zip(&other.images).filter(|(a, b)| a != b).count()
    }

    /// Parses disjoint-cycle notation such as `"(1, 6, 26)(2, 4, 27)"`.
    ///
    /// Whitespace (including line breaks) is insignificant, omitted points are
    /// fixed and the empty string or `"()"` is the identity. Cycles must be
    /// disjoint; a repeated point is rejected rather than multiplied out.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
        CycleParser::new(text, degree).parse()
    }

    /// Canonical cycle notation: each cycle starts at its smallest point,
    /// cycles are sorted by that point, fixed points are omitted and the
    /// identity is `"()"`.
    pub fn format_cycles(&self) -> String {
        let mut out = String::new();
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            out.push('(');
            let mut p = start;
            loop {
                seen[p] = true;
                if p != start {
                    out.push(',');
                }
                out.push_str(&(p + 1).to_string());
                p = self.images[p] as usize;
                if p == start {
                    break;
                }
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

fn check_degrees(p: &Permutation, q: &Permutation) -> Result<()> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: q.degree(),
        });
    }
    Ok(())
}

fn is_bijection(images: &[u32]) -> bool {
    let mut seen = vec![false; images.len()];
    images
        .iter()
        .all(|&i| (i as usize) < images.len() && !std::mem::replace(&mut seen[i as usize], true))
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_cycles())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self.format_cycles())
    }
}

struct CycleParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    degree: usize,
    images: Vec<u32>,
    used: Vec<bool>,
}

impl<'a> CycleParser<'a> {
    fn new(text: &'a str, degree: usize) -> Self {
        CycleParser {
            bytes: text.as_bytes(),
            pos: 0,
            degree,
            images: (0..degree as u32).collect(),
            used: vec![false; degree],
        }
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::CycleSyntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Permutation> {
        while let Some(c) = self.peek() {
            if c != b'(' {
                return self.syntax(format!("expected '(', found '{}'", c as char));
            }
            self.pos += 1;
            self.cycle()?;
        }
        Ok(Permutation { images: self.images })
    }

    fn cycle(&mut self) -> Result<()> {
        if self.peek() == Some(b')') {
            self.pos += 1;
            return Ok(());
        }
        let mut points = vec![self.point()?];
        loop {
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    points.push(self.point()?);
                }
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                Some(c) => return self.syntax(format!("expected ',' or ')', found '{}'", c as char)),
                None => return self.syntax("unterminated cycle"),
            }
        }
        for (i, &p) in points.iter().enumerate() {
            self.images[p] = points[(i + 1) % points.len()] as u32;
        }
        Ok(())
    }

    // Returns the 0-based point.
    fn point(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        match self.bytes.get(self.pos) {
            Some(b'1'..=b'9') => {}
            Some(c) => return self.syntax(format!("expected a point, found '{}'", *c as char)),
            None => return self.syntax("expected a point, found end of input"),
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        let point: usize = match digits.parse() {
            Ok(p) => p,
            Err(_) => usize::MAX,
        };
        if point > self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
                offset: start,
            });
        }
        if std::mem::replace(&mut self.used[point - 1], true) {
            return Err(Error::RepeatedPoint { point, offset: start });
        }
        Ok(point - 1)
    }
}
