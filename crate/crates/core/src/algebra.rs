//! Arithmetic in GF(4), GF(27), cyclic groups `Z_m` and their direct
//! products.
//!
//! GF(4) is stored in the basis `(1, z)` with `z² = z + 1`; GF(27) in the
//! basis `(1, x, x²)` with `x³ = x + 2`. Both generators are primitive.
//! Group operations on products are componentwise and additive.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::{Error, Result};

/// Element `c₀ + c₁·z` of GF(4).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf4(pub [u8; 2]);

/// Element `c₀ + c₁·x + c₂·x²` of GF(27).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf27(pub [u8; 3]);

impl Gf4 {
    pub const ZERO: Gf4 = Gf4([0, 0]);
    pub const ONE: Gf4 = Gf4([1, 0]);
    /// The primitive element `z`.
    pub const Z: Gf4 = Gf4([0, 1]);

    pub fn pow(self, k: u64) -> Gf4 {
        field_pow(self, Gf4::ONE, k)
    }
}

impl Gf27 {
    pub const ZERO: Gf27 = Gf27([0, 0, 0]);
    pub const ONE: Gf27 = Gf27([1, 0, 0]);
    /// The primitive element `x`.
    pub const X: Gf27 = Gf27([0, 1, 0]);

    pub fn pow(self, k: u64) -> Gf27 {
        field_pow(self, Gf27::ONE, k)
    }
}

fn field_pow<T: Copy + Mul<Output = T>>(base: T, one: T, mut k: u64) -> T {
    let (mut acc, mut sq) = (one, base);
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * sq;
        }
        sq = sq * sq;
        k >>= 1;
    }
    acc
}

impl Add for Gf4 {
    type Output = Gf4;
    fn add(self, o: Gf4) -> Gf4 {
        Gf4([self.0[0] ^ o.0[0], self.0[1] ^ o.0[1]])
    }
}

impl Neg for Gf4 {
    type Output = Gf4;
    fn neg(self) -> Gf4 {
        self
    }
}

impl Sub for Gf4 {
    type Output = Gf4;
    // characteristic 2
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, o: Gf4) -> Gf4 {
        self + o
    }
}

impl Mul for Gf4 {
    type Output = Gf4;
    fn mul(self, o: Gf4) -> Gf4 {
        let [a0, a1] = self.0;
        let [b0, b1] = o.0;
        // (a0 + a1 z)(b0 + b1 z) = a0b0 + (a0b1 + a1b0) z + a1b1 z², z² = z + 1
        let top = a1 & b1;
        Gf4([(a0 & b0) ^ top, (a0 & b1) ^ (a1 & b0) ^ top])
    }
}

impl Add for Gf27 {
    type Output = Gf27;
    fn add(self, o: Gf27) -> Gf27 {
        Gf27(std::array::from_fn(|i| (self.0[i] + o.0[i]) % 3))
    }
}

impl Neg for Gf27 {
    type Output = Gf27;
    fn neg(self) -> Gf27 {
        Gf27(self.0.map(|c| (3 - c) % 3))
    }
}

impl Sub for Gf27 {
    type Output = Gf27;
    fn sub(self, o: Gf27) -> Gf27 {
        self + -o
    }
}

impl Mul for Gf27 {
    type Output = Gf27;
    fn mul(self, o: Gf27) -> Gf27 {
        let mut prod = [0u32; 5];
        for i in 0..3 {
            for j in 0..3 {
                prod[i + j] += self.0[i] as u32 * o.0[j] as u32;
            }
        }
        // x⁴ = x² + 2x, x³ = x + 2
        for d in [4, 3] {
            let c = prod[d] % 3;
            prod[d] = 0;
            prod[d - 2] += c;
            prod[d - 3] += 2 * c;
        }
        Gf27(std::array::from_fn(|i| (prod[i] % 3) as u8))
    }
}

/// A GF(4) or GF(27) value, for the multiplicative operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Gf4(Gf4),
    Gf27(Gf27),
}

impl FieldElement {
    pub fn try_mul(self, other: FieldElement) -> Result<FieldElement> {
        match (self, other) {
            (FieldElement::Gf4(a), FieldElement::Gf4(b)) => Ok(FieldElement::Gf4(a * b)),
            (FieldElement::Gf27(a), FieldElement::Gf27(b)) => Ok(FieldElement::Gf27(a * b)),
            (a, b) => Err(Error::DescriptorMismatch {
                left: a.kind().to_string(),
                right: b.kind().to_string(),
            }),
        }
    }

    pub fn pow(self, k: u64) -> FieldElement {
        match self {
            FieldElement::Gf4(a) => FieldElement::Gf4(a.pow(k)),
            FieldElement::Gf27(a) => FieldElement::Gf27(a.pow(k)),
        }
    }

    pub fn kind(self) -> ComponentKind {
        match self {
            FieldElement::Gf4(_) => ComponentKind::Gf4,
            FieldElement::Gf27(_) => ComponentKind::Gf27,
        }
    }
}

impl TryFrom<Component> for FieldElement {
    type Error = Error;
    fn try_from(c: Component) -> Result<FieldElement> {
        match c {
            Component::Gf4(a) => Ok(FieldElement::Gf4(a)),
            Component::Gf27(a) => Ok(FieldElement::Gf27(a)),
            Component::Cyclic { .. } => Err(Error::NotAField {
                kind: c.kind().to_string(),
            }),
        }
    }
}

impl From<FieldElement> for Component {
    fn from(f: FieldElement) -> Component {
        match f {
            FieldElement::Gf4(a) => Component::Gf4(a),
            FieldElement::Gf27(a) => Component::Gf27(a),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentKind {
    Gf4,
    Gf27,
    Cyclic(u32),
}

impl ComponentKind {
    pub fn order(self) -> usize {
        match self {
            ComponentKind::Gf4 => 4,
            ComponentKind::Gf27 => 27,
            ComponentKind::Cyclic(m) => m as usize,
        }
    }

    pub fn zero(self) -> Component {
        match self {
            ComponentKind::Gf4 => Component::Gf4(Gf4::ZERO),
            ComponentKind::Gf27 => Component::Gf27(Gf27::ZERO),
            ComponentKind::Cyclic(m) => Component::Cyclic { modulus: m, value: 0 },
        }
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::Gf4 => f.write_str("GF4"),
            ComponentKind::Gf27 => f.write_str("GF27"),
            ComponentKind::Cyclic(m) => write!(f, "Z{m}"),
        }
    }
}

/// One coordinate of a product-group element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    Gf4(Gf4),
    Gf27(Gf27),
    Cyclic { modulus: u32, value: u32 },
}

impl Component {
    pub fn kind(self) -> ComponentKind {
        match self {
            Component::Gf4(_) => ComponentKind::Gf4,
            Component::Gf27(_) => ComponentKind::Gf27,
            Component::Cyclic { modulus, .. } => ComponentKind::Cyclic(modulus),
        }
    }

    // Callers guarantee matching kinds.
    fn add(self, o: Component) -> Component {
        match (self, o) {
            (Component::Gf4(a), Component::Gf4(b)) => Component::Gf4(a + b),
            (Component::Gf27(a), Component::Gf27(b)) => Component::Gf27(a + b),
            (Component::Cyclic { modulus, value: a }, Component::Cyclic { value: b, .. }) => Component::Cyclic {
                modulus,
                value: (a + b) % modulus,
            },
            _ => unreachable!("component kinds checked by caller"),
        }
    }

    fn neg(self) -> Component {
        match self {
            Component::Gf4(a) => Component::Gf4(-a),
            Component::Gf27(a) => Component::Gf27(-a),
            Component::Cyclic { modulus, value } => Component::Cyclic {
                modulus,
                value: (modulus - value) % modulus,
            },
        }
    }

    fn digits(self, out: &mut Vec<u32>) {
        match self {
            Component::Gf4(a) => out.extend(a.0.map(u32::from)),
            Component::Gf27(a) => out.extend(a.0.map(u32::from)),
            Component::Cyclic { value, .. } => out.push(value),
        }
    }

    /// Parses one coordinate expression: a polynomial in `z` (GF4) or `x`
    /// (GF27) in expanded form, or an integer residue (cyclic).
    pub fn parse(text: &str, kind: ComponentKind) -> Result<Component> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |message: String| Error::ElementSyntax {
            text: text.clone(),
            message,
        };
        match kind {
            ComponentKind::Cyclic(m) => {
                let value = parse_digits(&text).ok_or_else(|| err("expected an integer".into()))?;
                if value >= m as u64 {
                    return Err(err(format!("residue {value} not reduced mod {m}")));
                }
                Ok(Component::Cyclic {
                    modulus: m,
                    value: value as u32,
                })
            }
            ComponentKind::Gf4 => {
                let c = parse_poly(&text, 'z', 2, 2).map_err(err)?;
                Ok(Component::Gf4(Gf4([c[0], c[1]])))
            }
            ComponentKind::Gf27 => {
                let c = parse_poly(&text, 'x', 3, 3).map_err(err)?;
                Ok(Component::Gf27(Gf27([c[0], c[1], c[2]])))
            }
        }
    }
}

fn parse_digits(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Sum of terms `[c][sym[^e]]`, with coefficients below `characteristic`
/// and exponents below `degree`. Repeated powers are added.
fn parse_poly(text: &str, sym: char, characteristic: u8, degree: usize) -> Result<Vec<u8>, String> {
    if text.is_empty() {
        return Err("empty expression".into());
    }
    let mut coeffs = vec![0u8; degree];
    for term in text.split('+') {
        let (coef, power) = match term.find(sym) {
            None => {
                let c = parse_digits(term).ok_or_else(|| format!("bad term `{term}`"))?;
                (c, 0)
            }
            Some(at) => {
                let c = match &term[..at] {
                    "" => 1,
                    digits => parse_digits(digits).ok_or_else(|| format!("bad coefficient in `{term}`"))?,
                };
                let p = match &term[at + sym.len_utf8()..] {
                    "" => 1,
                    rest => rest
                        .strip_prefix('^')
                        .and_then(parse_digits)
                        .ok_or_else(|| format!("bad power in `{term}`"))?,
                };
                (c, p)
            }
        };
        if coef >= characteristic as u64 {
            return Err(format!("coefficient {coef} not reduced mod {characteristic}"));
        }
        if power >= degree as u64 {
            return Err(format!("power {power} exceeds {}; expanded form required", degree - 1));
        }
        let slot = &mut coeffs[power as usize];
        *slot = (*slot + coef as u8) % characteristic;
    }
    Ok(coeffs)
}

fn format_poly(f: &mut fmt::Formatter<'_>, coeffs: &[u8], sym: char) -> fmt::Result {
    let mut first = true;
    for (power, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !first {
            f.write_str("+")?;
        }
        first = false;
        match (c, power) {
            (c, 0) => write!(f, "{c}")?,
            (1, 1) => write!(f, "{sym}")?,
            (c, 1) => write!(f, "{c}{sym}")?,
            (1, p) => write!(f, "{sym}^{p}")?,
            (c, p) => write!(f, "{c}{sym}^{p}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Gf4(a) => format_poly(f, &a.0, 'z'),
            Component::Gf27(a) => format_poly(f, &a.0, 'x'),
            Component::Cyclic { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Ordered list of component groups, e.g. `GF4*GF27` or `Z5*Z3*Z3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    components: Vec<ComponentKind>,
}

impl GroupDescriptor {
    pub fn new(components: Vec<ComponentKind>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::BadDescriptor("no components".into()));
        }
        if components.contains(&ComponentKind::Cyclic(0)) {
            return Err(Error::BadDescriptor("Z0".into()));
        }
        Ok(GroupDescriptor { components })
    }

    pub fn components(&self) -> &[ComponentKind] {
        &self.components
    }

    pub fn order(&self) -> usize {
        self.components.iter().map(|k| k.order()).product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: self.components.iter().map(|k| k.zero()).collect(),
        }
    }

    fn radices(&self) -> impl Iterator<Item = u32> + '_ {
        // Flattened coordinate tuple: two bits, three trits or one residue.
        self.components.iter().flat_map(|&k| match k {
            ComponentKind::Gf4 => vec![2, 2],
            ComponentKind::Gf27 => vec![3, 3, 3],
            ComponentKind::Cyclic(m) => vec![m],
        })
    }

    /// Position of `g` in [`GroupDescriptor::enumerate`].
    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.check(g)?;
        Ok(self.index_unchecked(g))
    }

    pub(crate) fn index_unchecked(&self, g: &GroupElement) -> usize {
        let mut digits = Vec::with_capacity(8);
        for c in &g.coords {
            c.digits(&mut digits);
        }
        self.radices()
            .zip(digits)
            .fold(0usize, |acc, (r, d)| acc * r as usize + d as usize)
    }

    /// All elements, identity first, then lexicographic in the flattened
    /// coordinate tuple.
    pub fn enumerate(&self) -> Vec<GroupElement> {
        let radices: Vec<u32> = self.radices().collect();
        (0..self.order())
            .map(|mut index| {
                let mut digits = vec![0u32; radices.len()];
                for (d, &r) in digits.iter_mut().zip(&radices).rev() {
                    *d = (index % r as usize) as u32;
                    index /= r as usize;
                }
                let mut digits = digits.into_iter();
                GroupElement {
                    coords: self
                        .components
                        .iter()
                        .map(|&k| {
                            let mut next = || digits.next().expect("digit per radix");
                            match k {
                                ComponentKind::Gf4 => Component::Gf4(Gf4([next() as u8, next() as u8])),
                                ComponentKind::Gf27 => {
                                    Component::Gf27(Gf27([next() as u8, next() as u8, next() as u8]))
                                }
                                ComponentKind::Cyclic(m) => Component::Cyclic {
                                    modulus: m,
                                    value: next(),
                                },
                            }
                        })
                        .collect(),
                }
            })
            .collect()
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.coords.len() != self.components.len() || g.coords.iter().zip(&self.components).any(|(c, &k)| c.kind() != k)
        {
            return Err(Error::DescriptorMismatch {
                left: self.to_string(),
                right: g.descriptor().to_string(),
            });
        }
        Ok(())
    }

    /// Parses `"(e₁, …, e_r)"`, one expression per component.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let err = |message: &str| Error::ElementSyntax {
            text: text.to_string(),
            message: message.to_string(),
        };
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| err("expected a parenthesized tuple"))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != self.components.len() {
            return Err(err(&format!(
                "arity {} does not match {} ({} components)",
                parts.len(),
                self,
                self.components.len()
            )));
        }
        let coords = parts
            .iter()
            .zip(&self.components)
            .map(|(p, &k)| Component::parse(p, k))
            .collect::<Result<_>>()?;
        Ok(GroupElement { coords })
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    /// Accepts `GF4*GF27`, `GF4xGF27`, `Z5*Z3*Z3`, `Z7`, ...
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadDescriptor(s.to_string());
        let mut components = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let (kind, tail) = if let Some(t) = rest.strip_prefix("GF27") {
                (ComponentKind::Gf27, t)
            } else if let Some(t) = rest.strip_prefix("GF4") {
                (ComponentKind::Gf4, t)
            } else if let Some(t) = rest.strip_prefix('Z') {
                let end = t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
                let m: u32 = t[..end].parse().map_err(|_| bad())?;
                (ComponentKind::Cyclic(m), &t[end..])
            } else {
                return Err(bad());
            };
            components.push(kind);
            rest = match tail.strip_prefix(['*', 'x']) {
                Some(t) if !t.is_empty() => t,
                Some(_) => return Err(bad()),
                None if tail.is_empty() => tail,
                None => return Err(bad()),
            };
        }
        GroupDescriptor::new(components).map_err(|_| bad())
    }
}

/// An element of a product group; the descriptor is implied by the
/// component kinds.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<Component>,
}

impl GroupElement {
    pub fn new(coords: Vec<Component>) -> Result<Self> {
        for c in &coords {
            let ok = match *c {
                Component::Gf4(a) => a.0.iter().all(|&b| b < 2),
                Component::Gf27(a) => a.0.iter().all(|&t| t < 3),
                Component::Cyclic { modulus, value } => modulus > 0 && value < modulus,
            };
            if !ok {
                return Err(Error::ElementSyntax {
                    text: format!("{c:?}"),
                    message: "coordinate not reduced".into(),
                });
            }
        }
        Ok(GroupElement { coords })
    }

    pub fn coords(&self) -> &[Component] {
        &self.coords
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        GroupDescriptor {
            components: self.coords.iter().map(|c| c.kind()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == c.kind().zero())
    }

    fn check(&self, other: &GroupElement) -> Result<()> {
        if self.coords.len() != other.coords.len()
            || self.coords.iter().zip(&other.coords).any(|(a, b)| a.kind() != b.kind())
        {
            return Err(Error::DescriptorMismatch {
                left: self.descriptor().to_string(),
                right: other.descriptor().to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.add(*b)).collect(),
        }
    }

    pub fn neg(&self) -> GroupElement {
        GroupElement {
            coords: self.coords.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.add(&other.neg())
    }

    pub(crate) fn sub_unchecked(&self, other: &GroupElement) -> GroupElement {
        self.add_unchecked(&other.neg())
    }

    /// `self` added to itself `c` times.
    pub fn scalar_mul(&self, c: u64) -> GroupElement {
        GroupElement {
            coords: self
                .coords
                .iter()
                .map(|&comp| match comp {
                    Component::Gf4(a) => Component::Gf4(if c % 2 == 1 { a } else { Gf4::ZERO }),
                    Component::Gf27(a) => {
                        let k = (c % 3) as u8;
                        Component::Gf27(Gf27(a.0.map(|t| t * k % 3)))
                    }
                    Component::Cyclic { modulus, value } => Component::Cyclic {
                        modulus,
                        value: ((value as u64 * (c % modulus as u64)) % modulus as u64) as u32,
                    },
                })
                .collect(),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf27(s: &str) -> Gf27 {
        match Component::parse(s, ComponentKind::Gf27).unwrap() {
            Component::Gf27(a) => a,
            _ => unreachable!(),
        }
    }

    fn all_gf4() -> Vec<Gf4> {
        (0..4).map(|i| Gf4([i & 1, i >> 1])).collect()
    }

    fn all_gf27() -> Vec<Gf27> {
        (0..27).map(|i| Gf27([i % 3, i / 3 % 3, i / 9])).collect()
    }

    fn check_field<T>(elems: &[T], zero: T, one: T, mult_order: usize)
    where
        T: Copy + PartialEq + fmt::Debug + Add<Output = T> + Mul<Output = T> + Neg<Output = T>,
    {
        for &a in elems {
            assert_eq!(a + zero, a);
            assert_eq!(a * one, a);
            assert_eq!(a + -a, zero);
            if a != zero {
                assert_eq!(elems.iter().filter(|&&b| a * b == one).count(), 1, "{a:?}");
            }
            for &b in elems {
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                for &c in elems {
                    assert_eq!((a + b) + c, a + (b + c));
                    assert_eq!((a * b) * c, a * (b * c));
                    assert_eq!(a * (b + c), a * b + a * c);
                }
            }
        }
        assert_eq!(elems.len() - 1, mult_order);
    }

    #[test]
    fn gf4_field_axioms() {
        check_field(&all_gf4(), Gf4::ZERO, Gf4::ONE, 3);
        assert_eq!(Gf4::Z * Gf4::Z, Gf4([1, 1]));
        let powers: Vec<_> = (0..3).map(|k| Gf4::Z.pow(k)).collect();
        assert!(!powers.contains(&Gf4::ZERO));
        assert_eq!(powers.len(), 3);
        assert_ne!(powers[0], powers[1]);
        assert_ne!(powers[1], powers[2]);
        assert_eq!(Gf4::Z.pow(3), Gf4::ONE);
    }

    #[test]
    fn gf27_field_axioms() {
        check_field(&all_gf27(), Gf27::ZERO, Gf27::ONE, 26);
        let mut powers: Vec<_> = (0..26).map(|k| Gf27::X.pow(k)).collect();
        powers.sort();
        powers.dedup();
        assert_eq!(powers.len(), 26);
        assert!(!powers.contains(&Gf27::ZERO));
    }

    #[test]
    fn gf27_known_powers() {
        let x = Gf27::X;
        assert_eq!(x * x * x, gf27("x+2"));
        assert_eq!(x.pow(9), gf27("x+1"));
        assert_eq!(x.pow(26), Gf27::ONE);
        assert_eq!(x.pow(20), gf27("2x^2+x+1"));
        assert_eq!(x.pow(0), Gf27::ONE);
        assert_eq!(gf27("2x^2+x") * Gf27::ONE, gf27("2x^2+x"));
    }

    #[test]
    fn field_element_kind_mismatch() {
        let a = FieldElement::Gf4(Gf4::Z);
        let b = FieldElement::Gf27(Gf27::X);
        assert!(a.try_mul(b).is_err());
        assert_eq!(a.try_mul(a).unwrap(), FieldElement::Gf4(Gf4([1, 1])));
        let cyc = Component::Cyclic { modulus: 5, value: 2 };
        assert!(matches!(FieldElement::try_from(cyc), Err(Error::NotAField { .. })));
    }

    #[test]
    fn group_addition() {
        let d: GroupDescriptor = "GF4*GF27".parse().unwrap();
        let g = d.parse_element("(z+1, 2x^2+x+1)").unwrap();
        assert_eq!(g.add(&d.identity()).unwrap(), g);
        assert!(g.add(&g).unwrap().coords()[0] == ComponentKind::Gf4.zero());
        assert!(g.add(&g).unwrap().add(&g).unwrap().coords()[1] == ComponentKind::Gf27.zero());
        assert!(g.sub(&g).unwrap().is_identity());
        let other: GroupDescriptor = "Z5*Z3*Z3".parse().unwrap();
        assert!(g.add(&other.identity()).is_err());
    }

    #[test]
    fn scalar_multiples() {
        let d: GroupDescriptor = "GF4*GF27".parse().unwrap();
        let g = d.parse_element("(0,x)").unwrap();
        assert_eq!(g.scalar_mul(1), g);
        assert_eq!(g.scalar_mul(2), d.parse_element("(0,2x)").unwrap());
        assert!(g.scalar_mul(3).is_identity());
        assert!(g.scalar_mul(0).is_identity());
        let z: GroupDescriptor = "Z5*Z3*Z3".parse().unwrap();
        let h = z.parse_element("(2,2,1)").unwrap();
        assert_eq!(h.scalar_mul(3), z.parse_element("(1,0,0)").unwrap());
    }

    #[test]
    fn parse_and_format_elements() {
        let d: GroupDescriptor = "GF4xGF27".parse().unwrap();
        assert!(d.parse_element("(0,0)").unwrap().is_identity());
        let g = d.parse_element("(z+1, 2x^2+x+1)").unwrap();
        assert_eq!(
            g.coords(),
            &[Component::Gf4(Gf4([1, 1])), Component::Gf27(Gf27([1, 1, 2]))]
        );
        assert_eq!(g.to_string(), "(z+1,2x^2+x+1)");
        assert_eq!(d.parse_element("( 1 , x+2x+x^2 )").unwrap().to_string(), "(1,x^2)");
        let z: GroupDescriptor = "Z5*Z3*Z3".parse().unwrap();
        let h = z.parse_element("(2,2,1)").unwrap();
        assert_eq!(h.coords()[0], Component::Cyclic { modulus: 5, value: 2 });
        assert_eq!(h.to_string(), "(2,2,1)");

        for bad in [
            "(0)", "(0,0,0)", "0,0", "(x,0)", "(0,x^3)", "(0,3x)", "(2,0)", "(0,x^)", "(0,)",
        ] {
            assert!(d.parse_element(bad).is_err(), "{bad}");
        }
        assert!(z.parse_element("(5,0,0)").is_err());
    }

    #[test]
    fn descriptor_parsing() {
        let d: GroupDescriptor = "Z5*Z3*Z3".parse().unwrap();
        assert_eq!(d.order(), 45);
        assert_eq!(d.to_string(), "Z5*Z3*Z3");
        assert_eq!("Z7".parse::<GroupDescriptor>().unwrap().order(), 7);
        for bad in ["", "GF8", "Z", "Z0", "GF4*", "GF4**GF27", "Q3"] {
            assert!(bad.parse::<GroupDescriptor>().is_err(), "{bad}");
        }
    }

    #[test]
    fn enumeration() {
        let z3: GroupDescriptor = "Z3".parse().unwrap();
        let e: Vec<String> = z3.enumerate().iter().map(|g| g.to_string()).collect();
        assert_eq!(e, ["(0)", "(1)", "(2)"]);

        for (text, order) in [("GF4*GF27", 108), ("Z5*Z3*Z3", 45)] {
            let d: GroupDescriptor = text.parse().unwrap();
            let all = d.enumerate();
            assert_eq!(all.len(), order);
            assert!(all[0].is_identity());
            for (i, g) in all.iter().enumerate() {
                assert_eq!(d.index_of(g).unwrap(), i);
            }
            let mut sorted = all.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), order);
        }
    }
}
