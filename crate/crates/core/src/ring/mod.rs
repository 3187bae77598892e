//! Exact arithmetic in the rational group ring ℚG.

mod matrix;
mod trace;

pub use matrix::RingMatrix;
pub use trace::TraceFunctional;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupSpec};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A finitely supported function `G → ℚ`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    spec: GroupSpec,
    terms: BTreeMap<GroupElement, Rational>,
}

impl RingElement {
    pub fn zero(spec: &GroupSpec) -> Self {
        Self { spec: spec.clone(), terms: BTreeMap::new() }
    }

    pub fn one(spec: &GroupSpec) -> Self {
        Self::delta(spec, spec.identity())
    }

    /// The point mass at `g`. Panics if `g` is not in `spec`; see [`RingElement::from_terms`].
    pub fn delta(spec: &GroupSpec, g: GroupElement) -> Self {
        assert!(spec.contains(&g), "{g:?} is not an element of {spec}");
        Self::from_trusted(spec, [(g, Rational::one())])
    }

    /// Sum of `c·g` over the given pairs, merging repeated elements.
    pub fn from_terms<I>(spec: &GroupSpec, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GroupElement, Rational)>,
    {
        let mut out = Self::zero(spec);
        for (g, c) in terms {
            spec.check(&g)?;
            out.add_term(g, c);
        }
        Ok(out)
    }

    pub(crate) fn from_trusted<I>(spec: &GroupSpec, terms: I) -> Self
    where
        I: IntoIterator<Item = (GroupElement, Rational)>,
    {
        let mut out = Self::zero(spec);
        for (g, c) in terms {
            out.add_term(g, c);
        }
        out
    }

    /// Parses a signed sum of words with optional integer multiplicities,
    /// e.g. `"e - s"` or `"2e + t - tt"`. Words must not use `^-k` here.
    pub fn parse_sum(spec: &GroupSpec, input: &str) -> Result<Self> {
        let mut out = Self::zero(spec);
        let cleaned: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let mut sign = 1i64;
        let mut token = String::new();
        let flush = |token: &mut String, sign: i64, out: &mut Self| -> Result<()> {
            if token.is_empty() {
                return Ok(());
            }
            let digits = token.chars().take_while(|c| c.is_ascii_digit()).count();
            let mult: i64 = if digits == 0 { 1 } else { token[..digits].parse().unwrap() };
            let word = &token[digits..];
            let g = if word.is_empty() { spec.identity() } else { spec.parse_word(word)? };
            out.add_term(g, Rational::from_integer(BigInt::from(sign * mult)));
            token.clear();
            Ok(())
        };
        for c in cleaned.chars() {
            match c {
                '+' | '-' => {
                    flush(&mut token, sign, &mut out)?;
                    sign = if c == '-' { -1 } else { 1 };
                }
                _ => token.push(c),
            }
        }
        flush(&mut token, sign, &mut out)?;
        Ok(out)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at `g` (zero when absent).
    pub fn coeff(&self, g: &GroupElement) -> Rational {
        self.terms.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    /// Support and coefficients in normal-form order.
    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.terms.keys()
    }

    pub(crate) fn add_term(&mut self, g: GroupElement, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn same_spec(&self, other: &Self) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch { left: self.spec.to_string(), right: other.spec.to_string() })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.spec);
        }
        Self {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(g, x)| (g.clone(), x * c)).collect(),
        }
    }

    /// Convolution: `(ab)(g) = Σ_h a(h)·b(h⁻¹g)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        let mut out = Self::zero(&self.spec);
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out.add_term(self.spec.mul(g, h), a * b);
            }
        }
        Ok(out)
    }

    /// The involution `a*(g) = a(g⁻¹)`.
    pub fn star(&self) -> Self {
        Self {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(g, c)| (self.spec.inv(g), c.clone())).collect(),
        }
    }

    /// Averaging projection `(1/|H|) Σ_{h∈H} h` of a finite subgroup.
    pub fn averaging_projection(spec: &GroupSpec, subgroup: &[GroupElement]) -> Result<Self> {
        let h = spec.check_subgroup(subgroup)?;
        let c = ratio(1, h.len() as i64);
        Ok(Self::from_trusted(spec, h.into_iter().map(|g| (g, c.clone()))))
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c.abs())
    }

    /// Largest word length in the support (0 for the zero element).
    pub fn propagation(&self) -> usize {
        self.terms.keys().map(|g| self.spec.word_length(g)).max().unwrap_or(0)
    }

    /// Moves this element into a direct product containing `spec` as the factors
    /// `offset..offset + spec.factors().len()`.
    pub(crate) fn embed(&self, target: &GroupSpec, offset: usize) -> Self {
        let factors = target.factors();
        let width = self.spec.factors().len();
        let id: Vec<GroupElement> = factors.iter().map(|g| g.identity()).collect();
        Self::from_trusted(
            target,
            self.terms.iter().map(|(g, c)| {
                let mut tuple = id.clone();
                match g {
                    GroupElement::Tuple(xs) if width > 1 => {
                        tuple[offset..offset + width].clone_from_slice(xs)
                    }
                    _ => tuple[offset] = g.clone(),
                }
                (GroupElement::Tuple(tuple), c.clone())
            }),
        )
    }

    /// The element `Σ a(g)b(h)·(g,h)` over `target = spec(a) × spec(b)`.
    pub fn tensor(&self, other: &Self, target: &GroupSpec) -> Result<Self> {
        let expected = GroupSpec::product(alloc::vec![self.spec.clone(), other.spec.clone()])?;
        if &expected != target {
            return Err(Error::SpecMismatch { left: expected.to_string(), right: target.to_string() });
        }
        let width = self.spec.factors().len();
        let a = self.embed(target, 0);
        let b = other.embed(target, width);
        a.convolve(&b)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $impl:ident) => {
        impl $tr<&RingElement> for &RingElement {
            type Output = RingElement;
            /// Panics when the operands live over different groups.
            fn $method(self, rhs: &RingElement) -> RingElement {
                self.$impl(rhs).expect("ring operands over different groups")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, convolve);

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement::neg(self)
    }
}

/// Prints `c·w` terms joined by `+`, e.g. `1/2·e + 1/2·s`.
impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            let word = self.spec.format(g);
            match (i, c.is_negative()) {
                (0, _) => write!(f, "{c}·{word}")?,
                (_, true) => write!(f, " - {}·{word}", -c)?,
                (_, false) => write!(f, " + {c}·{word}")?,
            }
        }
        Ok(())
    }
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or an integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse { input: s.into(), reason: "expected p/q".into() };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn z(m: u32, n: u32) -> GroupSpec {
        GroupSpec::free_product(vec![m, n]).unwrap()
    }

    fn p_of(spec: &GroupSpec, factor: usize, m: i64) -> RingElement {
        let h: Vec<_> = (0..m).map(|i| spec.power(factor, i).unwrap()).collect();
        RingElement::averaging_projection(spec, &h).unwrap()
    }

    #[test]
    fn additive_basics() {
        let g = z(2, 3);
        let a = RingElement::parse_sum(&g, "e - s").unwrap();
        let s = RingElement::parse_sum(&g, "s").unwrap();
        assert_eq!(&a + &s, RingElement::one(&g));
        assert!((&a + &-&a).is_zero());
    }

    #[test]
    fn averaging_projection_is_scaled_sum() {
        for m in 2..=6 {
            let g = z(m, 3);
            let sum = RingElement::from_terms(
                &g,
                (0..m as i64).map(|i| (g.power(0, i).unwrap(), Rational::one())),
            )
            .unwrap();
            let p = p_of(&g, 0, m as i64);
            assert_eq!(sum.scale(&ratio(1, m as i64)), p);
            assert_eq!(&p * &p, p);
            assert_eq!(p.star(), p);
            let one_minus_s = RingElement::parse_sum(&g, "e - s").unwrap();
            assert!((&one_minus_s * &sum).is_zero());
        }
    }

    #[test]
    fn star_examples() {
        let g = z(3, 4);
        let a = RingElement::parse_sum(&g, "e - s").unwrap();
        assert_eq!(a.star(), RingElement::parse_sum(&g, "e - ss").unwrap());
        let h = z(2, 3);
        let st = RingElement::delta(&h, h.parse_word("st").unwrap());
        assert_eq!(st.star(), RingElement::delta(&h, h.parse_word("tts").unwrap()));
    }

    #[test]
    fn point_masses_multiply() {
        let g = z(2, 3);
        let x = g.parse_word("st").unwrap();
        let y = g.parse_word("ts").unwrap();
        let dx = RingElement::delta(&g, x.clone());
        let dy = RingElement::delta(&g, y.clone());
        assert_eq!(&dx * &dy, RingElement::delta(&g, g.mul(&x, &y)));
    }

    #[test]
    fn spec_mismatch_is_an_error() {
        let a = RingElement::one(&z(2, 3));
        let b = RingElement::one(&z(3, 3));
        assert!(matches!(a.convolve(&b), Err(Error::SpecMismatch { .. })));
    }

    #[test]
    fn rationals_round_trip() {
        let r = ratio(-6, 4);
        assert_eq!(rational_to_string(&r), "-3/2");
        assert_eq!(parse_rational("-3/2").unwrap(), r);
        assert_eq!(parse_rational("5").unwrap(), ratio(5, 1));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn tensor_of_point_masses() {
        let a = GroupSpec::free(2).unwrap();
        let c = GroupSpec::cyclic(3).unwrap();
        let target = GroupSpec::product(vec![a.clone(), c.clone()]).unwrap();
        let x = RingElement::parse_sum(&a, "e - a").unwrap();
        let y = RingElement::parse_sum(&c, "f").unwrap();
        let t = x.tensor(&y, &target).unwrap();
        assert_eq!(t, RingElement::parse_sum(&target, "(e,f) - (a,f)").unwrap());
    }
}
