//! Text form of group elements.
//!
//! `e` is the identity everywhere. Free-product factors are written `s, t, u, ...`
//! and a syllable `t^2` prints as `tt`. Free generators are `a, b, c, ...` (skipping `e`)
//! with uppercase for inverses. The cyclic generator is `f`. Table elements use their
//! labels, and product elements print as `(x,y,...)`.
//! When parsing, uppercase inverts and `^k` (k may be negative) raises a letter to a power.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{push_letter, push_syllable, GroupElement, GroupSpec, Repr, Syllable};
use crate::error::{Error, Result};

/// Letters for the factors of a free product, in factor order.
pub const FREE_PRODUCT_LETTERS: [char; 8] = ['s', 't', 'u', 'v', 'w', 'x', 'y', 'z'];

/// Letters for free generators, in generator order.
pub const FREE_LETTERS: [char; 25] = [
    'a', 'b', 'c', 'd', 'f', 'g', 'h', 'i', 'j', 'k', 'l', 'm', 'n', 'o', 'p', 'q', 'r', 's', 't',
    'u', 'v', 'w', 'x', 'y', 'z',
];

const CYCLIC_LETTER: char = 'f';

fn parse_err(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse { input: input.to_string(), reason: reason.into() }
}

/// Splits `s` at commas that are not nested inside parentheses.
pub fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// Parses `letter(^int)?` tokens into (letter, signed power) pairs.
fn letter_powers(input: &str) -> Result<Vec<(char, i64)>> {
    let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if !c.is_ascii_alphabetic() {
            return Err(parse_err(input, format!("unexpected character `{c}`")));
        }
        i += 1;
        let mut power = 1i64;
        if chars.get(i) == Some(&'^') {
            i += 1;
            let begin = i;
            if chars.get(i) == Some(&'-') {
                i += 1;
            }
            while chars.get(i).is_some_and(|d| d.is_ascii_digit()) {
                i += 1;
            }
            let digits: String = chars[begin..i].iter().collect();
            power = digits
                .parse()
                .map_err(|_| parse_err(input, format!("bad exponent after `{c}^`")))?;
        }
        let sign = if c.is_ascii_uppercase() { -1 } else { 1 };
        out.push((c.to_ascii_lowercase(), sign * power));
    }
    Ok(out)
}

impl GroupSpec {
    /// Parses a word into its normal form.
    pub fn parse_word(&self, input: &str) -> Result<GroupElement> {
        let word = input.trim();
        if word == "e" || word == "1" {
            if let Repr::Table(t) = &*self.0 {
                if let Some(x) = t.index_of(word) {
                    return Ok(GroupElement::Table(x));
                }
            }
            return Ok(self.identity());
        }
        match &*self.0 {
            Repr::Cyclic(m) => {
                let mut x = 0i64;
                for (c, p) in letter_powers(word)? {
                    if c != CYCLIC_LETTER {
                        return Err(parse_err(input, format!("unknown letter `{c}`")));
                    }
                    x += p;
                }
                Ok(GroupElement::Cyclic(x.rem_euclid(*m as i64) as u32))
            }
            Repr::FreeProduct(orders) => {
                let mut out = Vec::new();
                for (c, p) in letter_powers(word)? {
                    let factor = FREE_PRODUCT_LETTERS[..orders.len()]
                        .iter()
                        .position(|&l| l == c)
                        .ok_or_else(|| parse_err(input, format!("unknown letter `{c}`")))?;
                    let e = p.rem_euclid(orders[factor] as i64) as u32;
                    if e != 0 {
                        push_syllable(orders, &mut out, Syllable { factor: factor as u32, exponent: e });
                    }
                }
                Ok(GroupElement::FreeProduct(out))
            }
            Repr::Free(k) => {
                let mut out = Vec::new();
                for (c, p) in letter_powers(word)? {
                    let g = FREE_LETTERS[..*k as usize]
                        .iter()
                        .position(|&l| l == c)
                        .ok_or_else(|| parse_err(input, format!("unknown letter `{c}`")))?;
                    let letter = (g as i32 + 1) * if p < 0 { -1 } else { 1 };
                    for _ in 0..p.unsigned_abs() {
                        push_letter(&mut out, letter);
                    }
                }
                Ok(GroupElement::Free(out))
            }
            Repr::Table(t) => t
                .index_of(word)
                .map(GroupElement::Table)
                .ok_or_else(|| parse_err(input, "unknown table label")),
            Repr::Product(factors) => {
                let inner = word
                    .strip_prefix('(')
                    .and_then(|w| w.strip_suffix(')'))
                    .ok_or_else(|| parse_err(input, "product elements are written (x,y,...)"))?;
                let parts = split_top_level(inner);
                if parts.len() != factors.len() {
                    return Err(parse_err(
                        input,
                        format!("expected {} components, found {}", factors.len(), parts.len()),
                    ));
                }
                factors
                    .iter()
                    .zip(parts)
                    .map(|(g, p)| g.parse_word(p))
                    .collect::<Result<_>>()
                    .map(GroupElement::Tuple)
            }
        }
    }

    /// Prints the normal form of `a`; the inverse of [`GroupSpec::parse_word`].
    pub fn format(&self, a: &GroupElement) -> String {
        let repeat = |c: char, k: u32| core::iter::repeat(c).take(k as usize).collect::<String>();
        match (&*self.0, a) {
            (Repr::Table(t), GroupElement::Table(x)) => t.label(*x).to_string(),
            (Repr::Product(f), GroupElement::Tuple(xs)) => {
                let inner: Vec<String> = f.iter().zip(xs).map(|(g, x)| g.format(x)).collect();
                format!("({})", inner.join(","))
            }
            _ if *a == self.identity() => "e".to_string(),
            (Repr::Cyclic(_), GroupElement::Cyclic(x)) => repeat(CYCLIC_LETTER, *x),
            (Repr::FreeProduct(_), GroupElement::FreeProduct(w)) => w
                .iter()
                .map(|s| repeat(FREE_PRODUCT_LETTERS[s.factor as usize], s.exponent))
                .collect(),
            (Repr::Free(_), GroupElement::Free(w)) => w
                .iter()
                .map(|&l| {
                    let c = FREE_LETTERS[l.unsigned_abs() as usize - 1];
                    if l < 0 {
                        c.to_ascii_uppercase()
                    } else {
                        c
                    }
                })
                .collect(),
            _ => format!("{a:?}"),
        }
    }
}
