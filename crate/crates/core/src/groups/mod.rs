//! Supported group families, their normal forms and word arithmetic.

mod table;
mod words;

pub use table::FiniteTable;
pub use words::{split_top_level, FREE_LETTERS, FREE_PRODUCT_LETTERS};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashSet;

use crate::error::{Error, Result};

/// One syllable `x_factor^exponent` of a free-product word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub factor: u32,
    pub exponent: u32,
}

/// Canonical normal form of a group element. Equality is structural.
///
/// Free-group letters are `±(i+1)` for generator `i`; negative means inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Cyclic(u32),
    FreeProduct(Vec<Syllable>),
    Free(Vec<i32>),
    Table(u32),
    Tuple(Vec<GroupElement>),
}

#[derive(Debug, PartialEq, Eq, Hash)]
enum Repr {
    Cyclic(u32),
    FreeProduct(Vec<u32>),
    Free(u32),
    Table(FiniteTable),
    Product(Vec<GroupSpec>),
}

/// Shape of a group spec, for callers that branch on the family.
#[derive(Debug, Clone, Copy)]
pub enum GroupKind<'a> {
    Cyclic(u32),
    FreeProduct(&'a [u32]),
    Free(u32),
    Table(&'a FiniteTable),
    Product(&'a [GroupSpec]),
}

/// Description of a supported group. Cheap to clone and share.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec(Arc<Repr>);

impl GroupSpec {
    /// ℤ_m with m ≥ 2.
    pub fn cyclic(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidSpec(format!("cyclic order {m} must be at least 2")));
        }
        Ok(Self(Arc::new(Repr::Cyclic(m))))
    }

    /// Free product of finite cyclic groups with the given orders.
    pub fn free_product(orders: Vec<u32>) -> Result<Self> {
        if orders.len() < 2 || orders.len() > FREE_PRODUCT_LETTERS.len() {
            return Err(Error::InvalidSpec(format!(
                "free product needs 2..={} factors, got {}",
                FREE_PRODUCT_LETTERS.len(),
                orders.len()
            )));
        }
        if let Some(m) = orders.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidSpec(format!("cyclic order {m} must be at least 2")));
        }
        Ok(Self(Arc::new(Repr::FreeProduct(orders))))
    }

    /// Free group of rank k ≥ 1.
    pub fn free(rank: u32) -> Result<Self> {
        if rank == 0 || rank as usize > FREE_LETTERS.len() {
            return Err(Error::InvalidSpec(format!(
                "free group rank {rank} outside 1..={}",
                FREE_LETTERS.len()
            )));
        }
        Ok(Self(Arc::new(Repr::Free(rank))))
    }

    pub fn table(table: FiniteTable) -> Self {
        Self(Arc::new(Repr::Table(table)))
    }

    /// Direct product. Nested products are flattened, so `(A×B)×C` equals `A×B×C`.
    pub fn product(factors: Vec<GroupSpec>) -> Result<Self> {
        let mut flat = Vec::new();
        for f in factors {
            match &*f.0 {
                Repr::Product(inner) => flat.extend(inner.iter().cloned()),
                _ => flat.push(f),
            }
        }
        match flat.len() {
            0 => Err(Error::InvalidSpec("direct product of no factors".to_string())),
            1 => Ok(flat.pop().unwrap()),
            _ => Ok(Self(Arc::new(Repr::Product(flat)))),
        }
    }

    pub fn kind(&self) -> GroupKind<'_> {
        match &*self.0 {
            Repr::Cyclic(m) => GroupKind::Cyclic(*m),
            Repr::FreeProduct(o) => GroupKind::FreeProduct(o),
            Repr::Free(k) => GroupKind::Free(*k),
            Repr::Table(t) => GroupKind::Table(t),
            Repr::Product(f) => GroupKind::Product(f),
        }
    }

    /// Factors of a direct product; a non-product spec is its own single factor.
    pub fn factors(&self) -> Vec<GroupSpec> {
        match &*self.0 {
            Repr::Product(f) => f.clone(),
            _ => vec![self.clone()],
        }
    }

    /// Order of the group, if finite.
    pub fn order(&self) -> Option<u64> {
        match &*self.0 {
            Repr::Cyclic(m) => Some(*m as u64),
            Repr::Table(t) => Some(t.order() as u64),
            Repr::Product(f) => f.iter().try_fold(1u64, |acc, g| g.order().map(|o| acc * o)),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn identity(&self) -> GroupElement {
        match &*self.0 {
            Repr::Cyclic(_) => GroupElement::Cyclic(0),
            Repr::FreeProduct(_) => GroupElement::FreeProduct(Vec::new()),
            Repr::Free(_) => GroupElement::Free(Vec::new()),
            Repr::Table(t) => GroupElement::Table(t.identity()),
            Repr::Product(f) => GroupElement::Tuple(f.iter().map(|g| g.identity()).collect()),
        }
    }

    /// Whether `a` is a valid normal form for this group.
    pub fn contains(&self, a: &GroupElement) -> bool {
        match (&*self.0, a) {
            (Repr::Cyclic(m), GroupElement::Cyclic(x)) => x < m,
            (Repr::FreeProduct(orders), GroupElement::FreeProduct(w)) => {
                w.iter().all(|s| {
                    (s.factor as usize) < orders.len()
                        && s.exponent > 0
                        && s.exponent < orders[s.factor as usize]
                }) && w.windows(2).all(|p| p[0].factor != p[1].factor)
            }
            (Repr::Free(k), GroupElement::Free(w)) => {
                w.iter().all(|&l| l != 0 && l.unsigned_abs() <= *k)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            (Repr::Table(t), GroupElement::Table(x)) => (*x as usize) < t.order(),
            (Repr::Product(f), GroupElement::Tuple(xs)) => {
                f.len() == xs.len() && f.iter().zip(xs).all(|(g, x)| g.contains(x))
            }
            _ => false,
        }
    }

    pub(crate) fn check(&self, a: &GroupElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::ElementMismatch { element: format!("{a:?}"), group: self.to_string() })
        }
    }

    /// Normal form of `ab`.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    /// Normal form of `a⁻¹`.
    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.inv(a))
    }

    /// Product of elements already known to belong to this group.
    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (&*self.0, a, b) {
            (Repr::Cyclic(m), GroupElement::Cyclic(x), GroupElement::Cyclic(y)) => {
                GroupElement::Cyclic((x + y) % m)
            }
            (Repr::FreeProduct(orders), GroupElement::FreeProduct(x), GroupElement::FreeProduct(y)) => {
                let mut out = Vec::with_capacity(x.len() + y.len());
                out.extend_from_slice(x);
                for &s in y {
                    push_syllable(orders, &mut out, s);
                }
                GroupElement::FreeProduct(out)
            }
            (Repr::Free(_), GroupElement::Free(x), GroupElement::Free(y)) => {
                let mut out = Vec::with_capacity(x.len() + y.len());
                out.extend_from_slice(x);
                for &l in y {
                    push_letter(&mut out, l);
                }
                GroupElement::Free(out)
            }
            (Repr::Table(t), GroupElement::Table(x), GroupElement::Table(y)) => {
                GroupElement::Table(t.mul(*x, *y))
            }
            (Repr::Product(f), GroupElement::Tuple(xs), GroupElement::Tuple(ys)) => GroupElement::Tuple(
                f.iter().zip(xs.iter().zip(ys)).map(|(g, (x, y))| g.mul(x, y)).collect(),
            ),
            _ => panic!("element does not match group {self}"),
        }
    }

    /// Inverse of an element already known to belong to this group.
    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        match (&*self.0, a) {
            (Repr::Cyclic(m), GroupElement::Cyclic(x)) => GroupElement::Cyclic((m - x) % m),
            (Repr::FreeProduct(orders), GroupElement::FreeProduct(w)) => GroupElement::FreeProduct(
                w.iter()
                    .rev()
                    .map(|s| Syllable { factor: s.factor, exponent: orders[s.factor as usize] - s.exponent })
                    .collect(),
            ),
            (Repr::Free(_), GroupElement::Free(w)) => {
                GroupElement::Free(w.iter().rev().map(|l| -l).collect())
            }
            (Repr::Table(t), GroupElement::Table(x)) => GroupElement::Table(t.inv(*x)),
            (Repr::Product(f), GroupElement::Tuple(xs)) => {
                GroupElement::Tuple(f.iter().zip(xs).map(|(g, x)| g.inv(x)).collect())
            }
            _ => panic!("element does not match group {self}"),
        }
    }

    /// `x^e` in factor `factor` of a free product, or `t^e` in a cyclic group.
    pub fn power(&self, factor: usize, exponent: i64) -> Result<GroupElement> {
        match &*self.0 {
            Repr::Cyclic(m) if factor == 0 => {
                Ok(GroupElement::Cyclic(exponent.rem_euclid(*m as i64) as u32))
            }
            Repr::FreeProduct(orders) if factor < orders.len() => {
                let e = exponent.rem_euclid(orders[factor] as i64) as u32;
                Ok(GroupElement::FreeProduct(if e == 0 {
                    Vec::new()
                } else {
                    vec![Syllable { factor: factor as u32, exponent: e }]
                }))
            }
            Repr::Free(k) if factor < *k as usize => {
                let l = factor as i32 + 1;
                let letter = if exponent < 0 { -l } else { l };
                Ok(GroupElement::Free(vec![letter; exponent.unsigned_abs() as usize]))
            }
            _ => Err(Error::InvalidArgument(format!("no generator {factor} in {self}"))),
        }
    }

    /// The generating set defining the word metric: all non-identity powers of each
    /// cyclic factor, free generators and their inverses, all non-identity table elements,
    /// and for products the union of factor generators placed in their coordinate.
    pub fn generators(&self) -> Vec<GroupElement> {
        match &*self.0 {
            Repr::Cyclic(m) => (1..*m).map(GroupElement::Cyclic).collect(),
            Repr::FreeProduct(orders) => orders
                .iter()
                .enumerate()
                .flat_map(|(f, &m)| {
                    (1..m).map(move |e| {
                        GroupElement::FreeProduct(vec![Syllable { factor: f as u32, exponent: e }])
                    })
                })
                .collect(),
            Repr::Free(k) => (1..=*k as i32)
                .flat_map(|l| [GroupElement::Free(vec![l]), GroupElement::Free(vec![-l])])
                .collect(),
            Repr::Table(t) => (0..t.order() as u32)
                .filter(|&x| x != t.identity())
                .map(GroupElement::Table)
                .collect(),
            Repr::Product(f) => {
                let id: Vec<_> = f.iter().map(|g| g.identity()).collect();
                let mut gens = Vec::new();
                for (i, g) in f.iter().enumerate() {
                    for x in g.generators() {
                        let mut tuple = id.clone();
                        tuple[i] = x;
                        gens.push(GroupElement::Tuple(tuple));
                    }
                }
                gens
            }
        }
    }

    /// Word length of `a` in the generating set of [`GroupSpec::generators`].
    pub fn word_length(&self, a: &GroupElement) -> usize {
        match (&*self.0, a) {
            (Repr::FreeProduct(_), GroupElement::FreeProduct(w)) => w.len(),
            (Repr::Free(_), GroupElement::Free(w)) => w.len(),
            (Repr::Product(f), GroupElement::Tuple(xs)) => {
                f.iter().zip(xs).map(|(g, x)| g.word_length(x)).sum()
            }
            _ => usize::from(*a != self.identity()),
        }
    }

    /// All elements within word distance `radius` of the identity, ordered by
    /// distance and then by normal form.
    pub fn ball(&self, radius: usize) -> Vec<GroupElement> {
        let gens = self.generators();
        let id = self.identity();
        let mut seen: HashSet<GroupElement> = HashSet::new();
        seen.insert(id.clone());
        let mut layers = vec![vec![id]];
        for _ in 0..radius {
            let mut next = BTreeSet::new();
            for x in layers.last().unwrap() {
                for s in &gens {
                    let y = self.mul(x, s);
                    if !seen.contains(&y) {
                        next.insert(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            seen.extend(next.iter().cloned());
            layers.push(next.into_iter().collect());
        }
        layers.into_iter().flatten().collect()
    }

    /// Every element of a finite group, in ball order.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        let order = self
            .order()
            .ok_or_else(|| Error::Unsupported(format!("{self} is infinite")))?;
        let all = self.ball(order as usize);
        debug_assert_eq!(all.len() as u64, order);
        Ok(all)
    }

    /// A cyclically reduced conjugate of `a` (free products and free groups only).
    pub fn cyclic_reduce(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        match (&*self.0, a) {
            (Repr::FreeProduct(orders), GroupElement::FreeProduct(w)) => {
                Ok(GroupElement::FreeProduct(reduce_syllables(orders, w)))
            }
            (Repr::Free(_), GroupElement::Free(w)) => Ok(GroupElement::Free(reduce_letters(w))),
            _ => Err(Error::Unsupported(format!("cyclic reduction in {self}"))),
        }
    }

    /// A canonical representative of the conjugacy class of `a`:
    /// two elements are conjugate exactly when their keys are equal.
    pub fn conjugacy_key(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.class_key(a))
    }

    pub(crate) fn class_key(&self, a: &GroupElement) -> GroupElement {
        match (&*self.0, a) {
            (Repr::Cyclic(_), _) => a.clone(),
            (Repr::FreeProduct(orders), GroupElement::FreeProduct(w)) => {
                GroupElement::FreeProduct(least_rotation(&reduce_syllables(orders, w)))
            }
            (Repr::Free(_), GroupElement::Free(w)) => {
                GroupElement::Free(least_rotation(&reduce_letters(w)))
            }
            (Repr::Table(t), GroupElement::Table(x)) => GroupElement::Table(
                (0..t.order() as u32)
                    .map(|h| t.mul(t.mul(h, *x), t.inv(h)))
                    .min()
                    .unwrap(),
            ),
            (Repr::Product(f), GroupElement::Tuple(xs)) => {
                GroupElement::Tuple(f.iter().zip(xs).map(|(g, x)| g.class_key(x)).collect())
            }
            _ => panic!("element does not match group {self}"),
        }
    }

    /// Whether `a` and `b` are conjugate.
    pub fn is_conjugate(&self, a: &GroupElement, b: &GroupElement) -> Result<bool> {
        Ok(self.conjugacy_key(a)? == self.conjugacy_key(b)?)
    }

    /// The elements of `support` conjugate to `g`, in their original order.
    pub fn conjugacy_intersection<'a, I>(&self, g: &GroupElement, support: I) -> Result<Vec<GroupElement>>
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        let key = self.conjugacy_key(g)?;
        let mut out = Vec::new();
        for h in support {
            if self.conjugacy_key(h)? == key {
                out.push(h.clone());
            }
        }
        Ok(out)
    }

    /// Checks that `elements` is closed under products and inverses, returning it deduplicated.
    pub fn check_subgroup(&self, elements: &[GroupElement]) -> Result<Vec<GroupElement>> {
        let mut set = BTreeMap::new();
        for x in elements {
            self.check(x)?;
            set.insert(x.clone(), ());
        }
        if set.is_empty() {
            return Err(Error::NotASubgroup("empty list".to_string()));
        }
        for x in set.keys() {
            if !set.contains_key(&self.inv(x)) {
                return Err(Error::NotASubgroup(format!("missing inverse of {}", self.format(x))));
            }
            for y in set.keys() {
                let xy = self.mul(x, y);
                if !set.contains_key(&xy) {
                    return Err(Error::NotASubgroup(format!("missing product {}", self.format(&xy))));
                }
            }
        }
        Ok(set.into_keys().collect())
    }
}

fn push_syllable(orders: &[u32], out: &mut Vec<Syllable>, s: Syllable) {
    match out.last_mut() {
        Some(last) if last.factor == s.factor => {
            let e = (last.exponent + s.exponent) % orders[s.factor as usize];
            if e == 0 {
                out.pop();
            } else {
                last.exponent = e;
            }
        }
        _ => out.push(s),
    }
}

fn push_letter(out: &mut Vec<i32>, l: i32) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

fn reduce_syllables(orders: &[u32], w: &[Syllable]) -> Vec<Syllable> {
    let mut w = w.to_vec();
    let mut start = 0;
    // Conjugating by the first syllable folds it into the last one.
    while w.len() - start >= 2 && w[start].factor == w[w.len() - 1].factor {
        let first = w[start];
        start += 1;
        let last = w.pop().unwrap();
        let e = (first.exponent + last.exponent) % orders[first.factor as usize];
        if e != 0 {
            w.push(Syllable { factor: first.factor, exponent: e });
        }
    }
    w.drain(..start);
    w
}

fn reduce_letters(w: &[i32]) -> Vec<i32> {
    let (mut i, mut j) = (0, w.len());
    while j - i >= 2 && w[i] == -w[j - 1] {
        i += 1;
        j -= 1;
    }
    w[i..j].to_vec()
}

fn least_rotation<T: Ord + Clone>(w: &[T]) -> Vec<T> {
    let n = w.len();
    (0..n)
        .map(|k| w[k..].iter().chain(&w[..k]))
        .min_by(|a, b| a.clone().cmp(b.clone()))
        .map(|it| it.cloned().collect())
        .unwrap_or_default()
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Repr::Cyclic(m) => write!(f, "Z{m}"),
            Repr::FreeProduct(orders) => {
                for (i, m) in orders.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "Z{m}")?;
                }
                Ok(())
            }
            Repr::Free(k) => write!(f, "F{k}"),
            Repr::Table(t) => match t.name() {
                Some(name) => f.write_str(name),
                None => write!(f, "T{}", t.order()),
            },
            Repr::Product(factors) => {
                for (i, g) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2z3() -> GroupSpec {
        GroupSpec::free_product(vec![2, 3]).unwrap()
    }

    #[test]
    fn identities() {
        assert_eq!(z2z3().identity(), GroupElement::FreeProduct(vec![]));
        assert_eq!(GroupSpec::free(2).unwrap().identity(), GroupElement::Free(vec![]));
        let p = GroupSpec::product(vec![z2z3(), GroupSpec::cyclic(4).unwrap()]).unwrap();
        assert_eq!(
            p.identity(),
            GroupElement::Tuple(vec![GroupElement::FreeProduct(vec![]), GroupElement::Cyclic(0)])
        );
    }

    #[test]
    fn syllable_merging() {
        let g = z2z3();
        let s = g.parse_word("s").unwrap();
        assert_eq!(g.multiply(&s, &s).unwrap(), g.identity());
        let st = g.parse_word("st").unwrap();
        let tt = g.parse_word("tt").unwrap();
        assert_eq!(g.multiply(&st, &tt).unwrap(), s);
        assert_eq!(g.format(&g.inverse(&st).unwrap()), "tts");
    }

    #[test]
    fn free_reduction() {
        let g = GroupSpec::free(2).unwrap();
        let x = g.parse_word("aB").unwrap();
        let y = g.parse_word("ba").unwrap();
        assert_eq!(g.format(&g.multiply(&x, &y).unwrap()), "aa");
        assert_eq!(g.format(&g.inverse(&g.parse_word("ab").unwrap()).unwrap()), "BA");
    }

    #[test]
    fn cyclic_reduction() {
        let g = z2z3();
        let sts = g.parse_word("sts").unwrap();
        assert_eq!(g.format(&g.cyclic_reduce(&sts).unwrap()), "t");
        let f = GroupSpec::free(2).unwrap();
        assert_eq!(f.format(&f.cyclic_reduce(&f.parse_word("abA").unwrap()).unwrap()), "b");
        assert!(GroupSpec::cyclic(3).unwrap().cyclic_reduce(&GroupElement::Cyclic(1)).is_err());
    }

    #[test]
    fn conjugacy() {
        let g = z2z3();
        let w = |s| g.parse_word(s).unwrap();
        assert!(g.is_conjugate(&w("st"), &w("ts")).unwrap());
        assert!(g.is_conjugate(&w("e"), &w("e")).unwrap());
        let h = GroupSpec::free_product(vec![5, 3]).unwrap();
        assert!(!h.is_conjugate(&h.parse_word("s").unwrap(), &h.parse_word("ss").unwrap()).unwrap());
    }

    #[test]
    fn balls() {
        let g = z2z3();
        let b1: Vec<_> = g.ball(1).iter().map(|x| g.format(x)).collect();
        assert_eq!(b1, ["e", "s", "t", "tt"]);
        let f = GroupSpec::free(2).unwrap();
        let sizes: Vec<_> = (0..4).map(|r| f.ball(r).len()).collect();
        assert_eq!(sizes, [1, 5, 17, 53]);
        assert_eq!(GroupSpec::cyclic(5).unwrap().ball(0).len(), 1);
    }

    #[test]
    fn conjugacy_intersections() {
        let g = z2z3();
        let b1 = g.ball(1);
        let s = g.parse_word("s").unwrap();
        assert_eq!(g.conjugacy_intersection(&s, &b1).unwrap(), vec![s]);
        let st = g.parse_word("st").unwrap();
        let hits: Vec<_> = g
            .conjugacy_intersection(&st, &g.ball(2))
            .unwrap()
            .iter()
            .map(|x| g.format(x))
            .collect();
        assert_eq!(hits, ["st", "ts"]);
    }

    #[test]
    fn product_flattening() {
        let a = GroupSpec::free(2).unwrap();
        let c = GroupSpec::cyclic(2).unwrap();
        let ab = GroupSpec::product(vec![a.clone(), a.clone()]).unwrap();
        let flat = GroupSpec::product(vec![ab, c.clone()]).unwrap();
        assert_eq!(flat, GroupSpec::product(vec![a.clone(), a, c]).unwrap());
        assert_eq!(flat.to_string(), "F2xF2xZ2");
    }

    #[test]
    fn subgroups() {
        let g = z2z3();
        let t = g.power(1, 1).unwrap();
        let h = vec![g.identity(), t.clone(), g.mul(&t, &t)];
        assert_eq!(g.check_subgroup(&h).unwrap().len(), 3);
        assert!(matches!(g.check_subgroup(&h[..2]), Err(Error::NotASubgroup(_))));
    }

    #[test]
    fn table_validation() {
        let labels = |n: usize| (0..n).map(|i| alloc::format!("g{i}")).collect::<Vec<_>>();
        assert!(FiniteTable::new(labels(2), vec![vec![0, 1], vec![1, 1]], 0).is_err());
        assert!(FiniteTable::new(labels(25), vec![], 0).is_err());
        let z3 = FiniteTable::cyclic(3, 't').unwrap();
        assert_eq!(z3.labels(), ["e", "t", "tt"]);
        let g = GroupSpec::table(z3);
        assert_eq!(g.order(), Some(3));
        assert_eq!(g.elements().unwrap().len(), 3);
    }
}
