//! K-class representatives of higher Kazhdan projections and their trace pairings.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupKind, GroupSpec};
use crate::ring::{Rational, RingElement, RingMatrix, TraceFunctional};

/// A formal integer combination `Σ cᵢ [Pᵢ]` of projections representing `[p_degree]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KClassExpr {
    pub spec: GroupSpec,
    pub degree: usize,
    pub terms: Vec<(i64, RingMatrix)>,
    /// Set when the class is zero for a structural reason.
    pub note: Option<String>,
}

impl KClassExpr {
    fn vanishing(spec: &GroupSpec, degree: usize, note: impl Into<String>) -> Self {
        Self { spec: spec.clone(), degree, terms: Vec::new(), note: Some(note.into()) }
    }

    /// Whether every representative is an exact self-adjoint idempotent.
    pub fn representatives_are_projections(&self) -> bool {
        self.terms.iter().all(|(_, p)| p.is_idempotent() && p.is_self_adjoint())
    }

    /// `Σ cᵢ τ_⟨g⟩(Pᵢ)`.
    pub fn pair(&self, g: &GroupElement) -> Result<Rational> {
        let t = TraceFunctional::Delocalised(g.clone());
        self.spec.check(g)?;
        self.terms.iter().try_fold(Rational::zero(), |acc, (c, p)| {
            Ok(acc + p.trace(&t)? * Rational::from_integer((*c).into()))
        })
    }
}

fn cyclic_projection(spec: &GroupSpec, factor: usize, m: u32) -> RingMatrix {
    let h: Vec<_> = (0..m as i64).map(|i| spec.power(factor, i).unwrap()).collect();
    RingMatrix::scalar(RingElement::averaging_projection(spec, &h).unwrap())
}

/// `[p₁] = [1] - [p] - [q]` for ℤ_m ∗ ℤ_n with `p, q` the averaging projections of the factors.
/// ℤ₂ ∗ ℤ₂ is amenable and has no spectral gap, so it is rejected.
pub fn kazhdan_class_free_product(m: u32, n: u32) -> Result<KClassExpr> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidArgument(format!("orders ({m}, {n}) must both be at least 2")));
    }
    if (m, n) == (2, 2) {
        return Err(Error::Unsupported(
            "Z2*Z2 is amenable: the first Laplacian has no spectral gap".to_string(),
        ));
    }
    let spec = GroupSpec::free_product(vec![m, n])?;
    Ok(KClassExpr {
        terms: vec![
            (1, RingMatrix::identity(&spec, 1)),
            (-1, cyclic_projection(&spec, 0, m)),
            (-1, cyclic_projection(&spec, 1, n)),
        ],
        spec,
        degree: 1,
        note: None,
    })
}

/// `[p₁] = (k-1)[1]` for the free group of rank `k`. For `k = 1` the class is zero.
pub fn kazhdan_class_free_group(k: u32) -> Result<KClassExpr> {
    let spec = GroupSpec::free(k)?;
    if k == 1 {
        return Ok(KClassExpr::vanishing(&spec, 1, "Z is amenable: p_1 = 0"));
    }
    Ok(KClassExpr {
        terms: vec![(k as i64 - 1, RingMatrix::identity(&spec, 1))],
        spec,
        degree: 1,
        note: None,
    })
}

/// `[p_n]` for `F₂ⁿ × F` with `F` finite: the single projection `1 ⊗ … ⊗ 1 ⊗ (1/|F|) Σ_{f∈F} f`.
pub fn kazhdan_class_product(n_free: usize, finite: &GroupSpec) -> Result<KClassExpr> {
    if !finite.is_finite() {
        return Err(Error::InvalidArgument(format!("{finite} is not finite")));
    }
    let mut factors = vec![GroupSpec::free(2)?; n_free];
    factors.push(finite.clone());
    let spec = GroupSpec::product(factors)?;
    let avg = RingElement::averaging_projection(finite, &finite.elements()?)?;
    let width = finite.factors().len();
    let p = if n_free == 0 { avg } else { avg.embed(&spec, spec.factors().len() - width) };
    Ok(KClassExpr { spec, degree: n_free, terms: vec![(1, RingMatrix::scalar(p))], note: None })
}

/// `β_{n,⟨g⟩} = τ_⟨g⟩([p_n])`.
pub fn betti(expr: &KClassExpr, g: &GroupElement) -> Result<Rational> {
    expr.pair(g)
}

/// How a Betti value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    KClass,
    HeatExact,
    HeatNumeric,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::KClass => "kclass",
            Method::HeatExact => "heat-exact",
            Method::HeatNumeric => "heat-numeric",
        }
    }
}

/// Delocalised Betti numbers of one group in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiReport {
    pub group: GroupSpec,
    pub degree: usize,
    pub method: Method,
    pub entries: Vec<(GroupElement, Rational)>,
    pub note: Option<String>,
}

/// The K-class of `p_degree` for any supported group, or a vanishing class with its reason.
pub fn kazhdan_class(spec: &GroupSpec, degree: usize) -> Result<KClassExpr> {
    let unsupported = || Error::Unsupported(format!("no K-class representative known for {spec}"));
    match spec.kind() {
        GroupKind::FreeProduct(&[m, n]) => {
            let class = kazhdan_class_free_product(m, n)?;
            match degree {
                1 => Ok(class),
                0 => Ok(KClassExpr::vanishing(spec, 0, "infinite group: p_0 = 0")),
                _ => Ok(KClassExpr::vanishing(spec, degree, "virtually free: p_n = 0 for n != 1")),
            }
        }
        GroupKind::Free(k) => match degree {
            1 => kazhdan_class_free_group(k),
            0 => Ok(KClassExpr::vanishing(spec, 0, "infinite group: p_0 = 0")),
            _ => Ok(KClassExpr::vanishing(spec, degree, "one-dimensional model: p_n = 0 for n > 1")),
        },
        _ if spec.is_finite() => match degree {
            0 => kazhdan_class_product(0, spec),
            _ => Ok(KClassExpr::vanishing(spec, degree, "finite group: p_n = 0 for n > 0")),
        },
        GroupKind::Product(factors) => {
            let f2 = GroupSpec::free(2)?;
            let n_free = factors.iter().take_while(|f| **f == f2).count();
            let rest = &factors[n_free..];
            if n_free == 0 || rest.iter().any(|f| !f.is_finite()) {
                return Err(unsupported());
            }
            if degree != n_free {
                return Ok(KClassExpr::vanishing(
                    spec,
                    degree,
                    format!("Kunneth: p_n = 0 for n != {n_free}"),
                ));
            }
            if rest.is_empty() {
                let unit = RingMatrix::identity(spec, 1);
                return Ok(KClassExpr { spec: spec.clone(), degree, terms: vec![(1, unit)], note: None });
            }
            let finite = GroupSpec::product(rest.to_vec())?;
            kazhdan_class_product(n_free, &finite)
        }
        _ => Err(unsupported()),
    }
}

/// Pairs the K-class of `p_degree` with the delocalised trace at each class.
pub fn betti_report(spec: &GroupSpec, degree: usize, classes: &[GroupElement]) -> Result<BettiReport> {
    let expr = kazhdan_class(spec, degree)?;
    let entries = classes
        .iter()
        .map(|g| Ok((g.clone(), expr.pair(g)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BettiReport { group: spec.clone(), degree, method: Method::KClass, entries, note: expr.note })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ratio;

    #[test]
    fn modular_group_table() {
        let expr = kazhdan_class_free_product(2, 3).unwrap();
        assert!(expr.representatives_are_projections());
        let g = &expr.spec;
        let value = |w: &str| betti(&expr, &g.parse_word(w).unwrap()).unwrap();
        assert_eq!(value("e"), ratio(1, 6));
        assert_eq!(value("s"), ratio(-1, 2));
        assert_eq!(value("t"), ratio(-1, 3));
        assert_eq!(value("tt"), ratio(-1, 3));
        assert_eq!(value("st"), ratio(0, 1));
    }

    #[test]
    fn amenable_cases() {
        assert!(matches!(kazhdan_class_free_product(2, 2), Err(Error::Unsupported(_))));
        let z = kazhdan_class_free_group(1).unwrap();
        assert!(z.terms.is_empty() && z.note.is_some());
    }

    #[test]
    fn free_groups() {
        for k in 2..=4 {
            let expr = kazhdan_class_free_group(k).unwrap();
            assert_eq!(betti(&expr, &expr.spec.identity()).unwrap(), ratio(k as i64 - 1, 1));
        }
    }

    #[test]
    fn products_with_finite_groups() {
        let z3 = GroupSpec::cyclic(3).unwrap();
        let expr = kazhdan_class_product(0, &z3).unwrap();
        let f = z3.parse_word("f").unwrap();
        assert_eq!(betti(&expr, &f).unwrap(), ratio(1, 3));

        let z2 = GroupSpec::cyclic(2).unwrap();
        let expr = kazhdan_class_product(2, &z2).unwrap();
        assert!(expr.representatives_are_projections());
        assert_eq!(betti(&expr, &expr.spec.identity()).unwrap(), ratio(1, 2));
        let g = expr.spec.parse_word("(e,e,f)").unwrap();
        assert_eq!(betti(&expr, &g).unwrap(), ratio(1, 2));
    }

    #[test]
    fn reports() {
        let spec = GroupSpec::free_product(vec![2, 3]).unwrap();
        let classes: Vec<_> = ["e", "s", "t"].iter().map(|w| spec.parse_word(w).unwrap()).collect();
        let r = betti_report(&spec, 2, &classes).unwrap();
        assert!(r.entries.iter().all(|(_, v)| v.is_zero()));
        assert!(r.note.is_some());

        let f2z2 = GroupSpec::product(vec![GroupSpec::free(2).unwrap(), GroupSpec::cyclic(2).unwrap()]).unwrap();
        let g = f2z2.parse_word("(e,f)").unwrap();
        let r = betti_report(&f2z2, 1, &[g]).unwrap();
        assert_eq!(r.entries[0].1, ratio(1, 2));

        let f2f2 = GroupSpec::product(vec![GroupSpec::free(2).unwrap(); 2]).unwrap();
        let r = betti_report(&f2f2, 2, &[f2f2.identity()]).unwrap();
        assert_eq!(r.entries[0].1, ratio(1, 1));

        let three = GroupSpec::free_product(vec![2, 3, 4]).unwrap();
        assert!(matches!(betti_report(&three, 1, &[]), Err(Error::Unsupported(_))));
    }
}
