use num_traits::Zero;

use super::{Rational, RingElement};
use crate::error::Result;
use crate::groups::GroupElement;

/// Trace functionals on ℚG: the canonical trace reads the coefficient of `e`,
/// the delocalised trace at `g` sums coefficients over the conjugacy class of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceFunctional {
    Canonical,
    Delocalised(GroupElement),
}

impl TraceFunctional {
    /// Evaluates the functional on a single ring element.
    pub fn apply(&self, a: &RingElement) -> Result<Rational> {
        let spec = a.spec();
        match self {
            TraceFunctional::Canonical => Ok(a.coeff(&spec.identity())),
            TraceFunctional::Delocalised(g) => {
                let key = spec.conjugacy_key(g)?;
                Ok(a.terms()
                    .filter(|(h, _)| spec.class_key(h) == key)
                    .fold(Rational::zero(), |acc, (_, c)| acc + c))
            }
        }
    }
}
