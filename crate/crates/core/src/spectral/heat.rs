//! Heat-semigroup traces `τ_⟨g⟩(e^{-tΔ})` by two independent engines.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::ops::{AddAssign, Mul};

use hashbrown::HashMap;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::compress::{compress, CompressedOperator};
use super::expm::expm_action;
use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupSpec};
use crate::kclass::Method;
use crate::ring::{Rational, RingMatrix};

/// Truncated Taylor value with a certified remainder: the true trace lies in
/// `[value - bound, value + bound]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactHeatTrace {
    pub value: Rational,
    pub bound: Rational,
    pub order: usize,
}

/// `(tN)^{K+1} / ((K+1)! (1 - tN/(K+2)))`, bounding `Σ_{k>K} (tN)^k/k!`.
pub fn remainder_bound(t: &Rational, norm: &Rational, order: usize) -> Result<Rational> {
    let x = t * norm;
    if x.is_zero() {
        return Ok(Rational::zero());
    }
    let k2 = Rational::from_integer(BigInt::from(order + 2));
    if k2 <= x {
        return Err(Error::BoundUnavailable {
            order,
            tn: format!("{:.4}", x.to_f64().unwrap_or(f64::INFINITY)),
        });
    }
    let mut power_over_fact = Rational::one();
    for k in 1..=order + 1 {
        power_over_fact = power_over_fact * &x / Rational::from_integer(BigInt::from(k));
    }
    Ok(power_over_fact / (Rational::one() - x / k2))
}

/// Evaluates `Σ_{k≤K} (-t)^k/k! · moments[k]` with the certified remainder bound.
pub fn taylor_heat(moments: &[Rational], t: &Rational, norm: &Rational) -> Result<ExactHeatTrace> {
    if t.is_negative() {
        return Err(Error::InvalidArgument("time must be nonnegative".into()));
    }
    let order = moments.len().checked_sub(1).ok_or_else(|| Error::InvalidArgument("no moments".into()))?;
    let bound = remainder_bound(t, norm, order)?;
    let mut coefficient = Rational::one();
    let mut value = Rational::zero();
    for (k, m) in moments.iter().enumerate() {
        if k > 0 {
            coefficient = -coefficient * t / Rational::from_integer(BigInt::from(k));
        }
        value += &coefficient * m;
    }
    Ok(ExactHeatTrace { value, bound, order })
}

/// Interned group elements with cached left translates and conjugacy-class ids.
struct Interner<'a> {
    spec: &'a GroupSpec,
    elements: Vec<GroupElement>,
    ids: HashMap<GroupElement, u32>,
    class: Vec<u32>,
    class_ids: HashMap<GroupElement, u32>,
    units: Vec<GroupElement>,
    translates: Vec<u32>,
}

const UNSET: u32 = u32::MAX;

impl<'a> Interner<'a> {
    fn new(spec: &'a GroupSpec, units: Vec<GroupElement>) -> Self {
        Self {
            spec,
            elements: Vec::new(),
            ids: HashMap::new(),
            class: Vec::new(),
            class_ids: HashMap::new(),
            units,
            translates: Vec::new(),
        }
    }

    fn class_id(&mut self, key: GroupElement) -> u32 {
        let next = self.class_ids.len() as u32;
        *self.class_ids.entry(key).or_insert(next)
    }

    fn intern(&mut self, g: GroupElement) -> u32 {
        if let Some(&id) = self.ids.get(&g) {
            return id;
        }
        let id = self.elements.len() as u32;
        let key = self.spec.class_key(&g);
        let class = self.class_id(key);
        self.class.push(class);
        self.ids.insert(g.clone(), id);
        self.elements.push(g);
        self.translates.extend(core::iter::repeat(UNSET).take(self.units.len()));
        id
    }

    /// Id of `units[u] · elements[g]`.
    fn translate(&mut self, u: usize, g: u32) -> u32 {
        let slot = g as usize * self.units.len() + u;
        let cached = self.translates[slot];
        if cached != UNSET {
            return cached;
        }
        let product = self.spec.mul(&self.units[u], &self.elements[g as usize]);
        let id = self.intern(product);
        self.translates[slot] = id;
        id
    }
}

/// `Δ = Z / den` with `Z` integral, stored as `(row, col, unit index, coefficient)`.
struct IntegralForm {
    den: BigInt,
    units: Vec<GroupElement>,
    entries: Vec<(usize, usize, usize, BigInt)>,
    norm: f64,
}

fn integral_form(delta: &RingMatrix) -> IntegralForm {
    let mut den = BigInt::one();
    for e in delta.entries() {
        for (_, c) in e.terms() {
            den = den.lcm(c.denom());
        }
    }
    let mut units: Vec<GroupElement> = Vec::new();
    let mut entries = Vec::new();
    let mut col_sums = alloc::vec![0.0f64; delta.cols()];
    for i in 0..delta.rows() {
        for j in 0..delta.cols() {
            for (u, c) in delta.get(i, j).terms() {
                let idx = match units.iter().position(|x| x == u) {
                    Some(idx) => idx,
                    None => {
                        units.push(u.clone());
                        units.len() - 1
                    }
                };
                let z = (c * Rational::from_integer(den.clone())).to_integer();
                col_sums[j] += z.abs().to_f64().unwrap_or(f64::INFINITY);
                entries.push((i, j, idx, z));
            }
        }
    }
    let norm = col_sums.into_iter().fold(0.0, f64::max);
    IntegralForm { den, units, entries, norm }
}

trait Coefficient: Clone + Zero + for<'x> AddAssign<&'x Self>
where
    for<'x> &'x Self: Mul<&'x Self, Output = Self>,
{
    fn from_big(x: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Coefficient for i128 {
    fn from_big(x: &BigInt) -> Self {
        x.to_i128().expect("coefficient range checked in advance")
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coefficient for BigInt {
    fn from_big(x: &BigInt) -> Self {
        x.clone()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Integer class sums `Σ_j Σ_{h ∈ ⟨g⟩} (Z^k)_{jj}(h)` for `k = 0..=order`.
fn integer_moments<T: Coefficient>(
    spec: &GroupSpec,
    form: &IntegralForm,
    size: usize,
    classes: &[GroupElement],
    order: usize,
) -> Vec<Vec<BigInt>>
where
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    let mut interner = Interner::new(spec, form.units.clone());
    let targets: Vec<u32> = classes.iter().map(|g| interner.class_id(spec.class_key(g))).collect();
    let entries: Vec<(usize, usize, usize, T)> =
        form.entries.iter().map(|(i, j, u, z)| (*i, *j, *u, T::from_big(z))).collect();
    let mut sums = alloc::vec![alloc::vec![BigInt::zero(); order + 1]; classes.len()];
    let identity = interner.intern(spec.identity());
    for j in 0..size {
        let mut v: Vec<HashMap<u32, T>> = (0..size).map(|_| HashMap::new()).collect();
        v[j].insert(identity, T::from_big(&BigInt::one()));
        for k in 0..=order {
            if k > 0 {
                let mut w: Vec<HashMap<u32, T>> = (0..size).map(|_| HashMap::new()).collect();
                for (row, col, u, z) in &entries {
                    for (&g, c) in &v[*col] {
                        let h = interner.translate(*u, g);
                        *w[*row].entry(h).or_insert_with(T::zero) += &(z * c);
                    }
                }
                for comp in &mut w {
                    comp.retain(|_, c| !c.is_zero());
                }
                v = w;
            }
            let mut per_class: HashMap<u32, T> = HashMap::new();
            for (&g, c) in &v[j] {
                *per_class.entry(interner.class[g as usize]).or_insert_with(T::zero) += c;
            }
            for (slot, target) in targets.iter().enumerate() {
                if let Some(c) = per_class.get(target) {
                    sums[slot][k] += c.to_big();
                }
            }
        }
    }
    sums
}

/// `τ_⟨g⟩(Δ^k)` for every class and `k = 0..=order`, exactly.
pub fn moment_traces(delta: &RingMatrix, classes: &[GroupElement], order: usize) -> Result<Vec<Vec<Rational>>> {
    if !delta.is_square() {
        return Err(Error::NotSquare { rows: delta.rows(), cols: delta.cols() });
    }
    for g in classes {
        delta.spec().check(g)?;
    }
    let form = integral_form(delta);
    // |coefficients of Z^k| ≤ ‖Z‖₁^k, so i128 suffices while that stays below 2^125.
    let fits = order == 0 || form.norm <= 1.0 || (order as f64) * libm::log2(form.norm) < 125.0;
    let sums = if fits {
        integer_moments::<i128>(delta.spec(), &form, delta.rows(), classes, order)
    } else {
        integer_moments::<BigInt>(delta.spec(), &form, delta.rows(), classes, order)
    };
    Ok(sums
        .into_iter()
        .map(|row| {
            let mut scale = BigInt::one();
            row.into_iter()
                .enumerate()
                .map(|(k, c)| {
                    if k > 0 {
                        scale *= &form.den;
                    }
                    Rational::new(c, scale.clone())
                })
                .collect()
        })
        .collect())
}

/// `Σ_{k≤K} (-t)^k/k! τ_⟨g⟩(Δ^k)` in exact arithmetic, with remainder bound
/// `(tN)^{K+1}/((K+1)!(1 - tN/(K+2)))` where `N` is the ℓ¹ norm of `Δ`.
pub fn heat_trace_exact(delta: &RingMatrix, t: &Rational, g: &GroupElement, order: usize) -> Result<ExactHeatTrace> {
    let norm = delta.l1_norm();
    remainder_bound(t, &norm, order)?;
    let moments = moment_traces(delta, core::slice::from_ref(g), order)?;
    taylor_heat(&moments[0], t, &norm)
}

/// Float heat traces on one compression, reusable across times and classes.
pub struct NumericHeat {
    operator: CompressedOperator,
    class_of: Vec<u32>,
    class_ids: HashMap<GroupElement, u32>,
    spec: GroupSpec,
}

impl NumericHeat {
    pub fn new(delta: &RingMatrix, radius: usize) -> Result<Self> {
        let operator = compress(delta, radius)?;
        let spec = delta.spec().clone();
        let mut class_ids = HashMap::new();
        let class_of = operator
            .ball
            .iter()
            .map(|h| {
                let next = class_ids.len() as u32;
                *class_ids.entry(spec.class_key(h)).or_insert(next)
            })
            .collect();
        Ok(Self { operator, class_of, class_ids, spec })
    }

    pub fn operator(&self) -> &CompressedOperator {
        &self.operator
    }

    /// `Σ_j Σ_{h ∈ ⟨g⟩ ∩ ball} ⟨δ_{(h,j)}, e^{-tC} δ_{(e,j)}⟩` for each class `g`.
    pub fn traces(&self, t: f64, classes: &[GroupElement]) -> Result<Vec<f64>> {
        let targets = classes
            .iter()
            .map(|g| Ok(self.class_ids.get(&self.spec.conjugacy_key(g)?).copied()))
            .collect::<Result<Vec<_>>>()?;
        let n = self.operator.matrix.dim();
        let mut out = alloc::vec![0.0; classes.len()];
        for j in 0..self.operator.copies {
            let mut v = alloc::vec![0.0; n];
            v[self.operator.index(j, 0)] = 1.0;
            let w = expm_action(&self.operator.matrix, t, &v)?;
            for (pos, &class) in self.class_of.iter().enumerate() {
                for (slot, target) in targets.iter().enumerate() {
                    if *target == Some(class) {
                        out[slot] += w[self.operator.index(j, pos)];
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Float heat trace on the compression to `ball(radius)`.
pub fn heat_trace_numeric(delta: &RingMatrix, t: f64, g: &GroupElement, radius: usize) -> Result<f64> {
    Ok(NumericHeat::new(delta, radius)?.traces(t, core::slice::from_ref(g))?[0])
}

/// Outcome of a limit scan for one class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvergenceStatus {
    Converged,
    NotConverged,
    BoundUnavailable,
}

impl ConvergenceStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ConvergenceStatus::Converged => "converged",
            ConvergenceStatus::NotConverged => "not-converged",
            ConvergenceStatus::BoundUnavailable => "bound-unavailable",
        }
    }
}

/// One evaluated grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct HeatRow {
    pub t: f64,
    pub radius_or_order: usize,
    pub class: GroupElement,
    pub value: f64,
    pub bound: Option<f64>,
    pub method: Method,
}

/// Per-class conclusion of a scan.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassSummary {
    pub class: GroupElement,
    /// Value at the largest time and radius, when the scan converged.
    pub limit: Option<f64>,
    /// Change between the two largest times at the largest radius.
    pub t_delta: Option<f64>,
    /// Change between the two largest radii at the largest time.
    pub radius_delta: Option<f64>,
    pub status: ConvergenceStatus,
    pub expected: Option<Rational>,
}

/// Grid of heat traces over times and radii, plus convergence conclusions.
#[derive(Clone, Debug, PartialEq)]
pub struct HeatReport {
    pub group: GroupSpec,
    pub degree: Option<usize>,
    pub t_schedule: Vec<f64>,
    pub radius_schedule: Vec<usize>,
    pub tolerance: f64,
    pub rows: Vec<HeatRow>,
    pub summaries: Vec<ClassSummary>,
}

/// Default convergence tolerance for [`heat_limit_scan`].
pub const DEFAULT_TOLERANCE: f64 = 0.025;

fn strictly_increasing<T: PartialOrd>(xs: &[T]) -> bool {
    !xs.is_empty() && xs.windows(2).all(|w| w[0] < w[1])
}

impl HeatReport {
    /// Builds a report from `grid[radius_index][t_index][class_index]`.
    pub fn assemble(
        group: GroupSpec,
        classes: &[GroupElement],
        t_schedule: &[f64],
        radius_schedule: &[usize],
        grid: &[Vec<Vec<f64>>],
        tolerance: f64,
    ) -> Self {
        let mut rows = Vec::new();
        for (ri, &r) in radius_schedule.iter().enumerate() {
            for (ti, &t) in t_schedule.iter().enumerate() {
                for (ci, g) in classes.iter().enumerate() {
                    rows.push(HeatRow {
                        t,
                        radius_or_order: r,
                        class: g.clone(),
                        value: grid[ri][ti][ci],
                        bound: None,
                        method: Method::HeatNumeric,
                    });
                }
            }
        }
        let (nr, nt) = (radius_schedule.len(), t_schedule.len());
        let summaries = classes
            .iter()
            .enumerate()
            .map(|(ci, g)| {
                let last = grid[nr - 1][nt - 1][ci];
                let t_delta = (nt >= 2).then(|| (last - grid[nr - 1][nt - 2][ci]).abs());
                let radius_delta = (nr >= 2).then(|| (last - grid[nr - 2][nt - 1][ci]).abs());
                let ok = |d: Option<f64>| d.is_some_and(|d| d < tolerance);
                let converged = ok(t_delta) && ok(radius_delta);
                ClassSummary {
                    class: g.clone(),
                    limit: converged.then_some(last),
                    t_delta,
                    radius_delta,
                    status: if converged { ConvergenceStatus::Converged } else { ConvergenceStatus::NotConverged },
                    expected: None,
                }
            })
            .collect();
        Self {
            group,
            degree: None,
            t_schedule: t_schedule.to_vec(),
            radius_schedule: radius_schedule.to_vec(),
            tolerance,
            rows,
            summaries,
        }
    }

    /// Worst status over all classes.
    pub fn status(&self) -> ConvergenceStatus {
        let has = |s| self.summaries.iter().any(|c| c.status == s);
        if has(ConvergenceStatus::BoundUnavailable) {
            ConvergenceStatus::BoundUnavailable
        } else if has(ConvergenceStatus::NotConverged) {
            ConvergenceStatus::NotConverged
        } else {
            ConvergenceStatus::Converged
        }
    }

    /// Appends exact-engine rows for each time, one per class.
    /// A missing bound marks that class as [`ConvergenceStatus::BoundUnavailable`].
    pub fn add_exact_rows(&mut self, delta: &RingMatrix, times: &[Rational], order: usize) -> Result<()> {
        let classes: Vec<GroupElement> = self.summaries.iter().map(|s| s.class.clone()).collect();
        let moments = moment_traces(delta, &classes, order)?;
        let norm = delta.l1_norm();
        for t in times {
            for (ci, g) in classes.iter().enumerate() {
                match taylor_heat(&moments[ci], t, &norm) {
                    Ok(exact) => self.rows.push(HeatRow {
                        t: t.to_f64().unwrap_or(f64::NAN),
                        radius_or_order: order,
                        class: g.clone(),
                        value: exact.value.to_f64().unwrap_or(f64::NAN),
                        bound: Some(exact.bound.to_f64().unwrap_or(f64::INFINITY)),
                        method: Method::HeatExact,
                    }),
                    Err(Error::BoundUnavailable { .. }) => {
                        self.summaries[ci].status = ConvergenceStatus::BoundUnavailable;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(())
    }
}

/// Runs the float engine over all `(radius, t)` pairs and decides convergence: the value at
/// the largest time and radius is accepted as the limit when it moves by less than
/// `tolerance` from the previous time and from the previous radius.
pub fn heat_limit_scan(
    delta: &RingMatrix,
    classes: &[GroupElement],
    t_schedule: &[f64],
    radius_schedule: &[usize],
    tolerance: f64,
) -> Result<HeatReport> {
    validate_schedules(t_schedule, radius_schedule, tolerance)?;
    let mut grid = Vec::with_capacity(radius_schedule.len());
    for &r in radius_schedule {
        let engine = NumericHeat::new(delta, r)?;
        grid.push(t_schedule.iter().map(|&t| engine.traces(t, classes)).collect::<Result<Vec<_>>>()?);
    }
    Ok(HeatReport::assemble(delta.spec().clone(), classes, t_schedule, radius_schedule, &grid, tolerance))
}

/// Checks that schedules are nonempty and strictly increasing and the tolerance positive.
pub fn validate_schedules(t_schedule: &[f64], radius_schedule: &[usize], tolerance: f64) -> Result<()> {
    if !strictly_increasing(t_schedule) || t_schedule.iter().any(|t| !(*t >= 0.0 && t.is_finite())) {
        return Err(Error::InvalidArgument(
            "time schedule must be nonempty, nonnegative and strictly increasing".to_string(),
        ));
    }
    if !strictly_increasing(radius_schedule) {
        return Err(Error::InvalidArgument("radius schedule must be nonempty and strictly increasing".into()));
    }
    if !(tolerance > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{free_group_complex, free_product_complex};
    use crate::ring::ratio;

    #[test]
    fn time_zero_gives_rank() {
        let lap = free_product_complex(2, 3).unwrap().laplacian(1).unwrap();
        let e = lap.spec().identity();
        let exact = heat_trace_exact(&lap, &ratio(0, 1), &e, 5).unwrap();
        assert_eq!(exact.value, ratio(2, 1));
        assert!(exact.bound.is_zero());
        assert_eq!(heat_trace_numeric(&lap, 0.0, &e, 2).unwrap(), 2.0);
    }

    #[test]
    fn first_moments_match_traces() {
        let lap = free_product_complex(2, 3).unwrap().laplacian(1).unwrap();
        let spec = lap.spec().clone();
        let classes = [spec.identity(), spec.parse_word("s").unwrap()];
        let m = moment_traces(&lap, &classes, 2).unwrap();
        let squared = lap.mat_mul(&lap).unwrap();
        for (ci, g) in classes.iter().enumerate() {
            let t = crate::ring::TraceFunctional::Delocalised(g.clone());
            assert_eq!(m[ci][1], lap.trace(&t).unwrap());
            assert_eq!(m[ci][2], squared.trace(&t).unwrap());
        }
    }

    #[test]
    fn long_classes_vanish_below_propagation() {
        let lap = free_product_complex(2, 3).unwrap().laplacian(0).unwrap();
        let g = lap.spec().parse_word("stststst").unwrap();
        let exact = heat_trace_exact(&lap, &ratio(1, 4), &g, 3).unwrap();
        assert!(exact.value.is_zero());
    }

    #[test]
    fn bound_unavailable_is_reported() {
        let lap = free_group_complex(2).unwrap().laplacian(1).unwrap();
        let e = lap.spec().identity();
        assert!(matches!(
            heat_trace_exact(&lap, &ratio(1, 1), &e, 4),
            Err(Error::BoundUnavailable { .. })
        ));
    }

    #[test]
    fn engines_agree_on_small_time() {
        let lap = free_group_complex(2).unwrap().laplacian(1).unwrap();
        let e = lap.spec().identity();
        let exact = heat_trace_exact(&lap, &ratio(1, 4), &e, 10).unwrap();
        let numeric = heat_trace_numeric(&lap, 0.25, &e, 7).unwrap();
        let gap = (numeric - exact.value.to_f64().unwrap()).abs();
        assert!(gap <= exact.bound.to_f64().unwrap() + 1e-8, "gap {gap}");
    }

    #[test]
    fn schedules_are_validated() {
        assert!(validate_schedules(&[1.0, 1.0], &[2], 0.1).is_err());
        assert!(validate_schedules(&[1.0], &[], 0.1).is_err());
        assert!(validate_schedules(&[1.0], &[2], 0.0).is_err());
        assert!(validate_schedules(&[0.5, 1.0], &[2, 4], 0.1).is_ok());
    }
}
