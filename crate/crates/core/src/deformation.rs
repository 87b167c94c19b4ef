//! Graded `C*`-limits.
//!
//! Conjugating `(E, t^s Phi)` by `diag(t^(w_i))` scales Higgs entry `(i <- j)`
//! by `t^(s + w_i - w_j)` and Dolbeault extra `(i <- j)` by `t^(w_i - w_j)`.
//! The limit exists when no exponent is negative; terms with positive
//! exponent die in the limit.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::higgs::{
    BundleParts, DolbeaultExtra, GradedHiggsBundle, GroupTag, HiggsEntry, SectionSymbol, Side,
    Summand,
};
use crate::linebundle::LineBundle;
use crate::stability::{check_polystability, StabilityOptions, StabilityVerdict};

/// Largest `|w|` accepted by [`search_admissible_weights`].
pub const MAX_SEARCH_BOUND: i64 = 6;
/// Largest summand count accepted by [`search_admissible_weights`].
pub const MAX_SEARCH_SUMMANDS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightAssignment {
    pub weights: Vec<i64>,
    /// Exponent `s` in `t^s Phi`.
    pub higgs_scale: i64,
}

impl WeightAssignment {
    pub fn new(weights: Vec<i64>) -> Self {
        WeightAssignment { weights, higgs_scale: 1 }
    }

    pub fn zero(len: usize) -> Self {
        WeightAssignment::new(alloc::vec![0; len])
    }

    /// Componentwise sum, with the scales added as well.
    pub fn compose(&self, other: &WeightAssignment) -> Result<WeightAssignment> {
        if self.weights.len() != other.weights.len() {
            return Err(Error::Precondition("weight vectors of different lengths".into()));
        }
        Ok(WeightAssignment {
            weights: self.weights.iter().zip(&other.weights).map(|(a, b)| a + b).collect(),
            higgs_scale: self.higgs_scale + other.higgs_scale,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    ToZero,
    ToInfinity,
}

impl core::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" | "0" => Ok(Direction::ToZero),
            "inf" | "infinity" => Ok(Direction::ToInfinity),
            _ => Err(Error::Parse(format!("direction must be `zero` or `inf`, got `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermExponent {
    pub target: usize,
    pub source: usize,
    pub name: String,
    pub exponent: i64,
}

/// Exponents of the nonzero Higgs entries and of the Dolbeault extras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentTable {
    pub higgs: Vec<TermExponent>,
    pub dolbeault: Vec<TermExponent>,
}

impl ExponentTable {
    pub fn all_nonnegative(&self) -> bool {
        self.higgs.iter().chain(&self.dolbeault).all(|t| t.exponent >= 0)
    }

    pub fn exponent_of(&self, target: usize, source: usize) -> Option<i64> {
        self.higgs
            .iter()
            .chain(&self.dolbeault)
            .find(|t| t.target == target && t.source == source)
            .map(|t| t.exponent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitResult {
    pub exists: bool,
    pub limit: Option<GradedHiggsBundle>,
    pub exponents: ExponentTable,
    pub stability: Option<StabilityVerdict>,
}

pub fn exponent_table(
    h: &GradedHiggsBundle,
    w: &WeightAssignment,
    direction: Direction,
) -> Result<ExponentTable> {
    if w.weights.len() != h.len() {
        return Err(Error::Precondition(format!(
            "{} weights for {} summands",
            w.weights.len(),
            h.len()
        )));
    }
    let sign = match direction {
        Direction::ToZero => 1,
        Direction::ToInfinity => -1,
    };
    let higgs = h
        .higgs()
        .iter()
        .filter(|e| e.symbol.is_nonzero())
        .map(|e| TermExponent {
            target: e.target,
            source: e.source,
            name: e.symbol.name.clone(),
            exponent: sign * (w.higgs_scale + w.weights[e.target] - w.weights[e.source]),
        })
        .collect();
    let dolbeault = h
        .dolbeault()
        .iter()
        .map(|e| TermExponent {
            target: e.target,
            source: e.source,
            name: e.name.clone(),
            exponent: sign * (w.weights[e.target] - w.weights[e.source]),
        })
        .collect();
    Ok(ExponentTable { higgs, dolbeault })
}

/// The limit object with the positive-exponent terms removed, or `None`
/// when some exponent is negative.
fn limit_object(h: &GradedHiggsBundle, table: &ExponentTable) -> Result<Option<GradedHiggsBundle>> {
    if !table.all_nonnegative() {
        return Ok(None);
    }
    let dies = |terms: &[TermExponent], t: usize, s: usize| {
        terms.iter().any(|x| x.target == t && x.source == s && x.exponent > 0)
    };
    let mut parts = h.parts().clone();
    for e in &mut parts.higgs {
        if dies(&table.higgs, e.target, e.source) {
            e.symbol = SectionSymbol::zero(&e.symbol.name);
        }
    }
    parts.dolbeault.retain(|e| !dies(&table.dolbeault, e.target, e.source));
    parts.family = Some(format!("graded-limit({})", h.family().unwrap_or("?")));
    GradedHiggsBundle::from_parts(parts).map(Some)
}

pub fn graded_limit(
    h: &GradedHiggsBundle,
    w: &WeightAssignment,
    direction: Direction,
    opts: &StabilityOptions,
) -> Result<LimitResult> {
    let exponents = exponent_table(h, w, direction)?;
    let limit = limit_object(h, &exponents)?;
    let stability = match &limit {
        Some(l) => Some(check_polystability(l, opts)?),
        None => None,
    };
    Ok(LimitResult { exists: limit.is_some(), limit, exponents, stability })
}

/// Data of the destabilizing isotropic line `N` of an unstable `W_0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NDescriptor {
    pub degree: i64,
    pub alpha_on: bool,
    pub beta_on: bool,
    pub gamma_on: bool,
}

/// Weights `(2, 0, -2 | 3, 1, -1, -3, 0)` used on the unstable branch.
pub fn unstable_branch_weights() -> WeightAssignment {
    WeightAssignment::new(alloc::vec![2, 0, -2, 3, 1, -1, -3, 0])
}

/// Rewrite a deformed `SO0(3, 5)` object in the smooth splitting
/// `W_0 = N + N^-1 + O` and take its `t -> 0` limit.
pub fn limit_destabilized_branch(
    h: &GradedHiggsBundle,
    n: &NDescriptor,
    opts: &StabilityOptions,
) -> Result<LimitResult> {
    if !h.family().is_some_and(|f| f.starts_with("deform-so35")) || h.group() != GroupTag::so0(3, 5) {
        return Err(Error::Type("expected the deformed SO0(3,5) object".into()));
    }
    let d = h.label().ok_or_else(|| Error::Type("object carries no label".into()))?;
    if !n.alpha_on {
        return Err(Error::Contradiction("alpha must be nonzero on the unstable branch".into()));
    }
    let curve = h.curve();
    let max = 3 * curve.canonical_degree();
    if n.degree <= 0 || n.degree > max {
        return Err(Error::Bound { what: "deg N", value: n.degree, min: 1, max });
    }
    if (n.degree - d).rem_euclid(2) != 0 {
        return Err(Error::Parity { line_degree: n.degree, label: d });
    }
    let nb = LineBundle::var("N");
    let line = |side, bundle| Summand::line(side, bundle);
    let summands = alloc::vec![
        line(Side::V, LineBundle::k(2)),
        line(Side::V, LineBundle::trivial()),
        line(Side::V, LineBundle::k(-2)),
        line(Side::W, nb.clone()),
        line(Side::W, LineBundle::k(1)),
        line(Side::W, LineBundle::k(-1)),
        line(Side::W, nb.dual()),
        line(Side::W, LineBundle::trivial()),
    ];
    let entry = |target, source, symbol| HiggsEntry { target, source, symbol };
    let parts = BundleParts {
        group: GroupTag::so0(3, 5),
        genus: h.genus(),
        family: Some(format!("unstable-branch({})", h.family().unwrap_or("?"))),
        label: Some(n.degree),
        degrees: BTreeMap::from([(String::from("N"), n.degree)]),
        torsion_classes: BTreeMap::new(),
        summands,
        pairing: Some(alloc::vec![2, 1, 0, 6, 5, 4, 3, 7]),
        higgs: alloc::vec![
            entry(4, 0, SectionSymbol::unit()),
            entry(5, 1, SectionSymbol::unit()),
            entry(3, 2, SectionSymbol::flagged("beta", n.beta_on)),
            entry(6, 2, SectionSymbol::named("alpha")),
            entry(7, 2, SectionSymbol::flagged("gamma", n.gamma_on)),
        ],
        dolbeault: alloc::vec![DolbeaultExtra { target: 3, source: 7, name: "delta".into() }],
    };
    let split = GradedHiggsBundle::from_parts(parts)?;
    graded_limit(&split, &unstable_branch_weights(), Direction::ToZero, opts)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSearch {
    /// Number of admissible weight vectors.
    pub admissible: u64,
    /// First admissible vector (lexicographically) for each distinct limit.
    pub representatives: Vec<WeightAssignment>,
}

/// Positions of the surviving terms, used to tell limits apart.
type LimitKey = (BTreeSet<(usize, usize)>, BTreeSet<(usize, usize)>);

fn limit_key(table: &ExponentTable) -> LimitKey {
    let keep = |terms: &[TermExponent]| {
        terms.iter().filter(|t| t.exponent == 0).map(|t| (t.target, t.source)).collect()
    };
    (keep(&table.higgs), keep(&table.dolbeault))
}

/// Enumerate structure-compatible weight vectors with `|w_i| <= bound` and
/// keep those whose limit exists.
///
/// Paired objects use `w_s(i) = -w_i` (fixed points get 0); `SL(N, C)`
/// objects use trace-zero vectors.
pub fn search_admissible_weights(
    h: &GradedHiggsBundle,
    direction: Direction,
    bound: i64,
    budget: u64,
) -> Result<WeightSearch> {
    if !(0..=MAX_SEARCH_BOUND).contains(&bound) {
        return Err(Error::Bound { what: "bound", value: bound, min: 0, max: MAX_SEARCH_BOUND });
    }
    let n = h.len();
    if n > MAX_SEARCH_SUMMANDS {
        return Err(Error::Bound {
            what: "summands",
            value: n as i64,
            min: 1,
            max: MAX_SEARCH_SUMMANDS as i64,
        });
    }
    let free: Vec<usize> = match h.pairing() {
        Some(sigma) => (0..n).filter(|&i| i < sigma[i]).collect(),
        None => (0..n).collect(),
    };
    let width = (2 * bound + 1) as u64;
    let total = width.checked_pow(free.len() as u32).unwrap_or(u64::MAX);
    if total > budget {
        return Err(Error::Budget { needed: total, budget });
    }
    let ranks: Vec<i64> = h.summands().iter().map(|s| i64::from(s.rank)).collect();
    let mut admissible = Vec::new();
    let mut digits = alloc::vec![-bound; free.len()];
    loop {
        let mut weights = alloc::vec![0i64; n];
        for (&i, &v) in free.iter().zip(&digits) {
            weights[i] = v;
            if let Some(sigma) = h.pairing() {
                weights[sigma[i]] = -v;
            }
        }
        let balanced = h.pairing().is_some()
            || weights.iter().zip(&ranks).map(|(w, r)| w * r).sum::<i64>() == 0;
        if balanced {
            let w = WeightAssignment::new(weights);
            let table = exponent_table(h, &w, direction)?;
            if table.all_nonnegative() {
                admissible.push((w, limit_key(&table)));
            }
        }
        let mut k = digits.len();
        loop {
            if k == 0 {
                admissible.sort();
                let count = admissible.len() as u64;
                let mut seen = BTreeSet::new();
                let representatives = admissible
                    .into_iter()
                    .filter(|(_, key)| seen.insert(key.clone()))
                    .map(|(w, _)| w)
                    .collect();
                return Ok(WeightSearch { admissible: count, representatives });
            }
            k -= 1;
            if digits[k] < bound {
                digits[k] += 1;
                break;
            }
            digits[k] = -bound;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Curve;
    use crate::higgs::*;
    use crate::stability::{DEFAULT_BUDGET, StabilityStatus};
    use alloc::vec;
    use proptest::prelude::*;

    fn curve(g: u32) -> Curve {
        Curve::new(g).unwrap()
    }

    fn opts() -> StabilityOptions {
        StabilityOptions::default()
    }

    #[test]
    fn zero_weights() {
        let h = build_deform_so35(curve(2), 2, &Switches::all_on()).unwrap();
        let t = exponent_table(&h, &WeightAssignment::zero(8), Direction::ToZero).unwrap();
        assert!(t.higgs.iter().all(|x| x.exponent == 1));
        assert!(t.dolbeault.iter().all(|x| x.exponent == 0));
    }

    #[test]
    fn so23_retraction_weights() {
        let h = build_maximal_so2n(curve(2), 3, &W0Descriptor::Trivial, &Switches::all_on()).unwrap();
        let w = WeightAssignment::new(vec![1, -1, 0, 0, 0]);
        let t = exponent_table(&h, &w, Direction::ToZero).unwrap();
        for x in &t.higgs {
            let want = if x.name == "1" { 0 } else { 2 };
            assert_eq!(x.exponent, want, "{}", x.name);
        }
    }

    #[test]
    fn deform_weights() {
        let h = build_deform_so35(curve(2), 2, &Switches::all_on()).unwrap();
        let w = unstable_branch_weights();
        let t = exponent_table(&h, &w, Direction::ToZero).unwrap();
        assert_eq!(t.exponent_of(6, 2), Some(0));
        assert_eq!(t.exponent_of(6, 7), Some(-3));
        let r = graded_limit(&h, &w, Direction::ToZero, &opts()).unwrap();
        assert!(!r.exists);
        let r = graded_limit(&h, &w, Direction::ToInfinity, &opts()).unwrap();
        assert!(r.exists);
        let limit = r.limit.unwrap();
        assert!(limit.dolbeault().is_empty());
        let eta = append_trivial_w(&build_so34_eta(curve(2), 2, &Switches::all_on()).unwrap(), 1).unwrap();
        assert_eq!(limit.summands(), eta.summands());
        assert_eq!(limit.higgs(), eta.higgs());
        assert!(r.stability.unwrap().is_polystable());
    }

    #[test]
    fn stable_branch() {
        let h = build_deform_so35(curve(2), 3, &Switches::all_on()).unwrap();
        let w = WeightAssignment::new(vec![2, 0, -2, 0, 1, -1, 0, 0]);
        let r = graded_limit(&h, &w, Direction::ToZero, &opts()).unwrap();
        let l = r.limit.unwrap();
        assert!(!l.entry(6, 2).unwrap().is_nonzero());
        assert_eq!(l.dolbeault().len(), 2);
        assert_eq!(l.arrows().count(), 6);
    }

    #[test]
    fn zero_limit_of_polystable_bundle() {
        let h = build_so12(curve(2), 0, &Switches::with_off(["mu"])).unwrap();
        let r = graded_limit(&h, &WeightAssignment::zero(3), Direction::ToZero, &opts()).unwrap();
        let l = r.limit.unwrap();
        assert_eq!(l.arrows().count(), 0);
        assert_eq!(r.stability.unwrap().status, StabilityStatus::Polystable);
    }

    #[test]
    fn unstable_branch() {
        let c = curve(2);
        let on = NDescriptor { degree: 2, alpha_on: true, beta_on: true, gamma_on: true };
        let h = build_deform_so35(c, 2, &Switches::all_on()).unwrap();
        let r = limit_destabilized_branch(&h, &on, &opts()).unwrap();
        assert!(r.exists);
        let l = r.limit.unwrap();
        assert_eq!(l.label(), Some(2));
        assert!(l.dolbeault().is_empty());
        assert_eq!(l.arrows().count(), 6);
        assert!(r.stability.unwrap().is_polystable());

        let odd = build_deform_so35(c, 1, &Switches::all_on()).unwrap();
        let r = limit_destabilized_branch(&odd, &NDescriptor { degree: 1, ..on }, &opts()).unwrap();
        assert_eq!(r.limit.unwrap().label().unwrap() % 2, 1);
        assert_eq!(
            limit_destabilized_branch(&odd, &NDescriptor { degree: 2, ..on }, &opts()),
            Err(Error::Parity { line_degree: 2, label: 1 })
        );
        assert!(matches!(
            limit_destabilized_branch(&h, &NDescriptor { alpha_on: false, ..on }, &opts()),
            Err(Error::Contradiction(_))
        ));
        assert!(matches!(
            limit_destabilized_branch(&h, &NDescriptor { degree: 0, ..on }, &opts()),
            Err(Error::Bound { .. })
        ));
    }

    #[test]
    fn search_on_hitchin_chain() {
        let h = build_hitchin_sl(curve(2), 3, None, &Switches::with_off(["q2", "q3"])).unwrap();
        let s = search_admissible_weights(&h, Direction::ToZero, 2, DEFAULT_BUDGET).unwrap();
        assert!(s.representatives.iter().any(|w| w.weights == [1, 0, -1]));
        // Oracle: w_0 = -w_2 = a, w_1 = 0, admissible iff 1 - a >= 0.
        assert_eq!(s.admissible, 4);
    }

    #[test]
    fn search_on_zero_higgs() {
        let h = build_so12(curve(2), 0, &Switches::with_off(["mu", "nu"])).unwrap();
        let s = search_admissible_weights(&h, Direction::ToZero, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.admissible, 7);
        assert_eq!(s.representatives.len(), 1);
    }

    #[test]
    fn search_on_so12_cycle() {
        let h = build_so12(curve(2), 1, &Switches::all_on()).unwrap();
        let s = search_admissible_weights(&h, Direction::ToZero, 3, DEFAULT_BUDGET).unwrap();
        let ws: Vec<Vec<i64>> = s.representatives.iter().map(|w| w.weights.clone()).collect();
        assert_eq!(ws, [vec![-1, 0, 1], vec![0, 0, 0], vec![1, 0, -1]]);
        assert!(search_admissible_weights(&h, Direction::ToZero, 7, DEFAULT_BUDGET).is_err());
        assert!(matches!(
            search_admissible_weights(&h, Direction::ToZero, 3, 2),
            Err(Error::Budget { .. })
        ));
    }

    proptest! {
        #[test]
        fn exponents_are_additive(
            a in proptest::collection::vec(-5i64..5, 8),
            b in proptest::collection::vec(-5i64..5, 8),
            s in -2i64..3,
            inf in any::<bool>(),
        ) {
            let h = build_deform_so35(curve(2), 2, &Switches::all_on()).unwrap();
            let dir = if inf { Direction::ToInfinity } else { Direction::ToZero };
            let wa = WeightAssignment { weights: a, higgs_scale: s };
            let wb = WeightAssignment { weights: b, higgs_scale: 0 };
            let ta = exponent_table(&h, &wa, dir).unwrap();
            let tb = exponent_table(&h, &wb, dir).unwrap();
            let tc = exponent_table(&h, &wa.compose(&wb).unwrap(), dir).unwrap();
            for ((x, y), z) in ta.higgs.iter().chain(&ta.dolbeault)
                .zip(tb.higgs.iter().chain(&tb.dolbeault))
                .zip(tc.higgs.iter().chain(&tc.dolbeault))
            {
                prop_assert_eq!(x.exponent + y.exponent, z.exponent);
            }
        }

        #[test]
        fn branches_preserve_parity(g in 2u32..4, d in 1i64..=6, k in 0i64..6) {
            let c = curve(g);
            prop_assume!(d <= 3 * c.canonical_degree());
            let h = build_deform_so35(c, d, &Switches::all_on()).unwrap();
            let deg_n = (d % 2) + 2 * k;
            prop_assume!(deg_n > 0 && deg_n <= 3 * c.canonical_degree());
            let n = NDescriptor { degree: deg_n, alpha_on: true, beta_on: true, gamma_on: true };
            let r = limit_destabilized_branch(&h, &n, &opts()).unwrap();
            let l = r.limit.unwrap();
            prop_assert_eq!(l.label().unwrap().rem_euclid(2), d.rem_euclid(2));
            let t = graded_limit(&h, &unstable_branch_weights(), Direction::ToInfinity, &opts()).unwrap();
            prop_assert_eq!(t.limit.unwrap().label().unwrap().rem_euclid(2), d.rem_euclid(2));
        }
    }
}
