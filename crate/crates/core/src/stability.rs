//! Polystability by enumeration of arrow-closed summand subsets.
//!
//! A subset `F` of summands is closed when every nonzero Higgs entry or
//! Dolbeault extra `(i <- j)` with `j` in `F` has `i` in `F`. Only such
//! summand-generated subobjects are tested, so inputs outside the recognized
//! families are refused unless the caller vouches for the restriction.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::higgs::{is_recognized_family, GradedHiggsBundle, GroupTag, SectionSymbol};
use crate::linebundle::{LineBundle, SymbolKind};

/// Hard cap on the number of summands the enumerator accepts.
pub const MAX_SUMMANDS: usize = 24;
/// Default number of search nodes the enumerator may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSubobject {
    pub indices: Vec<usize>,
    pub degree: i64,
    /// Arrows `(target, source)` leaving a member; all targets are members.
    pub closure_witness: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StabilityStatus {
    Stable,
    Polystable,
    Unstable,
}

impl StabilityStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            StabilityStatus::Stable => "stable",
            StabilityStatus::Polystable => "polystable",
            StabilityStatus::Unstable => "unstable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    pub witness: Option<InvariantSubobject>,
    /// Index sets of the stable degree-0 factors of a strictly polystable object.
    pub factors: Option<Vec<Vec<usize>>>,
}

impl StabilityVerdict {
    /// Stable objects count as polystable.
    pub fn is_polystable(&self) -> bool {
        self.status != StabilityStatus::Unstable
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilityOptions {
    /// Accept objects outside the recognized families.
    pub summand_generated: bool,
    pub budget: u64,
}

impl Default for StabilityOptions {
    fn default() -> Self {
        StabilityOptions { summand_generated: false, budget: DEFAULT_BUDGET }
    }
}

/// `out[j]` is the mask of summands reached by an arrow out of `j`.
fn successor_masks(h: &GradedHiggsBundle) -> Vec<u32> {
    let mut out = vec![0u32; h.len()];
    for (t, s) in h.arrows() {
        out[s] |= 1 << t;
    }
    out
}

fn closure(start: u32, step: &[u32]) -> u32 {
    let mut mask = start;
    loop {
        let mut next = mask;
        for (j, m) in step.iter().enumerate() {
            if mask & (1 << j) != 0 {
                next |= m;
            }
        }
        if next == mask {
            return mask;
        }
        mask = next;
    }
}

fn is_closed(mask: u32, out: &[u32]) -> bool {
    out.iter()
        .enumerate()
        .all(|(j, m)| mask & (1 << j) == 0 || m & !mask == 0)
}

struct Search<'a> {
    out: &'a [u32],
    preds: &'a [u32],
    n: usize,
    visited: u64,
    budget: u64,
    found: Vec<u32>,
}

impl Search<'_> {
    fn run(&mut self, pos: usize, incl: u32, excl: u32) -> Result<()> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::Budget { needed: self.visited, budget: self.budget });
        }
        if pos == self.n {
            self.found.push(incl);
            return Ok(());
        }
        let bit = 1u32 << pos;
        if (incl | excl) & bit != 0 {
            return self.run(pos + 1, incl, excl);
        }
        let with = closure(incl | bit, self.out);
        if with & excl == 0 {
            self.run(pos + 1, with, excl)?;
        }
        let without = closure(excl | bit, self.preds);
        if without & incl == 0 {
            self.run(pos + 1, incl, without)?;
        }
        Ok(())
    }
}

fn closed_masks(h: &GradedHiggsBundle, budget: u64) -> Result<Vec<u32>> {
    let n = h.len();
    if n > MAX_SUMMANDS {
        return Err(Error::Budget { needed: 1u64 << n.min(63), budget });
    }
    let out = successor_masks(h);
    let mut preds = vec![0u32; n];
    for (j, m) in out.iter().enumerate() {
        for (i, p) in preds.iter_mut().enumerate() {
            if m & (1 << i) != 0 {
                *p |= 1 << j;
            }
        }
    }
    let mut search = Search { out: &out, preds: &preds, n, visited: 0, budget, found: Vec::new() };
    search.run(0, 0, 0)?;
    let mut found = search.found;
    found.sort_by_key(|m| (m.count_ones(), indices_of(*m)));
    Ok(found)
}

fn indices_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

fn subobject(h: &GradedHiggsBundle, mask: u32) -> InvariantSubobject {
    let indices = indices_of(mask);
    let degree = indices.iter().map(|&i| h.degree(i)).sum();
    let closure_witness = h
        .arrows()
        .filter(|&(_, s)| mask & (1 << s) != 0)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    InvariantSubobject { indices, degree, closure_witness }
}

/// All arrow-closed subsets, the empty and full ones included, ordered by size.
pub fn enumerate_invariant_subobjects(
    h: &GradedHiggsBundle,
    budget: u64,
) -> Result<Vec<InvariantSubobject>> {
    Ok(closed_masks(h, budget)?.into_iter().map(|m| subobject(h, m)).collect())
}

pub fn check_polystability(h: &GradedHiggsBundle, opts: &StabilityOptions) -> Result<StabilityVerdict> {
    let recognized = h.family().is_some_and(is_recognized_family);
    if !recognized && !opts.summand_generated {
        return Err(Error::UnrecognizedShape);
    }
    let n = h.len();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let masks = closed_masks(h, opts.budget)?;
    let out = successor_masks(h);
    let degree = |m: u32| -> i64 { indices_of(m).iter().map(|&i| h.degree(i)).sum() };
    let proper: Vec<u32> = masks.into_iter().filter(|&m| m != 0 && m != full).collect();

    let worst = proper.iter().copied().max_by_key(|&m| (degree(m), core::cmp::Reverse(m)));
    let Some(worst) = worst else {
        return Ok(StabilityVerdict { status: StabilityStatus::Stable, witness: None, factors: None });
    };
    if degree(worst) > 0 {
        return Ok(StabilityVerdict {
            status: StabilityStatus::Unstable,
            witness: Some(subobject(h, worst)),
            factors: None,
        });
    }
    let flat: Vec<u32> = proper.into_iter().filter(|&m| degree(m) == 0).collect();
    if flat.is_empty() {
        return Ok(StabilityVerdict { status: StabilityStatus::Stable, witness: None, factors: None });
    }
    if let Some(&bad) = flat.iter().find(|&&m| !is_closed(full & !m, &out)) {
        return Ok(StabilityVerdict {
            status: StabilityStatus::Unstable,
            witness: Some(subobject(h, bad)),
            factors: None,
        });
    }
    let mut atoms = vec![full];
    for &m in &flat {
        atoms = atoms
            .into_iter()
            .flat_map(|a| [a & m, a & !m])
            .filter(|&a| a != 0)
            .collect();
    }
    let mut factors: Vec<Vec<usize>> = atoms.into_iter().map(indices_of).collect();
    factors.sort();
    Ok(StabilityVerdict { status: StabilityStatus::Polystable, witness: None, factors: Some(factors) })
}

/// Which integer label a Milnor-Wood type bound applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelKind {
    /// Euler class of a `PSL(2, R)` representation.
    Psl2Euler,
    /// Toledo invariant `deg V` of an `Sp(2n, R)` object.
    SpToledo { n: u32 },
    /// `deg M` for `SO(1, 2)`.
    So12Degree,
    /// `deg M` for maximal `SO0(2, 3)`.
    MaximalSo23Degree,
    /// `d` for the `Psi_d` family of `SO0(n, n+1)`.
    PsiDegree { n: u32 },
    /// Toledo invariant of `SO0(2, n)`.
    So2nToledo,
}

impl FromStr for LabelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad rank in label kind `{s}`")))
        };
        match s.split_once(':') {
            None => match s {
                "psl2" => Ok(LabelKind::Psl2Euler),
                "so12" => Ok(LabelKind::So12Degree),
                "so23" => Ok(LabelKind::MaximalSo23Degree),
                "so2n" => Ok(LabelKind::So2nToledo),
                _ => Err(Error::Unsupported(format!("label kind `{s}`"))),
            },
            Some(("sp", n)) => Ok(LabelKind::SpToledo { n: num(n)? }),
            Some(("psi", n)) => Ok(LabelKind::PsiDegree { n: num(n)? }),
            Some(_) => Err(Error::Unsupported(format!("label kind `{s}`"))),
        }
    }
}

/// Largest absolute value of the label on a closed surface of the given genus.
pub fn milnor_wood_bound(kind: LabelKind, genus: u32) -> Result<i64> {
    if genus < 2 {
        return Err(Error::InvalidGenus(genus));
    }
    let g = i64::from(genus);
    Ok(match kind {
        LabelKind::Psl2Euler | LabelKind::So12Degree | LabelKind::So2nToledo => 2 * g - 2,
        LabelKind::SpToledo { n } => i64::from(n) * (g - 1),
        LabelKind::MaximalSo23Degree => 4 * g - 4,
        LabelKind::PsiDegree { n } => i64::from(n) * (2 * g - 2),
    })
}

type NameMap = BTreeMap<String, String>;

fn bind(map: &mut NameMap, back: &mut NameMap, a: &str, b: &str) -> bool {
    match (map.get(a), back.get(b)) {
        (Some(x), _) if x != b => false,
        (_, Some(y)) if y != a => false,
        _ => {
            map.insert(a.into(), b.into());
            back.insert(b.into(), a.into());
            true
        }
    }
}

fn nonzero_entries(h: &GradedHiggsBundle) -> BTreeMap<(usize, usize), &SectionSymbol> {
    h.higgs()
        .iter()
        .filter(|e| e.symbol.is_nonzero())
        .map(|e| ((e.target, e.source), &e.symbol))
        .collect()
}

fn arrows_match(a: &GradedHiggsBundle, b: &GradedHiggsBundle, perm: &[usize]) -> bool {
    let (ea, eb) = (nonzero_entries(a), nonzero_entries(b));
    if ea.len() != eb.len() || a.dolbeault().len() != b.dolbeault().len() {
        return false;
    }
    let (mut map, mut back) = (NameMap::new(), NameMap::new());
    for (&(t, s), sym) in &ea {
        let Some(other) = eb.get(&(perm[t], perm[s])) else {
            return false;
        };
        if sym.kind != other.kind
            || sym.vanishing != other.vanishing
            || !bind(&mut map, &mut back, &sym.name, &other.name)
        {
            return false;
        }
    }
    let xb: BTreeMap<(usize, usize), &str> =
        b.dolbeault().iter().map(|e| ((e.target, e.source), e.name.as_str())).collect();
    let (mut map, mut back) = (NameMap::new(), NameMap::new());
    a.dolbeault().iter().all(|e| {
        xb.get(&(perm[e.target], perm[e.source]))
            .is_some_and(|name| bind(&mut map, &mut back, &e.name, name))
    })
}

fn find_perm(
    a: &GradedHiggsBundle,
    bundles: &[LineBundle],
    b: &GradedHiggsBundle,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let i = perm.len();
    if i == a.len() {
        return arrows_match(a, b, perm);
    }
    let (sa, sigma_a, sigma_b) = (&a.summands()[i], a.pairing(), b.pairing());
    for j in 0..b.len() {
        let sb = &b.summands()[j];
        if used[j] || sa.side != sb.side || sa.rank != sb.rank || sa.sw2 != sb.sw2 {
            continue;
        }
        if bundles[i] != sb.bundle {
            continue;
        }
        if let (Some(pa), Some(pb)) = (sigma_a, sigma_b) {
            let partner = pa[i];
            if partner < i && perm[partner] != pb[j] {
                continue;
            }
            if partner == i && pb[j] != j {
                continue;
            }
        }
        perm.push(j);
        used[j] = true;
        if find_perm(a, bundles, b, perm, used) {
            return true;
        }
        perm.pop();
        used[j] = false;
    }
    false
}

/// Whether two objects are related by rescaling named sections, inverting
/// variable line bundles (the switching move), and permuting summands.
pub fn gauge_equivalent(a: &GradedHiggsBundle, b: &GradedHiggsBundle) -> bool {
    if a.group() != b.group()
        || a.genus() != b.genus()
        || a.len() != b.len()
        || a.parts().torsion_classes != b.parts().torsion_classes
    {
        return false;
    }
    let vars: Vec<String> = a
        .summands()
        .iter()
        .flat_map(|s| s.bundle.free_symbols().cloned().collect::<Vec<_>>())
        .filter(|sym| matches!(sym.kind, SymbolKind::Variable | SymbolKind::Divisor))
        .map(|sym| sym.name)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if vars.len() > 16 {
        return false;
    }
    for flips in 0u32..(1 << vars.len()) {
        let mut images = BTreeMap::new();
        let mut degrees_ok = true;
        for (k, name) in vars.iter().enumerate() {
            let flip = flips & (1 << k) != 0;
            let kind = a
                .summands()
                .iter()
                .flat_map(|s| s.bundle.free_symbols().cloned().collect::<Vec<_>>())
                .find(|sym| &sym.name == name)
                .map(|sym| sym.kind)
                .unwrap_or(SymbolKind::Variable);
            images.insert(name.clone(), LineBundle::symbol(kind, name, if flip { -1 } else { 1 }));
            let da = a.parts().degrees.get(name).copied();
            let db = b.parts().degrees.get(name).copied();
            let expected = da.map(|d| if flip { -d } else { d });
            degrees_ok &= expected == db;
        }
        if !degrees_ok {
            continue;
        }
        let bundles: Vec<LineBundle> =
            a.summands().iter().map(|s| s.bundle.substitute(&images)).collect();
        let mut perm = Vec::with_capacity(a.len());
        let mut used = vec![false; b.len()];
        if find_perm(a, &bundles, b, &mut perm, &mut used) {
            return true;
        }
    }
    false
}

/// Group tags the Milnor-Wood bound applies to, for reports.
pub fn label_kind_for(group: GroupTag) -> Result<LabelKind> {
    match group {
        GroupTag::SpReal(1) | GroupTag::SlReal(2) => Ok(LabelKind::Psl2Euler),
        GroupTag::SpReal(n) => Ok(LabelKind::SpToledo { n }),
        GroupTag::So { p: 1, q: 2, .. } => Ok(LabelKind::So12Degree),
        GroupTag::So { p: 2, q: 3, .. } => Ok(LabelKind::MaximalSo23Degree),
        GroupTag::So { p: 2, .. } => Ok(LabelKind::So2nToledo),
        GroupTag::So { p, q, .. } if q == p + 1 => Ok(LabelKind::PsiDegree { n: p }),
        other => Err(Error::Unsupported(format!("no Milnor-Wood bound for {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Curve;
    use crate::higgs::*;
    use proptest::prelude::*;

    fn curve(g: u32) -> Curve {
        Curve::new(g).unwrap()
    }

    fn opts() -> StabilityOptions {
        StabilityOptions::default()
    }

    /// Every subset, filtered by closure, then classified from scratch.
    fn oracle(h: &GradedHiggsBundle) -> (StabilityStatus, Vec<Vec<usize>>) {
        let n = h.len();
        let arrows: Vec<(usize, usize)> = h.arrows().collect();
        let closed: Vec<Vec<usize>> = (0u32..(1 << n))
            .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect::<Vec<_>>())
            .filter(|set| arrows.iter().all(|(t, s)| !set.contains(s) || set.contains(t)))
            .collect();
        let deg = |set: &Vec<usize>| set.iter().map(|&i| h.degree(i)).sum::<i64>();
        let proper: Vec<&Vec<usize>> =
            closed.iter().filter(|s| !s.is_empty() && s.len() < n).collect();
        let status = if proper.iter().any(|s| deg(s) > 0) {
            StabilityStatus::Unstable
        } else if proper.iter().all(|s| deg(s) < 0) {
            StabilityStatus::Stable
        } else if proper.iter().filter(|s| deg(s) == 0).all(|s| {
            let comp: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
            closed.contains(&comp)
        }) {
            StabilityStatus::Polystable
        } else {
            StabilityStatus::Unstable
        };
        (status, closed)
    }

    fn agree(h: &GradedHiggsBundle) {
        let (status, closed) = oracle(h);
        let v = check_polystability(h, &opts()).unwrap();
        assert_eq!(v.status, status, "{:?}", h.family());
        let mut got: Vec<Vec<usize>> =
            enumerate_invariant_subobjects(h, DEFAULT_BUDGET).unwrap().into_iter().map(|s| s.indices).collect();
        got.sort();
        let mut want = closed;
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn so12_cases() {
        let c = curve(2);
        let both = build_so12(c, 1, &Switches::all_on()).unwrap();
        assert_eq!(check_polystability(&both, &opts()).unwrap().status, StabilityStatus::Stable);
        let closed = enumerate_invariant_subobjects(&both, DEFAULT_BUDGET).unwrap();
        assert_eq!(closed.len(), 2);

        let no_mu = build_so12(c, 2, &Switches::with_off(["mu"])).unwrap();
        let v = check_polystability(&no_mu, &opts()).unwrap();
        assert_eq!(v.status, StabilityStatus::Unstable);
        let w = v.witness.unwrap();
        assert_eq!(w.indices, [0]);
        assert_eq!(w.degree, 2);

        let no_nu = build_so12(c, 2, &Switches::with_off(["nu"])).unwrap();
        assert!(check_polystability(&no_nu, &opts()).unwrap().is_polystable());
    }

    #[test]
    fn zero_higgs_split_is_polystable() {
        let h = build_so12(curve(2), 0, &Switches::with_off(["mu", "nu"])).unwrap();
        let v = check_polystability(&h, &opts()).unwrap();
        assert_eq!(v.status, StabilityStatus::Polystable);
        assert_eq!(v.factors.unwrap(), [vec![0], vec![1], vec![2]]);
        assert_eq!(enumerate_invariant_subobjects(&h, DEFAULT_BUDGET).unwrap().len(), 8);
    }

    #[test]
    fn hitchin_chain_subsets() {
        let off = Switches::with_off(["q2", "q3"]);
        let h = build_hitchin_sl(curve(2), 3, None, &off).unwrap();
        let sets: Vec<Vec<usize>> =
            enumerate_invariant_subobjects(&h, DEFAULT_BUDGET).unwrap().into_iter().map(|s| s.indices).collect();
        assert_eq!(sets, [vec![], vec![2], vec![1, 2], vec![0, 1, 2]]);
        assert_eq!(check_polystability(&h, &opts()).unwrap().status, StabilityStatus::Stable);
    }

    #[test]
    fn psi_d_polystable() {
        for g in 2..=3 {
            let c = curve(g);
            for n in 1..=3u32 {
                for d in 1..=i64::from(n) * c.canonical_degree() {
                    let h = build_psi_d(c, n, d, &Switches::all_on()).unwrap();
                    assert!(check_polystability(&h, &opts()).unwrap().is_polystable());
                }
            }
        }
    }

    #[test]
    fn oracle_agreement_on_builders() {
        let c = curve(2);
        let z = crate::F2Class::zero(2);
        let mut objs = vec![
            build_fuchsian(c, "S", &Switches::all_on()).unwrap(),
            build_hitchin_so(c, 3, &Switches::all_on()).unwrap(),
            build_hitchin_pso_nn(c, 3, &Switches::with_off(["qPf"])).unwrap(),
            build_maximal_so2n(c, 5, &W0Descriptor::Trivial, &Switches::with_off(["beta0"])).unwrap(),
            build_twisted_fuchsian_sp(c, &[z, z, z], "S", &Switches::with_off(["q2"])).unwrap(),
            build_deform_so35(c, 2, &Switches::all_on()).unwrap(),
            build_so34_eta(c, 5, &Switches::all_on()).unwrap(),
        ];
        for d in -2..=2 {
            for off in [vec![], vec!["mu"], vec!["nu"], vec!["mu", "nu"]] {
                objs.push(build_so12(c, d, &Switches::with_off(off)).unwrap());
            }
        }
        for h in &objs {
            agree(h);
        }
    }

    #[test]
    fn unrecognized_shape() {
        let h = build_so12(curve(2), 1, &Switches::all_on()).unwrap().with_family(None);
        assert_eq!(check_polystability(&h, &opts()), Err(Error::UnrecognizedShape));
        let o = StabilityOptions { summand_generated: true, ..opts() };
        assert!(check_polystability(&h, &o).is_ok());
    }

    #[test]
    fn budget_is_enforced() {
        let h = build_so12(curve(2), 0, &Switches::with_off(["mu", "nu"])).unwrap();
        assert!(matches!(
            enumerate_invariant_subobjects(&h, 5),
            Err(Error::Budget { budget: 5, .. })
        ));
    }

    #[test]
    fn bounds() {
        assert_eq!(milnor_wood_bound(LabelKind::Psl2Euler, 2).unwrap(), 2);
        assert_eq!(milnor_wood_bound(LabelKind::MaximalSo23Degree, 2).unwrap(), 4);
        assert_eq!(milnor_wood_bound(LabelKind::PsiDegree { n: 3 }, 2).unwrap(), 6);
        assert_eq!(milnor_wood_bound(LabelKind::SpToledo { n: 2 }, 3).unwrap(), 4);
        assert_eq!("psi:3".parse::<LabelKind>().unwrap(), LabelKind::PsiDegree { n: 3 });
        assert!(matches!("su:2".parse::<LabelKind>(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn switching_move() {
        let c = curve(2);
        let a = build_so12(c, 1, &Switches::with_off(["nu"])).unwrap();
        let b = build_so12(c, -1, &Switches::with_off(["mu"])).unwrap();
        assert!(gauge_equivalent(&a, &b));
        assert!(gauge_equivalent(&a, &a));
        let c2 = build_so12(c, -1, &Switches::with_off(["nu"])).unwrap();
        assert!(!gauge_equivalent(&a, &c2));
        let q = build_psi_d(c, 2, 2, &Switches::all_on()).unwrap();
        let q_off = build_psi_d(c, 2, 2, &Switches::with_off(["q2"])).unwrap();
        assert!(!gauge_equivalent(&q, &q_off));
        let p = q.permuted(&[1, 0, 2, 4, 3]).unwrap();
        assert!(gauge_equivalent(&q, &p));
    }

    proptest! {
        #[test]
        fn so12_criterion_off_zero(g in 2u32..5, raw in 0i64..100, mu in any::<bool>(), nu in any::<bool>()) {
            let c = curve(g);
            let span = 2 * c.canonical_degree() + 1;
            let d = raw % span - c.canonical_degree();
            prop_assume!(d != 0);
            let mut off = Vec::new();
            if !mu { off.push("mu"); }
            if !nu { off.push("nu"); }
            let h = build_so12(c, d, &Switches::with_off(off)).unwrap();
            let v = check_polystability(&h, &opts()).unwrap();
            let predicted = (d <= 0 || mu) && (d >= 0 || nu);
            prop_assert_eq!(v.is_polystable(), predicted);
        }

        #[test]
        fn verdict_is_gauge_invariant(d in 1i64..=4, seed in 0usize..120) {
            let h = build_psi_d(curve(2), 2, d, &Switches::with_off(["nu"])).unwrap();
            let mut perm: Vec<usize> = (0..5).collect();
            let mut k = seed;
            for i in (1..5).rev() {
                perm.swap(i, k % (i + 1));
                k /= i + 1;
            }
            let p = h.permuted(&perm).unwrap();
            prop_assert!(gauge_equivalent(&h, &p));
            prop_assert_eq!(
                check_polystability(&h, &opts()).unwrap().status,
                check_polystability(&p, &opts()).unwrap().status
            );
        }
    }
}
