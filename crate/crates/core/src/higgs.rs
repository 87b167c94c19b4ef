//! Graded G-Higgs bundles as decorated quivers.
//!
//! A bundle is a list of summands (line bundles, or a declared polystable
//! block of higher rank represented by its determinant), a pairing
//! involution for the orthogonal or symplectic structure, and the full
//! `SL(N, C)` Higgs matrix stored sparsely. Entry `(i <- j)` is a section of
//! `Hom(L_j, L_i) * K`. For real forms the mirrored block is generated: entry
//! `(i <- j)` always comes with `(s(j) <- s(i))` carrying the same symbol.
//!
//! Dolbeault extras are off-diagonal `(0,1)` terms deforming the direct-sum
//! holomorphic structure. They are mirrored the same way.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::f2cohomology::{torsion_class, F2Class, SwPair};
use crate::linebundle::{DegreeContext, LineBundle, SymbolKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupTag {
    /// `SL(n, R)`.
    SlReal(u32),
    /// `Sp(2n, R)`, stored by `n`.
    SpReal(u32),
    /// `SO(p, q)`, or its identity component.
    So { p: u32, q: u32, identity_component: bool },
    /// `SL(n, C)`.
    SlComplex(u32),
}

impl GroupTag {
    pub fn so0(p: u32, q: u32) -> Self {
        GroupTag::So { p, q, identity_component: true }
    }

    /// Rank of the associated `SL(N, C)` bundle.
    pub fn complex_rank(self) -> u32 {
        match self {
            GroupTag::SlReal(n) | GroupTag::SlComplex(n) => n,
            GroupTag::SpReal(n) => 2 * n,
            GroupTag::So { p, q, .. } => p + q,
        }
    }

    fn has_real_structure(self) -> bool {
        !matches!(self, GroupTag::SlComplex(_))
    }

    /// Arrows of `Sp` and `SO` objects go between the two sides.
    fn arrows_cross_sides(self) -> bool {
        matches!(self, GroupTag::SpReal(_) | GroupTag::So { .. })
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupTag::SlReal(n) => write!(f, "SL({n},R)"),
            GroupTag::SpReal(n) => write!(f, "Sp({},R)", 2 * n),
            GroupTag::So { p, q, identity_component: true } => write!(f, "SO0({p},{q})"),
            GroupTag::So { p, q, identity_component: false } => write!(f, "SO({p},{q})"),
            GroupTag::SlComplex(n) => write!(f, "SL({n},C)"),
        }
    }
}

impl FromStr for GroupTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown group `{s}`"));
        let s = s.trim();
        let open = s.find('(').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let args: Vec<&str> = inner.split(',').map(str::trim).collect();
        let num = |t: &str| t.parse::<u32>().map_err(|_| bad());
        match (&s[..open], args.as_slice()) {
            ("SL", [n, "R"]) => Ok(GroupTag::SlReal(num(n)?)),
            ("SL", [n, "C"]) => Ok(GroupTag::SlComplex(num(n)?)),
            ("Sp", [n, "R"]) => {
                let n = num(n)?;
                if n % 2 != 0 {
                    return Err(bad());
                }
                Ok(GroupTag::SpReal(n / 2))
            }
            ("SO", [p, q]) => {
                Ok(GroupTag::So { p: num(p)?, q: num(q)?, identity_component: false })
            }
            ("SO0", [p, q]) => Ok(GroupTag::so0(num(p)?, num(q)?)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    V,
    W,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::V => "V",
            Side::W => "W",
        }
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "V" => Ok(Side::V),
            "W" => Ok(Side::W),
            _ => Err(Error::Parse(format!("unknown side `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SectionKind {
    Zero,
    Unit,
    Named,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vanishing {
    IdenticallyZero,
    GenericallyNonzero,
    NowhereVanishing,
}

impl SectionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SectionKind::Zero => "zero",
            SectionKind::Unit => "unit",
            SectionKind::Named => "named",
        }
    }
}

impl FromStr for SectionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(SectionKind::Zero),
            "unit" => Ok(SectionKind::Unit),
            "named" => Ok(SectionKind::Named),
            _ => Err(Error::Parse(format!("unknown section kind `{s}`"))),
        }
    }
}

impl Vanishing {
    pub fn as_str(self) -> &'static str {
        match self {
            Vanishing::IdenticallyZero => "identically-zero",
            Vanishing::GenericallyNonzero => "generically-nonzero",
            Vanishing::NowhereVanishing => "nowhere-vanishing",
        }
    }
}

impl FromStr for Vanishing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identically-zero" => Ok(Vanishing::IdenticallyZero),
            "generically-nonzero" => Ok(Vanishing::GenericallyNonzero),
            "nowhere-vanishing" => Ok(Vanishing::NowhereVanishing),
            _ => Err(Error::Parse(format!("unknown vanishing flag `{s}`"))),
        }
    }
}

/// A holomorphic section known only through its vanishing behaviour.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SectionSymbol {
    pub name: String,
    pub kind: SectionKind,
    pub vanishing: Vanishing,
}

impl SectionSymbol {
    pub fn zero(name: &str) -> Self {
        SectionSymbol {
            name: name.to_string(),
            kind: SectionKind::Zero,
            vanishing: Vanishing::IdenticallyZero,
        }
    }

    pub fn unit() -> Self {
        SectionSymbol {
            name: "1".to_string(),
            kind: SectionKind::Unit,
            vanishing: Vanishing::NowhereVanishing,
        }
    }

    pub fn named(name: &str) -> Self {
        SectionSymbol {
            name: name.to_string(),
            kind: SectionKind::Named,
            vanishing: Vanishing::GenericallyNonzero,
        }
    }

    /// `named(name)` when `on`, `zero(name)` otherwise.
    pub fn flagged(name: &str, on: bool) -> Self {
        if on {
            SectionSymbol::named(name)
        } else {
            SectionSymbol::zero(name)
        }
    }

    pub fn is_nonzero(&self) -> bool {
        self.kind != SectionKind::Zero
    }

    fn check(&self) -> Result<()> {
        let ok = match self.kind {
            SectionKind::Zero => self.vanishing == Vanishing::IdenticallyZero,
            SectionKind::Unit => self.vanishing == Vanishing::NowhereVanishing,
            SectionKind::Named => self.vanishing != Vanishing::IdenticallyZero,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidStructure(format!(
                "section `{}` is {} but flagged {}",
                self.name,
                self.kind.as_str(),
                self.vanishing.as_str()
            )))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub side: Side,
    /// The line bundle, or the determinant of a block.
    pub bundle: LineBundle,
    /// 1 for a line bundle; larger for a declared polystable block.
    pub rank: u32,
    /// Declared second Stiefel-Whitney class of an orthogonal block.
    pub sw2: Option<bool>,
}

impl Summand {
    pub fn line(side: Side, bundle: LineBundle) -> Self {
        Summand { side, bundle, rank: 1, sw2: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HiggsEntry {
    pub target: usize,
    pub source: usize,
    pub symbol: SectionSymbol,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DolbeaultExtra {
    pub target: usize,
    pub source: usize,
    pub name: String,
}

/// Unvalidated fields of a [`GradedHiggsBundle`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleParts {
    pub group: GroupTag,
    pub genus: u32,
    /// Which recognized construction produced the object, if any.
    pub family: Option<String>,
    /// Integer component label (`deg M`, Toledo invariant, ...).
    pub label: Option<i64>,
    pub degrees: BTreeMap<String, i64>,
    pub torsion_classes: BTreeMap<String, F2Class>,
    pub summands: Vec<Summand>,
    pub pairing: Option<Vec<usize>>,
    pub higgs: Vec<HiggsEntry>,
    pub dolbeault: Vec<DolbeaultExtra>,
}

/// Families produced by the builders. Derived objects carry the base name
/// followed by a parenthesised parent.
pub const RECOGNIZED_FAMILIES: &[&str] = &[
    "fuchsian",
    "hitchin-sl",
    "hitchin-so",
    "hitchin-sp",
    "hitchin-pso",
    "psi-d",
    "maximal-so2n",
    "twisted-fuchsian",
    "so12",
    "so34-eta",
    "deform-so35",
    "associated-sl",
    "embed-so2n",
    "embed-so33",
    "graded-limit",
    "unstable-branch",
];

pub fn is_recognized_family(family: &str) -> bool {
    let base = family.split('(').next().unwrap_or(family);
    RECOGNIZED_FAMILIES.contains(&base)
}

/// A validated graded Higgs bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedHiggsBundle {
    parts: BundleParts,
    degrees: Vec<i64>,
}

impl GradedHiggsBundle {
    /// Complete the mirrored entries, sort, and check every invariant.
    pub fn from_parts(mut parts: BundleParts) -> Result<Self> {
        let curve = Curve::new(parts.genus)?;
        let n = parts.summands.len();
        if n == 0 {
            return Err(Error::InvalidStructure("no summands".into()));
        }
        if let Some(sigma) = &parts.pairing {
            if sigma.len() != n || sigma.iter().any(|&j| j >= n) {
                return Err(Error::InvalidStructure("pairing has the wrong length".into()));
            }
            if (0..n).any(|i| sigma[sigma[i]] != i) {
                return Err(Error::InvalidStructure("pairing is not an involution".into()));
            }
        } else if parts.group.has_real_structure() {
            return Err(Error::InvalidStructure(format!("{} needs a pairing", parts.group)));
        }

        let mut higgs: BTreeMap<(usize, usize), SectionSymbol> = BTreeMap::new();
        let mut extras: BTreeMap<(usize, usize), String> = BTreeMap::new();
        for e in &parts.higgs {
            if e.target >= n || e.source >= n {
                return Err(Error::InvalidStructure("Higgs entry index out of range".into()));
            }
            insert_once(&mut higgs, (e.target, e.source), e.symbol.clone())?;
        }
        for e in &parts.dolbeault {
            if e.target >= n || e.source >= n {
                return Err(Error::InvalidStructure("Dolbeault extra index out of range".into()));
            }
            insert_once(&mut extras, (e.target, e.source), e.name.clone())?;
        }
        if let Some(sigma) = &parts.pairing {
            for ((t, s), sym) in higgs.clone() {
                insert_once(&mut higgs, (sigma[s], sigma[t]), sym)?;
            }
            for ((t, s), name) in extras.clone() {
                insert_once(&mut extras, (sigma[s], sigma[t]), name)?;
            }
        }
        parts.higgs = higgs
            .into_iter()
            .map(|((target, source), symbol)| HiggsEntry { target, source, symbol })
            .collect();
        parts.dolbeault = extras
            .into_iter()
            .map(|((target, source), name)| DolbeaultExtra { target, source, name })
            .collect();

        let ctx = degree_context(curve, &parts.degrees);
        let degrees = parts
            .summands
            .iter()
            .map(|s| ctx.degree(&s.bundle))
            .collect::<Result<Vec<_>>>()?;
        let out = GradedHiggsBundle { parts, degrees };
        out.validate(curve)?;
        Ok(out)
    }

    fn validate(&self, curve: Curve) -> Result<()> {
        let p = &self.parts;
        let invalid = |msg: String| Err(Error::InvalidStructure(msg));
        if p.summands.iter().any(|s| s.rank == 0) {
            return invalid("summand of rank 0".into());
        }
        let rank_on = |side| -> u32 {
            p.summands.iter().filter(|s| s.side == side).map(|s| s.rank).sum()
        };
        let total_rank = rank_on(Side::V) + rank_on(Side::W);
        let sizes_ok = match p.group {
            GroupTag::SlReal(n) | GroupTag::SlComplex(n) => total_rank == n,
            GroupTag::SpReal(n) => rank_on(Side::V) == n && rank_on(Side::W) == n,
            GroupTag::So { p: vp, q: wq, .. } => rank_on(Side::V) == vp && rank_on(Side::W) == wq,
        };
        if !sizes_ok {
            return invalid(format!("summand ranks do not fit {}", p.group));
        }

        if let Some(sigma) = &p.pairing {
            for (i, s) in p.summands.iter().enumerate() {
                let t = &p.summands[sigma[i]];
                let side_ok = match p.group {
                    GroupTag::SpReal(_) => s.side != t.side,
                    GroupTag::So { .. } => s.side == t.side,
                    _ => true,
                };
                if !side_ok {
                    return invalid(format!("pairing of summand {i} breaks the side structure"));
                }
                if s.rank != t.rank {
                    return invalid(format!("summand {i} is paired with a summand of other rank"));
                }
                if s.rank > 1 {
                    if sigma[i] != i || s.bundle.dual() != s.bundle {
                        return invalid(format!("block {i} must be self-paired with 2-torsion determinant"));
                    }
                } else if t.bundle != s.bundle.dual() {
                    return invalid(format!(
                        "summand {i} ({}) is paired with {} which is not its dual",
                        s.bundle, t.bundle
                    ));
                }
            }
        }

        let det = |side: Option<Side>| {
            p.summands
                .iter()
                .filter(|s| side.is_none_or(|sd| s.side == sd))
                .fold(LineBundle::trivial(), |acc, s| acc.tensor(&s.bundle))
        };
        let deg_on = |side: Side| -> i64 {
            p.summands
                .iter()
                .zip(&self.degrees)
                .filter(|(s, _)| s.side == side)
                .map(|(_, d)| *d)
                .sum()
        };
        if self.degrees.iter().sum::<i64>() != 0 {
            return invalid("total degree is not 0".into());
        }
        match p.group {
            GroupTag::So { identity_component, .. } => {
                if deg_on(Side::V) != 0 || deg_on(Side::W) != 0 {
                    return invalid("determinant condition fails: side degrees are not 0".into());
                }
                let (dv, dw) = (det(Some(Side::V)), det(Some(Side::W)));
                if dv != dw || (identity_component && !dv.is_trivial()) {
                    return invalid(format!("determinant condition fails: det V = {dv}, det W = {dw}"));
                }
            }
            GroupTag::SlReal(_) | GroupTag::SlComplex(_) => {
                if !det(None).is_trivial() {
                    return invalid("determinant is not trivial".into());
                }
            }
            GroupTag::SpReal(_) => {}
        }

        let kdeg = curve.canonical_degree();
        for e in &p.higgs {
            e.symbol.check()?;
            if e.target == e.source && e.symbol.is_nonzero() {
                return invalid(format!("diagonal Higgs entry `{}` breaks tracelessness", e.symbol.name));
            }
            if !e.symbol.is_nonzero() {
                continue;
            }
            let (t, s) = (&p.summands[e.target], &p.summands[e.source]);
            if p.group.arrows_cross_sides() && t.side == s.side {
                return invalid(format!("entry `{}` does not cross between V and W", e.symbol.name));
            }
            let (rt, rs) = (i64::from(t.rank), i64::from(s.rank));
            let ambient_deg =
                rs * self.degrees[e.target] - rt * self.degrees[e.source] + rt * rs * kdeg;
            let ok = match (e.symbol.kind, e.symbol.vanishing) {
                (SectionKind::Unit, _) => {
                    rt == 1 && rs == 1 && s.bundle.hom_to(&t.bundle).tensor(&LineBundle::k(1)).is_trivial()
                }
                (_, Vanishing::NowhereVanishing) => rt == 1 && rs == 1 && ambient_deg == 0,
                _ => ambient_deg >= 0,
            };
            if !ok {
                return invalid(format!(
                    "entry `{}` ({} <- {}) cannot be {} in a bundle of degree {}",
                    e.symbol.name,
                    e.target,
                    e.source,
                    e.symbol.vanishing.as_str(),
                    ambient_deg
                ));
            }
        }
        for e in &p.dolbeault {
            if e.target == e.source || e.name.is_empty() {
                return invalid("Dolbeault extras must be named and off-diagonal".into());
            }
            if p.group.has_real_structure()
                && p.summands[e.target].side != p.summands[e.source].side
            {
                return invalid(format!("Dolbeault extra `{}` mixes V and W", e.name));
            }
        }
        Ok(())
    }

    pub fn parts(&self) -> &BundleParts {
        &self.parts
    }

    pub fn into_parts(self) -> BundleParts {
        self.parts
    }

    pub fn group(&self) -> GroupTag {
        self.parts.group
    }

    pub fn genus(&self) -> u32 {
        self.parts.genus
    }

    pub fn curve(&self) -> Curve {
        Curve::new(self.parts.genus).expect("validated genus")
    }

    pub fn family(&self) -> Option<&str> {
        self.parts.family.as_deref()
    }

    pub fn label(&self) -> Option<i64> {
        self.parts.label
    }

    pub fn summands(&self) -> &[Summand] {
        &self.parts.summands
    }

    pub fn len(&self) -> usize {
        self.parts.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.summands.is_empty()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn pairing(&self) -> Option<&[usize]> {
        self.parts.pairing.as_deref()
    }

    pub fn higgs(&self) -> &[HiggsEntry] {
        &self.parts.higgs
    }

    pub fn dolbeault(&self) -> &[DolbeaultExtra] {
        &self.parts.dolbeault
    }

    pub fn entry(&self, target: usize, source: usize) -> Option<&SectionSymbol> {
        self.parts
            .higgs
            .iter()
            .find(|e| e.target == target && e.source == source)
            .map(|e| &e.symbol)
    }

    pub fn degree_context(&self) -> DegreeContext {
        degree_context(self.curve(), &self.parts.degrees)
    }

    /// Every `(target, source)` pair that forces closure: nonzero Higgs
    /// entries and Dolbeault extras.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .higgs
            .iter()
            .filter(|e| e.symbol.is_nonzero())
            .map(|e| (e.target, e.source))
            .chain(self.parts.dolbeault.iter().map(|e| (e.target, e.source)))
    }

    /// Total rank of the associated `SL(N, C)` bundle.
    pub fn total_rank(&self) -> u32 {
        self.parts.summands.iter().map(|s| s.rank).sum()
    }

    /// Relabel summands: old index `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&j| j >= n || core::mem::replace(&mut seen[j], true)) {
            return Err(Error::InvalidStructure("not a permutation of the summands".into()));
        }
        let mut parts = self.parts.clone();
        let mut summands = vec![None; n];
        for (i, s) in self.parts.summands.iter().enumerate() {
            summands[perm[i]] = Some(s.clone());
        }
        parts.summands = summands.into_iter().map(|s| s.expect("permutation")).collect();
        if let Some(sigma) = &self.parts.pairing {
            let mut new = vec![0; n];
            for i in 0..n {
                new[perm[i]] = perm[sigma[i]];
            }
            parts.pairing = Some(new);
        }
        for e in &mut parts.higgs {
            e.target = perm[e.target];
            e.source = perm[e.source];
        }
        for e in &mut parts.dolbeault {
            e.target = perm[e.target];
            e.source = perm[e.source];
        }
        GradedHiggsBundle::from_parts(parts)
    }

    /// A copy with a different family tag.
    pub fn with_family(&self, family: Option<String>) -> Self {
        let mut out = self.clone();
        out.parts.family = family;
        out
    }
}

fn insert_once<V: PartialEq + fmt::Debug>(
    map: &mut BTreeMap<(usize, usize), V>,
    key: (usize, usize),
    value: V,
) -> Result<()> {
    match map.get(&key) {
        Some(old) if *old != value => Err(Error::InvalidStructure(format!(
            "conflicting entries at ({} <- {}): {old:?} vs {value:?}",
            key.0, key.1
        ))),
        Some(_) => Ok(()),
        None => {
            map.insert(key, value);
            Ok(())
        }
    }
}

fn degree_context(curve: Curve, degrees: &BTreeMap<String, i64>) -> DegreeContext {
    degrees
        .iter()
        .fold(DegreeContext::new(curve), |ctx, (name, d)| ctx.with(name, *d))
}

/// Names of sections switched off in a builder call.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Switches {
    off: BTreeSet<String>,
}

impl Switches {
    pub fn all_on() -> Self {
        Switches::default()
    }

    pub fn with_off<'a>(names: impl IntoIterator<Item = &'a str>) -> Self {
        Switches { off: names.into_iter().map(String::from).collect() }
    }

    pub fn off(mut self, name: &str) -> Self {
        self.off.insert(name.to_string());
        self
    }

    pub fn is_on(&self, name: &str) -> bool {
        !self.off.contains(name)
    }

    pub fn symbol(&self, name: &str) -> SectionSymbol {
        SectionSymbol::flagged(name, self.is_on(name))
    }
}

struct Builder {
    parts: BundleParts,
}

impl Builder {
    fn new(group: GroupTag, curve: Curve, family: &str) -> Self {
        Builder {
            parts: BundleParts {
                group,
                genus: curve.genus(),
                family: Some(family.to_string()),
                label: None,
                degrees: BTreeMap::new(),
                torsion_classes: BTreeMap::new(),
                summands: Vec::new(),
                pairing: Some(Vec::new()),
                higgs: Vec::new(),
                dolbeault: Vec::new(),
            },
        }
    }

    /// Add a summand paired with itself; `pair` fixes that up.
    fn push(&mut self, summand: Summand) -> usize {
        let i = self.parts.summands.len();
        self.parts.summands.push(summand);
        self.parts.pairing.as_mut().expect("builder pairing").push(i);
        i
    }

    fn line(&mut self, side: Side, bundle: LineBundle) -> usize {
        self.push(Summand::line(side, bundle))
    }

    fn pair(&mut self, i: usize, j: usize) {
        let sigma = self.parts.pairing.as_mut().expect("builder pairing");
        sigma[i] = j;
        sigma[j] = i;
    }

    fn arrow(&mut self, target: usize, source: usize, symbol: SectionSymbol) {
        self.parts.higgs.push(HiggsEntry { target, source, symbol });
    }

    fn extra(&mut self, target: usize, source: usize, name: &str) {
        self.parts.dolbeault.push(DolbeaultExtra { target, source, name: name.to_string() });
    }

    fn finish(self) -> Result<GradedHiggsBundle> {
        GradedHiggsBundle::from_parts(self.parts)
    }
}

fn check_spin_name(spin: &str) -> Result<()> {
    if spin.starts_with('S') && spin.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        Ok(())
    } else {
        Err(Error::Parse(format!("spin root names start with `S`, got `{spin}`")))
    }
}

/// `K^((N - 1)/2 - r)` for `r = 0..N`, using the spin root when `N` is even.
fn principal_chain(len: u32, spin: Option<&str>) -> Result<Vec<LineBundle>> {
    let len = i64::from(len);
    if len % 2 == 1 {
        Ok((0..len).map(|r| LineBundle::k((len - 1) / 2 - r)).collect())
    } else {
        let spin = spin.ok_or(Error::MissingSpin)?;
        check_spin_name(spin)?;
        Ok((0..len)
            .map(|r| LineBundle::symbol(SymbolKind::Spin, spin, len - 1 - 2 * r))
            .collect())
    }
}

/// Units on the subdiagonal and `q_j` on the `(j-1)`-th superdiagonal of
/// the chain, for every `j` passing `keep`.
fn principal_arrows(
    b: &mut Builder,
    slots: &[usize],
    switches: &Switches,
    keep: impl Fn(usize) -> bool,
) {
    let len = slots.len();
    for r in 0..len.saturating_sub(1) {
        b.arrow(slots[r + 1], slots[r], SectionSymbol::unit());
    }
    for j in 2..=len {
        if !keep(j) {
            continue;
        }
        let name = format!("q{j}");
        for r in 0..=len - j {
            b.arrow(slots[r], slots[r + j - 1], switches.symbol(&name));
        }
    }
}

/// `Sp(2, R)` object `(K^(1/2), q_2, 1)`.
pub fn build_fuchsian(curve: Curve, spin: &str, switches: &Switches) -> Result<GradedHiggsBundle> {
    check_spin_name(spin)?;
    let mut b = Builder::new(GroupTag::SpReal(1), curve, "fuchsian");
    let s = LineBundle::spin(spin);
    let v = b.line(Side::V, s.clone());
    let w = b.line(Side::W, s.dual());
    b.pair(v, w);
    b.arrow(v, w, switches.symbol("q2"));
    b.arrow(w, v, SectionSymbol::unit());
    b.parts.label = Some(i64::from(curve.genus()) - 1);
    b.finish()
}

/// Principal `SL(n, R)` object on `K^((n-1)/2) + ... + K^((1-n)/2)`.
pub fn build_hitchin_sl(
    curve: Curve,
    n: u32,
    spin: Option<&str>,
    switches: &Switches,
) -> Result<GradedHiggsBundle> {
    if n < 2 {
        return Err(Error::Bound { what: "n", value: i64::from(n), min: 2, max: i64::MAX });
    }
    let chain = principal_chain(n, spin)?;
    let mut b = Builder::new(GroupTag::SlReal(n), curve, "hitchin-sl");
    let slots: Vec<usize> = chain.into_iter().map(|l| b.line(Side::V, l)).collect();
    let len = slots.len();
    for r in 0..len / 2 {
        b.pair(slots[r], slots[len - 1 - r]);
    }
    principal_arrows(&mut b, &slots, switches, |_| true);
    b.finish()
}

/// Lay out a principal chain with even positions on `even_side`.
fn split_chain(
    b: &mut Builder,
    chain: Vec<LineBundle>,
    even_side: Side,
    odd_side: Side,
) -> Vec<usize> {
    let slots: Vec<usize> = chain
        .into_iter()
        .enumerate()
        .map(|(r, l)| b.line(if r % 2 == 0 { even_side } else { odd_side }, l))
        .collect();
    let len = slots.len();
    for r in 0..len / 2 {
        b.pair(slots[r], slots[len - 1 - r]);
    }
    slots
}

/// `SO0(n, n+1)` Hitchin object: `W = K^n + K^(n-2) + ... + K^-n`,
/// `V = K^(n-1) + ... + K^(1-n)`.
pub fn build_hitchin_so(curve: Curve, n: u32, switches: &Switches) -> Result<GradedHiggsBundle> {
    if n < 1 {
        return Err(Error::Bound { what: "n", value: 0, min: 1, max: i64::MAX });
    }
    let mut b = Builder::new(GroupTag::so0(n, n + 1), curve, "hitchin-so");
    let chain = principal_chain(2 * n + 1, None)?;
    let slots = split_chain(&mut b, chain, Side::W, Side::V);
    principal_arrows(&mut b, &slots, switches, |j| j % 2 == 0);
    b.parts.label = Some(i64::from(n) * curve.canonical_degree());
    b.finish()
}

/// `Sp(2n, R)` Hitchin object for a chosen spin root.
pub fn build_hitchin_sp(
    curve: Curve,
    n: u32,
    spin: &str,
    switches: &Switches,
) -> Result<GradedHiggsBundle> {
    if n < 1 {
        return Err(Error::Bound { what: "n", value: 0, min: 1, max: i64::MAX });
    }
    let mut b = Builder::new(GroupTag::SpReal(n), curve, "hitchin-sp");
    let chain = principal_chain(2 * n, Some(spin))?;
    let slots = split_chain(&mut b, chain, Side::V, Side::W);
    principal_arrows(&mut b, &slots, switches, |j| j % 2 == 0);
    b.parts.label = Some(i64::from(n) * (i64::from(curve.genus()) - 1));
    b.finish()
}

/// `SO0(n, n)` Hitchin object: the `SO0(n, n-1)` one with `W = W_0 + O` and
/// a single Pfaffian entry `qPf: K^(1-n) -> K`.
pub fn build_hitchin_pso_nn(curve: Curve, n: u32, switches: &Switches) -> Result<GradedHiggsBundle> {
    if n < 2 {
        return Err(Error::Bound { what: "n", value: i64::from(n), min: 2, max: i64::MAX });
    }
    let mut b = Builder::new(GroupTag::so0(n, n), curve, "hitchin-pso");
    let chain = principal_chain(2 * n - 1, None)?;
    let slots = split_chain(&mut b, chain, Side::V, Side::W);
    principal_arrows(&mut b, &slots, switches, |j| j % 2 == 0);
    let trivial = b.line(Side::W, LineBundle::trivial());
    b.arrow(trivial, slots[slots.len() - 1], switches.symbol("qPf"));
    b.finish()
}

/// The `Psi_d` object: `V` and `W_0` from the `SO0(n, n-1)` Hitchin object,
/// `W = W_0 + M + M^-1`, `nu: K^(1-n) -> M`, `mu: K^(1-n) -> M^-1`.
pub fn build_psi_d(curve: Curve, n: u32, d: i64, switches: &Switches) -> Result<GradedHiggsBundle> {
    if n < 1 {
        return Err(Error::Bound { what: "n", value: 0, min: 1, max: i64::MAX });
    }
    let max = i64::from(n) * curve.canonical_degree();
    if d <= 0 || d > max {
        return Err(Error::Bound { what: "d", value: d, min: 1, max });
    }
    if !switches.is_on("mu") {
        return Err(Error::Precondition("mu must be nonzero".into()));
    }
    let mut b = Builder::new(GroupTag::so0(n, n + 1), curve, "psi-d");
    b.parts.degrees.insert("M".into(), d);
    b.parts.label = Some(d);
    let chain = principal_chain(2 * n - 1, None)?;
    let slots = split_chain(&mut b, chain, Side::V, Side::W);
    principal_arrows(&mut b, &slots, switches, |j| j % 2 == 0);
    let m = b.line(Side::W, LineBundle::var("M"));
    let m_inv = b.line(Side::W, LineBundle::var("M").dual());
    b.pair(m, m_inv);
    let last = slots[slots.len() - 1];
    b.arrow(m, last, switches.symbol("nu"));
    b.arrow(m_inv, last, switches.symbol("mu"));
    b.finish()
}

/// The orthogonal rank `n - 1` bundle `W_0` of a maximal `SO0(2, n)` object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum W0Descriptor {
    /// `M + M^-1` with `deg M = degree`, padded with trivial summands.
    Split { degree: i64 },
    /// A rank 2 block with determinant the torsion bundle `torsion`, padded
    /// with trivial summands.
    Prym { torsion: String, class: F2Class, sw2: bool },
    /// `O^(n-1)`.
    Trivial,
}

/// Maximal `SO0(2, n)` normal form: `V = KI + K^-1 I`, `W = I + W_0`,
/// `gamma = (1, 0)`, `beta = (q_2, beta_0)`.
pub fn build_maximal_so2n(
    curve: Curve,
    n: u32,
    w0: &W0Descriptor,
    switches: &Switches,
) -> Result<GradedHiggsBundle> {
    if n < 3 {
        return Err(Error::Bound { what: "n", value: i64::from(n), min: 3, max: i64::MAX });
    }
    let mut b = Builder::new(GroupTag::so0(2, n), curve, "maximal-so2n");
    b.parts.label = Some(curve.canonical_degree());
    let torsion = match w0 {
        W0Descriptor::Prym { torsion, class, .. } => {
            if !torsion.starts_with('I') || class.genus() != curve.genus() {
                return Err(Error::Parse(format!("bad torsion declaration `{torsion}`")));
            }
            if class.is_zero() {
                return Err(Error::Precondition("a Prym block needs sw1 != 0".into()));
            }
            b.parts.torsion_classes.insert(torsion.clone(), *class);
            LineBundle::torsion(torsion)
        }
        _ => LineBundle::trivial(),
    };
    let ki = b.line(Side::V, LineBundle::k(1).tensor(&torsion));
    let kinv_i = b.line(Side::V, LineBundle::k(-1).tensor(&torsion));
    b.pair(ki, kinv_i);
    let i_slot = b.line(Side::W, torsion.clone());
    b.arrow(i_slot, ki, SectionSymbol::unit());
    b.arrow(i_slot, kinv_i, switches.symbol("q2"));
    let padding = match w0 {
        W0Descriptor::Split { degree } => {
            b.parts.degrees.insert("M".into(), *degree);
            let m = b.line(Side::W, LineBundle::var("M"));
            let m_inv = b.line(Side::W, LineBundle::var("M").dual());
            b.pair(m, m_inv);
            b.arrow(m, kinv_i, switches.symbol("nu"));
            b.arrow(m_inv, kinv_i, switches.symbol("mu"));
            n - 3
        }
        W0Descriptor::Prym { sw2, .. } => {
            let block = b.push(Summand { side: Side::W, bundle: torsion, rank: 2, sw2: Some(*sw2) });
            b.arrow(block, kinv_i, switches.symbol("beta0"));
            n - 3
        }
        W0Descriptor::Trivial => {
            for _ in 0..n - 1 {
                let o = b.line(Side::W, LineBundle::trivial());
                b.arrow(o, kinv_i, switches.symbol("beta0"));
            }
            0
        }
    };
    for _ in 0..padding {
        b.line(Side::W, LineBundle::trivial());
    }
    b.finish()
}

/// `Sp(2n, R)` object `(I_1 K^(1/2) + ... + I_n K^(1/2), q_2 + ..., 1 + ...)`.
/// A zero class gives an untwisted summand; class `j` is named `I{j+1}`.
pub fn build_twisted_fuchsian_sp(
    curve: Curve,
    classes: &[F2Class],
    spin: &str,
    switches: &Switches,
) -> Result<GradedHiggsBundle> {
    check_spin_name(spin)?;
    let n = classes.len() as u32;
    if n == 0 {
        return Err(Error::Bound { what: "n", value: 0, min: 1, max: i64::MAX });
    }
    let mut b = Builder::new(GroupTag::SpReal(n), curve, "twisted-fuchsian");
    b.parts.label = Some(i64::from(n) * (i64::from(curve.genus()) - 1));
    let mut twists = Vec::new();
    for (j, class) in classes.iter().enumerate() {
        if class.genus() != curve.genus() {
            return Err(Error::DimensionMismatch { left: curve.genus(), right: class.genus() });
        }
        if class.is_zero() {
            twists.push(LineBundle::trivial());
        } else {
            let name = format!("I{}", j + 1);
            b.parts.torsion_classes.insert(name.clone(), *class);
            twists.push(LineBundle::torsion(&name));
        }
    }
    let s = LineBundle::spin(spin);
    let vs: Vec<usize> = twists.iter().map(|t| b.line(Side::V, t.tensor(&s))).collect();
    let ws: Vec<usize> = twists.iter().map(|t| b.line(Side::W, t.tensor(&s).dual())).collect();
    for (&v, &w) in vs.iter().zip(&ws) {
        b.pair(v, w);
        b.arrow(v, w, switches.symbol("q2"));
        b.arrow(w, v, SectionSymbol::unit());
    }
    b.finish()
}

/// `SO(1, 2)` object with `sw1 = 0`: `M + O + M^-1` with
/// `mu: M -> O -> M^-1` and `nu: M^-1 -> O -> M`.
pub fn build_so12(curve: Curve, d: i64, switches: &Switches) -> Result<GradedHiggsBundle> {
    let mut b = Builder::new(
        GroupTag::So { p: 1, q: 2, identity_component: false },
        curve,
        "so12",
    );
    b.parts.degrees.insert("M".into(), d);
    b.parts.label = Some(d);
    let m = b.line(Side::W, LineBundle::var("M"));
    let o = b.line(Side::V, LineBundle::trivial());
    let m_inv = b.line(Side::W, LineBundle::var("M").dual());
    b.pair(m, m_inv);
    b.arrow(m_inv, o, switches.symbol("mu"));
    b.arrow(m, o, switches.symbol("nu"));
    b.finish()
}

fn so34_eta_builder(curve: Curve, d: i64, switches: &Switches, family: &str) -> Result<Builder> {
    let max = 3 * curve.canonical_degree();
    if d <= 0 || d > max {
        return Err(Error::Bound { what: "d", value: d, min: 1, max });
    }
    if !switches.is_on("mu") {
        return Err(Error::Precondition("mu must be nonzero".into()));
    }
    let mut b = Builder::new(GroupTag::so0(3, 4), curve, family);
    b.parts.degrees.insert("M".into(), d);
    b.parts.label = Some(d);
    let v = split_pairs(&mut b, Side::V, &[LineBundle::k(2), LineBundle::trivial(), LineBundle::k(-2)]);
    let m = LineBundle::var("M");
    let w = split_pairs(&mut b, Side::W, &[m.clone(), LineBundle::k(1), LineBundle::k(-1), m.dual()]);
    b.arrow(w[1], v[0], SectionSymbol::unit());
    b.arrow(w[2], v[1], SectionSymbol::unit());
    b.arrow(w[3], v[2], switches.symbol("mu"));
    Ok(b)
}

/// Push summands and pair position `r` with position `len - 1 - r`.
fn split_pairs(b: &mut Builder, side: Side, bundles: &[LineBundle]) -> Vec<usize> {
    let slots: Vec<usize> = bundles.iter().map(|l| b.line(side, l.clone())).collect();
    let len = slots.len();
    for r in 0..len / 2 {
        b.pair(slots[r], slots[len - 1 - r]);
    }
    slots
}

/// `SO0(3, 4)` object `V = K^2 + O + K^-2`, `W = M + K + K^-1 + M^-1`.
pub fn build_so34_eta(curve: Curve, d: i64, switches: &Switches) -> Result<GradedHiggsBundle> {
    so34_eta_builder(curve, d, switches, "so34-eta")?.finish()
}

/// The `SO0(3, 5)` deformation: the `SO0(3, 4)` object with an extra
/// trivial `W` summand and the extension terms `eps: O -> M^-1`,
/// `-eps: M -> O`. Summand order is `K^2, O, K^-2 | M, K, K^-1, M^-1, O`.
pub fn build_deform_so35(curve: Curve, d: i64, switches: &Switches) -> Result<GradedHiggsBundle> {
    let mut b = so34_eta_builder(curve, d, switches, "deform-so35")?;
    b.parts.group = GroupTag::so0(3, 5);
    let o = b.line(Side::W, LineBundle::trivial());
    if switches.is_on("eps") {
        b.extra(6, o, "eps");
    }
    b.finish()
}

/// Retag as `SL(N, C)` with the same quiver.
pub fn associated_sl(h: &GradedHiggsBundle) -> Result<GradedHiggsBundle> {
    if let GroupTag::SlComplex(_) = h.group() {
        return Err(Error::Type("object is already an SL(N,C) bundle".into()));
    }
    let mut parts = h.parts.clone();
    parts.group = GroupTag::SlComplex(h.total_rank());
    parts.family = Some(format!("associated-sl({})", h.family().unwrap_or("?")));
    GradedHiggsBundle::from_parts(parts)
}

fn expect_so23(h: &GradedHiggsBundle) -> Result<()> {
    if h.group() == GroupTag::so0(2, 3) {
        Ok(())
    } else {
        Err(Error::Type(format!("expected an SO0(2,3) bundle, got {}", h.group())))
    }
}

/// Append `count` trivial self-paired `W` summands with zero Higgs rows.
pub fn append_trivial_w(h: &GradedHiggsBundle, count: u32) -> Result<GradedHiggsBundle> {
    let GroupTag::So { p, q, identity_component } = h.group() else {
        return Err(Error::Type(format!("expected an SO(p,q) bundle, got {}", h.group())));
    };
    let mut parts = h.parts.clone();
    parts.group = GroupTag::So { p, q: q + count, identity_component };
    let sigma = parts.pairing.as_mut().expect("SO bundles are paired");
    for _ in 0..count {
        let i = parts.summands.len();
        parts.summands.push(Summand::line(Side::W, LineBundle::trivial()));
        sigma.push(i);
    }
    GradedHiggsBundle::from_parts(parts)
}

/// `SO0(2, 3) -> SO0(2, n)`: append `n - 3` trivial `W` summands.
pub fn embed_so23_to_so2n(h: &GradedHiggsBundle, n: u32) -> Result<GradedHiggsBundle> {
    expect_so23(h)?;
    if n < 3 {
        return Err(Error::Bound { what: "n", value: i64::from(n), min: 3, max: i64::MAX });
    }
    let out = append_trivial_w(h, n - 3)?;
    Ok(out.with_family(Some(format!("embed-so2n({})", h.family().unwrap_or("?")))))
}

/// `SO0(2, 3) -> SO0(3, 3)`: prepend one trivial `V` summand.
pub fn embed_so23_to_so33(h: &GradedHiggsBundle) -> Result<GradedHiggsBundle> {
    expect_so23(h)?;
    let mut parts = h.parts.clone();
    parts.group = GroupTag::so0(3, 3);
    parts.family = Some(format!("embed-so33({})", h.family().unwrap_or("?")));
    parts.summands.insert(0, Summand::line(Side::V, LineBundle::trivial()));
    let old = parts.pairing.take().expect("SO bundles are paired");
    let mut sigma = vec![0];
    sigma.extend(old.iter().map(|j| j + 1));
    parts.pairing = Some(sigma);
    for e in &mut parts.higgs {
        e.target += 1;
        e.source += 1;
    }
    for e in &mut parts.dolbeault {
        e.target += 1;
        e.source += 1;
    }
    GradedHiggsBundle::from_parts(parts)
}

fn torsion_sw(h: &GradedHiggsBundle, bundle: &LineBundle) -> Result<F2Class> {
    torsion_class(h.genus(), &h.parts.torsion_classes, bundle)
}

/// Whitney sum of the orthogonal pieces of a set of self-paired-closed summands:
/// hyperbolic pairs `L + L^-1` give `(0, deg L mod 2)`, self-paired lines give
/// `(sw1(J), 0)`, blocks give their declared classes.
fn orthogonal_sw(h: &GradedHiggsBundle, members: &[usize]) -> Result<SwPair> {
    let sigma = h.pairing().ok_or_else(|| Error::Type("unpaired bundle".into()))?;
    let mut acc = SwPair::trivial(h.genus());
    for &i in members {
        let s = &h.summands()[i];
        let piece = if sigma[i] == i {
            let sw1 = torsion_sw(h, &s.bundle)?;
            let sw2 = if s.rank > 1 {
                s.sw2.ok_or_else(|| Error::InvalidStructure(format!("block {i} has no sw2")))?
            } else {
                false
            };
            SwPair { sw1, sw2 }
        } else if i < sigma[i] {
            if !members.contains(&sigma[i]) {
                return Err(Error::InvalidStructure(format!("summand {i} is split from its partner")));
            }
            SwPair { sw1: F2Class::zero(h.genus()), sw2: h.degree(i).rem_euclid(2) == 1 }
        } else {
            continue;
        };
        acc = acc.whitney_sum(piece)?;
    }
    Ok(acc)
}

/// Stiefel-Whitney classes of `W_0` for a maximal `SO0(2, n)` object: `W`
/// minus the summand hit by the unit from the positive-degree `V` summand.
pub fn maximal_so2n_sw(h: &GradedHiggsBundle) -> Result<SwPair> {
    let GroupTag::So { p: 2, .. } = h.group() else {
        return Err(Error::Type(format!("expected an SO0(2,n) bundle, got {}", h.group())));
    };
    let top = (0..h.len())
        .find(|&i| h.summands()[i].side == Side::V && h.degree(i) > 0)
        .ok_or_else(|| Error::Type("no positive-degree V summand".into()))?;
    let i_slot = h
        .higgs()
        .iter()
        .find(|e| e.source == top && e.symbol.kind == SectionKind::Unit)
        .map(|e| e.target)
        .ok_or_else(|| Error::Type("gamma is not a unit; object is not maximal".into()))?;
    let w0: Vec<usize> = (0..h.len())
        .filter(|&i| h.summands()[i].side == Side::W && i != i_slot)
        .collect();
    orthogonal_sw(h, &w0)
}

/// Stiefel-Whitney classes of `V * K^(-1/2)` for an `Sp(2n, R)` object whose
/// `V` summands are 2-torsion twists of one spin root.
pub fn sp_orthogonal_sw(h: &GradedHiggsBundle) -> Result<SwPair> {
    let GroupTag::SpReal(_) = h.group() else {
        return Err(Error::Type(format!("expected an Sp(2n,R) bundle, got {}", h.group())));
    };
    let mut classes = Vec::new();
    for s in h.summands().iter().filter(|s| s.side == Side::V) {
        let spin = s
            .bundle
            .factors()
            .find(|(sym, _)| sym.kind == SymbolKind::Spin)
            .map(|(sym, _)| sym.name.clone())
            .ok_or_else(|| Error::Type(format!("`{}` is not a twisted spin root", s.bundle)))?;
        let twist = s.bundle.tensor(&LineBundle::spin(&spin).dual());
        classes.push(torsion_sw(h, &twist)?);
    }
    crate::f2cohomology::total_sw_of_sum(h.genus(), &classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(g: u32) -> Curve {
        Curve::new(g).unwrap()
    }

    fn on() -> Switches {
        Switches::all_on()
    }

    fn bundles(h: &GradedHiggsBundle) -> Vec<String> {
        h.summands().iter().map(|s| s.bundle.to_string()).collect()
    }

    fn sides(h: &GradedHiggsBundle, side: Side) -> Vec<String> {
        h.summands()
            .iter()
            .filter(|s| s.side == side)
            .map(|s| s.bundle.to_string())
            .collect()
    }

    #[test]
    fn group_tag_strings() {
        for tag in [
            GroupTag::SlReal(3),
            GroupTag::SpReal(2),
            GroupTag::so0(2, 3),
            GroupTag::So { p: 1, q: 2, identity_component: false },
            GroupTag::SlComplex(5),
        ] {
            assert_eq!(tag.to_string().parse::<GroupTag>().unwrap(), tag);
        }
        assert_eq!(GroupTag::SpReal(2).to_string(), "Sp(4,R)");
        assert!("Sp(3,R)".parse::<GroupTag>().is_err());
    }

    #[test]
    fn fuchsian() {
        let h = build_fuchsian(curve(2), "S", &on()).unwrap();
        assert_eq!(h.degree(0), 1);
        assert_eq!(h.entry(1, 0), Some(&SectionSymbol::unit()));
        assert_eq!(h.entry(0, 1), Some(&SectionSymbol::named("q2")));
        let off = build_fuchsian(curve(2), "S", &on().off("q2")).unwrap();
        assert_eq!(off.entry(0, 1), Some(&SectionSymbol::zero("q2")));
        assert!(build_fuchsian(curve(2), "T", &on()).is_err());
    }

    #[test]
    fn hitchin_sl3() {
        let h = build_hitchin_sl(curve(2), 3, None, &on().off("q2").off("q3")).unwrap();
        assert_eq!(bundles(&h), ["K", "O", "K^-1"]);
        assert_eq!(h.entry(1, 0), Some(&SectionSymbol::unit()));
        assert_eq!(h.entry(2, 1), Some(&SectionSymbol::unit()));
        assert_eq!(h.arrows().count(), 2);
        // Symmetric power of the Fuchsian chain at the zero-differential locus.
        let f = build_fuchsian(curve(2), "S", &on().off("q2")).unwrap();
        let s = LineBundle::spin("S");
        let sym2: Vec<LineBundle> =
            [(0, 0), (0, 1), (1, 1)].iter().map(|&(a, b)| {
                f.summands()[a].bundle.tensor(&f.summands()[b].bundle)
            }).collect();
        assert_eq!(sym2, [s.pow(2), LineBundle::trivial(), s.pow(-2)]);
        assert_eq!(sym2.iter().map(|l| l.to_string()).collect::<Vec<_>>(), bundles(&h));
    }

    #[test]
    fn hitchin_sl2_is_fuchsian_lift() {
        let h = build_hitchin_sl(curve(2), 2, Some("S"), &on()).unwrap();
        assert_eq!(bundles(&h), ["S", "K^-1*S"]);
        assert_eq!(h.entry(0, 1), Some(&SectionSymbol::named("q2")));
        assert_eq!(h.entry(1, 0), Some(&SectionSymbol::unit()));
        assert_eq!(build_hitchin_sl(curve(2), 4, None, &on()), Err(Error::MissingSpin));
    }

    #[test]
    fn hitchin_sl_symmetry() {
        for n in 2..=7 {
            let h = build_hitchin_sl(curve(3), n, Some("S"), &on()).unwrap();
            let sigma = h.pairing().unwrap();
            for e in h.higgs() {
                let m = h.entry(sigma[e.source], sigma[e.target]).unwrap();
                assert_eq!(m, &e.symbol);
            }
        }
    }

    #[test]
    fn hitchin_so() {
        let h = build_hitchin_so(curve(2), 2, &on()).unwrap();
        assert_eq!(sides(&h, Side::V), ["K", "K^-1"]);
        assert_eq!(sides(&h, Side::W), ["K^2", "O", "K^-2"]);
        let h1 = build_hitchin_so(curve(2), 1, &on()).unwrap();
        assert_eq!(sides(&h1, Side::V), ["O"]);
        assert_eq!(sides(&h1, Side::W), ["K", "K^-1"]);
        assert_eq!(h1.group(), GroupTag::so0(1, 2));
    }

    #[test]
    fn hitchin_sp() {
        let h = build_hitchin_sp(curve(2), 3, "S", &on()).unwrap();
        assert_eq!(sides(&h, Side::V), ["K^2*S", "S", "K^-2*S"]);
        let off = on().off("q2").off("q4").off("q6");
        let h1 = build_hitchin_sp(curve(2), 1, "S", &on()).unwrap();
        let f = build_fuchsian(curve(2), "S", &on()).unwrap();
        assert_eq!(h1.summands(), f.summands());
        assert_eq!(h1.higgs(), f.higgs());
        let h0 = build_hitchin_sp(curve(2), 3, "S", &off).unwrap();
        assert_eq!(h0.arrows().count(), 5);
    }

    #[test]
    fn hitchin_pso() {
        let h = build_hitchin_pso_nn(curve(2), 2, &on()).unwrap();
        assert_eq!(sides(&h, Side::V), ["K", "K^-1"]);
        assert_eq!(sides(&h, Side::W), ["O", "O"]);
        assert_eq!(h.entry(3, 2), Some(&SectionSymbol::named("qPf")));
        let off = build_hitchin_pso_nn(curve(2), 3, &on().off("qPf")).unwrap();
        let last_w = off.len() - 1;
        assert!(off.higgs().iter().all(|e| {
            (e.target != last_w && e.source != last_w) || !e.symbol.is_nonzero()
        }));
    }

    #[test]
    fn psi_d() {
        let h = build_psi_d(curve(2), 2, 1, &on()).unwrap();
        assert_eq!(sides(&h, Side::V), ["K", "K^-1"]);
        assert_eq!(sides(&h, Side::W), ["O", "M", "M^-1"]);
        assert_eq!(h.degree(3), 1);
        assert!(matches!(
            build_psi_d(curve(2), 2, 5, &on()),
            Err(Error::Bound { what: "d", .. })
        ));
        assert!(matches!(build_psi_d(curve(2), 2, 0, &on()), Err(Error::Bound { .. })));
        assert!(matches!(
            build_psi_d(curve(2), 2, 2, &on().off("mu")),
            Err(Error::Precondition(_))
        ));
        let top = build_psi_d(curve(2), 3, 6, &on()).unwrap();
        let hit = build_hitchin_so(curve(2), 3, &on()).unwrap();
        let mut a = top.degrees().to_vec();
        let mut b = hit.degrees().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        // mu is nowhere vanishing at the top degree, so the ambient has degree 0.
        let mu = top.higgs().iter().find(|e| e.symbol.name == "mu").unwrap();
        assert_eq!(top.degree(mu.target) - top.degree(mu.source) + 2, 0);
    }

    #[test]
    fn maximal_so2n() {
        let h = build_maximal_so2n(curve(2), 3, &W0Descriptor::Split { degree: 2 }, &on()).unwrap();
        assert_eq!(sides(&h, Side::V), ["K", "K^-1"]);
        assert_eq!(sides(&h, Side::W), ["O", "M", "M^-1"]);
        let t = build_maximal_so2n(curve(2), 4, &W0Descriptor::Trivial, &on().off("beta0")).unwrap();
        assert_eq!(sides(&t, Side::W), ["O", "O", "O", "O"]);
        assert_eq!(t.arrows().count(), 4);
        assert_eq!(maximal_so2n_sw(&t).unwrap(), SwPair::trivial(2));
        let class = F2Class::a(2, 1);
        let p = build_maximal_so2n(
            curve(2),
            3,
            &W0Descriptor::Prym { torsion: "I".into(), class, sw2: true },
            &on(),
        )
        .unwrap();
        assert_eq!(sides(&p, Side::V), ["K*I", "K^-1*I"]);
        assert_eq!(maximal_so2n_sw(&p).unwrap(), SwPair { sw1: class, sw2: true });
    }

    #[test]
    fn twisted_fuchsian() {
        let z = F2Class::zero(2);
        let h = build_twisted_fuchsian_sp(curve(2), &[z, z, z], "S", &on()).unwrap();
        let deg_v: i64 = (0..h.len()).filter(|&i| h.summands()[i].side == Side::V).map(|i| h.degree(i)).sum();
        assert_eq!(deg_v, 3);
        let classes = [F2Class::a(2, 1), F2Class::b(2, 1), z];
        let t = build_twisted_fuchsian_sp(curve(2), &classes, "S", &on()).unwrap();
        assert_eq!(
            sp_orthogonal_sw(&t).unwrap(),
            crate::f2cohomology::total_sw_of_sum(2, &classes).unwrap()
        );
        let one = build_twisted_fuchsian_sp(curve(2), &[z], "S", &on()).unwrap();
        let f = build_fuchsian(curve(2), "S", &on()).unwrap();
        assert_eq!(one.summands(), f.summands());
        assert_eq!(one.higgs(), f.higgs());
    }

    #[test]
    fn associated_sl_examples() {
        let f = build_fuchsian(curve(2), "S", &on()).unwrap();
        let a = associated_sl(&f).unwrap();
        assert_eq!(a.group(), GroupTag::SlComplex(2));
        assert_eq!(a.higgs(), f.higgs());
        assert!(associated_sl(&a).is_err());
        let z = F2Class::zero(2);
        let off = on().off("q2");
        let t = build_twisted_fuchsian_sp(curve(2), &[z, z], "S", &off).unwrap();
        let mut parts = t.into_parts();
        for e in &mut parts.higgs {
            e.symbol = SectionSymbol::zero(&e.symbol.name);
        }
        let zero = GradedHiggsBundle::from_parts(parts).unwrap();
        assert_eq!(associated_sl(&zero).unwrap().arrows().count(), 0);
    }

    #[test]
    fn so12_chain() {
        let h = build_so12(curve(2), 1, &on()).unwrap();
        assert_eq!(bundles(&h), ["M", "O", "M^-1"]);
        assert_eq!(h.entry(1, 0).unwrap().name, "mu");
        assert_eq!(h.entry(2, 1).unwrap().name, "mu");
        assert_eq!(h.entry(0, 1).unwrap().name, "nu");
        assert_eq!(h.entry(1, 2).unwrap().name, "nu");
        // mu lives in M^-1 K, which has negative degree past 2g - 2.
        assert!(matches!(build_so12(curve(2), 3, &on()), Err(Error::InvalidStructure(_))));
    }

    #[test]
    fn embeddings() {
        let h = build_maximal_so2n(curve(2), 3, &W0Descriptor::Split { degree: 1 }, &on()).unwrap();
        let e = embed_so23_to_so2n(&h, 5).unwrap();
        assert_eq!(e.group(), GroupTag::so0(2, 5));
        assert_eq!(e.len(), 7);
        assert_eq!(maximal_so2n_sw(&e).unwrap().sw2, true);
        let j = embed_so23_to_so33(&build_hitchin_so(curve(2), 2, &on()).unwrap()).unwrap();
        let pso = build_hitchin_pso_nn(curve(2), 3, &on()).unwrap();
        let mut a = j.degrees().to_vec();
        let mut b = pso.degrees().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert!(matches!(embed_so23_to_so33(&pso), Err(Error::Type(_))));
    }

    #[test]
    fn deform_object() {
        let h = build_deform_so35(curve(2), 2, &on()).unwrap();
        assert_eq!(h.group(), GroupTag::so0(3, 5));
        assert_eq!(h.dolbeault().len(), 2);
        assert!(h.dolbeault().iter().any(|e| e.target == 7 && e.source == 3));
        let eta = build_so34_eta(curve(2), 2, &on()).unwrap();
        let emb = append_trivial_w(&eta, 1).unwrap();
        assert_eq!(emb.summands(), h.summands());
        assert_eq!(emb.higgs(), h.higgs());
    }

    #[test]
    fn conflicting_mirror_is_rejected() {
        let h = build_so12(curve(2), 1, &on()).unwrap();
        let mut parts = h.into_parts();
        parts.higgs.retain(|e| !(e.target == 1 && e.source == 0));
        parts.higgs.push(HiggsEntry { target: 1, source: 0, symbol: SectionSymbol::named("other") });
        assert!(matches!(GradedHiggsBundle::from_parts(parts), Err(Error::InvalidStructure(_))));
    }

    #[test]
    fn permutation_roundtrip() {
        let h = build_psi_d(curve(2), 2, 3, &on()).unwrap();
        let perm = [4, 0, 3, 1, 2];
        let p = h.permuted(&perm).unwrap();
        let mut inv = [0usize; 5];
        for (i, &j) in perm.iter().enumerate() {
            inv[j] = i;
        }
        assert_eq!(p.permuted(&inv).unwrap(), h);
        assert!(h.permuted(&[0, 0, 1, 2, 3]).is_err());
    }
}
