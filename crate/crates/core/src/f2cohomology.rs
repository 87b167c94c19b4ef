//! `H^1(S, Z/2)` of a closed genus-g surface in a fixed symplectic basis
//! `a_1, b_1, ..., a_g, b_g`, Stiefel-Whitney arithmetic for orthogonal
//! bundles, and double-cover / Prym component descriptors.
//!
//! Bit `2i` of a class is the `a_{i+1}` coordinate and bit `2i + 1` the
//! `b_{i+1}` coordinate. The string form lists the coordinates in that order,
//! so `"1000"` is `a_1` and `"0100"` is `b_1` at genus 2.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::linebundle::{DegreeContext, LineBundle, SymbolKind};

/// Largest genus whose classes fit in the bit vector.
pub const MAX_GENUS: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct F2Class {
    genus: u32,
    bits: u64,
}

impl F2Class {
    pub fn zero(genus: u32) -> Self {
        F2Class { genus, bits: 0 }
    }

    pub fn from_bits(genus: u32, bits: u64) -> Result<Self> {
        if !(1..=MAX_GENUS).contains(&genus) {
            return Err(Error::Bound {
                what: "genus",
                value: i64::from(genus),
                min: 1,
                max: i64::from(MAX_GENUS),
            });
        }
        if genus < MAX_GENUS && bits >> (2 * genus) != 0 {
            return Err(Error::Parse("class has bits beyond 2g".into()));
        }
        Ok(F2Class { genus, bits })
    }

    /// The basis class `a_i` (1-based).
    pub fn a(genus: u32, i: u32) -> Self {
        assert!(i >= 1 && i <= genus);
        F2Class { genus, bits: 1 << (2 * (i - 1)) }
    }

    /// The basis class `b_i` (1-based).
    pub fn b(genus: u32, i: u32) -> Self {
        assert!(i >= 1 && i <= genus);
        F2Class { genus, bits: 1 << (2 * (i - 1) + 1) }
    }

    pub fn genus(self) -> u32 {
        self.genus
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn coord(self, k: u32) -> bool {
        self.bits >> k & 1 == 1
    }

    pub fn add(self, other: F2Class) -> Result<F2Class> {
        same_genus(self, other)?;
        Ok(F2Class { genus: self.genus, bits: self.bits ^ other.bits })
    }

    /// Cup product into `H^2 = Z/2`.
    pub fn cup(self, other: F2Class) -> Result<bool> {
        same_genus(self, other)?;
        // Swap each (a_i, b_i) pair of `other`, then take the parity of the overlap.
        const A_MASK: u64 = 0x5555_5555_5555_5555;
        let swapped = ((other.bits & A_MASK) << 1) | ((other.bits >> 1) & A_MASK);
        Ok((self.bits & swapped).count_ones() % 2 == 1)
    }

    /// All `2^(2g)` classes, ordered by their string form.
    pub fn all(genus: u32) -> impl Iterator<Item = F2Class> {
        let len = 2 * genus;
        (0..1u64 << len).map(move |u| F2Class { genus, bits: reverse_bits(u, len) })
    }
}

fn reverse_bits(u: u64, len: u32) -> u64 {
    if len == 0 {
        0
    } else {
        u.reverse_bits() >> (64 - len)
    }
}

fn same_genus(a: F2Class, b: F2Class) -> Result<()> {
    if a.genus == b.genus {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left: a.genus, right: b.genus })
    }
}

impl fmt::Display for F2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..2 * self.genus {
            f.write_str(if self.coord(k) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for F2Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s.len() % 2 != 0 {
            return Err(Error::Parse(alloc::format!("class `{s}` must have even positive length")));
        }
        let mut bits = 0u64;
        for (k, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << k,
                _ => return Err(Error::Parse(alloc::format!("bad bit `{c}` in class `{s}`"))),
            }
        }
        F2Class::from_bits((s.len() / 2) as u32, bits)
    }
}

/// First and second Stiefel-Whitney classes of an orthogonal bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SwPair {
    pub sw1: F2Class,
    pub sw2: bool,
}

impl SwPair {
    pub fn trivial(genus: u32) -> Self {
        SwPair { sw1: F2Class::zero(genus), sw2: false }
    }

    /// Whitney sum: `w(A + B) = w(A) w(B)`.
    pub fn whitney_sum(self, other: SwPair) -> Result<SwPair> {
        Ok(SwPair {
            sw1: self.sw1.add(other.sw1)?,
            sw2: self.sw2 ^ other.sw2 ^ self.sw1.cup(other.sw1)?,
        })
    }

    /// Every pair at the given genus, ordered.
    pub fn all(genus: u32) -> impl Iterator<Item = SwPair> {
        F2Class::all(genus)
            .flat_map(|sw1| [false, true].into_iter().map(move |sw2| SwPair { sw1, sw2 }))
    }
}

/// Stiefel-Whitney classes of `I_1 + ... + I_n` where `sw1(I_j)` are the inputs.
pub fn total_sw_of_sum(genus: u32, classes: &[F2Class]) -> Result<SwPair> {
    classes.iter().try_fold(SwPair::trivial(genus), |acc, c| {
        acc.whitney_sum(SwPair { sw1: *c, sw2: false })
    })
}

/// Result of the exhaustive reachability search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub genus: u32,
    pub n: u32,
    /// Lexicographically smallest witness tuple for each reachable pair.
    pub witnesses: BTreeMap<SwPair, Vec<F2Class>>,
    /// True when every pair is reached.
    pub complete: bool,
}

impl SurjectivityReport {
    pub fn unreached(&self) -> Vec<SwPair> {
        SwPair::all(self.genus).filter(|p| !self.witnesses.contains_key(p)).collect()
    }
}

/// Search all tuples `(I_1, ..., I_n)` of classes for the pairs they realize.
pub fn sw_surjectivity_witnesses(genus: u32, n: u32) -> Result<SurjectivityReport> {
    if !(2..=3).contains(&genus) {
        return Err(Error::Bound { what: "genus", value: i64::from(genus), min: 2, max: 3 });
    }
    if !(1..=3).contains(&n) {
        return Err(Error::Bound { what: "n", value: i64::from(n), min: 1, max: 3 });
    }
    let classes: Vec<F2Class> = F2Class::all(genus).collect();
    let total = 1usize << (2 * genus + 1);
    let mut witnesses = BTreeMap::new();
    let mut idx = alloc::vec![0usize; n as usize];
    'outer: loop {
        let tuple: Vec<F2Class> = idx.iter().map(|&i| classes[i]).collect();
        let pair = total_sw_of_sum(genus, &tuple)?;
        witnesses.entry(pair).or_insert(tuple);
        if witnesses.len() == total {
            break;
        }
        // Odometer with the last coordinate fastest: lexicographic order.
        for pos in (0..idx.len()).rev() {
            idx[pos] += 1;
            if idx[pos] < classes.len() {
                continue 'outer;
            }
            idx[pos] = 0;
        }
        break;
    }
    let complete = witnesses.len() == total;
    Ok(SurjectivityReport { genus, n, witnesses, complete })
}

/// Smallest `n <= max_n` realizing each pair, or `None` if none does.
pub fn minimal_tuple_lengths(genus: u32, max_n: u32) -> Result<BTreeMap<SwPair, Option<u32>>> {
    let mut out: BTreeMap<SwPair, Option<u32>> = SwPair::all(genus).map(|p| (p, None)).collect();
    for n in 1..=max_n {
        let report = sw_surjectivity_witnesses(genus, n)?;
        for pair in report.witnesses.keys() {
            out.entry(*pair).and_modify(|m| {
                if m.is_none() {
                    *m = Some(n);
                }
            });
        }
    }
    Ok(out)
}

/// The connected unramified double cover attached to a nonzero `sw1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoubleCover {
    base: Curve,
    sw1: F2Class,
}

impl DoubleCover {
    pub fn new(base: Curve, sw1: F2Class) -> Result<Self> {
        if sw1.genus() != base.genus() {
            return Err(Error::DimensionMismatch { left: base.genus(), right: sw1.genus() });
        }
        if sw1.is_zero() {
            return Err(Error::Precondition("a double cover needs sw1 != 0".into()));
        }
        Ok(DoubleCover { base, sw1 })
    }

    pub fn base(self) -> Curve {
        self.base
    }

    pub fn sw1(self) -> F2Class {
        self.sw1
    }

    pub fn cover_genus(self) -> u32 {
        2 * self.base.genus() - 1
    }

    pub fn cover(self) -> Curve {
        Curve::new(self.cover_genus()).expect("cover genus is at least 3")
    }

    /// The two Prym components, labelled by `sw2`.
    pub fn prym_components(self) -> [PrymDescriptor; 2] {
        [
            PrymDescriptor { cover: self, component: false },
            PrymDescriptor { cover: self, component: true },
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrymDescriptor {
    pub cover: DoubleCover,
    pub component: bool,
}

/// Declared pullback of each symbol under the covering involution.
pub type InvolutionAction = BTreeMap<String, LineBundle>;

/// Whether `bundle` on the cover satisfies `iota^* L = L^-1`.
///
/// `ctx` holds the degrees of symbols on the cover. `K` is taken to be
/// invariant; every other symbol needs a declared action.
pub fn prym_membership(
    cover: &DoubleCover,
    ctx: &DegreeContext,
    action: &InvolutionAction,
    bundle: &LineBundle,
) -> Result<bool> {
    if ctx.curve().genus() != cover.cover_genus() {
        return Err(Error::DimensionMismatch {
            left: cover.cover_genus(),
            right: ctx.curve().genus(),
        });
    }
    let deg = ctx.degree(bundle)?;
    if deg != 0 {
        return Err(Error::Precondition(alloc::format!(
            "Prym membership needs degree 0, got {deg}"
        )));
    }
    for (sym, _) in bundle.factors() {
        if !action.contains_key(&sym.name) {
            return Err(Error::UnresolvedAction(sym.name.clone()));
        }
    }
    Ok(bundle.substitute(action) == bundle.dual())
}

/// Class of a bundle built only from 2-torsion symbols, using the given
/// assignment of classes to torsion names.
pub fn torsion_class(
    genus: u32,
    assignment: &BTreeMap<String, F2Class>,
    bundle: &LineBundle,
) -> Result<F2Class> {
    if bundle.k_power() != 0 {
        return Err(Error::Type(alloc::format!("`{bundle}` is not a 2-torsion bundle")));
    }
    let mut acc = F2Class::zero(genus);
    for (sym, _) in bundle.factors() {
        if sym.kind != SymbolKind::Torsion {
            return Err(Error::Type(alloc::format!("`{bundle}` is not a 2-torsion bundle")));
        }
        let c = assignment
            .get(&sym.name)
            .ok_or_else(|| Error::UnresolvedDegree(sym.name.clone()))?;
        acc = acc.add(*c)?;
    }
    Ok(acc)
}
