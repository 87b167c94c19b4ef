//! Component censuses, dimensions and parameterizations.
//!
//! Dimensions of character varieties are real (`dim G * (2g - 2)`); component
//! descriptors carry complex dimensions, which are half of that.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::curve::{h0, Curve};
use crate::error::{Error, Result};
use crate::f2cohomology::{F2Class, SwPair};
use crate::higgs::GroupTag;
use crate::linebundle::{DegreeContext, LineBundle};

/// Descriptor lists longer than this are summarized by their count only.
pub const MAX_ENUMERATED: u64 = 1 << 16;

/// Parse `sl:n`, `sp:2n`, `so:p,q`, `so0:p,q`.
pub fn parse_group(spec: &str) -> Result<GroupTag> {
    let (family, args) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("group `{spec}` should look like `so:1,2`")))?;
    let nums = args
        .split(',')
        .map(|t| t.trim().parse::<u32>())
        .collect::<core::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Parse(format!("bad parameters in `{spec}`")))?;
    match (family, nums.as_slice()) {
        ("sl", [n]) if *n >= 2 => Ok(GroupTag::SlReal(*n)),
        ("sp", [m]) if *m >= 2 && m % 2 == 0 => Ok(GroupTag::SpReal(m / 2)),
        ("so", [p, q]) if p + q >= 3 => {
            Ok(GroupTag::So { p: *p, q: *q, identity_component: false })
        }
        ("so0", [p, q]) if p + q >= 3 => Ok(GroupTag::so0(*p, *q)),
        ("pu" | "su", _) => Err(Error::Unsupported(format!("group `{spec}`"))),
        _ => Err(Error::Parse(format!("unknown group `{spec}`"))),
    }
}

/// Real dimension of the Lie algebra.
pub fn lie_algebra_dimension(group: GroupTag) -> i64 {
    match group {
        GroupTag::SlReal(n) | GroupTag::SlComplex(n) => {
            let n = i64::from(n);
            n * n - 1
        }
        GroupTag::SpReal(n) => {
            let n = i64::from(n);
            n * (2 * n + 1)
        }
        GroupTag::So { p, q, .. } => {
            let m = i64::from(p + q);
            m * (m - 1) / 2
        }
    }
}

/// `dim G * (2g - 2)`, a real dimension.
pub fn character_variety_dimension(group_dimension: i64, genus: u32) -> Result<i64> {
    Ok(group_dimension * Curve::new(genus)?.canonical_degree())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentLabel {
    /// Integer label `d` (a degree or Toledo invariant).
    Degree(i64),
    Sw(SwPair),
    /// Hitchin component selected by a square root of `O`.
    HitchinLift(F2Class),
    Named(String),
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentLabel::Degree(d) => write!(f, "d={d}"),
            ComponentLabel::Sw(p) => write!(f, "sw=({},{})", p.sw1, u8::from(p.sw2)),
            ComponentLabel::HitchinLift(c) => write!(f, "hitchin({c})"),
            ComponentLabel::Named(s) => f.write_str(s),
        }
    }
}

/// `Sym^k(X)` has complex dimension `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Parameterization {
    pub fiber_rank: i64,
    pub symmetric_power: i64,
    pub extra_factor_dim: i64,
}

impl Parameterization {
    pub fn total(&self) -> i64 {
        self.fiber_rank + self.symmetric_power + self.extra_factor_dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDescriptor {
    pub group: GroupTag,
    pub label: ComponentLabel,
    pub complex_dimension: i64,
    pub parameterization: Option<Parameterization>,
    /// Number of identity-component components lying over this one.
    pub cover_multiplicity: Option<u32>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub group: GroupTag,
    pub genus: u32,
    pub maximal: bool,
    pub components: Vec<ComponentDescriptor>,
    /// `None` when the full count is not known.
    pub total: Option<u64>,
    /// Whether `components` lists every component counted in `total`.
    pub enumerated: bool,
    pub note: Option<String>,
}

/// Which differentials span the extra factor of the `SO0(n, n+1)`
/// parameterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtraReading {
    /// `n - 1` copies of `H^0(K^2)`.
    QuadraticOnly,
    /// `H^0(K^2) + H^0(K^4) + ... + H^0(K^(2n-2))`.
    EvenPowers,
}

impl ExtraReading {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtraReading::QuadraticOnly => "K^2",
            ExtraReading::EvenPowers => "K^2j",
        }
    }
}

fn h0_k(genus: u32, power: i64) -> Result<i64> {
    let ctx = DegreeContext::new(Curve::new(genus)?);
    Ok(h0(&ctx, &LineBundle::k(power))?.value)
}

pub fn extra_factor_dim(reading: ExtraReading, n: u32, genus: u32) -> Result<i64> {
    let mut sum = 0;
    for j in 1..i64::from(n) {
        sum += match reading {
            ExtraReading::QuadraticOnly => h0_k(genus, 2)?,
            ExtraReading::EvenPowers => h0_k(genus, 2 * j)?,
        };
    }
    Ok(sum)
}

fn so_n_n1(n: u32) -> GroupTag {
    GroupTag::so0(n, n + 1)
}

/// The reading whose totals match `dim G (g - 1)` for every `d`, if exactly
/// one does.
pub fn resolve_extra_reading(n: u32, genus: u32) -> Result<Option<ExtraReading>> {
    let curve = Curve::new(genus)?;
    let want = lie_algebra_dimension(so_n_n1(n)) * (i64::from(genus) - 1);
    let top = i64::from(n) * curve.canonical_degree();
    let mut fits = Vec::new();
    for reading in [ExtraReading::QuadraticOnly, ExtraReading::EvenPowers] {
        let mut ok = true;
        for d in 1..=top {
            let p = so_param(n, d, genus, reading)?;
            ok &= p.total() == want;
        }
        if ok {
            fits.push(reading);
        }
    }
    Ok(if fits.len() == 1 { Some(fits[0]) } else { None })
}

/// The reading used by [`parameterization`].
pub const ADOPTED_READING: ExtraReading = ExtraReading::EvenPowers;

fn so_param(n: u32, d: i64, genus: u32, reading: ExtraReading) -> Result<Parameterization> {
    let curve = Curve::new(genus)?;
    let top = i64::from(n) * curve.canonical_degree();
    if d == 0 {
        return Err(Error::NoParameterization(format!(
            "the d = 0 component retracts onto {}",
            RETRACTION_TARGET
        )));
    }
    if d < 0 || d > top {
        return Err(Error::Bound { what: "d", value: d, min: 1, max: top });
    }
    // Fiber: sections of K^(2n) twisted down by a divisor of degree n(2g-2) - d.
    let ctx = DegreeContext::new(curve).with("D", top - d);
    let twisted = LineBundle::k(2 * i64::from(n)).tensor(&LineBundle::divisor("D").dual());
    Ok(Parameterization {
        fiber_rank: h0(&ctx, &twisted)?.value,
        symmetric_power: top - d,
        extra_factor_dim: extra_factor_dim(reading, n, genus)?,
    })
}

/// What the `d = 0` components deformation retract onto.
pub const RETRACTION_TARGET: &str = "Pic0(X)/Z2";

fn rank_for_param(group: GroupTag) -> Result<u32> {
    match group {
        GroupTag::So { p, q, .. } if q == p + 1 => Ok(p),
        other => Err(Error::Unsupported(format!("no parameterization for {other}"))),
    }
}

/// Vector-bundle-over-symmetric-product description of the component with
/// label `d`, for `SO(1,2)`, maximal `SO0(2,3)` and `SO0(n,n+1)`.
pub fn parameterization(group: GroupTag, d: i64, genus: u32) -> Result<ComponentDescriptor> {
    let n = rank_for_param(group)?;
    let param = so_param(n, d, genus, ADOPTED_READING)?;
    let top = i64::from(n) * Curve::new(genus)?.canonical_degree();
    Ok(ComponentDescriptor {
        group,
        label: ComponentLabel::Degree(d),
        complex_dimension: lie_algebra_dimension(group) * (i64::from(genus) - 1),
        parameterization: Some(param),
        cover_multiplicity: None,
        note: (d == top).then(|| "Hitchin component".to_string()),
    })
}

/// Hitchin component of `SO0(n, n+1)` as `H^0(K^2) + ... + H^0(K^2n)`,
/// arranged as fiber `H^0(K^2n)` over a point.
pub fn hitchin_so_descriptor(n: u32, genus: u32) -> Result<Parameterization> {
    Ok(Parameterization {
        fiber_rank: h0_k(genus, 2 * i64::from(n))?,
        symmetric_power: 0,
        extra_factor_dim: extra_factor_dim(ExtraReading::EvenPowers, n, genus)?,
    })
}

/// Whether fiber + base + extra equals `dim G (g - 1)`.
pub fn dimension_consistency(group: GroupTag, d: i64, genus: u32) -> Result<bool> {
    let desc = parameterization(group, d, genus)?;
    let half = character_variety_dimension(lie_algebra_dimension(group), genus)? / 2;
    Ok(desc.parameterization.is_some_and(|p| p.total() == half) && desc.complex_dimension == half)
}

fn descriptor(group: GroupTag, genus: u32, label: ComponentLabel) -> ComponentDescriptor {
    ComponentDescriptor {
        group,
        label,
        complex_dimension: lie_algebra_dimension(group) * (i64::from(genus) - 1),
        parameterization: None,
        cover_multiplicity: None,
        note: None,
    }
}

fn census_of(
    group: GroupTag,
    genus: u32,
    maximal: bool,
    total: Option<u64>,
    make: impl FnOnce(&mut Vec<ComponentDescriptor>) -> Result<()>,
) -> Result<Census> {
    let mut components = Vec::new();
    let small = total.is_none_or(|t| t <= MAX_ENUMERATED);
    if small {
        make(&mut components)?;
    }
    let enumerated = total.is_some_and(|t| t == components.len() as u64);
    Ok(Census { group, genus, maximal, components, total, enumerated, note: None })
}

fn sw_components(
    out: &mut Vec<ComponentDescriptor>,
    group: GroupTag,
    genus: u32,
    nonzero_sw1: bool,
) {
    for pair in SwPair::all(genus) {
        if nonzero_sw1 && pair.sw1.is_zero() {
            continue;
        }
        out.push(descriptor(group, genus, ComponentLabel::Sw(pair)));
    }
}

fn degree_components(
    out: &mut Vec<ComponentDescriptor>,
    group: GroupTag,
    n: u32,
    genus: u32,
    range: core::ops::RangeInclusive<i64>,
) {
    for d in range {
        let mut desc = match parameterization(GroupTag::so0(n, n + 1), d.abs(), genus) {
            Ok(p) => ComponentDescriptor { group, label: ComponentLabel::Degree(d), ..p },
            Err(_) => descriptor(group, genus, ComponentLabel::Degree(d)),
        };
        if d == 0 {
            desc.note = Some(format!("retracts onto {RETRACTION_TARGET}"));
        }
        out.push(desc);
    }
}

/// Components of the character variety (or of its maximal part).
pub fn census(group: GroupTag, genus: u32, maximal: bool) -> Result<Census> {
    let curve = Curve::new(genus)?;
    let top = curve.canonical_degree();
    let lifts = 1u64 << (2 * genus);
    let unsupported = || {
        Err(Error::Unsupported(format!(
            "no census for {}{group}",
            if maximal { "maximal " } else { "" }
        )))
    };
    match (group, maximal) {
        (GroupTag::SlReal(n), false) if n > 2 => {
            let count = if n % 2 == 1 { 3 } else { 6 };
            let mut c = census_of(group, genus, false, Some(count), |out| {
                for k in 0..count {
                    let name = if k < count / 3 {
                        format!("hitchin-{k}")
                    } else {
                        format!("compact-deformable-{}", k - count / 3)
                    };
                    out.push(descriptor(group, genus, ComponentLabel::Named(name)));
                }
                Ok(())
            })?;
            c.note = Some("components of the projective group character variety".into());
            Ok(c)
        }
        (GroupTag::SpReal(n), true) if n > 2 => census_of(group, genus, true, Some(3 * lifts), |out| {
            for class in F2Class::all(genus) {
                let mut d = descriptor(group, genus, ComponentLabel::HitchinLift(class));
                d.note = Some("Hitchin".into());
                out.push(d);
            }
            sw_components(out, group, genus, false);
            Ok(())
        }),
        (GroupTag::So { p: 2, q: 3, .. }, true) => {
            let tag = GroupTag::so0(2, 3);
            let total = (2 * top + 1) as u64 + 2 * (lifts - 1);
            census_of(tag, genus, true, Some(total), |out| {
                degree_components(out, tag, 2, genus, 0..=2 * top);
                sw_components(out, tag, genus, true);
                Ok(())
            })
        }
        (GroupTag::So { p: 2, q, .. }, true) if q > 3 => {
            let tag = GroupTag::so0(2, q);
            census_of(tag, genus, true, Some(2 * lifts), |out| {
                sw_components(out, tag, genus, false);
                Ok(())
            })
        }
        (GroupTag::So { p: 1, q: 2, identity_component: false }, false) => {
            let total = (top + 1) as u64 + 2 * (lifts - 1);
            census_of(group, genus, false, Some(total), |out| {
                degree_components(out, group, 1, genus, 0..=top);
                for desc in out.iter_mut() {
                    if desc.label != ComponentLabel::Degree(0) {
                        desc.cover_multiplicity = Some(2);
                    } else {
                        desc.cover_multiplicity = Some(1);
                    }
                }
                sw_components(out, group, genus, true);
                Ok(())
            })
        }
        (GroupTag::So { p: 1, q: 2, identity_component: true }, false) => {
            census_of(group, genus, false, Some((2 * top + 1) as u64), |out| {
                degree_components(out, group, 1, genus, -top..=top);
                Ok(())
            })
        }
        (GroupTag::So { p, q, identity_component: true }, false) if q == p + 1 && p >= 2 => {
            let mut c = census_of(group, genus, false, None, |out| {
                degree_components(out, group, p, genus, 1..=i64::from(p) * top);
                let mut zero = descriptor(group, genus, ComponentLabel::Degree(0));
                zero.note = Some("d = 0: described without parameterization".into());
                out.push(zero);
                Ok(())
            })?;
            c.note = Some("remainder unknown: only the d-labeled components are listed".into());
            Ok(c)
        }
        _ => unsupported(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn total(spec: &str, g: u32, maximal: bool) -> Option<u64> {
        census(parse_group(spec).unwrap(), g, maximal).unwrap().total
    }

    #[test]
    fn group_syntax() {
        assert_eq!(parse_group("sp:6").unwrap(), GroupTag::SpReal(3));
        assert_eq!(parse_group("so0:2,3").unwrap(), GroupTag::so0(2, 3));
        assert!(matches!(parse_group("sp:5"), Err(Error::Parse(_))));
        assert!(matches!(parse_group("pu:2,2"), Err(Error::Unsupported(_))));
    }

    #[test]
    fn dimensions() {
        assert_eq!(character_variety_dimension(3, 2).unwrap(), 6);
        assert_eq!(lie_algebra_dimension(GroupTag::so0(2, 3)), 10);
        assert_eq!(character_variety_dimension(10, 2).unwrap(), 20);
        assert_eq!(lie_algebra_dimension(GroupTag::SlReal(3)), 8);
        assert_eq!(character_variety_dimension(8, 3).unwrap(), 32);
        assert_eq!(lie_algebra_dimension(GroupTag::SpReal(3)), 21);
        assert_eq!(lie_algebra_dimension(GroupTag::so0(3, 4)), 21);
    }

    #[test]
    fn census_counts() {
        assert_eq!(total("sl:3", 5, false), Some(3));
        assert_eq!(total("sl:4", 2, false), Some(6));
        assert_eq!(total("sp:6", 2, true), Some(48));
        assert_eq!(total("so0:2,4", 2, true), Some(32));
        assert_eq!(total("so0:2,3", 2, true), Some(35));
        assert_eq!(total("so:2,3", 2, true), Some(35));
        assert_eq!(total("so:1,2", 2, false), Some(33));
        assert_eq!(total("so0:3,4", 2, false), None);
        assert!(matches!(census(GroupTag::SpReal(2), 2, true), Err(Error::Unsupported(_))));
    }

    #[test]
    fn so12_labels() {
        let c = census(parse_group("so:1,2").unwrap(), 2, false).unwrap();
        let degrees: Vec<i64> = c
            .components
            .iter()
            .filter_map(|d| match d.label {
                ComponentLabel::Degree(x) => Some(x),
                _ => None,
            })
            .collect();
        assert_eq!(degrees, [0, 1, 2]);
        let identity = census(GroupTag::so0(1, 2), 2, false).unwrap();
        let lifted: u32 = c
            .components
            .iter()
            .filter_map(|d| d.cover_multiplicity)
            .sum();
        assert_eq!(u64::from(lifted), identity.total.unwrap());
    }

    #[test]
    fn so12_param_examples() {
        let g = GroupTag::So { p: 1, q: 2, identity_component: false };
        let top = parameterization(g, 2, 2).unwrap().parameterization.unwrap();
        assert_eq!(top, Parameterization { fiber_rank: 3, symmetric_power: 0, extra_factor_dim: 0 });
        let one = parameterization(g, 1, 2).unwrap().parameterization.unwrap();
        assert_eq!((one.fiber_rank, one.symmetric_power, one.total()), (2, 1, 3));
        assert!(matches!(parameterization(g, 0, 2), Err(Error::NoParameterization(_))));
        assert!(matches!(parameterization(g, 3, 2), Err(Error::Bound { .. })));
    }

    #[test]
    fn so23_top_component() {
        let p = parameterization(GroupTag::so0(2, 3), 4, 2).unwrap().parameterization.unwrap();
        assert_eq!(p.fiber_rank, h0_k(2, 4).unwrap());
        assert_eq!(p.fiber_rank, 7);
        assert_eq!(p.extra_factor_dim, 3);
        assert_eq!(p.total(), 10);
        assert_eq!(p, hitchin_so_descriptor(2, 2).unwrap());
    }

    #[test]
    fn extra_reading_resolution() {
        for g in 2..=3 {
            assert_eq!(resolve_extra_reading(2, g).unwrap(), None);
            for n in 3..=5 {
                assert_eq!(resolve_extra_reading(n, g).unwrap(), Some(ExtraReading::EvenPowers));
            }
        }
    }

    #[test]
    fn hitchin_at_top_label() {
        for g in 2..=4 {
            let top_so12 = parameterization(GroupTag::so0(1, 2), 2 * i64::from(g) - 2, g).unwrap();
            assert_eq!(top_so12.parameterization.unwrap(), hitchin_so_descriptor(1, g).unwrap());
            for n in 2..=5u32 {
                let top = i64::from(n) * (2 * i64::from(g) - 2);
                let desc = parameterization(GroupTag::so0(n, n + 1), top, g).unwrap();
                assert_eq!(desc.parameterization.unwrap(), hitchin_so_descriptor(n, g).unwrap());
            }
        }
    }

    #[test]
    fn large_census_is_summarized() {
        let c = census(GroupTag::so0(2, 5), 9, true).unwrap();
        assert_eq!(c.total, Some(1 << 19));
        assert!(c.components.is_empty());
        assert!(!c.enumerated);
    }

    proptest! {
        #[test]
        fn telescoping(g in 2u32..6, n in 1u32..6, raw in 0i64..1000) {
            let top = i64::from(n) * (2 * i64::from(g) - 2);
            let d = 1 + raw % top;
            let group = GroupTag::so0(n, n + 1);
            prop_assert!(dimension_consistency(group, d, g).unwrap());
            let a = parameterization(group, d, g).unwrap().parameterization.unwrap();
            let b = parameterization(group, top, g).unwrap().parameterization.unwrap();
            prop_assert_eq!(a.total(), b.total());
            prop_assert_eq!(a.fiber_rank, d + (2 * i64::from(n) - 1) * (i64::from(g) - 1));
        }
    }
}
