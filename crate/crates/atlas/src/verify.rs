//! The invariant suite behind the `verify` command.

use std::collections::BTreeMap;

use higgs_atlas_core::catalog::{
    census, dimension_consistency, hitchin_so_descriptor, parameterization, ComponentLabel,
};
use higgs_atlas_core::curve::h0;
use higgs_atlas_core::deformation::{
    exponent_table, graded_limit, limit_destabilized_branch, unstable_branch_weights, Direction,
    NDescriptor, WeightAssignment,
};
use higgs_atlas_core::f2cohomology::{minimal_tuple_lengths, total_sw_of_sum};
use higgs_atlas_core::higgs::*;
use higgs_atlas_core::linebundle::SymbolKind;
use higgs_atlas_core::stability::{
    check_polystability, enumerate_invariant_subobjects, gauge_equivalent, label_kind_for,
    milnor_wood_bound, StabilityOptions, StabilityStatus,
};
use higgs_atlas_core::{Curve, DegreeContext, F2Class, LineBundle, SwPair};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyResult {
    pub module: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(&StabilityOptions) -> Result<(), String>;

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

fn curve(g: u32) -> Curve {
    Curve::new(g).expect("genus >= 2")
}

fn err(e: higgs_atlas_core::Error) -> String {
    e.to_string()
}

/// One object from each builder, at the given genus.
pub fn builder_zoo(genus: u32) -> Vec<GradedHiggsBundle> {
    let c = curve(genus);
    let on = Switches::all_on();
    let top = c.canonical_degree();
    let z = F2Class::zero(genus);
    let a1 = F2Class::a(genus, 1);
    let mut out = vec![
        build_fuchsian(c, "S", &on),
        build_hitchin_sl(c, 3, None, &on),
        build_hitchin_sl(c, 4, Some("S"), &on),
        build_hitchin_so(c, 2, &on),
        build_hitchin_so(c, 3, &on),
        build_hitchin_sp(c, 2, "S", &on),
        build_hitchin_pso_nn(c, 3, &on),
        build_psi_d(c, 2, 1, &on),
        build_psi_d(c, 3, top, &on),
        build_maximal_so2n(c, 3, &W0Descriptor::Split { degree: 1 }, &on),
        build_maximal_so2n(c, 4, &W0Descriptor::Trivial, &Switches::with_off(["beta0"])),
        build_maximal_so2n(
            c,
            4,
            &W0Descriptor::Prym { torsion: "I".into(), class: a1, sw2: false },
            &on,
        ),
        build_twisted_fuchsian_sp(c, &[a1, z, z], "S", &on),
        build_so34_eta(c, 2, &on),
        build_deform_so35(c, 1, &on),
    ]
    .into_iter()
    .map(|r| r.expect("builder inputs are valid"))
    .collect::<Vec<_>>();
    for d in -top..=top {
        for off in [vec![], vec!["mu"], vec!["nu"], vec!["mu", "nu"]] {
            out.push(build_so12(c, d, &Switches::with_off(off)).expect("so12 in range"));
        }
    }
    out
}

fn riemann_roch_high_degree(_: &StabilityOptions) -> Result<(), String> {
    for g in 2..=6 {
        let c = curve(g);
        for deg in c.canonical_degree() + 1..c.canonical_degree() + 20 {
            let ctx = DegreeContext::new(c).with("L", deg);
            let n = h0(&ctx, &LineBundle::var("L")).map_err(err)?;
            ensure(n.is_exact() && n.value == c.riemann_roch_chi(deg), || {
                format!("g={g} deg={deg}: {n:?}")
            })?;
        }
    }
    Ok(())
}

fn serre_duality(_: &StabilityOptions) -> Result<(), String> {
    for g in 2..=6 {
        let c = curve(g);
        for deg in -10..=3 * c.canonical_degree() {
            let ctx = DegreeContext::new(c).with("L", deg);
            let l = LineBundle::var("L");
            let a = h0(&ctx, &l).map_err(err)?;
            let b = h0(&ctx, &l.hom_to(&LineBundle::canonical())).map_err(err)?;
            if a.is_exact() && b.is_exact() {
                ensure(a.value - b.value == c.riemann_roch_chi(deg), || format!("g={g} deg={deg}"))?;
            }
        }
    }
    Ok(())
}

fn line_bundle_group_laws(_: &StabilityOptions) -> Result<(), String> {
    let samples: Vec<LineBundle> = ["O", "K", "S", "I", "M", "O(D)", "K^2*S*M^-1", "I*O(D)^3"]
        .iter()
        .map(|s| s.parse().expect("sample parses"))
        .collect();
    let ctx = DegreeContext::new(curve(3)).with("M", 4).with("D", 2);
    for a in &samples {
        ensure(a.tensor(&a.dual()).is_trivial(), || format!("{a} * {a}^-1 is not O"))?;
        ensure(a.to_string().parse::<LineBundle>().as_ref() == Ok(a), || format!("roundtrip of {a}"))?;
        for b in &samples {
            ensure(a.tensor(b) == b.tensor(a), || format!("{a} and {b} do not commute"))?;
            let sum = ctx.degree(a).map_err(err)? + ctx.degree(b).map_err(err)?;
            ensure(ctx.degree(&a.tensor(b)).map_err(err)? == sum, || format!("degree of {a} * {b}"))?;
        }
    }
    ensure(LineBundle::spin("S").pow(2) == LineBundle::k(1), || "S^2 != K".into())?;
    ensure(LineBundle::torsion("I").pow(2).is_trivial(), || "I^2 != O".into())
}

fn cup_product_symplectic(_: &StabilityOptions) -> Result<(), String> {
    for g in 2..=3 {
        let all: Vec<F2Class> = F2Class::all(g).collect();
        for &x in &all {
            ensure(!x.cup(x).map_err(err)?, || format!("{x} cup {x} != 0"))?;
            if !x.is_zero() {
                let partner = all.iter().any(|&y| x.cup(y) == Ok(true));
                ensure(partner, || format!("{x} pairs trivially with everything"))?;
            }
            if g == 2 {
                for &y in &all {
                    for &z in &all {
                        let lhs = x.add(y).map_err(err)?.cup(z).map_err(err)?;
                        let rhs = x.cup(z).map_err(err)? ^ y.cup(z).map_err(err)?;
                        ensure(lhs == rhs, || format!("bilinearity fails at {x},{y},{z}"))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn whitney_sum_symmetric(_: &StabilityOptions) -> Result<(), String> {
    let all: Vec<F2Class> = F2Class::all(2).collect();
    for &x in &all {
        for &y in &all {
            for &z in &all {
                let a = total_sw_of_sum(2, &[x, y, z]).map_err(err)?;
                let b = total_sw_of_sum(2, &[z, x, y]).map_err(err)?;
                let c = total_sw_of_sum(2, &[y, x, z]).map_err(err)?;
                ensure(a == b && b == c, || format!("order matters for {x},{y},{z}"))?;
            }
        }
    }
    Ok(())
}

fn sw_minimal_lengths(_: &StabilityOptions) -> Result<(), String> {
    let table = minimal_tuple_lengths(2, 3).map_err(err)?;
    for (pair, n) in &table {
        let want = match (pair.sw1.is_zero(), pair.sw2) {
            (_, false) => 1,
            (false, true) => 2,
            (true, true) => 3,
        };
        ensure(*n == Some(want), || format!("{}: {n:?} instead of {want}", pair.sw1))?;
    }
    ensure(table.len() == 32, || "not every pair listed".into())
}

fn builder_invariants(_: &StabilityOptions) -> Result<(), String> {
    for g in 2..=3 {
        for h in builder_zoo(g) {
            let again = GradedHiggsBundle::from_parts(h.parts().clone()).map_err(err)?;
            ensure(again == h, || format!("{:?} is not stable under revalidation", h.family()))?;
            if let Some(sigma) = h.pairing() {
                for e in h.higgs() {
                    let m = h.entry(sigma[e.source], sigma[e.target]);
                    ensure(m == Some(&e.symbol), || format!("{:?}: missing mirror", h.family()))?;
                }
            }
        }
    }
    Ok(())
}

fn associated_sl_traceless(_: &StabilityOptions) -> Result<(), String> {
    for h in builder_zoo(2) {
        let a = associated_sl(&h).map_err(err)?;
        ensure(a.degrees().iter().sum::<i64>() == 0, || "total degree".into())?;
        ensure(
            a.higgs().iter().all(|e| e.target != e.source || !e.symbol.is_nonzero()),
            || format!("{:?}: diagonal entry", h.family()),
        )?;
    }
    Ok(())
}

fn sorted(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable();
    v
}

fn psi_top_is_hitchin(_: &StabilityOptions) -> Result<(), String> {
    for g in 2..=3 {
        let c = curve(g);
        for n in 2..=5u32 {
            let top = i64::from(n) * c.canonical_degree();
            let psi = build_psi_d(c, n, top, &Switches::all_on()).map_err(err)?;
            let hit = build_hitchin_so(c, n, &Switches::all_on()).map_err(err)?;
            ensure(sorted(psi.degrees().to_vec()) == sorted(hit.degrees().to_vec()), || {
                format!("g={g} n={n}")
            })?;
        }
    }
    Ok(())
}

fn milnor_wood_labels(_: &StabilityOptions) -> Result<(), String> {
    for g in 2..=3 {
        for h in builder_zoo(g) {
            let (Some(label), Ok(kind)) = (h.label(), label_kind_for(h.group())) else {
                continue;
            };
            let bound = milnor_wood_bound(kind, g).map_err(err)?;
            ensure(label.abs() <= bound, || format!("{:?}: |{label}| > {bound}", h.family()))?;
        }
    }
    Ok(())
}

fn oracle_status(h: &GradedHiggsBundle) -> StabilityStatus {
    let n = h.len();
    let arrows: Vec<(usize, usize)> = h.arrows().collect();
    let closed: Vec<u32> = (0u32..(1 << n))
        .filter(|m| arrows.iter().all(|&(t, s)| m & (1 << s) == 0 || m & (1 << t) != 0))
        .collect();
    let full = (1u32 << n) - 1;
    let deg = |m: u32| (0..n).filter(|i| m & (1 << i) != 0).map(|i| h.degree(i)).sum::<i64>();
    let proper: Vec<u32> = closed.iter().copied().filter(|&m| m != 0 && m != full).collect();
    if proper.iter().any(|&m| deg(m) > 0) {
        StabilityStatus::Unstable
    } else if proper.iter().all(|&m| deg(m) < 0) {
        StabilityStatus::Stable
    } else if proper
        .iter()
        .filter(|&&m| deg(m) == 0)
        .all(|&m| closed.contains(&(full & !m)))
    {
        StabilityStatus::Polystable
    } else {
        StabilityStatus::Unstable
    }
}

fn oracle_agreement(opts: &StabilityOptions) -> Result<(), String> {
    for g in 2..=3 {
        for h in builder_zoo(g).into_iter().filter(|h| h.len() <= 12) {
            let v = check_polystability(&h, opts).map_err(err)?;
            ensure(v.status == oracle_status(&h), || format!("{:?} label {:?}", h.family(), h.label()))?;
        }
    }
    Ok(())
}

/// Count of `(g, d, mu, nu)` cases where the verdict differs from
/// `(d > 0 => mu != 0) and (d < 0 => nu != 0)`.
pub fn so12_criterion_mismatches(
    opts: &StabilityOptions,
    include_zero: bool,
) -> Result<Vec<(u32, i64, bool, bool)>, String> {
    let mut bad = Vec::new();
    for g in 2..=4 {
        let c = curve(g);
        let top = c.canonical_degree();
        for d in -top..=top {
            if d == 0 && !include_zero {
                continue;
            }
            for (mu, nu) in [(true, true), (true, false), (false, true), (false, false)] {
                let mut off = Vec::new();
                if !mu {
                    off.push("mu");
                }
                if !nu {
                    off.push("nu");
                }
                let h = build_so12(c, d, &Switches::with_off(off)).map_err(err)?;
                let v = check_polystability(&h, opts).map_err(err)?;
                let predicted = (d <= 0 || mu) && (d >= 0 || nu);
                if v.is_polystable() != predicted {
                    bad.push((g, d, mu, nu));
                }
            }
        }
    }
    Ok(bad)
}

fn so12_criterion_nonzero(opts: &StabilityOptions) -> Result<(), String> {
    let bad = so12_criterion_mismatches(opts, false)?;
    ensure(bad.is_empty(), || format!("mismatches: {bad:?}"))
}

fn so12_criterion_zero(opts: &StabilityOptions) -> Result<(), String> {
    let bad = so12_criterion_mismatches(opts, true)?;
    ensure(bad.is_empty(), || {
        format!("mismatches (g, d, mu, nu): {bad:?}; these objects are strictly semistable")
    })
}

/// The switching move `(M, mu, nu) -> (M^-1, nu, mu)` built from scratch.
pub fn switched(h: &GradedHiggsBundle) -> Option<GradedHiggsBundle> {
    let c = h.curve();
    let d = h.label()?;
    let on = |name: &str| h.higgs().iter().any(|e| e.symbol.name == name && e.symbol.is_nonzero());
    let mut off = Vec::new();
    if !on("nu") {
        off.push("mu");
    }
    if !on("mu") {
        off.push("nu");
    }
    if !on("q2") {
        off.push("q2");
    }
    match h.family()? {
        "so12" => build_so12(c, -d, &Switches::with_off(off)).ok(),
        "maximal-so2n" if h.group() == GroupTag::so0(2, 3) => {
            let m = *h.parts().degrees.get("M")?;
            build_maximal_so2n(c, 3, &W0Descriptor::Split { degree: -m }, &Switches::with_off(off)).ok()
        }
        _ => None,
    }
}

fn gauge_invariance(opts: &StabilityOptions) -> Result<(), String> {
    for h in builder_zoo(2) {
        let n = h.len();
        let perm: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let p = h.permuted(&perm).map_err(err)?;
        let mut moved = vec![p];
        if let Some(s) = switched(&h) {
            moved.push(s);
        }
        let base = check_polystability(&h, opts).map_err(err)?.status;
        for m in moved {
            ensure(gauge_equivalent(&h, &m), || format!("{:?}: move not recognized", h.family()))?;
            let s = check_polystability(&m, opts).map_err(err)?.status;
            ensure(s == base, || format!("{:?}: {base:?} vs {s:?}", h.family()))?;
        }
    }
    Ok(())
}

fn hitchin_zero_differentials_stable(opts: &StabilityOptions) -> Result<(), String> {
    for g in 2..=3 {
        let c = curve(g);
        for n in 2..=6 {
            let off: Vec<String> = (2..=n).map(|j| format!("q{j}")).collect();
            let h = build_hitchin_sl(c, n, Some("S"), &Switches::with_off(off.iter().map(String::as_str)))
                .map_err(err)?;
            let v = check_polystability(&h, opts).map_err(err)?;
            ensure(v.status == StabilityStatus::Stable, || format!("n={n}: {:?}", v.status))?;
            let len = h.len();
            for s in enumerate_invariant_subobjects(&h, opts.budget).map_err(err)? {
                let terminal = s.indices.iter().copied().eq(len - s.indices.len()..len);
                ensure(terminal, || format!("n={n}: non-terminal closed set {:?}", s.indices))?;
                if !s.indices.is_empty() && s.indices.len() < len {
                    ensure(s.degree < 0, || format!("n={n}: degree {}", s.degree))?;
                }
            }
        }
    }
    Ok(())
}

fn zero_weight_retraction(opts: &StabilityOptions) -> Result<(), String> {
    for g in 2..=3 {
        for h in builder_zoo(g) {
            let flat = h.dolbeault().is_empty()
                && (0..h.len()).all(|i| h.degree(i) == 0)
                && check_polystability(&h, opts).map_err(err)?.is_polystable();
            if !flat {
                continue;
            }
            let r = graded_limit(&h, &WeightAssignment::zero(h.len()), Direction::ToZero, opts)
                .map_err(err)?;
            let limit = r.limit.ok_or("limit does not exist")?;
            ensure(limit.arrows().count() == 0 && limit.summands() == h.summands(), || {
                format!("{:?}: limit is not (E, 0)", h.family())
            })?;
        }
    }
    Ok(())
}

fn deform_limit_is_eta(opts: &StabilityOptions) -> Result<(), String> {
    for g in 2..=3 {
        let c = curve(g);
        for d in 1..=3 * c.canonical_degree() {
            let h = build_deform_so35(c, d, &Switches::all_on()).map_err(err)?;
            let r = graded_limit(&h, &unstable_branch_weights(), Direction::ToInfinity, opts)
                .map_err(err)?;
            let limit = r.limit.ok_or("no limit at infinity")?;
            let eta = append_trivial_w(&build_so34_eta(c, d, &Switches::all_on()).map_err(err)?, 1)
                .map_err(err)?;
            ensure(
                limit.summands() == eta.summands()
                    && limit.higgs() == eta.higgs()
                    && limit.dolbeault().is_empty(),
                || format!("g={g} d={d}"),
            )?;
        }
    }
    Ok(())
}

fn exponent_additivity(_: &StabilityOptions) -> Result<(), String> {
    let h = build_deform_so35(curve(2), 2, &Switches::all_on()).map_err(err)?;
    let base = unstable_branch_weights();
    for k in -3..=3i64 {
        let other = WeightAssignment {
            weights: (0..8).map(|i| (i * k) % 5 - 2).collect(),
            higgs_scale: k,
        };
        let sum = base.compose(&other).map_err(err)?;
        for dir in [Direction::ToZero, Direction::ToInfinity] {
            let a = exponent_table(&h, &base, dir).map_err(err)?;
            let b = exponent_table(&h, &other, dir).map_err(err)?;
            let c = exponent_table(&h, &sum, dir).map_err(err)?;
            let ok = a
                .higgs
                .iter()
                .chain(&a.dolbeault)
                .zip(b.higgs.iter().chain(&b.dolbeault))
                .zip(c.higgs.iter().chain(&c.dolbeault))
                .all(|((x, y), z)| x.exponent + y.exponent == z.exponent);
            ensure(ok, || format!("k={k}"))?;
        }
    }
    Ok(())
}

fn branch_parity(opts: &StabilityOptions) -> Result<(), String> {
    for g in 2..=3 {
        let c = curve(g);
        let top = 3 * c.canonical_degree();
        for d in 1..=top {
            let h = build_deform_so35(c, d, &Switches::all_on()).map_err(err)?;
            for deg_n in 1..=top {
                let n = NDescriptor { degree: deg_n, alpha_on: true, beta_on: true, gamma_on: true };
                match limit_destabilized_branch(&h, &n, opts) {
                    Ok(r) => {
                        let label = r.limit.and_then(|l| l.label()).ok_or("no limit")?;
                        ensure((label - d).rem_euclid(2) == 0, || format!("d={d} deg N={deg_n}"))?;
                    }
                    Err(higgs_atlas_core::Error::Parity { .. }) => {
                        ensure((deg_n - d).rem_euclid(2) == 1, || format!("spurious parity error d={d}"))?;
                    }
                    Err(e) => return Err(err(e)),
                }
            }
        }
    }
    Ok(())
}

fn telescoping(_: &StabilityOptions) -> Result<(), String> {
    for g in 2..=5 {
        for n in 1..=5u32 {
            let group = GroupTag::so0(n, n + 1);
            let top = i64::from(n) * curve(g).canonical_degree();
            let mut totals = Vec::new();
            for d in 1..=top {
                ensure(dimension_consistency(group, d, g).map_err(err)?, || format!("g={g} n={n} d={d}"))?;
                let p = parameterization(group, d, g).map_err(err)?.parameterization.ok_or("missing")?;
                totals.push(p.total());
            }
            totals.dedup();
            ensure(totals.len() == 1, || format!("g={g} n={n}: totals vary"))?;
        }
    }
    Ok(())
}

fn so12_cover_count(_: &StabilityOptions) -> Result<(), String> {
    for g in 2..=5 {
        let so = census(GroupTag::So { p: 1, q: 2, identity_component: false }, g, false).map_err(err)?;
        let lifted: u64 = so.components.iter().filter_map(|d| d.cover_multiplicity).map(u64::from).sum();
        let identity = census(GroupTag::so0(1, 2), g, false).map_err(err)?;
        ensure(Some(lifted) == identity.total, || format!("g={g}: {lifted} vs {:?}", identity.total))?;
    }
    Ok(())
}

fn psi_n2_matches_so23(_: &StabilityOptions) -> Result<(), String> {
    for g in 2..=4 {
        let c = curve(g);
        let max = census(GroupTag::so0(2, 3), g, true).map_err(err)?;
        let mut labels = BTreeMap::new();
        for desc in &max.components {
            if let ComponentLabel::Degree(d) = desc.label {
                if d > 0 {
                    labels.insert(d, desc.parameterization);
                }
            }
        }
        let mut built = 0;
        for d in 1..=2 * c.canonical_degree() {
            let psi = build_psi_d(c, 2, d, &Switches::all_on()).map_err(err)?;
            let gothen = build_maximal_so2n(c, 3, &W0Descriptor::Split { degree: d }, &Switches::all_on())
                .map_err(err)?;
            ensure(gauge_equivalent(&psi, &gothen), || format!("g={g} d={d}: shapes differ"))?;
            let p = parameterization(GroupTag::so0(2, 3), d, g).map_err(err)?.parameterization;
            ensure(labels.get(&d) == Some(&p), || format!("g={g} d={d}: census entry differs"))?;
            built += 1;
        }
        ensure(built == labels.len(), || format!("g={g}: census lists {} labels", labels.len()))?;
    }
    Ok(())
}

fn top_label_is_hitchin(_: &StabilityOptions) -> Result<(), String> {
    for g in 2..=5 {
        for n in 1..=5u32 {
            let top = i64::from(n) * curve(g).canonical_degree();
            let p = parameterization(GroupTag::so0(n, n + 1), top, g).map_err(err)?.parameterization;
            ensure(p == Some(hitchin_so_descriptor(n, g).map_err(err)?), || format!("g={g} n={n}"))?;
        }
    }
    Ok(())
}

fn embedding_parity(_: &StabilityOptions) -> Result<(), String> {
    for g in 2..=3 {
        let c = curve(g);
        for d in 0..=2 * c.canonical_degree() {
            let h = build_maximal_so2n(c, 3, &W0Descriptor::Split { degree: d }, &Switches::all_on())
                .map_err(err)?;
            for n in 4..=6 {
                let e = embed_so23_to_so2n(&h, n).map_err(err)?;
                let sw = maximal_so2n_sw(&e).map_err(err)?;
                let want = SwPair { sw1: F2Class::zero(g), sw2: d % 2 == 1 };
                ensure(sw == want, || format!("g={g} d={d} n={n}: {sw:?}"))?;
            }
        }
    }
    Ok(())
}

fn spin_names_only_in_sp(_: &StabilityOptions) -> Result<(), String> {
    let h = build_twisted_fuchsian_sp(curve(2), &[F2Class::a(2, 1), F2Class::b(2, 2)], "S", &Switches::all_on())
        .map_err(err)?;
    let sw = sp_orthogonal_sw(&h).map_err(err)?;
    let want = total_sw_of_sum(2, &[F2Class::a(2, 1), F2Class::b(2, 2)]).map_err(err)?;
    ensure(sw == want, || "twisted Fuchsian SW mismatch".into())?;
    let spins = h
        .summands()
        .iter()
        .all(|s| s.bundle.factors().any(|(sym, _)| sym.kind == SymbolKind::Spin));
    ensure(spins, || "summand without spin root".into())
}

const PROPERTIES: &[(&str, &str, Check)] = &[
    ("curve", "riemann-roch-exact-above-canonical", riemann_roch_high_degree),
    ("curve", "serre-duality-on-exact-cases", serre_duality),
    ("linebundle", "group-laws-and-degree-additivity", line_bundle_group_laws),
    ("f2cohomology", "cup-product-symplectic", cup_product_symplectic),
    ("f2cohomology", "whitney-sum-order-independent", whitney_sum_symmetric),
    ("f2cohomology", "minimal-tuple-lengths", sw_minimal_lengths),
    ("f2cohomology", "twisted-fuchsian-sw", spin_names_only_in_sp),
    ("higgsmodel", "builder-invariants", builder_invariants),
    ("higgsmodel", "associated-sl-traceless", associated_sl_traceless),
    ("higgsmodel", "psi-top-degree-multiset-is-hitchin", psi_top_is_hitchin),
    ("higgsmodel", "milnor-wood-labels", milnor_wood_labels),
    ("higgsmodel", "embedding-parity", embedding_parity),
    ("stability", "brute-force-oracle-agreement", oracle_agreement),
    ("stability", "so12-criterion-nonzero-d", so12_criterion_nonzero),
    ("stability", "so12-criterion-zero-d", so12_criterion_zero),
    ("stability", "gauge-invariance", gauge_invariance),
    ("stability", "hitchin-zero-differentials-stable", hitchin_zero_differentials_stable),
    ("deformation", "zero-weight-retraction", zero_weight_retraction),
    ("deformation", "infinity-limit-is-eta", deform_limit_is_eta),
    ("deformation", "exponent-additivity", exponent_additivity),
    ("deformation", "branch-parity", branch_parity),
    ("catalog", "telescoping", telescoping),
    ("catalog", "so12-cover-multiplicity", so12_cover_count),
    ("catalog", "psi-n2-matches-maximal-so23", psi_n2_matches_so23),
    ("catalog", "top-label-is-hitchin", top_label_is_hitchin),
];

pub fn run_all(opts: &StabilityOptions) -> Vec<PropertyResult> {
    PROPERTIES
        .iter()
        .map(|&(module, name, check)| {
            let outcome = check(opts);
            PropertyResult {
                module,
                name,
                passed: outcome.is_ok(),
                detail: outcome.err().unwrap_or_default(),
            }
        })
        .collect()
}
