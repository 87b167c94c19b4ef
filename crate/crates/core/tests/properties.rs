use higgs_atlas_core::curve::h0;
use higgs_atlas_core::deformation::{exponent_table, Direction, WeightAssignment};
use higgs_atlas_core::higgs::*;
use higgs_atlas_core::stability::{check_polystability, StabilityOptions};
use higgs_atlas_core::{Curve, DegreeContext, F2Class, LineBundle, SwPair};
use proptest::prelude::*;

fn class(g: u32) -> impl Strategy<Value = F2Class> {
    (0..1u64 << (2 * g)).prop_map(move |b| F2Class::from_bits(g, b).unwrap())
}

proptest! {
    #[test]
    fn cup_is_bilinear_and_alternating(x in class(3), y in class(3), z in class(3)) {
        prop_assert!(!x.cup(x).unwrap());
        prop_assert_eq!(x.cup(y).unwrap(), y.cup(x).unwrap());
        let lhs = x.add(y).unwrap().cup(z).unwrap();
        prop_assert_eq!(lhs, x.cup(z).unwrap() ^ y.cup(z).unwrap());
    }

    #[test]
    fn whitney_sum_is_associative(a in class(2), b in class(2), c in class(2), s in any::<[bool; 3]>()) {
        let p = |x, t| SwPair { sw1: x, sw2: t };
        let (pa, pb, pc) = (p(a, s[0]), p(b, s[1]), p(c, s[2]));
        let left = pa.whitney_sum(pb).unwrap().whitney_sum(pc).unwrap();
        let right = pa.whitney_sum(pb.whitney_sum(pc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn riemann_roch_holds_above_canonical(g in 2u32..6, k in 0i64..12, m in -4i64..4) {
        let c = Curve::new(g).unwrap();
        let top = c.canonical_degree();
        let ctx = DegreeContext::new(c).with("L", top + 1 + k + 2 * m.abs());
        let l = LineBundle::var("L");
        let count = h0(&ctx, &l).unwrap();
        prop_assert_eq!(count.value, c.riemann_roch_chi(top + 1 + k + 2 * m.abs()));
    }

    #[test]
    fn verdict_survives_permutation(g in 2u32..4, d in -6i64..=6, mu in any::<bool>(), nu in any::<bool>(), rot in 0usize..3) {
        let c = Curve::new(g).unwrap();
        prop_assume!(d.abs() <= c.canonical_degree());
        let off: Vec<&str> = [("mu", mu), ("nu", nu)].iter().filter(|x| !x.1).map(|x| x.0).collect();
        let h = build_so12(c, d, &Switches::with_off(off)).unwrap();
        let perm: Vec<usize> = (0..3).map(|i| (i + rot) % 3).collect();
        let p = h.permuted(&perm).unwrap();
        let opts = StabilityOptions::default();
        prop_assert_eq!(
            check_polystability(&h, &opts).unwrap().status,
            check_polystability(&p, &opts).unwrap().status
        );
    }

    #[test]
    fn opposite_directions_negate_exponents(w in proptest::collection::vec(-3i64..=3, 3)) {
        let c = Curve::new(2).unwrap();
        let h = build_so12(c, 1, &Switches::all_on()).unwrap();
        let weights = WeightAssignment::new(w);
        let zero = exponent_table(&h, &weights, Direction::ToZero).unwrap();
        let inf = exponent_table(&h, &weights, Direction::ToInfinity).unwrap();
        for (a, b) in zero.higgs.iter().zip(&inf.higgs) {
            prop_assert_eq!(a.exponent, -b.exponent);
        }
    }
}

#[test]
fn builders_have_degree_zero() {
    let c = Curve::new(3).unwrap();
    let on = Switches::all_on();
    for h in [
        build_hitchin_so(c, 4, &on).unwrap(),
        build_hitchin_sp(c, 3, "S", &on).unwrap(),
        build_psi_d(c, 3, 5, &on).unwrap(),
        build_deform_so35(c, 3, &on).unwrap(),
    ] {
        let total: i64 = (0..h.len()).map(|i| h.degree(i) * i64::from(h.summands()[i].rank)).sum();
        assert_eq!(total, 0, "{:?}", h.family());
    }
}
