use std::sync::Arc;

use arcurve::ar::{binomial_factor_branch, e_avg_of, gamma_for, ideal_module, push};
use arcurve::field::Field;
use arcurve::poly::WPoly;
use arcurve::qelem::{q_membership, QElement};
use arcurve::quiver::{
    check_subadditive, classify_fragment, quotient_tau, tree_class, validate, zt_build,
    DirectedTree, FragmentClass, Subadditivity,
};
use arcurve::ring::{gcd, ring, HypersurfaceRing};
use num_rational::Rational64;
use proptest::prelude::*;

/// Tree on `parents.len() + 1` vertices, vertex `i + 1` hanging off
/// `parents[i] % (i + 1)`.
fn tree_from(parents: &[usize], values: &[(u32, u32)]) -> DirectedTree {
    let labels: Vec<String> = (0..=parents.len()).map(|i| format!("t{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let arrows: Vec<(usize, usize, (u32, u32))> = parents
        .iter()
        .enumerate()
        .map(|(i, &p)| (p % (i + 1), i + 1, values[i % values.len()]))
        .collect();
    DirectedTree::from_arrows(&refs, &arrows)
}

fn instance(p: u32, q: u32, f: &str, m: u32, n: u32) -> Option<Arc<HypersurfaceRing>> {
    if p == q || gcd(p as u64, q as u64) != 1 || m >= p - 1 || n >= q {
        return None;
    }
    ring(Field::Rational, p, q, 1, f, Some((m, n))).ok().map(Arc::new)
}

fn value_pair() -> impl Strategy<Value = (u32, u32)> {
    (1u32..=2, 1u32..=2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn zt_windows_are_valid(
        parents in prop::collection::vec(0usize..8, 0..5),
        values in prop::collection::vec(value_pair(), 1..4),
        lo in -3i64..0,
        width in 1i64..5,
    ) {
        let t = tree_from(&parents, &values);
        prop_assert!(t.validate().is_empty());
        let q = zt_build(&t, lo..=lo + width);
        prop_assert!(validate(&q).is_empty(), "{:?}", validate(&q));
    }

    #[test]
    fn tree_class_of_zt_recovers_tree(
        parents in prop::collection::vec(0usize..8, 0..4),
        values in prop::collection::vec(value_pair(), 1..4),
    ) {
        let t = tree_from(&parents, &values);
        let z = zt_build(&t, -8..=8);
        let base = z.vertices.iter().position(|v| v.label == "(0,t0)").unwrap();
        let tc = tree_class(&z, base, 12);
        prop_assert_eq!(tc.tree.canonical(), t.canonical());
    }

    #[test]
    fn ray_quotients_are_tubes(k in 3usize..7, n in 1usize..4) {
        let z = zt_build(&DirectedTree::ray(k), 0..=(3 * n as i64 + 3));
        let quot = quotient_tau(&z, n).unwrap();
        prop_assert!(quot.covering_failures.is_empty());
        prop_assert_eq!(classify_fragment(&quot.quiver), FragmentClass::Tube { rank: n });
    }

    #[test]
    fn subadditivity_is_scale_invariant(
        f in prop::collection::vec(1i64..20, 6),
        c in 1i64..5,
    ) {
        let t = DirectedTree::ray(6);
        let f: Vec<Rational64> = f.into_iter().map(Rational64::from_integer).collect();
        let g: Vec<Rational64> = f.iter().map(|x| x * Rational64::from_integer(c)).collect();
        prop_assert_eq!(check_subadditive(&t, &f).verdict, check_subadditive(&t, &g).verdict);
    }

    #[test]
    fn affine_functions_on_a_ray_are_additive(a in 1i64..5, b in 0i64..5) {
        let t = DirectedTree::ray(7);
        let f: Vec<Rational64> = (0..7).map(|i| Rational64::from_integer(a * i + a + b)).collect();
        let rep = check_subadditive(&t, &f);
        // interior x_2..x_6 are additive; the end x_1 is strict when b > 0
        let expect = if b == 0 { Subadditivity::Additive } else { Subadditivity::StrictlySubadditive };
        prop_assert_eq!(rep.verdict, expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn normal_form_is_a_ring_map(
        p in 3u32..6, q in 3u32..6, use_y in any::<bool>(),
        a in prop::collection::vec((0u32..6, 0u32..6, -3i64..4), 1..4),
        b in prop::collection::vec((0u32..6, 0u32..6, -3i64..4), 1..4),
    ) {
        prop_assume!(p != q && gcd(p as u64, q as u64) == 1);
        let r = ring(Field::Rational, p, q, 1, if use_y { "y" } else { "1" }, None).unwrap();
        let k = r.field;
        let build = |terms: &[(u32, u32, i64)]| {
            terms.iter().fold(WPoly::zero(k), |acc, &(i, j, c)| {
                acc.add(&WPoly::mono(k, i, j).scale(&k.int(c)))
            })
        };
        let (pa, pb) = (build(&a), build(&b));
        let nf = |x: &WPoly| r.normal_form(x);
        prop_assert_eq!(nf(&nf(&pa)), nf(&pa));
        prop_assert_eq!(r.mul(&pa, &pb), r.mul(&pb, &pa));
        prop_assert_eq!(r.mul(&nf(&pa), &pb), r.mul(&pa, &pb));
    }

    #[test]
    fn gamma_and_push_invariants(
        p in 3u32..6, q in 3u32..6, use_y in any::<bool>(), m in 1u32..4, n in 2u32..5,
    ) {
        let f = if use_y { "y" } else { "1" };
        let Some(r) = instance(p, q, f, m, n) else { return Ok(()); };
        let gd = gamma_for(&r, Some(binomial_factor_branch(&r).unwrap())).unwrap();
        // gamma is not in R, but gamma x and gamma y are
        prop_assert!(q_membership(&gd.gamma, &r).is_none());
        for v in [WPoly::x(r.field), WPoly::y(r.field)] {
            let prod = gd.gamma.mul(&QElement::from_r(&r, &v).unwrap(), &r).unwrap();
            prop_assert!(q_membership(&prod, &r).is_some());
        }
        let i = ideal_module(&r).unwrap();
        let seq = push(&i, &gd).unwrap();
        prop_assert!(seq.checks.mf.holds);
        prop_assert!(seq.checks.exact);
        prop_assert!(seq.checks.rank_additive);
        let e_i = e_avg_of(&i, 0).unwrap();
        let e_push = e_avg_of(&seq.middle.minimized(), 0).unwrap();
        prop_assert!(e_push <= e_i * Rational64::from_integer(2));
    }
}
