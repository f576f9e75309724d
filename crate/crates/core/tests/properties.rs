use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use toro::field::{psi_eval, FieldElem, Monomial, Poly};
use toro::fock::FockModule;
use toro::macmahon::{general_macmahon, vacuum_macmahon, KSpec};
use toro::partitions::*;
use toro::plane::{layers_from_plane, plane_from_layers};
use toro::rep::{check_relations, twist, ModuleHandle, Twist};
use toro::zeta::ZetaFunction;

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..7, 0..7).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_parts(v)
    })
}

fn qmono() -> impl Strategy<Value = Monomial> {
    (-3i32..4, -3i32..4).prop_map(|(a, b)| Monomial::q1().pow(a) * Monomial::q3().pow(b))
}

fn field_elem() -> impl Strategy<Value = FieldElem> {
    (prop::collection::vec((-3i64..4, qmono()), 1..4), qmono()).prop_map(|(terms, m)| {
        let mut num = Poly::zero();
        for (c, x) in terms {
            num = &num + &Poly::term(BigInt::from(c), x);
        }
        let den = if m.is_one() { Poly::one() } else { FieldElem::binomial(Monomial::ONE, m).num().clone() };
        FieldElem::new(num, den).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_reflection(x in qmono()) {
        prop_assume!(!x.is_one() && x != Monomial::q2());
        let a = psi_eval(x).unwrap();
        let b = psi_eval(Monomial::q2() / x).unwrap();
        prop_assert!((&a * &b).is_one());
    }

    #[test]
    fn psi_zeta_matches_scalar(x in qmono(), m in qmono()) {
        prop_assume!(!(x * m).is_one() && x * m != Monomial::q2());
        let v = ZetaFunction::psi(m).eval(x).unwrap();
        prop_assert_eq!(v.order, 0);
        prop_assert_eq!(v.value, psi_eval(x * m).unwrap());
    }

    #[test]
    fn field_ring_laws(a in field_elem(), b in field_elem(), c in field_elem()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&(&a - &a)).is_zero());
        if !a.is_zero() {
            prop_assert!(a.checked_div(&a).unwrap().is_one());
            prop_assert_eq!(&a.inv().unwrap() * &b, b.checked_div(&a).unwrap());
        }
    }

    #[test]
    fn partial_fractions_expand(poles in prop::collection::btree_set(qmono(), 1..4), zeros in prop::collection::vec(qmono(), 0..3), c in qmono()) {
        let poles: Vec<Monomial> = poles.into_iter().collect();
        prop_assume!(zeros.len() <= poles.len());
        prop_assume!(zeros.iter().all(|z| !poles.contains(z)));
        let mut f = ZetaFunction::constant(FieldElem::mono(c));
        for &p in &poles {
            f = f.mul(&ZetaFunction::linear(p, -1));
        }
        for &z in &zeros {
            f = f.mul(&ZetaFunction::linear(z, 1));
        }
        let pf = f.partial_fractions().unwrap();
        let order = 4;
        let series = f.expand_zero(order).unwrap();
        for (k, want) in series.iter().enumerate() {
            let mut got = if k == 0 { pf.constant.clone() } else { FieldElem::zero() };
            for (zp, r) in &pf.poles {
                got = &got + &(r * &FieldElem::mono(zp.inv().pow(k as i32)));
            }
            prop_assert_eq!(&got, want);
        }
    }

    #[test]
    fn concave_exceeds_convex(l in partition()) {
        let c = corners(&l);
        prop_assert_eq!(c.concave.len(), c.convex.len() + 1);
    }

    #[test]
    fn colored_corners_partition_all(l in partition(), n in 3usize..7, k in 0usize..7) {
        let ctx = ColorContext::new(n, (k % n) as i64).unwrap();
        let all = corners(&l);
        let (mut cv, mut cc) = (0, 0);
        for i in 0..n {
            let c = colored_corners(&l, ctx, i);
            cv += c.convex.len();
            cc += c.concave.len();
        }
        prop_assert_eq!((cv, cc), (all.convex.len(), all.concave.len()));
    }

    #[test]
    fn k_row_equals_k_corner(l in partition(), n in 3usize..7, k in 0usize..7, i in 0usize..7) {
        let ctx = ColorContext::new(n, (k % n) as i64).unwrap();
        let f = FockModule::new(ctx, Monomial::ONE);
        let i = i % n;
        prop_assert_eq!(f.k_row(i, &l), f.k_corner(i, &l));
    }

    #[test]
    fn colorless_closed_under_conjugation(l in partition(), n in 3usize..7) {
        prop_assert_eq!(is_colorless(&l, n), is_colorless(&l.conjugate(), n));
    }

    #[test]
    fn conjugation_is_involution(l in partition()) {
        prop_assert_eq!(l.conjugate().conjugate(), l.clone());
        prop_assert_eq!(l.conjugate().size(), l.size());
    }

    #[test]
    fn vacuum_layers_round_trip(d in 0usize..7, pick in any::<prop::sample::Index>()) {
        let h = vacuum_macmahon(0, 3, KSpec::Symbolic).unwrap();
        let labels = h.enumerate(d);
        prop_assume!(!labels.is_empty());
        let ls = pick.get(&labels);
        let e = Partition::empty();
        let p = plane_from_layers(ls, &e, &e, &e).unwrap();
        prop_assert_eq!(p.degree(), d);
        let back = layers_from_plane(&p);
        let trimmed: Vec<Partition> = ls.iter().filter(|l| !l.is_empty()).cloned().collect();
        let back: Vec<Partition> = back.into_iter().filter(|l| !l.is_empty()).collect();
        prop_assert_eq!(back, trimmed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn twists_preserve_relations(n in 3usize..5, k in 0usize..4, which in 0usize..3) {
        let ctx = ColorContext::new(n, (k % n) as i64).unwrap();
        let base: ModuleHandle = Arc::new(FockModule::new(ctx, Monomial::ONE));
        let t = [Twist::Tau, Twist::Iota, Twist::Shift(Monomial::q1())][which];
        let h = twist(base, t);
        let rep = check_relations(&h, 4);
        prop_assert!(rep.passed(), "{:?} {:?}", rep.failures.first(), rep.ill_defined.first());
    }

    #[test]
    fn general_layers_round_trip(d in 0usize..4, pick in any::<prop::sample::Index>()) {
        let a = Partition::parse("3,1").unwrap();
        let b = Partition::parse("4,3,1,1").unwrap();
        let g = Partition::parse("3,2,1").unwrap();
        let h = general_macmahon(&a, &b, &g, 0, 3, KSpec::Symbolic).unwrap();
        let labels = h.enumerate(d);
        prop_assume!(!labels.is_empty());
        let ls = pick.get(&labels);
        let p = h.plane(ls);
        prop_assert!(h.is_admissible(ls));
        let q = plane_from_layers(&p.layers, &a, &b, &g).unwrap();
        prop_assert_eq!(q.degree(), d);
        prop_assert_eq!(layers_from_plane(&q), q.layers.clone());
        prop_assert_eq!(h.plane(&q.layers).canonical(), q);
    }
}
