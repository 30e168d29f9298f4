//! Invariants checked on random inputs.

use std::sync::OnceLock;

use cyclomzv::array::{count_cs, dim_dn, enumerate_cs, iota, iota_inv, PositiveArray};
use cyclomzv::checks::product_failures;
use cyclomzv::field::{Ctx, Elem, Field, FieldCtx};
use cyclomzv::harmonic::{bounds_hold, Harmonic};
use cyclomzv::poly::{TPoly, ThetaPoly};
use cyclomzv::search::find_relations;
use cyclomzv::series::InfSeries;
use cyclomzv::values::{Evaluator, Flavor};
use proptest::prelude::*;

fn f9() -> &'static Field {
    static F: OnceLock<Field> = OnceLock::new();
    F.get_or_init(|| FieldCtx::new(3, 1, 2).unwrap())
}

fn ev32() -> &'static Evaluator {
    static E: OnceLock<Evaluator> = OnceLock::new();
    E.get_or_init(|| Evaluator::new(Ctx::new(3, 1, 2).unwrap()))
}

fn elem() -> impl Strategy<Value = Elem> {
    (0u32..9).prop_map(Elem)
}

fn series(ram: u64) -> impl Strategy<Value = InfSeries> {
    (-3i64..4, prop::collection::vec(0u32..9, 0..12), 20i64..40).prop_map(move |(start, c, prec)| {
        InfSeries::from_parts(f9(), ram, start, c.into_iter().map(Elem).collect(), prec)
    })
}

fn poly() -> impl Strategy<Value = ThetaPoly> {
    prop::collection::vec(0u32..9, 0..6).prop_map(|c| ThetaPoly::from_dense(f9(), &c.into_iter().map(Elem).collect::<Vec<_>>()))
}

/// Arrays over `Γ_2` of weight at most `wmax`.
fn array(wmax: u32) -> impl Strategy<Value = PositiveArray> {
    prop::collection::vec((1u32..=3, 0u32..2), 1..=3).prop_filter_map("weight", move |v| {
        let (s, e): (Vec<u32>, Vec<u32>) = v.into_iter().unzip();
        (s.iter().sum::<u32>() <= wmax).then(|| PositiveArray::new(s, e, 2).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_division_inverts_multiplication(a in elem(), b in 1u32..9) {
        let f = f9();
        let b = Elem(b);
        prop_assert_eq!(f.div(f.mul(a, b), b).unwrap(), a);
    }

    #[test]
    fn frobenius_is_a_ring_map(a in elem(), b in elem(), i in 0i64..4) {
        let f = f9();
        prop_assert_eq!(f.frobenius(f.add(a, b), i), f.add(f.frobenius(a, i), f.frobenius(b, i)));
        prop_assert_eq!(f.frobenius(f.mul(a, b), i), f.mul(f.frobenius(a, i), f.frobenius(b, i)));
    }

    #[test]
    fn cyclic_roots_reexponentiate(k in 0i64..80) {
        let f = f9();
        let c = f.gen_pow(2 * k);
        let r = f.root_in_cyclic(c, 2).unwrap();
        prop_assert_eq!(f.pow(r, 2).unwrap(), c);
    }

    #[test]
    fn series_distribute(a in series(1), b in series(1), c in series(1)) {
        let lhs = a.add(&b).mul(&c);
        let rhs = a.mul(&c).add(&b.mul(&c));
        let p = lhs.prec().min(rhs.prec());
        prop_assert!(lhs.agrees_to(&rhs, p).unwrap());
    }

    #[test]
    fn series_inverse(a in series(2)) {
        prop_assume!(!a.is_zero());
        let one = a.mul(&a.inv(15).unwrap());
        prop_assert!(one.agrees_to(&InfSeries::one(f9(), 2), one.prec()).unwrap());
    }

    #[test]
    fn twist_untwist(a in series(1), i in 0u32..3) {
        let b = a.twist(i).untwist(i).unwrap();
        prop_assert!(b.agrees_to(&a, a.prec()).unwrap());
    }

    #[test]
    fn polynomial_division(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
    }

    #[test]
    fn iota_round_trips(s in prop::collection::vec(1u32..12, 1..5), q in prop::sample::select(vec![2u32, 3, 4, 5])) {
        prop_assume!(s.iter().all(|x| x % q != 0));
        let t = iota(&s, q).unwrap();
        prop_assert_eq!(t.iter().sum::<u32>(), s.iter().sum::<u32>());
        prop_assert_eq!(iota_inv(&t, q).unwrap(), s);
    }

    #[test]
    fn cs_count_is_the_dimension(q in 2u32..6, gamma in 1u64..5, w in 0u32..9) {
        prop_assert_eq!(count_cs(w, q, gamma), dim_dn(w, q, gamma));
        if (1..=5).contains(&w) {
            prop_assert_eq!(enumerate_cs(w, q, gamma as u32).len() as u128, dim_dn(w, q, gamma));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn products_expand_exactly(a in array(4), b in array(3), mzv in any::<bool>()) {
        let flavor = if mzv { Flavor::Mzv } else { Flavor::Cmpl };
        let h = Harmonic::new(3, 3, 2, flavor);
        prop_assert!(bounds_hold(&a, &b, &h.zeta_product(&a, &b)));
        let fails = product_failures(ev32(), flavor, &a, &b, 4, 60);
        prop_assert!(fails.is_empty(), "{:?}", fails);
    }

    #[test]
    fn planted_relation_is_found(c in prop::collection::vec(poly(), 2)) {
        prop_assume!(c.iter().any(|p| !p.is_zero()));
        let ev = ev32();
        let a = PositiveArray::parse("(1;1)", 2).unwrap();
        let b = PositiveArray::parse("(2;0)", 2).unwrap();
        let (va, vb) = (ev.li(&a, 120), ev.li(&b, 120));
        let planted = va.mul(&InfSeries::from_theta_poly(&c[0])).add(&vb.mul(&InfSeries::from_theta_poly(&c[1]))).truncate(100);
        let d = c.iter().filter_map(|p| p.degree()).max().unwrap_or(0) as u32;
        let space = find_relations(ev.field(), &[va, vb, planted], d).unwrap();
        prop_assert!(!space.relations.is_empty());
    }
}

#[test]
fn twisted_polynomials_commute_with_products() {
    let f = f9();
    let p = TPoly::t_minus_theta_pow(f, 3);
    let q = TPoly::t_minus_theta_pow(f, 1);
    assert_eq!(p.mul(&q).twist(1), p.twist(1).mul(&q.twist(1)));
}
