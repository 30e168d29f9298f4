//! Frozen reference values: independently derived numbers (brute-force
//! sums, direct formula evaluation, enumeration) and the identities stated
//! for the objects themselves.

use cyclomzv::array::{iota, PositiveArray};
use cyclomzv::field::{Ctx, Elem};
use cyclomzv::motives::{check_trivialization, specialization_identity, MotiveMatrix};
use cyclomzv::reduce::{Operators, Reducer};
use cyclomzv::search::{certify_independence, find_relations};
use cyclomzv::series::{carlitz_period, InfSeries};
use cyclomzv::values::{bracket_ell, Evaluator, Flavor, Level};

fn ctx(q: u64, n: u64) -> Ctx {
    Ctx::new(q, 1, n).unwrap()
}

fn arr(text: &str, gamma: u32) -> PositiveArray {
    PositiveArray::parse(text, gamma).unwrap()
}

/// `θ^(-2) + θ^(-3) + ...` to precision `prec`.
fn geometric_tail(ev: &Evaluator, prec: i64) -> InfSeries {
    let f = ev.field();
    InfSeries::from_parts(f, 1, 2, vec![Elem::ONE; (prec - 2) as usize], prec)
}

#[test]
fn s1_at_q2_is_the_geometric_tail() {
    let ev = Evaluator::new(ctx(2, 1));
    let s1 = ev.eval(Flavor::Mzv, Level::At, &arr("(1;0)", 1), 1, 40);
    assert!(s1.agrees_to(&geometric_tail(&ev, 40), 40).unwrap());
}

#[test]
fn zeta_one_at_q2_matches_brute_force() {
    let ev = Evaluator::new(ctx(2, 1));
    let a = arr("(1;0)", 1);
    let mut brute = InfSeries::zero(ev.field(), 1, 30);
    // S_d has valuation 2^(d+1) - 2, so only d ≤ 3 reach below x^30
    for d in 0..=31 {
        if ev.val_bound(Flavor::Mzv, &a, d) >= 30 {
            assert!(d >= 4);
            continue;
        }
        brute = brute.add(&ev.s_d_brute(&a, d, 30).unwrap());
    }
    assert!(ev.zeta(&a, 30).agrees_to(&brute, 30).unwrap());
    // all s_i ≤ q, so Li and ζ_A agree
    assert!(ev.li(&a, 200).agrees_to(&ev.zeta(&a, 200), 200).unwrap());
}

#[test]
fn ell_two_valuation_at_q3() {
    let ev = Evaluator::new(ctx(3, 1));
    assert_eq!(bracket_ell(ev.field(), 2).degree(), Some(12));
}

#[test]
fn period_power_has_valuation_minus_q() {
    for q in [2u64, 3] {
        let f = ctx(q, 1).field;
        let pi = carlitz_period(&f, 60).unwrap();
        assert_eq!(pi.ram(), q - 1);
        // u-valuation -q(q-1), i.e. -q in x = u^(q-1)
        assert_eq!(pi.pow(q - 1).valuation(), Some(-((q * (q - 1)) as i64)));
    }
}

#[test]
fn iota_spot_values() {
    assert_eq!(iota(&[4, 2], 3).unwrap(), vec![3, 1, 2]);
    assert_eq!(iota(&[1], 3).unwrap(), vec![1]);
}

#[test]
fn bstar_on_the_first_relation_at_q2() {
    let c = ctx(2, 1);
    let ev = Evaluator::new(c.clone());
    let ops = Operators::new(c, Flavor::Cmpl);
    let r = ops.bstar(0, 1, &ops.fundamental(0));
    assert_eq!(r.weight(), Some(3));
    assert!(r.is_homogeneous());
    for d in 0..=8 {
        assert!(r.residual(&ev, d, 80).is_zero(), "d = {d}");
    }
}

#[test]
fn c_operator_at_q3() {
    let c = ctx(3, 1);
    let ev = Evaluator::new(c.clone());
    let ops = Operators::new(c, Flavor::Cmpl);
    let r = ops.c_op(&arr("(2;0)", 1), &ops.fundamental(0));
    assert_eq!(r.weight(), Some(5));
    for d in 0..=6 {
        assert!(r.residual(&ev, d, 80).is_zero(), "d = {d}");
    }
}

#[test]
fn bc_heads_carry_entry_one() {
    let c = ctx(2, 1);
    let ev = Evaluator::new(c.clone());
    let ops = Operators::new(c, Flavor::Cmpl);
    let r = ops.bc(0, &ops.fundamental(0));
    assert_eq!(r.weight(), Some(4));
    assert!(r.d.contains_key(&arr("(2;0),(2;0)", 1)));
    assert!(r.d1.keys().all(|a| a.s[0] == 1));
    for d in 0..=8 {
        assert!(r.residual(&ev, d, 100).is_zero(), "d = {d}");
    }
}

#[test]
fn zeta_three_over_f2_reduces_into_ct() {
    let c = ctx(2, 1);
    let red = Reducer::new(c, Flavor::Mzv);
    let comb = red.reduce_to_ct(&arr("(3;0)", 1)).unwrap();
    let allowed = [arr("(2;0),(1;0)", 1), arr("(1;0),(2;0)", 1), arr("(1;0),(1;0),(1;0)", 1)];
    assert!(!comb.is_empty());
    assert!(comb.keys().all(|a| allowed.contains(a)));
    let ev = Evaluator::new(ctx(2, 1));
    let lhs = ev.zeta(&arr("(3;0)", 1), 120);
    let mut rhs = InfSeries::zero(ev.field(), 1, 120);
    for (a, p) in comb.iter() {
        rhs = rhs.add(&ev.zeta(a, 130).mul(&InfSeries::from_theta_poly(p)).truncate(120));
    }
    assert!(lhs.agrees_to(&rhs, 120).unwrap());
    // fixed point on CT
    let fixed = red.reduce_to_ct(&allowed[0]).unwrap();
    assert_eq!(fixed.len(), 1);
    assert!(fixed[&allowed[0]].is_one());
}

#[test]
fn phi_at_level_two_has_two_summands() {
    let c = ctx(3, 4);
    let phi = MotiveMatrix::build(&c, &arr("(1;1)", 4)).unwrap();
    assert_eq!(phi.size(), 2);
    assert!(phi.is_lower_triangular());
    assert!(!phi.entries[1][0].is_zero());
    assert!(phi.entries[1][1].coeffs().len() == 1);
}

#[test]
fn trivialization_at_level_two() {
    let c = ctx(3, 4);
    let r = check_trivialization(&c, &arr("(1;1)", 4), 8, 200).unwrap();
    assert!(r.ok(), "{:?}", r.failures);
    let s = specialization_identity(&c, &arr("(1;1)", 4), 8, 200).unwrap();
    assert!(s.agreeing > 0 && s.agreeing == s.stabilized);
}

#[test]
fn one_relation_at_q3_weight_two() {
    let ev = Evaluator::new(ctx(3, 1));
    let r = certify_independence(&ev, 2, 6, 300, true).unwrap();
    assert_eq!(r.relation_rank, 1);
    let m = r.minimal_relation.unwrap();
    assert!(m.involves_period && m.coefficients_in_k);
}

#[test]
fn no_relation_among_cs_values_of_level_two() {
    let ev = Evaluator::new(ctx(3, 2));
    let r = certify_independence(&ev, 2, 8, 400, false).unwrap();
    assert_eq!(r.labels.len(), 6);
    assert_eq!(r.relation_rank, 0);
    let r = certify_independence(&ev, 1, 8, 400, false).unwrap();
    assert_eq!(r.relation_rank, 0);
    let ev = Evaluator::new(ctx(3, 4));
    let r = certify_independence(&ev, 1, 8, 400, false).unwrap();
    assert_eq!((r.labels.len(), r.relation_rank), (4, 0));
}

#[test]
fn duplicate_values_give_the_difference() {
    let ev = Evaluator::new(ctx(3, 1));
    let x = ev.li(&arr("(1;0)", 1), 100);
    let space = find_relations(ev.field(), &[x.clone(), x], 0).unwrap();
    assert_eq!(space.relations.len(), 1);
    let r = &space.relations[0];
    assert!(r[0].add(&r[1]).is_zero());
}
