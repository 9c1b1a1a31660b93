use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

use super::*;

// Enumerates partitions of n with parts in decreasing order, no memo.
fn brute(n: usize, max: usize, ok: &dyn Fn(&[usize]) -> bool, cur: &mut Vec<usize>) -> u64 {
    if n == 0 {
        return ok(cur) as u64;
    }
    let mut total = 0;
    for p in (1..=max.min(n)).rev() {
        cur.push(p);
        total += brute(n - p, p, ok, cur);
        cur.pop();
    }
    total
}

fn brute_count(n: usize, ok: &dyn Fn(&[usize]) -> bool) -> u64 {
    brute(n, n, ok, &mut Vec::new())
}

fn small(v: &BigUint) -> u64 {
    v.to_u64().unwrap()
}

#[test]
fn partition_table_start() {
    let t: Vec<u64> = partition_count_table(5, Variant::All).iter().map(small).collect();
    assert_eq!(t, vec![1, 1, 2, 3, 5, 7]);
    assert_eq!(small(&partition_counts(100, Variant::All)), 190_569_292);
}

#[test]
fn partition_variants_match_enumeration() {
    let distinct = |p: &[usize]| p.windows(2).all(|w| w[0] > w[1]);
    let odd = |p: &[usize]| p.iter().all(|x| x % 2 == 1);
    let gap2 = |p: &[usize]| p.windows(2).all(|w| w[0] >= w[1] + 2);
    let gap2min2 = |p: &[usize]| gap2(p) && p.iter().all(|&x| x >= 2);
    let m14 = |p: &[usize]| p.iter().all(|x| x % 5 == 1 || x % 5 == 4);
    let m23 = |p: &[usize]| p.iter().all(|x| x % 5 == 2 || x % 5 == 3);
    let max3 = |p: &[usize]| p.iter().all(|&x| x <= 3);
    for n in 0..=18 {
        assert_eq!(small(&partition_counts(n, Variant::All)), brute_count(n, &|_| true));
        assert_eq!(small(&partition_counts(n, Variant::Distinct)), brute_count(n, &distinct));
        assert_eq!(small(&partition_counts(n, Variant::Odd)), brute_count(n, &odd));
        assert_eq!(small(&partition_counts(n, Variant::Gap2)), brute_count(n, &gap2));
        assert_eq!(small(&partition_counts(n, Variant::Gap2Min2)), brute_count(n, &gap2min2));
        assert_eq!(small(&partition_counts(n, Variant::Mod5_14)), brute_count(n, &m14));
        assert_eq!(small(&partition_counts(n, Variant::Mod5_23)), brute_count(n, &m23));
        assert_eq!(small(&partition_counts(n, Variant::MaxPart(3))), brute_count(n, &max3));
    }
}

#[test]
fn distinct_equals_odd() {
    let d = partition_count_table(100, Variant::Distinct);
    let o = partition_count_table(100, Variant::Odd);
    assert_eq!(d, o);
}

#[test]
fn gap_example() {
    assert_eq!(small(&partition_counts(4, Variant::Gap2)), 2);
    assert_eq!(small(&partition_counts(4, Variant::Mod5_14)), 2);
}

#[test]
fn rogers_ramanujan_exact() {
    assert!(rr_check(1, 200).unwrap());
    assert!(rr_check(2, 200).unwrap());
    assert!(rr_check(3, 10).is_err());
    assert!(rr_check(1, RR_CAP + 1).is_err());
}

#[test]
fn rr_detects_a_perturbation() {
    let (lhs, rhs) = rr_series(1, 30).unwrap();
    let bumped = &rhs + &Fps::monomial(17, BigRational::one(), 30);
    assert_eq!(lhs, rhs);
    assert_ne!(lhs, bumped);
}

#[test]
fn euler_pentagonal() {
    // (q;q)_inf = sum (-1)^k q^{k(3k-1)/2}
    let n = 120;
    let p = poch_series(PochKind::Numerator, 1, 1, 1, n).unwrap();
    let mut expect = Fps::zero(n);
    for k in -10i64..=10 {
        let e = (k * (3 * k - 1) / 2) as usize;
        let s = if k % 2 == 0 { 1 } else { -1 };
        expect = &expect + &Fps::monomial(e, BigRational::from_integer(s.into()), n);
    }
    assert_eq!(p, expect);
}

#[test]
fn reciprocal_of_euler_product_counts_partitions() {
    let n = 60;
    let p = poch_series(PochKind::Numerator, 1, 1, 1, n).unwrap();
    let r = p.reciprocal().unwrap();
    let counts = partition_count_table(n, Variant::All);
    for k in 0..=n {
        assert_eq!(r.coeff(k), &BigRational::from_integer(BigInt::from(counts[k].clone())));
    }
    assert_eq!(&r * &p, Fps::one(n));
    assert!(Fps::zero(5).reciprocal().is_err());
    assert!(poch_series(PochKind::Numerator, 1, 0, 1, 5).is_err());
}

#[test]
fn triple_product_windows() {
    let r = triple_product_formal(10, 60).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.lhs.re, 21.0);
    assert!(triple_product_formal(12, 60).is_err());
    let big = triple_product_formal(20, 200).unwrap();
    assert!(big.passed());
}

#[test]
fn triple_product_coefficient_signs() {
    let p = triple_product_expansion(20).unwrap();
    assert_eq!(p.coeff(2), Fps::monomial(1, BigRational::one(), 20));
    assert_eq!(p.coeff(-1), Fps::monomial(1, -BigRational::one(), 20));
    assert_eq!(p.coeff(-3), Fps::monomial(6, -BigRational::one(), 20));
}

#[test]
fn qbinomial_division_matches_factorials() {
    let f = |k| QPoly::q_factorial(k);
    let num = f(4);
    let den = &f(2) * &f(2);
    let b = num.div_exact(&den).unwrap();
    assert_eq!(b, QPoly::q_binomial(4, 2));
    assert_eq!(b, QPoly::from_i64(&[1, 1, 2, 1, 1]));
    let v = b.eval_f64(0.3);
    let w = crate::qcore::qbinom(4, 2, crate::QBase::from(0.3)).unwrap();
    assert!((v - w.re).abs() < 1e-14);
    assert!(QPoly::from_i64(&[1, 0, 1]).div_exact(&QPoly::from_i64(&[1, 1])).is_none());
}

#[test]
fn nc_binomial_small() {
    for n in 0..=8 {
        assert!(nc_binomial_check(n), "n = {n}");
    }
    let xy = NCPoly::x().mul(&NCPoly::y());
    assert_eq!(xy, NCPoly::word(1, 1, RatFunc::q_pow(1)));
}

#[test]
fn nc_exponential_identities() {
    let r = nc_exp_checks(6);
    assert_eq!(r, vec![true; 4]);
}

#[test]
fn nc_wrong_order_fails() {
    // e(x+y) is not e(x)e(y) when xy = qyx
    let x = NCPoly::x();
    let y = NCPoly::y();
    let sq = x.add(&y).pow_trunc(2, 2);
    let commuting = NCPoly::word(0, 2, RatFunc::one())
        .add(&NCPoly::word(2, 0, RatFunc::one()))
        .add(&NCPoly::word(1, 1, RatFunc::from_poly(QPoly::from_i64(&[2]))));
    assert_ne!(sq, commuting);
}

fn poly() -> impl Strategy<Value = QPoly> {
    proptest::collection::vec(-5i64..=5, 1..5).prop_map(|c| QPoly::from_i64(&c))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), 0usize..3).prop_map(|(n, k)| RatFunc::new(n, QPoly::q_factorial(k)))
}

fn ncpoly() -> impl Strategy<Value = NCPoly> {
    proptest::collection::vec((0u32..3, 0u32..3, ratfunc()), 0..4).prop_map(|ts| {
        ts.into_iter().fold(NCPoly::zero(), |acc, (a, b, c)| acc.add(&NCPoly::word(a, b, c)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nc_ring_axioms(a in ncpoly(), b in ncpoly(), c in ncpoly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.mul(&NCPoly::one()), a.clone());
    }

    #[test]
    fn normal_order_matches_letter_products(word in proptest::collection::vec(any::<bool>(), 0..9)) {
        let prod = word.iter().fold(NCPoly::one(), |acc, &is_x| {
            acc.mul(&if is_x { NCPoly::x() } else { NCPoly::y() })
        });
        prop_assert_eq!(prod, normal_order_word(&word));
    }

    #[test]
    fn ratfunc_field_laws(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert!(&(&a + &b) + &c == &a + &(&b + &c));
        prop_assert!(&(&a * &b) * &c == &a * &(&b * &c));
        prop_assert!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            prop_assert!(&a * &a.inv() == RatFunc::one());
        }
    }

    #[test]
    fn fps_product_commutes_and_inverts(c in proptest::collection::vec(-4i64..=4, 1..8)) {
        let mut c = c;
        c[0] = 1;
        let a = Fps::from_ints(&c, 15);
        let b = poch_series(PochKind::Reciprocal, 1, 2, 3, 15).unwrap();
        prop_assert_eq!(&a * &b, &b * &a);
        let inv = a.reciprocal().unwrap();
        prop_assert_eq!(&a * &inv, Fps::one(15));
        prop_assert!(inv.integer_coeffs().is_some());
        prop_assert!(!(&a - &a).coeffs().iter().any(|x| !x.is_zero()));
    }
}
