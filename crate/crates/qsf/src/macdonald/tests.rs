use super::*;
use crate::qcore::{re, QBase, Scalar};
use core::cmp::Ordering;
use num_traits::{One, Zero};

fn p(v: &[usize]) -> Partition {
    Partition::from_padded(v).unwrap()
}

fn r(s: &str) -> Rat {
    parse_rat(s).unwrap()
}

fn assert_all_pass(rs: &[crate::check::CheckResult]) {
    for x in rs {
        assert!(x.passed(), "{} {:?} rel {:.3e} {}", x.id, x.params, x.rel_err, x.note);
    }
}

#[test]
fn dominance_examples() {
    assert!(dominance_leq(&p(&[1, 1, 1]), &p(&[3])));
    assert_eq!(dominance(&p(&[2, 2]), &p(&[3, 1])), Some(Ordering::Less));
    assert_eq!(dominance(&p(&[2, 1]), &p(&[2, 1])), Some(Ordering::Equal));
    assert_eq!(dominance(&p(&[3, 1, 1, 1]), &p(&[2, 2, 2])), None);
    assert_eq!(dominance(&p(&[2]), &p(&[1])), None);
    assert!(Partition::new(vec![1, 2]).is_err());
    assert!(Partition::new(vec![2, 0]).is_err());
}

#[test]
fn partition_enumeration_and_conjugation() {
    let counts: Vec<usize> = (0..=8).map(|d| partitions_of(d, d).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    assert_eq!(partitions_of(4, 2), vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]);
    for l in partitions_of(7, 7) {
        assert_eq!(l.conjugate().conjugate(), l);
        assert_eq!(l.conjugate().weight(), 7);
    }
    assert_eq!(p(&[2, 1, 1]).z(), num_bigint::BigInt::from(4));
    assert_eq!(distinct_permutations(&[1, 0, 1]).len(), 3);
}

#[test]
fn basis_examples() {
    let one = p(&[1]);
    assert_eq!(SymFunc::monomial(&one, 3).unwrap(), SymFunc::power_sum(&one, 3));
    assert_eq!(SymFunc::schur(&p(&[1, 1]), 2).unwrap(), SymFunc::monomial(&p(&[1, 1]), 2).unwrap());
    assert_eq!(SymFunc::power_sum(&p(&[2]), 3), SymFunc::monomial(&p(&[2]), 3).unwrap());
    assert!(SymFunc::monomial(&p(&[1, 1, 1]), 2).is_err());
    assert!(SymFunc::schur(&p(&[1, 1, 1]), 2).is_err());
    // p_1^2 = m_2 + 2 m_11
    let p11 = SymFunc::power_sum(&p(&[1, 1]), 2);
    assert_eq!(p11.coeff(&p(&[2])), Rat::one());
    assert_eq!(p11.coeff(&p(&[1, 1])), r("2"));
}

/// Semistandard tableaux of shape `lambda` and content `mu`, by brute force.
fn ssyt_count(lambda: &Partition, mu: &Partition) -> usize {
    let cells: Vec<(usize, usize)> =
        lambda.parts().iter().enumerate().flat_map(|(i, &l)| (0..l).map(move |j| (i, j))).collect();
    let n = mu.len().max(1);
    let mut fill = vec![0usize; cells.len()];
    let mut count = 0;
    fn rec(k: usize, cells: &[(usize, usize)], fill: &mut Vec<usize>, n: usize, mu: &Partition, count: &mut usize) {
        if k == cells.len() {
            let ok = (0..n).all(|v| fill.iter().filter(|&&x| x == v).count() == mu.part(v));
            *count += ok as usize;
            return;
        }
        let (i, j) = cells[k];
        for v in 0..n {
            let left = if j > 0 { cells.iter().position(|&c| c == (i, j - 1)) } else { None };
            let up = if i > 0 { cells.iter().position(|&c| c == (i - 1, j)) } else { None };
            if left.is_some_and(|l| fill[l] > v) || up.is_some_and(|u| fill[u] >= v) {
                continue;
            }
            fill[k] = v;
            rec(k + 1, cells, fill, n, mu, count);
        }
    }
    rec(0, &cells, &mut fill, n, mu, &mut count);
    count
}

#[test]
fn kostka_numbers_match_tableau_counts() {
    for d in 1..=5 {
        for l in partitions_of(d, d) {
            let s = SymFunc::schur(&l, d).unwrap();
            for mu in partitions_of(d, d) {
                assert_eq!(s.coeff(&mu), Rat::from_integer(ssyt_count(&l, &mu).into()), "{l} {mu}");
            }
            assert!(kostka_check(&l).unwrap().passed());
        }
    }
}

#[test]
fn schur_matches_bialternant() {
    for n in 1..=3 {
        for d in 0..=4 {
            for l in partitions_of(d, n) {
                assert!(schur_bialternant_check(&l, n, 3).unwrap().passed());
            }
        }
    }
}

#[test]
fn transition_matrices_are_inverse() {
    let mut ip = QTInnerProduct::new(r("1/2"), r("1/3"));
    for d in 0..=6 {
        assert!(ip.transition_inverse_check(d).unwrap());
    }
    assert_eq!(ip.power_sum_norm(&p(&[1])).unwrap(), r("3/4"));
}

#[test]
fn two_row_closed_forms() {
    // P_2 = m_2 + (1+q)(1-t)/(1-qt) m_11
    // P_21 = m_21 + (1-t)(2+q+t+2qt)/(1-qt^2) m_111
    for (qs, ts) in [("1/2", "1/3"), ("2/5", "1/7"), ("3/4", "5/6")] {
        let (q, t) = (r(qs), r(ts));
        let one = Rat::one();
        let c2 = (&one + &q) * (&one - &t) / (&one - &q * &t);
        let c21 = (&one - &t) * (r("2") + &q + &t + r("2") * &q * &t) / (&one - &q * &t * &t);
        for engine in 0..2 {
            let get = |l: &Partition, n| {
                if engine == 0 { macdonald_p(l, n, &q, &t) } else { macdonald_p_operator(l, n, &q, &t) }.unwrap()
            };
            let p2 = get(&p(&[2]), 2);
            assert_eq!(p2.coeff(&p(&[2])), one);
            assert_eq!(p2.coeff(&p(&[1, 1])), c2);
            let p21 = get(&p(&[2, 1]), 3);
            assert_eq!(p21.coeff(&p(&[1, 1, 1])), c21);
            assert_eq!(p21.coeff(&p(&[3])), Rat::zero());
        }
    }
    assert_eq!(macdonald_p(&p(&[1]), 3, &r("1/2"), &r("1/3")).unwrap(), SymFunc::monomial(&p(&[1]), 3).unwrap());
}

#[test]
fn specialisations_of_p2() {
    let q = r("1/2");
    let m2 = macdonald_p_operator(&p(&[2]), 2, &q, &Rat::one()).unwrap();
    assert_eq!(m2, SymFunc::monomial(&p(&[2]), 2).unwrap());
    let s2 = macdonald_p(&p(&[2]), 2, &q, &q).unwrap();
    assert_eq!(s2.coeff(&p(&[1, 1])), Rat::one());
    // Hall-Littlewood P_2(x;t) = m_2 + (1-t) m_11
    let t = r("1/3");
    let hl = macdonald_p_hl(&p(&[2]), 2, &t).unwrap();
    assert_eq!(hl.coeff(&p(&[1, 1])), r("2/3"));
    assert!(QTInnerProduct::new(q.clone(), Rat::one()).power_sum_norm(&p(&[1])).is_err());
}

#[test]
fn orthogonality_and_order_independence() {
    let mut ctx = MacdonaldContext::new(r("2/5"), r("1/7"));
    for d in 0..=6 {
        assert!(ctx.orthogonality(d).unwrap().passed());
    }
    let r6 = ctx.order_independence(6).unwrap();
    assert!(r6.passed() && !r6.note.contains("coincide"), "{}", r6.note);
}

#[test]
fn principal_specialisation_reading() {
    let mut ctx = MacdonaldContext::new(r("1/2"), r("1/3"));
    let (exact, printed, corrected) = ctx.principal_values(&p(&[1]), 2).unwrap();
    assert_eq!(exact, r("4/3"));
    // (1 - tq)/(1 - q) = (5/6)/(1/2)
    assert_eq!(printed, r("5/3"));
    assert_eq!(corrected, exact);
    let a = ctx.special_value_audit(&[(p(&[1]), 2), (p(&[2, 1]), 3)]).unwrap();
    assert!(a.passed() && a.note.starts_with("expected-failure"), "{}", a.note);
}

#[test]
fn cauchy_degree_one_slice() {
    let mut ctx = MacdonaldContext::new(r("1/2"), r("1/3"));
    let n1 = ctx.norm(&p(&[1])).unwrap();
    assert_eq!(Rat::one() / n1, r("4/3"));
    for d in 0..=4 {
        assert!(ctx.cauchy(2, d).unwrap().passed());
    }
    assert!(ctx.cauchy(3, 3).unwrap().passed());
}

#[test]
fn torus_norm_of_first_partition() {
    let mut ctx = MacdonaldContext::new(r("1/2"), r("1/3"));
    let rs = ctx.torus(&[p(&[1])], 2, 256).unwrap();
    assert!(rs[0].rel_err < 1e-8, "{}", rs[0].rel_err);
    // trivial weight at lambda = 0: (t, qt; q)/(t^2, q; q)
    let v = torus_norm(&Partition::empty(), 2, 0.5, 1.0 / 3.0).unwrap();
    let qb = QBase::from(0.5);
    let f = |x: f64| crate::qcore::qpoch_inf(re(x), qb).unwrap();
    assert!((v - f(1.0 / 3.0) * f(1.0 / 6.0) / (f(1.0 / 9.0) * f(0.5))).norm() < 1e-14);
}

#[test]
fn property_checks_for_a_pair() {
    let rs = macdonald_property_checks(&p(&[2]), &p(&[1, 1]), 2, &r("1/2"), &r("1/3")).unwrap();
    assert_all_pass(&rs);
    let rs = macdonald_property_checks(&p(&[1]), &p(&[1]), 3, &r("2/5"), &r("1/7")).unwrap();
    assert_all_pass(&rs);
    let rs = macdonald_property_checks(&p(&[2, 1]), &p(&[2, 1]), 2, &r("1/2"), &r("1/3")).unwrap();
    assert!(rs.iter().any(|x| x.id == "MAC-HOMOG"));
    assert_all_pass(&rs);
}

#[test]
fn full_suite_at_both_points() {
    for (q, t) in [("1/2", "1/3"), ("2/5", "1/7")] {
        let rs = macdonald_suite(&r(q), &r(t), 3, 4, 64).unwrap();
        assert!(rs.len() > 100);
        assert_all_pass(&rs);
    }
}

#[test]
fn constant_term_examples() {
    assert_eq!(constant_term(1, 1).unwrap(), crate::formal::QPoly::from_i64(&[1, 1]));
    assert_eq!(constant_term(1, 0).unwrap(), crate::formal::QPoly::one());
    for k in 0..=3 {
        assert_eq!(constant_term(1, k).unwrap(), crate::formal::QPoly::q_binomial(2 * k, k));
    }
    assert!(constant_term_check(2, 2).unwrap().passed());
    assert!(constant_term(4, 1).is_err());
    assert!(constant_term(2, 4).is_err());
}

/// Mean of the product over a torus grid at a numeric `q`: the constant term
/// evaluated at that `q`.
fn torus_constant_term(rank: usize, k: usize, q: f64, m: usize) -> f64 {
    let d = rank + 1;
    let roots = positive_roots(rank);
    let mut idx = vec![0usize; d - 1];
    let mut s = 0.0;
    for _ in 0..m.pow((d - 1) as u32) {
        let mut th = vec![0.0; d];
        for i in 0..d - 1 {
            th[i] = 2.0 * core::f64::consts::PI * idx[i] as f64 / m as f64;
        }
        let mut v = re(1.0);
        for r in &roots {
            let ang: f64 = r.iter().zip(&th).map(|(&a, &b)| a as f64 * b).sum();
            let u = Scalar::from_polar(1.0, ang);
            for i in 1..=k {
                v *= (re(1.0) - u.inv() * q.powi(i as i32 - 1)) * (re(1.0) - u * q.powi(i as i32));
            }
        }
        s += v.re;
        for x in idx.iter_mut() {
            *x += 1;
            if *x < m {
                break;
            }
            *x = 0;
        }
    }
    s / m.pow((d - 1) as u32) as f64
}

#[test]
fn constant_term_against_torus_mean() {
    for (rank, k) in [(1, 3), (2, 2), (2, 3), (3, 1)] {
        let ct = constant_term(rank, k).unwrap();
        let num = torus_constant_term(rank, k, 0.3, 32);
        assert!((ct.eval_f64(0.3) - num).abs() < 1e-10 * num.abs(), "{rank} {k}");
    }
}

#[test]
fn constant_term_all_ranks() {
    for rank in 1..=3 {
        for k in 0..=3 {
            assert!(constant_term_check(rank, k).unwrap().passed(), "A{rank} k={k}");
        }
    }
}

#[test]
fn gustafson_cases() {
    let q = QBase::from(0.6);
    let abcd = [re(0.5), re(0.4), re(-0.3), re(0.2)];
    let aw = gustafson_aw_check(abcd, q, 256).unwrap();
    assert!(aw.rel_err < 1e-10, "{}", aw.rel_err);
    let one = gustafson_integral(1, abcd, re(0.3), q, 256).unwrap();
    assert!(one.rel_err < 1e-8, "{}", one.rel_err);
    let two = gustafson_integral(2, abcd, re(0.3), q, 256).unwrap();
    assert!(two.rel_err < 1e-8, "{}", two.rel_err);
    let fine = gustafson_quadrature(2, &abcd, re(0.3), q, 512).unwrap();
    assert!(crate::check::rel_err(fine, two.lhs) < 1e-12);
    assert!(gustafson_integral(2, abcd, re(1.2), q, 256).is_err());
    assert!(gustafson_integral(2, abcd, re(0.3), q, 100).is_err());
}

#[test]
fn parse_rationals() {
    assert_eq!(r("2/4"), r("1/2"));
    assert_eq!(r("-3"), Rat::from_integer((-3).into()));
    assert!(parse_rat("1/0").is_err());
    assert!(parse_rat("x").is_err());
}
