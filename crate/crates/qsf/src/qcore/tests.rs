use super::*;

fn close(a: Scalar, b: Scalar, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1e-300)
}

#[test]
fn empty_product_is_one() {
    for a in [re(0.3), Scalar::new(2.0, -1.0)] {
        assert_eq!(qpoch(a, 0.5.into(), Order::Fin(0)).unwrap(), re(1.0));
    }
}

#[test]
fn euler_product_matches_partial_products() {
    // brute force: multiply until the partial product stops changing
    let mut p = 1.0f64;
    let mut prev = 0.0;
    let mut j = 1;
    while (p - prev).abs() > 1e-16 * p.abs() || j < 5 {
        prev = p;
        p *= 1.0 - 0.5f64.powi(j);
        j += 1;
    }
    let v = qpoch(re(0.5), 0.5.into(), Order::Infinity).unwrap();
    assert!(close(v, re(p), 1e-15), "{v} vs {p}");
}

#[test]
fn factor_hits_zero() {
    assert_eq!(qpoch(re(2.0), 0.5.into(), Order::Fin(2)).unwrap(), re(0.0));
}

#[test]
fn negative_order_matches_ratio() {
    let q = QBase::from(0.4);
    let a = Scalar::new(0.7, 0.2);
    let lhs = qpoch(a, q, Order::Fin(-3)).unwrap();
    let rhs = qpoch_inf(a, q).unwrap() / qpoch_inf(a * q.0.powi(-3), q).unwrap();
    assert!(close(lhs, rhs, 1e-13));
}

#[test]
fn negative_order_pole() {
    let q = QBase::from(0.5);
    assert!(matches!(qpoch(re(0.25), q, Order::Fin(-3)), Err(QError::Pole(_))));
}

#[test]
fn infinite_order_needs_inner_base() {
    assert!(matches!(qpoch(re(0.1), 1.5.into(), Order::Infinity), Err(QError::Domain(_))));
    assert!(matches!(qpoch(re(0.1), 1.5.into(), Order::Fin(-1)), Err(QError::Domain(_))));
    assert!(qpoch(re(0.1), 1.5.into(), Order::Fin(4)).is_ok());
}

#[test]
fn qbinom_small_cases() {
    let q = QBase::from(0.37);
    assert_eq!(qbinom(5, 0, q).unwrap(), re(1.0));
    let x = 0.37f64;
    // (q;q)_4 / (q;q)_2^2 divided out by hand
    let poly = 1.0 + x + 2.0 * x * x + x.powi(3) + x.powi(4);
    assert!(close(qbinom(4, 2, q).unwrap(), re(poly), 1e-14));
    assert!(qbinom(2, 3, q).is_err());
    assert!(qbinom(2, -1, q).is_err());
}

#[test]
fn qbinom_near_one() {
    let q = QBase::from(1.0 - 1e-6);
    let v = qbinom(10, 4, q).unwrap();
    assert!((v.re - 210.0).abs() < 1e-3 * 210.0);
}

#[test]
fn bracket_values() {
    let q = QBase::from(0.49);
    assert!(close(qbracket(re(1.0), q, Bracket::Number, 0).unwrap(), re(1.0), 1e-15));
    let k = 3u32;
    let lhs = qbracket(re(0.0), q, Bracket::Factorial, k).unwrap();
    let rhs = q.powf(-0.25 * (k * (k - 1)) as f64) * qpoch(q.0, q, Order::Fin(k as i64)).unwrap()
        / 0.51f64.powi(k as i32);
    assert!(close(lhs, rhs, 1e-13));
    let near = QBase::from(1.0 - 1e-6);
    let v = qbracket(re(2.7), near, Bracket::Number, 0).unwrap();
    assert!((v.re - 2.7).abs() < 1e-4);
    assert!(qbracket(re(2.0), 1.0.into(), Bracket::Number, 0).is_err());
}

#[test]
fn qderiv_examples() {
    let q = QBase::from(0.3);
    let x = re(0.8);
    assert!(close(qderiv(|y| y, x, q, 1).unwrap(), re(1.0), 1e-15));
    assert!(close(qderiv(|y| y * y, x, q, 1).unwrap(), x * 1.3, 1e-14));
    assert!(qderiv(|y| y, re(0.0), q, 1).is_err());
    let d = qderiv(|y| y.exp(), re(0.3), (1.0 - 1e-4).into(), 1).unwrap();
    assert!((d.re - 0.3f64.exp()).abs() < 1e-3);
}

#[test]
fn qintegral_examples() {
    let q = QBase::from(0.6);
    let a = 1.7;
    let v = qintegral(|_| re(1.0), Bounds::To(a), q, 1e-16).unwrap();
    assert!(close(v, re(a), 1e-14));
    let v = qintegral(re, Bounds::To(1.0), q, 1e-16).unwrap();
    assert!(close(v, re(1.0 / 1.6), 1e-14));
    let v = qintegral(re, Bounds::Between(0.5, 1.0), q, 1e-16).unwrap();
    assert!(close(v, re(0.75 / 1.6), 1e-13));
}

#[test]
fn qintegral_half_line() {
    // (1-q) sum_k q^k exp(-q^k) style integrand on the two-sided lattice
    let q = QBase::from(0.5);
    let f = |x: f64| re(x * (-x).exp());
    let v = qintegral(f, Bounds::ToInfinity(1.0), q, 1e-16).unwrap();
    let mut s = 0.0;
    for k in -80i32..200 {
        let x = 0.5f64.powi(k);
        s += x * (-x).exp() * x;
    }
    assert!(close(v, re(0.5 * s), 1e-13));
}

#[test]
fn qderiv_inverts_qintegral() {
    let q = QBase::from(0.45);
    let f = |x: f64| re((2.0 * x).sin() + x * x);
    let big_f = |a: Scalar| qintegral(f, Bounds::To(a.re), q, 1e-17).unwrap();
    let a = 0.9;
    let d = qderiv(big_f, re(a), q, 1).unwrap();
    assert!(close(d, f(a), 1e-12));
}

#[test]
fn theta_examples() {
    let q0 = QBase::from(1e-12);
    assert!(close(theta4(0.31, q0).unwrap(), re(1.0), 1e-11));
    let q = QBase::from(0.4);
    let (s, p) = theta4_pair(0.2, q).unwrap();
    assert!(close(s, p, 1e-13));
    let mut direct = 0.0;
    for k in -30i32..=30 {
        direct += 0.4f64.powi(k * k);
    }
    assert!(close(theta4_sum(0.5, q).unwrap(), re(direct), 1e-14));
    assert!(!close(theta4_product_misprint(0.2, q).unwrap(), s, 1e-3));
}

#[test]
fn pochhammer_limit() {
    let q = QBase::from(1.0 - 1e-4);
    let a = 1.3;
    let v = qpoch(q.powf(a), q, Order::Fin(4)).unwrap() / (1e-4f64).powi(4);
    let exact = a * (a + 1.0) * (a + 2.0) * (a + 3.0);
    assert!((v.re - exact).abs() < 1e-2 * exact);
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn step_recurrence(ar in -2.0f64..2.0, ai in -2.0f64..2.0, q in 0.05f64..0.95, k in 0i64..40) {
            let a = Scalar::new(ar, ai);
            let q = QBase::from(q);
            let lhs = qpoch(a, q, Order::Fin(k + 1)).unwrap();
            let rhs = qpoch(a, q, Order::Fin(k)).unwrap() * (re(1.0) - a * q.0.powi(k as i32));
            prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0));
        }

        #[test]
        fn split_infinite(ar in -0.9f64..0.9, q in 0.05f64..0.9, k in 0i64..30) {
            let a = re(ar);
            let q = QBase::from(q);
            let lhs = qpoch(a, q, Order::Fin(k)).unwrap() * qpoch_inf(a * q.0.powi(k as i32), q).unwrap();
            let rhs = qpoch_inf(a, q).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-13 * rhs.norm().max(1e-3));
        }

        #[test]
        fn qbinom_symmetry(n in 0i64..30, k in 0i64..30, q in 0.05f64..0.99) {
            prop_assume!(k <= n);
            let q = QBase::from(q);
            let a = qbinom(n, k, q).unwrap();
            let b = qbinom(n, n - k, q).unwrap();
            prop_assert!((a - b).norm() <= 1e-13 * a.norm());
        }

        #[test]
        fn bracket_in_standard_notation(a in 0.1f64..3.0, k in 0u32..10, q in 0.05f64..0.95) {
            let qb = QBase::from(q);
            let lhs = qbracket(re(a), qb, Bracket::Pochhammer, k).unwrap();
            let kf = k as f64;
            let rhs = qb.powf(-0.5 * kf * (a - 1.0) - 0.25 * kf * (kf - 1.0))
                * qpoch(qb.powf(a), qb, Order::Fin(k as i64)).unwrap()
                / (1.0 - q).powi(k as i32);
            prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
        }
    }
}
