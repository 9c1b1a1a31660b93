//! Cases for orthogonal polynomials, exact formal identities, Macdonald
//! theory and elliptic series.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{guard, get_real, get_scalar, get_text, get_usize, point, Category, Draw, IdentityCase, Point, Points};
use crate::check::{CheckResult, Param};
use crate::elliptic::{
    bailey_check, degeneration_checks, e_periodicity_check, gamma_checks, jackson_check, theta_inversion_check,
    theta_quasi_periodicity, v_terms, vwp_balance_audit, EllipticBase, DEGENERATION_TOL,
    ELLIPTIC_TOL,
};
use crate::error::Result;
use crate::formal::{
    inv_qfactorial, nc_binomial_check, nc_exp_checks, partition_count_table, poch_series, rr_check, triple_product_formal,
    Fps, PochKind, Variant,
};
use crate::macdonald::{
    constant_term_check, gustafson_aw_check, gustafson_integral, macdonald_suite, parse_rat, partitions_of, MacdonaldContext,
    Rat,
};
use crate::qcore::{re, QBase, Scalar};
use crate::qortho::{
    aw_orthogonality_table, big_q_jacobi_orthogonality, chebyshev_limit_audit, limit_checks, little_q_jacobi_orthogonality,
    q_bessel_orthogonality, q_hahn_orthogonality, q_racah_orthogonality, qbessel_limit_audit, qdiff_residual,
    rw_contour_orthogonality, rw_discrete_orthogonality, sw_orthogonality, ultra_aw_factor_audit,
    ultraspherical_orthogonality, AWParams, LimitCase, QDiffFamily, RacahBranch,
};

fn one(r: Result<CheckResult>) -> Result<Vec<CheckResult>> {
    r.map(|c| vec![c])
}

fn single() -> Vec<Point> {
    vec![Point::new()]
}

fn c(re_: f64, im: f64) -> Scalar {
    Scalar::new(re_, im)
}

// ---- orthogonal polynomials -----------------------------------------------

fn aw_orth(_: &Point) -> Result<Vec<CheckResult>> {
    aw_orthogonality_table(4, &AWParams::real(0.5, 0.4, -0.3, 0.2, 0.6)?, 4096)
}

fn little_q_jacobi(_: &Point) -> Result<Vec<CheckResult>> {
    little_q_jacobi_orthogonality(3, 0.4, 0.3, QBase::from(0.5))
}

fn q_hahn(_: &Point) -> Result<Vec<CheckResult>> {
    Ok(q_hahn_orthogonality(6, 0.3, 0.4, QBase::from(0.5))?.1)
}

fn q_bessel_orth(_: &Point) -> Result<Vec<CheckResult>> {
    q_bessel_orthogonality(&[-1, 0, 1, 2, 3], 0.5, QBase::from(0.3))
}

fn sw_orth(_: &Point) -> Result<Vec<CheckResult>> {
    sw_orthogonality(4, QBase::from(0.5))
}

fn racah_points() -> Vec<Point> {
    ["alpha", "beta-delta", "gamma"].iter().map(|b| point(&[("branch", Param::from(*b))])).collect()
}

fn q_racah(p: &Point) -> Result<Vec<CheckResult>> {
    let branch = match get_text(p, "branch")? {
        "alpha" => RacahBranch::Alpha,
        "beta-delta" => RacahBranch::BetaDelta,
        _ => RacahBranch::Gamma,
    };
    Ok(q_racah_orthogonality(5, [0.3, 0.4, 0.35, 0.2], branch, QBase::from(0.5))?.1)
}

fn rw_discrete(_: &Point) -> Result<Vec<CheckResult>> {
    Ok(rw_discrete_orthogonality(4, 0.3, 0.4, 0.25, 0.35, QBase::from(0.5))?.1)
}

fn rw_contour(_: &Point) -> Result<Vec<CheckResult>> {
    rw_contour_orthogonality(2, [0.4, 0.3, 0.2, -0.35, 0.05], QBase::from(0.6))
}

fn big_q_jacobi(_: &Point) -> Result<Vec<CheckResult>> {
    big_q_jacobi_orthogonality(3, 0.5, 0.4, -0.6, QBase::from(0.5))
}

fn ultra_orth(_: &Point) -> Result<Vec<CheckResult>> {
    ultraspherical_orthogonality(4, 0.35, QBase::from(0.5))
}

fn aw_qdiff_pt(d: &mut Draw) {
    d.real("q", 0.3, 0.8);
    for k in ["a", "b", "c", "d"] {
        d.signed(k, 0.1, 0.8);
    }
    d.int("n", 0, 6);
    d.real("theta", 0.1, 3.0);
}

fn unit(p: &Point) -> Result<Scalar> {
    Ok(Scalar::from_polar(1.0, get_real(p, "theta")?))
}

fn aw_qdiff(p: &Point) -> Result<Vec<CheckResult>> {
    let [a, b, cc, d, q] = ["a", "b", "c", "d", "q"].map(|k| get_real(p, k));
    let aw = AWParams::real(a?, b?, cc?, d?, q?)?;
    one(qdiff_residual(QDiffFamily::AskeyWilson(aw), get_usize(p, "n")?, unit(p)?))
}

fn ultra_qdiff_pt(d: &mut Draw) {
    d.real("q", 0.3, 0.8);
    d.signed("beta", 0.1, 0.8);
    d.int("n", 0, 6);
    d.real("theta", 0.1, 3.0);
}

fn ultra_qdiff(p: &Point) -> Result<Vec<CheckResult>> {
    let fam = QDiffFamily::Ultraspherical { beta: get_scalar(p, "beta")?, q: QBase::from(get_real(p, "q")?) };
    one(qdiff_residual(fam, get_usize(p, "n")?, unit(p)?))
}

fn bigqj_qdiff_pt(d: &mut Draw) {
    d.real("q", 0.3, 0.8);
    d.real("a", 0.1, 0.9);
    d.real("b", 0.1, 0.9);
    d.real("c", -0.9, -0.1);
    d.int("n", 0, 6);
    d.real("x", -0.5, 0.5);
}

fn bigqj_qdiff(p: &Point) -> Result<Vec<CheckResult>> {
    let [a, b, cc] = ["a", "b", "c"].map(|k| get_scalar(p, k));
    let fam = QDiffFamily::BigQJacobi { a: a?, b: b?, c: cc?, q: QBase::from(get_real(p, "q")?) };
    one(qdiff_residual(fam, get_usize(p, "n")?, get_scalar(p, "x")?))
}

fn limit_points() -> Vec<Point> {
    ["chebyshev", "jacobi", "q-bessel", "ultraspherical-aw", "generating-function"]
        .iter()
        .map(|w| point(&[("limit", Param::from(*w))]))
        .collect()
}

fn ortho_limits(p: &Point) -> Result<Vec<CheckResult>> {
    let which = match get_text(p, "limit")? {
        "chebyshev" => LimitCase::Chebyshev,
        "jacobi" => LimitCase::Jacobi,
        "q-bessel" => LimitCase::QBessel,
        "ultraspherical-aw" => LimitCase::UltrasphericalFromAW,
        _ => LimitCase::GeneratingFunction,
    };
    one(limit_checks(which))
}

fn audit_qbessel_limit(_: &Point) -> Result<Vec<CheckResult>> {
    one(qbessel_limit_audit())
}

fn audit_chebyshev(_: &Point) -> Result<Vec<CheckResult>> {
    one(chebyshev_limit_audit())
}

fn audit_ultra_aw(_: &Point) -> Result<Vec<CheckResult>> {
    one(ultra_aw_factor_audit())
}

// ---- formal ---------------------------------------------------------------

fn formal_rr(_: &Point) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for which in 1u8..=2 {
        let ok = rr_check(which, 200)?;
        out.push(
            CheckResult::exact("FORMAL-RR", 1, ok as usize)
                .with_label("Rogers-Ramanujan sum and product agree as power series")
                .with_param("which", which as usize)
                .with_param("order", 200usize),
        );
    }
    Ok(out)
}

fn formal_triple(_: &Point) -> Result<Vec<CheckResult>> {
    one(triple_product_formal(15, 120))
}

fn agree(series: &Fps, counts: &[num_bigint::BigUint]) -> usize {
    counts
        .iter()
        .enumerate()
        .filter(|(k, v)| *series.coeff(*k) == BigRational::from_integer(BigInt::from((*v).clone())))
        .count()
}

/// Euler-type product expansions against partition counts to order 60.
fn formal_euler(_: &Point) -> Result<Vec<CheckResult>> {
    let n = 60;
    let mut out = Vec::new();
    for big_n in [1usize, 3, 7, 60] {
        let s = inv_qfactorial(big_n, n);
        let counts = partition_count_table(n, Variant::MaxPart(big_n));
        out.push(
            CheckResult::exact("FORMAL-EULER", n + 1, agree(&s, &counts))
                .with_label("1/(q;q)_N counts partitions into parts at most N")
                .with_param("N", big_n),
        );
    }
    let all = poch_series(PochKind::Reciprocal, 1, 1, 1, n)?;
    out.push(
        CheckResult::exact("FORMAL-EULER", n + 1, agree(&all, &partition_count_table(n, Variant::All)))
            .with_label("1/(q;q)_inf counts all partitions"),
    );
    let distinct = poch_series(PochKind::Numerator, -1, 1, 1, n)?;
    out.push(
        CheckResult::exact("FORMAL-EULER", n + 1, agree(&distinct, &partition_count_table(n, Variant::Distinct)))
            .with_label("(-q;q)_inf counts partitions into distinct parts"),
    );
    let odd = poch_series(PochKind::Reciprocal, 1, 1, 2, n)?;
    out.push(
        CheckResult::exact("FORMAL-EULER", n + 1, agree(&odd, &partition_count_table(n, Variant::Odd)))
            .with_label("1/(q;q^2)_inf counts partitions into odd parts"),
    );
    Ok(out)
}

fn formal_nc_binom(_: &Point) -> Result<Vec<CheckResult>> {
    Ok((0..=8u32)
        .map(|n| {
            CheckResult::exact("FORMAL-NC-BINOM", 1, nc_binomial_check(n) as usize)
                .with_label("(x+y)^n for yx = qxy")
                .with_param("n", n as usize)
        })
        .collect())
}

fn formal_nc_exp(_: &Point) -> Result<Vec<CheckResult>> {
    let labels = ["e(x+y) = e(y)e(x)", "E(x+y) = E(x)E(y)", "e(x+y-yx) = e(x)e(y)", "E(x+y+yx) = E(y)E(x)"];
    Ok(nc_exp_checks(8)
        .into_iter()
        .zip(labels)
        .map(|(ok, l)| CheckResult::exact("FORMAL-NC-EXP", 1, ok as usize).with_label(l).with_param("degree", 8usize))
        .collect())
}

// ---- Macdonald ------------------------------------------------------------

fn qt_points() -> Vec<Point> {
    [("1/2", "1/3"), ("2/5", "1/7")]
        .iter()
        .map(|(q, t)| point(&[("q", Param::from(*q)), ("t", Param::from(*t))]))
        .collect()
}

fn qt(p: &Point) -> Result<(Rat, Rat)> {
    Ok((parse_rat(get_text(p, "q")?)?, parse_rat(get_text(p, "t")?)?))
}

fn mac(p: &Point) -> Result<Vec<CheckResult>> {
    let (q, t) = qt(p)?;
    Ok(macdonald_suite(&q, &t, 3, 4, 256)?.into_iter().filter(|r| !r.id.starts_with("AUDIT")).collect())
}

fn mac_audit(p: &Point) -> Result<Vec<CheckResult>> {
    let (q, t) = qt(p)?;
    let cases: Vec<_> = (1..=3).flat_map(|n| (0..=4).flat_map(move |d| partitions_of(d, n).into_iter().map(move |l| (l, n)))).collect();
    one(MacdonaldContext::new(q, t).special_value_audit(&cases))
}

fn ct_points() -> Vec<Point> {
    (1..=3i64).flat_map(|r| (1..=3i64).map(move |k| point(&[("rank", Param::Int(r)), ("k", Param::Int(k))]))).collect()
}

fn ct(p: &Point) -> Result<Vec<CheckResult>> {
    one(constant_term_check(get_usize(p, "rank")?, get_usize(p, "k")?))
}

const GUSTAFSON_ABCD: [f64; 4] = [0.5, 0.4, -0.3, 0.2];

fn gustafson(_: &Point) -> Result<Vec<CheckResult>> {
    let abcd = GUSTAFSON_ABCD.map(re);
    let q = QBase::from(0.6);
    Ok(vec![
        gustafson_aw_check(abcd, q, 256)?,
        gustafson_integral(1, abcd, re(0.3), q, 256)?,
        gustafson_integral(2, abcd, re(0.3), q, 256)?,
    ])
}

// ---- elliptic -------------------------------------------------------------

fn base(p: &Point) -> Result<EllipticBase> {
    EllipticBase::new(get_scalar(p, "q")?, get_scalar(p, "p")?)
}

fn draw_base(d: &mut Draw) {
    d.complex("q", 0.3, 0.7);
    d.complex("p", 0.0, 0.3);
}

fn jackson_pt(d: &mut Draw) {
    draw_base(d);
    for k in ["a", "b", "c", "d"] {
        d.complex(k, 0.2, 0.9);
    }
    d.int("n", 0, 6);
}

/// The summed side of the elliptic Jackson identity, tested for cancellation.
fn jackson_guard(a: Scalar, b: Scalar, cc: Scalar, d: Scalar, n: usize, base: &EllipticBase, tol: f64) -> Result<()> {
    let e = base.q.powi(n as i32 + 1) * a * a / (b * cc * d);
    guard(&v_terms(a, &[b, cc, d, e], base, n)?, tol)
}

/// Both sides of the elliptic Bailey identity, tested for cancellation.
fn bailey_guard(p6: [Scalar; 6], n: usize, base: &EllipticBase, tol: f64) -> Result<()> {
    let [a, b, cc, d, e, f] = p6;
    let q = base.q;
    let qa = q * a;
    let g = q.powi(n as i32 + 2) * a * a * a / (b * cc * d * e * f);
    guard(&v_terms(a, &[b, cc, d, e, f, g], base, n)?, tol)?;
    let a2 = qa * a / (b * cc * d);
    guard(&v_terms(a2, &[qa / (cc * d), qa / (b * d), qa / (b * cc), e, f, g], base, n)?, tol)
}

fn jackson(p: &Point) -> Result<Vec<CheckResult>> {
    let [a, b, cc, d] = ["a", "b", "c", "d"].map(|k| get_scalar(p, k));
    let (a, b, cc, d, n, base) = (a?, b?, cc?, d?, get_usize(p, "n")?, base(p)?);
    jackson_guard(a, b, cc, d, n, &base, ELLIPTIC_TOL)?;
    one(jackson_check(a, b, cc, d, n, &base))
}

const SIX: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

fn bailey_pt(d: &mut Draw) {
    draw_base(d);
    for k in SIX {
        d.complex(k, 0.2, 0.9);
    }
    d.int("n", 0, 4);
}

fn six(p: &Point) -> Result<[Scalar; 6]> {
    let mut out = [re(0.0); 6];
    for (o, k) in out.iter_mut().zip(SIX) {
        *o = get_scalar(p, k)?;
    }
    Ok(out)
}

fn bailey(p: &Point) -> Result<Vec<CheckResult>> {
    let (p6, n, base) = (six(p)?, get_usize(p, "n")?, base(p)?);
    bailey_guard(p6, n, &base, ELLIPTIC_TOL)?;
    one(bailey_check(p6, n, &base))
}

fn p0_pt(d: &mut Draw) {
    d.real("q", 0.3, 0.7);
    for k in SIX {
        d.signed(k, 0.2, 0.9);
    }
    d.int("n", 0, 4);
}

fn p0(p: &Point) -> Result<Vec<CheckResult>> {
    let (p6, n, q) = (six(p)?, get_usize(p, "n")?, get_scalar(p, "q")?);
    let base = EllipticBase::new(q, re(0.0))?;
    jackson_guard(p6[0], p6[1], p6[2], p6[3], n, &base, DEGENERATION_TOL)?;
    bailey_guard(p6, n, &base, DEGENERATION_TOL)?;
    degeneration_checks(p6, n, q)
}

fn gamma_pt(d: &mut Draw) {
    draw_base(d);
    d.complex("z", 0.3, 0.9);
}

fn gamma(p: &Point) -> Result<Vec<CheckResult>> {
    gamma_checks(get_scalar(p, "z")?, &base(p)?, 3)
}

fn periods(d: &mut Draw) {
    let s = c(d.uniform(0.05, 0.2), d.uniform(0.0, 0.1));
    let t = c(d.uniform(-0.2, 0.2), d.uniform(0.25, 0.4));
    d.set("sigma", s);
    d.set("tau", t);
}

fn theta_pt(d: &mut Draw) {
    periods(d);
    d.complex("a", 0.3, 1.5);
    d.complex("x", 0.1, 0.5);
}

fn theta(p: &Point) -> Result<Vec<CheckResult>> {
    let [a, s, t, x] = ["a", "sigma", "tau", "x"].map(|k| get_scalar(p, k));
    let (a, s, t, x) = (a?, s?, t?, x?);
    let mut out = theta_quasi_periodicity(a, s, t, x)?;
    let pv = (Scalar::new(0.0, 2.0 * core::f64::consts::PI) * t).exp();
    out.push(theta_inversion_check(a, pv)?);
    Ok(out)
}

fn e_periodic_pt(d: &mut Draw) {
    periods(d);
    for k in ["a1", "a2", "a3", "b1"] {
        d.complex(k, 0.3, 0.9);
    }
    d.complex("z", 0.3, 0.9);
    d.complex("x", 0.1, 0.4);
}

/// A balanced `3E2`: the last lower parameter solves `a1 a2 a3 = q b1 b2`.
fn e_periodic(p: &Point) -> Result<Vec<CheckResult>> {
    let [a1, a2, a3, b1, s, t, z, x] = ["a1", "a2", "a3", "b1", "sigma", "tau", "z", "x"].map(|k| get_scalar(p, k));
    let (s, b1) = (s?, b1?);
    let upper = [a1?, a2?, a3?];
    let q = (Scalar::new(0.0, 2.0 * core::f64::consts::PI) * s).exp();
    let lower = [b1, upper.iter().product::<Scalar>() / (q * b1)];
    one(e_periodicity_check(&upper, &lower, s, t?, z?, x?))
}

fn vwp_audit(_: &Point) -> Result<Vec<CheckResult>> {
    one(vwp_balance_audit(c(0.7, 0.1), c(0.4, -0.2), c(0.3, 0.3), c(-0.5, 0.1), 3, c(0.11, 0.05), c(0.07, 0.3)))
}

pub(super) fn cases() -> Vec<IdentityCase> {
    use Category::*;
    let fixed = Points::Fixed;
    let once = Points::Fixed(single);
    let sampled = |s: fn(&mut Draw), n: usize| Points::Sampled { sampler: s, default: n };
    vec![
        IdentityCase::checks("ORTHO-AW-ORTH", "Askey-Wilson polynomials: orthogonality", Orthogonality, once, aw_orth),
        IdentityCase::checks("ORTHO-LITTLEQJ-ORTH", "Little q-Jacobi polynomials: orthogonality", Orthogonality, once, little_q_jacobi),
        IdentityCase::checks("ORTHO-QHAHN", "q-Hahn polynomials: orthogonality", Orthogonality, once, q_hahn),
        IdentityCase::checks("ORTHO-QBESSEL-ORTH", "Third q-Bessel functions: orthogonality", Orthogonality, once, q_bessel_orth),
        IdentityCase::checks("ORTHO-SW-ORTH", "Stieltjes-Wigert polynomials: orthogonality", Orthogonality, once, sw_orth),
        IdentityCase::checks("ORTHO-QRACAH", "q-Racah polynomials: orthogonality", Orthogonality, fixed(racah_points), q_racah),
        IdentityCase::checks("ORTHO-RW-DISCRETE", "Rahman-Wilson biorthogonal rational functions: discrete measure", Orthogonality, once, rw_discrete),
        IdentityCase::checks("ORTHO-RW-CONTOUR", "Rahman-Wilson biorthogonal rational functions: contour measure", Orthogonality, once, rw_contour),
        IdentityCase::checks("ORTHO-BIGQJ-ORTH", "Big q-Jacobi polynomials: orthogonality", Orthogonality, once, big_q_jacobi),
        IdentityCase::checks("ORTHO-ULTRA-ORTH", "Continuous q-ultraspherical polynomials: orthogonality", Orthogonality, once, ultra_orth),
        IdentityCase::checks("ORTHO-AW-QDIFF", "Askey-Wilson polynomials: q-difference equation", Orthogonality, sampled(aw_qdiff_pt, 20), aw_qdiff),
        IdentityCase::checks("ORTHO-ULTRA-QDIFF", "Continuous q-ultraspherical polynomials: q-difference equation", Orthogonality, sampled(ultra_qdiff_pt, 20), ultra_qdiff),
        IdentityCase::checks("ORTHO-BIGQJ-QDIFF", "Big q-Jacobi polynomials: q-difference equation", Orthogonality, sampled(bigqj_qdiff_pt, 20), bigqj_qdiff),
        IdentityCase::checks("ORTHO-LIMITS", "Limits and special cases of the q-orthogonal families", Limit, fixed(limit_points), ortho_limits),
        IdentityCase::checks("AUDIT-QBESSEL-LIMIT-FACTOR", "Little q-Jacobi to q-Bessel limit: printed power of q", Audit, once, audit_qbessel_limit),
        IdentityCase::checks("AUDIT-CHEBYSHEV-LIMIT", "q-ultraspherical to Chebyshev limit: printed cos(n theta)", Audit, once, audit_chebyshev),
        IdentityCase::checks("AUDIT-ULTRA-AW-FACTOR", "q-ultraspherical as Askey-Wilson: printed prefactor", Audit, once, audit_ultra_aw),
        IdentityCase::checks("FORMAL-RR", "Rogers-Ramanujan identities", Formal, once, formal_rr),
        IdentityCase::checks("FORMAL-TRIPLE-PRODUCT", "Jacobi triple product identity", Formal, once, formal_triple),
        IdentityCase::checks("FORMAL-EULER", "Partition generating functions", Formal, once, formal_euler),
        IdentityCase::checks("FORMAL-NC-BINOM", "q-binomial theorem for q-commuting variables", Formal, once, formal_nc_binom),
        IdentityCase::checks("FORMAL-NC-EXP", "q-exponentials of q-commuting variables", Formal, once, formal_nc_exp),
        IdentityCase::checks("MAC", "Macdonald polynomials", Macdonald, fixed(qt_points), mac),
        IdentityCase::checks("AUDIT-MAC-SPECIAL-VALUE", "Macdonald polynomials: printed principal specialisation", Audit, fixed(qt_points), mac_audit),
        IdentityCase::checks("CT-MACDONALD", "Macdonald's constant term identity", Macdonald, fixed(ct_points), ct),
        IdentityCase::checks("GUSTAFSON", "Gustafson's multivariable Askey-Wilson integral", Macdonald, once, gustafson),
        IdentityCase::checks("ELLIPTIC-JACKSON", "Elliptic Jackson summation", Elliptic, sampled(jackson_pt, 10), jackson),
        IdentityCase::checks("ELLIPTIC-BAILEY", "Elliptic Bailey transformation", Elliptic, sampled(bailey_pt, 10), bailey),
        IdentityCase::checks("ELLIPTIC-P0", "Elliptic series at p = 0", Elliptic, sampled(p0_pt, 10), p0),
        IdentityCase::checks("ELLIPTIC-GAMMA", "Elliptic gamma function", Elliptic, sampled(gamma_pt, 10), gamma),
        IdentityCase::checks("ELLIPTIC-THETA", "Modified theta function", Elliptic, sampled(theta_pt, 10), theta),
        IdentityCase::checks("ELLIPTIC-E-PERIODIC", "Balanced elliptic series: doubly periodic term ratio", Elliptic, sampled(e_periodic_pt, 10), e_periodic),
        IdentityCase::checks("AUDIT-ELLIPTIC-VWP-BALANCE", "Very-well-poised elliptic series: printed balancing", Audit, once, vwp_audit),
    ]
}
