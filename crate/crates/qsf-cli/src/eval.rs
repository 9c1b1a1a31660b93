//! `qsf eval FUNCTION --name value ...`

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use qsf::elliptic::{elliptic_gamma, theta_mod, EllipticBase};
use qsf::qcore::{qbinom, qpoch, theta4, Order};
use qsf::qortho::{aw_eval, family_eval, AWParams, Family};
use qsf::qseries::{eval_phi, eval_psi, q_beta, q_bessel, q_cos, q_exp, q_gamma, q_sin, ExpKind, PhiSpec, PsiSpec, TOL};
use qsf::{QBase, QError, Scalar};

pub const FUNCTIONS: &[(&str, &str)] = &[
    ("qpoch", "--a A --q Q [--k K|inf]"),
    ("qbinom", "--n N --k K --q Q"),
    ("qgamma", "--z Z --q Q"),
    ("qbeta", "--a A --b B --q Q"),
    ("qexp", "--z Z --q Q [--kind e|E|eps]"),
    ("qcos", "--x X --q Q [--kind e|E|eps]"),
    ("qsin", "--x X --q Q [--kind e|E|eps]"),
    ("qbessel", "--kind 1|2|3 --nu NU --x X --q Q"),
    ("phi", "--a A1,A2,.. --b B1,.. --q Q --z Z [--n N]"),
    ("psi", "--a A1,.. --b B1,.. --q Q --z Z"),
    ("theta4", "--x X --q Q"),
    ("theta", "--x X --p P"),
    ("egamma", "--z Z --q Q --p P"),
    ("aw", "--n N --x X --a A --b B --c C --d D --q Q"),
    ("ultraspherical", "--n N --x X --beta BETA --q Q"),
    ("little-qjacobi", "--n N --x X --a A --b B --q Q"),
    ("big-qjacobi", "--n N --x X --a A --b B --c C --q Q"),
    ("stieltjes-wigert", "--n N --x X --q Q"),
];

#[derive(Debug)]
pub enum EvalError {
    Usage(String),
    Math(QError),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Usage(s) => write!(f, "{s}"),
            EvalError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl From<QError> for EvalError {
    fn from(e: QError) -> Self {
        EvalError::Math(e)
    }
}

type Res<T> = Result<T, EvalError>;

fn usage<T>(msg: impl Into<String>) -> Res<T> {
    Err(EvalError::Usage(msg.into()))
}

/// Parses `1.5`, `2i`, `0.3-0.2i` or `-1e-3+4e-1i`.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    if let Ok(x) = s.parse::<f64>() {
        return Some(Scalar::new(x, 0.0));
    }
    let body = s.strip_suffix('i')?;
    let b = body.as_bytes();
    // the split is the last sign that is neither leading nor an exponent sign
    let cut = (1..b.len()).rev().find(|&i| (b[i] == b'+' || b[i] == b'-') && !matches!(b[i - 1], b'e' | b'E'));
    let (re, im) = match cut {
        Some(i) => (body[..i].parse().ok()?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse().ok()?,
    };
    Some(Scalar::new(re, im))
}

/// Named arguments; every one must be consumed.
pub struct Args {
    map: BTreeMap<String, String>,
    used: BTreeSet<String>,
}

impl Args {
    pub fn parse(raw: &[String]) -> Res<Self> {
        let mut map = BTreeMap::new();
        let mut it = raw.iter();
        while let Some(k) = it.next() {
            let Some(key) = k.strip_prefix("--") else {
                return usage(format!("expected --name, found {k:?}"));
            };
            let (key, val) = match key.split_once('=') {
                Some((k, v)) => (k.to_string(), v.to_string()),
                None => match it.next() {
                    Some(v) => (key.to_string(), v.clone()),
                    None => return usage(format!("--{key} needs a value")),
                },
            };
            if map.insert(key.clone(), val).is_some() {
                return usage(format!("--{key} given twice"));
            }
        }
        Ok(Args { map, used: BTreeSet::new() })
    }

    fn raw(&mut self, key: &str) -> Option<String> {
        self.used.insert(key.to_string());
        self.map.get(key).cloned()
    }

    fn opt_scalar(&mut self, key: &str) -> Res<Option<Scalar>> {
        match self.raw(key) {
            None => Ok(None),
            Some(s) => parse_scalar(&s).map(Some).ok_or_else(|| EvalError::Usage(format!("--{key}: not a number: {s}"))),
        }
    }

    fn scalar(&mut self, key: &str) -> Res<Scalar> {
        self.opt_scalar(key)?.ok_or_else(|| EvalError::Usage(format!("missing --{key}")))
    }

    fn real(&mut self, key: &str) -> Res<f64> {
        let z = self.scalar(key)?;
        if z.im != 0.0 {
            return usage(format!("--{key} must be real"));
        }
        Ok(z.re)
    }

    fn int(&mut self, key: &str) -> Res<i64> {
        let s = self.raw(key).ok_or_else(|| EvalError::Usage(format!("missing --{key}")))?;
        s.trim().parse().map_err(|_| EvalError::Usage(format!("--{key}: not an integer: {s}")))
    }

    fn usize(&mut self, key: &str) -> Res<usize> {
        usize::try_from(self.int(key)?).map_err(|_| EvalError::Usage(format!("--{key} must be non-negative")))
    }

    fn list(&mut self, key: &str) -> Res<Vec<Scalar>> {
        match self.raw(key) {
            None => Ok(Vec::new()),
            Some(s) if s.trim().is_empty() => Ok(Vec::new()),
            Some(s) => s
                .split(',')
                .map(|t| parse_scalar(t).ok_or_else(|| EvalError::Usage(format!("--{key}: not a number: {t}"))))
                .collect(),
        }
    }

    fn q(&mut self) -> Res<QBase> {
        Ok(QBase::new(self.scalar("q")?))
    }

    fn kind(&mut self) -> Res<ExpKind> {
        match self.raw("kind").as_deref() {
            None | Some("e") => Ok(ExpKind::Small),
            Some("E") => Ok(ExpKind::Big),
            Some("eps") => Ok(ExpKind::Epsilon),
            Some(k) => usage(format!("--kind must be e, E or eps, not {k}")),
        }
    }

    fn finish(&self) -> Res<()> {
        match self.map.keys().find(|k| !self.used.contains(*k)) {
            Some(k) => usage(format!("unknown argument --{k}")),
            None => Ok(()),
        }
    }
}

fn family(a: &mut Args, f: Family, q: QBase) -> Res<Scalar> {
    let n = a.usize("n")?;
    let x = a.scalar("x")?;
    a.finish()?;
    Ok(family_eval(&f, n, x, q)?)
}

/// Evaluates `func` with its named arguments.
pub fn eval(func: &str, raw: &[String]) -> Res<Scalar> {
    let mut a = Args::parse(raw)?;
    let v = match func {
        "qpoch" => {
            let (x, q) = (a.scalar("a")?, a.q()?);
            let k = match a.raw("k").as_deref() {
                None | Some("inf") => Order::Infinity,
                Some(s) => Order::Fin(s.parse().map_err(|_| EvalError::Usage(format!("--k: not an integer: {s}")))?),
            };
            a.finish()?;
            qpoch(x, q, k)?
        }
        "qbinom" => {
            let (n, k, q) = (a.int("n")?, a.int("k")?, a.q()?);
            a.finish()?;
            qbinom(n, k, q)?
        }
        "qgamma" => {
            let (z, q) = (a.scalar("z")?, a.q()?);
            a.finish()?;
            q_gamma(z, q)?
        }
        "qbeta" => {
            let (x, y, q) = (a.scalar("a")?, a.scalar("b")?, a.q()?);
            a.finish()?;
            q_beta(x, y, q)?
        }
        "qexp" | "qcos" | "qsin" => {
            let kind = a.kind()?;
            let q = a.q()?;
            let arg = a.scalar(if func == "qexp" { "z" } else { "x" })?;
            a.finish()?;
            match func {
                "qexp" => q_exp(kind, arg, q)?,
                "qcos" => q_cos(kind, arg, q)?,
                _ => q_sin(kind, arg, q)?,
            }
        }
        "qbessel" => {
            let kind = a.int("kind")?;
            if !(1..=3).contains(&kind) {
                return usage("--kind must be 1, 2 or 3");
            }
            let (nu, x, q) = (a.real("nu")?, a.real("x")?, a.q()?);
            a.finish()?;
            q_bessel(kind as u8, nu, x, q)?
        }
        "phi" => {
            let (up, lo, q, z) = (a.list("a")?, a.list("b")?, a.q()?, a.scalar("z")?);
            let n = if a.map.contains_key("n") { Some(a.usize("n")?) } else { None };
            a.finish()?;
            let mut spec = PhiSpec::new(&up, &lo, q, z);
            if let Some(n) = n {
                spec = spec.terminating(n);
            }
            eval_phi(&spec, TOL)?
        }
        "psi" => {
            let (up, lo, q, z) = (a.list("a")?, a.list("b")?, a.q()?, a.scalar("z")?);
            a.finish()?;
            eval_psi(&PsiSpec::new(&up, &lo, q, z), TOL)?
        }
        "theta4" => {
            let (x, q) = (a.real("x")?, a.q()?);
            a.finish()?;
            theta4(x, q)?
        }
        "theta" => {
            let (x, p) = (a.scalar("x")?, a.scalar("p")?);
            a.finish()?;
            theta_mod(x, p)?
        }
        "egamma" => {
            let (z, q, p) = (a.scalar("z")?, a.scalar("q")?, a.scalar("p")?);
            a.finish()?;
            elliptic_gamma(z, &EllipticBase::new(q, p)?)?
        }
        "aw" => {
            let n = a.usize("n")?;
            let x = a.scalar("x")?;
            let (pa, pb, pc, pd, q) = (a.scalar("a")?, a.scalar("b")?, a.scalar("c")?, a.scalar("d")?, a.q()?);
            a.finish()?;
            aw_eval(n, x, &AWParams::new(pa, pb, pc, pd, q)?)?
        }
        "ultraspherical" => {
            let (beta, q) = (a.scalar("beta")?, a.q()?);
            family(&mut a, Family::Ultraspherical { beta }, q)?
        }
        "little-qjacobi" => {
            let (pa, pb, q) = (a.scalar("a")?, a.scalar("b")?, a.q()?);
            family(&mut a, Family::LittleQJacobi { a: pa, b: pb }, q)?
        }
        "big-qjacobi" => {
            let (pa, pb, pc, q) = (a.scalar("a")?, a.scalar("b")?, a.scalar("c")?, a.q()?);
            family(&mut a, Family::BigQJacobi { a: pa, b: pb, c: pc }, q)?
        }
        "stieltjes-wigert" => {
            let q = a.q()?;
            family(&mut a, Family::StieltjesWigert, q)?
        }
        _ => return usage(format!("unknown function {func:?}; try `qsf eval --list`")),
    };
    Ok(v)
}

/// The shortest decimal that reads back as `v`, or `re+imi` when complex.
pub fn format_scalar(v: Scalar) -> String {
    if v.im == 0.0 {
        format!("{}", v.re)
    } else if v.im < 0.0 {
        format!("{}-{}i", v.re, -v.im)
    } else {
        format!("{}+{}i", v.re, v.im)
    }
}
