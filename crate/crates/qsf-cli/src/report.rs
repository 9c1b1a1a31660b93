//! JSON suite reports with a byte-stable layout.

use std::io;

use qsf::check::Param;
use qsf::idsuite::SuiteEntry;
use qsf::Scalar;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{json, Map, Value};

/// Pretty printing, with every float written to 17 significant digits.
struct Fixed17<'a>(PrettyFormatter<'a>);

impl Formatter for Fixed17<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write!(w, "{}", fixed17(v))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn end_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_key(w)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// `v` in scientific notation with 17 significant digits.
pub fn fixed17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Non-finite numbers have no JSON form and become `null`.
fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

fn pair(z: Scalar) -> Value {
    json!([num(z.re), num(z.im)])
}

fn param(p: &Param) -> Value {
    match p {
        Param::Int(i) => json!(i),
        Param::Real(x) => num(*x),
        Param::Complex(z) => pair(*z),
        Param::Text(s) => json!(s),
    }
}

fn case(e: &SuiteEntry) -> Value {
    let r = &e.result;
    let params: Map<String, Value> = r.params.iter().map(|(k, v)| (k.clone(), param(v))).collect();
    json!({
        "id": r.id,
        "paper_eq": e.paper_eq,
        "params": params,
        "lhs": pair(r.lhs),
        "rhs": pair(r.rhs),
        "rel_err": num(r.rel_err),
        "tol": num(r.tol),
        "status": r.status.as_str(),
        "note": r.note,
    })
}

/// The report document. Keys are sorted because `serde_json` maps are
/// ordered; case order is the order of `entries`.
pub fn report(seed: u64, entries: &[SuiteEntry]) -> Value {
    let (pass, fail, skip) = qsf::idsuite::summary(entries);
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "seed": seed,
        "cases": entries.iter().map(case).collect::<Vec<_>>(),
        "summary": { "pass": pass, "fail": fail, "skip": skip },
    })
}

pub fn render(v: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Fixed17(PrettyFormatter::new()));
    serde::Serialize::serialize(v, &mut ser).expect("writing to memory cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}
