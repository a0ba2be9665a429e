use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::biquotient::{FreenessReport, ObstructionReport};
use crate::classify::{Classification, NormalizedPair, ScalarClass, SquareZeroSearch};
use crate::exact::field::FieldElem;
use crate::exact::rational::fmt_rational;
use crate::exact::{AlgebraicReal, NumberField, Rational, Ring};
use crate::graded::{FreeAlgebra, QuotientAlgebra};
use crate::model::{Dga, FormalityCertificate, PartialModel, RankTable};

pub fn rational(q: &Rational) -> Value {
    Value::String(fmt_rational(q))
}

/// JSON number when it fits in an `i64`, else a decimal string.
pub fn integer(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => Value::String(n.to_string()),
    }
}

/// `(polynomial in var, isolating interval)`, the interval narrowed to width at most 2⁻²⁰.
pub fn algebraic(a: &AlgebraicReal, var: &str) -> Value {
    if let Some(q) = a.to_rational() {
        return json!({ "polynomial": format!("{var} - {}", fmt_rational(&q)).replace("- -", "+ "), "interval": [fmt_rational(&q), fmt_rational(&q)] });
    }
    let a = a.refine(&Rational::new(1.into(), BigInt::from(1u64 << 20)));
    let (lo, hi) = a.interval();
    json!({ "polynomial": a.poly().display_in(var), "interval": [fmt_rational(lo), fmt_rational(hi)] })
}

fn field(k: &NumberField) -> Value {
    if k.is_rationals() {
        return Value::Null;
    }
    json!({ "name": k.name(), "value": algebraic(k.generator(), k.name()) })
}

pub fn ranks(r: &RankTable) -> Value {
    let m: Map<String, Value> = r.nonzero().into_iter().map(|(d, n)| (d.to_string(), json!(n))).collect();
    json!({ "max_degree": r.max_degree, "nonzero": m })
}

fn names(alg: &FreeAlgebra) -> Vec<String> {
    alg.generators().iter().map(|g| g.name.clone()).collect()
}

fn dga_generators(dga: &Dga) -> Value {
    dga.generators()
        .iter()
        .enumerate()
        .map(|(i, g)| json!({ "name": g.name, "degree": g.degree, "differential": dga.display_differential(i) }))
        .collect()
}

pub fn model(pm: &PartialModel, r: &RankTable) -> Value {
    let dga = pm.dga();
    let target = pm.target().algebra();
    let gens: Vec<Value> = dga
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            json!({
                "name": g.name,
                "degree": g.degree,
                "differential": dga.display_differential(i),
                "image": target.display(pm.image(i)),
            })
        })
        .collect();
    json!({ "generators": gens, "ranks": ranks(r) })
}

pub fn duality(q: &QuotientAlgebra, n: u32) -> Value {
    let betti: Vec<usize> = (0..=n.min(q.cap())).map(|d| q.dim(d)).collect();
    json!({
        "dimension": n,
        "betti": betti,
        "top_dimension": q.dim(n),
        "pairing_nondegenerate": q.poincare_pairing_check(n),
    })
}

pub fn borel(c: &FormalityCertificate) -> Value {
    json!({
        "regular": c.regular,
        "generators": dga_generators(&c.model),
        "predicted_series": c.predicted_series,
        "actual_series": c.actual_series,
    })
}

fn scalar_class(v: &ScalarClass, names: &[String]) -> Value {
    json!({ "class": v.display(names), "field": field(&v.field) })
}

fn square_zero(s: &SquareZeroSearch, names: &[String]) -> Value {
    json!({
        "quadratics": s.quadratics.iter().map(|f| f.display_in("s")).collect::<Vec<_>>(),
        "resultant": s.resultant.as_ref().map(rational),
        "class": s.class.as_ref().map(|v| scalar_class(v, names)),
    })
}

/// `Σ cᵢ·varⁱ` with coefficients in `k`, highest power first.
fn poly_over(k: &NumberField, coeffs: &[FieldElem], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if k.is_zero(c) {
            continue;
        }
        let power = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let s = k.display(c);
        parts.push(match (s.as_str(), power.is_empty()) {
            (_, true) => s.clone(),
            ("1", false) => power,
            ("-1", false) => format!("-{power}"),
            _ if s.contains(' ') => format!("({s})*{power}"),
            _ => format!("{s}*{power}"),
        });
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ").replace("+ -", "- ")
}

fn normalized(p: &NormalizedPair, names: &[String]) -> Value {
    let t = &p.scalars;
    let top = (t.top_degree() > 1).then(|| {
        json!({
            "name": t.name(),
            "polynomial_over_base": p.cubic.as_ref().map(|c| poly_over(t.base(), c, t.name())),
            "value": algebraic(&t.top_as_algebraic(), t.name()),
        })
    });
    let branch = format!("{:?}", p.branch);
    json!({
        "epsilon": p.epsilon,
        "branch": branch,
        "quadratic_relation": p.quadratic_relation.iter().map(rational).collect::<Vec<_>>(),
        "alpha": p.alpha.as_ref().map(|a| t.base().display(a)),
        "base_field": field(t.base()),
        "extension": top,
        "xbar": p.display_class(&p.xbar, names),
        "ybar": p.display_class(&p.ybar, names),
        "witness_relations_vanish": p.witness_relations.iter().all(|w| w.iter().all(|c| t.is_zero(c))),
    })
}

pub fn classification(c: &Classification, q: &QuotientAlgebra) -> Value {
    let names = names(q.algebra());
    let mut m = Map::new();
    m.insert("dimension".into(), json!(c.dimension));
    m.insert("verdict".into(), json!(c.verdict.tag));
    m.insert("detail".into(), json!(c.verdict.detail));
    m.insert("betti".into(), json!(c.betti));
    if let Some(r) = &c.ranks {
        m.insert("ranks".into(), ranks(r));
    }
    if let Some(p) = &c.pi3 {
        m.insert("pi3".into(), json!(p));
    }
    if let Some(s) = &c.square_zero {
        m.insert("square_zero".into(), square_zero(s, &names));
    }
    if let Some(w) = &c.s2_cp2 {
        m.insert("s2_cp2".into(), json!({ "v": w.v.display(&names), "w": w.w.display(&names), "field": field(&w.v.field) }));
    }
    if let Some(p) = &c.normalized {
        m.insert("normalized".into(), normalized(p, &names));
    }
    Value::Object(m)
}

pub fn freeness(f: &FreenessReport) -> Value {
    json!({
        "diagonal_ok": f.diagonal_ok,
        "minor_values": f.minor_values.iter().map(integer).collect::<Vec<_>>(),
        "det_value": integer(&f.det_value),
        "free": f.free,
    })
}

pub fn obstruction(o: &ObstructionReport, alg: &FreeAlgebra) -> Value {
    json!({
        "omega2_tilde": alg.display(&o.omega2_tilde),
        "omega3_tilde": alg.display(&o.omega3_tilde),
        "p": rational(&o.p),
        "q": rational(&o.q),
        "coefficient": rational(&o.coefficient),
        "top_class_nonzero": o.top_class_nonzero,
        "verdict": o.verdict,
    })
}
