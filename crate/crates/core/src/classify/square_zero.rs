use num_traits::Zero;

use super::cubic::preferred_root;
use crate::error::{Error, Result};
use crate::exact::field::FieldElem;
use crate::exact::{formal_resultant, AlgebraicReal, Field, NumberField, Rational, Ring, UniPoly};
use crate::graded::QuotientAlgebra;

/// A degree-2 class with coefficients in a real number field, in the `H²` basis.
#[derive(Clone, Debug)]
pub struct ScalarClass {
    pub field: NumberField,
    pub coords: Vec<FieldElem>,
}

impl ScalarClass {
    pub fn display(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (c, n) in self.coords.iter().zip(names) {
            if self.field.is_zero(c) {
                continue;
            }
            let s = self.field.display(c);
            parts.push(match s.as_str() {
                "1" => n.clone(),
                "-1" => format!("-{n}"),
                _ if s.contains(' ') => format!("({s})*{n}"),
                _ => format!("{s}*{n}"),
            });
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Result of the square-zero search on `H²` of a `b₂ = 2` ring.
#[derive(Clone, Debug)]
pub struct SquareZeroSearch {
    /// `q_k(s) = (s·e₁ + e₂)²` read in the k-th `H⁴` coordinate.
    pub quadratics: Vec<UniPoly>,
    /// Resultant of the two quadratics as binary forms, when both are nonzero.
    pub resultant: Option<Rational>,
    pub class: Option<ScalarClass>,
}

pub(crate) fn require_b2_two(q: &QuotientAlgebra) -> Result<()> {
    if q.dim(2) != 2 {
        return Err(Error::MalformedRing(format!("H^2 has dimension {}, expected 2", q.dim(2))));
    }
    if q.dim(4) > 2 {
        return Err(Error::MalformedRing(format!("H^4 has dimension {}, expected at most 2", q.dim(4))));
    }
    Ok(())
}

/// Coordinates of `e_i·e_j` for the degree-2 basis.
pub(crate) fn square_coords(q: &QuotientAlgebra, i: usize, j: usize) -> Result<Vec<Rational>> {
    Ok(q.basis_product(2, i, 2, j)?.1)
}

pub fn square_zero_search(q: &QuotientAlgebra) -> Result<SquareZeroSearch> {
    require_b2_two(q)?;
    let p = square_coords(q, 0, 0)?;
    let m = square_coords(q, 0, 1)?;
    let s = square_coords(q, 1, 1)?;
    let two = Rational::from_integer(2.into());
    let quadratics: Vec<UniPoly> = (0..q.dim(4))
        .map(|k| UniPoly::new(vec![s[k].clone(), &two * &m[k], p[k].clone()]))
        .collect();
    let nonzero: Vec<&UniPoly> = quadratics.iter().filter(|f| !f.is_zero()).collect();
    let res = (nonzero.len() == 2).then(|| formal_resultant(nonzero[0], 2, nonzero[1], 2));

    let rationals = NumberField::rationals();
    let q0 = || rationals.zero();
    let q1 = || rationals.one();
    // t = 0: e₁ itself
    if p.iter().all(Zero::is_zero) {
        let class = ScalarClass { field: rationals.clone(), coords: vec![q1(), q0()] };
        return Ok(SquareZeroSearch { quadratics, resultant: res, class: Some(class) });
    }
    // t = 1: common real roots of the quadratics in s
    let g = nonzero.iter().fold(UniPoly::zero(), |acc, f| acc.gcd(f));
    let class = if nonzero.is_empty() {
        Some(ScalarClass { field: rationals.clone(), coords: vec![q0(), q1()] })
    } else if g.degree() == Some(0) {
        None
    } else {
        preferred_root(AlgebraicReal::roots_of(&g)).map(|root| match root.to_rational() {
            Some(r) => ScalarClass { field: rationals.clone(), coords: vec![rationals.from_rational(&r), q1()] },
            None => {
                let k = NumberField::new(root, "r1").expect("irrational root of a quadratic");
                ScalarClass { coords: vec![k.theta(), k.one()], field: k }
            }
        })
    };
    Ok(SquareZeroSearch { quadratics, resultant: res, class })
}

/// A nonzero real class `v = s·e₁ + t·e₂` with `v² = 0`, if one exists.
pub fn find_square_zero_class(q: &QuotientAlgebra) -> Result<Option<ScalarClass>> {
    Ok(square_zero_search(q)?.class)
}

/// Generators `v, w` of `H²` with `v² = 0`, `w³ = 0`, `v·w² ≠ 0`.
#[derive(Clone, Debug)]
pub struct S2Cp2Witness {
    pub v: ScalarClass,
    pub w: ScalarClass,
}

/// Matches the ring against the `S²×ℂP²` multiplication given a square-zero class.
pub fn match_s2_cp2(q: &QuotientAlgebra, v: &ScalarClass) -> Result<Option<S2Cp2Witness>> {
    let k = &v.field;
    let vv = q.multiply_coords(k, 2, &v.coords, 2, &v.coords)?;
    if !vv.iter().all(|c| k.is_zero(c)) {
        return Err(Error::ReductionMismatch("square-zero class does not square to zero".into()));
    }
    if q.dim(6) != 1 {
        return Ok(None);
    }
    // w: the basis vector not parallel to v
    let w0 = if k.is_zero(&v.coords[1]) { vec![k.zero(), k.one()] } else { vec![k.one(), k.zero()] };
    let ww = q.multiply_coords(k, 2, &w0, 2, &w0)?;
    let alpha = q.multiply_coords(k, 4, &ww, 2, &w0)?.remove(0);
    let beta = q.multiply_coords(k, 4, &ww, 2, &v.coords)?.remove(0);
    if k.is_zero(&beta) {
        return Ok(None);
    }
    let lambda = k.neg(&k.div(&alpha, &k.scale(&Rational::from_integer(3.into()), &beta)));
    let w: Vec<FieldElem> = w0.iter().zip(&v.coords).map(|(a, b)| k.add(a, &k.mul(&lambda, b))).collect();
    let w2 = q.multiply_coords(k, 2, &w, 2, &w)?;
    let w3 = q.multiply_coords(k, 4, &w2, 2, &w)?;
    let vw2 = q.multiply_coords(k, 4, &w2, 2, &v.coords)?;
    if !w3.iter().all(|c| k.is_zero(c)) || vw2.iter().all(|c| k.is_zero(c)) {
        return Err(Error::ReductionMismatch("S^2 x CP^2 generators failed verification".into()));
    }
    Ok(Some(S2Cp2Witness { v: v.clone(), w: ScalarClass { field: k.clone(), coords: w } }))
}
