use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::cubic::preferred_root;
use super::square_zero::{find_square_zero_class, require_b2_two, square_coords};
use crate::error::{Error, Result};
use crate::exact::field::{FieldElem, TowerElem};
use crate::exact::{int, upoly, AlgebraicReal, Field, NumberField, QMatrix, Rational, Ring, Tower, UniPoly};
use crate::graded::QuotientAlgebra;

/// Which step of the normalization produced the pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalizationBranch {
    /// The degree-4 relation is `xy = 0`; a cube root of `y³/x³` is adjoined.
    ProductZero,
    /// After completing the square one of the cubes already vanishes.
    CubeVanishes,
    /// A root of the normalization cubic is adjoined.
    Cubic,
}

/// Generators `x̄, ȳ` of `H²` over a real scalar extension with
/// `x̄² + εȳ² = 0` and `ȳ³ = 0`.
#[derive(Clone, Debug)]
pub struct NormalizedPair {
    pub scalars: Tower,
    pub xbar: Vec<TowerElem>,
    pub ybar: Vec<TowerElem>,
    pub epsilon: i32,
    pub branch: NormalizationBranch,
    /// The degree-4 relation `a·e₁² + b·e₁e₂ + c·e₂²`.
    pub quadratic_relation: [Rational; 3],
    /// `α` with `y₁³ = α·x₁³`, in the first scalar field.
    pub alpha: Option<FieldElem>,
    /// Coefficients (ascending, over the first field) of the polynomial whose root was adjoined last.
    pub cubic: Option<Vec<FieldElem>>,
    /// Coordinates of `x̄² + εȳ²` in `H⁴` and `ȳ³` in `H⁶`, reduced.
    pub witness_relations: [Vec<TowerElem>; 2],
}

impl NormalizedPair {
    pub fn display_class(&self, coords: &[TowerElem], names: &[String]) -> String {
        let t = &self.scalars;
        let mut parts = Vec::new();
        for (c, n) in coords.iter().zip(names) {
            if t.is_zero(c) {
                continue;
            }
            let s = t.display(c);
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

/// The unique degree-4 relation among `e₁², e₁e₂, e₂²` as `(a, b, c)`.
pub fn quadratic_relation(q: &QuotientAlgebra) -> Result<[Rational; 3]> {
    let cols = [square_coords(q, 0, 0)?, square_coords(q, 0, 1)?, square_coords(q, 1, 1)?];
    let m = QMatrix::from_columns(q.dim(4), &cols);
    let k = m.kernel_basis();
    if k.len() != 1 {
        return Err(Error::MalformedRing(format!(
            "expected exactly one relation in degree 4, found {}",
            k.len()
        )));
    }
    let v = &k[0];
    Ok([v[0].clone(), v[1].clone(), v[2].clone()])
}

/// `√r` for a positive rational, as a field element with its field.
fn sqrt_field(r: &Rational) -> (NumberField, FieldElem) {
    let p = UniPoly::new(vec![-r, Rational::zero(), Rational::one()]);
    let root = AlgebraicReal::roots_of(&p).pop().expect("positive number has a square root");
    match root.to_rational() {
        Some(s) => {
            let k = NumberField::rationals();
            let e = k.from_rational(&s);
            (k, e)
        }
        None => {
            let k = NumberField::new(root, "r1").expect("irrational square root");
            let e = k.theta();
            (k, e)
        }
    }
}

fn cbrt_field(r: &Rational) -> (NumberField, FieldElem) {
    let p = UniPoly::new(vec![-r, Rational::zero(), Rational::zero(), Rational::one()]);
    let root = AlgebraicReal::roots_of(&p).pop().expect("real cube root");
    match root.to_rational() {
        Some(s) => {
            let k = NumberField::rationals();
            let e = k.from_rational(&s);
            (k, e)
        }
        None => {
            let k = NumberField::new(root, "r1").expect("irrational cube root");
            let e = k.theta();
            (k, e)
        }
    }
}

fn lift(k: &NumberField, v: &[Rational]) -> Vec<FieldElem> {
    v.iter().map(|c| k.from_rational(c)).collect()
}

fn combo(k: &NumberField, a: &FieldElem, u: &[FieldElem], b: &FieldElem, w: &[FieldElem]) -> Vec<FieldElem> {
    u.iter().zip(w).map(|(x, y)| k.add(&k.mul(a, x), &k.mul(b, y))).collect()
}

fn cube(q: &QuotientAlgebra, k: &NumberField, v: &[FieldElem]) -> Result<FieldElem> {
    let v2 = q.multiply_coords(k, 2, v, 2, v)?;
    Ok(q.multiply_coords(k, 4, &v2, 2, v)?.remove(0))
}

/// Removes the roots `±1` so that `x̄, ȳ` stay independent in the `ε = −1` branch.
fn strip_unit_roots(k: &NumberField, mut f: Vec<FieldElem>) -> Vec<FieldElem> {
    for r in [int(1), int(-1)] {
        let lin = vec![k.from_rational(&-&r), k.one()];
        while f.len() > 1 && k.is_zero(&upoly::eval(k, &f, &k.from_rational(&r))) {
            f = upoly::div_rem(k, &f, &lin).0;
        }
    }
    f
}

/// Adjoins a real root of `f` over `k`: a rational root when `k = ℚ` allows it,
/// otherwise the root of least absolute value (positive on a tie).
fn adjoin_preferred_root(k: &NumberField, f: &[FieldElem]) -> Result<Tower> {
    if k.is_rationals() {
        let p = UniPoly::new(f.iter().map(|c| k.to_rational(c).unwrap()).collect());
        let root = preferred_root(AlgebraicReal::roots_of(&p)).ok_or(crate::exact::field::FieldError::NoRealRoot)?;
        if let Some(r) = root.to_rational() {
            return Ok(Tower::adjoin_root(k.clone(), &[k.from_rational(&-r), k.one()], 0, "r2")?);
        }
        let roots = AlgebraicReal::roots_of(&p);
        let index = roots.iter().position(|r| r.cmp_exact(&root) == Ordering::Equal).unwrap();
        return Ok(Tower::adjoin_root(k.clone(), f, index, "r2")?);
    }
    let count = Tower::real_roots_over(k, f).len();
    if count == 0 {
        return Err(crate::exact::field::FieldError::NoRealRoot.into());
    }
    let width = Rational::new(1.into(), (1u64 << 40).into());
    let mut best: Option<(Rational, bool, Tower)> = None;
    for i in 0..count {
        let t = Tower::adjoin_root(k.clone(), f, i, "r2")?;
        let (lo, hi) = t.top_interval(&width);
        let mid = (&lo + &hi) / int(2);
        let key = (mid.abs(), mid.is_negative());
        if best.as_ref().map_or(true, |(a, neg, _)| (&key.0, key.1) < (a, *neg)) {
            best = Some((key.0, key.1, t));
        }
    }
    Ok(best.unwrap().2)
}

/// Finds `x̄, ȳ` with `x̄² + εȳ² = 0`, `ȳ³ = 0` for a `b₂ = 2` ring without square-zero classes.
pub fn normalize_generators(q: &QuotientAlgebra) -> Result<NormalizedPair> {
    require_b2_two(q)?;
    if q.dim(6) != 1 {
        return Err(Error::MalformedRing(format!("H^6 has dimension {}, expected 1", q.dim(6))));
    }
    let rel = quadratic_relation(q)?;
    if find_square_zero_class(q)?.is_some() {
        return Err(Error::NotInCaseB);
    }
    let [a, b, c] = rel.clone();
    let e1 = vec![int(1), int(0)];
    let e2 = vec![int(0), int(1)];

    if a.is_zero() && c.is_zero() {
        // xy = 0 and y³ = α x³
        let rk = NumberField::rationals();
        let x3 = cube(q, &rk, &lift(&rk, &e1))?;
        let y3 = cube(q, &rk, &lift(&rk, &e2))?;
        if rk.is_zero(&x3) || rk.is_zero(&y3) {
            return Err(Error::DualityViolation("a cube vanishes while xy = 0".into()));
        }
        let alpha = rk.to_rational(&rk.div(&y3, &x3)).unwrap();
        let (k, theta) = cbrt_field(&alpha);
        let x = lift(&k, &e1);
        let y = lift(&k, &e2);
        let xbar = combo(&k, &theta, &x, &k.one(), &y);
        let ybar = combo(&k, &theta, &x, &k.from_rational(&int(-1)), &y);
        return finish(q, Tower::over(k.clone()), &k, xbar, ybar, -1, NormalizationBranch::ProductZero, rel, Some(k.from_rational(&alpha)), None);
    }

    // complete the square in the variable with a nonzero square coefficient
    let (xi, yi, a, b, c) = if a.is_zero() { (e2, e1, c, b, a) } else { (e1, e2, a, b, c) };
    let b1 = &b / &a;
    let c1 = &c / &a;
    let d = &c1 - &b1 * &b1 / int(4);
    if d.is_zero() {
        return Err(Error::NotInCaseB);
    }
    let epsilon = if d.is_positive() { 1 } else { -1 };
    let (k, s) = sqrt_field(&d.abs());
    let half_b = k.from_rational(&(&b1 / int(2)));
    let x1 = combo(&k, &k.one(), &lift(&k, &xi), &half_b, &lift(&k, &yi));
    let y1: Vec<FieldElem> = lift(&k, &yi).iter().map(|c| k.mul(&s, c)).collect();
    let x13 = cube(q, &k, &x1)?;
    let y13 = cube(q, &k, &y1)?;
    if k.is_zero(&y13) {
        return finish(q, Tower::over(k.clone()), &k, x1, y1, epsilon, NormalizationBranch::CubeVanishes, rel, None, None);
    }
    if k.is_zero(&x13) {
        return finish(q, Tower::over(k.clone()), &k, y1, x1, epsilon, NormalizationBranch::CubeVanishes, rel, None, None);
    }
    let alpha = k.div(&y13, &x13);
    let three = k.from_rational(&int(3));
    let three_alpha = k.mul(&three, &alpha);
    let cubic = if epsilon == 1 {
        // 1 − 3a² + α(a³ − 3a)
        vec![k.one(), k.neg(&three_alpha), k.neg(&three), alpha.clone()]
    } else {
        // 1 + 3a² + α(a³ + 3a)
        vec![k.one(), three_alpha, three, alpha.clone()]
    };
    let usable = if epsilon == 1 { cubic.clone() } else { strip_unit_roots(&k, cubic.clone()) };
    if usable.len() <= 1 {
        return Err(Error::DualityViolation("normalization cubic only has the roots 1 and -1".into()));
    }
    let tower = adjoin_preferred_root(&k, &usable)?;
    let root = tower.top_generator();
    let x1t: Vec<TowerElem> = x1.iter().map(|c| tower.embed(c)).collect();
    let y1t: Vec<TowerElem> = y1.iter().map(|c| tower.embed(c)).collect();
    let lin = |p: &TowerElem, u: &[TowerElem], r: &TowerElem, w: &[TowerElem]| -> Vec<TowerElem> {
        u.iter().zip(w).map(|(x, y)| tower.add(&tower.mul(p, x), &tower.mul(r, y))).collect()
    };
    let one = tower.one();
    let sign = tower.from_rational(&int(-epsilon as i64));
    // ε = +1: x̄ = a·x₁ − y₁; ε = −1: x̄ = a·x₁ + y₁; ȳ = x₁ + a·y₁
    let xbar = lin(&root, &x1t, &sign, &y1t);
    let ybar = lin(&one, &x1t, &root, &y1t);
    verify(q, tower, xbar, ybar, epsilon, NormalizationBranch::Cubic, rel, Some(alpha), Some(cubic))
}

#[allow(clippy::too_many_arguments)]
fn finish(
    q: &QuotientAlgebra,
    tower: Tower,
    k: &NumberField,
    xbar: Vec<FieldElem>,
    ybar: Vec<FieldElem>,
    epsilon: i32,
    branch: NormalizationBranch,
    rel: [Rational; 3],
    alpha: Option<FieldElem>,
    cubic: Option<Vec<FieldElem>>,
) -> Result<NormalizedPair> {
    debug_assert_eq!(tower.base().degree(), k.degree());
    let xbar = xbar.iter().map(|c| tower.embed(c)).collect();
    let ybar = ybar.iter().map(|c| tower.embed(c)).collect();
    verify(q, tower, xbar, ybar, epsilon, branch, rel, alpha, cubic)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    q: &QuotientAlgebra,
    tower: Tower,
    xbar: Vec<TowerElem>,
    ybar: Vec<TowerElem>,
    epsilon: i32,
    branch: NormalizationBranch,
    rel: [Rational; 3],
    alpha: Option<FieldElem>,
    cubic: Option<Vec<FieldElem>>,
) -> Result<NormalizedPair> {
    let t = &tower;
    let x2 = q.multiply_coords(t, 2, &xbar, 2, &xbar)?;
    let y2 = q.multiply_coords(t, 2, &ybar, 2, &ybar)?;
    let eps = t.from_rational(&int(epsilon as i64));
    let w4: Vec<TowerElem> = x2.iter().zip(&y2).map(|(a, b)| t.add(a, &t.mul(&eps, b))).collect();
    let w6 = q.multiply_coords(t, 4, &y2, 2, &ybar)?;
    if !w4.iter().chain(&w6).all(|c| t.is_zero(c)) {
        return Err(Error::ReductionMismatch("normalized generators do not satisfy their relations".into()));
    }
    // the determinant is a² + 1, or a² − 1 with the roots ±1 removed, or lies in the base field
    let det = t.sub(&t.mul(&xbar[0], &ybar[1]), &t.mul(&xbar[1], &ybar[0]));
    if t.is_zero(&det) {
        return Err(Error::ReductionMismatch("normalized generators are dependent".into()));
    }
    Ok(NormalizedPair {
        scalars: tower,
        xbar,
        ybar,
        epsilon,
        branch,
        quadratic_relation: rel,
        alpha,
        cubic,
        witness_relations: [w4, w6],
    })
}
