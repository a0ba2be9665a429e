use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, Interval, Rational, Q};
use super::upoly;

/// Univariate polynomial over ℚ, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        upoly::trim(&Q, &mut coeffs);
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        upoly::degree(&self.coeffs)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        upoly::eval(&Q, &self.coeffs, x)
    }

    pub fn eval_interval(&self, x: &Interval) -> Interval {
        Interval::eval_poly(&self.coeffs, x)
    }

    pub fn derivative(&self) -> Self {
        UniPoly { coeffs: upoly::derivative(&Q, &self.coeffs) }
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let (q, r) = upoly::div_rem(&Q, &self.coeffs, &d.coeffs);
        (UniPoly { coeffs: q }, UniPoly { coeffs: r })
    }

    pub fn monic(&self) -> Self {
        UniPoly { coeffs: upoly::monic(&Q, &self.coeffs) }
    }

    pub fn gcd(&self, o: &UniPoly) -> Self {
        UniPoly { coeffs: upoly::gcd(&Q, &self.coeffs, &o.coeffs) }
    }

    pub fn squarefree_part(&self) -> Self {
        UniPoly { coeffs: upoly::squarefree_part(&Q, &self.coeffs) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UniPoly { coeffs: upoly::scale(&Q, c, &self.coeffs) }
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn sturm_chain(&self) -> Vec<UniPoly> {
        upoly::sturm_chain(&Q, &self.coeffs)
            .into_iter()
            .map(|coeffs| UniPoly { coeffs })
            .collect()
    }

    /// Number of distinct real roots in the open interval; endpoints must not be roots.
    pub fn count_roots(&self, lo: &Rational, hi: &Rational) -> usize {
        let chain = upoly::sturm_chain(&Q, &upoly::squarefree_part(&Q, &self.coeffs));
        upoly::count_roots(&Q, &chain, lo, hi)
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &l).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        for c in &mut ints {
            *c = &*c / &g * &sign;
        }
        ints
    }

    /// Displays with the given variable name, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_rational(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", fmt_rational(&a), mono));
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        UniPoly { coeffs: upoly::add(&Q, &self.coeffs, &o.coeffs) }
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        UniPoly { coeffs: upoly::sub(&Q, &self.coeffs, &o.coeffs) }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        UniPoly { coeffs: upoly::mul(&Q, &self.coeffs, &o.coeffs) }
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: upoly::neg(&Q, &self.coeffs) }
    }
}

/// Isolating intervals for the distinct real roots of `p`, ascending.
///
/// Each interval `(lo, hi)` has `lo < hi`, contains exactly one root of the
/// squarefree part of `p`, and has non-root endpoints.
pub fn sturm_isolate(p: &UniPoly) -> Vec<(Rational, Rational)> {
    assert!(!p.is_zero(), "sturm_isolate of the zero polynomial");
    upoly::isolate_real_roots(&Q, &p.coeffs)
}

/// Finds a rational root of the squarefree `p` inside the isolating interval, if any.
pub fn rational_root_in(p: &UniPoly, lo: &Rational, hi: &Rational) -> Option<Rational> {
    if lo == hi {
        return p.eval(lo).is_zero().then(|| lo.clone());
    }
    let ints = p.primitive_integer();
    let lc = ints.last()?.abs();
    // denominators of rational roots divide the leading coefficient
    if lc.bits() > 40 {
        return None;
    }
    let lc_u: u64 = lc.try_into().ok()?;
    let width = Rational::new(BigInt::one(), BigInt::from(lc_u) * BigInt::from(lc_u) * 2u32);
    let (lo, hi) = upoly::refine_interval(&Q, &p.coeffs, lo, hi, &width);
    if lo == hi {
        return Some(lo);
    }
    let mut d = 1u64;
    while d * d <= lc_u {
        if lc_u % d == 0 {
            for q in [d, lc_u / d] {
                let qb = Rational::from_integer(q.into());
                let start = (&lo * &qb).ceil();
                let mut num = start;
                while num <= &hi * &qb {
                    let cand = &num / &qb;
                    if p.eval(&cand).is_zero() {
                        return Some(cand);
                    }
                    num += Rational::one();
                }
            }
        }
        d += 1;
    }
    None
}
