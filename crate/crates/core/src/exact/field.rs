//! Real scalar extensions ℚ ⊂ ℚ(r1) ⊂ ℚ(r1)[r2]/(f).
//!
//! The first level is a genuine field (its modulus is irreducible of degree
//! at most three). The second level is the quotient by a monic polynomial over
//! that field; it is only used as a ring, which is enough to certify that an
//! expression vanishes at the chosen real root.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::algebraic::{rational_to_f64, resultant_in_y, AlgebraicReal};
use super::poly::UniPoly;
use super::rational::{Field, Interval, Rational, RealField, Ring};
use super::upoly;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("defining polynomial {0} is reducible over the rationals")]
    Reducible(String),
    #[error("defining polynomial of degree {0} is not supported (at most 3)")]
    DegreeTooLarge(usize),
    #[error("polynomial has no real root")]
    NoRealRoot,
}

/// A real number field ℚ(θ) of degree at most three.
#[derive(Clone, Debug)]
pub struct NumberField {
    modulus: UniPoly,
    generator: AlgebraicReal,
    name: String,
}

pub type FieldElem = Vec<Rational>;

impl NumberField {
    /// ℚ itself, presented with modulus `t`.
    pub fn rationals() -> Self {
        NumberField {
            modulus: UniPoly::x(),
            generator: AlgebraicReal::from_rational(Rational::zero()),
            name: "r1".into(),
        }
    }

    /// ℚ(θ) for the given real algebraic θ. Degrees two and three are
    /// irreducible exactly when the defining polynomial has no rational root.
    pub fn new(generator: AlgebraicReal, name: &str) -> Result<Self, FieldError> {
        if generator.is_rational() {
            return Err(FieldError::Reducible(generator.poly().to_string()));
        }
        let modulus = generator.poly().monic();
        let d = modulus.degree().unwrap();
        if d > 3 {
            return Err(FieldError::DegreeTooLarge(d));
        }
        if AlgebraicReal::roots_of(&modulus).iter().any(AlgebraicReal::is_rational) {
            return Err(FieldError::Reducible(modulus.to_string()));
        }
        Ok(NumberField { modulus, generator, name: name.into() })
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn generator(&self) -> &AlgebraicReal {
        &self.generator
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The element θ.
    pub fn theta(&self) -> FieldElem {
        if self.is_rationals() {
            return self.from_rational(&self.generator.to_rational().unwrap());
        }
        vec![Rational::zero(), Rational::one()]
    }

    fn reduce(&self, mut p: FieldElem) -> FieldElem {
        upoly::trim(&super::rational::Q, &mut p);
        if p.len() >= self.modulus.coeffs().len() {
            let (_, r) = upoly::div_rem(&super::rational::Q, &p, self.modulus.coeffs());
            return r;
        }
        p
    }

    /// Interval enclosure using the generator refined to `width`.
    pub fn enclose(&self, a: &FieldElem, width: &Rational) -> Interval {
        let g = self.generator.refine(width);
        Interval::eval_poly(a, &g.as_interval())
    }

    pub fn to_rational(&self, a: &FieldElem) -> Option<Rational> {
        match a.len() {
            0 => Some(Rational::zero()),
            1 => Some(a[0].clone()),
            _ => None,
        }
    }

    pub fn display(&self, a: &FieldElem) -> String {
        UniPoly::new(a.clone()).display_in(&self.name)
    }

    pub fn approx(&self, a: &FieldElem) -> f64 {
        let iv = self.enclose(a, &Rational::new(BigInt::one(), BigInt::from(10u64).pow(18)));
        rational_to_f64(&((iv.lo + iv.hi) / Rational::from_integer(2.into())))
    }
}

impl Ring for NumberField {
    type Elem = FieldElem;

    fn zero(&self) -> FieldElem {
        Vec::new()
    }
    fn one(&self) -> FieldElem {
        vec![Rational::one()]
    }
    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        upoly::add(&super::rational::Q, a, b)
    }
    fn neg(&self, a: &FieldElem) -> FieldElem {
        upoly::neg(&super::rational::Q, a)
    }
    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.reduce(upoly::mul(&super::rational::Q, a, b))
    }
    fn is_zero(&self, a: &FieldElem) -> bool {
        a.iter().all(Zero::is_zero)
    }
    fn from_rational(&self, q: &Rational) -> FieldElem {
        if q.is_zero() {
            Vec::new()
        } else {
            vec![q.clone()]
        }
    }
}

impl Field for NumberField {
    fn inv(&self, a: &FieldElem) -> FieldElem {
        assert!(!self.is_zero(a), "inverse of zero");
        let (g, s) = upoly::gcd_ext(&super::rational::Q, a, self.modulus.coeffs());
        assert_eq!(g.len(), 1, "modulus is not irreducible");
        self.reduce(s)
    }
}

impl RealField for NumberField {
    fn sign(&self, a: &FieldElem) -> Ordering {
        if self.is_zero(a) {
            return Ordering::Equal;
        }
        // a nonzero field element has a nonzero value; refine until the
        // enclosure excludes zero
        let mut g = self.generator.clone();
        loop {
            let iv = Interval::eval_poly(a, &g.as_interval());
            if let Some(s) = iv.sign() {
                return s;
            }
            let (lo, hi) = g.interval();
            g = g.refine(&((hi - lo) / Rational::from_integer(2.into())));
        }
    }

    fn abs_upper_bound(&self, a: &FieldElem) -> Rational {
        let iv = Interval::eval_poly(a, &self.generator.as_interval());
        iv.lo.abs().max(iv.hi.abs())
    }
}

/// `K[r2]/(f)` over a [`NumberField`] `K`, with a chosen real root of `f`.
#[derive(Clone, Debug)]
pub struct Tower {
    base: NumberField,
    /// Monic modulus over the base, ascending.
    modulus: Vec<FieldElem>,
    /// Squarefree part of the modulus, used for refinement.
    squarefree: Vec<FieldElem>,
    root_lo: Rational,
    root_hi: Rational,
    name: String,
}

pub type TowerElem = Vec<FieldElem>;

impl Tower {
    /// The base field itself (second level trivial: `r2 = 0`).
    pub fn over(base: NumberField) -> Self {
        let modulus = vec![Vec::new(), base.one()];
        Tower {
            squarefree: modulus.clone(),
            modulus,
            base,
            root_lo: Rational::zero(),
            root_hi: Rational::zero(),
            name: "r2".into(),
        }
    }

    /// Adjoins the `index`-th (ascending) real root of `f` over the base.
    pub fn adjoin_root(base: NumberField, f: &[FieldElem], index: usize, name: &str) -> Result<Self, FieldError> {
        let mut f = f.to_vec();
        upoly::trim(&base, &mut f);
        let roots = upoly::isolate_real_roots(&base, &f);
        let (lo, hi) = roots.get(index).cloned().ok_or(FieldError::NoRealRoot)?;
        let modulus = upoly::monic(&base, &f);
        let squarefree = upoly::squarefree_part(&base, &modulus);
        Ok(Tower { base, modulus, squarefree, root_lo: lo, root_hi: hi, name: name.into() })
    }

    /// Real roots of `f` over the base, as isolating intervals.
    pub fn real_roots_over(base: &NumberField, f: &[FieldElem]) -> Vec<(Rational, Rational)> {
        let mut f = f.to_vec();
        upoly::trim(base, &mut f);
        upoly::isolate_real_roots(base, &f)
    }

    pub fn base(&self) -> &NumberField {
        &self.base
    }

    pub fn top_degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[FieldElem] {
        &self.modulus
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn embed(&self, k: &FieldElem) -> TowerElem {
        self.reduce(vec![k.clone()])
    }

    pub fn base_generator(&self) -> TowerElem {
        self.embed(&self.base.theta())
    }

    /// The element r2.
    pub fn top_generator(&self) -> TowerElem {
        self.reduce(vec![Vec::new(), self.base.one()])
    }

    fn reduce(&self, mut p: TowerElem) -> TowerElem {
        upoly::trim(&self.base, &mut p);
        if p.len() >= self.modulus.len() {
            let (_, r) = upoly::div_rem(&self.base, &p, &self.modulus);
            return r;
        }
        p
    }

    /// Isolating interval for r2, refined to at most `width`.
    pub fn top_interval(&self, width: &Rational) -> (Rational, Rational) {
        if self.top_degree() == 1 {
            // r2 is the root of a linear polynomial over the base
            let v = self.base.neg(&self.modulus[0]);
            let iv = self.base.enclose(&v, width);
            return (iv.lo, iv.hi);
        }
        upoly::refine_interval(&self.base, &self.squarefree, &self.root_lo, &self.root_hi, width)
    }

    /// Interval enclosure of an element with both generators refined to `width`.
    pub fn enclose(&self, a: &TowerElem, width: &Rational) -> Interval {
        let (lo, hi) = self.top_interval(width);
        let r2 = Interval::new(lo, hi);
        let mut acc = Interval::point(Rational::zero());
        for c in a.iter().rev() {
            acc = acc.mul(&r2).add(&self.base.enclose(c, width));
        }
        acc
    }

    pub fn approx(&self, a: &TowerElem) -> f64 {
        let iv = self.enclose(a, &Rational::new(BigInt::one(), BigInt::from(10u64).pow(18)));
        rational_to_f64(&((iv.lo + iv.hi) / Rational::from_integer(2.into())))
    }

    pub fn to_rational(&self, a: &TowerElem) -> Option<Rational> {
        match a.len() {
            0 => Some(Rational::zero()),
            1 => self.base.to_rational(&a[0]),
            _ => None,
        }
    }

    /// The top generator as a real algebraic number over ℚ, via the norm
    /// `Res_θ(m(θ), f(θ, r2))`.
    pub fn top_as_algebraic(&self) -> AlgebraicReal {
        let norm = if self.base.is_rationals() {
            UniPoly::new(self.modulus.iter().map(|c| c.first().cloned().unwrap_or_default()).collect())
        } else {
            let d = self.base.degree();
            let cols: Vec<UniPoly> = (0..d)
                .map(|i| UniPoly::new(self.modulus.iter().map(|c| c.get(i).cloned().unwrap_or_default()).collect()))
                .collect();
            resultant_in_y(self.base.modulus(), &cols)
        };
        let norm = norm.squarefree_part();
        let mut width = &self.root_hi - &self.root_lo;
        if self.top_degree() == 1 {
            width = Rational::one();
        }
        loop {
            let (lo, hi) = self.top_interval(&width);
            if lo == hi {
                return AlgebraicReal::from_rational(lo);
            }
            if let Some(a) = AlgebraicReal::new(&norm, lo, hi) {
                return a;
            }
            width /= Rational::from_integer(2.into());
        }
    }

    pub fn display(&self, a: &TowerElem) -> String {
        let terms: Vec<(usize, String)> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.base.is_zero(c))
            .map(|(i, c)| (i, self.base.display(c)))
            .collect();
        if terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in terms.into_iter().rev() {
            let mono = match i {
                0 => String::new(),
                1 => self.name.clone(),
                _ => format!("{}^{}", self.name, i),
            };
            if mono.is_empty() {
                parts.push(c);
            } else if c == "1" {
                parts.push(mono);
            } else if c.contains(' ') {
                parts.push(format!("({c})*{mono}"));
            } else {
                parts.push(format!("{c}*{mono}"));
            }
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl Ring for Tower {
    type Elem = TowerElem;

    fn zero(&self) -> TowerElem {
        Vec::new()
    }
    fn one(&self) -> TowerElem {
        self.embed(&self.base.one())
    }
    fn add(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        upoly::add(&self.base, a, b)
    }
    fn neg(&self, a: &TowerElem) -> TowerElem {
        upoly::neg(&self.base, a)
    }
    fn mul(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        self.reduce(upoly::mul(&self.base, a, b))
    }
    fn is_zero(&self, a: &TowerElem) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }
    fn from_rational(&self, q: &Rational) -> TowerElem {
        self.embed(&self.base.from_rational(q))
    }
}
