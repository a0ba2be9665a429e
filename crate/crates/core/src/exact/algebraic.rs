//! Real algebraic numbers as (squarefree polynomial, isolating interval) pairs.
//!
//! Sums and products go through resultants; the resulting interval is then
//! refined until it isolates a single root of the squarefree resultant.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::QMatrix;
use super::poly::{rational_root_in, sturm_isolate, UniPoly};
use super::rational::{fmt_rational, Interval, Rational, Q};
use super::upoly;

/// Resultant of two univariate polynomials, via the Sylvester determinant.
pub fn resultant(p: &UniPoly, q: &UniPoly) -> Rational {
    let (Some(m), Some(n)) = (p.degree(), q.degree()) else {
        return Rational::zero();
    };
    sylvester_det(p.coeffs(), m, q.coeffs(), n)
}

/// Resultant of `p`, `q` read as binary forms of degrees `m`, `n`; it also
/// vanishes when both leading coefficients do (a common zero at infinity).
pub fn formal_resultant(p: &UniPoly, m: usize, q: &UniPoly, n: usize) -> Rational {
    sylvester_det(p.coeffs(), m, q.coeffs(), n)
}

/// Determinant of the Sylvester matrix with formal degrees `m`, `n`.
fn sylvester_det(p: &[Rational], m: usize, q: &[Rational], n: usize) -> Rational {
    let size = m + n;
    if size == 0 {
        return Rational::one();
    }
    let coeff = |c: &[Rational], i: usize| c.get(i).cloned().unwrap_or_else(Rational::zero);
    let mut s = QMatrix::zeros(size, size);
    for r in 0..n {
        for k in 0..=m {
            s[(r, r + k)] = coeff(p, m - k);
        }
    }
    for r in 0..m {
        for k in 0..=n {
            s[(n + r, r + k)] = coeff(q, n - k);
        }
    }
    s.determinant()
}

/// `Res_y(p(y), q(x, y))` as a polynomial in `x`.
///
/// `q` is given by its coefficients in `y` (ascending), each a polynomial in
/// `x`. Computed by evaluating at `deg_x + 1` integer points and interpolating.
pub fn resultant_in_y(p: &UniPoly, q: &[UniPoly]) -> UniPoly {
    let Some(m) = p.degree() else {
        return UniPoly::zero();
    };
    if q.is_empty() {
        return UniPoly::zero();
    }
    let n = q.len() - 1;
    let dx = q.iter().filter_map(UniPoly::degree).max().unwrap_or(0);
    let bound = m * dx;
    let xs: Vec<Rational> = (0..=bound as i64).map(|i| Rational::from_integer(i.into())).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| {
            let qx: Vec<Rational> = q.iter().map(|c| c.eval(x)).collect();
            sylvester_det(p.coeffs(), m, &qx, n)
        })
        .collect();
    interpolate(&xs, &ys)
}

/// Newton interpolation through the given points.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut out = UniPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        out = &(&out * &UniPoly::linear_root(&xs[i])) + &UniPoly::constant(dd[i].clone());
    }
    out
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// A real algebraic number.
///
/// `poly` is squarefree and has exactly one real root in `[lo, hi]`. When the
/// number is rational, `poly` is linear and the interval is a single point;
/// otherwise `lo < hi` and neither endpoint is a root.
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    poly: UniPoly,
    lo: Rational,
    hi: Rational,
}

impl AlgebraicReal {
    pub fn from_rational(q: Rational) -> Self {
        AlgebraicReal { poly: UniPoly::linear_root(&q), lo: q.clone(), hi: q }
    }

    /// Builds from any polynomial having exactly one root in the open interval.
    ///
    /// Returns `None` if the interval does not isolate a single root or an
    /// endpoint is a root.
    pub fn new(poly: &UniPoly, lo: Rational, hi: Rational) -> Option<Self> {
        let sf = poly.squarefree_part();
        if sf.degree()? == 0 {
            return None;
        }
        if lo == hi {
            return sf.eval(&lo).is_zero().then(|| Self::from_rational(lo));
        }
        if lo > hi || sf.eval(&lo).is_zero() || sf.eval(&hi).is_zero() || sf.count_roots(&lo, &hi) != 1 {
            return None;
        }
        Some(AlgebraicReal { poly: sf, lo, hi }.simplified())
    }

    /// All real roots of `p`, ascending.
    pub fn roots_of(p: &UniPoly) -> Vec<AlgebraicReal> {
        let sf = p.squarefree_part();
        sturm_isolate(p)
            .into_iter()
            .map(|(lo, hi)| AlgebraicReal { poly: sf.clone(), lo, hi }.simplified())
            .collect()
    }

    fn simplified(self) -> Self {
        if self.poly.degree() == Some(1) {
            let r = -&self.poly.coeff(0) / self.poly.coeff(1);
            return Self::from_rational(r);
        }
        match rational_root_in(&self.poly, &self.lo, &self.hi) {
            Some(r) => Self::from_rational(r),
            None => self,
        }
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    pub fn as_interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        (self.lo == self.hi).then(|| self.lo.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.lo == self.hi
    }

    /// Shrinks the isolating interval to width at most `width`.
    pub fn refine(&self, width: &Rational) -> AlgebraicReal {
        assert!(width.is_positive(), "refinement width must be positive");
        if self.is_rational() {
            return self.clone();
        }
        let (lo, hi) = upoly::refine_interval(&Q, self.poly.coeffs(), &self.lo, &self.hi, width);
        if lo == hi {
            return Self::from_rational(lo);
        }
        AlgebraicReal { poly: self.poly.clone(), lo, hi }
    }

    fn halve(&self) -> AlgebraicReal {
        let w = (&self.hi - &self.lo) / Rational::from_integer(2.into());
        self.refine(&w)
    }

    pub fn neg(&self) -> AlgebraicReal {
        AlgebraicReal { poly: self.poly.reflect().monic(), lo: -&self.hi, hi: -&self.lo }
    }

    pub fn add(&self, o: &AlgebraicReal) -> AlgebraicReal {
        if let (Some(a), Some(b)) = (self.to_rational(), o.to_rational()) {
            return Self::from_rational(a + b);
        }
        // Res_y(P(y), Q(x - y))
        let q = o.poly.coeffs();
        let n = q.len() - 1;
        let mut cols = vec![UniPoly::zero(); n + 1];
        for (k, qk) in q.iter().enumerate() {
            for j in 0..=k {
                let c = Rational::from_integer(binomial(k, j)) * qk;
                let c = if j % 2 == 1 { -c } else { c };
                let mut coeffs = vec![Rational::zero(); k - j + 1];
                coeffs[k - j] = c;
                cols[j] = &cols[j] + &UniPoly::new(coeffs);
            }
        }
        let r = resultant_in_y(&self.poly, &cols).squarefree_part();
        Self::isolate_combination(r, self.clone(), o.clone(), |a, b| a.add(b))
    }

    pub fn sub(&self, o: &AlgebraicReal) -> AlgebraicReal {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &AlgebraicReal) -> AlgebraicReal {
        if let (Some(a), Some(b)) = (self.to_rational(), o.to_rational()) {
            return Self::from_rational(a * b);
        }
        if self.sign() == Ordering::Equal || o.sign() == Ordering::Equal {
            return Self::from_rational(Rational::zero());
        }
        // strip a root at zero: the value itself is nonzero
        let strip = |p: &UniPoly| {
            let mut p = p.clone();
            while p.coeff(0).is_zero() {
                p = p.div_rem(&UniPoly::x()).0;
            }
            p
        };
        let p = strip(&self.poly);
        let q = strip(&o.poly);
        // Res_y(P(y), y^n Q(x / y))
        let n = q.degree().unwrap();
        let mut cols = vec![UniPoly::zero(); n + 1];
        for (k, qk) in q.coeffs().iter().enumerate() {
            let mut coeffs = vec![Rational::zero(); k + 1];
            coeffs[k] = qk.clone();
            cols[n - k] = UniPoly::new(coeffs);
        }
        let r = resultant_in_y(&p, &cols).squarefree_part();
        Self::isolate_combination(r, self.clone(), o.clone(), |a, b| a.mul(b))
    }

    fn isolate_combination(
        r: UniPoly,
        mut a: AlgebraicReal,
        mut b: AlgebraicReal,
        op: impl Fn(&Interval, &Interval) -> Interval,
    ) -> AlgebraicReal {
        loop {
            let iv = op(&a.as_interval(), &b.as_interval());
            if iv.lo == iv.hi {
                return Self::from_rational(iv.lo);
            }
            if !r.eval(&iv.lo).is_zero() && !r.eval(&iv.hi).is_zero() && r.count_roots(&iv.lo, &iv.hi) == 1 {
                return AlgebraicReal { poly: r, lo: iv.lo, hi: iv.hi }.simplified();
            }
            a = a.halve();
            b = b.halve();
        }
    }

    pub fn sign(&self) -> Ordering {
        if self.lo.is_positive() {
            Ordering::Greater
        } else if self.hi.is_negative() {
            Ordering::Less
        } else if self.is_rational() {
            self.lo.cmp(&Rational::zero())
        } else {
            if self.poly.eval(&Rational::zero()).is_zero() {
                return Ordering::Equal;
            }
            // 0 lies strictly inside and is not a root
            if self.poly.count_roots(&self.lo, &Rational::zero()) == 1 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
    }

    pub fn cmp_exact(&self, o: &AlgebraicReal) -> Ordering {
        if let (Some(a), Some(b)) = (self.to_rational(), o.to_rational()) {
            return a.cmp(&b);
        }
        let g = self.poly.gcd(&o.poly);
        let (mut a, mut b) = (self.clone(), o.clone());
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            if g.degree().unwrap_or(0) >= 1 {
                let lo = (&a.lo).max(&b.lo).clone();
                let hi = (&a.hi).min(&b.hi).clone();
                let g_lo = g.eval(&lo).is_zero();
                let g_hi = g.eval(&hi).is_zero();
                if g_lo || g_hi || (lo < hi && g.count_roots(&lo, &hi) >= 1) {
                    return Ordering::Equal;
                }
            }
            a = a.halve();
            b = b.halve();
        }
    }

    /// Decimal approximation for display only.
    pub fn approx(&self) -> f64 {
        let r = self.refine(&Rational::new(1.into(), BigInt::from(10u64).pow(15)));
        let mid = (&r.lo + &r.hi) / Rational::from_integer(2.into());
        rational_to_f64(&mid)
    }
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, o: &Self) -> bool {
        self.cmp_exact(o) == Ordering::Equal
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some(q) => f.write_str(&fmt_rational(&q)),
            None => write!(
                f,
                "root of {} in [{}, {}]",
                self.poly,
                fmt_rational(&self.lo),
                fmt_rational(&self.hi)
            ),
        }
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}
