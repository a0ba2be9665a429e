//! Dense univariate polynomial routines over an arbitrary coefficient ring.
//!
//! Polynomials are coefficient vectors in ascending degree with no trailing
//! zeros; the empty vector is the zero polynomial.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::rational::{Field, Rational, RealField, Ring};

pub fn trim<R: Ring>(r: &R, p: &mut Vec<R::Elem>) {
    while p.last().is_some_and(|c| r.is_zero(c)) {
        p.pop();
    }
}

pub fn degree<E>(p: &[E]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn add<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => r.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trim(r, &mut out);
    out
}

pub fn neg<R: Ring>(r: &R, a: &[R::Elem]) -> Vec<R::Elem> {
    a.iter().map(|c| r.neg(c)).collect()
}

pub fn sub<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    add(r, a, &neg(r, b))
}

pub fn mul<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![r.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if r.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = r.add(&out[i + j], &r.mul(x, y));
        }
    }
    trim(r, &mut out);
    out
}

pub fn scale<R: Ring>(r: &R, c: &R::Elem, a: &[R::Elem]) -> Vec<R::Elem> {
    let mut out: Vec<_> = a.iter().map(|x| r.mul(c, x)).collect();
    trim(r, &mut out);
    out
}

pub fn eval<R: Ring>(r: &R, p: &[R::Elem], x: &R::Elem) -> R::Elem {
    let mut acc = r.zero();
    for c in p.iter().rev() {
        acc = r.add(&r.mul(&acc, x), c);
    }
    acc
}

pub fn derivative<R: Ring>(r: &R, p: &[R::Elem]) -> Vec<R::Elem> {
    let mut out: Vec<_> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| r.scale(&Rational::from_integer((i as i64).into()), c))
        .collect();
    trim(r, &mut out);
    out
}

/// Division with remainder; `b` must be nonzero.
pub fn div_rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = a.to_vec();
    trim(f, &mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lc_inv = f.inv(b.last().unwrap());
    let mut quot = vec![f.zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = f.mul(rem.last().unwrap(), &lc_inv);
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] = f.sub(&rem[shift + i], &f.mul(&c, bc));
        }
        quot[shift] = c;
        // the leading term cancels exactly
        rem.pop();
        trim(f, &mut rem);
    }
    trim(f, &mut quot);
    (quot, rem)
}

pub fn monic<F: Field>(f: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    match p.last() {
        None => Vec::new(),
        Some(lc) => scale(f, &f.inv(lc), p),
    }
}

/// Monic greatest common divisor (zero when both inputs are zero).
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(f, &mut x);
    trim(f, &mut y);
    while !y.is_empty() {
        let (_, r) = div_rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Extended Euclid: returns `(g, s)` with `s·a ≡ g (mod b)`, `g` monic.
pub fn gcd_ext<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(f, &mut r0);
    trim(f, &mut r1);
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = div_rem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    let lc_inv = f.inv(r0.last().expect("gcd of two zero polynomials"));
    (scale(f, &lc_inv, &r0), scale(f, &lc_inv, &s0))
}

/// `p / gcd(p, p')`, made monic.
pub fn squarefree_part<F: Field>(f: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    let d = derivative(f, p);
    let g = gcd(f, p, &d);
    if g.len() <= 1 {
        return monic(f, p);
    }
    let (q, _) = div_rem(f, p, &g);
    monic(f, &q)
}

/// Canonical Sturm chain `p, p', -rem(p, p'), ...`.
pub fn sturm_chain<F: Field>(f: &F, p: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let mut chain = vec![p.to_vec()];
    let d = derivative(f, p);
    if d.is_empty() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let (_, r) = div_rem(f, &chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(neg(f, &r));
    }
    chain
}

pub fn sign_variations<F: RealField>(f: &F, chain: &[Vec<F::Elem>], x: &Rational) -> usize {
    let mut count = 0;
    let mut last = Ordering::Equal;
    for p in chain {
        let s = f.sign_at(p, x);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Cauchy bound: every real root lies strictly inside `(-B, B)`.
pub fn root_bound<F: RealField>(f: &F, p: &[F::Elem]) -> Rational {
    let lc = p.last().expect("root bound of zero polynomial");
    let lc_lo = {
        // a positive lower bound for |lc|, found by bisecting the upper bound
        let ub = f.abs_upper_bound(lc);
        let mut guess = ub;
        loop {
            let s = f.sign(&f.sub(&f.mul(lc, lc), &f.from_rational(&(&guess * &guess))));
            if s == Ordering::Greater {
                break guess;
            }
            guess /= Rational::from_integer(2.into());
        }
    };
    let mut max = Rational::zero();
    for c in &p[..p.len() - 1] {
        let b = f.abs_upper_bound(c);
        if b > max {
            max = b;
        }
    }
    Rational::one() + max / lc_lo + Rational::one()
}

/// Splits `(lo, hi)` at a point that is not a root of `p`.
pub fn split_point<F: RealField>(f: &F, p: &[F::Elem], lo: &Rational, hi: &Rational) -> Rational {
    let w = hi - lo;
    let mut k = 2i64;
    loop {
        for j in 1..k {
            let m = lo + &w * Rational::new(j.into(), k.into());
            if f.sign_at(p, &m) != Ordering::Equal {
                return m;
            }
        }
        k += 1;
    }
}

/// Isolating open intervals `(lo, hi)`, ascending, one per distinct real root.
/// Endpoints are never roots.
pub fn isolate_real_roots<F: RealField>(f: &F, p: &[F::Elem]) -> Vec<(Rational, Rational)> {
    let mut p = p.to_vec();
    trim(f, &mut p);
    if p.len() <= 1 {
        return Vec::new();
    }
    let sf = squarefree_part(f, &p);
    let chain = sturm_chain(f, &sf);
    let b = root_bound(f, &sf);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sign_variations(f, &chain, &lo) - sign_variations(f, &chain, &hi);
        match n {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let m = split_point(f, &sf, &lo, &hi);
                stack.push((m.clone(), hi));
                stack.push((lo, m));
            }
        }
    }
    out.sort();
    out
}

/// Number of distinct roots of `chain[0]` in the open interval, endpoints non-roots.
pub fn count_roots<F: RealField>(f: &F, chain: &[Vec<F::Elem>], lo: &Rational, hi: &Rational) -> usize {
    sign_variations(f, chain, lo) - sign_variations(f, chain, hi)
}

/// Halves an isolating interval of a squarefree `p` until it is at most `width` wide.
/// Returns a point interval if a bisection point hits the root exactly.
pub fn refine_interval<F: RealField>(
    f: &F,
    p: &[F::Elem],
    lo: &Rational,
    hi: &Rational,
    width: &Rational,
) -> (Rational, Rational) {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    if lo == hi {
        return (lo, hi);
    }
    let s_lo = f.sign_at(p, &lo);
    debug_assert_ne!(s_lo, Ordering::Equal);
    let two = Rational::from_integer(2.into());
    while &(&hi - &lo) > width {
        let m = (&lo + &hi) / &two;
        match f.sign_at(p, &m) {
            Ordering::Equal => return (m.clone(), m),
            s if s == s_lo => lo = m,
            _ => hi = m,
        }
    }
    (lo, hi)
}
