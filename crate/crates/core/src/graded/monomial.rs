use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::GradedPoly;
use crate::exact::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator { name: name.into(), degree }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// A monomial of a free graded-commutative algebra.
///
/// Factors are `(generator index, exponent)` sorted by index, exponents ≥ 1,
/// odd generators appear with exponent 1. The total degree is cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(usize, u32)>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn factors(&self) -> &[(usize, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of generator factors counted with multiplicity.
    pub fn word_length(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, gen: usize) -> u32 {
        self.factors
            .iter()
            .find(|&&(g, _)| g == gen)
            .map_or(0, |&(_, e)| e)
    }
}

/// Lexicographic order in generator declaration order, higher exponents first,
/// so `x² < x·y < y²` in iteration order. Degree decides first.
impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree.cmp(&o.degree).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.factors.get(i), o.factors.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(&(ga, ea)), Some(&(gb, eb))) => {
                        if ga != gb {
                            // the monomial containing the earlier generator comes first
                            return ga.cmp(&gb);
                        }
                        if ea != eb {
                            return eb.cmp(&ea);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// The free graded-commutative algebra ∧V on an ordered generator list:
/// polynomial on even generators, exterior on odd ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAlgebra {
    generators: Vec<Generator>,
}

impl FreeAlgebra {
    pub fn new(generators: Vec<Generator>) -> Self {
        FreeAlgebra { generators }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn push(&mut self, g: Generator) -> usize {
        self.generators.push(g);
        self.generators.len() - 1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn degree_of(&self, gen: usize) -> u32 {
        self.generators[gen].degree
    }

    /// `g^e`; `None` if `g` is odd and `e > 1`.
    pub fn power(&self, gen: usize, e: u32) -> Option<Monomial> {
        if e == 0 {
            return Some(Monomial::one());
        }
        if self.generators[gen].is_odd() && e > 1 {
            return None;
        }
        Some(Monomial { factors: vec![(gen, e)], degree: e * self.degree_of(gen) })
    }

    /// Builds a monomial from unsorted `(generator, exponent)` pairs, returning the
    /// Koszul sign of the reordering (0 if an odd generator repeats).
    pub fn monomial_from_word(&self, word: &[(usize, u32)]) -> (i32, Monomial) {
        let mut sign = 1;
        let mut acc = Monomial::one();
        for &(g, e) in word {
            if e == 0 {
                continue;
            }
            let Some(p) = self.power(g, e) else {
                return (0, Monomial::one());
            };
            let (s, m) = self.monomial_product(&acc, &p);
            if s == 0 {
                return (0, Monomial::one());
            }
            sign *= s;
            acc = m;
        }
        (sign, acc)
    }

    /// Product of two monomials: `(sign, m1·m2)` with the Koszul sign of sorting
    /// the concatenation, or sign 0 when an odd generator would repeat.
    pub fn monomial_product(&self, a: &Monomial, b: &Monomial) -> (i32, Monomial) {
        let mut factors = Vec::with_capacity(a.factors.len() + b.factors.len());
        let mut swaps = 0u32;
        // odd generators of `a` not yet merged, as b's generators pass them
        let mut odd_remaining_in_a: u32 =
            a.factors.iter().filter(|&&(g, _)| self.generators[g].is_odd()).count() as u32;
        let (mut i, mut j) = (0, 0);
        while i < a.factors.len() || j < b.factors.len() {
            match (a.factors.get(i), b.factors.get(j)) {
                (Some(&(ga, ea)), Some(&(gb, eb))) if ga == gb => {
                    if self.generators[ga].is_odd() {
                        return (0, Monomial::one());
                    }
                    factors.push((ga, ea + eb));
                    i += 1;
                    j += 1;
                }
                (Some(&(ga, ea)), Some(&(gb, _))) if ga < gb => {
                    if self.generators[ga].is_odd() {
                        odd_remaining_in_a -= 1;
                    }
                    factors.push((ga, ea));
                    i += 1;
                }
                (Some(&(ga, ea)), None) => {
                    if self.generators[ga].is_odd() {
                        odd_remaining_in_a -= 1;
                    }
                    factors.push((ga, ea));
                    i += 1;
                }
                (_, Some(&(gb, eb))) => {
                    if self.generators[gb].is_odd() {
                        swaps += odd_remaining_in_a;
                    }
                    factors.push((gb, eb));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let sign = if swaps % 2 == 0 { 1 } else { -1 };
        (sign, Monomial { factors, degree: a.degree + b.degree })
    }

    /// All monomials of the given degree, in monomial order.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.enumerate(0, degree, &mut current, &mut out);
        out
    }

    fn enumerate(&self, gen: usize, remaining: u32, current: &mut Vec<(usize, u32)>, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            let degree = current.iter().map(|&(g, e)| e * self.degree_of(g)).sum();
            out.push(Monomial { factors: current.clone(), degree });
            return;
        }
        if gen == self.generators.len() {
            return;
        }
        let d = self.generators[gen].degree;
        let max = if self.generators[gen].is_odd() { 1.min(remaining / d) } else { remaining / d };
        for e in (0..=max).rev() {
            if e > 0 {
                current.push((gen, e));
            }
            self.enumerate(gen + 1, remaining - e * d, current, out);
            if e > 0 {
                current.pop();
            }
        }
    }

    pub fn generator_poly(&self, gen: usize) -> GradedPoly {
        GradedPoly::monomial(self.power(gen, 1).unwrap(), Rational::one())
    }

    /// Product in the free algebra.
    pub fn multiply(&self, a: &GradedPoly, b: &GradedPoly) -> GradedPoly {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let (s, m) = self.monomial_product(ma, mb);
                if s == 0 {
                    continue;
                }
                let c = ca * cb * Rational::from_integer(s.into());
                *terms.entry(m).or_insert_with(Rational::zero) += c;
            }
        }
        GradedPoly::from_terms(terms)
    }

    pub fn pow(&self, a: &GradedPoly, e: u32) -> GradedPoly {
        let mut acc = GradedPoly::one();
        for _ in 0..e {
            acc = self.multiply(&acc, a);
        }
        acc
    }

    pub fn display_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        m.factors
            .iter()
            .map(|&(g, e)| {
                let name = &self.generators[g].name;
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn display(&self, p: &GradedPoly) -> String {
        p.display_with(|m| self.display_monomial(m))
    }
}

/// Sign-only convenience for tests and callers that know the operands are nonzero.
pub fn koszul_sign(alg: &FreeAlgebra, a: &Monomial, b: &Monomial) -> i32 {
    alg.monomial_product(a, b).0
}


#[cfg(test)]
mod tests {
    use super::*;

    fn alg(gens: &[(&str, u32)]) -> FreeAlgebra {
        FreeAlgebra::new(gens.iter().map(|&(n, d)| Generator::new(n, d)).collect())
    }

    #[test]
    fn odd_generators_anticommute() {
        let a = alg(&[("v", 3), ("u", 3)]);
        let v = a.power(0, 1).unwrap();
        let u = a.power(1, 1).unwrap();
        let (s, m) = a.monomial_product(&u, &v);
        assert_eq!(s, -1);
        assert_eq!(a.display_monomial(&m), "v*u");
        assert_eq!(a.monomial_product(&v, &u).0, 1);
    }

    #[test]
    fn odd_square_vanishes() {
        let a = alg(&[("u", 3)]);
        let u = a.power(0, 1).unwrap();
        assert_eq!(a.monomial_product(&u, &u).0, 0);
    }

    #[test]
    fn even_powers_multiply() {
        let a = alg(&[("x", 2)]);
        let (s, m) = a.monomial_product(&a.power(0, 2).unwrap(), &a.power(0, 1).unwrap());
        assert_eq!(s, 1);
        assert_eq!(m, a.power(0, 3).unwrap());
    }

    #[test]
    fn enumeration_order_is_lex() {
        let a = alg(&[("x", 2), ("y", 2)]);
        let ms: Vec<String> = a.monomials_of_degree(4).iter().map(|m| a.display_monomial(m)).collect();
        assert_eq!(ms, ["x^2", "x*y", "y^2"]);
        let mut sorted = a.monomials_of_degree(4);
        sorted.sort();
        assert_eq!(sorted, a.monomials_of_degree(4));
    }

    #[test]
    fn mixed_parity_enumeration() {
        let a = alg(&[("x", 2), ("u", 3), ("w", 3)]);
        assert_eq!(a.monomials_of_degree(6).len(), 2); // x^3, u*w
        assert_eq!(a.monomials_of_degree(8).len(), 2); // x^4, x*u*w
    }
}
