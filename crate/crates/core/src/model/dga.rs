use num_traits::{One, Zero};

use crate::exact::{QMatrix, Rational};
use crate::graded::{FreeAlgebra, Generator, GradedPoly, Monomial};

/// A free graded-commutative algebra with a differential given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dga {
    algebra: FreeAlgebra,
    differential: Vec<GradedPoly>,
}

impl Dga {
    pub fn new(algebra: FreeAlgebra, differential: Vec<GradedPoly>) -> Self {
        assert_eq!(algebra.generators().len(), differential.len());
        Dga { algebra, differential }
    }

    pub fn empty() -> Self {
        Dga { algebra: FreeAlgebra::new(Vec::new()), differential: Vec::new() }
    }

    pub fn algebra(&self) -> &FreeAlgebra {
        &self.algebra
    }

    pub fn generators(&self) -> &[Generator] {
        self.algebra.generators()
    }

    pub fn differential(&self, gen: usize) -> &GradedPoly {
        &self.differential[gen]
    }

    pub fn differentials(&self) -> &[GradedPoly] {
        &self.differential
    }

    pub fn push(&mut self, g: Generator, d: GradedPoly) -> usize {
        self.differential.push(d);
        self.algebra.push(g)
    }

    /// `d` on an arbitrary element via the graded Leibniz rule.
    pub fn leibniz_extend(&self, elem: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (m, c) in elem.terms() {
            out = out.add(&self.d_monomial(m).scale(c));
        }
        out
    }

    fn d_monomial(&self, m: &Monomial) -> GradedPoly {
        let alg = &self.algebra;
        let factors = m.factors();
        let mut out = GradedPoly::zero();
        let mut prefix_degree = 0;
        for (i, &(g, e)) in factors.iter().enumerate() {
            let dg = &self.differential[g];
            if !dg.is_zero() {
                // d(g^e) = e g^{e-1} dg; odd generators only occur with e = 1
                let prefix = alg.monomial_from_word(&factors[..i]).1;
                let suffix = alg.monomial_from_word(&factors[i + 1..]).1;
                let lower = alg.power(g, e - 1).expect("exponent of an even generator");
                let mut coeff = Rational::from_integer(e.into());
                if prefix_degree % 2 == 1 {
                    coeff = -coeff;
                }
                let left = GradedPoly::monomial(alg.monomial_product(&prefix, &lower).1, coeff);
                let term = alg.multiply(&alg.multiply(&left, dg), &GradedPoly::monomial(suffix, Rational::one()));
                out = out.add(&term);
            }
            prefix_degree += e * alg.degree_of(g);
        }
        out
    }

    /// Matrix of `d: A^deg → A^{deg+1}` in the monomial bases.
    pub fn d_matrix(&self, deg: u32) -> QMatrix {
        let src = self.algebra.monomials_of_degree(deg);
        let dst = self.algebra.monomials_of_degree(deg + 1);
        let index: std::collections::HashMap<&Monomial, usize> = dst.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut m = QMatrix::zeros(dst.len(), src.len());
        for (j, s) in src.iter().enumerate() {
            for (t, c) in self.d_monomial(s).terms() {
                m[(index[t], j)] = c.clone();
            }
        }
        m
    }

    /// `d∘d = 0` on every generator.
    pub fn check_d_squared(&self) -> bool {
        self.differential.iter().all(|dg| self.leibniz_extend(dg).is_zero())
    }

    /// Every differential lies in the decomposables (word length ≥ 2).
    pub fn is_minimal(&self) -> bool {
        self.differential
            .iter()
            .all(|dg| dg.is_zero() || dg.min_word_length().is_some_and(|l| l >= 2))
    }

    /// Number of generators in each degree `0..=max_degree`.
    pub fn generator_counts(&self, max_degree: u32) -> Vec<usize> {
        let mut counts = vec![0; max_degree as usize + 1];
        for g in self.generators() {
            if g.degree <= max_degree {
                counts[g.degree as usize] += 1;
            }
        }
        counts
    }

    pub fn display_differential(&self, gen: usize) -> String {
        self.algebra.display(&self.differential[gen])
    }
}

/// Cocycle, coboundary and cohomology representatives of one degree, as
/// coordinate vectors over the monomial basis.
#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    pub monomials: Vec<Monomial>,
    pub cocycles: Vec<Vec<Rational>>,
    pub coboundaries: Vec<Vec<Rational>>,
    pub classes: Vec<Vec<Rational>>,
}

impl Dga {
    pub fn cohomology(&self, deg: u32) -> DegreeCohomology {
        let monomials = self.algebra.monomials_of_degree(deg);
        let cocycles = self.d_matrix(deg).kernel_basis();
        let coboundaries = if deg == 0 { Vec::new() } else { self.d_matrix(deg - 1).image_basis() };
        let classes = crate::exact::matrix::quotient_representatives(monomials.len(), &coboundaries, &cocycles);
        DegreeCohomology { monomials, cocycles, coboundaries, classes }
    }

    pub fn vector_to_poly(&self, monomials: &[Monomial], v: &[Rational]) -> GradedPoly {
        let mut p = GradedPoly::zero();
        for (m, c) in monomials.iter().zip(v) {
            if !c.is_zero() {
                p.add_term(m.clone(), c.clone());
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn gen(alg: &FreeAlgebra, name: &str) -> GradedPoly {
        alg.generator_poly(alg.index_of(name).unwrap())
    }

    #[test]
    fn leibniz_even_times_odd() {
        let alg = FreeAlgebra::new(vec![Generator::new("x", 2), Generator::new("v", 3)]);
        let x = gen(&alg, "x");
        let dv = alg.multiply(&x, &x);
        let dga = Dga::new(alg.clone(), vec![GradedPoly::zero(), dv.clone()]);
        assert_eq!(dga.leibniz_extend(&gen(&alg, "v")), dv);
        let xv = alg.multiply(&x, &gen(&alg, "v"));
        assert_eq!(dga.leibniz_extend(&xv), alg.pow(&x, 3));
        assert!(dga.check_d_squared());
        assert!(dga.is_minimal());
    }

    #[test]
    fn leibniz_two_odd_generators() {
        // du = 0, dv = z with z = x^2
        let alg = FreeAlgebra::new(vec![Generator::new("x", 2), Generator::new("u", 3), Generator::new("v", 3)]);
        let x = gen(&alg, "x");
        let z = alg.multiply(&x, &x);
        let dga = Dga::new(alg.clone(), vec![GradedPoly::zero(), GradedPoly::zero(), z.clone()]);
        let uv = alg.multiply(&gen(&alg, "u"), &gen(&alg, "v"));
        let expected = alg.multiply(&gen(&alg, "u"), &z).scale(&int(-1));
        assert_eq!(dga.leibniz_extend(&uv), expected);
    }

    #[test]
    fn leibniz_powers() {
        let alg = FreeAlgebra::new(vec![Generator::new("x", 2), Generator::new("y", 4), Generator::new("v", 5)]);
        let x = gen(&alg, "x");
        // d y = 0, dv = x^3, d(y^2 v) = y^2 x^3
        let dga = Dga::new(alg.clone(), vec![GradedPoly::zero(), GradedPoly::zero(), alg.pow(&x, 3)]);
        let y = gen(&alg, "y");
        let e = alg.multiply(&alg.pow(&y, 2), &gen(&alg, "v"));
        assert_eq!(dga.leibniz_extend(&e), alg.multiply(&alg.pow(&y, 2), &alg.pow(&x, 3)));
    }

    #[test]
    fn cohomology_kills_exact_square() {
        let alg = FreeAlgebra::new(vec![Generator::new("x", 2)]);
        let free = Dga::new(alg.clone(), vec![GradedPoly::zero()]);
        assert_eq!(free.cohomology(4).classes.len(), 1);
        let mut dga = free.clone();
        let x = gen(&alg, "x");
        dga.push(Generator::new("v", 3), alg.multiply(&x, &x));
        assert_eq!(dga.cohomology(4).classes.len(), 0);
        assert_eq!(dga.cohomology(3).classes.len(), 0);
    }

    #[test]
    fn non_minimal_detected() {
        let alg = FreeAlgebra::new(vec![Generator::new("x", 2), Generator::new("w", 1)]);
        let dga = Dga::new(alg.clone(), vec![GradedPoly::zero(), gen(&alg, "x")]);
        assert!(!dga.is_minimal());
    }
}
