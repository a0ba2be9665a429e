use std::collections::HashMap;

use num_traits::{One, Zero};

use super::monomial::{FreeAlgebra, Monomial};
use super::poly::GradedPoly;
use super::presentation::Presentation;
use crate::error::{Error, Result};
use crate::exact::{QMatrix, Rational, Ring};

/// One degree of the quotient: every free monomial, the surviving basis, and
/// the coordinates of each free monomial in that basis.
#[derive(Clone, Debug)]
struct DegreePiece {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    basis: Vec<usize>,
    reduction: Vec<Vec<Rational>>,
}

/// The presented algebra truncated at `cap`, computed degree by degree.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    presentation: Presentation,
    cap: u32,
    pieces: Vec<DegreePiece>,
}

pub fn build_quotient(p: &Presentation, cap: u32) -> QuotientAlgebra {
    QuotientAlgebra::new(p.clone(), cap)
}

impl QuotientAlgebra {
    pub fn new(presentation: Presentation, cap: u32) -> Self {
        let pieces = (0..=cap).map(|d| build_piece(&presentation, d)).collect();
        QuotientAlgebra { presentation, cap, pieces }
    }

    pub fn with_default_cap(presentation: Presentation) -> Self {
        let cap = presentation.default_cap();
        Self::new(presentation, cap)
    }

    /// The same algebra with a different cap (recomputes only the missing degrees).
    pub fn with_cap(&self, cap: u32) -> Self {
        let mut pieces: Vec<DegreePiece> = self.pieces.iter().take(cap as usize + 1).cloned().collect();
        for d in pieces.len() as u32..=cap {
            pieces.push(build_piece(&self.presentation, d));
        }
        QuotientAlgebra { presentation: self.presentation.clone(), cap, pieces }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn algebra(&self) -> &FreeAlgebra {
        self.presentation.algebra()
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn dim(&self, d: u32) -> usize {
        self.pieces.get(d as usize).map_or(0, |p| p.basis.len())
    }

    pub fn basis(&self, d: u32) -> Vec<Monomial> {
        match self.pieces.get(d as usize) {
            Some(p) => p.basis.iter().map(|&i| p.monomials[i].clone()).collect(),
            None => Vec::new(),
        }
    }

    pub fn hilbert_coefficients(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.basis.len()).collect()
    }

    fn piece(&self, d: u32) -> Result<&DegreePiece> {
        self.pieces
            .get(d as usize)
            .ok_or(Error::DegreeOverflow { degree: d, cap: self.cap })
    }

    /// Coordinates of a monomial in the degree basis.
    pub fn monomial_coordinates(&self, m: &Monomial) -> Result<&[Rational]> {
        let p = self.piece(m.degree())?;
        Ok(&p.reduction[p.index[m]])
    }

    /// Coordinates of a homogeneous element of degree `d` (zero is allowed in any degree).
    pub fn coordinates(&self, d: u32, a: &GradedPoly) -> Result<Vec<Rational>> {
        let p = self.piece(d)?;
        let mut out = vec![Rational::zero(); p.basis.len()];
        for (m, c) in a.terms() {
            if m.degree() != d {
                return Err(Error::MalformedPresentation(format!(
                    "element is not homogeneous of degree {d}"
                )));
            }
            for (o, r) in out.iter_mut().zip(&p.reduction[p.index[m]]) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        Ok(out)
    }

    pub fn from_coordinates(&self, d: u32, coords: &[Rational]) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (m, c) in self.basis(d).into_iter().zip(coords) {
            out.add_term(m, c.clone());
        }
        out
    }

    /// Normal form: every term rewritten in the basis of its degree.
    pub fn reduce(&self, a: &GradedPoly) -> Result<GradedPoly> {
        let mut out = GradedPoly::zero();
        for (m, c) in a.terms() {
            let p = self.piece(m.degree())?;
            for (&b, r) in p.basis.iter().zip(&p.reduction[p.index[m]]) {
                if !r.is_zero() {
                    out.add_term(p.monomials[b].clone(), c * r);
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self, a: &GradedPoly) -> Result<bool> {
        Ok(self.reduce(a)?.is_zero())
    }

    pub fn multiply(&self, a: &GradedPoly, b: &GradedPoly) -> Result<GradedPoly> {
        for (ma, _) in a.terms() {
            for (mb, _) in b.terms() {
                let degree = ma.degree() + mb.degree();
                if degree > self.cap {
                    return Err(Error::DegreeOverflow { degree, cap: self.cap });
                }
            }
        }
        self.reduce(&self.algebra().multiply(a, b))
    }

    pub fn pow(&self, a: &GradedPoly, e: u32) -> Result<GradedPoly> {
        let mut acc = GradedPoly::one();
        for _ in 0..e {
            acc = self.multiply(&acc, a)?;
        }
        Ok(acc)
    }

    /// Coordinates of the product of basis elements `i` (degree `d1`) and `j` (degree `d2`).
    pub fn basis_product(&self, d1: u32, i: usize, d2: u32, j: usize) -> Result<(i32, Vec<Rational>)> {
        let p1 = self.piece(d1)?;
        let p2 = self.piece(d2)?;
        let (s, m) = self.algebra().monomial_product(&p1.monomials[p1.basis[i]], &p2.monomials[p2.basis[j]]);
        let p = self.piece(d1 + d2)?;
        if s == 0 {
            return Ok((0, vec![Rational::zero(); p.basis.len()]));
        }
        Ok((s, p.reduction[p.index[&m]].clone()))
    }

    /// Product of coordinate vectors over an extension ring of ℚ.
    pub fn multiply_coords<R: Ring>(&self, ring: &R, d1: u32, a: &[R::Elem], d2: u32, b: &[R::Elem]) -> Result<Vec<R::Elem>> {
        let d = d1 + d2;
        if d > self.cap {
            return Err(Error::DegreeOverflow { degree: d, cap: self.cap });
        }
        let mut out = vec![ring.zero(); self.dim(d)];
        for (i, x) in a.iter().enumerate() {
            if ring.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if ring.is_zero(y) {
                    continue;
                }
                let (s, coords) = self.basis_product(d1, i, d2, j)?;
                if s == 0 {
                    continue;
                }
                let xy = ring.mul(x, y);
                for (o, c) in out.iter_mut().zip(&coords) {
                    if !c.is_zero() {
                        *o = ring.add(o, &ring.scale(&(c * Rational::from_integer(s.into())), &xy));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Top-class pairing matrix `H^k × H^{n-k} → H^n` (requires `dim H^n = 1`).
    pub fn pairing_matrix(&self, k: u32, n: u32) -> Result<QMatrix> {
        let (r, c) = (self.dim(k), self.dim(n - k));
        let mut m = QMatrix::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                let (_, coords) = self.basis_product(k, i, n - k, j)?;
                m[(i, j)] = coords[0].clone();
            }
        }
        Ok(m)
    }

    /// Poincaré duality in formal dimension `n`: `H^n ≅ ℚ` and every pairing is perfect.
    pub fn poincare_pairing_check(&self, n: u32) -> bool {
        if n > self.cap || self.dim(n) != 1 {
            return false;
        }
        (0..=n).all(|k| {
            let dk = self.dim(k);
            dk == self.dim(n - k) && self.pairing_matrix(k, n).map_or(false, |m| m.rank() == dk)
        })
    }

    pub fn unit(&self) -> GradedPoly {
        GradedPoly::one()
    }
}

fn build_piece(p: &Presentation, d: u32) -> DegreePiece {
    let alg = p.algebra();
    let monomials = alg.monomials_of_degree(d);
    let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (k, r) in p.relations().iter().enumerate() {
        let e = p.relation_degree(k);
        if e > d {
            continue;
        }
        for m in alg.monomials_of_degree(d - e) {
            let multiple = alg.multiply(&GradedPoly::monomial(m, Rational::one()), r);
            if multiple.is_zero() {
                continue;
            }
            let mut row = vec![Rational::zero(); monomials.len()];
            for (mm, c) in multiple.terms() {
                row[index[mm]] = c.clone();
            }
            rows.push(row);
        }
    }
    let n = monomials.len();
    let (rref, pivots) = if rows.is_empty() {
        (QMatrix::zeros(0, n), Vec::new())
    } else {
        QMatrix::from_rows(rows).rref()
    };
    let mut pivot_row = vec![None; n];
    for (i, &c) in pivots.iter().enumerate() {
        pivot_row[c] = Some(i);
    }
    let basis: Vec<usize> = (0..n).filter(|&c| pivot_row[c].is_none()).collect();
    let reduction = (0..n)
        .map(|c| match pivot_row[c] {
            // pivot monomial = -(rest of its row)
            Some(i) => basis.iter().map(|&b| -&rref[(i, b)]).collect(),
            None => basis.iter().map(|&b| if b == c { Rational::one() } else { Rational::zero() }).collect(),
        })
        .collect();
    DegreePiece { monomials, index, basis, reduction }
}
