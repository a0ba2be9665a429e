//! Free `T³` actions on `(S³)³` and the third family of biquotients.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::graded::{FreeAlgebra, Generator, GradedPoly, Presentation, QuotientAlgebra};

/// Exponent matrix `(a₁ a₂ a₃ / b₁ b₂ b₃ / c₁ c₂ c₃)` of the action
/// `((u p₁, u^{a₁}v^{a₂}w^{a₃} p₂), (v q₁, u^{b₁}… q₂), (w r₁, u^{c₁}… r₂))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActionMatrix {
    pub entries: [[BigInt; 3]; 3],
}

impl ActionMatrix {
    pub fn new(rows: [[i64; 3]; 3]) -> Self {
        ActionMatrix { entries: rows.map(|r| r.map(BigInt::from)) }
    }

    /// Row-major entries `a₁,a₂,a₃,b₁,…,c₃`.
    pub fn from_entries(e: &[BigInt]) -> Option<Self> {
        if e.len() != 9 {
            return None;
        }
        let row = |i: usize| [e[3 * i].clone(), e[3 * i + 1].clone(), e[3 * i + 2].clone()];
        Some(ActionMatrix { entries: [row(0), row(1), row(2)] })
    }

    pub fn family1(c1: i64, c2: i64) -> Self {
        Self::new([[1, 2, 0], [1, 1, 0], [c1, c2, 1]])
    }

    pub fn family2(a3: i64, b3: i64) -> Self {
        Self::new([[1, 2, a3], [1, 1, b3], [0, 0, 1]])
    }

    pub fn family3(b1: i64, c1: i64, c2: i64) -> Self {
        Self::new([[1, 0, 0], [b1, 1, 0], [c1, c2, 1]])
    }

    fn minor(&self, i: usize, j: usize) -> BigInt {
        let m = &self.entries;
        &m[i][i] * &m[j][j] - &m[i][j] * &m[j][i]
    }

    pub fn determinant(&self) -> BigInt {
        let m = &self.entries;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessReport {
    pub diagonal_ok: bool,
    /// Principal minors on rows/columns {1,2}, {1,3}, {2,3}.
    pub minor_values: [BigInt; 3],
    pub det_value: BigInt,
    pub free: bool,
}

fn is_unit(n: &BigInt) -> bool {
    n.abs().is_one()
}

pub fn freeness_check(m: &ActionMatrix) -> FreenessReport {
    let diagonal_ok = (0..3).all(|i| is_unit(&m.entries[i][i]));
    let minor_values = [m.minor(0, 1), m.minor(0, 2), m.minor(1, 2)];
    let det_value = m.determinant();
    let free = diagonal_ok && minor_values.iter().all(is_unit) && is_unit(&det_value);
    FreenessReport { diagonal_ok, minor_values, det_value, free }
}

/// `ℚ[x₁,x₂,x₃]/⟨x₁², x₂² + b₁x₁x₂, x₃² + c₁x₁x₃ + c₂x₂x₃⟩` in formal dimension 6.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family3Ring {
    pub b1: i64,
    pub c1: i64,
    pub c2: i64,
    pub presentation: Presentation,
}

fn term(alg: &FreeAlgebra, c: i64, word: &[(usize, u32)]) -> GradedPoly {
    let (s, m) = alg.monomial_from_word(word);
    GradedPoly::monomial(m, int(c * s as i64))
}

pub fn family3_ring(b1: i64, c1: i64, c2: i64) -> Family3Ring {
    let alg = FreeAlgebra::new(vec![Generator::new("x1", 2), Generator::new("x2", 2), Generator::new("x3", 2)]);
    let relations = vec![
        term(&alg, 1, &[(0, 2)]),
        term(&alg, 1, &[(1, 2)]).add(&term(&alg, b1, &[(0, 1), (1, 1)])),
        term(&alg, 1, &[(2, 2)])
            .add(&term(&alg, c1, &[(0, 1), (2, 1)]))
            .add(&term(&alg, c2, &[(1, 1), (2, 1)])),
    ];
    let presentation = Presentation::new(alg.generators().to_vec(), relations, Some(6)).expect("valid family-3 presentation");
    Family3Ring { b1, c1, c2, presentation }
}

impl Family3Ring {
    pub fn quotient(&self) -> QuotientAlgebra {
        QuotientAlgebra::new(self.presentation.clone(), 6)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ObstructionVerdict {
    Obstructed,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    /// `ω₂ + (b₁/2)ω₁`
    pub omega2_tilde: GradedPoly,
    /// `ω₃ + p·ω₁ + q·ω̃₂`, expanded in `x₁, x₂, x₃`
    pub omega3_tilde: GradedPoly,
    pub p: Rational,
    pub q: Rational,
    /// `ω̃₃² = coefficient·ω₁ω̃₂`
    pub coefficient: Rational,
    pub top_class_nonzero: bool,
    pub verdict: ObstructionVerdict,
}

pub fn formality_obstruction(r: &Family3Ring) -> Result<ObstructionReport> {
    let q_alg = r.quotient();
    let alg = r.presentation.algebra();
    let half = Rational::new(BigInt::one(), 2.into());
    let (b1, c1, c2) = (int(r.b1), int(r.c1), int(r.c2));
    let w: Vec<GradedPoly> = (0..3).map(|i| alg.generator_poly(i)).collect();

    let w2t = w[1].add(&w[0].scale(&(&b1 * &half)));
    let a = &b1 * &c2 * &half - &c1;
    let p = -(&a * &half);
    let q = &c2 * &half;
    let w3t = w[2].add(&w[0].scale(&p)).add(&w2t.scale(&q));
    let coefficient = -(&c2 * &half) * &a;

    let w2t_sq = q_alg.multiply(&w2t, &w2t)?;
    if !w2t_sq.is_zero() {
        return Err(Error::ReductionMismatch(format!("omega2~^2 = {} is nonzero", alg.display(&w2t_sq))));
    }
    let w1w2t = q_alg.multiply(&w[0], &w2t)?;
    let w3t_sq = q_alg.multiply(&w3t, &w3t)?;
    let defect = q_alg.reduce(&w3t_sq.sub(&w1w2t.scale(&coefficient)))?;
    if !defect.is_zero() {
        return Err(Error::ReductionMismatch(format!(
            "omega3~^2 - ({coefficient})*omega1*omega2~ = {} is nonzero",
            alg.display(&defect)
        )));
    }
    let top = q_alg.multiply(&w1w2t, &w3t)?;
    let top_class_nonzero = !top.is_zero();
    let verdict = if !coefficient.is_zero() && top_class_nonzero {
        ObstructionVerdict::Obstructed
    } else {
        ObstructionVerdict::Inconclusive
    };
    Ok(ObstructionReport { omega2_tilde: w2t, omega3_tilde: w3t, p, q, coefficient, top_class_nonzero, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minors(m: &ActionMatrix) -> Vec<i64> {
        freeness_check(m).minor_values.iter().map(|v| i64::try_from(v).unwrap()).collect()
    }

    #[test]
    fn displayed_families() {
        let f1 = ActionMatrix::family1(3, -4);
        assert_eq!(minors(&f1), [-1, 1, 1]);
        assert_eq!(freeness_check(&f1).det_value, BigInt::from(-1));
        assert!(freeness_check(&f1).free);
        let f3 = ActionMatrix::family3(5, 7, -3);
        assert_eq!(minors(&f3), [1, 1, 1]);
        assert!(freeness_check(&f3).free);
        assert!(freeness_check(&ActionMatrix::family2(-2, 9)).free);
    }

    #[test]
    fn broken_minor() {
        let r = freeness_check(&ActionMatrix::new([[1, 2, 0], [2, 1, 0], [0, 0, 1]]));
        assert_eq!(r.minor_values[0], BigInt::from(-3));
        assert!(r.diagonal_ok && !r.free);
    }

    #[test]
    fn family3_presentations() {
        let r = family3_ring(0, 0, 0);
        assert_eq!(r.quotient().hilbert_coefficients(), [1, 0, 3, 0, 3, 0, 1]);
        let r = family3_ring(2, 1, 1);
        let alg = r.presentation.algebra();
        let rels: Vec<String> = r.presentation.relations().iter().map(|p| alg.display(p)).collect();
        assert_eq!(rels, ["x1^2", "2*x1*x2 + x2^2", "x1*x3 + x2*x3 + x3^2"]);
        assert!(r.quotient().poincare_pairing_check(6));
    }

    #[test]
    fn obstruction_examples() {
        let o = formality_obstruction(&family3_ring(0, 1, 2)).unwrap();
        assert_eq!(o.coefficient, int(1));
        assert_eq!((o.p.clone(), o.q.clone()), (Rational::new(1.into(), 2.into()), int(1)));
        assert_eq!(o.verdict, ObstructionVerdict::Obstructed);
        let o = formality_obstruction(&family3_ring(0, 0, 0)).unwrap();
        assert_eq!(o.verdict, ObstructionVerdict::Inconclusive);
        let o = formality_obstruction(&family3_ring(2, 1, 1)).unwrap();
        assert!(o.coefficient.is_zero() && o.top_class_nonzero);
        assert_eq!(o.verdict, ObstructionVerdict::Inconclusive);
    }
}
