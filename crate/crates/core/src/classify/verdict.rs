use serde::Serialize;

use super::elliptic::{check_elliptic_inequalities, EllipticProfile};
use super::normalize::{normalize_generators, NormalizedPair};
use super::square_zero::{match_s2_cp2, square_zero_search, S2Cp2Witness, SquareZeroSearch};
use crate::error::{Error, Result};
use crate::graded::QuotientAlgebra;
use crate::model::{build_model_until, pi3_closed_form, pi3_identity, Pi3Identity, RankTable};

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictTag {
    CohomologySphere,
    ProductS2S3,
    ProductS2S4,
    ProductS3S3,
    ComplexProjective3,
    S2xCP2,
    NotGeometricallyFormal_b2_2,
    RankProfileS2S2S2,
    Impossible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub tag: VerdictTag,
    pub detail: String,
}

impl Verdict {
    fn new(tag: VerdictTag, detail: impl Into<String>) -> Self {
        Verdict { tag, detail: detail.into() }
    }
}

/// A verdict together with the evidence computed on the way.
#[derive(Clone, Debug)]
pub struct Classification {
    pub dimension: u32,
    pub verdict: Verdict,
    pub betti: Vec<usize>,
    pub ranks: Option<RankTable>,
    pub pi3: Option<Pi3Identity>,
    pub square_zero: Option<SquareZeroSearch>,
    pub s2_cp2: Option<S2Cp2Witness>,
    pub normalized: Option<NormalizedPair>,
}

impl Classification {
    fn new(dimension: u32, verdict: Verdict, betti: Vec<usize>) -> Self {
        Classification {
            dimension,
            verdict,
            betti,
            ranks: None,
            pi3: None,
            square_zero: None,
            s2_cp2: None,
            normalized: None,
        }
    }
}

pub fn classify_dim5(b2: usize) -> Verdict {
    match b2 {
        0 => Verdict::new(VerdictTag::CohomologySphere, "rational cohomology sphere S^5"),
        1 => Verdict::new(VerdictTag::ProductS2S3, "rational cohomology of S^2 x S^3"),
        _ => Verdict::new(
            VerdictTag::Impossible,
            format!("rk pi_3 = b2 + b2(b2+1)/2 = {} exceeds 3", pi3_closed_form(b2)),
        ),
    }
}

fn betti(q: &QuotientAlgebra, n: u32) -> Vec<usize> {
    (0..=n).map(|d| q.dim(d)).collect()
}

fn require_duality(q: &QuotientAlgebra, n: u32) -> Result<QuotientAlgebra> {
    let q = if q.cap() < n { q.with_cap(n) } else { q.clone() };
    if q.dim(1) != 0 {
        return Err(Error::DualityViolation(format!("H^1 has dimension {}", q.dim(1))));
    }
    if !q.poincare_pairing_check(n) {
        return Err(Error::DualityViolation(format!("the pairing into H^{n} is degenerate")));
    }
    Ok(q)
}

/// Dimension-5 classification of a ring, with the staged π₃ rank alongside the closed form.
pub fn classify_dim5_ring(q: &QuotientAlgebra) -> Result<Classification> {
    let q = require_duality(q, 5)?;
    let b = betti(&q, 5);
    let verdict = classify_dim5(b[2]);
    let id = pi3_identity(&q)?;
    if id.staged != id.betti_form || (b[2] == b[3] && id.staged != id.closed_form) {
        return Err(Error::ReductionMismatch(format!(
            "staged rk pi_3 = {} disagrees with b3 + dim mu_2^4 = {}",
            id.staged, id.betti_form
        )));
    }
    let mut c = Classification::new(5, verdict, b);
    c.pi3 = Some(id);
    Ok(c)
}

fn violates(n: u32) -> impl Fn(&RankTable) -> bool {
    move |r: &RankTable| !check_elliptic_inequalities(&EllipticProfile::new(n, r.clone()))
}

fn sums_detail(r: &RankTable) -> String {
    let (even, odd) = EllipticProfile::new(6, r.clone()).weighted_sums();
    format!("model ranks {:?} violate the ellipticity bounds (even sum {even} > 6 or odd sum {odd} > 11)", r.nonzero())
}

pub fn classify_dim6(q: &QuotientAlgebra) -> Result<Classification> {
    let q = require_duality(q, 6)?;
    let b = betti(&q, 6);
    let (b2, b3) = (b[2], b[3]);
    let impossible = |detail: String| Classification::new(6, Verdict::new(VerdictTag::Impossible, detail), b.clone());

    if b2 >= 4 {
        return Ok(impossible(format!("rk pi_2 = b2 = {b2} gives 2*{b2} > 6")));
    }
    let max_degree = if b2 == 3 { 12 } else { 4 };
    let (_, ranks) = build_model_until(&q, max_degree, violates(6))?;
    if violates(6)(&ranks) {
        let mut c = impossible(sums_detail(&ranks));
        c.ranks = Some(ranks);
        return Ok(c);
    }
    let mut c = match b2 {
        0 => match b3 {
            0 => Classification::new(6, Verdict::new(VerdictTag::CohomologySphere, "rational cohomology sphere S^6"), b.clone()),
            2 => Classification::new(6, Verdict::new(VerdictTag::ProductS3S3, "rational cohomology of S^3 x S^3"), b.clone()),
            _ => impossible(format!("b3 = {b3} is neither 0 nor 2")),
        },
        1 => {
            if b3 != 0 {
                impossible(format!("b2 = 1 forces b3 = 0, found {b3}"))
            } else {
                let x = q.from_coordinates(2, &[crate::exact::int(1)]);
                let x2 = q.multiply(&x, &x)?;
                if x2.is_zero() {
                    Classification::new(6, Verdict::new(VerdictTag::ProductS2S4, "x^2 = 0: rational cohomology of S^2 x S^4"), b.clone())
                } else {
                    Classification::new(6, Verdict::new(VerdictTag::ComplexProjective3, "x^2 != 0: rational cohomology of CP^3"), b.clone())
                }
            }
        }
        2 => {
            if b3 != 0 {
                impossible(format!("b2 = 2 forces b3 = 0, found {b3}"))
            } else {
                classify_b2_two(&q, b.clone())?
            }
        }
        _ => {
            if ranks.nonzero() == [(2, 3), (3, 3)] {
                Classification::new(
                    6,
                    Verdict::new(VerdictTag::RankProfileS2S2S2, "rational homotopy ranks of S^2 x S^2 x S^2 through degree 12"),
                    b.clone(),
                )
            } else {
                impossible(format!("model ranks {:?} differ from (pi_2, pi_3) = (3, 3)", ranks.nonzero()))
            }
        }
    };
    c.ranks = Some(ranks);
    Ok(c)
}

fn classify_b2_two(q: &QuotientAlgebra, b: Vec<usize>) -> Result<Classification> {
    let search = square_zero_search(q)?;
    if let Some(v) = search.class.clone() {
        let Some(w) = match_s2_cp2(q, &v)? else {
            return Err(Error::DualityViolation("square-zero class pairs trivially with H^4".into()));
        };
        let mut c = Classification::new(
            6,
            Verdict::new(VerdictTag::S2xCP2, "square-zero class found: rational cohomology of S^2 x CP^2"),
            b,
        );
        c.square_zero = Some(search);
        c.s2_cp2 = Some(w);
        return Ok(c);
    }
    let pair = normalize_generators(q)?;
    let mut c = Classification::new(
        6,
        Verdict::new(
            VerdictTag::NotGeometricallyFormal_b2_2,
            format!("no square-zero class; normalized with epsilon = {}", pair.epsilon),
        ),
        b,
    );
    c.square_zero = Some(search);
    c.normalized = Some(pair);
    Ok(c)
}
