use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::Zero;
use serde::Serialize;

use super::dga::Dga;
use crate::error::{Error, Result};
use crate::exact::matrix::quotient_representatives;
use crate::exact::{image_complement, QMatrix, Rational};
use crate::graded::{Generator, GradedPoly, Monomial, QuotientAlgebra};

/// Ranks of the rational homotopy groups by degree.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct RankTable {
    pub ranks: BTreeMap<u32, usize>,
    pub max_degree: u32,
}

impl RankTable {
    pub fn from_counts(counts: &[usize]) -> Self {
        let ranks = counts
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(d, &c)| (d as u32, c))
            .collect();
        RankTable { ranks, max_degree: counts.len().saturating_sub(1) as u32 }
    }

    pub fn rank(&self, degree: u32) -> usize {
        self.ranks.get(&degree).copied().unwrap_or(0)
    }

    /// Nonzero entries as `(degree, rank)` pairs.
    pub fn nonzero(&self) -> Vec<(u32, usize)> {
        self.ranks.iter().map(|(&d, &r)| (d, r)).collect()
    }
}

/// A stage `(μ_k, m_k)` of the minimal-model construction over a target with zero differential.
#[derive(Clone, Debug)]
pub struct PartialModel {
    stage: u32,
    dga: Dga,
    images: Vec<GradedPoly>,
    target: QuotientAlgebra,
}

impl PartialModel {
    pub fn stage(&self) -> u32 {
        self.stage
    }

    pub fn dga(&self) -> &Dga {
        &self.dga
    }

    pub fn target(&self) -> &QuotientAlgebra {
        &self.target
    }

    /// `m_k` on the generator with the given index.
    pub fn image(&self, gen: usize) -> &GradedPoly {
        &self.images[gen]
    }

    pub fn images(&self) -> &[GradedPoly] {
        &self.images
    }

    /// Dimension of the target in degree `d`; zero above the formal dimension.
    pub fn target_dim(&self, d: u32) -> usize {
        if self.target.presentation().formal_dimension().is_some_and(|n| d > n) {
            return 0;
        }
        self.target.dim(d)
    }

    fn monomial_image(&self, m: &Monomial, cache: &mut HashMap<Monomial, Vec<Rational>>) -> Result<Vec<Rational>> {
        let d = m.degree();
        let n = self.target_dim(d);
        if n == 0 {
            return Ok(Vec::new());
        }
        if let Some(v) = cache.get(m) {
            return Ok(v.clone());
        }
        let mut acc = GradedPoly::one();
        for &(g, e) in m.factors() {
            for _ in 0..e {
                acc = self.target.multiply(&acc, &self.images[g])?;
            }
        }
        let v = self.target.coordinates(d, &acc)?;
        cache.insert(m.clone(), v.clone());
        Ok(v)
    }

    /// Matrix of `m_k` from the stage's monomials of degree `d` to the target's degree-`d` basis.
    pub fn morphism_matrix(&self, d: u32) -> Result<QMatrix> {
        let monomials = self.dga.algebra().monomials_of_degree(d);
        let rows = self.target_dim(d);
        let mut cache = HashMap::new();
        let mut cols = Vec::with_capacity(monomials.len());
        for m in &monomials {
            let v = self.monomial_image(m, &mut cache)?;
            cols.push(if v.is_empty() { vec![Rational::zero(); rows] } else { v });
        }
        Ok(QMatrix::from_columns(rows, &cols))
    }

    /// Basis of `H^degree(μ_k)` as polynomials in the stage generators.
    pub fn stage_cohomology(&self, degree: u32) -> Vec<GradedPoly> {
        let h = self.dga.cohomology(degree);
        h.classes.iter().map(|v| self.dga.vector_to_poly(&h.monomials, v)).collect()
    }

    /// `m_k` composed with the target multiplication for any element of the stage.
    pub fn apply(&self, elem: &GradedPoly) -> Result<GradedPoly> {
        let mut cache = HashMap::new();
        let mut out = GradedPoly::zero();
        for (m, c) in elem.terms() {
            let v = self.monomial_image(m, &mut cache)?;
            out = out.add(&self.target.from_coordinates(m.degree(), &v).scale(c));
        }
        Ok(out)
    }

    /// `m_k(d g) = 0` in the target for every generator.
    pub fn check_morphism(&self) -> Result<bool> {
        for d in self.dga.differentials() {
            if !self.apply(d)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn fresh_name(&self, base: String) -> String {
        let taken: HashSet<&str> = self
            .dga
            .generators()
            .iter()
            .chain(self.target.algebra().generators())
            .map(|g| g.name.as_str())
            .collect();
        let mut name = base;
        while taken.contains(name.as_str()) {
            name.push('\'');
        }
        name
    }
}

/// `μ₂` with one closed degree-2 generator per basis element of `H²`.
pub fn init_stage2(target: &QuotientAlgebra) -> Result<PartialModel> {
    let (h0, h1) = (target.dim(0), target.dim(1));
    if h0 != 1 || h1 != 0 {
        return Err(Error::NotSimplyConnected { h0, h1 });
    }
    let mut pm = PartialModel { stage: 2, dga: Dga::empty(), images: Vec::new(), target: target.clone() };
    let basis = target.basis(2);
    for (i, m) in basis.iter().enumerate() {
        let base = match m.factors() {
            [(g, 1)] => target.algebra().generators()[*g].name.clone(),
            _ => format!("x2_{}", i + 1),
        };
        let name = if pm.dga.generators().iter().any(|g| g.name == base) { pm.fresh_name(base) } else { base };
        pm.dga.push(Generator::new(name, 2), GradedPoly::zero());
        pm.images.push(GradedPoly::monomial(m.clone(), num_traits::One::one()));
    }
    Ok(pm)
}

/// One step `μ_k → μ_{k+1}`: closed generators onto a complement of the image in
/// `H^{k+1}`, and generators killing the kernel of `m_k` on `H^{k+2}`.
pub fn next_stage(pm: &PartialModel) -> Result<PartialModel> {
    let k = pm.stage;
    let (d1, d2) = (k + 1, k + 2);
    if d2 > pm.target.cap() {
        return Err(Error::CapExceeded { stage: k, needed: d2, cap: pm.target.cap() });
    }
    let mut next = pm.clone();

    // complement of Im m_k in H^{k+1}(target)
    let h1 = pm.dga.cohomology(d1);
    let m1 = pm.morphism_matrix(d1)?;
    let t1 = pm.target_dim(d1);
    let cocycle_images: Vec<Vec<Rational>> = h1.cocycles.iter().map(|z| m1.mul_vec(z)).collect();
    let complement = image_complement(&QMatrix::from_columns(t1, &cocycle_images), t1);

    // Ker m_k on H^{k+2}(μ_k)
    let h2 = pm.dga.cohomology(d2);
    let m2 = pm.morphism_matrix(d2)?;
    let t2 = pm.target_dim(d2);
    let on_cocycles = QMatrix::from_columns(t2, &h2.cocycles.iter().map(|z| m2.mul_vec(z)).collect::<Vec<_>>());
    let kernel_cocycles: Vec<Vec<Rational>> = on_cocycles
        .kernel_basis()
        .into_iter()
        .map(|c| combine(&h2.cocycles, &c, h2.monomials.len()))
        .collect();
    let killed = quotient_representatives(h2.monomials.len(), &h2.coboundaries, &kernel_cocycles);

    for (i, y) in complement.iter().enumerate() {
        let name = next.fresh_name(format!("u{d1}_{}", i + 1));
        next.dga.push(Generator::new(name, d1), GradedPoly::zero());
        next.images.push(pm.target.from_coordinates(d1, y));
    }
    for (j, z) in killed.iter().enumerate() {
        let name = next.fresh_name(format!("v{d1}_{}", j + 1));
        let dz = pm.dga.vector_to_poly(&h2.monomials, z);
        // the stage's free algebra is a prefix of the next one, so monomials carry over
        next.dga.push(Generator::new(name, d1), dz);
        next.images.push(GradedPoly::zero());
    }
    next.stage = d1;
    debug_assert!(next.dga.check_d_squared());
    Ok(next)
}

fn combine(vectors: &[Vec<Rational>], coeffs: &[Rational], dim: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dim];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// Runs the construction through stage `max_degree` and reads off the ranks.
pub fn build_model(target: &QuotientAlgebra, max_degree: u32) -> Result<(PartialModel, RankTable)> {
    let target = if target.cap() < max_degree + 2 { target.with_cap(max_degree + 2) } else { target.clone() };
    let mut pm = init_stage2(&target)?;
    while pm.stage < max_degree {
        pm = next_stage(&pm)?;
    }
    let ranks = RankTable::from_counts(&pm.dga.generator_counts(max_degree));
    Ok((pm, ranks))
}

/// Like [`build_model`], but stops as soon as `stop` rejects the ranks seen so far.
pub fn build_model_until(
    target: &QuotientAlgebra,
    max_degree: u32,
    mut stop: impl FnMut(&RankTable) -> bool,
) -> Result<(PartialModel, RankTable)> {
    let target = if target.cap() < max_degree + 2 { target.with_cap(max_degree + 2) } else { target.clone() };
    let mut pm = init_stage2(&target)?;
    loop {
        let ranks = RankTable::from_counts(&pm.dga.generator_counts(pm.stage));
        if pm.stage >= max_degree || stop(&ranks) {
            return Ok((pm, ranks));
        }
        pm = next_stage(&pm)?;
    }
}

/// The two sides of `rk π₃ = b₃ + dim μ₂⁴ = b₂ + b₂(b₂+1)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi3Identity {
    pub staged: usize,
    pub betti_form: usize,
    pub closed_form: usize,
}

pub fn pi3_closed_form(b2: usize) -> usize {
    b2 + b2 * (b2 + 1) / 2
}

/// Evaluates both forms of the π₃ identity next to the staged rank. The second
/// equality only holds when `b₃ = b₂`, as Poincaré duality forces in dimension 5.
pub fn pi3_identity(target: &QuotientAlgebra) -> Result<Pi3Identity> {
    let (pm, ranks) = build_model(target, 3)?;
    let b2 = target.dim(2);
    let b3 = pm.target_dim(3);
    let mu2_4 = b2 * (b2 + 1) / 2;
    Ok(Pi3Identity { staged: ranks.rank(3), betti_form: b3 + mu2_4, closed_form: pi3_closed_form(b2) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{FreeAlgebra, Presentation};

    fn quotient(gens: &[(&str, u32)], rels: &[&[(i64, &[(usize, u32)])]], dim: u32) -> QuotientAlgebra {
        let alg = FreeAlgebra::new(gens.iter().map(|&(n, d)| Generator::new(n, d)).collect());
        let relations = rels
            .iter()
            .map(|terms| {
                let mut p = GradedPoly::zero();
                for &(c, word) in terms.iter() {
                    let (s, m) = alg.monomial_from_word(word);
                    p.add_term(m, Rational::from_integer((c * s as i64).into()));
                }
                p
            })
            .collect();
        QuotientAlgebra::with_default_cap(Presentation::new(alg.generators().to_vec(), relations, Some(dim)).unwrap())
    }

    fn names(pm: &PartialModel) -> Vec<(String, u32, String)> {
        (0..pm.dga().generators().len())
            .map(|i| {
                let g = &pm.dga().generators()[i];
                (g.name.clone(), g.degree, pm.dga().display_differential(i))
            })
            .collect()
    }

    #[test]
    fn s5_has_no_degree_two_generators() {
        let q = quotient(&[("u", 5)], &[], 5);
        assert!(init_stage2(&q).unwrap().dga().generators().is_empty());
    }

    #[test]
    fn s2_stage_three() {
        let q = quotient(&[("x", 2)], &[&[(1, &[(0, 2)])]], 2);
        let pm = next_stage(&init_stage2(&q.with_cap(4)).unwrap()).unwrap();
        assert_eq!(names(&pm), vec![("x".into(), 2, "0".into()), ("v3_1".into(), 3, "x^2".into())]);
        assert!(pm.check_morphism().unwrap());
    }

    #[test]
    fn s2_s3_stage_three() {
        let q = quotient(&[("x", 2), ("u", 3)], &[&[(1, &[(0, 2)])]], 5);
        let pm = next_stage(&init_stage2(&q).unwrap()).unwrap();
        let n = names(&pm);
        assert_eq!(n[1], ("u3_1".into(), 3, "0".into()));
        assert_eq!(n[2], ("v3_1".into(), 3, "x^2".into()));
        assert_eq!(pm.image(1), &pm.target().algebra().generator_poly(1));
    }

    #[test]
    fn stage_cohomology_examples() {
        let q = quotient(&[("x", 2), ("y", 2)], &[&[(1, &[(0, 2)])], &[(1, &[(1, 2)])]], 4);
        let pm = init_stage2(&q).unwrap();
        assert_eq!(pm.stage_cohomology(4).len(), 3);
        let q = quotient(&[("x", 2)], &[&[(1, &[(0, 2)])]], 2);
        let pm = init_stage2(&q.with_cap(4)).unwrap();
        assert_eq!(pm.stage_cohomology(4).len(), 1);
        let pm = next_stage(&pm).unwrap();
        assert!(pm.stage_cohomology(4).is_empty());
    }

    #[test]
    fn cp3_model() {
        let q = quotient(&[("x", 2)], &[&[(1, &[(0, 4)])]], 6);
        let (pm, ranks) = build_model(&q, 8).unwrap();
        assert_eq!(ranks.nonzero(), vec![(2, 1), (7, 1)]);
        assert_eq!(names(&pm)[1], ("v7_1".into(), 7, "x^4".into()));
        assert!(pm.dga().is_minimal());
    }

    #[test]
    fn s3_model() {
        let q = quotient(&[("u", 3)], &[], 3);
        let (_, ranks) = build_model(&q, 10).unwrap();
        assert_eq!(ranks.nonzero(), vec![(3, 1)]);
    }

    #[test]
    fn s2_cubed_ranks() {
        let q = quotient(
            &[("x1", 2), ("x2", 2), ("x3", 2)],
            &[&[(1, &[(0, 2)])], &[(1, &[(1, 2)])], &[(1, &[(2, 2)])]],
            6,
        );
        let (pm, ranks) = build_model(&q, 12).unwrap();
        assert_eq!(ranks.nonzero(), vec![(2, 3), (3, 3)]);
        assert!(pm.dga().check_d_squared());
        assert!(pm.check_morphism().unwrap());
    }

    #[test]
    fn b2_one_b3_two_kernel() {
        // x u1 = x u2 = 0, x^3 = u1 u2
        let q = quotient(
            &[("x", 2), ("u1", 3), ("u2", 3)],
            &[&[(1, &[(0, 1), (1, 1)])], &[(1, &[(0, 1), (2, 1)])], &[(1, &[(0, 3)]), (-1, &[(1, 1), (2, 1)])]],
            6,
        );
        assert!(q.poincare_pairing_check(6));
        let (_, ranks) = build_model(&q, 4).unwrap();
        assert!(ranks.rank(4) >= 2);
    }

    #[test]
    fn not_simply_connected() {
        let q = quotient(&[("t", 1)], &[], 1);
        assert!(matches!(init_stage2(&q), Err(Error::NotSimplyConnected { .. })));
    }

    #[test]
    fn cap_exceeded() {
        let q = quotient(&[("x", 2)], &[&[(1, &[(0, 2)])]], 2);
        let pm = init_stage2(&q).unwrap();
        assert!(matches!(next_stage(&pm), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn pi3_forms_agree_in_dimension_five() {
        let q = quotient(&[("x", 2), ("u", 3)], &[&[(1, &[(0, 2)])]], 5);
        let id = pi3_identity(&q).unwrap();
        assert_eq!(id, Pi3Identity { staged: 2, betti_form: 2, closed_form: 2 });
    }
}
