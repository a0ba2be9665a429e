use std::collections::HashSet;

use super::dga::Dga;
use crate::error::{Error, Result};
use crate::graded::{Generator, GradedPoly, Presentation, QuotientAlgebra};

/// The two-stage model `ℚ[x₁,…,x_n] ⊗ ∧(y₁,…,y_k)`, `dy_i = P_i`, with the
/// regularity verdict from comparing Hilbert series.
#[derive(Clone, Debug)]
pub struct FormalityCertificate {
    pub presentation: Presentation,
    pub model: Dga,
    pub regular: bool,
    pub predicted_series: Vec<i64>,
    pub actual_series: Vec<usize>,
}

pub fn borel_model(p: &Presentation) -> Result<FormalityCertificate> {
    if let Some(g) = p.generators().iter().find(|g| g.is_odd()) {
        return Err(Error::OddGenerator(g.name.clone()));
    }
    let mut model = Dga::new(p.algebra().clone(), vec![GradedPoly::zero(); p.generators().len()]);
    let mut taken: HashSet<String> = p.generators().iter().map(|g| g.name.clone()).collect();
    for (i, r) in p.relations().iter().enumerate() {
        let mut name = format!("y{}", i + 1);
        while taken.contains(&name) {
            name.push('\'');
        }
        taken.insert(name.clone());
        model.push(Generator::new(name, p.relation_degree(i) - 1), r.clone());
    }
    let cap = p.default_cap();
    let predicted_series = predicted_series(p, cap);
    let actual_series = QuotientAlgebra::new(p.clone(), cap).hilbert_coefficients();
    let regular = predicted_series.iter().all(|&c| c >= 0)
        && predicted_series.iter().zip(&actual_series).all(|(&a, &b)| a == b as i64);
    Ok(FormalityCertificate { presentation: p.clone(), model, regular, predicted_series, actual_series })
}

/// Coefficients of `∏(1 − t^{deg P_j}) / ∏(1 − t^{deg x_i})` through degree `cap`.
pub fn predicted_series(p: &Presentation, cap: u32) -> Vec<i64> {
    let n = cap as usize + 1;
    let mut s = vec![0i64; n];
    s[0] = 1;
    for i in 0..p.relations().len() {
        let d = p.relation_degree(i) as usize;
        for k in (d..n).rev() {
            s[k] -= s[k - d];
        }
    }
    for g in p.generators() {
        // multiply by 1/(1 - t^d) = 1 + t^d + t^{2d} + ...
        let d = g.degree as usize;
        for k in d..n {
            s[k] += s[k - d];
        }
    }
    s
}
