use std::collections::HashSet;

use super::monomial::{FreeAlgebra, Generator};
use super::poly::GradedPoly;
use crate::error::{Error, Result};

/// Generators with degrees and homogeneous relations: `ℚ[x₁,…,x_n] ⊗ ∧(odd) / ⟨P₁,…,P_k⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    algebra: FreeAlgebra,
    relations: Vec<GradedPoly>,
    formal_dimension: Option<u32>,
}

impl Presentation {
    /// Validates generator names and degrees and the relations' homogeneity.
    pub fn new(generators: Vec<Generator>, relations: Vec<GradedPoly>, formal_dimension: Option<u32>) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &generators {
            if g.degree == 0 {
                return Err(Error::MalformedPresentation(format!("generator {} has degree 0", g.name)));
            }
            if !seen.insert(g.name.as_str()) {
                return Err(Error::MalformedPresentation(format!("duplicate generator {}", g.name)));
            }
        }
        let algebra = FreeAlgebra::new(generators);
        let min_deg = algebra.generators().iter().map(|g| g.degree).min().unwrap_or(0);
        for (i, r) in relations.iter().enumerate() {
            if r.is_zero() {
                return Err(Error::MalformedPresentation(format!("relation {} is zero", i + 1)));
            }
            for (m, _) in r.terms() {
                if m.factors().iter().any(|&(g, _)| g >= algebra.generators().len()) {
                    return Err(Error::MalformedPresentation(format!(
                        "relation {} references an unknown generator",
                        i + 1
                    )));
                }
            }
            let Some(d) = r.homogeneous_degree() else {
                return Err(Error::MalformedPresentation(format!(
                    "relation {} is inhomogeneous (degrees {:?})",
                    i + 1,
                    r.degrees()
                )));
            };
            if d < 2 * min_deg {
                return Err(Error::MalformedPresentation(format!(
                    "relation {} has degree {d}, below twice the minimal generator degree",
                    i + 1
                )));
            }
        }
        Ok(Presentation { algebra, relations, formal_dimension })
    }

    pub fn algebra(&self) -> &FreeAlgebra {
        &self.algebra
    }

    pub fn generators(&self) -> &[Generator] {
        self.algebra.generators()
    }

    pub fn relations(&self) -> &[GradedPoly] {
        &self.relations
    }

    pub fn formal_dimension(&self) -> Option<u32> {
        self.formal_dimension
    }

    pub fn with_formal_dimension(mut self, n: Option<u32>) -> Self {
        self.formal_dimension = n;
        self
    }

    pub fn relation_degree(&self, i: usize) -> u32 {
        self.relations[i].homogeneous_degree().expect("validated")
    }

    /// Formal dimension if set, else twice the largest relation degree.
    pub fn default_cap(&self) -> u32 {
        self.formal_dimension.unwrap_or_else(|| {
            let top = (0..self.relations.len()).map(|i| self.relation_degree(i)).max();
            match top {
                Some(d) => 2 * d,
                None => 2 * self.generators().iter().map(|g| g.degree).max().unwrap_or(0),
            }
        })
    }

    /// Text form accepted by the presentation parser.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(n) = self.formal_dimension {
            out.push_str(&format!("dim = {n}\n"));
        }
        for g in self.generators() {
            out.push_str(&format!("generator {} {}\n", g.name, g.degree));
        }
        for r in &self.relations {
            out.push_str(&format!("relation {}\n", self.algebra.display(r)));
        }
        out
    }
}
