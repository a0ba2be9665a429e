use std::cmp::Ordering;

use crate::exact::{int, AlgebraicReal, Rational, UniPoly};

/// The normalization cubic `1 − 3a² + α(a³ − 3a)` with a chosen real root.
#[derive(Clone, Debug)]
pub struct CubicInstance {
    pub alpha: Rational,
    pub polynomial: UniPoly,
    pub chosen_root: AlgebraicReal,
}

pub fn normalization_cubic(alpha: &Rational) -> UniPoly {
    UniPoly::new(vec![int(1), -alpha * int(3), int(-3), alpha.clone()])
}

/// Prefers a rational root; otherwise the root of least absolute value,
/// the positive one on a tie.
pub fn preferred_root(roots: Vec<AlgebraicReal>) -> Option<AlgebraicReal> {
    if let Some(r) = roots.iter().find(|r| r.is_rational()) {
        return Some(r.clone());
    }
    let abs = |r: &AlgebraicReal| if r.sign() == Ordering::Less { r.neg() } else { r.clone() };
    roots.into_iter().min_by(|a, b| {
        abs(a).cmp_exact(&abs(b)).then_with(|| b.sign().cmp(&a.sign()))
    })
}

pub fn cubic_root(alpha: &Rational) -> CubicInstance {
    let polynomial = normalization_cubic(alpha);
    // odd degree, or the quadratic 1 - 3a^2 when alpha = 0: a real root always exists
    let chosen_root = preferred_root(AlgebraicReal::roots_of(&polynomial)).expect("the cubic has a real root");
    CubicInstance { alpha: alpha.clone(), polynomial, chosen_root }
}
