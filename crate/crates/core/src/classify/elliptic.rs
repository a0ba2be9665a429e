use serde::Serialize;

use crate::model::RankTable;

/// Formal dimension together with the homotopy ranks of a space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllipticProfile {
    pub dimension: u32,
    pub ranks: RankTable,
}

impl EllipticProfile {
    pub fn new(dimension: u32, ranks: RankTable) -> Self {
        EllipticProfile { dimension, ranks }
    }

    /// `(Σ 2k·rk π_{2k}, Σ (2k+1)·rk π_{2k+1})`
    pub fn weighted_sums(&self) -> (u64, u64) {
        let mut even = 0u64;
        let mut odd = 0u64;
        for (d, r) in self.ranks.nonzero() {
            let w = d as u64 * r as u64;
            if d % 2 == 0 {
                even += w;
            } else {
                odd += w;
            }
        }
        (even, odd)
    }
}

/// `Σ 2k·rk π_{2k} ≤ n` and `Σ (2k+1)·rk π_{2k+1} ≤ 2n − 1`.
pub fn check_elliptic_inequalities(p: &EllipticProfile) -> bool {
    let (even, odd) = p.weighted_sums();
    let n = p.dimension as u64;
    even <= n && odd + 1 <= 2 * n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(n: u32, ranks: &[(u32, usize)]) -> EllipticProfile {
        let mut counts = vec![0; 16];
        for &(d, r) in ranks {
            counts[d as usize] = r;
        }
        EllipticProfile::new(n, RankTable::from_counts(&counts))
    }

    #[test]
    fn s2_cubed_profile() {
        let p = profile(6, &[(2, 3), (3, 3)]);
        assert_eq!(p.weighted_sums(), (6, 9));
        assert!(check_elliptic_inequalities(&p));
    }

    #[test]
    fn dimension_five_with_b2_two() {
        assert!(!check_elliptic_inequalities(&profile(5, &[(2, 2), (3, 5)])));
    }

    #[test]
    fn two_sphere() {
        assert!(check_elliptic_inequalities(&profile(2, &[(2, 1), (3, 1)])));
        assert!(!check_elliptic_inequalities(&profile(2, &[(2, 1), (3, 2)])));
    }
}
