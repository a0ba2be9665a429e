mod cubic;
mod elliptic;
mod normalize;
mod square_zero;
mod verdict;

pub use cubic::{cubic_root, normalization_cubic, preferred_root, CubicInstance};
pub use elliptic::{check_elliptic_inequalities, EllipticProfile};
pub use normalize::{normalize_generators, quadratic_relation, NormalizationBranch, NormalizedPair};
pub use square_zero::{find_square_zero_class, match_s2_cp2, square_zero_search, S2Cp2Witness, ScalarClass, SquareZeroSearch};
pub use verdict::{classify_dim5, classify_dim5_ring, classify_dim6, Classification, Verdict, VerdictTag};
