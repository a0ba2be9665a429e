mod monomial;
mod poly;
mod presentation;
mod quotient;

pub use monomial::{koszul_sign, FreeAlgebra, Generator, Monomial};
pub use poly::GradedPoly;
pub use presentation::Presentation;
pub use quotient::{build_quotient, QuotientAlgebra};
