mod borel;
mod dga;
mod stage;

pub use borel::{borel_model, predicted_series, FormalityCertificate};
pub use dga::{DegreeCohomology, Dga};
pub use stage::{
    build_model, build_model_until, init_stage2, next_stage, pi3_closed_form, pi3_identity, PartialModel, Pi3Identity,
    RankTable,
};
