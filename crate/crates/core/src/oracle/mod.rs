//! Independent ground truth: exact enumeration over finite groups, Monte Carlo
//! Haar sampling, and Weyl matrix models.

pub mod cyclotomic;
pub mod exact;
pub mod montecarlo;
pub mod weyl;

pub use cyclotomic::Cyclotomic;
pub use exact::{hns_haar_moment, sn_haar_moment, sn_truncated_char_law};
pub use montecarlo::{mc_haar_moment, sphere_mc_moment, MCConfig, McEstimate, McGroup};
pub use weyl::{stationarity_matrix, weyl_model, WeylModel};
