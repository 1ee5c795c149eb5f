pub mod census;
pub mod error;
pub mod families;
pub mod graph;
pub mod liealg;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod schreier;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};

pub type Rational = num_rational::BigRational;
pub type RatMatrix = linalg::Matrix<Rational>;
pub type RatSubspace = linalg::Subspace<Rational>;
