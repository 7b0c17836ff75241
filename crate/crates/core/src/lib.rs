//! Exact computer algebra for quantum groups of colored Borcherds-Cartan data.

pub mod algebra;
pub mod center;
pub mod datum;
pub mod half;
pub mod linalg;
pub mod modp;
pub mod module;
pub mod recon;
pub mod rmatrix;
pub mod scalar;
