//! Exact Fock-space operator calculus for the cohomology of Hilbert schemes
//! of points on a surface.

pub mod affine;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod operators;
pub mod poly;
pub mod rational;
pub mod segre;
pub mod series;
pub mod surface;
pub mod verify;
