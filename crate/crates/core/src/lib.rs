pub mod corpus;
pub mod error;
pub mod formula;
pub mod hilbert;
pub mod interp;
pub mod lattice;
pub mod ops;
pub mod quniverse;
pub mod scalar;

pub use error::{Error, Result};
pub use lattice::{Elem, ElementSet, OrthoAlgebra, OrthoLattice};

pub use num_rational::BigRational;

pub type ComplexMatrixF64 = hilbert::ComplexMatrix<f64>;
pub type ComplexMatrixF32 = hilbert::ComplexMatrix<f32>;
pub type ComplexMatrixExact = hilbert::ComplexMatrix<BigRational>;
pub type ProjectionF64 = hilbert::Projection<f64>;
pub type ProjectionF32 = hilbert::Projection<f32>;
pub type ProjectionExact = hilbert::Projection<BigRational>;
