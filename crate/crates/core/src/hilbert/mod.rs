//! Projection lattices of ℂ^d (d ≤ 8), the conjugation family ∘θ, and
//! spectral families of Hermitian matrices.

mod closure;
mod io;
mod matrix;
mod projection;
pub mod sample;
mod spectral;
mod takeuti;

pub use closure::{closure_generate, Closure};
pub use io::{exact_phase, parse_rational, MatrixFile, Mode};
pub use matrix::{ComplexMatrix, MAX_DIM};
pub use projection::{Projection, ProjectionLogic};
pub use spectral::{
    hermitian_eigen, is_positive_semidefinite, is_zero_matrix, power, q_value_order, spectral_family,
    spectral_order_leq, SpectralFamily,
};
pub use takeuti::{
    phase, star_closed_form, star_j_theta_i, takeuti_conjugation, takeuti_expansion, takeuti_phase, takeuti_theta,
    StarResult,
};
