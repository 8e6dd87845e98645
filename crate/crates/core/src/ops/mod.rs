//! Local binary operations: canonical two-variable polynomials, the six
//! quantized implications and conjunctions, and their classification.

mod binop;
mod boolpoly;
mod conditions;
mod kotas;

pub use binop::{dual_conjunction, BinaryOperation, OpKind};
pub use boolpoly::BoolPoly;
pub use conditions::{
    b_part, census_noncommuting, census_polynomials, check_conditions, check_local, check_quantization, n_part,
    Check, ConditionReport, LocalityReport, QuantizationReport, Witness,
};
pub use kotas::{conjunction, implication, sasaki_projection, Eps, KotasSpec};
