//! Exact finite-field toolkit for differential and second-order zero
//! differential (FBCT) spectra, vanishing flats and closed-form checks.

pub mod algebra;
pub mod closed_forms;
pub mod error;
pub mod field;
pub mod flats;
pub mod function;
pub mod gf2;
pub mod spectra;

pub use closed_forms::{verify, Params, Prediction, Predictor, TheoremId, TheoremVerdict};
pub use error::{Error, Result};
pub use field::{arith, make_field, ArithOp, Elem, Field, FieldElement, FieldSpec, Operand};
pub use function::{parse_function, FunctionKind, FunctionUnderTest};
