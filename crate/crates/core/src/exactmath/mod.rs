pub mod cyclotomic;
pub mod matrix;
pub mod snf;
pub mod subspace;

pub use cyclotomic::{field_arith, Cyclotomic, Field, FieldOp, FieldValue, Rational};
pub use matrix::{ScalarMatrix, Vector};
pub use snf::{determinant, smith_normal_form, IntegerMatrix, SmithForm};
pub use subspace::{subspace_meet_join, LatticeOp, LatticeValue, Subspace};
