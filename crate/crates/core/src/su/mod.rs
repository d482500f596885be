//! Small dense complex linear algebra for one- and two-spin propagators.

mod expm;
mod fidelity;
mod matrix;
mod operators;
mod unitary;

pub use expm::{expm_generic, expm_rotation};
pub use fidelity::{equal_up_to_global_phase, fidelity, infidelity, trace_overlap};
pub use matrix::{Dim, Matrix};
pub use operators::{
    product_operator, product_operator_by_label, Generator, ProductOperator, Spin, HERMITIAN_TOL,
    PRODUCT_OPERATOR_TOL,
};
pub use unitary::{Unitary, UNITARY_TOL};
