//! Exact arithmetic: `Z_p`, `GF(p^r)`, the scalar ring `Z_l`, polynomials and
//! small matrices over `Z_l`.

mod ext;
mod matrix;
mod prime;
mod scalar;

pub use ext::{ExtField, ExtFieldElement, ModulusChoice};
pub use matrix::{vandermonde, vandermonde_rows, MatZl};
pub use prime::{is_prime, PrimeField};
pub use scalar::{lagrange_zero, PolyZl, Scalar, Zl};

pub(crate) use scalar::check_distinct_nonzero;
