//! Exact coefficient arithmetic: Q(ζ_N), λ-polynomials and q-binomials.

mod cyclotomic;
mod lambda;
mod qbinomial;

pub use cyclotomic::{cyclo_field, cyclotomic_poly, totient, CycNumber, CycloField, IntPoly};
pub use lambda::{monomial_string, Coefficient, Exps};
pub use qbinomial::{eval_int_poly, gaussian_binomial, gaussian_binomial_poly};

pub(crate) use lambda::{is_top_level_sum, paren_if_sum};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("cyclotomic orders {0} and {1} do not interoperate")]
    OrderMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("gaussian binomial ({n} choose {k}) needs k <= n")]
    BinomialRange { n: usize, k: usize },
}
