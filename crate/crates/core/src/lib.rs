//! Exact computation of liftings of finite-dimensional Nichols algebras of
//! diagonal type.
//!
//! Given a braiding matrix, a presentation of the Nichols algebra and a
//! stratification of its relations, the engine produces the cleft-object
//! algebras 𝓔(λ) and the lifted Hopf algebras 𝔲(λ) as explicit presentations
//! with symbolic deformation parameters.

pub mod braided;
pub mod catalog;
pub mod coeffs;
pub mod emit;
pub mod expr;
pub mod lifting;
pub mod ncpoly;
pub mod problem;
pub mod scalar;

pub use scalar::{Cyclotomic, Scalar};

use num_rational::BigRational;

/// Elements of Q(ζ_N) over arbitrary-precision rationals.
pub type Cyc = coeffs::CycNumber<BigRational>;
/// λ-polynomials with cyclotomic coefficients: the engine's coefficient ring.
pub type Coeff = coeffs::Coefficient<Cyc>;
/// Noncommutative polynomials over [`Coeff`].
pub type Poly = ncpoly::NcPoly<Coeff>;
/// Rewriting systems over [`Coeff`].
pub type System = ncpoly::RewriteSystem<Coeff>;
