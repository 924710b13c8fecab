//! The coefficient-ring abstraction shared by every layer of the engine.
//!
//! Noncommutative polynomials and rewrite systems are generic over a
//! [`Scalar`]. The engine itself runs over [`crate::Coeff`] (polynomials in
//! the deformation parameters with cyclotomic coefficients), but the rewriting
//! kernel is equally happy over plain rationals or the cyclotomic field.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring with exact equality.
///
/// `try_inverse` returns `None` for non-units; rewrite rules can only be
/// normalized when their leading coefficient is a unit.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn try_inverse(&self) -> Option<Self>;

    fn from_integer(n: i64) -> Self;

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }
}

impl Scalar for BigRational {
    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_integer(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

/// Scalars that contain the N-th roots of unity needed by the group
/// exchange rules `g·x = ζ^k x·g`.
pub trait Cyclotomic: Scalar {
    /// ζ_N^k. Panics if the ring does not contain that root.
    fn root_of_unity(order: u32, k: i64) -> Self;
}

impl Cyclotomic for BigRational {
    fn root_of_unity(order: u32, k: i64) -> Self {
        let k = k.rem_euclid(order as i64);
        if k == 0 {
            Self::one()
        } else if 2 * k == order as i64 {
            -Self::one()
        } else {
            panic!("ζ_{order}^{k} is not rational")
        }
    }
}

/// Integer power by repeated squaring; negative exponents need a unit.
pub fn pow<S: Scalar>(base: &S, exp: i64) -> Option<S> {
    let (mut b, mut e) = if exp < 0 {
        (base.try_inverse()?, exp.unsigned_abs())
    } else {
        (base.clone(), exp as u64)
    };
    let mut acc = S::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul_ref(&b);
        }
        e >>= 1;
        if e > 0 {
            b = b.mul_ref(&b);
        }
    }
    Some(acc)
}
