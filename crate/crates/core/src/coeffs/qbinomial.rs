//! Gaussian binomials.
//!
//! The q-binomial is built as an integer polynomial in an indeterminate from
//! the product formula and only evaluated afterwards, so roots of unity never
//! hit a vanishing denominator.

use super::cyclotomic::{int_div_exact, IntPoly};
use super::{CoeffError, CycNumber};
use crate::scalar::Scalar;

fn one_minus_t_pow(k: usize) -> IntPoly {
    let mut p = vec![0i64; k + 1];
    p[0] += 1;
    p[k] -= 1;
    p
}

fn mul(a: &[i64], b: &[i64]) -> IntPoly {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// The Gaussian binomial (n choose k)_t as an integer polynomial in t,
/// lowest degree first.
pub fn gaussian_binomial_poly(n: usize, k: usize) -> Result<IntPoly, CoeffError> {
    if k > n {
        return Err(CoeffError::BinomialRange { n, k });
    }
    let k = k.min(n - k);
    let mut num: IntPoly = vec![1];
    let mut den: IntPoly = vec![1];
    for i in 0..k {
        num = mul(&num, &one_minus_t_pow(n - i));
        den = mul(&den, &one_minus_t_pow(i + 1));
    }
    // den has leading coefficient ±1, so exact integer division works
    let sign = if den.last().copied().unwrap_or(1) < 0 {
        -1
    } else {
        1
    };
    let num: IntPoly = num.iter().map(|c| c * sign).collect();
    let den: IntPoly = den.iter().map(|c| c * sign).collect();
    Ok(int_div_exact(&num, &den).expect("Gaussian binomial is a polynomial"))
}

/// Evaluates an integer polynomial at a cyclotomic number by Horner's rule.
pub fn eval_int_poly<F: Scalar>(p: &[i64], at: &CycNumber<F>) -> CycNumber<F> {
    let order = at.order();
    let mut acc = CycNumber::<F>::zero_in(order);
    for &c in p.iter().rev() {
        acc = acc.mul_ref(at).add_ref(&CycNumber::from_int(order, c));
    }
    acc
}

/// (n choose k)_q evaluated at `q`.
pub fn gaussian_binomial<F: Scalar>(
    n: usize,
    k: usize,
    q: &CycNumber<F>,
) -> Result<CycNumber<F>, CoeffError> {
    Ok(eval_int_poly(&gaussian_binomial_poly(n, k)?, q))
}
