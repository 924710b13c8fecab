//! Exact arithmetic in the cyclotomic field Q(ζ_N).
//!
//! Elements are stored as coordinate vectors in the power basis
//! `1, ζ, …, ζ^{φ(N)-1}` and every product is reduced modulo Φ_N.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::CoeffError;
use crate::scalar::{Cyclotomic, Scalar};

/// Dense integer polynomial, lowest degree first.
pub type IntPoly = Vec<i64>;

fn trim(p: &mut IntPoly) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

#[cfg(test)]
fn int_mul(a: &[i64], b: &[i64]) -> IntPoly {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials by a monic divisor.
/// Returns `None` if the remainder is nonzero.
pub(crate) fn int_div_exact(num: &[i64], den: &[i64]) -> Option<IntPoly> {
    let mut rem: IntPoly = num.to_vec();
    trim(&mut rem);
    let mut den = den.to_vec();
    trim(&mut den);
    let lead = *den.last()?;
    if rem.len() < den.len() {
        return if rem.iter().all(|&c| c == 0) {
            Some(vec![0])
        } else {
            None
        };
    }
    let mut quot = vec![0i64; rem.len() - den.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + den.len() - 1];
        if c % lead != 0 {
            return None;
        }
        let c = c / lead;
        quot[k] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    if rem.iter().all(|&c| c == 0) {
        trim(&mut quot);
        Some(quot)
    } else {
        None
    }
}

/// The N-th cyclotomic polynomial, obtained by dividing x^N − 1 by Φ_d for
/// every proper divisor d of N.
pub fn cyclotomic_poly(n: u32) -> IntPoly {
    assert!(n >= 1, "cyclotomic_poly needs N >= 1");
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = int_div_exact(&num, &cyclotomic_poly(d)).expect("Φ_d divides x^N - 1");
        }
    }
    num
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count()
}

/// Precomputed reduction data for Q(ζ_N).
#[derive(Debug)]
pub struct CycloField {
    order: u32,
    modulus: IntPoly,
    degree: usize,
    // x^k mod Φ_N for k in 0..2·degree, as integer coordinate vectors
    powers: Vec<IntPoly>,
}

impl CycloField {
    fn build(order: u32) -> Self {
        let modulus = cyclotomic_poly(order);
        let degree = modulus.len() - 1;
        let mut powers: Vec<IntPoly> = Vec::with_capacity(2 * degree.max(1));
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..(2 * degree).max(order as usize) {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] -= top * modulus[i];
                }
            }
        }
        CycloField {
            order,
            modulus,
            degree,
            powers,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }
}

/// Shared, lazily built field descriptors.
pub fn cyclo_field(order: u32) -> Arc<CycloField> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("field cache poisoned");
    guard
        .entry(order)
        .or_insert_with(|| Arc::new(CycloField::build(order)))
        .clone()
}

/// An element of Q(ζ_N) over the rational field `F`.
///
/// Numbers whose field has degree one (N = 1 or 2) behave as plain rationals
/// and combine with numbers of any order.
#[derive(Clone)]
pub struct CycNumber<F = BigRational> {
    field: Arc<CycloField>,
    coords: Vec<F>,
}

impl<F: Scalar> CycNumber<F> {
    pub fn zero_in(order: u32) -> Self {
        let field = cyclo_field(order);
        let coords = vec![F::zero(); field.degree];
        CycNumber { field, coords }
    }

    pub fn from_rational(order: u32, value: F) -> Self {
        let mut z = Self::zero_in(order);
        z.coords[0] = value;
        z
    }

    pub fn from_int(order: u32, value: i64) -> Self {
        Self::from_rational(order, F::from_integer(value))
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let field = cyclo_field(order);
        let k = k.rem_euclid(order as i64) as usize;
        let coords = field.powers[k]
            .iter()
            .map(|&c| F::from_integer(c))
            .collect();
        CycNumber { field, coords }
    }

    /// Builds an element from coordinates in the power basis; the vector is
    /// reduced modulo Φ_N if it is longer than φ(N).
    pub fn from_coords(order: u32, coords: Vec<F>) -> Self {
        let field = cyclo_field(order);
        Self::reduce(field, coords)
    }

    fn reduce(field: Arc<CycloField>, raw: Vec<F>) -> Self {
        let d = field.degree;
        let mut coords = vec![F::zero(); d];
        for (k, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < d {
                coords[k].add_assign_ref(&c);
            } else {
                let table = if k < field.powers.len() {
                    field.powers[k].clone()
                } else {
                    power_mod(&field, k)
                };
                for (i, &t) in table.iter().enumerate() {
                    if t != 0 {
                        coords[i].add_assign_ref(&c.mul_ref(&F::from_integer(t)));
                    }
                }
            }
        }
        CycNumber { field, coords }
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn is_rational(&self) -> bool {
        self.field.degree == 1 || self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when the number lies in Q.
    pub fn as_rational(&self) -> Option<&F> {
        if self.is_rational() {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn lift_to(&self, field: &Arc<CycloField>) -> Self {
        let mut coords = vec![F::zero(); field.degree];
        coords[0] = self.coords[0].clone();
        CycNumber {
            field: field.clone(),
            coords,
        }
    }

    /// Brings two numbers into a common field, if one exists.
    fn align<'a>(
        a: &'a Self,
        b: &'a Self,
    ) -> Result<(std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>), CoeffError> {
        use std::borrow::Cow;
        if a.field.order == b.field.order {
            return Ok((Cow::Borrowed(a), Cow::Borrowed(b)));
        }
        if b.field.degree == 1 {
            return Ok((Cow::Borrowed(a), Cow::Owned(b.lift_to(&a.field))));
        }
        if a.field.degree == 1 {
            return Ok((Cow::Owned(a.lift_to(&b.field)), Cow::Borrowed(b)));
        }
        Err(CoeffError::OrderMismatch(a.field.order, b.field.order))
    }

    fn is_zero_coords(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CoeffError> {
        let (a, b) = Self::align(self, other)?;
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| x.add_ref(y))
            .collect();
        Ok(CycNumber {
            field: a.field.clone(),
            coords,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CoeffError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CoeffError> {
        let (a, b) = Self::align(self, other)?;
        let d = a.field.degree;
        if d == 1 {
            return Ok(CycNumber {
                field: a.field.clone(),
                coords: vec![a.coords[0].mul_ref(&b.coords[0])],
            });
        }
        let mut raw = vec![F::zero(); 2 * d - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                raw[i + j].add_assign_ref(&x.mul_ref(y));
            }
        }
        Ok(Self::reduce(a.field.clone(), raw))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, CoeffError> {
        let inv = other.inverse().ok_or(CoeffError::DivisionByZero)?;
        self.try_mul(&inv)
    }

    pub fn neg_ref(&self) -> Self {
        CycNumber {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, r: &F) -> Self {
        CycNumber {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c.mul_ref(r)).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// modulo Φ_N.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero_coords() {
            return None;
        }
        let d = self.field.degree;
        if d == 1 {
            return Some(CycNumber {
                field: self.field.clone(),
                coords: vec![self.coords[0].try_inverse()?],
            });
        }
        let modulus: Vec<F> = self
            .field
            .modulus
            .iter()
            .map(|&c| F::from_integer(c))
            .collect();
        let a = trim_f(self.coords.clone());
        // invariant: s·a ≡ r (mod Φ)
        let (mut r0, mut r1) = (modulus, a);
        let (mut s0, mut s1) = (vec![F::zero()], vec![F::one()]);
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = poly_divrem(&r0, &r1)?;
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant since Φ_N is irreducible
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].try_inverse()?;
        let coords: Vec<F> = s0.into_iter().map(|x| x.mul_ref(&c)).collect();
        Some(Self::reduce(self.field.clone(), coords))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        crate::scalar::pow(self, e)
    }
}

fn power_mod(field: &CycloField, k: usize) -> IntPoly {
    // x^k mod Φ_N via x^N = 1 when N >= 1
    let n = field.order as usize;
    field.powers[k % n].clone()
}

fn trim_f<F: Scalar>(mut p: Vec<F>) -> Vec<F> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    if p.is_empty() {
        p.push(F::zero());
    }
    p
}

fn poly_mul<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j].add_assign_ref(&x.mul_ref(y));
        }
    }
    trim_f(out)
}

fn poly_sub<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(F::zero);
            let y = b.get(i).cloned().unwrap_or_else(F::zero);
            x - y
        })
        .collect();
    trim_f(out)
}

fn poly_divrem<F: Scalar>(num: &[F], den: &[F]) -> Option<(Vec<F>, Vec<F>)> {
    let lead_inv = den.last()?.try_inverse()?;
    let mut rem = num.to_vec();
    if rem.len() < den.len() {
        return Some((vec![F::zero()], trim_f(rem)));
    }
    let mut quot = vec![F::zero(); rem.len() - den.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + den.len() - 1].mul_ref(&lead_inv);
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[k + j] = rem[k + j].clone() - c.mul_ref(d);
        }
        quot[k] = c;
    }
    rem.truncate(den.len() - 1);
    Some((trim_f(quot), trim_f(rem)))
}

impl<F: Scalar> PartialEq for CycNumber<F> {
    fn eq(&self, other: &Self) -> bool {
        match Self::align(self, other) {
            Ok((a, b)) => a.coords == b.coords,
            Err(_) => self.is_zero_coords() && other.is_zero_coords(),
        }
    }
}

impl<F: Scalar> Eq for CycNumber<F> {}

impl<F: Scalar> fmt::Debug for CycNumber<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc{}{:?}", self.field.order, self.coords)
    }
}

impl<F: Scalar> Add for CycNumber<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("cyclotomic order mismatch")
    }
}

impl<F: Scalar> Sub for CycNumber<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("cyclotomic order mismatch")
    }
}

impl<F: Scalar> Mul for CycNumber<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("cyclotomic order mismatch")
    }
}

impl<F: Scalar> Neg for CycNumber<F> {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

impl<F: Scalar> Zero for CycNumber<F> {
    fn zero() -> Self {
        Self::zero_in(1)
    }
    fn is_zero(&self) -> bool {
        self.is_zero_coords()
    }
}

impl<F: Scalar> One for CycNumber<F> {
    fn one() -> Self {
        Self::from_int(1, 1)
    }
}

impl<F: Scalar> Scalar for CycNumber<F> {
    fn try_inverse(&self) -> Option<Self> {
        self.inverse()
    }

    fn from_integer(n: i64) -> Self {
        Self::from_int(1, n)
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.try_add(other).expect("cyclotomic order mismatch")
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.try_mul(other).expect("cyclotomic order mismatch")
    }

    fn add_assign_ref(&mut self, other: &Self) {
        if self.field.order == other.field.order {
            for (x, y) in self.coords.iter_mut().zip(&other.coords) {
                x.add_assign_ref(y);
            }
        } else {
            *self = self.add_ref(other);
        }
    }
}

impl<F: Scalar> Cyclotomic for CycNumber<F> {
    fn root_of_unity(order: u32, k: i64) -> Self {
        Self::zeta_pow(order, k)
    }
}

impl<F: Scalar + fmt::Display> fmt::Display for CycNumber<F> {
    /// Prints the element as an integer-coefficient polynomial in `q`
    /// (rational coefficients print as `p/r`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag == "1";
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "q")?,
                1 => write!(f, "{mag}*q")?,
                _ if unit => write!(f, "q^{k}")?,
                _ => write!(f, "{mag}*q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Cyc = CycNumber<BigRational>;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn cyclotomic_degree_and_divisibility() {
        for n in 1..=30u32 {
            let phi = cyclotomic_poly(n);
            assert_eq!(phi.len() - 1, totient(n), "degree of Φ_{n}");
            let mut xn = vec![0i64; n as usize + 1];
            xn[0] = -1;
            xn[n as usize] = 1;
            let q = int_div_exact(&xn, &phi).expect("Φ_N divides x^N - 1");
            assert_eq!(int_mul(&q, &phi), xn);
        }
    }

    #[test]
    fn root_of_unity_identities() {
        let z = Cyc::zeta_pow(5, 1);
        let z4 = Cyc::zeta_pow(5, 4);
        assert_eq!(z.mul_ref(&z4), Cyc::one());
        let w = Cyc::zeta_pow(3, 1);
        let w2 = Cyc::zeta_pow(3, 2);
        assert_eq!(w.add_ref(&w2), Cyc::from_int(3, -1));
        assert_eq!(Cyc::zeta_pow(7, 7), Cyc::one());
        assert_eq!(Cyc::zeta_pow(7, -1), Cyc::zeta_pow(7, 6));
    }

    #[test]
    fn inverse_of_one_minus_zeta8_minus_two() {
        let one = Cyc::from_int(8, 1);
        let x = one.try_sub(&Cyc::zeta_pow(8, -2)).unwrap();
        let inv = x.inverse().unwrap();
        assert_eq!(inv.try_mul(&x).unwrap(), one);
        // 1 - ζ8^6 = 1 + ζ8^2 ; its inverse is (1 - ζ8^2)/2 since ζ8^4 = -1
        let expected = one
            .try_sub(&Cyc::zeta_pow(8, 2))
            .unwrap()
            .scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(inv, expected);
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = Cyc::zeta_pow(5, 1);
        let b = Cyc::zeta_pow(7, 1);
        assert!(matches!(
            a.try_add(&b),
            Err(CoeffError::OrderMismatch(5, 7))
        ));
        assert!(matches!(
            a.try_div(&Cyc::zero_in(5)),
            Err(CoeffError::DivisionByZero)
        ));
    }

    #[test]
    fn rationals_mix_with_any_order() {
        let a = Cyc::zeta_pow(5, 2);
        let two = Cyc::from_integer(2);
        let s = a.try_add(&two).unwrap();
        assert_eq!(s.order(), 5);
        assert_eq!(s.try_sub(&a).unwrap(), two);
    }

    #[test]
    fn display_as_polynomial_in_q() {
        let z = Cyc::zeta_pow(5, 1);
        let e = z
            .scale(&BigRational::from_integer((-1).into()))
            .try_sub(&Cyc::zeta_pow(5, 2).scale(&BigRational::from_integer(2.into())))
            .unwrap();
        assert_eq!(e.to_string(), "-q - 2*q^2");
        assert_eq!(Cyc::zero_in(5).to_string(), "0");
    }
}
