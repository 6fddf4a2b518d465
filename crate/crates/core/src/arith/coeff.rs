use std::fmt;

use super::cyclo::AtomProduct;
use super::poly::MultiPoly;
use super::ratfun::RationalFunction;
use super::{rat, Rational};

/// Exact commutative coefficient ring with Adams operations.
///
/// `adams(r)` raises every variable to the `r`-th power, which is how the
/// parameters behave under plethysm.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: Rational) -> Self;
    fn from_poly(p: &MultiPoly) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn adams(&self, r: u32) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Coefficient fields that can absorb products of cyclotomic-type factors,
/// including division by them.
pub trait FieldCoeff: Coeff {
    fn mul_atoms(&self, a: &AtomProduct) -> Self;
    fn to_rational_function(&self) -> RationalFunction;
}

impl Coeff for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn from_rational(r: Rational) -> Self {
        MultiPoly::constant(r)
    }
    fn from_poly(p: &MultiPoly) -> Self {
        p.clone()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        MultiPoly::scale(self, r)
    }
    fn adams(&self, r: u32) -> Self {
        MultiPoly::adams(self, r)
    }
    fn is_one(&self) -> bool {
        MultiPoly::is_one(self)
    }
    fn pow(&self, e: u32) -> Self {
        MultiPoly::pow(self, e)
    }
}
