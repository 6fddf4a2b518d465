use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::coeff::{Coeff, FieldCoeff};
use super::cyclo::AtomProduct;
use super::gcd::poly_gcd;
use super::monomial::Var;
use super::poly::MultiPoly;
use super::Rational;
use crate::error::{Error, Result};

/// Reduced quotient of polynomials with a monic denominator (leading
/// coefficient 1 in the global monomial order).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    /// Reduce `num / den` to canonical form.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if den.is_constant() {
            let c = den.constant_value().unwrap();
            return Ok(RationalFunction {
                num: num.scale(&c.recip()),
                den: MultiPoly::one(),
            });
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        Ok(Self::from_coprime(num, den))
    }

    /// Normalize a pair already known to be coprime.
    pub fn from_coprime(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let lc = den.lead_coeff();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction {
            num: MultiPoly::one(),
            den: MultiPoly::one(),
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFunction {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(r))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MultiPoly, MultiPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        // coprime parts stay coprime under powers
        Ok(Self::from_coprime(
            self.num.pow(e as u32),
            self.den.pow(e as u32),
        ))
    }

    pub fn adams(&self, r: u32) -> Self {
        Self::from_coprime(self.num.adams(r), self.den.adams(r))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let rhs_num = if negate {
            -&other.num
        } else {
            other.num.clone()
        };
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return RationalFunction {
                num: rhs_num,
                den: other.den.clone(),
            };
        }
        if self.den == other.den {
            return Self::new(&self.num + &rhs_num, self.den.clone()).unwrap();
        }
        if self.den.is_one() {
            return Self::from_coprime(&(&self.num * &other.den) + &rhs_num, other.den.clone());
        }
        if other.den.is_one() {
            return Self::from_coprime(&self.num + &(&rhs_num * &self.den), self.den.clone());
        }
        let g = poly_gcd(&self.den, &other.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = other.den.div_exact(&g).unwrap();
        let num = &(&self.num * &b) + &(&rhs_num * &a);
        let den = &(&a * &b) * &g;
        if g.is_one() {
            Self::from_coprime(num, den)
        } else {
            Self::new(num, den).unwrap()
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(&self.num * &other.num);
        }
        // cross-cancel so the product stays reduced
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let n2 = other.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        Self::from_coprime(&n1 * &n2, &d1 * &d2)
    }

    /// Evaluate at rational values for every variable that occurs.
    pub fn eval_all(&self, values: &[(Var, Rational)]) -> Result<Rational> {
        let d = self.den.eval_all(values);
        if d.is_zero() {
            return Err(Error::SingularSpecialization);
        }
        Ok(self.num.eval_all(values) / d)
    }
}

/// Canonical representative of `num / den`.
pub fn rf_normalize(num: MultiPoly, den: MultiPoly) -> Result<RationalFunction> {
    RationalFunction::new(num, den)
}

/// Simultaneously substitute rational functions for variables.
pub fn substitute(
    f: &RationalFunction,
    assignment: &BTreeMap<Var, RationalFunction>,
) -> Result<RationalFunction> {
    // common-denominator substitution: each polynomial P becomes
    // P_sub / Π den_v^{deg_v P}
    let sub_poly = |p: &MultiPoly| -> (MultiPoly, BTreeMap<Var, u32>) {
        let degs: BTreeMap<Var, u32> = assignment.keys().map(|&v| (v, p.degree(v))).collect();
        let mut pow_cache: BTreeMap<(Var, u32, bool), MultiPoly> = BTreeMap::new();
        let mut power = |v: Var, e: u32, of_num: bool| -> MultiPoly {
            pow_cache
                .entry((v, e, of_num))
                .or_insert_with(|| {
                    let val = &assignment[&v];
                    if of_num {
                        val.num.pow(e)
                    } else {
                        val.den.pow(e)
                    }
                })
                .clone()
        };
        let mut acc = MultiPoly::zero();
        for (m, c) in p.terms() {
            let mut rest = *m;
            let mut term = MultiPoly::one();
            for (&v, &d) in &degs {
                let e = m.exp(v);
                rest = rest.with_exp(v, 0);
                if e > 0 {
                    term = &term * &power(v, e, true);
                }
                if d > e {
                    term = &term * &power(v, d - e, false);
                }
            }
            acc = &acc + &term.mul_term(&rest, c);
        }
        (acc, degs)
    };
    let (n, ndeg) = sub_poly(&f.num);
    let (d, ddeg) = sub_poly(&f.den);
    if d.is_zero() {
        return Err(Error::SingularSpecialization);
    }
    let mut num = n;
    let mut den = d;
    for (v, val) in assignment {
        let (dn, dd) = (ndeg[v], ddeg[v]);
        if dd > dn {
            num = &num * &val.den.pow(dd - dn);
        } else if dn > dd {
            den = &den * &val.den.pow(dn - dd);
        }
    }
    RationalFunction::new(num, den)
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &'a RationalFunction) -> RationalFunction {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &'a RationalFunction) -> RationalFunction {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &'a RationalFunction) -> RationalFunction {
        self.mul_impl(rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl std::fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

impl Coeff for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn from_rational(r: Rational) -> Self {
        RationalFunction::from_rational(r)
    }
    fn from_poly(p: &MultiPoly) -> Self {
        RationalFunction::from_poly(p.clone())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
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
        RationalFunction::scale(self, r)
    }
    fn adams(&self, r: u32) -> Self {
        RationalFunction::adams(self, r)
    }
}

impl FieldCoeff for RationalFunction {
    fn mul_atoms(&self, a: &AtomProduct) -> Self {
        self * &a.to_rational_function()
    }
    fn to_rational_function(&self) -> RationalFunction {
        self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn z() -> MultiPoly {
        MultiPoly::var(Var::Z)
    }
    fn w() -> MultiPoly {
        MultiPoly::var(Var::W)
    }
    fn s() -> MultiPoly {
        MultiPoly::var(Var::S)
    }
    fn c(n: i64) -> MultiPoly {
        MultiPoly::constant(rat(n))
    }

    #[test]
    fn factor_cancellation() {
        let f = rf_normalize(&z().pow(2) - &c(1), &z() - &c(1)).unwrap();
        assert_eq!(f, RationalFunction::from_poly(&z() + &c(1)));
    }

    #[test]
    fn zero_numerator() {
        assert_eq!(
            rf_normalize(MultiPoly::zero(), w()).unwrap(),
            RationalFunction::zero()
        );
    }

    #[test]
    fn coprime_pair_is_only_sign_normalized() {
        let num = (&z() - &w()).pow(2);
        let den = &(&z().pow(2) - &c(1)) * &(&c(1) - &w().pow(2));
        let f = rf_normalize(num.clone(), den.clone()).unwrap();
        // leading term of den is -z^2 w^2, so both flip sign
        assert_eq!(f.numerator(), &-&num);
        assert_eq!(f.denominator(), &-&den);
        assert!(f.denominator().lead_coeff() > rat(0));
        assert_eq!(
            rf_normalize(f.numerator().clone(), f.denominator().clone()).unwrap(),
            f
        );
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            rf_normalize(z(), MultiPoly::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn substitute_reciprocal_pair() {
        let f = RationalFunction::from_poly((&z() - &w()).pow(2));
        let mut a = BTreeMap::new();
        a.insert(
            Var::Z,
            RationalFunction::new(MultiPoly::one(), s()).unwrap(),
        );
        a.insert(Var::W, RationalFunction::from_poly(s()));
        let g = substitute(&f, &a).unwrap();
        let expected = RationalFunction::new((&c(1) - &s().pow(2)).pow(2), s().pow(2)).unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn substitute_zero() {
        let f = RationalFunction::from_poly(&z() * &w());
        let mut a = BTreeMap::new();
        a.insert(Var::Z, RationalFunction::zero());
        assert!(substitute(&f, &a).unwrap().is_zero());
    }

    #[test]
    fn substitute_pole() {
        let f = RationalFunction::new(MultiPoly::one(), &z() - &w()).unwrap();
        let mut a = BTreeMap::new();
        a.insert(Var::Z, RationalFunction::from_poly(w()));
        assert_eq!(substitute(&f, &a), Err(Error::SingularSpecialization));
    }

    #[test]
    fn sums_find_common_denominators() {
        let a = RationalFunction::new(MultiPoly::one(), &z() - &c(1)).unwrap();
        let b = RationalFunction::new(MultiPoly::one(), &z() + &c(1)).unwrap();
        let sum = &a + &b;
        let expected = RationalFunction::new(z().scale(&rat(2)), &z().pow(2) - &c(1)).unwrap();
        assert_eq!(sum, expected);
        assert!((&sum - &expected).is_zero());
        let prod = &a * &RationalFunction::from_poly(&z().pow(2) - &c(1));
        assert_eq!(prod, RationalFunction::from_poly(&z() + &c(1)));
    }
}
