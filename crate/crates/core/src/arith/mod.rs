//! Exact arithmetic substrate.
//!
//! All polynomial objects live in one global variable order
//! `z, w, q, t, s, T, u` (lexicographic, `z` most significant). Coefficients
//! are [`Rational`]s of unbounded size.

mod coeff;
mod cyclo;
mod gcd;
mod monomial;
mod poly;
mod ratfun;
mod series;
mod text;

pub use coeff::{Coeff, FieldCoeff};
pub use cyclo::{cyclotomic, Atom, AtomProduct, CycloFraction, MonomialMap};
pub use gcd::poly_gcd;
pub use monomial::{LaurentMonomial, Monomial, Var, NVARS};
pub use poly::MultiPoly;
pub use ratfun::{rf_normalize, substitute, RationalFunction};
pub use series::{rf_series_expand, TruncatedSeries};
pub use text::{parse_poly, parse_rational_function};

pub type Rational = num_rational::BigRational;
pub type Integer = num_bigint::BigInt;

/// Rational number from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}

/// Rational number `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

/// Möbius function by trial factorization.
pub fn mobius(mut n: u64) -> i64 {
    assert!(n > 0);
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_small_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &m) in expected.iter().enumerate() {
            assert_eq!(mobius(i as u64 + 1), m, "mu({})", i + 1);
        }
    }

    #[test]
    fn totient_small_values() {
        let expected = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &t) in expected.iter().enumerate() {
            assert_eq!(totient(i as u64 + 1), t);
        }
    }
}
