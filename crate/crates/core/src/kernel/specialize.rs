//! E-polynomials, Kac polynomials and conjectural mixed Hodge polynomials
//! read off from `ℍ_μ`. Square roots of `q` are tracked as powers of `s`
//! and folded back into `q` with a parity check.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::{hlv_polynomial, HLVResult};
use crate::arith::{rat, Monomial, MultiPoly, Rational, Var};
use crate::error::{Error, Result};
use crate::partitions::MultiPartition;

/// Push `c z^a w^b` to `c·sign · q^{s_exp/2} t^{t_exp}` for each term.
fn specialize<F>(h: &HLVResult, what: &str, f: F) -> Result<MultiPoly>
where
    F: Fn(u32, u32) -> Option<(bool, i64, i64)>,
{
    let p = h.polynomial()?;
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        let Some((negate, s_exp, t_exp)) = f(m.exp(Var::Z), m.exp(Var::W)) else {
            continue;
        };
        if s_exp % 2 != 0 {
            return Err(Error::ParityViolation(format!(
                "{what} of H_{} (g={}): odd power s^{s_exp}",
                h.mu, h.g
            )));
        }
        if s_exp < 0 || t_exp < 0 {
            return Err(Error::NotPolynomial(format!(
                "{what} of H_{} (g={}) has negative powers",
                h.mu, h.g
            )));
        }
        let mono = Monomial::from_pairs(&[(Var::Q, (s_exp / 2) as u32), (Var::T, t_exp as u32)]);
        terms.push((mono, if negate { -c.clone() } else { c.clone() }));
    }
    Ok(MultiPoly::from_terms(terms))
}

fn require_integral(p: &MultiPoly, what: &str, h: &HLVResult) -> Result<()> {
    if p.is_integral() {
        Ok(())
    } else {
        Err(Error::NonIntegerCoefficient(format!(
            "{what} of H_{} (g={}): {p}",
            h.mu, h.g
        )))
    }
}

impl HLVResult {
    /// `E(q) = q^{d_μ/2} ℍ_μ(1/√q, √q)`.
    pub fn e_polynomial(&self) -> Result<MultiPoly> {
        let d = self.d_mu;
        let e = specialize(self, "E-polynomial", |a, b| {
            Some((false, d - a as i64 + b as i64, 0))
        })?;
        require_integral(&e, "E-polynomial", self)?;
        Ok(e)
    }

    /// `A_μ(q) = ℍ_μ(0, √q)`.
    pub fn kac_polynomial(&self) -> Result<MultiPoly> {
        let a = specialize(self, "Kac polynomial", |a, b| {
            (a == 0).then_some((false, b as i64, 0))
        })?;
        require_integral(&a, "Kac polynomial", self)?;
        Ok(a)
    }

    /// `(t√q)^{d_μ} ℍ_μ(-1/√q, t√q)`, checked against the E-polynomial at `t = -1`.
    pub fn conjectural_mhp(&self) -> Result<MultiPoly> {
        let d = self.d_mu;
        let h = specialize(self, "mixed Hodge polynomial", |a, b| {
            Some((a % 2 == 1, d - a as i64 + b as i64, b as i64 + d))
        })?;
        require_integral(&h, "mixed Hodge polynomial", self)?;
        if h.eval_var(Var::T, &rat(-1)) != self.e_polynomial()? {
            return Err(Error::InternalInconsistency(format!(
                "mixed Hodge polynomial of H_{} (g={}) does not specialize to E at t=-1",
                self.mu, self.g
            )));
        }
        Ok(h)
    }
}

pub fn e_polynomial(mu: &MultiPartition, g: u32) -> Result<MultiPoly> {
    hlv_polynomial(mu, g)?.e_polynomial()
}

pub fn kac_polynomial(mu: &MultiPartition, g: u32) -> Result<MultiPoly> {
    hlv_polynomial(mu, g)?.kac_polynomial()
}

pub fn conjectural_mhp(mu: &MultiPartition, g: u32) -> Result<MultiPoly> {
    hlv_polynomial(mu, g)?.conjectural_mhp()
}

/// `q^d E(1/q) = E(q)`.
pub fn is_palindromic(e: &MultiPoly, d: i64) -> bool {
    let mut mirrored = Vec::new();
    for (m, c) in e.terms() {
        let i = m.exp(Var::Q) as i64;
        if i > d || m.exp(Var::T) != 0 {
            return false;
        }
        mirrored.push((Monomial::var(Var::Q, (d - i) as u32), c.clone()));
    }
    MultiPoly::from_terms(mirrored) == *e
}

/// All coefficients are non-negative integers.
pub fn has_nonnegative_integer_coeffs(p: &MultiPoly) -> bool {
    p.terms()
        .iter()
        .all(|(_, c)| c.is_integer() && !c.is_negative())
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualityReport {
    pub holds: bool,
    /// First monomial `(q, t)` exponent where the two sides differ.
    pub mismatch: Option<(i64, i64)>,
}

/// Checks `H(1/(qt²), t) = (qt)^{-d} H(q, t)` after multiplying both sides by `(qt)^d`.
pub fn curious_duality_check(mhp: &MultiPoly, d: i64) -> DualityReport {
    let mut lhs: BTreeMap<(i64, i64), Rational> = BTreeMap::new();
    let mut rhs: BTreeMap<(i64, i64), Rational> = BTreeMap::new();
    for (m, c) in mhp.terms() {
        let (i, j) = (m.exp(Var::Q) as i64, m.exp(Var::T) as i64);
        lhs.insert((d - i, d + j - 2 * i), c.clone());
        rhs.insert((i, j), c.clone());
    }
    let mismatch = lhs
        .keys()
        .chain(rhs.keys())
        .find(|k| lhs.get(k) != rhs.get(k))
        .copied();
    DualityReport {
        holds: mismatch.is_none(),
        mismatch,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConnectednessReport {
    pub lowest_exponent: u32,
    pub coefficient: Rational,
}

impl ConnectednessReport {
    /// The lowest term is the constant `1`.
    pub fn holds(&self) -> bool {
        self.lowest_exponent == 0 && self.coefficient.is_one()
    }
}

/// Lowest power of `q` in the E-polynomial and its coefficient; `None` for `E = 0`.
pub fn connectedness_report(e: &MultiPoly) -> Option<ConnectednessReport> {
    let (m, c) = e.terms().last()?;
    debug_assert!(!c.is_zero());
    Some(ConnectednessReport {
        lowest_exponent: m.exp(Var::Q),
        coefficient: c.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;

    fn mp(s: &str) -> MultiPartition {
        s.parse().unwrap()
    }

    #[test]
    fn one_point_examples() {
        assert_eq!(
            e_polynomial(&mp("1"), 1).unwrap(),
            parse_poly("1 q:2 + -2 q:1 + 1").unwrap()
        );
        assert_eq!(
            e_polynomial(&mp("1|1|1"), 2).unwrap(),
            parse_poly("1 q:1 + -1").unwrap().pow(4)
        );
        assert_eq!(
            e_polynomial(&mp("1,1|1,1|1,1"), 0).unwrap(),
            MultiPoly::one()
        );
        assert_eq!(kac_polynomial(&mp("1"), 1).unwrap(), MultiPoly::var(Var::Q));
        assert_eq!(kac_polynomial(&mp("2"), 1).unwrap(), MultiPoly::var(Var::Q));
        assert_eq!(
            kac_polynomial(&mp("1"), 2).unwrap(),
            parse_poly("1 q:2").unwrap()
        );
        let mhp = conjectural_mhp(&mp("1"), 1).unwrap();
        assert_eq!(mhp, parse_poly("1 q:1 t:2 + 1 t:1").unwrap().pow(2));
        assert_eq!(conjectural_mhp(&mp("1"), 0).unwrap(), MultiPoly::one());
    }

    #[test]
    fn reports() {
        let e = e_polynomial(&mp("1"), 2).unwrap();
        assert!(is_palindromic(&e, 4));
        assert!(!is_palindromic(&e, 5));
        let c = connectedness_report(&e).unwrap();
        assert!(c.holds());
        let mhp = conjectural_mhp(&mp("1"), 1).unwrap();
        assert!(curious_duality_check(&mhp, 2).holds);
        assert!(!curious_duality_check(&mhp, 3).holds);
        assert!(curious_duality_check(&MultiPoly::one(), 0).holds);
        assert!(has_nonnegative_integer_coeffs(&mhp));
        assert!(!has_nonnegative_integer_coeffs(&e));
    }

    #[test]
    fn two_by_two_loop() {
        let e = e_polynomial(&mp("1,1"), 1).unwrap();
        assert_eq!(e.constant_term(), rat(1));
    }
}
