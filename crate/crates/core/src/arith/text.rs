//! Canonical text form.
//!
//! A polynomial is written as its terms in descending monomial order joined
//! by `" + "`; each term is the coefficient (`p/q` or an integer) followed by
//! `var:exp` pairs, e.g. `1 z:2 + -2 z:1 w:1 + 1 w:2`. The zero polynomial is
//! `0`. A rational function with nontrivial denominator is `(num) / (den)`.

use std::fmt;
use std::str::FromStr;

use super::monomial::{Monomial, Var};
use super::poly::MultiPoly;
use super::ratfun::RationalFunction;
use super::Rational;
use crate::error::{Error, Result};

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", c)?;
            if !m.is_one() {
                write!(f, " {}", m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator().is_one() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "({}) / ({})", self.numerator(), self.denominator())
        }
    }
}

fn parse_term(s: &str) -> Result<(Monomial, Rational)> {
    let mut tokens = s.split_whitespace();
    let coeff = tokens
        .next()
        .ok_or_else(|| Error::Parse(format!("empty term in {s:?}")))?;
    let c = Rational::from_str(coeff)
        .map_err(|_| Error::Parse(format!("bad coefficient {coeff:?}")))?;
    let mut m = Monomial::ONE;
    for tok in tokens {
        let (name, exp) = tok
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad factor {tok:?}")))?;
        let v = Var::from_name(name)
            .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
        let e: u32 = exp
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent {exp:?}")))?;
        if m.exp(v) != 0 {
            return Err(Error::Parse(format!("repeated variable {name:?}")));
        }
        m = m.with_exp(v, e);
    }
    Ok((m, c))
}

/// Parse the canonical polynomial text (term order is not enforced).
pub fn parse_poly(s: &str) -> Result<MultiPoly> {
    let s = s.trim();
    if s == "0" {
        return Ok(MultiPoly::zero());
    }
    let terms = s.split(" + ").map(parse_term).collect::<Result<Vec<_>>>()?;
    Ok(MultiPoly::from_terms(terms))
}

/// Parse `(num) / (den)` or a bare polynomial; the result is re-normalized.
pub fn parse_rational_function(s: &str) -> Result<RationalFunction> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('(') {
        if let Some((num, den)) = rest.split_once(") / (") {
            let den = den
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?;
            return RationalFunction::new(parse_poly(num)?, parse_poly(den)?);
        }
    }
    Ok(RationalFunction::from_poly(parse_poly(s)?))
}
