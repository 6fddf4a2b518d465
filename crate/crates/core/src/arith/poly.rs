use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var, NVARS};
use super::{Integer, Rational};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept sorted by descending monomial (global lex order) with no
/// zero coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(super::rat(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), Rational::one())
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        Self::term(Monomial::var(v, e), Rational::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly {
                terms: vec![(m, c)],
            }
        }
    }

    /// Build from arbitrary terms; duplicates are summed and zeros dropped.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in iter {
            if c.is_zero() {
                continue;
            }
            match map.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        MultiPoly {
            terms: map.into_iter().rev().collect(),
        }
    }

    /// Caller guarantees descending order, unique monomials and nonzero coefficients.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MultiPoly { terms }
    }

    fn from_unsorted_unique(mut terms: Vec<(Monomial, Rational)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Constant value if the polynomial has no variables.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        match self.terms.binary_search_by(|(x, _)| m.cmp(x)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn lead(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn lead_coeff(&self) -> Rational {
        self.terms
            .first()
            .map(|t| t.1.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Bit `i` set iff variable `i` occurs.
    pub fn var_mask(&self) -> u8 {
        let mut mask = 0u8;
        for (m, _) in &self.terms {
            for i in 0..NVARS {
                if m.0[i] > 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.var_mask() & (1 << v.index()) != 0
    }

    /// Componentwise minimum of all exponent vectors.
    pub fn min_monomial(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::ONE;
        };
        it.fold(*first, |acc, (m, _)| acc.gcd(m))
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(x, c)| (x.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(x, d)| (x.mul(m), d * c)).collect(),
        }
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<MultiPoly> {
        let terms = self
            .terms
            .iter()
            .map(|(x, c)| x.div(m).map(|q| (q, c.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(MultiPoly { terms })
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Replace every variable `x` by `x^r`.
    pub fn adams(&self, r: u32) -> MultiPoly {
        if r == 1 {
            return self.clone();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.pow(r), c.clone()))
                .collect(),
        }
    }

    /// Apply an exponent map that must be injective on the support.
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> MultiPoly {
        MultiPoly::from_unsorted_unique(self.terms.iter().map(|(m, c)| (f(m), c.clone())).collect())
    }

    /// Exchange the roles of two variables.
    pub fn swap_vars(&self, a: Var, b: Var) -> MultiPoly {
        self.map_monomials(|m| {
            let mut out = *m;
            out.0.swap(a.index(), b.index());
            out
        })
    }

    /// Rename variable `from` to `to`, scaling exponents by `factor`
    /// (`to` must not already occur).
    pub fn rename_var(&self, from: Var, to: Var, factor: u32) -> MultiPoly {
        self.map_monomials(|m| {
            let e = m.exp(from);
            m.with_exp(from, 0).with_exp(to, m.exp(to) + e * factor)
        })
    }

    /// Coefficients with respect to `v`: entry `i` is the coefficient of `v^i`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MultiPoly> {
        if self.is_zero() {
            return Vec::new();
        }
        let deg = self.degree(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            buckets[e].push((m.with_exp(v, 0), c.clone()));
        }
        // removing one variable keeps relative order within a bucket
        buckets
            .into_iter()
            .map(MultiPoly::from_sorted_unchecked)
            .collect()
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut terms = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            for (m, x) in &c.terms {
                terms.push((m.with_exp(v, m.exp(v) + i as u32), x.clone()));
            }
        }
        MultiPoly::from_terms(terms)
    }

    /// Substitute a polynomial for a variable.
    pub fn substitute_var(&self, v: Var, value: &MultiPoly) -> MultiPoly {
        if !self.contains_var(v) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(v);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Substitute a rational number for a variable.
    pub fn eval_var(&self, v: Var, value: &Rational) -> MultiPoly {
        let mut powers: Vec<Rational> = vec![Rational::one()];
        let deg = self.degree(v) as usize;
        for i in 1..=deg {
            let next = &powers[i - 1] * value;
            powers.push(next);
        }
        MultiPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.with_exp(v, 0), c * &powers[m.exp(v) as usize])),
        )
    }

    /// Evaluate at rational values for every variable that occurs.
    pub fn eval_all(&self, values: &[(Var, Rational)]) -> Rational {
        let mut p = self.clone();
        for (v, x) in values {
            p = p.eval_var(*v, x);
        }
        p.constant_value().expect("not all variables were assigned")
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Positive rational `c` such that `self / c` has coprime integer coefficients.
    pub fn rational_content(&self) -> Rational {
        let mut num = Integer::zero();
        let mut den = Integer::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::new(num, den)
    }

    /// Normalize so the leading coefficient is 1.
    pub fn monic(&self) -> MultiPoly {
        match self.terms.first() {
            None => MultiPoly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Leading coefficient made positive.
    pub fn sign_normalized(&self) -> MultiPoly {
        if self.lead_coeff().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        let (lm, lc) = divisor.terms[0].clone();
        if divisor.terms.len() == 1 {
            let inv = lc.recip();
            let terms = self
                .terms
                .iter()
                .map(|(m, c)| m.div(&lm).map(|q| (q, c * &inv)))
                .collect::<Option<Vec<_>>>()?;
            return Some(MultiPoly { terms });
        }
        for i in 0..NVARS {
            let v = Var::ALL[i];
            if divisor.degree(v) > self.degree(v) {
                return None;
            }
        }
        let lc_inv = lc.recip();
        let mut rem: BTreeMap<Monomial, Rational> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(&lm)?;
            let qc = &c * &lc_inv;
            for (dm, dc) in &divisor.terms[1..] {
                let key = dm.mul(&qm);
                let delta = dc * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            quotient.push((qm, qc));
        }
        Some(MultiPoly { terms: quotient })
    }

    fn add_impl(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        MultiPoly { terms: out }
    }

    fn mul_impl(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(big.len() * 2);
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                let m = m1.mul(m2);
                let prod = c1 * c2;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += prod;
                    }
                }
            }
        }
        MultiPoly::from_unsorted_unique(acc.into_iter().collect())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.mul_impl(rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
