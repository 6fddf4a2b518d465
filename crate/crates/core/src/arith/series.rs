use super::coeff::Coeff;
use super::monomial::Var;
use super::poly::MultiPoly;
use super::ratfun::RationalFunction;
use super::{mobius, rat, Rational};
use crate::error::{Error, Result};

/// Power series in one variable truncated after `var^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C> {
    var: Var,
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn new(var: Var, mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncatedSeries { var, coeffs }
    }

    pub fn zero(var: Var, order: usize) -> Self {
        Self::new(var, Vec::new(), order)
    }

    pub fn one(var: Var, order: usize) -> Self {
        Self::constant(var, C::one(), order)
    }

    pub fn constant(var: Var, c: C, order: usize) -> Self {
        Self::new(var, vec![c], order)
    }

    /// `c · var^k`.
    pub fn monomial(var: Var, c: C, k: usize, order: usize) -> Self {
        let mut s = Self::zero(var, order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, i: usize, c: C) {
        self.coeffs[i] = c;
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TruncatedSeries {
            var: self.var,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.var, other.var, "series in different variables");
        assert_eq!(self.order(), other.order(), "series of different orders");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        TruncatedSeries {
            var: self.var,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.sub(b))
            .collect();
        TruncatedSeries {
            var: self.var,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            var: self.var,
            coeffs: self.coeffs.iter().map(C::neg).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        TruncatedSeries {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        TruncatedSeries {
            var: self.var,
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        TruncatedSeries {
            var: self.var,
            coeffs: out,
        }
    }

    /// Inverse of a series with constant term 1.
    pub fn inverse_unit(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        out[0] = C::one();
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc.add(&self.coeffs[j].mul(&out[k - j]));
                }
            }
            out[k] = acc.neg();
        }
        Ok(TruncatedSeries {
            var: self.var,
            coeffs: out,
        })
    }

    /// Substitute `var ↦ var^r` and raise every variable in the
    /// coefficients to the `r`-th power.
    pub fn adams(&self, r: usize) -> Self {
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * r <= n {
                out[i * r] = c.adams(r as u32);
            }
        }
        TruncatedSeries {
            var: self.var,
            coeffs: out,
        }
    }

    /// `exp` of a series without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        out[0] = C::one();
        // k·E_k = Σ_{j=1}^{k} j·F_j·E_{k-j}
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc.add(&self.coeffs[j].mul(&out[k - j]).scale(&rat(j as i64)));
                }
            }
            out[k] = acc.scale(&Rational::new(1.into(), (k as i64).into()));
        }
        Ok(TruncatedSeries {
            var: self.var,
            coeffs: out,
        })
    }

    /// `log` of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        // k·L_k = k·F_k − Σ_{j=1}^{k-1} j·L_j·F_{k-j}
        for k in 1..=n {
            let mut acc = self.coeffs[k].scale(&rat(k as i64));
            for j in 1..k {
                if !out[j].is_zero() && !self.coeffs[k - j].is_zero() {
                    acc = acc.sub(&out[j].mul(&self.coeffs[k - j]).scale(&rat(j as i64)));
                }
            }
            out[k] = acc.scale(&Rational::new(1.into(), (k as i64).into()));
        }
        Ok(TruncatedSeries {
            var: self.var,
            coeffs: out,
        })
    }

    /// Plethystic exponential `exp(Σ_r ψ_r(F)/r)` of a series without
    /// constant term; the series variable counts as a plethystic variable.
    pub fn plethystic_exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut acc = Self::zero(self.var, n);
        for r in 1..=n.max(1) {
            acc = acc.add(
                &self
                    .adams(r)
                    .scale(&Rational::new(1.into(), (r as i64).into())),
            );
        }
        acc.exp()
    }

    /// Inverse of [`plethystic_exp`](Self::plethystic_exp).
    pub fn plethystic_log(&self) -> Result<Self> {
        let l = self.log()?;
        let n = self.order();
        let mut acc = Self::zero(self.var, n);
        for r in 1..=n.max(1) {
            let m = mobius(r as u64);
            if m != 0 {
                acc = acc.add(
                    &l.adams(r)
                        .scale(&Rational::new(m.into(), (r as i64).into())),
                );
            }
        }
        Ok(acc)
    }
}

/// Expand `f` as a power series in `var` through `var^order`.
pub fn rf_series_expand(
    f: &RationalFunction,
    var: Var,
    order: usize,
) -> Result<TruncatedSeries<RationalFunction>> {
    let num = f.numerator().coeffs_in(var);
    let den = f.denominator().coeffs_in(var);
    let c0 = den.first().cloned().unwrap_or_else(MultiPoly::zero);
    if c0.is_zero() {
        return Err(Error::NotExpandable);
    }
    let inv0 = RationalFunction::new(MultiPoly::one(), c0)?;
    let get = |v: &[MultiPoly], i: usize| v.get(i).cloned().unwrap_or_else(MultiPoly::zero);
    let mut out: Vec<RationalFunction> = Vec::with_capacity(order + 1);
    // C_k = (N_k − Σ_{j≥1} D_j C_{k−j}) / D_0
    for k in 0..=order {
        let mut acc = RationalFunction::from_poly(get(&num, k));
        for j in 1..=k.min(den.len().saturating_sub(1)) {
            let dj = &den[j];
            if !dj.is_zero() {
                acc = &acc - &(&RationalFunction::from_poly(dj.clone()) * &out[k - j]);
            }
        }
        out.push(&acc * &inv0);
    }
    Ok(TruncatedSeries::new(var, out, order))
}

impl<C: Coeff> TruncatedSeries<C> {
    /// True if every coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }
}
