//! Plethystic exponential and logarithm, and Schur functions of product
//! alphabets.

use std::collections::BTreeMap;

use crate::arith::{mobius, rat, AtomProduct, Coeff, FieldCoeff, LaurentMonomial, Rational};
use crate::error::{Error, Result};
use crate::partitions::Partition;

use super::tables::tables;
use super::{accumulate, mul_terms, total_degree, Basis, Key, SymFunc};

impl<C: Coeff> SymFunc<C> {
    fn graded_pieces(&self) -> Vec<BTreeMap<Key, C>> {
        let top = (self.k as u32 * self.trunc) as usize;
        let mut pieces = vec![BTreeMap::new(); top + 1];
        for (key, c) in &self.convert(Basis::P).terms {
            pieces[total_degree(key) as usize].insert(key.clone(), c.clone());
        }
        pieces
    }

    fn from_pieces(&self, pieces: Vec<BTreeMap<Key, C>>) -> Self {
        let mut terms = BTreeMap::new();
        for piece in pieces {
            terms.extend(piece);
        }
        SymFunc {
            k: self.k,
            trunc: self.trunc,
            basis: Basis::P,
            terms,
        }
    }

    /// Ordinary exponential of a function without constant term, graded by
    /// total degree.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let g = self.graded_pieces();
        let top = g.len() - 1;
        let mut e: Vec<BTreeMap<Key, C>> = vec![BTreeMap::new(); top + 1];
        e[0].insert(vec![Partition::empty(); self.k], C::one());
        // d·E_d = Σ_{j=1}^{d} j·G_j·E_{d-j}
        for d in 1..=top {
            let mut acc = BTreeMap::new();
            for j in 1..=d {
                if g[j].is_empty() || e[d - j].is_empty() {
                    continue;
                }
                let scale = Rational::new((j as i64).into(), (d as i64).into());
                for (key, c) in mul_terms(&g[j], &e[d - j], self.trunc) {
                    accumulate(&mut acc, key, c.scale(&scale));
                }
            }
            e[d] = acc;
        }
        Ok(self.from_pieces(e))
    }

    /// Ordinary logarithm of a function with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let f = self.graded_pieces();
        let top = f.len() - 1;
        let mut l: Vec<BTreeMap<Key, C>> = vec![BTreeMap::new(); top + 1];
        // L_d = F_d - (1/d) Σ_{j=1}^{d-1} j·L_j·F_{d-j}
        for d in 1..=top {
            let mut acc = f[d].clone();
            for j in 1..d {
                if l[j].is_empty() || f[d - j].is_empty() {
                    continue;
                }
                let scale = Rational::new((-(j as i64)).into(), (d as i64).into());
                for (key, c) in mul_terms(&l[j], &f[d - j], self.trunc) {
                    accumulate(&mut acc, key, c.scale(&scale));
                }
            }
            l[d] = acc;
        }
        Ok(self.from_pieces(l))
    }

    /// `Exp(F) = exp(Σ_r ψ_r(F)/r)`; parameters count as plethystic variables.
    pub fn plethystic_exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let top = (self.k as u32 * self.trunc).max(1);
        let mut g = SymFunc::zero(self.k, self.trunc, Basis::P);
        for r in 1..=top {
            let term = self
                .adams_truncating(r)
                .scale(&Rational::new(1.into(), (r as i64).into()));
            g = g.add(&term)?;
        }
        g.exp()
    }

    /// `Log(Ω) = Σ_r μ(r)/r · ψ_r(log Ω)`.
    pub fn plethystic_log(&self) -> Result<Self> {
        let l = self.log()?;
        let top = (self.k as u32 * self.trunc).max(1);
        let mut out = SymFunc::zero(self.k, self.trunc, Basis::P);
        for r in 1..=top {
            let m = mobius(r as u64);
            if m != 0 {
                out = out.add(
                    &l.adams_truncating(r)
                        .scale(&Rational::new(m.into(), (r as i64).into())),
                )?;
            }
        }
        Ok(out)
    }
}

/// Values of the power sums `p_r(y)` on a specialized alphabet `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecializedAlphabet<C> {
    power_sums: Vec<C>,
}

impl<C: Coeff> SpecializedAlphabet<C> {
    pub fn from_fn<F: Fn(u32) -> C>(max: u32, f: F) -> Self {
        SpecializedAlphabet {
            power_sums: (1..=max).map(f).collect(),
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.power_sums.len() as u32
    }

    pub fn p(&self, r: u32) -> &C {
        &self.power_sums[r as usize - 1]
    }
}

impl<C: FieldCoeff> SpecializedAlphabet<C> {
    /// `{1, x, x², ...}`: `p_r = 1/(1 - x^r)`.
    pub fn geometric(x: LaurentMonomial, max: u32) -> Self {
        Self::from_fn(max, |r| {
            C::one().mul_atoms(&AtomProduct::one_minus(x.pow(r as i32)).unwrap().inv())
        })
    }

    /// `{1, 1, x², x³, ...}`: `p_r = 2 + x^{2r}/(1 - x^r)`.
    pub fn printed(x: LaurentMonomial, max: u32) -> Self {
        Self::from_fn(max, |r| {
            let tail = AtomProduct::monomial(x.pow(2 * r as i32))
                .div(&AtomProduct::one_minus(x.pow(r as i32)).unwrap());
            C::from_rational(rat(2)).add(&C::one().mul_atoms(&tail))
        })
    }
}

/// `s_λ(x_i · y)` as a function of alphabet `i` in the power-sum basis,
/// via `p_r(x y) = p_r(x) p_r(y)`.
pub fn product_alphabet_schur<C: Coeff>(
    lambda: &Partition,
    y: &SpecializedAlphabet<C>,
    alphabet: usize,
    k: usize,
    trunc: u32,
) -> Result<SymFunc<C>> {
    let n = lambda.size();
    if n > trunc {
        return Err(Error::TruncationOverflow {
            degree: n as usize,
            trunc: trunc as usize,
        });
    }
    let t = tables(n);
    let l = t.idx(lambda);
    let mut f = SymFunc::zero(k, trunc, Basis::P);
    for (r, rho) in t.parts.iter().enumerate() {
        let chi = t.chi[l][r];
        if chi == 0 {
            continue;
        }
        let mut c = C::from_rational(rat(chi) / &t.z[r]);
        for &part in rho.parts() {
            c = c.mul(y.p(part));
        }
        let mut key = vec![Partition::empty(); k];
        key[alphabet] = rho.clone();
        f.add_term(key, c)?;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{CycloFraction, MultiPoly, RationalFunction, Var};
    use crate::symfunc::hall_pairing;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn exp_of_p1_is_complete_sum() {
        let f = SymFunc::<RationalFunction>::single(1, 3, Basis::P, 0, p("1")).unwrap();
        let e = f.plethystic_exp().unwrap().convert(Basis::H);
        let mut expected = SymFunc::one(1, 3, Basis::H);
        for n in 1..=3 {
            expected = expected
                .add(&SymFunc::single(1, 3, Basis::H, 0, Partition::row(n)).unwrap())
                .unwrap();
        }
        assert_eq!(e, expected);
        assert_eq!(expected.plethystic_log().unwrap(), f);
        let zero = SymFunc::<RationalFunction>::zero(1, 3, Basis::P);
        assert_eq!(zero.plethystic_exp().unwrap(), SymFunc::one(1, 3, Basis::P));
    }

    #[test]
    fn log_lowest_degree_is_plain() {
        let c = RationalFunction::from_poly(MultiPoly::var(Var::Z));
        let mut om = SymFunc::one(2, 1, Basis::M);
        om.add_term(vec![p("1"), p("1")], c.clone()).unwrap();
        let l = om.plethystic_log().unwrap().convert(Basis::M);
        assert_eq!(l.coeff(&[p("1"), p("1")]), c);
    }

    #[test]
    fn constant_term_errors() {
        let one = SymFunc::<RationalFunction>::one(1, 2, Basis::P);
        assert_eq!(one.plethystic_exp(), Err(Error::NonzeroConstantTerm));
        let two = one.scale(&rat(2));
        assert_eq!(two.plethystic_log(), Err(Error::ConstantTermNotOne));
    }

    #[test]
    fn product_alphabet_first_cases() {
        let q = LaurentMonomial::var(Var::Q, 1);
        let y = SpecializedAlphabet::<RationalFunction>::geometric(q, 4);
        let one_minus = |e: u32| &MultiPoly::one() - &MultiPoly::var_pow(Var::Q, e);
        let s1 = product_alphabet_schur(&p("1"), &y, 0, 1, 4).unwrap();
        let inv1 = RationalFunction::new(MultiPoly::one(), one_minus(1)).unwrap();
        assert_eq!(s1.coeff(&[p("1")]), inv1);
        let s2 = product_alphabet_schur(&p("2"), &y, 0, 1, 4).unwrap();
        let half = crate::arith::ratio(1, 2);
        let c11 =
            RationalFunction::new(MultiPoly::constant(half.clone()), one_minus(1).pow(2)).unwrap();
        let c2 = RationalFunction::new(MultiPoly::constant(half), one_minus(2)).unwrap();
        assert_eq!(s2.coeff(&[p("1,1")]), c11);
        assert_eq!(s2.coeff(&[p("2")]), c2);
        let h1 = SymFunc::single(1, 4, Basis::H, 0, p("1")).unwrap();
        assert_eq!(hall_pairing(&h1, &s1).unwrap(), inv1);
        // the same through cyclotomic fractions
        let yc = SpecializedAlphabet::<CycloFraction>::geometric(q, 4);
        let s2c = product_alphabet_schur(&p("2"), &yc, 0, 1, 4).unwrap();
        assert_eq!(
            s2c.coeff(&[p("2")]).to_rational_function(),
            s2.coeff(&[p("2")])
        );
    }

    #[test]
    fn printed_alphabet_differs_at_degree_one() {
        let q = LaurentMonomial::var(Var::Q, 1);
        let geo = SpecializedAlphabet::<RationalFunction>::geometric(q, 2);
        let printed = SpecializedAlphabet::<RationalFunction>::printed(q, 2);
        assert_ne!(geo.p(1), printed.p(1));
        // 2 + q^2/(1-q) = (2 - 2q + q^2)/(1-q)
        let num = MultiPoly::from_terms(vec![
            (crate::arith::Monomial::ONE, rat(2)),
            (crate::arith::Monomial::var(Var::Q, 1), rat(-2)),
            (crate::arith::Monomial::var(Var::Q, 2), rat(1)),
        ]);
        let expected =
            RationalFunction::new(num, &MultiPoly::one() - &MultiPoly::var(Var::Q)).unwrap();
        assert_eq!(printed.p(1), &expected);
    }
}
