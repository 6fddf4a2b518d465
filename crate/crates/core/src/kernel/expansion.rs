//! The expansion of `Σ_μ qℍ_μ(√q,1/√q)/(q-1)² m_μ` as a plethystic
//! logarithm over Schur functions of `x_i·y`, and the lowest `q`-powers of
//! its individual summands.
//!
//! Everything here is in the variable `s` with `q = s²`.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::Kernel;
use crate::arith::{
    rat, AtomProduct, Coeff, CycloFraction, FieldCoeff, LaurentMonomial, Monomial, MonomialMap,
    MultiPoly, Rational, RationalFunction, Var,
};
use crate::error::{Error, Result};
use crate::macdonald::hook_term_atoms;
use crate::partitions::{
    dimension_d_mu, enumerate_multipartitions, enumerate_partitions, hook_polynomial_factored,
    MultiPartition, Partition,
};
use crate::symfunc::tables::tables;
use crate::symfunc::{product_alphabet_schur, SpecializedAlphabet};
use crate::symfunc::{Basis, SymFunc};

/// Which specialization of the auxiliary alphabet `y` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum YConvention {
    /// `y = {1, q, q², ...}`.
    Geometric,
    /// `y = {1, 1, q², q³, ...}`.
    Printed,
}

impl YConvention {
    pub fn alphabet(self, max: u32) -> SpecializedAlphabet<CycloFraction> {
        let q = LaurentMonomial::var(Var::S, 2);
        match self {
            YConvention::Geometric => SpecializedAlphabet::geometric(q, max),
            YConvention::Printed => SpecializedAlphabet::printed(q, max),
        }
    }
}

impl fmt::Display for YConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            YConvention::Geometric => "geometric",
            YConvention::Printed => "printed",
        })
    }
}

impl FromStr for YConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "geometric" => Ok(YConvention::Geometric),
            "printed" => Ok(YConvention::Printed),
            _ => Err(Error::Parse(format!("unknown y convention '{s}'"))),
        }
    }
}

fn sqrt_q_map() -> MonomialMap {
    MonomialMap::identity()
        .with(Var::Z, LaurentMonomial::var(Var::S, 1))
        .with(Var::W, LaurentMonomial::var(Var::S, -1))
}

/// `𝓗_λ(√q, 1/√q) (q^{-n(λ)} H_λ(q))^k`.
fn hook_prefactor(lambda: &Partition, g: u32, k: usize) -> Result<AtomProduct> {
    let hook = hook_term_atoms(lambda, g).map_monomials(&sqrt_q_map())?;
    let local = AtomProduct::monomial(LaurentMonomial::var(Var::S, -2 * lambda.n() as i32))
        .mul(&hook_polynomial_factored(lambda, Var::S, 2));
    Ok(hook.mul(&local.pow(k as i32)))
}

/// `⟨h_μ, s_λ(x·y)⟩`.
fn schur_pairing(
    lambda: &Partition,
    mu: &Partition,
    y: &SpecializedAlphabet<CycloFraction>,
) -> CycloFraction {
    let t = tables(lambda.size());
    let l = t.idx(lambda);
    let m = t.idx(mu);
    let mut acc = CycloFraction::zero();
    for (r, rho) in t.parts.iter().enumerate() {
        let c = t.chi[l][r] * t.p_to_m[r][m];
        if c == 0 {
            continue;
        }
        let mut term = CycloFraction::from_rational(rat(c) / &t.z[r]);
        for &part in rho.parts() {
            term = term.mul(y.p(part));
        }
        acc = acc.add(&term);
    }
    acc
}

fn halve_s(p: &MultiPoly) -> Option<MultiPoly> {
    if p.terms().iter().any(|(m, _)| m.exp(Var::S) % 2 != 0) {
        return None;
    }
    Some(p.map_monomials(|m| {
        m.with_exp(Var::S, 0)
            .mul(&Monomial::var(Var::Q, m.exp(Var::S) / 2))
    }))
}

/// One summand `𝓐_λ(q)` and its lowest power of `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ALambda {
    pub lambda: Partition,
    /// `𝓐_λ` as a rational function of `q`.
    pub series: RationalFunction,
    /// Lowest power of `q` in the Laurent expansion at `q = 0`.
    pub v: i64,
    pub leading: Rational,
}

fn a_lambda_value(
    lambda: &Partition,
    mu: &MultiPartition,
    g: u32,
    y: &SpecializedAlphabet<CycloFraction>,
) -> Result<CycloFraction> {
    let mut value = CycloFraction::one().mul_atoms(&hook_prefactor(lambda, g, mu.k())?);
    for part in mu.components() {
        value = value.mul(&schur_pairing(lambda, part, y));
    }
    Ok(value)
}

/// `𝓐_λ(q)` for `λ ⊢ n`, where `n` is the size of the components of `μ`.
/// Returns `None` if the summand vanishes.
pub fn a_lambda_series(
    lambda: &Partition,
    mu: &MultiPartition,
    g: u32,
    convention: YConvention,
) -> Result<Option<ALambda>> {
    if lambda.size() != mu.size() {
        return Err(Error::InvalidArgument(format!(
            "|{lambda}| differs from the size of {mu}"
        )));
    }
    let y = convention.alphabet(lambda.size().max(1));
    let value = a_lambda_value(lambda, mu, g, &y)?;
    if value.is_zero() {
        return Ok(None);
    }
    let (exp, leading) = value.lowest_term(Var::S)?;
    if exp % 2 != 0 {
        return Err(Error::ParityViolation(format!(
            "A_{lambda} has lowest power s^{exp}"
        )));
    }
    let rf = value.to_rational_function();
    let (num, den) = (halve_s(rf.numerator()), halve_s(rf.denominator()));
    let series = match (num, den) {
        (Some(n), Some(d)) => RationalFunction::new(n, d)?,
        _ => {
            return Err(Error::ParityViolation(format!(
                "A_{lambda} is not a function of q"
            )))
        }
    };
    Ok(Some(ALambda {
        lambda: lambda.clone(),
        series,
        v: exp / 2,
        leading,
    }))
}

/// Minimizers of the lowest `q`-power over all `λ ⊢ n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ValuationSweep {
    pub mu: MultiPartition,
    pub g: u32,
    pub d_mu: i64,
    pub entries: Vec<ALambda>,
    pub minimizers: Vec<Partition>,
    pub v_min: i64,
    /// `None` when no prediction applies (`g = 0`).
    pub holds: Option<bool>,
}

/// Checks that the minimum of `v(λ)` is attained only at `λ = (1ⁿ)`, with
/// value `1 - d_μ/2` and leading coefficient 1. No verdict for `g = 0`.
pub fn valuation_sweep(
    mu: &MultiPartition,
    g: u32,
    convention: YConvention,
) -> Result<ValuationSweep> {
    let n = mu.size();
    let mut entries = Vec::new();
    for lambda in enumerate_partitions(n) {
        if let Some(a) = a_lambda_series(&lambda, mu, g, convention)? {
            entries.push(a);
        }
    }
    let v_min = entries
        .iter()
        .map(|a| a.v)
        .min()
        .ok_or_else(|| Error::InvalidArgument("all summands vanish".into()))?;
    let minimizers: Vec<Partition> = entries
        .iter()
        .filter(|a| a.v == v_min)
        .map(|a| a.lambda.clone())
        .collect();
    let d_mu = dimension_d_mu(mu, g);
    let holds = (g > 0).then(|| {
        let column = Partition::column(n);
        minimizers == [column.clone()]
            && 2 * v_min == 2 - d_mu
            && entries
                .iter()
                .any(|a| a.lambda == column && a.leading.is_one())
    });
    Ok(ValuationSweep {
        mu: mu.clone(),
        g,
        d_mu,
        entries,
        minimizers,
        v_min,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionEntry {
    pub mu: MultiPartition,
    pub lhs: RationalFunction,
    pub rhs: RationalFunction,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionReport {
    pub g: u32,
    pub k: usize,
    pub n_max: u32,
    pub convention: YConvention,
    pub entries: Vec<ExpansionEntry>,
}

impl ExpansionReport {
    pub fn all_equal(&self) -> bool {
        self.entries.iter().all(|e| e.equal)
    }

    pub fn first_mismatch(&self) -> Option<&ExpansionEntry> {
        self.entries.iter().find(|e| !e.equal)
    }
}

/// Right side: `Log(Σ_λ 𝓗_λ(√q,1/√q)(q^{-n(λ)}H_λ(q))^k Π_i s_λ(x_i y))`,
/// computed with the generic symmetric-function logarithm.
fn expansion_rhs(
    g: u32,
    k: usize,
    n_max: u32,
    convention: YConvention,
) -> Result<SymFunc<CycloFraction>> {
    let y = convention.alphabet(n_max);
    let mut omega = SymFunc::one(k, n_max, Basis::P);
    for n in 1..=n_max {
        for lambda in enumerate_partitions(n) {
            let mut term = SymFunc::constant(
                k,
                n_max,
                Basis::P,
                CycloFraction::one().mul_atoms(&hook_prefactor(&lambda, g, k)?),
            );
            for i in 0..k {
                term = term.mul(&product_alphabet_schur(&lambda, &y, i, k, n_max)?)?;
            }
            omega = omega.add(&term)?;
        }
    }
    Ok(omega.plethystic_log()?.convert(Basis::M))
}

/// Compares both sides at every `m_μ` with `1 ≤ |μ| ≤ n_max`. The left side
/// comes from the kernel engine, the right side from an independent
/// symmetric-function computation.
pub fn expansion_lemma_check(
    g: u32,
    k: usize,
    n_max: u32,
    convention: YConvention,
) -> Result<ExpansionReport> {
    let kernel = Kernel::new(g, k, n_max)?;
    let rhs = expansion_rhs(g, k, n_max, convention)?;
    let s = LaurentMonomial::var(Var::S, 1);
    let scale = AtomProduct::monomial(s.pow(2)).div(&AtomProduct::one_minus(s.pow(2))?.pow(2));
    let mut entries = Vec::new();
    for n in 1..=n_max {
        for mu in enumerate_multipartitions(n, k) {
            let h = kernel.hlv(&mu)?;
            let h = h.polynomial()?;
            let lhs = CycloFraction::from_poly(h)
                .map_monomials(&sqrt_q_map())?
                .mul_atoms(&scale);
            let r = rhs.coeff(mu.components());
            entries.push(ExpansionEntry {
                equal: lhs == r,
                lhs: lhs.to_rational_function(),
                rhs: r.to_rational_function(),
                mu,
            });
        }
    }
    Ok(ExpansionReport {
        g,
        k,
        n_max,
        convention,
        entries,
    })
}
