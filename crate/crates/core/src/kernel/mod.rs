//! The Cauchy function `Ω(z,w)`, the kernel `ℍ_μ(z,w)` and its
//! specializations.
//!
//! `Log Ω` is only ever needed at one monomial `m_μ`, so it is computed
//! coefficientwise: monomial coefficients of a product obey
//! `[x^α](fg) = Σ_{β≤α} f[β] g[α-β]`, and the ordinary logarithm satisfies
//! `d·Ω[α] = Σ_β |β| L[β] Ω[α-β]`. Every coefficient only depends on the
//! sorted shapes of its exponent vectors, which keeps the memo small.

mod expansion;
mod specialize;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::arith::{
    mobius, rat, AtomProduct, Coeff, CycloFraction, FieldCoeff, LaurentMonomial, MultiPoly,
    RationalFunction, Var,
};
use crate::error::{Error, Result};
use crate::macdonald::{hook_term_atoms, HtildeSource, MemoryStore};
use crate::partitions::{dimension_d_mu, enumerate_partitions, MultiPartition, Partition};
use crate::symfunc::{Basis, SymFunc};

pub use expansion::{
    a_lambda_series, expansion_lemma_check, valuation_sweep, ALambda, ExpansionEntry,
    ExpansionReport, ValuationSweep, YConvention,
};
pub use specialize::{
    conjectural_mhp, connectedness_report, curious_duality_check, e_polynomial,
    has_nonnegative_integer_coeffs, is_palindromic, kac_polynomial, ConnectednessReport,
    DualityReport,
};

/// One summand of `Ω`: the deformed hook term and, for each alphabet,
/// `H̃_λ(x_i; z², w²)` in the monomial basis.
#[derive(Clone, Debug)]
pub struct KernelTerm {
    pub hook: AtomProduct,
    pub htilde: Vec<Arc<SymFunc<MultiPoly>>>,
}

impl KernelTerm {
    pub fn hook_rational(&self) -> RationalFunction {
        self.hook.to_rational_function()
    }
}

/// `Ω(z,w)` truncated to partitions of size at most `n_max`.
#[derive(Clone, Debug)]
pub struct KernelSeries {
    pub g: u32,
    pub k: usize,
    pub n_max: u32,
    pub terms: BTreeMap<Partition, KernelTerm>,
}

/// `H̃_λ(x; q, t)` with `(q, t) ↦ (z², w²)`, in the monomial basis.
fn htilde_zw(lambda: &Partition, source: &dyn HtildeSource) -> Result<SymFunc<MultiPoly>> {
    let h = source.htilde(lambda, Basis::M)?;
    Ok(h.expansion.map_into(|c| {
        c.rename_var(Var::Q, Var::Z, 2)
            .rename_var(Var::T, Var::W, 2)
    }))
}

/// The Cauchy function with Macdonald polynomials drawn from `source`.
pub fn cauchy_series_with(
    g: u32,
    k: usize,
    n_max: u32,
    source: &dyn HtildeSource,
) -> Result<KernelSeries> {
    if n_max == 0 || k == 0 {
        return Err(Error::InvalidArgument(
            "cauchy_series needs n_max ≥ 1 and k ≥ 1".into(),
        ));
    }
    let mut terms = BTreeMap::new();
    for n in 0..=n_max {
        for lambda in enumerate_partitions(n) {
            let h = Arc::new(htilde_zw(&lambda, source)?);
            let term = KernelTerm {
                hook: hook_term_atoms(&lambda, g),
                htilde: vec![h; k],
            };
            terms.insert(lambda, term);
        }
    }
    Ok(KernelSeries { g, k, n_max, terms })
}

/// The Cauchy function, using the process-wide Macdonald store.
pub fn cauchy_series(g: u32, k: usize, n_max: u32) -> Result<KernelSeries> {
    cauchy_series_with(g, k, n_max, MemoryStore::global())
}

/// `ℍ_μ(z,w)` together with `d_μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct HLVResult {
    pub mu: MultiPartition,
    pub g: u32,
    pub d_mu: i64,
    /// The kernel when it is a polynomial; otherwise the numerator of its
    /// reduced form.
    pub hlv: MultiPoly,
    pub is_polynomial: bool,
    /// Reduced rational function when `ℍ_μ` failed to be a polynomial.
    pub witness: Option<RationalFunction>,
}

impl HLVResult {
    /// The kernel polynomial, or an error if it is not a polynomial.
    pub fn polynomial(&self) -> Result<&MultiPoly> {
        if self.is_polynomial {
            Ok(&self.hlv)
        } else {
            Err(Error::NotPolynomial(format!(
                "H_{} for g={} is {}",
                self.mu,
                self.g,
                self.witness
                    .as_ref()
                    .map(|w| w.to_string())
                    .unwrap_or_default()
            )))
        }
    }
}

impl fmt::Display for HLVResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Some(w) => write!(f, "{w}"),
            None => write!(f, "{}", self.hlv),
        }
    }
}

type Key = Vec<Partition>;

/// Memoized coefficient extraction from `Log Ω` for fixed `g` and `k`.
pub struct Kernel {
    series: KernelSeries,
    omega: Mutex<HashMap<Key, CycloFraction>>,
    log: Mutex<HashMap<Key, CycloFraction>>,
}

fn sorted_key(parts: &[Partition]) -> Key {
    let mut v = parts.to_vec();
    v.sort();
    v
}

/// Distinct `(β, α-β)` shape pairs for `β ≤ α` componentwise, grouped by `|β|`.
fn splits(alpha: &Partition) -> Vec<BTreeMap<(Partition, Partition), u64>> {
    let parts = alpha.parts();
    let mut out = vec![BTreeMap::new(); alpha.size() as usize + 1];
    let mut beta = vec![0u32; parts.len()];
    loop {
        let size: u32 = beta.iter().sum();
        let rest: Vec<u32> = parts.iter().zip(&beta).map(|(a, b)| a - b).collect();
        let key = (
            Partition::from_unsorted(beta.clone()),
            Partition::from_unsorted(rest),
        );
        *out[size as usize].entry(key).or_insert(0) += 1;
        let mut i = 0;
        while i < parts.len() && beta[i] == parts[i] {
            beta[i] = 0;
            i += 1;
        }
        if i == parts.len() {
            break;
        }
        beta[i] += 1;
    }
    out
}

impl Kernel {
    pub fn new(g: u32, k: usize, n_max: u32) -> Result<Self> {
        Ok(Self::from_series(cauchy_series(g, k, n_max)?))
    }

    pub fn with_source(g: u32, k: usize, n_max: u32, source: &dyn HtildeSource) -> Result<Self> {
        Ok(Self::from_series(cauchy_series_with(g, k, n_max, source)?))
    }

    pub fn from_series(series: KernelSeries) -> Self {
        Kernel {
            series,
            omega: Mutex::new(HashMap::new()),
            log: Mutex::new(HashMap::new()),
        }
    }

    pub fn series(&self) -> &KernelSeries {
        &self.series
    }

    pub fn g(&self) -> u32 {
        self.series.g
    }

    pub fn k(&self) -> usize {
        self.series.k
    }

    fn check_key(&self, key: &[Partition]) -> Result<u32> {
        if key.len() != self.series.k {
            return Err(Error::Incompatible(format!(
                "expected {} components, got {}",
                self.series.k,
                key.len()
            )));
        }
        let d = key[0].size();
        if key.iter().any(|p| p.size() != d) {
            return Err(Error::InvalidArgument(
                "components of different sizes".into(),
            ));
        }
        if d > self.series.n_max {
            return Err(Error::TruncationOverflow {
                degree: d as usize,
                trunc: self.series.n_max as usize,
            });
        }
        Ok(d)
    }

    /// `[m_{ν¹}(x_1) ⋯ m_{νᵏ}(x_k)] Ω` for a sorted key of equal-size partitions.
    fn omega_coeff(&self, key: &[Partition]) -> CycloFraction {
        if let Some(c) = self.omega.lock().unwrap().get(key) {
            return c.clone();
        }
        let d = key[0].size();
        let mut acc = CycloFraction::zero();
        for lambda in enumerate_partitions(d) {
            let term = &self.series.terms[&lambda];
            let mut prod = MultiPoly::one();
            for (nu, h) in key.iter().zip(&term.htilde) {
                prod = &prod * &h.coeff(std::slice::from_ref(nu));
                if prod.is_zero() {
                    break;
                }
            }
            if !prod.is_zero() {
                acc = acc.add(&CycloFraction::from_poly(&prod).mul_atoms(&term.hook));
            }
        }
        self.omega.lock().unwrap().insert(key.to_vec(), acc.clone());
        acc
    }

    /// Coefficient of the ordinary logarithm `log Ω`.
    fn log_coeff(&self, key: &[Partition]) -> CycloFraction {
        if let Some(c) = self.log.lock().unwrap().get(key) {
            return c.clone();
        }
        let d = key[0].size();
        let per_alphabet: Vec<_> = key.iter().map(splits).collect();
        // pairs[L-key][Ω-key] = multiplicity, for each |β| in 1..d
        let mut total = CycloFraction::zero();
        for j in 1..d {
            let mut pairs: BTreeMap<Key, BTreeMap<Key, u64>> = BTreeMap::new();
            let lists: Vec<Vec<(&(Partition, Partition), &u64)>> = per_alphabet
                .iter()
                .map(|s| s[j as usize].iter().collect())
                .collect();
            let mut idx = vec![0usize; lists.len()];
            'outer: loop {
                let mut betas = Vec::with_capacity(lists.len());
                let mut rests = Vec::with_capacity(lists.len());
                let mut mult = 1u64;
                for (l, &i) in lists.iter().zip(&idx) {
                    let ((b, r), c) = l[i];
                    betas.push(b.clone());
                    rests.push(r.clone());
                    mult *= c;
                }
                *pairs
                    .entry(sorted_key(&betas))
                    .or_default()
                    .entry(sorted_key(&rests))
                    .or_insert(0) += mult;
                let mut a = 0;
                loop {
                    idx[a] += 1;
                    if idx[a] < lists[a].len() {
                        break;
                    }
                    idx[a] = 0;
                    a += 1;
                    if a == lists.len() {
                        break 'outer;
                    }
                }
            }
            for (lkey, fs) in pairs {
                let mut fsum = CycloFraction::zero();
                for (fkey, mult) in fs {
                    fsum = fsum.add(&self.omega_coeff(&fkey).scale(&rat(mult as i64)));
                }
                if fsum.is_zero() {
                    continue;
                }
                let l = self.log_coeff(&lkey);
                if l.is_zero() {
                    continue;
                }
                total = total.add(&l.mul(&fsum).scale(&rat(j as i64)));
            }
        }
        let value = self
            .omega_coeff(key)
            .sub(&total.scale(&(rat(1) / rat(d as i64))));
        self.log.lock().unwrap().insert(key.to_vec(), value.clone());
        value
    }

    /// `⟨Log Ω, h_{ν¹} ⋯ h_{νᵏ}⟩`, the plethystic logarithm's monomial coefficient.
    pub fn log_omega_coeff(&self, key: &[Partition]) -> Result<CycloFraction> {
        let d = self.check_key(key)?;
        if d == 0 {
            return Ok(CycloFraction::zero());
        }
        let key = sorted_key(key);
        let gcd = key
            .iter()
            .map(|p| p.gcd_of_parts())
            .fold(0, num_integer::gcd);
        let mut acc = CycloFraction::zero();
        for r in 1..=gcd {
            if gcd % r != 0 {
                continue;
            }
            let mu = mobius(r as u64);
            if mu == 0 {
                continue;
            }
            let reduced: Key = key
                .iter()
                .map(|p| p.divide(r).expect("r divides every part"))
                .collect();
            let l = self.log_coeff(&reduced).adams(r);
            acc = acc.add(&l.scale(&(rat(mu) / rat(r as i64))));
        }
        Ok(acc)
    }

    /// `ℍ_μ(z,w) = (z²-1)(1-w²) ⟨Log Ω, h_μ⟩`.
    pub fn hlv(&self, mu: &MultiPartition) -> Result<HLVResult> {
        let coeff = self.log_omega_coeff(mu.components())?;
        let prefactor = AtomProduct::binomial(
            &rat(1),
            LaurentMonomial::var(Var::Z, 2),
            &rat(-1),
            LaurentMonomial::ONE,
        )?
        .mul(&AtomProduct::one_minus(LaurentMonomial::var(Var::W, 2))?);
        let value = coeff.mul_atoms(&prefactor);
        let d_mu = dimension_d_mu(mu, self.series.g);
        let (hlv, is_polynomial, witness) = match value.to_poly() {
            Some(p) => (p, true, None),
            None => {
                let rf = value.to_rational_function();
                (rf.numerator().clone(), false, Some(rf))
            }
        };
        Ok(HLVResult {
            mu: mu.clone(),
            g: self.series.g,
            d_mu,
            hlv,
            is_polynomial,
            witness,
        })
    }
}

/// `ℍ_μ(z,w)` computed from scratch.
pub fn hlv_polynomial(mu: &MultiPartition, g: u32) -> Result<HLVResult> {
    Kernel::new(g, mu.k(), mu.size().max(1))?.hlv(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;

    fn mp(s: &str) -> MultiPartition {
        s.parse().unwrap()
    }

    #[test]
    fn splits_of_small_shapes() {
        let s = splits(&"2,1".parse().unwrap());
        assert_eq!(s.len(), 4);
        let total: u64 = s.iter().flat_map(|m| m.values()).sum();
        assert_eq!(total, 6);
        assert_eq!(s[1].len(), 2);
    }

    #[test]
    fn series_shape() {
        let s = cauchy_series(0, 1, 2).unwrap();
        assert_eq!(s.terms.len(), 4);
        let one = &s.terms[&"1".parse::<Partition>().unwrap()];
        assert_eq!(
            one.hook_rational(),
            RationalFunction::new(
                MultiPoly::one(),
                parse_poly("-1 z:2 w:2 + 1 z:2 + 1 w:2 + -1").unwrap()
            )
            .unwrap()
        );
        assert!(s.terms[&Partition::empty()].hook.is_one());
    }

    #[test]
    fn singletons_give_closed_form() {
        for g in 0..3 {
            for k in 1..=3 {
                let mu = MultiPartition::repeat(&"1".parse().unwrap(), k).unwrap();
                let r = hlv_polynomial(&mu, g).unwrap();
                let expected = parse_poly("1 z:1 + -1 w:1").unwrap().pow(2 * g);
                assert_eq!(r.polynomial().unwrap(), &expected);
            }
        }
    }

    #[test]
    fn rigid_case() {
        let r = hlv_polynomial(&mp("1,1|1,1|1,1"), 0).unwrap();
        assert_eq!(r.d_mu, 0);
        assert_eq!(r.polynomial().unwrap(), &MultiPoly::one());
    }
}
