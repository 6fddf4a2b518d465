//! Symmetric functions in `k` independent alphabets, truncated at degree `N`
//! in each alphabet.
//!
//! A term is keyed by a `k`-tuple of partitions, so the coefficient of
//! `b_{λ¹}(x₁)⋯b_{λᵏ}(x_k)` is a single lookup. Power sums are the hub
//! basis: every conversion passes through them.

mod plethysm;
pub mod tables;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{rat, Coeff, Rational};
use crate::error::{Error, Result};
use crate::partitions::Partition;

pub use plethysm::{product_alphabet_schur, SpecializedAlphabet};
use tables::tables;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    M,
    H,
    E,
    P,
    S,
}

impl Basis {
    pub fn symbol(self) -> &'static str {
        match self {
            Basis::M => "m",
            Basis::H => "h",
            Basis::E => "e",
            Basis::P => "p",
            Basis::S => "s",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Basis> {
        [Basis::M, Basis::H, Basis::E, Basis::P, Basis::S]
            .into_iter()
            .find(|b| b.symbol() == s)
    }
}

pub type Key = Vec<Partition>;
type Expansion = Arc<Vec<(Partition, Rational)>>;

#[derive(Clone, PartialEq)]
pub struct SymFunc<C> {
    k: usize,
    trunc: u32,
    basis: Basis,
    terms: BTreeMap<Key, C>,
}

impl<C: Coeff> SymFunc<C> {
    pub fn zero(k: usize, trunc: u32, basis: Basis) -> Self {
        SymFunc {
            k,
            trunc,
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(k: usize, trunc: u32, basis: Basis) -> Self {
        Self::constant(k, trunc, basis, C::one())
    }

    pub fn constant(k: usize, trunc: u32, basis: Basis, c: C) -> Self {
        let mut f = Self::zero(k, trunc, basis);
        if !c.is_zero() {
            f.terms.insert(vec![Partition::empty(); k], c);
        }
        f
    }

    /// Single basis element `c · b_{key}`.
    pub fn term(k: usize, trunc: u32, basis: Basis, key: Key, c: C) -> Result<Self> {
        let mut f = Self::zero(k, trunc, basis);
        f.add_term(key, c)?;
        Ok(f)
    }

    /// `b_λ` in alphabet `i` (other alphabets empty).
    pub fn single(k: usize, trunc: u32, basis: Basis, i: usize, lambda: Partition) -> Result<Self> {
        let mut key = vec![Partition::empty(); k];
        key[i] = lambda;
        Self::term(k, trunc, basis, key, C::one())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Key, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &[Partition]) -> C {
        self.terms.get(key).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![Partition::empty(); self.k])
    }

    /// Largest total degree present.
    pub fn max_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|k| total_degree(k))
            .max()
            .unwrap_or(0)
    }

    fn check_key(&self, key: &[Partition]) -> Result<()> {
        if key.len() != self.k {
            return Err(Error::Incompatible(format!(
                "key with {} alphabets, expected {}",
                key.len(),
                self.k
            )));
        }
        if let Some(p) = key.iter().find(|p| p.size() > self.trunc) {
            return Err(Error::TruncationOverflow {
                degree: p.size() as usize,
                trunc: self.trunc as usize,
            });
        }
        Ok(())
    }

    pub fn add_term(&mut self, key: Key, c: C) -> Result<()> {
        self.check_key(&key)?;
        accumulate(&mut self.terms, key, c);
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.k != other.k || self.basis != other.basis || self.trunc != other.trunc {
            return Err(Error::Incompatible(format!(
                "({}, {}, N={}) vs ({}, {}, N={})",
                self.k,
                self.basis.symbol(),
                self.trunc,
                other.k,
                other.basis.symbol(),
                other.trunc
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (key, c) in &other.terms {
            accumulate(&mut out.terms, key.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(r))
    }

    pub fn mul_coeff(&self, x: &C) -> Self {
        self.map_coeffs(|c| c.mul(x))
    }

    /// Apply a coefficient map, dropping terms that become zero.
    pub fn map_coeffs<F: Fn(&C) -> C>(&self, f: F) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(k, c)| {
                let v = f(c);
                (!v.is_zero()).then(|| (k.clone(), v))
            })
            .collect();
        SymFunc {
            k: self.k,
            trunc: self.trunc,
            basis: self.basis,
            terms,
        }
    }

    /// Same function with a different truncation; raising is free, lowering
    /// drops terms.
    pub fn with_trunc(&self, trunc: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| k.iter().all(|p| p.size() <= trunc))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        SymFunc {
            k: self.k,
            trunc,
            basis: self.basis,
            terms,
        }
    }

    /// Product; the result is in the power-sum basis and terms beyond the
    /// truncation are dropped.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.k != other.k || self.trunc != other.trunc {
            return Err(Error::Incompatible(
                "product of differently shaped symmetric functions".into(),
            ));
        }
        let a = self.convert(Basis::P);
        let b = other.convert(Basis::P);
        Ok(SymFunc {
            k: self.k,
            trunc: self.trunc,
            basis: Basis::P,
            terms: mul_terms(&a.terms, &b.terms, self.trunc),
        })
    }

    /// Express in another basis.
    pub fn convert(&self, target: Basis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let in_p = if self.basis == Basis::P {
            self.clone()
        } else {
            self.transform(Basis::P, |p| to_p(self.basis, p))
        };
        if target == Basis::P {
            in_p
        } else {
            in_p.transform(target, |p| from_p(target, p))
        }
    }

    fn transform<F: Fn(&Partition) -> Expansion>(&self, target: Basis, single: F) -> Self {
        let mut out: BTreeMap<Key, C> = BTreeMap::new();
        let mut cache: HashMap<Partition, Expansion> = HashMap::new();
        for (key, c) in &self.terms {
            let expansions: Vec<Expansion> = key
                .iter()
                .map(|p| cache.entry(p.clone()).or_insert_with(|| single(p)).clone())
                .collect();
            let mut partial: Vec<(Key, Rational)> =
                vec![(Vec::with_capacity(self.k), Rational::one())];
            for e in &expansions {
                let mut next = Vec::with_capacity(partial.len() * e.len());
                for (k, r) in &partial {
                    for (p, x) in e.iter() {
                        let mut k2 = k.clone();
                        k2.push(p.clone());
                        next.push((k2, r * x));
                    }
                }
                partial = next;
            }
            for (k, r) in partial {
                accumulate(&mut out, k, c.scale(&r));
            }
        }
        SymFunc {
            k: self.k,
            trunc: self.trunc,
            basis: target,
            terms: out,
        }
    }

    /// Coefficient of `m_{μ¹}(x₁)⋯m_{μᵏ}(x_k)`, i.e. `⟨h_μ, f⟩`.
    pub fn m_coefficient(&self, mu: &[Partition]) -> C {
        self.convert(Basis::M).coeff(mu)
    }

    /// Apply the Adams operation `ψ_r`; errors if a term would exceed the
    /// truncation.
    pub fn adams(&self, r: u32) -> Result<Self> {
        if let Some(key) = self
            .terms
            .keys()
            .find(|k| k.iter().any(|p| p.size() * r > self.trunc))
        {
            let d = key.iter().map(|p| p.size()).max().unwrap_or(0);
            return Err(Error::TruncationOverflow {
                degree: (d * r) as usize,
                trunc: self.trunc as usize,
            });
        }
        Ok(self.adams_truncating(r))
    }

    /// `ψ_r`, silently dropping terms that exceed the truncation.
    pub fn adams_truncating(&self, r: u32) -> Self {
        let p = self.convert(Basis::P);
        let mut out = BTreeMap::new();
        for (key, c) in &p.terms {
            if key.iter().any(|q| q.size() * r > self.trunc) {
                continue;
            }
            let k2: Key = key.iter().map(|q| q.scale(r)).collect();
            accumulate(&mut out, k2, c.adams(r));
        }
        SymFunc {
            k: self.k,
            trunc: self.trunc,
            basis: Basis::P,
            terms: out,
        }
    }

    /// Change the coefficient type.
    pub fn map_into<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> SymFunc<D> {
        let terms = self
            .terms
            .iter()
            .filter_map(|(k, c)| {
                let v = f(c);
                (!v.is_zero()).then(|| (k.clone(), v))
            })
            .collect();
        SymFunc {
            k: self.k,
            trunc: self.trunc,
            basis: self.basis,
            terms,
        }
    }

    /// Terms of total degree exactly `d`.
    pub fn degree_part(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| total_degree(k) == d)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        SymFunc {
            k: self.k,
            trunc: self.trunc,
            basis: self.basis,
            terms,
        }
    }
}

/// Extended Hall pairing `⟨f, g⟩`, with `⟨p_λ, p_ν⟩ = δ z_λ` in each alphabet.
pub fn hall_pairing<C: Coeff>(f: &SymFunc<C>, g: &SymFunc<C>) -> Result<C> {
    if f.k != g.k {
        return Err(Error::Incompatible(
            "pairing symmetric functions in different alphabets".into(),
        ));
    }
    let a = f.convert(Basis::P);
    let b = g.convert(Basis::P);
    let mut acc = C::zero();
    for (key, c) in &a.terms {
        if let Some(d) = b.terms.get(key) {
            let z: Rational = key
                .iter()
                .map(|p| Rational::from_integer(p.z().into()))
                .product();
            acc = acc.add(&c.mul(d).scale(&z));
        }
    }
    Ok(acc)
}

pub fn total_degree(key: &[Partition]) -> u32 {
    key.iter().map(Partition::size).sum()
}

fn accumulate<C: Coeff>(terms: &mut BTreeMap<Key, C>, key: Key, c: C) {
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let v = e.get().add(&c);
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

/// Product of power-sum term maps.
pub(crate) fn mul_terms<C: Coeff>(
    a: &BTreeMap<Key, C>,
    b: &BTreeMap<Key, C>,
    trunc: u32,
) -> BTreeMap<Key, C> {
    let mut out = BTreeMap::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            if ka.iter().zip(kb).any(|(x, y)| x.size() + y.size() > trunc) {
                continue;
            }
            let key: Key = ka.iter().zip(kb).map(|(x, y)| x.union(y)).collect();
            accumulate(&mut out, key, ca.mul(cb));
        }
    }
    out
}

fn expansion_cache() -> &'static Mutex<HashMap<(Basis, bool, Partition), Expansion>> {
    static CACHE: OnceLock<Mutex<HashMap<(Basis, bool, Partition), Expansion>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Power-sum expansion of the basis element `b_λ`.
fn to_p(basis: Basis, lambda: &Partition) -> Expansion {
    let key = (basis, true, lambda.clone());
    if let Some(e) = expansion_cache().lock().unwrap().get(&key) {
        return e.clone();
    }
    let t = tables(lambda.size());
    let i = t.index.get(lambda).copied();
    let v: Vec<(Partition, Rational)> = match basis {
        Basis::P => vec![(lambda.clone(), Rational::one())],
        Basis::M => nonzero(
            t.parts
                .iter()
                .enumerate()
                .map(|(r, rho)| (rho.clone(), t.m_to_p[i.unwrap()][r].clone())),
        ),
        Basis::S => nonzero(
            t.parts
                .iter()
                .enumerate()
                .map(|(r, rho)| (rho.clone(), rat(t.chi[i.unwrap()][r]) / &t.z[r])),
        ),
        Basis::H | Basis::E => {
            // product of the one-row pieces
            let mut acc: Vec<(Partition, Rational)> = vec![(Partition::empty(), Rational::one())];
            for &part in lambda.parts() {
                let tp = tables(part);
                let piece: Vec<(Partition, Rational)> = tp
                    .parts
                    .iter()
                    .enumerate()
                    .map(|(r, rho)| {
                        let s = if basis == Basis::E {
                            rat(tp.sign[r])
                        } else {
                            Rational::one()
                        };
                        (rho.clone(), s / &tp.z[r])
                    })
                    .collect();
                let mut next: BTreeMap<Partition, Rational> = BTreeMap::new();
                for (a, x) in &acc {
                    for (b, y) in &piece {
                        *next.entry(a.union(b)).or_insert_with(Rational::zero) += x * y;
                    }
                }
                acc = nonzero(next);
            }
            acc
        }
    };
    let e = Arc::new(v);
    expansion_cache().lock().unwrap().insert(key, e.clone());
    e
}

/// Expansion of `p_ρ` in the target basis.
fn from_p(basis: Basis, rho: &Partition) -> Expansion {
    let key = (basis, false, rho.clone());
    if let Some(e) = expansion_cache().lock().unwrap().get(&key) {
        return e.clone();
    }
    let t = tables(rho.size());
    let r = t.idx(rho);
    let v: Vec<(Partition, Rational)> = match basis {
        Basis::P => vec![(rho.clone(), Rational::one())],
        Basis::M => nonzero(
            t.parts
                .iter()
                .enumerate()
                .map(|(m, mu)| (mu.clone(), rat(t.p_to_m[r][m]))),
        ),
        Basis::S => nonzero(
            t.parts
                .iter()
                .enumerate()
                .map(|(l, lam)| (lam.clone(), rat(t.chi[l][r]))),
        ),
        // h is dual to m, and ω(p_ρ) = ε_ρ p_ρ
        Basis::H | Basis::E => {
            let s = if basis == Basis::E {
                rat(t.sign[r])
            } else {
                Rational::one()
            };
            nonzero(
                t.parts
                    .iter()
                    .enumerate()
                    .map(|(m, mu)| (mu.clone(), &t.z[r] * &t.m_to_p[m][r] * &s)),
            )
        }
    };
    let e = Arc::new(v);
    expansion_cache().lock().unwrap().insert(key, e.clone());
    e
}

fn nonzero<I: IntoIterator<Item = (Partition, Rational)>>(it: I) -> Vec<(Partition, Rational)> {
    it.into_iter().filter(|(_, r)| !r.is_zero()).collect()
}

impl<C: Coeff> fmt::Display for SymFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (key, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let k: Vec<String> = key.iter().map(|p| p.to_string()).collect();
            write!(f, "({}) {}[{}]", c, self.basis.symbol(), k.join("|"))?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for SymFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
