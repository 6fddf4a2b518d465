//! Macdonald polynomials `P_λ`, the integral form `J_λ`, the modified
//! `H̃_λ`, and the deformed hook term of the Cauchy kernel.
//!
//! `P_λ` is obtained by Gram–Schmidt in power sums against the `(q,t)`
//! inner product. Each norm `⟨P_μ, P_μ⟩` is checked against its product
//! formula and then divided out as a product of cyclotomic factors, so no
//! general rational-function division happens.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::arith::{
    rat, AtomProduct, Coeff, CycloFraction, FieldCoeff, LaurentMonomial, MonomialMap, MultiPoly,
    Rational, RationalFunction, Var,
};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::symfunc::tables::tables;
use crate::symfunc::{Basis, SymFunc};

fn qt(a: u32, b: u32) -> LaurentMonomial {
    LaurentMonomial::var(Var::Q, a as i32).mul(&LaurentMonomial::var(Var::T, b as i32))
}

fn one_minus(m: LaurentMonomial) -> AtomProduct {
    AtomProduct::one_minus(m).expect("nontrivial binomial")
}

/// `⟨p_ρ, p_ρ⟩_{q,t} / z_ρ = Π (1 - q^{ρ_i}) / (1 - t^{ρ_i})`.
fn qt_weight(rho: &Partition) -> AtomProduct {
    rho.parts().iter().fold(AtomProduct::one(), |acc, &r| {
        acc.mul(&one_minus(qt(r, 0))).div(&one_minus(qt(0, r)))
    })
}

/// `b_λ = Π (1 - q^a t^{l+1}) / (1 - q^{a+1} t^l)`, so `⟨P_λ, P_λ⟩ = 1/b_λ`.
pub fn b_lambda(lambda: &Partition) -> AtomProduct {
    lambda
        .arms_legs()
        .into_iter()
        .fold(AtomProduct::one(), |acc, (a, l)| {
            acc.mul(&one_minus(qt(a, l + 1)))
                .div(&one_minus(qt(a + 1, l)))
        })
}

/// `c_λ = Π (1 - q^a t^{l+1})`, so `J_λ = c_λ P_λ`.
pub fn c_lambda(lambda: &Partition) -> AtomProduct {
    lambda
        .arms_legs()
        .into_iter()
        .fold(AtomProduct::one(), |acc, (a, l)| {
            acc.mul(&one_minus(qt(a, l + 1)))
        })
}

/// Power-sum coefficients of every `P_λ` with `|λ| = n`, indexed like
/// `tables(n).parts`.
fn all_p(n: u32) -> Result<Arc<Vec<Vec<CycloFraction>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Vec<CycloFraction>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return Ok(v.clone());
    }
    let t = tables(n);
    let len = t.parts.len();
    let weights: Vec<AtomProduct> = t
        .parts
        .iter()
        .enumerate()
        .map(|(r, rho)| qt_weight(rho).mul(&AtomProduct::scalar(t.z[r].clone())))
        .collect();
    let mut result: Vec<Vec<CycloFraction>> = vec![Vec::new(); len];
    // weighted[j][ρ] = P_j[ρ] · z_ρ · weight_ρ, for inner products
    let mut weighted: Vec<Vec<CycloFraction>> = vec![Vec::new(); len];
    let mut norms_inv: Vec<AtomProduct> = vec![AtomProduct::one(); len];
    // reverse lexicographic order lists dominance-larger partitions first,
    // so build from the end
    for i in (0..len).rev() {
        let mut p: Vec<CycloFraction> = t.m_to_p[i]
            .iter()
            .map(|x| CycloFraction::from_rational(x.clone()))
            .collect();
        for j in i + 1..len {
            let mut ip = CycloFraction::zero();
            for r in 0..len {
                if !t.m_to_p[i][r].is_zero() {
                    ip = ip.add(&weighted[j][r].scale(&t.m_to_p[i][r]));
                }
            }
            if ip.is_zero() {
                continue;
            }
            let c = ip.mul_atoms(&norms_inv[j]);
            for r in 0..len {
                p[r] = p[r].sub(&result[j][r].mul(&c));
            }
        }
        let w: Vec<CycloFraction> = p
            .iter()
            .zip(&weights)
            .map(|(x, wt)| x.mul_atoms(wt))
            .collect();
        let mut norm = CycloFraction::zero();
        for r in 0..len {
            norm = norm.add(&p[r].mul(&w[r]));
        }
        let b = b_lambda(&t.parts[i]);
        if norm != CycloFraction::from_atom_product(&b.inv()) {
            return Err(Error::InternalInconsistency(format!(
                "norm of P_{} does not match its product formula",
                t.parts[i]
            )));
        }
        norms_inv[i] = b;
        result[i] = p;
        weighted[i] = w;
    }
    let v = Arc::new(result);
    cache.lock().unwrap().insert(n, v.clone());
    Ok(v)
}

fn p_coeffs_to_symfunc(lambda: &Partition, coeffs: &[CycloFraction]) -> SymFunc<CycloFraction> {
    let n = lambda.size();
    let t = tables(n);
    let mut f = SymFunc::zero(1, n, Basis::P);
    for (r, c) in coeffs.iter().enumerate() {
        f.add_term(vec![t.parts[r].clone()], c.clone()).unwrap();
    }
    f
}

/// `P_λ(x; q, t)` in the monomial basis.
pub fn macdonald_p(lambda: &Partition) -> Result<SymFunc<CycloFraction>> {
    let n = lambda.size();
    if n == 0 {
        return Ok(SymFunc::one(1, 0, Basis::M));
    }
    let all = all_p(n)?;
    let t = tables(n);
    Ok(p_coeffs_to_symfunc(lambda, &all[t.idx(lambda)]).convert(Basis::M))
}

fn j_p_coeffs(lambda: &Partition) -> Result<Vec<CycloFraction>> {
    let n = lambda.size();
    let all = all_p(n)?;
    let t = tables(n);
    let c = c_lambda(lambda);
    Ok(all[t.idx(lambda)].iter().map(|x| x.mul_atoms(&c)).collect())
}

/// `J_λ = c_λ P_λ` in the monomial basis.
pub fn integral_j(lambda: &Partition) -> Result<SymFunc<CycloFraction>> {
    if lambda.is_empty() {
        return Ok(SymFunc::one(1, 0, Basis::M));
    }
    Ok(p_coeffs_to_symfunc(lambda, &j_p_coeffs(lambda)?).convert(Basis::M))
}

/// A modified Macdonald polynomial expanded in the `m` or `s` basis, with
/// polynomial coefficients in `q, t`.
#[derive(Clone, Debug, PartialEq)]
pub struct MacdonaldExpansion {
    pub lambda: Partition,
    pub basis: Basis,
    pub expansion: SymFunc<MultiPoly>,
}

impl MacdonaldExpansion {
    /// Coefficient of the basis element indexed by `nu`.
    pub fn coeff(&self, nu: &Partition) -> MultiPoly {
        self.expansion.coeff(std::slice::from_ref(nu))
    }

    /// True if all coefficients have non-negative integer coefficients.
    pub fn is_positive(&self) -> bool {
        self.expansion.terms().values().all(|p| {
            p.terms()
                .iter()
                .all(|(_, c)| c.is_integer() && *c >= Rational::zero())
        })
    }
}

/// `H̃_λ(x; q, t) = t^{n(λ)} J_λ[X/(1 - t^{-1}); q, t^{-1}]`.
pub fn modified_htilde(lambda: &Partition, basis: Basis) -> Result<MacdonaldExpansion> {
    if !matches!(basis, Basis::M | Basis::S) {
        return Err(Error::InvalidArgument(
            "H̃ expansions are stored in the m or s basis".into(),
        ));
    }
    let n = lambda.size();
    if n == 0 {
        return Ok(MacdonaldExpansion {
            lambda: lambda.clone(),
            basis,
            expansion: SymFunc::one(1, 0, basis),
        });
    }
    let t = tables(n);
    let invert_t = MonomialMap::identity().with(Var::T, LaurentMonomial::var(Var::T, -1));
    let j = j_p_coeffs(lambda)?;
    let mut f = SymFunc::zero(1, n, Basis::P);
    for (r, rho) in t.parts.iter().enumerate() {
        if j[r].is_zero() {
            continue;
        }
        let mut factor = AtomProduct::monomial(LaurentMonomial::var(Var::T, lambda.n() as i32));
        for &part in rho.parts() {
            factor = factor.div(&one_minus(LaurentMonomial::var(Var::T, -(part as i32))));
        }
        let c = j[r].map_monomials(&invert_t)?.mul_atoms(&factor);
        f.add_term(vec![rho.clone()], c)?;
    }
    let converted = f.convert(basis);
    let mut out = SymFunc::zero(1, n, basis);
    for (key, c) in converted.terms() {
        let p = c.to_poly().ok_or_else(|| {
            Error::NotPolynomial(format!(
                "coefficient of {}[{}] in H̃_{lambda}",
                basis.symbol(),
                key[0]
            ))
        })?;
        out.add_term(key.clone(), p)?;
    }
    Ok(MacdonaldExpansion {
        lambda: lambda.clone(),
        basis,
        expansion: out,
    })
}

/// Supplier of `H̃_λ` expansions. Implementations may persist results.
pub trait HtildeSource: Send + Sync {
    fn htilde(&self, lambda: &Partition, basis: Basis) -> Result<Arc<MacdonaldExpansion>>;
}

/// In-process memo of `H̃_λ` expansions.
#[derive(Default)]
pub struct MemoryStore {
    map: Mutex<HashMap<(Partition, Basis), Arc<MacdonaldExpansion>>>,
}

impl MemoryStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Shared process-wide store.
    pub fn global() -> &'static MemoryStore {
        static STORE: OnceLock<MemoryStore> = OnceLock::new();
        STORE.get_or_init(MemoryStore::new)
    }

    pub fn get(&self, lambda: &Partition, basis: Basis) -> Option<Arc<MacdonaldExpansion>> {
        self.map
            .lock()
            .unwrap()
            .get(&(lambda.clone(), basis))
            .cloned()
    }

    pub fn insert(&self, e: Arc<MacdonaldExpansion>) {
        self.map
            .lock()
            .unwrap()
            .insert((e.lambda.clone(), e.basis), e);
    }
}

impl HtildeSource for MemoryStore {
    fn htilde(&self, lambda: &Partition, basis: Basis) -> Result<Arc<MacdonaldExpansion>> {
        if let Some(e) = self.get(lambda, basis) {
            return Ok(e);
        }
        let e = Arc::new(modified_htilde(lambda, basis)?);
        self.insert(e.clone());
        Ok(e)
    }
}

/// Deformed hook term
/// `Π_cells (z^{2a+1} - w^{2l+1})^{2g} / ((z^{2a+2} - w^{2l})(z^{2a} - w^{2l+2}))`
/// in factored form.
pub fn hook_term_atoms(lambda: &Partition, g: u32) -> AtomProduct {
    let zw = |a: u32, b: u32| -> AtomProduct {
        AtomProduct::binomial(
            &rat(1),
            LaurentMonomial::var(Var::Z, a as i32),
            &rat(-1),
            LaurentMonomial::var(Var::W, b as i32),
        )
        .expect("distinct exponents")
    };
    lambda
        .arms_legs()
        .into_iter()
        .fold(AtomProduct::one(), |acc, (a, l)| {
            acc.mul(&zw(2 * a + 1, 2 * l + 1).pow(2 * g as i32))
                .div(&zw(2 * a + 2, 2 * l))
                .div(&zw(2 * a, 2 * l + 2))
        })
}

/// The deformed hook term as a reduced rational function in `z, w`.
pub fn hook_term(lambda: &Partition, g: u32) -> RationalFunction {
    hook_term_atoms(lambda, g).to_rational_function()
}

/// Convert a cyclotomic-fraction symmetric function to rational functions.
pub fn to_rational_functions(f: &SymFunc<CycloFraction>) -> SymFunc<RationalFunction> {
    f.map_into(|c| c.to_rational_function())
}

/// Structural properties of one `H̃_λ`, each computed independently of the
/// others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HtildeChecks {
    pub lambda: Partition,
    /// `H̃_λ(x; q, t) = H̃_{λ'}(x; t, q)`.
    pub transposition: bool,
    /// `H̃_λ(x; 1, 1) = p_1ⁿ`.
    pub at_one: bool,
    /// `⟨H̃_λ, s_(n)⟩ = 1`.
    pub row_coefficient: bool,
    /// `⟨H̃_λ, s_(1ⁿ)⟩ = q^{n(λ')} t^{n(λ)}`.
    pub column_coefficient: bool,
}

impl HtildeChecks {
    pub fn all(&self) -> bool {
        self.transposition && self.at_one && self.row_coefficient && self.column_coefficient
    }
}

pub fn htilde_checks(lambda: &Partition, source: &dyn HtildeSource) -> Result<HtildeChecks> {
    let n = lambda.size();
    let h = source.htilde(lambda, Basis::S)?;
    let conj = source.htilde(&lambda.conjugate(), Basis::S)?;
    let transposition = h.expansion == conj.expansion.map_coeffs(|c| c.swap_vars(Var::Q, Var::T));
    let one = [(Var::Q, rat(1)), (Var::T, rat(1))];
    let at_one = h
        .expansion
        .map_coeffs(|c| MultiPoly::constant(c.eval_all(&one)))
        .convert(Basis::P)
        == SymFunc::term(1, n, Basis::P, vec![Partition::column(n)], MultiPoly::one())?;
    let row_coefficient = h.coeff(&Partition::row(n)).is_one();
    let expected = MultiPoly::monomial(crate::arith::Monomial::from_pairs(&[
        (Var::Q, lambda.conjugate().n() as u32),
        (Var::T, lambda.n() as u32),
    ]));
    let column_coefficient = h.coeff(&Partition::column(n)) == expected;
    Ok(HtildeChecks {
        lambda: lambda.clone(),
        transposition,
        at_one,
        row_coefficient,
        column_coefficient,
    })
}
