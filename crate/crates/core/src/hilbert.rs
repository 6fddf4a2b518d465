//! Genus one and the Hilbert schemes of `ℂ* × ℂ*`: Göttsche's product, the
//! combinatorial identity relating it to the hook terms, and its
//! `q = e^u` expansion in Eisenstein series.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{
    divisors, rat, Coeff, CycloFraction, LaurentMonomial, Monomial, MonomialMap, MultiPoly,
    Rational, TruncatedSeries, Var,
};
use crate::error::{Error, Result};
use crate::kernel::Kernel;
use crate::macdonald::hook_term_atoms;
use crate::partitions::{enumerate_partitions, MultiPartition, Partition};

/// `φ_λ(z, w) = Σ_{(i,j) ∈ λ} z^{j-1} w^{i-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxGenerating {
    pub lambda: Partition,
    pub poly: MultiPoly,
}

pub fn phi_lambda(lambda: &Partition) -> BoxGenerating {
    let poly = MultiPoly::from_terms(lambda.cells().map(|(i, j)| {
        (
            Monomial::from_pairs(&[(Var::Z, j as u32), (Var::W, i as u32)]),
            rat(1),
        )
    }));
    BoxGenerating {
        lambda: lambda.clone(),
        poly,
    }
}

/// `Σ_j (c·T^n)^j` truncated at `T^order`.
fn geometric<C: Coeff>(c: &C, n: usize, order: usize) -> TruncatedSeries<C> {
    let mut s = TruncatedSeries::one(Var::BigT, order);
    let mut power = C::one();
    for j in 1..=order / n {
        power = power.mul(c);
        s.set_coeff(j * n, power.clone());
    }
    s
}

fn mono(pairs: &[(Var, u32)]) -> MultiPoly {
    MultiPoly::monomial(Monomial::from_pairs(pairs))
}

/// `Π_{n≥1} (1 + t^{2n+1}q^n T^n)² / ((1 - q^{n-1}t^{2n}T^n)(1 - t^{2n+2}q^{n+1}T^n))`.
pub fn goettsche_series(n_max: u32) -> TruncatedSeries<MultiPoly> {
    let order = n_max as usize;
    let mut acc = TruncatedSeries::one(Var::BigT, order);
    for n in 1..=n_max {
        let mut num = TruncatedSeries::one(Var::BigT, order);
        num.set_coeff(n as usize, mono(&[(Var::Q, n), (Var::T, 2 * n + 1)]));
        acc = acc.mul(&num).mul(&num);
        acc = acc.mul(&geometric(
            &mono(&[(Var::Q, n - 1), (Var::T, 2 * n)]),
            n as usize,
            order,
        ));
        acc = acc.mul(&geometric(
            &mono(&[(Var::Q, n + 1), (Var::T, 2 * n + 2)]),
            n as usize,
            order,
        ));
    }
    acc
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeVerdict {
    pub degree: u32,
    pub equal: bool,
    /// Both sides in canonical text, recorded on mismatch.
    pub lhs: Option<String>,
    pub rhs: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HilbertReport {
    /// Identity in `z, w`.
    pub full: Vec<DegreeVerdict>,
    /// Identity at `(z, w) = (1/s, s)`.
    pub specialized: Vec<DegreeVerdict>,
}

impl HilbertReport {
    pub fn full_holds(&self) -> bool {
        self.full.iter().all(|v| v.equal)
    }

    pub fn specialized_holds(&self) -> bool {
        self.specialized.iter().all(|v| v.equal)
    }
}

fn compare(lhs: &[CycloFraction], rhs: &[CycloFraction]) -> Vec<DegreeVerdict> {
    lhs.iter()
        .zip(rhs)
        .enumerate()
        .map(|(d, (l, r))| {
            let equal = l == r;
            DegreeVerdict {
                degree: d as u32,
                equal,
                lhs: (!equal).then(|| l.to_string()),
                rhs: (!equal).then(|| r.to_string()),
            }
        })
        .collect()
}

/// Both sides of the identity through `T^order`, after applying `map` to `z, w`.
fn hilbert_sides(
    order: usize,
    map: &MonomialMap,
) -> Result<(Vec<CycloFraction>, Vec<CycloFraction>)> {
    let image = |v: Var, e: i32| map.apply(&LaurentMonomial::var(v, e));
    let laurent = |m: LaurentMonomial| CycloFraction::from_laurent_poly(&MultiPoly::one(), m);
    let mut num = vec![CycloFraction::zero(); order + 1];
    let mut den = vec![CycloFraction::zero(); order + 1];
    for n in 0..=order {
        for lambda in enumerate_partitions(n as u32) {
            let hook = hook_term_atoms(&lambda, 1).map_monomials(map)?;
            let h = CycloFraction::one().mul_atoms(&hook);
            den[n] = den[n].add(&h);
            let phi = phi_lambda(&lambda).poly.map_monomials(|m| m.pow(2));
            let mut phi_mapped = CycloFraction::zero();
            for (m, c) in phi.terms() {
                phi_mapped = phi_mapped.add(&laurent(map.apply(&m.to_laurent())).scale(c));
            }
            num[n] = num[n].add(&h.mul(&phi_mapped));
        }
    }
    // quotient C = num / den with den[0] = 1
    let mut quotient: Vec<CycloFraction> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut c = num[n].clone();
        for j in 1..=n {
            c = c.sub(&den[j].mul(&quotient[n - j]));
        }
        quotient.push(c);
    }
    let prefactor = laurent(image(Var::Z, 2))
        .sub(&CycloFraction::one())
        .mul(&CycloFraction::one().sub(&laurent(image(Var::W, 2))));
    let mut lhs: Vec<CycloFraction> = quotient.iter().map(|c| c.mul(&prefactor)).collect();
    lhs[0] = lhs[0].add(&CycloFraction::one());

    let zw = laurent(image(Var::Z, 1).mul(&image(Var::W, 1)));
    let mut rhs = TruncatedSeries::one(Var::BigT, order);
    for n in 1..=order {
        let mut f = TruncatedSeries::one(Var::BigT, order);
        f.set_coeff(n, zw.neg());
        rhs = rhs.mul(&f).mul(&f);
        rhs = rhs.mul(&geometric(&laurent(image(Var::Z, 2)), n, order));
        rhs = rhs.mul(&geometric(&laurent(image(Var::W, 2)), n, order));
    }
    Ok((lhs, rhs.coeffs().to_vec()))
}

/// Compares both sides of the genus-one identity coefficientwise: in full
/// `z, w` through `T^n_full`, and at `(z, w) = (1/s, s)` through
/// `T^n_specialized`.
pub fn hilbert_identity_check(n_full: u32, n_specialized: u32) -> Result<HilbertReport> {
    let (l, r) = hilbert_sides(n_full as usize, &MonomialMap::identity())?;
    let full = compare(&l, &r);
    let special = MonomialMap::identity()
        .with(Var::Z, LaurentMonomial::var(Var::S, -1))
        .with(Var::W, LaurentMonomial::var(Var::S, 1));
    let (l, r) = hilbert_sides(n_specialized as usize, &special)?;
    Ok(HilbertReport {
        full,
        specialized: compare(&l, &r),
    })
}

/// Bernoulli numbers `B_0, ..., B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(Rational::one());
            continue;
        }
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / rat(m as i64 + 1));
    }
    b
}

/// `G_k = -B_k/(2k) + Σ_{n≥1} σ_{k-1}(n) T^n` for even `k ≥ 2`.
pub fn eisenstein_g(k: u32, n_max: u32) -> Result<TruncatedSeries<MultiPoly>> {
    if k < 2 || k.is_odd() {
        return Err(Error::InvalidArgument(format!(
            "Eisenstein series G_{k} needs an even k ≥ 2"
        )));
    }
    let b = bernoulli(k as usize);
    let mut coeffs = vec![MultiPoly::constant(
        -b[k as usize].clone() / rat(2 * k as i64),
    )];
    for n in 1..=n_max as u64 {
        let sigma: BigInt = divisors(n)
            .into_iter()
            .map(|d| BigInt::from(d).pow(k - 1))
            .sum();
        coeffs.push(MultiPoly::constant(Rational::from_integer(sigma)));
    }
    Ok(TruncatedSeries::new(Var::BigT, coeffs, n_max as usize))
}

/// Truncated power series in `T` with rational coefficients.
type TSeries = Vec<Rational>;

fn tmul(a: &TSeries, b: &TSeries) -> TSeries {
    let n = a.len();
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b[..n - i].iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn factorial(n: u32) -> Rational {
    Rational::from_integer((1..=n as u64).map(BigInt::from).product())
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuasimodularReport {
    pub n_max: u32,
    pub u_order: u32,
    /// The `T⁰` coefficient of the right side is identically 1.
    pub normalization_witness: bool,
    /// `(n, m, lhs, rhs)` for every coefficient of `T^n u^m` that differs.
    pub mismatches: Vec<(u32, u32, Rational, Rational)>,
}

impl QuasimodularReport {
    pub fn holds(&self) -> bool {
        self.normalization_witness && self.mismatches.is_empty()
    }
}

/// Right side `(1/u)(e^{u/2} - e^{-u/2}) exp(2 Σ_k G_k u^k/k!)` as
/// `[u^m]` → series in `T`.
fn quasimodular_rhs(n_max: u32, u_order: u32) -> Result<Vec<TSeries>> {
    let len = n_max as usize + 1;
    let zero = vec![Rational::zero(); len];
    // a[m] = 2 G_m / m!
    let mut a = vec![zero.clone(); u_order as usize + 1];
    for m in (2..=u_order).step_by(2) {
        let g = eisenstein_g(m, n_max)?;
        let scale = rat(2) / factorial(m);
        a[m as usize] = g
            .coeffs()
            .iter()
            .map(|c| c.constant_term() * &scale)
            .collect();
    }
    // m·e[m] = Σ_{j=1}^m j·a[j]·e[m-j]
    let mut e = vec![zero.clone(); u_order as usize + 1];
    e[0][0] = Rational::one();
    for m in 1..=u_order as usize {
        let mut acc = zero.clone();
        for j in 1..=m {
            let prod = tmul(&a[j], &e[m - j]);
            for (x, y) in acc.iter_mut().zip(prod) {
                *x += y * rat(j as i64);
            }
        }
        e[m] = acc.into_iter().map(|x| x / rat(m as i64)).collect();
    }
    // (1/u)(e^{u/2} - e^{-u/2}) = Σ_{m even} u^m / (2^m (m+1)!)
    let mut out = vec![zero; u_order as usize + 1];
    for m in (0..=u_order).step_by(2) {
        let c = rat(1) / (factorial(m + 1) * Rational::from_integer(BigInt::from(2).pow(m)));
        for (j, ej) in e.iter().enumerate().take(u_order as usize + 1 - m as usize) {
            for (x, y) in out[m as usize + j].iter_mut().zip(ej) {
                *x += y * &c;
            }
        }
    }
    Ok(out)
}

/// `μ = (n-1, 1)`, read as `(1)` when `n = 1`.
pub fn hook_shape(n: u32) -> Partition {
    if n <= 1 {
        Partition::row(n)
    } else {
        Partition::from_unsorted(vec![n - 1, 1])
    }
}

/// `[u^m] ℍ(e^{u/2}, e^{-u/2})` for `m ≤ u_order`.
fn exp_specialization(h: &MultiPoly, u_order: u32) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); u_order as usize + 1];
    for (mono, c) in h.terms() {
        let x = Rational::new(
            BigInt::from(mono.exp(Var::Z) as i64 - mono.exp(Var::W) as i64),
            BigInt::from(2),
        );
        let mut power = Rational::one();
        for (m, slot) in out.iter_mut().enumerate() {
            *slot += c * &power / factorial(m as u32);
            power *= &x;
        }
    }
    out
}

/// Checks `1 + Σ_n ℍ_{(n-1,1)}(e^{u/2}, e^{-u/2}) Tⁿ` against the
/// Eisenstein-series product for `g = 1`, through `T^n_max` and `u^u_order`.
pub fn quasimodular_check(n_max: u32, u_order: u32) -> Result<QuasimodularReport> {
    let rhs = quasimodular_rhs(n_max, u_order)?;
    let normalization_witness = rhs
        .iter()
        .enumerate()
        .all(|(m, s)| s[0] == if m == 0 { rat(1) } else { rat(0) });
    let mut lhs = vec![vec![Rational::zero(); n_max as usize + 1]; u_order as usize + 1];
    lhs[0][0] = Rational::one();
    if n_max >= 1 {
        let kernel = Kernel::new(1, 1, n_max)?;
        for n in 1..=n_max {
            let mu = MultiPartition::new(vec![hook_shape(n)])?;
            let h = kernel.hlv(&mu)?;
            for (m, c) in exp_specialization(h.polynomial()?, u_order)
                .into_iter()
                .enumerate()
            {
                lhs[m][n as usize] = c;
            }
        }
    }
    let mut mismatches = Vec::new();
    for m in 0..=u_order as usize {
        for n in 0..=n_max as usize {
            if lhs[m][n] != rhs[m][n] {
                mismatches.push((n as u32, m as u32, lhs[m][n].clone(), rhs[m][n].clone()));
            }
        }
    }
    Ok(QuasimodularReport {
        n_max,
        u_order,
        normalization_witness,
        mismatches,
    })
}

/// `ℍ_{(n-1,1)}` for `g = 1` against the `Tⁿ` coefficient of Göttsche's product.
#[derive(Clone, Debug, PartialEq)]
pub struct ShadowVerdict {
    pub n: u32,
    pub mhp: MultiPoly,
    pub goettsche: MultiPoly,
    /// Equality of the mixed Hodge polynomials.
    pub mhp_equal: bool,
    /// Equality after `t = -1`.
    pub e_equal: bool,
}

pub fn goettsche_shadow_check(n_max: u32) -> Result<Vec<ShadowVerdict>> {
    if n_max == 0 {
        return Ok(Vec::new());
    }
    let series = goettsche_series(n_max);
    let kernel = Kernel::new(1, 1, n_max)?;
    let minus_one = rat(-1);
    (1..=n_max)
        .map(|n| {
            let mu = MultiPartition::new(vec![hook_shape(n)])?;
            let mhp = kernel.hlv(&mu)?.conjectural_mhp()?;
            let goettsche = series.coeff(n as usize).clone();
            let mhp_equal = mhp == goettsche;
            let e_equal =
                mhp.eval_var(Var::T, &minus_one) == goettsche.eval_var(Var::T, &minus_one);
            Ok(ShadowVerdict {
                n,
                mhp,
                goettsche,
                mhp_equal,
                e_equal,
            })
        })
        .collect()
}
