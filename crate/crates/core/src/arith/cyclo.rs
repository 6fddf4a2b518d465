//! Fractions whose denominators are products of cyclotomic factors.
//!
//! Every denominator met in the kernel, the Macdonald inner products and the
//! specializations is a product of binomials `x^a - x^b`. Such a binomial
//! factors over the rationals into cleared cyclotomic polynomials
//! `Φ_e(x^v)` with `v` a primitive exponent vector, and these are
//! irreducible. Keeping denominators factored makes addition an lcm of
//! exponent maps and reduction a handful of trial divisions, with no
//! multivariate gcd.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::coeff::{Coeff, FieldCoeff};
use super::monomial::{LaurentMonomial, Var, NVARS};
use super::poly::MultiPoly;
use super::ratfun::RationalFunction;
use super::{divisors, rat, totient, Rational};
use crate::error::{Error, Result};

/// Dense integer coefficients (lowest degree first) of the `n`-th cyclotomic
/// polynomial.
pub fn cyclotomic(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&n) {
        return c.clone();
    }
    assert!(n >= 1);
    // x^n - 1 divided by every Φ_d with d | n, d < n
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in divisors(n as u64) {
        if d as u32 == n {
            continue;
        }
        let phi = cyclotomic(d as u32);
        p = div_monic_dense(&p, &phi);
    }
    let p = Arc::new(p);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn div_monic_dense(f: &[i64], g: &[i64]) -> Vec<i64> {
    let n = g.len() - 1;
    let mut r = f.to_vec();
    let mut q = vec![0i64; f.len() - n];
    for i in (0..q.len()).rev() {
        let c = r[i + n];
        q[i] = c;
        if c != 0 {
            for j in 0..=n {
                r[i + j] = r[i + j].checked_sub(c.checked_mul(g[j]).unwrap()).unwrap();
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

fn primitive_direction(v: &LaurentMonomial) -> Option<(LaurentMonomial, u32, bool)> {
    let g = v.0.iter().fold(0i32, |acc, &e| acc.gcd(&e));
    if g == 0 {
        return None;
    }
    let mut dir = [0i32; NVARS];
    for i in 0..NVARS {
        dir[i] = v.0[i] / g;
    }
    let first = dir.iter().copied().find(|&e| e != 0).unwrap();
    let flipped = first < 0;
    if flipped {
        for e in dir.iter_mut() {
            *e = -*e;
        }
    }
    Some((LaurentMonomial(dir), g.unsigned_abs(), flipped))
}

/// The cleared cyclotomic factor `x^{φ(e)·v⁻} Φ_e(x^v)` where `v = v⁺ - v⁻`
/// is primitive with positive first nonzero entry.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    dir: LaurentMonomial,
    order: u32,
}

impl Atom {
    pub fn new(dir: LaurentMonomial, order: u32) -> Atom {
        let (d, g, flipped) = primitive_direction(&dir).expect("atom direction must be nonzero");
        assert!(g == 1 && !flipped && order >= 1, "non-canonical atom");
        Atom { dir: d, order }
    }

    pub fn dir(&self) -> LaurentMonomial {
        self.dir
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree_weight(&self) -> u64 {
        totient(self.order as u64)
    }

    pub fn poly(&self) -> MultiPoly {
        let (pos, neg) = self.dir.split();
        let coeffs = cyclotomic(self.order);
        let phi = coeffs.len() as u32 - 1;
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| {
                let m = pos.pow(j as u32).mul(&neg.pow(phi - j as u32));
                (m, rat(c))
            });
        MultiPoly::from_terms(terms)
    }

    /// Factorization of the image under `x ↦ x^r`.
    pub fn adams(&self, r: u32) -> Vec<Atom> {
        divisors(r as u64)
            .into_iter()
            .filter(|&d| (d as u32).gcd(&self.order) == 1)
            .map(|d| Atom {
                dir: self.dir,
                order: self.order * r / d as u32,
            })
            .collect()
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Φ{}({:?})", self.order, self.dir.0)
    }
}

/// A map on exponent vectors sending variable `i` to the Laurent monomial
/// `images[i]`; extended multiplicatively.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    images: [LaurentMonomial; NVARS],
}

impl Default for MonomialMap {
    fn default() -> Self {
        Self::identity()
    }
}

impl MonomialMap {
    pub fn identity() -> Self {
        let mut images = [LaurentMonomial::ONE; NVARS];
        for v in Var::ALL {
            images[v.index()] = LaurentMonomial::var(v, 1);
        }
        MonomialMap { images }
    }

    pub fn with(mut self, v: Var, image: LaurentMonomial) -> Self {
        self.images[v.index()] = image;
        self
    }

    pub fn apply(&self, m: &LaurentMonomial) -> LaurentMonomial {
        let mut out = LaurentMonomial::ONE;
        for i in 0..NVARS {
            if m.0[i] != 0 {
                out = out.mul(&self.images[i].pow(m.0[i]));
            }
        }
        out
    }

    pub fn apply_poly(&self, p: &MultiPoly) -> (MultiPoly, LaurentMonomial) {
        let mapped: Vec<(LaurentMonomial, Rational)> = p
            .terms()
            .iter()
            .map(|(m, c)| (self.apply(&m.to_laurent()), c.clone()))
            .collect();
        laurent_terms_to_poly(mapped)
    }
}

/// Collect Laurent terms as `poly · x^shift` with `poly` free of monomial content.
fn laurent_terms_to_poly(terms: Vec<(LaurentMonomial, Rational)>) -> (MultiPoly, LaurentMonomial) {
    let Some(first) = terms.first() else {
        return (MultiPoly::zero(), LaurentMonomial::ONE);
    };
    let shift = terms.iter().fold(first.0, |acc, (m, _)| acc.meet(m));
    let inv = shift.inv();
    let p = MultiPoly::from_terms(
        terms
            .into_iter()
            .map(|(m, c)| (m.mul(&inv).to_monomial().expect("shift is the meet"), c)),
    );
    if p.is_zero() {
        return (p, LaurentMonomial::ONE);
    }
    let extra = p.min_monomial();
    let p = p.div_monomial(&extra).unwrap();
    (p, shift.mul(&extra.to_laurent()))
}

/// `scalar · x^mono · Π atoms^e` with integer (possibly negative) exponents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AtomProduct {
    scalar: Rational,
    mono: LaurentMonomial,
    atoms: BTreeMap<Atom, i32>,
}

impl AtomProduct {
    pub fn one() -> Self {
        AtomProduct {
            scalar: Rational::one(),
            mono: LaurentMonomial::ONE,
            atoms: BTreeMap::new(),
        }
    }

    pub fn scalar(c: Rational) -> Self {
        assert!(!c.is_zero(), "zero atom product");
        AtomProduct {
            scalar: c,
            ..Self::one()
        }
    }

    pub fn monomial(m: LaurentMonomial) -> Self {
        AtomProduct {
            mono: m,
            ..Self::one()
        }
    }

    pub fn atom(a: Atom, e: i32) -> Self {
        let mut p = Self::one();
        if e != 0 {
            p.atoms.insert(a, e);
        }
        p
    }

    pub fn scalar_part(&self) -> &Rational {
        &self.scalar
    }

    pub fn monomial_part(&self) -> LaurentMonomial {
        self.mono
    }

    pub fn atoms(&self) -> &BTreeMap<Atom, i32> {
        &self.atoms
    }

    pub fn is_one(&self) -> bool {
        self.scalar.is_one() && self.mono.is_one() && self.atoms.is_empty()
    }

    /// Factor `c1·x^m1 + c2·x^m2` where `c2 = ±c1`.
    pub fn binomial(
        c1: &Rational,
        m1: LaurentMonomial,
        c2: &Rational,
        m2: LaurentMonomial,
    ) -> Result<Self> {
        if m1 == m2 {
            let c = c1 + c2;
            if c.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(Self::scalar(c).mul(&Self::monomial(m1)));
        }
        if c1.is_zero() || c2.is_zero() {
            let (c, m) = if c1.is_zero() { (c2, m2) } else { (c1, m1) };
            if c.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(Self::scalar(c.clone()).mul(&Self::monomial(m)));
        }
        let base = m1.meet(&m2);
        let v = m1.mul(&m2.inv());
        let (dir, d, flipped) = primitive_direction(&v).unwrap();
        let mut out = Self::scalar(c1.clone()).mul(&Self::monomial(base));
        if *c2 == -c1 {
            // x^a - x^b = ±Π_{e|d} P_{dir,e}
            if flipped {
                out.scalar = -out.scalar;
            }
            for e in divisors(d as u64) {
                out.push_atom(
                    Atom {
                        dir,
                        order: e as u32,
                    },
                    1,
                );
            }
        } else if c2 == c1 {
            // x^a + x^b = (x^{2a} - x^{2b}) / (x^a - x^b)
            for e in divisors(2 * d as u64) {
                if !(d as u64).is_multiple_of(e) {
                    out.push_atom(
                        Atom {
                            dir,
                            order: e as u32,
                        },
                        1,
                    );
                }
            }
        } else {
            return Err(Error::InvalidArgument(format!(
                "binomial with coefficients {c1} and {c2} is not cyclotomic"
            )));
        }
        Ok(out)
    }

    /// `1 - x^m`.
    pub fn one_minus(m: LaurentMonomial) -> Result<Self> {
        Self::binomial(&Rational::one(), LaurentMonomial::ONE, &-Rational::one(), m)
    }

    /// Factor a polynomial that is a monomial times a `±`-binomial.
    pub fn from_binomial_poly(p: &MultiPoly) -> Result<Self> {
        match p.terms() {
            [(m, c)] => Ok(Self::scalar(c.clone()).mul(&Self::monomial(m.to_laurent()))),
            [(m1, c1), (m2, c2)] => Self::binomial(c1, m1.to_laurent(), c2, m2.to_laurent()),
            [] => Err(Error::DivisionByZero),
            _ => Err(Error::InvalidArgument(format!("{p} is not a binomial"))),
        }
    }

    fn push_atom(&mut self, a: Atom, e: i32) {
        let entry = self.atoms.entry(a).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.atoms.remove(&a);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.scalar *= &other.scalar;
        out.mono = out.mono.mul(&other.mono);
        for (a, e) in &other.atoms {
            out.push_atom(*a, *e);
        }
        out
    }

    pub fn inv(&self) -> Self {
        AtomProduct {
            scalar: self.scalar.recip(),
            mono: self.mono.inv(),
            atoms: self.atoms.iter().map(|(a, e)| (*a, -e)).collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i32) -> Self {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut scalar = Rational::one();
        for _ in 0..e {
            scalar *= &self.scalar;
        }
        AtomProduct {
            scalar,
            mono: self.mono.pow(e),
            atoms: if e == 0 {
                BTreeMap::new()
            } else {
                self.atoms.iter().map(|(a, x)| (*a, x * e)).collect()
            },
        }
    }

    pub fn adams(&self, r: u32) -> Self {
        let mut out = AtomProduct {
            scalar: self.scalar.clone(),
            mono: self.mono.pow(r as i32),
            atoms: BTreeMap::new(),
        };
        for (a, e) in &self.atoms {
            for b in a.adams(r) {
                out.push_atom(b, *e);
            }
        }
        out
    }

    /// Expand as `(numerator, denominator)` polynomials.
    pub fn to_fraction(&self) -> (MultiPoly, MultiPoly) {
        let (pos, neg) = self.mono.split();
        let mut num = MultiPoly::term(pos, self.scalar.clone());
        let mut den = MultiPoly::monomial(neg);
        for (a, e) in &self.atoms {
            let p = a.poly().pow(e.unsigned_abs());
            if *e > 0 {
                num = &num * &p;
            } else {
                den = &den * &p;
            }
        }
        (num, den)
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        let (n, d) = self.to_fraction();
        RationalFunction::from_coprime(n, d)
    }

    /// Image under a monomial map.
    pub fn map_monomials(&self, map: &MonomialMap) -> Result<Self> {
        let mut out = AtomProduct {
            scalar: self.scalar.clone(),
            mono: map.apply(&self.mono),
            atoms: BTreeMap::new(),
        };
        for (a, e) in &self.atoms {
            let img = map_atom(a, map)?;
            out = out.mul(&img.pow(*e));
        }
        Ok(out)
    }
}

fn map_atom(a: &Atom, map: &MonomialMap) -> Result<AtomProduct> {
    let phi = a.degree_weight() as i32;
    let (_, neg) = a.dir.split();
    let cleared = map.apply(&neg.to_laurent()).pow(phi);
    let image_dir = map.apply(&a.dir);
    let Some((u0, d, flipped)) = primitive_direction(&image_dir) else {
        // Φ_e(1)
        let value = cyclotomic(a.order).iter().sum::<i64>();
        if value == 0 {
            return Err(Error::SingularSpecialization);
        }
        return Ok(AtomProduct::scalar(rat(value)).mul(&AtomProduct::monomial(cleared)));
    };
    // Φ_e(Y) with Y = X0^{±d}, X0 = x^{u0}
    let mut out = AtomProduct::monomial(cleared);
    if flipped {
        out.mono = out.mono.mul(&u0.pow(-(d as i32) * phi));
        if a.order == 1 {
            out.scalar = -out.scalar;
        }
    }
    let (_, u0_neg) = u0.split();
    for b in (Atom {
        dir: u0,
        order: a.order,
    })
    .adams(d)
    {
        let w = b.degree_weight() as i32;
        out.mono = out.mono.mul(&u0_neg.to_laurent().pow(-w));
        out.push_atom(b, 1);
    }
    Ok(out)
}

/// `num · x^mono / Π den_atoms`, always fully reduced: `num` has no monomial
/// content and no denominator atom divides it. Structural equality is
/// therefore equality of values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloFraction {
    num: MultiPoly,
    mono: LaurentMonomial,
    den: BTreeMap<Atom, u32>,
}

impl CycloFraction {
    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn monomial_part(&self) -> LaurentMonomial {
        self.mono
    }

    pub fn denominator_atoms(&self) -> &BTreeMap<Atom, u32> {
        &self.den
    }

    fn from_parts(num: MultiPoly, mono: LaurentMonomial, den: BTreeMap<Atom, u32>) -> Self {
        if num.is_zero() {
            return Self::zero_value();
        }
        let content = num.min_monomial();
        if content.is_one() {
            CycloFraction { num, mono, den }
        } else {
            let num = num.div_monomial(&content).unwrap();
            CycloFraction {
                num,
                mono: mono.mul(&content.to_laurent()),
                den,
            }
        }
    }

    fn zero_value() -> Self {
        CycloFraction {
            num: MultiPoly::zero(),
            mono: LaurentMonomial::ONE,
            den: BTreeMap::new(),
        }
    }

    pub fn from_laurent_poly(p: &MultiPoly, shift: LaurentMonomial) -> Self {
        Self::from_parts(p.clone(), shift, BTreeMap::new())
    }

    pub fn from_atom_product(a: &AtomProduct) -> Self {
        CycloFraction::from_poly_value(&MultiPoly::constant(a.scalar.clone())).mul_atoms(
            &AtomProduct {
                scalar: Rational::one(),
                ..a.clone()
            },
        )
    }

    fn from_poly_value(p: &MultiPoly) -> Self {
        Self::from_parts(p.clone(), LaurentMonomial::ONE, BTreeMap::new())
    }

    /// Polynomial value, if the denominator is trivial and no negative
    /// exponents occur.
    pub fn to_poly(&self) -> Option<MultiPoly> {
        if !self.den.is_empty() {
            return None;
        }
        let m = self.mono.to_monomial()?;
        Some(self.num.mul_monomial(&m))
    }

    /// Laurent polynomial value as `(poly, shift)`, if the denominator is trivial.
    pub fn to_laurent_poly(&self) -> Option<(MultiPoly, LaurentMonomial)> {
        self.den.is_empty().then(|| (self.num.clone(), self.mono))
    }

    fn reduce_against(
        num: MultiPoly,
        den: &mut BTreeMap<Atom, u32>,
        candidates: &[Atom],
    ) -> MultiPoly {
        let mut num = num;
        for a in candidates {
            let Some(&e) = den.get(a) else { continue };
            let p = a.poly();
            let mut left = e;
            while left > 0 {
                match num.div_exact(&p) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left == 0 {
                den.remove(a);
            } else {
                den.insert(*a, left);
            }
        }
        num
    }

    /// Cancel atoms of `den` from `num` where possible; returns the reduced
    /// numerator and what remains of `den`.
    fn cancel(num: &MultiPoly, den: &BTreeMap<Atom, u32>) -> (MultiPoly, BTreeMap<Atom, u32>) {
        let mut den = den.clone();
        let atoms: Vec<Atom> = den.keys().copied().collect();
        let num = Self::reduce_against(num.clone(), &mut den, &atoms);
        (num, den)
    }

    /// Multiply by a product of atoms (any signs).
    pub fn mul_atoms(&self, a: &AtomProduct) -> Self {
        if self.num.is_zero() {
            return self.clone();
        }
        let mut num = self.num.scale(&a.scalar);
        let mono = self.mono.mul(&a.mono);
        let mut den = self.den.clone();
        let mut new_den = Vec::new();
        for (atom, &e) in &a.atoms {
            if e > 0 {
                let mut left = e as u32;
                if let Some(d) = den.get_mut(atom) {
                    let k = left.min(*d);
                    *d -= k;
                    left -= k;
                    if *d == 0 {
                        den.remove(atom);
                    }
                }
                if left > 0 {
                    num = &num * &atom.poly().pow(left);
                }
            } else {
                *den.entry(*atom).or_insert(0) += e.unsigned_abs();
                new_den.push(*atom);
            }
        }
        let num = Self::reduce_against(num, &mut den, &new_den);
        Self::from_parts(num, mono, den)
    }

    pub fn map_monomials(&self, map: &MonomialMap) -> Result<Self> {
        if self.num.is_zero() {
            return Ok(self.clone());
        }
        let (num, shift) = map.apply_poly(&self.num);
        let mut factor = AtomProduct::monomial(map.apply(&self.mono).mul(&shift));
        for (a, &e) in &self.den {
            factor = factor.mul(&map_atom(a, map)?.pow(-(e as i32)));
        }
        Ok(Self::from_parts(num, LaurentMonomial::ONE, BTreeMap::new()).mul_atoms(&factor))
    }

    /// Lowest term of the Laurent expansion in the single variable `v`:
    /// `(exponent, coefficient)`. All atoms must be in `v` alone.
    pub fn lowest_term(&self, v: Var) -> Result<(i64, Rational)> {
        if self.num.is_zero() {
            return Err(Error::InvalidArgument("zero has no lowest term".into()));
        }
        let mut coeff_den = Rational::one();
        for (a, &e) in &self.den {
            if a.dir != LaurentMonomial::var(v, 1) {
                return Err(Error::InvalidArgument(format!(
                    "atom {a:?} is not univariate in {v}"
                )));
            }
            let c0 = rat(cyclotomic(a.order)[0]);
            for _ in 0..e {
                coeff_den *= &c0;
            }
        }
        if self.num.var_mask() & !(1 << v.index()) != 0
            || self
                .mono
                .0
                .iter()
                .enumerate()
                .any(|(i, &x)| i != v.index() && x != 0)
        {
            return Err(Error::InvalidArgument(format!("not univariate in {v}")));
        }
        let (m, c) = self.num.terms().last().unwrap();
        let exp = self.mono.0[v.index()] as i64 + m.exp(v) as i64;
        Ok((exp, c / coeff_den))
    }
}

impl Coeff for CycloFraction {
    fn zero() -> Self {
        Self::zero_value()
    }

    fn one() -> Self {
        Self::from_poly_value(&MultiPoly::one())
    }

    fn from_rational(r: Rational) -> Self {
        Self::from_poly_value(&MultiPoly::constant(r))
    }

    fn from_poly(p: &MultiPoly) -> Self {
        Self::from_poly_value(p)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        add_impl(self, other, false)
    }

    fn sub(&self, other: &Self) -> Self {
        add_impl(self, other, true)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return Self::zero_value();
        }
        let (n1, d2) = Self::cancel(&self.num, &other.den);
        let (n2, d1) = Self::cancel(&other.num, &self.den);
        let mut den = d1;
        for (a, e) in d2 {
            *den.entry(a).or_insert(0) += e;
        }
        Self::from_parts(&n1 * &n2, self.mono.mul(&other.mono), den)
    }

    fn neg(&self) -> Self {
        CycloFraction {
            num: -&self.num,
            mono: self.mono,
            den: self.den.clone(),
        }
    }

    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero_value();
        }
        CycloFraction {
            num: self.num.scale(r),
            mono: self.mono,
            den: self.den.clone(),
        }
    }

    fn adams(&self, r: u32) -> Self {
        if r == 1 || self.num.is_zero() {
            return self.clone();
        }
        let mut den = BTreeMap::new();
        for (a, &e) in &self.den {
            for b in a.adams(r) {
                *den.entry(b).or_insert(0) += e;
            }
        }
        let atoms: Vec<Atom> = den.keys().copied().collect();
        let num = Self::reduce_against(self.num.adams(r), &mut den, &atoms);
        Self::from_parts(num, self.mono.pow(r as i32), den)
    }

    fn is_one(&self) -> bool {
        self.den.is_empty() && self.mono.is_one() && self.num.is_one()
    }
}

fn add_impl(a: &CycloFraction, b: &CycloFraction, negate: bool) -> CycloFraction {
    if b.num.is_zero() {
        return a.clone();
    }
    if a.num.is_zero() {
        return if negate { b.neg() } else { b.clone() };
    }
    let base = a.mono.meet(&b.mono);
    let mut den = a.den.clone();
    for (atom, &e) in &b.den {
        let entry = den.entry(*atom).or_insert(0);
        *entry = (*entry).max(e);
    }
    let cofactor = |x: &CycloFraction| -> MultiPoly {
        let shift = x.mono.mul(&base.inv()).to_monomial().unwrap();
        let mut p = x.num.mul_monomial(&shift);
        for (atom, &e) in &den {
            let have = x.den.get(atom).copied().unwrap_or(0);
            if e > have {
                p = &p * &atom.poly().pow(e - have);
            }
        }
        p
    };
    let pa = cofactor(a);
    let pb = cofactor(b);
    let num = if negate { &pa - &pb } else { &pa + &pb };
    if num.is_zero() {
        return CycloFraction::zero_value();
    }
    // an atom can only cancel if it had the same exponent on both sides
    let candidates: Vec<Atom> = den
        .iter()
        .filter(|(atom, &e)| a.den.get(atom) == Some(&e) && b.den.get(atom) == Some(&e))
        .map(|(atom, _)| *atom)
        .collect();
    let num = CycloFraction::reduce_against(num, &mut den, &candidates);
    CycloFraction::from_parts(num, base, den)
}

impl FieldCoeff for CycloFraction {
    fn mul_atoms(&self, a: &AtomProduct) -> Self {
        CycloFraction::mul_atoms(self, a)
    }

    fn to_rational_function(&self) -> RationalFunction {
        let (pos, neg) = self.mono.split();
        let num = self.num.mul_monomial(&pos);
        let mut den = MultiPoly::monomial(neg);
        for (a, &e) in &self.den {
            den = &den * &a.poly().pow(e);
        }
        RationalFunction::from_coprime(num, den)
    }
}

impl fmt::Display for CycloFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational_function())
    }
}

impl fmt::Debug for CycloFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) * {:?} / {:?}", self.num, self.mono.0, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ratio, Monomial};

    fn lm(pairs: &[(Var, i32)]) -> LaurentMonomial {
        let mut m = LaurentMonomial::ONE;
        for &(v, e) in pairs {
            m = m.mul(&LaurentMonomial::var(v, e));
        }
        m
    }

    fn poly_of(a: &AtomProduct) -> RationalFunction {
        a.to_rational_function()
    }

    fn binomial_poly(m1: &[(Var, u32)], sign: i64, m2: &[(Var, u32)]) -> MultiPoly {
        &MultiPoly::monomial(Monomial::from_pairs(m1))
            + &MultiPoly::term(Monomial::from_pairs(m2), rat(sign))
    }

    #[test]
    fn cyclotomic_table() {
        assert_eq!(*cyclotomic(1), vec![-1, 1]);
        assert_eq!(*cyclotomic(2), vec![1, 1]);
        assert_eq!(*cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic(12), vec![1, 0, -1, 0, 1]);
        let phi105 = cyclotomic(105);
        assert_eq!(phi105.len(), 49);
        assert!(phi105.contains(&-2));
    }

    #[test]
    fn binomials_factor_exactly() {
        let cases: Vec<(&[(Var, u32)], i64, &[(Var, u32)])> = vec![
            (&[(Var::Z, 4)], -1, &[(Var::W, 2)]),
            (&[(Var::W, 6)], -1, &[(Var::Z, 2)]),
            (&[(Var::Z, 3)], 1, &[(Var::W, 3)]),
            (&[(Var::Q, 2), (Var::T, 1)], -1, &[]),
            (&[], -1, &[(Var::Q, 4), (Var::T, 2)]),
            (&[(Var::Z, 3), (Var::W, 1)], -1, &[(Var::W, 5)]),
        ];
        for (m1, sign, m2) in cases {
            let p = binomial_poly(m1, sign, m2);
            let a = AtomProduct::from_binomial_poly(&p).unwrap();
            assert_eq!(poly_of(&a), RationalFunction::from_poly(p.clone()), "{p}");
            for r in 1..=4 {
                let lhs = poly_of(&a.adams(r));
                assert_eq!(
                    lhs,
                    RationalFunction::from_poly(p.adams(r)),
                    "adams {r} of {p}"
                );
            }
        }
    }

    #[test]
    fn monomial_maps_on_atoms() {
        let map = MonomialMap::identity()
            .with(Var::Z, lm(&[(Var::S, -1)]))
            .with(Var::W, lm(&[(Var::S, 1)]));
        let p = binomial_poly(&[(Var::Z, 4)], -1, &[(Var::W, 2)]);
        let a = AtomProduct::from_binomial_poly(&p).unwrap();
        let img = a.map_monomials(&map).unwrap();
        // s^-4 - s^2 = (1 - s^6)/s^4
        let expected = RationalFunction::new(
            binomial_poly(&[], -1, &[(Var::S, 6)]),
            MultiPoly::monomial(Monomial::var(Var::S, 4)),
        )
        .unwrap();
        assert_eq!(poly_of(&img), expected);
        // z - w ↦ 1/s - s ; z^2 - 1 is singular at z = w = 1 only when the image direction vanishes
        let flip = MonomialMap::identity().with(Var::T, lm(&[(Var::T, -1)]));
        let b = AtomProduct::one_minus(lm(&[(Var::Q, 1), (Var::T, 1)])).unwrap();
        let img = b.map_monomials(&flip).unwrap();
        let expected = RationalFunction::new(
            binomial_poly(&[(Var::T, 1)], -1, &[(Var::Q, 1)]),
            MultiPoly::var(Var::T),
        )
        .unwrap();
        assert_eq!(poly_of(&img), expected);
        let collapse = MonomialMap::identity().with(Var::Z, lm(&[(Var::W, 1)]));
        let c = AtomProduct::from_binomial_poly(&binomial_poly(&[(Var::Z, 1)], -1, &[(Var::W, 1)]))
            .unwrap();
        assert_eq!(
            c.map_monomials(&collapse),
            Err(Error::SingularSpecialization)
        );
    }

    #[test]
    fn fraction_arithmetic_reduces() {
        let d = AtomProduct::from_binomial_poly(&binomial_poly(&[(Var::Z, 2)], -1, &[])).unwrap();
        let one = CycloFraction::one();
        let x = one.mul_atoms(&d.inv()); // 1/(z^2-1)
        let z = CycloFraction::from_poly(&MultiPoly::var(Var::Z));
        // z^2/(z^2-1) - 1/(z^2-1) = 1
        let lhs = z.mul(&z).mul(&x).sub(&x);
        assert!(lhs.is_one());
        // (z+1) * 1/(z^2-1) = 1/(z-1)
        let zp1 = CycloFraction::from_poly(&(&MultiPoly::var(Var::Z) + &MultiPoly::one()));
        let prod = zp1.mul(&x);
        assert_eq!(prod.denominator_atoms().len(), 1);
        assert_eq!(
            prod.to_rational_function(),
            RationalFunction::new(
                MultiPoly::one(),
                &MultiPoly::var(Var::Z) - &MultiPoly::one()
            )
            .unwrap()
        );
        assert_eq!(x.add(&x), x.scale(&rat(2)));
        assert_eq!(
            x.adams(2).to_rational_function(),
            RationalFunction::new(MultiPoly::one(), binomial_poly(&[(Var::Z, 4)], -1, &[]))
                .unwrap()
        );
        let _ = ratio(1, 2);
    }

    #[test]
    fn lowest_term_in_s() {
        // s^2 / (1 - s^2)^2 → lowest term s^2 with coefficient 1
        let d = AtomProduct::one_minus(lm(&[(Var::S, 2)])).unwrap();
        let f = CycloFraction::from_poly(&MultiPoly::var_pow(Var::S, 2)).mul_atoms(&d.pow(-2));
        assert_eq!(f.lowest_term(Var::S).unwrap(), (2, rat(1)));
        let g = CycloFraction::from_poly(&MultiPoly::from_int(3)).mul_atoms(&d.pow(-1));
        assert_eq!(g.lowest_term(Var::S).unwrap(), (0, rat(3)));
    }
}
