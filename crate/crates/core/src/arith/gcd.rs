//! Multivariate gcd over the rationals by recursive primitive
//! pseudo-remainder sequences. Adequate for the moderate sizes the general
//! rational-function type sees; the heavy kernel paths avoid gcds entirely.

use num_traits::Zero;

use super::monomial::{Var, NVARS};
use super::poly::MultiPoly;
use super::Rational;

/// Monic greatest common divisor (`gcd(0, 0) = 0`).
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let ma = a.min_monomial();
    let mb = b.min_monomial();
    let mono = ma.gcd(&mb);
    let a1 = a.div_monomial(&ma).expect("min monomial divides");
    let b1 = b.div_monomial(&mb).expect("min monomial divides");
    gcd_rec(&a1, &b1).mul_monomial(&mono).monic()
}

fn vars_of(mask: u8) -> impl Iterator<Item = Var> {
    (0..NVARS)
        .filter(move |i| mask & (1 << i) != 0)
        .map(|i| Var::ALL[i])
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    if a == b {
        return a.clone();
    }
    let ma = a.var_mask();
    let mb = b.var_mask();
    if let Some(v) = vars_of(ma & !mb).next() {
        return gcd_rec(&content_in(a, v), b);
    }
    if let Some(v) = vars_of(mb & !ma).next() {
        return gcd_rec(a, &content_in(b, v));
    }
    let common = ma & mb;
    if common.count_ones() == 1 {
        let v = vars_of(common).next().unwrap();
        return univariate_gcd(a, b, v);
    }
    let v = vars_of(common)
        .min_by_key(|&v| a.degree(v).max(b.degree(v)))
        .unwrap();
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_rec(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_prs(pa, pb, v);
    &c * &g
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in(p: &MultiPoly, v: Var) -> MultiPoly {
    let mut coeffs: Vec<MultiPoly> = p
        .coeffs_in(v)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    coeffs.sort_by_key(|c| c.len());
    let mut it = coeffs.into_iter();
    let mut g = match it.next() {
        Some(c) => c,
        None => return MultiPoly::zero(),
    };
    for c in it {
        if g.is_constant() {
            break;
        }
        g = gcd_rec(&g, &c);
    }
    if g.is_constant() {
        MultiPoly::one()
    } else {
        g.monic()
    }
}

fn primitive_part(p: &MultiPoly, v: Var) -> MultiPoly {
    let c = content_in(p, v);
    let q = if c.is_one() {
        p.clone()
    } else {
        p.div_exact(&c).expect("content divides")
    };
    let rc = q.rational_content();
    q.scale(&rc.recip())
}

fn primitive_prs(a: MultiPoly, b: MultiPoly, v: Var) -> MultiPoly {
    let (mut f, mut g) = if a.degree(v) >= b.degree(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = pseudo_remainder(&f, &g, v);
        if r.is_zero() {
            return primitive_part(&g, v);
        }
        if r.degree(v) == 0 {
            return MultiPoly::one();
        }
        f = g;
        g = primitive_part(&r, v);
    }
}

/// Pseudo-remainder of `f` by `g` in `v`, up to a factor free of `v`.
fn pseudo_remainder(f: &MultiPoly, g: &MultiPoly, v: Var) -> MultiPoly {
    let gc = g.coeffs_in(v);
    let n = gc.len() - 1;
    let lc = &gc[n];
    let mut r = f.coeffs_in(v);
    trim(&mut r);
    while r.len() > n && !r.is_empty() {
        let d = r.len() - 1;
        let lr = r[d].clone();
        for c in r.iter_mut() {
            *c = &*c * lc;
        }
        for (i, gci) in gc.iter().enumerate() {
            let idx = i + d - n;
            r[idx] = &r[idx] - &(&lr * gci);
        }
        debug_assert!(r[d].is_zero());
        trim(&mut r);
        // keep integer coefficients small
        if let Some(content) = joint_rational_content(&r) {
            for c in r.iter_mut() {
                *c = c.scale(&content.recip());
            }
        }
    }
    MultiPoly::from_coeffs_in(v, &r)
}

fn joint_rational_content(r: &[MultiPoly]) -> Option<Rational> {
    let mut acc: Option<Rational> = None;
    for c in r {
        if c.is_zero() {
            continue;
        }
        let rc = c.rational_content();
        acc = Some(match acc {
            None => rc,
            Some(a) => rational_gcd(&a, &rc),
        });
    }
    acc
}

fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    use num_integer::Integer;
    Rational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

fn trim(r: &mut Vec<MultiPoly>) {
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
}

fn univariate_gcd(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
    let to_dense = |p: &MultiPoly| -> Vec<Rational> {
        let mut d = vec![Rational::zero(); p.degree(v) as usize + 1];
        for (m, c) in p.terms() {
            d[m.exp(v) as usize] = c.clone();
        }
        d
    };
    let mut f = to_dense(a);
    let mut g = to_dense(b);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    make_monic(&mut g);
    while !(g.len() == 1 && g[0].is_zero()) && !g.is_empty() {
        let r = dense_rem(&f, &g);
        f = g;
        g = r;
        if g.is_empty() {
            break;
        }
        make_monic(&mut g);
    }
    MultiPoly::from_terms(
        f.into_iter()
            .enumerate()
            .map(|(i, c)| (super::Monomial::var(v, i as u32), c)),
    )
}

fn make_monic(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if let Some(lc) = p.last().cloned() {
        let inv = num_traits::Inv::inv(lc);
        for c in p.iter_mut() {
            *c = &*c * &inv;
        }
    }
}

/// Remainder of dense `f` by monic dense `g`; trailing zeros trimmed.
fn dense_rem(f: &[Rational], g: &[Rational]) -> Vec<Rational> {
    let mut r = f.to_vec();
    let n = g.len() - 1;
    while r.len() > n {
        let d = r.len() - 1;
        let lr = r[d].clone();
        if !lr.is_zero() {
            for i in 0..=n {
                let idx = i + d - n;
                r[idx] = &r[idx] - &(&lr * &g[i]);
            }
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn z() -> MultiPoly {
        MultiPoly::var(Var::Z)
    }
    fn w() -> MultiPoly {
        MultiPoly::var(Var::W)
    }
    fn q() -> MultiPoly {
        MultiPoly::var(Var::Q)
    }
    fn one() -> MultiPoly {
        MultiPoly::one()
    }

    #[test]
    fn univariate_common_factor() {
        let a = &(&z() - &one()) * &(&z() + &rat_poly(2));
        let b = &(&z() - &one()) * &(&z() + &rat_poly(3));
        assert_eq!(poly_gcd(&a, &b), &z() - &one());
    }

    fn rat_poly(n: i64) -> MultiPoly {
        MultiPoly::constant(rat(n))
    }

    #[test]
    fn bivariate_common_factor() {
        let common = &(&z() * &w()) - &one();
        let a = &common * &(&z() + &w()).pow(2);
        let b = &common * &(&z() - &q());
        assert_eq!(poly_gcd(&a, &b), common.monic());
    }

    #[test]
    fn coprime_gives_one() {
        let a = (&z() - &w()).pow(2);
        let b = &(&z().pow(2) - &one()) * &(&one() - &w().pow(2));
        assert!(poly_gcd(&a, &b).is_one());
    }

    #[test]
    fn monomial_content_is_kept() {
        let a = &z().pow(3) * &w();
        let b = &z().pow(2) * &(&w() + &one());
        assert_eq!(poly_gcd(&a, &b), z().pow(2));
    }

    #[test]
    fn trivariate_with_content() {
        let f1 = &(&z() + &w()) + &q();
        let f2 = &(&w() * &q()) - &rat_poly(2);
        let a = &(&f1 * &f2) * &(&z() - &q());
        let b = &(&f1 * &f2.pow(2)) * &(&w() + &rat_poly(5));
        assert_eq!(poly_gcd(&a, &b), (&f1 * &f2).monic());
    }
}
