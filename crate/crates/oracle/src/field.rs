//! Finite fields with at most 255 elements, realized as residue polynomials
//! modulo a fixed irreducible, with full operation tables.

use crate::{OracleError, Result};

/// Element `k` of `GF(p^d)` is the polynomial whose base-`p` digits are the
/// coefficients of `k`, low degree first. `0` and `1` are the field's zero
/// and one.
pub type Elem = u8;

/// Fixed irreducibles `x^d + c_{d-1}x^{d-1} + ... + c_0`, stored as `[c_0, ..., c_{d-1}]`.
const IRREDUCIBLES: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (3, 2, &[1, 0]),
    (3, 3, &[1, 2, 0]),
    (5, 2, &[2, 0]),
    (7, 2, &[1, 0]),
];

#[derive(Clone, Debug)]
pub struct SmallField {
    p: u32,
    d: u32,
    q: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..n)
            .take_while(|i| i * i <= n)
            .all(|i| !n.is_multiple_of(i))
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|p| q.is_multiple_of(*p))?;
    if !is_prime(p) {
        return None;
    }
    let (mut m, mut d) = (q, 0);
    while m % p == 0 {
        m /= p;
        d += 1;
    }
    (m == 1).then_some((p, d))
}

impl SmallField {
    /// `GF(q)` for a prime power `q ≤ 255` with a tabulated irreducible.
    pub fn new(q: u32) -> Result<Self> {
        let (p, d) = prime_power(q).ok_or(OracleError::UnsupportedField(q))?;
        if q > 255 {
            return Err(OracleError::UnsupportedField(q));
        }
        let modulus: Vec<u32> = if d == 1 {
            Vec::new()
        } else {
            IRREDUCIBLES
                .iter()
                .find(|(pp, dd, _)| *pp == p && *dd == d)
                .map(|(_, _, c)| c.to_vec())
                .ok_or(OracleError::UnsupportedField(q))?
        };
        let qs = q as usize;
        let digits = |k: usize| -> Vec<u32> {
            let mut v = Vec::with_capacity(d as usize);
            let mut k = k as u32;
            for _ in 0..d {
                v.push(k % p);
                k /= p;
            }
            v
        };
        let number =
            |v: &[u32]| -> Elem { v.iter().rev().fold(0u32, |acc, &c| acc * p + c) as Elem };
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..qs {
            let da = digits(a);
            for b in 0..qs {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = number(&sum);
                let mut prod = vec![0u32; 2 * d as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce with x^d = -Σ c_i x^i
                for top in (d as usize..prod.len()).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    prod[top] = 0;
                    for (i, m) in modulus.iter().enumerate() {
                        let idx = top - d as usize + i;
                        prod[idx] = (prod[idx] + (p - m % p) % p * c) % p;
                    }
                }
                mul[a * qs + b] = number(&prod[..d as usize]);
            }
        }
        let neg = (0..qs)
            .map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as Elem)
            .collect();
        let mut inv = vec![0; qs];
        for a in 1..qs {
            inv[a] = (1..qs)
                .find(|&b| mul[a * qs + b] == 1)
                .ok_or(OracleError::UnsupportedField(q))? as Elem;
        }
        Ok(SmallField {
            p,
            d,
            q: qs,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|a| a as Elem)
    }

    pub fn units(&self) -> impl Iterator<Item = Elem> {
        (1..self.q).map(|a| a as Elem)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms_spot_check() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49] {
            let f = SmallField::new(q).unwrap();
            assert_eq!(f.elements().count(), q as usize);
            for a in f.units() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            let p = f.characteristic() as u64;
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
        }
        assert!(SmallField::new(6).is_err());
        assert!(SmallField::new(1).is_err());
    }
}
