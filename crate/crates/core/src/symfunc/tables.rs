//! Per-degree transition data between the classical bases, all expressed
//! through power sums.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::arith::{rat, Rational};
use crate::partitions::{enumerate_partitions, Partition};

pub struct DegreeTables {
    pub n: u32,
    /// Partitions of `n` in reverse lexicographic order.
    pub parts: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
    pub z: Vec<Rational>,
    pub sign: Vec<i64>,
    /// `chi[λ][ρ]`, the irreducible character `χ^λ` at cycle type `ρ`.
    pub chi: Vec<Vec<i64>>,
    /// `p_to_m[ρ][μ]`: coefficient of `m_μ` in `p_ρ`.
    pub p_to_m: Vec<Vec<i64>>,
    /// `m_to_p[μ][ρ]`: coefficient of `p_ρ` in `m_μ`.
    pub m_to_p: Vec<Vec<Rational>>,
}

impl DegreeTables {
    pub fn idx(&self, p: &Partition) -> usize {
        self.index[p]
    }
}

pub fn tables(n: u32) -> Arc<DegreeTables> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<DegreeTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(build(n));
    cache.lock().unwrap().insert(n, t.clone());
    t
}

fn build(n: u32) -> DegreeTables {
    let parts = enumerate_partitions(n);
    let index: HashMap<Partition, usize> = parts
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let z = parts
        .iter()
        .map(|p| Rational::from_integer((p.z()).into()))
        .collect();
    let sign = parts.iter().map(Partition::sign).collect();
    let mut memo = HashMap::new();
    let chi = parts
        .iter()
        .map(|l| {
            parts
                .iter()
                .map(|r| character(l, r.parts(), &mut memo))
                .collect()
        })
        .collect();
    let p_to_m: Vec<Vec<i64>> = parts
        .iter()
        .map(|rho| {
            parts
                .iter()
                .map(|mu| bin_fillings(rho.parts(), mu.parts()))
                .collect()
        })
        .collect();
    let m_to_p = invert(&p_to_m);
    DegreeTables {
        n,
        parts,
        index,
        z,
        sign,
        chi,
        p_to_m,
        m_to_p,
    }
}

/// Murnaghan–Nakayama on beta-sets: remove a rim hook of length `rho[0]`.
fn character(
    lambda: &Partition,
    rho: &[u32],
    memo: &mut HashMap<(Partition, Vec<u32>), i64>,
) -> i64 {
    if rho.is_empty() {
        return if lambda.is_empty() { 1 } else { 0 };
    }
    let key = (lambda.clone(), rho.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = rho[0];
    let l = lambda.len();
    let beta: Vec<i64> = (0..l)
        .map(|i| lambda.part(i) as i64 + (l - 1 - i) as i64)
        .collect();
    let mut total = 0;
    for i in 0..l {
        let target = beta[i] - r as i64;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&b| b > target && b < beta[i]).count();
        let mut nb = beta.clone();
        nb[i] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let len = nb.len();
        let parts: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(j, &b)| (b - (len - 1 - j) as i64) as u32)
            .collect();
        let sub = Partition::from_unsorted(parts);
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * character(&sub, &rho[1..], memo);
    }
    memo.insert(key, total);
    total
}

/// Number of ways to place the parts of `rho` into bins of sizes `mu`.
fn bin_fillings(rho: &[u32], mu: &[u32]) -> i64 {
    fn rec(rho: &[u32], bins: &mut Vec<u32>) -> i64 {
        let Some((&first, rest)) = rho.split_first() else {
            return if bins.iter().all(|&b| b == 0) { 1 } else { 0 };
        };
        let mut total = 0;
        for i in 0..bins.len() {
            if bins[i] >= first {
                bins[i] -= first;
                total += rec(rest, bins);
                bins[i] += first;
            }
        }
        total
    }
    rec(rho, &mut mu.to_vec())
}

fn invert(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| rat(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("transition matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].recip();
        for j in 0..n {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let x = &a[col][j] * &f;
                    a[r][j] -= x;
                    let y = &inv[col][j] * &f;
                    inv[r][j] -= y;
                }
            }
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_table_of_s3() {
        let t = tables(3);
        // rows (3),(2,1),(1,1,1); columns likewise
        assert_eq!(t.chi, vec![vec![1, 1, 1], vec![-1, 0, 2], vec![1, -1, 1]]);
    }

    #[test]
    fn column_orthogonality() {
        for n in 1..=6 {
            let t = tables(n);
            let len = t.parts.len();
            for a in 0..len {
                for b in 0..len {
                    let s: i64 = (0..len).map(|l| t.chi[l][a] * t.chi[l][b]).sum();
                    let expected = if a == b { t.parts[a].z() as i64 } else { 0 };
                    assert_eq!(s, expected);
                }
            }
        }
    }

    #[test]
    fn power_sum_to_monomial() {
        let t = tables(2);
        // p_2 = m_2, p_{1,1} = m_2 + 2 m_{1,1}
        assert_eq!(t.p_to_m, vec![vec![1, 0], vec![1, 2]]);
        assert_eq!(
            t.m_to_p[1],
            vec![crate::arith::ratio(-1, 2), crate::arith::ratio(1, 2)]
        );
    }
}
