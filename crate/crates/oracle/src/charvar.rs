//! Point counts of genus-`g` character varieties with `k` semisimple
//! punctures over `F_q`, by convolving histograms on `GL_n(F_q)`.

use std::collections::BTreeSet;

use crate::field::{Elem, SmallField};
use crate::matrix::{encode, general_linear, gl_order, mul_sq, Mat};
use crate::{OracleError, Result, STEP_BUDGET};

/// Eigenvalues with multiplicities, one entry per puncture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTuple {
    pub n: u32,
    pub classes: Vec<Vec<(Elem, u32)>>,
}

/// All ways to pick `len` distinct units, in lexicographic order.
fn distinct_tuples(f: &SmallField, len: usize) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(f: &SmallField, len: usize, cur: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for a in f.units() {
            if !cur.contains(&a) {
                cur.push(a);
                rec(f, len, cur, out);
                cur.pop();
            }
        }
    }
    rec(f, len, &mut cur, &mut out);
    out
}

/// Products `Π α_j^{c_j}` over all sub-multisets, indexed by their size.
fn sub_products(f: &SmallField, class: &[(Elem, u32)], n: u32) -> Vec<BTreeSet<Elem>> {
    let mut out = vec![BTreeSet::new(); n as usize + 1];
    out[0].insert(1);
    for &(a, m) in class {
        let mut next = vec![BTreeSet::new(); n as usize + 1];
        for (size, prods) in out.iter().enumerate() {
            for &x in prods {
                let mut v = x;
                for c in 0..=m as usize {
                    if size + c <= n as usize {
                        next[size + c].insert(v);
                    }
                    v = f.mul(v, a);
                }
            }
        }
        out = next;
    }
    out
}

/// The product condition holds and no proper sub-multiset product is 1.
pub fn is_generic(f: &SmallField, tuple: &ClassTuple) -> bool {
    let n = tuple.n as usize;
    let mut combined = vec![BTreeSet::from([1 as Elem]); n + 1];
    for class in &tuple.classes {
        let subs = sub_products(f, class, tuple.n);
        for (size, set) in combined.iter_mut().enumerate() {
            *set = set
                .iter()
                .flat_map(|&x| subs[size].iter().map(move |&y| f.mul(x, y)))
                .collect();
        }
    }
    combined[n].contains(&1) && (1..n).all(|s| !combined[s].contains(&1))
}

/// First generic tuple of type `mu` in lexicographic order of eigenvalues,
/// or `None` if there is none over `F_q`.
pub fn generic_class_tuple_search(mu: &[Vec<u32>], f: &SmallField) -> Option<ClassTuple> {
    let n: u32 = mu.first()?.iter().sum();
    if mu.iter().any(|p| p.iter().sum::<u32>() != n) {
        return None;
    }
    let choices: Vec<Vec<Vec<Elem>>> = mu.iter().map(|p| distinct_tuples(f, p.len())).collect();
    if choices.iter().any(|c| c.is_empty()) {
        return None;
    }
    let mut idx = vec![0usize; mu.len()];
    loop {
        let classes: Vec<Vec<(Elem, u32)>> = mu
            .iter()
            .zip(&choices)
            .zip(&idx)
            .map(|((p, c), &i)| c[i].iter().copied().zip(p.iter().copied()).collect())
            .collect();
        let tuple = ClassTuple { n, classes };
        if is_generic(f, &tuple) {
            return Some(tuple);
        }
        let mut a = 0;
        loop {
            idx[a] += 1;
            if idx[a] < choices[a].len() {
                break;
            }
            idx[a] = 0;
            a += 1;
            if a == idx.len() {
                return None;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCount {
    pub raw: u64,
    pub quotient: u64,
    pub budget_steps: u64,
}

fn diag(n: usize, eigs: &[(Elem, u32)]) -> Mat {
    let mut d = vec![0; n * n];
    let mut i = 0;
    for &(a, m) in eigs {
        for _ in 0..m {
            d[i * n + i] = a;
            i += 1;
        }
    }
    d
}

/// Counts `(A_1, B_1, ..., A_g, B_g, X_1, ..., X_k)` with
/// `[A_1,B_1]⋯[A_g,B_g] X_1⋯X_k = I`, `X_i` in the class of `tuple`, and
/// divides by `|PGL_n(F_q)|`.
///
/// The work is `g·|GL_n|² + |GL_n|·Σ|C_i|` products, which must stay
/// within the step budget.
pub fn char_variety_point_count(g: u32, tuple: &ClassTuple, f: &SmallField) -> Result<PointCount> {
    let n = tuple.n as usize;
    let q = f.size() as u64;
    let group_order = gl_order(q, tuple.n);
    let pgl = group_order / (q - 1);
    let gl_size = group_order;
    let rough = g as u64 * gl_size * gl_size + tuple.classes.len() as u64 * gl_size;
    if rough > STEP_BUDGET {
        return Err(OracleError::InstanceTooLarge {
            steps: rough,
            budget: STEP_BUDGET,
        });
    }
    let gl = general_linear(f, n);
    let codes = f.size().pow((n * n) as u32);
    let code_of = |m: &Mat| encode(f, m);
    let mut mats: Vec<Option<Mat>> = vec![None; codes];
    for (m, _) in &gl {
        mats[code_of(m)] = Some(m.clone());
    }
    let classes: Vec<Vec<Mat>> = tuple
        .classes
        .iter()
        .map(|eigs| {
            let d = diag(n, eigs);
            let set: BTreeSet<Mat> = gl
                .iter()
                .map(|(p, pi)| mul_sq(f, &mul_sq(f, p, &d, n), pi, n))
                .collect();
            set.into_iter().collect()
        })
        .collect();
    let budget_steps = g as u64 * gl_size * gl_size
        + classes
            .iter()
            .map(|c| c.len() as u64 * gl_size)
            .sum::<u64>();
    if budget_steps > STEP_BUDGET {
        return Err(OracleError::InstanceTooLarge {
            steps: budget_steps,
            budget: STEP_BUDGET,
        });
    }

    let convolve = |h: &[u64], elems: &[(usize, u64)]| -> Vec<u64> {
        let mut out = vec![0u64; codes];
        for (x, &hx) in h.iter().enumerate() {
            if hx == 0 {
                continue;
            }
            let mx = mats[x].as_ref().expect("histogram supported on GL_n");
            for &(y, cy) in elems {
                let my = mats[y].as_ref().unwrap();
                out[code_of(&mul_sq(f, mx, my, n))] += hx * cy;
            }
        }
        out
    };

    let id = crate::matrix::identity(n);
    let mut delta = vec![0u64; codes];
    delta[code_of(&id)] = 1;

    // commutator histogram
    let mut hist = delta.clone();
    if g > 0 {
        let mut comm = vec![0u64; codes];
        for (a, ai) in &gl {
            for (b, bi) in &gl {
                let c = mul_sq(f, &mul_sq(f, a, b, n), &mul_sq(f, ai, bi, n), n);
                comm[code_of(&c)] += 1;
            }
        }
        let support: Vec<(usize, u64)> = comm
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i, c))
            .collect();
        for _ in 0..g {
            hist = convolve(&hist, &support);
        }
    }
    let mut classes_hist = delta;
    for class in &classes {
        let elems: Vec<(usize, u64)> = class.iter().map(|m| (code_of(m), 1)).collect();
        classes_hist = convolve(&classes_hist, &elems);
    }
    let mut raw = 0u64;
    for (x, &hx) in hist.iter().enumerate() {
        if hx == 0 {
            continue;
        }
        let inv = crate::matrix::inverse(f, mats[x].as_ref().unwrap(), n).unwrap();
        raw += hx * classes_hist[code_of(&inv)];
    }
    if !raw.is_multiple_of(pgl) {
        return Err(OracleError::GenericityViolated { raw, pgl });
    }
    Ok(PointCount {
        raw,
        quotient: raw / pgl,
        budget_steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn search_examples() {
        let f5 = SmallField::new(5).unwrap();
        let t = generic_class_tuple_search(&[vec![1, 1]], &f5).unwrap();
        assert_eq!(t.classes, vec![vec![(2, 1), (3, 1)]]);
        let f3 = SmallField::new(3).unwrap();
        assert!(generic_class_tuple_search(&[vec![1, 1]], &f3).is_none());
        let one = generic_class_tuple_search(&[vec![1]], &f3).unwrap();
        assert_eq!(one.classes, vec![vec![(1, 1)]]);
    }

    #[test]
    fn small_counts() {
        let f3 = SmallField::new(3).unwrap();
        let t = generic_class_tuple_search(&[vec![1]], &f3).unwrap();
        let c = char_variety_point_count(1, &t, &f3).unwrap();
        assert_eq!((c.raw, c.quotient), (4, 4));
        let f5 = SmallField::new(5).unwrap();
        let t = generic_class_tuple_search(&[vec![1, 1], vec![1, 1], vec![1, 1]], &f5).unwrap();
        let c = char_variety_point_count(0, &t, &f5).unwrap();
        assert_eq!((c.raw, c.quotient), (120, 1));
    }
}
