//! Dense square and rectangular matrices over a `SmallField`, stored row-major.

use crate::field::{Elem, SmallField};

pub type Mat = Vec<Elem>;

pub fn identity(n: usize) -> Mat {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// `(r × k) · (k × c)`.
pub fn mul(f: &SmallField, a: &[Elem], b: &[Elem], r: usize, k: usize, c: usize) -> Mat {
    let mut out = vec![0; r * c];
    for i in 0..r {
        for l in 0..k {
            let x = a[i * k + l];
            if x == 0 {
                continue;
            }
            for j in 0..c {
                out[i * c + j] = f.add(out[i * c + j], f.mul(x, b[l * c + j]));
            }
        }
    }
    out
}

pub fn mul_sq(f: &SmallField, a: &[Elem], b: &[Elem], n: usize) -> Mat {
    mul(f, a, b, n, n, n)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(f: &SmallField, m: &mut [Elem], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
            continue;
        };
        for j in 0..cols {
            m.swap(r * cols + j, p * cols + j);
        }
        let inv = f.inv(m[r * cols + c]).unwrap();
        for j in 0..cols {
            m[r * cols + j] = f.mul(m[r * cols + j], inv);
        }
        for i in 0..rows {
            let factor = m[i * cols + c];
            if i != r && factor != 0 {
                for j in 0..cols {
                    let v = f.mul(factor, m[r * cols + j]);
                    m[i * cols + j] = f.sub(m[i * cols + j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Inverse of an invertible `n × n` matrix.
pub fn inverse(f: &SmallField, a: &[Elem], n: usize) -> Option<Mat> {
    let cols = 2 * n;
    let mut aug = vec![0; n * cols];
    for i in 0..n {
        aug[i * cols..i * cols + n].copy_from_slice(&a[i * n..i * n + n]);
        aug[i * cols + n + i] = 1;
    }
    let pivots = rref(f, &mut aug, n, cols);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(
        (0..n)
            .flat_map(|i| aug[i * cols + n..(i + 1) * cols].to_vec())
            .collect(),
    )
}

/// Basis of the null space of an `rows × cols` matrix.
pub fn nullspace(f: &SmallField, m: &[Elem], rows: usize, cols: usize) -> Vec<Vec<Elem>> {
    let mut a = m.to_vec();
    let pivots = rref(f, &mut a, rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(a[r * cols + fc]);
            }
            v
        })
        .collect()
}

/// Base-`q` code of a vector of field elements.
pub fn encode(f: &SmallField, m: &[Elem]) -> usize {
    m.iter().fold(0usize, |acc, &x| acc * f.size() + x as usize)
}

pub fn decode(f: &SmallField, mut code: usize, len: usize) -> Vec<Elem> {
    let mut v = vec![0; len];
    for slot in v.iter_mut().rev() {
        *slot = (code % f.size()) as Elem;
        code /= f.size();
    }
    v
}

/// All invertible `n × n` matrices with their inverses.
pub fn general_linear(f: &SmallField, n: usize) -> Vec<(Mat, Mat)> {
    let total = f.size().pow((n * n) as u32);
    (0..total)
        .filter_map(|code| {
            let m = decode(f, code, n * n);
            inverse(f, &m, n).map(|inv| (m, inv))
        })
        .collect()
}

/// `|GL_n(F_q)| = Π_{i<n} (qⁿ - qⁱ)`.
pub fn gl_order(q: u64, n: u32) -> u64 {
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_orders_match_enumeration() {
        for (n, q) in [(1, 2), (1, 3), (1, 5), (2, 2), (2, 3)] {
            let f = SmallField::new(q).unwrap();
            assert_eq!(
                general_linear(&f, n).len() as u64,
                gl_order(q as u64, n as u32)
            );
        }
        assert_eq!(gl_order(2, 2), 6);
    }

    #[test]
    fn inverse_round_trip() {
        let f = SmallField::new(4).unwrap();
        for (m, inv) in general_linear(&f, 2) {
            assert_eq!(mul_sq(&f, &m, &inv, 2), identity(2));
        }
    }
}
