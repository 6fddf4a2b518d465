//! Partitions, multipartitions and comet-shaped dimension vectors.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;
use serde::{Deserialize, Serialize};

use crate::arith::{rat, AtomProduct, LaurentMonomial, MultiPoly, Var};
use crate::error::{Error, Result};

/// Integer partition; parts are positive and weakly decreasing.
///
/// The derived ordering is lexicographic on the parts, so sorting in
/// descending order gives reverse lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "partition {parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sort and drop zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(n)`.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: u32) -> Self {
        Partition(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), or 0 beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition(
            (1..=first)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    /// Cells as 0-based `(row, column)` pairs, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p as usize).map(move |j| (i, j)))
    }

    /// `(arm, leg)` of every cell, in [`cells`](Self::cells) order.
    pub fn arms_legs(&self) -> Vec<(u32, u32)> {
        let conj = self.conjugate();
        self.cells()
            .map(|(i, j)| (self.0[i] - j as u32 - 1, conj.0[j] - i as u32 - 1))
            .collect()
    }

    pub fn hooks(&self) -> Vec<u32> {
        self.arms_legs()
            .into_iter()
            .map(|(a, l)| a + l + 1)
            .collect()
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// Multiplicities `m_i` as `(i, m_i)` for parts that occur, increasing `i`.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in self.0.iter().rev() {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `z_λ = Π i^{m_i} m_i!`.
    pub fn z(&self) -> u128 {
        self.multiplicities()
            .into_iter()
            .map(|(i, m)| (i as u128).pow(m) * (1..=m as u128).product::<u128>())
            .product()
    }

    /// Sign of a permutation of this cycle type.
    pub fn sign(&self) -> i64 {
        let even_cycles = self.0.iter().filter(|&&p| p % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    pub fn gcd_of_parts(&self) -> u32 {
        self.0.iter().fold(0, |g, &p| g.gcd(&p))
    }

    /// Parts divided by `r`, if all are divisible.
    pub fn divide(&self, r: u32) -> Option<Partition> {
        self.0
            .iter()
            .all(|p| p % r == 0)
            .then(|| Partition(self.0.iter().map(|p| p / r).collect()))
    }

    /// Parts multiplied by `r`.
    pub fn scale(&self, r: u32) -> Partition {
        Partition(self.0.iter().map(|p| p * r).collect())
    }

    /// Union of parts (concatenate and sort).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::from_unsorted(v)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// `"3,2,1"`; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad part {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Per-cell statistics, 1-based coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CellStats {
    pub row: u32,
    pub col: u32,
    pub arm: u32,
    pub leg: u32,
    pub hook: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub cells: Vec<CellStats>,
    pub n_lambda: u64,
    pub z_lambda: u128,
    pub conjugate: Partition,
}

pub fn partition_stats(lambda: &Partition) -> PartitionStats {
    let cells = lambda
        .cells()
        .zip(lambda.arms_legs())
        .map(|((i, j), (arm, leg))| CellStats {
            row: i as u32 + 1,
            col: j as u32 + 1,
            arm,
            leg,
            hook: arm + leg + 1,
        })
        .collect();
    PartitionStats {
        cells,
        n_lambda: lambda.n(),
        z_lambda: lambda.z(),
        conjugate: lambda.conjugate(),
    }
}

/// `H_λ(q) = Π_cells (1 - q^h)`.
pub fn hook_polynomial(lambda: &Partition) -> MultiPoly {
    let q = MultiPoly::var(Var::Q);
    lambda.hooks().into_iter().fold(MultiPoly::one(), |acc, h| {
        &acc * &(&MultiPoly::one() - &q.pow(h))
    })
}

/// `H_λ` in factored form, for use with cyclotomic fractions.
pub fn hook_polynomial_factored(lambda: &Partition, var: Var, scale: i32) -> AtomProduct {
    lambda
        .hooks()
        .into_iter()
        .fold(AtomProduct::one(), |acc, h| {
            acc.mul(&AtomProduct::one_minus(LaurentMonomial::var(var, scale * h as i32)).unwrap())
        })
}

/// All partitions of `n` in reverse lexicographic order.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(n: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(current.clone()));
            return;
        }
        for p in (1..=max.min(n)).rev() {
            current.push(p);
            rec(n - p, p, current, out);
            current.pop();
        }
    }
    rec(n, n, &mut current, &mut out);
    out
}

/// Tuple of `k` partitions of a common size.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiPartition(Vec<Partition>);

impl MultiPartition {
    pub fn new(components: Vec<Partition>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::InvalidArgument(
                "multipartition needs at least one component".into(),
            ));
        };
        let n = first.size();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "multipartition components must be nonempty".into(),
            ));
        }
        if components.iter().any(|c| c.size() != n) {
            return Err(Error::InvalidArgument(format!(
                "components of {} have different sizes",
                MultiPartition(components.clone())
            )));
        }
        Ok(MultiPartition(components))
    }

    /// `k` copies of `λ`.
    pub fn repeat(lambda: &Partition, k: usize) -> Result<Self> {
        Self::new(vec![lambda.clone(); k])
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// Common size `n`.
    pub fn size(&self) -> u32 {
        self.0[0].size()
    }

    pub fn sum_of_squares(&self) -> u64 {
        self.0
            .iter()
            .flat_map(|c| c.parts())
            .map(|&p| p as u64 * p as u64)
            .sum()
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join("|"))
    }
}

impl fmt::Debug for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

impl FromStr for MultiPartition {
    type Err = Error;

    /// `"3,2,1|2,2,1,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let comps = s
            .split('|')
            .map(Partition::from_str)
            .collect::<Result<Vec<_>>>()?;
        MultiPartition::new(comps).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// All `k`-tuples of partitions of `n`, lexicographic in the component order
/// of [`enumerate_partitions`].
pub fn enumerate_multipartitions(n: u32, k: usize) -> Vec<MultiPartition> {
    let parts = enumerate_partitions(n);
    let mut out: Vec<Vec<Partition>> = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                parts.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(MultiPartition).collect()
}

/// `d_μ = n²(2g - 2 + k) - Σ (μ^i_j)² + 2`.
pub fn dimension_d_mu(mu: &MultiPartition, g: u32) -> i64 {
    let n = mu.size() as i64;
    n * n * (2 * g as i64 - 2 + mu.k() as i64) - mu.sum_of_squares() as i64 + 2
}

/// True iff the gcd of all parts of all components is 1.
pub fn is_indivisible(mu: &MultiPartition) -> bool {
    mu.components()
        .iter()
        .fold(0, |g, c| g.gcd(&c.gcd_of_parts()))
        == 1
}

/// Dimension vector of a comet-shaped quiver: `g` loops at the central
/// vertex of dimension `v0`, and legs pointing towards it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CometDimensionVector {
    pub g: u32,
    pub v0: u32,
    pub legs: Vec<Vec<u32>>,
}

impl CometDimensionVector {
    pub fn new(g: u32, v0: u32, legs: Vec<Vec<u32>>) -> Result<Self> {
        let v = CometDimensionVector { g, v0, legs };
        v.validate()?;
        Ok(v.normalized())
    }

    fn validate(&self) -> Result<()> {
        if self.v0 == 0 {
            return Err(Error::InvalidDimensionVector(
                "central dimension must be at least 1".into(),
            ));
        }
        for leg in &self.legs {
            if leg.iter().any(|&x| x > self.v0) {
                return Err(Error::InvalidDimensionVector(format!(
                    "leg {leg:?} exceeds v0 = {}",
                    self.v0
                )));
            }
            if leg.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidDimensionVector(format!(
                    "leg {leg:?} is not weakly decreasing"
                )));
            }
        }
        Ok(())
    }

    /// Trailing zeros dropped from every leg.
    pub fn normalized(&self) -> Self {
        let legs = self
            .legs
            .iter()
            .map(|leg| {
                let mut l = leg.clone();
                while l.last() == Some(&0) {
                    l.pop();
                }
                l
            })
            .collect();
        CometDimensionVector {
            g: self.g,
            v0: self.v0,
            legs,
        }
    }

    /// All vertex dimensions: the center first, then each leg in order.
    pub fn all_dims(&self) -> Vec<u32> {
        let mut v = vec![self.v0];
        for leg in &self.legs {
            v.extend_from_slice(leg);
        }
        v
    }

    /// Parse `"v0; leg1 / leg2 / ..."` with leg entries separated by commas
    /// or spaces, e.g. `"2; 1 / 1 / 1"`.
    pub fn parse(s: &str, g: u32) -> Result<Self> {
        let (v0, rest) = match s.split_once(';') {
            Some((a, b)) => (a, b),
            None => (s, ""),
        };
        let v0: u32 = v0
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad central dimension in {s:?}")))?;
        let mut legs = Vec::new();
        if !rest.trim().is_empty() {
            for leg in rest.split('/') {
                let entries = leg
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad leg entry {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                legs.push(entries);
            }
        }
        Self::new(g, v0, legs)
    }
}

impl fmt::Display for CometDimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v0)?;
        if !self.legs.is_empty() {
            let legs: Vec<String> = self
                .legs
                .iter()
                .map(|l| {
                    l.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            write!(f, "; {}", legs.join(" / "))?;
        }
        Ok(())
    }
}

/// Multipartition attached to a dimension vector: along each leg take the
/// strictly decreasing subsequence `v0 = n_0 > n_1 > ... > n_r > 0` and use
/// the successive differences as parts. A vector without legs is treated as
/// having one empty leg.
pub fn dimvec_to_multipartition(v: &CometDimensionVector) -> Result<MultiPartition> {
    v.validate()?;
    let v = v.normalized();
    let legs: Vec<Vec<u32>> = if v.legs.is_empty() {
        vec![Vec::new()]
    } else {
        v.legs.clone()
    };
    let comps = legs
        .iter()
        .map(|leg| {
            let mut chain = vec![v.v0];
            for &x in leg {
                if x > 0 && x < *chain.last().unwrap() {
                    chain.push(x);
                }
            }
            chain.push(0);
            Partition::from_unsorted(chain.windows(2).map(|w| w[0] - w[1]).collect())
        })
        .collect();
    MultiPartition::new(comps)
}

/// Canonical minimal dimension vector of `μ`: leg `i` carries the strictly
/// decreasing tail sums `n - μ^i_1 > n - μ^i_1 - μ^i_2 > ... > 0`.
pub fn multipartition_to_dimvec(mu: &MultiPartition, g: u32) -> CometDimensionVector {
    let n = mu.size();
    let legs = mu
        .components()
        .iter()
        .map(|c| {
            let mut rest = n;
            let mut leg = Vec::new();
            for &p in c.parts() {
                rest -= p;
                if rest > 0 {
                    leg.push(rest);
                }
            }
            leg
        })
        .collect();
    CometDimensionVector { g, v0: n, legs }
}

/// `z_λ` as a rational, for coefficient arithmetic.
pub fn z_rational(lambda: &Partition) -> crate::arith::Rational {
    rat(lambda.z() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn stats_of_small_partitions() {
        let st = partition_stats(&p("2,1"));
        let mut hooks: Vec<u32> = st.cells.iter().map(|c| c.hook).collect();
        hooks.sort();
        assert_eq!(hooks, vec![1, 1, 3]);
        assert_eq!(st.n_lambda, 1);
        assert_eq!(st.z_lambda, 2);
        assert_eq!(st.conjugate, p("2,1"));

        let st = partition_stats(&p("1,1,1"));
        assert_eq!(st.n_lambda, 3);
        assert_eq!(st.z_lambda, 6);
        assert_eq!(st.conjugate, p("3"));

        let st = partition_stats(&p("4"));
        assert_eq!(st.n_lambda, 0);
        let hooks: Vec<u32> = st.cells.iter().map(|c| c.hook).collect();
        assert_eq!(hooks, vec![4, 3, 2, 1]);
    }

    #[test]
    fn hook_polynomials() {
        let q = MultiPoly::var(Var::Q);
        let one = MultiPoly::one();
        assert_eq!(hook_polynomial(&p("1")), &one - &q);
        assert_eq!(
            hook_polynomial(&p("2,1")),
            &(&one - &q.pow(3)) * &(&one - &q).pow(2)
        );
        assert_eq!(hook_polynomial(&p("2")), &(&one - &q.pow(2)) * &(&one - &q));
        assert!(hook_polynomial(&Partition::empty()).is_one());
        assert_eq!(
            hook_polynomial_factored(&p("3,1"), Var::Q, 1).to_rational_function(),
            crate::arith::RationalFunction::from_poly(hook_polynomial(&p("3,1")))
        );
    }

    #[test]
    fn dimension_vectors() {
        let mp = |s: &str| -> MultiPartition { s.parse().unwrap() };
        let dv = |v0, legs: Vec<Vec<u32>>| CometDimensionVector::new(0, v0, legs).unwrap();
        assert_eq!(
            dimvec_to_multipartition(&dv(2, vec![vec![1]])).unwrap(),
            mp("1,1")
        );
        assert_eq!(
            dimvec_to_multipartition(&dv(2, vec![vec![2]])).unwrap(),
            mp("2")
        );
        assert_eq!(
            dimvec_to_multipartition(&dv(3, vec![vec![2, 1]])).unwrap(),
            mp("1,1,1")
        );
        assert_eq!(dimvec_to_multipartition(&dv(2, vec![])).unwrap(), mp("2"));

        let v = multipartition_to_dimvec(&mp("1,1"), 1);
        assert_eq!((v.v0, v.legs.clone()), (2, vec![vec![1]]));
        let v = multipartition_to_dimvec(&mp("2"), 1);
        assert_eq!((v.v0, v.legs.clone()), (2, vec![vec![]]));
        let v = multipartition_to_dimvec(&mp("1,1|1,1|1,1"), 0);
        assert_eq!((v.v0, v.legs.clone()), (2, vec![vec![1], vec![1], vec![1]]));

        assert!(matches!(
            CometDimensionVector::new(0, 2, vec![vec![3]]),
            Err(Error::InvalidDimensionVector(_))
        ));
        assert!(matches!(
            CometDimensionVector::new(0, 3, vec![vec![1, 2]]),
            Err(Error::InvalidDimensionVector(_))
        ));
        let parsed = CometDimensionVector::parse("2; 1 / 1 / 1", 0).unwrap();
        assert_eq!(parsed.legs, vec![vec![1], vec![1], vec![1]]);
        assert_eq!(parsed.to_string(), "2; 1 / 1 / 1");
        assert_eq!(
            CometDimensionVector::parse("3; 2,1,0", 1).unwrap().legs,
            vec![vec![2, 1]]
        );
    }

    #[test]
    fn dimension_formula() {
        let mp = |s: &str| -> MultiPartition { s.parse().unwrap() };
        assert_eq!(dimension_d_mu(&mp("1"), 1), 2);
        assert_eq!(dimension_d_mu(&mp("1,1|1,1|1,1"), 0), 0);
        assert_eq!(dimension_d_mu(&mp("1,1"), 1), 4);
    }

    #[test]
    fn indivisibility() {
        let mp = |s: &str| -> MultiPartition { s.parse().unwrap() };
        assert!(is_indivisible(&mp("1,1")));
        assert!(!is_indivisible(&mp("2")));
        assert!(is_indivisible(&mp("2,2|3,1")));
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_partitions(3), vec![p("3"), p("2,1"), p("1,1,1")]);
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_multipartitions(2, 2).len(), 4);
        let counts: Vec<usize> = (0..=8).map(|n| enumerate_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn parsing_and_display() {
        let mu: MultiPartition = "3,2,1|2,2,1,1".parse().unwrap();
        assert_eq!(mu.k(), 2);
        assert_eq!(mu.to_string(), "3,2,1|2,2,1,1");
        assert!("3,2|2".parse::<MultiPartition>().is_err());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("x".parse::<Partition>().is_err());
    }
}
