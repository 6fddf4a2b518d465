//! Absolutely indecomposable representations of comet-shaped quivers over
//! `F_q`, counted up to isomorphism by explicit orbit enumeration.

use crate::field::{Elem, SmallField};
use crate::matrix::{general_linear, mul, nullspace, Mat};
use crate::{OracleError, Result, STEP_BUDGET};

/// Central vertex with `g` loops and legs of vertices whose arrows point
/// toward the center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CometQuiver {
    pub g: u32,
    pub v0: u32,
    pub legs: Vec<Vec<u32>>,
}

impl CometQuiver {
    pub fn new(g: u32, v0: u32, legs: Vec<Vec<u32>>) -> Result<Self> {
        if v0 == 0 || legs.iter().flatten().any(|&d| d == 0) {
            return Err(OracleError::InvalidInstance(
                "all dimensions must be positive".into(),
            ));
        }
        Ok(CometQuiver { g, v0, legs })
    }

    /// Vertex dimensions, center first, then each leg outward.
    pub fn dims(&self) -> Vec<usize> {
        std::iter::once(self.v0 as usize)
            .chain(self.legs.iter().flatten().map(|&d| d as usize))
            .collect()
    }

    /// Arrows `(source, target)` between vertex indices.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut next = 1;
        for leg in &self.legs {
            let mut target = 0;
            for _ in leg {
                out.push((next, target));
                target = next;
                next += 1;
            }
        }
        out
    }
}

/// A representation: loop matrices on the central vertex and one matrix per
/// arrow (`dim target × dim source`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    pub dims: Vec<usize>,
    pub loops: Vec<Mat>,
    pub arrows: Vec<(usize, usize, Mat)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoAnalysis {
    pub dim_end: u32,
    pub is_local: bool,
    pub residue_degree: u32,
}

impl EndoAnalysis {
    pub fn absolutely_indecomposable(&self) -> bool {
        self.is_local && self.residue_degree == 1
    }
}

/// Upper bound on `q^{dim End}` for exhaustive enumeration of the algebra.
pub const ENDO_BUDGET: u64 = 1_000_000;

/// Block-diagonal endomorphisms multiply blockwise.
fn block_mul(f: &SmallField, dims: &[usize], a: &[Mat], b: &[Mat]) -> Vec<Mat> {
    dims.iter()
        .zip(a.iter().zip(b))
        .map(|(&d, (x, y))| mul(f, x, y, d, d, d))
        .collect()
}

/// Dimension of the endomorphism algebra, locality (only trivial
/// idempotents) and the degree of its residue field.
pub fn endo_algebra_analysis(rep: &QuiverRep, f: &SmallField) -> Result<EndoAnalysis> {
    let dims = &rep.dims;
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d * d;
            Some(o)
        })
        .collect();
    let unknowns: usize = dims.iter().map(|d| d * d).sum();
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    // φ_t M - M φ_s = 0, entry (i, j)
    let mut relation = |s: usize, t: usize, m: &Mat| {
        let (ds, dt) = (dims[s], dims[t]);
        for i in 0..dt {
            for j in 0..ds {
                let mut row = vec![0; unknowns];
                for l in 0..dt {
                    let c = m[l * ds + j];
                    let idx = offsets[t] + i * dt + l;
                    row[idx] = f.add(row[idx], c);
                }
                for l in 0..ds {
                    let c = m[i * ds + l];
                    let idx = offsets[s] + l * ds + j;
                    row[idx] = f.sub(row[idx], c);
                }
                rows.push(row);
            }
        }
    };
    for l in &rep.loops {
        relation(0, 0, l);
    }
    for (s, t, m) in &rep.arrows {
        relation(*s, *t, m);
    }
    let flat: Vec<Elem> = rows.concat();
    let basis = nullspace(f, &flat, rows.len(), unknowns);
    let dim_end = basis.len() as u32;
    let size = (f.size() as u64)
        .checked_pow(dim_end)
        .filter(|&s| s <= ENDO_BUDGET)
        .ok_or(OracleError::InstanceTooLarge {
            steps: (f.size() as f64).powi(dim_end as i32) as u64,
            budget: ENDO_BUDGET,
        })?;
    let nil_exponent: usize = dims.iter().sum();
    let to_blocks = |v: &[Elem]| -> Vec<Mat> {
        dims.iter()
            .zip(&offsets)
            .map(|(&d, &o)| v[o..o + d * d].to_vec())
            .collect()
    };
    let zero: Vec<Mat> = dims.iter().map(|&d| vec![0; d * d]).collect();
    let one: Vec<Mat> = dims.iter().map(|&d| crate::matrix::identity(d)).collect();
    let mut idempotents = 0u64;
    let mut nilpotents = 0u64;
    let mut coeffs = vec![0 as Elem; basis.len()];
    for _ in 0..size {
        let mut v = vec![0 as Elem; unknowns];
        for (c, b) in coeffs.iter().zip(&basis) {
            if *c != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = f.add(*x, f.mul(*c, *y));
                }
            }
        }
        let x = to_blocks(&v);
        if block_mul(f, dims, &x, &x) == x {
            idempotents += 1;
        }
        let mut power = x.clone();
        for _ in 1..nil_exponent {
            if power == zero {
                break;
            }
            power = block_mul(f, dims, &power, &x);
        }
        if power == zero {
            nilpotents += 1;
        }
        // next coefficient vector
        for c in coeffs.iter_mut() {
            *c += 1;
            if (*c as usize) < f.size() {
                break;
            }
            *c = 0;
        }
    }
    let trivial = if one == zero { 1 } else { 2 };
    let is_local = idempotents == trivial;
    let nil_dim = (0..=dim_end)
        .find(|&e| (f.size() as u64).pow(e) >= nilpotents)
        .unwrap_or(dim_end);
    Ok(EndoAnalysis {
        dim_end,
        is_local,
        residue_degree: dim_end - nil_dim,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverCount {
    pub count: u64,
    pub orbits: u64,
    /// Sum of all orbit sizes; equals `q^{dim Rep}`.
    pub orbit_total: u64,
    pub budget_steps: u64,
}

/// Isomorphism classes of absolutely indecomposable representations.
pub fn quiver_abs_indec_count(quiver: &CometQuiver, f: &SmallField) -> Result<QuiverCount> {
    let dims = quiver.dims();
    let arrows = quiver.arrows();
    let v0 = dims[0];
    let mut shapes: Vec<(usize, usize)> = vec![(v0, v0); quiver.g as usize];
    shapes.extend(arrows.iter().map(|&(s, t)| (dims[t], dims[s])));
    let len: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let q = f.size() as u64;
    let space = q
        .checked_pow(len as u32)
        .ok_or(OracleError::InstanceTooLarge {
            steps: u64::MAX,
            budget: STEP_BUDGET,
        })?;
    let groups: Vec<Vec<(Mat, Mat)>> = {
        let mut distinct: Vec<(usize, Vec<(Mat, Mat)>)> = Vec::new();
        dims.iter()
            .map(|&d| {
                if let Some((_, g)) = distinct.iter().find(|(dd, _)| *dd == d) {
                    return g.clone();
                }
                let g = general_linear(f, d);
                distinct.push((d, g.clone()));
                g
            })
            .collect()
    };
    let group_order: u64 = groups.iter().map(|g| g.len() as u64).product();
    let budget_steps = space.saturating_mul(group_order);
    if budget_steps > STEP_BUDGET {
        return Err(OracleError::InstanceTooLarge {
            steps: budget_steps,
            budget: STEP_BUDGET,
        });
    }

    let split = |v: &[Elem]| -> Vec<Mat> {
        let mut out = Vec::with_capacity(shapes.len());
        let mut o = 0;
        for &(r, c) in &shapes {
            out.push(v[o..o + r * c].to_vec());
            o += r * c;
        }
        out
    };
    let act = |mats: &[Mat], elem: &[usize]| -> Vec<Elem> {
        let mut out = Vec::with_capacity(len);
        let (g0, g0i) = &groups[0][elem[0]];
        for m in &mats[..quiver.g as usize] {
            out.extend(mul(f, &mul(f, g0, m, v0, v0, v0), g0i, v0, v0, v0));
        }
        for (m, &(s, t)) in mats[quiver.g as usize..].iter().zip(&arrows) {
            let (gt, _) = &groups[t][elem[t]];
            let (_, gsi) = &groups[s][elem[s]];
            let (ds, dt) = (dims[s], dims[t]);
            out.extend(mul(f, &mul(f, gt, m, dt, dt, ds), gsi, dt, ds, ds));
        }
        out
    };

    let mut visited = vec![false; space as usize];
    let (mut count, mut orbits, mut orbit_total) = (0u64, 0u64, 0u64);
    for code in 0..space as usize {
        if visited[code] {
            continue;
        }
        let v = crate::matrix::decode(f, code, len);
        let mats = split(&v);
        let mut size = 0u64;
        let mut elem = vec![0usize; groups.len()];
        'group: loop {
            let image = crate::matrix::encode(f, &act(&mats, &elem));
            if !visited[image] {
                visited[image] = true;
                size += 1;
            }
            let mut a = 0;
            loop {
                elem[a] += 1;
                if elem[a] < groups[a].len() {
                    break;
                }
                elem[a] = 0;
                a += 1;
                if a == elem.len() {
                    break 'group;
                }
            }
        }
        orbits += 1;
        orbit_total += size;
        let rep = QuiverRep {
            dims: dims.clone(),
            loops: mats[..quiver.g as usize].to_vec(),
            arrows: arrows
                .iter()
                .zip(&mats[quiver.g as usize..])
                .map(|(&(s, t), m)| (s, t, m.clone()))
                .collect(),
        };
        if endo_algebra_analysis(&rep, f)?.absolutely_indecomposable() {
            count += 1;
        }
    }
    Ok(QuiverCount {
        count,
        orbits,
        orbit_total,
        budget_steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_rep(m: Mat) -> QuiverRep {
        QuiverRep {
            dims: vec![2],
            loops: vec![m],
            arrows: vec![],
        }
    }

    #[test]
    fn endomorphism_examples() {
        let f2 = SmallField::new(2).unwrap();
        let jordan = endo_algebra_analysis(&loop_rep(vec![0, 1, 0, 0]), &f2).unwrap();
        assert_eq!(
            jordan,
            EndoAnalysis {
                dim_end: 2,
                is_local: true,
                residue_degree: 1
            }
        );
        // companion matrix of x² + x + 1
        let companion = endo_algebra_analysis(&loop_rep(vec![0, 1, 1, 1]), &f2).unwrap();
        assert_eq!(
            companion,
            EndoAnalysis {
                dim_end: 2,
                is_local: true,
                residue_degree: 2
            }
        );
        let identity = endo_algebra_analysis(&loop_rep(vec![1, 0, 0, 1]), &f2).unwrap();
        assert_eq!(identity.dim_end, 4);
        assert!(!identity.is_local);
    }

    #[test]
    fn loop_counts() {
        let f3 = SmallField::new(3).unwrap();
        let c = quiver_abs_indec_count(&CometQuiver::new(1, 1, vec![]).unwrap(), &f3).unwrap();
        assert_eq!(c.count, 3);
        let f2 = SmallField::new(2).unwrap();
        let c = quiver_abs_indec_count(&CometQuiver::new(1, 2, vec![]).unwrap(), &f2).unwrap();
        assert_eq!(c.count, 2);
        assert_eq!(c.orbit_total, 16);
    }
}
