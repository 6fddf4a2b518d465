//! `verify all`: every suite over bounded ranges, with a summary of the
//! failures split by severity.

use std::collections::BTreeSet;

use anyhow::Result;
use hlv_core::arith::{rat, MultiPoly, Var};
use hlv_core::hilbert::goettsche_shadow_check;
use hlv_core::kernel::{valuation_sweep, Kernel, YConvention};
use hlv_core::macdonald::htilde_checks;
use hlv_core::partitions::{
    dimvec_to_multipartition, enumerate_multipartitions, enumerate_partitions,
    CometDimensionVector, MultiPartition, Partition,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::commands::{
    expansion_json, hilbert_json, quasimodular_json, sweep_failure, sweep_family, sweep_json,
};
use crate::oracle::{kac_count_raw, point_count_raw};
use crate::record::{kernel_record, worst, Failure, Outcome, Verdict};
use crate::Context;

pub struct Bounds {
    pub n_max: u32,
    pub g_max: u32,
    pub k_max: usize,
    pub u_order: u32,
}

/// Oracle instances `(g, μ, q)` for point counts.
const POINT_COUNTS: &[(u32, &str, u32)] = &[
    (1, "1", 3),
    (1, "1", 5),
    (2, "1", 3),
    (2, "1", 5),
    (0, "1,1|1,1|1,1", 5),
    (1, "1,1", 5),
    (0, "1,1|1,1|1,1|1,1", 7),
];

/// Oracle instances `(g, dimension vector)` for Kac counts, each at q = 2, 3.
const KAC_COUNTS: &[(u32, &str)] = &[
    (1, "1"),
    (2, "1"),
    (1, "2"),
    (1, "2; 1"),
    (0, "2; 1 / 1 / 1"),
];

/// Multipartitions up to reordering of the components.
fn canonical_multipartitions(n: u32, k: usize) -> Vec<MultiPartition> {
    let mut seen = BTreeSet::new();
    enumerate_multipartitions(n, k)
        .into_iter()
        .filter_map(|mu| {
            let mut comps = mu.components().to_vec();
            comps.sort();
            seen.insert(comps.clone())
                .then(|| MultiPartition::new(comps).expect("same sizes"))
        })
        .collect()
}

fn z_minus_w_power(g: u32) -> MultiPoly {
    (&MultiPoly::var(Var::Z) - &MultiPoly::var(Var::W)).pow(2 * g)
}

fn kernel_section(ctx: &Context, b: &Bounds) -> Result<(Value, Vec<Failure>)> {
    let pairs: Vec<(u32, usize)> = (0..=b.g_max)
        .flat_map(|g| (1..=b.k_max).map(move |k| (g, k)))
        .collect();
    let kernels = ctx.pool.install(|| {
        pairs
            .par_iter()
            .map(|&(g, k)| Kernel::with_source(g, k, b.n_max, &*ctx.source))
            .collect::<hlv_core::error::Result<Vec<_>>>()
    })?;
    let items: Vec<(usize, MultiPartition)> = pairs
        .iter()
        .enumerate()
        .flat_map(|(i, &(_, k))| {
            (1..=b.n_max)
                .flat_map(move |n| canonical_multipartitions(n, k))
                .map(move |mu| (i, mu))
        })
        .collect();
    let results = ctx.pool.install(|| {
        items
            .par_iter()
            .map(|(i, mu)| kernels[*i].hlv(mu))
            .collect::<hlv_core::error::Result<Vec<_>>>()
    })?;
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for h in &results {
        let (record, f) = kernel_record(h);
        records.push(record);
        failures.extend(f);
        if h.mu.components().iter().all(|c| c.parts() == [1]) && h.hlv != z_minus_w_power(h.g) {
            failures.push(Failure::new(
                Verdict::Theorem,
                "closed_form",
                format!("mu={} g={}", h.mu, h.g),
                format!("{} != (z-w)^{}", h.hlv, 2 * h.g),
            ));
        }
    }
    Ok((json!(records), failures))
}

fn valuation_section(ctx: &Context, b: &Bounds) -> Result<(Value, Vec<Failure>)> {
    let mut items = Vec::new();
    for g in 1..=b.g_max {
        for mu in sweep_family(1, b.n_max)? {
            items.push((g, mu));
        }
    }
    let sweeps = ctx.pool.install(|| {
        items
            .par_iter()
            .map(|(g, mu)| valuation_sweep(mu, *g, YConvention::Geometric))
            .collect::<hlv_core::error::Result<Vec<_>>>()
    })?;
    let failures = sweeps.iter().filter_map(sweep_failure).collect();
    Ok((
        json!(sweeps.iter().map(sweep_json).collect::<Vec<_>>()),
        failures,
    ))
}

fn expansion_section(ctx: &Context, b: &Bounds) -> Result<(Value, Vec<Failure>)> {
    let pairs: Vec<(u32, usize)> = (0..=b.g_max)
        .flat_map(|g| (1..=b.k_max).map(move |k| (g, k)))
        .collect();
    let reports = ctx.pool.install(|| {
        pairs
            .par_iter()
            .map(|&(g, k)| expansion_json(g, k, b.n_max, YConvention::Geometric))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut failures = Vec::new();
    let mut out = Vec::new();
    for (json, f) in reports {
        out.push(json);
        failures.extend(f);
    }
    Ok((json!(out), failures))
}

fn goettsche_section(b: &Bounds) -> Result<(Value, Vec<Failure>)> {
    let verdicts = goettsche_shadow_check(b.n_max)?;
    let mut failures = Vec::new();
    let mut out = Vec::new();
    for v in &verdicts {
        let instance = format!("n={}", v.n);
        if !v.e_equal {
            failures.push(Failure::new(
                Verdict::Theorem,
                "goettsche_e",
                &instance,
                "E-polynomials differ",
            ));
        }
        if !v.mhp_equal {
            failures.push(Failure::new(
                Verdict::Conjecture,
                "goettsche_mhp",
                &instance,
                format!("{} != {}", v.mhp, v.goettsche),
            ));
        }
        out.push(json!({ "n": v.n, "mhp": v.mhp.to_string(), "goettsche": v.goettsche.to_string(), "mhp_equal": v.mhp_equal, "e_equal": v.e_equal }));
    }
    Ok((json!(out), failures))
}

fn macdonald_section(ctx: &Context, b: &Bounds) -> Result<(Value, Vec<Failure>)> {
    let lambdas: Vec<Partition> = (1..=b.n_max).flat_map(enumerate_partitions).collect();
    let checks = ctx.pool.install(|| {
        lambdas
            .par_iter()
            .map(|l| htilde_checks(l, &*ctx.source))
            .collect::<hlv_core::error::Result<Vec<_>>>()
    })?;
    let failures = checks
        .iter()
        .filter(|c| !c.all())
        .map(|c| {
            Failure::new(
                Verdict::Theorem,
                "macdonald",
                format!("lambda={}", c.lambda),
                format!("{c:?}"),
            )
        })
        .collect();
    let json = checks
        .iter()
        .map(|c| {
            json!({
                "lambda": c.lambda.to_string(),
                "transposition": c.transposition,
                "at_one": c.at_one,
                "row_coefficient": c.row_coefficient,
                "column_coefficient": c.column_coefficient,
            })
        })
        .collect::<Vec<_>>();
    Ok((json!(json), failures))
}

fn oracle_section(ctx: &Context, b: &Bounds) -> Result<(Value, Vec<Failure>)> {
    let mut out = Vec::new();
    let mut failures = Vec::new();
    for &(g, mu, q) in POINT_COUNTS {
        let mu: MultiPartition = mu.parse()?;
        if g > b.g_max || mu.size() > b.n_max {
            continue;
        }
        let e = crate::commands::compute(ctx, &mu, g)?.e_polynomial()?;
        let expected = e.eval_all(&[(Var::Q, rat(q as i64))]);
        let (count, _) = point_count_raw(g, &mu, q)?;
        let equal = expected == rat(count.quotient as i64);
        if !equal {
            failures.push(Failure::new(
                Verdict::Theorem,
                "point_count",
                format!("mu={mu} g={g} q={q}"),
                format!("E(q) = {expected}, count = {}", count.quotient),
            ));
        }
        out.push(json!({ "kind": "point-count", "g": g, "mu": mu.to_string(), "q": q, "polynomial": expected.to_string(), "oracle": count.quotient, "equal": equal }));
    }
    for &(g, dimvec) in KAC_COUNTS {
        let v = CometDimensionVector::parse(dimvec, g)?;
        let mu = dimvec_to_multipartition(&v)?;
        if g > b.g_max || mu.size() > b.n_max {
            continue;
        }
        let a = crate::commands::compute(ctx, &mu, g)?.kac_polynomial()?;
        for q in [2u32, 3] {
            let expected = a.eval_all(&[(Var::Q, rat(q as i64))]);
            let count = kac_count_raw(&v, q)?;
            let equal = expected == rat(count.count as i64);
            if !equal {
                failures.push(Failure::new(
                    Verdict::Theorem,
                    "kac_count",
                    format!("dimvec={v} g={g} q={q}"),
                    format!("A(q) = {expected}, count = {}", count.count),
                ));
            }
            out.push(json!({ "kind": "kac-count", "g": g, "dimvec": v.to_string(), "mu": mu.to_string(), "q": q, "polynomial": expected.to_string(), "oracle": count.count, "equal": equal }));
        }
    }
    Ok((json!(out), failures))
}

pub fn all(ctx: &Context, b: &Bounds) -> Result<Outcome> {
    if b.n_max == 0 || b.k_max == 0 {
        return Err(crate::UsageError("--n-max and --k-max must be positive".into()).into());
    }
    let sections: Vec<(&str, (Value, Vec<Failure>))> = vec![
        ("kernel", kernel_section(ctx, b)?),
        ("macdonald", macdonald_section(ctx, b)?),
        ("expansion", expansion_section(ctx, b)?),
        ("valuation", valuation_section(ctx, b)?),
        ("hilbert", hilbert_json(b.n_max, b.n_max)?),
        ("quasimodular", quasimodular_json(b.n_max, b.u_order)?),
        ("goettsche", goettsche_section(b)?),
        ("oracle", oracle_section(ctx, b)?),
    ];
    let mut report = serde_json::Map::new();
    let mut failures = Vec::new();
    for (name, (json, f)) in sections {
        let mut section = serde_json::Map::new();
        section.insert("results".into(), json);
        section.insert("passed".into(), json!(f.is_empty()));
        report.insert(name.into(), Value::Object(section));
        failures.extend(f);
    }
    let of_level = |level| {
        failures
            .iter()
            .filter(|f| f.level == level)
            .map(Failure::to_json)
            .collect::<Vec<_>>()
    };
    let verdict = worst(&failures);
    let json = json!({
        "bounds": { "n_max": b.n_max, "g_max": b.g_max, "k_max": b.k_max, "u_order": b.u_order },
        "suites": report,
        "summary": {
            "theorem_failures": of_level(Verdict::Theorem),
            "conjecture_failures": of_level(Verdict::Conjecture),
            "exit_code": verdict.exit_code(),
        },
    });
    Ok(Outcome::new(json, verdict))
}
