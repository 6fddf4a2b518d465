use anyhow::Result;
use hlv_core::arith::{rat, MultiPoly, Var};
use hlv_core::hilbert::{hilbert_identity_check, quasimodular_check as qm_check, DegreeVerdict};
use hlv_core::kernel::{
    curious_duality_check, expansion_lemma_check, valuation_sweep, HLVResult, Kernel,
    ValuationSweep, YConvention,
};
use hlv_core::partitions::{
    dimvec_to_multipartition, CometDimensionVector, MultiPartition, Partition,
};
use serde_json::{json, Value};

use crate::args::{EvalInstance, Instance};
use crate::record::{kernel_record, worst, Failure, Outcome, Verdict};
use crate::{Context, UsageError};

/// Resolves `--mu` or `--dimvec` to a multipartition.
pub fn resolve(instance: &Instance) -> Result<(MultiPartition, Option<CometDimensionVector>)> {
    match (&instance.target.mu, &instance.target.dimvec) {
        (Some(mu), _) => Ok((mu.clone(), None)),
        (None, Some(text)) => {
            let v = CometDimensionVector::parse(text, instance.g)
                .map_err(|e| UsageError(format!("--dimvec: {e}")))?;
            let mu =
                dimvec_to_multipartition(&v).map_err(|e| UsageError(format!("--dimvec: {e}")))?;
            Ok((mu, Some(v)))
        }
        (None, None) => Err(UsageError("one of --mu or --dimvec is required".into()).into()),
    }
}

pub fn compute(ctx: &Context, mu: &MultiPartition, g: u32) -> Result<HLVResult> {
    let kernel = Kernel::with_source(g, mu.k(), mu.size(), &*ctx.source)?;
    Ok(kernel.hlv(mu)?)
}

fn header(
    mu: &MultiPartition,
    dimvec: &Option<CometDimensionVector>,
    h: &HLVResult,
) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("mu".into(), json!(mu.to_string()));
    if let Some(v) = dimvec {
        m.insert("dimvec".into(), json!(v.to_string()));
    }
    m.insert("g".into(), json!(h.g));
    m.insert("d_mu".into(), json!(h.d_mu));
    m
}

fn evaluate(p: &MultiPoly, q: Option<i64>) -> Option<String> {
    q.map(|q| p.eval_all(&[(Var::Q, rat(q))]).to_string())
}

pub fn kernel(ctx: &Context, instance: &Instance) -> Result<Outcome> {
    let (mu, dimvec) = resolve(instance)?;
    let h = compute(ctx, &mu, instance.g)?;
    let (mut record, failures) = kernel_record(&h);
    if let (Some(v), Value::Object(m)) = (&dimvec, &mut record) {
        m.insert("dimvec".into(), json!(v.to_string()));
    }
    let text = h.to_string();
    Ok(Outcome::new(record, worst(&failures)).with_text(text))
}

/// Shared shape of `epoly` and `kac`.
fn specialization(
    ctx: &Context,
    args: &EvalInstance,
    key: &str,
    f: impl Fn(&HLVResult) -> hlv_core::error::Result<MultiPoly>,
) -> Result<Outcome> {
    let (mu, dimvec) = resolve(&args.instance)?;
    let h = compute(ctx, &mu, args.instance.g)?;
    let p = f(&h)?;
    let mut m = header(&mu, &dimvec, &h);
    m.insert(key.into(), json!(p.to_string()));
    let value = evaluate(&p, args.eval_q);
    if let (Some(q), Some(v)) = (args.eval_q, &value) {
        m.insert("q".into(), json!(q));
        m.insert("value".into(), json!(v));
    }
    let text = value.unwrap_or_else(|| p.to_string());
    Ok(Outcome::new(Value::Object(m), Verdict::Pass).with_text(text))
}

pub fn epoly(ctx: &Context, args: &EvalInstance) -> Result<Outcome> {
    specialization(ctx, args, "E", |h| h.e_polynomial())
}

pub fn kac(ctx: &Context, args: &EvalInstance) -> Result<Outcome> {
    specialization(ctx, args, "kac", |h| h.kac_polynomial())
}

pub fn mhp(ctx: &Context, instance: &Instance) -> Result<Outcome> {
    let (mu, dimvec) = resolve(instance)?;
    let h = compute(ctx, &mu, instance.g)?;
    let p = h.conjectural_mhp()?;
    let duality = curious_duality_check(&p, h.d_mu);
    let mut m = header(&mu, &dimvec, &h);
    m.insert("mhp".into(), json!(p.to_string()));
    m.insert("curious_duality".into(), json!(duality.holds));
    let verdict = if duality.holds {
        Verdict::Pass
    } else {
        Verdict::Conjecture
    };
    Ok(Outcome::new(Value::Object(m), verdict).with_text(p.to_string()))
}

pub fn degree_json(v: &DegreeVerdict) -> Value {
    let mut m = serde_json::Map::new();
    m.insert("degree".into(), json!(v.degree));
    m.insert("equal".into(), json!(v.equal));
    if let (Some(l), Some(r)) = (&v.lhs, &v.rhs) {
        m.insert("lhs".into(), json!(l));
        m.insert("rhs".into(), json!(r));
    }
    Value::Object(m)
}

/// Specialized failures are theorem-level, full ones conjecture-level.
pub fn hilbert_json(n_max: u32, trunc: u32) -> Result<(Value, Vec<Failure>)> {
    let report = hilbert_identity_check(trunc, n_max)?;
    let mut failures = Vec::new();
    for (list, level, check) in [
        (&report.specialized, Verdict::Theorem, "hilbert_specialized"),
        (&report.full, Verdict::Conjecture, "hilbert_full"),
    ] {
        for v in list.iter().filter(|v| !v.equal) {
            let detail = format!(
                "{} != {}",
                v.lhs.as_deref().unwrap_or(""),
                v.rhs.as_deref().unwrap_or("")
            );
            failures.push(Failure::new(
                level,
                check,
                format!("T^{}", v.degree),
                detail,
            ));
        }
    }
    let json = json!({
        "specialized": { "order": n_max, "holds": report.specialized_holds(), "degrees": report.specialized.iter().map(degree_json).collect::<Vec<_>>() },
        "full": { "order": trunc, "holds": report.full_holds(), "degrees": report.full.iter().map(degree_json).collect::<Vec<_>>() },
    });
    Ok((json, failures))
}

pub fn hilbert_check(n_max: u32, trunc: u32) -> Result<Outcome> {
    let (json, failures) = hilbert_json(n_max, trunc)?;
    Ok(Outcome::new(json, worst(&failures)))
}

pub fn quasimodular_json(n_max: u32, u_order: u32) -> Result<(Value, Vec<Failure>)> {
    let r = qm_check(n_max, u_order)?;
    let mut failures: Vec<Failure> = r
        .mismatches
        .iter()
        .map(|(n, m, l, rr)| {
            Failure::new(
                Verdict::Theorem,
                "quasimodular",
                format!("T^{n} u^{m}"),
                format!("{l} != {rr}"),
            )
        })
        .collect();
    if !r.normalization_witness {
        failures.push(Failure::new(
            Verdict::Theorem,
            "quasimodular",
            "T^0",
            "normalization witness failed",
        ));
    }
    let json = json!({
        "n_max": r.n_max,
        "u_order": r.u_order,
        "normalization_witness": r.normalization_witness,
        "holds": r.holds(),
        "mismatches": r.mismatches.iter().map(|(n, m, l, rr)| json!({"n": n, "m": m, "lhs": l.to_string(), "rhs": rr.to_string()})).collect::<Vec<_>>(),
    });
    Ok((json, failures))
}

pub fn quasimodular_check(n_max: u32, u_order: u32) -> Result<Outcome> {
    let (json, failures) = quasimodular_json(n_max, u_order)?;
    Ok(Outcome::new(json, worst(&failures)))
}

/// Mismatches count as theorem failures under the geometric convention only;
/// the printed convention is known to disagree and is reported as data.
pub fn expansion_json(
    g: u32,
    k: usize,
    n_max: u32,
    convention: YConvention,
) -> Result<(Value, Vec<Failure>)> {
    if k == 0 || n_max == 0 {
        return Err(UsageError("--k and --n-max must be positive".into()).into());
    }
    let r = expansion_lemma_check(g, k, n_max, convention)?;
    let failures = if convention == YConvention::Geometric {
        r.entries
            .iter()
            .filter(|e| !e.equal)
            .map(|e| {
                Failure::new(
                    Verdict::Theorem,
                    "expansion",
                    format!("mu={} g={g}", e.mu),
                    format!("{} != {}", e.lhs, e.rhs),
                )
            })
            .collect()
    } else {
        Vec::new()
    };
    let entries: Vec<Value> = r
        .entries
        .iter()
        .map(|e| {
            let mut m = serde_json::Map::new();
            m.insert("mu".into(), json!(e.mu.to_string()));
            m.insert("equal".into(), json!(e.equal));
            if !e.equal {
                m.insert("lhs".into(), json!(e.lhs.to_string()));
                m.insert("rhs".into(), json!(e.rhs.to_string()));
            }
            Value::Object(m)
        })
        .collect();
    let json = json!({
        "g": g, "k": k, "n_max": n_max, "y_convention": convention.to_string(),
        "all_equal": r.all_equal(), "entries": entries,
    });
    Ok((json, failures))
}

pub fn expansion_check(g: u32, k: usize, n_max: u32, convention: YConvention) -> Result<Outcome> {
    let (json, failures) = expansion_json(g, k, n_max, convention)?;
    Ok(Outcome::new(json, worst(&failures)))
}

pub fn sweep_json(s: &ValuationSweep) -> Value {
    json!({
        "mu": s.mu.to_string(),
        "g": s.g,
        "d_mu": s.d_mu,
        "expected_valuation": format!("{}", rat(2 - s.d_mu) / rat(2)),
        "v_min": s.v_min,
        "minimizers": s.minimizers.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "holds": s.holds,
        "entries": s.entries.iter().map(|a| json!({"lambda": a.lambda.to_string(), "v": a.v, "leading": a.leading.to_string()})).collect::<Vec<_>>(),
    })
}

pub fn sweep_failure(s: &ValuationSweep) -> Option<Failure> {
    (s.holds == Some(false)).then(|| {
        let mins: Vec<String> = s.minimizers.iter().map(|l| format!("({l})")).collect();
        Failure::new(
            Verdict::Theorem,
            "valuation_minimizer",
            format!("mu={} g={}", s.mu, s.g),
            format!("minimum {} attained at {}", s.v_min, mins.join(" ")),
        )
    })
}

/// `(1ⁿ)` and `(n)`, each repeated `k` times, for `1 ≤ n ≤ n_max`.
pub fn sweep_family(k: usize, n_max: u32) -> Result<Vec<MultiPartition>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.push(MultiPartition::repeat(&Partition::column(n), k)?);
        if n > 1 {
            out.push(MultiPartition::repeat(&Partition::row(n), k)?);
        }
    }
    Ok(out)
}

pub fn optim_sweep(
    ctx: &Context,
    g: u32,
    mu: Option<&MultiPartition>,
    k: usize,
    n_max: u32,
    convention: YConvention,
) -> Result<Outcome> {
    let family = match mu {
        Some(mu) => vec![mu.clone()],
        None if k == 0 => return Err(UsageError("--k must be positive".into()).into()),
        None => sweep_family(k, n_max)?,
    };
    let sweeps = ctx.pool.install(|| {
        use rayon::prelude::*;
        family
            .par_iter()
            .map(|mu| valuation_sweep(mu, g, convention))
            .collect::<hlv_core::error::Result<Vec<_>>>()
    })?;
    let failures: Vec<Failure> = sweeps.iter().filter_map(sweep_failure).collect();
    let json = json!({
        "g": g,
        "y_convention": convention.to_string(),
        "sweeps": sweeps.iter().map(sweep_json).collect::<Vec<_>>(),
        "failures": failures.iter().map(Failure::to_json).collect::<Vec<_>>(),
    });
    Ok(Outcome::new(json, worst(&failures)))
}
