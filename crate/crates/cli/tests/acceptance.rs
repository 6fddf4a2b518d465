//! One PASS/FAIL line per acceptance criterion. Criteria listed in
//! `KNOWN_FAILURES` are reported but do not fail the run.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hlv_core::arith::{rat, MultiPoly, Var};
use hlv_core::hilbert::{goettsche_shadow_check, hilbert_identity_check, quasimodular_check};
use hlv_core::kernel::{
    connectedness_report, curious_duality_check, expansion_lemma_check,
    has_nonnegative_integer_coeffs, hlv_polynomial, is_palindromic, valuation_sweep, HLVResult,
    Kernel, YConvention,
};
use hlv_core::macdonald::{htilde_checks, MemoryStore};
use hlv_core::partitions::{
    dimvec_to_multipartition, enumerate_multipartitions, enumerate_partitions,
    CometDimensionVector, MultiPartition, Partition,
};
use hlv_oracle::{
    char_variety_point_count, generic_class_tuple_search, quiver_abs_indec_count, CometQuiver,
    SmallField,
};
use rayon::prelude::*;

/// Criterion 2 asks for `((1,1))⁴` over F_5, which has no generic tuple.
/// Criterion 6 asks for a unique minimizer at `μ = (n)`, `g = 1`, where all
/// summands are equal.
const KNOWN_FAILURES: [u32; 2] = [2, 6];

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn mp(s: &str) -> MultiPartition {
    s.parse().expect("valid multipartition")
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed())
}

fn closed_form_kernel() -> Outcome {
    let zw = &MultiPoly::var(Var::Z) - &MultiPoly::var(Var::W);
    let mut slowest = Duration::ZERO;
    for g in 0..=3 {
        for k in 1..=3 {
            let mu = MultiPartition::repeat(&Partition::row(1), k).unwrap();
            let (h, took) = timed(|| hlv_polynomial(&mu, g));
            let h = h.map_err(|e| e.to_string())?;
            if h.hlv != zw.pow(2 * g) {
                return Err(format!("g={g} k={k}: got {}", h.hlv));
            }
            if took >= Duration::from_secs(1) {
                return Err(format!("g={g} k={k} took {took:?}"));
            }
            slowest = slowest.max(took);
        }
    }
    Ok(format!("12 instances, slowest {slowest:?}"))
}

fn point_count(g: u32, mu: &MultiPartition, q: u32) -> Result<u64, String> {
    let f = SmallField::new(q).map_err(|e| e.to_string())?;
    let parts: Vec<Vec<u32>> = mu.components().iter().map(|c| c.parts().to_vec()).collect();
    let tuple = generic_class_tuple_search(&parts, &f)
        .ok_or_else(|| format!("no generic tuple of type {mu} over F_{q}"))?;
    Ok(char_variety_point_count(g, &tuple, &f)
        .map_err(|e| e.to_string())?
        .quotient)
}

fn point_count_equivalence() -> Outcome {
    let instances = [
        (1, "1", 3),
        (1, "1", 5),
        (2, "1", 3),
        (2, "1", 5),
        (0, "1,1|1,1|1,1", 5),
        (1, "1,1", 5),
        (0, "1,1|1,1|1,1|1,1", 5),
    ];
    let mut problems = Vec::new();
    for (g, mu, q) in instances {
        let mu = mp(mu);
        let e = hlv_polynomial(&mu, g)
            .and_then(|h| h.e_polynomial())
            .map_err(|e| e.to_string())?;
        let expected = e.eval_all(&[(Var::Q, rat(q as i64))]);
        let (count, took) = timed(|| point_count(g, &mu, q));
        match count {
            Ok(c) if rat(c as i64) == expected && took < Duration::from_secs(120) => {}
            Ok(c) => problems.push(format!(
                "{mu} g={g} q={q}: count {c}, E(q) = {expected}, {took:?}"
            )),
            Err(e) => problems.push(e),
        }
    }
    // the same type over the smallest field where it is realisable
    let mu = mp("1,1|1,1|1,1|1,1");
    let e7 = hlv_polynomial(&mu, 0)
        .and_then(|h| h.e_polynomial())
        .map_err(|e| e.to_string())?
        .eval_all(&[(Var::Q, rat(7))]);
    let c7 = point_count(0, &mu, 7)?;
    let note = format!("{mu} over F_7: count {c7}, E(7) = {e7}");
    if problems.is_empty() {
        Ok(format!("7 instances; {note}"))
    } else {
        Err(format!("{}; {note}", problems.join("; ")))
    }
}

fn kac_equivalence() -> Outcome {
    let instances = [
        (1, "1"),
        (2, "1"),
        (1, "2"),
        (1, "2; 1"),
        (0, "2; 1 / 1 / 1"),
    ];
    for (g, v) in instances {
        let dimvec = CometDimensionVector::parse(v, g).map_err(|e| e.to_string())?;
        let mu = dimvec_to_multipartition(&dimvec).map_err(|e| e.to_string())?;
        let a = hlv_polynomial(&mu, g)
            .and_then(|h| h.kac_polynomial())
            .map_err(|e| e.to_string())?;
        let quiver = CometQuiver::new(dimvec.g, dimvec.v0, dimvec.legs.clone())
            .map_err(|e| e.to_string())?;
        for q in [2u32, 3] {
            let f = SmallField::new(q).unwrap();
            let (count, took) = timed(|| quiver_abs_indec_count(&quiver, &f));
            let count = count.map_err(|e| e.to_string())?.count;
            if a.eval_all(&[(Var::Q, rat(q as i64))]) != rat(count as i64)
                || took >= Duration::from_secs(120)
            {
                return Err(format!(
                    "g={g} dimvec {v} q={q}: count {count}, A = {a}, {took:?}"
                ));
            }
        }
    }
    Ok("5 dimension vectors at q = 2, 3".into())
}

/// Multipartitions up to reordering of the components.
fn canonical(n: u32, k: usize) -> Vec<MultiPartition> {
    let mut seen = BTreeSet::new();
    enumerate_multipartitions(n, k)
        .into_iter()
        .filter_map(|mu| {
            let mut comps = mu.components().to_vec();
            comps.sort();
            seen.insert(comps.clone())
                .then(|| MultiPartition::new(comps).unwrap())
        })
        .collect()
}

/// All `μ` with `n ≤ 4`, `k ≤ 3`, `g ≤ 2`.
fn sweep() -> Vec<HLVResult> {
    let pairs: Vec<(u32, usize)> = (0..=2).flat_map(|g| (1..=3).map(move |k| (g, k))).collect();
    pairs
        .par_iter()
        .flat_map(|&(g, k)| {
            let kernel = Kernel::new(g, k, 4).expect("kernel");
            (1..=4)
                .flat_map(|n| canonical(n, k))
                .collect::<Vec<_>>()
                .par_iter()
                .map(|mu| kernel.hlv(mu).expect("kernel coefficient"))
                .collect::<Vec<_>>()
        })
        .collect()
}

fn over_sweep(
    results: &[HLVResult],
    what: &str,
    check: impl Fn(&HLVResult) -> Result<bool, String>,
) -> Outcome {
    let mut skipped = 0;
    for h in results {
        match check(h) {
            Ok(true) => {}
            Ok(false) => skipped += 1,
            Err(e) => return Err(format!("{} g={}: {e}", h.mu, h.g)),
        }
    }
    let mut line = format!("{} instances", results.len() - skipped);
    if skipped > 0 {
        line.push_str(&format!(", {skipped} {what}"));
    }
    Ok(line)
}

fn palindromic(results: &[HLVResult]) -> Outcome {
    over_sweep(results, "", |h| {
        let e = h.e_polynomial().map_err(|e| e.to_string())?;
        is_palindromic(&e, h.d_mu)
            .then_some(true)
            .ok_or_else(|| format!("E = {e} is not palindromic"))
    })
}

fn connected(results: &[HLVResult]) -> Outcome {
    over_sweep(
        results,
        "with E = 0 and d_μ < 0 (empty variety) skipped",
        |h| {
            let e = h.e_polynomial().map_err(|e| e.to_string())?;
            match connectedness_report(&e) {
                None if h.d_mu < 0 => Ok(false),
                None => Err(format!("E = 0 with d_μ = {}", h.d_mu)),
                Some(c) if c.holds() => Ok(true),
                Some(c) => Err(format!(
                    "lowest term {} q^{}",
                    c.coefficient, c.lowest_exponent
                )),
            }
        },
    )
}

fn duality(results: &[HLVResult]) -> Outcome {
    over_sweep(results, "", |h| {
        let mhp = h.conjectural_mhp().map_err(|e| e.to_string())?;
        let r = curious_duality_check(&mhp, h.d_mu);
        r.holds
            .then_some(true)
            .ok_or_else(|| format!("mismatch at {:?}", r.mismatch))
    })
}

fn kac_positive(results: &[HLVResult]) -> Outcome {
    over_sweep(results, "", |h| {
        let a = h.kac_polynomial().map_err(|e| e.to_string())?;
        has_nonnegative_integer_coeffs(&a)
            .then_some(true)
            .ok_or_else(|| format!("A = {a}"))
    })
}

fn valuation() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for g in 1..=2 {
        for n in 1..=5 {
            for lambda in [Partition::column(n), Partition::row(n)] {
                let mu = MultiPartition::new(vec![lambda]).unwrap();
                let s =
                    valuation_sweep(&mu, g, YConvention::Geometric).map_err(|e| e.to_string())?;
                count += 1;
                if s.holds != Some(true) {
                    let mins: Vec<String> = s.minimizers.iter().map(|l| format!("({l})")).collect();
                    failures.push(format!(
                        "μ=({mu}) g={g}: v={} at {}",
                        s.v_min,
                        mins.join(" ")
                    ));
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{count} instances"))
    } else {
        Err(format!(
            "{} of {count} without a unique minimizer: {}",
            failures.len(),
            failures.join("; ")
        ))
    }
}

fn expansion() -> Outcome {
    for g in 0..=2 {
        for k in 1..=2 {
            let r = expansion_lemma_check(g, k, 4, YConvention::Geometric)
                .map_err(|e| e.to_string())?;
            if let Some(m) = r.first_mismatch() {
                return Err(format!("g={g} k={k} at {}", m.mu));
            }
        }
    }
    let printed =
        expansion_lemma_check(1, 1, 2, YConvention::Printed).map_err(|e| e.to_string())?;
    let first = printed.first_mismatch().map(|m| m.mu.size());
    Ok(format!(
        "g ≤ 2, k ≤ 2, |μ| ≤ 4; printed convention first differs at n = {first:?}"
    ))
}

fn hilbert() -> Outcome {
    let r = hilbert_identity_check(5, 6).map_err(|e| e.to_string())?;
    if !r.specialized_holds() {
        return Err("specialized identity fails".into());
    }
    if !r.full_holds() {
        return Err("full identity fails (conjecture level)".into());
    }
    Ok("specialized through T^6, full through T^5".into())
}

fn shadow() -> Outcome {
    for v in goettsche_shadow_check(4).map_err(|e| e.to_string())? {
        if !v.e_equal {
            return Err(format!("n={}: t = -1 specializations differ", v.n));
        }
        if !v.mhp_equal {
            return Err(format!(
                "n={}: {} vs {} (conjecture level)",
                v.n, v.mhp, v.goettsche
            ));
        }
    }
    Ok("n ≤ 4".into())
}

fn quasimodular() -> Outcome {
    let r = quasimodular_check(5, 8).map_err(|e| e.to_string())?;
    if r.holds() {
        Ok(format!(
            "through T^5 and u^8, normalization witness {}",
            r.normalization_witness
        ))
    } else {
        Err(format!("{:?}", r.mismatches.first()))
    }
}

fn macdonald() -> Outcome {
    let store = MemoryStore::new();
    let mut count = 0;
    for n in 1..=6 {
        for lambda in enumerate_partitions(n) {
            let c = htilde_checks(&lambda, &store).map_err(|e| e.to_string())?;
            if !c.all() {
                return Err(format!("{c:?}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} partitions"))
}

fn performance() -> Outcome {
    let (results, kernel_time) = timed(|| {
        let kernel = Kernel::new(2, 2, 5)?;
        canonical(5, 2)
            .par_iter()
            .map(|mu| kernel.hlv(mu))
            .collect::<hlv_core::error::Result<Vec<_>>>()
    });
    let results = results.map_err(|e| e.to_string())?;
    if kernel_time >= Duration::from_secs(300) {
        return Err(format!("n=5 k=2 g=2 took {kernel_time:?}"));
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (output, verify_time) = timed(|| {
        Command::new(env!("CARGO_BIN_EXE_hlv"))
            .args([
                "--cache-dir",
                dir.path().to_str().unwrap(),
                "verify",
                "all",
                "--n-max",
                "3",
            ])
            .output()
    });
    let output = output.map_err(|e| e.to_string())?;
    if verify_time >= Duration::from_secs(600) {
        return Err(format!("verify all took {verify_time:?}"));
    }
    let code = output.status.code();
    Ok(format!(
        "n=5 k=2 g=2 ({} multipartitions) in {kernel_time:.1?}; verify all --n-max 3 in {verify_time:.1?}, exit {code:?}",
        results.len()
    ))
}

fn main() -> ExitCode {
    let results = sweep();
    let criteria: Vec<(u32, &str, Check)> = vec![
        (1, "closed-form kernel", Box::new(closed_form_kernel)),
        (
            2,
            "point counts match E(q)",
            Box::new(point_count_equivalence),
        ),
        (3, "quiver counts match A(q)", Box::new(kac_equivalence)),
        (4, "E palindromic", Box::new(|| palindromic(&results))),
        (5, "E connected", Box::new(|| connected(&results))),
        (6, "unique valuation minimizer", Box::new(valuation)),
        (7, "expansion consistency", Box::new(expansion)),
        (8, "Hilbert scheme identity", Box::new(hilbert)),
        (9, "Göttsche shadow", Box::new(shadow)),
        (10, "quasimodular identity", Box::new(quasimodular)),
        (11, "curious duality", Box::new(|| duality(&results))),
        (12, "Macdonald validation", Box::new(macdonald)),
        (13, "Kac positivity", Box::new(|| kac_positive(&results))),
        (14, "performance envelope", Box::new(performance)),
    ];
    let mut unexpected = 0;
    for (id, name, check) in criteria {
        match check() {
            Ok(detail) => println!("criterion {id:>2} PASS {name}: {detail}"),
            Err(detail) => {
                let known = KNOWN_FAILURES.contains(&id);
                if !known {
                    unexpected += 1;
                }
                println!(
                    "criterion {id:>2} FAIL {name}{}: {detail}",
                    if known { " (known)" } else { "" }
                );
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
