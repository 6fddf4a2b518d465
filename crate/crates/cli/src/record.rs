//! Verdict bookkeeping and the JSON shape of kernel records.

use hlv_core::arith::{MultiPoly, Rational};
use hlv_core::error::Error as CoreError;
use hlv_core::kernel::{
    connectedness_report, curious_duality_check, has_nonnegative_integer_coeffs, is_palindromic,
    HLVResult,
};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

/// Worst outcome of a run; the order is the severity order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Conjecture,
    Theorem,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::Theorem => 2,
            Verdict::Conjecture => 3,
        }
    }
}

/// A failed check with enough context to reproduce it.
#[derive(Clone, Debug)]
pub struct Failure {
    pub level: Verdict,
    pub check: &'static str,
    pub instance: String,
    pub detail: String,
}

impl Failure {
    pub fn new(
        level: Verdict,
        check: &'static str,
        instance: impl Into<String>,
        detail: impl Into<String>,
    ) -> Self {
        Failure {
            level,
            check,
            instance: instance.into(),
            detail: detail.into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "check": self.check, "instance": self.instance, "detail": self.detail })
    }
}

pub fn worst(failures: &[Failure]) -> Verdict {
    failures
        .iter()
        .map(|f| f.level)
        .max()
        .unwrap_or(Verdict::Pass)
}

pub struct Outcome {
    pub json: Value,
    pub text: Option<String>,
    pub verdict: Verdict,
}

impl Outcome {
    pub fn new(json: Value, verdict: Verdict) -> Self {
        Outcome {
            json,
            text: None,
            verdict,
        }
    }

    pub fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }
}

/// Integer-valued rationals as JSON numbers, everything else as `"p/q"`.
pub fn integer_json(r: &Rational) -> Value {
    match r.is_integer().then(|| r.to_integer().to_i64()).flatten() {
        Some(n) => json!(n),
        None => json!(r.to_string()),
    }
}

pub fn poly_json(p: &hlv_core::error::Result<MultiPoly>) -> Value {
    match p {
        Ok(p) => json!(p.to_string()),
        Err(_) => Value::Null,
    }
}

fn failure_level(e: &CoreError, conjectural: bool) -> Verdict {
    match e {
        CoreError::InternalInconsistency(_) => Verdict::Theorem,
        _ if conjectural => Verdict::Conjecture,
        _ => Verdict::Theorem,
    }
}

/// The JSON record of one kernel computation and the checks that failed.
pub fn kernel_record(h: &HLVResult) -> (Value, Vec<Failure>) {
    let instance = format!("mu={} g={}", h.mu, h.g);
    let mut failures = Vec::new();
    if !h.is_polynomial {
        failures.push(Failure::new(
            Verdict::Conjecture,
            "polynomiality",
            &instance,
            h.to_string(),
        ));
        let record = json!({
            "mu": h.mu.to_string(), "g": h.g, "d_mu": h.d_mu, "hlv": h.to_string(), "is_polynomial": false,
            "E": null, "kac": null, "mhp": null, "checks": {},
        });
        return (record, failures);
    }
    let e = h.e_polynomial();
    let kac = h.kac_polynomial();
    let mhp = h.conjectural_mhp();
    for (name, value, conjectural) in [
        ("E-polynomial", &e, false),
        ("Kac polynomial", &kac, false),
        ("mixed Hodge polynomial", &mhp, true),
    ] {
        if let Err(err) = value {
            failures.push(Failure::new(
                failure_level(err, conjectural),
                name,
                &instance,
                err.to_string(),
            ));
        }
    }
    let palindromic = e.as_ref().ok().map(|e| is_palindromic(e, h.d_mu));
    if palindromic == Some(false) {
        failures.push(Failure::new(
            Verdict::Theorem,
            "palindromic",
            &instance,
            "E(q) differs from q^d E(1/q)",
        ));
    }
    // `None` inside: E = 0, the variety is empty and there is nothing to check
    let connected = e.as_ref().ok().map(connectedness_report);
    if let Some(Some(report)) = &connected {
        if !report.holds() {
            failures.push(Failure::new(
                Verdict::Theorem,
                "connected",
                &instance,
                format!(
                    "lowest term {} q^{}",
                    report.coefficient, report.lowest_exponent
                ),
            ));
        }
    }
    let duality = mhp.as_ref().ok().map(|m| curious_duality_check(m, h.d_mu));
    if let Some(d) = &duality {
        if let Some((i, j)) = d.mismatch {
            failures.push(Failure::new(
                Verdict::Conjecture,
                "curious_duality",
                &instance,
                format!("differs at q^{i} t^{j}"),
            ));
        }
    }
    let kac_nonnegative = kac.as_ref().ok().map(has_nonnegative_integer_coeffs);
    if kac_nonnegative == Some(false) {
        failures.push(Failure::new(
            Verdict::Conjecture,
            "kac_nonnegative",
            &instance,
            "negative coefficient in A(q)",
        ));
    }
    let constant_term = e
        .as_ref()
        .ok()
        .map(|e| integer_json(&e.constant_term()))
        .unwrap_or(Value::Null);
    let record = json!({
        "mu": h.mu.to_string(),
        "g": h.g,
        "d_mu": h.d_mu,
        "hlv": h.hlv.to_string(),
        "is_polynomial": true,
        "E": poly_json(&e),
        "kac": poly_json(&kac),
        "mhp": poly_json(&mhp),
        "checks": {
            "palindromic": palindromic,
            "curious_duality": duality.map(|d| d.holds),
            "connected_constant_term": constant_term,
            "connected": connected.map(|c| c.map(|r| r.holds())),
            "kac_nonnegative": kac_nonnegative,
        },
    });
    (record, failures)
}
