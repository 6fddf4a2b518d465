use anyhow::{anyhow, Result};
use hlv_core::partitions::{multipartition_to_dimvec, CometDimensionVector, MultiPartition};
use hlv_oracle::{
    char_variety_point_count, generic_class_tuple_search, quiver_abs_indec_count, CometQuiver,
    PointCount, QuiverCount, SmallField,
};
use serde_json::{json, Value};

use crate::args::Instance;
use crate::commands::resolve;
use crate::record::{Outcome, Verdict};
use crate::UsageError;

fn field(q: u32) -> Result<SmallField> {
    SmallField::new(q).map_err(|e| UsageError(format!("--q: {e}")).into())
}

pub fn point_count_raw(g: u32, mu: &MultiPartition, q: u32) -> Result<(PointCount, Value)> {
    let f = field(q)?;
    let parts: Vec<Vec<u32>> = mu.components().iter().map(|c| c.parts().to_vec()).collect();
    let tuple = generic_class_tuple_search(&parts, &f)
        .ok_or_else(|| anyhow!("no generic class tuple of type {mu} exists over F_{q}"))?;
    let count = char_variety_point_count(g, &tuple, &f)?;
    let classes: Vec<Vec<[u64; 2]>> = tuple
        .classes
        .iter()
        .map(|c| c.iter().map(|&(a, m)| [a as u64, m as u64]).collect())
        .collect();
    let instance = json!({ "g": g, "mu": mu.to_string(), "q": q, "eigenvalues": classes });
    Ok((count, instance))
}

pub fn point_count(g: u32, mu: &MultiPartition, q: u32) -> Result<Outcome> {
    let (count, instance) = point_count_raw(g, mu, q)?;
    let json = json!({
        "instance": instance,
        "raw": count.raw,
        "quotient": count.quotient,
        "budget_steps": count.budget_steps,
    });
    Ok(Outcome::new(json, Verdict::Pass).with_text(count.quotient.to_string()))
}

pub fn kac_count_raw(v: &CometDimensionVector, q: u32) -> Result<QuiverCount> {
    let f = field(q)?;
    let quiver = CometQuiver::new(v.g, v.v0, v.legs.clone())?;
    Ok(quiver_abs_indec_count(&quiver, &f)?)
}

/// `raw` counts isomorphism classes of all representations, `quotient` the
/// absolutely indecomposable ones.
pub fn kac_count(instance: &Instance, q: u32) -> Result<Outcome> {
    let (mu, dimvec) = resolve(instance)?;
    let v = dimvec.unwrap_or_else(|| multipartition_to_dimvec(&mu, instance.g));
    let count = kac_count_raw(&v, q)?;
    let json = json!({
        "instance": { "g": instance.g, "dimvec": v.to_string(), "mu": mu.to_string(), "q": q },
        "raw": count.orbits,
        "quotient": count.count,
        "budget_steps": count.budget_steps,
    });
    Ok(Outcome::new(json, Verdict::Pass).with_text(count.count.to_string()))
}
