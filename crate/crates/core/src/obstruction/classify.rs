use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{obstruct, ObstructOptions, Verdict};
use crate::corpus;
use crate::mr::mr_extend_labeled;
use crate::ring::{FusionRing, RingError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationEntry {
    pub kappa: u64,
    pub verdict: Verdict,
    /// Name of the deciding step, or the inconclusive reason.
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationColumn {
    pub base: String,
    pub entries: Vec<ClassificationEntry>,
}

impl ClassificationColumn {
    /// κ values not ruled out.
    pub fn survivors(&self) -> Vec<u64> {
        self.entries.iter().filter(|e| e.verdict != Verdict::Infeasible).map(|e| e.kappa).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationTable {
    pub kappa_max: u64,
    pub columns: Vec<ClassificationColumn>,
}

fn entry(ring: &FusionRing, kappa: u64, opts: &ObstructOptions) -> ClassificationEntry {
    let c = obstruct(ring, opts);
    let detail = match (c.verdict, c.decisive_step, &c.reason) {
        (_, _, Some(r)) => r.clone(),
        (_, Some(i), _) => c.steps[i].name().to_string(),
        _ => c.label.clone(),
    };
    ClassificationEntry { kappa, verdict: c.verdict, detail }
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool")
}

/// Obstructs `C(base, κ)` for every `κ ≤ kappa_max` on `jobs` workers.
pub fn sweep_mr(base: &FusionRing, label: &str, kappa_max: u64, opts: &ObstructOptions, jobs: usize) -> Result<ClassificationColumn, RingError> {
    let rings: Vec<(u64, FusionRing)> = (0..=kappa_max).map(|k| mr_extend_labeled(base, k, label).map(|r| (k, r))).collect::<Result<_, _>>()?;
    let entries = pool(jobs).install(|| rings.par_iter().map(|(k, r)| entry(r, *k, opts)).collect());
    Ok(ClassificationColumn { base: base.labels().join(","), entries })
}

/// Verdict table for the two rank-3 integral bases, ℤ₃ and Rep(S₃).
pub fn classify_rank4_mr(kappa_max: u64, opts: &ObstructOptions, jobs: usize) -> ClassificationTable {
    let jobs_list: Vec<(usize, u64)> = (0..2).flat_map(|b| (0..=kappa_max).map(move |k| (b, k))).collect();
    let mut results: Vec<(usize, ClassificationEntry)> = pool(jobs).install(|| {
        jobs_list
            .par_iter()
            .map(|&(b, k)| {
                let r = if b == 0 { corpus::z3_base(k) } else { corpus::s3_base(k) };
                (b, entry(&r, k, opts))
            })
            .collect()
    });
    results.sort_by_key(|(b, e)| (*b, e.kappa));
    let names = ["Z3", "Rep(S3)"];
    let columns = (0..2)
        .map(|b| ClassificationColumn {
            base: names[b].into(),
            entries: results.iter().filter(|(x, _)| *x == b).map(|(_, e)| e.clone()).collect(),
        })
        .collect();
    ClassificationTable { kappa_max, columns }
}
