use serde::{Deserialize, Serialize};

use super::gram::gram_of;
use super::{
    codegrees, gram_search, i1_dimension_system, induction_images, GramProblem, GramStatus, I1System, ObstructionError,
    PruneStats, DEFAULT_NODE_CAP,
};
use crate::matrix::IntMatrix;
use crate::ring::{fpdims, FusionRing, RawRing, RingError};
use crate::scalar::{IntPoly, QuadExt};

/// Label attached to every feasible verdict.
pub const FEASIBLE_LABEL: &str = "passes necessary conditions (not a proof of categorifiability)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Infeasible,
    Feasible,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructOptions {
    pub node_cap: u64,
    /// Budget for enumerating `I(1)` candidates and their combinations.
    pub enumeration_cap: u64,
    pub witness_limit: usize,
}

impl Default for ObstructOptions {
    fn default() -> Self {
        ObstructOptions { node_cap: DEFAULT_NODE_CAP, enumeration_cap: DEFAULT_NODE_CAP, witness_limit: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreenEntry {
    pub codegree: QuadExt,
    pub ratio: QuadExt,
    pub algebraic_integer: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramAttempt {
    /// Index into the `I(1)` solutions.
    pub solution: usize,
    pub status: GramStatus,
    pub nodes: u64,
    pub pruned: PruneStats,
    pub witness: Option<Vec<Vec<i64>>>,
    /// `Σ rᵀr = H` re-checked on the witness.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum Step {
    Commutativity {
        commutative: bool,
        passed: bool,
    },
    Codegrees {
        matrix: IntMatrix,
        charpoly: IntPoly,
        values: Vec<QuadExt>,
        global_fpdim: QuadExt,
        passed: bool,
    },
    InductionImages {
        fi: IntMatrix,
        symmetric: bool,
        passed: bool,
    },
    AlgebraicIntegerScreen {
        entries: Vec<ScreenEntry>,
        passed: bool,
    },
    I1System {
        system: I1System,
        passed: bool,
    },
    GramSearch {
        conditions: Vec<String>,
        attempts: Vec<GramAttempt>,
        passed: bool,
    },
}

impl Step {
    pub fn name(&self) -> &'static str {
        match self {
            Step::Commutativity { .. } => "commutativity",
            Step::Codegrees { .. } => "codegrees",
            Step::InductionImages { .. } => "induction-images",
            Step::AlgebraicIntegerScreen { .. } => "algebraic-integer-screen",
            Step::I1System { .. } => "i1-system",
            Step::GramSearch { .. } => "gram-search",
        }
    }

    pub fn passed(&self) -> bool {
        match self {
            Step::Commutativity { passed, .. }
            | Step::Codegrees { passed, .. }
            | Step::InductionImages { passed, .. }
            | Step::AlgebraicIntegerScreen { passed, .. }
            | Step::I1System { passed, .. }
            | Step::GramSearch { passed, .. } => *passed,
        }
    }
}

/// A hypothetical simple object of the center, seen through `F`.
///
/// By adjunction its multiplicity in `I(X_V)` equals the coefficient of
/// `X_V` in `F(s)`, so one vector serves as both.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramWitness {
    pub label: String,
    pub multiplicities: Vec<i64>,
    pub image: Vec<i64>,
    pub fpdim: QuadExt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    pub ring: RawRing,
    pub options: ObstructOptions,
    pub verdict: Verdict,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Index of the step whose failure decided an infeasible verdict.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decisive_step: Option<usize>,
    pub steps: Vec<Step>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<GramWitness>,
    pub replay: String,
}

impl ObstructionCertificate {
    pub fn i1_system(&self) -> Option<&I1System> {
        self.steps.iter().find_map(|s| match s {
            Step::I1System { system, .. } => Some(system),
            _ => None,
        })
    }

    pub fn induction_matrix(&self) -> Option<&IntMatrix> {
        self.steps.iter().find_map(|s| match s {
            Step::InductionImages { fi, .. } => Some(fi),
            _ => None,
        })
    }
}

struct Run {
    steps: Vec<Step>,
}

impl Run {
    fn finish(self, ring: &FusionRing, opts: &ObstructOptions, verdict: Verdict, reason: Option<String>, witnesses: Vec<GramWitness>) -> ObstructionCertificate {
        let decisive_step = if verdict == Verdict::Infeasible { self.steps.iter().position(|s| !s.passed()) } else { None };
        let label = match verdict {
            Verdict::Infeasible => "infeasible: not categorifiable".to_string(),
            Verdict::Feasible => FEASIBLE_LABEL.to_string(),
            Verdict::Inconclusive => "inconclusive".to_string(),
        };
        ObstructionCertificate {
            ring: ring.to_raw(),
            options: opts.clone(),
            verdict,
            label,
            reason,
            decisive_step,
            steps: self.steps,
            witnesses,
            replay: "mrfw obstruct --replay <certificate>".into(),
        }
    }
}

/// Runs the obstruction pipeline; the first failed step decides infeasibility.
pub fn obstruct(ring: &FusionRing, opts: &ObstructOptions) -> ObstructionCertificate {
    let mut run = Run { steps: Vec::new() };
    let inconclusive = |run: Run, why: String| run.finish(ring, opts, Verdict::Inconclusive, Some(why), Vec::new());

    let commutative = ring.is_commutative();
    run.steps.push(Step::Commutativity { commutative, passed: commutative });
    if !commutative {
        return inconclusive(run, "multiplicity-one gate: ring is not commutative".into());
    }

    let cd = match codegrees(ring) {
        Ok(c) => c,
        Err(e) => return inconclusive(run, e.to_string()),
    };
    let Some(dims) = fpdims(ring).exact() else {
        return inconclusive(run, ObstructionError::Exactness("FP dimensions are not in one quadratic field".into()).to_string());
    };
    let total = dims.iter().fold(QuadExt::zero(), |acc, d| &acc + &(d * d));
    let top_ok = cd.values[0] == total;
    run.steps.push(Step::Codegrees { matrix: cd.matrix, charpoly: cd.charpoly, values: cd.values.clone(), global_fpdim: total.clone(), passed: top_ok });
    if !top_ok {
        return inconclusive(run, "largest codegree differs from FPdim(C)".into());
    }

    let im = induction_images(ring);
    run.steps.push(Step::InductionImages { fi: im.fi.clone(), symmetric: im.symmetric, passed: im.symmetric });
    if !im.symmetric {
        return inconclusive(run, format!("induction matrix is not symmetric at {:?}", im.asymmetry));
    }

    let entries: Vec<ScreenEntry> = cd.values[1..]
        .iter()
        .map(|f| {
            let ratio = &total / f;
            ScreenEntry { codegree: f.clone(), algebraic_integer: ratio.is_algebraic_integer(), ratio }
        })
        .collect();
    let screen_ok = entries.iter().all(|e| e.algebraic_integer);
    run.steps.push(Step::AlgebraicIntegerScreen { entries, passed: screen_ok });

    let system = match i1_dimension_system(&dims, &cd.values, im.fi.row(0), opts.enumeration_cap) {
        Ok(s) => s,
        Err(e) if screen_ok => return inconclusive(run, e.to_string()),
        Err(_) => return run.finish(ring, opts, Verdict::Infeasible, None, Vec::new()),
    };
    let i1_ok = system.feasible();
    run.steps.push(Step::I1System { system: system.clone(), passed: i1_ok });
    if !screen_ok || !i1_ok {
        return run.finish(ring, opts, Verdict::Infeasible, None, Vec::new());
    }

    let weakly_integral = total.is_integer();
    let mut conditions = vec!["gram identity Σ F(s)ᵀF(s) = FI".to_string(), "I(1) summands fixed with multiplicity one".to_string()];
    if weakly_integral {
        conditions.push("FPdim(C)²/FPdim(s)² is an algebraic integer".into());
    }
    conditions.push("row multiset closed under duality".into());
    let unit: Vec<i64> = (0..ring.rank()).map(|j| i64::from(j == 0)).collect();
    let mut attempts = Vec::new();
    let mut found: Option<(usize, Vec<Vec<i64>>)> = None;
    let mut capped = false;
    for (si, sol) in system.solutions.iter().enumerate() {
        let mut fixed = vec![unit.clone()];
        fixed.extend(sol.iter().map(|v| v.iter().map(|&x| x as i64).collect::<Vec<i64>>()));
        let problem = GramProblem {
            target: im.fi.clone(),
            fixed: fixed.clone(),
            node_cap: opts.node_cap,
            divisibility: weakly_integral.then(|| (dims.clone(), &total * &total)),
            dual: Some(ring.dual_perm().to_vec()),
            witness_limit: opts.witness_limit,
        };
        let out = gram_search(&problem);
        let witness = out.witnesses.first().cloned();
        let verified = witness.as_ref().is_some_and(|w| {
            let all: Vec<Vec<i64>> = fixed.iter().chain(w).cloned().collect();
            gram_of(&all, ring.rank()) == im.fi
        });
        capped |= out.status == GramStatus::CapExceeded;
        if found.is_none() && verified {
            found = Some((si, witness.clone().expect("verified witness")));
        }
        attempts.push(GramAttempt { solution: si, status: out.status, nodes: out.nodes, pruned: out.pruned, witness, verified });
        if found.is_some() {
            break;
        }
    }
    let passed = found.is_some();
    run.steps.push(Step::GramSearch { conditions, attempts, passed });
    match found {
        Some((si, rows)) => {
            let witnesses = build_witnesses(&dims, &system.solutions[si], &rows);
            run.finish(ring, opts, Verdict::Feasible, None, witnesses)
        }
        None if capped => inconclusive(run, ObstructionError::Cap { cap: opts.node_cap }.to_string()),
        None => run.finish(ring, opts, Verdict::Infeasible, None, Vec::new()),
    }
}

fn build_witnesses(dims: &[QuadExt], i1: &[Vec<u64>], rows: &[Vec<i64>]) -> Vec<GramWitness> {
    let dim = |v: &[i64]| v.iter().zip(dims).fold(QuadExt::zero(), |acc, (&x, d)| &acc + &(d * &QuadExt::from_int(x)));
    let mut out = Vec::new();
    let n = dims.len();
    let unit: Vec<i64> = (0..n).map(|j| i64::from(j == 0)).collect();
    out.push(GramWitness { label: "1".into(), multiplicities: unit.clone(), fpdim: QuadExt::one(), image: unit });
    for (k, v) in i1.iter().enumerate() {
        let v: Vec<i64> = v.iter().map(|&x| x as i64).collect();
        out.push(GramWitness { label: format!("A{}", k + 1), fpdim: dim(&v), multiplicities: v.clone(), image: v });
    }
    for (k, v) in rows.iter().enumerate() {
        out.push(GramWitness { label: format!("G{}", k + 1), fpdim: dim(v), multiplicities: v.clone(), image: v.clone() });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub recorded: Verdict,
    pub recomputed: Verdict,
    pub steps_match: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<usize>,
}

impl ReplayReport {
    pub fn ok(&self) -> bool {
        self.steps_match && self.recorded == self.recomputed
    }
}

/// Re-runs every step of a certificate and compares with what was recorded.
pub fn replay(cert: &ObstructionCertificate) -> Result<ReplayReport, RingError> {
    let ring = cert.ring.clone().into_ring()?;
    let again = obstruct(&ring, &cert.options);
    let first_mismatch = (0..cert.steps.len().max(again.steps.len())).find(|&i| cert.steps.get(i) != again.steps.get(i));
    Ok(ReplayReport {
        recorded: cert.verdict,
        recomputed: again.verdict,
        steps_match: first_mismatch.is_none() && cert.witnesses == again.witnesses,
        first_mismatch,
    })
}
