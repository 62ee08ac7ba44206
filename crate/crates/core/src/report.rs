//! One-page analysis of a fusion ring.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::mr::{
    grading_forcing_check, integrality_class, prime_rank_check, spherical_witness, GradingForcing, IntegralityClass,
    MrData, PrimalityReport, SphericalCertificate,
};
use crate::scalar::QuadExt;
use crate::ring::{adjoint_and_grading, detect_mr, fpdims, global_fpdim, FpDim, FusionRing, GradingData, RingError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingReport {
    pub name: Option<String>,
    pub labels: Vec<String>,
    pub fpdims: Vec<FpDim>,
    pub global_fpdim: FpDim,
    pub pointed: bool,
    pub commutative: bool,
    pub integrality: Option<IntegralityClass>,
    pub mr: Option<MrData>,
    pub near_group: bool,
    pub grading: GradingData,
    /// A grading component of rank one exists, so the adjoint part admits a fiber functor.
    pub fiber_functor_flag: bool,
    pub spherical: Option<SphericalCertificate>,
    pub grading_forcing: Option<GradingForcing>,
    pub primality: Option<PrimalityReport>,
    /// Labels from the non-degenerate trichotomy that the fusion rules do not exclude.
    pub classification: Vec<String>,
}

/// Integrality read off the dimensions when no MR data is available.
fn integrality_from_dims(dims: &[FpDim], total: &FpDim) -> Option<IntegralityClass> {
    let exact: Option<Vec<_>> = dims.iter().map(FpDim::exact).collect();
    let exact = exact?;
    if exact.iter().all(|d| d.is_integer()) {
        Some(IntegralityClass::Integral)
    } else if total.exact().is_some_and(|t| t.is_integer()) {
        Some(IntegralityClass::WeaklyIntegralOnly)
    } else {
        Some(IntegralityClass::Irrational)
    }
}

pub fn analyze(ring: &FusionRing, name: Option<&str>) -> Result<RingReport, RingError> {
    let dims = fpdims(ring).dims;
    let total = global_fpdim(ring);
    let pointed = dims.iter().all(|d| d.exact().is_some_and(|q| *q == QuadExt::one()));
    let grading = adjoint_and_grading(ring);
    // Vacuous when the adjoint part is trivial.
    let fiber_functor_flag = grading.adjoint.len() > 1 && !grading.rank_one_components.is_empty();
    let mr = if ring.rank() >= 2 { detect_mr(ring)? } else { None };

    let mut report = RingReport {
        name: name.map(String::from),
        labels: ring.labels().to_vec(),
        integrality: integrality_from_dims(&dims, &total),
        fpdims: dims,
        global_fpdim: total,
        pointed,
        commutative: ring.is_commutative(),
        mr: None,
        near_group: false,
        grading,
        fiber_functor_flag,
        spherical: None,
        grading_forcing: None,
        primality: None,
        classification: Vec::new(),
    };
    let Some(mr) = mr else { return Ok(report) };

    let class = integrality_class(mr.a, mr.kappa);
    report.integrality = Some(class);
    report.near_group = mr.d.iter().all(|&d| d == 1);
    report.spherical = Some(spherical_witness(mr.a, mr.kappa));
    if class != IntegralityClass::Irrational {
        report.grading_forcing = grading_forcing_check(ring, &mr)?;
    }
    report.primality = Some(prime_rank_check(ring, &mr)?);
    report.classification = classify(ring, &mr, &report);
    report.mr = Some(mr);
    Ok(report)
}

fn classify(ring: &FusionRing, mr: &MrData, report: &RingReport) -> Vec<String> {
    let mut out = Vec::new();
    if ring.rank() == 2 {
        out.push(match mr.kappa {
            0 => "pointed rank 2: candidate C(ℤ₂, ±i) if non-degenerate".into(),
            1 => "Fibonacci rules: candidate Fibonacci category if non-degenerate".into(),
            k => format!("rank 2 with κ={k}: no fusion category"),
        });
    } else if report.grading_forcing.is_some() {
        out.push("ℤ₂-graded over D: candidate minimal extension of a slightly degenerate D if non-degenerate".into());
    } else {
        out.push("rank ≥ 3 without the forced ℤ₂-grading: cannot be non-degenerate".into());
    }
    if report.primality.as_ref().is_some_and(|p| p.prime) {
        out.push("prime".into());
    }
    out
}

fn subscript(n: usize) -> String {
    n.to_string().chars().map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap()).collect()
}

impl RingReport {
    /// The one-line verdict, e.g. `MR(a=1, κ=1), irrational, spherical witness (1,0)`.
    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        match &self.mr {
            Some(mr) => parts.push(format!("MR(a={}, κ={})", mr.a, mr.kappa)),
            None if self.pointed => parts.push("pointed, no MR structure".into()),
            None => parts.push("no MR structure".into()),
        }
        if let Some(c) = self.integrality {
            if self.mr.is_some() || !self.pointed {
                parts.push(c.to_string());
            }
        }
        if !self.grading.is_trivial() {
            let g = self.grading.order();
            parts.push(if self.grading.is_cyclic() {
                format!("ℤ{}-graded", subscript(g))
            } else {
                format!("graded by a group of order {g}")
            });
        }
        if self.fiber_functor_flag {
            parts.push("rank-1 component ⇒ fiber-functor flag".into());
        }
        if let Some(s) = &self.spherical {
            if s.kappa > 0 {
                parts.push(format!("spherical witness ({},{})", s.conclusion.0, s.conclusion.1));
            }
        }
        if self.near_group {
            parts.push("near-group".into());
        }
        if self.mr.is_none() {
            parts.push(format!("rank-{}", self.labels.len()));
        }
        parts.join(", ")
    }

    fn names(&self, idx: &[usize]) -> String {
        let v: Vec<&str> = idx.iter().map(|&i| self.labels[i].as_str()).collect();
        format!("{{{}}}", v.join(", "))
    }
}

impl fmt::Display for RingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        if let Some(n) = &self.name {
            writeln!(s, "ring: {n}")?;
        }
        writeln!(s, "{}", self.summary())?;
        writeln!(s)?;
        writeln!(s, "rank {}{}", self.labels.len(), if self.commutative { "" } else { " (noncommutative)" })?;
        for (l, d) in self.labels.iter().zip(&self.fpdims) {
            writeln!(s, "  FPdim({l}) = {d}")?;
        }
        writeln!(s, "  FPdim(total) = {}", self.global_fpdim)?;
        if let Some(c) = self.integrality {
            writeln!(s, "integrality: {c}")?;
        }
        match &self.mr {
            None => writeln!(s, "MR: none (no subring of rank {})", self.labels.len().saturating_sub(1))?,
            Some(mr) => {
                writeln!(
                    s,
                    "MR: D = {}, X_n = {}, κ = {}, d = {:?}, a = {}",
                    self.names(&mr.base),
                    self.labels[mr.extra],
                    mr.kappa,
                    mr.d,
                    mr.a
                )?;
                if self.near_group {
                    writeln!(s, "  D is pointed: near-group rules")?;
                }
            }
        }
        let g = &self.grading;
        writeln!(s, "adjoint subring: {}", self.names(&g.adjoint))?;
        let comps: Vec<String> = g.components.iter().map(|c| self.names(c)).collect();
        writeln!(s, "universal grading: order {}, components {}", g.order(), comps.join(" "))?;
        if let Some(eq) = g.dims_equal() {
            writeln!(s, "  component dimensions equal: {eq}")?;
        }
        if self.fiber_functor_flag {
            let c: Vec<String> = g.rank_one_components.iter().map(|&c| self.names(&g.components[c])).collect();
            writeln!(s, "  rank-1 component {}: the adjoint part carries a fiber functor", c.join(" "))?;
        }
        if let Some(sp) = &self.spherical {
            writeln!(s, "spherical certificate (a={}, κ={}):", sp.a, sp.kappa)?;
            writeln!(s, "  FPdim(C̃) = {}", sp.fpdim_tilde)?;
            for c in &sp.candidates {
                writeln!(
                    s,
                    "  (s,t)=({},{}): x = {}, xy = {} [{} test] {}",
                    c.s,
                    c.t,
                    c.x.as_ref().map_or("(biquadratic)".to_string(), |x| x.to_string()),
                    c.xy,
                    c.filter,
                    if c.survives { "survives" } else { "excluded" }
                )?;
            }
            writeln!(s, "  conclusion (s,t) = ({},{})", sp.conclusion.0, sp.conclusion.1)?;
        }
        if let Some(gf) = &self.grading_forcing {
            writeln!(
                s,
                "grading forced: {} · d_n² = {} with d_n² = {}, adjoint = D, group order {}",
                gf.m.0, gf.total.0, gf.d_n_squared.0, gf.grading_order
            )?;
        }
        if let Some(p) = &self.primality {
            writeln!(s, "primality: {}", if p.prime { "prime" } else { "not excluded" })?;
            for c in &p.checks {
                writeln!(
                    s,
                    "  A = {}: rank {} {} {} and {} {}",
                    self.names(&c.basis),
                    c.rank,
                    if c.divides_n { "divides" } else { "does not divide" },
                    p.n,
                    if c.divides_n_minus_1 { "divides" } else { "does not divide" },
                    p.n_minus_1
                )?;
            }
        }
        for c in &self.classification {
            writeln!(s, "label: {c}")?;
        }
        f.write_str(&s)
    }
}
