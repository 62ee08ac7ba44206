use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ObstructionError;
use crate::doc::JsonInt;
use crate::scalar::{QuadExt, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstraintPart {
    Rational,
    Irrational,
}

/// `Σ_j coeffs[j]·v_j = rhs` with coprime integer entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearConstraint {
    pub part: ConstraintPart,
    pub coeffs: Vec<JsonInt>,
    pub rhs: JsonInt,
}

impl LinearConstraint {
    fn normalized(part: ConstraintPart, coeffs: &[Rational], rhs: &Rational) -> Self {
        let all: Vec<&Rational> = coeffs.iter().chain(std::iter::once(rhs)).collect();
        let den = all.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let mut ints: Vec<BigInt> = all.iter().map(|r| (*r * Rational::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() {
            for x in &mut ints {
                *x /= &g;
            }
        }
        let lead = ints.iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(BigInt::one);
        if lead.is_negative() {
            for x in &mut ints {
                *x = -&*x;
            }
        }
        let rhs = ints.pop().expect("rhs present");
        LinearConstraint { part, coeffs: ints.into_iter().map(JsonInt).collect(), rhs: JsonInt(rhs) }
    }

    pub fn holds(&self, v: &[u64]) -> bool {
        let lhs: BigInt = self.coeffs.iter().zip(v).map(|(c, &x)| &c.0 * BigInt::from(x)).sum();
        lhs == self.rhs.0
    }

    /// `3·v_Z = 2`, with basis labels.
    pub fn render(&self, labels: &[String]) -> String {
        let mut terms = Vec::new();
        for (c, l) in self.coeffs.iter().zip(labels) {
            if c.0.is_zero() {
                continue;
            }
            let s = if c.0.is_one() { format!("v_{l}") } else { format!("{}·v_{l}", c.0) };
            terms.push(s);
        }
        let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        format!("{lhs} = {}", self.rhs.0)
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let labels: Vec<String> = (0..self.coeffs.len()).map(|i| i.to_string()).collect();
        f.write_str(&self.render(&labels))
    }
}

/// One nontrivial simple summand of `I(1)`, paired with a codegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct I1Row {
    pub codegree: QuadExt,
    /// `FPdim(C)/codegree`, the required FP dimension of the summand.
    pub target: QuadExt,
    pub algebraic_integer: bool,
    /// Equivalent to `Σ_j v_j d_j = target` with `v_0 = 1`.
    pub constraints: Vec<LinearConstraint>,
    /// All vectors `v` (unit coordinate first) with `0 ≤ v_j ≤ FI[1][j]`.
    pub candidates: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct I1System {
    /// `F(I(1))`, the column sums every solution must reproduce.
    pub bounds: Vec<u64>,
    pub rows: Vec<I1Row>,
    /// Each solution assigns one candidate per row, in row order.
    pub solutions: Vec<Vec<Vec<u64>>>,
}

impl I1System {
    pub fn feasible(&self) -> bool {
        !self.solutions.is_empty()
    }
}

/// Solves for the `F`-images of the simple summands of `I(1)` assuming each
/// occurs once. `codegrees` must be sorted descending; `dims` exact.
pub fn i1_dimension_system(
    dims: &[QuadExt],
    codegrees: &[QuadExt],
    fi_unit: &[i64],
    cap: u64,
) -> Result<I1System, ObstructionError> {
    let n = dims.len();
    let bounds: Vec<u64> = fi_unit.iter().map(|&x| x as u64).collect();
    let f_max = &codegrees[0];
    let mut rows = Vec::new();
    let mut work = 0u64;
    for f in &codegrees[1..] {
        let target = f_max / f;
        for d in dims {
            if !d.compatible(&target) {
                return Err(ObstructionError::Exactness(format!("mixed radicands: dimension {d} and target {target}")));
            }
        }
        let rest = &target - &QuadExt::one();
        let mut constraints = vec![LinearConstraint::normalized(
            ConstraintPart::Rational,
            &std::iter::once(Rational::zero()).chain(dims[1..].iter().map(|d| d.p().clone())).collect::<Vec<_>>(),
            rest.p(),
        )];
        let irrational = !rest.is_rational() || dims.iter().any(|d| !d.is_rational());
        if irrational {
            constraints.push(LinearConstraint::normalized(
                ConstraintPart::Irrational,
                &std::iter::once(Rational::zero()).chain(dims[1..].iter().map(|d| d.q().clone())).collect::<Vec<_>>(),
                rest.q(),
            ));
        }
        let candidates = enumerate(&constraints, &bounds, n, cap, &mut work)?;
        rows.push(I1Row { codegree: f.clone(), algebraic_integer: target.is_algebraic_integer(), target, constraints, candidates });
    }
    let solutions = combine(&rows, &bounds, cap, &mut work)?;
    Ok(I1System { bounds, rows, solutions })
}

fn enumerate(
    constraints: &[LinearConstraint],
    bounds: &[u64],
    n: usize,
    cap: u64,
    work: &mut u64,
) -> Result<Vec<Vec<u64>>, ObstructionError> {
    let coeffs: Vec<Vec<i128>> = constraints
        .iter()
        .map(|c| c.coeffs.iter().map(|x| x.0.to_i128().expect("small coefficient")).collect())
        .collect();
    let rhs: Vec<i128> = constraints.iter().map(|c| c.rhs.0.to_i128().unwrap_or(i128::MAX)).collect();
    // Range still reachable from variables j.. for each constraint.
    let mut lo = vec![vec![0i128; n + 1]; constraints.len()];
    let mut hi = vec![vec![0i128; n + 1]; constraints.len()];
    for (c, co) in coeffs.iter().enumerate() {
        for j in (1..n).rev() {
            let t = co[j] * bounds[j] as i128;
            lo[c][j] = lo[c][j + 1] + t.min(0);
            hi[c][j] = hi[c][j + 1] + t.max(0);
        }
    }
    let mut out = Vec::new();
    let mut v = vec![0u64; n];
    v[0] = 1;
    let mut partial = vec![0i128; constraints.len()];
    fn rec(
        j: usize,
        st: (&[Vec<i128>], &[i128], &[Vec<i128>], &[Vec<i128>], &[u64]),
        v: &mut Vec<u64>,
        partial: &mut Vec<i128>,
        out: &mut Vec<Vec<u64>>,
        cap: u64,
        work: &mut u64,
    ) -> Result<(), ObstructionError> {
        *work += 1;
        if *work > cap {
            return Err(ObstructionError::Cap { cap });
        }
        let (coeffs, rhs, lo, hi, bounds) = st;
        for c in 0..coeffs.len() {
            let need = rhs[c] - partial[c];
            if need < lo[c][j] || need > hi[c][j] {
                return Ok(());
            }
        }
        if j == v.len() {
            out.push(v.clone());
            return Ok(());
        }
        for x in 0..=bounds[j] {
            v[j] = x;
            for c in 0..coeffs.len() {
                partial[c] += coeffs[c][j] * x as i128;
            }
            rec(j + 1, st, v, partial, out, cap, work)?;
            for c in 0..coeffs.len() {
                partial[c] -= coeffs[c][j] * x as i128;
            }
        }
        v[j] = 0;
        Ok(())
    }
    rec(1, (&coeffs, &rhs, &lo, &hi, bounds), &mut v, &mut partial, &mut out, cap, work)?;
    Ok(out)
}

fn combine(rows: &[I1Row], bounds: &[u64], cap: u64, work: &mut u64) -> Result<Vec<Vec<Vec<u64>>>, ObstructionError> {
    let n = bounds.len();
    let mut remaining: Vec<i64> = bounds.iter().map(|&b| b as i64).collect();
    remaining[0] -= 1;
    let mut out = Vec::new();
    let mut pick: Vec<usize> = Vec::new();
    fn rec(
        rows: &[I1Row],
        remaining: &mut Vec<i64>,
        pick: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<u64>>>,
        n: usize,
        cap: u64,
        work: &mut u64,
    ) -> Result<(), ObstructionError> {
        *work += 1;
        if *work > cap {
            return Err(ObstructionError::Cap { cap });
        }
        let r = pick.len();
        if r == rows.len() {
            if remaining.iter().all(|&x| x == 0) {
                out.push(pick.iter().zip(rows).map(|(&i, row)| row.candidates[i].clone()).collect());
            }
            return Ok(());
        }
        // Rows with equal codegrees are interchangeable; keep their picks sorted.
        let start = if r > 0 && rows[r].codegree == rows[r - 1].codegree { pick[r - 1] } else { 0 };
        for i in start..rows[r].candidates.len() {
            let c = &rows[r].candidates[i];
            if (0..n).any(|j| (c[j] as i64) > remaining[j]) {
                continue;
            }
            for j in 0..n {
                remaining[j] -= c[j] as i64;
            }
            pick.push(i);
            rec(rows, remaining, pick, out, n, cap, work)?;
            pick.pop();
            for j in 0..n {
                remaining[j] += c[j] as i64;
            }
        }
        Ok(())
    }
    rec(rows, &mut remaining, &mut pick, &mut out, n, cap, work)?;
    Ok(out)
}
