use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::matrix::IntMatrix;
use crate::scalar::QuadExt;

/// Find nonnegative integer rows `r_s` with `Σ_s r_sᵀ r_s = target`.
#[derive(Clone, Debug)]
pub struct GramProblem {
    pub target: IntMatrix,
    /// Rows known in advance; subtracted before the search.
    pub fixed: Vec<Vec<i64>>,
    pub node_cap: u64,
    /// `(dims, D)`: every searched row must have `D / dim(row)²` an
    /// algebraic integer.
    pub divisibility: Option<(Vec<QuadExt>, QuadExt)>,
    /// The full row multiset must be stable under `r ↦ r∘dual`.
    pub dual: Option<Vec<usize>>,
    /// Stop after this many witnesses.
    pub witness_limit: usize,
}

impl GramProblem {
    pub fn new(target: IntMatrix) -> Self {
        GramProblem { target, fixed: Vec::new(), node_cap: super::DEFAULT_NODE_CAP, divisibility: None, dual: None, witness_limit: 1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GramStatus {
    Feasible,
    Infeasible,
    CapExceeded,
}

/// Branches cut, by reason.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneStats {
    /// Fixed rows overshoot the target.
    pub negativity: u64,
    /// A 2×2 minor `R_ij² ≤ R_ii·R_jj` failed.
    pub minor: u64,
    /// A column with zero diagonal kept an off-diagonal entry.
    pub finished_column: u64,
    pub divisibility: u64,
    pub dual_closure: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramOutcome {
    pub status: GramStatus,
    pub nodes: u64,
    pub pruned: PruneStats,
    /// Searched rows of each witness; fixed rows are not repeated.
    pub witnesses: Vec<Vec<Vec<i64>>>,
}

struct Search<'a> {
    n: usize,
    order: Vec<usize>,
    r: Vec<i64>,
    rows: Vec<Vec<i64>>,
    fixed: &'a [Vec<i64>],
    problem: &'a GramProblem,
    memo: HashMap<Vec<i64>, bool>,
    nodes: u64,
    capped: bool,
    pruned: PruneStats,
    witnesses: Vec<Vec<Vec<i64>>>,
}

impl Search<'_> {
    fn at(&self, i: usize, j: usize) -> i64 {
        self.r[i * self.n + j]
    }

    fn apply(&mut self, row: &[i64], sign: i64) {
        for i in 0..self.n {
            if row[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                self.r[i * self.n + j] -= sign * row[i] * row[j];
            }
        }
    }

    fn done(&self) -> bool {
        self.capped || self.witnesses.len() >= self.problem.witness_limit
    }

    fn admissible(&mut self, row: &[i64]) -> bool {
        let Some((dims, total)) = &self.problem.divisibility else { return true };
        if let Some(&ok) = self.memo.get(row) {
            return ok;
        }
        let dim = row.iter().zip(dims).fold(QuadExt::zero(), |acc, (&x, d)| &acc + &(d * &QuadExt::from_int(x)));
        let ok = !dim.is_zero() && (total / &(&dim * &dim)).is_algebraic_integer();
        self.memo.insert(row.to_vec(), ok);
        ok
    }

    fn dual_closed(&self) -> bool {
        let Some(dual) = &self.problem.dual else { return true };
        let mut all: Vec<Vec<i64>> = self.fixed.iter().chain(&self.rows).cloned().collect();
        let mut star: Vec<Vec<i64>> = all.iter().map(|r| dual.iter().map(|&d| r[d]).collect()).collect();
        all.sort();
        star.sort();
        all == star
    }

    /// Residual passes the 2×2 minor test and finished columns are clear.
    fn residual_ok(&mut self) -> bool {
        for i in 0..self.n {
            let rii = self.at(i, i);
            for j in i + 1..self.n {
                let rij = self.at(i, j);
                if rij == 0 {
                    continue;
                }
                if rii == 0 || self.at(j, j) == 0 {
                    self.pruned.finished_column += 1;
                    return false;
                }
                if (rij as i128) * (rij as i128) > (rii as i128) * (self.at(j, j) as i128) {
                    self.pruned.minor += 1;
                    return false;
                }
            }
        }
        if self.n > 2 && !positive_semidefinite(&self.r, self.n) {
            self.pruned.minor += 1;
            return false;
        }
        true
    }

    fn dfs(&mut self, prev: Option<&[i64]>) {
        self.nodes += 1;
        if self.nodes > self.problem.node_cap {
            self.capped = true;
            return;
        }
        let Some(p) = self.order.iter().position(|&c| self.at(c, c) > 0) else {
            if self.dual_closed() {
                self.witnesses.push(self.rows.clone());
            } else {
                self.pruned.dual_closure += 1;
            }
            return;
        };
        let c = self.order[p];
        let prev = prev.filter(|r| r[c] > 0 && self.order[..p].iter().all(|&k| r[k] == 0)).map(|r| r.to_vec());
        let mut row = vec![0i64; self.n];
        self.gen(p, p, &mut row, prev.as_deref(), true);
    }

    /// Fills `row` at order positions `q..`, descending lexicographically and
    /// never above `prev` when this row opens the same column.
    fn gen(&mut self, p: usize, q: usize, row: &mut Vec<i64>, prev: Option<&[i64]>, tight: bool) {
        if self.done() {
            return;
        }
        if q == self.n {
            if !self.admissible(row) {
                self.pruned.divisibility += 1;
                return;
            }
            let r = row.clone();
            self.apply(&r, 1);
            if self.residual_ok() {
                self.rows.push(r.clone());
                self.dfs(Some(&r));
                self.rows.pop();
            }
            self.apply(&r, -1);
            return;
        }
        let j = self.order[q];
        let c = self.order[p];
        let mut hi = isqrt(self.at(j, j));
        if q > p {
            hi = hi.min(self.at(c, j) / row[c]);
            for &k in &self.order[p + 1..q] {
                if row[k] > 0 {
                    hi = hi.min(self.at(k, j) / row[k]);
                }
            }
        }
        if tight {
            if let Some(pr) = prev {
                hi = hi.min(pr[j]);
            }
        }
        let lo = if q == p { 1 } else { 0 };
        let mut x = hi;
        while x >= lo {
            row[j] = x;
            let still = tight && prev.is_some_and(|pr| pr[j] == x);
            self.gen(p, q + 1, row, prev, still);
            if self.done() {
                break;
            }
            x -= 1;
        }
        row[j] = 0;
    }
}

/// Symmetric elimination on a positive diagonal pivot, scaled to stay integral.
fn positive_semidefinite(flat: &[i64], n: usize) -> bool {
    let mut a: Vec<Vec<i128>> = (0..n).map(|i| flat[i * n..(i + 1) * n].iter().map(|&x| i128::from(x)).collect()).collect();
    let mut live: Vec<usize> = (0..n).collect();
    while let Some(&p) = live.iter().find(|&&i| a[i][i] != 0) {
        if live.iter().any(|&i| a[i][i] < 0) {
            return false;
        }
        live.retain(|&i| i != p);
        let d = a[p][p];
        let mut g = 0i128;
        for &i in &live {
            for &j in &live {
                a[i][j] = d * a[i][j] - a[i][p] * a[p][j];
                g = num_integer::gcd(g, a[i][j]);
            }
        }
        if g > 1 {
            for &i in &live {
                for &j in &live {
                    a[i][j] /= g;
                }
            }
        }
    }
    live.iter().all(|&i| live.iter().all(|&j| a[i][j] == 0))
}

fn isqrt(x: i64) -> i64 {
    if x <= 0 {
        return 0;
    }
    let mut r = (x as f64).sqrt() as i64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Depth-first search for a Gram factorization of `problem.target`.
///
/// Columns are opened in ascending order of the target diagonal; rows opening
/// the same column are generated in descending lexicographic order, so every
/// multiset of rows is visited once.
pub fn gram_search(problem: &GramProblem) -> GramOutcome {
    let h = &problem.target;
    let n = h.rows();
    assert!(h.is_square() && h.is_symmetric(), "Gram target must be square and symmetric");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (h[(i, i)], i));
    let mut s = Search {
        n,
        order,
        r: h.to_rows().concat(),
        rows: Vec::new(),
        fixed: &problem.fixed,
        problem,
        memo: HashMap::new(),
        nodes: 0,
        capped: false,
        pruned: PruneStats::default(),
        witnesses: Vec::new(),
    };
    for f in &problem.fixed {
        s.apply(f, 1);
    }
    let status = if s.r.iter().any(|&x| x < 0) {
        s.pruned.negativity += 1;
        GramStatus::Infeasible
    } else if !s.residual_ok() {
        GramStatus::Infeasible
    } else {
        s.dfs(None);
        if !s.witnesses.is_empty() {
            GramStatus::Feasible
        } else if s.capped {
            GramStatus::CapExceeded
        } else {
            GramStatus::Infeasible
        }
    };
    GramOutcome { status, nodes: s.nodes, pruned: s.pruned, witnesses: s.witnesses }
}

/// `Σ rᵀr` over the given rows.
pub fn gram_of(rows: &[Vec<i64>], n: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n);
    for r in rows {
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] += r[i] * r[j];
            }
        }
    }
    m
}

/// Test oracle: exhaustive search for `N ≥ 0` with `NᵀN = target`, sharing
/// no code with [`gram_search`]. Rows are subtracted one at a time as
/// outer products; failed residuals are remembered.
pub fn gram_brute_force(target: &IntMatrix) -> bool {
    peel(target.to_rows(), &mut HashSet::new())
}

/// Strips one row at a time; some row must cover the first nonzero diagonal entry.
fn peel(h: Vec<Vec<i64>>, dead: &mut HashSet<Vec<Vec<i64>>>) -> bool {
    let n = h.len();
    let Some(p) = (0..n).find(|&i| h[i][i] > 0) else {
        return h.iter().flatten().all(|&x| x == 0);
    };
    for i in 0..n {
        for j in 0..n {
            if h[i][j] < 0 || h[i][j] * h[i][j] > h[i][i] * h[j][j] {
                return false;
            }
        }
    }
    if dead.contains(&h) || !principal_minors_nonnegative(&h) {
        return false;
    }
    let mut r = vec![0i64; n];
    let ok = rows_through(&h, p, 0, &mut r, dead);
    if !ok {
        dead.insert(h);
    }
    ok
}

fn principal_minors_nonnegative(h: &[Vec<i64>]) -> bool {
    let n = h.len();
    (1u32..1 << n).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let m: Vec<Vec<i128>> = idx.iter().map(|&i| idx.iter().map(|&j| i128::from(h[i][j])).collect()).collect();
        det(m) >= 0
    })
}

/// Fraction-free elimination.
fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let (mut sign, mut prev) = (1, 1);
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| m[i][k] != 0) else { return 0 };
        if piv != k {
            m.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn rows_through(h: &[Vec<i64>], p: usize, t: usize, r: &mut Vec<i64>, dead: &mut HashSet<Vec<Vec<i64>>>) -> bool {
    let n = h.len();
    if t == n {
        if r[p] == 0 {
            return false;
        }
        let rest = (0..n).map(|i| (0..n).map(|j| h[i][j] - r[i] * r[j]).collect()).collect();
        return peel(rest, dead);
    }
    let lo = i64::from(t == p);
    let mut hi = 0;
    while (hi + 1) * (hi + 1) <= h[t][t] && (0..t).all(|s| r[s] * (hi + 1) <= h[s][t]) {
        hi += 1;
    }
    for x in (lo..=hi).rev() {
        r[t] = x;
        if rows_through(h, p, t + 1, r, dead) {
            return true;
        }
    }
    r[t] = 0;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_its_own_witness() {
        let out = gram_search(&GramProblem::new(IntMatrix::identity(2)));
        assert_eq!(out.status, GramStatus::Feasible);
        assert_eq!(out.witnesses, vec![vec![vec![1, 0], vec![0, 1]]]);
    }

    #[test]
    fn all_witnesses_of_a_small_target() {
        // [[2,1],[1,2]]: {(1,1),(1,0),(0,1)} is the only factorization.
        let mut p = GramProblem::new(IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]));
        p.witness_limit = 10;
        let out = gram_search(&p);
        assert_eq!(out.witnesses, vec![vec![vec![1, 1], vec![1, 0], vec![0, 1]]]);
    }

    #[test]
    fn minor_violation_is_infeasible() {
        let out = gram_search(&GramProblem::new(IntMatrix::from_rows(&[vec![1, 2], vec![2, 1]])));
        assert_eq!(out.status, GramStatus::Infeasible);
        assert!(out.pruned.minor > 0);
    }

    #[test]
    fn fixed_rows_overshoot() {
        let mut p = GramProblem::new(IntMatrix::identity(2));
        p.fixed = vec![vec![1, 1]];
        let out = gram_search(&p);
        assert_eq!(out.status, GramStatus::Infeasible);
        assert_eq!(out.pruned.negativity, 1);
    }

    #[test]
    fn node_cap_is_reported() {
        let mut p = GramProblem::new(IntMatrix::from_rows(&[vec![50, 0], vec![0, 50]]));
        p.node_cap = 1;
        assert_eq!(gram_search(&p).status, GramStatus::CapExceeded);
    }

    #[test]
    fn dual_closure_rejects_asymmetric_multisets() {
        // Swapping columns 1 and 2: rows (0,1,0) and (0,0,1) must pair up.
        let mut p = GramProblem::new(IntMatrix::from_rows(&[vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]));
        p.dual = Some(vec![0, 2, 1]);
        assert_eq!(gram_search(&p).status, GramStatus::Feasible);
        let mut p = GramProblem::new(IntMatrix::from_rows(&[vec![0, 0, 0], vec![0, 4, 0], vec![0, 0, 1]]));
        p.dual = Some(vec![0, 2, 1]);
        let out = gram_search(&p);
        assert_eq!(out.status, GramStatus::Infeasible);
        assert!(out.pruned.dual_closure > 0);
    }

    #[test]
    fn gram_of_witness_matches() {
        let h = IntMatrix::from_rows(&[vec![5, 2, 1], vec![2, 3, 1], vec![1, 1, 2]]);
        let mut p = GramProblem::new(h.clone());
        p.witness_limit = 50;
        let out = gram_search(&p);
        assert!(!out.witnesses.is_empty());
        for w in &out.witnesses {
            assert_eq!(gram_of(w, 3), h);
        }
    }
}
