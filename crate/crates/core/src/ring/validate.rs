use std::fmt;

use serde::{Deserialize, Serialize};

use super::RawRing;

/// One failed axiom, located at the first offending index tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Violation {
    Shape { detail: String },
    UnitLaw { i: usize, j: usize, k: usize },
    DualityNormalization { i: usize, detail: String },
    DualInvolution { i: usize },
    DeclaredDual { i: usize, declared: usize, inferred: usize },
    FrobeniusReciprocity { i: usize, j: usize, k: usize },
    Associativity { i: usize, j: usize, k: usize, l: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { detail } => write!(f, "shape: {detail}"),
            Violation::UnitLaw { i, j, k } => write!(f, "unit law fails at (i,j,k)=({i},{j},{k})"),
            Violation::DualityNormalization { i, detail } => write!(f, "duality normalization fails at i={i}: {detail}"),
            Violation::DualInvolution { i } => write!(f, "duality is not an involution fixing the unit at i={i}"),
            Violation::DeclaredDual { i, declared, inferred } => {
                write!(f, "declared dual({i})={declared} but N[{i}][j][0] gives {inferred}")
            }
            Violation::FrobeniusReciprocity { i, j, k } => write!(f, "Frobenius reciprocity fails at (i,j,k)=({i},{j},{k})"),
            Violation::Associativity { i, j, k, l } => write!(f, "associativity fails at (i,j,k,l)=({i},{j},{k},{l})"),
        }
    }
}

/// All violated axioms, at most one entry per class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Dual of each index from `N[i][j][0] = 1`, if every row has exactly one.
pub(crate) fn infer_dual(n: &[Vec<Vec<u32>>]) -> Option<Vec<usize>> {
    let r = n.len();
    let mut dual = Vec::with_capacity(r);
    for row in n.iter() {
        let hits: Vec<usize> = (0..r).filter(|&j| row[j][0] != 0).collect();
        if hits.len() != 1 || row[hits[0]][0] != 1 {
            return None;
        }
        dual.push(hits[0]);
    }
    Some(dual)
}

pub(crate) fn validate(raw: &RawRing) -> ValidationReport {
    let mut out = Vec::new();
    let r = raw.labels.len();
    let n = &raw.n;

    let shape_ok = r > 0 && n.len() == r && n.iter().all(|a| a.len() == r && a.iter().all(|b| b.len() == r));
    if !shape_ok {
        out.push(Violation::Shape { detail: format!("expected a {r}x{r}x{r} tensor matching {r} labels") });
        return ValidationReport { violations: out };
    }
    if let Some(d) = &raw.dual {
        if d.len() != r || d.iter().any(|&x| x >= r) {
            out.push(Violation::Shape { detail: "dual must be a permutation of the basis".into() });
            return ValidationReport { violations: out };
        }
    }
    let mut seen = std::collections::HashSet::new();
    if let Some(l) = raw.labels.iter().find(|l| !seen.insert(l.as_str())) {
        out.push(Violation::Shape { detail: format!("duplicate label {l:?}") });
        return ValidationReport { violations: out };
    }

    'unit: for a in 0..r {
        for k in 0..r {
            let e = u32::from(a == k);
            if n[0][a][k] != e {
                out.push(Violation::UnitLaw { i: 0, j: a, k });
                break 'unit;
            }
            if n[a][0][k] != e {
                out.push(Violation::UnitLaw { i: a, j: 0, k });
                break 'unit;
            }
        }
    }

    let mut dual = vec![usize::MAX; r];
    let mut dual_ok = true;
    for i in 0..r {
        let hits: Vec<usize> = (0..r).filter(|&j| n[i][j][0] != 0).collect();
        let detail = match hits.as_slice() {
            [j] if n[i][*j][0] == 1 => {
                dual[i] = *j;
                continue;
            }
            [j] => format!("N[{i}][{j}][0] = {}", n[i][*j][0]),
            [] => "no j with N[i][j][0] = 1".to_string(),
            _ => format!("several j with N[i][j][0] > 0: {hits:?}"),
        };
        out.push(Violation::DualityNormalization { i, detail });
        dual_ok = false;
        break;
    }

    if dual_ok {
        if let Some(i) = (0..r).find(|&i| dual[dual[i]] != i || dual[0] != 0) {
            out.push(Violation::DualInvolution { i });
            dual_ok = false;
        }
    }
    if dual_ok {
        if let Some(decl) = &raw.dual {
            if let Some(i) = (0..r).find(|&i| decl[i] != dual[i]) {
                out.push(Violation::DeclaredDual { i, declared: decl[i], inferred: dual[i] });
            }
        }
        'frob: for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let v = n[i][j][k];
                    if v != n[dual[i]][k][j] || v != n[k][dual[j]][i] {
                        out.push(Violation::FrobeniusReciprocity { i, j, k });
                        break 'frob;
                    }
                }
            }
        }
    }

    'assoc: for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                for l in 0..r {
                    let lhs: u64 = (0..r).map(|m| n[i][j][m] as u64 * n[m][k][l] as u64).sum();
                    let rhs: u64 = (0..r).map(|m| n[j][k][m] as u64 * n[i][m][l] as u64).sum();
                    if lhs != rhs {
                        out.push(Violation::Associativity { i, j, k, l });
                        break 'assoc;
                    }
                }
            }
        }
    }

    ValidationReport { violations: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn raw(labels: &[&str], n: Vec<Vec<Vec<u32>>>) -> RawRing {
        RawRing::new(labels.iter().map(|s| s.to_string()).collect(), n, None)
    }

    #[test]
    fn fibonacci_is_valid() {
        assert!(corpus::fibonacci().to_raw().validate().is_valid());
    }

    #[test]
    fn doubled_duality_entry_is_caught() {
        let mut r = corpus::fibonacci().to_raw();
        r.n[1][1][0] = 2;
        let rep = r.validate();
        assert!(matches!(rep.violations[0], Violation::DualityNormalization { i: 1, .. }));
    }

    #[test]
    fn z3_base_kappa3_is_valid() {
        assert!(corpus::z3_base(3).to_raw().validate().is_valid());
    }

    #[test]
    fn non_associative_data_is_located() {
        // X⊗X = 1 + 2Y, X⊗Y = 2X, Y⊗Y = 1: reciprocity holds, associativity does not.
        let n = vec![
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![0, 1, 0], vec![1, 0, 2], vec![0, 2, 0]],
            vec![vec![0, 0, 1], vec![0, 2, 0], vec![1, 0, 0]],
        ];
        let rep = raw(&["1", "X", "Y"], n).validate();
        assert!(rep.violations.iter().any(|v| matches!(v, Violation::Associativity { .. })), "{rep}");
    }

    #[test]
    fn declared_dual_is_cross_checked() {
        let mut r = corpus::z3_base(1).to_raw();
        r.dual = Some(vec![0, 1, 2, 3]);
        let rep = r.validate();
        assert!(matches!(rep.violations[0], Violation::DeclaredDual { i: 1, declared: 1, inferred: 2 }));
    }

    #[test]
    fn ragged_tensor_is_a_shape_error() {
        let rep = raw(&["1", "X"], vec![vec![vec![1, 0]]]).validate();
        assert!(matches!(rep.violations[0], Violation::Shape { .. }));
    }
}
