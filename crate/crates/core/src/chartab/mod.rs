//! Character tables of finite groups, the fusion ring of `Rep(G)`, and the
//! two-class nonvanishing criterion for a maximal-rank subring.

pub mod tables;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{detect_mr, FusionRing, RawRing, RingError};
use crate::scalar::{parse_rational, CycNumber, Rational};

/// A table entry in the form it was written.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableEntry {
    Int(i64),
    Text(String),
    Cyc(CycNumber),
}

impl TableEntry {
    pub fn value(&self) -> Option<CycNumber> {
        match self {
            TableEntry::Int(v) => Some(CycNumber::from_int(*v)),
            TableEntry::Text(t) => parse_rational(t).map(CycNumber::from_rational),
            TableEntry::Cyc(c) => Some(c.clone()),
        }
    }

    /// Integers stay plain; everything else is written as a cyclotomic object.
    pub fn from_value(c: CycNumber) -> Self {
        match c.as_rational() {
            Some(r) if r.is_integer() => match i64::try_from(r.numer()) {
                Ok(v) => TableEntry::Int(v),
                Err(_) => TableEntry::Cyc(c),
            },
            Some(r) => TableEntry::Text(crate::scalar::format_rational(&r)),
            None => TableEntry::Cyc(c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterTable {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub order: u64,
    pub class_sizes: Vec<u64>,
    /// Character names, one per row.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// Index of the class of `g⁻¹` for each class of `g`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_inverse: Option<Vec<usize>>,
    pub characters: Vec<Vec<TableEntry>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChartabError {
    #[error("invalid character table: {0:?}")]
    Invalid(Vec<TableFailure>),
    #[error("fusion coefficient N[{i}][{j}][{k}] = {value} is not a nonnegative integer")]
    NonIntegral { i: usize, j: usize, k: usize, value: String },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("{0}")]
    Precondition(String),
    #[error("equivalence fails: {0}")]
    Inequivalent(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "failure", rename_all = "kebab-case")]
pub enum TableFailure {
    Shape { detail: String },
    Entry { row: usize, col: usize },
    ClassSizes { sum: u64, order: u64 },
    FirstRow { col: usize },
    Degree { row: usize },
    DegreeSum { sum: u64, order: u64 },
    RowOrthogonality { i: usize, j: usize },
    ColumnOrthogonality { a: usize, b: usize },
    ClassInverse { class: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub failures: Vec<TableFailure>,
}

impl TableReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn values(&self) -> Result<Vec<Vec<CycNumber>>, TableFailure> {
        self.characters
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter().enumerate().map(|(c, e)| e.value().ok_or(TableFailure::Entry { row: r, col: c })).collect()
            })
            .collect()
    }

    pub fn centralizer_orders(&self) -> Vec<u64> {
        self.class_sizes.iter().map(|s| self.order / s).collect()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.values()
            .map(|v| v.iter().map(|r| r[0].as_rational().and_then(|q| u64::try_from(q.to_integer()).ok()).unwrap_or(0)).collect())
            .unwrap_or_default()
    }

    pub fn character_labels(&self) -> Vec<String> {
        match &self.labels {
            Some(l) => l.clone(),
            None => (0..self.characters.len()).map(|i| if i == 0 { "1".into() } else { format!("χ{i}") }).collect(),
        }
    }

    /// `g⁻¹` class for each class, from `conj(χ(g)) = χ(g⁻¹)` unless given.
    pub fn inverse_classes(&self) -> Option<Vec<usize>> {
        if let Some(c) = &self.class_inverse {
            return Some(c.clone());
        }
        let v = self.values().ok()?;
        let k = self.class_count();
        (0..k)
            .map(|a| (0..k).find(|&b| v.iter().all(|row| row[b] == row[a].conj())))
            .collect()
    }
}

/// Checks shape, degrees, `Σ n_j² = |G|`, both orthogonality relations and the
/// class inverse permutation.
pub fn validate_table(t: &CharacterTable) -> TableReport {
    let mut failures = Vec::new();
    let k = t.class_count();
    if k == 0 || t.characters.len() != k || t.characters.iter().any(|r| r.len() != k) {
        failures.push(TableFailure::Shape { detail: format!("expected a {k}×{k} table") });
        return TableReport { failures };
    }
    let sum: u64 = t.class_sizes.iter().sum();
    if sum != t.order || t.class_sizes.iter().any(|&s| s == 0 || t.order % s != 0) {
        failures.push(TableFailure::ClassSizes { sum, order: t.order });
        return TableReport { failures };
    }
    if t.class_sizes[0] != 1 {
        failures.push(TableFailure::Shape { detail: "the first class must be the identity".into() });
    }
    let v = match t.values() {
        Ok(v) => v,
        Err(f) => {
            failures.push(f);
            return TableReport { failures };
        }
    };
    if let Some(c) = (0..k).find(|&c| v[0][c] != CycNumber::one()) {
        failures.push(TableFailure::FirstRow { col: c });
    }
    let mut deg_sum = 0u64;
    for (r, row) in v.iter().enumerate() {
        match row[0].as_rational().filter(|q| q.is_integer() && *q > Rational::from_integer(0.into())) {
            Some(q) => {
                let d = u64::try_from(q.to_integer()).unwrap_or(u64::MAX);
                deg_sum = deg_sum.saturating_add(d.saturating_mul(d));
            }
            None => failures.push(TableFailure::Degree { row: r }),
        }
    }
    if deg_sum != t.order {
        failures.push(TableFailure::DegreeSum { sum: deg_sum, order: t.order });
    }
    let sizes: Vec<CycNumber> = t.class_sizes.iter().map(|&s| CycNumber::from_int(s as i64)).collect();
    'rows: for i in 0..k {
        for j in i..k {
            let s = (0..k).fold(CycNumber::zero(), |acc, c| &acc + &(&(&sizes[c] * &v[i][c]) * &v[j][c].conj()));
            let want = if i == j { CycNumber::from_int(t.order as i64) } else { CycNumber::zero() };
            if s != want {
                failures.push(TableFailure::RowOrthogonality { i, j });
                break 'rows;
            }
        }
    }
    let cent = t.centralizer_orders();
    'cols: for a in 0..k {
        for b in a..k {
            let s = (0..k).fold(CycNumber::zero(), |acc, r| &acc + &(&v[r][a] * &v[r][b].conj()));
            let want = if a == b { CycNumber::from_int(cent[a] as i64) } else { CycNumber::zero() };
            if s != want {
                failures.push(TableFailure::ColumnOrthogonality { a, b });
                break 'cols;
            }
        }
    }
    match t.inverse_classes() {
        Some(inv) if inv.len() == k => {
            for a in 0..k {
                let b = inv[a];
                if b >= k || inv[b] != a || !v.iter().all(|row| row[b] == row[a].conj()) {
                    failures.push(TableFailure::ClassInverse { class: a });
                    break;
                }
            }
        }
        _ => failures.push(TableFailure::ClassInverse { class: 0 }),
    }
    TableReport { failures }
}

/// `N[i][j][k] = (1/|G|) Σ_c |c|·χ_i(c)χ_j(c)·conj(χ_k(c))`, in table order.
pub fn fusion_from_table(t: &CharacterTable) -> Result<FusionRing, ChartabError> {
    let report = validate_table(t);
    if !report.is_valid() {
        return Err(ChartabError::Invalid(report.failures));
    }
    let v = t.values().expect("validated");
    let k = t.class_count();
    let inv_order = Rational::new(1.into(), (t.order as i64).into());
    let weighted: Vec<Vec<CycNumber>> =
        v.iter().map(|row| (0..k).map(|c| row[c].conj().scale(&Rational::from_integer((t.class_sizes[c] as i64).into()))).collect()).collect();
    let mut n = vec![vec![vec![0u32; k]; k]; k];
    for i in 0..k {
        for j in i..k {
            let prod: Vec<CycNumber> = (0..k).map(|c| &v[i][c] * &v[j][c]).collect();
            for m in 0..k {
                let s = (0..k).fold(CycNumber::zero(), |acc, c| &acc + &(&prod[c] * &weighted[m][c])).scale(&inv_order);
                let val = s
                    .as_rational()
                    .filter(|q| q.is_integer() && *q >= Rational::from_integer(0.into()))
                    .and_then(|q| u32::try_from(q.to_integer()).ok())
                    .ok_or_else(|| ChartabError::NonIntegral { i, j, k: m, value: s.to_string() })?;
                n[i][j][m] = val;
                n[j][i][m] = val;
            }
        }
    }
    Ok(RawRing::new(t.character_labels(), n, None).into_ring()?)
}

/// An irreducible character nonzero on exactly two classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GagolaWitness {
    pub character: usize,
    pub classes: Vec<usize>,
}

/// First character by row order that vanishes on all but two classes.
pub fn gagola_condition(t: &CharacterTable) -> Option<GagolaWitness> {
    let v = t.values().ok()?;
    v.iter().enumerate().find_map(|(r, row)| {
        let classes: Vec<usize> = (0..row.len()).filter(|&c| !row[c].is_zero()).collect();
        (classes.len() == 2).then_some(GagolaWitness { character: r, classes })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GagolaReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub witness: Option<GagolaWitness>,
    /// Maximal-rank subring basis of the derived ring.
    pub mr_base: Option<Vec<usize>>,
    /// Classes of `N`, the common kernel of the characters other than the witness.
    pub kernel_classes: Option<Vec<usize>>,
    pub gagola_side: bool,
    pub mr_side: bool,
    pub equivalent: bool,
    /// On the positive side: `N∖{1}` is one class, it is the witness's second
    /// nonvanishing class, and the MR base is the complement of the witness.
    pub structure_confirmed: Option<bool>,
}

/// Computes both sides of the equivalence independently and compares them.
pub fn theorem57_check(t: &CharacterTable) -> Result<GagolaReport, ChartabError> {
    if t.order <= 2 {
        return Err(ChartabError::Precondition(format!("|G| = {} must exceed 2", t.order)));
    }
    let ring = fusion_from_table(t)?;
    let witness = gagola_condition(t);
    let mr = detect_mr(&ring)?;
    let gagola_side = witness.is_some();
    let mr_side = mr.is_some();
    let mut report = GagolaReport {
        name: t.name.clone(),
        mr_base: mr.as_ref().map(|m| m.base.clone()),
        witness: witness.clone(),
        kernel_classes: None,
        gagola_side,
        mr_side,
        equivalent: gagola_side == mr_side,
        structure_confirmed: None,
    };
    if !report.equivalent {
        return Err(ChartabError::Inequivalent(format!("gagola side {gagola_side}, maximal-rank side {mr_side}")));
    }
    if let (Some(w), Some(m)) = (witness, mr) {
        let v = t.values().expect("validated");
        let k = t.class_count();
        let kernel: Vec<usize> = (0..k)
            .filter(|&c| v.iter().enumerate().all(|(r, row)| r == w.character || row[c] == row[0]))
            .collect();
        let nontrivial: Vec<usize> = kernel.iter().copied().filter(|&c| c != 0).collect();
        let complement: Vec<usize> = (0..k).filter(|&r| r != w.character).collect();
        let ok = nontrivial.len() == 1 && w.classes == kernel && m.base == complement && m.extra == w.character;
        report.kernel_classes = Some(kernel);
        report.structure_confirmed = Some(ok);
        if !ok {
            return Err(ChartabError::Inequivalent(format!("proof structure not reproduced: {report:?}")));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstruction::codegrees;
    use crate::ring::fpdims;
    use crate::scalar::QuadExt;

    #[test]
    fn corpus_tables_validate() {
        for t in tables::all() {
            let r = validate_table(&t);
            assert!(r.is_valid(), "{:?}: {:?}", t.name, r.failures);
        }
        assert!(validate_table(&tables::cyclic(2)).is_valid());
    }

    #[test]
    fn perturbed_entry_breaks_orthogonality() {
        let mut t = tables::s3();
        t.characters[2][2] = TableEntry::Int(0);
        let r = validate_table(&t);
        assert!(r.failures.iter().any(|f| matches!(f, TableFailure::RowOrthogonality { .. })));
    }

    #[test]
    fn s3_fusion() {
        let r = fusion_from_table(&tables::s3()).unwrap();
        assert_eq!(r.product(2, 2), vec![1, 1, 1]);
        assert_eq!(fpdims(&r).integers().unwrap(), vec![1, 1, 2]);
    }

    #[test]
    fn q8_two_dimensional_square() {
        let r = fusion_from_table(&tables::q8()).unwrap();
        assert_eq!(r.product(4, 4), vec![1, 1, 1, 1, 0]);
    }

    #[test]
    fn z4_is_pointed() {
        let r = fusion_from_table(&tables::cyclic(4)).unwrap();
        assert_eq!(fpdims(&r).integers().unwrap(), vec![1; 4]);
        assert_eq!(r.product(1, 1), vec![0, 0, 1, 0]);
    }

    #[test]
    fn degrees_are_fp_dims() {
        for t in tables::all() {
            let r = fusion_from_table(&t).unwrap();
            assert_eq!(fpdims(&r).integers().unwrap(), t.degrees());
        }
    }

    #[test]
    fn codegrees_are_centralizer_orders() {
        for t in tables::all() {
            let mut want: Vec<QuadExt> = t.centralizer_orders().into_iter().map(|c| QuadExt::from_int(c as i64)).collect();
            want.sort_by(|a, b| b.cmp(a));
            assert_eq!(codegrees(&fusion_from_table(&t).unwrap()).unwrap().values, want, "{:?}", t.name);
        }
    }

    #[test]
    fn gagola_witnesses() {
        assert_eq!(gagola_condition(&tables::s3()), Some(GagolaWitness { character: 2, classes: vec![0, 2] }));
        assert_eq!(gagola_condition(&tables::cyclic(4)), None);
        assert_eq!(gagola_condition(&tables::q8()), Some(GagolaWitness { character: 4, classes: vec![0, 1] }));
    }

    #[test]
    fn equivalence_on_corpus() {
        for t in tables::all() {
            let r = theorem57_check(&t).unwrap();
            let positive = matches!(t.name.as_deref(), Some("S3" | "D8" | "Q8" | "A4"));
            assert_eq!(r.gagola_side, positive, "{:?}", t.name);
            assert!(r.equivalent);
            if positive {
                assert_eq!(r.structure_confirmed, Some(true));
            }
        }
        assert!(matches!(theorem57_check(&tables::cyclic(2)), Err(ChartabError::Precondition(_))));
    }

    #[test]
    fn table_round_trip() {
        for t in tables::all() {
            let s = serde_json::to_string_pretty(&t).unwrap();
            let back: CharacterTable = serde_json::from_str(&s).unwrap();
            assert_eq!(serde_json::to_string_pretty(&back).unwrap(), s);
        }
    }
}
