use serde::{Deserialize, Serialize};

use super::{closure, fpdims, FusionRing};
use crate::scalar::QuadExt;

/// Universal grading of a fusion ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingData {
    /// Basis of the adjoint subring, which is component 0.
    pub adjoint: Vec<usize>,
    /// Partition of the basis, ordered by smallest member.
    pub components: Vec<Vec<usize>>,
    /// `component_of[i]` is the component holding `X_i`.
    pub component_of: Vec<usize>,
    /// `table[a][b]` is the component of `C_a ⊗ C_b`.
    pub table: Vec<Vec<usize>>,
    /// Components consisting of a single simple object.
    pub rank_one_components: Vec<usize>,
    /// Global FP dimension of each component, when dims are exact.
    pub component_dims: Option<Vec<QuadExt>>,
}

impl GradingData {
    pub fn order(&self) -> usize {
        self.components.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// All components share one global FP dimension.
    pub fn dims_equal(&self) -> Option<bool> {
        self.component_dims.as_ref().map(|d| d.iter().all(|x| *x == d[0]))
    }

    /// Whether the table is a group with identity component 0.
    pub fn is_group(&self) -> bool {
        let g = self.order();
        let latin = (0..g).all(|a| {
            let mut row: Vec<usize> = self.table[a].clone();
            let mut col: Vec<usize> = (0..g).map(|b| self.table[b][a]).collect();
            row.sort();
            col.sort();
            row == (0..g).collect::<Vec<_>>() && col == row
        });
        let unit = (0..g).all(|a| self.table[0][a] == a && self.table[a][0] == a);
        let assoc = (0..g).all(|a| {
            (0..g).all(|b| (0..g).all(|c| self.table[self.table[a][b]][c] == self.table[a][self.table[b][c]]))
        });
        latin && unit && assoc
    }

    pub fn is_cyclic(&self) -> bool {
        let g = self.order();
        (0..g).any(|a| {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = self.table[x][a];
                k += 1;
            }
            k == g || g == 1
        })
    }
}

/// Adjoint subring and the universal grading.
pub fn adjoint_and_grading(ring: &FusionRing) -> GradingData {
    let r = ring.rank();
    let gens: Vec<usize> = (0..r).flat_map(|i| ring.support(i, ring.dual(i)).collect::<Vec<_>>()).collect();
    let adjoint = closure(ring, &gens);

    let mut component_of = vec![usize::MAX; r];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for i in 0..r {
        if component_of[i] != usize::MAX {
            continue;
        }
        let c = components.len();
        let members: Vec<usize> = (0..r)
            .filter(|&j| adjoint.iter().any(|&k| ring.n(i, ring.dual(j), k) > 0))
            .collect();
        for &j in &members {
            component_of[j] = c;
        }
        components.push(members);
    }

    let g = components.len();
    let mut table = vec![vec![usize::MAX; g]; g];
    for i in 0..r {
        for j in 0..r {
            for k in ring.support(i, j) {
                let (a, b, c) = (component_of[i], component_of[j], component_of[k]);
                assert!(table[a][b] == usize::MAX || table[a][b] == c, "grading is not compatible with the product");
                table[a][b] = c;
            }
        }
    }

    let rank_one_components = (0..g).filter(|&c| components[c].len() == 1).collect();
    let component_dims = fpdims(ring).exact().map(|d| {
        components
            .iter()
            .map(|comp| comp.iter().fold(QuadExt::zero(), |acc, &i| &acc + &(&d[i] * &d[i])))
            .collect()
    });

    GradingData { adjoint, components, component_of, table, rank_one_components, component_dims }
}

/// Invertible simple objects and their multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvertibleGroup {
    /// Ring indices of the invertibles, ascending; the unit first.
    pub elements: Vec<usize>,
    /// `table[a][b]` is the ring index of `elements[a] ⊗ elements[b]`.
    pub table: Vec<Vec<usize>>,
}

impl InvertibleGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Every invertible satisfies `g ⊗ X_x = X_x`.
    pub fn all_fix(&self, ring: &FusionRing, x: usize) -> bool {
        self.elements.iter().all(|&g| fixes(ring, g, x))
    }

    pub fn is_cyclic(&self) -> bool {
        let g = self.order();
        self.elements.iter().any(|&a| {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                let pa = self.elements.iter().position(|&e| e == x).unwrap();
                let pb = self.elements.iter().position(|&e| e == a).unwrap();
                x = self.table[pa][pb];
                k += 1;
            }
            k == g || g == 1
        })
    }
}

/// `g ⊗ X_x = X_x` exactly.
pub fn fixes(ring: &FusionRing, g: usize, x: usize) -> bool {
    (0..ring.rank()).all(|k| ring.n(g, x, k) == u32::from(k == x))
}

pub fn invertibles(ring: &FusionRing) -> InvertibleGroup {
    let r = ring.rank();
    let elements: Vec<usize> = (0..r)
        .filter(|&i| (0..r).all(|k| ring.n(i, ring.dual(i), k) == u32::from(k == 0)))
        .collect();
    let table = elements
        .iter()
        .map(|&a| {
            elements
                .iter()
                .map(|&b| ring.support(a, b).next().expect("product of invertibles is simple"))
                .collect()
        })
        .collect();
    InvertibleGroup { elements, table }
}
