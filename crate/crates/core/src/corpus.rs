//! Built-in example rings.

use crate::mr::mr_extend_labeled;
use crate::ring::FusionRing;

fn labels(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// The rank-one ring.
pub fn trivial() -> FusionRing {
    FusionRing::new(labels(&["1"]), vec![vec![vec![1]]]).unwrap()
}

/// Group ring of ℤ_m with basis `1, g, g^2, …`.
pub fn group_ring(m: usize) -> FusionRing {
    abelian_group_ring(&[m])
}

/// Group ring of `ℤ_{m_1} × … × ℤ_{m_r}`, basis in mixed-radix order.
pub fn abelian_group_ring(moduli: &[usize]) -> FusionRing {
    let order: usize = moduli.iter().product();
    let digits = |mut x: usize| -> Vec<usize> {
        moduli
            .iter()
            .map(|&m| {
                let d = x % m;
                x /= m;
                d
            })
            .collect()
    };
    let index = |d: &[usize]| -> usize {
        let mut x = 0;
        for (k, &m) in moduli.iter().enumerate().rev() {
            x = x * m + d[k];
        }
        x
    };
    let names: Vec<String> = (0..order)
        .map(|x| {
            if x == 0 {
                return "1".to_string();
            }
            if moduli.len() == 1 {
                return if x == 1 { "g".into() } else { format!("g^{x}") };
            }
            let parts: Vec<String> = digits(x).iter().map(|d| d.to_string()).collect();
            format!("g{}", parts.join(""))
        })
        .collect();
    FusionRing::from_fn(names, |i, j, k| {
        let (a, b) = (digits(i), digits(j));
        let s: Vec<usize> = a.iter().zip(&b).zip(moduli).map(|((x, y), m)| (x + y) % m).collect();
        u32::from(index(&s) == k)
    })
    .unwrap()
}

pub fn fibonacci() -> FusionRing {
    mr_extend_labeled(&trivial(), 1, "X").unwrap()
}

/// Ising rules: `ψ⊗ψ = 1`, `σ⊗σ = 1 + ψ`.
pub fn ising() -> FusionRing {
    let z2 = FusionRing::new(labels(&["1", "psi"]), group_ring(2).tensor()).unwrap();
    mr_extend_labeled(&z2, 0, "sigma").unwrap()
}

/// Rep(S₃): `X` two-dimensional, `Y` the sign.
pub fn rep_s3() -> FusionRing {
    FusionRing::from_fn(labels(&["1", "X", "Y"]), |i, j, k| {
        let table: [[[u32; 3]; 3]; 3] = [
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[0, 1, 0], [1, 1, 1], [0, 1, 0]],
            [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
        ];
        table[i][j][k]
    })
    .unwrap()
}

/// Rank-4 MR ring over Rep(S₃), basis `1, X, Y, Z`.
pub fn s3_base(kappa: u64) -> FusionRing {
    mr_extend_labeled(&rep_s3(), kappa, "Z").unwrap()
}

/// Rank-4 MR ring over ℤ₃, basis `1, X, Y, Z` with `X⊗X = Y`.
pub fn z3_base(kappa: u64) -> FusionRing {
    let z3 = FusionRing::new(labels(&["1", "X", "Y"]), group_ring(3).tensor()).unwrap();
    mr_extend_labeled(&z3, kappa, "Z").unwrap()
}

/// Integer-spin part of SU(2) at level 5; its dimensions are cubic.
pub fn so3_level5() -> FusionRing {
    FusionRing::from_fn(labels(&["1", "X", "Y"]), |i, j, k| {
        let table: [[[u32; 3]; 3]; 3] = [
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[0, 1, 0], [1, 1, 1], [0, 1, 1]],
            [[0, 0, 1], [0, 1, 1], [1, 1, 0]],
        ];
        table[i][j][k]
    })
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_produce_expected_rules() {
        let z = z3_base(2);
        assert_eq!(z.product(1, 1), vec![0, 0, 1, 0]);
        assert_eq!(z.product(3, 3), vec![1, 1, 1, 2]);
        assert_eq!(z.dual_perm(), &[0, 2, 1, 3]);
        let s = s3_base(5);
        assert_eq!(s.product(3, 3), vec![1, 2, 1, 5]);
        assert_eq!(s.product(1, 3), vec![0, 0, 0, 2]);
        let k = abelian_group_ring(&[2, 2]);
        assert_eq!(k.rank(), 4);
        assert!(k.dual_perm().iter().enumerate().all(|(i, &d)| i == d));
        assert_eq!(ising().labels(), &["1", "psi", "sigma"]);
    }
}
