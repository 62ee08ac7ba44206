use std::collections::{BTreeSet, VecDeque};

use super::{FusionRing, RingError};

pub const DEFAULT_SUBRING_BOUND: usize = 12;

fn to_mask(set: &[usize]) -> u64 {
    set.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

fn from_mask(m: u64, rank: usize) -> Vec<usize> {
    (0..rank).filter(|&i| m >> i & 1 == 1).collect()
}

fn closure_mask(ring: &FusionRing, mut m: u64) -> u64 {
    let r = ring.rank();
    m |= 1;
    loop {
        let mut next = m;
        for i in 0..r {
            if m >> i & 1 == 0 {
                continue;
            }
            next |= 1 << ring.dual(i);
            for j in 0..r {
                if m >> j & 1 == 1 {
                    for k in ring.support(i, j) {
                        next |= 1 << k;
                    }
                }
            }
        }
        if next == m {
            return m;
        }
        m = next;
    }
}

/// Smallest subring containing `gens`.
pub fn closure(ring: &FusionRing, gens: &[usize]) -> Vec<usize> {
    assert!(ring.rank() <= 64, "closure supports rank ≤ 64");
    from_mask(closure_mask(ring, to_mask(gens)), ring.rank())
}

/// Whether `set` contains the unit and is closed under duals and products.
pub fn is_subring(ring: &FusionRing, set: &[usize]) -> bool {
    let r = ring.rank();
    if set.iter().any(|&i| i >= r) || !set.contains(&0) {
        return false;
    }
    set.iter().all(|&i| set.contains(&ring.dual(i)))
        && set.iter().all(|&i| set.iter().all(|&j| ring.support(i, j).all(|k| set.contains(&k))))
}

/// All subrings, ordered by size and then lexicographically.
///
/// Every subring is reached from `{1}` by repeatedly adjoining one element
/// and closing, so a breadth-first walk over closures is exhaustive.
pub fn subrings(ring: &FusionRing, bound: usize) -> Result<Vec<Vec<usize>>, RingError> {
    let r = ring.rank();
    if r > bound || r > 64 {
        return Err(RingError::BoundExceeded { rank: r, bound: bound.min(64) });
    }
    let start = closure_mask(ring, 1);
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(m) = queue.pop_front() {
        for x in 0..r {
            if m >> x & 1 == 0 {
                let c = closure_mask(ring, m | 1 << x);
                if seen.insert(c) {
                    queue.push_back(c);
                }
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().map(|m| from_mask(m, r)).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Every subset containing the unit, tested directly.
pub fn subrings_brute_force(ring: &FusionRing) -> Vec<Vec<usize>> {
    let r = ring.rank();
    assert!(r <= 20, "brute force is exponential");
    let mut out: Vec<Vec<usize>> = (0u64..1 << r)
        .filter(|m| m & 1 == 1)
        .map(|m| from_mask(m, r))
        .filter(|s| is_subring(ring, s))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn fibonacci_subrings() {
        assert_eq!(subrings(&corpus::fibonacci(), 12).unwrap(), vec![vec![0], vec![0, 1]]);
    }

    #[test]
    fn rep_s3_subrings() {
        // basis 1, X (dim 2), Y (sign)
        let s = subrings(&corpus::rep_s3(), 12).unwrap();
        assert_eq!(s, vec![vec![0], vec![0, 2], vec![0, 1, 2]]);
        assert_eq!(s, subrings_brute_force(&corpus::rep_s3()));
    }

    #[test]
    fn s3_base_adds_only_the_full_basis() {
        let s = subrings(&corpus::s3_base(3), 12).unwrap();
        assert_eq!(s, vec![vec![0], vec![0, 2], vec![0, 1, 2], vec![0, 1, 2, 3]]);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(subrings(&corpus::group_ring(4), 3), Err(RingError::BoundExceeded { .. })));
    }
}
