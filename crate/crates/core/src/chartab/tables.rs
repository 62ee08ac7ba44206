//! Character tables bundled with the corpus.

use super::{CharacterTable, TableEntry};
use crate::scalar::CycNumber;

fn ints(rows: &[&[i64]]) -> Vec<Vec<TableEntry>> {
    rows.iter().map(|r| r.iter().map(|&x| TableEntry::Int(x)).collect()).collect()
}

fn table(name: &str, order: u64, class_sizes: &[u64], labels: &[&str], characters: Vec<Vec<TableEntry>>) -> CharacterTable {
    CharacterTable {
        name: Some(name.into()),
        order,
        class_sizes: class_sizes.to_vec(),
        labels: Some(labels.iter().map(|s| s.to_string()).collect()),
        class_inverse: None,
        characters,
    }
}

/// ℤ_n with `χ_j(g^k) = ζ_n^{jk}`.
pub fn cyclic(n: u32) -> CharacterTable {
    let characters = (0..n)
        .map(|j| (0..n).map(|k| TableEntry::from_value(CycNumber::root_of_unity(n, (j * k) as i64))).collect())
        .collect();
    let labels: Vec<String> = (0..n).map(|j| if j == 0 { "1".into() } else { format!("χ{j}") }).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    table(&format!("Z{n}"), n as u64, &vec![1; n as usize], &refs, characters)
}

pub fn s3() -> CharacterTable {
    table("S3", 6, &[1, 3, 2], &["1", "sgn", "V"], ints(&[&[1, 1, 1], &[1, -1, 1], &[2, 0, -1]]))
}

pub fn z2xz2() -> CharacterTable {
    table(
        "Z2xZ2",
        4,
        &[1, 1, 1, 1],
        &["1", "a", "b", "ab"],
        ints(&[&[1, 1, 1, 1], &[1, -1, 1, -1], &[1, 1, -1, -1], &[1, -1, -1, 1]]),
    )
}

/// Classes `1, r², {r, r³}, {s, sr²}, {sr, sr³}`.
pub fn d8() -> CharacterTable {
    table("D8", 8, &[1, 1, 2, 2, 2], &["1", "a", "b", "c", "E"], dihedral_like_rows())
}

/// Classes `1, −1, {±i}, {±j}, {±k}`; the table coincides with that of D8.
pub fn q8() -> CharacterTable {
    table("Q8", 8, &[1, 1, 2, 2, 2], &["1", "a", "b", "c", "E"], dihedral_like_rows())
}

fn dihedral_like_rows() -> Vec<Vec<TableEntry>> {
    ints(&[&[1, 1, 1, 1, 1], &[1, 1, 1, -1, -1], &[1, 1, -1, 1, -1], &[1, 1, -1, -1, 1], &[2, -2, 0, 0, 0]])
}

/// Classes `1, (12)(34), (123), (132)`.
pub fn a4() -> CharacterTable {
    let w = |k: i64| TableEntry::from_value(CycNumber::root_of_unity(3, k));
    let i = TableEntry::Int;
    let characters = vec![
        vec![i(1), i(1), i(1), i(1)],
        vec![i(1), i(1), w(1), w(2)],
        vec![i(1), i(1), w(2), w(1)],
        vec![i(3), i(-1), i(0), i(0)],
    ];
    table("A4", 12, &[1, 3, 4, 4], &["1", "ω", "ω²", "V"], characters)
}

/// Classes `1, (12), (12)(34), (123), (1234)`.
pub fn s4() -> CharacterTable {
    table(
        "S4",
        24,
        &[1, 6, 3, 8, 6],
        &["1", "sgn", "W", "V", "V'"],
        ints(&[&[1, 1, 1, 1, 1], &[1, -1, 1, 1, -1], &[2, 0, 2, -1, 0], &[3, 1, -1, 0, -1], &[3, -1, -1, 0, 1]]),
    )
}

/// The character corpus: S3, Z4, D8, Q8, A4, S4, Z2xZ2.
pub fn all() -> Vec<CharacterTable> {
    vec![s3(), cyclic(4), d8(), q8(), a4(), s4(), z2xz2()]
}
