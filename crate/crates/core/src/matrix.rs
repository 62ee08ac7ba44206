//! Dense integer matrices used for fusion, codegree and Hom data.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul};

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        IntMatrix { rows: r, cols: c, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, k: i64) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }
}

impl From<Vec<Vec<i64>>> for IntMatrix {
    fn from(v: Vec<Vec<i64>>) -> Self {
        IntMatrix::from_rows(&v)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    out[(i, j)] += a * o[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, o: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.data.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| format!("{x:>w$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}
