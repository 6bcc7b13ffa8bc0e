use std::fmt;

use num_traits::{One, Zero};

use super::rational::{format_rational, int, Rational};
use crate::error::{Error, Result};

/// Dense row-major rational matrix with positive dimensions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "QMatrix dimensions must be positive");
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::ShapeMismatch("matrix must have positive dimensions".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Inverse by Gauss-Jordan elimination; `None` if singular or not square.
    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                r
            })
            .collect();
        let pivots = rref_rows(&mut aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        QMatrix::from_rows(aug.into_iter().map(|r| r[n..].to_vec()).collect()).ok()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        rref_rows(&mut rows, self.cols).len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut rows = self.to_rows();
        let pivots = rref_rows(&mut rows, self.cols);
        nullspace_from_rref(&rows, &pivots, self.cols)
    }

    /// Canonical text encoding of the entries; equal matrices give equal bytes.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut s = format!("{}x{}:", self.rows, self.cols);
        for (i, x) in self.data.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&format_rational(x));
        }
        s.into_bytes()
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form. Idempotent.
pub fn rref(m: &QMatrix) -> QMatrix {
    let mut rows = m.to_rows();
    rref_rows(&mut rows, m.cols);
    QMatrix::from_rows(rows).expect("shape preserved")
}

/// Row-reduces in place, leaving zero rows at the bottom. Returns pivot columns.
pub(crate) fn rref_rows(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn nullspace_from_rref(
    rows: &[Vec<Rational>],
    pivots: &[usize],
    cols: usize,
) -> Vec<Vec<Rational>> {
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rows[r][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> QMatrix {
        QMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        assert_eq!(rref(&QMatrix::identity(3)), QMatrix::identity(3));
        assert_eq!(rref(&m(&[vec![2, 4], vec![1, 2]])), m(&[vec![1, 2], vec![0, 0]]));
        assert_eq!(rref(&m(&[vec![0, 1], vec![1, 0]])), QMatrix::identity(2));
    }

    #[test]
    fn shapes() {
        assert!(QMatrix::from_rows(vec![]).is_err());
        assert!(QMatrix::from_i64_rows(&[vec![1, 2], vec![3]]).is_err());
        let a = m(&[vec![1, 2, 3]]);
        assert!(a.mul(&a).is_err());
        assert_eq!(a.mul(&a.transpose()).unwrap(), m(&[vec![14]]));
    }

    #[test]
    fn inverse_and_nullspace() {
        let a = m(&[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(m(&[vec![1, 2], vec![2, 4]]).inverse().is_none());

        let k = m(&[vec![1, 1, 0], vec![0, 0, 1]]).nullspace();
        assert_eq!(k, vec![vec![int(-1), int(1), int(0)]]);
    }

    fn small_matrix() -> impl Strategy<Value = QMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r)
                .prop_map(|rows| QMatrix::from_i64_rows(&rows).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(a in small_matrix()) {
            let once = rref(&a);
            prop_assert_eq!(rref(&once), once.clone());
            prop_assert_eq!(once.rank(), a.rank());
        }

        #[test]
        fn nullspace_is_annihilated(a in small_matrix()) {
            let k = a.nullspace();
            prop_assert_eq!(k.len() + a.rank(), a.cols());
            for v in k {
                prop_assert!(a.apply(&v).unwrap().iter().all(Zero::is_zero));
            }
        }
    }
}
