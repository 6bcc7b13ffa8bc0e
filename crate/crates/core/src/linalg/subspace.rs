use num_traits::{One, Zero};

use super::matrix::{nullspace_from_rref, rref_rows, QMatrix};
use super::rational::{format_rational, int, Rational};
use crate::error::{Error, Result};

/// A linear subspace of `Q^n`, stored by the nonzero rows of the RREF of any
/// spanning set. The representation is unique per subspace, so derived
/// equality is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch { expected: ambient_dim, found: v.len() });
        }
        let mut rows = vectors.to_vec();
        let pivots = rref_rows(&mut rows, ambient_dim);
        rows.truncate(pivots.len());
        Ok(Subspace { ambient_dim, basis: rows, pivots })
    }

    pub fn span_i64(ambient_dim: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        let vs: Vec<Vec<Rational>> =
            vectors.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect();
        Self::span(ambient_dim, &vs)
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| (0..ambient_dim).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Subspace { ambient_dim, basis, pivots: (0..ambient_dim).collect() }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    /// Fixed vectors `{x : m x = x}` of a square matrix.
    pub fn fixed_by(m: &QMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::ShapeMismatch("fixed subspace needs a square matrix".into()));
        }
        let n = m.rows();
        let mut rows = m.to_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] -= Rational::one();
        }
        let pivots = rref_rows(&mut rows, n);
        let kernel = nullspace_from_rref(&rows, &pivots, n);
        Self::span(n, &kernel)
    }

    /// Block direct sum: `self` in the leading coordinates, `other` after.
    pub fn direct_sum(&self, other: &Subspace) -> Subspace {
        let n = self.ambient_dim + other.ambient_dim;
        let mut vs: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|b| {
                let mut v = b.clone();
                v.resize(n, Rational::zero());
                v
            })
            .collect();
        vs.extend(other.basis.iter().map(|b| {
            let mut v = vec![Rational::zero(); self.ambient_dim];
            v.extend(b.iter().cloned());
            v
        }));
        Subspace::span(n, &vs).expect("lengths match")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
        }
        // Canonical basis vectors are 1 at their own pivot and 0 at the others.
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        for j in 0..self.ambient_dim {
            let recon: Rational = coords.iter().zip(&self.basis).map(|(c, b)| c * &b[j]).sum();
            if recon != v[j] {
                return Ok(None);
            }
        }
        Ok(Some(coords))
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// Linear functionals vanishing exactly on this subspace.
    pub fn annihilator(&self) -> Vec<Vec<Rational>> {
        nullspace_from_rref(&self.basis, &self.pivots, self.ambient_dim)
    }

    pub fn canonical_bytes(&self) -> Vec<u8> {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(","))
            .collect();
        format!("{}:[{}]", self.ambient_dim, rows.join(";")).into_bytes()
    }
}

pub fn subspace_equal(a: &Subspace, b: &Subspace) -> Result<bool> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::DimensionMismatch { expected: a.ambient_dim, found: b.ambient_dim });
    }
    Ok(a == b)
}

/// Matrix of `m` restricted to `s`, in the canonical basis of `s`.
/// `Ok(None)` when `m` does not map `s` into itself.
pub fn restrict_to_subspace(m: &QMatrix, s: &Subspace) -> Result<Option<QMatrix>> {
    if !m.is_square() || m.rows() != s.ambient_dim() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} matrix on a subspace of Q^{}",
            m.rows(),
            m.cols(),
            s.ambient_dim()
        )));
    }
    let k = s.dim();
    if k == 0 {
        return Err(Error::EmptySubspace);
    }
    let mut out = QMatrix::zeros(k, k);
    for (col, b) in s.basis().iter().enumerate() {
        let image = m.apply(b)?;
        let Some(coords) = s.coordinates(&image)? else {
            return Ok(None);
        };
        for (row, c) in coords.into_iter().enumerate() {
            out[(row, col)] = c;
        }
    }
    Ok(Some(out))
}
