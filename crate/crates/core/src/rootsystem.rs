//! Root data of the simple types and of compact Lie algebras built from them.
//!
//! Roots are kept in simple-root coordinates. The invariant form on those
//! coordinates is the integer Gram matrix `G` with `G[i][i]` the squared
//! length of the i-th simple root, so the Cartan matrix is
//! `C[i][j] = 2 G[i][j] / G[i][i]` and every Weyl element is an integer
//! matrix.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cohomology::DegreeMultiset;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A simple type label such as `A2` or `E6`.
///
/// `B2`/`C2` and `A3`/`D3` are distinct labels with isomorphic data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(Error::InvalidType { family: family.letter(), rank })
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Primitive degrees `g_j`, i.e. `2 m_j + 1` for the exponents `m_j`.
    pub fn primitive_degrees(self) -> DegreeMultiset {
        let n = self.rank as u32;
        let v: Vec<u32> = match self.family {
            Family::A => (1..=n).map(|i| 2 * i + 1).collect(),
            Family::B | Family::C => (1..=n).map(|i| 4 * i - 1).collect(),
            Family::D => (1..n).map(|i| 4 * i - 1).chain([2 * n - 1]).collect(),
            Family::G => vec![3, 11],
            Family::F => vec![3, 11, 15, 23],
            Family::E => match n {
                6 => vec![3, 9, 11, 15, 17, 23],
                7 => vec![3, 11, 15, 19, 23, 27, 35],
                _ => vec![3, 15, 23, 27, 35, 39, 47, 59],
            },
        };
        DegreeMultiset::new(v).expect("degree tables hold odd positive entries")
    }

    /// `prod (g + 1) / 2` over the primitive degrees.
    pub fn weyl_order_formula(self) -> u64 {
        self.primitive_degrees().weyl_product().expect("fits in u64 for every simple type")
    }

    /// Integer invariant form on simple-root coordinates.
    pub fn gram(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut g = vec![vec![0i64; n]; n];
        let mut bond = |i: usize, j: usize, v: i64| {
            g[i - 1][j - 1] = v;
            g[j - 1][i - 1] = v;
        };
        // Diagonal entries are squared lengths; off-diagonals come from the bonds.
        let lengths: Vec<i64> = match self.family {
            Family::A | Family::D | Family::E => vec![2; n],
            Family::B => (1..=n).map(|i| if i < n { 4 } else { 2 }).collect(),
            Family::C => (1..=n).map(|i| if i < n { 2 } else { 4 }).collect(),
            Family::F => vec![4, 4, 2, 2],
            Family::G => vec![2, 6],
        };
        match self.family {
            Family::A => (1..n).for_each(|i| bond(i, i + 1, -1)),
            Family::B => (1..n).for_each(|i| bond(i, i + 1, -2)),
            Family::C => {
                (1..n - 1).for_each(|i| bond(i, i + 1, -1));
                bond(n - 1, n, -2);
            }
            Family::D => {
                (1..n - 1).for_each(|i| bond(i, i + 1, -1));
                bond(n - 2, n, -1);
            }
            Family::E => {
                bond(1, 3, -1);
                bond(2, 4, -1);
                (3..n).for_each(|i| bond(i, i + 1, -1));
            }
            Family::F => {
                bond(1, 2, -2);
                bond(2, 3, -2);
                bond(3, 4, -1);
            }
            Family::G => bond(1, 2, -3),
        }
        for (i, l) in lengths.into_iter().enumerate() {
            g[i][i] = l;
        }
        g
    }

    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        cartan_from_gram(&self.gram())
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseType(s.to_string());
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars.next().and_then(Family::from_letter).ok_or_else(bad)?;
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        SimpleType::new(family, rank)
    }
}

impl Serialize for SimpleType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SimpleType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn cartan_from_gram(gram: &[Vec<i64>]) -> Vec<Vec<i64>> {
    gram.iter()
        .enumerate()
        .map(|(i, row)| row.iter().map(|&x| 2 * x / row[i]).collect())
        .collect()
}

pub(crate) fn dot(gram: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0;
    for (i, row) in gram.iter().enumerate() {
        if x[i] == 0 {
            continue;
        }
        let gy: i64 = row.iter().zip(y).map(|(a, b)| a * b).sum();
        s += x[i] * gy;
    }
    s
}

/// `s_root(x) = x - 2 (x, root) / (root, root) * root`.
pub(crate) fn reflect(gram: &[Vec<i64>], root: &[i64], x: &[i64]) -> Vec<i64> {
    let c = 2 * dot(gram, x, root) / dot(gram, root, root);
    x.iter().zip(root).map(|(a, b)| a - c * b).collect()
}

/// Positive roots of the root system with Cartan matrix `cartan`, closing
/// the simple roots under simple reflections. Sorted by height, then
/// lexicographically.
pub(crate) fn positive_roots_from_cartan(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let simple: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut seen: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut queue = simple;
    while let Some(beta) = queue.pop() {
        for i in 0..n {
            let pairing: i64 = cartan[i].iter().zip(&beta).map(|(c, b)| c * b).sum();
            if pairing == 0 {
                continue;
            }
            let mut img = beta.clone();
            img[i] -= pairing;
            if img.iter().all(|&x| x >= 0) && img.iter().any(|&x| x > 0) && seen.insert(img.clone()) {
                queue.push(img);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then_with(|| a.cmp(b)));
    roots
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub simple_type: SimpleType,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub gram: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub primitive_degrees: DegreeMultiset,
    pub weyl_order: u64,
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.simple_type.rank()
    }

    /// Positive and negative roots.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let mut all = self.positive_roots.clone();
        all.extend(self.positive_roots.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        all
    }
}

pub fn build_root_system(t: SimpleType) -> RootSystem {
    let gram = t.gram();
    let cartan = cartan_from_gram(&gram);
    RootSystem {
        simple_type: t,
        positive_roots: positive_roots_from_cartan(&cartan),
        cartan_matrix: cartan,
        gram,
        primitive_degrees: t.primitive_degrees(),
        weyl_order: t.weyl_order_formula(),
    }
}

pub fn primitive_degrees(t: SimpleType) -> DegreeMultiset {
    t.primitive_degrees()
}

pub fn weyl_order_formula(t: SimpleType) -> u64 {
    t.weyl_order_formula()
}

/// `Z(g) + sum of simple ideals`, given by the center dimension and the
/// types of the simple factors.
///
/// Coordinates on the Cartan subalgebra are ordered center first, then each
/// factor's simple-root coordinates in factor order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompactAlgebra {
    #[serde(default)]
    pub center_dim: usize,
    #[serde(default)]
    pub factors: Vec<SimpleType>,
}

impl CompactAlgebra {
    pub fn new(center_dim: usize, factors: Vec<SimpleType>) -> Self {
        CompactAlgebra { center_dim, factors }
    }

    pub fn simple(t: SimpleType) -> Self {
        CompactAlgebra { center_dim: 0, factors: vec![t] }
    }

    pub fn torus(dim: usize) -> Self {
        CompactAlgebra { center_dim: dim, factors: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.center_dim + self.factors.iter().map(|f| f.rank()).sum::<usize>()
    }

    pub fn is_semisimple(&self) -> bool {
        self.center_dim == 0
    }

    pub fn primitive_degrees(&self) -> DegreeMultiset {
        let mut v = vec![1; self.center_dim];
        for f in &self.factors {
            v.extend(f.primitive_degrees().iter());
        }
        DegreeMultiset::new(v).expect("odd positive")
    }

    pub fn weyl_order(&self) -> Result<u64> {
        self.factors
            .iter()
            .try_fold(1u64, |acc, f| acc.checked_mul(f.weyl_order_formula()))
            .ok_or(Error::Overflow("Weyl group order"))
    }

    /// Starting coordinate of each simple factor.
    pub fn factor_offsets(&self) -> Vec<usize> {
        let mut off = self.center_dim;
        self.factors
            .iter()
            .map(|f| {
                let o = off;
                off += f.rank();
                o
            })
            .collect()
    }

    /// Block-diagonal invariant form; the center carries the identity form.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut g = vec![vec![0; n]; n];
        for (i, row) in g.iter_mut().enumerate().take(self.center_dim) {
            row[i] = 1;
        }
        for (f, off) in self.factors.iter().zip(self.factor_offsets()) {
            for (i, row) in f.gram().into_iter().enumerate() {
                for (j, x) in row.into_iter().enumerate() {
                    g[off + i][off + j] = x;
                }
            }
        }
        g
    }

    /// All roots, positive and negative, in ambient coordinates.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut out = Vec::new();
        for (f, off) in self.factors.iter().zip(self.factor_offsets()) {
            for r in build_root_system(*f).roots() {
                let mut v = vec![0; n];
                v[off..off + r.len()].copy_from_slice(&r);
                out.push(v);
            }
        }
        out
    }
}

impl fmt::Display for CompactAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.center_dim > 0 {
            parts.push(format!("T{}", self.center_dim));
        }
        parts.extend(self.factors.iter().map(ToString::to_string));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("x"))
        }
    }
}

/// Parses the display form, e.g. `T1xA1xG2`, `A2`, or `0`.
impl FromStr for CompactAlgebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(CompactAlgebra::torus(0));
        }
        let mut a = CompactAlgebra::torus(0);
        for part in s.split(['x', 'X', '*']).map(str::trim) {
            if let Some(d) = part.strip_prefix(['T', 't']) {
                let d: usize = d.parse().map_err(|_| Error::ParseType(part.to_string()))?;
                a.center_dim += d;
            } else {
                a.factors.push(part.parse()?);
            }
        }
        Ok(a)
    }
}
