//! Weyl groups as explicit sets of integer matrices, and the restriction set
//! `H = { w|_t : w in W(G), w(t) = t }` of a subspace `t` of the Cartan
//! subalgebra.
//!
//! Elements act on simple-root coordinates; column `j` of an element is the
//! image of the j-th simple root. Entries are bounded by the largest
//! highest-root coefficient (6, for E8), so they are stored as `i8`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{restrict_to_subspace, QMatrix, Rational, Subspace};
use crate::rootsystem::{dot, CompactAlgebra, RootSystem, SimpleType};

/// Default bound on the number of elements that may be enumerated.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// One coordinate block of the space a Weyl group acts on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoordBlock {
    /// Central directions, acted on trivially.
    Center(usize),
    Simple(SimpleType),
}

impl CoordBlock {
    fn dim(&self) -> usize {
        match self {
            CoordBlock::Center(c) => *c,
            CoordBlock::Simple(t) => t.rank(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    blocks: Vec<CoordBlock>,
    dim: usize,
    len: usize,
    data: Vec<i8>,
    generators: Vec<Vec<i8>>,
    lookup: Vec<u32>,
}

impl WeylGroup {
    fn from_parts(blocks: Vec<CoordBlock>, data: Vec<i8>, generators: Vec<Vec<i8>>) -> Self {
        let dim: usize = blocks.iter().map(CoordBlock::dim).sum();
        let stride = (dim * dim).max(1);
        let len = if dim == 0 { 1 } else { data.len() / stride };
        let mut g = WeylGroup { blocks, dim, len, data, generators, lookup: Vec::new() };
        let mut lookup: Vec<u32> = (0..len as u32).collect();
        lookup.par_sort_unstable_by(|&a, &b| g.element(a as usize).cmp(g.element(b as usize)));
        g.lookup = lookup;
        g
    }

    /// The trivial group on `dim` central coordinates.
    pub fn trivial(dim: usize) -> Self {
        Self::from_parts(vec![CoordBlock::Center(dim)], identity(dim), Vec::new())
    }

    /// `W` of a compact algebra: the product of the factor Weyl groups,
    /// acting trivially on the center.
    pub fn for_algebra(a: &CompactAlgebra, cap: u64) -> Result<Self> {
        let order = a.weyl_order()?;
        if order > cap {
            return Err(Error::CapExceeded { order, cap });
        }
        let mut groups = vec![WeylGroup::trivial(a.center_dim)];
        for f in &a.factors {
            groups.push(enumerate_weyl(&crate::rootsystem::build_root_system(*f), cap)?);
        }
        product_weyl(&groups, cap)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.len
    }

    pub fn blocks(&self) -> &[CoordBlock] {
        &self.blocks
    }

    pub fn generators(&self) -> &[Vec<i8>] {
        &self.generators
    }

    /// Row-major `dim x dim` matrix of the i-th element.
    pub fn element(&self, i: usize) -> &[i8] {
        let s = self.dim * self.dim;
        &self.data[i * s..(i + 1) * s]
    }

    pub fn elements(&self) -> impl Iterator<Item = &[i8]> + '_ {
        (0..self.len).map(move |i| self.element(i))
    }

    pub fn contains(&self, m: &[i8]) -> bool {
        m.len() == self.dim * self.dim
            && self.lookup.binary_search_by(|&i| self.element(i as usize).cmp(m)).is_ok()
    }

    pub fn gram(&self) -> Vec<Vec<i64>> {
        let mut g = vec![vec![0; self.dim]; self.dim];
        let mut off = 0;
        for b in &self.blocks {
            match b {
                CoordBlock::Center(c) => (0..*c).for_each(|i| g[off + i][off + i] = 1),
                CoordBlock::Simple(t) => {
                    for (i, row) in t.gram().into_iter().enumerate() {
                        for (j, x) in row.into_iter().enumerate() {
                            g[off + i][off + j] = x;
                        }
                    }
                }
            }
            off += b.dim();
        }
        g
    }

    /// All roots, in the group's coordinates.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut off = 0;
        for b in &self.blocks {
            if let CoordBlock::Simple(t) = b {
                for r in crate::rootsystem::build_root_system(*t).roots() {
                    let mut v = vec![0; self.dim];
                    v[off..off + r.len()].copy_from_slice(&r);
                    out.push(v);
                }
            }
            off += b.dim();
        }
        out
    }
}

fn identity(n: usize) -> Vec<i8> {
    let mut m = vec![0i8; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

pub(crate) fn mat_mul(a: &[i8], b: &[i8], n: usize) -> Vec<i8> {
    let mut out = vec![0i8; n * n];
    for i in 0..n {
        for j in 0..n {
            let s: i32 = (0..n).map(|k| i32::from(a[i * n + k]) * i32::from(b[k * n + j])).sum();
            out[i * n + j] = i8::try_from(s).expect("Weyl group entries are bounded");
        }
    }
    out
}

pub(crate) fn mat_vec(m: &[i8], v: &[i64], n: usize) -> Vec<i64> {
    (0..n).map(|i| (0..n).map(|k| i64::from(m[i * n + k]) * v[k]).sum()).collect()
}

/// Matrix of the reflection in `root` under the invariant form `gram`.
pub(crate) fn reflection_matrix(gram: &[Vec<i64>], root: &[i64]) -> Vec<i8> {
    let n = root.len();
    let norm = dot(gram, root, root);
    let mut m = identity(n);
    for j in 0..n {
        let gj: i64 = (0..n).map(|k| gram[j][k] * root[k]).sum();
        let c = 2 * gj / norm;
        for i in 0..n {
            let v = i64::from(m[i * n + j]) - root[i] * c;
            m[i * n + j] = i8::try_from(v).expect("reflection entries are bounded");
        }
    }
    m
}

/// `s_i * w`: only row `i` changes, to `row_i(w) - sum_j C[i][j] row_j(w)`.
fn left_simple(cartan: &[Vec<i64>], i: usize, w: &[i8]) -> Vec<i8> {
    let n = cartan.len();
    let mut out = w.to_vec();
    for col in 0..n {
        let mut s = i64::from(w[i * n + col]);
        for (j, c) in cartan[i].iter().enumerate() {
            if *c != 0 {
                s -= c * i64::from(w[j * n + col]);
            }
        }
        out[i * n + col] = i8::try_from(s).expect("Weyl group entries are bounded");
    }
    out
}

/// Enumerates `W` by breadth-first closure of the simple reflections.
///
/// Elements are ordered by word length, then lexicographically by entries.
/// Each layer only needs the previous one for deduplication, because left
/// multiplication by a simple reflection changes length by exactly one.
pub fn enumerate_weyl(rs: &RootSystem, cap: u64) -> Result<WeylGroup> {
    let order = rs.weyl_order;
    if order > cap {
        return Err(Error::CapExceeded { order, cap });
    }
    let n = rs.rank();
    let cartan = &rs.cartan_matrix;
    let generators: Vec<Vec<i8>> = (0..n).map(|i| left_simple(cartan, i, &identity(n))).collect();

    let mut data: Vec<i8> = Vec::with_capacity(order as usize * n * n);
    let mut prev: Vec<Vec<i8>> = Vec::new();
    let mut cur: Vec<Vec<i8>> = vec![identity(n)];
    loop {
        for e in &cur {
            data.extend_from_slice(e);
        }
        let mut next: Vec<Vec<i8>> = cur
            .par_iter()
            .flat_map_iter(|w| (0..n).map(move |i| left_simple(cartan, i, w)))
            .filter(|c| prev.binary_search(c).is_err())
            .collect();
        next.par_sort_unstable();
        next.dedup();
        if next.is_empty() {
            break;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    let g = WeylGroup::from_parts(vec![CoordBlock::Simple(rs.simple_type)], data, generators);
    if g.order() as u64 != order {
        return Err(Error::InternalInconsistency(format!(
            "enumerated {} elements of W({}) but the degree formula gives {}",
            g.order(),
            rs.simple_type,
            order
        )));
    }
    Ok(g)
}

/// Direct product acting block-diagonally; elements in lexicographic order
/// of their component indices.
pub fn product_weyl(groups: &[WeylGroup], cap: u64) -> Result<WeylGroup> {
    let order = groups
        .iter()
        .try_fold(1u64, |acc, g| acc.checked_mul(g.order() as u64))
        .ok_or(Error::Overflow("product group order"))?;
    if order > cap {
        return Err(Error::CapExceeded { order, cap });
    }
    let blocks: Vec<CoordBlock> = groups.iter().flat_map(|g| g.blocks.iter().cloned()).collect();
    let dim: usize = groups.iter().map(WeylGroup::dim).sum();
    let offsets: Vec<usize> = groups
        .iter()
        .scan(0, |off, g| {
            let o = *off;
            *off += g.dim();
            Some(o)
        })
        .collect();
    let embed = |gi: usize, m: &[i8], out: &mut [i8]| {
        let d = groups[gi].dim();
        let off = offsets[gi];
        for i in 0..d {
            for j in 0..d {
                out[(off + i) * dim + off + j] = m[i * d + j];
            }
        }
    };

    let mut data = vec![0i8; order as usize * dim * dim];
    if dim > 0 {
        data.par_chunks_mut(dim * dim).enumerate().for_each(|(mut idx, out)| {
            for gi in (0..groups.len()).rev() {
                let size = groups[gi].order();
                embed(gi, groups[gi].element(idx % size), out);
                idx /= size;
            }
        });
    }
    let mut generators = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        for s in g.generators() {
            let mut out = identity(dim);
            embed(gi, s, &mut out);
            generators.push(out);
        }
    }
    Ok(WeylGroup::from_parts(blocks, data, generators))
}

/// Elements of the subgroup generated by the reflections in `roots`.
pub(crate) fn reflection_closure(gram: &[Vec<i64>], roots: &[Vec<i64>], cap: u64) -> Result<Vec<Vec<i8>>> {
    let n = gram.len();
    let gens: Vec<Vec<i8>> = roots.iter().map(|r| reflection_matrix(gram, r)).collect();
    let mut seen: HashSet<Vec<i8>> = HashSet::new();
    let mut order = vec![identity(n)];
    seen.insert(identity(n));
    let mut head = 0;
    while head < order.len() {
        let w = order[head].clone();
        head += 1;
        for s in &gens {
            let p = mat_mul(s, &w, n);
            if seen.insert(p.clone()) {
                order.push(p);
                if order.len() as u64 > cap {
                    return Err(Error::CapExceeded { order: order.len() as u64, cap });
                }
            }
        }
    }
    Ok(order)
}

/// Order of the subgroup of `w` generated by reflections in the given roots.
pub fn subgroup_order(w: &WeylGroup, roots: &[Vec<i64>]) -> Result<u64> {
    let all: HashSet<Vec<i64>> = w.roots().into_iter().collect();
    for r in roots {
        if r.len() != w.dim() {
            return Err(Error::DimensionMismatch { expected: w.dim(), found: r.len() });
        }
        if !all.contains(r) {
            return Err(Error::RootNotInSystem(r.clone()));
        }
    }
    Ok(reflection_closure(&w.gram(), roots, w.order() as u64)?.len() as u64)
}

/// Distinct restrictions to a subspace of the Weyl elements stabilizing it.
#[derive(Clone, Debug)]
pub struct RestrictionSet {
    subspace: Subspace,
    restrictions: Vec<QMatrix>,
    stabilizer_order: u64,
}

impl RestrictionSet {
    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// Sorted by canonical bytes.
    pub fn restrictions(&self) -> &[QMatrix] {
        &self.restrictions
    }

    /// `|H|`.
    pub fn len(&self) -> usize {
        self.restrictions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.restrictions.is_empty()
    }

    /// Number of Weyl elements mapping the subspace onto itself.
    pub fn stabilizer_order(&self) -> u64 {
        self.stabilizer_order
    }

    pub fn contains(&self, m: &QMatrix) -> bool {
        let key = m.canonical_bytes();
        self.restrictions.binary_search_by(|r| r.canonical_bytes().cmp(&key)).is_ok()
    }

    /// Closed under products and inverses, and contains the identity.
    pub fn is_group(&self) -> bool {
        let has_identity = self.restrictions.iter().any(QMatrix::is_identity);
        has_identity
            && self.restrictions.iter().all(|a| {
                a.inverse().is_some_and(|i| self.contains(&i))
                    && self.restrictions.iter().all(|b| self.contains(&a.mul(b).expect("square")))
            })
    }
}

/// Clears denominators and common factors of a rational vector.
fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

fn to_i64s(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(ToPrimitive::to_i64).collect()
}

fn max_abs(vs: &[Vec<i64>]) -> u128 {
    vs.iter().flatten().map(|x| x.unsigned_abs() as u128).max().unwrap_or(0)
}

/// `H` for the subspace `tk` of the space `w` acts on.
///
/// Uses an `i64` path when the scaled basis and its annihilator are small
/// enough that no intermediate value can overflow, and exact rational
/// restriction otherwise.
pub fn restriction_set(w: &WeylGroup, tk: &Subspace) -> Result<RestrictionSet> {
    if tk.ambient_dim() != w.dim() {
        return Err(Error::DimensionMismatch { expected: w.dim(), found: tk.ambient_dim() });
    }
    if tk.dim() == 0 {
        return Err(Error::EmptySubspace);
    }
    let n = w.dim();
    let k = tk.dim();
    let basis: Option<Vec<Vec<i64>>> = tk.basis().iter().map(|b| to_i64s(&primitive_integer(b))).collect();
    let ann: Option<Vec<Vec<i64>>> = tk.annihilator().iter().map(|a| to_i64s(&primitive_integer(a))).collect();

    let fits = match (&basis, &ann) {
        (Some(b), Some(a)) => {
            let image_bound = max_abs(b) * 6 * n as u128;
            image_bound < (1 << 40) && max_abs(a).max(1) * image_bound * (n as u128) < (1 << 62)
        }
        _ => false,
    };
    if !fits {
        return restriction_set_exact(w, tk);
    }
    let basis = basis.expect("checked");
    let ann = ann.expect("checked");
    let pivots = tk.pivots();
    let scales: Vec<i64> = basis.iter().zip(pivots).map(|(b, &p)| b[p]).collect();

    let mut keys: Vec<Vec<i64>> = (0..w.order())
        .into_par_iter()
        .filter_map(|idx| {
            let m = w.element(idx);
            let mut key = Vec::with_capacity(k * k);
            for b in &basis {
                let u = mat_vec(m, b, n);
                if ann.iter().any(|a| a.iter().zip(&u).map(|(x, y)| x * y).sum::<i64>() != 0) {
                    return None;
                }
                key.extend(pivots.iter().map(|&p| u[p]));
            }
            Some(key)
        })
        .collect();
    let stabilizer_order = keys.len() as u64;
    keys.par_sort_unstable();
    keys.dedup();

    let mut restrictions: Vec<QMatrix> = keys
        .into_iter()
        .map(|key| {
            let mut f = QMatrix::zeros(k, k);
            for s in 0..k {
                for r in 0..k {
                    f[(r, s)] = Rational::new(key[s * k + r].into(), scales[s].into());
                }
            }
            f
        })
        .collect();
    restrictions.sort_by_cached_key(QMatrix::canonical_bytes);
    Ok(RestrictionSet { subspace: tk.clone(), restrictions, stabilizer_order })
}

fn restriction_set_exact(w: &WeylGroup, tk: &Subspace) -> Result<RestrictionSet> {
    let n = w.dim();
    let found: Vec<QMatrix> = (0..w.order())
        .into_par_iter()
        .map(|idx| {
            let rows: Vec<Vec<i64>> =
                w.element(idx).chunks(n).map(|r| r.iter().map(|&x| i64::from(x)).collect()).collect();
            restrict_to_subspace(&QMatrix::from_i64_rows(&rows)?, tk)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let stabilizer_order = found.len() as u64;
    let unique: BTreeMap<Vec<u8>, QMatrix> = found.into_iter().map(|m| (m.canonical_bytes(), m)).collect();
    Ok(RestrictionSet {
        subspace: tk.clone(),
        restrictions: unique.into_values().collect(),
        stabilizer_order,
    })
}
