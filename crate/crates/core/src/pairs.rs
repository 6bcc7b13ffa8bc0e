//! Pair recipes and their resolution into exact Cartan-subalgebra data.
//!
//! Every construction ends in a [`PairData`]: the algebra `g`, the
//! subspace `t_K` of `t_G` (in the coordinates described on
//! [`CompactAlgebra`]), and the primitive degrees and Weyl order of `K`.

use std::collections::{BTreeSet, HashSet};

use serde::{Serialize, Serializer};

use crate::cohomology::DegreeMultiset;
use crate::error::{Error, Result};
use crate::linalg::{format_rational, QMatrix, Rational, Subspace};
use crate::rootsystem::{
    cartan_from_gram, dot, positive_roots_from_cartan, reflect, CompactAlgebra, Family, SimpleType,
};
use crate::weyl::{reflection_closure, DEFAULT_CAP};

/// A permutation of simple-root labels, written as the images of `1..=n`.
pub type DiagramPermutation = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldSpec {
    pub g_type: SimpleType,
    pub automorphism: DiagramPermutation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleSpec {
    pub g: CompactAlgebra,
    /// Center coordinates first, then simple-root coordinates.
    pub direction: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularSpec {
    pub g: CompactAlgebra,
    pub sub_roots: Vec<Vec<i64>>,
    pub extra_center: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductBlock {
    pub factor: SimpleType,
    pub copies: usize,
    /// `None` means the identity.
    pub return_automorphism: Option<DiagramPermutation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpec {
    pub center_dim: usize,
    /// Dimension of the fixed torus inside the center; defaults to all of it.
    pub center_fixed_dim: Option<usize>,
    pub blocks: Vec<ProductBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairSpec {
    Fold(FoldSpec),
    Circle(CircleSpec),
    Regular(RegularSpec),
    Product(ProductSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairKind {
    /// Fixed points of a diagram automorphism of the given order.
    Fold { order: usize },
    Circle { central: bool, semisimple: bool },
    /// Equal-rank subalgebra generated by root reflections and a torus.
    Regular,
    /// `Delta(H)` inside `I^copies`, `H` the fixed points of a diagram automorphism of `I`.
    Diagonal { copies: usize, order: usize },
    /// A subtorus of a torus.
    CentralTorus,
    Product,
}

impl PairKind {
    pub fn tag(&self) -> &'static str {
        match self {
            PairKind::Fold { .. } => "fold",
            PairKind::Circle { .. } => "circle",
            PairKind::Regular => "regular",
            PairKind::Diagonal { .. } => "diagonal",
            PairKind::CentralTorus => "central",
            PairKind::Product => "product",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairData {
    pub kind: PairKind,
    pub g: CompactAlgebra,
    /// Human-readable name of `K`, e.g. `G2`, `T1`, `D(B3)`.
    pub k_name: String,
    pub k_degrees: DegreeMultiset,
    pub k_weyl_order: u64,
    pub k_weyl_generators: Option<Vec<Vec<i64>>>,
    #[serde(serialize_with = "serialize_subspace")]
    pub tk: Subspace,
    pub blocks: Vec<PairData>,
    pub provenance: Vec<String>,
}

fn serialize_subspace<S: Serializer>(s: &Subspace, ser: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> =
        s.basis().iter().map(|r| r.iter().map(format_rational).collect()).collect();
    (s.ambient_dim(), rows).serialize(ser)
}

impl PairData {
    pub fn rank_g(&self) -> usize {
        self.g.rank()
    }

    pub fn rank_k(&self) -> usize {
        self.tk.dim()
    }

    pub fn is_product(&self) -> bool {
        self.kind == PairKind::Product
    }

    /// Deterministic serialization of every field.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("PairData serializes")
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InternalInconsistency(m));
        if self.tk.ambient_dim() != self.g.rank() {
            return bad(format!("t_K lives in Q^{} but rank G = {}", self.tk.ambient_dim(), self.g.rank()));
        }
        if self.tk.dim() != self.k_degrees.len() {
            return bad(format!("dim t_K = {} but K has {} primitive degrees", self.tk.dim(), self.k_degrees.len()));
        }
        if self.k_degrees.weyl_product() != Some(self.k_weyl_order) {
            return bad(format!("degrees {} do not multiply to |W(K)| = {}", self.k_degrees, self.k_weyl_order));
        }
        if self.k_weyl_order == 0 {
            return bad("empty Weyl group".into());
        }
        Ok(())
    }
}

pub fn resolve(spec: &PairSpec) -> Result<PairData> {
    match spec {
        PairSpec::Fold(s) => resolve_fold(s),
        PairSpec::Circle(s) => resolve_circle(s),
        PairSpec::Regular(s) => resolve_regular(s),
        PairSpec::Product(s) => resolve_product(s),
    }
}

fn permutation_order(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut order = 1;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] - 1;
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

/// Matrix on simple-root coordinates induced by a diagram automorphism.
pub fn diagram_automorphism_matrix(t: SimpleType, perm: &[usize]) -> Result<QMatrix> {
    let n = t.rank();
    let bad = || Error::NotDiagramAutomorphism(perm.to_vec());
    if perm.len() != n {
        return Err(bad());
    }
    let labels: BTreeSet<usize> = perm.iter().copied().collect();
    if labels.len() != n || labels.iter().any(|&l| l == 0 || l > n) {
        return Err(bad());
    }
    let c = t.cartan_matrix();
    for i in 0..n {
        for j in 0..n {
            if c[perm[i] - 1][perm[j] - 1] != c[i][j] {
                return Err(bad());
            }
        }
    }
    let mut m = QMatrix::zeros(n, n);
    for (i, &p) in perm.iter().enumerate() {
        m[(p - 1, i)] = Rational::from_integer(1.into());
    }
    Ok(m)
}

/// Type of the fixed subalgebra of a diagram automorphism of the given order.
///
/// `B1` is reported as `A1`.
pub fn folded_type(t: SimpleType, order: usize) -> Result<SimpleType> {
    let n = t.rank();
    let mk = |f, r| SimpleType::new(f, r);
    match (t.family(), n, order) {
        (_, _, 1) => Ok(t),
        (Family::A, _, 2) if n % 2 == 0 && n == 2 => mk(Family::A, 1),
        (Family::A, _, 2) if n % 2 == 0 => mk(Family::B, n / 2),
        (Family::A, _, 2) => mk(Family::C, (n + 1) / 2),
        (Family::D, _, 2) => mk(Family::B, n - 1),
        (Family::D, 4, 3) => mk(Family::G, 2),
        (Family::E, 6, 2) => mk(Family::F, 4),
        _ => Err(Error::UnsupportedFold(format!("{t} with an automorphism of order {order}"))),
    }
}

pub fn resolve_fold(spec: &FoldSpec) -> Result<PairData> {
    let t = spec.g_type;
    let m = diagram_automorphism_matrix(t, &spec.automorphism)?;
    let order = permutation_order(&spec.automorphism);
    let k = folded_type(t, order)?;
    let tk = Subspace::fixed_by(&m)?;
    let orbits = {
        let mut seen = vec![false; t.rank()];
        let mut count = 0;
        for s in 0..t.rank() {
            if !seen[s] {
                count += 1;
                let mut i = s;
                while !seen[i] {
                    seen[i] = true;
                    i = spec.automorphism[i] - 1;
                }
            }
        }
        count
    };
    if tk.dim() != orbits || tk.dim() != k.rank() {
        return Err(Error::InternalInconsistency(format!(
            "fixed subspace of {t} has dimension {} but {k} has rank {}",
            tk.dim(),
            k.rank()
        )));
    }
    let k_name = if order == 2 && k == SimpleType::new(Family::A, 1)? { "B1".to_string() } else { k.to_string() };
    let p = PairData {
        kind: PairKind::Fold { order },
        g: CompactAlgebra::simple(t),
        k_name,
        k_degrees: k.primitive_degrees(),
        k_weyl_order: k.weyl_order_formula(),
        k_weyl_generators: None,
        tk,
        blocks: Vec::new(),
        provenance: vec![format!("fold {t} by {:?} (order {order}) -> {k}", spec.automorphism)],
    };
    p.validate()?;
    Ok(p)
}

impl CircleSpec {
    /// Builds a circle from `(n+1)`-coordinate trace-zero vectors for each
    /// type-A factor, with central coordinates first as usual.
    pub fn from_trace_zero(g: CompactAlgebra, coords: &[Rational]) -> Result<Self> {
        if let Some(f) = g.factors.iter().find(|f| f.family() != Family::A) {
            return Err(Error::InvalidSpec(format!("trace-zero coordinates need type A factors, got {f}")));
        }
        let expected = g.center_dim + g.factors.iter().map(|f| f.rank() + 1).sum::<usize>();
        if coords.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: coords.len() });
        }
        let mut direction: Vec<Rational> = coords[..g.center_dim].to_vec();
        let mut off = g.center_dim;
        for f in &g.factors {
            let block = &coords[off..off + f.rank() + 1];
            if block.iter().sum::<Rational>() != Rational::from_integer(0.into()) {
                return Err(Error::InvalidSpec(format!("trace-zero block for {f} does not sum to zero")));
            }
            // alpha_j = e_j - e_{j+1}, so the j-th coefficient is a partial sum.
            let mut acc = Rational::from_integer(0.into());
            for x in &block[..f.rank()] {
                acc += x;
                direction.push(acc.clone());
            }
            off += f.rank() + 1;
        }
        Ok(CircleSpec { g, direction })
    }
}

pub fn resolve_circle(spec: &CircleSpec) -> Result<PairData> {
    let n = spec.g.rank();
    if spec.direction.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: spec.direction.len() });
    }
    let nonzero = |xs: &[Rational]| xs.iter().any(|x| *x != Rational::from_integer(0.into()));
    if !nonzero(&spec.direction) {
        return Err(Error::ZeroDirection);
    }
    let c = spec.g.center_dim;
    let central = nonzero(&spec.direction[..c]);
    let semisimple = nonzero(&spec.direction[c..]);
    let dir: Vec<String> = spec.direction.iter().map(format_rational).collect();
    let p = PairData {
        kind: PairKind::Circle { central, semisimple },
        g: spec.g.clone(),
        k_name: "T1".into(),
        k_degrees: DegreeMultiset::new(vec![1])?,
        k_weyl_order: 1,
        k_weyl_generators: None,
        tk: Subspace::span(n, std::slice::from_ref(&spec.direction))?,
        blocks: Vec::new(),
        provenance: vec![format!("circle in {} along ({})", spec.g, dir.join(", "))],
    };
    p.validate()?;
    Ok(p)
}

/// Root subsystem generated by reflections in `roots`: the closure of
/// `+-roots` under `s_beta(gamma)`.
fn subsystem_closure(gram: &[Vec<i64>], roots: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
    for r in roots {
        set.insert(r.clone());
        set.insert(r.iter().map(|x| -x).collect());
    }
    loop {
        let cur: Vec<Vec<i64>> = set.iter().cloned().collect();
        let mut grew = false;
        for b in &cur {
            for c in &cur {
                grew |= set.insert(reflect(gram, b, c));
            }
        }
        if !grew {
            return set.into_iter().collect();
        }
    }
}

fn is_positive(v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0) && v.iter().any(|&x| x > 0)
}

/// Simple types of the connected components of a root subsystem.
pub(crate) fn classify_subsystem(gram: &[Vec<i64>], subsystem: &[Vec<i64>]) -> Result<Vec<SimpleType>> {
    let positive: Vec<&Vec<i64>> = subsystem.iter().filter(|r| is_positive(r)).collect();
    let pos_set: HashSet<&Vec<i64>> = positive.iter().copied().collect();
    let simple: Vec<&Vec<i64>> = positive
        .iter()
        .copied()
        .filter(|g| positive.iter().all(|b| b == g || pos_set.contains(&reflect(gram, g, b))))
        .collect();

    let k = simple.len();
    let local: Vec<Vec<i64>> =
        (0..k).map(|i| (0..k).map(|j| dot(gram, simple[i], simple[j])).collect()).collect();
    let mut comp = vec![usize::MAX; k];
    let mut types = Vec::new();
    for start in 0..k {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = types.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut head = 0;
        while head < members.len() {
            let i = members[head];
            head += 1;
            for j in 0..k {
                if comp[j] == usize::MAX && local[i][j] != 0 {
                    comp[j] = id;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        let sub_gram: Vec<Vec<i64>> =
            members.iter().map(|&i| members.iter().map(|&j| local[i][j]).collect()).collect();
        types.push(identify_component(&sub_gram)?);
    }
    types.sort();
    Ok(types)
}

fn identify_component(gram: &[Vec<i64>]) -> Result<SimpleType> {
    let cartan = cartan_from_gram(gram);
    let r = cartan.len();
    let npos = positive_roots_from_cartan(&cartan).len();
    let max_bond = (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .map(|(i, j)| cartan[i][j] * cartan[j][i])
        .max()
        .unwrap_or(0);
    let family = match max_bond {
        0 | 1 => {
            if npos == r * (r + 1) / 2 {
                Family::A
            } else if r >= 4 && npos == r * (r - 1) {
                Family::D
            } else if [(6, 36), (7, 63), (8, 120)].contains(&(r, npos)) {
                Family::E
            } else {
                return Err(Error::InternalInconsistency(format!("unrecognized simply-laced rank {r} component")));
            }
        }
        2 if r == 4 && npos == 24 => Family::F,
        2 => {
            let longest = (0..r).map(|i| gram[i][i]).max().unwrap_or(0);
            let short = (0..r).filter(|&i| gram[i][i] < longest).count();
            if short == 1 {
                Family::B
            } else {
                Family::C
            }
        }
        3 => Family::G,
        _ => return Err(Error::InternalInconsistency("bond of multiplicity > 3".into())),
    };
    SimpleType::new(family, r)
}

pub fn resolve_regular(spec: &RegularSpec) -> Result<PairData> {
    let g = &spec.g;
    let n = g.rank();
    let all: HashSet<Vec<i64>> = g.roots().into_iter().collect();
    for r in &spec.sub_roots {
        if r.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
        if !all.contains(r) {
            return Err(Error::RootNotInSystem(r.clone()));
        }
    }
    let span_rank = Subspace::span_i64(n, &spec.sub_roots)?.dim();
    let found = span_rank + spec.extra_center;
    if found < n {
        return Err(Error::RankDeficient { required: n, found });
    }
    if found > n {
        return Err(Error::RankExceeded { required: n, found });
    }
    let gram = g.gram();
    let subsystem = subsystem_closure(&gram, &spec.sub_roots);
    let types = classify_subsystem(&gram, &subsystem)?;
    let mut degrees = vec![1; spec.extra_center];
    let mut formula_order = 1u64;
    for t in &types {
        degrees.extend(t.primitive_degrees().iter());
        formula_order = formula_order.checked_mul(t.weyl_order_formula()).ok_or(Error::Overflow("|W(K)|"))?;
    }
    let mut provenance = vec![format!(
        "regular subalgebra of {g} generated by {} root(s), {} extra central direction(s)",
        spec.sub_roots.len(),
        spec.extra_center
    )];
    if formula_order <= DEFAULT_CAP {
        let enumerated = reflection_closure(&gram, &spec.sub_roots, DEFAULT_CAP)?.len() as u64;
        if enumerated != formula_order {
            return Err(Error::InternalInconsistency(format!(
                "reflection subgroup has {enumerated} elements, component types give {formula_order}"
            )));
        }
        provenance.push(format!("|W(K)| = {enumerated} by reflection-subgroup closure"));
    } else {
        provenance.push(format!("|W(K)| = {formula_order} from component types (closure skipped)"));
    }
    let mut names: Vec<String> = types.iter().map(ToString::to_string).collect();
    if spec.extra_center > 0 {
        names.insert(0, format!("T{}", spec.extra_center));
    }
    let p = PairData {
        kind: PairKind::Regular,
        g: g.clone(),
        k_name: if names.is_empty() { "0".into() } else { names.join("x") },
        k_degrees: DegreeMultiset::new(degrees)?,
        k_weyl_order: formula_order,
        k_weyl_generators: Some(spec.sub_roots.clone()),
        tk: Subspace::full(n),
        blocks: Vec::new(),
        provenance,
    };
    p.validate()?;
    Ok(p)
}

fn resolve_block(block: &ProductBlock) -> Result<PairData> {
    if block.copies == 0 {
        return Err(Error::InvalidSpec(format!("block {} needs at least one copy", block.factor)));
    }
    let automorphism = block.return_automorphism.clone().unwrap_or_else(|| (1..=block.factor.rank()).collect());
    let inner = resolve_fold(&FoldSpec { g_type: block.factor, automorphism })?;
    let l = block.copies;
    if l == 1 {
        return Ok(inner);
    }
    let PairKind::Fold { order } = inner.kind else { unreachable!("resolve_fold returns folds") };
    let r = block.factor.rank();
    let diag: Vec<Vec<Rational>> = inner.tk.basis().iter().map(|b| b.iter().cycle().take(l * r).cloned().collect()).collect();
    let mut provenance = inner.provenance.clone();
    provenance.push(format!("diagonal embedding into {l} copies of {}", block.factor));
    let p = PairData {
        kind: PairKind::Diagonal { copies: l, order },
        g: CompactAlgebra::new(0, vec![block.factor; l]),
        k_name: format!("D({})", inner.k_name),
        k_degrees: inner.k_degrees.clone(),
        k_weyl_order: inner.k_weyl_order,
        k_weyl_generators: None,
        tk: Subspace::span(l * r, &diag)?,
        blocks: Vec::new(),
        provenance,
    };
    p.validate()?;
    Ok(p)
}

fn central_block(center_dim: usize, fixed: usize) -> Result<PairData> {
    let basis: Vec<Vec<i64>> = (0..fixed).map(|i| (0..center_dim).map(|j| i64::from(i == j)).collect()).collect();
    let p = PairData {
        kind: PairKind::CentralTorus,
        g: CompactAlgebra::torus(center_dim),
        k_name: format!("T{fixed}"),
        k_degrees: DegreeMultiset::new(vec![1; fixed])?,
        k_weyl_order: 1,
        k_weyl_generators: None,
        tk: Subspace::span_i64(center_dim, &basis)?,
        blocks: Vec::new(),
        provenance: vec![format!("subtorus T{fixed} of the center T{center_dim}")],
    };
    p.validate()?;
    Ok(p)
}

/// Splits `g` into its center and the orbits of simple ideals, resolving
/// each orbit of length `l` as `(I^l, Delta(H))`.
pub fn resolve_product(spec: &ProductSpec) -> Result<PairData> {
    let fixed = spec.center_fixed_dim.unwrap_or(spec.center_dim);
    if fixed > spec.center_dim {
        return Err(Error::InvalidSpec(format!(
            "center_fixed_dim {fixed} exceeds center_dim {}",
            spec.center_dim
        )));
    }
    let mut blocks = Vec::new();
    if spec.center_dim > 0 {
        blocks.push(central_block(spec.center_dim, fixed)?);
    }
    for b in &spec.blocks {
        blocks.push(resolve_block(b)?);
    }
    match blocks.len() {
        0 => return Err(Error::InvalidSpec("product with no center and no blocks".into())),
        1 if spec.center_dim == 0 => {
            let mut only = blocks.pop().expect("one block");
            only.provenance.push("single orbit: product reduces to its block".into());
            return Ok(only);
        }
        _ => {}
    }
    let g = CompactAlgebra::new(spec.center_dim, blocks.iter().flat_map(|b| b.g.factors.iter().copied()).collect());
    let tk = blocks.iter().skip(1).fold(blocks[0].tk.clone(), |acc, b| acc.direct_sum(&b.tk));
    let k_degrees = DegreeMultiset::new(blocks.iter().flat_map(|b| b.k_degrees.iter()).collect())?;
    let k_weyl_order = blocks
        .iter()
        .try_fold(1u64, |acc, b| acc.checked_mul(b.k_weyl_order))
        .ok_or(Error::Overflow("|W(K)|"))?;
    let k_name = blocks.iter().map(|b| b.k_name.as_str()).collect::<Vec<_>>().join("x");
    let p = PairData {
        kind: PairKind::Product,
        g,
        k_name,
        k_degrees,
        k_weyl_order,
        k_weyl_generators: None,
        tk,
        blocks,
        provenance: vec![format!("product of {} block(s)", spec.blocks.len() + usize::from(spec.center_dim > 0))],
    };
    p.validate()?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::parse_rational;
    use crate::rootsystem::build_root_system;

    fn ty(s: &str) -> SimpleType {
        s.parse().unwrap()
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    fn fold(t: &str, perm: &[usize]) -> Result<PairData> {
        resolve_fold(&FoldSpec { g_type: ty(t), automorphism: perm.to_vec() })
    }

    #[test]
    fn fold_examples() {
        let p = fold("A3", &[3, 2, 1]).unwrap();
        assert_eq!(p.k_name, "C2");
        assert_eq!(p.rank_k(), 2);
        assert_eq!(p.k_degrees.as_slice(), &[3, 7]);
        // Direct solve of x1 = x3.
        assert_eq!(p.tk, Subspace::span_i64(3, &[vec![1, 0, 1], vec![0, 1, 0]]).unwrap());

        let p = fold("D4", &[3, 2, 4, 1]).unwrap();
        assert_eq!(p.k_name, "G2");
        assert_eq!(p.k_degrees.as_slice(), &[3, 11]);
        assert_eq!(p.kind, PairKind::Fold { order: 3 });

        let p = fold("A2", &[1, 2]).unwrap();
        assert_eq!(p.k_name, "A2");
        assert!(p.tk.is_full());
        assert_eq!(p.k_degrees.as_slice(), &[3, 5]);

        let p = fold("A2", &[2, 1]).unwrap();
        assert_eq!((p.k_name.as_str(), p.k_degrees.as_slice()), ("B1", &[3][..]));
        assert_eq!(fold("E6", &[6, 2, 5, 4, 3, 1]).unwrap().k_name, "F4");
        assert_eq!(fold("D5", &[1, 2, 3, 5, 4]).unwrap().k_name, "B4");
        assert_eq!(fold("D3", &[1, 3, 2]).unwrap().k_name, "B2");
        assert_eq!(fold("A4", &[4, 3, 2, 1]).unwrap().k_name, "B2");
        assert_eq!(fold("A5", &[5, 4, 3, 2, 1]).unwrap().k_name, "C3");
        assert_eq!(fold("D4", &[4, 2, 3, 1]).unwrap().k_name, "B3");
    }

    #[test]
    fn fold_errors() {
        assert!(matches!(fold("A3", &[2, 1, 3]), Err(Error::NotDiagramAutomorphism(_))));
        assert!(matches!(fold("B3", &[3, 2, 1]), Err(Error::NotDiagramAutomorphism(_))));
        assert!(matches!(fold("A3", &[1, 2]), Err(Error::NotDiagramAutomorphism(_))));
        assert!(matches!(fold("A3", &[1, 1, 3]), Err(Error::NotDiagramAutomorphism(_))));
        assert!(matches!(fold("A3", &[0, 2, 4]), Err(Error::NotDiagramAutomorphism(_))));
        assert!(matches!(folded_type(ty("B3"), 2), Err(Error::UnsupportedFold(_))));
    }

    #[test]
    fn fold_maps_are_root_isometries() {
        for (t, perm) in [("A5", vec![5, 4, 3, 2, 1]), ("D4", vec![3, 2, 4, 1]), ("E6", vec![6, 2, 5, 4, 3, 1]), ("D5", vec![1, 2, 3, 5, 4])] {
            let m = diagram_automorphism_matrix(ty(t), &perm).unwrap();
            let rs = build_root_system(ty(t));
            let roots: HashSet<Vec<i64>> = rs.roots().into_iter().collect();
            let image = |v: &[i64]| -> Vec<i64> {
                m.apply(&q(v)).unwrap().iter().map(|x| x.to_integer().try_into().unwrap()).collect()
            };
            for a in &roots {
                assert!(roots.contains(&image(a)), "{t}");
                for b in &roots {
                    assert_eq!(dot(&rs.gram, &image(a), &image(b)), dot(&rs.gram, a, b));
                }
            }
        }
    }

    #[test]
    fn fold_is_deterministic() {
        let a = fold("E6", &[6, 2, 5, 4, 3, 1]).unwrap();
        let b = fold("E6", &[6, 2, 5, 4, 3, 1]).unwrap();
        assert_eq!(a.canonical_bytes(), b.canonical_bytes());
    }

    #[test]
    fn circle_examples() {
        let a2 = CompactAlgebra::simple(ty("A2"));
        let tz: Vec<Rational> = ["1", "2", "-3"].iter().map(|s| parse_rational(s).unwrap()).collect();
        let spec = CircleSpec::from_trace_zero(a2.clone(), &tz).unwrap();
        assert_eq!(spec.direction, q(&[1, 3]));
        let p = resolve_circle(&spec).unwrap();
        assert_eq!(p.rank_k(), 1);
        assert_eq!(p.k_degrees.as_slice(), &[1]);
        assert_eq!(p.kind, PairKind::Circle { central: false, semisimple: true });

        let a1 = CompactAlgebra::simple(ty("A1"));
        let spec = CircleSpec::from_trace_zero(a1, &q(&[1, -1])).unwrap();
        assert_eq!(resolve_circle(&spec).unwrap().tk, Subspace::full(1));

        let p = resolve_circle(&CircleSpec { g: CompactAlgebra::torus(1), direction: q(&[1]) }).unwrap();
        assert_eq!(p.kind, PairKind::Circle { central: true, semisimple: false });
        assert!(p.tk.is_full());

        assert_eq!(resolve_circle(&CircleSpec { g: a2.clone(), direction: q(&[0, 0]) }), Err(Error::ZeroDirection));
        assert!(resolve_circle(&CircleSpec { g: a2.clone(), direction: q(&[1]) }).is_err());
        assert!(CircleSpec::from_trace_zero(a2.clone(), &q(&[1, 1, 1])).is_err());
        assert!(CircleSpec::from_trace_zero(CompactAlgebra::simple(ty("B2")), &q(&[1, -1, 0])).is_err());
    }

    #[test]
    fn regular_examples() {
        let a2 = CompactAlgebra::simple(ty("A2"));
        let t = resolve_regular(&RegularSpec { g: a2.clone(), sub_roots: vec![], extra_center: 2 }).unwrap();
        assert_eq!((t.k_degrees.as_slice(), t.k_weyl_order), (&[1, 1][..], 1));

        let g2 = resolve_regular(&RegularSpec {
            g: CompactAlgebra::simple(ty("G2")),
            sub_roots: vec![vec![0, 1], vec![3, 1]],
            extra_center: 0,
        })
        .unwrap();
        assert_eq!((g2.k_name.as_str(), g2.k_weyl_order), ("A2", 6));
        assert_eq!(g2.k_degrees.as_slice(), &[3, 5]);

        let a1 = resolve_regular(&RegularSpec { g: CompactAlgebra::simple(ty("A1")), sub_roots: vec![vec![1]], extra_center: 0 }).unwrap();
        assert_eq!((a1.k_name.as_str(), a1.k_degrees.as_slice()), ("A1", &[3][..]));

        let u2 = resolve_regular(&RegularSpec { g: a2.clone(), sub_roots: vec![vec![1, 0]], extra_center: 1 }).unwrap();
        assert_eq!((u2.k_name.as_str(), u2.k_degrees.as_slice(), u2.k_weyl_order), ("T1xA1", &[1, 3][..], 2));

        assert!(matches!(
            resolve_regular(&RegularSpec { g: a2.clone(), sub_roots: vec![vec![1, 0]], extra_center: 0 }),
            Err(Error::RankDeficient { required: 2, found: 1 })
        ));
        assert!(matches!(
            resolve_regular(&RegularSpec { g: a2.clone(), sub_roots: vec![vec![1, 2]], extra_center: 1 }),
            Err(Error::RootNotInSystem(_))
        ));
        assert!(matches!(
            resolve_regular(&RegularSpec { g: a2, sub_roots: vec![vec![1, 0]], extra_center: 2 }),
            Err(Error::RankExceeded { .. })
        ));
    }

    #[test]
    fn subsystem_classification() {
        let cases: Vec<(&str, Vec<Vec<i64>>, Vec<&str>)> = vec![
            // Long roots of B3 form D3, reported as A3.
            ("B3", vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 1, 2]], vec!["A3"]),
            ("B2", vec![vec![1, 0], vec![1, 2]], vec!["A1", "A1"]),
            ("C3", vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]], vec!["C3"]),
            ("B4", vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 1, 2]], vec!["D4"]),
            ("F4", vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]], vec!["F4"]),
            ("G2", vec![vec![1, 0], vec![0, 1]], vec!["G2"]),
            ("B3", vec![vec![0, 1, 0], vec![0, 0, 1]], vec!["B2"]),
        ];
        for (g, roots, expect) in cases {
            let alg = CompactAlgebra::simple(ty(g));
            let gram = alg.gram();
            let sub = subsystem_closure(&gram, &roots);
            let got: Vec<String> = classify_subsystem(&gram, &sub).unwrap().iter().map(ToString::to_string).collect();
            assert_eq!(got, expect, "{g}");
        }
    }

    #[test]
    fn product_examples() {
        let spec = ProductSpec {
            center_dim: 0,
            center_fixed_dim: None,
            blocks: vec![ProductBlock { factor: ty("A1"), copies: 2, return_automorphism: None }],
        };
        let p = resolve_product(&spec).unwrap();
        assert_eq!(p.kind, PairKind::Diagonal { copies: 2, order: 1 });
        assert_eq!(p.tk, Subspace::span_i64(2, &[vec![1, 1]]).unwrap());
        assert_eq!(p.k_degrees.as_slice(), &[3]);

        let spec = ProductSpec {
            center_dim: 0,
            center_fixed_dim: None,
            blocks: vec![ProductBlock { factor: ty("A2"), copies: 1, return_automorphism: Some(vec![2, 1]) }],
        };
        let p = resolve_product(&spec).unwrap();
        let direct = fold("A2", &[2, 1]).unwrap();
        assert_eq!((p.kind.clone(), p.tk.clone(), p.k_degrees.clone()), (direct.kind, direct.tk, direct.k_degrees));

        let spec = ProductSpec {
            center_dim: 0,
            center_fixed_dim: None,
            blocks: vec![ProductBlock { factor: ty("D4"), copies: 2, return_automorphism: Some(vec![3, 2, 4, 1]) }],
        };
        let p = resolve_product(&spec).unwrap();
        assert_eq!((p.k_name.as_str(), p.k_degrees.as_slice()), ("D(G2)", &[3, 11][..]));
        assert_eq!((p.rank_g(), p.rank_k()), (8, 2));

        let spec = ProductSpec {
            center_dim: 2,
            center_fixed_dim: Some(1),
            blocks: vec![
                ProductBlock { factor: ty("A1"), copies: 3, return_automorphism: None },
                ProductBlock { factor: ty("A3"), copies: 1, return_automorphism: Some(vec![3, 2, 1]) },
            ],
        };
        let p = resolve_product(&spec).unwrap();
        assert_eq!(p.kind, PairKind::Product);
        assert_eq!(p.blocks.len(), 3);
        assert_eq!(p.g.to_string(), "T2xA1xA1xA1xA3");
        assert_eq!((p.rank_g(), p.rank_k()), (8, 4));
        assert_eq!(p.k_degrees.as_slice(), &[1, 3, 3, 7]);
        assert_eq!(p.k_weyl_order, 2 * 8);
    }

    #[test]
    fn product_of_identities_is_direct_sum() {
        let spec = ProductSpec {
            center_dim: 1,
            center_fixed_dim: None,
            blocks: vec![
                ProductBlock { factor: ty("A2"), copies: 1, return_automorphism: None },
                ProductBlock { factor: ty("B2"), copies: 1, return_automorphism: None },
            ],
        };
        let p = resolve_product(&spec).unwrap();
        assert!(p.tk.is_full());
        assert_eq!(p.k_degrees, p.g.primitive_degrees());
        assert_eq!(p.k_weyl_order, p.g.weyl_order().unwrap());
    }

    #[test]
    fn product_errors() {
        let empty = ProductSpec { center_dim: 0, center_fixed_dim: None, blocks: vec![] };
        assert!(resolve_product(&empty).is_err());
        let zero = ProductSpec {
            center_dim: 0,
            center_fixed_dim: None,
            blocks: vec![ProductBlock { factor: ty("A1"), copies: 0, return_automorphism: None }],
        };
        assert!(resolve_product(&zero).is_err());
        let bad = ProductSpec {
            center_dim: 0,
            center_fixed_dim: None,
            blocks: vec![ProductBlock { factor: ty("A3"), copies: 2, return_automorphism: Some(vec![2, 1, 3]) }],
        };
        assert!(matches!(resolve_product(&bad), Err(Error::NotDiagramAutomorphism(_))));
        let over = ProductSpec { center_dim: 1, center_fixed_dim: Some(2), blocks: vec![] };
        assert!(resolve_product(&over).is_err());
    }
}
