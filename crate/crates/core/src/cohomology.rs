//! Degree-multiset arithmetic for `H*(G)`, `H*(K)` and `H*(G/K)`.
//!
//! A compact group is represented by the degrees of its primitive
//! generators, each odd; a central circle contributes degree 1.
//! `H*(G/K)` for a Cartan pair is `im(omega) (x) Lambda(P_(G,K))`, so only the
//! image dimension and the Samelson multiset are needed.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pairs::{PairData, PairKind};
use crate::rootsystem::CompactAlgebra;

/// Sorted odd positive integers with multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct DegreeMultiset(Vec<u32>);

impl DegreeMultiset {
    pub fn new(mut degrees: Vec<u32>) -> Result<Self> {
        if let Some(d) = degrees.iter().find(|d| d.is_even()) {
            return Err(Error::InvalidSpec(format!("primitive degree {d} is not a positive odd integer")));
        }
        degrees.sort_unstable();
        Ok(DegreeMultiset(degrees))
    }

    pub fn empty() -> Self {
        DegreeMultiset(Vec::new())
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `prod (d+1)/2`, the Weyl group order when this is a group's multiset.
    pub fn weyl_product(&self) -> Option<u64> {
        self.iter().try_fold(1u64, |acc, d| acc.checked_mul(u64::from(d).div_ceil(2)))
    }

    /// Multiset inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &DegreeMultiset) -> bool {
        other.difference(self).is_ok()
    }

    /// `self ∖ other`, failing unless `other ⊆ self`.
    pub fn difference(&self, other: &DegreeMultiset) -> Result<DegreeMultiset> {
        let mut rest = self.0.clone();
        for d in other.iter() {
            match rest.binary_search(&d) {
                Ok(i) => {
                    rest.remove(i);
                }
                Err(_) => {
                    return Err(Error::MultisetNotContained { sub: other.to_string(), sup: self.to_string() });
                }
            }
        }
        Ok(DegreeMultiset(rest))
    }

    pub fn union(&self, other: &DegreeMultiset) -> DegreeMultiset {
        let mut v = self.0.clone();
        v.extend(other.iter());
        v.sort_unstable();
        DegreeMultiset(v)
    }

    /// Removes one copy of `d`, if present.
    pub fn remove_one(&self, d: u32) -> Option<DegreeMultiset> {
        let i = self.0.binary_search(&d).ok()?;
        let mut v = self.0.clone();
        v.remove(i);
        Some(DegreeMultiset(v))
    }
}

impl TryFrom<Vec<u32>> for DegreeMultiset {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        DegreeMultiset::new(v)
    }
}

impl From<DegreeMultiset> for Vec<u32> {
    fn from(d: DegreeMultiset) -> Self {
        d.0
    }
}

impl fmt::Display for DegreeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Degrees of the Samelson subspace `P_(G,K)` of an irreducible pair.
///
/// Equal rank gives nothing. Folds, diagonals and central subtori are
/// non-cohomologous to zero, so `P_G = P_K (+) P_(G,K)` and the Samelson
/// degrees are `g ∖ k`. A circle with a central component kills one degree-1
/// generator; a semisimple circle kills the quadratic generator of degree 3,
/// since a definite form restricts nonzero to every line, and every other
/// primitive transgresses to zero in `S(t_K*)`.
pub fn samelson_degrees(p: &PairData) -> Result<DegreeMultiset> {
    let g = p.g.primitive_degrees();
    let s = match p.kind {
        PairKind::Regular => DegreeMultiset::empty(),
        PairKind::Fold { .. } | PairKind::Diagonal { .. } | PairKind::CentralTorus => g.difference(&p.k_degrees)?,
        PairKind::Circle { central, .. } => {
            let d = if central { 1 } else { 3 };
            g.remove_one(d).ok_or_else(|| {
                Error::UnsupportedPair(format!("circle in {} has no degree-{d} primitive to remove", p.g))
            })?
        }
        PairKind::Product => {
            return Err(Error::UnsupportedPair("Samelson degrees of a product are taken per block".into()))
        }
    };
    if s.len() + p.k_degrees.len() != g.len() {
        return Err(Error::SizeMismatch(format!(
            "|P_G| = {} but |P_K| + |P_(G,K)| = {} + {}",
            g.len(),
            p.k_degrees.len(),
            s.len()
        )));
    }
    Ok(s)
}

/// `prod (g_j+1)/(l_j+1)` over the non-Samelson degrees of `G` paired
/// ascending with the degrees of `K`.
pub fn dim_image_weil(g: &DegreeMultiset, k: &DegreeMultiset, samelson: &DegreeMultiset) -> Result<u64> {
    if g.len() != k.len() + samelson.len() {
        return Err(Error::SizeMismatch(format!(
            "|g| = {} but |k| + |samelson| = {} + {}",
            g.len(),
            k.len(),
            samelson.len()
        )));
    }
    let rest = g.difference(samelson)?;
    let mut prod = BigRational::one();
    for (gj, lj) in rest.iter().zip(k.iter()) {
        prod *= BigRational::new(BigInt::from(gj + 1), BigInt::from(lj + 1));
    }
    if !prod.is_integer() || prod < BigRational::one() {
        return Err(Error::NonIntegerProduct(format!("g {g}, k {k}, samelson {samelson}: product {prod}")));
    }
    prod.to_integer().to_u64().ok_or(Error::Overflow("dim im(omega)"))
}

/// `dim H*(G/K)`: the Weil image times `2^|samelson|`, multiplied over blocks.
pub fn dim_cohomology_quotient(p: &PairData) -> Result<u64> {
    if p.kind == PairKind::Product {
        return p.blocks.iter().try_fold(1u64, |acc, b| {
            acc.checked_mul(dim_cohomology_quotient(b)?).ok_or(Error::Overflow("dim H*(G/K)"))
        });
    }
    let s = samelson_degrees(p)?;
    let image = dim_image_weil(&p.g.primitive_degrees(), &p.k_degrees, &s)?;
    pow2(s.len())?.checked_mul(image).ok_or(Error::Overflow("dim H*(G/K)"))
}

pub fn dim_cohomology_group(a: &CompactAlgebra) -> Result<u64> {
    pow2(a.rank())
}

pub(crate) fn pow2(e: usize) -> Result<u64> {
    u32::try_from(e).ok().and_then(|e| 1u64.checked_shl(e)).filter(|_| e < 64).ok_or(Error::Overflow("2^rank"))
}

/// Both sides of `dim H*(G/K) * |W(K)|/|W(H)| = dim H*(G/H)` for a nested
/// pair with a common maximal torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub dim_g_mod_k: u64,
    pub dim_g_mod_h: u64,
    pub k_weyl_order: u64,
    pub h_weyl_order: u64,
    pub samelson: DegreeMultiset,
}

pub fn equal_rank_transfer(p_k: &PairData, p_h: &PairData) -> Result<TransferReport> {
    if p_k.g != p_h.g {
        return Err(Error::SubspaceMismatch(format!("pairs live in {} and {}", p_k.g, p_h.g)));
    }
    if p_k.tk != p_h.tk {
        return Err(Error::SubspaceMismatch("K and H have different maximal tori".into()));
    }
    let dim_g_mod_k = dim_cohomology_quotient(p_k)?;
    let dim_g_mod_h = dim_cohomology_quotient(p_h)?;
    let s_k = samelson_degrees(p_k)?;
    let s_h = samelson_degrees(p_h)?;
    if s_k != s_h {
        return Err(Error::InternalInconsistency(format!("Samelson degrees differ: {s_k} vs {s_h}")));
    }
    let lhs = BigRational::new(BigInt::from(dim_g_mod_k) * BigInt::from(p_k.k_weyl_order), BigInt::from(p_h.k_weyl_order));
    if lhs != BigRational::from_integer(BigInt::from(dim_g_mod_h)) {
        return Err(Error::InternalInconsistency(format!(
            "{dim_g_mod_k} * {}/{} != {dim_g_mod_h}",
            p_k.k_weyl_order, p_h.k_weyl_order
        )));
    }
    Ok(TransferReport {
        dim_g_mod_k,
        dim_g_mod_h,
        k_weyl_order: p_k.k_weyl_order,
        h_weyl_order: p_h.k_weyl_order,
        samelson: s_k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::parse_rational;
    use crate::pairs::{resolve_circle, resolve_fold, resolve_regular, CircleSpec, FoldSpec, RegularSpec};
    use crate::rootsystem::SimpleType;
    use proptest::prelude::*;

    fn ms(v: &[u32]) -> DegreeMultiset {
        DegreeMultiset::new(v.to_vec()).unwrap()
    }

    fn ty(s: &str) -> SimpleType {
        s.parse().unwrap()
    }

    fn fold(t: &str, perm: &[usize]) -> PairData {
        resolve_fold(&FoldSpec { g_type: ty(t), automorphism: perm.to_vec() }).unwrap()
    }

    fn a2_circle(tz: &[&str]) -> PairData {
        let coords: Vec<_> = tz.iter().map(|s| parse_rational(s).unwrap()).collect();
        resolve_circle(&CircleSpec::from_trace_zero(CompactAlgebra::simple(ty("A2")), &coords).unwrap()).unwrap()
    }

    #[test]
    fn multiset_basics() {
        assert_eq!(ms(&[5, 3, 3]).as_slice(), &[3, 3, 5]);
        assert!(DegreeMultiset::new(vec![4]).is_err());
        assert!(DegreeMultiset::new(vec![0]).is_err());
        assert_eq!(ms(&[3, 5]).to_string(), "{3, 5}");
        assert_eq!(ms(&[3, 7, 7, 11]).difference(&ms(&[3, 11])).unwrap(), ms(&[7, 7]));
        assert!(matches!(ms(&[3]).difference(&ms(&[5])), Err(Error::MultisetNotContained { .. })));
        assert!(ms(&[3]).is_subset_of(&ms(&[3, 5])));
        assert_eq!(ms(&[3, 5]).weyl_product(), Some(6));
        assert_eq!(ms(&[1, 1]).weyl_product(), Some(1));
        assert_eq!(serde_json::to_string(&ms(&[3, 5])).unwrap(), "[3,5]");
        assert!(serde_json::from_str::<DegreeMultiset>("[2]").is_err());
    }

    #[test]
    fn samelson_examples() {
        assert_eq!(samelson_degrees(&fold("A3", &[3, 2, 1])).unwrap(), ms(&[5]));
        assert_eq!(samelson_degrees(&fold("D4", &[3, 2, 4, 1])).unwrap(), ms(&[7, 7]));
        assert_eq!(samelson_degrees(&a2_circle(&["1", "2", "-3"])).unwrap(), ms(&[5]));
    }

    #[test]
    fn weil_image_examples() {
        assert_eq!(dim_image_weil(&ms(&[3, 5]), &ms(&[1]), &ms(&[5])).unwrap(), 2);
        assert_eq!(dim_image_weil(&ms(&[3, 5, 7]), &ms(&[3, 7]), &ms(&[5])).unwrap(), 1);
        assert_eq!(dim_image_weil(&ms(&[3, 5]), &ms(&[1, 1]), &ms(&[])).unwrap(), 6);
        assert!(matches!(dim_image_weil(&ms(&[3, 5]), &ms(&[1]), &ms(&[])), Err(Error::SizeMismatch(_))));
        // (3+1)/(5+1) is not an integer.
        assert!(matches!(dim_image_weil(&ms(&[3]), &ms(&[5]), &ms(&[])), Err(Error::NonIntegerProduct(_))));
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(dim_cohomology_quotient(&a2_circle(&["1", "2", "-3"])).unwrap(), 4);
        assert_eq!(dim_cohomology_quotient(&fold("A2", &[2, 1])).unwrap(), 2);
        assert_eq!(dim_cohomology_quotient(&fold("A2", &[1, 2])).unwrap(), 1);
        let g2 = resolve_regular(&RegularSpec {
            g: CompactAlgebra::simple(ty("G2")),
            sub_roots: vec![vec![0, 1], vec![3, 1]],
            extra_center: 0,
        })
        .unwrap();
        assert_eq!(dim_cohomology_quotient(&g2).unwrap(), 2);
    }

    #[test]
    fn group_cohomology() {
        assert_eq!(dim_cohomology_group(&CompactAlgebra::simple(ty("A1"))).unwrap(), 2);
        assert_eq!(dim_cohomology_group(&CompactAlgebra::simple(ty("A2"))).unwrap(), 4);
        assert_eq!(dim_cohomology_group(&CompactAlgebra::new(1, vec![ty("A1")])).unwrap(), 4);
    }

    #[test]
    fn transfer_examples() {
        let k = fold("A2", &[2, 1]);
        let h = a2_circle(&["1", "0", "-1"]);
        let r = equal_rank_transfer(&k, &h).unwrap();
        assert_eq!((r.dim_g_mod_k, r.dim_g_mod_h, r.k_weyl_order, r.h_weyl_order), (2, 4, 2, 1));

        let t = resolve_regular(&RegularSpec { g: CompactAlgebra::simple(ty("A2")), sub_roots: vec![], extra_center: 2 }).unwrap();
        let r = equal_rank_transfer(&t, &t).unwrap();
        assert_eq!((r.dim_g_mod_k, r.dim_g_mod_h), (6, 6));

        let other = a2_circle(&["1", "2", "-3"]);
        assert!(matches!(equal_rank_transfer(&k, &other), Err(Error::SubspaceMismatch(_))));
    }

    #[test]
    fn equal_rank_quotient_is_weyl_index() {
        let cases: Vec<(&str, Vec<Vec<i64>>, usize)> = vec![
            ("A3", vec![vec![1, 0, 0], vec![0, 1, 0]], 1),
            ("A3", vec![vec![1, 0, 0], vec![0, 0, 1]], 1),
            ("B2", vec![vec![1, 0], vec![1, 2]], 0),
            ("B3", vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 1, 2]], 0),
            ("C2", vec![], 2),
            ("F4", vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]], 1),
        ];
        for (g, roots, extra) in cases {
            let a = CompactAlgebra::simple(ty(g));
            let p = resolve_regular(&RegularSpec { g: a.clone(), sub_roots: roots, extra_center: extra }).unwrap();
            let wg = a.weyl_order().unwrap();
            assert_eq!(wg % p.k_weyl_order, 0, "{g}");
            assert_eq!(dim_cohomology_quotient(&p).unwrap(), wg / p.k_weyl_order, "{g}");
        }
    }

    proptest! {
        #[test]
        fn difference_then_union_restores(a in proptest::collection::vec(0u32..6, 0..6), b in proptest::collection::vec(0u32..6, 0..6)) {
            let a = DegreeMultiset::new(a.into_iter().map(|x| 2 * x + 1).collect()).unwrap();
            let b = DegreeMultiset::new(b.into_iter().map(|x| 2 * x + 1).collect()).unwrap();
            let u = a.union(&b);
            prop_assert_eq!(u.difference(&b).unwrap(), a.clone());
            prop_assert!(a.is_subset_of(&u));
            prop_assert_eq!(u.len(), a.len() + b.len());
        }

        #[test]
        fn ncz_folds_satisfy_dimension_identity(n in 2usize..8) {
            let perm: Vec<usize> = (1..=n).rev().collect();
            let p = fold(&format!("A{n}"), &perm);
            let dim = dim_cohomology_quotient(&p).unwrap();
            prop_assert_eq!(dim * pow2(p.rank_k()).unwrap(), pow2(p.rank_g()).unwrap());
        }
    }
}
