//! Verdicts: equivariant formality of the isotropy action and ncz.
//!
//! The cohomology side is `dim H*(G/K)` from the degree data. The
//! fixed-point side is `dim H*((G/K)^{T_K}) = 2^{rk G - rk K} |H| / |W(K)|`
//! with `H` the group of restrictions to `t_K` of Weyl elements stabilizing
//! it. The action is formal exactly when the two agree.

use serde::{Deserialize, Serialize};

use crate::cohomology::{dim_cohomology_quotient, dim_image_weil, pow2, samelson_degrees, DegreeMultiset};
use crate::error::{Error, Result};
use crate::pairs::{PairData, PairKind};
use crate::weyl::{restriction_set, subgroup_order, WeylGroup, DEFAULT_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisConfig {
    /// Largest Weyl group that may be enumerated.
    pub cap: u64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig { cap: DEFAULT_CAP }
    }
}

/// Field order is the serialization order. `None` marks a quantity that was
/// not computed, never a failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormalityReport {
    pub dim_quotient: u64,
    pub fp_dim: Option<u64>,
    pub formal: Option<bool>,
    pub ncz: bool,
    pub fp_components: Option<u64>,
    pub fixed_set_connected: Option<bool>,
    pub h_order: Option<u64>,
    pub dim_image_weil: Option<u64>,
    pub label: Option<String>,
    pub construction: String,
    pub g: String,
    pub k: String,
    pub rank_g: usize,
    pub rank_k: usize,
    pub weyl_order_g: Option<u64>,
    pub weyl_order_k: u64,
    pub g_degrees: DegreeMultiset,
    pub k_degrees: DegreeMultiset,
    pub samelson_degrees: DegreeMultiset,
    pub cartan_pair_license: String,
    pub formal_license: String,
    pub provenance: Vec<String>,
    pub warnings: Vec<String>,
    pub blocks: Vec<FormalityReport>,
}

pub mod license {
    pub const AUTOMORPHISM: &str = "automorphism-pair";
    pub const EQUAL_RANK: &str = "equal-rank";
    pub const CIRCLE: &str = "circle-subtorus";
    pub const CENTRAL: &str = "central-torus";
    pub const PRODUCT: &str = "product-of-blocks";
    pub const FIXED_POINT_COUNT: &str = "fixed-point-count";
    pub const EQUAL_RANK_FORMULA: &str = "equal-rank, fixed-point side from Weyl order formula";
    pub const THEOREM_BACKED: &str = "theorem-backed, fixed-point side unverified";
    pub const UNDETERMINED: &str = "undetermined, enumeration capped";
    pub const CONJUNCTION: &str = "conjunction-of-blocks";
}

fn cartan_license(kind: &PairKind) -> &'static str {
    match kind {
        PairKind::Fold { .. } | PairKind::Diagonal { .. } => license::AUTOMORPHISM,
        PairKind::Regular => license::EQUAL_RANK,
        PairKind::Circle { .. } => license::CIRCLE,
        PairKind::CentralTorus => license::CENTRAL,
        PairKind::Product => license::PRODUCT,
    }
}

/// `|H|` for an irreducible pair. A zero-dimensional `t_K` has the single
/// empty restriction.
pub fn h_order(p: &PairData, w: &WeylGroup) -> Result<u64> {
    if p.tk.dim() == 0 {
        return Ok(1);
    }
    Ok(restriction_set(w, &p.tk)?.len() as u64)
}

/// `|H| / |W(K)|`, the number of components of the fixed set.
pub fn fixed_point_components(p: &PairData, w: &WeylGroup) -> Result<u64> {
    components_from(h_order(p, w)?, p.k_weyl_order)
}

fn components_from(h: u64, k_weyl_order: u64) -> Result<u64> {
    if h % k_weyl_order != 0 {
        return Err(Error::NonIntegralComponents { h_order: h, k_weyl_order });
    }
    Ok(h / k_weyl_order)
}

pub fn fixed_point_dim(p: &PairData, w: &WeylGroup) -> Result<u64> {
    let c = fixed_point_components(p, w)?;
    pow2(p.rank_g() - p.rank_k())?.checked_mul(c).ok_or(Error::Overflow("fixed-point dimension"))
}

/// `2^{rk G} = dim H*(G/K) * 2^{rk K}`.
fn ncz_by_dimension(dim: u64, rank_g: usize, rank_k: usize) -> Result<bool> {
    let lhs = u128::from(pow2(rank_g)?);
    Ok(lhs == u128::from(dim) * u128::from(pow2(rank_k)?))
}

struct FixedPointSide {
    h: u64,
    components: u64,
    fp_dim: u64,
}

fn computed_fixed_points(p: &PairData, w: &WeylGroup) -> Result<FixedPointSide> {
    let h = h_order(p, w)?;
    let components = components_from(h, p.k_weyl_order)?;
    let fp_dim = pow2(p.rank_g() - p.rank_k())?.checked_mul(components).ok_or(Error::Overflow("fixed-point dim"))?;
    Ok(FixedPointSide { h, components, fp_dim })
}

pub fn analyze(p: &PairData, config: &AnalysisConfig) -> Result<FormalityReport> {
    if p.kind == PairKind::Product {
        analyze_product(p, config)
    } else {
        analyze_irreducible(p, config)
    }
}

fn skeleton(p: &PairData, dim: u64, samelson: DegreeMultiset) -> FormalityReport {
    FormalityReport {
        dim_quotient: dim,
        fp_dim: None,
        formal: None,
        ncz: false,
        fp_components: None,
        fixed_set_connected: None,
        h_order: None,
        dim_image_weil: None,
        label: None,
        construction: p.kind.tag().to_string(),
        g: p.g.to_string(),
        k: p.k_name.clone(),
        rank_g: p.rank_g(),
        rank_k: p.rank_k(),
        weyl_order_g: p.g.weyl_order().ok(),
        weyl_order_k: p.k_weyl_order,
        g_degrees: p.g.primitive_degrees(),
        k_degrees: p.k_degrees.clone(),
        samelson_degrees: samelson,
        cartan_pair_license: cartan_license(&p.kind).to_string(),
        formal_license: String::new(),
        provenance: p.provenance.clone(),
        warnings: Vec::new(),
        blocks: Vec::new(),
    }
}

fn analyze_irreducible(p: &PairData, config: &AnalysisConfig) -> Result<FormalityReport> {
    let samelson = samelson_degrees(p)?;
    let image = dim_image_weil(&p.g.primitive_degrees(), &p.k_degrees, &samelson)?;
    let dim = dim_cohomology_quotient(p)?;
    let mut r = skeleton(p, dim, samelson);
    r.dim_image_weil = Some(image);
    r.ncz = ncz_by_dimension(dim, p.rank_g(), p.rank_k())?;
    if let PairKind::Circle { central: true, semisimple: true } = p.kind {
        r.warnings.push("circle direction has central and semisimple parts; degree-1 Samelson rule applied".into());
    }

    let group = match WeylGroup::for_algebra(&p.g, config.cap) {
        Ok(w) => Some(w),
        Err(Error::CapExceeded { order, cap }) => {
            r.warnings.push(format!("|W(G)| = {order} exceeds the enumeration cap {cap}; fixed-point side not enumerated"));
            None
        }
        Err(e) => return Err(e),
    };

    match group {
        Some(w) => {
            if let Some(roots) = &p.k_weyl_generators {
                let order = subgroup_order(&w, roots)?;
                if order != p.k_weyl_order {
                    return Err(Error::InternalInconsistency(format!(
                        "reflections generate {order} elements but |W(K)| = {}",
                        p.k_weyl_order
                    )));
                }
            }
            let fp = computed_fixed_points(p, &w)?;
            r.h_order = Some(fp.h);
            r.fp_components = Some(fp.components);
            r.fp_dim = Some(fp.fp_dim);
            r.fixed_set_connected = Some(fp.components == 1);
            r.formal = Some(fp.fp_dim == dim);
            r.formal_license = license::FIXED_POINT_COUNT.into();
        }
        None => match p.kind {
            PairKind::Regular => {
                let wg = p.g.weyl_order()?;
                let components = components_from(wg, p.k_weyl_order)?;
                r.h_order = Some(wg);
                r.fp_components = Some(components);
                r.fp_dim = Some(components);
                r.fixed_set_connected = Some(components == 1);
                r.formal = Some(components == dim);
                r.formal_license = license::EQUAL_RANK_FORMULA.into();
            }
            PairKind::Fold { .. } | PairKind::Diagonal { .. } | PairKind::CentralTorus => {
                r.formal = Some(true);
                r.formal_license = license::THEOREM_BACKED.into();
            }
            _ => r.formal_license = license::UNDETERMINED.into(),
        },
    }
    check_invariants(&r)?;
    Ok(r)
}

fn analyze_product(p: &PairData, config: &AnalysisConfig) -> Result<FormalityReport> {
    let blocks: Vec<FormalityReport> = p.blocks.iter().map(|b| analyze(b, config)).collect::<Result<_>>()?;
    let dim = blocks
        .iter()
        .try_fold(1u64, |acc, b| acc.checked_mul(b.dim_quotient))
        .ok_or(Error::Overflow("dim H*(G/K)"))?;
    let samelson = blocks.iter().fold(DegreeMultiset::empty(), |acc, b| acc.union(&b.samelson_degrees));
    let mut r = skeleton(p, dim, samelson);
    r.ncz = ncz_by_dimension(dim, p.rank_g(), p.rank_k())?;

    let product = |f: fn(&FormalityReport) -> Option<u64>| -> Option<u64> {
        blocks.iter().try_fold(1u64, |acc, b| acc.checked_mul(f(b)?))
    };
    r.fp_dim = product(|b| b.fp_dim);
    r.fp_components = product(|b| b.fp_components);
    r.h_order = product(|b| b.h_order);
    r.fixed_set_connected = r.fp_components.map(|c| c == 1);
    r.formal = if blocks.iter().any(|b| b.formal == Some(false)) {
        Some(false)
    } else if blocks.iter().all(|b| b.formal == Some(true)) {
        Some(true)
    } else {
        None
    };
    r.formal_license = license::CONJUNCTION.into();
    r.warnings = blocks.iter().flat_map(|b| b.warnings.iter().map(move |w| format!("[{}] {w}", b.k))).collect();
    r.blocks = blocks;
    check_invariants(&r)?;
    Ok(r)
}

/// Localization bound, formality as equality, and agreement of the two
/// ncz characterizations.
fn check_invariants(r: &FormalityReport) -> Result<()> {
    let Some(fp) = r.fp_dim else { return Ok(()) };
    if fp > r.dim_quotient {
        return Err(Error::InternalInconsistency(format!(
            "fixed-point dimension {fp} exceeds dim H*(G/K) = {}",
            r.dim_quotient
        )));
    }
    if r.formal != Some(fp == r.dim_quotient) {
        return Err(Error::InternalInconsistency("formal verdict disagrees with the dimension comparison".into()));
    }
    if let Some(connected) = r.fixed_set_connected {
        let by_fixed_points = fp == r.dim_quotient && connected;
        if by_fixed_points != r.ncz {
            return Err(Error::InternalInconsistency(format!(
                "ncz by dimension identity is {} but formal and connected is {by_fixed_points}",
                r.ncz
            )));
        }
    }
    Ok(())
}
