//! Exact decision procedures for equivariant formality of isotropy actions
//! and for non-cohomologous-to-zero subgroups of compact Lie groups.
//!
//! A pair `(G, K)` is described by a [`PairSpec`], resolved into
//! [`PairData`] (the Cartan subalgebra `t_K` inside `t_G` plus the degree
//! data of `K`), and judged by [`analyze`].

pub mod catalog;
pub mod cohomology;
pub mod document;
mod error;
pub mod formality;
pub mod linalg;
pub mod pairs;
pub mod rootsystem;
pub mod weyl;

pub use cohomology::{
    dim_cohomology_group, dim_cohomology_quotient, dim_image_weil, equal_rank_transfer, samelson_degrees,
    DegreeMultiset, TransferReport,
};
pub use document::PairSpecDocument;
pub use error::{Error, Result};
pub use formality::{analyze, fixed_point_components, fixed_point_dim, AnalysisConfig, FormalityReport};
pub use linalg::{parse_rational, QMatrix, Rational, Subspace};
pub use pairs::{resolve, PairData, PairKind, PairSpec};
pub use rootsystem::{build_root_system, CompactAlgebra, Family, RootSystem, SimpleType};
pub use weyl::{enumerate_weyl, product_weyl, restriction_set, subgroup_order, RestrictionSet, WeylGroup, DEFAULT_CAP};
