//! JSON pair-spec documents.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Rational};
use crate::pairs::{CircleSpec, FoldSpec, PairSpec, ProductBlock, ProductSpec, RegularSpec};
use crate::rootsystem::{CompactAlgebra, SimpleType};

/// A group given either as `"T1xA2"` or as `{"center_dim": 1, "factors": ["A2"]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDoc {
    Name(String),
    Algebra(CompactAlgebra),
}

impl GroupDoc {
    pub fn resolve(&self) -> Result<CompactAlgebra> {
        match self {
            GroupDoc::Name(s) => s.parse(),
            GroupDoc::Algebra(a) => Ok(a.clone()),
        }
    }
}

/// An integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalDoc {
    Int(i64),
    Text(String),
}

impl RationalDoc {
    pub fn value(&self) -> Result<Rational> {
        match self {
            RationalDoc::Int(i) => Ok(Rational::from_integer((*i).into())),
            RationalDoc::Text(s) => parse_rational(s),
        }
    }
}

impl From<&Rational> for RationalDoc {
    fn from(q: &Rational) -> Self {
        if q.is_integer() {
            if let Ok(i) = i64::try_from(q.to_integer()) {
                return RationalDoc::Int(i);
            }
        }
        RationalDoc::Text(format_rational(q))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coordinates {
    #[default]
    SimpleRoot,
    /// `n+1` coordinates per type-A factor, summing to zero.
    TraceZero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDoc {
    pub factor: SimpleType,
    #[serde(default = "one")]
    pub copies: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub return_automorphism: Option<Vec<usize>>,
}

fn one() -> usize {
    1
}

/// Accepts and discards the `"construction"` key when a variant body is
/// read on its own; never serialized.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tag;

impl<'de> Deserialize<'de> for Tag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d).map(|_| Tag)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoldDoc {
    #[serde(default, rename = "construction", skip_serializing)]
    pub tag: Tag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(rename = "type")]
    pub g_type: SimpleType,
    pub automorphism: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleDoc {
    #[serde(default, rename = "construction", skip_serializing)]
    pub tag: Tag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub group: GroupDoc,
    pub direction: Vec<RationalDoc>,
    #[serde(default)]
    pub coordinates: Coordinates,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegularDoc {
    #[serde(default, rename = "construction", skip_serializing)]
    pub tag: Tag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub group: GroupDoc,
    #[serde(default)]
    pub roots: Vec<Vec<i64>>,
    #[serde(default)]
    pub extra_center: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDoc {
    #[serde(default, rename = "construction", skip_serializing)]
    pub tag: Tag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default)]
    pub center_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_fixed_dim: Option<usize>,
    pub blocks: Vec<BlockDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "snake_case")]
pub enum PairSpecDocument {
    Fold(FoldDoc),
    Circle(CircleDoc),
    Regular(RegularDoc),
    Product(ProductDoc),
}

fn positioned<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
}

impl PairSpecDocument {
    /// Parses a document; syntax and schema errors carry line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = positioned(text)?;
        let tag = value.get("construction").ok_or_else(|| {
            Error::InvalidSpec("missing field `construction` at line 1 column 1".into())
        })?;
        // Re-reading the text, not the value, keeps positions in schema errors.
        match tag.as_str() {
            Some("fold") => positioned(text).map(PairSpecDocument::Fold),
            Some("circle") => positioned(text).map(PairSpecDocument::Circle),
            Some("regular") => positioned(text).map(PairSpecDocument::Regular),
            Some("product") => positioned(text).map(PairSpecDocument::Product),
            _ => Err(Error::InvalidSpec(format!(
                "unknown construction {tag}, expected one of `fold`, `circle`, `regular`, `product`"
            ))),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            PairSpecDocument::Fold(d) => d.label.as_deref(),
            PairSpecDocument::Circle(d) => d.label.as_deref(),
            PairSpecDocument::Regular(d) => d.label.as_deref(),
            PairSpecDocument::Product(d) => d.label.as_deref(),
        }
    }

    pub fn construction(&self) -> &'static str {
        match self {
            PairSpecDocument::Fold(_) => "fold",
            PairSpecDocument::Circle(_) => "circle",
            PairSpecDocument::Regular(_) => "regular",
            PairSpecDocument::Product(_) => "product",
        }
    }

    pub fn to_spec(&self) -> Result<PairSpec> {
        Ok(match self {
            PairSpecDocument::Fold(d) => PairSpec::Fold(FoldSpec { g_type: d.g_type, automorphism: d.automorphism.clone() }),
            PairSpecDocument::Circle(d) => {
                let g = d.group.resolve()?;
                let values: Vec<Rational> = d.direction.iter().map(RationalDoc::value).collect::<Result<_>>()?;
                PairSpec::Circle(match d.coordinates {
                    Coordinates::SimpleRoot => CircleSpec { g, direction: values },
                    Coordinates::TraceZero => CircleSpec::from_trace_zero(g, &values)?,
                })
            }
            PairSpecDocument::Regular(d) => PairSpec::Regular(RegularSpec {
                g: d.group.resolve()?,
                sub_roots: d.roots.clone(),
                extra_center: d.extra_center,
            }),
            PairSpecDocument::Product(d) => PairSpec::Product(ProductSpec {
                center_dim: d.center_dim,
                center_fixed_dim: d.center_fixed_dim,
                blocks: d
                    .blocks
                    .iter()
                    .map(|b| ProductBlock {
                        factor: b.factor,
                        copies: b.copies,
                        return_automorphism: b.return_automorphism.clone(),
                    })
                    .collect(),
            }),
        })
    }
}

impl fmt::Display for PairSpecDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}
