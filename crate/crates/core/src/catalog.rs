//! Built-in catalog of classical pairs with their expected verdicts.

use rayon::prelude::*;
use serde_json::json;

use crate::document::PairSpecDocument;
use crate::error::Result;
use crate::formality::{analyze, AnalysisConfig, FormalityReport};
use crate::pairs::resolve;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub dim_quotient: u64,
    pub formal: bool,
    pub ncz: bool,
    pub fp_components: u64,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: String,
    pub document: PairSpecDocument,
    pub expect: Expectation,
}

#[derive(Clone, Debug)]
pub struct CatalogRow {
    pub label: String,
    pub construction: &'static str,
    pub report: std::result::Result<FormalityReport, String>,
    /// Expectations or invariants that did not hold.
    pub failures: Vec<String>,
}

impl CatalogRow {
    pub fn passed(&self) -> bool {
        self.report.is_ok() && self.failures.is_empty()
    }
}

fn entry(label: &str, doc: serde_json::Value, dim: u64, formal: bool, ncz: bool, comps: u64) -> CatalogEntry {
    let mut doc = doc;
    doc["label"] = json!(label);
    CatalogEntry {
        label: label.to_string(),
        document: serde_json::from_value(doc).expect("catalog documents are well formed"),
        expect: Expectation { dim_quotient: dim, formal, ncz, fp_components: comps },
    }
}

fn flip(n: usize) -> Vec<usize> {
    (1..=n).rev().collect()
}

fn leaf_swap(n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=n).collect();
    p.swap(n - 2, n - 1);
    p
}

pub const TRIALITY: [usize; 4] = [3, 2, 4, 1];
pub const E6_FLIP: [usize; 6] = [6, 2, 5, 4, 3, 1];

pub fn entries() -> Vec<CatalogEntry> {
    let mut v = Vec::new();
    let fold = |t: String, perm: Vec<usize>| json!({"construction": "fold", "type": t, "automorphism": perm});

    // A_n flip: K has rank ceil(n/2), so dim = 2^(n - ceil(n/2)).
    for n in 2..=7usize {
        let dim = 1 << (n - n.div_ceil(2));
        v.push(entry(&format!("A{n} flip"), fold(format!("A{n}"), flip(n)), dim, true, true, 1));
    }
    for n in 3..=7usize {
        v.push(entry(&format!("D{n} leaf swap"), fold(format!("D{n}"), leaf_swap(n)), 2, true, true, 1));
    }
    v.push(entry("D4 triality", fold("D4".into(), TRIALITY.to_vec()), 4, true, true, 1));
    v.push(entry("E6 flip", fold("E6".into(), E6_FLIP.to_vec()), 4, true, true, 1));
    v.push(entry("A2 identity", fold("A2".into(), vec![1, 2]), 1, true, true, 1));

    let regular = |g: &str, roots: Vec<Vec<i64>>, extra: usize| {
        json!({"construction": "regular", "group": g, "roots": roots, "extra_center": extra})
    };
    v.push(entry("A2 max torus", regular("A2", vec![], 2), 6, true, false, 6));
    v.push(entry("G2 long A2", regular("G2", vec![vec![0, 1], vec![3, 1]], 0), 2, true, false, 2));
    v.push(entry("A3 T1xA2", regular("A3", vec![vec![1, 0, 0], vec![0, 1, 0]], 1), 4, true, false, 4));
    v.push(entry("A3 T1xA1xA1", regular("A3", vec![vec![1, 0, 0], vec![0, 0, 1]], 1), 6, true, false, 6));
    v.push(entry("B2 long A1xA1", regular("B2", vec![vec![1, 0], vec![1, 2]], 0), 2, true, false, 2));
    v.push(entry("B3 long D3", regular("B3", vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 1, 2]], 0), 2, true, false, 2));
    v.push(entry("C2 max torus", regular("C2", vec![], 2), 8, true, false, 8));

    let circle = |g: serde_json::Value, dir: Vec<i64>, coords: &str| {
        json!({"construction": "circle", "group": g, "direction": dir, "coordinates": coords})
    };
    v.push(entry("A2 circle (1,2,-3)", circle(json!("A2"), vec![1, 2, -3], "trace_zero"), 4, false, false, 1));
    v.push(entry("A2 circle (1,-1,0)", circle(json!("A2"), vec![1, -1, 0], "trace_zero"), 4, true, false, 2));
    v.push(entry("A2 circle (1,0,-1)", circle(json!("A2"), vec![1, 0, -1], "trace_zero"), 4, true, false, 2));
    v.push(entry("A1 max torus circle", circle(json!("A1"), vec![1, -1], "trace_zero"), 2, true, false, 2));
    v.push(entry("central circle", circle(json!("T1"), vec![1], "simple_root"), 1, true, true, 1));
    v.push(entry("T1xA1 mixed circle", circle(json!("T1xA1"), vec![1, 1], "simple_root"), 2, true, true, 1));
    v.push(entry("G2 short root circle", circle(json!("G2"), vec![1, 0], "simple_root"), 4, true, false, 2));

    let product = |center: usize, blocks: serde_json::Value| json!({"construction": "product", "center_dim": center, "blocks": blocks});
    v.push(entry("diagonal A1^2", product(0, json!([{"factor": "A1", "copies": 2}])), 2, true, true, 1));
    v.push(entry(
        "diagonal G2 in D4^2",
        product(0, json!([{"factor": "D4", "copies": 2, "return_automorphism": TRIALITY}])),
        64,
        true,
        true,
        1,
    ));
    v.push(entry(
        "A2 flip as product",
        product(0, json!([{"factor": "A2", "copies": 1, "return_automorphism": [2, 1]}])),
        2,
        true,
        true,
        1,
    ));
    v.push(entry("diagonal A1^3", product(0, json!([{"factor": "A1", "copies": 3}])), 4, true, true, 1));
    v.push(entry(
        "T1 x diagonal A1^2 x D4 triality",
        product(1, json!([{"factor": "A1", "copies": 2}, {"factor": "D4", "copies": 1, "return_automorphism": TRIALITY}])),
        8,
        true,
        true,
        1,
    ));
    v
}

/// Entries whose document construction is `kind`, or all of them.
pub fn filtered(kind: Option<&str>) -> Vec<CatalogEntry> {
    entries().into_iter().filter(|e| kind.map_or(true, |k| e.document.construction() == k)).collect()
}

pub fn analyze_document(doc: &PairSpecDocument, config: &AnalysisConfig) -> Result<FormalityReport> {
    let pair = resolve(&doc.to_spec()?)?;
    let mut report = analyze(&pair, config)?;
    report.label = doc.label().map(str::to_string);
    Ok(report)
}

/// Invariants every report must satisfy, independent of expectations.
pub fn invariant_failures(r: &FormalityReport) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(fp) = r.fp_dim {
        if fp > r.dim_quotient {
            out.push(format!("localization bound: fp_dim {fp} > dim {}", r.dim_quotient));
        }
    }
    let ncz_identity = (r.dim_quotient as u128) << r.rank_k == 1u128 << r.rank_g;
    if ncz_identity != r.ncz {
        out.push("ncz disagrees with the dimension identity".into());
    }
    if let (Some(formal), Some(connected)) = (r.formal, r.fixed_set_connected) {
        if (formal && connected) != r.ncz {
            out.push("ncz disagrees with formal and connected".into());
        }
    }
    match r.construction.as_str() {
        "fold" | "diagonal" => {
            if r.formal != Some(true) || !r.ncz || r.fp_components.is_some_and(|c| c != 1) {
                out.push("automorphism pair is not formal, ncz and connected".into());
            }
        }
        "regular" => {
            if r.formal != Some(true) || r.fp_components != Some(r.dim_quotient) {
                out.push("equal-rank pair is not formal with |W(G)|/|W(K)| components".into());
            }
            if let Some(wg) = r.weyl_order_g {
                if wg != r.dim_quotient * r.weyl_order_k {
                    out.push("equal-rank dim differs from |W(G)|/|W(K)|".into());
                }
            }
        }
        _ => {}
    }
    for b in &r.blocks {
        out.extend(invariant_failures(b).into_iter().map(|f| format!("[{}] {f}", b.k)));
    }
    out
}

fn run_entry(e: &CatalogEntry, config: &AnalysisConfig) -> CatalogRow {
    let construction = e.document.construction();
    match analyze_document(&e.document, config) {
        Ok(r) => {
            let mut failures = invariant_failures(&r);
            let x = &e.expect;
            if r.dim_quotient != x.dim_quotient {
                failures.push(format!("dim {} != expected {}", r.dim_quotient, x.dim_quotient));
            }
            if r.ncz != x.ncz {
                failures.push(format!("ncz {} != expected {}", r.ncz, x.ncz));
            }
            match r.formal {
                Some(f) if f != x.formal => failures.push(format!("formal {f} != expected {}", x.formal)),
                _ => {}
            }
            match r.fp_components {
                Some(c) if c != x.fp_components => {
                    failures.push(format!("components {c} != expected {}", x.fp_components))
                }
                _ => {}
            }
            CatalogRow { label: e.label.clone(), construction, report: Ok(r), failures }
        }
        Err(err) => CatalogRow { label: e.label.clone(), construction, report: Err(err.to_string()), failures: Vec::new() },
    }
}

/// Analyzes entries concurrently; rows come back in catalog order.
pub fn run(entries: &[CatalogEntry], config: &AnalysisConfig) -> Vec<CatalogRow> {
    entries.par_iter().map(|e| run_entry(e, config)).collect()
}
