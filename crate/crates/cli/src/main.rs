use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use isoform_core::catalog::{self, CatalogRow};
use isoform_core::formality::license;
use isoform_core::{AnalysisConfig, FormalityReport, PairSpecDocument, DEFAULT_CAP};

#[derive(Parser)]
#[command(name = "isoform", version, about = "Equivariant formality of isotropy actions, decided exactly")]
struct Cli {
    /// Largest Weyl group to enumerate.
    #[arg(long, global = true, env = "ISOFORM_CAP", default_value_t = DEFAULT_CAP)]
    cap: u64,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one pair-spec document (`-` reads stdin).
    Analyze {
        input: PathBuf,
        /// Exit with status 2 unless the action is equivariantly formal.
        #[arg(long)]
        expect_formal: bool,
    },
    /// Run the built-in catalog of classical pairs.
    Catalog {
        /// Exit nonzero if any expectation or invariant fails.
        #[arg(long)]
        check: bool,
        /// Only rows of this construction: fold, circle, regular, product.
        #[arg(long)]
        filter: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = AnalysisConfig { cap: cli.cap };
    let result = match &cli.command {
        Command::Analyze { input, expect_formal } => cmd_analyze(input, *expect_formal, cli.json, &config),
        Command::Catalog { check, filter } => cmd_catalog(*check, filter.as_deref(), cli.json, &config),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn cmd_analyze(input: &PathBuf, expect_formal: bool, json: bool, config: &AnalysisConfig) -> Result<ExitCode> {
    let text = read_input(input)?;
    let doc = PairSpecDocument::from_json(&text).with_context(|| format!("parsing {}", input.display()))?;
    let report = catalog::analyze_document(&doc, config)?;
    if json {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        print!("{}", text_report(&report));
    }
    if expect_formal && report.formal != Some(true) {
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn or_dash<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

fn text_report(r: &FormalityReport) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    if let Some(label) = &r.label {
        line(format!("pair: {label}"));
    }
    line(format!("construction: {}", r.construction));
    line(format!("G = {}, K = {} (ranks {} and {})", r.g, r.k, r.rank_g, r.rank_k));
    line(format!("degrees: G {}, K {}, Samelson {}", r.g_degrees, r.k_degrees, r.samelson_degrees));
    line(format!("|W(G)| = {}, |W(K)| = {}, |H| = {}", or_dash(r.weyl_order_g), r.weyl_order_k, or_dash(r.h_order)));
    for p in &r.provenance {
        line(format!("  {p}"));
    }
    for b in &r.blocks {
        line(format!(
            "  block {} in {}: dim {}, fp {}, formal {}",
            b.k,
            b.g,
            b.dim_quotient,
            or_dash(b.fp_dim),
            b.formal.map_or("undetermined", |f| if f { "yes" } else { "no" })
        ));
    }
    let image = r.dim_image_weil.map_or(String::new(), |i| format!(" (Weil image {i} x 2^{})", r.samelson_degrees.len()));
    line(format!("[{}] dim H*(G/K) = {}{image}", r.cartan_pair_license, r.dim_quotient));
    if let (Some(fp), Some(c)) = (r.fp_dim, r.fp_components) {
        let conn = if c == 1 { "connected" } else { "disconnected" };
        line(format!("[{}] fixed set: dim {fp}, {c} component(s), {conn}", r.formal_license));
    }
    for w in &r.warnings {
        line(format!("warning: {w}"));
    }
    let ncz_rhs = format!("2^{} vs {} * 2^{}", r.rank_g, r.dim_quotient, r.rank_k);
    line(format!("[{}] non-cohomologous to zero: {} ({ncz_rhs})", r.cartan_pair_license, yes_no(r.ncz)));
    let verdict = match (r.formal, r.fp_dim) {
        (Some(f), Some(fp)) => {
            let rel = if f { "=" } else { "≠" };
            format!("{} ({} {rel} {fp})", yes_no(f), r.dim_quotient)
        }
        (Some(f), None) => format!("{} (fixed-point side unverified)", yes_no(f)),
        (None, _) => "UNDETERMINED (fixed-point side not enumerated)".to_string(),
    };
    let tag = if r.formal_license.is_empty() { license::UNDETERMINED } else { r.formal_license.as_str() };
    line(format!("[{tag}] equivariantly formal: {verdict}"));
    out
}

fn cmd_catalog(check: bool, filter: Option<&str>, json: bool, config: &AnalysisConfig) -> Result<ExitCode> {
    if let Some(k) = filter {
        anyhow::ensure!(
            ["fold", "circle", "regular", "product"].contains(&k),
            "unknown construction {k:?}; expected fold, circle, regular or product"
        );
    }
    let rows = catalog::run(&catalog::filtered(filter), config);
    if json {
        let reports: Vec<&FormalityReport> = rows.iter().filter_map(|r| r.report.as_ref().ok()).collect();
        println!("{}", serde_json::to_string(&reports)?);
        for row in rows.iter().filter(|r| r.report.is_err()) {
            eprintln!("{}: {}", row.label, row.report.as_ref().err().map_or("", String::as_str));
        }
    } else {
        print!("{}", table(&rows));
    }
    let failed = rows.iter().filter(|r| !r.passed()).count();
    if check && failed > 0 {
        eprintln!("{failed} of {} catalog rows failed", rows.len());
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn table(rows: &[CatalogRow]) -> String {
    let header = ["pair", "kind", "G", "K", "dim", "fp", "comp", "formal", "ncz", "status"];
    let mut cells: Vec<Vec<String>> = vec![header.iter().map(ToString::to_string).collect()];
    for row in rows {
        let mut c = vec![row.label.clone(), row.construction.to_string()];
        match &row.report {
            Ok(r) => c.extend([
                r.g.clone(),
                r.k.clone(),
                r.dim_quotient.to_string(),
                or_dash(r.fp_dim),
                or_dash(r.fp_components),
                r.formal.map_or("?", |f| if f { "yes" } else { "no" }).to_string(),
                (if r.ncz { "yes" } else { "no" }).to_string(),
            ]),
            Err(_) => c.extend(std::iter::repeat("-".to_string()).take(7)),
        }
        c.push(if row.passed() {
            "ok".to_string()
        } else if let Err(e) = &row.report {
            format!("ERROR {e}")
        } else {
            format!("FAIL {}", row.failures.join("; "))
        });
        cells.push(c);
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in &cells {
        let parts: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    }
    out
}
