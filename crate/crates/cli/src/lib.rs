//! Command implementations for the `cubenet` binary. Each command renders
//! its whole output to a string first, so a run either writes a complete
//! artifact or nothing.

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use cubenet::access::{self, StartPolicy};
use cubenet::iso::{self, CubeBase};
use cubenet::perc::{self, PercolationEstimate};
use cubenet::product::{Family, GraphSpec};
use cubenet::reliability;
use cubenet::uor::{self, TableRow, Verdict};

/// Environment variable giving the default worker count.
pub const WORKERS_ENV: &str = "CUBENET_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "cubenet", version, about = "Connectivity of random subgraphs of product graphs")]
pub struct Cli {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, env = WORKERS_ENV)]
    pub workers: Option<usize>,

    /// Write the output here instead of stdout.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Edge-isoperimetric profile of Q^n or 3Q^n.
    Iso(IsoArgs),
    /// Monte Carlo edge percolation.
    Perc(PercArgs),
    /// Exact all-terminal reliability polynomial.
    Rel(RelArgs),
    /// Search for a uniformly optimally reliable graph.
    Uor(UorArgs),
    /// Optimal reliability rows for every edge count.
    UorTable(UorTableArgs),
    /// Random-walk accessibility profile.
    Access(AccessArgs),
}

#[derive(Args, Debug)]
pub struct IsoArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=3))]
    pub base: u32,
    #[arg(long)]
    pub n: u32,
    /// Add an exhaustive-search column.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PercFamily {
    Q,
    Q3,
    P3,
    /// Uniform random graphs with the vertex and edge counts of `Q^n`.
    Gnm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PercStat {
    Conn,
    Noiso,
    Middle,
    Gap,
    Isolated,
    /// Factorial moments E_1..E_4 of the isolated-vertex count.
    Moments,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct PercArgs {
    #[arg(long, value_enum)]
    pub family: PercFamily,
    #[arg(long)]
    pub n: u32,
    #[arg(long, conflicts_with = "sweep", required_unless_present = "sweep")]
    pub p: Option<f64>,
    /// Inclusive range `start:end:step`.
    #[arg(long)]
    pub sweep: Option<String>,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "conn")]
    pub stat: PercStat,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct RelArgs {
    /// `file:<path>`, `q:<n>`, `k:<n>`, `c:<n>`, `path:<n>`, `star:<n>`, ...
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub p: Option<f64>,
    /// Emit JSON (the default).
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    /// Emit `k,s_k` rows instead of JSON.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Args, Debug)]
pub struct UorArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// Directory to receive one graph file per isomorphism class.
    #[arg(long)]
    pub emit_classes: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct UorTableArgs {
    #[arg(long)]
    pub n: usize,
    /// Largest edge count to include; defaults to the complete graph.
    #[arg(long)]
    pub max_m: Option<usize>,
}

#[derive(Args, Debug)]
pub struct AccessArgs {
    /// Graph to walk on; repeat to compare several.
    #[arg(long, required = true)]
    pub graph: Vec<String>,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    /// Start every walk at this vertex.
    #[arg(long, conflicts_with = "weighted")]
    pub start: Option<usize>,
    /// Draw the start with probability proportional to degree.
    #[arg(long)]
    pub weighted: bool,
}

/// Rendered output: the artifact plus diagnostics meant for stderr.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    pub notes: Vec<String>,
}

/// Runs a parsed command on a pool with the requested number of workers.
pub fn run(cli: &Cli) -> Result<Output> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(k) = cli.workers {
        if k == 0 {
            bail!("--workers must be at least 1");
        }
        pool = pool.num_threads(k);
    }
    let pool = pool.build().context("building the worker pool")?;
    pool.install(|| match &cli.command {
        Command::Iso(a) => run_iso(a),
        Command::Perc(a) => run_perc(a),
        Command::Rel(a) => run_rel(a),
        Command::Uor(a) => run_uor(a),
        Command::UorTable(a) => run_uor_table(a),
        Command::Access(a) => run_access(a),
    })
}

fn body(body: String) -> Output {
    Output {
        body,
        notes: Vec::new(),
    }
}

fn run_iso(a: &IsoArgs) -> Result<Output> {
    let base = CubeBase::from_radix(a.base)?;
    let profile = iso::iso_profile(base, a.n)?;
    let graph = a
        .oracle
        .then(|| {
            let family = if a.base == 2 { Family::Q } else { Family::Q3 };
            family.spec(a.n).map(|s| s.build())
        })
        .transpose()?;
    let mut out = String::from(if a.oracle {
        "m,e_max,b_min,oracle_e_max\n"
    } else {
        "m,e_max,b_min\n"
    });
    for e in &profile.entries {
        write!(out, "{},{},{}", e.m, e.max_edges, e.min_boundary)?;
        if let Some(g) = &graph {
            write!(out, ",{}", iso::oracle_max_induced_edges(g, e.m as usize)?)?;
        }
        out.push('\n');
    }
    Ok(body(out))
}

/// Parses `start:end:step` into the listed points, end included.
pub fn parse_sweep(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<f64> = s
        .split(':')
        .map(|x| x.trim().parse::<f64>().with_context(|| format!("bad number {x:?} in sweep")))
        .collect::<Result<_>>()?;
    let [start, end, step] = parts[..] else {
        bail!("sweep must be start:end:step, got {s:?}");
    };
    // negated so that NaN bounds are rejected too
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(step > 0.0) || !(end >= start) {
        bail!("sweep {s:?} needs end >= start and a positive step");
    }
    let count = ((end - start) / step + 1e-9).floor() as usize + 1;
    // rounding keeps 0.1-style steps free of binary noise
    Ok((0..count)
        .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

fn perc_rows(a: &PercArgs, p: f64) -> Result<Vec<PercolationEstimate>> {
    let family = match a.family {
        PercFamily::Q => Family::Q,
        PercFamily::Q3 => Family::Q3,
        PercFamily::P3 => Family::P3,
        PercFamily::Gnm => {
            if a.stat != PercStat::Conn {
                bail!("the gnm family supports only --stat conn");
            }
            return Ok(vec![perc::compare_qn_vs_gnm(a.n, p, a.trials, a.seed, false)?.random]);
        }
    };
    let g = family.spec(a.n)?.build();
    Ok(match a.stat {
        PercStat::Conn => vec![perc::estimate_connectivity(&g, p, a.trials, a.seed)?],
        PercStat::Noiso => vec![perc::estimate_no_isolated(&g, p, a.trials, a.seed)?],
        PercStat::Middle => vec![perc::middle_component_probability(&g, p, a.trials, a.seed)?],
        PercStat::Gap => vec![perc::summary(&g, p, a.trials, a.seed)?.gap],
        PercStat::Isolated => vec![perc::estimate_isolated_count(&g, p, a.trials, a.seed)?],
        PercStat::Moments => perc::empirical_factorial_moments(&g, p, a.trials, 4, a.seed)?
            .into_iter()
            .skip(1)
            .collect(),
    })
}

fn family_tag(f: PercFamily) -> &'static str {
    match f {
        PercFamily::Q => "q",
        PercFamily::Q3 => "q3",
        PercFamily::P3 => "p3",
        PercFamily::Gnm => "gnm",
    }
}

fn run_perc(a: &PercArgs) -> Result<Output> {
    let points = match (&a.sweep, a.p) {
        (Some(s), _) => parse_sweep(s)?,
        (None, Some(p)) => vec![p],
        (None, None) => bail!("one of --p or --sweep is required"),
    };
    let tag = family_tag(a.family);
    let mut rows = Vec::new();
    for p in points {
        rows.extend(perc_rows(a, p)?);
    }
    let out = match a.format {
        Format::Csv => {
            let mut out = String::from("family,n,p,stat,estimate,stderr,trials,seed\n");
            for r in &rows {
                writeln!(
                    out,
                    "{tag},{},{},{},{},{},{},{}",
                    a.n,
                    r.p,
                    r.statistic.name(),
                    r.estimate,
                    r.stderr,
                    r.trials,
                    r.seed
                )?;
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "family": tag, "n": a.n, "p": r.p, "stat": r.statistic.name(),
                        "estimate": r.estimate, "stderr": r.stderr,
                        "trials": r.trials, "seed": r.seed,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&rows)? + "\n"
        }
    };
    Ok(body(out))
}

/// Exact integers up to 2^53 as JSON numbers, larger ones as strings.
fn json_count(x: &cubenet::reliability::ReliabilityCoefficients, k: usize) -> Value {
    let s = &x.s[k];
    if s.bits() <= 53 {
        json!(s.to_u64_digits().first().copied().unwrap_or(0))
    } else {
        json!(s.to_string())
    }
}

fn run_rel(a: &RelArgs) -> Result<Output> {
    let spec: GraphSpec = a.graph.parse()?;
    let g = spec.build()?;
    let coeffs = reliability::reliability_coefficients(&g)?;
    let report = reliability::cross_check_report(&g, &coeffs);
    let value = a
        .p
        .map(|p| {
            if (0.0..=1.0).contains(&p) {
                Ok(coeffs.evaluate(p))
            } else {
                Err(anyhow::anyhow!("p must lie in [0, 1], got {p}"))
            }
        })
        .transpose()?;
    let mut notes = Vec::new();
    for c in report.checks.iter().filter(|c| !c.passed) {
        notes.push(format!(
            "cross-check {} failed: expected {}, got {}",
            c.name, c.expected, c.actual
        ));
    }
    if a.csv {
        let mut out = String::from("k,s_k\n");
        for (k, s) in coeffs.s.iter().enumerate() {
            writeln!(out, "{k},{s}")?;
        }
        return Ok(Output { body: out, notes });
    }
    let mut checks = Map::new();
    for c in &report.checks {
        checks.insert(
            c.name.to_string(),
            json!({"expected": c.expected, "actual": c.actual, "passed": c.passed}),
        );
    }
    let mut doc = Map::new();
    doc.insert("graph".into(), json!(spec.to_string()));
    doc.insert("n".into(), json!(coeffs.n));
    doc.insert("m".into(), json!(coeffs.m));
    doc.insert(
        "s".into(),
        Value::Array((0..=coeffs.m).map(|k| json_count(&coeffs, k)).collect()),
    );
    doc.insert("checks".into(), Value::Object(checks));
    if let (Some(p), Some(v)) = (a.p, value) {
        doc.insert("p".into(), json!(p));
        doc.insert("reliability".into(), json!(v));
    }
    Ok(Output {
        body: serde_json::to_string_pretty(&Value::Object(doc))? + "\n",
        notes,
    })
}

fn row_text<T: ToString>(row: &[T]) -> String {
    row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn run_uor(a: &UorArgs) -> Result<Output> {
    let report = uor::find_uor(a.n, a.m)?;
    let class_json = |i: usize| {
        let c = &report.classes[i];
        json!({
            "class": i,
            "edges": c.graph.edges(),
            "row": row_text(&c.coefficients.table_row()),
            "spanning_trees": c.coefficients.s[a.n - 1].to_string(),
        })
    };
    let verdict = match &report.verdict {
        Verdict::Uor {
            representative,
            equivalent,
        } => json!({
            "uor": true,
            "representative": class_json(*representative),
            "equivalent": equivalent,
        }),
        Verdict::NoUor {
            witness,
            crossings,
            envelope,
        } => json!({
            "uor": false,
            "witness": [class_json(witness.0), class_json(witness.1)],
            "crossings": crossings,
            "envelope": envelope,
        }),
    };
    let doc = json!({
        "n": a.n,
        "m": a.m,
        "classes": report.classes.len(),
        "verdict": verdict,
        "corollary_violations": report.corollary_violations(),
    });
    let mut notes = Vec::new();
    if let Some(dir) = &a.emit_classes {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (i, c) in report.classes.iter().enumerate() {
            let path = dir.join(format!("n{}_m{}_class{:04}.txt", a.n, a.m, i));
            std::fs::write(&path, c.graph.to_text())
                .with_context(|| format!("writing {}", path.display()))?;
        }
        notes.push(format!("wrote {} class files to {}", report.classes.len(), dir.display()));
    }
    Ok(Output {
        body: serde_json::to_string_pretty(&doc)? + "\n",
        notes,
    })
}

pub fn table_for(a: &UorTableArgs) -> Result<Vec<TableRow>> {
    let complete = a.n * a.n.saturating_sub(1) / 2;
    Ok(uor::uor_table(a.n, a.max_m.unwrap_or(complete))?)
}

pub fn render_table(rows: &[TableRow]) -> String {
    let mut out = String::from("m,variant,coefficients\n");
    for r in rows {
        let variant = r.variant.map(String::from).unwrap_or_default();
        out.push_str(&format!("{},{variant},{}\n", r.m, row_text(&r.coefficients)));
    }
    out
}

fn run_uor_table(a: &UorTableArgs) -> Result<Output> {
    let rows = table_for(a)?;
    let mut notes = Vec::new();
    match uor::compare_with_published(a.n, &rows) {
        None => notes.push(format!("no published table for n={}", a.n)),
        Some(diffs) if diffs.is_empty() => notes.push("all rows match the published table".into()),
        Some(diffs) => {
            for d in diffs {
                let variant = d.variant.map(String::from).unwrap_or_default();
                let place = d.k.map_or("whole row".to_string(), |k| format!("s_{k}"));
                notes.push(format!(
                    "differs from published: m={}{variant} {place}: computed {}, published {}",
                    d.m,
                    d.computed.as_deref().unwrap_or("none"),
                    d.published.as_deref().unwrap_or("none"),
                ));
            }
        }
    }
    Ok(Output {
        body: render_table(&rows),
        notes,
    })
}

fn run_access(a: &AccessArgs) -> Result<Output> {
    let policy = match (a.start, a.weighted) {
        (Some(v), _) => StartPolicy::Fixed(v),
        (None, true) => StartPolicy::DegreeWeighted,
        (None, false) => StartPolicy::Fixed(0),
    };
    let start = match policy {
        StartPolicy::Fixed(v) => v.to_string(),
        StartPolicy::DegreeWeighted => "weighted".into(),
    };
    let mut out = String::from("j,mean,variance,graph,start,trials,seed\n");
    let mut profiles = Vec::new();
    for spec in &a.graph {
        let parsed: GraphSpec = spec.parse()?;
        let g = parsed.build()?;
        let profile = access::accessibility_profile(&g, policy, a.trials, a.seed)
            .with_context(|| format!("graph {spec}"))?;
        for e in &profile {
            writeln!(
                out,
                "{},{},{},{parsed},{start},{},{}",
                e.j, e.mean, e.variance, e.trials, e.seed
            )?;
        }
        profiles.push((parsed.to_string(), profile));
    }
    // Orderings are reported only; nothing here asserts a conjecture.
    let mut notes = Vec::new();
    if profiles.len() > 1 {
        let shortest = profiles.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
        for j in 0..shortest {
            let mut order: Vec<(&str, f64)> =
                profiles.iter().map(|(name, p)| (name.as_str(), p[j].mean)).collect();
            order.sort_by(|x, y| x.1.total_cmp(&y.1));
            let text: Vec<String> = order.iter().map(|(n, m)| format!("{n} ({m:.4})")).collect();
            notes.push(format!("j={}: {}", j + 1, text.join(" < ")));
        }
    }
    Ok(Output { body: out, notes })
}
