//! The `chemhull` command line.
//!
//! Exit codes: 0 success, 1 internal error, 2 bad input (including
//! unrealizable points), 3 formula syntax error, 4 verification mismatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::net::SocketAddr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::api::{serve, ServiceConfig};
use crate::catalog::{catalog_table, classify_regime, extreme_points};
use crate::edgetype::{Point3, ValidPair};
use crate::graph::ChemGraph;
use crate::hull::{convex_hull, Polytope};
use crate::index::{
    classify_with_tolerance, optimize_with_tolerance, preset_descriptors, reduce, IndexError, IndexRequest, IndexSpec,
    Sense,
};
use crate::oracle::{compare_with_catalog, for_each_graph, realizable_points, CatalogVerdict, OracleConfig};
use crate::realizer::{realize, RealizeBudget, RealizeError};
use crate::views::{GraphView, OptimizationView, PointView, PolytopeView};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "chemhull", version, about = "Edge-type polytopes of chemical graphs")]
pub struct Cli {
    #[arg(long, global = true, value_enum, env = "CHEMHULL_FORMAT", default_value = "human")]
    format: Format,
    /// Shorthand for --format json.
    #[arg(long, global = true)]
    json: bool,
    /// Shorthand for --format dot.
    #[arg(long, global = true)]
    dot: bool,
    /// Absolute tie tolerance on reduced index values.
    #[arg(long, global = true, env = "CHEMHULL_EPS", default_value_t = crate::index::DEFAULT_TOLERANCE)]
    eps: f64,
    /// Largest order accepted by the enumeration oracle.
    #[arg(long, global = true, env = "CHEMHULL_LIMIT", default_value_t = crate::oracle::DEFAULT_LIMIT)]
    limit: usize,
    /// Seed for the realizer.
    #[arg(long, global = true, env = "CHEMHULL_SEED", default_value_t = RealizeBudget::default().seed)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct PairArgs {
    /// Order (number of vertices).
    #[arg(short = 'n', allow_negative_numbers = true)]
    n: i64,
    /// Size (number of edges).
    #[arg(short = 'm', allow_negative_numbers = true)]
    m: i64,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct IndexSource {
    /// Named index, e.g. randic, sombor, abs, generalized_randic.
    #[arg(long)]
    preset: Option<String>,
    /// Edge weight f(i, j) in the variables i and j.
    #[arg(long)]
    formula: Option<String>,
    /// Explicit weights c12,c13,c22,c23,c33.
    #[arg(long, value_parser = parse_list::<f64, 5>, allow_hyphen_values = true)]
    coeffs: Option<[f64; 5]>,
}

#[derive(Debug, Args)]
struct IndexArgs {
    #[command(flatten)]
    source: IndexSource,
    /// Exponent for generalized_randic.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct SenseArgs {
    /// Maximize the index
    #[arg(long)]
    max: bool,
    /// Minimize the index
    #[arg(long)]
    min: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// V- and H-representation of the polytope for (n, m).
    Polytope(PairArgs),
    /// Optimize an index over the polytope's extreme points.
    Optimize {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        index: IndexArgs,
        #[command(flatten)]
        sense: SenseArgs,
        /// Also realize a witness graph for every optimal point.
        #[arg(long)]
        realize: bool,
    },
    /// Build a chemical graph with the given (m12, m13, m33).
    Realize {
        #[command(flatten)]
        pair: PairArgs,
        /// Point as m12,m13,m33.
        #[arg(short = 'p', value_parser = parse_list::<i64, 3>, allow_hyphen_values = true)]
        point: [i64; 3],
    },
    /// Stream every chemical graph of order n and size m as NDJSON.
    Enumerate {
        #[command(flatten)]
        pair: PairArgs,
        /// One graph per isomorphism class.
        #[arg(long)]
        dedupe: bool,
        /// Print the realizable-point report instead of graphs.
        #[arg(long)]
        report: bool,
    },
    /// Compare the catalog with exhaustive enumeration.
    Verify {
        #[arg(short = 'n', required_unless_present = "up_to")]
        n: Option<i64>,
        #[arg(short = 'm', requires = "n")]
        m: Option<i64>,
        /// Check every valid pair with 3 <= n <= this order.
        #[arg(long, conflicts_with = "n")]
        up_to: Option<i64>,
    },
    /// Catalog extreme points for (n, m), or the whole embedded table.
    Catalog {
        #[arg(short = 'n', requires = "m", required_unless_present = "table")]
        n: Option<i64>,
        #[arg(short = 'm', requires = "n")]
        m: Option<i64>,
        #[arg(long, conflicts_with = "n")]
        table: bool,
    },
    /// List index presets.
    Presets,
    /// Evaluate the path and cycle extremality conditions for an index.
    Classify {
        #[command(flatten)]
        index: IndexArgs,
    },
    /// Run the HTTP service.
    Serve {
        /// Socket address to bind
        #[arg(long, env = "CHEMHULL_LISTEN", default_value = "127.0.0.1:8080")]
        listen: SocketAddr,
        /// Allowed CORS origin; repeatable. Any origin when omitted.
        #[arg(long)]
        cors_origin: Vec<String>,
    },
}

fn parse_list<T: std::str::FromStr, const K: usize>(s: &str) -> Result<[T; K], String> {
    let parts: Vec<T> = s
        .split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| format!("not a number: {x:?}")))
        .collect::<Result<_, _>>()?;
    let got = parts.len();
    parts
        .try_into()
        .map_err(|_| format!("expected {K} comma-separated values, got {got}"))
}

#[derive(Debug)]
enum Failure {
    Internal(String),
    BadInput(String),
    Syntax(String),
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Internal(_) => 1,
            Failure::BadInput(_) => 2,
            Failure::Syntax(_) => 3,
            Failure::Mismatch(_) => 4,
        }
    }
}

fn index_failure(e: IndexError, source: Option<&str>) -> Failure {
    match (&e, source) {
        (IndexError::Syntax(s), Some(text)) => Failure::Syntax(format!("{e}\n{}", s.caret(text))),
        (IndexError::Syntax(_), None) => Failure::Syntax(e.to_string()),
        _ => Failure::BadInput(e.to_string()),
    }
}

struct Ctx {
    format: Format,
    eps: f64,
    limit: usize,
    seed: u64,
    out: String,
}

impl Ctx {
    fn emit_json<T: Serialize>(&mut self, v: &T) -> Result<(), Failure> {
        let s = serde_json::to_string_pretty(v).map_err(|e| Failure::Internal(e.to_string()))?;
        self.out.push_str(&s);
        self.out.push('\n');
        Ok(())
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn no_dot(&self) -> Result<(), Failure> {
        if self.format == Format::Dot {
            return Err(Failure::BadInput("dot output is only available for graphs".into()));
        }
        Ok(())
    }

    fn budget(&self) -> RealizeBudget {
        RealizeBudget {
            seed: self.seed,
            ..RealizeBudget::default()
        }
    }

    fn oracle(&self) -> OracleConfig {
        OracleConfig { limit: self.limit }
    }
}

fn pair_of(n: i64, m: i64) -> Result<ValidPair, Failure> {
    ValidPair::new(n, m).map_err(|e| Failure::BadInput(e.to_string()))
}

fn spec_of(args: &IndexArgs) -> Result<IndexSpec, Failure> {
    let coeffs = match &args.source.coeffs {
        Some(c) => Some(
            serde_json::from_value(json!({
                "c12": c[0], "c13": c[1], "c22": c[2], "c23": c[3], "c33": c[4]
            }))
            .map_err(|e| Failure::BadInput(e.to_string()))?,
        ),
        None => None,
    };
    let req = IndexRequest {
        coeffs,
        formula: args.source.formula.clone(),
        preset: args.source.preset.clone(),
        alpha: args.alpha,
    };
    req.resolve()
        .map_err(|e| index_failure(e, args.source.formula.as_deref()))
}

fn five(p: &PointView) -> String {
    format!("({}, {}, {}, {}, {})", p.m12, p.m13, p.m22, p.m23, p.m33)
}

fn render_polytope(ctx: &mut Ctx, view: &PolytopeView) {
    ctx.line(format!(
        "P({},{}): dimension {}, {} vertices, {} facets",
        view.n,
        view.m,
        view.dim,
        view.vertices.len(),
        view.facets.len()
    ));
    ctx.line("vertices (m12, m13, m22, m23, m33):");
    for v in &view.vertices {
        ctx.line(format!("  {:<10} {:<24} {}", v.name, five(v), v.labels.join(" ")));
    }
    ctx.line("facets:");
    for f in &view.facets {
        ctx.line(format!("  {f}"));
    }
    if !view.equalities.is_empty() {
        ctx.line("equalities:");
        for f in &view.equalities {
            ctx.line(format!("  {f}"));
        }
    }
}

fn render_graph(ctx: &mut Ctx, g: &ChemGraph) -> Result<(), Failure> {
    match ctx.format {
        Format::Json => ctx.emit_json(&GraphView::new(g)),
        Format::Dot => {
            ctx.out.push_str(&g.to_dot());
            Ok(())
        }
        Format::Human => {
            let v = GraphView::new(g);
            let [a, b, c, d, e] = v.counts;
            ctx.line(format!("n={} m={} counts ({a}, {b}, {c}, {d}, {e})", v.n, v.m));
            let mut s = String::new();
            for (u, w) in &v.edges {
                let _ = write!(s, "{u}-{w} ");
            }
            ctx.line(s.trim_end());
            Ok(())
        }
    }
}

fn realize_or_fail(ctx: &Ctx, pair: ValidPair, p: Point3) -> Result<ChemGraph, Failure> {
    realize(pair, p, ctx.budget()).map_err(|e| match e {
        RealizeError::InconsistentPoint(_) => Failure::BadInput(e.to_string()),
        RealizeError::Unrealized { .. } => Failure::BadInput(e.to_string()),
    })
}

fn cmd_optimize(
    ctx: &mut Ctx,
    pair: ValidPair,
    spec: &IndexSpec,
    sense: Sense,
    with_graphs: bool,
) -> Result<(), Failure> {
    ctx.no_dot()?;
    let result = optimize_with_tolerance(spec, pair, sense, ctx.eps);
    let view = OptimizationView::new(spec, &result);
    let witnesses = if with_graphs {
        result
            .arg_coordinates()
            .into_iter()
            .map(|p| realize_or_fail(ctx, pair, p))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    if ctx.format == Format::Json {
        let mut v = serde_json::to_value(&view).map_err(|e| Failure::Internal(e.to_string()))?;
        if with_graphs {
            v["witnesses"] = json!(witnesses.iter().map(GraphView::new).collect::<Vec<_>>());
        }
        return ctx.emit_json(&v);
    }
    ctx.line(format!("{} over P({},{}), {sense}", view.label, view.n, view.m));
    ctx.line(format!(
        "optimum {} (reduced {}, constant {})",
        view.optimal_value, view.optimal_reduced_value, view.constant
    ));
    ctx.line("arg points (m12, m13, m22, m23, m33):");
    for p in &view.arg_points {
        ctx.line(format!("  {:<10} {:<24} {}", p.name, five(p), p.labels.join(" ")));
    }
    ctx.line("candidates:");
    for c in &view.candidates {
        ctx.line(format!(
            "  {} {:<10} {:<24} reduced {:<24} value {}",
            if c.optimal { '*' } else { ' ' },
            c.point.name,
            five(&c.point),
            c.reduced_value,
            c.value
        ));
    }
    for g in &witnesses {
        ctx.line("witness:");
        render_graph(ctx, g)?;
    }
    Ok(())
}

fn verdict_line(pair: ValidPair, v: &CatalogVerdict) -> String {
    match v {
        CatalogVerdict::Match => format!("({}, {}) Match", pair.n(), pair.m()),
        CatalogVerdict::Mismatch { missing, extra } => {
            let fmt = |ps: &[Point3]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
            format!(
                "({}, {}) Mismatch: missing [{}] extra [{}]",
                pair.n(),
                pair.m(),
                fmt(missing),
                fmt(extra)
            )
        }
    }
}

fn cmd_verify(ctx: &mut Ctx, pairs: Vec<ValidPair>) -> Result<(), Failure> {
    ctx.no_dot()?;
    let mut bad = 0;
    let mut rows = Vec::new();
    for pair in pairs {
        let report = realizable_points(pair, ctx.oracle()).map_err(|e| Failure::BadInput(e.to_string()))?;
        let v = compare_with_catalog(pair, &report);
        if v != CatalogVerdict::Match {
            bad += 1;
        }
        if ctx.format == Format::Json {
            rows.push(json!({ "n": pair.n(), "m": pair.m(), "result": v }));
        } else {
            ctx.line(verdict_line(pair, &v));
        }
    }
    if ctx.format == Format::Json {
        ctx.emit_json(&rows)?;
    }
    if bad > 0 {
        return Err(Failure::Mismatch(format!("{bad} pair(s) disagree with the catalog")));
    }
    Ok(())
}

fn cmd_enumerate(ctx: &mut Ctx, pair: ValidPair, dedupe: bool, report: bool) -> Result<(), Failure> {
    let limit_err = |e: crate::oracle::OracleError| Failure::BadInput(e.to_string());
    if report {
        ctx.no_dot()?;
        let r = realizable_points(pair, ctx.oracle()).map_err(limit_err)?;
        let points: Vec<Point3> = r.realizable_points.iter().copied().collect();
        let hull: Polytope = convex_hull(&points)
            .map_err(|e| Failure::Internal(e.to_string()))?
            .with_pair(pair);
        if ctx.format == Format::Json {
            return ctx.emit_json(&json!({ "polytope": hull, "report": r }));
        }
        ctx.line(format!(
            "P({},{}): {} isomorphism classes, {} realizable points, {} hull vertices",
            pair.n(),
            pair.m(),
            r.graph_count_total,
            r.realizable_points.len(),
            hull.vertices.len()
        ));
        for (p, c) in &r.per_point_counts {
            let flag = if hull.vertices.contains(p) { " vertex" } else { "" };
            ctx.line(format!("  {p} {c}{flag}"));
        }
        return Ok(());
    }
    // one JSON object per line regardless of format
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let mut io_err = None;
    for_each_graph(pair, dedupe, ctx.oracle(), |g| {
        if io_err.is_some() {
            return;
        }
        let line = serde_json::to_string(&GraphView::new(&g)).expect("graph views serialize");
        if let Err(e) = writeln!(lock, "{line}") {
            io_err = Some(e);
        }
    })
    .map_err(limit_err)?;
    match io_err {
        Some(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Internal(e.to_string())),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let format = if cli.json {
        Format::Json
    } else if cli.dot {
        Format::Dot
    } else {
        cli.format
    };
    if !(cli.eps.is_finite() && cli.eps >= 0.0) {
        return Err(Failure::BadInput("--eps must be finite and non-negative".into()));
    }
    let mut ctx = Ctx {
        format,
        eps: cli.eps,
        limit: cli.limit,
        seed: cli.seed,
        out: String::new(),
    };
    match cli.command {
        Command::Polytope(p) => {
            ctx.no_dot()?;
            let view = PolytopeView::for_pair(pair_of(p.n, p.m)?);
            if ctx.format == Format::Json {
                ctx.emit_json(&view)?;
            } else {
                render_polytope(&mut ctx, &view);
            }
        }
        Command::Optimize {
            pair,
            index,
            sense,
            realize,
        } => {
            let pair = pair_of(pair.n, pair.m)?;
            let spec = spec_of(&index)?;
            let sense = if sense.max { Sense::Max } else { Sense::Min };
            cmd_optimize(&mut ctx, pair, &spec, sense, realize)?;
        }
        Command::Realize { pair, point } => {
            let pair = pair_of(pair.n, pair.m)?;
            let p = Point3::new(point[0], point[1], point[2]);
            let g = realize_or_fail(&ctx, pair, p)?;
            render_graph(&mut ctx, &g)?;
        }
        Command::Enumerate { pair, dedupe, report } => {
            let pair = pair_of(pair.n, pair.m)?;
            cmd_enumerate(&mut ctx, pair, dedupe, report)?;
        }
        Command::Verify { n, m, up_to } => {
            let pairs = match (n, m, up_to) {
                (_, _, Some(max)) => (3..=max).flat_map(ValidPair::all_with_order).collect(),
                (Some(n), Some(m), None) => vec![pair_of(n, m)?],
                (Some(n), None, None) => {
                    if n < 3 {
                        pair_of(n, n)?;
                    }
                    ValidPair::all_with_order(n)
                }
                _ => return Err(Failure::BadInput("give -n [-m] or --up-to".into())),
            };
            cmd_verify(&mut ctx, pairs)?;
        }
        Command::Catalog { n, m, table } => {
            ctx.no_dot()?;
            if table {
                ctx.emit_json(&catalog_table())?;
            } else {
                let pair = pair_of(n.unwrap_or(0), m.unwrap_or(0))?;
                let points = extreme_points(pair);
                if ctx.format == Format::Json {
                    ctx.emit_json(&json!({ "regime": classify_regime(pair), "points": points }))?;
                } else {
                    ctx.line(format!(
                        "P({},{}): {:?}",
                        pair.n(),
                        pair.m(),
                        classify_regime(pair).kind
                    ));
                    for lp in points {
                        let labels: Vec<String> = lp.labels.iter().map(|l| l.to_string()).collect();
                        ctx.line(format!("  {:<16} {}", lp.point.to_string(), labels.join(" ")));
                    }
                }
            }
        }
        Command::Presets => {
            ctx.no_dot()?;
            let list = preset_descriptors();
            if ctx.format == Format::Json {
                ctx.emit_json(&list)?;
            } else {
                for d in list {
                    ctx.line(format!("{:<22} {}", d.name, d.formula));
                }
            }
        }
        Command::Classify { index } => {
            ctx.no_dot()?;
            let spec = spec_of(&index)?;
            let class = classify_with_tolerance(&spec, ctx.eps);
            let red = reduce(&spec);
            if ctx.format == Format::Json {
                ctx.emit_json(&json!({ "label": spec.label(), "reduced": red, "classification": class }))?;
            } else {
                ctx.line(format!(
                    "{}: c'12 = {}, c'13 = {}, c'33 = {}",
                    spec.label(),
                    red.cp12,
                    red.cp13,
                    red.cp33
                ));
                let v: Value = serde_json::to_value(class).map_err(|e| Failure::Internal(e.to_string()))?;
                if let Value::Object(map) = v {
                    for (k, val) in map {
                        ctx.line(format!("  {k}: {}", val.as_str().unwrap_or_default()));
                    }
                }
            }
        }
        Command::Serve { listen, cors_origin } => {
            let config = ServiceConfig {
                realize_budget: ctx.budget(),
                tolerance: ctx.eps,
                cors_origins: cors_origin,
                ..ServiceConfig::default()
            };
            let rt = tokio::runtime::Builder::new_multi_thread()
                .enable_all()
                .build()
                .map_err(|e| Failure::Internal(e.to_string()))?;
            eprintln!("listening on http://{listen}");
            rt.block_on(serve(listen, config))
                .map_err(|e| Failure::Internal(format!("server error: {e}")))?;
        }
    }
    Ok(ctx.out)
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            0
        }
        Err(f) => {
            let (Failure::Internal(msg) | Failure::BadInput(msg) | Failure::Syntax(msg) | Failure::Mismatch(msg)) = &f;
            eprintln!("error: {msg}");
            f.code()
        }
    }
}
