//! `xturan`: command-line front end for the p-norm Turán toolkit.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation error, 3 budget or
//! partial results.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use xturan_core::bounds::{self, BoundKind, BoundParams, BoundProfile};
use xturan_core::constructions::{self, ConstructParams};
use xturan_core::drc;
use xturan_core::hypergraph::Host;
use xturan_core::norms;
use xturan_core::patterns::{self, PatternSpec};
use xturan_core::regularization;
use xturan_core::search::{self, Objective};
use xturan_core::walks;
use xturan_core::{selftest, Error};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    Vertices,
    Left,
    Right,
    Edges,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Objective {
        match o {
            ObjectiveArg::Vertices => Objective::Vertices,
            ObjectiveArg::Left => Objective::Left,
            ObjectiveArg::Right => Objective::Right,
            ObjectiveArg::Edges => Objective::Edges,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "xturan", version, about = "p-norm Turán toolkit", disable_help_subcommand = true)]
struct Cli {
    /// Configuration file with `key = value` lines supplying defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the serialized result to this path as well as stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Random seed; recorded in every output.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct InputArg {
    /// Input graph file (graph6, hypergraph text, or bipartite text).
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args, Debug)]
struct PatternArg {
    /// Registry name (C4, K2,2, P5, K^3_1,2,2, tau-gap-3graph, C<=6, ...)
    /// or a path to a JSON pattern file.
    #[arg(long)]
    pattern: String,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// p-norm of a graph: sum of degree^p.
    Norm {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        p: Option<f64>,
    },
    /// (t,p)-norm: sum of co-degree^p over t-sets.
    Tpnorm {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        p: Option<f64>,
    },
    /// Count walks of length k.
    Walks {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        k: usize,
    },
    /// Covering numbers tau_part and tau_ind of a pattern.
    Tau {
        #[command(flatten)]
        pattern: PatternArg,
    },
    /// Test whether a host graph is pattern-free.
    Free {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        pattern: PatternArg,
    },
    /// Build a named construction (star_like, polarity, cycle, path, ...).
    Construct {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        c: Option<f64>,
    },
    /// Exhaustive maximum p-norm over pattern-free hosts.
    SearchExact {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Heuristic maximum p-norm search.
    SearchLocal {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 2000)]
        budget: u64,
    },
    /// Exact Zarankiewicz-type search over ordered-pattern-free grids.
    Zarankiewicz {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Edges)]
        objective: ObjectiveArg,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Heavy-vertex regularization with per-step certificates.
    Regularize {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 64)]
        max_steps: usize,
        #[arg(long)]
        claimed_c: Option<f64>,
        #[arg(long, default_value_t = 8)]
        stop_size: usize,
    },
    /// Bipartite one-side regularization.
    BipartiteRegularize {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        eps_prime: f64,
    },
    /// Dyadic degree-class selection (Prop. 5.1).
    Dyadic {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        p: Option<f64>,
    },
    /// Critical-exponent pipeline check.
    CriticalCheck {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 2.0)]
        cf: f64,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Dependent-random-choice embedding.
    Drc {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Evaluate a named closed-form bound.
    Bound {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: Option<f64>,
        #[arg(long)]
        m: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        s1: Option<usize>,
        #[arg(long)]
        ex_value: Option<f64>,
        #[arg(long)]
        v_f: Option<usize>,
        #[arg(long)]
        tau_ind: Option<usize>,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        slack: Option<f64>,
    },
    /// Phase diagram of predicted norm exponents over a p-grid.
    Phase {
        /// Profile name: C4, C6, or K3,3.
        #[arg(long)]
        profile: String,
        /// Grid as start:end:step (inclusive).
        #[arg(long)]
        grid: String,
    },
    /// Least-squares log-log slope of an (n, value) series.
    SlopeFit {
        /// Series as comma-separated n:value pairs.
        #[arg(long)]
        points: String,
    },
    /// Run the full acceptance suite.
    Selftest,
}

/// Result payload plus an optional explicit table rendering for CSV.
struct Output {
    json: Value,
    table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
}

impl Output {
    fn json(json: Value) -> Output {
        Output { json, table: None }
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<HashMap<String, String>, Error> {
    let mut map = HashMap::new();
    if let Some(p) = path {
        let text = std::fs::read_to_string(p)?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("config line {}: expected key = value", lineno + 1))
            })?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
    }
    Ok(map)
}

struct Ctx {
    cfg: HashMap<String, String>,
    seed: u64,
    format: Format,
    output: Option<PathBuf>,
}

impl Ctx {
    fn cfg_parse<T: std::str::FromStr>(&self, key: &str) -> Option<T> {
        self.cfg.get(key).and_then(|v| v.parse().ok())
    }

    /// Flag beats config beats built-in default.
    fn p(&self, flag: Option<f64>) -> f64 {
        flag.or_else(|| self.cfg_parse("p")).unwrap_or(1.0)
    }

    fn trials(&self, flag: Option<usize>) -> usize {
        flag.or_else(|| self.cfg_parse("trials")).unwrap_or(16)
    }
}

fn read_host(path: &PathBuf) -> Result<Host, Error> {
    let text = std::fs::read_to_string(path)?;
    xturan_core::io::parse_host(&text)
}

fn bipartite_host(host: Host) -> Result<xturan_core::BipartiteGraph, Error> {
    match host {
        Host::Bipartite(g) => Ok(g),
        Host::Hyper(_) => Err(Error::InvalidInput(
            "this command needs a bipartite input (B m n header)".into(),
        )),
    }
}

fn hyper_host(host: Host) -> Result<xturan_core::Hypergraph, Error> {
    match host {
        Host::Hyper(h) => Ok(h),
        Host::Bipartite(g) => Ok(g.to_hypergraph()),
    }
}

fn resolve_pattern(name: &str) -> Result<PatternSpec, Error> {
    match patterns::registry(name) {
        Ok(spec) => Ok(spec),
        Err(registry_err) => {
            let path = PathBuf::from(name);
            if path.is_file() {
                let text = std::fs::read_to_string(&path)?;
                let spec: PatternSpec =
                    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
                spec.validate()?;
                Ok(spec)
            } else {
                Err(registry_err)
            }
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, Error> {
    serde_json::to_value(v).map_err(|e| Error::InvalidInput(e.to_string()))
}

fn run(ctx: &Ctx, cmd: Cmd) -> Result<Output, Error> {
    match cmd {
        Cmd::Norm { input, p } => {
            let p = ctx.p(p);
            let host = read_host(&input.input)?;
            let value = search::objective_value(&host, p, Objective::Vertices)?;
            Ok(Output::json(json!({ "p": p, "value": value.value })))
        }
        Cmd::Tpnorm { input, t, p } => {
            let p = ctx.p(p);
            let h = hyper_host(read_host(&input.input)?)?;
            let value = norms::tp_norm(&h, t, p)?;
            Ok(Output::json(json!({ "t": t, "p": p, "value": value.value })))
        }
        Cmd::Walks { input, k } => {
            let h = hyper_host(read_host(&input.input)?)?;
            let count = walks::walk_count(&h, k)?;
            Ok(Output::json(json!({ "k": k, "count": count as u64 })))
        }
        Cmd::Tau { pattern } => {
            let spec = resolve_pattern(&pattern.pattern)?;
            let report = patterns::tau_values(&spec.pattern);
            Ok(Output::json(json!({
                "pattern": spec.name,
                "tau_part": report.tau_part,
                "tau_ind": report.tau_ind,
                "part_witness": report.part_witness,
                "ind_witness": report.ind_witness,
            })))
        }
        Cmd::Free { input, pattern } => {
            let spec = resolve_pattern(&pattern.pattern)?;
            let host = read_host(&input.input)?;
            let witness = patterns::is_free(&host, &spec)?;
            Ok(Output::json(to_value(&witness)?))
        }
        Cmd::Construct { kind, n, r, t, q, sizes, p, pattern, theta, c } => {
            let spec = pattern.as_deref().map(resolve_pattern).transpose()?;
            let params = ConstructParams {
                n,
                r,
                t,
                q,
                sizes,
                p,
                spec,
                theta,
                c,
                seed: Some(ctx.seed),
            };
            let report = constructions::construct(&kind, &params)?;
            let text = xturan_core::io::write_host(&report.graph)?;
            let mut v = to_value(&report)?;
            v.as_object_mut()
                .expect("report is an object")
                .insert("graph_text".into(), Value::String(text));
            Ok(Output::json(v))
        }
        Cmd::SearchExact { n, pattern, p, budget } => {
            let p = ctx.p(p);
            let spec = resolve_pattern(&pattern.pattern)?;
            let cert = search::exact_max_pnorm(n, &spec, p, budget)?;
            Ok(Output::json(to_value(&cert)?))
        }
        Cmd::SearchLocal { n, pattern, p, budget } => {
            let p = ctx.p(p);
            let spec = resolve_pattern(&pattern.pattern)?;
            let cert = search::local_search_max_pnorm(n, &spec, p, budget, ctx.seed, None)?;
            Ok(Output::json(to_value(&cert)?))
        }
        Cmd::Zarankiewicz { m, n, pattern, p, objective, budget } => {
            let p = ctx.p(p);
            let spec = resolve_pattern(&pattern.pattern)?;
            let cert = search::exact_zarankiewicz(m, n, &spec, p, objective.into(), budget)?;
            Ok(Output::json(to_value(&cert)?))
        }
        Cmd::Regularize { input, alpha, p, eps, trials, max_steps, claimed_c, stop_size } => {
            let p = ctx.p(p);
            let h = hyper_host(read_host(&input.input)?)?;
            let consts = regularization::derive_constants(h.r(), alpha, p, eps)?;
            let trace = regularization::regularize(
                &h,
                &consts,
                ctx.trials(trials),
                ctx.seed,
                max_steps,
                claimed_c,
                stop_size,
            )?;
            Ok(Output::json(json!({
                "constants": to_value(&consts)?,
                "steps": trace.steps.len(),
                "trace": to_value(&trace.steps)?,
                "stop": to_value(&trace.stop)?,
                "result_vertices": trace.result.n(),
                "result_edges": trace.result.edge_count(),
                "precondition_warning": trace.precondition_warning,
                "certified_max_degree": trace.certified_max_degree,
                "certified_norm_retention": trace.certified_norm_retention,
                "certified_phi_growth": trace.certified_phi_growth,
                "certified_size_sandwich": trace.certified_size_sandwich,
            })))
        }
        Cmd::BipartiteRegularize { input, alpha, beta, p, eps_prime } => {
            let p = ctx.p(p);
            let g = bipartite_host(read_host(&input.input)?)?;
            let trace =
                regularization::bipartite_regularize(&g, p, alpha, beta, eps_prime, ctx.seed)?;
            Ok(Output::json(to_value(&trace)?))
        }
        Cmd::Dyadic { input, p } => {
            let p = ctx.p(p);
            let g = bipartite_host(read_host(&input.input)?)?;
            let report = regularization::dyadic_select(&g, p)?;
            Ok(Output::json(to_value(&report)?))
        }
        Cmd::CriticalCheck { input, pattern, alpha, cf, trials } => {
            let h = hyper_host(read_host(&input.input)?)?;
            let spec = resolve_pattern(&pattern.pattern)?;
            let report = regularization::critical_pipeline(
                &h,
                &spec,
                alpha,
                cf,
                ctx.trials(trials),
                ctx.seed,
            )?;
            Ok(Output::json(to_value(&report)?))
        }
        Cmd::Drc { input, pattern, trials } => {
            let g = bipartite_host(read_host(&input.input)?)?;
            let spec = resolve_pattern(&pattern.pattern)?;
            let report = drc::drc_embed(&g, &spec, ctx.trials(trials).max(1), ctx.seed)?;
            Ok(Output::json(to_value(&report)?))
        }
        Cmd::Bound {
            kind, n, m, p, r, alpha, beta, ell, s, s1, ex_value, v_f, tau_ind, c, slack,
        } => {
            let kind: BoundKind = kind.parse()?;
            let params = BoundParams {
                n,
                m,
                p,
                r,
                alpha,
                beta,
                ell,
                s,
                s1,
                ex_value,
                v_f,
                tau_ind,
                c,
                slack,
            };
            let value = bounds::evaluate_bound(kind, &params)?;
            Ok(Output::json(json!({ "kind": kind.name(), "value": value })))
        }
        Cmd::Phase { profile, grid } => {
            let prof = match profile.as_str() {
                "C4" => BoundProfile::c4(),
                "C6" => BoundProfile::c6(),
                "K3,3" | "K33" => BoundProfile::k33(),
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown profile: {other} (expected C4, C6, or K3,3)"
                    )))
                }
            };
            let parts: Vec<&str> = grid.split(':').collect();
            if parts.len() != 3 {
                return Err(Error::InvalidParameter(
                    "grid must be start:end:step".into(),
                ));
            }
            let (a, b, step): (f64, f64, f64) = (
                parts[0].parse().map_err(|_| Error::Parse("bad grid start".into()))?,
                parts[1].parse().map_err(|_| Error::Parse("bad grid end".into()))?,
                parts[2].parse().map_err(|_| Error::Parse("bad grid step".into()))?,
            );
            if step <= 0.0 || b < a {
                return Err(Error::InvalidParameter("grid must ascend".into()));
            }
            let mut ps = Vec::new();
            let mut i = 0usize;
            loop {
                let p = a + step * i as f64;
                if p > b + 1e-9 {
                    break;
                }
                ps.push(p);
                i += 1;
            }
            let table = bounds::phase_diagram(&prof, &ps)?;
            let mut rows = Vec::new();
            let mut json_rows = Vec::new();
            for pt in &table {
                let report = bounds::classify(&prof, pt.p)?;
                let constant = report
                    .constant
                    .map(|c| c.to_string())
                    .unwrap_or_default();
                rows.push(vec![
                    pt.p.to_string(),
                    pt.regime.to_string(),
                    pt.predicted_exponent.to_string(),
                    pt.log_flag.to_string(),
                    constant,
                ]);
                json_rows.push(json!({
                    "p": pt.p,
                    "regime": pt.regime.to_string(),
                    "exponent": pt.predicted_exponent,
                    "log_flag": pt.log_flag,
                    "constant": report.constant,
                }));
            }
            Ok(Output {
                json: json!({ "profile": profile, "rows": json_rows }),
                table: Some((vec!["p", "regime", "exponent", "log_flag", "constant"], rows)),
            })
        }
        Cmd::SlopeFit { points } => {
            let mut series = Vec::new();
            for part in points.split(',') {
                let (n, v) = part
                    .split_once(':')
                    .ok_or_else(|| Error::Parse("points must be n:value pairs".into()))?;
                series.push((
                    n.trim().parse().map_err(|_| Error::Parse("bad n".into()))?,
                    v.trim().parse().map_err(|_| Error::Parse("bad value".into()))?,
                ));
            }
            let slope = bounds::slope_fit(&series)?;
            Ok(Output::json(json!({ "points": series.len(), "slope": slope })))
        }
        Cmd::Selftest => {
            let results = selftest::run_all();
            for r in &results {
                eprintln!("{}", r.line());
            }
            let pass = selftest::all_pass(&results);
            let out = Output::json(json!({
                "pass": pass,
                "criteria": to_value(&results)?,
            }));
            if pass {
                Ok(out)
            } else {
                Err(Error::InvalidInput("selftest criteria failed".into()))
            }
        }
    }
}

fn flatten_scalars(value: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    if let Value::Object(map) = value {
        for (k, v) in map {
            match v {
                Value::Null => out.push((k.clone(), String::new())),
                Value::Bool(b) => out.push((k.clone(), b.to_string())),
                Value::Number(n) => out.push((k.clone(), n.to_string())),
                Value::String(s) => out.push((k.clone(), s.clone())),
                _ => {}
            }
        }
    }
    out
}

fn render(out: &Output, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.json).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => {
            if let Some((cols, rows)) = &out.table {
                let mut s = cols.join(",");
                s.push('\n');
                for row in rows {
                    s.push_str(&row.join(","));
                    s.push('\n');
                }
                s
            } else {
                let pairs = flatten_scalars(&out.json);
                let header: Vec<&str> = pairs.iter().map(|(k, _)| k.as_str()).collect();
                let vals: Vec<&str> = pairs.iter().map(|(_, v)| v.as_str()).collect();
                format!("{}\n{}\n", header.join(","), vals.join(","))
            }
        }
        Format::Text => {
            let mut s = String::new();
            for (k, v) in flatten_scalars(&out.json) {
                s.push_str(&format!("{k} = {v}\n"));
            }
            s
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Budget(_) | Error::StepBudget(_) | Error::ResampleExhausted { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = match load_config(&cli.config) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Ok(threads) = std::env::var("XTURAN_THREADS") {
        if let Ok(k) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
        }
    }
    let format = cli
        .format
        .or_else(|| match cfg.get("format").map(String::as_str) {
            Some("json") => Some(Format::Json),
            Some("csv") => Some(Format::Csv),
            Some("text") => Some(Format::Text),
            _ => None,
        })
        .unwrap_or(Format::Json);
    let seed = cli
        .seed
        .or_else(|| cfg.get("seed").and_then(|s| s.parse().ok()))
        .unwrap_or(0);
    let output = cli
        .output
        .clone()
        .or_else(|| cfg.get("output").map(PathBuf::from));
    let ctx = Ctx { cfg, seed, format, output };

    match run(&ctx, cli.cmd) {
        Ok(mut out) => {
            if let Value::Object(ref mut map) = out.json {
                map.insert("schema".into(), json!(1));
                map.insert("seed".into(), json!(ctx.seed));
            } else {
                let mut map = Map::new();
                map.insert("schema".into(), json!(1));
                map.insert("seed".into(), json!(ctx.seed));
                map.insert("result".into(), out.json.clone());
                out.json = Value::Object(map);
            }
            let rendered = render(&out, ctx.format);
            print!("{rendered}");
            if let Some(path) = &ctx.output {
                if let Err(e) = std::fs::write(path, rendered) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
