//! Command-line front end: parse a host file, dispatch a computation, emit
//! JSON or text on stdout.
//!
//! Exit codes: 0 success, 1 unreadable/unparsable input (or unknown verify
//! suite), 2 infeasible bound or missing anchor (or wrong rank), 3 method
//! disagreement.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use heappoly::hyper::{CoefficientMethod, Pipeline};
use heappoly::rank2::{jacobi_quotient, walk_counts, Deleted, WalkAnchor};
use heappoly::series::{rat_to_string, Rat, TruncatedSeries};
use heappoly::SimpleHypergraph;

#[derive(Parser)]
#[command(
    name = "heappoly",
    about = "Exact characteristic polynomials of uniform hypergraphs, combinatorially"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Stacking route over abstract connected classes.
    Hs,
    /// Decomposition route over infragraphs.
    Kocay,
    /// Trivial-heap route over connected pieces.
    Heaps,
    /// All three routes with an agreement flag.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit JSON on stdout (the default).
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit a human-readable report instead of JSON.
    #[arg(long)]
    text: bool,
}

impl OutputArgs {
    fn format(&self) -> Format {
        if self.text {
            Format::Text
        } else {
            Format::Json
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic polynomial coefficients of a host file.
    Charpoly {
        host: String,
        /// Largest codegree to report.
        #[arg(long)]
        codegree: Option<usize>,
        #[arg(long, value_enum, default_value = "kocay")]
        method: Method,
        /// Report coefficients with edge variables.
        #[arg(long)]
        edge_vars: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Quotient generating function for a deleted vertex or edge (rank 2).
    Jacobi {
        host: String,
        /// Vertex anchor (1-based).
        #[arg(long, conflicts_with = "edge")]
        vertex: Option<usize>,
        /// Edge anchor (1-based position in the host file).
        #[arg(long)]
        edge: Option<usize>,
        /// Truncation order.
        #[arg(long, default_value = "8")]
        order: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-walk counts (rank 2): by vertex, by edge, or all.
    Walks {
        host: String,
        #[arg(long, conflicts_with = "edge")]
        vertex: Option<usize>,
        #[arg(long)]
        edge: Option<usize>,
        /// Largest walk length to report.
        #[arg(long, default_value = "8")]
        order: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Generalized traces by codegree.
    Trace {
        host: String,
        /// Largest codegree to report.
        #[arg(long, default_value = "6")]
        codegree: usize,
        /// Report edge-variable polynomials instead of scalars.
        #[arg(long)]
        edge_vars: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Root series of the normalized characteristic polynomial, three routes.
    RootSeries {
        host: String,
        #[arg(long, default_value = "9")]
        order: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a named verification suite (or `all`).
    Verify { suite: String },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("HEAPPOLY_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

type CliError = (u8, String);

fn load_host(path: &str) -> Result<SimpleHypergraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| (1, format!("{path}: {e}")))?;
    heappoly::hypergraph::parse_simple_host(&text).map_err(|e| (1, format!("{path}: {e}")))
}

/// Feasibility guard: the exact pipeline is exponential in the codegree.
fn check_feasible(host: &SimpleHypergraph, codegree: usize) -> Result<(), CliError> {
    let infeasible = codegree > 18
        || (host.rank() >= 3 && (host.num_edges() > 6 || host.num_vertices() > 6))
        || (host.rank() == 2 && (host.num_vertices() > 10 || codegree > 12));
    if infeasible {
        return Err((
            2,
            format!(
                "bound infeasible: rank {}, {} vertices, {} edges, codegree {}",
                host.rank(),
                host.num_vertices(),
                host.num_edges(),
                codegree
            ),
        ));
    }
    Ok(())
}

fn series_text(s: &TruncatedSeries) -> String {
    format!("{s:?}")
}

fn default_codegree(host: &SimpleHypergraph) -> usize {
    // covers the single-3-edge polynomial end to end; larger hosts truncate
    let n = host.num_vertices() as u64;
    let k = host.rank() as u64;
    let degree = n * (k - 1).pow(n.saturating_sub(1) as u32);
    12.min(degree as usize)
}

fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Charpoly {
            host,
            codegree,
            method,
            edge_vars,
            output,
        } => {
            let host = load_host(&host)?;
            let d_max = codegree.unwrap_or_else(|| default_codegree(&host));
            check_feasible(&host, d_max)?;
            let n = host.num_vertices();
            let k = host.rank();
            let degree: u64 = (n as u64) * (k as u64 - 1).pow(n.saturating_sub(1) as u32);
            let pipe = Pipeline::new(&host, d_max);
            if edge_vars {
                let mut obj = serde_json::Map::new();
                for d in 0..=d_max {
                    let p = pipe.edge_variable_coefficient(d);
                    let j = p.to_json();
                    if let Some(inner) = j.get(d.to_string()) {
                        obj.insert(d.to_string(), inner.clone());
                    }
                }
                let value = json!({"degree": degree, "edge_vars": obj});
                emit(&value, output.format(), |v| {
                    format!(
                        "degree {degree}\n{}",
                        serde_json::to_string_pretty(v).unwrap()
                    )
                });
                return Ok(());
            }
            let methods: Vec<(&str, CoefficientMethod)> = match method {
                Method::Hs => vec![("hs", CoefficientMethod::HararySachs)],
                Method::Kocay => vec![("kocay", CoefficientMethod::Kocay)],
                Method::Heaps => vec![("heaps", CoefficientMethod::TrivialHeaps)],
                Method::All => vec![
                    ("hs", CoefficientMethod::HararySachs),
                    ("kocay", CoefficientMethod::Kocay),
                    ("heaps", CoefficientMethod::TrivialHeaps),
                ],
            };
            let series: Vec<(&str, TruncatedSeries)> = methods
                .iter()
                .map(|&(name, m)| (name, pipe.phi_tilde(m, d_max)))
                .collect();
            let agreement = series.windows(2).all(|w| w[0].1 == w[1].1);
            if series.len() > 1 && !agreement {
                // never expected; a disagreement is a mathematical bug
                let mut value = json!({"degree": degree, "agreement": false, "methods": {}});
                for (name, s) in &series {
                    value["methods"][*name] = s.to_json();
                }
                println!("{}", serde_json::to_string(&value).unwrap());
                return Err((3, "coefficient routes disagree".to_string()));
            }
            let coeffs = series[0].1.to_json();
            let value = if series.len() > 1 {
                json!({"degree": degree, "coeffs": coeffs["coeffs"], "order": d_max,
                       "agreement": true, "methods": ["hs", "kocay", "heaps"]})
            } else {
                json!({"degree": degree, "coeffs": coeffs["coeffs"], "order": d_max,
                       "method": methods[0].0})
            };
            emit(&value, output.format(), |_| {
                let mut lines = vec![format!("degree {degree}")];
                lines.push(format!("normalized series = {}", series_text(&series[0].1)));
                if series.len() > 1 {
                    lines.push("agreement: true (hs = kocay = heaps)".to_string());
                }
                lines.join("\n")
            });
            Ok(())
        }
        Command::Jacobi {
            host,
            vertex,
            edge,
            order,
            output,
        } => {
            let host = load_host(&host)?;
            if host.rank() != 2 {
                return Err((2, "jacobi requires a rank-2 host".to_string()));
            }
            if order > 16 {
                return Err((2, format!("order {order} infeasible")));
            }
            match (vertex, edge) {
                (Some(u), None) => {
                    let q = jacobi_quotient(&host, Deleted::Vertex(u), order)
                        .map_err(|e| (2, format!("anchor not in host: {e}")))?;
                    let counts = walk_counts(&host, WalkAnchor::Vertex(u), order).unwrap();
                    let matches =
                        (0..=order).all(|d| q.coeff(d) == &Rat::from_integer(counts[d].clone()));
                    let value = json!({
                        "anchor": {"vertex": u},
                        "series": q.to_json(),
                        "walk_counts": counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "match": matches,
                    });
                    emit(&value, output.format(), |_| {
                        format!(
                            "quotient = {}\nwalk counts {:?}\nmatch: {matches}",
                            series_text(&q),
                            counts.iter().map(|c| c.to_string()).collect::<Vec<_>>()
                        )
                    });
                    Ok(())
                }
                (None, Some(e)) => {
                    if e == 0 || e > host.num_edges() {
                        return Err((2, format!("anchor not in host: edge {e}")));
                    }
                    let q = jacobi_quotient(&host, Deleted::Edge(e - 1), order)
                        .map_err(|err| (2, err.to_string()))?;
                    let counts = walk_counts(&host, WalkAnchor::Edge(e - 1), order).unwrap();
                    let matches =
                        (0..=order).all(|d| q.coeff(d) == &Rat::from_integer(counts[d].clone()));
                    let value = json!({
                        "anchor": {"edge": e},
                        "series": q.to_json(),
                        "pyramid_counts": counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "match": matches,
                    });
                    emit(&value, output.format(), |_| {
                        format!("quotient = {}\nmatch: {matches}", series_text(&q))
                    });
                    Ok(())
                }
                _ => Err((2, "exactly one of --vertex/--edge is required".to_string())),
            }
        }
        Command::Walks {
            host,
            vertex,
            edge,
            order,
            output,
        } => {
            let host = load_host(&host)?;
            if host.rank() != 2 {
                return Err((2, "walks requires a rank-2 host".to_string()));
            }
            if order > 12 {
                return Err((2, format!("order {order} infeasible")));
            }
            let (anchor_json, anchor) = match (vertex, edge) {
                (Some(u), None) => (json!({"vertex": u}), WalkAnchor::Vertex(u)),
                (None, Some(e)) => {
                    if e == 0 || e > host.num_edges() {
                        return Err((2, format!("anchor not in host: edge {e}")));
                    }
                    (json!({"edge": e}), WalkAnchor::Edge(e - 1))
                }
                (None, None) => (json!("all"), WalkAnchor::All),
                _ => return Err((2, "at most one of --vertex/--edge".to_string())),
            };
            let counts = walk_counts(&host, anchor, order).map_err(|e| (2, e.to_string()))?;
            let value = json!({
                "anchor": anchor_json,
                "counts": counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            emit(&value, output.format(), |_| {
                format!(
                    "counts {:?}",
                    counts.iter().map(|c| c.to_string()).collect::<Vec<_>>()
                )
            });
            Ok(())
        }
        Command::Trace {
            host,
            codegree,
            edge_vars,
            output,
        } => {
            let host = load_host(&host)?;
            check_feasible(&host, codegree)?;
            let pipe = Pipeline::new(&host, codegree);
            let mut obj = serde_json::Map::new();
            for d in 1..=codegree {
                let t = pipe.trace_polynomial(d);
                if edge_vars {
                    let j = t.to_json();
                    obj.insert(
                        d.to_string(),
                        j.get(d.to_string()).cloned().unwrap_or(json!({})),
                    );
                } else {
                    let value = t.eval_all_ones(codegree).coeff(d).clone();
                    obj.insert(d.to_string(), json!(rat_to_string(&value)));
                }
            }
            let value = serde_json::Value::Object(obj);
            emit(&value, output.format(), |v| {
                serde_json::to_string_pretty(v).unwrap()
            });
            Ok(())
        }
        Command::RootSeries {
            host,
            order,
            output,
        } => {
            let host = load_host(&host)?;
            check_feasible(&host, order)?;
            let pipe = Pipeline::new(&host, order);
            let rs = pipe.root_series(order);
            let agreement = rs.agree();
            let value = json!({
                "order": order,
                "series": rs.via_root.to_json(),
                "agreement": agreement,
            });
            if !agreement {
                println!("{}", serde_json::to_string(&value).unwrap());
                return Err((3, "root-series routes disagree".to_string()));
            }
            emit(&value, output.format(), |_| {
                format!(
                    "root series = {}\nagreement: true",
                    series_text(&rs.via_root)
                )
            });
            Ok(())
        }
        Command::Verify { suite } => {
            let suites: Vec<&str> = if suite == "all" {
                heappoly::verify::SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let mut all_passed = true;
            for name in suites {
                let Some(report) = heappoly::verify::run_suite(name) else {
                    return Err((1, format!("unknown suite {name:?}")));
                };
                for check in &report.checks {
                    let status = if check.passed { "PASS" } else { "FAIL" };
                    if check.detail.is_empty() {
                        println!("{status} {} :: {}", report.suite, check.name);
                    } else {
                        println!(
                            "{status} {} :: {} :: {}",
                            report.suite, check.name, check.detail
                        );
                    }
                    all_passed &= check.passed;
                }
            }
            if all_passed {
                Ok(())
            } else {
                Err((2, "verification failed".to_string()))
            }
        }
    }
}

fn emit(value: &serde_json::Value, format: Format, text: impl Fn(&serde_json::Value) -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(value).unwrap()),
        Format::Text => println!("{}", text(value)),
    }
}
