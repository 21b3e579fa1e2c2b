use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand};
use immlab::analysis::{chromatic_number, clique_number, find_hole_in_range, independence_number, is_free};
use immlab::gen::{generate, GenSpec};
use immlab::oracle::{brute_force_immersion, max_immersion_order, OracleBudget};
use immlab::{verify_certificate, CertificateViolation, Error, Graph, ImmersionCertificate, Pattern};
use immlab_cli::dot::to_dot;
use immlab_cli::report::{exit_code, solve, Method, SolveReport};
use immlab_cli::suite::{run_suite, Suite};
use serde_json::{json, Map, Value};

/// Clique immersions in graphs with independence number at most two.
#[derive(Parser, Debug)]
#[command(name = "immlab", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print α, ω, χ, the shortest hole and pattern freeness.
    Analyze { graph: PathBuf },
    /// Build a clique immersion certificate.
    Solve {
        graph: PathBuf,
        /// auto, forbholes, house, owh, k4, k4minus, vergara:<pattern> or oracle
        #[arg(long, default_value = "auto")]
        method: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Also compute α, ω and χ (χ only for n <= 24) for the report.
        #[arg(long)]
        stats: bool,
    },
    /// Check a certificate against a graph.
    Verify {
        graph: PathBuf,
        cert: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Generate an instance from a JSON spec or from flags.
    Gen {
        /// GenSpec JSON, inline or as @file.
        #[arg(long, conflicts_with = "family")]
        spec: Option<String>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        max_bag: Option<usize>,
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long)]
        max_tries: Option<usize>,
        /// Graph output; ground truth goes to `<out>.truth.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded suite and summarise.
    Bench {
        suite: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Summary JSON destination.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive immersion search on a small graph.
    Oracle {
        graph: PathBuf,
        /// Test one order instead of searching for the largest.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value_t = 6)]
        max_t: usize,
        #[arg(long, default_value_t = 200_000_000)]
        node_limit: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Error that already carries its exit code.
struct Exit(i32, anyhow::Error);

impl From<anyhow::Error> for Exit {
    fn from(e: anyhow::Error) -> Self {
        let code = e.downcast_ref::<Error>().map_or(2, exit_code);
        Exit(code, e)
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        Exit(exit_code(&e), e.into())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code as u8),
        Err(Exit(code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code as u8)
        }
    }
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Graph::parse(&text)?)
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn run(cmd: Cmd) -> Result<i32, Exit> {
    match cmd {
        Cmd::Analyze { graph } => analyze(&read_graph(&graph)?),
        Cmd::Solve {
            graph,
            method,
            out,
            dot,
            stats,
        } => cmd_solve(&graph, &method, out.as_deref(), dot.as_deref(), stats),
        Cmd::Verify { graph, cert, dot } => cmd_verify(&graph, &cert, dot.as_deref()),
        Cmd::Gen {
            spec,
            family,
            n,
            seed,
            pattern,
            kind,
            k,
            max_bag,
            alpha,
            max_tries,
            out,
        } => {
            let spec: GenSpec = match spec {
                Some(s) => {
                    let text = match s.strip_prefix('@') {
                        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {p}"))?,
                        None => s,
                    };
                    serde_json::from_str(&text).map_err(Error::from)?
                }
                None => {
                    let mut m = Map::new();
                    m.insert("family".into(), json!(family.unwrap_or_else(|| "alpha2".into())));
                    m.insert("seed".into(), json!(seed));
                    let opt = [
                        ("n", n.map(Value::from)),
                        ("pattern", pattern.map(Value::from)),
                        ("kind", kind.map(Value::from)),
                        ("k", k.map(Value::from)),
                        ("max_bag", max_bag.map(Value::from)),
                        ("alpha", alpha.map(Value::from)),
                        ("max_tries", max_tries.map(Value::from)),
                    ];
                    for (key, v) in opt {
                        if let Some(v) = v {
                            m.insert(key.into(), v);
                        }
                    }
                    serde_json::from_value(Value::Object(m)).map_err(Error::from)?
                }
            };
            cmd_gen(&spec, out.as_deref())
        }
        Cmd::Bench {
            suite,
            count,
            seed,
            jobs,
            out,
        } => {
            let suite: Suite = suite.parse()?;
            let summary = run_suite(suite, count, seed, jobs)?;
            for r in &summary.reports {
                let status = if r.passed() { "ok" } else { "FAIL" };
                let order = r.order.map_or("-".into(), |o| o.to_string());
                println!(
                    "{:<20} n={:<3} order={:<3} {:<28} {:>9.2}ms {status}",
                    r.instance, r.n, order, r.method, r.wall_ms
                );
                for f in &r.failures {
                    println!("    {f}");
                }
            }
            println!(
                "{}: {} passed, {} failed, {} claim violations",
                summary.suite,
                summary.passed,
                summary.failed,
                summary.violations.len()
            );
            if let Some(out) = out {
                write(&out, &serde_json::to_string_pretty(&summary).map_err(Error::from)?)?;
            }
            Ok(if !summary.violations.is_empty() {
                3
            } else if summary.failed > 0 {
                1
            } else {
                0
            })
        }
        Cmd::Oracle {
            graph,
            t,
            max_n,
            max_t,
            node_limit,
            out,
        } => {
            let g = read_graph(&graph)?;
            let budget = OracleBudget {
                max_n,
                max_t: t.map_or(max_t, |t| t.max(max_t)),
                node_limit,
            };
            let cert = match t {
                Some(t) => brute_force_immersion(&g, t, &budget)?,
                None => Some(max_immersion_order(&g, &budget)?.1),
            };
            match cert {
                Some(c) => {
                    println!("order {}", c.order);
                    if let Some(out) = out {
                        write(&out, &c.to_json_string())?;
                    }
                    Ok(0)
                }
                None => {
                    println!("no immersion of K{}", t.unwrap_or(0));
                    Ok(1)
                }
            }
        }
    }
}

fn analyze(g: &Graph) -> Result<i32, Exit> {
    let alpha = independence_number(g)?;
    let (omega, _) = clique_number(g)?;
    let chi = if g.n() <= 24 {
        Some(chromatic_number(g)?.0)
    } else {
        None
    };
    let hole = (4..=g.n()).find_map(|l| find_hole_in_range(g, l, l));
    let mut free = Map::new();
    for p in Pattern::ALL {
        free.insert(p.name().into(), json!(is_free(g, p)?));
    }
    let report = json!({
        "n": g.n(),
        "m": g.edge_count(),
        "graph_sha256": g.sha256(),
        "alpha": alpha,
        "alpha_at_most_two": alpha <= 2,
        "omega": omega,
        "chi": chi,
        "shortest_hole": hole,
        "free": free,
    });
    println!("{}", serde_json::to_string_pretty(&report).map_err(Error::from)?);
    Ok(0)
}

fn cmd_solve(path: &Path, method: &str, out: Option<&Path>, dot: Option<&Path>, stats: bool) -> Result<i32, Exit> {
    let g = read_graph(path)?;
    let method: Method = method.parse()?;
    let start = Instant::now();
    let solved = solve(&g, method);
    let wall = start.elapsed();
    let (name, cert) = match solved {
        Ok(s) => s,
        Err(e) => {
            if let Error::ClaimViolation(v) = &e {
                let dump = sidecar(out.unwrap_or(path), ".violation.json");
                write(&dump, &serde_json::to_string_pretty(v).map_err(Error::from)?)?;
                eprintln!("counterexample written to {}", dump.display());
            }
            return Err(e.into());
        }
    };
    let mut report = SolveReport::new(path.display().to_string(), &g, name, wall).with_certificate(&g, &cert);
    if stats {
        report.alpha = Some(independence_number(&g)?);
        report.omega = Some(clique_number(&g)?.0);
        if g.n() <= 24 {
            report.chi = Some(chromatic_number(&g)?.0);
        }
    }
    if let Some(out) = out {
        write(out, &cert.to_json_string())?;
    }
    if let Some(dot) = dot {
        write(dot, &to_dot(&g, Some(&cert)))?;
    }
    println!("{}", serde_json::to_string_pretty(&report).map_err(Error::from)?);
    Ok(if report.verified { 0 } else { 1 })
}

fn cmd_verify(graph: &Path, cert: &Path, dot: Option<&Path>) -> Result<i32, Exit> {
    let g = read_graph(graph)?;
    let text = fs::read_to_string(cert).with_context(|| format!("reading {}", cert.display()))?;
    let c = ImmersionCertificate::from_json_str(&text)?;
    if let Some(dot) = dot {
        write(dot, &to_dot(&g, Some(&c)))?;
    }
    match verify_certificate(&g, &c) {
        Ok(()) => {
            println!("ok: K{} immersion", c.order);
            Ok(0)
        }
        Err(v @ CertificateViolation::HostMismatch { .. }) => Err(Exit(2, v.into())),
        Err(v) => {
            println!("rejected (condition {}): {v}", v.condition());
            Ok(1)
        }
    }
}

fn cmd_gen(spec: &GenSpec, out: Option<&Path>) -> Result<i32, Exit> {
    let generated = generate(spec)?;
    let graph = generated.graph.to_json_string();
    match out {
        Some(out) => {
            write(out, &graph)?;
            if generated.bags.is_some() || generated.universal.is_some() || generated.marked.is_some() {
                let mut truth = serde_json::to_value(&generated).map_err(Error::from)?;
                truth.as_object_mut().expect("struct").remove("graph");
                truth["spec"] = serde_json::to_value(spec).map_err(Error::from)?;
                let path = sidecar(out, ".truth.json");
                write(&path, &serde_json::to_string_pretty(&truth).map_err(Error::from)?)?;
            }
        }
        None => println!("{graph}"),
    }
    Ok(0)
}
