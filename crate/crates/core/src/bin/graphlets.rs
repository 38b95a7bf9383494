//! Command-line front end.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indexmap::IndexMap;
use serde::Serialize;
use serde_json::{json, Value};

use graphlets::adaptive::{adaptive_estimate, AdaptiveConfig, LossKind};
use graphlets::distribution::{gfd, GfdVariant};
use graphlets::estimator::{estimate, exact_counts, EngineConfig, GraphletEstimate};
use graphlets::extremal::max_graphlet_estimate;
use graphlets::micro::{univariate_stats, MicroConfig, MicroCounter};
use graphlets::oracle::{brute_force_counts_capped, DEFAULT_CAP};
use graphlets::report::{counts_map, estimate_tsv, exact_map, exact_tsv, rows};
use graphlets::sampling::{SampleDesign, Weighting};
use graphlets::{read_graph_file, Error, Format, Graph, Graphlet};

#[derive(Parser)]
#[command(name = "graphlets", version, about = "Exact and sampled graphlet counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit tab-separated tables instead of JSON.
    #[arg(long, global = true)]
    tsv: bool,

    /// Suppress progress messages on standard error.
    #[arg(long, global = true)]
    quiet: bool,

    /// Worker threads.
    #[arg(long, global = true, env = "GRAPHLET_WORKERS", default_value_t = 1)]
    workers: usize,

    /// Input format.
    #[arg(long, global = true, value_enum, default_value_t = InputFormat::Auto)]
    format: InputFormat,

    /// Add wall-clock timing to JSON output under the `timing` key.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Auto,
    Edgelist,
    Mm,
    Canonical,
}

#[derive(Subcommand)]
enum Command {
    /// Exact counts of all 17 patterns.
    Exact { graph: PathBuf },
    /// Sampled estimates with variances and confidence bounds.
    Estimate {
        graph: PathBuf,
        #[command(flatten)]
        design: DesignArgs,
        /// Confidence level of the reported bounds.
        #[arg(long, default_value_t = 0.95)]
        ci: f64,
        /// Independent runs with seeds `seed, seed+1, ...`.
        #[arg(long, default_value_t = 1)]
        runs: u64,
    },
    /// Per-edge counts.
    Micro {
        graph: PathBuf,
        /// Edge as `U,V` vertex labels; repeatable. All edges when omitted.
        #[arg(long)]
        edge: Vec<String>,
        /// Fraction of each neighbor list scanned.
        #[arg(long, default_value_t = 1.0)]
        pe: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cap on neighbors scanned per vertex.
        #[arg(long)]
        max_scan: Option<usize>,
        /// Also report univariate statistics of this pattern over the edges.
        #[arg(long)]
        stats: Option<Graphlet>,
    },
    /// Sample until successive estimates agree within a bound.
    Adaptive {
        graph: PathBuf,
        #[arg(long)]
        bound: f64,
        #[arg(long, default_value_t = 200)]
        tmax: usize,
        #[arg(long, default_value = "max-relative")]
        loss: LossKind,
        #[arg(long)]
        phi0: Option<f64>,
        #[arg(long, default_value_t = 1e-6)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Graphlet frequency distribution.
    Gfd {
        graph: PathBuf,
        #[arg(long, default_value = "connected")]
        variant: GfdVariant,
        #[command(flatten)]
        design: DesignArgs,
    },
    /// Largest per-edge count of one pattern.
    Max {
        graph: PathBuf,
        #[arg(long)]
        pattern: Graphlet,
        #[command(flatten)]
        design: DesignArgs,
    },
    /// Brute-force counts by subset enumeration (small graphs only).
    Oracle {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Compare exact counts with the brute-force oracle.
    Verify {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

#[derive(Args, Clone)]
struct DesignArgs {
    /// Sampling probability in (0, 1].
    #[arg(long, conflicts_with = "samples")]
    prob: Option<f64>,
    /// Number of sampled edges.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_enum, default_value_t = DesignKind::Uniform)]
    design: DesignKind,
    #[arg(long)]
    replacement: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum DesignKind {
    Uniform,
    Kcore,
}

impl DesignArgs {
    /// `None` when neither `--prob` nor `--samples` is given.
    fn design(&self) -> Option<SampleDesign> {
        let base = match (self.prob, self.samples) {
            (Some(p), _) => SampleDesign::probability(p, self.seed),
            (None, Some(k)) => SampleDesign::size(k, self.seed),
            (None, None) => return None,
        };
        let weighting = match self.design {
            DesignKind::Uniform => Weighting::Uniform,
            DesignKind::Kcore => Weighting::KCore,
        };
        Some(base.with_weighting(weighting).with_replacement(self.replacement))
    }

    fn echo(&self) -> Value {
        json!({
            "prob": self.prob,
            "samples": self.samples,
            "weighting": self.design,
            "replacement": self.replacement,
            "seed": self.seed,
        })
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Lib(e) => match e {
                Error::Parse { .. } | Error::EmptyGraph | Error::Io(_) => 2,
                Error::Overflow(_) | Error::OracleCap { .. } => 3,
                _ => 1,
            },
            Failure::Mismatch => 4,
        }
    }
}

struct Ctx {
    cli_tsv: bool,
    quiet: bool,
    workers: usize,
    format: Format,
    timing: bool,
    start: Instant,
}

impl Ctx {
    fn load(&self, path: &Path) -> Result<Graph, Failure> {
        let g = read_graph_file(path, self.format)?;
        self.progress(&format!("loaded {}: n = {}, m = {}", path.display(), g.n(), g.m()));
        Ok(g)
    }

    fn progress(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }

    fn engine(&self) -> EngineConfig {
        EngineConfig::new(self.workers)
    }

    /// Prints `body` as pretty JSON, adding the volatile timing key on request.
    fn emit(&self, mut body: Value) {
        if self.timing {
            body["timing"] = json!({ "wall_seconds": self.start.elapsed().as_secs_f64() });
        }
        println!("{}", serde_json::to_string_pretty(&body).expect("serializable report"));
    }
}

fn graph_info(path: &Path, g: &Graph) -> Value {
    json!({ "path": path.display().to_string(), "n": g.n(), "m": g.m() })
}

fn estimate_body(est: &GraphletEstimate) -> Value {
    json!({
        "alpha": est.alpha,
        "sampled_edges": est.k_used,
        "counts": counts_map(est),
        "graphlets": rows(est),
    })
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Some(a), Value::Object(b)) = (a.as_object_mut(), b) {
        a.extend(b);
    }
    a
}

fn parse_edge(g: &Graph, spec: &str) -> Result<usize, Failure> {
    let (a, b) = spec
        .split_once(',')
        .ok_or_else(|| Failure::Usage(format!("edge {spec:?} is not of the form U,V")))?;
    let lookup = |l: &str| {
        g.vertex_by_label(l.trim())
            .ok_or_else(|| Failure::Usage(format!("no vertex labelled {l:?}")))
    };
    let (u, v) = (lookup(a)?, lookup(b)?);
    g.edge_id(u, v)
        .ok_or_else(|| Failure::Usage(format!("{spec} is not an edge")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let ctx = Ctx {
        cli_tsv: cli.tsv,
        quiet: cli.quiet,
        workers: cli.workers.max(1),
        format: match cli.format {
            InputFormat::Auto => Format::Auto,
            InputFormat::Edgelist => Format::EdgeList,
            InputFormat::Mm => Format::MatrixMarket,
            InputFormat::Canonical => Format::Canonical,
        },
        timing: cli.timing,
        start: Instant::now(),
    };
    match cli.command {
        Command::Exact { graph } => {
            let g = ctx.load(&graph)?;
            let est = exact_counts(&g, ctx.workers)?;
            let y = est.exact.ok_or(Error::Overflow("exact counts"))?;
            if ctx.cli_tsv {
                print!("{}", exact_tsv(&y));
            } else {
                ctx.emit(json!({
                    "command": "exact",
                    "graph": graph_info(&graph, &g),
                    "workers": ctx.workers,
                    "counts": exact_map(&y),
                }));
            }
        }
        Command::Estimate { graph, design, ci, runs } => {
            let g = ctx.load(&graph)?;
            let d = design
                .design()
                .ok_or_else(|| Failure::Usage("one of --prob or --samples is required".into()))?;
            if !(ci > 0.0 && ci < 1.0) {
                return Err(Failure::Usage(format!("--ci {ci} outside (0, 1)")));
            }
            if runs == 0 {
                return Err(Failure::Usage("--runs must be at least 1".into()));
            }
            let mut ests = Vec::new();
            for r in 0..runs {
                let mut d = d.clone();
                d.seed = design.seed.wrapping_add(r);
                ests.push(estimate(&g, &d, ctx.engine())?.with_alpha(1.0 - ci)?);
            }
            let head = json!({
                "command": "estimate",
                "graph": graph_info(&graph, &g),
                "design": design.echo(),
                "ci": ci,
                "workers": ctx.workers,
            });
            if runs == 1 {
                if ctx.cli_tsv {
                    print!("{}", estimate_tsv(&ests[0]));
                } else {
                    ctx.emit(merge(head, estimate_body(&ests[0])));
                }
            } else if ctx.cli_tsv {
                let names: Vec<_> = Graphlet::ALL.iter().map(|g| g.name()).collect();
                println!("seed\t{}", names.join("\t"));
                for (r, e) in ests.iter().enumerate() {
                    let vals: Vec<String> = e.x.0.iter().map(|v| v.to_string()).collect();
                    println!("{}\t{}", design.seed.wrapping_add(r as u64), vals.join("\t"));
                }
            } else {
                let n = ests.len() as f64;
                let mut mean: IndexMap<&str, f64> = IndexMap::new();
                let mut sd: IndexMap<&str, f64> = IndexMap::new();
                for p in Graphlet::ALL {
                    let m = ests.iter().map(|e| e.x[p]).sum::<f64>() / n;
                    let v = ests.iter().map(|e| (e.x[p] - m).powi(2)).sum::<f64>() / (n - 1.0);
                    mean.insert(p.name(), m);
                    sd.insert(p.name(), v.sqrt());
                }
                let per_run: Vec<Value> = ests
                    .iter()
                    .enumerate()
                    .map(|(r, e)| json!({ "seed": design.seed.wrapping_add(r as u64), "counts": counts_map(e) }))
                    .collect();
                ctx.emit(merge(
                    head,
                    json!({ "runs": per_run, "mean": mean, "sd": sd }),
                ));
            }
        }
        Command::Micro { graph, edge, pe, seed, max_scan, stats } => {
            let g = ctx.load(&graph)?;
            let edges: Vec<usize> = if edge.is_empty() {
                (0..g.m()).collect()
            } else {
                edge.iter().map(|s| parse_edge(&g, s)).collect::<Result<_, _>>()?
            };
            let cfg = MicroConfig { p_e: pe, seed, max_scan };
            let mut counter = MicroCounter::new(&g);
            let mut out = Vec::new();
            if ctx.cli_tsv {
                let names: Vec<_> = Graphlet::ALL.iter().map(|g| g.name()).collect();
                println!("u\tv\t{}", names.join("\t"));
            }
            for &e in &edges {
                let r = counter.count(e, &cfg)?;
                let (a, b) = g.edge(e);
                let labels = [g.label(a), g.label(b)];
                if ctx.cli_tsv {
                    let vals: Vec<String> = r.x.0.iter().map(|v| v.to_string()).collect();
                    println!("{}\t{}\t{}", labels[0], labels[1], vals.join("\t"));
                } else {
                    out.push(json!({
                        "edge": labels,
                        "x": r.x,
                        "omega": r.omega,
                        "p_e": r.p_e,
                        "seed": r.seed,
                    }));
                }
            }
            if !ctx.cli_tsv {
                let mut body = json!({
                    "command": "micro",
                    "graph": graph_info(&graph, &g),
                    "p_e": pe,
                    "seed": seed,
                    "max_scan": max_scan,
                    "rows": out,
                });
                if let Some(p) = stats {
                    let s = univariate_stats(&g, p, &edges, &cfg)?;
                    body["stats"] = json!({ "pattern": p.name(), "summary": s });
                }
                ctx.emit(body);
            }
        }
        Command::Adaptive { graph, bound, tmax, loss, phi0, epsilon, seed } => {
            let g = ctx.load(&graph)?;
            let cfg = AdaptiveConfig {
                beta: bound,
                t_max: tmax,
                epsilon,
                phi0,
                loss,
                seed,
                engine: ctx.engine(),
            };
            let (est, trace) = adaptive_estimate(&g, &cfg)?;
            if ctx.cli_tsv {
                println!("t\tK_t\tcum_samples\tdelta");
                for s in &trace.steps {
                    println!("{}\t{}\t{}\t{}", s.t, s.k_t, s.cumulative, s.delta);
                }
                println!();
                print!("{}", estimate_tsv(&est));
            } else {
                let head = json!({
                    "command": "adaptive",
                    "graph": graph_info(&graph, &g),
                    "config": cfg,
                    "stop": trace.stop,
                    "trace": trace.steps,
                });
                ctx.emit(merge(head, estimate_body(&est)));
            }
        }
        Command::Gfd { graph, variant, design } => {
            let g = ctx.load(&graph)?;
            let est = match design.design() {
                Some(d) => estimate(&g, &d, ctx.engine())?,
                None => exact_counts(&g, ctx.workers)?,
            };
            let dist = gfd(&est.x, variant)?;
            let names: Vec<_> = variant.patterns().iter().map(|p| p.name()).collect();
            if ctx.cli_tsv {
                println!("name\tfrequency");
                for (n, f) in names.iter().zip(&dist) {
                    println!("{n}\t{f}");
                }
            } else {
                let freq: IndexMap<_, _> = names.iter().copied().zip(dist.iter().copied()).collect();
                ctx.emit(json!({
                    "command": "gfd",
                    "graph": graph_info(&graph, &g),
                    "variant": variant,
                    "design": design.design().map(|_| design.echo()),
                    "distribution": freq,
                }));
            }
        }
        Command::Max { graph, pattern, design } => {
            let g = ctx.load(&graph)?;
            let d = design.design().unwrap_or_else(SampleDesign::exhaustive);
            let r = max_graphlet_estimate(&g, pattern, &d, ctx.workers)?;
            let labels = [g.label(r.endpoints.0), g.label(r.endpoints.1)];
            if ctx.cli_tsv {
                println!("pattern\tz\tu\tv\tevaluated");
                println!("{}\t{}\t{}\t{}\t{}", pattern.name(), r.z, labels[0], labels[1], r.evaluated);
            } else {
                ctx.emit(json!({
                    "command": "max",
                    "graph": graph_info(&graph, &g),
                    "pattern": pattern.name(),
                    "z": r.z,
                    "edge": labels,
                    "evaluated": r.evaluated,
                    "design": design.echo(),
                    "p": design.prob,
                    "seed": design.seed,
                }));
            }
        }
        Command::Oracle { graph, cap } => {
            let g = ctx.load(&graph)?;
            let y = brute_force_counts_capped(&g, cap)?;
            if ctx.cli_tsv {
                print!("{}", exact_tsv(&y));
            } else {
                ctx.emit(json!({
                    "command": "oracle",
                    "graph": graph_info(&graph, &g),
                    "counts": exact_map(&y),
                }));
            }
        }
        Command::Verify { graph, cap } => {
            let g = ctx.load(&graph)?;
            let truth = brute_force_counts_capped(&g, cap)?;
            let est = exact_counts(&g, ctx.workers)?;
            let y = est.exact.ok_or(Error::Overflow("exact counts"))?;
            let bad: Vec<String> = Graphlet::ALL
                .iter()
                .filter(|&&p| y[p] != truth[p])
                .map(|&p| format!("{}: exact {} vs oracle {}", p.name(), y[p], truth[p]))
                .collect();
            if bad.is_empty() {
                println!("PASS");
            } else {
                println!("FAIL");
                for b in &bad {
                    println!("{b}");
                }
                return Err(Failure::Mismatch);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Lib(e) => eprintln!("error: {e}"),
                Failure::Mismatch => {}
            }
            ExitCode::from(f.code())
        }
    }
}
