use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use monohalf::consistency::ConsistencyChecker;
use monohalf::convexity::{hull_set_greedy, is_mconvex, mhull};
use monohalf::corpus::{random_corpus, CorpusSpec};
use monohalf::enumeration::{count_bound, list_all_fpt, version_space};
use monohalf::graph::{clique_number, clique_number_tilde};
use monohalf::learners::online::{
    halving_mistake_bound, run_stream, winnow_mistake_bound, Halving, OnlineLearner, WeightedMajority, Winnow,
};
use monohalf::learners::pac::{erm, pac_experiment};
use monohalf::learners::{active_learn, TargetOracle};
use monohalf::oracles;
use monohalf::shadow::{edge_shadow, is_halfspace};
use monohalf::{Graph, VertexSet};
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

mod bench;
mod io;

use io::{format_set, names, parse_set, read_graph, read_labels, read_set};

#[derive(Parser)]
#[command(name = "monohalf", version, about = "Monophonic halfspaces on graphs: checking, listing and learning")]
struct Cli {
    /// Edge-list file: one `u v` pair per line, `#` comments allowed.
    #[arg(long, global = true)]
    graph: Option<PathBuf>,
    /// Label file: one `vertex 0|1` pair per line.
    #[arg(long, global = true)]
    labels: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write the vertex name to identifier map as JSON.
    #[arg(long, global = true)]
    name_map: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Winnow,
    Halving,
    AgnosticWinnow,
    Wm,
}

#[derive(Subcommand)]
enum Command {
    /// Find a halfspace consistent with --labels (exit 2 if none exists).
    Check {
        /// Write the 2-SAT formula of every orientation tried to this directory.
        #[arg(long)]
        dump_dimacs: Option<PathBuf>,
    },
    /// List all halfspaces, or the version space of --labels.
    Enumerate,
    /// Monophonic hull of a vertex set.
    Hull {
        #[arg(long)]
        set: String,
    },
    /// Edge shadow z/v.
    Shadow { z: String, v: String },
    /// Whether a vertex set is m-convex and whether it is a halfspace.
    Convex {
        #[arg(long)]
        set: String,
    },
    /// Empirical risk minimizer for --labels.
    Erm,
    /// Learn a target halfspace with membership queries.
    Active {
        /// File listing the vertices of the target.
        #[arg(long)]
        target: PathBuf,
    },
    /// Run an online learner over a labeled stream.
    Online {
        #[arg(long, value_enum)]
        algo: Algo,
        /// A label file, or `random:SEED` for shuffled passes over V labeled by --target.
        #[arg(long)]
        stream: String,
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        passes: usize,
    },
    /// PAC experiment on --graph, or on the default corpus.
    Pac {
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        #[arg(long, default_value_t = 0.2)]
        delta: f64,
        #[arg(long, default_value_t = 500)]
        trials: usize,
    },
    /// Graph statistics.
    Stats,
    /// Brute-force reference values (small graphs only).
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Time enumeration and consistency checks across a corpus; CSV output.
    Bench {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Random samples checked per graph.
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Write a random corpus of connected graphs as edge lists.
    GenCorpus {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum OracleQuery {
    Interval { u: String, v: String },
    Shadow { z: String, v: String },
    Hull {
        #[arg(long)]
        set: String,
    },
    Halfspaces,
    Vc,
    Minhull,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = 4)]
    min_n: usize,
    #[arg(long, default_value_t = 10)]
    max_n: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [0.2, 0.4, 0.6])]
    probs: Vec<f64>,
    #[arg(long, default_value_t = 15)]
    per_cell: usize,
    #[arg(long, default_value_t = CorpusSpec::default().seed)]
    corpus_seed: u64,
}

impl CorpusArgs {
    fn spec(&self) -> CorpusSpec {
        CorpusSpec {
            sizes: (self.min_n..=self.max_n).collect(),
            probabilities: self.probs.clone(),
            per_cell: self.per_cell,
            seed: self.corpus_seed,
        }
    }
}

const EXIT_INCONSISTENT: u8 = 2;

struct Ctx {
    cli: Cli,
    out: String,
}

impl Ctx {
    fn json(&self) -> bool {
        self.cli.format == Format::Json
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn emit_json(&mut self, v: serde_json::Value) {
        let s = serde_json::to_string_pretty(&v).expect("json value");
        self.line(s);
    }

    fn graph(&self) -> Result<Graph> {
        let path = self.cli.graph.as_deref().context("--graph is required for this command")?;
        let g = read_graph(path)?;
        if let Some(map) = &self.cli.name_map {
            fs::write(map, serde_json::to_string_pretty(&g.name_map_json())?)
                .with_context(|| format!("writing {}", map.display()))?;
        }
        Ok(g)
    }

    fn labels(&self, g: &Graph) -> Result<monohalf::LabeledSample> {
        read_labels(g, self.cli.labels.as_deref().context("--labels is required for this command")?)
    }
}

fn vertex(g: &Graph, name: &str) -> Result<usize> {
    g.vertex_by_name(name).with_context(|| format!("unknown vertex {name:?}"))
}

fn bound_text(b: &Ratio<u128>) -> String {
    if b.is_integer() {
        b.to_integer().to_string()
    } else {
        format!("{}/{}", b.numer(), b.denom())
    }
}

fn run(ctx: &mut Ctx) -> Result<u8> {
    match &ctx.cli.command {
        Command::Check { dump_dimacs } => {
            let dump_dimacs = dump_dimacs.clone();
            let g = ctx.graph()?;
            let sample = ctx.labels(&g)?;
            sample.validate(&g)?;
            let (pos, neg) = sample.split(g.n());
            let checker = ConsistencyChecker::new(&g);
            let mut dumps = Vec::new();
            let found = checker.check_sets_traced(&pos, &neg, |u, v, f| {
                if dump_dimacs.is_some() {
                    dumps.push((format!("{}-{}.cnf", g.name(u), g.name(v)), f.to_dimacs()));
                }
            });
            if let Some(dir) = dump_dimacs {
                fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                for (file, text) in dumps {
                    fs::write(dir.join(&file), text).with_context(|| format!("writing {file}"))?;
                }
            }
            match &found {
                Some(h) if ctx.json() => {
                    ctx.emit_json(json!({ "consistent": true, "halfspace": names(&g, h.positive_side()) }))
                }
                Some(h) => ctx.line(format_set(&g, h.positive_side())),
                None if ctx.json() => ctx.emit_json(json!({ "consistent": false, "halfspace": null })),
                None => ctx.line("INCONSISTENT"),
            }
            Ok(if found.is_some() { 0 } else { EXIT_INCONSISTENT })
        }
        Command::Enumerate => {
            let g = ctx.graph()?;
            let hs = match &ctx.cli.labels {
                Some(_) => version_space(&g, &ctx.labels(&g)?)?,
                None => list_all_fpt(&g),
            };
            let bound = count_bound(&g);
            if ctx.json() {
                let sets: Vec<_> = hs.iter().map(|h| names(&g, h.positive_side())).collect();
                ctx.emit_json(json!({ "halfspaces": sets, "count": hs.len(), "bound": bound_text(&bound) }));
            } else {
                for h in &hs {
                    ctx.line(format_set(&g, h.positive_side()));
                }
                ctx.line(format!("count={} bound={}", hs.len(), bound_text(&bound)));
            }
            Ok(0)
        }
        Command::Hull { set } => {
            let g = ctx.graph()?;
            let x = parse_set(&g, set)?;
            let h = mhull(&g, &x);
            if ctx.json() {
                ctx.emit_json(json!({ "set": names(&g, &x), "hull": names(&g, &h) }));
            } else {
                ctx.line(format_set(&g, &h));
            }
            Ok(0)
        }
        Command::Shadow { z, v } => {
            let g = ctx.graph()?;
            let (zi, vi) = (vertex(&g, z)?, vertex(&g, v)?);
            let s = edge_shadow(&g, zi, vi)?;
            if ctx.json() {
                ctx.emit_json(json!({ "z": z, "v": v, "shadow": names(&g, &s) }));
            } else {
                ctx.line(format_set(&g, &s));
            }
            Ok(0)
        }
        Command::Convex { set } => {
            let g = ctx.graph()?;
            let x = parse_set(&g, set)?;
            let (convex, half) = (is_mconvex(&g, &x), is_halfspace(&g, &x));
            if ctx.json() {
                ctx.emit_json(json!({ "set": names(&g, &x), "convex": convex, "halfspace": half }));
            } else {
                ctx.line(format!("convex={convex} halfspace={half}"));
            }
            Ok(0)
        }
        Command::Erm => {
            let g = ctx.graph()?;
            let sample = ctx.labels(&g)?;
            let e = erm(&g, &sample)?;
            let risk = e.risk();
            if ctx.json() {
                ctx.emit_json(json!({
                    "halfspace": names(&g, e.halfspace.positive_side()),
                    "errors": e.errors,
                    "sample_size": e.sample_size,
                    "risk": format!("{}/{}", risk.numer(), risk.denom()),
                }));
            } else {
                ctx.line(format_set(&g, e.halfspace.positive_side()));
                ctx.line(format!("errors={} risk={}/{}", e.errors, risk.numer(), risk.denom()));
            }
            Ok(0)
        }
        Command::Active { target } => {
            let target = target.clone();
            let g = ctx.graph()?;
            let t = read_set(&g, &target)?;
            let mut oracle = TargetOracle::new(t);
            let out = active_learn(&g, &mut oracle)?;
            if ctx.json() {
                let mut lines = out.transcript.to_json_lines();
                let result = json!({
                    "kind": "result",
                    "halfspace": names(&g, out.halfspace.positive_side()),
                    "queries": out.queries,
                });
                lines.push_str(&result.to_string());
                ctx.line(lines.trim_end());
            } else {
                ctx.line(format_set(&g, out.halfspace.positive_side()));
                ctx.line(format!("queries={}", out.queries));
            }
            Ok(0)
        }
        Command::Online { algo, stream, target, passes } => {
            let (algo, stream, target, passes) = (*algo, stream.clone(), target.clone(), *passes);
            let g = ctx.graph()?;
            let rounds = match stream.strip_prefix("random:") {
                Some(seed) => {
                    let seed: u64 = seed.parse().context("random:SEED needs an integer seed")?;
                    let target = read_set(&g, target.as_deref().context("random streams need --target")?)?;
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let mut out = Vec::new();
                    for _ in 0..passes {
                        let mut order: Vec<usize> = (0..g.n()).collect();
                        order.shuffle(&mut rng);
                        out.extend(order.into_iter().map(|v| (v, target.contains(v))));
                    }
                    out
                }
                None => read_labels(&g, Path::new(&stream))?.entries,
            };
            let (mut learner, bound): (Box<dyn OnlineLearner>, Option<String>) = match algo {
                Algo::Winnow => (
                    Box::new(Winnow::realizable(&g)),
                    Some(format!("{:.3}", winnow_mistake_bound(clique_number(&g), g.m()))),
                ),
                Algo::Halving => {
                    let h = Halving::new(&g);
                    let b = halving_mistake_bound(h.version_space().len());
                    (Box::new(h), Some(b.to_string()))
                }
                Algo::AgnosticWinnow => (Box::new(Winnow::agnostic(&g)), None),
                Algo::Wm => (Box::new(WeightedMajority::new(&g)), None),
            };
            let t = run_stream(learner.as_mut(), &rounds)?;
            if ctx.json() {
                let lines = t.to_json_lines();
                ctx.line(lines.trim_end());
            } else {
                let bound = bound.map(|b| format!(" bound={b}")).unwrap_or_default();
                ctx.line(format!("algo={} rounds={} mistakes={}{bound}", learner.name(), t.rounds(), t.mistakes));
            }
            Ok(0)
        }
        Command::Pac { eps, delta, trials } => {
            let (eps, delta, trials) = (*eps, *delta, *trials);
            let graphs = match &ctx.cli.graph {
                Some(_) => vec![ctx.graph()?],
                None => random_corpus(&CorpusSpec::default()).into_iter().map(|c| c.graph).collect(),
            };
            if !(0.0 < eps && eps < 1.0 && 0.0 < delta && delta < 1.0) {
                bail!("--eps and --delta must lie strictly between 0 and 1");
            }
            let report = pac_experiment(&graphs, eps, delta, trials, ctx.cli.seed);
            if ctx.json() {
                ctx.emit_json(serde_json::to_value(&report)?);
            } else {
                let mean = report.trials.iter().map(|t| t.true_error).sum::<f64>() / report.trials.len().max(1) as f64;
                ctx.line(format!(
                    "graphs={} trials={} failures={} failure_rate={:.4} mean_true_error={mean:.4} eps={eps} delta={delta}",
                    graphs.len(),
                    report.trials.len(),
                    report.failures,
                    report.failure_rate()
                ));
            }
            Ok(0)
        }
        Command::Stats => {
            let g = ctx.graph()?;
            let hm = list_all_fpt(&g).len();
            let bound = count_bound(&g);
            let diam_m =
                (g.n() <= oracles::SUBSET_SCAN_LIMIT).then(|| oracles::monophonic_diameter_bf(&g));
            let stats = json!({
                "n": g.n(),
                "m": g.m(),
                "omega": clique_number(&g),
                "omega_tilde": clique_number_tilde(&g),
                "halfspaces": hm,
                "bound": bound_text(&bound),
                "hull_set_size": hull_set_greedy(&g).len(),
                "diameter": g.diameter(),
                "monophonic_diameter": diam_m,
            });
            if ctx.json() {
                ctx.emit_json(stats);
            } else {
                for (k, v) in stats.as_object().unwrap() {
                    let v = if v.is_null() { "n/a".to_string() } else { v.to_string().trim_matches('"').to_string() };
                    ctx.line(format!("{k}={v}"));
                }
            }
            Ok(0)
        }
        Command::Oracle { query } => {
            let g = ctx.graph()?;
            let value = match query {
                OracleQuery::Interval { u, v } => Answer::Set(oracles::interval_bf(&g, vertex(&g, u)?, vertex(&g, v)?)),
                OracleQuery::Shadow { z, v } => Answer::Set(oracles::shadow_bf(&g, vertex(&g, z)?, vertex(&g, v)?)),
                OracleQuery::Hull { set } => Answer::Set(oracles::hull_bf(&g, &parse_set(&g, set)?)),
                OracleQuery::Halfspaces => Answer::Sets(oracles::halfspaces_bf(&g)?),
                OracleQuery::Vc => Answer::Number(oracles::vc_dim_bf(&g)?),
                OracleQuery::Minhull => Answer::Set(oracles::min_hullset_bf(&g)?),
            };
            match value {
                Answer::Set(s) if ctx.json() => ctx.emit_json(json!(names(&g, &s))),
                Answer::Set(s) => ctx.line(format_set(&g, &s)),
                Answer::Sets(ss) if ctx.json() => {
                    ctx.emit_json(json!(ss.iter().map(|s| names(&g, s)).collect::<Vec<_>>()))
                }
                Answer::Sets(ss) => {
                    for s in &ss {
                        ctx.line(format_set(&g, s));
                    }
                }
                Answer::Number(k) => ctx.line(k.to_string()),
            }
            Ok(0)
        }
        Command::Bench { corpus, samples } => {
            let csv = bench::run(&corpus.spec(), *samples, ctx.cli.seed)?;
            ctx.out.push_str(&csv);
            Ok(0)
        }
        Command::GenCorpus { corpus, dir } => {
            let manifest = bench::write_corpus(&corpus.spec(), dir)?;
            if ctx.json() {
                ctx.emit_json(manifest);
            } else {
                let k = manifest.as_array().map_or(0, Vec::len);
                ctx.line(format!("wrote {k} graphs to {}", dir.display()));
            }
            Ok(0)
        }
    }
}

enum Answer {
    Set(VertexSet),
    Sets(Vec<VertexSet>),
    Number(usize),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut ctx = Ctx { cli, out: String::new() };
    let code = match run(&mut ctx) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let written = match &ctx.cli.out {
        Some(path) => fs::write(path, &ctx.out).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{}", ctx.out);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
