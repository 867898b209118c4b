//! Command-line surface: graph-file plumbing, the per-operation
//! subcommands, small-graph enumeration, and the corpus runner. Exit codes:
//! 0 pass/true, 1 fail/false (with witness in the report), 2 usage or
//! input errors.

pub mod corpus;
pub mod enumerate;
pub mod format;
pub mod report;

use clap::{Parser, Subcommand};

use squarecheck_core::{
    audit, catalog, check_strategy, chromatic_number, derive_residual_bounds, find_config,
    find_planar_embedding, greedy_order_certificate, initial_charges, is_f_choosable_with,
    solve_list_coloring, spacing_max_marks, CheckMode, ChooseOptions, ChooseOutcome,
    Configuration, Graph, ListAssignment, PlaneEmbedding, ReduceOutcome, SizeVector,
};

use corpus::{verdict_word, CorpusTasks};
use enumerate::{enumerate_subcubic, EnumFilter};
use format::{parse_graph_file, serialize_graph_file, GraphFile};
use report::{RunReport, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "squarecheck", about = "Distance-2 list-coloring verification toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the square of the input graph as a graph file
    Square { file: String },
    /// Basic structural statistics of the input graph
    Stats { file: String },
    /// Solve list coloring on the input graph as given
    Lcolor {
        file: String,
        /// Per-vertex lists, semicolon-separated: "1 2;2 3;1"
        #[arg(long)]
        lists: Option<String>,
    },
    /// Exact chromatic number of the input graph
    Chromatic { file: String },
    /// Complete f-choosability decision on the input graph
    Choosable {
        file: String,
        /// Comma-separated list sizes, one per vertex
        #[arg(long)]
        f: String,
        #[arg(long)]
        budget: Option<u64>,
        /// Skip automorphic duplicates of candidate assignments
        #[arg(long)]
        prune: bool,
    },
    /// Search for a greedy vertex order certifying f-choosability
    GreedyCert {
        file: String,
        #[arg(long)]
        f: String,
    },
    /// Verify reducibility of a catalog configuration (or "all")
    Reduce {
        config: String,
        #[arg(long)]
        prune: bool,
    },
    /// Stress-test a configuration's coloring strategy
    StrategyCheck {
        config: String,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Also replay the deterministic adversarial families
        #[arg(long)]
        adversarial: bool,
    },
    /// Initial charges and the effect of the discharging rules
    Discharge { file: String },
    /// Maximum mark packing on a cycle of the given length
    Spacing {
        #[arg(long)]
        length: usize,
    },
    /// Minimal-counterexample audit of an embedded graph
    Audit { file: String },
    /// Connected subcubic graphs up to isomorphism
    Enumerate {
        #[arg(long = "max-n")]
        max_n: usize,
        /// Comma-separated subset of {noC4C5, planar}
        #[arg(long, default_value = "")]
        filter: String,
    },
    /// Batch checks over enumerated graphs or graph files
    Corpus {
        /// Comma-separated subset of {chi-square, audit, sample-lists}
        #[arg(long)]
        tasks: String,
        #[arg(long = "max-n")]
        max_n: Option<usize>,
        #[arg(long, default_value = "")]
        filter: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Graph files to include in addition to the enumeration
        files: Vec<String>,
    },
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with success exits
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn load(path: &str) -> anyhow::Result<GraphFile> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_graph_file(&text)?)
}

fn parse_sizes(s: &str) -> anyhow::Result<SizeVector> {
    let sizes: Result<Vec<usize>, _> = s
        .split([',', ' '])
        .filter(|w| !w.is_empty())
        .map(|w| w.parse())
        .collect();
    Ok(SizeVector::new(sizes?)?)
}

fn parse_inline_lists(s: &str) -> anyhow::Result<ListAssignment> {
    let rows: Result<Vec<Vec<u32>>, _> = s
        .split(';')
        .map(|row| row.split_whitespace().map(|w| w.parse()).collect())
        .collect();
    Ok(ListAssignment::new(rows?)?)
}

fn parse_filter(s: &str) -> anyhow::Result<EnumFilter> {
    let mut f = EnumFilter::default();
    for word in s.split(',').map(str::trim).filter(|w| !w.is_empty()) {
        match word {
            "noC4C5" => f.no_c4_c5 = true,
            "planar" => f.planar = true,
            other => anyhow::bail!("unknown filter {other:?} (expected noC4C5, planar)"),
        }
    }
    Ok(f)
}

fn configs_by_name(name: &str) -> anyhow::Result<Vec<Configuration>> {
    if name.eq_ignore_ascii_case("all") {
        Ok(catalog())
    } else {
        find_config(name)
            .map(|c| vec![c])
            .ok_or_else(|| anyhow::anyhow!("unknown configuration {name:?}"))
    }
}

fn embedding_of(gf: &GraphFile) -> anyhow::Result<PlaneEmbedding> {
    if let Some(e) = &gf.embedding {
        return Ok(e.clone());
    }
    find_planar_embedding(&gf.graph)?
        .ok_or_else(|| anyhow::anyhow!("graph is not planar; no embedding exists"))
}

fn dispatch(cmd: Command) -> anyhow::Result<i32> {
    match cmd {
        Command::Square { file } => {
            let gf = load(&file)?;
            print!(
                "{}",
                serialize_graph_file(&GraphFile {
                    graph: gf.graph.square(),
                    embedding: None,
                    lists: None,
                })
            );
            Ok(EXIT_PASS)
        }
        Command::Stats { file } => {
            let gf = load(&file)?;
            let g = &gf.graph;
            let mut r = RunReport::new();
            r.push("n", g.vertex_count());
            r.push("m", g.edge_count());
            r.push("max_degree", g.max_degree());
            r.push("connected", g.is_connected());
            r.push(
                "girth",
                match g.girth().finite() {
                    Some(k) => k.to_string(),
                    None => "infinite".into(),
                },
            );
            let two: Vec<String> = (0..g.vertex_count())
                .filter(|&v| g.degree(v) == 2)
                .map(|v| v.to_string())
                .collect();
            r.push("two_vertices", two.join(","));
            let cuts: Vec<String> = g
                .articulation_points()
                .iter()
                .map(|v| v.to_string())
                .collect();
            r.push("cut_vertices", cuts.join(","));
            print!("{}", r.render());
            Ok(EXIT_PASS)
        }
        Command::Lcolor { file, lists } => {
            let gf = load(&file)?;
            let lists = match lists {
                Some(s) => parse_inline_lists(&s)?,
                None => gf
                    .lists
                    .clone()
                    .ok_or_else(|| anyhow::anyhow!("no lists given (file section or --lists)"))?,
            };
            anyhow::ensure!(
                lists.len() == gf.graph.vertex_count(),
                "need one list per vertex"
            );
            let mut r = RunReport::new();
            match solve_list_coloring(&gf.graph, &lists) {
                Some(c) => {
                    r.push("verdict", "colorable");
                    let words: Vec<String> = c
                        .colors()
                        .iter()
                        .map(|c| c.expect("solver colorings are total").to_string())
                        .collect();
                    r.push("coloring", words.join(","));
                    print!("{}", r.render());
                    Ok(EXIT_PASS)
                }
                None => {
                    r.push("verdict", "uncolorable");
                    print!("{}", r.render());
                    Ok(EXIT_FAIL)
                }
            }
        }
        Command::Chromatic { file } => {
            let gf = load(&file)?;
            let mut r = RunReport::new();
            r.push("chi", chromatic_number(&gf.graph)?);
            print!("{}", r.render());
            Ok(EXIT_PASS)
        }
        Command::Choosable {
            file,
            f,
            budget,
            prune,
        } => {
            let gf = load(&file)?;
            let f = parse_sizes(&f)?;
            let opts = ChooseOptions {
                budget,
                automorphism_pruning: prune,
                ..Default::default()
            };
            let mut r = RunReport::new();
            match is_f_choosable_with(&gf.graph, &f, &opts)? {
                ChooseOutcome::Choosable(stats) => {
                    r.push("verdict", "choosable");
                    r.push("candidates", stats.candidates_examined);
                    print!("{}", r.render());
                    Ok(EXIT_PASS)
                }
                ChooseOutcome::Bad(w) => {
                    r.push("verdict", "bad-assignment");
                    r.push("witness", render_lists(&w.lists));
                    r.push("candidates", w.candidates_examined);
                    print!("{}", r.render());
                    Ok(EXIT_FAIL)
                }
            }
        }
        Command::GreedyCert { file, f } => {
            let gf = load(&file)?;
            let f = parse_sizes(&f)?;
            let mut r = RunReport::new();
            match greedy_order_certificate(&gf.graph, &f)? {
                Some(order) => {
                    let words: Vec<String> = order.iter().map(|v| v.to_string()).collect();
                    r.push("verdict", "order-found");
                    r.push("order", words.join(","));
                    print!("{}", r.render());
                    Ok(EXIT_PASS)
                }
                None => {
                    r.push("verdict", "no-greedy-order");
                    print!("{}", r.render());
                    Ok(EXIT_FAIL)
                }
            }
        }
        Command::Reduce { config, prune } => {
            let mut r = RunReport::new();
            let mut code = EXIT_PASS;
            for c in configs_by_name(&config)? {
                let opts = ChooseOptions {
                    automorphism_pruning: prune,
                    ..Default::default()
                };
                let f = derive_residual_bounds(&c)?;
                let sizes: Vec<String> = f.sizes().iter().map(|s| s.to_string()).collect();
                r.push(format!("{}.f", c.name), sizes.join(","));
                match squarecheck_core::verify_reducible(&c, &opts)? {
                    ReduceOutcome::Certificate(cert) => {
                        r.push(format!("{}.verdict", c.name), "choosable");
                        r.push(
                            format!("{}.candidates", c.name),
                            cert.stats.candidates_examined,
                        );
                        if let Some(order) = cert.greedy_order {
                            let words: Vec<String> =
                                order.iter().map(|v| v.to_string()).collect();
                            r.push(format!("{}.greedy_order", c.name), words.join(","));
                        }
                    }
                    ReduceOutcome::Bad(w) => {
                        r.push(format!("{}.verdict", c.name), "bad-assignment");
                        r.push(format!("{}.witness", c.name), render_lists(&w.lists));
                        code = EXIT_FAIL;
                    }
                }
            }
            print!("{}", r.render());
            Ok(code)
        }
        Command::StrategyCheck {
            config,
            trials,
            seed,
            adversarial,
        } => {
            let mut r = RunReport::new();
            let mut failures = 0;
            for c in configs_by_name(&config)? {
                let mut modes = vec![("random", CheckMode::Random { trials, seed })];
                if adversarial {
                    modes.push(("adversarial", CheckMode::Adversarial));
                }
                for (label, mode) in modes {
                    let rep = check_strategy(&c, &mode)?;
                    let prefix = format!("{}.{label}", c.name);
                    r.push(format!("{prefix}.trials"), rep.trials);
                    r.push(format!("{prefix}.failures"), rep.failures);
                    for (branch, hits) in &rep.branch_hits {
                        r.push(format!("{prefix}.branch.{branch}"), hits);
                    }
                    for (lists, fail) in &rep.sample_failures {
                        r.push(
                            format!("{prefix}.failure"),
                            format!("{} @ {}: {}", fail.step, render_lists(lists), fail.reason),
                        );
                    }
                    failures += rep.failures;
                }
            }
            print!("{}", r.render());
            Ok(if failures == 0 { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Discharge { file } => {
            let gf = load(&file)?;
            let e = embedding_of(&gf)?;
            let initial = initial_charges(&e)?;
            let after = squarecheck_core::apply_rules(&e, &initial);
            let mut r = RunReport::new();
            r.push("total", initial.total());
            r.push("vertex_charges", render_rationals(&initial.vertex_charge));
            r.push("face_charges", render_rationals(&initial.face_charge));
            r.push("transfers", after.transfers.len());
            r.push("final_vertex_charges", render_rationals(&after.vertex_charge));
            r.push("final_face_charges", render_rationals(&after.face_charge));
            r.push("final_total", after.total());
            print!("{}", r.render());
            Ok(EXIT_PASS)
        }
        Command::Spacing { length } => {
            let mut r = RunReport::new();
            let max = spacing_max_marks(length)?;
            r.push("length", length);
            r.push("max_marks", max);
            r.push("budget", length / 4);
            print!("{}", r.render());
            Ok(if max <= length / 4 { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Audit { file } => {
            let gf = load(&file)?;
            let e = embedding_of(&gf)?;
            let report = audit(&e)?;
            let mut r = RunReport::new();
            for h in &report.hypothesis_failures {
                r.push("hypothesis_failure", h);
            }
            for p in &report.predicates {
                r.push(
                    format!("predicate.{}", p.name),
                    if p.holds { "holds" } else { "fails" },
                );
                if let Some(v) = &p.violation {
                    r.push(format!("predicate.{}.violation", p.name), v);
                }
            }
            r.push(
                "negative_charges",
                report.negative_vertices.len() + report.negative_faces.len(),
            );
            r.push("final_total", report.final_ledger.total());
            r.push("verdict", verdict_word(report.verdict));
            print!("{}", r.render());
            Ok(
                if report.verdict == squarecheck_core::AuditVerdict::AnomalousPass {
                    EXIT_FAIL
                } else {
                    EXIT_PASS
                },
            )
        }
        Command::Enumerate { max_n, filter } => {
            let filter = parse_filter(&filter)?;
            let graphs = enumerate_subcubic(max_n, filter)?;
            let mut r = RunReport::new();
            r.push("count", graphs.len());
            for (i, g) in graphs.iter().enumerate() {
                let edges: Vec<String> = g
                    .edges()
                    .iter()
                    .map(|(u, v)| format!("{u}-{v}"))
                    .collect();
                r.push(
                    format!("graph.{i}"),
                    format!("n={} {}", g.vertex_count(), edges.join(",")),
                );
            }
            print!("{}", r.render());
            Ok(EXIT_PASS)
        }
        Command::Corpus {
            tasks,
            max_n,
            filter,
            trials,
            seed,
            files,
        } => {
            let mut task_set = CorpusTasks::default();
            for word in tasks.split(',').map(str::trim).filter(|w| !w.is_empty()) {
                match word {
                    "chi-square" => task_set.chi_square = true,
                    "audit" => task_set.audit = true,
                    "sample-lists" => task_set.sample_lists = Some((trials, seed)),
                    other => anyhow::bail!(
                        "unknown task {other:?} (expected chi-square, audit, sample-lists)"
                    ),
                }
            }
            let mut graphs: Vec<Graph> = Vec::new();
            for path in &files {
                graphs.push(load(path)?.graph);
            }
            if let Some(n) = max_n {
                graphs.extend(enumerate_subcubic(n, parse_filter(&filter)?)?);
            }
            anyhow::ensure!(!graphs.is_empty(), "no graphs: give files or --max-n");
            let (report, ok) = corpus::run_corpus(&graphs, task_set);
            print!("{}", report.render());
            Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
        }
    }
}

fn render_lists(lists: &ListAssignment) -> String {
    let rows: Vec<String> = (0..lists.len())
        .map(|v| {
            let words: Vec<String> = lists.list(v).iter().map(|c| c.to_string()).collect();
            words.join(" ")
        })
        .collect();
    rows.join(";")
}

fn render_rationals(xs: &[squarecheck_core::Rational64]) -> String {
    let words: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    words.join(",")
}
