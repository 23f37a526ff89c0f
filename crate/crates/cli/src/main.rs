//! `turanlab` command-line front end.
//!
//! Exit status: 0 when the question was decided, 2 when a time limit left it
//! undecided, 1 for usage and input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use turanlab::canon::{automorphism_count, canonical_form, degree_sequence};
use turanlab::extremal::{density_series, ex_exact, ex_hom_exact, series_csv, SolverConfig};
use turanlab::families::{FamilySpec, LabeledGraph};
use turanlab::morphisms::{count_embeddings_within, find_embedding_within, find_homomorphism_within, verify_map};
use turanlab::verify::{self, Suite};
use turanlab::{Hypergraph, SearchLimits, SearchOutcome};

#[derive(Parser)]
#[command(name = "turanlab", version, about = "Turán problems for small uniform hypergraphs")]
struct Cli {
    /// Seconds per solve or search; 0 disables the limit.
    #[arg(long, global = true, env = "TURANLAB_TIME_LIMIT", default_value_t = 60.0)]
    time_limit: f64,
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Graph arguments are `.khg`/`.json` files or family specs such as `Z(k=3,l=4)`.
#[derive(Subcommand)]
enum Command {
    /// Write a construction as `khg v1` plus a label map.
    Construct {
        spec: String,
        /// Output path; defaults to `<spec>.khg`. Labels go to `<stem>.labels.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Summary statistics of a graph.
    Show {
        graph: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Whether a host contains none of the given patterns.
    Free {
        host: String,
        #[arg(required = true)]
        patterns: Vec<String>,
    },
    /// Homomorphism (or with --embedding, injective map) from pattern to host.
    Hom {
        pattern: String,
        host: String,
        /// `source:target`; the source may be a vertex index or a label.
        #[arg(long)]
        pin: Vec<String>,
        #[arg(long)]
        embedding: bool,
    },
    /// Labeled embeddings and unlabeled copies of a pattern.
    Count { host: String, pattern: String },
    /// ex(n, family).
    Ex {
        #[arg(required = true)]
        family: Vec<String>,
        #[arg(long)]
        n: usize,
    },
    /// ex_hom(t, F).
    Exhom {
        pattern: String,
        #[arg(long)]
        t: usize,
    },
    /// Density sequence ex(n)/C(n,k) as CSV.
    Series {
        #[arg(required = true)]
        family: Vec<String>,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// Add a decimal column next to the exact fraction.
        #[arg(long)]
        float: bool,
    },
    /// Run a named verification suite.
    Verify {
        /// part1-base-freeness, part2-pipeline, mubayi-bracket, monotonicity or homfamily-crosscheck.
        suite: String,
    },
}

/// Result of a command: the report and whether everything was decided.
struct Done {
    text: String,
    decided: bool,
    failed: bool,
}

impl Done {
    fn decided(text: String) -> Self {
        Done {
            text,
            decided: true,
            failed: false,
        }
    }
}

type Res<T> = Result<T, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn load(arg: &str) -> Res<LabeledGraph> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| format!("{arg}: {e}"))?;
        let graph = if path.extension().is_some_and(|x| x == "json") {
            Hypergraph::from_json(&text)
        } else {
            Hypergraph::from_khg(&text)
        }
        .map_err(|e| format!("{arg}: {e}"))?;
        return Ok(LabeledGraph::unlabeled(graph));
    }
    let spec: FamilySpec = arg.parse().map_err(|e| format!("{arg:?}: {e}"))?;
    spec.build().map_err(|e| format!("{spec}: {e}"))
}

fn load_all(args: &[String]) -> Res<Vec<Hypergraph>> {
    args.iter().map(|a| load(a).map(|g| g.graph)).collect()
}

fn parse_pins(pins: &[String], pattern: &LabeledGraph) -> Res<Vec<(u32, u32)>> {
    pins.iter()
        .map(|p| {
            let (a, b) = p
                .rsplit_once(':')
                .ok_or_else(|| format!("pin {p:?} is not source:target"))?;
            let src = a
                .parse()
                .ok()
                .or_else(|| pattern.vertex(a))
                .ok_or_else(|| format!("pin source {a:?} is neither an index nor a label"))?;
            let dst = b
                .parse()
                .map_err(|_| format!("pin target {b:?} is not a vertex index"))?;
            Ok((src, dst))
        })
        .collect()
}

impl Cli {
    fn solver(&self) -> SolverConfig {
        SolverConfig {
            time_limit: self.limit(),
            threads: self.threads.max(1),
            seed: self.seed,
            ..SolverConfig::default()
        }
    }

    fn limit(&self) -> Option<Duration> {
        (self.time_limit > 0.0).then(|| Duration::from_secs_f64(self.time_limit))
    }

    fn search(&self) -> SearchLimits {
        SearchLimits {
            deadline: self.limit().map(|d| Instant::now() + d),
            threads: self.threads.max(1),
        }
    }

    fn run(&self) -> Res<Done> {
        match &self.command {
            Command::Construct { spec, out } => construct(spec, out.as_deref()),
            Command::Show { graph, format } => show(graph, *format),
            Command::Free { host, patterns } => self.free(host, patterns),
            Command::Hom {
                pattern,
                host,
                pin,
                embedding,
            } => self.hom(pattern, host, pin, *embedding),
            Command::Count { host, pattern } => self.count(host, pattern),
            Command::Ex { family, n } => {
                let r = ex_exact(*n, &load_all(family)?, &self.solver()).map_err(err)?;
                Ok(Done {
                    decided: r.proven_optimal,
                    text: r.to_json(),
                    failed: false,
                })
            }
            Command::Exhom { pattern, t } => {
                let r = ex_hom_exact(*t, &load(pattern)?.graph, &self.solver()).map_err(err)?;
                Ok(Done {
                    decided: r.proven_optimal,
                    text: r.to_json(),
                    failed: false,
                })
            }
            Command::Series {
                family,
                n_min,
                n_max,
                float,
            } => {
                let fam = load_all(family)?;
                let k = fam[0].k();
                let series = density_series(k, &fam, *n_min, *n_max, &self.solver()).map_err(err)?;
                Ok(Done {
                    decided: series.iter().all(|p| p.proven),
                    text: series_csv(&series, *float),
                    failed: false,
                })
            }
            Command::Verify { suite } => {
                let suite: Suite = suite.parse().map_err(err)?;
                let report = verify::run(suite, &self.solver()).map_err(err)?;
                Ok(Done {
                    decided: !report.undecided(),
                    failed: report.failed(),
                    text: report.to_string(),
                })
            }
        }
    }

    fn free(&self, host: &str, patterns: &[String]) -> Res<Done> {
        let h = load(host)?.graph;
        let mut undecided = Vec::new();
        for (arg, p) in patterns.iter().zip(load_all(patterns)?) {
            match find_embedding_within(&p, &h, &[], &self.search()).map_err(err)? {
                SearchOutcome::Found(m) => {
                    return Ok(Done::decided(format!("contains {arg} at {:?}", m.image)));
                }
                SearchOutcome::Absent => {}
                SearchOutcome::Unknown => undecided.push(arg.as_str()),
            }
        }
        if undecided.is_empty() {
            Ok(Done::decided("free".into()))
        } else {
            Ok(Done {
                text: format!("unknown ({} undecided)", undecided.join(", ")),
                decided: false,
                failed: false,
            })
        }
    }

    fn hom(&self, pattern: &str, host: &str, pins: &[String], embedding: bool) -> Res<Done> {
        let p = load(pattern)?;
        let h = load(host)?.graph;
        let pin = parse_pins(pins, &p)?;
        let outcome = if embedding {
            find_embedding_within(&p.graph, &h, &pin, &self.search())
        } else {
            find_homomorphism_within(&p.graph, &h, &pin, &self.search())
        }
        .map_err(err)?;
        Ok(match outcome {
            SearchOutcome::Found(map) => {
                assert!(verify_map(&p.graph, &h, &map).unwrap_or(false));
                Done::decided(map.to_json())
            }
            SearchOutcome::Absent => Done::decided("absent".into()),
            SearchOutcome::Unknown => Done {
                text: "unknown".into(),
                decided: false,
                failed: false,
            },
        })
    }

    fn count(&self, host: &str, pattern: &str) -> Res<Done> {
        let h = load(host)?.graph;
        let p = load(pattern)?.graph;
        Ok(match count_embeddings_within(&h, &p, &self.search()).map_err(err)? {
            SearchOutcome::Found(labeled) => {
                let aut = automorphism_count(&p);
                Done::decided(
                    serde_json::to_string_pretty(&json!({
                        "embeddings": labeled,
                        "automorphisms": aut,
                        "copies": labeled / aut,
                    }))
                    .map_err(err)?,
                )
            }
            _ => Done {
                text: "unknown".into(),
                decided: false,
                failed: false,
            },
        })
    }
}

fn construct(spec: &str, out: Option<&Path>) -> Res<Done> {
    let parsed: FamilySpec = spec.parse().map_err(err)?;
    let g = parsed.build().map_err(err)?;
    let path = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from(format!("{parsed}.khg")));
    let labels = path.with_extension("labels.json");
    fs::write(&path, g.graph.to_khg()).map_err(|e| format!("{}: {e}", path.display()))?;
    fs::write(&labels, g.labels_json()).map_err(|e| format!("{}: {e}", labels.display()))?;
    Ok(Done::decided(format!(
        "{}: {} vertices, {} edges\n{}",
        path.display(),
        g.graph.n(),
        g.graph.edge_count(),
        labels.display()
    )))
}

fn show(arg: &str, format: Format) -> Res<Done> {
    let g = load(arg)?.graph;
    let form = canonical_form(&g);
    let degrees = degree_sequence(&g);
    let aut = automorphism_count(&g);
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "k": g.k(),
            "n": g.n(),
            "edges": g.edge_count(),
            "degree_sequence": degrees,
            "automorphisms": aut,
            "canonical_hash": form.stable_hash(),
        }))
        .map_err(err)?,
        Format::Text => format!(
            "k={} n={} edges={}\ndegrees {:?}\nautomorphisms {aut}\ncanonical {}",
            g.k(),
            g.n(),
            g.edge_count(),
            degrees,
            form.stable_hash()
        ),
    };
    Ok(Done::decided(text))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let done = match cli.run() {
        Ok(d) => d,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let mut text = done.text;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.output {
        Some(p) => {
            if let Err(e) = fs::write(p, &text) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if done.failed {
        ExitCode::from(1)
    } else if !done.decided {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
