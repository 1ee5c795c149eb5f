use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use nilgraph::census::{self, CensusFamily, CensusOptions};
use nilgraph::families::{
    predict_cycle_multi_label, predict_cycle_single_label, predict_double_star, predict_star,
    reduce_star, CycleSpec, FamilySpec, StarSpec,
};
use nilgraph::graph::{parse_graph, LabeledDigraph};
use nilgraph::liealg::NilAlgebra;
use nilgraph::report::{self, terms_text, vertex_terms_json};
use nilgraph::schreier::SchreierAction;
use nilgraph::spectra::{classify, ClassifyOptions, DEFAULT_EXPANSION_BOUND, DEFAULT_SAMPLES};
use nilgraph::verify::verify;
use nilgraph::Error;

/// Invariants of the 2-step nilpotent Lie algebra of an edge-labeled digraph.
#[derive(Parser)]
#[command(name = "nilgraph", version)]
struct Cli {
    /// Print human-readable text instead of JSON
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions, abelian factor and center complement of a graph
    Info {
        file: PathBuf,
        /// Also write the graph in DOT format
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Singularity classification of the restricted j(Z)
    Classify {
        file: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Generate a family member with its closed-form prediction
    Family {
        #[command(subcommand)]
        family: FamilyCommand,
        /// Write the generated graph to this file
        #[arg(long, global = true)]
        emit: Option<PathBuf>,
        /// Write the generated graph in DOT format
        #[arg(long, global = true)]
        emit_dot: Option<PathBuf>,
    },
    /// Equivalence classes and class-sum basis of a Schreier graph
    Schreier {
        #[command(subcommand)]
        what: SchreierCommand,
    },
    /// Compare predictions with computed abelian factors over a whole family
    Census {
        /// star, cycle, multi-cycle or double-star
        #[arg(long)]
        family: String,
        /// Largest cycle length, or the default bound on star sizes
        #[arg(long)]
        max_n: usize,
        /// Largest number of labels in a star
        #[arg(long)]
        max_k: Option<usize>,
        /// Largest multiplicity in a star
        #[arg(long)]
        max_m: Option<usize>,
        /// Labels available to multi-label cycles
        #[arg(long, default_value_t = 3)]
        max_labels: usize,
        /// Skip the singularity classification of each row
        #[arg(long)]
        no_classify: bool,
        /// Refuse enumerations with more graphs than this
        #[arg(long, default_value_t = 250_000)]
        limit: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Run every invariant check on one graph
    Verify { file: PathBuf },
}

#[derive(Args)]
struct Sampling {
    /// Random points tried when no certificate is found
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, env = "NILGRAPH_SEED", default_value_t = 0)]
    seed: u64,
    /// Largest restricted dimension expanded symbolically
    #[arg(long, default_value_t = DEFAULT_EXPANSION_BOUND)]
    bound: usize,
}

impl Sampling {
    fn options(&self) -> ClassifyOptions {
        ClassifyOptions {
            samples: self.samples,
            seed: self.seed,
            bound: self.bound,
        }
    }
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Star with ends grouped by label
    Star {
        /// Multiplicities, largest first, e.g. 3,2,1
        #[arg(long, value_delimiter = ',', required = true)]
        multiplicities: Vec<usize>,
        /// Orientation per label group, e.g. +-+,+-,+ (default all outward)
        #[arg(long)]
        delta: Option<String>,
    },
    /// Cycle with per-edge orientation and labels
    Cycle {
        /// Orientation string such as ++-+; its length is the cycle length
        #[arg(long)]
        orientation: Option<String>,
        /// Cycle length when all edges are standard
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated labels, one per edge (default a single label Z)
        #[arg(long, value_delimiter = ',')]
        labels: Option<Vec<String>>,
    },
    /// Two stars with joined centers
    DoubleStar {
        #[arg(long, value_delimiter = ',', required = true)]
        first: Vec<usize>,
        #[arg(long)]
        first_delta: Option<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        second: Vec<usize>,
        #[arg(long)]
        second_delta: Option<String>,
        #[arg(long, default_value = "Z1")]
        bridge_label: String,
        /// +1 for v0 -> w0, -1 for w0 -> v0
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        bridge_dir: i8,
    },
    /// Directed path with one label
    Path {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "Z")]
        label: String,
    },
    /// Any family member described by a JSON document
    Json { file: PathBuf },
}

#[derive(Subcommand)]
enum SchreierCommand {
    Classes { file: PathBuf },
    Xi { file: PathBuf },
}

enum Failure {
    Input(Error),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invariant(msg)) => {
            eprintln!("nilgraph: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("nilgraph: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_graph(path: &Path) -> Result<LabeledDigraph, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_graph(&text)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Info { file, emit_dot } => {
            let g = read_graph(file)?;
            if let Some(path) = emit_dot {
                write_file(path, &g.to_dot())?;
            }
            let r = report::info(&g);
            if cli.pretty {
                print_info(&r);
            } else {
                print_json(&r);
            }
            Ok(())
        }
        Command::Classify { file, sampling } => {
            let g = read_graph(file)?;
            let v = classify(&NilAlgebra::build(&g), sampling.options());
            let r = report::verdict(&v);
            if cli.pretty {
                println!("status: {:?}", v.status);
                for w in r["witnesses"].as_array().into_iter().flatten() {
                    println!("  Z = {}  det = {}", w["coeffs"], w["det"]);
                }
                println!("restricted dim: {}  symbolic: {}  samples: {}  seed: {}", v.restricted_dim, v.symbolic, v.samples, v.seed);
            } else {
                print_json(&r);
            }
            Ok(())
        }
        Command::Family { family, emit, emit_dot } => {
            let spec = family_spec(family)?;
            let g = spec.build()?;
            if let Some(path) = emit {
                write_file(path, &g.serialize())?;
            }
            if let Some(path) = emit_dot {
                write_file(path, &g.to_dot())?;
            }
            let r = json!({"graph": g.serialize(), "prediction": prediction(&spec, &g)?});
            if cli.pretty {
                print!("{}", g.serialize());
                println!("% prediction: {}", r["prediction"]);
            } else {
                print_json(&r);
            }
            Ok(())
        }
        Command::Schreier { what } => {
            let (file, xi) = match what {
                SchreierCommand::Classes { file } => (file, false),
                SchreierCommand::Xi { file } => (file, true),
            };
            let g = read_graph(file)?;
            let act = SchreierAction::new(&g)?;
            let r = report::schreier(&act);
            let mut out = serde_json::Map::new();
            let key = if xi { "xi" } else { "classes" };
            out.insert(key.into(), r[key].clone());
            if cli.pretty {
                for item in r[key].as_array().into_iter().flatten() {
                    if xi {
                        println!("{}", terms_text(item));
                    } else {
                        let names: Vec<&str> = item.as_array().into_iter().flatten().filter_map(Value::as_str).collect();
                        println!("{{{}}}", names.join(", "));
                    }
                }
            } else {
                print_json(&Value::Object(out));
            }
            Ok(())
        }
        Command::Census {
            family,
            max_n,
            max_k,
            max_m,
            max_labels,
            no_classify,
            limit,
            sampling,
        } => {
            let family: CensusFamily = family.parse()?;
            let mut opts = CensusOptions::new(family, *max_n);
            opts.max_k = *max_k;
            opts.max_m = *max_m;
            opts.max_labels = *max_labels;
            opts.classify = !no_classify;
            opts.limit = *limit;
            opts.classify_opts = ClassifyOptions {
                samples: sampling.samples,
                seed: sampling.seed,
                bound: sampling.bound.max(opts.classify_opts.bound),
            };
            let rows = census::run(&opts)?;
            let bad = rows.iter().filter(|r| !r.ok()).count();
            if cli.pretty {
                for r in &rows {
                    println!(
                        "{:<5} dim={} predicted={} {}",
                        if r.ok() { "ok" } else { "FAIL" },
                        r.abelian_dim,
                        r.predicted_dim,
                        r.spec
                    );
                }
                println!("{} rows, {} disagreements", rows.len(), bad);
            } else {
                print_json(&json!({"family": family, "rows": rows, "disagreements": bad}));
            }
            if bad > 0 {
                return Err(Failure::Invariant(format!("{bad} census rows disagree")));
            }
            Ok(())
        }
        Command::Verify { file } => {
            let g = read_graph(file)?;
            let r = verify(&g);
            if cli.pretty {
                for c in &r.checks {
                    println!("{:<5} {}{}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail.as_ref().map(|d| format!(": {d}")).unwrap_or_default());
                }
            } else {
                print_json(&json!({"passed": r.passed(), "checks": r.checks}));
            }
            if !r.passed() {
                return Err(Failure::Invariant(format!("failed checks: {}", r.failures().join(", "))));
            }
            Ok(())
        }
    }
}

fn print_info(r: &Value) {
    let d = &r["dims"];
    println!(
        "|V| = {}  |C| = {}  derived = {}  center = {}  abelian factor = {}",
        d["V"], d["C"], d["derived"], d["center"], d["abelian_factor"]
    );
    if let Some(a) = r["script_a"].as_array() {
        let names: Vec<&str> = a.iter().filter_map(Value::as_str).collect();
        println!("script A: {{{}}}", names.join(", "));
    }
    println!("abelian factor basis:");
    for v in r["abelian_factor_basis"].as_array().into_iter().flatten() {
        println!("  {}", terms_text(v));
    }
    println!("center complement (vector, squared norm):");
    for v in r["center_perp"].as_array().into_iter().flatten() {
        println!("  {}  {}", terms_text(&v["vector"]), v["norm_sq"].as_str().unwrap_or(""));
    }
    for w in r["warnings"].as_array().into_iter().flatten() {
        println!("warning: {}", w.as_str().unwrap_or(""));
    }
}

fn parse_signs(text: &str) -> Result<Vec<i8>, Error> {
    text.chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            other => Err(Error::InvalidSpec(format!("orientation character `{other}` is not + or -"))),
        })
        .collect()
}

fn star_spec(ms: &[usize], delta: Option<&str>) -> Result<StarSpec, Error> {
    match delta {
        None => {
            let s = StarSpec::outward(ms);
            s.validate()?;
            Ok(s)
        }
        Some(text) => {
            let groups = text.split(',').map(parse_signs).collect::<Result<Vec<_>, _>>()?;
            StarSpec::new(ms.to_vec(), groups)
        }
    }
}

fn family_spec(cmd: &FamilyCommand) -> Result<FamilySpec, Error> {
    Ok(match cmd {
        FamilyCommand::Star { multiplicities, delta } => FamilySpec::Star(star_spec(multiplicities, delta.as_deref())?),
        FamilyCommand::Cycle { orientation, n, labels } => {
            let orientation = match (orientation, n) {
                (Some(o), _) => parse_signs(o)?,
                (None, Some(n)) => vec![1; *n],
                (None, None) => match labels {
                    Some(l) => vec![1; l.len()],
                    None => return Err(Error::InvalidSpec("give --orientation, --n or --labels".into())),
                },
            };
            let labels = labels.clone().unwrap_or_else(|| vec!["Z".into(); orientation.len()]);
            FamilySpec::Cycle(CycleSpec {
                n: orientation.len(),
                orientation,
                labels,
            })
        }
        FamilyCommand::DoubleStar {
            first,
            first_delta,
            second,
            second_delta,
            bridge_label,
            bridge_dir,
        } => FamilySpec::DoubleStar {
            first: star_spec(first, first_delta.as_deref())?,
            second: star_spec(second, second_delta.as_deref())?,
            bridge_label: bridge_label.clone(),
            bridge_dir: *bridge_dir,
        },
        FamilyCommand::Path { n, label } => FamilySpec::Path { n: *n, label: label.clone() },
        FamilyCommand::Json { file } => {
            let text = std::fs::read_to_string(file).map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
            FamilySpec::from_json(&text)?
        }
    })
}

fn basis_json(a: &NilAlgebra, basis: &[Vec<nilgraph::Rational>]) -> Value {
    Value::Array(basis.iter().map(|v| vertex_terms_json(a, v)).collect())
}

fn prediction(spec: &FamilySpec, g: &LabeledDigraph) -> Result<Value, Error> {
    let a = NilAlgebra::build(g);
    Ok(match spec {
        FamilySpec::Star(s) => {
            let p = predict_star(s)?;
            let w = reduce_star(s)?;
            json!({
                "abelian_dim": p.abelian_dim,
                "abelian_basis": basis_json(&a, &p.abelian_basis),
                "center_perp": p.center_perp.iter().map(|(v, n)| json!({
                    "vector": vertex_terms_json(&a, v),
                    "norm_sq": report::rat_json(n),
                })).collect::<Vec<_>>(),
                "weighted_star": {"k": w.k, "weights": report::rats_json(&w.weights)},
            })
        }
        FamilySpec::DoubleStar { first, second, .. } => {
            let p = predict_double_star(first, second)?;
            json!({"abelian_dim": p.abelian_dim, "abelian_basis": basis_json(&a, &p.abelian_basis)})
        }
        FamilySpec::Cycle(c) if c.labels.iter().all(|l| *l == c.labels[0]) => {
            let p = predict_cycle_single_label(c)?;
            json!({"abelian_dim": p.abelian_dim, "abelian_basis": basis_json(&a, &p.abelian_basis)})
        }
        FamilySpec::Cycle(c) if c.orientation.iter().all(|&d| d == 1) => {
            let p = predict_cycle_multi_label(c)?;
            json!({
                "nontrivial": p.nontrivial,
                "witness": p.witness.as_ref().map(|w| vertex_terms_json(&a, w)),
                "shortcut_trivial": p.shortcut_trivial,
            })
        }
        _ => Value::Null,
    })
}
