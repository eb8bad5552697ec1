use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use dyckgrid::grids::{Block, MixedSurfaceGridSpec};
use dyckgrid::io::{from_graph6, to_dot, to_graph6, FamilySpec};
use dyckgrid::minors::{verify_minor_model, MinorModel};
use dyckgrid::societies::{
    classify_transaction, depth, disk_rendition_exists, has_cross_with, linear_decomposition,
    validate_linear_decomposition, LinearDecomposition, LinearOutcome, Society,
};
use dyckgrid::tangles::{
    build_s_free_set_with, grow_wall, strong_linkedness_violation, tangle_axiom_violation, TangleOracle,
    WallConstants, WellLinkedWitness,
};
use dyckgrid::transforms::{normalize_to_dyck, StepKind, TransformStep};
use dyckgrid::treedec::TreeDecomposition;
use dyckgrid::treewidth::exact_treewidth_with;
use dyckgrid::wall::{dyck_wall_structure, elementary_wall};
use dyckgrid::{Caps, Error, Graph, Linkage, Rational};

#[derive(Parser)]
#[command(name = "dyckgrid", version, about = "Surface grids, minor certificates, tangles and societies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    Swap,
    Merge,
    Split,
    Normalize,
}

#[derive(Clone, Copy, ValueEnum)]
enum SocietyOp {
    Depth,
    Cross,
    Lindec,
    Validate,
    Classify,
}

#[derive(Clone, Copy, ValueEnum)]
enum TangleOp {
    Sfree,
    Stronglinked,
    Growwall,
    Axioms,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleSource {
    Wall,
    Dyckwall,
    FreeSet,
    WellLinked,
}

#[derive(Clone, Copy, ValueEnum)]
enum TdOp {
    Validate,
    Treewidth,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a family spec such as `dyck:h=1,c=1,k=3`.
    Gen {
        spec: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write vertex labels as JSON to this file.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Run a transformation and print its plan and certificate.
    Transform {
        #[arg(long, value_enum)]
        lemma: Lemma,
        /// Source mixed surface grid, e.g. `msg:k=27,h={3},c={2}`.
        #[arg(long)]
        spec: String,
        /// Target order; must match the source order for single steps.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        pos: Option<usize>,
    },
    /// Verify a minor-model certificate.
    Verify {
        #[arg(long)]
        model: PathBuf,
    },
    /// Society analysis on a `{graph, omega}` JSON file.
    Society {
        #[arg(value_enum)]
        op: SocietyOp,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        theta: Option<usize>,
        /// Linkage `{paths}` for `classify`, decomposition for `validate`.
        #[arg(long)]
        with: Option<PathBuf>,
    },
    /// Well-linked sets, free sets and tangles.
    Tangle {
        #[arg(value_enum)]
        op: TangleOp,
        /// Graph file (JSON or graph6); alternatively `--spec`.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        spec: Option<String>,
        /// Comma-separated vertex list.
        #[arg(long)]
        set: Option<String>,
        #[arg(long, default_value = "2/3")]
        alpha: String,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum)]
        source: Option<OracleSource>,
    },
    /// Tree decompositions.
    Td {
        #[arg(value_enum)]
        op: TdOp,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        spec: Option<String>,
        #[arg(long)]
        td: Option<PathBuf>,
    },
    /// A random society for testing, `{graph, omega}`.
    RandomSociety {
        #[arg(long)]
        vertices: usize,
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        #[arg(long)]
        boundary: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Result of a command: output text and exit code.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn json(v: Value, ok: bool) -> Self {
        Outcome {
            text: v.to_string(),
            code: if ok { 0 } else { 1 },
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Malformed(_) => 2,
        Error::Precondition(_) => 3,
        Error::CapExceeded { .. } => 4,
        Error::Exhausted(_) | Error::Internal(_) => 1,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Error> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn load_graph(path: Option<&Path>, spec: Option<&str>) -> Result<Graph, Error> {
    match (path, spec) {
        (Some(p), None) => {
            let text = read(p)?;
            if text.trim_start().starts_with('{') {
                serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{}: {e}", p.display())))
            } else {
                from_graph6(text.trim())
            }
        }
        (None, Some(s)) => s.parse::<FamilySpec>()?.build(),
        _ => Err(Error::Malformed("give exactly one of --graph and --spec".into())),
    }
}

fn parse_set(s: Option<&str>) -> Result<Vec<usize>, Error> {
    let s = s.ok_or_else(|| Error::Malformed("--set is required".into()))?;
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| Error::Malformed(format!("bad vertex `{x}`"))))
        .collect()
}

fn need<T>(x: Option<T>, name: &str) -> Result<T, Error> {
    x.ok_or_else(|| Error::Malformed(format!("--{name} is required")))
}

fn mixed(spec: &str) -> Result<MixedSurfaceGridSpec, Error> {
    match spec.parse::<FamilySpec>()? {
        FamilySpec::Mixed(s) => {
            s.validate()?;
            Ok(s)
        }
        FamilySpec::Dyck(d) => d.to_mixed(),
        other => Err(Error::Malformed(format!("`{other}` is not a surface grid"))),
    }
}

fn gen(spec: &str, format: Format, labels: Option<&Path>) -> Result<Outcome, Error> {
    let spec: FamilySpec = spec.parse()?;
    let g = spec.build()?;
    if let Some(path) = labels {
        let l: Option<Vec<[usize; 2]>> = g.labels().map(|l| l.iter().map(|&(a, b)| [a, b]).collect());
        fs::write(path, json!({ "spec": spec.to_string(), "labels": l }).to_string())
            .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    }
    let text = match format {
        Format::Graph6 => to_graph6(&g),
        Format::Dot => to_dot(&g, "G").trim_end().to_string(),
        Format::Json => to_value(&g).to_string(),
    };
    Ok(Outcome { text, code: 0 })
}

fn transform(lemma: Lemma, spec: &str, k: Option<usize>, pos: Option<usize>) -> Result<Outcome, Error> {
    let source = mixed(spec)?;
    let single = |kind: StepKind, pos: usize| -> Result<(Vec<TransformStep>, MixedSurfaceGridSpec, MinorModel), Error> {
        if let Some(k) = k {
            if k * kind.blowup() != source.k {
                return Err(Error::Precondition(format!(
                    "target order {k} needs source order {}, got {}",
                    k * kind.blowup(),
                    source.k
                )));
            }
        }
        let step = TransformStep::plan(kind, &source, pos)?;
        let model = step.execute()?;
        let target = step.target_spec.clone();
        Ok((vec![step], target, model))
    };
    let (steps, target, model) = match lemma {
        Lemma::Swap => {
            let pos = need(pos, "pos")?;
            let kind = match (source.block(pos), source.block(pos + 1)) {
                (Block::Crosscap, Block::Handle) => StepKind::SwapRight,
                (Block::Handle, Block::Crosscap) => StepKind::SwapLeft,
                (a, b) => {
                    return Err(Error::Precondition(format!(
                        "positions {pos}, {} hold {a:?}, {b:?}, not a handle and a crosscap",
                        pos + 1
                    )))
                }
            };
            single(kind, pos)?
        }
        Lemma::Split => single(StepKind::Split, need(pos, "pos")?)?,
        Lemma::Merge => {
            let pos = match pos {
                Some(p) => p,
                None => {
                    let word = source.word();
                    let starts: Vec<usize> = (0..word.len().saturating_sub(2))
                        .filter(|&s| word[s..s + 3].iter().all(|&b| b == Block::Crosscap))
                        .map(|s| s + 2)
                        .collect();
                    match starts.as_slice() {
                        [p] => *p,
                        [] => return Err(Error::Precondition("no three consecutive crosscaps".into())),
                        _ => return Err(Error::Precondition(format!("crosscap triples start at {starts:?}; give --pos"))),
                    }
                }
            };
            single(StepKind::Merge3, pos)?
        }
        Lemma::Normalize => {
            let n = normalize_to_dyck(&source, need(k, "k")?)?;
            (n.steps, n.target.to_mixed()?, n.model)
        }
    };
    if let Err(v) = verify_minor_model(&model) {
        return Err(Error::Internal(format!("emitted certificate fails verification: {v}")));
    }
    let source_str = FamilySpec::Mixed(source).to_string();
    let target_str = FamilySpec::Mixed(target).to_string();
    let plan: Vec<Value> = steps
        .iter()
        .map(|s| {
            json!({
                "kind": to_value(&s.kind),
                "position": s.position,
                "blowup": s.blowup,
                "source_spec": FamilySpec::Mixed(s.source_spec.clone()).to_string(),
                "target_spec": FamilySpec::Mixed(s.target_spec.clone()).to_string(),
            })
        })
        .collect();
    let out = json!({
        "plan": plan,
        "target_spec": target_str,
        "certificate": {
            "source": source_str,
            "target": target_str,
            "branch_sets": model.branch_sets,
        },
    });
    Ok(Outcome::json(out, true))
}

fn verify(path: &Path) -> Result<Outcome, Error> {
    let v: Value = parse_json(path)?;
    let model = if v.get("host").is_some() {
        serde_json::from_value::<MinorModel>(v).map_err(|e| Error::Malformed(e.to_string()))?
    } else {
        let field = |name: &str| {
            v.get(name)
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Malformed(format!("certificate needs `{name}`")))
        };
        let host = field("source")?.parse::<FamilySpec>()?.build()?;
        let pattern = field("target")?.parse::<FamilySpec>()?.build()?;
        let branch_sets: Vec<Vec<usize>> = serde_json::from_value(
            v.get("branch_sets")
                .cloned()
                .ok_or_else(|| Error::Malformed("certificate needs `branch_sets`".into()))?,
        )
        .map_err(|e| Error::Malformed(e.to_string()))?;
        MinorModel::new(pattern, host, branch_sets)
    };
    Ok(match verify_minor_model(&model) {
        Ok(()) => Outcome::json(json!({ "valid": true }), true),
        Err(w) => Outcome::json(
            json!({ "valid": false, "violation": to_value(&w), "message": w.to_string() }),
            false,
        ),
    })
}

fn society(op: SocietyOp, input: &Path, theta: Option<usize>, with: Option<&Path>, caps: &Caps) -> Result<Outcome, Error> {
    let soc: Society = parse_json(input)?;
    Ok(match op {
        SocietyOp::Depth => Outcome::json(json!({ "depth": depth(&soc) }), true),
        SocietyOp::Cross => {
            let cross = has_cross_with(&soc, caps)?;
            let disk = disk_rendition_exists(&soc);
            let agree = cross.is_some() != disk;
            Outcome::json(
                json!({ "cross": to_value(&cross), "disk_rendition": disk, "consistent": agree }),
                agree,
            )
        }
        SocietyOp::Lindec => match linear_decomposition(&soc, need(theta, "theta")?)? {
            LinearOutcome::Decomposition(ld) => {
                let report = validate_linear_decomposition(&soc, &ld);
                Outcome::json(json!({ "decomposition": to_value(&ld), "report": to_value(&report) }), true)
            }
            LinearOutcome::Transaction(t) => Outcome::json(json!({ "transaction": to_value(&t), "order": t.order() }), true),
        },
        SocietyOp::Validate => {
            let ld: LinearDecomposition = parse_json(need(with, "with")?)?;
            let report = validate_linear_decomposition(&soc, &ld);
            let ok = report.valid;
            Outcome::json(to_value(&report), ok)
        }
        SocietyOp::Classify => {
            let t: Linkage = parse_json(need(with, "with")?)?;
            if !t.is_valid(&soc.graph) {
                return Err(Error::Precondition("the paths are not a linkage of the graph".into()));
            }
            let class = classify_transaction(&t, &soc.omega)?;
            Outcome::json(json!({ "class": class.to_string() }), true)
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn tangle(
    op: TangleOp,
    graph: Option<&Path>,
    spec: Option<&str>,
    set: Option<&str>,
    alpha: &str,
    q: Option<usize>,
    k: Option<usize>,
    source: Option<OracleSource>,
    caps: &Caps,
) -> Result<Outcome, Error> {
    let alpha: Rational = alpha
        .parse()
        .map_err(|_| Error::Malformed(format!("alpha must be a fraction like 2/3, got `{alpha}`")))?;
    if let (TangleOp::Axioms, Some(OracleSource::Wall | OracleSource::Dyckwall)) = (op, source) {
        let spec: FamilySpec = need(spec, "spec")?.parse()?;
        let (oracle, g) = match spec {
            FamilySpec::Wall { k } => {
                let w = elementary_wall(k)?;
                (TangleOracle::from_wall(&w), w.graph)
            }
            FamilySpec::DyckWall(s) => {
                let d = dyck_wall_structure(&s)?;
                (TangleOracle::from_dyck_wall(&d), d.graph)
            }
            other => return Err(Error::Malformed(format!("`{other}` is not a wall spec"))),
        };
        let v = tangle_axiom_violation(&oracle, &g, caps)?;
        return Ok(Outcome::json(json!({ "order": oracle.order, "tangle": v.is_none(), "violation": to_value(&v) }), v.is_none()));
    }
    let g = load_graph(graph, spec)?;
    let s = parse_set(set)?;
    Ok(match op {
        TangleOp::Sfree => {
            let f = build_s_free_set_with(&g, &s, alpha, need(k, "k")?, caps)?;
            Outcome::json(json!({ "free_set": f }), true)
        }
        TangleOp::Stronglinked => {
            let w = strong_linkedness_violation(&g, &s, caps)?;
            Outcome::json(json!({ "strongly_linked": w.is_none(), "witness": to_value(&w) }), w.is_none())
        }
        TangleOp::Growwall => {
            let k = need(k, "k")?;
            let w = WellLinkedWitness::verified(&g, &s, need(q, "q")?, alpha, caps)?;
            let grown = grow_wall(&g, &w, k, WallConstants::small(k), caps)?;
            Outcome::json(to_value(&grown), true)
        }
        TangleOp::Axioms => {
            let oracle = match source {
                Some(OracleSource::FreeSet) => TangleOracle::from_free_set(&s)?,
                Some(OracleSource::WellLinked) => {
                    TangleOracle::from_well_linked(&WellLinkedWitness::verified(&g, &s, need(q, "q")?, alpha, caps)?)
                }
                _ => return Err(Error::Malformed("--source free-set|well-linked|wall|dyckwall is required".into())),
            };
            let v = tangle_axiom_violation(&oracle, &g, caps)?;
            Outcome::json(json!({ "order": oracle.order, "tangle": v.is_none(), "violation": to_value(&v) }), v.is_none())
        }
    })
}

fn td(op: TdOp, graph: Option<&Path>, spec: Option<&str>, td: Option<&Path>, caps: &Caps) -> Result<Outcome, Error> {
    let g = load_graph(graph, spec)?;
    Ok(match op {
        TdOp::Validate => {
            let d: TreeDecomposition = parse_json(need(td, "td")?)?;
            match d.validate(&g) {
                Ok(()) => Outcome::json(json!({ "valid": true, "width": d.width(), "adhesion": d.adhesion() }), true),
                Err(v) => Outcome::json(json!({ "valid": false, "violation": v.to_string() }), false),
            }
        }
        TdOp::Treewidth => {
            let (w, d) = exact_treewidth_with(&g, caps)?;
            Outcome::json(json!({ "treewidth": w, "decomposition": to_value(&d) }), true)
        }
    })
}

fn random_society(n: usize, density: f64, boundary: Option<usize>, seed: u64) -> Result<Outcome, Error> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Precondition(format!("density must lie in [0, 1], got {density}")));
    }
    let b = boundary.unwrap_or(n);
    if b > n {
        return Err(Error::Precondition(format!("boundary {b} exceeds {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(u, v);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    order.truncate(b);
    let soc = Society::new(g, order)?;
    Ok(Outcome::json(to_value(&soc), true))
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let caps = Caps::from_env()?;
    match cli.command {
        Command::Gen { spec, format, labels } => gen(&spec, format, labels.as_deref()),
        Command::Transform { lemma, spec, k, pos } => transform(lemma, &spec, k, pos),
        Command::Verify { model } => verify(&model),
        Command::Society { op, input, theta, with } => society(op, &input, theta, with.as_deref(), &caps),
        Command::Tangle {
            op,
            graph,
            spec,
            set,
            alpha,
            q,
            k,
            source,
        } => tangle(
            op,
            graph.as_deref(),
            spec.as_deref(),
            set.as_deref(),
            &alpha,
            q,
            k,
            source,
            &caps,
        ),
        Command::Td { op, graph, spec, td: file } => td(op, graph.as_deref(), spec.as_deref(), file.as_deref(), &caps),
        Command::RandomSociety {
            vertices,
            density,
            boundary,
            seed,
        } => random_society(vertices, density, boundary, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not an error of ours.
            let _ = writeln!(stdout, "{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
