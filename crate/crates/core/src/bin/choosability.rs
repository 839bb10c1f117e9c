use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use choosability::clustered::{
    choose_clustered_absolute, choose_clustered_extension, choose_clustered_mad7_10,
    choose_clustered_maxdeg,
};
use choosability::defective::{choose_defective, DefectParams};
use choosability::generators::{generate, Family, GenSpec};
use choosability::io::{
    parse_colouring, parse_graph, parse_lists, parse_vertex_set, sha256_hex, uniform_lists,
    write_graph, RunReport,
};
use choosability::oracle::{oracle_colour, DEFAULT_CAP};
use choosability::presets::{preset_bounds, PresetClass};
use choosability::transversal::{independent_transversal, TransversalInstance};
use choosability::{
    mad, mad_at_least, verify, BoundKind, Certificate, Density, DensityCertificate, Error, Graph,
    ListAssignment, Solution,
};

#[derive(Parser)]
#[command(
    name = "choosability",
    version,
    about = "Defective and clustered list-colouring of sparse graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact maximum average degree with a densest witness.
    Mad(MadArgs),
    /// Colour with bounded defect.
    ColourDefective(DefectiveArgs),
    /// Colour with bounded clustering.
    ColourClustered(ClusteredArgs),
    /// Least defect or clustering by exhaustive search.
    Oracle(OracleArgs),
    /// Write a seeded graph.
    Gen(GenArgs),
    /// Colour counts and bounds for a graph class.
    Preset(PresetArgs),
    /// Check a colouring against lists and a bound.
    Verify(VerifyArgs),
    /// Independent transversal of a vertex partition.
    #[command(hide = true)]
    Transversal(TransversalArgs),
}

#[derive(Args)]
struct MadArgs {
    graph: PathBuf,
    /// Only consider subgraphs with at least this many vertices.
    #[arg(long, default_value_t = 1)]
    n0: usize,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ListSource {
    /// List file; without it, uniform random `k`-lists are drawn.
    #[arg(long)]
    lists: Option<PathBuf>,
    /// Colour pool for random lists; defaults to `2k`.
    #[arg(long)]
    pool: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct DefectiveArgs {
    graph: PathBuf,
    #[arg(long)]
    d: usize,
    /// List size; defaults to the least `k` with `mad(G, n0) < (2d+2)k/(d+2)`.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 1)]
    n0: usize,
    #[command(flatten)]
    source: ListSource,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Bounded maximum degree; clustering `ceil(19Δ/2) - 17`.
    Maxdeg,
    /// Absolute list sizes; clustering 9.
    Abs9,
    /// `k > 7 mad / 10`; clustering 9.
    #[value(name = "mad7_10")]
    Mad710,
    /// `k > 2 mad(G, n0) / 3`; clustering `max(ceil((n0-1)/k), 57k - 51)`.
    Ext,
}

#[derive(Args)]
struct ClusteredArgs {
    graph: PathBuf,
    #[arg(long, value_enum)]
    mode: Mode,
    /// List size; defaults to the least size the mode needs.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 1)]
    n0: usize,
    /// Stable set file for `abs9`.
    #[arg(long = "I")]
    stable: Option<PathBuf>,
    #[command(flatten)]
    source: ListSource,
}

#[derive(Clone, Copy, ValueEnum)]
enum Objective {
    Defect,
    Clustering,
}

impl From<Objective> for BoundKind {
    fn from(o: Objective) -> Self {
        match o {
            Objective::Defect => BoundKind::Defect,
            Objective::Clustering => BoundKind::Clustering,
        }
    }
}

#[derive(Args)]
struct OracleArgs {
    graph: PathBuf,
    #[arg(long, value_enum)]
    objective: Objective,
    /// List size for random lists when no list file is given.
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u128,
    #[command(flatten)]
    source: ListSource,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Exclusive mad bound such as `7/2`.
    #[arg(long)]
    target: Option<Density>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassName {
    #[value(name = "earthMoonDefective")]
    EarthMoonDefective,
    #[value(name = "earthMoonClustered")]
    EarthMoonClustered,
    #[value(name = "thickness")]
    Thickness,
    #[value(name = "gThickness")]
    GThickness,
    #[value(name = "stack")]
    Stack,
    #[value(name = "queue")]
    Queue,
}

#[derive(Args)]
struct PresetArgs {
    #[arg(value_enum)]
    class: ClassName,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    g: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    graph: PathBuf,
    #[arg(long)]
    lists: PathBuf,
    #[arg(long)]
    colouring: PathBuf,
    #[arg(long, value_enum)]
    kind: Objective,
    #[arg(long)]
    bound: usize,
}

#[derive(Args)]
struct TransversalArgs {
    /// Conflict graph.
    graph: PathBuf,
    /// One part per line.
    #[arg(long)]
    parts: PathBuf,
}

/// Failure of a subcommand: a library error or an I/O problem.
#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(e) => f.write_str(e),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: choosability::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match e {
        Error::Parse { line, message } => {
            Failure::Io(format!("{}:{line}: {message}", path.display()))
        }
        other => Failure::Lib(other),
    })
}

struct Input {
    graph: Graph,
    bytes: Vec<u8>,
}

fn load_graph(path: &Path) -> Result<Input, Failure> {
    let text = read(path)?;
    let graph = with_path(path, parse_graph(&text))?;
    Ok(Input {
        graph,
        bytes: text.into_bytes(),
    })
}

/// Lists from the file, or uniform `k`-lists; file contents are appended to
/// the digested input.
fn load_lists(input: &mut Input, source: &ListSource, k: usize) -> Result<ListAssignment, Failure> {
    let n = input.graph.vertex_count();
    match &source.lists {
        Some(path) => {
            let text = read(path)?;
            input.bytes.extend_from_slice(text.as_bytes());
            with_path(path, parse_lists(&text, n))
        }
        None => Ok(uniform_lists(
            n,
            k,
            source.pool.unwrap_or(2 * k),
            source.seed,
        )?),
    }
}

fn mad_of(g: &Graph, n0: usize) -> Result<Density, Failure> {
    if g.vertex_count() == 0 {
        return Ok(Density::zero());
    }
    Ok(mad_certificate(g, n0)?.density)
}

/// Flow-based for `n0 = 1`, exhaustive otherwise.
fn mad_certificate(g: &Graph, n0: usize) -> choosability::Result<DensityCertificate> {
    if n0 == 1 {
        mad(g)
    } else {
        mad_at_least(g, n0)
    }
}

/// What a colouring subcommand ran, for its report.
struct Job<'a> {
    command: &'a str,
    params: serde_json::Value,
    kind: BoundKind,
    bound: usize,
    started: Instant,
}

fn finish(
    job: Job,
    input: &Input,
    source: &ListSource,
    result: choosability::Result<Solution>,
) -> Outcome {
    let Job {
        command,
        params,
        kind,
        bound,
        started,
    } = job;
    let (colours, report, certificate) = match result {
        Ok(sol) => (sol.colouring.0, Some(sol.report), None),
        Err(Error::DensityViolation { witness, density }) => {
            (Vec::new(), None, Some(Certificate { witness, density }))
        }
        Err(e) => return Err(e.into()),
    };
    let report = RunReport {
        command: command.to_string(),
        input_sha256: sha256_hex(&input.bytes),
        params,
        seed: source.seed,
        colours,
        kind,
        bound,
        defect: report.as_ref().map_or(0, |r| r.defect),
        clustering: report.as_ref().map_or(0, |r| r.clustering),
        ok: report.as_ref().is_some_and(|r| r.ok),
        certificate,
        elapsed_us: started.elapsed().as_micros() as u64,
    };
    if let Some(path) = &source.json {
        write(
            path,
            &serde_json::to_string_pretty(&report).expect("report serialises"),
        )?;
    }
    match &report.certificate {
        Some(c) => println!(
            "not ok: {} vertices induce average degree {}, so the sparsity hypothesis fails",
            c.witness.len(),
            c.density
        ),
        None => println!(
            "{}: {kind} {} (bound {bound}) on {} vertices",
            if report.ok { "ok" } else { "not ok" },
            if kind == BoundKind::Defect {
                report.defect
            } else {
                report.clustering
            },
            input.graph.vertex_count()
        ),
    }
    Ok(report.ok)
}

fn run_mad(args: MadArgs) -> Outcome {
    let input = load_graph(&args.graph)?;
    let cert = mad_certificate(&input.graph, args.n0)?;
    let doc = json!({ "mad": cert.density, "witness": cert.witness, "n0": args.n0 });
    if let Some(path) = &args.json {
        write(path, &doc.to_string())?;
    }
    println!("{doc}");
    Ok(true)
}

fn run_defective(args: DefectiveArgs) -> Outcome {
    let started = Instant::now();
    let mut input = load_graph(&args.graph)?;
    let k = match args.k {
        Some(k) => k,
        None => {
            mad_of(&input.graph, args.n0)?.floor_mul(args.d as u64 + 2, 2 * args.d as u64 + 2)
                as usize
                + 1
        }
    };
    let lists = load_lists(&mut input, &args.source, k)?;
    let params = DefectParams::new(k, args.d, args.n0)?;
    let result = choose_defective(&input.graph, &lists, params, args.source.seed);
    let job = Job {
        command: "colour-defective",
        params: json!({ "k": k, "d": args.d, "n0": args.n0 }),
        kind: BoundKind::Defect,
        bound: params.final_defect(),
        started,
    };
    finish(job, &input, &args.source, result)
}

fn run_clustered(args: ClusteredArgs) -> Outcome {
    let started = Instant::now();
    let mut input = load_graph(&args.graph)?;
    let g = &input.graph;
    let delta = g.max_degree();
    let k = match (args.k, args.mode) {
        (Some(k), _) => k,
        (None, Mode::Maxdeg) => (delta + 2).div_ceil(3),
        (None, Mode::Abs9) => (2 * delta + 2).div_ceil(5).max(1),
        (None, Mode::Mad710) => mad_of(g, 1)?.floor_mul(7, 10) as usize + 1,
        (None, Mode::Ext) => mad_of(g, args.n0)?.floor_mul(2, 3) as usize + 1,
    };
    let stable = match &args.stable {
        Some(path) => {
            let text = read(path)?;
            input.bytes.extend_from_slice(text.as_bytes());
            with_path(path, parse_vertex_set(&text))?
        }
        None => Vec::new(),
    };
    let lists = load_lists(&mut input, &args.source, k)?;
    let g = &input.graph;
    let seed = args.source.seed;
    let (name, bound, result) = match args.mode {
        Mode::Maxdeg => {
            let bound = (19 * delta).div_ceil(2).saturating_sub(17);
            ("maxdeg", bound, choose_clustered_maxdeg(g, &lists, seed))
        }
        Mode::Abs9 => {
            let bound = if stable.is_empty() { 6 } else { 9 };
            (
                "abs9",
                bound,
                choose_clustered_absolute(g, &lists, &stable, seed),
            )
        }
        Mode::Mad710 => ("mad7_10", 9, choose_clustered_mad7_10(g, &lists, seed)),
        Mode::Ext => {
            let bound = choosability::clustered::extension_clustering_bound(k, args.n0);
            (
                "ext",
                bound,
                choose_clustered_extension(g, &lists, k, args.n0, seed),
            )
        }
    };
    let bound = result.as_ref().map_or(bound, |s| s.report.bound);
    let job = Job {
        command: "colour-clustered",
        params: json!({ "mode": name, "k": k, "n0": args.n0, "stable": stable }),
        kind: BoundKind::Clustering,
        bound,
        started,
    };
    finish(job, &input, &args.source, result)
}

fn run_oracle(args: OracleArgs) -> Outcome {
    let mut input = load_graph(&args.graph)?;
    let lists = load_lists(&mut input, &args.source, args.k)?;
    let result = oracle_colour(&input.graph, &lists, args.objective.into(), args.cap)?;
    let text = serde_json::to_string_pretty(&result).expect("oracle result serialises");
    if let Some(path) = &args.source.json {
        write(path, &text)?;
    }
    println!(
        "minimum {}: {} ({} nodes explored)",
        result.objective, result.minimum, result.explored
    );
    Ok(true)
}

fn run_gen(args: GenArgs) -> Outcome {
    let family: Family = args.family.parse()?;
    let mut spec = GenSpec::new(family, args.n, args.seed);
    spec.m = args.m;
    spec.t = args.t;
    spec.target = args.target;
    spec.max_degree = args.max_degree;
    let text = write_graph(&generate(&spec)?);
    match &args.output {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(true)
}

fn run_preset(args: PresetArgs) -> Outcome {
    let need = |x: Option<usize>, name: &str| {
        x.ok_or_else(|| Failure::Lib(Error::InvalidSpec(format!("this class needs --{name}"))))
    };
    let class = match args.class {
        ClassName::EarthMoonDefective => PresetClass::EarthMoonDefective,
        ClassName::EarthMoonClustered => PresetClass::EarthMoonClustered,
        ClassName::Thickness => PresetClass::Thickness {
            t: need(args.t, "t")?,
        },
        ClassName::GThickness => PresetClass::GThickness {
            t: need(args.t, "t")?,
            g: need(args.g, "g")?,
        },
        ClassName::Stack => PresetClass::Stack {
            k: need(args.k, "k")?,
        },
        ClassName::Queue => PresetClass::Queue {
            k: need(args.k, "k")?,
        },
    };
    let preset = preset_bounds(class)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&preset).expect("preset serialises")
    );
    Ok(true)
}

fn run_verify(args: VerifyArgs) -> Outcome {
    let input = load_graph(&args.graph)?;
    let n = input.graph.vertex_count();
    let lists = with_path(&args.lists, parse_lists(&read(&args.lists)?, n))?;
    let phi = with_path(&args.colouring, parse_colouring(&read(&args.colouring)?))?;
    let report = verify(&input.graph, &lists, &phi, args.kind.into(), args.bound)?;
    println!(
        "{}",
        serde_json::to_string(&report).expect("report serialises")
    );
    Ok(report.ok)
}

fn run_transversal(args: TransversalArgs) -> Outcome {
    let input = load_graph(&args.graph)?;
    let text = read(&args.parts)?;
    let parts = text
        .lines()
        .enumerate()
        .map(|(i, line)| {
            with_path(
                &args.parts,
                parse_vertex_set(line).map_err(|e| relined(e, i + 1)),
            )
        })
        .filter(|p| !matches!(p, Ok(p) if p.is_empty()))
        .collect::<Result<Vec<_>, _>>()?;
    let inst = TransversalInstance::new(input.graph, parts)?;
    let found = match independent_transversal(&inst) {
        Ok(t) => Some(t),
        Err(Error::NotFound) => None,
        Err(e) => return Err(e.into()),
    };
    println!("{}", json!({ "transversal": found }));
    Ok(found.is_some())
}

fn relined(e: Error, line: usize) -> Error {
    match e {
        Error::Parse { message, .. } => Error::Parse { line, message },
        other => other,
    }
}

fn main() -> ExitCode {
    let outcome = match Cli::parse().command {
        Command::Mad(a) => run_mad(a),
        Command::ColourDefective(a) => run_defective(a),
        Command::ColourClustered(a) => run_clustered(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Gen(a) => run_gen(a),
        Command::Preset(a) => run_preset(a),
        Command::Verify(a) => run_verify(a),
        Command::Transversal(a) => run_transversal(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
