//! The `graph-curvature` command line.
//!
//! Every command reads and writes plain text. With `--out`, the result goes to
//! that file and a run manifest is written next to it; without, the result
//! goes to stdout. Exit codes: 0 on success, 2 for usage errors, 3 for data
//! errors (unreadable or malformed input, degenerate statistics).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::{correlate, curvature_gap, BinLayout};
use crate::curvature::{compute, format_value, round_sig, Method};
use crate::detection::{accuracy, detect_communities, DetectionConfig, Direction, Threshold};
use crate::error::Error;
use crate::generators::ModelParams;
use crate::graph::{parse_edge_list, parse_labels, write_edge_list, write_labels, Graph, Partition};
use crate::manifest::RunManifest;

pub const USAGE_EXIT: i32 = 2;
pub const DATA_EXIT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "graph-curvature", version, about = "Edge curvature and curvature-based community detection")]
struct Cli {
    /// Worker threads for parallel curvature computation.
    #[arg(long, global = true, env = "GRAPH_CURVATURE_THREADS")]
    threads: Option<usize>,

    /// Report errors on stderr as a JSON object.
    #[arg(long, global = true)]
    json_errors: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a random graph model.
    Generate(GenerateArgs),
    /// Per-edge curvature values.
    Curvature(CurvatureArgs),
    /// Difference between mean within- and between-community curvature.
    Gap(GapArgs),
    /// Pearson correlation between two curvature notions.
    Correlate(CorrelateArgs),
    /// Community detection by sequential edge deletion.
    Detect(DetectArgs),
    /// Curvature histogram, split by community membership when labels are given.
    Hist(HistArgs),
    /// Re-run the command recorded in a manifest.
    Replay { manifest: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Model {
    Er,
    Bg,
    Sbm,
    Tsbm,
    Hbg,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    model: Model,
    /// Vertex count (er), side size (bg) or half-community size (hbg).
    #[arg(short)]
    n: Option<usize>,
    /// Number of communities.
    #[arg(short)]
    l: Option<usize>,
    /// Community size.
    #[arg(short)]
    k: Option<usize>,
    #[arg(short)]
    p: f64,
    #[arg(short)]
    q: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge list destination; labels go to `<out>.labels`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct MethodArgs {
    /// frc, afrc, afrc3, afrc4, afrc5 or orc.
    #[arg(long)]
    method: String,
    /// Longest cycle counted by afrc (3, 4 or 5).
    #[arg(long)]
    max_cycle: Option<usize>,
}

impl MethodArgs {
    fn resolve(&self) -> Result<Method, Error> {
        let method: Method = self.method.parse()?;
        match (self.max_cycle, method.cycle_len()) {
            (None, _) => Ok(method),
            (Some(n), Some(_)) if self.method == "afrc" => Method::afrc(n),
            (Some(n), Some(len)) if n == len => Ok(method),
            (Some(n), _) => {
                Err(Error::InvalidParameter(format!("--max-cycle {n} conflicts with --method {}", self.method)))
            }
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct CurvatureArgs {
    graph: PathBuf,
    #[command(flatten)]
    method: MethodArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GapArgs {
    graph: PathBuf,
    #[arg(long)]
    labels: PathBuf,
    #[command(flatten)]
    method: MethodArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CorrelateArgs {
    graph: PathBuf,
    #[arg(long)]
    method_a: String,
    #[arg(long)]
    method_b: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DetectArgs {
    graph: PathBuf,
    #[command(flatten)]
    method: MethodArgs,
    /// max or min; defaults to the usual direction for the method.
    #[arg(long)]
    direction: Option<String>,
    /// A number, `auto` (fit once) or `track` (refit after every deletion).
    #[arg(long, default_value = "auto")]
    threshold: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ground truth; adds an accuracy score to the report.
    #[arg(long)]
    labels: Option<PathBuf>,
    #[arg(long)]
    max_deletions: Option<usize>,
    /// Writes the detected partition as `vertex label` lines.
    #[arg(long)]
    partition_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct HistArgs {
    graph: PathBuf,
    #[command(flatten)]
    method: MethodArgs,
    #[arg(long, default_value_t = 20)]
    bins: usize,
    #[arg(long)]
    labels: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(msg) => Failure::Usage(msg),
            other => Failure::Data(other),
        }
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => USAGE_EXIT,
            Failure::Data(_) => DATA_EXIT,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Data(_) => "data",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Data(e) => e.to_string(),
        }
    }
}

/// What a command produced, before it is written out.
struct Product {
    text: String,
    params: Value,
    seeds: Vec<u64>,
    inputs: Vec<PathBuf>,
    /// Files written besides the main output.
    extra_outputs: Vec<PathBuf>,
}

impl Product {
    fn new(text: String, params: Value, inputs: Vec<PathBuf>) -> Self {
        Product { text, params, seeds: Vec::new(), inputs, extra_outputs: Vec::new() }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let json_errors = args.iter().any(|a| a == "--json-errors");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            return report(&Failure::Usage(e.render().to_string().trim_end().to_string()), json_errors, stderr);
        }
    };
    let argv: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    if let Command::Replay { manifest } = &cli.command {
        return match RunManifest::read(manifest) {
            Ok(m) => run(std::iter::once("graph-curvature".to_string()).chain(m.argv), stdout, stderr),
            Err(e) => report(&Failure::from(e), cli.json_errors, stderr),
        };
    }
    let start = Instant::now();
    let executed = match cli.threads {
        Some(0) => Err(Failure::Usage("--threads must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(cli.command)),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => execute(cli.command),
    };
    let outcome = executed.and_then(|(name, out, product)| emit(name, out, product, argv, start, stdout));
    match outcome {
        Ok(()) => 0,
        Err(f) => report(&f, cli.json_errors, stderr),
    }
}

fn report(f: &Failure, json_errors: bool, stderr: &mut dyn Write) -> i32 {
    let _ = if json_errors {
        writeln!(stderr, "{}", json!({"error": f.kind(), "message": f.message(), "exit_code": f.code()}))
    } else {
        writeln!(stderr, "error: {}", f.message())
    };
    f.code()
}

type Executed = (&'static str, Option<PathBuf>, Product);

fn execute(command: Command) -> Result<Executed, Failure> {
    Ok(match command {
        Command::Replay { .. } => unreachable!("replay is handled before execution"),
        Command::Generate(a) => {
            let out = a.out.clone();
            ("generate", out, generate(a)?)
        }
        Command::Curvature(a) => {
            let out = a.out.clone();
            ("curvature", out, curvature(a)?)
        }
        Command::Gap(a) => {
            let out = a.out.clone();
            ("gap", out, gap(a)?)
        }
        Command::Correlate(a) => {
            let out = a.out.clone();
            ("correlate", out, correlation(a)?)
        }
        Command::Detect(a) => {
            let out = a.out.clone();
            ("detect", out, detect(a)?)
        }
        Command::Hist(a) => {
            let out = a.out.clone();
            ("hist", out, hist(a)?)
        }
    })
}

fn emit(
    name: &str,
    out: Option<PathBuf>,
    product: Product,
    argv: Vec<String>,
    start: Instant,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    let wall_time_secs = start.elapsed().as_secs_f64();
    match out {
        None => stdout.write_all(product.text.as_bytes()).map_err(Error::from)?,
        Some(path) => {
            std::fs::write(&path, &product.text).map_err(Error::from)?;
            let mut outputs = vec![path.clone()];
            outputs.extend(product.extra_outputs);
            let manifest = RunManifest {
                command: name.to_string(),
                argv,
                params: product.params,
                seeds: product.seeds,
                inputs: product.inputs,
                outputs,
                version: env!("CARGO_PKG_VERSION").to_string(),
                wall_time_secs,
            };
            manifest.write(&path)?;
        }
    }
    Ok(())
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Data(Error::Io(annotate(e, path))))?;
    Ok(parse_edge_list(&text)?)
}

fn read_partition(path: &Path) -> Result<Partition, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Data(Error::Io(annotate(e, path))))?;
    Ok(parse_labels(&text)?)
}

fn annotate(e: std::io::Error, path: &Path) -> std::io::Error {
    std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))
}

fn need<T>(value: Option<T>, flag: &str, model: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("model {model} requires -{flag}")))
}

/// Rounds every float in a report to 12 significant digits.
fn rounded(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_f64() => {
            serde_json::Number::from_f64(round_sig(n.as_f64().unwrap())).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(rounded).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, rounded(v))).collect()),
        other => other,
    }
}

fn pretty(value: Value) -> String {
    serde_json::to_string_pretty(&rounded(value)).expect("json values serialize") + "\n"
}

fn generate(a: GenerateArgs) -> Result<Product, Failure> {
    let seed = a.seed;
    let params = match a.model {
        Model::Er => ModelParams::Er { n: need(a.n, "n", "er")?, p: a.p, seed },
        Model::Bg => ModelParams::Bg { n: need(a.n, "n", "bg")?, p: a.p, seed },
        Model::Sbm => ModelParams::Sbm {
            l: need(a.l, "l", "sbm")?,
            k: need(a.k, "k", "sbm")?,
            p: a.p,
            q: need(a.q, "q", "sbm")?,
            seed,
        },
        Model::Tsbm => ModelParams::Tsbm {
            l: need(a.l, "l", "tsbm")?,
            k: need(a.k, "k", "tsbm")?,
            p: a.p,
            q: need(a.q, "q", "tsbm")?,
            seed,
        },
        Model::Hbg => ModelParams::Hbg { n: need(a.n, "n", "hbg")?, p: a.p, q: need(a.q, "q", "hbg")?, seed },
    };
    let (g, truth) = params.generate()?;
    let mut product =
        Product::new(write_edge_list(&g), serde_json::to_value(&params).map_err(Error::from)?, Vec::new());
    product.seeds.push(seed);
    if let (Some(truth), Some(out)) = (truth, &a.out) {
        let mut name = out.as_os_str().to_owned();
        name.push(".labels");
        let labels = PathBuf::from(name);
        std::fs::write(&labels, write_labels(&truth)).map_err(Error::from)?;
        product.extra_outputs.push(labels);
    }
    Ok(product)
}

fn curvature(a: CurvatureArgs) -> Result<Product, Failure> {
    let method = a.method.resolve()?;
    let g = read_graph(&a.graph)?;
    let cv = compute(&g, method)?;
    let text = match a.format {
        Format::Csv => cv.to_csv(),
        Format::Json => serde_json::to_string_pretty(&cv.to_json()).map_err(Error::from)? + "\n",
    };
    let params = json!({"method": method, "format": format!("{:?}", a.format).to_lowercase()});
    Ok(Product::new(text, params, vec![a.graph]))
}

fn gap(a: GapArgs) -> Result<Product, Failure> {
    let method = a.method.resolve()?;
    let g = read_graph(&a.graph)?;
    let truth = read_partition(&a.labels)?;
    let report = curvature_gap(&compute(&g, method)?, &truth)?;
    let mut doc = serde_json::to_value(&report).map_err(Error::from)?;
    doc["method"] = json!(method);
    Ok(Product::new(pretty(doc), json!({"method": method}), vec![a.graph, a.labels]))
}

fn correlation(a: CorrelateArgs) -> Result<Product, Failure> {
    let ma: Method = a.method_a.parse()?;
    let mb: Method = a.method_b.parse()?;
    let g = read_graph(&a.graph)?;
    let report = correlate(&compute(&g, ma)?, &compute(&g, mb)?)?;
    let doc = serde_json::to_value(&report).map_err(Error::from)?;
    Ok(Product::new(pretty(doc), json!({"method_a": ma, "method_b": mb}), vec![a.graph]))
}

fn detect(a: DetectArgs) -> Result<Product, Failure> {
    let method = a.method.resolve()?;
    let direction = match &a.direction {
        Some(d) => d.parse()?,
        None => Direction::default_for(method),
    };
    let threshold: Threshold = a.threshold.parse()?;
    let mut cfg = DetectionConfig::new(method).direction(direction).threshold(threshold).seed(a.seed);
    cfg.max_deletions = a.max_deletions;
    let g = read_graph(&a.graph)?;
    let truth = a.labels.as_deref().map(read_partition).transpose()?;
    let result = detect_communities(&g, &cfg)?;
    let mut doc = result.to_json();
    doc["method"] = json!(method);
    doc["direction"] = json!(direction);
    if let Some(truth) = &truth {
        doc["accuracy"] = json!(accuracy(&result.partition, truth)?);
    }
    let mut inputs = vec![a.graph];
    inputs.extend(a.labels);
    let mut product = Product::new(pretty(doc), serde_json::to_value(&cfg).map_err(Error::from)?, inputs);
    product.seeds.push(a.seed);
    if let Some(path) = a.partition_out {
        std::fs::write(&path, write_labels(&result.partition)).map_err(Error::from)?;
        product.extra_outputs.push(path);
    }
    Ok(product)
}

fn hist(a: HistArgs) -> Result<Product, Failure> {
    let method = a.method.resolve()?;
    let g = read_graph(&a.graph)?;
    let cv = compute(&g, method)?;
    let all = cv.to_vec();
    let layout = BinLayout::spanning(&all, a.bins)?;
    let mut text = format!("# method={method}\n");
    let mut inputs = vec![a.graph];
    match &a.labels {
        Some(path) => {
            let truth = read_partition(path)?;
            let (within, between) = cv.split(&truth)?;
            let (w, b) = (layout.count(&within), layout.count(&between));
            text.push_str("lower,upper,within,between\n");
            for (k, lower) in layout.edges().enumerate() {
                text.push_str(&format!(
                    "{},{},{},{}\n",
                    format_value(lower),
                    format_value(lower + layout.width),
                    w[k],
                    b[k]
                ));
            }
            inputs.push(path.clone());
        }
        None => {
            let counts = layout.count(&all);
            text.push_str("lower,upper,count\n");
            for (k, lower) in layout.edges().enumerate() {
                text.push_str(&format!(
                    "{},{},{}\n",
                    format_value(lower),
                    format_value(lower + layout.width),
                    counts[k]
                ));
            }
        }
    }
    Ok(Product::new(text, json!({"method": method, "bins": a.bins}), inputs))
}
