//! `didp`: solve YAML models, convert benchmark instances, compute metrics.

mod report;

use clap::{Args, Parser, Subcommand};
use didp::benchmarks::{parse_instance, Instance, MdkpInstance, ProblemClass};
use didp::metrics::{optimality_gap, primal_integral};
use didp::search::{solve, Status};
use didp::yaml;
use didp::NumericType;
use report::{ParamsEcho, RunReport};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "didp", version, about = "Domain-independent dynamic programming solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a model given as YAML domain and problem files.
    Solve(SolveArgs),
    /// Convert a benchmark instance in its text format to YAML files.
    Convert(ConvertArgs),
    /// Optimality gap between a primal and a dual bound.
    Gap(GapArgs),
    /// Primal integral of an event log read as CSV lines `time,cost`.
    Integral(IntegralArgs),
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    domain: PathBuf,
    #[arg(long)]
    problem: PathBuf,
    /// Solver configuration; all keys optional.
    #[arg(long, env = "DIDP_CONFIG")]
    config: Option<PathBuf>,
    /// Where to write the solution; standard output if omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Seconds; overrides `time_limit` in the configuration.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Where to write the run report as JSON; standard error if omitted.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Best known cost, for the primal integral.
    #[arg(long)]
    reference: Option<f64>,
    /// Write the primal improvements as CSV `time,cost`.
    #[arg(long)]
    events: Option<PathBuf>,
    /// Suppress the report unless `--report` is given.
    #[arg(long)]
    quiet: bool,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    #[arg(long)]
    class: String,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    domain: PathBuf,
    #[arg(long)]
    problem: PathBuf,
    /// Use the continuous cost type (MDKP only; required for fractional data).
    #[arg(long)]
    continuous: bool,
}

#[derive(Debug, Args)]
struct GapArgs {
    #[arg(long, allow_hyphen_values = true)]
    primal: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    dual: Option<f64>,
}

#[derive(Debug, Args)]
struct IntegralArgs {
    /// CSV file of `time,cost` lines; `-` reads standard input.
    #[arg(long)]
    events: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    reference: Option<f64>,
    #[arg(long)]
    horizon: f64,
    /// Time at which infeasibility was proved.
    #[arg(long)]
    infeasible_at: Option<f64>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Yaml {
        path: PathBuf,
        source: Box<yaml::YamlError>,
    },
    #[error(transparent)]
    Load(Box<yaml::YamlError>),
    #[error(transparent)]
    Benchmark(#[from] didp::benchmarks::BenchmarkError),
    #[error(transparent)]
    Search(#[from] didp::search::SearchError),
    #[error(transparent)]
    Metrics(#[from] didp::metrics::MetricsError),
    #[error("{path}: {message}")]
    Csv { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
}

impl From<yaml::YamlError> for CliError {
    fn from(e: yaml::YamlError) -> Self {
        CliError::Load(Box::new(e))
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        return std::io::read_to_string(std::io::stdin()).map_err(|source| CliError::Io {
            path: path.into(),
            source,
        });
    }
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn exit_code(status: Status) -> u8 {
    match status {
        Status::Optimal | Status::Infeasible => 0,
        Status::FeasibleNotProved => 2,
        Status::NoSolutionFound => 3,
    }
}

fn run_solve(args: &SolveArgs) -> Result<u8, CliError> {
    let config = match &args.config {
        Some(path) => yaml::parse_solver_config(&read(path)?).map_err(|source| CliError::Yaml {
            path: path.clone(),
            source: Box::new(source),
        })?,
        None => yaml::SolverConfig::default(),
    };
    let model = yaml::load(&read(&args.domain)?, &read(&args.problem)?)?;
    let kind = config.solver()?;
    let mut params = config.params(model.cost.cost_type)?;
    if let Some(t) = args.time_limit {
        if t.is_nan() || t < 0.0 {
            return Err(CliError::Usage(format!("--time-limit must be nonnegative, got {}", t)));
        }
        params.time_limit = Some(t);
    }

    let solution = solve(&model, kind, &params)?;
    let text = yaml::write_solution(&solution);
    match &args.output {
        Some(path) => write(path, &text)?,
        None => print!("{}", text),
    }
    if let Some(path) = &args.events {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Csv {
            path: path.clone(),
            message: e.to_string(),
        };
        w.write_record(["time", "cost"]).map_err(io)?;
        for (time, cost) in &solution.primal_events {
            w.write_record([time.to_string(), cost.to_string()]).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Csv {
            path: path.clone(),
            message: e.to_string(),
        })?;
        write(path, &String::from_utf8_lossy(&bytes))?;
    }

    let instance = args
        .problem
        .file_stem()
        .map_or_else(|| args.problem.display().to_string(), |s| s.to_string_lossy().into_owned());
    let report = RunReport::new(instance, kind, ParamsEcho::from(&params), &solution, args.reference)?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match &args.report {
        Some(path) => write(path, &(json + "\n"))?,
        None if !args.quiet => eprintln!("{}", json),
        None => {}
    }
    Ok(exit_code(solution.status))
}

fn run_convert(args: &ConvertArgs) -> Result<u8, CliError> {
    let class: ProblemClass = args.class.parse()?;
    if args.continuous && class != ProblemClass::Mdkp {
        return Err(CliError::Usage("--continuous only applies to mdkp".into()));
    }
    let mut instance = parse_instance(class, &read(&args.input)?)?;
    if let Instance::Mdkp(m) = &instance {
        if m.cost_type == NumericType::Continuous && !args.continuous {
            return Err(CliError::Usage(
                "mdkp instance has fractional values; pass --continuous".into(),
            ));
        }
        if args.continuous {
            instance = Instance::Mdkp(MdkpInstance::new(
                m.profit.clone(),
                m.weight.clone(),
                m.capacity.clone(),
                NumericType::Continuous,
            )?);
        }
    }
    let model = instance.build()?;
    write(&args.domain, &yaml::export_domain(&model)?)?;
    write(&args.problem, &yaml::export_problem(&model)?)?;
    Ok(0)
}

fn read_events(path: &Path) -> Result<Vec<(f64, f64)>, CliError> {
    let text = read(path)?;
    let bad = |line: usize, message: String| CliError::Csv {
        path: path.into(),
        message: format!("line {}: {}", line, message),
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut events = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(|e| bad(k + 1, e.to_string()))?;
        if k == 0 && record.iter().eq(["time", "cost"]) {
            continue;
        }
        if record.len() != 2 {
            return Err(bad(k + 1, format!("expected `time,cost`, got {} fields", record.len())));
        }
        let number = |s: &str| s.parse::<f64>().map_err(|_| bad(k + 1, format!("`{}` is not a number", s)));
        events.push((number(&record[0])?, number(&record[1])?));
    }
    Ok(events)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Solve(args) => run_solve(&args),
        Command::Convert(args) => run_convert(&args),
        Command::Gap(args) => {
            println!("{}", optimality_gap(args.primal, args.dual));
            Ok(0)
        }
        Command::Integral(args) => {
            let events = read_events(&args.events)?;
            let p = primal_integral(&events, args.reference, args.horizon, args.infeasible_at)?;
            println!("{}", p);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}
