use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use qedmagic::amplitude::{amplitude_matrix_gauge, exchange_antisymmetry_check};
use qedmagic::figures::{figure, Figure, FIGURES};
use qedmagic::limits::limit_matrix;
use qedmagic::linalg::{CVec, Mat4};
use qedmagic::magic::{pauli_expectations, MagicValue};
use qedmagic::pauli::two_qubit_paulis;
use qedmagic::scan::{classify, magic_distributions, ClassificationReport, Maximum};
use qedmagic::stabilizer::{concurrence, stabilizer, stabilizer_catalog};
use qedmagic::tables::{reproduce_table, Status, TableId, TableReport};
use qedmagic::verify::{verify_all, VerificationReport};
use qedmagic::{Error, KinematicPoint, Process, Regime, ScanConfig, Source, LAMBDA_ROUNDED, LAMBDA_PHYSICAL};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "qedmagic", version)]
#[command(about = "Magic (stabilizer Renyi entropy) of final spin states in tree-level QED scattering")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,

    #[command(subcommand)]
    command: Command,
}

/// Settings shared by every subcommand.
#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Worker threads (0 = one per core)
    #[arg(long, global = true, env = "QEDMAGIC_THREADS", default_value_t = 0)]
    threads: usize,

    /// Seed for randomized checks
    #[arg(long, global = true, env = "QEDMAGIC_SEED", default_value_t = 20240101)]
    seed: u64,

    /// Mass ratio preset: rounded (m_e/m_mu = 0.005) or physical (0.004836)
    #[arg(long, global = true, env = "QEDMAGIC_MODE", value_enum, default_value_t = Mode::Rounded)]
    mode: Mode,

    /// Mass ratio m_e/m_mu; overrides --mode
    #[arg(long, global = true, env = "QEDMAGIC_LAMBDA")]
    lambda: Option<f64>,

    /// Angular grid size N (theta_k = k pi / N, k = 1..N-1)
    #[arg(long, global = true, env = "QEDMAGIC_GRID", default_value_t = 180)]
    grid: usize,

    /// |p|/m_e for low-energy engine evaluations
    #[arg(long, global = true, env = "QEDMAGIC_MU_LOW", default_value_t = 1e-3)]
    mu_low: f64,

    /// High-energy engine evaluations use |p| = factor x heaviest mass
    #[arg(long, global = true, env = "QEDMAGIC_HIGH_ENERGY_FACTOR", default_value_t = 1e6)]
    high_energy_factor: f64,

    /// Relative energy above the muon-pair threshold
    #[arg(long, global = true, env = "QEDMAGIC_THRESHOLD_EPS", default_value_t = 1e-6)]
    threshold_eps: f64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Rounded,
    Physical,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// The 60 two-qubit stabilizer states
    Stabilizers {
        #[command(subcommand)]
        action: StabilizerAction,
    },
    /// Magic of a single two-qubit state
    Magic {
        #[command(subcommand)]
        action: MagicAction,
    },
    /// Spin-amplitude matrix from the spinor calculation
    Amplitude {
        #[arg(long)]
        process: Process,
        #[arg(long)]
        theta: f64,
        /// |p|/m_e; defaults to the --regime setting
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long, default_value = "high")]
        regime: Regime,
        /// Gauge parameter added to the photon propagator
        #[arg(long, default_value_t = 0.0)]
        gauge: f64,
        /// Divide out the global phase and scale
        #[arg(long)]
        phase_fixed: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Analytic limit-form amplitude matrix
    LimitMatrix {
        #[arg(long)]
        process: Process,
        #[arg(long)]
        regime: Regime,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
        theta: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Final-state magic over the angular grid (CSV)
    Scan {
        #[arg(long)]
        process: Process,
        #[arg(long)]
        regime: Regime,
        /// Catalog id 1..60 or "all"
        #[arg(long, default_value = "all")]
        initial: String,
        #[arg(long, default_value = "limit")]
        source: Source,
        /// Output file; stdout if omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Group catalog states by final-state magic distribution
    Classify {
        #[arg(long)]
        process: Process,
        #[arg(long)]
        regime: Regime,
        #[arg(long, default_value = "limit")]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Reference tables
    Tables {
        #[command(subcommand)]
        action: TablesAction,
    },
    /// Figure data
    Figures {
        #[command(subcommand)]
        action: FiguresAction,
    },
    /// Self-checks
    Verify {
        #[command(subcommand)]
        action: VerifyAction,
    },
}

#[derive(Subcommand)]
enum StabilizerAction {
    List {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum MagicAction {
    /// Evaluate M2 of a catalog state or of explicit amplitudes
    Eval {
        /// Catalog id 1..60
        #[arg(long, conflicts_with = "coeffs", required_unless_present = "coeffs")]
        id: Option<usize>,
        /// Eight numbers re0,im0,re1,im1,... (comma or space separated) on |uu>,|ud>,|du>,|dd>
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum TablesAction {
    Reproduce {
        /// I..VII or "all"
        #[arg(long, default_value = "all")]
        which: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum FiguresAction {
    Emit {
        /// 2..8 or "all"
        #[arg(long, default_value = "all")]
        which: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum VerifyAction {
    All {
        /// Fewer random trials
        #[arg(long)]
        quick: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
    Verification,
    /// Downstream reader went away (e.g. piped into `head`).
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { .. }
            | Error::InvalidRegime { .. }
            | Error::Parse { .. }
            | Error::UnknownStabilizer(_)
            | Error::BelowThreshold { .. } => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Failure::Closed
        } else {
            Failure::Runtime(e.to_string())
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => io.into(),
            other => Failure::Runtime(format!("{other:?}")),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        match e.io_error_kind() {
            Some(io::ErrorKind::BrokenPipe) => Failure::Closed,
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

impl RunConfig {
    fn lambda(&self) -> f64 {
        self.lambda.unwrap_or(match self.mode {
            Mode::Rounded => LAMBDA_ROUNDED,
            Mode::Physical => LAMBDA_PHYSICAL,
        })
    }

    fn scan(&self) -> Result<ScanConfig, Failure> {
        if self.grid < 2 {
            return Err(Failure::Usage(format!("--grid must be at least 2, got {}", self.grid)));
        }
        let lambda = self.lambda();
        if !(lambda > 0.0 && lambda <= 1.0) {
            return Err(Failure::Usage(format!("--lambda must lie in (0, 1], got {lambda}")));
        }
        for (flag, v) in [
            ("--mu-low", self.mu_low),
            ("--high-energy-factor", self.high_energy_factor),
            ("--threshold-eps", self.threshold_eps),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Failure::Usage(format!("{flag} must be positive, got {v}")));
            }
        }
        Ok(ScanConfig {
            grid: self.grid,
            mu_low: self.mu_low,
            high_energy_factor: self.high_energy_factor,
            threshold_eps: self.threshold_eps,
            ..ScanConfig::default()
        })
    }
}

fn print_json(value: serde_json::Value) -> Outcome {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &value)?;
    writeln!(out)?;
    Ok(())
}

fn complex_pairs(m: &Mat4) -> Vec<Vec<[f64; 2]>> {
    m.0.iter().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect()
}

fn fmt_c(z: Complex64) -> String {
    format!("{:>12.6}{:+.6}i", z.re, z.im)
}

fn print_matrix(m: &Mat4, format: Format, meta: serde_json::Value) -> Outcome {
    match format {
        Format::Json => {
            let mut v = meta;
            v["schema"] = json!(SCHEMA);
            v["layout"] = json!("rows = final spins, columns = initial spins, order uu ud du dd");
            v["matrix"] = json!(complex_pairs(m));
            print_json(v)
        }
        Format::Text | Format::Csv => {
            let mut out = io::stdout().lock();
            writeln!(out, "# rows: final uu ud du dd; columns: initial uu ud du dd")?;
            for row in &m.0 {
                let cells: Vec<String> = row.iter().map(|z| fmt_c(*z)).collect();
                writeln!(out, "{}", cells.join("  "))?;
            }
            Ok(())
        }
    }
}

fn stabilizers_list(format: Format) -> Outcome {
    let catalog = stabilizer_catalog();
    match format {
        Format::Json => print_json(json!({
            "schema": SCHEMA,
            "states": catalog,
        })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            w.write_record(["id", "entangled", "coefficients", "concurrence"])?;
            for s in catalog {
                let c: Vec<String> = s.coeffs.iter().map(|z| format!("{}{:+}i", z.re, z.im)).collect();
                w.write_record([
                    s.id.to_string(),
                    s.entangled.to_string(),
                    c.join(" "),
                    format!("{:.6}", concurrence(&s.state)),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
        Format::Text => {
            let mut out = io::stdout().lock();
            for s in catalog {
                let c: Vec<String> = s.coeffs.iter().map(|z| format!("{}{:+}i", z.re, z.im)).collect();
                let kind = if s.entangled { "entangled" } else { "product" };
                writeln!(out, "{:>2}  {:<9}  ({})", s.id, kind, c.join(", "))?;
            }
            Ok(())
        }
    }
}

fn parse_coeffs(text: &str) -> Result<CVec<4>, Failure> {
    let nums: Vec<f64> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(str::parse::<f64>)
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Usage(format!("--coeffs: {e}")))?;
    if nums.len() != 8 {
        return Err(Failure::Usage(format!(
            "--coeffs expects 8 numbers (re,im for 4 amplitudes), got {}",
            nums.len()
        )));
    }
    let mut v = CVec::<4>::zeros();
    for k in 0..4 {
        v.0[k] = Complex64::new(nums[2 * k], nums[2 * k + 1]);
    }
    v.normalize()
        .map_err(|_| Failure::Usage("--coeffs: state has zero norm".into()))
}

fn magic_eval(id: Option<usize>, coeffs: Option<String>, format: Format) -> Outcome {
    let psi = match (id, coeffs) {
        (Some(id), _) => stabilizer(id)?.state,
        (None, Some(c)) => parse_coeffs(&c)?,
        (None, None) => return Err(Failure::Usage("one of --id or --coeffs is required".into())),
    };
    let m = MagicValue::of_state(&psi);
    let labels: Vec<String> = two_qubit_paulis().iter().map(|p| p.to_string()).collect();
    let expectations = pauli_expectations(&psi);
    match format {
        Format::Json => print_json(json!({
            "schema": SCHEMA,
            "units": "nats",
            "xi2": m.xi2,
            "m2": m.m2,
            "pauli": labels.iter().zip(&expectations).map(|(l, e)| json!({"string": l, "expectation": e})).collect::<Vec<_>>(),
        })),
        Format::Text | Format::Csv => {
            let mut out = io::stdout().lock();
            writeln!(out, "xi2 = {:.12}", m.xi2)?;
            // Roundoff can leave −1e-16 on stabilizer states.
            writeln!(out, "m2  = {:.12} nats", m.m2.max(0.0))?;
            Ok(())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn amplitude(
    run: &RunConfig,
    process: Process,
    regime: Regime,
    theta: f64,
    mu: Option<f64>,
    gauge: f64,
    phase_fixed: bool,
    format: Format,
) -> Outcome {
    let cfg = run.scan()?;
    let lambda = run.lambda();
    let point = match mu {
        Some(mu) => KinematicPoint::new(process, theta, lambda, mu)?,
        None => cfg.engine_point(process, regime, theta, lambda)?,
    };
    let a = amplitude_matrix_gauge(&point, gauge);
    let m = if phase_fixed {
        a.phase_fixed().ok_or(Error::VanishingState)?
    } else {
        a.entries
    };
    let mut meta = json!({
        "process": process.name(),
        "theta": theta,
        "lambda": lambda,
        "mu": point.mu,
        "gauge": gauge,
        "phase_fixed": phase_fixed,
    });
    if process == Process::Moller {
        let r = exchange_antisymmetry_check(&point, 1e-10)?;
        meta["exchange_antisymmetry_deviation"] = json!(r.max_relative_deviation);
    }
    print_matrix(&m, format, meta)
}

fn limit(run: &RunConfig, process: Process, regime: Regime, theta: f64, format: Format) -> Outcome {
    let lambda = run.lambda();
    let m = limit_matrix(process, regime, theta, lambda)?;
    print_matrix(
        &m,
        format,
        json!({"process": process.name(), "regime": regime.name(), "theta": theta, "lambda": lambda}),
    )
}

fn parse_initial(s: &str) -> Result<Option<usize>, Failure> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(None);
    }
    let id: usize = s
        .parse()
        .map_err(|_| Failure::Usage(format!("--initial expects an id 1..60 or \"all\", got {s:?}")))?;
    stabilizer(id)?;
    Ok(Some(id))
}

fn writer_for(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(path) => Box::new(io::BufWriter::new(fs::File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| format!("{x:.15e}"))
}

fn scan(
    run: &RunConfig,
    process: Process,
    regime: Regime,
    initial: &str,
    source: Source,
    out: &Option<PathBuf>,
) -> Outcome {
    let cfg = run.scan()?;
    let only = parse_initial(initial)?;
    let dists = magic_distributions(process, regime, run.lambda(), source, &cfg)?;
    let mut w = csv::Writer::from_writer(writer_for(out)?);
    w.write_record(["id", "status", "theta_rad", "xi2", "m2_nats"])?;
    for d in dists.iter().filter(|d| only.is_none_or(|id| id == d.initial_id)) {
        let status = d.status.name();
        for s in &d.samples {
            w.write_record([
                d.initial_id.to_string(),
                status.to_string(),
                format!("{:.15e}", s.theta),
                opt(s.xi2),
                opt(s.m2),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn describe_max(m: &Maximum) -> String {
    match m {
        Maximum::Flat { value } => format!("flat at {value:.10}"),
        Maximum::Undefined => "undefined".into(),
        Maximum::Peaks { value, argmax } => {
            let at: Vec<String> = argmax.iter().map(|x| format!("{x:.10}")).collect();
            format!("{value:.10} at {}", at.join(", "))
        }
    }
}

fn print_classification(r: &ClassificationReport, format: Format) -> Outcome {
    match format {
        Format::Json => print_json(json!({
            "schema": SCHEMA,
            "units": {"angle": "radians", "magic": "nats"},
            "report": r,
        })),
        Format::Text | Format::Csv => {
            let mut out = io::stdout().lock();
            writeln!(
                out,
                "{} {} (lambda = {}, source = {}): {} distributions",
                r.process,
                r.regime,
                r.lambda,
                r.source,
                r.distribution_count()
            )?;
            for c in &r.classes {
                writeln!(out, "  {:<20} {:?}", c.status.name(), c.members)?;
                writeln!(out, "  {:<20} max M2 {}", "", describe_max(&c.maximum))?;
            }
            Ok(())
        }
    }
}

fn parse_tables(which: &str) -> Result<Vec<TableId>, Failure> {
    if which.eq_ignore_ascii_case("all") {
        return Ok(TableId::ALL.to_vec());
    }
    Ok(vec![which.parse::<TableId>()?])
}

fn print_table(out: &mut impl Write, r: &TableReport) -> io::Result<()> {
    writeln!(
        out,
        "Table {} ({} {}, lambda = {}): {} distributions",
        r.table,
        r.process,
        r.regime,
        r.lambda,
        r.distribution_count
    )?;
    for row in &r.rows {
        writeln!(out, "  {}", row.label)?;
        for c in &row.checks {
            writeln!(out, "    [{}] {:<28} expected {:<40} actual {}", c.status, c.what, c.expected, c.actual)?;
        }
    }
    Ok(())
}

fn tables(run: &RunConfig, which: &str, format: Format) -> Outcome {
    let cfg = run.scan()?;
    let reports = parse_tables(which)?
        .into_iter()
        .map(|t| reproduce_table(t, run.lambda(), &cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(TableReport::passed);
    match format {
        Format::Json => print_json(json!({"schema": SCHEMA, "passed": passed, "tables": reports}))?,
        Format::Text | Format::Csv => {
            let mut out = io::stdout().lock();
            for r in &reports {
                print_table(&mut out, r)?;
            }
            let failing = reports.iter().flat_map(|r| r.checks()).filter(|c| c.status == Status::Fail).count();
            writeln!(out, "{}: {failing} failing checks", if passed { "PASS" } else { "FAIL" })?;
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn parse_figures(which: &str) -> Result<Vec<u8>, Failure> {
    if which.eq_ignore_ascii_case("all") {
        return Ok(FIGURES.to_vec());
    }
    let n: u8 = which
        .parse()
        .map_err(|_| Failure::Usage(format!("--which expects 2..8 or \"all\", got {which:?}")))?;
    if !FIGURES.contains(&n) {
        return Err(Failure::Usage(format!("--which expects 2..8 or \"all\", got {n}")));
    }
    Ok(vec![n])
}

fn write_figure(dir: &Path, fig: &Figure) -> Result<PathBuf, Failure> {
    let path = dir.join(format!("fig{}.csv", fig.number));
    let mut w = csv::Writer::from_path(&path)?;
    let x = if fig.axis == "theta" { "theta_rad" } else { "lambda" };
    let mut header = vec![x.to_string()];
    header.extend(fig.series.iter().map(|s| format!("{}_m2_nats", s.label)));
    w.write_record(&header)?;
    for (k, x) in fig.x.iter().enumerate() {
        let mut rec = vec![format!("{x:.15e}")];
        rec.extend(fig.series.iter().map(|s| opt(s.values[k])));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(path)
}

fn figures(run: &RunConfig, which: &str, out: &Path) -> Outcome {
    let cfg = run.scan()?;
    let numbers = parse_figures(which)?;
    fs::create_dir_all(out)?;
    let mut stdout = io::stdout().lock();
    for n in numbers {
        let fig = figure(n, run.lambda(), &cfg)?;
        let path = write_figure(out, &fig)?;
        writeln!(stdout, "{}", path.display())?;
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    schema: u32,
    passed: bool,
    report: &'a VerificationReport,
}

fn verify(run: &RunConfig, quick: bool, format: Format) -> Outcome {
    let cfg = run.scan()?;
    let report = verify_all(run.seed, run.lambda(), &cfg, quick)?;
    let passed = report.passed();
    match format {
        Format::Json => print_json(serde_json::to_value(VerifyOutput {
            schema: SCHEMA,
            passed,
            report: &report,
        })?)?,
        Format::Text | Format::Csv => {
            let mut out = io::stdout().lock();
            for s in &report.sections {
                writeln!(out, "== {}", s.title)?;
                for o in &s.outcomes {
                    let tag = match (o.passed, o.informational) {
                        (true, _) => "PASS",
                        (false, true) => "INFO",
                        (false, false) => "FAIL",
                    };
                    writeln!(out, "  [{tag}] {}: {}", o.name, o.detail)?;
                }
            }
            writeln!(out, "{}", if passed { "PASS" } else { "FAIL" })?;
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn run(cli: Cli) -> Outcome {
    let run = &cli.run;
    if run.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(run.threads)
            .build_global()
            .map_err(|e| Failure::Runtime(e.to_string()))?;
    }
    match cli.command {
        Command::Stabilizers { action: StabilizerAction::List { format } } => stabilizers_list(format),
        Command::Magic { action: MagicAction::Eval { id, coeffs, format } } => magic_eval(id, coeffs, format),
        Command::Amplitude {
            process,
            theta,
            mu,
            regime,
            gauge,
            phase_fixed,
            format,
        } => amplitude(run, process, regime, theta, mu, gauge, phase_fixed, format),
        Command::LimitMatrix {
            process,
            regime,
            theta,
            format,
        } => limit(run, process, regime, theta, format),
        Command::Scan {
            process,
            regime,
            initial,
            source,
            out,
        } => scan(run, process, regime, &initial, source, &out),
        Command::Classify {
            process,
            regime,
            source,
            format,
        } => {
            let cfg = run.scan()?;
            let r = classify(process, regime, run.lambda(), source, &cfg)?;
            print_classification(&r, format)
        }
        Command::Tables { action: TablesAction::Reproduce { which, format } } => tables(run, &which, format),
        Command::Figures { action: FiguresAction::Emit { which, out } } => figures(run, &which, &out),
        Command::Verify { action: VerifyAction::All { quick, format } } => verify(run, quick, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
