use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rdtm_cli::report::{self, Format};
use rdtm_cli::{Axis, CliError, Grid, Problem, ProblemDescriptor};

#[derive(Parser)]
#[command(name = "rdtm", version, about = "Truncated time-series solutions of Kuramoto-Sivashinsky type equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Series against the closed-form wave on a small grid.
    Table(Common),
    /// Series, closed form and error over a full (x, t) window, as CSV.
    Surface(Common),
    /// Max error and residual slope per truncation order.
    Convergence {
        #[command(flatten)]
        common: Common,
        /// Orders to compare.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        orders: Vec<usize>,
        /// Point at which residual slopes are measured.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        slope_x: f64,
    },
    /// Spectrum coefficients as expression text.
    Coefficients {
        #[command(flatten)]
        common: Common,
        /// Longest expression printed in full.
        #[arg(long, default_value_t = 1_000_000)]
        max_chars: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
}

#[derive(Args)]
struct Common {
    /// JSON problem descriptor; flags override its fields.
    #[arg(long)]
    problem: Option<PathBuf>,
    /// Truncation order (0 to 6).
    #[arg(long)]
    order: Option<i64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["xmin", "xmax", "nx"])]
    xs: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["tmin", "tmax", "nt"])]
    ts: Option<Vec<f64>>,
    #[arg(long, allow_hyphen_values = true)]
    xmin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    xmax: Option<f64>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    tmin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    tmax: Option<f64>,
    #[arg(long)]
    nt: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Output file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Flags over descriptor over the command's default.
fn axis(
    field: &str,
    points: &Option<Vec<f64>>,
    min: Option<f64>,
    max: Option<f64>,
    count: Option<usize>,
    from_descriptor: &Option<Axis>,
    default: Axis,
) -> Result<Vec<f64>, CliError> {
    if let Some(p) = points {
        return Axis::Points(p.clone()).resolve(field);
    }
    let base = from_descriptor.clone().unwrap_or(default.clone());
    if min.is_none() && max.is_none() && count.is_none() {
        return base.resolve(field);
    }
    let r = match (base, default) {
        (Axis::Range(r), _) | (Axis::Points(_), Axis::Range(r)) => r,
        (Axis::Points(_), Axis::Points(p)) => {
            let lo = p.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = p.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            rdtm_cli::descriptor::RangeSpec { min: lo, max: hi, count: p.len() }
        }
    };
    Axis::range(min.unwrap_or(r.min), max.unwrap_or(r.max), count.unwrap_or(r.count)).resolve(field)
}

impl Common {
    fn problem(&self) -> Result<Problem, CliError> {
        let mut d = match &self.problem {
            Some(path) => ProblemDescriptor::load(path)?,
            None => ProblemDescriptor::default(),
        };
        if self.order.is_some() {
            d.order = self.order;
        }
        d.resolve()
    }

    fn grid(&self, problem: &Problem, xs: Axis, ts: Axis) -> Result<Grid, CliError> {
        Ok(Grid {
            xs: axis("xs", &self.xs, self.xmin, self.xmax, self.nx, &problem.grid_x, xs)?,
            ts: axis("ts", &self.ts, self.tmin, self.tmax, self.nt, &problem.grid_t, ts)?,
        })
    }

    fn format(&self, default: Format) -> Format {
        match self.format {
            None => default,
            Some(FormatArg::Text) => Format::Text,
            Some(FormatArg::Csv) => Format::Csv,
        }
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            }),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
            }
        }
    }
}

fn surface_x() -> Axis {
    Axis::range(-40.0, 40.0, 201)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Table(c) => {
            let problem = c.problem()?;
            let grid = c.grid(
                &problem,
                Axis::Points(vec![0.0, 0.5, 1.0]),
                Axis::Points(vec![0.0, 0.5, 1.0]),
            )?;
            let table = report::run_table(&problem, &grid)?;
            c.emit(&report::render_table(&table, c.format(Format::Text)))
        }
        Command::Surface(c) => {
            let problem = c.problem()?;
            let grid = c.grid(&problem, surface_x(), Axis::range(0.0, 4.0, 101))?;
            let table = report::run_table(&problem, &grid)?;
            c.emit(&report::render_table(&table, c.format(Format::Csv)))
        }
        Command::Convergence { common: c, orders, slope_x } => {
            let problem = c.problem()?;
            let grid = c.grid(&problem, surface_x(), Axis::range(0.0, 0.5, 11))?;
            let rows = report::run_convergence(&problem, &orders, &grid, slope_x)?;
            c.emit(&report::render_convergence(&rows, c.format(Format::Text)))
        }
        Command::Coefficients { common: c, max_chars } => {
            let problem = c.problem()?;
            let rows = report::run_coefficients(&problem)?;
            c.emit(&report::render_coefficients(&rows, c.format(Format::Text), max_chars))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
