use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "fraclat", version, about = "Fractional Laplacians on lattices and their continuum kernels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Route {
    Closed,
    Quadrature,
    Bloch,
    Images,
    NdBz,
    NdBessel,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Closed => "closed",
            Route::Quadrature => "quadrature",
            Route::Bloch => "bloch",
            Route::Images => "images",
            Route::NdBz => "nd_bz",
            Route::NdBessel => "nd_bessel",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Cut {
    Full,
    #[value(name = "plane_010")]
    Plane010,
    #[value(name = "plane_110")]
    Plane110,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Oracles,
    Asymptotics,
    Continuum,
}

#[derive(Debug, Clone, Args)]
pub struct Io {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file, or `-` for standard output.
    #[arg(long, default_value = "-")]
    pub output: String,
}

#[derive(Debug, Clone, Args)]
#[group(id = "lattice", required = true, multiple = false)]
pub struct Lattice {
    /// Periodic chain length.
    #[arg(long, group = "lattice")]
    pub n: Option<usize>,
    /// Periodic nD lattice, e.g. `8x8` or `16x16x16`.
    #[arg(long, group = "lattice")]
    pub dims: Option<String>,
    /// Infinite chain or lattice.
    #[arg(long, group = "lattice")]
    pub infinite: bool,
}

#[derive(Debug, Clone, Args)]
#[group(id = "periodic_lattice", required = true, multiple = false)]
pub struct FiniteLattice {
    #[arg(long, group = "periodic_lattice")]
    pub n: Option<usize>,
    #[arg(long, group = "periodic_lattice")]
    pub dims: Option<String>,
}

#[derive(Debug, Clone, Args)]
#[group(id = "period", required = true, multiple = false)]
pub struct Period {
    /// Period of the string.
    #[arg(long = "L", group = "period")]
    pub length: Option<f64>,
    #[arg(long, group = "period")]
    pub infinite: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Matrix elements for a range of offsets.
    Elements {
        #[arg(long)]
        alpha: f64,
        #[command(flatten)]
        lattice: Lattice,
        /// Dimension of the infinite lattice for the nd routes.
        #[arg(long)]
        dim: Option<usize>,
        /// Offsets along the first axis, inclusive: `a..b`.
        #[arg(long)]
        p: Option<String>,
        /// A single nD offset, e.g. `2,1`.
        #[arg(long, conflicts_with = "p")]
        offset: Option<String>,
        #[arg(long, value_enum)]
        route: Option<Route>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long = "omega-sq", default_value_t = 1.0)]
        omega_sq: f64,
        #[command(flatten)]
        io: Io,
    },
    /// First row (1D) or fundamental-cell table (nD) of the periodic Laplacian.
    Matrix {
        #[arg(long)]
        alpha: f64,
        #[command(flatten)]
        lattice: FiniteLattice,
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        #[arg(long = "omega-sq", default_value_t = 1.0)]
        omega_sq: f64,
        #[command(flatten)]
        io: Io,
    },
    /// Normalized dispersion sheets or cuts.
    Dispersion {
        #[arg(long, required = true)]
        alpha: Vec<f64>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Samples per axis over [0, pi], endpoints included.
        #[arg(long, default_value_t = 33)]
        grid: usize,
        #[arg(long, value_enum, default_value = "full")]
        cut: Cut,
        #[command(flatten)]
        io: Io,
    },
    /// Samples of the Riesz kernel on the line or the periodic string.
    Kernel {
        #[arg(long)]
        alpha: f64,
        #[command(flatten)]
        period: Period,
        /// Sample interval, inclusive: `a..b`.
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 11)]
        samples: usize,
        #[command(flatten)]
        io: Io,
    },
    /// Run the cross-route and invariant suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Replace a check tolerance, `name=value`; repeatable.
        #[arg(long = "tol-override")]
        tol_override: Vec<String>,
        #[command(flatten)]
        io: Io,
    },
}

impl Command {
    pub fn io(&self) -> (Format, String) {
        let io = match self {
            Command::Elements { io, .. }
            | Command::Matrix { io, .. }
            | Command::Dispersion { io, .. }
            | Command::Kernel { io, .. }
            | Command::Verify { io, .. } => io,
        };
        (io.format, io.output.clone())
    }
}

/// `a..b` with `a <= b`.
pub fn parse_range<T: std::str::FromStr + PartialOrd + Copy>(s: &str) -> Result<(T, T), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("range must look like a..b, got '{s}'"))?;
    let parse = |t: &str| t.trim().parse::<T>().map_err(|_| format!("bad range bound '{t}' in '{s}'"));
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b {
        return Err(format!("empty range '{s}'"));
    }
    Ok((a, b))
}

/// `8x8x4` → `[8, 8, 4]`.
pub fn parse_dims(s: &str) -> Result<Vec<usize>, String> {
    s.split(['x', 'X'])
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad size '{t}' in --dims '{s}'")))
        .collect()
}

/// `2,-1,0` → `[2, -1, 0]`.
pub fn parse_offset(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("bad component '{t}' in --offset '{s}'")))
        .collect()
}
