//! Command-line front end for the complex-order fractional Kelvin-Voigt
//! model. [`run`] holds the whole program so it can be driven from tests.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cfkv_core::experiments::{
    compare_signals, creep, stress_relaxation, ExperimentConfig, ExperimentKind, Method, SampledSignal,
};
use cfkv_core::kelvin::{count_zeros, find_zeros, residue_zeros, ContourSpec, KernelTable, SearchRegion};
use cfkv_core::thermo::{check_thermo, complex_modulus, log_space, ModelParams, StrongBranch, ThermoBranch};
use cfkv_core::Error;

#[derive(Debug, Parser)]
#[command(name = "cfkv", version, about = "Complex-order fractional Kelvin-Voigt model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the dissipation inequality and the no-zeros condition.
    Check {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Complex modulus Ê(ω) = a(iω)^α + b((iω)^β + (iω)^β̄) on a log grid.
    Modulus {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1e-4)]
        omega_min: f64,
        #[arg(long, default_value_t = 1e4)]
        omega_max: f64,
        /// Number of grid intervals.
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Winding numbers of ψ and its zeros in the upper-left quadrant.
    Zeros {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1e-3)]
        r_min: f64,
        #[arg(long, default_value_t = 1e3)]
        r_max: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Creep kernel K(t), including the residues of the zeros of ψ.
    Kernel {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Print the cumulative ∫_0^t K instead of K.
        #[arg(long)]
        cumulative: bool,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Stress under the regularized strain step 1 - exp(-t/k).
    Relax {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Strain under unit step stress.
    Creep {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run every method for one experiment; one column per method.
    Compare {
        #[arg(value_enum)]
        experiment: ExperimentArg,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, Args)]
struct ParamArgs {
    #[arg(long, default_value_t = 0.8, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    b: f64,
    #[arg(long, default_value_t = 0.4, allow_negative_numbers = true)]
    alpha: f64,
    /// Imaginary part of the complex order β = α + iB.
    #[arg(long = "B", default_value_t = 0.4, allow_negative_numbers = true)]
    big_b: f64,
}

#[derive(Debug, Clone, Copy, Args)]
struct GridArgs {
    /// End of the time grid [default: 10 for relax, 100 otherwise].
    #[arg(long)]
    t_max: Option<f64>,
    /// Number of time steps.
    #[arg(long, default_value_t = 1000)]
    steps: usize,
}

#[derive(Debug, Clone, Copy, Args)]
struct RunArgs {
    /// [default: expansion for relax, convolution for creep]
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// Regularization time of the strain step.
    #[arg(long, default_value_t = 0.01)]
    k_reg: f64,
    /// Number of expansion moments [default: 100 for relax, 7 for creep].
    #[arg(long = "N")]
    n_expansion: Option<usize>,
    /// Order of Post's inversion formula.
    #[arg(long, default_value_t = 25)]
    post_n: usize,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Debug, Clone, Args)]
struct OutputArgs {
    /// Write CSV here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Significant digits of every printed value.
    #[arg(long, default_value_t = 17, value_parser = clap::value_parser!(u32).range(1..=40))]
    precision: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Expansion,
    Direct,
    Convolution,
    Post,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Expansion => Method::Expansion,
            MethodArg::Direct => Method::Direct,
            MethodArg::Convolution => Method::Convolution,
            MethodArg::Post => Method::Post,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExperimentArg {
    Relax,
    Creep,
}

/// Exit status categories.
enum Failure {
    /// Invalid parameters; exit 2.
    Usage(String),
    /// Numerical or I/O failure; exit 1.
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { .. } | Error::Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Numerical(format!("i/o error: {e}"))
    }
}

/// Parses `args` (program name first) and runs the subcommand. CSV goes to
/// `out` unless `--output` is given; diagnostics go to `err`. Returns the
/// exit status: 0 on success, 2 for invalid arguments or parameters, 1 for
/// numerical failures.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            // help and version requests are not errors
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Numerical(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Check { params } => check(params, out),
        Command::Modulus {
            params,
            omega_min,
            omega_max,
            steps,
            output,
        } => {
            let p = admissible(params)?;
            let grid = log_space(omega_min, omega_max, steps + 1)?;
            let mut csv = Csv::open(&output, out, &["omega", "re_E", "im_E"])?;
            for w in grid {
                let e = complex_modulus(&p, w, false)?;
                csv.row(&[w, e.re, e.im])?;
            }
            csv.finish()
        }
        Command::Zeros {
            params,
            r_min,
            r_max,
            output,
        } => {
            let p = admissible(params)?;
            let right = count_zeros(&p, &ContourSpec::right(r_min, r_max)?)?;
            let left = count_zeros(&p, &ContourSpec::left_upper(r_min, r_max)?)?;
            let set = find_zeros(&p, &SearchRegion { r_min, r_max })?;
            let mut csv = Csv::open_raw(&output, out)?;
            csv.line(&format!("winding_right,{right}"))?;
            csv.line(&format!("winding_left_upper,{left}"))?;
            csv.line("re,im,psi_prime_re,psi_prime_im")?;
            for (z, d) in set.zeros.iter().zip(&set.psi_prime_at_zeros) {
                csv.row(&[z.re, z.im, d.re, d.im])?;
            }
            csv.finish()
        }
        Command::Kernel {
            params,
            grid,
            cumulative,
            tol,
            output,
        } => {
            let p = admissible(params)?;
            let t_max = grid.t_max.unwrap_or(100.0);
            let zeros = residue_zeros(&p, tol)?;
            let table = KernelTable::build(&p, t_max, grid.steps, tol, Some(&zeros))?;
            let mut csv = Csv::open(&output, out, &["t", "value"])?;
            for (i, t) in table.t_grid().into_iter().enumerate() {
                let v = match (cumulative, i) {
                    (true, _) => table.cumulative()[i],
                    // K is unbounded at the origin
                    (false, 0) => f64::INFINITY,
                    (false, _) => table.k_values()[i],
                };
                csv.row(&[t, v])?;
            }
            csv.finish()
        }
        Command::Relax {
            params,
            grid,
            run,
            output,
        } => {
            let c = config(ExperimentKind::Relaxation, params, grid, run)?;
            let s = stress_relaxation(&c)?;
            write_signal(&output, out, "sigma", &s)
        }
        Command::Creep {
            params,
            grid,
            run,
            output,
        } => {
            let c = config(ExperimentKind::Creep, params, grid, run)?;
            let s = creep(&c)?;
            write_signal(&output, out, "epsilon", &s)
        }
        Command::Compare {
            experiment,
            params,
            grid,
            run,
            output,
        } => compare(experiment, params, grid, run, &output, out, err),
    }
}

fn params_of(args: ParamArgs) -> Result<ModelParams, Failure> {
    Ok(ModelParams::new(args.a, args.b, args.alpha, args.big_b)?)
}

fn thermo_formula(branch: ThermoBranch) -> &'static str {
    match branch {
        ThermoBranch::Cot => "2b cosh(Bπ/2) sqrt(1 + (cot(απ/2) tanh(Bπ/2))^2)",
        ThermoBranch::Tan => "2b cosh(Bπ/2) sqrt(1 + (tan(απ/2) tanh(Bπ/2))^2)",
    }
}

fn strong_formula(branch: StrongBranch) -> &'static str {
    match branch {
        StrongBranch::Tan => "2b cosh(Bπ) sqrt(1 + (tan(απ) tanh(Bπ))^2)",
        StrongBranch::Cot => "2b cosh(Bπ) sqrt(1 + (cot(απ) tanh(Bπ))^2)",
    }
}

/// Parameters that pass validation and the dissipation inequality.
fn admissible(args: ParamArgs) -> Result<ModelParams, Failure> {
    let p = params_of(args)?;
    let report = check_thermo(&p);
    if !report.thermo_ok {
        return Err(Failure::Usage(format!(
            "dissipation inequality violated: a = {} < {} = {}",
            p.a(),
            report.thermo_threshold,
            thermo_formula(report.thermo_branch)
        )));
    }
    Ok(p)
}

fn check(args: ParamArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let p = params_of(args)?;
    let r = check_thermo(&p);
    let a = p.a();
    if r.thermo_ok {
        writeln!(out, "thermo: OK ({a} ≥ {:.4})", r.thermo_threshold)?;
    } else {
        writeln!(
            out,
            "thermo: FAIL ({a} < {:.4}); required a ≥ {}",
            r.thermo_threshold,
            thermo_formula(r.thermo_branch)
        )?;
        if a < 2.0 * p.b() {
            writeln!(out, "  necessary condition a ≥ 2b violated: {a} < {}", 2.0 * p.b())?;
        }
    }
    let rel = if r.strong_ok { "≥" } else { "<" };
    writeln!(
        out,
        "no-zeros: {} ({a} {rel} {:.4}); a ≥ {}",
        if r.strong_ok { "OK" } else { "FAIL" },
        r.strong_threshold,
        strong_formula(r.strong_branch)
    )?;
    Ok(if r.thermo_ok { 0 } else { 2 })
}

fn config(kind: ExperimentKind, params: ParamArgs, grid: GridArgs, run: RunArgs) -> Result<ExperimentConfig, Failure> {
    let p = admissible(params)?;
    let base = match kind {
        ExperimentKind::Relaxation => ExperimentConfig::relaxation(p),
        ExperimentKind::Creep => ExperimentConfig::creep(p),
    };
    let c = ExperimentConfig {
        k_reg: run.k_reg,
        n_expansion: run.n_expansion.unwrap_or(base.n_expansion),
        t_max: grid.t_max.unwrap_or(base.t_max),
        steps: grid.steps,
        method: run.method.map_or(base.method, Method::from),
        post_n: run.post_n,
        tol: run.tol,
        ..base
    };
    c.validate(kind)?;
    Ok(c)
}

fn write_signal(output: &OutputArgs, out: &mut dyn Write, name: &str, s: &SampledSignal) -> Result<i32, Failure> {
    let mut csv = Csv::open(output, out, &["t", name])?;
    for (t, v) in s.times().zip(s.values()) {
        csv.row(&[t, *v])?;
    }
    csv.finish()
}

fn compare(
    experiment: ExperimentArg,
    params: ParamArgs,
    grid: GridArgs,
    run: RunArgs,
    output: &OutputArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let (kind, methods): (_, &[(Method, &str)]) = match experiment {
        ExperimentArg::Relax => (
            ExperimentKind::Relaxation,
            &[(Method::Expansion, "expansion"), (Method::Direct, "direct")],
        ),
        ExperimentArg::Creep => (
            ExperimentKind::Creep,
            &[
                (Method::Expansion, "expansion"),
                (Method::Convolution, "convolution"),
                (Method::Post, "post"),
            ],
        ),
    };
    let base = config(kind, params, grid, RunArgs { method: None, ..run })?;
    let mut signals = Vec::new();
    for &(m, _) in methods {
        let c = base.with_method(m);
        signals.push(match kind {
            ExperimentKind::Relaxation => stress_relaxation(&c)?,
            ExperimentKind::Creep => creep(&c)?,
        });
    }
    for i in 0..methods.len() {
        for j in i + 1..methods.len() {
            let d = compare_signals(&signals[i], &signals[j], 0.05, 0.0)?;
            writeln!(
                err,
                "{} vs {}: max relative deviation {:.3e} at t = {}",
                methods[i].1, methods[j].1, d.max_relative, d.at_time
            )?;
        }
    }
    let mut header = vec!["t"];
    header.extend(methods.iter().map(|m| m.1));
    let mut csv = Csv::open(output, out, &header)?;
    let mut row = Vec::with_capacity(methods.len() + 1);
    for (i, t) in signals[0].times().enumerate() {
        row.clear();
        row.push(t);
        row.extend(signals.iter().map(|s| s.values()[i]));
        csv.row(&row)?;
    }
    csv.finish()
}

/// Significant-digit formatting: `precision` digits in scientific notation.
struct Sig(f64, u32);

impl fmt::Display for Sig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_finite() {
            write!(f, "{:.*e}", (self.1 - 1) as usize, self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

struct Csv<'a> {
    sink: Box<dyn Write + 'a>,
    precision: u32,
    line: String,
}

impl<'a> Csv<'a> {
    fn open_raw(output: &OutputArgs, out: &'a mut dyn Write) -> Result<Self, Failure> {
        let sink: Box<dyn Write + 'a> = match &output.output {
            Some(path) => {
                let file = File::create(path)
                    .map_err(|e| Failure::Numerical(format!("cannot create {}: {e}", path.display())))?;
                Box::new(BufWriter::new(file))
            }
            None => Box::new(out),
        };
        Ok(Self {
            sink,
            precision: output.precision,
            line: String::new(),
        })
    }

    fn open(output: &OutputArgs, out: &'a mut dyn Write, header: &[&str]) -> Result<Self, Failure> {
        let mut csv = Self::open_raw(output, out)?;
        csv.line(&header.join(","))?;
        Ok(csv)
    }

    fn line(&mut self, text: &str) -> Result<(), Failure> {
        self.sink.write_all(text.as_bytes())?;
        self.sink.write_all(b"\n")?;
        Ok(())
    }

    fn row(&mut self, values: &[f64]) -> Result<(), Failure> {
        use std::fmt::Write as _;
        self.line.clear();
        for (i, v) in values.iter().enumerate() {
            if i > 0 {
                self.line.push(',');
            }
            let _ = write!(self.line, "{}", Sig(*v, self.precision));
        }
        self.line.push('\n');
        self.sink.write_all(self.line.as_bytes())?;
        Ok(())
    }

    fn finish(mut self) -> Result<i32, Failure> {
        self.sink.flush()?;
        Ok(0)
    }
}
