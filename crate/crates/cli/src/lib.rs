//! Argument handling and output for the `ellreg` binary.

pub mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ellreg::lseries::{lvalue2_series, lvalue2_theta_integral, LValueResult, QuadConfig, DEFAULT_TERMS};
use ellreg::qexpr::{eval_expr, parse};
use ellreg::qseries::{CurveSpec, DEFAULT_ORDER24};
use ellreg::specfun::{ftilde, ftilde_via_dixon, hyp3f2_unit, FtildeParams, HypParams};
use ellreg::verify::{all_pass, run_all, run_check, VerifyConfig, VerifyError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest gap tolerated between the two L-value routes.
const ROUTE_AGREEMENT: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(name = "ellreg", version, about = "Exact q-series identities, L-values and hypergeometric regulator checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run registered checks
    Verify(VerifyArgs),
    /// Compute L(E_N, 2) and L'(E_N, 0)
    Lvalue(LvalueArgs),
    /// Evaluate hypergeometric values
    Hyp {
        #[command(subcommand)]
        command: HypCommand,
    },
    /// Expand an eta/theta expression as an exact q-series
    Qexpand(QexpandArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run a single check by name
    #[arg(long, conflicts_with_all = ["prefix", "all"])]
    pub check: Option<String>,
    /// Run checks whose names start with this prefix
    #[arg(long, conflicts_with = "all")]
    pub prefix: Option<String>,
    /// Run every check (the default)
    #[arg(long)]
    pub all: bool,
    /// Truncation order for exact checks, in units of q^(1/24)
    #[arg(long, default_value_t = DEFAULT_ORDER24)]
    pub order: i64,
    /// Override every numeric tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
    /// Worker threads
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Add seeded random sample points to the numeric lemmas
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Series,
    Integral,
    Both,
}

#[derive(Args, Debug)]
pub struct LvalueArgs {
    #[arg(long, value_parser = ["27", "32", "64"])]
    pub curve: String,
    #[arg(long, value_enum, default_value_t = Method::Series)]
    pub method: Method,
    /// Dirichlet coefficients used by the series route
    #[arg(long, default_value_t = DEFAULT_TERMS)]
    pub terms: usize,
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum HypCommand {
    /// 3F2[a, b, c; e, f; 1]
    Eval {
        /// a,b,c,e,f as decimals or fractions p/q
        #[arg(long, required = true, value_delimiter = ',', value_parser = parse_number, allow_hyphen_values = true)]
        params: Vec<f64>,
    },
    /// F~(alpha, beta) by both routes
    Ftilde {
        #[arg(long, value_parser = parse_number)]
        alpha: f64,
        #[arg(long, value_parser = parse_number)]
        beta: f64,
    },
}

#[derive(Args, Debug)]
pub struct QexpandArgs {
    pub expr: String,
    /// Truncation order in units of q^(1/24)
    #[arg(long)]
    pub order: i64,
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
}

fn parse_number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| format!("not a number: {}", s))?;
            let q: f64 = q.trim().parse().map_err(|_| format!("not a number: {}", s))?;
            if q == 0.0 {
                return Err(format!("zero denominator: {}", s));
            }
            p / q
        }
        None => s.parse().map_err(|_| format!("not a number: {}", s))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not finite: {}", s))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{}", text) } else { write!(out, "{}", text) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify(a, out),
        Command::Lvalue(a) => lvalue(a, out),
        Command::Hyp { command } => hyp(command, out),
        Command::Qexpand(a) => qexpand(a, out),
    };
    match result {
        Ok(code) => code,
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {}", msg);
            code
        }
    }
}

type CmdResult = Result<i32, (i32, String)>;

fn usage<E: std::fmt::Display>(e: E) -> (i32, String) {
    (EXIT_USAGE, e.to_string())
}

fn failure<E: std::fmt::Display>(e: E) -> (i32, String) {
    (EXIT_FAIL, e.to_string())
}

fn io(e: std::io::Error) -> (i32, String) {
    (EXIT_FAIL, e.to_string())
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let cfg = VerifyConfig {
        order24: a.order,
        tolerance: a.tol,
        seed: a.seed,
        jobs: a.jobs,
        ..VerifyConfig::default()
    };
    let reports = match &a.check {
        Some(name) => vec![run_check(name, &cfg).map_err(usage)?],
        None => run_all(&cfg, a.prefix.as_deref()).map_err(|e| match e {
            VerifyError::Pool(_) => failure(e),
            _ => usage(e),
        })?,
    };
    if a.json {
        writeln!(out, "{}", render::reports_json(&reports)).map_err(io)?;
    } else {
        write!(out, "{}", render::reports_table(&reports)).map_err(io)?;
    }
    Ok(if all_pass(&reports) { EXIT_OK } else { EXIT_FAIL })
}

fn lvalue_json(r: &LValueResult, lprime: f64) -> String {
    format!(
        "{{\"curve\":{},\"method\":\"{}\",\"value\":{},\"error_bound\":{},\"terms_or_nodes\":{},\"lprime0\":{},\"runtime_ms\":{}}}",
        r.conductor,
        r.method.name(),
        render::number(r.value),
        render::number(r.error_bound),
        r.terms_or_nodes,
        render::number(lprime),
        render::number(r.runtime_ms)
    )
}

fn lvalue(a: LvalueArgs, out: &mut dyn Write) -> CmdResult {
    let n: u32 = a.curve.parse().map_err(usage)?;
    let curve = CurveSpec::new(n).ok_or_else(|| usage(format!("unknown curve {}", n)))?;
    if n == 27 && a.method != Method::Series {
        return Err(usage("conductor 27 has only the series method"));
    }
    let mut results = Vec::new();
    if a.method != Method::Integral {
        results.push(lvalue2_series(&curve, a.terms).map_err(usage)?);
    }
    if a.method != Method::Series {
        results.push(lvalue2_theta_integral(&curve, &QuadConfig::default()).map_err(failure)?);
    }
    let gap = (results.len() == 2).then(|| (results[0].value - results[1].value).abs());
    if a.json {
        let items: Vec<String> = results
            .iter()
            .map(|r| lvalue_json(r, ellreg::lseries::lprime0(&curve, r.value)))
            .collect();
        match gap {
            Some(g) => writeln!(out, "{{\"results\":[{}],\"difference\":{}}}", items.join(","), render::number(g)),
            None => writeln!(out, "{{\"results\":[{}]}}", items.join(",")),
        }
        .map_err(io)?;
    } else {
        for r in &results {
            writeln!(
                out,
                "L(E_{}, 2) [{}] = {:.16}  (error bound {:.3e}, {} terms/nodes)",
                n,
                r.method.name(),
                r.value,
                r.error_bound,
                r.terms_or_nodes
            )
            .map_err(io)?;
            writeln!(out, "L'(E_{}, 0) [{}] = {:.16}", n, r.method.name(), ellreg::lseries::lprime0(&curve, r.value))
                .map_err(io)?;
        }
        if let Some(g) = gap {
            writeln!(out, "difference = {:.3e}", g).map_err(io)?;
        }
    }
    Ok(match gap {
        Some(g) if !(g <= ROUTE_AGREEMENT) => EXIT_FAIL,
        _ => EXIT_OK,
    })
}

fn hyp(c: HypCommand, out: &mut dyn Write) -> CmdResult {
    match c {
        HypCommand::Eval { params } => {
            if params.len() != 5 {
                return Err(usage(format!("--params needs 5 values, got {}", params.len())));
            }
            let p = HypParams::new(params[0], params[1], params[2], params[3], params[4]).map_err(usage)?;
            let v = hyp3f2_unit(&p).map_err(usage)?;
            writeln!(out, "{:.16}  (error bound {:.3e})", v.value, v.error_bound).map_err(io)?;
        }
        HypCommand::Ftilde { alpha, beta } => {
            let q = FtildeParams::new(alpha, beta).map_err(usage)?;
            let d = ftilde(q).map_err(usage)?;
            let r = ftilde_via_dixon(q).map_err(usage)?;
            writeln!(out, "definition     {:.16}  (error bound {:.3e})", d.value, d.error_bound).map_err(io)?;
            writeln!(out, "single 3F2     {:.16}  (error bound {:.3e})", r.value, r.error_bound).map_err(io)?;
            writeln!(out, "difference     {:.3e}", (d.value - r.value).abs()).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn qexpand(a: QexpandArgs, out: &mut dyn Write) -> CmdResult {
    let ast = parse(&a.expr).map_err(|e| {
        let caret = format!("{}^", " ".repeat(e.offset()));
        usage(format!("{}\n  {}\n  {}", e, a.expr, caret))
    })?;
    let s = eval_expr(&ast, a.order).map_err(usage)?;
    if a.json {
        writeln!(out, "{}", render::series_json(&s)).map_err(io)?;
    } else {
        writeln!(out, "{}", s).map_err(io)?;
    }
    Ok(EXIT_OK)
}
