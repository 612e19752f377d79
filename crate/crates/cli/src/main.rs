use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use qsphere::kernel::scalar::{Laurent, QPoint, Scalar, Specialized};
use qsphere::kernel::{eval_at_q, parse, parse_rational, word, RewriteSystem};
use qsphere::quantum_spaces::{render_aa, Sphere};
use qsphere::report::{Report, Status};
use qsphere::suites::{is_suite, run_suite, SUITES};
use qsphere::{Error, Result};

/// Exit code when every check passed (inconclusive checks included unless
/// `--fail-on-inconclusive` is given).
const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

const MAX_DEGREE_CAP: usize = 12;

#[derive(Parser)]
#[command(name = "qsphere", version, about = "Exact computations and identity checks for quantum spheres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of a polynomial or a two-leg tensor `a @ b`.
    Normalize {
        #[arg(long, default_value_t = 2)]
        n: usize,
        expr: String,
    },
    /// Run verification suites and report per-check results.
    Verify {
        /// Comma-separated values of n, each in 1..=4.
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3])]
        n: Vec<usize>,
        /// Degree bound of the critical-pair search.
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        /// Comma-separated suite names, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        /// Evaluate at a nonzero rational q instead of working over Laurent polynomials.
        #[arg(long)]
        q: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Exit with code 3 when some check is inconclusive and none failed.
        #[arg(long)]
        fail_on_inconclusive: bool,
    },
    /// Normalize an expression and evaluate its coefficients at a rational q.
    Eval {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        q: String,
        expr: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Normalize { n, expr } => normalize(n, &expr).map(|s| {
            println!("{s}");
            EXIT_OK
        }),
        Command::Eval { n, q, expr } => eval(n, &q, &expr).map(|s| {
            println!("{s}");
            EXIT_OK
        }),
        Command::Verify { n, max_degree, suite, q, format, workers, fail_on_inconclusive } => {
            verify(&n, max_degree, &suite, q.as_deref(), format, workers, fail_on_inconclusive)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn normalize(n: usize, text: &str) -> Result<String> {
    let s: Sphere<Laurent> = Sphere::new(n, ())?;
    render_normal(&s, text, |c| c.clone())
}

fn eval(n: usize, q: &str, text: &str) -> Result<String> {
    let ctx = QPoint::new(parse_rational(q)?)?;
    let s: Sphere<Specialized> = Sphere::new(n, ctx.clone())?;
    render_normal(&s, text, |c| Specialized::lift(&ctx, c))
}

fn render_normal<S: Scalar>(s: &Sphere<S>, text: &str, lift: impl Fn(&Laurent) -> S) -> Result<String> {
    let e = parse(text)?;
    if e.legs() == 2 {
        let t = e.into_tensor2()?.map_coeffs(|c| lift(c));
        return Ok(render_aa(&s.normalize_aa(&t)?));
    }
    let p = e.into_poly()?;
    let p = eval_at_q::<S>(&p, s.ctx());
    Ok(word::render(&s.normalize(&p)?))
}

fn verify(
    ns: &[usize],
    max_degree: usize,
    suites: &[String],
    q: Option<&str>,
    format: Format,
    workers: usize,
    fail_on_inconclusive: bool,
) -> Result<u8> {
    if let Some(&bad) = ns.iter().find(|&&n| !(1..=4).contains(&n)) {
        return Err(Error::Config(format!("n must be in 1..=4, got {bad}")));
    }
    if max_degree > MAX_DEGREE_CAP {
        return Err(Error::Config(format!("--max-degree must be at most {MAX_DEGREE_CAP}, got {max_degree}")));
    }
    let names: Vec<&str> = if suites.iter().any(|s| s == "all") {
        SUITES.to_vec()
    } else {
        for s in suites {
            if !is_suite(s) {
                return Err(Error::Config(format!("unknown suite '{s}'; expected one of {}", SUITES.join(", "))));
            }
        }
        suites.iter().map(String::as_str).collect()
    };
    let point = q.map(|q| parse_rational(q).and_then(QPoint::new)).transpose()?;
    let jobs: Vec<(&str, usize)> = names.iter().flat_map(|&s| ns.iter().map(move |&n| (s, n))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {workers} workers: {e}")))?;
    let reports: Vec<Report> = pool.install(|| {
        jobs.par_iter()
            .map(|&(suite, n)| match &point {
                None => run_on::<Laurent>(suite, n, (), max_degree),
                Some(p) => run_on::<Specialized>(suite, n, p.clone(), max_degree),
            })
            .collect::<Result<Vec<_>>>()
    })?;
    match format {
        Format::Text => print!("{}", render_text(&reports)),
        Format::Structured => {
            println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialize"));
        }
    }
    let fails: usize = reports.iter().map(|r| r.summary.fail).sum();
    let inconclusive: usize = reports.iter().map(|r| r.summary.inconclusive).sum();
    Ok(if fails > 0 {
        EXIT_FAIL
    } else if inconclusive > 0 && fail_on_inconclusive {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    })
}

fn run_on<S: Scalar>(suite: &str, n: usize, ctx: S::Ctx, max_degree: usize) -> Result<Report> {
    let rs = RewriteSystem::<S>::with_limits(n, ctx, MAX_DEGREE_CAP, qsphere::kernel::rewrite::DEFAULT_FUEL)?;
    run_suite(suite, &Sphere::with_rewrite(rs), max_degree)
}

fn render_text(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        let s = &r.summary;
        out.push_str(&format!(
            "{} n={}: {} pass, {} fail, {} inconclusive ({} ms)\n",
            r.suite, r.n, s.pass, s.fail, s.inconclusive, r.timing.total_millis
        ));
        for c in &r.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
            };
            out.push_str(&format!("  {tag:<12} {}\n", c.name));
            if c.status != Status::Pass {
                out.push_str(&format!("      lhs: {}\n      rhs: {}\n", c.lhs, c.rhs));
            }
        }
    }
    out
}
