//! `postlie`: validate post-Lie algebras, compute Magnus terms, check the
//! factorization identities.
//!
//! Exit status: 0 when every check passes, 1 on a mathematical failure,
//! 2 on bad input.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use postlie::algebra::{AlgebraConfig, PostLieAlgebra, Report};
use postlie::numeric::{self, ErrorRow};
use postlie::partition::enumerate_partitions;
use postlie::uea::DEFAULT_TRUNC;
use postlie::verify::{self, SuiteOptions};
use postlie::{magnus, scalar, Error, Exec, GVector, Lifted, UeaElement};

#[derive(Parser, Debug)]
#[command(
    name = "postlie",
    version,
    about = "Post-Lie algebras, their enveloping algebras and Magnus expansions"
)]
struct Cli {
    /// Algebra description (JSON)
    #[arg(long, global = true)]
    algebra: Option<PathBuf>,
    /// Degree cap of the enveloping algebra
    #[arg(long, global = true, default_value_t = DEFAULT_TRUNC, value_parser = parse_trunc)]
    trunc: usize,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sampled checks and random matrices
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run the identity checks attached to the command
    #[arg(long, global = true)]
    check: bool,
    /// Run single-threaded
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

fn parse_trunc(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if (1..=12).contains(&n) => Ok(n),
        _ => Err("expected an integer in 1..=12".into()),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check Lie, modified Yang–Baxter and post-Lie axioms
    Validate,
    /// Print χ₁..χ_N for x
    Chi {
        /// Coordinates of x, comma separated (`1,-1/2,0,3`)
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Highest order (defaults to --trunc)
        #[arg(long)]
        order: Option<usize>,
    },
    /// Error table of exp(tx) against exp(χ₊)exp(−χ₋) on gl(n)
    Factorize {
        /// Matrix as a JSON array of rows
        #[arg(long, conflicts_with = "random")]
        matrix: Option<PathBuf>,
        /// Seeded random n×n matrix with entries in [−1, 1]
        #[arg(long)]
        random: Option<usize>,
        /// Zero the diagonal and lower part of the matrix
        #[arg(long)]
        strictly_upper: bool,
        #[arg(long, value_delimiter = ',', default_value = "0.25,0.125,0.0625")]
        t: Vec<f64>,
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Accepted band for E(t)/E(t/2)
        #[arg(long, value_delimiter = ',', default_value = "22,45", num_args = 1)]
        band: Vec<f64>,
    },
    /// List the set partitions of {1..n} with their terms
    Partitions { n: usize },
    /// Expand A*B for two words of basis labels (`e.f`, `1` for the unit)
    Star { a: String, b: String },
    /// Run the full identity suite
    Identities,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonPrimitive { .. }
            | Error::NotInvolutive
            | Error::Consistency(_)
            | Error::MatrixExp(_)
            | Error::InvalidLieAlgebra(_) => Failure::Math(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

struct Ctx {
    cli: Cli,
    exec: Exec,
}

impl Ctx {
    fn json(&self) -> bool {
        self.cli.format == Format::Json
    }

    fn config(&self) -> Result<AlgebraConfig, Failure> {
        let path = self
            .cli
            .algebra
            .as_ref()
            .ok_or_else(|| Failure::Input("--algebra is required for this command".into()))?;
        Ok(AlgebraConfig::load(path)?)
    }

    fn require_exact(&self, what: &str) -> Result<(), Failure> {
        if self.cli.mode == Mode::Float {
            return Err(Failure::Input(format!("{what} runs in exact mode only")));
        }
        Ok(())
    }

    /// The lifted algebra, after the axioms have been checked.
    fn lifted(&self, config: &AlgebraConfig) -> Result<Lifted, Failure> {
        let report = validation_report(config)?;
        if let Some(f) = report.failures.first() {
            return Err(Failure::Math(format!(
                "algebra fails validation: {} at {:?}",
                f.identity, f.basis
            )));
        }
        let lie = Arc::new(config.lie.clone());
        let pla = PostLieAlgebra::new(lie, config.product()?)?;
        Ok(Lifted::new(pla, self.cli.trunc))
    }
}

fn validation_report(config: &AlgebraConfig) -> Result<Report, Error> {
    match &config.explicit_product {
        None => verify::rmatrix_suite(&config.lie, &config.r, &config.theta),
        Some(p) => {
            let mut r = config.lie.axiom_report();
            r.merge(postlie::algebra::validate_post_lie(&config.lie, p));
            Ok(r)
        }
    }
}

fn report_json(r: &Report) -> Value {
    json!({
        "passed": r.passed(),
        "checked": r.checked,
        "failures": r.failures.iter().map(|f| json!({"identity": f.identity, "basis": f.basis})).collect::<Vec<_>>(),
    })
}

fn coords(v: &GVector) -> Vec<String> {
    v.coords().iter().map(scalar::format).collect()
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_validate(ctx: &Ctx) -> Outcome {
    ctx.require_exact("validate")?;
    let config = ctx.config()?;
    let report = validation_report(&config)?;
    if ctx.json() {
        println!("{}", report_json(&report));
    } else {
        for f in &report.failures {
            println!("FAIL {} {:?}", f.identity, f.basis);
        }
        println!(
            "{} ({} checks, {} failed)",
            pass_word(report.passed()),
            report.checked,
            report.failures.len()
        );
    }
    Ok(report.passed())
}

fn parse_vector(text: &str, dim: usize) -> Result<GVector, Failure> {
    let parts: Vec<scalar::Scalar> = text
        .split(',')
        .map(scalar::parse)
        .collect::<Result<_, _>>()?;
    if parts.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: parts.len(),
        }
        .into());
    }
    Ok(GVector::new(parts))
}

fn cmd_chi(ctx: &Ctx, x: &str, order: Option<usize>) -> Outcome {
    ctx.require_exact("chi")?;
    let config = ctx.config()?;
    let lifted = ctx.lifted(&config)?;
    let x = parse_vector(x, config.lie.dim())?;
    let order = order.unwrap_or(ctx.cli.trunc);
    let chi = magnus::chi_series_with(&lifted, &x, order, ctx.exec)?;
    let mut checks = Vec::new();
    if ctx.cli.check {
        let (lhs, rhs) = magnus::exp_sides(&lifted, &chi)?;
        checks.push(("exp(x) = exp*(chi(x))", lhs == rhs));
        checks.push((
            "ODE residual",
            magnus::ode_residual(&lifted, &chi)?.is_zero(),
        ));
    }
    let ok = checks.iter().all(|c| c.1);
    if ctx.json() {
        let terms: Vec<Value> = (1..=order)
            .map(|n| {
                json!({
                    "n": n,
                    "coords": coords(chi.chi(n)),
                    "element": lifted.env().format(&UeaElement::vector(chi.chi(n), lifted.trunc())),
                    "expression": magnus::closed_form_string(n),
                })
            })
            .collect();
        let checks: serde_json::Map<String, Value> = checks
            .iter()
            .map(|(k, v)| (k.to_string(), Value::Bool(*v)))
            .collect();
        println!(
            "{}",
            json!({"x": coords(&x), "order": order, "chi": terms, "checks": checks})
        );
    } else {
        for n in 1..=order {
            let v = chi.chi(n);
            let mut line = format!(
                "chi_{n} = [{}]  = {}",
                coords(v).join(", "),
                lifted.env().format(&UeaElement::vector(v, lifted.trunc()))
            );
            if let Some(e) = magnus::closed_form_string(n) {
                line.push_str(&format!("  = {e}"));
            }
            println!("{line}");
        }
        for (name, pass) in &checks {
            println!("{}: {name}", pass_word(*pass));
        }
    }
    Ok(ok)
}

fn cmd_factorize(
    ctx: &Ctx,
    matrix: Option<&PathBuf>,
    random: Option<usize>,
    strictly_upper: bool,
    ts: &[f64],
    order: usize,
    band: &[f64],
) -> Outcome {
    if ctx.cli.mode != Mode::Float {
        return Err(Failure::Input("factorize needs --mode float".into()));
    }
    if band.len() != 2 || band[0] > band[1] {
        return Err(Failure::Input("--band takes lo,hi".into()));
    }
    if ts.iter().any(|t| !t.is_finite()) {
        return Err(Failure::Input("--t values must be finite".into()));
    }
    let mut x = match (matrix, random) {
        (Some(p), _) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            numeric::parse_matrix(&text)?
        }
        (None, Some(n)) => numeric::random_matrix(n, ctx.cli.seed),
        (None, None) => return Err(Failure::Input("give --matrix or --random".into())),
    };
    if strictly_upper {
        for i in 0..x.nrows() {
            for j in 0..=i.min(x.ncols().saturating_sub(1)) {
                x[(i, j)] = 0.0;
            }
        }
    }
    if order == 0 || order > 6 {
        return Err(Error::OutOfRange {
            what: "order",
            value: order,
            min: 1,
            max: 6,
        }
        .into());
    }
    let rows: Vec<ErrorRow> = numeric::matrix_factor_check(&x, ts, order)?;
    let ok = numeric::ratios_within(&rows, band[0], band[1]);
    if ctx.json() {
        for r in &rows {
            println!("{}", serde_json::to_string(r).expect("rows serialize"));
        }
    } else {
        println!("{:>12} {:>14} {:>10}", "t", "error", "ratio");
        for r in &rows {
            let ratio = r.ratio.map_or("-".to_string(), |q| format!("{q:.3}"));
            println!("{:>12} {:>14.6e} {:>10}", r.t, r.error, ratio);
        }
        println!("{} (band [{}, {}])", pass_word(ok), band[0], band[1]);
    }
    Ok(ok)
}

fn cmd_partitions(ctx: &Ctx, n: usize) -> Outcome {
    let parts = enumerate_partitions(n)?;
    if ctx.json() {
        let list: Vec<Value> = parts
            .iter()
            .map(|p| json!({"blocks": p.blocks(), "term": p.term_string()}))
            .collect();
        println!(
            "{}",
            json!({"n": n, "count": parts.len(), "partitions": list})
        );
    } else {
        for (i, p) in parts.iter().enumerate() {
            println!("{:>4}  {}  {}", i + 1, p, p.term_string());
        }
        println!("{} partitions", parts.len());
    }
    Ok(true)
}

fn parse_word(text: &str, labels: &[String]) -> Result<Vec<usize>, Failure> {
    if text.trim() == "1" {
        return Ok(Vec::new());
    }
    text.split('.')
        .map(|s| {
            let s = s.trim();
            labels
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| Failure::Input(format!("unknown basis label '{s}'")))
        })
        .collect()
}

fn cmd_star(ctx: &Ctx, a: &str, b: &str) -> Outcome {
    ctx.require_exact("star")?;
    let config = ctx.config()?;
    let lifted = ctx.lifted(&config)?;
    let env = lifted.env();
    let labels = config.lie.labels();
    let (wa, wb) = (parse_word(a, labels)?, parse_word(b, labels)?);
    let ea = env.normalize(&wa)?;
    let eb = env.normalize(&wb)?;
    let result = lifted.star(&ea, &eb)?;
    let shape = (wa.len() == 1 && wb.len() == 1).then(|| format!("{a}{b} + {a}▷{b}"));
    if ctx.json() {
        let terms: Vec<Value> = result
            .terms()
            .map(|(m, c)| json!({"monomial": env.format_monomial(m), "coeff": scalar::format(c)}))
            .collect();
        println!(
            "{}",
            json!({"a": a, "b": b, "shape": shape, "result": env.format(&result), "terms": terms})
        );
    } else {
        if let Some(s) = shape {
            println!("{a}*{b} = {s}");
        }
        println!("{a}*{b} = {}", env.format(&result));
    }
    Ok(true)
}

fn cmd_identities(ctx: &Ctx) -> Outcome {
    ctx.require_exact("identities")?;
    let config = ctx.config()?;
    let mut opts = SuiteOptions::for_trunc(ctx.cli.trunc);
    opts.seed = ctx.cli.seed;
    opts.exec = ctx.exec;
    let res = verify::run_identities(&config, ctx.cli.trunc, &opts)?;
    if ctx.json() {
        let sections: Vec<Value> = res
            .sections
            .iter()
            .map(|s| json!({"name": s.name, "report": report_json(&s.report)}))
            .collect();
        println!(
            "{}",
            json!({"passed": res.passed(), "checked": res.checked(), "sections": sections})
        );
    } else {
        for s in &res.sections {
            println!(
                "{} {:<14} {} checks",
                pass_word(s.report.passed()),
                s.name,
                s.report.checked
            );
        }
        if let Some((section, f)) = res.first_failure() {
            println!(
                "first counterexample [{section}]: {} {:?}",
                f.identity, f.basis
            );
        }
        println!("{} ({} checks)", pass_word(res.passed()), res.checked());
    }
    Ok(res.passed())
}

fn dispatch(ctx: &Ctx) -> Outcome {
    match &ctx.cli.command {
        Command::Validate => cmd_validate(ctx),
        Command::Chi { x, order } => cmd_chi(ctx, x, *order),
        Command::Factorize {
            matrix,
            random,
            strictly_upper,
            t,
            order,
            band,
        } => cmd_factorize(
            ctx,
            matrix.as_ref(),
            *random,
            *strictly_upper,
            t,
            *order,
            band,
        ),
        Command::Partitions { n } => cmd_partitions(ctx, *n),
        Command::Star { a, b } => cmd_star(ctx, a, b),
        Command::Identities => cmd_identities(ctx),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    let ctx = Ctx { cli, exec };
    match dispatch(&ctx) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
