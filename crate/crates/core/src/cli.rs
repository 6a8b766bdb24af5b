//! The `fatpoint` command line.
//!
//! Exit codes: 0 success, 2 malformed input, 3 degree cap reached,
//! 4 inconclusive certificate, 5 failed check.

use crate::bezout::{
    certificate_from_json, certificate_to_json, emptiness_certificate, inconclusive_to_json,
    verify_certificate,
};
use crate::configs::verify::{certificate_id, LONG_RUN_BUDGET};
use crate::configs::{
    cached_alpha, classify, mu_d, reproduce_table_with, AlphaCache, TableOptions, VerifyOptions,
};
use crate::error::{Error, Result};
use crate::geometry::{
    build_recipe, standard_k_config, CurveComponent, FatPointScheme, KConfigType, ProjPoint,
};
use crate::linsys::{
    alpha_with, dim_linear_system_with, system_basis, Alpha, DimOptions, LinearSystemQuery,
};
use crate::waldschmidt::{default_degree_cap, rational_json, WaldschmidtReport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;
pub const EXIT_FAILED: i32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Parser)]
#[command(
    name = "fatpoint",
    version,
    about = "Initial degrees and Waldschmidt constants of plane point configurations"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Seed for the prime stream.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Primes that must all see full rank before a system is called empty.
    #[arg(long, default_value_t = 3, global = true)]
    pub primes: usize,
    /// Cache file; defaults to $FATPOINT_CACHE or the user cache directory.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Scheme JSON file.
    #[arg(long)]
    pub scheme: Option<PathBuf>,
    /// Type of a standard configuration, e.g. 1,2,6.
    #[arg(long = "type")]
    pub ty: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension of [I_Z]_d.
    Dims {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        d: u32,
        /// Also print a basis as integer coefficient lists.
        #[arg(long)]
        basis: bool,
    },
    /// Initial degree of the t-th symbolic power.
    Alpha {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        t: u32,
        #[arg(long)]
        degree_cap: Option<u32>,
    },
    /// Sequence alpha(I^(t))/t, bounds and closed form.
    Waldschmidt {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 4)]
        t_max: u32,
        /// Stabilization checks at (mu, d) for catalogued types.
        #[arg(long, default_value_t = 1)]
        m_max: u32,
    },
    /// Emptiness certificate for [I_{m mu X}]_{m d - 1}.
    Certificate {
        #[arg(long = "type", required_unless_present = "verify_only")]
        ty: Option<String>,
        #[arg(long, required_unless_present = "verify_only")]
        mu: Option<u32>,
        #[arg(long, required_unless_present = "verify_only")]
        d: Option<u32>,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Also write the certificate here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replay a certificate file instead of producing one.
        #[arg(long, conflicts_with_all = ["ty", "mu", "d"])]
        verify_only: Option<PathBuf>,
    },
    /// Reproduce the catalogue within parameter bounds.
    Table {
        #[arg(long, default_value_t = 5)]
        b_max: u32,
        #[arg(long, default_value_t = 12)]
        c_max: u32,
        #[arg(long, default_value_t = 2)]
        m_max: u32,
        /// Run the unreduced degree-71 check for (2,3,5).
        #[arg(long)]
        long_run: bool,
        /// Estimated seconds of elimination allowed per type.
        #[arg(long, default_value_t = 120)]
        budget: u64,
        /// Directory for table.md, table.json and timing.json.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Show or clear the initial-degree cache.
    Cache {
        #[arg(long)]
        clear: bool,
    },
}

struct Ctx<'a> {
    format: Format,
    dim: DimOptions,
    cache: Option<AlphaCache>,
    out: &'a mut dyn Write,
}

/// Parses `args` and runs the command; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_MALFORMED } else { 0 };
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_MALFORMED
        }
    }
}

pub fn main() -> i32 {
    run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr(),
    )
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let mut dim = DimOptions {
        primes: cli.primes.max(1),
        ..DimOptions::default()
    };
    if let Some(s) = cli.seed {
        dim.seed = s;
    }
    let cache_path = cli.cache.clone().unwrap_or_else(AlphaCache::default_path);
    let needs_cache = matches!(
        cli.command,
        Command::Alpha { .. } | Command::Table { .. } | Command::Cache { .. }
    );
    let cache = if needs_cache {
        Some(AlphaCache::open(&cache_path)?)
    } else {
        None
    };
    let mut ctx = Ctx {
        format: cli.format,
        dim,
        cache,
        out,
    };
    match cli.command {
        Command::Dims { scheme, d, basis } => cmd_dims(&mut ctx, &read_scheme(&scheme)?, d, basis),
        Command::Alpha {
            input,
            t,
            degree_cap,
        } => cmd_alpha(&mut ctx, &input, t, degree_cap),
        Command::Waldschmidt {
            input,
            t_max,
            m_max,
        } => cmd_waldschmidt(&mut ctx, &input, t_max, m_max),
        Command::Certificate {
            ty,
            mu,
            d,
            m,
            out,
            verify_only,
        } => match verify_only {
            Some(path) => cmd_verify_only(&mut ctx, &path),
            None => cmd_certificate(
                &mut ctx,
                &parse_type(ty.as_deref().expect("required"))?,
                mu.expect("required"),
                d.expect("required"),
                m,
                out,
            ),
        },
        Command::Table {
            b_max,
            c_max,
            m_max,
            long_run,
            budget,
            out_dir,
        } => cmd_table(&mut ctx, b_max, c_max, m_max, long_run, budget, &out_dir),
        Command::Cache { clear } => {
            let c = ctx.cache.as_ref().expect("opened");
            if clear && c.path().exists() {
                std::fs::remove_file(c.path())?;
            }
            let entries = if clear { 0 } else { c.len() };
            emit_json(
                ctx.out,
                &json!({"path": c.path().display().to_string(), "entries": entries}),
            )?;
            Ok(0)
        }
    }
}

fn parse_type(s: &str) -> Result<KConfigType> {
    s.parse()
}

fn read_scheme(path: &PathBuf) -> Result<FatPointScheme> {
    FatPointScheme::from_json_str(&std::fs::read_to_string(path)?)
}

enum Loaded {
    Standard(KConfigType, Vec<ProjPoint>),
    File(FatPointScheme),
}

impl Loaded {
    fn from_input(input: &Input) -> Result<Self> {
        match (&input.ty, &input.scheme) {
            (Some(t), _) => {
                let t = parse_type(t)?;
                let pts = standard_k_config(&t);
                Ok(Loaded::Standard(t, pts))
            }
            (None, Some(p)) => Ok(Loaded::File(read_scheme(p)?)),
            (None, None) => Err(Error::Parse("one of --type or --scheme is required".into())),
        }
    }

    fn points(&self) -> Vec<ProjPoint> {
        match self {
            Loaded::Standard(_, p) => p.clone(),
            Loaded::File(z) => z.points().cloned().collect(),
        }
    }

    fn ty(&self) -> Option<&KConfigType> {
        match self {
            Loaded::Standard(t, _) => Some(t),
            Loaded::File(_) => None,
        }
    }

    /// `t Z`; for a type this is `t X`.
    fn scaled(&self, t: u32) -> FatPointScheme {
        match self {
            Loaded::Standard(_, p) => FatPointScheme::uniform(p, t).expect("distinct"),
            Loaded::File(z) => z.scaled(t),
        }
    }

    fn reduced(&self) -> bool {
        match self {
            Loaded::Standard(..) => true,
            Loaded::File(z) => z.max_multiplicity() <= 1,
        }
    }
}

/// Witness degree plus 2 when `t` is a multiple of the catalogue's `mu`,
/// otherwise four times the total multiplicity.
fn degree_cap_for(loaded: &Loaded, t: u32) -> u32 {
    let z = loaded.scaled(t);
    let witness = loaded.ty().and_then(|ty| {
        let row = classify(ty)?;
        let (mu, d) = mu_d(row, ty)?;
        build_recipe(ty).ok()?;
        (t as u64)
            .is_multiple_of(mu)
            .then(|| (t as u64 / mu * d) as u32)
    });
    default_degree_cap(&z, witness)
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn method_str(v: &Value) -> String {
    v["kind"].as_str().unwrap_or("").to_string()
}

fn cmd_dims(ctx: &mut Ctx, z: &FatPointScheme, d: u32, basis: bool) -> Result<i32> {
    let q = LinearSystemQuery::new(z.clone(), d);
    let r = dim_linear_system_with(&q, &ctx.dim);
    let method = serde_json::to_value(r.method)?;
    let basis_v: Option<Vec<Vec<String>>> = basis.then(|| {
        system_basis(&q)
            .iter()
            .map(|c| c.poly().coeffs().iter().map(|x| x.to_string()).collect())
            .collect()
    });
    match ctx.format {
        Format::Json => {
            let mut v = json!({
                "degree": d,
                "dimension": r.dimension,
                "expected_dimension": r.expected_dimension,
                "superabundance": r.superabundance,
                "method": method,
            });
            if let Some(b) = &basis_v {
                v["basis"] = json!(b);
            }
            emit_json(ctx.out, &v)?;
        }
        Format::Csv => {
            writeln!(
                ctx.out,
                "degree,dimension,expected_dimension,superabundance,method"
            )?;
            writeln!(
                ctx.out,
                "{d},{},{},{},{}",
                r.dimension,
                r.expected_dimension,
                r.superabundance,
                method_str(&method)
            )?;
        }
        Format::Markdown => {
            writeln!(
                ctx.out,
                "| Degree | Dimension | Expected | Superabundance | Method |"
            )?;
            writeln!(ctx.out, "|---|---|---|---|---|")?;
            writeln!(
                ctx.out,
                "| {d} | {} | {} | {} | {} |",
                r.dimension,
                r.expected_dimension,
                r.superabundance,
                method_str(&method)
            )?;
        }
    }
    if let (Some(b), false) = (&basis_v, ctx.format == Format::Json) {
        for coeffs in b {
            writeln!(ctx.out, "{}", coeffs.join(" "))?;
        }
    }
    Ok(0)
}

fn cmd_alpha(ctx: &mut Ctx, input: &Input, t: u32, cap: Option<u32>) -> Result<i32> {
    if t == 0 {
        return Err(Error::Parse("--t must be at least 1".into()));
    }
    let loaded = Loaded::from_input(input)?;
    let cap = cap.unwrap_or_else(|| degree_cap_for(&loaded, t));
    let a = if loaded.reduced() {
        cached_alpha(ctx.cache.as_ref(), &loaded.points(), t, cap, &ctx.dim)?
    } else {
        alpha_with(&loaded.scaled(t), cap, &ctx.dim)
    };
    let (value, code) = match a {
        Alpha::Found(v) => (json!(v), 0),
        Alpha::NotFoundBelowCap(_) => (Value::Null, EXIT_CAP),
    };
    match ctx.format {
        Format::Json => emit_json(ctx.out, &json!({"t": t, "alpha": value, "degree_cap": cap}))?,
        Format::Csv => writeln!(
            ctx.out,
            "t,alpha,degree_cap\n{t},{},{cap}",
            csv_opt(a.value())
        )?,
        Format::Markdown => writeln!(
            ctx.out,
            "| t | alpha | Degree cap |\n|---|---|---|\n| {t} | {} | {cap} |",
            a.value().map_or("not found".to_string(), |v| v.to_string())
        )?,
    }
    Ok(code)
}

fn csv_opt(v: Option<u32>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

fn cmd_waldschmidt(ctx: &mut Ctx, input: &Input, t_max: u32, m_max: u32) -> Result<i32> {
    let loaded = Loaded::from_input(input)?;
    let points = loaded.points();
    let stab = loaded.ty().and_then(|ty| {
        let (mu, d) = mu_d(classify(ty)?, ty)?;
        Some((mu as u32, d as u32, m_max))
    });
    let report = WaldschmidtReport::compute(&points, loaded.ty(), t_max, stab);
    let capped = report.seq.iter().any(|e| e.alpha.value().is_none());
    match ctx.format {
        Format::Json => emit_json(ctx.out, &report.to_json())?,
        Format::Csv => {
            writeln!(ctx.out, "t,alpha,ratio")?;
            for e in &report.seq {
                let r = e
                    .ratio
                    .as_ref()
                    .map_or(String::new(), |r| format!("{}/{}", r.numer(), r.denom()));
                writeln!(ctx.out, "{},{},{r}", e.t, csv_opt(e.alpha.value()))?;
            }
        }
        Format::Markdown => {
            writeln!(ctx.out, "| t | alpha | alpha/t |\n|---|---|---|")?;
            for e in &report.seq {
                let r = e
                    .ratio
                    .as_ref()
                    .map_or("skipped".to_string(), |r| r.to_string());
                let a = e
                    .alpha
                    .value()
                    .map_or("not found".to_string(), |v| v.to_string());
                writeln!(ctx.out, "| {} | {a} | {r} |", e.t)?;
            }
            let upper = report
                .upper_bound
                .as_ref()
                .map_or("-".to_string(), |u| u.to_string());
            writeln!(ctx.out, "\nBounds: {} <= w <= {upper}", report.lower_bound)?;
            writeln!(ctx.out, "Closed form: {}", report.closed_form)?;
            if let Some(s) = &report.stabilization {
                let verdicts: Vec<String> = s
                    .entries
                    .iter()
                    .map(|e| format!("m={} {}", e.m, if e.passed() { "passed" } else { "failed" }))
                    .collect();
                writeln!(
                    ctx.out,
                    "Stabilization at (mu, d) = ({}, {}): {}",
                    s.mu,
                    s.d,
                    verdicts.join(", ")
                )?;
            }
        }
    }
    Ok(if capped { EXIT_CAP } else { 0 })
}

fn recipe_hints(t: &KConfigType) -> Vec<CurveComponent> {
    build_recipe(t)
        .map(|r| {
            r.components
                .into_iter()
                .map(|c| CurveComponent {
                    multiplicity: 1,
                    ..c
                })
                .collect()
        })
        .unwrap_or_default()
}

fn cmd_certificate(
    ctx: &mut Ctx,
    t: &KConfigType,
    mu: u32,
    d: u32,
    m: u32,
    out: Option<PathBuf>,
) -> Result<i32> {
    if mu == 0 || d == 0 || m == 0 {
        return Err(Error::Parse("--mu, --d and --m must be positive".into()));
    }
    let z = FatPointScheme::uniform(&standard_k_config(t), m * mu)?;
    let degree = m * d - 1;
    let rank = dim_linear_system_with(&LinearSystemQuery::new(z.clone(), degree), &ctx.dim);
    let rank_v = json!({"dimension": rank.dimension, "method": serde_json::to_value(rank.method)?});
    match emptiness_certificate(&z, degree, &recipe_hints(t)) {
        Ok(c) => {
            let verified = verify_certificate(&c);
            let agrees = verified && rank.dimension == 0;
            let cert = certificate_to_json(&c);
            if let Some(p) = out {
                std::fs::write(p, serde_json::to_string_pretty(&cert)?)?;
            }
            let v = json!({
                "id": certificate_id(&c),
                "type": t.to_string(),
                "degree": degree,
                "verified": verified,
                "rank_check": rank_v,
                "agrees_with_rank": agrees,
                "certificate": cert,
            });
            match ctx.format {
                Format::Json => emit_json(ctx.out, &v)?,
                Format::Csv => writeln!(ctx.out, "id,degree,steps,verified,rank_dimension\n{},{degree},{},{verified},{}", certificate_id(&c), c.steps.len(), rank.dimension)?,
                Format::Markdown => writeln!(
                    ctx.out,
                    "| Id | Degree | Steps | Verified | Rank dimension |\n|---|---|---|---|---|\n| {} | {degree} | {} | {verified} | {} |",
                    certificate_id(&c),
                    c.steps.len(),
                    rank.dimension
                )?,
            }
            Ok(if agrees { 0 } else { EXIT_FAILED })
        }
        Err(inc) => {
            let v = json!({
                "type": t.to_string(),
                "degree": degree,
                "inconclusive": inconclusive_to_json(&inc),
                "rank_check": rank_v,
            });
            emit_json(ctx.out, &v)?;
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

fn cmd_verify_only(ctx: &mut Ctx, path: &PathBuf) -> Result<i32> {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let c = certificate_from_json(v.get("certificate").unwrap_or(&v))?;
    let verified = verify_certificate(&c);
    let (z, d) = &c.initial;
    let rank = dim_linear_system_with(&LinearSystemQuery::new(z.clone(), *d), &ctx.dim);
    let ok = verified && rank.dimension == 0;
    match ctx.format {
        Format::Json => emit_json(
            ctx.out,
            &json!({"id": certificate_id(&c), "verified": verified, "rank_dimension": rank.dimension, "verdict": ok}),
        )?,
        Format::Csv => writeln!(ctx.out, "id,verified,rank_dimension,verdict\n{},{verified},{},{ok}", certificate_id(&c), rank.dimension)?,
        Format::Markdown => writeln!(
            ctx.out,
            "| Id | Verified | Rank dimension | Verdict |\n|---|---|---|---|\n| {} | {verified} | {} | {ok} |",
            certificate_id(&c),
            rank.dimension
        )?,
    }
    Ok(if ok { 0 } else { EXIT_FAILED })
}

fn cmd_table(
    ctx: &mut Ctx,
    b_max: u32,
    c_max: u32,
    m_max: u32,
    long_run: bool,
    budget: u64,
    out_dir: &PathBuf,
) -> Result<i32> {
    let budget = Duration::from_secs(budget);
    let opts = TableOptions {
        b_max,
        c_max,
        verify: VerifyOptions {
            m_max,
            budget: if long_run {
                budget.max(LONG_RUN_BUDGET)
            } else {
                budget
            },
            long_run,
            dim: ctx.dim,
            cache: ctx.cache.as_ref(),
        },
    };
    let report = reproduce_table_with(&opts);
    std::fs::create_dir_all(out_dir)?;
    let md = report.to_markdown();
    let js = report.to_json();
    std::fs::write(out_dir.join("table.md"), &md)?;
    std::fs::write(
        out_dir.join("table.json"),
        serde_json::to_string_pretty(&js)?,
    )?;
    std::fs::write(
        out_dir.join("timing.json"),
        serde_json::to_string_pretty(&report.timing_json())?,
    )?;
    match ctx.format {
        Format::Json => emit_json(ctx.out, &js)?,
        Format::Markdown => write!(ctx.out, "{md}")?,
        Format::Csv => {
            writeln!(
                ctx.out,
                "type,row,closed_form,mu,d,passed,failed,skipped,status"
            )?;
            for o in &report.outcomes {
                let cf = match &o.closed_form {
                    crate::configs::ClosedForm::Exact(v) => {
                        rational_json(v).as_str().unwrap_or("").to_string()
                    }
                    crate::configs::ClosedForm::Interval(lo, hi) => format!(
                        "{}/{}..{}/{}",
                        lo.numer(),
                        lo.denom(),
                        hi.numer(),
                        hi.denom()
                    ),
                };
                let (mu, d) = o.mu_d.map_or((String::new(), String::new()), |(m, d)| {
                    (m.to_string(), d.to_string())
                });
                writeln!(
                    ctx.out,
                    "\"{}\",{},{cf},{mu},{d},{},{},{},{}",
                    o.ty,
                    serde_json::to_value(o.row)?.as_str().unwrap_or(""),
                    o.count(crate::configs::Status::Passed),
                    o.count(crate::configs::Status::Failed),
                    o.count(crate::configs::Status::Skipped),
                    serde_json::to_value(o.status())?.as_str().unwrap_or("")
                )?;
            }
        }
    }
    Ok(if report.failures() > 0 {
        EXIT_FAILED
    } else {
        0
    })
}
