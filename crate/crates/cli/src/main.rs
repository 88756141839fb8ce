//! `hecke`: batch front end for the Hecke algebra library.
//!
//! Exit status: 0 on success, 1 when a verification reports a failure, 2 on
//! usage or precondition errors.

mod config;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hecke_core::cyclo::CycloNum;
use hecke_core::hecke::{self, HeckeElement};
use hecke_core::kms::{self, big_to_f64, big_to_string, Beta, ExtremeEvaluator};
use hecke_core::numberfield::rat_to_f64;
use hecke_core::oracle::{equivalence_sweep, small_monomials, Oracle};
use hecke_core::pairing::{pair, CharacterPoint};
use hecke_core::parse::{parse_field_tag, parse_hecke, parse_integral, parse_torsion};
use hecke_core::symmetry::{compare_actions, norm_lift, regularity_check, SymmetryElem};
use hecke_core::{FieldCtx, HeckeError};

use config::{Config, Format};

/// Oracle bound on intermediate double cosets during `verify`.
const ORACLE_LEVEL: u64 = 1 << 20;

#[derive(Parser, Debug)]
#[command(
    name = "hecke",
    version,
    about = "Exact computations in the Hecke algebra of the ax+b Hecke pair"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Field: Q or d<k> for Q(sqrt(-k)), k in {1,2,3,7,11,19,43,67,163}.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Config file with `key = value` lines.
    #[arg(long, global = true)]
    config: Option<String>,
    /// json or text.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Largest ideal norm an enumeration may reach.
    #[arg(long, global = true)]
    level_max: Option<u64>,
    /// Series cutoff B for truncated Dirichlet sums.
    #[arg(long, global = true)]
    bound: Option<u64>,
    /// Target absolute error for numerical results.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Print the resolved configuration to stderr before running.
    #[arg(long, global = true)]
    show_config: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Field data: units, discriminant, different.
    Field,
    /// Product of Hecke expressions, e.g. "theta(1/2)" "mu(2)".
    Mul {
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// KMS state values.
    Kms {
        /// Inverse temperature: a rational, a decimal or `inf`.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Torsion point r, e.g. "(1)/(2)".
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
        /// Evaluate phi_beta on a Hecke expression instead of theta_r.
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
        /// Use the extreme state of the character point (level, w).
        #[arg(long)]
        extreme: bool,
        #[arg(long, allow_hyphen_values = true)]
        level: Option<String>,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        w: String,
    },
    /// Dedekind zeta function.
    Zeta {
        #[arg(long)]
        beta: f64,
        /// Also report the exact partial sum over ideals of norm <= N.
        #[arg(long)]
        partial: Option<u64>,
    },
    /// Pairing <r, chi_w> at level c.
    Pair {
        #[arg(long, allow_hyphen_values = true)]
        level: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        w: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Rewrite engine against the convolution model on all small monomials.
    Verify {
        #[arg(long)]
        level: u64,
    },
    /// Geometric versus Galois action on an extreme ground state value.
    GaloisCompare {
        #[arg(long, allow_hyphen_values = true)]
        level: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        w: String,
        #[arg(long, allow_hyphen_values = true)]
        j: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Symmetry group versus extreme states at level c.
    Regularity {
        #[arg(long, allow_hyphen_values = true)]
        level: String,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(HeckeError),
}

impl From<HeckeError> for CliError {
    fn from(e: HeckeError) -> Self {
        CliError::Domain(e)
    }
}

impl From<config::ConfigError> for CliError {
    fn from(e: config::ConfigError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

type CmdResult = Result<(Value, bool), CliError>;

fn resolve_config(g: &GlobalOpts) -> Result<Config, CliError> {
    let mut cfg = match &g.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    cfg.apply_env_cap(std::env::var("HECKE_LEVEL_MAX").ok().as_deref())?;
    if let Some(f) = &g.field {
        cfg.set("field", f)?;
    }
    if let Some(f) = &g.format {
        cfg.set("format", f)?;
    }
    if let Some(n) = g.level_max {
        cfg.level_max = n;
        cfg.apply_env_cap(std::env::var("HECKE_LEVEL_MAX").ok().as_deref())?;
    }
    if let Some(b) = g.bound {
        cfg.bound = b;
    }
    if let Some(t) = g.tol {
        cfg.set("tolerance", &t.to_string())?;
    }
    Ok(cfg)
}

fn cyclo_json(v: &CycloNum) -> Value {
    let (re, im) = v.to_complex();
    json!({
        "exact": v.display(),
        "cyclotomic": {
            "m": v.modulus(),
            "coeffs": v.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        },
        "numeric": [re, im],
    })
}

fn element_json(ctx: &FieldCtx, x: &HeckeElement) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .map(|(m, c)| {
            json!({
                "a": m.a.gen.to_string(),
                "r": m.r(ctx).to_string(),
                "b": m.b.gen.to_string(),
                "coeff": c.to_string(),
                "coeff_numeric": rat_to_f64(c),
            })
        })
        .collect();
    json!({ "terms": terms, "display": x.display(ctx) })
}

fn check_level(cfg: &Config, what: &str, norm: u64) -> Result<(), CliError> {
    if norm > cfg.level_max {
        return Err(CliError::Usage(format!(
            "{what} has norm {norm}, above level_max = {} (raise --level-max or HECKE_LEVEL_MAX)",
            cfg.level_max
        )));
    }
    Ok(())
}

fn character(
    ctx: &FieldCtx,
    cfg: &Config,
    level: &str,
    w: &str,
) -> Result<CharacterPoint, CliError> {
    let c = parse_integral(ctx, level)?;
    check_level(cfg, "level", ctx.int_norm(&c))?;
    let w = hecke_core::parse::parse_field_elem(ctx, w)?;
    Ok(CharacterPoint::new(ctx, &c, &w)?)
}

fn cmd_field(ctx: &FieldCtx) -> CmdResult {
    let (t, n) = ctx.omega_poly();
    Ok((
        json!({
            "field": ctx.name(),
            "degree": ctx.degree(),
            "discriminant": ctx.discriminant().to_string(),
            "omega_minimal_polynomial": { "trace": t.to_string(), "norm": n.to_string() },
            "units": ctx.units().iter().map(|u| u.to_string()).collect::<Vec<_>>(),
            "unit_count": ctx.unit_count(),
            "delta": ctx.different().to_string(),
        }),
        true,
    ))
}

fn cmd_mul(ctx: &FieldCtx, exprs: &[String]) -> CmdResult {
    let factors: Vec<HeckeElement> = exprs
        .iter()
        .map(|e| parse_hecke(ctx, e))
        .collect::<Result<_, _>>()?;
    Ok((element_json(ctx, &hecke::mul_all(ctx, &factors)), true))
}

#[allow(clippy::too_many_arguments)]
fn cmd_kms(
    ctx: &FieldCtx,
    cfg: &Config,
    beta: &str,
    r: Option<&str>,
    element: Option<&str>,
    extreme: bool,
    level: Option<&str>,
    w: &str,
) -> CmdResult {
    let beta = Beta::parse(beta)?;
    if extreme {
        let level = level.ok_or_else(|| CliError::Usage("--extreme needs --level".into()))?;
        let r = parse_torsion(
            ctx,
            r.ok_or_else(|| CliError::Usage("--extreme needs --r".into()))?,
        )?;
        let chi = character(ctx, cfg, level, w)?;
        let head = json!({
            "r": r.to_string(),
            "level": chi.level.gen.to_string(),
            "w": chi.w.to_string(),
        });
        let mut out = match beta {
            Beta::Infinite => cyclo_json(&kms::phi_extreme_infty(ctx, &r, &chi)?),
            Beta::Finite(_) => {
                let mut ev = ExtremeEvaluator::new(ctx, cfg.bound, beta.as_f64())?;
                let v = ev.phi(&r, &chi)?;
                json!({
                    "beta": beta.as_f64(),
                    "bound": cfg.bound,
                    "numeric": v.corrected,
                    "error": v.corrected_error,
                    "truncated": v.truncated,
                    "truncated_error": v.truncated_error,
                    "zeta": ev.zeta().value,
                })
            }
        };
        merge(&mut out, head);
        return Ok((out, true));
    }
    let beta_int = beta.as_integer();
    if let Some(x) = element {
        let b = beta_int.ok_or_else(|| {
            CliError::Usage("--element needs an integer beta (exact evaluation)".into())
        })?;
        let x = parse_hecke(ctx, x)?;
        let v = kms::phi_element(ctx, &x, b);
        return Ok((
            json!({ "beta": b, "element": x.display(ctx), "exact": big_to_string(&v), "numeric": big_to_f64(&v) }),
            true,
        ));
    }
    let r = parse_torsion(
        ctx,
        r.ok_or_else(|| CliError::Usage("kms needs --r or --element".into()))?,
    )?;
    match (&beta, beta_int) {
        (Beta::Infinite, _) => Err(CliError::Usage(
            "the symmetric state at beta = inf has no closed form here; use --extreme".into(),
        )),
        (_, Some(b)) => {
            let v = kms::phi_symmetric(ctx, &r, b);
            Ok((
                json!({ "beta": b, "r": r.to_string(), "exact": big_to_string(&v), "numeric": big_to_f64(&v) }),
                true,
            ))
        }
        (Beta::Finite(q), None) => {
            let e = kms::phi_symmetric_f64(ctx, &r, beta.as_f64());
            Ok((
                json!({ "beta": q.to_string(), "r": r.to_string(), "numeric": e.value, "error": e.error }),
                true,
            ))
        }
    }
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        for (k, v) in b {
            a.insert(k, v);
        }
    }
}

fn cmd_zeta(ctx: &FieldCtx, cfg: &Config, beta: f64, partial: Option<u64>) -> CmdResult {
    let z = kms::zeta_k(ctx, beta, cfg.tolerance)?;
    let mut out = json!({
        "field": ctx.name(),
        "beta": beta,
        "value": z.value,
        "error": z.error,
        "prime_bound": z.prime_bound,
    });
    if let Some(n) = partial {
        if n > 10_000_000 {
            return Err(CliError::Usage("partial sum cutoff above 1e7".into()));
        }
        let mut p = json!({ "cutoff": n, "numeric": kms::partial_zeta(ctx, n, beta) });
        if beta.fract() == 0.0 && beta > 0.0 {
            let e = kms::partial_zeta_exact(ctx, n, beta as u32);
            merge(&mut p, json!({ "exact": big_to_string(&e) }));
        }
        merge(&mut out, json!({ "partial": p }));
    }
    Ok((out, true))
}

fn cmd_pair(ctx: &FieldCtx, cfg: &Config, level: &str, w: &str, r: &str) -> CmdResult {
    let chi = character(ctx, cfg, level, w)?;
    let r = parse_torsion(ctx, r)?;
    let v = pair(ctx, &r, &chi)?;
    let (re, im) = v.to_complex();
    Ok((
        json!({ "order": v.order, "exponent": v.exponent, "numeric": [re, im] }),
        true,
    ))
}

fn cmd_verify(ctx: &FieldCtx, cfg: &Config, level: u64) -> CmdResult {
    check_level(cfg, "verify level", level)?;
    let monos = small_monomials(ctx, level);
    let oracle = Oracle::new(ctx, ORACLE_LEVEL);
    let rep = equivalence_sweep(&oracle, &monos);
    let ok = rep.failures.is_empty();
    Ok((
        json!({
            "field": ctx.name(),
            "level": level,
            "monomials": monos.len(),
            "checked": rep.checked,
            "failures": rep.failures,
        }),
        ok,
    ))
}

fn cmd_galois(ctx: &FieldCtx, cfg: &Config, level: &str, w: &str, j: &str, r: &str) -> CmdResult {
    let chi = character(ctx, cfg, level, w)?;
    let j = hecke_core::parse::parse_field_elem(ctx, j)?;
    let j = SymmetryElem::new(ctx, &chi.level.gen, &j)?;
    let r = parse_torsion(ctx, r)?;
    let rep = compare_actions(ctx, &r, &chi, &j)?;
    let m = chi.value_modulus(ctx);
    let (lift, norm) = norm_lift(ctx, &j, m)?;
    Ok((
        json!({
            "field": ctx.name(),
            "level": chi.level.gen.to_string(),
            "w": chi.w.to_string(),
            "j": j.lift.to_string(),
            "r": r.to_string(),
            "j_lift": lift.to_string(),
            "norm_exponent": norm.rem_euclid(m as i128).to_string(),
            "geometric": cyclo_json(&rep.geometric.lift(m)),
            "arithmetic": cyclo_json(&rep.arithmetic.lift(m)),
            "equal": rep.equal,
        }),
        true,
    ))
}

fn cmd_regularity(ctx: &FieldCtx, cfg: &Config, level: &str) -> CmdResult {
    let c = parse_integral(ctx, level)?;
    check_level(cfg, "level", ctx.int_norm(&c))?;
    let rep = regularity_check(ctx, &c)?;
    let ok = rep.regular();
    Ok((
        json!({
            "field": ctx.name(),
            "level": rep.level.to_string(),
            "group_order": rep.group_order,
            "extreme_classes": rep.extreme_classes,
            "transitive": rep.transitive,
            "free": rep.free,
            "regular": ok,
        }),
        ok,
    ))
}

fn run(cli: &Cli, cfg: Result<Config, CliError>) -> CmdResult {
    let cfg = cfg?;
    if cli.global.show_config {
        eprint!("{}", cfg.to_text());
    }
    let ctx = parse_field_tag(&cfg.field)?;
    let out = match &cli.command {
        Command::Field => cmd_field(&ctx),
        Command::Mul { exprs } => cmd_mul(&ctx, exprs),
        Command::Kms {
            beta,
            r,
            element,
            extreme,
            level,
            w,
        } => cmd_kms(
            &ctx,
            &cfg,
            beta,
            r.as_deref(),
            element.as_deref(),
            *extreme,
            level.as_deref(),
            w,
        ),
        Command::Zeta { beta, partial } => cmd_zeta(&ctx, &cfg, *beta, *partial),
        Command::Pair { level, w, r } => cmd_pair(&ctx, &cfg, level, w, r),
        Command::Verify { level } => cmd_verify(&ctx, &cfg, *level),
        Command::GaloisCompare { level, w, j, r } => cmd_galois(&ctx, &cfg, level, w, j, r),
        Command::Regularity { level } => cmd_regularity(&ctx, &cfg, level),
    }?;
    Ok(out)
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("values serialize"),
        Format::Text => match v {
            Value::Object(map) => map
                .iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}: {s}"),
                    other => format!("{k}: {other}"),
                })
                .collect::<Vec<_>>()
                .join("\n"),
            other => other.to_string(),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = resolve_config(&cli.global);
    let format = match &cfg {
        Ok(c) => c.format,
        Err(_) => cli
            .global
            .format
            .as_deref()
            .and_then(|f| f.parse().ok())
            .unwrap_or(Format::Json),
    };
    // arithmetic overflow in exact code panics; report it as an error instead
    std::panic::set_hook(Box::new(|_| {}));
    let outcome = std::panic::catch_unwind(move || run(&cli, cfg)).unwrap_or_else(|_| {
        Err(CliError::Usage(
            "arithmetic overflow: input too large for exact 128-bit arithmetic".into(),
        ))
    });
    match outcome {
        Ok((value, ok)) => {
            println!("{}", render(&value, format));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let msg = e.to_string();
            match format {
                Format::Json => eprintln!("{}", json!({ "error": msg })),
                Format::Text => eprintln!("error: {msg}"),
            }
            ExitCode::from(2)
        }
    }
}
