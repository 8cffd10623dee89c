//! Command-line front end: element expressions, the configuration file and
//! the `downup` subcommands.
//!
//! Exit codes: 0 on success, 2 on a usage error, 3 on a domain error. With
//! `--json` every outcome, including domain errors, is one JSON object on
//! stdout matching `schema/output.schema.json`.

pub mod config;
pub mod parse;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::{Algebra, AlgebraParams, PBWElement};
use crate::classify::{classify, compute_s, ClassifyOptions, RelationGroup};
use crate::conformal::{
    check_h_relations, gamma_shift, h_element, nonconformal_split, solve_conformal, ConformalData, HResiduals,
    NonconformalSplit,
};
use crate::error::{DownUpError, Result};
use crate::modules::{
    build_fc, build_fc_bar, build_fhw, exotic_module_conformal, exotic_module_conformal_mirror, exotic_module_r1,
    exotic_module_r1_mirror, orbit, simplicity_certificate, FiniteModulePresentation, Weight, WindowModule,
};
use crate::scalar::CyclotomicScalar;

pub use config::{load_str, AlgebraConfig, Bounds, Loaded};
pub use parse::{parse_element, parse_scalar, Expr};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// The JSON schema that `--json` output satisfies.
pub const OUTPUT_SCHEMA: &str = include_str!("../../schema/output.schema.json");

#[derive(Debug, Parser)]
#[command(name = "downup", version, about = "Exact computation in generalized down-up algebras")]
struct Cli {
    /// Algebra definition file.
    #[arg(long, global = true, default_value = "downup.toml")]
    config: PathBuf,
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Index window `A..B` for orbit and windowed modules.
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    /// Exponent bound for the search for r^i = s^j.
    #[arg(long, global = true)]
    bound: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal form in the basis u^i h^j d^k.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Normal form of a product.
    Mul {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Homogeneous components and length.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Solve for psi and check the H-relations.
    Conformal,
    /// Split a nonconformal phi.
    Split,
    /// Primitive ideals.
    Classify,
    /// Weights Phi^i(lambda, beta) over the window.
    Orbit {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
    },
    /// Build a finite-dimensional simple module.
    Module {
        #[command(subcommand)]
        kind: ModuleCmd,
    },
    /// Does an element act as zero on a module? MODULE is one of fhw(LAMBDA,N),
    /// fc(LAMBDA,BETA,RHO), fcbar(LAMBDA,BETA,RHO), r1(C,N), r1mirror(C,N),
    /// conf(C,J,M), confmirror(C,J,M).
    Annihilate {
        module: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Build one of the non-weight modules.
    Exotic {
        #[command(subcommand)]
        kind: ExoticCmd,
    },
    /// The relation group S(r,s).
    Relgroup,
}

#[derive(Debug, Subcommand)]
enum ModuleCmd {
    Fhw {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        n: u32,
    },
    Fc(CyclicArgs),
    Fcbar(CyclicArgs),
}

#[derive(Debug, Args)]
struct CyclicArgs {
    #[arg(allow_hyphen_values = true)]
    lambda: String,
    #[arg(allow_hyphen_values = true)]
    beta: String,
    #[arg(allow_hyphen_values = true)]
    rho: String,
}

#[derive(Debug, Subcommand)]
enum ExoticCmd {
    R1 {
        #[arg(allow_hyphen_values = true)]
        c: String,
        n: u32,
        /// Build the mirror module, on which u^n acts as zero.
        #[arg(long)]
        mirror: bool,
    },
    Conf {
        #[arg(allow_hyphen_values = true)]
        c: String,
        j: u32,
        m: u32,
        #[arg(long)]
        mirror: bool,
        /// A square root of r, when it is not in the ambient field.
        #[arg(long, allow_hyphen_values = true)]
        sqrt_r: Option<String>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx {
    loaded: Loaded,
    algebra: Algebra,
    window: (i64, i64),
    bound: Option<u32>,
}

impl Ctx {
    fn params(&self) -> &AlgebraParams {
        &self.loaded.params
    }

    fn element(&self, src: &str) -> Result<(Expr, PBWElement)> {
        let ast = parse_element(src)?;
        let x = eval_expr(&self.algebra, &ast)?;
        Ok((ast, x))
    }

    fn s_options(&self) -> crate::classify::SOptions {
        let mut o = self.loaded.s_options();
        if let Some(b) = self.bound {
            o.bound = b;
        }
        o
    }
}

/// Parses and normalizes an element expression; `H` expands to [`big_h`].
pub fn evaluate(a: &Algebra, src: &str) -> Result<PBWElement> {
    eval_expr(a, &parse_element(src)?)
}

fn eval_expr(a: &Algebra, ast: &Expr) -> Result<PBWElement> {
    let big_h = if contains_big_h(ast) { Some(big_h(a)?) } else { None };
    parse::eval(ast, a, big_h.as_ref())
}

fn contains_big_h(e: &Expr) -> bool {
    match e {
        Expr::BigH => true,
        Expr::Add(x, y) | Expr::Sub(x, y) | Expr::Mul(x, y) => contains_big_h(x) || contains_big_h(y),
        Expr::Neg(x) | Expr::Pow(x, _) => contains_big_h(x),
        _ => false,
    }
}

/// The canonical `H = ud + ψ(h)`: ψ solves the conformal equation, or is
/// ψ₀ of the split when φ is not conformal. When r ≠ 1 and γ ≠ 0 it is
/// computed after the shift and pulled back.
pub fn big_h(a: &Algebra) -> Result<PBWElement> {
    let p = a.params();
    let one = CyclotomicScalar::one();
    if p.r != one && !p.gamma.is_zero() {
        let shift = p.gamma.try_div(&(&p.r - &one))?;
        let q = gamma_shift(p)?;
        let psi = match solve_conformal(&q) {
            Ok(c) => c.psi,
            Err(DownUpError::NotConformal { .. }) => nonconformal_split(&q)?.psi0,
            Err(e) => return Err(e),
        };
        return Ok(h_element(&psi.twisted_substitute(&one, &shift)));
    }
    match solve_conformal(p) {
        Ok(c) => Ok(c.h_elem),
        Err(DownUpError::NotConformal { .. }) if p.gamma.is_zero() => Ok(nonconformal_split(p)?.h_elem()),
        Err(e) => Err(e),
    }
}

fn parse_window(s: &str) -> Result<(i64, i64)> {
    let bad = || DownUpError::InvalidConfig(format!("window must look like A..B with A < B, got '{s}'"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a >= b {
        return Err(bad());
    }
    Ok((a, b))
}

/// Runs one command line; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let name = command_name(&cli.command);
    match execute(&cli) {
        Ok((text, value)) => {
            let stdout = if cli.json {
                let v = json!({ "command": name, "result": value });
                format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
            } else {
                ensure_newline(text)
            };
            Outcome { code: EXIT_OK, stdout, stderr: String::new() }
        }
        Err(e) => {
            let stderr = format!("error[{}]: {e}\n", e.name());
            let stdout = if cli.json {
                let v = json!({ "command": name, "error": { "name": e.name(), "message": e.to_string() } });
                format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
            } else {
                String::new()
            };
            Outcome { code: EXIT_DOMAIN, stdout, stderr }
        }
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Normalize { .. } => "normalize",
        Command::Mul { .. } => "mul",
        Command::Decompose { .. } => "decompose",
        Command::Conformal => "conformal",
        Command::Split => "split",
        Command::Classify => "classify",
        Command::Orbit { .. } => "orbit",
        Command::Module { .. } => "module",
        Command::Annihilate { .. } => "annihilate",
        Command::Exotic { .. } => "exotic",
        Command::Relgroup => "relgroup",
    }
}

fn execute(cli: &Cli) -> Result<(String, Value)> {
    let src = std::fs::read_to_string(&cli.config)
        .map_err(|e| DownUpError::InvalidConfig(format!("cannot read {}: {e}", cli.config.display())))?;
    let loaded = load_str(&src)?;
    let window = match &cli.window {
        Some(w) => parse_window(w)?,
        None => (-loaded.bounds.window, loaded.bounds.window),
    };
    let ctx = Ctx { algebra: Algebra::new(loaded.params.clone()), loaded, window, bound: cli.bound };
    match &cli.command {
        Command::Normalize { expr } => normalize(&ctx, expr),
        Command::Mul { left, right } => mul(&ctx, left, right),
        Command::Decompose { expr } => decompose(&ctx, expr),
        Command::Conformal => conformal(&ctx),
        Command::Split => split(&ctx),
        Command::Classify => {
            let rep = classify(ctx.params(), &ClassifyOptions { s_options: ctx.s_options() })?;
            Ok((rep.to_text(), serde_json::to_value(&rep).unwrap()))
        }
        Command::Orbit { lambda, beta } => orbit_cmd(&ctx, lambda, beta),
        Command::Module { kind } => module_cmd(&ctx, kind),
        Command::Annihilate { module, expr } => annihilate(&ctx, module, expr),
        Command::Exotic { kind } => exotic_cmd(&ctx, kind),
        Command::Relgroup => relgroup(&ctx),
    }
}

fn check_degree(ctx: &Ctx, x: &PBWElement) -> Result<()> {
    let cap = ctx.loaded.bounds.degree;
    match x.total_degree() {
        Some(d) if d > cap => Err(DownUpError::InvalidConfig(format!(
            "result has total degree {d}, above the configured cap {cap} (raise bounds.degree)"
        ))),
        _ => Ok(()),
    }
}

fn normalize(ctx: &Ctx, src: &str) -> Result<(String, Value)> {
    let (ast, x) = ctx.element(src)?;
    check_degree(ctx, &x)?;
    let v = json!({ "input": ast.to_string(), "normal_form": x.to_string(), "terms": x.num_terms() });
    Ok((x.to_string(), v))
}

fn mul(ctx: &Ctx, l: &str, r: &str) -> Result<(String, Value)> {
    let (la, x) = ctx.element(l)?;
    let (ra, y) = ctx.element(r)?;
    let z = ctx.algebra.mul(&x, &y);
    check_degree(ctx, &z)?;
    let v = json!({
        "left": la.to_string(),
        "right": ra.to_string(),
        "normal_form": z.to_string(),
        "terms": z.num_terms(),
    });
    Ok((z.to_string(), v))
}

fn decompose(ctx: &Ctx, src: &str) -> Result<(String, Value)> {
    let (ast, x) = ctx.element(src)?;
    check_degree(ctx, &x)?;
    let mut lines = Vec::new();
    let mut comps = Vec::new();
    for (g, c) in x.homogeneous_decomposition() {
        let graded = ctx.algebra.to_graded_form(&c)?;
        let core = graded.payload.to_string_in("h", "W");
        let power = |v: &str, e: i64| if e == 1 { v.to_string() } else { format!("{v}^{e}") };
        let shape = match g {
            0 => format!("({core})"),
            g if g > 0 => format!("{}*({core})", power("u", g)),
            g => format!("({core})*{}", power("d", -g)),
        };
        lines.push(format!("degree {g}: {c}    = {shape}, W = u*d"));
        comps.push(json!({ "degree": g, "element": c.to_string(), "graded_form": shape }));
    }
    lines.push(format!("length {}", x.length()));
    let v = json!({
        "input": ast.to_string(),
        "normal_form": x.to_string(),
        "components": comps,
        "length": x.length(),
    });
    Ok((lines.join("\n"), v))
}

/// Parameters on which ψ is solved, with the γ-shift if one was applied.
fn solving_params(p: &AlgebraParams) -> Result<(AlgebraParams, Option<CyclotomicScalar>)> {
    let one = CyclotomicScalar::one();
    if p.r != one && !p.gamma.is_zero() {
        let shift = p.gamma.try_div(&(&p.r - &one))?;
        return Ok((gamma_shift(p)?, Some(shift)));
    }
    Ok((p.clone(), None))
}

fn residual_json(r: &HResiduals) -> Value {
    json!({ "u_side": r.u_side.to_string(), "d_side": r.d_side.to_string(), "all_zero": r.all_zero() })
}

fn shift_line(shift: &Option<CyclotomicScalar>) -> Option<String> {
    shift.as_ref().map(|c| format!("after the shift h -> h + {c} (gamma removed)"))
}

fn conformal(ctx: &Ctx) -> Result<(String, Value)> {
    let (q, shift) = solving_params(ctx.params())?;
    let ConformalData { psi, h_elem, kernel_exponents } = solve_conformal(&q)?;
    let a = Algebra::new(q);
    let res = check_h_relations(&a, &h_elem, None);
    let mut lines: Vec<String> = shift_line(&shift).into_iter().collect();
    lines.push(format!("conformal: psi(h) = {}", psi.to_string_in("h")));
    lines.push(format!("H = {h_elem}"));
    lines.push(format!("H-relations hold: {}", res.all_zero()));
    let v = json!({
        "conformal": true,
        "psi": psi.to_string_in("h"),
        "H": h_elem.to_string(),
        "kernel_exponents": kernel_exponents,
        "gamma_shift": shift,
        "residuals": residual_json(&res),
    });
    Ok((lines.join("\n"), v))
}

fn split(ctx: &Ctx) -> Result<(String, Value)> {
    let (q, shift) = solving_params(ctx.params())?;
    let sp: NonconformalSplit = nonconformal_split(&q)?;
    let a = Algebra::new(q);
    let h = sp.h_elem();
    let res = check_h_relations(&a, &h, Some(&sp));
    let mut lines: Vec<String> = shift_line(&shift).into_iter().collect();
    lines.push(format!("j = {}, o(r) = {}", sp.j, sp.n));
    lines.push(format!("phi0(h) = {}", sp.phi0.to_string_in("h")));
    lines.push(format!("phi~(x) = {}", sp.phi_tilde.to_string_in("x")));
    lines.push(format!("psi0(h) = {}", sp.psi0.to_string_in("h")));
    lines.push(format!("H = {h}"));
    lines.push(format!("H-relations hold: {}", res.all_zero()));
    let v = json!({
        "j": sp.j,
        "o_r": sp.n,
        "phi0": sp.phi0.to_string_in("h"),
        "phi_tilde": sp.phi_tilde.to_string_in("x"),
        "psi0": sp.psi0.to_string_in("h"),
        "H": h.to_string(),
        "gamma_shift": shift,
        "residuals": residual_json(&res),
    });
    Ok((lines.join("\n"), v))
}

fn orbit_cmd(ctx: &Ctx, lambda: &str, beta: &str) -> Result<(String, Value)> {
    let base = Weight::new(parse_scalar(lambda)?, parse_scalar(beta)?);
    check_field(ctx, &[&base.lambda, &base.beta])?;
    let o = orbit(ctx.params(), &base, ctx.window);
    let cert = simplicity_certificate(ctx.params(), &o);
    let mut lines = Vec::new();
    let mut ws = Vec::new();
    for i in o.indices() {
        let w = o.get(i);
        lines.push(format!("{i:>4}: lambda = {}, beta = {}", w.lambda, w.beta));
        ws.push(json!({ "index": i, "lambda": w.lambda, "beta": w.beta }));
    }
    match o.period {
        Some(m) => lines.push(format!("period {m}")),
        None => lines.push("no period found".into()),
    }
    lines.push(format!("certificate: {}", serde_json::to_string(&cert).unwrap()));
    let v = json!({
        "base": { "lambda": base.lambda, "beta": base.beta },
        "window": [o.window.0, o.window.1],
        "weights": ws,
        "period": o.period,
        "certificate": cert,
    });
    Ok((lines.join("\n"), v))
}

fn check_field(ctx: &Ctx, xs: &[&CyclotomicScalar]) -> Result<()> {
    let n = ctx.params().conductor;
    for x in xs {
        if !(2 * n).is_multiple_of(x.conductor()) {
            return Err(DownUpError::InvalidConfig(format!("{x} lies outside the ambient field of conductor {n}")));
        }
    }
    Ok(())
}

fn module_value(ctx: &Ctx, m: &FiniteModulePresentation) -> (String, Value) {
    let ann = m.annihilator_generators(&ctx.algebra);
    let verified = ann.iter().all(|x| m.verify_annihilates(x));
    let ann_s: Vec<String> = ann.iter().map(|x| x.to_string()).collect();
    let mut text = m.report();
    text.push_str(&format!("\nannihilator generators (verified: {verified}):\n"));
    for a in &ann_s {
        text.push_str(&format!("  {a}\n"));
    }
    let v = json!({
        "presentation": m,
        "relations_verified": m.relation_failures().is_empty(),
        "annihilator": ann_s,
        "annihilator_verified": verified,
    });
    (text, v)
}

fn finite_module(ctx: &Ctx, kind: &ModuleCmd) -> Result<FiniteModulePresentation> {
    let p = ctx.params();
    match kind {
        ModuleCmd::Fhw { lambda, n } => {
            let l = parse_scalar(lambda)?;
            check_field(ctx, &[&l])?;
            build_fhw(p, &l, *n)
        }
        ModuleCmd::Fc(c) | ModuleCmd::Fcbar(c) => {
            let (l, b, r) = (parse_scalar(&c.lambda)?, parse_scalar(&c.beta)?, parse_scalar(&c.rho)?);
            check_field(ctx, &[&l, &b, &r])?;
            let base = Weight::new(l, b);
            if matches!(kind, ModuleCmd::Fc(_)) {
                build_fc(p, &base, &r)
            } else {
                build_fc_bar(p, &base, &r)
            }
        }
    }
}

fn module_cmd(ctx: &Ctx, kind: &ModuleCmd) -> Result<(String, Value)> {
    let m = finite_module(ctx, kind)?;
    Ok(module_value(ctx, &m))
}

enum AnyModule {
    Finite(FiniteModulePresentation),
    Window(WindowModule),
}

fn split_call(src: &str) -> Result<(String, Vec<String>)> {
    let bad = || DownUpError::InvalidConfig(format!("module must look like name(arg, ...), got '{src}'"));
    let (name, rest) = src.trim().split_once('(').ok_or_else(bad)?;
    let inner = rest.strip_suffix(')').ok_or_else(bad)?;
    let args = inner.split(',').map(|a| a.trim().to_string()).collect();
    Ok((name.trim().to_string(), args))
}

fn parse_nat(s: &str) -> Result<u32> {
    s.parse().map_err(|_| DownUpError::InvalidConfig(format!("expected a nonnegative integer, got '{s}'")))
}

fn parse_module(ctx: &Ctx, src: &str) -> Result<AnyModule> {
    let (name, args) = split_call(src)?;
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(DownUpError::InvalidConfig(format!("{name} takes {n} arguments")))
        }
    };
    let w = ctx.window;
    let p = ctx.params();
    Ok(match name.as_str() {
        "fhw" => {
            arity(2)?;
            AnyModule::Finite(finite_module(ctx, &ModuleCmd::Fhw { lambda: args[0].clone(), n: parse_nat(&args[1])? })?)
        }
        "fc" | "fcbar" => {
            arity(3)?;
            let c = CyclicArgs { lambda: args[0].clone(), beta: args[1].clone(), rho: args[2].clone() };
            let cmd = if name == "fc" { ModuleCmd::Fc(c) } else { ModuleCmd::Fcbar(c) };
            AnyModule::Finite(finite_module(ctx, &cmd)?)
        }
        "r1" | "r1mirror" => {
            arity(2)?;
            let c = parse_scalar(&args[0])?;
            let n = parse_nat(&args[1])?;
            AnyModule::Window(if name == "r1" {
                exotic_module_r1(p, &c, n, w)?
            } else {
                exotic_module_r1_mirror(p, &c, n, w)?
            })
        }
        "conf" | "confmirror" => {
            arity(3)?;
            let c = parse_scalar(&args[0])?;
            let (j, m) = (parse_nat(&args[1])?, parse_nat(&args[2])?);
            AnyModule::Window(if name == "conf" {
                exotic_module_conformal(p, &c, j, m, w, None)?
            } else {
                exotic_module_conformal_mirror(p, &c, j, m, w)?
            })
        }
        _ => return Err(DownUpError::UnknownSymbol(name)),
    })
}

fn annihilate(ctx: &Ctx, module: &str, src: &str) -> Result<(String, Value)> {
    let m = parse_module(ctx, module)?;
    let (_, x) = ctx.element(src)?;
    let (kills, scope) = match &m {
        AnyModule::Finite(f) => (f.verify_annihilates(&x), format!("all {} basis vectors", f.dim)),
        AnyModule::Window(w) => {
            let r = w.interior();
            (w.kills_interior(&x), format!("interior indices {}..{}", r.start(), r.end()))
        }
    };
    let text = format!("{x} {} {module} on {scope}", if kills { "annihilates" } else { "does not annihilate" });
    let v = json!({ "module": module, "element": x.to_string(), "annihilates": kills, "scope": scope });
    Ok((text, v))
}

fn exotic_cmd(ctx: &Ctx, kind: &ExoticCmd) -> Result<(String, Value)> {
    let p = ctx.params();
    let w = ctx.window;
    let (m, e) = match kind {
        ExoticCmd::R1 { c, n, mirror } => {
            let c = parse_scalar(c)?;
            check_field(ctx, &[&c])?;
            let m = if *mirror { exotic_module_r1_mirror(p, &c, *n, w)? } else { exotic_module_r1(p, &c, *n, w)? };
            (m, *n)
        }
        ExoticCmd::Conf { c, j, m, mirror, sqrt_r } => {
            let c = parse_scalar(c)?;
            check_field(ctx, &[&c])?;
            let root = sqrt_r.as_deref().map(parse_scalar).transpose()?;
            if let Some(t) = &root {
                if (t * t) != p.r {
                    return Err(DownUpError::HypothesisFailed(format!("{t} is not a square root of r")));
                }
            }
            let md = if *mirror {
                exotic_module_conformal_mirror(p, &c, *j, *m, w)?
            } else {
                exotic_module_conformal(p, &c, *j, *m, w, root.as_ref())?
            };
            (md, *m)
        }
    };
    let u_e = ctx.algebra.pow(&PBWElement::u(), e);
    let d_e = ctx.algebra.pow(&PBWElement::d(), e);
    let kills_u = m.kills_interior(&u_e);
    let kills_d = m.kills_interior(&d_e);
    let failures: Vec<Value> = m
        .relation_failures()
        .iter()
        .take(10)
        .map(|f| json!({ "relation": f.relation, "index": f.index, "residual": crate::modules::format_vec(&f.residual.iter().cloned().collect()) }))
        .collect();
    let mut text = m.report(10);
    text.push_str(&format!("\nu^{e} acts as zero: {kills_u}\nd^{e} acts as zero: {kills_d}"));
    let r = m.interior();
    let v = json!({
        "label": m.label,
        "window": [m.window.0, m.window.1],
        "interior": [r.start(), r.end()],
        "relations_hold": m.relations_hold(),
        "failures": failures,
        "u_power_kills": kills_u,
        "d_power_kills": kills_d,
        "power": e,
    });
    Ok((text, v))
}

fn relgroup(ctx: &Ctx) -> Result<(String, Value)> {
    let p = ctx.params();
    let res = compute_s(&p.r, &p.s, &ctx.s_options())?;
    let kind = match res.group {
        RelationGroup::Trivial => "trivial",
        RelationGroup::SameSign { .. } => "same-sign",
        RelationGroup::OppositeSign { .. } => "opposite-sign",
        RelationGroup::Lattice { .. } => "lattice",
    };
    let mut text = format!("S(r,s) = {} ({kind}, {})", res.group, res.method);
    if let Some(n) = &res.note {
        text.push_str(&format!("\nnote: {n}"));
    }
    let v = json!({
        "r": p.r,
        "s": p.s,
        "group": res.group.to_string(),
        "kind": kind,
        "generator": res.group.generator().map(|(n, m)| [n, m]),
        "method": res.method,
        "note": res.note,
    });
    Ok((text, v))
}
