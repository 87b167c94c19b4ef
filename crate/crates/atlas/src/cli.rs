//! Argument parsing and dispatch for the `higgs-atlas` binary.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand};
use higgs_atlas_core::catalog::{
    census, character_variety_dimension, lie_algebra_dimension, parameterization, parse_group,
    resolve_extra_reading, ADOPTED_READING, RETRACTION_TARGET,
};
use higgs_atlas_core::deformation::{
    graded_limit, limit_destabilized_branch, search_admissible_weights, Direction, NDescriptor,
    WeightAssignment,
};
use higgs_atlas_core::f2cohomology::{minimal_tuple_lengths, total_sw_of_sum};
use higgs_atlas_core::higgs::*;
use higgs_atlas_core::stability::{check_polystability, StabilityOptions, DEFAULT_BUDGET};
use higgs_atlas_core::{Curve, Error, F2Class};
use serde_json::{json, Value};

use crate::json::{self as j, SCHEMA};
use crate::verify;

pub const BUDGET_ENV: &str = "HIGGS_ATLAS_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "higgs-atlas", version, about = "Symbolic toolkit for graded Higgs bundles and their components")]
pub struct Cli {
    /// Print an aligned text table instead of JSON.
    #[arg(long, global = true)]
    pub table: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a graded Higgs bundle from a named family.
    Build(BuildArgs),
    /// Polystability verdict for a bundle given as JSON.
    Stability(StabilityArgs),
    /// Graded C*-limit of a bundle under a diagonal weight gauge.
    Limit(LimitArgs),
    /// Stiefel-Whitney classes of a sum of real line bundles.
    Sw(SwArgs),
    /// Components of a character variety.
    Census(CensusArgs),
    /// Parameterization of a labeled component.
    Param(ParamArgs),
    /// Dimensions attached to a group.
    Dim(DimArgs),
    /// Run the invariant suite.
    Verify,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// fuchsian, hitchin-sl, hitchin-so, hitchin-sp, hitchin-pso, psi-d,
    /// maximal-so2n, twisted-fuchsian, so12, so34-eta, deform-so35
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub genus: u32,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<i64>,
    /// Name of the chosen square root of K.
    #[arg(long, default_value = "S")]
    pub spin: String,
    /// Sections to switch off, e.g. `q2,mu`.
    #[arg(long, value_delimiter = ',')]
    pub zero: Vec<String>,
    /// W_0 form for maximal-so2n: split, trivial or prym.
    #[arg(long, default_value = "split")]
    pub w0: String,
    /// sw1 of a Prym block, as a bit string.
    #[arg(long)]
    pub class: Option<String>,
    /// sw2 of a Prym block.
    #[arg(long, default_value_t = 0)]
    pub sw2: u8,
    /// Torsion classes for twisted-fuchsian.
    #[arg(long, value_delimiter = ',')]
    pub classes: Vec<String>,
    /// Embed a maximal SO0(2,3) object: `so2n:N` or `so33`.
    #[arg(long)]
    pub embed: Option<String>,
    /// Emit the associated SL(N,C) object.
    #[arg(long)]
    pub sl: bool,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Bundle JSON file; standard input when absent.
    #[arg(long)]
    pub input: Option<String>,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Accept objects outside the recognized families.
    #[arg(long)]
    pub summand_generated: bool,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub weights: Vec<i64>,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub scale: i64,
    /// zero or inf.
    #[arg(long, default_value = "zero")]
    pub direction: String,
    /// Degree of a destabilizing line N; selects the unstable branch.
    #[arg(long)]
    pub n_degree: Option<i64>,
    /// Sections of the N splitting to switch off (alpha, beta, gamma).
    #[arg(long, value_delimiter = ',')]
    pub zero: Vec<String>,
    /// Search for admissible weights with |w| <= BOUND instead.
    #[arg(long)]
    pub search: Option<i64>,
    #[arg(long)]
    pub summand_generated: bool,
}

#[derive(Debug, Args)]
pub struct SwArgs {
    #[arg(long)]
    pub genus: u32,
    #[arg(long, value_delimiter = ',')]
    pub classes: Vec<String>,
    /// Report the shortest tuple length realizing each pair, up to this length.
    #[arg(long)]
    pub minimal: Option<u32>,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub genus: u32,
    #[arg(long)]
    pub maximal: bool,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long, allow_hyphen_values = true)]
    pub d: i64,
    #[arg(long)]
    pub genus: u32,
}

#[derive(Debug, Args)]
pub struct DimArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub genus: u32,
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    error: Error,
    payload: Option<Value>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, payload: None }
    }
}

type Run = std::result::Result<(Value, String), Failure>;

fn budget() -> std::result::Result<u64, Error> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{BUDGET_ENV} must be an integer, got `{s}`"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn read_input(args: &InputArgs, stdin: &mut dyn Read) -> std::result::Result<String, Error> {
    match &args.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read `{path}`: {e}"))),
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn parse_class(genus: u32, s: &str) -> std::result::Result<F2Class, Error> {
    let c: F2Class = s.parse()?;
    if c.genus() != genus {
        return Err(Error::DimensionMismatch { left: genus, right: c.genus() });
    }
    Ok(c)
}

fn need<T>(v: Option<T>, flag: &str) -> std::result::Result<T, Error> {
    v.ok_or_else(|| Error::Precondition(format!("--{flag} is required for this family")))
}

fn bundle_table(h: &GradedHiggsBundle) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} genus {} family {}", h.group(), h.genus(), h.family().unwrap_or("-"));
    let _ = writeln!(out, "{:>3}  {:<4} {:<16} {:>6}", "#", "side", "bundle", "degree");
    for (i, s) in h.summands().iter().enumerate() {
        let _ = writeln!(out, "{:>3}  {:<4} {:<16} {:>6}", i, s.side.as_str(), s.bundle.to_string(), h.degree(i));
    }
    for e in h.higgs().iter().filter(|e| e.symbol.is_nonzero()) {
        let _ = writeln!(out, "  {} <- {}  {} ({})", e.target, e.source, e.symbol.name, e.symbol.vanishing.as_str());
    }
    for e in h.dolbeault() {
        let _ = writeln!(out, "  {} <~ {}  {} (extension)", e.target, e.source, e.name);
    }
    out
}

fn build(a: &BuildArgs) -> std::result::Result<GradedHiggsBundle, Error> {
    let c = Curve::new(a.genus)?;
    let sw = Switches::with_off(a.zero.iter().map(String::as_str));
    let h = match a.family.as_str() {
        "fuchsian" => build_fuchsian(c, &a.spin, &sw)?,
        "hitchin-sl" => build_hitchin_sl(c, need(a.n, "n")?, Some(&a.spin), &sw)?,
        "hitchin-so" => build_hitchin_so(c, need(a.n, "n")?, &sw)?,
        "hitchin-sp" => build_hitchin_sp(c, need(a.n, "n")?, &a.spin, &sw)?,
        "hitchin-pso" => build_hitchin_pso_nn(c, need(a.n, "n")?, &sw)?,
        "psi-d" => build_psi_d(c, need(a.n, "n")?, need(a.d, "d")?, &sw)?,
        "so12" => build_so12(c, need(a.d, "d")?, &sw)?,
        "so34-eta" => build_so34_eta(c, need(a.d, "d")?, &sw)?,
        "deform-so35" => build_deform_so35(c, need(a.d, "d")?, &sw)?,
        "maximal-so2n" => {
            let w0 = match a.w0.as_str() {
                "split" => W0Descriptor::Split { degree: need(a.d, "d")? },
                "trivial" => W0Descriptor::Trivial,
                "prym" => W0Descriptor::Prym {
                    torsion: "I".into(),
                    class: parse_class(a.genus, &need(a.class.clone(), "class")?)?,
                    sw2: a.sw2 != 0,
                },
                other => return Err(Error::Parse(format!("unknown W0 form `{other}`"))),
            };
            build_maximal_so2n(c, need(a.n, "n")?, &w0, &sw)?
        }
        "twisted-fuchsian" => {
            let classes = a
                .classes
                .iter()
                .map(|s| parse_class(a.genus, s))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            build_twisted_fuchsian_sp(c, &classes, &a.spin, &sw)?
        }
        other => return Err(Error::Parse(format!("unknown family `{other}`"))),
    };
    let h = match a.embed.as_deref() {
        None => h,
        Some("so33") => embed_so23_to_so33(&h)?,
        Some(spec) => {
            let n = spec
                .strip_prefix("so2n:")
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| Error::Parse(format!("embedding `{spec}` should be so2n:N or so33")))?;
            embed_so23_to_so2n(&h, n)?
        }
    };
    if a.sl {
        associated_sl(&h)
    } else {
        Ok(h)
    }
}

fn run_build(a: &BuildArgs) -> Run {
    let h = build(a)?;
    Ok((j::bundle_to_value(&h), bundle_table(&h)))
}

fn run_stability(a: &StabilityArgs, stdin: &mut dyn Read) -> Run {
    let h = j::bundle_from_str(&read_input(&a.input, stdin)?)?;
    let opts = StabilityOptions { summand_generated: a.summand_generated, budget: budget()? };
    let v = check_polystability(&h, &opts)?;
    let mut table = format!("status: {}\n", v.status.as_str());
    if let Some(w) = &v.witness {
        let _ = writeln!(table, "witness: {:?} degree {}", w.indices, w.degree);
    }
    if let Some(f) = &v.factors {
        let _ = writeln!(table, "factors: {f:?}");
    }
    Ok((j::verdict_to_value(&v), table))
}

fn run_limit(a: &LimitArgs, stdin: &mut dyn Read) -> Run {
    let h = j::bundle_from_str(&read_input(&a.input, stdin)?)?;
    let opts = StabilityOptions { summand_generated: a.summand_generated, budget: budget()? };
    let direction: Direction = a.direction.parse()?;
    if let Some(bound) = a.search {
        let s = search_admissible_weights(&h, direction, bound, opts.budget)?;
        let reps: Vec<&Vec<i64>> = s.representatives.iter().map(|w| &w.weights).collect();
        let table = reps.iter().fold(format!("admissible: {}\n", s.admissible), |mut t, w| {
            let _ = writeln!(t, "{w:?}");
            t
        });
        return Ok((json!({"admissible": s.admissible, "representatives": reps}), table));
    }
    let r = match a.n_degree {
        Some(degree) => {
            let off = |name: &str| a.zero.iter().any(|z| z == name);
            let n = NDescriptor {
                degree,
                alpha_on: !off("alpha"),
                beta_on: !off("beta"),
                gamma_on: !off("gamma"),
            };
            limit_destabilized_branch(&h, &n, &opts)?
        }
        None => {
            let w = WeightAssignment { weights: a.weights.clone(), higgs_scale: a.scale };
            graded_limit(&h, &w, direction, &opts)?
        }
    };
    let mut table = String::new();
    for t in r.exponents.higgs.iter().chain(&r.exponents.dolbeault) {
        let _ = writeln!(table, "{:>3} <- {:<3} {:<8} t^{}", t.target, t.source, t.name, t.exponent);
    }
    let _ = writeln!(table, "exists: {}", r.exists);
    if let Some(l) = &r.limit {
        table.push_str(&bundle_table(l));
    }
    if let Some(v) = &r.stability {
        let _ = writeln!(table, "limit is {}", v.status.as_str());
    }
    Ok((j::limit_to_value(&r), table))
}

fn run_sw(a: &SwArgs) -> Run {
    if let Some(max_n) = a.minimal {
        let table = minimal_tuple_lengths(a.genus, max_n)?;
        let rows: Vec<Value> = table
            .iter()
            .map(|(p, n)| json!({"sw1": p.sw1.to_string(), "sw2": u8::from(p.sw2), "minimal_n": n}))
            .collect();
        let text = table.iter().fold(String::new(), |mut t, (p, n)| {
            let n = n.map_or("-".to_string(), |n| n.to_string());
            let _ = writeln!(t, "{} {}  {}", p.sw1, u8::from(p.sw2), n);
            t
        });
        return Ok((json!({"genus": a.genus, "max_n": max_n, "pairs": rows}), text));
    }
    let classes = a
        .classes
        .iter()
        .map(|s| parse_class(a.genus, s))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let p = total_sw_of_sum(a.genus, &classes)?;
    let text = format!("sw1 {}\nsw2 {}\n", p.sw1, u8::from(p.sw2));
    Ok((j::sw_to_value(&p), text))
}

fn run_census(a: &CensusArgs) -> Run {
    let c = census(parse_group(&a.group)?, a.genus, a.maximal)?;
    let mut text = format!(
        "{}{} genus {}: {} components\n",
        if c.maximal { "maximal " } else { "" },
        c.group,
        c.genus,
        c.total.map_or("unknown number of".to_string(), |t| t.to_string())
    );
    for d in &c.components {
        let p = d.parameterization.map_or(String::new(), |p| {
            format!("  fiber {} over Sym^{} x C^{}", p.fiber_rank, p.symmetric_power, p.extra_factor_dim)
        });
        let _ = writeln!(text, "  {:<24} dim {}{}", d.label.to_string(), d.complex_dimension, p);
    }
    if let Some(n) = &c.note {
        let _ = writeln!(text, "note: {n}");
    }
    Ok((j::census_to_value(&c), text))
}

fn run_param(a: &ParamArgs) -> Run {
    let group = parse_group(&a.group)?;
    let desc = match parameterization(group, a.d, a.genus) {
        Err(error @ Error::NoParameterization(_)) => {
            let payload = json!({
                "group": group.to_string(),
                "d": a.d,
                "retraction": {"target": RETRACTION_TARGET, "via": "zero-weight graded limit (E, 0)"},
            });
            return Err(Failure { error, payload: Some(payload) });
        }
        other => other?,
    };
    let mut v = j::descriptor_to_value(&desc);
    let n = match group {
        GroupTag::So { p, .. } => p,
        _ => 0,
    };
    v["extra_factor_reading"] = json!(ADOPTED_READING.as_str());
    v["reading_forced_by_dimension"] =
        json!(resolve_extra_reading(n, a.genus)?.map(|r| r.as_str()));
    let p = desc.parameterization.expect("parameterized");
    let text = format!(
        "{} d={} genus {}: fiber rank {} over Sym^{}, extra C^{} ({}), total {}\n",
        group, a.d, a.genus, p.fiber_rank, p.symmetric_power, p.extra_factor_dim,
        ADOPTED_READING.as_str(), p.total()
    );
    Ok((v, text))
}

fn run_dim(a: &DimArgs) -> Run {
    let group = parse_group(&a.group)?;
    let dim_g = lie_algebra_dimension(group);
    let real = character_variety_dimension(dim_g, a.genus)?;
    let v = json!({
        "group": group.to_string(),
        "genus": a.genus,
        "lie_algebra_dimension": dim_g,
        "real_dimension": real,
        "complex_dimension": real / 2,
    });
    let text = format!("{group} genus {}: dim G {dim_g}, real {real}, complex {}\n", a.genus, real / 2);
    Ok((v, text))
}

fn run_verify() -> Run {
    let opts = StabilityOptions { summand_generated: false, budget: budget()? };
    let results = verify::run_all(&opts);
    let passed = results.iter().filter(|r| r.passed).count();
    let rows: Vec<Value> = results
        .iter()
        .map(|r| json!({"module": r.module, "property": r.name, "passed": r.passed, "detail": r.detail}))
        .collect();
    let mut text = String::new();
    for r in &results {
        let _ = writeln!(
            text,
            "{:<4} {:<12} {}{}",
            if r.passed { "PASS" } else { "FAIL" },
            r.module,
            r.name,
            if r.detail.is_empty() { String::new() } else { format!("  ({})", r.detail) }
        );
    }
    let _ = writeln!(text, "{passed}/{} properties hold", results.len());
    Ok((json!({"properties": rows, "passed": passed, "total": results.len(), "all_passed": passed == results.len()}), text))
}

fn verb(c: &Command) -> &'static str {
    match c {
        Command::Build(_) => "build",
        Command::Stability(_) => "stability",
        Command::Limit(_) => "limit",
        Command::Sw(_) => "sw",
        Command::Census(_) => "census",
        Command::Param(_) => "param",
        Command::Dim(_) => "dim",
        Command::Verify => "verify",
    }
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let result = match &cli.command {
        Command::Build(a) => run_build(a),
        Command::Stability(a) => run_stability(a, stdin),
        Command::Limit(a) => run_limit(a, stdin),
        Command::Sw(a) => run_sw(a),
        Command::Census(a) => run_census(a),
        Command::Param(a) => run_param(a),
        Command::Dim(a) => run_dim(a),
        Command::Verify => run_verify(),
    };
    let command = verb(&cli.command);
    match result {
        Ok((payload, text)) => {
            let stdout = if cli.table {
                text
            } else {
                let report = json!({"schema": SCHEMA, "command": command, "status": "ok", "payload": payload});
                format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes"))
            };
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(Failure { error, payload }) => {
            let report = json!({
                "schema": SCHEMA,
                "command": command,
                "status": "error",
                "error": {"code": error.code().as_str(), "message": error.to_string()},
                "payload": payload,
            });
            Outcome {
                code: 1,
                stdout: format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes")),
                stderr: format!("error[{}]: {error}\n", error.code().as_str()),
            }
        }
    }
}
