//! Command logic for the `nptcert` binary.
//!
//! Every command writes one JSON document (to `--out` or standard output) and a
//! short human-readable summary (to standard output when `--out` is given,
//! otherwise to standard error). Exit codes: 0 success or conclusive, 2 input
//! error, 3 inconclusive or PPT, 4 resource cap.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use nptcert::certify::{
    distillability_report, eval_certificate_with, seesaw_rank2, CertifyOptions, Rank2Certificate,
};
use nptcert::construct::{
    claim_check, ClaimCheckReport, ClaimOptions, ClaimStatus, StateDescription,
    PSI_EVAL_MAX_DEGREE, PSI_TILDE_MAX_DEGREE, REPORT_SCHEMA_VERSION,
};
use nptcert::identities::{identity_suite, IdentitySuite};
use nptcert::states::{
    horodecki_3x3, isotropic, maximally_mixed, random_density, singlet, validate, werner,
    DensityMatrix, ValidationReport,
};
use nptcert::tol::{SignFlag, Tolerances};
use nptcert::witness::{witness_report, SeesawOptions, WitnessOptions, WitnessReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_CAP: i32 = 4;

pub const TOOL_NAME: &str = "nptcert";

#[derive(Debug, Parser)]
#[command(name = "nptcert", version, about = "PT-negativity witnesses and Schmidt-rank-2 certificates")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Seed for every random draw (states, restarts, samples).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 32)]
    pub restarts: usize,
    #[arg(long, global = true, default_value_t = 200)]
    pub max_iters: usize,
    /// Values below `-tol_neg` count as negative.
    #[arg(long, global = true, default_value_t = nptcert::tol::NEGATIVITY)]
    pub tol_neg: f64,
    /// Caps the construction degree below the built-in limits.
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Switch::On)]
    pub dense_cross_check: Switch,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a fixture state.
    Gen(GenArgs),
    /// Minimum PT eigenvalue, witness and rank-constrained search.
    Analyze { state: PathBuf },
    /// Permutation-superposition construction with both evaluation paths.
    Claimcheck { state: PathBuf },
    /// See-saw search for a Schmidt-rank-2 certificate on `n` copies.
    Certify(CertifyArgs),
    /// Forced identities at degree `d`.
    Identities(IdentitiesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Singlet,
    Werner,
    Isotropic,
    Horodecki3x3,
    Random,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub family: Family,
    /// Local dimension (werner, isotropic, mixed).
    #[arg(long)]
    pub dim: Option<usize>,
    /// Local dimensions A and B (random, mixed).
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub dims: Option<Vec<usize>>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub fidelity: Option<f64>,
    /// Horodecki parameter.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long)]
    pub rank: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    pub state: PathBuf,
    /// Copies (at most 2 for the search); with `--report`, the largest copy count searched.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Emit the full distillability report instead of a single certificate.
    #[arg(long, conflicts_with = "eval")]
    pub report: bool,
    /// Re-evaluate a saved certificate against the state.
    #[arg(long)]
    pub eval: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct IdentitiesArgs {
    #[arg(long)]
    pub d: usize,
    /// Random matrices per sampled identity.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

/// Everything that determines a run; embedded in every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub input: Option<String>,
    pub output: Option<String>,
    pub seed: u64,
    pub restarts: usize,
    pub max_iters: usize,
    pub max_degree: Option<usize>,
    pub psi_tilde_degree_cap: usize,
    pub psi_degree_cap: usize,
    pub dense_cross_check: Switch,
    pub tolerances: Tolerances,
    pub gen: Option<GenArgs>,
    pub copies: Option<usize>,
    pub certificate: Option<String>,
    pub report: Option<bool>,
    pub degree: Option<usize>,
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub result: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratedState {
    pub description: StateDescription,
    pub params: GenArgs,
    pub validation: ValidationReport,
    pub state: DensityMatrix,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum StateInput {
    Envelope { result: GeneratedState },
    Generated(GeneratedState),
    Bare(DensityMatrix),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CertificateInput {
    Envelope { result: Rank2Certificate },
    Bare(Rank2Certificate),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateRecheck {
    pub certificate: Rank2Certificate,
    pub evaluation: nptcert::certify::CertificateEvaluation,
    /// Bit-for-bit equality of the stored and recomputed values.
    pub stored_value_reproduced: bool,
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Cap(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Cap(_) => EXIT_CAP,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Cap(m) => write!(f, "resource cap: {m}"),
        }
    }
}

impl From<nptcert::Error> for Failure {
    fn from(e: nptcert::Error) -> Self {
        match e {
            nptcert::Error::SizeLimit { .. } => Failure::Cap(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// Finished command: the JSON document, a summary, and the exit code.
pub struct Outcome {
    pub json: String,
    pub summary: String,
    pub code: i32,
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdout, stderr),
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            if code == 0 { EXIT_OK } else { EXIT_INPUT }
        }
    }
}

pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let outcome = match execute(cli) {
        Ok(o) => o,
        Err(f) => {
            let _ = writeln!(stderr, "nptcert: {f}");
            return f.exit_code();
        }
    };
    let (json_sink, summary_sink): (&mut dyn Write, &mut dyn Write) = match &cli.global.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &outcome.json) {
                let _ = writeln!(stderr, "nptcert: cannot write {}: {e}", path.display());
                return EXIT_INPUT;
            }
            (&mut std::io::sink(), stdout)
        }
        None => (stdout, stderr),
    };
    let _ = json_sink.write_all(outcome.json.as_bytes());
    let _ = summary_sink.write_all(outcome.summary.as_bytes());
    outcome.code
}

/// Runs a parsed command without touching standard streams (only `--out` is ignored).
pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let g = &cli.global;
    if !(g.tol_neg >= 0.0 && g.tol_neg.is_finite()) {
        return Err(Failure::Input(format!("--tol-neg must be a nonnegative number, got {}", g.tol_neg)));
    }
    let mut config = base_config(g);
    match &cli.command {
        Command::Gen(args) => {
            config.command = "gen".into();
            config.gen = Some(args.clone());
            cmd_gen(config, args, g.seed)
        }
        Command::Analyze { state } => {
            config.command = "analyze".into();
            config.input = Some(display(state));
            cmd_analyze(config, state)
        }
        Command::Claimcheck { state } => {
            config.command = "claimcheck".into();
            config.input = Some(display(state));
            cmd_claimcheck(config, state)
        }
        Command::Certify(args) => {
            config.command = "certify".into();
            config.input = Some(display(&args.state));
            config.copies = Some(args.n);
            config.report = Some(args.report);
            config.certificate = args.eval.as_ref().map(|p| display(p));
            cmd_certify(config, args)
        }
        Command::Identities(args) => {
            config.command = "identities".into();
            config.degree = Some(args.d);
            config.samples = Some(args.samples);
            cmd_identities(config, args, g.seed)
        }
    }
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

fn base_config(g: &GlobalArgs) -> RunConfig {
    let cap = |limit: usize| g.max_degree.map_or(limit, |m| m.min(limit));
    RunConfig {
        command: String::new(),
        input: None,
        output: g.out.as_ref().map(|p| display(p)),
        seed: g.seed,
        restarts: g.restarts,
        max_iters: g.max_iters,
        max_degree: g.max_degree,
        psi_tilde_degree_cap: cap(PSI_TILDE_MAX_DEGREE),
        psi_degree_cap: cap(PSI_EVAL_MAX_DEGREE),
        dense_cross_check: g.dense_cross_check,
        tolerances: Tolerances {
            negativity: g.tol_neg,
            ..Tolerances::default()
        },
        gen: None,
        copies: None,
        certificate: None,
        report: None,
        degree: None,
        samples: None,
    }
}

fn witness_options(config: &RunConfig) -> WitnessOptions {
    WitnessOptions {
        seesaw: SeesawOptions {
            restarts: config.restarts,
            max_iters: config.max_iters,
            seed: config.seed,
            improvement: config.tolerances.seesaw_improvement,
        },
        tolerances: config.tolerances,
    }
}

fn claim_options(config: &RunConfig) -> ClaimOptions {
    ClaimOptions {
        witness: witness_options(config),
        max_degree: config.max_degree,
        dense_cross_check: config.dense_cross_check == Switch::On,
    }
}

fn envelope<T: Serialize>(config: RunConfig, result: T) -> Result<String, Failure> {
    let env = Envelope {
        schema_version: REPORT_SCHEMA_VERSION,
        tool: TOOL_NAME.into(),
        version: nptcert::VERSION.into(),
        config,
        result,
    };
    let mut s = serde_json::to_string_pretty(&env).map_err(|e| Failure::Input(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn read_json(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

/// Loads a state file: a `gen` report, its `result`, or a bare
/// `{"dimA", "dimB", "matrix"}` object.
pub fn load_state(path: &Path) -> Result<(DensityMatrix, StateDescription), Failure> {
    let text = read_json(path)?;
    let parsed: StateInput = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{} is not a valid state file: {e}", path.display())))?;
    Ok(match parsed {
        StateInput::Envelope { result } | StateInput::Generated(result) => (result.state, result.description),
        StateInput::Bare(rho) => {
            let label = path.file_stem().map_or("state".into(), |s| s.to_string_lossy().into_owned());
            let desc = StateDescription {
                label,
                dim_a: rho.dim_a(),
                dim_b: rho.dim_b(),
                seed: None,
            };
            (rho, desc)
        }
    })
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Input(format!("{family} needs --{flag}")))
}

fn build_state(args: &GenArgs, seed: u64) -> Result<(DensityMatrix, String, Option<u64>), Failure> {
    let dims = |family: &str| -> Result<(usize, usize), Failure> {
        match (&args.dims, args.dim) {
            (Some(d), _) => Ok((d[0], d[1])),
            (None, Some(d)) => Ok((d, d)),
            (None, None) => Err(Failure::Input(format!("{family} needs --dims A B or --dim N"))),
        }
    };
    Ok(match args.family {
        Family::Singlet => (singlet(), "singlet".into(), None),
        Family::Werner => {
            let (dim, alpha) = (need(args.dim, "dim", "werner")?, need(args.alpha, "alpha", "werner")?);
            (werner(dim, alpha)?, format!("werner(dim={dim}, alpha={alpha})"), None)
        }
        Family::Isotropic => {
            let dim = need(args.dim, "dim", "isotropic")?;
            let f = need(args.fidelity, "fidelity", "isotropic")?;
            (isotropic(dim, f)?, format!("isotropic(dim={dim}, fidelity={f})"), None)
        }
        Family::Horodecki3x3 => {
            let a = need(args.a, "a", "horodecki3x3")?;
            (horodecki_3x3(a)?, format!("horodecki3x3(a={a})"), None)
        }
        Family::Random => {
            let (da, db) = dims("random")?;
            let rank = args.rank.unwrap_or(da * db);
            (
                random_density(da, db, rank, seed)?,
                format!("random(dims={da}x{db}, rank={rank}, seed={seed})"),
                Some(seed),
            )
        }
        Family::Mixed => {
            let (da, db) = dims("mixed")?;
            (maximally_mixed(da, db)?, format!("mixed(dims={da}x{db})"), None)
        }
    })
}

fn cmd_gen(config: RunConfig, args: &GenArgs, seed: u64) -> Result<Outcome, Failure> {
    let (rho, label, state_seed) = build_state(args, seed)?;
    let validation = validate(&rho);
    let description = StateDescription {
        label,
        dim_a: rho.dim_a(),
        dim_b: rho.dim_b(),
        seed: state_seed,
    };
    let mut summary = String::new();
    let _ = writeln!(summary, "state: {} on {}⊗{}", description.label, description.dim_a, description.dim_b);
    let _ = writeln!(
        summary,
        "validation: {} (hermitian defect {:.3e}, trace defect {:.3e}, min eigenvalue {:.6e})",
        if validation.passed { "pass" } else { "FAIL" },
        validation.hermitian_defect,
        validation.trace_defect,
        validation.min_eigenvalue
    );
    let code = if validation.passed { EXIT_OK } else { EXIT_INPUT };
    let result = GeneratedState {
        description,
        params: args.clone(),
        validation,
        state: rho,
    };
    Ok(Outcome {
        json: envelope(config, result)?,
        summary,
        code,
    })
}

fn analyze_summary(r: &WitnessReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "min PT eigenvalue: {:.12}", r.min_pt_eigenvalue);
    let _ = writeln!(s, "witness Schmidt rank: {}", r.schmidt.rank);
    for v in &r.per_rank {
        let _ = writeln!(s, "  rank ≤ {}: {:+.12} ({})", v.k, v.value, flag_word(v.flag));
    }
    match r.minimal_rank_estimate {
        Some(k) => {
            let _ = writeln!(s, "minimal witnessing rank (upper bound): {k}");
        }
        None => {
            let _ = writeln!(s, "minimal witnessing rank: none found");
        }
    }
    let _ = writeln!(s, "conclusion: {}", r.conclusion);
    s
}

fn flag_word(f: SignFlag) -> &'static str {
    match f {
        SignFlag::Negative => "negative",
        SignFlag::Inconclusive => "inconclusive",
        SignFlag::Nonnegative => "nonnegative",
    }
}

fn cmd_analyze(config: RunConfig, path: &Path) -> Result<Outcome, Failure> {
    let (rho, _) = load_state(path)?;
    let report = witness_report(&rho, &witness_options(&config))?;
    let code = if report.npt.is_negative() { EXIT_OK } else { EXIT_INCONCLUSIVE };
    Ok(Outcome {
        summary: analyze_summary(&report),
        json: envelope(config, report)?,
        code,
    })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or("-".into(), |x| format!("{x:+.12e}"))
}

/// Summary table of a claim-check report.
pub fn claim_summary(r: &ClaimCheckReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "state: {} ({}⊗{})", r.state.label, r.state.dim_a, r.state.dim_b);
    let _ = writeln!(s, "status: {:?}", r.status);
    let _ = writeln!(s, "min PT eigenvalue: {:+.12e}", r.min_pt_eigenvalue);
    let _ = writeln!(
        s,
        "witness rank d: {}   see-saw minimal rank: {}",
        r.witness_rank,
        r.minimal_rank_estimate.map_or("-".into(), |k| k.to_string())
    );
    if let Some(c) = &r.construction {
        let _ = writeln!(s, "{:<34} {:>22}", "quantity", "value");
        let mut row = |name: &str, v: String| {
            let _ = writeln!(s, "{name:<34} {v:>22}");
        };
        row("lambda^T M lambda", format!("{:+.12e}", c.lambda_form.lhs));
        row("  defect vs min PT eigenvalue", format!("{:.3e}", c.lambda_form.defect));
        row("det_phi (Leibniz)", format!("{:+.12e}", c.det_phi.re));
        row("det_phi (LU)", format!("{:+.12e}", c.det_phi_lu.re));
        row("psi_tilde_value", fmt_opt(c.psi_tilde.as_ref().map(|v| v.value)));
        row("  d!·det_phi defect", fmt_opt(c.psi_tilde_identity.as_ref().map(|v| v.defect)));
        row("psi_value", fmt_opt(c.psi.as_ref().map(|v| v.value)));
        if let Some(eq) = &c.claimed_equality {
            row("(d!/2)·psi_tilde_value", format!("{:+.12e}", eq.predicted_psi_value));
            row("discrepancy", format!("{:+.12e}", eq.discrepancy));
            row("measured ratio psi/psi_tilde", format!("{:.12}", eq.measured_ratio));
            row("|A_d|", eq.alternating_order.to_string());
        }
        for p in &c.cross_validation {
            row(&format!("path defect {}", p.quantity), format!("{:.3e}", p.defect));
        }
        if let Some(note) = &c.cross_validation_note {
            let _ = writeln!(s, "{note}");
        }
    }
    for n in &r.notices {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

fn cmd_claimcheck(config: RunConfig, path: &Path) -> Result<Outcome, Failure> {
    let (rho, desc) = load_state(path)?;
    let report = claim_check(&rho, desc, &claim_options(&config))?;
    let code = match report.status {
        ClaimStatus::Truncated => EXIT_CAP,
        _ => EXIT_OK,
    };
    Ok(Outcome {
        summary: claim_summary(&report),
        json: envelope(config, report)?,
        code,
    })
}

fn cmd_certify(config: RunConfig, args: &CertifyArgs) -> Result<Outcome, Failure> {
    let (rho, desc) = load_state(&args.state)?;
    let tol_neg = config.tolerances.negativity;
    if let Some(cert_path) = &args.eval {
        let text = read_json(cert_path)?;
        let parsed: CertificateInput = serde_json::from_str(&text)
            .map_err(|e| Failure::Input(format!("{} is not a certificate: {e}", cert_path.display())))?;
        let cert = match parsed {
            CertificateInput::Envelope { result } | CertificateInput::Bare(result) => result,
        };
        let evaluation = eval_certificate_with(&rho, &cert, tol_neg)?;
        let code = if evaluation.flag.is_negative() { EXIT_OK } else { EXIT_INCONCLUSIVE };
        let summary = format!(
            "certificate on n={} copies: value {:+.12e} ({})\n",
            cert.n,
            evaluation.value,
            flag_word(evaluation.flag)
        );
        let result = CertificateRecheck {
            stored_value_reproduced: evaluation.value.to_bits() == cert.value.to_bits(),
            certificate: cert,
            evaluation,
        };
        return Ok(Outcome {
            json: envelope(config, result)?,
            summary,
            code,
        });
    }
    if args.report {
        let opts = CertifyOptions {
            claim: claim_options(&config),
            max_copies: args.n,
        };
        if args.n == 0 {
            return Err(Failure::Input("--n must be positive".into()));
        }
        let report = distillability_report(&rho, desc, &opts)?;
        let code = if report.conclusive_at.is_empty() { EXIT_INCONCLUSIVE } else { EXIT_OK };
        let mut summary = String::new();
        let _ = writeln!(
            summary,
            "predicted copies (minimal witnessing rank): {}",
            report.predicted_copies.map_or("-".into(), |k| k.to_string())
        );
        for o in &report.searches {
            match (&o.certificate, &o.skipped) {
                (Some(c), _) => {
                    let _ = writeln!(summary, "n={}: value {:+.12e} conclusive={}", o.n, c.value, c.conclusive);
                }
                (None, Some(why)) => {
                    let _ = writeln!(summary, "n={}: skipped ({why})", o.n);
                }
                _ => {}
            }
        }
        if let Some(c) = &report.construction_certificate {
            let _ = writeln!(summary, "constructed n={}: value {:+.12e} conclusive={}", c.n, c.value, c.conclusive);
        }
        let _ = writeln!(summary, "conclusion: {}", report.conclusion);
        return Ok(Outcome {
            json: envelope(config, report)?,
            summary,
            code,
        });
    }
    let opts = witness_options(&config).seesaw;
    let cert = seesaw_rank2(&rho, args.n, &opts, tol_neg)?;
    let code = if cert.conclusive { EXIT_OK } else { EXIT_INCONCLUSIVE };
    let summary = format!(
        "n={}: value {:+.12e} -> {}\n",
        cert.n,
        cert.value,
        if cert.conclusive { "conclusive negativity found" } else { "inconclusive" }
    );
    Ok(Outcome {
        json: envelope(config, cert)?,
        summary,
        code,
    })
}

fn identities_summary(s: &IdentitySuite) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "identities at d = {} ({} samples, seed {})", s.d, s.samples, s.seed);
    for (name, ok) in s.matrix() {
        let _ = writeln!(out, "  {:<32} {}", name, if ok { "pass" } else { "FAIL" });
    }
    let _ = writeln!(out, "all forced identities: {}", if s.all_passed { "pass" } else { "FAIL" });
    out
}

fn cmd_identities(config: RunConfig, args: &IdentitiesArgs, seed: u64) -> Result<Outcome, Failure> {
    let suite = identity_suite(args.d, args.samples, seed)?;
    let code = if suite.all_passed { EXIT_OK } else { EXIT_INCONCLUSIVE };
    Ok(Outcome {
        summary: identities_summary(&suite),
        json: envelope(config, suite)?,
        code,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("nptcert").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn negative_numbers_parse() {
        let cli = parse(&["gen", "werner", "--dim", "3", "--alpha", "-0.9"]);
        match cli.command {
            Command::Gen(g) => assert_eq!(g.alpha, Some(-0.9)),
            _ => panic!("wrong command"),
        }
    }

    #[test]
    fn defaults_recorded() {
        let cli = parse(&["identities", "--d", "2"]);
        let c = base_config(&cli.global);
        assert_eq!(c.restarts, 32);
        assert_eq!(c.psi_degree_cap, PSI_EVAL_MAX_DEGREE);
        assert_eq!(c.tolerances, Tolerances::default());
        let cli = parse(&["--max-degree", "3", "identities", "--d", "2"]);
        assert_eq!(base_config(&cli.global).psi_tilde_degree_cap, 3);
    }

    #[test]
    fn missing_params() {
        let cli = parse(&["gen", "werner", "--dim", "3"]);
        assert_eq!(execute(&cli).err().unwrap().exit_code(), EXIT_INPUT);
        let cli = parse(&["gen", "werner", "--dim", "3", "--alpha", "2"]);
        assert_eq!(execute(&cli).err().unwrap().exit_code(), EXIT_INPUT);
    }

    #[test]
    fn failure_mapping() {
        let cap: Failure = nptcert::Error::SizeLimit { what: "x".into(), requested: 9, limit: 8 }.into();
        assert_eq!(cap.exit_code(), EXIT_CAP);
        let arg: Failure = nptcert::Error::Argument("bad".into()).into();
        assert_eq!(arg.exit_code(), EXIT_INPUT);
    }
}
