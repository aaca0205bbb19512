//! Command-line driver: `prove`, `interpolate`, `check` and `orth`.
//!
//! Exit codes: 0 success, 1 not proved or check failed, 2 usage or input
//! error, 3 an interpolant failed its own verification.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::certify::{
    check_bi, check_kt, verify_interpolant_bi, verify_interpolant_kt, CheckReport, VerifyReport,
};
use crate::formula::{
    parse_bi, parse_tense, BiFormula, Formula, Logic, SurfaceTense, TenseFormula,
};
use crate::interpolate::{
    craig_bi, craig_tense, orthogonal, Craig, CraigError, InterpolateOptions, Orthogonal,
};
use crate::path_system::PathAxiomSystem;
use crate::prover::{prove_bi, prove_kt, NotProved, Outcome, SearchConfig};
use crate::sequent::LabelledSequent;
use crate::serial::{self, Bundle, Certificate, Document, InterpolantJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "nested-interp",
    version,
    about = "Nested-sequent prover and Craig interpolant synthesizer"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for a derivation of a formula and emit a certificate.
    Prove {
        formula: String,
        #[command(flatten)]
        opts: CliConfig,
    },
    /// Compute a verified interpolant for an implication `A -> B`.
    Interpolate {
        implication: String,
        #[command(flatten)]
        opts: CliConfig,
    },
    /// Check a certificate or an interpolation bundle.
    Check {
        file: PathBuf,
        #[command(flatten)]
        opts: CliConfig,
    },
    /// Print the orthogonal of an interpolant given as JSON.
    Orth {
        file: PathBuf,
        #[command(flatten)]
        opts: CliConfig,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LogicArg {
    Kt,
    Bi,
}

impl From<LogicArg> for Logic {
    fn from(l: LogicArg) -> Logic {
        match l {
            LogicArg::Kt => Logic::Kt,
            LogicArg::Bi => Logic::Bi,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct CliConfig {
    /// Logic of the input. For `check` it defaults to the document's own.
    #[arg(long, value_enum)]
    logic: Option<LogicArg>,
    /// Path-axiom file (tense logic only).
    #[arg(long)]
    axioms: Option<PathBuf>,
    /// Maximum number of fresh labels along a branch.
    #[arg(long, default_value_t = 12)]
    bound: usize,
    /// Close the path axioms under inverses.
    #[arg(long)]
    inverses: bool,
    /// In the right-exclusion interpolation rule, move the kept principal
    /// into the first partition.
    #[arg(long)]
    exclr_principal_part1: bool,
    /// Write the emitted document here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

/// A failure that ends the command with the given exit code.
struct Exit(i32, String);

fn usage(msg: impl ToString) -> Exit {
    Exit(EXIT_USAGE, msg.to_string())
}

struct Io<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl CliConfig {
    fn logic(&self) -> Logic {
        self.logic.map_or(Logic::Kt, Logic::from)
    }

    fn validate(&self) -> Result<(), Exit> {
        if self.bound == 0 {
            return Err(usage("--bound must be at least 1"));
        }
        if self.axioms.is_some() && self.logic() == Logic::Bi {
            return Err(usage("--axioms applies to --logic kt only"));
        }
        Ok(())
    }

    /// The axiom system named by `--axioms`, if any.
    fn system_override(&self) -> Result<Option<PathAxiomSystem>, Exit> {
        let Some(path) = &self.axioms else {
            return Ok(None);
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        PathAxiomSystem::parse(&text, self.inverses)
            .map(Some)
            .map_err(|e| usage(format!("{}: {e}", path.display())))
    }

    fn search(&self) -> Result<SearchConfig, Exit> {
        let system = self
            .system_override()?
            .unwrap_or_else(|| PathAxiomSystem::new(Vec::new(), self.inverses));
        Ok(SearchConfig::with_bound(self.bound).with_system(system))
    }

    fn interpolate_options(&self) -> InterpolateOptions {
        InterpolateOptions {
            exclr_principal_part1: self.exclr_principal_part1,
            ..Default::default()
        }
    }
}

fn emit(io: &mut Io<'_>, opts: &CliConfig, json: String, text: String) -> Result<(), Exit> {
    if let Some(path) = &opts.out {
        std::fs::write(path, format!("{json}\n"))
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let shown = match (opts.format, &opts.out) {
        (Format::Text, _) => text,
        (Format::Json, None) => json,
        (Format::Json, Some(path)) => format!("wrote {}", path.display()),
    };
    let _ = writeln!(io.stdout, "{shown}");
    Ok(())
}

fn parse_kt(text: &str) -> Result<SurfaceTense, Exit> {
    parse_tense(text).map_err(|e| usage(format!("parse error: {e}")))
}

fn parse_bi_text(text: &str) -> Result<BiFormula, Exit> {
    parse_bi(text).map_err(|e| usage(format!("parse error: {e}")))
}

fn not_proved_message(why: NotProved) -> String {
    match why {
        NotProved::Refuted => "not provable: a branch saturated without closing".into(),
        NotProved::BoundExceeded => "not proved within the bound".into(),
    }
}

fn not_proved(io: &mut Io<'_>, opts: &CliConfig, why: NotProved) -> Result<(), Exit> {
    let shown = match opts.format {
        Format::Json => {
            serde_json::json!({ "result": "NotProved", "reason": format!("{why:?}") }).to_string()
        }
        Format::Text => not_proved_message(why),
    };
    let _ = writeln!(io.stdout, "{shown}");
    Err(Exit(EXIT_FAILED, String::new()))
}

fn cmd_prove(io: &mut Io<'_>, formula: &str, opts: &CliConfig) -> Result<(), Exit> {
    let cfg = opts.search()?;
    match opts.logic() {
        Logic::Kt => {
            let goal = LabelledSequent::goal_right(parse_kt(formula)?.normalize());
            let outcome = prove_kt(&goal, &cfg).map_err(usage)?;
            finish_prove(io, opts, outcome, cfg.system)
        }
        Logic::Bi => {
            let goal = LabelledSequent::goal_right(parse_bi_text(formula)?);
            let outcome = prove_bi(&goal, &cfg).map_err(usage)?;
            finish_prove(io, opts, outcome, cfg.system)
        }
    }
}

fn finish_prove<F: Formula>(
    io: &mut Io<'_>,
    opts: &CliConfig,
    outcome: Outcome<F>,
    system: PathAxiomSystem,
) -> Result<(), Exit> {
    match outcome {
        Outcome::Proved(proof) => {
            let text = format!(
                "proved ({} rule applications)\n{}",
                proof.size(),
                proof.render().trim_end()
            );
            let cert = Certificate::core(proof, system);
            emit(io, opts, serial::to_pretty(&cert.to_json()), text)
        }
        Outcome::NotProved(why) => not_proved(io, opts, why),
    }
}

fn craig_failure(io: &mut Io<'_>, opts: &CliConfig, e: CraigError) -> Result<(), Exit> {
    match e {
        CraigError::NotProved(why) => not_proved(io, opts, why),
        CraigError::Search(e) => Err(usage(e)),
        internal => Err(Exit(
            EXIT_INTERNAL,
            format!("internal verification failure: {internal}"),
        )),
    }
}

fn cmd_interpolate(io: &mut Io<'_>, implication: &str, opts: &CliConfig) -> Result<(), Exit> {
    let cfg = opts.search()?;
    match opts.logic() {
        Logic::Kt => {
            let SurfaceTense::Imp(a, b) = parse_kt(implication)? else {
                return Err(usage("expected an implication `A -> B`"));
            };
            let (a, b) = (a.normalize(), b.normalize());
            match craig_tense(&a, &b, &cfg) {
                Ok(r) => {
                    let report = verify_interpolant_kt(
                        &r.a,
                        &r.b,
                        &r.c,
                        &r.proof_ac,
                        &r.proof_cb,
                        &cfg.system,
                    );
                    finish_bundle(io, opts, r, cfg.system, report)
                }
                Err(e) => craig_failure(io, opts, e),
            }
        }
        Logic::Bi => {
            let BiFormula::Imp(a, b) = parse_bi_text(implication)? else {
                return Err(usage("expected an implication `A -> B`"));
            };
            match craig_bi(&a, &b, &cfg, opts.interpolate_options()) {
                Ok(r) => {
                    let report = verify_interpolant_bi(&r.a, &r.b, &r.c, &r.proof_ac, &r.proof_cb);
                    finish_bundle(io, opts, r, cfg.system, report)
                }
                Err(e) => craig_failure(io, opts, e),
            }
        }
    }
}

fn finish_bundle<F: Formula>(
    io: &mut Io<'_>,
    opts: &CliConfig,
    r: Craig<F>,
    system: PathAxiomSystem,
    report: VerifyReport,
) -> Result<(), Exit> {
    if !report.ok {
        return Err(Exit(
            EXIT_INTERNAL,
            format!(
                "internal verification failure: {}",
                serial::to_pretty(&report)
            ),
        ));
    }
    let text = format!(
        "C = {}\ninterpolant: {}\nverified: both implications check",
        r.c, r.interpolant
    );
    let bundle = Bundle {
        system,
        a: r.a,
        b: r.b,
        c: r.c,
        interpolant: r.interpolant,
        proof_ac: r.proof_ac,
        proof_cb: r.proof_cb,
    };
    emit(
        io,
        opts,
        serial::to_pretty(&bundle.to_json(Some(&report))),
        text,
    )
}

fn read_file(path: &Path) -> Result<String, Exit> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn check_report_text(report: &CheckReport) -> String {
    let mut lines = vec![format!(
        "{} ({} failures, {} assumption leaves, {} reachability queries)",
        if report.ok { "ok" } else { "FAILED" },
        report.failures.len(),
        report.open_leaves,
        report.reachability_queries
    )];
    lines.extend(
        report
            .failures
            .iter()
            .map(|f| format!("  at {:?} [{}]: {}", f.position, f.rule, f.reason)),
    );
    lines.join("\n")
}

fn verify_report_text(report: &VerifyReport) -> String {
    let mut lines = vec![if report.ok {
        "ok".to_string()
    } else {
        "FAILED".to_string()
    }];
    lines.extend(
        report
            .failures
            .iter()
            .map(|f| format!("  {}", serde_json::to_string(f).unwrap_or_default())),
    );
    lines.join("\n")
}

fn cmd_check(io: &mut Io<'_>, file: &Path, opts: &CliConfig) -> Result<(), Exit> {
    if opts.bound == 0 {
        return Err(usage("--bound must be at least 1"));
    }
    let doc = serial::parse_document(&read_file(file)?)
        .map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let logic = match &doc {
        Document::KtCertificate(_) | Document::KtBundle(_) => Logic::Kt,
        Document::BiCertificate(_) | Document::BiBundle(_) => Logic::Bi,
    };
    if let Some(l) = opts.logic {
        if Logic::from(l) != logic {
            return Err(usage(format!(
                "document is for logic {logic}, not {}",
                Logic::from(l)
            )));
        }
    }
    if opts.axioms.is_some() && logic == Logic::Bi {
        return Err(usage("--axioms applies to --logic kt only"));
    }
    let system_override = opts.system_override()?;
    let (ok, json, text) = match doc {
        Document::KtCertificate(c) => {
            let sys = system_override.unwrap_or(c.system);
            let r = check_kt(&c.proof, &sys, c.mode, &c.assumptions);
            (r.ok, serial::to_pretty(&r), check_report_text(&r))
        }
        Document::BiCertificate(c) => {
            let r = check_bi(&c.proof, c.mode, &c.assumptions);
            (r.ok, serial::to_pretty(&r), check_report_text(&r))
        }
        Document::KtBundle(b) => {
            let sys = system_override.unwrap_or(b.system);
            let r = verify_interpolant_kt(&b.a, &b.b, &b.c, &b.proof_ac, &b.proof_cb, &sys);
            (r.ok, serial::to_pretty(&r), verify_report_text(&r))
        }
        Document::BiBundle(b) => {
            let r = verify_interpolant_bi(&b.a, &b.b, &b.c, &b.proof_ac, &b.proof_cb);
            (r.ok, serial::to_pretty(&r), verify_report_text(&r))
        }
    };
    emit(io, opts, json, text)?;
    if ok {
        Ok(())
    } else {
        Err(Exit(EXIT_FAILED, String::new()))
    }
}

fn orth_of<F: Orthogonal>(
    io: &mut Io<'_>,
    opts: &CliConfig,
    j: &InterpolantJson,
) -> Result<(), Exit> {
    let i = serial::interpolant_from_json::<F>(j).map_err(usage)?;
    let o = orthogonal(&i);
    emit(
        io,
        opts,
        serial::to_pretty(&serial::interpolant_to_json(&o)),
        o.to_string(),
    )
}

fn cmd_orth(io: &mut Io<'_>, file: &Path, opts: &CliConfig) -> Result<(), Exit> {
    opts.validate()?;
    let j: InterpolantJson = serde_json::from_str(&read_file(file)?)
        .map_err(|e| usage(format!("{}: {e}", file.display())))?;
    match opts.logic() {
        Logic::Kt => orth_of::<TenseFormula>(io, opts, &j),
        Logic::Bi => orth_of::<BiFormula>(io, opts, &j),
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut io = Io { stdout, stderr };
    let result = match &cli.command {
        Command::Prove { formula, opts } => opts
            .validate()
            .and_then(|_| cmd_prove(&mut io, formula, opts)),
        Command::Interpolate { implication, opts } => opts
            .validate()
            .and_then(|_| cmd_interpolate(&mut io, implication, opts)),
        Command::Check { file, opts } => cmd_check(&mut io, file, opts),
        Command::Orth { file, opts } => cmd_orth(&mut io, file, opts),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Exit(code, msg)) => {
            if !msg.is_empty() {
                let _ = writeln!(io.stderr, "error: {msg}");
            }
            code
        }
    }
}
