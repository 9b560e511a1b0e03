//! Command-line front end. `run` does all the work so tests can drive it with
//! in-memory streams; `main` only wires up the process streams.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_rational::Rational64;
use serde_json::{json, Value};

use crate::dsl::{parse_document, parse_expression, parse_scale, ParseError};
use crate::engine::{infer, Atom, Fact, Mode, RuleBase};
use crate::error::Error;
use crate::oracle::{LawChecker, LawReport};
use crate::scale::Scale;
use crate::stability::{audit_with, sample_embeddings, Embedding, Scalar, StabilityReport, TNorm};
use crate::valuation::Valuation;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    /// Bad input: parse, semantic or usage error.
    Domain = 1,
    /// `check` found a law that does not hold.
    LawFailure = 2,
    Internal = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn of_error(e: &Error) -> Self {
        match e {
            Error::SearchBoundExhausted { .. } => ExitStatus::Internal,
            Error::Derivation { source, .. } => ExitStatus::of_error(source),
            _ => ExitStatus::Domain,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "lexval",
    version,
    about = "Lexicographic plausibility valuations on ordinal scales"
)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Inline scale declaration, e.g. "scale s { LO MID HI }".
    #[arg(long, global = true, value_name = "DECL")]
    pub scale: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a valuation expression.
    Eval(EvalArgs),
    /// Run a rule base and rank its hypotheses.
    Infer(InferArgs),
    /// Check the algebraic laws exhaustively on a small scale.
    Check(CheckArgs),
    /// Measure how numeric re-interpretations of the grades reorder conclusions.
    Stability(StabilityArgs),
    /// Ask for premise plausibilities, then run inference.
    Consult(ConsultArgs),
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Expression, e.g. "(LARGE, VERY-LARGE) AND (LARGE)".
    pub expr: Option<String>,
    /// Read the expression from a file instead.
    #[arg(long, conflicts_with = "expr")]
    pub file: Option<PathBuf>,
    /// Take the scale from this rule-base document.
    #[arg(long)]
    pub doc: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct InferArgs {
    pub doc: PathBuf,
    #[arg(long, default_value = "mpgf-r")]
    pub mode: Mode,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Number of grades of the generated numeric scale (ignored with --scale).
    #[arg(long, default_value_t = 3)]
    pub scale_size: usize,
    #[arg(long, default_value_t = 3)]
    pub max_len: usize,
    /// Check a conjunction that skips reduction, to see the checker fail.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Args, Debug)]
pub struct StabilityArgs {
    pub doc: PathBuf,
    #[arg(long, default_value = "product")]
    pub tnorm: TNorm,
    /// Random embeddings to draw; defaults to 500, or 0 when --embedding is given.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// A fixed embedding, one value per grade in rank order ("0, 3/10, 0.4, ..., 1").
    /// Repeatable; fixed embeddings come before sampled ones.
    #[arg(long, value_name = "LIST")]
    pub embedding: Vec<String>,
}

#[derive(Args, Debug)]
pub struct ConsultArgs {
    pub doc: PathBuf,
    #[arg(long, default_value = "mpgf-r")]
    pub mode: Mode,
    /// Read answers from this file, one per line, instead of prompting.
    #[arg(long)]
    pub answers: Option<PathBuf>,
}

struct Failure {
    status: ExitStatus,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            status: ExitStatus::of_error(&e),
            message: format!("error: {e}"),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            status: ExitStatus::Internal,
            message: format!("error: i/o failure: {e}"),
        }
    }
}

fn domain(message: String) -> Failure {
    Failure {
        status: ExitStatus::Domain,
        message: format!("error: {message}"),
    }
}

fn parse_failure(origin: &str, src: &str, e: &ParseError) -> Failure {
    Failure {
        status: ExitStatus::Domain,
        message: format!("error: {origin}:{}", e.render(src)),
    }
}

type Outcome = Result<ExitStatus, Failure>;

struct Io<'a> {
    stdin: &'a mut dyn BufRead,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                ExitStatus::Domain
            } else {
                let _ = write!(stdout, "{}", e.render());
                ExitStatus::Success
            };
            return code.code();
        }
    };
    let mut io = Io {
        stdin,
        out: stdout,
        err: stderr,
    };
    let res = match &cli.command {
        Command::Eval(a) => cmd_eval(&cli, a, &mut io),
        Command::Infer(a) => cmd_infer(&cli, a, &mut io),
        Command::Check(a) => cmd_check(&cli, a, &mut io),
        Command::Stability(a) => cmd_stability(&cli, a, &mut io),
        Command::Consult(a) => cmd_consult(&cli, a, &mut io),
    };
    let status = match res {
        Ok(s) => s,
        Err(f) => {
            let _ = writeln!(io.err, "{}", f.message);
            f.status
        }
    };
    let _ = io.out.flush();
    status.code()
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| domain(format!("cannot read {}: {e}", path.display())))
}

fn load_document(path: &Path) -> Result<RuleBase, Failure> {
    let src = read(path)?;
    parse_document(&src).map_err(|e| parse_failure(&path.display().to_string(), &src, &e))
}

fn inline_scale(cli: &Cli) -> Result<Option<Scale>, Failure> {
    match &cli.scale {
        None => Ok(None),
        Some(text) => parse_scale(text)
            .map(Some)
            .map_err(|e| parse_failure("--scale", text, &e)),
    }
}

fn print_json(out: &mut dyn Write, v: &Value) -> io::Result<()> {
    let text = serde_json::to_string_pretty(v).expect("json values always serialize");
    writeln!(out, "{text}")
}

fn cmd_eval(cli: &Cli, a: &EvalArgs, io: &mut Io<'_>) -> Outcome {
    let scale = match (inline_scale(cli)?, &a.doc) {
        (Some(s), None) => s,
        (None, Some(p)) => load_document(p)?.scale().clone(),
        (Some(_), Some(_)) => return Err(domain("give either --scale or --doc, not both".into())),
        (None, None) => return Err(domain("no scale: pass --scale DECL or --doc FILE".into())),
    };
    let (origin, text) = match (&a.expr, &a.file) {
        (Some(e), _) => ("expression".to_string(), e.clone()),
        (None, Some(p)) => (p.display().to_string(), read(p)?),
        (None, None) => return Err(domain("no expression given".into())),
    };
    let expr = parse_expression(text.trim_end(), &scale)
        .map_err(|e| parse_failure(&origin, text.trim_end(), &e))?;
    let v = expr.eval()?;
    if cli.json {
        print_json(io.out, &json!(v.labels()))?;
    } else {
        writeln!(io.out, "{v}")?;
    }
    Ok(ExitStatus::Success)
}

fn cmd_infer(cli: &Cli, a: &InferArgs, io: &mut Io<'_>) -> Outcome {
    let rb = load_document(&a.doc)?;
    let res = infer(&rb, a.mode)?;
    if cli.json {
        print_json(io.out, &res.to_json())?;
    } else {
        write!(io.out, "{}", res.table())?;
    }
    Ok(ExitStatus::Success)
}

// Δ without the reduction step; only reachable through the hidden flag.
fn conj_without_reduce(f: &Valuation, g: &Valuation) -> crate::error::Result<Valuation> {
    let mut r = f.ranks().to_vec();
    r.extend_from_slice(g.ranks());
    r.sort_unstable();
    Ok(Valuation::new_unchecked(f.scale(), r))
}

fn law_table(report: &LawReport) -> String {
    let w = report
        .results
        .iter()
        .map(|r| r.law.len())
        .max()
        .unwrap_or(0);
    let mut s = String::new();
    for r in &report.results {
        let mark = if r.pass { "ok" } else { "FAIL" };
        s += &format!("{:<w$}  {:<4}  {}\n", r.law, mark, r.scope);
        if let Some(cx) = &r.counterexample {
            let parts: Vec<String> = cx.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            let tag = if r.pass { "witness" } else { "counterexample" };
            s += &format!("{:<w$}        {tag}: {}\n", "", parts.join(", "));
        }
    }
    let failed = report.failures().count();
    s += &format!("{} laws, {} failed\n", report.results.len(), failed);
    s
}

fn cmd_check(cli: &Cli, a: &CheckArgs, io: &mut Io<'_>) -> Outcome {
    let scale = match inline_scale(cli)? {
        Some(s) => s,
        None => Scale::numeric(a.scale_size)?,
    };
    let mut checker = LawChecker::new(&scale, a.max_len);
    if a.inject_fault {
        checker = checker.with_conj(conj_without_reduce);
    }
    let report = checker.run()?;
    if cli.json {
        print_json(
            io.out,
            &serde_json::to_value(&report).expect("report serializes"),
        )?;
    } else {
        write!(io.out, "{}", law_table(&report))?;
    }
    Ok(if report.all_passed() {
        ExitStatus::Success
    } else {
        ExitStatus::LawFailure
    })
}

fn emit_report<T: Scalar>(cli: &Cli, rep: &StabilityReport<T>, io: &mut Io<'_>) -> io::Result<()> {
    if cli.json {
        print_json(io.out, &rep.to_json())
    } else {
        write!(io.out, "{}", rep.table())
    }
}

fn cmd_stability(cli: &Cli, a: &StabilityArgs, io: &mut Io<'_>) -> Outcome {
    let rb = load_document(&a.doc)?;
    let fixed: Vec<Embedding<Rational64>> = a
        .embedding
        .iter()
        .map(|l| Embedding::parse(rb.scale(), l))
        .collect::<Result<_, _>>()?;
    let samples = a.samples.unwrap_or(if fixed.is_empty() { 500 } else { 0 });
    if samples == 0 {
        // fixed embeddings only: keep the arithmetic exact
        let rep = audit_with(&rb, a.tnorm, &fixed, None)?;
        emit_report(cli, &rep, io)?;
    } else {
        let mut all: Vec<Embedding<f64>> = fixed.iter().map(Embedding::to_f64).collect();
        all.extend(sample_embeddings(rb.scale(), samples, a.seed));
        let rep = audit_with(&rb, a.tnorm, &all, Some(a.seed))?;
        emit_report(cli, &rep, io)?;
    }
    Ok(ExitStatus::Success)
}

fn parse_answer(scale: &Scale, text: &str) -> crate::error::Result<Valuation> {
    if text.eq_ignore_ascii_case("unknown") {
        Ok(Valuation::bottom(scale))
    } else {
        Valuation::parse_text(scale, text)
    }
}

fn cmd_consult(cli: &Cli, a: &ConsultArgs, io: &mut Io<'_>) -> Outcome {
    let rb = load_document(&a.doc)?;
    let scale = rb.scale().clone();
    let given: Vec<&Atom> = rb.facts().iter().map(|f| &f.atom).collect();
    let ask: Vec<Atom> = rb
        .askable_atoms()
        .into_iter()
        .filter(|x| !given.contains(&x))
        .collect();
    let mut facts = rb.facts().to_vec();
    let mut answers = Vec::new();
    // with --json the transcript goes to stderr so stdout stays parseable
    let transcript: &mut dyn Write = if cli.json { &mut *io.err } else { &mut *io.out };

    if let Some(path) = &a.answers {
        let src = read(path)?;
        let mut lines = src
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        for atom in &ask {
            let Some((n, line)) = lines.next() else {
                return Err(domain(format!("{}: no answer for {atom}", path.display())));
            };
            writeln!(transcript, "{atom}? {line}")?;
            let pv = parse_answer(&scale, line)
                .map_err(|e| domain(format!("{}:{n}: {e}", path.display())))?;
            answers.push((atom.clone(), pv));
        }
    } else {
        for atom in &ask {
            loop {
                write!(transcript, "{atom}? ")?;
                transcript.flush()?;
                let mut line = String::new();
                if io.stdin.read_line(&mut line)? == 0 {
                    return Err(domain(format!("input ended before {atom} was answered")));
                }
                match parse_answer(&scale, line.trim()) {
                    Ok(pv) => {
                        answers.push((atom.clone(), pv));
                        break;
                    }
                    Err(e) => writeln!(
                        transcript,
                        "  {e}; answer with a grade, a valuation such as (A, B), or unknown"
                    )?,
                }
            }
        }
    }

    for (atom, pv) in &answers {
        facts.push(Fact {
            atom: atom.clone(),
            pv: pv.clone(),
        });
    }
    let res = infer(&rb.with_facts(facts)?, a.mode)?;
    if cli.json {
        let given: Vec<Value> = answers
            .iter()
            .map(
                |(at, pv)| json!({"attribute": at.attribute, "value": at.value, "pv": pv.labels()}),
            )
            .collect();
        print_json(io.out, &json!({"answers": given, "result": res.to_json()}))?;
    } else {
        write!(io.out, "{}", res.table())?;
        if res.supported().next().is_none() {
            writeln!(
                io.out,
                "no hypothesis is supported above {}",
                Valuation::bottom(&scale)
            )?;
        }
    }
    Ok(ExitStatus::Success)
}
