use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lsq::lambda_s::{self, SContext, SError};
use lsq::parser::{parse_source, ParseOptions, SourceFile, SyntaxError};
use lsq::reduce::{ReduceError, Reducer, Strategy, DEFAULT_FUEL};
use lsq::scalar::DEFAULT_EPS;
use lsq::syntax::{linear_lint, typecheck, Context, Prop, Term};
use lsq::vector::{self, interchange, MeasureOptions, VecError};

#[derive(Parser)]
#[command(name = "lsq", version, about = "Checker and evaluator for the L-odot-S proof language")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the type of every definition and of main.
    Check {
        #[command(flatten)]
        input: Input,
        /// Report variables not used exactly once in every world.
        #[arg(long)]
        lint_linear: bool,
    },
    /// Normalize main.
    Run {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        reduce: ReduceArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Det)]
        mode: ModeArg,
        /// Seed for probabilistic mode.
        #[arg(long)]
        seed: Option<u64>,
        /// Keep collapsed branches at their original norm.
        #[arg(long)]
        no_renormalize: bool,
        #[arg(long, value_enum, default_value_t = StrategyArg::Lo)]
        strategy: StrategyArg,
        /// Print every step.
        #[arg(long)]
        trace: bool,
    },
    /// Compile a matrix document to a proof of Q^m -o Q^n.
    Compile {
        #[arg(long)]
        matrix: PathBuf,
        /// Vector document to apply the compiled term to, compared with M v.
        #[arg(long)]
        check: Option<PathBuf>,
        #[arg(long, env = "LSQ_FUEL", default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Measure the state main denotes, repeatedly.
    Sample {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        reduce: ReduceArgs,
        #[arg(long, default_value_t = 1000)]
        shots: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Normalize main of a Lambda-S program.
    Lambdas {
        #[command(flatten)]
        input: Input,
        #[arg(long, env = "LSQ_FUEL", default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

#[derive(Args)]
struct Input {
    /// Source file.
    file: Option<PathBuf>,
    /// Inline program; a bare term is read as `main = <term>`.
    #[arg(short = 'e', long = "expr", conflicts_with = "file")]
    expr: Option<String>,
    /// Enable (+) and & with their proof terms.
    #[arg(long)]
    ext: bool,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long, env = "LSQ_FUEL", default_value_t = DEFAULT_FUEL)]
    fuel: u64,
    #[arg(long, default_value_t = DEFAULT_EPS)]
    eps: f64,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Det,
    Prob,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Lo,
    Ri,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(m: impl Display) -> Self {
        Failure { code: 1, message: format!("error: {m}") }
    }

    fn syntax(loaded: &Loaded, e: &SyntaxError) -> Self {
        let col = if e.line == 1 { e.col.saturating_sub(loaded.col_shift).max(1) } else { e.col };
        Failure { code: 1, message: format!("{}:{}:{}: {}", loaded.origin, e.line, col, e.message) }
    }

    fn typing(m: impl Display) -> Self {
        Failure { code: 2, message: format!("type error: {m}") }
    }

    fn reduction(m: impl Display) -> Self {
        Failure { code: 3, message: format!("reduction error: {m}") }
    }

    fn shape(m: impl Display) -> Self {
        Failure { code: 4, message: format!("data error: {m}") }
    }
}

impl From<ReduceError> for Failure {
    fn from(e: ReduceError) -> Self {
        Failure::reduction(e)
    }
}

impl From<SError> for Failure {
    fn from(e: SError) -> Self {
        if e.is_type_error() {
            Failure::typing(e)
        } else {
            Failure::reduction(e)
        }
    }
}

type Outcome = Result<String, Failure>;

struct Loaded {
    origin: String,
    text: String,
    /// Length of the `main = ` prefix added to inline terms.
    col_shift: usize,
}

impl Input {
    fn load(&self) -> Result<Loaded, Failure> {
        match (&self.file, &self.expr) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
                Ok(Loaded { origin: path.display().to_string(), text, col_shift: 0 })
            }
            (None, Some(expr)) => {
                let text = wrap_inline(expr);
                let col_shift = text.len() - expr.len();
                Ok(Loaded { origin: "<expr>".into(), text, col_shift })
            }
            (None, None) => Err(Failure::usage("give a source file or -e <program>")),
        }
    }

    fn parse(&self, loaded: &Loaded) -> Result<SourceFile, Failure> {
        let opts = ParseOptions { extensions: self.ext };
        let file = parse_source(&loaded.text, opts).map_err(|e| Failure::syntax(loaded, &e))?;
        Ok(SourceFile {
            defs: file
                .defs
                .into_iter()
                .map(|mut d| {
                    d.term = vector::with_builtins(&d.term);
                    d
                })
                .collect(),
            main: file.main.map(|m| vector::with_builtins(&m)),
        })
    }
}

fn wrap_inline(expr: &str) -> String {
    let trimmed = expr.trim_start();
    let is_program = trimmed.starts_with('%')
        || trimmed.starts_with("def ")
        || trimmed.starts_with("main ")
        || trimmed.starts_with("main=")
        || trimmed.starts_with("--");
    if is_program || trimmed.is_empty() {
        expr.to_string()
    } else {
        format!("main = {expr}")
    }
}

fn typed_main(file: &SourceFile) -> Result<(Term, Prop), Failure> {
    let main = file.main.clone().ok_or_else(|| Failure::usage("no main"))?;
    let ty = typecheck(&Context::new(), &main).map_err(Failure::typing)?;
    Ok((main, ty))
}

fn cmd_check(input: &Input, lint: bool) -> Outcome {
    let loaded = input.load()?;
    if lambda_s::has_header(&loaded.text) {
        return lambdas_check(&loaded);
    }
    let file = input.parse(&loaded)?;
    let mut out = String::new();
    let entries = file.defs.iter().map(|d| (d.name.as_str(), &d.term)).chain(file.main.iter().map(|m| ("main", m)));
    for (name, term) in entries {
        let ty = typecheck(&Context::new(), term).map_err(|e| Failure::typing(format!("in `{name}`: {e}")))?;
        out.push_str(&format!("{name} : {ty}\n"));
        if lint {
            for v in linear_lint(term).violations {
                out.push_str(&format!("  lint: {name}: {v}\n"));
            }
        }
    }
    if file.main.is_none() {
        out.push_str("no main\n");
    }
    Ok(out)
}

fn lambdas_check(loaded: &Loaded) -> Outcome {
    let file = lambda_s::parse_s_source(&loaded.text).map_err(|e| Failure::syntax(loaded, &e))?;
    let mut out = String::new();
    let entries = file.defs.iter().map(|(n, t)| (n.as_str(), t)).chain(file.main.iter().map(|m| ("main", m)));
    for (name, term) in entries {
        let ty = lambda_s::s_typecheck(&SContext::new(), term).map_err(|e| Failure::typing(format!("in `{name}`: {e}")))?;
        out.push_str(&format!("{name} : {ty}\n"));
    }
    if file.main.is_none() {
        out.push_str("no main\n");
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_run(
    input: &Input,
    args: &ReduceArgs,
    mode: ModeArg,
    seed: Option<u64>,
    no_renormalize: bool,
    strategy: StrategyArg,
    trace: bool,
) -> Outcome {
    let loaded = input.load()?;
    if lambda_s::has_header(&loaded.text) {
        return lambdas_run(&loaded, args.fuel, args.format.unwrap_or(Format::Human));
    }
    let mode = match (mode, seed) {
        (ModeArg::Det, _) => lsq::reduce::Mode::Deterministic,
        (ModeArg::Prob, Some(seed)) => lsq::reduce::Mode::Probabilistic { seed, renormalize: !no_renormalize },
        (ModeArg::Prob, None) => return Err(Failure::usage("--mode prob needs --seed")),
    };
    let file = input.parse(&loaded)?;
    let (main, _) = typed_main(&file)?;
    let strategy = match strategy {
        StrategyArg::Lo => Strategy::LeftmostOutermost,
        StrategyArg::Ri => Strategy::RightmostInnermost,
    };
    let mut reducer = Reducer::new(mode).strategy(strategy).eps(args.eps).record_terms(trace);
    let (out, tr) = reducer.normalize(&main, args.fuel)?;
    let ty = typecheck(&Context::new(), &out).map_err(Failure::typing)?;
    match args.format.unwrap_or(Format::Human) {
        Format::Json => {
            let choices: Vec<_> = tr.choices().map(|(b, p)| json!({"branch": b.to_string(), "p": p})).collect();
            let mut doc = json!({
                "term": out.to_string(),
                "type": ty.to_string(),
                "steps": tr.step_count(),
                "choices": choices,
            });
            if trace {
                doc["trace"] = tr
                    .steps
                    .iter()
                    .map(|s| {
                        json!({
                            "rule": s.rule.name(),
                            "path": lsq::syntax::fmt_path(&s.path),
                            "term": s.result.as_ref().map(|t| t.to_string()),
                        })
                    })
                    .collect();
            }
            Ok(format!("{doc}\n"))
        }
        Format::Human => {
            let mut s = String::new();
            if trace {
                s.push_str(&tr.log());
            } else {
                for (k, (b, p)) in tr.choices().enumerate() {
                    s.push_str(&format!("choice {}: p={p} chose={b}\n", k + 1));
                }
            }
            s.push_str(&format!("{out}\n"));
            Ok(s)
        }
    }
}

fn cmd_compile(matrix: &PathBuf, check: Option<&PathBuf>, fuel: u64, format: Format) -> Outcome {
    let read = |p: &PathBuf| std::fs::read_to_string(p).map_err(|e| Failure::usage(format!("cannot read {}: {e}", p.display())));
    let m = interchange::read_matrix(&read(matrix)?).map_err(Failure::shape)?;
    let t = vector::compile_matrix(&m);
    let mut error = None;
    if let Some(path) = check {
        let v = interchange::read_vector(&read(path)?).map_err(Failure::shape)?;
        let want = vector::mat_vec(&m, &v).map_err(Failure::shape)?;
        let out = lsq::reduce::normalize_det(&Term::app(t.clone(), vector::encode(&v)), fuel)?;
        let got = vector::decode(&out).map_err(Failure::reduction)?;
        error = Some((got.max_abs_diff(&want), out));
    }
    Ok(match format {
        Format::Json => {
            let mut doc = json!({"term": t.to_string()});
            if let Some((e, out)) = &error {
                doc["max_abs_error"] = json!(e);
                doc["result"] = json!(out.to_string());
            }
            format!("{doc}\n")
        }
        Format::Human => {
            let mut s = format!("{t}\n");
            if let Some((e, out)) = &error {
                s.push_str(&format!("result: {out}\nmax-abs-error: {e}\n"));
            }
            s
        }
    })
}

fn cmd_sample(input: &Input, args: &ReduceArgs, shots: u64, seed: Option<u64>, threads: usize) -> Outcome {
    let seed = seed.ok_or_else(|| Failure::usage("sample needs --seed"))?;
    let loaded = input.load()?;
    let file = input.parse(&loaded)?;
    let (main, _) = typed_main(&file)?;
    let opts = MeasureOptions { threads, eps: args.eps, fuel: args.fuel };
    let report = vector::measure_with(&main, shots, seed, opts).map_err(|e| match e {
        VecError::Reduce(r) => Failure::reduction(r),
        other => Failure::reduction(other),
    })?;
    Ok(match args.format.unwrap_or(Format::Json) {
        Format::Json => format!("{}\n", serde_json::to_string(&report).expect("report serializes")),
        Format::Human => {
            let mut s = format!("shots: {} seed: {}\n", report.shots, report.seed);
            for (i, c) in &report.counts {
                s.push_str(&format!("{:0width$b}: {c} ({})\n", i, report.frequency(*i), width = report.qubits.max(1)));
            }
            s
        }
    })
}

fn cmd_lambdas(input: &Input, fuel: u64, format: Format) -> Outcome {
    let loaded = input.load()?;
    if input.file.is_some() && !lambda_s::has_header(&loaded.text) {
        return Err(Failure::usage(format!("{}: missing `{}` header", loaded.origin, lambda_s::HEADER)));
    }
    lambdas_run(&loaded, fuel, format)
}

fn lambdas_run(loaded: &Loaded, fuel: u64, format: Format) -> Outcome {
    let file = lambda_s::parse_s_source(&loaded.text).map_err(|e| Failure::syntax(loaded, &e))?;
    let main = file.main.ok_or_else(|| Failure::usage("no main"))?;
    let ty = lambda_s::s_typecheck(&SContext::new(), &main)?;
    let (out, rules) = lambda_s::s_normalize_trace(&main, fuel)?;
    Ok(match format {
        Format::Json => format!("{}\n", json!({"term": out.to_string(), "type": ty.to_string(), "steps": rules.len()})),
        Format::Human => format!("{out}\n"),
    })
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Check { input, lint_linear } => cmd_check(&input, lint_linear),
        Command::Run { input, reduce, mode, seed, no_renormalize, strategy, trace } => {
            cmd_run(&input, &reduce, mode, seed, no_renormalize, strategy, trace)
        }
        Command::Compile { matrix, check, fuel, format } => cmd_compile(&matrix, check.as_ref(), fuel, format),
        Command::Sample { input, reduce, shots, seed, threads } => cmd_sample(&input, &reduce, shots, seed, threads),
        Command::Lambdas { input, fuel, format } => cmd_lambdas(&input, fuel, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}
