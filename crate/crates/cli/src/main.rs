use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use schur_core::casesplit::{split, SplitOptions, DEFAULT_MAX_DEPTH};
use schur_core::fixtures;
use schur_core::multmat::build_matrix;
use schur_core::presentation::{
    check_consistency, check_consistency_sampled, is_prime, parse, Admissibility, Assignment, Presentation,
};
use schur_core::render::RenderResult;
use schur_core::smith::{mult, Budget, PivotStrategy, SchurResult};
use schur_core::verify::{differential_check, Coverage, VerifyOptions, DEFAULT_PRIMES};

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_VERIFY: u8 = 3;

/// Schur multipliers of nilpotent Lie p-rings.
#[derive(Parser)]
#[command(name = "schur", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the multiplier, symbolically or at a point given by --at.
    Mult {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        elim: Elim,
        #[arg(long, value_name = "p=P,x=V,...")]
        at: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the relation matrix, one row per line.
    Matrix {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "p=P,x=V,...")]
        at: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Substitute polynomials for parameters (or evaluate at a point) and
    /// print the resulting presentation.
    Specialise {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "x=EXPR;y=EXPR")]
        subs: Option<String>,
        #[arg(long, value_name = "p=P,x=V,...")]
        at: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the case-distinction tree.
    Split {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        elim: Elim,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare the case tree with concrete computations at small primes.
    Verify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        elim: Elim,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_PRIMES)]
        primes: Vec<u64>,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the ring axioms at a point, or at sampled points.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "p=P,x=V,...")]
        at: Option<String>,
        #[arg(long, value_delimiter = ',', default_values_t = [5u64, 7])]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct Input {
    /// Presentation file, or `fixture:NAME` for a bundled one.
    file: String,
}

#[derive(Args)]
struct Elim {
    /// Elimination limits, e.g. `steps=100000,degree=12,digits=80`.
    #[arg(long, value_name = "steps=K,degree=D,digits=B")]
    budget: Option<String>,
    #[arg(long, value_enum, default_value_t = Strategy::Sparse)]
    strategy: Strategy,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Sparse,
    FirstFound,
}

impl Elim {
    fn budget(&self) -> Result<Budget> {
        let mut b = Budget::default();
        let Some(arg) = &self.budget else { return Ok(b) };
        for part in arg.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| anyhow!("budget item `{part}` is not key=value"))?;
            let bad = || anyhow!("budget value `{v}` for `{k}` is not a nonnegative integer");
            match k.trim() {
                "steps" => b.steps = v.trim().parse().map_err(|_| bad())?,
                "degree" => b.degree = v.trim().parse().map_err(|_| bad())?,
                "digits" => b.digits = v.trim().parse().map_err(|_| bad())?,
                other => bail!("unknown budget key `{other}` (expected steps, degree or digits)"),
            }
        }
        Ok(b)
    }

    fn strategy(&self) -> PivotStrategy {
        match self.strategy {
            Strategy::Sparse => PivotStrategy::Sparse,
            Strategy::FirstFound => PivotStrategy::FirstFound,
        }
    }
}

fn load(input: &Input) -> Result<Presentation> {
    let text = match input.file.strip_prefix("fixture:") {
        Some(name) => fixtures::by_name(name).ok_or_else(|| anyhow!("no bundled fixture named `{name}`"))?.source.to_string(),
        None => std::fs::read_to_string(&input.file).with_context(|| format!("reading {}", input.file))?,
    };
    parse(&text).with_context(|| format!("parsing {}", input.file))
}

/// `p=5,x=1,y=-2`: the prime and a value for every parameter.
fn parse_point(pres: &Presentation, arg: &str) -> Result<(u64, Assignment)> {
    let mut prime = None;
    let mut a = Assignment::new();
    for part in arg.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| anyhow!("`{part}` is not name=value"))?;
        let (k, v) = (k.trim(), v.trim());
        if k == "p" {
            let p: u64 = v.parse().map_err(|_| anyhow!("`{v}` is not a prime"))?;
            if !is_prime(p) {
                bail!("{p} is not a prime");
            }
            prime = Some(p);
        } else if pres.params().iter().any(|x| x == k) {
            a.insert(k.to_string(), v.parse().map_err(|_| anyhow!("value `{v}` for `{k}` is not an integer"))?);
        } else {
            bail!("unknown parameter `{k}` (parameters: {})", pres.params().join(" "));
        }
    }
    let prime = prime.ok_or_else(|| anyhow!("--at needs p=<prime>"))?;
    if let Some(missing) = pres.params().iter().find(|x| !a.contains_key(*x)) {
        bail!("--at gives no value for parameter `{missing}`");
    }
    Ok((prime, a))
}

fn concrete_at(pres: &Presentation, arg: &str) -> Result<Presentation> {
    let (prime, a) = parse_point(pres, arg)?;
    let c = pres.evaluate_concrete(prime, &a)?;
    match c.admissibility() {
        Admissibility::Admissible => Ok(c),
        Admissibility::Violated(v) | Admissibility::Infeasible(v) => {
            let v: Vec<String> = v.iter().map(ToString::to_string).collect();
            bail!("the point violates `require {}`", v.join("`, `require "))
        }
    }
}

/// Writes to stdout; a closed pipe ends the process quietly.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(i32::from(EXIT_INVALID));
    }
}

fn print_json(v: &serde_json::Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("json renders")));
}

fn result_code(r: &SchurResult) -> u8 {
    if r.budget_exceeded.is_some() {
        EXIT_BUDGET
    } else if !r.valid {
        EXIT_INVALID
    } else {
        EXIT_OK
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Mult { input, elim, at, format } => {
            let budget = elim.budget()?;
            let mut pres = load(&input)?;
            if let Some(arg) = &at {
                pres = concrete_at(&pres, arg)?;
            } else if let Admissibility::Infeasible(v) = pres.admissibility() {
                let v: Vec<String> = v.iter().map(ToString::to_string).collect();
                eprintln!("infeasible: require {} vanishes identically", v.join(", "));
                return Ok(EXIT_INVALID);
            }
            let r = mult(&pres, &budget, elim.strategy())?;
            match format {
                Format::Text => emit(&format!("{}\n", RenderResult(&r))),
                Format::Json => print_json(&serde_json::to_value(&r)?),
            }
            if let Some(d) = &r.diagnostic {
                eprintln!("{d}");
            }
            Ok(result_code(&r))
        }
        Cmd::Matrix { input, at, format } => {
            let mut pres = load(&input)?;
            if let Some(arg) = &at {
                pres = concrete_at(&pres, arg)?;
            }
            let m = build_matrix(&pres)?;
            match format {
                Format::Text => emit(&m.dump()),
                Format::Json => {
                    let rows: Vec<_> = m
                        .rows
                        .iter()
                        .map(|r| json!({"label": r.label.to_string(), "entries": r.entries.iter().map(ToString::to_string).collect::<Vec<_>>()}))
                        .collect();
                    let cols: Vec<String> = m.basis.labels().iter().map(ToString::to_string).collect();
                    print_json(&json!({"columns": cols, "rows": rows}));
                }
            }
            Ok(EXIT_OK)
        }
        Cmd::Specialise { input, subs, at, output } => {
            let mut pres = load(&input)?;
            if let Some(arg) = &subs {
                let pairs: Vec<(&str, &str)> = arg
                    .split(';')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.split_once('=').map(|(k, v)| (k.trim(), v.trim())).ok_or_else(|| anyhow!("`{s}` is not name=expr")))
                    .collect::<Result<_>>()?;
                for (k, _) in &pairs {
                    if !pres.params().iter().any(|x| x == k) {
                        bail!("unknown parameter `{k}` (parameters: {})", pres.params().join(" "));
                    }
                }
                pres = pres.specialise_str(&pairs)?;
            }
            if let Some(arg) = &at {
                pres = concrete_at(&pres, arg)?;
            }
            let text = pres.to_string();
            match output {
                Some(path) => std::fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?,
                None => emit(&text),
            }
            if let Admissibility::Infeasible(v) = pres.admissibility() {
                let v: Vec<String> = v.iter().map(ToString::to_string).collect();
                eprintln!("infeasible: require {} vanishes identically", v.join(", "));
                return Ok(EXIT_INVALID);
            }
            Ok(EXIT_OK)
        }
        Cmd::Split { input, elim, max_depth, format } => {
            let opts = SplitOptions { budget: elim.budget()?, strategy: elim.strategy(), max_depth };
            let pres = load(&input)?;
            let tree = split(&pres, &opts)?;
            match format {
                Format::Text => emit(&tree.to_string()),
                Format::Json => print_json(&tree.to_json()),
            }
            let exceeded = tree.nodes().iter().any(|n| n.result().is_some_and(SchurResult::is_budget_exceeded));
            Ok(if exceeded {
                EXIT_BUDGET
            } else if tree.result().is_none() {
                EXIT_INVALID
            } else {
                EXIT_OK
            })
        }
        Cmd::Verify { input, elim, primes, exhaustive, samples, seed, max_depth, format } => {
            let opts = SplitOptions { budget: elim.budget()?, strategy: elim.strategy(), max_depth };
            for &p in &primes {
                if !is_prime(p) {
                    bail!("{p} is not a prime");
                }
            }
            let coverage = match (exhaustive, samples) {
                (true, _) => Coverage::Exhaustive,
                (false, Some(n)) => Coverage::Sample(n),
                (false, None) => Coverage::Auto,
            };
            let pres = load(&input)?;
            let tree = split(&pres, &opts)?;
            let report = differential_check(&pres, &tree, &primes, &VerifyOptions { coverage, seed })?;
            match format {
                Format::Text => emit(&report.to_string()),
                Format::Json => print_json(&serde_json::to_value(&report)?),
            }
            Ok(if !report.ok() {
                EXIT_VERIFY
            } else if report.inconsistent() > 0 {
                EXIT_INVALID
            } else {
                EXIT_OK
            })
        }
        Cmd::Check { input, at, primes, samples, seed, format } => {
            let pres = load(&input)?;
            let mut failures = Vec::new();
            let probabilistic;
            let mut tested = 0;
            if let Some(arg) = &at {
                let c = concrete_at(&pres, arg)?;
                probabilistic = false;
                tested = 1;
                failures.extend(check_consistency(&c)?.violations.into_iter().map(|v| (None, v)));
            } else if pres.params().is_empty() {
                probabilistic = false;
                for &p in &primes {
                    let c = pres.evaluate_concrete(p, &Assignment::new())?;
                    tested += 1;
                    failures.extend(check_consistency(&c)?.violations.into_iter().map(|v| (Some((p, Assignment::new())), v)));
                }
            } else {
                let s = check_consistency_sampled(&pres, &primes, samples, seed)?;
                probabilistic = s.probabilistic;
                tested = s.tested;
                failures.extend(s.failures.into_iter().map(|(p, a, v)| (Some((p, a)), v)));
            }
            match format {
                Format::Text => {
                    if failures.is_empty() {
                        let how = if probabilistic { " (sampled, probabilistic)" } else { "" };
                        emit(&format!("consistent at {tested} point(s){how}\n"));
                    }
                    for (at, v) in &failures {
                        match at {
                            Some((p, a)) if a.is_empty() => emit(&format!("p={p}: {v}\n")),
                            Some((p, a)) => {
                                let a: Vec<String> = a.iter().map(|(k, v)| format!("{k}={v}")).collect();
                                emit(&format!("p={p} {}: {v}\n", a.join(",")))
                            }
                            None => emit(&format!("{v}\n")),
                        }
                    }
                }
                Format::Json => {
                    let vs: Vec<_> = failures
                        .iter()
                        .map(|(at, v)| {
                            json!({
                                "prime": at.as_ref().map(|x| x.0),
                                "assignment": at.as_ref().map(|x| &x.1),
                                "kind": v.kind.to_string(),
                                "indices": v.indices,
                                "message": v.to_string(),
                            })
                        })
                        .collect();
                    print_json(&json!({"ok": failures.is_empty(), "probabilistic": probabilistic, "tested": tested, "violations": vs}));
                }
            }
            Ok(if failures.is_empty() { EXIT_OK } else { EXIT_INVALID })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
