use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use braidlift::catalog::{builtin, default_order, reference_check, ProblemSpec, BUILTINS};
use braidlift::emit;
use braidlift::expr::{parse, Scope};
use braidlift::lifting::{run_pipeline, LiftingProblem};
use braidlift::ncpoly::Block;
use braidlift::problem::ProblemFile;
use braidlift::Cyc;

#[derive(Parser)]
#[command(
    name = "braidlift",
    version,
    about = "Liftings of Nichols algebras of diagonal type"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the cleft object E(λ) and the lifting u(λ) of a problem.
    Run(RunArgs),
}

#[derive(clap::Args)]
struct RunArgs {
    /// One of toy, B2-even, B2-odd, B2-N5.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    builtin: Option<String>,
    /// TOML problem file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// `N=<order>` for builtins, or `l<k>=<value>` to specialize a parameter.
    #[arg(long = "param", value_name = "K=V")]
    params: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    emit: Emit,
    /// Compare against the reference displays of the matching builtin.
    #[arg(long)]
    check: bool,
    /// With --check, exit nonzero on any mismatch.
    #[arg(long, requires = "check")]
    strict: bool,
    /// Include the correction trace of each relation.
    #[arg(long)]
    trace: bool,
    /// Largest word degree kept by the rewriting systems.
    #[arg(long, value_name = "D")]
    degree_bound: Option<usize>,
    /// Write the output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

struct Params {
    order: Option<u32>,
    values: Vec<(usize, String)>,
}

fn split_params(raw: &[String]) -> Result<Params> {
    let mut p = Params {
        order: None,
        values: Vec::new(),
    };
    for s in raw {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| anyhow!("--param expects K=V, got `{s}`"))?;
        let (k, v) = (k.trim(), v.trim());
        if k == "N" {
            p.order = Some(
                v.parse()
                    .with_context(|| format!("N must be a positive integer, got `{v}`"))?,
            );
        } else if let Some(id) = k.strip_prefix('l').and_then(|i| i.parse().ok()) {
            p.values.push((id, v.to_string()));
        } else {
            bail!("unknown parameter `{k}`; expected N or l<k>");
        }
    }
    Ok(p)
}

fn load(args: &RunArgs, params: &Params) -> Result<(LiftingProblem, Option<ProblemSpec>, bool)> {
    if let Some(name) = &args.builtin {
        if default_order(name).is_none() {
            bail!(
                "unknown builtin `{name}`; available: {}",
                BUILTINS.join(", ")
            );
        }
        let spec = builtin(name, params.order)?;
        return Ok((spec.problem.clone(), Some(spec), false));
    }
    let path = args
        .file
        .as_ref()
        .expect("clap enforces --builtin or --file");
    let src =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = ProblemFile::from_toml(&src)?;
    if params.order.is_some() {
        bail!("N=... applies to builtins; the order of a problem file is set in [realization]");
    }
    let problem = file.to_problem()?;
    // A file matches a builtin when it describes the same problem.
    let spec = builtin(&problem.name, Some(problem.real.order()))
        .ok()
        .filter(|s| ProblemFile::from_problem(&s.problem, false).relations == file.relations);
    Ok((problem, spec, file.options.trace))
}

fn run(args: RunArgs) -> Result<bool> {
    let params = split_params(&args.params)?;
    let (mut problem, spec, file_trace) = load(&args, &params)?;
    if args.degree_bound.is_some() {
        problem.degree_bound = args.degree_bound;
    }
    let trace = args.trace || file_trace;
    let out = run_pipeline(&problem)?;
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    let mut ok = true;
    let mut report = String::new();
    if args.check {
        match &spec {
            Some(spec) => {
                let r = reference_check(spec, &out);
                ok = r.all_match();
                report = r.render();
            }
            None => eprintln!("warning: no builtin matches this problem; --check skipped"),
        }
    }
    let out = if params.values.is_empty() {
        out
    } else {
        let scope = Scope::block(
            &problem.real,
            &problem.bindings,
            &out.lifting().system,
            Block::A,
        );
        let mut values: BTreeMap<usize, Cyc> = BTreeMap::new();
        for (id, src) in &params.values {
            let v = scope
                .eval(&parse(src)?)?
                .as_scalar()
                .and_then(|c| c.as_constant())
                .ok_or_else(|| anyhow!("l{id}={src}: value must be a constant in q"))?;
            values.insert(*id, v);
        }
        out.specialized(&values)?
    };
    let mut text = match args.emit {
        Emit::Text => emit::text(&out, trace),
        Emit::Json => emit::json_string(&out, trace),
    };
    if args.check {
        match args.emit {
            Emit::Text => {
                text.push_str("check:\n");
                text.push_str(&report);
            }
            Emit::Json => eprint!("{report}"),
        }
    }
    match &args.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(ok || !args.strict)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("reference mismatch");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
