use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use homdual::gorenstein::{Caps, Context};
use homdual::modules::Module;

mod algebra_file;
mod commands;
mod module_spec;
mod report;

use report::{AlgebraInfo, Findings, ModuleSummary, Report, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(name = "homdual", version, about = "Homological invariants of bound-quiver algebras over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Algebra file (quiver or structure constants).
    #[arg(long, global = true)]
    algebra: Option<PathBuf>,
    /// Inline module expression, or a path to a JSON module file.
    #[arg(long, global = true)]
    module: Option<String>,
    /// JSON module file (representation or record).
    #[arg(long, global = true, conflicts_with = "module")]
    module_file: Option<PathBuf>,
    /// Homological degree bound.
    #[arg(long, global = true, default_value_t = 6)]
    cap: usize,
    /// Dimension bound for enumerated modules.
    #[arg(long, global = true, default_value_t = 4)]
    dim_cap: usize,
    #[arg(long, global = true, default_value_t = 1_000_000)]
    lattice_cap: usize,
    /// Seed for randomized steps; recorded in the report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit JSON (the default; kept for explicitness).
    #[arg(long, global = true)]
    json: bool,
    /// Indent the JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads for `verify`.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Injective resolutions of both regular modules and the Gorenstein conditions.
    Profile,
    /// Projective, injective and flat dimension of a module.
    Dims,
    /// Grade, reduced grade and strong grade of a module.
    Grade,
    /// Auslander-Bridger transpose of a module.
    Transpose,
    /// Evaluation map into the double dual.
    Eval,
    /// Minimal injective resolution of a module.
    InjRes,
    /// Minimal projective resolution of a module.
    ProjRes,
    /// Dominant dimension of the algebra.
    Dominant,
    /// Pseudo-null and purity classification of a module and its top Ext.
    Purity,
    /// Canonical chain of double-dual embeddings starting at a module.
    Dclass {
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Run one verifier, or all of them.
    Verify { target: String },
    /// Search for impure top Ext modules over quasi Auslander-Gorenstein algebras.
    ExplorePurityQuestion,
    /// Bounds on the small finitistic dimension of both sides.
    Findim,
    /// Self-injectivity against the annihilator and grade conditions.
    Nakayama,
    /// Reflexivity of left ideals against pseudo-null submodules of the quotients.
    Ideals,
}

impl Command {
    fn needs_module(&self) -> bool {
        matches!(
            self,
            Command::Dims
                | Command::Grade
                | Command::Transpose
                | Command::Eval
                | Command::InjRes
                | Command::ProjRes
                | Command::Purity
                | Command::Dclass { .. }
        )
    }
}

fn load_module(cli: &Cli, alg: &homdual::Algebra) -> Result<Option<(String, Module)>, String> {
    let file = match (&cli.module, &cli.module_file) {
        (Some(s), None) if Path::new(s).is_file() => Some(PathBuf::from(s)),
        (Some(s), None) => {
            let m = module_spec::parse_module(alg, s).map_err(|e| format!("module `{s}`: {e}"))?;
            return Ok(Some((s.clone(), m)));
        }
        (None, Some(p)) => Some(p.clone()),
        _ => None,
    };
    let Some(path) = file else { return Ok(None) };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let m = module_spec::parse_module_file(alg, &text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Some((path.display().to_string(), m)))
}

fn run(cli: &Cli, argv: Vec<String>) -> Result<Report, String> {
    let start = Instant::now();
    let path = cli.algebra.as_ref().ok_or("missing required --algebra <file>")?;
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let alg = algebra_file::load(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let module = load_module(cli, &alg)?;
    if cli.command.needs_module() && module.is_none() {
        return Err("this command needs --module or --module-file".into());
    }
    let caps =
        Caps { cap: cli.cap, dim_cap: cli.dim_cap, lattice_cap: cli.lattice_cap, seed: cli.seed, ..Caps::default() };
    let ctx = Context::new(&alg, caps);
    let jobs = cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let mut out = Findings::default();
    let m = module.as_ref().map(|(_, m)| m);
    let need = || m.expect("checked above");
    let hom = |r: Result<(), homdual::homology::HomologyError>| r.map_err(|e| e.to_string());
    match &cli.command {
        Command::Profile => commands::profile(&ctx, &mut out),
        Command::Dims => commands::dims_cmd(&ctx, need(), &mut out),
        Command::Grade => commands::grade_cmd(&ctx, need(), &mut out),
        Command::Transpose => commands::transpose_cmd(need(), &mut out),
        Command::Eval => hom(commands::eval_cmd(need(), &mut out))?,
        Command::InjRes => commands::inj_res(&ctx, need(), &mut out),
        Command::ProjRes => commands::proj_res(&ctx, need(), &mut out),
        Command::Dominant => commands::dominant(&ctx, &mut out),
        Command::Purity => commands::purity(&ctx, need(), &mut out),
        Command::Dclass { k } => hom(commands::dclass(need(), *k, &mut out))?,
        Command::Verify { target } => commands::verify(&ctx, target, jobs, &mut out)?,
        Command::ExplorePurityQuestion => commands::explore(&ctx, &mut out),
        Command::Findim => commands::findim(&ctx, &mut out),
        Command::Nakayama => commands::nakayama(&ctx, &mut out),
        Command::Ideals => hom(commands::ideals(&ctx, &mut out))?,
    }
    let status = out.status();
    Ok(Report {
        schema: SCHEMA_VERSION,
        tool: "homdual",
        version: env!("CARGO_PKG_VERSION"),
        command: argv,
        algebra: AlgebraInfo::new(&path.display().to_string(), &alg),
        caps,
        module: module.as_ref().map(|(s, m)| ModuleSummary::new(s, m)),
        results: out.results,
        status,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli, argv.into_iter().skip(1).collect()) {
        Ok(r) => {
            let text = if cli.pretty { serde_json::to_string_pretty(&r) } else { serde_json::to_string(&r) };
            // A closed pipe is the reader's choice, not an error.
            let _ = writeln!(std::io::stdout().lock(), "{}", text.expect("reports serialize"));
            ExitCode::from(r.status.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
