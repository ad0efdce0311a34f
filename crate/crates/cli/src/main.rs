mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fqt_core::config::SessionConfig;
use fqt_core::Error;

#[derive(Parser, Debug)]
#[command(name = "fqt", version, about = "Equivariant special L-values, class modules and Stickelberger checks for Drinfeld modules")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// session config (TOML)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// bundled fixture; overrides the config's cover and Drinfeld module
    #[arg(long, global = true)]
    pub fixture: Option<String>,
    /// work to t^{-N}
    #[arg(long, global = true)]
    pub precision: Option<usize>,
    /// ball index (isometry ball for units/class module, nucleus ball for trace-formula)
    #[arg(long, global = true)]
    pub ball: Option<usize>,
    /// Euler product cutoff; voids the certification of every L-value claim
    #[arg(long, global = true)]
    pub prime_bound_override: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// cap on worker threads
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// write <command>.json and <command>.txt here
    #[arg(long, global = true)]
    pub report_dir: Option<PathBuf>,
    /// print the machine report to stdout instead of the summary
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// truncated equivariant L-value Θ
    Lvalue,
    /// unit lattice exp⁻¹(E(M))
    Units,
    /// class module H(E/M)
    ClassModule,
    /// Θ against the volume class det(X)·c_G(H)
    VerifyCnf,
    /// Euler product against the nuclear class, exactly modulo Z^N
    TraceFormula,
    /// Stickelberger element θ = Nrd(Θ)
    Stickelberger,
    /// θ·R(ψ) ∈ Fit(H) and the Fit/Ann chain
    Mt2,
    /// ideal generated by θ·R(ψ) equals Fit(H)
    Mt3,
    /// bundled instances
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand, Debug)]
enum FixtureAction {
    List,
    /// print a fixture as a session config
    Show { name: String },
}

fn load(g: &Global) -> Result<SessionConfig, Error> {
    let mut c = match &g.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Config(format!("config: cannot read {}: {e}", p.display())))?;
            SessionConfig::from_toml(&text)?
        }
        None => SessionConfig::default(),
    };
    if let Some(f) = &g.fixture {
        c.fixture = Some(f.clone());
        c.cover = None;
        c.drinfeld = None;
    }
    if let Some(n) = g.precision {
        c.precision = n;
    }
    if let Some(b) = g.ball {
        c.ball = Some(b);
        c.trace_ball = Some(b);
    }
    if let Some(s) = g.seed {
        c.seed = s;
    }
    c.validate()?;
    Ok(c)
}

fn exit_code(e: &Error) -> u8 {
    if e.is_config() {
        2
    } else if e.is_budget() {
        3
    } else {
        1
    }
}

fn run(cli: &Cli) -> Result<bool, Error> {
    let g = &cli.global;
    if let Some(t) = g.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global()
            .map_err(|e| Error::Config(format!("threads: {e}")))?;
    }
    if let Command::Fixtures { action } = &cli.command {
        return commands::fixtures(g, matches!(action, FixtureAction::List), match action {
            FixtureAction::Show { name } => Some(name.as_str()),
            FixtureAction::List => None,
        });
    }
    let config = load(g)?;
    if g.prime_bound_override.is_some() {
        eprintln!("WARNING: --prime-bound-override is set; L-value truncations are NOT certified and every claim resting on them is void");
    }
    let session = config.session()?;
    let ctx = commands::Ctx { session, global: g.clone() };
    let rep = match cli.command {
        Command::Lvalue => commands::lvalue(&ctx),
        Command::Units => commands::units(&ctx),
        Command::ClassModule => commands::class_module(&ctx),
        Command::VerifyCnf => commands::verify_cnf(&ctx),
        Command::TraceFormula => commands::trace_formula(&ctx),
        Command::Stickelberger => commands::stickelberger(&ctx),
        Command::Mt2 => commands::mt2(&ctx),
        Command::Mt3 => commands::mt3(&ctx),
        Command::Fixtures { .. } => unreachable!(),
    }?;
    rep.emit(g)?;
    Ok(rep.holds)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
