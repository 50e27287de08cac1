use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use sfem::bench::{emit_report, run_scenario, Scenario, ScenarioConfig};

#[derive(Parser)]
#[command(name = "sfem", version, about = "Bubble-enriched smoothed FEM benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Runs one benchmark scenario and writes CSV, JSON and text reports.
    Run(Box<RunArgs>),
    /// Runs the structural and inf-sup property suites on small meshes.
    Check {
        #[arg(long, default_value = "out/check")]
        out: PathBuf,
    },
    /// Prints the default configuration of a scenario as a config file.
    Defaults { scenario: Scenario },
}

#[derive(clap::Args)]
struct RunArgs {
    scenario: Scenario,
    /// Key-value config file applied on top of the scenario defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated method names, e.g. `bES-FEM,MINI`.
    #[arg(long)]
    methods: Option<String>,
    /// Comma-separated resolution parameters.
    #[arg(long)]
    meshes: Option<String>,
    #[arg(long)]
    young: Option<String>,
    #[arg(long)]
    nu: Option<String>,
    #[arg(long)]
    load: Option<String>,
    /// Comma-separated bulk moduli for the neo-Hookean scenario.
    #[arg(long)]
    kappa: Option<String>,
    /// `power` or `hat`.
    #[arg(long)]
    bubble: Option<String>,
    /// Random node perturbation as a fraction of the local mesh size.
    #[arg(long)]
    distort: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    steps: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn config(&self) -> Result<ScenarioConfig> {
        let mut cfg = ScenarioConfig::defaults(self.scenario);
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            cfg.apply_kv(&text).with_context(|| format!("in {}", path.display()))?;
            // The file may not switch the scenario named on the command line.
            cfg.scenario = self.scenario;
        }
        let flags = [
            ("methods", &self.methods),
            ("meshes", &self.meshes),
            ("young", &self.young),
            ("poisson", &self.nu),
            ("load", &self.load),
            ("kappa", &self.kappa),
            ("bubble", &self.bubble),
            ("distortion", &self.distort),
            ("seed", &self.seed),
            ("steps", &self.steps),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, v).with_context(|| format!("--{key}"))?;
            }
        }
        if let Some(out) = &self.out {
            cfg.out = out.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cfg: &ScenarioConfig) -> Result<bool> {
    let outcome = run_scenario(cfg)?;
    emit_report(&outcome, &cfg.out)?;
    std::fs::write(cfg.out.join("config.txt"), cfg.to_kv())?;
    print!("{}", outcome.table);
    println!("reports written to {}", cfg.out.display());
    Ok(outcome.passed())
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    let ok = match cli.command {
        Command::Run(args) => run(&args.config()?)?,
        Command::Check { out } => {
            let mut ok = true;
            for scenario in [Scenario::LemmaChecks, Scenario::Infsup] {
                let mut cfg = ScenarioConfig::defaults(scenario);
                cfg.out = out.join(scenario.name());
                println!("== {scenario}");
                ok &= run(&cfg)?;
            }
            ok
        }
        Command::Defaults { scenario } => {
            print!("{}", ScenarioConfig::defaults(scenario).to_kv());
            true
        }
    };
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
