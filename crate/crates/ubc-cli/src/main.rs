mod args;
mod commands;
mod error;
mod report;

use args::{Cli, Command};
use clap::Parser;
use error::{CliError, CliResult};
use report::RunReport;
use serde_json::json;
use std::time::Instant;

fn run(cli: &Cli, argv: Vec<String>) -> CliResult<()> {
    if let Some(t) = cli.global.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    let seed = cli.global.seed;
    let start = Instant::now();
    let out = match &cli.command {
        Command::SolveExact(a) => commands::solve_exact_cmd(a)?,
        Command::Approx(a) => commands::approx_cmd(a)?,
        Command::Oracle(a) => commands::oracle_cmd(a, seed)?,
        Command::PairDecision(a) => commands::pair_decision_cmd(a, seed)?,
        Command::GenGadget(a) => commands::gen_gadget_cmd(a)?,
        Command::GenFlower(a) => commands::gen_flower_cmd(a)?,
        Command::Render(a) => commands::render_cmd(a)?,
    };
    let mut params = out.params;
    params.insert("seed".into(), json!(seed));
    params.insert("threads".into(), json!(cli.global.threads.unwrap_or_else(rayon::current_num_threads)));
    let report = RunReport {
        command: argv,
        instance: out.instance,
        result: out.result,
        wall_time_s: start.elapsed().as_secs_f64(),
        params,
    };
    let text = ubc_core::io::to_json_pretty(&report)?;
    match &out.report_out {
        Some(p) => commands::write_text(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("UB_LOG", "warn")).init();
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    if let Err(e) = run(&cli, argv) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
