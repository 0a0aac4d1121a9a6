use std::io::Write;
use std::process::ExitCode;

use orbit_lmap_cli::{parse_args, run, EXIT_OK, EXIT_USAGE};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let outcome = match parse_args(std::env::args_os()) {
        Ok(cli) => run(&cli),
        Err(o) => o,
    };
    if outcome.code == EXIT_USAGE || (outcome.code != EXIT_OK && outcome.output.starts_with("error:")) {
        eprint!("{}", outcome.output);
    } else {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(outcome.output.as_bytes());
    }
    ExitCode::from(outcome.code as u8)
}
