//! Job runner behind the `shintani` binary.

pub mod commands;
pub mod job;

use serde_json::Value;

use commands::{error_body, exit_code, with_header, Commands, Context};
use job::{JobSpec, Setup};

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: Option<u64>,
    pub precision_cap: Option<u32>,
}

/// Run a job given as JSON text; returns the exit status and the output document.
pub fn run_job(text: &str, opts: &Options) -> (i32, Value) {
    let job = match JobSpec::parse(text) {
        Ok(j) => j,
        Err(e) => return (exit_code(&e), error_body(&e)),
    };
    let result = Commands::default().get(&job.command).and_then(|cmd| {
        let setup = Setup::from_job(&job, opts.precision_cap)?;
        let seed = opts.seed.or(job.seed).unwrap_or(0);
        let ctx = Context { job: &job, setup, seed };
        cmd.run(&ctx)
    });
    match result {
        Ok(out) => {
            let code = if out.verified { 0 } else { 1 };
            (code, with_header(&job.command, out.body))
        }
        Err(e) => (exit_code(&e), error_body(&e)),
    }
}
