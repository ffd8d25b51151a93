use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use shintani_cli::{run_job, Options};

/// Signed fundamental domains for totally positive units, and zeta values
/// computed from them.
#[derive(Parser, Debug)]
#[command(name = "shintani", version)]
struct Args {
    /// Job file (JSON); `-` reads standard input.
    #[arg(long)]
    job: PathBuf,
    /// Seed for all randomness (overrides the job's `seed`).
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Largest working precision in bits for certified signs.
    #[arg(long = "precision-cap")]
    precision_cap: Option<u32>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(t) = args.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("shintani: cannot configure thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let text = if args.job.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&args.job)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            let body = serde_json::json!({"schema": shintani_cli::job::SCHEMA_VERSION, "error": "Io", "message": e.to_string()});
            emit(&body);
            return ExitCode::from(2);
        }
    };
    let opts = Options {
        seed: args.seed,
        precision_cap: args.precision_cap,
    };
    let (code, out) = run_job(&text, &opts);
    emit(&out);
    ExitCode::from(code as u8)
}

/// Pretty JSON on stdout; a closed pipe is not an error worth a panic.
fn emit(v: &serde_json::Value) {
    let text = serde_json::to_string_pretty(v).expect("serializable");
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}
