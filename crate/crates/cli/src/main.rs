use std::process::ExitCode;

use clap::Parser;

use kar2_cli::{emit_report, run_suite, Config, Format};

#[derive(Parser)]
#[command(name = "kar2soergel", version, about = "Exact verification suites for Soergel 2-idempotents and deformed Grassmannians")]
struct Cli {
    /// frobenius, parabolic-idem, s4-examples, morita, rainbow, grass, colourings or all.
    suite: String,
    #[command(flatten)]
    config: Config,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = std::env::var("KAR2_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match run_suite(&cli.suite, &cli.config) {
        Ok(report) => {
            print!("{}", emit_report(&report, cli.format));
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
