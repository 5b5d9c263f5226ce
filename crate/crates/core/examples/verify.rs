//! Runs every verification suite on a catalog entry or `.lr` file and prints
//! the report, as `rinehart check` does.
//!
//! ```text
//! cargo run --example verify -- heisenberg-dim3-curved
//! ```

use rinehart::cli::{self, Format, Suite};
use rinehart::CheckConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let source = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "heisenberg-dim3-curved".into());
    let input = cli::load(&source)?;
    let config = CheckConfig::default().with_trials(8);
    let report = cli::run_suites(&input, &source, &Suite::ALL, &config);
    print!("{}", cli::report(&report, Format::Text));
    std::process::exit(report.exit_code());
}
