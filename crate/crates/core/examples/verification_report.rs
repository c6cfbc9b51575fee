//! Full verification suite with a text report and the JSON form of one entry.

use hodge_forge::report::{emit_report, exit_code, Format};
use hodge_forge::verifier::run_all;

fn main() -> hodge_forge::Result<()> {
    let reports = run_all(&[2, 3])?;
    print!("{}", emit_report(&reports, Format::Text));
    println!("{}", emit_report(&reports[..1], Format::Json));
    println!("exit code: {}", exit_code(&reports));
    Ok(())
}
