//! Twisted degree of the quotient bundle as a polynomial in N.

use hodge_forge::verifier::{Check, CheckName};

fn main() -> hodge_forge::Result<()> {
    for n in 2..=4 {
        let report = Check::with_defaults(CheckName::SlopePolynomial, n)?.run();
        println!("n = {n} [{}] {} ms", report.status, report.elapsed_ms);
        for part in report.lhs.split("; ") {
            println!("  {part}");
        }
    }
    Ok(())
}
