//! Relative Todd class of the diagonal blow-up and the vanishing of beta_*[D].

use hodge_forge::spaces::Geometry;
use hodge_forge::verifier::{run_check, CheckName};

fn main() -> hodge_forge::Result<()> {
    let g = Geometry::new(2)?;
    let tp = g.relative_tangent()?;
    println!("td(T_p) on D, n = 2: {}", tp.todd()?);
    let d = g.exceptional_divisor();
    println!("[D] on Y: {d}");
    println!("beta_*[D] = {}", g.pushforward_beta(&d)?);

    for n in 2..=4 {
        let report = run_check(CheckName::GrrC1, &[("n".to_string(), n)].into())?;
        println!("n = {n} [{}] {}", report.status, report.lhs);
    }
    Ok(())
}
