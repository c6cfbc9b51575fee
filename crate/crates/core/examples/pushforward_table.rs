//! Pushforwards of powers of the tautological class along D = P(TX) -> X.

use hodge_forge::spaces::Geometry;

fn main() -> hodge_forge::Result<()> {
    for n in 2..=4 {
        let g = Geometry::new(n)?;
        let h = g.d_class("h")?;
        println!("n = {n}");
        for i in 0..=2 * n + 6 {
            println!("  p_*(h^{i:<2}) = {}", g.pushforward_p(&h.pow(i))?);
        }
    }
    Ok(())
}
