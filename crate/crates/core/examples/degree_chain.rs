//! Integrals of (f1^*w + f2^*w)^{4n-1} (f1^*a + f2^*b) over X x X.

use hodge_forge::dsl::evaluate_str;
use hodge_forge::ring::Space;

fn main() -> hodge_forge::Result<()> {
    for n in 2..=4u32 {
        let expr = format!("integrate((f1_w + f2_w)^{}*(f1_a + f2_b))", 4 * n - 1);
        println!("n = {n}: {}", evaluate_str(&expr, Space::XX, n)?);
    }
    Ok(())
}
