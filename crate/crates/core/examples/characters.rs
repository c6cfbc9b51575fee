//! Decomposing exterior and symmetric powers of the standard C_n representation.

use hodge_forge::characters::{contains, decompose, ext_character, sym_character};

fn main() -> hodge_forge::Result<()> {
    let n = 3;
    for j in 0..=2 * n as u32 {
        let d = decompose(n, &ext_character(n, j))?;
        println!("Lambda^{j}: {d}  (dim {})", d.dimension());
    }
    for t in 1..=4 {
        let d = decompose(n, &sym_character(n, t))?;
        println!("Sym^{t}: {d}  (dim {})", d.dimension());
    }
    for t in 2..=6 {
        let hits: Vec<u32> = (0..=2 * n as u32).filter(|&j| contains(n, t, j)).collect();
        println!("Sym^{t} inside some Lambda^j: {hits:?}");
    }
    Ok(())
}
