//! Chern classes of exterior and symmetric powers of TX.

use hodge_forge::spaces::Geometry;

fn main() -> hodge_forge::Result<()> {
    let g = Geometry::new(2)?;
    let tx = g.tangent_bundle()?;
    println!("c(TX)      = {}", tx.chern_total()?);
    println!("ch(TX)     = {}", tx.ch());
    println!("td(TX)     = {}", tx.todd()?);
    for j in 1..=3 {
        let w = tx.ext_power(j)?;
        println!("c(L^{j} TX) = {}  rank {}", w.chern_total()?, w.rank());
    }
    let s2 = tx.sym_power(2)?;
    println!("c(S^2 TX)  = {}  rank {}", s2.chern_total()?, s2.rank());
    let ell = g.tautological_line()?;
    println!("c(ell)     = {}", ell.chern_total()?);
    Ok(())
}
