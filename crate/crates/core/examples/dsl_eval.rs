//! Parsing, printing and evaluating expressions.

use hodge_forge::dsl::{evaluate_str, parse};
use hodge_forge::ring::Space;

fn main() -> hodge_forge::Result<()> {
    let cases = [
        ("push_p(h^5)", Space::D),
        ("integrate(p_w^3*h^3*(a*h+lam))", Space::D),
        ("pull_delta(pull_f1(a) + pull_f2(b))", Space::X),
        ("pull_iota(D)", Space::Y),
        ("push_beta(D)", Space::Y),
        ("grade(todd(Tp), 1)", Space::D),
        ("chern(TX - dual(ell) - ell)", Space::D),
    ];
    for (text, space) in cases {
        let printed = parse(text)?.to_string();
        println!("{space}: {printed}  =>  {}", evaluate_str(text, space, 2)?);
    }
    match evaluate_str("push_beta(push_iota(h^3))", Space::Y, 2) {
        Ok(v) => println!("unexpected: {v}"),
        Err(e) => println!("error: {e}"),
    }
    Ok(())
}
