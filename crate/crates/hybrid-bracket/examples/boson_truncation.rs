//! The truncated boson ladder pair and its commutator defect. No
//! finite-dimensional pair can satisfy [q, p] = i hbar exactly (the trace of
//! a commutator vanishes), so the truncated quadratures give the identity on
//! every Fock state except the top one.
//!
//!     cargo run --example boson_truncation

use hybrid_bracket::{Algebra, Monomial};

fn main() -> hybrid_bracket::Result<()> {
    for dim in [2usize, 3, 4] {
        let algebra = Algebra::new(dim);
        let q = algebra.boson_q()?;
        let p = algebra.boson_p()?;
        let bracket = q.abt_bracket(&p)?;
        let matrix = bracket
            .coefficient(Monomial::ONE)
            .expect("constant term");
        let diagonal: Vec<String> = (0..dim)
            .map(|i| format!("{:+.1}", matrix[(i, i)].re))
            .collect();
        println!(
            "dim {dim}: [[q, p]] = diag({})  - identity except the top Fock state",
            diagonal.join(", ")
        );
    }

    println!();
    let algebra = Algebra::new(4);
    let q = algebra.boson_q()?;
    let k = algebra.k();
    let x = algebra.x();
    println!("cross brackets with the classical pair vanish identically:");
    println!("  ||[[x, q]]|| = {:.1e}", x.abt_bracket(&q)?.norm());
    println!("  ||[[k, q]]|| = {:.1e}", k.abt_bracket(&q)?.norm());
    Ok(())
}
