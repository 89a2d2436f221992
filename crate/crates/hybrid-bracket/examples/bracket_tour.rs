//! Tour of the mixed-observable algebra: building observables, taking the
//! two hybrid brackets, and watching where the ordered one loses
//! antisymmetry and where the symmetrized one loses the Jacobi identity.
//!
//!     cargo run --example bracket_tour

use hybrid_bracket::{jacobiator, Algebra, Monomial};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> hybrid_bracket::Result<()> {
    let algebra = Algebra::new(2);
    let x = algebra.x();
    let k = algebra.k();
    let sx = algebra.pauli_x()?;
    let sy = algebra.pauli_y()?;

    println!("== canonical relations ==");
    println!("[[x, k]]      = {}", pretty(&x.abt_bracket(&k)?));
    println!("[[x, x]]      = {}", pretty(&x.abt_bracket(&x)?));
    println!(
        "[[x, sigma_x]] = {}  (classical and quantum sectors decouple at t=0)",
        pretty(&x.abt_bracket(&sx)?)
    );

    // mixed observables: sigma_x * x and sigma_y * k
    let a = sx.checked_mul(&x)?;
    let b = sy.checked_mul(&k)?;
    println!("\n== the two bracket candidates on A = sigma_x x, B = sigma_y k ==");
    let ordered = a.anderson_bracket(&b)?;
    let symmetrized = a.abt_bracket(&b)?;
    println!("ordered      [[A,B]] = {}", pretty(&ordered));
    println!("symmetrized  [[A,B]] = {}", pretty(&symmetrized));

    let defect = ordered.checked_add(&b.anderson_bracket(&a)?)?;
    println!(
        "ordered bracket antisymmetry defect [[A,B]] + [[B,A]] = {}",
        pretty(&defect)
    );
    let anti = symmetrized.checked_add(&b.abt_bracket(&a)?)?;
    println!(
        "symmetrized bracket antisymmetry defect               = {} (norm {:.1e})",
        pretty(&anti),
        anti.norm()
    );

    println!("\n== the self-bracket of any Hamiltonian cancels identically ==");
    let h = algebra
        .pauli_z()?
        .checked_mul(&k)?
        .checked_add(&sx.checked_mul(&algebra.classical_term(Monomial::new(2, 0), c(0.3, 0.0)))?)?;
    println!("[[H, H]] = {} (exactly zero)", pretty(&h.abt_bracket(&h)?));

    println!("\n== Jacobi fails on mixed observables ==");
    let ja = sx.checked_mul(&x)?;
    let jb = sy.checked_mul(&x)?;
    let jc = sy.checked_mul(&algebra.classical_term(Monomial::new(0, 2), c(1.0, 0.0)))?;
    let j = jacobiator(&ja, &jb, &jc)?;
    println!(
        "jacobiator(sigma_x x, sigma_y x, sigma_y k^2) = {} (norm {:.3})",
        pretty(&j),
        j.norm()
    );
    println!("so the symmetrized bracket is not a Lie bracket on the mixed algebra.");
    Ok(())
}

/// Compact one-line rendering of an observable's terms.
fn pretty(obs: &hybrid_bracket::HybridObservable) -> String {
    if obs.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (monomial, matrix) in obs.terms() {
        let mut entries = Vec::new();
        for i in 0..obs.dim() {
            for j in 0..obs.dim() {
                let z = matrix[(i, j)];
                if z.norm() > 1e-12 {
                    entries.push(format!("[{i}{j}]={:.3}{:+.3}i", z.re, z.im));
                }
            }
        }
        let name = match (monomial.a, monomial.b) {
            (0, 0) => String::new(),
            (a, 0) => format!(" x^{a}"),
            (0, b) => format!(" k^{b}"),
            (a, b) => format!(" x^{a} k^{b}"),
        };
        parts.push(format!("({}){name}", entries.join(", ")));
    }
    parts.join(" + ")
}
