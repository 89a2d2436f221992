//! Purely quantum sector sanity check: Taylor evolution by iterated brackets
//! against the closed-form Heisenberg rotation of sigma_x under
//! H = (hbar omega / 2) sigma_z, with the reported remainder bounds.
//!
//!     cargo run --example taylor_rotation

use hybrid_bracket::operator::pauli;
use hybrid_bracket::{taylor_evolve, Algebra};
use num_complex::Complex64;

fn main() -> hybrid_bracket::Result<()> {
    let algebra = Algebra::new(2);
    let omega = 1.0;
    let order = 8;
    let hamiltonian = algebra.constant(
        pauli::sigma_z().scale(Complex64::new(algebra.hbar() * omega / 2.0, 0.0)),
    )?;
    let solution = taylor_evolve(&algebra.pauli_x()?, &hamiltonian, order)?;

    println!("sigma_x(t) = sigma_x cos(omega t) - sigma_y sin(omega t), omega = {omega}");
    println!("Taylor order {order}; error vs closed form and the crude remainder bound:\n");
    println!("{:>8} {:>14} {:>16}", "omega*t", "error", "remainder bound");
    for step in 1..=10 {
        let t = 0.05 * step as f64;
        let point = solution.at(t);
        let closed = algebra.constant(
            pauli::sigma_x()
                .scale(Complex64::new((omega * t).cos(), 0.0))
                .sub(&pauli::sigma_y().scale(Complex64::new((omega * t).sin(), 0.0))),
        )?;
        let error = point.value.checked_sub(&closed)?.norm();
        println!("{:>8.2} {error:>14.3e} {:>16.3e}", omega * t, point.remainder_bound);
    }

    println!("\ncoefficients cycle through the Pauli algebra:");
    for (n, coefficient) in solution.coefficients().iter().enumerate().take(5) {
        let m = coefficient
            .coefficient(hybrid_bracket::Monomial::ONE)
            .expect("constant term");
        println!(
            "  order {n}: [[.,H]]^{n} sigma_x = ({:+.2}{:+.2}i) sigma_x-like row: {:+.2}{:+.2}i",
            m[(0, 1)].re,
            m[(0, 1)].im,
            m[(1, 0)].re,
            m[(1, 0)].im
        );
    }
    Ok(())
}
