//! Randomized verification of the bracket identities: the corrected product
//! rules, antisymmetry and hermiticity of the symmetrized bracket, the
//! ordered bracket's antisymmetry defect, sector reductions, and the
//! jacobiator on unmixed triples.
//!
//!     cargo run --example identity_sweep

use hybrid_bracket::sweep::{run_all_checks, SweepConfig};

fn main() {
    let config = SweepConfig {
        seed: 2024,
        trials: 150,
        ..SweepConfig::default()
    };
    println!(
        "running {} trials per identity at dims {:?}, degree <= {}, seed {}\n",
        config.trials, config.dims, config.max_degree, config.seed
    );
    println!("{:<32} {:>8} {:>14} {:>6}", "identity", "trials", "max residual", "ok");
    let mut all_ok = true;
    for report in run_all_checks(&config) {
        let ok = report.passes(config.tolerance);
        all_ok &= ok;
        println!(
            "{:<32} {:>8} {:>14.3e} {:>6}",
            report.identity_name,
            report.trial_count,
            report.max_abs_residual,
            if ok { "yes" } else { "NO" }
        );
    }
    println!(
        "\nall identities within {:.0e}: {}",
        config.tolerance,
        if all_ok { "yes" } else { "NO" }
    );
}
