//! Seeded randomized sweeps over the bracket identities.
//!
//! Each trial derives its own RNG from the base seed and the trial index, so
//! sweeps are reproducible regardless of how trials are scheduled and a
//! single failing trial can be replayed in isolation.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, HybridObservable, Monomial, DEFAULT_CHECK_TOLERANCE};
use crate::identities::{jacobiator, product_rule_check, ProductRuleVariant, ResidualReport};
use crate::operator::QuantumOperator;

/// Shape of a randomized sweep.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub seed: u64,
    pub trials: usize,
    /// Hilbert-space dimensions to draw from.
    pub dims: Vec<usize>,
    pub max_degree: u32,
    pub hbar: f64,
    pub tolerance: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 100,
            dims: vec![2, 3],
            max_degree: 3,
            hbar: 1.0,
            tolerance: DEFAULT_CHECK_TOLERANCE,
        }
    }
}

impl SweepConfig {
    fn trial_rng(&self, index: usize) -> ChaCha8Rng {
        // fixed per-trial seed: reproducible and order-independent
        ChaCha8Rng::seed_from_u64(self.seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn trial_algebra(&self, rng: &mut ChaCha8Rng) -> Algebra {
        let dim = self.dims[rng.gen_range(0..self.dims.len())];
        Algebra::with_hbar(dim, self.hbar)
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> QuantumOperator {
    let entries = (0..dim * dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    QuantumOperator::from_entries(dim, entries).expect("finite random entries")
}

/// A random mixed observable: each monomial up to `max_degree` appears with
/// probability 0.6 and carries a dense random coefficient.
pub fn random_observable(
    rng: &mut ChaCha8Rng,
    algebra: &Algebra,
    max_degree: u32,
) -> HybridObservable {
    let mut out = algebra.zero();
    for a in 0..=max_degree {
        for b in 0..=(max_degree - a) {
            if rng.gen_bool(0.6) {
                let term = algebra
                    .term(Monomial::new(a, b), random_matrix(rng, algebra.dim()))
                    .expect("matching dim");
                out = out.checked_add(&term).expect("same algebra");
            }
        }
    }
    if out.is_zero() {
        out = algebra
            .constant(random_matrix(rng, algebra.dim()))
            .expect("matching dim");
    }
    out
}

/// A random observable with hermitian coefficients (hence hermitian overall,
/// since the classical monomials are real).
pub fn random_hermitian_observable(
    rng: &mut ChaCha8Rng,
    algebra: &Algebra,
    max_degree: u32,
) -> HybridObservable {
    let raw = random_observable(rng, algebra, max_degree);
    raw.checked_add(&raw.adjoint())
        .expect("same algebra")
        .scale(Complex64::new(0.5, 0.0))
}

/// A random purely classical observable: real multiples of the identity.
pub fn random_classical_observable(
    rng: &mut ChaCha8Rng,
    algebra: &Algebra,
    max_degree: u32,
) -> HybridObservable {
    let mut out = algebra.zero();
    for a in 0..=max_degree {
        for b in 0..=(max_degree - a) {
            if rng.gen_bool(0.6) {
                let c = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
                out = out
                    .checked_add(&algebra.classical_term(Monomial::new(a, b), c))
                    .expect("same algebra");
            }
        }
    }
    if out.is_zero() {
        out = algebra.classical_term(Monomial::X, Complex64::new(1.0, 0.0));
    }
    out
}

/// A random purely quantum observable (degree zero).
pub fn random_quantum_observable(rng: &mut ChaCha8Rng, algebra: &Algebra) -> HybridObservable {
    algebra
        .constant(random_matrix(rng, algebra.dim()))
        .expect("matching dim")
}

fn sweep(
    config: &SweepConfig,
    name: &str,
    mut trial: impl FnMut(&mut ChaCha8Rng, &Algebra) -> (f64, Vec<HybridObservable>),
) -> ResidualReport {
    let mut report = ResidualReport::new(name);
    for index in 0..config.trials {
        let mut rng = config.trial_rng(index);
        let algebra = config.trial_algebra(&mut rng);
        let (residual, witness) = trial(&mut rng, &algebra);
        let refs: Vec<&HybridObservable> = witness.iter().collect();
        report.record(residual, &refs);
    }
    report
}

/// Antisymmetry of the symmetrized bracket: `[[A,B]] + [[B,A]] = 0`.
pub fn check_abt_antisymmetry(config: &SweepConfig) -> ResidualReport {
    sweep(config, "abt_antisymmetry", |rng, algebra| {
        let a = random_observable(rng, algebra, config.max_degree);
        let b = random_observable(rng, algebra, config.max_degree);
        let residual = a
            .abt_bracket(&b)
            .and_then(|ab| ab.checked_add(&b.abt_bracket(&a)?))
            .expect("same algebra")
            .norm();
        (residual, vec![a, b])
    })
}

/// Hermiticity of the symmetrized bracket on hermitian inputs.
pub fn check_abt_hermiticity(config: &SweepConfig) -> ResidualReport {
    sweep(config, "abt_hermiticity", |rng, algebra| {
        let a = random_hermitian_observable(rng, algebra, config.max_degree);
        let b = random_hermitian_observable(rng, algebra, config.max_degree);
        let bracket = a.abt_bracket(&b).expect("same algebra");
        let residual = bracket.checked_sub(&bracket.adjoint()).expect("same algebra").norm();
        (residual, vec![a, b])
    })
}

/// Self-bracket of any observable vanishes: `[[H,H]] = 0`.
pub fn check_self_bracket(config: &SweepConfig) -> ResidualReport {
    sweep(config, "self_bracket_zero", |rng, algebra| {
        let h = random_observable(rng, algebra, config.max_degree);
        let residual = h.abt_bracket(&h).expect("same algebra").norm();
        (residual, vec![h])
    })
}

/// The ordered bracket's antisymmetry defect on factorized inputs
/// `A = U f`, `B = V g` equals `[U, V] {f, g}` exactly.
pub fn check_anderson_antisymmetry_defect(config: &SweepConfig) -> ResidualReport {
    sweep(config, "anderson_antisymmetry_defect", |rng, algebra| {
        let u = random_quantum_observable(rng, algebra);
        let v = random_quantum_observable(rng, algebra);
        let f = random_classical_observable(rng, algebra, config.max_degree);
        let g = random_classical_observable(rng, algebra, config.max_degree);
        let a = u.checked_mul(&f).expect("same algebra");
        let b = v.checked_mul(&g).expect("same algebra");
        let defect = a
            .anderson_bracket(&b)
            .and_then(|ab| ab.checked_add(&b.anderson_bracket(&a)?))
            .expect("same algebra");
        let expected = u
            .commutator(&v)
            .and_then(|comm| comm.checked_mul(&f.poisson(&g)?))
            .expect("same algebra");
        let residual = defect.checked_sub(&expected).expect("same algebra").norm();
        (residual, vec![a, b])
    })
}

/// Corrected product rules, randomized. The symmetric-ordering variant draws
/// its product from a classical factor and a quantum factor, which is the
/// ordering that makes it exact.
pub fn check_product_rule(config: &SweepConfig, variant: ProductRuleVariant) -> ResidualReport {
    sweep(config, variant.label(), |rng, algebra| {
        let a = random_observable(rng, algebra, config.max_degree);
        let (b, c) = match variant {
            ProductRuleVariant::AbtSymmetric => (
                random_classical_observable(rng, algebra, config.max_degree),
                random_quantum_observable(rng, algebra),
            ),
            _ => (
                random_observable(rng, algebra, config.max_degree),
                random_observable(rng, algebra, config.max_degree),
            ),
        };
        let report = product_rule_check(&a, &b, &c, variant).expect("same algebra");
        (report.max_abs_residual, vec![a, b, c])
    })
}

/// Jacobiator on all-classical triples (reduces to the Poisson bracket).
pub fn check_jacobiator_classical(config: &SweepConfig) -> ResidualReport {
    sweep(config, "jacobiator_classical", |rng, algebra| {
        let a = random_classical_observable(rng, algebra, config.max_degree);
        let b = random_classical_observable(rng, algebra, config.max_degree);
        let c = random_classical_observable(rng, algebra, config.max_degree);
        let residual = jacobiator(&a, &b, &c).expect("same algebra").norm();
        (residual, vec![a, b, c])
    })
}

/// Jacobiator on all-quantum triples (reduces to the scaled commutator).
pub fn check_jacobiator_quantum(config: &SweepConfig) -> ResidualReport {
    sweep(config, "jacobiator_quantum", |rng, algebra| {
        let a = random_quantum_observable(rng, algebra);
        let b = random_quantum_observable(rng, algebra);
        let c = random_quantum_observable(rng, algebra);
        let residual = jacobiator(&a, &b, &c).expect("same algebra").norm();
        (residual, vec![a, b, c])
    })
}

/// On classical inputs all three brackets coincide with the Poisson bracket.
pub fn check_classical_reduction(config: &SweepConfig) -> ResidualReport {
    sweep(config, "classical_reduction", |rng, algebra| {
        let a = random_classical_observable(rng, algebra, config.max_degree);
        let b = random_classical_observable(rng, algebra, config.max_degree);
        let poisson = a.poisson(&b).expect("same algebra");
        let abt = a.abt_bracket(&b).expect("same algebra");
        let ordered = a.anderson_bracket(&b).expect("same algebra");
        let residual = abt
            .checked_sub(&poisson)
            .expect("same algebra")
            .norm()
            .max(ordered.checked_sub(&poisson).expect("same algebra").norm());
        (residual, vec![a, b])
    })
}

/// On degree-0 inputs the symmetrized bracket is the commutator over iħ.
pub fn check_quantum_reduction(config: &SweepConfig) -> ResidualReport {
    sweep(config, "quantum_reduction", |rng, algebra| {
        let a = random_quantum_observable(rng, algebra);
        let b = random_quantum_observable(rng, algebra);
        let expected = a
            .commutator(&b)
            .expect("same algebra")
            .scale(Complex64::new(0.0, -1.0 / algebra.hbar()));
        let residual = a
            .abt_bracket(&b)
            .expect("same algebra")
            .checked_sub(&expected)
            .expect("same algebra")
            .norm();
        (residual, vec![a, b])
    })
}

/// Deterministic canonical-relation check at each configured dimension:
/// `[[x,k]] = 1`, self-brackets vanish, cross brackets with the quantum
/// sector vanish, and the truncated quadrature pair matches the identity
/// everywhere except the documented top-Fock-state defect.
pub fn check_canonical_relations(config: &SweepConfig) -> ResidualReport {
    let mut report = ResidualReport::new("canonical_relations");
    for (index, &dim) in config.dims.iter().enumerate() {
        let algebra = Algebra::with_hbar(dim, config.hbar);
        let mut rng = config.trial_rng(index);
        let (x, k, one) = (algebra.x(), algebra.k(), algebra.one());
        let q = algebra.boson_q().expect("dim >= 2");
        let p = algebra.boson_p().expect("dim >= 2");
        let u = random_quantum_observable(&mut rng, &algebra);

        // the truncated pair bracket: identity except -(dim-1) on the top state
        let mut defect_matrix = QuantumOperator::identity(dim);
        defect_matrix[(dim - 1, dim - 1)] = Complex64::new(-(dim as f64 - 1.0), 0.0);
        let expected_qp = algebra.constant(defect_matrix).expect("matching dim");

        let residuals = [
            x.abt_bracket(&k)
                .and_then(|r| r.checked_sub(&one))
                .expect("same algebra")
                .norm(),
            x.abt_bracket(&x).expect("same algebra").norm(),
            k.abt_bracket(&k).expect("same algebra").norm(),
            q.abt_bracket(&p)
                .and_then(|r| r.checked_sub(&expected_qp))
                .expect("same algebra")
                .norm(),
            x.abt_bracket(&q).expect("same algebra").norm(),
            x.abt_bracket(&p).expect("same algebra").norm(),
            k.abt_bracket(&q).expect("same algebra").norm(),
            k.abt_bracket(&p).expect("same algebra").norm(),
            x.abt_bracket(&u).expect("same algebra").norm(),
            k.abt_bracket(&u).expect("same algebra").norm(),
        ];
        let worst = residuals.iter().fold(0.0f64, |acc, &r| acc.max(r));
        report.record(worst, &[&x, &k]);
    }
    report
}

/// Runs the full battery in a fixed order.
pub fn run_all_checks(config: &SweepConfig) -> Vec<ResidualReport> {
    vec![
        check_product_rule(config, ProductRuleVariant::AndersonLeft),
        check_product_rule(config, ProductRuleVariant::AndersonRight),
        check_product_rule(config, ProductRuleVariant::Abt),
        check_product_rule(config, ProductRuleVariant::AbtSymmetric),
        check_abt_antisymmetry(config),
        check_abt_hermiticity(config),
        check_self_bracket(config),
        check_anderson_antisymmetry_defect(config),
        check_jacobiator_classical(config),
        check_jacobiator_quantum(config),
        check_classical_reduction(config),
        check_quantum_reduction(config),
        check_canonical_relations(config),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_config() -> SweepConfig {
        SweepConfig {
            trials: 40,
            seed: 1234,
            ..SweepConfig::default()
        }
    }

    #[test]
    fn all_identity_sweeps_stay_within_tolerance() {
        let config = quick_config();
        for report in run_all_checks(&config) {
            assert!(
                report.passes(config.tolerance),
                "{} residual {} over tolerance",
                report.identity_name,
                report.max_abs_residual
            );
            assert!(report.witness.is_some());
            assert!(report.trial_count > 0);
        }
    }

    #[test]
    fn sweeps_are_reproducible_for_a_fixed_seed() {
        let config = quick_config();
        let first = check_product_rule(&config, ProductRuleVariant::Abt);
        let second = check_product_rule(&config, ProductRuleVariant::Abt);
        assert_eq!(first.max_abs_residual, second.max_abs_residual);
        assert_eq!(first.witness, second.witness);

        let other_seed = SweepConfig {
            seed: 4321,
            ..quick_config()
        };
        let third = check_product_rule(&other_seed, ProductRuleVariant::Abt);
        // different draws, so different worst-case inputs
        assert_ne!(second.witness, third.witness);
    }

    #[test]
    fn random_generators_produce_what_they_claim() {
        let config = quick_config();
        let mut rng = config.trial_rng(0);
        let algebra = Algebra::new(2);
        let classical = random_classical_observable(&mut rng, &algebra, 3);
        assert!(classical.is_classical());
        let quantum = random_quantum_observable(&mut rng, &algebra);
        assert!(quantum.is_quantum());
        let hermitian = random_hermitian_observable(&mut rng, &algebra, 3);
        assert!(hermitian.is_hermitian(1e-14));
    }
}
