//! Residual checkers for the structural identities of the hybrid brackets.
//!
//! Neither hybrid bracket is unconditionally a derivation: differentiating a
//! mixed observable can turn a c-number factor into a q-number, so product
//! rules only hold with explicit commutator correction terms (or, for the
//! symmetrized bracket, on symmetrically ordered products). The checkers here
//! evaluate both sides of each corrected rule and report the residual, and
//! the jacobiator measures how far the symmetrized bracket is from a Lie
//! bracket on mixed observables.

use serde::{Deserialize, Serialize};

use crate::algebra::HybridObservable;
use crate::error::Result;
use num_complex::Complex64;

/// Which product rule to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductRuleVariant {
    /// Ordered bracket acting from the left on a product.
    AndersonLeft,
    /// Ordered bracket acting from the right on a product.
    AndersonRight,
    /// Symmetrized bracket on a product, with its commutator corrections.
    Abt,
    /// Symmetrized bracket on the symmetrically ordered product
    /// `(BC + CB)/2`; an exact derivation when `B` is classical and `C`
    /// quantum.
    AbtSymmetric,
}

impl ProductRuleVariant {
    pub fn label(&self) -> &'static str {
        match self {
            ProductRuleVariant::AndersonLeft => "product_rule_anderson_left",
            ProductRuleVariant::AndersonRight => "product_rule_anderson_right",
            ProductRuleVariant::Abt => "product_rule_abt",
            ProductRuleVariant::AbtSymmetric => "product_rule_abt_symmetric",
        }
    }
}

/// Outcome of an identity check: the largest residual seen, how many trials
/// ran, and the observables that realized the maximum.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualReport {
    pub identity_name: String,
    pub max_abs_residual: f64,
    pub trial_count: usize,
    pub witness: Option<Vec<HybridObservable>>,
}

impl ResidualReport {
    pub fn new(identity_name: impl Into<String>) -> Self {
        Self {
            identity_name: identity_name.into(),
            max_abs_residual: 0.0,
            trial_count: 0,
            witness: None,
        }
    }

    /// Folds one trial into the report, keeping the worst witness.
    pub fn record(&mut self, residual: f64, witness: &[&HybridObservable]) {
        self.trial_count += 1;
        if residual >= self.max_abs_residual || self.witness.is_none() {
            self.max_abs_residual = residual;
            self.witness = Some(witness.iter().map(|o| (*o).clone()).collect());
        }
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_abs_residual <= tolerance
    }
}

/// Left-hand side minus right-hand side of the corrected product rule for a
/// single triple, as an observable.
fn product_rule_residual_observable(
    a: &HybridObservable,
    b: &HybridObservable,
    c: &HybridObservable,
    variant: ProductRuleVariant,
) -> Result<HybridObservable> {
    let half = Complex64::new(0.5, 0.0);
    match variant {
        ProductRuleVariant::AndersonLeft => {
            // [[A, BC]] = [[A,B]] C + B [[A,C]] + [A_x, B] C_k - [A_k, B] C_x
            let lhs = a.anderson_bracket(&b.checked_mul(c)?)?;
            let rhs = a
                .anderson_bracket(b)?
                .checked_mul(c)?
                .checked_add(&b.checked_mul(&a.anderson_bracket(c)?)?)?
                .checked_add(&a.d_dx().commutator(b)?.checked_mul(&c.d_dk())?)?
                .checked_sub(&a.d_dk().commutator(b)?.checked_mul(&c.d_dx())?)?;
            lhs.checked_sub(&rhs)
        }
        ProductRuleVariant::AndersonRight => {
            // [[BC, A]] = [[B,A]] C + B [[C,A]] + B_x [C, A_k] - B_k [C, A_x]
            let lhs = b.checked_mul(c)?.anderson_bracket(a)?;
            let rhs = b
                .anderson_bracket(a)?
                .checked_mul(c)?
                .checked_add(&b.checked_mul(&c.anderson_bracket(a)?)?)?
                .checked_add(&b.d_dx().checked_mul(&c.commutator(&a.d_dk())?)?)?
                .checked_sub(&b.d_dk().checked_mul(&c.commutator(&a.d_dx())?)?)?;
            lhs.checked_sub(&rhs)
        }
        ProductRuleVariant::Abt => {
            // [[A, BC]] = [[A,B]] C + B [[A,C]]
            //   + ([A_x,B] C_k - [A_k,B] C_x + B_k [C,A_x] - B_x [C,A_k]) / 2
            let lhs = a.abt_bracket(&b.checked_mul(c)?)?;
            let correction = a
                .d_dx()
                .commutator(b)?
                .checked_mul(&c.d_dk())?
                .checked_sub(&a.d_dk().commutator(b)?.checked_mul(&c.d_dx())?)?
                .checked_add(&b.d_dk().checked_mul(&c.commutator(&a.d_dx())?)?)?
                .checked_sub(&b.d_dx().checked_mul(&c.commutator(&a.d_dk())?)?)?;
            let rhs = a
                .abt_bracket(b)?
                .checked_mul(c)?
                .checked_add(&b.checked_mul(&a.abt_bracket(c)?)?)?
                .checked_add(&correction.scale(half))?;
            lhs.checked_sub(&rhs)
        }
        ProductRuleVariant::AbtSymmetric => {
            // [[A, (BC + CB)/2]]
            //   = ([[A,B]] C + B [[A,C]] + [[A,C]] B + C [[A,B]]) / 2
            let sym = b
                .checked_mul(c)?
                .checked_add(&c.checked_mul(b)?)?
                .scale(half);
            let lhs = a.abt_bracket(&sym)?;
            let ab = a.abt_bracket(b)?;
            let ac = a.abt_bracket(c)?;
            let rhs = ab
                .checked_mul(c)?
                .checked_add(&b.checked_mul(&ac)?)?
                .checked_add(&ac.checked_mul(b)?)?
                .checked_add(&c.checked_mul(&ab)?)?
                .scale(half);
            lhs.checked_sub(&rhs)
        }
    }
}

/// Checks one corrected product rule on a concrete triple. The residual is
/// the sum over monomials of coefficient Frobenius norms of LHS minus RHS.
pub fn product_rule_check(
    a: &HybridObservable,
    b: &HybridObservable,
    c: &HybridObservable,
    variant: ProductRuleVariant,
) -> Result<ResidualReport> {
    let residual = product_rule_residual_observable(a, b, c, variant)?.norm();
    let mut report = ResidualReport::new(variant.label());
    report.record(residual, &[a, b, c]);
    Ok(report)
}

/// The jacobiator `[[[[A,B]],C]] - [[[[A,C]],B]] - [[A,[[B,C]]]]` of the
/// symmetrized bracket, computed directly from iterated brackets. It vanishes
/// on all-classical and all-quantum triples but not in general on mixed ones.
pub fn jacobiator(
    a: &HybridObservable,
    b: &HybridObservable,
    c: &HybridObservable,
) -> Result<HybridObservable> {
    a.abt_bracket(b)?
        .abt_bracket(c)?
        .checked_sub(&a.abt_bracket(c)?.abt_bracket(b)?)?
        .checked_sub(&a.abt_bracket(&b.abt_bracket(c)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Monomial};
    use crate::operator::pauli;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classical_first_argument_needs_no_correction() {
        // With A purely classical every correction commutator vanishes, so
        // the plain derivation rule holds.
        let alg = Algebra::new(2);
        let a = alg
            .classical_term(Monomial::new(2, 1), c64(0.5, 0.0))
            .checked_add(&alg.classical_term(Monomial::K, c64(-1.5, 0.0)))
            .unwrap();
        let b = alg.pauli_x().unwrap().checked_mul(&alg.x()).unwrap();
        let c = alg.pauli_y().unwrap().checked_mul(&alg.k()).unwrap();

        let plain_rhs = a
            .anderson_bracket(&b)
            .unwrap()
            .checked_mul(&c)
            .unwrap()
            .checked_add(&b.checked_mul(&a.anderson_bracket(&c).unwrap()).unwrap())
            .unwrap();
        let lhs = a.anderson_bracket(&b.checked_mul(&c).unwrap()).unwrap();
        assert!(lhs.approx_eq(&plain_rhs, 1e-13));

        for variant in [
            ProductRuleVariant::AndersonLeft,
            ProductRuleVariant::AndersonRight,
            ProductRuleVariant::Abt,
        ] {
            let report = product_rule_check(&a, &b, &c, variant).unwrap();
            assert!(report.passes(1e-12), "{}: {}", report.identity_name, report.max_abs_residual);
        }
    }

    #[test]
    fn ordered_left_rule_with_concrete_correction() {
        // A = sigma_z k, B = sigma_x, C = x: the correction reduces to
        // -[sigma_z, sigma_x] = -2i sigma_y and both sides agree exactly.
        let alg = Algebra::new(2);
        let a = alg.pauli_z().unwrap().checked_mul(&alg.k()).unwrap();
        let b = alg.pauli_x().unwrap();
        let c = alg.x();

        let correction = a
            .d_dx()
            .commutator(&b)
            .unwrap()
            .checked_mul(&c.d_dk())
            .unwrap()
            .checked_sub(&a.d_dk().commutator(&b).unwrap().checked_mul(&c.d_dx()).unwrap())
            .unwrap();
        let expected_correction = alg
            .constant(pauli::sigma_y().scale(c64(0.0, -2.0)))
            .unwrap();
        assert!(correction.approx_eq(&expected_correction, 1e-14));

        let report =
            product_rule_check(&a, &b, &c, ProductRuleVariant::AndersonLeft).unwrap();
        assert!(report.passes(1e-12));
        assert_eq!(report.trial_count, 1);
        assert!(report.witness.is_some());

        // Both sides equal (2/hbar) sigma_y x k - i sigma_y.
        let lhs = a.anderson_bracket(&b.checked_mul(&c).unwrap()).unwrap();
        let expected = alg
            .term(Monomial::new(1, 1), pauli::sigma_y().scale(c64(2.0, 0.0)))
            .unwrap()
            .checked_add(&alg.constant(pauli::sigma_y().scale(c64(0.0, -1.0))).unwrap())
            .unwrap();
        assert!(lhs.approx_eq(&expected, 1e-14));
    }

    #[test]
    fn symmetric_ordering_rule_on_classical_quantum_split() {
        let alg = Algebra::new(2);
        let a = alg
            .pauli_y()
            .unwrap()
            .checked_mul(&alg.classical_term(Monomial::new(1, 1), c64(1.0, 0.0)))
            .unwrap()
            .checked_add(&alg.pauli_x().unwrap().checked_mul(&alg.x()).unwrap())
            .unwrap();
        let f = alg
            .classical_term(Monomial::new(0, 2), c64(0.8, 0.0))
            .checked_add(&alg.classical_term(Monomial::X, c64(-0.3, 0.0)))
            .unwrap();
        let u = alg.pauli_z().unwrap();
        let report =
            product_rule_check(&a, &f, &u, ProductRuleVariant::AbtSymmetric).unwrap();
        assert!(report.passes(1e-12), "residual {}", report.max_abs_residual);
    }

    #[test]
    fn jacobiator_vanishes_on_unmixed_triples() {
        let alg = Algebra::new(2);
        // classical triple
        let a = alg.classical_term(Monomial::new(2, 0), c64(1.0, 0.0));
        let b = alg.classical_term(Monomial::new(1, 1), c64(-0.5, 0.0));
        let c = alg.classical_term(Monomial::new(0, 2), c64(2.0, 0.0));
        assert!(jacobiator(&a, &b, &c).unwrap().norm() < 1e-13);

        // quantum triple
        let (sx, sy, sz) = (
            alg.pauli_x().unwrap(),
            alg.pauli_y().unwrap(),
            alg.pauli_z().unwrap(),
        );
        assert!(jacobiator(&sx, &sy, &sz).unwrap().norm() < 1e-13);
    }

    #[test]
    fn jacobiator_fails_on_a_mixed_triple() {
        // A = sigma_x x, B = sigma_y x, C = sigma_y k^2 leaves a constant
        // -2 sigma_x behind: the symmetrized bracket is not a Lie bracket.
        let alg = Algebra::new(2);
        let a = alg.pauli_x().unwrap().checked_mul(&alg.x()).unwrap();
        let b = alg.pauli_y().unwrap().checked_mul(&alg.x()).unwrap();
        let c = alg
            .pauli_y()
            .unwrap()
            .checked_mul(&alg.classical_term(Monomial::new(0, 2), c64(1.0, 0.0)))
            .unwrap();
        let j = jacobiator(&a, &b, &c).unwrap();
        let expected = alg.constant(pauli::sigma_x().scale(c64(-2.0, 0.0))).unwrap();
        assert!(j.approx_eq(&expected, 1e-13));
        assert!(j.norm() > 1e-6);
    }
}
