//! Property tests for the structural invariants of the mixed-observable
//! algebra, the brackets, the dynamics, and the branch machinery.

use hybrid_bracket::{
    bin_branches, branch_decompose, expectation, product_rule_check, taylor_evolve, Algebra,
    Branch, BranchSet, ClassicalEnsemble, HybridObservable, HybridState, Monomial,
    ProductRuleVariant, QuantumOperator, QuantumState,
};
use num_complex::Complex64;
use proptest::prelude::*;

const TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// One raw term: monomial exponents plus a flat complex matrix.
type RawTerm = (u32, u32, Vec<(f64, f64)>);

fn arb_term(dim: usize, max_degree: u32) -> impl Strategy<Value = RawTerm> {
    (
        0..=max_degree,
        0..=max_degree,
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim),
    )
        .prop_map(move |(a, b, entries)| (a, b.min(max_degree - a.min(max_degree)), entries))
}

fn build_observable(
    algebra: &Algebra,
    raw_terms: &[RawTerm],
    hermitian: bool,
    classical: bool,
) -> HybridObservable {
    let dim = algebra.dim();
    let mut out = algebra.zero();
    for (a, b, entries) in raw_terms {
        let term = if classical {
            algebra.classical_term(Monomial::new(*a, *b), c(entries[0].0, 0.0))
        } else {
            let matrix = QuantumOperator::from_entries(
                dim,
                entries.iter().map(|&(re, im)| c(re, im)).collect(),
            )
            .expect("finite entries");
            algebra
                .term(Monomial::new(*a, *b), matrix)
                .expect("matching dim")
        };
        out = out.checked_add(&term).expect("same algebra");
    }
    if hermitian {
        out = out
            .checked_add(&out.adjoint())
            .expect("same algebra")
            .scale(c(0.5, 0.0));
    }
    out
}

fn arb_observable(dim: usize) -> impl Strategy<Value = HybridObservable> {
    prop::collection::vec(arb_term(dim, 3), 1..5)
        .prop_map(move |terms| build_observable(&Algebra::new(dim), &terms, false, false))
}

fn arb_hermitian(dim: usize) -> impl Strategy<Value = HybridObservable> {
    prop::collection::vec(arb_term(dim, 3), 1..5)
        .prop_map(move |terms| build_observable(&Algebra::new(dim), &terms, true, false))
}

fn arb_classical(dim: usize) -> impl Strategy<Value = HybridObservable> {
    prop::collection::vec(arb_term(dim, 3), 1..5)
        .prop_map(move |terms| build_observable(&Algebra::new(dim), &terms, false, true))
}

fn arb_quantum(dim: usize) -> impl Strategy<Value = HybridObservable> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim).prop_map(move |entries| {
        let matrix =
            QuantumOperator::from_entries(dim, entries.iter().map(|&(re, im)| c(re, im)).collect())
                .expect("finite entries");
        Algebra::new(dim).constant(matrix).expect("matching dim")
    })
}

proptest! {
    #[test]
    fn symmetrized_bracket_is_antisymmetric(
        a in arb_observable(2),
        b in arb_observable(2),
    ) {
        let forward = a.abt_bracket(&b).unwrap();
        let reverse = b.abt_bracket(&a).unwrap();
        prop_assert!(forward.checked_add(&reverse).unwrap().norm() <= TOL);
    }

    #[test]
    fn symmetrized_bracket_of_hermitian_inputs_is_hermitian(
        a in arb_hermitian(3),
        b in arb_hermitian(3),
    ) {
        let bracket = a.abt_bracket(&b).unwrap();
        prop_assert!(bracket.is_hermitian(TOL));
    }

    #[test]
    fn brackets_coincide_on_classical_inputs(
        a in arb_classical(2),
        b in arb_classical(2),
    ) {
        let poisson = a.poisson(&b).unwrap();
        prop_assert!(a.abt_bracket(&b).unwrap().approx_eq(&poisson, TOL));
        prop_assert!(a.anderson_bracket(&b).unwrap().approx_eq(&poisson, TOL));
    }

    #[test]
    fn brackets_reduce_to_scaled_commutator_on_quantum_inputs(
        a in arb_quantum(3),
        b in arb_quantum(3),
    ) {
        let expected = a
            .commutator(&b)
            .unwrap()
            .scale(c(0.0, -1.0));
        prop_assert!(a.abt_bracket(&b).unwrap().approx_eq(&expected, TOL));
        prop_assert!(a.anderson_bracket(&b).unwrap().approx_eq(&expected, TOL));
    }

    #[test]
    fn self_bracket_always_vanishes(h in arb_observable(3)) {
        prop_assert!(h.abt_bracket(&h).unwrap().is_zero());
    }

    #[test]
    fn fundamental_equations_of_motion_hold_at_t0(h in arb_observable(2)) {
        // dx/dt at t=0 is the symmetrized k-derivative of H, and the quantum
        // variables evolve by the plain scaled commutator.
        let alg = Algebra::new(2);
        let x_dot = alg.x().abt_bracket(&h).unwrap();
        prop_assert!(x_dot.approx_eq(&h.d_dk(), TOL));
        let k_dot = alg.k().abt_bracket(&h).unwrap();
        prop_assert!(k_dot.approx_eq(&h.d_dx().scale(c(-1.0, 0.0)), TOL));

        let q = alg.boson_q().unwrap();
        let q_dot = q.abt_bracket(&h).unwrap();
        let expected = q.commutator(&h).unwrap().scale(c(0.0, -1.0));
        prop_assert!(q_dot.approx_eq(&expected, TOL));
    }

    #[test]
    fn corrected_product_rules_are_exact(
        a in arb_observable(2),
        b in arb_observable(2),
        cc in arb_observable(2),
    ) {
        for variant in [
            ProductRuleVariant::AndersonLeft,
            ProductRuleVariant::AndersonRight,
            ProductRuleVariant::Abt,
        ] {
            let report = product_rule_check(&a, &b, &cc, variant).unwrap();
            prop_assert!(
                report.passes(TOL),
                "{} residual {}",
                report.identity_name,
                report.max_abs_residual
            );
        }
    }

    #[test]
    fn symmetric_ordering_rule_is_exact_on_split_products(
        a in arb_observable(2),
        f in arb_classical(2),
        u in arb_quantum(2),
    ) {
        let report = product_rule_check(&a, &f, &u, ProductRuleVariant::AbtSymmetric).unwrap();
        prop_assert!(report.passes(TOL), "residual {}", report.max_abs_residual);
    }

    #[test]
    fn observables_round_trip_through_json(a in arb_observable(3)) {
        let text = serde_json::to_string(&a).unwrap();
        let back: HybridObservable = serde_json::from_str(&text).unwrap();
        prop_assert!(back.approx_eq(&a, 1e-14));
    }

    #[test]
    fn evolution_is_linear(
        a in arb_observable(2),
        b in arb_observable(2),
        h in arb_observable(2),
        alpha_re in -1.0..1.0f64,
        beta_im in -1.0..1.0f64,
    ) {
        let (alpha, beta) = (c(alpha_re, 0.25), c(-0.5, beta_im));
        let combined = a.scale(alpha).checked_add(&b.scale(beta)).unwrap();
        let sol_a = taylor_evolve(&a, &h, 3).unwrap();
        let sol_b = taylor_evolve(&b, &h, 3).unwrap();
        let sol = taylor_evolve(&combined, &h, 3).unwrap();
        for n in 0..=3 {
            let expected = sol_a.coefficients()[n]
                .scale(alpha)
                .checked_add(&sol_b.coefficients()[n].scale(beta))
                .unwrap();
            // iterated brackets amplify roundoff; scale tolerance with norm
            let scale = expected.norm().max(1.0);
            prop_assert!(
                sol.coefficients()[n].approx_eq(&expected, 1e-11 * scale),
                "order {n} differs"
            );
        }
    }

    #[test]
    fn expectation_of_hermitian_observable_is_real(
        a in arb_hermitian(2),
        amp_re in -1.0..1.0f64,
        amp_im in -1.0..1.0f64,
        x in -2.0..2.0f64,
        k in -2.0..2.0f64,
    ) {
        prop_assume!(amp_re.abs() + amp_im.abs() > 1e-3);
        let state = HybridState::new(
            QuantumState::normalized(vec![c(amp_re, amp_im), c(0.4, -0.1)]).unwrap(),
            ClassicalEnsemble::point_mass(x, k),
        );
        let value = expectation(&a, &state).unwrap();
        prop_assert!(value.im.abs() <= 1e-12 * value.norm().max(1.0));
    }

    #[test]
    fn branch_probabilities_conserve_and_match_expectation(
        a in arb_hermitian(3),
        x in -2.0..2.0f64,
        k in -2.0..2.0f64,
    ) {
        let state = HybridState::new(
            QuantumState::normalized(vec![c(0.5, 0.1), c(-0.3, 0.7), c(0.2, -0.2)]).unwrap(),
            ClassicalEnsemble::point_mass(x, k),
        );
        let set = branch_decompose(&a, &state, (x, k)).unwrap();
        prop_assert!((set.total_probability() - 1.0).abs() <= TOL);
        let direct = expectation(&a, &state).unwrap();
        let scale = direct.norm().max(1.0);
        prop_assert!((set.mean_value() - direct.re).abs() <= 1e-10 * scale);
    }
}

fn arb_branch_set() -> impl Strategy<Value = BranchSet> {
    prop::collection::vec(
        (
            -3.0..3.0f64,
            0.05..1.0f64,
            (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64),
        ),
        1..6,
    )
    .prop_map(|raw| {
        let total: f64 = raw.iter().map(|(_, w, _)| w).sum();
        let branches = raw
            .iter()
            .map(|(value, weight, (a, b, d, e))| Branch {
                value: *value,
                probability: weight / total,
                post_state: QuantumState::normalized(vec![c(*a, *b), c(*d, *e)])
                    .unwrap_or_else(|_| QuantumState::up()),
            })
            .collect();
        BranchSet {
            resolution: 0.0,
            branches,
        }
    })
}

proptest! {
    #[test]
    fn binning_conserves_probability_and_is_idempotent(
        set in arb_branch_set(),
        epsilon in 0.0..2.0f64,
    ) {
        let once = bin_branches(&set, epsilon);
        prop_assert!((once.total_probability() - set.total_probability()).abs() <= TOL);

        // all surviving branches separated by more than epsilon
        let mut values: Vec<f64> = once.branches.iter().map(|b| b.value).collect();
        values.sort_by(f64::total_cmp);
        for pair in values.windows(2) {
            prop_assert!(pair[1] - pair[0] > epsilon);
        }

        let twice = bin_branches(&once, epsilon);
        prop_assert_eq!(once.branches.len(), twice.branches.len());
        for (x, y) in once.branches.iter().zip(&twice.branches) {
            prop_assert_eq!(x.value, y.value);
            prop_assert_eq!(x.probability, y.probability);
            prop_assert_eq!(x.post_state.clone(), y.post_state.clone());
        }
    }
}
