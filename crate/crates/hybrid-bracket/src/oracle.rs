//! Fully quantum and mean-field reference computations for the
//! momentum-momentum coupling example, plus the three-way comparison with
//! the quasiclassical machinery.
//!
//! The setup: particle-a starts in a Gaussian wavepacket centered at `x0`
//! with zero expected momentum; particle-b is in a two-component
//! superposition of momentum eigenstates `±p_bar`; the only interaction is
//! the momentum-momentum coupling `H = c p_a p_b` (self-Hamiltonians of both
//! particles are dropped). Because the interaction is diagonal in `p_a`, each
//! momentum component of particle-b rigidly translates particle-a's
//! wavepacket at velocity `c p_b` - a correlated superposition, in closed
//! form with no grid.
//!
//! The mean-field scheme instead couples particle-a to the expectation value
//! `⟨p_b⟩`, which vanishes for the balanced superposition: particle-a sits
//! still, coupled to a value that is not the outcome of any single
//! measurement. Projecting particle-b onto one momentum at time `t1` makes
//! the trajectory kink, so the coupling would depend on when a measurement
//! is "completed". Both behaviors are reproduced here as reference oracles.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::dynamics::taylor_evolve;
use crate::error::{Error, Result};
use crate::states::{branch_decompose, ClassicalEnsemble, HybridState, QuantumState};

/// Parameters of the momentum-momentum coupling scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumCouplingParams {
    /// Coupling constant (units 1/mass, so `c * p` is a velocity).
    pub coupling: f64,
    /// Magnitude of the two opposite momentum components of particle-b.
    pub p_bar: f64,
    /// Center of particle-a's initial wavepacket.
    pub x0: f64,
    /// Gaussian width of the wavepacket. Conditional means do not depend on
    /// it (the evolution is a rigid translation); it is carried for
    /// completeness.
    pub width: f64,
    pub hbar: f64,
    /// Amplitude of the `+p_bar` component.
    pub amp_plus: Complex64,
    /// Amplitude of the `-p_bar` component.
    pub amp_minus: Complex64,
}

impl MomentumCouplingParams {
    /// The balanced setup: equal amplitudes, unit width, ħ = 1.
    pub fn balanced(coupling: f64, p_bar: f64, x0: f64) -> Self {
        let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            coupling,
            p_bar,
            x0,
            width: 1.0,
            hbar: 1.0,
            amp_plus: amp,
            amp_minus: amp,
        }
    }

    pub fn with_amplitudes(mut self, amp_plus: Complex64, amp_minus: Complex64) -> Self {
        self.amp_plus = amp_plus;
        self.amp_minus = amp_minus;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (field, value) in [
            ("coupling", self.coupling),
            ("p_bar", self.p_bar),
            ("x0", self.x0),
        ] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter {
                    field,
                    message: "must be finite".into(),
                });
            }
        }
        if !(self.width.is_finite() && self.width > 0.0) {
            return Err(Error::InvalidParameter {
                field: "width",
                message: "must be positive and finite".into(),
            });
        }
        if !(self.hbar.is_finite() && self.hbar > 0.0) {
            return Err(Error::InvalidParameter {
                field: "hbar",
                message: "must be positive and finite".into(),
            });
        }
        let total = self.amp_plus.norm_sqr() + self.amp_minus.norm_sqr();
        if !total.is_finite() || (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter {
                field: "amplitudes",
                message: format!("|amp_plus|^2 + |amp_minus|^2 is {total}, expected 1"),
            });
        }
        Ok(())
    }

    /// Mean momentum of particle-b in the initial superposition.
    pub fn mean_momentum(&self) -> f64 {
        (self.amp_plus.norm_sqr() - self.amp_minus.norm_sqr()) * self.p_bar
    }
}

/// One momentum branch of the fully quantum evolution: where particle-a's
/// wavepacket is centered, conditioned on particle-b's momentum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionalOutcome {
    pub branch_momentum: f64,
    pub probability: f64,
    pub conditional_mean_position: f64,
    pub time: f64,
}

/// Exact fully quantum evolution: each momentum component of particle-b
/// translates particle-a's wavepacket rigidly by `c p_b t`.
pub fn evolve_full_quantum(
    params: &MomentumCouplingParams,
    t: f64,
) -> Result<Vec<ConditionalOutcome>> {
    params.validate()?;
    if !t.is_finite() {
        return Err(Error::InvalidParameter {
            field: "t",
            message: "must be finite".into(),
        });
    }
    let shift = params.coupling * params.p_bar * t;
    Ok(vec![
        ConditionalOutcome {
            branch_momentum: params.p_bar,
            probability: params.amp_plus.norm_sqr(),
            conditional_mean_position: params.x0 + shift,
            time: t,
        },
        ConditionalOutcome {
            branch_momentum: -params.p_bar,
            probability: params.amp_minus.norm_sqr(),
            conditional_mean_position: params.x0 - shift,
            time: t,
        },
    ])
}

/// Which momentum branch a measurement projects particle-b onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProjectionBranch {
    /// Project onto `+p_bar`.
    Plus,
    /// Project onto `-p_bar`.
    Minus,
}

impl ProjectionBranch {
    pub fn sign(&self) -> f64 {
        match self {
            ProjectionBranch::Plus => 1.0,
            ProjectionBranch::Minus => -1.0,
        }
    }
}

/// An instantaneous momentum measurement of particle-b during the mean-field
/// evolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Projection {
    pub time: f64,
    pub branch: ProjectionBranch,
}

/// Classical trajectory of particle-a under the mean-field coupling
/// `dx/dt = c ⟨p_b⟩`, integrated in closed form (the right-hand side is
/// piecewise constant).
///
/// Without a projection and with balanced amplitudes, `⟨p_b⟩ = 0` and the
/// particle never moves. A projection at `t1` replaces the state of
/// particle-b by one momentum eigenstate, so the trajectory picks up the
/// slope `c (±p_bar)` from that moment on.
pub fn mean_field_trajectory(
    params: &MomentumCouplingParams,
    t: f64,
    project_at: Option<Projection>,
) -> Result<f64> {
    params.validate()?;
    if !t.is_finite() {
        return Err(Error::InvalidParameter {
            field: "t",
            message: "must be finite".into(),
        });
    }
    let drift = params.coupling * params.mean_momentum();
    match project_at {
        None => Ok(params.x0 + drift * t),
        Some(projection) => {
            if !(projection.time >= 0.0 && projection.time <= t) {
                return Err(Error::InvalidParameter {
                    field: "project_at.time",
                    message: format!(
                        "projection time {} must lie in [0, {t}]",
                        projection.time
                    ),
                });
            }
            let post_drift = params.coupling * projection.branch.sign() * params.p_bar;
            Ok(params.x0 + drift * projection.time + post_drift * (t - projection.time))
        }
    }
}

/// Side-by-side positions for one momentum branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchComparison {
    pub p_b: f64,
    pub prob: f64,
    pub x_quantum: f64,
    pub x_quasiclassical: f64,
    pub x_meanfield: f64,
}

/// The three-way comparison record for one evolution time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRecord {
    pub t: f64,
    pub branches: Vec<BranchComparison>,
}

impl ComparisonRecord {
    /// Largest disagreement between the quasiclassical branch positions and
    /// the fully quantum conditional means.
    pub fn max_quasiclassical_error(&self) -> f64 {
        self.branches
            .iter()
            .map(|b| (b.x_quasiclassical - b.x_quantum).abs())
            .fold(0.0, f64::max)
    }
}

/// Builds the quasiclassical analog of the coupling scenario and compares it
/// branch by branch with the fully quantum and mean-field references.
///
/// Particle-a becomes a classical point at `(x0, 0)`; particle-b's
/// two-component momentum superposition becomes a two-level system with
/// momentum operator `p_bar σ_z`; the coupling becomes `H = c p_bar σ_z ǩ`.
/// The evolved position is branch-decomposed against the quantum state, and
/// each fully quantum outcome is matched to the branch whose post-state
/// contains the corresponding momentum eigenstate.
pub fn compare_with_quasiclassical(
    params: &MomentumCouplingParams,
    t: f64,
) -> Result<ComparisonRecord> {
    params.validate()?;
    let outcomes = evolve_full_quantum(params, t)?;
    let x_meanfield = mean_field_trajectory(params, t, None)?;

    let algebra = Algebra::with_hbar(2, params.hbar);
    let hamiltonian = algebra
        .pauli_z()?
        .checked_mul(&algebra.k())?
        .scale(Complex64::new(params.coupling * params.p_bar, 0.0));
    // dx/dt = c p_bar sigma_z: the series terminates after the first bracket
    let solution = taylor_evolve(&algebra.x(), &hamiltonian, 2)?;
    let position_t = solution.at(t).value;

    let state = HybridState::new(
        QuantumState::new(vec![params.amp_plus, params.amp_minus])?,
        ClassicalEnsemble::point_mass(params.x0, 0.0),
    );
    let branch_set = branch_decompose(&position_t, &state, (params.x0, 0.0))?;

    let mut branches = Vec::new();
    for (basis_index, outcome) in outcomes.iter().enumerate() {
        if outcome.probability <= 1e-14 {
            // this momentum component is absent from the superposition
            continue;
        }
        // +p_bar lives on basis state 0 (spin up), -p_bar on basis state 1
        let eigenstate = QuantumState::basis_state(2, basis_index);
        let matched = branch_set
            .branches
            .iter()
            .max_by(|a, b| {
                a.post_state
                    .fidelity(&eigenstate)
                    .total_cmp(&b.post_state.fidelity(&eigenstate))
            })
            .ok_or_else(|| Error::InvalidParameter {
                field: "amplitudes",
                message: "no quasiclassical branch matched the outcome".into(),
            })?;
        branches.push(BranchComparison {
            p_b: outcome.branch_momentum,
            prob: outcome.probability,
            x_quantum: outcome.conditional_mean_position,
            x_quasiclassical: matched.value,
            x_meanfield,
        });
    }

    Ok(ComparisonRecord { t, branches })
}
