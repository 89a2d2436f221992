//! Hybrid states and the measurement-style readout of evolved observables.
//!
//! A hybrid state is a normalized quantum vector paired with a weighted
//! ensemble of classical phase-space points (a product at the initial
//! instant). Evolved observables are read out in the Heisenberg picture:
//! evaluate the observable at a classical point, decompose the quantum state
//! into eigenvectors of the resulting operator, and report one branch per
//! distinct eigenvalue. Branches closer together than the experimental
//! resolution are merged by [`bin_branches`], since such outcomes cannot be
//! distinguished until their centers separate by more than that amount.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::HybridObservable;
use crate::error::{Error, Result};

/// Eigenvalues closer than this merge into a single branch.
pub const EIGENVALUE_MERGE_TOLERANCE: f64 = 1e-10;

/// Allowed hermiticity defect of an evaluated operator before branch
/// decomposition refuses it.
pub const HERMITICITY_TOLERANCE: f64 = 1e-10;

/// Branches with less than this probability are dropped (the state has no
/// component in that eigenspace).
const NEGLIGIBLE_PROBABILITY: f64 = 1e-14;

/// A normalized state vector on a finite-dimensional Hilbert space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct QuantumState {
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    /// Wraps amplitudes that are already normalized (within 1e-12).
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Schema("state must have at least one amplitude".into()));
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Schema("state amplitudes must be finite".into()));
        }
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter {
                field: "amplitudes",
                message: format!("state norm is {norm}, expected 1"),
            });
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes arbitrary nonzero amplitudes.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = norm(&amplitudes);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidParameter {
                field: "amplitudes",
                message: "cannot normalize a zero or non-finite vector".into(),
            });
        }
        Self::new(
            amplitudes
                .iter()
                .map(|z| z / Complex64::new(n, 0.0))
                .collect(),
        )
    }

    pub fn basis_state(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    /// Spin up along z, `|0⟩`.
    pub fn up() -> Self {
        Self::basis_state(2, 0)
    }

    /// Spin down along z, `|1⟩`.
    pub fn down() -> Self {
        Self::basis_state(2, 1)
    }

    /// Spin along +x, `(|0⟩ + |1⟩)/√2`.
    pub fn plus_x() -> Self {
        let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            amplitudes: vec![a, a],
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &QuantumState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Squared overlap with another state.
    pub fn fidelity(&self, other: &QuantumState) -> f64 {
        self.inner(other).norm_sqr()
    }
}

fn norm(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl From<QuantumState> for Vec<[f64; 2]> {
    fn from(state: QuantumState) -> Self {
        state.amplitudes.iter().map(|z| [z.re, z.im]).collect()
    }
}

impl TryFrom<Vec<[f64; 2]>> for QuantumState {
    type Error = Error;

    fn try_from(raw: Vec<[f64; 2]>) -> Result<Self> {
        QuantumState::new(raw.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
    }
}

/// One classical phase-space sample with its ensemble weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub x: f64,
    pub k: f64,
    pub weight: f64,
}

/// A weighted ensemble of classical phase-space points; the weights form a
/// probability distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<PhasePoint>", into = "Vec<PhasePoint>")]
pub struct ClassicalEnsemble {
    points: Vec<PhasePoint>,
}

impl ClassicalEnsemble {
    pub fn new(points: Vec<PhasePoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Schema("ensemble must have at least one point".into()));
        }
        for p in &points {
            if !(p.x.is_finite() && p.k.is_finite() && p.weight.is_finite()) {
                return Err(Error::Schema("ensemble entries must be finite".into()));
            }
            if p.weight < 0.0 {
                return Err(Error::InvalidParameter {
                    field: "weight",
                    message: format!("negative weight {}", p.weight),
                });
            }
        }
        let total: f64 = points.iter().map(|p| p.weight).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter {
                field: "weight",
                message: format!("weights sum to {total}, expected 1"),
            });
        }
        Ok(Self { points })
    }

    /// A single point carrying all the weight.
    pub fn point_mass(x: f64, k: f64) -> Self {
        Self {
            points: vec![PhasePoint { x, k, weight: 1.0 }],
        }
    }

    pub fn points(&self) -> &[PhasePoint] {
        &self.points
    }
}

impl From<ClassicalEnsemble> for Vec<PhasePoint> {
    fn from(e: ClassicalEnsemble) -> Self {
        e.points
    }
}

impl TryFrom<Vec<PhasePoint>> for ClassicalEnsemble {
    type Error = Error;
    fn try_from(raw: Vec<PhasePoint>) -> Result<Self> {
        ClassicalEnsemble::new(raw)
    }
}

/// A product hybrid state: quantum vector times classical ensemble, with no
/// classical-quantum correlation at t = 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HybridState {
    pub quantum: QuantumState,
    pub classical: ClassicalEnsemble,
}

impl HybridState {
    pub fn new(quantum: QuantumState, classical: ClassicalEnsemble) -> Self {
        Self { quantum, classical }
    }
}

/// Ensemble- and state-averaged value of an observable,
/// `Σ_points weight · ⟨ψ| A(x', k') |ψ⟩`. Real (within roundoff) whenever the
/// observable is hermitian.
pub fn expectation(observable: &HybridObservable, state: &HybridState) -> Result<Complex64> {
    if observable.dim() != state.quantum.dim() {
        return Err(Error::DimensionMismatch {
            left: observable.dim(),
            right: state.quantum.dim(),
        });
    }
    let psi = state.quantum.amplitudes();
    let mut total = Complex64::new(0.0, 0.0);
    for point in state.classical.points() {
        let operator = observable.evaluate_at(point.x, point.k);
        total += operator.matrix_element(psi, psi) * Complex64::new(point.weight, 0.0);
    }
    Ok(total)
}

/// One outcome of reading an evolved observable against a quantum state: the
/// classical value, its probability, and the projected post-branch state.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Branch {
    pub value: f64,
    #[serde(rename = "prob")]
    pub probability: f64,
    #[serde(rename = "state")]
    pub post_state: QuantumState,
}

/// Branches of an evolved observable, with the resolution they were binned
/// at (zero for a raw spectral decomposition).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BranchSet {
    #[serde(rename = "epsilon")]
    pub resolution: f64,
    pub branches: Vec<Branch>,
}

impl BranchSet {
    pub fn total_probability(&self) -> f64 {
        self.branches.iter().map(|b| b.probability).sum()
    }

    /// Probability-weighted mean of the branch values.
    pub fn mean_value(&self) -> f64 {
        self.branches
            .iter()
            .map(|b| b.value * b.probability)
            .sum()
    }
}

/// Decomposes the quantum state into eigenvectors of the observable's
/// operator part at one classical phase-space point.
///
/// Eigenvalues within [`EIGENVALUE_MERGE_TOLERANCE`] count as one branch;
/// each branch carries the squared norm of the state's projection and the
/// normalized projection itself. Branches the state has no component in are
/// omitted, so an eigenstate input yields exactly one branch.
pub fn branch_decompose(
    observable: &HybridObservable,
    state: &HybridState,
    at_point: (f64, f64),
) -> Result<BranchSet> {
    if observable.dim() != state.quantum.dim() {
        return Err(Error::DimensionMismatch {
            left: observable.dim(),
            right: state.quantum.dim(),
        });
    }
    let operator = observable.evaluate_at(at_point.0, at_point.1);
    let defect = operator.hermiticity_defect();
    if defect > HERMITICITY_TOLERANCE {
        return Err(Error::NonHermitian {
            defect,
            tolerance: HERMITICITY_TOLERANCE,
        });
    }

    let eigen = operator.eigh();
    let dim = observable.dim();
    let psi = state.quantum.amplitudes();

    let mut branches = Vec::new();
    let mut start = 0;
    while start < dim {
        // eigenvalues are sorted; chain together near-degenerate ones
        let mut end = start + 1;
        while end < dim && eigen.values[end] - eigen.values[end - 1] <= EIGENVALUE_MERGE_TOLERANCE {
            end += 1;
        }
        let cluster = start..end;
        let value =
            eigen.values[cluster.clone()].iter().sum::<f64>() / (end - start) as f64;

        // projection of psi onto the merged eigenspace
        let mut projected = vec![Complex64::new(0.0, 0.0); dim];
        for i in cluster {
            let v = eigen.eigenvector(i);
            let overlap: Complex64 = v.iter().zip(psi).map(|(vi, pi)| vi.conj() * pi).sum();
            for (pj, vj) in projected.iter_mut().zip(&v) {
                *pj += vj * overlap;
            }
        }
        let probability: f64 = projected.iter().map(|z| z.norm_sqr()).sum();
        if probability > NEGLIGIBLE_PROBABILITY {
            branches.push(Branch {
                value,
                probability,
                post_state: QuantumState::normalized(projected)?,
            });
        }
        start = end;
    }

    Ok(BranchSet {
        resolution: 0.0,
        branches,
    })
}

/// Merges branches that an experiment with error interval `epsilon` cannot
/// tell apart: single-linkage clustering on the classical values (transitive
/// closure of "separated by at most epsilon"). A merged branch carries the
/// probability-weighted mean value, the summed probability, and the
/// normalized phase-preserving superposition of the member projections.
pub fn bin_branches(branch_set: &BranchSet, epsilon: f64) -> BranchSet {
    assert!(epsilon >= 0.0, "resolution must be non-negative");
    let mut sorted: Vec<&Branch> = branch_set.branches.iter().collect();
    sorted.sort_by(|a, b| a.value.total_cmp(&b.value));

    let mut merged = Vec::new();
    let mut start = 0;
    while start < sorted.len() {
        let mut end = start + 1;
        while end < sorted.len() && sorted[end].value - sorted[end - 1].value <= epsilon {
            end += 1;
        }
        let cluster = &sorted[start..end];
        if cluster.len() == 1 {
            merged.push(cluster[0].clone());
        } else {
            let probability: f64 = cluster.iter().map(|b| b.probability).sum();
            let value = cluster
                .iter()
                .map(|b| b.value * b.probability)
                .sum::<f64>()
                / probability;
            // sqrt(p) * post_state recovers the original unnormalized
            // projection, so summing keeps the relative phases.
            let dim = cluster[0].post_state.dim();
            let mut superposition = vec![Complex64::new(0.0, 0.0); dim];
            for b in cluster {
                let w = Complex64::new(b.probability.sqrt(), 0.0);
                for (s, a) in superposition.iter_mut().zip(b.post_state.amplitudes()) {
                    *s += a * w;
                }
            }
            let post_state = QuantumState::normalized(superposition)
                // exactly canceling member states: fall back to the most
                // likely member rather than fail
                .unwrap_or_else(|_| {
                    cluster
                        .iter()
                        .max_by(|a, b| a.probability.total_cmp(&b.probability))
                        .expect("cluster is non-empty")
                        .post_state
                        .clone()
                });
            merged.push(Branch {
                value,
                probability,
                post_state,
            });
        }
        start = end;
    }

    BranchSet {
        resolution: epsilon,
        branches: merged,
    }
}
