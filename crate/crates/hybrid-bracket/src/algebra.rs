//! The algebra of mixed quasiclassical-quantum observables.
//!
//! An observable is a polynomial in a commuting pair of classical phase-space
//! variables (x̌, ǩ) whose coefficients are quantum operators on a fixed
//! finite-dimensional Hilbert space. Every observable is kept in this
//! initial-variable canonical form: classical monomials commute with
//! everything, operator coefficients need not commute with each other, and
//! products are always reduced back to the canonical form so operator
//! ordering stays explicit.
//!
//! The classical variables enter as the monomials x̌ = (1,0) and ǩ = (0,1)
//! with identity coefficient; purely quantum observables are degree-0 terms.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{boson_momentum, boson_position, pauli, QuantumOperator};

/// Coefficients with Frobenius norm at or below this threshold are dropped,
/// keeping the sparse term map canonical.
pub const PRUNE_TOLERANCE: f64 = 1e-14;

/// Default absolute tolerance for identity checks at desk scale
/// (dimension <= 4, polynomial degree <= 3).
pub const DEFAULT_CHECK_TOLERANCE: f64 = 1e-12;

/// Powers of the classical pair in one term: x̌^a ǩ^b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0 };
    pub const X: Monomial = Monomial { a: 1, b: 0 };
    pub const K: Monomial = Monomial { a: 0, b: 1 };

    pub fn new(a: u32, b: u32) -> Self {
        Self { a, b }
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b
    }

    fn product(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.a + other.a, self.b + other.b)
    }

    /// Numeric value x'^a k'^b at a phase-space point.
    fn evaluate(&self, x: f64, k: f64) -> f64 {
        x.powi(self.a as i32) * k.powi(self.b as i32)
    }
}

/// The named generators of the mixed algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// Classical position x̌.
    X,
    /// Classical momentum ǩ.
    K,
    /// The unit observable.
    Identity,
    PauliX,
    PauliY,
    PauliZ,
    /// Truncated boson position quadrature q̌.
    BosonQ,
    /// Truncated boson momentum quadrature p̌.
    BosonP,
}

impl Generator {
    fn name(&self) -> &'static str {
        match self {
            Generator::X => "x",
            Generator::K => "k",
            Generator::Identity => "identity",
            Generator::PauliX => "pauli_x",
            Generator::PauliY => "pauli_y",
            Generator::PauliZ => "pauli_z",
            Generator::BosonQ => "boson_q",
            Generator::BosonP => "boson_p",
        }
    }
}

/// Ambient configuration of the algebra: Hilbert-space dimension and ħ.
///
/// Acts as a factory for generators so that every observable built from one
/// `Algebra` carries consistent `dim` and `hbar`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Algebra {
    dim: usize,
    hbar: f64,
}

impl Algebra {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "Hilbert-space dimension must be at least 1");
        Self { dim, hbar: 1.0 }
    }

    pub fn with_hbar(dim: usize, hbar: f64) -> Self {
        assert!(dim >= 1, "Hilbert-space dimension must be at least 1");
        assert!(
            hbar.is_finite() && hbar > 0.0,
            "hbar must be positive and finite"
        );
        Self { dim, hbar }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn zero(&self) -> HybridObservable {
        HybridObservable {
            dim: self.dim,
            hbar: self.hbar,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> HybridObservable {
        self.generator(Generator::Identity).expect("identity exists at any dim")
    }

    pub fn x(&self) -> HybridObservable {
        self.generator(Generator::X).expect("x exists at any dim")
    }

    pub fn k(&self) -> HybridObservable {
        self.generator(Generator::K).expect("k exists at any dim")
    }

    pub fn pauli_x(&self) -> Result<HybridObservable> {
        self.generator(Generator::PauliX)
    }

    pub fn pauli_y(&self) -> Result<HybridObservable> {
        self.generator(Generator::PauliY)
    }

    pub fn pauli_z(&self) -> Result<HybridObservable> {
        self.generator(Generator::PauliZ)
    }

    pub fn boson_q(&self) -> Result<HybridObservable> {
        self.generator(Generator::BosonQ)
    }

    pub fn boson_p(&self) -> Result<HybridObservable> {
        self.generator(Generator::BosonP)
    }

    /// Builds the named generator, rejecting unsupported kind/dimension
    /// combinations (Pauli needs dim = 2, boson quadratures need dim >= 2).
    pub fn generator(&self, kind: Generator) -> Result<HybridObservable> {
        let coefficient = |m: QuantumOperator, monomial: Monomial| {
            let mut terms = BTreeMap::new();
            if !m.is_zero(PRUNE_TOLERANCE) {
                terms.insert(monomial, m);
            }
            HybridObservable {
                dim: self.dim,
                hbar: self.hbar,
                terms,
            }
        };
        match kind {
            Generator::X => Ok(coefficient(QuantumOperator::identity(self.dim), Monomial::X)),
            Generator::K => Ok(coefficient(QuantumOperator::identity(self.dim), Monomial::K)),
            Generator::Identity => {
                Ok(coefficient(QuantumOperator::identity(self.dim), Monomial::ONE))
            }
            Generator::PauliX | Generator::PauliY | Generator::PauliZ => {
                if self.dim != 2 {
                    return Err(Error::UnsupportedGenerator {
                        kind: kind.name(),
                        dim: self.dim,
                    });
                }
                let m = match kind {
                    Generator::PauliX => pauli::sigma_x(),
                    Generator::PauliY => pauli::sigma_y(),
                    _ => pauli::sigma_z(),
                };
                Ok(coefficient(m, Monomial::ONE))
            }
            Generator::BosonQ | Generator::BosonP => {
                if self.dim < 2 {
                    return Err(Error::UnsupportedGenerator {
                        kind: kind.name(),
                        dim: self.dim,
                    });
                }
                let m = match kind {
                    Generator::BosonQ => boson_position(self.dim, self.hbar),
                    _ => boson_momentum(self.dim, self.hbar),
                };
                Ok(coefficient(m, Monomial::ONE))
            }
        }
    }

    /// Observable with a single quantum coefficient on the constant monomial.
    pub fn constant(&self, operator: QuantumOperator) -> Result<HybridObservable> {
        self.term(Monomial::ONE, operator)
    }

    /// Observable with a single term `operator * x̌^a ǩ^b`.
    pub fn term(&self, monomial: Monomial, operator: QuantumOperator) -> Result<HybridObservable> {
        if operator.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: operator.dim(),
            });
        }
        let mut terms = BTreeMap::new();
        if !operator.is_zero(PRUNE_TOLERANCE) {
            terms.insert(monomial, operator);
        }
        Ok(HybridObservable {
            dim: self.dim,
            hbar: self.hbar,
            terms,
        })
    }

    /// Purely classical scalar observable `c * x̌^a ǩ^b` (identity coefficient).
    pub fn classical_term(&self, monomial: Monomial, c: Complex64) -> HybridObservable {
        self.term(monomial, QuantumOperator::identity(self.dim).scale(c))
            .expect("identity coefficient always matches dim")
    }
}

/// A mixed observable: polynomial in the commuting classical pair (x̌, ǩ)
/// with quantum-operator coefficients, in canonical sparse form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "wire::Observable", into = "wire::Observable")]
pub struct HybridObservable {
    dim: usize,
    hbar: f64,
    terms: BTreeMap<Monomial, QuantumOperator>,
}

impl HybridObservable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Term map in canonical (monomial-sorted) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QuantumOperator)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: Monomial) -> Option<&QuantumOperator> {
        self.terms.get(&monomial)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The zero observable with the same dimension and ħ.
    pub fn zero_like(&self) -> Self {
        Self {
            dim: self.dim,
            hbar: self.hbar,
            terms: BTreeMap::new(),
        }
    }

    /// Total polynomial degree, or `None` for the zero observable.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True when every coefficient is a complex multiple of the identity.
    pub fn is_classical(&self) -> bool {
        self.terms.values().all(|m| {
            let c = m[(0, 0)];
            m.approx_eq(&QuantumOperator::identity(self.dim).scale(c), PRUNE_TOLERANCE)
        })
    }

    /// True when only the constant monomial carries a coefficient.
    pub fn is_quantum(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    /// Sum over monomials of the coefficient Frobenius norms. This is the
    /// residual measure used by every identity check in the crate.
    pub fn norm(&self) -> f64 {
        // abs() turns the empty sum's -0.0 into +0.0
        self.terms
            .values()
            .map(QuantumOperator::frobenius_norm)
            .sum::<f64>()
            .abs()
    }

    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        match self.checked_sub(other) {
            Ok(diff) => diff.terms.values().all(|m| m.frobenius_norm() <= tolerance),
            Err(_) => false,
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.hbar != other.hbar {
            return Err(Error::HbarMismatch {
                left: self.hbar,
                right: other.hbar,
            });
        }
        Ok(())
    }

    fn prune(mut self) -> Self {
        self.terms.retain(|_, m| !m.is_zero(PRUNE_TOLERANCE));
        self
    }

    /// Termwise sum.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (monomial, m) in &other.terms {
            terms
                .entry(*monomial)
                .and_modify(|existing| *existing = existing.add(m))
                .or_insert_with(|| m.clone());
        }
        Ok(Self {
            dim: self.dim,
            hbar: self.hbar,
            terms,
        }
        .prune())
    }

    /// Termwise difference.
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (monomial, m) in &other.terms {
            terms
                .entry(*monomial)
                .and_modify(|existing| *existing = existing.sub(m))
                .or_insert_with(|| m.scale(Complex64::new(-1.0, 0.0)));
        }
        Ok(Self {
            dim: self.dim,
            hbar: self.hbar,
            terms,
        }
        .prune())
    }

    /// Scalar multiple.
    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            hbar: self.hbar,
            terms: self
                .terms
                .iter()
                .map(|(monomial, m)| (*monomial, m.scale(c)))
                .collect(),
        }
        .prune()
    }

    /// Product in the canonical representation: classical monomials commute
    /// (exponents add), operator coefficients multiply in order with `self`'s
    /// coefficient on the left.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut terms: BTreeMap<Monomial, QuantumOperator> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let product = ca.mul(cb);
                terms
                    .entry(ma.product(mb))
                    .and_modify(|existing| *existing = existing.add(&product))
                    .or_insert(product);
            }
        }
        Ok(Self {
            dim: self.dim,
            hbar: self.hbar,
            terms,
        }
        .prune())
    }

    /// Conjugate-transposes every coefficient; monomials are untouched
    /// because the classical variables are real.
    pub fn adjoint(&self) -> Self {
        Self {
            dim: self.dim,
            hbar: self.hbar,
            terms: self
                .terms
                .iter()
                .map(|(monomial, m)| (*monomial, m.adjoint()))
                .collect(),
        }
    }

    /// True when the observable equals its adjoint within `tolerance`.
    pub fn is_hermitian(&self, tolerance: f64) -> bool {
        self.approx_eq(&self.adjoint(), tolerance)
    }

    /// Formal partial derivative in the classical position x̌.
    ///
    /// Operator coefficients are constants of the classical pair, so the
    /// derivative of a degree-0 term is zero even when the coefficient is a
    /// q-number; conversely the derivative of a mixed term keeps its
    /// q-number coefficient, so the derivative of a "classical" quantity
    /// need not be a c-number.
    pub fn d_dx(&self) -> Self {
        self.formal_derivative(|m| {
            (m.a > 0).then(|| (Monomial::new(m.a - 1, m.b), m.a as f64))
        })
    }

    /// Formal partial derivative in the classical momentum ǩ.
    pub fn d_dk(&self) -> Self {
        self.formal_derivative(|m| {
            (m.b > 0).then(|| (Monomial::new(m.a, m.b - 1), m.b as f64))
        })
    }

    fn formal_derivative(&self, rule: impl Fn(&Monomial) -> Option<(Monomial, f64)>) -> Self {
        let mut terms: BTreeMap<Monomial, QuantumOperator> = BTreeMap::new();
        for (monomial, m) in &self.terms {
            if let Some((lowered, factor)) = rule(monomial) {
                let scaled = m.scale(Complex64::new(factor, 0.0));
                terms
                    .entry(lowered)
                    .and_modify(|existing| *existing = existing.add(&scaled))
                    .or_insert(scaled);
            }
        }
        Self {
            dim: self.dim,
            hbar: self.hbar,
            terms,
        }
        .prune()
    }

    /// Substitutes numbers for (x̌, ǩ) and returns the summed operator.
    pub fn evaluate_at(&self, x: f64, k: f64) -> QuantumOperator {
        let mut out = QuantumOperator::zeros(self.dim);
        for (monomial, m) in &self.terms {
            out = out.add(&m.scale(Complex64::new(monomial.evaluate(x, k), 0.0)));
        }
        out
    }

    /// Commutator `AB - BA` in the representation. Purely classical factors
    /// drop out because their identity coefficients commute with everything.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    /// Classical Poisson bracket `∂A/∂x ∂B/∂k - ∂A/∂k ∂B/∂x` with the
    /// coefficient products taken strictly in that left-to-right order.
    /// Symmetrisation over the operator ordering is not done here; that is
    /// the symmetrized hybrid bracket's job.
    pub fn poisson(&self, other: &Self) -> Result<Self> {
        self.d_dx()
            .checked_mul(&other.d_dk())?
            .checked_sub(&self.d_dk().checked_mul(&other.d_dx())?)
    }

    /// The ordered hybrid bracket: commutator over iħ plus the ordered
    /// Poisson bracket. Gives the correct relations among the canonical
    /// variables but is not antisymmetric (and hence not hermitian), so it
    /// is never used for evolution; it is kept for residual analysis.
    pub fn anderson_bracket(&self, other: &Self) -> Result<Self> {
        let quantum = self
            .commutator(other)?
            .scale(Complex64::new(0.0, -1.0 / self.hbar));
        quantum.checked_add(&self.poisson(other)?)
    }

    /// The symmetrized hybrid bracket (Alexandrov / Boucher-Traschen):
    /// commutator over iħ plus the operator-symmetrized Poisson part
    /// `(A_x B_k - A_k B_x + B_k A_x - B_x A_k) / 2`. Antisymmetric and
    /// hermitian; this is the bracket used for evolution.
    pub fn abt_bracket(&self, other: &Self) -> Result<Self> {
        let quantum = self
            .commutator(other)?
            .scale(Complex64::new(0.0, -1.0 / self.hbar));
        // Grouped as (A_x B_k - A_k B_x) + (B_k A_x - B_x A_k): for A = B the
        // two groups are exact negations entrywise, so the self-bracket
        // cancels identically rather than to roundoff.
        let forward = self
            .d_dx()
            .checked_mul(&other.d_dk())?
            .checked_sub(&self.d_dk().checked_mul(&other.d_dx())?)?;
        let reversed = other
            .d_dk()
            .checked_mul(&self.d_dx())?
            .checked_sub(&other.d_dx().checked_mul(&self.d_dk())?)?;
        quantum.checked_add(&forward.checked_add(&reversed)?.scale(Complex64::new(0.5, 0.0)))
    }
}

mod wire {
    //! Shared JSON form of an observable:
    //! `{"dim": n, "hbar": h, "terms": [{"a", "b", "matrix": [[[re,im],..],..]}, ..]}`.

    use super::*;

    #[derive(Serialize, Deserialize)]
    pub struct Observable {
        pub dim: usize,
        pub hbar: f64,
        pub terms: Vec<Term>,
    }

    #[derive(Serialize, Deserialize)]
    pub struct Term {
        pub a: u32,
        pub b: u32,
        pub matrix: Vec<Vec<[f64; 2]>>,
    }

    impl From<HybridObservable> for Observable {
        fn from(obs: HybridObservable) -> Self {
            Observable {
                dim: obs.dim,
                hbar: obs.hbar,
                terms: obs
                    .terms
                    .iter()
                    .map(|(monomial, m)| Term {
                        a: monomial.a,
                        b: monomial.b,
                        matrix: (0..obs.dim)
                            .map(|i| {
                                (0..obs.dim).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()
                            })
                            .collect(),
                    })
                    .collect(),
            }
        }
    }

    impl TryFrom<Observable> for HybridObservable {
        type Error = Error;

        fn try_from(raw: Observable) -> Result<HybridObservable> {
            if raw.dim < 1 {
                return Err(Error::Schema("field `dim` must be at least 1".into()));
            }
            if !raw.hbar.is_finite() || raw.hbar <= 0.0 {
                return Err(Error::Schema(
                    "field `hbar` must be positive and finite".into(),
                ));
            }
            let mut terms = BTreeMap::new();
            for term in &raw.terms {
                if term.matrix.len() != raw.dim {
                    return Err(Error::Schema(format!(
                        "term (a={}, b={}): matrix has {} rows, expected {}",
                        term.a,
                        term.b,
                        term.matrix.len(),
                        raw.dim
                    )));
                }
                let mut entries = Vec::with_capacity(raw.dim * raw.dim);
                for (i, row) in term.matrix.iter().enumerate() {
                    if row.len() != raw.dim {
                        return Err(Error::Schema(format!(
                            "term (a={}, b={}): row {i} has {} entries, expected {}",
                            term.a,
                            term.b,
                            row.len(),
                            raw.dim
                        )));
                    }
                    for (j, &[re, im]) in row.iter().enumerate() {
                        if !re.is_finite() || !im.is_finite() {
                            return Err(Error::Schema(format!(
                                "term (a={}, b={}): entry ({i}, {j}) is not finite",
                                term.a, term.b
                            )));
                        }
                        entries.push(Complex64::new(re, im));
                    }
                }
                let monomial = Monomial::new(term.a, term.b);
                if terms
                    .insert(monomial, QuantumOperator::from_entries(raw.dim, entries)?)
                    .is_some()
                {
                    return Err(Error::Schema(format!(
                        "duplicate term (a={}, b={})",
                        term.a, term.b
                    )));
                }
            }
            Ok(HybridObservable {
                dim: raw.dim,
                hbar: raw.hbar,
                terms,
            }
            .prune())
        }
    }
}
