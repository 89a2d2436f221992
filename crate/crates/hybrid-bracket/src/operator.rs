//! Dense complex matrices on small finite-dimensional Hilbert spaces.
//!
//! Everything in this crate works at desk scale (dimensions 2-4), so matrices
//! are stored as plain row-major `Vec<Complex64>` with no sparsity or blocking.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A dense complex square matrix acting on a `dim`-dimensional Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumOperator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl QuantumOperator {
    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "operator dimension must be at least 1");
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries, validating shape and finiteness.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim < 1 {
            return Err(Error::Schema("operator dimension must be at least 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::Schema(format!(
                "expected {} entries for a {dim}x{dim} matrix, found {}",
                dim * dim,
                entries.len()
            )));
        }
        if let Some(bad) = entries
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Schema(format!(
                "matrix entry ({}, {}) is not finite",
                bad / dim,
                bad % dim
            )));
        }
        Ok(Self { dim, entries })
    }

    /// Builds a matrix from nested rows of `(re, im)` pairs.
    pub fn from_rows(rows: &[Vec<(f64, f64)>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::Schema(format!(
                    "matrix row has {} entries, expected {dim}",
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|&(re, im)| Complex64::new(re, im)));
        }
        Self::from_entries(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * c).collect(),
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self[(i, l)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(l, j)];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tolerance: f64) -> bool {
        self.frobenius_norm() <= tolerance
    }

    /// Deviation from hermiticity, `‖M - M†‖_F`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.sub(&self.adjoint()).frobenius_norm()
    }

    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        self.dim == other.dim && self.sub(other).frobenius_norm() <= tolerance
    }

    /// Applies the matrix to a state vector.
    pub fn apply(&self, vector: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(vector.len(), self.dim, "state dimension mismatch");
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self[(i, j)] * vector[j])
                    .sum::<Complex64>()
            })
            .collect()
    }

    /// Matrix element `⟨bra|M|ket⟩`.
    pub fn matrix_element(&self, bra: &[Complex64], ket: &[Complex64]) -> Complex64 {
        self.apply(ket)
            .iter()
            .zip(bra)
            .map(|(mv, b)| b.conj() * mv)
            .sum()
    }

    /// Eigenvalues and eigenvectors of a hermitian matrix via cyclic Jacobi
    /// rotations. Eigenvalues come back sorted ascending; `vectors` holds the
    /// corresponding orthonormal eigenvectors as columns.
    ///
    /// The input is assumed hermitian (callers check [`hermiticity_defect`]
    /// first); the iteration works on the hermitian part only.
    ///
    /// [`hermiticity_defect`]: Self::hermiticity_defect
    pub fn eigh(&self) -> HermitianEigen {
        let n = self.dim;
        // Work on (M + M†)/2 so tiny asymmetries cannot stall convergence.
        let mut a = self.add(&self.adjoint()).scale(Complex64::new(0.5, 0.0));
        let mut v = Self::identity(n);

        let scale = a.frobenius_norm().max(1.0);
        let target = 1e-15 * scale;
        for _sweep in 0..100 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off.max(a[(p, q)].norm());
                }
            }
            if off <= target {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut a, &mut v, p, q);
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
        let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
        let mut vectors = Self::zeros(n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for row in 0..n {
                vectors[(row, new_col)] = v[(row, old_col)];
            }
        }
        HermitianEigen { values, vectors }
    }
}

/// Result of a hermitian eigendecomposition: `M = V diag(values) V†`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Real eigenvalues, ascending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, aligned with `values`.
    pub vectors: QuantumOperator,
}

impl HermitianEigen {
    /// Column `i` of the eigenvector matrix.
    pub fn eigenvector(&self, i: usize) -> Vec<Complex64> {
        let n = self.vectors.dim();
        (0..n).map(|row| self.vectors[(row, i)]).collect()
    }
}

/// One complex Jacobi rotation annihilating the (p, q) off-diagonal entry of
/// a hermitian matrix, applied two-sided to `a` and accumulated into `v`.
fn jacobi_rotate(a: &mut QuantumOperator, v: &mut QuantumOperator, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    // Phase that makes the pivot real, then a real 2x2 rotation.
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = 0.5 * (2.0 * mag).atan2(app - aqq);
    let (s, c) = theta.sin_cos();
    let sp = phase.conj() * s;

    let n = a.dim();
    // Columns: [col_p, col_q] <- [c*col_p + sp*col_q, -conj(sp)*col_p + c*col_q]
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * c + aiq * sp;
        a[(i, q)] = -aip * sp.conj() + aiq * c;
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * c + viq * sp;
        v[(i, q)] = -vip * sp.conj() + viq * c;
    }
    // Rows, with the conjugated coefficients.
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = apj * c + aqj * sp.conj();
        a[(q, j)] = -apj * sp + aqj * c;
    }
    // The pivot is annihilated up to roundoff; pin it to keep sweeps monotone.
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
}

impl std::ops::Index<(usize, usize)> for QuantumOperator {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QuantumOperator {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

/// The 2x2 Pauli matrices in the standard z-diagonal convention.
pub mod pauli {
    use super::QuantumOperator;
    use num_complex::Complex64;

    fn build(entries: [(f64, f64); 4]) -> QuantumOperator {
        QuantumOperator::from_entries(
            2,
            entries.iter().map(|&(re, im)| Complex64::new(re, im)).collect(),
        )
        .expect("static 2x2 matrix")
    }

    pub fn sigma_x() -> QuantumOperator {
        build([(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 0.0)])
    }

    pub fn sigma_y() -> QuantumOperator {
        build([(0.0, 0.0), (0.0, -1.0), (0.0, 1.0), (0.0, 0.0)])
    }

    pub fn sigma_z() -> QuantumOperator {
        build([(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (-1.0, 0.0)])
    }
}

/// Truncated boson ladder operator `a` with `a|n⟩ = √n |n-1⟩`, cut at `dim`.
pub fn lowering(dim: usize) -> QuantumOperator {
    let mut m = QuantumOperator::zeros(dim);
    for n in 1..dim {
        m[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    m
}

/// Truncated position quadrature `q = √(ħ/2) (a + a†)`.
pub fn boson_position(dim: usize, hbar: f64) -> QuantumOperator {
    let a = lowering(dim);
    a.add(&a.adjoint()).scale(Complex64::new((hbar / 2.0).sqrt(), 0.0))
}

/// Truncated momentum quadrature `p = i √(ħ/2) (a† - a)`.
pub fn boson_momentum(dim: usize, hbar: f64) -> QuantumOperator {
    let a = lowering(dim);
    a.adjoint()
        .sub(&a)
        .scale(Complex64::new(0.0, (hbar / 2.0).sqrt()))
}
