//! Dense-matrix ground truth: exact unitaries, circuit unitaries, spectral
//! norms. Everything here is built directly from operator definitions so it
//! stays independent of the symplectic algebra it certifies.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::pauli::{PauliLetter, PauliString};
use crate::syk::PauliHamiltonian;

pub type DenseOperator = DMatrix<Complex64>;

/// Matrices above this qubit count are refused rather than attempted.
pub const DEFAULT_QUBIT_CAP: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{n} qubits exceeds the dense-matrix cap of {cap}")]
    QubitCapExceeded { n: usize, cap: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

fn check_cap(n: usize, cap: usize) -> Result<(), OracleError> {
    if n > cap.min(DEFAULT_QUBIT_CAP) {
        return Err(OracleError::QubitCapExceeded {
            n,
            cap: cap.min(DEFAULT_QUBIT_CAP),
        });
    }
    Ok(())
}

fn letter_matrix(letter: PauliLetter) -> DMatrix<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match letter {
        PauliLetter::I => DMatrix::from_row_slice(2, 2, &[one, zero, zero, one]),
        PauliLetter::X => DMatrix::from_row_slice(2, 2, &[zero, one, one, zero]),
        PauliLetter::Y => DMatrix::from_row_slice(2, 2, &[zero, -i, i, zero]),
        PauliLetter::Z => DMatrix::from_row_slice(2, 2, &[one, zero, zero, -one]),
    }
}

fn quarter_phase(k: u8) -> Complex64 {
    match k & 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Dense matrix of a Pauli string; qubit 0 is the leftmost Kronecker factor.
pub fn pauli_matrix(p: &PauliString) -> DenseOperator {
    let mut m = DMatrix::from_element(1, 1, quarter_phase(p.phase()));
    for q in 0..p.n_qubits() {
        m = m.kronecker(&letter_matrix(p.letter(q)));
    }
    m
}

/// Dense Hermitian matrix of a Pauli Hamiltonian.
pub fn hamiltonian_matrix(h: &PauliHamiltonian, cap: usize) -> Result<DenseOperator, OracleError> {
    check_cap(h.n_qubits, cap)?;
    let dim = 1usize << h.n_qubits;
    let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for (coeff, op) in &h.terms {
        m += pauli_matrix(op) * Complex64::new(*coeff, 0.0);
    }
    Ok(m)
}

/// `exp(-i H t)` via Hermitian eigendecomposition.
pub fn exact_unitary(h: &PauliHamiltonian, t: f64, cap: usize) -> Result<DenseOperator, OracleError> {
    let m = hamiltonian_matrix(h, cap)?;
    Ok(hermitian_exponential(&m, t))
}

/// `exp(-i M t)` for a Hermitian matrix `M`.
pub fn hermitian_exponential(m: &DenseOperator, t: f64) -> DenseOperator {
    let eig = m.clone().symmetric_eigen();
    let phases = DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&l| Complex64::from_polar(1.0, -l * t)),
    );
    &eig.eigenvectors * DMatrix::from_diagonal(&phases) * eig.eigenvectors.adjoint()
}

/// Unitary of a gate list, applied gate by gate in circuit order, times
/// `exp(i * global_phase)`.
pub fn circuit_unitary(circuit: &Circuit, cap: usize) -> Result<DenseOperator, OracleError> {
    let n = circuit.n_qubits();
    check_cap(n, cap)?;
    let dim = 1usize << n;
    let mut u = DMatrix::identity(dim, dim);
    for gate in circuit.gates() {
        apply_gate(&mut u, gate, n);
    }
    if circuit.global_phase() != 0.0 {
        u *= Complex64::from_polar(1.0, circuit.global_phase());
    }
    Ok(u)
}

/// Row-index bit for a qubit: qubit 0 is the most significant bit.
fn bit_mask(q: usize, n: usize) -> usize {
    1usize << (n - 1 - q)
}

fn apply_single(u: &mut DenseOperator, mask: usize, g: [[Complex64; 2]; 2]) {
    let dim = u.nrows();
    for j in 0..dim {
        for i0 in 0..dim {
            if i0 & mask != 0 {
                continue;
            }
            let i1 = i0 | mask;
            let a = u[(i0, j)];
            let b = u[(i1, j)];
            u[(i0, j)] = g[0][0] * a + g[0][1] * b;
            u[(i1, j)] = g[1][0] * a + g[1][1] * b;
        }
    }
}

fn apply_diagonal(u: &mut DenseOperator, mask: usize, d0: Complex64, d1: Complex64) {
    let dim = u.nrows();
    for j in 0..dim {
        for i in 0..dim {
            let d = if i & mask == 0 { d0 } else { d1 };
            u[(i, j)] *= d;
        }
    }
}

fn apply_gate(u: &mut DenseOperator, gate: &Gate, n: usize) {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let im = Complex64::new(0.0, 1.0);
    match *gate {
        Gate::H(q) => {
            let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            apply_single(u, bit_mask(q, n), [[s, s], [s, -s]]);
        }
        Gate::X(q) => apply_single(u, bit_mask(q, n), [[zero, one], [one, zero]]),
        Gate::S(q) => apply_diagonal(u, bit_mask(q, n), one, im),
        Gate::Sdg(q) => apply_diagonal(u, bit_mask(q, n), one, -im),
        Gate::Z(q) => apply_diagonal(u, bit_mask(q, n), one, -one),
        Gate::T(q) => apply_diagonal(u, bit_mask(q, n), one, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)),
        Gate::Tdg(q) => apply_diagonal(u, bit_mask(q, n), one, Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4)),
        Gate::Rz(q, theta) => apply_diagonal(
            u,
            bit_mask(q, n),
            Complex64::from_polar(1.0, -theta / 2.0),
            Complex64::from_polar(1.0, theta / 2.0),
        ),
        Gate::Cnot(c, t) => {
            let (mc, mt) = (bit_mask(c, n), bit_mask(t, n));
            let dim = u.nrows();
            for i in 0..dim {
                if i & mc != 0 && i & mt == 0 {
                    u.swap_rows(i, i | mt);
                }
            }
        }
        Gate::Cz(a, b) => {
            let (ma, mb) = (bit_mask(a, n), bit_mask(b, n));
            let dim = u.nrows();
            for j in 0..dim {
                for i in 0..dim {
                    if i & ma != 0 && i & mb != 0 {
                        u[(i, j)] = -u[(i, j)];
                    }
                }
            }
        }
    }
}

/// Largest singular value, computed from the Hermitian Gram matrix.
pub fn operator_norm(m: &DenseOperator) -> f64 {
    let gram = m.adjoint() * m;
    let eig = gram.symmetric_eigen();
    eig.eigenvalues.iter().fold(0.0f64, |acc, &l| acc.max(l)).max(0.0).sqrt()
}

/// Spectral norm of `U - V`.
pub fn operator_norm_diff(u: &DenseOperator, v: &DenseOperator) -> Result<f64, OracleError> {
    if u.nrows() != v.nrows() || u.ncols() != v.ncols() {
        return Err(OracleError::DimensionMismatch {
            left: u.nrows(),
            right: v.nrows(),
        });
    }
    Ok(operator_norm(&(u - v)))
}

/// Debug-only comparison that quotients out a global phase: aligns `v` by
/// the phase of `tr(v^dagger u)` before taking the norm.
pub fn phase_aligned_norm_diff(u: &DenseOperator, v: &DenseOperator) -> Result<f64, OracleError> {
    if u.nrows() != v.nrows() {
        return Err(OracleError::DimensionMismatch {
            left: u.nrows(),
            right: v.nrows(),
        });
    }
    let overlap = (v.adjoint() * u).trace();
    let phase = if overlap.norm() > 0.0 {
        overlap / Complex64::new(overlap.norm(), 0.0)
    } else {
        Complex64::new(1.0, 0.0)
    };
    Ok(operator_norm(&(u - v * phase)))
}

/// `|| U^dagger U - 1 ||`, zero for exactly unitary matrices.
pub fn unitarity_defect(u: &DenseOperator) -> f64 {
    let dim = u.nrows();
    operator_norm(&(u.adjoint() * u - DMatrix::<Complex64>::identity(dim, dim)))
}

/// Spectral norm of the off-diagonal part.
pub fn off_diagonal_norm(m: &DenseOperator) -> f64 {
    let mut od = m.clone();
    for i in 0..od.nrows() {
        od[(i, i)] = Complex64::new(0.0, 0.0);
    }
    operator_norm(&od)
}

/// Largest absolute entry of `M - M^dagger`.
pub fn hermiticity_defect(m: &DenseOperator) -> f64 {
    let d = m - m.adjoint();
    d.iter().fold(0.0f64, |acc, c| acc.max(c.norm()))
}
