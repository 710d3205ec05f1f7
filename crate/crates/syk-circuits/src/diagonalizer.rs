//! Clifford synthesis that maps every Pauli in a commuting cluster to a
//! signed Z-string, plus the exact evolution circuit for the cluster.
//!
//! Synthesis is symplectic Gaussian elimination on the cluster tableau.
//! Row operations (products of commuting cluster elements) choose a
//! generator basis; column operations are gates:
//!
//! 1. GF(2) row reduction of the X-block, pivoting on the lowest qubit.
//! 2. CNOTs from each pivot clear the remaining X-support of its row.
//! 3. S on the pivot clears a Y there; CZs clear the rest of the row's
//!    Z-support. Commutation makes the pivot-pivot Z couplings symmetric,
//!    so each CZ between pivots clears two tableau bits at once.
//! 4. H on every pivot turns the lone X into Z.
//!
//! Z-only rows are never touched: commutation forces their pivot-column
//! bits to zero, so steps 2-4 leave them diagonal. The recorded images are
//! not read off the tableau; they are recomputed by conjugating the original
//! strings through the emitted gate list, which keeps signs exact.

use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate};
use crate::pauli::{CliffordGate, PauliError, PauliString};

#[derive(Debug, Error, PartialEq)]
pub enum DiagError {
    #[error("cluster must contain at least one Pauli string")]
    EmptyCluster,
    #[error("cluster strings {first} and {second} anticommute")]
    NonCommutingPair { first: usize, second: usize },
    #[error("cluster string {index} is not Hermitian (phase {phase})")]
    NonHermitianInput { index: usize, phase: u8 },
    #[error("{strings} z-strings but {coeffs} coefficients")]
    MisalignedLengths { strings: usize, coeffs: usize },
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// A signed diagonal Pauli: `sign * Z` on every qubit in `support`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZString {
    pub sign: f64,
    pub support: Vec<usize>,
}

/// A commuting cluster's diagonalizing Clifford and the images of its terms,
/// aligned with the input order.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalizedCluster {
    pub n_qubits: usize,
    pub clifford: Vec<CliffordGate>,
    pub z_strings: Vec<ZString>,
}

fn apply(gates: &mut Vec<CliffordGate>, rows: &mut [PauliString], gate: CliffordGate) {
    for row in rows.iter_mut() {
        *row = row
            .conjugate_by_gate(&gate)
            .expect("synthesis gates stay in range");
    }
    gates.push(gate);
}

/// Synthesizes a Clifford circuit over {H, S, S†, CNOT, CZ} whose
/// conjugation sends every input string to a signed Z-string.
pub fn diagonalize_cluster(paulis: &[PauliString]) -> Result<DiagonalizedCluster, DiagError> {
    if paulis.is_empty() {
        return Err(DiagError::EmptyCluster);
    }
    let n = paulis[0].n_qubits();
    for (i, p) in paulis.iter().enumerate() {
        if p.n_qubits() != n {
            return Err(PauliError::SizeMismatch {
                left: n,
                right: p.n_qubits(),
            }
            .into());
        }
        if !p.is_hermitian() {
            return Err(DiagError::NonHermitianInput {
                index: i,
                phase: p.phase(),
            });
        }
    }
    for i in 0..paulis.len() {
        for j in i + 1..paulis.len() {
            if !paulis[i].commutes(&paulis[j])? {
                return Err(DiagError::NonCommutingPair { first: i, second: j });
            }
        }
    }

    // Scratch tableau; row products only need the bit pattern.
    let mut rows: Vec<PauliString> = paulis.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next_row = 0usize;
    for col in 0..n {
        let Some(r) = (next_row..rows.len()).find(|&r| rows[r].x_bit(col)) else {
            continue;
        };
        rows.swap(next_row, r);
        let pivot_row = rows[next_row].clone();
        for (rr, row) in rows.iter_mut().enumerate() {
            if rr != next_row && row.x_bit(col) {
                *row = row.multiply(&pivot_row)?;
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
    }

    let mut gates: Vec<CliffordGate> = Vec::new();
    // Clear residual X-support of each pivot row with CNOTs from the pivot.
    for &(ri, ci) in &pivots {
        let targets: Vec<usize> = (0..n).filter(|&q| q != ci && rows[ri].x_bit(q)).collect();
        for q in targets {
            apply(&mut gates, &mut rows, CliffordGate::Cnot(ci, q));
        }
    }
    // Clear Z-support of each pivot row: S on the pivot, CZ elsewhere.
    for &(ri, ci) in &pivots {
        if rows[ri].z_bit(ci) {
            apply(&mut gates, &mut rows, CliffordGate::S(ci));
        }
        let targets: Vec<usize> = (0..n).filter(|&q| q != ci && rows[ri].z_bit(q)).collect();
        for q in targets {
            apply(&mut gates, &mut rows, CliffordGate::Cz(ci, q));
        }
    }
    // Rotate each pivot's lone X into Z.
    for &(_, ci) in &pivots {
        apply(&mut gates, &mut rows, CliffordGate::H(ci));
    }

    let mut z_strings = Vec::with_capacity(paulis.len());
    for p in paulis {
        let image = p.conjugate_by_circuit(&gates)?;
        debug_assert!(
            (0..n).all(|q| !image.x_bit(q)),
            "diagonalized image kept an X component: {image}"
        );
        let sign = image
            .hermitian_sign()
            .expect("conjugation preserves Hermiticity");
        z_strings.push(ZString {
            sign,
            support: image.support(),
        });
    }
    Ok(DiagonalizedCluster {
        n_qubits: n,
        clifford: gates,
        z_strings,
    })
}

/// Exact evolution circuit `exp(-i dt sum_i coeff_i P_i)` for the cluster:
/// conjugate into the Z-basis, rotate each term with a CNOT ladder onto its
/// highest-support qubit, and conjugate back. Commutation makes this exact.
pub fn cluster_evolution_circuit(
    dc: &DiagonalizedCluster,
    coeffs: &[f64],
    dt: f64,
) -> Result<Circuit, DiagError> {
    if coeffs.len() != dc.z_strings.len() {
        return Err(DiagError::MisalignedLengths {
            strings: dc.z_strings.len(),
            coeffs: coeffs.len(),
        });
    }
    let mut circuit = Circuit::new(dc.n_qubits);
    for &g in &dc.clifford {
        circuit.push_clifford(g)?;
    }
    for (zs, &coeff) in dc.z_strings.iter().zip(coeffs) {
        let angle = 2.0 * zs.sign * coeff * dt;
        match zs.support.as_slice() {
            [] => {
                // exp(-i c dt sign) times identity.
                circuit.add_global_phase(-zs.sign * coeff * dt);
            }
            [q] => circuit.push(Gate::Rz(*q, angle))?,
            support => {
                for pair in support.windows(2) {
                    circuit.push(Gate::Cnot(pair[0], pair[1]))?;
                }
                circuit.push(Gate::Rz(*support.last().unwrap(), angle))?;
                for pair in support.windows(2).rev() {
                    circuit.push(Gate::Cnot(pair[0], pair[1]))?;
                }
            }
        }
    }
    for &g in dc.clifford.iter().rev() {
        circuit.push_clifford(g.inverse())?;
    }
    Ok(circuit)
}
