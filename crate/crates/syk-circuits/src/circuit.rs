//! Gate-level circuit representation and exact gate counting.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pauli::CliffordGate;

#[derive(Debug, Error, PartialEq)]
pub enum CircuitError {
    #[error("qubit index {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("two-qubit gate needs distinct operands, got {0} twice")]
    RepeatedOperand(usize),
    #[error("rotation angle must be finite, got {0}")]
    NonFiniteAngle(f64),
    #[error("cannot append a {right}-qubit circuit to a {left}-qubit circuit")]
    WidthMismatch { left: usize, right: usize },
}

/// A single gate. Angles are radians; `Rz(theta)` is `exp(-i theta Z / 2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Z(usize),
    T(usize),
    Tdg(usize),
    Cnot(usize, usize),
    Cz(usize, usize),
    Rz(usize, f64),
}

impl Gate {
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H(q)
            | Gate::S(q)
            | Gate::Sdg(q)
            | Gate::X(q)
            | Gate::Z(q)
            | Gate::T(q)
            | Gate::Tdg(q)
            | Gate::Rz(q, _) => (q, None),
            Gate::Cnot(a, b) | Gate::Cz(a, b) => (a, Some(b)),
        }
    }

    /// The corresponding conjugation rule, for gates in the Clifford set.
    pub fn as_clifford(&self) -> Option<CliffordGate> {
        match *self {
            Gate::H(q) => Some(CliffordGate::H(q)),
            Gate::S(q) => Some(CliffordGate::S(q)),
            Gate::Sdg(q) => Some(CliffordGate::Sdg(q)),
            Gate::X(q) => Some(CliffordGate::X(q)),
            Gate::Z(q) => Some(CliffordGate::Z(q)),
            Gate::Cnot(c, t) => Some(CliffordGate::Cnot(c, t)),
            Gate::Cz(a, b) => Some(CliffordGate::Cz(a, b)),
            Gate::T(_) | Gate::Tdg(_) | Gate::Rz(..) => None,
        }
    }
}

impl From<CliffordGate> for Gate {
    fn from(g: CliffordGate) -> Self {
        match g {
            CliffordGate::H(q) => Gate::H(q),
            CliffordGate::S(q) => Gate::S(q),
            CliffordGate::Sdg(q) => Gate::Sdg(q),
            CliffordGate::X(q) => Gate::X(q),
            CliffordGate::Z(q) => Gate::Z(q),
            CliffordGate::Cnot(c, t) => Gate::Cnot(c, t),
            CliffordGate::Cz(a, b) => Gate::Cz(a, b),
        }
    }
}

/// An ordered gate list on a fixed-width register.
///
/// `global_phase` records a factor `exp(i * global_phase)` relative to the
/// plain gate product; it stays 0 for every synthesized circuit and is only
/// adjusted by exact Clifford rewrites of Rz gates.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    global_phase: f64,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        assert!(n_qubits > 0, "circuit width must be positive");
        Self {
            n_qubits,
            gates: Vec::new(),
            global_phase: 0.0,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }

    pub fn add_global_phase(&mut self, phase: f64) {
        self.global_phase += phase;
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        let (a, b) = gate.qubits();
        let check = |q: usize| {
            if q >= self.n_qubits {
                Err(CircuitError::QubitOutOfRange {
                    qubit: q,
                    n: self.n_qubits,
                })
            } else {
                Ok(())
            }
        };
        check(a)?;
        if let Some(q) = b {
            check(q)?;
            if q == a {
                return Err(CircuitError::RepeatedOperand(a));
            }
        }
        if let Gate::Rz(_, angle) = gate {
            if !angle.is_finite() {
                return Err(CircuitError::NonFiniteAngle(angle));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn push_clifford(&mut self, gate: CliffordGate) -> Result<(), CircuitError> {
        self.push(gate.into())
    }

    pub fn append(&mut self, other: &Circuit) -> Result<(), CircuitError> {
        if self.n_qubits != other.n_qubits {
            return Err(CircuitError::WidthMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        self.global_phase += other.global_phase;
        Ok(())
    }

    /// Rewrites every CZ as H-CNOT-H on the target so all two-qubit gates
    /// are CNOTs. Unitary-preserving.
    pub fn with_cz_decomposed(&self) -> Circuit {
        let mut out = Circuit::new(self.n_qubits);
        out.global_phase = self.global_phase;
        for g in &self.gates {
            match *g {
                Gate::Cz(a, b) => {
                    out.gates.push(Gate::H(b));
                    out.gates.push(Gate::Cnot(a, b));
                    out.gates.push(Gate::H(b));
                }
                g => out.gates.push(g),
            }
        }
        out
    }
}

/// Exact per-kind gate tallies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub h: u64,
    pub s: u64,
    pub sdg: u64,
    pub x: u64,
    pub z: u64,
    pub t: u64,
    pub tdg: u64,
    pub cnot: u64,
    pub cz: u64,
    pub rz: u64,
}

impl GateCounts {
    pub fn total(&self) -> u64 {
        self.h + self.s + self.sdg + self.x + self.z + self.t + self.tdg + self.cnot + self.cz + self.rz
    }

    pub fn two_qubit(&self) -> u64 {
        self.cnot + self.cz
    }

    pub fn t_like(&self) -> u64 {
        self.t + self.tdg
    }
}

impl std::ops::Add for GateCounts {
    type Output = GateCounts;
    fn add(self, rhs: GateCounts) -> GateCounts {
        GateCounts {
            h: self.h + rhs.h,
            s: self.s + rhs.s,
            sdg: self.sdg + rhs.sdg,
            x: self.x + rhs.x,
            z: self.z + rhs.z,
            t: self.t + rhs.t,
            tdg: self.tdg + rhs.tdg,
            cnot: self.cnot + rhs.cnot,
            cz: self.cz + rhs.cz,
            rz: self.rz + rhs.rz,
        }
    }
}

impl std::ops::AddAssign for GateCounts {
    fn add_assign(&mut self, rhs: GateCounts) {
        *self = *self + rhs;
    }
}

/// Tallies each gate kind in order; Rz counts separately until transpilation.
pub fn count_gates(circuit: &Circuit) -> GateCounts {
    let mut c = GateCounts::default();
    for g in circuit.gates() {
        match g {
            Gate::H(_) => c.h += 1,
            Gate::S(_) => c.s += 1,
            Gate::Sdg(_) => c.sdg += 1,
            Gate::X(_) => c.x += 1,
            Gate::Z(_) => c.z += 1,
            Gate::T(_) => c.t += 1,
            Gate::Tdg(_) => c.tdg += 1,
            Gate::Cnot(..) => c.cnot += 1,
            Gate::Cz(..) => c.cz += 1,
            Gate::Rz(..) => c.rz += 1,
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_circuit_counts_zero() {
        let c = Circuit::new(3);
        assert_eq!(count_gates(&c), GateCounts::default());
        assert_eq!(count_gates(&c).total(), 0);
    }

    #[test]
    fn counting_is_composition_additive() {
        let mut a = Circuit::new(2);
        a.push(Gate::H(0)).unwrap();
        a.push(Gate::Cnot(0, 1)).unwrap();
        a.push(Gate::Rz(1, 0.25)).unwrap();
        let mut b = Circuit::new(2);
        b.push(Gate::Cnot(0, 1)).unwrap();
        b.push(Gate::T(0)).unwrap();

        let mut joined = a.clone();
        joined.append(&b).unwrap();
        assert_eq!(count_gates(&joined), count_gates(&a) + count_gates(&b));
    }

    #[test]
    fn push_validates_operands() {
        let mut c = Circuit::new(2);
        assert_eq!(
            c.push(Gate::H(2)),
            Err(CircuitError::QubitOutOfRange { qubit: 2, n: 2 })
        );
        assert_eq!(c.push(Gate::Cz(1, 1)), Err(CircuitError::RepeatedOperand(1)));
        assert!(matches!(
            c.push(Gate::Rz(0, f64::NAN)),
            Err(CircuitError::NonFiniteAngle(_))
        ));
        assert!(c.push(Gate::Cnot(1, 0)).is_ok());
    }

    #[test]
    fn cz_decomposition_counts() {
        let mut c = Circuit::new(2);
        c.push(Gate::Cz(0, 1)).unwrap();
        c.push(Gate::Cnot(0, 1)).unwrap();
        let d = c.with_cz_decomposed();
        let counts = count_gates(&d);
        assert_eq!(counts.cz, 0);
        assert_eq!(counts.cnot, 2);
        assert_eq!(counts.h, 2);
    }
}
