//! Compiler-style toolchain for simulating sparsified SYK Hamiltonians on
//! qubits: disorder sampling, Jordan-Wigner encoding, commuting-cluster
//! diagonalization, Trotter circuit assembly, OpenQASM 2.0 emission,
//! Clifford+T resource accounting, and dense-matrix certification of the
//! product-formula error bounds.

pub mod circuit;
pub mod clustering;
pub mod diagonalizer;
pub mod oracle;
pub mod pauli;
pub mod qasm;
pub mod report;
pub mod rng;
pub mod syk;
pub mod transpile;
pub mod trotter;

pub mod cli;
