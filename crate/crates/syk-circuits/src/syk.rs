//! Disorder sampling for dense/sparse SYK instances and their Jordan-Wigner
//! images as Pauli Hamiltonians.
//!
//! An instance stores one ordered quadruple per retained quartic term. With
//! retention probability `p` every coupling is Gaussian with variance
//! `6 J^2 / (p N^3)`, so the dense model is the `p = 1` limit. Each quadruple
//! owns a dedicated RNG stream addressed by its lexicographic rank; the
//! uniform retention deviate is drawn even when `p = 1`, which keeps coupling
//! streams aligned between dense and sparse runs of the same seed.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pauli::{PauliError, PauliLetter, PauliString};
use crate::rng::CounterRng;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("Majorana count must be an even integer >= 4, got {0}")]
    InvalidMajoranaCount(usize),
    #[error("retention probability must lie in (0, 1], got {0}")]
    InvalidProbability(f64),
    #[error("disorder strength must be positive and finite, got {0}")]
    InvalidDisorderStrength(f64),
    #[error("hypergraph degree target must be positive and finite, got {0}")]
    InvalidKTarget(f64),
    #[error("Majorana index {index} out of range 1..={n}")]
    MajoranaIndexOutOfRange { index: usize, n: usize },
    #[error("term indices must satisfy a < b < c < d, got ({a}, {b}, {c}, {d})")]
    UnorderedQuadruple { a: u32, b: u32, c: u32, d: u32 },
    #[error("duplicate quadruple ({a}, {b}, {c}, {d})")]
    DuplicateQuadruple { a: u32, b: u32, c: u32, d: u32 },
    #[error("coupling must be finite")]
    NonFiniteCoupling,
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// One quartic term `J_abcd * chi_a chi_b chi_c chi_d` with `a < b < c < d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SykTerm {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    #[serde(rename = "J")]
    pub coupling: f64,
}

/// One disorder realization of the (sparsified) SYK model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SykInstance {
    /// Majorana count N; the qubit count is N/2.
    #[serde(rename = "N")]
    pub n_majoranas: usize,
    /// Disorder strength (energy units).
    #[serde(rename = "J")]
    pub j: f64,
    /// Retention probability actually used for sampling.
    pub p: f64,
    /// Requested hypergraph degree, when `p` was derived from one.
    pub k_target: Option<f64>,
    pub seed: u64,
    pub terms: Vec<SykTerm>,
}

/// How to choose the retention probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sparsity {
    Probability(f64),
    /// Average interaction-hypergraph degree k; converted via p = 24k/N^3.
    KTarget(f64),
}

/// Large-N relation between hypergraph degree and retention probability,
/// clamped to the dense limit.
pub fn p_from_k_target(k: f64, n_majoranas: usize) -> Result<f64, ModelError> {
    if !(k.is_finite() && k > 0.0) {
        return Err(ModelError::InvalidKTarget(k));
    }
    let n = n_majoranas as f64;
    Ok((24.0 * k / (n * n * n)).min(1.0))
}

fn check_n(n_majoranas: usize) -> Result<(), ModelError> {
    if n_majoranas < 4 || n_majoranas % 2 != 0 {
        return Err(ModelError::InvalidMajoranaCount(n_majoranas));
    }
    Ok(())
}

/// Samples one reproducible disorder realization.
///
/// Quadruples are visited in lexicographic order; the deviates for a
/// quadruple depend only on `(seed, rank)`, so the instance is identical no
/// matter how iteration is ordered or sharded.
pub fn sample_instance(
    n_majoranas: usize,
    j: f64,
    sparsity: Sparsity,
    seed: u64,
) -> Result<SykInstance, ModelError> {
    check_n(n_majoranas)?;
    if !(j.is_finite() && j > 0.0) {
        return Err(ModelError::InvalidDisorderStrength(j));
    }
    let (p, k_target) = match sparsity {
        Sparsity::Probability(p) => (p, None),
        Sparsity::KTarget(k) => (p_from_k_target(k, n_majoranas)?, Some(k)),
    };
    if !(p.is_finite() && p > 0.0 && p <= 1.0) {
        return Err(ModelError::InvalidProbability(p));
    }

    let n = n_majoranas as f64;
    let sigma = j * (6.0 / (p * n * n * n)).sqrt();
    let rng = CounterRng::new(seed);
    let mut terms = Vec::new();
    let mut rank: u64 = 0;
    for a in 1..=n_majoranas as u32 {
        for b in a + 1..=n_majoranas as u32 {
            for c in b + 1..=n_majoranas as u32 {
                for d in c + 1..=n_majoranas as u32 {
                    // One uniform per quadruple even at p = 1.
                    let u = rng.uniform(rank, 0);
                    if u <= p {
                        let g = rng.gaussian(rank, 1);
                        terms.push(SykTerm {
                            a,
                            b,
                            c,
                            d,
                            coupling: sigma * g,
                        });
                    }
                    rank += 1;
                }
            }
        }
    }
    Ok(SykInstance {
        n_majoranas,
        j,
        p,
        k_target,
        seed,
        terms,
    })
}

impl SykInstance {
    /// Structural validation, used on every deserialized instance.
    pub fn validate(&self) -> Result<(), ModelError> {
        check_n(self.n_majoranas)?;
        if !(self.j.is_finite() && self.j > 0.0) {
            return Err(ModelError::InvalidDisorderStrength(self.j));
        }
        if !(self.p.is_finite() && self.p > 0.0 && self.p <= 1.0) {
            return Err(ModelError::InvalidProbability(self.p));
        }
        if let Some(k) = self.k_target {
            if !(k.is_finite() && k > 0.0) {
                return Err(ModelError::InvalidKTarget(k));
            }
        }
        let n = self.n_majoranas as u32;
        let mut seen = std::collections::BTreeSet::new();
        for t in &self.terms {
            if !(t.a < t.b && t.b < t.c && t.c < t.d) {
                return Err(ModelError::UnorderedQuadruple {
                    a: t.a,
                    b: t.b,
                    c: t.c,
                    d: t.d,
                });
            }
            if t.a < 1 || t.d > n {
                return Err(ModelError::MajoranaIndexOutOfRange {
                    index: t.d as usize,
                    n: self.n_majoranas,
                });
            }
            if !t.coupling.is_finite() {
                return Err(ModelError::NonFiniteCoupling);
            }
            if !seen.insert((t.a, t.b, t.c, t.d)) {
                return Err(ModelError::DuplicateQuadruple {
                    a: t.a,
                    b: t.b,
                    c: t.c,
                    d: t.d,
                });
            }
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_majoranas / 2
    }

    /// Serializes to the instance file format; round-trips exactly.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }

    /// Parses and validates an instance file.
    pub fn from_json(text: &str) -> Result<Self, String> {
        let inst: SykInstance = serde_json::from_str(text).map_err(|e| e.to_string())?;
        inst.validate().map_err(|e| e.to_string())?;
        Ok(inst)
    }
}

/// A real-coefficient Pauli decomposition `H = sum_i c_i P_i` on `n_qubits`.
///
/// Every stored string has canonical phase 0; signs live in the coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliHamiltonian {
    pub n_qubits: usize,
    pub terms: Vec<(f64, PauliString)>,
}

impl PauliHamiltonian {
    /// Sub-Hamiltonian over a subset of term indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> PauliHamiltonian {
        PauliHamiltonian {
            n_qubits: self.n_qubits,
            terms: indices.iter().map(|&i| self.terms[i].clone()).collect(),
        }
    }
}

/// Jordan-Wigner image of a single Majorana operator (1-based index):
/// `chi_{2r-1} = Z_1 ... Z_{r-1} X_r`, `chi_{2r} = Z_1 ... Z_{r-1} Y_r`.
pub fn majorana_to_pauli(index: usize, n_majoranas: usize) -> Result<PauliString, ModelError> {
    check_n(n_majoranas)?;
    if index < 1 || index > n_majoranas {
        return Err(ModelError::MajoranaIndexOutOfRange {
            index,
            n: n_majoranas,
        });
    }
    let n_qubits = n_majoranas / 2;
    let site = (index + 1) / 2 - 1; // zero-based qubit r-1
    let mut letters = vec![PauliLetter::I; n_qubits];
    for l in letters.iter_mut().take(site) {
        *l = PauliLetter::Z;
    }
    letters[site] = if index % 2 == 1 {
        PauliLetter::X
    } else {
        PauliLetter::Y
    };
    Ok(PauliString::from_letters(&letters))
}

/// Maps every quartic term through Jordan-Wigner. Each image is Hermitian;
/// the tracked sign is folded into the real coefficient and the stored
/// string is left with phase 0.
pub fn jordan_wigner(instance: &SykInstance) -> Result<PauliHamiltonian, ModelError> {
    instance.validate()?;
    let n = instance.n_majoranas;
    let mut terms = Vec::with_capacity(instance.terms.len());
    for t in &instance.terms {
        let product = majorana_to_pauli(t.a as usize, n)?
            .multiply(&majorana_to_pauli(t.b as usize, n)?)?
            .multiply(&majorana_to_pauli(t.c as usize, n)?)?
            .multiply(&majorana_to_pauli(t.d as usize, n)?)?;
        let sign = product
            .hermitian_sign()
            .expect("product of four distinct Majoranas is Hermitian");
        terms.push((sign * t.coupling, product.with_zero_phase()));
    }
    Ok(PauliHamiltonian {
        n_qubits: n / 2,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_quadruples(n: usize) -> usize {
        n * (n - 1) * (n - 2) * (n - 3) / 24
    }

    #[test]
    fn dense_limit_keeps_every_quadruple() {
        let inst = sample_instance(8, 1.0, Sparsity::Probability(1.0), 1).unwrap();
        assert_eq!(inst.terms.len(), 70);
        assert_eq!(count_quadruples(8), 70);
        inst.validate().unwrap();
    }

    #[test]
    fn k_target_conversion() {
        let p = p_from_k_target(8.7, 6).unwrap();
        assert!((p - 24.0 * 8.7 / 216.0).abs() < 1e-15);
        assert!((p - 0.9666666666666667).abs() < 1e-12);
        // Clamps to the dense model for small N / large k.
        assert_eq!(p_from_k_target(100.0, 6).unwrap(), 1.0);
        let inst = sample_instance(6, 1.0, Sparsity::KTarget(8.7), 7).unwrap();
        assert_eq!(inst.k_target, Some(8.7));
        assert!((inst.p - 0.9666666666666667).abs() < 1e-12);
    }

    #[test]
    fn sampling_is_deterministic_and_seed_sensitive() {
        let a = sample_instance(10, 1.3, Sparsity::Probability(0.4), 99).unwrap();
        let b = sample_instance(10, 1.3, Sparsity::Probability(0.4), 99).unwrap();
        assert_eq!(a, b);
        let c = sample_instance(10, 1.3, Sparsity::Probability(0.4), 100).unwrap();
        assert_ne!(a, c);
    }

    /// First two streams of seed 1, checked against an independent
    /// Philox4x32-10 + Box-Muller reference evaluation.
    #[test]
    fn sampler_matches_reference_stream_values() {
        let inst = sample_instance(6, 1.0, Sparsity::Probability(1.0), 1).unwrap();
        // rank 0 is quadruple (1,2,3,4); sigma = sqrt(6/216) = 1/6.
        let first = inst.terms[0];
        assert_eq!((first.a, first.b, first.c, first.d), (1, 2, 3, 4));
        assert!((first.coupling - (-0.2463131074599137)).abs() < 1e-12);
        let second = inst.terms[1];
        assert_eq!((second.a, second.b, second.c, second.d), (1, 2, 3, 5));
        assert!(
            (second.coupling - 0.16666666666666666 * (-0.2135079266561007)).abs() < 1e-12
        );
    }

    #[test]
    fn retention_statistics_track_p() {
        // Small smoke version of the acceptance-level statistics check.
        let n_seeds = 400;
        let p = 0.3;
        let mut counts = 0usize;
        for seed in 0..n_seeds {
            let inst = sample_instance(12, 1.0, Sparsity::Probability(p), seed).unwrap();
            counts += inst.terms.len();
        }
        let total = count_quadruples(12) as f64 * n_seeds as f64;
        let mean_rate = counts as f64 / total;
        let sigma = (p * (1.0 - p) / total).sqrt();
        assert!(
            (mean_rate - p).abs() < 4.0 * sigma,
            "rate {mean_rate} vs p {p} (sigma {sigma})"
        );
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(matches!(
            sample_instance(7, 1.0, Sparsity::Probability(0.5), 0),
            Err(ModelError::InvalidMajoranaCount(7))
        ));
        assert!(matches!(
            sample_instance(8, 1.0, Sparsity::Probability(0.0), 0),
            Err(ModelError::InvalidProbability(_))
        ));
        assert!(matches!(
            sample_instance(8, 1.0, Sparsity::Probability(1.5), 0),
            Err(ModelError::InvalidProbability(_))
        ));
        assert!(matches!(
            sample_instance(8, -1.0, Sparsity::Probability(0.5), 0),
            Err(ModelError::InvalidDisorderStrength(_))
        ));
        assert!(matches!(
            sample_instance(8, 1.0, Sparsity::KTarget(-2.0), 0),
            Err(ModelError::InvalidKTarget(_))
        ));
    }

    #[test]
    fn majorana_images_match_jw_table() {
        assert_eq!(majorana_to_pauli(1, 6).unwrap().to_string(), "+XII");
        assert_eq!(majorana_to_pauli(2, 6).unwrap().to_string(), "+YII");
        assert_eq!(majorana_to_pauli(5, 6).unwrap().to_string(), "+ZZX");
        assert_eq!(majorana_to_pauli(6, 6).unwrap().to_string(), "+ZZY");
        // Weight of chi_{2r-1} is r.
        for r in 1..=5 {
            assert_eq!(majorana_to_pauli(2 * r - 1, 10).unwrap().weight(), r);
            assert_eq!(majorana_to_pauli(2 * r, 10).unwrap().weight(), r);
        }
        assert!(majorana_to_pauli(0, 6).is_err());
        assert!(majorana_to_pauli(7, 6).is_err());
    }

    #[test]
    fn jordan_wigner_first_quadruple() {
        // chi1 chi2 chi3 chi4 = (X)(Y)(ZX)(ZY) products = -(Z Z I I).
        let inst = SykInstance {
            n_majoranas: 8,
            j: 1.0,
            p: 1.0,
            k_target: None,
            seed: 0,
            terms: vec![SykTerm {
                a: 1,
                b: 2,
                c: 3,
                d: 4,
                coupling: 0.5,
            }],
        };
        let h = jordan_wigner(&inst).unwrap();
        assert_eq!(h.n_qubits, 4);
        assert_eq!(h.terms.len(), 1);
        let (coeff, op) = &h.terms[0];
        assert_eq!(op.to_string(), "+ZZII");
        assert!((coeff - (-0.5)).abs() < 1e-15);
    }

    #[test]
    fn jordan_wigner_images_are_hermitian_with_phase_zero() {
        let inst = sample_instance(10, 1.0, Sparsity::KTarget(8.7), 3).unwrap();
        let h = jordan_wigner(&inst).unwrap();
        assert_eq!(h.terms.len(), inst.terms.len());
        for (coeff, op) in &h.terms {
            assert!(coeff.is_finite());
            assert_eq!(op.phase(), 0);
        }
    }

    #[test]
    fn empty_instance_maps_to_empty_hamiltonian() {
        let inst = SykInstance {
            n_majoranas: 6,
            j: 1.0,
            p: 0.5,
            k_target: None,
            seed: 0,
            terms: vec![],
        };
        assert!(jordan_wigner(&inst).unwrap().terms.is_empty());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let inst = sample_instance(8, 1.0, Sparsity::KTarget(8.7), 42).unwrap();
        let text = inst.to_json();
        let back = SykInstance::from_json(&text).unwrap();
        assert_eq!(inst, back);
        assert_eq!(text, back.to_json());
    }

    #[test]
    fn validation_rejects_malformed_instances() {
        let mut inst = sample_instance(8, 1.0, Sparsity::Probability(1.0), 0).unwrap();
        inst.terms[0].a = inst.terms[0].b;
        assert!(matches!(inst.validate(), Err(ModelError::UnorderedQuadruple { .. })));

        let mut inst = sample_instance(8, 1.0, Sparsity::Probability(1.0), 0).unwrap();
        inst.terms[3] = inst.terms[2];
        assert!(matches!(inst.validate(), Err(ModelError::DuplicateQuadruple { .. })));

        let mut inst = sample_instance(8, 1.0, Sparsity::Probability(1.0), 0).unwrap();
        inst.terms[0].d = 9;
        assert!(matches!(
            inst.validate(),
            Err(ModelError::MajoranaIndexOutOfRange { .. })
        ));

        let mut inst = sample_instance(8, 1.0, Sparsity::Probability(1.0), 0).unwrap();
        inst.terms[0].coupling = f64::NAN;
        assert!(matches!(inst.validate(), Err(ModelError::NonFiniteCoupling)));
    }
}
