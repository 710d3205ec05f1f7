//! Exact Pauli-string algebra in the binary symplectic representation.
//!
//! A string on `n` qubits is stored as packed x/z bit vectors plus a global
//! quarter phase: `P = i^phase * W(x, z)` where `W` is the Hermitian Pauli
//! word whose letter on qubit `q` is `I`, `X`, `Y` or `Z` according to the
//! `(x_q, z_q)` bit pair. Qubit 0 is the leftmost Kronecker factor.
//! Multiplication, commutation tests and Clifford conjugation are all exact,
//! including the phase.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PauliError {
    #[error("qubit count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("qubit index {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("two-qubit gate needs distinct operands, got {0} twice")]
    RepeatedOperand(usize),
    #[error("invalid Pauli label: {0}")]
    BadLabel(String),
}

/// Single-qubit Pauli letter, decoded from an `(x, z)` bit pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    fn bits(self) -> (bool, bool) {
        match self {
            PauliLetter::I => (false, false),
            PauliLetter::X => (true, false),
            PauliLetter::Y => (true, true),
            PauliLetter::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (true, true) => PauliLetter::Y,
            (false, true) => PauliLetter::Z,
        }
    }
}

/// Clifford gates with an exact conjugation rule on Pauli strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliffordGate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Z(usize),
    Cnot(usize, usize),
    Cz(usize, usize),
}

impl CliffordGate {
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            CliffordGate::H(q)
            | CliffordGate::S(q)
            | CliffordGate::Sdg(q)
            | CliffordGate::X(q)
            | CliffordGate::Z(q) => (q, None),
            CliffordGate::Cnot(a, b) | CliffordGate::Cz(a, b) => (a, Some(b)),
        }
    }

    /// Inverse gate; every supported gate is its own inverse except S/S†.
    pub fn inverse(&self) -> CliffordGate {
        match *self {
            CliffordGate::S(q) => CliffordGate::Sdg(q),
            CliffordGate::Sdg(q) => CliffordGate::S(q),
            g => g,
        }
    }
}

/// An n-qubit Pauli operator with exact quarter-phase tracking.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    /// Global phase exponent: the operator is `i^phase * W(x, z)`.
    phase: u8,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

fn get_bit(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(words: &mut [u64], i: usize, value: bool) {
    let mask = 1u64 << (i % 64);
    if value {
        words[i / 64] |= mask;
    } else {
        words[i / 64] &= !mask;
    }
}

fn xor_bit(words: &mut [u64], i: usize, value: bool) {
    if value {
        words[i / 64] ^= 1u64 << (i % 64);
    }
}

fn popcount_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(&l, &r)| (l & r).count_ones() as usize).sum()
}

impl PauliString {
    /// The identity on `n` qubits.
    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "qubit count must be positive");
        Self {
            n,
            x: vec![0; words_for(n)],
            z: vec![0; words_for(n)],
            phase: 0,
        }
    }

    /// A single Pauli letter at `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, letter: PauliLetter) -> Result<Self, PauliError> {
        let mut p = Self::identity(n);
        if qubit >= n {
            return Err(PauliError::QubitOutOfRange { qubit, n });
        }
        let (x, z) = letter.bits();
        set_bit(&mut p.x, qubit, x);
        set_bit(&mut p.z, qubit, z);
        Ok(p)
    }

    pub fn from_letters(letters: &[PauliLetter]) -> Self {
        assert!(!letters.is_empty(), "qubit count must be positive");
        let mut p = Self::identity(letters.len());
        for (q, letter) in letters.iter().enumerate() {
            let (x, z) = letter.bits();
            set_bit(&mut p.x, q, x);
            set_bit(&mut p.z, q, z);
        }
        p
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn x_bit(&self, qubit: usize) -> bool {
        get_bit(&self.x, qubit)
    }

    pub fn z_bit(&self, qubit: usize) -> bool {
        get_bit(&self.z, qubit)
    }

    pub fn letter(&self, qubit: usize) -> PauliLetter {
        PauliLetter::from_bits(self.x_bit(qubit), self.z_bit(qubit))
    }

    /// Phase exponent `k` of the global factor `i^k`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn set_phase(&mut self, phase: u8) {
        self.phase = phase & 3;
    }

    pub fn is_identity_word(&self) -> bool {
        self.x.iter().all(|&w| w == 0) && self.z.iter().all(|&w| w == 0)
    }

    /// Hermitian strings carry a real sign: phase 0 or 2.
    pub fn is_hermitian(&self) -> bool {
        self.phase & 1 == 0
    }

    /// `+1.0` or `-1.0` for a Hermitian string; `None` otherwise.
    pub fn hermitian_sign(&self) -> Option<f64> {
        match self.phase {
            0 => Some(1.0),
            2 => Some(-1.0),
            _ => None,
        }
    }

    /// Same word with phase reset to 0.
    pub fn with_zero_phase(&self) -> PauliString {
        let mut p = self.clone();
        p.phase = 0;
        p
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(&xw, &zw)| (xw | zw).count_ones() as usize)
            .sum()
    }

    /// Qubits acted on non-trivially, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.x_bit(q) || self.z_bit(q)).collect()
    }

    fn y_count(&self) -> usize {
        popcount_and(&self.x, &self.z)
    }

    /// Exact operator product `self * other`, phase included.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString, PauliError> {
        if self.n != other.n {
            return Err(PauliError::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        // i^a W(x1,z1) * i^b W(x2,z2) = i^(a+b+|y1|+|y2|+2(z1.x2)-|y12|) W(x1^x2, z1^z2)
        let mut total = usize::from(self.phase)
            + usize::from(other.phase)
            + self.y_count()
            + other.y_count()
            + 2 * popcount_and(&self.z, &other.x);
        let x: Vec<u64> = self.x.iter().zip(&other.x).map(|(&a, &b)| a ^ b).collect();
        let z: Vec<u64> = self.z.iter().zip(&other.z).map(|(&a, &b)| a ^ b).collect();
        let y_out: usize = x.iter().zip(&z).map(|(&a, &b)| (a & b).count_ones() as usize).sum();
        total += 3 * y_out; // -|y12| mod 4
        Ok(PauliString {
            n: self.n,
            x,
            z,
            phase: (total & 3) as u8,
        })
    }

    /// Adjoint, which is also the inverse since every word squares to 1.
    pub fn adjoint(&self) -> PauliString {
        let mut p = self.clone();
        p.phase = ((4 - u16::from(self.phase)) & 3) as u8;
        p
    }

    /// True iff the symplectic form `<x1,z2> + <z1,x2>` vanishes mod 2.
    pub fn commutes(&self, other: &PauliString) -> Result<bool, PauliError> {
        if self.n != other.n {
            return Err(PauliError::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let s = popcount_and(&self.x, &other.z) + popcount_and(&self.z, &other.x);
        Ok(s % 2 == 0)
    }

    /// Conjugation `g P g^dagger` with exact sign tracking.
    pub fn conjugate_by_gate(&self, gate: &CliffordGate) -> Result<PauliString, PauliError> {
        let (a, b) = gate.qubits();
        let check = |q: usize| {
            if q >= self.n {
                Err(PauliError::QubitOutOfRange { qubit: q, n: self.n })
            } else {
                Ok(())
            }
        };
        check(a)?;
        if let Some(q) = b {
            check(q)?;
            if q == a {
                return Err(PauliError::RepeatedOperand(a));
            }
        }

        let mut p = self.clone();
        let flip;
        match *gate {
            CliffordGate::H(q) => {
                let (xq, zq) = (p.x_bit(q), p.z_bit(q));
                flip = xq && zq; // Y -> -Y
                set_bit(&mut p.x, q, zq);
                set_bit(&mut p.z, q, xq);
            }
            CliffordGate::S(q) => {
                let (xq, zq) = (p.x_bit(q), p.z_bit(q));
                flip = xq && zq; // Y -> -X
                xor_bit(&mut p.z, q, xq);
            }
            CliffordGate::Sdg(q) => {
                let (xq, zq) = (p.x_bit(q), p.z_bit(q));
                flip = xq && !zq; // X -> -Y
                xor_bit(&mut p.z, q, xq);
            }
            CliffordGate::X(q) => {
                flip = p.z_bit(q); // Z -> -Z, Y -> -Y
            }
            CliffordGate::Z(q) => {
                flip = p.x_bit(q); // X -> -X, Y -> -Y
            }
            CliffordGate::Cnot(c, t) => {
                let (xc, zc) = (p.x_bit(c), p.z_bit(c));
                let (xt, zt) = (p.x_bit(t), p.z_bit(t));
                flip = xc && zt && (xt == zc);
                xor_bit(&mut p.x, t, xc);
                xor_bit(&mut p.z, c, zt);
            }
            CliffordGate::Cz(a, b) => {
                let (xa, za) = (p.x_bit(a), p.z_bit(a));
                let (xb, zb) = (p.x_bit(b), p.z_bit(b));
                flip = xa && xb && (za != zb);
                xor_bit(&mut p.z, a, xb);
                xor_bit(&mut p.z, b, xa);
            }
        }
        if flip {
            p.phase = (p.phase + 2) & 3;
        }
        Ok(p)
    }

    /// Conjugates through a gate sequence applied in list order.
    pub fn conjugate_by_circuit<'a, I>(&self, gates: I) -> Result<PauliString, PauliError>
    where
        I: IntoIterator<Item = &'a CliffordGate>,
    {
        let mut p = self.clone();
        for g in gates {
            p = p.conjugate_by_gate(g)?;
        }
        Ok(p)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}")?;
        for q in 0..self.n {
            let c = match self.letter(q) {
                PauliLetter::I => 'I',
                PauliLetter::X => 'X',
                PauliLetter::Y => 'Y',
                PauliLetter::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    /// Parses the text label form: optional sign prefix (`+`, `-`, `+i`,
    /// `-i`) followed by one letter per qubit, qubit 0 leftmost.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PauliError::BadLabel(s.to_owned());
        let (phase, rest) = if let Some(r) = s.strip_prefix("+i") {
            (1u8, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (3u8, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (0u8, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (2u8, r)
        } else {
            (0u8, s)
        };
        if rest.is_empty() {
            return Err(bad());
        }
        let mut letters = Vec::with_capacity(rest.len());
        for c in rest.chars() {
            letters.push(match c {
                'I' => PauliLetter::I,
                'X' => PauliLetter::X,
                'Y' => PauliLetter::Y,
                'Z' => PauliLetter::Z,
                _ => return Err(bad()),
            });
        }
        let mut p = PauliString::from_letters(&letters);
        p.phase = phase;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(label: &str) -> PauliString {
        label.parse().unwrap()
    }

    #[test]
    fn single_qubit_products() {
        // XZ = -iY
        assert_eq!(p("X").multiply(&p("Z")).unwrap(), p("-iY"));
        // ZX = iY
        assert_eq!(p("Z").multiply(&p("X")).unwrap(), p("+iY"));
        // XY = iZ, YX = -iZ
        assert_eq!(p("X").multiply(&p("Y")).unwrap(), p("+iZ"));
        assert_eq!(p("Y").multiply(&p("X")).unwrap(), p("-iZ"));
        // YZ = iX
        assert_eq!(p("Y").multiply(&p("Z")).unwrap(), p("+iX"));
        // Every letter squares to +identity.
        for label in ["X", "Y", "Z", "I"] {
            assert_eq!(p(label).multiply(&p(label)).unwrap(), p("I"));
        }
    }

    #[test]
    fn multiply_by_identity_is_noop() {
        let q = p("-iZXYI");
        assert_eq!(q.multiply(&p("IIII")).unwrap(), q);
        assert_eq!(p("IIII").multiply(&q).unwrap(), q);
    }

    #[test]
    fn two_qubit_example_from_single_qubit_identities() {
        // (X otimes 1)(Z otimes 1) = -i (Y otimes 1)
        let r = p("XI").multiply(&p("ZI")).unwrap();
        assert_eq!(r, p("-iYI"));
        assert_eq!(r.phase(), 3);
    }

    #[test]
    fn multiply_then_inverse_restores_operand() {
        let strings = ["+XYZI", "-iZZXY", "+iIIYX", "-YXIZ"];
        for a in strings {
            for b in strings {
                let pa = p(a);
                let pb = p(b);
                let prod = pa.multiply(&pb).unwrap();
                assert_eq!(prod.multiply(&pb.adjoint()).unwrap(), pa, "{a} * {b}");
            }
        }
    }

    #[test]
    fn size_mismatch_is_rejected() {
        assert_eq!(
            p("XX").multiply(&p("X")),
            Err(PauliError::SizeMismatch { left: 2, right: 1 })
        );
        assert!(p("XX").commutes(&p("X")).is_err());
    }

    #[test]
    fn commutation_examples() {
        assert!(p("XX").commutes(&p("ZZ")).unwrap());
        assert!(!p("XI").commutes(&p("ZI")).unwrap());
        assert!(p("XI").commutes(&p("IZ")).unwrap());
        assert!(p("ZZ").commutes(&p("II")).unwrap());
    }

    #[test]
    fn weight_counts_nontrivial_sites() {
        assert_eq!(p("IIIII").weight(), 0);
        assert_eq!(p("ZZXII").weight(), 3);
        assert_eq!(p("-iYYYYY").weight(), 5);
        assert_eq!(p("ZZXII").support(), vec![0, 1, 2]);
    }

    #[test]
    fn hadamard_exchanges_x_and_z() {
        let h = CliffordGate::H(0);
        assert_eq!(p("X").conjugate_by_gate(&h).unwrap(), p("Z"));
        assert_eq!(p("Z").conjugate_by_gate(&h).unwrap(), p("X"));
        assert_eq!(p("Y").conjugate_by_gate(&h).unwrap(), p("-Y"));
    }

    #[test]
    fn phase_gate_action() {
        let s = CliffordGate::S(0);
        assert_eq!(p("X").conjugate_by_gate(&s).unwrap(), p("Y"));
        assert_eq!(p("Y").conjugate_by_gate(&s).unwrap(), p("-X"));
        assert_eq!(p("Z").conjugate_by_gate(&s).unwrap(), p("Z"));
        let sdg = CliffordGate::Sdg(0);
        assert_eq!(p("X").conjugate_by_gate(&sdg).unwrap(), p("-Y"));
        assert_eq!(p("Y").conjugate_by_gate(&sdg).unwrap(), p("X"));
    }

    #[test]
    fn cnot_propagation() {
        let cx = CliffordGate::Cnot(0, 1);
        assert_eq!(p("XI").conjugate_by_gate(&cx).unwrap(), p("XX"));
        assert_eq!(p("IZ").conjugate_by_gate(&cx).unwrap(), p("ZZ"));
        assert_eq!(p("IX").conjugate_by_gate(&cx).unwrap(), p("IX"));
        assert_eq!(p("ZI").conjugate_by_gate(&cx).unwrap(), p("ZI"));
    }

    #[test]
    fn gate_operand_validation() {
        let q = p("XX");
        assert!(matches!(
            q.conjugate_by_gate(&CliffordGate::H(5)),
            Err(PauliError::QubitOutOfRange { qubit: 5, n: 2 })
        ));
        assert_eq!(
            q.conjugate_by_gate(&CliffordGate::Cnot(1, 1)),
            Err(PauliError::RepeatedOperand(1))
        );
    }

    #[test]
    fn conjugation_preserves_commutation() {
        let strings: Vec<PauliString> =
            ["+XYZI", "-iZZXY", "+iIIYX", "-YXIZ", "+ZIIZ"].iter().map(|s| p(s)).collect();
        let gates = [
            CliffordGate::H(1),
            CliffordGate::S(2),
            CliffordGate::Sdg(0),
            CliffordGate::X(3),
            CliffordGate::Z(1),
            CliffordGate::Cnot(0, 2),
            CliffordGate::Cz(1, 3),
        ];
        for g in &gates {
            for a in &strings {
                for b in &strings {
                    let ca = a.conjugate_by_gate(g).unwrap();
                    let cb = b.conjugate_by_gate(g).unwrap();
                    assert_eq!(
                        a.commutes(b).unwrap(),
                        ca.commutes(&cb).unwrap(),
                        "gate {g:?} on {a} vs {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn label_round_trip() {
        for label in ["+XYZI", "-iZZXY", "+iIIYX", "-YXIZ", "+I"] {
            let parsed = p(label);
            assert_eq!(parsed.to_string(), label);
        }
        // Bare labels default to +.
        assert_eq!(p("XYZ").to_string(), "+XYZ");
    }

    #[test]
    fn bad_labels_are_rejected() {
        for bad in ["", "+", "-i", "XQ", "xyz", "+iq", "X Z"] {
            assert!(bad.parse::<PauliString>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn packed_words_beyond_64_qubits() {
        let n = 130;
        let mut letters = vec![PauliLetter::I; n];
        letters[0] = PauliLetter::X;
        letters[64] = PauliLetter::Y;
        letters[129] = PauliLetter::Z;
        let q = PauliString::from_letters(&letters);
        assert_eq!(q.weight(), 3);
        assert_eq!(q.letter(64), PauliLetter::Y);
        let sq = q.multiply(&q).unwrap();
        assert!(sq.is_identity_word());
        assert_eq!(sq.phase(), 0);
    }
}
