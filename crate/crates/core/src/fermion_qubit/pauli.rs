//! Pauli strings in symplectic (x, z) form and weighted sums of them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Terms with coefficient magnitude below this are dropped on canonicalization.
pub const PRUNE_TOL: f64 = 1e-12;

/// Tensor product of single-qubit Paulis on up to 64 qubits.
///
/// Qubit `q` carries `I` when neither `x` nor `z` has bit `q`, `X` for x only,
/// `Z` for z only and `Y` for both. As an operator the string equals
/// `i^{|x & z|} X^x Z^z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn new(n_qubits: usize, x: u64, z: u64) -> Result<Self> {
        if n_qubits > 64 {
            return Err(Error::InvalidState(format!("{n_qubits} qubits exceeds 64")));
        }
        let mask = low_mask(n_qubits);
        if (x | z) & !mask != 0 {
            return Err(Error::InvalidState("Pauli support outside register".into()));
        }
        Ok(Self { n_qubits, x, z })
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self { n_qubits, x: 0, z: 0 }
    }

    /// Parses letters `I`, `X`, `Y`, `Z`, qubit 0 first.
    pub fn from_letters(s: &str) -> Result<Self> {
        let mut x = 0u64;
        let mut z = 0u64;
        for (q, c) in s.chars().enumerate() {
            match c {
                'I' => {}
                'X' => x |= 1 << q,
                'Z' => z |= 1 << q,
                'Y' => {
                    x |= 1 << q;
                    z |= 1 << q;
                }
                _ => return Err(Error::InvalidState(format!("invalid Pauli letter {c:?}"))),
            }
        }
        Self::new(s.chars().count(), x, z)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn letter(&self, q: usize) -> char {
        match (self.x >> q & 1, self.z >> q & 1) {
            (0, 0) => 'I',
            (1, 0) => 'X',
            (0, 1) => 'Z',
            _ => 'Y',
        }
    }

    pub fn letters(&self) -> String {
        (0..self.n_qubits).map(|q| self.letter(q)).collect()
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Mask of qubits the string acts on non-trivially.
    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    /// Product `self * other` as `(phase, string)`.
    pub fn mul(&self, other: &PauliString) -> (Complex64, PauliString) {
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let a1 = (self.x & self.z).count_ones() as i64;
        let a2 = (other.x & other.z).count_ones() as i64;
        let a3 = (x & z).count_ones() as i64;
        let flips = (self.z & other.x).count_ones() as i64;
        let power = (a1 + a2 - a3 + 2 * flips).rem_euclid(4);
        (i_pow(power), PauliString { n_qubits: self.n_qubits, x, z })
    }

    /// `P|b> = phase(b) |b ^ x>`; returns the phase.
    #[inline]
    pub fn phase_on(&self, b: u64) -> Complex64 {
        let power = (self.x & self.z).count_ones() as i64 + 2 * (self.z & b).count_ones() as i64;
        i_pow(power.rem_euclid(4))
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }
}

impl Ord for PauliString {
    /// Lexicographic on the rendered letters (qubit 0 first, `I < X < Y < Z`).
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.n_qubits.min(other.n_qubits);
        for q in 0..n {
            let c = self.letter(q).cmp(&other.letter(q));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.n_qubits.cmp(&other.n_qubits)
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.letters())
    }
}

fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub(crate) fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Weighted sum of Pauli strings. Terms are kept sorted by string with no
/// duplicates and no coefficients below [`PRUNE_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<(PauliString, Complex64)>,
}

#[derive(Serialize)]
struct TermJson {
    coefficient: [f64; 2],
    letters: String,
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        Self { n_qubits, terms: Vec::new() }
    }

    /// Collects terms, merging duplicates and pruning near-zero coefficients.
    pub fn from_terms<I>(n_qubits: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliString, Complex64)>,
    {
        let mut acc: HashMap<PauliString, Complex64> = HashMap::new();
        for (p, c) in terms {
            if p.n_qubits() != n_qubits {
                return Err(Error::QubitMismatch { left: n_qubits, right: p.n_qubits() });
            }
            *acc.entry(p).or_default() += c;
        }
        Ok(Self::canonical(n_qubits, acc))
    }

    pub(crate) fn canonical(n_qubits: usize, acc: HashMap<PauliString, Complex64>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| c.norm() >= PRUNE_TOL).collect();
        terms.sort_by_key(|t| t.0);
        Self { n_qubits, terms }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(PauliString, Complex64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &PauliString) -> Complex64 {
        self.terms
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.terms[i].1)
            .unwrap_or_default()
    }

    /// Largest imaginary part among the coefficients.
    pub fn max_imaginary(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self) -> bool {
        self.max_imaginary() < PRUNE_TOL
    }

    pub fn scale(&self, factor: Complex64) -> PauliSum {
        let acc = self.terms.iter().map(|(p, c)| (*p, c * factor)).collect();
        Self::canonical(self.n_qubits, acc)
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::QubitMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        Self::from_terms(self.n_qubits, self.terms.iter().chain(other.terms.iter()).copied())
    }

    pub fn mul(&self, other: &PauliSum) -> Result<PauliSum> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::QubitMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        let mut acc: HashMap<PauliString, Complex64> = HashMap::new();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let (ph, r) = p.mul(q);
                *acc.entry(r).or_default() += ph * a * b;
            }
        }
        Ok(Self::canonical(self.n_qubits, acc))
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &PauliSum) -> Result<PauliSum> {
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        ab.add(&ba.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Dense `2^n x 2^n` matrix; row/column index bit `q` is qubit `q`.
    pub fn to_dense(&self) -> Result<DMatrix<Complex64>> {
        if self.n_qubits > 14 {
            return Err(Error::QubitCap(self.n_qubits));
        }
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        for (p, c) in &self.terms {
            for b in 0..dim as u64 {
                let row = (b ^ p.x_mask()) as usize;
                m[(row, b as usize)] += c * p.phase_on(b);
            }
        }
        Ok(m)
    }

    /// Debug dump: `[{"coefficient": [re, im], "letters": "IXYZ"}, ...]`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(p, c)| TermJson { coefficient: [c.re, c.im], letters: p.letters() })
            .collect();
        serde_json::to_value(terms).expect("Pauli terms serialize")
    }
}

/// `a - b`, canonicalized.
pub fn subtract(a: &PauliSum, b: &PauliSum) -> Result<PauliSum> {
    if a.n_qubits != b.n_qubits {
        return Err(Error::QubitMismatch { left: a.n_qubits, right: b.n_qubits });
    }
    PauliSum::from_terms(
        a.n_qubits,
        a.terms.iter().copied().chain(b.terms.iter().map(|(p, c)| (*p, -c))),
    )
}

/// Places an operator on a larger register: small-register qubit `i` lands on
/// `placement[i]`; all other qubits get the identity.
pub fn embed_operator(op: &PauliSum, placement: &[usize], n_total: usize) -> Result<PauliSum> {
    if placement.len() != op.n_qubits() {
        return Err(Error::Placement(format!(
            "placement has {} entries for a {}-qubit operator",
            placement.len(),
            op.n_qubits()
        )));
    }
    check_placement(placement, n_total)?;
    let remap = |mask: u64| {
        placement
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(0u64, |acc, (_, &t)| acc | 1 << t)
    };
    let terms = op
        .terms()
        .iter()
        .map(|(p, c)| Ok((PauliString::new(n_total, remap(p.x_mask()), remap(p.z_mask()))?, *c)))
        .collect::<Result<Vec<_>>>()?;
    PauliSum::from_terms(n_total, terms)
}

pub(crate) fn check_placement(placement: &[usize], n_total: usize) -> Result<()> {
    if n_total > 64 {
        return Err(Error::Placement(format!("{n_total} qubits exceeds 64")));
    }
    let mut used = 0u64;
    for &t in placement {
        if t >= n_total {
            return Err(Error::Placement(format!("target qubit {t} outside {n_total}-qubit register")));
        }
        if used >> t & 1 == 1 {
            return Err(Error::Placement(format!("qubit {t} targeted twice")));
        }
        used |= 1 << t;
    }
    Ok(())
}
