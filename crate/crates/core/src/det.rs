//! Occupation-number determinants over spin orbitals.
//!
//! Spin orbital `2p` is spatial orbital `p` with alpha spin and `2p + 1` the
//! same orbital with beta spin. Bit `q` of a [`Determinant`] is the occupation
//! of spin orbital (and qubit) `q`, so a determinant's bits are also its
//! computational-basis index in a statevector.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ALPHA_MASK: u64 = 0x5555_5555_5555_5555;
pub const BETA_MASK: u64 = 0xAAAA_AAAA_AAAA_AAAA;

/// Occupation bitstring; bit `q` set means spin orbital `q` is occupied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Determinant(pub u64);

impl Determinant {
    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn n_electrons(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn n_alpha(self) -> usize {
        (self.0 & ALPHA_MASK).count_ones() as usize
    }

    pub fn n_beta(self) -> usize {
        (self.0 & BETA_MASK).count_ones() as usize
    }

    /// Twice the spin projection.
    pub fn ms2(self) -> i32 {
        self.n_alpha() as i32 - self.n_beta() as i32
    }

    pub fn is_occupied(self, q: usize) -> bool {
        self.0 >> q & 1 == 1
    }

    /// Number of spin orbitals that differ, halved: 0 for identical,
    /// 1 for a single excitation, 2 for a double, and so on.
    pub fn excitation_degree(self, other: Determinant) -> usize {
        ((self.0 ^ other.0).count_ones() / 2) as usize
    }

    /// Renders the first `width` spin orbitals, qubit 0 leftmost.
    pub fn to_bitstring(self, width: usize) -> String {
        (0..width).map(|q| if self.is_occupied(q) { '1' } else { '0' }).collect()
    }

    pub fn from_bitstring(s: &str) -> Result<Self> {
        if s.len() > 64 {
            return Err(Error::InvalidState(format!("bitstring of length {} exceeds 64", s.len())));
        }
        let mut bits = 0u64;
        for (q, c) in s.chars().enumerate() {
            match c {
                '1' => bits |= 1 << q,
                '0' => {}
                _ => return Err(Error::InvalidState(format!("invalid bitstring {s:?}"))),
            }
        }
        Ok(Self(bits))
    }

    /// Bitmask over spatial orbitals (bit `p`) that hold exactly one electron.
    pub fn singly_occupied(self) -> u64 {
        compress_even(self.0 & ALPHA_MASK) ^ compress_even((self.0 & BETA_MASK) >> 1)
    }

    /// Bitmask over spatial orbitals (bit `p`) that hold two electrons.
    pub fn doubly_occupied(self) -> u64 {
        compress_even(self.0 & ALPHA_MASK) & compress_even((self.0 & BETA_MASK) >> 1)
    }
}

impl fmt::Display for Determinant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = (64 - self.0.leading_zeros() as usize).max(1);
        write!(f, "{}", self.to_bitstring(width))
    }
}

/// Packs the even bits of `x` into the low half.
fn compress_even(x: u64) -> u64 {
    let mut out = 0;
    let mut rest = x & ALPHA_MASK;
    while rest != 0 {
        let q = rest.trailing_zeros();
        out |= 1 << (q / 2);
        rest &= rest - 1;
    }
    out
}

/// Spreads the low 32 bits of `x` onto the even bit positions.
pub fn spread_even(x: u64) -> u64 {
    let mut out = 0;
    let mut rest = x & 0xFFFF_FFFF;
    while rest != 0 {
        let p = rest.trailing_zeros();
        out |= 1 << (2 * p);
        rest &= rest - 1;
    }
    out
}

/// Sign of moving an operator past the occupied spin orbitals below `q`.
#[inline]
pub fn parity_below(bits: u64, q: usize) -> f64 {
    if (bits & ((1u64 << q) - 1)).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `a_q |bits>`, or `None` when `q` is empty.
#[inline]
pub fn annihilate(bits: u64, q: usize) -> Option<(u64, f64)> {
    if bits >> q & 1 == 0 {
        return None;
    }
    Some((bits & !(1 << q), parity_below(bits, q)))
}

/// `a_q^dagger |bits>`, or `None` when `q` is already occupied.
#[inline]
pub fn create(bits: u64, q: usize) -> Option<(u64, f64)> {
    if bits >> q & 1 == 1 {
        return None;
    }
    Some((bits | 1 << q, parity_below(bits, q)))
}

/// Particle-number and spin-projection sector of a register of `2 * n_orbitals` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sector {
    pub n_orbitals: usize,
    pub n_electrons: usize,
    pub ms2: i32,
}

impl Sector {
    pub fn new(n_orbitals: usize, n_electrons: usize, ms2: i32) -> Self {
        Self { n_orbitals, n_electrons, ms2 }
    }

    pub fn of_table(table: &crate::hamio::IntegralTable) -> Self {
        Self::new(table.n_orbitals(), table.n_electrons(), table.ms2())
    }

    pub fn n_qubits(&self) -> usize {
        2 * self.n_orbitals
    }

    pub fn n_alpha(&self) -> usize {
        ((self.n_electrons as i32 + self.ms2) / 2) as usize
    }

    pub fn n_beta(&self) -> usize {
        ((self.n_electrons as i32 - self.ms2) / 2) as usize
    }

    pub fn contains(&self, d: Determinant) -> bool {
        d.0 >> self.n_qubits() == 0 && d.n_electrons() == self.n_electrons && d.ms2() == self.ms2
    }

    pub fn check(&self, d: Determinant) -> Result<()> {
        if self.contains(d) {
            Ok(())
        } else {
            Err(Error::OutsideSector {
                bits: d.to_bitstring(self.n_qubits().max(64 - d.0.leading_zeros() as usize)),
                n_electrons: self.n_electrons,
                ms2: self.ms2,
            })
        }
    }

    /// Number of determinants, `C(M, n_alpha) * C(M, n_beta)`.
    pub fn dimension(&self) -> usize {
        binomial(self.n_orbitals, self.n_alpha()) * binomial(self.n_orbitals, self.n_beta())
    }

    /// All determinants of the sector in ascending bit order.
    pub fn determinants(&self) -> Vec<Determinant> {
        let alphas = combinations(self.n_orbitals, self.n_alpha());
        let betas = combinations(self.n_orbitals, self.n_beta());
        let mut out: Vec<Determinant> = alphas
            .iter()
            .flat_map(|&a| betas.iter().map(move |&b| Determinant(spread_even(a) | spread_even(b) << 1)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Aufbau determinant: lowest orbitals doubly occupied, excess alpha
    /// (or beta) electrons in the next orbitals up.
    pub fn aufbau(&self) -> Determinant {
        let a = (1u64 << self.n_alpha()) - 1;
        let b = (1u64 << self.n_beta()) - 1;
        Determinant(spread_even(a) | spread_even(b) << 1)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `n`-bit masks with exactly `k` bits set, ascending.
pub fn combinations(n: usize, k: usize) -> Vec<u64> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut v: u64 = (1 << k) - 1;
    let limit: u64 = 1 << n;
    while v < limit {
        out.push(v);
        // Gosper's hack
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    out
}
