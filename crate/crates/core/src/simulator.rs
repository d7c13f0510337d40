//! Statevector simulation of the time-evolution sampling circuit.
//!
//! The register is prepared by injecting an eigenvector of the small-space
//! Hamiltonian onto its sub-register (extra core orbitals set to `|1>`),
//! evolved with a first-order product formula under a truncated Pauli
//! operator, and measured in the computational basis.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::det::Determinant;
use crate::error::{Error, Result};
use crate::fermion_qubit::{check_placement, PauliString, PauliSum};

/// Largest register the simulator will allocate.
pub const MAX_QUBITS: usize = 24;

const NORM_TOL: f64 = 1e-10;

/// `2^n` complex amplitudes; index bit `q` is qubit `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl Statevector {
    pub fn zero_state(n_qubits: usize) -> Result<Self> {
        Self::basis_state(n_qubits, 0)
    }

    pub fn basis_state(n_qubits: usize, index: u64) -> Result<Self> {
        if n_qubits > MAX_QUBITS {
            return Err(Error::QubitCap(n_qubits));
        }
        if index >> n_qubits != 0 {
            return Err(Error::InvalidState(format!("basis index {index} outside {n_qubits} qubits")));
        }
        let mut amplitudes = vec![Complex64::default(); 1 << n_qubits];
        amplitudes[index as usize] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amplitudes })
    }

    /// Wraps raw amplitudes; the vector must be normalized.
    pub fn from_amplitudes(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n_qubits > MAX_QUBITS {
            return Err(Error::QubitCap(n_qubits));
        }
        if amplitudes.len() != 1 << n_qubits {
            return Err(Error::Width { expected: n_qubits, got: amplitudes.len().trailing_zeros() as usize });
        }
        let s = Self { n_qubits, amplitudes };
        let n2 = s.norm_squared();
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("squared norm {n2} is not 1")));
        }
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: u64) -> Complex64 {
        self.amplitudes[index as usize]
    }

    pub fn probability(&self, index: u64) -> f64 {
        self.amplitudes[index as usize].norm_sqr()
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &Statevector) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    /// `op |self>`; not normalized.
    pub fn apply_operator(&self, op: &PauliSum) -> Result<Vec<Complex64>> {
        if op.n_qubits() != self.n_qubits {
            return Err(Error::QubitMismatch { left: op.n_qubits(), right: self.n_qubits });
        }
        let mut out = vec![Complex64::default(); self.amplitudes.len()];
        for (p, c) in op.terms() {
            for (b, amp) in self.amplitudes.iter().enumerate() {
                if amp.norm_sqr() == 0.0 {
                    continue;
                }
                let b = b as u64;
                out[(b ^ p.x_mask()) as usize] += c * p.phase_on(b) * amp;
            }
        }
        Ok(out)
    }

    /// `<self|op|self>`.
    pub fn expectation(&self, op: &PauliSum) -> Result<Complex64> {
        let v = self.apply_operator(op)?;
        Ok(self.amplitudes.iter().zip(&v).map(|(a, b)| a.conj() * b).sum())
    }

    /// In place `exp(-i theta P)`.
    fn apply_pauli_rotation(&mut self, p: &PauliString, theta: f64) {
        let (s, c) = theta.sin_cos();
        let minus_i_sin = Complex64::new(0.0, -s);
        let x = p.x_mask();
        if x == 0 {
            // diagonal: P|b> = (-1)^{|z & b|} |b>
            let plus = Complex64::new(c, -s);
            let minus = Complex64::new(c, s);
            let z = p.z_mask();
            for (b, amp) in self.amplitudes.iter_mut().enumerate() {
                *amp *= if (z & b as u64).count_ones().is_multiple_of(2) { plus } else { minus };
            }
            return;
        }
        let pivot = 1u64 << x.trailing_zeros();
        for b in 0..self.amplitudes.len() as u64 {
            if b & pivot != 0 {
                continue;
            }
            let b2 = b ^ x;
            let a1 = self.amplitudes[b as usize];
            let a2 = self.amplitudes[b2 as usize];
            // (P psi)_b = phase(b2) psi_b2
            self.amplitudes[b as usize] = a1 * c + minus_i_sin * p.phase_on(b2) * a2;
            self.amplitudes[b2 as usize] = a2 * c + minus_i_sin * p.phase_on(b) * a1;
        }
    }
}

/// Places small-register CI amplitudes onto the full register.
///
/// Small-register qubit `i` maps to `placement[i]`; qubits in
/// `extra_occupied` are set; every other qubit is `|0>`.
pub fn prepare_initial_state(
    eigenstate: &[(Determinant, f64)],
    placement: &[usize],
    extra_occupied: &[usize],
    n_total: usize,
) -> Result<Statevector> {
    if n_total > MAX_QUBITS {
        return Err(Error::QubitCap(n_total));
    }
    check_placement(placement, n_total)?;
    let mut extra = 0u64;
    for &q in extra_occupied {
        if q >= n_total {
            return Err(Error::Placement(format!("extra qubit {q} outside {n_total}-qubit register")));
        }
        if placement.contains(&q) {
            return Err(Error::Placement(format!("extra qubit {q} overlaps the placed sub-register")));
        }
        extra |= 1 << q;
    }
    let n2: f64 = eigenstate.iter().map(|(_, c)| c * c).sum();
    if (n2 - 1.0).abs() > NORM_TOL {
        return Err(Error::InvalidState(format!("initial state has squared norm {n2}")));
    }
    let mut amplitudes = vec![Complex64::default(); 1 << n_total];
    for &(d, c) in eigenstate {
        if d.bits() >> placement.len() != 0 {
            return Err(Error::Width { expected: placement.len(), got: 64 - d.bits().leading_zeros() as usize });
        }
        let mut idx = extra;
        for (i, &t) in placement.iter().enumerate() {
            if d.is_occupied(i) {
                idx |= 1 << t;
            }
        }
        amplitudes[idx as usize] += Complex64::new(c, 0.0);
    }
    Statevector::from_amplitudes(n_total, amplitudes)
}

/// Two-qubit gate cost of `exp(-i theta P)` as a CNOT ladder.
pub fn two_qubit_cost(p: &PauliString) -> usize {
    let w = p.weight();
    if w <= 1 {
        0
    } else {
        2 * (w - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrotterTerm {
    #[serde(serialize_with = "serialize_letters")]
    pub string: PauliString,
    pub coefficient: f64,
    /// Dropped by the gate budget.
    pub truncated: bool,
}

fn serialize_letters<S: serde::Serializer>(p: &PauliString, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.letters())
}

/// First-order product formula over a truncated term list.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrotterPlan {
    pub n_qubits: usize,
    pub terms: Vec<TrotterTerm>,
    pub n_steps: usize,
    pub dt: f64,
    /// `None` means unlimited.
    pub gate_budget: Option<usize>,
}

impl TrotterPlan {
    pub fn retained(&self) -> impl Iterator<Item = &TrotterTerm> {
        self.terms.iter().filter(|t| !t.truncated)
    }

    pub fn n_retained(&self) -> usize {
        self.retained().count()
    }

    /// Two-qubit gates per step.
    pub fn gates_per_step(&self) -> usize {
        self.retained().map(|t| two_qubit_cost(&t.string)).sum()
    }

    pub fn total_time(&self) -> f64 {
        self.dt * self.n_steps as f64
    }
}

/// Ranks terms by descending `|coefficient|` (ties by string) and keeps the
/// longest prefix whose per-step two-qubit cost fits the budget. Zero-cost
/// terms (identity and single-qubit) are always kept.
///
/// The plan lists terms in application order: the ranked list regrouped so
/// strings with the same X/Y support are adjacent.
pub fn build_trotter_plan(op: &PauliSum, dt: f64, n_steps: usize, gate_budget: Option<usize>) -> Result<TrotterPlan> {
    if !op.is_hermitian() {
        return Err(Error::NonHermitian(format!("max imaginary coefficient {}", op.max_imaginary())));
    }
    let mut terms: Vec<(PauliString, f64)> = op.terms().iter().map(|(p, c)| (*p, c.re)).collect();
    terms.sort_by(|a, b| b.1.abs().total_cmp(&a.1.abs()).then_with(|| a.0.cmp(&b.0)));
    let mut used = 0usize;
    let mut closed = false;
    let terms = terms
        .into_iter()
        .map(|(string, coefficient)| {
            let cost = two_qubit_cost(&string);
            let keep = if cost == 0 {
                true
            } else if closed {
                false
            } else {
                match gate_budget {
                    Some(budget) if used + cost > budget => {
                        closed = true;
                        false
                    }
                    _ => {
                        used += cost;
                        true
                    }
                }
            };
            TrotterTerm { string, coefficient, truncated: !keep }
        })
        .collect();
    Ok(TrotterPlan { n_qubits: op.n_qubits(), terms: group_by_flip_mask(terms), n_steps, dt, gate_budget })
}

/// Stable regrouping by X/Y support, groups in order of first appearance.
///
/// For a real hermitian `op` the strings sharing an X/Y support commute, and
/// each group is the part of `op` connecting `|b>` to `|b ^ x>`, so it
/// conserves whatever `op` conserves. Applying groups contiguously keeps the
/// untruncated product formula inside the particle-number and Sz sector.
fn group_by_flip_mask(terms: Vec<TrotterTerm>) -> Vec<TrotterTerm> {
    let mut first_seen: HashMap<u64, usize> = HashMap::new();
    for (i, t) in terms.iter().enumerate() {
        first_seen.entry(t.string.x_mask()).or_insert(i);
    }
    let mut indexed: Vec<(usize, usize, TrotterTerm)> =
        terms.into_iter().enumerate().map(|(i, t)| (first_seen[&t.string.x_mask()], i, t)).collect();
    indexed.sort_by_key(|e| (e.0, e.1));
    indexed.into_iter().map(|e| e.2).collect()
}

/// Applies `prod_terms exp(-i c dt P)` for every retained term in plan order,
/// `n_steps` times, returning the evolved copy.
pub fn evolve(state: &Statevector, plan: &TrotterPlan) -> Result<Statevector> {
    if plan.n_qubits != state.n_qubits {
        return Err(Error::QubitMismatch { left: plan.n_qubits, right: state.n_qubits });
    }
    let mut out = state.clone();
    if plan.dt == 0.0 {
        return Ok(out);
    }
    for _ in 0..plan.n_steps {
        for term in plan.retained() {
            out.apply_pauli_rotation(&term.string, term.coefficient * plan.dt);
        }
    }
    Ok(out)
}

/// Measurement record of one `(dt, j)` circuit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShotBatch {
    pub n_qubits: usize,
    /// `(outcome, multiplicity)` sorted by outcome.
    pub outcomes: Vec<(Determinant, u64)>,
    pub n_shots: u64,
    pub dt: f64,
    pub state_index: usize,
}

#[derive(Serialize, Deserialize)]
struct ShotLine {
    dt: f64,
    j: usize,
    bitstring: String,
    count: u64,
}

impl ShotBatch {
    /// JSON lines `{"dt":..,"j":..,"bitstring":"0101..","count":..}`.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for (d, count) in &self.outcomes {
            let line = ShotLine { dt: self.dt, j: self.state_index, bitstring: d.to_bitstring(self.n_qubits), count: *count };
            out.push_str(&serde_json::to_string(&line).expect("shot line serializes"));
            out.push('\n');
        }
        out
    }

    /// Regroups JSON lines into the batches of the given `(dt, j)` pairs, in
    /// that order. Pairs with no lines come back empty.
    pub fn from_jsonl(text: &str, n_qubits: usize, pairs: &[(f64, usize)]) -> Result<Vec<ShotBatch>> {
        let mut batches: Vec<ShotBatch> = pairs
            .iter()
            .map(|&(dt, j)| ShotBatch { n_qubits, outcomes: Vec::new(), n_shots: 0, dt, state_index: j })
            .collect();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let rec: ShotLine = serde_json::from_str(line)?;
            if rec.bitstring.len() != n_qubits {
                return Err(Error::Width { expected: n_qubits, got: rec.bitstring.len() });
            }
            let batch = batches
                .iter_mut()
                .find(|b| b.dt == rec.dt && b.state_index == rec.j)
                .ok_or_else(|| Error::InvalidState(format!("shot line for unknown pair dt={} j={}", rec.dt, rec.j)))?;
            batch.outcomes.push((Determinant::from_bitstring(&rec.bitstring)?, rec.count));
            batch.n_shots += rec.count;
        }
        for b in &mut batches {
            b.outcomes.sort_unstable_by_key(|o| o.0);
        }
        Ok(batches)
    }
}

/// Draws `n_shots` outcomes from `|amplitude|^2` with ChaCha8 seeded by
/// `seed` on stream 0.
pub fn sample(state: &Statevector, n_shots: u64, seed: u64) -> Result<ShotBatch> {
    sample_stream(state, n_shots, seed, 0)
}

/// As [`sample`], on ChaCha8 stream `stream`. Each shot consumes one `u64`
/// (53 bits to a uniform in `[0, 1)`), scaled by the total probability and
/// located in the cumulative distribution over basis indices.
pub fn sample_stream(state: &Statevector, n_shots: u64, seed: u64, stream: u64) -> Result<ShotBatch> {
    let mut cdf = Vec::with_capacity(state.amplitudes.len());
    let mut acc = 0.0;
    for a in &state.amplitudes {
        acc += a.norm_sqr();
        cdf.push(acc);
    }
    if acc <= 0.0 {
        return Err(Error::InvalidState("cannot sample a zero-norm state".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for _ in 0..n_shots {
        let u: f64 = rng.gen::<f64>() * acc;
        let mut idx = cdf.partition_point(|&c| c <= u);
        if idx >= cdf.len() {
            idx = cdf.len() - 1;
        }
        // never report a zero-probability outcome
        while state.amplitudes[idx].norm_sqr() == 0.0 && idx > 0 {
            idx -= 1;
        }
        *counts.entry(idx as u64).or_default() += 1;
    }
    Ok(ShotBatch {
        n_qubits: state.n_qubits,
        outcomes: counts.into_iter().map(|(k, v)| (Determinant(k), v)).collect(),
        n_shots,
        dt: 0.0,
        state_index: 0,
    })
}

/// Exact probability outside the support set, from amplitudes.
pub fn probability_outside(state: &Statevector, support: &[Determinant]) -> f64 {
    let inside: f64 = support.iter().map(|d| state.probability(d.bits())).sum();
    (state.norm_squared() - inside).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Determinant {
        Determinant::from_bitstring(s).unwrap()
    }

    fn sum(n: usize, terms: &[(&str, f64)]) -> PauliSum {
        PauliSum::from_terms(
            n,
            terms.iter().map(|(l, c)| (PauliString::from_letters(l).unwrap(), Complex64::new(*c, 0.0))),
        )
        .unwrap()
    }

    #[test]
    fn product_state_preparation() {
        let s = prepare_initial_state(&[(bits("11"), 1.0)], &[2, 3], &[0, 1], 4).unwrap();
        assert_eq!(s.amplitude(bits("1111").bits()), Complex64::new(1.0, 0.0));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = prepare_initial_state(&[(bits("10"), h), (bits("01"), h)], &[2, 3], &[0, 1], 4).unwrap();
        assert!((s.amplitude(bits("1110").bits()).re - h).abs() < 1e-15);
        assert!((s.amplitude(bits("1101").bits()).re - h).abs() < 1e-15);
        assert!((s.norm_squared() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn preparation_errors() {
        assert!(matches!(
            prepare_initial_state(&[(bits("11"), 1.0)], &[1, 2], &[0, 1], 4),
            Err(Error::Placement(_))
        ));
        assert!(matches!(
            prepare_initial_state(&[(bits("11"), 0.5)], &[2, 3], &[0, 1], 4),
            Err(Error::InvalidState(_))
        ));
        assert!(matches!(prepare_initial_state(&[], &[], &[], 30), Err(Error::QubitCap(30))));
    }

    #[test]
    fn budget_boundaries() {
        let op = sum(4, &[("IIII", -1.0), ("ZIII", 0.5), ("XXII", 0.4), ("XYIX", 0.3), ("IIZZ", 0.2), ("IIIX", 0.01)]);
        let zero = build_trotter_plan(&op, 0.1, 2, Some(0)).unwrap();
        let kept: Vec<String> = zero.retained().map(|t| t.string.letters()).collect();
        assert_eq!(kept, vec!["IIII", "ZIII", "IIIX"]);
        let all = build_trotter_plan(&op, 0.1, 2, None).unwrap();
        assert!(all.terms.iter().all(|t| !t.truncated));
        assert_eq!(all.gates_per_step(), 2 + 4 + 2);
        // budget 3: XXII (2) fits, XYIX (4) closes the prefix, IIZZ is dropped too
        let three = build_trotter_plan(&op, 0.1, 2, Some(3)).unwrap();
        let kept: Vec<String> = three.retained().map(|t| t.string.letters()).collect();
        assert_eq!(kept, vec!["IIII", "ZIII", "XXII", "IIIX"]);
        assert!(three.gates_per_step() <= 3);
    }

    #[test]
    fn zero_time_is_identity() {
        let op = sum(2, &[("XY", 0.7), ("ZZ", -0.2)]);
        let plan = build_trotter_plan(&op, 0.0, 3, None).unwrap();
        let s = prepare_initial_state(&[(bits("10"), 0.6), (bits("01"), 0.8)], &[0, 1], &[], 2).unwrap();
        assert_eq!(evolve(&s, &plan).unwrap(), s);
    }

    #[test]
    fn single_term_rotation_is_exact() {
        for letters in ["XYZ", "ZIZ", "YYI", "IXI", "III"] {
            let c = 0.83;
            let dt = 0.37;
            let op = sum(3, &[(letters, c)]);
            let plan = build_trotter_plan(&op, dt, 1, None).unwrap();
            let mut amps: Vec<Complex64> =
                (0..8).map(|k| Complex64::new(0.1 * k as f64 + 0.05, 0.03 * (k as f64 - 3.0))).collect();
            let n = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            amps.iter_mut().for_each(|a| *a /= n);
            let s = Statevector::from_amplitudes(3, amps).unwrap();
            let out = evolve(&s, &plan).unwrap();
            let p_psi = s.apply_operator(&sum(3, &[(letters, 1.0)])).unwrap();
            let (sn, cs) = (c * dt).sin_cos();
            for k in 0..8 {
                let expect = s.amplitudes()[k] * cs - Complex64::new(0.0, sn) * p_psi[k];
                assert!((out.amplitudes()[k] - expect).norm() < 1e-12, "{letters} index {k}");
            }
        }
    }

    #[test]
    fn deterministic_sampling() {
        let s = Statevector::basis_state(4, bits("0110").bits()).unwrap();
        let b = sample(&s, 100, 1).unwrap();
        assert_eq!(b.outcomes, vec![(bits("0110"), 100)]);
        assert_eq!(b.n_shots, 100);
        let zero = Statevector { n_qubits: 1, amplitudes: vec![Complex64::default(); 2] };
        assert!(sample(&zero, 1, 0).is_err());
    }

    #[test]
    fn uniform_sampling_statistics() {
        let amps = vec![Complex64::new(0.5, 0.0); 4];
        let s = Statevector::from_amplitudes(2, amps).unwrap();
        let n = 1_000_000u64;
        let b = sample(&s, n, 7).unwrap();
        let sigma = (n as f64 * 0.25 * 0.75).sqrt();
        assert_eq!(b.outcomes.len(), 4);
        for (_, count) in &b.outcomes {
            assert!((*count as f64 - n as f64 * 0.25).abs() < 5.0 * sigma);
        }
        assert_eq!(b.outcomes.iter().map(|o| o.1).sum::<u64>(), n);
    }

    #[test]
    fn jsonl_round_trip() {
        let amps = vec![Complex64::new(0.5, 0.0); 4];
        let s = Statevector::from_amplitudes(2, amps).unwrap();
        let mut b = sample_stream(&s, 50, 3, 2).unwrap();
        b.dt = 2.5;
        b.state_index = 1;
        let text = b.to_jsonl();
        assert!(text.starts_with("{\"dt\":2.5,\"j\":1,\"bitstring\":\"00\",\"count\":"));
        let back = ShotBatch::from_jsonl(&text, 2, &[(0.001, 0), (2.5, 1)]).unwrap();
        assert_eq!(back[1], b);
        assert_eq!(back[0].n_shots, 0);
    }
}
