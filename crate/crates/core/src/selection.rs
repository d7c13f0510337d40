//! From raw shots to a configuration set: particle-number/Sz post-selection,
//! spin-complement augmentation, merging across circuits and histograms.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub use crate::det::{Determinant, Sector};
use crate::det::combinations;
use crate::error::{Error, Result};
use crate::simulator::ShotBatch;

/// Outcomes of one batch that passed post-selection.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PostSelected {
    pub dt: f64,
    pub state_index: usize,
    pub kept: Vec<(Determinant, u64)>,
    pub rejected_count: u64,
    pub n_shots: u64,
}

impl PostSelected {
    pub fn kept_count(&self) -> u64 {
        self.kept.iter().map(|k| k.1).sum()
    }
}

/// Keeps outcomes with the sector's electron count and spin projection.
pub fn postselect(batch: &ShotBatch, sector: &Sector) -> Result<PostSelected> {
    if batch.n_qubits != sector.n_qubits() {
        return Err(Error::Width { expected: sector.n_qubits(), got: batch.n_qubits });
    }
    let mut kept = Vec::new();
    let mut rejected_count = 0;
    for &(d, count) in &batch.outcomes {
        if sector.contains(d) {
            kept.push((d, count));
        } else {
            rejected_count += count;
        }
    }
    Ok(PostSelected { dt: batch.dt, state_index: batch.state_index, kept, rejected_count, n_shots: batch.n_shots })
}

/// Every determinant with the same empty/single/double pattern over spatial
/// orbitals and the same Sz as `d` (including `d`), ascending.
pub fn spin_augment(d: Determinant) -> Vec<Determinant> {
    let open = d.singly_occupied();
    let doubles = d.doubly_occupied();
    let n_open = open.count_ones() as usize;
    let n_up = d.n_alpha() - doubles.count_ones() as usize;
    let open_orbitals: Vec<u32> = (0..64).filter(|p| open >> p & 1 == 1).collect();
    let base = crate::det::spread_even(doubles) * 3;
    let mut out: Vec<Determinant> = combinations(n_open, n_up)
        .into_iter()
        .map(|choice| {
            let mut bits = base;
            for (k, &p) in open_orbitals.iter().enumerate() {
                bits |= if choice >> k & 1 == 1 { 1 << (2 * p) } else { 1 << (2 * p + 1) };
            }
            Determinant(bits)
        })
        .collect();
    out.sort_unstable();
    out
}

/// How a configuration entered the set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub baseline: bool,
    pub sampled: bool,
    pub augmented: bool,
}

impl Provenance {
    pub fn tags(&self) -> Vec<&'static str> {
        let mut t = Vec::new();
        if self.baseline {
            t.push("baseline");
        }
        if self.sampled {
            t.push("sampled");
        }
        if self.augmented {
            t.push("spin-augmented");
        }
        t
    }
}

/// Ordered, duplicate-free set of determinants within one sector.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigurationSet {
    sector: Sector,
    members: Vec<Determinant>,
    provenance: Vec<Provenance>,
    index: HashMap<Determinant, usize>,
}

#[derive(Serialize, Deserialize)]
struct MemberJson {
    bits: String,
    provenance: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct SetJson {
    sector: Sector,
    members: Vec<MemberJson>,
}

impl ConfigurationSet {
    pub fn new(sector: Sector) -> Self {
        Self { sector, members: Vec::new(), provenance: Vec::new(), index: HashMap::new() }
    }

    /// Set of the given determinants, all tagged as baseline.
    pub fn baseline(sector: Sector, dets: impl IntoIterator<Item = Determinant>) -> Result<Self> {
        let mut s = Self::new(sector);
        for d in dets {
            s.insert(d, Provenance { baseline: true, ..Default::default() })?;
        }
        Ok(s)
    }

    /// Adds `d` or merges the provenance flags of an existing member.
    /// Returns whether `d` was new.
    pub fn insert(&mut self, d: Determinant, tag: Provenance) -> Result<bool> {
        self.sector.check(d)?;
        if let Some(&i) = self.index.get(&d) {
            let p = &mut self.provenance[i];
            p.baseline |= tag.baseline;
            p.sampled |= tag.sampled;
            p.augmented |= tag.augmented;
            return Ok(false);
        }
        self.index.insert(d, self.members.len());
        self.members.push(d);
        self.provenance.push(tag);
        Ok(true)
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn members(&self) -> &[Determinant] {
        &self.members
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, d: Determinant) -> bool {
        self.index.contains_key(&d)
    }

    pub fn position(&self, d: Determinant) -> Option<usize> {
        self.index.get(&d).copied()
    }

    pub fn is_baseline(&self, d: Determinant) -> bool {
        self.position(d).is_some_and(|i| self.provenance[i].baseline)
    }

    /// Members outside the baseline that were sampled directly.
    pub fn new_sampled(&self) -> usize {
        self.provenance.iter().filter(|p| !p.baseline && p.sampled).count()
    }

    /// Members outside the baseline that exist only through augmentation.
    pub fn new_augmented_only(&self) -> usize {
        self.provenance.iter().filter(|p| !p.baseline && !p.sampled && p.augmented).count()
    }

    pub fn to_json(&self) -> String {
        let width = self.sector.n_qubits();
        let out = SetJson {
            sector: self.sector,
            members: self
                .members
                .iter()
                .zip(&self.provenance)
                .map(|(d, p)| MemberJson {
                    bits: d.to_bitstring(width),
                    provenance: p.tags().into_iter().map(String::from).collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&out).expect("configuration set serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SetJson = serde_json::from_str(text)?;
        let mut s = Self::new(raw.sector);
        for m in raw.members {
            let mut p = Provenance::default();
            for tag in &m.provenance {
                match tag.as_str() {
                    "baseline" => p.baseline = true,
                    "sampled" => p.sampled = true,
                    "spin-augmented" => p.augmented = true,
                    other => return Err(Error::InvalidState(format!("unknown provenance tag {other:?}"))),
                }
            }
            s.insert(Determinant::from_bitstring(&m.bits)?, p)?;
        }
        Ok(s)
    }
}

/// Union of the baseline, every kept outcome and its spin complements.
///
/// Members keep first-appearance order: baseline first, then batches in the
/// given order, each sampled determinant followed by its new complements.
pub fn merge(batches: &[PostSelected], baseline: &ConfigurationSet) -> Result<ConfigurationSet> {
    let mut out = baseline.clone();
    for batch in batches {
        for &(d, _) in &batch.kept {
            out.insert(d, Provenance { sampled: true, ..Default::default() })?;
            for a in spin_augment(d) {
                if a != d {
                    out.insert(a, Provenance { augmented: true, ..Default::default() })?;
                }
            }
        }
    }
    Ok(out)
}

/// One bar position of the histogram.
#[derive(Debug, Clone, PartialEq)]
pub struct HistogramRow {
    pub config: Determinant,
    pub reference_weight: f64,
    pub is_baseline: bool,
    /// Measured probability per time step, aligned with [`Histogram::dts`].
    pub p: Vec<f64>,
}

/// Measured probabilities per configuration and time step.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub n_qubits: usize,
    pub dts: Vec<f64>,
    pub rows: Vec<HistogramRow>,
}

/// Reference weights below this are left off the x-axis unless measured.
const MIN_REFERENCE_WEIGHT: f64 = 1e-12;

/// Per-time-step measured probabilities of post-selected outcomes, one row
/// per configuration that is either measured or carries reference weight.
///
/// Rows are sorted by descending reference weight (then ascending bits).
/// Batches sharing a `dt` are pooled; `p` is relative to all shots at that
/// `dt`, so each column sums to the post-selection survival fraction.
pub fn histogram(
    batches: &[ShotBatch],
    baseline: &ConfigurationSet,
    reference: &[(Determinant, f64)],
    sector: &Sector,
) -> Result<Histogram> {
    let mut dts: Vec<f64> = Vec::new();
    for b in batches {
        if !dts.contains(&b.dt) {
            dts.push(b.dt);
        }
    }
    let mut shots_per_dt = vec![0u64; dts.len()];
    let mut counts: BTreeMap<Determinant, Vec<u64>> = BTreeMap::new();
    for b in batches {
        let col = dts.iter().position(|&d| d == b.dt).expect("collected above");
        let ps = postselect(b, sector)?;
        shots_per_dt[col] += ps.n_shots;
        for (d, c) in ps.kept {
            counts.entry(d).or_insert_with(|| vec![0; dts.len()])[col] += c;
        }
    }
    let mut weights: BTreeMap<Determinant, f64> = BTreeMap::new();
    for &(d, w) in reference {
        *weights.entry(d).or_default() += w;
    }
    let mut keys: Vec<Determinant> = weights
        .iter()
        .filter(|(_, &w)| w >= MIN_REFERENCE_WEIGHT)
        .map(|(d, _)| *d)
        .chain(counts.keys().copied())
        .collect();
    keys.sort_unstable();
    keys.dedup();
    let mut rows: Vec<HistogramRow> = keys
        .into_iter()
        .map(|d| {
            let c = counts.get(&d);
            let p = (0..dts.len())
                .map(|k| {
                    let n = c.map_or(0, |v| v[k]);
                    if shots_per_dt[k] == 0 {
                        0.0
                    } else {
                        n as f64 / shots_per_dt[k] as f64
                    }
                })
                .collect();
            HistogramRow {
                config: d,
                reference_weight: weights.get(&d).copied().unwrap_or(0.0),
                is_baseline: baseline.is_baseline(d),
                p,
            }
        })
        .collect();
    rows.sort_by(|a, b| b.reference_weight.total_cmp(&a.reference_weight).then(a.config.cmp(&b.config)));
    Ok(Histogram { n_qubits: sector.n_qubits(), dts, rows })
}

impl Histogram {
    /// CSV with columns `config_bits, reference_weight, is_baseline, p_dt_<value>...`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("config_bits,reference_weight,is_baseline");
        for dt in &self.dts {
            let _ = write!(out, ",p_dt_{dt}");
        }
        out.push('\n');
        for r in &self.rows {
            let _ = write!(out, "{},{:e},{}", r.config.to_bitstring(self.n_qubits), r.reference_weight, r.is_baseline);
            for p in &r.p {
                let _ = write!(out, ",{p:e}");
            }
            out.push('\n');
        }
        out
    }

    /// Column sums per time step.
    pub fn column_totals(&self) -> Vec<f64> {
        (0..self.dts.len()).map(|k| self.rows.iter().map(|r| r.p[k]).sum()).collect()
    }
}
