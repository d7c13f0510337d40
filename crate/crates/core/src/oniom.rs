//! Two-layer subtractive energies, relative profiles and the per-method
//! energy/fidelity report.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// CODATA 2018 hartree-to-electronvolt factor.
pub const HARTREE_TO_EV: f64 = 27.211386245988;

/// Where an energy came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Ingested,
    Qsci,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerProvenance {
    pub e_low_real: Source,
    pub e_low_model: Source,
    pub e_high_model: Source,
}

/// Energies (hartree) of one geometry/state for the subtractive scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerEnergies {
    pub label: String,
    pub e_low_real: f64,
    pub e_low_model: f64,
    pub e_high_model: f64,
    pub provenance: LayerProvenance,
}

impl LayerEnergies {
    /// All three values read from a sidecar.
    pub fn ingested(label: impl Into<String>, e_low_real: f64, e_low_model: f64, e_high_model: f64) -> Self {
        Self {
            label: label.into(),
            e_low_real,
            e_low_model,
            e_high_model,
            provenance: LayerProvenance {
                e_low_real: Source::Ingested,
                e_low_model: Source::Ingested,
                e_high_model: Source::Ingested,
            },
        }
    }
}

/// `e_low_real + e_high_model - e_low_model`, grouped as
/// `e_low_real + (e_high_model - e_low_model)` so equal model energies
/// return `e_low_real` bit for bit.
pub fn oniom_energy(l: &LayerEnergies) -> Result<f64> {
    if ![l.e_low_real, l.e_low_model, l.e_high_model].iter().all(|e| e.is_finite()) {
        return Err(Error::NonFinite(l.label.clone()));
    }
    Ok(l.e_low_real + (l.e_high_model - l.e_low_model))
}

/// `(label, eV)` of each entry relative to the entry labelled `reference`.
pub fn relative_profile(entries: &[LayerEnergies], reference: &str) -> Result<Vec<(String, f64)>> {
    let r = entries
        .iter()
        .find(|e| e.label == reference)
        .ok_or_else(|| Error::MissingReference(reference.to_string()))?;
    let e_ref = oniom_energy(r)?;
    entries
        .iter()
        .map(|e| Ok((e.label.clone(), (oniom_energy(e)? - e_ref) * HARTREE_TO_EV)))
        .collect()
}

/// One entry of the sidecar; `e_high_model` may be filled in by a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SidecarLayer {
    pub label: String,
    pub e_low_real: f64,
    pub e_low_model: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_high_model: Option<f64>,
    /// State label (`S0`, `S1`, `T0`, ...) whose high-level energy fills a
    /// missing `e_high_model`. Defaults to the part of `label` after `/`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
}

impl SidecarLayer {
    pub fn state_label(&self) -> &str {
        self.state.as_deref().unwrap_or_else(|| self.label.rsplit('/').next().unwrap_or(&self.label))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub layers: Vec<SidecarLayer>,
    /// Label of the profile's zero; the first layer when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<String>,
}

impl Sidecar {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Completed layers; missing high-level energies come from `lookup`
    /// applied to the layer's state label.
    pub fn resolve(&self, lookup: impl Fn(&str) -> Option<(f64, Source)>) -> Result<Vec<LayerEnergies>> {
        self.layers
            .iter()
            .map(|l| {
                let mut out = LayerEnergies::ingested(&l.label, l.e_low_real, l.e_low_model, f64::NAN);
                match l.e_high_model {
                    Some(e) => out.e_high_model = e,
                    None => {
                        let (e, src) = lookup(l.state_label()).ok_or_else(|| {
                            Error::Config(format!(
                                "layer {:?} has no e_high_model and no computed state {:?}",
                                l.label,
                                l.state_label()
                            ))
                        })?;
                        out.e_high_model = e;
                        out.provenance.e_high_model = src;
                    }
                }
                oniom_energy(&out)?;
                Ok(out)
            })
            .collect()
    }

    pub fn reference_label(&self) -> Option<&str> {
        self.reference.as_deref().or_else(|| self.layers.first().map(|l| l.label.as_str()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub label: String,
    pub e_oniom: f64,
    pub delta_ev: f64,
    pub layers: LayerEnergies,
}

/// Totals and relative energies of resolved layers.
pub fn profile_report(entries: &[LayerEnergies], reference: &str) -> Result<Vec<ProfileRow>> {
    let rel = relative_profile(entries, reference)?;
    entries
        .iter()
        .zip(rel)
        .map(|(e, (label, delta_ev))| Ok(ProfileRow { label, e_oniom: oniom_energy(e)?, delta_ev, layers: e.clone() }))
        .collect()
}

pub fn profile_csv(rows: &[ProfileRow]) -> String {
    let mut out = String::from("label,e_low_real,e_low_model,e_high_model,e_high_source,e_oniom,delta_ev\n");
    for r in rows {
        let src = serde_json::to_value(r.layers.provenance.e_high_model).expect("enum serializes");
        let _ = writeln!(
            out,
            "{},{:e},{:e},{:e},{},{:e},{:.6}",
            r.label,
            r.layers.e_low_real,
            r.layers.e_low_model,
            r.layers.e_high_model,
            src.as_str().unwrap_or_default(),
            r.e_oniom,
            r.delta_ev
        );
    }
    out
}

/// Energies (hartree) and fidelities of one method for the labelled states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodResult {
    pub method: String,
    /// Ground-state (`states[0]`) energy first, then the others.
    pub energies: Vec<Option<f64>>,
    /// Fidelity to the exact state, per state.
    pub fidelities: Vec<Option<f64>>,
}

/// Derived per-method quantities in eV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodMetrics {
    pub method: String,
    pub e_corr_ev: Option<f64>,
    /// `E_j - E_0` for every state after the first.
    pub excitation_ev: Vec<Option<f64>>,
    pub fidelities: Vec<Option<f64>>,
}

/// Method comparison table: correlation energy, excitation energies, fidelities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub states: Vec<String>,
    pub e_hf: f64,
    pub rows: Vec<MethodMetrics>,
}

impl MetricsReport {
    pub fn new(states: Vec<String>, e_hf: f64, results: &[MethodResult]) -> Self {
        let rows = results
            .iter()
            .map(|r| {
                let e0 = r.energies.first().copied().flatten();
                MethodMetrics {
                    method: r.method.clone(),
                    e_corr_ev: e0.map(|e| (e - e_hf) * HARTREE_TO_EV),
                    excitation_ev: r
                        .energies
                        .iter()
                        .skip(1)
                        .map(|e| match (e, e0) {
                            (Some(e), Some(e0)) => Some((e - e0) * HARTREE_TO_EV),
                            _ => None,
                        })
                        .collect(),
                    fidelities: r.fidelities.clone(),
                }
            })
            .collect();
        Self { states, e_hf, rows }
    }

    pub fn row(&self, method: &str) -> Option<&MethodMetrics> {
        self.rows.iter().find(|r| r.method == method)
    }

    /// Rounded table: eV to two decimals, fidelities to three, `-` when missing.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,e_corr_ev");
        for s in self.states.iter().skip(1) {
            let _ = write!(out, ",delta_e_{s}_ev");
        }
        for s in &self.states {
            let _ = write!(out, ",fidelity_{s}");
        }
        out.push('\n');
        let fmt = |v: Option<f64>, digits: usize| v.map_or("-".to_string(), |x| format_fixed(x, digits));
        for r in &self.rows {
            out.push_str(&r.method);
            let _ = write!(out, ",{}", fmt(r.e_corr_ev, 2));
            for e in &r.excitation_ev {
                let _ = write!(out, ",{}", fmt(*e, 2));
            }
            for f in &r.fidelities {
                let _ = write!(out, ",{}", fmt(*f, 3));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Fixed-point rendering that never prints `-0.00`.
pub fn format_fixed(x: f64, digits: usize) -> String {
    let s = format!("{x:.digits$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}
