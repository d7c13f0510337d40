use std::path::{Path, PathBuf};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hamio::{parse_fcidump, ActiveSpaceSpec, IntegralTable};
use crate::oniom::Sidecar;
use crate::simulator::MAX_QUBITS;

/// Active space as an electron count plus either explicit parent orbital
/// indices (0-based) or a window size centered on the frontier orbitals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActiveSpaceConfig {
    pub n_electrons: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_orbitals: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbitals: Option<Vec<usize>>,
}

impl ActiveSpaceConfig {
    pub fn centered(n_electrons: usize, n_orbitals: usize) -> Self {
        Self { n_electrons, n_orbitals: Some(n_orbitals), orbitals: None }
    }

    /// Resolves against the FCIDUMP table.
    pub fn resolve(&self, parent: &IntegralTable) -> Result<ActiveSpaceSpec> {
        match (&self.orbitals, self.n_orbitals) {
            (Some(idx), n) => {
                if n.is_some_and(|n| n != idx.len()) {
                    return Err(Error::ActiveSpace(format!(
                        "n_orbitals = {} disagrees with {} listed orbitals",
                        n.unwrap_or_default(),
                        idx.len()
                    )));
                }
                let spec = ActiveSpaceSpec::new(self.n_electrons, idx.clone());
                spec.frozen_orbitals(parent)?;
                Ok(spec)
            }
            (None, Some(n)) => {
                let spec = ActiveSpaceSpec::centered(parent.n_orbitals(), parent.n_electrons(), self.n_electrons, n)?;
                spec.frozen_orbitals(parent)?;
                Ok(spec)
            }
            (None, None) => Err(Error::ActiveSpace("give n_orbitals or orbitals".into())),
        }
    }

    fn describe(&self) -> String {
        match &self.orbitals {
            Some(idx) => format!("({}e, orbitals {idx:?})", self.n_electrons),
            None => format!("({},{})", self.n_electrons, self.n_orbitals.unwrap_or_default()),
        }
    }
}

/// Classical configuration set merged with the samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaselineKind {
    /// Every determinant of the initial space, embedded.
    #[default]
    InitialSector,
    /// The aufbau determinant of the full space only.
    HartreeFock,
}

/// Per-step two-qubit gate allowance; `"unlimited"` in config files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GateBudget(pub Option<usize>);

impl Serialize for GateBudget {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Some(n) => s.serialize_u64(n as u64),
            None => s.serialize_str("unlimited"),
        }
    }
}

impl<'de> Deserialize<'de> for GateBudget {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(GateBudget(Some(n as usize))),
            Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl std::str::FromStr for GateBudget {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "unlimited" | "none" => Ok(GateBudget(None)),
            n => n.parse().map(|n| GateBudget(Some(n))).map_err(|_| format!("bad gate budget {n:?}")),
        }
    }
}

fn default_dt_grid() -> Vec<f64> {
    vec![1e-3, 2.5, 5.0, 7.5]
}
fn default_shots() -> u64 {
    1500
}
fn default_states() -> Vec<String> {
    ["S0", "S1", "T0"].map(String::from).to_vec()
}
fn default_steps() -> usize {
    2
}
fn default_budget() -> GateBudget {
    GateBudget(Some(500))
}
fn default_roots() -> usize {
    3
}
fn default_true() -> bool {
    true
}
fn default_top_k() -> usize {
    10
}

/// Everything a run needs. Relative paths in a config file are relative to
/// the file's directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub fcidump: PathBuf,
    pub full_active_space: ActiveSpaceConfig,
    pub initial_active_space: ActiveSpaceConfig,
    /// Time per Trotter step, atomic units.
    #[serde(default = "default_dt_grid")]
    pub dt_grid: Vec<f64>,
    #[serde(default = "default_shots")]
    pub shots_per_pair: u64,
    /// Spin-state labels (`S0`, `S1`, `T0`, ...) of the seeding eigenstates.
    #[serde(default = "default_states")]
    pub states: Vec<String>,
    #[serde(default = "default_steps")]
    pub trotter_steps: usize,
    #[serde(default = "default_budget")]
    pub gate_budget: GateBudget,
    #[serde(default)]
    pub seed: u64,
    /// Minimum number of roots solved in each subspace.
    #[serde(default = "default_roots")]
    pub roots: usize,
    #[serde(default)]
    pub baseline: BaselineKind,
    /// Exact CASCI on the full space for fidelities and reference energies.
    #[serde(default = "default_true")]
    pub oracle: bool,
    #[serde(default)]
    pub dump_hamiltonian: bool,
    #[serde(default = "default_top_k")]
    pub top_k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oniom_sidecar: Option<PathBuf>,
}

impl RunConfig {
    /// Default parameters for the given input and spaces.
    pub fn new(fcidump: impl Into<PathBuf>, full: ActiveSpaceConfig, initial: ActiveSpaceConfig) -> Self {
        Self {
            fcidump: fcidump.into(),
            full_active_space: full,
            initial_active_space: initial,
            dt_grid: default_dt_grid(),
            shots_per_pair: default_shots(),
            states: default_states(),
            trotter_steps: default_steps(),
            gate_budget: default_budget(),
            seed: 0,
            roots: default_roots(),
            baseline: BaselineKind::default(),
            oracle: true,
            dump_hamiltonian: false,
            top_k: default_top_k(),
            oniom_sidecar: None,
        }
    }

    pub fn from_toml(text: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.fcidump = base_dir.join(&cfg.fcidump);
        cfg.oniom_sidecar = cfg.oniom_sidecar.map(|p| base_dir.join(p));
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// `(dt, j)` pairs in sampling order: time-major, then state.
    pub fn pairs(&self) -> Vec<(f64, usize)> {
        self.dt_grid.iter().flat_map(|&dt| (0..self.states.len()).map(move |j| (dt, j))).collect()
    }
}

/// Resolved spaces: the full-space table `H`, the initial-space table `H0`
/// and how the initial register sits inside the full one.
#[derive(Debug, Clone)]
pub struct Spaces {
    pub full: IntegralTable,
    pub initial: IntegralTable,
    pub full_spec: ActiveSpaceSpec,
    pub initial_spec: ActiveSpaceSpec,
    /// Initial-register qubit `i` sits on full-register qubit `placement[i]`.
    pub placement: Vec<usize>,
    /// Full-register qubits of orbitals kept doubly occupied in `H0`.
    pub extra_occupied: Vec<usize>,
}

impl Spaces {
    pub fn n_qubits(&self) -> usize {
        2 * self.full.n_orbitals()
    }
}

/// Builds both tables. `H0` is the restriction of `H`, so frozen-core
/// folding is applied once per layer of nesting.
pub fn resolve_spaces(parent: &IntegralTable, cfg: &RunConfig) -> Result<Spaces> {
    let full_spec = cfg.full_active_space.resolve(parent)?;
    let initial_spec = cfg.initial_active_space.resolve(parent)?;
    check_nesting(parent, &full_spec, &initial_spec)
        .map_err(|m| Error::ActiveSpace(format!("initial space {} not nested in full space {}: {m}",
            cfg.initial_active_space.describe(), cfg.full_active_space.describe())))?;
    let full = crate::hamio::restrict_active_space(parent, &full_spec)?;
    let local: Vec<usize> = initial_spec
        .active_orbital_indices
        .iter()
        .map(|p| full_spec.active_orbital_indices.binary_search(p).expect("nesting checked"))
        .collect();
    let local_spec = ActiveSpaceSpec::new(initial_spec.n_active_electrons, local.clone());
    let frozen = local_spec.frozen_orbitals(&full)?;
    let initial = crate::hamio::restrict_active_space(&full, &local_spec)?;
    let placement = local.iter().flat_map(|&p| [2 * p, 2 * p + 1]).collect();
    let extra_occupied = frozen.iter().flat_map(|&p| [2 * p, 2 * p + 1]).collect();
    Ok(Spaces { full, initial, full_spec, initial_spec, placement, extra_occupied })
}

/// The initial window must lie inside the full one, and the orbitals of the
/// full space that it leaves frozen must be the ones the parent freezes too.
fn check_nesting(parent: &IntegralTable, full: &ActiveSpaceSpec, initial: &ActiveSpaceSpec) -> std::result::Result<(), String> {
    let f = &full.active_orbital_indices;
    let i = &initial.active_orbital_indices;
    if let Some(p) = i.iter().find(|p| !f.contains(p)) {
        return Err(format!("orbital {p} is outside the full space"));
    }
    if initial.n_active_electrons > full.n_active_electrons {
        return Err(format!("{} electrons exceed {}", initial.n_active_electrons, full.n_active_electrons));
    }
    let frozen_full = full.frozen_orbitals(parent).map_err(|e| e.to_string())?;
    let frozen_initial = initial.frozen_orbitals(parent).map_err(|e| e.to_string())?;
    if let Some(p) = frozen_full.iter().find(|p| !frozen_initial.contains(p)) {
        return Err(format!("orbital {p} is frozen in the full space but not in the initial space"));
    }
    Ok(())
}

fn is_state_label(s: &str) -> bool {
    let is_count = |d: &str| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit());
    if let Some((mult, k)) = s.strip_prefix('M').and_then(|r| r.split_once('-')) {
        return is_count(mult) && is_count(k);
    }
    ["Qr", "S", "D", "T", "Q"].iter().any(|p| s.strip_prefix(p).is_some_and(is_count))
}

/// Every problem that would stop `run`; empty means runnable.
pub fn validate(cfg: &RunConfig) -> Vec<String> {
    let mut out = Vec::new();
    if cfg.dt_grid.is_empty() {
        out.push("dt_grid is empty".to_string());
    }
    for dt in &cfg.dt_grid {
        if !(dt.is_finite() && *dt > 0.0) {
            out.push(format!("dt_grid entry {dt} is not a positive number"));
        }
    }
    if cfg.states.is_empty() {
        out.push("states is empty".to_string());
    }
    for (k, s) in cfg.states.iter().enumerate() {
        if !is_state_label(s) {
            out.push(format!("state {s:?} is not a spin label like S0 or T1"));
        }
        if cfg.states[..k].contains(s) {
            out.push(format!("state {s:?} listed twice"));
        }
    }
    if cfg.trotter_steps == 0 {
        out.push("trotter_steps must be at least 1".to_string());
    }
    if cfg.roots == 0 {
        out.push("roots must be at least 1".to_string());
    }
    if let Some(p) = &cfg.oniom_sidecar {
        match std::fs::read_to_string(p) {
            Err(e) => out.push(format!("oniom sidecar {}: {e}", p.display())),
            Ok(text) => {
                if let Err(e) = Sidecar::from_json(&text) {
                    out.push(format!("oniom sidecar {}: {e}", p.display()));
                }
            }
        }
    }
    let parent = match std::fs::read_to_string(&cfg.fcidump) {
        Err(e) => {
            out.push(format!("fcidump {}: {e}", cfg.fcidump.display()));
            return out;
        }
        Ok(text) => match parse_fcidump(&text) {
            Err(e) => {
                out.push(format!("fcidump {}: {e}", cfg.fcidump.display()));
                return out;
            }
            Ok(t) => t,
        },
    };
    let full = cfg.full_active_space.resolve(&parent);
    let initial = cfg.initial_active_space.resolve(&parent);
    if let Err(e) = &full {
        out.push(format!("full_active_space {}: {e}", cfg.full_active_space.describe()));
    }
    if let Err(e) = &initial {
        out.push(format!("initial_active_space {}: {e}", cfg.initial_active_space.describe()));
    }
    if let (Ok(f), Ok(i)) = (&full, &initial) {
        if let Err(m) = check_nesting(&parent, f, i) {
            out.push(format!(
                "initial_active_space {} is not nested in full_active_space {}: {m}",
                cfg.initial_active_space.describe(),
                cfg.full_active_space.describe()
            ));
        }
        let n_qubits = 2 * f.active_orbital_indices.len();
        if n_qubits > MAX_QUBITS {
            out.push(format!(
                "full space needs {n_qubits} qubits, above the statevector cap of {MAX_QUBITS}"
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        assert!(is_state_label("S0") && is_state_label("T12") && is_state_label("Qr0"));
        assert!(!is_state_label("0") && !is_state_label("S") && !is_state_label("S1x") && !is_state_label("X1"));
        assert!(is_state_label("M6-2") && !is_state_label("M6"));
    }

    #[test]
    fn budget_parsing() {
        assert_eq!("unlimited".parse::<GateBudget>().unwrap(), GateBudget(None));
        assert_eq!("12".parse::<GateBudget>().unwrap(), GateBudget(Some(12)));
        assert!("x".parse::<GateBudget>().is_err());
    }

    #[test]
    fn toml_defaults_and_paths() {
        let text = r#"
fcidump = "mol.fcidump"
full_active_space = { n_electrons = 4, n_orbitals = 4 }
initial_active_space = { n_electrons = 2, orbitals = [1, 2] }
gate_budget = "unlimited"
"#;
        let cfg = RunConfig::from_toml(text, Path::new("/data")).unwrap();
        assert_eq!(cfg.fcidump, PathBuf::from("/data/mol.fcidump"));
        assert_eq!(cfg.dt_grid, vec![1e-3, 2.5, 5.0, 7.5]);
        assert_eq!(cfg.shots_per_pair, 1500);
        assert_eq!(cfg.gate_budget, GateBudget(None));
        assert_eq!(cfg.pairs().len(), 12);
        let again = RunConfig::from_toml(&cfg.to_toml(), Path::new("/elsewhere")).unwrap();
        assert_eq!(again, cfg);
        assert!(RunConfig::from_toml("fcidump = 3", Path::new(".")).is_err());
    }
}
