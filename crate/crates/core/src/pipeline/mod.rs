//! The end-to-end run: Hamiltonians, seeding eigenstates, time-evolved
//! sampling, selection, subspace diagonalization and reports, each stage
//! persisted so later stages can be rerun from disk.

mod config;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub use config::{resolve_spaces, validate, ActiveSpaceConfig, BaselineKind, GateBudget, RunConfig, Spaces};

use crate::det::{Determinant, Sector};
use crate::error::{Error, Result};
use crate::fermion_qubit::{embed_operator, jordan_wigner, subtract, PauliSum};
use crate::hamio::{parse_fcidump, IntegralTable};
use crate::oniom::{profile_csv, profile_report, MethodResult, MetricsReport, ProfileRow, Sidecar, Source};
use crate::oracle::{casci, fidelity, hf_energy, s_squared, spin_labels, CasciSolution, CiState};
use crate::qsci::{qsci_energies, SubspaceResult};
use crate::selection::{histogram, merge, postselect, ConfigurationSet, PostSelected};
use crate::simulator::{build_trotter_plan, evolve, prepare_initial_state, sample_stream, ShotBatch, TrotterPlan};

/// Pipeline stages in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Hamiltonian,
    InitialStates,
    Sampling,
    Selection,
    Qsci,
    Report,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Hamiltonian => "hamiltonian",
            Stage::InitialStates => "initial-states",
            Stage::Sampling => "sampling",
            Stage::Selection => "selection",
            Stage::Qsci => "qsci",
            Stage::Report => "report",
        }
    }

    pub const ALL: [Stage; 6] =
        [Stage::Hamiltonian, Stage::InitialStates, Stage::Sampling, Stage::Selection, Stage::Qsci, Stage::Report];
}

impl std::str::FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Stage::ALL.into_iter().find(|st| st.name() == s).ok_or_else(|| format!("unknown stage {s:?}"))
    }
}

fn at<T>(stage: Stage, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        e @ Error::Stage { .. } => e,
        e => Error::Stage { stage: stage.name(), source: Box::new(e) },
    })
}

/// Artifact file names.
pub mod artifacts {
    pub const CONFIG: &str = "config.toml";
    pub const HAMILTONIAN: &str = "hamiltonian.json";
    pub const OPERATOR: &str = "h_minus_h0.json";
    pub const H0_EIGENPAIRS: &str = "h0_eigenpairs.json";
    pub const TROTTER: &str = "trotter_plans.json";
    pub const SHOTS: &str = "shots.jsonl";
    pub const POSTSELECTION: &str = "postselection.json";
    pub const CONFIGURATIONS: &str = "configurations.json";
    pub const SUBSPACE: &str = "subspace.json";
    pub const BASELINE_SUBSPACE: &str = "baseline_subspace.json";
    pub const ORACLE: &str = "oracle.json";
    pub const METRICS_CSV: &str = "metrics.csv";
    pub const METRICS_JSON: &str = "metrics.json";
    pub const ONIOM_CSV: &str = "oniom.csv";
    pub const ONIOM_JSON: &str = "oniom.json";
    pub const MANIFEST: &str = "manifest.json";

    pub fn histogram(label: &str) -> String {
        format!("histogram_{label}.csv")
    }
}

/// Writes through a temporary file and a rename.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let tmp = dir.join(format!(".{name}.tmp"));
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, dir.join(name))?;
    Ok(())
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    write_atomic(dir, name, &s)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Exact eigenpairs with spin labels and the roots matching requested labels.
#[derive(Debug, Clone)]
pub struct LabelledCasci {
    pub solution: CasciSolution,
    pub labels: Vec<String>,
}

impl LabelledCasci {
    pub fn root(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn state(&self, label: &str) -> Option<CiState> {
        self.root(label).map(|k| self.solution.state(k))
    }

    pub fn energy(&self, label: &str) -> Option<f64> {
        self.root(label).map(|k| self.solution.eigenvalues[k])
    }
}

/// Grows the number of roots until every label in `wanted` appears or the
/// sector is exhausted.
fn until_labelled<T>(
    wanted: &[String],
    min_roots: usize,
    dim: usize,
    mut solve: impl FnMut(usize) -> Result<(T, Vec<String>)>,
) -> Result<(T, Vec<String>)> {
    let mut n = min_roots.max(wanted.len()).min(dim);
    loop {
        let (value, labels) = solve(n)?;
        if n == dim || wanted.iter().all(|w| labels.contains(w)) {
            return Ok((value, labels));
        }
        n = (n + 3).min(dim);
    }
}

/// CASCI of a table, with roots added until all `wanted` labels appear.
pub fn labelled_casci(table: &IntegralTable, wanted: &[String], min_roots: usize) -> Result<LabelledCasci> {
    let dim = Sector::of_table(table).dimension();
    let (solution, labels) = until_labelled(wanted, min_roots, dim, |n| {
        let sol = casci(table, n)?;
        let s2: Vec<f64> = (0..n).map(|k| s_squared(&sol.state(k))).collect();
        Ok((sol, spin_labels(&s2)))
    })?;
    Ok(LabelledCasci { solution, labels })
}

/// QSCI with roots added until all `wanted` labels appear.
pub fn labelled_qsci(
    table: &IntegralTable,
    configs: &ConfigurationSet,
    wanted: &[String],
    min_roots: usize,
) -> Result<SubspaceResult> {
    let (r, _) = until_labelled(wanted, min_roots, configs.len(), |n| {
        let r = qsci_energies(table, configs, n)?;
        let labels = r.labels.clone();
        Ok((r, labels))
    })?;
    Ok(r)
}

/// `JW(H) - embed(JW(H0))` on the full register.
pub fn evolution_operator(spaces: &Spaces) -> Result<PauliSum> {
    let h = jordan_wigner(&spaces.full);
    let h0 = embed_operator(&jordan_wigner(&spaces.initial), &spaces.placement, spaces.n_qubits())?;
    subtract(&h, &h0)
}

/// Embedded baseline set on the full register.
pub fn baseline_set(spaces: &Spaces, kind: BaselineKind) -> Result<ConfigurationSet> {
    let sector = Sector::of_table(&spaces.full);
    match kind {
        BaselineKind::HartreeFock => ConfigurationSet::baseline(sector, [sector.aufbau()]),
        BaselineKind::InitialSector => {
            let small = Sector::of_table(&spaces.initial).determinants();
            let dets = small.into_iter().map(|d| embed_determinant(d, spaces));
            ConfigurationSet::baseline(sector, dets)
        }
    }
}

fn embed_determinant(d: Determinant, spaces: &Spaces) -> Determinant {
    let mut bits: u64 = spaces.extra_occupied.iter().map(|q| 1u64 << q).sum();
    for (i, &t) in spaces.placement.iter().enumerate() {
        if d.is_occupied(i) {
            bits |= 1 << t;
        }
    }
    Determinant(bits)
}

#[derive(Serialize)]
struct TableSummary {
    n_orbitals: usize,
    n_electrons: usize,
    ms2: i32,
    e_core: f64,
    hf_energy: f64,
    sector_dimension: usize,
}

impl TableSummary {
    fn of(t: &IntegralTable) -> Self {
        Self {
            n_orbitals: t.n_orbitals(),
            n_electrons: t.n_electrons(),
            ms2: t.ms2(),
            e_core: t.e_core(),
            hf_energy: hf_energy(t),
            sector_dimension: Sector::of_table(t).dimension(),
        }
    }
}

#[derive(Serialize)]
struct HamiltonianSummary {
    parent: TableSummary,
    full: TableSummary,
    initial: TableSummary,
    full_orbitals: Vec<usize>,
    initial_orbitals: Vec<usize>,
    n_qubits: usize,
    placement: Vec<usize>,
    extra_occupied: Vec<usize>,
    n_pauli_terms_h: usize,
    n_pauli_terms_h_minus_h0: usize,
}

#[derive(Serialize)]
struct H0State {
    j: usize,
    label: String,
    root: usize,
    energy: f64,
    s_squared: f64,
    /// `(initial-register bitstring, coefficient)` for nonzero coefficients.
    coefficients: Vec<(String, f64)>,
}

#[derive(Serialize)]
struct PlanSummary {
    dt: f64,
    n_steps: usize,
    total_time: f64,
    gate_budget: Option<usize>,
    n_terms: usize,
    n_retained: usize,
    gates_per_step: usize,
}

#[derive(Serialize)]
struct PairStats {
    dt: f64,
    j: usize,
    label: String,
    n_shots: u64,
    kept: u64,
    rejected: u64,
    distinct_kept: usize,
}

#[derive(Serialize)]
struct SelectionSummary {
    pairs: Vec<PairStats>,
    n_shots: u64,
    n_kept: u64,
    n_rejected: u64,
    n_baseline: usize,
    /// Sampled configurations outside the baseline, before augmentation.
    n_new_sampled: usize,
    /// New configurations including spin-complement additions.
    n_new_with_augmentation: usize,
    n_configurations: usize,
}

#[derive(Serialize)]
struct OracleSummary {
    eigenvalues: Vec<f64>,
    labels: Vec<String>,
    hf_energy: f64,
}

#[derive(Serialize)]
struct Manifest {
    package: &'static str,
    version: &'static str,
    config_sha256: String,
    fcidump_sha256: String,
    artifacts: BTreeMap<String, String>,
}

/// Everything a run produced, for callers that want more than files.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub spaces: Spaces,
    pub h0: LabelledCasci,
    pub batches: Vec<ShotBatch>,
    pub baseline: ConfigurationSet,
    pub configurations: ConfigurationSet,
    pub te_qsci: SubspaceResult,
    pub baseline_result: SubspaceResult,
    pub oracle: Option<LabelledCasci>,
    pub metrics: MetricsReport,
    pub oniom: Option<Vec<ProfileRow>>,
}

/// Runs every stage, writing artifacts into `out_dir`.
pub fn run(cfg: &RunConfig, out_dir: &Path) -> Result<RunOutcome> {
    run_from(cfg, out_dir, Stage::Hamiltonian)
}

/// Runs from `start`, reading earlier stages' artifacts from `out_dir` where
/// they are needed. Hamiltonians and seeding states are recomputed from the
/// inputs; they are cheap and deterministic.
pub fn run_from(cfg: &RunConfig, out_dir: &Path, start: Stage) -> Result<RunOutcome> {
    at(Stage::Hamiltonian, check_config(cfg))?;
    at(Stage::Hamiltonian, std::fs::create_dir_all(out_dir).map_err(Error::from))?;
    let config_text = cfg.to_toml();

    // hamiltonian
    let fcidump_text = at(Stage::Hamiltonian, std::fs::read_to_string(&cfg.fcidump).map_err(Error::from))?;
    let (spaces, operator) = at(Stage::Hamiltonian, (|| {
        let parent = parse_fcidump(&fcidump_text)?;
        let spaces = resolve_spaces(&parent, cfg)?;
        let operator = evolution_operator(&spaces)?;
        if start <= Stage::Hamiltonian {
            write_atomic(out_dir, artifacts::CONFIG, &config_text)?;
            let summary = HamiltonianSummary {
                parent: TableSummary::of(&parent),
                full: TableSummary::of(&spaces.full),
                initial: TableSummary::of(&spaces.initial),
                full_orbitals: spaces.full_spec.active_orbital_indices.clone(),
                initial_orbitals: spaces.initial_spec.active_orbital_indices.clone(),
                n_qubits: spaces.n_qubits(),
                placement: spaces.placement.clone(),
                extra_occupied: spaces.extra_occupied.clone(),
                n_pauli_terms_h: jordan_wigner(&spaces.full).len(),
                n_pauli_terms_h_minus_h0: operator.len(),
            };
            write_json(out_dir, artifacts::HAMILTONIAN, &summary)?;
            if cfg.dump_hamiltonian {
                write_json(out_dir, artifacts::OPERATOR, &operator.to_json())?;
            }
        }
        Ok((spaces, operator))
    })())?;

    // initial states
    let h0 = at(Stage::InitialStates, (|| {
        let h0 = labelled_casci(&spaces.initial, &cfg.states, cfg.roots)?;
        let width = 2 * spaces.initial.n_orbitals();
        let mut states = Vec::new();
        for (j, label) in cfg.states.iter().enumerate() {
            let root = h0.root(label).ok_or_else(|| {
                Error::InvalidState(format!("no {label} state in the initial space (found {:?})", h0.labels))
            })?;
            let st = h0.solution.state(root);
            states.push(H0State {
                j,
                label: label.clone(),
                root,
                energy: h0.solution.eigenvalues[root],
                s_squared: s_squared(&st),
                coefficients: st
                    .dets
                    .iter()
                    .zip(&st.coeffs)
                    .filter(|(_, c)| **c != 0.0)
                    .map(|(d, c)| (d.to_bitstring(width), *c))
                    .collect(),
            });
        }
        if start <= Stage::InitialStates {
            write_json(out_dir, artifacts::H0_EIGENPAIRS, &states)?;
        }
        Ok(h0)
    })())?;

    // sampling
    let pairs = cfg.pairs();
    let n_qubits = spaces.n_qubits();
    let batches = if start <= Stage::Sampling {
        at(Stage::Sampling, sample_all(cfg, &spaces, &operator, &h0, out_dir))?
    } else {
        at(Stage::Selection, (|| {
            let text = std::fs::read_to_string(out_dir.join(artifacts::SHOTS))?;
            ShotBatch::from_jsonl(&text, n_qubits, &pairs)
        })())?
    };
    drop(operator);

    // selection
    let sector = Sector::of_table(&spaces.full);
    let baseline = at(Stage::Selection, baseline_set(&spaces, cfg.baseline))?;
    let configurations = if start <= Stage::Selection {
        at(Stage::Selection, (|| {
            let kept: Vec<PostSelected> = batches.iter().map(|b| postselect(b, &sector)).collect::<Result<_>>()?;
            let merged = merge(&kept, &baseline)?;
            let summary = SelectionSummary {
                pairs: kept
                    .iter()
                    .map(|k| PairStats {
                        dt: k.dt,
                        j: k.state_index,
                        label: cfg.states[k.state_index].clone(),
                        n_shots: k.n_shots,
                        kept: k.kept_count(),
                        rejected: k.rejected_count,
                        distinct_kept: k.kept.len(),
                    })
                    .collect(),
                n_shots: kept.iter().map(|k| k.n_shots).sum(),
                n_kept: kept.iter().map(|k| k.kept_count()).sum(),
                n_rejected: kept.iter().map(|k| k.rejected_count).sum(),
                n_baseline: baseline.len(),
                n_new_sampled: merged.new_sampled(),
                n_new_with_augmentation: merged.new_sampled() + merged.new_augmented_only(),
                n_configurations: merged.len(),
            };
            write_json(out_dir, artifacts::POSTSELECTION, &summary)?;
            write_atomic(out_dir, artifacts::CONFIGURATIONS, &(merged.to_json() + "\n"))?;
            Ok(merged)
        })())?
    } else {
        at(Stage::Qsci, (|| {
            let text = std::fs::read_to_string(out_dir.join(artifacts::CONFIGURATIONS))?;
            let set = ConfigurationSet::from_json(&text)?;
            if set.sector() != sector {
                return Err(Error::InvalidState("persisted configurations belong to another sector".into()));
            }
            Ok(set)
        })())?
    };

    // qsci
    let (te_qsci, baseline_result) = at(Stage::Qsci, (|| {
        let te = labelled_qsci(&spaces.full, &configurations, &cfg.states, cfg.roots)?;
        let base = labelled_qsci(&spaces.full, &baseline, &cfg.states, cfg.roots)?;
        if start <= Stage::Qsci {
            write_atomic(out_dir, artifacts::SUBSPACE, &(te.to_json(cfg.top_k) + "\n"))?;
            write_atomic(out_dir, artifacts::BASELINE_SUBSPACE, &(base.to_json(cfg.top_k) + "\n"))?;
        }
        Ok((te, base))
    })())?;

    // report
    let (oracle, metrics, oniom) = at(Stage::Report, (|| {
        let oracle = if cfg.oracle { Some(labelled_casci(&spaces.full, &cfg.states, cfg.roots)?) } else { None };
        if let Some(o) = &oracle {
            write_json(
                out_dir,
                artifacts::ORACLE,
                &OracleSummary {
                    eigenvalues: o.solution.eigenvalues.clone(),
                    labels: o.labels.clone(),
                    hf_energy: hf_energy(&spaces.full),
                },
            )?;
        }
        let metrics = metrics_report(cfg, &spaces, &baseline_result, &te_qsci, oracle.as_ref());
        write_atomic(out_dir, artifacts::METRICS_CSV, &metrics.to_csv())?;
        write_atomic(out_dir, artifacts::METRICS_JSON, &(metrics.to_json() + "\n"))?;

        for (j, label) in cfg.states.iter().enumerate() {
            let reference = match &oracle {
                Some(o) => o.state(label),
                None => te_qsci.root_by_label(label).map(|k| te_qsci.state(k)),
            };
            let weights: Vec<(Determinant, f64)> = reference
                .map(|s| s.dets.into_iter().zip(s.coeffs.into_iter().map(|c| c * c)).collect())
                .unwrap_or_default();
            let mine: Vec<ShotBatch> = batches.iter().filter(|b| b.state_index == j).cloned().collect();
            let h = histogram(&mine, &baseline, &weights, &sector)?;
            write_atomic(out_dir, &artifacts::histogram(label), &h.to_csv())?;
        }

        let oniom = match &cfg.oniom_sidecar {
            None => None,
            Some(path) => {
                let sidecar = Sidecar::from_json(&std::fs::read_to_string(path)?)?;
                let resolved = sidecar.resolve(|label| {
                    te_qsci
                        .root_by_label(label)
                        .map(|k| (te_qsci.eigenvalues[k], Source::Qsci))
                        .or_else(|| oracle.as_ref().and_then(|o| o.energy(label)).map(|e| (e, Source::Oracle)))
                })?;
                let reference = sidecar.reference_label().unwrap_or_default().to_string();
                let rows = profile_report(&resolved, &reference)?;
                write_atomic(out_dir, artifacts::ONIOM_CSV, &profile_csv(&rows))?;
                write_json(out_dir, artifacts::ONIOM_JSON, &rows)?;
                Some(rows)
            }
        };
        write_manifest(out_dir, &config_text, &fcidump_text)?;
        Ok((oracle, metrics, oniom))
    })())?;

    Ok(RunOutcome { spaces, h0, batches, baseline, configurations, te_qsci, baseline_result, oracle, metrics, oniom })
}

fn check_config(cfg: &RunConfig) -> Result<()> {
    let problems = validate(cfg);
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::Config(problems.join("; ")))
    }
}

/// Trotter plans per `dt`, then one circuit per `(dt, j)` pair sampled on
/// its own ChaCha stream (the pair index), so the result does not depend on
/// scheduling.
fn sample_all(
    cfg: &RunConfig,
    spaces: &Spaces,
    operator: &PauliSum,
    h0: &LabelledCasci,
    out_dir: &Path,
) -> Result<Vec<ShotBatch>> {
    let n_qubits = spaces.n_qubits();
    let plans: Vec<TrotterPlan> = cfg
        .dt_grid
        .iter()
        .map(|&dt| build_trotter_plan(operator, dt, cfg.trotter_steps, cfg.gate_budget.0))
        .collect::<Result<_>>()?;
    let summaries: Vec<PlanSummary> = plans
        .iter()
        .map(|p| PlanSummary {
            dt: p.dt,
            n_steps: p.n_steps,
            total_time: p.total_time(),
            gate_budget: p.gate_budget,
            n_terms: p.terms.len(),
            n_retained: p.n_retained(),
            gates_per_step: p.gates_per_step(),
        })
        .collect();
    write_json(out_dir, artifacts::TROTTER, &summaries)?;

    let seeds: Vec<Vec<(Determinant, f64)>> = cfg
        .states
        .iter()
        .map(|label| {
            let st = h0.state(label).expect("checked in the previous stage");
            st.dets.into_iter().zip(st.coeffs).collect()
        })
        .collect();
    let pairs = cfg.pairs();
    let batches: Vec<ShotBatch> = pairs
        .par_iter()
        .enumerate()
        .map(|(k, &(dt, j))| {
            let plan = &plans[cfg.dt_grid.iter().position(|&d| d == dt).expect("dt from grid")];
            let psi0 = prepare_initial_state(&seeds[j], &spaces.placement, &spaces.extra_occupied, n_qubits)?;
            let psi = evolve(&psi0, plan)?;
            let mut batch = sample_stream(&psi, cfg.shots_per_pair, cfg.seed, k as u64)?;
            batch.dt = dt;
            batch.state_index = j;
            Ok(batch)
        })
        .collect::<Result<_>>()?;
    let jsonl: String = batches.iter().map(ShotBatch::to_jsonl).collect();
    write_atomic(out_dir, artifacts::SHOTS, &jsonl)?;
    Ok(batches)
}

fn method_row(name: String, r: &SubspaceResult, states: &[String], exact: Option<&LabelledCasci>) -> MethodResult {
    MethodResult {
        method: name,
        energies: states.iter().map(|l| r.root_by_label(l).map(|k| r.eigenvalues[k])).collect(),
        fidelities: states
            .iter()
            .map(|l| match (r.root_by_label(l), exact.and_then(|o| o.state(l))) {
                (Some(k), Some(ex)) => Some(fidelity(&r.state(k), &ex)),
                _ => None,
            })
            .collect(),
    }
}

fn metrics_report(
    cfg: &RunConfig,
    spaces: &Spaces,
    baseline: &SubspaceResult,
    te: &SubspaceResult,
    oracle: Option<&LabelledCasci>,
) -> MetricsReport {
    let states = &cfg.states;
    let e_hf = hf_energy(&spaces.full);
    let full_name = format!("({},{})", spaces.full.n_electrons(), spaces.full.n_orbitals());
    let aufbau = Sector::of_table(&spaces.full).aufbau();
    let hf_state = CiState::new(vec![aufbau], vec![1.0]);
    let mut rows = vec![MethodResult {
        method: "HF".into(),
        energies: states.iter().enumerate().map(|(k, _)| (k == 0).then_some(e_hf)).collect(),
        fidelities: states
            .iter()
            .enumerate()
            .map(|(k, l)| if k == 0 { oracle.and_then(|o| o.state(l)).map(|ex| fidelity(&hf_state, &ex)) } else { None })
            .collect(),
    }];
    let baseline_name = match cfg.baseline {
        BaselineKind::InitialSector => {
            format!("CASCI({},{})", spaces.initial.n_electrons(), spaces.initial.n_orbitals())
        }
        BaselineKind::HartreeFock => "baseline".to_string(),
    };
    rows.push(method_row(baseline_name, baseline, states, oracle));
    rows.push(method_row(format!("TE-QSCI{full_name}"), te, states, oracle));
    if let Some(o) = oracle {
        rows.push(MethodResult {
            method: format!("CASCI{full_name}"),
            energies: states.iter().map(|l| o.energy(l)).collect(),
            fidelities: states.iter().map(|l| o.root(l).map(|_| 1.0)).collect(),
        });
    }
    MetricsReport::new(states.clone(), e_hf, &rows)
}

fn write_manifest(out_dir: &Path, config_text: &str, fcidump_text: &str) -> Result<()> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(out_dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.sort();
    let mut hashes = BTreeMap::new();
    for f in files {
        let name = f.file_name().and_then(|n| n.to_str()).unwrap_or_default().to_string();
        if name == artifacts::MANIFEST || name.starts_with('.') || !f.is_file() {
            continue;
        }
        hashes.insert(name, sha256_hex(&std::fs::read(&f)?));
    }
    write_json(
        out_dir,
        artifacts::MANIFEST,
        &Manifest {
            package: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            config_sha256: sha256_hex(config_text.as_bytes()),
            fcidump_sha256: sha256_hex(fcidump_text.as_bytes()),
            artifacts: hashes,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_names_round_trip() {
        for s in Stage::ALL {
            assert_eq!(s.name().parse::<Stage>().unwrap(), s);
        }
        assert!("nope".parse::<Stage>().is_err());
    }

    #[test]
    fn sha256_of_empty_input() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
