//! Molecular integrals: FCIDUMP ingestion and active-space restriction.
//!
//! Two-electron integrals are kept in chemists' notation `(pq|rs)` as a dense
//! `M^4` array with all eight permutational images filled in, so lookups never
//! need to canonicalize indices.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;

/// One- and two-electron integrals plus the scalar core energy of an active space.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralTable {
    n_orbitals: usize,
    n_electrons: usize,
    ms2: i32,
    e_core: f64,
    h1: Vec<f64>,
    h2: Vec<f64>,
}

impl IntegralTable {
    /// Builds a table from dense arrays, checking hermiticity, the eight-fold
    /// symmetry of `h2` and the electron/spin bookkeeping.
    pub fn new(
        n_orbitals: usize,
        n_electrons: usize,
        ms2: i32,
        e_core: f64,
        h1: Vec<f64>,
        h2: Vec<f64>,
    ) -> Result<Self> {
        let m = n_orbitals;
        if h1.len() != m * m || h2.len() != m * m * m * m {
            return Err(Error::InvalidTable(format!(
                "array sizes {} / {} do not match NORB={m}",
                h1.len(),
                h2.len()
            )));
        }
        let table = Self { n_orbitals, n_electrons, ms2, e_core, h1, h2 };
        table.check_sector()?;
        table.check_symmetry()?;
        Ok(table)
    }

    /// All-zero table, used as the accumulator while parsing.
    fn zeros(n_orbitals: usize, n_electrons: usize, ms2: i32) -> Self {
        let m = n_orbitals;
        Self {
            n_orbitals,
            n_electrons,
            ms2,
            e_core: 0.0,
            h1: vec![0.0; m * m],
            h2: vec![0.0; m * m * m * m],
        }
    }

    fn check_sector(&self) -> Result<()> {
        if self.n_electrons > 2 * self.n_orbitals {
            return Err(Error::InvalidTable(format!(
                "{} electrons do not fit in {} orbitals",
                self.n_electrons, self.n_orbitals
            )));
        }
        if (self.n_electrons as i64 + self.ms2 as i64) % 2 != 0
            || self.ms2.unsigned_abs() as usize > self.n_electrons
        {
            return Err(Error::InvalidTable(format!(
                "MS2={} is incompatible with NELEC={}",
                self.ms2, self.n_electrons
            )));
        }
        let n_alpha = (self.n_electrons as i64 + self.ms2 as i64) / 2;
        let n_beta = (self.n_electrons as i64 - self.ms2 as i64) / 2;
        if n_alpha as usize > self.n_orbitals || n_beta as usize > self.n_orbitals {
            return Err(Error::InvalidTable("spin occupation exceeds orbital count".into()));
        }
        Ok(())
    }

    fn check_symmetry(&self) -> Result<()> {
        let m = self.n_orbitals;
        for p in 0..m {
            for q in 0..p {
                if (self.h1(p, q) - self.h1(q, p)).abs() > SYMMETRY_TOL {
                    return Err(Error::InvalidTable(format!("h1 not symmetric at ({p},{q})")));
                }
            }
        }
        for p in 0..m {
            for q in 0..m {
                for r in 0..m {
                    for s in 0..m {
                        let v = self.eri(p, q, r, s);
                        for (a, b, c, d) in permutations(p, q, r, s) {
                            if (self.eri(a, b, c, d) - v).abs() > SYMMETRY_TOL {
                                return Err(Error::InvalidTable(format!(
                                    "h2 lacks 8-fold symmetry at ({p}{q}|{r}{s})"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n_orbitals(&self) -> usize {
        self.n_orbitals
    }

    pub fn n_electrons(&self) -> usize {
        self.n_electrons
    }

    pub fn ms2(&self) -> i32 {
        self.ms2
    }

    pub fn e_core(&self) -> f64 {
        self.e_core
    }

    pub fn n_alpha(&self) -> usize {
        ((self.n_electrons as i32 + self.ms2) / 2) as usize
    }

    pub fn n_beta(&self) -> usize {
        ((self.n_electrons as i32 - self.ms2) / 2) as usize
    }

    #[inline]
    pub fn h1(&self, p: usize, q: usize) -> f64 {
        self.h1[p * self.n_orbitals + q]
    }

    /// Chemists'-notation two-electron integral `(pq|rs)`.
    #[inline]
    pub fn eri(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let m = self.n_orbitals;
        self.h2[((p * m + q) * m + r) * m + s]
    }

    fn set_h1(&mut self, p: usize, q: usize, v: f64) {
        let m = self.n_orbitals;
        self.h1[p * m + q] = v;
        self.h1[q * m + p] = v;
    }

    fn set_eri(&mut self, p: usize, q: usize, r: usize, s: usize, v: f64) {
        let m = self.n_orbitals;
        for (a, b, c, d) in permutations(p, q, r, s) {
            self.h2[((a * m + b) * m + c) * m + d] = v;
        }
    }
}

fn permutations(p: usize, q: usize, r: usize, s: usize) -> [(usize, usize, usize, usize); 8] {
    [
        (p, q, r, s),
        (q, p, r, s),
        (p, q, s, r),
        (q, p, s, r),
        (r, s, p, q),
        (s, r, p, q),
        (r, s, q, p),
        (s, r, q, p),
    ]
}

#[derive(Debug, Default)]
struct Header {
    norb: Option<usize>,
    nelec: Option<usize>,
    ms2: Option<i32>,
}

fn parse_header(text: &str) -> Result<Header> {
    // `KEY = v1, v2, ... KEY2 = ...` with commas and spacing optional
    let normalized = text.replace(',', " ").replace('=', " = ");
    let tokens: Vec<&str> = normalized.split_whitespace().collect();
    let mut header = Header::default();
    let mut i = 0;
    while i < tokens.len() {
        let tok = tokens[i];
        if tokens.get(i + 1) == Some(&"=") {
            let key = tok.to_ascii_uppercase();
            let mut values = Vec::new();
            let mut j = i + 2;
            while j < tokens.len() && tokens.get(j + 1) != Some(&"=") {
                values.push(tokens[j]);
                j += 1;
            }
            let first = || {
                values
                    .first()
                    .copied()
                    .ok_or_else(|| Error::Header(format!("{key} has no value")))
            };
            match key.as_str() {
                "NORB" => {
                    header.norb = Some(
                        first()?.parse().map_err(|_| Error::Header(format!("bad NORB {:?}", values)))?,
                    )
                }
                "NELEC" => {
                    header.nelec = Some(
                        first()?.parse().map_err(|_| Error::Header(format!("bad NELEC {:?}", values)))?,
                    )
                }
                "MS2" => {
                    header.ms2 = Some(
                        first()?.parse().map_err(|_| Error::Header(format!("bad MS2 {:?}", values)))?,
                    )
                }
                // ORBSYM, ISYM, UHF and friends: point-group labels are ignored
                _ => {}
            }
            i = j;
        } else {
            i += 1;
        }
    }
    Ok(header)
}

fn parse_value(tok: &str, line: usize) -> Result<f64> {
    if tok.starts_with('(') {
        return Err(Error::ComplexIntegral(line));
    }
    tok.replace(['D', 'd'], "E")
        .parse::<f64>()
        .map_err(|_| Error::Record { line, msg: format!("cannot parse value {tok:?}") })
}

/// Parses FCIDUMP text (Molpro convention, 1-based indices).
///
/// Records with indices `0 0 0 0` carry the core energy, `i j 0 0` the
/// one-electron integrals and `i j k l` the two-electron integrals. Orbital
/// energy records (`i 0 0 0`) are skipped.
pub fn parse_fcidump(text: &str) -> Result<IntegralTable> {
    let mut lines = text.lines().enumerate();
    let mut header_text = String::new();
    let mut closed = false;
    let mut started = false;
    for (_, line) in lines.by_ref() {
        let trimmed = line.trim();
        if !started {
            if trimmed.is_empty() {
                continue;
            }
            let upper = trimmed.to_ascii_uppercase();
            if !upper.starts_with("&FCI") {
                return Err(Error::Header("missing &FCI namelist".into()));
            }
            started = true;
            let rest = &trimmed[4..];
            if let Some(body) = strip_terminator(rest) {
                header_text.push_str(body);
                closed = true;
                break;
            }
            header_text.push_str(rest);
            header_text.push(' ');
            continue;
        }
        if let Some(body) = strip_terminator(trimmed) {
            header_text.push_str(body);
            closed = true;
            break;
        }
        header_text.push_str(trimmed);
        header_text.push(' ');
    }
    if !closed {
        return Err(Error::Header("namelist is not terminated by &END or /".into()));
    }
    let header = parse_header(&header_text)?;
    let norb = header.norb.ok_or_else(|| Error::Header("NORB missing".into()))?;
    let nelec = header.nelec.ok_or_else(|| Error::Header("NELEC missing".into()))?;
    let ms2 = header.ms2.unwrap_or(0);

    let mut table = IntegralTable::zeros(norb, nelec, ms2);
    table.check_sector().map_err(|e| Error::Header(e.to_string()))?;

    let mut seen: HashMap<[usize; 4], f64> = HashMap::new();
    let mut e_core: Option<f64> = None;
    for (idx, line) in lines {
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 5 {
            return Err(Error::Record {
                line: lineno,
                msg: format!("expected value and four indices, found {} fields", fields.len()),
            });
        }
        let value = parse_value(fields[0], lineno)?;
        let mut ix = [0usize; 4];
        for (k, f) in fields[1..].iter().enumerate() {
            let v: i64 = f.parse().map_err(|_| Error::Record {
                line: lineno,
                msg: format!("cannot parse index {f:?}"),
            })?;
            if v < 0 || v as usize > norb {
                return Err(Error::IndexOutOfRange { line: lineno, index: v.max(0) as usize, norb });
            }
            ix[k] = v as usize;
        }
        match ix {
            [0, 0, 0, 0] => {
                if let Some(prev) = e_core {
                    if (prev - value).abs() > SYMMETRY_TOL {
                        return Err(Error::ConflictingDuplicate {
                            indices: "0 0 0 0".into(),
                            first: prev,
                            second: value,
                        });
                    }
                }
                e_core = Some(value);
            }
            [_, 0, 0, 0] => {}
            [i, j, 0, 0] if i > 0 && j > 0 => {
                let key = [i.max(j), i.min(j), 0, 0];
                check_duplicate(&mut seen, key, value)?;
                table.set_h1(i - 1, j - 1, value);
            }
            [i, j, k, l] if i > 0 && j > 0 && k > 0 && l > 0 => {
                let key = canonical_eri_key(i, j, k, l);
                check_duplicate(&mut seen, key, value)?;
                table.set_eri(i - 1, j - 1, k - 1, l - 1, value);
            }
            _ => {
                return Err(Error::Record {
                    line: lineno,
                    msg: format!("unrecognized index pattern {ix:?}"),
                })
            }
        }
    }
    table.e_core = e_core.unwrap_or(0.0);
    Ok(table)
}

fn strip_terminator(s: &str) -> Option<&str> {
    let upper = s.to_ascii_uppercase();
    if let Some(pos) = upper.find("&END") {
        return Some(&s[..pos]);
    }
    if let Some(body) = s.strip_suffix('/') {
        return Some(body);
    }
    if s == "/" {
        return Some("");
    }
    None
}

fn canonical_eri_key(i: usize, j: usize, k: usize, l: usize) -> [usize; 4] {
    let (a, b) = (i.max(j), i.min(j));
    let (c, d) = (k.max(l), k.min(l));
    if (a, b) >= (c, d) {
        [a, b, c, d]
    } else {
        [c, d, a, b]
    }
}

fn check_duplicate(seen: &mut HashMap<[usize; 4], f64>, key: [usize; 4], value: f64) -> Result<()> {
    if let Some(&prev) = seen.get(&key) {
        if (prev - value).abs() > SYMMETRY_TOL {
            return Err(Error::ConflictingDuplicate {
                indices: format!("{} {} {} {}", key[0], key[1], key[2], key[3]),
                first: prev,
                second: value,
            });
        }
    }
    seen.insert(key, value);
    Ok(())
}

/// Serializes a table to FCIDUMP text. Values use the shortest round-trip
/// representation, so `parse_fcidump(write_fcidump(t)) == t` bit for bit.
pub fn write_fcidump(table: &IntegralTable) -> String {
    let m = table.n_orbitals;
    let mut out = String::new();
    let orbsym = vec!["1"; m].join(",");
    let _ = writeln!(
        out,
        " &FCI NORB={},NELEC={},MS2={},\n  ORBSYM={},\n  ISYM=1,\n &END",
        m, table.n_electrons, table.ms2, orbsym
    );
    for i in 0..m {
        for j in 0..=i {
            for k in 0..m {
                for l in 0..=k {
                    if (i, j) < (k, l) {
                        continue;
                    }
                    let v = table.eri(i, j, k, l);
                    if v != 0.0 {
                        let _ = writeln!(out, "{:e} {} {} {} {}", v, i + 1, j + 1, k + 1, l + 1);
                    }
                }
            }
        }
    }
    for i in 0..m {
        for j in 0..=i {
            let v = table.h1(i, j);
            if v != 0.0 {
                let _ = writeln!(out, "{:e} {} {} 0 0", v, i + 1, j + 1);
            }
        }
    }
    let _ = writeln!(out, "{:e} 0 0 0 0", table.e_core);
    out
}

/// Electron count and ordered orbital window selected from a parent table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActiveSpaceSpec {
    pub n_active_electrons: usize,
    pub active_orbital_indices: Vec<usize>,
}

impl ActiveSpaceSpec {
    pub fn new(n_active_electrons: usize, active_orbital_indices: Vec<usize>) -> Self {
        Self { n_active_electrons, active_orbital_indices }
    }

    /// Window of `n_orbitals` orbitals centered on the HOMO/LUMO gap of a
    /// closed-shell-like parent with `parent_electrons` electrons.
    pub fn centered(
        parent_orbitals: usize,
        parent_electrons: usize,
        n_electrons: usize,
        n_orbitals: usize,
    ) -> Result<Self> {
        if n_electrons > parent_electrons || !(parent_electrons - n_electrons).is_multiple_of(2) {
            return Err(Error::ActiveSpace(format!(
                "cannot take {n_electrons} active electrons from {parent_electrons}"
            )));
        }
        let n_frozen = (parent_electrons - n_electrons) / 2;
        if n_frozen + n_orbitals > parent_orbitals {
            return Err(Error::ActiveSpace(format!(
                "window of {n_orbitals} orbitals above {n_frozen} frozen exceeds NORB={parent_orbitals}"
            )));
        }
        Ok(Self::new(n_electrons, (n_frozen..n_frozen + n_orbitals).collect()))
    }

    /// Orbitals that stay doubly occupied outside the window: the lowest
    /// non-active ones, enough to hold the removed electrons.
    pub fn frozen_orbitals(&self, parent: &IntegralTable) -> Result<Vec<usize>> {
        let m = parent.n_orbitals();
        let idx = &self.active_orbital_indices;
        if idx.is_empty() {
            return Err(Error::ActiveSpace("no active orbitals".into()));
        }
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::ActiveSpace(format!("indices {idx:?} not strictly increasing")));
        }
        if let Some(&last) = idx.last() {
            if last >= m {
                return Err(Error::ActiveSpace(format!("index {last} outside NORB={m}")));
            }
        }
        let n_parent = parent.n_electrons();
        let n_act = self.n_active_electrons;
        if n_act > n_parent || n_act > 2 * idx.len() {
            return Err(Error::ActiveSpace(format!(
                "{n_act} active electrons infeasible for {} orbitals and {n_parent} parent electrons",
                idx.len()
            )));
        }
        if !(n_parent - n_act).is_multiple_of(2) {
            return Err(Error::ActiveSpace(format!(
                "removing {} electrons cannot fill orbitals doubly",
                n_parent - n_act
            )));
        }
        let n_frozen = (n_parent - n_act) / 2;
        let frozen: Vec<usize> = (0..m).filter(|p| !idx.contains(p)).take(n_frozen).collect();
        if frozen.len() < n_frozen {
            return Err(Error::ActiveSpace(format!(
                "need {n_frozen} doubly occupied orbitals outside the window, only {} available",
                frozen.len()
            )));
        }
        let ms2 = parent.ms2();
        if ms2.unsigned_abs() as usize > n_act || (n_act as i32 + ms2) % 2 != 0 {
            return Err(Error::ActiveSpace(format!(
                "MS2={ms2} incompatible with {n_act} active electrons"
            )));
        }
        Ok(frozen)
    }
}

/// Restricts a parent table to an active window, folding the doubly occupied
/// frozen orbitals into `h1` (inactive Fock operator) and `e_core`.
pub fn restrict_active_space(parent: &IntegralTable, spec: &ActiveSpaceSpec) -> Result<IntegralTable> {
    let frozen = spec.frozen_orbitals(parent)?;
    let act = &spec.active_orbital_indices;
    let n = act.len();

    let mut e_core = parent.e_core();
    for &f in &frozen {
        e_core += 2.0 * parent.h1(f, f);
        for &g in &frozen {
            e_core += 2.0 * parent.eri(f, f, g, g) - parent.eri(f, g, g, f);
        }
    }

    let mut h1 = vec![0.0; n * n];
    for (i, &p) in act.iter().enumerate() {
        for (j, &q) in act.iter().enumerate() {
            let mut v = parent.h1(p, q);
            for &f in &frozen {
                v += 2.0 * parent.eri(p, q, f, f) - parent.eri(p, f, f, q);
            }
            h1[i * n + j] = v;
        }
    }
    // exact symmetrization guards against rounding asymmetry in the folded sums
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (h1[i * n + j] + h1[j * n + i]);
            h1[i * n + j] = avg;
            h1[j * n + i] = avg;
        }
    }

    let mut h2 = vec![0.0; n * n * n * n];
    for (i, &p) in act.iter().enumerate() {
        for (j, &q) in act.iter().enumerate() {
            for (k, &r) in act.iter().enumerate() {
                for (l, &s) in act.iter().enumerate() {
                    h2[((i * n + j) * n + k) * n + l] = parent.eri(p, q, r, s);
                }
            }
        }
    }

    IntegralTable::new(n, spec.n_active_electrons, parent.ms2(), e_core, h1, h2)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = " &FCI NORB=2,NELEC=2,MS2=0,\n  ORBSYM=1,1,\n  ISYM=1,\n &END\n\
        -1.25 1 1 0 0\n0.71 0 0 0 0\n";

    #[test]
    fn parses_header_and_fields() {
        let t = parse_fcidump(SMALL).unwrap();
        assert_eq!(t.n_orbitals(), 2);
        assert_eq!(t.n_electrons(), 2);
        assert_eq!(t.ms2(), 0);
        assert_eq!(t.e_core(), 0.71);
        assert_eq!(t.h1(0, 0), -1.25);
        assert_eq!(t.h1(1, 1), 0.0);
    }

    #[test]
    fn completes_one_electron_symmetry() {
        let t = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0 /\n0.5 1 2 0 0\n").unwrap();
        assert_eq!(t.h1(0, 1), 0.5);
        assert_eq!(t.h1(1, 0), 0.5);
    }

    #[test]
    fn completes_eightfold_symmetry() {
        let t = parse_fcidump("&FCI NORB=3,NELEC=2,MS2=0 &END\n0.25 2 1 3 2\n").unwrap();
        for (a, b, c, d) in permutations(1, 0, 2, 1) {
            assert_eq!(t.eri(a, b, c, d), 0.25);
        }
        assert_eq!(t.eri(0, 0, 0, 0), 0.0);
    }

    #[test]
    fn fortran_exponents_and_orbital_energies() {
        let t = parse_fcidump("&FCI NORB=1,NELEC=2,MS2=0,\n&END\n1.5D-01 1 1 1 1\n-0.3 1 0 0 0\n")
            .unwrap();
        assert_eq!(t.eri(0, 0, 0, 0), 0.15);
        assert_eq!(t.h1(0, 0), 0.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(parse_fcidump("0.1 1 1 0 0\n"), Err(Error::Header(_))));
        assert!(matches!(parse_fcidump("&FCI NORB=2,NELEC=2\n0.1 1 1 0 0\n"), Err(Error::Header(_))));
        assert!(matches!(parse_fcidump("&FCI NELEC=2 /\n"), Err(Error::Header(_))));
        assert!(matches!(
            parse_fcidump("&FCI NORB=2,NELEC=2 /\n0.1 3 1 0 0\n"),
            Err(Error::IndexOutOfRange { index: 3, norb: 2, .. })
        ));
        assert!(matches!(
            parse_fcidump("&FCI NORB=2,NELEC=2 /\n(0.1,0.2) 1 1 0 0\n"),
            Err(Error::ComplexIntegral(2))
        ));
        assert!(matches!(
            parse_fcidump("&FCI NORB=2,NELEC=2 /\n0.1 1 1 0\n"),
            Err(Error::Record { line: 2, .. })
        ));
        assert!(matches!(
            parse_fcidump("&FCI NORB=1,NELEC=4 /\n"),
            Err(Error::Header(_))
        ));
    }

    #[test]
    fn conflicting_duplicates_report_both_values() {
        let err = parse_fcidump("&FCI NORB=2,NELEC=2 /\n0.1 1 2 1 1\n0.2 2 1 1 1\n").unwrap_err();
        match err {
            Error::ConflictingDuplicate { first, second, .. } => {
                assert_eq!(first, 0.1);
                assert_eq!(second, 0.2);
            }
            other => panic!("unexpected {other:?}"),
        }
        // consistent duplicates are fine
        assert!(parse_fcidump("&FCI NORB=2,NELEC=2 /\n0.1 1 2 1 1\n0.1 1 1 2 1\n").is_ok());
    }

    #[test]
    fn identity_restriction() {
        let t = crate::model::random_table(3, 4, 0, 7);
        let spec = ActiveSpaceSpec::new(4, vec![0, 1, 2]);
        let r = restrict_active_space(&t, &spec).unwrap();
        assert_eq!(r.n_orbitals(), 3);
        assert!((r.e_core() - t.e_core()).abs() < 1e-14);
        for p in 0..3 {
            for q in 0..3 {
                assert!((r.h1(p, q) - t.h1(p, q)).abs() < 1e-14);
            }
        }
        assert_eq!(r.h2, t.h2);
    }

    #[test]
    fn frozen_core_without_two_electron_terms() {
        let m = 3;
        let mut h1 = vec![0.0; 9];
        h1[0] = -2.0;
        h1[4] = -1.0;
        h1[8] = 0.5;
        h1[3 + 2] = 0.1;
        h1[2 * 3 + 1] = 0.1;
        let t = IntegralTable::new(m, 4, 0, 0.3, h1, vec![0.0; 81]).unwrap();
        let r = restrict_active_space(&t, &ActiveSpaceSpec::new(2, vec![1, 2])).unwrap();
        assert!((r.e_core() - (0.3 + 2.0 * -2.0)).abs() < 1e-15);
        assert_eq!(r.h1(0, 0), -1.0);
        assert_eq!(r.h1(1, 1), 0.5);
        assert_eq!(r.h1(0, 1), 0.1);
    }

    #[test]
    fn restriction_errors() {
        let t = crate::model::random_table(4, 4, 0, 3);
        let bad = |n, idx: Vec<usize>| restrict_active_space(&t, &ActiveSpaceSpec::new(n, idx));
        assert!(bad(3, vec![1, 2]).is_err()); // odd number removed
        assert!(bad(6, vec![1, 2]).is_err()); // more electrons than parent
        assert!(bad(2, vec![2, 1]).is_err()); // not increasing
        assert!(bad(2, vec![1, 4]).is_err()); // out of range
        assert!(bad(5, vec![0, 1]).is_err()); // does not fit
        let t2 = crate::model::random_table(2, 4, 0, 3);
        // two electrons must be frozen but every orbital is active
        assert!(restrict_active_space(&t2, &ActiveSpaceSpec::new(2, vec![0, 1])).is_err());
    }

    #[test]
    fn centered_window() {
        let s = ActiveSpaceSpec::centered(8, 8, 6, 6).unwrap();
        assert_eq!(s.active_orbital_indices, vec![1, 2, 3, 4, 5, 6]);
        assert!(ActiveSpaceSpec::centered(8, 8, 5, 6).is_err());
    }
}
