//! The curated theorem corpus and the batch harness around the checks.

mod config;
mod suites;

pub use config::{InterpSelection, SuiteConfig};
pub use suites::{
    run_census, run_demorgan_suite, run_metatheory_suite, run_transfer_suite, CensusSuiteReport, DeMorganRow,
    DeMorganSuiteReport, LatticeCensus, LatticeDeMorgan, LatticeTransfer, MetatheoryReport, Tally,
    TransferSuiteReport, ViolationRecord,
};

use crate::error::{Error, Result};
use crate::formula::{classical_satisfaction, parse, Formula, HfEnv};
use crate::quniverse::HfSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::path::Path;

/// The corpus shipped with the crate.
pub const DEFAULT_CORPUS: &str = include_str!("../../corpus/delta0.txt");

/// Random classical instantiations each entry must satisfy.
pub const SANITY_SAMPLES: usize = 50;

#[derive(Clone, Debug, Serialize)]
pub struct TheoremEntry {
    pub id: String,
    pub source: String,
    pub arity: usize,
    pub note: String,
    pub tags: Vec<String>,
    #[serde(skip)]
    pub formula: Formula,
}

/// Parse corpus text: blocks of `key: value` lines separated by blank lines.
/// Lines starting with `#` are comments. Every entry goes through the
/// sanity gate.
pub fn parse_corpus(text: &str) -> Result<Vec<TheoremEntry>> {
    let mut entries = Vec::new();
    let mut block: Vec<(usize, &str, &str)> = Vec::new();
    let lines: Vec<&str> = text.lines().collect();
    for (i, line) in lines.iter().enumerate() {
        let t = line.trim();
        if t.starts_with('#') {
            continue;
        }
        if t.is_empty() {
            if !block.is_empty() {
                entries.push(entry(&block)?);
                block.clear();
            }
            continue;
        }
        let (k, v) = t.split_once(':').ok_or(Error::Syntax { line: i + 1, col: 1, msg: "expected `key: value`".into() })?;
        block.push((i + 1, k.trim(), v.trim()));
    }
    if !block.is_empty() {
        entries.push(entry(&block)?);
    }
    let mut seen = std::collections::HashSet::new();
    for e in &entries {
        if !seen.insert(e.id.clone()) {
            return Err(Error::Input(format!("duplicate corpus id `{}`", e.id)));
        }
    }
    for e in &entries {
        sanity_gate(e)?;
    }
    Ok(entries)
}

fn entry(block: &[(usize, &str, &str)]) -> Result<TheoremEntry> {
    let line = block[0].0;
    let get = |k: &str| block.iter().find(|e| e.1 == k).map(|e| e.2);
    for &(l, k, _) in block {
        if !matches!(k, "id" | "formula" | "arity" | "note" | "tags") {
            return Err(Error::Syntax { line: l, col: 1, msg: format!("unknown key `{k}`") });
        }
    }
    let need = |k: &str| get(k).ok_or(Error::Syntax { line, col: 1, msg: format!("entry lacks `{k}:`") });
    let id = need("id")?.to_string();
    let source = need("formula")?.to_string();
    let arity = need("arity")?
        .parse()
        .map_err(|_| Error::Sanity { id: id.clone(), reason: "arity is not a number".into() })?;
    let formula = parse(&source).map_err(|e| Error::Sanity { id: id.clone(), reason: e.to_string() })?;
    Ok(TheoremEntry {
        id,
        source,
        arity,
        note: get("note").unwrap_or("").to_string(),
        tags: get("tags").map(|t| t.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()).unwrap_or_default(),
        formula,
    })
}

/// Δ0, declared arity matches, and classically true on random hereditarily
/// finite sets.
pub fn sanity_gate(e: &TheoremEntry) -> Result<()> {
    let fail = |reason: String| Error::Sanity { id: e.id.clone(), reason };
    if !e.formula.is_delta0() {
        return Err(fail("not a bounded formula".into()));
    }
    let consts = e.formula.constants();
    if consts.len() != e.arity {
        return Err(fail(format!("declared arity {} but {} constants", e.arity, consts.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a17);
    for _ in 0..SANITY_SAMPLES {
        let env = related_instance(&mut rng, &consts, 3, 3);
        if !classical_satisfaction(&e.formula, &env)? {
            let shown: Vec<String> = consts.iter().map(|c| format!("{c}={}", env[c])).collect();
            return Err(fail(format!("false at {}", shown.join(", "))));
        }
    }
    Ok(())
}

/// Random sets for the constants, often members or copies of each other so
/// that atoms are not trivially false.
pub fn related_instance<R: Rng>(rng: &mut R, consts: &[String], max_rank: usize, width: usize) -> HfEnv {
    let mut pool: Vec<HfSet> = Vec::new();
    let mut env = HfEnv::new();
    for c in consts {
        let pick = if !pool.is_empty() && rng.gen_bool(0.5) {
            pool[rng.gen_range(0..pool.len())].clone()
        } else {
            HfSet::random(rng, max_rank, width)
        };
        pool.extend(pick.members().cloned());
        pool.push(pick.clone());
        env.insert(c.clone(), pick);
    }
    env
}

pub fn default_corpus() -> Vec<TheoremEntry> {
    parse_corpus(DEFAULT_CORPUS).expect("shipped corpus passes the sanity gate")
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<TheoremEntry>> {
    parse_corpus(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_corpus() {
        let c = default_corpus();
        assert!(c.len() >= 15);
        assert!(c.iter().any(|e| e.id == "dmsc0"));
    }

    #[test]
    fn gate_rejects() {
        let bad = "id: wrong\nformula: x in y\narity: 2\nnote: not a theorem\n";
        assert!(matches!(parse_corpus(bad), Err(Error::Sanity { .. })));
        let arity = "id: a\nformula: x = x\narity: 2\n";
        assert!(matches!(parse_corpus(arity), Err(Error::Sanity { .. })));
        let unbounded = "id: u\nformula: A z . z = z\narity: 0\n";
        assert!(matches!(parse_corpus(unbounded), Err(Error::Sanity { .. })));
        let dup = "id: a\nformula: x = x\narity: 1\n\nid: a\nformula: y = y\narity: 1\n";
        assert!(parse_corpus(dup).is_err());
    }
}
