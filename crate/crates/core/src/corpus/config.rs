use crate::error::{Error, Result};
use crate::interp::Interpretation;
use crate::lattice::OrthoLattice;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// Which interpretations a suite runs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum InterpSelection {
    /// The 36 pairs I(→ⱼ, ∗ₖ).
    #[default]
    All,
    /// The six pairs I(→ⱼ, ∗ⱼ).
    SelfDual,
    /// Explicit names as accepted by [`Interpretation::from_name`].
    List(Vec<String>),
}

impl InterpSelection {
    pub fn build(&self, l: &Arc<OrthoLattice>) -> Result<Vec<Interpretation>> {
        match self {
            InterpSelection::All => Ok(Interpretation::all_pairs(l)),
            InterpSelection::SelfDual => Ok(Interpretation::diagonal(l)),
            InterpSelection::List(names) => names.iter().map(|n| Interpretation::from_name(l.clone(), n)).collect(),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawSelection {
    Name(String),
    List(Vec<String>),
}

impl<'de> Deserialize<'de> for InterpSelection {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match RawSelection::deserialize(d)? {
            RawSelection::Name(s) if s == "all" => Ok(InterpSelection::All),
            RawSelection::Name(s) if s == "self-dual" => Ok(InterpSelection::SelfDual),
            RawSelection::Name(s) => Ok(InterpSelection::List(vec![s])),
            RawSelection::List(v) => Ok(InterpSelection::List(v)),
        }
    }
}

impl Serialize for InterpSelection {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            InterpSelection::All => s.serialize_str("all"),
            InterpSelection::SelfDual => s.serialize_str("self-dual"),
            InterpSelection::List(v) => v.serialize(s),
        }
    }
}

fn default_rank() -> u32 {
    3
}
fn default_budget() -> usize {
    2000
}
fn default_seed() -> u64 {
    42
}
fn default_width() -> usize {
    3
}

/// Suite settings, usually read from TOML.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub lattices: Vec<String>,
    #[serde(default)]
    pub interps: InterpSelection,
    /// Largest rank of sampled arguments.
    #[serde(default = "default_rank")]
    pub rank_bound: u32,
    /// Sampled argument tuples per (lattice, formula).
    #[serde(default = "default_budget")]
    pub budget: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Largest dom of a sampled node.
    #[serde(default = "default_width")]
    pub width: usize,
    /// Corpus file; the shipped corpus when absent.
    #[serde(default)]
    pub corpus: Option<PathBuf>,
    #[serde(default)]
    pub allow_non_oml: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            lattices: vec!["mo2".into(), "prod(bool1,mo2)".into(), "bool3".into()],
            interps: InterpSelection::All,
            rank_bound: default_rank(),
            budget: default_budget(),
            seed: default_seed(),
            width: default_width(),
            corpus: None,
            allow_non_oml: false,
        }
    }
}

impl SuiteConfig {
    pub fn parse(text: &str) -> Result<SuiteConfig> {
        let cfg: SuiteConfig = toml::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        if cfg.lattices.is_empty() {
            return Err(Error::Input("config lists no lattices".into()));
        }
        Ok(cfg)
    }

    /// Read a config file. A relative `corpus` path is taken relative to the
    /// config file.
    pub fn load(path: impl AsRef<Path>) -> Result<SuiteConfig> {
        let path = path.as_ref();
        let mut cfg = SuiteConfig::parse(&std::fs::read_to_string(path)?)?;
        if let (Some(c), Some(dir)) = (&cfg.corpus, path.parent()) {
            if c.is_relative() {
                cfg.corpus = Some(dir.join(c));
            }
        }
        Ok(cfg)
    }

    pub fn build_lattices(&self) -> Result<Vec<(String, Arc<OrthoLattice>)>> {
        self.lattices
            .iter()
            .map(|n| Ok((n.clone(), Arc::new(OrthoLattice::from_name(n, self.allow_non_oml)?))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_forms() {
        let c = SuiteConfig::parse("lattices = [\"mo2\"]\n").unwrap();
        assert_eq!((c.interps.clone(), c.budget, c.seed, c.rank_bound), (InterpSelection::All, 2000, 42, 3));
        let c = SuiteConfig::parse("lattices = [\"bool2\"]\ninterps = \"self-dual\"\nbudget = 10\n").unwrap();
        assert_eq!(c.interps, InterpSelection::SelfDual);
        let c = SuiteConfig::parse("lattices = [\"bool2\"]\ninterps = [\"3,5\", \"join-conj\"]\n").unwrap();
        assert_eq!(c.interps.build(&Arc::new(OrthoLattice::boolean(2).unwrap())).unwrap().len(), 2);
        assert!(SuiteConfig::parse("lattices = []").is_err());
        assert!(SuiteConfig::parse("lattices = [\"mo2\"]\nbogus = 1").is_err());
        let back = toml::to_string(&c).unwrap();
        assert_eq!(SuiteConfig::parse(&back).unwrap(), c);
    }
}
