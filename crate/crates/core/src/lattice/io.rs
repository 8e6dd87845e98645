use super::{OrthoLattice, Validation};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// On-disk form of a lattice. `leq` may list any generating pairs; the
/// loader takes the reflexive-transitive closure. `save` writes covers only.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LatticeFile {
    pub n: usize,
    pub ortho: Vec<usize>,
    pub leq: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl LatticeFile {
    pub fn from_lattice(l: &OrthoLattice) -> LatticeFile {
        LatticeFile {
            n: l.len(),
            ortho: l.elements().map(|e| l.ortho(e).index()).collect(),
            leq: l.covers().into_iter().map(|(a, b)| (a.index(), b.index())).collect(),
            labels: Some(l.labels().to_vec()),
        }
    }

    pub fn parse(text: &str) -> Result<LatticeFile> {
        toml::from_str(text).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn render(&self) -> String {
        toml::to_string(self).expect("lattice file serializes")
    }

    pub fn build(&self, allow_non_oml: bool) -> Result<OrthoLattice> {
        let v = if allow_non_oml { Validation::Ortholattice } else { Validation::Oml };
        OrthoLattice::from_pairs(self.n, &self.ortho, &self.leq, self.labels.clone(), v)
    }
}

impl OrthoLattice {
    pub fn load(path: impl AsRef<Path>, allow_non_oml: bool) -> Result<OrthoLattice> {
        let text = std::fs::read_to_string(path)?;
        LatticeFile::parse(&text)?.build(allow_non_oml)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, LatticeFile::from_lattice(self).render())?;
        Ok(())
    }

    /// Resolve a lattice name: `bool<k>`, `mo<n>`, `o6`, `prod(<a>,<b>)`
    /// or `file:<path>`.
    pub fn from_name(name: &str, allow_non_oml: bool) -> Result<OrthoLattice> {
        let name = name.trim();
        let bad = || Error::Input(format!("unknown lattice `{name}`"));
        if let Some(path) = name.strip_prefix("file:") {
            return Self::load(path, allow_non_oml);
        }
        if let Some(inner) = name.strip_prefix("prod(").and_then(|s| s.strip_suffix(')')) {
            let mut depth = 0usize;
            let split = inner
                .char_indices()
                .find(|&(_, c)| {
                    match c {
                        '(' => depth += 1,
                        ')' => depth = depth.saturating_sub(1),
                        _ => {}
                    }
                    c == ',' && depth == 0
                })
                .map(|(i, _)| i)
                .ok_or_else(bad)?;
            let a = Self::from_name(&inner[..split], allow_non_oml)?;
            let b = Self::from_name(&inner[split + 1..], allow_non_oml)?;
            return Self::product(&a, &b);
        }
        if name == "o6" {
            if !allow_non_oml {
                return Err(Error::InvalidLattice("o6 is not orthomodular; pass --allow-non-oml".into()));
            }
            return Ok(Self::hexagon());
        }
        if let Some(k) = name.strip_prefix("bool") {
            return Self::boolean(k.parse().map_err(|_| bad())?);
        }
        if let Some(m) = name.strip_prefix("mo") {
            return Self::mo(m.parse().map_err(|_| bad())?);
        }
        Err(bad())
    }
}
