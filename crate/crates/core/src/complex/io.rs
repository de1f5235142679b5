use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Simplex, SimplicialComplex, StratifiedComplex, Subcomplex};
use crate::{Error, Result};

/// Filtration levels keyed by codimension written as a string.
pub type FiltrationFile = BTreeMap<String, Vec<Vec<String>>>;

/// The on-disk JSON form of a stratified complex.
///
/// Simplices are lists of vertex names; only generators are needed since
/// closures are computed. An omitted codimension `k` inherits `F(k + 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub dimension: usize,
    pub vertices: Vec<String>,
    pub simplices: Vec<Vec<String>>,
    #[serde(default)]
    pub ends: Vec<Vec<String>>,
    #[serde(default)]
    pub filtration: FiltrationFile,
}

impl ComplexFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("complex file: {e}")))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex files serialize")
    }

    pub fn from_complex(s: &StratifiedComplex) -> Self {
        let k = s.ambient();
        let names = |sub: &[Simplex]| -> Vec<Vec<String>> {
            sub.iter()
                .map(|t| t.vertices().iter().map(|&v| k.name(v).to_string()).collect())
                .collect()
        };
        let maximal_in = |sub: &Subcomplex| -> Vec<Simplex> {
            let all = sub.sorted();
            all.iter()
                .filter(|t| !all.iter().any(|u| u.len() > t.len() && t.is_face_of(u)))
                .cloned()
                .collect()
        };
        let filtration = (2..=s.dimension())
            .filter(|&c| !s.stratum_closure(c).is_empty())
            .map(|c| (c.to_string(), names(&maximal_in(s.stratum_closure(c)))))
            .collect();
        ComplexFile {
            dimension: s.dimension(),
            vertices: k.names().to_vec(),
            simplices: names(&k.maximal_simplices()),
            ends: names(&maximal_in(s.ends())),
            filtration,
        }
    }

    pub fn to_complex(&self) -> Result<StratifiedComplex> {
        let ambient_names = self.vertices.clone();
        let lookup = |list: &[Vec<String>]| -> Result<Vec<Simplex>> {
            list.iter()
                .map(|t| {
                    if t.is_empty() {
                        return Err(Error::Parse("empty simplex".into()));
                    }
                    t.iter()
                        .map(|name| {
                            ambient_names
                                .iter()
                                .position(|n| n == name)
                                .map(|i| i as u32)
                                .ok_or_else(|| Error::Parse(format!("unknown vertex '{name}'")))
                        })
                        .collect::<Result<Vec<_>>>()
                        .map(Simplex::new)
                })
                .collect()
        };
        let ambient = SimplicialComplex::from_simplices(self.vertices.clone(), lookup(&self.simplices)?)?;
        let n = self.dimension;
        let mut levels: BTreeMap<usize, Vec<Simplex>> = BTreeMap::new();
        for (key, list) in &self.filtration {
            let k: usize = key
                .parse()
                .map_err(|_| Error::Parse(format!("filtration key '{key}' is not a codimension")))?;
            if k < 2 || k > n {
                return Err(Error::InvalidDimension(format!(
                    "filtration codimension {k} outside 2..={n}"
                )));
            }
            levels.insert(k, lookup(list)?);
        }
        let mut filtration = vec![Subcomplex::new(); n.saturating_sub(1)];
        for k in (2..=n).rev() {
            filtration[k - 2] = match levels.get(&k) {
                Some(list) => Subcomplex::closure(list.iter().cloned()),
                None if k < n => filtration[k - 1].clone(),
                None => Subcomplex::new(),
            };
        }
        let ends = Subcomplex::closure(lookup(&self.ends)?);
        StratifiedComplex::new(ambient, n, ends, filtration)
    }
}

impl StratifiedComplex {
    pub fn from_json(text: &str) -> Result<Self> {
        ComplexFile::parse(text)?.to_complex()
    }

    pub fn to_json(&self) -> String {
        ComplexFile::from_complex(self).to_json()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::examples;

    #[test]
    fn round_trip_examples() {
        for ex in examples::all_examples() {
            let text = ex.complex.to_json();
            let back = StratifiedComplex::from_json(&text).unwrap();
            assert_eq!(back.ambient().num_simplices(), ex.complex.ambient().num_simplices(), "{}", ex.name);
            assert_eq!(back.ends().len(), ex.complex.ends().len());
            for k in 2..=ex.complex.dimension() {
                assert_eq!(back.stratum_closure(k).len(), ex.complex.stratum_closure(k).len());
            }
        }
    }

    #[test]
    fn omitted_levels_inherit() {
        let text = r#"{"dimension": 3, "vertices": ["a","b","c","d"],
            "simplices": [["a","b","c","d"]], "filtration": {"3": [["a"]]}}"#;
        let s = StratifiedComplex::from_json(text).unwrap();
        assert_eq!(s.stratum_closure(2).len(), 1);
        assert!(s.stratum_closure(2).contains(&Simplex::vertex(0)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(StratifiedComplex::from_json("{"), Err(Error::Parse(_))));
        let extra = r#"{"dimension": 0, "vertices": ["a"], "simplices": [["a"]], "colour": 1}"#;
        assert!(matches!(StratifiedComplex::from_json(extra), Err(Error::Parse(_))));
        let unknown = r#"{"dimension": 1, "vertices": ["a"], "simplices": [["a","b"]]}"#;
        assert!(matches!(StratifiedComplex::from_json(unknown), Err(Error::Parse(_))));
        let deep = r#"{"dimension": 2, "vertices": ["a"], "simplices": [["a"]], "filtration": {"5": []}}"#;
        assert!(StratifiedComplex::from_json(deep).is_err());
    }
}
