use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::{Simplex, StratifiedComplex};
use crate::linalg::{rank_of_vectors, SparseVec, Q};
use crate::{Error, Result};

/// Which chains are allowed: closed supports (relative to the ends) or
/// compact supports (away from the ends).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Supports {
    BorelMoore,
    Compact,
}

impl FromStr for Supports {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bm" | "borel-moore" | "borel_moore" => Ok(Supports::BorelMoore),
            "compact" | "c" => Ok(Supports::Compact),
            _ => Err(Error::Parse(format!("unknown supports '{s}' (expected bm or compact)"))),
        }
    }
}

impl fmt::Display for Supports {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Supports::BorelMoore => "borel-moore",
            Supports::Compact => "compact",
        })
    }
}

/// Degree to dimension. Degrees are signed so stalk tables fit too.
pub type DimTable = BTreeMap<i64, usize>;

/// The chain groups of one support mode, with simplices indexed per degree.
#[derive(Debug, Clone)]
pub struct ChainModel {
    supports: Supports,
    basis: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl ChainModel {
    pub fn new(ctx: &StratifiedComplex, supports: Supports) -> Self {
        let ends = ctx.ends();
        let keep = |s: &Simplex| match supports {
            Supports::BorelMoore => !ends.contains(s),
            Supports::Compact => s.vertices().iter().all(|&v| !ends.contains_vertex(v)),
        };
        let basis: Vec<Vec<Simplex>> = (0..=ctx.dimension())
            .map(|d| ctx.ambient().simplices(d).iter().filter(|s| keep(s)).cloned().collect())
            .collect();
        let index = basis
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        ChainModel { supports, basis, index }
    }

    pub fn supports(&self) -> Supports {
        self.supports
    }

    pub fn top_degree(&self) -> usize {
        self.basis.len().saturating_sub(1)
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.basis.get(d).map(|b| b.as_slice()).unwrap_or(&[])
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        let d = s.dim();
        if d < 0 {
            return None;
        }
        self.index.get(d as usize).and_then(|m| m.get(s).copied())
    }

    /// Boundary of a basis simplex in the coordinates of the degree below.
    /// Faces outside the model (in the ends) are dropped.
    pub fn boundary_vector(&self, s: &Simplex) -> SparseVec {
        let mut v: Vec<(usize, Q)> = s
            .boundary_faces()
            .filter_map(|(sign, f)| {
                self.index_of(&f)
                    .map(|i| (i, Q::from_integer(BigInt::from(sign))))
            })
            .collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    /// Rank of the boundary map out of degree `d`.
    pub fn boundary_rank(&self, d: usize) -> usize {
        if d == 0 {
            return 0;
        }
        let cols: Vec<SparseVec> = self.simplices(d).iter().map(|s| self.boundary_vector(s)).collect();
        rank_of_vectors(&cols)
    }
}

/// Rational homology dimensions in degrees `0..=n`.
pub fn homology_dims(s: &StratifiedComplex, supports: Supports) -> Result<DimTable> {
    let report = s.validate();
    if !report.structurally_valid() {
        return Err(Error::Validation(format!("invalid complex:\n{report}")));
    }
    Ok(homology_of_model(&ChainModel::new(s, supports)))
}

pub(crate) fn homology_of_model(model: &ChainModel) -> DimTable {
    let n = model.top_degree();
    let ranks: Vec<usize> = (0..=n + 1).map(|d| model.boundary_rank(d)).collect();
    let dims: Vec<usize> = (0..=n).map(|d| model.simplices(d).len()).collect();
    homology_of_model_ranks(&dims, &ranks)
}

/// Homology from chain group dimensions `dims[d]` and boundary ranks
/// `ranks[d]` of `∂_d`, with `ranks.len() == dims.len() + 1`.
pub(crate) fn homology_of_model_ranks(dims: &[usize], ranks: &[usize]) -> DimTable {
    dims.iter()
        .enumerate()
        .map(|(d, &c)| (d as i64, c - ranks[d] - ranks[d + 1]))
        .collect()
}

/// Alternating count of the simplices in the chain model.
pub fn euler_characteristic(s: &StratifiedComplex, supports: Supports) -> i64 {
    let model = ChainModel::new(s, supports);
    (0..=model.top_degree())
        .map(|d| {
            let c = model.simplices(d).len() as i64;
            if d % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .sum()
}
