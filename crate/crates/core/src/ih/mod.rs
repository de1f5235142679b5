//! Intersection homology of finite stratified complexes.
//!
//! A chain is allowable when its support meets each `F(k)` in dimension at
//! most `i - k + p(k)` and its boundary does too. Support dimension is the
//! maximum over constituent simplices, so the first condition is simplex
//! wise; the second is imposed on the chain `∂ξ` through a kernel
//! computation.

mod local;
mod reports;

use std::collections::HashMap;

use crate::complex::homology::homology_of_model_ranks;
use crate::complex::{Chain, ChainModel, DimTable, Simplex, StratifiedComplex, Supports};
use crate::linalg::{rank_kernel, rank_of_vectors, RationalMatrix, SparseVec, Q};
use crate::perversity::Perversity;
use crate::{Error, Result};

pub use local::{is_normal, is_orientable, local_stalk_table, normalize_isolated};
pub use reports::{
    cone_formula_check, duality_report, extremal_comparison, suspension_check, Comparison, ConeReport,
    DualityReport, ExtremalReport, SuspensionReport,
};

/// How [`ih_dims_with`] treats triangulations that are too coarse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IhOptions {
    /// Subdivide once when strata are not full or not compatible with the
    /// ends, instead of refusing.
    pub auto_subdivide: bool,
    /// Barycentric subdivisions applied before anything else.
    pub extra_subdivisions: usize,
}

impl Default for IhOptions {
    fn default() -> Self {
        IhOptions {
            auto_subdivide: true,
            extra_subdivisions: 0,
        }
    }
}

/// The perversity restricted to the dimension of `s`, or `None` when `s`
/// has dimension below 2 and no condition applies.
pub(crate) fn fit_perversity(s: &StratifiedComplex, p: &Perversity) -> Result<Option<Perversity>> {
    let n = s.dimension();
    if n < 2 {
        return Ok(None);
    }
    if p.dimension() < n {
        return Err(Error::DimensionMismatch(format!(
            "perversity {p} has dimension {} but the complex has dimension {n}",
            p.dimension()
        )));
    }
    p.truncate(n).map(Some)
}

pub(crate) fn check_structure(s: &StratifiedComplex) -> Result<()> {
    let report = s.validate();
    if !report.structurally_valid() {
        return Err(Error::Validation(format!("invalid complex:\n{report}")));
    }
    if !report.passed(crate::complex::CheckKind::StrataFull) {
        return Err(Error::Precondition(
            "filtration is not full; barycentric_subdivide the complex first".into(),
        ));
    }
    Ok(())
}

/// True if `sigma`, viewed as an `i`-chain, meets every `F(k)` within the
/// allowed dimension. Faces inside the ends lie outside the space and do
/// not count.
fn is_allowable(s: &StratifiedComplex, p: Option<&Perversity>, sigma: &Simplex, i: usize) -> bool {
    let Some(p) = p else { return true };
    let ends = s.ends();
    (2..=s.dimension()).all(|k| {
        let f = s.stratum_closure(k);
        let limit = i as i64 - k as i64 + p.value(k) as i64;
        sigma
            .faces()
            .filter(|t| f.contains(t) && !ends.contains(t))
            .all(|t| (t.dim() as i64) <= limit)
    })
}

/// The `i`-simplices of the chain model satisfying the support condition.
pub fn allowable_simplices(
    s: &StratifiedComplex,
    p: &Perversity,
    i: usize,
    supports: Supports,
) -> Result<Vec<Simplex>> {
    check_structure(s)?;
    let p = fit_perversity(s, p)?;
    let model = ChainModel::new(s, supports);
    Ok(model
        .simplices(i)
        .iter()
        .filter(|t| is_allowable(s, p.as_ref(), t, i))
        .cloned()
        .collect())
}

/// The allowable chain complex `I_pC_*`.
///
/// Basis vectors are given in the coordinates of the chain model. Each has
/// a distinguished coordinate equal to 1 where every other basis vector of
/// the same degree is 0, which is how boundaries are expressed in the basis.
#[derive(Debug, Clone)]
pub struct AllowableComplex {
    context: StratifiedComplex,
    perversity: Option<Perversity>,
    model: ChainModel,
    bases: Vec<Vec<SparseVec>>,
    pivots: Vec<Vec<usize>>,
    boundaries: Vec<RationalMatrix>,
    columns: Vec<Vec<SparseVec>>,
}

/// Builds `I_pC_*` on the given triangulation.
pub fn allowable_complex(s: &StratifiedComplex, p: &Perversity, supports: Supports) -> Result<AllowableComplex> {
    check_structure(s)?;
    let p = fit_perversity(s, p)?;
    let model = ChainModel::new(s, supports);
    let n = s.dimension();
    let allowable: Vec<Vec<bool>> = (0..=n)
        .map(|i| model.simplices(i).iter().map(|t| is_allowable(s, p.as_ref(), t, i)).collect())
        .collect();

    let mut bases = Vec::with_capacity(n + 1);
    let mut pivots = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let (basis, marks) = allowable_basis(&model, &allowable, i);
        bases.push(basis);
        pivots.push(marks);
    }

    let mut boundaries = Vec::with_capacity(n + 1);
    let mut all_columns = vec![vec![Vec::new(); bases[0].len()]];
    boundaries.push(RationalMatrix::zeros(0, bases[0].len()));
    for i in 1..=n {
        let position: HashMap<usize, usize> = pivots[i - 1].iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let columns: Vec<SparseVec> = bases[i]
            .iter()
            .map(|b| {
                let image = boundary_in_model(&model, i, b);
                let mut coords: SparseVec = image
                    .into_iter()
                    .filter_map(|(j, v)| position.get(&j).map(|&r| (r, v)))
                    .collect();
                coords.sort_by_key(|(r, _)| *r);
                coords
            })
            .collect();
        boundaries.push(RationalMatrix::from_columns(bases[i - 1].len(), &columns));
        all_columns.push(columns);
    }

    Ok(AllowableComplex {
        context: s.clone(),
        perversity: p,
        model,
        bases,
        pivots,
        boundaries,
        columns: all_columns,
    })
}

/// Basis of `I_pC_i` and the distinguished coordinate of each vector.
fn allowable_basis(model: &ChainModel, allowable: &[Vec<bool>], i: usize) -> (Vec<SparseVec>, Vec<usize>) {
    let simplices = model.simplices(i);
    let below_ok = |j: usize| i > 0 && allowable[i - 1][j];
    let mut untouched = Vec::new();
    let mut touched = Vec::new();
    let mut bad_rows: HashMap<usize, usize> = HashMap::new();
    for (c, t) in simplices.iter().enumerate() {
        if !allowable[i][c] {
            continue;
        }
        let bv = if i == 0 { Vec::new() } else { model.boundary_vector(t) };
        if bv.iter().all(|(j, _)| below_ok(*j)) {
            untouched.push(c);
        } else {
            for (j, _) in &bv {
                if !below_ok(*j) {
                    let next = bad_rows.len();
                    bad_rows.entry(*j).or_insert(next);
                }
            }
            touched.push((c, bv));
        }
    }

    let mut out: Vec<(usize, SparseVec)> = untouched
        .into_iter()
        .map(|c| (c, vec![(c, Q::from_integer(1.into()))]))
        .collect();
    if !touched.is_empty() {
        // boundary components on non-allowable faces must cancel
        let columns: Vec<SparseVec> = touched
            .iter()
            .map(|(_, bv)| {
                let mut col: SparseVec = bv
                    .iter()
                    .filter_map(|(j, v)| bad_rows.get(j).map(|&r| (r, v.clone())))
                    .collect();
                col.sort_by_key(|(r, _)| *r);
                col
            })
            .collect();
        let m = RationalMatrix::from_columns(bad_rows.len(), &columns);
        let rk = rank_kernel(&m);
        for (f, kv) in rk.free_columns.iter().zip(rk.kernel_basis) {
            let mut v: SparseVec = kv.into_iter().map(|(local, q)| (touched[local].0, q)).collect();
            v.sort_by_key(|(c, _)| *c);
            out.push((touched[*f].0, v));
        }
    }
    out.sort_by_key(|(c, _)| *c);
    out.into_iter().map(|(c, v)| (v, c)).unzip()
}

fn boundary_in_model(model: &ChainModel, i: usize, v: &SparseVec) -> SparseVec {
    let mut acc: std::collections::BTreeMap<usize, Q> = std::collections::BTreeMap::new();
    let simplices = model.simplices(i);
    for (c, q) in v {
        for (j, sign) in model.boundary_vector(&simplices[*c]) {
            *acc.entry(j).or_default() += q * sign;
        }
    }
    acc.into_iter().filter(|(_, q)| *q != Q::default()).collect()
}

impl AllowableComplex {
    pub fn context(&self) -> &StratifiedComplex {
        &self.context
    }

    /// The perversity in use, or `None` in dimension below 2.
    pub fn perversity(&self) -> Option<&Perversity> {
        self.perversity.as_ref()
    }

    pub fn supports(&self) -> Supports {
        self.model.supports()
    }

    pub fn top_degree(&self) -> usize {
        self.bases.len() - 1
    }

    /// `dim I_pC_i`.
    pub fn rank(&self, i: usize) -> usize {
        self.bases.get(i).map_or(0, |b| b.len())
    }

    /// Basis vectors in chain-model coordinates.
    pub fn basis_vectors(&self, i: usize) -> &[SparseVec] {
        self.bases.get(i).map_or(&[], |b| b.as_slice())
    }

    /// The basis as chains.
    pub fn basis(&self, i: usize) -> Vec<Chain> {
        let simplices = self.model.simplices(i);
        self.basis_vectors(i)
            .iter()
            .map(|v| {
                Chain::from_terms(i, v.iter().map(|(c, q)| (simplices[*c].clone(), q.clone())))
                    .expect("basis chains have the right degree")
            })
            .collect()
    }

    /// The distinguished coordinate of each basis vector in degree `i`.
    pub fn pivots(&self, i: usize) -> &[usize] {
        self.pivots.get(i).map_or(&[], |p| p.as_slice())
    }

    /// `∂: I_pC_i -> I_pC_{i-1}` in basis coordinates; zero columns for
    /// `i = 0`.
    pub fn boundary_matrix(&self, i: usize) -> &RationalMatrix {
        &self.boundaries[i]
    }

    pub fn model(&self) -> &ChainModel {
        &self.model
    }

    pub fn homology(&self) -> DimTable {
        let n = self.top_degree();
        let ranks: Vec<usize> = (0..=n + 1)
            .map(|i| if i == 0 || i > n { 0 } else { rank_of_vectors(&self.columns[i]) })
            .collect();
        homology_of_model_ranks(&(0..=n).map(|i| self.rank(i)).collect::<Vec<_>>(), &ranks)
    }
}

/// Intersection homology dimensions with default options.
pub fn ih_dims(s: &StratifiedComplex, p: &Perversity, supports: Supports) -> Result<DimTable> {
    ih_dims_with(s, p, supports, &IhOptions::default())
}

/// Intersection homology dimensions. The triangulation is first subdivided
/// `extra_subdivisions` times; if it is then still too coarse it is either
/// subdivided once more or refused.
pub fn ih_dims_with(s: &StratifiedComplex, p: &Perversity, supports: Supports, options: &IhOptions) -> Result<DimTable> {
    let report = s.validate();
    if !report.structurally_valid() {
        return Err(Error::Validation(format!("invalid complex:\n{report}")));
    }
    fit_perversity(s, p)?;
    let mut work = s.clone();
    for _ in 0..options.extra_subdivisions {
        work = work.barycentric_subdivide();
    }
    work = fine_enough(work, options.auto_subdivide)?;
    Ok(allowable_complex(&work, p, supports)?.homology())
}

/// Returns the complex itself when fine enough, its subdivision when
/// allowed, and an error otherwise.
pub(crate) fn fine_enough(s: StratifiedComplex, auto_subdivide: bool) -> Result<StratifiedComplex> {
    if s.is_fine_enough() {
        return Ok(s);
    }
    if !auto_subdivide {
        return Err(Error::Precondition(
            "triangulation too coarse (strata not full or not compatible with the ends); barycentric_subdivide first"
                .into(),
        ));
    }
    let sd = s.barycentric_subdivide();
    if !sd.is_fine_enough() {
        return Err(Error::Internal("subdivided complex is still too coarse".into()));
    }
    Ok(sd)
}

#[cfg(test)]
mod tests;
