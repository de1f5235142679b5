use std::collections::BTreeSet;
use std::fmt;

use super::{check_structure, fine_enough, fit_perversity, ih_dims, is_normal, is_orientable};
use crate::complex::{homology_dims, DimTable, StratifiedComplex, Supports};
use crate::perversity::Perversity;
use crate::{Error, Result};

/// Two dimension tables compared degree by degree. Missing degrees count
/// as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub left_label: String,
    pub right_label: String,
    pub left: DimTable,
    pub right: DimTable,
}

impl Comparison {
    pub fn new(left_label: impl Into<String>, left: DimTable, right_label: impl Into<String>, right: DimTable) -> Self {
        Comparison {
            left_label: left_label.into(),
            right_label: right_label.into(),
            left,
            right,
        }
    }

    pub fn degrees(&self) -> BTreeSet<i64> {
        self.left.keys().chain(self.right.keys()).copied().collect()
    }

    /// `(degree, left, right)` for every degree present on either side.
    pub fn rows(&self) -> Vec<(i64, usize, usize)> {
        self.degrees()
            .into_iter()
            .map(|d| {
                (
                    d,
                    self.left.get(&d).copied().unwrap_or(0),
                    self.right.get(&d).copied().unwrap_or(0),
                )
            })
            .collect()
    }

    pub fn agrees(&self) -> bool {
        self.rows().iter().all(|(_, a, b)| a == b)
    }

    pub fn mismatches(&self) -> Vec<i64> {
        self.rows().into_iter().filter(|(_, a, b)| a != b).map(|(d, _, _)| d).collect()
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>6}  {:>14}  {:>14}", "degree", self.left_label, self.right_label)?;
        for (d, a, b) in self.rows() {
            writeln!(f, "{d:>6}  {a:>14}  {b:>14}  {}", if a == b { "ok" } else { "DIFF" })?;
        }
        Ok(())
    }
}

/// Direct computation on an open cone against the truncation prediction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeReport {
    /// Codimension of the apex.
    pub k: usize,
    /// First degree where the link homology survives, `k - p(k)`.
    pub cutoff: i64,
    pub link: DimTable,
    /// Computed on the left, predicted on the right.
    pub comparison: Comparison,
}

impl ConeReport {
    pub fn agrees(&self) -> bool {
        self.comparison.agrees()
    }
}

/// Checks `I_pH_j(c°L) = I_pH_{j-1}(L)` for `j >= k - p(k)` and `0` below,
/// Borel–Moore supports.
pub fn cone_formula_check(link: &StratifiedComplex, p: &Perversity) -> Result<ConeReport> {
    if !link.is_compact() {
        return Err(Error::Precondition("the link must be compact".into()));
    }
    let k = link.dimension() + 1;
    if k < 2 {
        return Err(Error::InvalidDimension("the link must have dimension at least 1".into()));
    }
    if p.dimension() < k {
        return Err(Error::DimensionMismatch(format!(
            "perversity {p} has dimension {} but the cone has dimension {k}",
            p.dimension()
        )));
    }
    let link_ih = ih_dims(link, p, Supports::BorelMoore)?;
    let cone = link.cone()?;
    let computed = ih_dims(&cone, p, Supports::BorelMoore)?;
    let cutoff = k as i64 - p.value(k) as i64;
    let predicted = (0..=k as i64)
        .map(|j| {
            let v = if j >= cutoff { link_ih.get(&(j - 1)).copied().unwrap_or(0) } else { 0 };
            (j, v)
        })
        .collect();
    Ok(ConeReport {
        k,
        cutoff,
        link: link_ih,
        comparison: Comparison::new("cone", computed, "predicted", predicted),
    })
}

/// `I_pH_i(X)` shifted up by one against `I_pH_*(R x X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuspensionReport {
    pub base: DimTable,
    /// Shifted base on the left, suspension on the right.
    pub comparison: Comparison,
}

impl SuspensionReport {
    pub fn agrees(&self) -> bool {
        self.comparison.agrees()
    }
}

pub fn suspension_check(s: &StratifiedComplex, p: &Perversity) -> Result<SuspensionReport> {
    if p.dimension() < s.dimension() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "perversity {p} has dimension {} but the suspension has dimension {}",
            p.dimension(),
            s.dimension() + 1
        )));
    }
    let base = ih_dims(s, p, Supports::BorelMoore)?;
    // Suspending a fine base keeps it fine, which is far cheaper than
    // subdividing the suspension.
    check_structure(s)?;
    let fine = fine_enough(s.clone(), true)?;
    let suspended = ih_dims(&fine.suspend(), p, Supports::BorelMoore)?;
    let mut shifted: DimTable = base.iter().map(|(d, v)| (d + 1, *v)).collect();
    shifted.insert(0, 0);
    Ok(SuspensionReport {
        base,
        comparison: Comparison::new("shifted", shifted, "suspension", suspended),
    })
}

/// `I_pH_i` with closed supports against `I_qH^c_{n-i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub n: usize,
    pub p: Perversity,
    pub q: Perversity,
    pub comparison: Comparison,
    /// Self-duality of the middle perversity, run when every singular
    /// stratum has even codimension.
    pub middle: Option<Comparison>,
}

impl DualityReport {
    pub fn agrees(&self) -> bool {
        self.comparison.agrees() && self.middle.as_ref().is_none_or(|m| m.agrees())
    }
}

fn dual_pair(s: &StratifiedComplex, p: &Perversity, q: &Perversity) -> Result<Comparison> {
    let n = s.dimension() as i64;
    let closed = ih_dims(s, p, Supports::BorelMoore)?;
    let compact = ih_dims(s, q, Supports::Compact)?;
    let reflected = (0..=n).map(|i| (i, compact.get(&(n - i)).copied().unwrap_or(0))).collect();
    Ok(Comparison::new(format!("I{p}H"), closed, format!("I{q}H^c(n-i)"), reflected))
}

pub fn duality_report(s: &StratifiedComplex, p: &Perversity, q: &Perversity) -> Result<DualityReport> {
    let n = s.dimension();
    if n < 2 {
        return Err(Error::InvalidDimension(format!(
            "duality needs dimension at least 2, got {n}"
        )));
    }
    let p = fit_perversity(s, p)?.expect("dimension at least 2");
    let q = fit_perversity(s, q)?.expect("dimension at least 2");
    if !p.is_complementary(&q)? {
        return Err(Error::Precondition(format!("{p} and {q} are not complementary")));
    }
    let comparison = dual_pair(s, &p, &q)?;
    let middle = if s.has_only_even_codimension_strata() {
        let m = Perversity::middle(n)?;
        Some(dual_pair(s, &m, &m)?)
    } else {
        None
    };
    Ok(DualityReport {
        n,
        p,
        q,
        comparison,
        middle,
    })
}

/// Top perversity against ordinary homology and zero perversity against
/// cohomology, for normal oriented spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalReport {
    pub top_vs_homology: Comparison,
    pub zero_vs_cohomology: Comparison,
}

impl ExtremalReport {
    pub fn agrees(&self) -> bool {
        self.top_vs_homology.agrees() && self.zero_vs_cohomology.agrees()
    }
}

/// Compares `I_tH_i` with `H_i` and `I_0H_i` with `H^{n-i}`, all with
/// closed supports. Over the rationals `dim H^j(X) = dim H_j(X)`, and the
/// interior core is a deformation retract of `X`, so `H^j` is read off the
/// compact homology.
pub fn extremal_comparison(s: &StratifiedComplex) -> Result<ExtremalReport> {
    let n = s.dimension();
    if n < 2 {
        return Err(Error::InvalidDimension(format!(
            "extremal comparison needs dimension at least 2, got {n}"
        )));
    }
    if !is_normal(s) {
        return Err(Error::Precondition("the space is not normal; normalize it first".into()));
    }
    if !is_orientable(s) {
        return Err(Error::Precondition("the top stratum is not orientable".into()));
    }
    let t = Perversity::top(n)?;
    let z = Perversity::zero(n)?;
    let h = homology_dims(s, Supports::BorelMoore)?;
    let hc = homology_dims(s, Supports::Compact)?;
    let n = n as i64;
    let cohomology = (0..=n).map(|i| (i, hc.get(&(n - i)).copied().unwrap_or(0))).collect();
    Ok(ExtremalReport {
        top_vs_homology: Comparison::new("ItH", ih_dims(s, &t, Supports::BorelMoore)?, "H", h),
        zero_vs_cohomology: Comparison::new("I0H", ih_dims(s, &z, Supports::BorelMoore)?, "H^(n-i)", cohomology),
    })
}
