use std::collections::BTreeMap;

use num_traits::Zero;

use super::{Simplex, StratifiedComplex};
use crate::linalg::Q;
use crate::{Error, Result};

/// A rational `i`-chain: a finite combination of oriented `i`-simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    degree: usize,
    coefficients: BTreeMap<Simplex, Q>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain {
            degree,
            coefficients: BTreeMap::new(),
        }
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Simplex, Q)>) -> Result<Self> {
        let mut c = Chain::zero(degree);
        for (s, q) in terms {
            c.add_term(s, q)?;
        }
        Ok(c)
    }

    pub fn simplex(s: Simplex) -> Self {
        let degree = s.dim().max(0) as usize;
        let mut c = Chain::zero(degree);
        c.coefficients.insert(s, Q::from_integer(1.into()));
        c
    }

    pub fn add_term(&mut self, s: Simplex, q: Q) -> Result<()> {
        if s.dim() != self.degree as isize {
            return Err(Error::DimensionMismatch(format!(
                "{s:?} added to a chain of degree {}",
                self.degree
            )));
        }
        let entry = self.coefficients.entry(s).or_insert_with(Q::zero);
        *entry += q;
        if entry.is_zero() {
            self.coefficients.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficient(&self, s: &Simplex) -> Q {
        self.coefficients.get(s).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex, &Q)> {
        self.coefficients.iter()
    }

    /// Simplices occurring with non-zero coefficient.
    pub fn support(&self) -> impl Iterator<Item = &Simplex> {
        self.coefficients.keys()
    }
}

/// Alternating-sign simplicial boundary. Faces lying in the ends are
/// dropped, so this is the boundary of relative chains modulo `L`.
pub fn boundary(c: &Chain, ctx: &StratifiedComplex) -> Result<Chain> {
    if c.degree == 0 {
        for s in c.support() {
            check_member(s, ctx)?;
        }
        return Ok(Chain::zero(0));
    }
    let mut out = Chain::zero(c.degree - 1);
    for (s, q) in c.terms() {
        check_member(s, ctx)?;
        for (sign, face) in s.boundary_faces() {
            if ctx.ends().contains(&face) {
                continue;
            }
            let term = if sign > 0 { q.clone() } else { -q.clone() };
            out.add_term(face, term)?;
        }
    }
    Ok(out)
}

fn check_member(s: &Simplex, ctx: &StratifiedComplex) -> Result<()> {
    if ctx.ambient().contains(s) {
        Ok(())
    } else {
        Err(Error::NotInComplex(format!("{s:?}")))
    }
}
