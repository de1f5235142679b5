//! Exact sparse linear algebra over the rationals.
//!
//! Elimination runs first over `Ratio<i64>` with checked arithmetic and
//! falls back to arbitrary precision on overflow, so results are always
//! exact. Pivoting is fixed: rows are processed top to bottom and each
//! reduced row pivots on its first non-zero column.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedMul, CheckedSub, One, ToPrimitive, Zero};

pub type Q = BigRational;

/// A sparse vector as `(index, value)` pairs, strictly increasing in index,
/// with no stored zeros.
pub type SparseVec = Vec<(usize, Q)>;

/// Sparse rational matrix stored by rows.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Q>>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged dense matrix");
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<Q>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Q::from_integer(BigInt::from(v))).collect())
            .collect();
        Self::from_dense(&dense)
    }

    /// Builds a `rows x cols` matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.data[i].get(&j).cloned().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        if v.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    pub fn row(&self, i: usize) -> SparseVec {
        self.data[i].iter().map(|(&j, v)| (j, v.clone())).collect()
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for (&j, v) in r {
                t.data[j].insert(i, v.clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, r) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
            for (&k, a) in r {
                for (&j, b) in &other.data[k] {
                    *acc.entry(j).or_insert_with(Q::zero) += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[i] = acc;
        }
        out
    }

    /// Matrix-vector product with a sparse vector indexed by column.
    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let lookup: BTreeMap<usize, &Q> = v.iter().map(|(j, x)| (*j, x)).collect();
        let mut out = Vec::new();
        for (i, r) in self.data.iter().enumerate() {
            let mut s = Q::zero();
            for (j, a) in r {
                if let Some(x) = lookup.get(j) {
                    s += a * *x;
                }
            }
            if !s.is_zero() {
                out.push((i, s));
            }
        }
        out
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Output of [`rank_kernel`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankKernel {
    pub rank: usize,
    /// Pivot column of each echelon row, in the order the rows were found.
    pub pivot_columns: Vec<usize>,
    /// Non-pivot columns, increasing.
    pub free_columns: Vec<usize>,
    /// One kernel vector per free column `f`, with coordinate 1 at `f` and 0
    /// at every other free column.
    pub kernel_basis: Vec<SparseVec>,
}

/// Exact rank and a basis of the right kernel.
pub fn rank_kernel(m: &RationalMatrix) -> RankKernel {
    let rows: Vec<SparseVec> = (0..m.rows()).map(|i| m.row(i)).collect();
    let echelon = match to_small(&rows) {
        Some(small) => echelon::<Ratio<i64>>(&small, m.cols()).map(|e| e.map_values(small_to_big)),
        None => None,
    }
    .unwrap_or_else(|| echelon::<Q>(&rows, m.cols()).expect("arbitrary precision cannot overflow"));

    let mut is_pivot = vec![false; m.cols()];
    for (c, _) in &echelon.rows {
        is_pivot[*c] = true;
    }
    let free_columns: Vec<usize> = (0..m.cols()).filter(|&c| !is_pivot[c]).collect();
    let mut order: Vec<usize> = (0..echelon.rows.len()).collect();
    order.sort_by_key(|&r| std::cmp::Reverse(echelon.rows[r].0));

    let kernel_basis = free_columns
        .iter()
        .map(|&f| {
            let mut x: BTreeMap<usize, Q> = BTreeMap::new();
            x.insert(f, Q::one());
            for &r in &order {
                let (p, row) = &echelon.rows[r];
                let mut s = Q::zero();
                for (c, v) in row.iter() {
                    if *c != *p {
                        if let Some(xc) = x.get(c) {
                            s -= v * xc;
                        }
                    }
                }
                if !s.is_zero() {
                    x.insert(*p, s);
                }
            }
            x.into_iter().collect()
        })
        .collect();

    RankKernel {
        rank: echelon.rows.len(),
        pivot_columns: echelon.rows.iter().map(|(c, _)| *c).collect(),
        free_columns,
        kernel_basis,
    }
}

/// Rank of the span of a family of sparse vectors.
pub fn rank_of_vectors(vectors: &[SparseVec]) -> usize {
    let width = vectors
        .iter()
        .filter_map(|v| v.last().map(|(j, _)| j + 1))
        .max()
        .unwrap_or(0);
    if let Some(small) = to_small(vectors) {
        if let Some(e) = echelon::<Ratio<i64>>(&small, width) {
            return e.rows.len();
        }
    }
    echelon::<Q>(vectors, width)
        .expect("arbitrary precision cannot overflow")
        .rows
        .len()
}

/// Integer vector helper for tests and builders.
pub fn int_vec(values: &[(usize, i64)]) -> SparseVec {
    values
        .iter()
        .filter(|(_, v)| *v != 0)
        .map(|&(j, v)| (j, Q::from_integer(BigInt::from(v))))
        .collect()
}

trait Scalar: Clone + PartialEq + Zero + One {
    /// `a - f * b`, or `None` on overflow.
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self>;
    fn checked_product(a: &Self, b: &Self) -> Option<Self>;
    fn recip(&self) -> Option<Self>;
}

impl Scalar for Q {
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self> {
        Some(a - f * b)
    }
    fn checked_product(a: &Self, b: &Self) -> Option<Self> {
        Some(a * b)
    }
    fn recip(&self) -> Option<Self> {
        Some(Ratio::recip(self))
    }
}

impl Scalar for Ratio<i64> {
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self> {
        a.checked_sub(&f.checked_mul(b)?)
    }
    fn checked_product(a: &Self, b: &Self) -> Option<Self> {
        a.checked_mul(b)
    }
    fn recip(&self) -> Option<Self> {
        if *self.numer() == i64::MIN {
            None
        } else {
            Some(Ratio::recip(self))
        }
    }
}

fn to_small(rows: &[SparseVec]) -> Option<Vec<Vec<(usize, Ratio<i64>)>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|(j, v)| {
                    let n = v.numer().to_i64()?;
                    let d = v.denom().to_i64()?;
                    Some((*j, Ratio::new_raw(n, d)))
                })
                .collect()
        })
        .collect()
}

fn small_to_big(v: Ratio<i64>) -> Q {
    Q::new_raw(BigInt::from(*v.numer()), BigInt::from(*v.denom()))
}

struct Echelon<F> {
    /// `(pivot column, normalized row)`; each row has leading 1 at its pivot
    /// and no entries to the left of it.
    rows: Vec<(usize, Vec<(usize, F)>)>,
}

impl<F> Echelon<F> {
    fn map_values<G>(self, f: impl Fn(F) -> G + Copy) -> Echelon<G> {
        Echelon {
            rows: self
                .rows
                .into_iter()
                .map(|(p, r)| (p, r.into_iter().map(|(j, v)| (j, f(v))).collect()))
                .collect(),
        }
    }
}

fn echelon<F: Scalar>(input: &[Vec<(usize, F)>], width: usize) -> Option<Echelon<F>> {
    let mut pivot_of: Vec<Option<usize>> = vec![None; width];
    let mut rows: Vec<(usize, Vec<(usize, F)>)> = Vec::new();
    for row in input {
        let mut cur = row.clone();
        // eliminate while the leading entry sits in a pivot column
        let lead = loop {
            let Some((c, factor)) = cur.first().cloned() else {
                break None;
            };
            match pivot_of[c] {
                Some(r) => cur = sub_scaled(&cur, &factor, &rows[r].1)?,
                None => break Some(c),
            }
        };
        let Some(lead) = lead else { continue };
        let inv = cur[0].1.recip()?;
        let normalized = cur
            .into_iter()
            .map(|(j, v)| Some((j, F::checked_product(&v, &inv)?)))
            .collect::<Option<Vec<_>>>()?;
        pivot_of[lead] = Some(rows.len());
        rows.push((lead, normalized));
    }
    Some(Echelon { rows })
}

/// `a - f * b` for sorted sparse vectors.
fn sub_scaled<F: Scalar>(a: &[(usize, F)], f: &F, b: &[(usize, F)]) -> Option<Vec<(usize, F)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let zero = F::zero();
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            let v = F::sub_mul(&zero, f, &b[j].1)?;
            if !v.is_zero() {
                out.push((cb, v));
            }
            j += 1;
        } else {
            let v = F::sub_mul(&a[i].1, f, &b[j].1)?;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}
