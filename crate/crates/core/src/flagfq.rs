//! Brute-force model of the Hecke algebra over `F_q`: complete flags in
//! `F_q^n` for a prime `q`, their relative positions, and convolution of
//! `G`-invariant functions on pairs of flags.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coxeter::{all_elements, Permutation};
use crate::hecke::HeckeElement;
use crate::{Error, Result};

/// Largest `n` and `q` accepted without `force`.
pub const MAX_N: usize = 4;
pub const MAX_Q: u64 = 7;

pub fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Validates `n` and `q` against the primality requirement and the size
/// guard.
pub fn check_bounds(n: usize, q: u64, force: bool) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if !is_prime(q) {
        return Err(Error::InvalidArgument(format!("q = {q} is not prime")));
    }
    if !force && (n > MAX_N || q > MAX_Q) {
        return Err(Error::BoundExceeded(format!(
            "n = {n}, q = {q} exceeds n <= {MAX_N}, q <= {MAX_Q}; pass force to override"
        )));
    }
    if n > u8::MAX as usize || q > u32::MAX as u64 {
        return Err(Error::BoundExceeded(format!("n = {n}, q = {q} is too large")));
    }
    Ok(())
}

/// The prime field `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fq {
    q: u64,
}

impl Fq {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::InvalidArgument(format!("q = {q} is not prime")));
        }
        Ok(Fq { q })
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.q - b) % self.q
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    /// Inverse of a non-zero element by Fermat.
    pub fn inv(&self, a: u64) -> u64 {
        let (mut base, mut e, mut acc) = (a % self.q, self.q - 2, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Reduced row-echelon form of the span of `rows`, without zero rows.
    pub fn rref(&self, rows: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let mut m: Vec<Vec<u64>> = rows.to_vec();
        let width = m.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..width {
            let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, p);
            let inv = self.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..m.len() {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..width {
                        m[i][j] = self.sub(m[i][j], self.mul(f, m[r][j]));
                    }
                }
            }
            r += 1;
        }
        m.truncate(r);
        m
    }

    pub fn rank(&self, rows: &[Vec<u64>]) -> usize {
        self.rref(rows).len()
    }
}

/// A square matrix over `F_q`, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: Fq,
    rows: Vec<Vec<u64>>,
}

impl FqMatrix {
    pub fn new(field: Fq, rows: Vec<Vec<u64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x % field.q).collect())
            .collect();
        Ok(FqMatrix { field, rows })
    }

    pub fn identity(field: Fq, n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        FqMatrix { field, rows }
    }

    /// The permutation matrix sending `e_b` to `e_{w(b)}`.
    pub fn permutation(field: Fq, w: &Permutation) -> Self {
        let n = w.n();
        let mut rows = vec![vec![0; n]; n];
        for b in 1..=n {
            rows[w.apply(b) - 1][b - 1] = 1;
        }
        FqMatrix { field, rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.field.rank(&self.rows) == self.size()
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(x).fold(0, |acc, (a, b)| self.field.add(acc, self.field.mul(*a, *b))))
            .collect()
    }
}

/// A complete flag `0 < V_1 < ... < V_{n-1} < F_q^n`, kept as an adapted
/// basis `v_1, ..., v_{n-1}` together with the canonical echelon form of
/// every `V_i`.
#[derive(Debug, Clone)]
pub struct FullFlag {
    field: Fq,
    n: usize,
    basis: Vec<Vec<u64>>,
    echelon: Vec<Vec<Vec<u64>>>,
}

impl FullFlag {
    /// The flag spanned by prefixes of `basis`, which must have `n - 1`
    /// independent vectors in `F_q^n`.
    pub fn from_basis(field: Fq, n: usize, basis: Vec<Vec<u64>>) -> Result<Self> {
        if basis.len() + 1 != n.max(1) || basis.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "a flag in F_q^{n} needs {} vectors of length {n}",
                n.saturating_sub(1)
            )));
        }
        let echelon: Vec<_> = (1..n).map(|i| field.rref(&basis[..i])).collect();
        if echelon.iter().enumerate().any(|(i, e)| e.len() != i + 1) {
            return Err(Error::InvalidArgument("flag basis vectors are dependent".into()));
        }
        Ok(FullFlag {
            field,
            n,
            basis,
            echelon,
        })
    }

    /// The coordinate flag `V_j = <e_{w(1)}, ..., e_{w(j)}>`; the
    /// identity gives the standard flag.
    pub fn coordinate(field: Fq, w: &Permutation) -> Self {
        let n = w.n();
        let basis = (1..n)
            .map(|b| {
                let mut e = vec![0; n];
                e[w.apply(b) - 1] = 1;
                e
            })
            .collect();
        Self::from_basis(field, n, basis).expect("coordinate vectors are independent")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `V_i` for `0 <= i <= n` as spanning rows.
    pub fn space(&self, i: usize) -> Vec<Vec<u64>> {
        if i >= self.n {
            return (0..self.n)
                .map(|a| (0..self.n).map(|b| u64::from(a == b)).collect())
                .collect();
        }
        self.basis[..i].to_vec()
    }

    pub fn echelon_forms(&self) -> &[Vec<Vec<u64>>] {
        &self.echelon
    }

    /// `g F`.
    pub fn transform(&self, g: &FqMatrix) -> Result<Self> {
        if g.size() != self.n || !g.is_invertible() {
            return Err(Error::InvalidArgument("g must be an invertible n x n matrix".into()));
        }
        Self::from_basis(self.field, self.n, self.basis.iter().map(|v| g.apply(v)).collect())
    }
}

impl PartialEq for FullFlag {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.field == other.field && self.echelon == other.echelon
    }
}

impl Eq for FullFlag {}

/// The relative position `w` of two flags: `dim(F1_i ∩ F2_j)` counts
/// `#{b <= j : w(b) <= i}`, so `w(j) = i` exactly where the rank array
/// jumps in both directions. `pos(E, wE) = w` for the coordinate flags.
pub fn relative_position(f1: &FullFlag, f2: &FullFlag) -> Result<Permutation> {
    if f1.n != f2.n || f1.field != f2.field {
        return Err(Error::DimensionMismatch("flags over different spaces".into()));
    }
    let n = f1.n;
    let field = f1.field;
    let mut r = vec![vec![0i64; n + 1]; n + 1];
    for i in 1..=n {
        let a = f1.space(i);
        for j in 1..=n {
            let b = f2.space(j);
            let mut rows = a.clone();
            rows.extend(b.iter().cloned());
            r[i][j] = (i + j - field.rank(&rows)) as i64;
        }
    }
    let mut one_line = vec![0u8; n];
    for j in 1..=n {
        for i in 1..=n {
            if r[i][j] - r[i - 1][j] - r[i][j - 1] + r[i - 1][j - 1] == 1 {
                one_line[j - 1] = i as u8;
            }
        }
    }
    Permutation::new(one_line).map_err(|e| Error::Internal(format!("rank array is not a permutation: {e}")))
}

/// Every complete flag in `F_q^n`, each exactly once.
///
/// `V_{i+1}` is `V_i` plus a vector that vanishes on the pivot columns of
/// `V_i` and has leading entry 1; such vectors are in bijection with the
/// lines of `F_q^n / V_i`.
pub fn enumerate_flags(n: usize, q: u64, force: bool) -> Result<Vec<FullFlag>> {
    check_bounds(n, q, force)?;
    let field = Fq::new(q)?;
    let mut out = Vec::new();
    let mut basis = Vec::new();
    extend(field, n, &mut basis, &mut out)?;
    Ok(out)
}

fn extend(field: Fq, n: usize, basis: &mut Vec<Vec<u64>>, out: &mut Vec<FullFlag>) -> Result<()> {
    if basis.len() + 1 >= n {
        out.push(FullFlag::from_basis(field, n, basis.clone())?);
        return Ok(());
    }
    let pivots: Vec<usize> = field
        .rref(basis)
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).expect("non-zero row"))
        .collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    for (k, &lead) in free.iter().enumerate() {
        let tail = &free[k + 1..];
        let count = (field.q as usize).pow(tail.len() as u32);
        for code in 0..count {
            let mut v = vec![0; n];
            v[lead] = 1;
            let mut c = code;
            for &col in tail {
                v[col] = (c % field.q as usize) as u64;
                c /= field.q as usize;
            }
            basis.push(v);
            extend(field, n, basis, out)?;
            basis.pop();
        }
    }
    Ok(())
}

/// A `G`-invariant function on pairs of flags, stored by relative position.
pub type WFunction = BTreeMap<Permutation, BigInt>;

/// The characteristic function of the orbit `O(w)`.
pub fn orbit_indicator(w: &Permutation) -> WFunction {
    BTreeMap::from([(w.clone(), BigInt::from(1))])
}

/// All flags of `F_q^n` with relative positions to the base flag `E` and
/// to two flags at each position `w` from `E`: `wE` and `b wE` with `b`
/// the all-ones upper unitriangular matrix.
#[derive(Debug, Clone)]
pub struct FlagSpace {
    n: usize,
    q: u64,
    flags: Vec<FullFlag>,
    elements: Vec<Permutation>,
    from_base: Vec<Permutation>,
    to_target: Vec<[Vec<Permutation>; 2]>,
}

impl FlagSpace {
    pub fn new(n: usize, q: u64, force: bool) -> Result<Self> {
        let flags = enumerate_flags(n, q, force)?;
        let field = Fq::new(q)?;
        let base = FullFlag::coordinate(field, &Permutation::identity(n));
        let b = FqMatrix::new(
            field,
            (0..n).map(|i| (0..n).map(|j| u64::from(j >= i)).collect()).collect(),
        )?;
        let elements = all_elements(n);
        let from_base = flags
            .iter()
            .map(|f| relative_position(&base, f))
            .collect::<Result<Vec<_>>>()?;
        let mut to_target = Vec::with_capacity(elements.len());
        for w in &elements {
            let first = FullFlag::coordinate(field, w);
            let second = first.transform(&b)?;
            for t in [&first, &second] {
                if relative_position(&base, t)? != *w {
                    return Err(Error::Internal(format!("target flag for {w} is misplaced")));
                }
            }
            let a = flags.iter().map(|f| relative_position(f, &first)).collect::<Result<Vec<_>>>()?;
            let c = flags.iter().map(|f| relative_position(f, &second)).collect::<Result<Vec<_>>>()?;
            to_target.push([a, c]);
        }
        Ok(FlagSpace {
            n,
            q,
            flags,
            elements,
            from_base,
            to_target,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn flags(&self) -> &[FullFlag] {
        &self.flags
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    /// `#{F : pos(E, F) = w}` for every `w`.
    pub fn cell_sizes(&self) -> BTreeMap<Permutation, usize> {
        let mut out: BTreeMap<Permutation, usize> = self.elements.iter().map(|w| (w.clone(), 0)).collect();
        for w in &self.from_base {
            *out.get_mut(w).expect("position in S_n") += 1;
        }
        out
    }

    /// `(f * g)(w) = Σ_F f(pos(E, F)) g(pos(F, F_w))`, evaluated for two
    /// choices of `F_w`; differing sums are an internal error.
    pub fn convolve(&self, f: &WFunction, g: &WFunction) -> Result<WFunction> {
        let mut out = BTreeMap::new();
        for (k, w) in self.elements.iter().enumerate() {
            let mut sums = [BigInt::zero(), BigInt::zero()];
            for (idx, p) in self.from_base.iter().enumerate() {
                let Some(a) = f.get(p) else { continue };
                for (t, sum) in sums.iter_mut().enumerate() {
                    if let Some(b) = g.get(&self.to_target[k][t][idx]) {
                        *sum += a * b;
                    }
                }
            }
            let [first, second] = sums;
            if first != second {
                return Err(Error::Internal(format!(
                    "convolution at {w} depends on the chosen flag: {first} vs {second}"
                )));
            }
            if !first.is_zero() {
                out.insert(w.clone(), first);
            }
        }
        Ok(out)
    }

    /// Compares `T_u T_w` at `v^2 = q` with the convolution of orbit
    /// indicators for every pair `(u, w)`.
    pub fn verify_hecke_specialization(&self) -> Result<HeckeCheck> {
        let q = BigInt::from(self.q);
        let mut pairs = Vec::with_capacity(self.elements.len().pow(2));
        for u in &self.elements {
            for w in &self.elements {
                let expected = HeckeElement::t(u).t_mul(&HeckeElement::t(w))?.specialize(&q)?;
                let actual = self.convolve(&orbit_indicator(u), &orbit_indicator(w))?;
                pairs.push(PairCheck {
                    u: u.clone(),
                    w: w.clone(),
                    expected,
                    actual,
                });
            }
        }
        Ok(HeckeCheck {
            n: self.n,
            q: self.q,
            pairs,
        })
    }
}

/// One product `T_u T_w` computed both ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCheck {
    pub u: Permutation,
    pub w: Permutation,
    pub expected: WFunction,
    pub actual: WFunction,
}

impl PairCheck {
    pub fn matches(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeCheck {
    pub n: usize,
    pub q: u64,
    pub pairs: Vec<PairCheck>,
}

impl HeckeCheck {
    pub fn matched(&self) -> usize {
        self.pairs.iter().filter(|p| p.matches()).count()
    }

    pub fn passed(&self) -> bool {
        self.matched() == self.pairs.len()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &PairCheck> {
        self.pairs.iter().filter(|p| !p.matches())
    }
}

impl fmt::Display for HeckeCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} pairs match", self.matched(), self.pairs.len())
    }
}

pub fn verify_hecke_specialization(n: usize, q: u64, force: bool) -> Result<HeckeCheck> {
    FlagSpace::new(n, q, force)?.verify_hecke_specialization()
}

/// `[n]_q! = Π_{i=1}^{n} (q^i - 1) / (q - 1)`, the number of complete flags.
pub fn flag_count(n: usize, q: u64) -> u64 {
    (1..=n as u32).map(|i| (0..i).map(|k| q.pow(k)).sum::<u64>()).product()
}

/// Looks up flags by their canonical echelon forms.
pub fn index_flags(flags: &[FullFlag]) -> HashMap<Vec<Vec<Vec<u64>>>, usize> {
    flags.iter().enumerate().map(|(i, f)| (f.echelon.clone(), i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn random_invertible(field: Fq, n: usize, rng: &mut StdRng) -> FqMatrix {
        loop {
            let rows = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..field.order())).collect()).collect();
            let g = FqMatrix::new(field, rows).unwrap();
            if g.is_invertible() {
                return g;
            }
        }
    }

    #[test]
    fn flag_counts() {
        assert_eq!(enumerate_flags(2, 2, false).unwrap().len(), 3);
        assert_eq!(enumerate_flags(2, 5, false).unwrap().len(), 6);
        assert_eq!(enumerate_flags(3, 2, false).unwrap().len(), 21);
        assert_eq!(enumerate_flags(1, 3, false).unwrap().len(), 1);
        for (n, q) in [(3, 3), (3, 5), (4, 2)] {
            let flags = enumerate_flags(n, q, false).unwrap();
            assert_eq!(flags.len() as u64, flag_count(n, q));
            assert_eq!(index_flags(&flags).len(), flags.len());
        }
    }

    #[test]
    fn bounds_and_primality() {
        assert!(matches!(enumerate_flags(2, 4, false), Err(Error::InvalidArgument(_))));
        assert!(matches!(enumerate_flags(2, 1, false), Err(Error::InvalidArgument(_))));
        assert!(matches!(enumerate_flags(5, 2, false), Err(Error::BoundExceeded(_))));
        assert!(matches!(enumerate_flags(2, 11, false), Err(Error::BoundExceeded(_))));
        assert_eq!(enumerate_flags(2, 11, true).unwrap().len(), 12);
    }

    #[test]
    fn calibration() {
        let field = Fq::new(3).unwrap();
        for n in 1..=4 {
            let e = FullFlag::coordinate(field, &Permutation::identity(n));
            assert!(relative_position(&e, &e).unwrap().is_identity());
            for w in all_elements(n) {
                let f = FullFlag::coordinate(field, &w);
                assert_eq!(relative_position(&e, &f).unwrap(), w);
            }
        }
        let e = FullFlag::coordinate(field, &p("123"));
        let s1 = FullFlag::coordinate(field, &Permutation::simple(3, 1).unwrap());
        assert_eq!(relative_position(&e, &s1).unwrap(), p("213"));
    }

    #[test]
    fn positions_are_inverse_when_swapped() {
        for (n, q) in [(2, 3), (3, 2), (3, 3)] {
            let flags = enumerate_flags(n, q, false).unwrap();
            for a in &flags {
                for b in &flags {
                    let ab = relative_position(a, b).unwrap();
                    assert_eq!(relative_position(b, a).unwrap(), ab.inverse());
                }
            }
        }
    }

    #[test]
    fn schubert_cells() {
        for q in [2, 3] {
            let space = FlagSpace::new(3, q, false).unwrap();
            let sizes = space.cell_sizes();
            for (w, size) in &sizes {
                assert_eq!(*size as u64, q.pow(w.length() as u32), "{w} at q = {q}");
            }
            assert_eq!(sizes.values().sum::<usize>(), space.len());
        }
    }

    #[test]
    fn g_invariance() {
        let mut rng = StdRng::seed_from_u64(7);
        for (n, q) in [(3, 2), (3, 3), (4, 2)] {
            let field = Fq::new(q).unwrap();
            let flags = enumerate_flags(n, q, false).unwrap();
            for _ in 0..40 {
                let a = &flags[rng.gen_range(0..flags.len())];
                let b = &flags[rng.gen_range(0..flags.len())];
                let g = random_invertible(field, n, &mut rng);
                let before = relative_position(a, b).unwrap();
                let after = relative_position(&a.transform(&g).unwrap(), &b.transform(&g).unwrap()).unwrap();
                assert_eq!(before, after);
            }
        }
    }

    #[test]
    fn quadratic_relation_over_f2() {
        let space = FlagSpace::new(2, 2, false).unwrap();
        let s = p("21");
        let sq = space.convolve(&orbit_indicator(&s), &orbit_indicator(&s)).unwrap();
        assert_eq!(sq, BTreeMap::from([(p("12"), BigInt::from(2)), (s, BigInt::from(1))]));
    }

    #[test]
    fn length_additive_and_unit() {
        for q in [2, 3] {
            let space = FlagSpace::new(3, q, false).unwrap();
            let s1 = Permutation::simple(3, 1).unwrap();
            let s2 = Permutation::simple(3, 2).unwrap();
            let prod = space.convolve(&orbit_indicator(&s1), &orbit_indicator(&s2)).unwrap();
            assert_eq!(prod, orbit_indicator(&s1.multiply(&s2).unwrap()));
            let f: WFunction = [(p("321"), BigInt::from(4)), (s2.clone(), BigInt::from(-3))].into();
            let e = orbit_indicator(&Permutation::identity(3));
            assert_eq!(space.convolve(&e, &f).unwrap(), f);
            assert_eq!(space.convolve(&f, &e).unwrap(), f);
        }
    }

    #[test]
    fn hecke_relations_hold() {
        for (n, q) in [(2, 3), (3, 2)] {
            let report = verify_hecke_specialization(n, q, false).unwrap();
            assert!(report.passed(), "{report}");
            assert_eq!(report.pairs.len(), [1, 1, 4, 36][n]);
        }
        assert_eq!(verify_hecke_specialization(3, 2, false).unwrap().to_string(), "36/36 pairs match");
    }

    fn wfunction() -> impl Strategy<Value = WFunction> {
        proptest::collection::btree_map(0usize..6, -3i64..4, 0..4).prop_map(|m| {
            let all = all_elements(3);
            m.into_iter().map(|(k, c)| (all[k].clone(), BigInt::from(c))).filter(|(_, c)| !c.is_zero()).collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn convolution_is_associative(f in wfunction(), g in wfunction(), h in wfunction()) {
            let space = FlagSpace::new(3, 2, false).unwrap();
            let left = space.convolve(&space.convolve(&f, &g).unwrap(), &h).unwrap();
            let right = space.convolve(&f, &space.convolve(&g, &h).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
