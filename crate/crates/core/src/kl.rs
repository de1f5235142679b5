//! Kazhdan–Lusztig polynomials of `S_n`, computed twice: by peeling the
//! Bott–Samelson product `v^{-l(w)} (T_{s_1} + 1) ... (T_{s_k} + 1)` and by
//! the classical `C'_s C'_{w'}` recursion with `mu` corrections.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coxeter::{bruhat_leq, format_word, Permutation, Side, WeylGroup};
use crate::hecke::HeckeElement;
use crate::laurent::LaurentPoly;
use crate::{Error, Result};

/// `C'_w` with its polynomials `P_{u,w}` (stored in `v`, even exponents)
/// and, on the Bott–Samelson path, the palindromic multiplicities `p_u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KlResult {
    pub w: Permutation,
    pub cprime: HeckeElement,
    pub kl_polys: BTreeMap<Permutation, LaurentPoly>,
    pub corrections: BTreeMap<Permutation, LaurentPoly>,
}

impl KlResult {
    fn from_cprime(w: Permutation, cprime: HeckeElement) -> Self {
        let l = w.length() as i64;
        let kl_polys = cprime.terms().map(|(u, c)| (u.clone(), c.shift(l))).collect();
        KlResult {
            w,
            cprime,
            kl_polys,
            corrections: BTreeMap::new(),
        }
    }

    /// `P_{u,w}`, zero unless `u <= w`.
    pub fn poly(&self, u: &Permutation) -> LaurentPoly {
        self.kl_polys.get(u).cloned().unwrap_or_default()
    }

    /// Coefficient of `q^{(l(w) - l(u) - 1) / 2}` in `P_{u,w}`.
    pub fn mu(&self, u: &Permutation) -> BigInt {
        let gap = self.w.length() as i64 - u.length() as i64;
        if gap <= 0 || gap % 2 == 0 {
            return BigInt::zero();
        }
        self.poly(u).coeff(gap - 1)
    }

    /// Checks the defining conditions of `C'_w`: `P_{w,w} = 1`, every
    /// `P_{u,w}` is a polynomial in `q` of degree at most
    /// `(l(w) - l(u) - 1) / 2`, the support lies in the Bruhat interval,
    /// and `C'_w` is fixed by `iota`.
    pub fn check(&self) -> Result<()> {
        let lw = self.w.length() as i64;
        if !self.poly(&self.w).is_one() {
            return Err(Error::Internal(format!("P_{{w,w}} != 1 for w = {}", self.w)));
        }
        for (u, p) in &self.kl_polys {
            if !p.is_q_polynomial() {
                return Err(Error::Internal(format!(
                    "P_{{{u},{}}} = {p} is not a polynomial in q",
                    self.w
                )));
            }
            if u == &self.w {
                continue;
            }
            if !bruhat_leq(u, &self.w)? {
                return Err(Error::Internal(format!("{u} is in the support of C'_{} but not below it", self.w)));
            }
            let bound = lw - u.length() as i64 - 1;
            if p.max_degree().is_some_and(|d| d > bound) {
                return Err(Error::Internal(format!(
                    "deg P_{{{u},{}}} = {} exceeds the bound",
                    self.w,
                    p.display_q()
                )));
            }
        }
        if self.cprime.iota()? != self.cprime {
            return Err(Error::Internal(format!("C'_{} is not iota-fixed", self.w)));
        }
        for (u, p) in &self.corrections {
            if !p.is_palindromic() {
                return Err(Error::Internal(format!("correction p_{u} = {p} is not palindromic")));
            }
        }
        Ok(())
    }
}

/// Which algorithm produces a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    BottSamelson,
    Recursion,
    Both,
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bs" | "bott-samelson" | "bott_samelson" => Ok(Algorithm::BottSamelson),
            "recursion" | "rec" => Ok(Algorithm::Recursion),
            "both" => Ok(Algorithm::Both),
            other => Err(Error::Parse(format!(
                "unknown algorithm '{other}' (expected bs, recursion or both)"
            ))),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::BottSamelson => "bott-samelson",
            Algorithm::Recursion => "recursion",
            Algorithm::Both => "both",
        })
    }
}

/// Memoized `C'_w` for one `S_n`, with separate stores per algorithm so the
/// two computations stay independent.
#[derive(Debug, Clone)]
pub struct KlCache {
    group: WeylGroup,
    bott_samelson: BTreeMap<Permutation, KlResult>,
    recursion: BTreeMap<Permutation, KlResult>,
}

impl KlCache {
    pub fn new(n: usize) -> Result<Self> {
        Ok(KlCache {
            group: WeylGroup::new(n)?,
            bott_samelson: BTreeMap::new(),
            recursion: BTreeMap::new(),
        })
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    /// Bott–Samelson extraction from the given reduced word. Shorter `C'_u`
    /// come from the memo, built from their canonical reduced words.
    pub fn bott_samelson(&mut self, word: &[usize]) -> Result<KlResult> {
        let n = self.rank();
        let w = Permutation::from_word(n, word)?;
        if w.length() != word.len() {
            return Err(Error::InvalidArgument(format!(
                "{} is not a reduced word",
                format_word(word)
            )));
        }
        let lw = word.len() as i64;

        let mut e = HeckeElement::one(n);
        for &i in word {
            e = e.mul_simple(i)?.add(&e)?;
        }
        e = e.scale(&LaurentPoly::v(-lw));

        let mut below: Vec<Permutation> = e.terms().map(|(u, _)| u.clone()).filter(|u| u != &w).collect();
        below.sort_by_key(|u| (std::cmp::Reverse(u.length()), u.clone()));

        let mut corrections = BTreeMap::new();
        for u in below {
            let f = e.coefficient(&u).shift(u.length() as i64);
            let upper = f.restrict(|d| d >= 0);
            if upper.is_zero() {
                continue;
            }
            let p = &upper + &upper.restrict(|d| d > 0).bar();
            let cu = self.bott_samelson_element(&u)?.cprime;
            e = e.sub(&cu.scale(&p))?;
            let rest = e.coefficient(&u).shift(u.length() as i64);
            if rest.max_degree().is_some_and(|d| d >= 0) {
                return Err(Error::Internal(format!(
                    "remainder {rest} at T_{u} has non-negative degree after correction"
                )));
            }
            corrections.insert(u, p);
        }

        let mut result = KlResult::from_cprime(w.clone(), e);
        result.corrections = corrections;
        result.check()?;
        self.bott_samelson.entry(w).or_insert_with(|| result.clone());
        Ok(result)
    }

    /// Bott–Samelson result for `w` using its canonical reduced word.
    pub fn bott_samelson_element(&mut self, w: &Permutation) -> Result<KlResult> {
        self.group.check(w)?;
        if let Some(r) = self.bott_samelson.get(w) {
            return Ok(r.clone());
        }
        self.bott_samelson(&w.reduced_word())
    }

    /// `C'_w = C'_s C'_{w'} - Σ mu(u, w') C'_u` over `u < w'` with `su < u`,
    /// where `s` is the smallest left descent of `w` and `w = s w'`.
    pub fn recursion(&mut self, w: &Permutation) -> Result<KlResult> {
        self.group.check(w)?;
        if let Some(r) = self.recursion.get(w) {
            return Ok(r.clone());
        }
        let n = self.rank();
        let result = match w.descents(Side::Left).first() {
            None => KlResult::from_cprime(w.clone(), HeckeElement::one(n)),
            Some(&i) => {
                let wp = w.apply_simple(i, Side::Left)?;
                let prev = self.recursion(&wp)?;
                let mut c = prev
                    .cprime
                    .simple_mul(i)?
                    .add(&prev.cprime)?
                    .scale(&LaurentPoly::v(-1));
                for u in prev.kl_polys.keys() {
                    if u == &wp || !u.has_descent(i, Side::Left) {
                        continue;
                    }
                    let mu = prev.mu(u);
                    if mu.is_zero() {
                        continue;
                    }
                    let cu = self.recursion(u)?.cprime;
                    c = c.sub(&cu.scale(&LaurentPoly::monomial(mu, 0)))?;
                }
                KlResult::from_cprime(w.clone(), c)
            }
        };
        result.check()?;
        self.recursion.insert(w.clone(), result.clone());
        Ok(result)
    }

    /// The result of one algorithm; `Both` computes both and refuses to
    /// return if they differ.
    pub fn compute(&mut self, w: &Permutation, algorithm: Algorithm) -> Result<KlResult> {
        match algorithm {
            Algorithm::BottSamelson => self.bott_samelson_element(w),
            Algorithm::Recursion => self.recursion(w),
            Algorithm::Both => {
                let bs = self.bott_samelson_element(w)?;
                let rec = self.recursion(w)?;
                if bs.cprime != rec.cprime {
                    return Err(Error::Internal(format!(
                        "algorithms disagree on C'_{w}: {} vs {}",
                        bs.cprime, rec.cprime
                    )));
                }
                Ok(bs)
            }
        }
    }

    /// `P_{u,w}` for every `u <= w` in `S_n`, in length-then-lex order of `w`.
    pub fn table(&mut self, algorithm: Algorithm) -> Result<KlTable> {
        let elements = self.group.elements().to_vec();
        let mut entries = BTreeMap::new();
        let mut discrepancies = Vec::new();
        for w in &elements {
            let primary = match algorithm {
                Algorithm::Recursion => self.recursion(w)?,
                _ => self.bott_samelson_element(w)?,
            };
            let other = match algorithm {
                Algorithm::Both => Some(self.recursion(w)?),
                _ => None,
            };
            for u in &elements {
                if !bruhat_leq(u, w)? {
                    continue;
                }
                let p = primary.poly(u);
                if let Some(other) = &other {
                    let q = other.poly(u);
                    if q != p {
                        discrepancies.push(Discrepancy {
                            u: u.clone(),
                            w: w.clone(),
                            bott_samelson: p.clone(),
                            recursion: q,
                        });
                    }
                }
                entries.insert((u.clone(), w.clone()), p);
            }
        }
        Ok(KlTable {
            n: self.rank(),
            algorithm,
            entries,
            discrepancies,
        })
    }

    /// Stalk dimensions of the IC sheaf of `X_w` at the cell of `u`:
    /// degree `-l(w) + 2j` carries the `q^j` coefficient of `P_{u,w}`.
    pub fn ic_stalk_dims(&mut self, u: &Permutation, w: &Permutation) -> Result<StalkDims> {
        self.group.check(u)?;
        let r = self.recursion(w)?;
        let lw = w.length() as i64;
        let in_interval = bruhat_leq(u, w)?;
        let mut dims = BTreeMap::new();
        if in_interval {
            for (e, c) in r.poly(u).terms() {
                dims.insert(e - lw, c.clone());
            }
        }
        Ok(StalkDims { in_interval, dims })
    }
}

/// A pair where the two algorithms disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub u: Permutation,
    pub w: Permutation,
    pub bott_samelson: LaurentPoly,
    pub recursion: LaurentPoly,
}

/// `P_{u,w}` over all Bruhat pairs of `S_n`.
#[derive(Debug, Clone)]
pub struct KlTable {
    pub n: usize,
    pub algorithm: Algorithm,
    pub entries: BTreeMap<(Permutation, Permutation), LaurentPoly>,
    pub discrepancies: Vec<Discrepancy>,
}

impl KlTable {
    pub fn agrees(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, u: &Permutation, w: &Permutation) -> Option<&LaurentPoly> {
        self.entries.get(&(u.clone(), w.clone()))
    }
}

/// IC stalk dimensions by cohomological degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StalkDims {
    pub in_interval: bool,
    pub dims: BTreeMap<i64, BigInt>,
}

pub fn kl_bott_samelson(n: usize, word: &[usize]) -> Result<KlResult> {
    KlCache::new(n)?.bott_samelson(word)
}

pub fn kl_recursion(w: &Permutation) -> Result<KlResult> {
    KlCache::new(w.n())?.recursion(w)
}

pub fn kl_table(n: usize, algorithm: Algorithm) -> Result<KlTable> {
    KlCache::new(n)?.table(algorithm)
}

pub fn ic_stalk_dims(u: &Permutation, w: &Permutation) -> Result<StalkDims> {
    if u.n() != w.n() {
        return Err(Error::DimensionMismatch(format!("{u} and {w}")));
    }
    KlCache::new(w.n())?.ic_stalk_dims(u, w)
}

/// True if every coefficient is non-negative and the constant term is 1.
pub fn is_positive_with_unit_constant(p: &LaurentPoly) -> bool {
    p.terms().all(|(_, c)| !c.is_negative()) && p.coeff(0).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{all_elements, parse_word};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn rank_one() {
        let r = kl_bott_samelson(2, &[1]).unwrap();
        let expected = HeckeElement::t(&p("21"))
            .add(&HeckeElement::one(2))
            .unwrap()
            .scale(&LaurentPoly::v(-1));
        assert_eq!(r.cprime, expected);
        assert!(r.corrections.is_empty());
        let t = kl_table(2, Algorithm::Both).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.entries.values().all(|x| x.is_one()));
    }

    #[test]
    fn length_additive_word() {
        let r = kl_bott_samelson(3, &[1, 2]).unwrap();
        assert_eq!(r.w, p("231"));
        assert_eq!(r.kl_polys.len(), 4);
        assert!(r.kl_polys.values().all(|x| x.is_one()));
        assert!(r.corrections.is_empty());
        for u in ["123", "213", "132", "231"] {
            assert_eq!(r.cprime.coefficient(&p(u)), LaurentPoly::v(-2));
        }
    }

    #[test]
    fn singular_schubert_variety_in_s4() {
        let word = parse_word("s2*s1*s3*s2").unwrap();
        let bs = kl_bott_samelson(4, &word).unwrap();
        let rec = kl_recursion(&bs.w).unwrap();
        assert_eq!(bs.w, p("3412"));
        let s2 = Permutation::simple(4, 2).unwrap();
        assert_eq!(bs.poly(&s2).display_q(), "1+q");
        assert_eq!(bs.cprime, rec.cprime);
        assert!(bs.corrections.is_empty());
        let stalks = ic_stalk_dims(&s2, &bs.w).unwrap();
        assert_eq!(stalks.dims, BTreeMap::from([(-4, BigInt::from(1)), (-2, BigInt::from(1))]));
    }

    #[test]
    fn corrections_depend_on_the_word() {
        let w = p("4231");
        let a = kl_bott_samelson(4, &parse_word("s1*s3*s2*s1*s3").unwrap()).unwrap();
        let b = kl_bott_samelson(4, &parse_word("s1*s2*s3*s2*s1").unwrap()).unwrap();
        assert_eq!(a.w, w);
        assert_eq!(a.cprime, b.cprime);
        let bar = LaurentPoly::v(-1) + LaurentPoly::v(1);
        assert_eq!(a.corrections, BTreeMap::from([(p("2143"), bar)]));
        let one = LaurentPoly::one();
        assert_eq!(b.corrections, BTreeMap::from([(p("2134"), one.clone()), (p("3214"), one)]));
    }

    #[test]
    fn non_reduced_word_is_refused() {
        assert!(matches!(kl_bott_samelson(3, &[1, 1]), Err(Error::InvalidArgument(_))));
        assert!(kl_bott_samelson(3, &[3]).is_err());
    }

    #[test]
    fn stalk_tables() {
        let e = p("12");
        let s = p("21");
        let r = ic_stalk_dims(&e, &s).unwrap();
        assert_eq!(r.dims, BTreeMap::from([(-1, BigInt::from(1))]));
        for w in all_elements(3) {
            let r = ic_stalk_dims(&w, &w).unwrap();
            assert_eq!(r.dims, BTreeMap::from([(-(w.length() as i64), BigInt::from(1))]));
        }
        let r = ic_stalk_dims(&p("321"), &p("213")).unwrap();
        assert!(!r.in_interval);
        assert!(r.dims.is_empty());
    }

    #[test]
    fn every_reduced_word_agrees_with_recursion() {
        for n in 1..=4 {
            let mut cache = KlCache::new(n).unwrap();
            for w in all_elements(n) {
                let rec = cache.recursion(&w).unwrap();
                for word in w.reduced_words() {
                    let bs = cache.bott_samelson(&word).unwrap();
                    assert_eq!(bs.cprime, rec.cprime, "{w} via {}", format_word(&word));
                    assert_eq!(bs.kl_polys, rec.kl_polys);
                }
            }
        }
    }

    #[test]
    fn s3_and_s4_tables() {
        let t3 = kl_table(3, Algorithm::Both).unwrap();
        assert!(t3.agrees());
        assert_eq!(t3.len(), 19);
        assert!(t3.entries.values().all(|x| x.is_one()));

        let t4 = kl_table(4, Algorithm::Both).unwrap();
        assert!(t4.agrees());
        assert_eq!(t4.len(), 213);
        let one_plus_q = LaurentPoly::from_q_coeffs(&[1, 1]);
        let mut nontrivial = 0;
        for ((u, w), poly) in &t4.entries {
            assert!(is_positive_with_unit_constant(poly), "P_{{{u},{w}}} = {poly}");
            assert!(poly.is_one() || *poly == one_plus_q);
            let bound = w.length() as i64 - u.length() as i64 - 1;
            if u != w {
                assert!(2 * poly.q_degree().unwrap() <= bound);
            }
            if !poly.is_one() {
                nontrivial += 1;
            }
        }
        // Singular pairs: P_{u,3412} for u <= 1324, and P_{u,4231} for u <= 2143.
        assert_eq!(nontrivial, 2 + 4);
    }

    #[test]
    fn mu_values() {
        let r = kl_recursion(&p("3412")).unwrap();
        assert_eq!(r.mu(&p("1324")), BigInt::from(1));
        assert_eq!(r.mu(&p("1234")), BigInt::from(0));
        assert_eq!(r.mu(&p("3412")), BigInt::from(0));
    }
}
