//! Symmetric groups as Coxeter groups of type A.
//!
//! Permutations are stored in one-line notation `w(1) ... w(n)`. The
//! product is `(u * w)(j) = u(w(j))`, so multiplying by `s_i` on the right
//! swaps positions `i, i+1` and on the left swaps values `i, i+1`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Which side a simple reflection multiplies from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A permutation of `1..=n` in one-line notation.
///
/// The derived order is lexicographic on the one-line form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(one_line: Vec<u8>) -> Result<Self> {
        let n = one_line.len();
        if n == 0 || n > u8::MAX as usize {
            return Err(Error::Parse(format!("permutation of size {n}")));
        }
        let mut seen = vec![false; n];
        for &x in &one_line {
            let i = x as usize;
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::Parse(format!(
                    "{one_line:?} is not a permutation of 1..={n}"
                )));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation(one_line))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    /// The simple reflection `s_i`, swapping `i` and `i + 1`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        check_index(n, i)?;
        let mut w = Self::identity(n);
        w.0.swap(i - 1, i);
        Ok(w)
    }

    /// The product `s_{i_1} s_{i_2} ... s_{i_k}`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(n);
        for &i in word {
            w = w.apply_simple(i, Side::Right)?;
        }
        Ok(w)
    }

    /// Parses `3412` (one-line, `n <= 9`) or `s1*s2*s1` (word in `S_n`).
    /// A bare `e` or `1` style identity is accepted through the one-line
    /// form only.
    pub fn parse_in(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('s') || text == "e" {
            let word = parse_word(text)?;
            return Self::from_word(n, &word);
        }
        let w: Permutation = text.parse()?;
        if w.n() != n {
            return Err(Error::Parse(format!("'{text}' is not in S_{n}")));
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn one_line(&self) -> &[u8] {
        &self.0
    }

    /// `w(j)` for `1 <= j <= n`.
    pub fn apply(&self, j: usize) -> usize {
        self.0[j - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len())
            .map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count())
            .sum()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.n()];
        for (j, &x) in self.0.iter().enumerate() {
            inv[x as usize - 1] = j as u8 + 1;
        }
        Permutation(inv)
    }

    /// `self * other`, i.e. `j -> self(other(j))`.
    pub fn multiply(&self, other: &Permutation) -> Result<Self> {
        same_size(self, other)?;
        Ok(Permutation(other.0.iter().map(|&x| self.0[x as usize - 1]).collect()))
    }

    pub fn apply_simple(&self, i: usize, side: Side) -> Result<Self> {
        check_index(self.n(), i)?;
        let mut w = self.0.clone();
        match side {
            Side::Right => w.swap(i - 1, i),
            Side::Left => {
                for x in w.iter_mut() {
                    if *x as usize == i {
                        *x += 1;
                    } else if *x as usize == i + 1 {
                        *x -= 1;
                    }
                }
            }
        }
        Ok(Permutation(w))
    }

    /// True if `ℓ(w s_i) < ℓ(w)` (right) or `ℓ(s_i w) < ℓ(w)` (left).
    pub fn has_descent(&self, i: usize, side: Side) -> bool {
        match side {
            Side::Right => self.0[i - 1] > self.0[i],
            Side::Left => {
                let pos = |v: usize| self.0.iter().position(|&x| x as usize == v).unwrap();
                pos(i) > pos(i + 1)
            }
        }
    }

    pub fn descents(&self, side: Side) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.has_descent(i, side)).collect()
    }

    /// The reduced word obtained by repeatedly stripping the smallest left
    /// descent: `w = s_{i_1} (s_{i_1} w)` with `i_1` minimal.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut w = self.clone();
        while let Some(&i) = w.descents(Side::Left).first() {
            word.push(i);
            w = w.apply_simple(i, Side::Left).expect("descent index is valid");
        }
        word
    }

    /// Every reduced word, in lexicographic order.
    pub fn reduced_words(&self) -> Vec<Vec<usize>> {
        fn go(w: &Permutation, memo: &mut HashMap<Permutation, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
            if let Some(r) = memo.get(w) {
                return r.clone();
            }
            let out = if w.is_identity() {
                vec![Vec::new()]
            } else {
                let mut out = Vec::new();
                for i in w.descents(Side::Left) {
                    let rest = w.apply_simple(i, Side::Left).expect("valid index");
                    for tail in go(&rest, memo) {
                        let mut word = vec![i];
                        word.extend(tail);
                        out.push(word);
                    }
                }
                out
            };
            memo.insert(w.clone(), out.clone());
            out
        }
        go(self, &mut HashMap::new())
    }
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::InvalidArgument(format!(
            "simple reflection s_{i} does not exist in S_{n}"
        )));
    }
    Ok(())
}

fn same_size(u: &Permutation, w: &Permutation) -> Result<()> {
    if u.n() != w.n() {
        return Err(Error::DimensionMismatch(format!(
            "permutations of sizes {} and {}",
            u.n(),
            w.n()
        )));
    }
    Ok(())
}

/// Parses `s1*s2*s1` into `[1, 2, 1]`; `e` is the empty word.
pub fn parse_word(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text == "e" || text.is_empty() {
        return Ok(Vec::new());
    }
    text.split('*')
        .map(|t| {
            t.trim()
                .strip_prefix('s')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&i| i > 0)
                .ok_or_else(|| Error::Parse(format!("bad generator '{t}' (expected s1, s2, ...)")))
        })
        .collect()
}

pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("*")
}

impl FromStr for Permutation {
    type Err = Error;

    /// One-line notation with single digits, so `n <= 9`.
    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .trim()
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parse(format!("'{s}' is not a one-line permutation")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Permutation::new(digits)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for x in &self.0 {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Bruhat order by the lifting property: for a left descent `s` of `w`,
/// `u <= w` iff `su <= sw` when `s` is a left descent of `u`, and
/// `u <= sw` otherwise.
pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> Result<bool> {
    same_size(u, w)?;
    let (mut u, mut w) = (u.clone(), w.clone());
    loop {
        if u.length() > w.length() {
            return Ok(false);
        }
        let Some(&s) = w.descents(Side::Left).first() else {
            return Ok(u.is_identity());
        };
        if u.has_descent(s, Side::Left) {
            u = u.apply_simple(s, Side::Left)?;
        }
        w = w.apply_simple(s, Side::Left)?;
    }
}

/// All of `S_n`, sorted by length and then one-line form.
pub fn all_elements(n: usize) -> Vec<Permutation> {
    use itertools::Itertools;
    let mut out: Vec<Permutation> = (1..=n as u8)
        .permutations(n)
        .map(Permutation)
        .collect();
    out.sort_by_key(|w| (w.length(), w.clone()));
    out
}

/// `S_n` with its elements enumerated once.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    n: usize,
    elements: Vec<Permutation>,
}

/// Largest rank enumerated without complaint.
pub const MAX_RANK: usize = 8;

impl WeylGroup {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension("rank must be at least 1".into()));
        }
        if n > MAX_RANK {
            return Err(Error::BoundExceeded(format!("S_{n} has more than {MAX_RANK}! elements")));
        }
        Ok(WeylGroup {
            n,
            elements: all_elements(n),
        })
    }

    /// The rank `n` of `S_n`.
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.n)
    }

    pub fn longest(&self) -> Permutation {
        Permutation((1..=self.n as u8).rev().collect())
    }

    pub fn simple(&self, i: usize) -> Result<Permutation> {
        Permutation::simple(self.n, i)
    }

    /// `{x : u <= x <= w}`, sorted like [`all_elements`].
    pub fn bruhat_interval(&self, u: &Permutation, w: &Permutation) -> Result<Vec<Permutation>> {
        self.check(u)?;
        self.check(w)?;
        if !bruhat_leq(u, w)? {
            return Err(Error::Precondition(format!("{u} is not below {w} in Bruhat order")));
        }
        let mut out = Vec::new();
        for x in &self.elements {
            if bruhat_leq(u, x)? && bruhat_leq(x, w)? {
                out.push(x.clone());
            }
        }
        Ok(out)
    }

    pub fn check(&self, w: &Permutation) -> Result<()> {
        if w.n() != self.n {
            return Err(Error::DimensionMismatch(format!("{w} is not in S_{}", self.n)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Subword property: `u <= w` iff some subword of a reduced word of `w`
    /// multiplies to `u`.
    fn subword_leq(u: &Permutation, w: &Permutation) -> bool {
        w.reduced_words().iter().any(|word| {
            (0u32..1 << word.len()).any(|mask| {
                let sub: Vec<usize> = (0..word.len()).filter(|b| mask >> b & 1 == 1).map(|b| word[b]).collect();
                Permutation::from_word(u.n(), &sub).unwrap() == *u
            })
        })
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity(4).length(), 0);
        assert_eq!(p("4321").length(), 6);
        assert_eq!(p("3412").length(), 4);
    }

    #[test]
    fn products_and_braids() {
        let s1 = Permutation::simple(2, 1).unwrap();
        assert!(s1.multiply(&s1).unwrap().is_identity());
        let a = Permutation::from_word(3, &[1, 2, 1]).unwrap();
        let b = Permutation::from_word(3, &[2, 1, 2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, p("321"));
        assert!(Permutation::identity(2).multiply(&Permutation::identity(3)).is_err());
        assert!(Permutation::identity(3).apply_simple(3, Side::Right).is_err());
    }

    #[test]
    fn multiplication_convention() {
        let u = p("231");
        let w = p("213");
        // (u w)(1) = u(w(1)) = u(2) = 3
        assert_eq!(u.multiply(&w).unwrap().apply(1), 3);
        let s1 = Permutation::simple(3, 1).unwrap();
        assert_eq!(u.apply_simple(1, Side::Right).unwrap(), u.multiply(&s1).unwrap());
        assert_eq!(u.apply_simple(1, Side::Left).unwrap(), s1.multiply(&u).unwrap());
    }

    #[test]
    fn reduced_words() {
        assert!(Permutation::identity(3).reduced_word().is_empty());
        assert_eq!(p("321").reduced_word(), vec![1, 2, 1]);
        assert_eq!(p("321").reduced_words(), vec![vec![1, 2, 1], vec![2, 1, 2]]);
        for w in all_elements(4) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            assert_eq!(Permutation::from_word(4, &word).unwrap(), w);
            for other in w.reduced_words() {
                assert_eq!(Permutation::from_word(4, &other).unwrap(), w);
            }
        }
        assert_eq!(p("4321").reduced_words().len(), 16);
    }

    #[test]
    fn parsing() {
        assert_eq!(Permutation::parse_in(3, "s1*s2*s1").unwrap(), p("321"));
        assert_eq!(Permutation::parse_in(3, "e").unwrap(), Permutation::identity(3));
        assert!(Permutation::parse_in(3, "999").is_err());
        assert!(Permutation::parse_in(3, "2134").is_err());
        assert!("3x1".parse::<Permutation>().is_err());
        assert_eq!(format_word(&[1, 2]), "s1*s2");
        assert_eq!(parse_word("s1*s2").unwrap(), vec![1, 2]);
        assert!(parse_word("s0").is_err());
    }

    #[test]
    fn bruhat_examples() {
        let g = WeylGroup::new(3).unwrap();
        for w in g.elements() {
            assert!(bruhat_leq(&g.identity(), w).unwrap());
        }
        let s1 = g.simple(1).unwrap();
        let s2 = g.simple(2).unwrap();
        let s1s2 = s1.multiply(&s2).unwrap();
        assert!(bruhat_leq(&s1, &s1s2).unwrap());
        assert!(bruhat_leq(&s2, &s1s2).unwrap());
        assert!(!bruhat_leq(&p("3412"), &p("4231")).unwrap());
        assert!(!bruhat_leq(&p("4231"), &p("3412")).unwrap());
        assert!(!subword_leq(&p("3412"), &p("4231")) && !subword_leq(&p("4231"), &p("3412")));
    }

    #[test]
    fn bruhat_matches_subwords_on_s4() {
        let all = all_elements(4);
        for u in &all {
            for w in &all {
                assert_eq!(bruhat_leq(u, w).unwrap(), subword_leq(u, w), "{u} {w}");
                if bruhat_leq(u, w).unwrap() && u != w {
                    assert!(u.length() < w.length());
                }
            }
        }
    }

    #[test]
    fn intervals() {
        let g = WeylGroup::new(3).unwrap();
        assert_eq!(g.bruhat_interval(&g.identity(), &p("321")).unwrap().len(), 6);
        let s1 = g.simple(1).unwrap();
        let top = Permutation::from_word(3, &[1, 2, 1]).unwrap();
        let got = g.bruhat_interval(&s1, &top).unwrap();
        let expected: Vec<Permutation> = g
            .elements()
            .iter()
            .filter(|x| subword_leq(&s1, x) && subword_leq(x, &top))
            .cloned()
            .collect();
        assert_eq!(got, expected);
        assert_eq!(got.len(), 4);
        assert!(g.bruhat_interval(&top, &s1).is_err());
        assert_eq!(WeylGroup::new(4).unwrap().len(), 24);
        let count = |n: usize| -> usize {
            let all = all_elements(n);
            all.iter()
                .map(|w| all.iter().filter(|u| subword_leq(u, w)).count())
                .sum()
        };
        assert_eq!(count(3), 19);
        assert_eq!(count(4), 213);
    }

    fn perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((1..=n as u8).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn exchange_property(w in perm(5), i in 1usize..5) {
            let a = w.length() as i64;
            let b = w.apply_simple(i, Side::Right).unwrap().length() as i64;
            prop_assert_eq!((a - b).abs(), 1);
            prop_assert_eq!(b < a, w.has_descent(i, Side::Right));
        }

        #[test]
        fn length_subadditive(u in perm(5), w in perm(5)) {
            let uw = u.multiply(&w).unwrap();
            prop_assert!(uw.length() <= u.length() + w.length());
            prop_assert_eq!(uw.inverse(), w.inverse().multiply(&u.inverse()).unwrap());
        }
    }
}
