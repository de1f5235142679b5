//! The Iwahori–Hecke algebra of `S_n` over `Z[v, v^-1]` in the standard
//! basis `T_w`, with `T_s^2 = (v^2 - 1) T_s + v^2 T_1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::coxeter::{Permutation, Side};
use crate::laurent::LaurentPoly;
use crate::{Error, Result};

/// `Σ a_w T_w` with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    terms: BTreeMap<Permutation, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        HeckeElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// `T_1`.
    pub fn one(n: usize) -> Self {
        Self::t(&Permutation::identity(n))
    }

    /// `T_w`.
    pub fn t(w: &Permutation) -> Self {
        Self::monomial(w, LaurentPoly::one())
    }

    /// `c T_w`.
    pub fn monomial(w: &Permutation, c: LaurentPoly) -> Self {
        let mut out = Self::zero(w.n());
        out.add_term(w.clone(), c);
        out
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Permutation, LaurentPoly)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (w, c) in terms {
            if w.n() != n {
                return Err(Error::DimensionMismatch(format!("{w} is not in S_{n}")));
            }
            out.add_term(w, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, w: Permutation, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Permutation) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_rank(&self, other: &HeckeElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "Hecke algebras of S_{} and S_{}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &HeckeElement) -> Result<Self> {
        self.same_rank(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HeckeElement) -> Result<Self> {
        self.add(&other.scale(&LaurentPoly::monomial(-1, 0)))
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.n);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a * c);
        }
        out
    }

    /// Right multiplication by `T_{s_i}`:
    /// `T_x T_s = T_{xs}` if `xs > x`, else `(v^2 - 1) T_x + v^2 T_{xs}`.
    pub fn mul_simple(&self, i: usize) -> Result<Self> {
        let v2 = LaurentPoly::v(2);
        let v2m1 = &v2 - &LaurentPoly::one();
        let mut out = Self::zero(self.n);
        for (x, a) in &self.terms {
            let xs = x.apply_simple(i, Side::Right)?;
            if x.has_descent(i, Side::Right) {
                out.add_term(x.clone(), a * &v2m1);
                out.add_term(xs, a * &v2);
            } else {
                out.add_term(xs, a.clone());
            }
        }
        Ok(out)
    }

    /// Left multiplication by `T_{s_i}`:
    /// `T_s T_x = T_{sx}` if `sx > x`, else `(v^2 - 1) T_x + v^2 T_{sx}`.
    pub fn simple_mul(&self, i: usize) -> Result<Self> {
        let v2 = LaurentPoly::v(2);
        let v2m1 = &v2 - &LaurentPoly::one();
        let mut out = Self::zero(self.n);
        for (x, a) in &self.terms {
            let sx = x.apply_simple(i, Side::Left)?;
            if x.has_descent(i, Side::Left) {
                out.add_term(x.clone(), a * &v2m1);
                out.add_term(sx, a * &v2);
            } else {
                out.add_term(sx, a.clone());
            }
        }
        Ok(out)
    }

    /// `self * T_w`, expanding `T_w` along a reduced word.
    pub fn mul_t(&self, w: &Permutation) -> Result<Self> {
        if w.n() != self.n {
            return Err(Error::DimensionMismatch(format!("{w} is not in S_{}", self.n)));
        }
        let mut out = self.clone();
        for i in w.reduced_word() {
            out = out.mul_simple(i)?;
        }
        Ok(out)
    }

    /// The product in the algebra.
    pub fn t_mul(&self, other: &HeckeElement) -> Result<Self> {
        self.same_rank(other)?;
        let mut out = Self::zero(self.n);
        for (w, b) in &other.terms {
            let part = self.mul_t(w)?.scale(b);
            out = out.add(&part)?;
        }
        Ok(out)
    }

    /// The involution with `v -> v^{-1}` and `T_s -> T_s^{-1}`, extended
    /// multiplicatively: `ι(Σ a_w(v) T_w) = Σ a_w(v^{-1}) (T_{w^{-1}})^{-1}`.
    pub fn iota(&self) -> Result<Self> {
        let mut out = Self::zero(self.n);
        for (w, a) in &self.terms {
            out = out.add(&t_inverse(&w.inverse()).scale(&a.bar()))?;
        }
        Ok(out)
    }

    /// Substitutes `v^2 = q` in every coefficient.
    pub fn specialize(&self, q: &BigInt) -> Result<BTreeMap<Permutation, BigInt>> {
        let mut out = BTreeMap::new();
        for (w, a) in &self.terms {
            let value = a.eval_q(q)?;
            if value != BigInt::from(0) {
                out.insert(w.clone(), value);
            }
        }
        Ok(out)
    }

    /// `{"T:3412": {"coeffs": {...}}, ...}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .display_order()
            .into_iter()
            .map(|(w, a)| (format!("T:{w}"), a.to_json()))
            .collect();
        serde_json::Value::Object(map)
    }

    /// `(-1+v^2)*T:21 + v^2*T:12`, with `label` naming each `w`.
    pub fn render(&self, label: impl Fn(&Permutation) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .display_order()
            .into_iter()
            .map(|(w, a)| {
                let w = label(w);
                if a.is_one() {
                    format!("T:{w}")
                } else if a.terms().count() == 1 {
                    format!("{a}*T:{w}")
                } else {
                    format!("({a})*T:{w}")
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// Terms by decreasing length, then one-line order.
    fn display_order(&self) -> Vec<(&Permutation, &LaurentPoly)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(w, _)| (std::cmp::Reverse(w.length()), (*w).clone()));
        terms
    }
}

/// `T_w^{-1}`, the product of `T_s^{-1} = v^{-2} T_s + (v^{-2} - 1) T_1`
/// along a reduced word of `w` read backwards.
pub fn t_inverse(w: &Permutation) -> HeckeElement {
    let n = w.n();
    let a = LaurentPoly::v(-2);
    let b = &a - &LaurentPoly::one();
    let mut out = HeckeElement::one(n);
    for &i in w.reduced_word().iter().rev() {
        let s = Permutation::simple(n, i).expect("reduced word letters are valid");
        let inv_s = HeckeElement::monomial(&s, a.clone())
            .add(&HeckeElement::monomial(&Permutation::identity(n), b.clone()))
            .expect("same rank");
        out = out.t_mul(&inv_s).expect("same rank");
    }
    out
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|w| w.to_string()))
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::all_elements;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn random_element(n: usize, seeds: &[(usize, i64, i64)]) -> HeckeElement {
        let all = all_elements(n);
        let terms = seeds
            .iter()
            .map(|&(w, e, c)| (all[w % all.len()].clone(), LaurentPoly::monomial(c, e)));
        HeckeElement::from_terms(n, terms).unwrap()
    }

    fn element(n: usize) -> impl Strategy<Value = HeckeElement> {
        proptest::collection::vec((0usize..120, -3i64..4, -3i64..4), 0..4)
            .prop_map(move |seeds| random_element(n, &seeds))
    }

    #[test]
    fn quadratic_relation() {
        let s = p("21");
        let sq = HeckeElement::t(&s).t_mul(&HeckeElement::t(&s)).unwrap();
        assert_eq!(sq.coefficient(&s), &LaurentPoly::v(2) - &LaurentPoly::one());
        assert_eq!(sq.coefficient(&p("12")), LaurentPoly::v(2));
        assert_eq!(sq.to_string(), "(-1+v^2)*T:21 + v^2*T:12");
    }

    #[test]
    fn length_additive_products() {
        let all = all_elements(4);
        for u in &all {
            for w in &all {
                let uw = u.multiply(w).unwrap();
                let prod = HeckeElement::t(u).t_mul(&HeckeElement::t(w)).unwrap();
                let additive = uw.length() == u.length() + w.length();
                assert_eq!(prod == HeckeElement::t(&uw), additive, "{u} {w}");
                for (_, c) in prod.terms() {
                    assert!(c.is_q_polynomial());
                }
            }
        }
    }

    #[test]
    fn group_algebra_at_q_one() {
        let all = all_elements(3);
        for u in &all {
            for w in &all {
                let prod = HeckeElement::t(u).t_mul(&HeckeElement::t(w)).unwrap();
                let at_one = prod.specialize(&BigInt::from(1)).unwrap();
                let expected = BTreeMap::from([(u.multiply(w).unwrap(), BigInt::from(1))]);
                assert_eq!(at_one, expected);
            }
        }
    }

    #[test]
    fn inverses() {
        let s = p("21");
        let inv = t_inverse(&s);
        assert_eq!(inv.coefficient(&s), LaurentPoly::v(-2));
        assert_eq!(inv.coefficient(&p("12")), &LaurentPoly::v(-2) - &LaurentPoly::one());
        assert_eq!(t_inverse(&p("123")), HeckeElement::one(3));
        for w in all_elements(3) {
            assert_eq!(t_inverse(&w).t_mul(&HeckeElement::t(&w)).unwrap(), HeckeElement::one(3));
            assert_eq!(HeckeElement::t(&w).t_mul(&t_inverse(&w)).unwrap(), HeckeElement::one(3));
        }
    }

    #[test]
    fn iota_examples() {
        assert_eq!(HeckeElement::one(3).iota().unwrap(), HeckeElement::one(3));
        let c = HeckeElement::t(&p("21"))
            .add(&HeckeElement::one(2))
            .unwrap()
            .scale(&LaurentPoly::v(-1));
        assert_eq!(c.iota().unwrap(), c);
        let s = HeckeElement::t(&p("21"));
        assert_eq!(s.iota().unwrap(), t_inverse(&p("21")));
    }

    /// Extending `T_s -> T_s^{-1}` anti-multiplicatively sends `T_w` to
    /// `T_w^{-1}`; that map does not fix `v^{-2}(T_{s1}+1)(T_{s2}+1)`.
    #[test]
    fn anti_multiplicative_extension_moves_bott_samelson_products() {
        let anti = |a: &HeckeElement| {
            let mut out = HeckeElement::zero(a.rank());
            for (w, c) in a.terms() {
                out = out.add(&t_inverse(w).scale(&c.bar())).unwrap();
            }
            out
        };
        let ts1 = |i: usize| {
            HeckeElement::t(&Permutation::simple(3, i).unwrap())
                .add(&HeckeElement::one(3))
                .unwrap()
        };
        let e = ts1(1).t_mul(&ts1(2)).unwrap().scale(&LaurentPoly::v(-2));
        assert_eq!(e.iota().unwrap(), e);
        assert_ne!(anti(&e), e);
        let reversed = ts1(2).t_mul(&ts1(1)).unwrap().scale(&LaurentPoly::v(-2));
        assert_eq!(anti(&e), reversed);
    }

    /// `(T_s + 1) a` with `T_s T_x` written out case by case.
    fn left_bs_step(i: usize, a: &HeckeElement) -> HeckeElement {
        let n = a.rank();
        let v2 = LaurentPoly::v(2);
        let mut out = a.clone();
        for (x, c) in a.terms() {
            let sx = x.apply_simple(i, Side::Left).unwrap();
            if sx.length() > x.length() {
                out = out.add(&HeckeElement::monomial(&sx, c.clone())).unwrap();
            } else {
                out = out
                    .add(&HeckeElement::monomial(x, c * &(&v2 - &LaurentPoly::one())))
                    .unwrap()
                    .add(&HeckeElement::monomial(&sx, c * &v2))
                    .unwrap();
            }
        }
        assert_eq!(out.rank(), n);
        out
    }

    proptest! {
        #[test]
        fn associative_s3(a in element(3), b in element(3), c in element(3)) {
            let left = a.t_mul(&b).unwrap().t_mul(&c).unwrap();
            let right = a.t_mul(&b.t_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn associative_s4(a in element(4), b in element(4), c in element(4)) {
            let left = a.t_mul(&b).unwrap().t_mul(&c).unwrap();
            let right = a.t_mul(&b.t_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn iota_is_an_involutive_homomorphism(a in element(3), b in element(3)) {
            prop_assert_eq!(a.iota().unwrap().iota().unwrap(), a.clone());
            let lhs = a.t_mul(&b).unwrap().iota().unwrap();
            let rhs = a.iota().unwrap().t_mul(&b.iota().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn unit(a in element(4)) {
            prop_assert_eq!(HeckeElement::one(4).t_mul(&a).unwrap(), a.clone());
            prop_assert_eq!(a.t_mul(&HeckeElement::one(4)).unwrap(), a);
        }

        #[test]
        fn bott_samelson_step_matches_case_formula(a in element(4), i in 1usize..4) {
            let s = Permutation::simple(4, i).unwrap();
            let ts1 = HeckeElement::t(&s).add(&HeckeElement::one(4)).unwrap();
            prop_assert_eq!(ts1.t_mul(&a).unwrap(), left_bs_step(i, &a));
        }

        #[test]
        fn left_simple_multiplication(a in element(4), i in 1usize..4) {
            let s = Permutation::simple(4, i).unwrap();
            prop_assert_eq!(a.simple_mul(i).unwrap(), HeckeElement::t(&s).t_mul(&a).unwrap());
        }
    }
}
