//! Laurent polynomials in `v` with arbitrary-precision integer coefficients.
//! Polynomials in `q = v^2` are stored the same way, with even exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c v^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    /// `v^e`.
    pub fn v(e: i64) -> Self {
        Self::monomial(1, e)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// A polynomial in `q = v^2` from its coefficients `c_0 + c_1 q + ...`.
    pub fn from_q_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(j, &c)| (2 * j as i64, BigInt::from(c))))
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    /// `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_palindromic(&self) -> bool {
        *self == self.bar()
    }

    /// Terms with exponent in the given range.
    pub fn restrict(&self, keep: impl Fn(i64) -> bool) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| keep(**e))
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(e, x)| (*e, x * c)))
    }

    /// True if every exponent is even and non-negative, i.e. this is a
    /// polynomial in `q = v^2`.
    pub fn is_q_polynomial(&self) -> bool {
        self.coeffs.keys().all(|e| *e >= 0 && e % 2 == 0)
    }

    /// Coefficients `c_0, c_1, ...` in `q = v^2`.
    pub fn q_coeffs(&self) -> Result<Vec<BigInt>> {
        if !self.is_q_polynomial() {
            return Err(Error::Internal(format!("{self} is not a polynomial in q")));
        }
        let top = self.max_degree().map_or(0, |d| d / 2 + 1) as usize;
        Ok((0..top).map(|j| self.coeff(2 * j as i64)).collect())
    }

    /// Degree in `q`, or `None` for zero.
    pub fn q_degree(&self) -> Option<i64> {
        self.max_degree().map(|d| d.div_euclid(2))
    }

    /// Value at `v^2 = q` of a polynomial in even exponents.
    pub fn eval_q(&self, q: &BigInt) -> Result<BigInt> {
        let mut acc = BigInt::zero();
        for (e, c) in &self.coeffs {
            if *e < 0 || e % 2 != 0 {
                return Err(Error::Internal(format!("{self} cannot be evaluated at v^2 = q")));
            }
            acc += c * num_traits::pow(q.clone(), (*e / 2) as usize);
        }
        Ok(acc)
    }

    /// `1+q` style rendering of a polynomial in `q`.
    pub fn display_q(&self) -> String {
        if !self.is_q_polynomial() {
            return self.to_string();
        }
        render(self.coeffs.iter().map(|(e, c)| (e / 2, c)), "q")
    }

    /// `{"coeffs": {"exponent": coefficient}}` with exponents in `v`.
    pub fn to_json(&self) -> Value {
        let coeffs: serde_json::Map<String, Value> = self
            .coeffs
            .iter()
            .map(|(e, c)| (e.to_string(), bigint_json(c)))
            .collect();
        json!({ "coeffs": coeffs })
    }

    /// Same schema with exponents in `q`.
    pub fn to_json_q(&self) -> Value {
        let coeffs: serde_json::Map<String, Value> = self
            .coeffs
            .iter()
            .map(|(e, c)| ((e / 2).to_string(), bigint_json(c)))
            .collect();
        json!({ "coeffs": coeffs })
    }
}

fn bigint_json(c: &BigInt) -> Value {
    match i64::try_from(c) {
        Ok(x) => json!(x),
        Err(_) => json!(c.to_string()),
    }
}

fn render<'a>(terms: impl Iterator<Item = (i64, &'a BigInt)>, var: &str) -> String {
    let mut out = String::new();
    for (e, c) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let monomial = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        if monomial.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&monomial);
        } else {
            out.push_str(&format!("{mag}{monomial}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.coeffs.iter().map(|(e, c)| (*e, c)), "v"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
