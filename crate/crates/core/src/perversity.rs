//! Perversities: functions `p: {2..n} -> Z>=0` with `p(2) = 0` and steps of
//! zero or one.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// The named perversities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StandardKind {
    Zero,
    LowerMiddle,
    UpperMiddle,
    Top,
}

/// A perversity of a fixed dimension `n >= 2`.
///
/// Values are stored densely for `k = 2..=n`. Equality includes the
/// dimension, so zero perversities of different dimensions differ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perversity {
    values: Vec<u32>,
}

impl Perversity {
    pub fn standard(kind: StandardKind, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(format!(
                "perversity dimension must be at least 2, got {n}"
            )));
        }
        let values = (2..=n)
            .map(|k| {
                let c = (k - 2) as u32;
                match kind {
                    StandardKind::Zero => 0,
                    StandardKind::LowerMiddle => c / 2,
                    StandardKind::UpperMiddle => c.div_ceil(2),
                    StandardKind::Top => c,
                }
            })
            .collect();
        Ok(Perversity { values })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::standard(StandardKind::Zero, n)
    }

    pub fn middle(n: usize) -> Result<Self> {
        Self::standard(StandardKind::LowerMiddle, n)
    }

    pub fn upper_middle(n: usize) -> Result<Self> {
        Self::standard(StandardKind::UpperMiddle, n)
    }

    pub fn top(n: usize) -> Result<Self> {
        Self::standard(StandardKind::Top, n)
    }

    /// Builds a perversity from the values `p(2), p(3), ..., p(n)`.
    ///
    /// Errors name the offending index `k`.
    pub fn custom(values: &[i64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidDimension(
                "a perversity needs at least the value p(2)".into(),
            ));
        }
        let mut out = Vec::with_capacity(values.len());
        for (offset, &v) in values.iter().enumerate() {
            let k = offset + 2;
            if v < 0 {
                return Err(Error::InvalidPerversity {
                    index: k,
                    reason: format!("p({k}) = {v} is negative"),
                });
            }
            if k == 2 && v != 0 {
                return Err(Error::InvalidPerversity {
                    index: 2,
                    reason: format!("p(2) must be 0, got {v}"),
                });
            }
            if k > 2 {
                let prev = out[offset - 1] as i64;
                if v != prev && v != prev + 1 {
                    return Err(Error::InvalidPerversity {
                        index: k,
                        reason: format!("p({k}) = {v} must equal p({}) or p({}) + 1", k - 1, k - 1),
                    });
                }
            }
            out.push(v as u32);
        }
        Ok(Perversity { values: out })
    }

    /// The dimension `n`, i.e. the largest codimension the perversity covers.
    pub fn dimension(&self) -> usize {
        self.values.len() + 1
    }

    /// `p(k)` for `2 <= k <= n`.
    ///
    /// # Panics
    /// If `k` is outside `[2, n]`.
    pub fn value(&self, k: usize) -> u32 {
        assert!(
            (2..=self.dimension()).contains(&k),
            "perversity of dimension {} evaluated at k = {k}",
            self.dimension()
        );
        self.values[k - 2]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `p + q = t`, i.e. `p(k) + q(k) = k - 2` for every `k`.
    pub fn is_complementary(&self, other: &Perversity) -> Result<bool> {
        if self.dimension() != other.dimension() {
            return Err(Error::DimensionMismatch(format!(
                "perversities of dimension {} and {}",
                self.dimension(),
                other.dimension()
            )));
        }
        Ok((2..=self.dimension()).all(|k| self.value(k) + other.value(k) == (k - 2) as u32))
    }

    /// The complementary perversity `t - p`.
    pub fn complement(&self) -> Perversity {
        let values = (2..=self.dimension())
            .map(|k| (k - 2) as u32 - self.value(k))
            .collect();
        Perversity { values }
    }

    /// Pointwise `p(k) <= q(k)`.
    pub fn le(&self, other: &Perversity) -> bool {
        self.dimension() == other.dimension()
            && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// The restriction to codimensions `2..=n`, used when a perversity of a
    /// larger dimension is applied to a lower-dimensional space.
    pub fn truncate(&self, n: usize) -> Result<Perversity> {
        if n < 2 || n > self.dimension() {
            return Err(Error::InvalidDimension(format!(
                "cannot restrict a dimension-{} perversity to dimension {n}",
                self.dimension()
            )));
        }
        Ok(Perversity {
            values: self.values[..n - 1].to_vec(),
        })
    }
}

impl fmt::Display for Perversity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A perversity as written on the command line, before its dimension is
/// known: `zero`, `middle`, `upper-middle`, `top` or `custom:0,0,1,1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PerversitySpec {
    Standard(StandardKind),
    Custom(Vec<i64>),
}

impl PerversitySpec {
    /// Resolves the spec at dimension `n`. Custom values must have exactly
    /// `n - 1` entries.
    pub fn resolve(&self, n: usize) -> Result<Perversity> {
        match self {
            PerversitySpec::Standard(kind) => Perversity::standard(*kind, n.max(2)),
            PerversitySpec::Custom(values) => {
                let p = Perversity::custom(values)?;
                if p.dimension() != n.max(2) {
                    return Err(Error::DimensionMismatch(format!(
                        "custom perversity has dimension {}, complex has dimension {n}",
                        p.dimension()
                    )));
                }
                Ok(p)
            }
        }
    }
}

impl FromStr for PerversitySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "zero" | "0" => Ok(PerversitySpec::Standard(StandardKind::Zero)),
            "middle" | "lower-middle" | "m" => Ok(PerversitySpec::Standard(StandardKind::LowerMiddle)),
            "upper-middle" | "n" => Ok(PerversitySpec::Standard(StandardKind::UpperMiddle)),
            "top" | "t" => Ok(PerversitySpec::Standard(StandardKind::Top)),
            _ => {
                let rest = s.strip_prefix("custom:").ok_or_else(|| {
                    Error::Parse(format!(
                        "unknown perversity '{s}' (expected zero, middle, upper-middle, top or custom:...)"
                    ))
                })?;
                let values = rest
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad perversity value '{t}'")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                // validate shape eagerly; the dimension is checked on resolve
                Perversity::custom(&values)?;
                Ok(PerversitySpec::Custom(values))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn standard_examples() {
        let m = Perversity::standard(StandardKind::LowerMiddle, 7).unwrap();
        assert_eq!(m.values(), &[0, 0, 1, 1, 2, 2]);
        let t = Perversity::standard(StandardKind::Top, 4).unwrap();
        assert_eq!(t.values(), &[0, 1, 2]);
        let z = Perversity::standard(StandardKind::Zero, 2).unwrap();
        assert_eq!(z.values(), &[0]);
        let n = Perversity::standard(StandardKind::UpperMiddle, 7).unwrap();
        assert_eq!(n.values(), &[0, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn standard_rejects_small_dimension() {
        assert!(matches!(
            Perversity::standard(StandardKind::Zero, 1),
            Err(Error::InvalidDimension(_))
        ));
    }

    #[test]
    fn custom_validation() {
        let p = Perversity::custom(&[0, 1, 1]).unwrap();
        assert_eq!(p.dimension(), 4);
        assert!(matches!(
            Perversity::custom(&[1, 1]),
            Err(Error::InvalidPerversity { index: 2, .. })
        ));
        assert!(matches!(
            Perversity::custom(&[0, 2]),
            Err(Error::InvalidPerversity { index: 3, .. })
        ));
        assert!(matches!(
            Perversity::custom(&[0, 1, 0]),
            Err(Error::InvalidPerversity { index: 4, .. })
        ));
    }

    #[test]
    fn complementarity() {
        let m = Perversity::middle(6).unwrap();
        let n = Perversity::upper_middle(6).unwrap();
        assert!(m.is_complementary(&n).unwrap());
        let z = Perversity::zero(5).unwrap();
        let t = Perversity::top(5).unwrap();
        assert!(z.is_complementary(&t).unwrap());
        assert!(!z.is_complementary(&z).unwrap());
        assert!(z.is_complementary(&Perversity::zero(4).unwrap()).is_err());
        assert_eq!(z.complement(), t);
    }

    #[test]
    fn equality_includes_dimension() {
        assert_ne!(Perversity::zero(7).unwrap(), Perversity::zero(5).unwrap());
    }

    #[test]
    #[should_panic]
    fn value_out_of_range_panics() {
        Perversity::zero(3).unwrap().value(4);
    }

    #[test]
    fn parse_cli_forms() {
        let spec: PerversitySpec = "middle".parse().unwrap();
        assert_eq!(spec.resolve(4).unwrap().values(), &[0, 0, 1]);
        let spec: PerversitySpec = "custom:0,0,1,1".parse().unwrap();
        assert_eq!(spec.resolve(5).unwrap().values(), &[0, 0, 1, 1]);
        assert!(spec.resolve(4).is_err());
        assert!("bogus".parse::<PerversitySpec>().is_err());
        assert!("custom:0,2".parse::<PerversitySpec>().is_err());
    }

    fn kinds() -> impl Strategy<Value = StandardKind> {
        prop_oneof![
            Just(StandardKind::Zero),
            Just(StandardKind::LowerMiddle),
            Just(StandardKind::UpperMiddle),
            Just(StandardKind::Top),
        ]
    }

    proptest! {
        #[test]
        fn middles_are_complementary(n in 2usize..40) {
            let m = Perversity::middle(n).unwrap();
            let u = Perversity::upper_middle(n).unwrap();
            for k in 2..=n {
                prop_assert_eq!(m.value(k) + u.value(k), (k - 2) as u32);
            }
        }

        #[test]
        fn standard_round_trips_and_is_monotone(kind in kinds(), n in 2usize..40) {
            let p = Perversity::standard(kind, n).unwrap();
            let values: Vec<i64> = p.values().iter().map(|&v| v as i64).collect();
            prop_assert_eq!(Perversity::custom(&values).unwrap(), p.clone());
            for k in 2..n {
                prop_assert!(p.value(k) <= p.value(k + 1));
                prop_assert!(p.value(k + 1) <= p.value(k) + 1);
            }
        }
    }
}
