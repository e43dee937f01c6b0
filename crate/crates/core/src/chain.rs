//! Endomorphisms of the finite chain `C_n = ({0, .., n-1}, max)`.
//!
//! A join-preserving self-map of a chain is exactly a monotone map, so a
//! [`ChainEndo`] is stored as its value vector `[f(0), .., f(n-1)]`.
//!
//! Multiplication applies the **left factor first**: `(f·g)(x) = g(f(x))`.
//! Under this convention constants absorb on the right (`f·c̄ = c̄`) and a map
//! fixing every vertex of a simplex is a right identity of that simplex.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A monotone self-map of `C_n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainEndo {
    values: Vec<usize>,
}

/// Run-length view `(v₀)_{i₀} (v₁)_{i₁} …` of a chain endomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLengthForm {
    pub pairs: Vec<(usize, usize)>,
}

impl ChainEndo {
    /// Validates `values` as a monotone map on a chain of size `n`.
    pub fn new(n: usize, values: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyChain);
        }
        if values.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: values.len(),
            });
        }
        for (position, &value) in values.iter().enumerate() {
            if value >= n {
                return Err(Error::OutOfRange { position, value, n });
            }
        }
        if let Some(position) = values.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::NotMonotone {
                position: position + 1,
            });
        }
        Ok(Self { values })
    }

    /// Like [`ChainEndo::new`] with `n` taken from the vector length.
    pub fn from_values(values: Vec<usize>) -> Result<Self> {
        Self::new(values.len(), values)
    }

    /// Caller guarantees monotonicity and range.
    pub(crate) fn from_values_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(values.iter().all(|&v| v < values.len()));
        Self { values }
    }

    pub fn constant(n: usize, value: usize) -> Result<Self> {
        Self::new(n, vec![value; n])
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, (0..n).collect())
    }

    /// Size of the underlying chain.
    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `f(x)`. Panics if `x` is outside the chain.
    pub fn eval(&self, x: usize) -> usize {
        self.values[x]
    }

    /// Returns the value if the map is constant.
    pub fn constant_value(&self) -> Option<usize> {
        let first = self.values[0];
        self.values.iter().all(|&v| v == first).then_some(first)
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.n() == other.n() {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            })
        }
    }

    /// Pointwise maximum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        Ok(self.join(other))
    }

    /// `(self·other)(x) = other(self(x))`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        Ok(self.then(other))
    }

    /// Pointwise order.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_size(other)?;
        Ok(self.le_pointwise(other))
    }

    /// `self^m`. Panics if `m == 0`: there is no zeroth power without a
    /// designated unit in the ambient semiring.
    pub fn power(&self, m: usize) -> Self {
        assert!(m >= 1, "power exponent must be positive");
        let mut acc = self.clone();
        for _ in 1..m {
            acc = acc.then(self);
        }
        acc
    }

    pub(crate) fn join(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n(), other.n());
        Self {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub(crate) fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n(), other.n());
        Self {
            values: self.values.iter().map(|&x| other.values[x]).collect(),
        }
    }

    pub(crate) fn le_pointwise(&self, other: &Self) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    pub fn run_lengths(&self) -> RunLengthForm {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for &v in &self.values {
            match pairs.last_mut() {
                Some((value, count)) if *value == v => *count += 1,
                _ => pairs.push((v, 1)),
            }
        }
        RunLengthForm { pairs }
    }

    /// Parses the run-length notation, e.g. `"1_5 5_2"` or `"1_6 3"`.
    pub fn parse_rle(text: &str, n: usize) -> Result<Self> {
        let form: RunLengthForm = text.parse()?;
        let sum = form.total();
        if sum != n {
            return Err(Error::CountSumMismatch { sum, n });
        }
        form.to_endo()
    }

    /// Canonical run-length string; every run carries an explicit count.
    pub fn format_rle(&self) -> String {
        self.run_lengths().to_string()
    }
}

impl RunLengthForm {
    pub fn total(&self) -> usize {
        self.pairs.iter().map(|&(_, c)| c).sum()
    }

    pub fn to_endo(&self) -> Result<ChainEndo> {
        let n = self.total();
        let mut values = Vec::with_capacity(n);
        for &(value, count) in &self.pairs {
            values.extend(std::iter::repeat_n(value, count));
        }
        ChainEndo::new(n, values)
    }
}

impl FromStr for RunLengthForm {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for token in text.split_whitespace() {
            let (value, count) = match token.split_once('_') {
                Some((v, c)) => (parse_int(v, token)?, parse_int(c, token)?),
                None => (parse_int(token, token)?, 1),
            };
            if count == 0 {
                return Err(Error::Parse(format!("zero count in token `{token}`")));
            }
            if let Some(&(prev, _)) = pairs.last() {
                if value <= prev {
                    return Err(Error::NotMonotone {
                        position: pairs.iter().map(|&(_, c)| c).sum(),
                    });
                }
            }
            pairs.push((value, count));
        }
        if pairs.is_empty() {
            return Err(Error::Parse("empty run-length string".into()));
        }
        Ok(Self { pairs })
    }
}

fn parse_int(digits: &str, token: &str) -> Result<usize> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("malformed token `{token}`")));
    }
    digits
        .parse()
        .map_err(|_| Error::Parse(format!("integer overflow in `{token}`")))
}

impl fmt::Display for RunLengthForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (value, count)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{value}_{count}")?;
        }
        Ok(())
    }
}

impl fmt::Display for ChainEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.run_lengths().fmt(f)
    }
}

/// Parses run-length notation, taking `n` from the sum of the counts.
impl FromStr for ChainEndo {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        text.parse::<RunLengthForm>()?.to_endo()
    }
}

impl Serialize for ChainEndo {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.format_rle())
    }
}

impl<'de> Deserialize<'de> for ChainEndo {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
