use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{Signed, Zero};
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{format_scalar, int, parse_scalar, ExactScalar};

/// Dense rational vector. Ordered lexicographically, which is the canonical
/// order for vertex lists throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactVector(Vec<ExactScalar>);

impl ExactVector {
    pub fn new(entries: Vec<ExactScalar>) -> Self {
        Self(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![ExactScalar::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = int(1);
        v
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self(values.iter().map(|&x| int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[ExactScalar] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<ExactScalar> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ExactScalar> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &ExactVector) -> ExactScalar {
        debug_assert_eq!(self.dim(), other.dim());
        let mut acc = ExactScalar::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn add(&self, other: &ExactVector) -> ExactVector {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ExactVector) -> ExactVector {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: &ExactScalar) -> ExactVector {
        Self(self.0.iter().map(|a| a * factor).collect())
    }

    pub fn neg(&self) -> ExactVector {
        Self(self.0.iter().map(|a| -a).collect())
    }

    /// Appends one coordinate.
    pub fn extended(&self, value: ExactScalar) -> ExactVector {
        let mut entries = self.0.clone();
        entries.push(value);
        Self(entries)
    }

    /// Scales so that the first nonzero entry has absolute value one.
    /// The zero vector is returned unchanged.
    pub fn normalize_leading(&self) -> ExactVector {
        match self.0.iter().find(|x| !x.is_zero()) {
            Some(lead) => self.scale(&lead.abs().recip()),
            None => self.clone(),
        }
    }

    /// ℓ∞ norm.
    pub fn max_abs(&self) -> ExactScalar {
        self.0
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(ExactScalar::zero)
    }

    /// ℓ1 norm.
    pub fn sum_abs(&self) -> ExactScalar {
        self.0.iter().map(|x| x.abs()).sum()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_scalar).collect()
    }

    pub fn parse_strings<S: AsRef<str>>(items: &[S]) -> Result<Self, super::KernelError> {
        items
            .iter()
            .map(|s| parse_scalar(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}

impl Index<usize> for ExactVector {
    type Output = ExactScalar;
    fn index(&self, i: usize) -> &ExactScalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for ExactVector {
    fn index_mut(&mut self, i: usize) -> &mut ExactScalar {
        &mut self.0[i]
    }
}

impl From<Vec<ExactScalar>> for ExactVector {
    fn from(v: Vec<ExactScalar>) -> Self {
        Self(v)
    }
}

impl FromIterator<ExactScalar> for ExactVector {
    fn from_iter<I: IntoIterator<Item = ExactScalar>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a ExactVector {
    type Item = &'a ExactScalar;
    type IntoIter = std::slice::Iter<'a, ExactScalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for ExactVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        Self::parse_strings(&items).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::ratio;

    #[test]
    fn normalize_leading_uses_absolute_value() {
        let v = ExactVector::new(vec![int(0), int(-3), int(6)]);
        assert_eq!(v.normalize_leading(), ExactVector::from_ints(&[0, -1, 2]));
    }

    #[test]
    fn norms() {
        let v = ExactVector::new(vec![ratio(-1, 2), int(2), int(0)]);
        assert_eq!(v.max_abs(), int(2));
        assert_eq!(v.sum_abs(), ratio(5, 2));
    }

    #[test]
    fn serde_uses_strings() {
        let v = ExactVector::new(vec![ratio(-1, 2), int(3)]);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"["-1/2","3"]"#);
        let back: ExactVector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
}
