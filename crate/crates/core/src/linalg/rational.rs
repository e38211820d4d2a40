use std::fmt;
use std::ops::{Deref, Index};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::{Error, Result, VertexSet};

/// Always `p/q`, including integers (`3/1`, `0/1`).
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `p` or `p/q` with optional sign and surrounding whitespace.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidParameter(format!("not a rational number: `{text}`"));
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Exact rational vector that serializes as a list of `"p/q"` strings.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn zeros(n: usize) -> Self {
        RationalVector(vec![BigRational::zero(); n])
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(values: I) -> Self {
        RationalVector(
            values
                .into_iter()
                .map(|v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    pub fn parse<I, S>(values: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        values
            .into_iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(RationalVector)
    }

    /// Coordinates equal to zero.
    pub fn zero_locus(&self) -> VertexSet {
        VertexSet::from_members(
            self.0.len(),
            self.0
                .iter()
                .enumerate()
                .filter(|(_, q)| q.is_zero())
                .map(|(i, _)| i),
        )
    }

    pub fn into_inner(self) -> Vec<BigRational> {
        self.0
    }
}

impl From<Vec<BigRational>> for RationalVector {
    fn from(v: Vec<BigRational>) -> Self {
        RationalVector(v)
    }
}

impl Deref for RationalVector {
    type Target = [BigRational];

    fn deref(&self) -> &[BigRational] {
        &self.0
    }
}

impl Index<usize> for RationalVector {
    type Output = BigRational;

    fn index(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.0.iter().map(|q| format!("{q}")))
            .finish()
    }
}

impl Serialize for RationalVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for RationalVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        RationalVector::parse(&raw).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_integers_with_denominator() {
        let v = RationalVector::from_integers([1, 0, -1]);
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"["1/1","0/1","-1/1"]"#
        );
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!(
            parse_rational("-3").unwrap(),
            BigRational::from_integer((-3).into())
        );
        assert_eq!(
            parse_rational(" 4/-6 ").unwrap(),
            BigRational::new((-2).into(), 3.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn json_round_trip() {
        let v = RationalVector::parse(["1/2", "-7/3", "0"]).unwrap();
        let text = serde_json::to_string(&v).unwrap();
        let back: RationalVector = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
        assert_eq!(v.zero_locus().members(), vec![2]);
    }
}
