use super::ProjPoint;
use crate::error::{Error, Result};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt;
use std::str::FromStr;

/// `m1 P1 + ... + ms Ps` with distinct points and positive multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FatPointScheme {
    supports: Vec<(ProjPoint, u32)>,
}

impl FatPointScheme {
    pub fn new(supports: Vec<(ProjPoint, u32)>) -> Result<Self> {
        if supports.iter().any(|(_, m)| *m == 0) {
            return Err(Error::ZeroMultiplicity);
        }
        for (i, (p, _)) in supports.iter().enumerate() {
            if supports[..i].iter().any(|(q, _)| q == p) {
                return Err(Error::DuplicatePoint);
            }
        }
        Ok(FatPointScheme { supports })
    }

    pub fn empty() -> Self {
        FatPointScheme {
            supports: Vec::new(),
        }
    }

    /// `t X`: every point with multiplicity `t`.
    pub fn uniform(points: &[ProjPoint], t: u32) -> Result<Self> {
        Self::new(points.iter().map(|p| (p.clone(), t)).collect())
    }

    /// Drops zero multiplicities instead of rejecting them.
    pub(crate) fn from_clamped(supports: Vec<(ProjPoint, u32)>) -> Self {
        FatPointScheme {
            supports: supports.into_iter().filter(|(_, m)| *m > 0).collect(),
        }
    }

    pub fn supports(&self) -> &[(ProjPoint, u32)] {
        &self.supports
    }

    pub fn points(&self) -> impl Iterator<Item = &ProjPoint> {
        self.supports.iter().map(|(p, _)| p)
    }

    pub fn len(&self) -> usize {
        self.supports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.supports.is_empty()
    }

    pub fn multiplicity(&self, p: &ProjPoint) -> u32 {
        self.supports
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, m)| *m)
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.supports.iter().map(|(_, m)| *m).max().unwrap_or(0)
    }

    /// Number of linear conditions, `sum C(m+1, 2)`.
    pub fn condition_count(&self) -> u64 {
        self.supports
            .iter()
            .map(|(_, m)| (*m as u64) * (*m as u64 + 1) / 2)
            .sum()
    }

    /// Multiplicities scaled by `k`.
    pub fn scaled(&self, k: u32) -> Self {
        Self::from_clamped(
            self.supports
                .iter()
                .map(|(p, m)| (p.clone(), m * k))
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(SchemeFile::from(self)).expect("serializable")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let file: SchemeFile =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("scheme: {e}")))?;
        file.try_into()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("scheme: {e}")))?;
        Self::from_json(&v)
    }
}

impl fmt::Display for FatPointScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.supports.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, m)) in self.supports.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}{p}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemeFile {
    points: Vec<[Value; 3]>,
    multiplicities: Vec<u32>,
}

impl From<&FatPointScheme> for SchemeFile {
    fn from(s: &FatPointScheme) -> Self {
        SchemeFile {
            points: s
                .supports
                .iter()
                .map(|(p, _)| {
                    p.coords()
                        .clone()
                        .map(|x| Value::String(rational_string(&x)))
                })
                .collect(),
            multiplicities: s.supports.iter().map(|(_, m)| *m).collect(),
        }
    }
}

impl TryFrom<SchemeFile> for FatPointScheme {
    type Error = Error;

    fn try_from(f: SchemeFile) -> Result<Self> {
        if f.points.len() != f.multiplicities.len() {
            return Err(Error::Parse(format!(
                "{} points but {} multiplicities",
                f.points.len(),
                f.multiplicities.len()
            )));
        }
        let mut supports = Vec::with_capacity(f.points.len());
        for (coords, m) in f.points.iter().zip(f.multiplicities) {
            let c = [
                parse_value(&coords[0])?,
                parse_value(&coords[1])?,
                parse_value(&coords[2])?,
            ];
            supports.push((ProjPoint::new(c)?, m));
        }
        FatPointScheme::new(supports)
    }
}

/// `"num/den"`, always with an explicit denominator.
pub(crate) fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"n"`, `"n/d"` (any sign, any common factor).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    let s = s.trim();
    if let Some((_, d)) = s.split_once('/') {
        if d.trim()
            .trim_start_matches(['+', '-'])
            .trim_start_matches('0')
            .is_empty()
        {
            return Err(bad());
        }
    }
    BigRational::from_str(s).map_err(|_| bad())
}

fn parse_value(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        _ => Err(Error::Parse(format!(
            "coordinate must be an integer or \"num/den\" string, got {v}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_schemes() {
        let p = ProjPoint::from_ints(1, 0, 0);
        assert!(matches!(
            FatPointScheme::new(vec![(p.clone(), 1), (p.clone(), 2)]),
            Err(Error::DuplicatePoint)
        ));
        assert!(matches!(
            FatPointScheme::new(vec![(p, 0)]),
            Err(Error::ZeroMultiplicity)
        ));
    }

    #[test]
    fn json_roundtrip_normalizes() {
        let s = FatPointScheme::from_json_str(
            r#"{"points": [[2, 4, "2/3"], [0, "-1/2", 1]], "multiplicities": [3, 1]}"#,
        )
        .unwrap();
        assert_eq!(s.supports()[0].0.to_string(), "[1:2:1/3]");
        assert_eq!(s.supports()[1].0.to_string(), "[0:1:-2]");
        let back = FatPointScheme::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn malformed_json_is_rejected() {
        for bad in [
            r#"{"points": [[1, 0, 0]], "multiplicities": []}"#,
            r#"{"points": [[1.5, 0, 0]], "multiplicities": [1]}"#,
            r#"{"points": [["1/0", 0, 0]], "multiplicities": [1]}"#,
            r#"{"points": [[0, 0, 0]], "multiplicities": [1]}"#,
            r#"{"points": [[1, 0]], "multiplicities": [1]}"#,
        ] {
            assert!(FatPointScheme::from_json_str(bad).is_err(), "{bad}");
        }
    }
}
