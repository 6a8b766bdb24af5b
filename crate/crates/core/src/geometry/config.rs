use super::{line_through, Line, ProjPoint};
use crate::error::{Error, Result};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use std::fmt;
use std::str::FromStr;

/// Type `(d1, ..., ds)` of a k-configuration, `1 <= d1 < ... < ds`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KConfigType {
    degrees: Vec<u32>,
}

impl KConfigType {
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        let ok = !degrees.is_empty() && degrees[0] >= 1 && degrees.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(Error::InvalidType(degrees));
        }
        Ok(KConfigType { degrees })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Number of lines `s`.
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point_count(&self) -> u32 {
        self.degrees.iter().sum()
    }
}

impl FromStr for KConfigType {
    type Err = Error;

    /// Comma-separated degrees, e.g. `"1,2,6"` or `"(1, 2, 6)"`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let degrees = body
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad type {s:?}")))?;
        Self::new(degrees)
    }
}

impl fmt::Display for KConfigType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One line of a configuration together with the points placed on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub line: Line,
    pub points: Vec<ProjPoint>,
}

/// The standard configuration: `d_i` points `[1 : j : s-i]`, `0 <= j < d_i`,
/// on the line `x2 = (s-i) x0`.
pub fn standard_k_config(t: &KConfigType) -> Vec<ProjPoint> {
    standard_parts(t)
        .into_iter()
        .flat_map(|p| p.points)
        .collect()
}

pub fn standard_parts(t: &KConfigType) -> Vec<Part> {
    let s = t.len() as i64;
    t.degrees()
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let h = s - 1 - i as i64;
            Part {
                line: Line::from_ints(h, 0, -1),
                points: (0..d as i64)
                    .map(|j| ProjPoint::from_ints(1, j, h))
                    .collect(),
            }
        })
        .collect()
}

/// Checks the k-configuration axioms exactly, together with distinctness of
/// lines and points and the absence of points at pairwise line
/// intersections.
pub fn validate_k_config(t: &KConfigType, parts: &[Part]) -> bool {
    if parts.len() != t.len() {
        return false;
    }
    for (i, part) in parts.iter().enumerate() {
        if part.points.len() != t.degrees()[i] as usize {
            return false;
        }
        if !part.points.iter().all(|p| part.line.contains(p)) {
            return false;
        }
        for other in &parts[..i] {
            if other.line == part.line {
                return false;
            }
            if other.points.iter().any(|p| part.line.contains(p)) {
                return false;
            }
            if part.points.iter().any(|p| other.line.contains(p)) {
                return false;
            }
        }
    }
    let all: Vec<&ProjPoint> = parts.iter().flat_map(|p| &p.points).collect();
    all.iter().enumerate().all(|(i, p)| !all[..i].contains(p))
}

const RETRY_BUDGET: usize = 64;

/// Seeded configuration of type `t` on random rational lines.
pub fn generic_k_config(t: &KConfigType, seed: u64) -> Result<Vec<ProjPoint>> {
    Ok(generic_parts(t, seed)?
        .into_iter()
        .flat_map(|p| p.points)
        .collect())
}

pub fn generic_parts(t: &KConfigType, seed: u64) -> Result<Vec<Part>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    for _ in 0..RETRY_BUDGET {
        if let Some(parts) = draw_parts(t, &mut rng) {
            if validate_k_config(t, &parts) {
                return Ok(parts);
            }
        }
    }
    Err(Error::RetryBudget(RETRY_BUDGET))
}

fn small(rng: &mut ChaCha20Rng, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

fn draw_parts(t: &KConfigType, rng: &mut ChaCha20Rng) -> Option<Vec<Part>> {
    let bound = 9 + t.point_count() as i64;
    let mut parts = Vec::with_capacity(t.len());
    for &d in t.degrees() {
        let a = random_point(rng, bound)?;
        let b = random_point(rng, bound)?;
        let line = line_through(&a, &b).ok()?;
        // points a + k (b - a) in an affine chart of the line
        let [a0, a1, a2] = a.coords().clone();
        let [b0, b1, b2] = b.coords().clone();
        let mut points = Vec::with_capacity(d as usize);
        while points.len() < d as usize {
            let k = BigRational::from_integer(small(rng, bound).into());
            let c = [
                &a0 + &k * (&b0 - &a0),
                &a1 + &k * (&b1 - &a1),
                &a2 + &k * (&b2 - &a2),
            ];
            let Ok(p) = ProjPoint::new(c) else { continue };
            if !points.contains(&p) {
                points.push(p);
            }
        }
        parts.push(Part { line, points });
    }
    Some(parts)
}

fn random_point(rng: &mut ChaCha20Rng, bound: i64) -> Option<ProjPoint> {
    let c = [small(rng, bound), small(rng, bound), small(rng, bound)];
    ProjPoint::new(c.map(|x| BigRational::from_integer(x.into()))).ok()
}
