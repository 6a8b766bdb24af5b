//! Exact geometry of the projective plane over the rationals.

mod config;
mod poly;
mod recipe;
mod scheme;

pub use config::{
    generic_k_config, generic_parts, standard_k_config, standard_parts, validate_k_config,
    KConfigType, Part,
};
pub use poly::{monomial_index, monomials, HomogPoly, PolyCurve};
pub use recipe::{
    build_recipe, multiplicity_at, named, CurveComponent, CurveRecipe, Exactness, RecipeAudit,
    Shape,
};
pub use scheme::{parse_rational, FatPointScheme};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

fn normalize(mut v: [BigRational; 3]) -> Result<[BigRational; 3]> {
    let lead = v
        .iter()
        .find(|x| !x.is_zero())
        .cloned()
        .ok_or(Error::ZeroCoordinates)?;
    for x in v.iter_mut() {
        *x = &*x / &lead;
    }
    Ok(v)
}

fn fmt_triple(f: &mut fmt::Formatter<'_>, v: &[BigRational; 3]) -> fmt::Result {
    write!(f, "[{}:{}:{}]", v[0], v[1], v[2])
}

/// A point of the projective plane, first nonzero coordinate 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [BigRational; 3],
}

impl ProjPoint {
    pub fn new(coords: [BigRational; 3]) -> Result<Self> {
        Ok(ProjPoint {
            coords: normalize(coords)?,
        })
    }

    /// Panics on the zero triple.
    pub fn from_ints(x0: i64, x1: i64, x2: i64) -> Self {
        Self::new([x0, x1, x2].map(|x| BigRational::from_integer(x.into()))).expect("nonzero point")
    }

    pub fn coords(&self) -> &[BigRational; 3] {
        &self.coords
    }

    /// Index of the coordinate normalized to 1.
    pub fn chart(&self) -> usize {
        self.coords
            .iter()
            .position(|x| !x.is_zero())
            .expect("normalized")
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(f, &self.coords)
    }
}

/// The line `a0 x0 + a1 x1 + a2 x2 = 0`, coefficients normalized like points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    coeffs: [BigRational; 3],
}

impl Line {
    pub fn new(coeffs: [BigRational; 3]) -> Result<Self> {
        Ok(Line {
            coeffs: normalize(coeffs)?,
        })
    }

    pub fn from_ints(a0: i64, a1: i64, a2: i64) -> Self {
        Self::new([a0, a1, a2].map(|x| BigRational::from_integer(x.into()))).expect("nonzero line")
    }

    pub fn coeffs(&self) -> &[BigRational; 3] {
        &self.coeffs
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        dot(&self.coeffs, p.coords()).is_zero()
    }

    /// Primitive integer coefficients with positive leading entry.
    pub fn integer_coeffs(&self) -> [BigInt; 3] {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let mut v = self
            .coeffs
            .clone()
            .map(|x| (x * BigRational::from_integer(l.clone())).to_integer());
        let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
        if v.iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative())
        {
            v = v.map(|x| -x);
        }
        v
    }

    pub fn intersection(&self, other: &Line) -> Option<ProjPoint> {
        ProjPoint::new(cross(&self.coeffs, &other.coeffs)).ok()
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.integer_coeffs();
        let mut terms = Vec::new();
        for (i, a) in c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let var = format!("x{i}");
            let sign = if a.is_negative() { "-" } else { "+" };
            let mag = a.abs();
            let body = if mag.is_one() {
                var
            } else {
                format!("{mag}{var}")
            };
            terms.push((sign, body));
        }
        for (k, (sign, body)) in terms.iter().enumerate() {
            match (k, *sign) {
                (0, "-") => write!(f, "-{body}")?,
                (0, _) => write!(f, "{body}")?,
                _ => write!(f, " {sign} {body}")?,
            }
        }
        write!(f, " = 0")
    }
}

fn dot(a: &[BigRational; 3], b: &[BigRational; 3]) -> BigRational {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn cross(a: &[BigRational; 3], b: &[BigRational; 3]) -> [BigRational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// The unique line through two distinct points.
pub fn line_through(p: &ProjPoint, q: &ProjPoint) -> Result<Line> {
    if p == q {
        return Err(Error::EqualPoints);
    }
    Line::new(cross(p.coords(), q.coords()))
}

/// Whether three points lie on a common line.
pub fn collinear(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> bool {
    dot(&cross(p.coords(), q.coords()), r.coords()).is_zero()
}
