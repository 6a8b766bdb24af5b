use super::{Line, ProjPoint};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Degree-`d` monomials `x0^a x1^b x2^c` in graded-lex order, `x0 > x1 > x2`.
pub fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// Position of `e` in `monomials(e[0] + e[1] + e[2])`.
pub fn monomial_index(e: [u32; 3]) -> usize {
    let d = e[0] + e[1] + e[2];
    let k = (d - e[0]) as usize;
    k * (k + 1) / 2 + (k - e[1] as usize)
}

/// Homogeneous polynomial with integer coefficients listed in `monomials`
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogPoly {
    degree: u32,
    coeffs: Vec<BigInt>,
}

impl HomogPoly {
    pub fn new(degree: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        let n = ((degree + 1) * (degree + 2) / 2) as usize;
        if coeffs.len() != n {
            return Err(Error::Parse(format!(
                "degree {degree} needs {n} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(HomogPoly { degree, coeffs })
    }

    pub fn zero(degree: u32) -> Self {
        let n = ((degree + 1) * (degree + 2) / 2) as usize;
        HomogPoly {
            degree,
            coeffs: vec![BigInt::zero(); n],
        }
    }

    pub fn from_line(l: &Line) -> Self {
        HomogPoly {
            degree: 1,
            coeffs: l.integer_coeffs().to_vec(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ([u32; 3], &BigInt)> {
        monomials(self.degree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn mul(&self, other: &HomogPoly) -> HomogPoly {
        let mut out = HomogPoly::zero(self.degree + other.degree);
        for (e, a) in self.terms() {
            for (f, b) in other.terms() {
                out.coeffs[monomial_index([e[0] + f[0], e[1] + f[1], e[2] + f[2]])] += a * b;
            }
        }
        out
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn canonical(mut self) -> Self {
        crate::exactalg::bareiss::normalize_vector(&mut self.coeffs);
        self
    }

    pub fn eval(&self, x: &[BigRational; 3]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            let mut t = BigRational::from_integer(c.clone());
            for (xi, &k) in x.iter().zip(&e) {
                t *= num_traits::pow(xi.clone(), k as usize);
            }
            acc += t;
        }
        acc
    }

    /// Least total order of the local expansion at `p`; `degree + 1` for the
    /// zero polynomial.
    ///
    /// The point is moved to the origin of its affine chart and the
    /// expansion coefficients are read off with binomial weights, so no
    /// factorials appear.
    pub fn order_at(&self, p: &ProjPoint) -> u32 {
        if self.is_zero() {
            return self.degree + 1;
        }
        let k = p.chart();
        let (i, j) = other_two(k);
        let (u0, v0) = (&p.coords()[i], &p.coords()[j]);
        let terms: Vec<([u32; 3], &BigInt)> = self.terms().collect();
        for order in 0..=self.degree {
            for alpha in 0..=order {
                let beta = order - alpha;
                let mut c = BigRational::zero();
                for (e, coef) in &terms {
                    let (e1, e2) = (e[i], e[j]);
                    if e1 < alpha || e2 < beta {
                        continue;
                    }
                    let w = binomial(BigInt::from(e1), BigInt::from(alpha))
                        * binomial(BigInt::from(e2), BigInt::from(beta))
                        * *coef;
                    c += BigRational::from_integer(w)
                        * num_traits::pow(u0.clone(), (e1 - alpha) as usize)
                        * num_traits::pow(v0.clone(), (e2 - beta) as usize);
                }
                if !c.is_zero() {
                    return order;
                }
            }
        }
        unreachable!("a nonzero form has order at most its degree")
    }

    /// `self / divisor` when the division is exact over the rationals and
    /// the quotient has integer coefficients.
    pub fn div_exact(&self, divisor: &HomogPoly) -> Option<HomogPoly> {
        if divisor.is_zero() || divisor.degree > self.degree {
            return None;
        }
        let dterms: Vec<([u32; 3], BigRational)> = divisor
            .terms()
            .map(|(e, c)| (e, BigRational::from_integer(c.clone())))
            .collect();
        let (lead_e, lead_c) = dterms[0].clone();
        let qdeg = self.degree - divisor.degree;
        let mut rem: Vec<BigRational> = self
            .coeffs
            .iter()
            .cloned()
            .map(BigRational::from_integer)
            .collect();
        let mut quot = vec![BigRational::zero(); ((qdeg + 1) * (qdeg + 2) / 2) as usize];
        let mons = monomials(self.degree);
        // terms are visited in decreasing order, so each subtraction only
        // touches later positions
        for (idx, e) in mons.iter().enumerate() {
            if rem[idx].is_zero() {
                continue;
            }
            if e.iter().zip(&lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe = [e[0] - lead_e[0], e[1] - lead_e[1], e[2] - lead_e[2]];
            let qc = &rem[idx] / &lead_c;
            for (de, dc) in &dterms {
                let target = monomial_index([qe[0] + de[0], qe[1] + de[1], qe[2] + de[2]]);
                rem[target] -= &qc * dc;
            }
            quot[monomial_index(qe)] = qc;
        }
        if !quot.iter().all(|c| c.is_integer()) {
            return None;
        }
        Some(HomogPoly {
            degree: qdeg,
            coeffs: quot.into_iter().map(|c| c.to_integer()).collect(),
        })
    }
}

fn other_two(k: usize) -> (usize, usize) {
    match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("x{i}")
                    } else {
                        format!("x{i}^{k}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A plane curve given by a nonzero form in canonical integer form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyCurve {
    poly: HomogPoly,
}

impl PolyCurve {
    pub fn new(poly: HomogPoly) -> Result<Self> {
        if poly.is_zero() || poly.degree == 0 {
            return Err(Error::Parse(
                "a curve needs a nonzero form of positive degree".into(),
            ));
        }
        Ok(PolyCurve {
            poly: poly.canonical(),
        })
    }

    pub fn poly(&self) -> &HomogPoly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree
    }

    pub fn order_at(&self, p: &ProjPoint) -> u32 {
        self.poly.order_at(p)
    }

    /// The line this curve is, when it has degree 1.
    pub fn as_line(&self) -> Option<Line> {
        if self.degree() != 1 {
            return None;
        }
        let c = &self.poly.coeffs;
        Line::new([0, 1, 2].map(|i| BigRational::from_integer(c[i].clone()))).ok()
    }
}

impl fmt::Display for PolyCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}
