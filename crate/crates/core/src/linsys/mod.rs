//! Linear systems `[I_Z]_d` of plane curves through a fat-point scheme.

use crate::exactalg::{self, bareiss, PrimeStream, DEFAULT_PRIME_SEED};
use crate::geometry::{monomials, FatPointScheme, HomogPoly, Line, PolyCurve, ProjPoint};
use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// `[I_Z]_d` for a scheme `Z` and degree `d`.
#[derive(Clone, Debug)]
pub struct LinearSystemQuery {
    pub scheme: FatPointScheme,
    pub degree: u32,
}

impl LinearSystemQuery {
    pub fn new(scheme: FatPointScheme, degree: u32) -> Self {
        LinearSystemQuery { scheme, degree }
    }

    pub fn monomial_count(&self) -> usize {
        let d = self.degree as usize;
        (d + 1) * (d + 2) / 2
    }

    /// `C(d+2, 2) - sum C(m+1, 2)`, possibly negative.
    pub fn expected_dimension(&self) -> i64 {
        self.monomial_count() as i64 - self.scheme.condition_count() as i64
    }
}

/// How a rank was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum RankMethod {
    /// No conditions or no monomials.
    Trivial,
    /// Fraction-free elimination over the integers.
    Bareiss,
    /// Full column rank modulo each of `primes` primes; rank modulo a prime
    /// never exceeds the rational rank, so this proves emptiness.
    ModularFullRank { primes: usize },
    /// Modular kernel lifted to the integers and verified by exact
    /// multiplication.
    CertifiedLift { primes: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimResult {
    pub dimension: usize,
    pub expected_dimension: i64,
    pub superabundance: usize,
    pub method: RankMethod,
}

impl DimResult {
    fn new(dimension: usize, expected_dimension: i64, method: RankMethod) -> Self {
        DimResult {
            dimension,
            expected_dimension,
            superabundance: dimension - expected_dimension.max(0) as usize,
            method,
        }
    }
}

/// Which elimination backs a dimension count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankPolicy {
    /// Bareiss below `BAREISS_MAX_CELLS`, certified modular above.
    Auto,
    Rational,
    Modular,
}

#[derive(Clone, Copy, Debug)]
pub struct DimOptions {
    pub policy: RankPolicy,
    /// Primes used to confirm full column rank.
    pub primes: usize,
    pub seed: u64,
}

impl Default for DimOptions {
    fn default() -> Self {
        DimOptions {
            policy: RankPolicy::Auto,
            primes: 3,
            seed: DEFAULT_PRIME_SEED,
        }
    }
}

/// Matrices with more entries than this go through the modular path.
pub const BAREISS_MAX_CELLS: usize = 2_000;

/// Interpolation matrix: one column per degree-`d` monomial, one row per
/// local condition `(a, b)`, `a + b < m`, at each support point.
///
/// Each point is dehomogenized at its first nonzero coordinate; with the
/// other two coordinates `u0 = nu/du`, `v0 = nv/dv`, the row for `(a, b)`
/// is the coefficient of `(u - u0)^a (v - v0)^b`, multiplied through by
/// `du^(d-a) dv^(d-b)` so every entry is an integer.
pub fn interpolation_matrix(scheme: &FatPointScheme, d: u32) -> (usize, usize, Vec<BigInt>) {
    let mons = monomials(d);
    let cols = mons.len();
    let blocks: Vec<Vec<BigInt>> = scheme
        .supports()
        .par_iter()
        .map(|(p, m)| point_rows(p, *m, d, &mons))
        .collect();
    let data: Vec<BigInt> = blocks.into_iter().flatten().collect();
    (data.len() / cols, cols, data)
}

fn point_rows(p: &ProjPoint, m: u32, d: u32, mons: &[[u32; 3]]) -> Vec<BigInt> {
    let k = p.chart();
    let (i, j) = match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let (u0, v0) = (&p.coords()[i], &p.coords()[j]);
    let powers = |x: &BigInt| {
        let mut v = vec![BigInt::one(); d as usize + 1];
        for e in 1..=d as usize {
            v[e] = &v[e - 1] * x;
        }
        v
    };
    let (nu, du) = (powers(u0.numer()), powers(u0.denom()));
    let (nv, dv) = (powers(v0.numer()), powers(v0.denom()));
    let binom: Vec<Vec<BigInt>> = (0..=d)
        .map(|n| {
            (0..=n)
                .map(|r| binomial(BigInt::from(n), BigInt::from(r)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for a in 0..m {
        for b in 0..m - a {
            for e in mons {
                let (e1, e2) = (e[i], e[j]);
                if e1 < a || e2 < b {
                    out.push(BigInt::zero());
                    continue;
                }
                let (e1, e2, a, b, d) =
                    (e1 as usize, e2 as usize, a as usize, b as usize, d as usize);
                out.push(
                    &binom[e1][a]
                        * &binom[e2][b]
                        * &nu[e1 - a]
                        * &du[d - e1]
                        * &nv[e2 - b]
                        * &dv[d - e2],
                );
            }
        }
    }
    out
}

pub fn dim_linear_system(q: &LinearSystemQuery) -> DimResult {
    dim_linear_system_with(q, &DimOptions::default())
}

pub fn dim_linear_system_with(q: &LinearSystemQuery, opts: &DimOptions) -> DimResult {
    let expected = q.expected_dimension();
    if q.scheme.is_empty() {
        return DimResult::new(q.monomial_count(), expected, RankMethod::Trivial);
    }
    let (rows, cols, data) = interpolation_matrix(&q.scheme, q.degree);
    let use_bareiss = match opts.policy {
        RankPolicy::Rational => true,
        RankPolicy::Modular => false,
        RankPolicy::Auto => rows * cols <= BAREISS_MAX_CELLS,
    };
    if use_bareiss {
        let r = bareiss::rank(rows, cols, &data);
        return DimResult::new(cols - r, expected, RankMethod::Bareiss);
    }
    if full_rank_mod_primes(rows, cols, &data, opts) {
        return DimResult::new(
            0,
            expected,
            RankMethod::ModularFullRank {
                primes: opts.primes,
            },
        );
    }
    let k = exactalg::certified_kernel_int(rows, cols, &data, opts.seed)
        .expect("certified kernel within the prime budget");
    DimResult::new(
        cols - k.rank,
        expected,
        RankMethod::CertifiedLift {
            primes: k.primes_used,
        },
    )
}

/// True iff every one of `opts.primes` primes sees full column rank.
fn full_rank_mod_primes(rows: usize, cols: usize, data: &[BigInt], opts: &DimOptions) -> bool {
    if rows < cols {
        return false;
    }
    let primes: Vec<u64> = PrimeStream::new(opts.seed)
        .take(opts.primes.max(1))
        .collect();
    primes
        .par_iter()
        .all(|&p| exactalg::lift::reduce_mod(rows, cols, data, p).rank() == cols)
}

/// Whether `[I_Z]_d` is nonzero, decided exactly with the least work: a
/// condition count below the monomial count, then modular full rank, then a
/// lifted kernel vector.
pub fn is_nonempty(q: &LinearSystemQuery, opts: &DimOptions) -> bool {
    if q.expected_dimension() > 0 {
        return true;
    }
    if q.scheme.max_multiplicity() > q.degree {
        return false;
    }
    dim_linear_system_with(q, opts).dimension > 0
}

/// Result of an initial-degree search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Alpha {
    Found(u32),
    NotFoundBelowCap(u32),
}

impl Alpha {
    pub fn value(self) -> Option<u32> {
        match self {
            Alpha::Found(a) => Some(a),
            Alpha::NotFoundBelowCap(_) => None,
        }
    }
}

/// Least `d <= degree_cap` with `[I_Z]_d != 0`.
///
/// The scan starts at the largest multiplicity (a curve of degree `d` has
/// multiplicity at most `d` everywhere) and ascends.
pub fn alpha(scheme: &FatPointScheme, degree_cap: u32) -> Alpha {
    alpha_with(scheme, degree_cap, &DimOptions::default())
}

pub fn alpha_with(scheme: &FatPointScheme, degree_cap: u32, opts: &DimOptions) -> Alpha {
    let start = scheme.max_multiplicity();
    for d in start..=degree_cap {
        if is_nonempty(&LinearSystemQuery::new(scheme.clone(), d), opts) {
            return Alpha::Found(d);
        }
    }
    Alpha::NotFoundBelowCap(degree_cap)
}

/// `alpha` of the uniform scheme `tX`.
pub fn alpha_symbolic(points: &[ProjPoint], t: u32, degree_cap: u32) -> Alpha {
    alpha_symbolic_with(points, t, degree_cap, &DimOptions::default())
}

pub fn alpha_symbolic_with(
    points: &[ProjPoint],
    t: u32,
    degree_cap: u32,
    opts: &DimOptions,
) -> Alpha {
    let scheme = FatPointScheme::uniform(points, t).expect("distinct points");
    alpha_with(&scheme, degree_cap, opts)
}

/// Canonical integer forms spanning `[I_Z]_d`.
///
/// Panics if a basis element fails the independent vanishing-order check.
pub fn system_basis(q: &LinearSystemQuery) -> Vec<PolyCurve> {
    let d = q.degree;
    let vectors: Vec<Vec<BigInt>> = if q.scheme.is_empty() {
        (0..q.monomial_count())
            .map(|i| {
                let mut v = vec![BigInt::zero(); q.monomial_count()];
                v[i] = BigInt::one();
                v
            })
            .collect()
    } else {
        let (rows, cols, data) = interpolation_matrix(&q.scheme, d);
        if rows * cols <= BAREISS_MAX_CELLS {
            bareiss::kernel(rows, cols, &data)
        } else {
            exactalg::certified_kernel_int(rows, cols, &data, DEFAULT_PRIME_SEED)
                .expect("certified kernel within the prime budget")
                .basis
        }
    };
    if d == 0 {
        return Vec::new();
    }
    vectors
        .into_iter()
        .map(|v| {
            let c = PolyCurve::new(HomogPoly::new(d, v).expect("sized")).expect("nonzero");
            for (p, m) in q.scheme.supports() {
                assert!(
                    c.order_at(p) >= *m,
                    "kernel form fails to vanish to order {m} at {p}"
                );
            }
            c
        })
        .collect()
}

/// The candidate lines whose linear form divides `c` exactly.
pub fn has_linear_component(c: &PolyCurve, candidates: &[Line]) -> Vec<Line> {
    candidates
        .iter()
        .filter(|l| c.poly().div_exact(&HomogPoly::from_line(l)).is_some())
        .cloned()
        .collect()
}
