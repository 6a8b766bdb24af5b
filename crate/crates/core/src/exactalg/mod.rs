//! Exact scalars and dense matrices over the rationals or a word-sized
//! prime field, with rank and kernel computations.
//!
//! Rational matrices are cleared of denominators row by row before any
//! elimination; the integer kernels of `bareiss` and `lift` then do all the
//! work without ever forming a fraction.

pub mod bareiss;
pub mod lift;
pub mod modular;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use lift::CertifiedKernel;
pub use modular::{is_prime_u64, PrimeField, PrimeStream};

/// Seed for the prime stream when the caller does not supply one.
pub const DEFAULT_PRIME_SEED: u64 = 0x5eed_f479_01a7;

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    /// Lowest terms, positive denominator (guaranteed by `BigRational`).
    Rational(BigRational),
    /// A residue in `[0, modulus)`.
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn integer(v: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(v.into()))
    }

    pub fn modular(value: u64, modulus: u64) -> Self {
        Scalar::Modular {
            value: value % modulus,
            modulus,
        }
    }

    pub fn field(&self) -> FieldKind {
        match self {
            Scalar::Rational(_) => FieldKind::Rational,
            Scalar::Modular { modulus, .. } => FieldKind::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

#[derive(Clone, Debug)]
enum Entries {
    Rational(Vec<BigRational>),
    Modular(PrimeField, Vec<u64>),
}

/// A dense row-major matrix whose entries all live in one field.
#[derive(Clone, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Entries,
}

impl ExactMatrix {
    pub fn from_rationals(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::MalformedMatrix { rows, cols });
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries: Entries::Rational(entries),
        })
    }

    pub fn from_integers(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        Self::from_rationals(
            rows,
            cols,
            entries.into_iter().map(BigRational::from_integer).collect(),
        )
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::from_integers(
            rows,
            cols,
            entries.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    /// Residues are reduced into `[0, p)`. Panics unless `p` is an odd prime
    /// below 2^63.
    pub fn from_residues(rows: usize, cols: usize, p: u64, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::MalformedMatrix { rows, cols });
        }
        assert!(is_prime_u64(p), "modulus must be prime");
        let entries = entries.into_iter().map(|v| v % p).collect();
        Ok(ExactMatrix {
            rows,
            cols,
            entries: Entries::Modular(PrimeField::new(p), entries),
        })
    }

    /// Rejects matrices whose entries come from more than one field.
    pub fn from_scalars(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        let malformed = Error::MalformedMatrix { rows, cols };
        if entries.len() != rows * cols {
            return Err(malformed);
        }
        let field = entries.first().map_or(FieldKind::Rational, Scalar::field);
        if entries.iter().any(|s| s.field() != field) {
            return Err(malformed);
        }
        match field {
            FieldKind::Rational => Self::from_rationals(
                rows,
                cols,
                entries
                    .into_iter()
                    .map(|s| match s {
                        Scalar::Rational(r) => r,
                        Scalar::Modular { .. } => unreachable!(),
                    })
                    .collect(),
            ),
            FieldKind::Prime(p) => Self::from_residues(
                rows,
                cols,
                p,
                entries
                    .into_iter()
                    .map(|s| match s {
                        Scalar::Modular { value, .. } => value,
                        Scalar::Rational(_) => unreachable!(),
                    })
                    .collect(),
            ),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut e = vec![BigRational::zero(); n * n];
        for i in 0..n {
            e[i * n + i] = BigRational::one();
        }
        Self::from_rationals(n, n, e).expect("square")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_rationals(rows, cols, vec![BigRational::zero(); rows * cols]).expect("sized")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldKind {
        match &self.entries {
            Entries::Rational(_) => FieldKind::Rational,
            Entries::Modular(f, _) => FieldKind::Prime(f.modulus()),
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        let i = row * self.cols + col;
        match &self.entries {
            Entries::Rational(e) => Scalar::Rational(e[i].clone()),
            Entries::Modular(f, e) => Scalar::modular(e[i], f.modulus()),
        }
    }

    pub fn transpose(&self) -> Self {
        let (r, c) = (self.rows, self.cols);
        let entries = match &self.entries {
            Entries::Rational(e) => {
                Entries::Rational((0..r * c).map(|k| e[(k % r) * c + k / r].clone()).collect())
            }
            Entries::Modular(f, e) => {
                Entries::Modular(*f, (0..r * c).map(|k| e[(k % r) * c + k / r]).collect())
            }
        };
        ExactMatrix {
            rows: c,
            cols: r,
            entries,
        }
    }

    /// Integer matrix with the same row space: each row of a rational matrix
    /// multiplied by the lcm of its denominators.
    ///
    /// Returns `None` for prime-field matrices.
    pub fn cleared_rows(&self) -> Option<Vec<BigInt>> {
        let Entries::Rational(e) = &self.entries else {
            return None;
        };
        let mut out = Vec::with_capacity(e.len());
        for row in e.chunks(self.cols.max(1)) {
            let l = row_denominator_lcm(row);
            out.extend(row.iter().map(|x| x.numer() * (&l / x.denom())));
        }
        Some(out)
    }

    /// `self * v` over the matrix's field.
    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols || v.iter().any(|s| s.field() != self.field()) {
            return Err(Error::MalformedMatrix {
                rows: self.cols,
                cols: 1,
            });
        }
        Ok(match &self.entries {
            Entries::Rational(e) => e
                .chunks(self.cols.max(1))
                .take(self.rows)
                .map(|row| {
                    let s = row
                        .iter()
                        .zip(v)
                        .fold(BigRational::zero(), |acc, (a, b)| match b {
                            Scalar::Rational(b) => acc + a * b,
                            Scalar::Modular { .. } => unreachable!(),
                        });
                    Scalar::Rational(s)
                })
                .collect(),
            Entries::Modular(f, e) => e
                .chunks(self.cols.max(1))
                .take(self.rows)
                .map(|row| {
                    let s = row.iter().zip(v).fold(0u64, |acc, (&a, b)| match b {
                        Scalar::Modular { value, .. } => f.add(acc, f.mul(a, *value)),
                        Scalar::Rational(_) => unreachable!(),
                    });
                    Scalar::modular(s, f.modulus())
                })
                .collect(),
        })
    }

    fn as_mod_matrix(&self) -> Option<modular::ModMatrix> {
        let Entries::Modular(f, e) = &self.entries else {
            return None;
        };
        Some(modular::ModMatrix {
            field: *f,
            rows: self.rows,
            cols: self.cols,
            data: e.clone(),
        })
    }
}

fn row_denominator_lcm(row: &[BigRational]) -> BigInt {
    row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}

/// Rank over the matrix's own field.
///
/// Rationals go through fraction-free Bareiss elimination; prime fields
/// through ordinary Gaussian elimination.
pub fn rank(m: &ExactMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    match m.cleared_rows() {
        Some(ints) => bareiss::rank(m.rows, m.cols, &ints),
        None => m.as_mod_matrix().expect("modular").rank(),
    }
}

/// Basis of the right kernel, `cols - rank` vectors.
///
/// Rational vectors have integer entries, content 1 and a positive leading
/// nonzero entry. Prime-field vectors carry a 1 in their free column.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    if m.cols == 0 {
        return Vec::new();
    }
    match m.cleared_rows() {
        Some(ints) => bareiss::kernel(m.rows, m.cols, &ints)
            .into_iter()
            .map(|v| {
                v.into_iter()
                    .map(|x| Scalar::Rational(BigRational::from_integer(x)))
                    .collect()
            })
            .collect(),
        None => {
            let mm = m.as_mod_matrix().expect("modular");
            let f = mm.field;
            let rref = mm.rref();
            rref.free_columns()
                .into_iter()
                .map(|fc| {
                    let mut v = vec![0u64; m.cols];
                    v[fc] = 1;
                    for (row, &pc) in rref.rows.iter().zip(&rref.pivots) {
                        v[pc] = f.neg(row[fc]);
                    }
                    v.into_iter()
                        .map(|x| Scalar::modular(x, f.modulus()))
                        .collect()
                })
                .collect()
        }
    }
}

/// Rank of a rational matrix modulo `num_primes` random word-sized primes,
/// maximized over the primes.
///
/// The result never exceeds the rational rank, and equals it unless every
/// prime divides one of the relevant minors.
pub fn rank_multimodular(m: &ExactMatrix, num_primes: usize) -> Result<usize> {
    rank_multimodular_seeded(m, num_primes, DEFAULT_PRIME_SEED)
}

pub fn rank_multimodular_seeded(m: &ExactMatrix, num_primes: usize, seed: u64) -> Result<usize> {
    let Entries::Rational(e) = &m.entries else {
        return Err(Error::MalformedMatrix {
            rows: m.rows,
            cols: m.cols,
        });
    };
    if m.rows == 0 || m.cols == 0 {
        return Ok(0);
    }
    let denominators: Vec<BigInt> = e.chunks(m.cols).map(row_denominator_lcm).collect();
    let ints = m.cleared_rows().expect("rational");
    let mut primes = PrimeStream::new(seed);
    let budget = 16 * num_primes.max(1);
    let mut best = 0;
    let mut accepted = 0;
    for _ in 0..budget {
        if accepted == num_primes {
            return Ok(best);
        }
        let p = primes.next().expect("infinite stream");
        let pb = BigInt::from(p);
        if denominators.iter().any(|d| (d % &pb).is_zero()) {
            continue;
        }
        accepted += 1;
        best = best.max(lift::reduce_mod(m.rows, m.cols, &ints, p).rank());
    }
    if accepted == num_primes {
        Ok(best)
    } else {
        Err(Error::PrimesExhausted(budget))
    }
}

/// Exact rank and integer kernel basis of a rational matrix via modular
/// images, verified by exact multiplication.
pub fn certified_kernel(m: &ExactMatrix, seed: u64) -> Result<CertifiedKernel> {
    let ints = m.cleared_rows().ok_or(Error::MalformedMatrix {
        rows: m.rows,
        cols: m.cols,
    })?;
    if m.cols == 0 {
        return Ok(CertifiedKernel {
            rank: 0,
            basis: Vec::new(),
            primes_used: 0,
        });
    }
    certified_kernel_int(m.rows, m.cols, &ints, seed)
}

const MAX_LIFT_PRIMES: usize = 400;

pub(crate) fn certified_kernel_int(
    rows: usize,
    cols: usize,
    ints: &[BigInt],
    seed: u64,
) -> Result<CertifiedKernel> {
    if rows == 0 {
        let basis = (0..cols)
            .map(|i| {
                let mut v = vec![BigInt::zero(); cols];
                v[i] = BigInt::one();
                v
            })
            .collect();
        return Ok(CertifiedKernel {
            rank: 0,
            basis,
            primes_used: 0,
        });
    }
    lift::certified_kernel(rows, cols, ints, seed, MAX_LIFT_PRIMES)
        .ok_or(Error::PrimesExhausted(MAX_LIFT_PRIMES))
}
