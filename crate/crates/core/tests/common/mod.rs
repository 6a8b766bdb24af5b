//! Independent oracles: textbook Gaussian elimination over `BigRational`
//! and linear systems built from partial derivatives instead of local
//! Taylor coefficients.
#![allow(dead_code)]

use fatpoint::geometry::{monomials, FatPointScheme};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Rank by row reduction with rational pivots.
pub fn naive_rank(rows: usize, cols: usize, data: &[BigRational]) -> usize {
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| data[i * cols..(i + 1) * cols].to_vec())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot_row = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn naive_rank_int(rows: usize, cols: usize, data: &[BigInt]) -> usize {
    let r: Vec<BigRational> = data
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect();
    naive_rank(rows, cols, &r)
}

fn falling(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

/// `dim [I_Z]_d`: a form vanishes to order `m` at `p` iff every partial
/// derivative of order `m - 1` vanishes there (Euler's formula covers the
/// lower orders).
pub fn brute_force_dim(z: &FatPointScheme, d: u32) -> usize {
    let mons = monomials(d);
    let cols = mons.len();
    let mut data = Vec::new();
    let mut rows = 0;
    for (p, m) in z.supports() {
        let k = m - 1;
        if k > d {
            // every derivative of order k of a degree-d form is zero, so
            // use all of them of order d instead, which forces the form to
            // zero
            return 0;
        }
        for a in 0..=k {
            for b in 0..=k - a {
                let c = k - a - b;
                for e in &mons {
                    let (i, j, l) = (e[0], e[1], e[2]);
                    if i < a || j < b || l < c {
                        data.push(BigRational::zero());
                        continue;
                    }
                    let coeff = falling(i, a) * falling(j, b) * falling(l, c);
                    let x = p.coords();
                    let v = BigRational::from_integer(coeff)
                        * pow(&x[0], i - a)
                        * pow(&x[1], j - b)
                        * pow(&x[2], l - c);
                    data.push(v);
                }
                rows += 1;
            }
        }
    }
    cols - naive_rank(rows, cols, &data)
}

fn pow(x: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

/// Random rational matrix with entries `n / d`, `|n| <= 9`, `1 <= d <= 4`;
/// with probability one half it is a product of thin factors, so its rank
/// is often below full.
pub fn random_rational_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Vec<BigRational> {
    let entry = |rng: &mut dyn rand::RngCore| q(rng.gen_range(-9..=9), rng.gen_range(1..=4));
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(1..=rows.min(cols));
        let a: Vec<BigRational> = (0..rows * k).map(|_| entry(rng)).collect();
        let b: Vec<BigRational> = (0..k * cols).map(|_| entry(rng)).collect();
        let mut out = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                out.push((0..k).fold(BigRational::zero(), |acc, t| {
                    acc + &a[i * k + t] * &b[t * cols + j]
                }));
            }
        }
        out
    } else {
        (0..rows * cols).map(|_| entry(rng)).collect()
    }
}
