//! Word-sized prime fields.
//!
//! Moduli live in (2^60, 2^63) so that Montgomery reduction with a `u128`
//! accumulator never overflows.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

const PRIME_LOW: u64 = 1 << 60;
const PRIME_HIGH: u64 = 1 << 63;

/// A prime field `Z/pZ` with precomputed Montgomery constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    /// `-p^{-1} mod 2^64`
    neg_inv: u64,
    /// `2^128 mod p`, used to move values into Montgomery form.
    r2: u64,
}

impl PrimeField {
    /// Panics if `p` is even or not below 2^63.
    pub fn new(p: u64) -> Self {
        assert!(
            p % 2 == 1 && p < PRIME_HIGH,
            "modulus must be odd and below 2^63"
        );
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        PrimeField {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    /// Montgomery form of `a`, i.e. `a * 2^64 mod p`.
    #[inline]
    pub fn to_mont(&self, a: u64) -> u64 {
        self.redc(a as u128 * self.r2 as u128)
    }

    /// `a * b` where `a_mont` is in Montgomery form and `b` is plain.
    #[inline]
    pub fn mul_mont(&self, a_mont: u64, b: u64) -> u64 {
        self.redc(a_mont as u128 * b as u128)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic stream of distinct random primes in (2^60, 2^63).
#[derive(Debug)]
pub struct PrimeStream {
    rng: ChaCha20Rng,
    seen: Vec<u64>,
}

impl PrimeStream {
    pub fn new(seed: u64) -> Self {
        PrimeStream {
            rng: ChaCha20Rng::seed_from_u64(seed),
            seen: Vec::new(),
        }
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            let candidate = self.rng.gen_range(PRIME_LOW..PRIME_HIGH) | 1;
            if is_prime_u64(candidate) && !self.seen.contains(&candidate) {
                self.seen.push(candidate);
                return Some(candidate);
            }
        }
    }
}

/// Dense matrix over a prime field, row-major.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    pub field: PrimeField,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

/// Reduced row echelon form over a prime field.
#[derive(Clone, Debug)]
pub struct ModRref {
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
    /// The `pivots.len()` nonzero rows, each `cols` wide, pivot entries 1.
    pub rows: Vec<Vec<u64>>,
    pub cols: usize,
}

impl ModMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        ModMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Forward elimination in place; returns the pivot columns.
    ///
    /// Pivot choice is the first nonzero entry in column order. Rows below
    /// the rank are left zero; rows above are in echelon form but not
    /// normalized.
    fn eliminate(&mut self) -> Vec<usize> {
        let f = self.field;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for k in c..cols {
                    self.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            // scale pivot row so its pivot is 1
            let inv_m = f.to_mont(inv);
            for k in c..cols {
                let v = self.data[r * cols + k];
                if v != 0 {
                    self.data[r * cols + k] = f.mul_mont(inv_m, v);
                }
            }
            let (head, tail) = self.data.split_at_mut((r + 1) * cols);
            let pivot_row = &head[r * cols..];
            for row in tail.chunks_exact_mut(cols) {
                let a = row[c];
                if a == 0 {
                    continue;
                }
                let a_m = f.to_mont(a);
                for k in c..cols {
                    let pv = pivot_row[k];
                    if pv != 0 {
                        row[k] = f.sub(row[k], f.mul_mont(a_m, pv));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.eliminate().len()
    }

    pub fn rref(&self) -> ModRref {
        let mut work = self.clone();
        let pivots = work.eliminate();
        let f = work.field;
        let cols = work.cols;
        let mut rows: Vec<Vec<u64>> = (0..pivots.len())
            .map(|i| work.data[i * cols..(i + 1) * cols].to_vec())
            .collect();
        // back substitution; pivot rows are already normalized
        for i in (0..pivots.len()).rev() {
            let c = pivots[i];
            let (upper, lower) = rows.split_at_mut(i);
            let pivot_row = &lower[0];
            for row in upper.iter_mut() {
                let a = row[c];
                if a == 0 {
                    continue;
                }
                let a_m = f.to_mont(a);
                for k in c..cols {
                    let pv = pivot_row[k];
                    if pv != 0 {
                        row[k] = f.sub(row[k], f.mul_mont(a_m, pv));
                    }
                }
            }
        }
        ModRref { pivots, rows, cols }
    }
}

impl ModRref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut free = Vec::with_capacity(self.cols - self.pivots.len());
        let mut next = self.pivots.iter().peekable();
        for c in 0..self.cols {
            if next.peek() == Some(&&c) {
                next.next();
            } else {
                free.push(c);
            }
        }
        free
    }
}
