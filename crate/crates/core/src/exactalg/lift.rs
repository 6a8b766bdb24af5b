//! Exact kernels of integer matrices through modular images.
//!
//! The reduced echelon form is computed modulo several primes, the kernel
//! vectors are combined by CRT and rational reconstruction, and the
//! candidate vectors are then multiplied back into the integer matrix. The
//! final check is exact, so the result does not depend on how lucky the
//! primes were: once `cols - r` independent integer kernel vectors are
//! verified and some prime sees rank `r`, the rational rank is exactly `r`.

use super::modular::{ModMatrix, ModRref, PrimeField, PrimeStream};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::bareiss::normalize_vector;

/// Verified rank and kernel basis of an integer matrix.
#[derive(Clone, Debug)]
pub struct CertifiedKernel {
    pub rank: usize,
    /// Integer kernel vectors, content 1, positive leading entry.
    pub basis: Vec<Vec<BigInt>>,
    /// Number of primes consumed.
    pub primes_used: usize,
}

pub(crate) fn reduce_mod(rows: usize, cols: usize, data: &[BigInt], p: u64) -> ModMatrix {
    let field = PrimeField::new(p);
    let pb = BigInt::from(p);
    let mut m = ModMatrix::zeros(field, rows, cols);
    for (dst, src) in m.data.iter_mut().zip(data) {
        if src.is_zero() {
            continue;
        }
        *dst = residue_u64(src, &pb);
    }
    m
}

/// Symmetric rational reconstruction of `a mod m`; returns `(num, den)` with
/// `den > 0` and both below `sqrt(m / 2)`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m >> 1usize).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r2) = r0.div_rem(&r1);
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if r1.is_zero() {
        return Some((BigInt::zero(), BigInt::one()));
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// Residues of the kernel vectors at the pivot positions: entry `[k][i]` is
/// `-rref[i][free[k]]`.
fn kernel_residues(rref: &ModRref, free: &[usize], field: &PrimeField) -> Vec<Vec<u64>> {
    free.iter()
        .map(|&f| rref.rows.iter().map(|row| field.neg(row[f])).collect())
        .collect()
}

fn residue_u64(x: &BigInt, p: &BigInt) -> u64 {
    x.mod_floor(p).iter_u64_digits().next().unwrap_or(0)
}

fn annihilates(rows: usize, cols: usize, data: &[BigInt], v: &[BigInt]) -> bool {
    let support: Vec<usize> = (0..cols).filter(|&c| !v[c].is_zero()).collect();
    (0..rows).all(|i| {
        let row = &data[i * cols..(i + 1) * cols];
        let mut acc = BigInt::zero();
        for &c in &support {
            if !row[c].is_zero() {
                acc += &row[c] * &v[c];
            }
        }
        acc.is_zero()
    })
}

/// Computes the exact rank and an integer kernel basis of an integer matrix.
///
/// Returns `None` if `max_primes` primes were consumed without an exactly
/// verified basis.
pub fn certified_kernel(
    rows: usize,
    cols: usize,
    data: &[BigInt],
    seed: u64,
    max_primes: usize,
) -> Option<CertifiedKernel> {
    let mut primes = PrimeStream::new(seed);
    let mut reference: Option<ModRref> = None;
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();
    let mut used = 0;

    while used < max_primes {
        let p = primes.next()?;
        used += 1;
        let rref = reduce_mod(rows, cols, data, p).rref();
        match &reference {
            Some(r0) if r0.pivots == rref.pivots => {}
            // a larger rank, or the same rank with lexicographically earlier
            // pivots, means every prime so far was unlucky
            Some(r0)
                if rref.rank() < r0.rank()
                    || (rref.rank() == r0.rank() && rref.pivots > r0.pivots) =>
            {
                continue;
            }
            _ => {
                residues.clear();
                modulus = BigInt::one();
                reference = Some(rref.clone());
            }
        }
        let r0 = reference.as_ref().unwrap();
        if r0.rank() == cols {
            return Some(CertifiedKernel {
                rank: cols,
                basis: Vec::new(),
                primes_used: used,
            });
        }
        let free = r0.free_columns();
        let field = PrimeField::new(p);
        let new_res = kernel_residues(&rref, &free, &field);
        let pb = BigInt::from(p);
        if residues.is_empty() {
            residues = new_res
                .iter()
                .map(|col| col.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
        } else {
            // CRT: x = x0 + M * ((x1 - x0) * M^{-1} mod p)
            let m_inv = field.inv(residue_u64(&modulus, &pb));
            for (acc_col, col) in residues.iter_mut().zip(&new_res) {
                for (acc, &x) in acc_col.iter_mut().zip(col) {
                    let delta = field.mul(field.sub(x, residue_u64(acc, &pb)), m_inv);
                    if delta != 0 {
                        *acc += &modulus * BigInt::from(delta);
                    }
                }
            }
        }
        modulus *= &pb;
        if let Some(basis) = try_lift(rows, cols, data, r0, &free, &residues, &modulus) {
            return Some(CertifiedKernel {
                rank: r0.rank(),
                basis,
                primes_used: used,
            });
        }
    }
    None
}

fn try_lift(
    rows: usize,
    cols: usize,
    data: &[BigInt],
    r0: &ModRref,
    free: &[usize],
    residues: &[Vec<BigInt>],
    modulus: &BigInt,
) -> Option<Vec<Vec<BigInt>>> {
    let mut basis = Vec::with_capacity(free.len());
    for (k, &f) in free.iter().enumerate() {
        let mut nums = Vec::with_capacity(r0.rank());
        let mut den_lcm = BigInt::one();
        for acc in &residues[k] {
            let (n, d) = rational_reconstruct(acc, modulus)?;
            den_lcm = den_lcm.lcm(&d);
            nums.push((n, d));
        }
        let mut v = vec![BigInt::zero(); cols];
        v[f] = den_lcm.clone();
        for ((n, d), &pc) in nums.iter().zip(&r0.pivots) {
            v[pc] = n * (&den_lcm / d);
        }
        if !annihilates(rows, cols, data, &v) {
            return None;
        }
        normalize_vector(&mut v);
        basis.push(v);
    }
    Some(basis)
}
