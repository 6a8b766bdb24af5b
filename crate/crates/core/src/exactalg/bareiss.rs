//! Fraction-free elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Rank of an integer matrix by Bareiss elimination.
///
/// Every intermediate entry is a minor of the input, so the exact division
/// by the previous pivot never leaves a remainder.
pub fn rank(rows: usize, cols: usize, data: &[BigInt]) -> usize {
    let mut a: Vec<Vec<BigInt>> = data
        .chunks(cols.max(1))
        .take(rows)
        .map(|r| r.to_vec())
        .collect();
    if cols == 0 {
        return 0;
    }
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(pr, r);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let lead = row[c].clone();
            for k in c + 1..cols {
                let v = pivot * &row[k] - &lead * &pivot_row[k];
                row[k] = if prev.is_one() { v } else { v / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
        r += 1;
    }
    r
}

/// Integer right-kernel basis by fraction-free Gauss-Jordan elimination.
///
/// Rows are divided by their content after each update, which keeps entry
/// sizes bounded without leaving the integers. Each returned vector has
/// content 1 and a positive leading nonzero entry.
pub fn kernel(rows: usize, cols: usize, data: &[BigInt]) -> Vec<Vec<BigInt>> {
    if cols == 0 {
        return Vec::new();
    }
    let mut a: Vec<Vec<BigInt>> = data.chunks(cols).take(rows).map(|r| r.to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(pr) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(pr, r);
        make_primitive(&mut a[r]);
        let pivot_row = a[r].clone();
        let pivot = pivot_row[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = pivot.gcd(&row[c]);
            let s = &pivot / &g;
            let t = &row[c] / &g;
            for k in 0..cols {
                if pivot_row[k].is_zero() {
                    row[k] = &row[k] * &s;
                } else {
                    row[k] = &row[k] * &s - &t * &pivot_row[k];
                }
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        // v_f = L, v_{pivot_i} = -L * a[i][f] / a[i][pivot_i]
        let mut l = BigInt::one();
        for (i, &pc) in pivots.iter().enumerate() {
            if !a[i][f].is_zero() {
                l = l.lcm(&a[i][pc]);
            }
        }
        let mut v = vec![BigInt::zero(); cols];
        v[f] = l.clone();
        for (i, &pc) in pivots.iter().enumerate() {
            if !a[i][f].is_zero() {
                v[pc] = -(&l * &a[i][f]) / &a[i][pc];
            }
        }
        normalize_vector(&mut v);
        basis.push(v);
    }
    basis
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x = &*x / &g;
    }
}

/// Divide out the content and make the leading nonzero entry positive.
pub fn normalize_vector(v: &mut [BigInt]) {
    make_primitive(v);
    if let Some(lead) = v.iter().find(|x| !x.is_zero()) {
        if lead.is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
}
