//! Exact rank and kernel computations over ℚ.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<BigRational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = BigRational::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
    rank(&m)
}

/// Whether `v` lies in the row span of `rows`.
pub fn in_span(rows: &[Vec<i64>], v: &[i64]) -> bool {
    let r = rank_i64(rows);
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    rank_i64(&ext) == r
}

/// Scales a nonzero rational vector to the primitive integer vector with the same direction.
pub fn primitive_integer(v: &[BigRational]) -> Vec<i64> {
    let mut lcm = num_bigint::BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut g = num_bigint::BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return vec![0; v.len()];
    }
    ints.iter()
        .map(|x| {
            let q = x / &g;
            i64::try_from(q).expect("normal vector fits in i64")
        })
        .collect()
}

pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x)).abs()
}

pub fn is_positive_vec(v: &[i64]) -> bool {
    v.iter().all(|x| x.is_positive())
}
