use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::Zero;

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination over big integers.
pub(crate) fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Whether the integer offset vectors are linearly independent, decided by
/// the exact Gram determinant.
pub(crate) fn offsets_independent_exact(offsets: &[Vec<i64>]) -> bool {
    let k = offsets.len();
    let dot = |a: &[i64], b: &[i64]| -> i128 {
        a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
    };
    match k {
        0 => true,
        1 => dot(&offsets[0], &offsets[0]) != 0,
        2 => {
            // |a|^2 |b|^2 - (a.b)^2, each product below 2^126.
            let aa = dot(&offsets[0], &offsets[0]);
            let bb = dot(&offsets[1], &offsets[1]);
            let ab = dot(&offsets[0], &offsets[1]);
            match aa.checked_mul(bb) {
                Some(p) => p - ab * ab != 0,
                None => gram_det_big(offsets) != BigInt::zero(),
            }
        }
        _ => gram_det_big(offsets) != BigInt::zero(),
    }
}

fn gram_det_big(offsets: &[Vec<i64>]) -> BigInt {
    let gram: Vec<Vec<BigInt>> = offsets
        .iter()
        .map(|a| {
            offsets
                .iter()
                .map(|b| {
                    a.iter()
                        .zip(b)
                        .map(|(&x, &y)| BigInt::from(x) * BigInt::from(y))
                        .sum()
                })
                .collect()
        })
        .collect();
    bareiss_determinant(gram)
}

/// Relative-rank test: independent iff every singular value of the offset
/// matrix is at least `rtol` times the largest.
pub(crate) fn offsets_independent_float(offsets: &[Vec<f64>], rtol: f64) -> bool {
    let k = offsets.len();
    if k == 0 {
        return true;
    }
    let d = offsets[0].len();
    if k > d {
        return false;
    }
    let m = DMatrix::from_fn(k, d, |i, j| offsets[i][j]);
    let sv = m.singular_values();
    let max = sv.iter().cloned().fold(0.0f64, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    max > 0.0 && min >= rtol * max
}
