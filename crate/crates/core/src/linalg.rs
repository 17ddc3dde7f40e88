//! Exact Gaussian elimination over [`Scalar`] and over the rationals.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::scalars::Scalar;

/// Cost of using `c` as a pivot; smaller is cheaper to eliminate with.
fn pivot_cost(c: &Scalar) -> usize {
    c.numerator().coeffs().len() + c.denominator().coeffs().len()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r >= rows.len() {
            break;
        }
        let best = (r..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| pivot_cost(&rows[i][col]));
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows of length `ncols`.
pub fn nullspace(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); ncols];
            v[f] = Scalar::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -&row[f];
            }
            v
        })
        .collect()
}

/// Positive definiteness of a symmetric rational matrix by symmetric elimination.
///
/// Returns the index and value of the first nonpositive pivot on failure.
pub fn positive_definite(m: &[Vec<BigRational>]) -> Result<(), (usize, BigRational)> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    for k in 0..n {
        let p = a[k][k].clone();
        if !p.is_positive() {
            return Err((k, p));
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, q};

    #[test]
    fn rank_and_kernel() {
        let rows = vec![vec![int(1), q(1), int(0)], vec![q(1), q(2), int(0)]];
        assert_eq!(rank(&rows), 1);
        let k = nullspace(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &rows {
                let dot = r.iter().zip(v).fold(Scalar::zero(), |acc, (a, b)| acc + a * b);
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn definiteness() {
        let r = |n: i64| BigRational::from_integer(n.into());
        assert!(positive_definite(&[vec![r(2), r(1)], vec![r(1), r(2)]]).is_ok());
        assert_eq!(positive_definite(&[vec![r(1), r(2)], vec![r(2), r(1)]]), Err((1, r(-3))));
    }
}
