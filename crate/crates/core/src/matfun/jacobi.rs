//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation annihilates one off-diagonal pair `(p, q)`. For
//! `a_pq = r e^{iφ}` the unitary plane rotation is
//!
//! ```text
//! J_pp = c,  J_pq = s e^{iφ},  J_qp = -s e^{-iφ},  J_qq = c
//! ```
//!
//! with `t = s/c` the smaller root of `t^2 + 2θt - 1 = 0`, `θ = (a_qq - a_pp) / 2r`,
//! which is the real symmetric Jacobi step after absorbing the phase.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 100;
const REL_EPS: f64 = 1e-15;

fn off_norm(a: &DMatrix<Complex64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for j in 0..n {
        for i in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Returns eigenvalues in nondecreasing order and the unitary whose columns
/// are the matching eigenvectors. The input must be Hermitian.
pub fn eigh(matrix: &DMatrix<Complex64>) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
    let n = matrix.nrows();
    let mut a = matrix.clone();
    let mut v = DMatrix::<Complex64>::identity(n, n);
    let frobenius = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();

    let mut sweeps = 0;
    while n > 1 && off_norm(&a) > REL_EPS * frobenius {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NonConvergence {
                sweeps,
                off_norm: off_norm(&a),
                frobenius,
                dim: n,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // skip entries already below round-off of both diagonals
                if sweeps > 4 && r <= f64::EPSILON * 1e-2 * (app.abs().min(aqq.abs())) {
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta.is_finite() {
                    theta.signum() / (theta.abs() + theta.hypot(1.0))
                } else {
                    0.0
                };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                let e = apq / r;
                let se = e * s;
                let sec = e.conj() * s;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * sec;
                    a[(k, q)] = akp * se + akq * c;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * se;
                    a[(q, k)] = apk * sec + aqk * c;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * sec;
                    v[(k, q)] = vkp * se + vkq * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let unitary = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok((eigenvalues, unitary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn two_by_two_complex() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let m = DMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]);
        let (l, u) = eigh(&m).unwrap();
        assert!((l[0] - 1.0).abs() < 1e-14 && (l[1] - 3.0).abs() < 1e-14);
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(2, l.iter().map(|&x| c(x, 0.0))));
        let back = &u * d * u.adjoint();
        assert!((back - m).iter().all(|z| z.norm() < 1e-14));
    }

    #[test]
    fn zero_and_scalar_matrices() {
        let (l, u) = eigh(&DMatrix::zeros(3, 3)).unwrap();
        assert_eq!(l, vec![0.0; 3]);
        assert_eq!(u, DMatrix::identity(3, 3));
        let (l, _) = eigh(&DMatrix::from_element(1, 1, c(-4.0, 0.0))).unwrap();
        assert_eq!(l, vec![-4.0]);
    }
}
