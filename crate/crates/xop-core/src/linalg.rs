//! Small dense linear algebra: LU factorization with partial pivoting,
//! determinants, solves, and a 1-norm condition estimate.
//!
//! Matrix sizes here never exceed about 9×9 (degree + 1 of the highest
//! polynomial the tests construct), so explicit inversion for the condition
//! estimate is perfectly adequate.

use crate::dd::{dd_div, dd_mul, dd_sub, Dd};
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
use libm::fabs;

/// Dense row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut m = Matrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| fabs(self[(i, j)])).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// LU factorization PA = LU with partial pivoting.
pub struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    /// Factor `a`. Fails with a singularity error (carrying a condition
    /// estimate of infinity) when a pivot is exactly zero.
    pub fn factor(a: &Matrix) -> Result<Lu> {
        let n = a.size();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let mut p = k;
            let mut best = fabs(lu[(k, k)]);
            for i in k + 1..n {
                let v = fabs(lu[(i, k)]);
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == 0.0 {
                return Err(Error::SingularMatrix {
                    condition_estimate: f64::INFINITY,
                });
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                let m = lu[(i, k)] / lu[(k, k)];
                lu[(i, k)] = m;
                for j in k + 1..n {
                    lu[(i, j)] -= m * lu[(k, j)];
                }
            }
        }
        Ok(Lu { lu, perm, sign })
    }

    pub fn det(&self) -> f64 {
        let n = self.lu.size();
        let mut d = self.sign;
        for k in 0..n {
            d *= self.lu[(k, k)];
        }
        d
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.size();
        assert_eq!(b.len(), n);
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            for j in 0..i {
                x[i] -= self.lu[(i, j)] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                x[i] -= self.lu[(i, j)] * x[j];
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    /// 1-norm condition number estimate ‖A‖₁·‖A⁻¹‖₁ via the explicit
    /// inverse (fine at these sizes).
    pub fn condition_estimate(&self, a: &Matrix) -> f64 {
        let n = self.lu.size();
        let mut inv_norm: f64 = 0.0;
        let mut e = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            let col = self.solve(&e);
            e[j] = 0.0;
            let s: f64 = col.iter().map(|&v| fabs(v)).sum();
            inv_norm = inv_norm.max(s);
        }
        a.norm_one() * inv_norm
    }
}

impl Lu {
    /// Solve with iterative refinement against the matrix A + A_lo, where
    /// `a_lo` holds entrywise compensations extending the data beyond f64.
    /// Residuals are accumulated in double-double, so the forward error
    /// reaches f64 round-off for any condition number below ~1e15 instead
    /// of degrading as cond·eps.
    pub fn solve_refined(&self, a: &Matrix, a_lo: &Matrix, b: &[f64]) -> Vec<f64> {
        let n = self.lu.size();
        let mut x = self.solve(b);
        for _ in 0..3 {
            let mut r = vec![0.0; n];
            for i in 0..n {
                let mut acc = Dd::from(b[i]);
                for j in 0..n {
                    let entry = Dd {
                        hi: a[(i, j)],
                        lo: a_lo[(i, j)],
                    };
                    acc = dd_sub(acc, dd_mul(entry, Dd::from(x[j])));
                }
                r[i] = acc.to_f64();
            }
            let d = self.solve(&r);
            let mut biggest = 0.0f64;
            let mut scale = 0.0f64;
            for i in 0..n {
                x[i] += d[i];
                biggest = biggest.max(fabs(d[i]));
                scale = scale.max(fabs(x[i]));
            }
            if biggest <= 1e-17 * scale {
                break;
            }
        }
        x
    }
}

/// Determinant by fresh LU; 0.0 for a singular matrix.
pub fn det(a: &Matrix) -> f64 {
    match Lu::factor(a) {
        Ok(lu) => lu.det(),
        Err(_) => 0.0,
    }
}

/// Determinant carried in double-double throughout the elimination, for
/// matrices whose plain-f64 determinant would lose digits to conditioning.
pub fn det_compensated(a: &Matrix) -> f64 {
    det_compensated_with(a, None)
}

/// As `det_compensated`, but seeding each entry with a compensation from
/// `a_lo` when available.
pub fn det_compensated_with(a: &Matrix, a_lo: Option<&Matrix>) -> f64 {
    let n = a.size();
    let mut m: Vec<Dd> = (0..n * n)
        .map(|k| Dd {
            hi: a[(k / n, k % n)],
            lo: a_lo.map(|l| l[(k / n, k % n)]).unwrap_or(0.0),
        })
        .collect();
    let at = |m: &[Dd], i: usize, j: usize| m[i * n + j];
    let mut sign = 1.0;
    for k in 0..n {
        let mut p = k;
        let mut best = fabs(at(&m, k, k).hi);
        for i in k + 1..n {
            let v = fabs(at(&m, i, k).hi);
            if v > best {
                best = v;
                p = i;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if p != k {
            for j in 0..n {
                m.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            let f = dd_div(at(&m, i, k), at(&m, k, k));
            for j in k + 1..n {
                let sub = dd_mul(f, at(&m, k, j));
                m[i * n + j] = dd_sub(at(&m, i, j), sub);
            }
            m[i * n + k] = Dd::ZERO;
        }
    }
    let mut d = Dd::from(sign);
    for k in 0..n {
        d = dd_mul(d, at(&m, k, k));
    }
    d.to_f64()
}
