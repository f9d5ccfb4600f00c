//! Dense polynomial arithmetic in the monomial basis and in the shifted
//! basis (x − ξ)^i, plus classical Laguerre / Jacobi evaluation and
//! coefficient generation.
//!
//! The shifted basis is the natural one here: the constructed polynomials
//! are Taylor expansions around the exceptional root ξ, and the moment
//! inner product is diagonal-free only in that basis.

use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
use libm::fabs;

/// Polynomial over the monomial basis; `coeffs[i]` multiplies x^i.
/// Trailing zeros are trimmed; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

fn trim(mut coeffs: Vec<f64>) -> Vec<f64> {
    while coeffs.last() == Some(&0.0) {
        coeffs.pop();
    }
    coeffs
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Polynomial { coeffs: trim(coeffs) }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Polynomial { coeffs: vec![0.0, 1.0] }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of x^i (0 beyond the degree).
    pub fn coeff(&self, i: usize) -> f64 {
        self.coeffs.get(i).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| (i + 1) as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, k: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// deg(remainder) < deg(divisor).
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![0.0; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = rem[i + dd] / lead;
            quot[i] = q;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= q * dc;
            }
        }
        rem.truncate(dd);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Largest absolute coefficient (0 for the zero polynomial).
    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, &c| m.max(fabs(c)))
    }
}

/// Polynomial over the basis (x − center)^i.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedPolynomial {
    pub center: f64,
    coeffs: Vec<f64>,
}

impl ShiftedPolynomial {
    pub fn new(center: f64, coeffs: Vec<f64>) -> Self {
        ShiftedPolynomial {
            center,
            coeffs: trim(coeffs),
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> f64 {
        self.coeffs.get(i).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let d = x - self.center;
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * d + c;
        }
        acc
    }

    /// Expand into the monomial basis (Horner in (x − ξ)).
    ///
    /// The intermediate products grow like |ξ|^degree before cancelling
    /// back down, so the shift is carried in double-double; otherwise a
    /// far-away center costs several digits in the output coefficients.
    pub fn to_monomial(&self) -> Polynomial {
        use crate::dd::{dd_add, dd_mul, Dd};
        let n = self.coeffs.len();
        if n == 0 {
            return Polynomial::zero();
        }
        let neg_c = Dd::from(-self.center);
        let mut out = vec![Dd::ZERO; n];
        for &c in self.coeffs.iter().rev() {
            // out = out * (x - center) + c
            for j in (1..n).rev() {
                out[j] = dd_add(out[j - 1], dd_mul(out[j], neg_c));
            }
            out[0] = dd_add(dd_mul(out[0], neg_c), Dd::from(c));
        }
        Polynomial::new(out.into_iter().map(Dd::to_f64).collect())
    }
}

/// Taylor-shift `p` to the basis (x − xi)^i by repeated synthetic division.
pub fn to_shifted(p: &Polynomial, xi: f64) -> ShiftedPolynomial {
    let mut a = p.coeffs().to_vec();
    let n = a.len();
    if n > 1 {
        for k in 0..n - 1 {
            for j in (k..n - 1).rev() {
                a[j] += xi * a[j + 1];
            }
        }
    }
    ShiftedPolynomial::new(xi, a)
}

/// Classical Laguerre polynomial value L_n^α(x) by the three-term
/// recurrence (n+1) L_{n+1} = (2n+1+α−x) L_n − (n+α) L_{n−1}.
pub fn laguerre_eval(n: usize, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Classical Jacobi polynomial value P_n^{(α,β)}(x) by the standard
/// three-term recurrence.
pub fn jacobi_eval(n: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * x;
    for k in 2..=n {
        let kf = k as f64;
        let ab = alpha + beta;
        let c1 = 2.0 * kf * (kf + ab) * (2.0 * kf + ab - 2.0);
        let c2 = (2.0 * kf + ab - 1.0) * (2.0 * kf + ab) * (2.0 * kf + ab - 2.0);
        let c3 = (2.0 * kf + ab - 1.0) * (alpha * alpha - beta * beta);
        let c4 = 2.0 * (kf + alpha - 1.0) * (kf + beta - 1.0) * (2.0 * kf + ab);
        let next = ((c2 * x + c3) * cur - c4 * prev) / c1;
        prev = cur;
        cur = next;
    }
    cur
}

/// Coefficients of L_n^α as a [`Polynomial`], via the same recurrence
/// carried out on coefficient vectors.
pub fn laguerre_poly(n: usize, alpha: f64) -> Polynomial {
    let mut prev = Polynomial::constant(1.0);
    if n == 0 {
        return prev;
    }
    let mut cur = Polynomial::new(vec![1.0 + alpha, -1.0]);
    for k in 1..n {
        let kf = k as f64;
        let lin = Polynomial::new(vec![2.0 * kf + 1.0 + alpha, -1.0]);
        let next = lin.mul(&cur).sub(&prev.scale(kf + alpha)).scale(1.0 / (kf + 1.0));
        prev = cur;
        cur = next;
    }
    cur
}

/// Coefficients of P_n^{(α,β)} as a [`Polynomial`].
///
/// Fails if a recurrence denominator 2k(k+α+β)(2k+α+β−2) degenerates,
/// which cannot happen for α, β > −1 but can for the extended parameter
/// choices appearing in denominator polynomials.
pub fn jacobi_poly(n: usize, alpha: f64, beta: f64) -> Result<Polynomial> {
    let mut prev = Polynomial::constant(1.0);
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = Polynomial::new(vec![0.5 * (alpha - beta), 0.5 * (alpha + beta + 2.0)]);
    for k in 2..=n {
        let kf = k as f64;
        let ab = alpha + beta;
        let c1 = 2.0 * kf * (kf + ab) * (2.0 * kf + ab - 2.0);
        if fabs(c1) < 1e-12 {
            return Err(Error::Domain {
                what: "degenerate Jacobi recurrence denominator",
                value: c1,
            });
        }
        let c2 = (2.0 * kf + ab - 1.0) * (2.0 * kf + ab) * (2.0 * kf + ab - 2.0);
        let c3 = (2.0 * kf + ab - 1.0) * (alpha * alpha - beta * beta);
        let c4 = 2.0 * (kf + alpha - 1.0) * (kf + beta - 1.0) * (2.0 * kf + ab);
        let lin = Polynomial::new(vec![c3, c2]);
        let next = lin.mul(&cur).sub(&prev.scale(c4)).scale(1.0 / c1);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
