//! The four X₁ family descriptors: Laguerre types I, II, III and Jacobi.
//!
//! A descriptor bundles everything the construction needs: the classical
//! second-order coefficients (p, q), the degree-one denominator η with its
//! root ξ, the linear gauge polynomial s, the factorization gauge b, the
//! weight, the orthogonality interval, the moment-recursion coefficients
//! derived from the Pearson equation, and the Taylor coefficients of the
//! degree-one member.
//!
//! Sign convention: Laguerre families use p(x) = −x, q(x) = x − α − 1;
//! Jacobi uses p(x) = 1 − x², q(x) = β − α − (α+β+2)x.

use crate::poly::{to_shifted, Polynomial};
use crate::quadrature::Domain;
use crate::specfun::gamma;
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
use libm::{exp, pow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    LaguerreI,
    LaguerreII,
    LaguerreIII,
    Jacobi,
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::LaguerreI => "laguerre-1",
            FamilyKind::LaguerreII => "laguerre-2",
            FamilyKind::LaguerreIII => "laguerre-3",
            FamilyKind::Jacobi => "jacobi",
        }
    }
}

/// Open orthogonality interval; `upper` may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone)]
pub struct FamilyDescriptor {
    pub kind: FamilyKind,
    pub alpha: f64,
    /// Second parameter; only present for Jacobi.
    pub beta: Option<f64>,
    /// Leading classical coefficient.
    pub p: Polynomial,
    /// First-order classical coefficient (equals p′ + p·N′/N for the weight
    /// numerator N; used to derive the Pearson recursion data).
    pub q: Polynomial,
    /// Degree-one denominator polynomial; its square divides the weight.
    pub eta: Polynomial,
    /// Linear gauge polynomial of the natural operator.
    pub s: Polynomial,
    /// Factorization gauge (classical-parameter form, expressed through
    /// this family's parameters).
    pub b: Polynomial,
    /// Root of η; the expansion center of every constructed polynomial.
    pub xi: f64,
    pub interval: Interval,
    /// Taylor coefficients (c_{1,0}, c_{1,1}) of the degree-one member
    /// around ξ (for Type III: of the constant member).
    pub c1: (f64, f64),
    /// a₂ = r₀ + r₁(x−ξ) + r₂(x−ξ)² — the shifted expansion of p.
    pub r: [f64; 3],
    /// Laurent data of a₁ around ξ: [s₋₁, s₀, s₁] with
    /// a₁ = s₋₁/(x−ξ) + s₀ + s₁(x−ξ).
    pub s_pearson: [f64; 3],
}

/// Coefficients of the natural operator
/// T[y] = p y″ + (p′/2 + s − 2pη′/η) y′ + ((p′/2 − s) η′/η) y
/// with first- and zero-order parts given as (numerator, denominator) pairs
/// over the common denominator η.
#[derive(Debug, Clone)]
pub struct NaturalOperatorCoeffs {
    pub order2: Polynomial,
    pub order1: (Polynomial, Polynomial),
    pub order0: (Polynomial, Polynomial),
}

/// Build a family descriptor, validating the parameter domain.
pub fn make_family(kind: FamilyKind, alpha: f64, beta: Option<f64>) -> Result<FamilyDescriptor> {
    if !alpha.is_finite() {
        return Err(Error::ParameterDomain {
            what: "alpha must be finite",
        });
    }
    match kind {
        FamilyKind::LaguerreI | FamilyKind::LaguerreII => {
            if !(alpha > 0.0) {
                return Err(Error::ParameterDomain {
                    what: "Laguerre types I and II require alpha > 0",
                });
            }
        }
        FamilyKind::LaguerreIII => {
            if !(alpha > -1.0 && alpha < 0.0) {
                return Err(Error::ParameterDomain {
                    what: "Laguerre type III requires -1 < alpha < 0",
                });
            }
        }
        FamilyKind::Jacobi => {}
    }
    if kind == FamilyKind::Jacobi {
        let beta = beta.ok_or(Error::ParameterDomain {
            what: "Jacobi requires beta",
        })?;
        if !beta.is_finite() {
            return Err(Error::ParameterDomain {
                what: "beta must be finite",
            });
        }
        if !(alpha > -1.0 && beta > -1.0) {
            return Err(Error::ParameterDomain {
                what: "Jacobi requires alpha > -1 and beta > -1",
            });
        }
        if alpha == beta {
            return Err(Error::ParameterDomain {
                what: "Jacobi requires alpha != beta",
            });
        }
        if !(alpha * beta > 0.0) {
            return Err(Error::ParameterDomain {
                what: "Jacobi requires alpha and beta of equal sign",
            });
        }
    } else if beta.is_some() {
        return Err(Error::ParameterDomain {
            what: "beta is only accepted for Jacobi",
        });
    }

    let (p, q, eta, s, b, xi, interval, c1) = match kind {
        FamilyKind::LaguerreI => (
            Polynomial::new(vec![0.0, -1.0]),
            Polynomial::new(vec![-alpha - 1.0, 1.0]),
            Polynomial::new(vec![alpha, 1.0]),
            Polynomial::new(vec![-alpha - 0.5, 1.0]),
            // b = L1^{alpha-1}(-x) = x + alpha (coincides with eta).
            Polynomial::new(vec![alpha, 1.0]),
            -alpha,
            Interval {
                lower: 0.0,
                upper: f64::INFINITY,
            },
            (1.0, 1.0),
        ),
        FamilyKind::LaguerreII => (
            Polynomial::new(vec![0.0, -1.0]),
            Polynomial::new(vec![-alpha - 1.0, 1.0]),
            Polynomial::new(vec![-alpha, -1.0]),
            Polynomial::new(vec![-alpha - 0.5, 1.0]),
            // b = x L1^{-(alpha+1)}(x) = x(-alpha - x).
            Polynomial::new(vec![0.0, -alpha, -1.0]),
            -alpha,
            Interval {
                lower: 0.0,
                upper: f64::INFINITY,
            },
            (1.0, 1.0),
        ),
        FamilyKind::LaguerreIII => (
            Polynomial::new(vec![0.0, -1.0]),
            Polynomial::new(vec![-alpha - 1.0, 1.0]),
            Polynomial::new(vec![-alpha, 1.0]),
            Polynomial::new(vec![-alpha - 0.5, 1.0]),
            // b = x L1^{-(alpha+1)}(-x) = x(x - alpha).
            Polynomial::new(vec![0.0, -alpha, 1.0]),
            alpha,
            Interval {
                lower: 0.0,
                upper: f64::INFINITY,
            },
            (1.0, 0.0),
        ),
        FamilyKind::Jacobi => {
            let beta = beta.unwrap();
            let xi = (alpha + beta) / (beta - alpha);
            (
                Polynomial::new(vec![1.0, 0.0, -1.0]),
                Polynomial::new(vec![beta - alpha, -(alpha + beta + 2.0)]),
                // eta = P1^{(-alpha-1, beta-1)} = ((beta-alpha)x - (alpha+beta))/2
                Polynomial::new(vec![-(alpha + beta) / 2.0, (beta - alpha) / 2.0]),
                Polynomial::new(vec![beta - alpha, -(alpha + beta + 1.0)]),
                // b = (1-x) eta
                Polynomial::new(vec![1.0, -1.0]).mul(&Polynomial::new(vec![
                    -(alpha + beta) / 2.0,
                    (beta - alpha) / 2.0,
                ])),
                xi,
                Interval {
                    lower: -1.0,
                    upper: 1.0,
                },
                (1.0 / (beta - alpha), -0.5),
            )
        }
    };

    // Pearson data: a2 = p expanded around xi; a1 = q - 2p/(x-xi) has a
    // simple pole at xi with Laurent coefficients
    //   s_{-1} = -2 r0,  s_0 = q(xi) - 2 r1,  s_1 = q' - 2 r2.
    let p_shifted = to_shifted(&p, xi);
    let r = [p_shifted.coeff(0), p_shifted.coeff(1), p_shifted.coeff(2)];
    let s_pearson = [
        -2.0 * r[0],
        q.eval(xi) - 2.0 * r[1],
        q.coeff(1) - 2.0 * r[2],
    ];

    Ok(FamilyDescriptor {
        kind,
        alpha,
        beta,
        p,
        q,
        eta,
        s,
        b,
        xi,
        interval,
        c1,
        r,
        s_pearson,
    })
}

impl FamilyDescriptor {
    /// Weight Ŵ(x) on the interior of the interval.
    pub fn weight(&self, x: f64) -> f64 {
        match self.kind {
            FamilyKind::LaguerreI | FamilyKind::LaguerreII | FamilyKind::LaguerreIII => {
                let e = self.eta.eval(x);
                pow(x, self.alpha) * exp(-x) / (e * e)
            }
            FamilyKind::Jacobi => {
                // eta is half the weight's denominator polynomial, so
                // dividing by eta^2 supplies the factor 4.
                let beta = self.beta.unwrap();
                let e = self.eta.eval(x);
                pow(1.0 - x, self.alpha) * pow(1.0 + x, beta) / (e * e)
            }
        }
    }

    pub fn domain(&self) -> Domain {
        if self.interval.upper.is_finite() {
            Domain::Finite(self.interval.lower, self.interval.upper)
        } else {
            Domain::HalfLine(self.interval.lower)
        }
    }

    /// The skipped degree of the family's polynomial sequence.
    pub fn excluded_degree(&self) -> usize {
        match self.kind {
            FamilyKind::LaguerreIII => 1,
            _ => 0,
        }
    }

    pub fn is_admissible(&self, n: usize) -> bool {
        n != self.excluded_degree()
    }

    pub fn admissible_degrees(&self, max_n: usize) -> Vec<usize> {
        (0..=max_n).filter(|&n| self.is_admissible(n)).collect()
    }

    /// First-row scalars of the moment matrix: the exceptional condition at
    /// ξ reads e₁·y′(ξ) − e₀·y(ξ) = 0 with
    /// e₀ = p(ξ)η″(ξ) + p′(ξ)η′(ξ)/2 − s(ξ)η′(ξ) and e₁ = 2p(ξ)η′(ξ).
    pub fn e0(&self) -> f64 {
        let etap = self.eta.coeff(1);
        // deg eta = 1, so the eta'' term vanishes.
        (self.p.derivative().eval(self.xi) / 2.0 - self.s.eval(self.xi)) * etap
    }

    pub fn e1(&self) -> f64 {
        2.0 * self.p.eval(self.xi) * self.eta.coeff(1)
    }

    /// Squared norm K_n of the degree-n member.
    pub fn norm_kn(&self, n: usize) -> Result<f64> {
        if !self.is_admissible(n) {
            return Err(Error::InadmissibleDegree { n });
        }
        let a = self.alpha;
        let nf = n as f64;
        let fact = |k: usize| -> f64 {
            let mut v = 1.0;
            for i in 1..=k {
                v *= i as f64;
            }
            v
        };
        match self.kind {
            FamilyKind::LaguerreI => Ok((a + nf) * gamma(a + nf - 1.0)? / fact(n - 1)),
            FamilyKind::LaguerreII => Ok((a + nf - 1.0) * gamma(a + nf + 1.0)? / fact(n - 1)),
            FamilyKind::LaguerreIII => {
                if n == 0 {
                    Ok(gamma(a + 1.0)? * gamma(-a)? / gamma(1.0 - a)?)
                } else {
                    Ok(nf * gamma(nf + a)? / fact(n - 2))
                }
            }
            FamilyKind::Jacobi => {
                let b = self.beta.unwrap();
                Ok(pow(2.0, a + b + 1.0) * (a + nf) * (b + nf) * gamma(a + nf)? * gamma(b + nf)?
                    / (4.0
                        * (a + nf - 1.0)
                        * (b + nf - 1.0)
                        * (a + b + 2.0 * nf - 1.0)
                        * gamma(nf)?
                        * gamma(a + b + nf)?))
            }
        }
    }

    /// Natural-operator coefficients over the common denominator η.
    pub fn natural_operator_coeffs(&self) -> NaturalOperatorCoeffs {
        let pp = self.p.derivative();
        let etap = self.eta.derivative();
        // order1 = (p'/2 + s) - 2p eta'/eta  ->  ((p'/2 + s) eta - 2p eta') / eta
        let order1_num = pp
            .scale(0.5)
            .add(&self.s)
            .mul(&self.eta)
            .sub(&self.p.mul(&etap).scale(2.0));
        // order0 = (p'/2 - s) eta'/eta  (eta'' = 0)
        let order0_num = pp.scale(0.5).sub(&self.s).mul(&etap);
        NaturalOperatorCoeffs {
            order2: self.p.clone(),
            order1: (order1_num, self.eta.clone()),
            order0: (order0_num, self.eta.clone()),
        }
    }

    /// Recompute s from the factorization data (pre-shift η̃, gauge b and
    /// classical q at classical parameters) via
    /// s = q + p′/2 + 2p(η̃′/η̃ − b′/b), simplified as a rational function.
    /// The classical parameters are expressed through this family's, so the
    /// result lands directly in post-shift form and must match the stored s.
    pub fn s_via_factorization(&self) -> Result<Polynomial> {
        let a = self.alpha;
        let (p, q_cls, eta_pre, b) = match self.kind {
            FamilyKind::LaguerreI => {
                // classical parameter a-1; eta_pre = b = L1^{a-1}(-x) = x+a
                let ac = a - 1.0;
                (
                    Polynomial::new(vec![0.0, -1.0]),
                    Polynomial::new(vec![-ac - 1.0, 1.0]),
                    Polynomial::new(vec![ac + 1.0, 1.0]),
                    Polynomial::new(vec![ac + 1.0, 1.0]),
                )
            }
            FamilyKind::LaguerreII => {
                // classical parameter a+1; eta_pre = L1^{-(a+1)}(x) = -a-x
                let ac = a + 1.0;
                let eta_pre = Polynomial::new(vec![1.0 - ac, -1.0]);
                let b = Polynomial::x().mul(&eta_pre);
                (
                    Polynomial::new(vec![0.0, -1.0]),
                    Polynomial::new(vec![-ac - 1.0, 1.0]),
                    eta_pre,
                    b,
                )
            }
            FamilyKind::LaguerreIII => {
                // classical parameter a+1; eta_pre = L1^{-(a+1)}(-x) = x-a
                let ac = a + 1.0;
                let eta_pre = Polynomial::new(vec![1.0 - ac, 1.0]);
                let b = Polynomial::x().mul(&eta_pre);
                (
                    Polynomial::new(vec![0.0, -1.0]),
                    Polynomial::new(vec![-ac - 1.0, 1.0]),
                    eta_pre,
                    b,
                )
            }
            FamilyKind::Jacobi => {
                // classical parameters (a+1, beta-1)
                let beta = self.beta.unwrap();
                let (ac, bc) = (a + 1.0, beta - 1.0);
                let eta_pre =
                    Polynomial::new(vec![-(ac + bc) / 2.0, (bc - ac + 2.0) / 2.0]);
                let b = Polynomial::new(vec![1.0, -1.0]).mul(&eta_pre);
                (
                    Polynomial::new(vec![1.0, 0.0, -1.0]),
                    Polynomial::new(vec![bc - ac, -(ac + bc + 2.0)]),
                    eta_pre,
                    b,
                )
            }
        };
        let pp = p.derivative();
        // numerator = (q + p'/2) eta b + 2p (eta' b - b' eta); denominator = eta b
        let den = eta_pre.mul(&b);
        let cross = eta_pre
            .derivative()
            .mul(&b)
            .sub(&b.derivative().mul(&eta_pre));
        let num = q_cls.add(&pp.scale(0.5)).mul(&den).add(&p.mul(&cross).scale(2.0));
        let (quot, rem) = num.div_rem(&den)?;
        let scale = num.max_norm().max(1.0);
        if rem.max_norm() > 1e-10 * scale {
            return Err(Error::NonPolynomialResult {
                remainder_norm: rem.max_norm() / scale,
            });
        }
        Ok(quot)
    }
}
