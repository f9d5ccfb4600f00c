//! Adjusted moments μ̃_k = ∫_I (x − ξ)^k Ŵ(x) dx.
//!
//! Three independent sources are implemented and cross-checked:
//! closed-form initial values (incomplete gamma / Appell F₁), the
//! three-term recursion implied by the Pearson equation of the weight,
//! and direct quadrature of the defining integral. Quadrature is the
//! adjudicating oracle whenever the other two disagree.

use crate::dd::{dd_add, dd_div, dd_mul, dd_sub, Dd};
use crate::family::{FamilyDescriptor, FamilyKind};
use crate::quadrature::{integrate, Domain, QuadratureSpec};
use crate::specfun::{appell_f1, gamma, upper_incomplete_gamma};
use crate::{Error, Result};
use alloc::vec::Vec;
use libm::{exp, fabs, pow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentSource {
    InitialClosedForm,
    Recursion,
    Quadrature,
}

impl MomentSource {
    pub fn name(&self) -> &'static str {
        match self {
            MomentSource::InitialClosedForm => "initial-closed-form",
            MomentSource::Recursion => "recursion",
            MomentSource::Quadrature => "quadrature",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct MomentEntry {
    pub value: f64,
    pub source: MomentSource,
    /// Achieved-error estimate; only present for quadrature entries.
    pub error_estimate: Option<f64>,
}

/// μ̃₀ .. μ̃_N for one family.
///
/// Besides the f64 values, the table keeps round-off compensations from the
/// double-double recursion. The moment matrices are sensitive to
/// *incoherent* perturbations of the entries (independent 1-ulp rounding of
/// each moment shifts the solved polynomial by ~1e-8 at degree 6 for the
/// worst parameters) but almost completely insensitive to coherent ones,
/// so keeping the entries mutually consistent to ~1e-32 and feeding the
/// compensations into the solve recovers full f64 accuracy.
#[derive(Debug, Clone)]
pub struct MomentTable {
    entries: Vec<MomentEntry>,
    los: Vec<f64>,
}

impl MomentTable {
    pub fn entries(&self) -> &[MomentEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn value(&self, k: usize) -> Option<f64> {
        self.entries.get(k).map(|e| e.value)
    }

    pub(crate) fn value_dd(&self, k: usize) -> Option<Dd> {
        self.entries.get(k).map(|e| Dd {
            hi: e.value,
            lo: self.los.get(k).copied().unwrap_or(0.0),
        })
    }

    /// The inner product ⟨(x−ξ)^i, (x−ξ)^j⟩_Ŵ = μ̃_{i+j}.
    pub fn inner_product_power(&self, i: usize, j: usize) -> Option<f64> {
        self.value(i + j)
    }
}

/// Closed-form (μ̃₀, μ̃₁).
///
/// Laguerre I/II: μ̃₁ = e^α α^α Γ(1+α) Γ(−α, α) and μ̃₀ = Γ(α) − 2μ̃₁.
/// Laguerre III: μ̃₀ = −Γ(α+1)/α and μ̃₁ = e^{−α}(−α)^α Γ(1+α) Γ(−α, −α).
/// Jacobi: μ̃₁ = (4/(β−α))(J₁+J₂) with J₁, J₂ via Appell F₁; μ̃₀ follows
/// from μ̃₁ and the closed form of μ̃₂ through the k = 1 recursion identity
/// (the direct closed form is intentionally avoided; see `generate_moments`).
pub fn initial_moments(family: &FamilyDescriptor) -> Result<(f64, f64)> {
    let (mu0, mu1) = initial_moments_dd(family)?;
    Ok((mu0.to_f64(), mu1.to_f64()))
}

/// Same, but with μ̃₀ carried in double-double so that it stays coherent
/// with μ̃₁ through the identities that define it (see `MomentTable`).
fn initial_moments_dd(family: &FamilyDescriptor) -> Result<(Dd, Dd)> {
    let a = family.alpha;
    match family.kind {
        FamilyKind::LaguerreI | FamilyKind::LaguerreII => {
            let mu1 = exp(a) * pow(a, a) * gamma(1.0 + a)? * upper_incomplete_gamma(-a, a)?;
            let mu0 = dd_sub(
                Dd::from(gamma(a)?),
                dd_mul(Dd::from(2.0), Dd::from(mu1)),
            );
            Ok((mu0, Dd::from(mu1)))
        }
        FamilyKind::LaguerreIII => {
            let mu0 = dd_div(Dd::from(-gamma(a + 1.0)?), Dd::from(a));
            let mu1 =
                exp(-a) * pow(-a, a) * gamma(1.0 + a)? * upper_incomplete_gamma(-a, -a)?;
            Ok((mu0, Dd::from(mu1)))
        }
        FamilyKind::Jacobi => {
            let b = family.beta.unwrap();
            let j1 = -1.0 / ((a + 1.0) * (a + b))
                * appell_f1(1.0, -b, 1.0, a + 2.0, -1.0, (b - a) / (a + b))?;
            let j2 = -1.0 / ((b + 1.0) * (a + b))
                * appell_f1(1.0, -a, 1.0, b + 2.0, -1.0, (a - b) / (a + b))?;
            let mu1 = 4.0 / (b - a) * (j1 + j2);
            let mu2 = jacobi_mu2_closed_form(a, b)?;
            // Invert the k = 1 identity
            // (r2+s1) mu2 + (r1+s0) mu1 + (r0+s-1) mu0 = 0 for mu0.
            let r = family.r;
            let sp = family.s_pearson;
            let denom = r[0] + sp[0];
            if fabs(denom) < 1e-12 {
                return Err(Error::VanishingLeadingCoefficient { k: 1 });
            }
            let num = dd_add(
                dd_mul(Dd::from(r[2] + sp[2]), Dd::from(mu2)),
                dd_mul(Dd::from(r[1] + sp[1]), Dd::from(mu1)),
            );
            let mu0 = dd_div(Dd { hi: -num.hi, lo: -num.lo }, Dd::from(denom));
            Ok((mu0, Dd::from(mu1)))
        }
    }
}

/// Closed form of the Jacobi second adjusted moment,
/// μ̃₂ = 2^{α+β+1} · 4Γ(α+1)Γ(β+1) / ((β−α)² Γ(α+β+2)).
pub fn jacobi_mu2_closed_form(alpha: f64, beta: f64) -> Result<f64> {
    Ok(pow(2.0, alpha + beta + 1.0) * 4.0 * gamma(alpha + 1.0)? * gamma(beta + 1.0)?
        / ((beta - alpha) * (beta - alpha) * gamma(alpha + beta + 2.0)?))
}

/// Generate μ̃₀ .. μ̃_N: initial values from closed forms, the rest from
/// the recursion (k·r₂ + s₁) μ̃_{k+1} = −(k·r₀ + s₋₁) μ̃_{k−1} − (k·r₁ + s₀) μ̃_k.
pub fn generate_moments(family: &FamilyDescriptor, n: usize) -> Result<MomentTable> {
    if n < 2 {
        return Err(Error::Domain {
            what: "moment generation needs N >= 2",
            value: n as f64,
        });
    }
    let (mu0, mu1) = initial_moments_dd(family)?;
    let mut vals: Vec<Dd> = Vec::with_capacity(n + 1);
    vals.push(mu0);
    vals.push(mu1);
    let r = family.r;
    let sp = family.s_pearson;
    // The recursion runs in double-double: what the downstream linear
    // systems cannot tolerate is each moment being rounded independently.
    for k in 1..n {
        let kf = k as f64;
        let lead = dd_add(dd_mul(Dd::from(kf), Dd::from(r[2])), Dd::from(sp[2]));
        if fabs(lead.hi) < 1e-12 {
            return Err(Error::VanishingLeadingCoefficient { k });
        }
        let ca = dd_add(dd_mul(Dd::from(kf), Dd::from(r[0])), Dd::from(sp[0]));
        let cb = dd_add(dd_mul(Dd::from(kf), Dd::from(r[1])), Dd::from(sp[1]));
        let num = dd_add(dd_mul(ca, vals[k - 1]), dd_mul(cb, vals[k]));
        let next = dd_div(Dd { hi: -num.hi, lo: -num.lo }, lead);
        if !next.hi.is_finite() {
            return Err(Error::Domain {
                what: "moment recursion overflowed",
                value: kf,
            });
        }
        vals.push(next);
    }
    let entries = vals
        .iter()
        .enumerate()
        .map(|(k, v)| MomentEntry {
            value: v.hi,
            source: if k < 2 {
                MomentSource::InitialClosedForm
            } else {
                MomentSource::Recursion
            },
            error_estimate: None,
        })
        .collect();
    let los = vals.iter().map(|v| v.lo).collect();
    Ok(MomentTable { entries, los })
}

/// μ̃_k by direct quadrature of the defining integral; the adjudicating
/// oracle for every closed-form / recursion discrepancy.
pub fn moment_by_quadrature(family: &FamilyDescriptor, k: usize) -> Result<(f64, f64)> {
    moment_by_quadrature_with(family, k, &QuadratureSpec::default())
}

pub fn moment_by_quadrature_with(
    family: &FamilyDescriptor,
    k: usize,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    let xi = family.xi;
    weighted_integral_with(
        family,
        |x| {
            let d = x - xi;
            let mut m = 1.0;
            for _ in 0..k {
                m *= d;
            }
            m
        },
        spec,
    )
}

/// ∫_I g(x) Ŵ(x) dx with the weight's singular endpoint factors computed
/// from exact endpoint distances (needed for Jacobi exponents in (−1, 0);
/// on the half line the rational node transform already yields exact small
/// abscissas, so the plain weight evaluator is accurate there).
pub fn weighted_integral_with<G: Fn(f64) -> f64>(
    family: &FamilyDescriptor,
    g: G,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    let q = match family.kind {
        FamilyKind::Jacobi => {
            let beta = family.beta.unwrap();
            let alpha = family.alpha;
            let eta = family.eta.clone();
            crate::quadrature::integrate_with_distances(
                |x, ra, rb| {
                    let e = eta.eval(x);
                    g(x) * pow(rb, alpha) * pow(ra, beta) / (e * e)
                },
                -1.0,
                1.0,
                spec,
            )?
        }
        _ => integrate(|x| g(x) * family.weight(x), family.domain(), spec)?,
    };
    Ok((q.value, q.error_estimate))
}

/// Multi-index adjusted moment ∫_I (x−ξ₁)^{l₁} (x−ξ₂)^{l₂} Ŵ(x) dx for a
/// caller-supplied weight (the codimension-two generalization).
pub fn x2_moment_quadrature<W: Fn(f64) -> f64>(
    weight: W,
    xi1: f64,
    xi2: f64,
    l1: usize,
    l2: usize,
    domain: Domain,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let q = integrate(
        |x| {
            let mut m = 1.0;
            for _ in 0..l1 {
                m *= x - xi1;
            }
            for _ in 0..l2 {
                m *= x - xi2;
            }
            m * weight(x)
        },
        domain,
        spec,
    )?;
    Ok(q.value)
}
