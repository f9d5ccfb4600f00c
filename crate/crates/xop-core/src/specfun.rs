//! Gamma-family special functions and the Appell F₁ integral.
//!
//! These are exactly the closed forms that appear in the initial adjusted
//! moments: Γ(x), the upper incomplete Γ(a, x) including negative `a`,
//! the generalized exponential integral E_a(x), and the one-dimensional
//! integral representation of Appell's F₁.

use crate::quadrature::{integrate, Domain, QuadratureSpec};
use crate::{Error, Result};
use libm::{exp, fabs, floor, log, pow, sin, sqrt};

// Lanczos approximation, g = 607/128, 15 coefficients (Godfrey's set);
// relative error around 1e-15 over the real line away from poles.
const LANCZOS_G: f64 = 4.7421875;
const LANCZOS: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    3.3994649984811888699e-5,
    4.6523628927048575665e-5,
    -9.8374475304879564677e-5,
    1.5808870322491248884e-4,
    -2.1026444172410488319e-4,
    2.1743961811521264320e-4,
    -1.6431810653676389022e-4,
    8.4418223983852743293e-5,
    -2.6190838401581408670e-5,
    3.6899182659531622704e-6,
];

fn is_non_positive_integer(x: f64) -> bool {
    x <= 0.0 && x == floor(x)
}

/// Γ(x) for real x away from the poles at 0, −1, −2, …
pub fn gamma(x: f64) -> Result<f64> {
    if is_non_positive_integer(x) {
        return Err(Error::GammaPole { x });
    }
    if x < 0.5 {
        // Reflection: Γ(x) Γ(1−x) = π / sin(πx).
        let s = sin(core::f64::consts::PI * x);
        return Ok(core::f64::consts::PI / (s * gamma(1.0 - x)?));
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok(sqrt(2.0 * core::f64::consts::PI) * pow(t, z + 0.5) * exp(-t) * acc)
}

/// Upper incomplete gamma Γ(a, x) = ∫_x^∞ t^{a−1} e^{−t} dt, x > 0.
///
/// Any real `a` is accepted. For a > 0 the classical series / continued
/// fraction pair is used; for a ≤ 0 the defining integral is evaluated by
/// quadrature directly (always convergent for x > 0), so no recurrence
/// from positive `a` is involved.
pub fn upper_incomplete_gamma(a: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            what: "upper incomplete gamma requires x > 0",
            value: x,
        });
    }
    if a > 0.0 {
        if x < a + 1.0 {
            Ok(gamma(a)? - lower_gamma_series(a, x))
        } else {
            Ok(upper_gamma_cf(a, x))
        }
    } else {
        let spec = QuadratureSpec::default();
        let q = integrate(|t| pow(t, a - 1.0) * exp(-t), Domain::HalfLine(x), &spec)?;
        Ok(q.value)
    }
}

/// Lower incomplete gamma γ(a, x) by its power series; a > 0, x < a + 1.
fn lower_gamma_series(a: f64, x: f64) -> f64 {
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut n = 1.0;
    while fabs(term) > 1e-17 * fabs(sum) {
        term *= x / (a + n);
        sum += term;
        n += 1.0;
        if n > 500.0 {
            break;
        }
    }
    sum * pow(x, a) * exp(-x)
}

/// Γ(a, x) by the Legendre continued fraction (modified Lentz); x ≥ a + 1.
fn upper_gamma_cf(a: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    let mut i = 1.0;
    loop {
        let an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if fabs(d) < TINY {
            d = TINY;
        }
        c = b + an / c;
        if fabs(c) < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if fabs(delta - 1.0) < 1e-16 || i > 500.0 {
            break;
        }
        i += 1.0;
    }
    exp(-x + a * log(x)) * h
}

/// Generalized exponential integral E_a(x) = ∫_1^∞ e^{−xt} t^{−a} dt, x > 0.
pub fn exp_integral_ea(a: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            what: "exponential integral requires x > 0",
            value: x,
        });
    }
    let spec = QuadratureSpec::default();
    let q = integrate(|t| exp(-x * t) * pow(t, -a), Domain::HalfLine(1.0), &spec)?;
    Ok(q.value)
}

/// Appell F₁(a; b1, b2; c; x, y) through its one-dimensional integral
/// representation, valid for c > a > 0 and x, y < 1:
///
/// F₁ = Γ(c)/(Γ(a)Γ(c−a)) ∫₀¹ t^{a−1}(1−t)^{c−a−1}(1−xt)^{−b1}(1−yt)^{−b2} dt.
pub fn appell_f1(a: f64, b1: f64, b2: f64, c: f64, x: f64, y: f64) -> Result<f64> {
    if a <= 0.0 {
        return Err(Error::ParameterRestriction {
            what: "appell_f1 requires a > 0",
        });
    }
    if c <= a {
        return Err(Error::ParameterRestriction {
            what: "appell_f1 requires c > a",
        });
    }
    if x >= 1.0 {
        return Err(Error::Domain {
            what: "appell_f1 requires x < 1",
            value: x,
        });
    }
    if y >= 1.0 {
        return Err(Error::Domain {
            what: "appell_f1 requires y < 1",
            value: y,
        });
    }
    let prefactor = gamma(c)? / (gamma(a)? * gamma(c - a)?);
    let spec = QuadratureSpec::default();
    // t^{a-1} and (1-t)^{c-a-1} may be singular at the endpoints; the
    // distance-aware driver supplies t and 1-t without cancellation.
    let q = crate::quadrature::integrate_with_distances(
        |t, ra, rb| {
            pow(ra, a - 1.0) * pow(rb, c - a - 1.0) * pow(1.0 - x * t, -b1) * pow(1.0 - y * t, -b2)
        },
        0.0,
        1.0,
        &spec,
    )?;
    Ok(prefactor * q.value)
}
