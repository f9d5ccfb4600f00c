//! Cross-checks of the entire construction against independent numerics.
//!
//! Every structural claim the construction rests on is re-verified here:
//! membership of the flag elements in the operator's invariant subspace
//! (the exceptional condition), the eigenfunction property under the
//! natural-gauge operator, orthogonality of the constructed polynomials
//! under the weight by direct quadrature, agreement of the three
//! construction paths, the closed-form alternative for Type III, and the
//! codimension-two flag candidates.

use crate::detrep::{
    build_matrix, cosine_distance, exceptional_polynomial_with, gram_schmidt_polynomial,
    solve_coefficients, solve_coefficients_cofactor,
};
use crate::family::{FamilyDescriptor, FamilyKind};
use crate::moments::{
    generate_moments, jacobi_mu2_closed_form, moment_by_quadrature, weighted_integral_with,
};
use crate::poly::{laguerre_poly, to_shifted, Polynomial, ShiftedPolynomial};
use crate::quadrature::QuadratureSpec;
use crate::specfun::gamma;
use crate::{Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use libm::{fabs, sqrt};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Recorded for the reader; never gates success.
    Informational,
}

impl CheckStatus {
    pub fn name(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Informational => "informational",
        }
    }
}

/// One named verification with its residual and the tolerance it was held
/// to. `anchor` is a stable machine-readable identifier of the verified
/// formula or property.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub anchor: &'static str,
    pub status: CheckStatus,
    pub residual: f64,
    pub tolerance: f64,
    pub note: String,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub family: &'static str,
    pub alpha: f64,
    pub beta: Option<f64>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    /// True when every non-informational check passed.
    pub fn all_passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.status != CheckStatus::Fail)
    }
}

fn check(
    name: String,
    anchor: &'static str,
    ok: bool,
    residual: f64,
    tolerance: f64,
    note: String,
) -> Check {
    Check {
        name,
        anchor,
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        residual: fabs(residual),
        tolerance,
        note,
    }
}

fn info(name: String, anchor: &'static str, residual: f64, note: String) -> Check {
    Check {
        name,
        anchor,
        status: CheckStatus::Informational,
        residual: fabs(residual),
        tolerance: f64::NAN,
        note,
    }
}

/// Value of the exceptional condition
/// [2pη′y′ − (pη″ + p′η′/2 − sη′)y] at x = ξ; zero means y belongs to the
/// operator's invariant flag.
pub fn exceptional_condition_value(family: &FamilyDescriptor, y: &Polynomial) -> f64 {
    family.e1() * y.derivative().eval(family.xi) - family.e0() * y.eval(family.xi)
}

/// The degree-one member (Type III: the constant member) as a polynomial.
pub fn first_member(family: &FamilyDescriptor) -> Polynomial {
    let (c10, c11) = family.c1;
    ShiftedPolynomial::new(family.xi, vec![c10, c11]).to_monomial()
}

/// Exceptional-condition checks for the whole flag up to `max_n`, plus the
/// exclusion check for the family's skipped degree.
pub fn flag_check(family: &FamilyDescriptor, max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let scale = fabs(family.e0()) + fabs(family.e1());
    let y1 = first_member(family);
    let v = exceptional_condition_value(family, &y1);
    out.push(check(
        String::from("flag-member-first"),
        "exceptional-condition",
        fabs(v) <= 1e-10 * scale * y1.max_norm().max(1.0),
        v,
        1e-10,
        String::from("degree-one member satisfies the condition"),
    ));
    for k in 2..=max_n {
        let mut c = vec![0.0; k + 1];
        c[k] = 1.0;
        let vk = ShiftedPolynomial::new(family.xi, c).to_monomial();
        let v = exceptional_condition_value(family, &vk);
        let s = scale * vk.max_norm().max(1.0);
        out.push(check(
            format!("flag-member-power-{k}"),
            "exceptional-condition",
            fabs(v) <= 1e-10 * s,
            v,
            1e-10,
            format!("(x-xi)^{k} satisfies the condition"),
        ));
    }
    // The excluded degree must violate the condition by a definite margin.
    let ex = family.excluded_degree();
    let mut c = vec![0.0; ex + 1];
    c[ex] = 1.0;
    let vex = ShiftedPolynomial::new(family.xi, c).to_monomial();
    let v = exceptional_condition_value(family, &vex);
    out.push(check(
        format!("flag-exclusion-degree-{ex}"),
        "exceptional-condition",
        fabs(v) >= 1e-3 * scale.max(1e-300),
        v,
        1e-3,
        format!("degree {ex} is excluded: condition value bounded away from zero"),
    ));
    out
}

/// Codimension-two flag membership: evaluates the exceptional condition at
/// both roots ξ₁, ξ₂ of a quadratic η for each candidate. An entry passes
/// iff the condition vanishes at both roots.
pub fn x2_flag_check(
    eta: &Polynomial,
    s: &Polynomial,
    p: &Polynomial,
    candidates: &[(&str, Polynomial)],
) -> Result<Vec<Check>> {
    if eta.degree() != Some(2) {
        return Err(Error::Domain {
            what: "codimension-two check requires a quadratic eta",
            value: eta.degree().map(|d| d as f64).unwrap_or(-1.0),
        });
    }
    let (a, b, c) = (eta.coeff(2), eta.coeff(1), eta.coeff(0));
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Err(Error::ComplexRoots { discriminant: disc });
    }
    let d = sqrt(disc);
    let roots = [(-b + d) / (2.0 * a), (-b - d) / (2.0 * a)];
    let etap = eta.derivative();
    let etapp = etap.derivative();
    let pp = p.derivative();
    let mut out = Vec::new();
    for (name, y) in candidates {
        let yp = y.derivative();
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for &xi in &roots {
            let e1 = 2.0 * p.eval(xi) * etap.eval(xi);
            let e0 = p.eval(xi) * etapp.eval(xi) + pp.eval(xi) * etap.eval(xi) / 2.0
                - s.eval(xi) * etap.eval(xi);
            let v = e1 * yp.eval(xi) - e0 * y.eval(xi);
            worst = worst.max(fabs(v));
            scale = scale.max((fabs(e0) + fabs(e1)) * y.max_norm().max(1.0));
        }
        out.push(check(
            format!("x2-candidate-{name}"),
            "exceptional-condition-multi",
            worst <= 1e-9 * scale.max(1e-300),
            worst,
            1e-9,
            format!("condition at both roots of the quadratic denominator"),
        ));
    }
    Ok(out)
}

/// Apply the natural operator to `y` and extract the eigenvalue.
///
/// Forms η·T[y] = pη y″ + ((p′/2+s)η − 2pη′) y′ + (p′/2−s)η′ y and divides
/// by η; the remainder must vanish — otherwise y violates the exceptional
/// condition and the image is genuinely rational. λ comes from the leading
/// coefficients. The residual of η(Ty − λy) is then measured pointwise on
/// the orthogonality interval, relative to the size of the individual
/// operator terms there. (Coefficientwise comparison would be polluted by
/// cancellation when ξ sits far outside the interval: the division by η
/// amplifies round-off geometrically in ξ.)
pub fn natural_operator_residual(family: &FamilyDescriptor, y: &Polynomial) -> Result<(f64, f64)> {
    if y.is_zero() {
        return Err(Error::Domain {
            what: "natural operator needs a nonzero polynomial",
            value: 0.0,
        });
    }
    let ops = family.natural_operator_coeffs();
    let ypp = y.derivative().derivative();
    let yp = y.derivative();
    let image_times_eta = ops
        .order2
        .mul(&family.eta)
        .mul(&ypp)
        .add(&ops.order1.0.mul(&yp))
        .add(&ops.order0.0.mul(y));
    let (image, rem) = image_times_eta.div_rem(&family.eta)?;
    let scale = image_times_eta.max_norm().max(y.max_norm()).max(1.0);
    if rem.max_norm() > 1e-9 * scale {
        return Err(Error::NonPolynomialImage {
            remainder_norm: rem.max_norm() / scale,
        });
    }
    let deg = y.degree().unwrap();
    let lambda = image.coeff(deg) / y.coeff(deg);

    let lo = family.interval.lower;
    let hi = if family.interval.upper.is_finite() {
        family.interval.upper
    } else {
        // Covers the oscillatory region of every degree the tests reach.
        lo + 4.0 * (deg as f64 + 1.0) + 4.0 * fabs(family.alpha) + 10.0
    };
    let samples = 96;
    let mut worst = 0.0f64;
    let mut size = 0.0f64;
    for m in 0..=samples {
        let x = lo + (hi - lo) * m as f64 / samples as f64;
        let t2 = ops.order2.eval(x) * family.eta.eval(x) * ypp.eval(x);
        let t1 = ops.order1.0.eval(x) * yp.eval(x);
        let t0 = ops.order0.0.eval(x) * y.eval(x);
        let te = lambda * family.eta.eval(x) * y.eval(x);
        worst = worst.max(fabs(t2 + t1 + t0 - te));
        size = size.max(fabs(t2) + fabs(t1) + fabs(t0) + fabs(te));
    }
    Ok((lambda, worst / size.max(1e-300)))
}

/// Gram matrix of the constructed polynomials by direct quadrature,
/// together with the closed-form norms K_n for the same degrees.
///
/// `scale[i][j]` = Σ |c_a||c_b||μ̃_{a+b}| is the term magnitude the inner
/// product cancels from; off-diagonal entries are judged relative to it,
/// since no computation (or measurement) of the integral can resolve below
/// round-off of that scale.
#[derive(Debug, Clone)]
pub struct GramReport {
    pub degrees: Vec<usize>,
    pub gram: Vec<Vec<f64>>,
    pub scale: Vec<Vec<f64>>,
    pub kn: Vec<f64>,
}

pub fn orthogonality_matrix(family: &FamilyDescriptor, max_n: usize) -> Result<GramReport> {
    let degrees = family.admissible_degrees(max_n);
    let moments = generate_moments(family, (2 * max_n).max(2))?;
    let spec = QuadratureSpec::default();
    let shifted: Vec<ShiftedPolynomial> = degrees
        .iter()
        .map(|&n| Ok(exceptional_polynomial_with(family, n, &moments)?.poly))
        .collect::<Result<_>>()?;
    let polys: Vec<Polynomial> = shifted.iter().map(|s| s.to_monomial()).collect();
    let mut scale = vec![vec![0.0; degrees.len()]; degrees.len()];
    for i in 0..degrees.len() {
        for j in 0..degrees.len() {
            let mut acc = 0.0;
            for (a, &ca) in shifted[i].coeffs().iter().enumerate() {
                for (b, &cb) in shifted[j].coeffs().iter().enumerate() {
                    acc += fabs(ca * cb * moments.value(a + b).unwrap());
                }
            }
            scale[i][j] = acc;
        }
    }
    let mut gram = vec![vec![0.0; degrees.len()]; degrees.len()];
    for i in 0..degrees.len() {
        let pi = &polys[i];
        let (v, _) = weighted_integral_with(family, |x| pi.eval(x) * pi.eval(x), &spec)?;
        gram[i][i] = v;
    }
    for i in 0..degrees.len() {
        for j in i + 1..degrees.len() {
            let (pi, pj) = (&polys[i], &polys[j]);
            // Off-diagonals cancel to ~0, so a relative tolerance is
            // unreachable; allow absolute error at round-off of the term
            // scale the cancellation happens over.
            let mut s = spec;
            s.abs_tol = s.abs_tol.max(1e-13 * scale[i][j]);
            let (v, _) = weighted_integral_with(family, |x| pi.eval(x) * pj.eval(x), &s)?;
            gram[i][j] = v;
            gram[j][i] = v;
        }
    }
    let kn = degrees
        .iter()
        .map(|&n| family.norm_kn(n))
        .collect::<Result<_>>()?;
    Ok(GramReport {
        degrees,
        gram,
        scale,
        kn,
    })
}

/// Closed-form Type III member via the first-order ladder operator:
/// n = 0 gives the constant 1; n ≥ 2 gives
/// −[ x(x−α) y′ − (x² − 2αx + α(α+1)) y ] with y = L_{n−2}^{α+1}.
pub fn darboux_type_iii(alpha: f64, n: usize) -> Result<Polynomial> {
    if n == 1 {
        return Err(Error::InadmissibleDegree { n });
    }
    if n == 0 {
        return Ok(Polynomial::constant(1.0));
    }
    let y = laguerre_poly(n - 2, alpha + 1.0);
    let ladder_a = Polynomial::new(vec![0.0, -alpha, 1.0]); // x(x-alpha)
    let ladder_b = Polynomial::new(vec![alpha * (alpha + 1.0), -2.0 * alpha, 1.0]);
    Ok(ladder_a.mul(&y.derivative()).sub(&ladder_b.mul(&y)).scale(-1.0))
}

/// The Jacobi first-order ladder formula taken at face value:
/// 1/(α+n) · P₁^{(−α−1,β−1)} · ((1−x) y′ − α y) with y = P_{n−1}^{(α+1,β−1)}.
///
/// Both terms carry the degree-one denominator polynomial as a factor, so
/// the output vanishes at ξ while the constructed polynomial does not; the
/// returned flag records whether the two are proportional (expected: no).
/// Diagnostic only — never a pass/fail gate.
pub fn darboux_jacobi_diagnostic(
    family: &FamilyDescriptor,
    n: usize,
) -> Result<(Polynomial, bool)> {
    if family.kind != FamilyKind::Jacobi {
        return Err(Error::Domain {
            what: "diagnostic applies to the Jacobi family",
            value: 0.0,
        });
    }
    if n < 1 {
        return Err(Error::InadmissibleDegree { n });
    }
    let (a, b) = (family.alpha, family.beta.unwrap());
    let y = crate::poly::jacobi_poly(n - 1, a + 1.0, b - 1.0)?;
    let one_minus_x = Polynomial::new(vec![1.0, -1.0]);
    let inner = one_minus_x.mul(&y.derivative()).sub(&y.scale(a));
    let out = family.eta.mul(&inner).scale(1.0 / (a + n as f64));
    let det = exceptional_polynomial_with(family, n, &generate_moments(family, (2 * n).max(2))?)?
        .poly
        .to_monomial();
    let proportional = cosine_distance(out.coeffs(), det.coeffs()) <= 1e-8;
    Ok((out, proportional))
}

/// Family-specific published recursion variant for the Jacobi moments,
/// predicting μ̃_{k+2} from (μ̃_k, μ̃_{k+1}). Kept only to let the oracle
/// decide between it and the general identity.
fn jacobi_variant_prediction(family: &FamilyDescriptor, mu: &[f64], k: usize) -> f64 {
    let a = family.alpha;
    let b = family.beta.unwrap();
    let xi = family.xi;
    let kf = k as f64;
    ((2.0 - a - b - 2.0 * kf) * xi + b - a) / (a + b + kf) * mu[k + 1]
        + (kf - 2.0) * (1.0 - xi * xi) / (a + b + kf) * mu[k]
}

/// Run the full verification battery for one family instance.
pub fn verify_family(family: &FamilyDescriptor, max_n: usize) -> Result<VerificationReport> {
    let mut checks: Vec<Check> = Vec::new();
    let table_len = (2 * max_n).max(12);
    let moments = generate_moments(family, table_len)?;

    // --- moment recursion against the quadrature oracle ---
    let mut worst = 0.0f64;
    for k in 0..=12.min(table_len) {
        let (q, _) = moment_by_quadrature(family, k)?;
        let r = moments.value(k).unwrap();
        worst = worst.max(fabs(r - q) / (1.0 + fabs(q)));
    }
    let mut note = String::from("recursion from the Pearson-derived identity");
    if family.kind == FamilyKind::Jacobi {
        // Which published variant does the oracle validate?
        let mu: Vec<f64> = (0..=8)
            .map(|k| moment_by_quadrature(family, k).map(|(v, _)| v))
            .collect::<Result<_>>()?;
        let mut general = 0.0f64;
        let mut variant = 0.0f64;
        let r = family.r;
        let sp = family.s_pearson;
        for k in 1..=5 {
            let kf = k as f64;
            let pred =
                -((kf * r[0] + sp[0]) * mu[k - 1] + (kf * r[1] + sp[1]) * mu[k]) / (kf * r[2] + sp[2]);
            general = general.max(fabs(pred - mu[k + 1]) / fabs(mu[k + 1]));
        }
        for k in 0..=4 {
            let pred = jacobi_variant_prediction(family, &mu, k);
            variant = variant.max(fabs(pred - mu[k + 2]) / fabs(mu[k + 2]));
        }
        note = format!(
            "oracle validates the general identity (max rel err {general:.2e}); \
             the family-specific variant deviates (max rel err {variant:.2e})"
        );
    }
    checks.push(check(
        String::from("moment-recursion-vs-quadrature"),
        "moment-recursion",
        worst <= 1e-8,
        worst,
        1e-8,
        note,
    ));

    // --- closed-form initial moment anchors ---
    match family.kind {
        FamilyKind::LaguerreIII => {
            let a = family.alpha;
            let g = gamma(a + 1.0)?;
            let mu2 = moments.value(2).unwrap();
            let r2 = fabs(mu2 - g) / fabs(g);
            checks.push(check(
                String::from("initial-moment-mu2-closed-form"),
                "initial-moments",
                r2 <= 1e-10,
                r2,
                1e-10,
                format!("second adjusted moment vs gamma(alpha+1) = {g:.12e}"),
            ));
            let mu0 = moments.value(0).unwrap();
            let r0 = fabs(mu0 - (-g / a)) / fabs(g / a);
            checks.push(check(
                String::from("initial-moment-mu0-closed-form"),
                "initial-moments",
                r0 <= 1e-10,
                r0,
                1e-10,
                format!("zeroth adjusted moment vs -gamma(alpha+1)/alpha"),
            ));
        }
        FamilyKind::Jacobi => {
            let (q1, _) = moment_by_quadrature(family, 1)?;
            let mu1 = moments.value(1).unwrap();
            let r1 = fabs(mu1 - q1) / fabs(q1);
            checks.push(check(
                String::from("initial-moment-mu1-vs-quadrature"),
                "initial-moments",
                r1 <= 1e-8,
                r1,
                1e-8,
                String::from("first adjusted moment from the F1 closed form vs quadrature"),
            ));
            let (q2, _) = moment_by_quadrature(family, 2)?;
            let cf = jacobi_mu2_closed_form(family.alpha, family.beta.unwrap())?;
            let r2 = fabs(cf - q2) / fabs(q2);
            checks.push(check(
                String::from("initial-moment-mu2-closed-form"),
                "initial-moments",
                r2 <= 1e-9,
                r2,
                1e-9,
                String::from("second adjusted moment closed form vs quadrature"),
            ));
            let without_power = cf / libm::pow(2.0, family.alpha + family.beta.unwrap() + 1.0);
            checks.push(info(
                String::from("initial-moment-mu2-alternate-constant"),
                "initial-moments",
                fabs(without_power - q2) / fabs(q2),
                format!(
                    "the same closed form without the interval-length power \
                     2^(alpha+beta+1) would give {without_power:.12e}; the oracle \
                     rejects that variant"
                ),
            ));
        }
        _ => {
            for k in 0..=1 {
                let (q, _) = moment_by_quadrature(family, k)?;
                let m = moments.value(k).unwrap();
                let r = fabs(m - q) / fabs(q);
                checks.push(check(
                    format!("initial-moment-mu{k}-closed-form"),
                    "initial-moments",
                    r <= 1e-9,
                    r,
                    1e-9,
                    format!("closed form vs quadrature"),
                ));
            }
        }
    }

    // --- flag membership and exclusion ---
    checks.extend(flag_check(family, max_n));

    // --- eigenfunction residuals under the natural operator ---
    let degrees = family.admissible_degrees(max_n);
    let mut lambdas: Vec<(usize, f64)> = Vec::new();
    for &n in &degrees {
        let y = exceptional_polynomial_with(family, n, &moments)?.poly.to_monomial();
        let (lambda, resid) = natural_operator_residual(family, &y)?;
        lambdas.push((n, lambda));
        checks.push(check(
            format!("eigen-residual-degree-{n}"),
            "natural-operator",
            resid <= 1e-9,
            resid,
            1e-9,
            format!("eigenvalue {lambda:.12e}"),
        ));
    }
    let monotone = lambdas.windows(2).all(|w| w[1].1 < w[0].1);
    checks.push(info(
        String::from("eigenvalue-monotonicity"),
        "natural-operator",
        if monotone { 0.0 } else { 1.0 },
        format!(
            "eigenvalues {:?} {}",
            lambdas.iter().map(|&(_, l)| l).collect::<Vec<_>>(),
            if monotone {
                "are strictly decreasing in the degree"
            } else {
                "are not monotone"
            }
        ),
    ));

    // --- orthogonality by quadrature ---
    let gr = orthogonality_matrix(family, max_n)?;
    let mut worst_off = 0.0f64;
    for i in 0..gr.degrees.len() {
        for j in 0..i {
            worst_off = worst_off.max(fabs(gr.gram[i][j]) / gr.scale[i][j].max(1e-300));
        }
    }
    checks.push(check(
        String::from("orthogonality-off-diagonal"),
        "orthogonality",
        worst_off <= 1e-8,
        worst_off,
        1e-8,
        String::from("Gram off-diagonals relative to the term scale they cancel from"),
    ));
    for (idx, &n) in gr.degrees.iter().enumerate() {
        checks.push(info(
            format!("norm-diagonal-degree-{n}"),
            "norms",
            fabs(gr.gram[idx][idx] - gr.kn[idx]) / fabs(gr.kn[idx]),
            format!(
                "quadrature norm {:.12e} vs closed-form K_n {:.12e}; the linear \
                 system pins <y_n, (x-xi)^n> = K_n, not <y_n, y_n>",
                gr.gram[idx][idx], gr.kn[idx]
            ),
        ));
    }

    // --- construction-path equivalence ---
    let mut worst_gs = 0.0f64;
    let mut worst_cf = 0.0f64;
    let mut worst_scaling = 0.0f64;
    for &n in &degrees {
        let det_y = exceptional_polynomial_with(family, n, &moments)?.poly;
        let gs_y = gram_schmidt_polynomial(family, n, &moments)?;
        worst_gs = worst_gs.max(cosine_distance(det_y.coeffs(), gs_y.coeffs()));
        let mm = build_matrix(family, n, &moments)?;
        let (lu_c, _) = solve_coefficients(&mm)?;
        let cf_c = solve_coefficients_cofactor(&mm)?;
        let scale = lu_c.iter().fold(0.0f64, |m, &v| m.max(fabs(v))).max(1e-300);
        for (a, b) in lu_c.iter().zip(cf_c.iter()) {
            worst_cf = worst_cf.max(fabs(a - b) / scale);
        }
        if n == 0 {
            // The 1x1 degree-zero system has no condition row to rescale.
            continue;
        }
        for &g in &[1e-3, 1.0, 1e3] {
            let mut scaled = mm.clone();
            for j in 0..=n {
                scaled.matrix[(0, j)] *= g;
            }
            let (c, _) = solve_coefficients(&scaled)?;
            for (a, b) in c.iter().zip(lu_c.iter()) {
                worst_scaling = worst_scaling.max(fabs(a - b) / scale);
            }
        }
    }
    checks.push(check(
        String::from("path-gram-schmidt-proportional"),
        "construction-paths",
        worst_gs <= 1e-8,
        worst_gs,
        1e-8,
        String::from("Gram-Schmidt over the flag vs linear solve, 1 - |cos|"),
    ));
    checks.push(check(
        String::from("path-cofactor-agreement"),
        "construction-paths",
        worst_cf <= 1e-10,
        worst_cf,
        1e-10,
        String::from("cofactor expansion vs LU solve"),
    ));
    checks.push(check(
        String::from("path-row-scaling-invariance"),
        "construction-paths",
        worst_scaling <= 1e-8,
        worst_scaling,
        1e-8,
        String::from("rescaling the condition row leaves the output unchanged"),
    ));

    // --- closed-form comparisons ---
    match family.kind {
        FamilyKind::LaguerreIII => {
            let mut worst = 0.0f64;
            for n in [0usize, 2, 3, 4, 5] {
                if n > max_n {
                    continue;
                }
                let det_y = exceptional_polynomial_with(family, n, &moments)?.poly;
                let closed = darboux_type_iii(family.alpha, n)?;
                let closed_shifted = to_shifted(&closed, family.xi);
                worst = worst.max(cosine_distance(det_y.coeffs(), closed_shifted.coeffs()));
            }
            checks.push(check(
                String::from("ladder-closed-form-proportional"),
                "ladder-operator",
                worst <= 1e-8,
                worst,
                1e-8,
                String::from("first-order ladder closed form vs linear solve"),
            ));
        }
        FamilyKind::Jacobi => {
            let n = 1.min(max_n.max(1));
            let (_, proportional) = darboux_jacobi_diagnostic(family, n)?;
            checks.push(info(
                String::from("ladder-diagnostic"),
                "ladder-operator",
                if proportional { 0.0 } else { 1.0 },
                format!(
                    "verbatim ladder formula {} proportional to the constructed \
                     polynomial (it forces a zero at xi, so disagreement is expected)",
                    if proportional { "IS" } else { "is NOT" }
                ),
            ));
        }
        _ => {}
    }

    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(VerificationReport {
        family: family.kind.name(),
        alpha: family.alpha,
        beta: family.beta,
        checks,
    })
}

/// The standard codimension-two candidate battery for a Laguerre-type
/// quadratic denominator η = x²/2 + (α+1)x + α(α+1)/2 with gauge data
/// s = x − α − 1/2, p = −x. Includes the expected-failure witness y = x,
/// whose check passes when the condition is bounded AWAY from zero.
pub fn x2_standard_checks(alpha: f64) -> Result<Vec<Check>> {
    let eta = Polynomial::new(vec![0.5 * alpha * (alpha + 1.0), alpha + 1.0, 0.5]);
    let s = Polynomial::new(vec![-alpha - 0.5, 1.0]);
    let p = Polynomial::new(vec![0.0, -1.0]);
    let (b, a, c) = (eta.coeff(1), eta.coeff(2), eta.coeff(0));
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Err(Error::ComplexRoots { discriminant: disc });
    }
    let d = sqrt(disc);
    let (xi1, xi2) = ((-b + d) / (2.0 * a), (-b - d) / (2.0 * a));
    // Candidate flag elements: the next classical polynomial up, a mixed
    // double/simple root product, and the fully doubled product.
    let v2 = laguerre_poly(2, alpha).mul(&Polynomial::constant(1.0)); // L2^alpha at -x below
    let v2 = {
        // L2^alpha(-x): substitute x -> -x by flipping odd coefficients.
        let mut cs: Vec<f64> = v2.coeffs().to_vec();
        for (i, c) in cs.iter_mut().enumerate() {
            if i % 2 == 1 {
                *c = -*c;
            }
        }
        Polynomial::new(cs)
    };
    let lin1 = Polynomial::new(vec![-xi1, 1.0]);
    let lin2 = Polynomial::new(vec![-xi2, 1.0]);
    let v3 = lin1.mul(&lin1).mul(&Polynomial::new(vec![-xi2 + 1.0, 1.0]));
    let v4 = lin1.mul(&lin1).mul(&lin2).mul(&lin2);
    let candidates = [
        ("quadratic-classical", v2),
        ("double-simple-product", v3),
        ("double-double-product", v4),
    ];
    let mut out = x2_flag_check(&eta, &s, &p, &candidates)?;
    // Negative control: y = x must violate at least one condition.
    let y = Polynomial::x();
    let failing = x2_flag_check(&eta, &s, &p, &[("witness", y)])?;
    let witness = &failing[0];
    out.push(check(
        String::from("x2-negative-control-linear"),
        "exceptional-condition-multi",
        witness.status == CheckStatus::Fail && witness.residual > 1e-3,
        witness.residual,
        1e-3,
        String::from("y = x must violate the conditions (residual is the condition value)"),
    ));
    Ok(out)
}
