//! End-to-end acceptance battery. Each test prints one PASS/FAIL line
//! (run with `--nocapture` to see them all on a green run).

use xop_core::detrep::{
    build_matrix, cosine_distance, exceptional_polynomial_with, gram_schmidt_polynomial,
    solve_coefficients, solve_coefficients_cofactor,
};
use xop_core::family::{make_family, FamilyDescriptor, FamilyKind};
use xop_core::moments::{generate_moments, jacobi_mu2_closed_form, moment_by_quadrature};
use xop_core::poly::to_shifted;
use xop_core::specfun::gamma;
use xop_core::verify::{darboux_type_iii, flag_check, natural_operator_residual, orthogonality_matrix, x2_standard_checks, CheckStatus};

fn report(num: u32, name: &str, ok: bool, detail: &str) {
    println!(
        "criterion {num:02} {name}: {} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {num:02} {name} failed: {detail}");
}

/// The parameter grid every grid-wide criterion runs over.
fn grid() -> Vec<FamilyDescriptor> {
    let mut out = Vec::new();
    for &a in &[0.5, 1.5] {
        out.push(make_family(FamilyKind::LaguerreI, a, None).unwrap());
        out.push(make_family(FamilyKind::LaguerreII, a, None).unwrap());
    }
    for &a in &[-0.25, -0.75] {
        out.push(make_family(FamilyKind::LaguerreIII, a, None).unwrap());
    }
    for &(a, b) in &[(2.0, 4.0), (0.5, 1.5), (-0.5, -0.25)] {
        out.push(make_family(FamilyKind::Jacobi, a, Some(b)).unwrap());
    }
    out
}

fn label(f: &FamilyDescriptor) -> String {
    match f.beta {
        Some(b) => format!("{} a={} b={}", f.kind.name(), f.alpha, b),
        None => format!("{} a={}", f.kind.name(), f.alpha),
    }
}

#[test]
fn criterion_01_type3_degree2_worked_example() {
    let mut worst = 0.0f64;
    for &alpha in &[-0.25, -0.5, -0.75] {
        let f = make_family(FamilyKind::LaguerreIII, alpha, None).unwrap();
        let moments = generate_moments(&f, 4).unwrap();
        let y = exceptional_polynomial_with(&f, 2, &moments)
            .unwrap()
            .poly
            .to_monomial();
        let lead = y.coeff(2);
        let expected = [alpha * (alpha + 1.0), -2.0 * alpha, 1.0];
        for i in 0..3 {
            let got = y.coeff(i) / lead;
            let rel = (got - expected[i]).abs() / expected[i].abs().max(1.0);
            worst = worst.max(rel);
        }
    }
    report(
        1,
        "degree-2 closed form (Laguerre type 3)",
        worst <= 1e-10,
        &format!("max coefficient rel err {worst:.2e} vs x^2 - 2ax + a(a+1)"),
    );
}

#[test]
fn criterion_02_moment_recursion_vs_quadrature() {
    let mut worst = 0.0f64;
    let mut jacobi_note = String::new();
    for f in grid() {
        let table = generate_moments(&f, 12).unwrap();
        for k in 0..=12 {
            let (q, _) = moment_by_quadrature(&f, k).unwrap();
            let rel = (table.value(k).unwrap() - q).abs() / (1.0 + q.abs());
            worst = worst.max(rel);
        }
        if f.kind == FamilyKind::Jacobi && jacobi_note.is_empty() {
            // Decide which published three-term identity the oracle backs:
            // the Pearson-derived one, or the family-specific variant.
            let mu: Vec<f64> = (0..=8)
                .map(|k| moment_by_quadrature(&f, k).unwrap().0)
                .collect();
            let (a, b, xi) = (f.alpha, f.beta.unwrap(), f.xi);
            let (r, s) = (f.r, f.s_pearson);
            let mut general = 0.0f64;
            let mut variant = 0.0f64;
            for k in 1..=5usize {
                let kf = k as f64;
                let pred = -((kf * r[0] + s[0]) * mu[k - 1] + (kf * r[1] + s[1]) * mu[k])
                    / (kf * r[2] + s[2]);
                general = general.max((pred - mu[k + 1]).abs() / mu[k + 1].abs());
                let kf = (k - 1) as f64;
                let pred = ((2.0 - a - b - 2.0 * kf) * xi + b - a) / (a + b + kf) * mu[k]
                    + (kf - 2.0) * (1.0 - xi * xi) / (a + b + kf) * mu[k - 1];
                variant = variant.max((pred - mu[k + 1]).abs() / mu[k + 1].abs());
            }
            jacobi_note = format!(
                "jacobi oracle backs the general identity ({general:.1e}) over the variant ({variant:.1e})"
            );
        }
    }
    report(
        2,
        "moment recursion vs quadrature, k <= 12",
        worst <= 1e-8,
        &format!("max rel err {worst:.2e}; {jacobi_note}"),
    );
}

#[test]
fn criterion_03_initial_moment_anchors() {
    let mut worst = 0.0f64;
    let mut notes = Vec::new();
    for &alpha in &[-0.25, -0.75] {
        let f = make_family(FamilyKind::LaguerreIII, alpha, None).unwrap();
        let table = generate_moments(&f, 2).unwrap();
        let g = gamma(alpha + 1.0).unwrap();
        let r2 = (table.value(2).unwrap() - g).abs() / g.abs();
        let r0 = (table.value(0).unwrap() + g / alpha).abs() / (g / alpha).abs();
        worst = worst.max(r2.max(r0));
    }
    let anchors_lag3 = worst;
    let mut jacobi2 = 0.0f64;
    let mut jacobi1 = 0.0f64;
    for &(a, b) in &[(2.0, 4.0), (0.5, 1.5), (-0.5, -0.25)] {
        let f = make_family(FamilyKind::Jacobi, a, Some(b)).unwrap();
        let cf = jacobi_mu2_closed_form(a, b).unwrap();
        let (q2, _) = moment_by_quadrature(&f, 2).unwrap();
        jacobi2 = jacobi2.max((cf - q2).abs() / q2.abs());
        let table = generate_moments(&f, 2).unwrap();
        let (q1, _) = moment_by_quadrature(&f, 1).unwrap();
        jacobi1 = jacobi1.max((table.value(1).unwrap() - q1).abs() / q1.abs());
        if (a, b) == (2.0, 4.0) {
            notes.push(format!(
                "mu2(2,4) = {cf:.12} = 128/105; dropping the interval-length power 2^(a+b+1) would give 1/105, which quadrature rejects"
            ));
        }
    }
    report(
        3,
        "initial-moment closed-form anchors",
        anchors_lag3 <= 1e-10 && jacobi2 <= 1e-9 && jacobi1 <= 1e-8,
        &format!(
            "lag3 {anchors_lag3:.2e}, jacobi mu2 {jacobi2:.2e}, jacobi mu1 {jacobi1:.2e}; {}",
            notes.join("; ")
        ),
    );
}

#[test]
fn criterion_04_gauge_function_from_factorization() {
    let mut worst = 0.0f64;
    let samples: Vec<FamilyDescriptor> = {
        let mut out = Vec::new();
        for &a in &[0.3, 0.7, 1.0, 1.5, 2.5] {
            out.push(make_family(FamilyKind::LaguerreI, a, None).unwrap());
            out.push(make_family(FamilyKind::LaguerreII, a, None).unwrap());
        }
        for &a in &[-0.1, -0.25, -0.5, -0.75, -0.9] {
            out.push(make_family(FamilyKind::LaguerreIII, a, None).unwrap());
        }
        for &(a, b) in &[(2.0, 4.0), (0.5, 1.5), (-0.5, -0.25), (1.0, 3.0), (0.25, 0.75)] {
            out.push(make_family(FamilyKind::Jacobi, a, Some(b)).unwrap());
        }
        out
    };
    for f in samples {
        let s = f.s_via_factorization().unwrap();
        let scale = f.s.max_norm().max(1.0);
        for i in 0..=f.s.degree().unwrap() {
            worst = worst.max((s.coeff(i) - f.s.coeff(i)).abs() / scale);
        }
    }
    report(
        4,
        "gauge function recovered from the first-order factorization",
        worst <= 1e-10,
        &format!("max coefficient err {worst:.2e} over 20 parameter samples"),
    );
}

#[test]
fn criterion_05_eigenfunction_residuals() {
    let mut worst = 0.0f64;
    for f in grid() {
        let moments = generate_moments(&f, 12).unwrap();
        for n in f.admissible_degrees(6) {
            let y = exceptional_polynomial_with(&f, n, &moments)
                .unwrap()
                .poly
                .to_monomial();
            let (_, resid) = natural_operator_residual(&f, &y).unwrap();
            assert!(resid <= 1e-9, "{} n={n}: residual {resid:.2e}", label(&f));
            worst = worst.max(resid);
        }
    }
    report(
        5,
        "eigenfunction residuals, all admissible n <= 6",
        worst <= 1e-9,
        &format!("max residual {worst:.2e}"),
    );
}

#[test]
fn criterion_06_orthogonality() {
    let mut worst = 0.0f64;
    let mut sample_note = String::new();
    for f in grid() {
        let gr = orthogonality_matrix(&f, 6).unwrap();
        for i in 0..gr.degrees.len() {
            for j in 0..i {
                worst = worst.max(gr.gram[i][j].abs() / gr.scale[i][j]);
            }
        }
        if sample_note.is_empty() {
            let diag: Vec<String> = gr
                .degrees
                .iter()
                .enumerate()
                .map(|(i, &n)| format!("n={n}: <y,y>={:.6e} K_n={:.6e}", gr.gram[i][i], gr.kn[i]))
                .collect();
            sample_note = format!(
                "diagonals vs closed-form norms for {} (informational; the system normalizes <y_n,(x-xi)^n>, not <y_n,y_n>): {}",
                label(&f),
                diag.join(", ")
            );
        }
    }
    report(
        6,
        "pairwise orthogonality by quadrature, n,k <= 6",
        worst <= 1e-8,
        &format!("max relative off-diagonal {worst:.2e}; {sample_note}"),
    );
}

#[test]
fn criterion_07_construction_path_equivalence() {
    let mut worst_gs = 0.0f64;
    let mut worst_cf = 0.0f64;
    let mut worst_scaling = 0.0f64;
    for f in grid() {
        let moments = generate_moments(&f, 12).unwrap();
        for n in f.admissible_degrees(6) {
            let det_y = exceptional_polynomial_with(&f, n, &moments).unwrap().poly;
            let gs_y = gram_schmidt_polynomial(&f, n, &moments).unwrap();
            worst_gs = worst_gs.max(cosine_distance(det_y.coeffs(), gs_y.coeffs()));
            let mm = build_matrix(&f, n, &moments).unwrap();
            let (lu_c, _) = solve_coefficients(&mm).unwrap();
            let cf_c = solve_coefficients_cofactor(&mm).unwrap();
            let scale = lu_c.iter().fold(0.0f64, |m, &v| m.max(v.abs())).max(1e-300);
            for (a, b) in lu_c.iter().zip(cf_c.iter()) {
                worst_cf = worst_cf.max((a - b).abs() / scale);
            }
            if n == 0 {
                continue; // the 1x1 system has no condition row
            }
            for &g in &[1e-3, 1.0, 1e3] {
                let mut scaled = mm.clone();
                for j in 0..=n {
                    scaled.matrix[(0, j)] *= g;
                }
                let (c, _) = solve_coefficients(&scaled).unwrap();
                for (a, b) in c.iter().zip(lu_c.iter()) {
                    worst_scaling = worst_scaling.max((a - b).abs() / scale);
                }
            }
        }
    }
    report(
        7,
        "construction paths agree (Gram-Schmidt, cofactor, row scaling)",
        worst_gs <= 1e-8 && worst_cf <= 1e-10 && worst_scaling <= 1e-8,
        &format!(
            "Gram-Schmidt 1-|cos| {worst_gs:.2e}, cofactor {worst_cf:.2e}, row scaling {worst_scaling:.2e}"
        ),
    );
}

#[test]
fn criterion_08_type3_ladder_closed_form() {
    let mut worst = 0.0f64;
    for &alpha in &[-0.25, -0.75] {
        let f = make_family(FamilyKind::LaguerreIII, alpha, None).unwrap();
        let moments = generate_moments(&f, 10).unwrap();
        for n in [0usize, 2, 3, 4, 5] {
            let det_y = exceptional_polynomial_with(&f, n, &moments).unwrap().poly;
            let closed = to_shifted(&darboux_type_iii(alpha, n).unwrap(), f.xi);
            worst = worst.max(cosine_distance(det_y.coeffs(), closed.coeffs()));
        }
    }
    report(
        8,
        "type-3 first-order ladder closed form matches the linear solve",
        worst <= 1e-8,
        &format!("max 1-|cos| {worst:.2e} over n in {{0,2,3,4,5}}"),
    );
}

#[test]
fn criterion_09_flag_membership_and_exclusion() {
    let mut ok = true;
    let mut detail = String::new();
    for f in grid() {
        for c in flag_check(&f, 6) {
            if c.status == CheckStatus::Fail {
                ok = false;
                detail = format!("{}: {} residual {:.2e}", label(&f), c.name, c.residual);
            }
        }
    }
    if detail.is_empty() {
        detail = String::from(
            "all flag elements satisfy the condition; the excluded degree violates it by >= 1e-3 of scale",
        );
    }
    report(9, "invariant-flag membership and degree exclusion", ok, &detail);
}

#[test]
fn criterion_10_codimension_two_flag() {
    let mut ok = true;
    let mut detail = String::new();
    for &alpha in &[1.5, 2.5] {
        for c in x2_standard_checks(alpha).unwrap() {
            if c.status == CheckStatus::Fail {
                ok = false;
                detail = format!("alpha={alpha}: {} residual {:.2e}", c.name, c.residual);
            }
        }
    }
    if detail.is_empty() {
        detail = String::from(
            "three candidates satisfy both root conditions; the linear witness y = x fails as required",
        );
    }
    report(10, "codimension-two candidate battery", ok, &detail);
}
