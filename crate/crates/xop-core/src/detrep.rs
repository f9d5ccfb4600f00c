//! Determinantal construction of the exceptional polynomials.
//!
//! The degree-n member ŷ_n(x) = Σ c_i (x−ξ)^i is pinned down by n+1 linear
//! conditions on its Taylor coefficients around ξ:
//!
//! * the exceptional condition e₁·c₁ − e₀·c₀ = 0 (membership in the
//!   operator's invariant flag),
//! * orthogonality to the degree-one member ŷ₁ (for Type III: to the
//!   constant member) and to (x−ξ)^k for 2 ≤ k < n, expressed through the
//!   adjusted moments, and
//! * the normalization ⟨ŷ_n, (x−ξ)^n⟩ = K_n.
//!
//! The resulting matrix is a shifted Hankel matrix bordered by two special
//! rows. Coefficients are obtained by LU with partial pivoting; a cofactor
//! expansion along the last column is kept as an independent evaluation
//! path, and Gram–Schmidt over the flag basis as a third.

use crate::family::FamilyDescriptor;
use crate::linalg::{Lu, Matrix};
use crate::moments::{generate_moments, MomentTable};
use crate::poly::ShiftedPolynomial;
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
use libm::{exp2, fabs, log2, round, sqrt};

/// The bordered moment matrix A together with the right-hand side
/// b = (0, …, 0, K_n).
///
/// `matrix_lo` carries entrywise round-off compensations (from the
/// double-double moment recursion); the solvers feed them into iterative
/// refinement so that the entries stay mutually coherent beyond f64 —
/// see `MomentTable` for why that matters.
#[derive(Debug, Clone)]
pub struct MomentMatrix {
    pub matrix: Matrix,
    pub matrix_lo: Matrix,
    pub rhs: Vec<f64>,
    pub e0: f64,
    pub e1: f64,
    pub n: usize,
}

/// A constructed polynomial along with the solve's condition estimate.
#[derive(Debug, Clone)]
pub struct ExceptionalPolynomial {
    pub poly: ShiftedPolynomial,
    pub condition_estimate: f64,
}

/// Assemble the (n+1)×(n+1) system for degree n from a moment table
/// holding μ̃₀ .. μ̃_{2n}.
pub fn build_matrix(
    family: &FamilyDescriptor,
    n: usize,
    moments: &MomentTable,
) -> Result<MomentMatrix> {
    if !family.is_admissible(n) {
        return Err(Error::InadmissibleDegree { n });
    }
    if moments.len() < 2 * n + 1 {
        return Err(Error::InsufficientMoments {
            needed: 2 * n + 1,
            have: moments.len(),
        });
    }
    let mu = |k: usize| moments.value_dd(k).unwrap();
    let e0 = family.e0();
    let e1 = family.e1();
    let kn = family.norm_kn(n)?;

    if n == 0 {
        // Degree zero (Type III only): the single condition is the
        // normalization ⟨c₀, 1⟩ = K₀.
        return Ok(MomentMatrix {
            matrix: Matrix::from_rows(&[vec![mu(0).hi]]),
            matrix_lo: Matrix::from_rows(&[vec![mu(0).lo]]),
            rhs: vec![kn],
            e0,
            e1,
            n,
        });
    }

    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    let mut rows_lo: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    // Exceptional condition on (c₀, c₁): e₁ c₁ − e₀ c₀ = 0.
    let mut row = vec![0.0; n + 1];
    row[0] = -e0;
    row[1] = e1;
    rows.push(row);
    rows_lo.push(vec![0.0; n + 1]);
    // Orthogonality to the degree-one member (Type III: the constant).
    let (c10, c11) = family.c1;
    let combo: Vec<crate::dd::Dd> = (0..=n)
        .map(|j| {
            crate::dd::dd_add(
                crate::dd::dd_mul(crate::dd::Dd::from(c10), mu(j)),
                crate::dd::dd_mul(crate::dd::Dd::from(c11), mu(j + 1)),
            )
        })
        .collect();
    rows.push(combo.iter().map(|v| v.hi).collect());
    rows_lo.push(combo.iter().map(|v| v.lo).collect());
    // Orthogonality to (x−ξ)^{l−1} for l−1 = 2 .. n−1, plus the
    // normalization row l−1 = n.
    for l in 3..=n + 1 {
        rows.push((0..=n).map(|j| mu(l - 1 + j).hi).collect());
        rows_lo.push((0..=n).map(|j| mu(l - 1 + j).lo).collect());
    }
    let mut rhs = vec![0.0; n + 1];
    rhs[n] = kn;
    Ok(MomentMatrix {
        matrix: Matrix::from_rows(&rows),
        matrix_lo: Matrix::from_rows(&rows_lo),
        rhs,
        e0,
        e1,
        n,
    })
}

/// Nearest power of two to 1/m; exact to apply, so equilibration changes
/// no bits of a well-scaled system.
fn pow2_scale(m: f64) -> f64 {
    if m > 0.0 && m.is_finite() {
        exp2(-round(log2(m)))
    } else {
        1.0
    }
}

/// Row- and column-equilibrated copy of the system. The moments grow like
/// Γ(k+α) (half-line) or |ξ±1|^k (interval with ξ outside it), so the raw
/// Hankel block spans many orders of magnitude and its condition number
/// explodes with n; balancing with powers of two removes that artificial
/// part exactly. Returns (A', b', column scales): if A'y = b' then the
/// original solution is x_j = col[j]·y_j.
fn equilibrated(mm: &MomentMatrix) -> (Matrix, Matrix, Vec<f64>, Vec<f64>) {
    let n = mm.n;
    let mut a = mm.matrix.clone();
    let mut a_lo = mm.matrix_lo.clone();
    let mut b = mm.rhs.clone();
    for i in 0..=n {
        let m = (0..=n).fold(0.0f64, |m, j| m.max(fabs(a[(i, j)])));
        let r = pow2_scale(m);
        for j in 0..=n {
            a[(i, j)] *= r;
            a_lo[(i, j)] *= r;
        }
        b[i] *= r;
    }
    let mut col = vec![1.0; n + 1];
    for j in 0..=n {
        let m = (0..=n).fold(0.0f64, |m, i| m.max(fabs(a[(i, j)])));
        col[j] = pow2_scale(m);
        for i in 0..=n {
            a[(i, j)] *= col[j];
            a_lo[(i, j)] *= col[j];
        }
    }
    (a, a_lo, b, col)
}

/// Solve A c = b by LU on the equilibrated system; returns the Taylor
/// coefficients and a 1-norm condition estimate (of the balanced matrix).
pub fn solve_coefficients(mm: &MomentMatrix) -> Result<(Vec<f64>, f64)> {
    let (a, a_lo, b, col) = equilibrated(mm);
    let lu = Lu::factor(&a)?;
    let mut c = lu.solve_refined(&a, &a_lo, &b);
    for (ci, s) in c.iter_mut().zip(col.iter()) {
        *ci *= s;
    }
    Ok((c, lu.condition_estimate(&a)))
}

/// Cramer's rule with the numerator determinants expanded as cofactors of
/// the last (normalization) row: c_i = K_n (−1)^{n+i} det M_{n,i} / det A,
/// where M_{n,i} drops row n and column i. An independent path used to
/// cross-check the LU solve.
pub fn solve_coefficients_cofactor(mm: &MomentMatrix) -> Result<Vec<f64>> {
    let n = mm.n;
    // Equilibration scales rows and columns by powers of two; the rhs keeps
    // its (0, …, 0, K) shape, so Cramer's rule applies unchanged.
    let (a, a_lo, b, col_scale) = equilibrated(mm);
    let det_a = crate::linalg::det_compensated_with(&a, Some(&a_lo));
    if det_a == 0.0 {
        return Err(Error::SingularMatrix {
            condition_estimate: f64::INFINITY,
        });
    }
    let kn = b[n];
    let mut c = Vec::with_capacity(n + 1);
    for i in 0..=n {
        if n == 0 {
            c.push(col_scale[0] * kn / det_a);
            continue;
        }
        let mut minor = Matrix::zeros(n);
        let mut minor_lo = Matrix::zeros(n);
        for r in 0..n {
            let mut cc = 0;
            for col in 0..=n {
                if col == i {
                    continue;
                }
                minor[(r, cc)] = a[(r, col)];
                minor_lo[(r, cc)] = a_lo[(r, col)];
                cc += 1;
            }
        }
        let sign = if (n + i) % 2 == 0 { 1.0 } else { -1.0 };
        let det_m = crate::linalg::det_compensated_with(&minor, Some(&minor_lo));
        c.push(col_scale[i] * kn * sign * det_m / det_a);
    }
    Ok(c)
}

/// Construct ŷ_n for the family.
pub fn exceptional_polynomial(family: &FamilyDescriptor, n: usize) -> Result<ExceptionalPolynomial> {
    let moments = generate_moments(family, (2 * n).max(2))?;
    exceptional_polynomial_with(family, n, &moments)
}

pub fn exceptional_polynomial_with(
    family: &FamilyDescriptor,
    n: usize,
    moments: &MomentTable,
) -> Result<ExceptionalPolynomial> {
    let mm = build_matrix(family, n, moments)?;
    let (c, condition_estimate) = solve_coefficients(&mm)?;
    Ok(ExceptionalPolynomial {
        poly: ShiftedPolynomial::new(family.xi, c),
        condition_estimate,
    })
}

/// The flag basis for degree n as shifted-coefficient vectors of length
/// n+1: [ŷ₁, (x−ξ)², …, (x−ξ)^n] (Type III: [1, (x−ξ)², …]).
fn flag_basis(family: &FamilyDescriptor, n: usize) -> Vec<Vec<f64>> {
    let mut basis = Vec::new();
    let mut first = vec![0.0; n + 1];
    let (c10, c11) = family.c1;
    first[0] = c10;
    if n >= 1 {
        first[1] = c11;
    }
    basis.push(first);
    for k in 2..=n {
        let mut v = vec![0.0; n + 1];
        v[k] = 1.0;
        basis.push(v);
    }
    basis
}

fn moment_inner(moments: &MomentTable, u: &[f64], w: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (i, &ui) in u.iter().enumerate() {
        if ui == 0.0 {
            continue;
        }
        for (j, &wj) in w.iter().enumerate() {
            if wj == 0.0 {
                continue;
            }
            acc += ui * wj * moments.value(i + j).expect("moment table too short");
        }
    }
    acc
}

/// Degree-n member via Gram–Schmidt over the flag basis under the
/// adjusted-moment inner product. Returns an unnormalized polynomial; it is
/// proportional (not equal) to the determinantal output.
pub fn gram_schmidt_polynomial(
    family: &FamilyDescriptor,
    n: usize,
    moments: &MomentTable,
) -> Result<ShiftedPolynomial> {
    if !family.is_admissible(n) {
        return Err(Error::InadmissibleDegree { n });
    }
    if moments.len() < 2 * n + 1 {
        return Err(Error::InsufficientMoments {
            needed: 2 * n + 1,
            have: moments.len(),
        });
    }
    let basis = flag_basis(family, n);
    let mut ortho: Vec<Vec<f64>> = Vec::with_capacity(basis.len());
    let mut norms: Vec<f64> = Vec::with_capacity(basis.len());
    let scale = moments.value(0).unwrap().abs().max(1.0);
    for v in &basis {
        let mut w = v.clone();
        for (b, &nb) in ortho.iter().zip(norms.iter()) {
            let proj = moment_inner(moments, &w, b) / nb;
            for (wi, bi) in w.iter_mut().zip(b.iter()) {
                *wi -= proj * bi;
            }
        }
        let nw = moment_inner(moments, &w, &w);
        if fabs(nw) <= 1e-14 * scale {
            return Err(Error::RankDeficient { pivot: ortho.len() });
        }
        ortho.push(w);
        norms.push(nw);
    }
    Ok(ShiftedPolynomial::new(
        family.xi,
        ortho.pop().expect("flag basis is nonempty"),
    ))
}

/// 1 − |cos θ| between two coefficient vectors; 0 means proportional.
pub fn cosine_distance(u: &[f64], w: &[f64]) -> f64 {
    let len = u.len().max(w.len());
    let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
    let mut dot = 0.0;
    let mut nu = 0.0;
    let mut nw = 0.0;
    for i in 0..len {
        let (a, b) = (get(u, i), get(w, i));
        dot += a * b;
        nu += a * a;
        nw += b * b;
    }
    if nu == 0.0 || nw == 0.0 {
        return 1.0;
    }
    1.0 - fabs(dot) / (sqrt(nu) * sqrt(nw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{make_family, FamilyKind};
    use crate::poly::to_shifted;
    use crate::poly::Polynomial;

    #[test]
    fn type3_matrix_layout() {
        let f = make_family(FamilyKind::LaguerreIII, -0.5, None).unwrap();
        let t = generate_moments(&f, 4).unwrap();
        let mm = build_matrix(&f, 2, &t).unwrap();
        // [[ -e0, e1, 0 ], [ mu0, mu1, mu2 ], [ mu2, mu3, mu4 ]] with e0 = 0
        assert_eq!(mm.matrix[(0, 0)], 0.0);
        assert!((mm.matrix[(0, 1)] - f.e1()).abs() < 1e-15);
        assert_eq!(mm.matrix[(0, 2)], 0.0);
        for j in 0..3 {
            assert_eq!(mm.matrix[(1, j)], t.value(j).unwrap());
            assert_eq!(mm.matrix[(2, j)], t.value(2 + j).unwrap());
        }
        assert_eq!(mm.rhs[0], 0.0);
        assert_eq!(mm.rhs[1], 0.0);
        assert!((mm.rhs[2] - f.norm_kn(2).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn worked_degree2_example() {
        // Degree-2 Type III member is proportional to x^2 - 2ax + a(a+1).
        for &alpha in &[-0.25, -0.5, -0.75] {
            let f = make_family(FamilyKind::LaguerreIII, alpha, None).unwrap();
            let y = exceptional_polynomial(&f, 2).unwrap().poly;
            let m = y.to_monomial();
            let lead = m.coeff(2);
            let monic: Vec<f64> = (0..3).map(|i| m.coeff(i) / lead).collect();
            let expected = [alpha * (alpha + 1.0), -2.0 * alpha, 1.0];
            for i in 0..3 {
                assert!(
                    (monic[i] - expected[i]).abs() <= 1e-10 * expected[i].abs().max(1.0),
                    "alpha={alpha}, coeff {i}: {} vs {}",
                    monic[i],
                    expected[i]
                );
            }
        }
    }

    #[test]
    fn degree1_members() {
        // Type I: proportional to (c10, c11) = (1, 1), i.e. x + alpha + 1.
        let alpha = 1.0;
        let f = make_family(FamilyKind::LaguerreI, alpha, None).unwrap();
        let y = exceptional_polynomial(&f, 1).unwrap().poly;
        let m = y.to_monomial();
        let lead = m.coeff(1);
        assert!(
            (m.coeff(0) / lead - (alpha + 1.0)).abs() < 1e-10,
            "got {} x + {}",
            lead,
            m.coeff(0)
        );
        // Jacobi: proportional to stored c1.
        let f = make_family(FamilyKind::Jacobi, 2.0, Some(4.0)).unwrap();
        let y = exceptional_polynomial(&f, 1).unwrap().poly;
        let d = cosine_distance(y.coeffs(), &[f.c1.0, f.c1.1]);
        assert!(d < 1e-12, "distance {d}");
    }

    #[test]
    fn type3_degree0_is_constant_one() {
        // K0 / mu0 = 1 exactly: Gamma(1-a) = -a Gamma(-a).
        let f = make_family(FamilyKind::LaguerreIII, -0.5, None).unwrap();
        let y = exceptional_polynomial(&f, 0).unwrap().poly;
        assert_eq!(y.degree(), Some(0));
        assert!((y.coeff(0) - 1.0).abs() < 1e-10, "got {}", y.coeff(0));
    }

    #[test]
    fn solved_coefficients_satisfy_orthogonality() {
        // <y_n, v_k> = 0 for flag degrees k < n and = K_n at k = n,
        // recomputed independently from the moment table.
        let cases: Vec<(FamilyKind, f64, Option<f64>)> = vec![
            (FamilyKind::LaguerreI, 1.5, None),
            (FamilyKind::LaguerreII, 0.5, None),
            (FamilyKind::LaguerreIII, -0.75, None),
            (FamilyKind::Jacobi, 2.0, Some(4.0)),
        ];
        for (kind, alpha, beta) in cases {
            let f = make_family(kind, alpha, beta).unwrap();
            for n in 2..=5 {
                if !f.is_admissible(n) {
                    continue;
                }
                let t = generate_moments(&f, 2 * n).unwrap();
                let y = exceptional_polynomial_with(&f, n, &t).unwrap().poly;
                let c = y.coeffs();
                let kn = f.norm_kn(n).unwrap();
                // Re-evaluating the inner products in f64 cancels at the
                // scale of the largest term, not of kn.
                let term_scale = |v: &[f64]| {
                    c.iter()
                        .enumerate()
                        .flat_map(|(i, &ci)| {
                            v.iter().enumerate().map(move |(j, &vj)| (i, ci, j, vj))
                        })
                        .map(|(i, ci, j, vj)| (ci * vj * t.value(i + j).unwrap()).abs())
                        .fold(kn.abs(), f64::max)
                };
                for k in 2..n {
                    let mut v = vec![0.0; n + 1];
                    v[k] = 1.0;
                    let ip = moment_inner(&t, c, &v);
                    assert!(ip.abs() <= 1e-9 * term_scale(&v), "{kind:?} n={n} k={k}: {ip}");
                }
                let mut v = vec![0.0; n + 1];
                v[n] = 1.0;
                let ip = moment_inner(&t, c, &v);
                assert!(
                    (ip - kn).abs() <= 1e-9 * term_scale(&v),
                    "{kind:?} n={n}: {ip} vs {kn}"
                );
            }
        }
    }

    #[test]
    fn cofactor_path_agrees_with_lu() {
        let f = make_family(FamilyKind::Jacobi, 0.5, Some(1.5)).unwrap();
        for n in 1..=5 {
            let t = generate_moments(&f, 2 * n).unwrap();
            let mm = build_matrix(&f, n, &t).unwrap();
            let (lu_c, _) = solve_coefficients(&mm).unwrap();
            let cf_c = solve_coefficients_cofactor(&mm).unwrap();
            let scale = lu_c.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
            for (a, b) in lu_c.iter().zip(cf_c.iter()) {
                assert!((a - b).abs() <= 1e-10 * scale, "n={n}: {lu_c:?} vs {cf_c:?}");
            }
        }
    }

    #[test]
    fn row_scaling_invariance() {
        let f = make_family(FamilyKind::LaguerreI, 1.5, None).unwrap();
        let n = 4;
        let t = generate_moments(&f, 2 * n).unwrap();
        let base = build_matrix(&f, n, &t).unwrap();
        let (c_base, _) = solve_coefficients(&base).unwrap();
        for &gamma in &[1e-3, 1.0, 1e3] {
            let mut mm = base.clone();
            for j in 0..=n {
                mm.matrix[(0, j)] *= gamma;
            }
            let (c, _) = solve_coefficients(&mm).unwrap();
            let scale = c_base.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
            for (a, b) in c.iter().zip(c_base.iter()) {
                assert!((a - b).abs() <= 1e-12 * scale, "gamma={gamma}");
            }
        }
    }

    #[test]
    fn gram_schmidt_matches_determinantal() {
        let cases: Vec<(FamilyKind, f64, Option<f64>)> = vec![
            (FamilyKind::LaguerreI, 0.5, None),
            (FamilyKind::LaguerreIII, -0.25, None),
            (FamilyKind::Jacobi, 2.0, Some(4.0)),
        ];
        for (kind, alpha, beta) in cases {
            let f = make_family(kind, alpha, beta).unwrap();
            for n in f.admissible_degrees(6) {
                let t = generate_moments(&f, (2 * n).max(2)).unwrap();
                let det_y = exceptional_polynomial_with(&f, n, &t).unwrap().poly;
                let gs_y = gram_schmidt_polynomial(&f, n, &t).unwrap();
                let d = cosine_distance(det_y.coeffs(), gs_y.coeffs());
                assert!(d <= 1e-8, "{kind:?} n={n}: distance {d}");
            }
        }
    }

    #[test]
    fn gram_schmidt_degree1_returns_first_member() {
        let f = make_family(FamilyKind::LaguerreI, 1.5, None).unwrap();
        let t = generate_moments(&f, 2).unwrap();
        let y = gram_schmidt_polynomial(&f, 1, &t).unwrap();
        assert_eq!(y.coeffs(), &[1.0, 1.0]);
    }

    #[test]
    fn type_i_vs_type_ii_proportional() {
        for &alpha in &[0.5, 1.5] {
            let f1 = make_family(FamilyKind::LaguerreI, alpha, None).unwrap();
            let f2 = make_family(FamilyKind::LaguerreII, alpha, None).unwrap();
            for n in 1..=6 {
                let y1 = exceptional_polynomial(&f1, n).unwrap().poly;
                let y2 = exceptional_polynomial(&f2, n).unwrap().poly;
                let d = cosine_distance(y1.coeffs(), y2.coeffs());
                assert!(d <= 1e-10, "alpha={alpha} n={n}: distance {d}");
            }
        }
    }

    #[test]
    fn errors() {
        let f = make_family(FamilyKind::LaguerreIII, -0.5, None).unwrap();
        assert!(matches!(
            exceptional_polynomial(&f, 1),
            Err(Error::InadmissibleDegree { n: 1 })
        ));
        let t = generate_moments(&f, 2).unwrap();
        assert!(matches!(
            build_matrix(&f, 3, &t),
            Err(Error::InsufficientMoments { .. })
        ));
    }

    #[test]
    fn shifted_example_expansion() {
        // The degree-2 output around xi = alpha re-expands to
        // (x - alpha)^2 + alpha after monic normalization.
        let alpha = -0.5;
        let f = make_family(FamilyKind::LaguerreIII, alpha, None).unwrap();
        let y = exceptional_polynomial(&f, 2).unwrap().poly;
        let c2 = y.coeff(2);
        let expected = to_shifted(
            &Polynomial::new(vec![alpha * (alpha + 1.0), -2.0 * alpha, 1.0]),
            alpha,
        );
        for i in 0..3 {
            assert!(
                (y.coeff(i) / c2 - expected.coeff(i)).abs() < 1e-10,
                "coeff {i}"
            );
        }
    }
}
