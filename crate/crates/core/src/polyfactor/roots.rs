//! Simultaneous-iteration root finding for scalar polynomials.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 200;
const NEWTON_POLISH_STEPS: usize = 3;

/// Roots closer than this (relative) are treated as real or as repeated.
pub const REAL_TOL: f64 = 1e-9;

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in coeffs {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Rounding bound for Horner's rule at `z`.
fn horner_bound(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut acc = 0.0;
    for a in coeffs {
        acc = acc * r + a.norm();
    }
    8.0 * f64::EPSILON * coeffs.len() as f64 * acc
}

/// All roots of the monic polynomial `coeffs[0] z^m + ... + coeffs[m]`,
/// `coeffs[0] = 1`, by Aberth iteration from a circle of radius
/// `1 + max |coeffs[k]|`, followed by Newton polishing.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let m = coeffs.len().saturating_sub(1);
    if m == 0 {
        return Err(Error::InvalidArgument("polynomial degree must be at least 1".into()));
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidArgument("non-finite polynomial coefficient".into()));
    }
    if m == 1 {
        return Ok(vec![-coeffs[1] / coeffs[0]]);
    }
    let radius = 1.0 + coeffs[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..m)
        .map(|j| Complex64::from_polar(radius, TAU * j as f64 / m as f64 + 0.4))
        .collect();
    let mut done = vec![false; m];
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        for i in 0..m {
            if done[i] {
                continue;
            }
            let (p, dp) = horner(coeffs, z[i]);
            if p.norm() <= horner_bound(coeffs, z[i]) {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..m).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !w.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() <= 4.0 * f64::EPSILON * z[i].norm() {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            iterations: MAX_ITERATIONS,
        });
    }
    for zi in z.iter_mut() {
        for _ in 0..NEWTON_POLISH_STEPS {
            let (p, dp) = horner(coeffs, *zi);
            let next = *zi - p / dp;
            if !next.is_finite() || horner(coeffs, next).0.norm() >= p.norm() {
                break;
            }
            *zi = next;
        }
    }
    Ok(z)
}

/// Roots of a monic real polynomial, with near-real roots snapped to the
/// real axis and complex roots made exact conjugate pairs.
pub fn real_polynomial_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let c: Vec<Complex64> = coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect();
    let roots = polynomial_roots(&c)?;
    let is_real = |z: &Complex64| z.im.abs() <= REAL_TOL * (1.0 + z.norm());
    let mut out: Vec<Complex64> = roots
        .iter()
        .filter(|z| is_real(z))
        .map(|z| Complex64::new(z.re, 0.0))
        .collect();
    let mut upper: Vec<Complex64> = roots.iter().filter(|z| !is_real(z) && z.im > 0.0).copied().collect();
    let mut lower: Vec<Complex64> = roots.iter().filter(|z| !is_real(z) && z.im < 0.0).copied().collect();
    while let Some(z) = upper.pop() {
        let nearest = lower
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1.conj() - z).norm().total_cmp(&(b.1.conj() - z).norm()))
            .map(|(i, _)| i);
        match nearest {
            Some(i) => {
                let w = lower.swap_remove(i);
                let mid = (z + w.conj()) * 0.5;
                out.push(mid.conj());
                out.push(mid);
            }
            None => out.push(Complex64::new(z.re, 0.0)),
        }
    }
    out.extend(lower.into_iter().map(|z| Complex64::new(z.re, 0.0)));
    Ok(out)
}

/// Lexicographic order on `(re, im)`.
pub fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}
