//! Elementary functions of a 5-complex variable, and the exponential and
//! trigonometric forms of a number.
//!
//! Every function acts on the canonical components independently: ordinary
//! real functions on `v+` and ordinary complex functions on each plane
//! `v_k + i ~v_k`, with `~e_k` in the role of the imaginary unit.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::PentaComplex;
use crate::canonical::{canonical_basis, to_canonical, try_from_canonical, CanonicalForm};
use crate::error::{Error, Result};
use crate::geometry::{polar_form, PolarForm};

fn map_canonical(
    u: &PentaComplex,
    line: impl Fn(f64) -> f64,
    plane: impl Fn(Complex64) -> Complex64,
) -> Result<PentaComplex> {
    let c = to_canonical(u);
    let out = CanonicalForm::from_parts(line(c.vplus), plane(c.plane(1)), plane(c.plane(2)));
    if !out.as_array().iter().all(|x| x.is_finite()) {
        return Err(Error::Overflow);
    }
    try_from_canonical(&out)
}

/// `e^u = e+ e^v+ + sum_k e^(v_k) (e_k cos ~v_k + ~e_k sin ~v_k)`.
pub fn exp(u: &PentaComplex) -> Result<PentaComplex> {
    map_canonical(u, f64::exp, Complex64::exp)
}

/// `cos u = e+ cos v+ + sum_k (e_k cos v_k cosh ~v_k - ~e_k sin v_k sinh ~v_k)`.
pub fn cos(u: &PentaComplex) -> Result<PentaComplex> {
    map_canonical(u, f64::cos, Complex64::cos)
}

/// `sin u = e+ sin v+ + sum_k (e_k sin v_k cosh ~v_k + ~e_k cos v_k sinh ~v_k)`.
pub fn sin(u: &PentaComplex) -> Result<PentaComplex> {
    map_canonical(u, f64::sin, Complex64::sin)
}

/// `cosh u = e+ cosh v+ + sum_k (e_k cosh v_k cos ~v_k + ~e_k sinh v_k sin ~v_k)`.
pub fn cosh(u: &PentaComplex) -> Result<PentaComplex> {
    map_canonical(u, f64::cosh, Complex64::cosh)
}

/// `sinh u = e+ sinh v+ + sum_k (e_k sinh v_k cos ~v_k + ~e_k cosh v_k sin ~v_k)`.
pub fn sinh(u: &PentaComplex) -> Result<PentaComplex> {
    map_canonical(u, f64::sinh, Complex64::sinh)
}

/// `(1/5)(h1 + h2 + h3 + h4)`.
fn theta_direction() -> PentaComplex {
    PentaComplex::from_raw([0.0, 0.2, 0.2, 0.2, 0.2])
}

/// `((sqrt5 + 1)/10)(h1 + h4) - ((sqrt5 - 1)/10)(h2 + h3)`.
fn psi_direction() -> PentaComplex {
    let s5 = 5f64.sqrt();
    let a = (s5 + 1.0) / 10.0;
    let b = (s5 - 1.0) / 10.0;
    PentaComplex::from_raw([0.0, a, -b, -b, a])
}

fn log_domain(p: &PolarForm) -> Option<(f64, f64, f64, f64)> {
    if p.vplus <= 0.0 {
        return None;
    }
    let (theta, psi) = (p.thetaplus.get().ok()?, p.psi1.get().ok()?);
    let (phi1, phi2) = (p.phi1.get().ok()?, p.phi2.get().ok()?);
    // theta in (0, pi/2) and psi in (0, pi/2) follow from v+ > 0 and
    // rho1, rho2 > 0, but rounding can still land on an endpoint
    let open = |x: f64| x > 0.0 && x < std::f64::consts::FRAC_PI_2;
    (open(theta) && open(psi)).then_some((theta, psi, phi1, phi2))
}

/// Principal logarithm, for `v+ > 0` and `rho1, rho2 > 0`:
///
/// ```text
/// ln u = ln rho + (1/5)(h1+h2+h3+h4) ln(sqrt2/tan theta+)
///      + [((sqrt5+1)/10)(h1+h4) - ((sqrt5-1)/10)(h2+h3)] ln tan psi1
///      + ~e1 phi1 + ~e2 phi2
/// ```
///
/// with azimuths in `[0, 2 pi)`.
pub fn log(u: &PentaComplex) -> Result<PentaComplex> {
    let p = polar_form(u);
    let (theta, psi, phi1, phi2) = log_domain(&p).ok_or(Error::LogDomain)?;
    let b = canonical_basis();
    let out = PentaComplex::ONE.scale(p.rho.ln())
        + theta_direction().scale((SQRT_2 / theta.tan()).ln())
        + psi_direction().scale(psi.tan().ln())
        + b.te1.scale(phi1)
        + b.te2.scale(phi2);
    PentaComplex::checked(out.components())
}

/// `u^m` for real `m`:
/// `e+ v+^m + rho1^m (e1 cos m phi1 + ~e1 sin m phi1) + rho2^m (e2 cos m phi2 + ~e2 sin m phi2)`.
///
/// Integer exponents are accepted for every `u` (negative ones need `u`
/// invertible) and are computed with integer powers of the canonical
/// components. Other exponents need `v+ > 0` and `rho1, rho2 > 0`.
pub fn pow_real(u: &PentaComplex, m: f64) -> Result<PentaComplex> {
    if !m.is_finite() {
        return Err(Error::PowDomain);
    }
    if m.fract() == 0.0 && m.abs() <= i32::MAX as f64 {
        let n = m as i32;
        let base = if n < 0 { u.inverse()? } else { *u };
        let c = to_canonical(&base);
        let e = n.unsigned_abs();
        let out = CanonicalForm::from_parts(c.vplus.powi(e as i32), c.plane(1).powu(e), c.plane(2).powu(e));
        return try_from_canonical(&out);
    }
    let p = polar_form(u);
    let (_, _, phi1, phi2) = log_domain(&p).ok_or(Error::PowDomain)?;
    let out = CanonicalForm::from_parts(
        p.vplus.powf(m),
        Complex64::from_polar(p.rho1.powf(m), m * phi1),
        Complex64::from_polar(p.rho2.powf(m), m * phi2),
    );
    try_from_canonical(&out)
}

/// Exponential form `u = rho exp{ (1/5)(h1+h2+h3+h4) ln(sqrt2/tan theta+)
/// + [...] ln tan psi1 + ~e1 phi1 + ~e2 phi2 }`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentialForm {
    pub amplitude: f64,
    /// `ln(sqrt2 / tan theta+)`.
    pub log_tan_theta: f64,
    /// `ln tan psi1`.
    pub log_tan_psi: f64,
    pub phi1: f64,
    pub phi2: f64,
}

impl ExponentialForm {
    /// The exponent, a 5-complex number.
    pub fn exponent(&self) -> PentaComplex {
        let b = canonical_basis();
        theta_direction().scale(self.log_tan_theta)
            + psi_direction().scale(self.log_tan_psi)
            + b.te1.scale(self.phi1)
            + b.te2.scale(self.phi2)
    }

    /// `rho * exp(exponent)`.
    pub fn reconstruct(&self) -> Result<PentaComplex> {
        Ok(exp(&self.exponent())?.scale(self.amplitude))
    }
}

/// Exponential form, defined for `0 < theta+ < pi/2` with `rho1, rho2 > 0`.
pub fn exponential_form(u: &PentaComplex) -> Result<ExponentialForm> {
    let p = polar_form(u);
    let (theta, psi, phi1, phi2) = log_domain(&p).ok_or(Error::FormDomain(
        "exponential form needs 0 < theta+ < pi/2 and rho1, rho2 > 0",
    ))?;
    Ok(ExponentialForm {
        amplitude: p.rho,
        log_tan_theta: (SQRT_2 / theta.tan()).ln(),
        log_tan_psi: psi.tan().ln(),
        phi1,
        phi2,
    })
}

/// Evaluates the trigonometric form
///
/// ```text
/// u = d sqrt(5/2) (1/tan^2 theta+ + 1 + 1/tan^2 psi1)^(-1/2)
///       (e+ sqrt2/tan theta+ + e1 + e2/tan psi1) exp(~e1 phi1 + ~e2 phi2)
/// ```
///
/// from the polar coordinates of `u`. Needs every angle defined with
/// `0 < theta+ < pi` and `0 < psi1 < pi/2`.
pub fn trigonometric_form(u: &PentaComplex) -> Result<PentaComplex> {
    let p = polar_form(u);
    let undefined = || Error::FormDomain("trigonometric form needs all angles defined, 0 < psi1 < pi/2");
    let theta = p.thetaplus.get().map_err(|_| undefined())?;
    let psi = p.psi1.get().map_err(|_| undefined())?;
    let phi1 = p.phi1.get().map_err(|_| undefined())?;
    let phi2 = p.phi2.get().map_err(|_| undefined())?;
    let half_pi = std::f64::consts::FRAC_PI_2;
    if !(theta > 0.0 && theta < std::f64::consts::PI && psi > 0.0 && psi < half_pi) {
        return Err(undefined());
    }
    // cot avoids the pole of tan at theta+ = pi/2
    let cot_theta = theta.cos() / theta.sin();
    let cot_psi = psi.cos() / psi.sin();
    let b = canonical_basis();
    let scale = p.d * (2.5f64).sqrt() / (cot_theta * cot_theta + 1.0 + cot_psi * cot_psi).sqrt();
    let direction = b.eplus.scale(SQRT_2 * cot_theta) + b.e1 + b.e2.scale(cot_psi);
    let rotation = exp(&(b.te1.scale(phi1) + b.te2.scale(phi2)))?;
    PentaComplex::checked((direction * rotation).scale(scale).components())
}

/// Modulus predicted from amplitude and angles,
/// `d = rho 2^(2/5)/sqrt5 (tan theta+ tan^2 psi1)^(1/5) (1/tan^2 theta+ + 1 + 1/tan^2 psi1)^(1/2)`,
/// for `0 < theta+ < pi/2` and `0 < psi1 < pi/2`.
pub fn modulus_from_amplitude(p: &PolarForm) -> Result<f64> {
    let (theta, psi, _, _) = log_domain(p).ok_or(Error::FormDomain(
        "modulus-amplitude relation needs 0 < theta+ < pi/2 and 0 < psi1 < pi/2",
    ))?;
    let (tt, tp) = (theta.tan(), psi.tan());
    Ok(p.rho * 2f64.powf(0.4) / 5f64.sqrt()
        * (tt * tp * tp).powf(0.2)
        * (1.0 / (tt * tt) + 1.0 + 1.0 / (tp * tp)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(k: usize) -> PentaComplex {
        PentaComplex::basis(k)
    }

    fn close(a: &PentaComplex, b: &PentaComplex, tol: f64) -> bool {
        a.max_abs_diff(b) <= tol * (1.0 + b.norm())
    }

    #[test]
    fn values_at_zero() {
        let z = PentaComplex::ZERO;
        assert!(close(&exp(&z).unwrap(), &PentaComplex::ONE, 1e-15));
        assert!(close(&cos(&z).unwrap(), &PentaComplex::ONE, 1e-15));
        assert!(close(&sin(&z).unwrap(), &z, 1e-15));
        assert!(close(&cosh(&z).unwrap(), &PentaComplex::ONE, 1e-15));
        assert!(close(&sinh(&z).unwrap(), &z, 1e-15));
    }

    #[test]
    fn exp_of_basis_multiple_is_cosexp_vector() {
        let y = 1.3;
        let e = exp(&h(1).scale(y)).unwrap();
        let expected = crate::cosexp::exp_basis(1, y).unwrap();
        assert!(close(&e, &expected, 1e-14));
    }

    #[test]
    fn exp_overflow_is_an_error() {
        let u = PentaComplex::ONE.scale(800.0);
        assert_eq!(exp(&u), Err(Error::Overflow));
        assert_eq!(cosh(&u), Err(Error::Overflow));
    }

    #[test]
    fn log_examples() {
        assert!(log(&PentaComplex::ONE).unwrap().norm() < 1e-15);
        let eplus = canonical_basis().eplus;
        assert_eq!(log(&eplus), Err(Error::LogDomain));
        assert_eq!(log(&PentaComplex::ONE.scale(-2.0)), Err(Error::LogDomain));
        let u = PentaComplex::new([1.2, 0.3, -0.4, 0.1, 0.25]).unwrap();
        assert!(close(&exp(&log(&u).unwrap()).unwrap(), &u, 1e-13));
    }

    #[test]
    fn log_matches_canonical_logarithm() {
        let u = PentaComplex::new([2.0, -0.3, 0.7, 0.1, -0.5]).unwrap();
        let c = to_canonical(&u);
        let p = polar_form(&u);
        let expected = CanonicalForm::from_array([
            c.vplus.ln(),
            p.rho1.ln(),
            p.phi1.get().unwrap(),
            p.rho2.ln(),
            p.phi2.get().unwrap(),
        ]);
        let lc = to_canonical(&log(&u).unwrap()).as_array();
        for (a, b) in lc.iter().zip(expected.as_array()) {
            assert!((a - b).abs() < 1e-13, "{lc:?} vs {expected:?}");
        }
    }

    #[test]
    fn pow_examples() {
        let u = PentaComplex::new([0.5, -1.0, 0.3, 2.0, 0.1]).unwrap();
        assert!(close(&pow_real(&u, 2.0).unwrap(), &(u * u), 1e-13));
        assert!(close(&pow_real(&u, 0.0).unwrap(), &PentaComplex::ONE, 1e-15));
        assert!(close(&pow_real(&h(1), 5.0).unwrap(), &PentaComplex::ONE, 1e-14));
        assert!(close(&pow_real(&u, -1.0).unwrap(), &u.inverse().unwrap(), 1e-13));
        let eplus = canonical_basis().eplus;
        // integer powers of a zero divisor are fine; negative ones are not
        assert!(close(&pow_real(&eplus, 3.0).unwrap(), &eplus, 1e-15));
        assert!(matches!(pow_real(&eplus, -2.0), Err(Error::NonInvertible { .. })));
        assert_eq!(pow_real(&eplus, 0.5), Err(Error::PowDomain));
        assert_eq!(pow_real(&u, f64::NAN), Err(Error::PowDomain));
    }

    #[test]
    fn fractional_powers_compose() {
        let u = PentaComplex::new([3.0, 0.2, -0.1, 0.4, 0.3]).unwrap();
        let r = pow_real(&u, 0.5).unwrap();
        assert!(close(&(r * r), &u, 1e-13));
        let t = pow_real(&u, 1.0 / 3.0).unwrap();
        assert!(close(&(t * t * t), &u, 1e-13));
    }

    #[test]
    fn exponential_form_of_unit() {
        let f = exponential_form(&PentaComplex::ONE).unwrap();
        assert!((f.amplitude - 1.0).abs() < 1e-15);
        assert!(f.log_tan_theta.abs() < 1e-15);
        assert!(f.log_tan_psi.abs() < 1e-15);
        assert_eq!((f.phi1, f.phi2), (0.0, 0.0));
        assert!(close(&f.reconstruct().unwrap(), &PentaComplex::ONE, 1e-15));
        assert!(matches!(
            exponential_form(&PentaComplex::ONE.scale(-1.0)),
            Err(Error::FormDomain(_))
        ));
    }

    #[test]
    fn trigonometric_form_reconstructs() {
        assert!(close(
            &trigonometric_form(&PentaComplex::ONE).unwrap(),
            &PentaComplex::ONE,
            1e-15
        ));
        // v+ < 0 is allowed here: theta+ in (pi/2, pi)
        let u = PentaComplex::new([-2.0, 0.3, 0.1, -0.2, 0.4]).unwrap();
        assert!(to_canonical(&u).vplus < 0.0);
        assert!(close(&trigonometric_form(&u).unwrap(), &u, 1e-13));
        assert!(trigonometric_form(&canonical_basis().eplus).is_err());
    }

    #[test]
    fn modulus_amplitude_relation() {
        let u = PentaComplex::new([1.5, 0.2, -0.3, 0.4, 0.1]).unwrap();
        let p = polar_form(&u);
        assert!((modulus_from_amplitude(&p).unwrap() - p.d).abs() < 1e-13);
    }
}
