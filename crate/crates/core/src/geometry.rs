//! Modulus, amplitude and the angular coordinates of a 5-complex number.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::algebra::PentaComplex;
use crate::canonical::to_canonical;
use crate::error::{Angle, Error, Result};

/// Relative threshold (times the modulus) below which a radius counts as zero.
pub const ANGLE_TOL: f64 = 1e-13;

/// Euclidean norm of the five components.
pub fn modulus(u: &PentaComplex) -> f64 {
    u.norm()
}

/// Real fifth root, odd in its argument.
pub fn real_fifth_root(x: f64) -> f64 {
    x.signum() * x.abs().powf(0.2)
}

/// An angle that may be undefined because its defining radius vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum AngleValue {
    Defined(f64),
    #[serde(serialize_with = "serialize_undefined")]
    Undefined(Angle),
}

fn serialize_undefined<S: serde::Serializer>(_: &Angle, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_none()
}

impl AngleValue {
    pub fn get(&self) -> Result<f64> {
        match *self {
            AngleValue::Defined(x) => Ok(x),
            AngleValue::Undefined(which) => Err(Error::AngleUndefined(which)),
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, AngleValue::Defined(_))
    }
}

/// An undefined angle and why.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UndefinedAngle {
    pub angle: Angle,
    pub reason: &'static str,
}

/// Polar coordinates of a 5-complex number.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolarForm {
    /// Modulus.
    pub d: f64,
    /// Amplitude, the real fifth root of `v+ rho1^2 rho2^2`.
    pub rho: f64,
    pub vplus: f64,
    pub rho1: f64,
    pub rho2: f64,
    /// Azimuthal angles in `[0, 2 pi)`.
    pub phi1: AngleValue,
    pub phi2: AngleValue,
    /// Planar angle in `[0, pi/2]`.
    pub psi1: AngleValue,
    /// Polar angle in `[0, pi]`.
    pub thetaplus: AngleValue,
    /// Reasons for each undefined angle, empty when all are defined.
    pub undefined: Vec<UndefinedAngle>,
}

impl PolarForm {
    pub fn phi(&self, k: usize) -> Result<f64> {
        match k {
            1 => self.phi1.get(),
            2 => self.phi2.get(),
            _ => Err(Error::InvalidArgument(format!("plane index {k}"))),
        }
    }

    pub fn all_defined(&self) -> bool {
        self.undefined.is_empty()
    }
}

fn wrap_angle(a: f64) -> f64 {
    // atan2 returns (-pi, pi]; shift the negative half up
    if a < 0.0 {
        let w = a + 2.0 * PI;
        if w >= 2.0 * PI {
            0.0
        } else {
            w
        }
    } else {
        a
    }
}

/// Polar form. Radii and the amplitude are always returned; each angle whose
/// defining radius is at most `1e-13 * d` is marked undefined.
pub fn polar_form(u: &PentaComplex) -> PolarForm {
    let c = to_canonical(u);
    let d = u.norm();
    let tau = ANGLE_TOL * d;
    let rho1 = c.rho1();
    let rho2 = c.rho2();
    let rho = real_fifth_root(c.vplus * rho1 * rho1 * rho2 * rho2);
    let mut undefined = Vec::new();
    let mut angle = |which: Angle, radius: f64, reason: &'static str, value: f64| {
        if radius > tau {
            AngleValue::Defined(value)
        } else {
            undefined.push(UndefinedAngle { angle: which, reason });
            AngleValue::Undefined(which)
        }
    };
    let phi1 = angle(Angle::Phi1, rho1, "rho1 vanishes", wrap_angle(c.tv1.atan2(c.v1)));
    let phi2 = angle(Angle::Phi2, rho2, "rho2 vanishes", wrap_angle(c.tv2.atan2(c.v2)));
    let psi1 = angle(
        Angle::Psi1,
        rho1.hypot(rho2),
        "rho1 and rho2 both vanish",
        rho1.atan2(rho2),
    );
    let thetaplus = angle(
        Angle::ThetaPlus,
        c.vplus.hypot(rho1),
        "v+ and rho1 both vanish",
        (SQRT_2 * rho1).atan2(c.vplus),
    );
    PolarForm {
        d,
        rho,
        vplus: c.vplus,
        rho1,
        rho2,
        phi1,
        phi2,
        psi1,
        thetaplus,
        undefined,
    }
}

/// Both sides of the modulus product bound `|uv| <= sqrt5 |u| |v|`.
pub fn modulus_product_bound(u: &PentaComplex, v: &PentaComplex) -> (f64, f64) {
    ((*u * *v).norm(), 5f64.sqrt() * u.norm() * v.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_basis;

    #[test]
    fn modulus_examples() {
        assert_eq!(modulus(&PentaComplex::ONE), 1.0);
        let eplus = canonical_basis().eplus;
        assert!((modulus(&eplus) - 1.0 / 5f64.sqrt()).abs() < 1e-16);
        let u = PentaComplex::basis(1) + PentaComplex::basis(2);
        assert_eq!(modulus(&u), SQRT_2);
    }

    #[test]
    fn polar_form_of_unit() {
        let p = polar_form(&PentaComplex::ONE);
        assert_eq!(p.d, 1.0);
        assert_eq!(p.vplus, 1.0);
        assert_eq!((p.rho1, p.rho2), (1.0, 1.0));
        assert_eq!(p.phi1.get().unwrap(), 0.0);
        assert_eq!(p.phi2.get().unwrap(), 0.0);
        assert!((p.psi1.get().unwrap() - PI / 4.0).abs() < 1e-16);
        assert!((p.thetaplus.get().unwrap().tan() - SQRT_2).abs() < 1e-15);
        assert_eq!(p.rho, 1.0);
        assert!(p.all_defined());
    }

    #[test]
    fn polar_form_of_idempotent_has_undefined_angles() {
        let p = polar_form(&canonical_basis().eplus);
        assert!((p.d - 1.0 / 5f64.sqrt()).abs() < 1e-16);
        assert_eq!(p.phi1.get(), Err(Error::AngleUndefined(Angle::Phi1)));
        assert_eq!(p.phi2.get(), Err(Error::AngleUndefined(Angle::Phi2)));
        assert_eq!(p.psi1.get(), Err(Error::AngleUndefined(Angle::Psi1)));
        // theta+ is still defined: v+ = 1
        assert!(p.thetaplus.get().unwrap().abs() < 1e-15);
        assert_eq!(p.undefined.len(), 3);
        let json = serde_json::to_value(&p).unwrap();
        assert!(json["phi1"].is_null());
        assert_eq!(json["undefined"][0]["angle"], "phi1");
    }

    #[test]
    fn azimuth_is_wrapped_to_positive_range() {
        // -1 has plane components (-1, 0): phi = pi
        let p = polar_form(&PentaComplex::ONE.scale(-1.0));
        assert!((p.phi1.get().unwrap() - PI).abs() < 1e-15);
        assert_eq!(p.rho, -1.0);
        assert!((p.thetaplus.get().unwrap() - (SQRT_2).atan2(-1.0)).abs() < 1e-15);
        let te1 = canonical_basis().te1.scale(-1.0) + canonical_basis().e2 + canonical_basis().eplus;
        let phi1 = polar_form(&te1).phi1.get().unwrap();
        assert!((phi1 - 1.5 * PI).abs() < 1e-14, "{phi1}");
    }

    #[test]
    fn product_bound_examples() {
        let (l, r) = modulus_product_bound(&PentaComplex::ONE, &PentaComplex::ONE);
        assert_eq!((l, r), (1.0, 5f64.sqrt()));
        let e = canonical_basis().eplus;
        let (l, r) = modulus_product_bound(&e, &e);
        assert!((l - r).abs() < 1e-15 && (l - 1.0 / 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn fifth_root_is_odd() {
        assert_eq!(real_fifth_root(32.0), 2.0);
        assert_eq!(real_fifth_root(-32.0), -2.0);
        assert_eq!(real_fifth_root(0.0), 0.0);
    }
}
