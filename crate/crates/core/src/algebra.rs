//! The ring of 5-complex numbers `x0 + h1 x1 + h2 x2 + h3 x3 + h4 x4`.
//!
//! The basis multiplies cyclically, `h_j h_k = h_{(j+k) mod 5}` with `h0 = 1`,
//! so the product of two numbers is the cyclic convolution of their
//! component vectors. Every value is immutable and every operation pure.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::canonical::{self, CanonicalForm};
use crate::error::{Error, Result};

/// Number of real components.
pub const DIM: usize = 5;

/// Default relative threshold below which a canonical component counts as zero
/// when inverting.
pub const DEFAULT_INVERSE_TOL: f64 = 1e-13;

/// Absolute tolerance for accepting a matrix as circulant.
pub const CIRCULANT_TOL: f64 = 1e-12;

/// Index of the basis element `h_j h_k`.
///
/// # Panics
///
/// Panics if either index is outside `0..5`.
pub fn basis_product(j: usize, k: usize) -> usize {
    assert!(j < DIM && k < DIM, "basis index out of range: ({j}, {k})");
    (j + k) % DIM
}

/// A 5-complex number. Components are stored as `(x0, x1, x2, x3, x4)` and
/// are always finite.
#[derive(Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "[f64; 5]", into = "[f64; 5]")]
pub struct PentaComplex([f64; DIM]);

impl PentaComplex {
    pub const ZERO: Self = Self([0.0; DIM]);
    pub const ONE: Self = Self([1.0, 0.0, 0.0, 0.0, 0.0]);

    /// Builds a number from its components, rejecting NaN and infinities.
    pub fn new(components: [f64; DIM]) -> Result<Self> {
        for (index, &value) in components.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
        }
        Ok(Self(components))
    }

    /// Builds a number from components known to be finite.
    ///
    /// Debug builds assert finiteness; callers that cannot guarantee it use
    /// [`PentaComplex::new`].
    pub(crate) fn from_raw(components: [f64; DIM]) -> Self {
        debug_assert!(components.iter().all(|x| x.is_finite()), "{components:?}");
        Self(components)
    }

    /// Like [`PentaComplex::new`] but reports any non-finite component as an
    /// overflow, for results of computations on finite inputs.
    pub(crate) fn checked(components: [f64; DIM]) -> Result<Self> {
        if components.iter().all(|x| x.is_finite()) {
            Ok(Self(components))
        } else {
            Err(Error::Overflow)
        }
    }

    /// The real number `x`.
    pub fn real(x: f64) -> Result<Self> {
        Self::new([x, 0.0, 0.0, 0.0, 0.0])
    }

    /// The basis element `h_k`, with `h_0 = 1`.
    ///
    /// # Panics
    ///
    /// Panics if `k >= 5`.
    pub fn basis(k: usize) -> Self {
        assert!(k < DIM, "basis index out of range: {k}");
        let mut x = [0.0; DIM];
        x[k] = 1.0;
        Self(x)
    }

    pub fn components(&self) -> [f64; DIM] {
        self.0
    }

    /// Multiplies by a real scalar.
    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|x| x * s))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Euclidean norm of the components, the modulus `d`.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `u^n` for a non-negative integer exponent, by binary powering.
    pub fn powu(&self, mut n: u32) -> Self {
        let mut base = *self;
        let mut acc = Self::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    /// Circulant matrix whose first row is `(x0, .., x4)`.
    pub fn to_matrix(&self) -> RingMatrix {
        let mut m = [[0.0; DIM]; DIM];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = self.0[(c + DIM - r) % DIM];
            }
        }
        RingMatrix(m)
    }

    /// Reads a number back from its matrix, checking the circulant pattern
    /// against [`CIRCULANT_TOL`].
    pub fn from_matrix(m: &RingMatrix) -> Result<Self> {
        m.check_circulant(CIRCULANT_TOL)?;
        Self::new(m.0[0])
    }

    pub fn to_canonical(&self) -> CanonicalForm {
        canonical::to_canonical(self)
    }

    /// Multiplicative inverse, using the default relative threshold.
    pub fn inverse(&self) -> Result<Self> {
        self.inverse_with_tol(DEFAULT_INVERSE_TOL)
    }

    /// Multiplicative inverse, computed in canonical coordinates.
    ///
    /// `rel_tol` is scaled by the modulus: the number is rejected as a
    /// (numerical) zero divisor when `|v+|`, `rho1` or `rho2` is at most
    /// `rel_tol * |u|`.
    pub fn inverse_with_tol(&self, rel_tol: f64) -> Result<Self> {
        let c = self.to_canonical();
        let (rho1, rho2) = (c.rho1(), c.rho2());
        let tau = rel_tol * self.norm();
        if c.vplus.abs() <= tau || rho1 <= tau || rho2 <= tau {
            return Err(Error::NonInvertible {
                vplus: c.vplus,
                rho1,
                rho2,
            });
        }
        let r1 = rho1 * rho1;
        let r2 = rho2 * rho2;
        let inv = CanonicalForm {
            vplus: 1.0 / c.vplus,
            v1: c.v1 / r1,
            tv1: -c.tv1 / r1,
            v2: c.v2 / r2,
            tv2: -c.tv2 / r2,
        };
        canonical::try_from_canonical(&inv)
    }

    /// `self / other`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(*self * other.inverse()?)
    }
}

impl TryFrom<[f64; DIM]> for PentaComplex {
    type Error = Error;

    fn try_from(value: [f64; DIM]) -> Result<Self> {
        Self::new(value)
    }
}

impl From<PentaComplex> for [f64; DIM] {
    fn from(value: PentaComplex) -> Self {
        value.0
    }
}

impl Index<usize> for PentaComplex {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.0[index]
    }
}

impl fmt::Debug for PentaComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PentaComplex({:?})", self.0)
    }
}

impl fmt::Display for PentaComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = &self.0;
        write!(f, "{} + {} h1 + {} h2 + {} h3 + {} h4", x[0], x[1], x[2], x[3], x[4])
    }
}

impl Add for PentaComplex {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut x = self.0;
        for (a, b) in x.iter_mut().zip(rhs.0) {
            *a += b;
        }
        Self(x)
    }
}

impl Sub for PentaComplex {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        let mut x = self.0;
        for (a, b) in x.iter_mut().zip(rhs.0) {
            *a -= b;
        }
        Self(x)
    }
}

impl Neg for PentaComplex {
    type Output = Self;

    fn neg(self) -> Self {
        Self(self.0.map(|x| -x))
    }
}

impl Mul for PentaComplex {
    type Output = Self;

    /// Cyclic convolution: component `r` is the sum of `x_i y_j` over
    /// `i + j = r (mod 5)`.
    ///
    /// The products are summed as symmetric pairs `x_i y_j + x_j y_i`, each
    /// pair counted twice and halved, so `u * v` and `v * u` round
    /// identically.
    fn mul(self, rhs: Self) -> Self {
        let (x, y) = (&self.0, &rhs.0);
        let mut out = [0.0; DIM];
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for i in 0..DIM {
                let j = (r + DIM - i) % DIM;
                acc += x[i] * y[j] + x[j] * y[i];
            }
            *o = 0.5 * acc;
        }
        Self(out)
    }
}

impl Mul<f64> for PentaComplex {
    type Output = Self;

    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl AddAssign for PentaComplex {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for PentaComplex {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for PentaComplex {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl std::iter::Sum for PentaComplex {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

/// 5x5 real matrix representing a 5-complex number; entry `(r, c)` is
/// `x_{(c - r) mod 5}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingMatrix(pub [[f64; DIM]; DIM]);

impl RingMatrix {
    pub fn identity() -> Self {
        PentaComplex::ONE.to_matrix()
    }

    pub fn rows(&self) -> &[[f64; DIM]; DIM] {
        &self.0
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let mut out = [[0.0; DIM]; DIM];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = (0..DIM).map(|k| self.0[r][k] * other.0[k][c]).sum();
            }
        }
        Self(out)
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for r in 0..DIM {
            for c in 0..DIM {
                d = d.max((self.0[r][c] - other.0[r][c]).abs());
            }
        }
        d
    }

    /// Checks that every row is the first row shifted right by its index.
    pub fn check_circulant(&self, tolerance: f64) -> Result<()> {
        let first = self.0[0];
        let mut deviation: f64 = 0.0;
        for r in 1..DIM {
            for c in 0..DIM {
                let expected = first[(c + DIM - r) % DIM];
                deviation = deviation.max((self.0[r][c] - expected).abs());
            }
        }
        // NaN deviation must also be rejected
        if deviation <= tolerance {
            Ok(())
        } else {
            Err(Error::NotCirculant { deviation, tolerance })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(k: usize) -> PentaComplex {
        PentaComplex::basis(k)
    }

    #[test]
    fn basis_table_matches_composition_rules() {
        // h1^2=h2, h2^2=h4, h3^2=h1, h4^2=h3, h1h2=h3, h1h3=h4,
        // h1h4=1, h2h3=1, h2h4=h1, h3h4=h2
        let table = [
            (1, 1, 2),
            (2, 2, 4),
            (3, 3, 1),
            (4, 4, 3),
            (1, 2, 3),
            (1, 3, 4),
            (1, 4, 0),
            (2, 3, 0),
            (2, 4, 1),
            (3, 4, 2),
        ];
        for (j, k, l) in table {
            assert_eq!(basis_product(j, k), l);
            assert_eq!(h(j) * h(k), h(l), "h{j} h{k}");
        }
        for k in 0..5 {
            assert_eq!(basis_product(0, k), k);
        }
    }

    #[test]
    #[should_panic]
    fn basis_product_rejects_out_of_range() {
        basis_product(5, 0);
    }

    #[test]
    fn construction_rejects_non_finite() {
        assert!(matches!(
            PentaComplex::new([0.0, f64::NAN, 0.0, 0.0, 0.0]),
            Err(Error::NonFinite { index: 1, .. })
        ));
        assert!(PentaComplex::new([f64::INFINITY, 0.0, 0.0, 0.0, 0.0]).is_err());
        let parsed: std::result::Result<PentaComplex, _> = serde_json::from_str("[1,2,3,4]");
        assert!(parsed.is_err());
    }

    #[test]
    fn addition_examples() {
        let u = PentaComplex::new([1.5, -2.0, 0.25, 3.0, -7.0]).unwrap();
        assert_eq!(u + PentaComplex::ZERO, u);
        assert_eq!(h(0) + h(1), PentaComplex::new([1.0, 1.0, 0.0, 0.0, 0.0]).unwrap());
        assert_eq!(u + (-u), PentaComplex::ZERO);
    }

    #[test]
    fn product_of_basis_sums() {
        // (h1+h2)(h3+h4) = h4 + 1 + 1 + h1, expanded with the table above
        let lhs = (h(1) + h(2)) * (h(3) + h(4));
        assert_eq!(lhs, PentaComplex::new([2.0, 1.0, 0.0, 0.0, 1.0]).unwrap());
        let u = PentaComplex::new([0.3, -1.0, 2.0, 0.5, 9.0]).unwrap();
        assert_eq!(u * PentaComplex::ONE, u);
    }

    #[test]
    fn matrix_examples() {
        assert_eq!(PentaComplex::ONE.to_matrix(), RingMatrix::identity());
        let m = h(1).to_matrix();
        assert_eq!(m.0[0], [0.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(m.0[1], [0.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(m.0[4], [1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(
            PentaComplex::from_matrix(&RingMatrix::identity()).unwrap(),
            PentaComplex::ONE
        );
        assert_eq!(PentaComplex::from_matrix(&h(3).to_matrix()).unwrap(), h(3));
        let mut bad = h(2).to_matrix();
        bad.0[3][1] += 1e-9;
        assert!(matches!(
            PentaComplex::from_matrix(&bad),
            Err(Error::NotCirculant { .. })
        ));
    }

    #[test]
    fn matrix_rows_follow_shift_pattern() {
        let u = PentaComplex::new([1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        let m = u.to_matrix();
        assert_eq!(m.0[1], [5.0, 1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m.0[2], [4.0, 5.0, 1.0, 2.0, 3.0]);
        assert_eq!(m.0[3], [3.0, 4.0, 5.0, 1.0, 2.0]);
        assert_eq!(m.0[4], [2.0, 3.0, 4.0, 5.0, 1.0]);
    }

    #[test]
    fn inverse_examples() {
        assert!(PentaComplex::ONE.inverse().unwrap().max_abs_diff(&PentaComplex::ONE) < 1e-15);
        let inv = h(1).inverse().unwrap();
        assert!(inv.max_abs_diff(&h(4)) < 1e-15, "{inv:?}");
        let eplus = PentaComplex::new([0.2; 5]).unwrap();
        assert!(matches!(eplus.inverse(), Err(Error::NonInvertible { .. })));
        assert!(matches!(PentaComplex::ZERO.inverse(), Err(Error::NonInvertible { .. })));
    }

    #[test]
    fn display_form() {
        let u = PentaComplex::new([1.0, 2.0, -3.0, 0.5, 0.0]).unwrap();
        assert_eq!(u.to_string(), "1 + 2 h1 + -3 h2 + 0.5 h3 + 0 h4");
    }

    #[test]
    fn powu_matches_repeated_products() {
        assert_eq!(h(1).powu(5), PentaComplex::ONE);
        assert_eq!(h(2).powu(0), PentaComplex::ONE);
        let u = PentaComplex::new([0.5, 0.1, -0.2, 0.3, 0.05]).unwrap();
        let direct = u * u * u * u * u * u * u;
        assert!(u.powu(7).max_abs_diff(&direct) < 1e-14);
    }
}
