//! Canonical (idempotent) decomposition.
//!
//! The transform sends `(x0..x4)` to `(v+, v1, ~v1, v2, ~v2)`: a real line and
//! two planes in which multiplication acts componentwise. The transform rows
//! are the discrete Fourier characters of the cyclic group of order five,
//! written with the radicals `p = (sqrt5 - 1)/4` and `q = sqrt((5 + sqrt5)/8)`.
//!
//! The dependent variables `v3 = v2, ~v3 = -~v2, v4 = v1, ~v4 = -~v1` are
//! never stored.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{PentaComplex, DIM};
use crate::error::Result;

/// The radical constants of the canonical transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformConstants {
    /// `(sqrt5 - 1)/4`, equal to `cos(2 pi/5)`.
    pub p: f64,
    /// `sqrt((5 + sqrt5)/8)`, equal to `sin(2 pi/5)`.
    pub q: f64,
}

impl TransformConstants {
    pub fn get() -> Self {
        let s5 = 5f64.sqrt();
        Self {
            p: (s5 - 1.0) / 4.0,
            q: ((5.0 + s5) / 8.0).sqrt(),
        }
    }

    /// `2p^2 - 1`, equal to `cos(4 pi/5)`.
    pub fn c2(&self) -> f64 {
        2.0 * self.p * self.p - 1.0
    }

    /// `2pq`, equal to `sin(4 pi/5)`.
    pub fn s2(&self) -> f64 {
        2.0 * self.p * self.q
    }
}

/// The 5x5 matrix taking components to canonical variables.
pub fn transform_matrix() -> [[f64; DIM]; DIM] {
    let t = TransformConstants::get();
    let (p, q, c2, s2) = (t.p, t.q, t.c2(), t.s2());
    [
        [1.0, 1.0, 1.0, 1.0, 1.0],
        [1.0, p, c2, c2, p],
        [0.0, q, s2, -s2, -q],
        [1.0, c2, p, p, c2],
        [0.0, s2, -q, q, -s2],
    ]
}

/// The orthonormal rotation to the axes `(xi+, xi1, eta1, xi2, eta2)`.
pub fn rotation_matrix() -> [[f64; DIM]; DIM] {
    let mut m = transform_matrix();
    let row_scale = [
        1.0 / 5f64.sqrt(),
        (2.0 / 5.0f64).sqrt(),
        (2.0 / 5.0f64).sqrt(),
        (2.0 / 5.0f64).sqrt(),
        (2.0 / 5.0f64).sqrt(),
    ];
    for (row, s) in m.iter_mut().zip(row_scale) {
        for x in row.iter_mut() {
            *x *= s;
        }
    }
    m
}

/// Canonical variables of a 5-complex number.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub vplus: f64,
    pub v1: f64,
    pub tv1: f64,
    pub v2: f64,
    pub tv2: f64,
}

impl CanonicalForm {
    pub const ONE: Self = Self {
        vplus: 1.0,
        v1: 1.0,
        tv1: 0.0,
        v2: 1.0,
        tv2: 0.0,
    };

    pub fn from_parts(vplus: f64, plane1: Complex64, plane2: Complex64) -> Self {
        Self {
            vplus,
            v1: plane1.re,
            tv1: plane1.im,
            v2: plane2.re,
            tv2: plane2.im,
        }
    }

    pub fn as_array(&self) -> [f64; DIM] {
        [self.vplus, self.v1, self.tv1, self.v2, self.tv2]
    }

    pub fn from_array(a: [f64; DIM]) -> Self {
        Self {
            vplus: a[0],
            v1: a[1],
            tv1: a[2],
            v2: a[3],
            tv2: a[4],
        }
    }

    /// Plane `k` (1 or 2) as the complex number `v_k + i ~v_k`.
    ///
    /// # Panics
    ///
    /// Panics unless `k` is 1 or 2.
    pub fn plane(&self, k: usize) -> Complex64 {
        match k {
            1 => Complex64::new(self.v1, self.tv1),
            2 => Complex64::new(self.v2, self.tv2),
            _ => panic!("plane index must be 1 or 2, got {k}"),
        }
    }

    pub fn rho1(&self) -> f64 {
        self.v1.hypot(self.tv1)
    }

    pub fn rho2(&self) -> f64 {
        self.v2.hypot(self.tv2)
    }

    /// Componentwise product: real product on the line, complex product in
    /// each plane.
    pub fn multiply(&self, other: &Self) -> Self {
        Self::from_parts(
            self.vplus * other.vplus,
            self.plane(1) * other.plane(1),
            self.plane(2) * other.plane(2),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_array(std::array::from_fn(|i| self.as_array()[i] + other.as_array()[i]))
    }

    pub fn to_penta(&self) -> PentaComplex {
        from_canonical(self)
    }
}

/// Applies the canonical transform.
pub fn to_canonical(u: &PentaComplex) -> CanonicalForm {
    let x = u.components();
    let m = transform_matrix();
    CanonicalForm::from_array(std::array::from_fn(|r| (0..DIM).map(|c| m[r][c] * x[c]).sum()))
}

/// Canonical multiplication of two canonical forms.
pub fn canonical_multiply(a: &CanonicalForm, b: &CanonicalForm) -> CanonicalForm {
    a.multiply(b)
}

/// The canonical basis `e+, e1, ~e1, e2, ~e2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalBasis {
    pub eplus: PentaComplex,
    pub e1: PentaComplex,
    pub te1: PentaComplex,
    pub e2: PentaComplex,
    pub te2: PentaComplex,
}

impl CanonicalBasis {
    pub fn as_array(&self) -> [PentaComplex; DIM] {
        [self.eplus, self.e1, self.te1, self.e2, self.te2]
    }

    /// `e_k` for plane `k`.
    pub fn e(&self, k: usize) -> PentaComplex {
        match k {
            1 => self.e1,
            2 => self.e2,
            _ => panic!("plane index must be 1 or 2, got {k}"),
        }
    }

    /// `~e_k` for plane `k`.
    pub fn te(&self, k: usize) -> PentaComplex {
        match k {
            1 => self.te1,
            2 => self.te2,
            _ => panic!("plane index must be 1 or 2, got {k}"),
        }
    }
}

/// The canonical basis: rows of the transform matrix scaled by `1/5` (first
/// row) and `2/5` (the rest).
pub fn canonical_basis() -> &'static CanonicalBasis {
    static BASIS: OnceLock<CanonicalBasis> = OnceLock::new();
    BASIS.get_or_init(|| {
        let m = transform_matrix();
        let row = |r: usize, s: f64| PentaComplex::from_raw(m[r].map(|x| x * s));
        let eplus = row(0, 0.2);
        let e1 = row(1, 0.4);
        // complement keeps e+ + e1 + e2 == 1 bit for bit
        let partial = eplus + e1;
        let e2 = PentaComplex::from_raw(std::array::from_fn(|j| {
            let one = if j == 0 { 1.0 } else { 0.0 };
            one - partial.components()[j]
        }));
        CanonicalBasis {
            eplus,
            e1,
            te1: row(2, 0.4),
            e2,
            te2: row(4, 0.4),
        }
    })
}

fn assemble(c: &CanonicalForm) -> [f64; DIM] {
    let basis = canonical_basis().as_array();
    let coeffs = c.as_array();
    let mut x = [0.0; DIM];
    for (b, s) in basis.iter().zip(coeffs) {
        for (xi, bi) in x.iter_mut().zip(b.components()) {
            *xi += s * bi;
        }
    }
    x
}

/// Reassembles `e+ v+ + e1 v1 + ~e1 ~v1 + e2 v2 + ~e2 ~v2`.
///
/// The canonical variables must be finite and small enough that the sum does
/// not overflow; use [`try_from_canonical`] otherwise.
pub fn from_canonical(c: &CanonicalForm) -> PentaComplex {
    PentaComplex::from_raw(assemble(c))
}

/// [`from_canonical`] reporting non-finite results as [`crate::Error::Overflow`].
pub fn try_from_canonical(c: &CanonicalForm) -> Result<PentaComplex> {
    PentaComplex::checked(assemble(c))
}

/// Coordinates on the rotated orthonormal axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotatedCoords {
    pub xiplus: f64,
    pub xi1: f64,
    pub eta1: f64,
    pub xi2: f64,
    pub eta2: f64,
}

impl RotatedCoords {
    pub fn as_array(&self) -> [f64; DIM] {
        [self.xiplus, self.xi1, self.eta1, self.xi2, self.eta2]
    }

    /// `(xi_k, eta_k)` for plane `k`.
    pub fn plane(&self, k: usize) -> [f64; 2] {
        match k {
            1 => [self.xi1, self.eta1],
            2 => [self.xi2, self.eta2],
            _ => panic!("plane index must be 1 or 2, got {k}"),
        }
    }
}

pub fn rotated_coords(u: &PentaComplex) -> RotatedCoords {
    let x = u.components();
    let t = rotation_matrix();
    let r: [f64; DIM] = std::array::from_fn(|i| (0..DIM).map(|c| t[i][c] * x[c]).sum());
    RotatedCoords {
        xiplus: r[0],
        xi1: r[1],
        eta1: r[2],
        xi2: r[3],
        eta2: r[4],
    }
}

/// Block-diagonal form of the matrix of a number: a 1x1 block and two 2x2
/// blocks `[[v_k, ~v_k], [-~v_k, v_k]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IrreducibleRep {
    pub vplus: f64,
    pub block1: [[f64; 2]; 2],
    pub block2: [[f64; 2]; 2],
}

impl IrreducibleRep {
    pub fn from_canonical(c: &CanonicalForm) -> Self {
        let block = |v: f64, tv: f64| [[v, tv], [-tv, v]];
        Self {
            vplus: c.vplus,
            block1: block(c.v1, c.tv1),
            block2: block(c.v2, c.tv2),
        }
    }

    /// The full 5x5 block-diagonal matrix.
    pub fn to_dense(&self) -> [[f64; DIM]; DIM] {
        let mut m = [[0.0; DIM]; DIM];
        m[0][0] = self.vplus;
        for r in 0..2 {
            for c in 0..2 {
                m[1 + r][1 + c] = self.block1[r][c];
                m[3 + r][3 + c] = self.block2[r][c];
            }
        }
        m
    }

    /// Blockwise product.
    pub fn multiply(&self, other: &Self) -> Self {
        let mul2 = |a: &[[f64; 2]; 2], b: &[[f64; 2]; 2]| {
            let mut out = [[0.0; 2]; 2];
            for r in 0..2 {
                for c in 0..2 {
                    out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
                }
            }
            out
        };
        Self {
            vplus: self.vplus * other.vplus,
            block1: mul2(&self.block1, &other.block1),
            block2: mul2(&self.block2, &other.block2),
        }
    }
}

pub fn irreducible_rep(u: &PentaComplex) -> IrreducibleRep {
    IrreducibleRep::from_canonical(&to_canonical(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn h(k: usize) -> PentaComplex {
        PentaComplex::basis(k)
    }

    #[test]
    fn constants_are_fifth_roots_of_unity() {
        let t = TransformConstants::get();
        assert!((t.p - (2.0 * PI / 5.0).cos()).abs() < 1e-16);
        assert!((t.q - (2.0 * PI / 5.0).sin()).abs() < 1e-15);
        assert!((t.c2() - (4.0 * PI / 5.0).cos()).abs() < 1e-15);
        assert!((t.s2() - (4.0 * PI / 5.0).sin()).abs() < 1e-15);
    }

    #[test]
    fn transform_of_unit_and_h1() {
        let c = to_canonical(&PentaComplex::ONE);
        assert_eq!(c, CanonicalForm::ONE);
        let t = TransformConstants::get();
        let c = to_canonical(&h(1));
        assert_eq!(c.as_array(), [1.0, t.p, t.q, t.c2(), t.s2()]);
        let eplus = PentaComplex::new([0.2; 5]).unwrap();
        let c = to_canonical(&eplus).as_array();
        assert!((c[0] - 1.0).abs() < 1e-15);
        for x in &c[1..] {
            assert!(x.abs() < 1e-16, "{c:?}");
        }
    }

    #[test]
    fn basis_first_row_and_resolution_of_identity() {
        let b = canonical_basis();
        for x in b.eplus.components() {
            assert_eq!(x, 0.2);
        }
        let sum = b.eplus + b.e1 + b.e2;
        assert_eq!(sum, PentaComplex::ONE);
        assert!((b.eplus.norm() - 1.0 / 5f64.sqrt()).abs() < 1e-15);
        for e in [b.e1, b.te1, b.e2, b.te2] {
            assert!((e.norm() - (0.4f64).sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn from_canonical_examples() {
        let one = from_canonical(&CanonicalForm::ONE);
        assert!(one.max_abs_diff(&PentaComplex::ONE) < 1e-15);
        let ep = from_canonical(&CanonicalForm::from_array([1.0, 0.0, 0.0, 0.0, 0.0]));
        assert_eq!(ep, PentaComplex::new([0.2; 5]).unwrap());
    }

    #[test]
    fn canonical_basis_images_are_unit_vectors() {
        for (i, e) in canonical_basis().as_array().iter().enumerate() {
            let c = to_canonical(e).as_array();
            for (j, x) in c.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((x - expected).abs() < 1e-15, "basis {i}: {c:?}");
            }
        }
    }

    #[test]
    fn canonical_multiply_examples() {
        let c = CanonicalForm::from_array([0.3, -1.0, 2.0, 0.7, 0.1]);
        assert_eq!(c.multiply(&CanonicalForm::ONE), c);
        let e1 = CanonicalForm::from_array([0.0, 1.0, 0.0, 0.0, 0.0]);
        let te1 = CanonicalForm::from_array([0.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(canonical_multiply(&e1, &te1), te1);
        assert_eq!(
            canonical_multiply(&te1, &te1),
            CanonicalForm::from_array([0.0, -1.0, 0.0, 0.0, 0.0])
        );
    }

    #[test]
    fn rotation_is_orthonormal() {
        let t = rotation_matrix();
        for i in 0..DIM {
            for j in 0..DIM {
                let dot: f64 = (0..DIM).map(|c| t[i][c] * t[j][c]).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expected).abs() < 1e-15, "rows {i},{j}: {dot}");
            }
        }
    }

    #[test]
    fn rotated_coords_of_unit() {
        let r = rotated_coords(&PentaComplex::ONE);
        let s = (0.4f64).sqrt();
        let expected = [1.0 / 5f64.sqrt(), s, 0.0, s, 0.0];
        for (a, b) in r.as_array().iter().zip(expected) {
            assert!((a - b).abs() < 1e-16);
        }
    }

    #[test]
    fn irreducible_rep_of_unit() {
        let rep = irreducible_rep(&PentaComplex::ONE);
        assert_eq!(rep.vplus, 1.0);
        assert_eq!(rep.block1, [[1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(rep.block2, [[1.0, 0.0], [0.0, 1.0]]);
    }

    #[test]
    #[should_panic]
    fn plane_index_checked() {
        CanonicalForm::ONE.plane(3);
    }
}
