//! The polar cosexponential functions in five dimensions,
//!
//! ```text
//! g5k(y) = sum_{p >= 0} y^(k+5p) / (k+5p)!,   k = 0..4,
//! ```
//!
//! the five interleaved sub-series of `e^y`. They are evaluated three
//! independent ways: the truncated series, the sum over fifth roots of unity,
//! and the real radical closed forms obtained by multiplying `e^((h1+h4)y)`
//! with `e^((h1-h4)y)`.

mod coefficients;

use std::f64::consts::PI;

use serde::Serialize;

use crate::algebra::PentaComplex;
use crate::error::{Error, Result};

pub use coefficients::{power_coeffs, radical_a, radical_b, PowerCoefficients, PowerFamily, QSqrt5};

/// Largest `|y|` accepted by [`g5_series`].
pub const SERIES_DOMAIN: f64 = 50.0;

/// Terms smaller than this fraction of the running sum end the series early.
const SERIES_REL_CUTOFF: f64 = 1e-18;

/// Real constants of the radical closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadicalConstants {
    /// `(sqrt5 - 1)/2`, root of `a^2 + a - 1 = 0`.
    pub a: f64,
    /// `-(5 + sqrt5)/2`, root of `b^2 + 5b + 5 = 0`.
    pub b: f64,
}

impl RadicalConstants {
    pub fn get() -> Self {
        let s5 = 5f64.sqrt();
        Self {
            a: (s5 - 1.0) / 2.0,
            b: -(5.0 + s5) / 2.0,
        }
    }
}

fn check_index(k: usize) -> Result<()> {
    if k < 5 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("cosexponential index {k} not in 0..5")))
    }
}

/// Partial sum of the first `nterms` terms of `g5k(y)`.
///
/// Terms are built incrementally (`t_{n+1} = t_n y/(n+1)`), so no factorial
/// is ever formed. Summation stops early once past the peak term and the
/// current term is below `1e-18` of the sum.
pub fn g5_series(k: usize, y: f64, nterms: usize) -> Result<f64> {
    check_index(k)?;
    if nterms == 0 {
        return Err(Error::InvalidArgument("nterms must be at least 1".into()));
    }
    if y.is_nan() || y.abs() > SERIES_DOMAIN {
        return Err(Error::DomainTooLarge { y });
    }
    let mut term = 1.0;
    for n in 0..k {
        term *= y / (n + 1) as f64;
    }
    let mut sum = 0.0;
    let mut n = k;
    for _ in 0..nterms {
        sum += term;
        if (n as f64) > y.abs() && term.abs() <= SERIES_REL_CUTOFF * sum.abs() {
            break;
        }
        for _ in 0..5 {
            n += 1;
            term *= y / n as f64;
        }
    }
    Ok(sum)
}

/// `g5k(y)` as the average over the fifth roots of unity,
/// `(1/5) sum_l exp(y cos(2 pi l/5)) cos(y sin(2 pi l/5) - 2 pi k l/5)`.
pub fn g5_closed(k: usize, y: f64) -> Result<f64> {
    check_index(k)?;
    if y == 0.0 {
        // the root-of-unity cosines do not cancel exactly in floating point
        return Ok(if k == 0 { 1.0 } else { 0.0 });
    }
    let sum: f64 = (0..5)
        .map(|l| {
            let angle = 2.0 * PI * l as f64 / 5.0;
            (y * angle.cos()).exp() * (y * angle.sin() - angle * k as f64).cos()
        })
        .sum();
    Ok(sum / 5.0)
}

/// `g5k(y)` from the real radical closed forms.
///
/// Those forms are written for the doubled argument, `g5k(2t)` as a function
/// of `t`; this function takes the natural argument and evaluates them at
/// `t = y/2`.
pub fn g5_closed_radical(k: usize, y: f64) -> Result<f64> {
    check_index(k)?;
    let RadicalConstants { a, b } = RadicalConstants::get();
    let s5 = 5f64.sqrt();
    let t = y / 2.0;
    let w1 = (-b).sqrt();
    let w2 = (5.0 + b).sqrt();
    let grow = (a * t).exp();
    let decay = (-(1.0 + a) * t).exp();
    let (c1, s1) = ((w1 * t).cos(), (w1 * t).sin());
    let (c2, s2) = ((w2 * t).cos(), (w2 * t).sin());
    let lead = (2.0 * t).exp() / 5.0;
    let alpha = (s5 - 1.0) / 2.0;
    let beta = (1.0 + s5) / 2.0;
    let gamma = (5.0 + s5) / (2.0 * w1);
    let delta = (5.0 / -b).sqrt();
    let value = match k {
        0 => lead + 0.4 * grow * c1 + 0.4 * decay * c2,
        1 => lead + grow / 5.0 * (alpha * c1 + gamma * s1) + decay / 5.0 * (-beta * c2 + delta * s2),
        2 => lead + grow / 5.0 * (-beta * c1 + delta * s1) + decay / 5.0 * (alpha * c2 - gamma * s2),
        3 => lead + grow / 5.0 * (-beta * c1 - delta * s1) + decay / 5.0 * (alpha * c2 + gamma * s2),
        _ => lead + grow / 5.0 * (alpha * c1 - gamma * s1) + decay / 5.0 * (-beta * c2 - delta * s2),
    };
    Ok(value)
}

/// The five functions at a common argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CosexpVector {
    pub y: f64,
    pub g: [f64; 5],
}

impl CosexpVector {
    /// Evaluates all five with [`g5_closed`].
    pub fn at(y: f64) -> Self {
        let g = std::array::from_fn(|k| g5_closed(k, y).expect("index in range"));
        Self { y, g }
    }

    pub fn sum(&self) -> f64 {
        self.g.iter().sum()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.g.iter().map(|x| x * x).sum()
    }
}

fn inverse_mod5(k: usize) -> usize {
    (1..5).find(|j| (j * k) % 5 == 1).expect("k is a unit mod 5")
}

/// Which cosexponential sits on `h_j` in `e^(h_k y)`: the exponent `n` with
/// `k n = j (mod 5)`.
pub fn exp_basis_index(k: usize, j: usize) -> usize {
    (j * inverse_mod5(k)) % 5
}

/// `e^(h_k y)` for `k = 1..4`, a permutation of the cosexponential vector.
pub fn exp_basis(k: usize, y: f64) -> Result<PentaComplex> {
    if !(1..5).contains(&k) {
        return Err(Error::InvalidArgument(format!("basis index {k} not in 1..5")));
    }
    let g = CosexpVector::at(y).g;
    PentaComplex::checked(std::array::from_fn(|j| g[exp_basis_index(k, j)]))
}

/// The `l`-th ring power of `e^(h_k y)`, computed by repeated multiplication.
/// Equals `e^(h_k l y)`.
pub fn cosexp_power(k: usize, y: f64, l: u32) -> Result<PentaComplex> {
    let base = exp_basis(k, y)?;
    let mut acc = PentaComplex::ONE;
    for _ in 0..l {
        acc *= base;
    }
    PentaComplex::checked(acc.components())
}

/// `e^((h1 + h4) y)` from its closed form in exponentials.
pub fn exp_h1_plus_h4(y: f64) -> Result<PentaComplex> {
    let a = RadicalConstants::get().a;
    let e2 = (2.0 * y).exp() / 5.0;
    let ea = (a * y).exp();
    let eb = (-(1.0 + a) * y).exp();
    let scalar = e2 + 0.4 * ea + 0.4 * eb;
    let c14 = e2 + a / 5.0 * ea - (a + 1.0) / 5.0 * eb;
    let c23 = e2 - (a + 1.0) / 5.0 * ea + a / 5.0 * eb;
    PentaComplex::checked([scalar, c14, c23, c23, c14])
}

/// `e^((h1 - h4) y)` from its closed form in trigonometric functions.
pub fn exp_h1_minus_h4(y: f64) -> Result<PentaComplex> {
    let b = RadicalConstants::get().b;
    let w1 = (-b).sqrt();
    let w2 = (5.0 + b).sqrt();
    let root5b = (-5.0 * b).sqrt();
    let (c1, s1) = ((w1 * y).cos(), (w1 * y).sin());
    let (c2, s2) = ((w2 * y).cos(), (w2 * y).sin());
    let scalar = 0.2 + 0.4 * c1 + 0.4 * c2;
    let sym14 = 0.2 - (b + 3.0) / 5.0 * c1 + (b + 2.0) / 5.0 * c2;
    let sym23 = 0.2 + (b + 2.0) / 5.0 * c1 - (b + 3.0) / 5.0 * c2;
    let anti14 = w1 / 5.0 * s1 + s2 / root5b;
    let anti23 = -(2.0 * b + 5.0) / (5.0 * w1) * s1 + (b + 2.0) / root5b * s2;
    PentaComplex::checked([scalar, sym14 + anti14, sym23 + anti23, sym23 - anti23, sym14 - anti14])
}

/// Writes the cosexponential table as CSV, `y,g50,g51,g52,g53,g54`, with
/// every value printed to 17 significant digits.
///
/// Rows run from `from` while `y <= to` (inclusive up to half a step of
/// rounding), with `y = from + i * step`.
pub fn write_table<W: std::io::Write>(mut out: W, from: f64, to: f64, step: f64) -> Result<()> {
    if step.is_nan() || step <= 0.0 || !from.is_finite() || !to.is_finite() || to < from {
        return Err(Error::InvalidArgument(format!(
            "table range needs finite from <= to and step > 0 (got {from}, {to}, {step})"
        )));
    }
    let io = |e: std::io::Error| Error::InvalidArgument(format!("write failed: {e}"));
    writeln!(out, "y,g50,g51,g52,g53,g54").map_err(io)?;
    let n = ((to - from) / step + 0.5).floor() as usize;
    for i in 0..=n {
        let y = from + i as f64 * step;
        let row = CosexpVector::at(y);
        write!(out, "{}", crate::format::float17(y)).map_err(io)?;
        for g in row.g {
            write!(out, ",{}", crate::format::float17(g)).map_err(io)?;
        }
        writeln!(out).map_err(io)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn series_at_zero() {
        assert_eq!(g5_series(0, 0.0, 7).unwrap(), 1.0);
        for k in 1..5 {
            assert_eq!(g5_series(k, 0.0, 7).unwrap(), 0.0);
        }
    }

    #[test]
    fn series_interleave_the_exponential() {
        let s: f64 = (0..5).map(|k| g5_series(k, 1.0, 40).unwrap()).sum();
        assert!((s - E).abs() < 1e-15, "{s}");
    }

    #[test]
    fn series_domain_and_arguments() {
        assert_eq!(g5_series(0, 50.5, 10), Err(Error::DomainTooLarge { y: 50.5 }));
        assert!(g5_series(0, f64::NAN, 10).is_err());
        assert!(g5_series(5, 1.0, 10).is_err());
        assert!(g5_series(0, 1.0, 0).is_err());
        assert!(g5_series(2, 50.0, 200).unwrap().is_finite());
    }

    #[test]
    fn closed_form_at_zero() {
        assert!((g5_closed(0, 0.0).unwrap() - 1.0).abs() < 1e-16);
        assert!((g5_closed_radical(0, 0.0).unwrap() - 1.0).abs() < 1e-16);
        for k in 1..5 {
            assert!(g5_closed(k, 0.0).unwrap().abs() < 1e-15);
            assert!(g5_closed_radical(k, 0.0).unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn no_definite_parity() {
        let p = g5_closed(1, 1.0).unwrap();
        let m = g5_closed(1, -1.0).unwrap();
        assert!((p - m).abs() > 1e-3 && (p + m).abs() > 1e-3, "{p} {m}");
    }

    #[test]
    fn radical_matches_series_at_one() {
        let r = g5_closed_radical(2, 1.0).unwrap();
        let s = g5_series(2, 1.0, 60).unwrap();
        assert!((r - s).abs() < 1e-15, "{r} {s}");
    }

    #[test]
    fn radical_constants_solve_their_quadratics() {
        let RadicalConstants { a, b } = RadicalConstants::get();
        assert!((a * a + a - 1.0).abs() < 1e-15);
        assert!((b * b + 5.0 * b + 5.0).abs() < 1e-14);
        // a/2 = cos(2 pi/5) and -b/4 = sin^2(2 pi/5)
        assert!((a / 2.0 - (2.0 * PI / 5.0).cos()).abs() < 1e-16);
        assert!((-b / 4.0 - (2.0 * PI / 5.0).sin().powi(2)).abs() < 1e-15);
    }

    #[test]
    fn exp_basis_permutation_pattern() {
        // e^(h1 y): h_j carries g5j; e^(h2 y): h1,h2,h3,h4 carry g53,g51,g54,g52
        let table = [[0, 1, 2, 3, 4], [0, 3, 1, 4, 2], [0, 2, 4, 1, 3], [0, 4, 3, 2, 1]];
        for (k, row) in (1..5).zip(table) {
            for (j, &expected) in row.iter().enumerate() {
                assert_eq!(exp_basis_index(k, j), expected, "k={k} j={j}");
            }
        }
        assert!(exp_basis(1, 0.0).unwrap().max_abs_diff(&PentaComplex::ONE) < 1e-15);
        let y = 0.8;
        assert_eq!(exp_basis(1, y).unwrap()[2], g5_closed(2, y).unwrap());
        assert_eq!(exp_basis(2, y).unwrap()[2], g5_closed(1, y).unwrap());
        assert!(exp_basis(0, y).is_err());
    }

    #[test]
    fn cosexp_power_small_cases() {
        let y = 0.7;
        assert_eq!(cosexp_power(3, y, 0).unwrap(), PentaComplex::ONE);
        assert_eq!(cosexp_power(3, y, 1).unwrap(), exp_basis(3, y).unwrap());
        let lhs = cosexp_power(1, y, 3).unwrap();
        let rhs = exp_basis(1, 3.0 * y).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-11);
    }

    #[test]
    fn expansion_coefficients_match_ring_powers() {
        let h = PentaComplex::basis;
        let plus = h(1) + h(4);
        let minus = h(1) - h(4);
        for m in 1..=20u32 {
            let c = PowerFamily::APlus.recurrence(m);
            let expected = plus.scale(c[0] as f64) + (h(2) + h(3)).scale(c[1] as f64) + h(0).scale(c[2] as f64);
            assert_eq!(plus.powu(m), expected, "m={m}");
            let d = PowerFamily::DMinus.recurrence(m);
            let expected = minus.scale(d[0] as f64) + (h(2) - h(3)).scale(d[1] as f64);
            assert_eq!(minus.powu(2 * m + 1), expected, "m={m}");
            let f = PowerFamily::FMinus.recurrence(m);
            let expected = plus.scale(f[0] as f64) + (h(2) + h(3)).scale(f[1] as f64) + h(0).scale(f[2] as f64);
            assert_eq!(minus.powu(2 * m), expected, "m={m}");
        }
    }

    #[test]
    fn half_products_multiply_to_doubled_argument() {
        for y in [-1.3, 0.0, 0.4, 2.2] {
            let lhs = exp_h1_plus_h4(y).unwrap() * exp_h1_minus_h4(y).unwrap();
            let rhs = exp_basis(1, 2.0 * y).unwrap();
            assert!(lhs.max_abs_diff(&rhs) < 1e-10 * (1.0 + rhs.norm()), "y={y}");
        }
    }

    #[test]
    fn table_layout() {
        let mut buf = Vec::new();
        write_table(&mut buf, -0.1, 0.1, 0.05).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "y,g50,g51,g52,g53,g54");
        assert_eq!(lines.len(), 6);
        let zero_row: Vec<f64> = lines[3].split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!(zero_row[0], 0.0);
        assert!(write_table(Vec::new(), 1.0, 0.0, 0.1).is_err());
        assert!(write_table(Vec::new(), 0.0, 1.0, 0.0).is_err());
    }
}
