//! Power series in a 5-complex variable and numerical checks of analyticity.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{PentaComplex, DIM};
use crate::canonical::{to_canonical, try_from_canonical, CanonicalForm};
use crate::error::{Error, Result};

pub const DEFAULT_WINDOW: usize = 8;
pub const CR_STEP: f64 = 1e-6;
pub const CR_TOL: f64 = 1e-6;
pub const SECOND_ORDER_STEP: f64 = 3e-4;
pub const SECOND_ORDER_TOL: f64 = 1e-4;

/// Ratio growth exponent beyond which a limit is reported as divergent.
const DIVERGENCE_EXPONENT: f64 = 0.5;

/// `a0 + a1 u + a2 u^2 + ...` with finitely many terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSeries {
    pub coeffs: Vec<PentaComplex>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<PentaComplex>) -> Self {
        PowerSeries { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        coeffs
            .iter()
            .map(|&c| PentaComplex::real(c))
            .collect::<Result<_>>()
            .map(PowerSeries::new)
    }

    /// Truncated exponential series, coefficients `1/l!`.
    pub fn exponential(nterms: usize) -> Self {
        let mut c = Vec::with_capacity(nterms);
        let mut term = 1.0;
        for l in 0..nterms {
            c.push(term);
            term /= (l + 1) as f64;
        }
        PowerSeries::from_real(&c).expect("finite coefficients")
    }

    /// Truncated geometric series with ratio `r`, coefficients `r^l`.
    pub fn geometric(r: f64, nterms: usize) -> Result<Self> {
        PowerSeries::from_real(&(0..nterms).map(|l| r.powi(l as i32)).collect::<Vec<_>>())
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation in the ring.
    pub fn eval(&self, u: &PentaComplex) -> Result<PentaComplex> {
        let mut acc = PentaComplex::ZERO;
        for a in self.coeffs.iter().rev() {
            acc = acc * *u + *a;
        }
        PentaComplex::checked(acc.components())
    }

    /// Evaluation through the canonical components: a real series in `v+`
    /// and a complex series in each plane.
    pub fn eval_canonical(&self, u: &PentaComplex) -> Result<PentaComplex> {
        let c = to_canonical(u);
        let (w1, w2) = (c.plane(1), c.plane(2));
        let mut acc = (0.0, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for a in self.coeffs.iter().rev() {
            let s = coefficient_spectrum(a);
            acc = (
                acc.0 * c.vplus + s.aplus,
                acc.1 * w1 + Complex64::new(s.a1, s.at1),
                acc.2 * w2 + Complex64::new(s.a2, s.at2),
            );
        }
        let out = CanonicalForm::from_parts(acc.0, acc.1, acc.2);
        if !out.as_array().iter().all(|x| x.is_finite()) {
            return Err(Error::Overflow);
        }
        try_from_canonical(&out)
    }

    /// Termwise derivative.
    pub fn derivative(&self) -> PowerSeries {
        PowerSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(l, a)| a.scale(l as f64))
                .collect(),
        )
    }
}

pub fn series_eval(s: &PowerSeries, u: &PentaComplex) -> Result<PentaComplex> {
    s.eval(u)
}

/// Canonical projections of one coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientSpectrum {
    pub aplus: f64,
    pub a1: f64,
    pub at1: f64,
    pub a2: f64,
    pub at2: f64,
}

/// `A+ = sum a_p`, `A_k = sum a_p cos(2 pi k p/5)`, `~A_k = sum a_p sin(2 pi k p/5)`.
pub fn coefficient_spectrum(a: &PentaComplex) -> CoefficientSpectrum {
    let x = a.components();
    let proj =
        |k: usize, f: fn(f64) -> f64| -> f64 { (0..DIM).map(|p| x[p] * f(2.0 * PI * (k * p) as f64 / 5.0)).sum() };
    CoefficientSpectrum {
        aplus: x.iter().sum(),
        a1: proj(1, f64::cos),
        at1: proj(1, f64::sin),
        a2: proj(2, f64::cos),
        at2: proj(2, f64::sin),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Converged,
    DivergesUpward,
    DivergesDownward,
}

/// One ratio limit estimated from the tail of a coefficient sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioLimit {
    /// Infinite when the ratios diverge upward, zero when they collapse.
    pub value: f64,
    /// Median of the trailing ratios.
    pub median: f64,
    /// `ln(r_last/r_first) / ln(l_last/l_first)` over the window.
    pub growth_exponent: f64,
    pub monotone: bool,
    pub trend: Trend,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailWindow {
    pub window: usize,
    pub first_index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceReport {
    /// Radius in the modulus, `lim |a_l| / (sqrt5 |a_{l+1}|)`.
    pub c: RatioLimit,
    pub cplus: RatioLimit,
    pub c1: RatioLimit,
    pub c2: RatioLimit,
    pub method: TailWindow,
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

fn ratio_limit(magnitudes: &[f64], first: usize, scale: f64) -> Result<RatioLimit> {
    if let Some(i) = magnitudes[first..].iter().position(|&m| m == 0.0) {
        return Err(Error::ZeroTail { index: first + i });
    }
    let ratios: Vec<f64> = magnitudes[first..].windows(2).map(|w| w[0] / (scale * w[1])).collect();
    let (r0, rn) = (ratios[0], ratios[ratios.len() - 1]);
    let l0 = (first + 1) as f64;
    let ln = (first + ratios.len()) as f64;
    let growth_exponent = (rn / r0).ln() / (ln / l0).ln();
    let increasing = ratios.windows(2).all(|w| w[1] >= w[0]);
    let decreasing = ratios.windows(2).all(|w| w[1] <= w[0]);
    let trend = if increasing && growth_exponent > DIVERGENCE_EXPONENT {
        Trend::DivergesUpward
    } else if decreasing && growth_exponent < -DIVERGENCE_EXPONENT {
        Trend::DivergesDownward
    } else {
        Trend::Converged
    };
    let median = median(&mut ratios.clone());
    let value = match trend {
        Trend::Converged => median,
        Trend::DivergesUpward => f64::INFINITY,
        Trend::DivergesDownward => 0.0,
    };
    Ok(RatioLimit {
        value,
        median,
        growth_exponent,
        monotone: increasing || decreasing,
        trend,
    })
}

/// Estimates the convergence radii from the median of the last `window`
/// consecutive coefficient ratios.
pub fn convergence_radii(s: &PowerSeries, window: usize) -> Result<ConvergenceReport> {
    let n = s.len();
    if window < 2 || n < window + 2 {
        return Err(Error::InsufficientTerms {
            needed: window.max(2) + 2,
            got: n,
        });
    }
    let first = n - 1 - window;
    let spectra: Vec<_> = s.coeffs.iter().map(coefficient_spectrum).collect();
    let moduli: Vec<f64> = s.coeffs.iter().map(PentaComplex::norm).collect();
    let plus: Vec<f64> = spectra.iter().map(|a| a.aplus.abs()).collect();
    let p1: Vec<f64> = spectra.iter().map(|a| a.a1.hypot(a.at1)).collect();
    let p2: Vec<f64> = spectra.iter().map(|a| a.a2.hypot(a.at2)).collect();
    Ok(ConvergenceReport {
        c: ratio_limit(&moduli, first, 5f64.sqrt())?,
        cplus: ratio_limit(&plus, first, 1.0)?,
        c1: ratio_limit(&p1, first, 1.0)?,
        c2: ratio_limit(&p2, first, 1.0)?,
        method: TailWindow {
            window,
            first_index: first,
        },
    })
}

/// Coefficients `f^(k)(u0)/k!` for `k = 0..=kmax` of the series re-expanded
/// about `u0`.
pub fn taylor_coefficients(f: &PowerSeries, u0: &PentaComplex, kmax: usize) -> Result<PowerSeries> {
    let mut c = f.coeffs.clone();
    let n = c.len();
    // repeated synthetic division by (u - u0)
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let carry = *u0 * c[j + 1];
            c[j] += carry;
        }
    }
    c.resize(kmax + 1, PentaComplex::ZERO);
    for a in &c {
        PentaComplex::checked(a.components())?;
    }
    Ok(PowerSeries::new(c))
}

/// Jacobian `d P_i / d x_j` by central differences.
pub fn jacobian<F>(f: F, point: &PentaComplex, step: f64) -> Result<[[f64; DIM]; DIM]>
where
    F: Fn(&PentaComplex) -> Result<PentaComplex>,
{
    let mut jac = [[0.0; DIM]; DIM];
    for j in 0..DIM {
        let dx = PentaComplex::basis(j).scale(step);
        let fp = f(&(*point + dx))?;
        let fm = f(&(*point - dx))?;
        for (i, row) in jac.iter_mut().enumerate() {
            row[j] = (fp[i] - fm[i]) / (2.0 * step);
        }
    }
    Ok(jac)
}

/// One cyclic group `d P_{(j+g) mod 5} / d x_j`, `j = 0..4`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrGroup {
    pub shift: usize,
    pub derivatives: [f64; DIM],
    pub deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrReport {
    pub step: f64,
    pub tol: f64,
    pub groups: Vec<CrGroup>,
    pub pass: bool,
}

fn spread(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    max - min
}

/// Checks the first-order relations between partial derivatives of the
/// real components of `f` at `point`.
pub fn check_cr_relations<F>(f: F, point: &PentaComplex, step: f64, tol: f64) -> Result<CrReport>
where
    F: Fn(&PentaComplex) -> Result<PentaComplex>,
{
    let jac = jacobian(f, point, step)?;
    let groups: Vec<CrGroup> = (0..DIM)
        .map(|g| {
            let mut d = [0.0; DIM];
            for (j, dj) in d.iter_mut().enumerate() {
                *dj = jac[(j + g) % DIM][j];
            }
            let deviation = spread(&d);
            CrGroup {
                shift: g,
                derivatives: d,
                deviation,
                pass: deviation <= tol,
            }
        })
        .collect();
    let pass = groups.iter().all(|g| g.pass);
    Ok(CrReport {
        step,
        tol,
        groups,
        pass,
    })
}

/// Unordered index pairs `(i, j)`, `i <= j`, with `i + j = l mod 5`, listed
/// explicitly.
pub fn second_order_pairs(l: usize) -> Vec<(usize, usize)> {
    assert!(l < DIM, "index {l} out of range");
    let mut pairs = Vec::new();
    for i in 0..DIM {
        for j in i..DIM {
            if (i + j) % DIM == l {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// The same chain read off the bracketed index formula: `(m, l - m)` for
/// `m = 0..=[l/2]`, then `(l + 1 + m, 4 - m)` for `m = 0..=[(3 - l)/2]`.
pub fn second_order_pairs_bracketed(l: usize) -> Vec<(usize, usize)> {
    assert!(l < DIM, "index {l} out of range");
    let l = l as i64;
    let mut pairs = Vec::new();
    for m in 0..=l.div_euclid(2) {
        pairs.push((m as usize, (l - m) as usize));
    }
    for m in 0..=(3 - l).div_euclid(2) {
        pairs.push(((l + 1 + m) as usize, (4 - m) as usize));
    }
    pairs
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SecondOrderChain {
    pub component: usize,
    pub l: usize,
    pub pairs: Vec<(usize, usize)>,
    pub values: Vec<f64>,
    pub deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SecondOrderReport {
    pub step: f64,
    pub tol: f64,
    pub chains: Vec<SecondOrderChain>,
    pub pass: bool,
}

/// Checks that, for each component `P_k` and each `l`, the mixed second
/// partials `d^2 P_k / dx_i dx_j` with `i + j = l mod 5` coincide.
pub fn check_second_order<F>(f: F, point: &PentaComplex, step: f64, tol: f64) -> Result<SecondOrderReport>
where
    F: Fn(&PentaComplex) -> Result<PentaComplex>,
{
    let dx: Vec<PentaComplex> = (0..DIM).map(|j| PentaComplex::basis(j).scale(step)).collect();
    let f0 = f(point)?;
    let mut hess = [[[0.0; DIM]; DIM]; DIM];
    for i in 0..DIM {
        for j in i..DIM {
            let h = if i == j {
                let fp = f(&(*point + dx[i]))?;
                let fm = f(&(*point - dx[i]))?;
                (fp - f0.scale(2.0) + fm).scale(1.0 / (step * step))
            } else {
                let fpp = f(&(*point + dx[i] + dx[j]))?;
                let fpm = f(&(*point + dx[i] - dx[j]))?;
                let fmp = f(&(*point - dx[i] + dx[j]))?;
                let fmm = f(&(*point - dx[i] - dx[j]))?;
                (fpp - fpm - fmp + fmm).scale(1.0 / (4.0 * step * step))
            };
            for (k, hk) in hess.iter_mut().enumerate() {
                hk[i][j] = h[k];
                hk[j][i] = h[k];
            }
        }
    }
    let mut chains = Vec::with_capacity(DIM * DIM);
    for (k, hk) in hess.iter().enumerate() {
        for l in 0..DIM {
            let pairs = second_order_pairs(l);
            let values: Vec<f64> = pairs.iter().map(|&(i, j)| hk[i][j]).collect();
            let deviation = spread(&values);
            chains.push(SecondOrderChain {
                component: k,
                l,
                pairs,
                values,
                deviation,
                pass: deviation <= tol,
            });
        }
    }
    let pass = chains.iter().all(|c| c.pass);
    Ok(SecondOrderReport {
        step,
        tol,
        chains,
        pass,
    })
}
