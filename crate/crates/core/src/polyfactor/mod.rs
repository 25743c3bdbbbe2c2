//! Polynomials over the 5-complex ring and their factorization into linear
//! and real-quadratic factors.

mod roots;

pub use roots::{polynomial_roots, real_polynomial_roots, sort_roots, MAX_ITERATIONS};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::PentaComplex;
use crate::analytic::coefficient_spectrum;
use crate::canonical::{to_canonical, try_from_canonical, CanonicalForm};
use crate::error::{Error, Result};

/// Largest degree accepted by [`enumerate_factorizations`].
pub const MAX_ENUMERATION_DEGREE: usize = 6;

/// Relative distance under which two roots count as repeated.
const REPEAT_TOL: f64 = 1e-6;

/// Serialized polynomial: the coefficients after the leading one, plus an
/// optional leading coefficient that is divided out.
#[derive(Debug, Clone, Deserialize)]
pub struct PolynomialInput {
    pub coeffs: Vec<PentaComplex>,
    #[serde(default)]
    pub leading: Option<PentaComplex>,
}

/// Monic polynomial `u^m + a1 u^(m-1) + ... + am`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolynomialInput")]
pub struct PentaPolynomial {
    coeffs: Vec<PentaComplex>,
}

impl TryFrom<PolynomialInput> for PentaPolynomial {
    type Error = Error;

    fn try_from(raw: PolynomialInput) -> Result<Self> {
        match raw.leading {
            None => PentaPolynomial::new(raw.coeffs),
            Some(lead) => {
                let mut all = vec![lead];
                all.extend(raw.coeffs);
                PentaPolynomial::from_leading(&all)
            }
        }
    }
}

impl PentaPolynomial {
    /// From the non-leading coefficients `a1..am`.
    pub fn new(coeffs: Vec<PentaComplex>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("polynomial degree must be at least 1".into()));
        }
        Ok(PentaPolynomial { coeffs })
    }

    /// From all coefficients `c0 u^m + c1 u^(m-1) + ... + cm`, dividing by
    /// `c0`.
    pub fn from_leading(all: &[PentaComplex]) -> Result<Self> {
        let (lead, rest) = all
            .split_first()
            .ok_or_else(|| Error::InvalidArgument("empty coefficient list".into()))?;
        let inv = lead.inverse().map_err(|_| Error::NonInvertibleLeading)?;
        PentaPolynomial::new(rest.iter().map(|a| *a * inv).collect())
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        PentaPolynomial::new(coeffs.iter().map(|&a| PentaComplex::real(a)).collect::<Result<_>>()?)
    }

    /// `prod (u - r)`.
    pub fn from_roots(roots: &[PentaComplex]) -> Result<Self> {
        expand(&roots.iter().map(|r| Factor::Linear { root: *r }).collect::<Vec<_>>())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[PentaComplex] {
        &self.coeffs
    }

    /// All coefficients, leading `1` first.
    pub fn full_coeffs(&self) -> Vec<PentaComplex> {
        let mut all = vec![PentaComplex::ONE];
        all.extend_from_slice(&self.coeffs);
        all
    }

    /// Largest coefficient modulus, counting the leading `1`.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(PentaComplex::norm).fold(1.0, f64::max)
    }

    pub fn eval(&self, u: &PentaComplex) -> Result<PentaComplex> {
        let mut acc = PentaComplex::ONE;
        for a in &self.coeffs {
            acc = acc * *u + *a;
        }
        PentaComplex::checked(acc.components())
    }

    /// Largest coefficient-wise deviation from `other`, relative to the
    /// coefficient scale.
    pub fn relative_distance(&self, other: &PentaPolynomial) -> f64 {
        if self.degree() != other.degree() {
            return f64::INFINITY;
        }
        let diff = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max);
        diff / self.coeff_norm()
    }
}

/// The scalar polynomials in `v+` and in each canonical plane, monic and in
/// descending powers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentPolynomials {
    pub pplus: Vec<f64>,
    pub p1: Vec<Complex64>,
    pub p2: Vec<Complex64>,
}

impl ComponentPolynomials {
    /// Evaluates the three scalar polynomials at the canonical components of
    /// `u` and reassembles the result.
    pub fn eval(&self, u: &PentaComplex) -> Result<PentaComplex> {
        let c = to_canonical(u);
        let plus = self.pplus.iter().fold(0.0, |acc, &a| acc * c.vplus + a);
        let plane = |p: &[Complex64], w: Complex64| p.iter().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * w + a);
        let out = CanonicalForm::from_parts(plus, plane(&self.p1, c.plane(1)), plane(&self.p2, c.plane(2)));
        if !out.as_array().iter().all(|x| x.is_finite()) {
            return Err(Error::Overflow);
        }
        try_from_canonical(&out)
    }
}

pub fn decompose(p: &PentaPolynomial) -> ComponentPolynomials {
    let mut pplus = vec![1.0];
    let one = Complex64::new(1.0, 0.0);
    let (mut p1, mut p2) = (vec![one], vec![one]);
    for a in &p.coeffs {
        let s = coefficient_spectrum(a);
        pplus.push(s.aplus);
        p1.push(Complex64::new(s.a1, s.at1));
        p2.push(Complex64::new(s.a2, s.at2));
    }
    ComponentPolynomials { pplus, p1, p2 }
}

/// Roots of the three component polynomials, each sorted by real then
/// imaginary part. Complex `v+` roots come in exact conjugate pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootSet {
    pub vplus_roots: Vec<Complex64>,
    pub plane1_roots: Vec<Complex64>,
    pub plane2_roots: Vec<Complex64>,
}

impl RootSet {
    pub fn degree(&self) -> usize {
        self.vplus_roots.len()
    }

    pub fn vplus_all_real(&self) -> bool {
        self.vplus_roots.iter().all(|z| z.im == 0.0)
    }

    /// Whether any component has two roots closer than `1e-6` relative.
    pub fn has_repeated_roots(&self) -> bool {
        [&self.vplus_roots, &self.plane1_roots, &self.plane2_roots]
            .iter()
            .any(|roots| {
                roots.iter().enumerate().any(|(i, a)| {
                    roots[i + 1..]
                        .iter()
                        .any(|b| (a - b).norm() <= REPEAT_TOL * (1.0 + a.norm().max(b.norm())))
                })
            })
    }
}

pub fn component_roots(cp: &ComponentPolynomials) -> Result<RootSet> {
    let mut vplus_roots = real_polynomial_roots(&cp.pplus)?;
    let mut plane1_roots = polynomial_roots(&cp.p1)?;
    let mut plane2_roots = polynomial_roots(&cp.p2)?;
    sort_roots(&mut vplus_roots);
    sort_roots(&mut plane1_roots);
    sort_roots(&mut plane2_roots);
    Ok(RootSet {
        vplus_roots,
        plane1_roots,
        plane2_roots,
    })
}

/// Assignment of roots to factors: position `p` uses `vplus_roots[vplus[p]]`,
/// `plane1_roots[plane1[p]]` and `plane2_roots[plane2[p]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pairing {
    pub vplus: Vec<usize>,
    pub plane1: Vec<usize>,
    pub plane2: Vec<usize>,
}

impl Pairing {
    pub fn identity(m: usize) -> Self {
        let id: Vec<usize> = (0..m).collect();
        Pairing {
            vplus: id.clone(),
            plane1: id.clone(),
            plane2: id,
        }
    }
}

/// `u - root`, or `u^2 + b u + c` for a conjugate pair of `v+` roots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Factor {
    Linear { root: PentaComplex },
    Quadratic { b: PentaComplex, c: PentaComplex },
}

impl Factor {
    pub fn degree(&self) -> usize {
        match self {
            Factor::Linear { .. } => 1,
            Factor::Quadratic { .. } => 2,
        }
    }

    /// Coefficients after the leading `1`.
    fn tail(&self) -> Vec<PentaComplex> {
        match *self {
            Factor::Linear { root } => vec![-root],
            Factor::Quadratic { b, c } => vec![b, c],
        }
    }
}

fn is_permutation(p: &[usize], m: usize) -> bool {
    let mut seen = vec![false; m];
    p.len() == m && p.iter().all(|&i| i < m && !std::mem::replace(&mut seen[i], true))
}

fn conjugates(a: Complex64, b: Complex64) -> bool {
    (a.conj() - b).norm() <= 1e-8 * (1.0 + a.norm())
}

/// Builds the factors selected by `pairing`. A real `v+` root gives a linear
/// factor; a complex one must be immediately followed by its conjugate and
/// the two give a quadratic factor with real ring coefficients.
pub fn assemble_roots(rs: &RootSet, pairing: &Pairing) -> Result<Vec<Factor>> {
    let m = rs.degree();
    for (name, p) in [
        ("vplus", &pairing.vplus),
        ("plane1", &pairing.plane1),
        ("plane2", &pairing.plane2),
    ] {
        if !is_permutation(p, m) {
            return Err(Error::InvalidPairing(format!("{name} is not a permutation of 0..{m}")));
        }
    }
    let z = |p: usize| rs.vplus_roots[pairing.vplus[p]];
    let w1 = |p: usize| rs.plane1_roots[pairing.plane1[p]];
    let w2 = |p: usize| rs.plane2_roots[pairing.plane2[p]];
    let mut factors = Vec::with_capacity(m);
    let mut p = 0;
    while p < m {
        if z(p).im == 0.0 {
            let root = try_from_canonical(&CanonicalForm::from_parts(z(p).re, w1(p), w2(p)))?;
            factors.push(Factor::Linear { root });
            p += 1;
        } else {
            if p + 1 >= m || !conjugates(z(p), z(p + 1)) {
                return Err(Error::InvalidPairing(format!(
                    "complex vplus root at position {p} is not followed by its conjugate"
                )));
            }
            let (a, b) = (z(p), z(p + 1));
            let (s1, s2) = (w1(p) + w1(p + 1), w2(p) + w2(p + 1));
            let (p1, p2) = (w1(p) * w1(p + 1), w2(p) * w2(p + 1));
            let lin = CanonicalForm::from_parts(-(a + b).re, -s1, -s2);
            let cst = CanonicalForm::from_parts((a * b).re, p1, p2);
            factors.push(Factor::Quadratic {
                b: try_from_canonical(&lin)?,
                c: try_from_canonical(&cst)?,
            });
            p += 2;
        }
    }
    Ok(factors)
}

/// Pairing used by [`factor`]: roots sorted by real then imaginary part in
/// every component, with each conjugate pair of `v+` roots kept adjacent and
/// given the two plane roots whose moduli are closest to the pair's modulus.
pub fn default_pairing(rs: &RootSet) -> Pairing {
    let m = rs.degree();
    // v+ roots: reals alone, complex ones as (lower, upper) units
    let mut units: Vec<Vec<usize>> = Vec::new();
    let mut used = vec![false; m];
    for i in 0..m {
        if used[i] {
            continue;
        }
        used[i] = true;
        let z = rs.vplus_roots[i];
        if z.im == 0.0 {
            units.push(vec![i]);
            continue;
        }
        let partner = (0..m)
            .filter(|&j| !used[j] && conjugates(z, rs.vplus_roots[j]))
            .min_by(|&a, &b| {
                let d = |j: usize| (z.conj() - rs.vplus_roots[j]).norm();
                d(a).total_cmp(&d(b))
            });
        match partner {
            Some(j) => {
                used[j] = true;
                let (lo, hi) = if z.im < 0.0 { (i, j) } else { (j, i) };
                units.push(vec![lo, hi]);
            }
            None => units.push(vec![i]),
        }
    }
    units.sort_by(|a, b| {
        let key = |u: &Vec<usize>| {
            let z = rs.vplus_roots[u[0]];
            (z.re, z.im.abs())
        };
        let (ka, kb) = (key(a), key(b));
        ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
    });

    let mut free1: Vec<usize> = (0..m).collect();
    let mut free2: Vec<usize> = (0..m).collect();
    let take_closest = |free: &mut Vec<usize>, roots: &[Complex64], target: f64| -> usize {
        let (pos, _) = free
            .iter()
            .enumerate()
            .min_by(|a, b| {
                let d = |j: usize| (roots[j].norm() - target).abs();
                d(*a.1).total_cmp(&d(*b.1))
            })
            .expect("enough plane roots");
        free.remove(pos)
    };
    let mut slots1 = vec![None; m];
    let mut slots2 = vec![None; m];
    let mut position = 0;
    for unit in &units {
        if unit.len() == 2 {
            let target = rs.vplus_roots[unit[0]].norm();
            for offset in 0..2 {
                slots1[position + offset] = Some(take_closest(&mut free1, &rs.plane1_roots, target));
                slots2[position + offset] = Some(take_closest(&mut free2, &rs.plane2_roots, target));
            }
        }
        position += unit.len();
    }
    let mut rest1 = free1.into_iter();
    let mut rest2 = free2.into_iter();
    let plane1 = slots1
        .into_iter()
        .map(|s| s.unwrap_or_else(|| rest1.next().expect("enough plane roots")))
        .collect();
    let plane2 = slots2
        .into_iter()
        .map(|s| s.unwrap_or_else(|| rest2.next().expect("enough plane roots")))
        .collect();
    Pairing {
        vplus: units.into_iter().flatten().collect(),
        plane1,
        plane2,
    }
}

/// Product of the factors as a monic polynomial.
pub fn expand(factors: &[Factor]) -> Result<PentaPolynomial> {
    let mut acc = vec![PentaComplex::ONE];
    for f in factors {
        let mut g = vec![PentaComplex::ONE];
        g.extend(f.tail());
        let mut next = vec![PentaComplex::ZERO; acc.len() + g.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in g.iter().enumerate() {
                next[i + j] += *a * *b;
            }
        }
        acc = next;
    }
    for a in &acc {
        PentaComplex::checked(a.components())?;
    }
    PentaPolynomial::new(acc.split_off(1))
}

/// Default factorization of a polynomial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Factorization {
    pub factors: Vec<Factor>,
    pub roots: RootSet,
    pub pairing: Pairing,
    /// Coefficient-wise relative distance between the expanded factors and
    /// the polynomial.
    pub residual: f64,
}

pub fn factor(p: &PentaPolynomial) -> Result<Factorization> {
    let roots = component_roots(&decompose(p))?;
    let pairing = default_pairing(&roots);
    let factors = assemble_roots(&roots, &pairing)?;
    let residual = p.relative_distance(&expand(&factors)?);
    Ok(Factorization {
        factors,
        roots,
        pairing,
        residual,
    })
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..m).collect();
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            a.swap(j, k - 1);
        }
    }
    heap(m, &mut current, &mut out);
    out
}

fn simple_real_roots(p: &PentaPolynomial) -> Result<RootSet> {
    let roots = component_roots(&decompose(p))?;
    if roots.has_repeated_roots() {
        return Err(Error::Degenerate);
    }
    if !roots.vplus_all_real() {
        return Err(Error::InvalidArgument(
            "factorizations are only enumerated when every vplus root is real".into(),
        ));
    }
    Ok(roots)
}

/// Every factorization into linear factors, one per pair of plane-root
/// permutations, with the `v+` roots in sorted order.
pub fn enumerate_factorizations(p: &PentaPolynomial) -> Result<Vec<Vec<PentaComplex>>> {
    if p.degree() > MAX_ENUMERATION_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "enumeration is limited to degree {MAX_ENUMERATION_DEGREE}"
        )));
    }
    let roots = simple_real_roots(p)?;
    let m = roots.degree();
    let perms = permutations(m);
    let mut out = Vec::with_capacity(perms.len() * perms.len());
    for p1 in &perms {
        for p2 in &perms {
            let pairing = Pairing {
                vplus: (0..m).collect(),
                plane1: p1.clone(),
                plane2: p2.clone(),
            };
            let linear = assemble_roots(&roots, &pairing)?
                .into_iter()
                .map(|f| match f {
                    Factor::Linear { root } => root,
                    Factor::Quadratic { .. } => unreachable!("all vplus roots are real"),
                })
                .collect();
            out.push(linear);
        }
    }
    Ok(out)
}

/// Number of distinct factorizations into linear factors, `(m!)^2`, for
/// simple roots with real `v+` roots.
pub fn count_factorizations(p: &PentaPolynomial) -> Result<u128> {
    let m = simple_real_roots(p)?.degree();
    let fact: u128 = (1..=m as u128).product();
    fact.checked_mul(fact).ok_or(Error::Overflow)
}
