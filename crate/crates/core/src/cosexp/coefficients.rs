//! Integer coefficients of the powers of `h1 + h4` and `h1 - h4`.
//!
//! ```text
//! (h1 + h4)^m      = A_m (h1 + h4) + B_m (h2 + h3) + C_m
//! (h1 - h4)^(2m+1) = D_m (h1 - h4) + E_m (h2 - h3)
//! (h1 - h4)^(2m)   = F_m (h1 + h4) + G_m (h2 + h3) + H_m
//! ```
//!
//! Each family is produced twice: by its linear recurrence in `i128`, and by
//! its closed form evaluated exactly in the field `Q(sqrt5)`, where the
//! radicals `a = (sqrt5 - 1)/2` and `b = -(5 + sqrt5)/2` live.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

/// Exact element `r + s sqrt5` of `Q(sqrt5)`.
#[derive(Clone, PartialEq, Eq)]
pub struct QSqrt5 {
    pub r: BigRational,
    pub s: BigRational,
}

impl QSqrt5 {
    pub fn new(r: BigRational, s: BigRational) -> Self {
        Self { r, s }
    }

    pub fn int(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    /// `(rn/rd) + (sn/sd) sqrt5`.
    pub fn frac(rn: i64, rd: i64, sn: i64, sd: i64) -> Self {
        Self::new(
            BigRational::new(rn.into(), rd.into()),
            BigRational::new(sn.into(), sd.into()),
        )
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.r.clone(), -self.s.clone())
    }

    /// Field norm `r^2 - 5 s^2`.
    pub fn norm(&self) -> BigRational {
        &self.r * &self.r - BigRational::from_integer(5.into()) * &self.s * &self.s
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    ///
    /// Panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero in Q(sqrt5)");
        let c = self.conj();
        Self::new(c.r / &n, c.s / n)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.s.is_zero() && self.r.is_integer()).then(|| self.r.to_integer())
    }

    pub fn to_f64(&self) -> f64 {
        self.r.to_f64().unwrap_or(f64::NAN) + self.s.to_f64().unwrap_or(f64::NAN) * 5f64.sqrt()
    }
}

impl fmt::Debug for QSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {} sqrt5)", self.r, self.s)
    }
}

impl<'a> Add<&'a QSqrt5> for &'a QSqrt5 {
    type Output = QSqrt5;

    fn add(self, rhs: &QSqrt5) -> QSqrt5 {
        QSqrt5::new(&self.r + &rhs.r, &self.s + &rhs.s)
    }
}

impl<'a> Sub<&'a QSqrt5> for &'a QSqrt5 {
    type Output = QSqrt5;

    fn sub(self, rhs: &QSqrt5) -> QSqrt5 {
        QSqrt5::new(&self.r - &rhs.r, &self.s - &rhs.s)
    }
}

impl<'a> Mul<&'a QSqrt5> for &'a QSqrt5 {
    type Output = QSqrt5;

    fn mul(self, rhs: &QSqrt5) -> QSqrt5 {
        let five = BigRational::from_integer(5.into());
        QSqrt5::new(
            &self.r * &rhs.r + five * &self.s * &rhs.s,
            &self.r * &rhs.s + &self.s * &rhs.r,
        )
    }
}

impl Neg for QSqrt5 {
    type Output = QSqrt5;

    fn neg(self) -> QSqrt5 {
        QSqrt5::new(-self.r, -self.s)
    }
}

/// `a = (sqrt5 - 1)/2`, the positive root of `a^2 + a - 1 = 0`.
pub fn radical_a() -> QSqrt5 {
    QSqrt5::frac(-1, 2, 1, 2)
}

/// `b = -(5 + sqrt5)/2`, a root of `b^2 + 5b + 5 = 0`.
pub fn radical_b() -> QSqrt5 {
    QSqrt5::frac(-5, 2, -1, 2)
}

fn sign(e: i64) -> QSqrt5 {
    QSqrt5::int(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn q(n: i64) -> QSqrt5 {
    QSqrt5::int(n)
}

/// Which power expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PowerFamily {
    /// `(h1 + h4)^m`: coefficients `A, B, C`.
    APlus,
    /// `(h1 - h4)^(2m+1)`: coefficients `D, E`.
    DMinus,
    /// `(h1 - h4)^(2m)`: coefficients `F, G, H`.
    FMinus,
}

impl PowerFamily {
    pub fn names(&self) -> &'static [&'static str] {
        match self {
            PowerFamily::APlus => &["A", "B", "C"],
            PowerFamily::DMinus => &["D", "E"],
            PowerFamily::FMinus => &["F", "G", "H"],
        }
    }

    /// Smallest `m` at which each closed form applies.
    pub fn closed_form_start(&self) -> &'static [u32] {
        match self {
            PowerFamily::APlus => &[3, 3, 4],
            PowerFamily::DMinus => &[1, 1],
            PowerFamily::FMinus => &[1, 1, 1],
        }
    }

    /// Recurrence values at index `m >= 1`.
    pub fn recurrence(&self, m: u32) -> Vec<i128> {
        assert!(m >= 1, "coefficient index starts at 1");
        match self {
            PowerFamily::APlus => {
                let (mut a, mut b, mut c) = (1i128, 0i128, 0i128);
                for _ in 1..m {
                    (a, b, c) = (b + c, a + b, 2 * a);
                }
                vec![a, b, c]
            }
            PowerFamily::DMinus => {
                let (mut d, mut e) = (-3i128, -1i128);
                for _ in 1..m {
                    (d, e) = (-3 * d - e, -d - 2 * e);
                }
                vec![d, e]
            }
            PowerFamily::FMinus => {
                let (mut f, mut g, mut h) = (0i128, 1i128, -2i128);
                for _ in 1..m {
                    (f, g, h) = (-f + g, f - 2 * g + h, 2 * (g - h));
                }
                vec![f, g, h]
            }
        }
    }

    /// Closed-form values at index `m`, exact; `None` where the closed form
    /// does not apply.
    pub fn closed_form(&self, m: u32) -> Vec<Option<QSqrt5>> {
        let starts = self.closed_form_start();
        let mi = m as i64;
        let five = q(5);
        match self {
            PowerFamily::APlus => {
                let a = radical_a();
                let one_a = &q(1) + &a;
                let two_m_5 = QSqrt5::new(BigRational::new(BigInt::from(2).pow(m), 5.into()), BigRational::zero());
                let fifth = q(5).inv();
                let am = |shift: u32| (m >= shift).then(|| (a.pow(m - shift), one_a.pow(m - shift)));
                let a_val = am(3).filter(|_| m >= starts[0]).map(|(ap, bp)| {
                    // 2^m/5 + (2 - 3a)/5 a^(m-3) + (-1)^(m-3) (5 + 3a)/5 (1+a)^(m-3)
                    let t1 = &(&(&(&q(2) - &(&q(3) * &a)) * &fifth) * &ap);
                    let t2 = &(&(&sign(mi - 3) * &(&(&five + &(&q(3) * &a)) * &fifth)) * &bp);
                    &(&two_m_5 + t1) + t2
                });
                let b_val = am(3).filter(|_| m >= starts[1]).map(|(ap, bp)| {
                    // 2^m/5 + (a - 1)/5 a^(m-3) - (-1)^(m-3) (a + 2)/5 (1+a)^(m-3)
                    let t1 = &(&(&(&a - &q(1)) * &fifth) * &ap);
                    let t2 = &(&(&sign(mi - 3) * &(&(&a + &q(2)) * &fifth)) * &bp);
                    &(&two_m_5 + t1) - t2
                });
                let c_val = am(4).filter(|_| m >= starts[2]).map(|(ap, bp)| {
                    // 2^m/5 + (4 - 6a)/5 a^(m-4) + (-1)^(m-4) (10 + 6a)/5 (1+a)^(m-4)
                    let t1 = &(&(&(&q(4) - &(&q(6) * &a)) * &fifth) * &ap);
                    let t2 = &(&(&sign(mi - 4) * &(&(&q(10) + &(&q(6) * &a)) * &fifth)) * &bp);
                    &(&two_m_5 + t1) + t2
                });
                vec![a_val, b_val, c_val]
            }
            PowerFamily::DMinus => {
                if m < starts[0] {
                    return vec![None, None];
                }
                let b = radical_b();
                let bp = b.pow(m - 1);
                let cp = (&five + &b).pow(m - 1);
                let b1 = &b + &q(1);
                let inv_b2 = (&b + &q(2)).inv();
                // D_m = (b + 1) b^(m-1) + (-1)^(m-2) (b + 4) (5 + b)^(m-1)
                let d = &(&b1 * &bp) + &(&(&sign(mi - 2) * &(&b + &q(4))) * &cp);
                // E_m = -(b + 1)/(b + 2) b^(m-1) + (-1)^(m-2)/(b + 2) (5 + b)^(m-1)
                let e = &(-(&(&b1 * &inv_b2) * &bp)) + &(&(&sign(mi - 2) * &inv_b2) * &cp);
                vec![Some(d), Some(e)]
            }
            PowerFamily::FMinus => {
                if m < starts[0] {
                    return vec![None, None, None];
                }
                let b = radical_b();
                let inv_5b2 = (&five * &(&b + &q(2))).inv();
                let bm = b.pow(m);
                let bm1 = b.pow(m - 1);
                let cm = (&five + &b).pow(m);
                // F_m = -b^m/(5(b+2)) + (-1)^(m-1) (b+1)/(5(b+2)) (5+b)^m
                let f = &(-(&bm * &inv_5b2)) + &(&(&sign(mi - 1) * &(&(&b + &q(1)) * &inv_5b2)) * &cm);
                // G_m = (4b+5)/(5(b+2)) b^(m-1) + (-1)^(m-1)/(5(b+2)) (5+b)^m
                let g = &(&(&(&(&q(4) * &b) + &five) * &inv_5b2) * &bm1) + &(&(&sign(mi - 1) * &inv_5b2) * &cm);
                // H_m = -(6b+10)/(5(b+2)) b^(m-1) + (-1)^m (2/5) (5+b)^m
                let h = &(-(&(&(&(&q(6) * &b) + &q(10)) * &inv_5b2) * &bm1))
                    + &(&(&sign(mi) * &QSqrt5::frac(2, 5, 0, 1)) * &cm);
                vec![Some(f), Some(g), Some(h)]
            }
        }
    }
}

/// Recurrence and closed-form values of one coefficient family at one index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerCoefficients {
    pub family: PowerFamily,
    pub m: u32,
    pub recurrence: Vec<i128>,
    /// Closed-form values rounded to the nearest integer; `None` below the
    /// closed form's starting index.
    pub closed_form: Vec<Option<i128>>,
    /// Whether every applicable closed-form value was exactly an integer
    /// (zero `sqrt5` part, unit denominator).
    pub closed_form_exact: bool,
}

impl PowerCoefficients {
    /// True when every applicable closed form is an exact integer equal to
    /// the recurrence value.
    pub fn agree(&self) -> bool {
        self.closed_form_exact
            && self
                .recurrence
                .iter()
                .zip(&self.closed_form)
                .all(|(r, c)| c.is_none_or(|c| c == *r))
    }
}

fn round_to_i128(x: &QSqrt5) -> Option<i128> {
    if let Some(n) = x.to_integer() {
        return n.to_i128();
    }
    // irrational or fractional: round the real value
    let v = x.to_f64();
    v.is_finite().then(|| v.round() as i128)
}

pub fn power_coeffs(family: PowerFamily, m: u32) -> PowerCoefficients {
    let recurrence = family.recurrence(m);
    let closed = family.closed_form(m);
    let closed_form_exact = closed.iter().flatten().all(|c| c.to_integer().is_some());
    PowerCoefficients {
        family,
        m,
        recurrence,
        closed_form: closed.iter().map(|c| c.as_ref().and_then(round_to_i128)).collect(),
        closed_form_exact,
    }
}
