//! Line integrals along polygonal paths, winding numbers of the projected
//! loops and the residue formula.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::PentaComplex;
use crate::canonical::{canonical_basis, rotated_coords, try_from_canonical, CanonicalForm};
use crate::error::{Error, Result};

/// Minimum distance, in projected coordinates, between a point and a loop.
pub const TAU_EDGE: f64 = 1e-9;
pub const CIRCLE_VERTICES: usize = 256;
pub const DEFAULT_SAMPLES_PER_SEGMENT: usize = 16;

#[derive(Debug, Deserialize)]
struct RawPath {
    vertices: Vec<PentaComplex>,
    closed: bool,
}

/// Polyline in 5-space. A closed path has an implicit segment from the last
/// vertex back to the first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPath")]
pub struct Path {
    vertices: Vec<PentaComplex>,
    closed: bool,
}

impl TryFrom<RawPath> for Path {
    type Error = Error;

    fn try_from(raw: RawPath) -> Result<Self> {
        Path::new(raw.vertices, raw.closed)
    }
}

impl Path {
    pub fn new(vertices: Vec<PentaComplex>, closed: bool) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidPath(format!(
                "a path needs at least 2 vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(i) = vertices.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::InvalidPath(format!("vertices {i} and {} coincide", i + 1)));
        }
        if closed && vertices[0] == vertices[vertices.len() - 1] {
            return Err(Error::InvalidPath(
                "a closed path must not repeat its first vertex at the end".into(),
            ));
        }
        Ok(Path { vertices, closed })
    }

    /// Samples `point(t)` at `n` parameters. A closed path uses `t_i = i/n`
    /// on `[0, 1)`, an open one `t_i = i/(n-1)` on `[0, 1]`.
    pub fn from_parametric(point: impl Fn(f64) -> PentaComplex, n: usize, closed: bool) -> Result<Self> {
        let denom = if closed { n } else { n.saturating_sub(1).max(1) } as f64;
        Path::new((0..n).map(|i| point(i as f64 / denom)).collect(), closed)
    }

    /// Regular `n`-gon traversed `turns` times around `center` in canonical
    /// plane `k`, with projected radius `radius`.
    pub fn circle(center: &PentaComplex, plane: usize, radius: f64, n: usize, turns: u32) -> Result<Self> {
        assert!(plane == 1 || plane == 2, "plane index {plane} out of range");
        if !(radius > 0.0 && radius.is_finite()) || n < 3 || turns == 0 {
            return Err(Error::InvalidPath(
                "circle needs a positive radius, at least 3 vertices and one turn".into(),
            ));
        }
        let b = canonical_basis();
        let (e, te) = (b.e(plane), b.te(plane));
        // rotated coordinates scale the plane components by sqrt(2/5)
        let r = radius * (2.5f64).sqrt();
        let total = n * turns as usize;
        let vertices = (0..total)
            .map(|i| {
                let t = TAU * (i % n) as f64 / n as f64;
                *center + e.scale(r * t.cos()) + te.scale(r * t.sin())
            })
            .collect();
        // a multiply traversed loop revisits its vertices but never repeats
        // one consecutively
        Ok(Path { vertices, closed: true })
    }

    pub fn vertices(&self) -> &[PentaComplex] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn segments(&self) -> impl Iterator<Item = (PentaComplex, PentaComplex)> + '_ {
        let n = self.vertices.len();
        let count = if self.closed { n } else { n - 1 };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn segment_count(&self) -> usize {
        if self.closed {
            self.vertices.len()
        } else {
            self.vertices.len() - 1
        }
    }
}

/// Projection of a path on the `(xi_k, eta_k)` plane.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlaneProjection {
    pub plane: usize,
    pub points: Vec<[f64; 2]>,
}

pub fn project_point(u: &PentaComplex, plane: usize) -> [f64; 2] {
    rotated_coords(u).plane(plane)
}

/// Rotated coordinates `(xi_k, eta_k)` of each vertex.
///
/// # Panics
/// If `plane` is not 1 or 2.
pub fn project(path: &Path, plane: usize) -> PlaneProjection {
    PlaneProjection {
        plane,
        points: path.vertices.iter().map(|u| project_point(u, plane)).collect(),
    }
}

fn segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0)
    };
    (p[0] - a[0] - t * dx).hypot(p[1] - a[1] - t * dy)
}

/// Smallest distance from `point` to the closed polygon.
pub fn distance_to_polygon(point: [f64; 2], polygon: &PlaneProjection) -> f64 {
    let pts = &polygon.points;
    (0..pts.len())
        .map(|i| segment_distance(point, pts[i], pts[(i + 1) % pts.len()]))
        .fold(f64::INFINITY, f64::min)
}

/// Signed winding number of the closed polygon around `point`, from the sum
/// of subtended angles.
pub fn winding(point: [f64; 2], polygon: &PlaneProjection) -> Result<i64> {
    let pts = &polygon.points;
    if pts.is_empty() {
        return Ok(0);
    }
    if distance_to_polygon(point, polygon) <= TAU_EDGE {
        return Err(Error::OnBoundary { tolerance: TAU_EDGE });
    }
    let rel = |q: [f64; 2]| Complex64::new(q[0] - point[0], q[1] - point[1]);
    let total: f64 = (0..pts.len())
        .map(|i| {
            let a = rel(pts[i]);
            let b = rel(pts[(i + 1) % pts.len()]);
            (b * a.conj()).arg()
        })
        .sum();
    Ok((total / TAU).round() as i64)
}

/// Composite midpoint rule for `int f(u) du`, with `samples_per_segment`
/// equal sub-intervals on each segment, summed in vertex order.
pub fn integrate<F>(f: F, path: &Path, samples_per_segment: usize) -> Result<PentaComplex>
where
    F: Fn(&PentaComplex) -> Result<PentaComplex>,
{
    if samples_per_segment == 0 {
        return Err(Error::InvalidArgument("samples per segment must be at least 1".into()));
    }
    let n = samples_per_segment;
    let mut total = PentaComplex::ZERO;
    for (a, b) in path.segments() {
        let d = b - a;
        let node = |i: usize| if i == n { b } else { a + d.scale(i as f64 / n as f64) };
        let mut prev = a;
        for i in 1..=n {
            let next = node(i);
            let mid = (prev + next).scale(0.5);
            total += f(&mid)? * (next - prev);
            prev = next;
        }
    }
    PentaComplex::checked(total.components())
}

/// Both sides of the residue formula for a single pole.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidueReport {
    /// `oint f(u) / (u - u0) du` by quadrature.
    pub lhs: PentaComplex,
    /// `2 pi f(u0) (~e1 n1 + ~e2 n2)`.
    pub rhs: PentaComplex,
    /// Winding numbers `n1, n2` of the projected loop around the projected pole.
    pub winding: [i64; 2],
    pub error: f64,
}

/// Evaluates both sides of
/// `oint f(u) du / (u - u0) = 2 pi f(u0) (~e1 n1 + ~e2 n2)`.
///
/// `u - u0` must be invertible at every sample, so the loop has to stay away
/// from the hyperplane `v+ = v0+` as well as from the pole's projections.
pub fn residue_formula<F>(f: F, path: &Path, u0: &PentaComplex, samples_per_segment: usize) -> Result<ResidueReport>
where
    F: Fn(&PentaComplex) -> Result<PentaComplex>,
{
    if !path.is_closed() {
        return Err(Error::InvalidPath("the residue formula needs a closed path".into()));
    }
    let mut n = [0i64; 2];
    for (slot, plane) in n.iter_mut().zip([1usize, 2]) {
        *slot = winding(project_point(u0, plane), &project(path, plane)).map_err(|e| match e {
            Error::OnBoundary { .. } => Error::PoleOnPath { plane },
            other => other,
        })?;
    }
    let counter = std::cell::Cell::new(0usize);
    let lhs = integrate(
        |u| {
            let sample = counter.get();
            counter.set(sample + 1);
            let inv = (*u - *u0).inverse().map_err(|e| match e {
                Error::NonInvertible { .. } => Error::NonInvertibleOnPath { sample },
                other => other,
            })?;
            Ok(f(u)? * inv)
        },
        path,
        samples_per_segment,
    )?;
    let b = canonical_basis();
    let rhs = f(u0)? * (b.te1.scale(n[0] as f64) + b.te2.scale(n[1] as f64)).scale(2.0 * PI);
    Ok(ResidueReport {
        lhs,
        rhs,
        winding: n,
        error: (lhs - rhs).norm(),
    })
}

/// Offset with canonical components `(vplus, 0, 0, 0, 0)` plus `w` in plane
/// `k`, useful for keeping a loop clear of the zero-divisor sets around a pole.
pub fn canonical_offset(vplus: f64, plane: usize, w: Complex64) -> Result<PentaComplex> {
    let zero = Complex64::new(0.0, 0.0);
    let c = match plane {
        1 => CanonicalForm::from_parts(vplus, w, zero),
        2 => CanonicalForm::from_parts(vplus, zero, w),
        _ => return Err(Error::InvalidArgument(format!("plane index {plane}"))),
    };
    try_from_canonical(&c)
}
