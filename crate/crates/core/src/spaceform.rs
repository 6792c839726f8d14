//! Two-dimensional space forms in ambient coordinates.
//!
//! The unit sphere lives in Euclidean 3-space, the hyperbolic plane is the
//! upper sheet of the hyperboloid `-x₁² + x₂² + x₃² = -1` in Minkowski
//! 3-space with signature `(-, +, +)`, and the flat plane is stored with a
//! zero third coordinate so that all three models share `Vector3`.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Tolerance for a point to lie on its model surface.
pub const POINT_TOL: f64 = 1e-12;
/// Tolerance for a vector to be tangent at its base point.
pub const TANGENT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceForm {
    /// Curvature 1, unit sphere in E³.
    Sphere,
    /// Curvature 0, the Euclidean plane.
    Plane,
    /// Curvature −1, hyperboloid in L³.
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint {
    coords: Vector3<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVec {
    base: Vector3<f64>,
    vec: Vector3<f64>,
}

impl SurfacePoint {
    pub(crate) fn from_raw(coords: Vector3<f64>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &Vector3<f64> {
        &self.coords
    }
}

impl TangentVec {
    pub(crate) fn from_raw(base: Vector3<f64>, vec: Vector3<f64>) -> Self {
        Self { base, vec }
    }

    pub fn zero(base: &SurfacePoint) -> Self {
        Self::from_raw(base.coords, Vector3::zeros())
    }

    pub fn base(&self) -> SurfacePoint {
        SurfacePoint::from_raw(self.base)
    }

    pub fn components(&self) -> &Vector3<f64> {
        &self.vec
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_raw(self.base, self.vec * s)
    }

    /// Componentwise sum; the base of `self` is kept.
    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(same_base(&self.base, &other.base));
        Self::from_raw(self.base, self.vec + other.vec)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }
}

pub(crate) fn same_base(a: &Vector3<f64>, b: &Vector3<f64>) -> bool {
    (a - b).amax() <= 1e-12 * (1.0 + a.amax())
}

/// Lorentzian cross product in L³.
pub fn lorentz_cross(a: &Vector3<f64>, b: &Vector3<f64>) -> Vector3<f64> {
    Vector3::new(a.z * b.y - a.y * b.z, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x)
}

/// Minkowski inner product with signature (−, +, +).
pub fn lorentz_inner(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    -a.x * b.x + a.y * b.y + a.z * b.z
}

impl SpaceForm {
    pub fn from_curvature(c: i32) -> Result<Self> {
        match c {
            1 => Ok(SpaceForm::Sphere),
            0 => Ok(SpaceForm::Plane),
            -1 => Ok(SpaceForm::Hyperbolic),
            _ => Err(GeomError::Domain(format!("curvature {c} not in {{-1, 0, 1}}"))),
        }
    }

    pub fn curvature(self) -> i32 {
        match self {
            SpaceForm::Sphere => 1,
            SpaceForm::Plane => 0,
            SpaceForm::Hyperbolic => -1,
        }
    }

    /// Number of ambient coordinates exposed to callers (2 for the plane).
    pub fn ambient_dim(self) -> usize {
        match self {
            SpaceForm::Plane => 2,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SpaceForm::Sphere => "S^2",
            SpaceForm::Plane => "R^2",
            SpaceForm::Hyperbolic => "H^2",
        }
    }

    /// Inner product of the ambient space (Euclidean, or Lorentzian for H²).
    pub fn ambient_inner(self, a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
        match self {
            SpaceForm::Hyperbolic => lorentz_inner(a, b),
            _ => a.dot(b),
        }
    }

    fn lift(self, coords: &[f64]) -> Result<Vector3<f64>> {
        if coords.len() != self.ambient_dim() {
            return Err(GeomError::Input(format!(
                "{} expects {} coordinates, got {}",
                self.name(),
                self.ambient_dim(),
                coords.len()
            )));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(GeomError::Input("non-finite coordinate".into()));
        }
        Ok(match self {
            SpaceForm::Plane => Vector3::new(coords[0], coords[1], 0.0),
            _ => Vector3::new(coords[0], coords[1], coords[2]),
        })
    }

    /// Residual of the model-surface constraint at `x`.
    pub fn constraint_residual(self, x: &Vector3<f64>) -> f64 {
        match self {
            SpaceForm::Sphere => (x.dot(x) - 1.0).abs(),
            SpaceForm::Hyperbolic => (lorentz_inner(x, x) + 1.0).abs(),
            SpaceForm::Plane => x.z.abs(),
        }
    }

    /// Validated point constructor.
    pub fn point(self, coords: &[f64]) -> Result<SurfacePoint> {
        let x = self.lift(coords)?;
        let tol = POINT_TOL * (1.0 + x.norm_squared());
        if self.constraint_residual(&x) > tol {
            return Err(GeomError::Input(format!(
                "point {:?} is not on {}",
                coords,
                self.name()
            )));
        }
        if self == SpaceForm::Hyperbolic && x.x <= 0.0 {
            return Err(GeomError::Input("hyperboloid point needs x1 > 0".into()));
        }
        Ok(SurfacePoint::from_raw(x))
    }

    /// The base point used for charts: north pole, hyperboloid vertex, or the origin.
    pub fn origin(self) -> SurfacePoint {
        SurfacePoint::from_raw(match self {
            SpaceForm::Sphere => Vector3::new(0.0, 0.0, 1.0),
            SpaceForm::Hyperbolic => Vector3::new(1.0, 0.0, 0.0),
            SpaceForm::Plane => Vector3::zeros(),
        })
    }

    /// Validated tangent vector constructor.
    pub fn tangent(self, p: &SurfacePoint, comps: &[f64]) -> Result<TangentVec> {
        let v = self.lift(comps)?;
        let off = match self {
            SpaceForm::Plane => v.z.abs(),
            _ => self.ambient_inner(&v, &p.coords).abs(),
        };
        if off > TANGENT_TOL * (1.0 + v.norm() * p.coords.norm()) {
            return Err(GeomError::Input(format!(
                "vector {:?} is not tangent to {} at {:?}",
                comps,
                self.name(),
                p.coords.as_slice()
            )));
        }
        Ok(TangentVec::from_raw(p.coords, v))
    }

    /// Orthogonal projection of an ambient vector onto `T_p`.
    pub fn project_to_tangent(self, p: &SurfacePoint, x: &Vector3<f64>) -> Vector3<f64> {
        let p = &p.coords;
        match self {
            SpaceForm::Sphere => x - p * x.dot(p),
            SpaceForm::Hyperbolic => x + p * lorentz_inner(x, p),
            SpaceForm::Plane => Vector3::new(x.x, x.y, 0.0),
        }
    }

    /// Nearest point of the model surface (used to clean up rounding).
    pub fn project_to_surface(self, x: &Vector3<f64>) -> SurfacePoint {
        SurfacePoint::from_raw(match self {
            SpaceForm::Sphere => x.normalize(),
            SpaceForm::Hyperbolic => {
                let s = (x.y * x.y + x.z * x.z + 1.0).sqrt();
                Vector3::new(s, x.y, x.z)
            }
            SpaceForm::Plane => Vector3::new(x.x, x.y, 0.0),
        })
    }

    pub fn inner(self, u: &TangentVec, v: &TangentVec) -> Result<f64> {
        if !same_base(&u.base, &v.base) {
            return Err(GeomError::Input("tangent vectors have different base points".into()));
        }
        Ok(self.ambient_inner(&u.vec, &v.vec))
    }

    pub fn norm(self, v: &TangentVec) -> f64 {
        self.ambient_inner(&v.vec, &v.vec).max(0.0).sqrt()
    }

    /// Rotation by +π/2 in `T_p`.
    pub fn complex_structure(self, v: &TangentVec) -> Result<TangentVec> {
        let p = v.base;
        let off = match self {
            SpaceForm::Plane => v.vec.z.abs(),
            _ => self.ambient_inner(&v.vec, &p).abs(),
        };
        if off > TANGENT_TOL * (1.0 + v.vec.norm() * p.norm()) {
            return Err(GeomError::Input("vector is not tangent at its base point".into()));
        }
        Ok(self.rotate(v))
    }

    /// Unchecked complex structure, for vectors already known to be tangent.
    pub(crate) fn rotate(self, v: &TangentVec) -> TangentVec {
        let p = &v.base;
        let w = match self {
            SpaceForm::Sphere => p.cross(&v.vec),
            SpaceForm::Hyperbolic => lorentz_cross(p, &v.vec),
            SpaceForm::Plane => Vector3::new(-v.vec.y, v.vec.x, 0.0),
        };
        TangentVec::from_raw(*p, w)
    }

    /// Positively oriented orthonormal basis `(e, L e)` of `T_p`.
    pub fn tangent_basis(self, p: &SurfacePoint) -> [TangentVec; 2] {
        let x = &p.coords;
        let seed = match self {
            SpaceForm::Plane => Vector3::x(),
            SpaceForm::Hyperbolic => {
                if x.y.abs() <= x.z.abs() {
                    Vector3::y()
                } else {
                    Vector3::z()
                }
            }
            SpaceForm::Sphere => {
                let a = x.map(f64::abs);
                if a.x <= a.y && a.x <= a.z {
                    Vector3::x()
                } else if a.y <= a.z {
                    Vector3::y()
                } else {
                    Vector3::z()
                }
            }
        };
        let e = self.project_to_tangent(p, &seed);
        let e = e / self.ambient_inner(&e, &e).sqrt();
        let e = TangentVec::from_raw(*x, e);
        [e, self.rotate(&e)]
    }

    /// Geodesic through `v.base()` with initial velocity `v`, followed for time `r`.
    pub fn geodesic_flow(self, v: &TangentVec, r: f64) -> GeodesicStep {
        let p = v.base;
        let speed = self.norm(v);
        if speed <= f64::EPSILON * (1.0 + p.norm()) {
            return GeodesicStep {
                space: self,
                start: p,
                point: p,
                dir: None,
                dir_end: None,
                velocity: Vector3::zeros(),
            };
        }
        let e = v.vec / speed;
        let th = speed * r;
        let (point, dir_end) = match self {
            SpaceForm::Sphere => {
                let (s, c) = th.sin_cos();
                (p * c + e * s, -p * s + e * c)
            }
            SpaceForm::Hyperbolic => {
                let (s, c) = (th.sinh(), th.cosh());
                (p * c + e * s, p * s + e * c)
            }
            SpaceForm::Plane => (p + e * th, e),
        };
        GeodesicStep {
            space: self,
            start: p,
            point,
            dir: Some(e),
            dir_end: Some(dir_end),
            velocity: dir_end * speed,
        }
    }

    /// Arc-length curve of constant geodesic curvature `kappa ≥ 0`.
    ///
    /// Returns the point, the unit tangent and the unit normal `n` with
    /// `∇_T T = kappa n`, i.e. `n` points to the concave side. In H² the
    /// curves are centred on the x₁-axis: hypercycles equidistant from
    /// `x₃ = 0` for `kappa < 1`, the horocycle `(1 + u²/2, u, −u²/2)` for
    /// `kappa = 1` and circles around `(1, 0, 0)` for `kappa > 1`.
    pub fn constant_curvature_curve(self, kappa: f64, s: f64) -> Result<CurveSample> {
        if !(kappa.is_finite() && kappa >= 0.0) {
            return Err(GeomError::Domain(format!("geodesic curvature {kappa} must be >= 0")));
        }
        let (point, tangent, normal) = match self {
            SpaceForm::Plane => {
                if kappa == 0.0 {
                    (Vector3::new(s, 0.0, 0.0), Vector3::x(), Vector3::y())
                } else {
                    let rad = 1.0 / kappa;
                    let (sn, cs) = (s * kappa).sin_cos();
                    (
                        Vector3::new(rad * sn, rad * (1.0 - cs), 0.0),
                        Vector3::new(cs, sn, 0.0),
                        Vector3::new(-sn, cs, 0.0),
                    )
                }
            }
            SpaceForm::Sphere => {
                // circle at polar angle ρ with cot ρ = kappa
                let h = (1.0 + kappa * kappa).sqrt();
                let (sin_rho, cos_rho) = (1.0 / h, kappa / h);
                let (sn, cs) = (s / sin_rho).sin_cos();
                let radial = Vector3::new(cs, sn, 0.0);
                (
                    Vector3::z() * cos_rho + radial * sin_rho,
                    Vector3::new(-sn, cs, 0.0),
                    Vector3::z() * sin_rho - radial * cos_rho,
                )
            }
            SpaceForm::Hyperbolic => {
                if (kappa - 1.0).abs() <= f64::EPSILON {
                    let u = s;
                    (
                        Vector3::new(1.0 + u * u / 2.0, u, -u * u / 2.0),
                        Vector3::new(u, 1.0, -u),
                        Vector3::new(-u * u / 2.0, -u, u * u / 2.0 - 1.0),
                    )
                } else if kappa < 1.0 {
                    // distance d from the geodesic x₃ = 0, tanh d = kappa
                    let d = kappa.atanh();
                    let (sd, cd) = (d.sinh(), d.cosh());
                    let tau = s / cd;
                    let w = Vector3::new(tau.cosh(), tau.sinh(), 0.0);
                    (
                        w * cd - Vector3::z() * sd,
                        Vector3::new(tau.sinh(), tau.cosh(), 0.0),
                        Vector3::z() * cd - w * sd,
                    )
                } else {
                    // circle of radius ρ with coth ρ = kappa
                    let rho = (1.0 / kappa).atanh();
                    let (sr, cr) = (rho.sinh(), rho.cosh());
                    let (sn, cs) = (s / sr).sin_cos();
                    let radial = Vector3::new(0.0, cs, sn);
                    (
                        Vector3::x() * cr + radial * sr,
                        Vector3::new(0.0, -sn, cs),
                        -Vector3::x() * sr - radial * cr,
                    )
                }
            }
        };
        Ok(CurveSample {
            point: SurfacePoint::from_raw(point),
            tangent: TangentVec::from_raw(point, tangent),
            normal: TangentVec::from_raw(point, normal),
        })
    }

    /// Numerical geodesic curvature of an ambient-coordinate curve at `s`.
    ///
    /// With `normal` given the result is `⟨∇_γ' γ', n⟩ / |γ'|²`; without it,
    /// the length of the normal part of the acceleration divided by `|γ'|²`.
    pub fn geodesic_curvature<F>(self, curve: F, s: f64, normal: Option<&Vector3<f64>>) -> Result<f64>
    where
        F: Fn(f64) -> Vector3<f64>,
    {
        let h = CURVE_FD_STEP;
        let (xm, x0, xp) = (curve(s - h), curve(s), curve(s + h));
        let d1 = (xp - xm) / (2.0 * h);
        let d2 = (xp - x0 * 2.0 + xm) / (h * h);
        let base = SurfacePoint::from_raw(x0);
        let vel = self.project_to_tangent(&base, &d1);
        let speed_sq = self.ambient_inner(&vel, &vel);
        if !(speed_sq.sqrt() >= 1e-8) {
            return Err(GeomError::Singular(format!(
                "curve speed {:.3e} at s = {s}",
                speed_sq.sqrt()
            )));
        }
        let acc = self.project_to_tangent(&base, &d2);
        match normal {
            Some(n) => Ok(self.ambient_inner(&acc, n) / speed_sq),
            None => {
                let perp = acc - vel * (self.ambient_inner(&acc, &vel) / speed_sq);
                Ok(self.ambient_inner(&perp, &perp).max(0.0).sqrt() / speed_sq)
            }
        }
    }
}

/// Central-difference step for curve derivatives.
const CURVE_FD_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy)]
pub struct CurveSample {
    pub point: SurfacePoint,
    pub tangent: TangentVec,
    pub normal: TangentVec,
}

/// Result of following a geodesic, with its parallel transport.
#[derive(Debug, Clone, Copy)]
pub struct GeodesicStep {
    space: SpaceForm,
    start: Vector3<f64>,
    point: Vector3<f64>,
    dir: Option<Vector3<f64>>,
    dir_end: Option<Vector3<f64>>,
    velocity: Vector3<f64>,
}

impl GeodesicStep {
    pub fn point(&self) -> SurfacePoint {
        SurfacePoint::from_raw(self.point)
    }

    pub fn velocity(&self) -> TangentVec {
        TangentVec::from_raw(self.point, self.velocity)
    }

    /// Parallel transport from the start point to the end point.
    pub fn transport(&self, w: &TangentVec) -> TangentVec {
        debug_assert!(same_base(&w.base, &self.start));
        TangentVec::from_raw(self.point, self.carry(&w.vec, self.dir, self.dir_end))
    }

    /// Parallel transport from the end point back to the start point.
    pub fn transport_back(&self, w: &TangentVec) -> TangentVec {
        debug_assert!(same_base(&w.base, &self.point));
        TangentVec::from_raw(self.start, self.carry(&w.vec, self.dir_end, self.dir))
    }

    // The component along the geodesic direction rotates with it, the
    // orthogonal complement is constant in ambient coordinates.
    fn carry(&self, w: &Vector3<f64>, from: Option<Vector3<f64>>, to: Option<Vector3<f64>>) -> Vector3<f64> {
        match (from, to) {
            (Some(e0), Some(e1)) => {
                let a = self.space.ambient_inner(w, &e0);
                w - e0 * a + e1 * a
            }
            _ => *w,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: &Vector3<f64>, b: &Vector3<f64>, tol: f64) -> bool {
        (a - b).amax() <= tol
    }

    #[test]
    fn inner_products() {
        let pl = SpaceForm::Plane;
        let o = pl.origin();
        let u = pl.tangent(&o, &[1.0, 0.0]).unwrap();
        let v = pl.tangent(&o, &[0.0, 1.0]).unwrap();
        assert_eq!(pl.inner(&u, &v).unwrap(), 0.0);

        let h = SpaceForm::Hyperbolic;
        let p = h.point(&[1.0, 0.0, 0.0]).unwrap();
        let e = h.tangent(&p, &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(h.inner(&e, &e).unwrap(), 1.0);

        let u = 0.7;
        let x = Vector3::new(1.0 + u * u / 2.0, u, -u * u / 2.0);
        assert!((lorentz_inner(&x, &x) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn inner_rejects_mismatched_bases() {
        let s = SpaceForm::Sphere;
        let a = s
            .tangent(&s.point(&[0.0, 0.0, 1.0]).unwrap(), &[1.0, 0.0, 0.0])
            .unwrap();
        let b = s
            .tangent(&s.point(&[1.0, 0.0, 0.0]).unwrap(), &[0.0, 1.0, 0.0])
            .unwrap();
        assert!(matches!(s.inner(&a, &b), Err(GeomError::Input(_))));
    }

    #[test]
    fn point_validation() {
        assert!(SpaceForm::Sphere.point(&[1.0, 1.0, 0.0]).is_err());
        assert!(SpaceForm::Hyperbolic.point(&[-1.0, 0.0, 0.0]).is_err());
        assert!(SpaceForm::Plane.point(&[1.0, 2.0, 3.0]).is_err());
        assert!(SpaceForm::from_curvature(2).is_err());
    }

    #[test]
    fn lorentz_cross_values() {
        let c = lorentz_cross(&Vector3::x(), &Vector3::y());
        assert_eq!(c, Vector3::new(0.0, 0.0, 1.0));
        let c = lorentz_cross(&Vector3::y(), &Vector3::z());
        assert_eq!(c, Vector3::new(-1.0, 0.0, 0.0));
        let a = Vector3::new(0.3, -1.2, 2.0);
        assert_eq!(lorentz_cross(&a, &a), Vector3::zeros());
    }

    #[test]
    fn complex_structure_examples() {
        let s = SpaceForm::Sphere;
        let p = s.point(&[0.0, 0.0, 1.0]).unwrap();
        let v = s.tangent(&p, &[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(*s.complex_structure(&v).unwrap().components(), Vector3::y());

        let h = SpaceForm::Hyperbolic;
        let p = h.point(&[1.0, 0.0, 0.0]).unwrap();
        let v = h.tangent(&p, &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(*h.complex_structure(&v).unwrap().components(), Vector3::z());

        let pl = SpaceForm::Plane;
        let v = pl.tangent(&pl.origin(), &[1.0, 2.0]).unwrap();
        assert_eq!(
            *pl.complex_structure(&v).unwrap().components(),
            Vector3::new(-2.0, 1.0, 0.0)
        );
    }

    #[test]
    fn complex_structure_rejects_normal_vectors() {
        let s = SpaceForm::Sphere;
        let p = s.point(&[0.0, 0.0, 1.0]).unwrap();
        let bogus = TangentVec::from_raw(*p.coords(), Vector3::z());
        assert!(s.complex_structure(&bogus).is_err());
    }

    #[test]
    fn geodesic_examples() {
        let s = SpaceForm::Sphere;
        let p = s.point(&[1.0, 0.0, 0.0]).unwrap();
        let v = s.tangent(&p, &[0.0, 1.0, 0.0]).unwrap();
        let g = s.geodesic_flow(&v, PI / 2.0);
        assert!(close(g.point().coords(), &Vector3::y(), 1e-15));

        let pl = SpaceForm::Plane;
        let v = pl.tangent(&pl.origin(), &[3.0, 4.0]).unwrap();
        let g = pl.geodesic_flow(&v, 1.0);
        assert!(close(g.point().coords(), &Vector3::new(3.0, 4.0, 0.0), 1e-15));

        let h = SpaceForm::Hyperbolic;
        let p = h.origin();
        let v = h.tangent(&p, &[0.0, 1.0, 0.0]).unwrap();
        let g = h.geodesic_flow(&v, 1.0);
        assert!(close(
            g.point().coords(),
            &Vector3::new(1f64.cosh(), 1f64.sinh(), 0.0),
            1e-15
        ));
        assert!((h.norm(&g.velocity()) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn zero_velocity_geodesic_is_constant() {
        let h = SpaceForm::Hyperbolic;
        let p = h.origin();
        let g = h.geodesic_flow(&TangentVec::zero(&p), 3.0);
        assert_eq!(g.point(), p);
        let w = h.tangent(&p, &[0.0, 0.0, 2.0]).unwrap();
        assert_eq!(g.transport(&w), w);
    }

    #[test]
    fn transport_round_trip() {
        let h = SpaceForm::Hyperbolic;
        let p = h.point(&[2f64.sqrt(), 1.0, 0.0]).unwrap();
        let [e1, e2] = h.tangent_basis(&p);
        let v = e1.scale(0.4).add(&e2.scale(-1.1));
        let g = h.geodesic_flow(&v, 0.8);
        let w = e2.scale(2.0).add(&e1);
        let back = g.transport_back(&g.transport(&w));
        assert!(close(back.components(), w.components(), 1e-13));
    }

    #[test]
    fn horocycle_and_its_normal() {
        let h = SpaceForm::Hyperbolic;
        let u = 0.9;
        let c = h.constant_curvature_curve(1.0, u).unwrap();
        assert!(close(
            c.point.coords(),
            &Vector3::new(1.0 + u * u / 2.0, u, -u * u / 2.0),
            0.0
        ));
        // concave-side normal, opposite to (u²/2, u, 1 − u²/2)
        let outward = Vector3::new(u * u / 2.0, u, 1.0 - u * u / 2.0);
        assert!(close(c.normal.components(), &(-outward), 1e-15));
    }

    #[test]
    fn line_in_plane() {
        let c = SpaceForm::Plane.constant_curvature_curve(0.0, 2.5).unwrap();
        assert_eq!(*c.point.coords(), Vector3::new(2.5, 0.0, 0.0));
        assert_eq!(*c.normal.components(), Vector3::y());
        assert!(SpaceForm::Plane.constant_curvature_curve(-1.0, 0.0).is_err());
    }

    #[test]
    fn sphere_small_circle_radius() {
        let t = 3f64.sqrt() / 2.0;
        let kappa = (1.0 - t * t).sqrt() / t;
        let s = SpaceForm::Sphere;
        let c = s.constant_curvature_curve(kappa, 0.3).unwrap();
        let x = c.point.coords();
        assert!(((x.x * x.x + x.y * x.y).sqrt() - t).abs() < 1e-14);
        let k = s
            .geodesic_curvature(
                |a| *s.constant_curvature_curve(kappa, a).unwrap().point.coords(),
                0.3,
                Some(c.normal.components()),
            )
            .unwrap();
        assert!((k - kappa).abs() < 1e-6);
    }

    #[test]
    fn geodesic_curvature_examples() {
        let h = SpaceForm::Hyperbolic;
        let phi = |u: f64| Vector3::new(1.0 + u * u / 2.0, u, -u * u / 2.0);
        assert!((h.geodesic_curvature(phi, 0.4, None).unwrap() - 1.0).abs() < 1e-6);
        let geo = |s: f64| Vector3::new(s.cosh(), s.sinh(), 0.0);
        assert!(h.geodesic_curvature(geo, 0.2, None).unwrap().abs() < 1e-6);
        let circle = |s: f64| Vector3::new(2.0 * (s / 2.0).cos(), 2.0 * (s / 2.0).sin(), 0.0);
        let k = SpaceForm::Plane.geodesic_curvature(circle, 1.0, None).unwrap();
        assert!((k - 0.5).abs() < 1e-6);
    }

    #[test]
    fn geodesic_curvature_rejects_stalled_curve() {
        let still = |_s: f64| Vector3::new(0.0, 0.0, 1.0);
        assert!(matches!(
            SpaceForm::Sphere.geodesic_curvature(still, 0.0, None),
            Err(GeomError::Singular(_))
        ));
    }
}
