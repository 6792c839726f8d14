//! Extrinsic geometry of a parametrized hypersurface `Σ³ ⊂ Q²_{c₁} × Q²_{c₂}`.
//!
//! Derivatives of the unit normal are taken in ambient coordinates and
//! projected back onto each factor, which is the Levi-Civita connection of the
//! space forms: `∇̃_V W = D̃_V W − ⟨D̃_V W, p⟩p` on the sphere and
//! `∇̃_V W = D̃_V W + ⟨D̃_V W, p⟩p` on the hyperboloid.

use std::fmt;
use std::sync::Arc;

use nalgebra::{Matrix3, SymmetricEigen, Vector3};

use crate::error::{GeomError, Result};
use crate::product::{ProductPoint, ProductSpace, ProductTangent};
use crate::spaceform::{SurfacePoint, TangentVec};

/// Patch coordinates `(t, u, v)`.
pub type Params = [f64; 3];

type MapFn = dyn Fn(Params) -> Result<ProductPoint> + Send + Sync;
type PartialsFn = dyn Fn(Params) -> [ProductTangent; 3] + Send + Sync;
type FieldFn = dyn Fn(Params) -> Result<ProductTangent> + Send + Sync;

pub const DEFAULT_FD_STEP: f64 = 1e-5;
/// Base step of the Richardson-extrapolated derivative of vector fields.
pub const FIELD_DIFF_STEP: f64 = 1e-3;
pub const GRAM_TOL: f64 = 1e-10;
pub const ASYMMETRY_LIMIT: f64 = 1e-3;

/// A map from a parameter box into the product space.
#[derive(Clone)]
pub struct Immersion {
    space: ProductSpace,
    map: Arc<MapFn>,
    partials: Option<Arc<PartialsFn>>,
    normal_anchor: Option<Arc<FieldFn>>,
    pub fd_step: f64,
    pub domain: [(f64, f64); 3],
}

impl fmt::Debug for Immersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Immersion")
            .field("space", &self.space)
            .field("analytic_partials", &self.partials.is_some())
            .field("normal_anchor", &self.normal_anchor.is_some())
            .field("fd_step", &self.fd_step)
            .field("domain", &self.domain)
            .finish()
    }
}

impl Immersion {
    pub fn new<F>(space: ProductSpace, map: F) -> Self
    where
        F: Fn(Params) -> Result<ProductPoint> + Send + Sync + 'static,
    {
        Self {
            space,
            map: Arc::new(map),
            partials: None,
            normal_anchor: None,
            fd_step: DEFAULT_FD_STEP,
            domain: [(-1.0, 1.0); 3],
        }
    }

    pub fn with_partials<F>(mut self, partials: F) -> Self
    where
        F: Fn(Params) -> [ProductTangent; 3] + Send + Sync + 'static,
    {
        self.partials = Some(Arc::new(partials));
        self
    }

    /// Orient the normal so that it has positive product with `anchor(q)`.
    pub fn with_normal_anchor<F>(mut self, anchor: F) -> Self
    where
        F: Fn(Params) -> Result<ProductTangent> + Send + Sync + 'static,
    {
        self.normal_anchor = Some(Arc::new(anchor));
        self
    }

    /// The same immersion with its analytic partials dropped.
    pub fn finite_difference(&self) -> Self {
        Self {
            partials: None,
            ..self.clone()
        }
    }

    pub fn with_domain(mut self, domain: [(f64, f64); 3]) -> Self {
        self.domain = domain;
        self
    }

    pub fn space(&self) -> ProductSpace {
        self.space
    }

    pub fn has_partials(&self) -> bool {
        self.partials.is_some()
    }

    pub fn point(&self, q: Params) -> Result<ProductPoint> {
        (self.map)(q)
    }

    pub(crate) fn anchor(&self, q: Params) -> Option<Result<ProductTangent>> {
        self.normal_anchor.as_ref().map(|a| a(q))
    }

    /// `n³` points on a tensor grid over the domain box, endpoints included.
    pub fn grid(&self, n: usize) -> Vec<Params> {
        let axis = |k: usize| -> Vec<f64> {
            let (lo, hi) = self.domain[k];
            if n <= 1 {
                return vec![(lo + hi) / 2.0];
            }
            (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
        };
        let (a, b, c) = (axis(0), axis(1), axis(2));
        let mut out = Vec::with_capacity(a.len() * b.len() * c.len());
        for &t in &a {
            for &u in &b {
                for &v in &c {
                    out.push([t, u, v]);
                }
            }
        }
        out
    }
}

pub(crate) fn ambient_point(p: &ProductPoint) -> [f64; 6] {
    let (a, b) = (p.p1.coords(), p.p2.coords());
    [a.x, a.y, a.z, b.x, b.y, b.z]
}

fn shifted(q: Params, dir: &[f64; 3], eps: f64) -> Params {
    [q[0] + eps * dir[0], q[1] + eps * dir[1], q[2] + eps * dir[2]]
}

fn central<F>(f: F, h: f64) -> Result<[f64; 6]>
where
    F: Fn(f64) -> Result<[f64; 6]>,
{
    let (p, m) = (f(h)?, f(-h)?);
    Ok(std::array::from_fn(|i| (p[i] - m[i]) / (2.0 * h)))
}

/// Central difference with one Richardson step, `O(h⁴)` accurate.
fn richardson<F>(f: F, h: f64) -> Result<[f64; 6]>
where
    F: Fn(f64) -> Result<[f64; 6]>,
{
    let coarse = central(&f, h)?;
    let fine = central(&f, h / 2.0)?;
    Ok(std::array::from_fn(|i| (4.0 * fine[i] - coarse[i]) / 3.0))
}

#[derive(Debug, Clone, Copy)]
pub struct TangentFrame {
    pub point: ProductPoint,
    /// `Ψ_t, Ψ_u, Ψ_v`.
    pub tangents: [ProductTangent; 3],
    /// Largest ambient component removed when projecting onto the tangent spaces.
    pub projection_residual: f64,
    pub gram_det: f64,
}

impl TangentFrame {
    pub fn gram(&self, space: &ProductSpace) -> Matrix3<f64> {
        Matrix3::from_fn(|i, j| space.dot(&self.tangents[i], &self.tangents[j]))
    }

    /// Coefficients of a tangent vector in the coordinate basis.
    pub fn coefficients(&self, space: &ProductSpace, v: &ProductTangent) -> Result<[f64; 3]> {
        let rhs = Vector3::from_fn(|i, _| space.dot(&self.tangents[i], v));
        let a = self
            .gram(space)
            .lu()
            .solve(&rhs)
            .ok_or(GeomError::DegenerateImmersion { gram: self.gram_det })?;
        Ok([a.x, a.y, a.z])
    }
}

/// Coordinate tangents at `q`, analytic when available.
pub fn tangent_frame(imm: &Immersion, q: Params) -> Result<TangentFrame> {
    let space = imm.space;
    let point = imm.point(q)?;
    let (tangents, projection_residual) = match &imm.partials {
        Some(p) => (p(q), 0.0),
        None => {
            let mut tangents = [ProductTangent::zero(&point); 3];
            let mut resid: f64 = 0.0;
            for (k, slot) in tangents.iter_mut().enumerate() {
                let mut e = [0.0; 3];
                e[k] = 1.0;
                let raw = central(
                    |eps| imm.point(shifted(q, &e, eps)).map(|p| ambient_point(&p)),
                    imm.fd_step,
                )?;
                let proj = space.project(&point, &raw);
                let pa = proj.ambient();
                resid = resid.max((0..6).map(|i| (pa[i] - raw[i]).abs()).fold(0.0, f64::max));
                *slot = proj;
            }
            (tangents, resid)
        }
    };
    let frame = TangentFrame {
        point,
        tangents,
        projection_residual,
        gram_det: 0.0,
    };
    let gram_det = frame.gram(&space).determinant();
    if !(gram_det > GRAM_TOL) {
        return Err(GeomError::DegenerateImmersion { gram: gram_det });
    }
    Ok(TangentFrame { gram_det, ..frame })
}

/// Unit normal `N = N₁ + N₂` with the invariants `C = ⟨PN, N⟩` and
/// `X = PN − CN`.
#[derive(Debug, Clone, Copy)]
pub struct FrameData {
    pub frame: TangentFrame,
    pub normal: ProductTangent,
    pub c: f64,
    pub x: ProductTangent,
    /// `|N₁|²`, equal to `(1 + C)/2`.
    pub n1_sq: f64,
    /// `|N₂|²`, equal to `(1 − C)/2`.
    pub n2_sq: f64,
}

impl FrameData {
    pub fn point(&self) -> ProductPoint {
        self.frame.point
    }
}

fn det3(m: &[[f64; 4]; 3], skip: usize) -> f64 {
    let cols: Vec<usize> = (0..4).filter(|&k| k != skip).collect();
    Matrix3::from_fn(|i, j| m[i][cols[j]]).determinant()
}

pub fn unit_normal(imm: &Immersion, q: Params) -> Result<FrameData> {
    let space = imm.space;
    let frame = tangent_frame(imm, q)?;
    let basis = space.tangent_basis(&frame.point);
    let rows: [[f64; 4]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|k| space.dot(&frame.tangents[i], &basis[k])));
    // generalized cross product of the three rows in R⁴
    let coef: [f64; 4] = std::array::from_fn(|k| if k % 2 == 0 { det3(&rows, k) } else { -det3(&rows, k) });
    let scale: f64 = frame.tangents.iter().map(|t| space.norm(t)).product();
    let len = coef.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(len > 1e-10 * scale) {
        return Err(GeomError::NormalRank);
    }
    let mut normal = ProductTangent::zero(&frame.point);
    for (c, e) in coef.iter().zip(basis.iter()) {
        normal = normal.add(&e.scale(c / len));
    }
    let flip = match imm.anchor(q) {
        Some(anchor) => space.dot(&normal, &anchor?) < 0.0,
        None => normal
            .ambient()
            .iter()
            .find(|x| x.abs() > 1e-12)
            .is_some_and(|x| *x < 0.0),
    };
    if flip {
        normal = normal.scale(-1.0);
    }
    let pn = space.p_structure(&normal);
    let c = space.dot(&pn, &normal);
    let n1_sq = space
        .factor1
        .ambient_inner(normal.v1.components(), normal.v1.components());
    let n2_sq = space
        .factor2
        .ambient_inner(normal.v2.components(), normal.v2.components());
    Ok(FrameData {
        frame,
        normal,
        c,
        x: pn.sub(&normal.scale(c)),
        n1_sq,
        n2_sq,
    })
}

/// `B₁ = X/√(1 − C²)`, `B₂ = (J₁N + J₂N)/√(2(1 + C))`, `B₃ = (J₁N − J₂N)/√(2(1 − C))`.
pub fn adapted_frame(fd: &FrameData, space: &ProductSpace) -> Result<[ProductTangent; 3]> {
    let c = fd.c;
    if !(c * c < 1.0 - 1e-10) {
        return Err(GeomError::FrameUndefined { c });
    }
    let (j1, j2) = space.j_structures(&fd.normal);
    Ok([
        fd.x.scale(1.0 / (1.0 - c * c).sqrt()),
        j1.add(&j2).scale(1.0 / (2.0 * (1.0 + c)).sqrt()),
        j1.sub(&j2).scale(1.0 / (2.0 * (1.0 - c)).sqrt()),
    ])
}

/// Gram–Schmidt on the coordinate tangents; usable when `C² = 1`.
pub fn orthonormal_frame(frame: &TangentFrame, space: &ProductSpace) -> [ProductTangent; 3] {
    let mut out = frame.tangents;
    for i in 0..3 {
        for j in 0..i {
            let d = space.dot(&out[i], &out[j]);
            out[i] = out[i].sub(&out[j].scale(d));
        }
        let n = space.norm(&out[i]);
        out[i] = out[i].scale(1.0 / n);
    }
    out
}

/// Covariant derivative `∇̃_V F` of a vector field `F` defined along `Σ`.
pub fn covariant_derivative<F>(imm: &Immersion, q: Params, dir: &ProductTangent, field: F) -> Result<ProductTangent>
where
    F: Fn(Params) -> Result<ProductTangent>,
{
    let frame = tangent_frame(imm, q)?;
    covariant_derivative_in(imm, &frame, q, dir, field)
}

fn covariant_derivative_in<F>(
    imm: &Immersion,
    frame: &TangentFrame,
    q: Params,
    dir: &ProductTangent,
    field: F,
) -> Result<ProductTangent>
where
    F: Fn(Params) -> Result<ProductTangent>,
{
    let a = frame.coefficients(&imm.space, dir)?;
    let raw = richardson(|eps| field(shifted(q, &a, eps)).map(|y| y.ambient()), FIELD_DIFF_STEP)?;
    Ok(imm.space.project(&frame.point, &raw))
}

/// Directional derivative `V(f)` of a scalar function on `Σ`.
pub fn directional_derivative<F>(imm: &Immersion, q: Params, dir: &ProductTangent, f: F) -> Result<f64>
where
    F: Fn(Params) -> Result<f64>,
{
    let frame = tangent_frame(imm, q)?;
    let a = frame.coefficients(&imm.space, dir)?;
    let d = richardson(
        |eps| f(shifted(q, &a, eps)).map(|x| [x, 0.0, 0.0, 0.0, 0.0, 0.0]),
        FIELD_DIFF_STEP,
    )?;
    Ok(d[0])
}

/// Shape operator `A V = −∇̃_V N` as a matrix in an orthonormal frame.
#[derive(Debug, Clone, Copy)]
pub struct ShapeData {
    /// Entries `σ_ij = ⟨A B_j, B_i⟩`, symmetrized.
    pub matrix: Matrix3<f64>,
    /// Largest `|σ_ij − σ_ji|` before symmetrization.
    pub asymmetry: f64,
}

impl ShapeData {
    pub fn from_matrix(matrix: Matrix3<f64>) -> Self {
        let asymmetry = (matrix - matrix.transpose()).amax();
        Self {
            matrix: (matrix + matrix.transpose()) / 2.0,
            asymmetry,
        }
    }

    pub fn mean_curvature(&self) -> f64 {
        self.matrix.trace() / 3.0
    }

    pub fn principal_curvatures(&self) -> [f64; 3] {
        principal_curvatures(self)
    }
}

pub fn shape_operator(imm: &Immersion, q: Params, frame: &[ProductTangent; 3]) -> Result<ShapeData> {
    let space = imm.space;
    let fd = unit_normal(imm, q)?;
    for i in 0..3 {
        if space.dot(&frame[i], &fd.normal).abs() > 1e-6 {
            return Err(GeomError::Input(format!(
                "frame vector {i} is not tangent to the hypersurface"
            )));
        }
        for j in 0..3 {
            let want = if i == j { 1.0 } else { 0.0 };
            if (space.inner(&frame[i], &frame[j])? - want).abs() > 1e-6 {
                return Err(GeomError::Input("frame is not orthonormal".into()));
            }
        }
    }
    let normal_field = |p: Params| unit_normal(imm, p).map(|f| f.normal);
    let mut a = Matrix3::zeros();
    for j in 0..3 {
        let dn = covariant_derivative_in(imm, &fd.frame, q, &frame[j], normal_field)?;
        for i in 0..3 {
            a[(i, j)] = -space.dot(&dn, &frame[i]);
        }
    }
    let sd = ShapeData::from_matrix(a);
    if sd.asymmetry > ASYMMETRY_LIMIT {
        return Err(GeomError::NumericalFailure {
            what: "shape operator asymmetry",
            residual: sd.asymmetry,
        });
    }
    Ok(sd)
}

/// Eigenvalues of the shape operator in ascending order.
pub fn principal_curvatures(sd: &ShapeData) -> [f64; 3] {
    let eig = SymmetricEigen::new(sd.matrix);
    let mut mu = [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2]];
    mu.sort_by(f64::total_cmp);
    mu
}

/// Numeric invariants at one parameter point.
#[derive(Debug, Clone, Copy)]
pub struct PointInvariants {
    pub c: f64,
    /// Shape operator in the adapted frame when `C² < 1`, otherwise in the
    /// Gram–Schmidt frame of the coordinate tangents.
    pub shape: ShapeData,
    pub adapted: bool,
    pub principal: [f64; 3],
    pub h: f64,
}

pub fn point_invariants(imm: &Immersion, q: Params) -> Result<PointInvariants> {
    let space = imm.space;
    let fd = unit_normal(imm, q)?;
    let (frame, adapted) = match adapted_frame(&fd, &space) {
        Ok(f) => (f, true),
        Err(GeomError::FrameUndefined { .. }) => (orthonormal_frame(&fd.frame, &space), false),
        Err(e) => return Err(e),
    };
    let shape = shape_operator(imm, q, &frame)?;
    Ok(PointInvariants {
        c: fd.c,
        shape,
        adapted,
        principal: shape.principal_curvatures(),
        h: shape.mean_curvature(),
    })
}

/// Residuals of the algebraic Codazzi constraints for data with `A(X) = 0`:
///
/// * `c₁(1 − C²)/2 + (1 − C)σ₂₂² − (1 + C)σ₂₃²`
/// * `c₂(C² − 1)/2 + (1 − C)σ₂₃² − (1 + C)σ₃₃²`
/// * `(1 − C)σ₂₂σ₂₃ − (1 + C)σ₂₃σ₃₃`
pub fn codazzi_constraint_residuals(s22: f64, s23: f64, s33: f64, c: f64, c1: f64, c2: f64) -> Result<[f64; 3]> {
    if !(c > -1.0 && c < 1.0) {
        return Err(GeomError::Domain(format!("C = {c} outside (-1, 1)")));
    }
    Ok([
        c1 * (1.0 - c * c) / 2.0 + (1.0 - c) * s22 * s22 - (1.0 + c) * s23 * s23,
        c2 * (c * c - 1.0) / 2.0 + (1.0 - c) * s23 * s23 - (1.0 + c) * s33 * s33,
        (1.0 - c) * s22 * s23 - (1.0 + c) * s23 * s33,
    ])
}

/// Build a product point from raw ambient coordinates, snapping rounding
/// errors back onto the model surfaces.
pub fn snap_point(space: &ProductSpace, x1: &Vector3<f64>, x2: &Vector3<f64>) -> ProductPoint {
    ProductPoint {
        p1: space.factor1.project_to_surface(x1),
        p2: space.factor2.project_to_surface(x2),
    }
}

/// Product tangent at `at` from raw ambient components (no validation).
pub fn raw_tangent(at: &ProductPoint, y1: Vector3<f64>, y2: Vector3<f64>) -> ProductTangent {
    ProductTangent::new(
        TangentVec::from_raw(*at.p1.coords(), y1),
        TangentVec::from_raw(*at.p2.coords(), y2),
    )
}

pub(crate) fn raw_point(x1: Vector3<f64>, x2: Vector3<f64>) -> ProductPoint {
    ProductPoint {
        p1: SurfacePoint::from_raw(x1),
        p2: SurfacePoint::from_raw(x2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Graph-like hypersurface in S²×R² with non-constant C.
    fn wavy() -> Immersion {
        let m = ProductSpace::new(1, 0).unwrap();
        Immersion::new(m, |[t, u, v]| {
            let (st, ct) = (t * 0.8 + 0.9).sin_cos();
            let (su, cu) = u.sin_cos();
            Ok(raw_point(
                Vector3::new(st * cu, st * su, ct),
                Vector3::new(v, 0.3 * (t * 0.8).sin() + 0.2 * u * u + 0.1 * v * t, 0.0),
            ))
        })
        .with_domain([(-0.5, 0.5); 3])
    }

    #[test]
    fn grid_covers_endpoints() {
        let g = wavy().grid(3);
        assert_eq!(g.len(), 27);
        assert_eq!(g[0], [-0.5, -0.5, -0.5]);
        assert_eq!(g[26], [0.5, 0.5, 0.5]);
    }

    #[test]
    fn normal_invariants_on_generic_surface() {
        let imm = wavy();
        let m = imm.space();
        for q in imm.grid(3) {
            let fd = unit_normal(&imm, q).unwrap();
            assert!((m.dot(&fd.normal, &fd.normal) - 1.0).abs() < 1e-12);
            for t in &fd.frame.tangents {
                assert!(m.dot(&fd.normal, t).abs() < 1e-9);
            }
            assert!((m.dot(&fd.x, &fd.x) - (1.0 - fd.c * fd.c)).abs() < 1e-9);
            assert!((fd.n1_sq - (1.0 + fd.c) / 2.0).abs() < 1e-9);
            assert!((fd.n2_sq - (1.0 - fd.c) / 2.0).abs() < 1e-9);
            let b = adapted_frame(&fd, &m).unwrap();
            for i in 0..3 {
                assert!(m.dot(&b[i], &fd.normal).abs() < 1e-9);
                for j in 0..3 {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((m.dot(&b[i], &b[j]) - want).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn canonical_sign_rule() {
        let fd = unit_normal(&wavy(), [0.1, 0.2, 0.3]).unwrap();
        let first = fd.normal.ambient().into_iter().find(|x| x.abs() > 1e-12).unwrap();
        assert!(first > 0.0);
    }

    #[test]
    fn gradient_of_c_is_minus_twice_a_of_x() {
        let imm = wavy();
        let m = imm.space();
        for q in [[0.1, -0.2, 0.3], [-0.3, 0.4, 0.0]] {
            let fd = unit_normal(&imm, q).unwrap();
            let frame = orthonormal_frame(&fd.frame, &m);
            let sd = shape_operator(&imm, q, &frame).unwrap();
            let x_coef = Vector3::from_fn(|i, _| m.dot(&fd.x, &frame[i]));
            let ax = sd.matrix * x_coef;
            for (i, v) in frame.iter().enumerate() {
                let dc = directional_derivative(&imm, q, v, |p| unit_normal(&imm, p).map(|f| f.c)).unwrap();
                assert!((dc + 2.0 * ax[i]).abs() < 1e-4, "{dc} vs {}", -2.0 * ax[i]);
            }
        }
    }

    #[test]
    fn finite_difference_mode_agrees() {
        let imm = wavy();
        let m = imm.space();
        let q = [0.2, 0.1, -0.3];
        let fd = unit_normal(&imm, q).unwrap();
        let frame = orthonormal_frame(&fd.frame, &m);
        let a = shape_operator(&imm, q, &frame).unwrap();
        assert!(a.asymmetry < 1e-6);
        assert!(fd.frame.projection_residual < 1e-8);
        // the wavy map has no analytic partials, so compare against a coarser step
        let mut coarse = imm.clone();
        coarse.fd_step = 1e-4;
        let b = shape_operator(&coarse, q, &frame).unwrap();
        assert!((a.matrix - b.matrix).amax() < 1e-4);
    }

    #[test]
    fn degenerate_immersion_is_rejected() {
        let m = ProductSpace::new(-1, 0).unwrap();
        let flat = Immersion::new(m, |[t, u, _v]| {
            Ok(raw_point(Vector3::new(1.0, 0.0, 0.0), Vector3::new(t, u, 0.0)))
        });
        assert!(matches!(
            tangent_frame(&flat, [0.0; 3]),
            Err(GeomError::DegenerateImmersion { .. })
        ));
    }

    #[test]
    fn eigenvalue_examples() {
        let d = ShapeData::from_matrix(Matrix3::from_diagonal(&Vector3::new(0.0, 0.6, 0.0)));
        assert_eq!(principal_curvatures(&d), [0.0, 0.0, 0.6]);
        let m = Matrix3::new(0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        let mu = principal_curvatures(&ShapeData::from_matrix(m));
        for (a, b) in mu.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn codazzi_examples() {
        let r = codazzi_constraint_residuals(0.6, 0.0, 0.0, -0.28, -1.0, 0.0).unwrap();
        assert!(r.iter().all(|x| x.abs() < 1e-15), "{r:?}");
        let r = codazzi_constraint_residuals(0.0, 0.0, 0.0, 0.0, -1.0, 0.0).unwrap();
        assert_eq!(r, [-0.5, 0.0, 0.0]);
        assert_eq!(
            codazzi_constraint_residuals(0.0, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap(),
            [0.0; 3]
        );
        assert!(codazzi_constraint_residuals(0.0, 0.0, 0.0, 1.0, 0.0, 0.0).is_err());
    }
}
