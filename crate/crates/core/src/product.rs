//! The product manifold `Q²_{c₁} × Q²_{c₂}` with its product structure `P`,
//! the complex structures `J₁ = L₁ + L₂`, `J₂ = L₁ − L₂` and the curvature
//! tensor.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::spaceform::{same_base, GeodesicStep, SpaceForm, SurfacePoint, TangentVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductSpace {
    pub factor1: SpaceForm,
    pub factor2: SpaceForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductPoint {
    pub p1: SurfacePoint,
    pub p2: SurfacePoint,
}

/// Tangent vector `Y = Y¹ + Y²` split into its factor components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductTangent {
    pub v1: TangentVec,
    pub v2: TangentVec,
}

impl ProductTangent {
    pub fn new(v1: TangentVec, v2: TangentVec) -> Self {
        Self { v1, v2 }
    }

    pub fn zero(at: &ProductPoint) -> Self {
        Self::new(TangentVec::zero(&at.p1), TangentVec::zero(&at.p2))
    }

    pub fn base(&self) -> ProductPoint {
        ProductPoint {
            p1: self.v1.base(),
            p2: self.v2.base(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.v1.scale(s), self.v2.scale(s))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.v1.add(&o.v1), self.v2.add(&o.v2))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.v1.sub(&o.v1), self.v2.sub(&o.v2))
    }

    /// The six ambient components, factor 1 first.
    pub fn ambient(&self) -> [f64; 6] {
        let (a, b) = (self.v1.components(), self.v2.components());
        [a.x, a.y, a.z, b.x, b.y, b.z]
    }

    /// Only the factor-1 part.
    pub fn first(&self) -> Self {
        Self::new(self.v1, TangentVec::zero(&self.v2.base()))
    }

    /// Only the factor-2 part.
    pub fn second(&self) -> Self {
        Self::new(TangentVec::zero(&self.v1.base()), self.v2)
    }
}

fn same_point(a: &ProductPoint, b: &ProductPoint) -> bool {
    same_base(a.p1.coords(), b.p1.coords()) && same_base(a.p2.coords(), b.p2.coords())
}

impl ProductSpace {
    /// Product with distinct curvatures, as required by the classification.
    pub fn new(c1: i32, c2: i32) -> Result<Self> {
        if c1 == c2 {
            return Err(GeomError::Domain(format!("curvatures must differ, got c1 = c2 = {c1}")));
        }
        Self::relaxed(c1, c2)
    }

    /// Any pair of space forms, including equal curvatures.
    pub fn relaxed(c1: i32, c2: i32) -> Result<Self> {
        Ok(Self {
            factor1: SpaceForm::from_curvature(c1)?,
            factor2: SpaceForm::from_curvature(c2)?,
        })
    }

    pub fn curvatures(&self) -> (i32, i32) {
        (self.factor1.curvature(), self.factor2.curvature())
    }

    pub fn name(&self) -> String {
        format!("{}x{}", self.factor1.name(), self.factor2.name())
    }

    pub fn point(&self, x1: &[f64], x2: &[f64]) -> Result<ProductPoint> {
        Ok(ProductPoint {
            p1: self.factor1.point(x1)?,
            p2: self.factor2.point(x2)?,
        })
    }

    pub fn tangent(&self, at: &ProductPoint, y1: &[f64], y2: &[f64]) -> Result<ProductTangent> {
        Ok(ProductTangent::new(
            self.factor1.tangent(&at.p1, y1)?,
            self.factor2.tangent(&at.p2, y2)?,
        ))
    }

    fn check(&self, y: &ProductTangent, z: &ProductTangent) -> Result<()> {
        if same_point(&y.base(), &z.base()) {
            Ok(())
        } else {
            Err(GeomError::Input("product tangents have different base points".into()))
        }
    }

    /// Product metric.
    pub fn inner(&self, y: &ProductTangent, z: &ProductTangent) -> Result<f64> {
        self.check(y, z)?;
        Ok(self.dot(y, z))
    }

    pub(crate) fn dot(&self, y: &ProductTangent, z: &ProductTangent) -> f64 {
        self.factor1.ambient_inner(y.v1.components(), z.v1.components())
            + self.factor2.ambient_inner(y.v2.components(), z.v2.components())
    }

    pub fn norm(&self, y: &ProductTangent) -> f64 {
        self.dot(y, y).max(0.0).sqrt()
    }

    /// `P(Y¹ + Y²) = Y¹ − Y²`.
    pub fn p_structure(&self, y: &ProductTangent) -> ProductTangent {
        ProductTangent::new(y.v1, y.v2.scale(-1.0))
    }

    /// `(J₁Y, J₂Y)` with `J₁ = L₁ + L₂` and `J₂ = L₁ − L₂`.
    pub fn j_structures(&self, y: &ProductTangent) -> (ProductTangent, ProductTangent) {
        let l1 = self.factor1.rotate(&y.v1);
        let l2 = self.factor2.rotate(&y.v2);
        (ProductTangent::new(l1, l2), ProductTangent::new(l1, l2.scale(-1.0)))
    }

    /// `R̃(V, W)Z` as a tangent vector, normalised so that
    /// `⟨R̃(V, W)W, V⟩` is the sectional curvature of an orthonormal pair.
    pub fn curvature_operator(&self, v: &ProductTangent, w: &ProductTangent, z: &ProductTangent) -> ProductTangent {
        let part = |sf: SpaceForm, v: &TangentVec, w: &TangentVec, z: &TangentVec| {
            let c = sf.curvature() as f64;
            let wz = sf.ambient_inner(w.components(), z.components());
            let vz = sf.ambient_inner(v.components(), z.components());
            v.scale(c * wz).sub(&w.scale(c * vz))
        };
        ProductTangent::new(
            part(self.factor1, &v.v1, &w.v1, &z.v1),
            part(self.factor2, &v.v2, &w.v2, &z.v2),
        )
    }

    /// `R̃(V, W, Z, Y)` written with the product structure:
    ///
    /// `c₁/4 {⟨V, PY + Y⟩⟨PW + W, Z⟩ − ⟨W, PY + Y⟩⟨PV + V, Z⟩}
    ///  + c₂/4 {⟨V, PY − Y⟩⟨PW − W, Z⟩ − ⟨W, PY − Y⟩⟨PV − V, Z⟩}`.
    pub fn curvature_tensor(
        &self,
        v: &ProductTangent,
        w: &ProductTangent,
        z: &ProductTangent,
        y: &ProductTangent,
    ) -> Result<f64> {
        self.check(v, w)?;
        self.check(v, z)?;
        self.check(v, y)?;
        let (c1, c2) = self.curvatures();
        let plus = |a: &ProductTangent| self.p_structure(a).add(a);
        let minus = |a: &ProductTangent| self.p_structure(a).sub(a);
        let t1 = self.dot(v, &plus(y)) * self.dot(&plus(w), z) - self.dot(w, &plus(y)) * self.dot(&plus(v), z);
        let t2 = self.dot(v, &minus(y)) * self.dot(&minus(w), z) - self.dot(w, &minus(y)) * self.dot(&minus(v), z);
        Ok(c1 as f64 / 4.0 * t1 + c2 as f64 / 4.0 * t2)
    }

    /// Orthonormal basis of the 4-dimensional tangent space: two factor-1
    /// vectors followed by two factor-2 vectors.
    pub fn tangent_basis(&self, at: &ProductPoint) -> [ProductTangent; 4] {
        let [a, b] = self.factor1.tangent_basis(&at.p1);
        let [c, d] = self.factor2.tangent_basis(&at.p2);
        let z1 = TangentVec::zero(&at.p1);
        let z2 = TangentVec::zero(&at.p2);
        [
            ProductTangent::new(a, z2),
            ProductTangent::new(b, z2),
            ProductTangent::new(z1, c),
            ProductTangent::new(z1, d),
        ]
    }

    /// Tangential projection of six ambient components at `at`.
    pub fn project(&self, at: &ProductPoint, x: &[f64; 6]) -> ProductTangent {
        let a = Vector3::new(x[0], x[1], x[2]);
        let b = Vector3::new(x[3], x[4], x[5]);
        ProductTangent::new(
            TangentVec::from_raw(*at.p1.coords(), self.factor1.project_to_tangent(&at.p1, &a)),
            TangentVec::from_raw(*at.p2.coords(), self.factor2.project_to_tangent(&at.p2, &b)),
        )
    }

    /// Componentwise geodesic with the factor speeds `|V¹|`, `|V²|`.
    pub fn geodesic_flow(&self, v: &ProductTangent, r: f64) -> ProductGeodesicStep {
        ProductGeodesicStep {
            s1: self.factor1.geodesic_flow(&v.v1, r),
            s2: self.factor2.geodesic_flow(&v.v2, r),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ProductGeodesicStep {
    s1: GeodesicStep,
    s2: GeodesicStep,
}

impl ProductGeodesicStep {
    pub fn point(&self) -> ProductPoint {
        ProductPoint {
            p1: self.s1.point(),
            p2: self.s2.point(),
        }
    }

    pub fn velocity(&self) -> ProductTangent {
        ProductTangent::new(self.s1.velocity(), self.s2.velocity())
    }

    pub fn transport(&self, y: &ProductTangent) -> ProductTangent {
        ProductTangent::new(self.s1.transport(&y.v1), self.s2.transport(&y.v2))
    }

    pub fn transport_back(&self, y: &ProductTangent) -> ProductTangent {
        ProductTangent::new(self.s1.transport_back(&y.v1), self.s2.transport_back(&y.v2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h2r2() -> (ProductSpace, ProductPoint) {
        let m = ProductSpace::new(-1, 0).unwrap();
        let o = m.point(&[1.0, 0.0, 0.0], &[0.0, 0.0]).unwrap();
        (m, o)
    }

    fn comps(y: &ProductTangent) -> [f64; 6] {
        y.ambient()
    }

    #[test]
    fn construction_requires_distinct_curvatures() {
        assert!(ProductSpace::new(1, 1).is_err());
        assert!(ProductSpace::relaxed(1, 1).is_ok());
        assert!(ProductSpace::new(2, 0).is_err());
    }

    #[test]
    fn inner_examples() {
        let (m, o) = h2r2();
        let y = m.tangent(&o, &[0.0, 1.0, 0.0], &[0.0, 0.0]).unwrap();
        assert_eq!(m.inner(&y, &y).unwrap(), 1.0);
        let y = m.tangent(&o, &[0.0, 1.0, 0.0], &[1.0, 0.0]).unwrap();
        assert_eq!(m.inner(&y, &y).unwrap(), 2.0);
        let z = m.tangent(&o, &[0.0, 0.0, 1.0], &[0.0, 1.0]).unwrap();
        assert_eq!(m.inner(&y, &z).unwrap(), 0.0);

        let elsewhere = m.point(&[1.0, 0.0, 0.0], &[1.0, 0.0]).unwrap();
        let w = m.tangent(&elsewhere, &[0.0, 1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert!(m.inner(&y, &w).is_err());
    }

    #[test]
    fn p_and_j_examples() {
        let (m, o) = h2r2();
        let y = m.tangent(&o, &[0.0, 1.0, 0.0], &[1.0, 0.0]).unwrap();
        assert_eq!(comps(&m.p_structure(&y)), [0.0, 1.0, 0.0, -1.0, -0.0, 0.0]);
        assert_eq!(m.p_structure(&m.p_structure(&y)), y);
        let (j1, j2) = m.j_structures(&y);
        assert_eq!(comps(&j1), [0.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
        assert_eq!(comps(&j2), [0.0, 0.0, 1.0, 0.0, -1.0, 0.0]);
        let (j1j2, _) = m.j_structures(&j2);
        assert_eq!(comps(&j1j2.scale(-1.0)), comps(&m.p_structure(&y)).map(|x| x + 0.0));

        let flat_free = m.tangent(&o, &[0.0, 0.5, 0.5], &[0.0, 0.0]).unwrap();
        assert_eq!(m.p_structure(&flat_free), flat_free);
    }

    #[test]
    fn curvature_examples() {
        let (m, o) = h2r2();
        let v = m.tangent(&o, &[0.0, 1.0, 0.0], &[0.0, 0.0]).unwrap();
        let w = m.tangent(&o, &[0.0, 0.0, 1.0], &[0.0, 0.0]).unwrap();
        assert_eq!(m.curvature_tensor(&v, &w, &w, &v).unwrap(), -1.0);

        let x = m.tangent(&o, &[0.0, 0.0, 0.0], &[1.0, 0.0]).unwrap();
        assert_eq!(m.curvature_tensor(&v, &x, &x, &v).unwrap(), 0.0);
        let z = m.tangent(&o, &[0.0, 0.3, -0.2], &[0.7, 0.1]).unwrap();
        assert_eq!(m.curvature_tensor(&v, &x, &z, &w).unwrap(), 0.0);
    }

    #[test]
    fn operator_matches_tensor() {
        let m = ProductSpace::new(1, -1).unwrap();
        let o = m.point(&[0.0, 0.6, 0.8], &[1.25, 0.75, 0.0]).unwrap();
        let v = m.tangent(&o, &[1.0, 0.4, -0.3], &[0.6, 1.0, 0.5]).unwrap();
        let w = m.tangent(&o, &[-0.2, 0.8, -0.6], &[0.0, 0.0, 1.0]).unwrap();
        let z = m.tangent(&o, &[0.5, 0.0, 0.0], &[0.3, 0.5, -0.2]).unwrap();
        let y = m.tangent(&o, &[0.1, -0.4, 0.3], &[-0.6, -1.0, 0.9]).unwrap();
        let via_op = m.dot(&m.curvature_operator(&v, &w, &z), &y);
        let direct = m.curvature_tensor(&v, &w, &z, &y).unwrap();
        assert!((via_op - direct).abs() < 1e-14);
    }

    #[test]
    fn product_geodesic_examples() {
        let (m, o) = h2r2();
        let v = m.tangent(&o, &[0.0, 0.8, 0.0], &[0.6, 0.0]).unwrap();
        let g = m.geodesic_flow(&v, 1.0);
        let p = g.point();
        assert!((p.p1.coords() - Vector3::new(0.8f64.cosh(), 0.8f64.sinh(), 0.0)).amax() < 1e-15);
        assert!((p.p2.coords() - Vector3::new(0.6, 0.0, 0.0)).amax() < 1e-15);
        assert!((m.norm(&g.velocity()) - 1.0).abs() < 1e-14);

        let flat = m.tangent(&o, &[0.0, 0.0, 0.0], &[1.0, 0.0]).unwrap();
        let g = m.geodesic_flow(&flat, 2.5);
        assert_eq!(g.point().p1, o.p1);
        assert_eq!(*g.point().p2.coords(), Vector3::new(2.5, 0.0, 0.0));
    }

    #[test]
    fn transported_frame_stays_orthonormal() {
        let m = ProductSpace::new(1, -1).unwrap();
        let o = m.point(&[0.0, 0.6, 0.8], &[1.25, 0.75, 0.0]).unwrap();
        let basis = m.tangent_basis(&o);
        let v = basis[0].scale(0.3).add(&basis[1].scale(-0.5)).add(&basis[3].scale(0.8));
        let g = m.geodesic_flow(&v, 1.7);
        let moved: Vec<_> = basis.iter().map(|b| g.transport(b)).collect();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((m.inner(&moved[i], &moved[j]).unwrap() - want).abs() < 1e-10);
            }
        }
    }
}
