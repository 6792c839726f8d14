//! Constructors for the hypersurfaces with constant principal curvatures:
//! products of a constant-curvature curve with the other factor, and the
//! family `Ψ(ℝ³) ⊂ ℍ² × ℝ²` swept by geodesics through horocycles.

use nalgebra::{Vector2, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::hypersurface::{raw_point, raw_tangent, Immersion, Params};
use crate::product::{ProductPoint, ProductSpace, ProductTangent};
use crate::spaceform::SpaceForm;

const SPEC_TOL: f64 = 1e-10;

/// Principal curvatures, `C` and mean curvature predicted for a catalog member.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpectedInvariants {
    pub principal: [f64; 3],
    pub c: f64,
    pub h: f64,
}

impl ExpectedInvariants {
    pub fn sorted_principal(&self) -> [f64; 3] {
        let mut mu = self.principal;
        mu.sort_by(f64::total_cmp);
        mu
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveProductSpec {
    /// Factor carrying the curve, 1 or 2.
    pub factor: u8,
    pub kappa: f64,
    pub c1: i32,
    pub c2: i32,
}

impl CurveProductSpec {
    pub fn space(&self) -> Result<ProductSpace> {
        ProductSpace::new(self.c1, self.c2).map_err(|e| GeomError::Spec(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.factor != 1 && self.factor != 2 {
            return Err(GeomError::Spec(format!("factor must be 1 or 2, got {}", self.factor)));
        }
        if !(self.kappa.is_finite() && self.kappa >= 0.0) {
            return Err(GeomError::Spec(format!(
                "geodesic curvature {} must be >= 0",
                self.kappa
            )));
        }
        self.space().map(|_| ())
    }

    pub fn name(&self) -> String {
        let (c1, c2) = (self.c1, self.c2);
        match self.factor {
            1 => format!("C1(kappa={})x{}", self.kappa, sf(c2)),
            _ => format!("{}xC1(kappa={})", sf(c1), self.kappa),
        }
    }
}

fn sf(c: i32) -> &'static str {
    SpaceForm::from_curvature(c).map(SpaceForm::name).unwrap_or("?")
}

/// Parameters of `Ψ(t,u,v) = e^{−bt}(α(u), 0) + (cosh(−bt), 0, sinh(−bt), V₀t) + (0, p₀ + W₀v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsiSpec {
    pub v0: [f64; 2],
    pub w0: [f64; 2],
    pub p0: [f64; 2],
}

impl PsiSpec {
    pub fn new(v0: [f64; 2], w0: [f64; 2], p0: [f64; 2]) -> Result<Self> {
        let spec = Self { v0, w0, p0 };
        spec.validate()?;
        Ok(spec)
    }

    /// Spec with `W₀` the unit vector obtained by rotating `V₀` by +π/2.
    pub fn from_v0(v0: [f64; 2]) -> Result<Self> {
        let n = Vector2::from(v0).norm();
        let w0 = if n > 0.0 {
            [0.0 - v0[1] / n, v0[0] / n]
        } else {
            [0.0, 1.0]
        };
        Self::new(v0, w0, [0.0, 0.0])
    }

    pub fn validate(&self) -> Result<()> {
        let (v0, w0) = (Vector2::from(self.v0), Vector2::from(self.w0));
        let nv = v0.norm();
        if !(nv > 0.0 && nv < 1.0) {
            return Err(GeomError::Spec(format!("|V0| = {nv} must lie in (0, 1)")));
        }
        if (w0.norm() - 1.0).abs() > SPEC_TOL {
            return Err(GeomError::Spec(format!("|W0| = {} must be 1", w0.norm())));
        }
        if v0.dot(&w0).abs() > SPEC_TOL {
            return Err(GeomError::Spec("V0 and W0 must be orthogonal".into()));
        }
        if self.p0.iter().any(|x| !x.is_finite()) {
            return Err(GeomError::Spec("p0 must be finite".into()));
        }
        Ok(())
    }

    pub fn v0_norm(&self) -> f64 {
        Vector2::from(self.v0).norm()
    }

    /// `b = √(1 − |V₀|²)`.
    pub fn b(&self) -> f64 {
        (1.0 - self.v0_norm().powi(2)).sqrt()
    }

    pub fn expected(&self) -> ExpectedInvariants {
        let n = self.v0_norm();
        ExpectedInvariants {
            principal: [0.0, n, 0.0],
            c: 2.0 * n * n - 1.0,
            h: n / 3.0,
        }
    }

    pub fn name(&self) -> String {
        format!(
            "psi(v0=({},{}),w0=({},{}))",
            self.v0[0], self.v0[1], self.w0[0], self.w0[1]
        )
    }
}

/// `α(u) = (u²/2, u, −u²/2)`.
fn alpha(u: f64) -> Vector3<f64> {
    Vector3::new(u * u / 2.0, u, -u * u / 2.0)
}

fn plane(v: [f64; 2]) -> Vector3<f64> {
    Vector3::new(v[0], v[1], 0.0)
}

/// Geodesic normal coordinates `(a, b) ↦ exp_o(a e₁ + b e₂)` around the
/// chart origin of `sf`, with analytic partials.
fn normal_chart(sf: SpaceForm, a: f64, b: f64) -> (Vector3<f64>, Vector3<f64>, Vector3<f64>) {
    let rho2 = a * a + b * b;
    let rho = rho2.sqrt();
    let (o, e1, e2) = match sf {
        SpaceForm::Sphere => (Vector3::z(), Vector3::x(), Vector3::y()),
        SpaceForm::Hyperbolic => (Vector3::x(), Vector3::y(), Vector3::z()),
        SpaceForm::Plane => return (Vector3::new(a, b, 0.0), Vector3::x(), Vector3::y()),
    };
    // f = sin ρ/ρ or sinh ρ/ρ, g = f′(ρ)/ρ, series near ρ = 0
    let (cos_like, f, g, dcos_sign) = match sf {
        SpaceForm::Sphere => {
            let (f, g) = if rho < 1e-4 {
                (1.0 - rho2 / 6.0, -1.0 / 3.0 + rho2 / 30.0)
            } else {
                (rho.sin() / rho, (rho * rho.cos() - rho.sin()) / (rho2 * rho))
            };
            (rho.cos(), f, g, -1.0)
        }
        _ => {
            let (f, g) = if rho < 1e-4 {
                (1.0 + rho2 / 6.0, 1.0 / 3.0 + rho2 / 30.0)
            } else {
                (rho.sinh() / rho, (rho * rho.cosh() - rho.sinh()) / (rho2 * rho))
            };
            (rho.cosh(), f, g, 1.0)
        }
    };
    let w = e1 * a + e2 * b;
    let point = o * cos_like + w * f;
    let da = o * (dcos_sign * f * a) + w * (g * a) + e1 * f;
    let db = o * (dcos_sign * f * b) + w * (g * b) + e2 * f;
    (point, da, db)
}

/// `C¹(κ) × Q²_{c₂}` (factor 1) or `Q²_{c₁} × C¹(κ)` (factor 2), over
/// parameters `(s, a, b)`: arc length on the curve and normal coordinates on
/// the other factor.
pub fn curve_product(spec: &CurveProductSpec) -> Result<(Immersion, ExpectedInvariants)> {
    spec.validate()?;
    let space = spec.space()?;
    let (curve_sf, other_sf) = if spec.factor == 1 {
        (space.factor1, space.factor2)
    } else {
        (space.factor2, space.factor1)
    };
    let kappa = spec.kappa;
    let first = spec.factor == 1;
    let sample = move |q: Params| {
        let cs = curve_sf.constant_curvature_curve(kappa, q[0])?;
        let (x, xa, xb) = normal_chart(other_sf, q[1], q[2]);
        Ok::<_, GeomError>((cs, x, xa, xb))
    };
    let assemble = move |curve: Vector3<f64>, other: Vector3<f64>| {
        if first {
            raw_point(curve, other)
        } else {
            raw_point(other, curve)
        }
    };
    let tangent = move |at: &ProductPoint, curve: Vector3<f64>, other: Vector3<f64>| {
        if first {
            raw_tangent(at, curve, other)
        } else {
            raw_tangent(at, other, curve)
        }
    };
    let z = Vector3::zeros();
    let imm = Immersion::new(space, move |q| {
        let (cs, x, _, _) = sample(q)?;
        Ok(assemble(*cs.point.coords(), x))
    })
    .with_partials(move |q| {
        let (cs, x, xa, xb) = sample(q).expect("curvature validated at construction");
        let at = assemble(*cs.point.coords(), x);
        [
            tangent(&at, *cs.tangent.components(), z),
            tangent(&at, z, xa),
            tangent(&at, z, xb),
        ]
    })
    .with_normal_anchor(move |q| {
        let (cs, x, _, _) = sample(q)?;
        let at = assemble(*cs.point.coords(), x);
        Ok(tangent(&at, *cs.normal.components(), z))
    });
    let expected = ExpectedInvariants {
        principal: [kappa, 0.0, 0.0],
        c: if first { 1.0 } else { -1.0 },
        h: kappa / 3.0,
    };
    Ok((imm, expected))
}

fn psi_parts(spec: &PsiSpec, [t, u, v]: Params) -> (Vector3<f64>, Vector3<f64>) {
    let b = spec.b();
    let e = (-b * t).exp();
    let h2 = alpha(u) * e + Vector3::new((-b * t).cosh(), 0.0, (-b * t).sinh());
    let r2 = plane(spec.v0) * t + plane(spec.p0) + plane(spec.w0) * v;
    (h2, r2)
}

/// The unit normal `N = −|V₀|(e^{−bt}(α(u), 0) + (sinh(−bt), 0, cosh(−bt)), (b/|V₀|²)V₀)`.
pub fn psi_normal(spec: &PsiSpec, q: Params) -> ProductTangent {
    let (h2, r2) = psi_parts(spec, q);
    let at = raw_point(h2, r2);
    let (b, n) = (spec.b(), spec.v0_norm());
    let [t, u, _] = q;
    let n1 = (alpha(u) * (-b * t).exp() + Vector3::new((-b * t).sinh(), 0.0, (-b * t).cosh())) * -n;
    let n2 = plane(spec.v0) * (-b / n);
    raw_tangent(&at, n1, n2)
}

pub fn psi_family(spec: &PsiSpec) -> Result<(Immersion, ExpectedInvariants)> {
    spec.validate()?;
    let space = ProductSpace::new(-1, 0)?;
    let s = *spec;
    let imm = Immersion::new(space, move |q| {
        let (h2, r2) = psi_parts(&s, q);
        Ok(raw_point(h2, r2))
    })
    .with_partials(move |q| {
        let (h2, r2) = psi_parts(&s, q);
        let at = raw_point(h2, r2);
        let b = s.b();
        let [t, u, _] = q;
        let e = (-b * t).exp();
        let pt = (alpha(u) * e + Vector3::new((-b * t).sinh(), 0.0, (-b * t).cosh())) * -b;
        let pu = Vector3::new(u, 1.0, -u) * e;
        [
            raw_tangent(&at, pt, plane(s.v0)),
            raw_tangent(&at, pu, Vector3::zeros()),
            raw_tangent(&at, Vector3::zeros(), plane(s.w0)),
        ]
    })
    .with_normal_anchor(move |q| Ok(psi_normal(&s, q)));
    Ok((imm, spec.expected()))
}

/// Point `(cosh(ωt)φ(u) + sinh(ωt)n(u), p₀ + W₀v + V₀t)` of the geodesic
/// family through the horocycle `φ(u) = (1 + u²/2, u, −u²/2)` with
/// `n(u) = (u²/2, u, 1 − u²/2)` and `ω = −b`.
pub fn remark_geodesic(spec: &PsiSpec, u: f64, v: f64, t: f64) -> ProductPoint {
    let omega = -spec.b();
    let phi = Vector3::new(1.0 + u * u / 2.0, u, -u * u / 2.0);
    let n = Vector3::new(u * u / 2.0, u, 1.0 - u * u / 2.0);
    let h2 = phi * (omega * t).cosh() + n * (omega * t).sinh();
    let r2 = plane(spec.p0) + plane(spec.w0) * v + plane(spec.v0) * t;
    raw_point(h2, r2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypersurface::{adapted_frame, covariant_derivative, tangent_frame, unit_normal};

    fn spec06() -> PsiSpec {
        PsiSpec::new([0.6, 0.0], [0.0, 1.0], [0.0, 0.0]).unwrap()
    }

    #[test]
    fn psi_origin_and_expectations() {
        let (imm, exp) = psi_family(&spec06()).unwrap();
        let p = imm.point([0.0; 3]).unwrap();
        assert_eq!(*p.p1.coords(), Vector3::new(1.0, 0.0, 0.0));
        assert_eq!(*p.p2.coords(), Vector3::zeros());
        assert!((exp.c + 0.28).abs() < 1e-15);
        assert_eq!(exp.principal, [0.0, 0.6, 0.0]);
        assert!((exp.h - 0.2).abs() < 1e-15);

        let s = PsiSpec::new([0.0, 0.9], [1.0, 0.0], [0.0, 0.0]).unwrap();
        assert!((s.b() - 0.19f64.sqrt()).abs() < 1e-15);
        assert!((s.b() - 0.43589).abs() < 1e-5);
    }

    #[test]
    fn psi_spec_errors() {
        assert!(PsiSpec::new([1.2, 0.0], [0.0, 1.0], [0.0, 0.0]).is_err());
        assert!(PsiSpec::new([0.0, 0.0], [0.0, 1.0], [0.0, 0.0]).is_err());
        assert!(PsiSpec::new([0.6, 0.0], [0.6, 0.8], [0.0, 0.0]).is_err());
        assert!(PsiSpec::new([0.6, 0.0], [0.0, 2.0], [0.0, 0.0]).is_err());
        assert!(PsiSpec::from_v0([0.3, 0.4]).is_ok());
    }

    #[test]
    fn psi_points_lie_on_the_hyperboloid() {
        let (imm, _) = psi_family(&spec06()).unwrap();
        for q in imm.grid(4) {
            let p = imm.point(q).unwrap();
            assert!(SpaceForm::Hyperbolic.constraint_residual(p.p1.coords()) < 1e-13);
        }
    }

    #[test]
    fn psi_partials_closed_form() {
        let s = spec06();
        let (imm, _) = psi_family(&s).unwrap();
        let q = [0.4, -0.7, 1.1];
        let f = tangent_frame(&imm, q).unwrap();
        let e = (-s.b() * 0.4f64).exp();
        assert_eq!(*f.tangents[2].v1.components(), Vector3::zeros());
        assert_eq!(*f.tangents[2].v2.components(), Vector3::new(0.0, 1.0, 0.0));
        assert!((f.tangents[1].v1.components() - Vector3::new(-0.7, 1.0, 0.7) * e).amax() < 1e-15);
        // analytic partials against central differences of the map
        let fd = tangent_frame(&imm.finite_difference(), q).unwrap();
        for k in 0..3 {
            let (a, b) = (f.tangents[k].ambient(), fd.tangents[k].ambient());
            for i in 0..6 {
                assert!((a[i] - b[i]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn remark_geodesic_reproduces_psi() {
        let s = spec06();
        let (imm, _) = psi_family(&s).unwrap();
        let p = imm.point([1.0, 0.5, 2.0]).unwrap();
        let g = remark_geodesic(&s, 0.5, 2.0, 1.0);
        assert!((p.p1.coords() - g.p1.coords()).amax() < 1e-12);
        assert!((p.p2.coords() - g.p2.coords()).amax() < 1e-12);
        let g0 = remark_geodesic(&s, 0.5, 2.0, 0.0);
        let p0 = imm.point([0.0, 0.5, 2.0]).unwrap();
        assert!((p0.p1.coords() - g0.p1.coords()).amax() < 1e-15);
    }

    #[test]
    fn normal_chart_partials() {
        for sf in [SpaceForm::Sphere, SpaceForm::Hyperbolic, SpaceForm::Plane] {
            for (a, b) in [(0.0, 0.0), (0.3, -0.8), (1e-6, 2e-6), (-0.9, 0.4)] {
                let (x, xa, xb) = normal_chart(sf, a, b);
                assert!(sf.constraint_residual(&x) < 1e-14);
                let h = 1e-6;
                let na = (normal_chart(sf, a + h, b).0 - normal_chart(sf, a - h, b).0) / (2.0 * h);
                let nb = (normal_chart(sf, a, b + h).0 - normal_chart(sf, a, b - h).0) / (2.0 * h);
                assert!((na - xa).amax() < 1e-8, "{sf:?} {a} {b}");
                assert!((nb - xb).amax() < 1e-8, "{sf:?} {a} {b}");
            }
        }
    }

    #[test]
    fn curve_product_specs() {
        let bad = CurveProductSpec {
            factor: 1,
            kappa: -0.5,
            c1: -1,
            c2: 0,
        };
        assert!(curve_product(&bad).is_err());
        let same = CurveProductSpec {
            factor: 1,
            kappa: 0.5,
            c1: 0,
            c2: 0,
        };
        assert!(curve_product(&same).is_err());
        let (_, exp) = curve_product(&CurveProductSpec {
            factor: 2,
            kappa: 0.5,
            c1: 1,
            c2: 0,
        })
        .unwrap();
        assert_eq!(exp.sorted_principal(), [0.0, 0.0, 0.5]);
        assert_eq!(exp.c, -1.0);
    }

    #[test]
    fn psi_connection_and_commutator() {
        let s = spec06();
        let (imm, exp) = psi_family(&s).unwrap();
        let space = imm.space();
        let frame = |q: Params| -> Result<[ProductTangent; 3]> { adapted_frame(&unit_normal(&imm, q)?, &space) };
        let lambda = |q: Params| (-s.b() * q[0]).exp();
        for q in [[0.0, 0.0, 0.0], [0.3, -0.6, 0.9]] {
            let b = frame(q).unwrap();
            let b1 = |p: Params| frame(p).map(|f| f[0]);
            let lb2 = |p: Params| frame(p).map(|f| f[1].scale(lambda(p)));
            let d21 = covariant_derivative(&imm, q, &b[1], b1).unwrap();
            let want = b[1].scale(-((1.0 - exp.c) / 2.0).sqrt());
            assert!(space.norm(&d21.sub(&want)) < 1e-4);
            let d11 = covariant_derivative(&imm, q, &b[0], b1).unwrap();
            assert!(space.norm(&d11) < 1e-4);
            // [B₁, λB₂] = ∇_{B₁}(λB₂) − ∇_{λB₂}B₁
            let a = covariant_derivative(&imm, q, &b[0], lb2).unwrap();
            let c = covariant_derivative(&imm, q, &b[1].scale(lambda(q)), b1).unwrap();
            assert!(space.norm(&a.sub(&c)) < 1e-4);
        }
    }
}
