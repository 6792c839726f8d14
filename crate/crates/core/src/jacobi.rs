//! Closed-form Jacobi fields along the normal geodesics of a hypersurface
//! with `C² < 1`.
//!
//! In the adapted frame `B₁, B₂, B₃`, transported along the normal geodesic,
//! the Jacobi fields `ξ_j = Σ b_ij B_i` solve `b₁ⱼ″ = 0`, `b₂ⱼ″ + δ₁b₂ⱼ = 0`,
//! `b₃ⱼ″ + δ₂b₃ⱼ = 0` with `D(0) = I`, `D′(0) = −A`. The parallel
//! hypersurface at distance `r` has shape operator `A_r = −D′D⁻¹` and mean
//! curvature `h(r) = −(det D)′ / (3 det D)`.

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::hypersurface::{adapted_frame, shape_operator, unit_normal, Immersion, Params};
use crate::product::ProductTangent;

/// Focal tolerance on `|det D|`.
pub const FOCAL_DET_TOL: f64 = 1e-10;
pub const DEFAULT_FOCAL_SEARCH: f64 = 10.0;

/// `(S_δ(r), C_δ(r))`: the solutions of `y″ + δy = 0` with
/// `S(0) = 0, S′(0) = 1` and `C(0) = 1, C′(0) = 0`.
pub fn trig_pair(delta: f64, r: f64) -> (f64, f64) {
    if delta < 0.0 {
        let k = (-delta).sqrt();
        ((k * r).sinh() / k, (k * r).cosh())
    } else if delta > 0.0 {
        let k = delta.sqrt();
        ((k * r).sin() / k, (k * r).cos())
    } else {
        (r, 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Deltas {
    pub d1: f64,
    pub d2: f64,
}

impl Deltas {
    /// `δ₁ = c₁(1 + C)/2`, `δ₂ = c₂(1 − C)/2`.
    pub fn new(c: f64, c1: f64, c2: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&c) {
            return Err(GeomError::Domain(format!("C = {c} outside [-1, 1]")));
        }
        Ok(Self {
            d1: c1 * (1.0 + c) / 2.0,
            d2: c2 * (1.0 - c) / 2.0,
        })
    }

    pub fn sum(&self) -> f64 {
        self.d1 + self.d2
    }
}

pub fn deltas(c: f64, c1: i32, c2: i32) -> Result<Deltas> {
    Deltas::new(c, c1 as f64, c2 as f64)
}

/// Symmetric shape-operator entries `σ_ij` in the adapted frame.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SigmaSet {
    pub s11: f64,
    pub s12: f64,
    pub s13: f64,
    pub s22: f64,
    pub s23: f64,
    pub s33: f64,
}

impl SigmaSet {
    pub fn diagonal(s11: f64, s22: f64, s33: f64) -> Self {
        Self {
            s11,
            s22,
            s33,
            ..Self::default()
        }
    }

    /// Upper triangle of `m`; the lower triangle is ignored.
    pub fn from_matrix(m: &Matrix3<f64>) -> Self {
        Self {
            s11: m[(0, 0)],
            s12: m[(0, 1)],
            s13: m[(0, 2)],
            s22: m[(1, 1)],
            s23: m[(1, 2)],
            s33: m[(2, 2)],
        }
    }

    pub fn matrix(&self) -> Matrix3<f64> {
        Matrix3::new(
            self.s11, self.s12, self.s13, //
            self.s12, self.s22, self.s23, //
            self.s13, self.s23, self.s33,
        )
    }

    pub fn trace(&self) -> f64 {
        self.s11 + self.s22 + self.s33
    }

    /// `(A₁, A₂, A₃, A₄) = (−det A, σ₁₁σ₂₂ − σ₁₂², σ₁₁σ₃₃ − σ₁₃², σ₂₂σ₃₃ − σ₂₃²)`.
    pub fn minors(&self) -> [f64; 4] {
        [
            -self.matrix().determinant(),
            self.s11 * self.s22 - self.s12 * self.s12,
            self.s11 * self.s33 - self.s13 * self.s13,
            self.s22 * self.s33 - self.s23 * self.s23,
        ]
    }
}

/// `D(r)` and `D′(r)`; column `j` holds the coefficients of `ξ_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DMatrix {
    pub r: f64,
    pub value: Matrix3<f64>,
    pub derivative: Matrix3<f64>,
}

impl DMatrix {
    pub fn det(&self) -> f64 {
        self.value.determinant()
    }
}

pub fn d_matrix(s: &SigmaSet, d: &Deltas, r: f64) -> DMatrix {
    let (s1, c1) = trig_pair(d.d1, r);
    let (s2, c2) = trig_pair(d.d2, r);
    let value = Matrix3::new(
        1.0 - s.s11 * r,
        -s.s12 * r,
        -s.s13 * r, //
        -s.s12 * s1,
        c1 - s.s22 * s1,
        -s.s23 * s1, //
        -s.s13 * s2,
        -s.s23 * s2,
        c2 - s.s33 * s2,
    );
    // S′ = C, C′ = −δS
    let (ds1, dc1) = (c1, -d.d1 * s1);
    let (ds2, dc2) = (c2, -d.d2 * s2);
    let derivative = Matrix3::new(
        -s.s11,
        -s.s12,
        -s.s13, //
        -s.s12 * ds1,
        dc1 - s.s22 * ds1,
        -s.s23 * ds1, //
        -s.s13 * ds2,
        -s.s23 * ds2,
        dc2 - s.s33 * ds2,
    );
    DMatrix { r, value, derivative }
}

/// Expansion of `det D(r)` and `(det D)′(r)` in terms of the minors `A₁..A₄`.
pub fn det_expansion(s: &SigmaSet, d: &Deltas, r: f64) -> (f64, f64) {
    let [a1, a2, a3, a4] = s.minors();
    let (s1, c1) = trig_pair(d.d1, r);
    let (s2, c2) = trig_pair(d.d2, r);
    let (d1, d2) = (d.d1, d.d2);
    let det = a1 * r * s1 * s2 + a2 * r * s1 * c2 + a3 * r * s2 * c1 + a4 * s1 * s2
        - s.s11 * r * c1 * c2
        - s.s22 * s1 * c2
        - s.s33 * s2 * c1
        + c1 * c2;
    let ddet = a1 * (s1 * s2 + r * c1 * s2 + r * s1 * c2)
        + a2 * (s1 * c2 + r * c1 * c2 - r * d2 * s1 * s2)
        + a3 * (s2 * c1 + r * c2 * c1 - r * d1 * s2 * s1)
        + a4 * (c1 * s2 + s1 * c2)
        - s.s11 * (c1 * c2 - r * d1 * s1 * c2 - r * d2 * c1 * s2)
        - s.s22 * (c1 * c2 - d2 * s1 * s2)
        - s.s33 * (c2 * c1 - d1 * s2 * s1)
        - d1 * s1 * c2
        - d2 * c1 * s2;
    (det, ddet)
}

/// Closed-form geometry of the parallel hypersurface at distance `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParallelReport {
    pub r: f64,
    /// `A_r` in the transported adapted frame.
    pub shape: Matrix3<f64>,
    pub det: f64,
    pub mean_curvature: f64,
}

pub fn parallel_shape(s: &SigmaSet, d: &Deltas, r: f64) -> Result<ParallelReport> {
    let dm = d_matrix(s, d, r);
    let det = dm.det();
    if !(det.abs() > FOCAL_DET_TOL) {
        let reach = if r >= 0.0 {
            r.max(DEFAULT_FOCAL_SEARCH)
        } else {
            r.min(-DEFAULT_FOCAL_SEARCH)
        };
        return Err(GeomError::Focal {
            r,
            det,
            first_focal: first_focal_distance(s, d, reach),
        });
    }
    let inv = dm.value.try_inverse().ok_or(GeomError::Focal {
        r,
        det,
        first_focal: None,
    })?;
    let shape = -dm.derivative * inv;
    Ok(ParallelReport {
        r,
        shape,
        det,
        mean_curvature: shape.trace() / 3.0,
    })
}

/// Smallest `|r|` between 0 and `reach` (in the direction of its sign) with
/// `det D(r) = 0`, found by a sign scan followed by bisection.
pub fn first_focal_distance(s: &SigmaSet, d: &Deltas, reach: f64) -> Option<f64> {
    const SCAN: usize = 4000;
    let det = |r: f64| d_matrix(s, d, r).det();
    let mut prev_r = 0.0;
    let mut prev = det(0.0);
    for i in 1..=SCAN {
        let r = reach * i as f64 / SCAN as f64;
        let cur = det(r);
        if cur.abs() <= FOCAL_DET_TOL {
            return Some(r);
        }
        if cur.signum() != prev.signum() {
            let (mut lo, mut hi) = (prev_r, r);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if det(mid).signum() == prev.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if (hi - lo).abs() < 1e-15 {
                    break;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        prev_r = r;
        prev = cur;
    }
    None
}

/// `(h(0), h′(0), h″(0))` from the Riccati equation `A′ = A² + K`,
/// `K = diag(0, δ₁, δ₂)`.
pub fn mean_curvature_jets(s: &SigmaSet, d: &Deltas) -> (f64, f64, f64) {
    let a = s.matrix();
    let a2 = a * a;
    let h0 = a.trace() / 3.0;
    let h1 = (a2.trace() + d.sum()) / 3.0;
    let h2 = 2.0 * ((a2 * a).trace() + s.s22 * d.d1 + s.s33 * d.d2) / 3.0;
    (h0, h1, h2)
}

/// Residuals of the identities obtained from `f′(0) = 0`, `f″(0) = 0` and
/// the trace identity `tr(A²) = 3h′(0) − (δ₁ + δ₂)`.
pub fn isoparametric_identity_residuals(s: &SigmaSet, d: &Deltas, h0: f64, h1: f64, h2: f64) -> [f64; 3] {
    let [a1, a2, a3, a4] = s.minors();
    let sum = a2 + a3 + a4;
    let f1 = 2.0 * sum - 9.0 * h0 * h0 + 3.0 * h1 - d.sum();
    let f2 = 6.0 * a1 + 6.0 * h0 * sum - 18.0 * h1 * h0
        + 2.0 * s.s11 * d.sum()
        + 2.0 * s.s22 * d.d2
        + 2.0 * s.s33 * d.d1
        + 3.0 * h2;
    let m = s.matrix();
    let trace = (m * m).trace() - 3.0 * h1 + d.sum();
    [f1, f2, trace]
}

/// `2σ₃₃(δ₁ − δ₂) + 3h(δ₁ + δ₂) + 6hδ₂ + 27h³ − 27h′h + 3h″`, valid when
/// `σ₁ⱼ = 0` and `3h = σ₂₂ + σ₃₃`.
pub fn combined_cubic_residual(s: &SigmaSet, d: &Deltas, h0: f64, h1: f64, h2: f64) -> f64 {
    2.0 * s.s33 * (d.d1 - d.d2) + 3.0 * h0 * d.sum() + 6.0 * h0 * d.d2 + 27.0 * h0.powi(3) - 27.0 * h1 * h0 + 3.0 * h2
}

/// `f(r) = (det D)′ + 3h(r) det D`, with `h(r)` from the closed form.
pub fn f_function(s: &SigmaSet, d: &Deltas, r: f64) -> Result<f64> {
    let rep = parallel_shape(s, d, r)?;
    let (_, ddet) = det_expansion(s, d, r);
    Ok(ddet + 3.0 * rep.mean_curvature * rep.det)
}

/// The parallel hypersurface `q ↦ exp_{Ψ(q)}(r N(q))`.
pub fn parallel_surface(imm: &Immersion, r: f64) -> Immersion {
    let space = imm.space();
    let base = imm.clone();
    let anchor_base = imm.clone();
    Immersion::new(space, move |q| {
        let fd = unit_normal(&base, q)?;
        Ok(space.geodesic_flow(&fd.normal, r).point())
    })
    .with_normal_anchor(move |q| {
        let fd = unit_normal(&anchor_base, q)?;
        Ok(space.geodesic_flow(&fd.normal, r).velocity())
    })
    .with_domain(imm.domain)
}

/// Numeric shape operator of the parallel hypersurface at `q`, expressed in
/// the adapted frame of `Σ` transported along the normal geodesic.
pub fn transported_parallel_shape(imm: &Immersion, q: Params, r: f64) -> Result<Matrix3<f64>> {
    let space = imm.space();
    let fd = unit_normal(imm, q)?;
    let frame = adapted_frame(&fd, &space)?;
    let step = space.geodesic_flow(&fd.normal, r);
    let moved: [ProductTangent; 3] = std::array::from_fn(|i| step.transport(&frame[i]));
    let shifted = parallel_surface(imm, r);
    Ok(shape_operator(&shifted, q, &moved)?.matrix)
}
