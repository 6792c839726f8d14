//! Algebraic case analysis: which `(σ, C)` data survive the Codazzi
//! constraints for each curvature pair, and which families result.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::spaceform::SpaceForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurvaturePair {
    pub c1: i32,
    pub c2: i32,
}

impl CurvaturePair {
    pub fn new(c1: i32, c2: i32) -> Result<Self> {
        for c in [c1, c2] {
            if !(-1..=1).contains(&c) {
                return Err(GeomError::Input(format!("curvature {c} not in {{-1, 0, 1}}")));
            }
        }
        if c1 == c2 {
            return Err(GeomError::Input(format!("c1 = c2 = {c1}; the factors must differ")));
        }
        Ok(Self { c1, c2 })
    }

    /// The six ordered pairs from `{−1, 0, 1}` with `c₁ ≠ c₂`.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(6);
        for c1 in -1..=1 {
            for c2 in -1..=1 {
                if c1 != c2 {
                    out.push(Self { c1, c2 });
                }
            }
        }
        out
    }

    pub fn name(&self) -> String {
        format!("{}x{}", space_name(self.c1), space_name(self.c2))
    }

    pub fn reduced_system(&self, c: f64) -> Result<Vec<(f64, f64)>> {
        reduced_system(self.c1 as f64, self.c2 as f64, c)
    }
}

fn space_name(c: i32) -> &'static str {
    SpaceForm::from_curvature(c).map(SpaceForm::name).unwrap_or("?")
}

/// Solutions `(σ₂₂, σ₃₃)` of `σ₂₂² = −c₁(1+C)/2`, `σ₃₃² = −c₂(1−C)/2`,
/// every sign combination, duplicates from zero roots removed.
pub fn reduced_system(c1: f64, c2: f64, c: f64) -> Result<Vec<(f64, f64)>> {
    if !(c > -1.0 && c < 1.0) {
        return Err(GeomError::Domain(format!("C = {c} outside (-1, 1)")));
    }
    let r22 = -c1 * (1.0 + c) / 2.0;
    let r33 = -c2 * (1.0 - c) / 2.0;
    if r22 < 0.0 || r33 < 0.0 {
        return Ok(Vec::new());
    }
    let roots = |r: f64| {
        let s = r.sqrt();
        if s == 0.0 {
            vec![0.0]
        } else {
            vec![s, -s]
        }
    };
    let mut out = Vec::new();
    for s22 in roots(r22) {
        for s33 in roots(r33) {
            out.push((s22, s33));
        }
    }
    Ok(out)
}

/// Outcome of solving `c₁(1 − C) = c₂(1 + C)`, the condition forced by `σ₂₃ ≠ 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Obstruction {
    pub equation: String,
    /// `(c₁ − c₂)/(c₁ + c₂)`, absent when `c₁ + c₂ = 0`.
    pub candidate: Option<f64>,
    pub admissible: bool,
    pub reason: String,
}

pub fn offdiag_obstruction(c1: f64, c2: f64) -> Obstruction {
    let equation = format!("{c1}(1 - C) = {c2}(1 + C)");
    let sum = c1 + c2;
    if sum == 0.0 {
        let (admissible, reason) = if c1 == 0.0 {
            (true, "identity 0 = 0: every C solves it".to_string())
        } else {
            (false, format!("reduces to {} = 0", 2.0 * c1))
        };
        return Obstruction {
            equation,
            candidate: None,
            admissible,
            reason,
        };
    }
    let cand = (c1 - c2) / sum;
    let admissible = cand > -1.0 && cand < 1.0;
    let reason = if admissible {
        format!("C = {cand} lies in (-1, 1)")
    } else {
        format!("only solution C = {cand} is outside (-1, 1)")
    };
    Obstruction {
        equation,
        candidate: Some(cand),
        admissible,
        reason,
    }
}

/// `Q_A(λ) = −λ³ + 3h₀λ² − A₄λ` with its roots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharPoly {
    /// Coefficients of `λ³, λ², λ, 1`.
    pub coeffs: [f64; 4],
    /// `0` and `(3h₀ ± √(9h₀² − 4A₄))/2`; real parts when complex.
    pub roots: [f64; 3],
    pub imag: [f64; 3],
    pub real: bool,
}

impl CharPoly {
    pub fn eval(&self, x: f64) -> f64 {
        let [a, b, c, d] = self.coeffs;
        ((a * x + b) * x + c) * x + d
    }

    pub fn sorted_roots(&self) -> [f64; 3] {
        let mut r = self.roots;
        r.sort_by(f64::total_cmp);
        r
    }
}

pub fn characteristic_poly(h0: f64, a4: f64) -> CharPoly {
    let coeffs = [-1.0, 3.0 * h0, -a4, 0.0];
    let disc = 9.0 * h0 * h0 - 4.0 * a4;
    let mid = 1.5 * h0;
    if disc >= 0.0 {
        let s = disc.sqrt() / 2.0;
        CharPoly {
            coeffs,
            roots: [0.0, mid - s, mid + s],
            imag: [0.0; 3],
            real: true,
        }
    } else {
        let s = (-disc).sqrt() / 2.0;
        CharPoly {
            coeffs,
            roots: [0.0, mid, mid],
            imag: [0.0, -s, s],
            real: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyTag {
    #[serde(rename = "curve-product-factor-1")]
    CurveProductFactor1,
    #[serde(rename = "curve-product-factor-2")]
    CurveProductFactor2,
    #[serde(rename = "interior-C")]
    InteriorC,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Family {
    pub tag: FamilyTag,
    pub name: String,
    /// Constraint on `C` (a value for curve products, an interval otherwise).
    pub c_range: String,
    /// Geodesic curvature range of the curve, for curve products.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<SigmaFormulas>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor_order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaFormulas {
    pub s22: String,
    pub s23: String,
    pub s33: String,
    pub parameter: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyEnumeration {
    pub pair: CurvaturePair,
    pub space: String,
    pub families: Vec<Family>,
    pub obstruction: Obstruction,
    /// A value of `C ∈ (−1, 1)` where the reduced system is solvable.
    pub interior_witness: Option<f64>,
}

/// Complete constant-curvature curves of a factor: (name, κ range).
fn curve_kinds(c: i32) -> Vec<(&'static str, &'static str)> {
    match c {
        1 => vec![("S^1(t)", "[0,inf)")],
        0 => vec![("R", "0"), ("S^1(r)", "(0,inf)")],
        _ => vec![
            ("R", "0"),
            ("hypercycle", "(0,1)"),
            ("horocycle", "1"),
            ("S^1(r)", "(1,inf)"),
        ],
    }
}

/// `C` in `(−1, 1)` where both reduced right-hand sides are non-negative.
fn interior_witness(pair: &CurvaturePair) -> Option<f64> {
    const PROBES: [f64; 5] = [0.0, -0.5, 0.5, -0.9, 0.9];
    PROBES
        .into_iter()
        .find(|&c| pair.reduced_system(c).map(|s| !s.is_empty()).unwrap_or(false))
}

pub fn classify(pair: CurvaturePair) -> FamilyEnumeration {
    let (n1, n2) = (space_name(pair.c1), space_name(pair.c2));
    let mut families = Vec::new();
    for (curve, kappa) in curve_kinds(pair.c1) {
        families.push(Family {
            tag: FamilyTag::CurveProductFactor1,
            name: format!("{curve} x {n2}"),
            c_range: "1".into(),
            kappa: Some(kappa.into()),
            sigma: None,
            factor_order: None,
            note: None,
        });
    }
    for (curve, kappa) in curve_kinds(pair.c2) {
        families.push(Family {
            tag: FamilyTag::CurveProductFactor2,
            name: format!("{n1} x {curve}"),
            c_range: "-1".into(),
            kappa: Some(kappa.into()),
            sigma: None,
            factor_order: None,
            note: None,
        });
    }
    let witness = interior_witness(&pair);
    if witness.is_some() {
        // only {−1, 0} reaches here for normalized pairs
        let swapped = pair.c1 == 0;
        let (name, order, sigma) = if swapped {
            (
                "R^2 x H^2: Psi with factors swapped",
                "swapped: Psi is built in H^2 x R^2, coordinates exchanged",
                SigmaFormulas {
                    s22: "0".into(),
                    s23: "0".into(),
                    s33: "±sqrt((1-C)/2)".into(),
                    parameter: "|V0| = sqrt((1-C)/2)".into(),
                },
            )
        } else {
            (
                "H^2 x R^2: Psi(R^3)",
                "as built",
                SigmaFormulas {
                    s22: "±sqrt((1+C)/2)".into(),
                    s23: "0".into(),
                    s33: "0".into(),
                    parameter: "|V0| = sqrt((1+C)/2)".into(),
                },
            )
        };
        families.push(Family {
            tag: FamilyTag::InteriorC,
            name: name.into(),
            c_range: "(-1,1)".into(),
            kappa: None,
            sigma: Some(sigma),
            factor_order: Some(order.into()),
            note: Some("sign branches of sigma differ by the orientation of N; listed once".into()),
        });
    }
    FamilyEnumeration {
        pair,
        space: pair.name(),
        families,
        obstruction: offdiag_obstruction(pair.c1 as f64, pair.c2 as f64),
        interior_witness: witness,
    }
}

pub fn classify_all() -> Vec<FamilyEnumeration> {
    CurvaturePair::all().into_iter().map(classify).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypersurface::codazzi_constraint_residuals;

    #[test]
    fn reduced_system_examples() {
        let p = CurvaturePair::new(-1, 0).unwrap();
        let s = p.reduced_system(-0.28).unwrap();
        assert_eq!(s.len(), 2);
        for (a, b) in &s {
            assert!((a.abs() - 0.6).abs() < 1e-15);
            assert_eq!(*b, 0.0);
        }
        let q = CurvaturePair::new(1, 0).unwrap();
        for c in [-0.9, 0.0, 0.7] {
            assert!(q.reduced_system(c).unwrap().is_empty());
        }
        let r = CurvaturePair::new(0, -1).unwrap().reduced_system(0.0).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r
            .iter()
            .all(|&(a, b)| a == 0.0 && (b.abs() - 0.5f64.sqrt()).abs() < 1e-15));
        assert!(p.reduced_system(1.0).is_err());
        assert_eq!(reduced_system(-1.0, -2.0, 0.2).unwrap().len(), 4);
    }

    #[test]
    fn reduced_solutions_satisfy_codazzi() {
        for c1 in [-2.0, -1.0, 0.0, 1.0] {
            for c2 in [-1.5, -1.0, 0.0, 1.0] {
                for k in 1..40 {
                    let c = -1.0 + k as f64 / 20.0;
                    for (s22, s33) in reduced_system(c1, c2, c).unwrap() {
                        let r = codazzi_constraint_residuals(s22, 0.0, s33, c, c1, c2).unwrap();
                        assert!(r.iter().all(|x| x.abs() < 1e-12), "{c1} {c2} {c}: {r:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn obstruction_examples() {
        let o = offdiag_obstruction(1.0, -1.0);
        assert!(!o.admissible && o.candidate.is_none());
        assert_eq!(offdiag_obstruction(1.0, 0.0).candidate, Some(1.0));
        assert_eq!(offdiag_obstruction(0.0, -1.0).candidate, Some(-1.0));
        for p in CurvaturePair::all() {
            assert!(!offdiag_obstruction(p.c1 as f64, p.c2 as f64).admissible, "{p:?}");
        }
        // a pair outside the normalized set where the obstruction does not bite
        assert!(offdiag_obstruction(-1.0, -3.0).admissible);
    }

    #[test]
    fn characteristic_poly_examples() {
        let q = characteristic_poly(0.2, 0.0);
        assert!((q.coeffs[1] - 0.6).abs() < 1e-15 && q.coeffs[0] == -1.0 && q.coeffs[2] == 0.0);
        let r = q.sorted_roots();
        assert!(r[0].abs() < 1e-15 && r[1].abs() < 1e-15 && (r[2] - 0.6).abs() < 1e-15);
        assert_eq!(characteristic_poly(0.0, 0.0).sorted_roots(), [0.0; 3]);
        let r = characteristic_poly(1.0 / 3.0, 0.0).sorted_roots();
        assert!((r[2] - 1.0).abs() < 1e-15);
        let z = characteristic_poly(0.1, 1.0);
        assert!(!z.real);
        for (h, a) in [(0.3, -0.4), (1.0, 0.5), (-0.7, 0.2)] {
            let q = characteristic_poly(h, a);
            for x in q.roots {
                assert!(q.eval(x).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn classification_shape() {
        let all = classify_all();
        assert_eq!(all.len(), 6);
        for e in &all {
            let interior = e.families.iter().any(|f| f.tag == FamilyTag::InteriorC);
            let expect = matches!((e.pair.c1, e.pair.c2), (-1, 0) | (0, -1));
            assert_eq!(interior, expect, "{:?}", e.pair);
            assert!(!e.families.is_empty());
        }
        let s2r2 = classify(CurvaturePair::new(1, 0).unwrap());
        let names: Vec<_> = s2r2.families.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, ["S^1(t) x R^2", "S^2 x R", "S^2 x S^1(r)"]);
        assert!(CurvaturePair::new(1, 1).is_err());
        assert!(CurvaturePair::new(2, 0).is_err());
    }
}
