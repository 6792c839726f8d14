use std::fmt::Write as _;
use std::time::Instant;

use nalgebra::Matrix3;
use serde::Serialize;
use serde_json::json;

use isoparam_core::catalog::{
    curve_product, psi_family, remark_geodesic, CurveProductSpec, ExpectedInvariants, PsiSpec,
};
use isoparam_core::classifier::{
    characteristic_poly, classify, classify_all, CurvaturePair, FamilyEnumeration, FamilyTag,
};
use isoparam_core::hypersurface::{
    adapted_frame, codazzi_constraint_residuals, covariant_derivative, point_invariants, unit_normal, Immersion,
    Params, PointInvariants,
};
use isoparam_core::jacobi::{
    combined_cubic_residual, deltas, isoparametric_identity_residuals, mean_curvature_jets, parallel_shape,
    parallel_surface, transported_parallel_shape, Deltas, SigmaSet,
};
use isoparam_core::GeomError;

use crate::config::{Member, RunConfig};
use crate::report::{Check, CheckReport};
use crate::CliError;

/// Reference enumeration for the six ordered curvature pairs.
pub const GOLDEN_ENUMERATION: &str = include_str!("../golden/classify_all.json");

const GEODESIC_TOL: f64 = 1e-12;

/// What a command produced: text for stdout plus the exit status.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub pass: bool,
}

fn spec_err(e: GeomError) -> CliError {
    CliError::Spec(e.to_string())
}

fn emit(cfg: &RunConfig, report: &CheckReport, text: String) -> Result<Outcome, CliError> {
    if let Some(path) = &cfg.out {
        std::fs::write(path, report.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    let stdout = if cfg.json { report.to_json() + "\n" } else { text };
    Ok(Outcome {
        stdout,
        pass: report.pass,
    })
}

enum Built {
    Psi(PsiSpec),
    Curve(CurveProductSpec),
}

fn build(member: &Member) -> Result<(Immersion, ExpectedInvariants, String, Built), CliError> {
    match *member {
        Member::Psi { v0, w0, p0 } => {
            let spec = match w0 {
                Some(w0) => PsiSpec::new(v0, w0, p0),
                None => PsiSpec::from_v0(v0).map(|s| PsiSpec { p0, ..s }),
            }
            .map_err(spec_err)?;
            let (imm, exp) = psi_family(&spec).map_err(spec_err)?;
            Ok((imm, exp, spec.name(), Built::Psi(spec)))
        }
        Member::CurveProduct { c1, c2, factor, kappa } => {
            let spec = CurveProductSpec { factor, kappa, c1, c2 };
            let (imm, exp) = curve_product(&spec).map_err(spec_err)?;
            Ok((imm, exp, spec.name(), Built::Curve(spec)))
        }
        Member::Synthetic { .. } => Err(CliError::Usage(
            "synthetic --sigma data only works with `parallel`".into(),
        )),
    }
}

fn max_abs(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter()
        .fold(0.0, |a, x| if x.is_nan() { f64::NAN } else { a.max(x.abs()) })
}

fn sigma_of(m: &Matrix3<f64>) -> SigmaSet {
    SigmaSet::from_matrix(m)
}

/// Connection residuals `∇_{B₂}B₁ + √((1−C)/2)B₂` and `∇_{B₁}B₁`.
fn connection_residual(imm: &Immersion, q: Params) -> Result<f64, GeomError> {
    let space = imm.space();
    let fd = unit_normal(imm, q)?;
    let b = adapted_frame(&fd, &space)?;
    let b1 = |p: Params| {
        let f = unit_normal(imm, p)?;
        Ok(adapted_frame(&f, &space)?[0])
    };
    let d21 = covariant_derivative(imm, q, &b[1], b1)?;
    let d11 = covariant_derivative(imm, q, &b[0], b1)?;
    let want = b[1].scale(-((1.0 - fd.c) / 2.0).sqrt());
    Ok(space.norm(&d21.sub(&want)).max(space.norm(&d11)))
}

pub fn run_verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let member = cfg
        .member
        .as_ref()
        .ok_or_else(|| CliError::Usage("verify needs --psi or --curve-product".into()))?;
    let start = Instant::now();
    let (imm, exp, name, built) = build(member)?;
    let imm = if cfg.finite_difference {
        imm.finite_difference()
    } else {
        imm
    };
    let space = imm.space();
    let tol = cfg.tol;
    let grid = imm.grid(cfg.grid);

    let mut points: Vec<(Params, PointInvariants)> = Vec::with_capacity(grid.len());
    let mut first_error = None;
    for q in &grid {
        match point_invariants(&imm, *q) {
            Ok(inv) => points.push((*q, inv)),
            Err(e) => {
                first_error.get_or_insert(format!("at {q:?}: {e}"));
            }
        }
    }
    let mut checks = Vec::new();
    if let Some(e) = &first_error {
        checks.push(Check::failed("pipeline", 0.0, e.clone()));
    }
    let want = exp.sorted_principal();
    let over = |f: &dyn Fn(&PointInvariants) -> f64| {
        if points.is_empty() {
            f64::NAN
        } else {
            max_abs(points.iter().map(|(_, p)| f(p)))
        }
    };
    checks.push(Check::new(
        "principal_curvatures",
        over(&|p| max_abs((0..3).map(|i| p.principal[i] - want[i]))),
        tol.mu,
    ));
    checks.push(Check::new("C", over(&|p| p.c - exp.c), tol.c));
    let (cmin, cmax) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), (_, p)| {
            (a.min(p.c), b.max(p.c))
        });
    checks.push(Check::new("C_constancy", cmax - cmin, tol.c));
    checks.push(Check::new("mean_curvature", over(&|p| p.h - exp.h), tol.h));
    checks.push(Check::new("shape_symmetry", over(&|p| p.shape.asymmetry), tol.mu));
    checks.push(Check::new(
        "characteristic_poly",
        over(&|p| {
            let s = sigma_of(&p.shape.matrix);
            let q = characteristic_poly(s.trace() / 3.0, s.minors()[3]);
            if q.real {
                max_abs((0..3).map(|i| q.sorted_roots()[i] - p.principal[i]))
            } else {
                f64::INFINITY
            }
        }),
        tol.mu,
    ));

    match built {
        Built::Psi(spec) => {
            let (c1, c2) = space.curvatures();
            checks.push(Check::new(
                "sigma_1j",
                over(&|p| max_abs([p.shape.matrix[(0, 0)], p.shape.matrix[(0, 1)], p.shape.matrix[(0, 2)]])),
                tol.mu,
            ));
            checks.push(Check::new(
                "codazzi",
                over(&|p| {
                    let m = p.shape.matrix;
                    codazzi_constraint_residuals(m[(1, 1)], m[(1, 2)], m[(2, 2)], p.c, c1 as f64, c2 as f64)
                        .map(max_abs)
                        .unwrap_or(f64::NAN)
                }),
                tol.codazzi,
            ));
            checks.push(Check::new(
                "isoparametric_identities",
                over(&|p| {
                    let s = sigma_of(&p.shape.matrix);
                    match deltas(p.c, c1, c2) {
                        Ok(d) => {
                            let (h0, h1, h2) = mean_curvature_jets(&s, &d);
                            let r = isoparametric_identity_residuals(&s, &d, h0, h1, h2);
                            max_abs(r).max(combined_cubic_residual(&s, &d, h0, h1, h2).abs())
                        }
                        Err(_) => f64::NAN,
                    }
                }),
                tol.codazzi,
            ));
            let conn = [[0.0; 3], [0.5, -0.5, 0.5]]
                .iter()
                .map(|q| connection_residual(&imm, *q))
                .collect::<Result<Vec<_>, _>>();
            checks.push(match conn {
                Ok(v) => Check::new("connection", max_abs(v), tol.connection),
                Err(e) => Check::failed("connection", tol.connection, e.to_string()),
            });
            let geo = max_abs(grid.iter().map(|q| match imm.point(*q) {
                Ok(p) => {
                    let g = remark_geodesic(&spec, q[1], q[2], q[0]);
                    (p.p1.coords() - g.p1.coords())
                        .amax()
                        .max((p.p2.coords() - g.p2.coords()).amax())
                }
                Err(_) => f64::NAN,
            }));
            checks.push(Check::new("remark_geodesic", geo, GEODESIC_TOL));
        }
        Built::Curve(spec) => {
            if spec.kappa == 0.0 {
                checks.push(Check::new("totally_geodesic", over(&|p| p.shape.matrix.amax()), tol.mu));
            }
        }
    }

    let mut report = CheckReport::new(name, checks, start.elapsed().as_secs_f64());
    let n = points.len().max(1) as f64;
    report.measured = Some(json!({
        "C": points.iter().map(|(_, p)| p.c).sum::<f64>() / n,
        "h": points.iter().map(|(_, p)| p.h).sum::<f64>() / n,
        "principal": points.first().map(|(_, p)| p.principal),
        "expected": exp,
        "grid_points": points.len(),
    }));
    let text = report.to_text();
    emit(cfg, &report, text)
}

fn pair_from(cfg: &RunConfig) -> Result<CurvaturePair, CliError> {
    let (c1, c2) = match (cfg.c1, cfg.c2) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(CliError::Usage("classify needs --c1 and --c2 (or --all-pairs)".into())),
    };
    CurvaturePair::new(c1, c2).map_err(|e| CliError::Usage(e.to_string()))
}

fn enumeration_text(e: &FamilyEnumeration) -> String {
    let mut out = format!("({}, {})  {}\n", e.pair.c1, e.pair.c2, e.space);
    for f in &e.families {
        let tag = match f.tag {
            FamilyTag::CurveProductFactor1 => "curve-product-factor-1",
            FamilyTag::CurveProductFactor2 => "curve-product-factor-2",
            FamilyTag::InteriorC => "interior-C",
        };
        let _ = write!(out, "  {tag:<24} {:<40} C = {}", f.name, f.c_range);
        if let Some(k) = &f.kappa {
            let _ = write!(out, ", kappa in {k}");
        }
        if let Some(s) = &f.sigma {
            let _ = write!(out, ", s22 = {}, s33 = {}, {}", s.s22, s.s33, s.parameter);
        }
        if let Some(o) = &f.factor_order {
            let _ = write!(out, " [{o}]");
        }
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "  obstruction {}: {}",
        e.obstruction.equation, e.obstruction.reason
    );
    out
}

fn pair_checks(e: &FamilyEnumeration) -> Vec<Check> {
    let id = |s: &str| format!("{s}({},{})", e.pair.c1, e.pair.c2);
    let mut checks = vec![Check::new(
        id("offdiag_obstruction"),
        if e.obstruction.admissible { 1.0 } else { 0.0 },
        0.5,
    )];
    if let Some(c) = e.interior_witness {
        let (c1, c2) = (e.pair.c1 as f64, e.pair.c2 as f64);
        let r = e
            .pair
            .reduced_system(c)
            .map(|sols| {
                max_abs(sols.iter().map(|&(a, b)| {
                    codazzi_constraint_residuals(a, 0.0, b, c, c1, c2)
                        .map(max_abs)
                        .unwrap_or(f64::NAN)
                }))
            })
            .unwrap_or(f64::NAN);
        checks.push(Check::new(id("reduced_round_trip"), r, 1e-12));
    }
    checks
}

pub fn run_classify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let start = Instant::now();
    if cfg.all_pairs {
        let all = classify_all();
        let got = serde_json::to_value(&all).expect("enumeration serializes");
        let golden: serde_json::Value =
            serde_json::from_str(GOLDEN_ENUMERATION).map_err(|e| CliError::Io(format!("golden file: {e}")))?;
        let golden_pairs = golden.as_array().cloned().unwrap_or_default();
        let mut checks = Vec::new();
        let mut text = String::new();
        for (i, e) in all.iter().enumerate() {
            text.push_str(&enumeration_text(e));
            let matches = golden_pairs.get(i) == Some(&got[i]);
            checks.push(Check::new(
                format!("golden({},{})", e.pair.c1, e.pair.c2),
                if matches { 0.0 } else { 1.0 },
                0.5,
            ));
            checks.extend(pair_checks(e));
        }
        if golden_pairs.len() != all.len() {
            checks.push(Check::failed(
                "golden_length",
                0.0,
                "golden file lists a different number of pairs",
            ));
        }
        let mut report = CheckReport::new("classify --all-pairs", checks, start.elapsed().as_secs_f64());
        report.enumeration = Some(got);
        text.push_str(&report.to_text());
        return emit(cfg, &report, text);
    }
    let pair = pair_from(cfg)?;
    let e = classify(pair);
    let mut report = CheckReport::new(
        format!("classify {}", e.space),
        pair_checks(&e),
        start.elapsed().as_secs_f64(),
    );
    report.enumeration = Some(serde_json::to_value(&e).expect("enumeration serializes"));
    let text = enumeration_text(&e) + &report.to_text();
    emit(cfg, &report, text)
}

/// One row of the parallel sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParallelRow {
    pub r: f64,
    pub det: f64,
    pub h_closed: f64,
    pub h_numeric: f64,
    pub a_diff: f64,
    pub focal: bool,
}

pub const CSV_HEADER: &str = "r,detD,h_closed,h_numeric,a_diff,focal";

impl ParallelRow {
    pub fn csv(&self) -> String {
        format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
            self.r,
            self.det,
            self.h_closed,
            self.h_numeric,
            self.a_diff,
            u8::from(self.focal)
        )
    }
}

fn closed_row(s: &SigmaSet, d: &Deltas, r: f64) -> ParallelRow {
    match parallel_shape(s, d, r) {
        Ok(rep) => ParallelRow {
            r,
            det: rep.det,
            h_closed: rep.mean_curvature,
            h_numeric: f64::NAN,
            a_diff: f64::NAN,
            focal: false,
        },
        Err(GeomError::Focal { det, .. }) => ParallelRow {
            r,
            det,
            h_closed: f64::NAN,
            h_numeric: f64::NAN,
            a_diff: f64::NAN,
            focal: true,
        },
        Err(_) => ParallelRow {
            r,
            det: f64::NAN,
            h_closed: f64::NAN,
            h_numeric: f64::NAN,
            a_diff: f64::NAN,
            focal: false,
        },
    }
}

pub fn parallel_rows(cfg: &RunConfig) -> Result<Vec<ParallelRow>, CliError> {
    let member = cfg
        .member
        .as_ref()
        .ok_or_else(|| CliError::Usage("parallel needs --psi, --curve-product or --sigma/--deltas".into()))?;
    let rs = cfg.r_values();
    if let Member::Synthetic { sigma, deltas } = *member {
        let s = SigmaSet {
            s11: sigma[0],
            s12: sigma[1],
            s13: sigma[2],
            s22: sigma[3],
            s23: sigma[4],
            s33: sigma[5],
        };
        let d = Deltas {
            d1: deltas[0],
            d2: deltas[1],
        };
        return Ok(rs.iter().map(|&r| closed_row(&s, &d, r)).collect());
    }
    let (imm, _, _, built) = build(member)?;
    let imm = if cfg.finite_difference {
        imm.finite_difference()
    } else {
        imm
    };
    let q0 = [0.0; 3];
    match built {
        Built::Psi(_) => {
            let inv = point_invariants(&imm, q0).map_err(spec_err)?;
            let (c1, c2) = imm.space().curvatures();
            let s = sigma_of(&inv.shape.matrix);
            let d = deltas(inv.c, c1, c2).map_err(spec_err)?;
            Ok(rs
                .iter()
                .map(|&r| {
                    let mut row = closed_row(&s, &d, r);
                    if let (false, Ok(closed)) = (row.focal, parallel_shape(&s, &d, r)) {
                        if let Ok(numeric) = transported_parallel_shape(&imm, q0, r) {
                            row.h_numeric = numeric.trace() / 3.0;
                            row.a_diff = (numeric - closed.shape).amax();
                        }
                    }
                    row
                })
                .collect())
        }
        Built::Curve(_) => Ok(rs
            .iter()
            .map(|&r| {
                let numeric = point_invariants(&parallel_surface(&imm, r), q0);
                ParallelRow {
                    r,
                    det: f64::NAN,
                    h_closed: f64::NAN,
                    h_numeric: numeric.as_ref().map(|p| p.h).unwrap_or(f64::NAN),
                    a_diff: f64::NAN,
                    focal: numeric.is_err(),
                }
            })
            .collect()),
    }
}

pub fn run_parallel(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let rows = parallel_rows(cfg)?;
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for row in &rows {
        csv.push_str(&row.csv());
        csv.push('\n');
    }
    if let Some(path) = &cfg.out {
        std::fs::write(path, &csv).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    // rows with both columns present must agree; NaN columns are not comparable
    let worst = rows
        .iter()
        .filter(|r| !r.focal && r.a_diff.is_finite())
        .fold(0.0f64, |a, r| a.max(r.a_diff));
    let pass = worst <= cfg.tol.parallel;
    let stdout = if cfg.out.is_some() && !cfg.csv {
        format!(
            "{} rows, {} focal, max a_diff {worst:.3e}: {}\n",
            rows.len(),
            rows.iter().filter(|r| r.focal).count(),
            if pass { "PASS" } else { "FAIL" }
        )
    } else {
        csv
    };
    Ok(Outcome { stdout, pass })
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub space: String,
    pub args: String,
    pub expected: ExpectedInvariants,
}

pub fn catalog_entries() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for pair in CurvaturePair::all() {
        for factor in [1u8, 2] {
            let c = if factor == 1 { pair.c1 } else { pair.c2 };
            let kappas: &[f64] = if c == -1 { &[0.0, 0.5, 1.0, 2.0] } else { &[0.0, 0.5] };
            for &kappa in kappas {
                let spec = CurveProductSpec {
                    factor,
                    kappa,
                    c1: pair.c1,
                    c2: pair.c2,
                };
                let (_, expected) = curve_product(&spec).expect("catalog specs are valid");
                out.push(CatalogEntry {
                    name: spec.name(),
                    space: pair.name(),
                    args: format!(
                        "--curve-product --c1 {} --c2 {} --factor {factor} --kappa {kappa}",
                        pair.c1, pair.c2
                    ),
                    expected,
                });
            }
        }
    }
    for v0 in [[0.6, 0.0], [0.0, 0.9], [0.3, 0.4]] {
        let spec = PsiSpec::from_v0(v0).expect("catalog specs are valid");
        out.push(CatalogEntry {
            name: spec.name(),
            space: "H^2xR^2".into(),
            args: format!(
                "--psi --v0 {},{} --w0 {},{}",
                spec.v0[0], spec.v0[1], spec.w0[0], spec.w0[1]
            ),
            expected: spec.expected(),
        });
    }
    out
}

pub fn run_catalog_list(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let entries = catalog_entries();
    let stdout = if cfg.json {
        serde_json::to_string_pretty(&entries).expect("catalog serializes") + "\n"
    } else {
        let mut s = String::new();
        for e in &entries {
            let _ = writeln!(
                s,
                "{:<10} {:<36} mu = ({}, {}, {})  C = {}  h = {:.6}\n           {}",
                e.space,
                e.name,
                e.expected.principal[0],
                e.expected.principal[1],
                e.expected.principal[2],
                e.expected.c,
                e.expected.h,
                e.args
            );
        }
        s
    };
    if let Some(path) = &cfg.out {
        std::fs::write(
            path,
            serde_json::to_string_pretty(&entries).expect("catalog serializes"),
        )
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(Outcome { stdout, pass: true })
}
