//! Flag definitions and the flat `key = value` config file they can be read from.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "isoparam",
    version,
    about = "Verify isoparametric hypersurfaces in products of 2D space forms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the invariant suite for one catalog member.
    Verify(RunArgs),
    /// Enumerate the admissible families for a curvature pair.
    Classify(RunArgs),
    /// Sweep the parallel family over an r-grid and emit CSV.
    Parallel(RunArgs),
    /// Catalog utilities.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// List the catalog members with their expected invariants.
    List(RunArgs),
}

#[derive(Debug, Default, Clone, Args)]
pub struct RunArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub c1: Option<i32>,
    #[arg(long, allow_hyphen_values = true)]
    pub c2: Option<i32>,
    /// Geodesic curvature of the curve in a curve product.
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Factor carrying the curve (1 or 2).
    #[arg(long)]
    pub factor: Option<u8>,
    #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
    pub v0: Option<String>,
    #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
    pub w0: Option<String>,
    #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
    pub p0: Option<String>,
    /// Select the Psi family in H^2 x R^2.
    #[arg(long)]
    pub psi: bool,
    /// Select a curve product.
    #[arg(long)]
    pub curve_product: bool,
    /// Synthetic shape data s11,s12,s13,s22,s23,s33 for `parallel`.
    #[arg(long, value_name = "S11,...,S33", allow_hyphen_values = true)]
    pub sigma: Option<String>,
    /// Synthetic curvature terms d1,d2 for `parallel`.
    #[arg(long, value_name = "D1,D2", allow_hyphen_values = true)]
    pub deltas: Option<String>,
    /// Points per parameter axis.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub r_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r_max: Option<f64>,
    #[arg(long)]
    pub r_step: Option<f64>,
    #[arg(long)]
    pub tol_mu: Option<f64>,
    #[arg(long)]
    pub tol_c: Option<f64>,
    #[arg(long)]
    pub tol_h: Option<f64>,
    #[arg(long)]
    pub tol_codazzi: Option<f64>,
    #[arg(long)]
    pub tol_connection: Option<f64>,
    #[arg(long)]
    pub tol_parallel: Option<f64>,
    /// Write the report (JSON, or CSV for `parallel`) to this path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the JSON report on stdout.
    #[arg(long)]
    pub json: bool,
    /// Print CSV on stdout (`parallel`).
    #[arg(long)]
    pub csv: bool,
    /// Classify all six ordered pairs and compare with the reference enumeration.
    #[arg(long)]
    pub all_pairs: bool,
    /// Use finite differences instead of analytic partials.
    #[arg(long)]
    pub finite_difference: bool,
    /// `key = value` file with defaults for any of the flags above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub mu: f64,
    pub c: f64,
    pub h: f64,
    pub codazzi: f64,
    pub connection: f64,
    pub parallel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            mu: 1e-6,
            c: 1e-9,
            h: 1e-8,
            codazzi: 1e-9,
            connection: 1e-4,
            parallel: 1e-4,
        }
    }
}

impl Tolerances {
    /// Looser defaults for finite-difference tangents, whose second
    /// derivatives carry about 1e-8 error.
    pub fn finite_difference() -> Self {
        Self {
            mu: 1e-4,
            h: 1e-4,
            codazzi: 1e-4,
            ..Self::default()
        }
    }
}

/// Member of the catalog selected by the flags.
#[derive(Debug, Clone, PartialEq)]
pub enum Member {
    Psi {
        v0: [f64; 2],
        w0: Option<[f64; 2]>,
        p0: [f64; 2],
    },
    CurveProduct {
        c1: i32,
        c2: i32,
        factor: u8,
        kappa: f64,
    },
    Synthetic {
        sigma: [f64; 6],
        deltas: [f64; 2],
    },
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub c1: Option<i32>,
    pub c2: Option<i32>,
    pub member: Option<Member>,
    pub grid: usize,
    pub r_min: f64,
    pub r_max: f64,
    pub r_step: f64,
    pub tol: Tolerances,
    pub out: Option<PathBuf>,
    pub json: bool,
    pub csv: bool,
    pub all_pairs: bool,
    pub finite_difference: bool,
}

impl RunConfig {
    pub fn r_values(&self) -> Vec<f64> {
        let n = ((self.r_max - self.r_min) / self.r_step + 1e-9).floor() as usize;
        (0..=n)
            .map(|k| {
                let r = self.r_min + k as f64 * self.r_step;
                (r * 1e12).round() / 1e12
            })
            .collect()
    }
}

const KEYS: &[&str] = &[
    "c1",
    "c2",
    "kappa",
    "factor",
    "v0",
    "w0",
    "p0",
    "psi",
    "curve-product",
    "sigma",
    "deltas",
    "grid",
    "r-min",
    "r-max",
    "r-step",
    "tol-mu",
    "tol-c",
    "tol-h",
    "tol-codazzi",
    "tol-connection",
    "tol-parallel",
    "out",
    "json",
    "csv",
    "all-pairs",
    "finite-difference",
];

/// Parse `key = value` lines; `#` starts a comment, underscores in keys are
/// accepted in place of dashes.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", no + 1)))?;
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("config line {}: unknown key `{key}`", no + 1)));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

fn load_config(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_text(&text)
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{key}: cannot parse `{v}`")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool, CliError> {
    match v.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(CliError::Usage(format!("{key}: expected true/false, got `{v}`"))),
    }
}

fn parse_list<const N: usize>(key: &str, v: &str) -> Result<[f64; N], CliError> {
    let parts: Vec<&str> = v.split(',').collect();
    if parts.len() != N {
        return Err(CliError::Usage(format!(
            "{key}: expected {N} comma-separated numbers, got `{v}`"
        )));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = parse_num(key, p)?;
    }
    Ok(out)
}

/// Merges flags over the config file, then validates.
pub fn resolve(args: &RunArgs) -> Result<RunConfig, CliError> {
    let file = match &args.config {
        Some(p) => load_config(p)?,
        None => BTreeMap::new(),
    };
    let get = |key: &str| file.get(key).map(String::as_str);

    macro_rules! num {
        ($flag:expr, $key:literal) => {
            match $flag {
                Some(v) => Some(v),
                None => get($key).map(|v| parse_num($key, v)).transpose()?,
            }
        };
    }
    macro_rules! flag {
        ($flag:expr, $key:literal) => {
            $flag
                || get($key)
                    .map(|v| parse_bool($key, v))
                    .transpose()?
                    .unwrap_or(false)
        };
    }
    macro_rules! list {
        ($flag:expr, $key:literal, $n:literal) => {
            match $flag.as_deref().or(get($key)) {
                Some(v) => Some(parse_list::<$n>($key, v)?),
                None => None,
            }
        };
    }

    let c1: Option<i32> = num!(args.c1, "c1");
    let c2: Option<i32> = num!(args.c2, "c2");
    let kappa: Option<f64> = num!(args.kappa, "kappa");
    let factor: Option<u8> = num!(args.factor, "factor");
    let v0 = list!(args.v0, "v0", 2);
    let w0 = list!(args.w0, "w0", 2);
    let p0 = list!(args.p0, "p0", 2);
    let sigma = list!(args.sigma, "sigma", 6);
    let deltas = list!(args.deltas, "deltas", 2);
    let psi = flag!(args.psi, "psi");
    let curve = flag!(args.curve_product, "curve-product");

    let member = match (psi, curve, sigma) {
        (true, true, _) => return Err(CliError::Usage("--psi and --curve-product are exclusive".into())),
        (true, false, _) => Some(Member::Psi {
            v0: v0.ok_or_else(|| CliError::Usage("--psi needs --v0".into()))?,
            w0,
            p0: p0.unwrap_or([0.0, 0.0]),
        }),
        (false, true, _) => {
            let factor = factor.unwrap_or(1);
            // default the free factor to the flat plane when it differs
            let (c1, c2) = match (c1, c2) {
                (Some(a), Some(b)) => (a, b),
                (Some(a), None) => (a, if a == 0 { -1 } else { 0 }),
                (None, Some(b)) => (if b == 0 { -1 } else { 0 }, b),
                (None, None) => return Err(CliError::Usage("--curve-product needs --c1 or --c2".into())),
            };
            Some(Member::CurveProduct {
                c1,
                c2,
                factor,
                kappa: kappa.ok_or_else(|| CliError::Usage("--curve-product needs --kappa".into()))?,
            })
        }
        (false, false, Some(sigma)) => Some(Member::Synthetic {
            sigma,
            deltas: deltas.ok_or_else(|| CliError::Usage("--sigma needs --deltas".into()))?,
        }),
        (false, false, None) => None,
    };

    let finite_difference = flag!(args.finite_difference, "finite-difference");
    let defaults = if finite_difference {
        Tolerances::finite_difference()
    } else {
        Tolerances::default()
    };
    let tol = Tolerances {
        mu: num!(args.tol_mu, "tol-mu").unwrap_or(defaults.mu),
        c: num!(args.tol_c, "tol-c").unwrap_or(defaults.c),
        h: num!(args.tol_h, "tol-h").unwrap_or(defaults.h),
        codazzi: num!(args.tol_codazzi, "tol-codazzi").unwrap_or(defaults.codazzi),
        connection: num!(args.tol_connection, "tol-connection").unwrap_or(defaults.connection),
        parallel: num!(args.tol_parallel, "tol-parallel").unwrap_or(defaults.parallel),
    };
    for (name, t) in [
        ("tol-mu", tol.mu),
        ("tol-c", tol.c),
        ("tol-h", tol.h),
        ("tol-codazzi", tol.codazzi),
        ("tol-connection", tol.connection),
        ("tol-parallel", tol.parallel),
    ] {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Usage(format!("{name} must be positive, got {t}")));
        }
    }

    let grid: usize = num!(args.grid, "grid").unwrap_or(5);
    if grid < 2 {
        return Err(CliError::Usage(format!("--grid must be >= 2, got {grid}")));
    }
    let r_min: f64 = num!(args.r_min, "r-min").unwrap_or(-1.0);
    let r_max: f64 = num!(args.r_max, "r-max").unwrap_or(1.0);
    let r_step: f64 = num!(args.r_step, "r-step").unwrap_or(0.1);
    if !(r_step > 0.0) || !(r_max >= r_min) || !r_min.is_finite() || !r_max.is_finite() {
        return Err(CliError::Usage(format!("bad r-grid [{r_min}, {r_max}] step {r_step}")));
    }

    let out = args.out.clone().or_else(|| get("out").map(PathBuf::from));
    Ok(RunConfig {
        c1,
        c2,
        member,
        grid,
        r_min,
        r_max,
        r_step,
        tol,
        out,
        json: flag!(args.json, "json"),
        csv: flag!(args.csv, "csv"),
        all_pairs: flag!(args.all_pairs, "all-pairs"),
        finite_difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_text_parsing() {
        let m = parse_config_text("# run\npsi = true\nv0 = 0.6, 0\n\ntol_mu=1e-5 # looser\n").unwrap();
        assert_eq!(m["psi"], "true");
        assert_eq!(m["v0"], "0.6, 0");
        assert_eq!(m["tol-mu"], "1e-5");
        assert!(parse_config_text("bogus = 1").is_err());
        assert!(parse_config_text("psi").is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("isoparam-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        std::fs::write(&path, "psi = true\nv0 = 0.3,0.4\ngrid = 3\n").unwrap();
        let args = RunArgs {
            config: Some(path),
            grid: Some(4),
            ..RunArgs::default()
        };
        let cfg = resolve(&args).unwrap();
        assert_eq!(cfg.grid, 4);
        assert_eq!(
            cfg.member,
            Some(Member::Psi {
                v0: [0.3, 0.4],
                w0: None,
                p0: [0.0, 0.0]
            })
        );
        std::fs::remove_dir_all(dir).ok();
    }

    #[test]
    fn validation() {
        let bad = RunArgs {
            grid: Some(1),
            ..RunArgs::default()
        };
        assert!(resolve(&bad).is_err());
        let bad = RunArgs {
            tol_mu: Some(-1.0),
            ..RunArgs::default()
        };
        assert!(resolve(&bad).is_err());
        let cfg = resolve(&RunArgs::default()).unwrap();
        let r = cfg.r_values();
        assert_eq!(r.len(), 21);
        assert_eq!(r[10], 0.0);
        assert_eq!(r[13], 0.3);
    }
}
