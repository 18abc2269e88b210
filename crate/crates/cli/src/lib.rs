//! Subcommand runners behind the `hsbb` binary. Each runner takes the raw input bytes and
//! returns the JSON report and an optional CSV table.
//!
//! Exit codes: 0 ok, 1 I/O, 2 schema or invalid input, 3 size cap, 4 numeric domain,
//! 5 a module precondition failed on well-formed input.

use std::fmt;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use hsbb_core::charts::{binomial_relations, build_atlas_capped, row_lattice, separation_check, ChartError, MonomialMap};
use hsbb_core::lmhs::{
    build_weight_complexes, curve_lmhs, friedman_check, graded_dims, monodromy_graded_maps, triple_point_check,
    DualGraph, LmhsError, NcdSurface,
};
use hsbb_core::positivity::{
    curvature_identity_check, generic_samples, numerical_dimension, sigma_weight1, sigma_weight2, CurvatureTriple,
    PositivityError, DEFAULT_SAMPLES,
};
use hsbb_core::relations::{check_invariants, k_index_map_capped, RelationError, DEFAULT_MAX_GENERATORS};
use hsbb_core::siegel::{boundedness_probe, log_grid, ConeSpec, Family, Parabolic, SiegelError};
use hsbb_core::{IndexSet, NilpotentCone, RationalMatrix, VERSION};
use hsbb_metrics::fit::{default_taus, expansion_fit, FitTarget, Ray};
use hsbb_metrics::orbit::{curvature_limit_check, OrbitSpec};
use hsbb_metrics::residue::{default_ts, residue_sweep, Polynomial};
use hsbb_metrics::{MetricsError, C};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Io(String),
    Schema(String),
    SizeCap(String),
    Numeric(String),
    Module(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Schema(_) => 2,
            CliError::SizeCap(_) => 3,
            CliError::Numeric(_) => 4,
            CliError::Module(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Schema(m) => write!(f, "invalid input: {m}"),
            CliError::SizeCap(m) => write!(f, "size cap exceeded: {m}"),
            CliError::Numeric(m) => write!(f, "numeric domain error: {m}"),
            CliError::Module(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<RelationError> for CliError {
    fn from(e: RelationError) -> Self {
        match e {
            RelationError::ConeTooLarge(..) => CliError::SizeCap(e.to_string()),
            _ => CliError::Module(e.to_string()),
        }
    }
}

impl From<ChartError> for CliError {
    fn from(e: ChartError) -> Self {
        match e {
            ChartError::Relation(r) => r.into(),
            ChartError::Dimension(m) => CliError::Schema(m),
            _ => CliError::Module(e.to_string()),
        }
    }
}

impl From<LmhsError> for CliError {
    fn from(e: LmhsError) -> Self {
        match e {
            LmhsError::NotAComplex(_) => CliError::Module(e.to_string()),
            _ => CliError::Schema(e.to_string()),
        }
    }
}

impl From<SiegelError> for CliError {
    fn from(e: SiegelError) -> Self {
        match e {
            SiegelError::PZero | SiegelError::NotInDomain(_) => CliError::Numeric(e.to_string()),
            _ => CliError::Schema(e.to_string()),
        }
    }
}

impl From<MetricsError> for CliError {
    fn from(e: MetricsError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<PositivityError> for CliError {
    fn from(e: PositivityError) -> Self {
        CliError::Schema(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "hsbb", version, about = "Charts, LMHS bookkeeping, metric asymptotics, Siegel probes and positivity ranks")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input JSON file.
    #[arg(long, global = true, alias = "cone")]
    pub input: Option<std::path::PathBuf>,
    /// Report path; stdout when omitted.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
    /// CSV table path, for subcommands that produce one.
    #[arg(long, global = true)]
    pub csv: Option<std::path::PathBuf>,
    /// Pass/fail tolerance for numeric checks.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 lets rayon decide.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Relation spaces, K-index map, monomial atlas and binomial relations of a nilpotent cone.
    Charts {
        #[arg(long, default_value_t = DEFAULT_MAX_GENERATORS)]
        max_generators: usize,
    },
    /// Graded dimensions and smoothability checks of a normal-crossing surface, or a curve dual graph.
    Lmhs,
    /// Curvature limit, expansion-exponent fit or residue sweep; the mode is the `mode` field of the input.
    Curvature,
    /// Boundedness probe of an Sp(4) nilpotent orbit along a family.
    Siegel {
        #[arg(long, default_value = "y=(T,1)")]
        family: String,
        #[arg(long, default_value = "minimal")]
        parabolic: String,
        /// Grid exponents `lo,hi` of `T = 10^lo … 10^hi`.
        #[arg(long, default_value = "0,6", value_delimiter = ',', num_args = 2)]
        grid: Vec<i32>,
        #[arg(long, default_value_t = 4)]
        per_decade: usize,
    },
    /// Positivity rank checks.
    Positivity {
        #[arg(long, value_enum)]
        mode: PositivityMode,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PositivityMode {
    Sigma1,
    Sigma2,
    Ndim,
}

/// Run configuration recorded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: &'static str,
    pub input_sha256: String,
    pub seed: u64,
    pub tol: Option<f64>,
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    meta: &'a Meta,
    result: T,
}

#[derive(Clone, Debug)]
pub struct Output {
    pub json: String,
    pub csv: Option<String>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn parse<T: for<'de> Deserialize<'de>>(input: &[u8]) -> Result<T, CliError> {
    serde_json::from_slice(input).map_err(|e| CliError::Schema(e.to_string()))
}

fn render<T: Serialize>(meta: &Meta, result: T, csv: Option<String>) -> Result<Output, CliError> {
    let mut json = serde_json::to_string_pretty(&Report { meta, result }).map_err(|e| CliError::Io(e.to_string()))?;
    json.push('\n');
    Ok(Output { json, csv })
}

fn meta(subcommand: &'static str, input: &[u8], seed: u64, tol: Option<f64>) -> Result<Meta, CliError> {
    if let Some(t) = tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Schema("tolerance must be positive".into()));
        }
    }
    Ok(Meta { tool: "hsbb", version: VERSION, subcommand, input_sha256: sha256_hex(input), seed, tol })
}

// ---------------------------------------------------------------------------
// charts

#[derive(Serialize)]
struct ChartJson<'a> {
    #[serde(rename = "K")]
    k: &'a IndexSet,
    exponents: &'a RationalMatrix,
    strata: &'a [IndexSet],
    relations: Vec<String>,
}

#[derive(Serialize)]
struct StratumJson<'a> {
    #[serde(rename = "I")]
    i: &'a IndexSet,
    #[serde(rename = "K")]
    k: &'a IndexSet,
    #[serde(rename = "S_basis")]
    s: &'a RationalMatrix,
    #[serde(rename = "S_perp_basis")]
    s_perp: RationalMatrix,
}

#[derive(Serialize)]
struct AtlasJson<'a> {
    charts: Vec<ChartJson<'a>>,
    /// HNF basis of the relation lattice among all atlas monomials.
    relations: &'a hsbb_core::charts::BinomialRelationSet,
    relations_rendered: Vec<String>,
}

/// A hand-specified chart to compare with the computed atlas.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CompareChart {
    name: String,
    exponents: RationalMatrix,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChartsInput {
    cone: NilpotentCone,
    #[serde(default)]
    compare: Vec<CompareChart>,
}

#[derive(Serialize)]
struct ComparisonJson<'a> {
    name: &'a str,
    exponents: &'a RationalMatrix,
    relations: Vec<String>,
    /// Row lattice equals that of the full atlas.
    same_lattice_as_atlas: bool,
    /// 1-based generator sets `K` whose computed chart has the same row lattice.
    same_lattice_as: Vec<IndexSet>,
}

fn chart_json(c: &MonomialMap) -> ChartJson<'_> {
    ChartJson { k: &c.k, exponents: &c.exponents, strata: &c.strata, relations: binomial_relations(&c.exponents).rendered() }
}

pub fn run_charts(input: &[u8], seed: u64, tol: Option<f64>, cap: usize) -> Result<Output, CliError> {
    let meta = meta("charts", input, seed, tol)?;
    let value: serde_json::Value = parse(input)?;
    let ChartsInput { cone, compare } = if value.get("cone").is_some() {
        serde_json::from_value(value).map_err(|e| CliError::Schema(e.to_string()))?
    } else {
        ChartsInput { cone: serde_json::from_value(value).map_err(|e| CliError::Schema(e.to_string()))?, compare: vec![] }
    };
    if compare.iter().any(|c| c.exponents.rows() > 0 && c.exponents.cols() != cone.k()) {
        return Err(CliError::Schema("compared charts need one exponent column per generator".into()));
    }
    if compare.iter().any(|c| c.exponents.row_vecs().iter().any(|r| hsbb_core::linalg::int_row(r).is_none())) {
        return Err(CliError::Schema("compared chart exponents must be integers".into()));
    }
    if cone.k() > cap {
        return Err(RelationError::ConeTooLarge(cone.k(), cap).into());
    }
    let map = k_index_map_capped(&cone, cap)?;
    let atlas = build_atlas_capped(&cone, cap)?;
    let separation = separation_check(&atlas)?;
    let invariants = check_invariants(&map);
    let strata: Vec<StratumJson> = map
        .entries
        .iter()
        .map(|e| StratumJson {
            i: &e.i,
            k: &e.k,
            s: e.s.basis(),
            s_perp: hsbb_core::linalg::orthogonal_complement(&e.s).basis().clone(),
        })
        .collect();
    let result = serde_json::json!({
        "k": cone.k(),
        "strata": strata,
        "image": map.image,
        "atlas": AtlasJson {
            charts: atlas.charts.iter().map(chart_json).collect(),
            relations: &atlas.relations,
            relations_rendered: atlas.relations.rendered(),
        },
        "separation": separation,
        "comparisons": compare.iter().map(|c| {
            let lattice = row_lattice(&c.exponents);
            ComparisonJson {
                name: &c.name,
                exponents: &c.exponents,
                relations: binomial_relations(&c.exponents).rendered(),
                same_lattice_as_atlas: lattice == row_lattice(&atlas.exponents),
                same_lattice_as: atlas.charts.iter().filter(|a| row_lattice(&a.exponents) == lattice).map(|a| a.k.clone()).collect(),
            }
        }).collect::<Vec<_>>(),
        "invariants": {"all_hold": invariants.all_hold(), "report": invariants},
    });
    render(&meta, result, None)
}

// ---------------------------------------------------------------------------
// lmhs

#[derive(Deserialize)]
#[serde(untagged)]
enum LmhsInput {
    Surface(NcdSurface),
    Curve(DualGraph),
}

pub fn run_lmhs(input: &[u8], seed: u64, tol: Option<f64>) -> Result<Output, CliError> {
    let meta = meta("lmhs", input, seed, tol)?;
    let parsed: LmhsInput = parse(input)
        .map_err(|_| CliError::Schema("expected an NCD surface ({\"components\": …}) or a dual graph ({\"genera\": …})".into()))?;
    match parsed {
        LmhsInput::Curve(g) => {
            let (g0, g1, g2) = curve_lmhs(&g)?;
            let csv = format!("weight,dim\n0,{g0}\n1,{g1}\n2,{g2}\n");
            render(&meta, serde_json::json!({"kind": "curve", "graded_dims": [g0, g1, g2]}), Some(csv))
        }
        LmhsInput::Surface(x) => {
            let triple = triple_point_check(&x)?;
            let w = build_weight_complexes(&x)?;
            let friedman = friedman_check(&w);
            let triple_ok = triple.iter().all(|c| c.pass);
            // a failing smoothability check is reported, not an error
            let (dims, monodromy, complex_error) = match graded_dims(&w) {
                Ok(d) => (Some(d), Some(monodromy_graded_maps(&w)?), None),
                Err(e @ LmhsError::NotAComplex(_)) => (None, None, Some(e.to_string())),
                Err(e) => return Err(e.into()),
            };
            let symmetric = dims.map(|d| d.i4 == d.i0 && d.i3 == d.i1);
            let csv = dims.map(|d| format!("weight,dim\n0,{}\n1,{}\n2,{}\n3,{}\n4,{}\n", d.i0, d.i1, d.i2, d.i3, d.i4));
            let result = serde_json::json!({
                "kind": "surface",
                "triple_point": {"pass": triple_ok, "curves": triple},
                "friedman": friedman,
                "is_complex": complex_error.is_none(),
                "complex_error": complex_error,
                "graded_dims": dims,
                "symmetric": symmetric,
                "monodromy": monodromy.as_ref().map(|m| serde_json::json!({
                    "hodge_tate_iso": m.hodge_tate.iso,
                    "odd_iso": m.odd.iso,
                    "detail": m,
                })),
                "complexes": w,
            });
            render(&meta, result, csv)
        }
    }
}

// ---------------------------------------------------------------------------
// curvature

fn half() -> f64 {
    0.5
}

fn limit_taus() -> Vec<f64> {
    (2..=6).map(|k| 10f64.powi(-k)).collect()
}

fn det_target() -> FitTarget {
    FitTarget::Det
}

#[derive(Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
enum CurvatureInput {
    Limit {
        orbit: OrbitSpec,
        index_set: IndexSet,
        #[serde(default)]
        w0: [f64; 2],
        #[serde(default = "limit_taus")]
        taus: Vec<f64>,
        #[serde(default = "half")]
        t_rest: f64,
    },
    Fit {
        orbit: OrbitSpec,
        ray: Vec<f64>,
        #[serde(default)]
        w: [f64; 2],
        #[serde(default = "det_target")]
        target: FitTarget,
        #[serde(default = "default_taus")]
        taus: Vec<f64>,
    },
    Residue {
        g: Polynomial,
        #[serde(default = "default_ts")]
        ts: Vec<f64>,
    },
}

pub const LIMIT_TOL: f64 = 1e-2;
pub const RESIDUE_TOL: f64 = 2e-2;

fn check_unit_interval(xs: &[f64], what: &str) -> Result<(), CliError> {
    if xs.is_empty() || xs.iter().any(|&x| !(x > 0.0 && x < 1.0)) {
        return Err(CliError::Schema(format!("{what} must be nonempty with entries in (0, 1)")));
    }
    Ok(())
}

pub fn run_curvature(input: &[u8], seed: u64, tol: Option<f64>) -> Result<Output, CliError> {
    let parsed: CurvatureInput = parse(input)?;
    match parsed {
        CurvatureInput::Limit { orbit, index_set, w0, taus, t_rest } => {
            let tol = tol.unwrap_or(LIMIT_TOL);
            let meta = meta("curvature", input, seed, Some(tol))?;
            check_unit_interval(&taus, "taus")?;
            let r = curvature_limit_check(&orbit, &index_set, C::new(w0[0], w0[1]), &taus, t_rest)?;
            let pass = r.decreasing && r.final_relative_error < tol;
            let csv = r.csv();
            render(&meta, serde_json::json!({"mode": "limit", "pass": pass, "report": r}), Some(csv))
        }
        CurvatureInput::Fit { orbit, ray, w, target, taus } => {
            let meta = meta("curvature", input, seed, Some(tol.unwrap_or(hsbb_metrics::FIT_TOL)))?;
            check_unit_interval(&taus, "taus")?;
            let f = expansion_fit(&orbit, &Ray { exponents: ray }, C::new(w[0], w[1]), target, &taus)?;
            let mut csv = String::from("log_inv_t,log_h\n");
            for (l, h) in &f.samples {
                csv.push_str(&format!("{l:.12e},{h:.12e}\n"));
            }
            render(&meta, serde_json::json!({"mode": "fit", "fit": f}), Some(csv))
        }
        CurvatureInput::Residue { g, ts } => {
            let tol = tol.unwrap_or(RESIDUE_TOL);
            let meta = meta("curvature", input, seed, Some(tol))?;
            check_unit_interval(&ts, "ts")?;
            let s = residue_sweep(&g, &ts);
            let pass = (s.slope - s.expected_slope).abs() <= tol * s.expected_slope.max(1.0);
            let csv = s.csv();
            render(&meta, serde_json::json!({"mode": "residue", "pass": pass, "sweep": s}), Some(csv))
        }
    }
}

// ---------------------------------------------------------------------------
// siegel

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SiegelInput {
    p: Vec<f64>,
    q: Vec<f64>,
    r: Vec<f64>,
    /// Accept `r² ≤ pq` instead of the boundary normal form `r² = pq`.
    #[serde(default)]
    interior: bool,
}

pub fn run_siegel(
    input: &[u8],
    seed: u64,
    tol: Option<f64>,
    family: &str,
    parabolic: &str,
    grid: (i32, i32),
    per_decade: usize,
) -> Result<Output, CliError> {
    let meta = meta("siegel", input, seed, tol)?;
    let c: SiegelInput = parse(input)?;
    let cone = if c.interior { ConeSpec::interior(c.p, c.q, c.r)? } else { ConeSpec::new(c.p, c.q, c.r)? };
    let family = Family::parse(family)?;
    if family.terms.len() != cone.s() {
        return Err(CliError::Schema(format!("family has {} coordinates, cone has {}", family.terms.len(), cone.s())));
    }
    let parabolic: Parabolic = parabolic.parse()?;
    if grid.1 <= grid.0 || per_decade == 0 {
        return Err(CliError::Schema("grid needs lo < hi and at least one point per decade".into()));
    }
    let report = boundedness_probe(&cone, &family, &log_grid(grid.0, grid.1, per_decade), parabolic)?;
    let csv = report.csv();
    render(&meta, serde_json::json!({"family": family, "verdict": report.verdict, "report": report}), Some(csv))
}

// ---------------------------------------------------------------------------
// positivity

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PositivityInput {
    #[serde(default)]
    triple: Option<CurvatureTriple>,
    #[serde(default)]
    q: Option<RationalMatrix>,
}

pub fn run_positivity(
    input: &[u8],
    seed: u64,
    tol: Option<f64>,
    mode: PositivityMode,
    samples: usize,
) -> Result<Output, CliError> {
    let meta = meta("positivity", input, seed, tol)?;
    let p: PositivityInput = parse(input)?;
    let need = |what: &str| CliError::Schema(format!("mode requires `{what}`"));
    let result = match mode {
        PositivityMode::Sigma1 => {
            let q = p.q.ok_or_else(|| need("q"))?;
            serde_json::json!({"mode": "sigma1", "sigma": sigma_weight1(&q)?})
        }
        PositivityMode::Sigma2 => {
            let c = p.triple.ok_or_else(|| need("triple"))?;
            let q = p.q.ok_or_else(|| need("q"))?;
            serde_json::json!({"mode": "sigma2", "sigma": sigma_weight2(&c, &q)?})
        }
        PositivityMode::Ndim => {
            let c = p.triple.ok_or_else(|| need("triple"))?;
            if samples == 0 {
                return Err(CliError::Schema("need at least one sample".into()));
            }
            let (nt, nw, _) = c.dims();
            let es = generic_samples(nw, samples, seed);
            let xis = generic_samples(nt, samples, seed.wrapping_add(1));
            let nd = numerical_dimension(&c, &es);
            let mut identity_holds = true;
            for (e, xi) in es.iter().zip(&xis) {
                identity_holds &= curvature_identity_check(&c, e, xi)?.matches;
            }
            serde_json::json!({"mode": "ndim", "samples": samples, "numerical_dimension": nd, "curvature_identity": identity_holds})
        }
    };
    render(&meta, result, None)
}

// ---------------------------------------------------------------------------

fn read_input(common: &Common) -> Result<Vec<u8>, CliError> {
    match &common.input {
        Some(p) => std::fs::read(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            use std::io::Read;
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf).map_err(|e| CliError::Io(e.to_string()))?;
            Ok(buf)
        }
    }
}

pub fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let c = &cli.common;
    if c.jobs > 0 {
        // the pool can only be built once per process; later calls keep the first size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(c.jobs).build_global();
    }
    let input = read_input(c)?;
    match &cli.command {
        Command::Charts { max_generators } => run_charts(&input, c.seed, c.tol, *max_generators),
        Command::Lmhs => run_lmhs(&input, c.seed, c.tol),
        Command::Curvature => run_curvature(&input, c.seed, c.tol),
        Command::Siegel { family, parabolic, grid, per_decade } => {
            run_siegel(&input, c.seed, c.tol, family, parabolic, (grid[0], grid[1]), *per_decade)
        }
        Command::Positivity { mode, samples } => run_positivity(&input, c.seed, c.tol, *mode, *samples),
    }
}

pub fn write_output(common: &Common, out: &Output) -> Result<(), CliError> {
    let io = |p: &std::path::Path, e: std::io::Error| CliError::Io(format!("{}: {e}", p.display()));
    match &common.output {
        Some(p) => std::fs::write(p, &out.json).map_err(|e| io(p, e))?,
        None => print!("{}", out.json),
    }
    if let (Some(p), Some(csv)) = (&common.csv, &out.csv) {
        std::fs::write(p, csv).map_err(|e| io(p, e))?;
    }
    Ok(())
}
