use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;

use polycurv::curves::{
    crofton_length_estimate, open_hemisphere_witness, signed_turning_angles, tangent_indicatrix, total_curvature,
    turning_angles, turning_number, PlanarPolygon, SpacePolygon,
};
use polycurv::geom::{Point2d, Point3d};
use polycurv::io::{self, Format, OffSurface, RunConfig};
use polycurv::lab::{self, AnalyticCurve, ConvergenceReport, SurfaceFamily, SurfaceQuantity};
use polycurv::manifolds::{self, PolyhedralMetric, RelaxConfig, RelaxStatus, StepRule};
use polycurv::surfaces::{self, ConvexPolyhedron, PolyMesh};
use polycurv::{Error, Result};

/// What a command produced: the table or report body, summary lines for the
/// error stream, and a failed numerical check if there was one.
pub struct Outcome {
    pub body: String,
    pub summary: Vec<(String, String)>,
    pub failure: Option<String>,
}

#[derive(Serialize)]
struct Report<'a, S: Serialize, R: Serialize> {
    summary: &'a S,
    rows: &'a [R],
}

fn outcome<S: Serialize, R: Serialize>(
    cfg: &RunConfig,
    summary: &S,
    lines: Vec<(&str, String)>,
    rows: &[R],
    failure: Option<String>,
) -> Result<Outcome> {
    let body = match cfg.format {
        Format::Csv => io::render_rows(rows, Format::Csv)?,
        Format::Json => io::render_json(&Report { summary, rows })?,
    };
    Ok(Outcome { body, summary: lines.into_iter().map(|(k, v)| (k.to_string(), v)).collect(), failure })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_off(path: &Path, cfg: &RunConfig) -> Result<OffSurface> {
    io::parse_off_with(&read(path)?, cfg.tolerances)
}

fn read_convex(path: &Path, cfg: &RunConfig) -> Result<ConvexPolyhedron> {
    read_off(path, cfg)?.into_convex()
}

fn read_metric(path: &Path, cfg: &RunConfig) -> Result<PolyhedralMetric> {
    io::parse_complex_json_with(&read(path)?, cfg.tolerances)
}

fn face_label(face: &[usize]) -> String {
    face.iter().map(usize::to_string).collect::<Vec<_>>().join("-")
}

#[derive(Serialize)]
struct VertexAngle {
    vertex: usize,
    angle: f64,
}

#[derive(Serialize)]
struct PlanarSummary {
    vertices: usize,
    total_signed_curvature: f64,
    turning_number: Option<i64>,
}

#[derive(Serialize)]
struct SpaceSummary {
    vertices: usize,
    closed: bool,
    total_curvature: f64,
    fenchel_equality: bool,
    indicatrix_length: f64,
    crofton_estimate: f64,
    crofton_stderr: f64,
    hemisphere_witness: Option<[f64; 3]>,
}

pub fn curve(path: &Path, cfg: &RunConfig) -> Result<Outcome> {
    let file = io::parse_polygon_json(&read(path)?)?;
    if file.dimension() == 2 && file.closed {
        let pts = file.points.iter().map(|p| Point2d::new(p[0], p[1])).collect();
        let poly = PlanarPolygon::with_tolerances(pts, cfg.tolerances)?;
        let angles = signed_turning_angles(&poly)?;
        let total: f64 = angles.iter().sum();
        let (k, failure) = match turning_number(&poly) {
            Ok(k) => (Some(k), None),
            Err(e @ Error::NotClosedToMultiple { .. }) => (None, Some(e.to_string())),
            Err(e) => return Err(e),
        };
        let summary = PlanarSummary { vertices: poly.len(), total_signed_curvature: total, turning_number: k };
        let rows: Vec<VertexAngle> = angles.into_iter().enumerate().map(|(vertex, angle)| VertexAngle { vertex, angle }).collect();
        let lines = vec![
            ("vertices", summary.vertices.to_string()),
            ("total signed curvature", total.to_string()),
            ("turning number", k.map_or("undefined".into(), |k| k.to_string())),
        ];
        return outcome(cfg, &summary, lines, &rows, failure);
    }

    let pts = file
        .points
        .iter()
        .map(|p| Point3d::new(p[0], p[1], p.get(2).copied().unwrap_or(0.0)))
        .collect();
    let poly = SpacePolygon::with_tolerances(pts, file.closed, cfg.tolerances)?;
    let angles = turning_angles(&poly)?;
    let tc = total_curvature(&poly)?;
    let indicatrix = tangent_indicatrix(&poly)?;
    let crofton = crofton_length_estimate(&indicatrix, cfg.samples.max(100), cfg.seed)?;
    let witness = open_hemisphere_witness(&indicatrix, cfg.tolerances.angle);
    let summary = SpaceSummary {
        vertices: poly.vertices().len(),
        closed: file.closed,
        total_curvature: tc.total,
        fenchel_equality: tc.fenchel_equality,
        indicatrix_length: indicatrix.length(),
        crofton_estimate: crofton.mean,
        crofton_stderr: crofton.stderr,
        hemisphere_witness: witness.map(|w| {
            let v = w.as_vector();
            [v.x, v.y, v.z]
        }),
    };
    let failure = (file.closed && tc.total < 2.0 * PI - 1e-9)
        .then(|| format!("closed polygon has total curvature {} < 2 pi", tc.total));
    let offset = usize::from(!file.closed);
    let rows: Vec<VertexAngle> =
        angles.into_iter().enumerate().map(|(i, angle)| VertexAngle { vertex: i + offset, angle }).collect();
    let lines = vec![
        ("vertices", summary.vertices.to_string()),
        ("total curvature", tc.total.to_string()),
        ("indicatrix length", summary.indicatrix_length.to_string()),
        ("crofton estimate", format!("{} +- {}", crofton.mean, crofton.stderr)),
        ("open hemisphere", if witness.is_some() { "yes".into() } else { "no".into() }),
    ];
    outcome(cfg, &summary, lines, &rows, failure)
}

#[derive(Serialize)]
struct VertexRow {
    vertex: usize,
    defect: f64,
    exterior_angle: Option<f64>,
}

#[derive(Serialize)]
struct SurfaceSummary {
    vertices: usize,
    edges: usize,
    faces: usize,
    euler_characteristic: i64,
    total_defect: f64,
    gauss_bonnet_residual: f64,
    total_exterior_angle: Option<f64>,
    total_mean_curvature: f64,
    area: f64,
    volume: f64,
    convex: bool,
}

pub fn surface(path: &Path, cfg: &RunConfig) -> Result<Outcome> {
    let mesh: PolyMesh = read_off(path, cfg)?.into_poly();
    let defects = surfaces::vertex_angle_defect(&mesh)?;
    let gb = surfaces::gauss_bonnet_check(&mesh)?;
    let convex = ConvexPolyhedron::from_poly(mesh.clone()).ok();
    let exterior = convex.as_ref().map(surfaces::vertex_exterior_angle).transpose()?;
    let summary = SurfaceSummary {
        vertices: mesh.num_vertices(),
        edges: mesh.edges().len(),
        faces: mesh.num_faces(),
        euler_characteristic: gb.euler_characteristic,
        total_defect: gb.total_curvature,
        gauss_bonnet_residual: gb.residual,
        total_exterior_angle: exterior.as_ref().map(|e| e.iter().sum()),
        total_mean_curvature: surfaces::total_mean_curvature(&mesh),
        area: mesh.area(),
        volume: mesh.volume(),
        convex: convex.is_some(),
    };
    let rows: Vec<VertexRow> = defects
        .iter()
        .enumerate()
        .map(|(v, &defect)| VertexRow { vertex: v, defect, exterior_angle: exterior.as_ref().map(|e| e[v]) })
        .collect();
    let mut lines = vec![
        ("euler characteristic", summary.euler_characteristic.to_string()),
        ("sum of defects", summary.total_defect.to_string()),
        ("gauss-bonnet residual", summary.gauss_bonnet_residual.to_string()),
        ("total mean curvature", summary.total_mean_curvature.to_string()),
        ("area", summary.area.to_string()),
    ];
    if let Some(t) = summary.total_exterior_angle {
        lines.push(("sum of exterior angles", t.to_string()));
    }
    let failure = (!gb.holds()).then(|| format!("sum of defects misses 2 pi chi by {}", gb.residual));
    outcome(cfg, &summary, lines, &rows, failure)
}

#[derive(Serialize)]
struct CoefficientRow {
    power: usize,
    coefficient: f64,
}

pub fn steiner(path: &Path, cfg: &RunConfig) -> Result<Outcome> {
    let p = read_convex(path, cfg)?;
    let s = surfaces::steiner_polynomials(&p)?;
    let rows: Vec<CoefficientRow> = [s.v0, s.v1, s.v2, s.v3]
        .into_iter()
        .enumerate()
        .map(|(power, coefficient)| CoefficientRow { power, coefficient })
        .collect();
    let lines = vec![
        ("volume", s.v0.to_string()),
        ("area", s.v1.to_string()),
        ("total mean curvature", s.v2.to_string()),
        ("cubic coefficient", s.v3.to_string()),
    ];
    outcome(cfg, &s, lines, &rows, None)
}

#[derive(Serialize)]
struct EstimateRow {
    quantity: &'static str,
    estimate: f64,
    stderr: f64,
    exact: f64,
}

pub fn integral_geometry(path: &Path, cfg: &RunConfig) -> Result<Outcome> {
    let p = read_convex(path, cfg)?;
    let width = surfaces::mean_width(&p, cfg.samples, cfg.seed)?;
    let shadow = surfaces::mean_projection_area(&p, cfg.samples, cfg.seed)?;
    let rows = vec![
        EstimateRow {
            quantity: "mean_width",
            estimate: width.mean,
            stderr: width.stderr,
            exact: surfaces::total_mean_curvature(&p) / (2.0 * PI),
        },
        EstimateRow { quantity: "mean_projection_area", estimate: shadow.mean, stderr: shadow.stderr, exact: p.area() / 4.0 },
    ];
    let failure = rows
        .iter()
        .find(|r| (r.estimate - r.exact).abs() > 4.0 * r.stderr + 1e-12)
        .map(|r| format!("{} estimate {} is more than 4 stderr from {}", r.quantity, r.estimate, r.exact));
    let lines = rows.iter().map(|r| (r.quantity, format!("{} +- {} (exact {})", r.estimate, r.stderr, r.exact))).collect();
    outcome(cfg, &(), lines, &rows, failure)
}

#[derive(Serialize)]
struct MetricSummary {
    dim: usize,
    f_vector: Vec<usize>,
    euler_characteristic: i64,
    total_volume: f64,
    regge_functional: f64,
    max_abs_deficit: f64,
    singular_faces: usize,
}

#[derive(Serialize)]
struct ConeRow {
    face: String,
    cone_angle: f64,
    deficit: f64,
    volume: f64,
}

#[derive(Serialize)]
struct GradientRow {
    edge: String,
    length: f64,
    gradient: f64,
}

pub fn regge(path: &Path, cfg: &RunConfig, grad: bool) -> Result<Outcome> {
    let c = read_metric(path, cfg)?;
    let report = c.report()?;
    let table = manifolds::cone_angles(&c)?;
    let summary = MetricSummary {
        dim: report.dim,
        f_vector: report.f_vector,
        euler_characteristic: report.euler_characteristic,
        total_volume: report.total_volume,
        regge_functional: table.rows.iter().map(|r| r.deficit * r.volume).sum(),
        max_abs_deficit: table.max_abs_deficit(),
        singular_faces: table.singular(cfg.tolerances.singular).count(),
    };
    let lines = vec![
        ("dimension", summary.dim.to_string()),
        ("euler characteristic", summary.euler_characteristic.to_string()),
        ("regge functional", summary.regge_functional.to_string()),
        ("max |deficit|", summary.max_abs_deficit.to_string()),
        ("singular faces", summary.singular_faces.to_string()),
    ];
    if grad {
        let g = manifolds::regge_gradient(&c)?;
        let rows: Vec<GradientRow> = c
            .complex()
            .edges()
            .iter()
            .zip(c.lengths())
            .zip(g)
            .map(|((e, &length), gradient)| GradientRow { edge: face_label(e), length, gradient })
            .collect();
        return outcome(cfg, &summary, lines, &rows, None);
    }
    let rows: Vec<ConeRow> = table
        .rows
        .iter()
        .map(|r| ConeRow { face: face_label(&r.face), cone_angle: r.cone_angle, deficit: r.deficit, volume: r.volume })
        .collect();
    outcome(cfg, &summary, lines, &rows, None)
}

#[derive(Clone, Copy, ValueEnum)]
pub enum StepArg {
    Gradient,
    LevenbergMarquardt,
}

pub struct RelaxOptions {
    pub max_iters: usize,
    pub target: f64,
    pub step: StepArg,
    pub free_volume: bool,
    pub metric_out: Option<PathBuf>,
}

#[derive(Serialize)]
struct RelaxSummary {
    status: RelaxStatus,
    iterations: usize,
    energy: f64,
    max_abs_deficit: f64,
    total_volume: f64,
}

pub fn regge_relax(path: &Path, cfg: &RunConfig, opts: &RelaxOptions) -> Result<Outcome> {
    let c = read_metric(path, cfg)?;
    let config = RelaxConfig {
        step: match opts.step {
            StepArg::Gradient => StepRule::GradientDescent,
            StepArg::LevenbergMarquardt => StepRule::LevenbergMarquardt,
        },
        tolerance: opts.target,
        max_iters: opts.max_iters,
        normalize_volume: !opts.free_volume,
    };
    let r = manifolds::regge_relax(&c, &config)?;
    let last = *r.final_row();
    if let Some(p) = &opts.metric_out {
        std::fs::write(p, io::complex_to_json(&r.metric) + "\n").map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
    }
    let summary = RelaxSummary {
        status: r.status,
        iterations: r.iterations,
        energy: last.energy,
        max_abs_deficit: last.max_abs_deficit,
        total_volume: last.total_volume,
    };
    let lines = vec![
        ("status", format!("{:?}", r.status)),
        ("iterations", r.iterations.to_string()),
        ("energy", last.energy.to_string()),
        ("max |deficit|", last.max_abs_deficit.to_string()),
    ];
    let failure = match r.status {
        RelaxStatus::Converged => None,
        RelaxStatus::Stalled => Some(Error::Stall { iteration: last.iteration, energy: last.energy }.to_string()),
        RelaxStatus::MaxIterations => Some(format!("no convergence after {} iterations", r.iterations)),
    };
    outcome(cfg, &summary, lines, &r.trajectory, failure)
}

#[derive(Serialize)]
struct LkCsvRow {
    face: String,
    curvature: f64,
    stderr: f64,
    volume: f64,
}

#[derive(Serialize)]
struct LkSummary {
    k: usize,
    face_dim: usize,
    total: f64,
    stderr: f64,
    exact: bool,
}

pub fn lk(path: &Path, cfg: &RunConfig, k: usize) -> Result<Outcome> {
    let c = read_metric(path, cfg)?;
    let r = manifolds::lk_total(&c, k, cfg.mc())?;
    let summary = LkSummary { k: r.k, face_dim: r.face_dim, total: r.total, stderr: r.stderr, exact: r.exact };
    let rows: Vec<LkCsvRow> = r
        .rows
        .iter()
        .map(|row| LkCsvRow { face: face_label(&row.face), curvature: row.curvature, stderr: row.stderr, volume: row.volume })
        .collect();
    let lines = vec![
        ("face dimension", r.face_dim.to_string()),
        ("total", format!("{} +- {}", r.total, r.stderr)),
        ("exact", r.exact.to_string()),
    ];
    outcome(cfg, &summary, lines, &rows, None)
}

pub fn cgb(path: &Path, cfg: &RunConfig) -> Result<Outcome> {
    let c = read_metric(path, cfg)?;
    let r = manifolds::cgb_check(&c, cfg.mc())?;
    let bound = if r.exact { 1e-10 } else { 3.0 * r.stderr + 1e-10 };
    let failure = (r.residual > bound).then(|| format!("sum of vertex curvatures misses chi by {}", r.residual));
    let lines = vec![
        ("sum of vertex curvatures", format!("{} +- {}", r.sum, r.stderr)),
        ("euler characteristic", r.euler_characteristic.to_string()),
        ("residual", r.residual.to_string()),
    ];
    outcome(cfg, &r, lines, &[r], failure)
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Family {
    Icosphere,
    Torus,
    Circle,
    Ellipse,
    Helix,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Quantity {
    Area,
    Mean,
    Gauss,
}

pub fn converge(family: Family, quantity: Quantity, schedule: &[usize], cfg: &RunConfig) -> Result<Outcome> {
    let quantity = match quantity {
        Quantity::Area => SurfaceQuantity::Area,
        Quantity::Mean => SurfaceQuantity::TotalMeanCurvature,
        Quantity::Gauss => SurfaceQuantity::TotalGaussCurvature,
    };
    let default: &[usize] = match family {
        Family::Icosphere => &[1, 2, 3, 4, 5],
        Family::Torus => &[8, 16, 32, 64, 128],
        _ => &[10, 100, 1000, 10_000],
    };
    let schedule = if schedule.is_empty() { default } else { schedule };
    let report: ConvergenceReport = match family {
        Family::Icosphere => lab::surface_convergence(quantity, SurfaceFamily::Icosphere { radius: 1.0 }, schedule)?,
        Family::Torus => {
            lab::surface_convergence(quantity, SurfaceFamily::Torus { major: 2.0, minor: 0.5 }, schedule)?
        }
        Family::Circle => lab::curve_convergence(&AnalyticCurve::circle(1.0), schedule)?,
        Family::Ellipse => lab::curve_convergence(&AnalyticCurve::ellipse(2.0, 1.0), schedule)?,
        Family::Helix => lab::curve_convergence(&AnalyticCurve::helix(1.0), schedule)?,
    };
    let mut lines = vec![("family", report.family.clone()), ("quantity", report.quantity.clone())];
    if let Some(last) = report.rows.last() {
        lines.push(("final relative error", last.rel_err.to_string()));
    }
    lines.push(("monotone", report.monotone.to_string()));
    #[derive(Serialize)]
    struct Summary<'a> {
        family: &'a str,
        quantity: &'a str,
        monotone: bool,
    }
    let summary = Summary { family: &report.family, quantity: &report.quantity, monotone: report.monotone };
    outcome(cfg, &summary, lines, &report.rows, None)
}
