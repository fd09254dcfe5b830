use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::metric::{cone_angles, CurvatureTable, PolyhedralMetric};
use crate::error::{Error, Result};
use crate::geom::MetricSimplex;

/// Search direction used by [`regge_relax`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepRule {
    /// Steepest descent on the energy with Armijo backtracking.
    GradientDescent,
    /// Damped Gauss-Newton (Levenberg-Marquardt) on the residuals
    /// `K_Q sqrt(vol Q)`, with the same backtracking safeguard.
    LevenbergMarquardt,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxConfig {
    pub step: StepRule,
    /// Stop once `max |K_Q|` drops below this.
    pub tolerance: f64,
    pub max_iters: usize,
    /// Rescale all lengths after every step so the total volume stays fixed.
    pub normalize_volume: bool,
}

impl Default for RelaxConfig {
    fn default() -> Self {
        Self { step: StepRule::GradientDescent, tolerance: 1e-6, max_iters: 10_000, normalize_volume: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelaxRow {
    pub iteration: usize,
    pub energy: f64,
    pub max_abs_deficit: f64,
    pub total_volume: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RelaxStatus {
    Converged,
    MaxIterations,
    Stalled,
}

#[derive(Debug, Clone)]
pub struct RelaxReport {
    pub status: RelaxStatus,
    pub iterations: usize,
    pub trajectory: Vec<RelaxRow>,
    pub metric: PolyhedralMetric,
}

impl RelaxReport {
    pub fn final_row(&self) -> &RelaxRow {
        self.trajectory.last().expect("trajectory starts with the input metric")
    }

    /// Turns a stalled line search into [`Error::Stall`].
    pub fn into_result(self) -> Result<Self> {
        if self.status == RelaxStatus::Stalled {
            let row = *self.final_row();
            return Err(Error::Stall { iteration: row.iteration, energy: row.energy });
        }
        Ok(self)
    }
}

const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-20;

/// Drives a polyhedral metric towards a flat one by minimizing
/// `E = sum_Q K_Q^2 vol(Q)`.
///
/// Every trial metric is revalidated; steps that would make a simplex
/// unrealizable are shortened like any other rejected step.
pub fn regge_relax(c: &PolyhedralMetric, cfg: &RelaxConfig) -> Result<RelaxReport> {
    if c.dim() < 2 {
        return Err(Error::InvalidParameter("relaxation needs dimension at least 2".into()));
    }
    let target_volume = c.total_volume()?;
    let mut metric = c.clone();
    let mut state = State::new(&metric)?;
    let mut trajectory = vec![state.row(0)];
    let mut step = 1.0;
    let mut damping = 1e-3;

    for iteration in 1..=cfg.max_iters + 1 {
        if state.table.max_abs_deficit() < cfg.tolerance {
            return Ok(RelaxReport { status: RelaxStatus::Converged, iterations: iteration - 1, trajectory, metric });
        }
        if iteration > cfg.max_iters {
            break;
        }
        let sens = Sensitivities::new(&metric, &state.table)?;
        let grad = sens.energy_gradient(&state.table);
        let direction = match cfg.step {
            StepRule::GradientDescent => -&grad,
            StepRule::LevenbergMarquardt => {
                step = 1.0;
                sens.damped_step(&state.table, damping)
            }
        };
        let slope = grad.dot(&direction);
        if !(slope < 0.0) {
            return Ok(RelaxReport { status: RelaxStatus::Stalled, iterations: iteration - 1, trajectory, metric });
        }

        let mut accepted = None;
        while step >= MIN_STEP {
            let trial: Vec<f64> = metric
                .lengths()
                .iter()
                .zip(direction.iter())
                .map(|(l, d)| l + step * d)
                .collect();
            if let Some(m) = trial_metric(&metric, trial, cfg.normalize_volume, target_volume) {
                if let Ok(s) = State::new(&m) {
                    if s.energy <= state.energy + ARMIJO * step * slope {
                        accepted = Some((m, s));
                        break;
                    }
                }
            }
            step *= 0.5;
        }
        if cfg.step == StepRule::LevenbergMarquardt {
            damping = if step == 1.0 { (damping / 3.0).max(1e-12) } else { (damping * 4.0).min(1e6) };
        }
        let Some((m, s)) = accepted else {
            return Ok(RelaxReport { status: RelaxStatus::Stalled, iterations: iteration - 1, trajectory, metric });
        };
        metric = m;
        state = s;
        trajectory.push(state.row(iteration));
        step *= 2.0;
    }
    Ok(RelaxReport { status: RelaxStatus::MaxIterations, iterations: cfg.max_iters, trajectory, metric })
}

fn trial_metric(base: &PolyhedralMetric, mut lengths: Vec<f64>, normalize: bool, target: f64) -> Option<PolyhedralMetric> {
    if lengths.iter().any(|l| !(*l > 0.0)) {
        return None;
    }
    let mut m = base.with_lengths(lengths.clone()).ok()?;
    if normalize {
        let v = m.total_volume().ok()?;
        let scale = (target / v).powf(1.0 / m.dim() as f64);
        lengths.iter_mut().for_each(|l| *l *= scale);
        m = base.with_lengths(lengths).ok()?;
    }
    Some(m)
}

struct State {
    table: CurvatureTable,
    energy: f64,
    volume: f64,
}

impl State {
    fn new(m: &PolyhedralMetric) -> Result<Self> {
        let table = cone_angles(m)?;
        let energy = table.rows.iter().map(|r| r.deficit * r.deficit * r.volume).sum();
        Ok(Self { table, energy, volume: m.total_volume()? })
    }

    fn row(&self, iteration: usize) -> RelaxRow {
        RelaxRow {
            iteration,
            energy: self.energy,
            max_abs_deficit: self.table.max_abs_deficit(),
            total_volume: self.volume,
        }
    }
}

/// Sparse first derivatives of deficits and face volumes.
struct Sensitivities {
    /// `(row, edge, dK_row/dl_edge)`, possibly with repeated entries.
    dk: Vec<(usize, usize, f64)>,
    /// `(row, edge, dvol_row/dl_edge)`.
    dvol: Vec<(usize, usize, f64)>,
    num_edges: usize,
}

impl Sensitivities {
    fn new(c: &PolyhedralMetric, table: &CurvatureTable) -> Result<Self> {
        let n = c.dim();
        let complex = c.complex();
        let mut dk = Vec::new();
        for t in complex.top_simplices() {
            let s = c.simplex(t)?;
            let jac = dihedral_jacobian(&s)?;
            let pairs: Vec<(usize, usize)> = s.edges().collect();
            for (p, &(a, b)) in pairs.iter().enumerate() {
                let q: Vec<usize> = (0..=n).filter(|&v| v != a && v != b).map(|v| t[v]).collect();
                let row = complex.face_index(&q).expect("codim-2 face");
                for (e, &(i, j)) in pairs.iter().enumerate() {
                    let edge = complex.edge_index(t[i], t[j]).expect("edge");
                    // K = 2 pi - sum of dihedral angles
                    dk.push((row, edge, -jac[(p, e)]));
                }
            }
        }
        let mut dvol = Vec::new();
        for (row, r) in table.rows.iter().enumerate() {
            if r.face.len() < 2 {
                continue;
            }
            let s = c.simplex(&r.face)?;
            for ((a, b), d) in s.edges().zip(s.volume_gradient()) {
                dvol.push((row, complex.edge_index(r.face[a], r.face[b]).expect("edge"), d));
            }
        }
        Ok(Self { dk, dvol, num_edges: c.lengths().len() })
    }

    fn energy_gradient(&self, table: &CurvatureTable) -> DVector<f64> {
        let mut g = DVector::zeros(self.num_edges);
        for &(row, e, d) in &self.dk {
            let r = &table.rows[row];
            g[e] += 2.0 * r.deficit * r.volume * d;
        }
        for &(row, e, d) in &self.dvol {
            g[e] += table.rows[row].deficit.powi(2) * d;
        }
        g
    }

    /// Solves `(J^T J + mu D) x = -J^T r` with `D` the diagonal of `J^T J`.
    fn damped_step(&self, table: &CurvatureTable, mu: f64) -> DVector<f64> {
        let rows = table.rows.len();
        let mut jac = DMatrix::<f64>::zeros(rows, self.num_edges);
        for &(row, e, d) in &self.dk {
            jac[(row, e)] += table.rows[row].volume.sqrt() * d;
        }
        for &(row, e, d) in &self.dvol {
            let r = &table.rows[row];
            jac[(row, e)] += r.deficit / (2.0 * r.volume.sqrt()) * d;
        }
        let residual = DVector::from_iterator(rows, table.rows.iter().map(|r| r.deficit * r.volume.sqrt()));
        let mut normal = jac.tr_mul(&jac);
        let scale = normal.diagonal().max().max(f64::MIN_POSITIVE);
        for i in 0..self.num_edges {
            normal[(i, i)] += mu * normal[(i, i)].max(1e-9 * scale);
        }
        let rhs = -jac.tr_mul(&residual);
        match normal.cholesky() {
            Some(ch) => ch.solve(&rhs),
            None => DVector::zeros(self.num_edges),
        }
    }
}

/// `d theta_q / d l_e` for one simplex by central differences, rows and
/// columns both in local pair order (row `(a, b)` is the face opposite
/// `a` and `b`).
fn dihedral_jacobian(s: &MetricSimplex) -> Result<DMatrix<f64>> {
    let pairs: Vec<(usize, usize)> = s.edges().collect();
    let m = pairs.len();
    let dihedrals = |lengths: Vec<f64>| -> Result<Vec<f64>> {
        let t = MetricSimplex::with_tolerances(s.dim(), lengths, *s.tolerances())?;
        pairs
            .iter()
            .map(|&(a, b)| {
                let q: Vec<usize> = (0..=s.dim()).filter(|&v| v != a && v != b).collect();
                t.dihedral_angle(&q)
            })
            .collect()
    };
    let mut jac = DMatrix::zeros(m, m);
    for e in 0..m {
        let h = 1e-6 * s.lengths()[e];
        let mut plus = s.lengths().to_vec();
        plus[e] += h;
        let mut minus = s.lengths().to_vec();
        minus[e] -= h;
        let (fp, fm) = (dihedrals(plus)?, dihedrals(minus)?);
        for p in 0..m {
            jac[(p, e)] = (fp[p] - fm[p]) / (2.0 * h);
        }
    }
    Ok(jac)
}
