//! Second-order formation consensus on a layered graph.
//!
//! Followers obey
//! `v̇_i = -Σ_j a_ij [(p_i - p_j - (o_i - o_j)) + (v_i - v_j)]` over their
//! in-neighbours; the leader moves at constant velocity. The formation error
//! decays roughly like `exp(-λ₂ t / 2)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::format::{opt_sig12, sig12};
use crate::graph::{LayeredGraph, NodeId};

/// Blow-up threshold on the state norm.
pub const BLOWUP_NORM: f64 = 1e9;
/// Formation errors at or below this count as equilibrium.
pub const EQUILIBRIUM_ERROR: f64 = 1e-12;
/// Default tail fraction for [`convergence_rate`].
pub const DEFAULT_TAIL: f64 = 0.5;

pub type Vec2 = [f64; 2];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid simulation config: {field}: {reason}")]
    Config { field: &'static str, reason: String },
    #[error("state norm {norm:e} exceeded {BLOWUP_NORM:e} at t = {time}")]
    Blowup { time: f64, norm: f64 },
}

fn config_err(field: &'static str, reason: impl Into<String>) -> SimError {
    SimError::Config {
        field,
        reason: reason.into(),
    }
}

/// Desired offsets relative to the leader, indexed by node id.
#[derive(Debug, Clone, PartialEq)]
pub struct FormationSpec {
    pub offsets: Vec<Vec2>,
    pub leader_velocity: Vec2,
}

impl FormationSpec {
    /// Triangular lattice with unit spacing: layer `i` sits at
    /// `y = -i·√3/2`, its nodes centred on `x = 0` in layer order.
    pub fn triangular(g: &LayeredGraph, leader_velocity: Vec2) -> Self {
        let mut offsets = vec![[0.0, 0.0]; g.id_bound()];
        let dy = 3f64.sqrt() / 2.0;
        for (i, layer) in g.layers().iter().enumerate() {
            let half = (layer.len() as f64 - 1.0) / 2.0;
            for (k, v) in layer.iter().enumerate() {
                offsets[v.0] = [k as f64 - half, 0.0 - i as f64 * dy];
            }
        }
        Self {
            offsets,
            leader_velocity,
        }
    }

    pub fn offset(&self, v: NodeId) -> Vec2 {
        self.offsets[v.0]
    }
}

/// Numeric simulation settings, as read from a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimParams {
    pub dt: f64,
    pub duration: f64,
    pub perturbation_pos: f64,
    pub perturbation_vel: f64,
    pub leader_velocity: Vec2,
    pub seed: u64,
}

impl Default for SimParams {
    fn default() -> Self {
        Self {
            dt: 0.01,
            duration: 40.0,
            perturbation_pos: 0.5,
            perturbation_vel: 0.2,
            leader_velocity: [0.0, 1.0],
            seed: 1,
        }
    }
}

impl SimParams {
    pub fn from_json(text: &str) -> Result<Self, SimError> {
        serde_json::from_str(text).map_err(|e| config_err("config", e.to_string()))
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(config_err(
                "dt",
                format!("must be positive, got {}", self.dt),
            ));
        }
        if !(self.duration >= self.dt && self.duration.is_finite()) {
            return Err(config_err(
                "duration",
                format!("must be at least dt = {}, got {}", self.dt, self.duration),
            ));
        }
        for (field, x) in [
            ("perturbation_pos", self.perturbation_pos),
            ("perturbation_vel", self.perturbation_vel),
        ] {
            if !(x >= 0.0 && x.is_finite()) {
                return Err(config_err(
                    field,
                    format!("must be finite and nonnegative, got {x}"),
                ));
            }
        }
        if !self.leader_velocity.iter().all(|x| x.is_finite()) {
            return Err(config_err("leader_velocity", "must be finite"));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.duration / self.dt).round() as usize
    }
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub graph: LayeredGraph,
    pub formation: FormationSpec,
    pub params: SimParams,
}

impl SimConfig {
    /// Triangular formation with the parameters' leader velocity.
    pub fn new(graph: LayeredGraph, params: SimParams) -> Self {
        let formation = FormationSpec::triangular(&graph, params.leader_velocity);
        Self {
            graph,
            formation,
            params,
        }
    }

    fn validate(&self) -> Result<(), SimError> {
        self.params.validate()?;
        let leader = self
            .graph
            .leader()
            .ok_or_else(|| config_err("graph", "no leader"))?;
        let f = &self.formation;
        if f.offsets.len() < self.graph.id_bound() {
            return Err(config_err("formation", "fewer offsets than nodes"));
        }
        if f.offset(leader) != [0.0, 0.0] {
            return Err(config_err("formation", "leader offset must be (0, 0)"));
        }
        if !f
            .offsets
            .iter()
            .flatten()
            .chain(&f.leader_velocity)
            .all(|x| x.is_finite())
        {
            return Err(config_err("formation", "offsets must be finite"));
        }
        Ok(())
    }
}

/// Right-hand side of the closed-loop system in dense node order.
struct Dynamics {
    leader: usize,
    offsets: Vec<Vec2>,
    in_neighbors: Vec<Vec<(usize, f64)>>,
}

/// State: positions then velocities, each `n` two-vectors.
#[derive(Clone)]
struct State {
    p: Vec<Vec2>,
    v: Vec<Vec2>,
}

impl State {
    fn axpy(&self, h: f64, d: &State) -> State {
        let add = |a: &[Vec2], b: &[Vec2]| -> Vec<Vec2> {
            a.iter()
                .zip(b)
                .map(|(x, y)| [x[0] + h * y[0], x[1] + h * y[1]])
                .collect()
        };
        State {
            p: add(&self.p, &d.p),
            v: add(&self.v, &d.v),
        }
    }

    fn norm(&self) -> f64 {
        self.p
            .iter()
            .chain(&self.v)
            .flatten()
            .map(|x| x * x)
            .sum::<f64>()
            .sqrt()
    }
}

impl Dynamics {
    fn derivative(&self, s: &State) -> State {
        let accel = (0..s.p.len())
            .map(|i| {
                if i == self.leader {
                    return [0.0, 0.0];
                }
                let mut a = [0.0, 0.0];
                for &(j, w) in &self.in_neighbors[i] {
                    for (c, ac) in a.iter_mut().enumerate() {
                        let rel = s.p[i][c] - s.p[j][c] - (self.offsets[i][c] - self.offsets[j][c]);
                        *ac -= w * (rel + s.v[i][c] - s.v[j][c]);
                    }
                }
                a
            })
            .collect();
        State {
            p: s.v.clone(),
            v: accel,
        }
    }

    fn rk4(&self, s: &State, h: f64) -> State {
        let k1 = self.derivative(s);
        let k2 = self.derivative(&s.axpy(h / 2.0, &k1));
        let k3 = self.derivative(&s.axpy(h / 2.0, &k2));
        let k4 = self.derivative(&s.axpy(h, &k3));
        let mut out = s.clone();
        for (dst, src) in [
            (&mut out.p, [&k1.p, &k2.p, &k3.p, &k4.p]),
            (&mut out.v, [&k1.v, &k2.v, &k3.v, &k4.v]),
        ] {
            for (i, x) in dst.iter_mut().enumerate() {
                for c in 0..2 {
                    x[c] += h / 6.0
                        * (src[0][i][c] + 2.0 * src[1][i][c] + 2.0 * src[2][i][c] + src[3][i][c]);
                }
            }
        }
        out
    }

    fn formation_error(&self, s: &State) -> f64 {
        let l = self.leader;
        (0..s.p.len())
            .filter(|&i| i != l)
            .map(|i| {
                (0..2)
                    .map(|c| {
                        let d = s.p[i][c] - s.p[l][c] - self.offsets[i][c];
                        d * d
                    })
                    .sum::<f64>()
            })
            .sum::<f64>()
            .sqrt()
    }
}

/// Sampled trajectory. `positions[k][i]` is node `labels[i]` at `times[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimTrace {
    pub times: Vec<f64>,
    pub labels: Vec<String>,
    pub leader: usize,
    pub positions: Vec<Vec<Vec2>>,
    pub velocities: Vec<Vec<Vec2>>,
    pub error: Vec<f64>,
    pub decay_rate: f64,
}

impl SimTrace {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_error(&self) -> f64 {
        *self.error.last().unwrap_or(&0.0)
    }

    /// First sample time with `e(t) < threshold`.
    pub fn time_below(&self, threshold: f64) -> Option<f64> {
        self.error
            .iter()
            .position(|&e| e < threshold)
            .map(|k| self.times[k])
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,node,px,py,vx,vy\n");
        for (k, t) in self.times.iter().enumerate() {
            for (i, name) in self.labels.iter().enumerate() {
                let [px, py] = self.positions[k][i];
                let [vx, vy] = self.velocities[k][i];
                out.push_str(&format!("{t},{name},{px},{py},{vx},{vy}\n"));
            }
        }
        out
    }

    pub fn summary(&self, lambda2: Option<f64>) -> SimSummary {
        SimSummary {
            decay_rate: self.decay_rate,
            lambda2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimSummary {
    /// `null` when equilibrium was reached inside the fitted window.
    #[serde(serialize_with = "sig12")]
    pub decay_rate: f64,
    #[serde(serialize_with = "opt_sig12")]
    pub lambda2: Option<f64>,
}

impl SimSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

fn setup(cfg: &SimConfig) -> Result<(Dynamics, State, Vec<String>), SimError> {
    cfg.validate()?;
    let (digraph, order) = cfg.graph.to_digraph();
    let leader_id = cfg.graph.leader().expect("validated");
    let leader = order
        .iter()
        .position(|&v| v == leader_id)
        .expect("leader is in order");
    let offsets: Vec<Vec2> = order.iter().map(|&v| cfg.formation.offset(v)).collect();
    let in_neighbors = (0..order.len())
        .map(|i| digraph.in_edges(i).collect())
        .collect();
    let p = &cfg.params;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut draw = |s: f64| if s > 0.0 { rng.gen_range(-s..=s) } else { 0.0 };
    let lv = cfg.formation.leader_velocity;
    let mut state = State {
        p: offsets.clone(),
        v: vec![lv; order.len()],
    };
    for i in (0..order.len()).filter(|&i| i != leader) {
        for c in 0..2 {
            state.p[i][c] += draw(p.perturbation_pos);
            state.v[i][c] += draw(p.perturbation_vel);
        }
    }
    let labels = order
        .iter()
        .map(|&v| cfg.graph.label(v).to_string())
        .collect();
    Ok((
        Dynamics {
            leader,
            offsets,
            in_neighbors,
        },
        state,
        labels,
    ))
}

/// Largest follower acceleration at `t = 0`; zero at the exact formation.
pub fn initial_residual(cfg: &SimConfig) -> Result<f64, SimError> {
    let (dynamics, state, _) = setup(cfg)?;
    let d = dynamics.derivative(&state);
    Ok(d.v.iter().flatten().fold(0.0, |m: f64, x| m.max(x.abs())))
}

/// Integrates the closed loop with classic RK4 at fixed step.
pub fn simulate(cfg: &SimConfig) -> Result<SimTrace, SimError> {
    let (dynamics, mut state, labels) = setup(cfg)?;
    let dt = cfg.params.dt;
    let steps = cfg.params.steps();
    let mut trace = SimTrace {
        times: Vec::with_capacity(steps + 1),
        labels,
        leader: dynamics.leader,
        positions: Vec::with_capacity(steps + 1),
        velocities: Vec::with_capacity(steps + 1),
        error: Vec::with_capacity(steps + 1),
        decay_rate: f64::NAN,
    };
    for k in 0..=steps {
        let t = k as f64 * dt;
        if k > 0 {
            state = dynamics.rk4(&state, dt);
            let norm = state.norm();
            if !(norm <= BLOWUP_NORM) {
                return Err(SimError::Blowup { time: t, norm });
            }
        }
        trace.times.push(t);
        trace.error.push(dynamics.formation_error(&state));
        trace.positions.push(state.p.clone());
        trace.velocities.push(state.v.clone());
    }
    trace.decay_rate = convergence_rate(&trace.times, &trace.error, DEFAULT_TAIL);
    Ok(trace)
}

/// Negated least-squares slope of `ln e(t)` over the last `tail` fraction
/// of samples. Returns `+∞` if any error in the window is at equilibrium.
pub fn convergence_rate(times: &[f64], error: &[f64], tail: f64) -> f64 {
    assert_eq!(times.len(), error.len());
    let n = times.len();
    let start = n - ((n as f64 * tail.clamp(0.0, 1.0)).round() as usize).clamp(2.min(n), n);
    let (t, e) = (&times[start..], &error[start..]);
    if e.iter().any(|&x| !(x > EQUILIBRIUM_ERROR)) {
        return f64::INFINITY;
    }
    let m = t.len() as f64;
    let tm = t.iter().sum::<f64>() / m;
    let ym = e.iter().map(|x| x.ln()).sum::<f64>() / m;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (ti, ei) in t.iter().zip(e) {
        sxy += (ti - tm) * (ei.ln() - ym);
        sxx += (ti - tm) * (ti - tm);
    }
    if sxx == 0.0 {
        return f64::NAN;
    }
    -sxy / sxx
}
