//! Property suites run by `layerconn verify` and the acceptance tests.
//!
//! Every suite returns a [`SuiteResult`]; evaluation errors are recorded as
//! violations instead of aborting the run. Cases are generated from
//! per-case seeds so results do not depend on the number of threads.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{
    alpha_bound_check, classify_removal, interval_check, random_layered_graph,
    random_layered_path_graph, removable_nodes, subsets_up_to, AnalysisError, DEGRADED_GAP,
    PRESERVED_TOL,
};
use crate::consensus::{initial_residual, simulate, SimConfig, SimParams};
use crate::fixtures::{self, Fixture};
use crate::graph::{ConeGraph, LayeredGraph, NodeId, WeightedDigraph};
use crate::spectral::{
    dense_real_eigenvalues, enumerate_arborescences, grounded_cone, lambda2_layered,
    lambda2_oracle, laplacian, matrix_tree_weight, tridiagonal_smallest_eig, TridiagonalMatrix,
    REALNESS_TOL,
};

/// Reference values carry four decimals.
pub const TABLE_TOL: f64 = 5e-5;
pub const ORACLE_TOL: f64 = 1e-8;
pub const MATRIX_TREE_TOL: f64 = 1e-9;
/// Bisection tolerance for the strict monotonicity check.
pub const STRICT_TOL: f64 = 1e-13;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Generator seeds for the randomized suites.
    pub seeds: u64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seeds: 500,
            jobs: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub violations: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str, outcomes: Vec<Vec<String>>) -> Self {
        Self {
            name,
            cases: outcomes.len(),
            violations: outcomes.into_iter().flatten().collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases", self.name, self.cases)?;
        if !self.passed() {
            write!(f, ", {} violations", self.violations.len())?;
        }
        write!(f, ")")
    }
}

fn rng(suite: u64, seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(suite.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ seed)
}

fn fmt_set(g: &LayeredGraph, s: &BTreeSet<NodeId>) -> String {
    format!("{{{}}}", g.labels_of(s).join(","))
}

/// The fixture graph paired with every removal set of at most `max_k` nodes.
fn fixture_cases(max_k: usize) -> Vec<(Fixture, LayeredGraph, BTreeSet<NodeId>)> {
    Fixture::ALL
        .iter()
        .flat_map(|&f| {
            let g = f.graph();
            subsets_up_to(&removable_nodes(&g), max_k)
                .into_iter()
                .map(move |s| (f, g.clone(), s))
        })
        .collect()
}

/// Reference table rows.
pub fn table_fidelity() -> SuiteResult {
    let mut outcomes = Vec::new();
    for f in Fixture::ALL {
        let g = f.graph();
        for row in f.table() {
            let mut v = Vec::new();
            let tag = format!("{} minus {{{}}}", f.name(), row.removed.join(","));
            match g.ids(&row.removed).and_then(|s| g.remove_nodes(&s)) {
                Err(e) => v.push(format!("{tag}: {e}")),
                Ok(h) => {
                    match lambda2_layered(&h).map(|r| r.lambda2) {
                        Ok(Some(l)) if (l - row.lambda2).abs() <= TABLE_TOL => {}
                        Ok(l) => v.push(format!("{tag}: λ₂ = {l:?}, expected {}", row.lambda2)),
                        Err(e) => v.push(format!("{tag}: {e}")),
                    }
                    let got: BTreeSet<String> = h
                        .labels_of(&h.zero_from_above_nodes())
                        .into_iter()
                        .collect();
                    let want: BTreeSet<String> = row.witnesses.iter().cloned().collect();
                    if got != want {
                        v.push(format!("{tag}: witnesses {got:?}, expected {want:?}"));
                    }
                }
            }
            outcomes.push(v);
        }
    }
    SuiteResult::new("table fidelity", outcomes)
}

/// Decomposition against the dense solver on every fixture removal up to `max_k`.
pub fn oracle_equivalence(max_k: usize) -> SuiteResult {
    let outcomes = fixture_cases(max_k)
        .par_iter()
        .map(|(f, g, s)| {
            let tag = format!("{} minus {}", f.name(), fmt_set(g, s));
            let h = match g.remove_nodes(s) {
                Ok(h) => h,
                Err(e) => return vec![format!("{tag}: {e}")],
            };
            match (lambda2_layered(&h), lambda2_oracle(&h)) {
                (Ok(r), Ok(o)) => match r.lambda2 {
                    Some(l) if (l - o).abs() <= ORACLE_TOL => vec![],
                    l => vec![format!("{tag}: decomposition {l:?}, oracle {o}")],
                },
                (Err(e), _) | (_, Err(e)) => vec![format!("{tag}: {e}")],
            }
        })
        .collect();
    SuiteResult::new("oracle equivalence", outcomes)
}

fn realness(tag: &str, g: &LayeredGraph) -> Vec<String> {
    let (d, _) = g.to_digraph();
    match dense_real_eigenvalues(&laplacian(&d), REALNESS_TOL) {
        Ok(_) => vec![],
        Err(e) => vec![format!("{tag}: {e}")],
    }
}

/// Real spectrum on fixture removals and generated graphs of both kinds.
pub fn spectrum_realness(seeds: u64) -> SuiteResult {
    let mut outcomes: Vec<Vec<String>> = fixture_cases(4)
        .par_iter()
        .map(|(f, g, s)| match g.remove_nodes(s) {
            Ok(h) => realness(&format!("{} minus {}", f.name(), fmt_set(g, s)), &h),
            Err(e) => vec![e.to_string()],
        })
        .collect();
    outcomes.par_extend((0..seeds).into_par_iter().map(|seed| {
        let mut v = realness(&format!("path seed {seed}"), &path_generator(seed));
        v.extend(realness(
            &format!("general seed {seed}"),
            &random_layered_graph(seed, 2 + seed as usize % 3, 4, 1),
        ));
        v
    }));
    SuiteResult::new("spectrum realness", outcomes)
}

fn random_digraph(seed: u64) -> WeightedDigraph {
    let mut r = rng(3, seed);
    let n = r.gen_range(2..=7);
    let mut g = WeightedDigraph::new((0..n).map(|i| format!("u{i}"))).expect("distinct labels");
    for s in 0..n {
        for d in 0..n {
            if s != d && r.gen_bool(0.5) {
                let w = *[0.5, 1.0, 2.0].choose(&mut r).unwrap();
                g.add_edge(s, d, w).expect("valid edge");
            }
        }
    }
    g
}

/// Grounded determinant against exhaustive arborescence enumeration, all roots.
pub fn matrix_tree(graphs: u64) -> SuiteResult {
    let outcomes = (0..graphs)
        .into_par_iter()
        .map(|seed| {
            let g = random_digraph(seed);
            let mut v = Vec::new();
            for root in 0..g.len() {
                match (
                    matrix_tree_weight(&g, root),
                    enumerate_arborescences(&g, root),
                ) {
                    (Ok(a), Ok(b)) if (a - b).abs() <= MATRIX_TREE_TOL => {}
                    (a, b) => v.push(format!(
                        "graph {seed} root {root}: det {a:?}, enumeration {b:?}"
                    )),
                }
            }
            v
        })
        .collect();
    SuiteResult::new("matrix-tree identity", outcomes)
}

fn random_tridiagonal(seed: u64) -> TridiagonalMatrix {
    let mut r = rng(4, seed);
    let n = r.gen_range(2..=8);
    TridiagonalMatrix::new((0..n).map(|_| r.gen_range(0.0..=4.0)).collect())
}

fn sturm_vs_dense(tag: &str, t: &TridiagonalMatrix) -> Option<String> {
    let sturm = tridiagonal_smallest_eig(t, STRICT_TOL);
    let dense = dense_real_eigenvalues(&t.to_dense(), REALNESS_TOL).map(|e| e[0]);
    match (sturm, dense) {
        (Ok(a), Ok(b)) if (a - b).abs() <= ORACLE_TOL => None,
        (a, b) => Some(format!("{tag}: bisection {a:?}, dense {b:?}")),
    }
}

/// λ₁(A) < λ₁(A_S) for every contiguous proper window S.
pub fn tridiagonal_monotonicity(seeds: u64) -> SuiteResult {
    let outcomes = (0..seeds)
        .into_par_iter()
        .map(|seed| {
            let t = random_tridiagonal(seed);
            let n = t.dim();
            let Ok(full) = tridiagonal_smallest_eig(&t, STRICT_TOL) else {
                return vec![format!("matrix {seed}: bisection failed")];
            };
            let mut v = Vec::new();
            for lo in 0..n {
                for hi in lo..n {
                    if hi - lo + 1 == n {
                        continue;
                    }
                    match t.window(lo..=hi).smallest_eigenvalue(STRICT_TOL) {
                        Ok(w) if full < w => {}
                        w => v.push(format!("matrix {seed} window {lo}..={hi}: {full} vs {w:?}")),
                    }
                }
            }
            v
        })
        .collect();
    SuiteResult::new("tridiagonal monotonicity", outcomes)
}

/// Apex weights on a path forced into one of the four low-connectivity
/// patterns (`case` in 0..4).
fn forced_pattern(seed: u64, case: usize) -> Vec<f64> {
    let mut r = rng(5, seed * 4 + case as u64);
    let min_len = [1, 2, 2, 3][case];
    let n = r.gen_range(min_len..=10);
    let mut f: Vec<f64> = (0..n).map(|_| r.gen_range(0..=2) as f64).collect();
    let from_end = r.gen_bool(0.5);
    let place = |f: &mut Vec<f64>, at: usize, pattern: &[f64]| {
        f[at..at + pattern.len()].copy_from_slice(pattern);
    };
    match case {
        0 => {
            let at = if from_end { n - 1 } else { 0 };
            f[at] = 0.0;
        }
        1 => {
            if from_end {
                place(&mut f, n - 2, &[0.0, 1.0]);
            } else {
                place(&mut f, 0, &[1.0, 0.0]);
            }
        }
        2 => place(&mut f, r.gen_range(0..=n - 2), &[0.0, 0.0]),
        _ => place(&mut f, r.gen_range(0..=n - 3), &[1.0, 0.0, 1.0]),
    }
    f
}

fn path_digraph(n: usize) -> WeightedDigraph {
    let mut g = WeightedDigraph::new((0..n).map(|i| format!("p{i}"))).expect("distinct labels");
    for i in 1..n {
        g.add_edge(i - 1, i, 1.0).expect("valid edge");
        g.add_edge(i, i - 1, 1.0).expect("valid edge");
    }
    g
}

/// λ₂ of the weighted cone over a path stays below 1 in each forced pattern.
pub fn path_cone_patterns(seeds: u64) -> SuiteResult {
    let outcomes = (0..seeds)
        .into_par_iter()
        .flat_map_iter(|seed| (0..4).map(move |case| (seed, case)))
        .map(|(seed, case)| {
            let f = forced_pattern(seed, case);
            let tag = format!(
                "seed {seed} case {} f={f:?}",
                ["i", "ii", "iii", "iv"][case]
            );
            let cone = ConeGraph::new(&path_digraph(f.len()), &f).expect("valid weights");
            let mut v = Vec::new();
            match dense_real_eigenvalues(&laplacian(cone.digraph()), REALNESS_TOL) {
                Ok(e) if e[1] < 1.0 => {}
                e => v.push(format!("{tag}: cone λ₂ {e:?}")),
            }
            let f_len = f.len();
            let diag = (0..f_len)
                .map(|i| f[i] + [i > 0, i + 1 < f_len].iter().filter(|&&b| b).count() as f64)
                .collect();
            let t = TridiagonalMatrix::new(diag);
            match tridiagonal_smallest_eig(&t, STRICT_TOL) {
                Ok(l) if l < 1.0 => {}
                l => v.push(format!("{tag}: grounded λ₁ {l:?}")),
            }
            v.extend(sturm_vs_dense(&tag, &t));
            v
        })
        .collect();
    SuiteResult::new("path cone patterns", outcomes)
}

/// Bisection against the dense solver on the monotonicity and pattern instances.
pub fn bisection_vs_dense(seeds: u64) -> SuiteResult {
    let outcomes = (0..seeds)
        .into_par_iter()
        .map(|seed| {
            let t = random_tridiagonal(seed);
            let mut v: Vec<String> = sturm_vs_dense(&format!("matrix {seed}"), &t)
                .into_iter()
                .collect();
            let n = t.dim();
            for lo in 0..n {
                for hi in lo..n {
                    v.extend(sturm_vs_dense(
                        &format!("matrix {seed} window {lo}..={hi}"),
                        &t.window(lo..=hi),
                    ));
                }
            }
            v
        })
        .collect();
    SuiteResult::new("bisection vs dense", outcomes)
}

/// Grounded path cones have exactly the expected tridiagonal shape.
pub fn grounded_structure() -> SuiteResult {
    let outcomes = fixture_cases(2)
        .par_iter()
        .map(|(f, g, s)| {
            let tag = format!("{} minus {}", f.name(), fmt_set(g, s));
            let h = match g.remove_nodes(s) {
                Ok(h) => h,
                Err(e) => return vec![format!("{tag}: {e}")],
            };
            let deg = h.from_above_degrees();
            let mut v = Vec::new();
            for li in 1..h.layer_count() {
                for comp in h.layer_components(li) {
                    let want = TridiagonalMatrix::new(
                        comp.iter()
                            .map(|&u| (deg[u.0] + h.intra_degree(u)) as f64)
                            .collect(),
                    );
                    match grounded_cone(&h, &comp) {
                        Ok(m) if m == want.to_dense() => {}
                        m => v.push(format!("{tag} component {:?}: {m:?}", h.labels_of(&comp))),
                    }
                }
            }
            v
        })
        .collect();
    SuiteResult::new("grounded cone structure", outcomes)
}

/// Layer rule, path validity, overlap preservation and commutativity of
/// removal on every fixture subset up to `max_k`.
pub fn removal_closure(max_k: usize) -> SuiteResult {
    let outcomes = fixture_cases(max_k)
        .par_iter()
        .map(|(f, g, s)| {
            let tag = format!("{} minus {}", f.name(), fmt_set(g, s));
            let h = match g.remove_nodes(s) {
                Ok(h) => h,
                Err(e) => return vec![format!("{tag}: {e}")],
            };
            let mut v = Vec::new();
            if !h.layer_rule_holds() {
                v.push(format!("{tag}: layer rule broken"));
            }
            if let Err(e) = h.validate_layered_path() {
                v.push(format!("{tag}: {e}"));
            }
            if g.check_overlap_condition().holds && !h.check_overlap_condition().holds {
                v.push(format!("{tag}: overlap condition lost"));
            }
            let items: Vec<NodeId> = s.iter().copied().collect();
            for k in 1..items.len() {
                let a: BTreeSet<NodeId> = items[..k].iter().copied().collect();
                let b: BTreeSet<NodeId> = items[k..].iter().copied().collect();
                match g.remove_nodes(&a).and_then(|ga| ga.remove_nodes(&b)) {
                    Ok(two) if two == h => {}
                    r => v.push(format!(
                        "{tag}: split at {k} gives {:?}",
                        r.map(|x| x.node_count())
                    )),
                }
            }
            v
        })
        .collect();
    SuiteResult::new("removal closure", outcomes)
}

fn path_generator(seed: u64) -> LayeredGraph {
    random_layered_path_graph(seed, 2 + seed as usize % 4, 5)
}

/// Outcome of the main sweep over generated layered path graphs.
pub struct PathSweep {
    pub generator: SuiteResult,
    pub equivalence: SuiteResult,
    pub interval: SuiteResult,
    pub closure: SuiteResult,
}

/// Generated condition-(1) graphs, every removal of at most `max_k` nodes:
/// zero-degree witnesses against λ₂ = 1, the interval `[0, 1]`, and
/// preservation of the overlap condition.
pub fn path_sweep(seeds: u64, max_k: usize) -> PathSweep {
    let per_seed: Vec<[Vec<String>; 4]> = (0..seeds)
        .into_par_iter()
        .map(|seed| {
            let g = path_generator(seed);
            let mut out: [Vec<String>; 4] = Default::default();
            if let Err(e) = g.validate_layered_path() {
                out[0].push(format!("seed {seed}: {e}"));
            }
            if !g.check_overlap_condition().holds {
                out[0].push(format!("seed {seed}: overlap condition fails"));
            }
            if g.node_count() > 25 {
                out[0].push(format!("seed {seed}: {} nodes", g.node_count()));
            }
            if !out[0].is_empty() {
                return out;
            }
            for s in subsets_up_to(&removable_nodes(&g), max_k) {
                let tag = format!("seed {seed} minus {}", fmt_set(&g, &s));
                match classify_removal(&g, &s) {
                    Err(AnalysisError::Unclassifiable { lambda2, .. }) => {
                        out[1].push(format!("{tag}: λ₂ = {lambda2} in the gap band"))
                    }
                    Err(e) => out[1].push(format!("{tag}: {e}")),
                    Ok(r) => {
                        if !r.condition1_holds {
                            out[3].push(format!("{tag}: overlap condition lost"));
                        }
                        if let Some(l) = r.lambda2 {
                            let ok = if r.zero_degree_witnesses.is_empty() {
                                (l - 1.0).abs() <= PRESERVED_TOL
                            } else {
                                l <= 1.0 - DEGRADED_GAP
                            };
                            if !ok {
                                out[1].push(format!(
                                    "{tag}: λ₂ = {l}, witnesses {:?}",
                                    r.zero_degree_witnesses
                                ));
                            }
                        }
                    }
                }
                match g
                    .remove_nodes(&s)
                    .map_err(AnalysisError::from)
                    .and_then(|h| interval_check(&h))
                {
                    Ok(true) => {}
                    r => out[2].push(format!("{tag}: interval check {r:?}")),
                }
            }
            out
        })
        .collect();
    let mut cols: [Vec<Vec<String>>; 4] = Default::default();
    for row in per_seed {
        for (c, v) in cols.iter_mut().zip(row) {
            c.push(v);
        }
    }
    let [generator, equivalence, interval, closure] = cols;
    PathSweep {
        generator: SuiteResult::new("generator contract", generator),
        equivalence: SuiteResult::new("witness equivalence", equivalence),
        interval: SuiteResult::new("interval [0, 1]", interval),
        closure: SuiteResult::new("overlap closure", closure),
    }
}

pub const ALPHAS: [f64; 5] = [0.0, 0.5, 1.0, 1.7, 2.0];

/// λ₂ ≥ α whenever every from-above degree and the first layer's λ₂ are at
/// least α, on general layered graphs. The decomposition is also checked
/// against the dense solver on each graph.
pub fn alpha_sweep(seeds: u64) -> SuiteResult {
    let outcomes = (0..seeds)
        .into_par_iter()
        .flat_map_iter(|seed| ALPHAS.iter().map(move |&a| (seed, a)))
        .map(|(seed, alpha)| {
            let g = random_layered_graph(seed, 2 + seed as usize % 3, 4, alpha.ceil() as usize);
            let tag = format!("seed {seed} α={alpha}");
            let mut v = Vec::new();
            match alpha_bound_check(&g, alpha) {
                Ok(r) if !r.hypothesis_holds => {
                    v.push(format!("{tag}: generator missed the hypothesis"))
                }
                Ok(r) if r.violated() => v.push(format!("{tag}: λ₂ = {:?}", r.lambda2)),
                Ok(_) => {}
                Err(e) => v.push(format!("{tag}: {e}")),
            }
            match (lambda2_layered(&g).map(|r| r.lambda2), lambda2_oracle(&g)) {
                (Ok(Some(l)), Ok(o)) if (l - o).abs() <= ORACLE_TOL => {}
                (l, o) => v.push(format!("{tag}: decomposition {l:?}, oracle {o:?}")),
            }
            v
        })
        .collect();
    SuiteResult::new("alpha lower bound", outcomes)
}

/// Consensus properties: leader invariance, equilibrium, decay-rate ordering
/// by λ₂ over `seeds` seeds, and step-size robustness.
pub fn consensus(seeds: u64) -> SuiteResult {
    let g = fixtures::g_tri();
    let graphs = [
        ("G_tri", g.clone()),
        (
            "G_tri minus {v2,v4,v7}",
            g.remove_labels(&["v2", "v4", "v7"]).expect("valid removal"),
        ),
        (
            "G_tri minus {v4,v5,v10}",
            g.remove_labels(&["v4", "v5", "v10"])
                .expect("valid removal"),
        ),
    ];
    let lambda: Vec<f64> = graphs
        .iter()
        .map(|(_, h)| {
            lambda2_layered(h)
                .ok()
                .and_then(|r| r.lambda2)
                .unwrap_or(f64::NAN)
        })
        .collect();
    let mut outcomes: Vec<Vec<String>> = (1..=seeds)
        .into_par_iter()
        .map(|seed| {
            let mut v = Vec::new();
            let mut rates = Vec::new();
            for (name, h) in &graphs {
                let cfg = SimConfig::new(
                    h.clone(),
                    SimParams {
                        seed,
                        ..SimParams::default()
                    },
                );
                match simulate(&cfg) {
                    Ok(trace) => {
                        let lv = cfg.formation.leader_velocity;
                        if trace.velocities.iter().any(|s| s[trace.leader] != lv) {
                            v.push(format!("{name} seed {seed}: leader velocity changed"));
                        }
                        rates.push(trace.decay_rate);
                    }
                    Err(e) => {
                        v.push(format!("{name} seed {seed}: {e}"));
                        rates.push(f64::NAN);
                    }
                }
            }
            for i in 0..graphs.len() {
                for j in 0..graphs.len() {
                    if lambda[i] > lambda[j] + PRESERVED_TOL && !(rates[i] > rates[j]) {
                        v.push(format!(
                            "seed {seed}: {} rate {} not above {} rate {}",
                            graphs[i].0, rates[i], graphs[j].0, rates[j]
                        ));
                    }
                }
            }
            v
        })
        .collect();
    for (name, h) in &graphs {
        let mut v = Vec::new();
        let still = SimParams {
            perturbation_pos: 0.0,
            perturbation_vel: 0.0,
            ..SimParams::default()
        };
        let cfg = SimConfig::new(h.clone(), still);
        match initial_residual(&cfg) {
            Ok(r) if r < 1e-12 => {}
            r => v.push(format!("{name}: equilibrium residual {r:?}")),
        }
        match simulate(&cfg) {
            Ok(t) if t.error.iter().all(|&e| e < 1e-10) => {}
            Ok(t) => v.push(format!(
                "{name}: unperturbed error reached {}",
                t.error.iter().cloned().fold(0.0, f64::max)
            )),
            Err(e) => v.push(format!("{name}: {e}")),
        }
        let coarse = SimConfig::new(h.clone(), SimParams::default());
        let mut fine = coarse.clone();
        fine.params.dt /= 2.0;
        match (simulate(&coarse), simulate(&fine)) {
            (Ok(a), Ok(b)) => {
                let (ea, eb) = (a.final_error(), b.final_error());
                if !((ea - eb).abs() < 0.01 * eb) {
                    v.push(format!("{name}: e(T) {ea} at dt, {eb} at dt/2"));
                }
            }
            (Err(e), _) | (_, Err(e)) => v.push(format!("{name}: {e}")),
        }
        outcomes.push(v);
    }
    SuiteResult::new("consensus", outcomes)
}

/// Every suite, in a fixed order.
pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<SuiteResult>, AnalysisError> {
    let seeds = cfg.seeds;
    let run = || {
        let sweep = path_sweep(seeds, 3);
        vec![
            table_fidelity(),
            removal_closure(4),
            oracle_equivalence(4),
            spectrum_realness(seeds),
            matrix_tree(200),
            tridiagonal_monotonicity(seeds),
            path_cone_patterns(seeds),
            grounded_structure(),
            bisection_vs_dense(seeds),
            sweep.generator,
            sweep.equivalence,
            sweep.interval,
            sweep.closure,
            alpha_sweep(seeds),
            consensus(seeds.clamp(1, 10)),
        ]
    };
    match cfg.jobs {
        Some(jobs) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| AnalysisError::ThreadPool(e.to_string()))?
            .install(run)),
        None => Ok(run()),
    }
}
