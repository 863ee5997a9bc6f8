//! Weights `W_Γ = ∫ ∧_e dφ_e` for graphs in `G(n, m)`.
//!
//! In log coordinates `ξ_i = log(-p_i)`, `η_j = log(q_j)` every edge form is
//! `dφ_e = g'(s_e) ds_e` with `s_e = ξ_{i(e)} - η_{j(e)}`. After fixing the
//! scaling gauge (`η_m = 0`, or `ξ_n = 0` when `m = 0`) the map to the
//! `s`-coordinates is linear and square; it is invertible exactly when the
//! underlying bipartite graph is a spanning tree. The weight is then
//! `sign(det) · P(ordering constraints)` for `s_e` drawn i.i.d. from `g'`.
//! When every constraint compares two edge coordinates the probability is
//! an order-polytope volume, `#linear extensions / |E|!`, independent of `g`.

mod bump;

use std::collections::{HashMap, VecDeque};
use std::sync::RwLock;

use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use bump::BumpFunction;

use crate::algebra::rational::{factorial, format_rational, to_f64, Rational};
use crate::error::{Error, Result};
use crate::graphs::{GnmGraph, Graph};

/// Gauge-fixed coordinate on `C(n, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Coord {
    Xi(usize),
    Eta(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogLinearization {
    pub n: usize,
    pub m: usize,
    /// `(source, target)` in edge order.
    pub edges: Vec<(usize, usize)>,
    /// Columns of `matrix`, in reference orientation order `ξ_1,…,ξ_n,η_1,…,η_{m-1}`.
    pub coords: Vec<Coord>,
    /// `matrix[e][c]`: coefficient of `coords[c]` in `s_e`.
    pub matrix: Vec<Vec<i8>>,
    pub is_spanning_tree: bool,
    /// Sign of `det(matrix)`; 0 when singular.
    pub orientation_sign: i8,
    /// Parity of the edge permutation from sorted stars to the given order.
    pub relabel_sign: i8,
}

pub fn log_linearize(graph: &GnmGraph) -> LogLinearization {
    let (n, m) = (graph.n(), graph.m());
    let edges = graph.pairs();
    let coords: Vec<Coord> = if m >= 1 {
        (1..=n).map(Coord::Xi).chain((1..m).map(Coord::Eta)).collect()
    } else {
        (1..n).map(Coord::Xi).collect()
    };
    let col = |c: Coord| coords.iter().position(|&d| d == c);
    let matrix: Vec<Vec<i8>> = edges
        .iter()
        .map(|&(i, j)| {
            let mut row = vec![0i8; coords.len()];
            if let Some(k) = col(Coord::Xi(i)) {
                row[k] += 1;
            }
            if let Some(k) = col(Coord::Eta(j)) {
                row[k] -= 1;
            }
            row
        })
        .collect();
    let orientation_sign = if matrix.len() == coords.len() {
        det_sign(&matrix)
    } else {
        0
    };
    let is_spanning_tree = is_spanning_tree(n, m, &edges);
    debug_assert_eq!(is_spanning_tree, orientation_sign != 0);
    LogLinearization {
        n,
        m,
        edges,
        coords,
        matrix,
        is_spanning_tree,
        orientation_sign,
        relabel_sign: graph.canonical().1,
    }
}

/// Union-find test on the bipartite graph with `n + m` vertices.
fn is_spanning_tree(n: usize, m: usize, edges: &[(usize, usize)]) -> bool {
    if edges.len() + 1 != n + m {
        return false;
    }
    let mut parent: Vec<usize> = (0..n + m).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(i, j) in edges {
        let a = find(&mut parent, i - 1);
        let b = find(&mut parent, n + j - 1);
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Sign of an integer determinant by fraction-free elimination.
fn det_sign(matrix: &[Vec<i8>]) -> i8 {
    let k = matrix.len();
    let mut a: Vec<Vec<i128>> = matrix.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i8;
    let mut prev = 1i128;
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..k {
            for cc in c + 1..k {
                a[r][cc] = (a[r][cc] * a[c][c] - a[r][c] * a[c][cc]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[c][c];
    }
    if k == 0 {
        return 1;
    }
    sign * a[k - 1][k - 1].signum() as i8
}

/// One strict inequality `Σ coeffs[e] s_e > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub coeffs: Vec<i8>,
}

impl Constraint {
    /// `(greater, smaller)` edge positions if this reads `s_a > s_b`.
    pub fn as_pair(&self) -> Option<(usize, usize)> {
        let nz: Vec<(usize, i8)> = self
            .coeffs
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .collect();
        match nz.as_slice() {
            [(a, 1), (b, -1)] => Some((*a, *b)),
            [(b, -1), (a, 1)] => Some((*a, *b)),
            _ => None,
        }
    }

    pub fn holds(&self, s: &[f64]) -> bool {
        let v: f64 = self.coeffs.iter().zip(s).map(|(&c, &x)| c as f64 * x).sum();
        v > 0.0
    }
}

/// `ξ_1 > … > ξ_n` and `η_1 > … > η_m` rewritten in edge coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderingConstraints {
    pub constraints: Vec<Constraint>,
    pub all_pairwise: bool,
}

pub fn ordering_constraints(lin: &LogLinearization) -> Result<OrderingConstraints> {
    if !lin.is_spanning_tree {
        return Err(Error::NotSpanningTree);
    }
    let (n, m) = (lin.n, lin.m);
    let e = lin.edges.len();
    // value of each vertex coordinate relative to vertex 0, as a combination of s_e
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + m];
    for (k, &(i, j)) in lin.edges.iter().enumerate() {
        adj[i - 1].push((n + j - 1, k));
        adj[n + j - 1].push((i - 1, k));
    }
    let mut val: Vec<Option<Vec<i8>>> = vec![None; n + m];
    val[0] = Some(vec![0; e]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let base = val[v].clone().expect("visited");
        for &(w, k) in &adj[v] {
            if val[w].is_some() {
                continue;
            }
            let mut next = base.clone();
            // ξ_i - η_j = s_e
            next[k] += if v < n { -1 } else { 1 };
            val[w] = Some(next);
            queue.push_back(w);
        }
    }
    let diff = |a: usize, b: usize| -> Constraint {
        let (va, vb) = (val[a].as_ref().unwrap(), val[b].as_ref().unwrap());
        Constraint {
            coeffs: va.iter().zip(vb).map(|(x, y)| x - y).collect(),
        }
    };
    let mut constraints = Vec::new();
    for i in 1..n {
        constraints.push(diff(i - 1, i));
    }
    for j in 1..m {
        constraints.push(diff(n + j - 1, n + j));
    }
    let all_pairwise = constraints.iter().all(|c| c.as_pair().is_some());
    Ok(OrderingConstraints {
        constraints,
        all_pairwise,
    })
}

/// Number of linear orders of `0..size` compatible with `greater > smaller` for every pair.
pub fn count_linear_extensions(size: usize, relations: &[(usize, usize)]) -> u128 {
    assert!(size <= 24, "poset too large for subset DP");
    let mut below = vec![0u32; size];
    for &(g, s) in relations {
        below[g] |= 1 << s;
    }
    let mut dp = vec![0u128; 1 << size];
    dp[0] = 1;
    for mask in 0..(1usize << size) {
        let ways = dp[mask];
        if ways == 0 {
            continue;
        }
        for x in 0..size {
            if mask & (1 << x) == 0 && (below[x] as usize) & !mask == 0 {
                dp[mask | (1 << x)] += ways;
            }
        }
    }
    dp[(1 << size) - 1]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum WeightResult {
    /// Not a spanning tree: the edge forms are linearly dependent.
    Zero,
    Exact {
        #[serde(with = "rational_text")]
        value: Rational,
    },
    Mc {
        mean: f64,
        stderr: f64,
        samples: u64,
    },
}

mod rational_text {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        crate::algebra::rational::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

impl WeightResult {
    pub fn mode(&self) -> &'static str {
        match self {
            WeightResult::Zero => "zero",
            WeightResult::Exact { .. } => "exact",
            WeightResult::Mc { .. } => "mc",
        }
    }

    /// Exact value, including zero.
    pub fn exact(&self) -> Option<Rational> {
        match self {
            WeightResult::Zero => Some(Rational::zero()),
            WeightResult::Exact { value } => Some(value.clone()),
            WeightResult::Mc { .. } => None,
        }
    }

    pub fn value_f64(&self) -> f64 {
        match self {
            WeightResult::Zero => 0.0,
            WeightResult::Exact { value } => to_f64(value),
            WeightResult::Mc { mean, .. } => *mean,
        }
    }

    pub fn stderr(&self) -> f64 {
        match self {
            WeightResult::Mc { stderr, .. } => *stderr,
            _ => 0.0,
        }
    }

    /// `"p/q"` for exact values, `"mean±stderr"` otherwise.
    pub fn render(&self) -> String {
        match self {
            WeightResult::Zero => "0/1".to_string(),
            WeightResult::Exact { value } => format_rational(value),
            WeightResult::Mc { mean, stderr, .. } => format!("{mean}±{stderr}"),
        }
    }
}

pub fn weight_exact(graph: &GnmGraph) -> Result<WeightResult> {
    let lin = log_linearize(graph);
    if !lin.is_spanning_tree {
        return Ok(WeightResult::Zero);
    }
    let oc = ordering_constraints(&lin)?;
    if !oc.all_pairwise {
        return Err(Error::NonPairwise);
    }
    let relations: Vec<(usize, usize)> = oc.constraints.iter().filter_map(Constraint::as_pair).collect();
    let e = lin.edges.len();
    let count = count_linear_extensions(e, &relations);
    let value = Rational::from_integer(count.into()) / factorial(e);
    let value = if lin.orientation_sign < 0 { -value } else { value };
    Ok(WeightResult::Exact { value })
}

const CHUNK: u64 = 1 << 16;

/// Stable 64-bit key of a graph, used to give each graph its own random streams.
pub fn graph_key(graph: &Graph) -> u64 {
    let mut h = splitmix(0x5eed ^ graph.n() as u64);
    h = splitmix(h ^ graph.m() as u64);
    for e in graph.edges() {
        h = splitmix(h ^ ((e.source as u64) << 32 | e.target.index as u64));
    }
    h
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Monte Carlo estimate. Samples are split into fixed chunks, each drawn from
/// its own ChaCha stream keyed by `(seed, graph, chunk)`, so the estimate does
/// not depend on how chunks are scheduled across threads.
pub fn weight_mc(graph: &GnmGraph, bump: BumpFunction, samples: u64, seed: u64) -> WeightResult {
    let lin = log_linearize(graph);
    if !lin.is_spanning_tree {
        return WeightResult::Zero;
    }
    let oc = ordering_constraints(&lin).expect("spanning tree");
    let e = lin.edges.len();
    let stream_seed = splitmix(seed ^ graph_key(graph));
    let sampler = bump.sampler();
    let chunks = samples.div_ceil(CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(stream_seed);
            rng.set_stream(c);
            let len = CHUNK.min(samples - c * CHUNK);
            let mut s = vec![0.0; e];
            let mut hits = 0u64;
            for _ in 0..len {
                for x in s.iter_mut() {
                    *x = BumpFunction::sample(&sampler, &mut rng);
                }
                if oc.constraints.iter().all(|k| k.holds(&s)) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let n = samples as f64;
    let p = hits as f64 / n;
    let var = if samples > 1 {
        (hits as f64 - hits as f64 * p) / (n - 1.0)
    } else {
        0.0
    };
    let sign = lin.orientation_sign as f64;
    WeightResult::Mc {
        mean: sign * p,
        stderr: (var.max(0.0) / n).sqrt(),
        samples,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightMode {
    #[default]
    ExactPreferred,
    McOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightConfig {
    pub mode: WeightMode,
    pub bump: BumpFunction,
    pub samples: u64,
    pub seed: u64,
}

impl Default for WeightConfig {
    fn default() -> Self {
        WeightConfig {
            mode: WeightMode::ExactPreferred,
            bump: BumpFunction::QuarticKernel,
            samples: 1_000_000,
            seed: 0,
        }
    }
}

/// Zero for non-trees, exact when all constraints are pairwise (unless
/// `McOnly`), Monte Carlo otherwise.
pub fn weight(graph: &GnmGraph, cfg: &WeightConfig) -> WeightResult {
    if cfg.mode == WeightMode::ExactPreferred {
        if let Ok(w) = weight_exact(graph) {
            return w;
        }
    }
    weight_mc(graph, cfg.bump, cfg.samples, cfg.seed)
}

/// Memoized [`weight`] for a fixed configuration.
#[derive(Debug, Default)]
pub struct WeightCache {
    cfg: WeightConfig,
    table: RwLock<HashMap<Graph, WeightResult>>,
}

impl WeightCache {
    pub fn new(cfg: WeightConfig) -> Self {
        WeightCache {
            cfg,
            table: RwLock::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &WeightConfig {
        &self.cfg
    }

    pub fn get(&self, graph: &GnmGraph) -> WeightResult {
        if let Some(w) = self.table.read().unwrap().get(graph.graph()) {
            return w.clone();
        }
        let w = weight(graph, &self.cfg);
        self.table.write().unwrap().insert(graph.graph().clone(), w.clone());
        w
    }

    /// Every weight computed so far, sorted by graph.
    pub fn entries(&self) -> Vec<(Graph, WeightResult)> {
        let mut out: Vec<_> = self
            .table
            .read()
            .unwrap()
            .iter()
            .map(|(g, w)| (g.clone(), w.clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// One line of a weight table export.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightRow {
    pub graph_id: usize,
    pub n: usize,
    pub m: usize,
    pub edges: String,
    pub mode: String,
    pub value: String,
    pub mean: f64,
    pub stderr: f64,
    pub phi: String,
    pub samples: u64,
    pub seed: u64,
}

pub fn weight_table(graphs: &[GnmGraph], cfg: &WeightConfig) -> Vec<WeightRow> {
    graphs
        .par_iter()
        .enumerate()
        .map(|(id, g)| {
            let w = weight(g, cfg);
            WeightRow {
                graph_id: id,
                n: g.n(),
                m: g.m(),
                edges: g
                    .pairs()
                    .iter()
                    .map(|(i, j)| format!("{i}-{j}"))
                    .collect::<Vec<_>>()
                    .join(" "),
                mode: w.mode().to_string(),
                value: w.render(),
                mean: w.value_f64(),
                stderr: w.stderr(),
                phi: cfg.bump.id().to_string(),
                samples: cfg.samples,
                seed: cfg.seed,
            }
        })
        .collect()
}

/// `|value| · (n + m - 1)!` is an integer for exact weights.
pub fn denominator_divides_factorial(value: &Rational, edges: usize) -> bool {
    (value.abs() * factorial(edges)).is_integer()
}
