//! Oriented graphs with type-1 (`p`) and type-2 (`q`) vertices, the
//! admissible families `G(n, m)` and the operators `U_Γ`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{MultiIndex, PolyDiffOp, Polynomial, Polyvector, VarIndex};
use crate::combinatorics::{combinations, sort_sign};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VertexKind {
    /// First type, carries a polyvector.
    #[serde(rename = "p")]
    P,
    /// Second type, carries a function argument.
    #[serde(rename = "q")]
    Q,
}

/// 1-based vertex label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub kind: VertexKind,
    pub index: usize,
}

impl Vertex {
    pub fn p(index: usize) -> Self {
        Vertex {
            kind: VertexKind::P,
            index,
        }
    }

    pub fn q(index: usize) -> Self {
        Vertex {
            kind: VertexKind::Q,
            index,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VertexKind::P => write!(f, "{}", self.index),
            VertexKind::Q => write!(f, "{}̄", self.index),
        }
    }
}

/// Edge `source → target`; `source` is a 1-based type-1 label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: Vertex,
}

/// `stars[i]` is the ordered list of targets of the edges leaving type-1
/// vertex `i+1`; the order is the edge labeling `e_i^1, …, e_i^{k_i}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    m: usize,
    stars: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Checks shape and label ranges only; loops are reported by [`Graph::validate`].
    pub fn new(n: usize, m: usize, stars: Vec<Vec<Vertex>>) -> Result<Self> {
        let g = Graph { n, m, stars };
        g.check_shape()?;
        Ok(g)
    }

    fn check_shape(&self) -> Result<()> {
        if self.stars.len() != self.n {
            return Err(Error::InvalidGraph(format!(
                "{} stars for {} type-1 vertices",
                self.stars.len(),
                self.n
            )));
        }
        for t in self.stars.iter().flatten() {
            let bound = match t.kind {
                VertexKind::P => self.n,
                VertexKind::Q => self.m,
            };
            if t.index == 0 || t.index > bound {
                return Err(Error::InvalidGraph(format!("target {t:?} out of range")));
            }
        }
        Ok(())
    }

    /// Bipartite graph from `(source, q-target)` pairs, grouped per source in the given order.
    pub fn bipartite(n: usize, m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut stars = vec![Vec::new(); n];
        for &(i, j) in edges {
            if i == 0 || i > n {
                return Err(Error::InvalidGraph(format!("source {i} out of range")));
            }
            stars[i - 1].push(Vertex::q(j));
        }
        Graph::new(n, m, stars)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let g: Graph = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        g.check_shape()?;
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn stars(&self) -> &[Vec<Vertex>] {
        &self.stars
    }

    pub fn star_sizes(&self) -> Vec<usize> {
        self.stars.iter().map(Vec::len).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.stars.iter().map(Vec::len).sum()
    }

    /// Edges ordered by source, then position within the star.
    pub fn edges(&self) -> Vec<Edge> {
        self.stars
            .iter()
            .enumerate()
            .flat_map(|(i, star)| star.iter().map(move |&target| Edge { source: i + 1, target }))
            .collect()
    }

    /// Reorders star `vertex` (1-based) so that new position `k` holds old position `perm[k]`.
    pub fn permute_star(&self, vertex: usize, perm: &[usize]) -> Graph {
        let mut g = self.clone();
        let old = &self.stars[vertex - 1];
        assert_eq!(perm.len(), old.len());
        g.stars[vertex - 1] = perm.iter().map(|&p| old[p]).collect();
        g
    }

    /// Same graph with every star sorted by target, plus the parity of the
    /// edge permutation that was applied (0 if a star has repeated targets).
    pub fn canonical(&self) -> (Graph, i8) {
        let mut g = self.clone();
        let mut sign = 1i8;
        for star in &mut g.stars {
            sign *= sort_sign(star).unwrap_or(0);
            star.sort();
        }
        (g, sign)
    }

    pub fn validate(&self) -> Diagnostics {
        let loops = self
            .edges()
            .into_iter()
            .filter(|e| e.target == Vertex::p(e.source))
            .map(|e| e.source)
            .collect();
        let mut seen = BTreeMap::new();
        for e in self.edges() {
            *seen.entry(e).or_insert(0usize) += 1;
        }
        let parallel_edges = seen
            .into_iter()
            .filter(|&(_, c)| c > 1)
            .map(|(e, _)| (e.source, e.target))
            .collect();
        let edges = self.edge_count();
        let base = (self.n + self.m) as isize - 1;
        Diagnostics {
            loops,
            parallel_edges,
            star_sizes: self.star_sizes(),
            edge_count: edges,
            excess: edges as isize - base,
            all_targets_type2: self.edges().iter().all(|e| e.target.kind == VertexKind::Q),
        }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{})", self.n, self.m)?;
        for (i, star) in self.stars.iter().enumerate() {
            write!(f, " {}→[", i + 1)?;
            for (k, t) in star.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{t}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    /// Sources of edges `i → i`.
    pub loops: Vec<usize>,
    pub parallel_edges: Vec<(usize, Vertex)>,
    pub star_sizes: Vec<usize>,
    pub edge_count: usize,
    /// `l` in `#edges = n + m - 1 + l`.
    pub excess: isize,
    pub all_targets_type2: bool,
}

impl Diagnostics {
    pub fn is_admissible(&self) -> bool {
        self.loops.is_empty() && self.parallel_edges.is_empty() && self.excess == 0 && self.all_targets_type2
    }
}

/// A member of `G(n, m)`: `n + m - 1` edges, all of type `p → q`, no parallel pairs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GnmGraph(Graph);

impl GnmGraph {
    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }

    /// Accepts graphs with parallel edges; their weight is zero.
    pub fn allow_parallel(g: Graph) -> Result<Self> {
        let d = g.validate();
        if d.excess != 0 || !d.all_targets_type2 || g.n == 0 {
            return Err(Error::InvalidGraph(format!("{g} is not in G(n,m)")));
        }
        Ok(GnmGraph(g))
    }

    pub fn has_parallel_edges(&self) -> bool {
        !self.0.validate().parallel_edges.is_empty()
    }

    /// Bipartite adjacency as `(source, target)` index pairs, 1-based.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.0.edges().iter().map(|e| (e.source, e.target.index)).collect()
    }
}

impl TryFrom<Graph> for GnmGraph {
    type Error = Error;

    fn try_from(g: Graph) -> Result<Self> {
        if !g.validate().is_admissible() || g.n == 0 {
            return Err(Error::InvalidGraph(format!("{g} is not in G(n,m)")));
        }
        Ok(GnmGraph(g))
    }
}

impl std::ops::Deref for GnmGraph {
    type Target = Graph;
    fn deref(&self) -> &Graph {
        &self.0
    }
}

impl fmt::Display for GnmGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Also emit edge multisets with repeated `(i, j)` pairs.
    pub include_parallel: bool,
}

/// All of `G(n, m)` with stars sorted by target, in lexicographic order of
/// the edge subsets of `{1..n} × {1̄..m̄}`.
pub fn enumerate_gnm(n: usize, m: usize) -> Result<Vec<GnmGraph>> {
    enumerate_gnm_with(n, m, EnumerateOptions::default())
}

pub fn enumerate_gnm_with(n: usize, m: usize, opts: EnumerateOptions) -> Result<Vec<GnmGraph>> {
    if n == 0 {
        return Err(Error::NoSources);
    }
    let all: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=m).map(move |j| (i, j))).collect();
    let e = n + m - 1;
    let picks: Vec<Vec<usize>> = if opts.include_parallel {
        // multisets of size e from all.len() types, via subsets of a stars-and-bars layout
        combinations(all.len() + e - 1, e)
            .into_iter()
            .map(|c| c.iter().enumerate().map(|(k, &x)| x - k).collect())
            .filter(|c: &Vec<usize>| c.iter().all(|&x| x < all.len()))
            .collect()
    } else {
        combinations(all.len(), e)
    };
    Ok(picks
        .into_iter()
        .map(|pick| {
            let edges: Vec<(usize, usize)> = pick.iter().map(|&k| all[k]).collect();
            GnmGraph(Graph::bipartite(n, m, &edges).expect("in range"))
        })
        .collect())
}

/// Graphs of `G(n, m)` whose star sizes equal `degrees`, with `m` forced by
/// `Σ degrees = n + m - 1`. Empty when that `m` would be negative.
pub fn gnm_with_star_sizes(degrees: &[usize]) -> Vec<GnmGraph> {
    let n = degrees.len();
    let total: usize = degrees.iter().sum();
    if n == 0 || total + 1 < n {
        return Vec::new();
    }
    let m = total + 1 - n;
    let mut acc: Vec<Vec<Vec<Vertex>>> = vec![Vec::new()];
    for &k in degrees {
        let choices = combinations(m, k);
        let mut next = Vec::with_capacity(acc.len() * choices.len());
        for prefix in &acc {
            for c in &choices {
                let mut stars = prefix.clone();
                stars.push(c.iter().map(|&j| Vertex::q(j + 1)).collect());
                next.push(stars);
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|stars| GnmGraph(Graph::new(n, m, stars).expect("in range")))
        .collect()
}

/// The operator `U_Γ(γ_1 ⊗ … ⊗ γ_n)` of arity `m`.
///
/// Index assignments range over the tuples where every coefficient
/// `⟨γ_i, dx^{I(e_i^1)} ⊗ …⟩` is nonzero; all other assignments vanish.
pub fn u_gamma(graph: &Graph, gammas: &[Polyvector]) -> Result<PolyDiffOp> {
    if gammas.len() != graph.n {
        return Err(Error::VertexCountMismatch {
            expected: graph.n,
            got: gammas.len(),
        });
    }
    for (i, (star, g)) in graph.stars.iter().zip(gammas).enumerate() {
        if star.len() != g.degree() {
            return Err(Error::StarDegreeMismatch {
                vertex: i + 1,
                star: star.len(),
                degree: g.degree(),
            });
        }
    }
    let diag = graph.validate();
    if !diag.loops.is_empty() {
        return Err(Error::InvalidGraph(format!("loops at {:?}", diag.loops)));
    }

    let candidates: Vec<Vec<(Vec<VarIndex>, Polynomial)>> = gammas.iter().map(Polyvector::nonzero_tuples).collect();
    let mut map: BTreeMap<Vec<MultiIndex>, Polynomial> = BTreeMap::new();
    let mut choice = vec![0usize; graph.n];
    if candidates.iter().any(Vec::is_empty) {
        return Ok(PolyDiffOp::zero(graph.m));
    }
    loop {
        let mut on_p = vec![MultiIndex::one(); graph.n];
        let mut on_q = vec![MultiIndex::one(); graph.m];
        for (i, star) in graph.stars.iter().enumerate() {
            let tuple = &candidates[i][choice[i]].0;
            for (t, &v) in star.iter().zip(tuple) {
                let slot = match t.kind {
                    VertexKind::P => &mut on_p[t.index - 1],
                    VertexKind::Q => &mut on_q[t.index - 1],
                };
                slot.add_exponent(v, 1);
            }
        }
        let mut coeff = Polynomial::one();
        for i in 0..graph.n {
            let psi = candidates[i][choice[i]].1.partial_multi(&on_p[i]);
            coeff = &coeff * &psi;
            if coeff.is_zero() {
                break;
            }
        }
        if !coeff.is_zero() {
            *map.entry(on_q).or_default() += &coeff;
        }

        // odometer over the per-vertex candidate lists
        let mut pos = 0;
        loop {
            if pos == graph.n {
                return Ok(PolyDiffOp::from_map(graph.m, map));
            }
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}
