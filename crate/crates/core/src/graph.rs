//! Simple undirected graphs with an optional crossing-free reference layout.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::drawing::Drawing;
use crate::geometry::Point;

/// Largest vertex count handled by the exact matching search.
pub const MATCHING_CAP: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} refers to a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("graph has {n} vertices, exact search is capped at {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("reference layout rejected: {0}")]
    InvalidLayout(String),
}

/// A vertex pair `(u, v)` with `u < v`.
pub type Edge = (usize, usize);

/// Generator family a graph came from, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Matching(usize),
    StarForest(usize, usize),
    SubdividedTriangle(usize),
    StackedTriangulation(usize),
}

impl Family {
    /// Short family keyword used on the command line.
    pub fn keyword(&self) -> &'static str {
        match self {
            Family::Cycle(_) => "cycle",
            Family::Complete(_) => "complete",
            Family::CompleteBipartite(..) => "bipartite",
            Family::Matching(_) => "matching",
            Family::StarForest(..) => "starforest",
            Family::SubdividedTriangle(_) => "gs",
            Family::StackedTriangulation(_) => "triangulation",
        }
    }

    /// Builds a family from its keyword and comma separated parameters.
    pub fn parse(keyword: &str, params: &str) -> Result<Self, GraphError> {
        let values: Vec<usize> = if params.trim().is_empty() {
            Vec::new()
        } else {
            params
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| GraphError::InvalidParameter(format!("bad parameter {p:?}")))
                })
                .collect::<Result<_, _>>()?
        };
        let arity = |k: usize| -> Result<(), GraphError> {
            if values.len() == k {
                Ok(())
            } else {
                Err(GraphError::InvalidParameter(format!(
                    "family {keyword} takes {k} parameter(s), got {}",
                    values.len()
                )))
            }
        };
        match keyword {
            "cycle" => arity(1).map(|_| Family::Cycle(values[0])),
            "complete" => arity(1).map(|_| Family::Complete(values[0])),
            "bipartite" => arity(2).map(|_| Family::CompleteBipartite(values[0], values[1])),
            "matching" => arity(1).map(|_| Family::Matching(values[0])),
            "starforest" => arity(2).map(|_| Family::StarForest(values[0], values[1])),
            "gs" => arity(1).map(|_| Family::SubdividedTriangle(values[0])),
            "triangulation" => arity(1).map(|_| Family::StackedTriangulation(values[0])),
            other => Err(GraphError::InvalidParameter(format!("unknown family {other:?}"))),
        }
    }

    fn params(&self) -> Vec<usize> {
        match *self {
            Family::Cycle(n)
            | Family::Complete(n)
            | Family::Matching(n)
            | Family::SubdividedTriangle(n)
            | Family::StackedTriangulation(n) => vec![n],
            Family::CompleteBipartite(s, t) | Family::StarForest(s, t) => vec![s, t],
        }
    }

    /// Conventional name, e.g. `C_9`, `K_{3,4}`, `3K_{1,4}`.
    pub fn display_name(&self) -> String {
        match *self {
            Family::Cycle(n) => format!("C_{n}"),
            Family::Complete(n) => format!("K_{n}"),
            Family::CompleteBipartite(s, t) => format!("K_{{{s},{t}}}"),
            Family::Matching(m) => format!("{m}K_2"),
            Family::StarForest(k, s) => format!("{k}K_{{1,{s}}}"),
            Family::SubdividedTriangle(s) => format!("G_{s}"),
            Family::StackedTriangulation(n) => format!("T_{n}"),
        }
    }
}

/// Serialized as `keyword:p1,p2`, e.g. `bipartite:3,4`.
impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(|p| p.to_string()).collect();
        write!(f, "{}:{}", self.keyword(), params.join(","))
    }
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (keyword, params) = s
            .split_once(':')
            .ok_or_else(|| GraphError::InvalidParameter(format!("family tag {s:?} lacks ':'")))?;
        Family::parse(keyword, params)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    name: Option<String>,
    family: Option<Family>,
    reference_layout: Option<Vec<Point>>,
}

impl Graph {
    /// Builds a graph on vertices `0..n`. Edges are normalized to `u < v` and
    /// sorted lexicographically.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(Graph {
            n,
            edges: seen.into_iter().collect(),
            name: None,
            family: None,
            reference_layout: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub(crate) fn with_family(mut self, family: Family) -> Self {
        self.name = Some(family.display_name());
        self.family = Some(family);
        self
    }

    /// Attaches a reference layout after checking that it is a valid,
    /// crossing-free drawing of this graph.
    pub fn with_reference_layout(mut self, layout: Vec<Point>) -> Result<Self, GraphError> {
        let drawing = Drawing::new(self.clone(), layout.clone())
            .map_err(|e| GraphError::InvalidLayout(e.to_string()))?;
        let report = drawing
            .count_crossings()
            .map_err(|e| GraphError::InvalidLayout(e.to_string()))?;
        if report.count != 0 {
            return Err(GraphError::InvalidLayout(format!("{} crossing(s)", report.count)));
        }
        self.reference_layout = Some(layout);
        Ok(self)
    }

    pub fn without_reference_layout(mut self) -> Self {
        self.reference_layout = None;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn reference_layout(&self) -> Option<&[Point]> {
        self.reference_layout.as_deref()
    }

    /// Planarity is certified only by an attached crossing-free layout.
    pub fn is_certified_planar(&self) -> bool {
        self.reference_layout.is_some()
    }

    /// Recognizes the family tag only if the edge set matches the generator.
    pub(crate) fn verified_family(&self) -> Option<Family> {
        let family = self.family?;
        let generated = crate::generators::generate(family).ok()?;
        (generated.n == self.n && generated.edges == self.edges).then_some(family)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn edges_adjacent(a: Edge, b: Edge) -> bool {
        a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let degrees = self.degrees();
        DegreeStats {
            min_degree: degrees.iter().copied().min().unwrap_or(0),
            degree_square_sum: degrees.iter().map(|&d| (d * d) as u64).sum(),
            degrees,
        }
    }

    /// Number of unordered pairs of edges sharing no endpoint:
    /// `C(m, 2) - sum_v C(deg v, 2)`.
    pub fn epsilon(&self) -> u64 {
        let m = self.edges.len() as u64;
        let adjacent: u64 = self.degrees().iter().map(|&d| choose2(d as u64)).sum();
        choose2(m) - adjacent
    }

    /// Exact matching number by branch and bound.
    pub fn matching_number(&self) -> Result<usize, GraphError> {
        if self.n > MATCHING_CAP {
            return Err(GraphError::CapExceeded { n: self.n, cap: MATCHING_CAP });
        }
        let neighbours: Vec<u64> = self
            .adjacency()
            .iter()
            .map(|adj| adj.iter().fold(0u64, |mask, &w| mask | (1 << w)))
            .collect();
        let mut search = MatchingSearch { neighbours: &neighbours, best: 0 };
        let alive = (1u64 << self.n) - 1;
        search.run(alive, 0);
        Ok(search.best)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_without(&[])
    }

    /// `true` iff the graph has more than `k` vertices and stays connected
    /// after deleting any `k - 1` of them.
    pub fn is_k_connected(&self, k: usize) -> Result<bool, GraphError> {
        if !(1..=4).contains(&k) {
            return Err(GraphError::InvalidParameter(format!("k = {k} outside 1..=4")));
        }
        if self.n <= k {
            return Ok(false);
        }
        let mut removed = Vec::with_capacity(k - 1);
        Ok(self.all_removals_connected(k - 1, 0, &mut removed))
    }

    fn all_removals_connected(&self, left: usize, from: usize, removed: &mut Vec<usize>) -> bool {
        if left == 0 {
            return self.connected_without(removed);
        }
        for v in from..self.n {
            removed.push(v);
            let ok = self.all_removals_connected(left - 1, v + 1, removed);
            removed.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    fn connected_without(&self, removed: &[usize]) -> bool {
        let adj = self.adjacency();
        let mut gone = vec![false; self.n];
        for &v in removed {
            gone[v] = true;
        }
        let Some(start) = (0..self.n).find(|&v| !gone[v]) else {
            return false;
        };
        let mut seen = gone.clone();
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.n - removed.len()
    }
}

pub(crate) fn choose2(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub degrees: Vec<usize>,
    pub min_degree: usize,
    pub degree_square_sum: u64,
}

struct MatchingSearch<'a> {
    neighbours: &'a [u64],
    best: usize,
}

impl MatchingSearch<'_> {
    fn run(&mut self, mut alive: u64, matched: usize) {
        // Vertices without a live neighbour can never be matched.
        let mut candidates = 0u64;
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.neighbours[v] & alive != 0 {
                candidates |= 1 << v;
            }
        }
        alive = candidates;
        let bound = matched + alive.count_ones() as usize / 2;
        if bound <= self.best {
            return;
        }
        if alive == 0 {
            self.best = matched;
            return;
        }
        let v = alive.trailing_zeros() as usize;
        let without_v = alive & !(1 << v);
        let mut partners = self.neighbours[v] & without_v;
        while partners != 0 {
            let w = partners.trailing_zeros() as usize;
            partners &= partners - 1;
            self.run(without_v & !(1 << w), matched + 1);
        }
        self.run(without_v, matched);
    }
}
