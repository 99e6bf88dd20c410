//! Straight-line drawings and exact crossing counts.

use std::fmt;

use thiserror::Error;

use crate::geometry::{point_in_open_segment, properly_cross_unchecked, GeometryError, Point, Segment};
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrawingError {
    #[error("expected {expected} positions, got {got}")]
    PositionCount { expected: usize, got: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("invalid drawing: {}", summarize(.0))]
    Invalid(Vec<Violation>),
}

fn summarize(violations: &[Violation]) -> String {
    let shown: Vec<String> = violations.iter().take(3).map(|v| v.to_string()).collect();
    let more = violations.len().saturating_sub(3);
    if more > 0 {
        format!("{} (+{more} more)", shown.join("; "))
    } else {
        shown.join("; ")
    }
}

/// A breach of general position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicatePosition { u: usize, v: usize },
    VertexOnEdge { vertex: usize, edge: Edge },
    CollinearOverlap { first: Edge, second: Edge },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicatePosition { u, v } => {
                write!(f, "duplicate position: vertices {u} and {v}")
            }
            Violation::VertexOnEdge { vertex, edge } => {
                write!(f, "vertex on edge interior: vertex {vertex} on {}-{}", edge.0, edge.1)
            }
            Violation::CollinearOverlap { first, second } => write!(
                f,
                "collinear overlap: {}-{} and {}-{}",
                first.0, first.1, second.0, second.1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CrossingReport {
    pub count: u64,
    /// Unordered pairs of edge indices `(i, j)`, `i < j`, in lexicographic order.
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    graph: Graph,
    positions: Vec<Point>,
}

impl Drawing {
    /// Pairs a graph with one position per vertex. Only the coordinate cap
    /// is enforced here; general position is checked by [`Drawing::validate`].
    pub fn new(graph: Graph, positions: Vec<Point>) -> Result<Self, DrawingError> {
        if positions.len() != graph.vertex_count() {
            return Err(DrawingError::PositionCount {
                expected: graph.vertex_count(),
                got: positions.len(),
            });
        }
        for p in &positions {
            p.check_cap()?;
        }
        Ok(Drawing { graph, positions })
    }

    /// The drawing given by the graph's reference layout, if any.
    pub fn reference(graph: &Graph) -> Option<Drawing> {
        let layout = graph.reference_layout()?.to_vec();
        Some(Drawing { graph: graph.clone(), positions: layout })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn position(&self, v: usize) -> Point {
        self.positions[v]
    }

    pub fn into_parts(self) -> (Graph, Vec<Point>) {
        (self.graph, self.positions)
    }

    /// Same graph, new positions.
    pub fn with_positions(&self, positions: Vec<Point>) -> Result<Drawing, DrawingError> {
        Drawing::new(self.graph.clone(), positions)
    }

    pub fn segment(&self, edge: Edge) -> Segment {
        Segment::new(self.positions[edge.0], self.positions[edge.1])
    }

    /// Vertices placed differently in `other`.
    pub fn moved_vertices(&self, other: &[Point]) -> Vec<usize> {
        self.positions
            .iter()
            .zip(other)
            .enumerate()
            .filter_map(|(v, (a, b))| (a != b).then_some(v))
            .collect()
    }

    /// Every general-position violation; empty means the drawing is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = self.vertex_violations();
        let edges = self.graph.edges();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                if Graph::edges_adjacent(edges[i], edges[j])
                    || self.is_degenerate(edges[i])
                    || self.is_degenerate(edges[j])
                {
                    continue;
                }
                if properly_cross_unchecked(&self.segment(edges[i]), &self.segment(edges[j])).is_err() {
                    violations.push(Violation::CollinearOverlap { first: edges[i], second: edges[j] });
                }
            }
        }
        violations
    }

    fn is_degenerate(&self, (u, v): Edge) -> bool {
        self.positions[u] == self.positions[v]
    }

    fn vertex_violations(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        let mut order: Vec<usize> = (0..self.positions.len()).collect();
        order.sort_by_key(|&v| (self.positions[v], v));
        for w in order.windows(2) {
            if self.positions[w[0]] == self.positions[w[1]] {
                violations.push(Violation::DuplicatePosition { u: w[0], v: w[1] });
            }
        }
        for &edge in self.graph.edges() {
            if self.is_degenerate(edge) {
                continue;
            }
            let s = self.segment(edge);
            for (vertex, p) in self.positions.iter().enumerate() {
                if point_in_open_segment(*p, &s) {
                    violations.push(Violation::VertexOnEdge { vertex, edge });
                }
            }
        }
        violations
    }

    /// Exact crossing count by testing every pair of non-adjacent edges.
    pub fn count_crossings(&self) -> Result<CrossingReport, DrawingError> {
        let mut violations = self.vertex_violations();
        if !violations.is_empty() {
            return Err(DrawingError::Invalid(violations));
        }
        let edges = self.graph.edges();
        let segments: Vec<Segment> = edges.iter().map(|&e| self.segment(e)).collect();
        let mut report = CrossingReport::default();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                if Graph::edges_adjacent(edges[i], edges[j]) {
                    continue;
                }
                match properly_cross_unchecked(&segments[i], &segments[j]) {
                    Ok(true) => report.pairs.push((i, j)),
                    Ok(false) => {}
                    Err(_) => violations.push(Violation::CollinearOverlap { first: edges[i], second: edges[j] }),
                }
            }
        }
        if !violations.is_empty() {
            return Err(DrawingError::Invalid(violations));
        }
        report.count = report.pairs.len() as u64;
        Ok(report)
    }

    pub fn is_crossing_free(&self) -> Result<bool, DrawingError> {
        Ok(self.count_crossings()?.count == 0)
    }

    /// Crossings between the given edges and every other edge, each pair
    /// counted once. Assumes the drawing is valid.
    pub(crate) fn crossings_touching(&self, touched: &[bool]) -> u64 {
        crossings_touching_at(self.graph.edges(), &self.positions, touched)
    }
}

/// [`Drawing::crossings_touching`] for an arbitrary position vector.
pub(crate) fn crossings_touching_at(edges: &[Edge], positions: &[Point], touched: &[bool]) -> u64 {
    let segment = |(u, v): Edge| Segment::new(positions[u], positions[v]);
    let mut count = 0;
    for i in (0..edges.len()).filter(|&i| touched[i]) {
        let s = segment(edges[i]);
        for j in 0..edges.len() {
            if j == i || (touched[j] && j < i) || Graph::edges_adjacent(edges[i], edges[j]) {
                continue;
            }
            if let Ok(true) = properly_cross_unchecked(&s, &segment(edges[j])) {
                count += 1;
            }
        }
    }
    count
}
