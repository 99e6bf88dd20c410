//! Puzzle documents: a start drawing plus metadata, as canonical JSON.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::bounds_report;
use crate::drawing::{Drawing, DrawingError};
use crate::generators::generate;
use crate::geometry::Point;
use crate::graph::{Family, Graph, GraphError};
use crate::obfuscate::{family_optimal_drawing, obfuscate, ObfuscateError, ObfuscateOptions};

pub const FORMAT: &str = "planarity-puzzle/1";

/// Coordinates at or below this magnitude are exact in IEEE doubles with
/// room for the products a browser client computes.
pub const UI_COORD_CAP: i64 = 1 << 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PuzzleError {
    #[error("malformed input at {at}: {message}")]
    Malformed { at: String, message: String },
    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),
    #[error("unknown puzzle {0:?}")]
    UnknownPuzzle(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Obfuscate(#[from] ObfuscateError),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl From<DrawingError> for PuzzleError {
    fn from(e: DrawingError) -> Self {
        PuzzleError::InvalidDrawing(e.to_string())
    }
}

fn malformed(at: impl Into<String>, message: impl Into<String>) -> PuzzleError {
    PuzzleError::Malformed { at: at.into(), message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PuzzleMeta {
    pub epsilon: u64,
    pub crossings: u64,
    pub nu: Option<usize>,
    pub shift_lower: usize,
    pub shift_upper: usize,
    /// Generator tag such as `cycle:9`, or `custom`.
    pub family: String,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexPosition {
    pub id: usize,
    pub x: i64,
    pub y: i64,
}

impl VertexPosition {
    fn list(points: &[Point]) -> Vec<VertexPosition> {
        points.iter().enumerate().map(|(id, p)| VertexPosition { id, x: p.x, y: p.y }).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Puzzle {
    pub id: String,
    pub name: String,
    /// The start drawing; its graph carries the reference layout if any.
    pub drawing: Drawing,
    pub meta: PuzzleMeta,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    format: String,
    name: String,
    vertices: Vec<VertexPosition>,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reference_layout: Option<Vec<VertexPosition>>,
    meta: PuzzleMeta,
}

impl Puzzle {
    /// Wraps a start drawing, computing all metadata from it.
    pub fn from_drawing(id: impl Into<String>, drawing: Drawing, seed: u64) -> Result<Puzzle, PuzzleError> {
        let violations = drawing.validate();
        if let Some(v) = violations.first() {
            return Err(PuzzleError::InvalidDrawing(v.to_string()));
        }
        let g = drawing.graph();
        let crossings = drawing.count_crossings()?.count;
        let bounds = bounds_report(g);
        let n = g.vertex_count() as u64;
        if g.is_certified_planar() && crossings >= 3 * n * n {
            return Err(PuzzleError::InvariantViolation(format!(
                "planar drawing with {crossings} crossings reaches 3n^2 = {}",
                3 * n * n
            )));
        }
        if crossings > bounds.epsilon || bounds.shift_lower > bounds.shift_upper {
            return Err(PuzzleError::InvariantViolation(format!(
                "inconsistent metadata: crossings {crossings}, epsilon {}, shift bounds {}..{}",
                bounds.epsilon, bounds.shift_lower, bounds.shift_upper
            )));
        }
        let id = id.into();
        let meta = PuzzleMeta {
            epsilon: bounds.epsilon,
            crossings,
            nu: bounds.nu,
            shift_lower: bounds.shift_lower,
            shift_upper: bounds.shift_upper,
            family: g.family().map_or_else(|| "custom".to_string(), |f| f.to_string()),
            seed,
        };
        let name = g.name().map_or_else(|| id.clone(), str::to_string);
        Ok(Puzzle { id, name, drawing, meta })
    }

    pub fn graph(&self) -> &Graph {
        self.drawing.graph()
    }

    /// Whether every coordinate, including the reference layout, is small
    /// enough for exact client-side arithmetic.
    pub fn fits_ui_cap(&self) -> bool {
        let layout = self.graph().reference_layout().unwrap_or(&[]);
        self.drawing.positions().iter().chain(layout).all(|p| p.within(UI_COORD_CAP))
    }
}

/// Pretty JSON with a trailing newline; identical puzzles give identical bytes.
pub fn encode_puzzle(p: &Puzzle) -> Vec<u8> {
    let g = p.graph();
    let doc = Document {
        format: FORMAT.to_string(),
        name: p.name.clone(),
        vertices: VertexPosition::list(p.drawing.positions()),
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        reference_layout: g.reference_layout().map(VertexPosition::list),
        meta: p.meta.clone(),
    };
    let mut out = serde_json::to_vec_pretty(&doc).expect("puzzle documents always serialize");
    out.push(b'\n');
    out
}

fn points_from(list: &[VertexPosition], field: &str) -> Result<Vec<Point>, PuzzleError> {
    list.iter()
        .enumerate()
        .map(|(i, v)| {
            if v.id != i {
                return Err(malformed(format!("{field}[{i}].id"), format!("expected id {i}, found {}", v.id)));
            }
            let p = Point::new(v.x, v.y);
            if !p.within_cap() {
                let axis = if Point::new(v.x, 0).within_cap() { "y" } else { "x" };
                return Err(malformed(format!("{field}[{i}].{axis}"), "coordinate beyond cap"));
            }
            Ok(p)
        })
        .collect()
}

/// Parses and checks a puzzle document. The id is the document's name.
pub fn decode_puzzle(bytes: &[u8]) -> Result<Puzzle, PuzzleError> {
    let doc: Document = serde_json::from_slice(bytes)
        .map_err(|e| malformed(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    if doc.format != FORMAT {
        return Err(malformed("format", format!("expected {FORMAT:?}, found {:?}", doc.format)));
    }
    let positions = points_from(&doc.vertices, "vertices")?;
    let n = positions.len();
    for (k, &[u, v]) in doc.edges.iter().enumerate() {
        if u >= v || v >= n {
            return Err(malformed(format!("edges[{k}]"), format!("edge [{u}, {v}] must satisfy u < v < {n}")));
        }
        if k > 0 && doc.edges[k - 1] >= [u, v] {
            return Err(malformed(format!("edges[{k}]"), "edges must be strictly increasing"));
        }
    }
    let mut graph = Graph::new(n, doc.edges.iter().map(|&[u, v]| (u, v)))?;
    if let Ok(family) = doc.meta.family.parse::<Family>() {
        if generate(family).is_ok_and(|g| g.edges() == graph.edges() && g.vertex_count() == n) {
            graph = graph.with_family(family);
        }
    }
    graph = graph.with_name(doc.name.clone());
    if let Some(layout) = &doc.reference_layout {
        let layout = points_from(layout, "reference_layout")?;
        if layout.len() != n {
            return Err(malformed("reference_layout", format!("expected {n} positions, found {}", layout.len())));
        }
        graph = graph.with_reference_layout(layout).map_err(|e| malformed("reference_layout", e.to_string()))?;
    }
    let drawing = Drawing::new(graph, positions).map_err(|e| malformed("vertices", e.to_string()))?;
    if let Some(v) = drawing.validate().first() {
        return Err(malformed("vertices", v.to_string()));
    }
    let crossings = drawing.count_crossings().map_err(|e| malformed("vertices", e.to_string()))?.count;
    if doc.meta.crossings != crossings {
        return Err(malformed("meta.crossings", format!("drawing has {crossings} crossings")));
    }
    let epsilon = drawing.graph().epsilon();
    if doc.meta.epsilon != epsilon {
        return Err(malformed("meta.epsilon", format!("graph has epsilon {epsilon}")));
    }
    if doc.meta.shift_lower > doc.meta.shift_upper {
        return Err(malformed("meta.shift_lower", "exceeds shift_upper"));
    }
    Ok(Puzzle { id: doc.name.clone(), name: doc.name, drawing, meta: doc.meta })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionAttempt {
    pub puzzle_id: String,
    pub positions: Vec<VertexPosition>,
}

impl SolutionAttempt {
    pub fn from_drawing(puzzle_id: impl Into<String>, d: &Drawing) -> Self {
        SolutionAttempt { puzzle_id: puzzle_id.into(), positions: VertexPosition::list(d.positions()) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub crossings: u64,
    pub crossing_free: bool,
    pub shifts_used: usize,
}

/// Counts crossings of the attempted positions and the moves relative to the
/// start drawing.
pub fn verify_solution(p: &Puzzle, s: &SolutionAttempt) -> Result<Verdict, PuzzleError> {
    if s.puzzle_id != p.id {
        return Err(PuzzleError::UnknownPuzzle(s.puzzle_id.clone()));
    }
    verify_positions(p, &s.positions)
}

/// Like [`verify_solution`] for a puzzle already looked up by id. Positions
/// may come in any order but must cover every vertex once.
pub fn verify_positions(p: &Puzzle, positions: &[VertexPosition]) -> Result<Verdict, PuzzleError> {
    let n = p.graph().vertex_count();
    let mut placed: Vec<Option<Point>> = vec![None; n];
    for (i, v) in positions.iter().enumerate() {
        let slot = placed
            .get_mut(v.id)
            .ok_or_else(|| malformed(format!("positions[{i}].id"), format!("no vertex {}", v.id)))?;
        if slot.is_some() {
            return Err(malformed(format!("positions[{i}].id"), format!("vertex {} given twice", v.id)));
        }
        let point = Point::new(v.x, v.y);
        if !point.within_cap() {
            return Err(malformed(format!("positions[{i}]"), "coordinate beyond cap"));
        }
        *slot = Some(point);
    }
    let points: Vec<Point> = placed
        .into_iter()
        .enumerate()
        .map(|(v, q)| q.ok_or_else(|| malformed("positions", format!("vertex {v} missing"))))
        .collect::<Result<_, _>>()?;
    let attempt = p.drawing.with_positions(points)?;
    let crossings = attempt.count_crossings()?.count;
    Ok(Verdict {
        crossings,
        crossing_free: crossings == 0,
        shifts_used: p.drawing.moved_vertices(attempt.positions()).len(),
    })
}

/// Generates `family`, draws it as badly as known (a family-specific drawing
/// when one exists, otherwise greedy placement plus local search seeded by
/// `seed`) and wraps it with metadata.
pub fn run_pipeline(family: Family, seed: u64) -> Result<Puzzle, PuzzleError> {
    let g = generate(family)?;
    let drawing = match family_optimal_drawing(&g) {
        Ok(d) => d,
        Err(ObfuscateError::NotApplicable) => obfuscate(&g, &ObfuscateOptions { seed, ..Default::default() })?,
        Err(e) => return Err(e.into()),
    };
    let id = g.name().unwrap_or("puzzle").to_string();
    Puzzle::from_drawing(id, drawing, seed)
}
