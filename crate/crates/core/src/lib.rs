//! Exact crossing counting, crossing-maximizing layouts and untangling for
//! straight-line drawings of graphs, plus a puzzle file format built on top.
//!
//! Everything is exact integer (or rational) arithmetic; no floating point is
//! involved in any count, probability or predicate.

pub mod bounds;
pub mod drawing;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod obfuscate;
pub mod puzzle;
pub mod untangle;

pub use bounds::{bounds_report, BoundSource, BoundsReport};
pub use drawing::{CrossingReport, Drawing, DrawingError, Violation};
pub use geometry::{Point, Segment, COORD_CAP};
pub use graph::{DegreeStats, Edge, Family, Graph, GraphError};
pub use obfuscate::{ObfuscateError, ObfuscateOptions, PartialAssignment, Rational};
pub use puzzle::{Puzzle, PuzzleError, PuzzleMeta, SolutionAttempt, Verdict, VertexPosition};
pub use untangle::{UntangleError, UntangleMethod, UntangleResult};
