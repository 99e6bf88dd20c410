//! Removing crossings by moving vertices.
//!
//! For drawings of a perfect matching the optimum is exact: edges that stay
//! put must be pairwise non-crossing, so at least `m - alpha` vertices move,
//! where `alpha` is the independence number of the segment intersection
//! graph. Shrinking every edge outside a maximum independent set towards one
//! of its endpoints achieves that many moves.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::drawing::{Drawing, DrawingError};
use crate::geometry::{apex_points, point_in_open_segment, properly_cross_unchecked, GeometryError, Point, Segment};
use crate::graph::Graph;

/// Largest intersection graph solved exactly.
pub const MIS_CAP: usize = 40;

/// How far (in lattice steps) the shrink search looks around an anchor.
const SHRINK_SEARCH_RADIUS: i64 = 48;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UntangleError {
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{nodes} segments exceed the exact independent set cap of {cap}")]
    CapExceeded { nodes: usize, cap: usize },
    #[error("wrong graph class: {0}")]
    WrongGraphClass(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("graph carries no reference layout")]
    NoReferenceLayout,
    #[error("no untangling method applies to this drawing")]
    NoMethodApplicable,
    #[error("no lattice point near edge {0}-{1} keeps the drawing in general position")]
    NoPlacement(usize, usize),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UntangleMethod {
    /// Pick a method from the shape of the graph.
    Auto,
    /// Shrink every edge outside a maximum independent set of segments.
    MisShrink,
    /// Move at most two vertices covering all edges to apex points.
    Apex,
    /// Jump to the stored crossing-free layout.
    Reference,
    /// The drawing was already crossing-free.
    Unchanged,
}

impl fmt::Display for UntangleMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UntangleMethod::Auto => "auto",
            UntangleMethod::MisShrink => "mis-shrink",
            UntangleMethod::Apex => "apex",
            UntangleMethod::Reference => "reference",
            UntangleMethod::Unchanged => "unchanged",
        })
    }
}

impl FromStr for UntangleMethod {
    type Err = UntangleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(UntangleMethod::Auto),
            "mis-shrink" => Ok(UntangleMethod::MisShrink),
            "apex" => Ok(UntangleMethod::Apex),
            "reference" => Ok(UntangleMethod::Reference),
            other => Err(UntangleError::PreconditionViolated(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UntangleResult {
    pub final_drawing: Drawing,
    /// Vertices whose position changed, ascending.
    pub moved: Vec<usize>,
    pub method: UntangleMethod,
    pub shifts: usize,
    /// `true` when `shifts` is known to be the minimum for this drawing.
    pub optimal: bool,
}

impl UntangleResult {
    fn new(start: &Drawing, final_drawing: Drawing, method: UntangleMethod, optimal: bool) -> Result<Self, UntangleError> {
        if !final_drawing.is_crossing_free()? {
            return Err(UntangleError::InvariantViolation(format!("{method} left crossings behind")));
        }
        let moved = start.moved_vertices(final_drawing.positions());
        Ok(UntangleResult { shifts: moved.len(), final_drawing, moved, method, optimal })
    }
}

/// Edges of a drawing as nodes, joined when the segments cross.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentIntersectionGraph {
    node_count: usize,
    adjacency: Vec<(usize, usize)>,
}

impl SegmentIntersectionGraph {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Crossing pairs of edge indices, lexicographic.
    pub fn adjacency(&self) -> &[(usize, usize)] {
        &self.adjacency
    }

    pub fn is_independent(&self, nodes: &[usize]) -> bool {
        let mut member = vec![false; self.node_count];
        for &v in nodes {
            if v >= self.node_count {
                return false;
            }
            member[v] = true;
        }
        !self.adjacency.iter().any(|&(a, b)| member[a] && member[b])
    }

    fn neighbour_masks(&self) -> Vec<u64> {
        let mut masks = vec![0u64; self.node_count];
        for &(a, b) in &self.adjacency {
            masks[a] |= 1 << b;
            masks[b] |= 1 << a;
        }
        masks
    }

    fn neighbour_lists(&self) -> Vec<Vec<usize>> {
        let mut lists = vec![Vec::new(); self.node_count];
        for &(a, b) in &self.adjacency {
            lists[a].push(b);
            lists[b].push(a);
        }
        lists
    }
}

pub fn build_intersection_graph(d: &Drawing) -> Result<SegmentIntersectionGraph, DrawingError> {
    let report = d.count_crossings()?;
    Ok(SegmentIntersectionGraph { node_count: d.graph().edge_count(), adjacency: report.pairs })
}

/// A maximum independent set, found by branch and bound.
pub fn max_independent_set(sg: &SegmentIntersectionGraph) -> Result<Vec<usize>, UntangleError> {
    if sg.node_count > MIS_CAP {
        return Err(UntangleError::CapExceeded { nodes: sg.node_count, cap: MIS_CAP });
    }
    let masks = sg.neighbour_masks();
    let all = (1u64 << sg.node_count) - 1;
    let mut best = 0u64;
    independent_search(&masks, all, 0, &mut best);
    Ok(bits(best))
}

fn bits(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

/// Number of cliques in a greedy clique cover of `candidates`; no
/// independent set can take more than one node per clique.
fn clique_cover_bound(masks: &[u64], mut candidates: u64) -> u32 {
    let mut cliques = 0;
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        let mut clique = 1u64 << v;
        let mut common = masks[v] & candidates;
        while common != 0 {
            let w = common.trailing_zeros() as usize;
            clique |= 1 << w;
            common &= masks[w];
        }
        candidates &= !clique;
        cliques += 1;
    }
    cliques
}

fn independent_search(masks: &[u64], candidates: u64, chosen: u64, best: &mut u64) {
    if candidates == 0 {
        if chosen.count_ones() > best.count_ones() {
            *best = chosen;
        }
        return;
    }
    if chosen.count_ones() + candidates.count_ones() <= best.count_ones()
        || chosen.count_ones() + clique_cover_bound(masks, candidates) <= best.count_ones()
    {
        return;
    }
    // A node with at most one live neighbour belongs to some maximum set.
    let mut rest = candidates;
    let mut pivot = (0, 0);
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let degree = (masks[v] & candidates).count_ones();
        if degree <= 1 {
            independent_search(masks, candidates & !masks[v] & !(1 << v), chosen | 1 << v, best);
            return;
        }
        if degree > pivot.1 {
            pivot = (v, degree);
        }
    }
    let v = pivot.0;
    independent_search(masks, candidates & !masks[v] & !(1 << v), chosen | 1 << v, best);
    independent_search(masks, candidates & !(1 << v), chosen, best);
}

/// Minimum-degree greedy independent set; a lower bound on the optimum.
pub fn greedy_independent_set(sg: &SegmentIntersectionGraph) -> Vec<usize> {
    let neighbours = sg.neighbour_lists();
    let mut alive = vec![true; sg.node_count];
    let mut chosen = Vec::new();
    loop {
        let pick = (0..sg.node_count)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (neighbours[v].iter().filter(|&&w| alive[w]).count(), v));
        let Some(v) = pick else { break };
        chosen.push(v);
        alive[v] = false;
        for &w in &neighbours[v] {
            alive[w] = false;
        }
    }
    chosen.sort_unstable();
    chosen
}

fn require_matching(g: &Graph) -> Result<(), UntangleError> {
    if g.degrees().iter().all(|&d| d == 1) {
        Ok(())
    } else {
        Err(UntangleError::WrongGraphClass("every vertex must have degree 1".into()))
    }
}

/// Exact number of moves needed to untangle a drawing of a perfect matching.
pub fn matching_shift_complexity(d: &Drawing) -> Result<usize, UntangleError> {
    require_matching(d.graph())?;
    let sg = build_intersection_graph(d)?;
    Ok(sg.node_count() - max_independent_set(&sg)?.len())
}

/// Keeps the edges in `keep` and pulls one endpoint of every other edge
/// next to its partner, closest lattice point first (along the edge, then
/// outwards), accepting the first spot that keeps general position and
/// crosses no edge already settled.
pub fn shrink_untangle(d: &Drawing, keep: &[usize]) -> Result<UntangleResult, UntangleError> {
    require_matching(d.graph())?;
    let sg = build_intersection_graph(d)?;
    if !sg.is_independent(keep) {
        return Err(UntangleError::PreconditionViolated("kept edges must be pairwise non-crossing".into()));
    }
    let edges = d.graph().edges();
    let mut settled = vec![false; edges.len()];
    for &i in keep {
        settled[i] = true;
    }
    let mut positions = d.positions().to_vec();
    for i in 0..edges.len() {
        if settled[i] {
            continue;
        }
        let (a, b) = edges[i];
        let placed = [(a, b), (b, a)].into_iter().find_map(|(anchor, mover)| {
            shrink_candidates(positions[anchor], positions[mover])
                .find(|&p| fits_after_shrink(&positions, edges, &settled, i, anchor, mover, p))
                .map(|p| (mover, p))
        });
        let (mover, p) = placed.ok_or(UntangleError::NoPlacement(a, b))?;
        positions[mover] = p;
        settled[i] = true;
    }
    let final_drawing = d.with_positions(positions)?;
    UntangleResult::new(d, final_drawing, UntangleMethod::MisShrink, false)
}

fn shrink_candidates(anchor: Point, far: Point) -> impl Iterator<Item = Point> {
    let (dx, dy) = (far.x - anchor.x, far.y - anchor.y);
    let g = gcd(dx.unsigned_abs(), dy.unsigned_abs()) as i64;
    let along = (1..g).map(move |k| Point::new(anchor.x + k * dx / g, anchor.y + k * dy / g));
    let mut ring: Vec<(i64, i64)> = Vec::new();
    for ox in -SHRINK_SEARCH_RADIUS..=SHRINK_SEARCH_RADIUS {
        for oy in -SHRINK_SEARCH_RADIUS..=SHRINK_SEARCH_RADIUS {
            if (ox, oy) != (0, 0) {
                ring.push((ox, oy));
            }
        }
    }
    ring.sort_by_key(|&(ox, oy)| (ox * ox + oy * oy, ox, oy));
    along
        .chain(ring.into_iter().map(move |(ox, oy)| Point::new(anchor.x + ox, anchor.y + oy)))
        .filter(|p| p.within_cap())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[allow(clippy::too_many_arguments)]
fn fits_after_shrink(
    positions: &[Point],
    edges: &[(usize, usize)],
    settled: &[bool],
    edge: usize,
    anchor: usize,
    mover: usize,
    p: Point,
) -> bool {
    if positions.iter().enumerate().any(|(w, q)| w != mover && *q == p) {
        return false;
    }
    let s = Segment::new(positions[anchor], p);
    if positions
        .iter()
        .enumerate()
        .any(|(w, q)| w != mover && w != anchor && point_in_open_segment(*q, &s))
    {
        return false;
    }
    for (j, &(u, v)) in edges.iter().enumerate() {
        if j == edge {
            continue;
        }
        let t = Segment::new(positions[u], positions[v]);
        if point_in_open_segment(p, &t) {
            return false;
        }
        match properly_cross_unchecked(&s, &t) {
            Err(_) => return false,
            Ok(true) if settled[j] => return false,
            _ => {}
        }
    }
    true
}

/// Moves the (at most two) `centers`, which must touch every edge, to apex
/// points above and below all other vertices. Nothing else moves.
pub fn apex_untangle(d: &Drawing, centers: &[usize]) -> Result<UntangleResult, UntangleError> {
    d.count_crossings()?;
    let g = d.graph();
    let n = g.vertex_count();
    let distinct = centers.len() != 2 || centers[0] != centers[1];
    if centers.is_empty() || centers.len() > 2 || !distinct || centers.iter().any(|&c| c >= n) {
        return Err(UntangleError::PreconditionViolated("need one or two distinct center vertices".into()));
    }
    if let Some(&(u, v)) = g.edges().iter().find(|(u, v)| !centers.contains(u) && !centers.contains(v)) {
        return Err(UntangleError::PreconditionViolated(format!("edge {u}-{v} avoids every center")));
    }
    let fixed: Vec<Point> = (0..n).filter(|v| !centers.contains(v)).map(|v| d.position(v)).collect();
    if fixed.is_empty() {
        return UntangleResult::new(d, d.clone(), UntangleMethod::Apex, false);
    }
    let (above, below) = apex_points(&fixed)?;
    let mut positions = d.positions().to_vec();
    for (&c, p) in centers.iter().zip([above, below]) {
        positions[c] = p;
    }
    UntangleResult::new(d, d.with_positions(positions)?, UntangleMethod::Apex, false)
}

/// Replaces the drawing with the graph's reference layout.
pub fn reference_untangle(d: &Drawing) -> Result<UntangleResult, UntangleError> {
    let reference = Drawing::reference(d.graph()).ok_or(UntangleError::NoReferenceLayout)?;
    UntangleResult::new(d, reference, UntangleMethod::Reference, false)
}

/// At most two vertices touching every edge, preferring one.
pub fn small_vertex_cover(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let edges = g.edges();
    let covers = |c: &[usize]| edges.iter().all(|(u, v)| c.contains(u) || c.contains(v));
    if let Some(v) = (0..n).find(|&v| covers(&[v])) {
        return Some(vec![v]);
    }
    for u in 0..n {
        for v in u + 1..n {
            if covers(&[u, v]) {
                return Some(vec![u, v]);
            }
        }
    }
    None
}

/// Matching drawings: exact independent set when small enough, greedy
/// otherwise (the shift count is then only an upper bound).
fn mis_shrink(d: &Drawing) -> Result<UntangleResult, UntangleError> {
    require_matching(d.graph())?;
    let sg = build_intersection_graph(d)?;
    let (keep, exact) = match max_independent_set(&sg) {
        Ok(set) => (set, true),
        Err(UntangleError::CapExceeded { .. }) => (greedy_independent_set(&sg), false),
        Err(e) => return Err(e),
    };
    let mut result = shrink_untangle(d, &keep)?;
    result.optimal = exact && result.shifts == sg.node_count() - keep.len();
    Ok(result)
}

pub fn untangle(d: &Drawing, method: UntangleMethod) -> Result<UntangleResult, UntangleError> {
    let report = d.count_crossings()?;
    match method {
        UntangleMethod::MisShrink => mis_shrink(d),
        UntangleMethod::Apex => {
            let centers = small_vertex_cover(d.graph())
                .filter(|c| !c.is_empty())
                .ok_or_else(|| UntangleError::PreconditionViolated("no vertex cover of size at most 2".into()))?;
            apex_untangle(d, &centers)
        }
        UntangleMethod::Reference => reference_untangle(d),
        UntangleMethod::Auto | UntangleMethod::Unchanged => {
            if report.count == 0 {
                return UntangleResult::new(d, d.clone(), UntangleMethod::Unchanged, true);
            }
            if require_matching(d.graph()).is_ok() {
                match mis_shrink(d) {
                    Err(UntangleError::NoPlacement(..)) if d.graph().reference_layout().is_some() => {}
                    other => return other,
                }
            } else if let Some(centers) = small_vertex_cover(d.graph()) {
                return apex_untangle(d, &centers);
            }
            if d.graph().reference_layout().is_some() {
                return reference_untangle(d);
            }
            Err(UntangleError::NoMethodApplicable)
        }
    }
}
