//! High-crossing drawings.
//!
//! Vertices are mapped onto points in convex position, where two chords
//! cross exactly when their endpoints interleave in cyclic order. A uniformly
//! random map makes every pair of disjoint edges cross with probability 1/3,
//! so the expected crossing count is `epsilon / 3`. The greedy below fixes
//! one vertex at a time on the slot with the largest conditional expectation,
//! which never lets the expectation drop and ends on a drawing with at least
//! `epsilon / 3` crossings.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::drawing::{crossings_touching_at, Drawing, DrawingError};
use crate::geometry::{convex_positions, point_in_open_segment, properly_cross_unchecked, GeometryError, Point, Segment};
use crate::graph::{Edge, Family, Graph};

/// Exact non-negative rational.
pub type Rational = Ratio<u128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObfuscateError {
    #[error("no family-specific optimal drawing for this graph")]
    NotApplicable,
    #[error("vertex order must be a permutation of 0..{0}")]
    InvalidOrder(usize),
    #[error("edges {0:?} and {1:?} share an endpoint")]
    AdjacentEdges(Edge, Edge),
    #[error("slot {slot} is unavailable for vertex {vertex}")]
    SlotUnavailable { vertex: usize, slot: usize },
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Vertices pinned to convex-position slots; the rest are still free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAssignment {
    slot_of: Vec<Option<usize>>,
    taken: Vec<bool>,
}

impl PartialAssignment {
    /// Empty assignment of `n` vertices onto `n` slots.
    pub fn new(n: usize) -> Self {
        PartialAssignment { slot_of: vec![None; n], taken: vec![false; n] }
    }

    pub fn slots(&self) -> usize {
        self.taken.len()
    }

    pub fn slot_of(&self, v: usize) -> Option<usize> {
        self.slot_of[v]
    }

    pub fn assign(&mut self, vertex: usize, slot: usize) -> Result<(), ObfuscateError> {
        if slot >= self.slots() || self.taken[slot] || self.slot_of[vertex].is_some() {
            return Err(ObfuscateError::SlotUnavailable { vertex, slot });
        }
        self.slot_of[vertex] = Some(slot);
        self.taken[slot] = true;
        Ok(())
    }

    fn unassign(&mut self, vertex: usize) {
        if let Some(slot) = self.slot_of[vertex].take() {
            self.taken[slot] = false;
        }
    }

    pub fn free_slots(&self) -> Vec<usize> {
        (0..self.slots()).filter(|&s| !self.taken[s]).collect()
    }

    pub fn free_count(&self) -> usize {
        self.taken.iter().filter(|t| !**t).count()
    }

    pub fn is_complete(&self) -> bool {
        self.slot_of.iter().all(Option::is_some)
    }
}

/// Chords `(a, b)` and `(c, d)` on distinct slots interleave in cyclic order.
fn interleaved(a: usize, b: usize, c: usize, d: usize) -> bool {
    let (lo, hi) = (a.min(b), a.max(b));
    let inside = |x: usize| lo < x && x < hi;
    inside(c) != inside(d)
}

/// Probability that `e` and `f` cross once the free endpoints are placed by
/// a uniformly random injection into the free slots. Computed by enumerating
/// every such placement.
pub fn pair_crossing_probability(pa: &PartialAssignment, e: Edge, f: Edge) -> Result<Rational, ObfuscateError> {
    if Graph::edges_adjacent(e, f) {
        return Err(ObfuscateError::AdjacentEdges(e, f));
    }
    let endpoints = [e.0, e.1, f.0, f.1];
    let unplaced: Vec<usize> = (0..4).filter(|&i| pa.slot_of(endpoints[i]).is_none()).collect();
    let free = pa.free_slots();

    let mut slots = endpoints.map(|v| pa.slot_of(v).unwrap_or(usize::MAX));
    let mut used = vec![false; free.len()];
    let (mut favourable, mut total) = (0u128, 0u128);
    enumerate_placements(&unplaced, &free, &mut used, &mut slots, &mut |s| {
        total += 1;
        if interleaved(s[0], s[1], s[2], s[3]) {
            favourable += 1;
        }
    });
    Ok(Rational::new(favourable, total.max(1)))
}

fn enumerate_placements(
    unplaced: &[usize],
    free: &[usize],
    used: &mut [bool],
    slots: &mut [usize; 4],
    visit: &mut impl FnMut(&[usize; 4]),
) {
    let Some((&first, rest)) = unplaced.split_first() else {
        visit(slots);
        return;
    };
    for i in 0..free.len() {
        if !used[i] {
            used[i] = true;
            slots[first] = free[i];
            enumerate_placements(rest, free, used, slots, visit);
            used[i] = false;
        }
    }
}

/// Disjoint edge pairs of `g`, in lexicographic order of edge indices.
pub fn disjoint_edge_pairs(g: &Graph) -> Vec<(Edge, Edge)> {
    let edges = g.edges();
    let mut pairs = Vec::with_capacity(g.epsilon() as usize);
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if !Graph::edges_adjacent(edges[i], edges[j]) {
                pairs.push((edges[i], edges[j]));
            }
        }
    }
    pairs
}

/// Free-slot counts over cyclic arcs, for the closed-form probabilities.
struct FreeArcs {
    prefix: Vec<u128>,
}

impl FreeArcs {
    fn new(pa: &PartialAssignment) -> Self {
        let mut prefix = Vec::with_capacity(pa.slots() + 1);
        prefix.push(0);
        for &taken in &pa.taken {
            prefix.push(prefix.last().unwrap() + u128::from(!taken));
        }
        FreeArcs { prefix }
    }

    /// Free slots strictly between `x` and `y`, walking upwards from `x`.
    fn between(&self, x: usize, y: usize) -> u128 {
        let n = self.prefix.len() - 1;
        if x < y {
            self.prefix[y] - self.prefix[x + 1]
        } else {
            (self.prefix[n] - self.prefix[x + 1]) + self.prefix[y]
        }
    }
}

fn strictly_on_arc(x: usize, y: usize, p: usize) -> bool {
    if x < y {
        x < p && p < y
    } else {
        p > x || p < y
    }
}

/// Expected number of crossings under the partial assignment, summed over
/// all disjoint edge pairs. Uses gap counting instead of enumeration: with
/// `f` free slots every pair probability is an integer over `3 f (f - 1)`.
pub fn conditional_expected_crossings(pa: &PartialAssignment, g: &Graph) -> Rational {
    expected_with_pairs(pa, &disjoint_edge_pairs(g))
}

fn expected_with_pairs(pa: &PartialAssignment, pairs: &[(Edge, Edge)]) -> Rational {
    let f = pa.free_count() as u128;
    let denominator = 3 * f.max(1) * f.saturating_sub(1).max(1);
    let arcs = FreeArcs::new(pa);
    let mut numerator = 0u128;
    for &(e, g) in pairs {
        numerator += scaled_pair_probability(pa, &arcs, f, denominator, e, g);
    }
    Rational::new(numerator, denominator)
}

/// Pair probability multiplied by `denominator`.
fn scaled_pair_probability(
    pa: &PartialAssignment,
    arcs: &FreeArcs,
    f: u128,
    denominator: u128,
    e: Edge,
    g: Edge,
) -> u128 {
    let s = [pa.slot_of(e.0), pa.slot_of(e.1), pa.slot_of(g.0), pa.slot_of(g.1)];
    let unplaced = s.iter().filter(|x| x.is_none()).count();
    match unplaced {
        0 => {
            let [a, b, c, d] = s.map(Option::unwrap);
            if interleaved(a, b, c, d) {
                denominator
            } else {
                0
            }
        }
        1 => {
            // The free endpoint must land on the arc cut off by the other
            // chord that does not hold its own partner.
            let hole = s.iter().position(Option::is_none).unwrap();
            let partner = s[hole ^ 1].unwrap();
            let (x, y) = if hole < 2 {
                (s[2].unwrap(), s[3].unwrap())
            } else {
                (s[0].unwrap(), s[1].unwrap())
            };
            let arc = if strictly_on_arc(x, y, partner) { arcs.between(y, x) } else { arcs.between(x, y) };
            arc * 3 * f.saturating_sub(1).max(1)
        }
        2 => {
            if let (Some(a), Some(b)) = (s[0], s[1]) {
                let inside = arcs.between(a, b);
                2 * inside * (f - inside) * 3
            } else if let (Some(c), Some(d)) = (s[2], s[3]) {
                let inside = arcs.between(c, d);
                2 * inside * (f - inside) * 3
            } else {
                let p = s[0].or(s[1]).unwrap();
                let q = s[2].or(s[3]).unwrap();
                let x = arcs.between(p, q);
                let y = f - x;
                (x * x.saturating_sub(1) / 2 + y * y.saturating_sub(1) / 2) * 3
            }
        }
        _ => denominator / 3,
    }
}

/// Vertices by descending degree, ties by id.
pub fn default_order(g: &Graph) -> Vec<usize> {
    let degrees = g.degrees();
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(degrees[v]), v));
    order
}

/// Result of the greedy placement with the conditional expectation recorded
/// before the first and after every placement.
#[derive(Debug, Clone)]
pub struct GreedyTrace {
    pub drawing: Drawing,
    pub slots: Vec<usize>,
    pub expectations: Vec<Rational>,
}

pub fn derandomized_obfuscate(g: &Graph, order: &[usize]) -> Result<Drawing, ObfuscateError> {
    derandomized_obfuscate_traced(g, order).map(|t| t.drawing)
}

pub fn derandomized_obfuscate_traced(g: &Graph, order: &[usize]) -> Result<GreedyTrace, ObfuscateError> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(ObfuscateError::InvalidOrder(n));
    }
    let pairs = disjoint_edge_pairs(g);
    let mut pa = PartialAssignment::new(n);
    let mut expectations = vec![expected_with_pairs(&pa, &pairs)];

    for &v in order {
        let mut best: Option<(usize, Rational)> = None;
        for slot in pa.free_slots() {
            pa.assign(v, slot)?;
            let value = expected_with_pairs(&pa, &pairs);
            pa.unassign(v);
            if best.as_ref().is_none_or(|(_, b)| value > *b) {
                best = Some((slot, value));
            }
        }
        let (slot, value) = best.expect("a free slot remains for every unplaced vertex");
        pa.assign(v, slot)?;
        expectations.push(value);
    }

    let slots: Vec<usize> = (0..n).map(|v| pa.slot_of(v).unwrap()).collect();
    let points = convex_positions(n)?;
    let drawing = Drawing::new(g.clone(), slots.iter().map(|&s| points[s]).collect())?;
    Ok(GreedyTrace { drawing, slots, expectations })
}

impl Drawing {
    /// Change in crossing count if `u` and `v` trade places, or `None` when
    /// the swap would break general position.
    pub(crate) fn swap_gain(&self, u: usize, v: usize) -> Option<i64> {
        let edges = self.graph().edges();
        let touched: Vec<bool> = edges.iter().map(|&(a, b)| a == u || a == v || b == u || b == v).collect();
        let before = self.crossings_touching(&touched) as i64;
        let mut positions = self.positions().to_vec();
        positions.swap(u, v);
        let segment = |(a, b): Edge| Segment::new(positions[a], positions[b]);
        // The point set is unchanged, so only edges incident to u or v can
        // newly pass through a vertex or overlap another edge.
        for (i, &e) in edges.iter().enumerate() {
            if touched[i] {
                let s = segment(e);
                if positions.iter().any(|p| point_in_open_segment(*p, &s)) {
                    return None;
                }
                for &f in edges {
                    if f != e && !Graph::edges_adjacent(e, f) && properly_cross_unchecked(&s, &segment(f)).is_err() {
                        return None;
                    }
                }
            }
        }
        Some(crossings_touching_at(edges, &positions, &touched) as i64 - before)
    }
}

/// Steepest-ascent position swaps: each round applies the swap with the
/// largest strict gain (ties to the lexicographically smallest pair).
pub fn local_search_swaps(d: &Drawing, max_rounds: usize) -> Drawing {
    let n = d.graph().vertex_count();
    let mut current = d.clone();
    for _ in 0..max_rounds {
        let mut best: Option<(i64, usize, usize)> = None;
        for u in 0..n {
            for v in u + 1..n {
                if let Some(gain) = current.swap_gain(u, v) {
                    if gain > 0 && best.is_none_or(|(g, _, _)| gain > g) {
                        best = Some((gain, u, v));
                    }
                }
            }
        }
        let Some((_, u, v)) = best else { break };
        let mut positions = current.positions().to_vec();
        positions.swap(u, v);
        current = current.with_positions(positions).expect("swap keeps coordinates in range");
    }
    current
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ObfuscateOptions {
    pub restarts: usize,
    pub seed: u64,
    pub local_search: bool,
    pub max_rounds: usize,
}

impl Default for ObfuscateOptions {
    fn default() -> Self {
        ObfuscateOptions { restarts: 4, seed: 0, local_search: true, max_rounds: 200 }
    }
}

/// Greedy placement from several vertex orders, optionally polished by local
/// search. Restart 0 uses [`default_order`]; later restarts use orders
/// shuffled by a generator seeded with `options.seed`. The best drawing wins,
/// ties to the earliest restart.
pub fn obfuscate(g: &Graph, options: &ObfuscateOptions) -> Result<Drawing, ObfuscateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut best: Option<(u64, Drawing)> = None;
    for restart in 0..options.restarts.max(1) {
        let mut order = default_order(g);
        if restart > 0 {
            order.shuffle(&mut rng);
        }
        let mut drawing = derandomized_obfuscate(g, &order)?;
        if options.local_search {
            drawing = local_search_swaps(&drawing, options.max_rounds);
        }
        let count = drawing.count_crossings()?.count;
        if best.as_ref().is_none_or(|(c, _)| count > *c) {
            best = Some((count, drawing));
        }
    }
    Ok(best.expect("at least one restart").1)
}

/// Known crossing-maximal (or adversarial) drawings for recognized families.
pub fn family_optimal_drawing(g: &Graph) -> Result<Drawing, ObfuscateError> {
    let positions = match g.verified_family().ok_or(ObfuscateError::NotApplicable)? {
        Family::Complete(n) => convex_positions(n)?,
        Family::CompleteBipartite(s, t) => (0..s as i64)
            .map(|i| Point::new(i, 0))
            .chain((0..t as i64).map(|j| Point::new(j, 1)))
            .collect(),
        Family::Cycle(n) if n % 2 == 1 => {
            let slots = convex_positions(n)?;
            (0..n).map(|i| slots[i * (n / 2) % n]).collect()
        }
        Family::StarForest(3, s) => return all_crossing_star_forest(g, s),
        Family::SubdividedTriangle(s) => return subdivided_triangle_on_a_line(g, s),
        _ => return Err(ObfuscateError::NotApplicable),
    };
    Ok(Drawing::new(g.clone(), positions)?)
}

/// Three stars whose edges all pass just beyond a common origin: centers far
/// out at 0, 120 and 240 degrees, each star's leaves in a short row on the
/// far side of the origin, so every two edges of different stars cross.
fn all_crossing_star_forest(g: &Graph, s: usize) -> Result<Drawing, ObfuscateError> {
    // Integer direction vectors approximating unit vectors scaled by 1000.
    const DIRECTIONS: [(i64, i64); 3] = [(1000, 0), (-500, 866), (-500, -866)];
    let target = 3 * (s as u64) * (s as u64);
    let mut last = None;
    for attempt in 0..8i64 {
        let depth = (4 * s as i64 + 4) << attempt;
        let reach = 10 * depth;
        let mut positions = vec![Point::new(0, 0); 3 + 3 * s];
        for (c, &(ux, uy)) in DIRECTIONS.iter().enumerate() {
            positions[c] = Point::checked((reach * ux) as i128, (reach * uy) as i128)?;
            for j in 0..s {
                let offset = 2 * j as i64 - (s as i64 - 1);
                positions[3 + c * s + j] =
                    Point::checked((-depth * ux - offset * uy) as i128, (-depth * uy + offset * ux) as i128)?;
            }
        }
        let drawing = Drawing::new(g.clone(), positions)?;
        match drawing.count_crossings() {
            Ok(report) if report.count == target => return Ok(drawing),
            Ok(_) => {}
            Err(e) => last = Some(e),
        }
    }
    Err(last.map(ObfuscateError::from).unwrap_or(ObfuscateError::NotApplicable))
}

/// `z_1..z_3s` in order on a horizontal line, the three centers at generic
/// points below it.
fn subdivided_triangle_on_a_line(g: &Graph, s: usize) -> Result<Drawing, ObfuscateError> {
    let width = 3 * s as i64 + 1;
    let mut last = None;
    for attempt in 0..16i64 {
        let mut positions = vec![
            Point::new(-1 - attempt, -3 - 2 * attempt),
            Point::new(width + 1 + attempt, -5 - attempt),
            Point::new(width / 2, -width - 7 - 3 * attempt),
        ];
        positions.extend((1..=3 * s as i64).map(|i| Point::new(i, 0)));
        let drawing = Drawing::new(g.clone(), positions)?;
        let violations = drawing.validate();
        if violations.is_empty() {
            return Ok(drawing);
        }
        last = Some(DrawingError::Invalid(violations));
    }
    Err(last.map(ObfuscateError::from).unwrap_or(ObfuscateError::NotApplicable))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use rand::Rng;

    fn third() -> Rational {
        Rational::new(1, 3)
    }

    /// Maximum crossing count over every slot bijection.
    fn best_over_all_bijections(g: &Graph) -> u64 {
        let n = g.vertex_count();
        let points = convex_positions(n).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = 0;
        permute(&mut perm, 0, &mut |p| {
            let d = Drawing::new(g.clone(), p.iter().map(|&s| points[s]).collect()).unwrap();
            best = best.max(d.count_crossings().unwrap().count);
        });
        best
    }

    fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            visit(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, visit);
            p.swap(k, i);
        }
    }

    #[test]
    fn pair_probability_examples() {
        let pa = PartialAssignment::new(6);
        assert_eq!(pair_crossing_probability(&pa, (0, 1), (2, 3)).unwrap(), third());

        let mut pa = PartialAssignment::new(4);
        for (v, s) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            pa.assign(v, s).unwrap();
        }
        assert_eq!(pair_crossing_probability(&pa, (0, 1), (2, 3)).unwrap(), Rational::from_integer(1));
        let mut pa = PartialAssignment::new(4);
        for (v, s) in [(0, 0), (1, 1), (2, 2), (3, 3)] {
            pa.assign(v, s).unwrap();
        }
        assert_eq!(pair_crossing_probability(&pa, (0, 1), (2, 3)).unwrap(), Rational::from_integer(0));
        assert!(pair_crossing_probability(&pa, (0, 1), (1, 3)).is_err());
    }

    #[test]
    fn assignment_rejects_reuse() {
        let mut pa = PartialAssignment::new(3);
        pa.assign(0, 1).unwrap();
        assert!(pa.assign(1, 1).is_err());
        assert!(pa.assign(0, 2).is_err());
        assert!(pa.assign(2, 3).is_err());
        assert_eq!(pa.free_slots(), vec![0, 2]);
    }

    #[test]
    fn empty_assignment_expects_a_third_of_epsilon() {
        let c5 = gen_cycle(5).unwrap();
        assert_eq!(conditional_expected_crossings(&PartialAssignment::new(5), &c5), Rational::new(5, 3));
        let k4 = gen_complete(4).unwrap();
        assert_eq!(conditional_expected_crossings(&PartialAssignment::new(4), &k4), Rational::from_integer(1));
        for g in small_family_suite() {
            let e = conditional_expected_crossings(&PartialAssignment::new(g.vertex_count()), &g);
            assert_eq!(e, Rational::new(g.epsilon() as u128, 3), "{:?}", g.name());
        }
    }

    #[test]
    fn full_assignment_expectation_is_the_count() {
        let g = gen_gs(2).unwrap();
        let points = convex_positions(9).unwrap();
        let mut pa = PartialAssignment::new(9);
        let slots = [3, 7, 0, 5, 1, 8, 2, 6, 4];
        for (v, &s) in slots.iter().enumerate() {
            pa.assign(v, s).unwrap();
        }
        let d = Drawing::new(g.clone(), slots.iter().map(|&s| points[s]).collect()).unwrap();
        let count = d.count_crossings().unwrap().count;
        assert_eq!(conditional_expected_crossings(&pa, &g), Rational::from_integer(count as u128));
    }

    #[test]
    fn closed_form_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in [gen_gs(2).unwrap(), gen_complete(6).unwrap(), gen_matching(4).unwrap(), gen_cycle(8).unwrap()] {
            let n = g.vertex_count();
            for _ in 0..30 {
                let mut pa = PartialAssignment::new(n);
                let mut slots: Vec<usize> = (0..n).collect();
                slots.shuffle(&mut rng);
                let placed = rng.gen_range(0..=n);
                let mut vertices: Vec<usize> = (0..n).collect();
                vertices.shuffle(&mut rng);
                for i in 0..placed {
                    pa.assign(vertices[i], slots[i]).unwrap();
                }
                let mut by_enumeration = Rational::from_integer(0);
                for (e, f) in disjoint_edge_pairs(&g) {
                    by_enumeration += pair_crossing_probability(&pa, e, f).unwrap();
                }
                assert_eq!(conditional_expected_crossings(&pa, &g), by_enumeration);
            }
        }
    }

    #[test]
    fn greedy_never_lowers_the_expectation() {
        for g in small_family_suite() {
            let trace = derandomized_obfuscate_traced(&g, &default_order(&g)).unwrap();
            assert!(trace.expectations.windows(2).all(|w| w[0] <= w[1]), "{:?}", g.name());
            let count = trace.drawing.count_crossings().unwrap().count;
            assert_eq!(*trace.expectations.last().unwrap(), Rational::from_integer(count as u128));
            assert!(3 * count >= g.epsilon());
        }
    }

    #[test]
    fn greedy_on_complete_graphs_is_optimal() {
        for n in 4..=8 {
            let g = gen_complete(n).unwrap();
            let d = derandomized_obfuscate(&g, &default_order(&g)).unwrap();
            let expected = (n * (n - 1) * (n - 2) * (n - 3) / 24) as u64;
            assert_eq!(d.count_crossings().unwrap().count, expected);
        }
    }

    #[test]
    fn greedy_examples() {
        let c5 = gen_cycle(5).unwrap();
        let d = derandomized_obfuscate(&c5, &default_order(&c5)).unwrap();
        assert!(d.count_crossings().unwrap().count >= 2);

        let m3 = gen_matching(3).unwrap();
        assert_eq!(best_over_all_bijections(&m3), 3);
        let d = derandomized_obfuscate(&m3, &default_order(&m3)).unwrap();
        assert!(d.count_crossings().unwrap().count >= 1);
    }

    #[test]
    fn greedy_sits_between_the_guarantee_and_the_optimum() {
        for g in small_family_suite().into_iter().filter(|g| g.vertex_count() <= 7) {
            let d = derandomized_obfuscate(&g, &default_order(&g)).unwrap();
            let count = d.count_crossings().unwrap().count;
            assert!(3 * count >= g.epsilon(), "{:?}", g.name());
            assert!(count <= best_over_all_bijections(&g), "{:?}", g.name());
        }
    }

    #[test]
    fn greedy_rejects_bad_orders() {
        let g = gen_cycle(4).unwrap();
        assert!(derandomized_obfuscate(&g, &[0, 1, 2]).is_err());
        assert!(derandomized_obfuscate(&g, &[0, 1, 1, 2]).is_err());
        assert!(derandomized_obfuscate(&g, &[0, 1, 2, 9]).is_err());
    }

    #[test]
    fn local_search_improves_a_convex_cycle() {
        let g = gen_cycle(5).unwrap();
        let start = Drawing::reference(&g).unwrap();
        assert_eq!(start.count_crossings().unwrap().count, 0);
        let improved = local_search_swaps(&start, 50);
        let count = improved.count_crossings().unwrap().count;
        assert!(count > 0 && 3 * count >= g.epsilon());
    }

    #[test]
    fn local_search_leaves_optima_alone() {
        let g = gen_complete(4).unwrap();
        let d = Drawing::new(g, convex_positions(4).unwrap()).unwrap();
        let after = local_search_swaps(&d, 10);
        assert_eq!(after, d);
        assert_eq!(after.count_crossings().unwrap().count, 1);
    }

    #[test]
    fn local_search_never_loses_crossings() {
        for g in small_family_suite() {
            let d = derandomized_obfuscate(&g, &default_order(&g)).unwrap();
            let before = d.count_crossings().unwrap().count;
            let after = local_search_swaps(&d, 20);
            assert!(after.validate().is_empty());
            assert!(after.count_crossings().unwrap().count >= before);
        }
    }

    #[test]
    fn swap_gain_matches_recount() {
        let g = gen_gs(2).unwrap();
        let d = Drawing::reference(&g).unwrap();
        let base = d.count_crossings().unwrap().count as i64;
        for u in 0..9 {
            for v in u + 1..9 {
                let mut p = d.positions().to_vec();
                p.swap(u, v);
                let swapped = d.with_positions(p).unwrap();
                match d.swap_gain(u, v) {
                    Some(gain) => assert_eq!(swapped.count_crossings().unwrap().count as i64 - base, gain),
                    None => assert!(!swapped.validate().is_empty()),
                }
            }
        }
    }

    #[test]
    fn family_optimal_values() {
        let k6 = family_optimal_drawing(&gen_complete(6).unwrap()).unwrap();
        assert_eq!(k6.count_crossings().unwrap().count, 15);
        let k34 = family_optimal_drawing(&gen_complete_bipartite(3, 4).unwrap()).unwrap();
        assert_eq!(k34.count_crossings().unwrap().count, 18);
        let c9 = family_optimal_drawing(&gen_cycle(9).unwrap()).unwrap();
        assert_eq!(c9.count_crossings().unwrap().count, 27);
        for s in 1..=8u64 {
            let g = gen_star_forest(3, s as usize).unwrap();
            let d = family_optimal_drawing(&g).unwrap();
            assert_eq!(d.count_crossings().unwrap().count, 3 * s * s);
            assert_eq!(g.epsilon(), 3 * s * s);
        }
    }

    #[test]
    fn family_optimal_not_applicable() {
        assert_eq!(family_optimal_drawing(&gen_cycle(8).unwrap()), Err(ObfuscateError::NotApplicable));
        assert_eq!(family_optimal_drawing(&gen_matching(3).unwrap()), Err(ObfuscateError::NotApplicable));
        assert_eq!(family_optimal_drawing(&gen_star_forest(2, 3).unwrap()), Err(ObfuscateError::NotApplicable));
        let plain = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(family_optimal_drawing(&plain), Err(ObfuscateError::NotApplicable));
    }

    #[test]
    fn subdivided_triangle_on_a_line_follows_the_connection_rule() {
        for s in 1..=10 {
            let g = gen_gs(s).unwrap();
            let d = family_optimal_drawing(&g).unwrap();
            assert!(d.validate().is_empty());
            for i in 1..=3 * s {
                assert_eq!(d.position(2 + i), Point::new(i as i64, 0));
                for j in 0..3 {
                    let has = g.edges().contains(&(j, 2 + i));
                    assert_eq!(has, j != i % 3);
                }
            }
        }
    }

    #[test]
    fn obfuscate_is_deterministic_and_meets_the_guarantee() {
        let g = gen_stacked_triangulation(14).unwrap();
        let opts = ObfuscateOptions { restarts: 3, seed: 9, ..Default::default() };
        let a = obfuscate(&g, &opts).unwrap();
        let b = obfuscate(&g, &opts).unwrap();
        assert_eq!(a, b);
        assert!(3 * a.count_crossings().unwrap().count >= g.epsilon());
    }
}
