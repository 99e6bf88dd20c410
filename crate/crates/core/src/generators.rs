//! Graph families, each with a crossing-free reference layout when the
//! graph is planar.
//!
//! Vertex ids are deterministic: centers first, then subdividers or leaves
//! by index.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{apex_points, convex_positions, cross, Point};
use crate::graph::{Family, Graph, GraphError};

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameter(msg.into())
}

fn geometry_failure(e: impl std::fmt::Display) -> GraphError {
    GraphError::InvalidLayout(e.to_string())
}

/// Dispatches to the generator for `family`.
pub fn generate(family: Family) -> Result<Graph, GraphError> {
    match family {
        Family::Cycle(n) => gen_cycle(n),
        Family::Complete(n) => gen_complete(n),
        Family::CompleteBipartite(s, t) => gen_complete_bipartite(s, t),
        Family::Matching(m) => gen_matching(m),
        Family::StarForest(k, s) => gen_star_forest(k, s),
        Family::SubdividedTriangle(s) => gen_gs(s),
        Family::StackedTriangulation(n) => gen_stacked_triangulation(n),
    }
}

pub fn gen_cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid(format!("cycle needs n >= 3, got {n}")));
    }
    let layout = convex_positions(n).map_err(geometry_failure)?;
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))?
        .with_family(Family::Cycle(n))
        .with_reference_layout(layout)
}

/// `K_n`; a reference layout exists only for `n <= 4`.
pub fn gen_complete(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(invalid("complete graph needs n >= 1"));
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let g = Graph::new(n, edges)?.with_family(Family::Complete(n));
    let layout = [Point::new(0, 0), Point::new(4, 0), Point::new(2, 4), Point::new(2, 1)];
    if n <= 4 {
        g.with_reference_layout(layout[..n].to_vec())
    } else {
        Ok(g)
    }
}

/// `K_{s,t}` with parts `0..s` and `s..s+t`. Planar (and laid out) only when
/// one side has at most two vertices: that side becomes apex vertices over a
/// row holding the other side.
pub fn gen_complete_bipartite(s: usize, t: usize) -> Result<Graph, GraphError> {
    if s < 1 || t < 1 {
        return Err(invalid(format!("K_{{s,t}} needs s, t >= 1, got {s}, {t}")));
    }
    let edges = (0..s).flat_map(|a| (s..s + t).map(move |b| (a, b)));
    let g = Graph::new(s + t, edges)?.with_family(Family::CompleteBipartite(s, t));
    if s.min(t) > 2 {
        return Ok(g);
    }
    let (centers, leaves) = if s <= 2 { (0..s, s..s + t) } else { (s..s + t, 0..s) };
    let mut layout = vec![Point::new(0, 0); s + t];
    let row: Vec<Point> = (0..leaves.len() as i64).map(|i| Point::new(2 * i, 0)).collect();
    for (v, p) in leaves.zip(&row) {
        layout[v] = *p;
    }
    let (above, below) = apex_points(&row).map_err(geometry_failure)?;
    for (v, p) in centers.zip([above, below]) {
        layout[v] = p;
    }
    g.with_reference_layout(layout)
}

/// `m K_2`: edges `(2i, 2i + 1)`, drawn as parallel vertical segments.
pub fn gen_matching(m: usize) -> Result<Graph, GraphError> {
    if m < 1 {
        return Err(invalid("matching needs m >= 1"));
    }
    let layout = (0..2 * m as i64).map(|v| Point::new(v / 2, v % 2)).collect();
    Graph::new(2 * m, (0..m).map(|i| (2 * i, 2 * i + 1)))?
        .with_family(Family::Matching(m))
        .with_reference_layout(layout)
}

/// `k K_{1,s}`: centers `0..k`, then the leaves of star `c` at
/// `k + c*s .. k + (c+1)*s`.
pub fn gen_star_forest(k: usize, s: usize) -> Result<Graph, GraphError> {
    if k < 1 || s < 1 {
        return Err(invalid(format!("star forest needs k, s >= 1, got {k}, {s}")));
    }
    let n = k + k * s;
    let edges = (0..k).flat_map(|c| (0..s).map(move |j| (c, k + c * s + j)));
    let mut layout = vec![Point::new(0, 0); n];
    for c in 0..k {
        let base = (c * (s + 1)) as i64;
        let leaves: Vec<Point> = (0..s as i64).map(|j| Point::new(base + j, 0)).collect();
        for (j, p) in leaves.iter().enumerate() {
            layout[k + c * s + j] = *p;
        }
        layout[c] = apex_points(&leaves).map_err(geometry_failure)?.0;
    }
    Graph::new(n, edges)?
        .with_family(Family::StarForest(k, s))
        .with_reference_layout(layout)
}

/// The subdivided triangle of multiplicity `s`: centers `c_0, c_1, c_2` are
/// vertices `0, 1, 2`; subdivider `z_i` (`i = 1..=3s`) is vertex `2 + i` and
/// is joined to `c_j` exactly when `j != i mod 3`.
pub fn gen_gs(s: usize) -> Result<Graph, GraphError> {
    if s < 1 {
        return Err(invalid("G_s needs s >= 1"));
    }
    let n = 3 * s + 3;
    let edges = (1..=3 * s).flat_map(|i| (0..3).filter(move |j| *j != i % 3).map(move |j| (j, 2 + i)));
    let g = Graph::new(n, edges)?.with_family(Family::SubdividedTriangle(s));

    // Each subdivided side is a fan of nested "tents" pointing into the
    // triangle from the side's midpoint.
    let mut last_err = None;
    for attempt in 0..8i64 {
        let t = 4 * (s as i64 + 1) + attempt;
        let mut layout = vec![Point::new(0, 0), Point::new(4 * t, 0), Point::new(2 * t, 4 * t)];
        for i in 1..=3 * s {
            let k = ((i - 1) / 3 + 1) as i64;
            layout.push(match i % 3 {
                2 => Point::new(2 * t + k, 2 * k),
                1 => Point::new(t + 2 * k, 2 * t - k),
                _ => Point::new(3 * t - 2 * k, 2 * t - k),
            });
        }
        match g.clone().with_reference_layout(layout) {
            Ok(g) => return Ok(g),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("at least one attempt"))
}

const TRIANGULATION_SIZE: i64 = 1 << 24;

/// Stacked triangulation on `n` vertices, always splitting the face of
/// largest area (ties to the oldest face) at its rounded centroid.
pub fn gen_stacked_triangulation(n: usize) -> Result<Graph, GraphError> {
    stacked(n, None).map(|g| g.with_family(Family::StackedTriangulation(n)))
}

/// Stacked triangulation whose split faces are drawn from a seeded RNG.
pub fn random_stacked_triangulation(n: usize, seed: u64) -> Result<Graph, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    stacked(n, Some(&mut rng)).map(|g| g.with_name(format!("T_{n}#{seed}")))
}

fn stacked(n: usize, mut rng: Option<&mut ChaCha8Rng>) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid(format!("triangulation needs n >= 3, got {n}")));
    }
    let mut layout = vec![
        Point::new(0, 0),
        Point::new(TRIANGULATION_SIZE, 0),
        Point::new(TRIANGULATION_SIZE / 2, TRIANGULATION_SIZE),
    ];
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2]];

    for v in 3..n {
        let splittable: Vec<(usize, Point, i128)> = faces
            .iter()
            .enumerate()
            .filter_map(|(i, f)| {
                let [a, b, c] = f.map(|u| layout[u]);
                let p = Point::new((a.x + b.x + c.x).div_euclid(3), (a.y + b.y + c.y).div_euclid(3));
                strictly_inside(p, a, b, c).then(|| (i, p, cross(a, b, c).abs()))
            })
            .collect();
        if splittable.is_empty() {
            return Err(GraphError::InvalidLayout("no face left to split at integer precision".into()));
        }
        let (face, p, _) = match rng.as_deref_mut() {
            Some(rng) => splittable[rng.gen_range(0..splittable.len())],
            None => *splittable
                .iter()
                .max_by(|x, y| x.2.cmp(&y.2).then(y.0.cmp(&x.0)))
                .expect("non-empty"),
        };
        let [a, b, c] = faces[face];
        layout.push(p);
        edges.extend([(a, v), (b, v), (c, v)]);
        faces[face] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([a, c, v]);
    }
    Graph::new(n, edges)?.with_reference_layout(layout)
}

fn strictly_inside(p: Point, a: Point, b: Point, c: Point) -> bool {
    let s = [cross(a, b, p).signum(), cross(b, c, p).signum(), cross(c, a, p).signum()];
    s[0] != 0 && s[0] == s[1] && s[1] == s[2]
}

/// Small instances of every family, used by unit tests across the crate.
#[cfg(test)]
pub(crate) fn small_family_suite() -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 3..=9 {
        out.push(gen_cycle(n).unwrap());
    }
    for n in 1..=7 {
        out.push(gen_complete(n).unwrap());
    }
    for (s, t) in [(1, 1), (1, 4), (2, 3), (2, 5), (3, 3), (3, 4)] {
        out.push(gen_complete_bipartite(s, t).unwrap());
    }
    for m in 1..=6 {
        out.push(gen_matching(m).unwrap());
    }
    for (k, s) in [(1, 3), (2, 2), (3, 2), (3, 3)] {
        out.push(gen_star_forest(k, s).unwrap());
    }
    for s in 1..=3 {
        out.push(gen_gs(s).unwrap());
    }
    for n in [3, 4, 5, 8, 10, 12] {
        out.push(gen_stacked_triangulation(n).unwrap());
    }
    out
}
