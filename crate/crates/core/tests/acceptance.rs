//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Expected values either come from closed forms or
//! are recomputed here by brute force with predicates written independently
//! of the library.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use planarity_core::generators::*;
use planarity_core::geometry::{apex_points, convex_positions};
use planarity_core::obfuscate::{
    default_order, derandomized_obfuscate_traced, family_optimal_drawing, obfuscate, ObfuscateOptions,
};
use planarity_core::puzzle::{encode_puzzle, run_pipeline};
use planarity_core::untangle::{
    apex_untangle, build_intersection_graph, matching_shift_complexity, max_independent_set, reference_untangle,
    shrink_untangle,
};
use planarity_core::{bounds_report, Drawing, Family, Graph, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

// ---------------------------------------------------------------------------
// Independent oracles

fn cross(o: Point, a: Point, b: Point) -> i128 {
    (a.x as i128 - o.x as i128) * (b.y as i128 - o.y as i128) - (a.y as i128 - o.y as i128) * (b.x as i128 - o.x as i128)
}

fn on_open_segment(p: Point, a: Point, b: Point) -> bool {
    cross(a, b, p) == 0
        && p != a
        && p != b
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Interiors meet in exactly one point.
fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let (d1, d2) = (cross(a, b, c).signum(), cross(a, b, d).signum());
    let (d3, d4) = (cross(c, d, a).signum(), cross(c, d, b).signum());
    d1 * d2 < 0 && d3 * d4 < 0
}

fn collinear_overlap(a: Point, b: Point, c: Point, d: Point) -> bool {
    cross(a, b, c) == 0
        && cross(a, b, d) == 0
        && (on_open_segment(c, a, b) || on_open_segment(d, a, b) || on_open_segment(a, c, d) || {
            let (lo, hi) = if (a.x, a.y) < (b.x, b.y) { (a, b) } else { (b, a) };
            let (lo2, hi2) = if (c.x, c.y) < (d.x, d.y) { (c, d) } else { (d, c) };
            lo == lo2 && hi == hi2
        })
}

fn in_general_position(edges: &[(usize, usize)], pos: &[Point]) -> bool {
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            if pos[i] == pos[j] {
                return false;
            }
        }
    }
    for (k, &(u, v)) in edges.iter().enumerate() {
        if pos.iter().any(|&p| on_open_segment(p, pos[u], pos[v])) {
            return false;
        }
        for &(s, t) in &edges[k + 1..] {
            if collinear_overlap(pos[u], pos[v], pos[s], pos[t]) {
                return false;
            }
        }
    }
    true
}

fn oracle_crossings(edges: &[(usize, usize)], pos: &[Point]) -> u64 {
    let mut count = 0;
    for (k, &(u, v)) in edges.iter().enumerate() {
        for &(s, t) in &edges[k + 1..] {
            if u != s && u != t && v != s && v != t && segments_cross(pos[u], pos[v], pos[s], pos[t]) {
                count += 1;
            }
        }
    }
    count
}

fn oracle_epsilon_pairs(edges: &[(usize, usize)]) -> u64 {
    let mut count = 0;
    for (k, &(u, v)) in edges.iter().enumerate() {
        for &(s, t) in &edges[k + 1..] {
            if u != s && u != t && v != s && v != t {
                count += 1;
            }
        }
    }
    count
}

fn oracle_epsilon_degrees(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut deg = vec![0u64; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let m = edges.len() as u64;
    (m * (m + 1) - deg.iter().map(|d| d * d).sum::<u64>()) / 2
}

/// Largest set of pairwise non-crossing segments, by trying every subset.
fn oracle_alpha(edges: &[(usize, usize)], pos: &[Point]) -> usize {
    let m = edges.len();
    let crosses = |i: usize, j: usize| {
        let ((a, b), (c, d)) = (edges[i], edges[j]);
        segments_cross(pos[a], pos[b], pos[c], pos[d])
    };
    (0u32..1 << m)
        .filter(|mask| (0..m).all(|i| mask >> i & 1 == 0 || (i + 1..m).all(|j| mask >> j & 1 == 0 || !crosses(i, j))))
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn random_matching_positions(rng: &mut ChaCha8Rng, m: usize, range: i64) -> Vec<Point> {
    let edges: Vec<(usize, usize)> = (0..m).map(|i| (2 * i, 2 * i + 1)).collect();
    loop {
        let pos: Vec<Point> = (0..2 * m).map(|_| Point::new(rng.gen_range(0..range), rng.gen_range(0..range))).collect();
        if in_general_position(&edges, &pos) {
            return pos;
        }
    }
}

// ---------------------------------------------------------------------------
// Instance suite

/// Random stacked triangulation with edges removed at random while every
/// degree stays at least 2. The surviving layout keeps it certified planar.
fn random_sub_triangulation(n: usize, seed: u64) -> Graph {
    let t = random_stacked_triangulation(n, seed).unwrap();
    let layout = t.reference_layout().unwrap().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut edges = t.edges().to_vec();
    let mut deg = t.degrees();
    for _ in 0..edges.len() / 3 {
        let k = rng.gen_range(0..edges.len());
        let (u, v) = edges[k];
        if deg[u] > 2 && deg[v] > 2 {
            deg[u] -= 1;
            deg[v] -= 1;
            edges.swap_remove(k);
        }
    }
    Graph::new(n, edges).unwrap().with_name(format!("sub-T_{n}#{seed}")).with_reference_layout(layout).unwrap()
}

fn suite() -> Vec<Graph> {
    let mut out = Vec::new();
    for n in [3, 4, 5, 8, 13, 21, 30] {
        out.push(gen_cycle(n).unwrap());
    }
    for n in 1..=8 {
        out.push(gen_complete(n).unwrap());
    }
    for (s, t) in [(1, 1), (2, 5), (3, 3), (4, 5), (5, 6)] {
        out.push(gen_complete_bipartite(s, t).unwrap());
    }
    for m in [1, 2, 5, 10, 15] {
        out.push(gen_matching(m).unwrap());
    }
    for (k, s) in [(1, 5), (2, 4), (3, 3), (4, 5)] {
        out.push(gen_star_forest(k, s).unwrap());
    }
    for s in 1..=5 {
        out.push(gen_gs(s).unwrap());
    }
    for n in [3, 5, 10, 20, 30] {
        out.push(gen_stacked_triangulation(n).unwrap());
    }
    for seed in 0..15u64 {
        out.push(random_sub_triangulation(8 + (seed as usize * 11) % 23, seed));
    }
    out
}

fn label(g: &Graph) -> String {
    g.name().unwrap_or("unnamed").to_string()
}

// ---------------------------------------------------------------------------
// Criteria

fn exact_counts() -> Outcome {
    for (n, want) in (5..=9).zip([5u64, 15, 35, 70, 126]) {
        let g = gen_complete(n).unwrap();
        let d = Drawing::new(g, convex_positions(n).unwrap()).unwrap();
        let got = d.count_crossings().unwrap().count;
        ensure!(got == want, "K_{n} on convex position: {got} != {want}");
    }
    for ((s, t), want) in [((3, 3), 9u64), ((3, 4), 18), ((4, 4), 36)] {
        let g = gen_complete_bipartite(s, t).unwrap();
        let rows: Vec<Point> =
            (0..s as i64).map(|i| Point::new(i, 0)).chain((0..t as i64).map(|j| Point::new(j, 1))).collect();
        let got = Drawing::new(g, rows).unwrap().count_crossings().unwrap().count;
        ensure!(got == want, "K_{{{s},{t}}} on two rows: {got} != {want}");
    }
    for (n, want) in [5, 7, 9, 11, 13].into_iter().zip([5u64, 14, 27, 44, 65]) {
        let d = family_optimal_drawing(&gen_cycle(n).unwrap()).unwrap();
        let got = d.count_crossings().unwrap().count;
        ensure!(got == want, "star drawing of C_{n}: {got} != {want}");
        ensure!(got == oracle_crossings(d.graph().edges(), d.positions()), "C_{n}: oracle disagrees");
    }
    for (s, want) in (2..=5).zip([12u64, 27, 48, 75]) {
        let d = family_optimal_drawing(&gen_star_forest(3, s).unwrap()).unwrap();
        let got = d.count_crossings().unwrap().count;
        ensure!(got == want, "3K_{{1,{s}}}: {got} != {want}");
        ensure!(got == oracle_crossings(d.graph().edges(), d.positions()), "3K_{{1,{s}}}: oracle disagrees");
    }
    Ok("K_n, K_{s,t}, C_n star and 3K_{1,s} counts all exact".into())
}

fn greedy_guarantee(suite: &[Graph]) -> Outcome {
    let mut steps = 0;
    for g in suite {
        let trace = derandomized_obfuscate_traced(g, &default_order(g)).unwrap();
        let eps = g.epsilon();
        let count = oracle_crossings(g.edges(), trace.drawing.positions());
        ensure!(3 * count >= eps, "{}: {count} crossings < epsilon/3 = {eps}/3", label(g));
        ensure!(
            trace.expectations[0] == Ratio::new(eps as u128, 3),
            "{}: initial expectation {} != {eps}/3",
            label(g),
            trace.expectations[0]
        );
        for (i, w) in trace.expectations.windows(2).enumerate() {
            ensure!(w[1] >= w[0], "{}: expectation drops at step {i}: {} -> {}", label(g), w[0], w[1]);
        }
        let last = *trace.expectations.last().unwrap();
        ensure!(last == Ratio::from_integer(count as u128), "{}: final expectation {last} != {count}", label(g));
        steps += trace.expectations.len() - 1;
    }
    Ok(format!("{} instances, {steps} greedy steps, all monotone and >= epsilon/3", suite.len()))
}

fn epsilon_oracle(suite: &[Graph]) -> Outcome {
    for g in suite {
        let pairs = oracle_epsilon_pairs(g.edges());
        let degrees = oracle_epsilon_degrees(g.vertex_count(), g.edges());
        ensure!(
            g.epsilon() == pairs && pairs == degrees,
            "{}: epsilon {} vs enumeration {pairs} vs degree form {degrees}",
            label(g),
            g.epsilon()
        );
    }
    Ok(format!("{} instances agree with both forms", suite.len()))
}

fn cycle_constant() -> Outcome {
    for n in [10u64, 100, 1000] {
        let eps = gen_cycle(n as usize).unwrap().epsilon();
        // eps / n^2 >= 1/2 - 3/(2n)  <=>  2 n eps >= n^2 (n - 3)
        let lhs = Ratio::new(eps as u128, (n * n) as u128);
        let rhs = Ratio::new(1u128, 2) - Ratio::new(3u128, 2 * n as u128);
        ensure!(lhs >= rhs, "C_{n}: {lhs} < {rhs}");
    }
    Ok("n = 10, 100, 1000 satisfy the bound exactly".into())
}

fn planar_quadratic(suite: &[Graph]) -> Outcome {
    let mut checked = 0;
    for g in suite.iter().filter(|g| g.is_certified_planar()) {
        let n = g.vertex_count() as u64;
        let mut drawings = vec![
            derandomized_obfuscate_traced(g, &default_order(g)).unwrap().drawing,
            obfuscate(g, &ObfuscateOptions::default()).unwrap(),
        ];
        if let Ok(d) = family_optimal_drawing(g) {
            drawings.push(d);
        }
        if let Some(family) = g.family() {
            drawings.push(run_pipeline(family, 1).unwrap().drawing);
        }
        for d in drawings {
            let count = oracle_crossings(g.edges(), d.positions());
            ensure!(count < 3 * n * n, "{}: {count} >= 3n^2 = {}", label(g), 3 * n * n);
            checked += 1;
        }
    }
    Ok(format!("{checked} drawings of planar graphs, zero violations"))
}

fn matching_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut total_shifts = 0;
    for i in 0..100 {
        let m = 1 + i % 10;
        let pos = random_matching_positions(&mut rng, m, 60);
        let d = Drawing::new(gen_matching(m).unwrap(), pos.clone()).unwrap();
        let alpha = oracle_alpha(d.graph().edges(), &pos);
        let shift = matching_shift_complexity(&d).unwrap();
        ensure!(shift == m - alpha, "instance {i}: shift {shift} != m - alpha = {}", m - alpha);
        let keep = max_independent_set(&build_intersection_graph(&d).unwrap()).unwrap();
        let r = shrink_untangle(&d, &keep).map_err(|e| format!("instance {i}: {e}"))?;
        let fin = r.final_drawing.positions();
        ensure!(in_general_position(d.graph().edges(), fin), "instance {i}: result not in general position");
        ensure!(oracle_crossings(d.graph().edges(), fin) == 0, "instance {i}: result has crossings");
        let moved = pos.iter().zip(fin).filter(|(a, b)| a != b).count();
        ensure!(moved == m - alpha && r.shifts == moved, "instance {i}: {moved} moves, expected {}", m - alpha);
        total_shifts += moved;
    }
    Ok(format!("100 matchings, {total_shifts} shifts in total, all equal to m - alpha"))
}

fn optimality_spot_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut configurations = 0u64;
    for i in 0..20 {
        // Draw until the instance is as tangled as it can be: a crossing
        // pair for m = 2, three pairwise crossing segments for m = 3.
        let m = 2 + i % 2;
        let edges: Vec<(usize, usize)> = (0..m).map(|k| (2 * k, 2 * k + 1)).collect();
        let pos = loop {
            let pos = random_matching_positions(&mut rng, m, 10);
            if oracle_alpha(&edges, &pos) == 1 {
                break pos;
            }
        };
        let need = m - 1;
        // Every drawing reachable with fewer than `need` moves must still cross.
        // With m <= 3, need <= 2, so at most one vertex moves.
        for k in 0..need {
            ensure!(k <= 1, "instance {i}: unexpected search depth");
            if k == 0 {
                ensure!(oracle_crossings(&edges, &pos) > 0, "instance {i}: already crossing-free but need {need}");
                continue;
            }
            for v in 0..2 * m {
                let others: Vec<Point> = (0..2 * m).filter(|&w| w != v).map(|w| pos[w]).collect();
                let (x, y) = apex_points(&others).unwrap();
                let grid = (-3..=13).flat_map(|a| (-3..=13).map(move |b| Point::new(a, b)));
                for p in grid.chain([x, y]) {
                    let mut moved = pos.clone();
                    moved[v] = p;
                    configurations += 1;
                    if in_general_position(&edges, &moved) && oracle_crossings(&edges, &moved) == 0 {
                        return Err(format!("instance {i}: moving vertex {v} to {p} untangles in 1 < {need}"));
                    }
                }
            }
        }
        let d = Drawing::new(gen_matching(m).unwrap(), pos).unwrap();
        let keep = max_independent_set(&build_intersection_graph(&d).unwrap()).unwrap();
        let r = shrink_untangle(&d, &keep).map_err(|e| e.to_string())?;
        ensure!(r.shifts == need, "instance {i}: shrink used {} shifts, need {need}", r.shifts);
    }
    Ok(format!("20 instances, {configurations} cheaper configurations ruled out"))
}

fn apex_lemma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..200 {
        let size = 1 + i % 12;
        let mut z: Vec<Point> = Vec::new();
        while z.len() < size {
            let p = Point::new(rng.gen_range(-50..50), rng.gen_range(-50..50));
            if !z.contains(&p) {
                z.push(p);
            }
        }
        let (x, y) = apex_points(&z).unwrap();
        let apexes = [x, y];
        let segments: Vec<(Point, Point)> = apexes.iter().flat_map(|&a| z.iter().map(move |&p| (a, p))).collect();
        ensure!(!z.contains(&x) && !z.contains(&y) && x != y, "set {i}: apex collides with a point");
        for &(a, b) in &segments {
            let blocked = z.iter().chain(&apexes).any(|&q| on_open_segment(q, a, b));
            ensure!(!blocked, "set {i}: a point lies inside segment {a}-{b}");
        }
        for (k, &(a, b)) in segments.iter().enumerate() {
            for &(c, d) in &segments[k + 1..] {
                ensure!(!segments_cross(a, b, c, d), "set {i}: segments {a}-{b} and {c}-{d} cross");
                ensure!(!collinear_overlap(a, b, c, d), "set {i}: segments {a}-{b} and {c}-{d} overlap");
            }
        }
    }
    let mut solved = 0;
    for s in 3..=8 {
        let g = gen_complete_bipartite(2, s).unwrap();
        let mut drawings = vec![family_optimal_drawing(&g).unwrap()];
        while drawings.len() < 6 {
            let pos: Vec<Point> = (0..s + 2).map(|_| Point::new(rng.gen_range(0..30), rng.gen_range(0..30))).collect();
            if in_general_position(g.edges(), &pos) {
                drawings.push(Drawing::new(g.clone(), pos).unwrap());
            }
        }
        for d in drawings {
            let r = apex_untangle(&d, &[0, 1]).map_err(|e| format!("K_{{2,{s}}}: {e}"))?;
            let fin = r.final_drawing.positions();
            let moved = d.positions().iter().zip(fin).filter(|(a, b)| a != b).count();
            ensure!(moved <= 2, "K_{{2,{s}}}: {moved} shifts");
            ensure!(in_general_position(g.edges(), fin), "K_{{2,{s}}}: result not in general position");
            ensure!(oracle_crossings(g.edges(), fin) == 0, "K_{{2,{s}}}: result has crossings");
            solved += 1;
        }
    }
    Ok(format!("200 point sets pass, {solved} K_{{2,s}} drawings solved in <= 2 shifts"))
}

fn subdivided_triangle() -> Outcome {
    let mut lower = Vec::new();
    for s in 2..=5 {
        let g = gen_gs(s).unwrap();
        ensure!(g.vertex_count() == 3 * s + 3, "G_{s}: {} vertices", g.vertex_count());
        ensure!(g.edge_count() == 6 * s, "G_{s}: {} edges", g.edge_count());
        ensure!(g.matching_number() == Ok(3), "G_{s}: matching number {:?}", g.matching_number());
        let d = family_optimal_drawing(&g).unwrap();
        ensure!(d.validate().is_empty(), "G_{s}: D_s drawing invalid");
        ensure!(in_general_position(g.edges(), d.positions()), "G_{s}: oracle rejects D_s");
        let r = reference_untangle(&d).unwrap();
        ensure!(oracle_crossings(g.edges(), r.final_drawing.positions()) == 0, "G_{s}: reference untangle crosses");
        lower.push(bounds_report(&g).shift_lower);
    }
    Ok(format!("s = 2..5 check out; reported shift lower bounds {lower:?}"))
}

fn determinism() -> Outcome {
    let families = [
        Family::Cycle(9),
        Family::Complete(7),
        Family::CompleteBipartite(3, 5),
        Family::Matching(9),
        Family::StarForest(3, 4),
        Family::SubdividedTriangle(4),
        Family::StackedTriangulation(25),
    ];
    for family in families {
        for seed in [0, 1, 42] {
            let a = encode_puzzle(&run_pipeline(family, seed).unwrap());
            let b = encode_puzzle(&run_pipeline(family, seed).unwrap());
            ensure!(a == b, "{family} seed {seed}: outputs differ");
        }
    }
    Ok(format!("{} family/seed pairs byte-identical", families.len() * 3))
}

// ---------------------------------------------------------------------------

fn run(name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|panic| {
        let msg = panic
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let outcome = match (outcome, limit) {
        (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
        (o, _) => o,
    };
    match &outcome {
        Ok(detail) => println!("PASS  {name}: {detail} ({elapsed:.2?})"),
        Err(detail) => println!("FAIL  {name}: {detail} ({elapsed:.2?})"),
    }
    outcome.is_ok()
}

fn main() {
    let suite = suite();
    let results = [
        run("exact closed-form crossing counts", Some(Duration::from_secs(1)), exact_counts),
        run("greedy placement reaches epsilon/3 with monotone expectation", Some(Duration::from_secs(120)), || {
            greedy_guarantee(&suite)
        }),
        run("epsilon matches both brute-force forms", None, || epsilon_oracle(&suite)),
        run("cycle constant epsilon(C_n)/n^2 >= 1/2 - 3/(2n)", None, cycle_constant),
        run("planar drawings stay below 3n^2 crossings", None, || planar_quadratic(&suite)),
        run("matching shift complexity equals m - alpha", Some(Duration::from_secs(60)), matching_equivalence),
        run("no cheaper untangling for small matchings", None, optimality_spot_check),
        run("apex points and two-shift K_{2,s} untangling", None, apex_lemma),
        run("subdivided triangle family G_s", None, subdivided_triangle),
        run("pipeline output is byte-identical for a fixed seed", None, determinism),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
