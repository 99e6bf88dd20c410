//! Exact integer geometry.
//!
//! Every coordinate is an `i64` bounded by [`COORD_CAP`]. Differences of two
//! coordinates then fit in 42 bits and every 3-point determinant fits in an
//! `i128` with plenty of headroom, so all predicates below are exact.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest admissible absolute coordinate value (2^40).
pub const COORD_CAP: i64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("coordinate {value} exceeds the cap of 2^40")]
    CoordinateCap { value: i128 },
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    /// Builds a point from wide coordinates, rejecting anything beyond the cap.
    pub fn checked(x: i128, y: i128) -> Result<Self, GeometryError> {
        for value in [x, y] {
            if value.abs() > COORD_CAP as i128 {
                return Err(GeometryError::CoordinateCap { value });
            }
        }
        Ok(Point::new(x as i64, y as i64))
    }

    pub fn within_cap(&self) -> bool {
        self.x.abs() <= COORD_CAP && self.y.abs() <= COORD_CAP
    }

    pub fn check_cap(&self) -> Result<(), GeometryError> {
        Point::checked(self.x as i128, self.y as i128).map(|_| ())
    }

    pub fn within(&self, cap: i64) -> bool {
        self.x.abs() <= cap && self.y.abs() <= cap
    }

    /// Squared euclidean distance, exact.
    pub fn dist2(&self, other: &Point) -> i128 {
        let dx = self.x as i128 - other.x as i128;
        let dy = self.y as i128 - other.y as i128;
        dx * dx + dy * dy
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point::new(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        debug_assert!(a != b, "segment endpoints must differ");
        Segment { a, b }
    }

    pub fn shares_endpoint(&self, other: &Segment) -> bool {
        self.a == other.a || self.a == other.b || self.b == other.a || self.b == other.b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    fn from_det(det: i128) -> Self {
        match det.cmp(&0) {
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
            Ordering::Greater => Orientation::CounterClockwise,
        }
    }
}

/// `(q - p) x (r - p)` in wide arithmetic. Callers guarantee the cap.
#[inline]
pub(crate) fn cross(p: Point, q: Point, r: Point) -> i128 {
    let (px, py) = (p.x as i128, p.y as i128);
    (q.x as i128 - px) * (r.y as i128 - py) - (q.y as i128 - py) * (r.x as i128 - px)
}

#[inline]
pub(crate) fn orient_unchecked(p: Point, q: Point, r: Point) -> Orientation {
    Orientation::from_det(cross(p, q, r))
}

/// Orientation of the triple `(p, q, r)`.
pub fn orient(p: Point, q: Point, r: Point) -> Result<Orientation, GeometryError> {
    p.check_cap()?;
    q.check_cap()?;
    r.check_cap()?;
    Ok(orient_unchecked(p, q, r))
}

/// `true` iff `p` lies strictly between the endpoints of `s` on its line.
pub fn point_in_open_segment(p: Point, s: &Segment) -> bool {
    if p == s.a || p == s.b {
        return false;
    }
    if cross(s.a, s.b, p) != 0 {
        return false;
    }
    strictly_between(s.a.x, s.b.x, p.x) || strictly_between(s.a.y, s.b.y, p.y)
}

fn strictly_between(a: i64, b: i64, v: i64) -> bool {
    a.min(b) < v && v < a.max(b)
}

/// Two segments cross properly when their open interiors meet in exactly one
/// point. Segments sharing an endpoint never cross. A collinear overlap is
/// reported as [`GeometryError::Degenerate`].
pub fn properly_cross(s1: &Segment, s2: &Segment) -> Result<bool, GeometryError> {
    for p in [s1.a, s1.b, s2.a, s2.b] {
        p.check_cap()?;
    }
    properly_cross_unchecked(s1, s2)
}

pub(crate) fn properly_cross_unchecked(s1: &Segment, s2: &Segment) -> Result<bool, GeometryError> {
    let o1 = cross(s1.a, s1.b, s2.a).signum();
    let o2 = cross(s1.a, s1.b, s2.b).signum();
    let o3 = cross(s2.a, s2.b, s1.a).signum();
    let o4 = cross(s2.a, s2.b, s1.b).signum();

    if o1 == 0 && o2 == 0 {
        if collinear_overlap(s1, s2) {
            return Err(GeometryError::Degenerate(format!(
                "segments {}-{} and {}-{} overlap",
                s1.a, s1.b, s2.a, s2.b
            )));
        }
        return Ok(false);
    }
    if s1.shares_endpoint(s2) {
        return Ok(false);
    }
    Ok(o1 * o2 < 0 && o3 * o4 < 0)
}

/// Collinear segments overlap when their projections share more than a point.
fn collinear_overlap(s1: &Segment, s2: &Segment) -> bool {
    // Project on the dominant axis of s1 so vertical segments are handled.
    let key = |p: Point| -> i64 {
        if s1.a.x != s1.b.x {
            p.x
        } else {
            p.y
        }
    };
    let (lo1, hi1) = minmax(key(s1.a), key(s1.b));
    let (lo2, hi2) = minmax(key(s2.a), key(s2.b));
    lo1.max(lo2) < hi1.min(hi2)
}

fn minmax(a: i64, b: i64) -> (i64, i64) {
    (a.min(b), a.max(b))
}

/// `n` integer points in strictly convex position, in cyclic order.
///
/// The points lie on the parabola `y = x^2`, so two chords cross exactly when
/// their endpoint indices interleave, as they would on a circle.
pub fn convex_positions(n: usize) -> Result<Vec<Point>, GeometryError> {
    let half = (n as i128 - 1) / 2;
    (0..n as i128)
        .map(|i| {
            let x = i - half;
            Point::checked(x, x * x)
        })
        .collect()
}

/// Two apex points `x`, `y` such that all segments from `{x, y}` to `z` are
/// pairwise non-crossing and contain no point of `z` in their interiors.
///
/// The "upward" direction is `(1, k)` with `k` larger than the vertical extent
/// of `z`, which is parallel to no line through two points of `z`. Both apexes
/// sit on the line through a base point left of `z`, far enough out that `x`
/// is above and `y` below every such line.
pub fn apex_points(z: &[Point]) -> Result<(Point, Point), GeometryError> {
    let first = z
        .first()
        .ok_or_else(|| GeometryError::Degenerate("apex construction needs at least one point".into()))?;
    for p in z {
        p.check_cap()?;
    }
    let min_x = z.iter().map(|p| p.x as i128).min().unwrap_or(first.x as i128);
    let min_y = z.iter().map(|p| p.y as i128).min().unwrap_or(first.y as i128);
    let max_y = z.iter().map(|p| p.y as i128).max().unwrap_or(first.y as i128);

    let slope = max_y - min_y + 1;
    let (base_x, base_y) = (min_x - 1, min_y);

    // Smallest integer step pushing both apexes strictly past every line.
    let mut step: i128 = 1;
    for (i, p) in z.iter().enumerate() {
        for q in &z[i + 1..] {
            if p == q {
                return Err(GeometryError::Degenerate(format!("repeated point {p}")));
            }
            let ux = q.x as i128 - p.x as i128;
            let uy = q.y as i128 - p.y as i128;
            let across = ux * slope - uy;
            let offset = ux * (base_y - p.y as i128) - uy * (base_x - p.x as i128);
            step = step.max(offset.abs() / across.abs() + 1);
        }
    }
    let above = Point::checked(base_x + step, base_y + step * slope)?;
    let below = Point::checked(base_x - step, base_y - step * slope)?;
    Ok((above, below))
}

/// Checks the apex property: every segment from an apex to a point of `z`
/// avoids the other points of `z` and no two such segments cross.
pub fn apex_property_holds(apexes: &[Point], z: &[Point]) -> bool {
    let mut segments = Vec::with_capacity(apexes.len() * z.len());
    for &apex in apexes {
        if z.contains(&apex) {
            return false;
        }
        for &p in z {
            segments.push(Segment::new(apex, p));
        }
    }
    for s in &segments {
        if z.iter().chain(apexes).any(|&p| point_in_open_segment(p, s)) {
            return false;
        }
    }
    for (i, s) in segments.iter().enumerate() {
        for t in &segments[i + 1..] {
            match properly_cross(s, t) {
                Ok(false) => {}
                _ => return false,
            }
        }
    }
    true
}
