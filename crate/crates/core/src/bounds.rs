//! Shift and obfuscation bounds derived from simple graph parameters.

use serde::{Deserialize, Serialize};

use crate::graph::{Family, Graph};

/// Where a reported bound comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// Nothing better than the trivial value.
    Trivial,
    /// `shift >= nu - 1`: a matching drawn as pairwise crossing segments.
    MatchingNumber,
    /// Connected planar, minimum degree at least 3, `n >= 10`: `shift >= (n-1)/3`.
    MinDegreeThree,
    /// 4-connected planar: `shift >= (n-3)/2`.
    FourConnected,
    /// The subdivided triangle `G_s` admits a drawing needing `2s - 6` shifts.
    SubdividedTriangle,
    /// Every planar graph has a straight-line plane drawing: `shift <= n - 3`.
    StraightLineEmbedding,
    /// `obf <= epsilon`, the number of disjoint edge pairs.
    DisjointEdgePairs,
    /// `obf < 3 n^2` for planar graphs.
    PlanarQuadratic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub epsilon: u64,
    /// Matching number, absent when the graph exceeds the exact-search cap.
    pub nu: Option<usize>,
    pub shift_lower: usize,
    pub shift_upper: usize,
    pub obf_upper: u64,
    pub planar_certified: bool,
    pub shift_lower_source: BoundSource,
    pub shift_upper_source: BoundSource,
    pub obf_upper_source: BoundSource,
}

pub fn bounds_report(g: &Graph) -> BoundsReport {
    let n = g.vertex_count();
    let epsilon = g.epsilon();
    let planar = g.is_certified_planar();
    let nu = g.matching_number().ok();

    let mut lower = (0, BoundSource::Trivial);
    let mut raise = |value: usize, source: BoundSource| {
        if value > lower.0 {
            lower = (value, source);
        }
    };
    if let Some(nu) = nu {
        raise(nu.saturating_sub(1), BoundSource::MatchingNumber);
    }
    if planar && n >= 10 {
        let stats = g.degree_stats();
        if stats.min_degree >= 3 && g.is_connected() {
            raise((n - 1).div_ceil(3), BoundSource::MinDegreeThree);
        }
        // 4-connectivity forces minimum degree 4; skip the subset search otherwise.
        if stats.min_degree >= 4 && g.is_k_connected(4).unwrap_or(false) {
            raise((n - 3).div_ceil(2), BoundSource::FourConnected);
        }
    }
    if planar {
        if let Some(Family::SubdividedTriangle(s)) = g.verified_family() {
            raise((2 * s).saturating_sub(6), BoundSource::SubdividedTriangle);
        }
    }

    let (shift_upper, shift_upper_source) = if n >= 3 {
        (n - 3, BoundSource::StraightLineEmbedding)
    } else {
        (0, BoundSource::Trivial)
    };
    let quadratic = 3 * (n as u64) * (n as u64);
    let (obf_upper, obf_upper_source) = if planar && quadratic.saturating_sub(1) < epsilon {
        (quadratic - 1, BoundSource::PlanarQuadratic)
    } else {
        (epsilon, BoundSource::DisjointEdgePairs)
    };

    BoundsReport {
        epsilon,
        nu,
        shift_lower: lower.0,
        shift_upper,
        obf_upper,
        planar_certified: planar,
        shift_lower_source: lower.1,
        shift_upper_source,
        obf_upper_source,
    }
}
