//! Closed-form invariants for bridges, circles and elementary graphs, and
//! the additive evaluation over the pointed-sum decomposition.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::admissible::{invariant_bundle, InvariantBundle, InvariantError};
use crate::graph::PolarizedGraph;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClosedFormError {
    #[error("genus must be at least 1")]
    GenusZero,
    #[error("bridge side genus {side} is not between 1 and g - 1 = {}", .genus - 1)]
    BadBridgeSide { genus: u64, side: u64 },
    #[error("circle needs at least one mark")]
    NoMarks,
    #[error("lengths must be positive")]
    NonPositiveLength,
}

fn g_s<S: Scalar>(g: u64) -> S {
    S::from_i64(g as i64)
}

/// Segment of length `len` whose ends carry genus `side` and `g - side`.
pub fn bridge_bundle<S: Scalar>(g: u64, side: u64, len: S) -> Result<InvariantBundle<S>, ClosedFormError> {
    if side == 0 || side >= g {
        return Err(ClosedFormError::BadBridgeSide { genus: g, side });
    }
    if !len.is_positive() {
        return Err(ClosedFormError::NonPositiveLength);
    }
    let gg = g_s::<S>(g);
    let prod = S::from_i64((side * (g - side)) as i64);
    let mut type_lengths = BTreeMap::new();
    type_lengths.insert(side.min(g - side), len.clone());
    Ok(InvariantBundle {
        genus: g,
        total_length: len.clone(),
        tau: prod.clone() * len.clone() / (gg.clone() * gg.clone()),
        epsilon: (S::from_i64(4) * prod.clone() / gg.clone() - S::one()) * len.clone(),
        phi: S::from_i64(2) * prod.clone() * len.clone() / gg.clone(),
        lambda: prod * len / S::from_i64(2 * g as i64 + 1),
        type_lengths,
    })
}

/// A circle of length `len` through one vertex carrying genus `g - 1`.
pub fn single_vertex_circle_bundle<S: Scalar>(g: u64, len: S) -> Result<InvariantBundle<S>, ClosedFormError> {
    if g == 0 {
        return Err(ClosedFormError::GenusZero);
    }
    circle_bundle(&[CircleMark { q: g - 1, gap: len }])
}

/// A point on a circle: its genus and the arc length to the next mark.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleMark<S> {
    pub q: u64,
    pub gap: S,
}

/// Circle with marked points; genus is `1 + sum q`.
pub fn circle_bundle<S: Scalar>(marks: &[CircleMark<S>]) -> Result<InvariantBundle<S>, ClosedFormError> {
    if marks.is_empty() {
        return Err(ClosedFormError::NoMarks);
    }
    if marks.iter().any(|m| !m.gap.is_positive()) {
        return Err(ClosedFormError::NonPositiveLength);
    }
    let g = 1 + marks.iter().map(|m| m.q).sum::<u64>();
    let len = marks.iter().fold(S::zero(), |a, m| a + m.gap.clone());
    // Position of each mark along the circle.
    let mut pos = Vec::with_capacity(marks.len());
    let mut acc = S::zero();
    for m in marks {
        pos.push(acc.clone());
        acc = acc + m.gap.clone();
    }
    // Sum over unordered pairs of q_A q_B r(A, B).
    let mut pairs = S::zero();
    for a in 0..marks.len() {
        for b in (a + 1)..marks.len() {
            let d = pos[b].clone() - pos[a].clone();
            let r = d.clone() * (len.clone() - d) / len.clone();
            pairs = pairs + S::from_i64((marks[a].q * marks[b].q) as i64) * r;
        }
    }
    let gg = g_s::<S>(g);
    let gi = g as i64;
    let mut type_lengths = BTreeMap::new();
    type_lengths.insert(0, len.clone());
    Ok(InvariantBundle {
        genus: g,
        total_length: len.clone(),
        tau: pairs.clone() / (gg.clone() * gg.clone())
            + S::ratio(2 * gi - 1, 12 * gi * gi) * len.clone(),
        epsilon: S::from_i64(4) * pairs.clone() / gg.clone() + S::ratio(gi - 1, 3 * gi) * len.clone(),
        phi: S::from_i64(2) * pairs.clone() / gg.clone() + S::ratio(gi - 1, 6 * gi) * len.clone(),
        lambda: S::from_i64(2) * pairs / S::from_i64(4 * gi + 2) + S::ratio(gi, 8 * gi + 4) * len,
        type_lengths,
    })
}

/// Fieldwise sum of bundles of the same genus.
pub fn sum_bundles<S: Scalar>(genus: u64, parts: &[InvariantBundle<S>]) -> InvariantBundle<S> {
    let mut out = InvariantBundle {
        genus,
        total_length: S::zero(),
        tau: S::zero(),
        epsilon: S::zero(),
        phi: S::zero(),
        lambda: S::zero(),
        type_lengths: BTreeMap::new(),
    };
    for p in parts {
        debug_assert_eq!(p.genus, genus);
        out.total_length = out.total_length + p.total_length.clone();
        out.tau = out.tau + p.tau.clone();
        out.epsilon = out.epsilon + p.epsilon.clone();
        out.phi = out.phi + p.phi.clone();
        out.lambda = out.lambda + p.lambda.clone();
        for (k, v) in &p.type_lengths {
            let e = out.type_lengths.entry(*k).or_insert_with(S::zero);
            *e = e.clone() + v.clone();
        }
    }
    out
}

/// Marks of a cycle block in cyclic order, with each vertex carrying the
/// genus hanging off it.
fn cycle_marks<S: Scalar>(g: &PolarizedGraph<S>, block: &[usize]) -> Vec<CircleMark<S>> {
    let edges = g.edges();
    let start = edges[block[0]].ends.0;
    let mut used = vec![false; block.len()];
    let mut marks = Vec::with_capacity(block.len());
    let mut at = start;
    for _ in 0..block.len() {
        let k = (0..block.len())
            .find(|&k| !used[k] && (edges[block[k]].ends.0 == at || edges[block[k]].ends.1 == at))
            .expect("block is a cycle");
        used[k] = true;
        let e = &edges[block[k]];
        marks.push(CircleMark {
            q: g.fiber_genus(block, at),
            gap: e.length.clone(),
        });
        at = e.other(at);
    }
    marks
}

/// Sum of closed forms over the blocks of an elementary graph; `None` if
/// some block is neither a bridge nor a cycle.
pub fn elementary_bundle<S: Scalar>(g: &PolarizedGraph<S>) -> Option<InvariantBundle<S>> {
    let genus = g.genus();
    if genus == 0 || !g.is_elementary() {
        return None;
    }
    let bridges = g.bridges();
    let mut parts = Vec::new();
    for block in g.blocks() {
        if block.len() == 1 && bridges[block[0]] {
            let e = &g.edges()[block[0]];
            let side = g.fiber_genus(&block, e.ends.0);
            parts.push(bridge_bundle(genus, side, e.length.clone()).ok()?);
        } else {
            parts.push(circle_bundle(&cycle_marks(g, &block)).ok()?);
        }
    }
    Some(sum_bundles(genus, &parts))
}

/// Invariants as a sum over the pointed-sum decomposition: closed forms
/// for bridges and circles, the admissible computation for other pieces.
pub fn additive_bundle<S: Scalar>(g: &PolarizedGraph<S>) -> Result<InvariantBundle<S>, InvariantError> {
    let genus = g.genus();
    if genus == 0 {
        return Err(InvariantError::GenusZero);
    }
    let mut parts = Vec::new();
    for piece in g.decompose_pointed_sum() {
        let pg = &piece.graph;
        let bundle = if piece.is_bridge {
            let side = pg.vertices()[0].q as u64;
            bridge_bundle(genus, side, pg.edges()[0].length.clone())
                .expect("bridge sides carry positive genus")
        } else if pg.edge_count() == pg.vertex_count() && pg.is_elementary() {
            circle_bundle(&cycle_marks(pg, &(0..pg.edge_count()).collect::<Vec<_>>()))
                .expect("cycle has marks")
        } else {
            invariant_bundle(pg)?
        };
        parts.push(bundle);
    }
    Ok(sum_bundles(genus, &parts))
}
