//! Gauss-Legendre quadrature for an independent check of the smooth part of
//! the continuous pairing.

use super::{CellFunction, CellPiece, PairingError};
use crate::poly::Poly2;

/// Five-point Gauss-Legendre nodes and weights on `[-1, 1]`.
pub const GL5: [(f64, f64); 5] = [
    (0.0, 0.568_888_888_888_888_9),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
    (0.906_179_845_938_664, 0.236_926_885_056_189_1),
];

/// Composite tensor Gauss-Legendre rule on `[0, a] x [0, b]` with `m x m`
/// panels.
pub fn integrate_rect(f: impl Fn(f64, f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    let (ha, hb) = (a / m as f64, b / m as f64);
    let mut acc = 0.0;
    for pi in 0..m {
        for pj in 0..m {
            let (s0, t0) = (pi as f64 * ha, pj as f64 * hb);
            for (x, wx) in GL5 {
                for (y, wy) in GL5 {
                    let s = s0 + 0.5 * ha * (x + 1.0);
                    let t = t0 + 0.5 * hb * (y + 1.0);
                    acc += wx * wy * f(s, t);
                }
            }
        }
    }
    acc * 0.25 * ha * hb
}

/// `sum over orderings (a, b, c) of int int fa_s fb_t fc_st` for functions
/// without split cells. Equals [`super::continuous_triple`] when every
/// boundary term vanishes, for instance for functions vanishing to second
/// order on the cell boundaries.
pub fn six_term_triple(
    f1: &CellFunction<f64>,
    f2: &CellFunction<f64>,
    f3: &CellFunction<f64>,
    panels: usize,
) -> Result<f64, PairingError> {
    let (m1, m2) = f1.complex().shape().edges;
    let mut acc = 0.0;
    for e1 in 0..m1 {
        for e2 in 0..m2 {
            let mut polys: [Option<&Poly2<f64>>; 3] = [None; 3];
            for (k, f) in [f1, f2, f3].iter().enumerate() {
                match f.piece(e1, e2) {
                    CellPiece::Smooth(p) => polys[k] = Some(p),
                    CellPiece::Split { .. } => {
                        return Err(PairingError::HypothesisViolated(
                            "six-term form needs smooth cells",
                        ))
                    }
                }
            }
            let p = polys.map(|p| p.expect("filled above"));
            let ds: [Poly2<f64>; 3] = p.map(|q| q.d_s());
            let dt: [Poly2<f64>; 3] = p.map(|q| q.d_t());
            let dst: [Poly2<f64>; 3] = p.map(|q| q.d_s().d_t());
            let l1 = f1.complex().first.edges()[e1].length;
            let l2 = f1.complex().second.edges()[e2].length;
            const ORDERS: [[usize; 3]; 6] =
                [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            acc += integrate_rect(
                |s, t| {
                    ORDERS
                        .iter()
                        .map(|o| ds[o[0]].eval(&s, &t) * dt[o[1]].eval(&s, &t) * dst[o[2]].eval(&s, &t))
                        .sum()
                },
                l1,
                l2,
                panels,
            );
        }
    }
    Ok(acc)
}
