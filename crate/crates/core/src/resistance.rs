//! Effective resistance on metrized graphs.
//!
//! Two independent routes:
//! * subdivide at the query points and solve the weighted Laplacian;
//! * star reduction on the graph with one edge deleted, which gives the
//!   resistance from a fixed point to a moving point on an edge as a
//!   quadratic in the offset.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{GraphError, GraphPoint, PolarizedGraph};
use crate::poly::{Poly1, Poly2};
use crate::scalar::Scalar;

/// Plain resistor network: nodes `0..n`, edges `(u, v, length)`.
#[derive(Clone, Debug)]
pub(crate) struct Network<S> {
    pub n: usize,
    pub edges: Vec<(usize, usize, S)>,
}

impl<S: Scalar> Network<S> {
    pub fn from_graph(g: &PolarizedGraph<S>) -> Self {
        Network {
            n: g.vertex_count(),
            edges: g
                .edges()
                .iter()
                .map(|e| (e.ends.0, e.ends.1, e.length.clone()))
                .collect(),
        }
    }

    /// Insert nodes at the given offsets of edge `e` (measured from its
    /// first end). Returns the node for each offset, in input order.
    pub fn subdivide(&mut self, e: usize, offsets: &[S]) -> Vec<usize> {
        let (u, v, len) = self.edges[e].clone();
        let mut order: Vec<usize> = (0..offsets.len()).collect();
        order.sort_by(|&i, &j| offsets[i].to_f64().total_cmp(&offsets[j].to_f64()));
        let mut nodes = vec![0usize; offsets.len()];
        let mut chain: Vec<(usize, S)> = vec![(u, S::zero())];
        for &i in &order {
            let s = &offsets[i];
            let last = chain.last().unwrap();
            if s.approx_eq(&last.1) {
                nodes[i] = last.0;
            } else if s.approx_eq(&len) {
                nodes[i] = v;
            } else {
                let node = self.n;
                self.n += 1;
                chain.push((node, s.clone()));
                nodes[i] = node;
            }
        }
        chain.push((v, len));
        let mut pieces = Vec::new();
        for w in chain.windows(2) {
            pieces.push((w[0].0, w[1].0, w[1].1.clone() - w[0].1.clone()));
        }
        // Nodes inserted at offset L collapse the final piece to length 0.
        pieces.retain(|p| !p.2.is_zero());
        let mut it = pieces.into_iter();
        self.edges[e] = it.next().expect("edge has positive length");
        self.edges.extend(it);
        nodes
    }

    /// All-pairs effective resistance; `None` between different components.
    pub fn resistance_matrix(&self, skip: &[usize]) -> Vec<Vec<Option<S>>> {
        resistance_matrix(self.n, self.edges.iter().enumerate().filter_map(|(i, e)| {
            if skip.contains(&i) {
                None
            } else {
                Some(e)
            }
        }))
    }
}

fn resistance_matrix<'a, S: Scalar>(
    n: usize,
    edges: impl Iterator<Item = &'a (usize, usize, S)> + Clone,
) -> Vec<Vec<Option<S>>> {
    // Component labels.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for (u, v, _) in edges.clone() {
        let (a, b) = (find(&mut parent, *u), find(&mut parent, *v));
        if a != b {
            parent[a] = b;
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    let mut out = vec![vec![None; n]; n];
    let mut done = vec![false; n];
    for start in 0..n {
        let root = roots[start];
        if done[root] {
            continue;
        }
        done[root] = true;
        let members: Vec<usize> = (0..n).filter(|&x| roots[x] == root).collect();
        // Ground the first member; the remaining ones index the reduced Laplacian.
        let k = members.len() - 1;
        let mut pos = vec![usize::MAX; n];
        for (i, &m) in members.iter().enumerate().skip(1) {
            pos[m] = i - 1;
        }
        let mut lap = vec![vec![S::zero(); k]; k];
        for (u, v, len) in edges.clone() {
            if u == v || roots[*u] != root {
                continue;
            }
            let c = S::one() / len.clone();
            for (a, b) in [(*u, *v), (*v, *u)] {
                if pos[a] != usize::MAX {
                    lap[pos[a]][pos[a]] = lap[pos[a]][pos[a]].clone() + c.clone();
                    if pos[b] != usize::MAX {
                        lap[pos[a]][pos[b]] = lap[pos[a]][pos[b]].clone() - c.clone();
                    }
                }
            }
        }
        let inv = invert(lap).expect("reduced Laplacian of a connected network is invertible");
        let entry = |a: usize, b: usize| -> S {
            if pos[a] == usize::MAX || pos[b] == usize::MAX {
                S::zero()
            } else {
                inv[pos[a]][pos[b]].clone()
            }
        };
        for &a in &members {
            for &b in &members {
                let r = entry(a, a) + entry(b, b) - entry(a, b) - entry(b, a);
                out[a][b] = Some(r);
            }
        }
    }
    out
}

/// Gauss-Jordan inverse; `None` if singular.
fn invert<S: Scalar>(mut a: Vec<Vec<S>>) -> Option<Vec<Vec<S>>> {
    let n = a.len();
    let mut inv: Vec<Vec<S>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .max_by(|&x, &y| a[x][col].to_f64().abs().total_cmp(&a[y][col].to_f64().abs()))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = a[col][j].clone() / p.clone();
            inv[col][j] = inv[col][j].clone() / p.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                a[r][j] = a[r][j].clone() - f.clone() * a[col][j].clone();
                inv[r][j] = inv[r][j].clone() - f.clone() * inv[col][j].clone();
            }
        }
    }
    Some(inv)
}

fn half<S: Scalar>(x: S) -> S {
    x / S::from_i64(2)
}

/// Resistance from a fixed node `x` to the point at offset `t` on edge
/// `(u, v, len)`, given all-pairs resistance `without` of the network with
/// that edge removed. `None` if `x` is not connected to the edge.
pub(crate) fn star_profile<S: Scalar>(
    without: &[Vec<Option<S>>],
    u: usize,
    v: usize,
    len: &S,
    x: usize,
) -> Option<Poly1<S>> {
    let rux = without[u][x].clone();
    let rvx = without[v][x].clone();
    match without[u][v].clone() {
        None => {
            // The edge is a bridge: walk to whichever end x can reach.
            if let Some(r) = rux {
                Some(Poly1::linear(r, S::one()))
            } else {
                rvx.map(|r| Poly1::linear(r + len.clone(), -S::one()))
            }
        }
        Some(ruv) => {
            let (rux, rvx) = (rux?, rvx?);
            let a = half(ruv.clone() + rux.clone() - rvx.clone());
            let b = half(ruv.clone() + rvx.clone() - rux.clone());
            let c = half(rux + rvx - ruv.clone());
            let d = ruv + len.clone();
            // c + (a + t)(b + L - t) / d
            let bl = b + len.clone();
            Some(Poly1::new(vec![
                c + a.clone() * bl.clone() / d.clone(),
                (bl - a) / d.clone(),
                -S::one() / d,
            ]))
        }
    }
}

/// Resistance as a function of `(s, t)` for `x` at offset `s` on one edge
/// and `y` at offset `t` on another. On an edge paired with itself the
/// kernel is piecewise: `lower` for `t <= s`, `upper` for `t >= s`.
#[derive(Clone, Debug, PartialEq)]
pub enum PairKernel<S> {
    Smooth(Poly2<S>),
    Diagonal { lower: Poly2<S>, upper: Poly2<S> },
}

impl<S: Scalar> PairKernel<S> {
    pub fn eval(&self, s: &S, t: &S) -> S {
        match self {
            PairKernel::Smooth(p) => p.eval(s, t),
            PairKernel::Diagonal { lower, upper } => {
                if (t.clone() - s.clone()).is_positive() {
                    upper.eval(s, t)
                } else {
                    lower.eval(s, t)
                }
            }
        }
    }

    /// Integral against `w(s, t)` over `[0, a] x [0, b]`.
    pub fn integrate_weighted(&self, w: &Poly2<S>, a: &S, b: &S) -> S {
        match self {
            PairKernel::Smooth(p) => p.mul(w).integrate_rect(a, b),
            PairKernel::Diagonal { lower, upper } => {
                lower.mul(w).integrate_lower(a) + upper.mul(w).integrate_upper(a)
            }
        }
    }

    /// `int_0^b k(s, t) dt` as a polynomial in `s` (for diagonal kernels
    /// `a == b` is required).
    pub fn integrate_t(&self, b: &S) -> Poly1<S> {
        match self {
            PairKernel::Smooth(p) => p.integrate_t(&Poly1::zero(), &Poly1::constant(b.clone())),
            PairKernel::Diagonal { lower, upper } => lower
                .integrate_t(&Poly1::zero(), &Poly1::x())
                .add(&upper.integrate_t(&Poly1::x(), &Poly1::constant(b.clone()))),
        }
    }
}

/// Precomputed resistance data for a fixed graph.
#[derive(Clone, Debug)]
pub struct ResistanceTables<S> {
    /// Vertex-to-vertex resistance.
    pub vertex: Vec<Vec<S>>,
    /// Resistance between the ends of each edge with that edge deleted;
    /// `None` for bridges.
    pub complement: Vec<Option<S>>,
    /// `profiles[e][v]`: resistance from vertex `v` to the point at offset
    /// `t` on edge `e`.
    pub profiles: Vec<Vec<Poly1<S>>>,
    /// `kernels[f][e]`: resistance between offset `s` on `f` and offset `t`
    /// on `e`.
    pub kernels: Vec<Vec<PairKernel<S>>>,
}

impl<S: Scalar> ResistanceTables<S> {
    pub fn new(g: &PolarizedGraph<S>) -> Self {
        let net = Network::from_graph(g);
        let m = net.edges.len();
        let full = net.resistance_matrix(&[]);
        let vertex: Vec<Vec<S>> = full
            .iter()
            .map(|row| row.iter().map(|r| r.clone().expect("graph is connected")).collect())
            .collect();
        let minus: Vec<Vec<Vec<Option<S>>>> = (0..m).map(|e| net.resistance_matrix(&[e])).collect();
        let complement: Vec<Option<S>> = (0..m)
            .map(|e| {
                let (u, v, _) = &net.edges[e];
                minus[e][*u][*v].clone()
            })
            .collect();
        let profiles: Vec<Vec<Poly1<S>>> = (0..m)
            .map(|e| {
                let (u, v, len) = &net.edges[e];
                (0..net.n)
                    .map(|x| star_profile(&minus[e], *u, *v, len, x).expect("graph is connected"))
                    .collect()
            })
            .collect();

        let mut kernels: Vec<Vec<Option<PairKernel<S>>>> = vec![vec![None; m]; m];
        for e in 0..m {
            kernels[e][e] = Some(self_kernel(&net.edges[e].2, complement[e].as_ref()));
            for f in (e + 1)..m {
                let both = net.resistance_matrix(&[e, f]);
                let k_fe = cross_kernel(&net, &minus[e], &both, f, e);
                kernels[e][f] = Some(PairKernel::Smooth(match &k_fe {
                    PairKernel::Smooth(p) => p.transpose(),
                    PairKernel::Diagonal { .. } => unreachable!(),
                }));
                kernels[f][e] = Some(k_fe);
            }
        }
        ResistanceTables {
            vertex,
            complement,
            profiles,
            kernels: kernels
                .into_iter()
                .map(|row| row.into_iter().map(Option::unwrap).collect())
                .collect(),
        }
    }
}

fn self_kernel<S: Scalar>(len: &S, complement: Option<&S>) -> PairKernel<S> {
    // d = |s - t|; resistance d (D - d) / D with D = L + complement, or d on a bridge.
    let d_lower = Poly2::from_s(&Poly1::x()).sub(&Poly2::from_t(&Poly1::x()));
    let d_upper = d_lower.scale(&-S::one());
    let piece = |d: Poly2<S>| match complement {
        None => d,
        Some(r) => {
            let big = r.clone() + len.clone();
            d.sub(&d.mul(&d).scale(&(S::one() / big)))
        }
    };
    PairKernel::Diagonal {
        lower: piece(d_lower),
        upper: piece(d_upper),
    }
}

/// Kernel for `x` on edge `f` (offset `s`) and `y` on edge `e` (offset
/// `t`), `f != e`, by star reduction in the graph with `e` deleted.
fn cross_kernel<S: Scalar>(
    net: &Network<S>,
    minus_e: &[Vec<Option<S>>],
    minus_ef: &[Vec<Option<S>>],
    f: usize,
    e: usize,
) -> PairKernel<S> {
    let (fu, fv, flen) = &net.edges[f];
    let (p, q, len) = &net.edges[e];
    let rho_p = star_profile(minus_ef, *fu, *fv, flen, *p);
    let rho_q = star_profile(minus_ef, *fu, *fv, flen, *q);
    let t = Poly2::from_t(&Poly1::x());
    let kernel = match minus_e[*p][*q].clone() {
        None => {
            // e is a bridge; x sits on exactly one side.
            match (rho_p, rho_q) {
                (Some(rp), _) => Poly2::from_s(&rp).add(&t),
                (None, Some(rq)) => Poly2::from_s(&rq)
                    .add(&Poly2::constant(len.clone()))
                    .sub(&t),
                (None, None) => unreachable!("graph is connected"),
            }
        }
        Some(r) => {
            let rp = rho_p.expect("both ends reachable");
            let rq = rho_q.expect("both ends reachable");
            let rr = Poly1::constant(r.clone());
            let a = rr.add(&rp).sub(&rq).scale(&S::ratio(1, 2));
            let b = rr.add(&rq).sub(&rp).scale(&S::ratio(1, 2));
            let c = rp.add(&rq).sub(&rr).scale(&S::ratio(1, 2));
            let inv_d = S::one() / (r + len.clone());
            let left = Poly2::from_s(&a).add(&t);
            let right = Poly2::from_s(&b)
                .add(&Poly2::constant(len.clone()))
                .sub(&t);
            Poly2::from_s(&c).add(&left.mul(&right).scale(&inv_d))
        }
    };
    PairKernel::Smooth(kernel)
}

/// Effective resistance between two points, by subdividing and solving the
/// Laplacian.
pub fn point_resistance<S: Scalar>(
    g: &PolarizedGraph<S>,
    x: &GraphPoint<S>,
    y: &GraphPoint<S>,
) -> Result<S, GraphError> {
    g.check_point(x)?;
    g.check_point(y)?;
    let mut net = Network::from_graph(g);
    let nodes = match (x, y) {
        (GraphPoint::OnEdge { edge: e1, offset: s }, GraphPoint::OnEdge { edge: e2, offset: t })
            if e1 == e2 =>
        {
            net.subdivide(*e1, &[s.clone(), t.clone()])
        }
        _ => {
            let mut place = |p: &GraphPoint<S>| match p {
                GraphPoint::Vertex(v) => *v,
                GraphPoint::OnEdge { edge, offset } => net.subdivide(*edge, &[offset.clone()])[0],
            };
            let a = place(x);
            let b = place(y);
            vec![a, b]
        }
    };
    let r = net.resistance_matrix(&[]);
    Ok(r[nodes[0]][nodes[1]].clone().expect("graph is connected"))
}

/// Resistance between the ends of edge `e` in the graph with `e` deleted;
/// `None` (infinite) for a bridge, zero for a loop.
pub fn edge_complement_resistance<S: Scalar>(
    g: &PolarizedGraph<S>,
    e: usize,
) -> Result<Option<S>, GraphError> {
    let edge = g.edges().get(e).ok_or(GraphError::UnknownEdge(e))?;
    let net = Network::from_graph(g);
    Ok(net.resistance_matrix(&[e])[edge.ends.0][edge.ends.1].clone())
}

/// Resistance from `x` to the point at offset `t` on edge `e`, as a
/// polynomial in `t` of degree at most 2. `x` must not lie inside `e`.
pub fn resistance_profile<S: Scalar>(
    g: &PolarizedGraph<S>,
    x: &GraphPoint<S>,
    e: usize,
) -> Result<Poly1<S>, GraphError> {
    g.check_point(x)?;
    let edge = g.edges().get(e).ok_or(GraphError::UnknownEdge(e))?;
    let mut net = Network::from_graph(g);
    let node = match x {
        GraphPoint::Vertex(v) => *v,
        GraphPoint::OnEdge { edge: f, offset } => {
            if *f == e {
                if offset.is_zero() {
                    edge.ends.0
                } else if offset.approx_eq(&edge.length) {
                    edge.ends.1
                } else {
                    return Err(GraphError::OffsetOutOfRange(edge.id.clone()));
                }
            } else {
                net.subdivide(*f, &[offset.clone()])[0]
            }
        }
    };
    let without = net.resistance_matrix(&[e]);
    Ok(star_profile(&without, edge.ends.0, edge.ends.1, &edge.length, node).expect("graph is connected"))
}
