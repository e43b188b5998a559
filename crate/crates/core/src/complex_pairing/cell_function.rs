//! Functions on the product complex given by one polynomial (or one pair of
//! polynomials split along the diagonal) per edge pair, in physical
//! coordinates `s` on the first factor and `t` on the second.

use alloc::vec::Vec;

use super::{Cell, LatticeDivisor, PairingError, ProductComplex};
use crate::admissible::Admissible;
use crate::poly::{Poly1, Poly2};
use crate::resistance::PairKernel;
use crate::scalar::Scalar;

/// Restriction of a function to one edge pair.
#[derive(Clone, Debug, PartialEq)]
pub enum CellPiece<S> {
    Smooth(Poly2<S>),
    /// `lower` on `t <= s`, `upper` on `t >= s`; the two sides must agree on
    /// the diagonal and the cell must be square.
    Split { lower: Poly2<S>, upper: Poly2<S> },
}

impl<S: Scalar> CellPiece<S> {
    pub fn eval(&self, s: &S, t: &S) -> S {
        match self {
            CellPiece::Smooth(p) => p.eval(s, t),
            CellPiece::Split { lower, upper } => {
                if (t.clone() - s.clone()).is_positive() {
                    upper.eval(s, t)
                } else {
                    lower.eval(s, t)
                }
            }
        }
    }

    fn lower(&self) -> &Poly2<S> {
        match self {
            CellPiece::Smooth(p) => p,
            CellPiece::Split { lower, .. } => lower,
        }
    }

    fn upper(&self) -> &Poly2<S> {
        match self {
            CellPiece::Smooth(p) => p,
            CellPiece::Split { upper, .. } => upper,
        }
    }

    fn is_split(&self) -> bool {
        matches!(self, CellPiece::Split { .. })
    }

    fn transpose(&self) -> Self {
        match self {
            CellPiece::Smooth(p) => CellPiece::Smooth(p.transpose()),
            CellPiece::Split { lower, upper } => CellPiece::Split {
                lower: upper.transpose(),
                upper: lower.transpose(),
            },
        }
    }

    /// Jump of the `s`-derivative across the diagonal, as a function of the
    /// diagonal parameter. Zero for smooth pieces.
    fn diagonal_jump(&self) -> Poly1<S> {
        match self {
            CellPiece::Smooth(_) => Poly1::zero(),
            CellPiece::Split { lower, upper } => upper
                .d_s()
                .sub(&lower.d_s())
                .substitute_t(&Poly1::x()),
        }
    }

    /// Two-sided average of the `t`-derivative on the diagonal.
    fn diagonal_dt(&self) -> Poly1<S> {
        self.upper()
            .d_t()
            .add(&self.lower().d_t())
            .substitute_t(&Poly1::x())
            .scale(&S::ratio(1, 2))
    }
}

impl<S: Scalar> From<PairKernel<S>> for CellPiece<S> {
    fn from(k: PairKernel<S>) -> Self {
        match k {
            PairKernel::Smooth(p) => CellPiece::Smooth(p),
            PairKernel::Diagonal { lower, upper } => CellPiece::Split { lower, upper },
        }
    }
}

/// A function on a product complex, one [`CellPiece`] per edge pair.
#[derive(Clone, Debug)]
pub struct CellFunction<S> {
    complex: ProductComplex<S>,
    /// Indexed by `e1 * E2 + e2`.
    pieces: Vec<CellPiece<S>>,
}

impl<S: Scalar> CellFunction<S> {
    pub fn new(
        complex: ProductComplex<S>,
        mut piece: impl FnMut(usize, usize) -> CellPiece<S>,
    ) -> Result<Self, PairingError> {
        let (m1, m2) = complex.shape().edges;
        let mut pieces = Vec::with_capacity(m1 * m2);
        for e1 in 0..m1 {
            for e2 in 0..m2 {
                let p = piece(e1, e2);
                if p.is_split() {
                    let cell = Cell { e1, e2, i: 0, j: 0 };
                    let (l1, l2) = complex.edge_lengths(&cell);
                    if l1 != l2 {
                        return Err(PairingError::DiagonalOnNonSquare(e1, e2));
                    }
                }
                pieces.push(p);
            }
        }
        Ok(CellFunction { complex, pieces })
    }

    /// The same polynomial on every edge pair.
    pub fn uniform(complex: ProductComplex<S>, p: Poly2<S>) -> Self {
        Self::new(complex, |_, _| CellPiece::Smooth(p.clone())).expect("no split cells")
    }

    pub fn complex(&self) -> &ProductComplex<S> {
        &self.complex
    }

    pub fn piece(&self, e1: usize, e2: usize) -> &CellPiece<S> {
        &self.pieces[e1 * self.complex.shape().edges.1 + e2]
    }

    pub fn eval(&self, e1: usize, e2: usize, s: &S, t: &S) -> S {
        self.piece(e1, e2).eval(s, t)
    }

    /// The function `(y, x) -> f(x, y)` on the transposed complex.
    pub fn transpose(&self) -> Self {
        let (m1, m2) = self.complex.shape().edges;
        let mut pieces = Vec::with_capacity(m1 * m2);
        for e2 in 0..m2 {
            for e1 in 0..m1 {
                pieces.push(self.piece(e1, e2).transpose());
            }
        }
        CellFunction {
            complex: self.complex.transpose(),
            pieces,
        }
    }

    /// Sample on the level-`n` lattice. Coefficients are `n f(point)`.
    pub fn sample(&self, n: usize) -> Result<LatticeDivisor<S>, PairingError> {
        let c = &self.complex;
        let mut out = LatticeDivisor::zero(c, n)?;
        let nn = S::from_i64(n as i64);
        let h = S::ratio(1, 2);
        for cell in c.cells(n) {
            let (l1, l2) = c.edge_lengths(&cell);
            let piece = self.piece(cell.e1, cell.e2);
            let at = |da: &S, db: &S| {
                let s = l1.clone() * (S::from_i64(cell.i as i64) + da.clone()) / nn.clone();
                let t = l2.clone() * (S::from_i64(cell.j as i64) + db.clone()) / nn.clone();
                piece.eval(&s, &t) * nn.clone()
            };
            let corners = out.cell_corners(c, &cell);
            let offsets = [(0, 0), (1, 0), (0, 1), (1, 1)];
            for (k, (p1, p2)) in corners.iter().enumerate() {
                let v = at(&S::from_i64(offsets[k].0), &S::from_i64(offsets[k].1));
                out.set_corner(*p1, *p2, v)?;
            }
            out.set_center(&cell, at(&h, &h))?;
        }
        Ok(out)
    }

    /// Check continuity across vertex lines and across split diagonals.
    pub fn check_hypotheses(&self) -> Result<(), PairingError> {
        let (m1, m2) = self.complex.shape().edges;
        for e1 in 0..m1 {
            for e2 in 0..m2 {
                if let CellPiece::Split { lower, upper } = self.piece(e1, e2) {
                    let d = lower.sub(upper).substitute_t(&Poly1::x());
                    if !poly_is_zero(&d) {
                        return Err(PairingError::HypothesisViolated(
                            "function jumps across the diagonal",
                        ));
                    }
                }
            }
        }
        if !self.vertex_lines_continuous() || !self.transpose().vertex_lines_continuous() {
            return Err(PairingError::HypothesisViolated(
                "function jumps across a vertex line",
            ));
        }
        Ok(())
    }

    /// Continuity across the lines `x = v` for vertices `v` of the first
    /// factor.
    fn vertex_lines_continuous(&self) -> bool {
        let g1 = &self.complex.first;
        let m2 = self.complex.shape().edges.1;
        for v in 0..g1.vertex_count() {
            for e2 in 0..m2 {
                let mut seen: Option<Poly1<S>> = None;
                for (e1, edge) in g1.edges().iter().enumerate() {
                    let piece = self.piece(e1, e2);
                    let mut traces = Vec::new();
                    if edge.ends.0 == v {
                        traces.push(piece.upper().restrict_s(&S::zero()));
                    }
                    if edge.ends.1 == v {
                        traces.push(piece.lower().restrict_s(&edge.length));
                    }
                    for tr in traces {
                        match &seen {
                            None => seen = Some(tr),
                            Some(p) => {
                                if !poly_is_zero(&p.sub(&tr)) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

fn poly_is_zero<S: Scalar>(p: &Poly1<S>) -> bool {
    p.coeffs.iter().all(|c| c.is_zero())
}

fn same_complex<S: Scalar>(fs: [&CellFunction<S>; 3]) -> Result<(), PairingError> {
    let shape = fs[0].complex.shape();
    for f in &fs[1..] {
        if f.complex.shape() != shape {
            return Err(PairingError::ShapeMismatch);
        }
        let lengths = |c: &ProductComplex<S>| {
            (
                c.first.edges().iter().map(|e| e.length.clone()).collect::<Vec<_>>(),
                c.second.edges().iter().map(|e| e.length.clone()).collect::<Vec<_>>(),
            )
        };
        if lengths(&f.complex) != lengths(&fs[0].complex) {
            return Err(PairingError::ShapeMismatch);
        }
    }
    Ok(())
}

/// `int int Delta_x(fi) fj_t fk_t`, with `Delta_x` the distributional
/// Laplacian in the first variable: smooth density `-f_ss`, atoms on vertex
/// lines and a line density along split diagonals.
fn laplacian_term<S: Scalar>(fi: &CellFunction<S>, fj: &CellFunction<S>, fk: &CellFunction<S>) -> S {
    let c = &fi.complex;
    let g1 = &c.first;
    let (m1, m2) = c.shape().edges;
    let mut acc = S::zero();
    for e1 in 0..m1 {
        let l1 = g1.edges()[e1].length.clone();
        for e2 in 0..m2 {
            let l2 = c.second.edges()[e2].length.clone();
            let (pi, pj, pk) = (fi.piece(e1, e2), fj.piece(e1, e2), fk.piece(e1, e2));
            let density = |a: &Poly2<S>, b: &Poly2<S>, d: &Poly2<S>| {
                a.d_s().d_s().scale(&-S::one()).mul(&b.d_t()).mul(&d.d_t())
            };
            if pi.is_split() || pj.is_split() || pk.is_split() {
                acc = acc
                    + density(pi.lower(), pj.lower(), pk.lower()).integrate_lower(&l1)
                    + density(pi.upper(), pj.upper(), pk.upper()).integrate_upper(&l1);
                let jump = pi.diagonal_jump();
                if !poly_is_zero(&jump) {
                    acc = acc
                        + jump
                            .mul(&pj.diagonal_dt())
                            .mul(&pk.diagonal_dt())
                            .integrate(&S::zero(), &l1);
                }
            } else {
                acc = acc + density(pi.lower(), pj.lower(), pk.lower()).integrate_rect(&l1, &l2);
            }
            // Vertex-line atoms: minus the outgoing s-derivative at each end.
            let zero = S::zero();
            let start = pi
                .upper()
                .d_s()
                .restrict_s(&zero)
                .mul(&pj.upper().d_t().restrict_s(&zero))
                .mul(&pk.upper().d_t().restrict_s(&zero));
            let end = pi
                .lower()
                .d_s()
                .restrict_s(&l1)
                .mul(&pj.lower().d_t().restrict_s(&l1))
                .mul(&pk.lower().d_t().restrict_s(&l1));
            acc = acc + end.sub(&start).integrate(&zero, &l2);
        }
    }
    acc
}

/// Continuous triple pairing of three functions on the same complex:
/// the cyclic sum of `int int Delta_x(fi) fj_t fk_t` plus a quarter of the
/// integral of the product of diagonal jumps. Derivatives on the diagonal
/// are two-sided averages.
pub fn continuous_triple<S: Scalar>(
    f1: &CellFunction<S>,
    f2: &CellFunction<S>,
    f3: &CellFunction<S>,
) -> Result<S, PairingError> {
    same_complex([f1, f2, f3])?;
    for f in [f1, f2, f3] {
        f.check_hypotheses()?;
    }
    let mut acc = laplacian_term(f1, f2, f3) + laplacian_term(f2, f3, f1) + laplacian_term(f3, f1, f2);
    let (m1, m2) = f1.complex.shape().edges;
    let quarter = S::ratio(1, 4);
    for e1 in 0..m1 {
        for e2 in 0..m2 {
            let jumps = [f1, f2, f3].map(|f| f.piece(e1, e2).diagonal_jump());
            if jumps.iter().all(|j| !poly_is_zero(j)) {
                let l = f1.complex.first.edges()[e1].length.clone();
                acc = acc
                    + quarter.clone()
                        * jumps[0]
                            .mul(&jumps[1])
                            .mul(&jumps[2])
                            .integrate(&S::zero(), &l);
            }
        }
    }
    Ok(acc)
}

/// The same pairing computed with the Laplacian in the second variable.
pub fn continuous_triple_swapped<S: Scalar>(
    f1: &CellFunction<S>,
    f2: &CellFunction<S>,
    f3: &CellFunction<S>,
) -> Result<S, PairingError> {
    continuous_triple(&f1.transpose(), &f2.transpose(), &f3.transpose())
}

/// `(x, y) -> G(x, y)` on the square of the graph.
pub fn green_product_function<S: Scalar>(adm: &Admissible<S>) -> Result<CellFunction<S>, PairingError> {
    let complex = ProductComplex::square(adm.graph.clone())?;
    CellFunction::new(complex, |f, e| adm.green_edge_pair(f, e).into())
}

/// `(x, y) -> G(v, x)`.
pub fn green_point_first<S: Scalar>(adm: &Admissible<S>, v: usize) -> Result<CellFunction<S>, PairingError> {
    let complex = ProductComplex::square(adm.graph.clone())?;
    CellFunction::new(complex, |f, _| {
        CellPiece::Smooth(Poly2::from_s(&adm.green_vertex_edge(v, f)))
    })
}

/// `(x, y) -> G(v, y)`.
pub fn green_point_second<S: Scalar>(adm: &Admissible<S>, v: usize) -> Result<CellFunction<S>, PairingError> {
    let complex = ProductComplex::square(adm.graph.clone())?;
    CellFunction::new(complex, |_, e| {
        CellPiece::Smooth(Poly2::from_t(&adm.green_vertex_edge(v, e)))
    })
}
