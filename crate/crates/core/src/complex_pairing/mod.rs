//! Vertical divisors on the product of two metrized graphs, encoded as
//! piecewise-linear functions on a square complex, and their triple
//! intersection numbers.
//!
//! At level `n` every edge of each factor is cut into `n` equal pieces in
//! normalized edge coordinates. A cell is a product of two pieces. Its four
//! corners are component points and its center is an exceptional point.
//! Corner order inside a cell is `P1=(0,0)`, `P2=(1,0)`, `P3=(0,1)`,
//! `P4=(1,1)`.
//!
//! A level-`n` divisor stores the divisor coefficients: `a_C` at corners and
//! `b_E` at centers (the divisor itself is `sum a_C C + sum 2 b_E E`). The
//! associated function takes the value `coefficient / n`, so pulling back a
//! divisor along a subdivision keeps the function unchanged.

mod cell_function;
pub mod quadrature;

pub use cell_function::{
    continuous_triple, continuous_triple_swapped, green_point_first, green_point_second,
    green_product_function, CellFunction, CellPiece,
};

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::PolarizedGraph;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PairingError {
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("factor graph has no edges")]
    NoEdges,
    #[error("divisors live on different levels ({0} vs {1})")]
    LevelMismatch(usize, usize),
    #[error("divisors live on different complexes")]
    ShapeMismatch,
    #[error("function is not linear on triangle {triangle} of cell ({e1}, {e2}, {i}, {j})")]
    NotTriangulationLinear {
        e1: usize,
        e2: usize,
        i: usize,
        j: usize,
        triangle: usize,
    },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(&'static str),
    #[error("cell ({0}, {1}) has a diagonal but unequal side lengths")]
    DiagonalOnNonSquare(usize, usize),
    #[error("index out of range")]
    OutOfRange,
    #[error(transparent)]
    Invariant(#[from] crate::admissible::InvariantError),
}

/// Sizes that determine the lattice of a complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub vertices: (usize, usize),
    pub edges: (usize, usize),
}

/// The product of two graphs, cut into cells.
#[derive(Clone, Debug)]
pub struct ProductComplex<S> {
    pub first: PolarizedGraph<S>,
    pub second: PolarizedGraph<S>,
}

/// A cell at level `n`: piece `i` of edge `e1` times piece `j` of edge `e2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub e1: usize,
    pub e2: usize,
    pub i: usize,
    pub j: usize,
}

impl<S: Scalar> ProductComplex<S> {
    pub fn new(first: PolarizedGraph<S>, second: PolarizedGraph<S>) -> Result<Self, PairingError> {
        if first.edge_count() == 0 || second.edge_count() == 0 {
            return Err(PairingError::NoEdges);
        }
        Ok(ProductComplex { first, second })
    }

    /// The square of one graph.
    pub fn square(g: PolarizedGraph<S>) -> Result<Self, PairingError> {
        Self::new(g.clone(), g)
    }

    pub fn shape(&self) -> Shape {
        Shape {
            vertices: (self.first.vertex_count(), self.second.vertex_count()),
            edges: (self.first.edge_count(), self.second.edge_count()),
        }
    }

    /// The same complex with the factors exchanged.
    pub fn transpose(&self) -> Self {
        ProductComplex {
            first: self.second.clone(),
            second: self.first.clone(),
        }
    }

    /// Cells in a fixed order: `e1`, `e2`, `i`, `j`.
    pub fn cells(&self, n: usize) -> impl Iterator<Item = Cell> {
        let (m1, m2) = self.shape().edges;
        (0..m1).flat_map(move |e1| {
            (0..m2).flat_map(move |e2| {
                (0..n).flat_map(move |i| (0..n).map(move |j| Cell { e1, e2, i, j }))
            })
        })
    }

    pub fn edge_lengths(&self, cell: &Cell) -> (S, S) {
        (
            self.first.edges()[cell.e1].length.clone(),
            self.second.edges()[cell.e2].length.clone(),
        )
    }
}

impl Shape {
    fn factor_points(&self, factor: usize, n: usize) -> usize {
        let (v, e) = if factor == 0 {
            (self.vertices.0, self.edges.0)
        } else {
            (self.vertices.1, self.edges.1)
        };
        v + e * (n - 1)
    }

    pub fn corner_count(&self, n: usize) -> usize {
        self.factor_points(0, n) * self.factor_points(1, n)
    }

    pub fn center_count(&self, n: usize) -> usize {
        self.edges.0 * self.edges.1 * n * n
    }
}

/// Lattice index of the point `k / n` along edge `e` of a factor.
fn factor_point<S: Scalar>(g: &PolarizedGraph<S>, n: usize, e: usize, k: usize) -> usize {
    let ends = g.edges()[e].ends;
    if k == 0 {
        ends.0
    } else if k == n {
        ends.1
    } else {
        g.vertex_count() + e * (n - 1) + (k - 1)
    }
}

/// A vertical divisor at level `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeDivisor<S> {
    level: usize,
    shape: Shape,
    /// Indexed by `p1 * P2 + p2` over factor lattice points.
    corners: Vec<S>,
    /// Indexed by `((e1 * E2 + e2) * n + i) * n + j`.
    centers: Vec<S>,
}

impl<S: Scalar> LatticeDivisor<S> {
    pub fn zero(complex: &ProductComplex<S>, level: usize) -> Result<Self, PairingError> {
        if level == 0 {
            return Err(PairingError::ZeroLevel);
        }
        let shape = complex.shape();
        Ok(LatticeDivisor {
            level,
            shape,
            corners: vec![S::zero(); shape.corner_count(level)],
            centers: vec![S::zero(); shape.center_count(level)],
        })
    }

    /// The level-1 component divisor for vertex `a` of the first factor and
    /// vertex `b` of the second.
    pub fn component(complex: &ProductComplex<S>, a: usize, b: usize) -> Result<Self, PairingError> {
        let mut d = Self::zero(complex, 1)?;
        d.set_corner(a, b, S::one())?;
        Ok(d)
    }

    /// The level-1 exceptional divisor over edge pair `(e1, e2)`, with
    /// multiplicity one (so `b_E = 1/2`).
    pub fn exceptional(complex: &ProductComplex<S>, e1: usize, e2: usize) -> Result<Self, PairingError> {
        let mut d = Self::zero(complex, 1)?;
        d.set_center(
            &Cell { e1, e2, i: 0, j: 0 },
            S::ratio(1, 2),
        )?;
        Ok(d)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// Coefficient at the corner given by factor lattice indices.
    pub fn corner(&self, p1: usize, p2: usize) -> &S {
        &self.corners[p1 * self.shape.factor_points(1, self.level) + p2]
    }

    pub fn set_corner(&mut self, p1: usize, p2: usize, value: S) -> Result<(), PairingError> {
        let w = self.shape.factor_points(1, self.level);
        if p1 >= self.shape.factor_points(0, self.level) || p2 >= w {
            return Err(PairingError::OutOfRange);
        }
        self.corners[p1 * w + p2] = value;
        Ok(())
    }

    fn center_index(&self, cell: &Cell) -> usize {
        let n = self.level;
        ((cell.e1 * self.shape.edges.1 + cell.e2) * n + cell.i) * n + cell.j
    }

    pub fn center(&self, cell: &Cell) -> &S {
        &self.centers[self.center_index(cell)]
    }

    pub fn set_center(&mut self, cell: &Cell, value: S) -> Result<(), PairingError> {
        let n = self.level;
        if cell.e1 >= self.shape.edges.0 || cell.e2 >= self.shape.edges.1 || cell.i >= n || cell.j >= n {
            return Err(PairingError::OutOfRange);
        }
        let k = self.center_index(cell);
        self.centers[k] = value;
        Ok(())
    }

    /// Lattice indices of the four corners of a cell, in `P1..P4` order.
    pub fn cell_corners(&self, complex: &ProductComplex<S>, cell: &Cell) -> [(usize, usize); 4] {
        let n = self.level;
        let x0 = factor_point(&complex.first, n, cell.e1, cell.i);
        let x1 = factor_point(&complex.first, n, cell.e1, cell.i + 1);
        let y0 = factor_point(&complex.second, n, cell.e2, cell.j);
        let y1 = factor_point(&complex.second, n, cell.e2, cell.j + 1);
        [(x0, y0), (x1, y0), (x0, y1), (x1, y1)]
    }

    /// Corner coefficients and center coefficient of a cell.
    pub fn cell_values(&self, complex: &ProductComplex<S>, cell: &Cell) -> ([S; 4], S) {
        let c = self.cell_corners(complex, cell);
        (
            [
                self.corner(c[0].0, c[0].1).clone(),
                self.corner(c[1].0, c[1].1).clone(),
                self.corner(c[2].0, c[2].1).clone(),
                self.corner(c[3].0, c[3].1).clone(),
            ],
            self.center(cell).clone(),
        )
    }

    /// Corner coefficients minus the center coefficient.
    pub fn centered(&self, complex: &ProductComplex<S>, cell: &Cell) -> [S; 4] {
        let (c, m) = self.cell_values(complex, cell);
        c.map(|v| v - m.clone())
    }

    /// Value of the associated function at local coordinates `(a, b)` in
    /// `[0, 1]^2` of a cell.
    pub fn value_at(&self, complex: &ProductComplex<S>, cell: &Cell, a: &S, b: &S) -> S {
        let (c, m) = self.cell_values(complex, cell);
        interpolate(&c, &m, a, b) / S::from_i64(self.level as i64)
    }

    pub fn add(&self, other: &Self) -> Result<Self, PairingError> {
        self.same_lattice(other)?;
        Ok(LatticeDivisor {
            level: self.level,
            shape: self.shape,
            corners: zip_with(&self.corners, &other.corners, |a, b| a + b),
            centers: zip_with(&self.centers, &other.centers, |a, b| a + b),
        })
    }

    pub fn scale(&self, k: &S) -> Self {
        LatticeDivisor {
            level: self.level,
            shape: self.shape,
            corners: self.corners.iter().map(|v| v.clone() * k.clone()).collect(),
            centers: self.centers.iter().map(|v| v.clone() * k.clone()).collect(),
        }
    }

    /// The same divisor on the complex with the factors exchanged.
    pub fn transpose(&self, complex: &ProductComplex<S>) -> Self {
        let n = self.level;
        let t = complex.transpose();
        let mut out = LatticeDivisor::zero(&t, n).expect("level is positive");
        for cell in complex.cells(n) {
            let corners = self.cell_corners(complex, &cell);
            let swapped = Cell {
                e1: cell.e2,
                e2: cell.e1,
                i: cell.j,
                j: cell.i,
            };
            for (p1, p2) in corners {
                let v = self.corner(p1, p2).clone();
                out.set_corner(p2, p1, v).expect("in range");
            }
            out.set_center(&swapped, self.center(&cell).clone()).expect("in range");
        }
        out
    }

    fn same_lattice(&self, other: &Self) -> Result<(), PairingError> {
        if self.shape != other.shape {
            return Err(PairingError::ShapeMismatch);
        }
        if self.level != other.level {
            return Err(PairingError::LevelMismatch(self.level, other.level));
        }
        Ok(())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LatticeDivisor<T> {
        LatticeDivisor {
            level: self.level,
            shape: self.shape,
            corners: self.corners.iter().map(&f).collect(),
            centers: self.centers.iter().map(&f).collect(),
        }
    }
}

fn zip_with<S: Scalar>(a: &[S], b: &[S], f: impl Fn(S, S) -> S) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| f(x.clone(), y.clone())).collect()
}

/// Which of the four triangles around the center holds `(u, w)`, with
/// `u = a - 1/2`, `w = b - 1/2`: 0 bottom, 1 top, 2 left, 3 right.
fn triangle_of<S: Scalar>(u: &S, w: &S) -> usize {
    let (au, aw) = (u.abs(), w.abs());
    if w.is_negative() && aw.cmp_tol(&au) != core::cmp::Ordering::Less {
        0
    } else if !w.is_negative() && aw.cmp_tol(&au) != core::cmp::Ordering::Less {
        1
    } else if u.is_negative() {
        2
    } else {
        3
    }
}

/// Barycentric weights `(corner weights, center weight)` on a triangle.
fn weights<S: Scalar>(triangle: usize, u: &S, w: &S) -> ([S; 4], S) {
    let (u, w) = (u.clone(), w.clone());
    let z = S::zero;
    let one = S::one();
    let two = S::from_i64(2);
    match triangle {
        0 => (
            [-u.clone() - w.clone(), u - w.clone(), z(), z()],
            one + two * w,
        ),
        1 => (
            [z(), z(), -u.clone() + w.clone(), u + w.clone()],
            one - two * w,
        ),
        2 => (
            [-u.clone() - w.clone(), z(), -u.clone() + w, z()],
            one + two * u,
        ),
        _ => (
            [z(), u.clone() - w.clone(), z(), u.clone() + w],
            one - two * u,
        ),
    }
}

/// Piecewise-linear interpolation of corner and center values.
fn interpolate<S: Scalar>(corners: &[S; 4], center: &S, a: &S, b: &S) -> S {
    let half = S::ratio(1, 2);
    let u = a.clone() - half.clone();
    let w = b.clone() - half;
    let (lam, mid) = weights(triangle_of(&u, &w), &u, &w);
    let mut acc = mid * center.clone();
    for k in 0..4 {
        acc = acc + lam[k].clone() * corners[k].clone();
    }
    acc
}

/// The triangle vertices of triangle `k` as local coordinates.
fn triangle_vertices<S: Scalar>(k: usize) -> [(S, S); 3] {
    let (z, o, h) = (S::zero(), S::one(), S::ratio(1, 2));
    let c = (h.clone(), h);
    match k {
        0 => [(z.clone(), z.clone()), (o.clone(), z), c],
        1 => [(z.clone(), o.clone()), (o.clone(), o), c],
        2 => [(z.clone(), z.clone()), (z, o), c],
        _ => [(o.clone(), z), (o.clone(), o), c],
    }
}

/// Pull back along `n`-fold subdivision: the result lives at level
/// `level * n` and has the same associated function.
pub fn pullback_subdivide<S: Scalar>(
    complex: &ProductComplex<S>,
    d: &LatticeDivisor<S>,
    n: usize,
) -> Result<LatticeDivisor<S>, PairingError> {
    if n == 0 {
        return Err(PairingError::ZeroLevel);
    }
    if d.shape != complex.shape() {
        return Err(PairingError::ShapeMismatch);
    }
    let m = d.level;
    let big = m * n;
    let nn = S::from_i64(n as i64);
    let mut out = LatticeDivisor::zero(complex, big)?;
    let h = S::ratio(1, 2);
    for cell in complex.cells(big) {
        let coarse = Cell {
            e1: cell.e1,
            e2: cell.e2,
            i: cell.i / n,
            j: cell.j / n,
        };
        let (cv, cm) = d.cell_values(complex, &coarse);
        let (ri, rj) = (S::from_i64((cell.i % n) as i64), S::from_i64((cell.j % n) as i64));
        let local = |da: S, db: S| {
            let a = (ri.clone() + da) / nn.clone();
            let b = (rj.clone() + db) / nn.clone();
            interpolate(&cv, &cm, &a, &b) * nn.clone()
        };
        let corners = out.cell_corners(complex, &cell);
        let offsets = [(0, 0), (1, 0), (0, 1), (1, 1)];
        for (k, (p1, p2)) in corners.iter().enumerate() {
            let v = local(S::from_i64(offsets[k].0), S::from_i64(offsets[k].1));
            out.set_corner(*p1, *p2, v)?;
        }
        let v = local(h.clone(), h.clone());
        out.set_center(&cell, v)?;
    }
    Ok(out)
}

/// Sample a function on the level-`n` lattice and check that it is linear on
/// every triangle.
///
/// `f(cell_edges, a, b)` takes normalized edge coordinates `a`, `b` in
/// `[0, 1]`. Linearity is tested at the centroid and the three edge
/// midpoints of each triangle.
pub fn function_to_divisor<S: Scalar>(
    complex: &ProductComplex<S>,
    n: usize,
    f: impl Fn(usize, usize, &S, &S) -> S,
) -> Result<LatticeDivisor<S>, PairingError> {
    let mut out = LatticeDivisor::zero(complex, n)?;
    let nn = S::from_i64(n as i64);
    let at = |cell: &Cell, a: &S, b: &S| {
        let ga = (S::from_i64(cell.i as i64) + a.clone()) / nn.clone();
        let gb = (S::from_i64(cell.j as i64) + b.clone()) / nn.clone();
        f(cell.e1, cell.e2, &ga, &gb)
    };
    let h = S::ratio(1, 2);
    for cell in complex.cells(n) {
        let corners = out.cell_corners(complex, &cell);
        let offsets = [(0, 0), (1, 0), (0, 1), (1, 1)];
        for (k, (p1, p2)) in corners.iter().enumerate() {
            let v = at(&cell, &S::from_i64(offsets[k].0), &S::from_i64(offsets[k].1));
            out.set_corner(*p1, *p2, v * nn.clone())?;
        }
        let v = at(&cell, &h, &h);
        out.set_center(&cell, v * nn.clone())?;
    }
    let three = S::from_i64(3);
    for cell in complex.cells(n) {
        for k in 0..4 {
            let tv = triangle_vertices::<S>(k);
            let mut probes = Vec::with_capacity(4);
            probes.push((
                (tv[0].0.clone() + tv[1].0.clone() + tv[2].0.clone()) / three.clone(),
                (tv[0].1.clone() + tv[1].1.clone() + tv[2].1.clone()) / three.clone(),
            ));
            for (p, q) in [(0, 1), (1, 2), (0, 2)] {
                probes.push((
                    (tv[p].0.clone() + tv[q].0.clone()) * h.clone(),
                    (tv[p].1.clone() + tv[q].1.clone()) * h.clone(),
                ));
            }
            for (a, b) in probes {
                if !at(&cell, &a, &b).approx_eq(&out.value_at(complex, &cell, &a, &b)) {
                    return Err(PairingError::NotTriangulationLinear {
                        e1: cell.e1,
                        e2: cell.e2,
                        i: cell.i,
                        j: cell.j,
                        triangle: k,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// The associated function, as a closure in normalized edge coordinates.
pub fn divisor_to_function<'a, S: Scalar>(
    complex: &'a ProductComplex<S>,
    d: &'a LatticeDivisor<S>,
) -> impl Fn(usize, usize, &S, &S) -> S + 'a {
    move |e1, e2, a, b| {
        let n = d.level;
        let nn = S::from_i64(n as i64);
        let locate = |x: &S| {
            let scaled = x.clone() * nn.clone();
            let mut k = scaled.to_f64().floor().max(0.0) as usize;
            if k >= n {
                k = n - 1;
            }
            (k, scaled - S::from_i64(k as i64))
        };
        let (i, la) = locate(a);
        let (j, lb) = locate(b);
        d.value_at(complex, &Cell { e1, e2, i, j }, &la, &lb)
    }
}

/// Trilinear intersection kernel on centered corner vectors.
///
/// `T(Pi, Pi, Pi) = 2`, `T(Pi, Pi, Pj) = -1` for adjacent corners in any
/// slot order, and zero otherwise.
pub fn local_triple_kernel<S: Scalar>(u: &[S; 4], v: &[S; 4], w: &[S; 4]) -> S {
    const ADJ: [(usize, usize); 8] = [
        (0, 1),
        (1, 0),
        (0, 2),
        (2, 0),
        (1, 3),
        (3, 1),
        (2, 3),
        (3, 2),
    ];
    let mut cubes = S::zero();
    for i in 0..4 {
        cubes = cubes + u[i].clone() * v[i].clone() * w[i].clone();
    }
    let mut mixed = S::zero();
    for (i, j) in ADJ {
        mixed = mixed
            + u[i].clone() * v[i].clone() * w[j].clone()
            + u[i].clone() * v[j].clone() * w[i].clone()
            + u[j].clone() * v[i].clone() * w[i].clone();
    }
    S::from_i64(2) * cubes - mixed
}

fn check_triple<S: Scalar>(
    complex: &ProductComplex<S>,
    ds: [&LatticeDivisor<S>; 3],
) -> Result<(), PairingError> {
    for d in ds {
        if d.shape != complex.shape() {
            return Err(PairingError::ShapeMismatch);
        }
    }
    ds[0].same_lattice(ds[1])?;
    ds[0].same_lattice(ds[2])
}

/// Normalized triple product of three level-`n` divisors: the intersection
/// number divided by `n`. With coefficients `n f` this is `n^2` times the
/// kernel sum over the function values, and it does not change under
/// [`pullback_subdivide`].
pub fn discrete_triple<S: Scalar>(
    complex: &ProductComplex<S>,
    f1: &LatticeDivisor<S>,
    f2: &LatticeDivisor<S>,
    f3: &LatticeDivisor<S>,
) -> Result<S, PairingError> {
    check_triple(complex, [f1, f2, f3])?;
    let mut acc = S::zero();
    for cell in complex.cells(f1.level) {
        acc = acc
            + local_triple_kernel(
                &f1.centered(complex, &cell),
                &f2.centered(complex, &cell),
                &f3.centered(complex, &cell),
            );
    }
    Ok(acc / S::from_i64(f1.level as i64))
}

/// [`discrete_triple`] with each cell weighted by `1 / (L1 L2)`, the
/// change of variables from normalized to physical edge coordinates. This
/// is the quantity that approximates [`continuous_triple`] when the factor
/// edges are not of unit length.
pub fn discrete_triple_physical<S: Scalar>(
    complex: &ProductComplex<S>,
    f1: &LatticeDivisor<S>,
    f2: &LatticeDivisor<S>,
    f3: &LatticeDivisor<S>,
) -> Result<S, PairingError> {
    check_triple(complex, [f1, f2, f3])?;
    let mut acc = S::zero();
    for cell in complex.cells(f1.level) {
        let (l1, l2) = complex.edge_lengths(&cell);
        acc = acc
            + local_triple_kernel(
                &f1.centered(complex, &cell),
                &f2.centered(complex, &cell),
                &f3.centered(complex, &cell),
            ) / (l1 * l2);
    }
    Ok(acc / S::from_i64(f1.level as i64))
}

#[cfg(test)]
mod tests;
