//! Small dense polynomials in one and two variables.
//!
//! Resistance along an edge is quadratic in the offset and the edge-pair
//! kernel is a bivariate quadratic, so exact integration of products stays
//! cheap.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::Scalar;

/// `c[0] + c[1] x + c[2] x^2 + ...`
#[derive(Clone, Debug, PartialEq)]
pub struct Poly1<S> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> Poly1<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        Poly1 { coeffs }
    }

    pub fn zero() -> Self {
        Poly1 { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Poly1 { coeffs: vec![c] }
    }

    /// `c0 + c1 x`
    pub fn linear(c0: S, c1: S) -> Self {
        Poly1 { coeffs: vec![c0, c1] }
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::linear(S::zero(), S::one())
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly1 {
            coeffs: (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, k: &S) -> Self {
        Poly1 {
            coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly1 { coeffs: out }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(S::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly1 {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * S::from_i64(i as i64))
                .collect(),
        }
    }

    /// Antiderivative vanishing at 0.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(S::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / S::from_i64(i as i64 + 1));
        }
        Poly1 { coeffs }
    }

    /// Definite integral over `[a, b]`.
    pub fn integrate(&self, a: &S, b: &S) -> S {
        let anti = self.antiderivative();
        anti.eval(b) - anti.eval(a)
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// `self(L - x)`: reparametrize an edge from the other end.
    pub fn reflect(&self, length: &S) -> Self {
        self.compose(&Self::linear(length.clone(), -S::one()))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly1<T> {
        Poly1 {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

/// `sum c[i][j] s^i t^j`
#[derive(Clone, Debug, PartialEq)]
pub struct Poly2<S> {
    pub coeffs: Vec<Vec<S>>,
}

impl<S: Scalar> Poly2<S> {
    pub fn zero() -> Self {
        Poly2 { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Poly2 {
            coeffs: vec![vec![c]],
        }
    }

    /// Embed a polynomial in `s` (constant in `t`).
    pub fn from_s(p: &Poly1<S>) -> Self {
        Poly2 {
            coeffs: p.coeffs.iter().map(|c| vec![c.clone()]).collect(),
        }
    }

    /// Embed a polynomial in `t` (constant in `s`).
    pub fn from_t(p: &Poly1<S>) -> Self {
        Poly2 {
            coeffs: vec![p.coeffs.clone()],
        }
    }

    /// Build from explicit coefficients `c[i][j]` of `s^i t^j`.
    pub fn from_coeffs(coeffs: Vec<Vec<S>>) -> Self {
        Poly2 { coeffs }
    }

    pub fn coeff(&self, i: usize, j: usize) -> S {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    fn dims(&self) -> (usize, usize) {
        let rows = self.coeffs.len();
        let cols = self.coeffs.iter().map(|r| r.len()).max().unwrap_or(0);
        (rows, cols)
    }

    pub fn eval(&self, s: &S, t: &S) -> S {
        self.restrict_s(s).eval(t)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (r1, c1) = self.dims();
        let (r2, c2) = other.dims();
        let (r, c) = (r1.max(r2), c1.max(c2));
        Poly2 {
            coeffs: (0..r)
                .map(|i| (0..c).map(|j| self.coeff(i, j) + other.coeff(i, j)).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, k: &S) -> Self {
        Poly2 {
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|c| c.clone() * k.clone()).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (r1, c1) = self.dims();
        let (r2, c2) = other.dims();
        if r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0 {
            return Self::zero();
        }
        let mut out = vec![vec![S::zero(); c1 + c2 - 1]; r1 + r2 - 1];
        for (i1, row1) in self.coeffs.iter().enumerate() {
            for (j1, a) in row1.iter().enumerate() {
                if a.is_zero() && S::EXACT {
                    continue;
                }
                for (i2, row2) in other.coeffs.iter().enumerate() {
                    for (j2, b) in row2.iter().enumerate() {
                        let cell = &mut out[i1 + i2][j1 + j2];
                        *cell = cell.clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Poly2 { coeffs: out }
    }

    pub fn d_s(&self) -> Self {
        Poly2 {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, row)| {
                    row.iter()
                        .map(|c| c.clone() * S::from_i64(i as i64))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn d_t(&self) -> Self {
        Poly2 {
            coeffs: self
                .coeffs
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .skip(1)
                        .map(|(j, c)| c.clone() * S::from_i64(j as i64))
                        .collect()
                })
                .collect(),
        }
    }

    /// Swap the roles of `s` and `t`.
    pub fn transpose(&self) -> Self {
        let (r, c) = self.dims();
        Poly2 {
            coeffs: (0..c)
                .map(|j| (0..r).map(|i| self.coeff(i, j)).collect())
                .collect(),
        }
    }

    /// Fix `s`, leaving a polynomial in `t`.
    pub fn restrict_s(&self, s: &S) -> Poly1<S> {
        let (_, c) = self.dims();
        let mut out = vec![S::zero(); c];
        let mut pow = S::one();
        for row in &self.coeffs {
            for (j, a) in row.iter().enumerate() {
                out[j] = out[j].clone() + a.clone() * pow.clone();
            }
            pow = pow * s.clone();
        }
        Poly1 { coeffs: out }
    }

    /// Fix `t`, leaving a polynomial in `s`.
    pub fn restrict_t(&self, t: &S) -> Poly1<S> {
        self.transpose().restrict_s(t)
    }

    /// Substitute `t = g(s)`, leaving a polynomial in `s`.
    pub fn substitute_t(&self, g: &Poly1<S>) -> Poly1<S> {
        let mut acc = Poly1::zero();
        for (i, row) in self.coeffs.iter().enumerate() {
            let inner = Poly1::new(row.clone()).compose(g);
            acc = acc.add(&inner.mul(&Poly1::x().pow(i as u32)));
        }
        acc
    }

    /// Substitute `s = g(t)`, leaving a polynomial in `t`.
    pub fn substitute_s(&self, g: &Poly1<S>) -> Poly1<S> {
        self.transpose().substitute_t(g)
    }

    /// `int_{lo(s)}^{hi(s)} p(s, t) dt` as a polynomial in `s`.
    pub fn integrate_t(&self, lo: &Poly1<S>, hi: &Poly1<S>) -> Poly1<S> {
        let mut acc = Poly1::zero();
        for (i, row) in self.coeffs.iter().enumerate() {
            let anti = Poly1::new(row.clone()).antiderivative();
            let inner = anti.compose(hi).sub(&anti.compose(lo));
            acc = acc.add(&inner.mul(&Poly1::x().pow(i as u32)));
        }
        acc
    }

    /// `int_{lo(t)}^{hi(t)} p(s, t) ds` as a polynomial in `t`.
    pub fn integrate_s(&self, lo: &Poly1<S>, hi: &Poly1<S>) -> Poly1<S> {
        self.transpose().integrate_t(lo, hi)
    }

    /// Integral over the rectangle `[0, a] x [0, b]`.
    pub fn integrate_rect(&self, a: &S, b: &S) -> S {
        self.integrate_t(&Poly1::zero(), &Poly1::constant(b.clone()))
            .integrate(&S::zero(), a)
    }

    /// Integral over `{0 <= t <= s <= a}`.
    pub fn integrate_lower(&self, a: &S) -> S {
        self.integrate_t(&Poly1::zero(), &Poly1::x())
            .integrate(&S::zero(), a)
    }

    /// Integral over `{0 <= s <= t <= a}`.
    pub fn integrate_upper(&self, a: &S) -> S {
        self.integrate_t(&Poly1::x(), &Poly1::constant(a.clone()))
            .integrate(&S::zero(), a)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly2<T> {
        Poly2 {
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(&f).collect())
                .collect(),
        }
    }
}
