//! Admissible measure, energy pairing and the invariants built from it.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::graph::{GraphError, GraphPoint, PolarizedGraph};
use crate::poly::{Poly1, Poly2};
use crate::resistance::{PairKernel, ResistanceTables};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("genus 0 graph has no admissible measure")]
    GenusZero,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Atoms at vertices plus a constant density on each edge.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleMeasure<S> {
    pub genus: u64,
    /// `q(v) / g` per vertex.
    pub atoms: Vec<S>,
    /// `1 / (g (L_e + r_e))` per edge, where `r_e` is the resistance
    /// between the ends of `e` once `e` is deleted. Zero on bridges.
    pub densities: Vec<S>,
}

impl<S: Scalar> AdmissibleMeasure<S> {
    pub fn total_mass(&self, g: &PolarizedGraph<S>) -> S {
        let atoms = self.atoms.iter().fold(S::zero(), |a, x| a + x.clone());
        g.edges()
            .iter()
            .zip(&self.densities)
            .fold(atoms, |a, (e, d)| a + e.length.clone() * d.clone())
    }
}

/// Foster's sum `sum_e L_e / (L_e + r_e)` over non-bridges; equals the
/// first Betti number.
pub fn foster_sum<S: Scalar>(g: &PolarizedGraph<S>, tables: &ResistanceTables<S>) -> S {
    g.edges()
        .iter()
        .zip(&tables.complement)
        .filter_map(|(e, r)| {
            r.as_ref()
                .map(|r| e.length.clone() / (e.length.clone() + r.clone()))
        })
        .fold(S::zero(), |a, x| a + x)
}

/// Energy data for a graph: measure, resistance tables, potentials and
/// the energy `tau`.
#[derive(Clone, Debug)]
pub struct Admissible<S> {
    pub graph: PolarizedGraph<S>,
    pub tables: ResistanceTables<S>,
    pub measure: AdmissibleMeasure<S>,
    /// `U(v) = int r(v, y) dmu(y)` at each vertex.
    pub vertex_potential: Vec<S>,
    /// `U` along each edge as a polynomial in the offset.
    pub edge_potential: Vec<Poly1<S>>,
    pub tau: S,
}

impl<S: Scalar> Admissible<S> {
    pub fn new(g: &PolarizedGraph<S>) -> Result<Self, InvariantError> {
        let genus = g.genus();
        if genus == 0 {
            return Err(InvariantError::GenusZero);
        }
        let gs = S::from_i64(genus as i64);
        let tables = ResistanceTables::new(g);
        let atoms: Vec<S> = g
            .vertices()
            .iter()
            .map(|v| S::from_i64(v.q as i64) / gs.clone())
            .collect();
        let densities: Vec<S> = g
            .edges()
            .iter()
            .zip(&tables.complement)
            .map(|(e, r)| match r {
                Some(r) => S::one() / (gs.clone() * (e.length.clone() + r.clone())),
                None => S::zero(),
            })
            .collect();
        let edges = g.edges();

        let vertex_potential: Vec<S> = (0..g.vertex_count())
            .map(|v| {
                let mut u = S::zero();
                for (b, m) in atoms.iter().enumerate() {
                    u = u + m.clone() * tables.vertex[v][b].clone();
                }
                for (e, rho) in densities.iter().enumerate() {
                    if !rho.is_zero() {
                        let len = &edges[e].length;
                        u = u + rho.clone() * tables.profiles[e][v].integrate(&S::zero(), len);
                    }
                }
                u
            })
            .collect();

        let edge_potential: Vec<Poly1<S>> = (0..edges.len())
            .map(|f| {
                let mut u = Poly1::zero();
                for (b, m) in atoms.iter().enumerate() {
                    if !m.is_zero() {
                        u = u.add(&tables.profiles[f][b].scale(m));
                    }
                }
                for (e, rho) in densities.iter().enumerate() {
                    if !rho.is_zero() {
                        let row = tables.kernels[f][e].integrate_t(&edges[e].length);
                        u = u.add(&row.scale(rho));
                    }
                }
                u
            })
            .collect();

        let mut twice_tau = S::zero();
        for (a, m) in atoms.iter().enumerate() {
            twice_tau = twice_tau + m.clone() * vertex_potential[a].clone();
        }
        for (f, rho) in densities.iter().enumerate() {
            if !rho.is_zero() {
                twice_tau = twice_tau
                    + rho.clone() * edge_potential[f].integrate(&S::zero(), &edges[f].length);
            }
        }
        Ok(Admissible {
            graph: g.clone(),
            tables,
            measure: AdmissibleMeasure {
                genus,
                atoms,
                densities,
            },
            vertex_potential,
            edge_potential,
            tau: twice_tau / S::from_i64(2),
        })
    }

    pub fn genus(&self) -> u64 {
        self.measure.genus
    }

    /// `int phi dmu` for `phi` given by its values at vertices and its
    /// restriction to each edge.
    pub fn integrate(&self, at_vertex: &[S], on_edge: &[Poly1<S>]) -> S {
        let mut acc = S::zero();
        for (m, v) in self.measure.atoms.iter().zip(at_vertex) {
            acc = acc + m.clone() * v.clone();
        }
        for ((rho, p), e) in self
            .measure
            .densities
            .iter()
            .zip(on_edge)
            .zip(self.graph.edges())
        {
            if !rho.is_zero() {
                acc = acc + rho.clone() * p.integrate(&S::zero(), &e.length);
            }
        }
        acc
    }

    /// `sum_x ord_K(x) U(x)`.
    pub fn epsilon(&self) -> S {
        (0..self.graph.vertex_count()).fold(S::zero(), |acc, v| {
            acc + S::from_i64(self.graph.canonical_order(v)) * self.vertex_potential[v].clone()
        })
    }

    /// `3 g tau - (epsilon + length) / 4`.
    pub fn phi(&self) -> S {
        let g = S::from_i64(self.genus() as i64);
        S::from_i64(3) * g * self.tau.clone()
            - (self.epsilon() + self.graph.total_length()) / S::from_i64(4)
    }

    /// `g(g-1)/(2(2g+1)) tau + (g+1)/(8(2g+1)) (length + epsilon)`.
    pub fn lambda(&self) -> S {
        let g = self.genus() as i64;
        let d = 2 * g + 1;
        S::ratio(g * (g - 1), 2 * d) * self.tau.clone()
            + S::ratio(g + 1, 8 * d) * (self.graph.total_length() + self.epsilon())
    }

    /// Potential `U(x) = int r(x, y) dmu(y)` at an arbitrary point.
    pub fn potential(&self, x: &GraphPoint<S>) -> Result<S, InvariantError> {
        self.graph.check_point(x)?;
        Ok(match x {
            GraphPoint::Vertex(v) => self.vertex_potential[*v].clone(),
            GraphPoint::OnEdge { edge, offset } => self.edge_potential[*edge].eval(offset),
        })
    }

    /// Resistance read off the precomputed tables.
    pub fn resistance(&self, x: &GraphPoint<S>, y: &GraphPoint<S>) -> Result<S, InvariantError> {
        self.graph.check_point(x)?;
        self.graph.check_point(y)?;
        let t = &self.tables;
        Ok(match (x, y) {
            (GraphPoint::Vertex(a), GraphPoint::Vertex(b)) => t.vertex[*a][*b].clone(),
            (GraphPoint::Vertex(a), GraphPoint::OnEdge { edge, offset })
            | (GraphPoint::OnEdge { edge, offset }, GraphPoint::Vertex(a)) => {
                t.profiles[*edge][*a].eval(offset)
            }
            (GraphPoint::OnEdge { edge: f, offset: s }, GraphPoint::OnEdge { edge: e, offset: u }) => {
                t.kernels[*f][*e].eval(s, u)
            }
        })
    }

    /// `G(x, x) = U(x) - tau`.
    pub fn green_diagonal(&self, x: &GraphPoint<S>) -> Result<S, InvariantError> {
        Ok(self.potential(x)? - self.tau.clone())
    }

    /// `G(x, y) = (G(x, x) + G(y, y) - r(x, y)) / 2`.
    pub fn green_value(&self, x: &GraphPoint<S>, y: &GraphPoint<S>) -> Result<S, InvariantError> {
        let r = self.resistance(x, y)?;
        Ok((self.green_diagonal(x)? + self.green_diagonal(y)? - r) / S::from_i64(2))
    }

    /// `G(x, x)` along edge `f`.
    pub fn green_diagonal_on_edge(&self, f: usize) -> Poly1<S> {
        self.edge_potential[f].sub(&Poly1::constant(self.tau.clone()))
    }

    /// `int G(x, x) dmu(x)`.
    pub fn green_diagonal_mass(&self) -> S {
        let at_v: Vec<S> = self
            .vertex_potential
            .iter()
            .map(|u| u.clone() - self.tau.clone())
            .collect();
        let on_e: Vec<Poly1<S>> = (0..self.graph.edge_count())
            .map(|f| self.green_diagonal_on_edge(f))
            .collect();
        self.integrate(&at_v, &on_e)
    }

    /// `sum_x ord_K(x) G(x, x)`.
    pub fn green_on_canonical(&self) -> S {
        (0..self.graph.vertex_count()).fold(S::zero(), |acc, v| {
            acc + S::from_i64(self.graph.canonical_order(v))
                * (self.vertex_potential[v].clone() - self.tau.clone())
        })
    }

    /// `epsilon` recomputed as `int G(x, x) ((2g - 2) dmu + K)`.
    pub fn epsilon_via_green(&self) -> S {
        let g = self.genus() as i64;
        S::from_i64(2 * g - 2) * self.green_diagonal_mass() + self.green_on_canonical()
    }

    /// `G(v, x)` for a vertex `v` and `x` at offset `s` on edge `f`.
    pub fn green_vertex_edge(&self, v: usize, f: usize) -> Poly1<S> {
        let gvv = self.vertex_potential[v].clone() - self.tau.clone();
        self.green_diagonal_on_edge(f)
            .add(&Poly1::constant(gvv))
            .sub(&self.tables.profiles[f][v])
            .scale(&S::ratio(1, 2))
    }

    /// `G(x, y)` for `x` at offset `s` on `f` and `y` at offset `t` on `e`.
    pub fn green_edge_pair(&self, f: usize, e: usize) -> PairKernel<S> {
        let base = Poly2::from_s(&self.green_diagonal_on_edge(f))
            .add(&Poly2::from_t(&self.green_diagonal_on_edge(e)));
        let half = S::ratio(1, 2);
        match &self.tables.kernels[f][e] {
            PairKernel::Smooth(k) => PairKernel::Smooth(base.sub(k).scale(&half)),
            PairKernel::Diagonal { lower, upper } => PairKernel::Diagonal {
                lower: base.sub(lower).scale(&half),
                upper: base.sub(upper).scale(&half),
            },
        }
    }

    pub fn bundle(&self) -> InvariantBundle<S> {
        InvariantBundle {
            genus: self.genus(),
            total_length: self.graph.total_length(),
            tau: self.tau.clone(),
            epsilon: self.epsilon(),
            phi: self.phi(),
            lambda: self.lambda(),
            type_lengths: self.graph.type_lengths(),
        }
    }
}

/// The invariants reported for one graph.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantBundle<S> {
    pub genus: u64,
    pub total_length: S,
    pub tau: S,
    pub epsilon: S,
    pub phi: S,
    pub lambda: S,
    /// Total length per edge type.
    pub type_lengths: BTreeMap<u64, S>,
}

impl<S: Scalar> InvariantBundle<S> {
    /// `lambda` from `phi`: `(g-1)/(6(2g+1)) phi + (epsilon + length)/12`.
    pub fn lambda_via_phi(&self) -> S {
        let g = self.genus as i64;
        S::ratio(g - 1, 6 * (2 * g + 1)) * self.phi.clone()
            + (self.epsilon.clone() + self.total_length.clone()) / S::from_i64(12)
    }

    pub fn type_length(&self, i: u64) -> S {
        self.type_lengths.get(&i).cloned().unwrap_or_else(S::zero)
    }

    /// Fieldwise comparison within the backend tolerance.
    pub fn approx_eq(&self, other: &Self) -> bool {
        let keys: alloc::collections::BTreeSet<u64> = self
            .type_lengths
            .keys()
            .chain(other.type_lengths.keys())
            .copied()
            .collect();
        self.genus == other.genus
            && self.total_length.approx_eq(&other.total_length)
            && self.tau.approx_eq(&other.tau)
            && self.epsilon.approx_eq(&other.epsilon)
            && self.phi.approx_eq(&other.phi)
            && self.lambda.approx_eq(&other.lambda)
            && keys
                .iter()
                .all(|&k| self.type_length(k).approx_eq(&other.type_length(k)))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> InvariantBundle<T> {
        InvariantBundle {
            genus: self.genus,
            total_length: f(&self.total_length),
            tau: f(&self.tau),
            epsilon: f(&self.epsilon),
            phi: f(&self.phi),
            lambda: f(&self.lambda),
            type_lengths: self.type_lengths.iter().map(|(k, v)| (*k, f(v))).collect(),
        }
    }
}

pub fn admissible_measure<S: Scalar>(
    g: &PolarizedGraph<S>,
) -> Result<AdmissibleMeasure<S>, InvariantError> {
    Ok(Admissible::new(g)?.measure)
}

pub fn tau<S: Scalar>(g: &PolarizedGraph<S>) -> Result<S, InvariantError> {
    Ok(Admissible::new(g)?.tau)
}

pub fn epsilon<S: Scalar>(g: &PolarizedGraph<S>) -> Result<S, InvariantError> {
    Ok(Admissible::new(g)?.epsilon())
}

pub fn phi<S: Scalar>(g: &PolarizedGraph<S>) -> Result<S, InvariantError> {
    Ok(Admissible::new(g)?.phi())
}

pub fn lambda<S: Scalar>(g: &PolarizedGraph<S>) -> Result<S, InvariantError> {
    Ok(Admissible::new(g)?.lambda())
}

pub fn invariant_bundle<S: Scalar>(g: &PolarizedGraph<S>) -> Result<InvariantBundle<S>, InvariantError> {
    Ok(Admissible::new(g)?.bundle())
}

pub fn green_value<S: Scalar>(
    g: &PolarizedGraph<S>,
    x: &GraphPoint<S>,
    y: &GraphPoint<S>,
) -> Result<S, InvariantError> {
    Admissible::new(g)?.green_value(x, y)
}
