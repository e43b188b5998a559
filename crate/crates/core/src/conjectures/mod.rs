//! Checkers for the lower bounds on `phi` and `lambda`, the two-sided
//! `epsilon` bounds and the unconditional `phi` bounds.

use crate::admissible::{invariant_bundle, InvariantBundle, InvariantError};
use crate::graph::PolarizedGraph;
use crate::scalar::Scalar;

pub mod families;

pub use families::{generate_family, random_pointed_sum, Family, FamilyError, FamilySpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Equality,
    Fails,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Equality => "equality",
            Verdict::Fails => "fails",
        }
    }

    fn of<S: Scalar>(slack: &S) -> Self {
        if slack.is_zero() {
            Verdict::Equality
        } else if slack.is_positive() {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundName {
    Phi,
    Lambda,
    EpsilonLower,
    EpsilonUpper,
    TrivialLower,
    TrivialUpper,
}

impl BoundName {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::Phi => "phi",
            BoundName::Lambda => "lambda",
            BoundName::EpsilonLower => "epsilon-lower",
            BoundName::EpsilonUpper => "epsilon-upper",
            BoundName::TrivialLower => "trivial-lower",
            BoundName::TrivialUpper => "trivial-upper",
        }
    }
}

/// One inequality `left >= right`; `slack = left - right`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport<S> {
    pub bound: BoundName,
    pub left: S,
    pub right: S,
    pub slack: S,
    pub verdict: Verdict,
    /// Constant `c(g)` used, for bounds that take one.
    pub c: Option<S>,
}

impl<S: Scalar> BoundReport<S> {
    fn new(bound: BoundName, left: S, right: S, c: Option<S>) -> Self {
        let slack = left.clone() - right.clone();
        BoundReport {
            bound,
            verdict: Verdict::of(&slack),
            left,
            right,
            slack,
            c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("genus {0} is below 2")]
    GenusTooSmall(u64),
    #[error("graph is not 2-edge-connected")]
    NotTwoEdgeConnected,
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// `(g - 1) / (6 g)`.
pub fn default_c<S: Scalar>(g: u64) -> S {
    S::ratio(g as i64 - 1, 6 * g as i64)
}

fn need_genus_two(g: u64) -> Result<(), CheckError> {
    if g < 2 {
        Err(CheckError::GenusTooSmall(g))
    } else {
        Ok(())
    }
}

/// `sum_{i>0} coeff(i) * l_i`.
fn bridge_terms<S: Scalar>(b: &InvariantBundle<S>, coeff: impl Fn(i64) -> S) -> S {
    b.type_lengths
        .iter()
        .filter(|(i, _)| **i > 0)
        .fold(S::zero(), |acc, (i, l)| acc + coeff(*i as i64) * l.clone())
}

/// `phi >= c l_0 + sum_{i>0} 2 i (g - i) / g * l_i`.
pub fn phi_bound<S: Scalar>(b: &InvariantBundle<S>, c: Option<S>) -> Result<BoundReport<S>, CheckError> {
    need_genus_two(b.genus)?;
    let g = b.genus as i64;
    let c = c.unwrap_or_else(|| default_c(b.genus));
    let right = c.clone() * b.type_length(0) + bridge_terms(b, |i| S::ratio(2 * i * (g - i), g));
    Ok(BoundReport::new(BoundName::Phi, b.phi.clone(), right, Some(c)))
}

/// `lambda >= g / (8g + 4) l_0 + sum_{i>0} i (g - i) / (2g + 1) * l_i`.
pub fn lambda_bound<S: Scalar>(b: &InvariantBundle<S>) -> Result<BoundReport<S>, CheckError> {
    need_genus_two(b.genus)?;
    let g = b.genus as i64;
    let right = S::ratio(g, 8 * g + 4) * b.type_length(0)
        + bridge_terms(b, |i| S::ratio(i * (g - i), 2 * g + 1));
    Ok(BoundReport::new(BoundName::Lambda, b.lambda.clone(), right, None))
}

/// Lower and upper `epsilon` bounds for a 2-edge-connected graph:
/// `(g-1)/(g+1) (l - 4 g tau) <= epsilon <= 12 g tau - (1 + c) l`.
pub fn epsilon_bounds<S: Scalar>(
    b: &InvariantBundle<S>,
    c: Option<S>,
) -> Result<[BoundReport<S>; 2], CheckError> {
    need_genus_two(b.genus)?;
    let g = b.genus as i64;
    let c = c.unwrap_or_else(|| default_c(b.genus));
    let l = b.total_length.clone();
    let four_g_tau = S::from_i64(4 * g) * b.tau.clone();
    let lower = S::ratio(g - 1, g + 1) * (l.clone() - four_g_tau.clone());
    let upper = S::from_i64(3) * four_g_tau - (S::one() + c.clone()) * l;
    Ok([
        BoundReport::new(BoundName::EpsilonLower, b.epsilon.clone(), lower, Some(c.clone())),
        BoundReport::new(BoundName::EpsilonUpper, upper, b.epsilon.clone(), Some(c)),
    ])
}

/// `-(2g - 1)/4 l <= phi <= 3g/2 l`, valid for every polarized graph.
pub fn trivial_bounds<S: Scalar>(b: &InvariantBundle<S>) -> Result<[BoundReport<S>; 2], CheckError> {
    need_genus_two(b.genus)?;
    let g = b.genus as i64;
    let l = b.total_length.clone();
    Ok([
        BoundReport::new(
            BoundName::TrivialLower,
            b.phi.clone(),
            S::ratio(-(2 * g - 1), 4) * l.clone(),
            None,
        ),
        BoundReport::new(BoundName::TrivialUpper, S::ratio(3 * g, 2) * l, b.phi.clone(), None),
    ])
}

fn bundle_for<S: Scalar>(g: &PolarizedGraph<S>) -> Result<InvariantBundle<S>, CheckError> {
    need_genus_two(g.genus())?;
    Ok(invariant_bundle(g)?)
}

pub fn check_phi_bound<S: Scalar>(g: &PolarizedGraph<S>, c: Option<S>) -> Result<BoundReport<S>, CheckError> {
    phi_bound(&bundle_for(g)?, c)
}

pub fn check_lambda_bound<S: Scalar>(g: &PolarizedGraph<S>) -> Result<BoundReport<S>, CheckError> {
    lambda_bound(&bundle_for(g)?)
}

pub fn check_epsilon_two_sided<S: Scalar>(
    g: &PolarizedGraph<S>,
    c: Option<S>,
) -> Result<[BoundReport<S>; 2], CheckError> {
    if !g.is_two_edge_connected() {
        return Err(CheckError::NotTwoEdgeConnected);
    }
    epsilon_bounds(&bundle_for(g)?, c)
}

pub fn check_trivial_bounds<S: Scalar>(g: &PolarizedGraph<S>) -> Result<[BoundReport<S>; 2], CheckError> {
    trivial_bounds(&bundle_for(g)?)
}

/// For an elementary graph, whether the `phi` bound with the default
/// constant should be attained: every cycle carries at most one point
/// with positive hanging genus.
pub fn phi_equality_expected<S: Scalar>(g: &PolarizedGraph<S>) -> Option<bool> {
    if !g.is_elementary() {
        return None;
    }
    let bridges = g.bridges();
    Some(g.blocks().iter().all(|block| {
        if block.len() == 1 && bridges[block[0]] {
            return true;
        }
        let marked = g
            .vertices_of(block)
            .into_iter()
            .filter(|&v| g.fiber_genus(block, v) > 0)
            .count();
        marked <= 1
    }))
}

/// Slack identities linking the `epsilon` bounds to the `phi`/`lambda`
/// bounds on 2-edge-connected graphs. Returns the two residuals
/// `slack_lambda - (g+1)/(8(2g+1)) slack_lower` and
/// `slack_phi(c/4) - slack_upper(c)/4`, both zero in exact arithmetic.
pub fn equivalence_residuals<S: Scalar>(b: &InvariantBundle<S>, c: Option<S>) -> Result<[S; 2], CheckError> {
    let g = b.genus as i64;
    let c = c.unwrap_or_else(|| default_c(b.genus));
    let [lower, upper] = epsilon_bounds(b, Some(c.clone()))?;
    let lam = lambda_bound(b)?;
    let phi = phi_bound(b, Some(c / S::from_i64(4)))?;
    Ok([
        lam.slack - S::ratio(g + 1, 8 * (2 * g + 1)) * lower.slack,
        phi.slack - upper.slack / S::from_i64(4),
    ])
}
