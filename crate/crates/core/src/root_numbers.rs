//! Signs of the functional equation for the triple-product motive of a
//! curve, and its archimedean Gamma factor.

use crate::graph::PolarizedGraph;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum RootNumberError {
    #[error("Hodge numbers are negative for genus 1")]
    InvalidForGenusOne,
    #[error("genus must be at least 1")]
    GenusZero,
    #[error("toric rank {rank} exceeds genus {genus}")]
    RankExceedsGenus { rank: u64, genus: u64 },
    #[error("Frobenius determinant must be +1 or -1, got {0}")]
    BadDeterminant(i64),
    #[error("Gamma factor has a pole at s = {0}")]
    PoleAt(f64),
    #[error("empty place list")]
    NoPlaces,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaceKind {
    Real,
    Complex,
    /// Semistable finite place: toric rank `e` and the determinant of
    /// Frobenius on the character group of the torus.
    NonArchimedean { toric_rank: u64, det: i8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalPlaceData {
    pub kind: PlaceKind,
    pub genus: u64,
}

impl LocalPlaceData {
    pub fn real(genus: u64) -> Result<Self, RootNumberError> {
        Self::new(PlaceKind::Real, genus)
    }

    pub fn complex(genus: u64) -> Result<Self, RootNumberError> {
        Self::new(PlaceKind::Complex, genus)
    }

    /// A rank-0 torus has a trivial character group, so `det` is forced
    /// to `+1` there.
    pub fn nonarchimedean(genus: u64, toric_rank: u64, det: i64) -> Result<Self, RootNumberError> {
        if det != 1 && det != -1 {
            return Err(RootNumberError::BadDeterminant(det));
        }
        let det = if toric_rank == 0 { 1 } else { det as i8 };
        Self::new(PlaceKind::NonArchimedean { toric_rank, det }, genus)
    }

    pub fn new(kind: PlaceKind, genus: u64) -> Result<Self, RootNumberError> {
        if genus == 0 {
            return Err(RootNumberError::GenusZero);
        }
        if let PlaceKind::NonArchimedean { toric_rank, det } = kind {
            if toric_rank > genus {
                return Err(RootNumberError::RankExceedsGenus { rank: toric_rank, genus });
            }
            if det != 1 && det != -1 {
                return Err(RootNumberError::BadDeterminant(det as i64));
            }
        }
        Ok(LocalPlaceData { kind, genus })
    }
}

fn parity_sign(exponent: i64) -> i8 {
    if exponent.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `(h^{-2,1}, h^{-1,0}) = (g(g-1)(g-2)/6, g(g-2)(g+1)/2)`.
pub fn hodge_numbers(g: u64) -> Result<(i64, i64), RootNumberError> {
    match g {
        0 => Err(RootNumberError::GenusZero),
        1 => Err(RootNumberError::InvalidForGenusOne),
        _ => {
            let g = g as i64;
            Ok((g * (g - 1) * (g - 2) / 6, g * (g - 2) * (g + 1) / 2))
        }
    }
}

/// `(-1)^{g(g-1)/2}`: `-1` iff `g = 2, 3 mod 4`.
pub fn real_sign(g: u64) -> i8 {
    let g = g as i64;
    parity_sign(g * (g - 1) / 2)
}

/// `(-1)^{g(g+1)(g+2)/6}`: `-1` iff `g = 1 mod 4`.
pub fn complex_sign(g: u64) -> i8 {
    let g = g as i64;
    parity_sign(g * (g + 1) * (g + 2) / 6)
}

/// `(-1)^{e(e-1)(e-2)/6 + g e} det^{(e-1)(e-2)/2 + g}` with no
/// normalization at `e = 0` and no check that `e <= g`.
pub fn nonarchimedean_sign(g: u64, e: u64, det: i8) -> i8 {
    let (g, e) = (g as i64, e as i64);
    let base = parity_sign(e * (e - 1) * (e - 2) / 6 + g * e);
    let t = if det < 0 { parity_sign((e - 1) * (e - 2) / 2 + g) } else { 1 };
    base * t
}

/// Same sign before simplification:
/// `(-1)^{C(e,3)} det^{C(e-1,2)} (-1)^{e(g-2)} det^{g-2}`.
pub fn nonarchimedean_sign_unsimplified(g: u64, e: u64, det: i8) -> i8 {
    let (g, e) = (g as i64, e as i64);
    let pow = |exp: i64| if det < 0 { parity_sign(exp) } else { 1 };
    parity_sign(e * (e - 1) * (e - 2) / 6) * pow((e - 1) * (e - 2) / 2) * parity_sign(e * (g - 2)) * pow(g - 2)
}

/// Local sign of the functional equation.
pub fn local_epsilon(p: &LocalPlaceData) -> i8 {
    match p.kind {
        PlaceKind::Real => real_sign(p.genus),
        PlaceKind::Complex => complex_sign(p.genus),
        PlaceKind::NonArchimedean { toric_rank: 0, .. } => 1,
        PlaceKind::NonArchimedean { toric_rank, det } => nonarchimedean_sign(p.genus, toric_rank, det),
    }
}

pub fn global_epsilon(places: &[LocalPlaceData]) -> Result<i8, RootNumberError> {
    if places.is_empty() {
        return Err(RootNumberError::NoPlaces);
    }
    Ok(places.iter().map(local_epsilon).product())
}

/// The alternative archimedean expressions `i^{6h + 2h'}` (complex) and
/// `i^{4h + 2h'}` (real) in the Hodge numbers `(h, h')`. Genus 1 uses the
/// formal values `(0, -1)`.
pub fn archimedean_sign_via_hodge(kind: PlaceKind, g: u64) -> Option<i8> {
    let gi = g as i64;
    let (h21, h10) = (gi * (gi - 1) * (gi - 2) / 6, gi * (gi - 2) * (gi + 1) / 2);
    let exponent = match kind {
        PlaceKind::Complex => 6 * h21 + 2 * h10,
        PlaceKind::Real => 4 * h21 + 2 * h10,
        PlaceKind::NonArchimedean { .. } => return None,
    };
    // Both exponents are even, so i^k = (-1)^{k/2}.
    Some(parity_sign(exponent.rem_euclid(4) / 2))
}

/// Whether the Hodge-number expression disagrees with the sign used by
/// [`local_epsilon`] for this archimedean kind and genus.
pub fn archimedean_disagreement(kind: PlaceKind, g: u64) -> Option<bool> {
    let via_hodge = archimedean_sign_via_hodge(kind, g)?;
    let used = match kind {
        PlaceKind::Real => real_sign(g),
        PlaceKind::Complex => complex_sign(g),
        PlaceKind::NonArchimedean { .. } => unreachable!(),
    };
    Some(via_hodge != used)
}

/// Toric rank of the Jacobian's reduction: the first Betti number of the
/// reduction graph.
pub fn toric_rank_from_graph<S: Scalar>(g: &PolarizedGraph<S>) -> u64 {
    g.betti()
}

/// Signed value kept in log form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogValue {
    pub ln_abs: f64,
    pub sign: i8,
}

impl LogValue {
    pub fn value(&self) -> f64 {
        self.sign as f64 * libm::exp(self.ln_abs)
    }
}

/// `ln |Gamma_C(s)|` and its sign, `Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s)`.
fn ln_gamma_c(s: f64) -> LogValue {
    let (lg, sign) = libm::lgamma_r(s);
    LogValue {
        ln_abs: core::f64::consts::LN_2 - s * libm::log(2.0 * core::f64::consts::PI) + lg,
        sign: if sign < 0 { -1 } else { 1 },
    }
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == libm::floor(x)
}

/// `Gamma_C(s + 2)^{h^{-2,1}} Gamma_C(s + 1)^{h^{-1,0}}`, evaluated in log
/// space.
pub fn archimedean_l_factor(g: u64, s: f64) -> Result<LogValue, RootNumberError> {
    let (h21, h10) = hodge_numbers(g)?;
    let mut out = LogValue { ln_abs: 0.0, sign: 1 };
    for (shift, exp) in [(2.0, h21), (1.0, h10)] {
        if exp == 0 {
            continue;
        }
        if is_pole(s + shift) {
            return Err(RootNumberError::PoleAt(s));
        }
        let v = ln_gamma_c(s + shift);
        out.ln_abs += exp as f64 * v.ln_abs;
        if v.sign < 0 && exp % 2 != 0 {
            out.sign = -out.sign;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hodge() {
        assert_eq!(hodge_numbers(2), Ok((0, 0)));
        assert_eq!(hodge_numbers(3), Ok((1, 6)));
        assert_eq!(hodge_numbers(1), Err(RootNumberError::InvalidForGenusOne));
    }

    #[test]
    fn signs() {
        assert_eq!(local_epsilon(&LocalPlaceData::real(2).unwrap()), -1);
        assert_eq!(local_epsilon(&LocalPlaceData::complex(1).unwrap()), -1);
        assert_eq!(nonarchimedean_sign(2, 3, 1), -1);
        assert_eq!(local_epsilon(&LocalPlaceData::nonarchimedean(3, 2, -1).unwrap()), -1);
        assert_eq!(
            LocalPlaceData::nonarchimedean(2, 3, 1),
            Err(RootNumberError::RankExceedsGenus { rank: 3, genus: 2 })
        );
    }

    #[test]
    fn global() {
        let mut places = alloc::vec![LocalPlaceData::real(2).unwrap()];
        for _ in 0..3 {
            places.push(LocalPlaceData::nonarchimedean(2, 0, 1).unwrap());
        }
        assert_eq!(global_epsilon(&places), Ok(-1));
        let two_complex = [LocalPlaceData::complex(1).unwrap(); 2];
        assert_eq!(global_epsilon(&two_complex), Ok(1));
        assert_eq!(global_epsilon(&[LocalPlaceData::real(4).unwrap()]), Ok(1));
        assert_eq!(global_epsilon(&[]), Err(RootNumberError::NoPlaces));
    }

    #[test]
    fn l_factor() {
        assert_eq!(archimedean_l_factor(2, 0.3).unwrap().value(), 1.0);
        assert_eq!(archimedean_l_factor(2, -1.0).unwrap().value(), 1.0);
        let pi = core::f64::consts::PI;
        let expect = 2.0 / (4.0 * pi * pi) * libm::pow(2.0 / (2.0 * pi), 6.0);
        let got = archimedean_l_factor(3, 0.0).unwrap().value();
        assert!((got - expect).abs() < 1e-12 * expect);
        assert_eq!(archimedean_l_factor(3, -1.0), Err(RootNumberError::PoleAt(-1.0)));
    }
}
