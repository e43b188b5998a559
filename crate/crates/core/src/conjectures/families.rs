//! Deterministic graph families for batch experiments.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{validate, PolarizedGraph, RawEdge, RawGraph, RawVertex};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// One circle with marked points.
    Circles,
    /// Loops joined in a row by bridges.
    ChainsOfCircles,
    /// Two vertices joined by `m` edges.
    Banana,
    /// Theta graphs with subdivided edges and random `q`.
    ThetaVariants,
    RandomPolarized,
    Wheel,
    Complete,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Circles => "circles",
            Family::ChainsOfCircles => "chains-of-circles",
            Family::Banana => "banana",
            Family::ThetaVariants => "theta-variants",
            Family::RandomPolarized => "random-polarized",
            Family::Wheel => "wheel",
            Family::Complete => "complete",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "circles" => Family::Circles,
            "chains-of-circles" => Family::ChainsOfCircles,
            "banana" => Family::Banana,
            "theta-variants" => Family::ThetaVariants,
            "random-polarized" => Family::RandomPolarized,
            "wheel" => Family::Wheel,
            "complete" => Family::Complete,
            _ => return None,
        })
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            Family::Circles => &["marks", "g"],
            Family::ChainsOfCircles => &["k", "g"],
            Family::Banana => &["m", "q"],
            Family::ThetaVariants => &["q"],
            Family::RandomPolarized => &["vertices", "edges", "q"],
            Family::Wheel | Family::Complete => &["k"],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
}

fn invalid(msg: impl Into<String>) -> FamilyError {
    FamilyError::InvalidSpec(msg.into())
}

/// Family name plus integer parameters, e.g. `banana:m=3,lengths=unit`.
/// Missing parameters are drawn from the seeded generator per graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub params: BTreeMap<String, i64>,
    pub unit_lengths: bool,
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        FamilySpec {
            family,
            params: BTreeMap::new(),
            unit_lengths: false,
        }
    }

    pub fn with(mut self, key: &str, value: i64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn unit(mut self) -> Self {
        self.unit_lengths = true;
        self
    }

    pub fn parse(text: &str) -> Result<Self, FamilyError> {
        let (name, rest) = match text.split_once(':') {
            Some((n, r)) => (n.trim(), Some(r)),
            None => (text.trim(), None),
        };
        let family = Family::from_name(name).ok_or_else(|| invalid(format!("unknown family `{name}`")))?;
        let mut spec = FamilySpec::new(family);
        for item in rest.into_iter().flat_map(|r| r.split(',')).map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| invalid(format!("expected key=value, got `{item}`")))?;
            let (k, v) = (k.trim(), v.trim());
            if k == "lengths" {
                spec.unit_lengths = match v {
                    "unit" => true,
                    "random" => false,
                    _ => return Err(invalid(format!("lengths must be unit or random, got `{v}`"))),
                };
                continue;
            }
            if !family.keys().contains(&k) {
                return Err(invalid(format!("`{}` takes no parameter `{k}`", family.name())));
            }
            let n: i64 = v.parse().map_err(|_| invalid(format!("`{k}` needs an integer, got `{v}`")))?;
            spec.params.insert(k.to_string(), n);
        }
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<(), FamilyError> {
        let p = |k: &str| self.params.get(k).copied();
        let at_least = |k: &str, lo: i64| match p(k) {
            Some(v) if v < lo => Err(invalid(format!("`{k}` must be at least {lo}"))),
            _ => Ok(()),
        };
        match self.family {
            Family::Circles => {
                at_least("marks", 1)?;
                at_least("g", 1)
            }
            Family::ChainsOfCircles => {
                at_least("k", 1)?;
                at_least("g", 1)?;
                if let (Some(k), Some(g)) = (p("k"), p("g")) {
                    if g < k {
                        return Err(invalid("chains need g >= k"));
                    }
                }
                Ok(())
            }
            Family::Banana => {
                at_least("m", 1)?;
                at_least("q", 0)
            }
            Family::ThetaVariants => at_least("q", 0),
            Family::RandomPolarized => {
                at_least("vertices", 1)?;
                at_least("q", 0)?;
                if let (Some(n), Some(m)) = (p("vertices"), p("edges")) {
                    if m < n - 1 {
                        return Err(invalid("random-polarized needs edges >= vertices - 1"));
                    }
                }
                Ok(())
            }
            Family::Wheel => at_least("k", 3),
            Family::Complete => at_least("k", 2),
        }
    }
}

struct Builder<S> {
    raw: RawGraph<S>,
}

impl<S: Scalar> Builder<S> {
    fn new() -> Self {
        Builder {
            raw: RawGraph {
                vertices: Vec::new(),
                edges: Vec::new(),
            },
        }
    }

    fn vertex(&mut self, q: i64) -> usize {
        let i = self.raw.vertices.len();
        self.raw.vertices.push(RawVertex { id: format!("v{i}"), q });
        i
    }

    fn edge(&mut self, a: usize, b: usize, length: S) {
        let i = self.raw.edges.len();
        self.raw.edges.push(RawEdge {
            id: format!("e{i}"),
            ends: [format!("v{a}"), format!("v{b}")],
            length,
        });
    }

    /// Raise `q` where the canonical divisor would be negative.
    fn finish(mut self) -> PolarizedGraph<S> {
        let n = self.raw.vertices.len();
        let mut valence = alloc::vec![0i64; n];
        for e in &self.raw.edges {
            for end in &e.ends {
                let i: usize = end[1..].parse().expect("generated id");
                valence[i] += 1;
            }
        }
        for (v, val) in self.raw.vertices.iter_mut().zip(valence) {
            while val + 2 * v.q - 2 < 0 {
                v.q += 1;
            }
        }
        validate(&self.raw).expect("generated graph is valid")
    }
}

fn length<S: Scalar>(rng: &mut ChaCha8Rng, unit: bool) -> S {
    if unit {
        S::one()
    } else {
        S::ratio(rng.gen_range(1..=6), rng.gen_range(1..=3))
    }
}

/// Spread `budget` units of genus over `slots` entries.
fn spread(rng: &mut ChaCha8Rng, budget: i64, slots: usize) -> Vec<i64> {
    let mut q = alloc::vec![0i64; slots];
    for _ in 0..budget {
        q[rng.gen_range(0..slots)] += 1;
    }
    q
}

/// `count` graphs from `spec`, deterministic in `seed`.
pub fn generate_family<S: Scalar>(
    spec: &FamilySpec,
    count: usize,
    seed: u64,
) -> Result<Vec<PolarizedGraph<S>>, FamilyError> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = spec.unit_lengths;
    let param = |rng: &mut ChaCha8Rng, k: &str, lo: i64, hi: i64| {
        spec.params.get(k).copied().unwrap_or_else(|| rng.gen_range(lo..=hi))
    };
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut b = Builder::<S>::new();
        match spec.family {
            Family::Circles => {
                let marks = param(&mut rng, "marks", 1, 4) as usize;
                let g = param(&mut rng, "g", 2, 5);
                let q = spread(&mut rng, g - 1, marks);
                let vs: Vec<usize> = q.iter().map(|&qi| b.vertex(qi)).collect();
                for i in 0..marks {
                    let len = length(&mut rng, unit);
                    b.edge(vs[i], vs[(i + 1) % marks], len);
                }
            }
            Family::ChainsOfCircles => {
                let k = param(&mut rng, "k", 2, 4);
                let g = spec
                    .params
                    .get("g")
                    .copied()
                    .unwrap_or_else(|| rng.gen_range(k..=k.max(5)));
                let q = spread(&mut rng, g - k, k as usize);
                let vs: Vec<usize> = q.iter().map(|&qi| b.vertex(qi)).collect();
                for (i, &v) in vs.iter().enumerate() {
                    let len = length(&mut rng, unit);
                    b.edge(v, v, len);
                    if i + 1 < vs.len() {
                        let len = length(&mut rng, unit);
                        b.edge(v, vs[i + 1], len);
                    }
                }
            }
            Family::Banana => {
                let m = param(&mut rng, "m", 2, 6) as usize;
                let q = spread(&mut rng, spec.params.get("q").copied().unwrap_or(0), 2);
                let (x, y) = (b.vertex(q[0]), b.vertex(q[1]));
                for _ in 0..m {
                    let len = length(&mut rng, unit);
                    b.edge(x, y, len);
                }
            }
            Family::ThetaVariants => {
                let budget = param(&mut rng, "q", 0, 2);
                let (x, y) = (b.vertex(0), b.vertex(0));
                let mut chain_vertices = Vec::new();
                for _ in 0..3 {
                    let inner = rng.gen_range(0..=2usize);
                    let mut prev = x;
                    for _ in 0..inner {
                        let v = b.vertex(0);
                        chain_vertices.push(v);
                        let len = length(&mut rng, unit);
                        b.edge(prev, v, len);
                        prev = v;
                    }
                    let len = length(&mut rng, unit);
                    b.edge(prev, y, len);
                }
                let n = b.raw.vertices.len();
                for (v, q) in spread(&mut rng, budget, n).into_iter().enumerate() {
                    b.raw.vertices[v].q += q;
                }
            }
            Family::RandomPolarized => {
                let n = param(&mut rng, "vertices", 1, 6) as usize;
                let lo = n as i64 - 1;
                let m = param(&mut rng, "edges", lo.max(1), lo + 4);
                let budget = param(&mut rng, "q", 0, 2);
                let q = spread(&mut rng, budget, n);
                for &qi in &q {
                    b.vertex(qi);
                }
                for v in 1..n {
                    let u = rng.gen_range(0..v);
                    let len = length(&mut rng, unit);
                    b.edge(u, v, len);
                }
                for _ in (n as i64 - 1)..m {
                    let u = rng.gen_range(0..n);
                    let v = rng.gen_range(0..n);
                    let len = length(&mut rng, unit);
                    b.edge(u, v, len);
                }
            }
            Family::Wheel => {
                let k = param(&mut rng, "k", 3, 6) as usize;
                let hub = b.vertex(0);
                let rim: Vec<usize> = (0..k).map(|_| b.vertex(0)).collect();
                for i in 0..k {
                    let len = length(&mut rng, unit);
                    b.edge(hub, rim[i], len);
                    let len = length(&mut rng, unit);
                    b.edge(rim[i], rim[(i + 1) % k], len);
                }
            }
            Family::Complete => {
                let k = param(&mut rng, "k", 3, 5) as usize;
                let vs: Vec<usize> = (0..k).map(|_| b.vertex(0)).collect();
                for i in 0..k {
                    for j in (i + 1)..k {
                        let len = length(&mut rng, unit);
                        b.edge(vs[i], vs[j], len);
                    }
                }
            }
        }
        out.push(b.finish());
    }
    Ok(out)
}

/// A random pointed sum of two to four small pieces (loops, cycles,
/// bananas and thetas), glued at a vertex or joined by a bridge. Lengths
/// are random rationals. Deterministic in `seed`.
pub fn random_pointed_sum<S: Scalar>(seed: u64) -> PolarizedGraph<S> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::<S>::new();
    let pieces = rng.gen_range(2..=4);
    for p in 0..pieces {
        let anchor = if p == 0 {
            b.vertex(0)
        } else {
            let old = rng.gen_range(0..b.raw.vertices.len());
            if rng.gen_bool(0.5) {
                old
            } else {
                let v = b.vertex(0);
                let len = length(&mut rng, false);
                b.edge(old, v, len);
                v
            }
        };
        match rng.gen_range(0..4) {
            0 => {
                let len = length(&mut rng, false);
                b.edge(anchor, anchor, len);
            }
            1 => {
                let k = rng.gen_range(2..=3);
                let mut prev = anchor;
                for _ in 1..k {
                    let v = b.vertex(0);
                    let len = length(&mut rng, false);
                    b.edge(prev, v, len);
                    prev = v;
                }
                let len = length(&mut rng, false);
                b.edge(prev, anchor, len);
            }
            2 => {
                let v = b.vertex(0);
                for _ in 0..rng.gen_range(2..=3) {
                    let len = length(&mut rng, false);
                    b.edge(anchor, v, len);
                }
            }
            _ => {
                let (x, y) = (b.vertex(0), b.vertex(0));
                for (u, w) in [(anchor, x), (x, y), (y, anchor), (anchor, y)] {
                    let len = length(&mut rng, false);
                    b.edge(u, w, len);
                }
            }
        }
    }
    let n = b.raw.vertices.len();
    let budget = rng.gen_range(0..=2);
    for (v, q) in spread(&mut rng, budget, n).into_iter().enumerate() {
        b.raw.vertices[v].q += q;
    }
    b.finish()
}
