use admissible_core::admissible::{foster_sum, invariant_bundle, Admissible};
use admissible_core::closed_forms::{additive_bundle, elementary_bundle};
use admissible_core::complex_pairing::{
    continuous_triple, discrete_triple, pullback_subdivide, CellFunction, LatticeDivisor,
    ProductComplex,
};
use admissible_core::conjectures::{
    check_trivial_bounds, equivalence_residuals, generate_family, random_pointed_sum, FamilySpec,
    Verdict,
};
use admissible_core::graph::{reassemble, GraphPoint};
use admissible_core::poly::Poly2;
use admissible_core::resistance::point_resistance;
use admissible_core::root_numbers::{archimedean_sign_via_hodge, complex_sign, real_sign, PlaceKind};
use admissible_core::{rat, PolarizedGraph, Rational, Scalar};
use proptest::prelude::*;

type Q = Rational;

fn random_graph(seed: u64) -> PolarizedGraph<Q> {
    let spec = FamilySpec::parse("random-polarized").unwrap();
    generate_family(&spec, 1, seed).unwrap().remove(0)
}

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig::with_cases(n)
}

proptest! {
    #![proptest_config(cases(24))]

    #[test]
    fn foster_sum_is_betti(seed in 0u64..10_000) {
        let g = random_graph(seed);
        let adm = Admissible::new(&g);
        prop_assume!(adm.is_ok());
        let adm = adm.unwrap();
        prop_assert_eq!(foster_sum(&g, &adm.tables), rat(g.betti() as i64, 1));
        prop_assert_eq!(adm.measure.total_mass(&g), rat(1, 1));
    }

    #[test]
    fn resistance_routes_agree(seed in 0u64..10_000, a in 0i64..7, b in 0i64..7) {
        let g = random_graph(seed);
        prop_assume!(g.genus() > 0);
        let adm = Admissible::new(&g).unwrap();
        let m = g.edge_count();
        let (e, f) = ((seed as usize) % m, (seed as usize / 7) % m);
        let x = GraphPoint::OnEdge { edge: e, offset: g.edges()[e].length.clone() * rat(a, 7) };
        let y = GraphPoint::OnEdge { edge: f, offset: g.edges()[f].length.clone() * rat(b, 7) };
        prop_assert_eq!(point_resistance(&g, &x, &y).unwrap(), adm.resistance(&x, &y).unwrap());
    }

    #[test]
    fn invariant_identities(seed in 0u64..10_000) {
        let g = random_graph(seed);
        prop_assume!(g.genus() > 0);
        let adm = Admissible::new(&g).unwrap();
        let b = adm.bundle();
        prop_assert_eq!(b.lambda_via_phi(), b.lambda.clone());
        prop_assert_eq!(adm.epsilon_via_green(), b.epsilon.clone());
        // Scaling all lengths scales every invariant.
        let k = rat(5, 3);
        let scaled = invariant_bundle(&g.scaled(&k)).unwrap();
        prop_assert_eq!(scaled.tau, b.tau.clone() * k.clone());
        prop_assert_eq!(scaled.phi, b.phi.clone() * k);
        if g.genus() >= 2 && g.is_two_edge_connected() {
            let r = equivalence_residuals(&b, None).unwrap();
            prop_assert_eq!(&r[0], &rat(0, 1));
            prop_assert_eq!(&r[1], &rat(0, 1));
        }
    }

    #[test]
    fn pointed_sums_are_additive(seed in 0u64..10_000) {
        let g: PolarizedGraph<Q> = random_pointed_sum(seed);
        let direct = invariant_bundle(&g).unwrap();
        let summed = additive_bundle(&g).unwrap();
        prop_assert_eq!(&direct, &summed);
        let pieces = g.decompose_pointed_sum();
        prop_assert!(reassemble(&pieces).unwrap().is_isometric(&g));
        if let Some(e) = elementary_bundle(&g) {
            prop_assert_eq!(&e, &direct);
        }
    }

    #[test]
    fn trivial_bounds_hold(seed in 0u64..10_000) {
        let g = random_graph(seed);
        prop_assume!(g.genus() >= 2);
        for r in check_trivial_bounds(&g).unwrap() {
            prop_assert_ne!(r.verdict, Verdict::Fails);
        }
    }

    #[test]
    fn families_are_deterministic(seed in 0u64..1_000_000) {
        let spec = FamilySpec::parse("theta-variants").unwrap();
        let a: Vec<PolarizedGraph<Q>> = generate_family(&spec, 3, seed).unwrap();
        let b: Vec<PolarizedGraph<Q>> = generate_family(&spec, 3, seed).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn archimedean_signs_have_period_four(g in 2u64..200) {
        prop_assert_eq!(real_sign(g), real_sign(g + 4));
        prop_assert_eq!(complex_sign(g), complex_sign(g + 4));
        prop_assert_eq!(archimedean_sign_via_hodge(PlaceKind::Real, g), archimedean_sign_via_hodge(PlaceKind::Real, g + 4));
    }
}

/// A path with `k` edges of the given lengths, genus one at both ends.
fn path(lengths: &[i64]) -> PolarizedGraph<Q> {
    let mut b = admissible_core::GraphBuilder::new();
    for i in 0..=lengths.len() {
        let q = if i == 0 || i == lengths.len() { 1 } else { 0 };
        b = b.vertex(&format!("v{i}"), q);
    }
    for (i, &l) in lengths.iter().enumerate() {
        b = b.edge(&format!("e{i}"), &format!("v{i}"), &format!("v{}", i + 1), rat(l, 1));
    }
    b.build().unwrap()
}

fn level_one(c: &ProductComplex<Q>, coeffs: &[i64]) -> LatticeDivisor<Q> {
    let mut d = LatticeDivisor::zero(c, 1).unwrap();
    let s = c.shape();
    let mut it = coeffs.iter().cycle();
    for a in 0..s.vertices.0 {
        for b in 0..s.vertices.1 {
            d.set_corner(a, b, rat(*it.next().unwrap(), 1)).unwrap();
        }
    }
    for cell in c.cells(1) {
        d.set_center(&cell, rat(*it.next().unwrap(), 2)).unwrap();
    }
    d
}

proptest! {
    #![proptest_config(cases(16))]

    #[test]
    fn subdivision_invariance(
        k1 in 1usize..=4,
        k2 in 1usize..=4,
        n in 1usize..=4,
        coeffs in proptest::collection::vec(-3i64..=3, 3 * 8),
    ) {
        let c = ProductComplex::new(path(&vec![1; k1]), path(&vec![2; k2])).unwrap();
        let ds: Vec<_> = coeffs.chunks(8).map(|ch| level_one(&c, ch)).collect();
        let base = discrete_triple(&c, &ds[0], &ds[1], &ds[2]).unwrap();
        let up: Vec<_> = ds.iter().map(|d| pullback_subdivide(&c, d, n).unwrap()).collect();
        prop_assert_eq!(discrete_triple(&c, &up[0], &up[1], &up[2]).unwrap(), base.clone());
        // Symmetry under permutations.
        prop_assert_eq!(discrete_triple(&c, &ds[2], &ds[0], &ds[1]).unwrap(), base.clone());
        prop_assert_eq!(discrete_triple(&c, &ds[1], &ds[0], &ds[2]).unwrap(), base);
    }

    #[test]
    fn continuous_pairing_is_symmetric(
        cs in proptest::collection::vec(-3i64..=3, 3 * 9),
    ) {
        let c = ProductComplex::new(path(&[1]), path(&[1])).unwrap();
        let fs: Vec<_> = cs
            .chunks(9)
            .map(|ch| {
                let rows = (0..3).map(|i| (0..3).map(|j| rat(ch[3 * i + j], 1)).collect()).collect();
                CellFunction::uniform(c.clone(), Poly2::from_coeffs(rows))
            })
            .collect();
        let a = continuous_triple(&fs[0], &fs[1], &fs[2]).unwrap();
        prop_assert_eq!(continuous_triple(&fs[1], &fs[2], &fs[0]).unwrap(), a.clone());
        prop_assert_eq!(continuous_triple(&fs[2], &fs[1], &fs[0]).unwrap(), a);
    }
}

#[test]
fn float_backend_tracks_exact() {
    for seed in 0..20 {
        let g = random_graph(seed);
        if g.genus() == 0 {
            continue;
        }
        let exact = invariant_bundle(&g).unwrap();
        let float = invariant_bundle(&g.map_lengths(|l| Scalar::to_f64(l))).unwrap();
        assert!(exact.map(|x| Scalar::to_f64(x)).approx_eq(&float), "seed {seed}");
    }
}
