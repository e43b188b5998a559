use super::*;
use crate::admissible::Admissible;
use crate::graph::GraphBuilder;
use crate::poly::{Poly1, Poly2};
use crate::scalar::{rat, Rational};
use alloc::vec::Vec;

type Q = Rational;

fn segment(len: Q) -> PolarizedGraph<Q> {
    GraphBuilder::new()
        .vertex("a", 1)
        .vertex("b", 1)
        .edge("e", "a", "b", len)
        .build()
        .unwrap()
}

/// Center vertex with `k` spokes to genus-one leaves.
fn star(k: usize) -> PolarizedGraph<Q> {
    let mut b = GraphBuilder::new().vertex("c", if k == 1 { 1 } else { 0 });
    for i in 0..k {
        let leaf = alloc::format!("l{i}");
        b = b.vertex(&leaf, 1).edge(&alloc::format!("s{i}"), "c", &leaf, rat(1, 1));
    }
    b.build().unwrap()
}

fn theta() -> PolarizedGraph<Q> {
    GraphBuilder::new()
        .vertex("p", 0)
        .vertex("q", 0)
        .edge("a", "p", "q", rat(1, 1))
        .edge("b", "p", "q", rat(1, 1))
        .edge("c", "p", "q", rat(1, 1))
        .build()
        .unwrap()
}

fn unit(k: usize) -> [Q; 4] {
    let mut v = [rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)];
    v[k] = rat(1, 1);
    v
}

#[test]
fn kernel_pins() {
    let e = [rat(-1, 2), rat(-1, 2), rat(-1, 2), rat(-1, 2)];
    assert_eq!(local_triple_kernel(&unit(0), &unit(0), &unit(0)), rat(2, 1));
    assert_eq!(local_triple_kernel(&unit(0), &unit(0), &unit(2)), rat(-1, 1));
    assert_eq!(local_triple_kernel(&unit(0), &unit(0), &unit(3)), rat(0, 1));
    assert_eq!(local_triple_kernel(&e, &e, &e), rat(2, 1));
    assert_eq!(local_triple_kernel(&unit(0), &unit(2), &e), rat(1, 1));
}

#[test]
fn one_cell_values() {
    let c = ProductComplex::new(segment(rat(1, 1)), segment(rat(1, 1))).unwrap();
    let a = LatticeDivisor::component(&c, 0, 0).unwrap();
    let e = LatticeDivisor::exceptional(&c, 0, 0).unwrap();
    assert_eq!(discrete_triple(&c, &a, &a, &a).unwrap(), rat(2, 1));
    let a2 = pullback_subdivide(&c, &a, 2).unwrap();
    assert_eq!(discrete_triple(&c, &a2, &a2, &a2).unwrap(), rat(2, 1));
    assert_eq!(discrete_triple(&c, &e, &e, &a).unwrap(), rat(-1, 1));
    assert_eq!(discrete_triple(&c, &e, &e, &e).unwrap(), rat(2, 1));

    // f = xy: corners (0, 0, 0, 1), center 1/4.
    let xy = function_to_divisor(&c, 1, |_, _, a, b| a.clone() * b.clone());
    assert!(matches!(xy, Err(PairingError::NotTriangulationLinear { .. })));
    let mut d = LatticeDivisor::zero(&c, 1).unwrap();
    d.set_corner(1, 1, rat(1, 1)).unwrap();
    d.set_center(&Cell { e1: 0, e2: 0, i: 0, j: 0 }, rat(1, 4)).unwrap();
    assert_eq!(discrete_triple(&c, &d, &d, &d).unwrap(), rat(3, 2));

    assert!(matches!(
        discrete_triple(&c, &a, &a2, &a),
        Err(PairingError::LevelMismatch(1, 2))
    ));
}

#[test]
fn pullback_samples_the_function() {
    let c = ProductComplex::new(segment(rat(1, 1)), segment(rat(1, 1))).unwrap();
    let a = LatticeDivisor::component(&c, 0, 0).unwrap();
    let a2 = pullback_subdivide(&c, &a, 2).unwrap();
    // Factor lattice at level 2: 0 -> a, 1 -> b, 2 -> midpoint.
    assert_eq!(*a2.corner(0, 0), rat(2, 1));
    assert_eq!(*a2.corner(2, 0), rat(1, 1));
    assert_eq!(*a2.corner(0, 2), rat(1, 1));
    assert_eq!(*a2.corner(2, 2), rat(0, 1));
    assert_eq!(*a2.center(&Cell { e1: 0, e2: 0, i: 0, j: 0 }), rat(1, 1));
    assert_eq!(*a2.center(&Cell { e1: 0, e2: 0, i: 1, j: 0 }), rat(0, 1));

    let e = LatticeDivisor::exceptional(&c, 0, 0).unwrap();
    let e2 = pullback_subdivide(&c, &e, 2).unwrap();
    // 2 min(a, 1-a, b, 1-b)
    assert_eq!(*e2.corner(2, 2), rat(1, 1));
    assert_eq!(*e2.corner(2, 0), rat(0, 1));
    assert_eq!(*e2.center(&Cell { e1: 0, e2: 0, i: 1, j: 1 }), rat(1, 2));
    assert_eq!(pullback_subdivide(&c, &e, 1).unwrap(), e);
}

#[test]
fn round_trip_level_three() {
    let c = ProductComplex::new(star(2), segment(rat(1, 1))).unwrap();
    let mut d = LatticeDivisor::zero(&c, 3).unwrap();
    let mut k = 0i64;
    for cell in c.cells(3) {
        for (p1, p2) in d.cell_corners(&c, &cell) {
            k += 1;
            d.set_corner(p1, p2, rat((k * 7) % 11 - 5, 2)).unwrap();
        }
        d.set_center(&cell, rat(k % 5, 3)).unwrap();
    }
    let f = divisor_to_function(&c, &d);
    let back = function_to_divisor(&c, 3, f).unwrap();
    assert_eq!(back, d);
}

/// Divisors at level 1 for every component and exceptional curve.
fn all_level_one(c: &ProductComplex<Q>) -> (Vec<LatticeDivisor<Q>>, Vec<LatticeDivisor<Q>>) {
    let s = c.shape();
    let mut comps = Vec::new();
    for a in 0..s.vertices.0 {
        for b in 0..s.vertices.1 {
            comps.push(LatticeDivisor::component(c, a, b).unwrap());
        }
    }
    let mut exc = Vec::new();
    for e1 in 0..s.edges.0 {
        for e2 in 0..s.edges.1 {
            exc.push(LatticeDivisor::exceptional(c, e1, e2).unwrap());
        }
    }
    (comps, exc)
}

#[test]
fn intersection_table_on_multi_cell_complexes() {
    // Star with three spokes at A = vertex 0, segment B0 - B1.
    let c = ProductComplex::new(star(3), segment(rat(1, 1))).unwrap();
    let t = |x: &LatticeDivisor<Q>, y: &LatticeDivisor<Q>, z: &LatticeDivisor<Q>| {
        discrete_triple(&c, x, y, z).unwrap()
    };
    let ab0 = LatticeDivisor::component(&c, 0, 0).unwrap();
    let ab1 = LatticeDivisor::component(&c, 0, 1).unwrap();
    let e = LatticeDivisor::exceptional(&c, 1, 0).unwrap();
    assert_eq!(t(&ab0, &ab1, &e), rat(1, 1));
    assert_eq!(t(&ab0, &ab0, &ab1), rat(-3, 1));
    assert_eq!(t(&ab0, &ab0, &e), rat(0, 1));
    assert_eq!(t(&e, &e, &ab0), rat(-1, 1));
    assert_eq!(t(&e, &e, &e), rat(2, 1));

    // Both factors singular: s(A) = 3, s(B) = 2.
    let c2 = ProductComplex::new(star(3), star(2)).unwrap();
    let ab = LatticeDivisor::component(&c2, 0, 0).unwrap();
    assert_eq!(discrete_triple(&c2, &ab, &ab, &ab).unwrap(), rat(12, 1));

    // E^2 restricts to minus the two rulings: E^2 X = -1/2 sum_C E C X over
    // the four corner components C of its cell.
    for cx in [&c, &c2] {
        let (comps, exc) = all_level_one(cx);
        let s = cx.shape();
        for (k, e) in exc.iter().enumerate() {
            let cell = Cell { e1: k / s.edges.1, e2: k % s.edges.1, i: 0, j: 0 };
            let corner_divs: Vec<_> = e
                .cell_corners(cx, &cell)
                .iter()
                .map(|&(a, b)| LatticeDivisor::component(cx, a, b).unwrap())
                .collect();
            for x in comps.iter().chain(exc.iter()) {
                let lhs = discrete_triple(cx, e, e, x).unwrap();
                let rhs = corner_divs.iter().fold(rat(0, 1), |acc, cd| {
                    acc - discrete_triple(cx, e, cd, x).unwrap() / rat(2, 1)
                });
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn subdivision_invariance_two_by_two() {
    let path = GraphBuilder::new()
        .vertex("a", 1)
        .vertex("b", 0)
        .vertex("c", 1)
        .edge("x", "a", "b", rat(1, 1))
        .edge("y", "b", "c", rat(2, 1))
        .build()
        .unwrap();
    let c = ProductComplex::new(path.clone(), path).unwrap();
    let (comps, exc) = all_level_one(&c);
    let all: Vec<_> = comps.into_iter().chain(exc).collect();
    let picks = [(0, 4, 9), (3, 3, 10), (9, 10, 11), (1, 2, 12), (4, 4, 4), (12, 12, 5)];
    for (i, j, k) in picks {
        let base = discrete_triple(&c, &all[i], &all[j], &all[k]).unwrap();
        for n in 2..=4 {
            let p = |d: &LatticeDivisor<Q>| pullback_subdivide(&c, d, n).unwrap();
            assert_eq!(discrete_triple(&c, &p(&all[i]), &p(&all[j]), &p(&all[k])).unwrap(), base);
        }
    }
}

fn s_poly(c: &[i64]) -> Poly1<Q> {
    Poly1::new(c.iter().map(|&x| rat(x, 1)).collect())
}

#[test]
fn continuous_xy_and_constant() {
    let c = ProductComplex::new(segment(rat(1, 1)), segment(rat(1, 1))).unwrap();
    let xy = Poly2::from_s(&s_poly(&[0, 1])).mul(&Poly2::from_t(&s_poly(&[0, 1])));
    let f = CellFunction::uniform(c.clone(), xy);
    assert_eq!(continuous_triple(&f, &f, &f).unwrap(), rat(3, 2));
    assert_eq!(continuous_triple_swapped(&f, &f, &f).unwrap(), rat(3, 2));
    let d = f.sample(1).unwrap();
    assert_eq!(discrete_triple(&c, &d, &d, &d).unwrap(), rat(3, 2));
    let k = CellFunction::uniform(c, Poly2::constant(rat(5, 1)));
    assert_eq!(continuous_triple(&k, &k, &k).unwrap(), rat(0, 1));
}

#[test]
fn continuity_is_enforced() {
    // On a theta square, a function of s alone that is not constant at the
    // vertices jumps across vertex lines.
    let c = ProductComplex::square(theta()).unwrap();
    let bad = CellFunction::new(c.clone(), |e1, _| {
        CellPiece::Smooth(Poly2::from_s(&s_poly(&[e1 as i64, 1])))
    })
    .unwrap();
    assert!(matches!(
        continuous_triple(&bad, &bad, &bad),
        Err(PairingError::HypothesisViolated(_))
    ));
    let long = ProductComplex::new(segment(rat(1, 1)), segment(rat(2, 1))).unwrap();
    let split = CellFunction::new(long, |_, _| CellPiece::Split {
        lower: Poly2::zero(),
        upper: Poly2::zero(),
    });
    assert!(matches!(split, Err(PairingError::DiagonalOnNonSquare(0, 0))));
}

#[test]
fn six_term_oracle_on_bumps() {
    // Functions vanishing to second order on the boundary of [0,1]^2.
    let c = ProductComplex::new(segment_f(1.0), segment_f(1.0)).unwrap();
    let bump = |k: usize| {
        let b1 = Poly1::new(alloc::vec![0.0, 0.0, 1.0, -2.0, 1.0]); // x^2 (1-x)^2
        let extra = Poly2::from_s(&Poly1::linear(1.0, k as f64 * 0.5))
            .add(&Poly2::from_t(&Poly1::linear(0.0, (k as f64) - 1.0)));
        Poly2::from_s(&b1).mul(&Poly2::from_t(&b1)).mul(&extra)
    };
    let fs: Vec<_> = (0..3).map(|k| CellFunction::uniform(c.clone(), bump(k))).collect();
    let exact = continuous_triple(&fs[0], &fs[1], &fs[2]).unwrap();
    let quad = quadrature::six_term_triple(&fs[0], &fs[1], &fs[2], 4).unwrap();
    assert!((exact - quad).abs() < 1e-12, "{exact} vs {quad}");
    assert!(exact.abs() > 1e-9);
}

fn segment_f(len: f64) -> PolarizedGraph<f64> {
    GraphBuilder::new()
        .vertex("a", 1)
        .vertex("b", 1)
        .edge("e", "a", "b", len)
        .build()
        .unwrap()
}

#[test]
fn green_identities_on_theta() {
    let g = theta();
    let adm = Admissible::new(&g).unwrap();
    let gf = green_product_function(&adm).unwrap();
    gf.check_hypotheses().unwrap();
    let gx = green_point_first(&adm, 0).unwrap();
    let gy = green_point_second(&adm, 0).unwrap();
    let gee = adm.vertex_potential[0].clone() - adm.tau.clone();

    assert_eq!(continuous_triple(&gf, &gf, &gx).unwrap(), gee.clone() - adm.tau.clone());
    assert_eq!(continuous_triple(&gf, &gx, &gy).unwrap(), gee);
    let gen = rat(adm.genus() as i64, 1);
    let expected = g.total_length() / rat(4, 1)
        + adm.green_diagonal_mass() * rat(3, 2) * (gen - rat(3, 1))
        - adm.green_on_canonical() * rat(3, 4);
    assert_eq!(continuous_triple(&gf, &gf, &gf).unwrap(), expected);
    assert_eq!(continuous_triple_swapped(&gf, &gf, &gf).unwrap(), expected);
}

#[test]
fn green_on_circle_has_unit_jump() {
    let g = GraphBuilder::new()
        .vertex("v", 1)
        .edge("c", "v", "v", rat(3, 1))
        .build()
        .unwrap();
    let adm = Admissible::new(&g).unwrap();
    let gf = green_product_function(&adm).unwrap();
    gf.check_hypotheses().unwrap();
    match gf.piece(0, 0) {
        CellPiece::Split { lower, upper } => {
            let jump = upper.d_s().sub(&lower.d_s()).substitute_t(&Poly1::x());
            let rest = jump.sub(&Poly1::constant(rat(1, 1)));
            assert!(rest.coeffs.iter().all(|c| *c == rat(0, 1)));
        }
        CellPiece::Smooth(_) => panic!("expected a diagonal"),
    }
    // int G(x, y) dmu(y) = 0 at a lattice point.
    let x = rat(1, 2);
    let mass = match gf.piece(0, 0) {
        CellPiece::Split { lower, upper } => {
            lower.restrict_s(&x).integrate(&rat(0, 1), &x) + upper.restrict_s(&x).integrate(&x, &rat(3, 1))
        }
        _ => unreachable!(),
    };
    let density = adm.measure.densities[0].clone();
    let atom = adm.measure.atoms[0].clone() * adm.green_vertex_edge(0, 0).eval(&x);
    assert_eq!(mass * density + atom, rat(0, 1));
}

#[test]
fn physical_weight_matches_continuous_on_long_cells() {
    let c = ProductComplex::new(segment(rat(2, 1)), segment(rat(3, 1))).unwrap();
    let xy = Poly2::from_s(&s_poly(&[0, 1])).mul(&Poly2::from_t(&s_poly(&[0, 1])));
    let f = CellFunction::uniform(c.clone(), xy);
    let cont = continuous_triple(&f, &f, &f).unwrap();
    let d = f.sample(1).unwrap();
    assert_eq!(discrete_triple_physical(&c, &d, &d, &d).unwrap(), cont);
}
