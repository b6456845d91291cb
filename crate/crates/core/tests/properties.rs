mod common;

use std::collections::BTreeSet;

use foliation_core::algebra::{
    rat, AlgebraicContext, Exponent, Order, QPoly, Rat, Scalar, SparsePoly,
};
use foliation_core::blowup::pre_reduce;
use foliation_core::laurent::pair_nondegenerate;
use foliation_core::local::{
    classify_point, corner_newton_polygon, restrict_to_side, side_nondegenerate, AdaptedGenerator,
};
use foliation_core::polytope::{
    mixed_area, primitive_normal, LatticePoint, NewtonPolygon, Polytope2, Side,
};
use foliation_core::projective::{
    dichotomy, homogeneous_polygon, HullShape, ProjectiveFoliation, Verdict,
};
use foliation_core::report::{parse_input, render_json, run_text, Command, RunOptions};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

use common::seeded;

fn qpoly(coeffs: &[i64]) -> QPoly {
    QPoly::from_ints(coeffs)
}

fn arb_qpoly(max_degree: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-4i64..5, 1..=max_degree + 1).prop_map(|c| qpoly(&c))
}

fn arb_lattice(bound: i64) -> impl Strategy<Value = Vec<LatticePoint>> {
    prop::collection::vec(
        (0..=bound, 0..=bound).prop_map(|(x, y)| LatticePoint::new(x, y)),
        1..6,
    )
}

fn poly_from_points(points: &[LatticePoint], rng: &mut StdRng) -> SparsePoly {
    let terms: Vec<(i32, i32, i64)> = points
        .iter()
        .map(|p| (p.x as i32, p.y as i32, common::nonzero(rng, 3)))
        .collect();
    SparsePoly::from_ints2(&terms)
}

fn support(p: &SparsePoly) -> Vec<LatticePoint> {
    p.support()
        .iter()
        .map(LatticePoint::from_exponent)
        .collect()
}

/// Quasi-homogeneous polynomial for the weight `(p, q)` of degree `k` in
/// `x1^q / x2^p`, times the monomial `shift`. With `shared` set, the result
/// is divisible by `x1^q - 2 x2^p`.
fn qh_poly(
    rng: &mut StdRng,
    weight: (i32, i32),
    k: i32,
    shift: (i32, i32),
    shared: bool,
) -> SparsePoly {
    let (p, q) = weight;
    let free = if shared { k - 1 } else { k };
    let terms: Vec<(i32, i32, i64)> = (0..=free)
        .map(|m| {
            let c = if m == 0 || m == free {
                common::nonzero(rng, 3)
            } else {
                rng.gen_range(-3..=3)
            };
            (q * m + shift.0, p * (free - m) + shift.1, c)
        })
        .collect();
    let base = SparsePoly::from_ints2(&terms);
    if shared {
        &base * &SparsePoly::from_ints2(&[(q, 0, 1), (0, p, -2)])
    } else {
        base
    }
}

const WEIGHTS: [(i32, i32); 5] = [(1, 1), (1, 2), (2, 1), (2, 3), (3, 1)];

fn unimodular(rng: &mut StdRng) -> [[i32; 2]; 2] {
    let mut m = [[1, 0], [0, 1]];
    for _ in 0..3 {
        let k = rng.gen_range(-2..=2);
        let step = match rng.gen_range(0..3) {
            0 => [[1, k], [0, 1]],
            1 => [[1, 0], [k, 1]],
            _ => [[0, 1], [1, 0]],
        };
        m = [
            [
                m[0][0] * step[0][0] + m[0][1] * step[1][0],
                m[0][0] * step[0][1] + m[0][1] * step[1][1],
            ],
            [
                m[1][0] * step[0][0] + m[1][1] * step[1][0],
                m[1][0] * step[0][1] + m[1][1] * step[1][1],
            ],
        ];
    }
    m
}

fn substitute(p: &SparsePoly, m: [[i32; 2]; 2], shift: (i32, i32)) -> SparsePoly {
    let full = [[m[0][0], m[0][1], 0], [m[1][0], m[1][1], 0], [0, 0, 1]];
    p.monomial_substitution(&full)
        .shift(&Exponent::new2(shift.0, shift.1))
}

fn corner(rng: &mut StdRng) -> Option<AdaptedGenerator> {
    let sabotage = rng.gen_bool(0.5);
    common::corner_sample(rng, sabotage).map(|s| s.germ)
}

fn sample(seed: u64, shape_index: usize) -> Option<ProjectiveFoliation> {
    let mut rng = seeded(seed);
    common::projective_sample(&mut rng, common::SHAPES[shape_index % 4])
}

fn flipped(side: &Side) -> (LatticePoint, LatticePoint) {
    let swap = |p: LatticePoint| LatticePoint::new(p.y, p.x);
    (swap(side.end), swap(side.start))
}

fn endpoints(side: &Side) -> BTreeSet<LatticePoint> {
    [side.start, side.end].into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_divides_and_resultant_detects_common_factor(f in arb_qpoly(6), g in arb_qpoly(6)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let gcd = f.gcd(&g).unwrap();
        prop_assert!(f.rem(&gcd).unwrap().is_zero());
        prop_assert!(g.rem(&gcd).unwrap().is_zero());
        let shared = gcd.degree().unwrap_or(0) >= 1;
        prop_assert_eq!(f.resultant(&g).unwrap() == rat(0), shared);
    }

    #[test]
    fn gcd_of_products_keeps_the_shared_factor(f in arb_qpoly(3), g in arb_qpoly(3), h in arb_qpoly(2)) {
        prop_assume!(!f.is_zero() && !g.is_zero() && h.degree().unwrap_or(0) >= 1);
        let (fh, gh) = (f.mul(&h), g.mul(&h));
        prop_assert!(fh.gcd(&gh).unwrap().rem(&h.monic().unwrap()).unwrap().is_zero());
        prop_assert_eq!(fh.resultant(&gh).unwrap(), rat(0));
    }

    #[test]
    fn context_arithmetic_commutes_with_reduction(
        a in 1i64..6,
        b in -5i64..6,
        x in arb_qpoly(2),
        y in arb_qpoly(2),
    ) {
        let q1 = qpoly(&[-a, 0, 1]);
        let q2 = qpoly(&[-b, 1]);
        prop_assume!(q1.eval(&rat(b)) != rat(0));
        let big = AlgebraicContext::new(&q1.mul(&q2)).unwrap();
        let small = AlgebraicContext::new(&q1).unwrap();
        let lift = |p: &QPoly, ctx: &AlgebraicContext| Scalar::residue(p.clone(), ctx);
        let reduce = |s: &Scalar| s.as_poly().rem(&q1).unwrap();
        let (xb, yb) = (lift(&x, &big), lift(&y, &big));
        let (xs, ys) = (lift(&x, &small), lift(&y, &small));
        prop_assert_eq!(reduce(&(&xb * &yb)), (&xs * &ys).as_poly());
        prop_assert_eq!(reduce(&(&xb + &yb)), (&xs + &ys).as_poly());
        prop_assert_eq!(reduce(&(&xb - &yb)), (&xs - &ys).as_poly());
        if xb.is_zero() {
            return Ok(());
        }
        if let Ok(inv) = xb.inv() {
            prop_assert_eq!(reduce(&inv), xs.inv().unwrap().as_poly());
        }
    }

    #[test]
    fn order_at_origin_is_additive(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let shift = |p: SparsePoly| {
            let (_, stripped) = p.strip_monomial();
            stripped
        };
        let f = shift(common::laurent_poly(&mut rng));
        let g = shift(common::laurent_poly(&mut rng));
        let (Order::Finite(of), Order::Finite(og)) = (f.order_at_origin().unwrap(), g.order_at_origin().unwrap()) else {
            return Err(TestCaseError::fail("nonzero polynomial with infinite order"));
        };
        prop_assert_eq!((&f * &g).order_at_origin().unwrap(), Order::Finite(of + og));
    }

    #[test]
    fn mixed_area_vanishes_exactly_on_degenerate_pairs(a in arb_lattice(4), b in arb_lattice(4)) {
        let (pa, pb) = (Polytope2::hull(a), Polytope2::hull(b));
        let definitional = pa.minkowski_sum(&pb).area() - pa.area() - pb.area();
        let m = mixed_area(&pa, &pb);
        prop_assert_eq!(m.clone(), definitional);
        let direction = |p: &Polytope2| {
            let v = p.vertices();
            (v[1].x - v[0].x, v[1].y - v[0].y)
        };
        let degenerate = match (pa.dimension(), pb.dimension()) {
            (Some(0), _) | (_, Some(0)) => true,
            (Some(1), Some(1)) => {
                let (u, v) = (direction(&pa), direction(&pb));
                u.0 * v.1 - u.1 * v.0 == 0
            }
            _ => false,
        };
        prop_assert_eq!(m == rat(0), degenerate);
    }

    #[test]
    fn newton_slopes_are_negative_and_increasing(a in arb_lattice(7)) {
        let sides = NewtonPolygon::from_support(a).compact_sides();
        let slopes: Vec<Rat> = sides.iter().map(Side::slope).collect();
        prop_assert!(slopes.iter().all(|s| *s < rat(0)));
        prop_assert!(slopes.windows(2).all(|w| w[0] < w[1]), "{:?}", slopes);
    }

    #[test]
    fn newton_polygon_of_product_is_minkowski_sum(seed in any::<u64>(), a in arb_lattice(3), b in arb_lattice(3)) {
        let mut rng = seeded(seed);
        let f = poly_from_points(&a, &mut rng);
        let g = poly_from_points(&b, &mut rng);
        let sums: Vec<LatticePoint> = support(&f)
            .iter()
            .flat_map(|p| support(&g).into_iter().map(move |q| LatticePoint::new(p.x + q.x, p.y + q.y)))
            .collect();
        prop_assert_eq!(
            NewtonPolygon::from_support(support(&(&f * &g))),
            NewtonPolygon::from_support(sums)
        );
    }

    #[test]
    fn pair_nondegenerate_survives_unimodular_substitution(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let weight = WEIGHTS[rng.gen_range(0..WEIGHTS.len())];
        let shared = rng.gen_bool(0.5);
        let k1 = rng.gen_range(1..=3);
        let k2 = rng.gen_range(1..=3);
        let f = qh_poly(&mut rng, weight, k1, (0, 0), shared);
        let g = qh_poly(&mut rng, weight, k2, (1, 0), shared);
        let m = unimodular(&mut rng);
        let c = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let (p, q) = (i64::from(weight.0), i64::from(weight.1));
        let dir = (q, -p);
        let image = LatticePoint::new(
            dir.0 * i64::from(m[0][0]) + dir.1 * i64::from(m[1][0]),
            dir.0 * i64::from(m[0][1]) + dir.1 * i64::from(m[1][1]),
        );
        let before = pair_nondegenerate(&f, &g, (p, q)).unwrap();
        let after = pair_nondegenerate(&substitute(&f, m, c), &substitute(&g, m, c), primitive_normal(image)).unwrap();
        prop_assert_eq!(before, after);
        if shared {
            prop_assert!(!before);
        }
    }

    #[test]
    fn nondegenerate_pairs_stay_so_after_adding(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let weight = WEIGHTS[rng.gen_range(0..WEIGHTS.len())];
        let k = rng.gen_range(1..=3);
        let f1 = qh_poly(&mut rng, weight, k, (0, 0), false);
        let f2 = qh_poly(&mut rng, weight, k, (0, 0), false);
        let sum = &f1 + &f2;
        prop_assume!(!sum.is_zero());
        let w = (i64::from(weight.0), i64::from(weight.1));
        if pair_nondegenerate(&f1, &f2, w).unwrap() {
            prop_assert!(pair_nondegenerate(&sum, &f2, w).unwrap());
        }
    }

    #[test]
    fn trivial_newton_polygon_means_presimple_corner(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let Some(g) = corner(&mut rng) else { return Ok(()) };
        let constant = SparsePoly::int(2, common::nonzero(&mut rng, 3));
        let g = if rng.gen_bool(0.3) {
            AdaptedGenerator::corner(&g.a1().clone() + &constant, g.a2().clone()).unwrap()
        } else {
            g
        };
        let poly = corner_newton_polygon(&g).unwrap();
        let trivial = poly.vertices() == [LatticePoint::new(0, 0)];
        prop_assert_eq!(trivial, classify_point(&g).unwrap().is_presimple());
    }

    #[test]
    fn side_verdicts_are_symmetric_under_swap(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let Some(g) = corner(&mut rng) else { return Ok(()) };
        let swapped = g.swapped();
        let sides = corner_newton_polygon(&g).unwrap().compact_sides();
        let mirrored = corner_newton_polygon(&swapped).unwrap().compact_sides();
        prop_assert_eq!(sides.len(), mirrored.len());
        for side in &sides {
            let (start, end) = flipped(side);
            let image = mirrored
                .iter()
                .find(|s| endpoints(s) == [start, end].into_iter().collect())
                .copied();
            prop_assert!(image.is_some(), "no mirror for {}", side);
            prop_assert_eq!(
                side_nondegenerate(&g, side).unwrap(),
                side_nondegenerate(&swapped, &image.unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn unit_multipliers_preserve_sides(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let Some(g) = corner(&mut rng) else { return Ok(()) };
        let unit = SparsePoly::from_ints2(&[
            (0, 0, common::nonzero(&mut rng, 3)),
            (1, 0, rng.gen_range(-3..=3)),
            (0, 1, rng.gen_range(-3..=3)),
            (1, 1, rng.gen_range(-3..=3)),
        ]);
        let scales = [common::nonzero(&mut rng, 3), common::nonzero(&mut rng, 3)];
        let rescale = |p: &SparsePoly| {
            SparsePoly::from_terms(
                2,
                p.terms().map(|(e, c)| {
                    let factor = Scalar::int(scales[0].pow(e.get(0) as u32) * scales[1].pow(e.get(1) as u32));
                    (*e, c * &factor)
                }),
            )
        };
        // A common polynomial unit is not a reduced pair, so compare the
        // Newton data of the multiplied coefficients directly.
        let (b1, b2) = (rescale(&(&unit * g.a1())), rescale(&(&unit * g.a2())));
        let before = corner_newton_polygon(&g).unwrap();
        let after = NewtonPolygon::from_support(support(&b1).into_iter().chain(support(&b2)));
        prop_assert_eq!(&before, &after);
        for side in before.compact_sides() {
            let moved = pair_nondegenerate(
                &restrict_to_side(&b1, &side),
                &restrict_to_side(&b2, &side),
                side.weight,
            )
            .unwrap();
            prop_assert_eq!(side_nondegenerate(&g, &side).unwrap(), moved);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pre_reduce_is_deterministic(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let Some(g) = corner(&mut rng) else { return Ok(()) };
        let first = pre_reduce(&g, 8).unwrap();
        let second = pre_reduce(&g.clone(), 8).unwrap();
        prop_assert_eq!(format!("{first:?}"), format!("{second:?}"));
    }

    #[test]
    fn every_branch_lies_on_a_certified_curve(seed in any::<u64>(), shape in 0usize..4) {
        let Some(f) = sample(seed, shape) else { return Ok(()) };
        let report = dichotomy(&f, 8).unwrap();
        let certified: BTreeSet<&str> = report
            .curves
            .iter()
            .filter(|c| c.invariant)
            .map(|c| c.name.as_str())
            .collect();
        for branch in &report.branches {
            prop_assert!(certified.contains(branch.curve.as_str()), "{} missing", branch.curve);
        }
    }

    #[test]
    fn rational_point_hulls_have_a_first_integral(seed in any::<u64>()) {
        let Some(f) = sample(seed, 0) else { return Ok(()) };
        let report = dichotomy(&f, 8).unwrap();
        prop_assert!(matches!(report.verdict, Verdict::I { .. }), "{}", report.verdict);
    }

    #[test]
    fn each_slanted_edge_is_compact_in_exactly_one_chart(seed in any::<u64>()) {
        let Some(f) = sample(seed, 3) else { return Ok(()) };
        let polygon = homogeneous_polygon(&f);
        prop_assume!(polygon.shape == HullShape::Fat);
        let d = polygon.degree;
        let lift = |v: LatticePoint| [d - v.x - v.y, v.x, v.y];
        let drop = |p: [i64; 3], i: usize| {
            let (j, k) = match i { 0 => (1, 2), 1 => (0, 2), _ => (0, 1) };
            LatticePoint::new(p[j], p[k])
        };
        let newton: Vec<Vec<Side>> = (0..3)
            .map(|i| NewtonPolygon::from_support(polygon.points.iter().map(|&p| drop(p, i))).compact_sides())
            .collect();
        for (a, b) in polygon.charts[0].edges() {
            let (pa, pb) = (lift(a), lift(b));
            if (0..3).any(|l| pa[l] == 0 && pb[l] == 0) {
                continue;
            }
            let charts = (0..3)
                .filter(|&i| {
                    let ends: BTreeSet<LatticePoint> = [drop(pa, i), drop(pb, i)].into_iter().collect();
                    newton[i].iter().any(|s| endpoints(s) == ends)
                })
                .count();
            prop_assert_eq!(charts, 1, "edge {:?} -- {:?}", pa, pb);
        }
    }

    #[test]
    fn rendered_documents_parse_back(seed in any::<u64>(), shape in 0usize..4) {
        let Some(f) = sample(seed, shape) else { return Ok(()) };
        let [a0, a1, a2] = f.render();
        let doc = parse_input(&format!("A0 = {a0}\nA1 = {a1}\nA2 = {a2}\n")).unwrap();
        prop_assert_eq!(parse_input(&doc.render()).unwrap(), doc);
    }

    #[test]
    fn json_reports_are_reproducible(seed in any::<u64>(), shape in 0usize..4) {
        let Some(f) = sample(seed, shape) else { return Ok(()) };
        let [a0, a1, a2] = f.render();
        let text = format!("A0 = {a0}\nA1 = {a1}\nA2 = {a2}\n");
        let options = RunOptions { max_depth: 8, chart: 0 };
        let first = render_json(&run_text(&text, Command::Analyze, options).unwrap());
        let second = render_json(&run_text(&text, Command::Analyze, options).unwrap());
        prop_assert_eq!(first, second);
    }
}

#[test]
fn laurent_documents_parse_back() {
    let doc = parse_input("h1 = u1^-2*u2 + 3/2\nh2 = u1 - u2^-1\n").unwrap();
    assert_eq!(parse_input(&doc.render()).unwrap(), doc);
    let field =
        parse_input("field t^2 - 2\nA0 = X2 - X1\nA1 = (1 + t)*X1 - X2\nA2 = -t*X1\n").unwrap();
    assert_eq!(parse_input(&field.render()).unwrap(), field);
}
