//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use foliation_core::algebra::{AlgebraicContext, QPoly, Scalar, SparsePoly};
use foliation_core::local::AdaptedGenerator;
use foliation_core::projective::ProjectiveFoliation;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn nonzero(rng: &mut StdRng, bound: i64) -> i64 {
    let v = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

fn sparse(rng: &mut StdRng, points: &[(i32, i32)], shift: (i32, i32)) -> SparsePoly {
    let terms: Vec<(i32, i32, i64)> = points
        .iter()
        .map(|&(i, j)| (i + shift.0, j + shift.1, nonzero(rng, 4)))
        .collect();
    SparsePoly::from_ints2(&terms)
}

/// Random Laurent polynomial with 2 to 4 terms whose support fits in a
/// translate of `[0, 3] x [0, 3]`.
pub fn laurent_poly(rng: &mut StdRng) -> SparsePoly {
    let mut grid: Vec<(i32, i32)> = (0..=3).flat_map(|i| (0..=3).map(move |j| (i, j))).collect();
    grid.shuffle(rng);
    let k = rng.gen_range(2..=4);
    let shift = (rng.gen_range(-2..=0), rng.gen_range(-2..=0));
    sparse(rng, &grid[..k], shift)
}

/// Bivariate form of degree `d` with coefficients in `[-3, 3]`, not zero.
pub fn binary_form(rng: &mut StdRng, d: i32) -> SparsePoly {
    loop {
        let terms: Vec<(i32, i32, i64)> =
            (0..=d).map(|i| (i, d - i, rng.gen_range(-3..=3))).collect();
        let p = SparsePoly::from_ints2(&terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Terms of weighted degree above `floor` for the weight `(p, q)`.
fn higher_terms(rng: &mut StdRng, weight: (i32, i32), floor: i32, count: usize) -> SparsePoly {
    let (p, q) = weight;
    let mut out = SparsePoly::zero(2);
    while out.terms().count() < count {
        let i = rng.gen_range(0..=floor / p + 2);
        let j = rng.gen_range(0..=floor / q + 2);
        if p * i + q * j > floor {
            out = &out + &SparsePoly::from_ints2(&[(i, j, nonzero(rng, 3))]);
        }
    }
    out
}

/// Initial form of a corner germ and a perturbation above it.
pub struct CornerSample {
    pub germ: AdaptedGenerator,
    pub sabotaged: bool,
}

/// Polynomial in `z = x1^q / x2^p` of degree `k`, homogenized.
fn qh_form(rng: &mut StdRng, weight: (i32, i32), k: i32) -> SparsePoly {
    let (p, q) = weight;
    let terms: Vec<(i32, i32, i64)> = (0..=k)
        .map(|m| {
            let c = if m == 0 || m == k {
                nonzero(rng, 3)
            } else {
                rng.gen_range(-3..=3)
            };
            (q * m, p * (k - m), c)
        })
        .collect();
    SparsePoly::from_ints2(&terms)
}

/// Corner germ whose Newton polygon has a side of weight `(p, q)`. When
/// `sabotage` is set the restrictions to that side share the binomial
/// `x1^q - c x2^p`, once or twice.
pub fn corner_sample(rng: &mut StdRng, sabotage: bool) -> Option<CornerSample> {
    const WEIGHTS: [(i32, i32); 7] = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)];
    let weight = *WEIGHTS.choose(rng).unwrap();
    let (p, q) = weight;
    let (a1_in, a2_in, k) = if sabotage {
        let shared = SparsePoly::from_ints2(&[(q, 0, 1), (0, p, -nonzero(rng, 3))]);
        let k1 = rng.gen_range(1..=2);
        let k2 = rng.gen_range(1..=2);
        let extra = rng.gen_range(0..=1);
        let k = k1.max(k2) + extra;
        let a1 = &shared.pow(k1 as u32) * &qh_form(rng, weight, k - k1);
        let a2 = &shared.pow(k2 as u32) * &qh_form(rng, weight, k - k2);
        (a1, a2, k)
    } else {
        let k = rng.gen_range(1..=2);
        (qh_form(rng, weight, k), qh_form(rng, weight, k), k)
    };
    let floor = p * q * k;
    let n1 = rng.gen_range(0..=2);
    let n2 = rng.gen_range(0..=2);
    let a1 = &a1_in + &higher_terms(rng, weight, floor, n1);
    let a2 = &a2_in + &higher_terms(rng, weight, floor, n2);
    let germ = AdaptedGenerator::corner(a1, a2).ok()?;
    Some(CornerSample {
        germ,
        sabotaged: sabotage,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Constants,
    Lines,
    Cusps,
    Fat,
}

pub const SHAPES: [Shape; 4] = [Shape::Constants, Shape::Lines, Shape::Cusps, Shape::Fat];

fn p3(terms: &[(i32, i32, i32, i64)]) -> SparsePoly {
    SparsePoly::from_ints3(terms)
}

fn closing(a0: &SparsePoly, a1: &SparsePoly) -> SparsePoly {
    &SparsePoly::zero(3) - &(a0 + a1)
}

fn random_perm(rng: &mut StdRng) -> [usize; 3] {
    let mut perm = [0, 1, 2];
    perm.shuffle(rng);
    perm
}

/// Triple supported on the given exponent vectors, with random coefficients
/// summing to zero, validated and moved by a random permutation.
fn on_support(rng: &mut StdRng, support: &[(i32, i32, i32)]) -> Option<ProjectiveFoliation> {
    let mut coeff = || -> Vec<(i32, i32, i32, i64)> {
        support
            .iter()
            .map(|&(i, j, k)| (i, j, k, rng.gen_range(-3..=3)))
            .collect()
    };
    let a0 = p3(&coeff());
    let a1 = p3(&coeff());
    let a2 = closing(&a0, &a1);
    let f = ProjectiveFoliation::validate(a0, a1, a2).ok()?;
    Some(f.permuted(random_perm(rng)))
}

pub fn projective_sample(rng: &mut StdRng, shape: Shape) -> Option<ProjectiveFoliation> {
    match shape {
        Shape::Constants => {
            let c0 = nonzero(rng, 4);
            let c1 = nonzero(rng, 4);
            let c2 = -c0 - c1;
            ProjectiveFoliation::validate(
                SparsePoly::int(3, c0),
                SparsePoly::int(3, c1),
                SparsePoly::int(3, c2),
            )
            .ok()
        }
        Shape::Lines => {
            let d = rng.gen_range(1..=3);
            let support: Vec<_> = (0..=d).map(|i| (0, i, d - i)).collect();
            on_support(rng, &support)
        }
        Shape::Cusps => {
            const REDUCED: [(i32, i32); 4] = [(2, 1), (3, 1), (3, 2), (4, 1)];
            let (dr, ar) = *REDUCED.choose(rng).unwrap();
            let n = if dr <= 3 { rng.gen_range(1..=2) } else { 1 };
            let support: Vec<_> = (0..=n)
                .map(|j| ((n - j) * dr, j * (dr - ar), j * ar))
                .collect();
            on_support(rng, &support)
        }
        Shape::Fat => {
            let d = rng.gen_range(1..=2);
            let monomials: Vec<(i32, i32, i32)> = (0..=d)
                .flat_map(|i| (0..=d - i).map(move |j| (i, j, d - i - j)))
                .collect();
            let mut pick = || {
                let k = rng.gen_range(2..=3);
                let chosen: Vec<_> = monomials.choose_multiple(rng, k).cloned().collect();
                let terms: Vec<_> = chosen
                    .iter()
                    .map(|&(i, j, l)| (i, j, l, nonzero(rng, 3)))
                    .collect();
                p3(&terms)
            };
            let a0 = pick();
            let a1 = pick();
            let a2 = closing(&a0, &a1);
            ProjectiveFoliation::validate(a0, a1, a2).ok()
        }
    }
}

pub fn constants() -> ProjectiveFoliation {
    ProjectiveFoliation::validate(
        SparsePoly::int(3, 1),
        SparsePoly::int(3, 1),
        SparsePoly::int(3, -2),
    )
    .unwrap()
}

pub fn jouanolou() -> ProjectiveFoliation {
    let f0 = p3(&[(2, 1, 0, 1), (0, 0, 3, -1)]);
    let f1 = p3(&[(0, 2, 1, 1), (3, 0, 0, -1)]);
    let f2 = p3(&[(1, 0, 2, 1), (0, 3, 0, -1)]);
    ProjectiveFoliation::from_holomorphic(f0, f1, f2).unwrap()
}

/// Lines through `[1:0:0]` with the single parameter 1 and an irrational
/// eigenvalue ratio at both ends.
pub fn sqrt2_instance() -> ProjectiveFoliation {
    let ctx = AlgebraicContext::new(&QPoly::from_ints(&[-2, 0, 1])).unwrap();
    let s = ctx.generator();
    let x1 = SparsePoly::var(3, 1);
    let x2 = SparsePoly::var(3, 2);
    let a0 = &x2 - &x1;
    let a1 = &x1.scale(&(&Scalar::int(1) + &s)) - &x2;
    let a2 = x1.scale(&-&s);
    ProjectiveFoliation::validate(a0, a1, a2).unwrap()
}

/// The rational pencil `X2 / X1`, of weak toric type only.
pub fn pencil() -> ProjectiveFoliation {
    ProjectiveFoliation::validate(
        p3(&[(0, 0, 1, 1), (0, 1, 0, -1)]),
        p3(&[(0, 1, 0, 1)]),
        p3(&[(0, 0, 1, -1)]),
    )
    .unwrap()
}
