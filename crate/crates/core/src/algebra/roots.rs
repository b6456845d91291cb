//! Rational roots of rational polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::dense::QPoly;

/// Integer polynomial with the same roots: denominators cleared, content removed.
pub fn primitive_integer_form(p: &QPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn residue(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("reduced below p")
}

fn eval_mod(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0u64, |acc, &c| {
        ((u128::from(acc) * u128::from(x) + u128::from(c)) % u128::from(p)) as u64
    })
}

fn eval_big_mod(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    f.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// Roots of `f` modulo `p` when `p` keeps the degree and every root is simple.
fn simple_roots_mod(f: &[BigInt], df: &[BigInt], p: u64) -> Option<Vec<u64>> {
    let fp: Vec<u64> = f.iter().map(|c| residue(c, p)).collect();
    if *fp.last()? == 0 {
        return None;
    }
    let dfp: Vec<u64> = df.iter().map(|c| residue(c, p)).collect();
    let mut roots = Vec::new();
    for x in 0..p {
        if eval_mod(&fp, x, p) == 0 {
            if eval_mod(&dfp, x, p) == 0 {
                return None;
            }
            roots.push(x);
        }
    }
    Some(roots)
}

/// Newton lifting of a simple root modulo `p` until the modulus exceeds `bound`.
fn hensel_lift(f: &[BigInt], df: &[BigInt], root: u64, p: u64, bound: &BigInt) -> (BigInt, BigInt) {
    let mut m = BigInt::from(p);
    let mut r = BigInt::from(root);
    while &m <= bound {
        m = &m * &m;
        let value = eval_big_mod(f, &r, &m);
        let slope = eval_big_mod(df, &r, &m);
        let inverse = slope.extended_gcd(&m).x;
        r = (&r - value * inverse).mod_floor(&m);
    }
    (r, m)
}

/// The fraction `a/b` with `|a| <= bound` and `a = b r (mod m)`, when it exists.
fn reconstruct(r: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), r.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    (!t1.is_zero()).then(|| BigRational::new(r1, t1))
}

/// Candidates for the rational roots of a squarefree integer polynomial with
/// nonzero constant term: roots modulo a good prime, lifted and rebuilt as
/// fractions whose numerator divides the constant term and denominator the
/// leading one.
fn lifted_candidates(f: &[BigInt]) -> Vec<BigRational> {
    if f.len() == 2 {
        return vec![BigRational::new(-&f[0], f[1].clone())];
    }
    let df: Vec<BigInt> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect();
    let numerators = f[0].abs();
    let bound = BigInt::from(2) * &numerators * f.last().expect("nonconstant").abs();
    let (p, roots) = (10_007u64..)
        .filter(|&p| is_prime(p))
        .find_map(|p| simple_roots_mod(f, &df, p).map(|r| (p, r)))
        .expect("a squarefree polynomial has simple roots modulo all but finitely many primes");
    roots
        .into_iter()
        .filter_map(|root| {
            let (r, m) = hensel_lift(f, &df, root, p, &bound);
            reconstruct(&r, &m, &numerators)
        })
        .collect()
}

/// Distinct rational roots in increasing order. The zero polynomial has none.
pub fn rational_roots(p: &QPoly) -> Vec<BigRational> {
    if p.is_constant() {
        return Vec::new();
    }
    let (k, rest) = p.strip_x();
    let mut roots = Vec::new();
    if k > 0 {
        roots.push(BigRational::zero());
    }
    if !rest.is_constant() {
        let rest = rest
            .squarefree_part()
            .expect("rational coefficients never split");
        let ints = primitive_integer_form(&rest);
        for cand in lifted_candidates(&ints) {
            if rest.eval(&cand).is_zero() && !roots.contains(&cand) {
                roots.push(cand);
            }
        }
    }
    roots.sort();
    roots
}
