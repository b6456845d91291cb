//! Exact scalars: rationals and residues modulo a squarefree rational polynomial.
//!
//! A residue ring `Q[t]/(q)` with `q` squarefree is a product of number fields.
//! Arithmetic is carried out as if `q` were irreducible; whenever a zero test or
//! an inversion meets a zero divisor the computation reports a [`Split`] naming
//! the two coprime factors, and [`branches`] reruns it once per factor.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::dense::{Coeff, QPoly};
use super::roots::rational_roots;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug)]
struct ContextData {
    modulus: QPoly,
    lineage: Vec<QPoly>,
}

/// The ring `Q[t]/(modulus)` for a monic squarefree `modulus` of positive degree.
#[derive(Clone, Debug)]
pub struct AlgebraicContext(Arc<ContextData>);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContextError {
    #[error("modulus must have positive degree")]
    Constant,
    #[error("modulus {0} is not squarefree")]
    NotSquarefree(String),
}

impl AlgebraicContext {
    pub fn new(modulus: &QPoly) -> Result<Self, ContextError> {
        Self::with_lineage(modulus, Vec::new())
    }

    fn with_lineage(modulus: &QPoly, lineage: Vec<QPoly>) -> Result<Self, ContextError> {
        if modulus.is_constant() {
            return Err(ContextError::Constant);
        }
        let monic = modulus.monic().expect("rational arithmetic never splits");
        let g = monic.gcd(&monic.derivative()).expect("rational");
        if !g.is_constant() {
            return Err(ContextError::NotSquarefree(monic.to_string()));
        }
        Ok(AlgebraicContext(Arc::new(ContextData {
            modulus: monic,
            lineage,
        })))
    }

    pub fn modulus(&self) -> &QPoly {
        &self.0.modulus
    }

    /// Moduli of the contexts this one was split from, oldest first.
    pub fn lineage(&self) -> &[QPoly] {
        &self.0.lineage
    }

    pub fn degree(&self) -> usize {
        self.0.modulus.degree().unwrap_or(0)
    }

    /// The class of `t`.
    pub fn generator(&self) -> Scalar {
        Scalar::residue(QPoly::x(), self)
    }

    fn child(&self, factor: &QPoly) -> AlgebraicContext {
        let mut lineage = self.0.lineage.clone();
        lineage.push(self.0.modulus.clone());
        Self::with_lineage(factor, lineage).expect("factor of a squarefree modulus")
    }

    /// Builds the split of this context along the nontrivial factor `factor`.
    pub fn split_along(&self, factor: &QPoly) -> Split {
        let g = factor.monic().expect("rational");
        let h = self
            .0
            .modulus
            .exact_div(&g)
            .expect("rational")
            .monic()
            .expect("rational");
        Split {
            parent: self.clone(),
            left: self.child(&g),
            right: self.child(&h),
        }
    }

    fn divides(&self, other: &AlgebraicContext) -> bool {
        other
            .0
            .modulus
            .rem(&self.0.modulus)
            .expect("rational")
            .is_zero()
    }
}

impl PartialEq for AlgebraicContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.modulus == other.0.modulus
    }
}

impl Eq for AlgebraicContext {}

impl fmt::Display for AlgebraicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[t]/({})", self.0.modulus)
    }
}

/// A zero divisor was met: the context factors as `left x right`.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("context {parent} splits into {left} and {right}")]
pub struct Split {
    pub parent: AlgebraicContext,
    pub left: AlgebraicContext,
    pub right: AlgebraicContext,
}

/// Error types that may carry a [`Split`].
pub trait SplitAware {
    fn split(&self) -> Option<&Split>;
}

impl SplitAware for Split {
    fn split(&self) -> Option<&Split> {
        Some(self)
    }
}

/// Runs `f` on `start`, rerunning it on each factor whenever the current
/// context splits. Results come back in depth-first order, left factor first.
pub fn branches<T, E: SplitAware>(
    start: Option<AlgebraicContext>,
    mut f: impl FnMut(Option<&AlgebraicContext>) -> Result<T, E>,
) -> Result<Vec<(Option<AlgebraicContext>, T)>, E> {
    let mut work = vec![start];
    let mut out = Vec::new();
    while let Some(ctx) = work.pop() {
        match f(ctx.as_ref()) {
            Ok(v) => out.push((ctx, v)),
            Err(e) => match (e.split(), &ctx) {
                (Some(s), Some(c)) if s.parent == *c => {
                    work.push(Some(s.right.clone()));
                    work.push(Some(s.left.clone()));
                }
                _ => return Err(e),
            },
        }
    }
    Ok(out)
}

/// An exact scalar. Residues of degree zero are always stored as rationals,
/// and the residue value is always reduced modulo its context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(Rat),
    Residue { value: QPoly, ctx: AlgebraicContext },
}

impl Scalar {
    pub fn int(n: i64) -> Self {
        Scalar::Rational(rat(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Rational(ratio(n, d))
    }

    pub fn residue(value: QPoly, ctx: &AlgebraicContext) -> Self {
        let value = value.rem(ctx.modulus()).expect("monic modulus");
        match value.degree() {
            None => Scalar::Rational(Rat::zero()),
            Some(0) => Scalar::Rational(value.coeff(0)),
            _ => Scalar::Residue {
                value,
                ctx: ctx.clone(),
            },
        }
    }

    pub fn context(&self) -> Option<&AlgebraicContext> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Residue { ctx, .. } => Some(ctx),
        }
    }

    /// Reduces into `ctx`, whose modulus must divide the current one.
    pub fn in_context(&self, ctx: Option<&AlgebraicContext>) -> Scalar {
        match (self, ctx) {
            (Scalar::Residue { value, ctx: own }, Some(target)) => {
                if own == target {
                    self.clone()
                } else {
                    assert!(target.divides(own), "target context is not a factor");
                    Scalar::residue(value.clone(), target)
                }
            }
            (Scalar::Residue { ctx: own, .. }, None) => {
                panic!("cannot move a residue of {own} to the rationals")
            }
            _ => self.clone(),
        }
    }

    /// Representation as a polynomial in `t` (rationals are constants).
    pub fn as_poly(&self) -> QPoly {
        match self {
            Scalar::Rational(r) => QPoly::constant(r.clone()),
            Scalar::Residue { value, .. } => value.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Residue { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    /// Exact zero test on every factor of the context; splits if the answer
    /// differs between factors.
    pub fn zero_test(&self) -> Result<bool, Split> {
        match self {
            Scalar::Rational(r) => Ok(r.is_zero()),
            Scalar::Residue { value, ctx } => {
                let g = value.gcd(ctx.modulus()).expect("rational");
                if g.is_constant() {
                    Ok(false)
                } else {
                    Err(ctx.split_along(&g))
                }
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar, Split> {
        match self {
            Scalar::Rational(r) => {
                assert!(!r.is_zero(), "inverse of zero");
                Ok(Scalar::Rational(r.recip()))
            }
            Scalar::Residue { value, ctx } => {
                let (g, s, _) = value.ext_gcd(ctx.modulus()).expect("rational");
                if g.is_constant() {
                    Ok(Scalar::residue(s, ctx))
                } else {
                    Err(ctx.split_along(&g))
                }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, Split> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: u32) -> Scalar {
        (0..k).fold(Scalar::int(1), |acc, _| &acc * self)
    }

    /// Whether the value is a rational number on every factor of the context.
    ///
    /// Splits when it is rational on some factors only. Uses the
    /// characteristic polynomial of multiplication by the value.
    pub fn rational_value(&self) -> Result<Option<Rat>, Split> {
        let (value, ctx) = match self {
            Scalar::Rational(r) => return Ok(Some(r.clone())),
            Scalar::Residue { value, ctx } => (value, ctx),
        };
        let chi = char_poly(value, ctx.modulus());
        for c in rational_roots(&chi) {
            let shifted = value.sub(&QPoly::constant(c));
            let g = shifted.gcd(ctx.modulus()).expect("rational");
            if !g.is_constant() {
                return Err(ctx.split_along(&g));
            }
        }
        Ok(None)
    }

    /// Sign of a rational scalar; `None` for residues.
    pub fn rational_sign(&self) -> Option<i8> {
        self.as_rational().map(|r| {
            if r.is_positive() {
                1
            } else if r.is_negative() {
                -1
            } else {
                0
            }
        })
    }

    fn binary(
        &self,
        other: &Scalar,
        op: impl Fn(&QPoly, &QPoly) -> QPoly,
        rop: impl Fn(&Rat, &Rat) -> Rat,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(rop(a, b)),
            _ => {
                let ctx = common_context(self.context(), other.context());
                let a = self.in_context(Some(&ctx)).as_poly();
                let b = other.in_context(Some(&ctx)).as_poly();
                Scalar::residue(op(&a, &b), &ctx)
            }
        }
    }
}

fn common_context(a: Option<&AlgebraicContext>, b: Option<&AlgebraicContext>) -> AlgebraicContext {
    match (a, b) {
        (Some(x), None) | (None, Some(x)) => x.clone(),
        (Some(x), Some(y)) => {
            if x == y || x.divides(y) {
                x.clone()
            } else if y.divides(x) {
                y.clone()
            } else {
                panic!("scalars from unrelated contexts {x} and {y}")
            }
        }
        (None, None) => unreachable!("handled by the rational fast path"),
    }
}

/// Characteristic polynomial of multiplication by `value` on `Q[t]/(modulus)`,
/// by the Faddeev-LeVerrier recursion.
fn char_poly(value: &QPoly, modulus: &QPoly) -> QPoly {
    let n = modulus.degree().unwrap_or(0);
    let mut m = vec![vec![Rat::zero(); n]; n];
    for j in 0..n {
        let col = value
            .mul(&QPoly::monomial(rat(1), j))
            .rem(modulus)
            .expect("monic");
        for (i, row) in m.iter_mut().enumerate() {
            row[j] = col.coeff(i);
        }
    }
    let matmul = |a: &Vec<Vec<Rat>>, b: &Vec<Vec<Rat>>| -> Vec<Vec<Rat>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(Rat::zero(), |s, k| s + &a[i][k] * &b[k][j]))
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = rat(1);
    let mut mk = vec![vec![Rat::zero(); n]; n];
    for k in 1..=n {
        let mut next = matmul(&m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = matmul(&m, &mk);
        let trace = (0..n).fold(Rat::zero(), |s, i| s + &am[i][i]);
        coeffs[n - k] = -trace / rat(k as i64);
    }
    QPoly::new(coeffs)
}

impl Coeff for Scalar {
    fn zero_value() -> Self {
        Scalar::int(0)
    }
    fn one_value() -> Self {
        Scalar::int(1)
    }
    fn from_rational(value: Rat) -> Self {
        Scalar::Rational(value)
    }
    fn is_zero_value(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Result<Self, Split> {
        self.inv()
    }
    fn zero_test(&self) -> Result<bool, Split> {
        Scalar::zero_test(self)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, other: &Scalar) -> Scalar {
        self.binary(other, |a, b| a.add(b), |a, b| a + b)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, other: &Scalar) -> Scalar {
        self.binary(other, |a, b| a.sub(b), |a, b| a - b)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, other: &Scalar) -> Scalar {
        self.binary(other, |a, b| a.mul(b), |a, b| a * b)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, ctx } => Scalar::Residue {
                value: value.neg(),
                ctx: ctx.clone(),
            },
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, other: Scalar) -> Scalar {
                (&self).$m(&other)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<Rat> for Scalar {
    fn from(r: Rat) -> Self {
        Scalar::Rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Residue { value, ctx } => write!(f, "{} mod {}", value, ctx.modulus()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> AlgebraicContext {
        AlgebraicContext::new(&QPoly::from_ints(&[-2, 0, 1])).unwrap()
    }

    #[test]
    fn sqrt_two_squares_to_two() {
        let t = sqrt2().generator();
        assert_eq!(&t * &t, Scalar::int(2));
    }

    #[test]
    fn inverse_in_quadratic_field() {
        let ctx = sqrt2();
        let a = &ctx.generator() + &Scalar::int(1);
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, Scalar::int(1));
        assert_eq!(inv.to_string(), "t-1 mod t^2-2");
    }

    #[test]
    fn zero_divisor_splits() {
        let ctx = AlgebraicContext::new(&QPoly::from_ints(&[-1, 0, 1])).unwrap();
        let a = &ctx.generator() - &Scalar::int(1);
        let err = a.zero_test().unwrap_err();
        assert_eq!(err.left.modulus(), &QPoly::from_ints(&[-1, 1]));
        assert_eq!(err.right.modulus(), &QPoly::from_ints(&[1, 1]));
        assert_eq!(err.left.lineage(), &[ctx.modulus().clone()]);
    }

    #[test]
    fn driver_reruns_per_factor() {
        let ctx = AlgebraicContext::new(&QPoly::from_ints(&[-1, 0, 1])).unwrap();
        let t = ctx.generator();
        let out = branches(Some(ctx), |c| -> Result<bool, Split> {
            let v = (&t - &Scalar::int(1)).in_context(c);
            v.zero_test()
        })
        .unwrap();
        let flags: Vec<bool> = out.iter().map(|(_, b)| *b).collect();
        assert_eq!(flags, vec![true, false]);
    }

    #[test]
    fn rationality_detection() {
        let ctx = sqrt2();
        let t = ctx.generator();
        assert_eq!((&t * &t).rational_value().unwrap(), Some(rat(2)));
        assert_eq!(t.rational_value().unwrap(), None);
        let mixed = AlgebraicContext::new(&QPoly::from_ints(&[-2, 1, 1])).unwrap(); // (t-1)(t+2)
        assert!(mixed.generator().rational_value().is_err());
    }

    #[test]
    fn rejects_square_modulus() {
        assert!(AlgebraicContext::new(&QPoly::from_ints(&[1, 2, 1])).is_err());
    }
}
