//! Dense univariate polynomials over an exact coefficient ring.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::Split;

/// Exact coefficient arithmetic.
///
/// `zero_test` and `try_inv` may report a [`Split`] when the coefficient lives
/// in a product of fields and is a zero divisor there.
pub trait Coeff: Clone + fmt::Debug + PartialEq {
    fn zero_value() -> Self;
    fn one_value() -> Self;
    fn from_rational(value: BigRational) -> Self;
    /// Structural zero (canonical representation).
    fn is_zero_value(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Panics on a structural zero.
    fn try_inv(&self) -> Result<Self, Split>;
    fn zero_test(&self) -> Result<bool, Split>;
}

impl Coeff for BigRational {
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn one_value() -> Self {
        One::one()
    }
    fn from_rational(value: BigRational) -> Self {
        value
    }
    fn is_zero_value(&self) -> bool {
        Zero::is_zero(self)
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
        assert!(!Zero::is_zero(self), "inverse of zero");
        Ok(self.recip())
    }
    fn zero_test(&self) -> Result<bool, Split> {
        Ok(Zero::is_zero(self))
    }
}

/// Coefficients in ascending order of degree, with no trailing structural zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dense<F> {
    coeffs: Vec<F>,
}

/// Univariate polynomial with rational coefficients.
pub type QPoly = Dense<BigRational>;

impl<F: Coeff> Dense<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_value()) {
            coeffs.pop();
        }
        Dense { coeffs }
    }

    pub fn zero() -> Self {
        Dense { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one_value())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero_value(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(F::one_value(), 1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero_value)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn map<G: Coeff>(&self, f: impl Fn(&F) -> G) -> Dense<G> {
        Dense::new(self.coeffs.iter().map(f).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|k| self.coeff(k).plus(&other.coeff(k)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|k| self.coeff(k).minus(&other.coeff(k)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negated())
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|a| a.times(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero_value(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_value() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.times(&F::from_rational(BigRational::from_integer(k.into()))))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero_value(), |acc, c| acc.times(x).plus(c))
    }

    /// Composition `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(inner).add(&Self::constant(c.clone()))
        })
    }

    /// Euclidean division. Inverts the leading coefficient of `divisor`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self), Split> {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv = divisor.coeffs[dd].try_inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero_value(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = rem[top].times(&inv);
            if !c.is_zero_value() {
                for (k, d) in divisor.coeffs.iter().enumerate() {
                    let idx = top - dd + k;
                    rem[idx] = rem[idx].minus(&c.times(d));
                }
                quot[top - dd] = c;
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero_value()) {
                rem.pop();
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, Split> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Quotient of a division expected to be exact.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, Split> {
        let (q, r) = self.divrem(divisor)?;
        debug_assert!(r.is_zero(), "inexact polynomial division");
        Ok(q)
    }

    pub fn monic(&self) -> Result<Self, Split> {
        match self.lc() {
            None => Ok(Self::zero()),
            Some(c) => Ok(self.scale(&c.try_inv()?)),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self, Split> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self), Split> {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lc() {
            None => Ok((r0, s0, t0)),
            Some(c) => {
                let inv = c.try_inv()?;
                Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
            }
        }
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Result<Self, Split> {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative())?;
        self.exact_div(&g)?.monic()
    }

    /// Yun's algorithm: pairs `(k, s_k)` with `self = c * prod s_k^k`, each `s_k`
    /// monic, squarefree, pairwise coprime and nonconstant.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(usize, Self)>, Split> {
        let mut out = Vec::new();
        if self.is_constant() {
            return Ok(out);
        }
        let d = self.derivative();
        let a0 = self.gcd(&d)?;
        let mut b = self.exact_div(&a0)?;
        let mut c = d.exact_div(&a0)?;
        let mut k = 1;
        loop {
            let dd = c.sub(&b.derivative());
            if b.is_constant() {
                break;
            }
            let a = b.gcd(&dd)?;
            if !a.is_constant() {
                out.push((k, a.clone()));
            }
            b = b.exact_div(&a)?;
            c = dd.exact_div(&a)?;
            k += 1;
        }
        Ok(out)
    }

    /// Strips the factor `x^k` and returns `(k, rest)`.
    pub fn strip_x(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero_value()).count();
        (
            k,
            Self::new(self.coeffs[k.min(self.coeffs.len())..].to_vec()),
        )
    }

    /// Resultant by the Euclidean remainder sequence, with the convention
    /// `Res(f, g) = lc(f)^deg g * prod g(roots of f)`.
    pub fn resultant(&self, other: &Self) -> Result<F, Split> {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return Ok(F::zero_value());
        };
        if n == 0 {
            return Ok(pow_coeff(&other.coeffs[0], m));
        }
        if m == 0 {
            return Ok(pow_coeff(&self.coeffs[0], n));
        }
        let r = self.rem(other)?;
        let Some(k) = r.degree() else {
            return Ok(F::zero_value());
        };
        let sign = if (m * n) % 2 == 1 {
            F::one_value().negated()
        } else {
            F::one_value()
        };
        let factor = pow_coeff(other.lc().unwrap(), m - k);
        Ok(sign.times(&factor).times(&other.resultant(&r)?))
    }
}

fn pow_coeff<F: Coeff>(c: &F, k: usize) -> F {
    (0..k).fold(F::one_value(), |acc, _| acc.times(c))
}

impl QPoly {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// Compact rendering in the variable `var`, e.g. `t^2-2`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => out.push_str(&mag.to_string()),
                (_, true) => {}
                (_, false) => {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{k}")),
            }
        }
        out
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}
