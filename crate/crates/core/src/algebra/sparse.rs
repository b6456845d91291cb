//! Sparse (Laurent) polynomials in up to three variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::dense::Dense;
use super::scalar::{rat, AlgebraicContext, Scalar, Split};
use super::AlgebraError;

pub const MAX_ARITY: usize = 3;

/// Exponent vector; entries beyond the arity are zero. Ordered lexicographically
/// with the first variable most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponent(pub [i32; MAX_ARITY]);

impl Exponent {
    pub fn new2(i: i32, j: i32) -> Self {
        Exponent([i, j, 0])
    }

    pub fn new3(i: i32, j: i32, k: i32) -> Self {
        Exponent([i, j, k])
    }

    pub fn total(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn get(&self, i: usize) -> i32 {
        self.0[i]
    }

    pub fn plus(&self, other: &Exponent) -> Exponent {
        Exponent(std::array::from_fn(|k| self.0[k] + other.0[k]))
    }

    pub fn minus(&self, other: &Exponent) -> Exponent {
        Exponent(std::array::from_fn(|k| self.0[k] - other.0[k]))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }
}

/// Multiplicity at the origin, with `Infinite` for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    arity: usize,
    terms: BTreeMap<Exponent, Scalar>,
}

impl SparsePoly {
    pub fn zero(arity: usize) -> Self {
        assert!((1..=MAX_ARITY).contains(&arity), "arity out of range");
        SparsePoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Scalar) -> Self {
        Self::monomial(arity, Exponent::default(), c)
    }

    pub fn int(arity: usize, n: i64) -> Self {
        Self::constant(arity, Scalar::int(n))
    }

    pub fn monomial(arity: usize, exp: Exponent, c: Scalar) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(exp, c);
        p
    }

    /// The variable `x_i` (zero-based index).
    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = Exponent::default();
        e.0[i] = 1;
        Self::monomial(arity, e, Scalar::int(1))
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Exponent, Scalar)>) -> Self {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Builds a bivariate polynomial from `(i, j, c)` integer triples.
    pub fn from_ints2(terms: &[(i32, i32, i64)]) -> Self {
        Self::from_terms(
            2,
            terms
                .iter()
                .map(|&(i, j, c)| (Exponent::new2(i, j), Scalar::int(c))),
        )
    }

    /// Builds a trivariate polynomial from `(i, j, k, c)` integer triples.
    pub fn from_ints3(terms: &[(i32, i32, i32, i64)]) -> Self {
        Self::from_terms(
            3,
            terms
                .iter()
                .map(|&(i, j, k, c)| (Exponent::new3(i, j, k), Scalar::int(c))),
        )
    }

    pub fn add_term(&mut self, exp: Exponent, c: Scalar) {
        debug_assert!(exp.0[self.arity..].iter().all(|&e| e == 0));
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&exp) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(exp, sum);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().copied().collect()
    }

    pub fn coeff(&self, exp: &Exponent) -> Scalar {
        self.terms
            .get(exp)
            .cloned()
            .unwrap_or_else(|| Scalar::int(0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == Exponent::default())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Exponent::default())
    }

    pub fn is_laurent(&self) -> bool {
        self.terms.keys().any(|e| !e.is_nonnegative())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Largest total degree, `None` for zero.
    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(Exponent::total).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|e| e.0[var]).max()
    }

    pub fn min_degree_in(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|e| e.0[var]).min()
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let d = self.total_degree()?;
        self.terms.keys().all(|e| e.total() == d).then_some(d)
    }

    pub fn order_at_origin(&self) -> Result<Order, AlgebraError> {
        if self.is_laurent() {
            return Err(AlgebraError::Laurent);
        }
        Ok(self
            .terms
            .keys()
            .map(|e| e.total() as u32)
            .min()
            .map_or(Order::Infinite, Order::Finite))
    }

    /// Largest monomial dividing every term (componentwise minimum exponent).
    pub fn monomial_content(&self) -> Exponent {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Exponent::default();
        };
        it.fold(*first, |acc, e| {
            Exponent(std::array::from_fn(|k| acc.0[k].min(e.0[k])))
        })
    }

    /// Multiplication by the Laurent monomial `x^shift`.
    pub fn shift(&self, shift: &Exponent) -> Self {
        Self {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.plus(shift), c.clone()))
                .collect(),
        }
    }

    /// Removes the monomial content, returning it together with the quotient.
    pub fn strip_monomial(&self) -> (Exponent, Self) {
        let m = self.monomial_content();
        (m, self.shift(&Exponent(m.0.map(|v| -v))))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.arity, self.terms.iter().map(|(e, a)| (*e, a * c)))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::int(self.arity, 1), |acc, _| &acc * self)
    }

    pub fn map_exponents(&self, arity: usize, f: impl Fn(&Exponent) -> Exponent) -> Self {
        Self::from_terms(arity, self.terms.iter().map(|(e, c)| (f(e), c.clone())))
    }

    /// Substitution `x_k = prod_l y_l^{matrix[k][l]}`.
    pub fn monomial_substitution(&self, matrix: &[[i32; MAX_ARITY]; MAX_ARITY]) -> Self {
        let n = self.arity;
        self.map_exponents(n, |e| {
            Exponent(std::array::from_fn(|l| {
                if l < n {
                    (0..n).map(|k| e.0[k] * matrix[k][l]).sum()
                } else {
                    0
                }
            }))
        })
    }

    /// Reorders variables: variable `k` becomes variable `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        self.map_exponents(self.arity, |e| {
            let mut out = Exponent::default();
            for (k, &p) in perm.iter().enumerate() {
                out.0[p] = e.0[k];
            }
            out
        })
    }

    pub fn swap_vars(&self) -> Self {
        self.permute(&[1, 0])
    }

    /// Substitutes `x_var = value`; the variable disappears but the arity is kept.
    pub fn eval_var(&self, var: usize, value: &Scalar) -> Result<Self, AlgebraError> {
        if self.min_degree_in(var).is_some_and(|d| d < 0) {
            return Err(AlgebraError::Laurent);
        }
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2.0[var] = 0;
            out.add_term(e2, c * &value.pow(e.0[var] as u32));
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar, AlgebraError> {
        if self.is_laurent() {
            return Err(AlgebraError::Laurent);
        }
        Ok(self.terms.iter().fold(Scalar::int(0), |acc, (e, c)| {
            let m = (0..self.arity).fold(c.clone(), |m, k| &m * &point[k].pow(e.0[k] as u32));
            &acc + &m
        }))
    }

    /// `x_var -> x_var + shift`.
    pub fn translate(&self, var: usize, shift: &Scalar) -> Result<Self, AlgebraError> {
        if self.min_degree_in(var).is_some_and(|d| d < 0) {
            return Err(AlgebraError::Laurent);
        }
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            let n = e.0[var];
            let mut binom = rat(1);
            for k in 0..=n {
                let mut e2 = *e;
                e2.0[var] = k;
                let coef = c * &Scalar::Rational(binom.clone()) * shift.pow((n - k) as u32);
                out.add_term(e2, coef);
                binom = binom * rat((n - k) as i64) / rat((k + 1) as i64);
            }
        }
        Ok(out)
    }

    pub fn derivative(&self, var: usize) -> Self {
        Self::from_terms(
            self.arity,
            self.terms
                .iter()
                .filter(|(e, _)| e.0[var] != 0)
                .map(|(e, c)| {
                    let mut e2 = *e;
                    e2.0[var] -= 1;
                    (e2, c * &Scalar::int(e.0[var] as i64))
                }),
        )
    }

    /// Keeps only the terms whose exponent satisfies `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&Exponent) -> bool) -> Self {
        Self {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Coefficients of the powers of `x_var`, each with `x_var` removed.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<i32, SparsePoly> {
        let mut out: BTreeMap<i32, SparsePoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2.0[var] = 0;
            out.entry(e.0[var])
                .or_insert_with(|| Self::zero(self.arity))
                .add_term(e2, c.clone());
        }
        out
    }

    /// Dense form in `x_var`, for polynomials involving no other variable.
    pub fn to_dense(&self, var: usize) -> Result<Dense<Scalar>, AlgebraError> {
        if self.is_laurent() {
            return Err(AlgebraError::Laurent);
        }
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            if (0..self.arity).any(|k| k != var && e.0[k] != 0) {
                return Err(AlgebraError::NotUnivariate);
            }
            let d = e.0[var] as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, Scalar::int(0));
            }
            coeffs[d] = c.clone();
        }
        Ok(Dense::new(coeffs))
    }

    pub fn from_dense(arity: usize, var: usize, p: &Dense<Scalar>) -> Self {
        Self::from_terms(
            arity,
            p.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = Exponent::default();
                e.0[var] = k as i32;
                (e, c.clone())
            }),
        )
    }

    /// Sets `x_var = 1` and drops that variable, keeping the others in order.
    pub fn dehomogenize(&self, var: usize) -> Self {
        let arity = self.arity - 1;
        self.map_exponents(arity, |e| {
            let mut out = Exponent::default();
            let mut k = 0;
            for (i, &v) in e.0[..self.arity].iter().enumerate() {
                if i != var {
                    out.0[k] = v;
                    k += 1;
                }
            }
            out
        })
    }

    /// Inverse of [`dehomogenize`](Self::dehomogenize) at the given degree.
    pub fn homogenize(&self, var: usize, degree: i32) -> Self {
        let arity = self.arity + 1;
        self.map_exponents(arity, |e| {
            let mut out = Exponent::default();
            let mut k = 0;
            for i in 0..arity {
                if i != var {
                    out.0[i] = e.0[k];
                    k += 1;
                }
            }
            out.0[var] = degree - e.total();
            out
        })
    }

    /// Exact division of ordinary polynomials: `Some(q)` with `self = q * divisor`,
    /// or `None`. The lex leading term of an exact multiple is always divisible by
    /// the leading term of the divisor, so the first failure is conclusive.
    pub fn exact_div(&self, divisor: &SparsePoly) -> Result<Option<SparsePoly>, Split> {
        debug_assert!(!self.is_laurent() && !divisor.is_laurent());
        let (lead_e, lead_c) = divisor
            .terms
            .iter()
            .next_back()
            .expect("division by zero polynomial");
        let inv = lead_c.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.arity);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            let de = e.minus(lead_e);
            if !de.is_nonnegative() {
                return Ok(None);
            }
            let m = Self::monomial(self.arity, de, c * &inv);
            rem = &rem - &(&m * divisor);
            quot = &quot + &m;
        }
        Ok(Some(quot))
    }

    pub fn divides(&self, other: &SparsePoly) -> Result<bool, Split> {
        Ok(other.exact_div(self)?.is_some())
    }

    pub fn context(&self) -> Option<&AlgebraicContext> {
        self.terms.values().find_map(Scalar::context)
    }

    pub fn in_context(&self, ctx: Option<&AlgebraicContext>) -> Self {
        Self::from_terms(
            self.arity,
            self.terms.iter().map(|(e, c)| (*e, c.in_context(ctx))),
        )
    }

    /// Rendering with the given variable names, terms in decreasing degree.
    pub fn render(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&Exponent, &Scalar)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.total().cmp(&a.0.total()).then(b.0.cmp(a.0)));
        let mut out = String::new();
        for (e, c) in terms {
            let mono: Vec<String> = (0..self.arity)
                .filter(|&k| e.0[k] != 0)
                .map(|k| {
                    if e.0[k] == 1 {
                        names[k].to_string()
                    } else {
                        format!("{}^{}", names[k], e.0[k])
                    }
                })
                .collect();
            let mono = mono.join("*");
            let (neg, body) = match c {
                Scalar::Rational(r) => {
                    let neg = r < &rat(0);
                    let mag = if neg { -r.clone() } else { r.clone() };
                    let body = match (mono.is_empty(), mag == rat(1)) {
                        (true, _) => mag.to_string(),
                        (false, true) => mono.clone(),
                        (false, false) => format!("{mag}*{mono}"),
                    };
                    (neg, body)
                }
                Scalar::Residue { value, .. } => {
                    let v = format!("({})", value.render("t"));
                    (
                        false,
                        if mono.is_empty() {
                            v
                        } else {
                            format!("{v}*{mono}")
                        },
                    )
                }
            };
            match (out.is_empty(), neg) {
                (true, true) => out.push_str(&format!("-{body}")),
                (true, false) => out.push_str(&body),
                (false, true) => out.push_str(&format!(" - {body}")),
                (false, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: &[&str] = match self.arity {
            1 => &["x"],
            2 => &["x1", "x2"],
            _ => &["X0", "X1", "X2"],
        };
        f.write_str(&self.render(names))
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let mut out = SparsePoly::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.plus(e2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! owned_poly_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for SparsePoly {
            type Output = SparsePoly;
            fn $m(self, other: SparsePoly) -> SparsePoly {
                (&self).$m(&other)
            }
        }
    )*};
}
owned_poly_ops!(Add add, Sub sub, Mul mul);

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}
