//! Exact algebra: rationals, residue rings of squarefree polynomials, dense and
//! sparse polynomials, resultants and common-factor tests.

pub mod dense;
pub mod elim;
pub mod extend;
pub mod roots;
pub mod scalar;
pub mod sparse;

use thiserror::Error;

pub use dense::{Coeff, Dense, QPoly};
pub use elim::{gcd_branches, has_common_factor, has_common_factor_homogeneous, resultant};
pub use extend::{adjoin_rational_roots, adjoin_roots, RootBranch};
pub use roots::rational_roots;
pub use scalar::{
    branches, rat, ratio, AlgebraicContext, ContextError, Rat, Scalar, Split, SplitAware,
};
pub use sparse::{Exponent, Order, SparsePoly};

/// Univariate polynomial over exact scalars.
pub type UPoly = Dense<Scalar>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Split(#[from] Split),
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error("polynomial has negative exponents")]
    Laurent,
    #[error("polynomial involves more than one variable")]
    NotUnivariate,
    #[error("expected a polynomial in {expected} variables, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl SplitAware for AlgebraError {
    fn split(&self) -> Option<&Split> {
        match self {
            AlgebraError::Split(s) => Some(s),
            _ => None,
        }
    }
}

/// Context shared by a collection of polynomials: the one with the smallest
/// modulus among those present.
pub fn common_context<'a>(
    polys: impl IntoIterator<Item = &'a SparsePoly>,
) -> Option<AlgebraicContext> {
    polys
        .into_iter()
        .filter_map(|p| p.context().cloned())
        .min_by_key(|c| c.degree())
}

/// Zero test of a univariate polynomial over a possibly split context.
pub fn upoly_is_zero(p: &UPoly) -> Result<bool, Split> {
    for c in p.coeffs() {
        if !c.zero_test()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Degree with leading coefficients that vanish on the current context removed.
pub fn upoly_true_degree(p: &UPoly) -> Result<Option<usize>, Split> {
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if !c.zero_test()? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Drops leading coefficients that are zero on the current context.
pub fn upoly_normalize(p: &UPoly) -> Result<UPoly, Split> {
    match upoly_true_degree(p)? {
        None => Ok(UPoly::zero()),
        Some(d) => Ok(UPoly::new(p.coeffs()[..=d].to_vec())),
    }
}

/// Rational polynomial underlying a scalar polynomial with rational coefficients.
pub fn to_qpoly(p: &UPoly) -> Option<QPoly> {
    p.coeffs()
        .iter()
        .map(|c| c.as_rational().cloned())
        .collect::<Option<Vec<_>>>()
        .map(QPoly::new)
}

pub fn from_qpoly(p: &QPoly) -> UPoly {
    p.map(|c| Scalar::Rational(c.clone()))
}
