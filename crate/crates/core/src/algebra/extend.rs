//! Adjoining the roots of a univariate polynomial.

use super::roots::rational_roots;
use super::scalar::{rat, AlgebraicContext, Scalar};
use super::{from_qpoly, to_qpoly, upoly_normalize, AlgebraError, QPoly, UPoly};

/// One family of roots: a rational root, or the generator of a residue ring
/// whose modulus collects the remaining roots.
#[derive(Clone, Debug)]
pub struct RootBranch {
    pub ctx: Option<AlgebraicContext>,
    pub root: Scalar,
    /// Polynomial whose roots this branch stands for: `t - c` for a rational
    /// root, the modulus for an extension, and `t` for a root solved linearly
    /// over an algebraic base.
    pub minimal: QPoly,
}

/// Roots of a nonconstant univariate polynomial over the rationals or over
/// `base`. Rational roots are split off and returned individually. Roots that
/// would require a second algebraic extension on top of `base` are rejected.
pub fn adjoin_roots(
    p: &UPoly,
    base: Option<&AlgebraicContext>,
) -> Result<Vec<RootBranch>, AlgebraError> {
    let p = upoly_normalize(p)?;
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let Some(q) = to_qpoly(&p) else {
        if p.degree() == Some(1) {
            let root = (-&p.coeff(0)).div(&p.coeff(1))?;
            let minimal = QPoly::x();
            return Ok(vec![RootBranch {
                ctx: base.cloned(),
                root,
                minimal,
            }]);
        }
        return Err(AlgebraError::Unsupported(
            "root of a polynomial with algebraic coefficients".into(),
        ));
    };
    let q = q.squarefree_part().expect("rational");
    let mut out = Vec::new();
    let mut rest = q.clone();
    for r in rational_roots(&q) {
        let lin = QPoly::new(vec![-r.clone(), rat(1)]);
        rest = rest.exact_div(&lin).expect("rational");
        out.push(RootBranch {
            ctx: base.cloned(),
            root: Scalar::Rational(r),
            minimal: lin,
        });
    }
    if !rest.is_constant() {
        if base.is_some() {
            return Err(AlgebraError::Unsupported(format!(
                "roots of {} would need a nested algebraic extension",
                rest.render("t")
            )));
        }
        let ctx = AlgebraicContext::new(&rest)?;
        out.push(RootBranch {
            root: ctx.generator(),
            minimal: ctx.modulus().clone(),
            ctx: Some(ctx),
        });
    }
    Ok(out)
}

/// Convenience for rational polynomials.
pub fn adjoin_rational_roots(q: &QPoly) -> Result<Vec<RootBranch>, AlgebraError> {
    adjoin_roots(&from_qpoly(q), None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separates_rational_roots() {
        // (t - 1)(t^2 - 2)
        let q = QPoly::from_ints(&[-1, 1]).mul(&QPoly::from_ints(&[-2, 0, 1]));
        let b = adjoin_rational_roots(&q).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].root, Scalar::Rational(rat(1)));
        assert_eq!(b[1].minimal, QPoly::from_ints(&[-2, 0, 1]));
        let t = &b[1].root;
        assert_eq!(t * t, Scalar::int(2));
    }

    #[test]
    fn refuses_towers() {
        let base = AlgebraicContext::new(&QPoly::from_ints(&[-2, 0, 1])).unwrap();
        let p = from_qpoly(&QPoly::from_ints(&[-3, 0, 1]));
        assert!(matches!(
            adjoin_roots(&p, Some(&base)),
            Err(AlgebraError::Unsupported(_))
        ));
        let lin = UPoly::new(vec![base.generator(), Scalar::int(1)]);
        let b = adjoin_roots(&lin, Some(&base)).unwrap();
        assert_eq!(b[0].root, -&base.generator());
    }
}
