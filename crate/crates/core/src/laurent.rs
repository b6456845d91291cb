//! Quasi-homogeneous decomposition, non-degeneracy of pairs along a weight,
//! general position of Laurent pairs, and a root-counting oracle for the
//! number of common zeros in the torus.

use thiserror::Error;

use crate::algebra::{
    adjoin_rational_roots, branches, common_context, resultant, upoly_normalize, AlgebraError,
    Exponent, Scalar, SparsePoly, Split, SplitAware, UPoly,
};
use crate::polytope::{on_segment, primitive_normal, LatticePoint, Polytope2};

/// Primitive weight `(p, q)` with `q > 0`, or `(1, 0)`.
pub type Weight = (i64, i64);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PositionError {
    #[error("terms {first:?} and {second:?} have different weighted degrees")]
    NotQuasiHomogeneous { first: Exponent, second: Exponent },
    #[error("weight ({0}, {1}) is not primitive with positive second entry")]
    InvalidWeight(i64, i64),
    #[error("zero polynomial has no quasi-homogeneous decomposition")]
    Zero,
    #[error("pair is not in general position")]
    NotGeneralPosition,
    #[error("pair has infinitely many common zeros in the torus")]
    InfiniteZeros,
    #[error("root counting needs rational coefficients")]
    AlgebraicCoefficients,
    #[error("could not separate torus zeros from boundary zeros")]
    Inseparable,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<Split> for PositionError {
    fn from(s: Split) -> Self {
        PositionError::Algebra(AlgebraError::Split(s))
    }
}

impl SplitAware for PositionError {
    fn split(&self) -> Option<&Split> {
        match self {
            PositionError::Algebra(e) => e.split(),
            _ => None,
        }
    }
}

/// `h = u^monomial * sum_l c_l (u1^q)^(N-l) (u2^p)^l` with `factor = sum_l c_l s^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiHomogeneous {
    pub monomial: Exponent,
    pub weight: Weight,
    pub degree: usize,
    pub factor: UPoly,
}

impl QuasiHomogeneous {
    fn point(&self, l: usize) -> Exponent {
        let (p, q) = self.weight;
        let n = self.degree as i64;
        let l = l as i64;
        self.monomial
            .plus(&Exponent::new2((q * (n - l)) as i32, (p * l) as i32))
    }

    /// Rebuilds the polynomial from the decomposition.
    pub fn recompose(&self) -> SparsePoly {
        SparsePoly::from_terms(
            2,
            self.factor
                .coeffs()
                .iter()
                .enumerate()
                .map(|(l, c)| (self.point(l), c.clone())),
        )
    }
}

fn check_weight((p, q): Weight) -> Result<(), PositionError> {
    let ok = (q > 0 && num_integer::gcd(p, q) == 1) || (p, q) == (1, 0);
    if ok {
        Ok(())
    } else {
        Err(PositionError::InvalidWeight(p, q))
    }
}

pub fn qh_decompose(h: &SparsePoly, weight: Weight) -> Result<QuasiHomogeneous, PositionError> {
    check_weight(weight)?;
    let (p, q) = weight;
    let terms: Vec<(Exponent, Scalar)> = h.terms().map(|(e, c)| (*e, c.clone())).collect();
    let Some((first, _)) = terms.first() else {
        return Err(PositionError::Zero);
    };
    let wdeg = |e: &Exponent| p * e.get(0) as i64 + q * e.get(1) as i64;
    if let Some((other, _)) = terms.iter().find(|(e, _)| wdeg(e) != wdeg(first)) {
        return Err(PositionError::NotQuasiHomogeneous {
            first: *first,
            second: *other,
        });
    }
    let (degree, monomial) = if q > 0 {
        let top = terms
            .iter()
            .map(|(e, _)| *e)
            .max_by_key(|e| e.get(0))
            .unwrap();
        let imin = terms.iter().map(|(e, _)| e.get(0)).min().unwrap();
        let n = ((top.get(0) - imin) as i64 / q) as usize;
        (n, top.minus(&Exponent::new2((q * n as i64) as i32, 0)))
    } else {
        let jmin = terms.iter().map(|(e, _)| e.get(1)).min().unwrap();
        let jmax = terms.iter().map(|(e, _)| e.get(1)).max().unwrap();
        ((jmax - jmin) as usize, Exponent::new2(first.get(0), jmin))
    };
    let mut qh = QuasiHomogeneous {
        monomial,
        weight,
        degree,
        factor: UPoly::zero(),
    };
    qh.factor = UPoly::new((0..=degree).map(|l| h.coeff(&qh.point(l))).collect());
    Ok(qh)
}

/// Removes factors `s` that vanish on the current context.
fn strip_zero_roots(f: &UPoly) -> Result<UPoly, Split> {
    let f = upoly_normalize(f)?;
    let mut k = 0;
    while k < f.coeffs().len() && f.coeffs()[k].zero_test()? {
        k += 1;
    }
    Ok(UPoly::new(f.coeffs()[k..].to_vec()))
}

/// Whether two polynomials quasi-homogeneous for `weight` have no common zero
/// in the torus. False when either is zero.
pub fn pair_nondegenerate(
    h1: &SparsePoly,
    h2: &SparsePoly,
    weight: Weight,
) -> Result<bool, PositionError> {
    if h1.is_zero() || h2.is_zero() {
        check_weight(weight)?;
        return Ok(false);
    }
    let f1 = qh_decompose(h1, weight)?.factor;
    let f2 = qh_decompose(h2, weight)?.factor;
    let start = common_context([h1, h2]);
    let verdicts = branches(start, |ctx| -> Result<bool, PositionError> {
        let a = strip_zero_roots(&f1.map(|c| c.in_context(ctx)))?;
        let b = strip_zero_roots(&f2.map(|c| c.in_context(ctx)))?;
        if a.is_zero() || b.is_zero() {
            return Ok(false);
        }
        Ok(a.gcd(&b)?.is_constant())
    })?;
    Ok(verdicts.iter().all(|(_, v)| *v))
}

fn lattice_support(p: &SparsePoly) -> Vec<LatticePoint> {
    p.support()
        .iter()
        .map(LatticePoint::from_exponent)
        .collect()
}

/// General position: along every side of the convex hull of both supports,
/// both restrictions are nonzero and have no common torus zero.
pub fn general_position(f1: &SparsePoly, f2: &SparsePoly) -> Result<bool, PositionError> {
    if f1.is_zero() || f2.is_zero() {
        return Ok(false);
    }
    let hull = Polytope2::hull(lattice_support(f1).into_iter().chain(lattice_support(f2)));
    for (a, b) in hull.sides() {
        let weight = primitive_normal(LatticePoint::new(b.x - a.x, b.y - a.y));
        let on_side = |e: &Exponent| on_segment(a, b, LatticePoint::from_exponent(e));
        let (r1, r2) = (f1.filter_terms(on_side), f2.filter_terms(on_side));
        if !pair_nondegenerate(&r1, &r2, weight)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Unimodular exponent changes tried in turn by the counting oracle.
const TORUS_CHANGES: [[[i32; 3]; 3]; 6] = [
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 0, 0], [1, 1, 0], [0, 0, 1]],
    [[2, 1, 0], [1, 1, 0], [0, 0, 1]],
    [[1, 2, 0], [0, 1, 0], [0, 0, 1]],
    [[3, 1, 0], [2, 1, 0], [0, 0, 1]],
];

/// Number of common zeros in the torus, with multiplicity, computed by
/// elimination. Requires general position and rational coefficients.
pub fn bernstein_count_oracle(f1: &SparsePoly, f2: &SparsePoly) -> Result<u64, PositionError> {
    if common_context([f1, f2]).is_some() {
        return Err(PositionError::AlgebraicCoefficients);
    }
    if !general_position(f1, f2)? {
        return Err(PositionError::NotGeneralPosition);
    }
    for change in &TORUS_CHANGES {
        let g1 = f1.monomial_substitution(change).strip_monomial().1;
        let g2 = f2.monomial_substitution(change).strip_monomial().1;
        if let Some(n) = count_separated(&g1, &g2)? {
            return Ok(n);
        }
    }
    Err(PositionError::Inseparable)
}

/// Counts affine solutions off the axes, provided no torus solution shares its
/// first coordinate with a solution on the axis `u2 = 0` or at infinity.
fn count_separated(g1: &SparsePoly, g2: &SparsePoly) -> Result<Option<u64>, PositionError> {
    let res = resultant(g1, g2, 1)?;
    if res.is_zero() {
        return Err(PositionError::InfiniteZeros);
    }
    let (_, res) = res.strip_x();
    let on_axis = |g: &SparsePoly| g.filter_terms(|e| e.get(1) == 0).to_dense(0);
    let leading = |g: &SparsePoly| -> Result<UPoly, AlgebraError> {
        let coeffs = g.coefficients_in(1);
        coeffs.values().next_back().expect("nonzero").to_dense(0)
    };
    let axis = on_axis(g1)?.gcd(&on_axis(g2)?)?;
    let infinity = leading(g1)?.gcd(&leading(g2)?)?;
    let bad = axis.mul(&infinity);
    let (_, bad) = if bad.is_zero() {
        (0, bad)
    } else {
        bad.strip_x()
    };
    let mut rest = res;
    if !bad.is_constant() {
        let bad = bad.squarefree_part()?;
        let qbad = crate::algebra::to_qpoly(&bad).expect("rational input");
        for root in adjoin_rational_roots(&qbad)? {
            let hits = branches(root.ctx.clone(), |ctx| -> Result<bool, PositionError> {
                let theta = root.root.in_context(ctx);
                let h1 = g1.in_context(ctx).eval_var(0, &theta)?.to_dense(1)?;
                let h2 = g2.in_context(ctx).eval_var(0, &theta)?.to_dense(1)?;
                let g = strip_zero_roots(&upoly_normalize(&h1)?.gcd(&upoly_normalize(&h2)?)?)?;
                Ok(!g.is_constant())
            })?;
            if hits.iter().any(|(_, hit)| *hit) {
                return Ok(None);
            }
        }
        loop {
            let g = rest.gcd(&bad)?;
            if g.is_constant() {
                break;
            }
            rest = rest.exact_div(&g)?;
        }
    }
    Ok(Some(rest.degree().unwrap_or(0) as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::polytope::mixed_area;

    fn p2(t: &[(i32, i32, i64)]) -> SparsePoly {
        SparsePoly::from_ints2(t)
    }

    #[test]
    fn cusp_decomposition() {
        let qh = qh_decompose(&p2(&[(0, 2, 1), (3, 0, -1)]), (2, 3)).unwrap();
        assert_eq!(qh.monomial, Exponent::new2(0, 0));
        assert_eq!(qh.factor, UPoly::new(vec![Scalar::int(-1), Scalar::int(1)]));
        assert_eq!(qh.recompose(), p2(&[(0, 2, 1), (3, 0, -1)]));
    }

    #[test]
    fn vertical_weight() {
        let h = p2(&[(2, 1, 1), (2, 3, 4)]);
        let qh = qh_decompose(&h, (1, 0)).unwrap();
        assert_eq!(qh.monomial, Exponent::new2(2, 1));
        assert_eq!(qh.degree, 2);
        assert_eq!(qh.recompose(), h);
    }

    #[test]
    fn rejects_mixed_degrees() {
        let err = qh_decompose(&p2(&[(1, 0, 1), (0, 2, 1)]), (1, 1)).unwrap_err();
        assert!(matches!(err, PositionError::NotQuasiHomogeneous { .. }));
    }

    #[test]
    fn shared_root_is_degenerate() {
        let w = (1, 1);
        let a = p2(&[(0, 1, 1), (1, 0, -1)]);
        let b = &a * &p2(&[(0, 1, 1), (1, 0, 2)]);
        assert!(!pair_nondegenerate(&a, &b, w).unwrap());
        assert!(pair_nondegenerate(&a, &p2(&[(0, 1, 1), (1, 0, 1)]), w).unwrap());
        // common factor u1 does not count: it has no zero in the torus
        assert!(pair_nondegenerate(
            &p2(&[(1, 1, 1), (2, 0, 1)]),
            &p2(&[(1, 1, 1), (2, 0, 3)]),
            w
        )
        .unwrap());
        assert!(!pair_nondegenerate(&a, &SparsePoly::zero(2), w).unwrap());
    }

    #[test]
    fn pinned_pair_counts_two() {
        let f1 = p2(&[(0, 0, 1), (1, 0, 1), (0, 1, 1)]);
        let f2 = p2(&[(0, 0, 1), (1, 1, 1)]);
        assert!(general_position(&f1, &f2).unwrap());
        assert_eq!(bernstein_count_oracle(&f1, &f2).unwrap(), 2);
        let area = mixed_area(
            &Polytope2::hull(lattice_support(&f1)),
            &Polytope2::hull(lattice_support(&f2)),
        );
        assert_eq!(area, rat(2));
    }

    #[test]
    fn laurent_pair_with_axis_solution() {
        // u1 + u2 + 1 and u1 + 2 u2 + 1 meet at (-1, 0), outside the torus
        let f1 = p2(&[(1, 0, 1), (0, 1, 1), (0, 0, 1)]);
        let f2 = p2(&[(1, 0, 1), (0, 1, 2), (0, 0, 1)]);
        assert_eq!(
            bernstein_count_oracle(&f1, &f2),
            Err(PositionError::NotGeneralPosition)
        );
        // u1^-1 + u2 - 3 and u1 u2 - 2: torus zeros of (1 + u1 u2 - 3 u1, u1 u2 - 2)
        let g1 = p2(&[(-1, 0, 1), (0, 1, 1), (0, 0, -3)]);
        let g2 = p2(&[(1, 1, 1), (0, 0, -2)]);
        if general_position(&g1, &g2).unwrap() {
            let n = bernstein_count_oracle(&g1, &g2).unwrap();
            let area = mixed_area(
                &Polytope2::hull(lattice_support(&g1)),
                &Polytope2::hull(lattice_support(&g2)),
            );
            assert_eq!(rat(n as i64), area);
        }
    }
}
