//! Resultants and common-factor tests for polynomials in two or three variables.

use super::scalar::{branches, rat, AlgebraicContext, Scalar, Split};
use super::sparse::SparsePoly;
use super::{common_context, upoly_normalize, AlgebraError, UPoly};

/// Coefficients of `p` in the variable `elim`, as dense polynomials in the
/// other variable of a bivariate polynomial.
fn as_poly_over_poly(p: &SparsePoly, elim: usize) -> Result<Vec<UPoly>, AlgebraError> {
    let other = 1 - elim;
    let coeffs = p.coefficients_in(elim);
    let deg = coeffs.keys().next_back().copied().unwrap_or(0) as usize;
    (0..=deg)
        .map(|k| match coeffs.get(&(k as i32)) {
            Some(c) => c.to_dense(other),
            None => Ok(UPoly::zero()),
        })
        .collect()
}

fn check_bivariate(p: &SparsePoly) -> Result<(), AlgebraError> {
    if p.arity() != 2 {
        return Err(AlgebraError::Arity {
            expected: 2,
            found: p.arity(),
        });
    }
    if p.is_laurent() {
        return Err(AlgebraError::Laurent);
    }
    Ok(())
}

/// Resultant of two bivariate polynomials with respect to `x_elim`, as a
/// polynomial in the other variable.
///
/// Sign convention: the determinant of the Sylvester matrix written in
/// ascending powers of `x_elim`, which equals `(-1)^(mn)` times the classical
/// descending-order determinant. The formal degrees are the actual degrees in
/// `x_elim`. Computed by evaluation at rational points and interpolation.
pub fn resultant(f: &SparsePoly, g: &SparsePoly, elim: usize) -> Result<UPoly, AlgebraError> {
    check_bivariate(f)?;
    check_bivariate(g)?;
    if f.is_zero() || g.is_zero() {
        return Ok(UPoly::zero());
    }
    let sylvester = Specializer::new(f, g, elim)?;
    let mut xs: Vec<Scalar> = Vec::with_capacity(sylvester.bound + 1);
    let mut ys: Vec<Scalar> = Vec::with_capacity(sylvester.bound + 1);
    for c in nodes() {
        if xs.len() > sylvester.bound {
            break;
        }
        if let Some(value) = sylvester.at(&c)? {
            ys.push(value);
            xs.push(c);
        }
    }
    Ok(upoly_normalize(&interpolate(&xs, &ys)?)?)
}

/// Whether the resultant with respect to `x_elim` is identically zero. Stops
/// at the first nonzero specialization.
fn resultant_vanishes(f: &SparsePoly, g: &SparsePoly, elim: usize) -> Result<bool, AlgebraError> {
    let sylvester = Specializer::new(f, g, elim)?;
    let mut seen = 0;
    for c in nodes() {
        if seen > sylvester.bound {
            return Ok(true);
        }
        if let Some(value) = sylvester.at(&c)? {
            if !value.zero_test()? {
                return Ok(false);
            }
            seen += 1;
        }
    }
    unreachable!("node sequence is infinite")
}

/// Rational nodes 0, -1, 1, -2, 2, ...
fn nodes() -> impl Iterator<Item = Scalar> {
    (0i64..).map(|k| Scalar::int(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 }))
}

/// Resultant in `x_elim` evaluated at values of the other variable.
struct Specializer {
    fc: Vec<UPoly>,
    gc: Vec<UPoly>,
    sign: Scalar,
    /// Degree bound of the resultant in the other variable.
    bound: usize,
}

impl Specializer {
    fn new(f: &SparsePoly, g: &SparsePoly, elim: usize) -> Result<Self, AlgebraError> {
        let other = 1 - elim;
        let fc = as_poly_over_poly(f, elim)?;
        let gc = as_poly_over_poly(g, elim)?;
        let (m, n) = (fc.len() - 1, gc.len() - 1);
        let df = f.degree_in(other).unwrap_or(0) as usize;
        let dg = g.degree_in(other).unwrap_or(0) as usize;
        let sign = if (m * n) % 2 == 1 {
            Scalar::int(-1)
        } else {
            Scalar::int(1)
        };
        Ok(Specializer {
            fc,
            gc,
            sign,
            bound: n * df + m * dg,
        })
    }

    /// `None` when a leading coefficient vanishes at `c`.
    fn at(&self, c: &Scalar) -> Result<Option<Scalar>, Split> {
        let (lf, lg) = (self.fc.last().unwrap(), self.gc.last().unwrap());
        if lf.eval(c).zero_test()? || lg.eval(c).zero_test()? {
            return Ok(None);
        }
        let fv = UPoly::new(self.fc.iter().map(|p| p.eval(c)).collect());
        let gv = UPoly::new(self.gc.iter().map(|p| p.eval(c)).collect());
        Ok(Some(&self.sign * &fv.resultant(&gv)?))
    }
}

/// Newton interpolation through distinct rational nodes.
fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> Result<UPoly, Split> {
    let n = xs.len();
    let mut dd: Vec<Scalar> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - level];
            dd[i] = num.div(&den)?;
        }
    }
    let mut out = UPoly::zero();
    for i in (0..n).rev() {
        out = out
            .mul(&UPoly::new(vec![-&xs[i], Scalar::int(1)]))
            .add(&UPoly::constant(dd[i].clone()));
    }
    Ok(out)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x_elim`.
fn content(coeffs: &[UPoly]) -> Result<UPoly, Split> {
    let mut g = UPoly::zero();
    for c in coeffs {
        g = g.gcd(&upoly_normalize(c)?)?;
        if g.degree() == Some(0) {
            break;
        }
    }
    Ok(g)
}

/// Whether two bivariate polynomials share a nonconstant factor.
pub fn has_common_factor(f: &SparsePoly, g: &SparsePoly) -> Result<bool, AlgebraError> {
    check_bivariate(f)?;
    check_bivariate(g)?;
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Ok(true),
        (true, false) => return Ok(!g.is_constant()),
        (false, true) => return Ok(!f.is_constant()),
        _ => {}
    }
    let elim = 1;
    let fc = as_poly_over_poly(f, elim)?;
    let gc = as_poly_over_poly(g, elim)?;
    let cf = content(&fc)?;
    let cg = content(&gc)?;
    if cf.gcd(&cg)?.degree().unwrap_or(0) > 0 {
        return Ok(true);
    }
    let pf = primitive_part(f, &cf)?;
    let pg = primitive_part(g, &cg)?;
    if pf.degree_in(elim).unwrap_or(0) == 0 || pg.degree_in(elim).unwrap_or(0) == 0 {
        return Ok(false);
    }
    resultant_vanishes(&pf, &pg, elim)
}

fn primitive_part(p: &SparsePoly, content: &UPoly) -> Result<SparsePoly, AlgebraError> {
    let c = SparsePoly::from_dense(2, 0, content);
    p.exact_div(&c)?
        .ok_or_else(|| AlgebraError::Unsupported("content does not divide".into()))
}

/// Common-factor test for homogeneous polynomials in `X0, X1, X2`.
pub fn has_common_factor_homogeneous(f: &SparsePoly, g: &SparsePoly) -> Result<bool, AlgebraError> {
    for p in [f, g] {
        if p.arity() != 3 {
            return Err(AlgebraError::Arity {
                expected: 3,
                found: p.arity(),
            });
        }
    }
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Ok(true),
        (true, false) => return Ok(!g.is_constant()),
        (false, true) => return Ok(!f.is_constant()),
        _ => {}
    }
    if f.min_degree_in(0).unwrap() > 0 && g.min_degree_in(0).unwrap() > 0 {
        return Ok(true);
    }
    has_common_factor(&f.dehomogenize(0), &g.dehomogenize(0))
}

/// Monic gcd of two univariate polynomials, one result per factor of the
/// context when a zero divisor forces a split.
pub fn gcd_branches(
    f: &UPoly,
    g: &UPoly,
) -> Result<Vec<(Option<AlgebraicContext>, UPoly)>, AlgebraError> {
    let start = f
        .coeffs()
        .iter()
        .chain(g.coeffs())
        .find_map(|c| c.context().cloned());
    branches(start, |ctx| -> Result<UPoly, AlgebraError> {
        let f = upoly_normalize(&f.map(|c| c.in_context(ctx)))?;
        let g = upoly_normalize(&g.map(|c| c.in_context(ctx)))?;
        Ok(f.gcd(&g)?)
    })
}

/// Resultant with respect to `x_elim`, one result per factor of the context.
pub fn resultant_branches(
    f: &SparsePoly,
    g: &SparsePoly,
    elim: usize,
) -> Result<Vec<(Option<AlgebraicContext>, UPoly)>, AlgebraError> {
    branches(common_context([f, g]), |ctx| {
        resultant(&f.in_context(ctx), &g.in_context(ctx), elim)
    })
}

/// The polynomial `x - c` in one variable.
pub fn linear(c: &Scalar) -> UPoly {
    UPoly::new(vec![-c, Scalar::Rational(rat(1))])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraicContext, QPoly};

    fn p2(t: &[(i32, i32, i64)]) -> SparsePoly {
        SparsePoly::from_ints2(t)
    }

    fn u(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&v| Scalar::int(v)).collect())
    }

    #[test]
    fn resultant_of_two_lines() {
        // x2 - x1 and x2 + x1, eliminating x2
        let r = resultant(
            &p2(&[(0, 1, 1), (1, 0, -1)]),
            &p2(&[(0, 1, 1), (1, 0, 1)]),
            1,
        )
        .unwrap();
        assert_eq!(r, u(&[0, -2]));
    }

    #[test]
    fn resultant_with_constant_in_eliminated_variable() {
        let r = resultant(&p2(&[(1, 0, 1)]), &p2(&[(0, 1, 1)]), 1).unwrap();
        assert_eq!(r, u(&[0, 1]));
    }

    #[test]
    fn resultant_parabola_and_line() {
        let r = resultant(
            &p2(&[(0, 1, 1), (2, 0, -1)]),
            &p2(&[(0, 1, 1), (0, 0, -1)]),
            1,
        )
        .unwrap();
        assert_eq!(r, u(&[1, 0, -1]));
    }

    /// Independent check: the ascending Sylvester determinant by cofactor
    /// expansion at a fixed evaluation point.
    fn sylvester_det(f: &[i64], g: &[i64]) -> i64 {
        let (m, n) = (f.len() - 1, g.len() - 1);
        let size = m + n;
        let mut mat = vec![vec![0i64; size]; size];
        for i in 0..n {
            for (k, &c) in f.iter().enumerate() {
                mat[i][i + k] = c;
            }
        }
        for j in 0..m {
            for (k, &c) in g.iter().enumerate() {
                mat[n + j][j + k] = c;
            }
        }
        fn det(m: &[Vec<i64>]) -> i64 {
            if m.len() == 1 {
                return m[0][0];
            }
            (0..m.len())
                .map(|c| {
                    let minor: Vec<Vec<i64>> = m[1..]
                        .iter()
                        .map(|r| {
                            r.iter()
                                .enumerate()
                                .filter(|(k, _)| *k != c)
                                .map(|(_, v)| *v)
                                .collect()
                        })
                        .collect();
                    let s = if c % 2 == 0 { 1 } else { -1 };
                    s * m[0][c] * det(&minor)
                })
                .sum()
        }
        det(&mat)
    }

    #[test]
    fn resultant_matches_sylvester_determinant() {
        // f = x2^2 + x1 x2 - 3, g = 2 x2^3 - x1^2 x2 + x1 + 1
        let f = p2(&[(0, 2, 1), (1, 1, 1), (0, 0, -3)]);
        let g = p2(&[(0, 3, 2), (2, 1, -1), (1, 0, 1), (0, 0, 1)]);
        let r = resultant(&f, &g, 1).unwrap();
        for x in -3i64..=3 {
            let fv = [-3, x, 1];
            let gv = [x + 1, -x * x, 0, 2];
            let expect = sylvester_det(&fv, &gv);
            assert_eq!(r.eval(&Scalar::int(x)), Scalar::int(expect), "x1 = {x}");
        }
    }

    #[test]
    fn common_factor_detection() {
        let h = p2(&[(1, 1, 1), (0, 0, -1)]);
        let a = &h * &p2(&[(1, 0, 1), (0, 1, 2)]);
        let b = &h * &p2(&[(2, 0, 1), (0, 0, 5)]);
        assert!(has_common_factor(&a, &b).unwrap());
        assert!(!has_common_factor(&p2(&[(1, 0, 1)]), &p2(&[(0, 1, 1)])).unwrap());
        // factor only in x1: content detection
        let c1 = &p2(&[(1, 0, 1), (0, 0, 1)]) * &p2(&[(0, 1, 1)]);
        let c2 = &p2(&[(1, 0, 1), (0, 0, 1)]) * &p2(&[(0, 0, 3), (1, 0, 1)]);
        assert!(has_common_factor(&c1, &c2).unwrap());
    }

    #[test]
    fn homogeneous_common_factor_through_x0() {
        let a = SparsePoly::from_ints3(&[(1, 1, 0, 1)]);
        let b = SparsePoly::from_ints3(&[(1, 0, 1, 1)]);
        assert!(has_common_factor_homogeneous(&a, &b).unwrap());
        let c = SparsePoly::from_ints3(&[(0, 1, 0, 1)]);
        assert!(!has_common_factor_homogeneous(&c, &b).unwrap());
    }

    #[test]
    fn gcd_splits_over_reducible_modulus() {
        let ctx = AlgebraicContext::new(&QPoly::from_ints(&[-1, 0, 1])).unwrap();
        let t = ctx.generator();
        // gcd(x - t, x - 1): x - 1 where t = 1, and 1 where t = -1
        let f = linear(&t);
        let g = u(&[-1, 1]);
        let out = gcd_branches(&f, &g).unwrap();
        let degrees: Vec<usize> = out.iter().map(|(_, p)| p.degree().unwrap()).collect();
        assert_eq!(degrees, vec![1, 0]);
    }
}
