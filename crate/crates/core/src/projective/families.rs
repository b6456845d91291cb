//! The parameter set of candidate curves, the curves themselves and the
//! eigenvalue data at their two ends.

use std::fmt;

use serde::Serialize;

use crate::algebra::{
    adjoin_roots, upoly_normalize, AlgebraicContext, Exponent, QPoly, RootBranch, Scalar,
    SparsePoly, UPoly,
};
use crate::local::omega_from_eta;

use super::{
    classify_case, homogeneous_polygon, inverse_perm, CaseClass, ProjectiveError,
    ProjectiveFoliation,
};

/// Cases with a curve family, reduced to their parameters.
#[derive(Clone, Copy, Debug)]
enum Family {
    Lines {
        perm: [usize; 3],
        degree: i64,
    },
    Cusps {
        perm: [usize; 3],
        reduced_degree: i64,
        reduced_offset: i64,
        family_size: i64,
    },
}

impl Family {
    fn of(case: &CaseClass) -> Result<Self, ProjectiveError> {
        match *case {
            CaseClass::B { perm, degree } => Ok(Family::Lines { perm, degree }),
            CaseClass::C {
                perm,
                reduced_degree,
                reduced_offset,
                family_size,
                ..
            } => Ok(Family::Cusps {
                perm,
                reduced_degree,
                reduced_offset,
                family_size,
            }),
            ref other => Err(ProjectiveError::WrongCase {
                expected: "B or C",
                found: other.label().into(),
            }),
        }
    }

    fn perm(&self) -> [usize; 3] {
        match *self {
            Family::Lines { perm, .. } | Family::Cusps { perm, .. } => perm,
        }
    }

    /// Exponent of `X2` contributed by one power of the second variable of the
    /// restriction.
    fn step(&self) -> i32 {
        match *self {
            Family::Lines { .. } => 1,
            Family::Cusps { reduced_offset, .. } => reduced_offset as i32,
        }
    }

    /// Degree of the coefficients as polynomials in the two restricted
    /// variables.
    fn size(&self) -> i64 {
        match *self {
            Family::Lines { degree, .. } => degree,
            Family::Cusps { family_size, .. } => family_size,
        }
    }
}

/// `A(1, lambda)` of a standardized coefficient, read as a polynomial in
/// lambda.
fn restrict(p: &SparsePoly, step: i32) -> UPoly {
    let top = p
        .terms()
        .map(|(e, _)| e.get(2) / step)
        .max()
        .unwrap_or(0)
        .max(0) as usize;
    let mut coeffs = vec![Scalar::int(0); top + 1];
    for (e, c) in p.terms() {
        let k = (e.get(2) / step) as usize;
        coeffs[k] = &coeffs[k] + c;
    }
    UPoly::new(coeffs)
}

/// `A(u, 1)` of a standardized coefficient of homogeneous degree `size` in
/// the restricted variables, read as a polynomial in u.
fn restrict_reversed(p: &SparsePoly, step: i32, size: i64) -> UPoly {
    let r = restrict(p, step);
    let coeffs = (0..=size as usize)
        .map(|k| r.coeff(size as usize - k))
        .collect();
    UPoly::new(coeffs)
}

fn scaled(p: &UPoly, k: i64) -> UPoly {
    p.scale(&Scalar::int(k))
}

pub(super) fn render_upoly(p: &UPoly, var: &str) -> String {
    SparsePoly::from_dense(1, 0, p).render(&[var])
}

/// The set of parameters of candidate curves, through its squarefree
/// defining polynomial.
#[derive(Clone, Debug)]
pub struct LambdaSet {
    /// Polynomial whose nonzero roots are the parameters, before reduction.
    pub defining: UPoly,
    /// Squarefree part with the factors of lambda removed.
    pub modulus: UPoly,
    pub count: usize,
    /// Number of parameters predicted for a complex hyperbolic foliation.
    pub expected: i64,
    /// Violations of the conditions a complex hyperbolic foliation must meet;
    /// each forces a saddle-node at the corresponding point.
    pub warnings: Vec<String>,
    pub roots: Vec<RootBranch>,
}

impl LambdaSet {
    pub fn render_modulus(&self) -> String {
        render_upoly(&self.modulus, "lambda")
    }
}

/// Coefficients of `F` moved into the standard position of its case.
fn standardized(f: &ProjectiveFoliation, family: &Family) -> ProjectiveFoliation {
    f.permuted(family.perm())
}

fn defining_polynomial(g: &ProjectiveFoliation, family: &Family) -> UPoly {
    let step = family.step();
    match *family {
        Family::Lines { .. } => restrict(g.coeff(0), step),
        Family::Cusps {
            reduced_degree,
            reduced_offset,
            ..
        } => scaled(&restrict(g.coeff(0), step), reduced_offset)
            .add(&scaled(&restrict(g.coeff(2), step), reduced_degree)),
    }
}

pub fn lambda_set(f: &ProjectiveFoliation, case: &CaseClass) -> Result<LambdaSet, ProjectiveError> {
    let family = Family::of(case)?;
    let g = standardized(f, &family);
    let defining = upoly_normalize(&defining_polynomial(&g, &family))?;
    let expected = family.size();
    let mut warnings = Vec::new();
    if defining.is_zero() {
        warnings.push("defining polynomial vanishes identically".into());
        return Ok(LambdaSet {
            modulus: UPoly::zero(),
            defining,
            count: 0,
            expected,
            warnings,
            roots: Vec::new(),
        });
    }
    let (low, stripped) = defining.strip_x();
    let modulus = stripped.squarefree_part()?;
    if low > 0 {
        warnings.push(
            "lambda = 0 is a root: the polygon end on the first axis is a saddle-node".into(),
        );
    }
    if defining.degree().unwrap_or(0) < expected as usize {
        warnings.push(
            "defining polynomial has degree below the expected count: saddle-node at infinity"
                .into(),
        );
    }
    if modulus.degree() < stripped.degree() {
        warnings.push(
            "defining polynomial has a multiple factor: the corresponding point is a saddle-node"
                .into(),
        );
    }
    let roots = adjoin_roots(&modulus, g.context().as_ref())?;
    let count = modulus.degree().unwrap_or(0);
    Ok(LambdaSet {
        defining,
        modulus,
        count,
        expected,
        warnings,
        roots,
    })
}

/// Solution of `alpha + beta = a`, `gamma + delta = d`,
/// `alpha*delta - beta*gamma = 1` in non-negative integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CuspExponents {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
}

/// Exhaustive search; panics unless `0 < offset < degree` are coprime.
pub fn cusp_resolution_exponents(offset: i64, degree: i64) -> CuspExponents {
    assert!(0 < offset && offset < degree, "need 0 < a < d");
    let solutions: Vec<CuspExponents> = (0..=offset)
        .flat_map(|alpha| (0..=degree).map(move |gamma| (alpha, gamma)))
        .map(|(alpha, gamma)| CuspExponents {
            alpha,
            beta: offset - alpha,
            gamma,
            delta: degree - gamma,
        })
        .filter(|s| s.alpha * s.delta - s.beta * s.gamma == 1)
        .collect();
    assert_eq!(
        solutions.len(),
        1,
        "no unique solution for ({offset}, {degree})"
    );
    solutions[0]
}

/// One member of the candidate family, in the original coordinates.
#[derive(Clone, Debug)]
pub struct FamilyCurve {
    pub ctx: Option<AlgebraicContext>,
    pub minimal: QPoly,
    pub lambda: Scalar,
    pub curve: SparsePoly,
    pub exponents: Option<CuspExponents>,
}

fn family_member(family: &Family, lambda: &Scalar) -> SparsePoly {
    let standard = match *family {
        Family::Lines { .. } => &SparsePoly::var(3, 2) - &SparsePoly::var(3, 1).scale(lambda),
        Family::Cusps {
            reduced_degree: d,
            reduced_offset: a,
            ..
        } => {
            let (d, a) = (d as i32, a as i32);
            let v = SparsePoly::monomial(3, Exponent([0, d - a, a]), Scalar::int(1));
            let u = SparsePoly::monomial(3, Exponent([d, 0, 0]), lambda.clone());
            &v - &u
        }
    };
    standard.permute(&inverse_perm(family.perm()))
}

pub fn candidate_curves(
    case: &CaseClass,
    lambdas: &LambdaSet,
) -> Result<Vec<FamilyCurve>, ProjectiveError> {
    let family = Family::of(case)?;
    let exponents = match family {
        Family::Cusps {
            reduced_degree,
            reduced_offset,
            ..
        } => Some(cusp_resolution_exponents(reduced_offset, reduced_degree)),
        Family::Lines { .. } => None,
    };
    Ok(lambdas
        .roots
        .iter()
        .map(|r| FamilyCurve {
            ctx: r.ctx.clone(),
            minimal: r.minimal.clone(),
            lambda: r.root.clone(),
            curve: family_member(&family, &r.root),
            exponents,
        })
        .collect())
}

/// Whether the homogeneous curve `curve = 0` is invariant, tested by exact
/// division in each affine chart.
pub fn is_invariant_curve(
    f: &ProjectiveFoliation,
    curve: &SparsePoly,
) -> Result<bool, ProjectiveError> {
    if curve.is_zero() || curve.homogeneous_degree().is_none() {
        return Ok(false);
    }
    for chart in 0..3 {
        let local = curve.dehomogenize(chart);
        if local.is_constant() {
            continue;
        }
        let (p, q) = omega_from_eta(&f.chart_germ(chart));
        let tangency = &(&p * &local.derivative(1)) - &(&q * &local.derivative(0));
        if !local.divides(&tangency)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Nature of a trace point at an end of a family curve after pre-reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndClass {
    Simple,
    /// Presimple with a positive rational eigenvalue ratio.
    Resonant,
    SaddleNode,
}

impl EndClass {
    pub fn label(self) -> &'static str {
        match self {
            EndClass::Simple => "simple",
            EndClass::Resonant => "resonant",
            EndClass::SaddleNode => "saddle-node",
        }
    }
}

impl fmt::Display for EndClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Eigenvalue data at the two ends of a cusp curve, with the relations
/// linking them.
#[derive(Clone, Debug)]
pub struct CuspRelations {
    pub mu1: Scalar,
    pub rho1: Scalar,
    pub mu2: Scalar,
    pub rho2: Scalar,
    /// `mu1 = -lambda^(n-2) mu2`
    pub mu_relation: bool,
    /// `rho1 = lambda^(n-2) rho2`
    pub rho_relation: bool,
}

#[derive(Clone, Debug)]
pub struct TraceEigenvalues {
    pub lambda: Scalar,
    pub first: (Scalar, Scalar),
    pub second: (Scalar, Scalar),
    /// Ratio second/first eigenvalue at each end, when defined.
    pub r1: Option<Scalar>,
    pub r2: Option<Scalar>,
    pub opposite: bool,
    pub ends: [EndClass; 2],
    pub cusp: Option<CuspRelations>,
}

fn lambda_power(lambda: &Scalar, k: i64) -> Result<Scalar, ProjectiveError> {
    let p = lambda.pow(k.unsigned_abs() as u32);
    Ok(if k < 0 { p.inv()? } else { p })
}

fn ratio_of(pair: &(Scalar, Scalar)) -> Result<Option<Scalar>, ProjectiveError> {
    if pair.0.zero_test()? || pair.1.zero_test()? {
        return Ok(None);
    }
    Ok(Some(pair.1.div(&pair.0)?))
}

fn end_class(r: &Option<Scalar>) -> Result<EndClass, ProjectiveError> {
    Ok(match r {
        None => EndClass::SaddleNode,
        Some(r) => match r.rational_value()? {
            Some(q) if q > num_rational::BigRational::from_integer(0.into()) => EndClass::Resonant,
            _ => EndClass::Simple,
        },
    })
}

/// Eigenvalues at the two trace points where the curve of parameter
/// `lambda` meets the divisor after pre-reduction.
pub fn trace_eigenvalue_ratios(
    f: &ProjectiveFoliation,
    case: &CaseClass,
    lambda: &Scalar,
) -> Result<TraceEigenvalues, ProjectiveError> {
    let family = Family::of(case)?;
    let ctx = lambda.context().cloned().or_else(|| f.context());
    let g = standardized(f, &family).in_context(ctx.as_ref());
    let lambda = lambda.in_context(ctx.as_ref());
    let step = family.step();
    let (first, second, cusp) = match family {
        Family::Lines { .. } => {
            let a0 = restrict(g.coeff(0), step);
            let a2 = restrict(g.coeff(2), step);
            // A0 = (X2 - lambda X1) * cofactor, so the cofactor at (1, lambda) is A0'(lambda)
            let cofactor = &a0.derivative().eval(&lambda) * &lambda;
            let transversal = -&a2.eval(&lambda);
            (
                (cofactor.clone(), transversal.clone()),
                (-&cofactor, transversal),
                None,
            )
        }
        Family::Cusps {
            reduced_degree: d,
            reduced_offset: a,
            family_size: n,
            ..
        } => {
            let e = cusp_resolution_exponents(a, d);
            let r = |i: usize| restrict(g.coeff(i), step);
            let rr = |i: usize| restrict_reversed(g.coeff(i), step, n);
            let defining = scaled(&r(0), a).add(&scaled(&r(2), d));
            let mu1 = -&scaled(&r(0), e.beta)
                .add(&scaled(&r(2), e.delta))
                .eval(&lambda)
                .div(&lambda)?;
            let rho1 = defining.derivative().eval(&lambda);
            let inv = lambda.inv()?;
            let mu2 = -&(&scaled(&rr(0), e.delta - e.beta)
                .add(&scaled(&rr(1), e.delta))
                .eval(&inv)
                * &lambda);
            let reversed = scaled(&rr(0), d - a).add(&scaled(&rr(1), d));
            let rho2 = reversed.derivative().eval(&inv);
            let factor = lambda_power(&lambda, n - 2)?;
            let mu_relation = (&mu1 + &(&factor * &mu2)).zero_test()?;
            let rho_relation = (&rho1 - &(&factor * &rho2)).zero_test()?;
            let relations = CuspRelations {
                mu1: mu1.clone(),
                rho1: rho1.clone(),
                mu2: mu2.clone(),
                rho2: rho2.clone(),
                mu_relation,
                rho_relation,
            };
            ((mu1, rho1), (mu2, rho2), Some(relations))
        }
    };
    let r1 = ratio_of(&first)?;
    let r2 = ratio_of(&second)?;
    let opposite = match (&r1, &r2) {
        (Some(x), Some(y)) => (x + y).zero_test()?,
        _ => false,
    };
    let ends = [end_class(&r1)?, end_class(&r2)?];
    Ok(TraceEigenvalues {
        lambda,
        first,
        second,
        r1,
        r2,
        opposite,
        ends,
        cusp,
    })
}

/// Case C reduced to case B by the monomial map
/// `Y0 = X0^d, Y1 = X1^(d-a) X2^a, Y2 = X2^d` (reduced exponents), in the
/// standardized coordinates.
pub fn pullback_reduction(
    f: &ProjectiveFoliation,
    case: &CaseClass,
) -> Result<ProjectiveFoliation, ProjectiveError> {
    let (d, a) = match Family::of(case)? {
        Family::Cusps {
            reduced_degree,
            reduced_offset,
            ..
        } => (reduced_degree, reduced_offset),
        Family::Lines { .. } => {
            return Err(ProjectiveError::WrongCase {
                expected: "C",
                found: "B".into(),
            })
        }
    };
    let g = f.permuted(case.perm());
    let (di, ai) = (d as i32, a as i32);
    let to_uv =
        |p: &SparsePoly| p.map_exponents(3, |e| Exponent([e.get(0) / di, e.get(2) / ai, 0]));
    let [a0, a1, a2] = g.coeffs().clone().map(|p| to_uv(&p));
    let b0 = a0.scale(&Scalar::int(d - a));
    let b1 = a1.scale(&Scalar::int(d));
    let b2 = &a2.scale(&Scalar::int(d - a)) - &a1.scale(&Scalar::int(a));
    ProjectiveFoliation::validate(b0, b1, b2)
}

/// Case of the pull-back foliation, for cross-checks.
pub fn pullback_case(
    f: &ProjectiveFoliation,
    case: &CaseClass,
) -> Result<CaseClass, ProjectiveError> {
    Ok(classify_case(&homogeneous_polygon(&pullback_reduction(
        f, case,
    )?)))
}
