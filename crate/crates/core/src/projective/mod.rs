//! Logarithmic foliations on the projective plane: homogeneous generators,
//! affine charts, the homogeneous polygon and its case split.

mod dichotomy;
mod families;
mod scan;

pub use dichotomy::{
    dichotomy, integer_exponents, lambda_modulus, render_monomial, BranchStatus, CertifiedCurve,
    DichotomyReport, IsolatedBranch, Verdict,
};
pub use families::{
    candidate_curves, cusp_resolution_exponents, is_invariant_curve, lambda_set, pullback_case,
    pullback_reduction, trace_eigenvalue_ratios, CuspExponents, CuspRelations, EndClass,
    FamilyCurve, LambdaSet, TraceEigenvalues,
};
pub use scan::{
    ch_scan, newton_nondegenerate_everywhere, torus_common_zero, ChScan, NndReport, NndWitness,
};

use std::fmt;

use thiserror::Error;

use crate::algebra::{
    common_context, has_common_factor_homogeneous, AlgebraError, AlgebraicContext, Exponent,
    SparsePoly, Split, SplitAware,
};
use crate::blowup::BlowupError;
use crate::local::{AdaptedGenerator, ComponentTag, LocalError, Nature};
use crate::polytope::{LatticePoint, Polytope2};

pub const VARIABLES: [&str; 3] = ["X0", "X1", "X2"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectiveError {
    #[error("coefficients must be polynomials in X0, X1, X2")]
    Arity,
    #[error("A{0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("coefficients have different degrees")]
    DegreeMismatch,
    #[error("A0 + A1 + A2 is not zero")]
    NonzeroSum,
    #[error("all coefficients vanish")]
    ZeroForm,
    #[error("coefficients share a nonconstant factor")]
    CommonFactor,
    #[error("X0*f0 + X1*f1 + X2*f2 is not zero")]
    EulerRelation,
    #[error("operation needs case {expected}, found {found}")]
    WrongCase {
        expected: &'static str,
        found: String,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
}

impl From<Split> for ProjectiveError {
    fn from(s: Split) -> Self {
        ProjectiveError::Algebra(s.into())
    }
}

impl SplitAware for ProjectiveError {
    fn split(&self) -> Option<&Split> {
        match self {
            ProjectiveError::Algebra(e) => e.split(),
            ProjectiveError::Local(e) => e.split(),
            ProjectiveError::Blowup(e) => e.split(),
            _ => None,
        }
    }
}

/// `A0 dX0/X0 + A1 dX1/X1 + A2 dX2/X2` with `A0 + A1 + A2 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveFoliation {
    coeffs: [SparsePoly; 3],
    degree: i32,
    natures: [Nature; 3],
}

fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

impl ProjectiveFoliation {
    pub fn validate(
        a0: SparsePoly,
        a1: SparsePoly,
        a2: SparsePoly,
    ) -> Result<Self, ProjectiveError> {
        let coeffs = [a0, a1, a2];
        if coeffs.iter().any(|p| p.arity() != 3 || p.is_laurent()) {
            return Err(ProjectiveError::Arity);
        }
        let mut degree = None;
        for (i, p) in coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let d = p
                .homogeneous_degree()
                .ok_or(ProjectiveError::NotHomogeneous(i))?;
            if degree.is_some_and(|e| e != d) {
                return Err(ProjectiveError::DegreeMismatch);
            }
            degree = Some(d);
        }
        let degree = degree.ok_or(ProjectiveError::ZeroForm)?;
        if !(&(&coeffs[0] + &coeffs[1]) + &coeffs[2]).is_zero() {
            return Err(ProjectiveError::NonzeroSum);
        }
        // with a zero sum the gcd of the three equals the gcd of any two
        let (f, g) = match coeffs.iter().position(SparsePoly::is_zero) {
            Some(z) => {
                let (j, _) = others(z);
                (&coeffs[j], &coeffs[j])
            }
            None => (&coeffs[1], &coeffs[2]),
        };
        let common = if std::ptr::eq(f, g) {
            !f.is_constant()
        } else {
            has_common_factor_homogeneous(f, g)?
        };
        if common {
            return Err(ProjectiveError::CommonFactor);
        }
        let natures = std::array::from_fn(|i| {
            if coeffs[i].min_degree_in(i).is_none_or(|m| m > 0) {
                Nature::Dicritical
            } else {
                Nature::Invariant
            }
        });
        Ok(ProjectiveFoliation {
            coeffs,
            degree,
            natures,
        })
    }

    /// From a holomorphic form `f0 dX0 + f1 dX1 + f2 dX2` satisfying the
    /// Euler relation.
    pub fn from_holomorphic(
        f0: SparsePoly,
        f1: SparsePoly,
        f2: SparsePoly,
    ) -> Result<Self, ProjectiveError> {
        let f = [f0, f1, f2];
        if f.iter().any(|p| p.arity() != 3 || p.is_laurent()) {
            return Err(ProjectiveError::Arity);
        }
        let lifted: Vec<SparsePoly> = f
            .iter()
            .enumerate()
            .map(|(i, p)| &SparsePoly::var(3, i) * p)
            .collect();
        if !(&(&lifted[0] + &lifted[1]) + &lifted[2]).is_zero() {
            return Err(ProjectiveError::EulerRelation);
        }
        let content = lifted
            .iter()
            .filter(|p| !p.is_zero())
            .map(SparsePoly::monomial_content)
            .reduce(|a, b| Exponent(std::array::from_fn(|k| a.0[k].min(b.0[k]))))
            .ok_or(ProjectiveError::ZeroForm)?;
        let strip = Exponent(content.0.map(|v| -v));
        let [a0, a1, a2]: [SparsePoly; 3] = lifted
            .iter()
            .map(|p| p.shift(&strip))
            .collect::<Vec<_>>()
            .try_into()
            .expect("three");
        Self::validate(a0, a1, a2)
    }

    pub fn coeffs(&self) -> &[SparsePoly; 3] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &SparsePoly {
        &self.coeffs[i]
    }

    /// Common degree of the coefficients.
    pub fn d_f(&self) -> i32 {
        self.degree
    }

    pub fn natures(&self) -> [Nature; 3] {
        self.natures
    }

    /// Degree of the foliation: `d_F + 1` minus the number of dicritical lines.
    pub fn foliation_degree(&self) -> i32 {
        self.degree + 1
            - self
                .natures
                .iter()
                .filter(|n| **n == Nature::Dicritical)
                .count() as i32
    }

    pub fn context(&self) -> Option<AlgebraicContext> {
        common_context(self.coeffs.iter())
    }

    pub fn in_context(&self, ctx: Option<&AlgebraicContext>) -> Self {
        ProjectiveFoliation {
            coeffs: self.coeffs.clone().map(|p| p.in_context(ctx)),
            degree: self.degree,
            natures: self.natures,
        }
    }

    /// Renames `X_i` to `X_{perm[i]}`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let mut coeffs: [SparsePoly; 3] = std::array::from_fn(|_| SparsePoly::zero(3));
        let mut natures = self.natures;
        for i in 0..3 {
            coeffs[perm[i]] = self.coeffs[i].permute(&perm);
            natures[perm[i]] = self.natures[i];
        }
        ProjectiveFoliation {
            coeffs,
            degree: self.degree,
            natures,
        }
    }

    /// Adapted generator at the origin `O_i` of the chart `X_i != 0`, in the
    /// coordinates `X_j/X_i, X_k/X_i` with `j < k`.
    pub fn chart_germ(&self, i: usize) -> AdaptedGenerator {
        let (j, k) = others(i);
        let tags = vec![
            ComponentTag::new(VARIABLES[j], crate::algebra::rat(1)),
            ComponentTag::new(VARIABLES[k], crate::algebra::rat(0)),
        ];
        AdaptedGenerator::assemble(
            2,
            self.coeffs[j].dehomogenize(i),
            self.coeffs[k].dehomogenize(i),
            tags,
        )
    }

    pub fn render(&self) -> [String; 3] {
        self.coeffs.clone().map(|p| p.render(&VARIABLES))
    }
}

impl fmt::Display for ProjectiveFoliation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a0, a1, a2] = self.render();
        write!(f, "A0 = {a0}; A1 = {a1}; A2 = {a2}")
    }
}

pub type Point3 = [i64; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HullShape {
    Point(Point3),
    Segment(Point3, Point3),
    Fat,
}

impl HullShape {
    pub fn label(&self) -> &'static str {
        match self {
            HullShape::Point(_) => "point",
            HullShape::Segment(..) => "segment",
            HullShape::Fat => "fat",
        }
    }
}

#[derive(Clone, Debug)]
pub struct HomogeneousPolygon {
    pub degree: i64,
    /// Union of the supports of the three coefficients, sorted.
    pub points: Vec<Point3>,
    pub shape: HullShape,
    /// Projection dropping coordinate `i`, for each chart.
    pub charts: [Polytope2; 3],
}

fn drop_coord(p: Point3, i: usize) -> LatticePoint {
    let (j, k) = others(i);
    LatticePoint::new(p[j], p[k])
}

pub fn homogeneous_polygon(f: &ProjectiveFoliation) -> HomogeneousPolygon {
    let degree = i64::from(f.degree);
    let mut points: Vec<Point3> = f
        .coeffs
        .iter()
        .flat_map(|p| p.support())
        .map(|e| [0, 1, 2].map(|k| i64::from(e.get(k))))
        .collect();
    points.sort();
    points.dedup();
    let charts: [Polytope2; 3] =
        std::array::from_fn(|i| Polytope2::hull(points.iter().map(|&p| drop_coord(p, i))));
    let lift = |v: LatticePoint| [degree - v.x - v.y, v.x, v.y];
    let shape = match charts[0].dimension() {
        Some(0) => HullShape::Point(lift(charts[0].vertices()[0])),
        Some(1) => {
            let mut ends = [lift(charts[0].vertices()[0]), lift(charts[0].vertices()[1])];
            ends.sort();
            ends.reverse();
            HullShape::Segment(ends[0], ends[1])
        }
        _ => HullShape::Fat,
    };
    HomogeneousPolygon {
        degree,
        points,
        shape,
        charts,
    }
}

/// Position of the homogeneous polygon. `perm` renames `X_i` to `X_{perm[i]}`
/// and brings the segment into its standard position: from `(0,d,0)` to
/// `(0,0,d)` for case B, from `(d,0,0)` to `(0,d-a,a)` for case C.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseClass {
    A,
    B {
        perm: [usize; 3],
        degree: i64,
    },
    C {
        perm: [usize; 3],
        degree: i64,
        offset: i64,
        reduced_degree: i64,
        reduced_offset: i64,
        family_size: i64,
    },
    NotWtt {
        evidence: String,
    },
}

impl CaseClass {
    pub fn label(&self) -> &'static str {
        match self {
            CaseClass::A => "A",
            CaseClass::B { .. } => "B",
            CaseClass::C { .. } => "C",
            CaseClass::NotWtt { .. } => "not-wtt",
        }
    }

    pub fn perm(&self) -> [usize; 3] {
        match self {
            CaseClass::B { perm, .. } | CaseClass::C { perm, .. } => *perm,
            _ => [0, 1, 2],
        }
    }
}

impl fmt::Display for CaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseClass::A => f.write_str("A"),
            CaseClass::B { perm, degree } => write!(f, "B (d = {degree}, permutation {perm:?})"),
            CaseClass::C { perm, degree, offset, reduced_degree, reduced_offset, family_size } => write!(
                f,
                "C (d = {degree}, a = {offset}, reduced ({reduced_degree}, {reduced_offset}), n = {family_size}, permutation {perm:?})"
            ),
            CaseClass::NotWtt { evidence } => write!(f, "not of weak toric type: {evidence}"),
        }
    }
}

/// Permutation sending `special` to 0 and keeping the order of the other two.
fn perm_to_front(special: usize) -> [usize; 3] {
    let (j, k) = others(special);
    let mut perm = [0; 3];
    perm[special] = 0;
    perm[j] = 1;
    perm[k] = 2;
    perm
}

pub fn inverse_perm(perm: [usize; 3]) -> [usize; 3] {
    let mut inv = [0; 3];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

pub fn classify_case(polygon: &HomogeneousPolygon) -> CaseClass {
    let d = polygon.degree;
    match &polygon.shape {
        HullShape::Point(_) => CaseClass::A,
        HullShape::Fat => CaseClass::NotWtt {
            evidence: "the homogeneous polygon has positive area".into(),
        },
        HullShape::Segment(v, w) => {
            for i in 0..3 {
                let (j, k) = others(i);
                if v[i] == 0 && w[i] == 0 {
                    let ends = [(v[j], v[k]), (w[j], w[k])];
                    if ends.contains(&(d, 0)) && ends.contains(&(0, d)) {
                        return CaseClass::B {
                            perm: perm_to_front(i),
                            degree: d,
                        };
                    }
                }
                for (apex, other) in [(v, w), (w, v)] {
                    if apex[i] == d && other[i] == 0 && other[j] > 0 && other[k] > 0 {
                        let a = other[k];
                        let n = gcd(d, a);
                        return CaseClass::C {
                            perm: perm_to_front(i),
                            degree: d,
                            offset: a,
                            reduced_degree: d / n,
                            reduced_offset: a / n,
                            family_size: n,
                        };
                    }
                }
            }
            CaseClass::NotWtt {
                evidence: format!("segment {v:?} -- {w:?} is in neither standard position"),
            }
        }
    }
}
