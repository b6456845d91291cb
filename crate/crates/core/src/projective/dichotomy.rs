//! Rational first integral versus a finite list of invariant curves.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::{branches, Rat, Scalar, SparsePoly};
use crate::local::{classify_point, PointClass};

use super::families::render_upoly;
use super::scan::{ch_scan, newton_nondegenerate_everywhere, ChScan, NndReport};
use super::{
    candidate_curves, classify_case, homogeneous_polygon, inverse_perm, is_invariant_curve,
    lambda_set, trace_eigenvalue_ratios, CaseClass, EndClass, FamilyCurve, HomogeneousPolygon,
    LambdaSet, ProjectiveError, ProjectiveFoliation, TraceEigenvalues, VARIABLES,
};
use crate::local::Nature;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchStatus {
    Confirmed,
    Candidate,
}

/// An invariant curve with its invariance check.
#[derive(Clone, Debug, Serialize)]
pub struct CertifiedCurve {
    pub name: String,
    pub equation: String,
    /// Modulus of the residue ring the coefficients live in.
    pub field: Option<String>,
    pub invariant: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsolatedBranch {
    pub curve: String,
    pub point: String,
    pub coordinates: String,
    pub description: String,
    pub end: EndClass,
    pub status: BranchStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Monomial first integral `X0^e0 X1^e1 X2^e2`.
    I {
        exponents: [i64; 3],
        first_integral: String,
    },
    II {
        curves: Vec<String>,
    },
    WeakOnly {
        notes: Vec<String>,
    },
    NotApplicable {
        reason: String,
    },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::I { .. } => "I",
            Verdict::II { .. } => "II",
            Verdict::WeakOnly { .. } => "weak-only",
            Verdict::NotApplicable { .. } => "not-applicable",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::I { first_integral, .. } => {
                write!(f, "I: rational first integral {first_integral}")
            }
            Verdict::II { curves } => write!(f, "II: invariant curves {}", curves.join(", ")),
            Verdict::WeakOnly { notes } => write!(f, "weak toric type only: {}", notes.join("; ")),
            Verdict::NotApplicable { reason } => write!(f, "not applicable: {reason}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DichotomyReport {
    pub polygon: HomogeneousPolygon,
    pub case: CaseClass,
    pub nnd: NndReport,
    pub ch: Option<ChScan>,
    pub lambda: Option<LambdaSet>,
    pub family: Vec<FamilyCurve>,
    pub ends: Vec<TraceEigenvalues>,
    pub curves: Vec<CertifiedCurve>,
    pub branches: Vec<IsolatedBranch>,
    pub verdict: Verdict,
}

fn not_applicable(reason: impl Into<String>) -> Verdict {
    Verdict::NotApplicable {
        reason: reason.into(),
    }
}

pub fn dichotomy(
    f: &ProjectiveFoliation,
    max_depth: usize,
) -> Result<DichotomyReport, ProjectiveError> {
    let polygon = homogeneous_polygon(f);
    let case = classify_case(&polygon);
    let nnd = newton_nondegenerate_everywhere(f)?;
    let mut report = DichotomyReport {
        polygon,
        case: case.clone(),
        nnd: nnd.clone(),
        ch: None,
        lambda: None,
        family: Vec::new(),
        ends: Vec::new(),
        curves: Vec::new(),
        branches: Vec::new(),
        verdict: not_applicable(""),
    };
    if let Some(w) = &nnd.witness {
        report.verdict = not_applicable(format!("not Newton non-degenerate: {w}"));
        return Ok(report);
    }
    if let CaseClass::NotWtt { evidence } = &case {
        report.verdict = not_applicable(evidence.clone());
        return Ok(report);
    }
    let ch = ch_scan(f, max_depth)?;
    let (is_ch, toric) = (ch.is_ch, ch.toric);
    let ch_witness = ch.witnesses.first().cloned();
    let non_simple = ch.non_simple_traces.clone();
    report.ch = Some(ch);
    if !is_ch {
        report.verdict = not_applicable(format!(
            "not complex hyperbolic: {}",
            ch_witness.unwrap_or_default()
        ));
        return Ok(report);
    }
    report.curves = divisor_curves(f)?;
    if case == CaseClass::A {
        report.verdict = case_a(f, &report.curves)?;
        return Ok(report);
    }
    let lambdas = lambda_set(f, &case)?;
    let family = candidate_curves(&case, &lambdas)?;
    for member in &family {
        let ends = branches(member.ctx.clone(), |c| {
            trace_eigenvalue_ratios(&f.in_context(c), &case, &member.lambda.in_context(c))
        })?;
        for (_, t) in ends {
            report.branches.extend(end_branches(&case, member, &t));
            report.ends.push(t);
        }
        let fc = f.in_context(member.ctx.as_ref());
        report.curves.push(CertifiedCurve {
            name: curve_name(&case, &member.lambda),
            equation: member.curve.render(&VARIABLES),
            field: member.ctx.as_ref().map(|c| c.modulus().to_string()),
            invariant: is_invariant_curve(&fc, &member.curve.in_context(member.ctx.as_ref()))?,
        });
    }
    report.lambda = Some(lambdas);
    report.family = family;
    if toric {
        report.verdict = Verdict::II {
            curves: report.curves.iter().map(|c| c.name.clone()).collect(),
        };
    } else {
        report.branches.retain(|b| b.end == EndClass::Simple);
        let mut notes: Vec<String> = non_simple
            .iter()
            .map(|p| format!("non-simple trace point {p}"))
            .collect();
        notes.extend(report.branches.iter().map(|b| {
            format!(
                "isolated branch ({}, {}) at the simple end",
                b.curve, b.point
            )
        }));
        report.verdict = Verdict::WeakOnly { notes };
    }
    Ok(report)
}

fn divisor_curves(f: &ProjectiveFoliation) -> Result<Vec<CertifiedCurve>, ProjectiveError> {
    let mut out = Vec::new();
    for (i, nature) in f.natures().iter().enumerate() {
        if *nature == Nature::Invariant {
            let line = SparsePoly::var(3, i);
            out.push(CertifiedCurve {
                name: format!("{}=0", VARIABLES[i]),
                equation: VARIABLES[i].into(),
                field: None,
                invariant: is_invariant_curve(f, &line)?,
            });
        }
    }
    Ok(out)
}

fn case_a(f: &ProjectiveFoliation, divisor: &[CertifiedCurve]) -> Result<Verdict, ProjectiveError> {
    let mut resonant = false;
    for corner in 0..3 {
        for (_, class) in branches(f.context(), |c| {
            classify_point(&f.in_context(c).chart_germ(corner))
        })? {
            resonant |= matches!(class, PointClass::Presimple { .. });
        }
    }
    if !resonant {
        return Ok(Verdict::II {
            curves: divisor.iter().map(|c| c.name.clone()).collect(),
        });
    }
    let values: Vec<Scalar> = f.coeffs().iter().map(|p| p.constant_term()).collect();
    let pivot = values
        .iter()
        .find(|v| !v.is_zero())
        .ok_or(ProjectiveError::ZeroForm)?
        .clone();
    let mut scaled = Vec::new();
    for v in &values {
        let q = v.div(&pivot)?.rational_value()?;
        let Some(q) = q else {
            return Err(ProjectiveError::Algebra(
                crate::algebra::AlgebraError::Unsupported(
                    "resonant corner with irrational residues".into(),
                ),
            ));
        };
        scaled.push(q);
    }
    let exponents = integer_exponents(&scaled);
    Ok(Verdict::I {
        exponents,
        first_integral: render_monomial(&exponents),
    })
}

/// Coprime integer vector proportional to `values`, first nonzero entry
/// positive.
pub fn integer_exponents(values: &[Rat]) -> [i64; 3] {
    let lcm = values
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<num_bigint::BigInt> = values
        .iter()
        .map(|v| (v * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, v| acc.gcd(v));
    let sign = if ints
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_negative())
    {
        -1
    } else {
        1
    };
    std::array::from_fn(|i| {
        let v = &ints[i] / &g * sign;
        i64::try_from(v).expect("exponent fits in i64")
    })
}

pub fn render_monomial(exponents: &[i64; 3]) -> String {
    let factors: Vec<String> = exponents
        .iter()
        .enumerate()
        .filter(|(_, e)| **e != 0)
        .map(|(i, e)| {
            if *e == 1 {
                VARIABLES[i].to_string()
            } else {
                format!("{}^{e}", VARIABLES[i])
            }
        })
        .collect();
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join("*")
    }
}

fn curve_name(case: &CaseClass, lambda: &Scalar) -> String {
    match case {
        CaseClass::C { .. } => format!("C_{lambda}"),
        _ => format!("l_{lambda}"),
    }
}

fn point_name(index: usize) -> String {
    format!("O{index}")
}

/// Homogeneous coordinates of a standardized point in the original ones.
fn original_coordinates(case: &CaseClass, standard: [Scalar; 3]) -> String {
    let perm = case.perm();
    let coords: Vec<String> = (0..3).map(|i| standard[perm[i]].to_string()).collect();
    format!("[{}]", coords.join(":"))
}

fn end_branches(
    case: &CaseClass,
    member: &FamilyCurve,
    t: &TraceEigenvalues,
) -> Vec<IsolatedBranch> {
    let inv = inverse_perm(case.perm());
    let name = curve_name(case, &member.lambda);
    let zero = || Scalar::int(0);
    let one = || Scalar::int(1);
    let ends: [(String, String, String); 2] = match case {
        CaseClass::C {
            reduced_degree: d,
            reduced_offset: a,
            ..
        } => [
            (
                point_name(inv[1]),
                original_coordinates(case, [zero(), one(), zero()]),
                format!("cusp of type ({d}, {a})"),
            ),
            (
                point_name(inv[2]),
                original_coordinates(case, [zero(), zero(), one()]),
                format!("cusp of type ({d}, {})", d - a),
            ),
        ],
        _ => [
            (
                format!("P_{}", member.lambda),
                original_coordinates(case, [zero(), one(), t.lambda.clone()]),
                "smooth branch transverse to the divisor".into(),
            ),
            (
                point_name(inv[0]),
                original_coordinates(case, [one(), zero(), zero()]),
                "line through the corner".into(),
            ),
        ],
    };
    let ratios = [&t.r1, &t.r2];
    ends.into_iter()
        .zip(t.ends)
        .zip(ratios)
        .map(|(((point, coordinates, shape), end), r)| IsolatedBranch {
            curve: name.clone(),
            point,
            coordinates,
            description: match r {
                Some(r) => format!("{shape}; eigenvalue ratio {r} after pre-reduction"),
                None => format!("{shape}; zero eigenvalue after pre-reduction"),
            },
            end,
            status: if end == EndClass::Simple {
                BranchStatus::Confirmed
            } else {
                BranchStatus::Candidate
            },
        })
        .collect()
}

/// Rendering helper for a lambda set modulus.
pub fn lambda_modulus(l: &LambdaSet) -> String {
    render_upoly(&l.modulus, "lambda")
}
