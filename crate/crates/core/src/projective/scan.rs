//! Global scans: Newton non-degeneracy at every point of the divisor and in
//! the torus, saddle-node audit and the toric-type check.

use std::fmt;

use crate::algebra::{adjoin_roots, branches, resultant, Order, Scalar, SparsePoly};
use crate::blowup::{ch_audit, follow_resonance, pre_reduce, ChartStep, PreReductionOutcome};
use crate::local::{
    corner_newton_polygon, divisor_trace_scan, side_nondegenerate, PointClass, TracePoint,
};
use crate::polytope::Side;

use super::{others, ProjectiveError, ProjectiveFoliation, VARIABLES};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NndWitness {
    DegenerateSide {
        corner: usize,
        side: Side,
    },
    TracePoint {
        line: usize,
        coordinate: Scalar,
        class: String,
    },
    TorusSingularity {
        abscissa: Scalar,
    },
}

impl fmt::Display for NndWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NndWitness::DegenerateSide { corner, side } => {
                write!(f, "degenerate side {side} at O{corner}")
            }
            NndWitness::TracePoint {
                line,
                coordinate,
                class,
            } => {
                write!(
                    f,
                    "{class} point on {}=0 at coordinate {coordinate}",
                    VARIABLES[*line]
                )
            }
            NndWitness::TorusSingularity { abscissa } => {
                write!(f, "singular point in the torus with X1/X0 = {abscissa}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct NndReport {
    pub verdict: bool,
    pub witness: Option<NndWitness>,
}

/// Chart used to scan the open part of `X_line = 0`, and the label of the
/// line in that chart.
fn line_chart(line: usize) -> (usize, usize) {
    let chart = if line == 0 { 1 } else { 0 };
    let (j, _) = others(chart);
    (chart, if j == line { 1 } else { 2 })
}

pub(super) fn open_line_points(
    f: &ProjectiveFoliation,
    line: usize,
) -> Result<Vec<TracePoint>, ProjectiveError> {
    let (chart, label) = line_chart(line);
    Ok(divisor_trace_scan(&f.chart_germ(chart), label)?)
}

fn bad_trace(tp: &TracePoint) -> bool {
    tp.class.is_singular() && tp.model.adapted_multiplicity() != Order::Finite(0)
}

pub fn newton_nondegenerate_everywhere(
    f: &ProjectiveFoliation,
) -> Result<NndReport, ProjectiveError> {
    let fail = |w| {
        Ok(NndReport {
            verdict: false,
            witness: Some(w),
        })
    };
    for corner in 0..3 {
        let germ = f.chart_germ(corner);
        for side in corner_newton_polygon(&germ)?.compact_sides() {
            if !side_nondegenerate(&germ, &side)? {
                return fail(NndWitness::DegenerateSide { corner, side });
            }
        }
    }
    for line in 0..3 {
        if let Some(tp) = open_line_points(f, line)?.into_iter().find(bad_trace) {
            return fail(NndWitness::TracePoint {
                line,
                coordinate: tp.coordinate,
                class: tp.class.label().into(),
            });
        }
    }
    let germ = f.chart_germ(0);
    if let Some(abscissa) = torus_common_zero(germ.a1(), germ.a2())? {
        return fail(NndWitness::TorusSingularity { abscissa });
    }
    Ok(NndReport {
        verdict: true,
        witness: None,
    })
}

/// A common zero of two bivariate polynomials with both coordinates nonzero,
/// reported by its first coordinate.
pub fn torus_common_zero(
    a1: &SparsePoly,
    a2: &SparsePoly,
) -> Result<Option<Scalar>, ProjectiveError> {
    let (_, p) = a1.strip_monomial();
    let (_, q) = a2.strip_monomial();
    if p.is_zero() || q.is_zero() {
        let other = if p.is_zero() { &q } else { &p };
        if other.is_constant() {
            return Ok(None);
        }
        // a polynomial with two or more terms vanishes somewhere in the torus
        let x1 = other.terms().map(|(e, _)| e.get(0)).collect::<Vec<_>>();
        let abscissa = if x1.iter().all(|v| *v == x1[0]) {
            Scalar::int(1)
        } else {
            Scalar::int(0)
        };
        return Ok(Some(abscissa));
    }
    if p.is_constant() || q.is_constant() {
        return Ok(None);
    }
    let ctx = crate::algebra::common_context([&p, &q]);
    let res = resultant(&p, &q, 1)?;
    let (_, res) = res.strip_x();
    let res = crate::algebra::upoly_normalize(&res)?;
    if res.is_constant() {
        return Ok(None);
    }
    let res = res.squarefree_part()?;
    for root in adjoin_roots(&res, ctx.as_ref())? {
        let found = branches(root.ctx.clone(), |c| -> Result<bool, ProjectiveError> {
            let r = root.root.in_context(c);
            let pr = p.in_context(c).eval_var(0, &r)?.to_dense(1)?;
            let qr = q.in_context(c).eval_var(0, &r)?.to_dense(1)?;
            let pr = crate::algebra::upoly_normalize(&pr)?;
            let qr = crate::algebra::upoly_normalize(&qr)?;
            if pr.is_zero() || qr.is_zero() {
                let other = if pr.is_zero() { qr } else { pr };
                return Ok(other.is_zero() || !other.strip_x().1.is_constant());
            }
            let g = pr.gcd(&qr)?;
            Ok(!g.strip_x().1.is_constant())
        })?;
        if found.iter().any(|(_, hit)| *hit) {
            return Ok(Some(root.root));
        }
    }
    Ok(None)
}

/// Saddle-node audit over the whole plane and the toric-type check.
#[derive(Clone, Debug)]
pub struct ChScan {
    pub is_ch: bool,
    pub witnesses: Vec<String>,
    /// Every trace singular point, on the lines and over the corners, is simple.
    pub toric: bool,
    pub non_simple_traces: Vec<String>,
    pub reductions: Vec<PreReductionOutcome>,
}

pub fn ch_scan(f: &ProjectiveFoliation, max_depth: usize) -> Result<ChScan, ProjectiveError> {
    let mut witnesses = Vec::new();
    let mut non_simple_traces = Vec::new();
    let mut reductions = Vec::new();
    for corner in 0..3 {
        let outcome = pre_reduce(&f.chart_germ(corner), max_depth)?;
        for w in ch_audit(&outcome)?.witnesses {
            witnesses.push(format!("O{corner} {}: {}", w.path, w.kind));
        }
        for leaf in outcome.leaves() {
            if let ChartStep::TracePoint { coordinate, .. } = &leaf.step {
                if leaf.class.is_singular() && !matches!(leaf.class, PointClass::Simple { .. }) {
                    non_simple_traces.push(format!(
                        "O{corner} {} ({coordinate}): {}",
                        leaf.path, leaf.class
                    ));
                }
            }
        }
        reductions.push(outcome);
    }
    for (line, var) in VARIABLES.iter().enumerate() {
        for tp in open_line_points(f, line)? {
            let name = format!("{var}=0 at {}", tp.coordinate);
            match &tp.class {
                PointClass::SaddleNode { .. } => witnesses.push(format!("{name}: saddle-node")),
                PointClass::Presimple { .. } => {
                    for w in follow_resonance(&tp.model, &name)? {
                        witnesses.push(format!("{name}: {}", w.kind));
                    }
                }
                _ => {}
            }
            if tp.class.is_singular() && !matches!(tp.class, PointClass::Simple { .. }) {
                non_simple_traces.push(format!("{name}: {}", tp.class));
            }
        }
    }
    Ok(ChScan {
        is_ch: witnesses.is_empty(),
        witnesses,
        toric: non_simple_traces.is_empty(),
        non_simple_traces,
        reductions,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{constants, jouanolou, p3, sqrt2_instance};
    use super::*;
    use crate::blowup::DEFAULT_MAX_DEPTH;

    #[test]
    fn constants_are_nondegenerate() {
        let r = newton_nondegenerate_everywhere(&constants()).unwrap();
        assert!(r.verdict);
        let ch = ch_scan(&constants(), DEFAULT_MAX_DEPTH).unwrap();
        assert!(ch.is_ch && ch.toric);
    }

    #[test]
    fn jouanolou_has_witness() {
        let r = newton_nondegenerate_everywhere(&jouanolou()).unwrap();
        assert!(!r.verdict);
        assert!(r.witness.is_some());
    }

    #[test]
    fn quadratic_case_b_is_nondegenerate_and_toric() {
        let f = sqrt2_instance();
        assert!(newton_nondegenerate_everywhere(&f).unwrap().verdict);
        let ch = ch_scan(&f, DEFAULT_MAX_DEPTH).unwrap();
        assert!(ch.is_ch, "{:?}", ch.witnesses);
        assert!(ch.toric, "{:?}", ch.non_simple_traces);
    }

    #[test]
    fn pencil_is_only_weak_toric() {
        let f = ProjectiveFoliation::validate(
            p3(&[(0, 0, 1, 1), (0, 1, 0, -1)]),
            p3(&[(0, 1, 0, 1)]),
            p3(&[(0, 0, 1, -1)]),
        )
        .unwrap();
        assert!(newton_nondegenerate_everywhere(&f).unwrap().verdict);
        let ch = ch_scan(&f, DEFAULT_MAX_DEPTH).unwrap();
        assert!(ch.is_ch, "{:?}", ch.witnesses);
        assert!(!ch.toric);
    }

    #[test]
    fn torus_zero_detection() {
        let a = SparsePoly::from_ints2(&[(1, 0, 1), (0, 1, -1)]);
        let b = SparsePoly::from_ints2(&[(1, 0, 1), (0, 0, -1)]);
        assert_eq!(torus_common_zero(&a, &b).unwrap(), Some(Scalar::int(1)));
        let c = SparsePoly::from_ints2(&[(1, 0, 1)]);
        assert_eq!(torus_common_zero(&a, &c).unwrap(), None);
        let d = SparsePoly::from_ints2(&[(2, 0, 1), (0, 0, -2)]);
        let e = SparsePoly::from_ints2(&[(0, 1, 1), (1, 0, -1)]);
        assert!(torus_common_zero(&d, &e).unwrap().is_some());
    }
}
