//! Point blow-ups of adapted generators, the combinatorial pre-reduction
//! driver and the saddle-node audit of its leaves.

use std::fmt;

use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::algebra::{
    branches, rat, AlgebraError, QPoly, Rat, Scalar, SparsePoly, Split, SplitAware,
};
use crate::local::{
    classify_point, corner_newton_polygon, divisor_trace_scan, trace_model, AdaptedGenerator,
    ComponentTag, LocalError, Nature, PointClass, TracePoint,
};
use crate::polytope::{LatticePoint, Side};

pub const DEFAULT_MAX_DEPTH: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlowupError {
    #[error("expected a germ with {expected} divisor components, found {found}")]
    WrongComponentCount { expected: usize, found: usize },
    #[error("center at the corner; blow up the corner instead")]
    CenterAtCorner,
    #[error(
        "a side of slope -1 has no transform: it is replaced by points of the exceptional divisor"
    )]
    SlopeMinusOne,
    #[error("side of slope {slope} is not visible in chart {chart}")]
    WrongChart { slope: Rat, chart: Chart },
    #[error(transparent)]
    Local(#[from] LocalError),
}

impl From<Split> for BlowupError {
    fn from(s: Split) -> Self {
        BlowupError::Local(s.into())
    }
}

impl From<AlgebraError> for BlowupError {
    fn from(e: AlgebraError) -> Self {
        BlowupError::Local(e.into())
    }
}

impl SplitAware for BlowupError {
    fn split(&self) -> Option<&Split> {
        match self {
            BlowupError::Local(e) => e.split(),
            _ => None,
        }
    }
}

/// The two affine charts of a point blow-up. Chart zero is
/// `x1 = x1', x2 = x1' x2'`; chart infinity is `x1 = x1'' x2'', x2 = x2''`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chart {
    Zero,
    Infinity,
}

impl Chart {
    /// Exponent matrix: row `k` gives the exponents of `x_k` in the new coordinates.
    pub fn matrix(self) -> [[i64; 2]; 2] {
        match self {
            Chart::Zero => [[1, 0], [1, 1]],
            Chart::Infinity => [[1, 1], [0, 1]],
        }
    }

    fn substitution_matrix(self) -> [[i32; 3]; 3] {
        let m = self.matrix();
        let mut out = [[0i32; 3]; 3];
        for (row, src) in out.iter_mut().zip(m) {
            row[0] = src[0] as i32;
            row[1] = src[1] as i32;
        }
        out
    }

    pub fn substitution(self) -> &'static str {
        match self {
            Chart::Zero => "x1 = x1', x2 = x1'*x2'",
            Chart::Infinity => "x1 = x1''*x2'', x2 = x2''",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Chart::Zero => "0",
            Chart::Infinity => "inf",
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Divides both polynomials by the largest common power of `x_var`.
fn strip_common_power(p1: SparsePoly, p2: SparsePoly, var: usize) -> (u32, SparsePoly, SparsePoly) {
    let k = [&p1, &p2]
        .iter()
        .filter_map(|p| p.min_degree_in(var))
        .min()
        .unwrap_or(0)
        .max(0);
    let mut e = crate::algebra::Exponent::default();
    e.0[var] = -k;
    (k as u32, p1.shift(&e), p2.shift(&e))
}

/// Result of blowing up one point.
#[derive(Clone, Debug)]
pub struct PointBlowup {
    /// Power of the exceptional equation removed from the pulled back form.
    pub multiplicity: u32,
    pub exceptional: Nature,
    /// Germ at the origin of chart zero.
    pub chart0: AdaptedGenerator,
    /// Corner at the origin of chart infinity.
    pub chart_inf: AdaptedGenerator,
    /// Singular points of the exceptional divisor visible in chart zero,
    /// other than a corner at its origin.
    pub trace_points: Vec<TracePoint>,
}

impl PointBlowup {
    /// Every point of the exceptional divisor that is not regular with normal crossings.
    pub fn singular_classes(&self) -> Result<Vec<PointClass>, BlowupError> {
        let mut out = Vec::new();
        if self.chart0.e() == 2 {
            out.push(classify_point(&self.chart0)?);
        }
        out.push(classify_point(&self.chart_inf)?);
        out.extend(self.trace_points.iter().map(|t| t.class.clone()));
        Ok(out.into_iter().filter(PointClass::is_singular).collect())
    }
}

fn midpoint(a: &Rat, b: &Rat) -> Rat {
    (a + b) / rat(2)
}

pub fn blowup_corner(g: &AdaptedGenerator) -> Result<PointBlowup, BlowupError> {
    blowup_corner_named(g, "D")
}

/// Blows up a corner; the new component is ordered between the two old ones.
pub fn blowup_corner_named(g: &AdaptedGenerator, name: &str) -> Result<PointBlowup, BlowupError> {
    if g.e() != 2 {
        return Err(BlowupError::WrongComponentCount {
            expected: 2,
            found: g.e(),
        });
    }
    let tags = g.tags();
    let exceptional = ComponentTag::new(name, midpoint(&tags[0].order_rank, &tags[1].order_rank));
    let sum = g.a1() + g.a2();

    let m0 = Chart::Zero.substitution_matrix();
    let (multiplicity, b1, b2) = strip_common_power(
        sum.monomial_substitution(&m0),
        g.a2().monomial_substitution(&m0),
        0,
    );
    let chart0 = AdaptedGenerator::assemble(2, b1, b2, vec![exceptional.clone(), tags[1].clone()]);

    let mi = Chart::Infinity.substitution_matrix();
    let (_, c1, c2) = strip_common_power(
        g.a1().monomial_substitution(&mi),
        sum.monomial_substitution(&mi),
        1,
    );
    let chart_inf = AdaptedGenerator::assemble(2, c1, c2, vec![tags[0].clone(), exceptional]);

    let trace_points = divisor_trace_scan(&chart0, 1)?;
    Ok(PointBlowup {
        multiplicity,
        exceptional: chart0.components()[0].nature,
        chart0,
        chart_inf,
        trace_points,
    })
}

/// Blows up the point `(0, center)` of the component `x1 = 0`. For a corner
/// germ the center must differ from the corner itself.
pub fn blowup_trace(g: &AdaptedGenerator, center: &Scalar) -> Result<PointBlowup, BlowupError> {
    blowup_trace_named(g, center, "D")
}

pub fn blowup_trace_named(
    g: &AdaptedGenerator,
    center: &Scalar,
    name: &str,
) -> Result<PointBlowup, BlowupError> {
    let model = match g.e() {
        2 if center.zero_test()? => return Err(BlowupError::CenterAtCorner),
        2 => trace_model(g),
        1 => g.clone(),
        found => return Err(BlowupError::WrongComponentCount { expected: 1, found }),
    };
    let ctx = crate::algebra::common_context([model.a1(), model.a2()])
        .or_else(|| center.context().cloned());
    let a1 = model.a1().in_context(ctx.as_ref()).translate(1, center)?;
    let a2 = model.a2().in_context(ctx.as_ref()).translate(1, center)?;
    let x1 = SparsePoly::var(2, 0);
    let x2 = SparsePoly::var(2, 1);
    let tag = model.tags().remove(0);
    let exceptional = ComponentTag::new(name, &tag.order_rank + rat(1));
    let log_sum = &a1 + &(&x2 * &a2);

    let m0 = Chart::Zero.substitution_matrix();
    let (multiplicity, b1, b2) = strip_common_power(
        log_sum.monomial_substitution(&m0),
        (&x1 * &a2).monomial_substitution(&m0),
        0,
    );
    let chart0 = AdaptedGenerator::assemble(1, b1, b2, vec![exceptional.clone()]);

    let mi = Chart::Infinity.substitution_matrix();
    let (_, c1, c2) = strip_common_power(
        a1.monomial_substitution(&mi),
        log_sum.monomial_substitution(&mi),
        1,
    );
    let chart_inf = AdaptedGenerator::assemble(2, c1, c2, vec![tag, exceptional]);

    let trace_points = divisor_trace_scan(&chart0, 1)?;
    Ok(PointBlowup {
        multiplicity,
        exceptional: chart0.components()[0].nature,
        chart0,
        chart_inf,
        trace_points,
    })
}

/// Image of a compact side of a corner Newton polygon of order `d` in a chart
/// of the blow-up, after removing the exceptional factor.
pub fn side_transform(side: &Side, chart: Chart, d: i64) -> Result<Side, BlowupError> {
    let slope = side.slope();
    let minus_one = rat(-1);
    if slope == minus_one {
        return Err(BlowupError::SlopeMinusOne);
    }
    let visible = match chart {
        Chart::Zero => slope > minus_one,
        Chart::Infinity => slope < minus_one,
    };
    if !visible {
        return Err(BlowupError::WrongChart { slope, chart });
    }
    let map = |p: LatticePoint| match chart {
        Chart::Zero => LatticePoint::new(p.x + p.y - d, p.y),
        Chart::Infinity => LatticePoint::new(p.x, p.x + p.y - d),
    };
    Ok(Side::new(map(side.start), map(side.end)))
}

/// How a node of the blow-up tree was reached from its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChartStep {
    Root,
    Corner(Chart),
    /// Point `(0, coordinate)` of the parent's exceptional divisor in chart zero.
    TracePoint {
        coordinate: Scalar,
        minimal: QPoly,
    },
}

impl fmt::Display for ChartStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartStep::Root => f.write_str("root"),
            ChartStep::Corner(c) => write!(f, "chart {c}: {}", c.substitution()),
            ChartStep::TracePoint { coordinate, .. } => {
                write!(
                    f,
                    "chart 0 translated: x1 = x1', x2 = x1'*(x2' + {coordinate})"
                )
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct BlowupNode {
    /// Slash separated chart labels from the root, e.g. `root/0/inf` or `root/0/t1`.
    pub path: String,
    pub step: ChartStep,
    pub depth: usize,
    pub germ: AdaptedGenerator,
    pub class: PointClass,
    /// Nature of the divisor created when this point was blown up.
    pub exceptional: Option<Nature>,
    pub children: Vec<BlowupNode>,
}

impl BlowupNode {
    fn leaf(
        path: String,
        step: ChartStep,
        depth: usize,
        germ: AdaptedGenerator,
        class: PointClass,
    ) -> Self {
        BlowupNode {
            path,
            step,
            depth,
            germ,
            class,
            exceptional: None,
            children: Vec::new(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Nodes in depth-first order, parents first.
    pub fn iter(&self) -> impl Iterator<Item = &BlowupNode> {
        let mut stack = vec![self];
        std::iter::from_fn(move || {
            let node = stack.pop()?;
            stack.extend(node.children.iter().rev());
            Some(node)
        })
    }

    /// Composite exponent matrix of the corner charts along the path, ignoring
    /// translations at trace points.
    pub fn composite_matrix(path: &str) -> [[i64; 2]; 2] {
        let mut acc = [[1, 0], [0, 1]];
        for label in path.split('/') {
            let chart = match label {
                "0" => Chart::Zero,
                "inf" => Chart::Infinity,
                _ => continue,
            };
            let m = chart.matrix();
            acc = std::array::from_fn(|r| {
                std::array::from_fn(|c| acc[r][0] * m[0][c] + acc[r][1] * m[1][c])
            });
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStatus {
    Success,
    /// A point that is not presimple appeared on a new divisor; `side` is the
    /// side of slope -1 of the corner that was blown up.
    DegenerateSide {
        node: String,
        side: Option<Side>,
    },
    DepthExceeded {
        node: String,
    },
}

impl fmt::Display for ReductionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionStatus::Success => f.write_str("success"),
            ReductionStatus::DegenerateSide {
                node,
                side: Some(s),
            } => write!(f, "degenerate side {s} at {node}"),
            ReductionStatus::DegenerateSide { node, side: None } => {
                write!(f, "degenerate point at {node}")
            }
            ReductionStatus::DepthExceeded { node } => write!(f, "depth limit reached at {node}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PreReductionOutcome {
    pub status: ReductionStatus,
    pub tree: BlowupNode,
    pub blowups: usize,
}

impl PreReductionOutcome {
    pub fn is_success(&self) -> bool {
        self.status == ReductionStatus::Success
    }

    pub fn leaves(&self) -> impl Iterator<Item = &BlowupNode> {
        self.tree.iter().filter(|n| n.is_leaf())
    }

    pub fn depth(&self) -> usize {
        self.tree.iter().map(|n| n.depth).max().unwrap_or(0)
    }
}

struct Driver {
    max_depth: usize,
    status: Option<ReductionStatus>,
    blowups: usize,
}

impl Driver {
    fn fail(&mut self, status: ReductionStatus) {
        if self.status.is_none() {
            self.status = Some(status);
        }
    }

    fn expand(
        &mut self,
        germ: AdaptedGenerator,
        path: String,
        step: ChartStep,
        depth: usize,
    ) -> Result<BlowupNode, BlowupError> {
        let class = classify_point(&germ)?;
        let mut node = BlowupNode::leaf(path, step, depth, germ, class);
        if node.class != PointClass::NonPresimple || self.status.is_some() {
            return Ok(node);
        }
        if node.germ.e() != 2 {
            self.fail(ReductionStatus::DegenerateSide {
                node: node.path.clone(),
                side: None,
            });
            return Ok(node);
        }
        if depth >= self.max_depth {
            self.fail(ReductionStatus::DepthExceeded {
                node: node.path.clone(),
            });
            return Ok(node);
        }
        self.blowups += 1;
        let blown = blowup_corner_named(&node.germ, &format!("D{}", self.blowups))?;
        node.exceptional = Some(blown.exceptional);
        let diagonal = corner_newton_polygon(&node.germ)?
            .compact_sides()
            .into_iter()
            .find(|s| s.weight == (1, 1));

        let chart0 = self.expand(
            blown.chart0,
            format!("{}/0", node.path),
            ChartStep::Corner(Chart::Zero),
            depth + 1,
        )?;
        node.children.push(chart0);
        for (k, tp) in blown.trace_points.into_iter().enumerate() {
            let path = format!("{}/t{}", node.path, k + 1);
            if tp.class == PointClass::NonPresimple {
                self.fail(ReductionStatus::DegenerateSide {
                    node: node.path.clone(),
                    side: diagonal,
                });
            }
            let step = ChartStep::TracePoint {
                coordinate: tp.coordinate,
                minimal: tp.minimal,
            };
            node.children
                .push(BlowupNode::leaf(path, step, depth + 1, tp.model, tp.class));
        }
        let chart_inf = self.expand(
            blown.chart_inf,
            format!("{}/inf", node.path),
            ChartStep::Corner(Chart::Infinity),
            depth + 1,
        )?;
        node.children.push(chart_inf);
        Ok(node)
    }
}

/// Blows up non-presimple corners until every point over the root is
/// presimple, a non-presimple point appears off the corners, or the depth
/// limit is hit.
pub fn pre_reduce(
    root: &AdaptedGenerator,
    max_depth: usize,
) -> Result<PreReductionOutcome, BlowupError> {
    if root.e() != 2 {
        return Err(BlowupError::WrongComponentCount {
            expected: 2,
            found: root.e(),
        });
    }
    let mut driver = Driver {
        max_depth,
        status: None,
        blowups: 0,
    };
    let tree = driver.expand(root.clone(), "root".into(), ChartStep::Root, 0)?;
    Ok(PreReductionOutcome {
        status: driver.status.unwrap_or(ReductionStatus::Success),
        tree,
        blowups: driver.blowups,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// The leaf itself is a saddle-node.
    SaddleNode,
    /// Equal eigenvalues with a nilpotent part; its blow-up has a saddle-node corner.
    NonDiagonalizable,
    /// A saddle-node appeared while blowing up a resonant leaf.
    SaddleNodeAfterBlowup,
    /// The descent did not finish within the step limit.
    Inconclusive,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::SaddleNode => "saddle-node",
            WitnessKind::NonDiagonalizable => "non-diagonalizable resonance",
            WitnessKind::SaddleNodeAfterBlowup => "saddle-node after blowing up",
            WitnessKind::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub path: String,
    pub kind: WitnessKind,
    /// Eigenvalue pairs met while following the resonant points.
    pub descent: Vec<(Scalar, Scalar)>,
}

#[derive(Clone, Debug)]
pub struct ChAudit {
    pub is_ch: bool,
    pub witnesses: Vec<Witness>,
}

const DESCENT_LIMIT: usize = 64;

/// Steps allowed for a descent starting at ratio `p/q`: each blow-up lowers
/// `p + q`, so `p + q` steps always suffice.
fn descent_limit(ratio: &Rat) -> usize {
    let weight = ratio.numer().abs() + ratio.denom();
    weight
        .to_usize()
        .map_or(usize::MAX, |w| (w + 2).max(DESCENT_LIMIT))
}

/// Looks for saddle-nodes in the reduction completing the leaves of a
/// pre-reduction. Resonant leaves are blown up until they become simple or
/// reach equal eigenvalues; the last step is decided on the actual germ.
pub fn ch_audit(outcome: &PreReductionOutcome) -> Result<ChAudit, BlowupError> {
    let mut witnesses = Vec::new();
    for leaf in outcome.leaves() {
        match &leaf.class {
            PointClass::SaddleNode { eigenvalues, .. } => witnesses.push(Witness {
                path: leaf.path.clone(),
                kind: WitnessKind::SaddleNode,
                descent: vec![eigenvalues.clone()],
            }),
            PointClass::Presimple { .. } => {
                let found = branches(leaf.germ.context(), |ctx| {
                    follow_resonance(&leaf.germ.in_context(ctx), &leaf.path)
                })?;
                witnesses.extend(found.into_iter().flat_map(|(_, w)| w));
            }
            _ => {}
        }
    }
    Ok(ChAudit {
        is_ch: witnesses.is_empty(),
        witnesses,
    })
}

fn classify_all(g: &AdaptedGenerator) -> Result<Vec<(AdaptedGenerator, PointClass)>, BlowupError> {
    let found = branches(g.context(), |ctx| -> Result<_, BlowupError> {
        let h = g.in_context(ctx);
        let class = classify_point(&h)?;
        Ok((h, class))
    })?;
    Ok(found.into_iter().map(|(_, pair)| pair).collect())
}

/// Drops the terms that cannot reach the resonant monomial of a node with
/// eigenvalue ratio `ratio`. With eigenvalues in ratio `n` or `1/n` the only
/// resonance has order `n`, and a blow-up lowers the order of a term of the
/// vector field by at most one, so the jet of order `n + 1` decides the descent.
fn resonance_jet(g: &AdaptedGenerator, ratio: &Rat) -> AdaptedGenerator {
    let larger = if ratio.numer().abs() >= *ratio.denom() {
        ratio.clone()
    } else {
        ratio.recip()
    };
    let Some(order) = larger
        .ceil()
        .to_integer()
        .to_i32()
        .map(|n| n.saturating_add(1))
    else {
        return g.clone();
    };
    // the vector field is (x1 a2, -a1) on a single component and
    // (x1 a2, -x2 a1) at a corner
    let (cap1, cap2) = if g.e() == 2 {
        (order - 1, order - 1)
    } else {
        (order, order - 1)
    };
    let cut = |p: &SparsePoly, cap: i32| p.filter_terms(|e| e.total() <= cap);
    AdaptedGenerator::assemble(g.e(), cut(g.a1(), cap1), cut(g.a2(), cap2), g.tags())
}

/// Follows the resonant successors of one presimple point.
pub fn follow_resonance(start: &AdaptedGenerator, path: &str) -> Result<Vec<Witness>, BlowupError> {
    descend(start, path, true)
}

fn descend(
    start: &AdaptedGenerator,
    path: &str,
    truncate: bool,
) -> Result<Vec<Witness>, BlowupError> {
    let mut witnesses = Vec::new();
    let mut work = vec![(start.clone(), Vec::new(), 0usize, None)];
    while let Some((germ, descent, steps, limit)) = work.pop() {
        for (germ, class) in classify_all(&germ)? {
            let mut descent = descent.clone();
            if let Some(eig) = class.eigenvalues() {
                descent.push(eig.clone());
            }
            let witness = |kind| Witness {
                path: path.to_string(),
                kind,
                descent: descent.clone(),
            };
            match class {
                PointClass::SaddleNode { .. } if steps > 0 => {
                    witnesses.push(witness(WitnessKind::SaddleNodeAfterBlowup))
                }
                PointClass::SaddleNode { .. } => witnesses.push(witness(WitnessKind::SaddleNode)),
                PointClass::NonPresimple if steps > 0 => {
                    witnesses.push(witness(WitnessKind::Inconclusive))
                }
                PointClass::Presimple {
                    ratio,
                    diagonalizable,
                    ..
                } => {
                    if ratio == rat(1) {
                        if !diagonalizable {
                            witnesses.push(witness(WitnessKind::NonDiagonalizable));
                        }
                        continue;
                    }
                    let limit = limit.unwrap_or_else(|| descent_limit(&ratio));
                    if steps >= limit {
                        witnesses.push(witness(WitnessKind::Inconclusive));
                        continue;
                    }
                    let germ = if truncate {
                        resonance_jet(&germ, &ratio)
                    } else {
                        germ
                    };
                    let blown = match germ.e() {
                        2 => blowup_corner(&germ)?,
                        _ => blowup_trace(&germ, &Scalar::int(0))?,
                    };
                    if blown.chart0.e() == 2 {
                        work.push((
                            blown.chart0.clone(),
                            descent.clone(),
                            steps + 1,
                            Some(limit),
                        ));
                    }
                    work.push((
                        blown.chart_inf.clone(),
                        descent.clone(),
                        steps + 1,
                        Some(limit),
                    ));
                    for tp in blown.trace_points {
                        work.push((tp.model, descent.clone(), steps + 1, Some(limit)));
                    }
                }
                _ => {}
            }
        }
    }
    Ok(witnesses)
}
