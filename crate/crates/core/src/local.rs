//! Local analysis of a logarithmic foliation germ at a point of a normal
//! crossings divisor: adapted generators, the presimple/simple case split,
//! corner Newton polygons and scans along a divisor component.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    adjoin_roots, branches, common_context, has_common_factor, rat, AlgebraError, AlgebraicContext,
    Exponent, Order, QPoly, Rat, RootBranch, Scalar, SparsePoly, Split, SplitAware, UPoly,
};
use crate::laurent::{pair_nondegenerate, PositionError};
use crate::polytope::{LatticePoint, NewtonPolygon, Side};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    #[error("coefficients share a nonconstant factor")]
    CommonFactor,
    #[error("both coefficients vanish identically")]
    ZeroForm,
    #[error("coefficients must be polynomials in two variables")]
    NotBivariatePolynomial,
    #[error("operation needs {expected} divisor components, found {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("{0} is not a compact side of the corner Newton polygon")]
    NotASide(Side),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Position(#[from] PositionError),
}

impl From<Split> for LocalError {
    fn from(s: Split) -> Self {
        LocalError::Algebra(AlgebraError::Split(s))
    }
}

impl SplitAware for LocalError {
    fn split(&self) -> Option<&Split> {
        match self {
            LocalError::Algebra(e) => e.split(),
            LocalError::Position(e) => e.split(),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Nature {
    Invariant,
    Dicritical,
}

impl fmt::Display for Nature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Nature::Invariant => "invariant",
            Nature::Dicritical => "dicritical",
        })
    }
}

/// A divisor component through the point, `x_label = 0` in local coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorComponentLocal {
    pub label: usize,
    pub nature: Nature,
    /// Position in the total order of divisor components; smaller comes first.
    pub order_rank: Rat,
    pub name: String,
}

/// Germ data at the origin. With `e = 2` the form is `a1 dx1/x1 + a2 dx2/x2`,
/// with `e = 1` it is `a1 dx1/x1 + a2 dx2`, and with `e = 0` it is
/// `a1 dx1 + a2 dx2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedGenerator {
    e: usize,
    a1: SparsePoly,
    a2: SparsePoly,
    components: Vec<DivisorComponentLocal>,
}

/// Name and rank for a component; the nature is derived from the coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentTag {
    pub name: String,
    pub order_rank: Rat,
}

impl ComponentTag {
    pub fn new(name: impl Into<String>, order_rank: Rat) -> Self {
        ComponentTag {
            name: name.into(),
            order_rank,
        }
    }
}

fn divisible_by_var(p: &SparsePoly, var: usize) -> bool {
    p.min_degree_in(var).is_none_or(|d| d > 0)
}

impl AdaptedGenerator {
    /// Validates the pair and derives the nature of each component.
    /// `tags[k]` describes the component `x_{k+1} = 0`.
    pub fn new(
        a1: SparsePoly,
        a2: SparsePoly,
        tags: Vec<ComponentTag>,
    ) -> Result<Self, LocalError> {
        let e = tags.len();
        if e > 2 {
            return Err(LocalError::ComponentCount {
                expected: 2,
                found: e,
            });
        }
        for p in [&a1, &a2] {
            if p.arity() != 2 || p.is_laurent() {
                return Err(LocalError::NotBivariatePolynomial);
            }
        }
        if a1.is_zero() && a2.is_zero() {
            return Err(LocalError::ZeroForm);
        }
        if has_common_factor(&a1, &a2)? {
            return Err(LocalError::CommonFactor);
        }
        Ok(Self::assemble(e, a1, a2, tags))
    }

    /// Skips validation; callers guarantee a reduced pair.
    pub(crate) fn assemble(
        e: usize,
        a1: SparsePoly,
        a2: SparsePoly,
        tags: Vec<ComponentTag>,
    ) -> Self {
        let coeff = [&a1, &a2];
        let components = tags
            .into_iter()
            .enumerate()
            .map(|(k, tag)| DivisorComponentLocal {
                label: k + 1,
                nature: if divisible_by_var(coeff[k], k) {
                    Nature::Dicritical
                } else {
                    Nature::Invariant
                },
                order_rank: tag.order_rank,
                name: tag.name,
            })
            .collect();
        AdaptedGenerator {
            e,
            a1,
            a2,
            components,
        }
    }

    /// Corner with default names; `x2 = 0` precedes `x1 = 0`.
    pub fn corner(a1: SparsePoly, a2: SparsePoly) -> Result<Self, LocalError> {
        Self::new(
            a1,
            a2,
            vec![
                ComponentTag::new("x1", rat(1)),
                ComponentTag::new("x2", rat(0)),
            ],
        )
    }

    /// Point on the single component `x1 = 0`.
    pub fn trace(a1: SparsePoly, a2: SparsePoly) -> Result<Self, LocalError> {
        Self::new(a1, a2, vec![ComponentTag::new("x1", rat(0))])
    }

    /// Point off the divisor.
    pub fn free(a1: SparsePoly, a2: SparsePoly) -> Result<Self, LocalError> {
        Self::new(a1, a2, Vec::new())
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn a1(&self) -> &SparsePoly {
        &self.a1
    }

    pub fn a2(&self) -> &SparsePoly {
        &self.a2
    }

    pub fn components(&self) -> &[DivisorComponentLocal] {
        &self.components
    }

    pub fn tags(&self) -> Vec<ComponentTag> {
        self.components
            .iter()
            .map(|c| ComponentTag::new(c.name.clone(), c.order_rank.clone()))
            .collect()
    }

    pub fn context(&self) -> Option<AlgebraicContext> {
        common_context([&self.a1, &self.a2])
    }

    pub fn in_context(&self, ctx: Option<&AlgebraicContext>) -> Self {
        AdaptedGenerator {
            e: self.e,
            a1: self.a1.in_context(ctx),
            a2: self.a2.in_context(ctx),
            components: self.components.clone(),
        }
    }

    /// Coefficients of the fully logarithmic form `A1 dx1/x1 + A2 dx2/x2`.
    pub fn log_pair(&self) -> (SparsePoly, SparsePoly) {
        let x1 = SparsePoly::var(2, 0);
        let x2 = SparsePoly::var(2, 1);
        match self.e {
            2 => (self.a1.clone(), self.a2.clone()),
            1 => (self.a1.clone(), &x2 * &self.a2),
            _ => (&x1 * &self.a1, &x2 * &self.a2),
        }
    }

    /// Exchanges the roles of the two coordinates (corners only).
    pub fn swapped(&self) -> Self {
        assert_eq!(self.e, 2, "only corners can be swapped");
        let mut comps = self.components.clone();
        comps.reverse();
        for (k, c) in comps.iter_mut().enumerate() {
            c.label = k + 1;
        }
        AdaptedGenerator {
            e: 2,
            a1: self.a2.swap_vars(),
            a2: self.a1.swap_vars(),
            components: comps,
        }
    }

    /// Corner with coordinates arranged so that `x2 = 0` precedes `x1 = 0`.
    pub fn standardized(&self) -> Self {
        if self.e == 2 && self.components[0].order_rank < self.components[1].order_rank {
            self.swapped()
        } else {
            self.clone()
        }
    }

    pub fn adapted_multiplicity(&self) -> Order {
        let o1 = self.a1.order_at_origin().expect("polynomial");
        let o2 = self.a2.order_at_origin().expect("polynomial");
        o1.min(o2)
    }
}

impl fmt::Display for AdaptedGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e={} a1={} a2={}", self.e, self.a1, self.a2)
    }
}

/// Adapted pair of a holomorphic form `f1 dx1 + f2 dx2` along the first
/// `e` coordinate hyperplanes.
pub fn eta_from_omega(
    f1: &SparsePoly,
    f2: &SparsePoly,
    tags: Vec<ComponentTag>,
) -> Result<AdaptedGenerator, LocalError> {
    let e = tags.len();
    let x = [SparsePoly::var(2, 0), SparsePoly::var(2, 1)];
    let f = [f1, f2];
    let mut eps = [0i32; 2];
    for k in 0..e {
        let other = f[1 - k];
        eps[k] = i32::from(divisible_by_var(other, k));
    }
    let denom = Exponent::new2(-eps[0], -eps[1]);
    let lift = |k: usize| if k < e { &x[k] * f[k] } else { f[k].clone() };
    let a1 = lift(0).shift(&denom);
    let a2 = lift(1).shift(&denom);
    if a1.is_laurent() || a2.is_laurent() {
        return Err(LocalError::NotBivariatePolynomial);
    }
    AdaptedGenerator::new(a1, a2, tags)
}

/// Holomorphic form `(f1, f2)` with `f1 dx1 + f2 dx2 = x^eps * eta`.
pub fn omega_from_eta(g: &AdaptedGenerator) -> (SparsePoly, SparsePoly) {
    let mut eps = [0i32; 2];
    for c in &g.components {
        eps[c.label - 1] = i32::from(c.nature == Nature::Invariant);
    }
    let factor = Exponent::new2(eps[0], eps[1]);
    let log_shift = |k: usize| {
        let mut e = factor;
        if k < g.e {
            e.0[k] -= 1;
        }
        e
    };
    (g.a1.shift(&log_shift(0)), g.a2.shift(&log_shift(1)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Corner,
    Trace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ratio {
    Finite(Scalar),
    Infinite,
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ratio::Finite(s) => write!(f, "{s}"),
            Ratio::Infinite => f.write_str("inf"),
        }
    }
}

/// Eigenvalues are those of the linear part of the vector field
/// `Q d/dx1 - P d/dx2` tangent to the reduced form `P dx1 + Q dx2`, and the
/// ratio is the second divided by the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointClass {
    RegularNormalCrossings,
    NonPresimple,
    Presimple {
        kind: PointKind,
        eigenvalues: (Scalar, Scalar),
        ratio: Rat,
        diagonalizable: bool,
    },
    Simple {
        kind: PointKind,
        eigenvalues: (Scalar, Scalar),
        ratio: Ratio,
    },
    SaddleNode {
        kind: PointKind,
        eigenvalues: (Scalar, Scalar),
    },
}

impl PointClass {
    /// Presimple in the wide sense: everything except `NonPresimple`.
    pub fn is_presimple(&self) -> bool {
        !matches!(self, PointClass::NonPresimple)
    }

    /// Simple or regular with normal crossings.
    pub fn is_simple(&self) -> bool {
        matches!(
            self,
            PointClass::Simple { .. }
                | PointClass::RegularNormalCrossings
                | PointClass::SaddleNode { .. }
        )
    }

    pub fn is_singular(&self) -> bool {
        !matches!(self, PointClass::RegularNormalCrossings)
    }

    pub fn label(&self) -> &'static str {
        match self {
            PointClass::RegularNormalCrossings => "regular",
            PointClass::NonPresimple => "non-presimple",
            PointClass::Presimple { .. } => "presimple",
            PointClass::Simple { .. } => "simple",
            PointClass::SaddleNode { .. } => "saddle-node",
        }
    }

    pub fn eigenvalues(&self) -> Option<&(Scalar, Scalar)> {
        match self {
            PointClass::Presimple { eigenvalues, .. }
            | PointClass::Simple { eigenvalues, .. }
            | PointClass::SaddleNode { eigenvalues, .. } => Some(eigenvalues),
            _ => None,
        }
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.eigenvalues() {
            Some((l1, l2)) => write!(f, "{} (eigenvalues {l1}, {l2})", self.label()),
            None => f.write_str(self.label()),
        }
    }
}

/// Classifies from eigenvalues of a non-nilpotent linear part.
fn from_eigenvalues(
    kind: PointKind,
    l1: Scalar,
    l2: Scalar,
    diagonalizable: bool,
) -> Result<PointClass, Split> {
    let z1 = l1.zero_test()?;
    let z2 = l2.zero_test()?;
    if z1 || z2 {
        debug_assert!(!(z1 && z2));
        return Ok(PointClass::SaddleNode {
            kind,
            eigenvalues: (l1, l2),
        });
    }
    let ratio = l2.div(&l1)?;
    match ratio.rational_value()? {
        Some(r) if r > rat(0) => Ok(PointClass::Presimple {
            kind,
            eigenvalues: (l1, l2),
            ratio: r,
            diagonalizable,
        }),
        _ => Ok(PointClass::Simple {
            kind,
            eigenvalues: (l1, l2),
            ratio: Ratio::Finite(ratio),
        }),
    }
}

fn linear_coeff(p: &SparsePoly, var: usize) -> Scalar {
    let mut e = Exponent::default();
    e.0[var] = 1;
    p.coeff(&e)
}

fn vanishes_at_origin(p: &SparsePoly) -> Result<bool, Split> {
    p.constant_term().zero_test()
}

/// The presimple/simple case split at the origin.
pub fn classify_point(g: &AdaptedGenerator) -> Result<PointClass, LocalError> {
    let (a1, a2) = (&g.a1, &g.a2);
    let class = match g.e {
        0 => {
            if vanishes_at_origin(a1)? && vanishes_at_origin(a2)? {
                PointClass::NonPresimple
            } else {
                PointClass::RegularNormalCrossings
            }
        }
        1 => match g.components[0].nature {
            Nature::Dicritical => {
                if vanishes_at_origin(a2)? {
                    PointClass::NonPresimple
                } else {
                    PointClass::RegularNormalCrossings
                }
            }
            Nature::Invariant => {
                if !vanishes_at_origin(a1)? {
                    PointClass::RegularNormalCrossings
                } else if !vanishes_at_origin(a2)? {
                    let d1 = linear_coeff(a1, 0);
                    let d2 = linear_coeff(a1, 1);
                    let l1 = a2.constant_term();
                    let l2 = -&d2;
                    let diag = !(&l1 - &l2).zero_test()? || d1.zero_test()?;
                    from_eigenvalues(PointKind::Trace, l1, l2, diag)?
                } else if !linear_coeff(a1, 1).zero_test()? {
                    PointClass::SaddleNode {
                        kind: PointKind::Trace,
                        eigenvalues: (Scalar::int(0), -&linear_coeff(a1, 1)),
                    }
                } else {
                    PointClass::NonPresimple
                }
            }
        },
        _ => {
            let n1 = g.components[0].nature;
            let n2 = g.components[1].nature;
            match (n1, n2) {
                (Nature::Dicritical, Nature::Dicritical) => PointClass::NonPresimple,
                (Nature::Dicritical, Nature::Invariant)
                | (Nature::Invariant, Nature::Dicritical) => {
                    let inv = if n1 == Nature::Invariant { a1 } else { a2 };
                    if vanishes_at_origin(inv)? {
                        PointClass::NonPresimple
                    } else {
                        PointClass::RegularNormalCrossings
                    }
                }
                (Nature::Invariant, Nature::Invariant) => {
                    if vanishes_at_origin(a1)? && vanishes_at_origin(a2)? {
                        PointClass::NonPresimple
                    } else {
                        from_eigenvalues(
                            PointKind::Corner,
                            a2.constant_term(),
                            -&a1.constant_term(),
                            true,
                        )?
                    }
                }
            }
        }
    };
    Ok(class)
}

/// Classification on every factor of the coefficient context.
pub fn classify_point_branches(
    g: &AdaptedGenerator,
) -> Result<Vec<(Option<AlgebraicContext>, PointClass)>, LocalError> {
    branches(g.context(), |ctx| classify_point(&g.in_context(ctx)))
}

fn require_corner(g: &AdaptedGenerator) -> Result<(), LocalError> {
    if g.e != 2 {
        return Err(LocalError::ComponentCount {
            expected: 2,
            found: g.e,
        });
    }
    Ok(())
}

fn lattice_support(p: &SparsePoly) -> impl Iterator<Item = LatticePoint> + '_ {
    p.support()
        .into_iter()
        .map(|e| LatticePoint::from_exponent(&e))
}

/// Newton polygon of the pair at a corner, in the coordinates of `g`.
/// Use [`AdaptedGenerator::standardized`] first to follow the divisor order.
pub fn corner_newton_polygon(g: &AdaptedGenerator) -> Result<NewtonPolygon, LocalError> {
    require_corner(g)?;
    Ok(NewtonPolygon::from_support(
        lattice_support(&g.a1).chain(lattice_support(&g.a2)),
    ))
}

/// Restriction of a polynomial to the lattice points of a side.
pub fn restrict_to_side(p: &SparsePoly, side: &Side) -> SparsePoly {
    p.filter_terms(|e| side.contains(LatticePoint::from_exponent(e)))
}

pub fn side_nondegenerate(g: &AdaptedGenerator, side: &Side) -> Result<bool, LocalError> {
    let poly = corner_newton_polygon(g)?;
    if !poly.compact_sides().contains(side) {
        return Err(LocalError::NotASide(*side));
    }
    Ok(pair_nondegenerate(
        &restrict_to_side(&g.a1, side),
        &restrict_to_side(&g.a2, side),
        side.weight,
    )?)
}

/// A singular point `(0, coordinate)` found on a divisor component.
#[derive(Clone, Debug)]
pub struct TracePoint {
    /// Context in which the point and its model live.
    pub ctx: Option<AlgebraicContext>,
    /// Polynomial whose roots are the coordinates this entry stands for.
    pub minimal: QPoly,
    pub coordinate: Scalar,
    pub class: PointClass,
    /// Germ translated to the origin, with the component as `x1 = 0`.
    pub model: AdaptedGenerator,
}

/// Germ along `x1 = 0` away from `x2 = 0`, as a single-component model.
pub fn trace_model(g: &AdaptedGenerator) -> AdaptedGenerator {
    match g.e {
        2 => {
            let x2 = SparsePoly::var(2, 1);
            let (b1, b2) = if divisible_by_var(&g.a2, 1) {
                (g.a1.clone(), g.a2.shift(&Exponent::new2(0, -1)))
            } else {
                (&x2 * &g.a1, g.a2.clone())
            };
            AdaptedGenerator::assemble(1, b1, b2, vec![g.tags()[0].clone()])
        }
        _ => g.clone(),
    }
}

/// Singular points of the component `x_label = 0`. For a corner the origin is
/// excluded; for a single-component germ the whole line is scanned.
pub fn divisor_trace_scan(
    g: &AdaptedGenerator,
    label: usize,
) -> Result<Vec<TracePoint>, LocalError> {
    let base = match (g.e, label) {
        (2, 1) => g.clone(),
        (2, 2) => g.swapped(),
        (1, 1) => g.clone(),
        _ => {
            return Err(LocalError::ComponentCount {
                expected: 2,
                found: g.e,
            })
        }
    };
    let include_origin = g.e == 1;
    let model = trace_model(&base);
    let nature = model.components[0].nature;
    let restricted = match nature {
        Nature::Invariant => &model.a1,
        Nature::Dicritical => &model.a2,
    };
    let line = restricted.eval_var(0, &Scalar::int(0))?.to_dense(1)?;
    scan_roots(&model, &line, include_origin)
}

fn scan_roots(
    model: &AdaptedGenerator,
    line: &UPoly,
    include_origin: bool,
) -> Result<Vec<TracePoint>, LocalError> {
    let base_ctx = model.context();
    let sq = branches(base_ctx.clone(), |ctx| -> Result<UPoly, LocalError> {
        let l = crate::algebra::upoly_normalize(&line.map(|c| c.in_context(ctx)))?;
        if l.is_zero() {
            return Ok(l);
        }
        Ok(l.squarefree_part()?)
    })?;
    if sq.len() != 1 {
        return Err(LocalError::Algebra(AlgebraError::Unsupported(
            "coefficient field is not a field".into(),
        )));
    }
    let sq = sq.into_iter().next().unwrap().1;
    if sq.is_zero() {
        return Err(LocalError::Algebra(AlgebraError::Unsupported(
            "component made entirely of singular points".into(),
        )));
    }
    let (k, rest) = sq.strip_x();
    let mut roots: Vec<RootBranch> = Vec::new();
    if include_origin && k > 0 {
        roots.push(RootBranch {
            ctx: base_ctx.clone(),
            root: Scalar::int(0),
            minimal: QPoly::x(),
        });
    }
    roots.extend(adjoin_roots(&rest, base_ctx.as_ref())?);
    let mut out = Vec::new();
    for root in roots {
        let found = branches(
            root.ctx.clone(),
            |ctx| -> Result<(AdaptedGenerator, PointClass), LocalError> {
                let lambda = root.root.in_context(ctx);
                let m = model.in_context(ctx);
                let moved = AdaptedGenerator::assemble(
                    1,
                    m.a1.translate(1, &lambda)?,
                    m.a2.translate(1, &lambda)?,
                    m.tags(),
                );
                let class = classify_point(&moved)?;
                Ok((moved, class))
            },
        )?;
        for (ctx, (moved, class)) in found {
            let minimal = match (&ctx, &root.ctx) {
                (Some(c), Some(_)) if root.minimal != QPoly::x() => c.modulus().clone(),
                _ => root.minimal.clone(),
            };
            out.push(TracePoint {
                coordinate: root.root.in_context(ctx.as_ref()),
                ctx,
                minimal,
                class,
                model: moved,
            });
        }
    }
    Ok(out)
}
