//! Lattice polygons: convex hulls, Minkowski sums, mixed areas and Newton
//! polygons of supports.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::algebra::{Exponent, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    pub fn from_exponent(e: &Exponent) -> Self {
        LatticePoint::new(e.get(0) as i64, e.get(1) as i64)
    }

    pub fn to_exponent(self) -> Exponent {
        Exponent::new2(self.x as i32, self.y as i32)
    }

    fn sub(self, o: Self) -> Self {
        LatticePoint::new(self.x - o.x, self.y - o.y)
    }

    fn add(self, o: Self) -> Self {
        LatticePoint::new(self.x + o.x, self.y + o.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i64 {
    let (u, v) = (a.sub(o), b.sub(o));
    u.x * v.y - u.y * v.x
}

/// Convex lattice polygon, possibly degenerate. Vertices are strictly convex,
/// counterclockwise, and start at the lexicographically smallest one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Polytope2 {
    vertices: Vec<LatticePoint>,
}

impl Polytope2 {
    /// Convex hull by the monotone chain algorithm. Empty input gives the empty polygon.
    pub fn hull(points: impl IntoIterator<Item = LatticePoint>) -> Self {
        let mut pts: Vec<LatticePoint> = points.into_iter().collect();
        pts.sort();
        pts.dedup();
        if pts.len() <= 2 {
            return Polytope2 { vertices: pts };
        }
        let mut lower: Vec<LatticePoint> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<LatticePoint> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() == 2 && lower[0] == lower[1] {
            lower.pop();
        }
        Polytope2 { vertices: lower }
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// 0 for a point, 1 for a segment, 2 otherwise; `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        match self.vertices.len() {
            0 => None,
            1 => Some(0),
            2 => Some(1),
            _ => Some(2),
        }
    }

    pub fn twice_area(&self) -> i64 {
        let n = self.vertices.len();
        if n < 3 {
            return 0;
        }
        (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                a.x * b.y - a.y * b.x
            })
            .sum()
    }

    pub fn area(&self) -> Rat {
        Rat::new(self.twice_area().into(), 2.into())
    }

    /// Boundary edges as ordered pairs; a segment contributes both directions.
    pub fn edges(&self) -> Vec<(LatticePoint, LatticePoint)> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        (0..n)
            .map(|i| (self.vertices[i], self.vertices[(i + 1) % n]))
            .collect()
    }

    /// Sides of the boundary; a segment is a single side.
    pub fn sides(&self) -> Vec<(LatticePoint, LatticePoint)> {
        match self.vertices.len() {
            0 | 1 => Vec::new(),
            2 => vec![(self.vertices[0], self.vertices[1])],
            _ => self.edges(),
        }
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => self.vertices[0] == p,
            2 => on_segment(self.vertices[0], self.vertices[1], p),
            _ => self.edges().iter().all(|&(a, b)| cross(a, b, p) >= 0),
        }
    }

    /// Minkowski sum by merging boundary edges in angular order.
    pub fn minkowski_sum(&self, other: &Polytope2) -> Polytope2 {
        if self.is_empty() || other.is_empty() {
            return Polytope2 {
                vertices: Vec::new(),
            };
        }
        let mut dirs: Vec<LatticePoint> = self
            .edges()
            .into_iter()
            .chain(other.edges())
            .map(|(a, b)| b.sub(a))
            .collect();
        dirs.sort_by(angular_cmp);
        let mut cur = self.vertices[0].add(other.vertices[0]);
        let mut pts = vec![cur];
        for d in dirs {
            cur = cur.add(d);
            pts.push(cur);
        }
        Polytope2::hull(pts)
    }

    pub fn translate(&self, by: LatticePoint) -> Polytope2 {
        Polytope2 {
            vertices: self.vertices.iter().map(|v| v.add(by)).collect(),
        }
    }
}

/// Whether `p` lies on the closed segment `[a, b]`.
pub fn on_segment(a: LatticePoint, b: LatticePoint, p: LatticePoint) -> bool {
    cross(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Orders directions by angle in `(-pi/2, 3pi/2]`, the order in which the
/// boundary is traversed counterclockwise from the lexicographic minimum.
fn angular_cmp(a: &LatticePoint, b: &LatticePoint) -> Ordering {
    let half = |p: &LatticePoint| {
        if p.x > 0 || (p.x == 0 && p.y > 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let c = a.x * b.y - a.y * b.x;
        0.cmp(&c)
    })
}

/// `Area(P + Q) - Area(P) - Area(Q)`.
pub fn mixed_area(p: &Polytope2, q: &Polytope2) -> Rat {
    p.minkowski_sum(q).area() - p.area() - q.area()
}

/// Primitive integer normal `(p, q)` of a direction, oriented with `q > 0`,
/// or `(1, 0)` for vertical directions.
pub fn primitive_normal(dir: LatticePoint) -> (i64, i64) {
    let g = dir.x.gcd(&dir.y);
    assert!(g != 0, "zero direction");
    let (p, q) = (dir.y / g, -dir.x / g);
    match q.cmp(&0) {
        Ordering::Greater => (p, q),
        Ordering::Less => (-p, -q),
        Ordering::Equal => (1, 0),
    }
}

/// Compact side of a Newton polygon. The weight `(p, q)` is primitive with
/// `p, q > 0`, and `p*i + q*j` is constant along the side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Side {
    pub start: LatticePoint,
    pub end: LatticePoint,
    pub weight: (i64, i64),
}

impl Side {
    pub fn new(start: LatticePoint, end: LatticePoint) -> Self {
        Side {
            start,
            end,
            weight: primitive_normal(end.sub(start)),
        }
    }

    /// Slope `-p/q`.
    pub fn slope(&self) -> Rat {
        Rat::new((-self.weight.0).into(), self.weight.1.into())
    }

    /// Weighted degree `p*i + q*j` of the points on the side.
    pub fn weighted_degree(&self) -> i64 {
        self.weight.0 * self.start.x + self.weight.1 * self.start.y
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        on_segment(self.start, self.end, p)
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -- {} (weight {}, {})",
            self.start, self.end, self.weight.0, self.weight.1
        )
    }
}

/// Newton polygon of a support in the first quadrant: the boundary chain of
/// `conv(S) + R^2_{>=0}` from its highest-left vertex to its lowest-right vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    chain: Vec<LatticePoint>,
}

impl NewtonPolygon {
    pub fn from_support(points: impl IntoIterator<Item = LatticePoint>) -> Self {
        let mut pts: Vec<LatticePoint> = points.into_iter().collect();
        pts.sort();
        pts.dedup();
        let Some(min_y) = pts.iter().map(|p| p.y).min() else {
            return NewtonPolygon { chain: Vec::new() };
        };
        let mut lower: Vec<LatticePoint> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0
            {
                lower.pop();
            }
            lower.push(p);
        }
        let cut = lower.iter().position(|p| p.y == min_y).unwrap();
        lower.truncate(cut + 1);
        NewtonPolygon { chain: lower }
    }

    /// Vertices from the highest-left to the lowest-right one.
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.chain
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn compact_sides(&self) -> Vec<Side> {
        self.chain
            .windows(2)
            .map(|w| Side::new(w[0], w[1]))
            .collect()
    }

    pub fn first_vertex(&self) -> Option<LatticePoint> {
        self.chain.first().copied()
    }

    pub fn last_vertex(&self) -> Option<LatticePoint> {
        self.chain.last().copied()
    }

    pub fn is_vertex(&self, p: LatticePoint) -> bool {
        self.chain.contains(&p)
    }

    /// Whether `p` lies in `conv(S) + R^2_{>=0}`.
    pub fn contains(&self, p: LatticePoint) -> bool {
        let (Some(first), Some(last)) = (self.first_vertex(), self.last_vertex()) else {
            return false;
        };
        if p.x < first.x || p.y < last.y {
            return false;
        }
        self.compact_sides()
            .iter()
            .all(|s| s.weight.0 * p.x + s.weight.1 * p.y >= s.weighted_degree())
    }

    /// ASCII picture: `o` vertices, `*` other support points, `.` elsewhere.
    /// Rows run from the top exponent of the second variable down to zero.
    pub fn render_ascii(&self, support: &[LatticePoint]) -> String {
        let max_x = support
            .iter()
            .chain(&self.chain)
            .map(|p| p.x)
            .max()
            .unwrap_or(0)
            .max(0);
        let max_y = support
            .iter()
            .chain(&self.chain)
            .map(|p| p.y)
            .max()
            .unwrap_or(0)
            .max(0);
        let mut out = String::new();
        for y in (0..=max_y).rev() {
            out.push_str(&format!("{y:>3} |"));
            for x in 0..=max_x {
                let p = LatticePoint::new(x, y);
                let c = if self.chain.contains(&p) {
                    'o'
                } else if support.contains(&p) {
                    '*'
                } else {
                    '.'
                };
                out.push(' ');
                out.push(c);
            }
            out.push('\n');
        }
        out.push_str("    +");
        out.push_str(&"--".repeat(max_x as usize + 1));
        out.push('\n');
        out
    }
}
