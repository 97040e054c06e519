//! Exact convex polygons in the closed first quadrant.
//!
//! Regions are built by clipping an axis-aligned box against half-planes
//! `a*R1 + b*R2 <= c` with nonnegative coefficients. Because every `c >= 0`
//! the origin is always feasible and is always a vertex.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::rational::{self, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub r1: Rational,
    pub r2: Rational,
}

impl Point {
    pub fn new(r1: Rational, r2: Rational) -> Self {
        Self { r1, r2 }
    }

    pub fn origin() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    fn sub(&self, other: &Point) -> (Rational, Rational) {
        (&self.r1 - &other.r1, &self.r2 - &other.r2)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", rational::format(&self.r1), rational::format(&self.r2))
    }
}

/// `(b - a) x (c - a)`; positive for a left turn.
fn cross(a: &Point, b: &Point, c: &Point) -> Rational {
    let (x1, y1) = b.sub(a);
    let (x2, y2) = c.sub(a);
    x1 * y2 - y1 * x2
}

/// `a*R1 + b*R2 <= c`, stored as the gcd-reduced integer triple so that
/// equal constraints compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfPlane {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl HalfPlane {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if a.is_negative() || b.is_negative() || c.is_negative() {
            return Err(Error::Range(format!("half-plane coefficients must be >= 0: {a}, {b}, {c}")));
        }
        if a.is_zero() && b.is_zero() {
            return Err(Error::Range("half-plane needs a nonzero R1 or R2 coefficient".into()));
        }
        let lcm = a.denom().lcm(b.denom()).lcm(c.denom());
        let scale = |x: &Rational| x.numer() * (&lcm / x.denom());
        let (a, b, c) = (scale(&a), scale(&b), scale(&c));
        let g = a.gcd(&b).gcd(&c);
        Ok(Self { a: a / &g, b: b / &g, c: c / &g })
    }

    pub fn a(&self) -> Rational {
        Rational::from_integer(self.a.clone())
    }

    pub fn b(&self) -> Rational {
        Rational::from_integer(self.b.clone())
    }

    pub fn c(&self) -> Rational {
        Rational::from_integer(self.c.clone())
    }

    /// `a*R1 + b*R2 - c`; the point is feasible iff this is `<= 0`.
    pub fn slack(&self, p: &Point) -> Rational {
        self.a() * &p.r1 + self.b() * &p.r2 - self.c()
    }

    pub fn contains(&self, p: &Point) -> bool {
        !self.slack(p).is_positive()
    }

    /// Same constraint scaled so the R1 coefficient is 1 (when it is nonzero).
    pub fn normalized_r1(&self) -> Option<(Rational, Rational)> {
        if self.a.is_zero() {
            None
        } else {
            Some((self.b() / self.a(), self.c() / self.a()))
        }
    }
}

impl fmt::Display for HalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*R1 + {}*R2 <= {}", self.a, self.b, self.c)
    }
}

/// Convex polygon with counterclockwise vertices starting at the origin.
/// Segments and the single point `{(0,0)}` use one or two vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegionPolytope {
    vertices: Vec<Point>,
}

impl RegionPolytope {
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Convex hull of `points`, which must lie in the first quadrant and
    /// include the origin.
    pub fn from_vertices(points: &[Point]) -> Result<Self> {
        if points.iter().any(|p| p.r1.is_negative() || p.r2.is_negative()) {
            return Err(Error::Range("vertex outside the first quadrant".into()));
        }
        let hull = convex_hull(points);
        if hull.first() != Some(&Point::origin()) {
            return Err(Error::Range("region must contain the origin as a vertex".into()));
        }
        Ok(Self { vertices: hull })
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self.vertices.as_slice() {
            [v] => v == p,
            [u, v] => {
                cross(u, v, p).is_zero()
                    && between(&u.r1, &v.r1, &p.r1)
                    && between(&u.r2, &v.r2, &p.r2)
            }
            vs => (0..vs.len()).all(|i| !cross(&vs[i], &vs[(i + 1) % vs.len()], p).is_negative()),
        }
    }

    /// Contained and not in the interior.
    pub fn on_boundary(&self, p: &Point) -> bool {
        if !self.contains(p) {
            return false;
        }
        let vs = &self.vertices;
        vs.len() < 3 || (0..vs.len()).any(|i| cross(&vs[i], &vs[(i + 1) % vs.len()], p).is_zero())
    }

    pub fn is_subset_of(&self, other: &RegionPolytope) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }

    /// `max w1*R1 + w2*R2` over the region.
    pub fn support(&self, w1: &Rational, w2: &Rational) -> Rational {
        self.vertices
            .iter()
            .map(|v| w1 * &v.r1 + w2 * &v.r2)
            .max()
            .expect("polytope has at least one vertex")
    }

    /// Largest R1 and R2 coordinates.
    pub fn bounding_box(&self) -> (Rational, Rational) {
        let one = Rational::from_integer(1.into());
        let zero = Rational::zero();
        (self.support(&one, &zero), self.support(&zero, &one))
    }

    /// True when `plane` is valid for the region and tight along a face
    /// (an edge, or the whole region if it has fewer than two vertices).
    pub fn has_face(&self, plane: &HalfPlane) -> bool {
        let mut tight = 0;
        for v in &self.vertices {
            let s = plane.slack(v);
            if s.is_positive() {
                return false;
            }
            if s.is_zero() {
                tight += 1;
            }
        }
        tight >= self.vertices.len().min(2)
    }
}

fn between(a: &Rational, b: &Rational, x: &Rational) -> bool {
    (a <= x && x <= b) || (b <= x && x <= a)
}

pub fn intersect(planes: &[HalfPlane]) -> Result<RegionPolytope> {
    let r1_cap = planes.iter().filter(|h| !h.a.is_zero()).map(|h| h.c() / h.a()).min();
    let r2_cap = planes.iter().filter(|h| !h.b.is_zero()).map(|h| h.c() / h.b()).min();
    let (Some(x), Some(y)) = (r1_cap, r2_cap) else {
        return Err(Error::Unbounded(format!(
            "{} constraints do not bound both R1 and R2",
            planes.len()
        )));
    };
    let zero = Rational::zero();
    let mut ring = vec![
        Point::origin(),
        Point::new(x.clone(), zero.clone()),
        Point::new(x, y.clone()),
        Point::new(zero, y),
    ];
    for plane in planes {
        ring = clip(&ring, plane);
    }
    Ok(RegionPolytope { vertices: normalize(ring) })
}

/// Crossing point of the two boundary lines, `None` when they are parallel.
pub fn line_intersection(h: &HalfPlane, k: &HalfPlane) -> Option<Point> {
    let det = h.a() * k.b() - h.b() * k.a();
    if det.is_zero() {
        return None;
    }
    let r1 = (h.c() * k.b() - h.b() * k.c()) / &det;
    let r2 = (h.a() * k.c() - h.c() * k.a()) / det;
    Some(Point::new(r1, r2))
}

/// One Sutherland-Hodgman pass against a single half-plane.
fn clip(ring: &[Point], plane: &HalfPlane) -> Vec<Point> {
    let mut out = Vec::with_capacity(ring.len() + 1);
    for (i, p) in ring.iter().enumerate() {
        let q = &ring[(i + 1) % ring.len()];
        let fp = plane.slack(p);
        let fq = plane.slack(q);
        let p_in = !fp.is_positive();
        let q_in = !fq.is_positive();
        if p_in {
            out.push(p.clone());
        }
        if p_in != q_in {
            let t = &fp / (&fp - &fq);
            let (dx, dy) = q.sub(p);
            out.push(Point::new(&p.r1 + &t * dx, &p.r2 + &t * dy));
        }
    }
    out.dedup();
    out
}

fn normalize(mut ring: Vec<Point>) -> Vec<Point> {
    ring.dedup();
    while ring.len() > 1 && ring.first() == ring.last() {
        ring.pop();
    }
    if ring.len() >= 3 && all_collinear(&ring) {
        let lo = ring.iter().min().cloned().expect("nonempty");
        let hi = ring.iter().max().cloned().expect("nonempty");
        ring = vec![lo, hi];
    }
    if ring.len() >= 3 {
        let mut changed = true;
        while changed && ring.len() >= 3 {
            changed = false;
            let n = ring.len();
            for i in 0..n {
                let prev = &ring[(i + n - 1) % n];
                let next = &ring[(i + 1) % n];
                if cross(prev, &ring[i], next).is_zero() {
                    ring.remove(i);
                    changed = true;
                    break;
                }
            }
        }
    }
    if ring.len() == 2 && ring[0] == ring[1] {
        ring.pop();
    }
    if let Some(start) = ring.iter().position(|p| *p == Point::origin()) {
        ring.rotate_left(start);
    }
    ring
}

fn all_collinear(ring: &[Point]) -> bool {
    let a = &ring[0];
    let Some(b) = ring.iter().find(|p| *p != a) else {
        return true;
    };
    ring.iter().all(|c| cross(a, b, c).is_zero())
}

/// Andrew's monotone chain, counterclockwise, starting from the
/// lexicographically smallest point, collinear points dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    lower
}
