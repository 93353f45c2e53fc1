//! Exact convex-polygon kernel on rational coordinates.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, rat, to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RatPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        RatPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RatPoint::new(int(x), int(y))
    }

    /// `(xn/xd, yn/yd)`.
    pub fn from_fracs(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        RatPoint::new(rat(xn, xd), rat(yn, yd))
    }

    pub fn reflect(&self) -> Self {
        RatPoint::new(self.y.clone(), self.x.clone())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }

    fn sub(&self, o: &RatPoint) -> (Rational, Rational) {
        (&self.x - &o.x, &self.y - &o.y)
    }
}

impl fmt::Display for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// `(b - a) × (c - a)`; positive when `a, b, c` turn left.
pub fn cross(a: &RatPoint, b: &RatPoint, c: &RatPoint) -> Rational {
    let (ux, uy) = b.sub(a);
    let (vx, vy) = c.sub(a);
    ux * vy - uy * vx
}

fn cross_vec(u: &(Rational, Rational), v: &(Rational, Rational)) -> Rational {
    &u.0 * &v.1 - &u.1 * &v.0
}

fn dot_vec(u: &(Rational, Rational), v: &(Rational, Rational)) -> Rational {
    &u.0 * &v.0 + &u.1 * &v.1
}

/// `{(x, y) : a·x + b·y ≤ c}`, or `< c` when `closed` is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfPlane {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub closed: bool,
}

impl HalfPlane {
    pub fn new(a: Rational, b: Rational, c: Rational, closed: bool) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::domain("half-plane with zero normal"));
        }
        Ok(HalfPlane { a, b, c, closed })
    }

    pub(crate) fn from_ints(a: BigInt, b: BigInt, c: i64, closed: bool) -> Self {
        debug_assert!(!(a.is_zero() && b.is_zero()));
        HalfPlane {
            a: Rational::from_integer(a),
            b: Rational::from_integer(b),
            c: int(c),
            closed,
        }
    }

    /// `a·x + b·y − c`.
    pub fn eval(&self, p: &RatPoint) -> Rational {
        &self.a * &p.x + &self.b * &p.y - &self.c
    }

    pub fn contains(&self, p: &RatPoint) -> bool {
        let v = self.eval(p);
        if self.closed {
            !v.is_positive()
        } else {
            v.is_negative()
        }
    }

    pub fn on_boundary(&self, p: &RatPoint) -> bool {
        self.eval(p).is_zero()
    }

    /// The opposite side; openness flips so the two partition the plane.
    pub fn complement(&self) -> Self {
        HalfPlane {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            closed: !self.closed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Interior,
    Edge,
    /// Directions from the vertex along its two boundary edges. The interior
    /// is swept counter-clockwise from `to_next` to `to_prev`.
    Vertex {
        to_prev: (Rational, Rational),
        to_next: (Rational, Rational),
    },
    Outside,
}

impl Location {
    /// Share of a full turn covered by the interior near the point:
    /// 1 inside, 1/2 on an edge, angle/2π at a vertex, 0 outside.
    pub fn weight(&self) -> f64 {
        match self {
            Location::Interior => 1.0,
            Location::Edge => 0.5,
            Location::Outside => 0.0,
            Location::Vertex { to_prev, to_next } => {
                let a_next = libm::atan2(to_f64(&to_next.1), to_f64(&to_next.0));
                let a_prev = libm::atan2(to_f64(&to_prev.1), to_f64(&to_prev.0));
                let mut ang = a_prev - a_next;
                let tau = 2.0 * core::f64::consts::PI;
                while ang <= 0.0 {
                    ang += tau;
                }
                while ang > tau {
                    ang -= tau;
                }
                ang / tau
            }
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Location::Outside => 0,
            Location::Interior => 1,
            Location::Edge => 2,
            Location::Vertex { .. } => 3,
        }
    }

    /// True when `self` is a more degenerate incidence than `other`.
    pub fn more_degenerate_than(&self, other: &Location) -> bool {
        self.rank() > other.rank()
    }
}

/// Counter-clockwise convex polygon with positive area, or the empty polygon.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConvexPolygon {
    vertices: Vec<RatPoint>,
}

impl ConvexPolygon {
    pub fn empty() -> Self {
        ConvexPolygon { vertices: vec![] }
    }

    /// Validates convexity after dropping repeats and collinear vertices;
    /// either orientation is accepted.
    pub fn new(vertices: Vec<RatPoint>) -> Result<Self> {
        let p = Self::normalized(vertices);
        if p.is_empty() {
            return Ok(p);
        }
        let n = p.vertices.len();
        for i in 0..n {
            let c = cross(
                &p.vertices[i],
                &p.vertices[(i + 1) % n],
                &p.vertices[(i + 2) % n],
            );
            if !c.is_positive() {
                return Err(Error::domain("polygon is not convex"));
            }
        }
        Ok(p)
    }

    pub fn from_fracs(v: &[(i64, i64, i64, i64)]) -> Result<Self> {
        Self::new(
            v.iter()
                .map(|&(a, b, c, d)| RatPoint::from_fracs(a, b, c, d))
                .collect(),
        )
    }

    pub fn from_ints(v: &[(i64, i64)]) -> Result<Self> {
        Self::new(v.iter().map(|&(x, y)| RatPoint::from_ints(x, y)).collect())
    }

    /// Exact convex hull (monotone chain); fewer than three non-collinear points give the empty polygon.
    pub fn hull(mut pts: Vec<RatPoint>) -> Self {
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return Self::empty();
        }
        let mut lower: Vec<RatPoint> = Vec::new();
        for p in pts.iter() {
            while lower.len() >= 2
                && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
            {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<RatPoint> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2
                && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
            {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Self::normalized(lower)
    }

    /// The Farey triangle `(0,1), (1,0), (1,1)`.
    pub fn farey_triangle() -> Self {
        ConvexPolygon {
            vertices: vec![
                RatPoint::from_ints(0, 1),
                RatPoint::from_ints(1, 0),
                RatPoint::from_ints(1, 1),
            ],
        }
    }

    pub fn unit_square() -> Self {
        ConvexPolygon {
            vertices: vec![
                RatPoint::from_ints(0, 0),
                RatPoint::from_ints(1, 0),
                RatPoint::from_ints(1, 1),
                RatPoint::from_ints(0, 1),
            ],
        }
    }

    /// Axis-parallel rectangle `[x0, x1] × [y0, y1]`.
    pub fn rectangle(x0: Rational, y0: Rational, x1: Rational, y1: Rational) -> Self {
        Self::normalized(vec![
            RatPoint::new(x0.clone(), y0.clone()),
            RatPoint::new(x1.clone(), y0),
            RatPoint::new(x1, y1.clone()),
            RatPoint::new(x0, y1),
        ])
    }

    // Drops repeats and collinear vertices, orients counter-clockwise and
    // returns the empty polygon when nothing of positive area is left.
    fn normalized(pts: Vec<RatPoint>) -> Self {
        let mut res: Vec<RatPoint> = Vec::with_capacity(pts.len());
        for p in pts {
            if res.last() != Some(&p) {
                res.push(p);
            }
        }
        while res.len() > 1 && res.first() == res.last() {
            res.pop();
        }
        let mut changed = true;
        while changed && res.len() >= 3 {
            changed = false;
            let n = res.len();
            for i in 0..n {
                let a = &res[(i + n - 1) % n];
                let b = &res[i];
                let c = &res[(i + 1) % n];
                if cross(a, b, c).is_zero() {
                    res.remove(i);
                    changed = true;
                    break;
                }
            }
        }
        if res.len() < 3 {
            return Self::empty();
        }
        let mut p = ConvexPolygon { vertices: res };
        let a2 = p.signed_area2();
        if a2.is_zero() {
            return Self::empty();
        }
        if a2.is_negative() {
            p.vertices.reverse();
        }
        p
    }

    pub fn vertices(&self) -> &[RatPoint] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&RatPoint, &RatPoint)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    fn signed_area2(&self) -> Rational {
        let mut s = Rational::zero();
        for (p, q) in self.edges() {
            s += &p.x * &q.y - &q.x * &p.y;
        }
        s
    }

    pub fn area(&self) -> Rational {
        self.signed_area2().abs() / int(2)
    }

    pub fn has_vertex(&self, p: &RatPoint) -> bool {
        self.vertices.iter().any(|v| v == p)
    }

    /// `self ∩ closure(hp)`; segment or point results collapse to the empty polygon.
    pub fn clip(&self, hp: &HalfPlane) -> Self {
        let n = self.vertices.len();
        if n == 0 {
            return Self::empty();
        }
        let vals: Vec<Rational> = self.vertices.iter().map(|v| hp.eval(v)).collect();
        if vals.iter().all(|v| !v.is_positive()) {
            return self.clone();
        }
        if vals.iter().all(|v| !v.is_negative()) {
            return Self::empty();
        }
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..n {
            let j = (i + 1) % n;
            let (p, q) = (&self.vertices[i], &self.vertices[j]);
            let (fp, fq) = (&vals[i], &vals[j]);
            if !fp.is_positive() {
                out.push(p.clone());
            }
            if (fp.is_negative() && fq.is_positive()) || (fp.is_positive() && fq.is_negative()) {
                let t = fp / (fp - fq);
                out.push(RatPoint::new(
                    &p.x + &t * (&q.x - &p.x),
                    &p.y + &t * (&q.y - &p.y),
                ));
            }
        }
        Self::normalized(out)
    }

    pub fn clip_all<'a>(&self, hps: impl IntoIterator<Item = &'a HalfPlane>) -> Self {
        let mut p = self.clone();
        for h in hps {
            if p.is_empty() {
                break;
            }
            p = p.clip(h);
        }
        p
    }

    /// `self ∩ other` for two convex polygons.
    pub fn intersect(&self, other: &ConvexPolygon) -> Self {
        let mut p = self.clone();
        for hp in other.half_planes() {
            if p.is_empty() {
                break;
            }
            p = p.clip(&hp);
        }
        p
    }

    /// Closed half-planes whose intersection is the polygon.
    pub fn half_planes(&self) -> Vec<HalfPlane> {
        self.edges()
            .map(|(p, q)| {
                // Interior lies to the left of p→q: (q−p) × (z−p) ≥ 0.
                let a = &q.y - &p.y;
                let b = &p.x - &q.x;
                let c = &a * &p.x + &b * &p.y;
                HalfPlane {
                    a,
                    b,
                    c,
                    closed: true,
                }
            })
            .collect()
    }

    /// Image under `(x, y) ↦ (x, P·y − Pp·x)`; the area is multiplied by `P`.
    pub fn affine_image(&self, p: &BigInt, pp: &BigInt) -> Self {
        let p = Rational::from_integer(p.clone());
        let pp = Rational::from_integer(pp.clone());
        let pts = self
            .vertices
            .iter()
            .map(|v| RatPoint::new(v.x.clone(), &p * &v.y - &pp * &v.x))
            .collect();
        Self::normalized(pts)
    }

    /// Image under `(x, y) ↦ (y, x)`.
    pub fn reflect(&self) -> Self {
        Self::normalized(self.vertices.iter().map(RatPoint::reflect).collect())
    }

    /// Vertex rotation starting at the lexicographically smallest vertex.
    pub fn canonical(&self) -> Self {
        let Some(i) = self
            .vertices
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(i, _)| i)
        else {
            return Self::empty();
        };
        let mut v = self.vertices.clone();
        v.rotate_left(i);
        ConvexPolygon { vertices: v }
    }

    pub fn locate(&self, p: &RatPoint) -> Location {
        let n = self.vertices.len();
        if n == 0 {
            return Location::Outside;
        }
        let mut zero = false;
        for (a, b) in self.edges() {
            let c = cross(a, b, p);
            if c.is_negative() {
                return Location::Outside;
            }
            if c.is_zero() {
                zero = true;
            }
        }
        if let Some(i) = self.vertices.iter().position(|v| v == p) {
            let prev = &self.vertices[(i + n - 1) % n];
            let next = &self.vertices[(i + 1) % n];
            return Location::Vertex {
                to_prev: prev.sub(p),
                to_next: next.sub(p),
            };
        }
        if zero {
            Location::Edge
        } else {
            Location::Interior
        }
    }

    pub fn contains_closed(&self, p: &RatPoint) -> bool {
        self.locate(p) != Location::Outside
    }

    pub fn contains_polygon(&self, other: &ConvexPolygon) -> bool {
        other.vertices.iter().all(|v| self.contains_closed(v))
    }

    pub fn bbox(&self) -> Option<(RatPoint, RatPoint)> {
        let first = self.vertices.first()?;
        let (mut x0, mut y0, mut x1, mut y1) = (
            first.x.clone(),
            first.y.clone(),
            first.x.clone(),
            first.y.clone(),
        );
        for v in &self.vertices[1..] {
            if v.x < x0 {
                x0 = v.x.clone();
            }
            if v.x > x1 {
                x1 = v.x.clone();
            }
            if v.y < y0 {
                y0 = v.y.clone();
            }
            if v.y > y1 {
                y1 = v.y.clone();
            }
        }
        Some((RatPoint::new(x0, y0), RatPoint::new(x1, y1)))
    }

    /// Largest distance between two vertices, as a float.
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for a in &self.vertices {
            for b in &self.vertices {
                let (ax, ay) = a.to_f64();
                let (bx, by) = b.to_f64();
                let d = libm::hypot(ax - bx, ay - by);
                if d > best {
                    best = d;
                }
            }
        }
        best
    }

    pub fn centroid_f64(&self) -> (f64, f64) {
        let n = self.vertices.len().max(1) as f64;
        let (mut sx, mut sy) = (0.0, 0.0);
        for v in &self.vertices {
            let (x, y) = v.to_f64();
            sx += x;
            sy += y;
        }
        (sx / n, sy / n)
    }

    /// Exact test that the interiors are disjoint (separating axis).
    pub fn interiors_disjoint(&self, other: &ConvexPolygon) -> bool {
        if self.is_empty() || other.is_empty() {
            return true;
        }
        if !bboxes_overlap(self, other) {
            return true;
        }
        for poly in [self, other] {
            for (p, q) in poly.edges() {
                let normal = (&q.y - &p.y, &p.x - &q.x);
                let (amin, amax) = project(self, &normal);
                let (bmin, bmax) = project(other, &normal);
                if amax <= bmin || bmax <= amin {
                    return true;
                }
            }
        }
        false
    }

    /// True when the boundaries share a segment of positive length.
    pub fn shares_edge(&self, other: &ConvexPolygon) -> bool {
        if !bboxes_touch(self, other) {
            return false;
        }
        for (p, q) in self.edges() {
            for (r, s) in other.edges() {
                if !cross(p, q, r).is_zero() || !cross(p, q, s).is_zero() {
                    continue;
                }
                let dir = q.sub(p);
                let t = |z: &RatPoint| dot_vec(&z.sub(p), &dir);
                let len = t(q);
                let (tr, ts) = (t(r), t(s));
                let (lo, hi) = if tr < ts { (tr, ts) } else { (ts, tr) };
                let lo = if lo > Rational::zero() {
                    lo
                } else {
                    Rational::zero()
                };
                let hi = if hi < len { hi } else { len };
                if hi > lo {
                    return true;
                }
            }
        }
        false
    }
}

fn project(poly: &ConvexPolygon, axis: &(Rational, Rational)) -> (Rational, Rational) {
    let mut it = poly
        .vertices
        .iter()
        .map(|v| &axis.0 * &v.x + &axis.1 * &v.y);
    let first = it.next().expect("non-empty polygon");
    let (mut lo, mut hi) = (first.clone(), first);
    for v in it {
        if v < lo {
            lo = v;
        } else if v > hi {
            hi = v;
        }
    }
    (lo, hi)
}

fn bboxes_touch(a: &ConvexPolygon, b: &ConvexPolygon) -> bool {
    match (a.bbox(), b.bbox()) {
        (Some((a0, a1)), Some((b0, b1))) => {
            a0.x <= b1.x && b0.x <= a1.x && a0.y <= b1.y && b0.y <= a1.y
        }
        _ => false,
    }
}

fn bboxes_overlap(a: &ConvexPolygon, b: &ConvexPolygon) -> bool {
    match (a.bbox(), b.bbox()) {
        (Some((a0, a1)), Some((b0, b1))) => {
            a0.x < b1.x && b0.x < a1.x && a0.y < b1.y && b0.y < a1.y
        }
        _ => false,
    }
}

/// Convex set described by half-planes that keep their open/closed flag,
/// together with the closure as a polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexRegion {
    pub planes: Vec<HalfPlane>,
    pub closure: ConvexPolygon,
}

impl ConvexRegion {
    /// Intersection of `planes` with the closed polygon `bound`.
    pub fn new(bound: &ConvexPolygon, planes: Vec<HalfPlane>) -> Self {
        let closure = bound.clip_all(planes.iter());
        let mut all = bound.half_planes();
        all.extend(planes);
        ConvexRegion {
            planes: all,
            closure,
        }
    }

    pub fn from_polygon(poly: ConvexPolygon) -> Self {
        ConvexRegion {
            planes: poly.half_planes(),
            closure: poly,
        }
    }

    /// `{(x, y) ∈ (0,1]² : x + y > 1}`, with its open hypotenuse.
    pub fn farey_triangle() -> Self {
        let one = || int(1);
        let z = Rational::zero;
        ConvexRegion {
            planes: vec![
                HalfPlane::new(one(), z(), one(), true).unwrap(),
                HalfPlane::new(z(), one(), one(), true).unwrap(),
                HalfPlane::new(-one(), -one(), -one(), false).unwrap(),
            ],
            closure: ConvexPolygon::farey_triangle(),
        }
    }

    pub fn contains(&self, p: &RatPoint) -> bool {
        self.planes.iter().all(|h| h.contains(p))
    }
}

/// Boundary of a union of polygons: counter-clockwise outer loops and
/// clockwise holes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outline {
    pub loops: Vec<Vec<RatPoint>>,
}

fn loop_signed_area2(lp: &[RatPoint]) -> Rational {
    let n = lp.len();
    let mut s = Rational::zero();
    for i in 0..n {
        let (p, q) = (&lp[i], &lp[(i + 1) % n]);
        s += &p.x * &q.y - &q.x * &p.y;
    }
    s
}

fn merge_collinear(mut lp: Vec<RatPoint>) -> Vec<RatPoint> {
    let mut changed = true;
    while changed && lp.len() >= 3 {
        changed = false;
        let n = lp.len();
        for i in 0..n {
            let a = &lp[(i + n - 1) % n];
            let b = &lp[i];
            let c = &lp[(i + 1) % n];
            let u = b.sub(a);
            let v = c.sub(b);
            if cross_vec(&u, &v).is_zero() && dot_vec(&u, &v).is_positive() {
                lp.remove(i);
                changed = true;
                break;
            }
        }
    }
    lp
}

// Canonical key of the line through p and q: the normal scaled so that its
// first non-zero coordinate is 1.
fn line_key(p: &RatPoint, q: &RatPoint) -> (Rational, Rational, Rational) {
    let mut a = &q.y - &p.y;
    let mut b = &p.x - &q.x;
    let s = if a.is_zero() { b.clone() } else { a.clone() };
    a /= &s;
    b /= &s;
    let c = &a * &p.x + &b * &p.y;
    (a, b, c)
}

impl Outline {
    /// Boundary of the union of interior-disjoint convex polygons, by exact
    /// cancellation of oppositely oriented edge fragments.
    pub fn union(tiles: &[ConvexPolygon]) -> Result<Outline> {
        for i in 0..tiles.len() {
            for j in i + 1..tiles.len() {
                if !tiles[i].interiors_disjoint(&tiles[j]) {
                    return Err(Error::Overlap {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(Self::union_unchecked(tiles))
    }

    /// As [`Outline::union`] without the pairwise overlap check.
    pub fn union_unchecked(tiles: &[ConvexPolygon]) -> Outline {
        // Per supporting line, signed coverage intervals along a parameter t.
        type Key = (Rational, Rational, Rational);
        let mut lines: BTreeMap<Key, Vec<(Rational, Rational, i32)>> = BTreeMap::new();
        for t in tiles {
            for (p, q) in t.edges() {
                let key = line_key(p, q);
                let vertical = key.1.is_zero();
                let (tp, tq) = if vertical {
                    (p.y.clone(), q.y.clone())
                } else {
                    (p.x.clone(), q.x.clone())
                };
                let entry = lines.entry(key).or_default();
                if tp < tq {
                    entry.push((tp, tq, 1));
                } else {
                    entry.push((tq, tp, -1));
                }
            }
        }
        let mut fragments: Vec<(RatPoint, RatPoint)> = Vec::new();
        for ((a, b, c), ivs) in lines {
            let vertical = b.is_zero();
            let at = |t: &Rational| -> RatPoint {
                if vertical {
                    RatPoint::new(&c / &a, t.clone())
                } else {
                    RatPoint::new(t.clone(), (&c - &a * t) / &b)
                }
            };
            let mut events: BTreeMap<Rational, i32> = BTreeMap::new();
            for (lo, hi, s) in ivs {
                *events.entry(lo).or_insert(0) += s;
                *events.entry(hi).or_insert(0) -= s;
            }
            let mut cov = 0i32;
            let mut prev: Option<Rational> = None;
            for (t, delta) in events {
                if let Some(t0) = prev.take() {
                    match cov.cmp(&0) {
                        Ordering::Greater => fragments.push((at(&t0), at(&t))),
                        Ordering::Less => fragments.push((at(&t), at(&t0))),
                        Ordering::Equal => {}
                    }
                }
                cov += delta;
                prev = Some(t);
            }
        }
        Outline {
            loops: stitch(fragments),
        }
    }

    pub fn area(&self) -> Rational {
        let mut s = Rational::zero();
        for lp in &self.loops {
            s += loop_signed_area2(lp);
        }
        s / int(2)
    }

    pub fn vertex_count(&self) -> usize {
        self.loops.iter().map(Vec::len).sum()
    }

    /// A single counter-clockwise loop whose every turn is a left turn.
    pub fn is_convex(&self) -> bool {
        if self.loops.len() != 1 {
            return false;
        }
        let lp = &self.loops[0];
        let n = lp.len();
        n >= 3 && (0..n).all(|i| cross(&lp[i], &lp[(i + 1) % n], &lp[(i + 2) % n]).is_positive())
    }

    pub fn reflect(&self) -> Outline {
        Outline {
            loops: self
                .loops
                .iter()
                .map(|lp| canonical_loop(lp.iter().rev().map(RatPoint::reflect).collect()))
                .collect(),
        }
    }

    pub fn locate(&self, p: &RatPoint) -> Location {
        for lp in &self.loops {
            let n = lp.len();
            for i in 0..n {
                let a = &lp[i];
                let b = &lp[(i + 1) % n];
                if a == p {
                    let prev = &lp[(i + n - 1) % n];
                    return Location::Vertex {
                        to_prev: prev.sub(p),
                        to_next: b.sub(p),
                    };
                }
                if on_segment(a, b, p) {
                    return Location::Edge;
                }
            }
        }
        if self.winding(p) != 0 {
            Location::Interior
        } else {
            Location::Outside
        }
    }

    fn winding(&self, p: &RatPoint) -> i32 {
        let mut w = 0;
        for lp in &self.loops {
            let n = lp.len();
            for i in 0..n {
                let a = &lp[i];
                let b = &lp[(i + 1) % n];
                if a.y <= p.y {
                    if b.y > p.y && cross(a, b, p).is_positive() {
                        w += 1;
                    }
                } else if b.y <= p.y && cross(a, b, p).is_negative() {
                    w -= 1;
                }
            }
        }
        w
    }

    /// Distinct vertices over all loops.
    pub fn points(&self) -> Vec<RatPoint> {
        let mut v: Vec<RatPoint> = self.loops.iter().flatten().cloned().collect();
        v.sort();
        v.dedup();
        v
    }
}

fn on_segment(a: &RatPoint, b: &RatPoint, p: &RatPoint) -> bool {
    if !cross(a, b, p).is_zero() {
        return false;
    }
    let d = b.sub(a);
    let t = dot_vec(&p.sub(a), &d);
    !t.is_negative() && t <= dot_vec(&d, &d)
}

fn canonical_loop(mut lp: Vec<RatPoint>) -> Vec<RatPoint> {
    if let Some(i) = lp
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(i, _)| i)
    {
        lp.rotate_left(i);
    }
    lp
}

// Angle-free ordering of directions by counter-clockwise turn from `base`.
// Returns a key that sorts the sharpest left turn first.
fn turn_key(base: &(Rational, Rational), d: &(Rational, Rational)) -> (u8, Rational) {
    let cr = cross_vec(base, d);
    let dt = dot_vec(base, d);
    let norm = dot_vec(d, d);
    // cos-like value with sign, squared to stay rational: dt|dt|/|d|².
    let cosq = &dt * dt.abs() / norm;
    if cr.is_positive() {
        // Left turns: larger turn angle = smaller cos.
        (0, cosq)
    } else if cr.is_zero() && dt.is_positive() {
        (1, Rational::zero())
    } else if cr.is_zero() {
        (3, Rational::zero())
    } else {
        (2, -cosq)
    }
}

fn stitch(fragments: Vec<(RatPoint, RatPoint)>) -> Vec<Vec<RatPoint>> {
    let mut out: BTreeMap<RatPoint, Vec<usize>> = BTreeMap::new();
    for (i, (a, _)) in fragments.iter().enumerate() {
        out.entry(a.clone()).or_default().push(i);
    }
    let mut used = vec![false; fragments.len()];
    let mut order: Vec<usize> = (0..fragments.len()).collect();
    order.sort_by(|&i, &j| fragments[i].cmp(&fragments[j]));
    let mut loops = Vec::new();
    for start in order {
        if used[start] {
            continue;
        }
        used[start] = true;
        let origin = fragments[start].0.clone();
        let mut lp = vec![origin.clone()];
        let mut cur = start;
        loop {
            let (a, b) = &fragments[cur];
            if *b == origin {
                break;
            }
            lp.push(b.clone());
            let dir_in = b.sub(a);
            let cands: Vec<usize> = out
                .get(b)
                .map(|v| v.iter().copied().filter(|&i| !used[i]).collect())
                .unwrap_or_default();
            let Some(&next) = cands.iter().min_by(|&&i, &&j| {
                let di = fragments[i].1.sub(b);
                let dj = fragments[j].1.sub(b);
                turn_key(&dir_in, &di).cmp(&turn_key(&dir_in, &dj))
            }) else {
                break;
            };
            used[next] = true;
            cur = next;
        }
        let lp = merge_collinear(lp);
        if lp.len() >= 3 {
            loops.push(canonical_loop(lp));
        }
    }
    loops.sort_by(|a, b| {
        let sa = loop_signed_area2(a);
        let sb = loop_signed_area2(b);
        sb.cmp(&sa).then_with(|| a.cmp(b))
    });
    loops
}

/// Largest distance from a vertex of either closed loop to the boundary of the other, in floating
/// point. Infinite when a loop is empty.
pub fn vertex_boundary_distance(a: &[RatPoint], b: &[RatPoint]) -> f64 {
    loops_boundary_distance(&[a.to_vec()], &[b.to_vec()])
}

/// As [`vertex_boundary_distance`] for boundaries made of several loops, such as an outline with
/// holes: every vertex is measured against the nearest edge of any loop of the other side.
pub fn loops_boundary_distance(a: &[Vec<RatPoint>], b: &[Vec<RatPoint>]) -> f64 {
    fn to_segment(p: (f64, f64), s: (f64, f64), t: (f64, f64)) -> f64 {
        let (dx, dy) = (t.0 - s.0, t.1 - s.1);
        let len2 = dx * dx + dy * dy;
        let u = if len2 == 0.0 {
            0.0
        } else {
            (((p.0 - s.0) * dx + (p.1 - s.1) * dy) / len2).clamp(0.0, 1.0)
        };
        libm::hypot(p.0 - s.0 - u * dx, p.1 - s.1 - u * dy)
    }
    fn directed(a: &[Vec<RatPoint>], b: &[Vec<RatPoint>]) -> f64 {
        let segs: Vec<((f64, f64), (f64, f64))> = b
            .iter()
            .flat_map(|lp| {
                let pts: Vec<(f64, f64)> = lp.iter().map(RatPoint::to_f64).collect();
                (0..pts.len()).map(move |i| (pts[i], pts[(i + 1) % pts.len()]))
            })
            .collect();
        a.iter()
            .flatten()
            .map(|p| {
                let p = p.to_f64();
                segs.iter().map(|&(s, t)| to_segment(p, s, t)).fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }
    if a.iter().all(Vec::is_empty) || b.iter().all(Vec::is_empty) {
        return f64::INFINITY;
    }
    directed(a, b).max(directed(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(a: i64, b: i64, c: i64, d: i64) -> RatPoint {
        RatPoint::from_fracs(a, b, c, d)
    }

    fn hp(a: i64, b: i64, c: i64) -> HalfPlane {
        HalfPlane::new(int(a), int(b), int(c), true).unwrap()
    }

    #[test]
    fn clip_square_to_half() {
        let sq = ConvexPolygon::unit_square();
        let t = sq.clip(&hp(1, 1, 1));
        assert_eq!(t.canonical().vertices(), ConvexPolygon::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap().canonical().vertices());
    }

    #[test]
    fn clip_farey_triangle() {
        let t = ConvexPolygon::farey_triangle();
        assert_eq!(t.clip(&hp(1, 0, 1)), t);
        // 2y − x ≥ 1
        let c = t.clip(&hp(1, -2, -1));
        let want = ConvexPolygon::from_fracs(&[(0, 1, 1, 1), (1, 1, 1, 1), (1, 3, 2, 3)]).unwrap();
        assert_eq!(c.canonical(), want.canonical());
        assert_eq!(c.area(), rat(1, 6));
    }

    #[test]
    fn areas() {
        assert_eq!(ConvexPolygon::farey_triangle().area(), rat(1, 2));
        assert_eq!(ConvexPolygon::unit_square().area(), int(1));
        assert_eq!(ConvexPolygon::empty().area(), int(0));
    }

    #[test]
    fn degenerate_clip_is_empty() {
        let sq = ConvexPolygon::unit_square();
        assert!(sq.clip(&hp(1, 0, 0)).is_empty());
        assert!(sq.clip(&hp(1, 1, 0)).is_empty());
    }

    #[test]
    fn affine_image_of_region_three() {
        let q = ConvexPolygon::from_fracs(&[(1, 2, 1, 2), (3, 5, 2, 5), (1, 1, 1, 2), (1, 1, 2, 3)]).unwrap();
        let img = q.affine_image(&BigInt::from(3), &BigInt::from(1));
        let want = ConvexPolygon::from_fracs(&[(1, 2, 1, 1), (3, 5, 3, 5), (1, 1, 1, 2), (1, 1, 1, 1)]).unwrap();
        assert_eq!(img.canonical(), want.canonical());
        assert_eq!(img.area(), q.area() * int(3));
        assert_eq!(q.affine_image(&BigInt::from(1), &BigInt::from(0)), q);
    }

    #[test]
    fn locate_in_triangle() {
        let t = ConvexPolygon::farey_triangle();
        assert_eq!(t.locate(&pt(1, 2, 3, 4)), Location::Interior);
        assert_eq!(t.locate(&pt(1, 2, 1, 2)), Location::Edge);
        assert_eq!(t.locate(&pt(1, 5, 1, 5)), Location::Outside);
        let v = t.locate(&RatPoint::from_ints(1, 1));
        assert_eq!(
            v,
            Location::Vertex {
                to_prev: (int(0), int(-1)),
                to_next: (int(-1), int(0)),
            }
        );
        assert!((v.weight() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn union_of_two_squares() {
        let a = ConvexPolygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        let b = ConvexPolygon::from_ints(&[(1, 0), (2, 0), (2, 1), (1, 1)]).unwrap();
        let o = Outline::union(&[a.clone(), b]).unwrap();
        assert_eq!(o.loops.len(), 1);
        assert_eq!(
            o.loops[0],
            vec![
                RatPoint::from_ints(0, 0),
                RatPoint::from_ints(2, 0),
                RatPoint::from_ints(2, 1),
                RatPoint::from_ints(0, 1)
            ]
        );
        let single = Outline::union(&[a.clone()]).unwrap();
        assert_eq!(single.loops, vec![a.vertices().to_vec()]);
    }

    #[test]
    fn union_with_t_junction() {
        // A 2×1 block on top of two unit squares: the long edge is split at (1,1).
        let a = ConvexPolygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        let b = ConvexPolygon::from_ints(&[(1, 0), (2, 0), (2, 1), (1, 1)]).unwrap();
        let c = ConvexPolygon::from_ints(&[(0, 1), (2, 1), (2, 2), (0, 2)]).unwrap();
        let o = Outline::union(&[a, b, c]).unwrap();
        assert_eq!(o.loops.len(), 1);
        assert_eq!(o.loops[0].len(), 4);
        assert_eq!(o.area(), int(4));
        assert!(o.is_convex());
    }

    #[test]
    fn union_with_hole_and_pinch() {
        // Ring of 8 unit squares around a hole.
        let mut sq = Vec::new();
        for (x, y) in [(0, 0), (1, 0), (2, 0), (0, 1), (2, 1), (0, 2), (1, 2), (2, 2)] {
            sq.push(ConvexPolygon::from_ints(&[(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]).unwrap());
        }
        let o = Outline::union(&sq).unwrap();
        assert_eq!(o.loops.len(), 2);
        assert_eq!(o.area(), int(8));
        assert_eq!(o.locate(&pt(3, 2, 3, 2)), Location::Outside);
        assert_eq!(o.locate(&pt(1, 2, 1, 2)), Location::Interior);

        // Two squares meeting at a corner give two loops.
        let a = ConvexPolygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        let b = ConvexPolygon::from_ints(&[(1, 1), (2, 1), (2, 2), (1, 2)]).unwrap();
        let o = Outline::union(&[a, b]).unwrap();
        assert_eq!(o.loops.len(), 2);
        assert!(o.loops.iter().all(|l| l.len() == 4));
    }

    #[test]
    fn overlap_is_reported() {
        let a = ConvexPolygon::from_ints(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap();
        let b = ConvexPolygon::from_ints(&[(1, 1), (3, 1), (3, 3), (1, 3)]).unwrap();
        assert!(matches!(Outline::union(&[a, b]), Err(Error::Overlap { .. })));
    }

    #[test]
    fn edge_sharing() {
        let a = ConvexPolygon::from_ints(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap();
        let b = ConvexPolygon::from_ints(&[(2, 1), (3, 1), (3, 3), (2, 3)]).unwrap();
        let c = ConvexPolygon::from_ints(&[(2, 2), (3, 2), (3, 3), (2, 3)]).unwrap();
        assert!(a.shares_edge(&b));
        assert!(!a.shares_edge(&c));
        assert!(a.interiors_disjoint(&c));
    }

    #[test]
    fn non_convex_input_rejected() {
        assert!(ConvexPolygon::from_ints(&[(0, 0), (2, 0), (1, 1), (2, 2), (0, 2)]).is_err());
    }

    #[test]
    fn hull_and_reflect() {
        let h = ConvexPolygon::hull(vec![
            RatPoint::from_ints(0, 0),
            RatPoint::from_ints(1, 0),
            RatPoint::from_ints(2, 0),
            RatPoint::from_ints(1, 1),
            RatPoint::from_ints(0, 2),
        ]);
        assert_eq!(h.len(), 3);
        assert_eq!(h.reflect().area(), h.area());
        assert_eq!(h.reflect().reflect(), h);
    }
}
