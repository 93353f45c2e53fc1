//! Regions `T_k`, their tiles under the choice map, strip polygons and the
//! depth-first enumeration of admissible tiles.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::continuants::{continuant, continuant_shifted, IndexTuple};
use crate::error::{Error, Result};
use crate::farey::{ProgressionClass, TupleType};
use crate::geometry::{ConvexPolygon, ConvexRegion, HalfPlane, RatPoint};
use crate::progression::{admissible_residues, AdmissibleResidues};
use crate::rational::{big, int, Rational};

/// Default ceiling on the number of visited nodes during enumeration.
pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

/// Linear form `A·y − B·x` in the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Form {
    a: BigInt,
    b: BigInt,
}

impl Form {
    fn minus1() -> Self {
        Form {
            a: BigInt::zero(),
            b: BigInt::from(-1),
        }
    }

    fn zero() -> Self {
        Form {
            a: BigInt::from(1),
            b: BigInt::zero(),
        }
    }

    fn next(&self, prev: &Form, m: u64) -> Form {
        let m = BigInt::from(m);
        Form {
            a: &m * &self.a - &prev.a,
            b: &m * &self.b - &prev.b,
        }
    }

    fn eval(&self, p: &RatPoint) -> Rational {
        big(&self.a) * &p.y - big(&self.b) * &p.x
    }
}

// The two faces of `k_{j} = m`: `m·x_{j−1} − x_{j−2} ≤ 1` (closed) and
// `(m+1)·x_{j−1} − x_{j−2} > 1` (open), with `prev = x_{j−2}`, `cur = x_{j−1}`.
fn index_faces(prev: &Form, cur: &Form, m: u64) -> [HalfPlane; 2] {
    let lower = cur.next(prev, m);
    let upper = cur.next(prev, m + 1);
    [
        HalfPlane::from_ints(-lower.b, lower.a, 1, true),
        HalfPlane::from_ints(upper.b, -upper.a, -1, false),
    ]
}

/// Closure of the set of generators whose index tuple starts with `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub k: IndexTuple,
    pub poly: ConvexPolygon,
    /// Every face with its open/closed flag, including those of the Farey triangle.
    pub planes: Vec<HalfPlane>,
}

impl Region {
    pub fn area(&self) -> Rational {
        self.poly.area()
    }

    /// Membership with the half-open faces honoured.
    pub fn contains(&self, p: &RatPoint) -> bool {
        self.planes.iter().all(|h| h.contains(p))
    }

    pub fn as_convex_region(&self) -> ConvexRegion {
        ConvexRegion {
            planes: self.planes.clone(),
            closure: self.poly.clone(),
        }
    }
}

pub fn region(k: &IndexTuple) -> Region {
    let tri = ConvexRegion::farey_triangle();
    let mut planes = tri.planes;
    let mut poly = tri.closure;
    let (mut prev, mut cur) = (Form::minus1(), Form::zero());
    for &m in k.entries() {
        for h in index_faces(&prev, &cur, m) {
            poly = poly.clip(&h);
            planes.push(h);
        }
        let next = cur.next(&prev, m);
        prev = cur;
        cur = next;
    }
    Region {
        k: k.clone(),
        poly,
        planes,
    }
}

/// Image of a region under `(x, y) ↦ (x, x_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    pub k: IndexTuple,
    pub pattern: TupleType,
    pub poly: ConvexPolygon,
    pub kernel: BigInt,
    pub residues: AdmissibleResidues,
    /// Closure of the region `T_k` the tile comes from.
    pub region: ConvexPolygon,
}

impl Tile {
    pub fn order(&self) -> usize {
        self.k.order()
    }

    pub fn multiplicity(&self) -> usize {
        self.residues.multiplicity()
    }

    pub fn kernel_u64(&self) -> u64 {
        self.kernel.to_u64().unwrap_or(u64::MAX)
    }
}

/// The tile of `k` for class `cls`, or `None` when the region has no area or no residue is admissible.
pub fn tile(k: &IndexTuple, pattern: &TupleType, cls: ProgressionClass) -> Result<Option<Tile>> {
    let residues = admissible_residues(k, pattern, cls)?;
    let reg = region(k);
    if reg.poly.is_empty() || residues.is_empty() {
        return Ok(None);
    }
    let kernel = k.kernel();
    let poly = reg.poly.affine_image(&kernel, &k.cokernel());
    Ok(Some(Tile {
        k: k.clone(),
        pattern: pattern.clone(),
        poly,
        kernel,
        residues,
        region: reg.poly,
    }))
}

/// Intersection of the `s + 1` strips of half-width 1 around `anchor`, unclipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripPolygon {
    pub k: IndexTuple,
    pub pattern: TupleType,
    pub anchor: Vec<Rational>,
    pub poly: ConvexPolygon,
}

impl StripPolygon {
    pub fn area(&self) -> Rational {
        self.poly.area()
    }
}

// Coefficients (P, P') of the selected linear form x_{R−1} = P·y − P'·x for each
// partial sum R of the pattern.
fn strip_forms(k: &IndexTuple, pattern: &TupleType) -> Result<Vec<(BigInt, BigInt)>> {
    let mut out = Vec::with_capacity(pattern.s());
    let mut acc = 0i64;
    for &r in pattern.gaps() {
        acc += r as i64;
        let j = acc - 1;
        let p = continuant(k, j)?;
        let pp = if j == 0 {
            BigInt::zero()
        } else {
            continuant_shifted(k, 2, j - 1)?
        };
        out.push((p, pp));
    }
    Ok(out)
}

pub fn strip_polygon(k: &IndexTuple, pattern: &TupleType, anchor: &[Rational]) -> Result<StripPolygon> {
    if k.order() != pattern.order() {
        return Err(Error::domain("tuple order does not match the pattern"));
    }
    if anchor.len() != pattern.s() + 1 {
        return Err(Error::domain("anchor needs s + 1 coordinates"));
    }
    let forms = strip_forms(k, pattern)?;
    let Some((p, pp)) = forms.iter().rev().find(|(p, _)| !p.is_zero()) else {
        return Err(Error::domain("all selected continuants vanish; strips are unbounded"));
    };
    // Bounding box that certainly contains the x-strip intersected with one bounded strip.
    let one = int(1);
    let x0 = &anchor[0];
    let xs_max = anchor.iter().map(|a| a.abs()).max().unwrap() + &one;
    let bound = (xs_max.clone() + big(&pp.abs()) * (x0.abs() + &one)) / big(&p.abs()) + &one;
    let mut poly = ConvexPolygon::rectangle(x0 - &one, -bound.clone(), x0 + &one, bound);
    for (i, (p, pp)) in forms.iter().enumerate() {
        let a = &anchor[i + 1];
        let (pr, ppr) = (big(p), big(pp));
        if p.is_zero() && pp.is_zero() {
            if a.abs() >= one {
                poly = ConvexPolygon::empty();
            }
            continue;
        }
        // a − 1 ≤ P·y − P'·x ≤ a + 1
        poly = poly.clip(&HalfPlane::new(-ppr.clone(), pr.clone(), a + &one, true)?);
        poly = poly.clip(&HalfPlane::new(ppr, -pr, -(a - &one), true)?);
    }
    Ok(StripPolygon {
        k: k.clone(),
        pattern: pattern.clone(),
        anchor: anchor.to_vec(),
        poly,
    })
}

/// Preimage of `target` under the choice map of an order-`n` tuple, `s = 1`.
pub fn core_point(k: &IndexTuple, pattern: &TupleType, target: &RatPoint) -> Result<RatPoint> {
    if pattern.s() != 1 || k.order() != pattern.order() {
        return Err(Error::domain("core_point needs s = 1 and a matching pattern"));
    }
    let p = k.kernel();
    if p.is_zero() {
        return Err(Error::domain("vanishing kernel"));
    }
    let y = (big(&k.cokernel()) * &target.x + &target.y) / big(&p);
    Ok(RatPoint::new(target.x.clone(), y))
}

/// Common point of all strip centre lines, if they meet in one point.
pub fn strip_core(k: &IndexTuple, pattern: &TupleType, anchor: &[Rational]) -> Result<Option<RatPoint>> {
    if anchor.len() != pattern.s() + 1 || k.order() != pattern.order() {
        return Err(Error::domain("anchor or pattern does not match the tuple"));
    }
    let forms = strip_forms(k, pattern)?;
    let (p, pp) = forms.last().unwrap();
    if p.is_zero() {
        return Ok(None);
    }
    let x = anchor[0].clone();
    let y = (big(pp) * &x + &anchor[pattern.s()]) / big(p);
    for (i, (p, pp)) in forms.iter().enumerate() {
        if big(p) * &y - big(pp) * &x != anchor[i + 1] {
            return Ok(None);
        }
    }
    Ok(Some(RatPoint::new(x, y)))
}

/// Which kernels an enumeration keeps. Kernels grow without bound along every
/// infinite branch, so an upper bound is what makes the search finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelBound {
    Exactly(u64),
    AtMost(u64),
}

impl KernelBound {
    fn max(&self) -> u64 {
        match *self {
            KernelBound::Exactly(k) | KernelBound::AtMost(k) => k,
        }
    }

    fn accepts(&self, kernel: &BigInt) -> bool {
        match *self {
            KernelBound::Exactly(k) => *kernel == BigInt::from(k),
            KernelBound::AtMost(k) => *kernel <= BigInt::from(k) && kernel.is_positive(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub max_order: usize,
    pub kernel: KernelBound,
    pub budget: usize,
}

impl EnumerateOptions {
    pub fn new(max_order: usize, kernel: KernelBound) -> Self {
        EnumerateOptions {
            max_order,
            kernel,
            budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }
}

struct Node {
    k: IndexTuple,
    poly: ConvexPolygon,
    prev: Form,
    cur: Form,
    // (e, residue of x_{n−1}, residue of x_n) for residues whose chain has not met c yet.
    alive: Vec<(u64, u64, u64)>,
}

/// All admissible `s = 1` tiles with order at most `max_order` and kernel within the bound,
/// sorted by `k`.
pub fn enumerate_tiles(cls: ProgressionClass, opts: EnumerateOptions) -> Result<Vec<Tile>> {
    Ok(enumerate_with_stats(cls, opts)?.0)
}

/// As [`enumerate_tiles`], also returning the number of visited nodes.
pub fn enumerate_with_stats(cls: ProgressionClass, opts: EnumerateOptions) -> Result<(Vec<Tile>, usize)> {
    let (c, d) = (cls.c(), cls.d());
    let kmax = int(opts.kernel.max() as i64);
    let start: Vec<(u64, u64, u64)> = (0..d)
        .filter(|&e| num_integer::gcd(num_integer::gcd(c, e), d) == 1)
        .map(|e| (e, c, e))
        .collect();
    let mut stack = vec![Node {
        k: IndexTuple::empty(),
        poly: ConvexPolygon::farey_triangle(),
        prev: Form::minus1(),
        cur: Form::zero(),
        alive: start,
    }];
    let mut tiles = Vec::new();
    let mut nodes = 0usize;
    while let Some(node) = stack.pop() {
        nodes += 1;
        if nodes > opts.budget {
            return Err(Error::Budget { budget: opts.budget });
        }
        let n = node.k.order();
        let mut admissible: Vec<u64> = node.alive.iter().filter(|a| a.2 == c).map(|a| a.0).collect();
        if !admissible.is_empty() && opts.kernel.accepts(&node.cur.a) {
            admissible.sort_unstable();
            let pattern = TupleType::single(n);
            tiles.push(Tile {
                poly: node.poly.affine_image(&node.cur.a, &node.cur.b),
                kernel: node.cur.a.clone(),
                residues: AdmissibleResidues {
                    k: node.k.clone(),
                    pattern: pattern.clone(),
                    cls,
                    residues: admissible,
                },
                pattern,
                region: node.poly.clone(),
                k: node.k.clone(),
            });
        }
        let still: Vec<(u64, u64, u64)> = node.alive.iter().copied().filter(|a| a.2 != c).collect();
        if still.is_empty() || n >= opts.max_order {
            continue;
        }
        let mut m = 1u64;
        loop {
            // Children with this m or larger live where x_n ≤ 2/m; there every
            // later kernel is at least x/x_n ≥ x_min·m/2.
            let near = node.poly.clip(&HalfPlane::new(
                -big(&node.cur.b),
                big(&node.cur.a),
                Rational::new(BigInt::from(2), BigInt::from(m)),
                true,
            )?);
            if near.is_empty() {
                break;
            }
            let xmin = near.vertices().iter().map(|v| &v.x).min().unwrap().clone();
            if xmin * int(m as i64) / int(2) > kmax {
                break;
            }
            let mut child = node.poly.clone();
            for h in index_faces(&node.prev, &node.cur, m) {
                child = child.clip(&h);
                if child.is_empty() {
                    break;
                }
            }
            if !child.is_empty() {
                let next = node.cur.next(&node.prev, m);
                if opts.kernel.accepts(&next.a) || descendants_may_fit(&child, &next, &kmax) {
                    let alive = still
                        .iter()
                        .map(|&(e, rp, rc)| (e, rc, ((m % d) * rc + d - rp) % d))
                        .collect();
                    stack.push(Node {
                        k: node.k.extended(m),
                        poly: child,
                        prev: node.cur.clone(),
                        cur: next,
                        alive,
                    });
                }
            }
            m += 1;
        }
    }
    tiles.sort_by(|a, b| a.k.cmp(&b.k));
    Ok((tiles, nodes))
}

// Kernels strictly below the node are at least min over the region of x/x_n.
fn descendants_may_fit(poly: &ConvexPolygon, cur: &Form, kmax: &Rational) -> bool {
    poly.vertices().iter().any(|v| {
        let xn = cur.eval(v);
        xn.is_positive() && &v.x / xn <= *kmax
    })
}
