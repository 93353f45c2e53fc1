//! The limit density `g_1`, the first term of `g_s`, and the empirical side:
//! histograms of scaled consecutive denominators and support checks.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{ToPrimitive, Zero};

use crate::continuants::IndexTuple;
use crate::error::Result;
use crate::farey::{consecutive_tuples, ProgressionClass, TupleType};
use crate::geometry::{ConvexPolygon, HalfPlane, Location, RatPoint};
use crate::progression::{admissible_residues, euler_phi};
use crate::rational::{ceil, floor, int, rat, to_f64, Rational};
use crate::tiles::{enumerate_tiles, region, strip_core, strip_polygon, EnumerateOptions, KernelBound, Tile};

/// Kernel cap used when a query does not name one.
pub const DEFAULT_MAX_KERNEL: u64 = 100;

/// Which constant multiplies `|M_k| / kernel`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PrefactorRule {
    /// `2g / (d·φ(g))` with `g = gcd(c, d)`; the one that makes the density integrate to 1.
    #[default]
    Normalized,
    /// `2 / φ(d)`.
    Totient,
}

pub fn prefactor(cls: ProgressionClass, rule: PrefactorRule) -> Rational {
    match rule {
        PrefactorRule::Normalized => {
            let g = cls.g();
            rat(2 * g as i64, (cls.d() * euler_phi(g)) as i64)
        }
        PrefactorRule::Totient => rat(2, euler_phi(cls.d()) as i64),
    }
}

/// Constant density contributed by one tile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityLayerWeight {
    pub kernel: u64,
    pub multiplicity: usize,
    pub prefactor: Rational,
}

impl DensityLayerWeight {
    pub fn of(tile: &Tile, prefactor: &Rational) -> Self {
        DensityLayerWeight {
            kernel: tile.kernel_u64(),
            multiplicity: tile.multiplicity(),
            prefactor: prefactor.clone(),
        }
    }

    pub fn contribution(&self) -> Rational {
        &self.prefactor * int(self.multiplicity as i64) / int(self.kernel as i64)
    }
}

/// Point and truncation parameters of a density evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityQuery {
    /// `(x⁰_0, …, x⁰_s)`; two coordinates for `g_1`.
    pub point: Vec<Rational>,
    pub cls: ProgressionClass,
    pub max_order: usize,
    pub max_kernel: u64,
    pub rule: PrefactorRule,
}

impl DensityQuery {
    pub fn planar(p: &RatPoint, cls: ProgressionClass, max_order: usize) -> Self {
        DensityQuery {
            point: vec![p.x.clone(), p.y.clone()],
            cls,
            max_order,
            max_kernel: DEFAULT_MAX_KERNEL,
            rule: PrefactorRule::default(),
        }
    }

    pub fn with_max_kernel(mut self, k: u64) -> Self {
        self.max_kernel = k;
        self
    }

    pub fn with_rule(mut self, rule: PrefactorRule) -> Self {
        self.rule = rule;
        self
    }

    fn xy(&self) -> RatPoint {
        RatPoint::new(self.point[0].clone(), self.point[1].clone())
    }
}

/// Most degenerate incidence of the point with the tiles that contain it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Generic,
    OnEdge,
    OnVertex,
    Outside,
}

/// Enumerated tiles with their layer weights, reusable across evaluations.
#[derive(Debug, Clone)]
pub struct DensityModel {
    pub cls: ProgressionClass,
    pub prefactor: Rational,
    pub tiles: Vec<Tile>,
    weights: Vec<f64>,
}

impl DensityModel {
    pub fn new(cls: ProgressionClass, max_order: usize, max_kernel: u64, rule: PrefactorRule) -> Result<Self> {
        let tiles = enumerate_tiles(cls, EnumerateOptions::new(max_order, KernelBound::AtMost(max_kernel)))?;
        Ok(Self::from_tiles(cls, tiles, rule))
    }

    pub fn from_tiles(cls: ProgressionClass, tiles: Vec<Tile>, rule: PrefactorRule) -> Self {
        let prefactor = prefactor(cls, rule);
        let weights = tiles
            .iter()
            .map(|t| to_f64(&DensityLayerWeight::of(t, &prefactor).contribution()))
            .collect();
        DensityModel {
            cls,
            prefactor,
            tiles,
            weights,
        }
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    /// `Σ` weight × incidence share over tiles containing the point.
    pub fn g1(&self, p: &RatPoint) -> (f64, Classification) {
        let mut value = 0.0;
        let mut worst = Location::Outside;
        for (t, w) in self.tiles.iter().zip(&self.weights) {
            let loc = t.poly.locate(p);
            if loc == Location::Outside {
                continue;
            }
            value += w * loc.weight();
            if loc.more_degenerate_than(&worst) {
                worst = loc;
            }
        }
        let class = match worst {
            Location::Outside => Classification::Outside,
            Location::Interior => Classification::Generic,
            Location::Edge => Classification::OnEdge,
            Location::Vertex { .. } => Classification::OnVertex,
        };
        (value, class)
    }

    /// Integral of the truncated density over the plane, exactly.
    pub fn total_mass(&self) -> Rational {
        let mut s = Rational::zero();
        for t in &self.tiles {
            s += DensityLayerWeight::of(t, &self.prefactor).contribution() * t.poly.area();
        }
        s
    }

    /// Mass of the truncated density inside a convex polygon.
    pub fn mass_in(&self, window: &ConvexPolygon) -> f64 {
        let Some((lo, hi)) = window.bbox() else {
            return 0.0;
        };
        let mut s = 0.0;
        for (t, w) in self.tiles.iter().zip(&self.weights) {
            let Some((tlo, thi)) = t.poly.bbox() else { continue };
            if thi.x <= lo.x || tlo.x >= hi.x || thi.y <= lo.y || tlo.y >= hi.y {
                continue;
            }
            s += w * to_f64(&t.poly.intersect(window).area());
        }
        s
    }

    /// Closed union of the tiles contains `p`.
    pub fn covers(&self, p: &RatPoint) -> bool {
        self.tiles.iter().any(|t| t.poly.contains_closed(p))
    }
}

/// `g_1` at the query point from tiles of order ≤ `max_order` and kernel ≤ `max_kernel`.
pub fn g1_eval(q: &DensityQuery) -> Result<(f64, Classification)> {
    let model = DensityModel::new(q.cls, q.max_order, q.max_kernel, q.rule)?;
    Ok(model.g1(&q.xy()))
}

/// Contribution of one tuple to the first term of `g_s`: nonzero only when the strip
/// centre lines meet in a core lying strictly inside the region of `k`.
pub fn gs_first_term(q: &DensityQuery, r: &TupleType, k: &IndexTuple) -> Result<f64> {
    let Some(core) = strip_core(k, r, &q.point)? else {
        return Ok(0.0);
    };
    if region(k).poly.locate(&core) != Location::Interior {
        return Ok(0.0);
    }
    let m = admissible_residues(k, r, q.cls)?;
    if m.is_empty() {
        return Ok(0.0);
    }
    let area = strip_polygon(k, r, &q.point)?.area();
    let v = prefactor(q.cls, q.rule) * int(m.multiplicity() as i64) * area / int(4);
    Ok(to_f64(&v))
}

/// Counts of scaled consecutive pairs `(q_0/Q, q_1/Q)` on a `B × B` grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalHistogram {
    pub q: u64,
    pub cls: ProgressionClass,
    pub bins: usize,
    /// Row-major by x bin: `counts[i * bins + j]` holds `x ∈ [i/B, (i+1)/B)`, `y ∈ [j/B, (j+1)/B)`.
    pub counts: Vec<u64>,
    pub total: u64,
}

impl EmpiricalHistogram {
    pub fn bin_index(&self, q0: u64, q1: u64) -> (usize, usize) {
        let b = self.bins as u64;
        let i = ((q0 * b) / self.q).min(b - 1) as usize;
        let j = ((q1 * b) / self.q).min(b - 1) as usize;
        (i, j)
    }

    pub fn count(&self, i: usize, j: usize) -> u64 {
        self.counts[i * self.bins + j]
    }

    pub fn bin_rect(&self, i: usize, j: usize) -> ConvexPolygon {
        let b = self.bins as i64;
        ConvexPolygon::rectangle(rat(i as i64, b), rat(j as i64, b), rat(i as i64 + 1, b), rat(j as i64 + 1, b))
    }
}

pub fn empirical_histogram(q: u64, cls: ProgressionClass, bins: usize) -> EmpiricalHistogram {
    let bins = bins.max(1);
    let mut h = EmpiricalHistogram {
        q,
        cls,
        bins,
        counts: vec![0; bins * bins],
        total: 0,
    };
    for (pair, _) in consecutive_tuples(q, cls, 1) {
        let (i, j) = h.bin_index(pair[0], pair[1]);
        h.counts[i * bins + j] += 1;
        h.total += 1;
    }
    h
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    /// `Σ |empirical − theoretical|` over bins whose corners all lie in the support.
    pub l1: f64,
    /// Largest `|empirical / theoretical − 1|` over those bins.
    pub max_ratio_deviation: f64,
    pub interior_bins: usize,
    /// Total mass of the truncated theoretical density.
    pub theoretical_mass: f64,
    /// `(i, j, empirical, theoretical)` for every bin with either side positive.
    pub bins: Vec<(usize, usize, f64, f64)>,
}

pub fn compare(hist: &EmpiricalHistogram, model: &DensityModel) -> ComparisonReport {
    let b = hist.bins;
    let total = hist.total.max(1) as f64;
    let theo = bin_masses(model, b);
    let covered = covered_grid_points(model, b);
    let corner = |i: usize, j: usize| covered[i * (b + 1) + j];
    let mut l1 = 0.0;
    let mut worst = 0.0f64;
    let mut interior = 0;
    let mut bins = Vec::new();
    for i in 0..b {
        for j in 0..b {
            let t = theo[i * b + j];
            let emp = hist.count(i, j) as f64 / total;
            if t > 0.0 || emp > 0.0 {
                bins.push((i, j, emp, t));
            }
            if corner(i, j) && corner(i + 1, j) && corner(i, j + 1) && corner(i + 1, j + 1) {
                interior += 1;
                l1 += (emp - t).abs();
                if t > 0.0 {
                    worst = worst.max((emp / t - 1.0).abs());
                }
            }
        }
    }
    ComparisonReport {
        l1,
        max_ratio_deviation: worst,
        interior_bins: interior,
        theoretical_mass: to_f64(&model.total_mass()),
        bins,
    }
}

fn vertical(v: Rational, below: bool) -> HalfPlane {
    if below {
        HalfPlane::new(int(1), int(0), v, true).expect("nonzero normal")
    } else {
        HalfPlane::new(int(-1), int(0), -v, true).expect("nonzero normal")
    }
}

fn horizontal(v: Rational, below: bool) -> HalfPlane {
    if below {
        HalfPlane::new(int(0), int(1), v, true).expect("nonzero normal")
    } else {
        HalfPlane::new(int(0), int(-1), -v, true).expect("nonzero normal")
    }
}

// Grid cell range `[lo, hi]` touched by the interval `[a, b]` of the unit interval.
fn cell_range(a: &Rational, b: &Rational, bins: usize) -> (usize, usize) {
    let n = int(bins as i64);
    let last = bins as i64 - 1;
    let lo = floor(&(a * &n)).to_i64().unwrap_or(0).clamp(0, last);
    let hi = ceil(&(b * &n)).to_i64().unwrap_or(last + 1).saturating_sub(1).clamp(lo, last);
    (lo as usize, hi as usize)
}

/// Weighted area of every tile in each cell of the `B × B` grid on the unit square, by cutting
/// each tile into columns and then rows.
fn bin_masses(model: &DensityModel, bins: usize) -> Vec<f64> {
    let mut out = vec![0.0; bins * bins];
    let n = bins as i64;
    for (t, w) in model.tiles.iter().zip(&model.weights) {
        let Some((lo, hi)) = t.poly.bbox() else { continue };
        let (i0, i1) = cell_range(&lo.x, &hi.x, bins);
        let (j0, j1) = cell_range(&lo.y, &hi.y, bins);
        let mut rest = t.poly.clone();
        for i in i0..=i1 {
            let edge = rat(i as i64 + 1, n);
            let column = if i == i1 { rest.clone() } else { rest.clip(&vertical(edge.clone(), true)) };
            if i < i1 {
                rest = rest.clip(&vertical(edge, false));
            }
            let mut col_rest = column;
            for j in j0..=j1 {
                if col_rest.is_empty() {
                    break;
                }
                let edge = rat(j as i64 + 1, n);
                let cell = if j == j1 { col_rest.clone() } else { col_rest.clip(&horizontal(edge.clone(), true)) };
                if j < j1 {
                    col_rest = col_rest.clip(&horizontal(edge, false));
                }
                if !cell.is_empty() {
                    out[i * bins + j] += w * to_f64(&cell.area());
                }
            }
        }
    }
    out
}

/// `(B+1)²` grid points `(i/B, j/B)`, row-major by `i`, flagged when some tile contains them.
fn covered_grid_points(model: &DensityModel, bins: usize) -> Vec<bool> {
    let side = bins + 1;
    let mut out = vec![false; side * side];
    let n = int(bins as i64);
    for t in &model.tiles {
        let Some((lo, hi)) = t.poly.bbox() else { continue };
        let i0 = ceil(&(&lo.x * &n)).to_i64().unwrap_or(0).max(0) as usize;
        let i1 = (floor(&(&hi.x * &n)).to_i64().unwrap_or(0).max(-1) + 1) as usize;
        let j0 = ceil(&(&lo.y * &n)).to_i64().unwrap_or(0).max(0) as usize;
        let j1 = (floor(&(&hi.y * &n)).to_i64().unwrap_or(0).max(-1) + 1) as usize;
        for i in i0..i1.min(side) {
            for j in j0..j1.min(side) {
                if out[i * side + j] {
                    continue;
                }
                let p = RatPoint::new(rat(i as i64, bins as i64), rat(j as i64, bins as i64));
                if t.poly.contains_closed(&p) {
                    out[i * side + j] = true;
                }
            }
        }
    }
    out
}

/// A scaled pair outside the support, with its Euclidean distance to it.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub q0: u64,
    pub q1: u64,
    pub distance: f64,
}

fn distance_to_polygon(p: (f64, f64), poly: &ConvexPolygon) -> f64 {
    let v: Vec<(f64, f64)> = poly.vertices().iter().map(RatPoint::to_f64).collect();
    let n = v.len();
    let mut best = f64::INFINITY;
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let len2 = dx * dx + dy * dy;
        let t = if len2 > 0.0 {
            (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let (cx, cy) = (a.0 + t * dx, a.1 + t * dy);
        best = best.min(libm::hypot(p.0 - cx, p.1 - cy));
    }
    best
}

/// Every consecutive pair of `F^Q(c, d)`, scaled by `1/Q`, tested exactly against the closed
/// union of `support`. Nothing is tested when `Q < d`.
pub fn support_membership(q: u64, cls: ProgressionClass, support: &[ConvexPolygon]) -> Vec<Violation> {
    let mut out = Vec::new();
    if q < cls.d() {
        return out;
    }
    for (pair, _) in consecutive_tuples(q, cls, 1) {
        let p = RatPoint::new(rat(pair[0] as i64, q as i64), rat(pair[1] as i64, q as i64));
        if support.iter().any(|s| s.contains_closed(&p)) {
            continue;
        }
        let pf = p.to_f64();
        let distance = support
            .iter()
            .map(|s| distance_to_polygon(pf, s))
            .fold(f64::INFINITY, f64::min);
        out.push(Violation {
            q0: pair[0],
            q1: pair[1],
            distance,
        });
    }
    out
}
