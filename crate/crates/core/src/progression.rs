//! Residue admissibility, Euler φ and coprime lattice counts in residue classes.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::continuants::IndexTuple;
use crate::error::{Error, Result};
use crate::farey::{ProgressionClass, TupleType};
use crate::geometry::ConvexRegion;
use crate::rational::{ceil, floor, int, rat, to_f64, Rational};

/// Default ceiling on the number of candidate lattice points examined.
pub const DEFAULT_LATTICE_BUDGET: u128 = 50_000_000;

/// Residues mod `d` of `q_{−1}, q_0, …, q_n` for the chain started by `(c, e)`.
pub fn residue_trace(k: &IndexTuple, c: u64, e: u64, d: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(k.order() + 2);
    let (mut a, mut b) = (c % d, e % d);
    out.push(a);
    out.push(b);
    for &kj in k.entries() {
        let next = ((kj % d) * b + d - a) % d;
        out.push(next);
        a = b;
        b = next;
    }
    out
}

/// Starting residues `e` for which the chain of `k` meets class `c` exactly at the pattern's positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleResidues {
    pub k: IndexTuple,
    pub pattern: TupleType,
    pub cls: ProgressionClass,
    pub residues: Vec<u64>,
}

impl AdmissibleResidues {
    pub fn multiplicity(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }
}

pub fn admissible_residues(k: &IndexTuple, pattern: &TupleType, cls: ProgressionClass) -> Result<AdmissibleResidues> {
    if k.order() != pattern.order() {
        return Err(Error::domain(alloc::format!(
            "tuple of order {} does not match a pattern of total {}",
            k.order(),
            pattern.total()
        )));
    }
    let (c, d) = (cls.c(), cls.d());
    let positions = pattern.positions();
    let mut residues = Vec::new();
    for e in 0..d {
        if c.gcd(&e).gcd(&d) != 1 {
            continue;
        }
        let trace = residue_trace(k, c, e, d);
        // trace[i] is the residue at position i − 1.
        let ok = (1..trace.len()).all(|i| {
            let selected = positions.contains(&(i as i64 - 1));
            (trace[i] == c) == selected
        });
        if ok {
            residues.push(e);
        }
    }
    Ok(AdmissibleResidues {
        k: k.clone(),
        pattern: pattern.clone(),
        cls,
        residues,
    })
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_divisors(n).iter().fold(n, |acc, p| acc / p * (p - 1))
}

/// `∏_{p | d} (1 − p^{−2})^{−1}`.
pub fn squarefree_factor(d: u64) -> Rational {
    prime_divisors(d).iter().fold(int(1), |acc, &p| {
        let p2 = (p * p) as i64;
        acc * rat(p2, p2 - 1)
    })
}

/// Main term of `#F^Q(c, d)`, kept as `coefficient · Q² / π²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalityPrediction {
    pub q: u64,
    pub cls: ProgressionClass,
    pub coefficient: Rational,
}

impl CardinalityPrediction {
    pub fn new(q: u64, cls: ProgressionClass) -> Self {
        let g = cls.g();
        let coefficient = int(3) * rat(euler_phi(g) as i64, (cls.d() * g) as i64) * squarefree_factor(cls.d());
        CardinalityPrediction { q, cls, coefficient }
    }

    pub fn main_term(&self) -> f64 {
        let q = self.q as f64;
        to_f64(&self.coefficient) * q * q / (core::f64::consts::PI * core::f64::consts::PI)
    }
}

/// `(3Q²/π²) · φ(g)/(d·g) · ∏_{p|d}(1 − p^{−2})^{−1}` with `g = gcd(c, d)`.
pub fn predicted_cardinality(q: u64, cls: ProgressionClass) -> f64 {
    CardinalityPrediction::new(q, cls).main_term()
}

/// Positive integer points `(m, n)` of `scale · region` with `m ≡ a`, `n ≡ b (mod d)` and
/// `gcd(m, n) = 1`, by enumeration. Open half-planes of the region are respected.
pub fn lattice_count_exact(region: &ConvexRegion, scale: u64, a: u64, b: u64, d: u64, budget: u128) -> Result<u64> {
    if scale == 0 || d == 0 {
        return Err(Error::domain("scale and modulus must be positive"));
    }
    let Some((lo, hi)) = region.closure.bbox() else {
        return Ok(0);
    };
    let s = int(scale as i64);
    let m0 = ceil(&(&lo.x * &s)).max(BigInt::from(1));
    let m1 = floor(&(&hi.x * &s));
    let n0 = ceil(&(&lo.y * &s)).max(BigInt::from(1));
    let n1 = floor(&(&hi.y * &s));
    if m1 < m0 || n1 < n0 {
        return Ok(0);
    }
    let width = (&m1 - &m0 + 1u32).to_u128().unwrap_or(u128::MAX);
    let height = (&n1 - &n0 + 1u32).to_u128().unwrap_or(u128::MAX);
    let points = width.saturating_mul(height);
    if points > budget {
        return Err(Error::Size { points, budget });
    }
    let (m0, m1) = (m0.to_i64().unwrap(), m1.to_i64().unwrap());
    let (n0, n1) = (n0.to_i64().unwrap(), n1.to_i64().unwrap());
    let d = d as i64;
    let (a, b) = (a as i64 % d, b as i64 % d);
    let scale = scale as i64;
    // Each half-plane a·x + b·y ≤ c scaled to integers: A·m + B·n ≤ C·scale.
    let planes: Vec<(Rational, Rational, Rational, bool)> = region
        .planes
        .iter()
        .map(|h| (h.a.clone(), h.b.clone(), &h.c * int(scale), h.closed))
        .collect();
    let mut count = 0u64;
    let mut m = m0 + (a - m0).rem_euclid(d);
    while m <= m1 {
        let mr = int(m);
        let mut lo = n0;
        let mut hi = n1;
        for (pa, pb, pc, closed) in &planes {
            let rhs = pc - pa * &mr;
            if pb.is_zero() {
                let ok = if *closed { !rhs.is_negative() } else { rhs.is_positive() };
                if !ok {
                    hi = lo - 1;
                }
                continue;
            }
            let bound = &rhs / pb;
            if pb.is_positive() {
                // n ≤ bound (or < bound)
                let mut f = floor(&bound).to_i64().unwrap_or(i64::MAX);
                if !closed && int(f) == bound {
                    f -= 1;
                }
                hi = hi.min(f);
            } else {
                let mut c = ceil(&bound).to_i64().unwrap_or(i64::MIN);
                if !closed && int(c) == bound {
                    c += 1;
                }
                lo = lo.max(c);
            }
        }
        if lo <= hi {
            let mut n = lo + (b - lo).rem_euclid(d);
            while n <= hi {
                if m.gcd(&n) == 1 {
                    count += 1;
                }
                n += d;
            }
        }
        m += d;
    }
    Ok(count)
}

/// `(6/(π² d²)) · ∏_{p|d}(1 − p^{−2})^{−1} · area · scale²`.
pub fn lattice_main_term(area_unit: &Rational, scale: u64, d: u64) -> f64 {
    let pi2 = core::f64::consts::PI * core::f64::consts::PI;
    let s = scale as f64;
    6.0 / (pi2 * (d * d) as f64) * to_f64(&squarefree_factor(d)) * to_f64(area_unit) * s * s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ConvexPolygon;
    use alloc::vec;

    fn t(v: &[u64]) -> IndexTuple {
        IndexTuple::new(v.to_vec()).unwrap()
    }

    #[test]
    fn traces() {
        assert_eq!(
            residue_trace(&t(&[1, 5, 1, 4, 1, 3, 2, 2, 2]), 1, 0, 5),
            vec![1, 0, 4, 0, 1, 4, 3, 0, 2, 4, 1]
        );
        assert_eq!(residue_trace(&IndexTuple::empty(), 1, 1, 5), vec![1, 1]);
        assert_eq!(residue_trace(&t(&[2]), 0, 1, 2), vec![0, 1, 0]);
    }

    #[test]
    fn admissibility() {
        let c15 = ProgressionClass::new(1, 5).unwrap();
        let m = admissible_residues(&t(&[1, 5, 1, 4, 1, 3, 2, 2, 2]), &TupleType::new(vec![4, 6]).unwrap(), c15).unwrap();
        assert!(m.residues.contains(&0));
        let single = TupleType::new(vec![1]).unwrap();
        let even = ProgressionClass::new(0, 2).unwrap();
        assert!(admissible_residues(&IndexTuple::empty(), &single, even).unwrap().is_empty());
        assert_eq!(admissible_residues(&IndexTuple::empty(), &single, c15).unwrap().residues, vec![1]);
        assert!(admissible_residues(&t(&[3]), &single, c15).is_err());
    }

    #[test]
    fn arithmetic_functions() {
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(5), 4);
        assert_eq!(squarefree_factor(12), rat(3, 2));
        assert_eq!(squarefree_factor(1), int(1));
        assert_eq!(prime_divisors(360), vec![2, 3, 5]);
    }

    #[test]
    fn predicted_cardinalities() {
        let v = predicted_cardinality(1000, ProgressionClass::new(1, 5).unwrap());
        assert!((v - 63325.7).abs() < 0.1, "{v}");
        assert_eq!(predicted_cardinality(0, ProgressionClass::new(1, 5).unwrap()), 0.0);
        // c = 0, d = 2: φ(2)/(2·2)·(4/3) = 1/3 of 3Q²/π².
        let p = CardinalityPrediction::new(10, ProgressionClass::new(0, 2).unwrap());
        assert_eq!(p.coefficient, int(1));
    }

    #[test]
    fn lattice_counts() {
        let sq = ConvexRegion::from_polygon(ConvexPolygon::unit_square());
        assert_eq!(lattice_count_exact(&sq, 10, 0, 0, 1, DEFAULT_LATTICE_BUDGET).unwrap(), 63);
        let empty = ConvexRegion::from_polygon(ConvexPolygon::empty());
        assert_eq!(lattice_count_exact(&empty, 10, 0, 0, 1, DEFAULT_LATTICE_BUDGET).unwrap(), 0);
        assert!(matches!(
            lattice_count_exact(&sq, 100_000, 0, 0, 1, 1000),
            Err(Error::Size { .. })
        ));
        // Farey triangle with its open hypotenuse: consecutive pairs of F^Q.
        let tri = ConvexRegion::farey_triangle();
        let q = 30;
        let pairs = crate::farey::farey_stream(q).count() as u64 - 1;
        assert_eq!(lattice_count_exact(&tri, q, 0, 0, 1, DEFAULT_LATTICE_BUDGET).unwrap(), pairs);
    }

    #[test]
    fn main_terms() {
        let v = lattice_main_term(&int(1), 100, 1);
        assert!((v - 6079.27).abs() < 0.01, "{v}");
        let v = lattice_main_term(&rat(1, 2), 100, 2);
        assert!((v - 1013.21).abs() < 0.01, "{v}");
        assert_eq!(lattice_main_term(&int(0), 100, 3), 0.0);
    }
}
