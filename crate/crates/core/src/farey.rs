//! Streams of `F^Q` and `F^Q(c, d)` and consecutive-denominator tuples.

use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::continuants::index_sequence_int;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FareyFraction {
    pub a: u64,
    pub q: u64,
}

impl fmt::Display for FareyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.q)
    }
}

/// Residue class `c (mod d)` with `d ≥ 2` and `0 ≤ c < d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProgressionClass {
    c: u64,
    d: u64,
}

impl ProgressionClass {
    pub fn new(c: u64, d: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::domain("modulus d must be at least 2"));
        }
        if c >= d {
            return Err(Error::domain("residue c must satisfy 0 ≤ c < d"));
        }
        Ok(ProgressionClass { c, d })
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn contains(&self, q: u64) -> bool {
        q % self.d == self.c
    }

    /// `gcd(c, d)`, which is `d` when `c = 0`.
    pub fn g(&self) -> u64 {
        self.c.gcd(&self.d)
    }
}

impl fmt::Display for ProgressionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.c, self.d)
    }
}

/// Gap pattern `r = (r_1, …, r_s)` of a tuple of consecutive class members.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TupleType(Vec<u64>);

impl TupleType {
    pub fn new(r: Vec<u64>) -> Result<Self> {
        if r.is_empty() || r.contains(&0) {
            return Err(Error::domain("a tuple type needs s ≥ 1 positive gaps"));
        }
        Ok(TupleType(r))
    }

    /// The single-gap pattern `(n + 1)` of an order-`n` tuple.
    pub fn single(order: usize) -> Self {
        TupleType(alloc::vec![order as u64 + 1])
    }

    pub fn gaps(&self) -> &[u64] {
        &self.0
    }

    pub fn s(&self) -> usize {
        self.0.len()
    }

    /// `|r| = r_1 + … + r_s`.
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Order of the index tuples that carry this pattern, `|r| − 1`.
    pub fn order(&self) -> usize {
        self.total() as usize - 1
    }

    /// Chain positions `−1, −1 + r_1, …, −1 + |r|`.
    pub fn positions(&self) -> Vec<i64> {
        let mut out = alloc::vec![-1i64];
        let mut acc = -1i64;
        for &r in &self.0 {
            acc += r as i64;
            out.push(acc);
        }
        out
    }
}

impl fmt::Display for TupleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

/// `F^Q` in ascending order, `0/1` through `1/1`, with constant state.
#[derive(Debug, Clone)]
pub struct FareyStream {
    q: u64,
    prev: Option<FareyFraction>,
    cur: Option<FareyFraction>,
}

pub fn farey_stream(q: u64) -> FareyStream {
    FareyStream {
        q,
        prev: None,
        cur: if q >= 1 {
            Some(FareyFraction { a: 0, q: 1 })
        } else {
            None
        },
    }
}

impl Iterator for FareyStream {
    type Item = FareyFraction;

    fn next(&mut self) -> Option<FareyFraction> {
        let cur = self.cur?;
        let next = match self.prev {
            None => Some(FareyFraction { a: 1, q: self.q }),
            Some(_) if cur.a == 1 && cur.q == 1 => None,
            Some(p) => {
                let k = (self.q + p.q) / cur.q;
                Some(FareyFraction {
                    a: k * cur.a - p.a,
                    q: k * cur.q - p.q,
                })
            }
        };
        self.prev = Some(cur);
        self.cur = next;
        Some(cur)
    }
}

/// Members of `F^Q` whose denominator lies in `cls`.
pub fn farey_filtered(q: u64, cls: ProgressionClass) -> impl Iterator<Item = FareyFraction> {
    farey_stream(q).filter(move |f| cls.contains(f.q))
}

/// Number of members of `F^Q(c, d)`, by streaming.
pub fn filtered_count(q: u64, cls: ProgressionClass) -> u64 {
    farey_filtered(q, cls).count() as u64
}

/// Sliding windows of `s + 1` consecutive denominators of `F^Q(c, d)` with their type.
#[derive(Debug, Clone)]
pub struct ConsecutiveTuples {
    stream: FareyStream,
    cls: ProgressionClass,
    s: usize,
    pos: u64,
    window: VecDeque<(u64, u64)>,
}

pub fn consecutive_tuples(q: u64, cls: ProgressionClass, s: usize) -> ConsecutiveTuples {
    ConsecutiveTuples {
        stream: farey_stream(q),
        cls,
        s: s.max(1),
        pos: 0,
        window: VecDeque::new(),
    }
}

impl Iterator for ConsecutiveTuples {
    type Item = (Vec<u64>, TupleType);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let f = self.stream.next()?;
            let pos = self.pos;
            self.pos += 1;
            if !self.cls.contains(f.q) {
                continue;
            }
            self.window.push_back((pos, f.q));
            if self.window.len() > self.s + 1 {
                self.window.pop_front();
            }
            if self.window.len() == self.s + 1 {
                let dens = self.window.iter().map(|w| w.1).collect();
                let gaps = self
                    .window
                    .iter()
                    .zip(self.window.iter().skip(1))
                    .map(|(a, b)| b.0 - a.0)
                    .collect();
                return Some((dens, TupleType(gaps)));
            }
        }
    }
}

/// The choice application: chain values at positions `−1, −1 + r_1, …, −1 + |r|`.
pub fn choice_map(qp: u64, qpp: u64, q: u64, r: &TupleType) -> Result<Vec<u64>> {
    let (_, chain) = index_sequence_int(qp, qpp, q, r.order())?;
    let values = chain.values();
    Ok(r.positions().iter().map(|&p| values[(p + 1) as usize]).collect())
}
