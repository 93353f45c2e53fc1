//! Index tuples, continuant polynomials and the index recurrences.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{big, floor, int, Rational};

/// `(k_1, …, k_n)` with every entry at least 1. The empty tuple has order 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IndexTuple(Vec<u64>);

impl IndexTuple {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.iter().any(|&k| k == 0) {
            return Err(Error::domain("index tuple entries must be positive"));
        }
        Ok(IndexTuple(entries))
    }

    pub fn empty() -> Self {
        IndexTuple(Vec::new())
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    /// Entry `k_j`, 1-based.
    pub fn get(&self, j: usize) -> Option<u64> {
        j.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    pub fn extended(&self, k: u64) -> Self {
        let mut v = self.0.clone();
        v.push(k);
        IndexTuple(v)
    }

    pub fn reversed(&self) -> Self {
        IndexTuple(self.0.iter().rev().copied().collect())
    }

    /// `p_n(k)` for `n = order(k)`.
    pub fn kernel(&self) -> BigInt {
        continuant_of(&self.0)
    }

    /// `p_{n−1}(k_2, …, k_n)`, the coefficient of `x` in the last linear form.
    pub fn cokernel(&self) -> BigInt {
        match self.0.len() {
            0 => BigInt::zero(),
            _ => continuant_of(&self.0[1..]),
        }
    }

    /// Entries joined by single spaces, e.g. `2 2 3`.
    pub fn spaced(&self) -> alloc::string::String {
        let mut s = alloc::string::String::new();
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(&alloc::format!("{k}"));
        }
        s
    }

    /// Parses `2,2,3`, `2 2 3` or `[2,2,3]`; an empty string is the empty tuple.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
        let mut v = Vec::new();
        for part in s.split([',', ' ']).filter(|p| !p.is_empty()) {
            let k: u64 = part
                .parse()
                .map_err(|_| Error::Parse(alloc::format!("bad index entry {part:?}")))?;
            v.push(k);
        }
        Self::new(v)
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("]")
    }
}

fn continuant_of(ks: &[u64]) -> BigInt {
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    for &k in ks {
        let next = BigInt::from(k) * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `p_j(k_1, …, k_j)`, with `p_{−1} = 0` and `p_0 = 1`.
pub fn continuant(k: &IndexTuple, j: i64) -> Result<BigInt> {
    continuant_shifted(k, 1, j)
}

/// The continuant of the sub-tuple `(k_from, …, k_{from+j−1})`; `from` is 1-based.
pub fn continuant_shifted(k: &IndexTuple, from: usize, j: i64) -> Result<BigInt> {
    let n = k.order();
    if from == 0 || j < -1 {
        return Err(Error::Range {
            index: j,
            order: n,
        });
    }
    if j == -1 {
        return Ok(BigInt::zero());
    }
    let end = from - 1 + j as usize;
    if end > n {
        return Err(Error::Range {
            index: j,
            order: n,
        });
    }
    Ok(continuant_of(&k.0[from - 1..end]))
}

// Same as `continuant_shifted(k, 2, j)` but extended by `p_{−2} = −1`, which
// makes the linear form at j = −1 come out as `x`.
fn second_coefficient(k: &IndexTuple, j: i64) -> Result<BigInt> {
    if j == -2 {
        return Ok(-BigInt::one());
    }
    continuant_shifted(k, 2, j)
}

/// `x_j = p_j(k_1..k_j)·y − p_{j−1}(k_2..k_j)·x`.
pub fn eval_linear(k: &IndexTuple, j: i64, x: &Rational, y: &Rational) -> Result<Rational> {
    if j < -1 || j > k.order() as i64 {
        return Err(Error::Range {
            index: j,
            order: k.order(),
        });
    }
    let p = continuant(k, j)?;
    let pp = second_coefficient(k, j - 1)?;
    Ok(big(&p) * y - big(&pp) * x)
}

/// Generators `x_{−1}, x_0` and their successors under the real index recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueChain {
    pub x_minus1: Rational,
    pub x_0: Rational,
    pub successors: Vec<Rational>,
    pub indices: IndexTuple,
}

impl ValueChain {
    /// `x_{−1}, x_0, x_1, …` in order.
    pub fn values(&self) -> Vec<Rational> {
        let mut v = vec![self.x_minus1.clone(), self.x_0.clone()];
        v.extend(self.successors.iter().cloned());
        v
    }
}

/// Denominators `q_{−1}, q_0` of two consecutive fractions of `F^Q` and the next ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenominatorChain {
    pub q: u64,
    pub q_minus1: u64,
    pub q_0: u64,
    pub successors: Vec<u64>,
    pub indices: IndexTuple,
}

impl DenominatorChain {
    /// `q_{−1}, q_0, q_1, …` in order.
    pub fn values(&self) -> Vec<u64> {
        let mut v = vec![self.q_minus1, self.q_0];
        v.extend(self.successors.iter().copied());
        v
    }

    /// `q_j` for `−1 ≤ j ≤ n`.
    pub fn at(&self, j: i64) -> Option<u64> {
        usize::try_from(j + 1).ok().and_then(|i| self.values().get(i).copied())
    }
}

/// Index tuple and chain of the real generators `(x, y)` of the Farey triangle.
pub fn index_sequence_real(x: &Rational, y: &Rational, n: usize) -> Result<(IndexTuple, ValueChain)> {
    let one = int(1);
    if !x.is_positive() || !y.is_positive() || *x > one || *y > one || x + y <= one {
        return Err(Error::domain("generators must lie in the Farey triangle"));
    }
    let (mut a, mut b) = (x.clone(), y.clone());
    let mut ks = Vec::with_capacity(n);
    let mut succ = Vec::with_capacity(n);
    for _ in 0..n {
        let k = floor(&((&one + &a) / &b));
        let next = big(&k) * &b - &a;
        ks.push(k.to_u64().expect("index fits in u64"));
        succ.push(next.clone());
        a = b;
        b = next;
    }
    let indices = IndexTuple(ks);
    Ok((
        indices.clone(),
        ValueChain {
            x_minus1: x.clone(),
            x_0: y.clone(),
            successors: succ,
            indices,
        },
    ))
}

/// Index tuple and denominators following the consecutive pair `(q', q'')` in `F^Q`.
pub fn index_sequence_int(qp: u64, qpp: u64, q: u64, n: usize) -> Result<(IndexTuple, DenominatorChain)> {
    if qp == 0 || qpp == 0 || qp > q || qpp > q || qp + qpp <= q || qp.gcd(&qpp) != 1 {
        return Err(Error::domain(alloc::format!(
            "({qp}, {qpp}) is not a pair of consecutive denominators in F^{q}"
        )));
    }
    let (mut a, mut b) = (qp, qpp);
    let mut ks = Vec::with_capacity(n);
    let mut succ = Vec::with_capacity(n);
    for _ in 0..n {
        let k = (q + a) / b;
        let next = k * b - a;
        ks.push(k);
        succ.push(next);
        a = b;
        b = next;
    }
    let indices = IndexTuple(ks);
    Ok((
        indices.clone(),
        DenominatorChain {
            q,
            q_minus1: qp,
            q_0: qpp,
            successors: succ,
            indices,
        },
    ))
}
