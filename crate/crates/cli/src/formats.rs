//! JSON files read and written by the CLI.

use fareyap::density::EmpiricalHistogram;
use fareyap::rational::parse;
use fareyap::tiles::Tile;
use fareyap::{ConvexPolygon, ProgressionClass, RatPoint};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::frac;

pub fn tile_json(t: &Tile) -> Value {
    json!({
        "k": t.k.entries(),
        "pattern": t.pattern.gaps(),
        "kernel": t.kernel.to_string().parse::<u64>().map(Value::from).unwrap_or_else(|_| Value::from(t.kernel.to_string())),
        "residues": t.residues.residues,
        "vertices": t.poly.vertices().iter().map(|p| [frac(&p.x), frac(&p.y)]).collect::<Vec<_>>(),
    })
}

/// On-disk form of an [`EmpiricalHistogram`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramFile {
    pub q: u64,
    pub c: u64,
    pub d: u64,
    pub bins: usize,
    pub total: u64,
    /// Row-major by x bin.
    pub counts: Vec<u64>,
}

impl From<&EmpiricalHistogram> for HistogramFile {
    fn from(h: &EmpiricalHistogram) -> Self {
        HistogramFile {
            q: h.q,
            c: h.cls.c(),
            d: h.cls.d(),
            bins: h.bins,
            total: h.total,
            counts: h.counts.clone(),
        }
    }
}

impl HistogramFile {
    pub fn into_histogram(self) -> Result<EmpiricalHistogram, String> {
        let cls = ProgressionClass::new(self.c, self.d).map_err(|e| e.to_string())?;
        if self.bins == 0 || self.counts.len() != self.bins * self.bins {
            return Err(format!("expected {} counts, found {}", self.bins * self.bins, self.counts.len()));
        }
        Ok(EmpiricalHistogram {
            q: self.q,
            cls,
            bins: self.bins,
            counts: self.counts,
            total: self.total,
        })
    }
}

/// A polygon file: `[["1/2", "1"], ["1", "1/2"], ["1", "1"]]`. Vertices may come in any order;
/// the convex hull is taken.
pub fn parse_polygon(v: &Value) -> Result<ConvexPolygon, String> {
    let arr = v.as_array().ok_or("polygon must be a JSON array of [x, y] pairs")?;
    let mut pts = Vec::with_capacity(arr.len());
    for p in arr {
        let pair = p.as_array().filter(|a| a.len() == 2).ok_or("each vertex must be an [x, y] pair")?;
        let coord = |c: &Value| -> Result<fareyap::Rational, String> {
            let s = match c {
                Value::String(s) => s.clone(),
                Value::Number(n) if n.is_i64() => n.to_string(),
                _ => return Err(format!("coordinate {c} is neither an integer nor a \"p/q\" string")),
            };
            parse(&s).map_err(|e| e.to_string())
        };
        pts.push(RatPoint::new(coord(&pair[0])?, coord(&pair[1])?));
    }
    let poly = ConvexPolygon::hull(pts);
    if poly.is_empty() {
        return Err("polygon has no area".into());
    }
    Ok(poly)
}

/// Kernel lists: `1..9`, `3,6,9` or a mix such as `1..3,7`.
pub fn parse_kernels(s: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u64 = a.trim().parse().map_err(|_| format!("bad kernel range {part:?}"))?;
            let b: u64 = b.trim_start_matches('=').trim().parse().map_err(|_| format!("bad kernel range {part:?}"))?;
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| format!("bad kernel {part:?}"))?);
        }
    }
    if out.is_empty() {
        return Err("empty kernel list".into());
    }
    Ok(out)
}
