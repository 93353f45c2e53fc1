//! Published mosaic rows for `d = 5` (any `c` prime to 5, kernels 1–9) and for `c = 3, d = 12`
//! (kernels 3–27), kept verbatim for regression and verification.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::Result;
use crate::geometry::RatPoint;
use crate::mosaic::TableRow;
use crate::rational::parse;

/// One published row. `tiles` and the upper order are `None` where the row reads "∞".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceRow {
    pub kernel: u64,
    pub name: &'static str,
    pub tiles: Option<usize>,
    pub order_min: usize,
    pub order_max: Option<usize>,
    pub vertices: &'static [(&'static str, &'static str)],
}

impl ReferenceRow {
    pub fn points(&self) -> Result<Vec<RatPoint>> {
        self.vertices
            .iter()
            .map(|(x, y)| Ok(RatPoint::new(parse(x)?, parse(y)?)))
            .collect()
    }

    pub fn is_unbounded(&self) -> bool {
        self.tiles.is_none()
    }
}

const fn row(
    kernel: u64,
    name: &'static str,
    tiles: usize,
    orders: (usize, usize),
    vertices: &'static [(&'static str, &'static str)],
) -> ReferenceRow {
    ReferenceRow {
        kernel,
        name,
        tiles: Some(tiles),
        order_min: orders.0,
        order_max: Some(orders.1),
        vertices,
    }
}

const fn unbounded(
    kernel: u64,
    name: &'static str,
    order_min: usize,
    vertices: &'static [(&'static str, &'static str)],
) -> ReferenceRow {
    ReferenceRow {
        kernel,
        name,
        tiles: None,
        order_min,
        order_max: None,
        vertices,
    }
}

/// Kernels listed for `d = 5`; kernel 2 has no mosaic.
pub const MOD5_KERNELS: [u64; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 9];

pub const MOD5_ROWS: &[ReferenceRow] = &[
    row(1, "SQ_0[·]", 21, (0, 9), &[("1", "1"), ("0", "1"), ("1/6", "1/6"), ("1", "0")]),
    row(3, "SQ_1[3]", 7, (1, 5), &[("1", "1"), ("2/7", "1"), ("3/8", "3/8"), ("1", "2/7")]),
    row(4, "SQ_1[4]", 27, (1, 11), &[("1", "1"), ("3/13", "1"), ("2/7", "2/7"), ("1", "3/13")]),
    row(
        5,
        "SHV_4[2,2,2,2]",
        35,
        (4, 14),
        &[("1", "1"), ("1/6", "1"), ("8/43", "23/43"), ("1/2", "1/2"), ("23/43", "8/43"), ("1", "1/6")],
    ),
    row(
        6,
        "SH_1[6]",
        51,
        (1, 11),
        &[("1", "1"), ("1/5", "1"), ("4/19", "14/19"), ("3/8", "3/8"), ("14/19", "4/19"), ("1", "1/5")],
    ),
    row(7, "NQ_2[2,4]", 6, (2, 6), &[("1", "1"), ("6/11", "1"), ("3/5", "2/5"), ("1", "3/8")]),
    row(7, "NQ_2[4,2]", 6, (2, 6), &[("1", "1"), ("3/8", "1"), ("2/5", "3/5"), ("1", "6/11")]),
    row(
        7,
        "NP_3[2,2,3]",
        30,
        (3, 12),
        &[("1", "1"), ("3/13", "1"), ("7/17", "7/17"), ("4/5", "1/5"), ("1", "6/31")],
    ),
    row(
        7,
        "NP_3[3,2,2]",
        30,
        (3, 12),
        &[("1", "1"), ("6/31", "1"), ("1/5", "4/5"), ("7/17", "7/17"), ("1", "3/13")],
    ),
    row(8, "SQ_1[8]", 21, (1, 9), &[("1", "1"), ("7/17", "1"), ("4/9", "4/9"), ("1", "7/17")]),
    row(
        8,
        "SH_3[2,3,2]",
        36,
        (3, 13),
        &[("1", "1"), ("7/37", "1"), ("6/31", "26/31"), ("4/9", "4/9"), ("26/31", "6/31"), ("1", "7/37")],
    ),
    row(9, "SQ_1[9]", 33, (1, 9), &[("1", "1"), ("2/7", "1"), ("9/19", "9/19"), ("1", "2/7")]),
    row(
        9,
        "NP_4[2,2,2,3]",
        7,
        (4, 15),
        &[("1", "1"), ("8/43", "1"), ("7/37", "32/37"), ("1/3", "2/3"), ("1", "5/7")],
    ),
    row(
        9,
        "NP_4[3,2,2,2]",
        7,
        (4, 15),
        &[("1", "1"), ("5/7", "1"), ("2/3", "1/3"), ("32/37", "7/37"), ("1", "8/43")],
    ),
];

pub const MOD12_KERNELS: [u64; 9] = [3, 6, 9, 12, 15, 18, 21, 24, 27];

pub const MOD12_ROWS: &[ReferenceRow] = &[
    unbounded(
        3,
        "SH_1[3]",
        1,
        &[("1", "1"), ("0", "1"), ("1/13", "5/13"), ("1/5", "1/5"), ("5/13", "1/13"), ("1", "0")],
    ),
    unbounded(3, "SQ_2[2,2]", 2, &[("1", "1"), ("0", "1"), ("1/5", "1/5"), ("1", "0")]),
    row(6, "SQ_1[6]", 314, (1, 41), &[("1", "1"), ("1/9", "1"), ("1/5", "1/5"), ("1", "1/9")]),
    row(
        6,
        "SH_5[2,2,2,2,2]",
        424,
        (5, 39),
        &[("1", "1"), ("1/13", "1"), ("1/9", "5/9"), ("1/5", "1/5"), ("5/9", "1/9"), ("1", "1/13")],
    ),
    row(9, "SQ_1[9]", 63, (1, 13), &[("1", "1"), ("1/5", "1"), ("3/7", "3/7"), ("1", "1/5")]),
    row(9, "NQ_4[2,2,2,3]", 56, (4, 18), &[("1", "1"), ("1/5", "1"), ("1/4", "1/2"), ("1", "1/5")]),
    row(9, "NQ_4[3,2,2,2]", 56, (4, 18), &[("1", "1"), ("1/5", "1"), ("1/2", "1/4"), ("1", "1/5")]),
    row(
        12,
        "SO_5[3,1,6,1,3]",
        142,
        (5, 29),
        &[
            ("1", "1"),
            ("1/5", "1"),
            ("3/11", "7/11"),
            ("4/13", "8/13"),
            ("1/3", "1/3"),
            ("8/13", "4/13"),
            ("7/11", "3/11"),
            ("1", "1/5"),
        ],
    ),
    row(
        12,
        "SQ_11[2,2,2,2,2,2,2,2,2,2,2]",
        21,
        (11, 20),
        &[("1", "1"), ("1/5", "1"), ("1/2", "1/2"), ("1", "1/5")],
    ),
    row(15, "SQ_1[15]", 38, (1, 11), &[("1", "1"), ("3/7", "1"), ("5/9", "5/9"), ("1", "3/7")]),
    row(
        15,
        "SH_7[2,3,1,5,1,3,2]",
        173,
        (7, 29),
        &[("1", "1"), ("1/4", "1"), ("3/11", "7/11"), ("5/13", "5/13"), ("7/11", "3/11"), ("1", "1/4")],
    ),
    row(15, "NQ_4[3,2,1,10]", 117, (4, 27), &[("1", "1"), ("3/11", "1"), ("5/13", "5/13"), ("1", "1/3")]),
    row(15, "NQ_4[10,1,2,3]", 117, (4, 27), &[("1", "1"), ("1/3", "1"), ("5/13", "5/13"), ("1", "3/11")]),
    row(
        15,
        "NQ_7[3,2,2,2,2,2,2]",
        35,
        (7, 20),
        &[("1", "1"), ("1/3", "1"), ("7/19", "11/19"), ("1", "1/2")],
    ),
    row(
        15,
        "NQ_7[2,2,2,2,2,2,3]",
        35,
        (7, 20),
        &[("1", "1"), ("1/2", "1"), ("11/19", "7/19"), ("1", "1/3")],
    ),
    row(18, "SQ_1[18]", 246, (1, 26), &[("1", "1"), ("1/5", "1"), ("3/7", "3/7"), ("1", "1/5")]),
    row(18, "NQ_6[2,3,1,5,1,4]", 128, (6, 28), &[("1", "1"), ("1/5", "1"), ("3/7", "3/7"), ("1", "5/13")]),
    row(18, "NQ_6[4,1,5,1,3,2]", 128, (6, 28), &[("1", "1"), ("5/13", "1"), ("3/7", "3/7"), ("1", "1/5")]),
    row(21, "SQ_1[21]", 36, (1, 11), &[("1", "1"), ("5/9", "1"), ("7/11", "7/11"), ("1", "5/9")]),
    row(21, "NT_5[3,2,2,1,14]", 64, (5, 28), &[("1", "1"), ("1/3", "1"), ("1", "1/5")]),
    row(21, "NT_5[14,1,2,2,3]", 64, (5, 28), &[("1", "1"), ("1/5", "1"), ("1", "1/3")]),
    row(
        21,
        "SQ_7[4,2,1,7,1,2,4]",
        16,
        (7, 13),
        &[("1", "1"), ("5/9", "1"), ("7/11", "7/11"), ("1", "5/9")],
    ),
    row(
        21,
        "NQ_8[2,2,3,1,4,2,1,7]",
        12,
        (8, 14),
        &[("1", "1"), ("3/5", "1"), ("7/11", "7/11"), ("1", "1/2")],
    ),
    row(
        21,
        "NQ_8[7,1,2,4,1,3,2,2]",
        12,
        (8, 14),
        &[("1", "1"), ("1/2", "1"), ("7/11", "7/11"), ("1", "3/5")],
    ),
    row(
        21,
        "NQ_10[2,2,2,2,2,2,2,2,2,3]",
        22,
        (10, 21),
        &[("1", "1"), ("1/2", "1"), ("5/7", "3/7"), ("1", "5/13")],
    ),
    row(
        21,
        "NQ_10[3,2,2,2,2,2,2,2,2,2]",
        22,
        (10, 21),
        &[("1", "1"), ("5/13", "1"), ("3/7", "5/7"), ("1", "1/2")],
    ),
    row(
        24,
        "SQ_9[6,1,3,1,6,1,3,1,6]",
        79,
        (9, 26),
        &[("1", "1"), ("5/13", "1"), ("1/2", "1/2"), ("1", "5/13")],
    ),
    row(
        24,
        "SHV_9[2,2,3,1,5,1,3,2,2]",
        161,
        (9, 33),
        &[("1", "1"), ("1/5", "1"), ("5/13", "9/13"), ("2/3", "2/3"), ("9/13", "5/13"), ("1", "1/5")],
    ),
    row(
        24,
        "SH_11[4,1,4,1,4,1,4,1,4,1,4]",
        94,
        (11, 27),
        &[("1", "1"), ("7/19", "1"), ("17/43", "29/43"), ("1/2", "1/2"), ("29/43", "17/43"), ("1", "7/19")],
    ),
    row(27, "SQ_1[27]", 36, (1, 11), &[("1", "1"), ("7/11", "1"), ("9/13", "9/13"), ("1", "7/11")]),
    row(
        27,
        "NQ_6[10,1,2,3,1,6]",
        124,
        (6, 37),
        &[("1", "1"), ("1/5", "1"), ("11/19", "10/19"), ("1", "1/2")],
    ),
    row(
        27,
        "NQ_6[6,1,3,2,1,10]",
        124,
        (6, 37),
        &[("1", "1"), ("1/2", "1"), ("10/19", "11/19"), ("1", "1/5")],
    ),
    row(
        27,
        "NQ_8[2,3,2,1,8,1,2,4]",
        32,
        (8, 23),
        &[("1", "1"), ("5/13", "1"), ("7/15", "11/15"), ("1", "7/11")],
    ),
    row(
        27,
        "NQ_8[4,2,1,8,1,2,3,2]",
        32,
        (8, 23),
        &[("1", "1"), ("7/11", "1"), ("11/15", "7/15"), ("1", "5/13")],
    ),
];

/// Rows of one kernel.
pub fn rows_for(rows: &'static [ReferenceRow], kernel: u64) -> impl Iterator<Item = &'static ReferenceRow> {
    rows.iter().filter(move |r| r.kernel == kernel)
}

/// A disagreement between regenerated and published rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowMismatch {
    Missing { kernel: u64, name: String },
    Extra { kernel: u64, name: String },
    Field { kernel: u64, name: String, field: &'static str, expected: String, found: String },
}

impl core::fmt::Display for RowMismatch {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            RowMismatch::Missing { kernel, name } => write!(f, "kernel {kernel}: {name} not regenerated"),
            RowMismatch::Extra { kernel, name } => write!(f, "kernel {kernel}: unexpected {name}"),
            RowMismatch::Field { kernel, name, field, expected, found } => {
                write!(f, "kernel {kernel}: {name} {field} expected {expected}, found {found}")
            }
        }
    }
}

fn show_points(v: &[RatPoint]) -> String {
    let parts: Vec<String> = v.iter().map(|p| format!("({},{})", p.x, p.y)).collect();
    parts.join(" ")
}

/// Rows of `kernel` compared as sets keyed by name. Unbounded published rows only pin the lower
/// order and require the regenerated row to reach the truncation order.
pub fn verify_rows(kernel: u64, generated: &[TableRow], published: &'static [ReferenceRow]) -> Vec<RowMismatch> {
    let mut out = Vec::new();
    let expected: Vec<&ReferenceRow> = rows_for(published, kernel).collect();
    let found: Vec<&TableRow> = generated.iter().filter(|r| r.kernel == kernel).collect();
    for e in &expected {
        let Some(g) = found.iter().find(|g| g.name == e.name) else {
            out.push(RowMismatch::Missing { kernel, name: e.name.into() });
            continue;
        };
        let mut field = |field: &'static str, expected: String, found: String| {
            if expected != found {
                out.push(RowMismatch::Field { kernel, name: e.name.into(), field, expected, found });
            }
        };
        field("first order", e.order_min.to_string(), g.order_min.to_string());
        match (e.tiles, e.order_max) {
            (Some(t), Some(o)) => {
                field("tiles", t.to_string(), g.tile_count.to_string());
                field("last order", o.to_string(), g.order_max.to_string());
                let v = e.points().unwrap_or_default();
                field("vertices", show_points(&v), show_points(&g.vertices));
            }
            _ => field("growth", "unbounded".into(), if g.unbounded { "unbounded" } else { "bounded" }.into()),
        }
    }
    for g in &found {
        if !expected.iter().any(|e| e.name == g.name) {
            out.push(RowMismatch::Extra { kernel, name: g.name.clone() });
        }
    }
    out
}
