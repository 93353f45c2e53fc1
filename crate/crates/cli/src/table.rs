//! Mosaic tables as Markdown or JSON.

use fareyap::mosaic::TableRow;
use serde_json::{json, Value};

use crate::frac;

/// How a row's tile count reads: the count, or `∞(truncated at N)` when the mosaic keeps growing.
pub fn tile_cell(r: &TableRow, max_order: usize) -> String {
    if r.unbounded {
        format!("∞(truncated at {max_order})")
    } else {
        r.tile_count.to_string()
    }
}

pub fn order_cell(r: &TableRow) -> String {
    if r.unbounded {
        format!("{}-∞", r.order_min)
    } else {
        format!("{}-{}", r.order_min, r.order_max)
    }
}

pub fn vertex_cell(r: &TableRow) -> String {
    let v: Vec<String> = r.vertices.iter().map(|p| format!("({},{})", frac(&p.x), frac(&p.y))).collect();
    v.join(", ")
}

pub fn markdown(rows: &[TableRow], max_order: usize) -> String {
    let mut s = String::from("| Kernel | Name | Tiles | Orders | Vertices |\n|---|---|---|---|---|\n");
    for r in rows {
        s.push_str(&format!(
            "| {} | {} | {} | {} | {} |\n",
            r.kernel,
            r.name,
            tile_cell(r, max_order),
            order_cell(r),
            vertex_cell(r)
        ));
    }
    s
}

pub fn json_rows(rows: &[TableRow], max_order: usize) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "kernel": r.kernel,
                    "name": r.name,
                    "tiles": r.tile_count,
                    "tiles_display": tile_cell(r, max_order),
                    "order_min": r.order_min,
                    "order_max": r.order_max,
                    "unbounded": r.unbounded,
                    "truncated_at": if r.unbounded { Some(max_order) } else { None },
                    "vertices": r.vertices.iter().map(|p| [frac(&p.x), frac(&p.y)]).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}
