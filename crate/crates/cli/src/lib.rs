//! Emitters and file formats behind the `fareyap` binary.

pub mod config;
pub mod dot;
pub mod formats;
pub mod svg;
pub mod table;

/// Exact rational as `p/q`, or `p` when integral.
pub fn frac(r: &fareyap::Rational) -> String {
    r.to_string()
}
