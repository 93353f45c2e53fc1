//! Farey fractions whose denominators lie in an arithmetic progression.
//!
//! The crate computes, exactly, the objects that describe the limiting
//! distribution of consecutive denominators of `F^Q(c, d)`, the Farey
//! fractions of order `Q` with denominator `≡ c (mod d)`:
//!
//! - [`continuants`]: the index recurrence `k_j` and the continuant
//!   polynomials `p_j` that turn chain values into linear forms.
//! - [`farey`]: O(1)-state streams of `F^Q`, the filtered subsequence and
//!   the consecutive-denominator tuples with their gap pattern.
//! - [`progression`]: residue traces, admissible residues, Euler φ and the
//!   lattice-point counts behind the cardinality of `F^Q(c, d)`.
//! - [`geometry`]: exact rational polygons (clipping, areas, unions).
//! - [`tiles`]: regions `T_k`, their images under the choice map and the
//!   depth-first enumeration of every admissible tile.
//! - [`mosaic`]: grouping same-kernel tiles into mosaics, naming them and
//!   regenerating the published tables.
//! - [`density`]: the limit density `g_1`, the empirical histogram and the
//!   comparison between the two.
//!
//! Everything is `no_std` with `alloc`; IO lives in the companion CLI crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod continuants;
pub mod density;
pub mod error;
pub mod farey;
pub mod geometry;
pub mod mosaic;
pub mod progression;
pub mod rational;
pub mod reference;
pub mod tiles;

pub use continuants::{DenominatorChain, IndexTuple, ValueChain};
pub use error::{Error, Result};
pub use farey::{FareyFraction, ProgressionClass, TupleType};
pub use geometry::{ConvexPolygon, HalfPlane, Location, Outline, RatPoint};
pub use mosaic::{AdjacencyTree, Mosaic};
pub use rational::Rational;
pub use tiles::{Region, StripPolygon, Tile};
