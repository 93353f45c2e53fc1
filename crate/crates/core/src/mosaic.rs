//! Same-kernel tiles grouped into mosaics, with names, outlines and adjacency graphs.

use alloc::collections::BTreeMap;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::continuants::IndexTuple;
use crate::error::{Error, Result};
use crate::farey::ProgressionClass;
use crate::geometry::{ConvexPolygon, Outline, RatPoint};
use crate::tiles::{enumerate_tiles, EnumerateOptions, KernelBound, Tile, DEFAULT_NODE_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mosaic {
    pub kernel: BigInt,
    /// Tiles sorted by `k`.
    pub tiles: Vec<Tile>,
    pub outline: Outline,
    pub root: IndexTuple,
    /// `None` when the outline has no shape letter.
    pub name: Option<String>,
    pub order_min: usize,
    pub order_max: usize,
    pub symmetric: bool,
}

impl Mosaic {
    pub fn root_tile(&self) -> &Tile {
        self.tiles.iter().find(|t| t.k == self.root).expect("root is a member")
    }

    pub fn area(&self) -> crate::Rational {
        self.outline.area()
    }

    /// Name, or a placeholder with the raw vertex count when no shape letter applies.
    pub fn display_name(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => format!(
                "{}?{}_{}{}",
                if self.symmetric { 'S' } else { 'N' },
                self.outline.vertex_count(),
                self.root.order(),
                root_label(&self.root)
            ),
        }
    }
}

/// Result of grouping: the mosaics and the tiles that could not be attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assembly {
    pub mosaics: Vec<Mosaic>,
    pub orphans: Vec<IndexTuple>,
}

fn corner() -> RatPoint {
    RatPoint::from_ints(1, 1)
}

fn canonical_set(polys: impl Iterator<Item = ConvexPolygon>) -> Vec<ConvexPolygon> {
    let mut v: Vec<ConvexPolygon> = polys.map(|p| p.canonical()).collect();
    v.sort_by(|a, b| a.vertices().cmp(b.vertices()));
    v
}

fn is_symmetric(tiles: &[Tile]) -> bool {
    canonical_set(tiles.iter().map(|t| t.poly.clone()))
        == canonical_set(tiles.iter().map(|t| t.poly.reflect()))
}

/// How tiles of one kernel are split into mosaics.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Grouping {
    /// Growth from the tiles at `(1,1)` by edge adjacency.
    #[default]
    Seeded,
    /// Tiles sharing an admissible starting residue are grouped together.
    Residue,
}

fn check_kernel(tiles: &[Tile], kernel: &BigInt) -> Result<()> {
    match tiles.iter().find(|t| t.kernel != *kernel) {
        Some(t) => Err(Error::domain(format!("tile {} has kernel {}, not {kernel}", t.k, t.kernel))),
        None => Ok(()),
    }
}

pub fn assemble_with(tiles: &[Tile], kernel: u64, grouping: Grouping) -> Result<Assembly> {
    match grouping {
        Grouping::Seeded => assemble(tiles, kernel),
        Grouping::Residue => assemble_by_residue(tiles, kernel),
    }
}

fn assemble_by_residue(tiles: &[Tile], kernel: u64) -> Result<Assembly> {
    let kernel_big = BigInt::from(kernel);
    check_kernel(tiles, &kernel_big)?;
    let mut parent: Vec<usize> = (0..tiles.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut first: BTreeMap<u64, usize> = BTreeMap::new();
    for (i, t) in tiles.iter().enumerate() {
        for &e in &t.residues.residues {
            let j = *first.entry(e).or_insert(i);
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut classes: BTreeMap<usize, Vec<Tile>> = BTreeMap::new();
    for (i, t) in tiles.iter().enumerate() {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(t.clone());
    }
    let mut mosaics = Vec::new();
    for (_, mut members) in classes {
        members.sort_by(|a, b| a.k.cmp(&b.k));
        let root = members
            .iter()
            .find(|t| t.poly.has_vertex(&corner()))
            .or_else(|| members.iter().min_by(|a, b| (a.order(), &a.k).cmp(&(b.order(), &b.k))))
            .map(|t| t.k.clone())
            .expect("classes are non-empty");
        mosaics.push(build(kernel_big.clone(), members, root)?);
    }
    mosaics.sort_by(|a, b| (a.root.order(), &a.root).cmp(&(b.root.order(), &b.root)));
    Ok(Assembly {
        mosaics,
        orphans: Vec::new(),
    })
}

/// Seeded growth: each tile with `(1,1)` as a vertex starts a mosaic, and other tiles join the
/// unique mosaic they share an edge with without overlapping any member.
///
/// Tiles are visited in lexicographic order of `k` until nothing changes. A tile and its diagonal
/// mirror join together, the mirror going to the mirror mosaic. When several mosaics qualify, only
/// those reached through a member with a common admissible residue are kept; a tile still left
/// with more than one candidate at the end is an [`Error::Ambiguity`].
pub fn assemble(tiles: &[Tile], kernel: u64) -> Result<Assembly> {
    let kernel_big = BigInt::from(kernel);
    check_kernel(tiles, &kernel_big)?;
    let mut order: Vec<usize> = (0..tiles.len()).collect();
    order.sort_by(|&a, &b| tiles[a].k.cmp(&tiles[b].k));

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![false; tiles.len()];
    for &i in &order {
        if tiles[i].poly.has_vertex(&corner()) {
            groups.push(vec![i]);
            assigned[i] = true;
        }
    }
    let candidates_of = |i: usize, groups: &[Vec<usize>]| -> Vec<usize> {
        let poly = &tiles[i].poly;
        groups
            .iter()
            .enumerate()
            .filter(|(_, g)| {
                g.iter().any(|&j| poly.shares_edge(&tiles[j].poly))
                    && g.iter().all(|&j| poly.interiors_disjoint(&tiles[j].poly))
            })
            .map(|(gi, _)| gi)
            .collect::<Vec<_>>()
    };
    let shares_residue = |i: usize, j: usize| {
        let a = &tiles[i].residues.residues;
        tiles[j].residues.residues.iter().any(|e| a.contains(e))
    };
    // Several candidates: keep those touching the tile through a member with a common residue.
    let resolve = |i: usize, groups: &[Vec<usize>]| -> Vec<usize> {
        let all = candidates_of(i, groups);
        if all.len() < 2 {
            return all;
        }
        let poly = &tiles[i].poly;
        let narrowed: Vec<usize> = all
            .iter()
            .copied()
            .filter(|&g| groups[g].iter().any(|&j| shares_residue(i, j) && poly.shares_edge(&tiles[j].poly)))
            .collect();
        if narrowed.is_empty() {
            all
        } else {
            narrowed
        }
    };
    // A tile joins together with its mirror image, which goes to the mirror mosaic.
    let keys: Vec<Vec<RatPoint>> = tiles.iter().map(|t| t.poly.canonical().vertices().to_vec()).collect();
    let index: BTreeMap<&Vec<RatPoint>, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mirror: Vec<Option<usize>> = tiles
        .iter()
        .map(|t| index.get(&t.poly.reflect().canonical().vertices().to_vec()).copied())
        .collect();
    let seed_of = |g: usize, groups: &[Vec<usize>]| groups[g][0];
    let mirror_group = |g: usize, groups: &[Vec<usize>]| -> Option<usize> {
        let m = mirror[seed_of(g, groups)]?;
        groups.iter().position(|h| h[0] == m)
    };
    let fits = |i: usize, g: &[usize], extra: Option<usize>| {
        let poly = &tiles[i].poly;
        g.iter().chain(extra.iter()).any(|&j| poly.shares_edge(&tiles[j].poly))
            && g.iter().chain(extra.iter()).all(|&j| poly.interiors_disjoint(&tiles[j].poly))
    };
    // Joins `i` to `g`, and its mirror to the mirror mosaic; false when the mirror cannot follow.
    let place = |i: usize, g: usize, groups: &mut Vec<Vec<usize>>, assigned: &mut Vec<bool>| -> bool {
        let h = mirror_group(g, groups);
        match mirror[i] {
            Some(j) if j == i => {
                if h != Some(g) {
                    return false;
                }
            }
            Some(j) if !assigned[j] => {
                if let Some(h) = h {
                    if !fits(j, &groups[h], (h == g).then_some(i)) {
                        return false;
                    }
                    groups[h].push(j);
                    assigned[j] = true;
                }
            }
            _ => {}
        }
        groups[g].push(i);
        assigned[i] = true;
        true
    };
    let mut changed = true;
    while changed {
        changed = false;
        for &i in &order {
            if assigned[i] {
                continue;
            }
            if let [g] = resolve(i, &groups)[..] {
                changed |= place(i, g, &mut groups, &mut assigned);
            }
        }
    }
    for &i in &order {
        if assigned[i] {
            continue;
        }
        let candidates = resolve(i, &groups);
        if candidates.len() > 1 {
            return Err(Error::Ambiguity {
                tile: tiles[i].k.clone(),
                candidates: candidates.iter().map(|&g| tiles[groups[g][0]].k.clone()).collect(),
            });
        }
    }
    let orphans = order.iter().filter(|&&i| !assigned[i]).map(|&i| tiles[i].k.clone()).collect();
    let mut mosaics = Vec::with_capacity(groups.len());
    for g in groups {
        let root = tiles[g[0]].k.clone();
        let mut members: Vec<Tile> = g.iter().map(|&i| tiles[i].clone()).collect();
        members.sort_by(|a, b| a.k.cmp(&b.k));
        mosaics.push(build(kernel_big.clone(), members, root)?);
    }
    mosaics.sort_by(|a, b| (a.root.order(), &a.root).cmp(&(b.root.order(), &b.root)));
    Ok(Assembly { mosaics, orphans })
}

fn build(kernel: BigInt, tiles: Vec<Tile>, root: IndexTuple) -> Result<Mosaic> {
    let polys: Vec<ConvexPolygon> = tiles.iter().map(|t| t.poly.clone()).collect();
    let outline = Outline::union(&polys)?;
    let order_min = tiles.iter().map(Tile::order).min().unwrap_or(0);
    let order_max = tiles.iter().map(Tile::order).max().unwrap_or(0);
    let symmetric = is_symmetric(&tiles);
    let mut m = Mosaic {
        kernel,
        tiles,
        outline,
        root,
        name: None,
        order_min,
        order_max,
        symmetric,
    };
    m.name = name(&m).ok();
    Ok(m)
}

/// Shape letter from the vertex count and convexity of the outline.
pub fn shape_letter(outline: &Outline) -> Result<&'static str> {
    let vertices = outline.vertex_count();
    let convex = outline.is_convex();
    let err = Error::Shape { vertices, convex };
    if outline.loops.len() != 1 {
        return Err(err);
    }
    match (vertices, convex) {
        (3, _) => Ok("T"),
        (4, _) => Ok("Q"),
        (5, _) => Ok("P"),
        (6, true) => Ok("H"),
        (6, false) => Ok("HV"),
        (8, _) => Ok("O"),
        _ => Err(err),
    }
}

fn root_label(k: &IndexTuple) -> String {
    if k.order() == 0 {
        String::from("[·]")
    } else {
        format!("{k}")
    }
}

/// `{S|N}{shape}_{order}[k]` of the root tuple.
pub fn name(m: &Mosaic) -> Result<String> {
    let letter = shape_letter(&m.outline)?;
    Ok(format!(
        "{}{}_{}{}",
        if m.symmetric { 'S' } else { 'N' },
        letter,
        m.root.order(),
        root_label(&m.root)
    ))
}

/// Outer boundary, counter-clockwise, starting from `(1,1)`.
pub fn vertices(m: &Mosaic) -> Vec<RatPoint> {
    let Some(lp) = m.outline.loops.first() else {
        return Vec::new();
    };
    let mut v = lp.clone();
    if let Some(i) = v.iter().position(|p| *p == corner()) {
        v.rotate_left(i);
    }
    v
}

/// Tiles of a mosaic linked when they share a boundary segment of positive length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyTree {
    pub nodes: Vec<IndexTuple>,
    /// Index pairs `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub root: usize,
}

impl AdjacencyTree {
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| if a == i { Some(b) } else if b == i { Some(a) } else { None })
            .collect();
        v.sort_unstable();
        v
    }

    /// Breadth-first order from the root.
    pub fn bfs(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        let mut q = VecDeque::new();
        if self.nodes.is_empty() {
            return out;
        }
        q.push_back(self.root);
        seen[self.root] = true;
        while let Some(i) = q.pop_front() {
            out.push(i);
            for j in self.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    q.push_back(j);
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.bfs().len() == self.nodes.len()
    }

    pub fn is_acyclic(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.nodes.len()
    }

    pub fn index_of(&self, k: &IndexTuple) -> Option<usize> {
        self.nodes.iter().position(|n| n == k)
    }

    pub fn has_edge(&self, a: &IndexTuple, b: &IndexTuple) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => {
                let e = if i < j { (i, j) } else { (j, i) };
                self.edges.binary_search(&e).is_ok()
            }
            _ => false,
        }
    }
}

pub fn adjacency_tree(m: &Mosaic) -> AdjacencyTree {
    let nodes: Vec<IndexTuple> = m.tiles.iter().map(|t| t.k.clone()).collect();
    let mut edges = Vec::new();
    for i in 0..m.tiles.len() {
        for j in i + 1..m.tiles.len() {
            if m.tiles[i].poly.shares_edge(&m.tiles[j].poly) {
                edges.push((i, j));
            }
        }
    }
    let root = nodes.iter().position(|k| *k == m.root).unwrap_or(0);
    AdjacencyTree { nodes, edges, root }
}

/// `m` itself when symmetric, otherwise the mosaic made of the mirrored tiles.
pub fn symmetry_partner<'a>(m: &'a Mosaic, all: &'a [Mosaic]) -> Result<&'a Mosaic> {
    if m.symmetric {
        return Ok(m);
    }
    let mirrored = canonical_set(m.tiles.iter().map(|t| t.poly.reflect()));
    all.iter()
        .find(|o| o.kernel == m.kernel && canonical_set(o.tiles.iter().map(|t| t.poly.clone())) == mirrored)
        .ok_or_else(|| Error::PartnerMissing { root: m.root.clone() })
}

/// One row of a mosaic table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub kernel: u64,
    pub name: String,
    pub tile_count: usize,
    pub order_min: usize,
    pub order_max: usize,
    /// Tiles reach the truncation order, so the mosaic keeps growing.
    pub unbounded: bool,
    pub vertices: Vec<RatPoint>,
}

/// Options for [`table`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableOptions {
    pub max_order: usize,
    pub budget: usize,
    pub grouping: Grouping,
}

impl TableOptions {
    pub fn new(max_order: usize) -> Self {
        TableOptions {
            max_order,
            budget: DEFAULT_NODE_BUDGET,
            grouping: Grouping::Seeded,
        }
    }
}

/// Mosaics of one kernel, enumerated and assembled.
pub fn mosaics_for_kernel(cls: ProgressionClass, kernel: u64, opts: TableOptions) -> Result<Assembly> {
    let tiles = enumerate_tiles(
        cls,
        EnumerateOptions::new(opts.max_order, KernelBound::Exactly(kernel)).with_budget(opts.budget),
    )?;
    assemble_with(&tiles, kernel, opts.grouping)
}

pub fn row(m: &Mosaic, max_order: usize) -> TableRow {
    TableRow {
        kernel: u64::try_from(&m.kernel).unwrap_or(u64::MAX),
        name: m.display_name(),
        tile_count: m.tiles.len(),
        order_min: m.order_min,
        order_max: m.order_max,
        unbounded: m.order_max >= max_order,
        vertices: vertices(m),
    }
}

/// Rows for every mosaic of the listed kernels, in kernel order.
pub fn table(cls: ProgressionClass, kernels: &[u64], opts: TableOptions) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for &k in kernels {
        let asm = mosaics_for_kernel(cls, k, opts)?;
        rows.extend(asm.mosaics.iter().map(|m| row(m, opts.max_order)));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::TupleType;
    use crate::tiles::tile;

    fn c15() -> ProgressionClass {
        ProgressionClass::new(1, 5).unwrap()
    }

    #[test]
    fn kernel_three_mosaic() {
        let asm = mosaics_for_kernel(c15(), 3, TableOptions::new(16)).unwrap();
        assert_eq!(asm.mosaics.len(), 1);
        assert!(asm.orphans.is_empty());
        let m = &asm.mosaics[0];
        assert_eq!(m.name.as_deref(), Some("SQ_1[3]"));
        assert_eq!(m.tiles.len(), 7);
        assert_eq!(
            vertices(m),
            vec![
                RatPoint::from_ints(1, 1),
                RatPoint::from_fracs(2, 7, 1, 1),
                RatPoint::from_fracs(3, 8, 3, 8),
                RatPoint::from_fracs(1, 1, 2, 7),
            ]
        );
        assert!(core::ptr::eq(symmetry_partner(m, &asm.mosaics).unwrap(), m));
        let tree = adjacency_tree(m);
        assert!(tree.is_connected());
        assert_eq!(tree.nodes[tree.root], IndexTuple::new(vec![3]).unwrap());
    }

    #[test]
    fn kernel_one_is_the_support() {
        let asm = mosaics_for_kernel(c15(), 1, TableOptions::new(16)).unwrap();
        assert_eq!(asm.mosaics.len(), 1);
        let m = &asm.mosaics[0];
        assert_eq!(m.name.as_deref(), Some("SQ_0[·]"));
        assert_eq!(m.tiles.len(), 21);
    }

    #[test]
    fn single_tile_mosaic() {
        let t = tile(&IndexTuple::empty(), &TupleType::single(0), c15()).unwrap().unwrap();
        let asm = assemble(&[t.clone()], 1).unwrap();
        assert_eq!(asm.mosaics.len(), 1);
        assert_eq!(asm.mosaics[0].outline.loops[0], t.poly.vertices().to_vec());
        let tree = adjacency_tree(&asm.mosaics[0]);
        assert_eq!(tree.nodes.len(), 1);
        assert!(tree.edges.is_empty());
        assert!(assemble(&[t], 3).is_err());
    }

    #[test]
    fn empty_table() {
        assert!(table(c15(), &[], TableOptions::new(5)).unwrap().is_empty());
    }
}
