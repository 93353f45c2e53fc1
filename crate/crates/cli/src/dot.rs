//! Graphviz export of adjacency graphs.

use std::fmt::Write;

use fareyap::AdjacencyTree;

fn quote(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Undirected DOT graph with nodes labelled `2 2 3`, numbered in breadth-first order from the root.
/// Nodes unreachable from the root follow in tuple order.
pub fn render_tree(t: &AdjacencyTree, title: &str) -> String {
    let mut order = t.bfs();
    let mut seen = vec![false; t.nodes.len()];
    for &i in &order {
        seen[i] = true;
    }
    order.extend((0..t.nodes.len()).filter(|&i| !seen[i]));
    let mut id = vec![0; t.nodes.len()];
    for (n, &i) in order.iter().enumerate() {
        id[i] = n;
    }
    let mut s = String::new();
    let _ = writeln!(s, "graph \"{}\" {{", quote(title));
    let _ = writeln!(s, "  node [shape=plaintext];");
    for (n, &i) in order.iter().enumerate() {
        let _ = writeln!(s, "  n{n} [label=\"{}\"];", t.nodes[i].spaced());
    }
    let mut edges: Vec<(usize, usize)> = t
        .edges
        .iter()
        .map(|&(a, b)| {
            let (a, b) = (id[a], id[b]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    for (a, b) in edges {
        let _ = writeln!(s, "  n{a} -- n{b};");
    }
    s.push_str("}\n");
    s
}
