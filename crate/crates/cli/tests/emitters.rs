use fareyap::mosaic::{adjacency_tree, mosaics_for_kernel, row, AdjacencyTree, TableOptions, TableRow};
use fareyap::rational::to_decimal;
use fareyap::{IndexTuple, ProgressionClass, RatPoint};
use fareyap_cli::config::Config;
use fareyap_cli::formats::{parse_kernels, parse_polygon, HistogramFile};
use fareyap_cli::svg::{path_data, render_mosaics, RenderSpec, PRECISION};
use fareyap_cli::{dot, table};

fn c15() -> ProgressionClass {
    ProgressionClass::new(1, 5).unwrap()
}

fn t(v: &[u64]) -> IndexTuple {
    IndexTuple::new(v.to_vec()).unwrap()
}

#[test]
fn svg_has_one_path_per_tile() {
    let asm = mosaics_for_kernel(c15(), 7, TableOptions::new(16)).unwrap();
    let spec = RenderSpec::default();
    let svg = render_mosaics(&asm.mosaics, &spec);
    let tiles: usize = asm.mosaics.iter().map(|m| m.tiles.len()).sum();
    assert_eq!(svg.matches("<path ").count(), tiles);
    assert_eq!(svg, render_mosaics(&asm.mosaics, &spec));
    for m in &asm.mosaics {
        for tl in &m.tiles {
            assert!(svg.contains(&format!("d=\"{}\"", path_data(tl.poly.vertices()))));
        }
    }
}

#[test]
fn path_vertices_are_exact_decimals() {
    let asm = mosaics_for_kernel(c15(), 3, TableOptions::new(16)).unwrap();
    let m = &asm.mosaics[0];
    let svg = render_mosaics(std::slice::from_ref(m), &RenderSpec::default());
    let paths: Vec<&str> = svg.lines().filter(|l| l.starts_with("<path ")).collect();
    assert_eq!(paths.len(), 7);
    for (line, tl) in paths.iter().zip(&m.tiles) {
        let d = line.split("d=\"").nth(1).unwrap().split('"').next().unwrap();
        let coords: Vec<&str> = d.split(' ').filter(|s| !matches!(*s, "M" | "L" | "Z")).collect();
        let expected: Vec<String> = tl
            .poly
            .vertices()
            .iter()
            .flat_map(|p: &RatPoint| [to_decimal(&p.x, PRECISION), to_decimal(&p.y, PRECISION)])
            .collect();
        assert_eq!(coords, expected);
        assert!(coords.iter().all(|c| c.split('.').nth(1).map(str::len) == Some(PRECISION)));
    }
    // Seven tiles over orders 1 to 5, five colours.
    let colours: std::collections::BTreeSet<&str> =
        paths.iter().map(|l| l.split("fill=\"").nth(1).unwrap().split('"').next().unwrap()).collect();
    assert_eq!(colours.len(), 5);
}

#[test]
fn empty_svg_keeps_its_axes() {
    let svg = render_mosaics(&[], &RenderSpec::default());
    assert!(svg.starts_with("<svg "));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("class=\"axes\""));
    assert_eq!(svg.matches("<path ").count(), 0);
}

#[test]
fn palette_cycles() {
    let spec = RenderSpec {
        palette: vec!["#000".into(), "#fff".into()],
        ..RenderSpec::default()
    };
    assert_eq!(spec.color(0), spec.color(2));
    assert_ne!(spec.color(0), spec.color(1));
}

#[test]
fn tree_export() {
    let asm = mosaics_for_kernel(c15(), 7, TableOptions::new(16)).unwrap();
    let m = asm.mosaics.iter().find(|m| m.root == t(&[2, 2, 3])).unwrap();
    let tree = adjacency_tree(m);
    let text = dot::render_tree(&tree, &m.display_name());
    let nodes: Vec<&str> = text.lines().filter(|l| l.contains("[label=")).collect();
    assert_eq!(nodes.len(), 30);
    assert!(nodes[0].contains("\"2 2 3\""));
    assert!(nodes[1].contains("\"2 3 1 4\""));
    assert_eq!(text.matches(" -- ").count(), tree.edges.len());
    assert!(text.contains("n0 -- n1;"));
    assert_eq!(text.lines().filter(|l| l.starts_with("  n0 -- ")).count(), 1);
    assert!(text.contains("\"3 1 5 1 3 1 8 1 2 3 2 1\""));
    assert_eq!(text, dot::render_tree(&tree, &m.display_name()));

    let single = AdjacencyTree {
        nodes: vec![t(&[3])],
        edges: vec![],
        root: 0,
    };
    let s = dot::render_tree(&single, "x");
    assert_eq!(s.matches("[label=").count(), 1);
    assert_eq!(s.matches(" -- ").count(), 0);
}

#[test]
fn tables() {
    let rows: Vec<TableRow> = mosaics_for_kernel(c15(), 8, TableOptions::new(16))
        .unwrap()
        .mosaics
        .iter()
        .map(|m| row(m, 16))
        .collect();
    let md = table::markdown(&rows, 16);
    assert_eq!(md.lines().count(), 4);
    assert!(md.contains("| 8 | SQ_1[8] | 21 | 1-9 |"));
    assert!(md.contains("(1,1), (7/17,1)"));
    assert_eq!(table::markdown(&[], 16).lines().count(), 2);
    let js = table::json_rows(&rows, 16);
    assert_eq!(js.as_array().unwrap().len(), 2);
    assert_eq!(js[0]["vertices"][1][0], "7/17");

    let mut inf = rows[0].clone();
    inf.unbounded = true;
    assert_eq!(table::tile_cell(&inf, 30), "∞(truncated at 30)");
    assert_eq!(table::order_cell(&inf), "1-∞");
    assert_eq!(table::json_rows(&[inf], 30)[0]["truncated_at"], 30);
}

#[test]
fn kernel_lists() {
    assert_eq!(parse_kernels("1..4").unwrap(), vec![1, 2, 3, 4]);
    assert_eq!(parse_kernels("3,6, 9").unwrap(), vec![3, 6, 9]);
    assert_eq!(parse_kernels("1..2,7").unwrap(), vec![1, 2, 7]);
    assert!(parse_kernels("x").is_err());
    assert!(parse_kernels("").is_err());
}

#[test]
fn polygon_files() {
    let v: serde_json::Value = serde_json::from_str(r#"[["1/2", 1], [1, "1/2"], [1, 1]]"#).unwrap();
    let p = parse_polygon(&v).unwrap();
    assert_eq!(p.len(), 3);
    let flat: serde_json::Value = serde_json::from_str(r#"[[0, 0], [1, 1], [2, 2]]"#).unwrap();
    assert!(parse_polygon(&flat).is_err());
}

#[test]
fn histogram_round_trip() {
    let h = fareyap::density::empirical_histogram(120, c15(), 6);
    let file = HistogramFile::from(&h);
    let text = serde_json::to_string(&file).unwrap();
    let back: HistogramFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back.into_histogram().unwrap(), h);
}

#[test]
fn flags_override_the_config() {
    let file = Config {
        max_order: Some(20),
        budget: Some(5),
        seed: Some(1),
        out: None,
    };
    let flags = Config {
        max_order: Some(12),
        ..Config::default()
    };
    let merged = file.overridden_by(flags);
    assert_eq!(merged.max_order, Some(12));
    assert_eq!(merged.budget, Some(5));
    assert_eq!(merged.seed, Some(1));
}
