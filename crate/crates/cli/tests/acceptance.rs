//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria that cannot be met are still run in full. The test passes when the set of failing
//! criteria is exactly `EXPECTED_FAILURES`, so an unexpected pass is reported as loudly as an
//! unexpected failure.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use fareyap::continuants::{continuant, continuant_shifted};
use fareyap::density::{compare, empirical_histogram, support_membership, DensityModel, PrefactorRule};
use fareyap::farey::{choice_map, farey_stream, filtered_count};
use fareyap::geometry::{loops_boundary_distance, ConvexRegion};
use fareyap::mosaic::{adjacency_tree, mosaics_for_kernel, row, symmetry_partner, Assembly, TableOptions, TableRow};
use fareyap::progression::{lattice_count_exact, lattice_main_term, predicted_cardinality, DEFAULT_LATTICE_BUDGET};
use fareyap::rational::{big, int, rat};
use fareyap::reference::{verify_rows, MOD12_ROWS, MOD5_KERNELS, MOD5_ROWS};
use fareyap::tiles::{strip_polygon, Tile};
use fareyap::{ConvexPolygon, IndexTuple, Mosaic, Outline, ProgressionClass, RatPoint, TupleType};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that fail against the published data, with the reason recorded in each verdict.
const EXPECTED_FAILURES: &[u32] = &[2, 3, 8];

/// Kernel cap for the density model; the criterion fixes only the order.
const DENSITY_MAX_KERNEL: u64 = 300;

struct Verdict {
    pass: bool,
    notes: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict {
            pass: true,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.notes.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn within(&mut self, start: Instant, limit: Duration) {
        let took = start.elapsed();
        self.check(took <= limit, format!("took {took:?}, limit {limit:?}"));
        self.note(format!("runtime {:.1?}", took));
    }
}

/// Tiles regenerated by criteria 2 and 3, reused by criteria 7 and 9.
#[derive(Default)]
struct Regenerated {
    assemblies: Vec<Assembly>,
}

impl Regenerated {
    fn tiles(&self) -> impl Iterator<Item = &Tile> {
        self.assemblies.iter().flat_map(|a| a.mosaics.iter().flat_map(|m| m.tiles.iter()))
    }

    fn mosaic_sets(&self) -> impl Iterator<Item = &[Mosaic]> {
        self.assemblies.iter().map(|a| a.mosaics.as_slice())
    }
}

fn t(v: &[u64]) -> IndexTuple {
    IndexTuple::new(v.to_vec()).unwrap()
}

fn cli(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_fareyap")).args(args).output().unwrap();
    assert!(out.status.success());
    String::from_utf8(out.stdout).unwrap()
}

fn criterion_1() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let kseq = cli(&["kseq", "--q", "25", "--pair", "16,25", "--n", "9"]);
    v.check(kseq.contains("k = (1,5,1,4,1,3,2,2,2)"), format!("kseq printed {kseq:?}"));
    v.check(kseq.contains("successors = (9,20,11,24,13,15,17,19,21)"), format!("kseq printed {kseq:?}"));
    let tuples = cli(&["farey", "tuples", "--q", "25", "--c", "1", "--d", "5", "--s", "2"]);
    v.check(tuples.lines().any(|l| l == "(16,11,21) r=(4,6)"), "tuple (16,11,21) with r=(4,6) missing");
    let r = TupleType::new(vec![4, 6]).unwrap();
    v.check(choice_map(16, 25, 25, &r).unwrap() == [16, 11, 21], "choice map differs");
    v.within(start, Duration::from_secs(1));
    v
}

fn criterion_2(regen: &mut Regenerated) -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let max_order = 16;
    let mut per_class: Vec<Vec<TableRow>> = Vec::new();
    for c in 1..=4 {
        let cls = ProgressionClass::new(c, 5).unwrap();
        let mut rows = Vec::new();
        for k in MOD5_KERNELS {
            let asm = match mosaics_for_kernel(cls, k, TableOptions::new(max_order)) {
                Ok(a) => a,
                Err(e) => {
                    v.check(false, format!("c={c} kernel {k}: {e}"));
                    continue;
                }
            };
            v.check(asm.orphans.is_empty(), format!("c={c} kernel {k}: {} orphan tiles", asm.orphans.len()));
            let r: Vec<TableRow> = asm.mosaics.iter().map(|m| row(m, max_order)).collect();
            if k == 2 {
                v.check(r.is_empty(), format!("c={c}: kernel 2 is not empty"));
            }
            for m in verify_rows(k, &r, MOD5_ROWS) {
                v.check(false, format!("c={c} {m}"));
            }
            rows.extend(r);
            regen.assemblies.push(asm);
        }
        per_class.push(rows);
    }
    v.check(per_class.windows(2).all(|w| w[0] == w[1]), "tables differ between residues c");
    v.within(start, Duration::from_secs(120));
    v
}

fn criterion_3(regen: &mut Regenerated) -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let cls = ProgressionClass::new(3, 12).unwrap();
    let max_order = 30;
    for k in [9, 15, 21, 27] {
        match mosaics_for_kernel(cls, k, TableOptions::new(max_order)) {
            Ok(asm) => {
                let rows: Vec<TableRow> = asm.mosaics.iter().map(|m| row(m, max_order)).collect();
                for m in verify_rows(k, &rows, MOD12_ROWS) {
                    v.check(false, m.to_string());
                }
                regen.assemblies.push(asm);
            }
            Err(e) => v.check(false, format!("kernel {k}: {e}")),
        }
    }
    // The kernel-3 mosaics never close up; compare two truncations and the limiting hexagon.
    let at20 = mosaics_for_kernel(cls, 3, TableOptions::new(20)).unwrap();
    let at30 = mosaics_for_kernel(cls, 3, TableOptions::new(30)).unwrap();
    let count = |a: &Assembly| a.mosaics.iter().map(|m| m.tiles.len()).sum::<usize>();
    let (n20, n30) = (count(&at20), count(&at30));
    v.check(n30 > n20, format!("kernel 3: {n20} tiles at order 20, {n30} at order 30"));
    v.note(format!("kernel 3: {n20} tiles at order 20, {n30} at order 30"));
    let polys: Vec<ConvexPolygon> = at30.mosaics.iter().flat_map(|m| m.tiles.iter().map(|t| t.poly.clone())).collect();
    let union = Outline::union_unchecked(&polys);
    let hexagon = ConvexPolygon::from_fracs(&[(1, 1, 1, 1), (0, 1, 1, 1), (1, 13, 5, 13), (1, 5, 1, 5), (5, 13, 1, 13), (1, 1, 0, 1)])
        .unwrap();
    // Every boundary loop of the truncated union counts, holes included.
    let distance = loops_boundary_distance(&union.loops, &[hexagon.vertices().to_vec()]);
    v.note(format!("kernel 3 truncated union: {} boundary loops", union.loops.len()));
    v.check(distance <= 1e-3, format!("kernel 3 outline is {distance:.4} from the hexagon, tolerance 1e-3"));
    regen.assemblies.push(at30);
    v.within(start, Duration::from_secs(600));
    v
}

fn criterion_4() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let q = 1000;
    for (c, d) in [(1, 5), (0, 5), (3, 12), (1, 2), (0, 2)] {
        let cls = ProgressionClass::new(c, d).unwrap();
        let exact = filtered_count(q, cls) as f64;
        let pred = predicted_cardinality(q, cls);
        let rel = (exact - pred).abs() / pred;
        v.check(rel <= 0.05, format!("({c},{d}): relative error {rel:.4}"));
        v.note(format!("({c},{d}): {exact} vs {pred:.1}, relative error {rel:.4}"));
    }
    v.within(start, Duration::from_secs(60));
    v
}

fn random_polygon(rng: &mut ChaCha8Rng) -> ConvexPolygon {
    let den = 1009;
    loop {
        let n = rng.gen_range(3..=9);
        let pts = (0..n)
            .map(|_| RatPoint::new(rat(rng.gen_range(0..=den), den), rat(rng.gen_range(0..=den), den)))
            .collect();
        let p = ConvexPolygon::hull(pts);
        if !p.is_empty() {
            return p;
        }
    }
}

fn criterion_5() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let poly = random_polygon(&mut rng);
        let d = rng.gen_range(1..=12u64);
        let (a, b) = loop {
            let (a, b) = (rng.gen_range(0..d), rng.gen_range(0..d));
            if a.gcd(&b).gcd(&d) == 1 {
                break (a, b);
            }
        };
        let r_target = rng.gen_range(50.0..=2000.0);
        let scale = ((r_target / poly.diameter()).floor() as u64).max(1);
        let r = scale as f64 * poly.diameter();
        let exact = lattice_count_exact(&ConvexRegion::from_polygon(poly.clone()), scale, a, b, d, DEFAULT_LATTICE_BUDGET)
            .unwrap() as f64;
        let main = lattice_main_term(&poly.area(), scale, d);
        let ratio = (exact - main).abs() / (r * r.ln());
        worst = worst.max(ratio);
        v.check(r <= 2000.0 && ratio <= 3.0, format!("polygon {i}: error {:.1} at R = {r:.1}", (exact - main).abs()));
    }
    v.note(format!("largest |exact − main| / (R log R) = {worst:.3}"));
    v.within(start, Duration::from_secs(120));
    v
}

fn criterion_6() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let c15 = ProgressionClass::new(1, 5).unwrap();
    let hist = empirical_histogram(1500, c15, 40);
    let model = DensityModel::new(c15, 14, DENSITY_MAX_KERNEL, PrefactorRule::Normalized).unwrap();
    let report = compare(&hist, &model);
    v.check(report.l1 <= 0.08, format!("L1 {:.5} over {} interior bins", report.l1, report.interior_bins));
    v.check(report.theoretical_mass >= 0.97, format!("truncated mass {:.5}", report.theoretical_mass));
    v.note(format!(
        "L1 {:.5} over {} interior bins, truncated mass {:.5}, {} tiles",
        report.l1,
        report.interior_bins,
        report.theoretical_mass,
        model.tiles.len()
    ));
    let square = mosaics_for_kernel(c15, 1, TableOptions::new(16)).unwrap().mosaics[0].outline.clone();
    let square = ConvexPolygon::new(square.loops[0].clone()).unwrap();
    let hexagon = ConvexPolygon::from_fracs(&[(1, 1, 1, 1), (0, 1, 1, 1), (1, 13, 5, 13), (1, 5, 1, 5), (5, 13, 1, 13), (1, 1, 0, 1)])
        .unwrap();
    let out5 = support_membership(1000, c15, &[square]).len();
    let out12 = support_membership(1000, ProgressionClass::new(3, 12).unwrap(), &[hexagon]).len();
    v.check(out5 == 0, format!("(1,5): {out5} pairs outside the support"));
    v.check(out12 == 0, format!("(3,12): {out12} pairs outside the support"));
    v.within(start, Duration::from_secs(300));
    v
}

fn small_tuples(order: usize, max_entry: u64) -> Vec<Vec<u64>> {
    let mut all = vec![vec![]];
    let mut layer: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..order {
        layer = layer
            .iter()
            .flat_map(|t| {
                (1..=max_entry).map(move |e| {
                    let mut u = t.clone();
                    u.push(e);
                    u
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

fn criterion_7(regen: &Regenerated) -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    for q in 1..=60u64 {
        let f: Vec<_> = farey_stream(q).collect();
        let mut seen = HashSet::new();
        for w in f.windows(2) {
            v.check(w[1].a * w[0].q - w[0].a * w[1].q == 1, format!("Q={q}: neighbour identity fails"));
            v.check(w[0].q + w[1].q > q, format!("Q={q}: sum property fails"));
            v.check(seen.insert((w[0].q, w[1].q)), format!("Q={q}: pair repeated"));
        }
        let expected = (1..=q)
            .flat_map(|a| (1..=q).map(move |b| (a, b)))
            .filter(|&(a, b)| a + b > q && a.gcd(&b) == 1)
            .count();
        v.check(seen.len() == expected, format!("Q={q}: {} pairs, expected {expected}", seen.len()));
    }
    for k in small_tuples(6, 5) {
        let k = t(&k);
        let n = k.order() as i64;
        v.check(k.kernel() == k.reversed().kernel(), format!("{k}: continuant not symmetric"));
        if n >= 2 {
            let det = continuant(&k, n - 1).unwrap() * continuant_shifted(&k, 2, n - 1).unwrap()
                - continuant(&k, n).unwrap() * continuant_shifted(&k, 2, n - 2).unwrap();
            v.check(det == 1.into(), format!("{k}: determinant identity fails"));
        }
    }
    let mut tiles = 0;
    let mut strips = HashSet::new();
    for tl in regen.tiles() {
        tiles += 1;
        v.check(tl.poly.area() == tl.region.area() * big(&tl.kernel), format!("{}: area law fails", tl.k));
        if !strips.insert(tl.k.clone()) {
            continue;
        }
        let s = strip_polygon(&tl.k, &TupleType::single(tl.order()), &[rat(1, 3), rat(2, 7)]).unwrap();
        v.check(s.area() == int(4) / big(&tl.kernel), format!("{}: strip area differs from 4/p", tl.k));
    }
    v.note(format!("area law on {tiles} tiles, strip areas on {} tuples", strips.len()));
    v.within(start, Duration::from_secs(120));
    v
}

fn criterion_8() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let asm = mosaics_for_kernel(ProgressionClass::new(1, 5).unwrap(), 7, TableOptions::new(16)).unwrap();
    let Some(m) = asm.mosaics.iter().find(|m| m.root == t(&[2, 2, 3])) else {
        v.check(false, "no mosaic rooted at (2,2,3)");
        return v;
    };
    let g = adjacency_tree(m);
    v.check(g.nodes.len() == 30, format!("{} nodes", g.nodes.len()));
    v.check(g.is_connected(), "not connected");
    v.check(g.nodes[g.root] == t(&[2, 2, 3]), "wrong root");
    for (a, b) in [(&[2, 2, 3][..], &[2, 3, 1, 4][..]), (&[2, 3, 1, 4], &[3, 1, 4, 1, 4]), (&[2, 3, 1, 4], &[2, 3, 1, 5, 1])] {
        v.check(g.has_edge(&t(a), &t(b)), format!("edge {}–{} missing", t(a), t(b)));
    }
    v.check(
        g.is_acyclic(),
        format!("{} shared edges among {} tiles, a tree has {}", g.edges.len(), g.nodes.len(), g.nodes.len() - 1),
    );
    v.within(start, Duration::from_secs(60));
    v
}

fn criterion_9(regen: &Regenerated) -> Verdict {
    let mut v = Verdict::new();
    let mut checked = 0;
    for set in regen.mosaic_sets() {
        for m in set {
            checked += 1;
            let name = m.display_name();
            match symmetry_partner(m, set) {
                Ok(p) if name.starts_with('S') => v.check(p.root == m.root && m.symmetric, format!("{name} is not self-mirror")),
                Ok(p) => v.check(p.root == m.root.reversed(), format!("{name}: partner root {} is not reversed", p.root)),
                Err(e) => v.check(false, format!("{name}: {e}")),
            }
        }
    }
    v.note(format!("{checked} mosaics checked"));
    v
}

#[test]
fn acceptance() {
    let mut regen = Regenerated::default();
    let verdicts = vec![
        (1, criterion_1()),
        (2, criterion_2(&mut regen)),
        (3, criterion_3(&mut regen)),
        (4, criterion_4()),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, criterion_7(&regen)),
        (8, criterion_8()),
        (9, criterion_9(&regen)),
    ];
    let mut failed = Vec::new();
    for (n, v) in &verdicts {
        println!("criterion {n}: {}", if v.pass { "PASS" } else { "FAIL" });
        for note in &v.notes {
            println!("    {note}");
        }
        if !v.pass {
            failed.push(*n);
        }
    }
    println!("failing: {failed:?}, expected: {EXPECTED_FAILURES:?}");
    assert_eq!(failed, EXPECTED_FAILURES);
}
