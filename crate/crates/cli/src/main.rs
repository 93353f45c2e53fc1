use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fareyap::continuants::index_sequence_int;
use fareyap::density::{compare, empirical_histogram, DensityModel, PrefactorRule};
use fareyap::farey::{choice_map, consecutive_tuples, farey_filtered, farey_stream, filtered_count};
use fareyap::geometry::ConvexRegion;
use fareyap::mosaic::{adjacency_tree, mosaics_for_kernel, row, Grouping, TableOptions, TableRow};
use fareyap::progression::{lattice_count_exact, lattice_main_term, predicted_cardinality, DEFAULT_LATTICE_BUDGET};
use fareyap::rational::{parse, rat};
use fareyap::reference::{verify_rows, ReferenceRow, MOD12_KERNELS, MOD12_ROWS, MOD5_KERNELS, MOD5_ROWS};
use fareyap::tiles::{enumerate_tiles, EnumerateOptions, KernelBound, DEFAULT_NODE_BUDGET};
use fareyap::{ConvexPolygon, IndexTuple, ProgressionClass, RatPoint, TupleType};
use fareyap_cli::config::Config;
use fareyap_cli::formats::{parse_kernels, parse_polygon, tile_json, HistogramFile};
use fareyap_cli::svg::{render_mosaics, RenderSpec};
use fareyap_cli::{dot, table};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Parser)]
#[command(name = "fareyap", version, about = "Farey fractions with denominators in arithmetic progression")]
struct Cli {
    /// JSON file with defaults for the global flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Largest order of index tuples to enumerate.
    #[arg(long, global = true)]
    max_order: Option<usize>,
    /// Node budget of the tile search.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Seed for sampled diagnostics.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Farey sequences and tuples of consecutive denominators.
    #[command(subcommand)]
    Farey(FareyCmd),
    /// Index sequence and successors of a consecutive pair of denominators.
    Kseq(KseqArgs),
    /// Tiles and mosaics.
    #[command(subcommand)]
    Mosaic(MosaicCmd),
    /// Limit density, empirical histograms and their comparison.
    #[command(subcommand)]
    Density(DensityCmd),
    /// Checks against predictions and published tables.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Args, Clone, Copy)]
struct ClassArgs {
    #[arg(long, default_value_t = 1)]
    c: u64,
    #[arg(long, default_value_t = 5)]
    d: u64,
}

impl ClassArgs {
    fn class(&self) -> Result<ProgressionClass, CliError> {
        Ok(ProgressionClass::new(self.c, self.d)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum FareyCmd {
    /// Members of F^Q, or of F^Q(c, d) when both --c and --d are given.
    List {
        #[arg(long)]
        q: u64,
        #[arg(long, requires = "d")]
        c: Option<u64>,
        #[arg(long, requires = "c")]
        d: Option<u64>,
        #[arg(long, value_enum, default_value_t = ListFormat::Csv)]
        format: ListFormat,
    },
    /// Windows of s + 1 consecutive denominators of F^Q(c, d) with their type.
    Tuples {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
}

#[derive(Args)]
struct KseqArgs {
    #[arg(long)]
    q: u64,
    /// Consecutive denominators q',q''.
    #[arg(long)]
    pair: String,
    #[arg(long, default_value_t = 9)]
    n: usize,
    /// Also apply the choice map of this type, e.g. 4,6.
    #[arg(long)]
    r: Option<String>,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Md,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupingArg {
    Seeded,
    Residue,
}

#[derive(Subcommand)]
enum MosaicCmd {
    /// Every admissible tile of one kernel (or up to a kernel) as JSON.
    Enumerate {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, conflicts_with = "max_kernel")]
        kernel: Option<u64>,
        #[arg(long)]
        max_kernel: Option<u64>,
    },
    /// Mosaic rows for a list of kernels such as 1..9 or 3,6,9.
    Table {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        kernels: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Md)]
        format: TableFormat,
        #[arg(long, value_enum, default_value_t = GroupingArg::Seeded)]
        grouping: GroupingArg,
    },
    /// SVG of the mosaics of one kernel, or of the one with the given root.
    Render {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        kernel: u64,
        #[arg(long)]
        root: Option<String>,
        #[arg(long)]
        labels: bool,
        #[arg(long, default_value_t = 800)]
        size: u32,
    },
    /// Adjacency graph of the mosaic with the given root.
    Tree {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        kernel: u64,
        #[arg(long)]
        root: String,
        #[arg(long, value_enum, default_value_t = TreeFormat::Dot)]
        format: TreeFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PrefactorArg {
    Normalized,
    Totient,
}

impl From<PrefactorArg> for PrefactorRule {
    fn from(p: PrefactorArg) -> Self {
        match p {
            PrefactorArg::Normalized => PrefactorRule::Normalized,
            PrefactorArg::Totient => PrefactorRule::Totient,
        }
    }
}

#[derive(Subcommand)]
enum DensityCmd {
    /// g_1 at an exact point.
    Eval {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 100)]
        max_kernel: u64,
        #[arg(long, value_enum, default_value_t = PrefactorArg::Normalized)]
        prefactor: PrefactorArg,
    },
    /// Histogram of scaled consecutive pairs of F^Q(c, d) as JSON.
    Empirical {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, default_value_t = 40)]
        bins: usize,
    },
    /// Compare a histogram file with the truncated density.
    Compare {
        #[arg(long)]
        hist: PathBuf,
        #[arg(long, default_value_t = 300)]
        max_kernel: u64,
        #[arg(long, value_enum, default_value_t = PrefactorArg::Normalized)]
        prefactor: PrefactorArg,
        /// Fail with exit code 2 when the L1 distance exceeds this.
        #[arg(long)]
        tolerance: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichTable {
    Mod5,
    Mod12,
    All,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Exact #F^Q(c, d) against its main term.
    Cardinality {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, default_value_t = 0.05)]
        tolerance: f64,
    },
    /// Lattice counts against their main term, for a polygon file or random polygons.
    Lattice {
        #[arg(long, required_unless_present = "random")]
        poly: Option<PathBuf>,
        /// Number of random polygons drawn with --seed.
        #[arg(long)]
        random: Option<usize>,
        /// Scale; random polygons pick one with scale·diameter ≤ --max-r.
        #[arg(long)]
        scale: Option<u64>,
        #[arg(long, default_value_t = 2000.0)]
        max_r: f64,
        #[arg(long, default_value_t = 1)]
        a: u64,
        #[arg(long, default_value_t = 1)]
        b: u64,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long, default_value_t = 3.0)]
        constant: f64,
    },
    /// Regenerate the published mosaic tables and report every difference.
    Tables {
        #[arg(long, value_enum, default_value_t = WhichTable::All)]
        table: WhichTable,
    },
}

struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError { code: 1, msg: msg.into() }
    }

    fn validation(msg: impl Into<String>) -> Self {
        CliError { code: 2, msg: msg.into() }
    }
}

impl From<fareyap::Error> for CliError {
    fn from(e: fareyap::Error) -> Self {
        let code = match e {
            fareyap::Error::Budget { .. } | fareyap::Error::Size { .. } => 3,
            _ => 1,
        };
        CliError { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

struct Ctx {
    cfg: Config,
}

impl Ctx {
    fn max_order(&self, default: usize) -> usize {
        self.cfg.max_order.unwrap_or(default)
    }

    fn budget(&self) -> usize {
        self.cfg.budget.unwrap_or(DEFAULT_NODE_BUDGET)
    }

    fn table_options(&self, default_order: usize) -> TableOptions {
        let mut o = TableOptions::new(self.max_order(default_order));
        o.budget = self.budget();
        o
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.cfg.out {
            Some(p) => std::fs::write(p, text)?,
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
            }
        }
        Ok(())
    }

    fn emit_json(&self, v: &serde_json::Value) -> Result<(), CliError> {
        self.emit(&(serde_json::to_string_pretty(v)? + "\n"))
    }
}

fn parse_u64_list(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|_| CliError::usage(format!("bad integer {p:?}"))))
        .collect()
}

fn paren(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

fn farey(ctx: &Ctx, cmd: FareyCmd) -> Result<(), CliError> {
    match cmd {
        FareyCmd::List { q, c, d, format } => {
            let fracs: Vec<String> = match (c, d) {
                (Some(c), Some(d)) => farey_filtered(q, ProgressionClass::new(c, d)?).map(|f| f.to_string()).collect(),
                _ => farey_stream(q).map(|f| f.to_string()).collect(),
            };
            match format {
                ListFormat::Csv => ctx.emit(&fracs.iter().map(|f| format!("{f}\n")).collect::<String>()),
                ListFormat::Json => ctx.emit_json(&json!(fracs)),
            }
        }
        FareyCmd::Tuples { q, class, s, format } => {
            let cls = class.class()?;
            let tuples: Vec<(Vec<u64>, TupleType)> = consecutive_tuples(q, cls, s).collect();
            match format {
                TextFormat::Text => ctx.emit(
                    &tuples
                        .iter()
                        .map(|(t, r)| format!("{} r={}\n", paren(t), paren(r.gaps())))
                        .collect::<String>(),
                ),
                TextFormat::Json => ctx.emit_json(&json!(tuples
                    .iter()
                    .map(|(t, r)| json!({"tuple": t, "r": r.gaps()}))
                    .collect::<Vec<_>>())),
            }
        }
    }
}

fn kseq(ctx: &Ctx, a: KseqArgs) -> Result<(), CliError> {
    let pair = parse_u64_list(&a.pair)?;
    let [qp, qpp] = pair[..] else {
        return Err(CliError::usage("--pair takes two denominators, e.g. 16,25"));
    };
    let (k, chain) = index_sequence_int(qp, qpp, a.q, a.n)?;
    let choice = match &a.r {
        Some(r) => {
            let r = TupleType::new(parse_u64_list(r)?)?;
            Some(choice_map(qp, qpp, a.q, &r)?)
        }
        None => None,
    };
    match a.format {
        TextFormat::Text => {
            let mut s = format!("k = {}\nsuccessors = {}\n", paren(k.entries()), paren(&chain.successors));
            if let Some(c) = &choice {
                s.push_str(&format!("choice = {}\n", paren(c)));
            }
            ctx.emit(&s)
        }
        TextFormat::Json => ctx.emit_json(&json!({
            "k": k.entries(),
            "successors": chain.successors,
            "choice": choice,
        })),
    }
}

fn find_root<'a>(mosaics: &'a [fareyap::Mosaic], root: &str) -> Result<&'a fareyap::Mosaic, CliError> {
    let k = IndexTuple::parse(root)?;
    mosaics
        .iter()
        .find(|m| m.root == k)
        .ok_or_else(|| CliError::usage(format!("no mosaic rooted at {k}")))
}

fn mosaic(ctx: &Ctx, cmd: MosaicCmd) -> Result<(), CliError> {
    match cmd {
        MosaicCmd::Enumerate { class, kernel, max_kernel } => {
            let bound = match (kernel, max_kernel) {
                (Some(k), _) => KernelBound::Exactly(k),
                (None, Some(k)) => KernelBound::AtMost(k),
                (None, None) => return Err(CliError::usage("give --kernel or --max-kernel")),
            };
            let opts = EnumerateOptions::new(ctx.max_order(16), bound).with_budget(ctx.budget());
            let tiles = enumerate_tiles(class.class()?, opts)?;
            ctx.emit_json(&json!(tiles.iter().map(tile_json).collect::<Vec<_>>()))
        }
        MosaicCmd::Table { class, kernels, format, grouping } => {
            let cls = class.class()?;
            let mut opts = ctx.table_options(16);
            opts.grouping = match grouping {
                GroupingArg::Seeded => Grouping::Seeded,
                GroupingArg::Residue => Grouping::Residue,
            };
            let kernels = parse_kernels(&kernels).map_err(CliError::usage)?;
            let rows = fareyap::mosaic::table(cls, &kernels, opts)?;
            match format {
                TableFormat::Md => ctx.emit(&table::markdown(&rows, opts.max_order)),
                TableFormat::Json => ctx.emit_json(&table::json_rows(&rows, opts.max_order)),
            }
        }
        MosaicCmd::Render { class, kernel, root, labels, size } => {
            let asm = mosaics_for_kernel(class.class()?, kernel, ctx.table_options(16))?;
            let chosen = match &root {
                Some(r) => vec![find_root(&asm.mosaics, r)?.clone()],
                None => asm.mosaics,
            };
            let spec = RenderSpec {
                width: size,
                height: size,
                labels,
                ..RenderSpec::default()
            };
            ctx.emit(&render_mosaics(&chosen, &spec))
        }
        MosaicCmd::Tree { class, kernel, root, format } => {
            let asm = mosaics_for_kernel(class.class()?, kernel, ctx.table_options(16))?;
            let m = find_root(&asm.mosaics, &root)?;
            let tree = adjacency_tree(m);
            match format {
                TreeFormat::Dot => ctx.emit(&dot::render_tree(&tree, &m.display_name())),
                TreeFormat::Json => ctx.emit_json(&json!({
                    "name": m.display_name(),
                    "root": tree.nodes[tree.root].entries(),
                    "nodes": tree.nodes.iter().map(|k| k.entries().to_vec()).collect::<Vec<_>>(),
                    "edges": tree.edges,
                    "connected": tree.is_connected(),
                    "acyclic": tree.is_acyclic(),
                })),
            }
        }
    }
}

fn density(ctx: &Ctx, cmd: DensityCmd) -> Result<(), CliError> {
    match cmd {
        DensityCmd::Eval { class, x, y, max_kernel, prefactor } => {
            let p = RatPoint::new(parse(&x)?, parse(&y)?);
            let model = DensityModel::new(class.class()?, ctx.max_order(14), max_kernel, prefactor.into())?;
            let (g, cl) = model.g1(&p);
            ctx.emit_json(&json!({
                "x": p.x.to_string(),
                "y": p.y.to_string(),
                "g1": g,
                "classification": format!("{cl:?}"),
                "max_order": ctx.max_order(14),
                "max_kernel": max_kernel,
            }))
        }
        DensityCmd::Empirical { q, class, bins } => {
            let h = empirical_histogram(q, class.class()?, bins);
            ctx.emit_json(&serde_json::to_value(HistogramFile::from(&h))?)
        }
        DensityCmd::Compare { hist, max_kernel, prefactor, tolerance } => {
            let text = std::fs::read_to_string(&hist)?;
            let file: HistogramFile = serde_json::from_str(&text)?;
            let h = file.into_histogram().map_err(CliError::usage)?;
            let model = DensityModel::new(h.cls, ctx.max_order(14), max_kernel, prefactor.into())?;
            let r = compare(&h, &model);
            ctx.emit_json(&json!({
                "q": h.q,
                "bins": h.bins,
                "max_order": ctx.max_order(14),
                "max_kernel": max_kernel,
                "tiles": model.tiles.len(),
                "l1": r.l1,
                "max_ratio_deviation": r.max_ratio_deviation,
                "interior_bins": r.interior_bins,
                "theoretical_mass": r.theoretical_mass,
            }))?;
            match tolerance {
                Some(t) if r.l1 > t => Err(CliError::validation(format!("L1 distance {} exceeds {t}", r.l1))),
                _ => Ok(()),
            }
        }
    }
}

fn random_polygon(rng: &mut ChaCha8Rng) -> ConvexPolygon {
    loop {
        let den = 1000;
        let n = rng.gen_range(3..=8);
        let pts = (0..n)
            .map(|_| RatPoint::new(rat(rng.gen_range(0..=den), den), rat(rng.gen_range(0..=den), den)))
            .collect();
        let p = ConvexPolygon::hull(pts);
        if !p.is_empty() && p.diameter() > 0.05 {
            return p;
        }
    }
}

fn lattice_line(poly: &ConvexPolygon, scale: u64, a: u64, b: u64, d: u64, constant: f64) -> Result<(String, bool), CliError> {
    let exact = lattice_count_exact(&ConvexRegion::from_polygon(poly.clone()), scale, a, b, d, DEFAULT_LATTICE_BUDGET)?;
    let main = lattice_main_term(&poly.area(), scale, d);
    let r = scale as f64 * poly.diameter();
    let bound = constant * r * r.max(std::f64::consts::E).ln();
    let err = (exact as f64 - main).abs();
    let ok = err <= bound;
    Ok((
        format!("exact {exact} main {main:.3} error {err:.3} R {r:.3} bound {bound:.3} {}", if ok { "ok" } else { "FAIL" }),
        ok,
    ))
}

fn verify_tables(ctx: &Ctx, which: WhichTable) -> Result<(), CliError> {
    let mut jobs: Vec<(u64, u64, &[u64], &'static [ReferenceRow], usize)> = Vec::new();
    if matches!(which, WhichTable::Mod5 | WhichTable::All) {
        for c in 1..=4 {
            jobs.push((c, 5, &MOD5_KERNELS, MOD5_ROWS, ctx.max_order(16)));
        }
    }
    if matches!(which, WhichTable::Mod12 | WhichTable::All) {
        jobs.push((3, 12, &MOD12_KERNELS, MOD12_ROWS, ctx.max_order(30)));
    }
    let mut report = String::new();
    let mut failures = 0;
    for (c, d, kernels, published, max_order) in jobs {
        let cls = ProgressionClass::new(c, d)?;
        let mut opts = TableOptions::new(max_order);
        opts.budget = ctx.budget();
        for &k in kernels {
            let rows: Vec<TableRow> = match mosaics_for_kernel(cls, k, opts) {
                Ok(asm) => asm.mosaics.iter().map(|m| row(m, max_order)).collect(),
                Err(e @ (fareyap::Error::Budget { .. } | fareyap::Error::Size { .. })) => return Err(e.into()),
                Err(e) => {
                    failures += 1;
                    report.push_str(&format!("({c},{d}) kernel {k}: {e}\n"));
                    continue;
                }
            };
            let bad = verify_rows(k, &rows, published);
            if bad.is_empty() {
                report.push_str(&format!("({c},{d}) kernel {k}: ok ({} mosaics)\n", rows.len()));
            }
            for m in bad {
                failures += 1;
                report.push_str(&format!("({c},{d}) {m}\n"));
            }
        }
    }
    ctx.emit(&report)?;
    if failures > 0 {
        return Err(CliError::validation(format!("{failures} differences from the published tables")));
    }
    Ok(())
}

fn verify(ctx: &Ctx, cmd: VerifyCmd) -> Result<(), CliError> {
    match cmd {
        VerifyCmd::Cardinality { q, class, tolerance } => {
            let cls = class.class()?;
            let exact = filtered_count(q, cls);
            let pred = predicted_cardinality(q, cls);
            let rel = (exact as f64 - pred).abs() / pred;
            ctx.emit(&format!("exact {exact}\nmain term {pred:.3}\nrelative error {rel:.6}\n"))?;
            if rel > tolerance {
                return Err(CliError::validation(format!("relative error {rel} exceeds {tolerance}")));
            }
            Ok(())
        }
        VerifyCmd::Lattice { poly, random, scale, max_r, a, b, d, constant } => {
            let mut polys = Vec::new();
            if let Some(p) = poly {
                let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p)?)?;
                polys.push(parse_polygon(&v).map_err(CliError::usage)?);
            }
            if let Some(n) = random {
                let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed.unwrap_or(0));
                polys.extend((0..n).map(|_| random_polygon(&mut rng)));
            }
            let mut out = String::new();
            let mut failed = 0;
            for p in &polys {
                let s = scale.unwrap_or_else(|| (max_r / p.diameter()).floor().max(1.0) as u64);
                let (line, ok) = lattice_line(p, s, a, b, d, constant)?;
                out.push_str(&line);
                out.push('\n');
                failed += usize::from(!ok);
            }
            ctx.emit(&out)?;
            if failed > 0 {
                return Err(CliError::validation(format!("{failed} of {} polygons exceed the bound", polys.len())));
            }
            Ok(())
        }
        VerifyCmd::Tables { table } => verify_tables(ctx, table),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let base = match &cli.config {
        Some(p) => Config::load(p).map_err(CliError::usage)?,
        None => Config::default(),
    };
    let cfg = base.overridden_by(Config {
        max_order: cli.max_order,
        budget: cli.budget,
        seed: cli.seed,
        out: cli.out,
    });
    let ctx = Ctx { cfg };
    match cli.command {
        Command::Farey(c) => farey(&ctx, c),
        Command::Kseq(a) => kseq(&ctx, a),
        Command::Mosaic(c) => mosaic(&ctx, c),
        Command::Density(c) => density(&ctx, c),
        Command::Verify(c) => verify(&ctx, c),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
