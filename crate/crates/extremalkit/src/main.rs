use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use extremalkit::parallel::anneal_parallel;
use extremalkit::schema::{self, DrawingFile, TreeSpec, WeightsFile};
use extremalkit::svg::{export_svg, SvgOptions};
use extremalkit::{exit, selftest, CliError};
use extremalkit_core::drawings::{
    d_value, draw_diam4, maxcr_diam4, maxcr_spider, maxcr_tree, AnnealParams, Basis, MaxCrossing,
    TreeCrossingNumber,
};
use extremalkit_core::geometry::{analyze, check_legality, Drawing, Edge, Point};
use extremalkit_core::graph::{build_complete_multipartite, thrackle_bound};
use extremalkit_core::multipartite::{ex_multipartite, HostSpec};
use extremalkit_core::oracle;
use extremalkit_core::partition::IndexPartition;
use extremalkit_core::rational::{self, Rational};
use extremalkit_core::weighted::{build_b, ex_min, ex_prod, VertexWeighting, WeightedEdgeFunction};
use extremalkit_core::{Diam4Descriptor, Error, Graph, SpiderDescriptor, Tree};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "extremalkit", version, about = "Weighted Turán numbers and maximum rectilinear crossing numbers of trees")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Largest min-weight of a clique-free graph on the weighted vertices
    ExMin(WeightedArgs),
    /// Largest product-weight of a clique-free graph on the weighted vertices
    ExProd(WeightedArgs),
    /// Most edges of a clique-free subgraph of a complete multipartite graph
    ExMultipartite(MultipartiteArgs),
    /// Brute-force enumeration only
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Maximum rectilinear crossing number from the closed forms
    Maxcr(TreeArgs),
    /// Two-line drawing of a diameter-4 tree
    Draw(DrawArgs),
    /// Search for a drawing with many crossings
    Anneal(AnnealArgs),
    /// Check a drawing and count its crossings
    Verify(VerifyArgs),
    /// Run the acceptance suite
    Selftest(SelftestArgs),
}

#[derive(Subcommand)]
enum OracleCommand {
    ExMin(OracleWeightedArgs),
    ExProd(OracleWeightedArgs),
    ExMultipartite(MultipartiteInput),
}

#[derive(Args)]
struct WeightInput {
    /// Comma-separated weights, integers or p/q
    #[arg(long, conflicts_with = "weights_file", required_unless_present = "weights_file")]
    weights: Option<String>,
    /// JSON file {"weights": [...]}
    #[arg(long)]
    weights_file: Option<PathBuf>,
    /// Order of the forbidden clique
    #[arg(long)]
    clique: usize,
}

#[derive(Args)]
struct WeightedArgs {
    #[command(flatten)]
    input: WeightInput,
    /// Also run the brute-force oracle and compare
    #[arg(long)]
    brute_force: bool,
}

#[derive(Args)]
struct OracleWeightedArgs {
    #[command(flatten)]
    input: WeightInput,
}

#[derive(Args)]
struct MultipartiteInput {
    /// Comma-separated part sizes
    #[arg(long)]
    parts: String,
    #[arg(long)]
    clique: usize,
}

#[derive(Args)]
struct MultipartiteArgs {
    #[command(flatten)]
    input: MultipartiteInput,
    #[arg(long)]
    brute_force: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TreeSource {
    /// Spider leg lengths
    #[arg(long)]
    spider: Option<String>,
    /// Child counts of a diameter-4 tree
    #[arg(long)]
    diam4: Option<String>,
    /// Tree JSON file
    #[arg(long)]
    tree: Option<PathBuf>,
}

#[derive(Args)]
struct TreeArgs {
    #[command(flatten)]
    source: TreeSource,
}

#[derive(Args)]
struct DrawArgs {
    #[arg(long)]
    diam4: String,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Write the drawing as JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnnealArgs {
    #[command(flatten)]
    source: TreeSource,
    #[arg(long, default_value_t = AnnealParams::default().seed)]
    seed: u64,
    /// Moves per restart
    #[arg(long, default_value_t = AnnealParams::default().iterations)]
    iters: u64,
    #[arg(long, default_value_t = AnnealParams::default().restarts)]
    restarts: u32,
    /// Grid half-width
    #[arg(long, default_value_t = AnnealParams::default().grid)]
    grid: i64,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    drawing: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Run only these criteria (1-10)
    #[arg(long, value_delimiter = ',')]
    only: Vec<usize>,
}

struct Report {
    json: Value,
    text: String,
    code: u8,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, code: exit::OK }
    }
}

fn q(value: &Rational) -> String {
    rational::format(value)
}

fn one_based(blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
    blocks.iter().map(|b| b.iter().map(|i| i + 1).collect()).collect()
}

fn edges_one_based(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().into_iter().map(|(u, v)| (u + 1, v + 1)).collect()
}

fn show_blocks(blocks: &[Vec<usize>]) -> String {
    one_based(blocks)
        .iter()
        .map(|b| format!("{{{}}}", b.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn read_weights(input: &WeightInput) -> Result<VertexWeighting, CliError> {
    let values = match (&input.weights, &input.weights_file) {
        (Some(list), _) => schema::parse_rational_list(list)?,
        (None, Some(path)) => {
            let file: WeightsFile = schema::read_json(path)?;
            file.weights.iter().map(|n| n.to_rational()).collect::<Result<_, _>>()?
        }
        (None, None) => return Err(CliError::Input("give --weights or --weights-file".into())),
    };
    Ok(VertexWeighting::new(values)?)
}

fn brute_force_weighted(w: &VertexWeighting, product: bool, clique: usize) -> Result<(Rational, Graph), CliError> {
    let f = if product {
        WeightedEdgeFunction::product(w.clone())
    } else {
        WeightedEdgeFunction::min(w.clone())
    };
    Ok(oracle::max_weight_clique_free(w.len(), &f, clique)?)
}

fn compare(report: &mut Report, value: String, truth: String) -> Result<(), CliError> {
    report.json["brute_force"] = json!(truth);
    report.text.push_str(&format!("\nbrute force: {truth}"));
    if value != truth {
        return Err(Error::Consistency(format!("closed form {value} differs from brute force {truth}")).into());
    }
    Ok(())
}

fn cmd_ex_min(args: &WeightedArgs) -> Result<Report, CliError> {
    let w = read_weights(&args.input)?;
    let clique = args.input.clique;
    let value = ex_min(&w, clique)?;
    let parts = build_b(clique, &w)?.parts;
    let mut report = Report::ok(
        json!({"value": q(&value), "parts": one_based(&parts)}),
        format!("ex_min = {}\nparts: {}", q(&value), show_blocks(&parts)),
    );
    if args.brute_force {
        let (truth, _) = brute_force_weighted(&w, false, clique)?;
        compare(&mut report, q(&value), q(&truth))?;
    }
    Ok(report)
}

fn partition_json(p: &IndexPartition, values: &[Rational]) -> Value {
    json!({
        "blocks": one_based(p.blocks()),
        "block_sums": p.block_sums(values).iter().map(q).collect::<Vec<_>>(),
    })
}

fn cmd_ex_prod(args: &WeightedArgs) -> Result<Report, CliError> {
    let w = read_weights(&args.input)?;
    let clique = args.input.clique;
    let (value, partition) = ex_prod(&w, clique)?;
    let mut report = Report::ok(
        json!({"value": q(&value), "partition": partition_json(&partition, w.weights())}),
        format!("ex_prod = {}\nparts: {}", q(&value), show_blocks(partition.blocks())),
    );
    if args.brute_force {
        let (truth, _) = brute_force_weighted(&w, true, clique)?;
        compare(&mut report, q(&value), q(&truth))?;
    }
    Ok(report)
}

fn host_spec(input: &MultipartiteInput) -> Result<HostSpec, CliError> {
    Ok(HostSpec::new(schema::parse_usize_list(&input.parts)?, input.clique)?)
}

fn cmd_ex_multipartite(args: &MultipartiteArgs) -> Result<Report, CliError> {
    let spec = host_spec(&args.input)?;
    let (value, partition) = ex_multipartite(&spec)?;
    let mut report = Report::ok(
        json!({"value": value, "host_edges": spec.host_edge_count(), "groups": one_based(partition.blocks())}),
        format!(
            "ex = {value} (host has {} edges)\nmerged parts: {}",
            spec.host_edge_count(),
            show_blocks(partition.blocks())
        ),
    );
    if args.brute_force {
        let (truth, _) = oracle::max_edges_clique_free_subgraph(&spec.host(), spec.clique())?;
        compare(&mut report, value.to_string(), truth.to_string())?;
    }
    Ok(report)
}

fn cmd_oracle(cmd: &OracleCommand) -> Result<Report, CliError> {
    let (value, witness) = match cmd {
        OracleCommand::ExMin(a) => {
            let (v, g) = brute_force_weighted(&read_weights(&a.input)?, false, a.input.clique)?;
            (q(&v), g)
        }
        OracleCommand::ExProd(a) => {
            let (v, g) = brute_force_weighted(&read_weights(&a.input)?, true, a.input.clique)?;
            (q(&v), g)
        }
        OracleCommand::ExMultipartite(input) => {
            let spec = host_spec(input)?;
            let host = build_complete_multipartite(spec.part_sizes())?.graph;
            let (v, g) = oracle::max_edges_clique_free_subgraph(&host, spec.clique())?;
            (v.to_string(), g)
        }
    };
    let edges = edges_one_based(&witness);
    let shown: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    Ok(Report::ok(
        json!({"value": value, "witness_edges": edges}),
        format!("brute force = {value}\nwitness: {}", shown.join(" ")),
    ))
}

enum TreeInput {
    Spider(Vec<usize>),
    Diam4(Diam4Descriptor),
    File(Tree),
}

fn tree_input(source: &TreeSource) -> Result<TreeInput, CliError> {
    if let Some(list) = &source.spider {
        return Ok(TreeInput::Spider(schema::parse_usize_list(list)?));
    }
    if let Some(list) = &source.diam4 {
        return Ok(TreeInput::Diam4(Diam4Descriptor::new(schema::parse_usize_list(list)?)?));
    }
    let path = source.tree.as_ref().expect("clap enforces one source");
    let spec: TreeSpec = schema::read_json(path)?;
    Ok(TreeInput::File(spec.to_tree()?))
}

/// A path or a star with fewer than three legs is not a spider; it is a
/// path, so it gets the thrackle bound.
fn spider_or_path(legs: &[usize]) -> Result<Tree, CliError> {
    if legs.len() >= 3 {
        return Ok(SpiderDescriptor::new(legs.to_vec())?.to_tree());
    }
    if legs.contains(&0) {
        return Err(Error::InvalidDescriptor("leg lengths must be positive".into()).into());
    }
    Ok(Tree::path(1 + legs.iter().sum::<usize>()))
}

fn resolve_tree(input: &TreeInput) -> Result<Tree, CliError> {
    Ok(match input {
        TreeInput::Spider(legs) => spider_or_path(legs)?,
        TreeInput::Diam4(desc) => desc.to_tree(),
        TreeInput::File(tree) => tree.clone(),
    })
}

fn basis_name(basis: Basis) -> &'static str {
    match basis {
        Basis::Caterpillar => "caterpillar (thrackle bound)",
        Basis::Spider => "spider formula",
        Basis::Diam4 => "diameter-4 formula",
    }
}

fn exact_report(m: MaxCrossing, extra: Value) -> Report {
    let mut json = json!({"value": m.value, "exact": true, "basis": basis_name(m.basis)});
    if let (Value::Object(map), Value::Object(more)) = (&mut json, extra) {
        map.extend(more);
    }
    Report::ok(json, format!("max-cr = {} ({})", m.value, basis_name(m.basis)))
}

fn cmd_maxcr(args: &TreeArgs) -> Result<Report, CliError> {
    match tree_input(&args.source)? {
        TreeInput::Spider(legs) if legs.len() >= 3 => {
            Ok(exact_report(maxcr_spider(&SpiderDescriptor::new(legs)?), json!({})))
        }
        TreeInput::Diam4(desc) => {
            let m = maxcr_diam4(&desc)?;
            let d = if m.basis == Basis::Diam4 { Some(d_value(&desc)?) } else { None };
            let mut report = exact_report(m, json!({"d": d}));
            if let Some(d) = d {
                report.text.push_str(&format!("\nd = {d}"));
            }
            Ok(report)
        }
        input => {
            let tree = resolve_tree(&input)?;
            match maxcr_tree(&tree)? {
                TreeCrossingNumber::Exact(m) => Ok(exact_report(m, json!({}))),
                TreeCrossingNumber::UpperBound(upper) => {
                    let outcome = anneal_parallel(&tree, &AnnealParams::default())?;
                    Ok(Report::ok(
                        json!({"exact": false, "lower_bound": outcome.crossings, "upper_bound": upper}),
                        format!(
                            "no closed form applies\nlower bound (annealed): {}\nupper bound (thrackle): {upper}",
                            outcome.crossings
                        ),
                    ))
                }
            }
        }
    }
}

fn pairs_json(pairs: &[(Edge, Edge)]) -> Value {
    json!(pairs.iter().map(|(e, f)| [[e.0, e.1], [f.0, f.1]]).collect::<Vec<_>>())
}

fn show_pairs(pairs: &[(Edge, Edge)]) -> String {
    pairs
        .iter()
        .map(|(e, f)| format!("{}-{} / {}-{}", e.0, e.1, f.0, f.1))
        .collect::<Vec<_>>()
        .join(", ")
}

fn write_svg(path: &Option<PathBuf>, drawing: &Drawing) -> Result<(), CliError> {
    if let Some(path) = path {
        std::fs::write(path, export_svg(drawing, &SvgOptions::default()))
            .map_err(|e| CliError::Io(path.display().to_string(), e))?;
    }
    Ok(())
}

fn cmd_draw(args: &DrawArgs) -> Result<Report, CliError> {
    let desc = Diam4Descriptor::new(schema::parse_usize_list(&args.diam4)?)?;
    let built = draw_diam4(&desc)?;
    let summary = analyze(&built.drawing)?;
    write_svg(&args.svg, &built.drawing)?;
    if let Some(path) = &args.out {
        schema::write_json(path, &DrawingFile::from_drawing(&desc.to_tree(), &built.drawing))?;
    }
    Ok(Report::ok(
        json!({
            "crossings": built.crossings,
            "missed": pairs_json(&summary.missed),
            "epsilon": q(&built.plan.epsilon),
            "child_x": built.plan.child_x,
            "anchor_x": built.plan.anchor_x,
        }),
        format!(
            "crossings: {}\nmissed pairs: {}\nepsilon: {}",
            built.crossings,
            show_pairs(&summary.missed),
            q(&built.plan.epsilon)
        ),
    ))
}

fn cmd_anneal(args: &AnnealArgs) -> Result<Report, CliError> {
    let tree = resolve_tree(&tree_input(&args.source)?)?;
    let params = AnnealParams {
        seed: args.seed,
        iterations: args.iters,
        restarts: args.restarts,
        grid: args.grid,
        ..AnnealParams::default()
    };
    let outcome = anneal_parallel(&tree, &params)?;
    let drawing = outcome.drawing.map(|p| Point::new(rational::from_int(p.x), rational::from_int(p.y)));
    write_svg(&args.svg, &drawing)?;
    if let Some(path) = &args.out {
        schema::write_json(path, &DrawingFile::from_drawing(&tree, &outcome.drawing))?;
    }
    let reached = outcome.exact.map(|e| e == outcome.crossings);
    let mut text = format!("crossings: {} (restart {})", outcome.crossings, outcome.restart);
    match outcome.exact {
        Some(e) => text.push_str(&format!("\nclosed form: {e}")),
        None => text.push_str(&format!("\nupper bound (thrackle): {}", outcome.upper_bound)),
    }
    Ok(Report::ok(
        json!({
            "crossings": outcome.crossings,
            "restart": outcome.restart,
            "closed_form": outcome.exact,
            "upper_bound": outcome.upper_bound,
            "reached_closed_form": reached,
        }),
        text,
    ))
}

fn cmd_verify(args: &VerifyArgs) -> Result<Report, CliError> {
    let file: DrawingFile = schema::read_json(&args.drawing)?;
    let (tree, drawing) = file.to_drawing()?;
    let bound = thrackle_bound(tree.graph());
    let report = check_legality(&drawing);
    if !report.is_legal() {
        let violations: Vec<String> = report.violations.iter().map(|v| format!("{v:?}")).collect();
        return Ok(Report {
            json: json!({"legal": false, "violations": violations, "thrackle_bound": bound}),
            text: format!("legal: no\n{}", violations.join("\n")),
            code: exit::INFEASIBLE,
        });
    }
    let summary = analyze(&drawing)?;
    write_svg(&args.svg, &drawing)?;
    Ok(Report::ok(
        json!({
            "legal": true,
            "crossings": summary.crossing_count(),
            "missed": pairs_json(&summary.missed),
            "thrackle_bound": bound,
        }),
        format!(
            "legal: yes\ncrossings: {}\nmissed pairs ({}): {}\nthrackle bound: {bound}",
            summary.crossing_count(),
            summary.missed.len(),
            show_pairs(&summary.missed)
        ),
    ))
}

fn cmd_selftest(args: &SelftestArgs) -> Result<Report, CliError> {
    let numbers: Vec<usize> = if args.only.is_empty() {
        (1..=selftest::CRITERIA.len()).collect()
    } else {
        args.only.clone()
    };
    if let Some(bad) = numbers.iter().find(|&&n| n == 0 || n > selftest::CRITERIA.len()) {
        return Err(CliError::Input(format!("no criterion {bad}")));
    }
    let reports: Vec<_> = numbers.into_iter().map(selftest::run).collect();
    let all = reports.iter().all(|r| r.passed);
    Ok(Report {
        json: json!({
            "passed": all,
            "criteria": reports.iter().map(|r| json!({
                "number": r.number,
                "title": r.title,
                "passed": r.passed,
                "detail": r.detail,
                "seconds": r.elapsed.as_secs_f64(),
            })).collect::<Vec<_>>(),
        }),
        text: reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"),
        code: if all { exit::OK } else { exit::INTERNAL },
    })
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::ExMin(a) => cmd_ex_min(a),
        Command::ExProd(a) => cmd_ex_prod(a),
        Command::ExMultipartite(a) => cmd_ex_multipartite(a),
        Command::Oracle(c) => cmd_oracle(c),
        Command::Maxcr(a) => cmd_maxcr(a),
        Command::Draw(a) => cmd_draw(a),
        Command::Anneal(a) => cmd_anneal(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Selftest(a) => cmd_selftest(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::OK });
        }
    };
    match run(&cli) {
        Ok(report) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.json).expect("json"),
                Format::Text => report.text,
            };
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::from(report.code)
        }
        Err(e) => {
            match cli.format {
                Format::Json => println!("{}", json!({"error": e.to_string(), "exit_code": e.exit_code()})),
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
