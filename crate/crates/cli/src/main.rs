//! Command-line front end: generate crystal graphs, run verification checks,
//! and replay the built-in worked examples.
//!
//! Exit codes: 0 on success (all checks pass), 1 when a check or example
//! comparison fails, 2 on usage, parse, or resource errors.  Identical
//! invocations produce byte-identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigInt;

use littelmann::level_zero;
use littelmann::report::Counterexample;
use littelmann::{
    lower, parse_rational, CrystalGraph, Folding, Path, Rational, Report, RootDatum, Weight,
};

#[derive(Parser)]
#[command(
    name = "littelmann",
    version,
    about = "Exact Littelmann path crystals: generation, diagram foldings, level-zero checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a crystal graph and print it as a summary, DOT, or JSON.
    Generate(GenerateArgs),
    /// Run a verification check and print its report.
    Verify(VerifyArgs),
    /// Replay a built-in worked example and compare against expected values.
    Example(ExampleArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Cartan type, e.g. "C2", "A3", "C2~", "A4~2", "A4~2d", "D4~3".
    #[arg(long = "type", value_name = "TYPE")]
    cartan_type: String,

    /// Comma-separated fundamental-weight coefficients in index order.
    #[arg(long, value_name = "COEFFS", conflicts_with = "weight_level0")]
    weight: Option<String>,

    /// Comma-separated level-zero multiplicities, one per classical index
    /// (affine types only; generates the projected crystal).
    #[arg(long = "weight-level0", value_name = "COEFFS")]
    weight_level0: Option<String>,

    /// Abort generation once this many nodes have been visited.
    #[arg(long, default_value_t = 100_000)]
    cap: usize,

    /// Write output to this file instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Summary)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which check to run.
    #[arg(long, value_enum)]
    check: Check,

    /// Folding: a catalog name like "C2>A3" or "C2~>A3~" (either order), or
    /// a path to a JSON file describing one.
    #[arg(long, value_name = "NAME|FILE")]
    folding: Option<String>,

    /// Comma-separated scaling factors, one per source index, to pick one
    /// folding when a catalog name is ambiguous.
    #[arg(long, value_name = "INTS")]
    gamma: Option<String>,

    /// Cartan type, for checks that generate a crystal directly.
    #[arg(long = "type", value_name = "TYPE")]
    cartan_type: Option<String>,

    /// Comma-separated fundamental-weight coefficients in index order.
    #[arg(long, value_name = "COEFFS")]
    weight: Option<String>,

    /// Comma-separated level-zero multiplicities, one per classical index.
    #[arg(long = "weight-level0", value_name = "COEFFS")]
    weight_level0: Option<String>,

    /// Abort generation once this many nodes have been visited.
    #[arg(long, default_value_t = 100_000)]
    cap: usize,

    /// Write output to this file instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Output format (json or summary).
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    /// Cartan-matrix compatibility of a folding's orbits and scalings.
    Conditions,
    /// Operator-level embedding of a crystal into its image under a folding.
    Virtualization,
    /// Null-root scaling identity of a folding.
    PsiDelta,
    /// Factorization of a projected crystal into single-generator factors.
    TensorFactorization,
    /// Single-column virtualization of a projected level-zero crystal.
    KrVirtualization,
    /// Crystal axioms on a generated graph.
    Axioms,
}

#[derive(Args)]
struct ExampleArgs {
    /// Example name; omit to list the available names.
    name: Option<String>,

    /// Write output to this file instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Summary,
    Dot,
    Json,
}

const EXAMPLE_NAMES: [(&str, &str); 3] = [
    (
        "s2-figure",
        "lowering a straight C2 path into a two-segment path",
    ),
    (
        "s3-folding",
        "virtualizing a C2 path and a lowering operator into A3",
    ),
    (
        "appendix-sage",
        "the four-element C2 crystal and its A3 images",
    ),
];

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Example(args) => cmd_example(args),
    }
}

// ---------------------------------------------------------------- generate

fn cmd_generate(args: GenerateArgs) -> Result<ExitCode> {
    let datum = RootDatum::from_name(&args.cartan_type)?;
    let (graph, header) = match (&args.weight, &args.weight_level0) {
        (Some(text), None) => {
            let lambda = parse_weight(&datum, text)?;
            let graph = CrystalGraph::generate(&datum, &lambda, args.cap)?;
            (graph, format!("highest weight: {lambda}"))
        }
        (None, Some(text)) => {
            let m = parse_multiplicities(&datum, text)?;
            let lambda = level_zero::level_zero_weight(&datum, &m)?;
            let graph = level_zero::generate_projected(&datum, &m, args.cap)?;
            (graph, format!("level-zero weight: {lambda}"))
        }
        _ => bail!("exactly one of --weight or --weight-level0 is required"),
    };
    let text = match args.format {
        Format::Summary => summarize_graph(&graph, &header),
        Format::Dot => graph.export_dot(),
        Format::Json => format!("{:#}", graph.export_json()),
    };
    emit(&args.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn summarize_graph(graph: &CrystalGraph, header: &str) -> String {
    let highest = graph.highest_weight_nodes();
    let mut out = String::new();
    let _ = writeln!(out, "type: {}", graph.datum().cartan_type());
    let _ = writeln!(out, "{header}");
    let _ = writeln!(
        out,
        "{}, {}, {}",
        counted(graph.node_count(), "node"),
        counted(graph.edge_count(), "edge"),
        counted(highest.len(), "highest-weight node")
    );
    let mut multiset: BTreeMap<String, usize> = BTreeMap::new();
    for v in 0..graph.node_count() {
        *multiset.entry(graph.weight(v).to_string()).or_insert(0) += 1;
    }
    let _ = writeln!(out, "weights:");
    for (w, n) in &multiset {
        let _ = writeln!(out, "  {w}  x{n}");
    }
    if !highest.is_empty() {
        let _ = writeln!(out, "highest-weight nodes:");
        for v in highest {
            let _ = writeln!(out, "  {v}: {}", graph.weight(v));
        }
    }
    out
}

fn counted(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("{n} {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

// ------------------------------------------------------------------ verify

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let report = match args.check {
        Check::Conditions => folding_from_args(&args)?.check_conditions(),
        Check::Virtualization => {
            let fold = folding_from_args(&args)?;
            let text = args.weight.as_deref().ok_or_else(|| {
                anyhow!(
                    "--check virtualization needs --weight (a dominant weight of {})",
                    fold.source().cartan_type()
                )
            })?;
            let lambda = parse_weight(fold.source(), text)?;
            fold.verify_virtualization(&lambda, args.cap)?
        }
        Check::PsiDelta => {
            let fold = folding_from_args(&args)?;
            psi_delta_report(&fold)?
        }
        Check::TensorFactorization => {
            let datum = datum_from_args(&args)?;
            let text = require_level0(&args)?;
            let m = parse_multiplicities(&datum, text)?;
            level_zero::check_tensor_factorization(&datum, &m, args.cap)?
        }
        Check::KrVirtualization => {
            let fold = folding_from_args(&args)?;
            let text = require_level0(&args)?;
            let m = parse_multiplicities(fold.source(), text)?;
            let r = single_column(&m)?;
            level_zero::verify_kr_virtualization(&fold, r, args.cap)?
        }
        Check::Axioms => {
            let datum = datum_from_args(&args)?;
            let graph = match (&args.weight, &args.weight_level0) {
                (Some(text), None) => {
                    CrystalGraph::generate(&datum, &parse_weight(&datum, text)?, args.cap)?
                }
                (None, Some(text)) => level_zero::generate_projected(
                    &datum,
                    &parse_multiplicities(&datum, text)?,
                    args.cap,
                )?,
                _ => bail!("--check axioms needs exactly one of --weight or --weight-level0"),
            };
            graph.check_axioms()
        }
    };
    let text = match args.format {
        Format::Json => format!("{:#}\n", serde_json::to_value(&report)?),
        Format::Summary => summarize_report(&report),
        Format::Dot => bail!("--format dot does not apply to verify"),
    };
    emit(&args.out, &text)?;
    Ok(if report.is_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn psi_delta_report(fold: &Folding) -> Result<Report> {
    let ok = level_zero::check_psi_delta(fold)?;
    let report = if ok {
        Report::pass("psi-delta")
    } else {
        let scale = Rational::from_integer(BigInt::from(fold.source().a(0)? * fold.gamma(0)?));
        let lhs = fold.psi(&fold.source().delta()?)?;
        let rhs = fold.target().delta()?.scale(&scale);
        Report::fail(
            "psi-delta",
            Counterexample {
                node: "null root".to_string(),
                index: None,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            },
        )
    };
    Ok(report
        .with_param("folding", fold.name())
        .with_param("source", fold.source().cartan_type())
        .with_param("target", fold.target().cartan_type()))
}

fn summarize_report(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "check: {}", report.check);
    for (k, v) in &report.params {
        let _ = writeln!(out, "  {k}: {v}");
    }
    for (k, v) in &report.sizes {
        let _ = writeln!(out, "  {k}: {v}");
    }
    let _ = writeln!(
        out,
        "verdict: {}",
        if report.is_pass() { "pass" } else { "fail" }
    );
    if let Some(cx) = &report.counterexample {
        let at = match cx.index {
            Some(i) => format!("{} (index {i})", cx.node),
            None => cx.node.clone(),
        };
        let _ = writeln!(out, "counterexample: at {at}");
        let _ = writeln!(out, "  lhs: {}", cx.lhs);
        let _ = writeln!(out, "  rhs: {}", cx.rhs);
    }
    out
}

fn folding_from_args(args: &VerifyArgs) -> Result<Folding> {
    let spec = args.folding.as_deref().ok_or_else(|| {
        anyhow!("this check needs --folding (a catalog name like \"C2~>A3~\" or a JSON file)")
    })?;
    let path = PathBuf::from(spec);
    if path.is_file() {
        if args.gamma.is_some() {
            bail!("--gamma applies only to catalog folding names, not JSON files");
        }
        let text =
            fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        return Ok(Folding::from_json(&value)?);
    }
    let gamma = args
        .gamma
        .as_deref()
        .map(|text| {
            text.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<i64>()
                        .with_context(|| format!("invalid scaling factor {:?}", part.trim()))
                })
                .collect::<Result<Vec<i64>>>()
        })
        .transpose()?;
    match Folding::from_name_with_gamma(spec, gamma.as_deref()) {
        Ok(fold) => Ok(fold),
        // Off-catalog scalings: keep the catalog orbits and install the
        // requested scalings, so `--check conditions` can judge them.
        Err(littelmann::Error::InvalidFolding(_)) if gamma.is_some() => {
            let base = Folding::from_name(spec)?;
            let gamma = gamma.expect("guarded above");
            let indices = base.source().index_set().to_vec();
            if gamma.len() != indices.len() {
                bail!(
                    "--gamma for {} needs {} comma-separated values, for indices {:?}",
                    base.name(),
                    indices.len(),
                    indices
                );
            }
            let mut orbits = BTreeMap::new();
            let mut scalings = BTreeMap::new();
            for (&i, &g) in indices.iter().zip(&gamma) {
                orbits.insert(i, base.orbit(i)?.to_vec());
                scalings.insert(i, g);
            }
            Ok(Folding::new(
                base.source().clone(),
                base.target().clone(),
                orbits,
                scalings,
            )?)
        }
        Err(e) => Err(e.into()),
    }
}

fn datum_from_args(args: &VerifyArgs) -> Result<RootDatum> {
    let name = args
        .cartan_type
        .as_deref()
        .ok_or_else(|| anyhow!("this check needs --type"))?;
    Ok(RootDatum::from_name(name)?)
}

fn require_level0(args: &VerifyArgs) -> Result<&str> {
    args.weight_level0
        .as_deref()
        .ok_or_else(|| anyhow!("this check needs --weight-level0"))
}

fn single_column(m: &BTreeMap<usize, u64>) -> Result<usize> {
    if m.len() == 1 {
        let (&r, &mult) = m.iter().next().expect("nonempty");
        if mult == 1 {
            return Ok(r);
        }
    }
    bail!("--check kr-virtualization expects --weight-level0 with a single entry equal to 1")
}

// ----------------------------------------------------------------- example

fn cmd_example(args: ExampleArgs) -> Result<ExitCode> {
    let Some(name) = args.name.as_deref() else {
        return Ok(list_examples());
    };
    let (text, matched) = match name {
        "s2-figure" => example_s2_figure()?,
        "s3-folding" => example_s3_folding()?,
        "appendix-sage" => example_appendix_sage()?,
        _ => {
            eprintln!("unknown example {name:?}");
            return Ok(list_examples());
        }
    };
    emit(&args.out, &text)?;
    Ok(if matched {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn list_examples() -> ExitCode {
    eprintln!("available examples:");
    for (name, blurb) in EXAMPLE_NAMES {
        eprintln!("  {name:<14} {blurb}");
    }
    ExitCode::from(2)
}

/// A comparison section of an example transcript: a caption plus the
/// computed and expected renderings of the same object.
fn compare(out: &mut String, all_match: &mut bool, caption: &str, computed: &str, expected: &str) {
    let _ = writeln!(out, "{caption}");
    let _ = writeln!(out, "  computed: {computed}");
    let _ = writeln!(out, "  expected: {expected}");
    if computed != expected {
        *all_match = false;
    }
}

fn verdict_line(out: &mut String, all_match: bool) {
    let _ = writeln!(
        out,
        "verdict: {}",
        if all_match { "match" } else { "mismatch" }
    );
}

fn int_weight(coeffs: &[(usize, i64)]) -> Weight {
    Weight::from_coords(
        coeffs
            .iter()
            .map(|&(i, c)| (i, Rational::from_integer(BigInt::from(c)))),
        Rational::from_integer(BigInt::from(0)),
    )
}

fn rat_weight(coeffs: &[(usize, &str)]) -> Result<Weight> {
    let mut parsed = Vec::new();
    for &(i, c) in coeffs {
        parsed.push((i, parse_rational(c)?));
    }
    Ok(Weight::from_coords(
        parsed,
        Rational::from_integer(BigInt::from(0)),
    ))
}

/// Chart sending c1*L1 + c2*L2 in C2 to the plane point (c1 + c2, c2), the
/// coordinates in which the example figure is drawn.
fn c2_plane_point(w: &Weight) -> String {
    let x = w.coeff(1) + w.coeff(2);
    let y = w.coeff(2);
    format!("({x}, {y})")
}

fn example_s2_figure() -> Result<(String, bool)> {
    let c2 = RootDatum::from_name("C2")?;
    let pi = Path::straight(int_weight(&[(1, 3), (2, 1)]));
    let f1pi = lower(&c2, &pi, 1, 1)?
        .ok_or_else(|| anyhow!("lowering the example path unexpectedly vanished"))?;

    let mut out = String::new();
    let mut all_match = true;
    let _ = writeln!(out, "lowering f_1 applied to pi = {pi} in C2");
    let _ = writeln!(out, "f_1 pi = {f1pi}");
    compare(
        &mut out,
        &mut all_match,
        "segment count",
        &f1pi.segments().len().to_string(),
        "2",
    );
    compare(
        &mut out,
        &mut all_match,
        "first segment",
        &f1pi.segments()[0].to_string(),
        &rat_weight(&[(1, "-1"), (2, "4/3")])?.to_string(),
    );
    compare(
        &mut out,
        &mut all_match,
        "breakpoint, plotted as (c1 + c2, c2)",
        &c2_plane_point(&f1pi.segments()[0]),
        "(1/3, 4/3)",
    );
    compare(
        &mut out,
        &mut all_match,
        "endpoint",
        &f1pi.endpoint().to_string(),
        &int_weight(&[(1, 1), (2, 2)]).to_string(),
    );
    compare(
        &mut out,
        &mut all_match,
        "endpoint, plotted as (c1 + c2, c2)",
        &c2_plane_point(&f1pi.endpoint()),
        "(3, 2)",
    );
    verdict_line(&mut out, all_match);
    Ok((out, all_match))
}

fn example_s3_folding() -> Result<(String, bool)> {
    let fold = Folding::from_name("C2>A3")?;
    let c2 = fold.source().clone();
    let pi = Path::straight(int_weight(&[(1, 3), (2, 1)]));
    let f2pi = lower(&c2, &pi, 2, 1)?
        .ok_or_else(|| anyhow!("lowering the example path unexpectedly vanished"))?;
    let image = fold.virtualize_path(&pi)?;
    let image_f2 = fold
        .virtual_lower(&image, 2)?
        .ok_or_else(|| anyhow!("virtual lowering unexpectedly vanished"))?;

    let mut out = String::new();
    let mut all_match = true;
    let _ = writeln!(out, "folding {} with scaling gamma = (1, 2)", fold.name());
    let _ = writeln!(out, "pi = {pi} in C2");
    compare(
        &mut out,
        &mut all_match,
        "f_2 pi",
        &f2pi.to_string(),
        &Path::straight(int_weight(&[(1, 5), (2, -1)])).to_string(),
    );
    compare(
        &mut out,
        &mut all_match,
        "image of pi in A3",
        &image.to_string(),
        &Path::straight(int_weight(&[(1, 3), (2, 2), (3, 3)])).to_string(),
    );
    compare(
        &mut out,
        &mut all_match,
        "virtual lowering at 2 (f-hat_2 applied twice)",
        &image_f2.to_string(),
        &Path::straight(int_weight(&[(1, 5), (2, -2), (3, 5)])).to_string(),
    );
    compare(
        &mut out,
        &mut all_match,
        "image of f_2 pi",
        &fold.virtualize_path(&f2pi)?.to_string(),
        &image_f2.to_string(),
    );
    verdict_line(&mut out, all_match);
    Ok((out, all_match))
}

fn example_appendix_sage() -> Result<(String, bool)> {
    let fold = Folding::from_name("C2>A3")?;
    let c2 = fold.source().clone();
    let lambda = int_weight(&[(1, 1)]);
    let graph = CrystalGraph::generate(&c2, &lambda, 1000)?;

    let mut out = String::new();
    let mut all_match = true;
    let _ = writeln!(out, "folding {} with scaling gamma = (1, 2)", fold.name());
    let _ = writeln!(
        out,
        "crystal generated by the straight path to {lambda} in C2"
    );
    compare(
        &mut out,
        &mut all_match,
        "element count",
        &graph.node_count().to_string(),
        "4",
    );

    // The four elements form a single chain from the highest path.
    let mut source = Path::straight(lambda.clone());
    let mut image = fold.virtualize_path(&source)?;
    let mut word = String::new();
    let chain = [None, Some(1), Some(2), Some(1)];
    let _ = writeln!(out, "elements and their images:");
    for step in chain {
        if let Some(i) = step {
            source = lower(&c2, &source, i, 1)?
                .ok_or_else(|| anyhow!("chain lowering unexpectedly vanished"))?;
            image = fold
                .virtual_lower(&image, i)?
                .ok_or_else(|| anyhow!("chain virtual lowering unexpectedly vanished"))?;
            word = format!("f_{i} {word}");
        }
        let label = if word.is_empty() {
            "(highest)".to_string()
        } else {
            word.trim_end().to_string()
        };
        let _ = writeln!(out, "  {label}");
        compare(
            &mut out,
            &mut all_match,
            "  path and virtual image",
            &format!("{source}  ->  {image}"),
            &format!("{source}  ->  {}", fold.virtualize_path(&source)?),
        );
    }
    // The chain ends at the lowest element: lowering vanishes in both colors.
    compare(
        &mut out,
        &mut all_match,
        "lowering vanishes at the last element",
        &format!(
            "{:?}, {:?}",
            lower(&c2, &source, 1, 1)?.is_none(),
            lower(&c2, &source, 2, 1)?.is_none()
        ),
        "true, true",
    );
    verdict_line(&mut out, all_match);
    Ok((out, all_match))
}

// ------------------------------------------------------------------ shared

fn parse_weight(datum: &RootDatum, text: &str) -> Result<Weight> {
    let indices = datum.index_set();
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != indices.len() {
        bail!(
            "--weight for type {} needs {} comma-separated values, for indices {:?}",
            datum.cartan_type(),
            indices.len(),
            indices
        );
    }
    let mut w = Weight::zero();
    for (&i, part) in indices.iter().zip(&parts) {
        let c = parse_rational(part)?;
        w.add_scaled(&Weight::fundamental(i), &c);
    }
    Ok(w)
}

fn parse_multiplicities(datum: &RootDatum, text: &str) -> Result<BTreeMap<usize, u64>> {
    let indices = datum.classical_index_set();
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != indices.len() {
        bail!(
            "--weight-level0 for type {} needs {} comma-separated values, for indices {:?}",
            datum.cartan_type(),
            indices.len(),
            indices
        );
    }
    let mut m = BTreeMap::new();
    for (&i, part) in indices.iter().zip(&parts) {
        let v: u64 = part
            .parse()
            .with_context(|| format!("invalid multiplicity {part:?}"))?;
        if v > 0 {
            m.insert(i, v);
        }
    }
    Ok(m)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    let mut owned;
    let text = if text.ends_with('\n') {
        text
    } else {
        owned = text.to_string();
        owned.push('\n');
        &owned
    };
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}
