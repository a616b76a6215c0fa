//! `springer`: graded traces of Springer representations from the command line.
//!
//! Exit codes: 0 on success, 1 when a verification row fails, 2 for usage or
//! validation errors (reason on stderr).

use std::{fmt::Write as _, process::ExitCode};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};
use springer_core::{
    enumerate_a, field::prime_power, oracle::verify_with, valid_partitions, ComponentElement,
    Evaluator, FlagCountReport, Partition, Poly, RestrictionExpansion, Series, Shape, TableRow,
};

#[derive(Parser)]
#[command(
    name = "springer",
    version,
    about = "Graded traces Q_x(λ, z) of Springer representations"
)]
struct Cli {
    /// Worker threads for `table` and `verify` (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(clap::Args)]
struct Target {
    #[arg(long)]
    series: Series,
    /// Comma-separated parts, e.g. `2,2,1,1`. A `:+` or `:-` orbit suffix is
    /// accepted for very even partitions in series D.
    #[arg(long)]
    partition: String,
    /// `id` or a product of generators such as `z2*z4`.
    #[arg(long, default_value = "id")]
    z: String,
}

#[derive(Subcommand)]
enum Command {
    /// Print Q_x(λ, z).
    Eval {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Print every (λ, z) at rank n.
    Table {
        #[arg(long)]
        series: Series,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Print one restriction step.
    Expand {
        #[command(flatten)]
        target: Target,
        /// Also print terms whose child is the null shape.
        #[arg(long)]
        show_null: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Compare graded traces with flag counts over a finite field.
    Verify {
        #[arg(long)]
        series: Series,
        #[arg(long)]
        max_size: usize,
        #[arg(long, default_value_t = 3)]
        q: u64,
        /// Include every z in A(λ), counting over F_{q²} under z̃∘F.
        #[arg(long)]
        twisted: bool,
        /// Largest rank at which twisted classes are counted.
        #[arg(long, default_value_t = 2)]
        max_twisted_rank: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}

enum Failure {
    Usage(String),
    Mismatch,
}

impl From<springer_core::Error> for Failure {
    fn from(e: springer_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.threads {
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| run(cli.command)),
            Err(e) => Err(Failure::Usage(format!(
                "cannot start {threads} threads: {e}"
            ))),
        },
        None => run(cli.command),
    };
    match outcome {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(reason)) => {
            eprintln!("error: {reason}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<String, Failure> {
    let evaluator = Evaluator::new();
    match command {
        Command::Eval { target, format } => {
            let (series, partition, z) = resolve(&target)?;
            let poly = evaluator.graded_trace(&partition, &z, series)?;
            let betti = evaluator.betti_numbers(&partition, series)?;
            let row = TableRow {
                very_even: partition.validate(series).very_even,
                partition,
                z,
                poly,
            };
            Ok(match format {
                OutputFormat::Text => format!("{}\n", row.poly),
                OutputFormat::Json => format!("{}\n", row_json(series, &row, &betti)),
                OutputFormat::Csv => format!("{CSV_HEADER}\n{}\n", row_csv(&row, &betti)),
            })
        }
        Command::Table { series, n, format } => {
            if n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let rows = evaluator.full_table(series, n)?;
            render_table(&evaluator, series, &rows, format)
        }
        Command::Expand {
            target,
            show_null,
            format,
        } => {
            let (series, partition, z) = resolve(&target)?;
            let expansion = springer_core::expand_restriction(&partition, &z, series)?;
            Ok(render_expansion(&expansion, show_null, format))
        }
        Command::Verify {
            series,
            max_size,
            q,
            twisted,
            max_twisted_rank,
            format,
        } => verify(
            &evaluator,
            series,
            max_size,
            q,
            twisted,
            max_twisted_rank,
            format,
        ),
    }
}

fn resolve(target: &Target) -> Result<(Series, Partition, ComponentElement), Failure> {
    let series = target.series;
    let (text, orbit) = match target.partition.split_once(':') {
        Some((parts, sign @ ("+" | "-"))) => (parts, Some(sign)),
        Some((_, other)) => return Err(Failure::Usage(format!("unknown orbit suffix `:{other}`"))),
        None => (target.partition.as_str(), None),
    };
    let partition: Partition = text.parse()?;
    partition.ensure_valid(series)?;
    if let Some(sign) = orbit {
        if !partition.validate(series).very_even {
            return Err(Failure::Usage(format!(
                "orbit suffix `:{sign}` only applies to very even partitions in series D"
            )));
        }
        eprintln!("note: ignoring orbit suffix `:{sign}`; both orbits have the same values at the identity");
    }
    let z: ComponentElement = target.z.parse()?;
    z.ensure_in_a(&partition, series)?;
    Ok((series, partition, z))
}

const CSV_HEADER: &str = "partition,z,poly,betti";

fn joined<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn row_csv(row: &TableRow, betti: &[BigInt]) -> String {
    format!(
        "{},{},{},{}",
        row.partition.join("."),
        row.z,
        row.poly,
        joined(betti, ";")
    )
}

fn z_json(z: &ComponentElement) -> Value {
    json!(z.support().collect::<Vec<_>>())
}

fn poly_json(poly: &Poly) -> Value {
    json!(poly.coeff_strings())
}

fn row_json(series: Series, row: &TableRow, betti: &[BigInt]) -> Value {
    json!({
        "series": series.to_string(),
        "partition": row.partition.parts(),
        "z": z_json(&row.z),
        "poly": poly_json(&row.poly),
        "betti": betti.iter().map(BigInt::to_string).collect::<Vec<_>>(),
        "very_even": row.very_even,
    })
}

/// The betti column always lists the Betti numbers of the fiber, i.e. the
/// coefficients at `z = id`, whatever the row's `z`.
fn render_table(
    evaluator: &Evaluator,
    series: Series,
    rows: &[TableRow],
    format: OutputFormat,
) -> Result<String, Failure> {
    let mut out = String::new();
    match format {
        OutputFormat::Text => {
            let width = rows
                .iter()
                .map(|r| r.partition.to_string().len())
                .max()
                .unwrap_or(0);
            let zwidth = rows
                .iter()
                .map(|r| r.z.to_string().len())
                .max()
                .unwrap_or(0);
            for row in rows {
                let note = if row.very_even {
                    "  [very even: λ+ and λ-]"
                } else {
                    ""
                };
                writeln!(
                    out,
                    "{:<width$}  {:<zwidth$}  {}{note}",
                    row.partition.to_string(),
                    row.z.to_string(),
                    row.poly
                )
                .unwrap();
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "{CSV_HEADER}").unwrap();
            for row in rows {
                let betti = evaluator.betti_numbers(&row.partition, series)?;
                writeln!(out, "{}", row_csv(row, &betti)).unwrap();
            }
        }
        OutputFormat::Json => {
            let values = rows
                .iter()
                .map(|row| {
                    Ok(row_json(
                        series,
                        row,
                        &evaluator.betti_numbers(&row.partition, series)?,
                    ))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            writeln!(out, "{}", Value::Array(values)).unwrap();
        }
    }
    Ok(out)
}

fn shape_json(shape: &Shape) -> Value {
    match shape {
        Shape::Partition(p) => json!(p.parts()),
        Shape::Null => Value::Null,
    }
}

fn render_expansion(
    expansion: &RestrictionExpansion,
    show_null: bool,
    format: OutputFormat,
) -> String {
    let terms: Vec<_> = expansion
        .terms
        .iter()
        .filter(|t| show_null || !t.is_null())
        .collect();
    let mut out = String::new();
    match format {
        OutputFormat::Text => {
            let width = terms
                .iter()
                .map(|t| t.coeff.to_string().len())
                .max()
                .unwrap_or(0);
            for t in &terms {
                writeln!(
                    out,
                    "{:>width$}  *  {} {}",
                    t.coeff.to_string(),
                    t.child,
                    t.child_z
                )
                .unwrap();
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "coeff,child,z").unwrap();
            for t in &terms {
                let child = match &t.child {
                    Shape::Partition(p) => p.join("."),
                    Shape::Null => "null".into(),
                };
                writeln!(out, "{},{child},{}", t.coeff, t.child_z).unwrap();
            }
        }
        OutputFormat::Json => {
            let value = json!({
                "series": expansion.series.to_string(),
                "partition": expansion.partition.parts(),
                "z": z_json(&expansion.z),
                "terms": terms.iter().map(|t| json!({
                    "coeff": poly_json(&t.coeff),
                    "child": shape_json(&t.child),
                    "z": z_json(&t.child_z),
                })).collect::<Vec<_>>(),
            });
            writeln!(out, "{value}").unwrap();
        }
    }
    out
}

fn verify(
    evaluator: &Evaluator,
    series: Series,
    max_size: usize,
    q: u64,
    twisted: bool,
    max_twisted_rank: usize,
    format: OutputFormat,
) -> Result<String, Failure> {
    match prime_power(q) {
        Some((p, _)) if p != 2 => {}
        _ => {
            return Err(Failure::Usage(format!(
                "--q must be an odd prime power, got {q}"
            )))
        }
    }
    if max_size > 12 {
        return Err(Failure::Usage(format!(
            "--max-size {max_size} exceeds the supported limit 12"
        )));
    }
    let mut cases = Vec::new();
    for rank in 0.. {
        if series.dimension(rank) > max_size {
            break;
        }
        for partition in valid_partitions(series, rank) {
            let classes = if twisted && rank <= max_twisted_rank {
                enumerate_a(&partition, series)
            } else {
                vec![ComponentElement::identity()]
            };
            cases.extend(classes.into_iter().map(|z| (partition.clone(), z)));
        }
    }
    if twisted
        && cases
            .iter()
            .any(|(p, _)| p.size() > series.dimension(max_twisted_rank))
    {
        eprintln!("note: twisted classes counted up to rank {max_twisted_rank} only");
    }
    let reports: Vec<Result<FlagCountReport, String>> = cases
        .par_iter()
        .map(|(partition, z)| {
            verify_with(evaluator, partition, z, series, q)
                .map_err(|e| format!("{series} {partition} {z}: {e}"))
        })
        .collect();

    let mut out = String::new();
    let mut all_ok = true;
    let mut json_rows = Vec::new();
    if format == OutputFormat::Csv {
        writeln!(out, "partition,z,q,count,predicted,status").unwrap();
    }
    for (report, (partition, z)) in reports.iter().zip(&cases) {
        let report = match report {
            Ok(r) => r,
            Err(reason) => {
                all_ok = false;
                eprintln!("error: {reason}");
                match format {
                    OutputFormat::Text => writeln!(out, "{partition} {z}  ERROR").unwrap(),
                    OutputFormat::Csv => {
                        writeln!(out, "{},{z},{q},,,error", partition.join(".")).unwrap()
                    }
                    OutputFormat::Json => json_rows.push(json!({
                        "partition": partition.parts(), "z": z_json(z), "error": reason,
                    })),
                }
                continue;
            }
        };
        all_ok &= report.matched;
        if report.mirror_discrepancy() {
            eprintln!(
                "note: {partition} {z}: mirror orbit gives {} flags, chosen orbit {}",
                report.mirror_count.unwrap_or_default(),
                report.count
            );
        }
        let status = if report.matched { "ok" } else { "MISMATCH" };
        let field = if z.is_identity() { q } else { q * q };
        match format {
            OutputFormat::Text => writeln!(
                out,
                "{partition} {z} over F_{field}: {} flags, predicted {}  {status}",
                report.count, report.predicted
            )
            .unwrap(),
            OutputFormat::Csv => writeln!(
                out,
                "{},{z},{q},{},{},{}",
                partition.join("."),
                report.count,
                report.predicted,
                status.to_lowercase()
            )
            .unwrap(),
            OutputFormat::Json => json_rows.push(json!({
                "series": series.to_string(),
                "partition": partition.parts(),
                "z": z_json(z),
                "q": q,
                "count": report.count.to_string(),
                "predicted": report.predicted.to_string(),
                "matched": report.matched,
                "mirror_count": report.mirror_count.map(|m| m.to_string()),
            })),
        }
    }
    if format == OutputFormat::Json {
        writeln!(out, "{}", Value::Array(json_rows)).unwrap();
    }
    if all_ok {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Mismatch)
    }
}
