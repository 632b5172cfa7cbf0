//! Command-line interface: classify a germ description, evaluate the
//! canonical-bundle formula over a discriminant, or print and verify the
//! fibre-type catalog.

use clap::{Parser, Subcommand};
use lagfib::canbundle::{self, CanBundleError};
use lagfib::degeneration::{self, DegenError, FibreTypeRecord};
use lagfib::examples;
use lagfib::germfile::{axis_to_str, GermFile, ParseError};
use lagfib::intmat::{self, MonodromyMatrix};
use lagfib::kodaira;
use num_rational::Rational64;
use std::path::PathBuf;

const EXIT_PARSE: i32 = 2;
const EXIT_CLASSIFY: i32 = 3;
const EXIT_RANK_GATE: i32 = 4;
const EXIT_VERIFY: i32 = 5;

#[derive(Parser)]
#[command(name = "lagfib", version, about = "Singular fibres of Lagrangian fibrations over codimension-one points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the germ described by a TOML file.
    Classify {
        file: PathBuf,
        /// Also print the canonical-bundle coefficient and character order.
        #[arg(long)]
        formula: bool,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the canonical-bundle formula over the discriminant section.
    Formula {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the classification table.
    Catalog {
        /// Re-classify every catalog fixture and check it lands on its row.
        #[arg(long)]
        verify: bool,
        /// Only the rows without local sections.
        #[arg(long)]
        shaded: bool,
        #[arg(long)]
        json: bool,
    },
}

struct AppError {
    code: i32,
    message: String,
}

fn err(code: i32, e: impl std::fmt::Display) -> AppError {
    AppError { code, message: e.to_string() }
}

impl From<ParseError> for AppError {
    fn from(e: ParseError) -> Self {
        err(EXIT_PARSE, e)
    }
}

impl From<DegenError> for AppError {
    fn from(e: DegenError) -> Self {
        let code = match e {
            DegenError::InadmissibleGerm => EXIT_RANK_GATE,
            _ => EXIT_CLASSIFY,
        };
        err(code, e)
    }
}

impl From<CanBundleError> for AppError {
    fn from(e: CanBundleError) -> Self {
        let code = match e {
            CanBundleError::CoefficientMismatch { .. } => EXIT_VERIFY,
            _ => EXIT_CLASSIFY,
        };
        err(code, e)
    }
}

impl From<intmat::IntmatError> for AppError {
    fn from(e: intmat::IntmatError) -> Self {
        let code = match e {
            intmat::IntmatError::NotQuasiUnipotent
            | intmat::IntmatError::RankGateViolation { .. } => EXIT_RANK_GATE,
            _ => EXIT_PARSE,
        };
        err(code, e)
    }
}

fn ratio(r: Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn record_json(rec: &FibreTypeRecord) -> serde_json::Value {
    serde_json::json!({
        "type": rec.name.to_string(),
        "multiplicities": rec.multiplicities,
        "fibre": rec.kodaira_fibre.to_string(),
        "degree": rec.degree,
        "local_section": rec.local_section,
        "axis": rec.axis.map(axis_to_str),
    })
}

fn print_record(rec: &FibreTypeRecord) {
    let mults: Vec<String> = rec.multiplicities.iter().map(|m| m.to_string()).collect();
    println!("type: {}", rec.name);
    println!("multiplicities: {}", mults.join(","));
    println!("fibre: {}", rec.kodaira_fibre);
    println!("degree: {}", rec.degree);
    println!("local_section: {}", if rec.local_section { "yes" } else { "no" });
    if let Some(axis) = rec.axis {
        println!("axis: {}", axis_to_str(axis));
    }
}

fn run_classify(file: &PathBuf, formula: bool, json: bool) -> Result<(), AppError> {
    let germ = GermFile::load(file)?;
    let mut out = serde_json::Map::new();

    if let Some(entries) = germ.monodromy_matrix() {
        let u = MonodromyMatrix::new(germ.base_dim as usize, entries)?;
        let index = intmat::quasi_unipotent_index(&u)?;
        let defect = intmat::torus_rank(&u)?;
        if json {
            out.insert(
                "monodromy".to_owned(),
                serde_json::json!({
                    "quasi_unipotent_index": index,
                    "rank_defect": defect,
                }),
            );
        } else {
            println!("quasi_unipotent_index: {index}");
            println!("rank_defect: {defect}");
        }
        if germ.base_dim == 1 {
            let m = u.entries();
            use num_traits::ToPrimitive;
            let sl2 = [
                [m[0][0].to_i64().unwrap(), m[0][1].to_i64().unwrap()],
                [m[1][0].to_i64().unwrap(), m[1][1].to_i64().unwrap()],
            ];
            let k = kodaira::kodaira_from_monodromy(&sl2)
                .map_err(|e| err(EXIT_CLASSIFY, e))?;
            if json {
                out.insert("fibre".to_owned(), serde_json::json!(k.to_string()));
            } else {
                println!("fibre: {k}");
            }
        }
    }

    if let Some(datum) = germ.to_datum()? {
        let rec = degeneration::classify(&datum)?;
        if json {
            out.insert("classification".to_owned(), record_json(&rec));
        } else {
            print_record(&rec);
        }
        if formula {
            let coeff = canbundle::coefficient(&rec)?;
            let order = canbundle::character_order(&datum)?;
            if json {
                out.insert(
                    "formula".to_owned(),
                    serde_json::json!({
                        "coefficient": ratio(coeff),
                        "character_order": order,
                    }),
                );
            } else {
                println!("coefficient: {}", ratio(coeff));
                println!("character_order: {order}");
            }
        }
    }

    if json {
        println!("{}", serde_json::Value::Object(out));
    }
    Ok(())
}

fn run_formula(file: &PathBuf, json: bool) -> Result<(), AppError> {
    let germ = GermFile::load(file)?;
    let Some(entries) = germ.discriminant_types()? else {
        return Err(err(
            EXIT_PARSE,
            "germ file has no discriminant section to evaluate",
        ));
    };
    let mut components = Vec::with_capacity(entries.len());
    for (name, tname) in entries {
        components.push((name, degeneration::record_for(tname)?));
    }
    let report = canbundle::assemble(&components)?;
    if json {
        let entries: Vec<serde_json::Value> = report
            .entries
            .iter()
            .map(|(name, tname, c)| {
                serde_json::json!({
                    "component": name,
                    "type": tname.to_string(),
                    "coefficient": ratio(*c),
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::json!({
                "entries": entries,
                "cartier_multiple": report.cartier_multiple,
            })
        );
    } else {
        for (name, tname, c) in &report.entries {
            println!("{name}: {tname} {}", ratio(*c));
        }
        println!("cartier_multiple: {}", report.cartier_multiple);
    }
    Ok(())
}

fn run_catalog(verify: bool, shaded: bool, json: bool) -> Result<(), AppError> {
    let fixtures = examples::catalog_all();
    let mut rows = Vec::new();
    for f in &fixtures {
        let rec = degeneration::record_for(f.expected)?;
        if shaded && rec.local_section {
            continue;
        }
        rows.push((f, rec));
    }

    let mut failures = 0usize;
    if json {
        let mut arr = Vec::new();
        for (f, rec) in &rows {
            let mut v = record_json(rec);
            if verify {
                let got = degeneration::classify(&f.datum)?;
                let ok = got.name == f.expected;
                if !ok {
                    failures += 1;
                }
                v["verified"] = serde_json::json!(ok);
            }
            arr.push(v);
        }
        println!("{}", serde_json::Value::Array(arr));
    } else {
        for (f, rec) in &rows {
            let mults: Vec<String> =
                rec.multiplicities.iter().map(|m| m.to_string()).collect();
            let mut line = format!(
                "{:<8} mult=[{}] fibre={} degree={} sections={}",
                rec.name.to_string(),
                mults.join(","),
                rec.kodaira_fibre,
                rec.degree,
                if rec.local_section { "yes" } else { "no" },
            );
            if verify {
                let got = degeneration::classify(&f.datum)?;
                if got.name == f.expected {
                    line.push_str(" verified=ok");
                } else {
                    failures += 1;
                    line.push_str(&format!(" verified=FAIL(got {})", got.name));
                }
            }
            println!("{line}");
        }
    }
    if failures > 0 {
        return Err(err(EXIT_VERIFY, format!("{failures} fixtures misclassified")));
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify { file, formula, json } => run_classify(file, *formula, *json),
        Command::Formula { file, json } => run_formula(file, *json),
        Command::Catalog { verify, shaded, json } => run_catalog(*verify, *shaded, *json),
    };
    if let Err(e) = result {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}
