//! `alexmod` — exact Alexander module decomposition from Seifert matrices.
//!
//! Subcommands: `alexander` (normalized polynomial), `decompose` (obstruction
//! filtration), `verify` (filtration against the Smith-normal-form oracle),
//! `rep` (explicit representation matrices at one level).

mod error;
mod ingest;
mod report;

use alexmod::metabelian::{Laurent, MetabelianElement, RepBuilder};
use alexmod::obstruction::{
    build_obstruction_system, run_filtration_capped, solution_basis, Decomposition, KnotFiltration,
};
use alexmod::seifert::{
    alexander_matrix, alexander_polynomial, root_classes, validate_seifert, SeifertData,
};
use alexmod::snf::smith_normal_form;
use clap::{Args, Parser, Subcommand, ValueEnum};
use error::CliError;
use ingest::KnotRecord;
use report::*;
use std::path::PathBuf;
use std::time::Instant;

const TOOL: &str = "alexmod";
const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "alexmod",
    version,
    about = "Decompose the Alexander module of a knot from its Seifert matrix",
    after_help = "Exit codes: 0 success, 1 usage, 2 parse, 3 validation, 4 disagreement/internal."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normalized Alexander polynomial of each knot
    Alexander(CommonArgs),
    /// Run the obstruction filtration and report the decomposition
    Decompose(CommonArgs),
    /// Cross-check the filtration against the Smith-normal-form oracle
    Verify(CommonArgs),
    /// Emit one representation matrix per solution at a given level
    Rep(RepArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Knot table (JSON or CSV); defaults to the bundled sample corpus
    #[arg(long, value_name = "PATH")]
    knot_file: Option<PathBuf>,

    /// Restrict the run to a single knot by name
    #[arg(long, value_name = "NAME")]
    knot: Option<String>,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Override the filtration level cap (default: multiplicity + 2)
    #[arg(long, value_name = "INT")]
    max_n: Option<u32>,

    /// Seed for the randomized homomorphism checks
    #[arg(long, value_name = "INT", default_value_t = 0)]
    seed: u64,

    /// Omit timing fields (byte-identical reports)
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct RepArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Representation level n (>= 2)
    #[arg(long, value_name = "INT")]
    level: u32,

    /// Random pairs checked per solution
    #[arg(long, value_name = "INT", default_value_t = 500)]
    trials: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Alexander(args) => run_table(args, Mode::Alexander),
        Command::Decompose(args) => run_table(args, Mode::Decompose),
        Command::Verify(args) => run_table(args, Mode::Verify),
        Command::Rep(args) => run_rep(args),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Alexander,
    Decompose,
    Verify,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Alexander => "alexander",
            Mode::Decompose => "decompose",
            Mode::Verify => "verify",
        }
    }
}

fn load_records(args: &CommonArgs) -> Result<Vec<KnotRecord>, CliError> {
    let mut records = match &args.knot_file {
        Some(path) => ingest::parse_knot_file(path)?,
        None => ingest::bundled_records(),
    };
    if let Some(name) = &args.knot {
        records.retain(|r| &r.name == name);
        if records.is_empty() {
            return Err(CliError::Validation(format!("unknown knot name `{name}`")));
        }
    }
    Ok(records)
}

fn validated(record: &KnotRecord) -> Result<SeifertData, CliError> {
    validate_seifert(&record.name, &record.seifert)
        .map_err(|e| CliError::Validation(format!("{}: {e}", record.name)))
}

fn filtration(s: &SeifertData, max_n: Option<u32>) -> Result<KnotFiltration, CliError> {
    run_filtration_capped(s, max_n).map_err(|e| CliError::Internal(format!("{}: {e}", s.name())))
}

fn expected_matches(entries: &[DecompEntry], expected: &[(String, Vec<u32>)]) -> bool {
    let mut want: Vec<(String, Vec<u32>)> = expected.to_vec();
    want.sort();
    let mut got: Vec<(String, Vec<u32>)> = entries
        .iter()
        .map(|e| (e.factor.clone(), e.exponents.clone()))
        .collect();
    got.sort();
    want == got
}

fn run_table(args: CommonArgs, mode: Mode) -> Result<i32, CliError> {
    let records = load_records(&args)?;
    let mut knots = Vec::new();
    let mut all_agree = true;
    for record in &records {
        let started = Instant::now();
        let s = validated(record)?;
        let a = alexander_matrix(&s);
        let delta = alexander_polynomial(&a)
            .map_err(|e| CliError::Validation(format!("{}: {e}", record.name)))?;
        let rc = root_classes(&delta);

        let mut k = KnotReport {
            name: s.name().to_string(),
            genus: s.genus(),
            alexander: delta.delta().to_string(),
            unit: UnitRecord {
                sign: delta.sign(),
                t_power: delta.t_power(),
            },
            root_classes: rc
                .classes()
                .iter()
                .map(|(f, m)| RootClassReport {
                    factor: f.to_string(),
                    multiplicity: *m,
                })
                .collect(),
            filtration: None,
            decomposition: None,
            complex_form: None,
            oracle: None,
            agreement: None,
            timing_ms: None,
        };

        if mode != Mode::Alexander {
            let out = filtration(&s, args.max_n)?;
            let decomposition = out.decomposition();
            k.filtration = Some(filtration_reports(&out));
            k.decomposition = Some(decomp_entries(&decomposition));
            k.complex_form = Some(complex_summands(decomposition.entries()));

            if mode == Mode::Verify {
                let inv = smith_normal_form(&a);
                let oracle = Decomposition::from_oracle(&inv, &out.branch_moduli());
                let agreement = decomposition.agrees_with(&oracle);
                all_agree &= agreement;
                k.oracle = Some(OracleReport {
                    invariant_factors: inv.factors().iter().map(|d| d.to_string()).collect(),
                    decomposition: decomp_entries(&oracle),
                });
                k.agreement = Some(agreement);
                if let Some(expected) = &record.expected {
                    let entries = k.decomposition.as_deref().unwrap_or(&[]);
                    if !expected_matches(entries, expected) {
                        return Err(CliError::Internal(format!(
                            "{}: decomposition does not match the recorded expectation",
                            record.name
                        )));
                    }
                }
            }
        }

        if !args.no_timing {
            k.timing_ms = Some(started.elapsed().as_millis());
        }
        knots.push(k);
    }

    let report = Report {
        tool: TOOL,
        version: VERSION,
        mode: mode.name(),
        knots,
    };
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
        Format::Text => {
            if mode == Mode::Alexander && args.knot.is_some() && report.knots.len() == 1 {
                println!("{}", report.knots[0].alexander);
            } else {
                print!("{}", report::render_text(&report));
            }
        }
    }
    if mode == Mode::Verify && !all_agree {
        return Ok(4);
    }
    Ok(0)
}

fn run_rep(args: RepArgs) -> Result<i32, CliError> {
    let Some(name) = args.common.knot.clone() else {
        return Err(CliError::Usage("rep requires --knot NAME".to_string()));
    };
    if args.level < 2 {
        return Err(CliError::Usage("--level must be at least 2".to_string()));
    }
    let records = load_records(&args.common)?;
    let record = &records[0];
    let s = validated(record)?;
    let a = alexander_matrix(&s);
    let delta =
        alexander_polynomial(&a).map_err(|e| CliError::Validation(format!("{name}: {e}")))?;
    let rc = root_classes(&delta);

    let mut classes = Vec::new();
    let mut all_passed = true;
    for (factor, _) in rc.classes() {
        let sys = build_obstruction_system(&s, factor, args.level)
            .map_err(|e| CliError::Internal(format!("{name}: {e}")))?;
        let mut branches = Vec::new();
        for branch in solution_basis(&sys) {
            let mut solutions = Vec::new();
            for (index, flat) in branch.value.iter().enumerate() {
                let builder = RepBuilder::from_solution(&s, &branch.field, args.level, flat)
                    .map_err(|e| CliError::Internal(format!("{name}: {e}")))?;
                let check =
                    builder.verify_homomorphism(args.trials, args.common.seed + index as u64);
                all_passed &= check.passed;
                let sample = sample_element(s.size());
                let rep = builder.build_rep(&sample);
                solutions.push(RepSolutionReport {
                    index,
                    phi: matrix_strings(builder.phi()),
                    matrix: matrix_strings(rep.entries()),
                    homomorphism: HomReport {
                        passed: check.passed,
                        trials: check.trials,
                        witness: check.witness,
                    },
                });
            }
            branches.push(RepBranchReport {
                modulus: branch.field.modulus().to_string(),
                solutions,
            });
        }
        classes.push(RepClassReport {
            factor: factor.to_string(),
            branches,
        });
    }

    let report = RepReport {
        tool: TOOL,
        version: VERSION,
        mode: "rep",
        knot: name,
        level: args.level,
        trials: args.trials,
        seed: args.common.seed,
        classes,
    };
    match args.common.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
        Format::Text => print!("{}", report::render_rep_text(&report)),
    }
    Ok(if all_passed { 0 } else { 4 })
}

/// `(e_1 + ... + e_2g) t`: together with the meridian normalization this
/// pins down the whole representation.
fn sample_element(size: usize) -> MetabelianElement {
    MetabelianElement::new(vec![Laurent::one(); size], 1)
}

fn matrix_strings(m: &alexmod::Mat<alexmod::NFElement>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m.at(i, j).display().to_string())
                .collect()
        })
        .collect()
}
