use std::collections::BTreeMap;
use std::fmt::Display;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kummer::campaign::{campaign_with_seed, CampaignReport, DEFAULT_SEED};
use kummer::char2::validate_char2;
use kummer::field::{make_field, Field};
use kummer::kummer::validate_kummer;
use kummer::parse::parse_poly;
use kummer::poly::Polynomial;
use kummer::report::{BoundsOutput, Char2Report, InvariantReport};
use kummer::search::{enumerate, Char2Sweep, Family, Filter, SearchSpec};

#[derive(Parser)]
#[command(
    name = "kummer",
    version,
    about = "Frobenius invariants of Kummer covers y^n = f(x)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genus, Hasse-Witt matrix, a-number, p-rank, bounds and oracle checks.
    Analyze(CurveArgs),
    /// The bounds alone, block by block.
    Bounds(CurveArgs),
    /// y^2 + Q(x) y = P(x) in characteristic 2.
    Char2(Char2Args),
    /// Exhaustive census over a family of curves.
    Search(SearchArgs),
    /// Genus-4 characteristic-11 campaign.
    Campaign {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Recompute the reference examples and compare with frozen values.
    Selftest,
}

#[derive(Args)]
struct Format {
    #[arg(long, conflicts_with = "text")]
    json: bool,
    #[arg(long)]
    text: bool,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    ext: usize,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    f: String,
    #[command(flatten)]
    format: Format,
}

#[derive(Args)]
struct Char2Args {
    #[arg(long, default_value_t = 1)]
    ext: usize,
    #[arg(long)]
    g: usize,
    #[arg(long = "Q")]
    q: String,
    #[arg(long = "P")]
    p: String,
    #[command(flatten)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Kummer,
    Char2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Csv,
    Witnesses,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    ext: usize,
    #[arg(long, value_enum, default_value = "kummer")]
    family: FamilyKind,
    #[arg(long, default_value_t = 2)]
    n: u64,
    #[arg(long)]
    deg: Option<usize>,
    /// Enumerate all leading coefficients instead of monic f.
    #[arg(long)]
    non_monic: bool,
    /// Keep f that are not square-free.
    #[arg(long)]
    all: bool,
    /// Hold a coefficient fixed, as EXPONENT=VALUE.
    #[arg(long = "fix")]
    fix: Vec<String>,
    #[arg(long)]
    g: Option<usize>,
    /// Characteristic-2 family: one entry per Q instead of every pair (Q, P).
    #[arg(long)]
    q_major: bool,
    /// all, superspecial, a=N or prank=N.
    #[arg(long, default_value = "all")]
    filter: String,
    #[arg(long)]
    limit: Option<u64>,
    #[arg(long, default_value_t = 100)]
    witness_cap: usize,
    #[arg(long, value_enum, default_value = "csv")]
    out: Output,
    /// Also write the witness list to this file.
    #[arg(long)]
    witness_file: Option<std::path::PathBuf>,
}

enum Failure {
    /// Mathematically invalid input.
    Invalid(String),
    /// Disagreement between independent computations or with frozen values.
    Internal(String),
}

fn invalid(e: impl Display) -> Failure {
    Failure::Invalid(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match panic::catch_unwind(AssertUnwindSafe(|| run(cli.command))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failure::Invalid(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
        Err(_) => ExitCode::from(1),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Analyze(args) => {
            let field = make_field(args.p, args.ext).map_err(invalid)?;
            let f = parse_poly(&args.f, field).map_err(invalid)?;
            let curve = validate_kummer(field, args.n, &f).map_err(invalid)?;
            let report = InvariantReport::from_curve(&curve);
            emit(&args.format, report.to_json(), report.to_text());
            if !report.oracles.agreement {
                return Err(Failure::Internal("oracle disagreement".into()));
            }
            Ok(())
        }
        Command::Bounds(args) => {
            let field = make_field(args.p, args.ext).map_err(invalid)?;
            let f = parse_poly(&args.f, field).map_err(invalid)?;
            let curve = validate_kummer(field, args.n, &f).map_err(invalid)?;
            let out = BoundsOutput::from_curve(&curve);
            emit(&args.format, out.to_json(), out.to_text());
            Ok(())
        }
        Command::Char2(args) => {
            let field = make_field(2, args.ext).map_err(invalid)?;
            let q = parse_poly(&args.q, field).map_err(invalid)?;
            let p = parse_poly(&args.p, field).map_err(invalid)?;
            let curve = validate_char2(field, args.g, &q, &p).map_err(invalid)?;
            let report = Char2Report::from_curve(&curve);
            emit(&args.format, report.to_json(), report.to_text());
            if !report.oracles.agreement {
                return Err(Failure::Internal("oracle disagreement".into()));
            }
            Ok(())
        }
        Command::Search(args) => search(args),
        Command::Campaign { seed, json } => {
            let report = campaign_with_seed(seed);
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                );
            } else {
                print!("{}", campaign_text(&report));
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Internal(
                    "campaign deviates from the expected outcome".into(),
                ))
            }
        }
        Command::Selftest => selftest(),
    }
}

fn emit(format: &Format, json: String, text: String) {
    if format.text {
        print!("{text}");
    } else {
        println!("{json}");
    }
}

fn parse_filter(text: &str) -> Result<Filter, Failure> {
    let number = |v: &str| {
        v.parse::<usize>()
            .map_err(|_| Failure::Invalid(format!("bad filter value {v:?}")))
    };
    match text.split_once('=') {
        None if text == "all" => Ok(Filter::All),
        None if text == "superspecial" => Ok(Filter::Superspecial),
        Some(("a", v)) => Ok(Filter::ANumber(number(v)?)),
        Some(("prank", v)) => Ok(Filter::PRank(number(v)?)),
        _ => Err(Failure::Invalid(format!("unknown filter {text:?}"))),
    }
}

fn parse_fixed(
    field: Field,
    entries: &[String],
) -> Result<BTreeMap<usize, kummer::field::FieldElement>, Failure> {
    let mut fixed = BTreeMap::new();
    for entry in entries {
        let (e, v) = entry.split_once('=').ok_or_else(|| {
            Failure::Invalid(format!("--fix expects EXPONENT=VALUE, got {entry:?}"))
        })?;
        let e: usize = e
            .trim()
            .parse()
            .map_err(|_| Failure::Invalid(format!("bad exponent in {entry:?}")))?;
        let value = parse_poly(v, field).map_err(invalid)?;
        if !value.is_constant() {
            return Err(Failure::Invalid(format!(
                "--fix value {v:?} is not a constant"
            )));
        }
        fixed.insert(e, value.coeff_at(0));
    }
    Ok(fixed)
}

fn search(args: SearchArgs) -> Result<(), Failure> {
    let field = make_field(args.p, args.ext).map_err(invalid)?;
    let family = match args.family {
        FamilyKind::Kummer => Family::Kummer {
            n: args.n,
            degree: args.deg.ok_or_else(|| {
                Failure::Invalid("--deg is required for the kummer family".into())
            })?,
            monic: !args.non_monic,
            squarefree_only: !args.all,
            fixed: parse_fixed(field, &args.fix)?,
        },
        FamilyKind::Char2 => Family::Char2 {
            g: args
                .g
                .ok_or_else(|| Failure::Invalid("--g is required for the char2 family".into()))?,
            sweep: if args.q_major {
                Char2Sweep::QMajor
            } else {
                Char2Sweep::Pairs
            },
        },
    };
    let spec = SearchSpec {
        field,
        family,
        filter: parse_filter(&args.filter)?,
        limit: args.limit,
        witness_cap: args.witness_cap,
    };
    let table = enumerate(&spec).map_err(invalid)?;
    match args.out {
        Output::Csv => print!("{}", table.to_csv()),
        Output::Witnesses => print!("{}", table.witness_lines()),
    }
    if let Some(path) = args.witness_file {
        std::fs::write(&path, table.witness_lines())
            .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn campaign_text(r: &CampaignReport) -> String {
    let mut out = String::new();
    let verdict = |ok: bool| if ok { "ok" } else { "DEVIATION" };
    out.push_str(&format!(
        "(a) relations for a_3..a_6 on {} pairs (a_1, a_2): {} failures [{}]\n",
        r.relation_pairs,
        r.relation_failures.len(),
        verdict(r.relations_hold())
    ));
    out.push_str(&format!(
        "(b) closed form of b_18 on {} random tuples: {} mismatches [{}]\n",
        r.b18_tuples,
        r.b18_mismatches.len(),
        verdict(r.b18_holds())
    ));
    out.push_str(&format!(
        "(c) sweep of {} tuples, survivors after b_7,b_8,b_9,b_10,b_18,b_19,b_20,b_21: {:?}\n",
        r.sweep.tuples, r.sweep.survivors
    ));
    out.push_str(&format!(
        "    tuples with all eight b_j = 0: {} [{}]\n",
        r.sweep.witnesses.len(),
        verdict(r.sweep_empty())
    ));
    for w in &r.sweep.witnesses {
        out.push_str(&format!("      {w:?}\n"));
    }
    out.push_str(&format!(
        "    of these with the whole 4x4 matrix zero: {}\n",
        r.sweep.superspecial.len()
    ));
    out.push_str(&format!("scope: {}\n", r.scope));
    out
}

struct Check {
    name: &'static str,
    ok: bool,
    detail: String,
}

fn kummer_report(p: u64, n: u64, f: &str) -> InvariantReport {
    let field = make_field(p, 1).expect("prime field");
    let poly = parse_poly(f, field).expect("frozen input parses");
    InvariantReport::from_curve(&validate_kummer(field, n, &poly).expect("frozen curve is valid"))
}

fn selftest() -> Result<(), Failure> {
    let mut checks = Vec::new();

    let r = kummer_report(13, 11, "x^2*(x+1)");
    let got = (r.genus, r.rank, r.a_number, r.p_rank);
    checks.push(Check {
        name: "y^11 = x^2(x+1) over F_13",
        ok: got == (5, 4, 1, 0) && r.oracles.agreement,
        detail: format!("(genus, rank, a, p_rank) = {got:?}"),
    });

    let r = kummer_report(5, 6, "x^3+x^2+1");
    let got = (
        r.genus,
        r.rank,
        r.a_number,
        r.p_rank,
        r.bounds.a_lower,
        r.bounds.f_upper,
    );
    checks.push(Check {
        name: "y^6 = x^3+x^2+1 over F_5",
        ok: got == (4, 1, 3, 1, 3, 1) && r.oracles.agreement,
        detail: format!("(genus, rank, a, p_rank, a_lower, f_upper) = {got:?}"),
    });

    let f2 = make_field(2, 1).expect("F_2");
    let curve = validate_char2(
        f2,
        2,
        &Polynomial::one(f2),
        &Polynomial::from_ints(f2, &[0, 0, 0, 0, 0, 1]),
    )
    .expect("frozen curve is valid");
    let r = Char2Report::from_curve(&curve);
    checks.push(Check {
        name: "y^2 + y = x^5 over F_2",
        ok: r.nilpotent && r.a_number == 1,
        detail: format!("nilpotent {} a {}", r.nilpotent, r.a_number),
    });

    let c = campaign_with_seed(DEFAULT_SEED);
    checks.push(Check {
        name: "genus 4, p = 11: relations for a_3..a_6",
        ok: c.relations_hold(),
        detail: format!("{} failures", c.relation_failures.len()),
    });
    checks.push(Check {
        name: "genus 4, p = 11: closed form of b_18",
        ok: c.b18_holds(),
        detail: format!("{} mismatches", c.b18_mismatches.len()),
    });
    checks.push(Check {
        name: "genus 4, p = 11: no tuple with all eight b_j = 0",
        ok: c.sweep_empty(),
        detail: format!("{} tuples", c.sweep.witnesses.len()),
    });
    checks.push(Check {
        name: "genus 4, p = 11: no F_11-rational superspecial model",
        ok: c.no_superspecial(),
        detail: format!("{} tuples", c.sweep.superspecial.len()),
    });

    for check in &checks {
        let status = if check.ok { "PASS" } else { "FAIL" };
        println!("{status} {}: {}", check.name, check.detail);
    }
    let failed = checks.iter().filter(|c| !c.ok).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Internal(format!(
            "{failed} selftest check(s) failed"
        )))
    }
}
