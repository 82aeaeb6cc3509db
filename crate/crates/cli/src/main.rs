use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use fideal::construct::{
    bound_perfect_set, construct_f_ideal, perfect_number_n2, perfect_number_upper_bound,
};
use fideal::format::{
    parse_complex, parse_ideal, parse_monomial_set, write_complex, write_ideal, write_monomial_set,
};
use fideal::golden::{reproduce, EXAMPLE_IDS};
use fideal::perfect::{is_perfect, is_perfect_relative};
use fideal::search::{perfect_number_with, SearchOptions, SearchStatus};
use fideal::{Error, FVector, Ideal, Monomial, Restriction, UnmixedMethod};

/// Construct, verify and search square-free monomial f-ideals.
///
/// Files hold a header `n=<int>` followed by one support per line, written
/// as ascending indices (`1 3 6`), or `()` for the empty support. A path of
/// `-` reads standard input.
///
/// Exit status: 0 on success or a true verdict, 1 on a false verdict or an
/// incomplete search, 2 on usage or input errors.
#[derive(Parser)]
#[command(name = "fideal", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an f-ideal generated in degree d and print its ideal file.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Pick padding monomials at random with this seed instead of
        /// taking the first unused ones.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Decide whether an ideal file describes an f-ideal.
    Verify {
        file: PathBuf,
        /// Also test unmixedness (homogeneous ideals only).
        #[arg(long)]
        unmixed: bool,
    },
    /// Print the f-vectors of the facet and Stanley-Reisner complexes.
    Fvector { file: PathBuf },
    /// Print the Alexander dual of a complex file.
    Dual { file: PathBuf },
    /// Check upper and lower perfection of a monomial set file.
    PerfectCheck {
        file: PathBuf,
        /// Degree; defaults to the common degree of the set.
        #[arg(long)]
        d: Option<usize>,
        /// Restrict to supports avoiding these indices.
        #[arg(long, value_delimiter = ',', conflicts_with = "containing")]
        without: Option<Vec<usize>>,
        /// Restrict to supports containing these indices.
        #[arg(long, value_delimiter = ',')]
        containing: Option<Vec<usize>>,
    },
    /// Compute the perfect number N(n, d) exactly by search.
    PerfectNumber {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Stop after this many search nodes.
        #[arg(long)]
        budget: Option<u64>,
        /// Write the witness set to this file.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Print the closed-form upper bound on N(n, d).
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Write the set attaining the bound to this file.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Re-derive a bundled worked example and compare with its files.
    Repro {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(EXAMPLE_IDS))]
        id: String,
    },
}

/// Failure carrying its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::EmptyFIdealClass { .. } | Error::SearchTimeout { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| usage(format!("stdin: {e}")))?;
    } else {
        text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

/// Parse errors are prefixed with the file name.
fn parsed<T>(path: &Path, r: fideal::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match e {
        Error::Parse { .. } => usage(format!("{}: {e}", path.display())),
        other => other.into(),
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_json(v: Value) {
    println!("{v}");
}

fn check_degree_range(n: usize, d: usize) -> Result<(), Failure> {
    if d == 0 || d >= n {
        return Err(usage(format!("need 1 <= d <= n - 1, got n = {n}, d = {d}")));
    }
    Ok(())
}

fn index_set(n: usize, indices: &[usize]) -> Result<Monomial, Failure> {
    let m = Monomial::new(indices.iter().copied())?;
    m.check_within(n)?;
    Ok(m)
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let json = cli.json;
    match cli.command {
        Command::Construct { n, d, seed } => {
            if d < 2 || d + 2 > n {
                return Err(usage(format!(
                    "construction needs 2 <= d <= n - 2, got n = {n}, d = {d}"
                )));
            }
            let ideal = construct_f_ideal(n, d, seed)?;
            print!("{}", write_ideal(&ideal));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { file, unmixed } => {
            let ideal = parsed(&file, parse_ideal(&read_input(&file)?))?;
            verify(&ideal, unmixed, json)
        }
        Command::Fvector { file } => {
            let ideal = parsed(&file, parse_ideal(&read_input(&file)?))?;
            let (ff, fnn) = ideal.f_vectors();
            if json {
                print_json(json!({
                    "delta_F": fvector_json(&ff),
                    "delta_N": fvector_json(&fnn),
                }));
            } else {
                println!("delta_F {ff}");
                println!("delta_N {fnn}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dual { file } => {
            let complex = parsed(&file, parse_complex(&read_input(&file)?))?;
            let dual = complex.alexander_dual()?;
            if json {
                let facets: Vec<Vec<usize>> = dual
                    .facets()
                    .iter()
                    .map(|f| f.indices().collect())
                    .collect();
                print_json(json!({ "n": dual.n(), "facets": facets, "dim": dual.dimension() }));
            } else {
                print!("{}", write_complex(&dual));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::PerfectCheck {
            file,
            d,
            without,
            containing,
        } => {
            let (n, set) = parsed(&file, parse_monomial_set(&read_input(&file)?))?;
            let d = match d.or_else(|| set.homogeneous_degree()) {
                Some(d) => d,
                None => return Err(usage("cannot infer the degree; pass --d")),
            };
            let v = match (without, containing) {
                (Some(x), _) => {
                    is_perfect_relative(&set, n, d, index_set(n, &x)?, Restriction::Without)?
                }
                (_, Some(x)) => {
                    is_perfect_relative(&set, n, d, index_set(n, &x)?, Restriction::Containing)?
                }
                _ => is_perfect(&set, n, d)?,
            };
            let witness = v.witness_failure.map(|m| m.indices().collect::<Vec<_>>());
            if json {
                print_json(json!({
                    "perfect": v.is_perfect(),
                    "upper": v.upper,
                    "lower": v.lower,
                    "witness": witness,
                }));
            } else {
                println!("upper perfect: {}", v.upper);
                println!("lower perfect: {}", v.lower);
                if let Some(w) = v.witness_failure {
                    println!("uncovered: {w}");
                }
            }
            Ok(verdict(v.is_perfect()))
        }
        Command::PerfectNumber {
            n,
            d,
            budget,
            witness,
        } => {
            check_degree_range(n, d)?;
            let r = perfect_number_with(n, d, SearchOptions::from_env().with_budget(budget))?;
            if let Some(path) = witness {
                write_file(&path, &write_monomial_set(&r.witness, n))?;
            }
            if json {
                print_json(json!({
                    "n": n,
                    "d": d,
                    "value": r.value,
                    "lower_bound": r.lower_bound,
                    "status": r.status.as_str(),
                    "nodes": r.nodes_explored,
                }));
            } else if r.is_exact() {
                println!("{}", r.value);
            } else {
                println!(
                    "timeout: N({n},{d}) in [{}, {}] after {} nodes",
                    r.lower_bound, r.value, r.nodes_explored
                );
            }
            Ok(verdict(r.status == SearchStatus::Exact))
        }
        Command::Bound { n, d, witness } => {
            let (bound, set) = if d == 2 {
                if n < 4 {
                    return Err(usage(format!("the degree-2 bound needs n >= 4, got {n}")));
                }
                (
                    perfect_number_n2(n),
                    fideal::construct::partition_perfect_n2(n)?,
                )
            } else {
                (perfect_number_upper_bound(n, d)?, bound_perfect_set(n, d)?)
            };
            if let Some(path) = witness {
                write_file(&path, &write_monomial_set(&set, n))?;
            }
            if json {
                print_json(json!({ "n": n, "d": d, "bound": bound }));
            } else {
                println!("{bound}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Repro { id } => {
            let report = reproduce(&id)?;
            if json {
                let checks: Vec<Value> = report
                    .checks
                    .iter()
                    .map(|c| {
                        json!({
                            "label": c.label,
                            "expected": c.expected,
                            "actual": c.actual,
                            "ok": c.passed(),
                        })
                    })
                    .collect();
                print_json(json!({ "id": report.id, "passed": report.passed(), "checks": checks }));
            } else {
                println!("{report}");
                if id == "6.1" {
                    let ideal = fideal::golden::load_ideal("6.1", "ideal")?;
                    print_facets("delta_F", ideal.facet_complex().facets());
                    print_facets("delta_N", ideal.stanley_reisner_complex().facets());
                    let (ff, fnn) = ideal.f_vectors();
                    if ff == fnn {
                        println!("f-vectors equal: {ff}");
                    }
                }
            }
            Ok(verdict(report.passed()))
        }
    }
}

fn print_facets(label: &str, facets: &fideal::MonomialSet) {
    let list: Vec<String> = facets.iter().map(|f| format!("{{{f}}}")).collect();
    println!("{label}: {}", list.join(" "));
}

fn fvector_json(f: &FVector) -> Value {
    json!({ "dim": f.dim(), "f": f.counts() })
}

fn verify(ideal: &Ideal, unmixed: bool, json: bool) -> Result<ExitCode, Failure> {
    let (ff, fnn) = ideal.f_vectors();
    let f_ideal = ff == fnn;
    let mut unmixed_verdict: Option<bool> = None;
    let mut disagreement = None;
    if unmixed {
        let d = ideal
            .homogeneous_degree()
            .ok_or_else(|| usage("--unmixed needs an ideal generated in a single degree"))?;
        let dual = ideal.is_unmixed_f_ideal(d, UnmixedMethod::Dual)?;
        let direct = match ideal.is_unmixed_f_ideal(d, UnmixedMethod::Direct) {
            Ok(v) => v,
            Err(Error::NotFIdeal) => false,
            Err(e) => return Err(e.into()),
        };
        if direct != dual {
            disagreement = Some((direct, dual));
        }
        unmixed_verdict = Some(direct && dual);
    }
    if json {
        print_json(json!({
            "f_ideal": f_ideal,
            "fF": ff.counts(),
            "fN": fnn.counts(),
            "unmixed": unmixed_verdict,
        }));
    } else {
        println!("f_ideal={f_ideal}");
        println!("delta_F {ff}");
        println!("delta_N {fnn}");
        if let Some(u) = unmixed_verdict {
            println!("unmixed={u}");
        }
    }
    if let Some((direct, dual)) = disagreement {
        eprintln!("warning: unmixedness methods disagree (direct={direct}, dual={dual})");
    }
    Ok(verdict(f_ideal))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("fideal: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
