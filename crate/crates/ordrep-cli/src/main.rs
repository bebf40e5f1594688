//! Command-line front end: decide representability, generate family members,
//! inspect structure, search for separating filters, build representations,
//! and bridge to DIMACS solvers.
//!
//! Reports go to standard output as JSON; a one-line human summary goes to
//! standard error unless `--quiet`.  Exit codes: 0 for success, 1 for a
//! negative mathematical answer (not representable, no separating filter),
//! 2 for usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use ordrep::filter::DEFAULT_ENUM_CAP;
use ordrep::pk::DEFAULT_DEPTH_CAP;
use ordrep::poset::DEFAULT_ANTICHAIN_CAP;
use ordrep::{
    build_representation, candidate_pairs, closure_meet_up, encode_separation, enumerate_filters,
    find_separating_filter, generate_pk_with_cap, is_representable_with, verify_representation,
    Bound, BoundPair, DeciderOptions, ElemSet, Poset, PosetDoc,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "ordrep",
    version,
    about = "Decide whether finite posets embed into fields of sets with bounded meet/join preservation"
)]
struct Cli {
    /// Suppress the human-readable summary on standard error.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

/// Bound pair shared by the mathematical subcommands.
#[derive(Args)]
struct BoundArgs {
    /// Meet bound: an integer >= 3, or "omega".
    #[arg(short = 'm', long, default_value = "3")]
    meets: Bound,
    /// Join bound: an integer >= 3, or "omega".
    #[arg(short = 'n', long, default_value = "3")]
    joins: Bound,
}

impl BoundArgs {
    fn pair(&self) -> BoundPair {
        BoundPair::new(self.meets, self.joins)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether a poset is representable at the given bounds.
    Check {
        /// Poset JSON file.
        file: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Include one separating filter per passing pair in the report.
        #[arg(long)]
        witnesses: bool,
        /// Stop at the first failing pair.
        #[arg(long)]
        fail_fast: bool,
        /// Worker threads for the pair sweep; the report is identical for
        /// every value.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Emit a member of a built-in poset family as JSON.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Structural summary: height, extremal elements, meet and join tables.
    Info {
        /// Poset JSON file.
        file: PathBuf,
    },
    /// Close a set of elements upward and under bounded meets.
    FilterGen {
        /// Poset JSON file.
        file: PathBuf,
        /// Comma-separated labels the closure must contain.
        #[arg(long, value_delimiter = ',', required = true)]
        contains: Vec<String>,
        /// Meet bound: an integer >= 3, or "omega".
        #[arg(short = 'm', long, default_value = "3")]
        meets: Bound,
    },
    /// Search for a filter containing `p` and avoiding `q`.
    Separate {
        /// Poset JSON file.
        file: PathBuf,
        /// Label of the element the filter must contain.
        p: String,
        /// Label of the element the filter must avoid.
        q: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Build and verify a set representation, if one exists.
    Represent {
        /// Poset JSON file.
        file: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Write the report to a file instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Encode one separation question as a DIMACS CNF file.
    Encode {
        /// Poset JSON file.
        file: PathBuf,
        /// Label of the element the filter must contain.
        p: String,
        /// Label of the element the filter must avoid.
        q: String,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Destination CNF file.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Brute-force decision by filter enumeration (small posets only).
    Oracle {
        /// Poset JSON file.
        file: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
    },
}

#[derive(Subcommand)]
enum Family {
    /// The k-th member of the non-representable family (14, 32, 77, ...
    /// elements).  ORDREP_MAX_PK_DEPTH overrides the depth cap.
    Pk {
        k: usize,
        /// Write the poset JSON to a file instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let quiet = cli.quiet;
    match cli.cmd {
        Cmd::Check {
            file,
            bounds,
            witnesses,
            fail_fast,
            jobs,
        } => check(&file, bounds.pair(), witnesses, fail_fast, jobs, quiet),
        Cmd::Generate {
            family: Family::Pk { k, output },
        } => generate_pk_cmd(k, output.as_deref(), quiet),
        Cmd::Info { file } => info(&file, quiet),
        Cmd::FilterGen {
            file,
            contains,
            meets,
        } => filter_gen(&file, &contains, meets, quiet),
        Cmd::Separate { file, p, q, bounds } => separate(&file, &p, &q, bounds.pair(), quiet),
        Cmd::Represent {
            file,
            bounds,
            output,
        } => represent(&file, bounds.pair(), output.as_deref(), quiet),
        Cmd::Encode {
            file,
            p,
            q,
            bounds,
            output,
        } => encode(&file, &p, &q, bounds.pair(), &output, quiet),
        Cmd::Oracle { file, bounds } => oracle(&file, bounds.pair(), quiet),
    }
}

fn load_poset(path: &Path) -> Result<Poset> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: PosetDoc =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Poset::from_doc(&doc).with_context(|| format!("building the poset in {}", path.display()))
}

fn index_of(p: &Poset, label: &str) -> Result<usize> {
    p.index_of(label)
        .with_context(|| format!("no element labeled {label:?}"))
}

fn emit(v: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn say(quiet: bool, msg: String) {
    if !quiet {
        eprintln!("{msg}");
    }
}

fn check(
    file: &Path,
    bounds: BoundPair,
    witnesses: bool,
    fail_fast: bool,
    jobs: usize,
    quiet: bool,
) -> Result<u8> {
    let p = load_poset(file)?;
    let opts = DeciderOptions {
        fail_fast,
        collect_witnesses: witnesses,
        jobs: jobs.max(1),
    };
    let r = is_representable_with(&p, bounds, &opts)?;
    emit(&r.to_json(&p))?;
    if r.representable {
        say(
            quiet,
            format!(
                "representable at {bounds}: all {} candidate pairs separate",
                r.pairs_total
            ),
        );
        Ok(0)
    } else {
        say(
            quiet,
            format!(
                "not representable at {bounds}: {} of {} candidate pairs fail",
                r.failing_pairs.len(),
                r.pairs_total
            ),
        );
        Ok(1)
    }
}

fn generate_pk_cmd(k: usize, output: Option<&Path>, quiet: bool) -> Result<u8> {
    let cap = match std::env::var("ORDREP_MAX_PK_DEPTH") {
        Ok(s) => s
            .parse::<usize>()
            .context("ORDREP_MAX_PK_DEPTH must be a nonnegative integer")?,
        Err(std::env::VarError::NotPresent) => DEFAULT_DEPTH_CAP,
        Err(e) => return Err(e).context("reading ORDREP_MAX_PK_DEPTH"),
    };
    let pk = generate_pk_with_cap(k, cap)?;
    let doc = pk.poset().to_doc();
    let v = serde_json::to_value(&doc)?;
    if let Some(path) = output {
        fs::write(path, format!("{}\n", serde_json::to_string_pretty(&v)?))
            .with_context(|| format!("writing {}", path.display()))?;
    } else {
        emit(&v)?;
    }
    say(
        quiet,
        format!(
            "P_{k}: {} elements{}",
            pk.poset().size(),
            output.map_or(String::new(), |p| format!(" written to {}", p.display()))
        ),
    );
    Ok(0)
}

fn labels_of(p: &Poset, s: &ElemSet) -> Vec<String> {
    s.iter().map(|i| p.label(i).to_string()).collect()
}

fn info(file: &Path, quiet: bool) -> Result<u8> {
    let p = load_poset(file)?;
    let (min, max) = p.extremal_elements();
    let table_json = |rows: Vec<(Vec<usize>, usize)>, value_key: &str| -> Vec<Value> {
        rows.into_iter()
            .map(|(s, z)| {
                json!({
                    "subset": s.iter().map(|&i| p.label(i)).collect::<Vec<_>>(),
                    value_key: p.label(z),
                })
            })
            .collect()
    };
    let meet_rows = p.meet_table(None, DEFAULT_ANTICHAIN_CAP)?;
    let join_rows = p.join_table(None, DEFAULT_ANTICHAIN_CAP)?;
    let summary = format!(
        "{} elements, height {}, {} meet rows, {} join rows",
        p.size(),
        p.height()?,
        meet_rows.len(),
        join_rows.len()
    );
    let v = json!({
        "size": p.size(),
        "labels": p.labels(),
        "height": p.height()?,
        "minimal": labels_of(&p, &min),
        "maximal": labels_of(&p, &max),
        "meet_table": table_json(meet_rows, "meet"),
        "join_table": table_json(join_rows, "join"),
    });
    emit(&v)?;
    say(quiet, summary);
    Ok(0)
}

fn filter_gen(file: &Path, contains: &[String], meets: Bound, quiet: bool) -> Result<u8> {
    let p = load_poset(file)?;
    let mut seed = ElemSet::new(p.size());
    for label in contains {
        seed.insert(index_of(&p, label)?);
    }
    let closure = closure_meet_up(&p, &seed, meets);
    let v = json!({
        "seed": labels_of(&p, &seed),
        "meets": meets.to_string(),
        "closure": labels_of(&p, &closure),
        "size": closure.len(),
    });
    emit(&v)?;
    say(
        quiet,
        format!(
            "closure of {} seed elements under {meets}-meets has {} elements",
            seed.len(),
            closure.len()
        ),
    );
    Ok(0)
}

fn separate(file: &Path, pl: &str, ql: &str, bounds: BoundPair, quiet: bool) -> Result<u8> {
    let p = load_poset(file)?;
    let x = index_of(&p, pl)?;
    let y = index_of(&p, ql)?;
    let found = find_separating_filter(&p, x, y, bounds)?;
    let mut v = json!({
        "pair": [pl, ql],
        "bounds": serde_json::to_value(bounds)?,
        "separable": found.is_some(),
    });
    if let Some(f) = &found {
        v["filter"] = Value::from(labels_of(&p, f.elements()));
    }
    emit(&v)?;
    match found {
        Some(f) => {
            say(
                quiet,
                format!(
                    "{pl:?} separates from {ql:?} at {bounds}: filter with {} elements",
                    f.elements().len()
                ),
            );
            Ok(0)
        }
        None => {
            say(
                quiet,
                format!("no {bounds}-filter contains {pl:?} and avoids {ql:?}"),
            );
            Ok(1)
        }
    }
}

fn represent(file: &Path, bounds: BoundPair, output: Option<&Path>, quiet: bool) -> Result<u8> {
    let p = load_poset(file)?;
    match build_representation(&p, bounds)? {
        None => {
            let v = json!({
                "bounds": serde_json::to_value(bounds)?,
                "representable": false,
            });
            emit(&v)?;
            say(quiet, format!("not representable at {bounds}"));
            Ok(1)
        }
        Some(rep) => {
            let report = verify_representation(&p, &rep);
            let v = json!({
                "bounds": serde_json::to_value(bounds)?,
                "representable": true,
                "verified": report.is_valid(),
                "order_reflecting": report.order_reflecting,
                "representation": rep.to_json(&p),
            });
            if let Some(path) = output {
                fs::write(path, format!("{}\n", serde_json::to_string_pretty(&v)?))
                    .with_context(|| format!("writing {}", path.display()))?;
            } else {
                emit(&v)?;
            }
            say(
                quiet,
                format!(
                    "representable at {bounds}: ground set of {} points, verification {}",
                    rep.ground_size(),
                    if report.is_valid() {
                        "passed"
                    } else {
                        "FAILED"
                    }
                ),
            );
            Ok(0)
        }
    }
}

fn encode(
    file: &Path,
    pl: &str,
    ql: &str,
    bounds: BoundPair,
    output: &Path,
    quiet: bool,
) -> Result<u8> {
    let p = load_poset(file)?;
    let x = index_of(&p, pl)?;
    let y = index_of(&p, ql)?;
    let f = encode_separation(&p, x, y, bounds)?;
    let mut file_out =
        fs::File::create(output).with_context(|| format!("creating {}", output.display()))?;
    f.write_dimacs(&mut file_out)?;
    file_out.flush()?;
    let v = json!({
        "file": output.display().to_string(),
        "variables": f.num_vars,
        "clauses": f.clauses.len(),
    });
    emit(&v)?;
    say(
        quiet,
        format!(
            "wrote {} variables, {} clauses to {}",
            f.num_vars,
            f.clauses.len(),
            output.display()
        ),
    );
    Ok(0)
}

fn oracle(file: &Path, bounds: BoundPair, quiet: bool) -> Result<u8> {
    let p = load_poset(file)?;
    let filters = enumerate_filters(&p, bounds)
        .with_context(|| format!("enumeration is capped at {DEFAULT_ENUM_CAP} elements"))?;
    let pairs = candidate_pairs(&p);
    let failing: Vec<(usize, usize)> = pairs
        .iter()
        .copied()
        .filter(|&(x, y)| {
            !filters
                .iter()
                .any(|f| f.elements().contains(x) && !f.elements().contains(y))
        })
        .collect();
    let representable = failing.is_empty();
    let v = json!({
        "bounds": serde_json::to_value(bounds)?,
        "representable": representable,
        "pairs_total": pairs.len(),
        "failing_pairs": failing
            .iter()
            .map(|&(x, y)| vec![p.label(x), p.label(y)])
            .collect::<Vec<_>>(),
        "filters_total": filters.len(),
    });
    emit(&v)?;
    say(
        quiet,
        format!(
            "brute force at {bounds}: {} filters, {} of {} pairs fail",
            filters.len(),
            failing.len(),
            pairs.len()
        ),
    );
    Ok(if representable { 0 } else { 1 })
}
