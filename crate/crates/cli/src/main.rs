//! Command-line front end: build, classify, decompose, enumerate, verify
//! and export Riordan graphs.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 verification
//! failure.

use clap::{Args, Parser, Subcommand};
use riordan_core::decomp;
use riordan_core::graph::{self, FamilyId, RiordanGraphSpec};
use riordan_core::matrix::BinaryRiordanMatrix;
use riordan_core::oracle::OracleBudget;
use riordan_core::spec_lang::GRAMMAR_HELP;
use riordan_core::traversal::{self, EulerianStatus, HamiltonStatus};
use riordan_core::verify::{self, Suite};
use riordan_core::{parse_series_spec, Error};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "riordan",
    about = "Construct, classify, decompose and verify Riordan graphs over GF(2)",
    after_help = GRAMMAR_HELP,
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct SpecArgs {
    /// Series spec for g (e.g. `rat:(1)/(1+t)`, `named:catalan`)
    #[arg(short = 'g', long)]
    g: Option<String>,
    /// Series spec for f (e.g. `named:pascal_f`, `poly:t+t^2`)
    #[arg(short = 'f', long)]
    f: Option<String>,
    /// Named family shortcut (pascal, catalan, motzkin, toeplitz:<poly>,
    /// fibonacci, path, complete, complete_bipartite, null, star,
    /// kary_tree:<k>); overrides -g/-f
    #[arg(long)]
    family: Option<String>,
    /// Number of vertices
    #[arg(short = 'n', long)]
    n: usize,
}

impl SpecArgs {
    fn spec(&self) -> Result<RiordanGraphSpec, Error> {
        if let Some(name) = &self.family {
            return Ok(FamilyId::parse(name)?.spec(self.n));
        }
        match (&self.g, &self.f) {
            (Some(g), Some(f)) => Ok(RiordanGraphSpec::new(
                parse_series_spec(g)?,
                parse_series_spec(f)?,
                self.n,
            )),
            _ => Err(Error::Parse(
                "provide either --family or both -g and -f".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and print it (adjacency rows by default)
    Build {
        #[command(flatten)]
        spec: SpecArgs,
        /// Emit DOT
        #[arg(long, conflicts_with_all = ["json", "edges"])]
        dot: bool,
        /// Emit a JSON report
        #[arg(long, conflicts_with_all = ["dot", "edges"])]
        json: bool,
        /// Emit the edge list as `u,v` lines
        #[arg(long, conflicts_with_all = ["dot", "json"])]
        edges: bool,
    },
    /// Classify a spec: properness, subgroups, decomposability, traversal
    Check {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        json: bool,
    },
    /// Print the odd/even block decomposition
    Decompose {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        json: bool,
    },
    /// Count labeled Riordan graphs of one order
    Enumerate {
        /// Number of vertices
        #[arg(short = 'n', long)]
        n: usize,
        /// List each generating pair
        #[arg(long)]
        list: bool,
        /// Also enumerate the binary Riordan matrices of this order
        #[arg(long)]
        matrices: bool,
    },
    /// Run the verification suites
    Verify {
        /// all | figures | theorems | conjectures
        #[arg(long, default_value = "all")]
        suite: String,
        /// Seed for the randomized suites
        #[arg(long)]
        seed: Option<u64>,
        /// Run a single criterion (1..=15)
        #[arg(long)]
        criterion: Option<usize>,
    },
    /// Write graph and matrix files
    Export {
        #[command(flatten)]
        spec: SpecArgs,
        /// Write DOT here
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the `u,v` edge list here
        #[arg(long)]
        edges: Option<PathBuf>,
        /// Write the JSON report here
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the lower-triangular matrix text of B(g,f)_n here
        #[arg(long)]
        matrix_text: Option<PathBuf>,
        /// Write the matrix JSON ({order, rows, a_seq, z_seq}) here
        #[arg(long)]
        matrix_json: Option<PathBuf>,
        /// Write the four reference matrices into this directory as
        /// golden/fig{1,2,3,5}.txt
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) | Error::InvalidSpec(_) => {
                    eprintln!("{GRAMMAR_HELP}");
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Command::Build {
            spec,
            dot,
            json,
            edges,
        } => {
            let spec = spec.spec()?;
            let g = graph::build_graph(&spec)?;
            if dot {
                print!("{}", g.to_dot());
            } else if edges {
                print!("{}", g.to_edge_csv());
            } else if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&graph::graph_report_json(&spec)?)
                        .expect("serializable report")
                );
            } else {
                print!("{}", g.to_adjacency_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { spec, json } => check_command(&spec.spec()?, json),
        Command::Decompose { spec, json } => {
            let spec = spec.spec()?;
            let blocks = decomp::decompose(&spec)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&blocks.to_json()).expect("serializable")
                );
            } else {
                println!("odd-first permutation: {:?}", blocks.permutation);
                print!("{}", blocks.to_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { n, list, matrices } => {
            let census = graph::enumerate_labeled(n)?;
            println!("count={}", census.count);
            if !census.collisions.is_empty() {
                println!("collisions={}", census.collisions.len());
                for (a, b) in &census.collisions {
                    println!("  {a} = {b}");
                }
            }
            if list {
                for (spec, graph) in &census.graphs {
                    println!("{spec} edges={}", graph.edge_count());
                }
            }
            if matrices {
                let mc = riordan_core::matrix::enumerate_order_n(n)?;
                println!(
                    "matrices_total={} matrices_invertible={}",
                    mc.total, mc.invertible
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            seed,
            criterion,
        } => {
            let suite = Suite::parse(&suite)
                .ok_or_else(|| Error::Parse(format!("unknown suite `{suite}`")))?;
            let seed = seed.unwrap_or(0x52494F52);
            let budget = OracleBudget::from_env();
            println!("seed={seed}");
            let outcome = if let Some(id) = criterion {
                if !(1..=15).contains(&id) {
                    return Err(Error::Parse("criterion ids run from 1 to 15".into()));
                }
                verify::SuiteOutcome {
                    reports: vec![verify::criterion(id, seed, &budget)],
                    findings: Vec::new(),
                }
            } else {
                verify::run_suite(suite, seed, &budget)
            };
            let mut all_passed = true;
            for r in &outcome.reports {
                println!("{}", r.line());
                for d in &r.details {
                    println!("    {d}");
                }
                all_passed &= r.passed;
            }
            for f in &outcome.findings {
                println!("finding: {f}");
            }
            if all_passed {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(3))
            }
        }
        Command::Export {
            spec,
            dot,
            edges,
            json,
            matrix_text,
            matrix_json,
            golden,
        } => {
            let spec = spec.spec()?;
            let g = graph::build_graph(&spec)?;
            let write = |path: &PathBuf, content: String| -> Result<(), Error> {
                std::fs::write(path, content)
                    .map_err(|e| Error::Unsupported(format!("cannot write {path:?}: {e}")))
            };
            if let Some(p) = dot {
                write(&p, g.to_dot())?;
            }
            if let Some(p) = edges {
                write(&p, g.to_edge_csv())?;
            }
            if let Some(p) = json {
                let report = graph::graph_report_json(&spec)?;
                write(
                    &p,
                    serde_json::to_string_pretty(&report).expect("serializable") + "\n",
                )?;
            }
            if matrix_text.is_some() || matrix_json.is_some() {
                let (gs, fs) = spec.expand()?;
                let m = BinaryRiordanMatrix::build(&gs, &fs, spec.n)?;
                if let Some(p) = matrix_text {
                    write(&p, m.to_text())?;
                }
                if let Some(p) = matrix_json {
                    write(
                        &p,
                        serde_json::to_string_pretty(&m.to_json()).expect("serializable") + "\n",
                    )?;
                }
            }
            if let Some(dir) = golden {
                std::fs::create_dir_all(&dir)
                    .map_err(|e| Error::Unsupported(format!("cannot create {dir:?}: {e}")))?;
                for (name, rows) in [
                    ("fig1.txt", verify::figures::PASCAL_6.as_slice()),
                    ("fig2.txt", verify::figures::TOEPLITZ_6.as_slice()),
                    ("fig3.txt", verify::figures::CATALAN_6.as_slice()),
                    ("fig5.txt", verify::figures::PRISM_6.as_slice()),
                ] {
                    let g = verify::figures::graph_from_rows(rows);
                    write(&dir.join(name), g.to_adjacency_text())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn check_command(spec: &RiordanGraphSpec, json: bool) -> Result<ExitCode, Error> {
    let stats = graph::basic_stats(spec)?;
    let classes = graph::classify_subgroup(spec)?;
    let pattern = graph::subdiagonal_pattern(spec)?;
    let oe = decomp::classify_oe(spec)?;
    let proper = spec.is_proper()?;
    let euler = if proper {
        Some(traversal::eulerian_check(spec)?)
    } else {
        traversal::eulerian_check(spec).ok()
    };
    let hamilton = traversal::hamiltonian_verdict(spec)?;

    if json {
        let euler_json = euler.as_ref().map(|e| match e {
            EulerianStatus::Cycle => serde_json::json!({"status": "cycle"}),
            EulerianStatus::Trail(a, b) => {
                serde_json::json!({"status": "trail", "endpoints": [a, b]})
            }
            EulerianStatus::NoTrail => serde_json::json!({"status": "none"}),
        });
        let report = serde_json::json!({
            "schema_version": "1",
            "spec": spec.to_json(),
            "proper": proper,
            "edge_count": stats.edge_count,
            "degrees": stats.degrees,
            "matching_number": stats.matching_number,
            "has_consecutive_ham_path": stats.has_consecutive_ham_path,
            "subdiagonal": format!("{pattern:?}").to_lowercase(),
            "subgroups": classes.names(),
            "decomposition": oe.to_json(),
            "eulerian": euler_json,
            "hamiltonian": hamilton.to_json(),
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
        return Ok(ExitCode::SUCCESS);
    }

    println!("spec: {spec}");
    println!("proper: {proper}");
    println!("edges: {}", stats.edge_count);
    println!("degrees: {:?}", stats.degrees);
    if let Some(m) = stats.matching_number {
        println!("matching number: {m}");
    }
    println!("subdiagonal: {pattern:?}");
    println!("subgroups: {}", classes.names().join(", "));
    let flag = |name: &str, f: &decomp::Flag| {
        println!(
            "{name}: {} ({})",
            if f.holds { "yes" } else { "no" },
            f.evidence
        );
    };
    flag("o-decomposable", &oe.o_decomposable);
    flag("e-decomposable", &oe.e_decomposable);
    flag("io-decomposable", &oe.io_decomposable);
    flag("ie-decomposable", &oe.ie_decomposable);
    if let Some(f) = &oe.oe_isomorphic {
        flag("odd/even parts equal", f);
    }
    flag("bipartite across parts", &oe.oe_bipartite);
    flag("disconnected across parts", &oe.oe_disconnected);
    match euler {
        Some(EulerianStatus::Cycle) => println!("eulerian: cycle"),
        Some(EulerianStatus::Trail(a, b)) => println!("eulerian: trail between {a} and {b}"),
        Some(EulerianStatus::NoTrail) => println!("eulerian: none"),
        None => println!("eulerian: unknown (improper spec)"),
    }
    match &hamilton.status {
        HamiltonStatus::Guaranteed(cycle) => println!("hamiltonian: guaranteed {cycle:?}"),
        HamiltonStatus::Impossible(r) => println!("hamiltonian: impossible ({})", r.as_str()),
        HamiltonStatus::Unknown => println!("hamiltonian: unknown"),
    }
    Ok(ExitCode::SUCCESS)
}
