use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;


use ssred_core::cyclotomic::r_of;
use ssred_core::lattice::OperatorLattice;
use ssred_core::linalg::IntMatrix;
use ssred_core::scenario_file::ScenarioFile;
use ssred_core::scenarios::{elliptic_degree_decision, run_example, ExampleId};
use ssred_core::torsion::Side;
use ssred_core::verify;
use ssred_core::Error;

const SENTINEL: &str = "---CERTIFICATE---";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Parser)]
#[command(name = "ssred", about = "Semistable-level torsion and lattice checks", version)]
struct Cli {
    /// Seed for all randomized suites (printed in every report)
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Number of work shards for the verification suites
    #[arg(long, global = true, default_value_t = 1)]
    shards: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the fixed-submodule criterion on a scenario file
    Check { path: PathBuf },
    /// Saturate the lattice of a scenario and report the quotient
    Saturate { path: PathBuf },
    /// Emit the certificate of a reconstructed example
    Example { id: String },
    /// Run every property suite and report counts
    VerifyAll,
    /// Decide the semistability degree of an elliptic curve from its
    /// mod-4 and mod-3 inertia matrices
    DecideElliptic { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Check { path } => cmd_check(&cli, path),
        Command::Saturate { path } => cmd_saturate(&cli, path),
        Command::Example { id } => cmd_example(&cli, id),
        Command::VerifyAll => cmd_verify_all(&cli),
        Command::DecideElliptic { path } => cmd_decide_elliptic(&cli, path),
    };
    ExitCode::from(code)
}

fn fail(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    2
}

fn matrix_lines(m: &IntMatrix) -> String {
    (0..m.rows)
        .map(|i| {
            let row: Vec<String> = (0..m.cols).map(|j| m.get(i, j).to_string()).collect();
            format!("  [{}]", row.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn emit(cli: &Cli, human: &str, machine: &str) {
    match cli.format {
        Format::Text => {
            print!("{human}");
            println!("{SENTINEL}");
            print!("{machine}");
        }
        Format::Machine => {
            print!("{machine}");
        }
    }
}

fn cmd_check(cli: &Cli, path: &std::path::Path) -> u8 {
    let scenario = match ScenarioFile::load(path) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    // the criterion is applied to gamma^(R(n)^t)
    let pair = match r_of(scenario.n)
        .map(|r| {
            let mut s = scenario.clone();
            s.gamma = s.gamma.pow(r.pow(s.t));
            s
        })
        .or_else(|_| Ok::<_, Error>(scenario.clone()))
        .and_then(|s| s.to_pair())
    {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let s = pair.fixed_submodule(Side::X, 1);
    let sperp = pair.orthogonal_complement(&s);
    let verdict = pair.sslem_equivalence();
    let counting = pair.counting_identities();
    let holds = verdict.hyp && verdict.concl;

    let mut human = String::new();
    human.push_str(&format!("scenario: {}\n", path.display()));
    human.push_str(&format!("n: {}  d: {}  t: {}  seed: {}\n", scenario.n, scenario.d, scenario.t, cli.seed));
    human.push_str(&format!("S = fixed submodule (row basis):\n{}\n", matrix_lines(s.basis())));
    human.push_str(&format!("S-perp (row basis):\n{}\n", matrix_lines(sperp.basis())));
    human.push_str(&format!(
        "trivial action on S-perp: {}\n(gamma - 1)^2 = 0 on X_n: {}\n",
        verdict.hyp, verdict.concl
    ));
    human.push_str(&format!(
        "counting identities: {}\n",
        if counting.ok() { "hold" } else { "FAIL" }
    ));
    human.push_str(&format!("criterion: {}\n", if holds { "holds" } else { "fails" }));

    let mut machine = String::new();
    machine.push_str(&format!("seed: {}\n", cli.seed));
    machine.push_str(&format!("n: {}\nd: {}\nt: {}\n", scenario.n, scenario.d, scenario.t));
    machine.push_str(&format!("sslem_lhs: {}\nsslem_rhs: {}\n", verdict.hyp, verdict.concl));
    machine.push_str(&format!("counting_ok: {}\n", counting.ok()));
    machine.push_str(&format!("criterion: {}\n", if holds { "holds" } else { "fails" }));

    emit(cli, &human, &machine);
    if holds {
        0
    } else {
        1
    }
}

fn cmd_saturate(cli: &Cli, path: &std::path::Path) -> u8 {
    let scenario = match ScenarioFile::load(path) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let lat = match OperatorLattice::with_standard_basis(
        scenario.n,
        scenario.d,
        scenario.t,
        scenario.gamma.clone(),
    ) {
        Ok(l) => l,
        Err(Error::NotSemistable) => {
            println!("precondition fails: (gamma^R - 1)^2 != 0, no saturation exists");
            return 1;
        }
        Err(e) => return fail(e),
    };
    let (t_lat, quot) = match lat.saturate() {
        Ok(x) => x,
        Err(Error::NotSemistable) => {
            println!("precondition fails: (gamma^R - 1)^2 != 0, no saturation exists");
            return 1;
        }
        Err(e) => return fail(e),
    };
    let efg = match lat.efg_equivalences(&t_lat) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let iso = match lat.isogeny_quotient() {
        Ok(i) => i,
        Err(e) => return fail(e),
    };

    let mut human = String::new();
    human.push_str(&format!("scenario: {}\n", path.display()));
    human.push_str(&format!(
        "n: {}  d: {}  t: {}  seed: {}\n",
        scenario.n, scenario.d, scenario.t, cli.seed
    ));
    human.push_str(&format!(
        "T basis (columns, HNF) / {}:\n{}\n",
        t_lat.denom(),
        matrix_lines(t_lat.basis_num())
    ));
    let divs: Vec<String> = quot.divisors.iter().map(|d| d.to_string()).collect();
    human.push_str(&format!("C = T/T0 elementary divisors: [{}]\n", divs.join(", ")));
    human.push_str(&format!("C exponent: {}\n", quot.exponent));
    for item in &efg.items {
        human.push_str(&format!("{}: lhs = {}, rhs = {}\n", item.name, item.lhs, item.rhs));
    }
    human.push_str(&format!(
        "(gamma^(R^t) - 1)^2 Y_n = 0: {}\n",
        iso.unipotent_on_yn
    ));

    let mut machine = String::new();
    machine.push_str(&format!("seed: {}\n", cli.seed));
    machine.push_str(&format!("denominator: {}\n", t_lat.denom()));
    machine.push_str(&format!("divisors: [{}]\n", divs.join(", ")));
    machine.push_str(&format!("exponent: {}\n", quot.exponent));
    machine.push_str(&format!("efg_consistent: {}\n", efg.consistent()));
    machine.push_str(&format!("unipotent_on_yn: {}\n", iso.unipotent_on_yn));

    emit(cli, &human, &machine);
    0
}

fn cmd_example(cli: &Cli, id: &str) -> u8 {
    let id = match ExampleId::parse(id) {
        Some(id) => id,
        None => {
            let names: Vec<&str> = ExampleId::ALL.iter().map(|i| i.as_str()).collect();
            return fail(format!("unknown example '{id}'; known: {}", names.join(", ")));
        }
    };
    let cert = run_example(id);
    let mut human = String::new();
    human.push_str(&format!(
        "example {} (n = {}, l = {}, d = {}), seed: {}\n",
        cert.id.as_str(),
        cert.n,
        cert.ell,
        cert.d,
        cli.seed
    ));
    human.push_str(&format!("gamma on T_l(X):\n{}\n", matrix_lines(&cert.gamma_on_x)));
    if let Some(e) = &cert.embedding {
        human.push_str(&format!("embedding of T into T_l(Y) (columns):\n{}\n", matrix_lines(e)));
    }
    for f in &cert.facts {
        human.push_str(&format!(
            "  {} ... {}\n",
            f.name,
            if f.holds { "ok" } else { "FALSIFIED" }
        ));
    }
    emit(cli, &human, &cert.machine_block());
    if cert.falsified() {
        1
    } else {
        0
    }
}

fn cmd_verify_all(cli: &Cli) -> u8 {
    let report = verify::run_all(cli.seed, cli.shards);
    let mut human = String::new();
    human.push_str(&format!("verification run, seed: {}\n", cli.seed));
    for s in &report.suites {
        human.push_str(&format!(
            "  {:<26} cases: {:>6}  checks: {:>7}  exceptions: {}\n",
            s.name,
            s.cases,
            s.checks,
            s.exceptions.len()
        ));
    }
    human.push_str(&format!(
        "total: {} checks, {} exceptions\n",
        report.total_checks(),
        report.total_exceptions()
    ));
    emit(cli, &human, &report.machine_block());
    if report.total_exceptions() == 0 {
        0
    } else {
        1
    }
}

fn cmd_decide_elliptic(cli: &Cli, path: &std::path::Path) -> u8 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return fail(format!("cannot read {}: {e}", path.display())),
    };
    let mut g4 = None;
    let mut g3 = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some((field, value)) = line.split_once(':') else {
            return fail(format!("line {}: expected 'field: value'", idx + 1));
        };
        let m = match parse_matrix_cli(value.trim()) {
            Some(m) => m,
            None => return fail(format!("line {}: bad matrix", idx + 1)),
        };
        match field.trim() {
            "g4" => g4 = Some(m),
            "g3" => g3 = Some(m),
            other => return fail(format!("line {}: unknown field '{other}'", idx + 1)),
        }
    }
    let (Some(g4), Some(g3)) = (g4, g3) else {
        return fail("file must define both g4 and g3");
    };
    let dec = match elliptic_degree_decision(&g4, &g3) {
        Ok(d) => d,
        Err(e) => return fail(e),
    };
    let mut human = String::new();
    human.push_str(&format!("seed: {}\n", cli.seed));
    human.push_str(&format!(
        "predicates: P2 = {}, P3 = {}, P4 = {}, P2all = {}\n",
        dec.p2, dec.p3, dec.p4, dec.p2all
    ));
    human.push_str(&format!("degree: {}\n", dec.class.as_str()));
    let mut machine = String::new();
    machine.push_str(&format!("seed: {}\n", cli.seed));
    machine.push_str(&format!(
        "p2: {}\np3: {}\np4: {}\np2all: {}\n",
        dec.p2, dec.p3, dec.p4, dec.p2all
    ));
    machine.push_str(&format!("degree: {}\n", dec.class.as_str()));
    emit(cli, &human, &machine);
    0
}

fn parse_matrix_cli(s: &str) -> Option<IntMatrix> {
    if !s.starts_with('[') || !s.ends_with(']') {
        return None;
    }
    let inner = &s[1..s.len() - 1];
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in inner.char_indices() {
        match c {
            '[' => {
                if depth == 0 {
                    start = i + 1;
                }
                depth += 1;
            }
            ']' => {
                depth = depth.checked_sub(1)?;
                if depth == 0 {
                    let row: Option<Vec<BigInt>> = inner[start..i]
                        .split(',')
                        .map(|t| t.trim())
                        .filter(|t| !t.is_empty())
                        .map(|t| t.parse().ok())
                        .collect();
                    rows.push(row?);
                }
            }
            _ => {}
        }
    }
    if depth != 0 || rows.is_empty() || rows[0].is_empty() {
        return None;
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return None;
    }
    let mut m = IntMatrix::zero(rows.len(), cols);
    for (i, r) in rows.into_iter().enumerate() {
        for (j, v) in r.into_iter().enumerate() {
            m.set(i, j, v);
        }
    }
    Some(m)
}
