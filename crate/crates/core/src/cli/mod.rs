//! Command-line front end: problem files in, verified answers out.
//!
//! Subcommands cover every public operation: `lattice`, `constants`,
//! `spread`, `summable`, `solve-all`, `companion-solve`, and `demo`.
//! Problems arrive as key/value text (see [`problem`]) via `--problem`
//! or stdin; `--machine` switches to single-line JSON.
//!
//! Exit codes: 0 success, 1 parse or input error, 2 capability limit
//! (degree cap, splitting field), 3 proven not summable, 4 undecided
//! under an inexact relation lattice.  Every witness that reaches stdout
//! has passed a substitution check done here, independent of the checks
//! inside the library.

pub mod expr;
pub mod problem;

use std::path::PathBuf;

use clap::Parser;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::companion::{matrix_delta, solve_polynomial_graded, transport_solve};
use crate::companion::{diagonalize, MatrixSystem};
use crate::constants::{constant_generators, is_constant};
use crate::explattice::exponent_lattice;
use crate::field::FieldElement;
use crate::field::MultiPoly;
use crate::field::RatFunc;
use crate::field::{sigma_poly, SigmaSpec};
use crate::lattice::Progression;
use crate::solution::{solve_all, HomogeneousPart, SolveOutcome};
use crate::spread::spread;
use crate::summability::{delta, is_summable, Obstruction, SummabilityOutcome};
use crate::{Config, Error, Result};
use problem::{parse_problem, ProblemSpec};

const EXIT_NOT_SUMMABLE: i32 = 3;
const EXIT_UNKNOWN: i32 = 4;

#[derive(Parser)]
#[command(
    name = "dfield",
    version,
    about = "Exact summability in difference fields with scaling automorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Subcommand)]
enum Command {
    /// Print a basis of the multiplicative relation lattice of lambda
    Lattice(ProblemArgs),
    /// Print Laurent-monomial generators of the constant field
    Constants(ProblemArgs),
    /// Print the shift set Spr(p, q) of the problem's p and q
    Spread(ProblemArgs),
    /// Decide c*sigma(g) - g = f and print a verified witness
    Summable(ProblemArgs),
    /// Describe the full solution set of c*sigma(g) - g = f
    SolveAll(ProblemArgs),
    /// Solve a matrix system by transport through the eigenbasis
    CompanionSolve(ProblemArgs),
    /// Built-in worked examples
    #[command(subcommand)]
    Demo(DemoCommand),
}

#[derive(clap::Args)]
struct ProblemArgs {
    /// Problem file; stdin when omitted
    #[arg(long)]
    problem: Option<PathBuf>,
    /// Search bound for relation and progression searches
    #[arg(long)]
    bound: Option<u32>,
    /// Total-degree cap for factorization inputs
    #[arg(long)]
    degree_cap: Option<u32>,
    /// Emit single-line JSON
    #[arg(long)]
    machine: bool,
}

#[derive(clap::Subcommand)]
enum DemoCommand {
    /// Tribonacci partial sums: derive the witness, then check m terms
    Tribonacci {
        /// Number of terms to check
        m: usize,
        /// Emit single-line JSON
        #[arg(long)]
        machine: bool,
    },
}

/// Runs against real process arguments and stdin; returns the exit code.
pub fn main() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let (code, out, err) = run(&args, read_stdin);
    print!("{out}");
    eprint!("{err}");
    code
}

fn read_stdin() -> std::io::Result<String> {
    let mut buf = String::new();
    std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf)?;
    Ok(buf)
}

/// Parses `args` and executes one command.
///
/// Returns `(exit code, stdout, stderr)`; `stdin` is only consulted when a
/// command needs a problem and `--problem` is absent.
pub fn run(
    args: &[String],
    stdin: impl FnOnce() -> std::io::Result<String>,
) -> (i32, String, String) {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version arrive as non-error kinds
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                (1, String::new(), rendered)
            } else {
                (0, rendered, String::new())
            };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok((code, out)) => (code, out, String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}

enum Kind {
    Lattice,
    Constants,
    Spread,
    Summable,
    SolveAll,
    CompanionSolve,
}

fn dispatch(cmd: Command, stdin: impl FnOnce() -> std::io::Result<String>) -> Result<(i32, String)> {
    let (args, kind) = match cmd {
        Command::Lattice(a) => (a, Kind::Lattice),
        Command::Constants(a) => (a, Kind::Constants),
        Command::Spread(a) => (a, Kind::Spread),
        Command::Summable(a) => (a, Kind::Summable),
        Command::SolveAll(a) => (a, Kind::SolveAll),
        Command::CompanionSolve(a) => (a, Kind::CompanionSolve),
        Command::Demo(DemoCommand::Tribonacci { m, machine }) => {
            return demo_tribonacci(m, machine);
        }
    };
    let text = match &args.problem {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?,
        None => stdin().map_err(|e| Error::Invalid(format!("cannot read stdin: {e}")))?,
    };
    let spec = parse_problem(&text)?;
    let cfg = spec.config(args.bound, args.degree_cap);
    match kind {
        Kind::Lattice => cmd_lattice(&spec, &cfg, args.machine),
        Kind::Constants => cmd_constants(&spec, &cfg, args.machine),
        Kind::Spread => cmd_spread(&spec, &cfg, args.machine),
        Kind::Summable => cmd_summable(&spec, &cfg, args.machine),
        Kind::SolveAll => cmd_solve_all(&spec, &cfg, args.machine),
        Kind::CompanionSolve => cmd_companion_solve(&spec, &cfg, args.machine),
    }
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn json_int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

fn int_row(row: &[BigInt]) -> String {
    let inner: Vec<String> = row.iter().map(BigInt::to_string).collect();
    format!("({})", inner.join(", "))
}

/// The belt-and-braces check behind every printed summability witness.
fn verify_witness(g: &RatFunc, f: &RatFunc, c: &FieldElement, sigma: &SigmaSpec) -> Result<()> {
    if delta(g, c, sigma) == *f {
        Ok(())
    } else {
        Err(Error::Unsupported("internal: witness failed the substitution check".into()))
    }
}

fn describe_obstruction(ob: &Obstruction, names: &[&str]) -> String {
    match ob {
        Obstruction::Laurent { index } => {
            format!("the coefficient of the last variable to the power {index}")
        }
        Obstruction::Orbit { representative, multiplicity } => {
            format!(
                "the component over the orbit of {} at multiplicity {multiplicity}",
                representative.render(names)
            )
        }
    }
}

fn cmd_lattice(spec: &ProblemSpec, cfg: &Config, machine: bool) -> Result<(i32, String)> {
    let lat = exponent_lattice(spec.multipliers()?, cfg)?;
    if machine {
        let basis: Vec<Value> =
            lat.basis().iter().map(|r| Value::Array(r.iter().map(json_int).collect())).collect();
        let v = json!({
            "rank": lat.rank(),
            "dims": lat.dims(),
            "basis": basis,
            "exact": lat.is_exact(),
        });
        return Ok((0, format!("{v}\n")));
    }
    let mut out = format!("rank: {}\n", lat.rank());
    if lat.rank() == 0 {
        out += "basis: (empty)\n";
    } else {
        out += "basis:\n";
        for row in lat.basis() {
            out += &format!("  {}\n", int_row(row));
        }
    }
    out += &format!("exact: {}\n", yesno(lat.is_exact()));
    Ok((0, out))
}

fn cmd_constants(spec: &ProblemSpec, cfg: &Config, machine: bool) -> Result<(i32, String)> {
    let sigma = spec.sigma()?;
    let names = spec.var_names();
    let desc = constant_generators(&sigma, cfg)?;
    let mut gens = Vec::with_capacity(desc.rank());
    for i in 0..desc.rank() {
        let g = desc.generator_ratfunc(i);
        if !is_constant(&g, &sigma) {
            return Err(Error::Unsupported("internal: generator failed the constancy check".into()));
        }
        gens.push(g.render(&names));
    }
    if machine {
        let v = json!({"rank": desc.rank(), "generators": gens, "exact": desc.is_exact()});
        return Ok((0, format!("{v}\n")));
    }
    let mut out = format!("rank: {}\n", desc.rank());
    if gens.is_empty() {
        out += "generators: (none; the constants are the coefficient field)\n";
    } else {
        out += "generators:\n";
        for g in &gens {
            out += &format!("  {g}\n");
        }
    }
    out += &format!("exact: {}\n", yesno(desc.is_exact()));
    Ok((0, out))
}

fn cmd_spread(spec: &ProblemSpec, cfg: &Config, machine: bool) -> Result<(i32, String)> {
    let sigma = spec.sigma()?;
    let p = spec.p.as_ref().ok_or_else(|| Error::Invalid("spread needs `p:`".into()))?;
    let q = spec.q.as_ref().ok_or_else(|| Error::Invalid("spread needs `q:`".into()))?;
    let res = spread(p, q, &sigma, cfg)?;

    // re-check the representative shift before printing it
    if let (Some(k0), Some(u)) = (res.set.smallest(), res.witness_unit.as_ref()) {
        if sigma_poly(p, &sigma, k0) != q.scale(u) {
            return Err(Error::Unsupported("internal: spread unit failed the shift check".into()));
        }
    }

    if machine {
        let set = match res.set {
            Progression::Empty => json!({"kind": "empty", "display": res.set.to_string()}),
            Progression::Single(k) => {
                json!({"kind": "single", "k": k, "display": res.set.to_string()})
            }
            Progression::Arith { offset, step } => json!({
                "kind": "progression",
                "offset": offset,
                "step": step,
                "display": res.set.to_string(),
            }),
        };
        let v = json!({
            "set": set,
            "unit": res.witness_unit.as_ref().map(FieldElement::render),
            "exact": res.exact,
        });
        return Ok((0, format!("{v}\n")));
    }
    let mut out = format!("{}\n", res.set);
    if let (Some(k0), Some(u)) = (res.set.smallest(), res.witness_unit.as_ref()) {
        out += &format!("unit: sigma^{k0}(p) = {} * q\n", u.render());
    }
    out += &format!("exact: {}\n", yesno(res.exact));
    Ok((0, out))
}

fn cmd_summable(spec: &ProblemSpec, cfg: &Config, machine: bool) -> Result<(i32, String)> {
    let sigma = spec.sigma()?;
    let f = spec.require_f()?;
    let names = spec.var_names();
    match is_summable(f, &spec.c, &sigma, cfg)? {
        SummabilityOutcome::Summable(g) => {
            verify_witness(&g, f, &spec.c, &sigma)?;
            let wit = g.render(&names);
            if machine {
                let v = json!({"outcome": "summable", "witness": wit});
                return Ok((0, format!("{v}\n")));
            }
            Ok((0, format!("summable: yes\nwitness: {wit}\nverified: c*sigma(g) - g = f\n")))
        }
        SummabilityOutcome::NotSummable(ob) => {
            let what = describe_obstruction(&ob, &names);
            if machine {
                let v = json!({"outcome": "not-summable", "obstruction": what});
                return Ok((EXIT_NOT_SUMMABLE, format!("{v}\n")));
            }
            Ok((EXIT_NOT_SUMMABLE, format!("summable: no\nobstruction: {what}\n")))
        }
        SummabilityOutcome::Unknown(reason) => {
            if machine {
                let v = json!({"outcome": "unknown", "reason": reason});
                return Ok((EXIT_UNKNOWN, format!("{v}\n")));
            }
            Ok((EXIT_UNKNOWN, format!("summable: unknown\nreason: {reason}\n")))
        }
    }
}

fn cmd_solve_all(spec: &ProblemSpec, cfg: &Config, machine: bool) -> Result<(i32, String)> {
    let sigma = spec.sigma()?;
    let f = spec.require_f()?;
    let names = spec.var_names();
    match solve_all(f, &spec.c, &sigma, cfg)? {
        SolveOutcome::Solved(set) => {
            verify_witness(&set.particular, f, &spec.c, &sigma)?;
            let particular = set.particular.render(&names);
            let homogeneous = match &set.homogeneous {
                HomogeneousPart::Monomial(h) => {
                    if !delta(h, &spec.c, &sigma).is_zero() {
                        return Err(Error::Unsupported(
                            "internal: homogeneous generator failed the substitution check".into(),
                        ));
                    }
                    Some(h.render(&names))
                }
                HomogeneousPart::OnlyZero | HomogeneousPart::Unknown => None,
            };
            let gens: Vec<String> = (0..set.constants.rank())
                .map(|i| set.constants.generator_ratfunc(i).render(&names))
                .collect();
            if machine {
                let hom = match &set.homogeneous {
                    HomogeneousPart::Monomial(_) => {
                        json!({"kind": "monomial", "generator": homogeneous})
                    }
                    HomogeneousPart::OnlyZero => json!({"kind": "only-zero"}),
                    HomogeneousPart::Unknown => json!({"kind": "unknown"}),
                };
                let v = json!({
                    "outcome": "solved",
                    "particular": particular,
                    "homogeneous": hom,
                    "constants": {
                        "rank": set.constants.rank(),
                        "generators": gens,
                        "exact": set.constants.is_exact(),
                    },
                });
                return Ok((0, format!("{v}\n")));
            }
            let mut out = format!("particular: {particular}\n");
            match &set.homogeneous {
                HomogeneousPart::Monomial(_) => {
                    out += &format!(
                        "homogeneous: F * {} for any constant F\n",
                        homogeneous.as_deref().unwrap()
                    );
                }
                HomogeneousPart::OnlyZero => out += "homogeneous: only zero (unique solution)\n",
                HomogeneousPart::Unknown => {
                    out += "homogeneous: undetermined within the search bound\n";
                }
            }
            out += &format!("constant field rank: {}\n", set.constants.rank());
            if !gens.is_empty() {
                out += "constant field generators:\n";
                for g in &gens {
                    out += &format!("  {g}\n");
                }
            }
            Ok((0, out))
        }
        SolveOutcome::NotSummable(ob) => {
            let what = describe_obstruction(&ob, &names);
            if machine {
                let v = json!({"outcome": "not-summable", "obstruction": what});
                return Ok((EXIT_NOT_SUMMABLE, format!("{v}\n")));
            }
            Ok((EXIT_NOT_SUMMABLE, format!("no solution\nobstruction: {what}\n")))
        }
        SolveOutcome::Unknown(reason) => {
            if machine {
                let v = json!({"outcome": "unknown", "reason": reason});
                return Ok((EXIT_UNKNOWN, format!("{v}\n")));
            }
            Ok((EXIT_UNKNOWN, format!("undecided\nreason: {reason}\n")))
        }
    }
}

fn cmd_companion_solve(spec: &ProblemSpec, cfg: &Config, machine: bool) -> Result<(i32, String)> {
    let sys = MatrixSystem::general(spec.matrix()?.clone())?;
    let f = spec.require_f()?;
    let names = spec.var_names();
    let diag = diagonalize(&sys, spec.field.as_ref())?;
    let eigen: Vec<String> = diag.eigenvalues.iter().map(FieldElement::render).collect();
    // names for the transported coordinates, where obstructions live
    let eigen_names: Vec<String> = (1..=sys.dim()).map(|i| format!("b{i}")).collect();
    let eigen_names: Vec<&str> = eigen_names.iter().map(String::as_str).collect();
    match transport_solve(&sys, f, &spec.c, spec.field.as_ref(), cfg)? {
        SummabilityOutcome::Summable(g) => {
            if matrix_delta(&sys, &g, &spec.c) != *f {
                return Err(Error::Unsupported(
                    "internal: witness failed the substitution check".into(),
                ));
            }
            let wit = g.render(&names);
            if machine {
                let v = json!({"outcome": "summable", "witness": wit, "eigenvalues": eigen});
                return Ok((0, format!("{v}\n")));
            }
            Ok((
                0,
                format!(
                    "eigenvalues: {}\nwitness: {wit}\nverified: c*g(A.x) - g(x) = f(x)\n",
                    eigen.join(", ")
                ),
            ))
        }
        SummabilityOutcome::NotSummable(ob) => {
            let what = describe_obstruction(&ob, &eigen_names);
            if machine {
                let v = json!({
                    "outcome": "not-summable",
                    "obstruction": what,
                    "coordinates": "eigenbasis",
                    "eigenvalues": eigen,
                });
                return Ok((EXIT_NOT_SUMMABLE, format!("{v}\n")));
            }
            Ok((
                EXIT_NOT_SUMMABLE,
                format!("summable: no\nobstruction (in eigenbasis coordinates): {what}\n"),
            ))
        }
        SummabilityOutcome::Unknown(reason) => {
            if machine {
                let v = json!({"outcome": "unknown", "reason": reason});
                return Ok((EXIT_UNKNOWN, format!("{v}\n")));
            }
            Ok((EXIT_UNKNOWN, format!("summable: unknown\nreason: {reason}\n")))
        }
    }
}

fn eval_rat(g: &RatFunc, point: &[FieldElement]) -> FieldElement {
    let den = g.den().eval(point);
    assert!(!den.is_zero(), "denominator vanishes at the evaluation point");
    &g.num().eval(point) / &den
}

fn demo_tribonacci(m: usize, machine: bool) -> Result<(i32, String)> {
    if m == 0 {
        return Err(Error::Invalid("the term count m must be at least 1".into()));
    }
    let one = FieldElement::one();
    let sys = MatrixSystem::companion(vec![one.clone(), one.clone(), one.clone()])?;
    let g_poly = solve_polynomial_graded(&sys, &MultiPoly::var(3, 0), &one)
        .ok_or_else(|| Error::Unsupported("no polynomial witness for the tribonacci sum".into()))?;
    let g = RatFunc::from_poly(g_poly);
    if matrix_delta(&sys, &g, &one) != RatFunc::var(3, 0) {
        return Err(Error::Unsupported("internal: witness failed the substitution check".into()));
    }
    let names = ["a1", "a2", "a3"];
    let wit = g.render(&names);

    // T_1 = T_2 = 1, T_3 = 2; each later term is the sum of the three before
    let mut t: Vec<BigInt> = vec![BigInt::from(0), BigInt::from(1), BigInt::from(1)];
    for n in 3..=m + 3 {
        let next = &t[n - 1] + &t[n - 2] + &t[n - 3];
        t.push(next);
    }
    let state = |n: usize| -> Vec<FieldElement> {
        (0..3).map(|i| FieldElement::from_bigint(t[n + i].clone())).collect()
    };
    let anchor = eval_rat(&g, &state(1));
    let mut run = BigInt::from(0);
    for k in 1..=m {
        run += &t[k];
        let telescoped = &eval_rat(&g, &state(k + 1)) - &anchor;
        if telescoped != FieldElement::from_bigint(run.clone()) {
            return Err(Error::Unsupported("internal: telescoped sum mismatch".into()));
        }
        if BigInt::from(2) * &run != &t[k] + &t[k + 2] - 1 {
            return Err(Error::Unsupported("internal: closed form mismatch".into()));
        }
    }

    if machine {
        let v = json!({
            "witness": wit,
            "m": m,
            "sum": run.to_string(),
            "verified": true,
        });
        return Ok((0, format!("{v}\n")));
    }
    let mut out = String::new();
    out += "system: tribonacci companion matrix, c = 1, f = a1\n";
    out += &format!("witness: {wit}\n");
    out += &format!("identity: 2 * (T_1 + ... + T_m) = T_m + T_m+2 - 1, checked for m = 1..{m}\n");
    out += &format!("sum of the first {m} terms: {run}\n");
    Ok((0, out))
}
