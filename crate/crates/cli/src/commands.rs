use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use derivring_core::jacobi::show_tuples;
use derivring_core::relgen::{apply_operator, derel_instances, presentation, Atom, RelationKind};
use derivring_core::{CoordinateRing, Derivation, DerivationModule, IndexTuple, OperatorExpr, Rational, Residue};
use num_traits::One;
use serde::Serialize;

use crate::catalog::{catalog, lookup};
use crate::error::{CliError, CliResult};
use crate::json::PresentationJson;
use crate::parse::{is_identifier, parse_polynomial, parse_rational, print_polynomial};
use crate::suites::{run_all, SuiteOptions, SuiteReport, SUITES};
use crate::variety::VarietyFile;

#[derive(Debug, Parser)]
#[command(name = "derivring", version, about = "Derivations and differential operators on affine domains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// `FILE` is a variety JSON file or the name of a catalog entry.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summary line: sizes, rank, dimension, smoothness, generator count.
    Info {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Rank and the non-singular and critical tuple sets.
    Rank { file: String },
    /// Groebner bases of the Jacobian ideals.
    Ideals {
        file: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Jacobian criterion; exit code 0 when smooth, 1 otherwise.
    Smooth { file: String },
    /// The natural derivations generating der(A).
    Derivations { file: String },
    /// Linear relations among the natural derivations.
    Relations { file: String },
    /// Generators and defining relations of the ring of differential operators.
    Presentation {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Runs the property suites on one variety, or on the whole catalog.
    Verify {
        file: Option<String>,
        #[arg(long)]
        suite: Option<String>,
    },
    /// Applies an operator word such as "d(1)(1,2)*x - 2*[x*y]" to a polynomial.
    Apply {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Membership of "a1,...,an" in Der(A) and in der(A).
    Member {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        derivation: String,
    },
    /// Reports on a rational point "c1,...,cn".
    Point {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Lists the builtin varieties, optionally writing them as files.
    Catalog {
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

/// Exit code and standard output of a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout }
    }
}

/// A path if it exists, otherwise a catalog entry name.
pub fn resolve(file: &str) -> CliResult<VarietyFile> {
    let path = Path::new(file);
    if path.exists() {
        return VarietyFile::load(path);
    }
    lookup(file)
        .map(|e| e.file)
        .ok_or_else(|| CliError::Io(format!("{}: no such file or catalog entry", file)))
}

fn load(file: &str) -> CliResult<(VarietyFile, DerivationModule)> {
    let vf = resolve(file)?;
    let ring = vf.ring()?;
    let dm = DerivationModule::new(&ring)?;
    Ok((vf, dm))
}

#[derive(Serialize)]
struct InfoJson<'a> {
    name: &'a str,
    n: usize,
    m: usize,
    r: usize,
    dim: usize,
    smooth: bool,
    generators: usize,
}

pub fn info_line(dm: &DerivationModule) -> String {
    let a = dm.ring();
    format!(
        "n={} m={} r={} dim={} smooth={} generators={}",
        a.nvars(),
        a.generators().len(),
        dm.rank(),
        a.krull_dimension(),
        dm.jacobi().is_smooth(),
        dm.natural_generators().len()
    )
}

fn symbol(i: &IndexTuple, j: &IndexTuple) -> String {
    format!("d{}{}", i, j)
}

fn show_residue(r: &Residue) -> String {
    print_polynomial(r.lift(), r.ring().names())
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let mut out = String::new();
    match &cli.command {
        Command::Info { file, json } => {
            let (vf, dm) = load(file)?;
            if *json {
                let a = dm.ring();
                let info = InfoJson {
                    name: &vf.name,
                    n: a.nvars(),
                    m: a.generators().len(),
                    r: dm.rank(),
                    dim: a.krull_dimension(),
                    smooth: dm.jacobi().is_smooth(),
                    generators: dm.natural_generators().len(),
                };
                out = serde_json::to_string_pretty(&info).expect("info serializes");
                out.push('\n');
            } else {
                writeln!(out, "{}", info_line(&dm)).unwrap();
            }
        }
        Command::Rank { file } => {
            let (_, dm) = load(file)?;
            let jd = dm.jacobi();
            let (pi, pj) = jd.pivot();
            writeln!(out, "r={}", jd.rank()).unwrap();
            writeln!(out, "I_r={}", show_tuples(jd.nonsingular_rows())).unwrap();
            writeln!(out, "J_r={}", show_tuples(jd.nonsingular_cols())).unwrap();
            writeln!(out, "J_r+1={}", show_tuples(jd.critical_set())).unwrap();
            writeln!(out, "pivot={}x{} minor={}", pi, pj, show_residue(&jd.minor(pi, pj)?)).unwrap();
        }
        Command::Ideals { file, k } => {
            let (_, dm) = load(file)?;
            let jd = dm.jacobi();
            let ks: Vec<usize> = match k {
                Some(k) => vec![*k],
                None => (1..=jd.rank()).collect(),
            };
            let names = dm.ring().names();
            for k in ks {
                let ideal = jd.jacobian_ideal(k)?;
                let gens: Vec<String> = ideal.gb.generators().iter().map(|g| print_polynomial(g, names)).collect();
                writeln!(out, "a_{}: {{{}}}", k, gens.join(", ")).unwrap();
            }
        }
        Command::Smooth { file } => {
            let (_, dm) = load(file)?;
            let smooth = dm.jacobi().is_smooth();
            writeln!(out, "{}", if smooth { "smooth" } else { "singular" }).unwrap();
            return Ok(Outcome { code: if smooth { 0 } else { 1 }, stdout: out });
        }
        Command::Derivations { file } => {
            let (_, dm) = load(file)?;
            for (i, j, d) in dm.natural_generators() {
                writeln!(out, "{} = {}", symbol(i, j), d).unwrap();
            }
        }
        Command::Relations { file } => {
            let (_, dm) = load(file)?;
            for rel in derel_instances(&dm)? {
                writeln!(out, "{}", rel).unwrap();
            }
        }
        Command::Presentation { file, json } => {
            let (_, dm) = load(file)?;
            let doc = presentation(&dm)?;
            if *json {
                out = PresentationJson::from_doc(&doc, dm.ring().generators()).to_json();
                out.push('\n');
            } else {
                let mut gens: Vec<String> = doc.variables.clone();
                gens.extend(doc.d_symbols.iter().map(|(i, j)| symbol(i, j)));
                writeln!(out, "generators: {}", gens.join(", ")).unwrap();
                for (title, list) in [("RD1", &doc.rd1), ("RD2", &doc.rd2), ("RD3", &doc.rd3)] {
                    writeln!(out, "{}:", title).unwrap();
                    for rel in list.iter() {
                        debug_assert!(title != "RD3" || rel.kind == RelationKind::Rd3);
                        writeln!(out, "  {}", rel).unwrap();
                    }
                }
            }
        }
        Command::Verify { file, suite } => return verify(file.as_deref(), suite.as_deref()),
        Command::Apply { file, op, to } => {
            let (vf, dm) = load(file)?;
            let a = dm.ring();
            let e = parse_operator(op, a)?;
            let p = parse_polynomial(to, &vf.variables, a.order())?;
            let v = apply_operator(&dm, &e, &a.project(&p))?;
            writeln!(out, "{}", show_residue(&v)).unwrap();
        }
        Command::Member { file, derivation } => {
            let (vf, dm) = load(file)?;
            let a = dm.ring();
            let parts = split_top_level(derivation, ',');
            if parts.len() != a.nvars() {
                return Err(CliError::Parse(format!(
                    "expected {} comma-separated coefficients, got {}",
                    a.nvars(),
                    parts.len()
                )));
            }
            let coeffs = parts
                .iter()
                .map(|s| Ok(a.project(&parse_polynomial(s, &vf.variables, a.order())?)))
                .collect::<CliResult<Vec<_>>>()?;
            let d = Derivation::new(a, coeffs)?;
            let is_der = dm.is_derivation(d.coefficients())?;
            let natural = if is_der { dm.in_natural_submodule(&d)?.to_string() } else { "n/a".into() };
            writeln!(out, "derivation={} natural={}", is_der, natural).unwrap();
        }
        Command::Point { file, at } => {
            let (_, dm) = load(file)?;
            let point = at.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
            let rep = dm.jacobi().point_report(&point)?;
            match (rep.singular, rep.tangent_dim) {
                (Some(s), Some(t)) if rep.on_variety => {
                    writeln!(out, "on_variety=true singular={} tangent_dim={}", s, t).unwrap()
                }
                _ => writeln!(out, "on_variety=false").unwrap(),
            }
        }
        Command::Catalog { export } => {
            for e in catalog() {
                let x = e.expected;
                writeln!(
                    out,
                    "{:<18} {:<28} r={} dim={} smooth={} generators={}",
                    e.name,
                    e.file.generators.join(", "),
                    x.r,
                    x.dim,
                    x.smooth,
                    x.generator_count
                )
                .unwrap();
                if let Some(dir) = export {
                    std::fs::create_dir_all(dir).map_err(|err| CliError::Io(format!("{}: {}", dir.display(), err)))?;
                    let path = dir.join(format!("{}.json", e.name));
                    std::fs::write(&path, e.file.to_json() + "\n")
                        .map_err(|err| CliError::Io(format!("{}: {}", path.display(), err)))?;
                }
            }
        }
    }
    Ok(Outcome::ok(out))
}

fn verify_one(dm: &DerivationModule, suite: Option<&str>) -> CliResult<Vec<SuiteReport>> {
    run_all(dm, suite, &SuiteOptions::default())
}

fn summary(reports: &[SuiteReport]) -> String {
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed == 0 {
        format!("all {} property suites passed", reports.len())
    } else {
        format!("{} of {} property suites failed", failed, reports.len())
    }
}

fn verify(file: Option<&str>, suite: Option<&str>) -> CliResult<Outcome> {
    if let Some(s) = suite {
        if !SUITES.contains(&s) {
            return Err(CliError::Usage(format!("unknown suite '{}'; expected one of {}", s, SUITES.join(", "))));
        }
    }
    let mut out = String::new();
    let mut all_ok = true;
    match file {
        Some(f) => {
            let (_, dm) = load(f)?;
            let reports = verify_one(&dm, suite)?;
            for r in &reports {
                writeln!(out, "{}", r.line()).unwrap();
            }
            all_ok = reports.iter().all(SuiteReport::passed);
            writeln!(out, "{}", summary(&reports)).unwrap();
        }
        None => {
            let entries = catalog();
            let results: Vec<CliResult<Vec<SuiteReport>>> = std::thread::scope(|s| {
                let handles: Vec<_> = entries
                    .iter()
                    .map(|e| {
                        s.spawn(move || {
                            let dm = DerivationModule::new(&e.file.ring()?)?;
                            verify_one(&dm, suite)
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
            });
            for (e, res) in entries.iter().zip(results) {
                let reports = res?;
                writeln!(out, "== {} ==", e.name).unwrap();
                for r in &reports {
                    writeln!(out, "{}", r.line()).unwrap();
                }
                writeln!(out, "{}", summary(&reports)).unwrap();
                all_ok &= reports.iter().all(SuiteReport::passed);
            }
            if all_ok {
                let n = suite.map_or(SUITES.len(), |_| 1);
                writeln!(out, "catalog: all {} property suites passed on {} varieties", n, entries.len()).unwrap();
            } else {
                writeln!(out, "catalog: failures found").unwrap();
            }
        }
    }
    Ok(Outcome { code: if all_ok { 0 } else { 1 }, stdout: out })
}

/// Splits on `sep` outside parentheses and brackets.
pub fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            parts.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    parts.push(cur);
    parts
}

fn parse_tuple(s: &str) -> CliResult<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| CliError::Parse(format!("'{}' is not an index", p.trim()))))
        .collect()
}

/// Operator words: terms joined by `+`/`-`, factors joined by `*`. A
/// factor is a rational, a variable, `[poly]`, or a symbol `d(i..)(j..)`
/// with 1-based indices. Words act right to left.
pub fn parse_operator(text: &str, ring: &CoordinateRing) -> CliResult<OperatorExpr> {
    let vars = ring.names();
    let mut terms: Vec<(bool, String)> = Vec::new();
    let (mut depth, mut cur, mut neg) = (0i32, String::new(), false);
    for c in text.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if (c == '+' || c == '-') && depth == 0 {
            if cur.trim().is_empty() && terms.is_empty() {
                neg ^= c == '-';
            } else {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = c == '-';
            }
        } else {
            cur.push(c);
        }
    }
    terms.push((neg, cur));
    let mut expr = OperatorExpr::zero(ring);
    for (neg, term) in terms {
        let mut coeff = if neg { -Rational::one() } else { Rational::one() };
        let mut atoms = Vec::new();
        for factor in split_top_level(&term, '*') {
            let f = factor.trim();
            if f.is_empty() {
                return Err(CliError::Parse(format!("empty factor in '{}'", term.trim())));
            }
            if let Some(inner) = f.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                atoms.push(Atom::Mul(ring.project(&parse_polynomial(inner, vars, ring.order())?)));
            } else if let Some(rest) = f.strip_prefix("d(").filter(|_| !vars.iter().any(|v| v == "d" && f == "d")) {
                let (i, rest) = rest
                    .split_once(")(")
                    .ok_or_else(|| CliError::Parse(format!("malformed symbol '{}'", f)))?;
                let j = rest.strip_suffix(')').ok_or_else(|| CliError::Parse(format!("malformed symbol '{}'", f)))?;
                let a = ring.generators().len();
                let i = IndexTuple::from_one_based(&parse_tuple(i)?, a)?;
                let j = IndexTuple::from_one_based(&parse_tuple(j)?, ring.nvars())?;
                atoms.push(Atom::Gen(i, j));
            } else if is_identifier(f) {
                let k = vars
                    .iter()
                    .position(|v| v == f)
                    .ok_or_else(|| CliError::Parse(format!("unknown identifier '{}'", f)))?;
                atoms.push(Atom::Mul(ring.var(k)));
            } else {
                coeff *= parse_rational(f)?;
            }
        }
        expr = expr.plus(&OperatorExpr::new(ring, vec![(coeff, atoms)]));
    }
    Ok(expr)
}
