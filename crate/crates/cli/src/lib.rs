//! The `jalg` command line.
//!
//! Exit codes: 0 when every check passes, 1 when some check fails,
//! 2 for usage errors and malformed input.

use std::io::{Read, Write};
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use jalg::format::{parse_algebra, parse_points, parse_subspace, print_algebra, print_subspace, FormatError, PointFile};
use jalg::jalgebra::catalog::{catalog_make, parse_catalog_spec};
use jalg::jalgebra::{check_axioms, realization_checks, DomainKind, NormalJAlgebra};
use jalg::linalg::scalar::gi;
use jalg::linalg::{Subspace, Q, QI};
use jalg::random::rng;
use jalg::report::Report;
use jalg::siegel::sample::{ball_point, d5_point, in_ball, in_d5, in_siegel3, siegel3_point};
use jalg::siegel::{field_minors, fields_of, format_point, orbit_totally_real_at};
use jalg::suite::{paper_suite, DEFAULT_SEED};
use jalg::totally_real::{complete_ball, complete_generic, complete_lie_ball, is_totally_real, stein_decide};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "jalg", version, about = "Exact checks for normal j-algebras and their totally real subalgebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the normal j-algebra axioms of an algebra file.
    Verify {
        /// Algebra file, catalog spec, or `-` for stdin.
        algebra: String,
    },
    /// Build a catalog algebra (ball:n, lieball:n, siegel:3, d5).
    Catalog {
        spec: String,
        /// Print the algebra in the file format instead of a summary.
        #[arg(long)]
        emit: bool,
    },
    /// Is the subspace a totally real subalgebra?
    TotallyReal(Pair),
    /// Complete a totally real subalgebra to a maximal one.
    Complete {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Decide whether the quotient by the corresponding group is Stein.
    Stein(Pair),
    /// Normalizer of a subalgebra, inside the nilradical unless `--full`.
    Normalizer {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        full: bool,
    },
    /// Check that orbits of the subalgebra are totally real at given points.
    OrbitCheck {
        /// Algebra with a vector-field realization, usually `d5`.
        algebra: String,
        subspace: String,
        #[arg(long, conflicts_with_all = ["random", "seed"])]
        points: Option<String>,
        #[arg(long, requires = "seed")]
        random: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Also print the nonvanishing maximal minors of the field matrix.
        #[arg(long)]
        minors: bool,
    },
    /// Run the full verification report.
    PaperSuite {
        /// Id prefix such as `5.2` or a single check id.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct Pair {
    /// Algebra file, catalog spec, or `-` for stdin.
    algebra: String,
    /// Subspace file or `-` for stdin.
    subspace: String,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Ball,
    Lieball,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{source_name}:{}: {}", err.line, err.message)]
    Parse { source_name: String, err: FormatError },
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Reads `-` (stdin, at most once) or a file.
struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Inputs<'_> {
    fn read(&mut self, name: &str) -> Result<String, CliError> {
        if name == "-" {
            if self.stdin_used {
                return Err(usage("stdin (`-`) can be used for only one input"));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| CliError::Io("<stdin>".into(), e))?;
            return Ok(s);
        }
        std::fs::read_to_string(name).map_err(|e| CliError::Io(name.into(), e))
    }

    fn algebra(&mut self, arg: &str) -> Result<NormalJAlgebra, CliError> {
        if arg != "-" && !Path::new(arg).exists() {
            let (kind, n) = parse_catalog_spec(arg).map_err(|_| usage(format!("`{arg}` is neither a file nor a catalog spec")))?;
            return catalog_make(kind, n).map_err(|e| usage(e.to_string()));
        }
        let text = self.read(arg)?;
        parse_algebra(&text).map_err(|err| CliError::Parse {
            source_name: display_name(arg),
            err,
        })
    }

    fn subspace(&mut self, a: &NormalJAlgebra, arg: &str) -> Result<(String, Subspace<Q>), CliError> {
        let text = self.read(arg)?;
        let f = parse_subspace(&text, a.alg().labels()).map_err(|err| CliError::Parse {
            source_name: display_name(arg),
            err,
        })?;
        Ok((f.name.clone(), f.subspace(a.dim())))
    }
}

fn display_name(arg: &str) -> String {
    if arg == "-" {
        "<stdin>".into()
    } else {
        arg.into()
    }
}

fn exit_for(passed: bool) -> i32 {
    if passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn axiom_report(a: &NormalJAlgebra) -> Report {
    let mut r = Report::default();
    for c in check_axioms(a).checks.into_iter().chain(realization_checks(a).checks) {
        r.push(format!("axiom-{}", c.name), c.passed, c.witness.unwrap_or_default());
    }
    r
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let mut inputs = Inputs { stdin, stdin_used: false };
    match dispatch(cli.cmd, &mut inputs, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io("<stdout>".into(), e)
}

fn dispatch(cmd: Cmd, inputs: &mut Inputs, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Cmd::Verify { algebra } => {
            let a = inputs.algebra(&algebra)?;
            let r = axiom_report(&a);
            write!(out, "{r}").map_err(io)?;
            Ok(exit_for(r.all_passed()))
        }
        Cmd::Catalog { spec, emit } => {
            let (kind, n) = parse_catalog_spec(&spec).map_err(|e| usage(e.to_string()))?;
            let a = catalog_make(kind, n).map_err(|e| usage(e.to_string()))?;
            if emit {
                write!(out, "{}", print_algebra(&a)).map_err(io)?;
                return Ok(EXIT_PASS);
            }
            let r = axiom_report(&a);
            writeln!(out, "algebra {}\nkind {}\ndim {}", a.name(), a.kind(), a.dim()).map_err(io)?;
            writeln!(out, "basis {}", a.alg().labels().join(" ")).map_err(io)?;
            if let Some(real) = a.realization() {
                writeln!(out, "coordinates {}", real.coords.join(" ")).map_err(io)?;
            }
            write!(out, "{r}").map_err(io)?;
            Ok(exit_for(r.all_passed()))
        }
        Cmd::TotallyReal(p) => {
            let a = inputs.algebra(&p.algebra)?;
            let (name, s) = inputs.subspace(&a, &p.subspace)?;
            let tr = is_totally_real(&a, &s);
            let sub = a.alg().is_subalgebra(&s);
            let mut r = Report::default();
            r.push("totally-real", tr, "s meets J s");
            r.push("subalgebra", sub, "s is not closed under the bracket");
            r.push("in-nilradical", a.nilradical().contains_subspace(&s), "s leaves the nilradical");
            writeln!(out, "# {name}: dim {}", s.dim()).map_err(io)?;
            write!(out, "{r}").map_err(io)?;
            Ok(exit_for(r.all_passed()))
        }
        Cmd::Complete { pair, mode } => {
            let a = inputs.algebra(&pair.algebra)?;
            let (_, s) = inputs.subspace(&a, &pair.subspace)?;
            let mode = mode.or(match a.kind() {
                DomainKind::Ball(_) => Some(Mode::Ball),
                DomainKind::LieBall(_) => Some(Mode::Lieball),
                _ => None,
            });
            let res = match mode {
                Some(Mode::Ball) => complete_ball(&a, &s),
                Some(Mode::Lieball) => complete_lie_ball(&a, &s),
                None => complete_generic(&a, &s),
            }
            .map_err(|e| usage(e.to_string()))?;
            write!(out, "{}", res.display(&a)).map_err(io)?;
            Ok(exit_for(res.is_completed()))
        }
        Cmd::Stein(p) => {
            let a = inputs.algebra(&p.algebra)?;
            let (_, s) = inputs.subspace(&a, &p.subspace)?;
            let v = stein_decide(&a, &s).map_err(|e| usage(e.to_string()))?;
            write!(out, "{v}").map_err(io)?;
            Ok(EXIT_PASS)
        }
        Cmd::Normalizer { pair, full } => {
            let a = inputs.algebra(&pair.algebra)?;
            let (name, s) = inputs.subspace(&a, &pair.subspace)?;
            if !a.alg().is_subalgebra(&s) {
                return Err(usage("subspace is not a subalgebra"));
            }
            let n = if full {
                a.alg().normalizer(&s)
            } else {
                a.alg().normalizer_within(a.nilradical(), &s)
            }
            .map_err(|e| usage(e.to_string()))?;
            write!(out, "{}", print_subspace(&format!("normalizer_{name}"), a.name(), a.alg().labels(), n.basis())).map_err(io)?;
            writeln!(out, "# dim {}", n.dim()).map_err(io)?;
            writeln!(out, "# totally real: {}", if is_totally_real(&a, &n) { "yes" } else { "no" }).map_err(io)?;
            Ok(EXIT_PASS)
        }
        Cmd::OrbitCheck {
            algebra,
            subspace,
            points,
            random,
            seed,
            minors,
        } => {
            let a = inputs.algebra(&algebra)?;
            let (_, s) = inputs.subspace(&a, &subspace)?;
            let real = a.realization().ok_or_else(|| usage(format!("{} has no vector-field realization", a.name())))?.clone();
            let n = real.coords.len();
            let pts = match (points, random) {
                (Some(file), None) => {
                    let text = inputs.read(&file)?;
                    let pts = parse_points(&text).map_err(|err| CliError::Parse {
                        source_name: display_name(&file),
                        err,
                    })?;
                    if let Some(p) = pts.iter().find(|p| p.coords.len() != n) {
                        return Err(usage(format!("point `{}` has dimension {}, the chart has {n}", p.name, p.coords.len())));
                    }
                    pts
                }
                (None, Some(count)) => random_points(&a, count, seed.expect("clap requires --seed"))?,
                _ => return Err(usage("give either --points <file> or --random <count> --seed <s>")),
            };
            let fields = fields_of(&a, s.basis()).map_err(|e| usage(e.to_string()))?;
            let mut r = Report::default();
            for p in &pts {
                let inside = in_domain(a.kind(), &p.coords);
                let tr = orbit_totally_real_at(&fields, &p.coords).map_err(|e| usage(e.to_string()))?;
                let detail = format!("{}{}", format_point(&p.coords), if inside == Some(false) { " (outside the domain)" } else { "" });
                r.push(format!("orbit-{}", p.name), tr && inside != Some(false), detail);
            }
            write!(out, "{r}").map_err(io)?;
            if minors {
                let names: Vec<&str> = real.coords.iter().map(String::as_str).collect();
                let fixed: Vec<(usize, QI)> = if a.kind() == DomainKind::D5 { vec![(0, gi(0, 1))] } else { vec![] };
                let (ms, vars) = field_minors(&fields, &names, &fixed);
                let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
                writeln!(out, "# {} nonzero maximal minors in {}", ms.len(), vars.join(", ")).map_err(io)?;
                for m in &ms {
                    writeln!(out, "MINOR {}", m.display_with(&vars)).map_err(io)?;
                }
            }
            Ok(exit_for(r.all_passed()))
        }
        Cmd::PaperSuite { filter, seed } => {
            let r = paper_suite(seed, filter.as_deref());
            if r.is_empty() {
                return Err(usage(format!("no check matches `{}`", filter.unwrap_or_default())));
            }
            write!(out, "{r}").map_err(io)?;
            Ok(exit_for(r.all_passed()))
        }
    }
}

fn in_domain(kind: DomainKind, z: &[QI]) -> Option<bool> {
    match kind {
        DomainKind::D5 => Some(in_d5(z)),
        DomainKind::Siegel3 => Some(in_siegel3(z)),
        DomainKind::Ball(_) => Some(in_ball(z)),
        _ => None,
    }
}

fn random_points(a: &NormalJAlgebra, count: usize, seed: u64) -> Result<Vec<PointFile>, CliError> {
    let kind = a.kind();
    if !matches!(kind, DomainKind::D5 | DomainKind::Siegel3 | DomainKind::Ball(_)) {
        return Err(usage(format!("no random point sampler for {kind}")));
    }
    let n = a.realization().map_or(0, |r| r.coords.len());
    let mut g = rng(seed);
    Ok((0..count)
        .map(|i| {
            let coords = match kind {
                DomainKind::D5 => d5_point(&mut g),
                DomainKind::Siegel3 => siegel3_point(&mut g),
                _ => ball_point(&mut g, n),
            };
            PointFile {
                name: format!("r{}", i + 1),
                coords,
            }
        })
        .collect())
}
