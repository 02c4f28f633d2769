//! The `depcalc` command line.
//!
//! Exit codes: 0 on success, 1 when the analysis answers in the negative
//! (not expressible, not an inclusion, invalid diagram on `validate`), and
//! 2 for usage and input errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::decoration::{decorate, Decoration, PolynomialAlgebra, TropicalAlgebra};
use crate::diagram::{edge_poset, validate_diagram, PartialPolygraph, StringDiagram};
use crate::error::{Error, Result};
use crate::expr::{evaluate, Expression};
use crate::expressible::{decompose, find_z};
use crate::operad::{expressible_covers, intersect};
use crate::poly::{boxtimes_poly, compose, dirichlet, signature, FinitePolynomial};
use crate::poset::FinitePoset;
use crate::proof::derive_structure_map;
use crate::tropical::{parse_runtimes, render_gantt, schedule, Runtime};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    Tropical,
    Poly,
}

#[derive(Parser, Debug)]
#[command(name = "depcalc", version, about = "Dependence calculus on finite posets")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// List every polynomial position with its direction count.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test a poset for expressibility; prints the zig-zag witness if not.
    Check { poset: PathBuf },
    /// Print the expression of an expressible poset.
    Decompose { poset: PathBuf },
    /// Evaluate an expression such as `(tri x0 (ox x1 x2))` to a poset.
    Eval { expression: String },
    /// Derive the structure map for the inclusion of one poset in another.
    Derive { source: PathBuf, target: PathBuf },
    /// List the expressible covers of a poset.
    Covers { poset: PathBuf },
    /// Intersect posets on a common carrier.
    Intersect {
        #[arg(required = true)]
        posets: Vec<PathBuf>,
    },
    /// Schedule tasks with the given runtimes.
    Tropical {
        poset: PathBuf,
        /// Comma-separated runtimes: integers, decimals or fractions.
        #[arg(long)]
        runtimes: String,
        /// Also draw a text Gantt chart.
        #[arg(long)]
        gantt: bool,
        /// Chart columns per time unit.
        #[arg(long, default_value_t = 1)]
        resolution: u32,
    },
    /// Polynomial products. Polynomials are JSON files or direction counts
    /// such as `2,1,0`.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// String diagrams over a partial polygraph.
    #[command(subcommand)]
    Diagram(DiagramCommand),
}

#[derive(Subcommand, Debug)]
enum PolyCommand {
    /// Dirichlet tensor `p ⊗ q`.
    Ox { p: String, q: String },
    /// Composition product `p ◁ q`.
    Tri { p: String, q: String },
    /// `⊠^P` of one polynomial per element.
    Boxtimes {
        poset: PathBuf,
        #[arg(required = true)]
        parts: Vec<String>,
        /// Linear extension to build along; defaults to the least one.
        #[arg(long)]
        extension: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum DiagramCommand {
    /// Edge poset of a diagram.
    EdgePoset {
        #[arg(long)]
        polygraph: PathBuf,
        diagram: PathBuf,
    },
    /// Check every stage of a diagram.
    Validate {
        #[arg(long)]
        polygraph: PathBuf,
        diagram: PathBuf,
    },
    /// Decorate a diagram from per-generator values.
    Decorate {
        #[arg(long)]
        polygraph: PathBuf,
        diagram: PathBuf,
        #[arg(long, value_enum, default_value_t = Algebra::Tropical)]
        algebra: Algebra,
        /// `name=value` pairs separated by commas; polynomial values list
        /// direction counts separated by `:`, e.g. `f=2:1`.
        #[arg(long, default_value = "")]
        assign: String,
    },
}

/// Outcome of a command: text for stdout and whether the answer was
/// positive.
struct Output {
    text: String,
    positive: bool,
}

impl Output {
    fn yes(text: String) -> Self {
        Output { text, positive: true }
    }

    fn no(text: String) -> Self {
        Output { text, positive: false }
    }
}

/// Runs the command line; `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let _ = write!(stdout, "{}", out.text);
            if out.positive {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn read_poset(path: &Path) -> Result<FinitePoset> {
    FinitePoset::from_json_str(&read(path)?)
}

fn read_poly(arg: &str) -> Result<FinitePolynomial> {
    let path = Path::new(arg);
    if path.is_file() {
        return FinitePolynomial::from_json_str(&read(path)?);
    }
    parse_counts(arg, ',').map(FinitePolynomial::new)
}

fn parse_counts(s: &str, sep: char) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(sep)
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("`{x}` is not a direction count")))
        })
        .collect()
}

fn poset_text(p: &FinitePoset, format: Format) -> String {
    match format {
        Format::Dot => p.to_dot(),
        _ => format!("{}\n", p.to_json_string()),
    }
}

fn poly_text(p: &FinitePolynomial, format: Format, verbose: bool) -> String {
    if format == Format::Json {
        return format!("{}\n", p.to_json_string());
    }
    let mut out = format!("{p}\nsignature {}\n", signature(p));
    if verbose {
        for (i, d) in p.positions().iter().enumerate() {
            out += &format!("position {i}: {d} directions\n");
        }
    }
    out
}

fn execute(cli: &Cli) -> Result<Output> {
    let format = cli.format;
    match &cli.command {
        Command::Check { poset } => {
            let p = read_poset(poset)?;
            Ok(match (find_z(&p), format) {
                (None, Format::Json) => Output::yes(json!({"expressible": true}).to_string() + "\n"),
                (None, _) => Output::yes("expressible\n".into()),
                (Some(z), Format::Json) => Output::no(
                    json!({"expressible": false, "obstruction": z.elements()}).to_string() + "\n",
                ),
                (Some(z), _) => Output::no(format!("not expressible: obstruction {z}\n")),
            })
        }
        Command::Decompose { poset } => {
            let p = read_poset(poset)?;
            Ok(match (decompose(&p), format) {
                (Ok(e), Format::Json) => {
                    Output::yes(json!({"expression": e.to_string()}).to_string() + "\n")
                }
                (Ok(e), _) => Output::yes(format!("{e}\n")),
                (Err(z), Format::Json) => Output::no(
                    json!({"expressible": false, "obstruction": z.elements()}).to_string() + "\n",
                ),
                (Err(z), _) => Output::no(format!("not expressible: obstruction {z}\n")),
            })
        }
        Command::Eval { expression } => {
            let e: Expression = expression.parse()?;
            Ok(Output::yes(poset_text(&evaluate(&e)?, format)))
        }
        Command::Derive { source, target } => {
            let (p, q) = (read_poset(source)?, read_poset(target)?);
            match derive_structure_map(&p, &q) {
                Ok(proof) => Ok(Output::yes(match format {
                    Format::Json => json!({
                        "source": proof.source().to_string(),
                        "target": proof.target().to_string(),
                        "nodes": proof.node_count(),
                        "proof": proof.to_string(),
                    })
                    .to_string()
                        + "\n",
                    _ => proof.to_string(),
                })),
                Err(e @ (Error::NotInclusion | Error::NotExpressible(_))) => {
                    Ok(Output::no(format!("{e}\n")))
                }
                Err(e) => Err(e),
            }
        }
        Command::Covers { poset } => {
            let covers = expressible_covers(&read_poset(poset)?);
            Ok(Output::yes(match format {
                Format::Json => {
                    let list: Vec<_> = covers.iter().map(FinitePoset::to_json).collect();
                    serde_json::to_string(&list)? + "\n"
                }
                _ => covers.iter().map(|c| poset_text(c, format)).collect(),
            }))
        }
        Command::Intersect { posets } => {
            let ps = posets.iter().map(|p| read_poset(p)).collect::<Result<Vec<_>>>()?;
            Ok(Output::yes(poset_text(&intersect(&ps)?, format)))
        }
        Command::Tropical {
            poset,
            runtimes,
            gantt,
            resolution,
        } => {
            let p = read_poset(poset)?;
            let a = parse_runtimes(runtimes)?;
            let s = schedule(&p, &a)?;
            let text = match format {
                Format::Json => {
                    let strs = |v: &[Runtime]| v.iter().map(Runtime::to_string).collect::<Vec<_>>();
                    json!({
                        "makespan": s.makespan.to_string(),
                        "critical_chain": s.critical_chain,
                        "start": strs(&s.start),
                        "finish": strs(&s.finish),
                    })
                    .to_string()
                        + "\n"
                }
                _ => {
                    let chain: Vec<String> = s.critical_chain.iter().map(usize::to_string).collect();
                    let mut t = format!("makespan {}\ncritical chain {}\n", s.makespan, chain.join(" "));
                    if *gantt {
                        t.push_str(&render_gantt(&s, *resolution));
                    }
                    t
                }
            };
            Ok(Output::yes(text))
        }
        Command::Poly(cmd) => {
            let result = match cmd {
                PolyCommand::Ox { p, q } => dirichlet(&read_poly(p)?, &read_poly(q)?),
                PolyCommand::Tri { p, q } => compose(&read_poly(p)?, &read_poly(q)?),
                PolyCommand::Boxtimes {
                    poset,
                    parts,
                    extension,
                } => {
                    let p = read_poset(poset)?;
                    let parts = parts.iter().map(|x| read_poly(x)).collect::<Result<Vec<_>>>()?;
                    let ell = match extension {
                        Some(s) => parse_counts(s, ',')?,
                        None => p.first_linear_extension(),
                    };
                    boxtimes_poly(&p, &parts, &ell)?
                }
            };
            Ok(Output::yes(poly_text(&result, format, cli.verbose)))
        }
        Command::Diagram(cmd) => diagram_command(cmd, format, cli.verbose),
    }
}

fn load_diagram(polygraph: &Path, diagram: &Path) -> Result<(PartialPolygraph, StringDiagram)> {
    Ok((
        PartialPolygraph::from_json_str(&read(polygraph)?)?,
        StringDiagram::from_json_str(&read(diagram)?)?,
    ))
}

fn parse_assignment<V>(s: &str, value: impl Fn(&str) -> Result<V>) -> Result<Decoration<V>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|pair| {
            let (name, v) = pair
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("`{pair}` is not name=value")))?;
            Ok((name.trim().to_string(), value(v.trim())?))
        })
        .collect()
}

fn diagram_command(cmd: &DiagramCommand, format: Format, verbose: bool) -> Result<Output> {
    match cmd {
        DiagramCommand::EdgePoset { polygraph, diagram } => {
            let (pg, diag) = load_diagram(polygraph, diagram)?;
            let (p, instances) = edge_poset(&pg, &diag)?;
            Ok(Output::yes(match format {
                Format::Json => json!({"poset": p.to_json(), "instances": instances}).to_string() + "\n",
                Format::Dot => p.to_dot(),
                Format::Text => {
                    let mut t = format!("{}\n", p.to_json_string());
                    for (k, i) in instances.iter().enumerate() {
                        t.push_str(&format!("{k} {} (layer {}, position {})\n", i.generator, i.layer, i.position));
                    }
                    t
                }
            }))
        }
        DiagramCommand::Validate { polygraph, diagram } => {
            let (pg, diag) = load_diagram(polygraph, diagram)?;
            Ok(match validate_diagram(&pg, &diag) {
                Ok(()) => Output::yes("valid\n".into()),
                Err(Error::InvalidDiagram { stage, reason }) => Output::no(match format {
                    Format::Json => json!({"valid": false, "stage": stage, "reason": reason}).to_string() + "\n",
                    _ => format!("invalid at stage {stage}: {reason}\n"),
                }),
                Err(e) => return Err(e),
            })
        }
        DiagramCommand::Decorate {
            polygraph,
            diagram,
            algebra,
            assign,
        } => {
            let (pg, diag) = load_diagram(polygraph, diagram)?;
            let text = match algebra {
                Algebra::Tropical => {
                    let d = parse_assignment(assign, |v| v.parse::<Runtime>())?;
                    let v = decorate(&pg, &diag, &d, &TropicalAlgebra)?;
                    match format {
                        Format::Json => json!({"value": v.to_string()}).to_string() + "\n",
                        _ => format!("{v}\n"),
                    }
                }
                Algebra::Poly => {
                    let d = parse_assignment(assign, |v| parse_counts(v, ':').map(FinitePolynomial::new))?;
                    poly_text(&decorate(&pg, &diag, &d, &PolynomialAlgebra)?, format, verbose)
                }
            };
            Ok(Output::yes(text))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["depcalc"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&[]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        let (code, _, err) = run_str(&["check", "/nonexistent/poset.json"]);
        assert_eq!(code, 2);
        assert!(err.contains("nonexistent"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("decompose"));
    }

    #[test]
    fn eval_and_poly_inline() {
        let (code, out, _) = run_str(&["eval", "(tri x0 (ox x1 x2))"]);
        assert_eq!(code, 0);
        assert_eq!(out, "{\"elements\":3,\"relations\":[[0,1],[0,2]]}\n");
        let (code, out, _) = run_str(&["poly", "tri", "2,1", "1,0"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("signature {2,1,1,1,0,0}\n"), "{out}");
        assert_eq!(run_str(&["poly", "ox", "2,x", "1"]).0, 2);
    }

    #[test]
    fn assignments() {
        let d = parse_assignment("f=1, g=3/2", |v| v.parse::<Runtime>()).unwrap();
        assert_eq!(d["g"], Runtime::ratio(3, 2));
        assert!(parse_assignment("f", |v| v.parse::<Runtime>()).is_err());
    }
}
