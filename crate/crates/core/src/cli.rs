//! Command-line front end.
//!
//! Exit codes: `0` success or property true, `1` property false (including
//! inputs that fail a mathematical precondition), `2` usage, parse or
//! input errors.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coeff::GaussRat;
use crate::error::{Error, Result};
use crate::fields::{is_vector_field, MembershipReport, Relation, VectorField};
use crate::free_algebra::{FreePoly, Generator};
use crate::hamiltonian::{
    d, flow_taylor, grad_components, heisenberg_generator, noether_symmetry,
    noetherian_identity_check, poisson_bracket, theta_of,
};
use crate::matrix_eval::{eval_free, hall_demo, separate, Assignment, ExactMatrix};
use crate::syntax::json::{self, free_to_value, rational_to_string, tuple_to_value, weyl_to_value};
use crate::syntax::{parse, parse_ast, print_free, print_tuple, print_weyl, ExprAst};
use crate::verify::{run_suite, suite_names, SuiteParams, SUITES};
use crate::weyl::{normal_form, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "weylalg",
    version,
    about = "Exact computation in the Weyl algebra"
)]
pub struct Cli {
    /// Degrees of freedom f.
    #[arg(long, global = true, default_value_t = 1)]
    pub dof: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

/// Expression arguments accept `-` to read from standard input, or a JSON
/// object in the `--format json` schema. Expressions may start with `-`, so
/// flags go before a variable-length list of components.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an expression.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Whether two expressions agree in the quotient (or in the free algebra with --free).
    Eq {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        free: bool,
    },
    /// The commutator [A, B] in normal form.
    Commutator {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Free-algebra derivative p'[V] for 2f direction expressions.
    Derivative {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(allow_hyphen_values = true)]
        directions: Vec<String>,
        /// Reduce the result to normal form.
        #[arg(long)]
        normalize: bool,
    },
    /// Gradient components (dH/dQ_1.., dH/dP_1..).
    Grad {
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// Theta[dH].
    Theta {
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// Heisenberg generator ((i/hbar)[H, Q_k], (i/hbar)[H, P_k]).
    Heisenberg {
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// Poisson-like bracket dH[Theta dF].
    Poisson {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// Checks the membership identities for 2f components.
    IsVectorField {
        #[arg(allow_hyphen_values = true)]
        components: Vec<String>,
    },
    /// Bracket of two fields given as 4f components (K then G).
    LieBracket {
        #[arg(allow_hyphen_values = true)]
        components: Vec<String>,
    },
    /// Whether I is conserved by the Heisenberg flow of H.
    Conserved {
        #[arg(allow_hyphen_values = true)]
        i: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// The symmetry Theta[dI] of a conserved quantity I of H.
    Noether {
        #[arg(allow_hyphen_values = true)]
        h: String,
        #[arg(allow_hyphen_values = true)]
        i: String,
    },
    /// Compares Theta d(pb(F,H)) with [[Theta dF, Theta dH]].
    NoetherianCheck {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// Taylor coefficients of the Heisenberg flow.
    FlowTaylor {
        #[arg(allow_hyphen_values = true)]
        h: String,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Evaluates an expression on matrices, e.g. --assign 'Q=[[0,1],[0,0]]'.
    EvalMatrix {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long = "assign")]
        assign: Vec<String>,
        /// Numeric value substituted for hbar.
        #[arg(long, default_value = "1")]
        hbar: String,
    },
    /// Searches for matrices on which two expressions differ.
    Separate {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        attempts: usize,
    },
    /// Hall's identity on random 2x2 triples and a 3x3 counterexample search.
    HallDemo {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of 2x2 triples.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Budget for the 3x3 search.
        #[arg(long, default_value_t = 100)]
        attempts: usize,
    },
    /// Runs a named property suite, `all`, or `list`.
    Verify {
        suite: String,
        #[arg(long)]
        max: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cases: Option<usize>,
    },
}

struct Ctx<'a> {
    f: usize,
    format: Format,
    stdin: &'a mut dyn Read,
    stdin_lines: Option<Vec<String>>,
    stdin_single: bool,
    out: &'a mut dyn Write,
}

enum Outcome {
    Ok,
    False,
}

impl<'a> Ctx<'a> {
    fn source(&mut self, arg: &str) -> Result<String> {
        if arg != "-" {
            return Ok(arg.to_string());
        }
        if self.stdin_lines.is_none() {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse {
                    pos: 0,
                    msg: format!("reading stdin: {e}"),
                })?;
            if self.stdin_single {
                self.stdin_lines = Some(vec![s]);
            } else {
                self.stdin_lines = Some(
                    s.lines()
                        .filter(|l| !l.trim().is_empty())
                        .map(str::to_string)
                        .rev()
                        .collect(),
                );
            }
        }
        self.stdin_lines
            .as_mut()
            .and_then(Vec::pop)
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: "standard input has no expression left".into(),
            })
    }

    fn free(&mut self, arg: &str) -> Result<FreePoly> {
        let text = self.source(arg)?;
        let t = text.trim();
        if t.starts_with('{') {
            let p = json::weyl_from_json(t)
                .map(|w| w.lift())
                .or_else(|_| json::free_from_json(t))?;
            return p.with_dof(self.f);
        }
        parse(&text, self.f)
    }

    fn weyl(&mut self, arg: &str) -> Result<WeylElement> {
        Ok(normal_form(&self.free(arg)?))
    }

    fn weyls(&mut self, args: &[String]) -> Result<Vec<WeylElement>> {
        args.iter().map(|a| self.weyl(a)).collect()
    }

    fn emit(&mut self, text: String, value: impl FnOnce() -> Value) {
        let s = match self.format {
            Format::Text => text,
            Format::Json => value().to_string(),
        };
        let _ = writeln!(self.out, "{s}");
    }

    fn emit_weyl(&mut self, x: &WeylElement) {
        self.emit(print_weyl(x), || json!(weyl_to_value(x)));
    }

    fn emit_tuple(&mut self, xs: &[WeylElement]) {
        let f = self.f;
        self.emit(print_tuple(xs), || json!(tuple_to_value(f, xs)));
    }
}

fn relation_name(r: Relation) -> &'static str {
    match r {
        Relation::QQ => "QQ",
        Relation::PP => "PP",
        Relation::QP => "QP",
    }
}

fn report_value(report: &MembershipReport) -> Value {
    let vs: Vec<Value> = report
        .violations
        .iter()
        .map(|v| json!({"relation": relation_name(v.relation), "k": v.k, "l": v.l, "residual": weyl_to_value(&v.residual)}))
        .collect();
    json!({"is_vector_field": report.holds(), "violations": vs})
}

fn report_text(report: &MembershipReport) -> String {
    if report.holds() {
        return "true".into();
    }
    let mut s = String::from("false");
    for v in &report.violations {
        let (k, l) = (v.k, v.l);
        let lhs = match v.relation {
            Relation::QQ => format!("[K_q{k}, Q_{l}] - [K_q{l}, Q_{k}]"),
            Relation::PP => format!("[K_p{k}, P_{l}] - [K_p{l}, P_{k}]"),
            Relation::QP => format!("[K_q{k}, P_{l}] - [K_p{l}, Q_{k}]"),
        };
        s.push_str(&format!("\n{lhs} = {}", print_weyl(&v.residual)));
    }
    s
}

fn gauss_value(z: &GaussRat) -> Value {
    json!({"re": rational_to_string(&z.re), "im": rational_to_string(&z.im)})
}

fn matrix_value(m: &ExactMatrix) -> Value {
    let rows: Vec<Value> = m
        .rows()
        .map(|r| Value::Array(r.iter().map(gauss_value).collect()))
        .collect();
    json!({"dim": m.dim(), "entries": rows})
}

fn assignment_value(a: &Assignment) -> Value {
    let ms: serde_json::Map<String, Value> = a
        .matrices()
        .map(|(g, m)| (g.to_string(), matrix_value(m)))
        .collect();
    json!({"dim": a.dim(), "hbar": gauss_value(a.hbar()), "matrices": ms})
}

/// An ℏ-free scalar written in the expression grammar, e.g. `1/2 - 3*i`.
pub fn parse_scalar(text: &str) -> Result<GaussRat> {
    let p = parse(text, 0)?;
    let c = p.coefficient(&crate::free_algebra::Word::unit());
    if p.len() > 1 {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("{text:?} is not a scalar"),
        });
    }
    if c.is_zero() {
        return Ok(GaussRat::zero());
    }
    c.as_constant().ok_or_else(|| Error::Parse {
        pos: 0,
        msg: format!("{text:?} depends on hbar"),
    })
}

fn parse_matrix(text: &str) -> Result<ExactMatrix> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let bad = || Error::Json(format!("expected a square array of arrays, got {text}"));
    let rows = v.as_array().ok_or_else(bad)?;
    let mut out = Vec::new();
    for r in rows {
        let mut row = Vec::new();
        for x in r.as_array().ok_or_else(bad)? {
            row.push(match x {
                Value::Number(n) => GaussRat::from_int(n.as_i64().ok_or_else(bad)?),
                Value::String(s) => parse_scalar(s)?,
                _ => return Err(bad()),
            });
        }
        out.push(row);
    }
    ExactMatrix::from_rows(out)
}

fn parse_assign(text: &str, f: usize) -> Result<(Generator, ExactMatrix)> {
    let (name, m) = text.split_once('=').ok_or_else(|| Error::Parse {
        pos: 0,
        msg: format!("expected NAME=MATRIX, got {text:?}"),
    })?;
    let g = match parse_ast(name.trim())? {
        ExprAst::Symbol { gen, .. } => gen.check(f)?,
        _ => {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("{name:?} is not a generator"),
            })
        }
    };
    Ok((g, parse_matrix(m.trim())?))
}

fn execute(cmd: &Command, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        Command::Normalize { expr } => {
            let x = ctx.weyl(expr)?;
            ctx.emit_weyl(&x);
        }
        Command::Eq { a, b, free } => {
            let (pa, pb) = (ctx.free(a)?, ctx.free(b)?);
            let equal = if *free {
                pa == pb
            } else {
                normal_form(&pa) == normal_form(&pb)
            };
            ctx.emit(equal.to_string(), || json!({ "equal": equal }));
            if !equal {
                return Ok(Outcome::False);
            }
        }
        Command::Commutator { a, b } => {
            let (x, y) = (ctx.weyl(a)?, ctx.weyl(b)?);
            ctx.emit_weyl(&x.commutator(&y)?);
        }
        Command::Derivative {
            expr,
            directions,
            normalize,
        } => {
            let p = ctx.free(expr)?;
            let dirs = directions
                .iter()
                .map(|v| ctx.free(v))
                .collect::<Result<Vec<_>>>()?;
            let dp = p.derivative(&dirs)?;
            if *normalize {
                ctx.emit_weyl(&normal_form(&dp));
            } else {
                ctx.emit(print_free(&dp), || json!(free_to_value(&dp)));
            }
        }
        Command::Grad { h } => {
            let h = ctx.weyl(h)?;
            ctx.emit_tuple(&grad_components(&h));
        }
        Command::Theta { h } => {
            let h = ctx.weyl(h)?;
            ctx.emit_tuple(theta_of(&h).components());
        }
        Command::Heisenberg { h } => {
            let h = ctx.weyl(h)?;
            ctx.emit_tuple(heisenberg_generator(&h)?.components());
        }
        Command::Poisson { f, h } => {
            let (x, y) = (ctx.weyl(f)?, ctx.weyl(h)?);
            ctx.emit_weyl(&poisson_bracket(&x, &y)?);
        }
        Command::IsVectorField { components } => {
            let comps = ctx.weyls(components)?;
            let (ok, report) = is_vector_field(ctx.f, &comps)?;
            ctx.emit(report_text(&report), || report_value(&report));
            if !ok {
                return Ok(Outcome::False);
            }
        }
        Command::LieBracket { components } => {
            let f = ctx.f;
            crate::error::check_arity(4 * f, components.len())?;
            let comps = ctx.weyls(components)?;
            let k = VectorField::new(f, comps[..2 * f].to_vec())?;
            let g = VectorField::new(f, comps[2 * f..].to_vec())?;
            ctx.emit_tuple(k.bracket(&g)?.components());
        }
        Command::Conserved { i, h } => {
            let (i, h) = (ctx.weyl(i)?, ctx.weyl(h)?);
            let rate = d(&i).eval(&heisenberg_generator(&h)?)?;
            let ok = rate.is_zero();
            let text = if ok {
                "true".to_string()
            } else {
                format!("false\ndI[K] = {}", print_weyl(&rate))
            };
            ctx.emit(
                text,
                || json!({"conserved": ok, "rate": weyl_to_value(&rate)}),
            );
            if !ok {
                return Ok(Outcome::False);
            }
        }
        Command::Noether { h, i } => {
            let (h, i) = (ctx.weyl(h)?, ctx.weyl(i)?);
            let g = noether_symmetry(&h, &i)?;
            ctx.emit_tuple(g.components());
        }
        Command::NoetherianCheck { f, h } => {
            let (x, y) = (ctx.weyl(f)?, ctx.weyl(h)?);
            let chk = noetherian_identity_check(&x, &y)?;
            let ok = chk.holds();
            let dof = ctx.f;
            let text = format!("{ok}\nlhs = {}\nrhs = {}", chk.lhs, chk.rhs);
            ctx.emit(text, || {
                json!({
                    "holds": ok,
                    "lhs": tuple_to_value(dof, chk.lhs.components()),
                    "rhs": tuple_to_value(dof, chk.rhs.components()),
                })
            });
            if !ok {
                return Ok(Outcome::False);
            }
        }
        Command::FlowTaylor { h, order } => {
            let h = ctx.weyl(h)?;
            let series = flow_taylor(&h, *order)?;
            let f = ctx.f;
            let mut text: Vec<String> = (1..=series.order())
                .map(|j| format!("c_{j} = {}", print_tuple(series.coefficient(j))))
                .collect();
            text.push(format!(
                "commutation relations preserved through order {}",
                series.order()
            ));
            ctx.emit(text.join("\n"), || {
                let cs: Vec<Value> = (1..=series.order())
                    .map(|j| json!(tuple_to_value(f, series.coefficient(j))))
                    .collect();
                json!({"f": f, "order": series.order(), "coefficients": cs, "ccr_preserved": true})
            });
        }
        Command::EvalMatrix { expr, assign, hbar } => {
            let p = ctx.free(expr)?;
            let pairs = assign
                .iter()
                .map(|a| parse_assign(a, ctx.f))
                .collect::<Result<Vec<_>>>()?;
            let dim = pairs.first().map_or(1, |(_, m)| m.dim());
            let mut a = Assignment::new(dim).with_hbar(parse_scalar(hbar)?);
            for (g, m) in pairs {
                a.set(g, m)?;
            }
            let m = eval_free(&p, &a)?;
            ctx.emit(m.to_string(), || matrix_value(&m));
        }
        Command::Separate {
            a,
            b,
            seed,
            attempts,
        } => {
            let (pa, pb) = (ctx.free(a)?, ctx.free(b)?);
            match separate(&pa, &pb, *seed, *attempts)? {
                Some(w) => {
                    let f = ctx.f;
                    let mut lines = vec![format!(
                        "witness at attempt {} (dim {}, hbar = {})",
                        w.attempt,
                        w.assignment.dim(),
                        w.assignment.hbar()
                    )];
                    for (g, m) in w.assignment.matrices() {
                        lines.push(format!("{} = {m}", print_free(&FreePoly::generator(f, *g))));
                    }
                    lines.push(format!("p -> {}", w.p_value));
                    lines.push(format!("q -> {}", w.q_value));
                    ctx.emit(lines.join("\n"), || {
                        json!({
                            "separated": true,
                            "attempt": w.attempt,
                            "assignment": assignment_value(&w.assignment),
                            "p_value": matrix_value(&w.p_value),
                            "q_value": matrix_value(&w.q_value),
                        })
                    });
                }
                None => {
                    ctx.emit("none".into(), || json!({ "separated": false }));
                    return Ok(Outcome::False);
                }
            }
        }
        Command::HallDemo {
            seed,
            trials,
            attempts,
        } => {
            let r = hall_demo(*seed, *trials, *attempts);
            let mut lines = vec![format!(
                "2x2: identity held on {} of {} triples",
                r.trials_2x2 - r.failures_2x2,
                r.trials_2x2
            )];
            match &r.witness_3x3 {
                Some((x, y, z)) => {
                    lines.push(format!("3x3 counterexample: X = {x}, Y = {y}, Z = {z}"))
                }
                None => lines.push(format!("3x3: no counterexample in {attempts} attempts")),
            }
            let witness = r
                .witness_3x3
                .as_ref()
                .map(|(x, y, z)| json!([matrix_value(x), matrix_value(y), matrix_value(z)]));
            ctx.emit(lines.join("\n"), || {
                json!({"trials_2x2": r.trials_2x2, "failures_2x2": r.failures_2x2, "witness_3x3": witness})
            });
            if !r.holds() {
                return Ok(Outcome::False);
            }
        }
        Command::Verify {
            suite,
            max,
            seed,
            cases,
        } => {
            if suite == "list" {
                let text = SUITES
                    .iter()
                    .map(|(n, d, _)| format!("{n}: {d}"))
                    .collect::<Vec<_>>()
                    .join("\n");
                ctx.emit(text, || json!(suite_names().collect::<Vec<_>>()));
                return Ok(Outcome::Ok);
            }
            let names: Vec<&str> = if suite == "all" {
                suite_names().collect()
            } else {
                vec![suite.as_str()]
            };
            let defaults = SuiteParams::default();
            let params = SuiteParams {
                seed: *seed,
                max: max.unwrap_or(defaults.max),
                cases: cases.unwrap_or(defaults.cases),
            };
            let mut all_ok = true;
            let mut lines = Vec::new();
            let mut values = Vec::new();
            for n in names {
                let r = run_suite(n, &params)?;
                all_ok &= r.passed();
                let status = if r.passed() { "PASS" } else { "FAIL" };
                lines.push(format!("{}: {status} ({} cases)", r.name, r.cases));
                lines.extend(r.failures.iter().take(10).map(|m| format!("  {m}")));
                values.push(json!({"suite": r.name, "passed": r.passed(), "cases": r.cases, "failures": r.failures}));
            }
            ctx.emit(lines.join("\n"), || json!(values));
            if !all_ok {
                return Ok(Outcome::False);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn count_stdin_args(cmd: &Command) -> usize {
    let args: Vec<&String> = match cmd {
        Command::Normalize { expr } => vec![expr],
        Command::Eq { a, b, .. }
        | Command::Commutator { a, b }
        | Command::Separate { a, b, .. } => vec![a, b],
        Command::Derivative {
            expr, directions, ..
        } => std::iter::once(expr).chain(directions).collect(),
        Command::Grad { h }
        | Command::Theta { h }
        | Command::Heisenberg { h }
        | Command::FlowTaylor { h, .. } => vec![h],
        Command::Poisson { f, h } | Command::NoetherianCheck { f, h } => vec![f, h],
        Command::IsVectorField { components } | Command::LieBracket { components } => {
            components.iter().collect()
        }
        Command::Conserved { i, h } | Command::Noether { h, i } => vec![i, h],
        Command::EvalMatrix { expr, .. } => vec![expr],
        Command::HallDemo { .. } | Command::Verify { .. } => vec![],
    };
    args.into_iter().filter(|a| *a == "-").count()
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let stdin_single = count_stdin_args(&cli.command) == 1;
    let mut ctx = Ctx {
        f: cli.dof,
        format: cli.format,
        stdin,
        stdin_lines: None,
        stdin_single,
        out,
    };
    match execute(&cli.command, &mut ctx) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::False) => 1,
        Err(e @ (Error::NotAVectorField(_) | Error::PreconditionViolated { .. })) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Entry point used by the binary, wired to the process's standard streams.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(
        args,
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut inp = input.as_bytes();
        let argv = std::iter::once("weylalg").chain(args.iter().copied());
        let code = run(argv, &mut inp, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn heisenberg_example() {
        let (code, out, _) = run_str(&["heisenberg", "--dof", "1", "P^2 + Q^4"], "");
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "(2*P, -4*Q^3)");
    }

    #[test]
    fn is_vector_field_negative() {
        let (code, out, _) = run_str(&["is-vector-field", "--dof", "1", "Q", "0"], "");
        assert_eq!(code, 1);
        assert!(out.contains("= i*hbar"), "{out}");
    }

    #[test]
    fn stdin_expressions() {
        let (code, out, _) = run_str(&["normalize", "-"], "Q*P\n");
        assert_eq!((code, out.trim()), (0, "P*Q + i*hbar"));
        let (code, out, _) = run_str(&["commutator", "-", "-"], "Q\nP\n");
        assert_eq!((code, out.trim()), (0, "i*hbar"));
    }

    #[test]
    fn usage_and_parse_errors() {
        assert_eq!(run_str(&["normalize", "Q +"], "").0, 2);
        assert_eq!(run_str(&["bogus"], "").0, 2);
        assert_eq!(run_str(&["normalize", "Q_2"], "").0, 2);
        assert_eq!(run_str(&["--help"], "").0, 0);
    }

    #[test]
    fn scalar_and_matrix_parsing() {
        assert_eq!(
            parse_scalar("1/2 - 3*i").unwrap(),
            GaussRat::new(GaussRat::ratio(1, 2).re, GaussRat::from_int(-3).re)
        );
        assert!(parse_scalar("hbar").is_err());
        let m = parse_matrix(r#"[[0, -1], ["1/2", "i"]]"#).unwrap();
        assert_eq!(m.get(0, 1), &GaussRat::from_int(-1));
        assert_eq!(m.get(1, 1), &GaussRat::i());
        assert!(parse_matrix("[[1, 2]]").is_err());
    }
}
