use clap::{Args, Parser, Subcommand};
use qvset::corpus::{run_census, run_demorgan_suite, run_metatheory_suite, run_transfer_suite, SuiteConfig};
use qvset::error::Error;
use qvset::formula::parse;
use qvset::hilbert::{q_value_order, spectral_order_leq, ComplexMatrix, MatrixFile, Projection};
use qvset::interp::{compile, takeuti_counterexample, Evaluator, Interpretation};
use qvset::lattice::{LatticeFile, OrthoLattice};
use qvset::ops::{census_noncommuting, census_polynomials, check_conditions, check_local, BinaryOperation, KotasSpec};
use qvset::quniverse::{parse_env, Env, Universe};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "qvset", version, about = "Orthomodular-valued set theory toolkit")]
struct Cli {
    /// Print a JSON summary instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Accept ortholattices that are not orthomodular.
    #[arg(long, global = true)]
    allow_non_oml: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Build, verify or display a lattice.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// The quantized implications and conjunctions on a lattice.
    #[command(subcommand)]
    Ops(OpsCmd),
    /// Truth value of a bounded formula.
    Eval {
        #[command(flatten)]
        lattice: LatticeArg,
        /// `j,k`, `sasaki`, `takeuti`, `join-conj` or `const-imp`.
        #[arg(long, default_value = "sasaki")]
        interp: String,
        /// File of `name = <qset literal>` bindings for the constants.
        #[arg(long)]
        env: Option<PathBuf>,
        formula: String,
    },
    /// Run a property suite from a TOML config.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        config: PathBuf,
    },
    /// The 36 interpretations on a lattice.
    Census {
        #[command(flatten)]
        lattice: LatticeArg,
    },
    /// Spectral order on Hermitian matrices.
    #[command(subcommand)]
    Spectral(SpectralCmd),
    /// Worked counterexamples.
    #[command(subcommand)]
    Demo(DemoCmd),
}

#[derive(Args)]
struct LatticeArg {
    /// `bool<k>`, `mo<n>`, `o6`, `prod(<a>,<b>)` or `file:<path>`.
    #[arg(long)]
    lattice: String,
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Write a named lattice as a TOML lattice file.
    Build {
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the axioms of a lattice file.
    Verify { file: PathBuf },
    /// Elements, orthocomplements, covers and structure.
    Show {
        #[command(flatten)]
        lattice: LatticeArg,
    },
}

#[derive(Subcommand)]
enum OpsCmd {
    /// Number of distinct canonical-form operations.
    Census {
        #[command(flatten)]
        lattice: LatticeArg,
    },
    /// Implicative, conjunctive and locality conditions of →ⱼ and ∗ⱼ.
    Classify {
        #[command(flatten)]
        lattice: LatticeArg,
        /// `imp<j>` or `conj<j>`; all twelve when absent.
        #[arg(long)]
        op: Option<String>,
    },
    /// Operation table.
    Table {
        #[command(flatten)]
        lattice: LatticeArg,
        /// `imp<j>` or `conj<j>`.
        #[arg(long)]
        op: String,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Suite {
    Transfer,
    Demorgan,
    Absolute,
    Restrict,
    Metatheory,
    Census,
}

#[derive(Subcommand)]
enum SpectralCmd {
    /// Whether A ≼ B.
    Order {
        #[arg(long = "A")]
        a: PathBuf,
        #[arg(long = "B")]
        b: PathBuf,
    },
    /// The projection-valued truth value of A ≤ B under ∗ⱼ.
    Qvalue {
        #[arg(long = "A")]
        a: PathBuf,
        #[arg(long = "B")]
        b: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(0..=5))]
        conj: u8,
    },
}

#[derive(Subcommand)]
enum DemoCmd {
    /// Bounded De Morgan failure under I(→₃, ∗₅).
    TakeutiCounterexample {
        #[command(flatten)]
        lattice: LatticeArg,
    },
}

/// Outcome of a verb: text, JSON and whether the check passed.
struct Output {
    text: String,
    json: Value,
    pass: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, pass: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. }
        | Error::Input(_)
        | Error::UnknownElement(_)
        | Error::Unbound(_)
        | Error::Unresolved(_)
        | Error::Unsupported(_)
        | Error::InvalidLattice(_)
        | Error::Io(_) => 2,
        _ => 1,
    }
}

fn fingerprint(l: &OrthoLattice) -> String {
    format!("{:016x}", l.fingerprint())
}

fn lattice(name: &str, allow: bool) -> Result<Arc<OrthoLattice>, Error> {
    Ok(Arc::new(OrthoLattice::from_name(name, allow)?))
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let allow = cli.allow_non_oml;
    match &cli.verb {
        Verb::Lattice(cmd) => lattice_cmd(cmd, allow),
        Verb::Ops(cmd) => ops_cmd(cmd, allow),
        Verb::Eval { lattice: la, interp, env, formula } => eval(&lattice(&la.lattice, allow)?, interp, env.as_deref(), formula),
        Verb::Check { suite, config } => check(*suite, config, allow),
        Verb::Census { lattice: la } => {
            let cfg = SuiteConfig { lattices: vec![la.lattice.clone()], allow_non_oml: allow, ..SuiteConfig::default() };
            let r = run_census(&cfg)?;
            Ok(Output { text: r.render(), json: serde_json::to_value(&r).expect("json"), pass: r.pass })
        }
        Verb::Spectral(cmd) => spectral(cmd),
        Verb::Demo(DemoCmd::TakeutiCounterexample { lattice: la }) => {
            let l = lattice(&la.lattice, allow)?;
            let r = takeuti_counterexample(&l)?;
            let lb = |e| l.label(e).to_string();
            let text = format!(
                "lattice {} fingerprint={}\ninterp 3,5\nP0={} Q0={} E={} P={} Q={}\nphi(x) = !(x in Q~), u = P~\n[(E x in P~) !phi(x)] = {}\n[!(A x in P~) phi(x)] = {}\nresult: {}\n",
                la.lattice,
                fingerprint(&l),
                lb(r.p0),
                lb(r.q0),
                lb(r.e),
                lb(r.p),
                lb(r.q),
                lb(r.exists_side),
                lb(r.forall_side),
                if r.pass { "PASS" } else { "FAIL" }
            );
            let json = json!({
                "lattice": la.lattice, "fingerprint": fingerprint(&l), "interp": "3,5",
                "p0": lb(r.p0), "q0": lb(r.q0), "e": lb(r.e), "p": lb(r.p), "q": lb(r.q),
                "exists_side": lb(r.exists_side), "forall_side": lb(r.forall_side), "pass": r.pass,
            });
            Ok(Output { text, json, pass: r.pass })
        }
    }
}

fn lattice_cmd(cmd: &LatticeCmd, allow: bool) -> Result<Output, Error> {
    match cmd {
        LatticeCmd::Build { lattice: la, out } => {
            let l = lattice(&la.lattice, allow)?;
            let file = LatticeFile::from_lattice(&l).render();
            let mut text = String::new();
            match out {
                Some(p) => {
                    std::fs::write(p, &file)?;
                    let _ = writeln!(text, "wrote {} ({} elements) fingerprint={}", p.display(), l.len(), fingerprint(&l));
                }
                None => text = file.clone(),
            }
            Ok(Output::ok(text, json!({ "lattice": la.lattice, "fingerprint": fingerprint(&l), "elements": l.len(), "file": file })))
        }
        LatticeCmd::Verify { file } => {
            let l = OrthoLattice::load(file, true)?;
            let report = l.verify_axioms();
            let oml = l.is_orthomodular();
            let pass = report.ok() && (oml || allow);
            let text = format!(
                "file {} fingerprint={}\nelements: {}\northomodular: {}\naxioms: {}\nresult: {}\n",
                file.display(),
                fingerprint(&l),
                l.len(),
                oml,
                report.describe(&l),
                if pass { "PASS" } else { "FAIL" }
            );
            let json = json!({
                "file": file, "fingerprint": fingerprint(&l), "elements": l.len(),
                "orthomodular": oml, "axioms": report.describe(&l), "pass": pass,
            });
            Ok(Output { text, json, pass })
        }
        LatticeCmd::Show { lattice: la } => {
            let l = lattice(&la.lattice, allow)?;
            let mut text = format!("lattice {} fingerprint={}\n", la.lattice, fingerprint(&l));
            let _ = writeln!(text, "elements: {}", l.len());
            for e in l.elements() {
                let _ = writeln!(text, "  #{:<3} {:<12} ortho {}", e.0, l.label(e), l.label(l.ortho(e)));
            }
            let covers: Vec<String> = l.covers().iter().map(|&(a, b)| format!("{} < {}", l.label(a), l.label(b))).collect();
            let _ = writeln!(text, "covers: {}", covers.join(", "));
            let center: Vec<&str> = l.center().members().iter().map(|&e| l.label(e)).collect();
            let _ = writeln!(text, "center: {{{}}}", center.join(", "));
            let _ = writeln!(text, "orthomodular: {}", l.is_orthomodular());
            let _ = writeln!(text, "boolean: {}", l.is_boolean());
            let json = json!({
                "lattice": la.lattice, "fingerprint": fingerprint(&l), "labels": l.labels(),
                "ortho": l.elements().map(|e| l.ortho(e).0).collect::<Vec<_>>(),
                "covers": l.covers().iter().map(|&(a, b)| (a.0, b.0)).collect::<Vec<_>>(),
                "center": center, "orthomodular": l.is_orthomodular(), "boolean": l.is_boolean(),
            });
            Ok(Output::ok(text, json))
        }
    }
}

fn parse_op(l: &Arc<OrthoLattice>, spec: &str) -> Result<BinaryOperation, Error> {
    let bad = || Error::Input(format!("unknown operation `{spec}`; use imp<j> or conj<j> with j in 0..=5"));
    let s = spec.trim();
    if let Some(j) = s.strip_prefix("imp").or_else(|| s.strip_prefix("->")) {
        return BinaryOperation::implication(l.clone(), j.parse().map_err(|_| bad())?);
    }
    if let Some(j) = s.strip_prefix("conj").or_else(|| s.strip_prefix('*')) {
        return BinaryOperation::conjunction(l.clone(), j.parse().map_err(|_| bad())?);
    }
    Err(bad())
}

fn ops_cmd(cmd: &OpsCmd, allow: bool) -> Result<Output, Error> {
    match cmd {
        OpsCmd::Census { lattice: la } => {
            let l = lattice(&la.lattice, allow)?;
            let (full, noncomm) = (census_polynomials(&l), census_noncommuting(&l));
            let text = format!(
                "lattice {} fingerprint={}\ndistinct operations (full tables): {full}\ndistinct operations (noncommuting pairs): {noncomm}\n",
                la.lattice,
                fingerprint(&l)
            );
            Ok(Output::ok(text, json!({ "lattice": la.lattice, "fingerprint": fingerprint(&l), "full_tables": full, "noncommuting": noncomm })))
        }
        OpsCmd::Classify { lattice: la, op } => {
            let l = lattice(&la.lattice, allow)?;
            let ops: Vec<BinaryOperation> = match op {
                Some(s) => vec![parse_op(&l, s)?],
                None => (0..6)
                    .map(|j| BinaryOperation::implication(l.clone(), j))
                    .chain((0..6).map(|j| BinaryOperation::conjunction(l.clone(), j)))
                    .collect::<Result<_, _>>()?,
            };
            let mut text = format!("lattice {} fingerprint={}\n", la.lattice, fingerprint(&l));
            let _ = writeln!(text, "{:<6} {:<4} {:<4} {:<4} {:<4} {:<4} {:<4} {:<8} {:<5}", "op", "LB", "E", "MP", "MT", "NG", "GC", "material", "local");
            let mut rows = Vec::new();
            for o in &ops {
                let c = check_conditions(o);
                let loc = check_local(o);
                let y = |b: bool| if b { "yes" } else { "no" };
                let _ = writeln!(
                    text,
                    "{:<6} {:<4} {:<4} {:<4} {:<4} {:<4} {:<4} {:<8} {:<5}",
                    o.name(),
                    y(c.lb.holds),
                    y(c.e.holds),
                    y(c.mp.holds),
                    y(c.mt.holds),
                    y(c.ng.holds),
                    y(c.gc.holds),
                    y(c.material()),
                    y(loc.local())
                );
                rows.push(json!({ "conditions": c, "material": c.material(), "locality": loc }));
            }
            Ok(Output::ok(text, json!({ "lattice": la.lattice, "fingerprint": fingerprint(&l), "ops": rows })))
        }
        OpsCmd::Table { lattice: la, op } => {
            let l = lattice(&la.lattice, allow)?;
            let o = parse_op(&l, op)?;
            let w = l.labels().iter().map(|s| s.len()).max().unwrap_or(1).max(o.name().len());
            let mut text = format!("lattice {} fingerprint={}\n", la.lattice, fingerprint(&l));
            let _ = write!(text, "{:<w$}", o.name());
            for q in l.elements() {
                let _ = write!(text, " {:<w$}", l.label(q));
            }
            text = text.trim_end().to_string();
            text.push('\n');
            let mut table = Vec::new();
            for p in l.elements() {
                let _ = write!(text, "{:<w$}", l.label(p));
                let mut row = Vec::new();
                for q in l.elements() {
                    let v = l.label(o.apply(p, q));
                    let _ = write!(text, " {v:<w$}");
                    row.push(v.to_string());
                }
                text = text.trim_end().to_string();
                text.push('\n');
                table.push(row);
            }
            Ok(Output::ok(text, json!({ "lattice": la.lattice, "fingerprint": fingerprint(&l), "op": o.name(), "labels": l.labels(), "table": table })))
        }
    }
}

fn eval(l: &Arc<OrthoLattice>, interp: &str, env: Option<&Path>, src: &str) -> Result<Output, Error> {
    let i = Interpretation::from_name(l.clone(), interp)?;
    let uni = Universe::new(l.clone());
    let env = match env {
        Some(p) => parse_env(&std::fs::read_to_string(p)?, &uni)?,
        None => Env::new(),
    };
    let c = compile(&parse(src)?)?;
    let args = c.bind(&env)?;
    let v = Evaluator::new(&i, &uni)?.eval(&c, &args)?;
    let text = format!("lattice fingerprint={} interp {}\n{}\n", fingerprint(l), i.id(), l.label(v));
    Ok(Output::ok(
        text,
        json!({ "fingerprint": fingerprint(l), "interp": i.id().to_string(), "formula": src, "value": l.label(v), "index": v.0 }),
    ))
}

fn check(suite: Suite, config: &Path, allow: bool) -> Result<Output, Error> {
    let mut cfg = SuiteConfig::load(config)?;
    cfg.allow_non_oml |= allow;
    let fps: Vec<String> = cfg.build_lattices()?.iter().map(|(n, l)| format!("{n}={}", fingerprint(l))).collect();
    let header = format!("config {} lattices: {}\n", config.display(), fps.join(" "));
    let (text, json, pass) = match suite {
        Suite::Transfer => {
            let r = run_transfer_suite(&cfg)?;
            (r.render(), serde_json::to_value(&r), r.pass)
        }
        Suite::Demorgan => {
            let r = run_demorgan_suite(&cfg)?;
            (r.render(), serde_json::to_value(&r), r.pass)
        }
        Suite::Census => {
            let r = run_census(&cfg)?;
            (r.render(), serde_json::to_value(&r), r.pass)
        }
        Suite::Absolute | Suite::Restrict | Suite::Metatheory => {
            let r = run_metatheory_suite(&cfg)?;
            let names: &[&str] = match suite {
                Suite::Absolute => &["delta0-absoluteness"],
                Suite::Restrict => &["delta0-restriction"],
                _ => &[],
            };
            (r.render_only(names), serde_json::to_value(&r), r.passes(names))
        }
    };
    Ok(Output { text: header + &text, json: json.expect("json"), pass })
}

fn load_matrix(p: &Path) -> Result<ComplexMatrix<f64>, Error> {
    MatrixFile::load(p)?.to_matrix::<f64>()
}

fn spectral(cmd: &SpectralCmd) -> Result<Output, Error> {
    match cmd {
        SpectralCmd::Order { a, b } => {
            let (ma, mb) = (load_matrix(a)?, load_matrix(b)?);
            let leq = spectral_order_leq(&ma, &mb)?;
            Ok(Output::ok(format!("A <= B in the spectral order: {leq}\n"), json!({ "dim": ma.dim(), "spectral_leq": leq })))
        }
        SpectralCmd::Qvalue { a, b, conj } => {
            let (ma, mb) = (load_matrix(a)?, load_matrix(b)?);
            let spec = KotasSpec::conjunction(*conj as usize)?;
            let v = q_value_order(&ma, &mb, &spec)?;
            let one = v.approx_eq(&Projection::identity(ma.dim()));
            let leq = spectral_order_leq(&ma, &mb)?;
            // For j = 5 the value need not track the spectral order.
            let pass = *conj == 5 || one == leq;
            let rendered = MatrixFile::from_matrix(v.matrix())?.render();
            let text = format!(
                "conjunction *{conj}\nrank of [A <= B]: {} of {}\nvalue is identity: {one}\nA <= B in the spectral order: {leq}\nresult: {}\n{rendered}",
                v.rank(),
                ma.dim(),
                if pass { "PASS" } else { "FAIL" }
            );
            let json = json!({ "conj": conj, "rank": v.rank(), "dim": ma.dim(), "identity": one, "spectral_leq": leq, "pass": pass, "matrix": rendered });
            Ok(Output { text, json, pass })
        }
    }
}
