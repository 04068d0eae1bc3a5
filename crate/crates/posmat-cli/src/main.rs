//! Command-line front end: file in, verdict out.
//!
//! Exit codes: 0 = success / property true, 1 = property false (a
//! certificate is printed), 2 = usage or hypothesis error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use posmat::bounds::{self, BoundResult, ChainEnd, TheoremId};
use posmat::classes::{self, Caps, PowerLimitOutcome};
use posmat::fixtures::{self, Payload};
use posmat::generate;
use posmat::gk;
use posmat::graph::{self, Graph};
use posmat::matrix::{IndexSet, NonnegMatrix, PatternMatrix, StochasticMatrix, Support};
use posmat::textio;
use posmat::{Error, Rational};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "posmat",
    version,
    about = "Structure, positivity bounds, and connectivity for nonnegative matrices"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Parse matrix inputs as star grids (`*` positive, `0` zero).
    #[arg(long, global = true)]
    pattern: bool,
    /// Root seed for anything randomized.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Override every enumeration cap (subset scans, cut search).
    /// The POSMAT_MAX_N environment variable does the same.
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Include certificates and witnesses in the output.
    #[arg(long, global = true)]
    certificates: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full structural survey of one matrix.
    Classify { file: PathBuf },
    /// Class-k membership test (exit 1 with a counterexample if not).
    Gk {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Largest k with class-k membership (0 = none).
    GkIndex { file: PathBuf },
    /// Least exponent making every entry positive (primitive input).
    Gamma { file: PathBuf },
    /// Run every single-matrix rule of the bound catalog on one matrix.
    Bounds {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Check one catalog rule on given files, or sweep random instances.
    Verify(VerifyArgs),
    /// Vertex-connectivity commands on graph files.
    Graph {
        #[command(subcommand)]
        sub: GraphCmd,
    },
    /// Emit matrices, patterns, graphs, and the fixture corpus.
    Generate {
        #[command(subcommand)]
        sub: GenCmd,
    },
    /// Successive powers of a stochastic matrix until they settle.
    Limit {
        file: PathBuf,
        /// Entrywise settling tolerance, as a rational.
        #[arg(long, default_value = "1/1000000000")]
        tolerance: String,
        #[arg(long, default_value_t = 1000)]
        max_iter: u64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Rule id: 4.3 4.8 4.10 4.13 4.14 4.15 4.22 4.23 4.24 wielandt
    /// 5.7 5.8 5.10 5.12 5.13 5.17 5.19
    rule: String,
    /// Input files (one matrix, or a factor chain in order).
    files: Vec<PathBuf>,
    /// Sweep this many random hypothesis-satisfying instances instead.
    #[arg(long)]
    random: Option<usize>,
    /// Matrix size for --random.
    #[arg(long)]
    size: Option<usize>,
    /// Class index, for rules parameterized by k.
    #[arg(long)]
    k: Option<usize>,
    /// Size for the extremal-pattern rule (`wielandt`).
    #[arg(long)]
    n: Option<usize>,
    /// Leading block size for rule 5.10.
    #[arg(long)]
    block: Option<usize>,
    /// Diagonal index set for rule 4.15, e.g. `{1,3}` or `1,3`.
    #[arg(long)]
    w: Option<String>,
    /// Which end factor of rule 4.15 carries the allowability hypothesis.
    #[arg(long, value_enum, default_value_t = EndArg::Head)]
    end: EndArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum EndArg {
    Head,
    Tail,
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Vertex connectivity with a minimum separating set.
    Kappa { file: PathBuf },
    /// Is the graph k-connected? (exit 1 with a cut if not)
    CheckK {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Run all four k-connectivity routes and report each verdict.
    Audit {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Superdiagonal-plus-bottom-row extremal pattern.
    Wielandt {
        #[arg(long)]
        n: usize,
    },
    /// Cyclic ring of all-ones blocks, e.g. --sizes 3,3,3
    PeriodicBlock {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    /// Seeded random matrix.
    Random {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        /// Positive-entry probability as a rational in (0,1].
        #[arg(long, default_value = "1/2")]
        density: String,
        /// Keep drawing until the sample satisfies this predicate.
        #[arg(long, value_enum)]
        filter: Option<FilterArg>,
        /// Class index for --filter gk.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 4000)]
        budget: usize,
    },
    /// Emit one corpus entry (or list them all).
    Fixture {
        id: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Pattern,
    Nonneg,
    Stochastic,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    Irreducible,
    FullyIndecomposable,
    Scrambling,
    Sarymsakov,
    Gk,
}

/// Outcome of a command: exit code plus whether stdout was JSON.
type CmdResult = Result<u8, Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            if cli.json {
                let payload = json!({
                    "schema_version": SCHEMA_VERSION,
                    "error": e.to_string(),
                });
                println!("{}", serde_json::to_string_pretty(&payload).expect("valid json"));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
    }
}

fn cap_override(cli: &Cli) -> Option<usize> {
    cli.max_n.or_else(|| {
        std::env::var("POSMAT_MAX_N")
            .ok()
            .and_then(|v| v.parse().ok())
    })
}

fn read_to_string(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

/// Loads one matrix file as a pattern (numeric entries keep only their
/// positivity; `--pattern` switches to the star-grid format).
fn load_pattern(cli: &Cli, path: &Path) -> Result<PatternMatrix, Error> {
    let text = read_to_string(path)?;
    if cli.pattern {
        textio::parse_pattern(&text)
    } else {
        Ok(textio::parse_matrix(&text)?.indicator())
    }
}

fn load_graph(path: &Path) -> Result<Graph, Error> {
    textio::parse_graph(&read_to_string(path)?)
}

fn emit(cli: &Cli, payload: Value, text: String) {
    if cli.json {
        let mut whole = json!({ "schema_version": SCHEMA_VERSION });
        whole
            .as_object_mut()
            .expect("object")
            .extend(payload.as_object().cloned().expect("object payload"));
        println!("{}", serde_json::to_string_pretty(&whole).expect("valid json"));
    } else {
        print!("{text}");
    }
}

fn rational_json(r: &Rational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

fn set_json(s: &IndexSet) -> Value {
    json!(s.one_based())
}

fn opt_json<T: Into<Value>>(v: Option<T>) -> Value {
    v.map_or(Value::Null, Into::into)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt_str<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".into(), ToString::to_string)
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.cmd {
        Cmd::Classify { file } => cmd_classify(cli, file),
        Cmd::Gk { file, k } => cmd_gk(cli, file, *k),
        Cmd::GkIndex { file } => cmd_gk_index(cli, file),
        Cmd::Gamma { file } => cmd_gamma(cli, file),
        Cmd::Bounds { file, k } => cmd_bounds(cli, file, *k),
        Cmd::Verify(args) => cmd_verify(cli, args),
        Cmd::Graph { sub } => cmd_graph(cli, sub),
        Cmd::Generate { sub } => cmd_generate(cli, sub),
        Cmd::Limit {
            file,
            tolerance,
            max_iter,
        } => cmd_limit(cli, file, tolerance, *max_iter),
    }
}

fn cmd_classify(cli: &Cli, file: &Path) -> CmdResult {
    let p = load_pattern(cli, file)?;
    let caps = cap_override(cli).map_or_else(Caps::default, Caps::uniform);
    let rep = classes::classify_with_caps(&p, caps);
    let mut text = format!("{}x{} pattern\n", rep.rows, rep.cols);
    let mut line = |label: &str, value: String| {
        text.push_str(&format!("{label:<22}{value}\n"));
    };
    line("row-allowable", yes_no(rep.row_allowable).into());
    line("column-allowable", yes_no(rep.column_allowable).into());
    line("irreducible", opt_str(&rep.irreducible.map(yes_no)));
    line("period", opt_str(&rep.period));
    line("primitive", opt_str(&rep.primitive.map(yes_no)));
    line("gamma", opt_str(&rep.gamma));
    line("girth", opt_str(&rep.girth));
    line(
        "fully-indecomposable",
        opt_str(&rep.fully_indecomposable.map(yes_no)),
    );
    line("markov", yes_no(rep.markov).into());
    line("scrambling", opt_str(&rep.scrambling.map(yes_no)));
    line("sarymsakov", opt_str(&rep.sarymsakov.map(yes_no)));
    if cli.certificates {
        let c = &rep.certificates;
        if let Some(r) = &c.reducibility {
            text.push_str(&format!(
                "certificate: reducible with permutation {:?}, leading block {}\n",
                r.permutation, r.leading_block
            ));
        }
        if let Some(d) = &c.decomposability {
            text.push_str(&format!(
                "certificate: rows {} leave zero columns {}\n",
                d.rows, d.zero_columns
            ));
        }
        if let Some((i, j)) = c.non_scrambling_pair {
            text.push_str(&format!(
                "certificate: rows {i} and {j} share no positive column\n"
            ));
        }
        if let Some((t, u)) = &c.non_sarymsakov_pair {
            text.push_str(&format!(
                "certificate: disjoint sets {t} and {u} have disjoint consequent sets\n"
            ));
        }
        if let Some(j) = c.markov_column {
            text.push_str(&format!("certificate: column {j} is positive\n"));
        }
    }
    let payload = json!({
        "command": "classify",
        "rows": rep.rows,
        "cols": rep.cols,
        "row_allowable": rep.row_allowable,
        "column_allowable": rep.column_allowable,
        "irreducible": opt_json(rep.irreducible),
        "period": opt_json(rep.period),
        "primitive": opt_json(rep.primitive),
        "gamma": opt_json(rep.gamma),
        "girth": opt_json(rep.girth),
        "fully_indecomposable": opt_json(rep.fully_indecomposable),
        "markov": rep.markov,
        "scrambling": opt_json(rep.scrambling),
        "sarymsakov": opt_json(rep.sarymsakov),
        "certificates": {
            "reducibility": rep.certificates.reducibility.as_ref().map_or(Value::Null, |r| json!({
                "permutation": r.permutation,
                "leading_block": r.leading_block,
            })),
            "decomposability": rep.certificates.decomposability.as_ref().map_or(Value::Null, |d| json!({
                "rows": set_json(&d.rows),
                "zero_columns": set_json(&d.zero_columns),
            })),
            "non_scrambling_pair": rep.certificates.non_scrambling_pair.map_or(Value::Null, |(i, j)| json!([i, j])),
            "non_sarymsakov_pair": rep.certificates.non_sarymsakov_pair.as_ref().map_or(Value::Null, |(t, u)| json!([set_json(t), set_json(u)])),
            "markov_column": opt_json(rep.certificates.markov_column),
        },
    });
    emit(cli, payload, text);
    Ok(0)
}

fn cmd_gk(cli: &Cli, file: &Path, k: usize) -> CmdResult {
    let p = load_pattern(cli, file)?;
    let rep = match cap_override(cli) {
        Some(cap) => gk::is_gk_capped(&p, k, cap)?,
        None => gk::is_gk(&p, k)?,
    };
    let mut text = format!("class-{k} member: {}\n", yes_no(rep.is_member));
    if let Some(ce) = &rep.counterexample {
        text.push_str(&format!(
            "counterexample: F={} has deficiency {} of size {} < {}\n",
            ce.f,
            ce.deficiency,
            ce.deficiency.len(),
            ce.required
        ));
    }
    let payload = json!({
        "command": "gk",
        "n": rep.n,
        "k": rep.k,
        "is_member": rep.is_member,
        "counterexample": rep.counterexample.as_ref().map_or(Value::Null, |ce| json!({
            "f": set_json(&ce.f),
            "deficiency": set_json(&ce.deficiency),
            "required": ce.required,
        })),
    });
    emit(cli, payload, text);
    Ok(u8::from(!rep.is_member))
}

fn cmd_gk_index(cli: &Cli, file: &Path) -> CmdResult {
    let p = load_pattern(cli, file)?;
    let idx = match cap_override(cli) {
        Some(cap) => gk::gk_index_capped(&p, cap)?,
        None => gk::gk_index(&p)?,
    };
    emit(
        cli,
        json!({ "command": "gk-index", "gk_index": idx }),
        format!("{idx}\n"),
    );
    Ok(0)
}

fn cmd_gamma(cli: &Cli, file: &Path) -> CmdResult {
    let p = load_pattern(cli, file)?;
    let g = classes::gamma(&p)?;
    emit(
        cli,
        json!({ "command": "gamma", "gamma": g }),
        format!("{g}\n"),
    );
    Ok(0)
}

fn bound_result_json(r: &BoundResult) -> Value {
    json!({
        "rule": r.theorem.tag(),
        "hypotheses_met": r.hypotheses_met,
        "bound": opt_json(r.bound_value),
        "attained": opt_json(r.attained_value),
        "slack": opt_json(r.slack),
        "conclusion_holds": opt_json(r.conclusion_holds),
        "note": r.note,
    })
}

fn bound_result_line(r: &BoundResult) -> String {
    if r.hypotheses_met {
        format!(
            "{:<9} met    bound {:<5} attained {:<5} slack {:<5} {}\n",
            r.theorem.tag(),
            opt_str(&r.bound_value),
            opt_str(&r.attained_value),
            opt_str(&r.slack),
            r.note
        )
    } else {
        format!("{:<9} unmet  {}\n", r.theorem.tag(), r.note)
    }
}

fn cmd_bounds(cli: &Cli, file: &Path, k: Option<usize>) -> CmdResult {
    let p = load_pattern(cli, file)?;
    let table = bounds::bounds_table(&p, k)?;
    let mut text = String::new();
    for r in &table {
        text.push_str(&bound_result_line(r));
    }
    let payload = json!({
        "command": "bounds",
        "k": opt_json(k),
        "rules": table.iter().map(bound_result_json).collect::<Vec<_>>(),
    });
    emit(cli, payload, text);
    Ok(0)
}

fn need<T: Copy>(v: Option<T>, what: &str) -> Result<T, Error> {
    v.ok_or_else(|| Error::Invalid(format!("this rule needs {what}")))
}

fn parse_w(text: &str, n: usize) -> Result<IndexSet, Error> {
    textio::parse_index_set(text, n)
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> CmdResult {
    let id = TheoremId::parse(&args.rule)?;

    if id == TheoremId::Wielandt {
        let n = need(args.n, "--n")?;
        let r = bounds::verify_wielandt_extremal(n)?;
        let text = format!(
            "gamma={} bound={} slack={}\n",
            r.attained_value.expect("attained"),
            r.bound_value.expect("bound"),
            r.slack.expect("slack")
        );
        let mut payload = bound_result_json(&r);
        payload
            .as_object_mut()
            .expect("object")
            .insert("command".into(), "verify".into());
        emit(cli, payload, text);
        return Ok(0);
    }

    if let Some(trials) = args.random {
        let n = need(args.size, "--size")?;
        let rep = bounds::random_sweep(id, trials, n, cli.seed)?;
        let text = format!(
            "rule {}: {}/{} verified (n={}, seed={}, max slack {})\n",
            rep.theorem.tag(),
            rep.verified,
            rep.trials,
            rep.n,
            rep.root_seed,
            opt_str(&rep.max_slack)
        );
        let payload = json!({
            "command": "verify",
            "rule": rep.theorem.tag(),
            "mode": "random",
            "trials": rep.trials,
            "n": rep.n,
            "seed": rep.root_seed,
            "verified": rep.verified,
            "max_slack": opt_json(rep.max_slack),
        });
        emit(cli, payload, text);
        return Ok(0);
    }

    if args.files.is_empty() {
        return Err(Error::Invalid(
            "give input files, or --random with --size".into(),
        ));
    }
    let mats: Vec<PatternMatrix> = args
        .files
        .iter()
        .map(|f| load_pattern(cli, f))
        .collect::<Result<_, _>>()?;
    let one = &mats[0];
    let result = match id {
        TheoremId::T4_3 => bounds::verify_t4_3(one, need(args.k, "--k")?)?,
        TheoremId::T4_8 => bounds::verify_t4_8(one)?,
        TheoremId::T4_10 => bounds::verify_t4_10(&mats, need(args.k, "--k")?)?,
        TheoremId::T4_13 => bounds::verify_t4_13(one)?,
        TheoremId::T4_14 => bounds::verify_t4_14(one)?,
        TheoremId::T4_15 => {
            let k = need(args.k, "--k")?;
            if mats.len() == 1 {
                bounds::verify_t4_15_power(one, k)?
            } else {
                let w = parse_w(
                    args.w.as_deref().ok_or_else(|| {
                        Error::Invalid("this rule needs --w with several files".into())
                    })?,
                    one.rows(),
                )?;
                let end = match args.end {
                    EndArg::Head => ChainEnd::Head,
                    EndArg::Tail => ChainEnd::Tail,
                };
                bounds::verify_t4_15(&mats, &w, k, end)?
            }
        }
        TheoremId::T4_22 => bounds::verify_t4_22(one)?,
        TheoremId::T4_23 => bounds::verify_t4_23(one, need(args.k, "--k")?)?,
        TheoremId::T4_24 => bounds::verify_t4_24(one, need(args.k, "--k")?)?,
        TheoremId::T5_7 => bounds::verify_t5_7(&mats)?,
        TheoremId::T5_8 => bounds::verify_t5_8(&mats, need(args.k, "--k")?)?,
        TheoremId::T5_10 => bounds::verify_t5_10(one, need(args.block, "--block")?)?,
        TheoremId::T5_12 => bounds::verify_t5_12(one)?,
        TheoremId::T5_13 => bounds::verify_t5_13(&mats)?,
        TheoremId::T5_17 => bounds::verify_t5_17(&mats)?,
        TheoremId::T5_19 => bounds::verify_t5_19(&mats)?,
        TheoremId::Wielandt => unreachable!("handled above"),
    };
    let text = if result.hypotheses_met {
        format!(
            "rule {}: hypotheses met; {}{}\n",
            result.theorem.tag(),
            result.note,
            result
                .slack
                .map_or_else(String::new, |s| format!(" (slack {s})"))
        )
    } else {
        format!(
            "rule {}: hypotheses not met: {}\n",
            result.theorem.tag(),
            result.note
        )
    };
    let mut payload = bound_result_json(&result);
    payload
        .as_object_mut()
        .expect("object")
        .insert("command".into(), "verify".into());
    emit(cli, payload, text);
    if result.hypotheses_met {
        Ok(0)
    } else {
        Ok(2)
    }
}

fn cmd_graph(cli: &Cli, sub: &GraphCmd) -> CmdResult {
    let cap = cap_override(cli);
    match sub {
        GraphCmd::Kappa { file } => {
            let g = load_graph(file)?;
            let rep = match cap {
                Some(c) => graph::connectivity_bruteforce_capped(&g, c)?,
                None => graph::connectivity_bruteforce(&g)?,
            };
            let mut text = format!("kappa {}\n", rep.kappa);
            if let Some(cut) = &rep.min_cut {
                text.push_str(&format!("minimum separating set {cut}\n"));
            } else if rep.complete_after_loop_removal {
                text.push_str("complete graph: no separating set exists\n");
            }
            let payload = json!({
                "command": "graph-kappa",
                "n": g.n(),
                "kappa": rep.kappa,
                "min_cut": rep.min_cut.as_ref().map_or(Value::Null, set_json),
                "complete_after_loop_removal": rep.complete_after_loop_removal,
            });
            emit(cli, payload, text);
            Ok(0)
        }
        GraphCmd::CheckK { file, k } => {
            let g = load_graph(file)?;
            let audit = match cap {
                Some(c) => graph::equivalence_audit_capped(&g, *k, c)?,
                None => graph::equivalence_audit(&g, *k)?,
            };
            let verdict = audit.verdict();
            let mut text = format!("{}-connected: {}\n", k, yes_no(verdict));
            let mut cut_json = Value::Null;
            if !verdict {
                let rep = match cap {
                    Some(c) => graph::connectivity_bruteforce_capped(&g, c)?,
                    None => graph::connectivity_bruteforce(&g)?,
                };
                if let Some(cut) = &rep.min_cut {
                    text.push_str(&format!(
                        "certificate: removing {cut} disconnects the graph (kappa {})\n",
                        rep.kappa
                    ));
                    cut_json = set_json(cut);
                }
            }
            let payload = json!({
                "command": "graph-check-k",
                "n": g.n(),
                "k": k,
                "connected_k": verdict,
                "cut": cut_json,
            });
            emit(cli, payload, text);
            Ok(u8::from(!verdict))
        }
        GraphCmd::Audit { file, k } => {
            let g = load_graph(file)?;
            let audit = match cap {
                Some(c) => graph::equivalence_audit_capped(&g, *k, c)?,
                None => graph::equivalence_audit(&g, *k)?,
            };
            let text = format!(
                "cut route        {}\nclass route      {}\nwitness route    {}\ndeficiency route {}\nagreed           {}\n",
                yes_no(audit.cut_route),
                yes_no(audit.class_route),
                yes_no(audit.witness_route),
                yes_no(audit.deficiency_route),
                yes_no(audit.agreed()),
            );
            let payload = json!({
                "command": "graph-audit",
                "n": audit.n,
                "k": audit.k,
                "cut_route": audit.cut_route,
                "class_route": audit.class_route,
                "witness_route": audit.witness_route,
                "deficiency_route": audit.deficiency_route,
                "agreed": audit.agreed(),
                "verdict": audit.verdict(),
            });
            emit(cli, payload, text);
            Ok(u8::from(!audit.verdict()))
        }
    }
}

fn parse_density(text: &str) -> Result<(u32, u32), Error> {
    let r = textio::parse_rational(text)
        .map_err(|_| Error::Invalid(format!("bad density {text:?}; use e.g. 1/2")))?;
    let num: u32 = r
        .numer()
        .try_into()
        .map_err(|_| Error::Invalid("density numerator out of range".into()))?;
    let den: u32 = r
        .denom()
        .try_into()
        .map_err(|_| Error::Invalid("density denominator out of range".into()))?;
    Ok((num, den))
}

fn pattern_text(cli: &Cli, p: &PatternMatrix) -> String {
    if cli.pattern {
        textio::emit_pattern(p)
    } else {
        let rows: Vec<Vec<i64>> = (0..p.rows())
            .map(|i| (0..p.cols()).map(|j| i64::from(p.get(i, j))).collect())
            .collect();
        textio::emit_matrix(&NonnegMatrix::from_integer_rows(&rows).expect("0/1 entries"))
    }
}

fn pattern_payload(command: &str, p: &PatternMatrix) -> Value {
    json!({
        "command": command,
        "rows": p.rows(),
        "cols": p.cols(),
        "pattern": (0..p.rows())
            .map(|i| (0..p.cols()).map(|j| u8::from(p.get(i, j))).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

fn cmd_generate(cli: &Cli, sub: &GenCmd) -> CmdResult {
    match sub {
        GenCmd::Wielandt { n } => {
            let p = generate::wielandt(*n)?;
            emit(cli, pattern_payload("generate-wielandt", &p), pattern_text(cli, &p));
            Ok(0)
        }
        GenCmd::PeriodicBlock { sizes } => {
            let p = generate::periodic_block(sizes)?;
            emit(
                cli,
                pattern_payload("generate-periodic-block", &p),
                pattern_text(cli, &p),
            );
            Ok(0)
        }
        GenCmd::Random {
            kind,
            n,
            density,
            filter,
            k,
            budget,
        } => {
            let (num, den) = parse_density(density)?;
            let mut rng = generate::rng_from_seed(cli.seed);
            match (kind, filter) {
                (KindArg::Pattern, None) => {
                    let p = generate::random_pattern(*n, *n, num, den, &mut rng)?;
                    emit(cli, pattern_payload("generate-random", &p), pattern_text(cli, &p));
                }
                (KindArg::Pattern, Some(f)) => {
                    let filter = match f {
                        FilterArg::Irreducible => generate::PatternFilter::Irreducible,
                        FilterArg::FullyIndecomposable => {
                            generate::PatternFilter::FullyIndecomposable
                        }
                        FilterArg::Scrambling => generate::PatternFilter::Scrambling,
                        FilterArg::Sarymsakov => generate::PatternFilter::Sarymsakov,
                        FilterArg::Gk => generate::PatternFilter::Gk(need(*k, "--k")?),
                    };
                    let p =
                        generate::random_pattern_filtered(*n, num, den, filter, *budget, &mut rng)?;
                    emit(cli, pattern_payload("generate-random", &p), pattern_text(cli, &p));
                }
                (KindArg::Nonneg, None) => {
                    let m = generate::random_nonneg(*n, *n, num, den, &mut rng)?;
                    emit(
                        cli,
                        json!({ "command": "generate-random", "matrix": matrix_json(&m) }),
                        textio::emit_matrix(&m),
                    );
                }
                (KindArg::Stochastic, None) => {
                    let m = generate::random_stochastic(*n, num, den, &mut rng)?;
                    emit(
                        cli,
                        json!({ "command": "generate-random", "matrix": matrix_json(m.as_matrix()) }),
                        textio::emit_matrix(m.as_matrix()),
                    );
                }
                _ => {
                    return Err(Error::Invalid(
                        "--filter applies to --kind pattern only".into(),
                    ))
                }
            }
            Ok(0)
        }
        GenCmd::Fixture { id, list } => {
            if *list || id.is_none() {
                let mut text = String::new();
                let mut entries = Vec::new();
                for f in fixtures::corpus() {
                    text.push_str(&format!("{:<16} {}\n", f.id, f.notes));
                    entries.push(json!({ "id": f.id, "notes": f.notes }));
                }
                emit(
                    cli,
                    json!({ "command": "generate-fixture", "fixtures": entries }),
                    text,
                );
                return Ok(0);
            }
            let f = fixtures::by_id(id.as_deref().expect("checked above"))?;
            let text = match &f.payload {
                Payload::Matrix(m) => textio::emit_matrix(m),
                Payload::Stochastic(s) => textio::emit_matrix(s.as_matrix()),
                Payload::Graph(g) => textio::emit_graph(g),
            };
            let payload = match &f.payload {
                Payload::Matrix(m) => json!({
                    "command": "generate-fixture", "id": f.id, "matrix": matrix_json(m),
                }),
                Payload::Stochastic(s) => json!({
                    "command": "generate-fixture", "id": f.id, "matrix": matrix_json(s.as_matrix()),
                }),
                Payload::Graph(g) => json!({
                    "command": "generate-fixture", "id": f.id,
                    "graph": { "n": g.n(), "edges": g.edges_one_based() },
                }),
            };
            emit(cli, payload, text);
            Ok(0)
        }
    }
}

fn matrix_json(m: &NonnegMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| rational_json(m.get(i, j))).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

fn cmd_limit(cli: &Cli, file: &Path, tolerance: &str, max_iter: u64) -> CmdResult {
    if cli.pattern {
        return Err(Error::Invalid(
            "limit needs numeric input, not a pattern".into(),
        ));
    }
    let m = textio::parse_matrix(&read_to_string(file)?)?;
    let s = StochasticMatrix::new(m)?;
    let tol = textio::parse_rational(tolerance)?;
    match classes::power_limit(&s, &tol, max_iter)? {
        PowerLimitOutcome::Converged { power, matrix } => {
            let text = format!(
                "settled at power {power}\n{}",
                textio::emit_matrix(matrix.as_matrix())
            );
            let payload = json!({
                "command": "limit",
                "converged": true,
                "power": power,
                "matrix": matrix_json(matrix.as_matrix()),
            });
            emit(cli, payload, text);
            Ok(0)
        }
        PowerLimitOutcome::MaxIterExceeded {
            power,
            matrix,
            last_delta,
        } => {
            let text = format!(
                "not settled after power {power}; last delta {}\n",
                textio::format_rational(&last_delta)
            );
            let payload = json!({
                "command": "limit",
                "converged": false,
                "power": power,
                "last_delta": rational_json(&last_delta),
                "matrix": matrix_json(matrix.as_matrix()),
            });
            emit(cli, payload, text);
            Ok(1)
        }
    }
}
