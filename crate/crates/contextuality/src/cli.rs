//! The `ctx` command line. Every command prints one JSON report with the
//! fields `tool_version`, `command`, `inputs`, `inputs_hash`, `result` and
//! `certificate`. Exit codes: 0 computed / positive, 1 negative decision,
//! 2 error, 3 inconclusive or out of budget.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::catalog;
use crate::certificate::{self, Certificate};
use crate::error::{Error, Result};
use crate::exact;
use crate::graphs::{self, AlphaOptions, WeightedGraph};
use crate::hierarchy::{self, CeVerdict, Verdict};
use crate::models::ProbModel;
use crate::polytope;
use crate::products::{self, ProductCaps, ProductKind};
use crate::scenario::{self as equivalence, SaturationBudget, Scenario};
use crate::solvers::sdp::SdpOptions;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Tolerance applied to models flagged `approximate` in their metadata.
pub const APPROXIMATE_MODEL_TOL: f64 = 1e-5;

#[derive(Parser, Debug)]
#[command(name = "ctx", version, about = "Contextuality scenarios, products and model sets")]
struct Cli {
    /// Numeric tolerance for semidefinite decisions.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Search budget (nodes or subsets) overriding module defaults.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and canonicalize a scenario, optionally validating a model on it.
    Validate { scenario: PathBuf, model: Option<PathBuf> },
    /// Non-orthogonality graph of a scenario.
    NoGraph {
        scenario: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Product of two or more scenarios.
    Product {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(required = true, num_args = 2..)]
        factors: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Membership of a model in one of the model sets.
    Membership(MembershipArgs),
    /// Whether a scenario has general or classical models.
    Decide {
        #[arg(value_enum)]
        question: Question,
        scenario: PathBuf,
    },
    /// Extreme points of the polytope of probabilistic models.
    Extremals { scenario: PathBuf },
    /// Weighted graph invariants.
    Invariant {
        #[arg(value_enum)]
        which: InvariantArg,
        graph: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        power: usize,
    },
    /// Virtual edges found by saturation, or a completion comparison.
    Equivalence {
        scenario: PathBuf,
        #[arg(long)]
        against: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 8)]
        max_subset_size: usize,
    },
    /// Re-check the certificate inside a report produced by this tool.
    Verify { report: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    List,
    Get {
        key: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        models: bool,
        /// Allow entries that take long to build.
        #[arg(long)]
        expensive: bool,
    },
}

#[derive(Args, Debug)]
struct MembershipArgs {
    #[arg(long, value_enum)]
    set: SetArg,
    #[arg(long, default_value_t = 1)]
    level: usize,
    scenario: PathBuf,
    model: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Direct,
    Fr,
    Min,
    Max,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Question {
    AllowsGeneral,
    AllowsClassical,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InvariantArg {
    Alpha,
    Alphastar,
    Theta,
    Capacity,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SetArg {
    #[value(name = "C")]
    C,
    #[value(name = "Q1")]
    Q1,
    #[value(name = "Qn")]
    Qn,
    #[value(name = "CE1")]
    Ce1,
    #[value(name = "CEn")]
    Cen,
    #[value(name = "CEinf")]
    Ceinf,
    #[value(name = "ECE")]
    Ece,
}

/// What a command produced, before it is wrapped into a report.
struct Outcome {
    code: i32,
    inputs: Value,
    result: Value,
    certificate: Option<Certificate>,
    /// Replaces the JSON report on standard output (DOT export).
    raw: Option<String>,
}

impl Outcome {
    fn new(code: i32, inputs: Value, result: Value, certificate: Option<Certificate>) -> Self {
        Outcome { code, inputs, result, certificate, raw: None }
    }
}

/// Captured output of one invocation.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the tool on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                RunOutput { code, stdout: text, stderr: String::new() }
            } else {
                RunOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let name = command_name(&cli.command);
    match execute(&cli) {
        Ok(out) => {
            let stdout = match out.raw {
                Some(raw) => raw,
                None => render_report(name, &out),
            };
            RunOutput { code: out.code, stdout, stderr: String::new() }
        }
        Err(e @ (Error::BudgetExceeded { .. } | Error::SizeCap { .. } | Error::DimensionCap { .. } | Error::CombinatorialBlowup { .. })) => {
            let out = Outcome::new(
                EXIT_INCONCLUSIVE,
                Value::Null,
                json!({"status": "budget_exceeded", "message": e.to_string()}),
                None,
            );
            RunOutput { code: EXIT_INCONCLUSIVE, stdout: render_report(name, &out), stderr: format!("ctx: {e}\n") }
        }
        Err(e) => RunOutput { code: EXIT_ERROR, stdout: String::new(), stderr: format!("ctx: {e}\n") },
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::NoGraph { .. } => "no-graph",
        Command::Product { .. } => "product",
        Command::Catalog(_) => "catalog",
        Command::Membership(_) => "membership",
        Command::Decide { .. } => "decide",
        Command::Extremals { .. } => "extremals",
        Command::Invariant { .. } => "invariant",
        Command::Equivalence { .. } => "equivalence",
        Command::Verify { .. } => "verify",
    }
}

fn render_report(command: &str, out: &Outcome) -> String {
    let hash = hex::encode(Sha256::digest(out.inputs.to_string().as_bytes()));
    let report = json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "inputs": out.inputs,
        "inputs_hash": hash,
        "result": out.result,
        "certificate": out.certificate.as_ref().map(Certificate::to_json_value),
    });
    let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
    text.push('\n');
    text
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn write_json(path: &Path, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn read_scenario(path: &Path) -> Result<Scenario> {
    Scenario::from_json_value(&read_json(path)?)
}

fn read_model(s: &Scenario, path: &Path) -> Result<ProbModel> {
    ProbModel::from_json_value(s, &read_json(path)?)
}

fn budget(cli: &Cli) -> Option<u64> {
    cli.budget.or_else(|| std::env::var("CTX_BUDGET_OVERRIDE").ok().and_then(|v| v.parse().ok()))
}

fn model_tol(cli: &Cli, p: &ProbModel) -> f64 {
    let tol = cli.tol.unwrap_or(hierarchy::DEFAULT_TOL);
    if p.metadata.get("approximate").map(String::as_str) == Some("true") {
        tol.max(APPROXIMATE_MODEL_TOL)
    } else {
        tol
    }
}

fn decision(b: bool) -> i32 {
    if b {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::In => EXIT_OK,
        Verdict::Out => EXIT_NEGATIVE,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Validate { scenario, model } => {
            let s = read_scenario(scenario)?;
            let mut inputs = json!({"scenario": s.to_json_value()});
            let mut result = json!({"valid": true, "vertices": s.num_vertices(), "edges": s.num_edges()});
            if let Some(m) = model {
                let p = read_model(&s, m)?;
                inputs["model"] = p.to_json_value();
                result["model_valid"] = json!(true);
            }
            Ok(Outcome::new(EXIT_OK, inputs, result, None))
        }
        Command::NoGraph { scenario, dot } => {
            let s = read_scenario(scenario)?;
            let g = s.non_orthogonality_graph();
            let mut out = Outcome::new(EXIT_OK, json!({"scenario": s.to_json_value()}), g.to_json_value(), None);
            if *dot {
                out.raw = Some(to_dot(&g));
            }
            Ok(out)
        }
        Command::Product { kind, factors, output } => {
            let scenarios = factors.iter().map(|f| read_scenario(f)).collect::<Result<Vec<_>>>()?;
            let refs: Vec<&Scenario> = scenarios.iter().collect();
            let kind = match kind {
                KindArg::Direct => ProductKind::Direct,
                KindArg::Fr => ProductKind::FrBinary,
                KindArg::Min => ProductKind::FrMin,
                KindArg::Max => ProductKind::FrMax,
            };
            let mut caps = ProductCaps::default();
            if let Some(b) = budget(cli) {
                caps.max_edges = b;
                caps.max_protocols = b;
            }
            let prod = products::product(kind, &refs, &caps)?;
            if let Some(o) = output {
                write_json(o, &prod.to_json_value())?;
            }
            let inputs = json!({"factors": scenarios.iter().map(Scenario::to_json_value).collect::<Vec<_>>()});
            let result = json!({"vertices": prod.num_vertices(), "edges": prod.num_edges(), "scenario": prod.to_json_value()});
            Ok(Outcome::new(EXIT_OK, inputs, result, None))
        }
        Command::Catalog(CatalogCmd::List) => {
            let entries: Vec<Value> = catalog::list().into_iter().map(|(k, d)| json!({"key": k, "description": d})).collect();
            Ok(Outcome::new(EXIT_OK, Value::Null, Value::Array(entries), None))
        }
        Command::Catalog(CatalogCmd::Get { key, output, models, expensive }) => {
            if key.starts_with("j-") && !expensive {
                return Err(Error::Invalid("J_n entries are large; pass --expensive to build them".into()));
            }
            let e = catalog::get(key)?;
            if let Some(o) = output {
                write_json(o, &e.scenario.to_json_value())?;
            }
            let mut result = json!({
                "key": e.key,
                "note": e.note,
                "scenario": e.scenario.to_json_value(),
                "model_names": e.models.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>(),
            });
            if *models {
                let m: serde_json::Map<String, Value> = e.models.iter().map(|(n, p)| (n.clone(), p.to_json_value())).collect();
                result["models"] = Value::Object(m);
            }
            Ok(Outcome::new(EXIT_OK, json!({"key": key}), result, None))
        }
        Command::Membership(m) => membership(cli, m),
        Command::Decide { question, scenario } => {
            let s = read_scenario(scenario)?;
            let (answer, cert, what) = match question {
                Question::AllowsGeneral => {
                    let (a, c) = polytope::allows_general(&s);
                    (a, c, "allows_general")
                }
                Question::AllowsClassical => {
                    let (a, c) = polytope::allows_classical(&s)?;
                    (a, c, "allows_classical")
                }
            };
            let result = json!({"question": what, "answer": answer});
            Ok(Outcome::new(decision(answer), json!({"scenario": s.to_json_value()}), result, Some(cert)))
        }
        Command::Extremals { scenario } => {
            let s = read_scenario(scenario)?;
            let cap = budget(cli).map_or(polytope::EXTREMAL_SUPPORT_CAP, |b| b as usize);
            let ext = polytope::extremal_models_with(&s, cap)?;
            let list: Vec<Value> = ext
                .iter()
                .map(|e| json!({"deterministic": e.is_deterministic, "weights": e.model.to_json_value()["weights"]}))
                .collect();
            let result = json!({
                "count": ext.len(),
                "deterministic": ext.iter().filter(|e| e.is_deterministic).count(),
                "extremals": list,
            });
            Ok(Outcome::new(EXIT_OK, json!({"scenario": s.to_json_value()}), result, None))
        }
        Command::Invariant { which, graph, weights, power } => {
            let mut g = WeightedGraph::from_json_value(&read_json(graph)?)?;
            if let Some(w) = weights {
                let v = read_json(w)?;
                let obj = v.as_object().ok_or_else(|| Error::Parse("weights JSON must be an object".into()))?;
                let map = obj
                    .iter()
                    .map(|(k, q)| {
                        let q = q.as_str().ok_or_else(|| Error::Parse(format!("weight of `{k}` must be a string")))?;
                        Ok((k.clone(), exact::parse(q)?))
                    })
                    .collect::<Result<_>>()?;
                g = g.with_named_weights(&map)?;
            }
            let inputs = json!({"graph": g.to_json_value()});
            let sdp = SdpOptions { tol: cli.tol.unwrap_or(SdpOptions::default().tol), ..SdpOptions::default() };
            let result = match which {
                InvariantArg::Alpha => {
                    let mut opts = AlphaOptions::default();
                    if let Some(b) = budget(cli) {
                        opts.max_nodes = b;
                    }
                    let a = graphs::alpha_with(&g, None, &opts)?;
                    let witness: Vec<&String> = a.witness.iter().map(|&v| &g.names()[v]).collect();
                    json!({"invariant": "alpha", "value": exact::format(&a.value), "witness": witness, "nodes": a.nodes})
                }
                InvariantArg::Alphastar => {
                    let a = graphs::alpha_star(&g)?;
                    json!({"invariant": "alphastar", "value": exact::format(&a.value)})
                }
                InvariantArg::Theta => {
                    let t = graphs::lovasz_theta(&g, &sdp)?;
                    json!({"invariant": "theta", "value": t.value, "upper": t.upper})
                }
                InvariantArg::Capacity => {
                    let c = graphs::capacity_bounds(&g, *power, &sdp)?;
                    let alphas: Vec<Value> =
                        c.alphas.iter().map(|(n, a)| json!({"power": n, "alpha": exact::format(a)})).collect();
                    json!({
                        "invariant": "capacity",
                        "lower": c.lower,
                        "upper": c.upper,
                        "best_power": c.best_power,
                        "alphas": alphas,
                        "single_shot": c.single_shot,
                    })
                }
            };
            Ok(Outcome::new(EXIT_OK, inputs, result, None))
        }
        Command::Equivalence { scenario, against, depth, max_subset_size } => {
            let s = read_scenario(scenario)?;
            let mut b = SaturationBudget { depth: *depth, max_subset_size: *max_subset_size, ..SaturationBudget::default() };
            if let Some(n) = budget(cli) {
                b.max_subsets = n as usize;
            }
            if let Some(t) = against {
                let t = read_scenario(t)?;
                let v = equivalence::completion_check(&s, &t, b)?;
                let code = if v == equivalence::CompletionVerdict::Equivalent { EXIT_OK } else { EXIT_INCONCLUSIVE };
                let inputs = json!({"scenario": s.to_json_value(), "against": t.to_json_value()});
                return Ok(Outcome::new(code, inputs, json!({"completion": v.as_str()}), None));
            }
            let table = equivalence::saturate_with_focus(&s, b, None)?;
            let result = json!({
                "virtual_edges": table.virtual_edge_names(),
                "rounds": table.rounds,
                "reached_fixpoint": table.reached_fixpoint,
                "universe": table.universe_size(),
            });
            Ok(Outcome::new(EXIT_OK, json!({"scenario": s.to_json_value()}), result, None))
        }
        Command::Verify { report } => {
            let r = read_json(report)?;
            let inputs = r.get("inputs").cloned().unwrap_or(Value::Null);
            let s = Scenario::from_json_value(
                inputs.get("scenario").ok_or_else(|| Error::Parse("report inputs carry no scenario".into()))?,
            )?;
            let p = match inputs.get("model") {
                Some(m) => Some(ProbModel::from_json_value(&s, m)?),
                None => None,
            };
            let cert_json = r.get("certificate").filter(|c| !c.is_null()).ok_or_else(|| Error::Parse("report has no certificate".into()))?;
            let cert: Certificate = serde_json::from_value(cert_json.clone())?;
            let ok = certificate::verify(&cert, &s, p.as_ref())?;
            let result = json!({"verified": ok, "kind": cert.kind()});
            Ok(Outcome::new(decision(ok), inputs, result, None))
        }
    }
}

fn membership(cli: &Cli, m: &MembershipArgs) -> Result<Outcome> {
    let s = read_scenario(&m.scenario)?;
    let p = read_model(&s, &m.model)?;
    let tol = model_tol(cli, &p);
    let inputs = json!({"scenario": s.to_json_value(), "model": p.to_json_value()});
    let boolean = |set: &str, level: Option<usize>, member: bool, cert: Certificate| {
        let result = json!({"set": set, "level": level, "member": member});
        Ok(Outcome::new(decision(member), inputs.clone(), result, Some(cert)))
    };
    match m.set {
        SetArg::C => {
            let (b, c) = polytope::is_classical(&s, &p)?;
            boolean("C", None, b, c)
        }
        SetArg::Ce1 => {
            let (b, c) = hierarchy::ce_level(&s, &p, 1)?;
            boolean("CE1", Some(1), b, c)
        }
        SetArg::Cen => {
            let (b, c) = hierarchy::ce_level(&s, &p, m.level)?;
            boolean("CEn", Some(m.level), b, c)
        }
        SetArg::Q1 | SetArg::Qn => {
            let level = if matches!(m.set, SetArg::Q1) { 1 } else { m.level };
            let r = hierarchy::q_membership(&s, &p, level, tol)?;
            let result = json!({
                "set": if level == 1 { "Q1" } else { "Qn" },
                "level": level,
                "verdict": r.verdict.as_str(),
                "member": r.verdict == Verdict::In,
                "margin": r.margin,
                "margin_upper": r.margin_upper,
                "iterations": r.report.iterations,
            });
            Ok(Outcome::new(verdict_code(r.verdict), inputs, result, Some(r.certificate(tol))))
        }
        SetArg::Ece => {
            let r = hierarchy::ece_membership(&s, &p, tol)?;
            let rep = r.report.as_ref();
            let cert = Certificate::SdpReport {
                status: r.verdict.as_str().into(),
                value: r.theta_upper,
                primal_eq: rep.map_or(0.0, |x| x.residuals.primal_eq),
                psd_min_eigenvalue: rep.map_or(0.0, |x| x.residuals.psd_min_eigenvalue),
                duality_gap: rep.map_or(0.0, |x| x.residuals.duality_gap),
                tol,
            };
            let result = json!({
                "set": "ECE",
                "verdict": r.verdict.as_str(),
                "member": r.verdict == Verdict::In,
                "theta": r.theta,
                "theta_upper": r.theta_upper,
            });
            Ok(Outcome::new(verdict_code(r.verdict), inputs, result, Some(cert)))
        }
        SetArg::Ceinf => {
            let max_power = m.level.max(2);
            let r = hierarchy::ce_infinity(&s, &p, max_power, tol)?;
            let code = match r.verdict {
                CeVerdict::In => EXIT_OK,
                CeVerdict::Out => EXIT_NEGATIVE,
                CeVerdict::Unknown => EXIT_INCONCLUSIVE,
            };
            let result = json!({
                "set": "CEinf",
                "verdict": r.verdict,
                "member": r.verdict == CeVerdict::In,
                "theta": r.theta,
                "alpha_root": r.alpha_root,
                "powers_checked": r.powers_checked,
            });
            Ok(Outcome::new(code, inputs, result, r.certificate))
        }
    }
}

fn to_dot(g: &WeightedGraph) -> String {
    let mut out = String::from("graph NO {\n");
    for (i, n) in g.names().iter().enumerate() {
        out.push_str(&format!("  \"{}\" [weight=\"{}\"];\n", n.replace('"', "\\\""), exact::format(g.weight(i))));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  \"{}\" -- \"{}\";\n", g.names()[u].replace('"', "\\\""), g.names()[v].replace('"', "\\\"")));
    }
    out.push_str("}\n");
    out
}
