//! Subcommand dispatch for the `topo` binary.
//!
//! Exit codes: 0 when the checked property holds, 1 when it does not, 2 on
//! usage or input errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use topo_core::enumerate::enumerate_topologies;
use topo_core::oracle::{
    brute_force_existence, enumerate_extensions, mine_gaps, verify_closure_chain, verify_corollary,
    verify_lemma1, verify_singleton_reduction, verify_theorem1, InstanceKey, SweepConfig,
    VerificationReport,
};
use topo_core::{
    approximate_map, check_conditions, classical_theta_closure, closure_criterion, construct_extension,
    corollary_continuous_extension, hull_tops, is_classical_weakly_continuous, is_continuous,
    is_theta_continuous, is_theta_continuous_literal, theta_closure, witness_chain, ExtensionInstance,
    FinSpace, PointSet, TieBreak, TotalMap, Verdict, Witness,
};

use crate::document::{
    parse_document, serialize_document, serialize_report, to_spaced_json, Document, InstanceRepr, MapDoc,
};
use crate::dot::emit_dot_with_map;

/// Set to `1` to raise the enumeration size guards by one point.
pub const SIZE_OVERRIDE_VAR: &str = "TOPO_SIZE_OVERRIDE";

#[derive(Parser, Debug)]
#[command(name = "topo", version, about = "Finite spaces, θ-closures and extensions from dense subsets")]
struct Cli {
    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Print a human-readable summary to stderr.
    #[arg(long, global = true)]
    summary: bool,
    /// Write the main output to this file instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closure, θ_α-closure, or classical θ-closure of a set.
    Closure {
        file: PathBuf,
        #[arg(long, default_value = "")]
        set: String,
        #[arg(long, conflicts_with = "classical")]
        theta: Option<usize>,
        #[arg(long)]
        classical: bool,
    },
    /// Tops of the α-hulls of a set.
    Hulls {
        file: PathBuf,
        #[arg(long, default_value = "")]
        set: String,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        #[arg(long)]
        minimal: bool,
        /// Also print one witness chain per top.
        #[arg(long)]
        chains: bool,
    },
    /// Check a continuity property of a map.
    CheckMap {
        instance: PathBuf,
        /// Map document; defaults to `f` when it is total.
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        #[arg(long, value_enum, default_value_t = Criterion::Definition)]
        criterion: Criterion,
    },
    /// Closure and θ-closure intersections at every point.
    Conditions { instance: PathBuf },
    /// Build an extension (or approximating map) of `f`.
    Extend {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long = "tie-break", value_enum, default_value_t = Tie::Min)]
        tie_break: Tie,
    },
    /// Exhaustive verification sweeps.
    Verify(VerifyArgs),
    /// Mine instances from exhaustive sweeps.
    Mine(MineArgs),
    /// Search all extensions for a θ_α-continuous one.
    Brute {
        instance: PathBuf,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        /// List every θ_α-continuous extension instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Count enumerated objects.
    Count(CountArgs),
    /// Graphviz rendering of a space or instance.
    Dot {
        file: PathBuf,
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Rewrite a document in canonical form.
    Fmt { file: PathBuf },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    claim: Claim,
    #[arg(long, default_value_t = 3)]
    nx: usize,
    #[arg(long, default_value_t = 3)]
    ny: usize,
    #[arg(long = "alpha-max", default_value_t = 2)]
    alpha_max: usize,
    /// Largest dense subset for the reduction check.
    #[arg(long = "max-domain", default_value_t = 3)]
    max_domain: usize,
}

#[derive(Args, Debug)]
struct MineArgs {
    #[arg(value_enum)]
    what: MineTarget,
    #[arg(long, default_value_t = 3)]
    nx: usize,
    #[arg(long, default_value_t = 3)]
    ny: usize,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(value_enum)]
    what: CountTarget,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t0: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Criterion {
    Definition,
    DefinitionLiteral,
    Closure,
    Classical,
    Continuous,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Exact,
    Approximate,
    Corollary,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Tie {
    Min,
    Max,
}

impl From<Tie> for TieBreak {
    fn from(t: Tie) -> Self {
        match t {
            Tie::Min => TieBreak::Min,
            Tie::Max => TieBreak::Max,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Claim {
    Lemma1,
    Theorem1,
    Corollary,
    ClosureChain,
    Reduction,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MineTarget {
    Gaps,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CountTarget {
    Topologies,
}

/// Failure kinds mapped onto exit codes.
enum Failure {
    /// The checked property does not hold (exit 1).
    Property(String),
    /// Bad usage or input (exit 2).
    Input(String),
}

type Outcome = Result<bool, Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    output: Option<PathBuf>,
    summary: bool,
    sweep: SweepConfig,
}

impl Ctx<'_> {
    fn emit(&mut self, text: &str) -> Result<(), Failure> {
        match &self.output {
            Some(path) => std::fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display()))),
            None => self.out.write_all(text.as_bytes()).map_err(input),
        }
    }

    fn note(&mut self, text: &str) {
        let _ = self.err.write_all(text.as_bytes());
    }
}

/// Runs the CLI against the process streams.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_cli_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    let allow_override = std::env::var(SIZE_OVERRIDE_VAR).is_ok_and(|v| v == "1");
    let mut ctx = Ctx {
        out,
        err,
        output: cli.output.clone(),
        summary: cli.summary,
        sweep: SweepConfig {
            jobs: cli.jobs.max(1),
            allow_override,
        },
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Property(msg)) => {
            ctx.note(&format!("{msg}\n"));
            1
        }
        Err(Failure::Input(msg)) => {
            ctx.note(&format!("error: {msg}\n"));
            2
        }
    }
}

fn read_doc(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_space(path: &Path) -> Result<FinSpace, Failure> {
    match read_doc(path)? {
        Document::Space(d) => Ok(d.space),
        other => Err(input(format!("{}: expected a space, found a {}", path.display(), other.kind()))),
    }
}

fn read_instance(path: &Path) -> Result<crate::document::InstanceDoc, Failure> {
    match read_doc(path)? {
        Document::Instance(d) => Ok(d),
        other => Err(input(format!("{}: expected an instance, found a {}", path.display(), other.kind()))),
    }
}

fn read_map(path: &Path, inst: &ExtensionInstance) -> Result<TotalMap, Failure> {
    match read_doc(path)? {
        Document::Map(m) => TotalMap::new(inst.x().clone(), inst.y().clone(), m.assignment)
            .map_err(|e| input(format!("{}: {e}", path.display()))),
        other => Err(input(format!("{}: expected a map, found a {}", path.display(), other.kind()))),
    }
}

fn parse_set(space: &FinSpace, text: &str) -> Result<PointSet, Failure> {
    let points = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| input(format!("--set: `{t}` is not a point id"))))
        .collect::<Result<Vec<_>, _>>()?;
    space.set(points).map_err(input)
}

fn dispatch(command: Command, ctx: &mut Ctx) -> Outcome {
    match command {
        Command::Closure {
            file,
            set,
            theta,
            classical,
        } => {
            let space = read_space(&file)?;
            let a = parse_set(&space, &set)?;
            let result = match (theta, classical) {
                (_, true) => classical_theta_closure(&space, &a),
                (Some(alpha), false) => theta_closure(&space, &a, alpha),
                (None, false) => space.closure(&a),
            }
            .map_err(input)?;
            ctx.emit(&to_spaced_json(&result))?;
            Ok(true)
        }
        Command::Hulls {
            file,
            set,
            alpha,
            minimal,
            chains,
        } => {
            let space = read_space(&file)?;
            let a = parse_set(&space, &set)?;
            let tops = hull_tops(&space, &a, alpha, minimal).map_err(input)?;
            if chains {
                #[derive(Serialize)]
                struct Entry {
                    top: PointSet,
                    chain: Vec<PointSet>,
                }
                let entries = tops
                    .iter()
                    .map(|t| {
                        witness_chain(&space, &a, alpha, t).map(|c| Entry {
                            top: *t,
                            chain: c.chain,
                        })
                    })
                    .collect::<topo_core::Result<Vec<_>>>()
                    .map_err(input)?;
                ctx.emit(&to_spaced_json(&entries))?;
            } else {
                ctx.emit(&to_spaced_json(&tops))?;
            }
            Ok(true)
        }
        Command::CheckMap {
            instance,
            map,
            alpha,
            criterion,
        } => {
            let doc = read_instance(&instance)?;
            let inst = &doc.instance;
            let big_f = match map {
                Some(path) => read_map(&path, inst)?,
                None => inst
                    .f()
                    .to_total()
                    .ok_or_else(|| input("f is not total; pass --map with a map document"))?,
            };
            let verdict = match criterion {
                Criterion::Definition => is_theta_continuous(&big_f, alpha),
                Criterion::DefinitionLiteral => is_theta_continuous_literal(&big_f, alpha),
                Criterion::Closure => closure_criterion(&big_f, alpha).map_err(input)?,
                Criterion::Classical => is_classical_weakly_continuous(&big_f),
                Criterion::Continuous => is_continuous(&big_f),
            };
            #[derive(Serialize)]
            struct Report<'a> {
                criterion: &'a str,
                alpha: usize,
                map: &'a [usize],
                holds: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                witness: Option<&'a Witness>,
            }
            let name = criterion
                .to_possible_value()
                .map(|v| v.get_name().to_string())
                .unwrap_or_default();
            ctx.emit(&to_spaced_json(&Report {
                criterion: &name,
                alpha,
                map: big_f.assignment(),
                holds: verdict.holds(),
                witness: verdict.witness(),
            }))?;
            Ok(matches!(verdict, Verdict::Holds))
        }
        Command::Conditions { instance } => {
            let doc = read_instance(&instance)?;
            let report = check_conditions(&doc.instance);
            #[derive(Serialize)]
            struct Out<'a> {
                sufficient: bool,
                necessary: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                sufficient_failure: Option<usize>,
                #[serde(skip_serializing_if = "Option::is_none")]
                necessary_failure: Option<usize>,
                e_closure: &'a [PointSet],
                e_theta: &'a [PointSet],
            }
            ctx.emit(&to_spaced_json(&Out {
                sufficient: report.sufficient_holds,
                necessary: report.necessary_holds,
                sufficient_failure: report.sufficient_failure(),
                necessary_failure: report.necessary_failure(),
                e_closure: &report.e_closure,
                e_theta: &report.e_theta,
            }))?;
            if ctx.summary {
                let mut s = String::new();
                for (x, (c, t)) in report.e_closure.iter().zip(&report.e_theta).enumerate() {
                    let _ = writeln!(s, "x={x:<3} closure∩ {c:<12} θ∩ {t}");
                }
                let _ = writeln!(
                    s,
                    "sufficient={} necessary={}",
                    report.sufficient_holds, report.necessary_holds
                );
                ctx.note(&s);
            }
            Ok(true)
        }
        Command::Extend {
            instance,
            mode,
            tie_break,
        } => {
            let doc = read_instance(&instance)?;
            let tie = TieBreak::from(tie_break);
            let result = match mode {
                Mode::Exact => construct_extension(&doc.instance, tie),
                Mode::Approximate => approximate_map(&doc.instance, tie),
                Mode::Corollary => corollary_continuous_extension(&doc.instance, tie),
            };
            match result {
                Ok(big_f) => {
                    ctx.emit(&serialize_document(&Document::Map(MapDoc {
                        assignment: big_f.assignment().to_vec(),
                    })))?;
                    Ok(true)
                }
                Err(e @ (topo_core::Error::ConditionFailed { .. } | topo_core::Error::NoContinuousExtension { .. })) => {
                    Err(Failure::Property(e.to_string()))
                }
                Err(e) => Err(input(e)),
            }
        }
        Command::Verify(args) => {
            let cfg = ctx.sweep;
            let report = match args.claim {
                Claim::Lemma1 => verify_lemma1(args.nx, args.ny, args.alpha_max, &cfg),
                Claim::Theorem1 => verify_theorem1(args.nx, args.ny, &cfg),
                Claim::Corollary => verify_corollary(args.nx, args.ny, &cfg),
                Claim::ClosureChain => verify_closure_chain(args.nx, args.alpha_max, &cfg),
                Claim::Reduction => verify_singleton_reduction(args.nx, args.ny, args.max_domain, &cfg),
            }
            .map_err(input)?;
            ctx.emit(&serialize_report(&report))?;
            if ctx.summary {
                let table = summary_table(&report);
                ctx.note(&table);
            }
            Ok(report.pass)
        }
        Command::Mine(args) => {
            let MineTarget::Gaps = args.what;
            let gaps = mine_gaps(args.nx, args.ny, &ctx.sweep).map_err(input)?;
            #[derive(Serialize)]
            struct GapOut<'a> {
                key: &'a InstanceKey,
                instance: InstanceRepr<'a>,
                witness: &'a [usize],
                necessary_holds: bool,
            }
            #[derive(Serialize)]
            struct Out<'a> {
                nx: usize,
                ny: usize,
                count: usize,
                gaps: Vec<GapOut<'a>>,
            }
            let out = Out {
                nx: args.nx,
                ny: args.ny,
                count: gaps.len(),
                gaps: gaps
                    .iter()
                    .map(|g| GapOut {
                        key: &g.key,
                        instance: InstanceRepr::new(&g.instance, None, None),
                        witness: g.witness.assignment(),
                        necessary_holds: g.necessary_holds,
                    })
                    .collect(),
            };
            let mut text = serde_json::to_string_pretty(&out).map_err(input)?;
            text.push('\n');
            ctx.emit(&text)?;
            if ctx.summary {
                ctx.note(&format!("gap instances (nx={}, ny={}): {}\n", args.nx, args.ny, gaps.len()));
            }
            Ok(true)
        }
        Command::Brute { instance, alpha, all } => {
            let doc = read_instance(&instance)?;
            let candidates: Vec<TotalMap> = enumerate_extensions(&doc.instance).map_err(input)?.collect();
            let witnesses: Vec<&[usize]> = if all {
                candidates
                    .iter()
                    .filter(|f| is_theta_continuous(f, alpha).holds())
                    .map(TotalMap::assignment)
                    .collect()
            } else {
                Vec::new()
            };
            let first = brute_force_existence(&doc.instance, alpha).map_err(input)?;
            #[derive(Serialize)]
            struct Out<'a> {
                alpha: usize,
                candidates: usize,
                exists: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                witness: Option<&'a [usize]>,
                #[serde(skip_serializing_if = "Vec::is_empty")]
                witnesses: Vec<&'a [usize]>,
            }
            ctx.emit(&to_spaced_json(&Out {
                alpha,
                candidates: candidates.len(),
                exists: first.is_some(),
                witness: first.as_ref().map(TotalMap::assignment),
                witnesses,
            }))?;
            Ok(first.is_some())
        }
        Command::Count(args) => {
            let CountTarget::Topologies = args.what;
            let spaces = enumerate_topologies(args.n, args.t0, ctx.sweep.allow_override).map_err(input)?;
            ctx.emit(&format!("{}\n", spaces.len()))?;
            Ok(true)
        }
        Command::Dot { file, map } => {
            let doc = read_doc(&file)?;
            let extension = match (&map, &doc) {
                (Some(path), Document::Instance(d)) => Some(read_map(path, &d.instance)?),
                (Some(_), _) => return Err(input("--map only applies to instance documents")),
                (None, _) => None,
            };
            let dot = emit_dot_with_map(&doc, extension.as_ref()).map_err(input)?;
            ctx.emit(&dot)?;
            Ok(true)
        }
        Command::Fmt { file } => {
            let doc = read_doc(&file)?;
            ctx.emit(&serialize_document(&doc))?;
            Ok(true)
        }
    }
}

fn summary_table(report: &VerificationReport) -> String {
    let mut s = String::new();
    let params: Vec<String> = report.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(s, "{:<40} {}", "claim", report.claim);
    let _ = writeln!(s, "{:<40} {}", "parameters", params.join(" "));
    for (k, v) in &report.counts {
        let _ = writeln!(s, "{k:<40} {v}");
    }
    let _ = writeln!(s, "{:<40} {}", "discrepancies", report.discrepancies.len());
    let _ = writeln!(s, "{:<40} {}", "result", if report.pass { "PASS" } else { "FAIL" });
    let _ = writeln!(s, "{:<40} {:.3} s", "elapsed", report.elapsed.as_secs_f64());
    s
}
