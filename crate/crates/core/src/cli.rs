//! The `beliefc` command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a reported violation
//! (frame clause, postulate, round trip, ill-formed relation, or a valid
//! frame failing a postulate under `fuzz`), 3 `contract --partial` outside
//! the partial domain.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::agm::{check_postulates_with, load_table, table_from_model, table_to_json, CheckOptions, PostulateReport};
use crate::bits::{Event, StateSet};
use crate::canonical::{build_canonical, load_spheres, verify_roundtrip, RoundtripReport};
use crate::contraction::{
    contract_full, contract_partial, expand_modal, modal_contraction_member, revise, ModalExpansion,
};
use crate::entrenchment::{
    contraction_from_entrenchment, entrenchment_from_contraction, load_relation, relation_to_json,
};
use crate::error::Error;
use crate::frame::{
    generate_frame, load_model, model_to_json, validate_frame, Clause, FrameParams, PointedModel, ValidationReport,
};
use crate::logic::{dnf_text, expand_theory, Formula, Signature, Theory};

#[derive(Parser, Debug)]
#[command(name = "beliefc", version, about = "Belief contraction over finite pointed models")]
struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cap on formula pairs checked for (K-7) and (K-8); all pairs when absent.
    #[arg(long, global = true, value_name = "K")]
    max_pairs: Option<usize>,
    /// Worker threads for `fuzz`. Output does not depend on it.
    #[arg(long, global = true, value_name = "W")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate seriality and the selection-function clauses.
    CheckFrame { model: PathBuf },
    /// Contract the model's belief set by a formula.
    Contract {
        model: PathBuf,
        #[arg(long)]
        phi: String,
        /// Refuse formulas true at every state instead of falling back.
        #[arg(long)]
        partial: bool,
        /// Test one formula for membership through the modal semantics.
        #[arg(long, requires = "psi")]
        modal: bool,
        #[arg(long, requires = "modal")]
        psi: Option<String>,
    },
    /// Revise the model's belief set by a formula.
    Revise {
        model: PathBuf,
        #[arg(long)]
        phi: String,
    },
    /// Expand the belief set, both syntactically and through the modal form.
    Expand {
        model: PathBuf,
        #[arg(long)]
        phi: String,
    },
    /// Check the eight postulates on a model's contraction or a table.
    #[command(group(ArgGroup::new("source").required(true).args(["model", "table"])))]
    VerifyAgm {
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Build the canonical model of a table or sphere system.
    #[command(group(ArgGroup::new("source").required(true).args(["table", "spheres"])))]
    Canonical {
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long)]
        spheres: Option<PathBuf>,
        /// Write the model here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a table to its entrenchment relation or back.
    #[command(group(ArgGroup::new("source").required(true).args(["from_table", "to_table"])))]
    Entrench {
        /// Table file to derive a relation from.
        #[arg(long)]
        from_table: Option<PathBuf>,
        /// Relation file to derive a table from.
        #[arg(long)]
        to_table: Option<PathBuf>,
    },
    /// Generate seeded frames and check each one.
    Fuzz {
        #[arg(long)]
        atoms: usize,
        #[arg(long)]
        states: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Perturb each frame until this clause fails.
        #[arg(long, value_parser = parse_clause)]
        drop: Option<Clause>,
        #[arg(long)]
        per_state_orders: bool,
        /// Allow several states to share a valuation.
        #[arg(long)]
        duplicates: bool,
    },
}

fn parse_clause(text: &str) -> Result<Clause, String> {
    Clause::from_id(text).ok_or_else(|| {
        let ids: Vec<&str> = Clause::ALL.iter().map(|c| c.id()).collect();
        format!("unknown clause `{text}` (one of {})", ids.join(", "))
    })
}

struct Failure {
    code: i32,
    message: String,
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: 1, message: e.to_string() }
    }
}

fn input(path: &Path) -> impl FnOnce(Error) -> Failure + '_ {
    move |e| Failure { code: 1, message: format!("{}: {e}", path.display()) }
}

fn failure(code: i32, e: impl std::fmt::Display) -> Failure {
    Failure { code, message: e.to_string() }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line on `args` (program name first) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                1
            } else {
                let _ = out.write_all(rendered.as_bytes());
                0
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let machine = cli.format == Format::Machine;
    let opts = CheckOptions { max_pairs: cli.max_pairs, seed: 0 };
    match &cli.command {
        Command::CheckFrame { model } => {
            let m = load_model(model).map_err(input(model))?;
            let report = validate_frame(&m).map_err(input(model))?;
            print_validation(out, &m, &report, machine)?;
            Ok(if report.passed() { 0 } else { 2 })
        }
        Command::Contract { model, phi, partial, modal, psi } => {
            let m = load_model(model).map_err(input(model))?;
            let phi = formula(&m, "--phi", phi)?;
            if *modal {
                let psi = formula(&m, "--psi", psi.as_deref().unwrap_or_default())?;
                let member = modal_contraction_member(&m, &phi, &psi).map_err(input(model))?;
                if machine {
                    emit_json(out, &serde_json::json!({ "member": member }))?;
                } else {
                    writeln!(out, "member {member}")?;
                }
                return Ok(0);
            }
            let result = if *partial { contract_partial(&m, &phi) } else { contract_full(&m, &phi) };
            match result {
                Ok(t) => {
                    print_theory(out, &t, m.signature(), machine)?;
                    Ok(0)
                }
                Err(Error::OutsidePartialDomain) => Err(failure(3, Error::OutsidePartialDomain)),
                Err(e) => Err(input(model)(e)),
            }
        }
        Command::Revise { model, phi } => {
            let m = load_model(model).map_err(input(model))?;
            let phi = formula(&m, "--phi", phi)?;
            let t = revise(&m, &phi).map_err(input(model))?;
            print_theory(out, &t, m.signature(), machine)?;
            Ok(0)
        }
        Command::Expand { model, phi } => {
            let m = load_model(model).map_err(input(model))?;
            let phi = formula(&m, "--phi", phi)?;
            expand(out, err, &m, &phi, machine)
        }
        Command::VerifyAgm { model, table } => {
            let c = match (model, table) {
                (Some(path), _) => {
                    let m = load_model(path).map_err(input(path))?;
                    table_from_model(&m).map_err(input(path))?
                }
                (None, Some(path)) => load_table(path).map_err(input(path))?,
                (None, None) => unreachable!("clap requires one source"),
            };
            let report = check_postulates_with(&c, opts).map_err(|e| failure(1, e))?;
            print_postulates(out, &report, c.signature(), machine)?;
            Ok(if report.passed() { 0 } else { 2 })
        }
        Command::Canonical { table, spheres, out: dest } => {
            let c = match (table, spheres) {
                (Some(path), _) => load_table(path).map_err(input(path))?,
                (None, Some(path)) => {
                    let s = load_spheres(path).map_err(input(path))?;
                    s.to_table().map_err(input(path))?
                }
                (None, None) => unreachable!("clap requires one source"),
            };
            let m = match build_canonical(&c) {
                Ok(m) => m,
                Err(e @ Error::PostulateViolation(_)) => return Err(failure(2, e)),
                Err(e) => return Err(failure(1, e)),
            };
            let report = verify_roundtrip(&m, &c).map_err(|e| failure(1, e))?;
            let model_text = model_to_json(&m);
            if let Some(dest) = dest {
                std::fs::write(dest, &model_text).map_err(|e| failure(1, format!("{}: {e}", dest.display())))?;
            }
            print_roundtrip(out, &model_text, dest.is_none(), &report, &m, machine)?;
            Ok(if report.passed() { 0 } else { 2 })
        }
        Command::Entrench { from_table, to_table } => match (from_table, to_table) {
            (Some(path), _) => {
                let c = load_table(path).map_err(input(path))?;
                match entrenchment_from_contraction(&c) {
                    Ok(r) => {
                        out.write_all(relation_to_json(&r).as_bytes())?;
                        Ok(0)
                    }
                    Err(e @ Error::PostulateViolation(_)) => Err(failure(2, e)),
                    Err(e) => Err(input(path)(e)),
                }
            }
            (None, Some(path)) => {
                let r = load_relation(path).map_err(input(path))?;
                match contraction_from_entrenchment(&r) {
                    Ok(c) => {
                        out.write_all(table_to_json(&c).as_bytes())?;
                        Ok(0)
                    }
                    Err(e @ Error::IllFormedRelation { .. }) => Err(failure(2, e)),
                    Err(e) => Err(input(path)(e)),
                }
            }
            (None, None) => unreachable!("clap requires one source"),
        },
        Command::Fuzz { atoms, states, seed, count, drop, per_state_orders, duplicates } => {
            let params = FrameParams {
                n_atoms: *atoms,
                n_states: *states,
                duplicate_valuations: *duplicates,
                per_state_orders: *per_state_orders,
                drop_clause: *drop,
            };
            fuzz(out, &params, *seed, *count, cli.max_pairs, cli.jobs, machine)
        }
    }
}

fn formula(m: &PointedModel, flag: &str, text: &str) -> Result<Formula, Failure> {
    m.signature().parse(text).map_err(|e| failure(1, format!("{flag}: {e}")))
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> io::Result<()> {
    let line = serde_json::to_string(value).expect("report types serialize");
    writeln!(out, "{line}")
}

/// A literal when the event is an atom or its negation, else the canonical DNF.
fn describe(e: &Event, sig: &Signature) -> String {
    for i in 0..sig.len() {
        let atom = sig.atom_event(i);
        if *e == atom {
            return sig.atom_name(i).to_string();
        }
        if *e == atom.complement() {
            return format!("~{}", sig.atom_name(i));
        }
    }
    if e.is_full() {
        let p = sig.atom_name(0);
        return format!("{p} | ~{p}");
    }
    dnf_text(e, sig)
}

#[derive(Serialize)]
struct TheoryOut {
    worlds: Vec<usize>,
    dnf: String,
}

impl TheoryOut {
    fn new(t: &Theory, sig: &Signature) -> Self {
        Self { worlds: t.worlds().to_vec(), dnf: t.dnf(sig) }
    }
}

fn print_theory(out: &mut dyn Write, t: &Theory, sig: &Signature, machine: bool) -> io::Result<()> {
    let view = TheoryOut::new(t, sig);
    if machine {
        emit_json(out, &view)
    } else {
        writeln!(out, "worlds {:?}", view.worlds)?;
        writeln!(out, "dnf {}", view.dnf)
    }
}

fn expand(out: &mut dyn Write, err: &mut dyn Write, m: &PointedModel, phi: &Formula, machine: bool) -> Outcome {
    let sig = m.signature();
    let syntactic = expand_theory(&crate::contraction::belief_set(m), phi, sig);
    let modal = expand_modal(m, phi);
    let diverges = modal.theory() != Some(&syntactic);
    if machine {
        #[derive(Serialize)]
        struct ExpandOut {
            syntactic: TheoryOut,
            modal: Option<TheoryOut>,
            diverges: bool,
        }
        emit_json(
            out,
            &ExpandOut {
                syntactic: TheoryOut::new(&syntactic, sig),
                modal: modal.theory().map(|t| TheoryOut::new(t, sig)),
                diverges,
            },
        )?;
    } else {
        let s = TheoryOut::new(&syntactic, sig);
        writeln!(out, "syntactic worlds {:?} dnf {}", s.worlds, s.dnf)?;
        match &modal {
            ModalExpansion::Theory(t) => {
                let v = TheoryOut::new(t, sig);
                writeln!(out, "modal worlds {:?} dnf {}", v.worlds, v.dnf)?;
            }
            ModalExpansion::AllFalse => writeln!(out, "modal all-false: no formula passes the membership test")?,
        }
    }
    if diverges {
        writeln!(err, "warning: the modal expansion differs from Cn(K + phi); phi is disbelieved")?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct ViolationOut {
    clause: &'static str,
    state: String,
    event: Option<Vec<String>>,
    other: Option<Vec<String>>,
}

fn print_validation(out: &mut dyn Write, m: &PointedModel, report: &ValidationReport, machine: bool) -> io::Result<()> {
    let ids = |set: &StateSet| -> Vec<String> { set.iter().map(|s| m.id(s).to_string()).collect() };
    let verdict = if report.passed() { "pass" } else { "fail" };
    if machine {
        #[derive(Serialize)]
        struct ReportOut {
            verdict: &'static str,
            exhaustive: bool,
            violations: Vec<ViolationOut>,
        }
        let violations = report
            .violations
            .iter()
            .map(|v| ViolationOut {
                clause: v.clause.id(),
                state: m.id(v.state).to_string(),
                event: v.event.as_ref().map(ids),
                other: v.other.as_ref().map(ids),
            })
            .collect();
        return emit_json(out, &ReportOut { verdict, exhaustive: report.exhaustive, violations });
    }
    let mode = if report.exhaustive { "exhaustive" } else { "sampled" };
    writeln!(out, "{verdict} ({mode})")?;
    for v in &report.violations {
        write!(out, "violation {} at state {}", v.clause, m.id(v.state))?;
        if let Some(e) = &v.event {
            write!(out, ", E = {}", m.show_states(e))?;
        }
        if let Some(f) = &v.other {
            write!(out, ", F = {}", m.show_states(f))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CounterexampleOut {
    postulate: &'static str,
    phi: Vec<usize>,
    psi: Vec<usize>,
    witness: Option<usize>,
}

#[derive(Serialize)]
struct PostulatesOut {
    verdict: &'static str,
    verdicts: Vec<(&'static str, &'static str)>,
    pairs_checked: usize,
    exhaustive: bool,
    counterexamples: Vec<CounterexampleOut>,
}

fn postulates_out(report: &PostulateReport) -> PostulatesOut {
    PostulatesOut {
        verdict: if report.passed() { "pass" } else { "fail" },
        verdicts: report.verdicts.iter().map(|(p, v)| (p.id(), v.id())).collect(),
        pairs_checked: report.pairs_checked,
        exhaustive: report.exhaustive,
        counterexamples: report
            .counterexamples
            .iter()
            .map(|c| CounterexampleOut {
                postulate: c.postulate.id(),
                phi: c.phi.to_vec(),
                psi: c.psi.to_vec(),
                witness: c.world,
            })
            .collect(),
    }
}

fn print_postulates(out: &mut dyn Write, report: &PostulateReport, sig: &Signature, machine: bool) -> io::Result<()> {
    if machine {
        return emit_json(out, &postulates_out(report));
    }
    for (p, v) in &report.verdicts {
        match report.counterexample(*p) {
            Some(c) => {
                write!(
                    out,
                    "{p} fail: phi = {} {:?}, psi = {} {:?}",
                    describe(&c.phi, sig),
                    c.phi.to_vec(),
                    describe(&c.psi, sig),
                    c.psi.to_vec()
                )?;
                match c.world {
                    Some(w) => writeln!(out, ", witness world {w}")?,
                    None => writeln!(out)?,
                }
            }
            None => writeln!(out, "{p} {}", v.id())?,
        }
    }
    let mode = if report.exhaustive { "all" } else { "sampled" };
    writeln!(out, "pairs checked: {} ({mode})", report.pairs_checked)?;
    writeln!(out, "verdict: {}", if report.passed() { "pass" } else { "fail" })
}

fn print_roundtrip(
    out: &mut dyn Write,
    model_text: &str,
    include_model: bool,
    report: &RoundtripReport,
    m: &PointedModel,
    machine: bool,
) -> io::Result<()> {
    let mismatches: Vec<Vec<usize>> = report.mismatches.iter().map(Event::to_vec).collect();
    if machine {
        #[derive(Serialize)]
        struct RoundtripOut {
            #[serde(skip_serializing_if = "Option::is_none")]
            model: Option<serde_json::Value>,
            verdict: &'static str,
            frame: &'static str,
            frame_violations: Vec<&'static str>,
            belief_set_matches: bool,
            mismatches: Vec<Vec<usize>>,
        }
        let model = include_model.then(|| serde_json::from_str(model_text).expect("model JSON reparses"));
        return emit_json(
            out,
            &RoundtripOut {
                model,
                verdict: if report.passed() { "pass" } else { "fail" },
                frame: if report.validation.passed() { "pass" } else { "fail" },
                frame_violations: report.validation.violations.iter().map(|v| v.clause.id()).collect(),
                belief_set_matches: report.belief_set_matches,
                mismatches,
            },
        );
    }
    if include_model {
        out.write_all(model_text.as_bytes())?;
    }
    let clauses: Vec<&str> = report.validation.violations.iter().map(|v| v.clause.id()).collect();
    if clauses.is_empty() {
        writeln!(out, "frame: pass")?;
    } else {
        writeln!(out, "frame: fail [{}]", clauses.join(", "))?;
    }
    writeln!(out, "belief set: {}", if report.belief_set_matches { "match" } else { "differs" })?;
    let total = 1usize << m.signature().world_count();
    writeln!(out, "entries: {}/{total} match", total - mismatches.len())?;
    for e in &mismatches {
        writeln!(out, "mismatch at phi {e:?}")?;
    }
    writeln!(out, "verdict: {}", if report.passed() { "pass" } else { "fail" })
}

#[derive(Serialize)]
struct FuzzLine {
    seed: u64,
    frame: &'static str,
    violations: Vec<&'static str>,
    agm: &'static str,
    failed: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize, Default)]
struct FuzzSummary {
    frames: u64,
    invalid_frames: u64,
    agm_failures: u64,
    valid_frames_failing_agm: u64,
    errors: u64,
}

fn fuzz_one(params: &FrameParams, seed: u64, max_pairs: Option<usize>) -> FuzzLine {
    let mut line =
        FuzzLine { seed, frame: "error", violations: Vec::new(), agm: "skipped", failed: Vec::new(), error: None };
    let result = (|| -> crate::Result<()> {
        let m = generate_frame(params, seed)?;
        let report = validate_frame(&m)?;
        line.frame = if report.passed() { "pass" } else { "fail" };
        line.violations = report.violations.iter().map(|v| v.clause.id()).collect();
        if m.signature().len() <= crate::agm::MAX_TABLE_ATOMS {
            let table = table_from_model(&m)?;
            let agm = check_postulates_with(&table, CheckOptions { max_pairs, seed })?;
            line.agm = if agm.passed() { "pass" } else { "fail" };
            line.failed = agm.failed().iter().map(|p| p.id()).collect();
        }
        Ok(())
    })();
    if let Err(e) = result {
        line.error = Some(e.to_string());
    }
    line
}

fn fuzz(
    out: &mut dyn Write,
    params: &FrameParams,
    seed: u64,
    count: u64,
    max_pairs: Option<usize>,
    jobs: Option<usize>,
    machine: bool,
) -> Outcome {
    if let Err(e) = crate::logic::Signature::numbered(params.n_atoms) {
        return Err(failure(1, e));
    }
    let seeds: Vec<u64> = (0..count).map(|i| seed.wrapping_add(i)).collect();
    let work = || -> Vec<FuzzLine> { seeds.par_iter().map(|&s| fuzz_one(params, s, max_pairs)).collect() };
    let lines = match jobs {
        Some(w) => {
            rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build().map_err(|e| failure(1, e))?.install(work)
        }
        None => work(),
    };
    let mut summary = FuzzSummary::default();
    for line in &lines {
        summary.frames += 1;
        summary.invalid_frames += u64::from(line.frame == "fail");
        summary.agm_failures += u64::from(line.agm == "fail");
        summary.valid_frames_failing_agm += u64::from(line.frame == "pass" && line.agm == "fail");
        summary.errors += u64::from(line.error.is_some());
        if machine {
            emit_json(out, line)?;
        } else if let Some(e) = &line.error {
            writeln!(out, "seed {}: error: {e}", line.seed)?;
        } else {
            let list = |v: &[&str]| if v.is_empty() { String::new() } else { format!(" [{}]", v.join(", ")) };
            writeln!(
                out,
                "seed {}: frame {}{}, agm {}{}",
                line.seed,
                line.frame,
                list(&line.violations),
                line.agm,
                list(&line.failed)
            )?;
        }
    }
    if machine {
        emit_json(out, &summary)?;
    } else {
        writeln!(
            out,
            "frames {}, invalid {}, agm failures {}, valid frames failing agm {}, errors {}",
            summary.frames,
            summary.invalid_frames,
            summary.agm_failures,
            summary.valid_frames_failing_agm,
            summary.errors
        )?;
    }
    Ok(if summary.valid_frames_failing_agm > 0 { 2 } else { 0 })
}
