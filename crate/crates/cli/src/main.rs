//! `lprl`: satisfiability, model checking and oracle evaluation of LPrL
//! sentences.
//!
//! Exit codes: 0 SAT/HOLDS/true, 1 UNSAT/FAILS/false, 2 usage or input
//! error, 3 exploration cap exceeded.

mod dump;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use lprl_core::mc::{Generator, DEFAULT_CAP};
use lprl_core::{
    check_mc, check_sat, eval_matrix, normalize, parse_sentence_file, Kripke, KripkeFamily, LassoWord, LprlError,
    McOptions, McVerdict, NormalSentence, SatVerdict,
};

#[derive(Parser)]
#[command(name = "lprl", version, about = "Decision procedures for the hyper logic LPrL")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Maximum number of macro states (and game nodes) explored by `mc`.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Write automaton dumps into this directory.
    #[arg(long, global = true, value_name = "DIR")]
    dump_automata: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Decide satisfiability and print a witness tuple.
    Sat { formula: PathBuf },
    /// Model check a family of Kripke structures, one per quantified variable.
    Mc {
        formula: PathBuf,
        /// Kripke JSON files in prefix order; `net.json#NAME` selects a
        /// network component.
        kripke: Vec<String>,
        /// Bind a variable to a Kripke file regardless of position.
        #[arg(long, value_name = "VAR=PATH")]
        bind: Vec<String>,
        /// Check every explored transition against the side conditions.
        #[arg(long)]
        verify: bool,
        /// Use the exhaustive successor generator (tiny inputs only).
        #[arg(long)]
        baseline: bool,
    },
    /// Evaluate the matrix on lasso literals, given in prefix order or as VAR=LASSO.
    Eval { formula: PathBuf, lassos: Vec<String> },
    /// Print the normal form, the cycle-free report and the automata.
    Dump { formula: PathBuf },
}

/// Result of a command: a verdict line, details and the machine summary.
struct Report {
    exit: u8,
    human: String,
    machine: Map<String, Value>,
}

fn load_sentence(path: &Path) -> anyhow::Result<NormalSentence> {
    let raw = parse_sentence_file(path).with_context(|| format!("reading {}", path.display()))?;
    normalize(&raw).with_context(|| format!("normalizing {}", path.display()))
}

/// Assigns one item to each prefix variable: `--bind`-style `VAR=value`
/// entries first, then the positional ones in order.
fn assign(s: &NormalSentence, positional: &[String], named: &[(String, String)]) -> anyhow::Result<Vec<String>> {
    let names = s.prefix.names();
    let mut slots: Vec<Option<String>> = vec![None; names.len()];
    for (var, value) in named {
        let i = names.iter().position(|n| n == var).ok_or_else(|| anyhow!("unknown variable `{var}`"))?;
        if slots[i].replace(value.clone()).is_some() {
            bail!("variable `{var}` bound twice");
        }
    }
    let mut rest = positional.iter();
    for slot in slots.iter_mut().filter(|s| s.is_none()) {
        *slot = rest.next().cloned();
    }
    let given = named.len() + positional.len();
    if rest.next().is_some() || slots.iter().any(Option::is_none) {
        return Err(LprlError::Arity { expected: names.len(), got: given }.into());
    }
    Ok(slots.into_iter().map(Option::unwrap).collect())
}

fn split_binding(text: &str) -> anyhow::Result<(String, String)> {
    let (var, value) = text.split_once('=').ok_or_else(|| anyhow!("expected VAR=VALUE, got `{text}`"))?;
    Ok((var.trim().to_string(), value.trim().to_string()))
}

fn run_sat(cli: &Cli, path: &Path) -> anyhow::Result<Report> {
    let s = load_sentence(path)?;
    if let Some(dir) = &cli.dump_automata {
        dump::write_all(dir, &s)?;
    }
    let res = check_sat(&s)?;
    let sat = res.verdict == SatVerdict::Sat;
    let mut human = String::from(if sat { "SAT" } else { "UNSAT" });
    let mut witness = Map::new();
    if let Some(w) = &res.witness {
        for (name, word) in s.prefix.names().iter().zip(w) {
            let lit = word.display(&s.alphabet);
            human.push_str(&format!("\n  {name} = {lit}"));
            witness.insert(name.clone(), Value::String(lit));
        }
    }
    human.push_str(&format!(
        "\nautomaton: {} states, {} transitions; clause automata: {:?}; {} ms",
        res.stats.hba_states, res.stats.hba_transitions, res.stats.clause_states, res.stats.elapsed_ms
    ));
    let mut machine = Map::new();
    machine.insert("verdict".into(), json!(if sat { "SAT" } else { "UNSAT" }));
    machine.insert("witness".into(), if sat { Value::Object(witness) } else { Value::Null });
    machine.insert(
        "stats".into(),
        json!({
            "clause_states": res.stats.clause_states,
            "hba_states": res.stats.hba_states,
            "hba_transitions": res.stats.hba_transitions,
        }),
    );
    Ok(Report { exit: if sat { 0 } else { 1 }, human, machine })
}

fn run_mc(cli: &Cli, path: &Path, kripke: &[String], bind: &[String], verify: bool, baseline: bool) -> anyhow::Result<Report> {
    let s = load_sentence(path)?;
    let named = bind.iter().map(|b| split_binding(b)).collect::<anyhow::Result<Vec<_>>>()?;
    let files = assign(&s, kripke, &named)?;
    let members = files
        .iter()
        .map(|f| Kripke::load_spec(f, &s.alphabet).with_context(|| format!("loading {f}")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    if let Some(dir) = &cli.dump_automata {
        dump::write_all(dir, &s)?;
    }
    let generator = if baseline { Generator::Baseline { limit: cli.cap } } else { Generator::Reduced };
    let res = check_mc(&KripkeFamily::new(members), &s, &McOptions { cap: cli.cap, generator, verify })?;
    let holds = res.verdict == McVerdict::Holds;
    let st = &res.stats;
    let human = format!(
        "{}\nautomaton: {} states; micro states: {}; game nodes: {}; macro states: {}, transitions: {}; {} ms",
        if holds { "HOLDS" } else { "FAILS" },
        st.hba_states,
        st.micro_states,
        st.game_nodes,
        st.macro_states,
        st.macro_transitions,
        st.elapsed_ms
    );
    let mut machine = Map::new();
    machine.insert("verdict".into(), json!(if holds { "HOLDS" } else { "FAILS" }));
    machine.insert(
        "stats".into(),
        json!({
            "hba_states": st.hba_states,
            "micro_states": st.micro_states,
            "game_nodes": st.game_nodes,
            "macro_states": st.macro_states,
            "macro_transitions": st.macro_transitions,
        }),
    );
    Ok(Report { exit: if holds { 0 } else { 1 }, human, machine })
}

fn run_eval(path: &Path, lassos: &[String]) -> anyhow::Result<Report> {
    let s = load_sentence(path)?;
    let (named, positional): (Vec<&String>, Vec<&String>) = lassos.iter().partition(|l| l.contains('='));
    let named = named.into_iter().map(|b| split_binding(b)).collect::<anyhow::Result<Vec<_>>>()?;
    let positional: Vec<String> = positional.into_iter().cloned().collect();
    let words = assign(&s, &positional, &named)?
        .iter()
        .map(|l| LassoWord::parse(l, &s.alphabet).with_context(|| format!("lasso `{l}`")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let value = eval_matrix(&s.matrix, &words)?;
    let mut machine = Map::new();
    machine.insert("value".into(), json!(value));
    Ok(Report { exit: if value { 0 } else { 1 }, human: if value { "TRUE" } else { "FALSE" }.into(), machine })
}

fn run_dump(cli: &Cli, path: &Path) -> anyhow::Result<Report> {
    let s = load_sentence(path)?;
    let text = dump::render(&s)?;
    if let Some(dir) = &cli.dump_automata {
        dump::write_all(dir, &s)?;
    }
    let report = lprl_core::check_cycle_free(&s);
    let mut machine = Map::new();
    machine.insert("normal_form".into(), json!(s.display()));
    machine.insert("cycle_free".into(), json!(report.ok));
    machine.insert("violations".into(), json!(report.violations));
    Ok(Report { exit: 0, human: text, machine })
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<LprlError>() {
        Some(LprlError::CapExceeded(_)) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, result) = match &cli.command {
        Command::Sat { formula } => ("sat", run_sat(&cli, formula)),
        Command::Mc { formula, kripke, bind, verify, baseline } => {
            ("mc", run_mc(&cli, formula, kripke, bind, *verify, *baseline))
        }
        Command::Eval { formula, lassos } => ("eval", run_eval(formula, lassos)),
        Command::Dump { formula } => ("dump", run_dump(&cli, formula)),
    };
    let (code, human, mut machine) = match result {
        Ok(r) => (r.exit, r.human, r.machine),
        Err(e) => {
            let code = exit_code(&e);
            let msg = format!("{e:#}");
            let mut m = Map::new();
            m.insert("error".into(), json!(msg));
            (code, format!("error: {msg}"), m)
        }
    };
    match cli.format {
        Format::Human if code >= 2 => eprintln!("{human}"),
        Format::Human => println!("{human}"),
        Format::Machine => {
            machine.insert("command".into(), json!(name));
            machine.insert("exit_code".into(), json!(code));
            println!("{}", Value::Object(machine));
        }
    }
    ExitCode::from(code)
}
