use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::Context;

use lprl_core::sat::{build_sentence_hba, clause_hba};
use lprl_core::{check_cycle_free, ltl_to_ba, AtomicFormula, NormalSentence};

/// Every automaton worth dumping, as `(file name, contents)`.
fn automata(s: &NormalSentence) -> anyhow::Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (j, clause) in s.matrix.iter().enumerate() {
        for (k, atom) in clause.iter().enumerate() {
            if let AtomicFormula::Unary { phi, .. } = atom {
                out.push((format!("clause{j}_atom{k}.ba.txt"), ltl_to_ba(phi, &s.alphabet).dump()));
            }
        }
        out.push((format!("clause{j}.hba.txt"), clause_hba(clause, s.width(), &s.alphabet)?.dump()));
    }
    out.push(("sentence.hba.txt".into(), build_sentence_hba(s)?.dump()));
    Ok(out)
}

pub fn write_all(dir: &Path, s: &NormalSentence) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let report = check_cycle_free(s);
    if !report.ok {
        return Err(lprl_core::LprlError::NotCycleFree(report).into());
    }
    for (name, text) in automata(s)? {
        let path = dir.join(name);
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

pub fn render(s: &NormalSentence) -> anyhow::Result<String> {
    let mut out = String::new();
    writeln!(out, "normal form: {}", s.display())?;
    let report = check_cycle_free(s);
    writeln!(out, "{report}")?;
    if report.ok {
        for (name, text) in automata(s)? {
            writeln!(out, "\n== {name}\n{}", text.trim_end())?;
        }
    }
    Ok(out)
}
