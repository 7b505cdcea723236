//! Shared inputs for the benchmarks: corpus sentences and model-checking
//! families, loaded relative to the workspace root.

use std::path::PathBuf;

use lprl_core::{normalize, parse_sentence_file, Kripke, KripkeFamily, NormalSentence, Result};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn sentence(rel: &str) -> Result<NormalSentence> {
    normalize(&parse_sentence_file(corpus_dir().join(rel))?)
}

/// A sentence from `corpus/mc` with its family, members given as in the
/// CLI (`file.json` or `network.json#NAME`).
pub fn mc_case(sentence_file: &str, members: &[&str]) -> Result<(NormalSentence, KripkeFamily)> {
    let s = sentence(&format!("mc/{sentence_file}"))?;
    let dir = corpus_dir().join("mc");
    let members = members
        .iter()
        .map(|m| Kripke::load_spec(&dir.join(m).to_string_lossy(), &s.alphabet))
        .collect::<Result<Vec<_>>>()?;
    Ok((s, KripkeFamily::new(members)))
}

#[cfg(test)]
mod tests {
    #[test]
    fn inputs_load() {
        assert!(super::sentence("sat/gni3.lprl").is_ok());
        assert!(super::mc_case("con_b_to_a.lprl", &["network.json#B", "network.json#A"]).is_ok());
    }
}
