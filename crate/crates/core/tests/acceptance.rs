//! Acceptance suite. Prints one line per criterion and exits non-zero if
//! any criterion fails. `LPRL_SEED` overrides the random seed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::Rng;
use serde::Deserialize;

use lprl_core::formula::{Alphabet, AtomicFormula, LetterSet, Quantifier};
use lprl_core::hba::{eq_hba, hba_accepts_tuple, hba_intersection, hba_union, neq_hba};
use lprl_core::random::*;
use lprl_core::sat::{build_sentence_hba_with_sizes, clause_hba};
use lprl_core::{
    ba_accepts_lasso, check_cycle_free, check_mc, check_sat, deterministic_family_fastpath, eval_ltl_lasso,
    eval_matrix, eval_sentence_finite, ltl_to_ba, normalize, parse_sentence_file, project_lasso, words_equal,
    Kripke, KripkeFamily, LassoWord, LprlError, McOptions, McVerdict, NormalSentence, SatVerdict,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn load(path: &Path) -> Result<NormalSentence, String> {
    let raw = parse_sentence_file(path).map_err(|e| format!("{}: {e}", path.display()))?;
    normalize(&raw).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_manifest<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ltl_vs_oracle(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let start = Instant::now();
    let alphabets = [Alphabet::new(&["p"]).unwrap(), Alphabet::new(&["p", "q"]).unwrap()];
    for case in 0..1000 {
        let a = &alphabets[r.gen_range(0..2)];
        let phi = random_ltl(&mut r, a, 8);
        let w = random_lasso(&mut r, a, 3, 3);
        let got = ba_accepts_lasso(&ltl_to_ba(&phi, a), &w);
        ensure(got == eval_ltl_lasso(&phi, &w), || {
            format!("pair {case}: {} on {} gives {got}", phi.display(a), w.display(a))
        })?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("1000/1000 pairs agree in {:.2}s", t.as_secs_f64()))
}

fn equality_automata(seed: u64) -> Outcome {
    let a = Alphabet::new(&["p", "q"]).unwrap();
    let mut r = rng(seed);
    let mut equal = 0;
    for case in 0..500 {
        let set = random_nonempty_letter_set(&mut r, &a);
        let (u, v) = if r.gen_bool(0.5) {
            random_related_pair(&mut r, &a, set, 3, 3)
        } else {
            (random_lasso(&mut r, &a, 3, 3), random_lasso(&mut r, &a, 3, 3))
        };
        let expect = words_equal(&project_lasso(&u, set).unwrap(), &project_lasso(&v, set).unwrap());
        equal += expect as usize;
        let tuple = [u.clone(), v.clone()];
        let eq = hba_accepts_tuple(&eq_hba(0, 1, set, 2, &a).unwrap(), &tuple).unwrap();
        let neq = hba_accepts_tuple(&neq_hba(0, 1, set, 2, &a).unwrap(), &tuple).unwrap();
        ensure(eq == expect && neq != expect, || {
            format!("pair {case}: {} vs {} on {}: eq={eq} neq={neq}", u.display(&a), v.display(&a), a.format_set(set))
        })?;
    }

    // (aa)(bb)a'^ω against (bb)(aa)b'^ω, projected onto {a}.
    let s = Alphabet::new(&["a", "b", "a1", "b1"]).unwrap();
    let l = |p: &str| s.letter(&[p]).unwrap();
    let u = LassoWord::new(vec![l("a"), l("a"), l("b"), l("b")], vec![l("a1")]).unwrap();
    let v = LassoWord::new(vec![l("b"), l("b"), l("a"), l("a")], vec![l("b1")]).unwrap();
    let keep = LetterSet::singleton(l("a"));
    let worked = hba_accepts_tuple(&eq_hba(0, 1, keep, 2, &s).unwrap(), &[u, v]).unwrap();
    ensure(worked, || "worked example rejected by the equality automaton".into())?;
    Ok(format!("500/500 pairs agree ({equal} equal projections); worked example accepted"))
}

fn boolean_algebra(seed: u64) -> Outcome {
    let a = Alphabet::new(&["p", "q"]).unwrap();
    let mut r = rng(seed);
    for case in 0..500 {
        let width = r.gen_range(1..=3);
        // Both halves of one cycle-free clause, so their conjunction stays cycle-free.
        let mut c1 = random_clause(&mut r, &a, width, 4, 4);
        let c2 = if c1.len() > 1 { c1.split_off(c1.len() / 2) } else { vec![AtomicFormula::True] };
        let b1 = clause_hba(&c1, width, &a).unwrap();
        let b2 = clause_hba(&c2, width, &a).unwrap();
        let uni = hba_union(&b1, &b2).unwrap();
        let int = hba_intersection(&[b1, b2]).unwrap();
        let t = random_tuple(&mut r, &a, width, 3, 3);
        let e1 = eval_matrix(std::slice::from_ref(&c1), &t).unwrap();
        let e2 = eval_matrix(std::slice::from_ref(&c2), &t).unwrap();
        let (gu, gi) = (hba_accepts_tuple(&uni, &t).unwrap(), hba_accepts_tuple(&int, &t).unwrap());
        ensure(gu == (e1 || e2) && gi == (e1 && e2), || {
            format!("tuple {case}: union {gu} vs {}, intersection {gi} vs {}", e1 || e2, e1 && e2)
        })?;
    }
    for case in 0..20 {
        let phi = random_ltl(&mut r, &a, 6);
        let clause = vec![
            AtomicFormula::Unary { slot: 0, phi: phi.clone() },
            AtomicFormula::Unary { slot: 0, phi: phi.clone().not() },
        ];
        let s = NormalSentence {
            alphabet: a.clone(),
            prefix: lprl_core::QuantifierPrefix { vars: vec![("x1".into(), Quantifier::Exists)] },
            matrix: vec![clause],
        };
        let res = check_sat(&s).map_err(|e| e.to_string())?;
        ensure(res.verdict == SatVerdict::Unsat, || format!("contradiction {case} on {} is non-empty", phi.display(&a)))?;
    }
    Ok("500/500 tuples satisfy the union and intersection laws; 20/20 contradictions empty".into())
}

#[derive(Deserialize)]
struct SatCase {
    file: String,
    expected: String,
    kind: String,
}

fn sat_corpus() -> Result<Vec<(SatCase, NormalSentence)>, String> {
    let dir = corpus().join("sat");
    let cases: Vec<SatCase> = read_manifest(&dir.join("manifest.json"))?;
    cases
        .into_iter()
        .map(|c| {
            let s = load(&dir.join(&c.file))?;
            Ok((c, s))
        })
        .collect()
}

fn sat_round_trip(seed: u64) -> Outcome {
    let corpus = sat_corpus()?;
    let mut r = rng(seed);
    let count = |k: &str| corpus.iter().filter(|(c, _)| c.kind == k).count();
    ensure(corpus.len() >= 20, || format!("only {} sentences", corpus.len()))?;
    for k in ["OD", "NI", "GNI", "CON"] {
        ensure(count(k) > 0, || format!("no {k} sentence"))?;
    }
    ensure(count("analytic") >= 5, || "fewer than 5 analytic UNSAT sentences".into())?;
    let mut slowest = Duration::ZERO;
    for (c, s) in &corpus {
        let start = Instant::now();
        let res = check_sat(s).map_err(|e| format!("{}: {e}", c.file))?;
        let expected = if c.expected == "sat" { SatVerdict::Sat } else { SatVerdict::Unsat };
        ensure(res.verdict == expected, || format!("{}: got {:?}", c.file, res.verdict))?;
        match res.verdict {
            SatVerdict::Sat => {
                let w = res.witness.ok_or_else(|| format!("{}: no witness", c.file))?;
                let models: Vec<Vec<LassoWord>> = w.iter().map(|x| vec![x.clone()]).collect();
                ensure(eval_matrix(&s.matrix, &w).unwrap(), || format!("{}: witness violates the matrix", c.file))?;
                ensure(eval_sentence_finite(s, &models).unwrap(), || format!("{}: singleton models fail", c.file))?;
            }
            SatVerdict::Unsat => {
                for _ in 0..200 {
                    let t = random_tuple(&mut r, &s.alphabet, s.width(), 3, 3);
                    ensure(!eval_matrix(&s.matrix, &t).unwrap(), || {
                        let shown: Vec<String> = t.iter().map(|w| w.display(&s.alphabet)).collect();
                        format!("{}: tuple {shown:?} satisfies the matrix", c.file)
                    })?;
                }
            }
        }
        let t = start.elapsed();
        ensure(t < Duration::from_secs(10), || format!("{}: took {t:?}", c.file))?;
        slowest = slowest.max(t);
    }
    Ok(format!(
        "{} sentences ({} unsat), witnesses and 200-tuple checks pass, slowest {:.2}s",
        corpus.len(),
        corpus.iter().filter(|(c, _)| c.expected == "unsat").count(),
        slowest.as_secs_f64()
    ))
}

fn quantifier_flips() -> Outcome {
    let corpus = sat_corpus()?;
    let mut flips = 0;
    for (c, s) in &corpus {
        let base = check_sat(s).map_err(|e| e.to_string())?.verdict;
        for i in 0..s.width() {
            let v = check_sat(&s.with_flipped_quantifier(i)).map_err(|e| e.to_string())?.verdict;
            ensure(v == base, || format!("{}: flipping quantifier {i} changes {base:?} to {v:?}", c.file))?;
            flips += 1;
        }
    }
    Ok(format!("{flips} single flips over {} sentences leave the verdict unchanged", corpus.len()))
}

fn random_sentence(r: &mut TestRng, a: &Alphabet, width: usize) -> NormalSentence {
    let vars = (0..width)
        .map(|i| (format!("x{i}"), if r.gen_bool(0.5) { Quantifier::Exists } else { Quantifier::Forall }))
        .collect();
    NormalSentence {
        alphabet: a.clone(),
        prefix: lprl_core::QuantifierPrefix { vars },
        matrix: random_matrix(r, a, width, 2, 3, 3),
    }
}

fn deterministic_families(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let alphabets = [Alphabet::new(&["p"]).unwrap(), Alphabet::new(&["p", "q"]).unwrap()];
    let start = Instant::now();
    let mut holds = 0;
    for case in 0..100 {
        let a = &alphabets[r.gen_range(0..2)];
        let width = r.gen_range(1..=3);
        let fam = KripkeFamily::new((0..width).map(|_| random_deterministic_kripke(&mut r, a, 4)).collect());
        let s = random_sentence(&mut r, a, width);
        let fast = deterministic_family_fastpath(&fam, &s).map_err(|e| e.to_string())?.verdict;
        let full = check_mc(&fam, &s, &McOptions::default()).map_err(|e| format!("case {case}: {e}"))?.verdict;
        ensure(full == fast, || format!("case {case}: check_mc {full:?}, fast path {fast:?} on {}", s.display()))?;
        holds += (full == McVerdict::Holds) as usize;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), || format!("took {t:?}"))?;
    Ok(format!("100/100 families agree ({holds} holds) in {:.2}s", t.as_secs_f64()))
}

#[derive(Deserialize)]
struct McCase {
    name: String,
    sentence: String,
    family: Vec<String>,
    expected: String,
}

fn curated_mc() -> Outcome {
    let dir = corpus().join("mc");
    let cases: Vec<McCase> = read_manifest(&dir.join("manifest.json"))?;
    ensure(cases.len() >= 5, || format!("only {} cases", cases.len()))?;
    let mut lines = Vec::new();
    for c in &cases {
        let s = load(&dir.join(&c.sentence))?;
        let members = c
            .family
            .iter()
            .map(|m| Kripke::load_spec(&dir.join(m).to_string_lossy(), &s.alphabet))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| format!("{}: {e}", c.name))?;
        let start = Instant::now();
        let res = check_mc(&KripkeFamily::new(members), &s, &McOptions::default()).map_err(|e| format!("{}: {e}", c.name))?;
        let t = start.elapsed();
        let expected = if c.expected == "holds" { McVerdict::Holds } else { McVerdict::Fails };
        ensure(res.verdict == expected, || format!("{}: got {:?}, documented {:?}", c.name, res.verdict, expected))?;
        ensure(t < Duration::from_secs(60), || format!("{}: took {t:?}", c.name))?;
        lines.push(format!("{} {:?}", c.name, res.verdict));
    }
    Ok(format!("{} cases match: {}", cases.len(), lines.join(", ")))
}

#[derive(Deserialize)]
struct CyclicCase {
    file: String,
    expected: String,
}

fn cycle_free_gate() -> Outcome {
    let dir = corpus().join("cyclic");
    let cases: Vec<CyclicCase> = read_manifest(&dir.join("manifest.json"))?;
    for c in &cases {
        let s = load(&dir.join(&c.file))?;
        let report = check_cycle_free(&s);
        let text = report.to_string();
        ensure(!report.ok && text.contains(&c.expected), || format!("{}: diagnostic `{text}`", c.file))?;
        ensure(matches!(check_sat(&s), Err(LprlError::NotCycleFree(_))), || format!("{}: check_sat accepted it", c.file))?;
    }
    let policies = sat_corpus()?;
    for (c, s) in &policies {
        let report = check_cycle_free(s);
        ensure(report.ok, || format!("{}: {report}", c.file))?;
    }
    Ok(format!("{} cyclic sentences rejected with the expected diagnostic; {} corpus sentences pass", cases.len(), policies.len()))
}

fn structural_bounds(seed: u64) -> Outcome {
    let a = Alphabet::new(&["p", "q"]).unwrap();
    let mut r = rng(seed);
    for case in 0..200 {
        let width = r.gen_range(1..=3);
        let k = r.gen_range(2..=3);
        let parts: Vec<_> = (0..k).map(|_| clause_hba(&random_clause(&mut r, &a, width, 2, 3), width, &a).unwrap()).collect();
        let uni = hba_union(&parts[0], &parts[1]).unwrap();
        let bound = parts[0].num_states() + parts[1].num_states() + 1;
        ensure(uni.num_states() <= bound, || format!("case {case}: union {} > {bound}", uni.num_states()))?;
        let int = hba_intersection(&parts).unwrap();
        let bound = (1usize << k) * parts.iter().map(|b| b.num_states()).product::<usize>();
        ensure(int.num_states() <= bound, || format!("case {case}: intersection {} > {bound}", int.num_states()))?;
    }
    let mut sizes = Vec::new();
    for (c, s) in sat_corpus()? {
        let (b, _) = build_sentence_hba_with_sizes(&s).map_err(|e| e.to_string())?;
        sizes.push(format!("{}={}", c.file.trim_end_matches(".lprl"), b.num_states()));
    }
    Ok(format!("200 union/intersection bounds hold; |B(psi)|: {}", sizes.join(" ")))
}

fn main() {
    let seed = seed_from_env(20240611);
    let criteria: Vec<Criterion> = vec![
        ("ltl2ba vs oracle", Box::new(move || ltl_vs_oracle(seed))),
        ("equality automata", Box::new(move || equality_automata(seed + 1))),
        ("boolean algebra", Box::new(move || boolean_algebra(seed + 2))),
        ("sat round-trip", Box::new(move || sat_round_trip(seed + 3))),
        ("quantifier flips", Box::new(quantifier_flips)),
        ("deterministic families", Box::new(move || deterministic_families(seed + 5))),
        ("curated model checking", Box::new(curated_mc)),
        ("cycle-free gate", Box::new(cycle_free_gate)),
        ("structural bounds", Box::new(move || structural_bounds(seed + 8))),
    ];
    println!("acceptance suite, seed {seed}");
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {} [{name}]: PASS: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL: {why}", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
