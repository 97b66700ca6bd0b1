use std::collections::BTreeSet;

use gecsynth_core::candidates::{
    deasciify_candidates, edits1, resolve, spell_candidates, CandidateConfig, Generator, Resolution,
};
use gecsynth_core::morphology::{AnalyzabilityOracle, Analyzer};
use gecsynth_testkit::{brute_deasciify, brute_edits1, damerau, fuzz, partner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Everything;
impl Analyzer for Everything {
    fn is_analyzable(&self, word: &str) -> bool {
        !word.is_empty()
    }
}

#[test]
fn every_edit_of_abc_is_one_step_away() {
    let cfg = CandidateConfig::default();
    let raw = edits1("abc", &cfg.alphabet);
    assert!(!raw.is_empty());
    for c in raw.iter().filter(|c| c.as_str() != "abc") {
        assert_eq!(damerau("abc", c), 1, "{c}");
    }
}

#[test]
fn edits_match_slicing_reference() {
    let cfg = CandidateConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let w = fuzz::word(&mut rng, 0, 6);
        let mut ours: BTreeSet<String> = edits1(&w, &cfg.alphabet);
        ours.remove(&w);
        assert_eq!(ours, brute_edits1(&w, &cfg.alphabet), "{w}");
    }
}

#[test]
fn fuzzed_spell_candidates_are_distance_one() {
    let cfg = CandidateConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..10_000 {
        let w = fuzz::word(&mut rng, 1, 7);
        let mut lexicon: Vec<String> =
            brute_edits1(&w, &cfg.alphabet).into_iter().filter(|_| rng.gen_bool(0.01)).collect();
        lexicon.extend((0..3).map(|_| fuzz::word(&mut rng, 1, 7)));
        let oracle = AnalyzabilityOracle::new(lexicon, vec![]);
        let set = spell_candidates(&w, &oracle, &cfg);
        assert_eq!(set.generator, Generator::SpellChecker);
        for c in &set.candidates {
            assert_eq!(damerau(&w, c), 1, "{w} -> {c}");
            assert!(oracle.is_analyzable(c));
        }
    }
}

#[test]
fn deasciify_changes_only_ambiguous_positions() {
    let cfg = CandidateConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..2000 {
        let w = fuzz::word(&mut rng, 1, 9);
        let set = deasciify_candidates(&w, &Everything, &cfg).unwrap();
        let want = brute_deasciify(&w, cfg.deasciify_cap).unwrap();
        assert_eq!(set.candidates.iter().cloned().collect::<BTreeSet<_>>(), want, "{w}");
        for c in &set.candidates {
            assert_eq!(c.chars().count(), w.chars().count());
            for (a, b) in w.chars().zip(c.chars()) {
                assert!(a == b || partner(a) == Some(b), "{w} -> {c}");
            }
        }
    }
}

#[test]
fn cap_is_enforced() {
    let cfg = CandidateConfig::default();
    let w = "c".repeat(cfg.deasciify_cap + 1);
    assert!(deasciify_candidates(&w, &Everything, &cfg).is_err());
    assert!(matches!(resolve(&format!("{w}x"), &AnalyzabilityOracle::new(["x"], vec![]), &cfg), Resolution::CapExceeded(_)));
    assert!(deasciify_candidates(&w[1..], &Everything, &cfg).is_ok());
}

#[test]
fn documented_corrections() {
    let cfg = CandidateConfig::default();
    // "orijinal" takes front suffixes despite its back vowel; the lexicon lists the exception.
    let oracle = AnalyzabilityOracle::with_default_rules(["yüz", "problem", "orijinal", "orijinalin", "ve"]);
    let unique = |w: &str| match resolve(w, &oracle, &cfg) {
        Resolution::Unique { correct, generator } => (correct, generator),
        other => panic!("{w}: {other:?}"),
    };
    assert_eq!(unique("yuzune"), ("yüzüne".into(), Generator::Deasciifier));
    assert_eq!(unique("broblem"), ("problem".into(), Generator::SpellChecker));
    assert_eq!(unique("orjinalinde"), ("orijinalinde".into(), Generator::SpellChecker));
}
