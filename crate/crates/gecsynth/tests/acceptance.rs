//! Acceptance checks for the whole toolkit. Runs without the libtest
//! harness and prints one PASS or FAIL line per criterion.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicUsize};
use std::time::{Duration, Instant};

use common::{cli, fixture, http, job, p, CancelAfter};
use gecsynth::annotate::stub::{StubReply, StubServer};
use gecsynth::annotate::{annotate_batch, export_pairs, read_journal, Status};
use gecsynth::formats;
use gecsynth::m2::{format_m2, parse_m2};
use gecsynth_core::candidates::{deasciify_candidates, resolve, spell_candidates, CandidateConfig, Generator, Resolution};
use gecsynth_core::corpus::{corpus_from_texts, WordIndex};
use gecsynth_core::expansion::expand_to_fixpoint;
use gecsynth_core::gecscore::{annotate_pair, postprocess_tweets, score, strip_punctuation};
use gecsynth_core::inserter::{apply_edits, clean_insert};
use gecsynth_core::lexicon::{Provenance, SpellingDictionary, SpellingEntry};
use gecsynth_core::morphology::{AnalyzabilityOracle, Analyzer, DEFAULT_MAX_DEPTH, DEFAULT_SUFFIX_RULES};
use gecsynth_core::text::tokenize_words;
use gecsynth_core::{ExpansionContext, ScoreMode};
use gecsynth_testkit::{damerau, fuzz, partner, reference_fixpoint, single_pass_substitute, BruteMorphology, RefRow};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regex::Regex;

type Criterion = (u32, &'static str, fn() -> String);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "toy expansion reaches its fixpoint", c1_toy_fixpoint),
        (2, "expansion is monotone and converges", c2_monotone),
        (3, "candidate generators", c3_candidates),
        (4, "clean insertion", c4_insertion),
        (5, "scorer", c5_scorer),
        (6, "M2 round trip", c6_m2_round_trip),
        (7, "tweet post-processing", c7_tweets),
        (8, "annotation client", c8_annotation),
        (9, "end-to-end pipeline", c9_end_to_end),
    ];
    let mut failed = 0;
    for (n, name, check) in criteria {
        let start = Instant::now();
        match catch_unwind(AssertUnwindSafe(check)) {
            Ok(detail) => println!("PASS criterion {n}: {name}: {detail} [{:.2?}]", start.elapsed()),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL criterion {n}: {name}: {msg}");
                failed += 1;
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 9 criteria failed");
        std::process::exit(1);
    }
}

fn rows(run: &gecsynth_core::ExpansionRun) -> Vec<RefRow> {
    run.reports
        .iter()
        .map(|r| RefRow {
            iteration: r.iteration,
            dict_size: r.dict_size,
            extracted_texts: r.extracted_texts,
            distinct_words: r.distinct_words,
            dict_delta: r.dict_delta,
        })
        .collect()
}

fn pairs_of(dict: &SpellingDictionary) -> Vec<(String, String)> {
    dict.entries().map(|e| (e.key(), e.correct_phrase())).collect()
}

fn c1_toy_fixpoint() -> String {
    let docs = formats::read_corpus(&fixture("toy/corpus.txt")).unwrap();
    let seed = formats::load_dictionary(&fixture("toy/seed.tsv")).unwrap().dictionary;
    let lexicon = formats::load_lexicon(&fixture("toy/lexicon.txt")).unwrap();
    let oracle = AnalyzabilityOracle::with_default_rules(lexicon.iter().cloned());
    let cfg = CandidateConfig::default();

    let start = Instant::now();
    let pool = gecsynth::pipeline::thread_pool(2).unwrap();
    let index = gecsynth::pipeline::build_index(&docs, &pool);
    let ctx = ExpansionContext { index: &index, corpus: &docs, oracle: &oracle, config: &cfg };
    let run = gecsynth::pipeline::expand(&seed, ctx, 10, &pool).unwrap();
    let elapsed = start.elapsed();

    assert!(run.converged, "no fixpoint within 10 iterations");
    assert!(run.reports.len() <= 10);
    assert_eq!(run.reports.last().unwrap().dict_delta, 0);
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");

    let texts: Vec<String> = docs.iter().map(|d| d.text.clone()).collect();
    let brute = BruteMorphology::from_table(lexicon, DEFAULT_SUFFIX_RULES, DEFAULT_MAX_DEPTH);
    let (want_rows, want_dict) = reference_fixpoint(&texts, &pairs_of(&seed), &brute, &cfg.alphabet, cfg.deasciify_cap, 10);
    assert_eq!(rows(&run), want_rows);
    assert_eq!(pairs_of(&run.final_dictionary).into_iter().collect::<BTreeMap<_, _>>(), want_dict);

    // regression guard on the bundled fixture
    let frozen: Vec<(usize, usize, usize, usize, usize)> =
        run.reports.iter().map(|r| (r.iteration, r.dict_size, r.extracted_texts, r.distinct_words, r.dict_delta)).collect();
    assert_eq!(frozen, [(1, 30, 50, 12, 10), (2, 40, 8, 8, 8), (3, 48, 13, 5, 5), (4, 53, 5, 4, 0)]);

    // same result through the command line
    let dir = tempfile::tempdir().unwrap();
    let r = cli(&["--config", &p(&fixture("toy/config.toml")), "expand", "--out-dir", &p(dir.path())]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report = formats::parse_report(&formats::read_text(&dir.path().join("report.tsv")).unwrap(), Path::new("report.tsv")).unwrap();
    assert_eq!(report, run.reports);

    format!("{} iterations, {} -> {} entries in {elapsed:.2?}", run.reports.len(), seed.len(), run.final_dictionary.len())
}

fn corrupt(rng: &mut ChaCha8Rng, w: &str) -> String {
    let mut v: Vec<char> = w.chars().collect();
    let ambiguous: Vec<usize> = (0..v.len()).filter(|&i| partner(v[i]).is_some()).collect();
    if !ambiguous.is_empty() && rng.gen_bool(0.6) {
        let i = *ambiguous.choose(rng).unwrap();
        v[i] = partner(v[i]).unwrap();
    } else {
        let i = rng.gen_range(0..v.len());
        v[i] = *fuzz::LETTERS.choose(rng).unwrap();
    }
    v.into_iter().collect()
}

fn c2_monotone() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cfg = CandidateConfig::default();
    let mut corpora = 0;
    let mut longest = 0;
    while corpora < 200 {
        let lexicon = fuzz::vocabulary(&mut rng, 60);
        let n_docs = rng.gen_range(5..120);
        let texts: Vec<String> = (0..n_docs)
            .map(|_| {
                (0..rng.gen_range(1..8))
                    .map(|_| {
                        let w = lexicon.choose(&mut rng).unwrap().clone();
                        if rng.gen_bool(0.3) {
                            corrupt(&mut rng, &w)
                        } else {
                            w
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        let mut seed = SpellingDictionary::new();
        for _ in 0..rng.gen_range(1..5) {
            let w = lexicon.choose(&mut rng).unwrap().clone();
            let bad = corrupt(&mut rng, &w);
            if bad != w {
                let _ = seed.insert(SpellingEntry::from_phrases(&bad, &w, Provenance::Manual, 0).unwrap());
            }
        }
        if seed.is_empty() {
            continue;
        }
        corpora += 1;
        let docs = corpus_from_texts(&texts);
        let index = WordIndex::build(&docs);
        let oracle = AnalyzabilityOracle::with_default_rules(lexicon.iter().cloned());
        let ctx = ExpansionContext { index: &index, corpus: &docs, oracle: &oracle, config: &cfg };
        let run = expand_to_fixpoint(&seed, ctx, 50).unwrap();
        assert!(run.converged, "corpus {corpora} did not converge within 50 iterations");
        let mut sizes: Vec<usize> = run.reports.iter().map(|r| r.dict_size).collect();
        sizes.push(run.final_dictionary.len());
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "sizes {sizes:?}");
        for (r, next) in run.reports.iter().zip(&sizes[1..]) {
            assert_eq!(r.dict_size + r.dict_delta, *next);
        }
        assert_eq!(sizes[0], seed.len());
        let seed_keys: BTreeSet<String> = seed.entries().map(|e| e.key()).collect();
        assert!(seed_keys.iter().all(|k| run.final_dictionary.contains_key(k)));
        longest = longest.max(run.reports.len());
    }
    format!("200 corpora converged, longest run {longest} iterations")
}

struct Everything;
impl Analyzer for Everything {
    fn is_analyzable(&self, word: &str) -> bool {
        !word.is_empty()
    }
}

fn c3_candidates() -> String {
    let cfg = CandidateConfig::default();
    let lexicon = formats::load_lexicon(&fixture("toy/lexicon.txt")).unwrap();
    let oracle = AnalyzabilityOracle::with_default_rules(lexicon);
    for (word, want, generator) in [
        ("yuzune", "yüzüne", Generator::Deasciifier),
        ("broblem", "problem", Generator::SpellChecker),
        ("orjinalinde", "orijinalinde", Generator::SpellChecker),
    ] {
        match resolve(word, &oracle, &cfg) {
            Resolution::Unique { correct, generator: g } => {
                assert_eq!((correct.as_str(), g), (want, generator), "{word}");
            }
            other => panic!("{word}: {other:?}"),
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut spell_candidates_seen = 0;
    for _ in 0..10_000 {
        let w = fuzz::word(&mut rng, 1, 7);
        let near: Vec<String> = (0..4).map(|_| corrupt(&mut rng, &w)).collect();
        let mut words = near;
        words.extend((0..3).map(|_| fuzz::word(&mut rng, 1, 7)));
        let oracle = AnalyzabilityOracle::new(words, vec![]);
        let set = spell_candidates(&w, &oracle, &cfg);
        for c in &set.candidates {
            assert_eq!(damerau(&w, c), 1, "{w} -> {c}");
        }
        spell_candidates_seen += set.candidates.len();
    }
    assert!(spell_candidates_seen > 10_000);

    let mut deasciified = 0;
    for _ in 0..10_000 {
        let w = fuzz::word(&mut rng, 1, 8);
        let set = deasciify_candidates(&w, &Everything, &cfg).unwrap();
        for c in &set.candidates {
            assert_eq!(c.chars().count(), w.chars().count(), "{w} -> {c}");
            for (a, b) in w.chars().zip(c.chars()) {
                assert!(a == b || partner(a) == Some(b), "{w} -> {c}");
            }
        }
        deasciified += set.candidates.len();
    }
    format!("documented words resolve; {spell_candidates_seen} spelling and {deasciified} deasciifier candidates checked")
}

fn toks(s: &str) -> Vec<String> {
    tokenize_words(s).into_iter().map(String::from).collect()
}

fn c4_insertion() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let vocab = fuzz::vocabulary(&mut rng, 80);
    let absent = {
        let mut d = SpellingDictionary::new();
        d.insert(SpellingEntry::from_phrases("xxq", "yyq", Provenance::Manual, 0).unwrap()).unwrap();
        d.insert(SpellingEntry::from_phrases("qx qw", "q", Provenance::Manual, 0).unwrap()).unwrap();
        d
    };
    for _ in 0..1000 {
        let s = gecsynth_core::text::normalize(&fuzz::sentence(&mut rng, &vocab, 12));
        for dict in [&SpellingDictionary::new(), &absent] {
            let pair = clean_insert(&s, dict);
            assert_eq!(pair.corrected, s);
            assert!(pair.edits.is_empty());
        }
    }

    let pairs = fuzz::word_pairs(&mut rng, &vocab, 25);
    let mut dict = SpellingDictionary::new();
    for (a, b) in &pairs {
        let _ = dict.insert(SpellingEntry::from_phrases(a, b, Provenance::Manual, 0).unwrap());
    }
    let entries: Vec<(Vec<String>, Vec<String>)> = dict.entries().map(|e| (toks(&e.key()), toks(&e.correct_phrase()))).collect();
    let mut changed = 0;
    for _ in 0..1000 {
        let s = fuzz::sentence(&mut rng, &vocab, 12);
        let pair = clean_insert(&s, &dict);
        assert_eq!(apply_edits(&toks(&pair.source), &pair.edits), toks(&pair.corrected), "{s}");
        let lower: String = (0..rng.gen_range(1..12)).map(|_| vocab.choose(&mut rng).unwrap().as_str()).collect::<Vec<_>>().join(" ");
        let lower_pair = clean_insert(&lower, &dict);
        assert_eq!(toks(&lower_pair.corrected), single_pass_substitute(&toks(&lower), &entries), "{lower}");
        changed += usize::from(!pair.edits.is_empty());
    }
    assert!(changed > 100, "only {changed} sentences changed");

    let mut chain = SpellingDictionary::new();
    chain.insert(SpellingEntry::from_phrases("a", "b", Provenance::Manual, 0).unwrap()).unwrap();
    chain.insert(SpellingEntry::from_phrases("b", "c", Provenance::Manual, 0).unwrap()).unwrap();
    assert_eq!(clean_insert("a", &chain).corrected, "b");
    format!("identity on 2000 runs, {changed} of 1000 fuzzed sentences rewritten and reconstructed")
}

fn f_half(tp: f64, fp: f64, fn_: f64) -> f64 {
    let p = if tp + fp == 0.0 { 1.0 } else { tp / (tp + fp) };
    let r = if tp + fn_ == 0.0 { 1.0 } else { tp / (tp + fn_) };
    if p + r == 0.0 {
        0.0
    } else {
        1.25 * p * r / (0.25 * p + r)
    }
}

fn c5_scorer() -> String {
    let gold = parse_m2(&formats::read_text(&fixture("score/gold.m2")).unwrap(), Path::new("gold.m2")).unwrap();
    let hyp = parse_m2(&formats::read_text(&fixture("score/hyp.m2")).unwrap(), Path::new("hyp.m2")).unwrap();
    let modes = [ScoreMode::SpanCorrection, ScoreMode::SpanDetection, ScoreMode::TokenDetection];

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let random: Vec<_> = (0..200).map(|_| fuzz::m2_document(&mut rng)).collect();
    for docs in [&gold.documents, &random] {
        for mode in modes {
            let s = score(docs, docs, mode).unwrap();
            assert_eq!((s.precision, s.recall, s.f_half), (1.0, 1.0, 1.0), "{mode:?}");
        }
    }

    let s = score(&gold.documents, &hyp.documents, ScoreMode::SpanCorrection).unwrap();
    assert_eq!((s.tp, s.fp, s.fn_), (2, 1, 2));
    let want = f_half(2.0, 1.0, 2.0);
    assert!((want - 0.625).abs() < 1e-12);
    assert!((s.f_half - 0.625).abs() <= 1e-9, "F0.5 {}", s.f_half);
    let r = cli(&["score", "--gold", &p(&fixture("score/gold.m2")), "--hyp", &p(&fixture("score/hyp.m2"))]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.ends_with("\t0.6250\n"), "{}", r.stdout);

    let pool = ["ev", "Ev", "bir", "gel", "git", ",", ".", "ışık", "su", "de"].map(String::from);
    let (mut g, mut h) = (Vec::new(), Vec::new());
    for _ in 0..1000 {
        let src = fuzz::token_sequence(&mut rng, 10);
        let (ng, nh) = (rng.gen_range(0..3), rng.gen_range(0..3));
        let gt = fuzz::perturb(&mut rng, &src, &pool, ng);
        let ht = if rng.gen_bool(0.3) { gt.clone() } else { fuzz::perturb(&mut rng, &src, &pool, nh) };
        g.push(annotate_pair(&src.join(" "), &gt.join(" ")));
        h.push(annotate_pair(&src.join(" "), &ht.join(" ")));
    }
    let corr = score(&g, &h, ScoreMode::SpanCorrection).unwrap();
    let det = score(&g, &h, ScoreMode::SpanDetection).unwrap();
    assert!(det.precision >= corr.precision && det.recall >= corr.recall, "{det:?} vs {corr:?}");
    for (c, v) in [(&corr, f_half(corr.tp as f64, corr.fp as f64, corr.fn_ as f64)), (&det, f_half(det.tp as f64, det.fp as f64, det.fn_ as f64))] {
        assert!((c.f_half - v).abs() < 1e-12);
    }
    format!(
        "fixture F0.5 {:.4}; fuzzed correction P/R {:.3}/{:.3}, detection {:.3}/{:.3}",
        s.f_half, corr.precision, corr.recall, det.precision, det.recall
    )
}

fn c6_m2_round_trip() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let docs: Vec<_> = (0..100).map(|_| fuzz::m2_document(&mut rng)).collect();
    let noops = docs.iter().filter(|d| d.edits.is_empty() || !d.noop_annotators.is_empty()).count();
    assert!(noops > 5, "only {noops} noop documents");
    let text = format_m2(&docs);
    let back = parse_m2(&text, Path::new("random.m2")).unwrap();
    assert!(back.rejected.is_empty(), "{:?}", back.rejected);
    assert_eq!(back.documents, docs);
    assert_eq!(format_m2(&back.documents), text);
    format!("100 documents, {noops} with noop lines, {} bytes identical", text.len())
}

fn c7_tweets() -> String {
    let (g, _) = postprocess_tweets(&["iyi", "ılık su", "çok güzel"], &[""; 3]);
    assert_eq!(g, ["İyi", "Ilık su", "Çok güzel"]);

    let punct = Regex::new(r"\p{P}").unwrap();
    let all: String = (0..=0x10FFFFu32).filter_map(char::from_u32).filter(|c| punct.is_match(c.encode_utf8(&mut [0; 4]))).collect();
    let classes = all.chars().count();
    assert_eq!(strip_punctuation(&all), "");

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let marks: Vec<char> = all.chars().collect();
    for _ in 0..1000 {
        let mut s = String::new();
        for _ in 0..rng.gen_range(0..20) {
            match rng.gen_range(0..3) {
                0 => s.push(*marks.choose(&mut rng).unwrap()),
                1 => s.push(' '),
                _ => s.push_str(&fuzz::word(&mut rng, 1, 4)),
            }
        }
        let once = strip_punctuation(&s);
        assert!(!punct.is_match(&once), "{s:?} -> {once:?}");
        assert_eq!(strip_punctuation(&once), once);
        let want = punct.replace_all(&s, "").split_whitespace().collect::<Vec<_>>().join(" ");
        assert_eq!(once, want);
    }

    let dir = tempfile::tempdir().unwrap();
    let (og, oh) = (dir.path().join("g.txt"), dir.path().join("h.txt"));
    let r = cli(&[
        "postprocess-tweets",
        "--gold",
        &p(&fixture("tweets/gold.txt")),
        "--hyp",
        &p(&fixture("tweets/hyp.txt")),
        "--out-gold",
        &p(&og),
        "--out-hyp",
        &p(&oh),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(!punct.is_match(&formats::read_text(&oh).unwrap()));
    format!("{classes} punctuation characters stripped; 1000 fuzzed strings idempotent")
}

fn c8_annotation() -> String {
    let dir = tempfile::tempdir().unwrap();

    // kill after 2 of 3, then resume
    let stub = StubServer::fixed("Düzeltildi.").unwrap();
    let sentences = ["bir", "iki", "üç"];
    let j = job(&sentences, &stub.base_url(), &dir.path().join("a.journal"), 1, 3);
    let cancel = AtomicBool::new(false);
    let killer = CancelAfter { inner: http(&stub.base_url()), after: 2, cancel: &cancel, done: AtomicUsize::new(0) };
    let first = annotate_batch(&j, &killer, &cancel).unwrap();
    assert!(first.cancelled);
    assert_eq!(first.records.len(), 2);
    assert_eq!(stub.stats().requests(), 2);
    let second = annotate_batch(&j, &http(&stub.base_url()), &AtomicBool::new(false)).unwrap();
    assert_eq!(second.requests, 1);
    assert_eq!(stub.stats().requests(), 3);
    assert!(!second.cancelled);
    assert_eq!(second.records.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(), ["1", "2", "3"]);
    for s in sentences {
        assert_eq!(stub.stats().requests_for(s), 1, "{s}");
    }
    let (journal, _) = read_journal(&j.checkpoint).unwrap();
    assert_eq!(journal.len(), 3);
    let third = annotate_batch(&j, &http(&stub.base_url()), &AtomicBool::new(false)).unwrap();
    assert_eq!(third.requests, 0);

    // two transient failures, then success
    let flaky = StubServer::start(
        |s, nth| if s == "zor" && nth <= 2 { StubReply::Fail(503) } else { StubReply::Correct(s.to_uppercase()) },
        |_| Duration::ZERO,
    )
    .unwrap();
    let j = job(&["kolay", "zor"], &flaky.base_url(), &dir.path().join("b.journal"), 2, 3);
    let out = annotate_batch(&j, &http(&flaky.base_url()), &AtomicBool::new(false)).unwrap();
    let zor = out.records.iter().find(|r| r.source == "zor").unwrap();
    assert_eq!((zor.status, zor.attempts, zor.corrected.as_str()), (Status::Ok, 3, "ZOR"));
    assert_eq!(flaky.stats().requests_for("zor"), 3);

    // bounded concurrency, input-order export under shuffled latencies
    let slow = StubServer::start(
        |s, _| if s.ends_with('7') { StubReply::Refuse } else { StubReply::Correct(format!("{s}!")) },
        |s| Duration::from_millis(5 + (s.len() as u64 * 37 + s.bytes().map(u64::from).sum::<u64>()) % 40),
    )
    .unwrap();
    let many: Vec<String> = (0..40).map(|i| format!("cümle {i}")).collect();
    let refs: Vec<&str> = many.iter().map(String::as_str).collect();
    let j = job(&refs, &slow.base_url(), &dir.path().join("c.journal"), 4, 3);
    let out = annotate_batch(&j, &http(&slow.base_url()), &AtomicBool::new(false)).unwrap();
    let peak = slow.stats().max_in_flight();
    assert!((2..=4).contains(&peak), "peak in flight {peak}");
    let (pairs, rejects) = export_pairs(&out.records);
    let want: String = many.iter().filter(|s| !s.ends_with('7')).map(|s| format!("{s}\t{s}!\n")).collect();
    assert_eq!(pairs, want);
    assert_eq!(rejects, "8\trefused\n18\trefused\n28\trefused\n38\trefused\n");

    // a missing credential stops the run before any request
    let input = dir.path().join("in.txt");
    formats::write_text(&input, "bir\n").unwrap();
    let before = stub.stats().requests();
    let r = cli(&[
        "annotate",
        "--input",
        &p(&input),
        "--out",
        &p(&dir.path().join("out.tsv")),
        "--base-url",
        &stub.base_url(),
        "--credential-env",
        "GECSYNTH_ACCEPTANCE_UNSET_KEY",
    ]);
    assert_eq!(r.code, 2, "{}", r.stderr);
    assert_eq!(stub.stats().requests(), before);

    format!("resume issued 1 request, retry took 3 attempts, peak in flight {peak} of 4")
}

fn pipeline_run(dir: &Path, workers: usize) -> BTreeMap<String, Vec<u8>> {
    let w = workers.to_string();
    let cfg = p(&fixture("toy/config.toml"));
    let d = |name: &str| p(&dir.join(name));
    let steps: Vec<Vec<String>> = vec![
        vec!["index".into(), "--out".into(), d("index.tsv")],
        vec!["expand".into(), "--index".into(), d("index.tsv"), "--out-dir".into(), d("")],
        vec!["insert".into(), "--sentences".into(), d("sentences.txt"), "--dictionary".into(), d("dictionary.tsv"), "--out".into(), d("parallel.tsv"), "--m2".into(), d("inserted.m2")],
        vec!["m2".into(), "--parallel".into(), d("parallel.tsv"), "--out".into(), d("gold.m2")],
        vec!["score".into(), "--gold".into(), d("gold.m2"), "--hyp".into(), d("inserted.m2")],
        vec!["stats".into(), "--index".into(), d("index.tsv"), "--dictionary".into(), d("dictionary.tsv"), "--tsv".into(), d("stats.tsv")],
    ];
    let mut outputs = BTreeMap::new();
    for (i, step) in steps.into_iter().enumerate() {
        let mut args = vec!["--config".to_string(), cfg.clone(), "--workers".into(), w.clone()];
        args.extend(step);
        let r = cli(&args);
        assert_eq!(r.code, 0, "step {args:?}: {}", r.stderr);
        outputs.insert(format!("stdout-{i}"), r.stdout.into_bytes());
    }
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        outputs.insert(path.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&path).unwrap());
    }
    outputs
}

fn c9_end_to_end() -> String {
    let start = Instant::now();
    let runs: Vec<BTreeMap<String, Vec<u8>>> = [1, 1, 4]
        .iter()
        .map(|&w| {
            let dir = tempfile::tempdir().unwrap();
            pipeline_run(dir.path(), w)
        })
        .collect();
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    for (i, run) in runs.iter().enumerate().skip(1) {
        for (name, bytes) in &runs[0] {
            assert!(run.get(name) == Some(bytes), "{name} differs in run {i}");
        }
        assert_eq!(run.len(), runs[0].len());
    }
    let pairs = String::from_utf8_lossy(&runs[0]["parallel.tsv"]).lines().count();
    let score_line = String::from_utf8_lossy(&runs[0]["stdout-4"]).lines().nth(1).unwrap_or_default().to_string();
    assert!(pairs > 0);
    format!("3 runs byte-identical ({} files, {pairs} pairs, score row {score_line:?}) in {elapsed:.2?}", runs[0].len())
}
