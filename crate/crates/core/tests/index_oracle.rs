use gecsynth_core::corpus::{corpus_from_texts, WordIndex};
use gecsynth_testkit::{fuzz, naive_index};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn as_map(index: &WordIndex) -> std::collections::BTreeMap<String, Vec<usize>> {
    index.iter().map(|(w, ids)| (w.to_string(), ids.to_vec())).collect()
}

#[test]
fn thousand_two_word_documents() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let vocab = fuzz::vocabulary(&mut rng, 60);
    let texts: Vec<String> = (0..1000).map(|_| fuzz::sentence(&mut rng, &vocab, 2)).collect();
    let docs = corpus_from_texts(&texts);
    assert_eq!(docs.len(), texts.len());
    let normalized: Vec<String> = docs.iter().map(|d| d.text.clone()).collect();
    assert_eq!(as_map(&WordIndex::build(&docs)), naive_index(&normalized));
}

#[test]
fn sharded_build_equals_whole() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for round in 0..50 {
        let vocab = fuzz::vocabulary(&mut rng, 25);
        let texts = fuzz::corpus(&mut rng, &vocab, 40, 8);
        let docs = corpus_from_texts(&texts);
        let normalized: Vec<String> = docs.iter().map(|d| d.text.clone()).collect();
        let whole = WordIndex::build(&docs);
        assert_eq!(as_map(&whole), naive_index(&normalized), "round {round}");
        let shards = docs.chunks(1 + round % 7).map(WordIndex::build);
        assert_eq!(WordIndex::merge(shards), whole);
    }
}
