//! Reference implementations written independently of `gecsynth-core`'s
//! algorithms, plus random instance generators. Only tokenization is shared
//! with the core crate; everything under test is recomputed here by a
//! different route (full scans, forward enumeration, top-down recursion).

pub mod fuzz;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use gecsynth_core::text::{has_letter, tokenize_words};

/// Turkish lowercase, written out separately from the core implementation.
pub fn fold(s: &str) -> String {
    s.chars()
        .flat_map(|c| match c {
            'I' => vec!['ı'],
            'İ' => vec!['i'],
            c => c.to_lowercase().collect(),
        })
        .collect()
}

/// Word index by scanning every document for every vocabulary word.
pub fn naive_index(texts: &[String]) -> BTreeMap<String, Vec<usize>> {
    let docs: Vec<Vec<String>> = texts
        .iter()
        .map(|t| tokenize_words(t).into_iter().filter(|w| has_letter(w)).map(fold).collect())
        .collect();
    let vocabulary: BTreeSet<&String> = docs.iter().flatten().collect();
    let mut index = BTreeMap::new();
    for word in vocabulary {
        let ids: Vec<usize> = (0..docs.len()).filter(|&d| docs[d].contains(word)).collect();
        index.insert(word.clone(), ids);
    }
    index
}

/// Optimal-string-alignment distance, top-down with memoization.
pub fn damerau(a: &str, b: &str) -> usize {
    fn go(a: &[char], b: &[char], memo: &mut HashMap<(usize, usize), usize>) -> usize {
        if a.is_empty() {
            return b.len();
        }
        if b.is_empty() {
            return a.len();
        }
        if let Some(&v) = memo.get(&(a.len(), b.len())) {
            return v;
        }
        let (n, m) = (a.len(), b.len());
        let mut best = go(&a[..n - 1], b, memo) + 1;
        best = best.min(go(a, &b[..m - 1], memo) + 1);
        best = best.min(go(&a[..n - 1], &b[..m - 1], memo) + usize::from(a[n - 1] != b[m - 1]));
        if n > 1 && m > 1 && a[n - 1] == b[m - 2] && a[n - 2] == b[m - 1] {
            best = best.min(go(&a[..n - 2], &b[..m - 2], memo) + 1);
        }
        memo.insert((n, m), best);
        best
    }
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    go(&a, &b, &mut HashMap::new())
}

/// Token alignment cost in half units: match 0, case-only substitution 1,
/// substitution/insertion/deletion/adjacent transposition 2.
pub fn weighted_token_distance(src: &[String], tgt: &[String]) -> u32 {
    fn go(s: &[String], t: &[String], memo: &mut HashMap<(usize, usize), u32>) -> u32 {
        let (n, m) = (s.len(), t.len());
        if n == 0 || m == 0 {
            return 2 * (n + m) as u32;
        }
        if let Some(&v) = memo.get(&(n, m)) {
            return v;
        }
        let sub = if s[n - 1] == t[m - 1] {
            0
        } else if fold(&s[n - 1]) == fold(&t[m - 1]) {
            1
        } else {
            2
        };
        let mut best = go(&s[..n - 1], &t[..m - 1], memo) + sub;
        best = best.min(go(&s[..n - 1], t, memo) + 2);
        best = best.min(go(s, &t[..m - 1], memo) + 2);
        if n > 1 && m > 1 && s[n - 1] == t[m - 2] && s[n - 2] == t[m - 1] && s[n - 1] != s[n - 2] {
            best = best.min(go(&s[..n - 2], &t[..m - 2], memo) + 2);
        }
        memo.insert((n, m), best);
        best
    }
    go(src, tgt, &mut HashMap::new())
}

/// Longest key matching at `start` by scanning every key; exact keys win
/// over folded ones at equal length. Returns (key, correction, length).
pub fn brute_lookup(
    entries: &[(Vec<String>, Vec<String>)],
    tokens: &[String],
    start: usize,
) -> Option<(Vec<String>, Vec<String>, usize)> {
    let mut best: Option<(usize, bool, usize)> = None;
    for (i, (key, _)) in entries.iter().enumerate() {
        let len = key.len();
        if start + len > tokens.len() {
            continue;
        }
        let window = &tokens[start..start + len];
        let exact = window == key.as_slice();
        let folded = window.iter().map(|t| fold(t)).eq(key.iter().map(|t| fold(t)));
        if !(exact || folded) {
            continue;
        }
        let better = match best {
            None => true,
            Some((blen, bexact, _)) => len > blen || (len == blen && exact && !bexact),
        };
        if better {
            best = Some((len, exact, i));
        }
    }
    best.map(|(len, _, i)| (entries[i].0.clone(), entries[i].1.clone(), len))
}

/// Single left-to-right substitution pass over tokens, never re-reading
/// output. Entries are matched exactly (no case fallback).
pub fn single_pass_substitute(tokens: &[String], entries: &[(Vec<String>, Vec<String>)]) -> Vec<String> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let hit = entries
            .iter()
            .filter(|(k, _)| tokens[i..].starts_with(k))
            .max_by_key(|(k, _)| k.len());
        match hit {
            Some((k, v)) => {
                out.extend(v.iter().cloned());
                i += k.len();
            }
            None => {
                out.push(tokens[i].clone());
                i += 1;
            }
        }
    }
    out
}

/// Forward-enumerating morphology reference: a word is accepted when some
/// lexicon prefix can be extended to the whole word by at most `max_depth`
/// suffix applications, each allowed by its stem condition.
#[derive(Debug, Clone)]
pub struct BruteMorphology {
    pub lexicon: BTreeSet<String>,
    /// (suffix, conditions joined by `+`)
    pub rules: Vec<(String, String)>,
    pub max_depth: usize,
}

fn condition_holds(name: &str, stem: &str) -> bool {
    let vowels = "aeıioöuü";
    let last = stem.chars().last();
    let last_vowel = stem.chars().rfind(|c| vowels.contains(*c));
    let lv_in = |set: &str| last_vowel.is_some_and(|v| set.contains(v));
    match name {
        "any" => true,
        "vowel-final" => last.is_some_and(|c| vowels.contains(c)),
        "consonant-final" => last.is_some_and(|c| c.is_alphabetic() && !vowels.contains(c)),
        "front-vowel" => lv_in("eiöü"),
        "back-vowel" => lv_in("aıou"),
        "front-unrounded" => lv_in("ei"),
        "front-rounded" => lv_in("öü"),
        "back-unrounded" => lv_in("aı"),
        "back-rounded" => lv_in("ou"),
        "voiceless-final" => last.is_some_and(|c| "çfhkpsşt".contains(c)),
        "voiced-final" => last.is_some_and(|c| !"çfhkpsşt".contains(c)),
        other => panic!("unknown condition {other}"),
    }
}

impl BruteMorphology {
    pub fn from_table(lexicon: impl IntoIterator<Item = String>, table: &str, max_depth: usize) -> Self {
        let rules = table
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
            .map(|l| {
                let (s, p) = l.split_once('\t').expect("suffix<TAB>predicate");
                (s.trim().to_string(), p.trim().to_string())
            })
            .collect();
        Self { lexicon: lexicon.into_iter().collect(), rules, max_depth }
    }

    pub fn accepts(&self, word: &str) -> bool {
        if word.is_empty() {
            return false;
        }
        let chars: Vec<char> = word.chars().collect();
        (1..=chars.len()).any(|p| {
            let stem: String = chars[..p].iter().collect();
            self.lexicon.contains(&stem) && self.extend(&stem, &chars[p..], self.max_depth)
        })
    }

    fn extend(&self, stem: &str, rest: &[char], depth: usize) -> bool {
        if rest.is_empty() {
            return true;
        }
        if depth == 0 {
            return false;
        }
        self.rules.iter().any(|(suffix, pred)| {
            let sfx: Vec<char> = suffix.chars().collect();
            rest.starts_with(&sfx)
                && pred.split('+').all(|c| condition_holds(c, stem))
                && self.extend(&format!("{stem}{suffix}"), &rest[sfx.len()..], depth - 1)
        })
    }
}

const AMBIGUOUS: &[(char, char)] = &[
    ('c', 'ç'),
    ('g', 'ğ'),
    ('i', 'ı'),
    ('o', 'ö'),
    ('s', 'ş'),
    ('u', 'ü'),
    ('C', 'Ç'),
    ('G', 'Ğ'),
    ('I', 'İ'),
    ('O', 'Ö'),
    ('S', 'Ş'),
    ('U', 'Ü'),
];

pub fn partner(c: char) -> Option<char> {
    AMBIGUOUS.iter().find_map(|&(a, b)| if a == c { Some(b) } else if b == c { Some(a) } else { None })
}

/// All ambiguous-character variants via bitmask enumeration, excluding `word`.
/// `None` when more than `cap` positions are ambiguous.
pub fn brute_deasciify(word: &str, cap: usize) -> Option<BTreeSet<String>> {
    let chars: Vec<char> = word.chars().collect();
    let positions: Vec<usize> = (0..chars.len()).filter(|&i| partner(chars[i]).is_some()).collect();
    if positions.len() > cap {
        return None;
    }
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << positions.len()) {
        let mut v = chars.clone();
        for (bit, &p) in positions.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                v[p] = partner(v[p]).unwrap();
            }
        }
        out.insert(v.into_iter().collect::<String>());
    }
    out.remove(word);
    Some(out)
}

/// Distance-one neighbours built by string slicing, excluding `word`.
pub fn brute_edits1(word: &str, alphabet: &[char]) -> BTreeSet<String> {
    let bounds: Vec<usize> = word.char_indices().map(|(i, _)| i).chain([word.len()]).collect();
    let mut out = BTreeSet::new();
    for w in bounds.windows(2) {
        let (a, b) = (w[0], w[1]);
        out.insert(format!("{}{}", &word[..a], &word[b..]));
        for &c in alphabet {
            out.insert(format!("{}{}{}", &word[..a], c, &word[b..]));
        }
    }
    for w in bounds.windows(3) {
        let (a, b, c) = (w[0], w[1], w[2]);
        out.insert(format!("{}{}{}{}", &word[..a], &word[b..c], &word[a..b], &word[c..]));
    }
    for &p in &bounds {
        for &c in alphabet {
            out.insert(format!("{}{}{}", &word[..p], c, &word[p..]));
        }
    }
    out.remove(word);
    out
}

/// One row of a reference expansion run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RefRow {
    pub iteration: usize,
    pub dict_size: usize,
    pub extracted_texts: usize,
    pub distinct_words: usize,
    pub dict_delta: usize,
}

/// Reference fixpoint: full document scans, forward morphology, bitmask and
/// slicing candidate generation. Seed keys and corrections are phrases.
pub fn reference_fixpoint(
    texts: &[String],
    seed: &[(String, String)],
    morph: &BruteMorphology,
    alphabet: &[char],
    cap: usize,
    max_iterations: usize,
) -> (Vec<RefRow>, BTreeMap<String, String>) {
    let docs: Vec<Vec<String>> = texts
        .iter()
        .map(|t| tokenize_words(t).into_iter().map(fold).collect())
        .collect();
    let mut dict: BTreeMap<String, String> = BTreeMap::new();
    for (k, v) in seed {
        dict.entry(k.clone()).or_insert_with(|| v.clone());
    }
    let mut seen_docs: BTreeSet<usize> = BTreeSet::new();
    let mut rows = Vec::new();
    for iteration in 1..=max_iterations {
        let size = dict.len();
        let folded_keys: Vec<Vec<String>> =
            dict.keys().map(|k| k.split(' ').map(fold).collect()).collect();
        let novel: Vec<usize> = (0..docs.len())
            .filter(|d| !seen_docs.contains(d))
            .filter(|&d| folded_keys.iter().any(|k| docs[d].windows(k.len()).any(|w| w == k.as_slice())))
            .collect();
        let folded_key_set: BTreeSet<String> = dict.keys().map(|k| fold(k)).collect();
        let words: BTreeSet<String> = novel
            .iter()
            .flat_map(|&d| docs[d].iter())
            .filter(|w| has_letter(w))
            .filter(|w| !folded_key_set.contains(*w) && !morph.accepts(w))
            .cloned()
            .collect();
        let mut added = 0;
        for w in &words {
            let Some(variants) = brute_deasciify(w, cap) else {
                continue;
            };
            let mut accepted: Vec<String> = variants.into_iter().filter(|v| morph.accepts(&fold(v))).collect();
            if accepted.is_empty() {
                accepted = brute_edits1(w, alphabet).into_iter().filter(|v| morph.accepts(&fold(v))).collect();
            }
            let is_token = |c: &String| tokenize_words(c) == [c.as_str()];
            if accepted.len() == 1 && is_token(&accepted[0]) && !dict.contains_key(w) {
                dict.insert(w.clone(), accepted.remove(0));
                added += 1;
            }
        }
        seen_docs.extend(novel.iter().copied());
        rows.push(RefRow {
            iteration,
            dict_size: size,
            extracted_texts: novel.len(),
            distinct_words: words.len(),
            dict_delta: added,
        });
        if added == 0 {
            break;
        }
    }
    (rows, dict)
}
