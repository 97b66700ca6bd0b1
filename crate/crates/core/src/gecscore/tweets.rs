use alloc::string::String;
use alloc::vec::Vec;

use crate::text::{capitalize_first, is_punctuation, normalize};

/// Removes every Unicode punctuation character and re-collapses whitespace.
pub fn strip_punctuation(text: &str) -> String {
    let kept: String = text.chars().filter(|&c| !is_punctuation(c)).collect();
    normalize(&kept)
}

/// Prepares a tweet evaluation set: gold sentences get a Turkish-aware
/// capital first letter, hypothesis sentences lose their punctuation.
pub fn postprocess_tweets<G, H>(gold: &[G], hyp: &[H]) -> (Vec<String>, Vec<String>)
where
    G: AsRef<str>,
    H: AsRef<str>,
{
    let gold = gold.iter().map(|s| capitalize_first(s.as_ref())).collect();
    let hyp = hyp.iter().map(|s| strip_punctuation(s.as_ref())).collect();
    (gold, hyp)
}
