//! Weighted Damerau (optimal string alignment) over tokens.

use alloc::vec;
use alloc::vec::Vec;

use crate::text::fold;

/// Costs in half units so case-only substitutions stay integral.
pub const MATCH_COST: u32 = 0;
pub const CASE_SUBSTITUTION_COST: u32 = 1;
pub const SUBSTITUTION_COST: u32 = 2;
pub const INSERTION_COST: u32 = 2;
pub const DELETION_COST: u32 = 2;
pub const TRANSPOSITION_COST: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlignOp {
    Match,
    Substitute,
    Delete,
    Insert,
    /// Two source tokens swapped into the next two target tokens.
    Transpose,
}

impl AlignOp {
    /// (source tokens consumed, target tokens consumed)
    pub fn consumes(self) -> (usize, usize) {
        match self {
            AlignOp::Match | AlignOp::Substitute => (1, 1),
            AlignOp::Delete => (1, 0),
            AlignOp::Insert => (0, 1),
            AlignOp::Transpose => (2, 2),
        }
    }
}

fn substitution_cost<S: AsRef<str>>(a: &S, b: &S) -> u32 {
    let (a, b) = (a.as_ref(), b.as_ref());
    if a == b {
        MATCH_COST
    } else if fold(a) == fold(b) {
        CASE_SUBSTITUTION_COST
    } else {
        SUBSTITUTION_COST
    }
}

fn is_transposition<S: AsRef<str>>(src: &[S], tgt: &[S], i: usize, j: usize) -> bool {
    i >= 2
        && j >= 2
        && src[i - 1].as_ref() == tgt[j - 2].as_ref()
        && src[i - 2].as_ref() == tgt[j - 1].as_ref()
        && src[i - 1].as_ref() != src[i - 2].as_ref()
}

/// Total cost of `ops` in half units.
pub fn alignment_cost<S: AsRef<str>>(ops: &[AlignOp], src: &[S], tgt: &[S]) -> u32 {
    let (mut i, mut j, mut cost) = (0, 0, 0);
    for op in ops {
        cost += match op {
            AlignOp::Match => MATCH_COST,
            AlignOp::Substitute => substitution_cost(&src[i], &tgt[j]),
            AlignOp::Delete => DELETION_COST,
            AlignOp::Insert => INSERTION_COST,
            AlignOp::Transpose => TRANSPOSITION_COST,
        };
        let (di, dj) = op.consumes();
        i += di;
        j += dj;
    }
    cost
}

/// Minimal-cost alignment of `src` onto `tgt`. Among equal-cost paths the
/// backtrace prefers match, then transposition, substitution, deletion and
/// insertion.
pub fn align<S: AsRef<str>>(src: &[S], tgt: &[S]) -> Vec<AlignOp> {
    let (n, m) = (src.len(), tgt.len());
    let width = m + 1;
    let mut table = vec![0u32; (n + 1) * width];
    let at = |i: usize, j: usize| i * width + j;
    for i in 1..=n {
        table[at(i, 0)] = i as u32 * DELETION_COST;
    }
    for j in 1..=m {
        table[at(0, j)] = j as u32 * INSERTION_COST;
    }
    for i in 1..=n {
        for j in 1..=m {
            let mut best = table[at(i - 1, j - 1)] + substitution_cost(&src[i - 1], &tgt[j - 1]);
            best = best.min(table[at(i - 1, j)] + DELETION_COST);
            best = best.min(table[at(i, j - 1)] + INSERTION_COST);
            if is_transposition(src, tgt, i, j) {
                best = best.min(table[at(i - 2, j - 2)] + TRANSPOSITION_COST);
            }
            table[at(i, j)] = best;
        }
    }

    let mut ops = Vec::with_capacity(n.max(m));
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let here = table[at(i, j)];
        let op = if i > 0 && j > 0 && src[i - 1].as_ref() == tgt[j - 1].as_ref() && table[at(i - 1, j - 1)] == here {
            AlignOp::Match
        } else if is_transposition(src, tgt, i, j) && table[at(i - 2, j - 2)] + TRANSPOSITION_COST == here {
            AlignOp::Transpose
        } else if i > 0 && j > 0 && table[at(i - 1, j - 1)] + substitution_cost(&src[i - 1], &tgt[j - 1]) == here {
            AlignOp::Substitute
        } else if i > 0 && table[at(i - 1, j)] + DELETION_COST == here {
            AlignOp::Delete
        } else {
            AlignOp::Insert
        };
        let (di, dj) = op.consumes();
        i -= di;
        j -= dj;
        ops.push(op);
    }
    ops.reverse();
    ops
}
