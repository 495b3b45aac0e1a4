//! Exact reference algorithms: longest common substring by dynamic
//! programming, and string-level enumeration of index candidates.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::Result;
use crate::lengths::LengthSet;
use crate::lz::lz77_parse_naive;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LcsAnswer {
    pub length: usize,
    /// 1-based closed spans; `start > end` when `length == 0`.
    pub p_span: (usize, usize),
    pub t_span: (usize, usize),
}

/// Exact LCS. Among longest answers picks the smallest pattern start, then
/// the smallest text start.
pub fn exact_lcs(pattern: &[u8], text: &[u8]) -> LcsAnswer {
    // Roll the DP row along the shorter string.
    let swap = text.len() < pattern.len();
    let (outer, inner) = if swap { (text, pattern) } else { (pattern, text) };
    let mut prev = vec![0usize; inner.len() + 1];
    let mut cur = vec![0usize; inner.len() + 1];
    // (length, p_start, t_start), 0-based starts
    let mut best: Option<(usize, usize, usize)> = None;
    for (a, &oc) in outer.iter().enumerate() {
        for (b, &ic) in inner.iter().enumerate() {
            cur[b + 1] = if oc == ic { prev[b] + 1 } else { 0 };
            let len = cur[b + 1];
            if len == 0 {
                continue;
            }
            let (oa, ib) = (a + 1 - len, b + 1 - len);
            let (ps, ts) = if swap { (ib, oa) } else { (oa, ib) };
            let better = match best {
                None => true,
                Some((bl, bp, bt)) => len > bl || (len == bl && (ps, ts) < (bp, bt)),
            };
            if better {
                best = Some((len, ps, ts));
            }
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    match best {
        None => LcsAnswer {
            length: 0,
            p_span: (1, 0),
            t_span: (1, 0),
        },
        Some((len, ps, ts)) => LcsAnswer {
            length: len,
            p_span: (ps + 1, ps + len),
            t_span: (ts + 1, ts + len),
        },
    }
}

/// Every candidate `(i, j, k)` (1-based) that the index would accept: the
/// left part `P[i..j]` ends some boundary prefix of the text and the right
/// part `P[j+1..k]` starts the suffix after that same boundary, both with
/// lengths from the length set. Found by direct string comparison.
pub fn brute_candidates(
    text: &[u8],
    epsilon: f64,
    max_pattern_len: Option<usize>,
    pattern: &[u8],
) -> Result<Vec<(usize, usize, usize)>> {
    let n = text.len();
    let max_len = max_pattern_len.map_or(n, |m| m.min(n)).max(1);
    let lengths = LengthSet::new(epsilon, max_len)?;
    let parse = lz77_parse_naive(text);
    let m = pattern.len();
    let mut out = BTreeSet::new();
    for j in 1..=m {
        for &e in parse.ends() {
            let lsuf = pattern[..j]
                .iter()
                .rev()
                .zip(text[..e].iter().rev())
                .take_while(|(a, b)| a == b)
                .count();
            if lsuf == 0 {
                continue;
            }
            let lpre = pattern[j..]
                .iter()
                .zip(&text[e..])
                .take_while(|(a, b)| a == b)
                .count();
            for &l in lengths.as_slice().iter().take_while(|&&l| l <= lsuf) {
                out.insert((j + 1 - l, j, j));
                for &r in lengths.as_slice().iter().take_while(|&&r| r <= lpre) {
                    out.insert((j + 1 - l, j, j + r));
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Longest candidate span among [`brute_candidates`].
pub fn brute_best_length(candidates: &[(usize, usize, usize)]) -> usize {
    candidates.iter().map(|&(i, _, k)| k + 1 - i).max().unwrap_or(0)
}
