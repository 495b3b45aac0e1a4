#![allow(dead_code)]

use rand::Rng;

pub fn random_string<R: Rng>(rng: &mut R, len: usize, sigma: u8) -> Vec<u8> {
    (0..len).map(|_| b'a' + rng.gen_range(0..sigma)).collect()
}

/// A short random seed string repeated with sparse substitutions.
pub fn repetitive_string<R: Rng>(rng: &mut R, len: usize, sigma: u8) -> Vec<u8> {
    let base_len = rng.gen_range(1..=len.clamp(1, 64));
    let base = random_string(rng, base_len, sigma);
    let rate = rng.gen_range(0.0..0.05);
    let mut out: Vec<u8> = base.iter().copied().cycle().take(len).collect();
    for c in &mut out {
        if rng.gen_bool(rate) {
            *c = b'a' + rng.gen_range(0..sigma);
        }
    }
    out
}

pub fn random_text<R: Rng>(rng: &mut R, max_len: usize, sigma: u8) -> Vec<u8> {
    let len = rng.gen_range(1..=max_len);
    if rng.gen_bool(0.5) {
        random_string(rng, len, sigma)
    } else {
        repetitive_string(rng, len, sigma)
    }
}

/// Patterns of three kinds: unrelated random strings, mutated substrings of
/// the text, and splices of several text substrings.
pub fn random_pattern<R: Rng>(rng: &mut R, text: &[u8], max_len: usize, sigma: u8) -> Vec<u8> {
    let len = rng.gen_range(1..=max_len);
    match rng.gen_range(0..3) {
        0 => random_string(rng, len, sigma),
        1 => {
            let len = len.min(text.len());
            let start = rng.gen_range(0..=text.len() - len);
            let mut p = text[start..start + len].to_vec();
            let rate = rng.gen_range(0.0..0.2);
            for c in &mut p {
                if rng.gen_bool(rate) {
                    *c = b'a' + rng.gen_range(0..sigma);
                }
            }
            p
        }
        _ => {
            let mut p = Vec::with_capacity(len);
            while p.len() < len {
                let piece = rng.gen_range(1..=len - p.len()).min(text.len());
                let start = rng.gen_range(0..=text.len() - piece);
                p.extend_from_slice(&text[start..start + piece]);
            }
            p
        }
    }
}

/// Leftmost occurrence (0-based start) of a non-empty `needle`.
pub fn leftmost(hay: &[u8], needle: &[u8]) -> Option<usize> {
    hay.windows(needle.len()).position(|w| w == needle)
}

/// Ranks (1-based, per phrase) of boundary prefixes in co-lex order and of
/// the following suffixes in lex order, by sorting explicit strings.
pub fn brute_ranks(text: &[u8], ends: &[usize]) -> (Vec<u32>, Vec<u32>) {
    let z = ends.len();
    let mut by_x: Vec<usize> = (0..z).collect();
    by_x.sort_by(|&a, &b| text[..ends[a]].iter().rev().cmp(text[..ends[b]].iter().rev()));
    let mut by_y: Vec<usize> = (0..z).collect();
    by_y.sort_by(|&a, &b| text[ends[a]..].cmp(&text[ends[b]..]));
    let mut x = vec![0; z];
    let mut y = vec![0; z];
    for (r, &t) in by_x.iter().enumerate() {
        x[t] = r as u32 + 1;
    }
    for (r, &t) in by_y.iter().enumerate() {
        y[t] = r as u32 + 1;
    }
    (x, y)
}

/// Smallest interval holding `ranks`; `None` unless they are contiguous.
pub fn contiguous(mut ranks: Vec<u32>) -> Option<(u32, u32)> {
    ranks.sort_unstable();
    ranks.dedup();
    let (lo, hi) = (*ranks.first()?, *ranks.last()?);
    (hi - lo + 1 == ranks.len() as u32).then_some((lo, hi))
}

/// Compares both range maps and the grid of `index` with intervals computed
/// by sorting explicit strings.
pub fn check_structures(text: &[u8], index: &alcs::AlcsIndex) -> Result<(), String> {
    use std::collections::BTreeMap;

    let parse = alcs::lz::lz77_parse_naive(text);
    let ends = parse.ends();
    let (x, y) = brute_ranks(text, ends);
    let kr = index.kr();
    let grid_y = index.grid().y_of_x();
    for t in 0..ends.len() {
        let xi = x[t] as usize - 1;
        if grid_y[xi] != y[t] || index.grid().boundary_of_x()[xi] != ends[t] as u64 {
            return Err(format!("grid point of phrase {t}"));
        }
    }
    let lengths = index.lengths().as_slice();

    let mut left: BTreeMap<(usize, &[u8]), Vec<u32>> = BTreeMap::new();
    for (t, &e) in ends.iter().enumerate() {
        for &d in lengths.iter().filter(|&&d| d <= e) {
            left.entry((d, &text[e - d..e])).or_default().push(x[t]);
        }
    }
    let mut right: BTreeMap<(usize, &[u8]), Vec<u32>> = BTreeMap::new();
    for (t, &e) in ends.iter().enumerate() {
        for d in std::iter::once(0).chain(lengths.iter().copied()) {
            if e + d <= text.len() {
                right.entry((d, &text[e..e + d])).or_default().push(y[t]);
            }
        }
    }
    for (name, brute, map) in [("left", left, index.left_map()), ("right", right, index.right_map())] {
        if brute.len() != map.len() {
            return Err(format!("{name} map has {} entries, expected {}", map.len(), brute.len()));
        }
        for ((d, s), ranks) in brute {
            let Some((lo, hi)) = contiguous(ranks) else {
                return Err(format!("{name} context {s:?} has non-contiguous ranks"));
            };
            let got = map.get(d, kr.fp_of(s));
            if got != Some(alcs::RankRange::new(lo, hi)) {
                return Err(format!("{name} context {s:?}: got {got:?}, expected [{lo}, {hi}]"));
            }
        }
    }
    Ok(())
}
