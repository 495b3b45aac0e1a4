//! Greedy LZ77 parsing.
//!
//! Each phrase is the longest prefix of the unparsed suffix that also starts
//! at an earlier position (overlap allowed), followed by one explicit
//! character. A phrase that reaches the end of the text stops there.

use crate::sa;

/// One phrase, as a 1-based closed span of the text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Phrase {
    pub start: usize,
    pub end: usize,
    /// 1-based start of an earlier occurrence of `T[start..end-1]`
    /// (or of `T[start..end]` for a final phrase without explicit character).
    /// `None` iff the phrase is a single first-occurrence character.
    pub source: Option<usize>,
}

impl Phrase {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Lz77Parse {
    phrases: Vec<Phrase>,
    ends: Vec<usize>,
}

impl Lz77Parse {
    fn from_phrases(phrases: Vec<Phrase>) -> Self {
        let ends = phrases.iter().map(|p| p.end).collect();
        Self { phrases, ends }
    }

    pub fn phrases(&self) -> &[Phrase] {
        &self.phrases
    }

    /// Phrase end positions `e_1 < ... < e_z = n`, 1-based.
    pub fn ends(&self) -> &[usize] {
        &self.ends
    }

    /// Number of phrases.
    pub fn z(&self) -> usize {
        self.phrases.len()
    }

    pub fn spans(&self) -> Vec<(usize, usize)> {
        self.phrases.iter().map(|p| (p.start, p.end)).collect()
    }
}

/// Builds one phrase starting at 0-based `i` from the longest earlier match.
fn make_phrase(i: usize, n: usize, match_len: usize, match_pos: usize) -> Phrase {
    if match_len == 0 {
        Phrase {
            start: i + 1,
            end: i + 1,
            source: None,
        }
    } else if i + match_len >= n {
        Phrase {
            start: i + 1,
            end: n,
            source: Some(match_pos + 1),
        }
    } else {
        Phrase {
            start: i + 1,
            end: i + match_len + 1,
            source: Some(match_pos + 1),
        }
    }
}

fn match_len(text: &[u8], i: usize, p: usize) -> usize {
    let n = text.len();
    let mut l = 0;
    while i + l < n && text[p + l] == text[i + l] {
        l += 1;
    }
    l
}

/// LZ77 parse in O(n) after suffix array construction, using the nearest
/// smaller text positions on either side of each suffix in rank order.
pub fn lz77_parse(text: &[u8]) -> Lz77Parse {
    let n = text.len();
    if n == 0 {
        return Lz77Parse::default();
    }
    let sa = sa::suffix_array(text);
    let (psv, nsv) = smaller_neighbours(&sa);
    drop(sa);

    let mut phrases = Vec::new();
    let mut i = 0;
    while i < n {
        let mut best = (0usize, 0usize);
        for cand in [psv[i], nsv[i]] {
            if cand != usize::MAX {
                let l = match_len(text, i, cand);
                if l > best.0 {
                    best = (l, cand);
                }
            }
        }
        let phrase = make_phrase(i, n, best.0, best.1);
        i = phrase.end;
        phrases.push(phrase);
    }
    Lz77Parse::from_phrases(phrases)
}

/// For each text position, the text position of the nearest suffix in SA
/// order (before and after) whose text position is smaller; `usize::MAX`
/// when none exists.
fn smaller_neighbours(sa: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = sa.len();
    let mut psv = vec![usize::MAX; n];
    let mut nsv = vec![usize::MAX; n];
    let mut stack: Vec<usize> = Vec::new();
    for &p in sa {
        while stack.last().is_some_and(|&top| top > p) {
            stack.pop();
        }
        if let Some(&top) = stack.last() {
            psv[p] = top;
        }
        stack.push(p);
    }
    stack.clear();
    for &p in sa.iter().rev() {
        while stack.last().is_some_and(|&top| top > p) {
            stack.pop();
        }
        if let Some(&top) = stack.last() {
            nsv[p] = top;
        }
        stack.push(p);
    }
    (psv, nsv)
}

/// Quadratic reference parser: scans every earlier start position directly.
pub fn lz77_parse_naive(text: &[u8]) -> Lz77Parse {
    let n = text.len();
    let mut phrases = Vec::new();
    let mut i = 0;
    while i < n {
        let mut best = (0usize, 0usize);
        for p in 0..i {
            let l = match_len(text, i, p);
            if l > best.0 {
                best = (l, p);
            }
        }
        let phrase = make_phrase(i, n, best.0, best.1);
        i = phrase.end;
        phrases.push(phrase);
    }
    Lz77Parse::from_phrases(phrases)
}

/// Whether the 1-based closed span `[start, end]` contains a phrase end, so
/// that some boundary splits it into a non-empty prefix and a possibly-empty
/// suffix. Holds for every leftmost occurrence of every substring.
pub fn first_occurrence_touches_boundary(parse: &Lz77Parse, start: usize, end: usize) -> bool {
    let ends = parse.ends();
    let k = ends.partition_point(|&e| e < start);
    k < ends.len() && ends[k] <= end
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text() {
        let p = lz77_parse(b"");
        assert_eq!(p.z(), 0);
        assert!(p.ends().is_empty());
    }

    #[test]
    fn worked_examples() {
        let p = lz77_parse(b"abababab");
        assert_eq!(p.spans(), vec![(1, 1), (2, 2), (3, 8)]);
        assert_eq!(p.phrases()[2].source, Some(1));

        let p = lz77_parse(b"abaab");
        assert_eq!(p.spans(), vec![(1, 1), (2, 2), (3, 4), (5, 5)]);
        assert_eq!(p.ends(), &[1, 2, 4, 5]);
        assert_eq!(p.phrases()[0].source, None);
        assert_eq!(p.phrases()[3].source, Some(2));
    }

    #[test]
    fn single_repeated_char() {
        let p = lz77_parse(b"aaaaaa");
        assert_eq!(p.spans(), vec![(1, 1), (2, 6)]);
    }

    #[test]
    fn touches_boundary_examples() {
        let p = lz77_parse(b"abaab");
        assert!(first_occurrence_touches_boundary(&p, 3, 5));
        assert!(first_occurrence_touches_boundary(&p, 1, 1));
        assert!(first_occurrence_touches_boundary(&p, 2, 2));
        assert!(!first_occurrence_touches_boundary(&p, 3, 3));
    }

    #[test]
    fn matches_naive_on_all_short_binary_strings() {
        for n in 0..=10 {
            for bits in 0u32..(1 << n) {
                let t: Vec<u8> = (0..n).map(|k| b'a' + ((bits >> k) & 1) as u8).collect();
                assert_eq!(lz77_parse(&t).spans(), lz77_parse_naive(&t).spans(), "{:?}", t);
            }
        }
    }
}
