//! Approximate longest-common-substring queries.
//!
//! A candidate splits a pattern substring `P[i..k]` at `j` into a left part
//! `P[i..j]` (looked up among contexts ending at phrase boundaries) and a
//! possibly-empty right part `P[j+1..k]` (contexts starting right after a
//! boundary). Both lookups yield rank intervals; the candidate occurs in the
//! text iff the grid has a point in their product.
//!
//! Every candidate's left and right lengths are drawn from the index's
//! length set. Longer parts at a fixed split give nested, smaller intervals,
//! so at a fixed `j` success is anti-monotone in each part's length. The
//! pruned search relies on that to stop each ascending scan at its first
//! failure.

use serde::Serialize;

use crate::index::AlcsIndex;
use crate::kr::PrefixFpTable;
use crate::ranks::RankRange;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Algorithm {
    Naive,
    #[default]
    Pruned,
}

/// A common substring of the pattern and the text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QueryResult {
    /// 1-based closed span in the pattern; `p_start > p_end` when empty.
    pub p_start: usize,
    pub p_end: usize,
    pub length: usize,
    /// 1-based start of one occurrence in the text.
    pub t_pos: Option<usize>,
}

impl QueryResult {
    pub const EMPTY: QueryResult = QueryResult {
        p_start: 1,
        p_end: 0,
        length: 0,
        t_pos: None,
    };

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    /// The matched bytes of `pattern`.
    pub fn slice<'p>(&self, pattern: &'p [u8]) -> &'p [u8] {
        if self.is_empty() {
            &[]
        } else {
            &pattern[self.p_start - 1..self.p_end]
        }
    }
}

/// Work counters for one query.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct QueryStats {
    /// Candidate triples `(i, j, k)` examined. A triple is decided by its
    /// left lookup, its right lookup, or a rectangle query on the grid,
    /// whichever fails first.
    pub checks: u64,
    pub left_lookups: u64,
    pub right_lookups: u64,
    /// Rectangle queries on the grid.
    pub grid_queries: u64,
    /// Times the best length grew.
    pub improvements: u64,
}

impl std::ops::AddAssign for QueryStats {
    fn add_assign(&mut self, o: Self) {
        self.checks += o.checks;
        self.left_lookups += o.left_lookups;
        self.right_lookups += o.right_lookups;
        self.grid_queries += o.grid_queries;
        self.improvements += o.improvements;
    }
}

/// Best match so far; `ell` never decreases.
#[derive(Debug, Clone, Copy)]
struct MatchState {
    ell: usize,
    right_len: usize,
    best: QueryResult,
}

impl MatchState {
    fn new() -> Self {
        Self {
            ell: 0,
            right_len: 0,
            best: QueryResult::EMPTY,
        }
    }

    /// Records a success for split `j` (1-based, last left character).
    fn offer(&mut self, j: usize, left_len: usize, right_len: usize, t_pos: usize) -> bool {
        let length = left_len + right_len;
        let p_start = j + 1 - left_len;
        let better = length > self.ell
            || (length == self.ell
                && length > 0
                && (p_start, right_len) < (self.best.p_start, self.right_len));
        if better {
            self.ell = length;
            self.right_len = right_len;
            self.best = QueryResult {
                p_start,
                p_end: j + right_len,
                length,
                t_pos: Some(t_pos),
            };
        }
        better
    }
}

/// Per-query scratch over an immutable index.
struct Searcher<'a> {
    index: &'a AlcsIndex,
    table: PrefixFpTable,
    m: usize,
    stats: QueryStats,
}

impl<'a> Searcher<'a> {
    fn new(index: &'a AlcsIndex, pattern: &[u8]) -> Self {
        Self {
            index,
            table: PrefixFpTable::build(pattern, index.kr),
            m: pattern.len(),
            stats: QueryStats::default(),
        }
    }

    /// Interval of boundaries whose prefix ends with `P[j-len+1..j]`.
    #[inline]
    fn left(&mut self, j: usize, len: usize) -> Option<RankRange> {
        self.stats.left_lookups += 1;
        let fp = self.table.range_fp(j - len, j);
        self.index.left.get(len, fp)
    }

    /// Interval of boundaries whose suffix starts with `P[j+1..j+len]`.
    #[inline]
    fn right(&mut self, j: usize, len: usize) -> Option<RankRange> {
        self.stats.right_lookups += 1;
        let fp = self.table.range_fp(j, j + len);
        self.index.right.get(len, fp)
    }

    /// Start of an occurrence of `P[j-left_len+1..j+right_len]` in the text,
    /// given both intervals.
    #[inline]
    fn grid(&mut self, lr: RankRange, rr: RankRange, left_len: usize) -> Option<usize> {
        self.stats.grid_queries += 1;
        self.index
            .grid
            .report_any(lr.lo, lr.hi, rr.lo, rr.hi)
            .map(|p| p.boundary_pos as usize + 1 - left_len)
    }

    fn record(&mut self, state: &mut MatchState, j: usize, l: usize, r: usize, pos: usize) {
        if state.offer(j, l, r, pos) {
            self.stats.improvements += 1;
        }
    }

    fn naive(&mut self) -> QueryResult {
        let index = self.index;
        let lengths = index.lengths.as_slice();
        let mut state = MatchState::new();
        for j in 1..=self.m {
            let room = self.m - j;
            // Right lengths tried at this split: 0 and every set member <= room.
            let rights_here = 1 + index.lengths.first_above(room) as u64;
            for &l in lengths.iter().take_while(|&&l| l <= j) {
                // The left lookup is shared by all triples with this (i, j);
                // a miss decides every one of them.
                let Some(lr) = self.left(j, l) else {
                    self.stats.checks += rights_here;
                    continue;
                };
                let rights = std::iter::once(0).chain(lengths.iter().copied());
                for r in rights.take_while(|&r| r <= room) {
                    self.stats.checks += 1;
                    let Some(rr) = self.right(j, r) else {
                        continue;
                    };
                    if let Some(pos) = self.grid(lr, rr, l) {
                        self.record(&mut state, j, l, r, pos);
                    }
                }
            }
        }
        state.best
    }

    fn pruned(&mut self) -> QueryResult {
        let index = self.index;
        let set = &index.lengths;
        let lengths = set.as_slice();
        let mut state = MatchState::new();
        for j in 1..=self.m {
            let room = self.m - j;

            // Left part at least as long as the right part.
            for &l in &lengths[set.first_above(state.ell / 2)..] {
                if l > j {
                    break;
                }
                let Some(lr) = self.left(j, l) else {
                    self.stats.checks += 1;
                    break;
                };
                let cap = l.min(room);
                // Right lengths r with l + r > ell, ascending, over {0} and the set.
                let mut idx = if state.ell < l {
                    None
                } else {
                    Some(set.first_above(state.ell - l))
                };
                loop {
                    let r = match idx {
                        None => 0,
                        Some(k) if k < lengths.len() => lengths[k],
                        Some(_) => break,
                    };
                    if r > cap {
                        break;
                    }
                    self.stats.checks += 1;
                    let Some(rr) = self.right(j, r) else {
                        break;
                    };
                    let Some(pos) = self.grid(lr, rr, l) else {
                        break;
                    };
                    self.record(&mut state, j, l, r, pos);
                    idx = Some(idx.map_or(0, |k| k + 1));
                }
            }

            // Right part longer than (or as long as) the left part.
            for &r in &lengths[set.first_above(state.ell / 2)..] {
                if r > room {
                    break;
                }
                let Some(rr) = self.right(j, r) else {
                    self.stats.checks += 1;
                    break;
                };
                let cap = r.min(j);
                let start = set.first_above(state.ell.saturating_sub(r));
                for &l in &lengths[start..] {
                    if l > cap {
                        break;
                    }
                    self.stats.checks += 1;
                    let Some(lr) = self.left(j, l) else {
                        break;
                    };
                    let Some(pos) = self.grid(lr, rr, l) else {
                        break;
                    };
                    self.record(&mut state, j, l, r, pos);
                }
            }
        }
        state.best
    }
}

/// Checks one candidate `(i, j, k)` (1-based: left part `P[i..j]`, right part
/// `P[j+1..k]`) and returns the 1-based text start of an occurrence of
/// `P[i..k]`, or `None` on any lookup miss or an empty rectangle. Lengths
/// outside the index's length set always miss.
pub fn candidate_check(index: &AlcsIndex, table: &PrefixFpTable, i: usize, j: usize, k: usize) -> Option<usize> {
    if i == 0 || i > j || j > k || k > table.len() {
        return None;
    }
    let (l, r) = (j - i + 1, k - j);
    let lr = index.left.get(l, table.range_fp(i - 1, j))?;
    let rr = index.right.get(r, table.range_fp(j, k))?;
    index
        .grid
        .report_any(lr.lo, lr.hi, rr.lo, rr.hi)
        .map(|p| p.boundary_pos as usize + 1 - l)
}

/// Runs a query and returns its work counters alongside the answer.
pub fn query_with_stats(index: &AlcsIndex, pattern: &[u8], algo: Algorithm) -> (QueryResult, QueryStats) {
    if pattern.is_empty() || index.z() == 0 {
        return (QueryResult::EMPTY, QueryStats::default());
    }
    let mut s = Searcher::new(index, pattern);
    let res = match algo {
        Algorithm::Naive => s.naive(),
        Algorithm::Pruned => s.pruned(),
    };
    (res, s.stats)
}

pub fn query(index: &AlcsIndex, pattern: &[u8], algo: Algorithm) -> QueryResult {
    query_with_stats(index, pattern, algo).0
}

/// Exhaustive search over every split and every pair of part lengths.
pub fn query_naive(index: &AlcsIndex, pattern: &[u8]) -> QueryResult {
    query(index, pattern, Algorithm::Naive)
}

/// Pruned search; returns a match of the same length as [`query_naive`].
pub fn query_pruned(index: &AlcsIndex, pattern: &[u8]) -> QueryResult {
    query(index, pattern, Algorithm::Pruned)
}

/// Whether the result's pattern span really occurs in `text` at `t_pos`.
/// Empty results verify vacuously.
pub fn verify_result(result: &QueryResult, pattern: &[u8], text: &[u8]) -> bool {
    if result.is_empty() {
        return true;
    }
    let Some(t_pos) = result.t_pos else {
        return false;
    };
    if result.p_start == 0
        || result.p_end < result.p_start
        || result.p_end > pattern.len()
        || result.p_end - result.p_start + 1 != result.length
        || t_pos == 0
        || t_pos - 1 + result.length > text.len()
    {
        return false;
    }
    pattern[result.p_start - 1..result.p_end] == text[t_pos - 1..t_pos - 1 + result.length]
}
