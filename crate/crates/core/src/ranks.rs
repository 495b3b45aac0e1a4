//! Boundary ranking and the two fingerprint-keyed rank maps.
//!
//! Boundary `t` (0-based here, phrase end `e_t`) contributes the text prefix
//! `T[1..e_t]`, ranked co-lexicographically, and the suffix `T[e_t+1..n]`,
//! ranked lexicographically (the empty suffix after the last phrase first).
//! Both orders come from suffix arrays of the text and of its reversal; the
//! LCP of neighbours in each order groups boundaries that share a context of
//! a given length into contiguous rank intervals.

use std::collections::HashMap;

use crate::kr::{KrParams, PrefixFpTable};
use crate::lengths::LengthSet;
use crate::lz::Lz77Parse;
use crate::sa;

/// Closed, 1-based, non-empty rank interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RankRange {
    pub lo: u32,
    pub hi: u32,
}

impl RankRange {
    pub fn new(lo: u32, hi: u32) -> Self {
        debug_assert!(lo >= 1 && lo <= hi);
        Self { lo, hi }
    }

    pub fn contains(&self, other: &RankRange) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

/// Map from `(length, fingerprint)` to the rank interval of the boundaries
/// whose left (or right) context of that length has that fingerprint.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RangeMap {
    entries: HashMap<(u32, u64), RankRange>,
}

impl RangeMap {
    #[inline]
    pub fn get(&self, len: usize, fp: u64) -> Option<RankRange> {
        self.entries.get(&(len as u32, fp)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Returns false if the key was already present.
    pub(crate) fn insert(&mut self, len: usize, fp: u64, range: RankRange) -> bool {
        self.entries.insert((len as u32, fp), range).is_none()
    }

    /// Entries ordered by `(length, fingerprint)`.
    pub fn sorted_entries(&self) -> Vec<(u32, u64, RankRange)> {
        let mut v: Vec<_> = self.entries.iter().map(|(&(l, f), &r)| (l, f, r)).collect();
        v.sort_unstable_by_key(|&(l, f, _)| (l, f));
        v
    }

    pub(crate) fn from_entries(entries: impl IntoIterator<Item = (u32, u64, RankRange)>) -> Self {
        Self {
            entries: entries.into_iter().map(|(l, f, r)| ((l, f), r)).collect(),
        }
    }
}

/// Per-boundary ranks, both 1-based permutations of `1..=z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedBoundaries {
    pub x_rank: Vec<u32>,
    pub y_rank: Vec<u32>,
}

/// Boundaries in one sort order, with what is needed to group them.
#[derive(Debug, Clone)]
struct SortedBoundaries {
    /// Boundary indices in rank order.
    order: Vec<usize>,
    /// `adj[a]` = common context length of `order[a-1]` and `order[a]`.
    adj: Vec<usize>,
    /// Context length available at each rank (prefix or suffix length).
    avail: Vec<usize>,
}

impl SortedBoundaries {
    fn ranks(&self) -> Vec<u32> {
        let mut r = vec![0u32; self.order.len()];
        for (a, &t) in self.order.iter().enumerate() {
            r[t] = a as u32 + 1;
        }
        r
    }

    /// Calls `emit(rank_of_first, lo, hi)` for every maximal run of ranks
    /// sharing a context of length `d`.
    fn for_each_group(&self, d: usize, mut emit: impl FnMut(usize, RankRange)) {
        let z = self.order.len();
        let mut a = 0;
        while a < z {
            if self.avail[a] < d {
                a += 1;
                continue;
            }
            let lo = a;
            while a + 1 < z && self.adj[a + 1] >= d {
                a += 1;
            }
            emit(lo, RankRange::new(lo as u32 + 1, a as u32 + 1));
            a += 1;
        }
    }
}

/// Two distinct boundary contexts of one length share a fingerprint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Collision;

/// Construction-time sort orders of the boundaries (O(n) scaffolding).
pub struct BoundaryScaffold {
    ends: Vec<usize>,
    colex: SortedBoundaries,
    lex: SortedBoundaries,
}

impl BoundaryScaffold {
    pub fn new(text: &[u8], parse: &Lz77Parse) -> Self {
        let ends = parse.ends().to_vec();
        Self {
            colex: colex_order(text, &ends),
            lex: lex_order(text, &ends),
            ends,
        }
    }

    pub fn ranks(&self) -> RankedBoundaries {
        RankedBoundaries {
            x_rank: self.colex.ranks(),
            y_rank: self.lex.ranks(),
        }
    }

    /// Left map: for each boundary and each `d` in `lengths` with `d <= e_t`,
    /// the context `T[e_t-d+1..e_t]`.
    pub fn build_left_map(
        &self,
        text: &[u8],
        lengths: &LengthSet,
        kr: KrParams,
    ) -> Result<RangeMap, Collision> {
        let table = PrefixFpTable::build(text, kr);
        let mut map = RangeMap::default();
        for &d in lengths.as_slice() {
            let mut ok = true;
            self.colex.for_each_group(d, |first, range| {
                let e = self.ends[self.colex.order[first]];
                ok &= map.insert(d, table.range_fp(e - d, e), range);
            });
            if !ok {
                return Err(Collision);
            }
        }
        Ok(map)
    }

    /// Right map: for each boundary and each `d` in `lengths` with
    /// `e_t + d <= n`, the context `T[e_t+1..e_t+d]`; plus the empty string
    /// mapped to `[1, z]`.
    pub fn build_right_map(
        &self,
        text: &[u8],
        lengths: &LengthSet,
        kr: KrParams,
    ) -> Result<RangeMap, Collision> {
        let table = PrefixFpTable::build(text, kr);
        let mut map = RangeMap::default();
        let z = self.ends.len();
        if z > 0 {
            map.insert(0, 0, RankRange::new(1, z as u32));
        }
        for &d in lengths.as_slice() {
            let mut ok = true;
            self.lex.for_each_group(d, |first, range| {
                let e = self.ends[self.lex.order[first]];
                ok &= map.insert(d, table.range_fp(e, e + d), range);
            });
            if !ok {
                return Err(Collision);
            }
        }
        Ok(map)
    }
}

/// Co-lex order of the prefixes `T[1..e_t]`, via the suffixes of reversed T.
fn colex_order(text: &[u8], ends: &[usize]) -> SortedBoundaries {
    let n = text.len();
    if ends.is_empty() {
        return SortedBoundaries {
            order: Vec::new(),
            adj: Vec::new(),
            avail: Vec::new(),
        };
    }
    let rev: Vec<u8> = text.iter().rev().copied().collect();
    let sa_r = sa::suffix_array(&rev);
    let rank_r = sa::inverse(&sa_r);
    let lcp_r = sa::lcp_array(&rev, &sa_r, &rank_r);

    let mut order: Vec<usize> = (0..ends.len()).collect();
    order.sort_unstable_by_key(|&t| rank_r[n - ends[t]]);
    let keys: Vec<usize> = order.iter().map(|&t| rank_r[n - ends[t]]).collect();
    let adj = sa::adjacent_lcps(&lcp_r, &keys);
    let avail = order.iter().map(|&t| ends[t]).collect();
    SortedBoundaries { order, adj, avail }
}

/// Lex order of the suffixes `T[e_t+1..n]`; the empty suffix (last boundary)
/// sorts first.
fn lex_order(text: &[u8], ends: &[usize]) -> SortedBoundaries {
    let n = text.len();
    let z = ends.len();
    if z == 0 {
        return SortedBoundaries {
            order: Vec::new(),
            adj: Vec::new(),
            avail: Vec::new(),
        };
    }
    let sa_t = sa::suffix_array(text);
    let rank_t = sa::inverse(&sa_t);
    let lcp_t = sa::lcp_array(text, &sa_t, &rank_t);

    let mut inner: Vec<usize> = (0..z - 1).collect();
    inner.sort_unstable_by_key(|&t| rank_t[ends[t]]);
    let keys: Vec<usize> = inner.iter().map(|&t| rank_t[ends[t]]).collect();
    let inner_adj = sa::adjacent_lcps(&lcp_t, &keys);

    let mut order = Vec::with_capacity(z);
    order.push(z - 1);
    order.extend_from_slice(&inner);
    let mut adj = Vec::with_capacity(z);
    adj.push(0);
    adj.extend_from_slice(&inner_adj);
    let avail = order.iter().map(|&t| n - ends[t]).collect();
    SortedBoundaries { order, adj, avail }
}

/// Boundary ranks for a parse of `text`.
pub fn rank_boundaries(text: &[u8], parse: &Lz77Parse) -> RankedBoundaries {
    BoundaryScaffold::new(text, parse).ranks()
}
