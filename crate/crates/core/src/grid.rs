//! The z x z boundary grid: one point per phrase boundary, stored as a
//! wavelet matrix over `y_of_x` for range emptiness and report-any.

use crate::error::{Error, Result};

const BLOCK_BITS: usize = 512;
const WORDS_PER_BLOCK: usize = BLOCK_BITS / 64;

/// Plain bit-vector with a one-level rank directory over 512-bit blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
struct RankBitVec {
    words: Vec<u64>,
    /// Number of ones before each block.
    blocks: Vec<u32>,
}

impl RankBitVec {
    fn from_bits(bits: impl ExactSizeIterator<Item = bool>) -> Self {
        let n = bits.len();
        let mut words = vec![0u64; n.div_ceil(64)];
        for (i, b) in bits.enumerate() {
            if b {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        let mut blocks = Vec::with_capacity(words.len() / WORDS_PER_BLOCK + 1);
        let mut acc = 0u32;
        for chunk in words.chunks(WORDS_PER_BLOCK) {
            blocks.push(acc);
            acc += chunk.iter().map(|w| w.count_ones()).sum::<u32>();
        }
        blocks.push(acc);
        Self { words, blocks }
    }

    /// Ones in `[0, i)`.
    #[inline]
    fn rank1(&self, i: usize) -> usize {
        let block = i / BLOCK_BITS;
        let mut r = self.blocks[block] as usize;
        let first = block * WORDS_PER_BLOCK;
        let word = i / 64;
        for w in &self.words[first..word] {
            r += w.count_ones() as usize;
        }
        if !i.is_multiple_of(64) {
            r += (self.words[word] & ((1u64 << (i % 64)) - 1)).count_ones() as usize;
        }
        r
    }

    #[inline]
    fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }
}

/// A point of the grid: 1-based ranks plus the 1-based text position of the
/// phrase end it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridPoint {
    pub x: u32,
    pub y: u32,
    pub boundary_pos: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryGrid {
    /// 0-based `y` for each 0-based `x`.
    y_of_x: Vec<u32>,
    x_of_y: Vec<u32>,
    boundary_of_x: Vec<u64>,
    /// Levels from the most significant bit down.
    levels: Vec<RankBitVec>,
    zeros: Vec<usize>,
}

impl BoundaryGrid {
    /// Builds the grid from points whose `x` and `y` are permutations of
    /// `1..=z`.
    pub fn build(points: &[GridPoint]) -> Result<Self> {
        let z = points.len();
        let mut y_of_x = vec![u32::MAX; z];
        let mut boundary_of_x = vec![0u64; z];
        for p in points {
            let (x, y) = (p.x as usize, p.y as usize);
            if x == 0 || x > z || y == 0 || y > z || y_of_x[x - 1] != u32::MAX {
                return Err(Error::NotPermutation);
            }
            y_of_x[x - 1] = p.y - 1;
            boundary_of_x[x - 1] = p.boundary_pos;
        }
        Self::from_parts(y_of_x, boundary_of_x)
    }

    /// Builds from 0-based `y_of_x` and per-x boundary positions.
    pub(crate) fn from_parts(y_of_x: Vec<u32>, boundary_of_x: Vec<u64>) -> Result<Self> {
        let z = y_of_x.len();
        if boundary_of_x.len() != z {
            return Err(Error::NotPermutation);
        }
        let mut x_of_y = vec![u32::MAX; z];
        for (x, &y) in y_of_x.iter().enumerate() {
            let y = y as usize;
            if y >= z || x_of_y[y] != u32::MAX {
                return Err(Error::NotPermutation);
            }
            x_of_y[y] = x as u32;
        }

        let width = if z <= 1 {
            1
        } else {
            (usize::BITS - (z - 1).leading_zeros()) as usize
        };
        let mut levels = Vec::with_capacity(width);
        let mut zeros = Vec::with_capacity(width);
        let mut cur = y_of_x.clone();
        for level in 0..width {
            let shift = width - 1 - level;
            let bv = RankBitVec::from_bits(cur.iter().map(|&v| (v >> shift) & 1 == 1));
            let (mut lo, hi): (Vec<u32>, Vec<u32>) =
                cur.iter().partition(|&&v| (v >> shift) & 1 == 0);
            zeros.push(lo.len());
            lo.extend(hi);
            cur = lo;
            levels.push(bv);
        }
        Ok(Self {
            y_of_x,
            x_of_y,
            boundary_of_x,
            levels,
            zeros,
        })
    }

    pub fn z(&self) -> usize {
        self.y_of_x.len()
    }

    /// 1-based y for each 1-based x (index 0 holds x = 1).
    pub fn y_of_x(&self) -> Vec<u32> {
        self.y_of_x.iter().map(|&y| y + 1).collect()
    }

    pub(crate) fn raw_y_of_x(&self) -> &[u32] {
        &self.y_of_x
    }

    pub fn boundary_of_x(&self) -> &[u64] {
        &self.boundary_of_x
    }

    /// Recovers the sequence from the wavelet levels alone.
    pub fn reconstruct(&self) -> Vec<u32> {
        let width = self.levels.len();
        (0..self.z())
            .map(|mut pos| {
                let mut v = 0u32;
                for level in 0..width {
                    let bv = &self.levels[level];
                    let bit = bv.rank1(pos + 1) - bv.rank1(pos);
                    v = (v << 1) | bit as u32;
                    pos = if bit == 1 {
                        self.zeros[level] + bv.rank1(pos)
                    } else {
                        bv.rank0(pos)
                    };
                }
                v + 1
            })
            .collect()
    }

    /// Whether any point lies in `[x_lo, x_hi] x [y_lo, y_hi]` (1-based,
    /// closed; an interval with `lo > hi` is empty).
    pub fn is_nonempty(&self, x_lo: u32, x_hi: u32, y_lo: u32, y_hi: u32) -> bool {
        self.report_any(x_lo, x_hi, y_lo, y_hi).is_some()
    }

    /// Some point in the rectangle, or `None` iff it is empty.
    pub fn report_any(&self, x_lo: u32, x_hi: u32, y_lo: u32, y_hi: u32) -> Option<GridPoint> {
        let z = self.z() as u32;
        let (x_lo, y_lo) = (x_lo.max(1), y_lo.max(1));
        let (x_hi, y_hi) = (x_hi.min(z), y_hi.min(z));
        if x_lo > x_hi || y_lo > y_hi {
            return None;
        }
        let width = self.levels.len();
        let y = self.find(
            0,
            x_lo as usize - 1,
            x_hi as usize,
            0,
            (1u64 << width) - 1,
            (y_lo - 1) as u64,
            (y_hi - 1) as u64,
        )?;
        let x = self.x_of_y[y as usize];
        Some(GridPoint {
            x: x + 1,
            y: y + 1,
            boundary_pos: self.boundary_of_x[x as usize],
        })
    }

    /// Some value in `[a, b]` among positions `[l, r)` of the node at `level`
    /// covering values `[node_lo, node_hi]`.
    #[allow(clippy::too_many_arguments)]
    fn find(
        &self,
        level: usize,
        l: usize,
        r: usize,
        node_lo: u64,
        node_hi: u64,
        a: u64,
        b: u64,
    ) -> Option<u32> {
        if l >= r || node_hi < a || node_lo > b {
            return None;
        }
        if a <= node_lo && node_hi <= b {
            return Some(self.descend_any(level, l, r, node_lo));
        }
        // Partial overlap implies the node spans more than one value.
        let bv = &self.levels[level];
        let mid = node_lo + ((node_hi - node_lo + 1) >> 1);
        let (l0, r0) = (bv.rank0(l), bv.rank0(r));
        if let Some(v) = self.find(level + 1, l0, r0, node_lo, mid - 1, a, b) {
            return Some(v);
        }
        let z = self.zeros[level];
        let (l1, r1) = (z + bv.rank1(l), z + bv.rank1(r));
        self.find(level + 1, l1, r1, mid, node_hi, a, b)
    }

    /// Follows any non-empty child down to a leaf; `[l, r)` is non-empty.
    fn descend_any(&self, mut level: usize, mut l: usize, mut r: usize, mut value: u64) -> u32 {
        let width = self.levels.len();
        while level < width {
            let bv = &self.levels[level];
            let (l0, r0) = (bv.rank0(l), bv.rank0(r));
            let shift = width - 1 - level;
            if r0 > l0 {
                l = l0;
                r = r0;
            } else {
                let z = self.zeros[level];
                l = z + bv.rank1(l);
                r = z + bv.rank1(r);
                value |= 1 << shift;
            }
            level += 1;
        }
        value as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pt(x: u32, y: u32, b: u64) -> GridPoint {
        GridPoint {
            x,
            y,
            boundary_pos: b,
        }
    }

    fn abaab() -> BoundaryGrid {
        BoundaryGrid::build(&[pt(1, 4, 1), pt(3, 2, 2), pt(2, 3, 4), pt(4, 1, 5)]).unwrap()
    }

    #[test]
    fn empty_grid() {
        let g = BoundaryGrid::build(&[]).unwrap();
        assert_eq!(g.z(), 0);
        assert!(!g.is_nonempty(1, 1, 1, 1));
        assert!(g.report_any(0, 10, 0, 10).is_none());
    }

    #[test]
    fn abaab_grid() {
        let g = abaab();
        assert_eq!(g.y_of_x(), vec![4, 3, 2, 1]);
        assert_eq!(g.reconstruct(), vec![4, 3, 2, 1]);
        assert!(g.is_nonempty(2, 2, 3, 4));
        assert!(!g.is_nonempty(1, 2, 2, 2));
        assert!(g.is_nonempty(1, 4, 1, 4));
        assert_eq!(g.report_any(2, 2, 3, 4), Some(pt(2, 3, 4)));
        assert_eq!(g.report_any(3, 2, 1, 4), None);
        assert_eq!(g.report_any(1, 4, 3, 2), None);
    }

    #[test]
    fn identity_diagonal() {
        let pts: Vec<_> = (1..=8).map(|i| pt(i, i, i as u64)).collect();
        let g = BoundaryGrid::build(&pts).unwrap();
        for i in 1..=8 {
            assert_eq!(g.report_any(i, i, i, i), Some(pt(i, i, i as u64)));
            if i < 8 {
                assert!(!g.is_nonempty(i, i, i + 1, 8));
            }
        }
    }

    #[test]
    fn rejects_non_permutation() {
        assert!(matches!(
            BoundaryGrid::build(&[pt(1, 1, 1), pt(1, 2, 2)]),
            Err(Error::NotPermutation)
        ));
        assert!(matches!(
            BoundaryGrid::build(&[pt(1, 3, 1), pt(2, 2, 2)]),
            Err(Error::NotPermutation)
        ));
    }

    #[test]
    fn rank_directory_across_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let bits: Vec<bool> = (0..3000).map(|_| rng.gen_bool(0.3)).collect();
        let bv = RankBitVec::from_bits(bits.iter().copied());
        let mut acc = 0;
        for i in 0..=bits.len() {
            assert_eq!(bv.rank1(i), acc);
            if i < bits.len() && bits[i] {
                acc += 1;
            }
        }
    }

    #[test]
    fn matches_point_scan_on_random_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &z in &[1usize, 2, 3, 5, 17, 64, 100, 511, 512] {
            let mut ys: Vec<u32> = (1..=z as u32).collect();
            ys.shuffle(&mut rng);
            let pts: Vec<_> = ys
                .iter()
                .enumerate()
                .map(|(x, &y)| pt(x as u32 + 1, y, 10 * x as u64))
                .collect();
            let g = BoundaryGrid::build(&pts).unwrap();
            assert_eq!(g.reconstruct(), ys);
            for _ in 0..500 {
                let mut r = || rng.gen_range(1..=z as u32);
                let (x0, x1, y0, y1) = (r(), r(), r(), r());
                let scan = pts.iter().any(|p| (x0..=x1).contains(&p.x) && (y0..=y1).contains(&p.y));
                let got = g.report_any(x0, x1, y0, y1);
                assert_eq!(got.is_some(), scan);
                if let Some(p) = got {
                    assert!((x0..=x1).contains(&p.x) && (y0..=y1).contains(&p.y));
                    assert_eq!(p, pts[p.x as usize - 1]);
                }
            }
        }
    }
}
