//! Index construction from a text and an approximation parameter.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::{BoundaryGrid, GridPoint};
use crate::kr::KrParams;
use crate::lengths::{check_epsilon, LengthSet};
use crate::lz::lz77_parse;
use crate::ranks::{BoundaryScaffold, RangeMap};

const MAX_BASE_DRAWS: usize = 32;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Seed for the fingerprint base; drawn from OS entropy when absent.
    pub seed: Option<u64>,
    /// Cap on the lengths indexed. Patterns may be longer, but only matches
    /// whose parts round down to indexed lengths are guaranteed.
    pub max_pattern_len: Option<usize>,
}

/// The compressed index. Holds no copy of the text.
#[derive(Debug, Clone, PartialEq)]
pub struct AlcsIndex {
    pub(crate) kr: KrParams,
    pub(crate) seed: u64,
    pub(crate) n: usize,
    pub(crate) lengths: LengthSet,
    pub(crate) left: RangeMap,
    pub(crate) right: RangeMap,
    pub(crate) grid: BoundaryGrid,
}

impl AlcsIndex {
    pub fn build(text: &[u8], epsilon: f64, options: BuildOptions) -> Result<Self> {
        let seed = options.seed.unwrap_or_else(rand::random);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draws = std::iter::from_fn(move || Some(KrParams::random(&mut rng)));
        Self::build_with_bases(text, epsilon, options.max_pattern_len, seed, &mut draws)
    }

    /// Build loop with an injectable source of fingerprint parameters; a new
    /// draw is taken whenever two distinct contexts collide.
    pub(crate) fn build_with_bases(
        text: &[u8],
        epsilon: f64,
        max_pattern_len: Option<usize>,
        seed: u64,
        draws: &mut dyn Iterator<Item = KrParams>,
    ) -> Result<Self> {
        check_epsilon(epsilon)?;
        if max_pattern_len == Some(0) {
            return Err(Error::InvalidMaxLen);
        }
        if text.len() >= u32::MAX as usize {
            return Err(Error::TextTooLong(text.len()));
        }
        let n = text.len();
        let max_len = match max_pattern_len {
            Some(m) => m.min(n).max(1),
            None => n.max(1),
        };
        let lengths = LengthSet::new(epsilon, max_len)?;
        let parse = lz77_parse(text);
        let scaffold = BoundaryScaffold::new(text, &parse);
        let ranks = scaffold.ranks();

        let points: Vec<GridPoint> = parse
            .ends()
            .iter()
            .enumerate()
            .map(|(t, &e)| GridPoint {
                x: ranks.x_rank[t],
                y: ranks.y_rank[t],
                boundary_pos: e as u64,
            })
            .collect();
        let grid = BoundaryGrid::build(&points)?;

        for kr in draws.take(MAX_BASE_DRAWS) {
            let Ok(left) = scaffold.build_left_map(text, &lengths, kr) else {
                continue;
            };
            let Ok(right) = scaffold.build_right_map(text, &lengths, kr) else {
                continue;
            };
            return Ok(Self {
                kr,
                seed,
                n,
                lengths,
                left,
                right,
                grid,
            });
        }
        Err(Error::PersistentCollisions(MAX_BASE_DRAWS))
    }

    pub fn epsilon(&self) -> f64 {
        self.lengths.epsilon()
    }

    /// Text length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of LZ77 phrases.
    pub fn z(&self) -> usize {
        self.grid.z()
    }

    pub fn kr(&self) -> KrParams {
        self.kr
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn lengths(&self) -> &LengthSet {
        &self.lengths
    }

    pub fn left_map(&self) -> &RangeMap {
        &self.left
    }

    pub fn right_map(&self) -> &RangeMap {
        &self.right
    }

    pub fn grid(&self) -> &BoundaryGrid {
        &self.grid
    }

    /// Total stored map entries.
    pub fn entry_count(&self) -> usize {
        self.left.len() + self.right.len()
    }
}

/// Convenience wrapper around [`AlcsIndex::build`].
pub fn build_index(text: &[u8], epsilon: f64, options: BuildOptions) -> Result<AlcsIndex> {
    AlcsIndex::build(text, epsilon, options)
}
