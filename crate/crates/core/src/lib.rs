//! Compressed index over the LZ77 parse of a text that answers
//! approximately-longest-common-substring queries.
//!
//! Given a text `T` and `0 < eps < 1`, [`AlcsIndex::build`] stores
//! O(z log n) words, where `z` is the number of LZ77 phrases. For a pattern
//! `P`, [`query_pruned`] returns a substring of `P` occurring in `T` whose
//! length exceeds `(1 - eps)` times the length of a longest common substring
//! of `P` and `T`, barring Karp–Rabin fingerprint collisions.
//!
//! ```
//! use alcs::{build_index, query_pruned, BuildOptions};
//!
//! let index = build_index(b"abaab", 0.5, BuildOptions { seed: Some(1), ..Default::default() }).unwrap();
//! let hit = query_pruned(&index, b"aab");
//! assert_eq!((hit.p_start, hit.p_end, hit.t_pos), (1, 3, Some(3)));
//! ```

pub mod corpus;
pub mod error;
pub mod grid;
pub mod index;
pub mod io;
pub mod kr;
pub mod lengths;
pub mod lz;
pub mod oracle;
pub mod query;
pub mod ranks;
pub mod sa;

pub use error::{Error, Result};
pub use grid::{BoundaryGrid, GridPoint};
pub use index::{build_index, AlcsIndex, BuildOptions};
pub use kr::{KrParams, PrefixFpTable};
pub use lengths::LengthSet;
pub use lz::{lz77_parse, Lz77Parse, Phrase};
pub use oracle::{exact_lcs, LcsAnswer};
pub use query::{query, query_naive, query_pruned, query_with_stats, verify_result, Algorithm, QueryResult, QueryStats};
pub use ranks::{rank_boundaries, RangeMap, RankRange, RankedBoundaries};
