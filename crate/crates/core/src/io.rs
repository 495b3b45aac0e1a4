//! Binary index file format (all integers little-endian).
//!
//! ```text
//! magic            4 bytes  "ALCS"
//! format_version   u32      1 (modulus 2^61 - 1)
//! epsilon          f64
//! n                u64
//! z                u64
//! kr_base          u64
//! kr_seed          u64
//! max_len          u64
//! length_count     u32, then length_count x u32
//! left map         u64 entry count, then per entry (sorted by length, fp):
//!                  length u32, fingerprint u64, lo u32, hi u32
//! right map        same layout
//! grid             z x u32 y_of_x (1-based), then z x u64 boundary_of_x
//! checksum         u32 CRC-32 (IEEE) of every preceding byte
//! ```
//!
//! The wavelet levels are rebuilt on load.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::grid::BoundaryGrid;
use crate::index::AlcsIndex;
use crate::kr::{KrParams, MERSENNE_61};
use crate::lengths::LengthSet;
use crate::ranks::{RangeMap, RankRange};

pub const MAGIC: [u8; 4] = *b"ALCS";
pub const FORMAT_VERSION: u32 = 1;

const MAP_ENTRY_BYTES: usize = 4 + 8 + 4 + 4;

/// Serializes into a fresh buffer.
pub fn to_bytes(index: &AlcsIndex) -> Vec<u8> {
    let mut b = Vec::with_capacity(
        64 + 4 * index.lengths.len()
            + MAP_ENTRY_BYTES * index.entry_count()
            + 12 * index.z(),
    );
    b.extend_from_slice(&MAGIC);
    b.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    b.extend_from_slice(&index.epsilon().to_le_bytes());
    b.extend_from_slice(&(index.n as u64).to_le_bytes());
    b.extend_from_slice(&(index.z() as u64).to_le_bytes());
    b.extend_from_slice(&index.kr.base().to_le_bytes());
    b.extend_from_slice(&index.seed.to_le_bytes());
    b.extend_from_slice(&(index.lengths.max_len() as u64).to_le_bytes());
    b.extend_from_slice(&(index.lengths.len() as u32).to_le_bytes());
    for &l in index.lengths.as_slice() {
        b.extend_from_slice(&(l as u32).to_le_bytes());
    }
    for map in [&index.left, &index.right] {
        let entries = map.sorted_entries();
        b.extend_from_slice(&(entries.len() as u64).to_le_bytes());
        for (len, fp, r) in entries {
            b.extend_from_slice(&len.to_le_bytes());
            b.extend_from_slice(&fp.to_le_bytes());
            b.extend_from_slice(&r.lo.to_le_bytes());
            b.extend_from_slice(&r.hi.to_le_bytes());
        }
    }
    for &y in index.grid.raw_y_of_x() {
        b.extend_from_slice(&(y + 1).to_le_bytes());
    }
    for &pos in index.grid.boundary_of_x() {
        b.extend_from_slice(&pos.to_le_bytes());
    }
    let crc = crc32fast::hash(&b);
    b.extend_from_slice(&crc.to_le_bytes());
    b
}

/// Writes the index and returns the number of bytes written.
pub fn save<W: Write>(index: &AlcsIndex, mut out: W) -> Result<usize> {
    let bytes = to_bytes(index);
    out.write_all(&bytes)?;
    out.flush()?;
    Ok(bytes.len())
}

/// Reads and validates an index.
pub fn load<R: Read>(mut input: R) -> Result<AlcsIndex> {
    let mut buf = Vec::new();
    input.read_to_end(&mut buf)?;
    from_bytes(&buf)
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        if self.buf.len() - self.pos < k {
            return Err(Error::Truncated);
        }
        let s = &self.buf[self.pos..self.pos + k];
        self.pos += k;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    /// Fails with `Truncated` unless `count` records of `size` bytes remain.
    fn reserve(&self, count: u64, size: usize) -> Result<usize> {
        let need = count.checked_mul(size as u64).ok_or(Error::Truncated)?;
        if need > (self.buf.len() - self.pos) as u64 {
            return Err(Error::Truncated);
        }
        Ok(count as usize)
    }
}

fn malformed(what: &str) -> Error {
    Error::Malformed(what.to_string())
}

pub fn from_bytes(buf: &[u8]) -> Result<AlcsIndex> {
    let mut c = Cursor { buf, pos: 0 };
    let magic: [u8; 4] = c.take(4)?.try_into().unwrap();
    if magic != MAGIC {
        return Err(Error::BadMagic(magic));
    }
    let version = c.u32()?;
    if version != FORMAT_VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let epsilon = c.f64()?;
    let n = c.u64()?;
    let z = c.u64()?;
    let base = c.u64()?;
    let seed = c.u64()?;
    let max_len = c.u64()?;
    let count = c.u32()? as u64;
    let count = c.reserve(count, 4)?;
    let mut lengths = Vec::with_capacity(count);
    for _ in 0..count {
        lengths.push(c.u32()? as usize);
    }
    let mut maps = Vec::with_capacity(2);
    for _ in 0..2 {
        let count = c.u64()?;
        let count = c.reserve(count, MAP_ENTRY_BYTES)?;
        let mut entries = Vec::with_capacity(count);
        for _ in 0..count {
            let len = c.u32()?;
            let fp = c.u64()?;
            let lo = c.u32()?;
            let hi = c.u32()?;
            entries.push((len, fp, RankRange { lo, hi }));
        }
        maps.push(entries);
    }
    let zc = c.reserve(z, 4 + 8)?;
    let mut y_of_x = Vec::with_capacity(zc);
    for _ in 0..zc {
        y_of_x.push(c.u32()?.wrapping_sub(1));
    }
    let mut boundary_of_x = Vec::with_capacity(zc);
    for _ in 0..zc {
        boundary_of_x.push(c.u64()?);
    }
    let body_end = c.pos;
    let stored = c.u32()?;
    if c.pos != buf.len() {
        return Err(malformed("trailing bytes after checksum"));
    }
    let computed = crc32fast::hash(&buf[..body_end]);
    if stored != computed {
        return Err(Error::ChecksumMismatch { stored, computed });
    }

    if !(2..=MERSENNE_61 - 2).contains(&base) {
        return Err(malformed("fingerprint base"));
    }
    if z > n || (n > 0 && z == 0) {
        return Err(malformed("phrase count"));
    }
    let lengths = LengthSet::from_parts(epsilon, max_len as usize, lengths)?;
    let right = maps.pop().unwrap();
    let left = maps.pop().unwrap();
    for entries in [&left, &right] {
        if entries.windows(2).any(|w| (w[0].0, w[0].1) >= (w[1].0, w[1].1)) {
            return Err(malformed("map entries not strictly sorted"));
        }
        if entries.iter().any(|(_, _, r)| r.lo == 0 || r.lo > r.hi || r.hi as u64 > z) {
            return Err(malformed("map interval out of range"));
        }
    }
    let grid = BoundaryGrid::from_parts(y_of_x, boundary_of_x)
        .map_err(|_| malformed("grid is not a permutation"))?;
    Ok(AlcsIndex {
        kr: KrParams::new(base),
        seed,
        n: n as usize,
        lengths,
        left: RangeMap::from_entries(left),
        right: RangeMap::from_entries(right),
        grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::{build_index, BuildOptions};

    fn abaab() -> AlcsIndex {
        build_index(b"abaab", 0.5, BuildOptions { seed: Some(3), max_pattern_len: None }).unwrap()
    }

    #[test]
    fn round_trip() {
        let idx = abaab();
        let mut buf = Vec::new();
        let written = save(&idx, &mut buf).unwrap();
        assert_eq!(written, buf.len());
        assert_eq!(load(&buf[..]).unwrap(), idx);
        assert_eq!(to_bytes(&idx), buf);
    }

    #[test]
    fn exact_layout_of_small_index() {
        let idx = abaab();
        let b = to_bytes(&idx);
        // header 56 + lengths 4 + 3*4 + 2 maps (8 + 6*20) + grid 4*12 + crc 4
        assert_eq!(b.len(), 56 + 4 + 12 + 2 * (8 + 120) + 48 + 4);
        assert_eq!(&b[0..4], b"ALCS");
        assert_eq!(u32::from_le_bytes(b[4..8].try_into().unwrap()), 1);
        assert_eq!(f64::from_le_bytes(b[8..16].try_into().unwrap()), 0.5);
        assert_eq!(u64::from_le_bytes(b[16..24].try_into().unwrap()), 5);
        assert_eq!(u64::from_le_bytes(b[24..32].try_into().unwrap()), 4);
        assert_eq!(u64::from_le_bytes(b[32..40].try_into().unwrap()), idx.kr().base());
        assert_eq!(u64::from_le_bytes(b[40..48].try_into().unwrap()), 3);
        assert_eq!(u64::from_le_bytes(b[48..56].try_into().unwrap()), 5);
        assert_eq!(u32::from_le_bytes(b[56..60].try_into().unwrap()), 3);
        let grid_start = b.len() - 4 - 48;
        let ys: Vec<u32> = (0..4)
            .map(|k| u32::from_le_bytes(b[grid_start + 4 * k..grid_start + 4 * k + 4].try_into().unwrap()))
            .collect();
        assert_eq!(ys, vec![4, 3, 2, 1]);
    }

    #[test]
    fn empty_index_file() {
        let idx = build_index(b"", 0.5, BuildOptions { seed: Some(1), max_pattern_len: None }).unwrap();
        let b = to_bytes(&idx);
        let back = from_bytes(&b).unwrap();
        assert_eq!(back.z(), 0);
        assert_eq!(back, idx);
    }

    #[test]
    fn named_errors() {
        let b = to_bytes(&abaab());

        let mut bad = b.clone();
        bad[0] = b'X';
        assert!(matches!(from_bytes(&bad), Err(Error::BadMagic(_))));

        let mut bad = b.clone();
        bad[4] = 9;
        assert!(matches!(from_bytes(&bad), Err(Error::UnsupportedVersion(9))));

        let mut bad = b.clone();
        let last = bad.len() - 1;
        bad[last] ^= 0xff;
        assert!(matches!(from_bytes(&bad), Err(Error::ChecksumMismatch { .. })));

        // A fingerprint byte inside the first left-map entry.
        let mut bad = b.clone();
        bad[60 + 12 + 8 + 6] ^= 0x01;
        assert!(matches!(from_bytes(&bad), Err(Error::ChecksumMismatch { .. })));

        for cut in [0, 3, 10, 60, b.len() / 2, b.len() - 1] {
            assert!(matches!(from_bytes(&b[..cut]), Err(Error::Truncated)), "cut {cut}");
        }

        let mut long = b.clone();
        long.push(0);
        assert!(matches!(from_bytes(&long), Err(Error::Malformed(_))));
    }
}
