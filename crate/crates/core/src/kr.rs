//! Karp–Rabin polynomial fingerprints over byte strings.
//!
//! A fingerprint of `s` is `sum(s[t] * base^(|s|-1-t)) mod modulus`. The
//! modulus is the Mersenne prime 2^61 - 1 for every index; other moduli are
//! accepted only so small hand-checkable parameters can be used in tests.

use rand::Rng;

/// The Mersenne prime 2^61 - 1.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// Fingerprint parameters shared by an index and every query run against it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KrParams {
    base: u64,
    modulus: u64,
}

impl KrParams {
    /// Parameters over 2^61 - 1 with the given base.
    ///
    /// Panics if `base` is outside `[2, modulus - 2]`.
    pub fn new(base: u64) -> Self {
        Self::with_modulus(base, MERSENNE_61)
    }

    /// Parameters with an explicit modulus. `modulus` must be prime; this is
    /// not checked.
    pub fn with_modulus(base: u64, modulus: u64) -> Self {
        assert!(modulus >= 5, "modulus too small");
        assert!(
            (2..=modulus - 2).contains(&base),
            "base must lie in [2, modulus - 2]"
        );
        Self { base, modulus }
    }

    /// Degenerate parameters (any base, e.g. 1) for hand-checking sums.
    #[doc(hidden)]
    pub fn unchecked(base: u64, modulus: u64) -> Self {
        Self { base, modulus }
    }

    /// Draws a base uniformly from `[2, 2^61 - 3]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::new(rng.gen_range(2..=MERSENNE_61 - 2))
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        let prod = a as u128 * b as u128;
        if self.modulus == MERSENNE_61 {
            let lo = (prod as u64) & MERSENNE_61;
            let hi = (prod >> 61) as u64;
            let s = lo + hi;
            if s >= MERSENNE_61 {
                s - MERSENNE_61
            } else {
                s
            }
        } else {
            (prod % self.modulus as u128) as u64
        }
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    fn push(&self, fp: u64, byte: u8) -> u64 {
        self.add(self.mul(fp, self.base), byte as u64 % self.modulus)
    }

    /// Fingerprint of a whole string. The empty string maps to 0.
    pub fn fp_of(&self, s: &[u8]) -> u64 {
        s.iter().fold(0, |fp, &b| self.push(fp, b))
    }
}

/// Prefix fingerprints and powers of the base for one string, giving
/// constant-time fingerprints of any substring.
#[derive(Debug, Clone)]
pub struct PrefixFpTable {
    params: KrParams,
    prefix_fps: Vec<u64>,
    powers: Vec<u64>,
}

impl PrefixFpTable {
    pub fn build(s: &[u8], params: KrParams) -> Self {
        let mut prefix_fps = Vec::with_capacity(s.len() + 1);
        let mut powers = Vec::with_capacity(s.len() + 1);
        prefix_fps.push(0);
        powers.push(1 % params.modulus);
        for &b in s {
            let last = *prefix_fps.last().unwrap();
            prefix_fps.push(params.push(last, b));
            let p = *powers.last().unwrap();
            powers.push(params.mul(p, params.base));
        }
        Self {
            params,
            prefix_fps,
            powers,
        }
    }

    /// Length of the underlying string.
    pub fn len(&self) -> usize {
        self.prefix_fps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn params(&self) -> KrParams {
        self.params
    }

    pub fn prefix_fps(&self) -> &[u64] {
        &self.prefix_fps
    }

    pub fn powers(&self) -> &[u64] {
        &self.powers
    }

    /// Fingerprint of the 1-based closed span `s[i..=j]`; `i == j + 1` is the
    /// empty substring. Returns `None` when the span is out of bounds.
    pub fn substring_fp(&self, i: usize, j: usize) -> Option<u64> {
        if i == 0 || i > j + 1 || j > self.len() {
            return None;
        }
        Some(self.range_fp(i - 1, j))
    }

    /// Fingerprint of the 0-based half-open range `s[start..end]`.
    ///
    /// Caller guarantees `start <= end <= len`.
    #[inline]
    pub fn range_fp(&self, start: usize, end: usize) -> u64 {
        debug_assert!(start <= end && end <= self.len());
        let p = &self.params;
        let shifted = p.mul(self.prefix_fps[start], self.powers[end - start]);
        p.add(self.prefix_fps[end], p.modulus - shifted)
    }
}
