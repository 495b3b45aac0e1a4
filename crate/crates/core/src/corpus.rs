//! Seeded generator for repetitive corpora: one random base string repeated,
//! every copy after the first carrying independent point mutations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSpec {
    pub base_len: usize,
    pub repeats: usize,
    /// Per-character substitution probability in copies 2..=repeats.
    pub mut_rate: f64,
    pub seed: u64,
    pub alphabet: Vec<u8>,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        Self {
            base_len: 1024,
            repeats: 64,
            mut_rate: 0.001,
            seed: 7,
            alphabet: b"ACGT".to_vec(),
        }
    }
}

impl CorpusSpec {
    pub fn validate(&self) -> Result<(), String> {
        if self.alphabet.is_empty() {
            return Err("alphabet must not be empty".into());
        }
        if !(0.0..=1.0).contains(&self.mut_rate) {
            return Err(format!("mut-rate must be in [0,1], got {}", self.mut_rate));
        }
        if self.base_len.checked_mul(self.repeats).is_none() {
            return Err("corpus size overflows".into());
        }
        Ok(())
    }
}

/// Generates the corpus. Deterministic in `spec`.
pub fn generate(spec: &CorpusSpec) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let sigma = spec.alphabet.len();
    let base: Vec<u8> = (0..spec.base_len)
        .map(|_| spec.alphabet[rng.gen_range(0..sigma)])
        .collect();
    let mut out = Vec::with_capacity(spec.base_len * spec.repeats);
    for copy in 0..spec.repeats {
        let start = out.len();
        out.extend_from_slice(&base);
        if copy == 0 || spec.mut_rate == 0.0 || sigma < 2 {
            continue;
        }
        for c in &mut out[start..] {
            if rng.gen_bool(spec.mut_rate) {
                // Substitute a different symbol.
                let cur = spec.alphabet.iter().position(|a| a == c).unwrap();
                let shift = rng.gen_range(1..sigma);
                *c = spec.alphabet[(cur + shift) % sigma];
            }
        }
    }
    out
}

/// Draws `count` patterns of length `len` (clamped to the text length) as
/// random substrings of `text`, each byte substituted with probability
/// `mut_rate` by a uniformly random byte from `alphabet`.
pub fn sample_patterns(
    text: &[u8],
    count: usize,
    len: usize,
    mut_rate: f64,
    alphabet: &[u8],
    seed: u64,
) -> Vec<Vec<u8>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = len.min(text.len());
    (0..count)
        .map(|_| {
            let start = rng.gen_range(0..=text.len() - len);
            let mut p = text[start..start + len].to_vec();
            if !alphabet.is_empty() && mut_rate > 0.0 {
                for c in &mut p {
                    if rng.gen_bool(mut_rate) {
                        *c = alphabet[rng.gen_range(0..alphabet.len())];
                    }
                }
            }
            p
        })
        .collect()
}
