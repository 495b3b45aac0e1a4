//! Geometric length grid `{ceil((1/(1-eps))^e) : e >= 0}`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct LengthSet {
    lengths: Vec<usize>,
    epsilon: f64,
    max_len: usize,
}

impl LengthSet {
    /// All distinct values of `ceil((1/(1-epsilon))^e)` in `[1, max_len]`,
    /// ascending.
    pub fn new(epsilon: f64, max_len: usize) -> Result<Self> {
        check_epsilon(epsilon)?;
        if max_len == 0 {
            return Err(Error::InvalidMaxLen);
        }
        let ratio = 1.0 / (1.0 - epsilon);
        let value = |e: u64| (ratio.powf(e as f64)).ceil();
        let log_ratio = ratio.ln();

        let mut lengths = vec![1usize];
        let mut e = 0u64;
        loop {
            let cur = *lengths.last().unwrap() as f64;
            // Jump close to the first exponent whose value exceeds `cur`, then
            // settle on the smallest such exponent.
            let mut next = ((cur.ln() / log_ratio).floor() as u64).max(e + 1);
            while value(next) <= cur {
                next += 1;
            }
            while next > e + 1 && value(next - 1) > cur {
                next -= 1;
            }
            let v = value(next);
            if !v.is_finite() || v > max_len as f64 {
                break;
            }
            lengths.push(v as usize);
            e = next;
        }
        Ok(Self {
            lengths,
            epsilon,
            max_len,
        })
    }

    /// Rebuilds a set from stored values, checking its shape.
    pub(crate) fn from_parts(epsilon: f64, max_len: usize, lengths: Vec<usize>) -> Result<Self> {
        check_epsilon(epsilon).map_err(|e| Error::Malformed(e.to_string()))?;
        if lengths.first() != Some(&1)
            || lengths.windows(2).any(|w| w[0] >= w[1])
            || lengths.last().is_some_and(|&l| l > max_len)
        {
            return Err(Error::Malformed("length set".into()));
        }
        Ok(Self {
            lengths,
            epsilon,
            max_len,
        })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.lengths
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Index of the first length strictly greater than `bound`.
    #[inline]
    pub fn first_above(&self, bound: usize) -> usize {
        self.lengths.partition_point(|&l| l <= bound)
    }

    /// Largest member not exceeding `len`, if any.
    pub fn round_down(&self, len: usize) -> Option<usize> {
        let k = self.first_above(len);
        (k > 0).then(|| self.lengths[k - 1])
    }
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(epsilon))
    }
}
