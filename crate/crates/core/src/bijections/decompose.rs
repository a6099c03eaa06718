use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::patterns::{lr_minima, reduce_slice, restore_letters, Permutation, Word};

/// Complements a distinct-letter word in place of its own letter set: the
/// `j`-th smallest letter becomes the `j`-th largest.
pub fn prime_map(w: &Word) -> Result<Word> {
    if !w.has_distinct_letters() {
        return Err(Error::domain(format!("{w} has repeated letters")));
    }
    let mut sorted = w.letters().to_vec();
    sorted.sort_unstable();
    let m = sorted.len();
    Word::new(
        reduce_slice(w.letters())
            .into_iter()
            .map(|r| sorted[m - r as usize])
            .collect(),
    )
}

pub(crate) fn prime_slice(w: &[u8]) -> Vec<u8> {
    let mut sorted = w.to_vec();
    sorted.sort_unstable();
    let m = sorted.len();
    reduce_slice(w).into_iter().map(|r| sorted[m - r as usize]).collect()
}

/// Runs a map defined on permutations over a word with distinct letters by
/// reducing first and restoring the letters afterwards.
pub(crate) fn on_word(w: &[u8], f: impl FnOnce(&[u8]) -> Vec<u8>) -> Vec<u8> {
    if w.is_empty() {
        return Vec::new();
    }
    restore_letters(w, &f(&reduce_slice(w)))
}

/// `π = m_t α_t ⋯ m_1 α_1` split at its left-to-right minima, listed left to
/// right (so `minima` decreases and ends with 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LRDecomposition {
    pub minima: Vec<u8>,
    pub segments: Vec<Vec<u8>>,
}

impl LRDecomposition {
    pub fn of(pi: &Permutation) -> Self {
        Self::of_slice(pi.letters())
    }

    pub(crate) fn of_slice(l: &[u8]) -> Self {
        let starts: Vec<usize> = lr_minima(l).map(|(i, _)| i).collect();
        let mut minima = Vec::with_capacity(starts.len());
        let mut segments = Vec::with_capacity(starts.len());
        for (j, &s) in starts.iter().enumerate() {
            let end = starts.get(j + 1).copied().unwrap_or(l.len());
            minima.push(l[s]);
            segments.push(l[s + 1..end].to_vec());
        }
        LRDecomposition { minima, segments }
    }

    pub fn reassemble(&self) -> Vec<u8> {
        self.minima
            .iter()
            .zip(&self.segments)
            .flat_map(|(&m, seg)| std::iter::once(m).chain(seg.iter().copied()))
            .collect()
    }
}

/// `π = P_{i+1} ⋯ P_1 n σ`: the letters left of the maximum, cut into parts
/// by the letters of `σ`. `parts[0]` is the leftmost part and holds the
/// largest letters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopDecomposition {
    pub parts: Vec<Vec<u8>>,
    pub pivot: u8,
    pub tail: Vec<u8>,
}

impl TopDecomposition {
    /// Fails when the left part is not a concatenation of value bands, which
    /// cannot happen for avoiders of 13-4-2.
    pub fn of(pi: &Permutation) -> Result<Self> {
        Self::of_slice(pi.letters())
            .ok_or_else(|| Error::domain(format!("{pi} has no band decomposition at its maximum")))
    }

    pub(crate) fn of_slice(l: &[u8]) -> Option<Self> {
        let at = (0..l.len()).max_by_key(|&i| l[i])?;
        let (left, tail) = (&l[..at], &l[at + 1..]);
        let mut cuts: Vec<u8> = tail.to_vec();
        cuts.sort_unstable();
        let mut bounds = vec![0u8];
        bounds.extend(cuts);
        bounds.push(l[at]);
        // bands from the top down, matching their left-to-right order
        let parts: Vec<Vec<u8>> = bounds
            .windows(2)
            .rev()
            .map(|b| left.iter().copied().filter(|&x| b[0] < x && x < b[1]).collect())
            .collect();
        (parts.concat() == left).then(|| TopDecomposition {
            parts,
            pivot: l[at],
            tail: tail.to_vec(),
        })
    }

    pub fn reassemble(&self) -> Vec<u8> {
        let mut out = self.parts.concat();
        out.push(self.pivot);
        out.extend_from_slice(&self.tail);
        out
    }
}
