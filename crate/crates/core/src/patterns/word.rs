use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite word over the positive integers. Repeated letters are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u32>);

impl Word {
    /// Builds a word, rejecting the letter 0.
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if let Some(pos) = letters.iter().position(|&l| l == 0) {
            return Err(Error::domain(format!(
                "word letters must be positive (position {})",
                pos + 1
            )));
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn has_distinct_letters(&self) -> bool {
        let mut seen = self.0.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

impl From<&Permutation> for Word {
    fn from(p: &Permutation) -> Self {
        Word(p.0.iter().map(|&l| l as u32).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, self.0.iter().copied())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts either a run of single digits (`839183`) or comma-separated
    /// letters (`10,3,7`).
    fn from_str(s: &str) -> Result<Self> {
        Word::new(parse_letters(s)?)
    }
}

/// A permutation of `1..=n`, stored one byte per letter. The empty
/// permutation is a valid value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.len() > u8::MAX as usize {
            return Err(Error::NotPermutation(format!(
                "length {} is too large",
                letters.len()
            )));
        }
        let n = letters.len();
        let mut seen = vec![false; n + 1];
        for &l in &letters {
            let l = l as usize;
            if l == 0 || l > n || seen[l] {
                return Err(Error::NotPermutation(letters_to_string(
                    letters.iter().map(|&x| x as u32),
                )));
            }
            seen[l] = true;
        }
        Ok(Permutation(letters))
    }

    /// Wraps letters already known to form a permutation.
    pub(crate) fn from_vec_unchecked(letters: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(letters.clone()).is_ok());
        Permutation(letters)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reverse(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Self {
        let n1 = self.0.len() as u8 + 1;
        Permutation(self.0.iter().map(|&l| n1 - l).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &l) in self.0.iter().enumerate() {
            inv[l as usize - 1] = i as u8 + 1;
        }
        Permutation(inv)
    }
}

impl TryFrom<Word> for Permutation {
    type Error = Error;

    fn try_from(w: Word) -> Result<Self> {
        let letters = w
            .0
            .iter()
            .map(|&l| u8::try_from(l).map_err(|_| Error::NotPermutation(w.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(letters)
    }
}

impl TryFrom<String> for Permutation {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Permutation> for String {
    fn from(p: Permutation) -> Self {
        p.to_string()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, self.0.iter().map(|&l| l as u32))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Ok(Permutation::default());
        }
        Word::from_str(s).and_then(Permutation::try_from)
    }
}

fn parse_letters(s: &str) -> Result<Vec<u32>> {
    if s.contains(',') {
        let mut offset = 0;
        s.split(',')
            .map(|part| {
                let pos = offset;
                offset += part.len() + 1;
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse(pos, format!("invalid letter {part:?}")))
            })
            .collect()
    } else {
        s.chars()
            .enumerate()
            .map(|(i, c)| {
                c.to_digit(10)
                    .ok_or_else(|| Error::parse(i, format!("unexpected character {c:?}")))
            })
            .collect()
    }
}

fn letters_to_string(letters: impl Iterator<Item = u32> + Clone) -> String {
    let mut s = String::new();
    let _ = write_letters(&mut s, letters);
    s
}

fn write_letters(
    out: &mut impl fmt::Write,
    letters: impl Iterator<Item = u32> + Clone,
) -> fmt::Result {
    if letters.clone().all(|l| l <= 9) {
        for l in letters {
            write!(out, "{l}")?;
        }
    } else {
        for (i, l) in letters.enumerate() {
            if i > 0 {
                out.write_char(',')?;
            }
            write!(out, "{l}")?;
        }
    }
    Ok(())
}

/// Ranks every entry among the distinct values of `w` (1-based, ties share a
/// rank).
pub(crate) fn reduce_slice<T: Ord + Copy>(w: &[T]) -> Vec<u8> {
    let mut distinct: Vec<T> = w.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    w.iter()
        .map(|x| distinct.binary_search(x).expect("value present") as u8 + 1)
        .collect()
}

/// Replaces the i-th smallest letter(s) of `w` with `i`.
pub fn reduce(w: &Word) -> Result<Word> {
    if w.is_empty() {
        return Err(Error::Empty("cannot reduce the empty word"));
    }
    Ok(Word(
        reduce_slice(&w.0).into_iter().map(u32::from).collect(),
    ))
}

/// True iff the two words have equal reductions.
pub fn order_isomorphic(u: &Word, w: &Word) -> bool {
    u.len() == w.len() && reduce_slice(&u.0) == reduce_slice(&w.0)
}

/// Order-isomorphism on raw slices, without allocating.
pub(crate) fn slices_isomorphic<A: Ord, B: Ord>(u: &[A], w: &[B]) -> bool {
    if u.len() != w.len() {
        return false;
    }
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if u[i].cmp(&u[j]) != w[i].cmp(&w[j]) {
                return false;
            }
        }
    }
    true
}

/// Replaces the letters of a distinct-letter word by the letters of `letters`
/// (sorted), following the relative order given by `shape` (a permutation).
pub(crate) fn restore_letters(letters: &[u8], shape: &[u8]) -> Vec<u8> {
    let mut sorted = letters.to_vec();
    sorted.sort_unstable();
    shape.iter().map(|&r| sorted[r as usize - 1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&w("839183")).unwrap(), w("324132"));
        assert_eq!(reduce(&w("12345")).unwrap(), w("12345"));
        assert_eq!(reduce(&w("63485")).unwrap(), w("41253"));
        assert!(matches!(reduce(&Word::empty()), Err(Error::Empty(_))));
    }

    #[test]
    fn reduce_of_distinct_word_is_permutation() {
        let r = reduce(&w("10,30,20")).unwrap();
        assert_eq!(Permutation::try_from(r).unwrap().to_string(), "132");
    }

    #[test]
    fn order_isomorphic_examples() {
        assert!(order_isomorphic(&w("53"), &w("21")));
        assert!(order_isomorphic(&w("1253"), &w("1243")));
        assert!(!order_isomorphic(&w("12"), &w("123")));
    }

    #[test]
    fn reduce_idempotent_exhaustive() {
        // all words of length <= 7 over {1..4}
        for len in 1..=7u32 {
            let total = 4usize.pow(len);
            for code in 0..total {
                let mut c = code;
                let letters: Vec<u32> = (0..len)
                    .map(|_| {
                        let l = (c % 4) as u32 + 1;
                        c /= 4;
                        l
                    })
                    .collect();
                let word = Word::new(letters).unwrap();
                let once = reduce(&word).unwrap();
                assert_eq!(reduce(&once).unwrap(), once);
                assert!(order_isomorphic(&word, &once));
            }
        }
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![2, 1, 3]).is_ok());
        assert!(Permutation::new(vec![2, 2, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![]).unwrap().is_empty());
        assert!("1243".parse::<Permutation>().is_ok());
        assert!("1244".parse::<Permutation>().is_err());
        assert!("12a".parse::<Permutation>().is_err());
    }

    #[test]
    fn display_uses_commas_above_nine() {
        let p: Permutation = "2,1,3,4,5,6,7,8,9,10".parse().unwrap();
        assert_eq!(p.to_string(), "2,1,3,4,5,6,7,8,9,10");
        assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
    }

    #[test]
    fn symmetries_of_permutations() {
        let p: Permutation = "34152".parse().unwrap();
        assert_eq!(p.reverse().to_string(), "25143");
        assert_eq!(p.complement().to_string(), "32514");
        assert_eq!(p.inverse().inverse(), p);
    }
}
