use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::search::Matcher;
use super::word::Permutation;
use crate::error::{Error, Result};

/// Longest pattern accepted; the text syntax writes one digit per letter.
pub const MAX_PATTERN_LEN: usize = 9;

/// A permutation together with a set of adjacency constraints.
///
/// Adjacency `j` (1-based, `1 <= j < len`) forces the host letters playing
/// pattern positions `j` and `j + 1` to sit next to each other. The text form
/// separates non-adjacent positions with `-`, so `(1243, {3})` is `1-2-43`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct VincularPattern {
    sigma: Permutation,
    /// Bit `j` set iff positions `j` and `j + 1` are adjacent.
    adjacency: u16,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Reverse,
    Complement,
    ReverseComplement,
}

impl FromStr for Symmetry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reverse" | "r" => Ok(Symmetry::Reverse),
            "complement" | "c" => Ok(Symmetry::Complement),
            "reverse_complement" | "rc" => Ok(Symmetry::ReverseComplement),
            other => Err(Error::parse(0, format!("unknown symmetry {other:?}"))),
        }
    }
}

impl VincularPattern {
    pub fn new(sigma: Permutation, adjacencies: impl IntoIterator<Item = usize>) -> Result<Self> {
        let k = sigma.len();
        if k == 0 {
            return Err(Error::Empty("a pattern needs at least one letter"));
        }
        if k > MAX_PATTERN_LEN {
            return Err(Error::PatternTooLong(k));
        }
        let mut adjacency = 0u16;
        for j in adjacencies {
            if j == 0 || j >= k {
                return Err(Error::domain(format!(
                    "adjacency {j} out of range 1..={} for a pattern of length {k}",
                    k.saturating_sub(1)
                )));
            }
            adjacency |= 1 << j;
        }
        Ok(VincularPattern { sigma, adjacency })
    }

    /// No adjacency constraints.
    pub fn classical(sigma: Permutation) -> Result<Self> {
        Self::new(sigma, [])
    }

    /// Every pair of neighbouring positions adjacent.
    pub fn consecutive(sigma: Permutation) -> Result<Self> {
        let k = sigma.len();
        Self::new(sigma, 1..k)
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    /// Positions `j` such that `j` and `j + 1` must be adjacent, ascending.
    pub fn adjacencies(&self) -> Vec<usize> {
        (1..self.len()).filter(|&j| self.is_adjacent(j)).collect()
    }

    pub fn is_adjacent(&self, j: usize) -> bool {
        j < 16 && self.adjacency & (1 << j) != 0
    }

    pub fn reverse(&self) -> Self {
        let k = self.len();
        VincularPattern {
            sigma: self.sigma.reverse(),
            adjacency: self
                .adjacencies()
                .into_iter()
                .fold(0, |acc, x| acc | 1 << (k - x)),
        }
    }

    pub fn complement(&self) -> Self {
        VincularPattern {
            sigma: self.sigma.complement(),
            adjacency: self.adjacency,
        }
    }

    pub fn symmetry(&self, kind: Symmetry) -> Self {
        match kind {
            Symmetry::Reverse => self.reverse(),
            Symmetry::Complement => self.complement(),
            Symmetry::ReverseComplement => self.reverse().complement(),
        }
    }

    /// True for patterns `s_1 ... s_k - s_{k+1}`: one dash, right before the
    /// last letter.
    pub fn has_single_trailing_dash(&self) -> bool {
        let k = self.len();
        k >= 2 && self.adjacencies() == (1..k - 1).collect::<Vec<_>>()
    }

    pub(crate) fn matcher(&self) -> Matcher {
        Matcher::new(self)
    }

    /// Every pattern of length `k`: all `k!` permutations times all `2^(k-1)`
    /// adjacency sets.
    pub fn all_of_length(k: usize) -> Vec<VincularPattern> {
        use itertools::Itertools;
        let mut out = Vec::new();
        for perm in (1..=k as u8).permutations(k) {
            let sigma = Permutation::from_vec_unchecked(perm);
            for mask in 0..1u16 << (k.saturating_sub(1)) {
                let adj = (1..k).filter(|j| mask & (1 << (j - 1)) != 0);
                out.push(VincularPattern::new(sigma.clone(), adj).expect("valid"));
            }
        }
        out
    }
}

impl fmt::Display for VincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.sigma.letters().iter().enumerate() {
            if i > 0 && !self.is_adjacent(i) {
                f.write_str("-")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for VincularPattern {
    type Err = Error;

    /// Parses digit runs separated by `-`: `124-3`, `1-2-43`, `2341`.
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::parse(0, "empty pattern"));
        }
        let mut letters = Vec::new();
        let mut adjacencies = Vec::new();
        let mut prev_was_digit = false;
        for (pos, c) in s.char_indices() {
            match c {
                '1'..='9' => {
                    if prev_was_digit {
                        adjacencies.push(letters.len());
                    }
                    letters.push(c as u8 - b'0');
                    prev_was_digit = true;
                }
                '-' => {
                    if !prev_was_digit {
                        return Err(Error::parse(pos, "dash must follow a letter"));
                    }
                    prev_was_digit = false;
                }
                _ => return Err(Error::parse(pos, format!("unexpected character {c:?}"))),
            }
        }
        if !prev_was_digit {
            return Err(Error::parse(s.len() - 1, "pattern cannot end with a dash"));
        }
        check_letters(&letters, s)?;
        VincularPattern::new(Permutation::from_vec_unchecked(letters), adjacencies)
    }
}

/// Rejects repeated letters and letter sets other than `1..=k`, pointing at
/// the first offending character.
pub(crate) fn check_letters(letters: &[u8], text: &str) -> Result<()> {
    let k = letters.len();
    if k > MAX_PATTERN_LEN {
        return Err(Error::PatternTooLong(k));
    }
    let mut seen = [false; 10];
    let digit_positions: Vec<usize> = text
        .char_indices()
        .filter(|(_, c)| c.is_ascii_digit())
        .map(|(i, _)| i)
        .collect();
    for (i, &l) in letters.iter().enumerate() {
        let l = l as usize;
        if seen[l] {
            return Err(Error::parse(digit_positions[i], format!("repeated letter {l}")));
        }
        if l > k {
            return Err(Error::parse(
                digit_positions[i],
                format!("letter {l} exceeds pattern length {k}"),
            ));
        }
        seen[l] = true;
    }
    Ok(())
}

impl TryFrom<String> for VincularPattern {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<VincularPattern> for String {
    fn from(p: VincularPattern) -> Self {
        p.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vp(s: &str) -> VincularPattern {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let p = vp("1-2-43");
        assert_eq!(p.sigma().to_string(), "1243");
        assert_eq!(p.adjacencies(), vec![3]);
        let q = vp("124-3");
        assert_eq!(q.adjacencies(), vec![1, 2]);
        let c = vp("2341");
        assert_eq!(c.adjacencies(), vec![1, 2, 3]);
        assert_eq!(vp("1").adjacencies(), Vec::<usize>::new());
    }

    #[test]
    fn parse_errors_carry_position() {
        for (text, pos) in [("12-", 2), ("-12", 0), ("1--2", 2), ("1x2", 1), ("1-1", 2), ("13", 1)] {
            match text.parse::<VincularPattern>() {
                Err(Error::Parse { position, .. }) => assert_eq!(position, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(matches!(
            "".parse::<VincularPattern>(),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn length_cap() {
        let sigma = Permutation::identity(10);
        assert_eq!(
            VincularPattern::classical(sigma),
            Err(Error::PatternTooLong(10))
        );
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(vp("13-2-4").reverse().to_string(), "4-2-31");
        assert_eq!(vp("13-2-4").complement().to_string(), "42-3-1");
        assert_eq!(vp("1-2-3-4").reverse().to_string(), "4-3-2-1");
        assert_eq!(
            vp("13-2-4").symmetry(Symmetry::ReverseComplement).to_string(),
            "1-3-24"
        );
    }

    #[test]
    fn symmetries_are_involutions_and_text_round_trips() {
        for p in VincularPattern::all_of_length(4) {
            assert_eq!(p.reverse().reverse(), p);
            assert_eq!(p.complement().complement(), p);
            assert_eq!(p.to_string().parse::<VincularPattern>().unwrap(), p);
        }
        assert_eq!(VincularPattern::all_of_length(4).len(), 24 * 8);
    }

    #[test]
    fn trailing_dash_shape() {
        assert!(vp("124-3").has_single_trailing_dash());
        assert!(vp("1-2").has_single_trailing_dash());
        assert!(!vp("1-24-3").has_single_trailing_dash());
        assert!(!vp("1243").has_single_trailing_dash());
    }
}
