use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::search::Matcher;
use super::vincular::{check_letters, VincularPattern};
use super::word::{reduce_slice, Permutation};
use crate::error::{Error, Result};

/// A classical pattern with exactly one barred letter.
///
/// A host avoids it when every occurrence of the unbarred part (reduced)
/// extends to an occurrence of the whole underlying permutation. Written with
/// `~` before the barred letter: `25~134` bars the `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BarredPattern {
    underlying: Permutation,
    /// 1-based position of the barred letter.
    bar: usize,
    unbarred: VincularPattern,
}

impl BarredPattern {
    pub fn new(underlying: Permutation, bar: usize) -> Result<Self> {
        let k = underlying.len();
        if bar == 0 || bar > k {
            return Err(Error::domain(format!("bar position {bar} outside 1..={k}")));
        }
        if k < 2 {
            return Err(Error::domain("a barred pattern needs at least one unbarred letter"));
        }
        let rest: Vec<u8> = underlying
            .letters()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i + 1 != bar)
            .map(|(_, &l)| l)
            .collect();
        let unbarred =
            VincularPattern::classical(Permutation::from_vec_unchecked(reduce_slice(&rest)))?;
        Ok(BarredPattern {
            underlying,
            bar,
            unbarred,
        })
    }

    pub fn underlying(&self) -> &Permutation {
        &self.underlying
    }

    /// The derived classical pattern formed by the unbarred letters.
    pub fn unbarred(&self) -> &VincularPattern {
        &self.unbarred
    }

    pub fn barred_position(&self) -> usize {
        self.bar
    }

    pub fn len(&self) -> usize {
        self.underlying.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Every occurrence of the unbarred part must extend to the underlying
/// permutation.
pub fn avoids_barred(pi: &Permutation, b: &BarredPattern) -> bool {
    avoids_barred_slice(pi.letters(), b)
}

pub(crate) fn avoids_barred_slice(host: &[u8], b: &BarredPattern) -> bool {
    use std::ops::ControlFlow;

    let short = Matcher::new(&b.unbarred);
    let full = Matcher::new(
        &VincularPattern::classical(b.underlying.clone()).expect("length already checked"),
    );
    let bar = b.bar - 1;
    let mut pins = vec![None; b.len()];
    let outcome = short.for_each(host, &[], &mut |idx| {
        for (t, &i) in idx.iter().enumerate() {
            let slot = if t < bar { t } else { t + 1 };
            pins[slot] = Some(i);
        }
        pins[bar] = None;
        if full.exists_pinned(host, &pins) {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(())
        }
    });
    outcome.is_continue()
}

impl fmt::Display for BarredPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.underlying.letters().iter().enumerate() {
            if i + 1 == self.bar {
                f.write_str("~")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for BarredPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut bar = None;
        let mut pending_bar = false;
        for (pos, c) in s.char_indices() {
            match c {
                '1'..='9' => {
                    letters.push(c as u8 - b'0');
                    if pending_bar {
                        bar = Some(letters.len());
                        pending_bar = false;
                    }
                }
                '~' => {
                    if pending_bar || bar.is_some() {
                        return Err(Error::parse(pos, "only one barred letter is supported"));
                    }
                    pending_bar = true;
                }
                _ => return Err(Error::parse(pos, format!("unexpected character {c:?}"))),
            }
        }
        if pending_bar {
            return Err(Error::parse(s.len().saturating_sub(1), "'~' must precede a letter"));
        }
        let bar = bar.ok_or_else(|| Error::parse(0, "barred pattern needs a '~'"))?;
        check_letters(&letters, s)?;
        BarredPattern::new(Permutation::from_vec_unchecked(letters), bar)
    }
}

impl TryFrom<String> for BarredPattern {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BarredPattern> for String {
    fn from(p: BarredPattern) -> Self {
        p.to_string()
    }
}
