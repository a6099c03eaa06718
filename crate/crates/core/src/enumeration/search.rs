use crate::patterns::search::Matcher;
use crate::patterns::{Permutation, VincularPattern};

/// Lexicographic stream of the permutations of `1..=n` that avoid every
/// pattern of a set, optionally restricted to a fixed literal prefix.
///
/// Letters are placed left to right. A partial permutation is dropped as soon
/// as one of the patterns has an occurrence ending at the letter just placed;
/// occurrences never disappear when letters are appended, so nothing below a
/// dropped node can avoid the set.
#[derive(Debug, Clone)]
pub struct Avoiders {
    matchers: Vec<Matcher>,
    n: usize,
    fixed: usize,
    current: Vec<u8>,
    used: u64,
    /// Next candidate letter for each depth.
    cursor: Vec<u8>,
    state: State,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

impl Avoiders {
    pub fn new(patterns: &[VincularPattern], n: usize) -> Self {
        Self::with_prefix(patterns, n, &[])
    }

    /// Restricts the stream to permutations starting with `prefix`. An
    /// invalid prefix (repeated letters, letters outside `1..=n`, or a prefix
    /// that already contains a pattern) gives an empty stream.
    pub fn with_prefix(patterns: &[VincularPattern], n: usize, prefix: &[u8]) -> Self {
        assert!(n < 64, "permutations longer than 63 are not supported");
        let matchers: Vec<Matcher> = patterns.iter().map(VincularPattern::matcher).collect();
        let mut it = Avoiders {
            matchers,
            n,
            fixed: prefix.len(),
            current: Vec::with_capacity(n),
            used: 0,
            cursor: vec![1; n + 1],
            state: State::Fresh,
        };
        for &l in prefix {
            let bit = 1u64 << l;
            if l == 0 || l as usize > n || it.used & bit != 0 {
                it.state = State::Done;
                return it;
            }
            it.current.push(l);
            it.used |= bit;
            if !it.last_is_safe() {
                it.state = State::Done;
                return it;
            }
        }
        if prefix.len() > n {
            it.state = State::Done;
        }
        it
    }

    fn last_is_safe(&self) -> bool {
        let end = self.current.len() - 1;
        self.matchers.iter().all(|m| !m.ends_at(&self.current, end))
    }

    /// Moves to the next avoider; `current()` is valid while this returns
    /// true. Allocation-free, which is what the counting paths use.
    pub fn advance(&mut self) -> bool {
        match self.state {
            State::Done => return false,
            State::Fresh => self.state = State::Running,
            State::Running => {
                // resume below the last yielded leaf
                if !self.pop() {
                    return false;
                }
            }
        }
        loop {
            let d = self.current.len();
            if d == self.n {
                return true;
            }
            let mut placed = false;
            while (self.cursor[d] as usize) <= self.n {
                let c = self.cursor[d];
                self.cursor[d] += 1;
                let bit = 1u64 << c;
                if self.used & bit != 0 {
                    continue;
                }
                self.current.push(c);
                if self.last_is_safe() {
                    self.used |= bit;
                    self.cursor[d + 1] = 1;
                    placed = true;
                    break;
                }
                self.current.pop();
            }
            if !placed && !self.pop() {
                return false;
            }
        }
    }

    // Removes the deepest free letter; false once only the prefix is left.
    fn pop(&mut self) -> bool {
        if self.current.len() <= self.fixed {
            self.state = State::Done;
            return false;
        }
        let c = self.current.pop().expect("nonempty");
        self.used &= !(1u64 << c);
        true
    }

    pub fn current(&self) -> &[u8] {
        &self.current
    }

    pub fn count_remaining(mut self) -> u64 {
        let mut total = 0;
        while self.advance() {
            total += 1;
        }
        total
    }
}

impl Iterator for Avoiders {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        self.advance()
            .then(|| Permutation::from_vec_unchecked(self.current.clone()))
    }
}
