//! Occurrence search shared by avoidance tests, the pruned enumerator and the
//! bijections.
//!
//! Two traversal orders are kept. The right-to-left search pins the last
//! pattern position to a given host index; the enumerator calls it once per
//! placed letter. The left-to-right search visits occurrences in
//! lexicographic order of index tuples and supports pinning any pattern
//! position, which is what barred extension and role-restricted queries need.

use std::ops::ControlFlow;

use super::vincular::{VincularPattern, MAX_PATTERN_LEN};

#[derive(Debug, Clone)]
pub(crate) struct Matcher {
    k: usize,
    /// `tied[t]`: positions `t` and `t + 1` (0-based) must be adjacent.
    tied: [bool; MAX_PATTERN_LEN],
    /// Nearest-value neighbours of position `t` among positions `> t`.
    later_below: [Option<usize>; MAX_PATTERN_LEN],
    later_above: [Option<usize>; MAX_PATTERN_LEN],
    /// Nearest-value neighbours of position `t` among positions `< t`.
    earlier_below: [Option<usize>; MAX_PATTERN_LEN],
    earlier_above: [Option<usize>; MAX_PATTERN_LEN],
}

fn neighbours(sigma: &[u8], t: usize, others: impl Iterator<Item = usize> + Clone) -> (Option<usize>, Option<usize>) {
    let v = sigma[t];
    let below = others
        .clone()
        .filter(|&s| sigma[s] < v)
        .max_by_key(|&s| sigma[s]);
    let above = others.filter(|&s| sigma[s] > v).min_by_key(|&s| sigma[s]);
    (below, above)
}

impl Matcher {
    pub(crate) fn new(pattern: &VincularPattern) -> Self {
        let sigma = pattern.sigma().letters();
        let k = sigma.len();
        let mut m = Matcher {
            k,
            tied: [false; MAX_PATTERN_LEN],
            later_below: [None; MAX_PATTERN_LEN],
            later_above: [None; MAX_PATTERN_LEN],
            earlier_below: [None; MAX_PATTERN_LEN],
            earlier_above: [None; MAX_PATTERN_LEN],
        };
        for t in 0..k {
            m.tied[t] = t + 1 < k && pattern.is_adjacent(t + 1);
            (m.later_below[t], m.later_above[t]) = neighbours(sigma, t, t + 1..k);
            (m.earlier_below[t], m.earlier_above[t]) = neighbours(sigma, t, 0..t);
        }
        m
    }

    /// Is there an occurrence whose last position is host index `end`, using
    /// only `host[..=end]`? Host letters must be distinct.
    pub(crate) fn ends_at<T: Ord>(&self, host: &[T], end: usize) -> bool {
        if end + 1 < self.k {
            return false;
        }
        let mut idx = [0usize; MAX_PATTERN_LEN];
        idx[self.k - 1] = end;
        self.extend_left(host, &mut idx, self.k - 1)
    }

    // Positions `t..k` are placed; place `t - 1`.
    fn extend_left<T: Ord>(&self, host: &[T], idx: &mut [usize; MAX_PATTERN_LEN], t: usize) -> bool {
        if t == 0 {
            return true;
        }
        let s = t - 1;
        let hi = idx[t];
        let lo = s;
        if hi < lo + 1 {
            return false;
        }
        let range = if self.tied[s] { hi - 1..hi } else { lo..hi };
        for i in range.rev() {
            if let Some(b) = self.later_below[s] {
                if host[i] <= host[idx[b]] {
                    continue;
                }
            }
            if let Some(a) = self.later_above[s] {
                if host[i] >= host[idx[a]] {
                    continue;
                }
            }
            idx[s] = i;
            if self.extend_left(host, idx, s) {
                return true;
            }
        }
        false
    }

    pub(crate) fn contains<T: Ord>(&self, host: &[T]) -> bool {
        (0..host.len()).any(|end| self.ends_at(host, end))
    }

    /// Visits occurrences (0-based index tuples) in lexicographic order.
    /// `pins[t] = Some(i)` forces pattern position `t` onto host index `i`.
    pub(crate) fn for_each<T: Ord>(
        &self,
        host: &[T],
        pins: &[Option<usize>],
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if host.len() < self.k {
            return ControlFlow::Continue(());
        }
        let mut idx = [0usize; MAX_PATTERN_LEN];
        self.extend_right(host, pins, &mut idx, 0, visit)
    }

    fn extend_right<T: Ord>(
        &self,
        host: &[T],
        pins: &[Option<usize>],
        idx: &mut [usize; MAX_PATTERN_LEN],
        t: usize,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if t == self.k {
            return visit(&idx[..self.k]);
        }
        let n = host.len();
        let lo = if t == 0 { 0 } else { idx[t - 1] + 1 };
        let hi = n - (self.k - t) + 1;
        let (lo, hi) = if t > 0 && self.tied[t - 1] { (lo, (lo + 1).min(hi)) } else { (lo, hi) };
        let (lo, hi) = match pins.get(t).copied().flatten() {
            Some(p) if p >= lo && p < hi => (p, p + 1),
            Some(_) => return ControlFlow::Continue(()),
            None => (lo, hi),
        };
        for i in lo..hi {
            if let Some(b) = self.earlier_below[t] {
                if host[i] <= host[idx[b]] {
                    continue;
                }
            }
            if let Some(a) = self.earlier_above[t] {
                if host[i] >= host[idx[a]] {
                    continue;
                }
            }
            idx[t] = i;
            self.extend_right(host, pins, idx, t + 1, visit)?;
        }
        ControlFlow::Continue(())
    }

    pub(crate) fn exists_pinned<T: Ord>(&self, host: &[T], pins: &[Option<usize>]) -> bool {
        self.for_each(host, pins, &mut |_| ControlFlow::Break(()))
            .is_break()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    use crate::patterns::word::slices_isomorphic;

    /// Direct definition: every index tuple, filtered.
    fn brute_occurrences(host: &[u8], p: &VincularPattern) -> Vec<Vec<usize>> {
        let k = p.len();
        (0..host.len())
            .combinations(k)
            .filter(|idx| {
                p.adjacencies().iter().all(|&j| idx[j] == idx[j - 1] + 1)
                    && slices_isomorphic(
                        &idx.iter().map(|&i| host[i]).collect::<Vec<_>>(),
                        p.sigma().letters(),
                    )
            })
            .collect()
    }

    #[test]
    fn both_traversals_agree_with_definition() {
        for p in VincularPattern::all_of_length(3)
            .into_iter()
            .chain(["1-42-3", "124-3", "2341", "13-2-4"].map(|s| s.parse().unwrap()))
        {
            let m = Matcher::new(&p);
            for n in 0..=6u8 {
                for host in (1..=n).permutations(n as usize) {
                    let expected = brute_occurrences(&host, &p);
                    let mut seen = Vec::new();
                    let _ = m.for_each(&host, &[], &mut |idx| {
                        seen.push(idx.to_vec());
                        ControlFlow::Continue(())
                    });
                    assert_eq!(seen, expected, "{p} in {host:?}");
                    assert_eq!(m.contains(&host), !expected.is_empty());
                    for end in 0..host.len() {
                        assert_eq!(
                            m.ends_at(&host, end),
                            expected.iter().any(|o| *o.last().unwrap() == end)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pins_restrict_positions() {
        let p: VincularPattern = "13-2-4".parse().unwrap();
        let m = Matcher::new(&p);
        // 1 at index 0 starts 1 3 2 4
        let host = [1u8, 3, 2, 4];
        assert!(m.exists_pinned(&host, &[Some(0)]));
        assert!(!m.exists_pinned(&host, &[Some(1)]));
        let host = [2u8, 1, 4, 3, 5];
        assert!(m.exists_pinned(&host, &[Some(1)]));
        assert!(!m.exists_pinned(&host, &[Some(0)]));
    }
}
