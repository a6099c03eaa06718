//! Words, permutations, vincular and barred patterns, and the occurrence
//! machinery built on them.

mod barred;
mod blocks;
pub(crate) mod search;
mod stats;
mod vincular;
mod word;

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

pub use barred::{avoids_barred, BarredPattern};
pub(crate) use barred::avoids_barred_slice;
pub use blocks::{blocks, Block, Direction};
pub use stats::{statistic, StatKind, StatValue};
pub(crate) use stats::{lr_minima, statistic_of};
pub use vincular::{Symmetry, VincularPattern, MAX_PATTERN_LEN};
pub use word::{order_isomorphic, reduce, Permutation, Word};
pub(crate) use word::{reduce_slice, restore_letters, slices_isomorphic};

use crate::error::{Error, Result};

/// Either kind of pattern accepted by the text syntax.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    Vincular(VincularPattern),
    Barred(BarredPattern),
}

impl Pattern {
    pub fn avoided_by(&self, pi: &Permutation) -> bool {
        match self {
            Pattern::Vincular(p) => avoids(pi, p),
            Pattern::Barred(b) => avoids_barred(pi, b),
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// `~` anywhere selects the barred syntax.
    fn from_str(s: &str) -> Result<Self> {
        if s.contains('~') {
            s.parse().map(Pattern::Barred)
        } else {
            s.parse().map(Pattern::Vincular)
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Vincular(p) => p.fmt(f),
            Pattern::Barred(b) => b.fmt(f),
        }
    }
}

/// Every occurrence of `p` in `pi` as a strictly increasing tuple of 1-based
/// indices, in lexicographic order.
pub fn find_occurrences(pi: &Permutation, p: &VincularPattern) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let _ = p.matcher().for_each(pi.letters(), &[], &mut |idx| {
        out.push(idx.iter().map(|i| i + 1).collect());
        ControlFlow::Continue(())
    });
    out
}

/// True iff `pi` has no occurrence of `p`. Stops at the first occurrence.
pub fn avoids(pi: &Permutation, p: &VincularPattern) -> bool {
    !p.matcher().contains(pi.letters())
}

/// True iff `pi` avoids every pattern in `patterns`.
pub fn avoids_all(pi: &Permutation, patterns: &[VincularPattern]) -> bool {
    patterns.iter().all(|p| avoids(pi, p))
}

/// Is there an occurrence of `p` in the distinct-letter word `host` in which
/// the pattern letter `role` is played by the host letter at index `at`?
pub(crate) fn has_role_occurrence(host: &[u8], p: &VincularPattern, role: u8, at: usize) -> bool {
    let Some(t) = p.sigma().letters().iter().position(|&l| l == role) else {
        return false;
    };
    let mut pins = vec![None; p.len()];
    pins[t] = Some(at);
    p.matcher().exists_pinned(host, &pins)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn vp(s: &str) -> VincularPattern {
        s.parse().unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn occurrence_examples() {
        let pi = perm("162534");
        let occ = find_occurrences(&pi, &vp("1-2-43"));
        let values = |o: &Vec<usize>| -> String {
            o.iter().map(|&i| pi.letters()[i - 1].to_string()).collect()
        };
        assert!(occ.iter().any(|o| values(o) == "1253"));
        assert!(!occ.iter().any(|o| values(o) == "1254"));
        assert!(find_occurrences(&perm("321"), &vp("1-2-4-3")).is_empty());
        assert!(!avoids(&pi, &vp("1-2-43")));
        assert!(avoids(&perm("1234"), &vp("124-3")));
        assert!(!avoids(&perm("1243"), &vp("124-3")));
        assert!(avoids(&Permutation::default(), &vp("1")));
    }

    #[test]
    fn pattern_dispatch() {
        assert!(matches!("25~134".parse::<Pattern>(), Ok(Pattern::Barred(_))));
        assert!(matches!("1-42-3".parse::<Pattern>(), Ok(Pattern::Vincular(_))));
        for text in ["25~134", "1-42-3", "2341", "41~352"] {
            assert_eq!(text.parse::<Pattern>().unwrap().to_string(), text);
        }
    }

    #[test]
    fn occurrences_satisfy_constraints() {
        for p in VincularPattern::all_of_length(4).iter().step_by(5) {
            for n in 4..=6u8 {
                for host in (1..=n).permutations(n as usize) {
                    let pi = Permutation::new(host.clone()).unwrap();
                    for o in find_occurrences(&pi, p) {
                        assert!(o.windows(2).all(|w| w[0] < w[1]));
                        for j in p.adjacencies() {
                            assert_eq!(o[j], o[j - 1] + 1);
                        }
                        let sub: Vec<u8> = o.iter().map(|&i| host[i - 1]).collect();
                        assert_eq!(reduce_slice(&sub), p.sigma().letters());
                    }
                }
            }
        }
    }

    #[test]
    fn length_four_hosts_contain_only_their_own_pattern() {
        for p in VincularPattern::all_of_length(4) {
            for host in (1..=4u8).permutations(4) {
                let pi = Permutation::new(host).unwrap();
                assert_eq!(!avoids(&pi, &p), &pi == p.sigma());
            }
        }
    }

    #[test]
    fn role_occurrences() {
        // 1 followed by 3 starts 1 3 2 4 in 2 1 4 3 5
        let p = vp("13-2-4");
        assert!(has_role_occurrence(&[2, 1, 4, 3, 5], &p, 1, 1));
        assert!(!has_role_occurrence(&[2, 1, 4, 3, 5], &p, 1, 0));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_perm(max: usize) -> impl Strategy<Value = Permutation> {
            (0..=max).prop_flat_map(|n| {
                Just((1..=n as u8).collect::<Vec<_>>())
                    .prop_shuffle()
                    .prop_map(|v| Permutation::new(v).unwrap())
            })
        }

        fn arb_pattern() -> impl Strategy<Value = VincularPattern> {
            (1usize..=4)
                .prop_flat_map(|k| (arb_perm_exact(k), proptest::collection::vec(any::<bool>(), k - 1)))
                .prop_map(|(sigma, adj)| {
                    let x = adj.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i + 1);
                    VincularPattern::new(sigma, x).unwrap()
                })
        }

        fn arb_perm_exact(n: usize) -> impl Strategy<Value = Permutation> {
            Just((1..=n as u8).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::new(v).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(2000))]

            #[test]
            fn symmetry_preserves_avoidance(pi in arb_perm(7), p in arb_pattern()) {
                let base = avoids(&pi, &p);
                prop_assert_eq!(base, avoids(&pi.reverse(), &p.reverse()));
                prop_assert_eq!(base, avoids(&pi.complement(), &p.complement()));
                prop_assert_eq!(base, find_occurrences(&pi, &p).is_empty());
            }
        }
    }
}
