use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::search::Avoiders;
use crate::error::{Error, Result};
use crate::patterns::{reduce_slice, slices_isomorphic, Permutation, VincularPattern, Word};

/// `S_n[B; p; w]`: avoiders of `B` of length `n` whose first `|w|` letters
/// are literally `w`, where `w` should be order-isomorphic to `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixClass {
    pub patterns: Vec<VincularPattern>,
    pub prefix_pattern: Permutation,
    pub prefix_word: Word,
    pub n: usize,
}

impl PrefixClass {
    /// False when `w` is not a valid literal prefix for `p` in `S_n`; such a
    /// class is empty by definition.
    pub fn is_well_formed(&self) -> bool {
        let w = self.prefix_word.letters();
        w.len() == self.prefix_pattern.len()
            && w.len() <= self.n
            && self.prefix_word.has_distinct_letters()
            && w.iter().all(|&l| l as usize <= self.n)
            && reduce_slice(w) == self.prefix_pattern.letters()
    }
}

/// Members of the class in lexicographic order. Ill-formed classes are empty.
pub fn prefix_class_members(c: &PrefixClass) -> Vec<Permutation> {
    if !c.is_well_formed() {
        return Vec::new();
    }
    let prefix: Vec<u8> = c.prefix_word.letters().iter().map(|&l| l as u8).collect();
    Avoiders::with_prefix(&c.patterns, c.n, &prefix).collect()
}

/// `d_R(w)`: drop the letters at the 1-based positions in `r`, then lower
/// each survivor by the number of dropped letters below it.
pub fn delete_map(w: &Word, r: &BTreeSet<usize>) -> Result<Word> {
    if !w.has_distinct_letters() {
        return Err(Error::domain(format!("{w} has repeated letters")));
    }
    if let Some(&bad) = r.iter().find(|&&i| i == 0 || i > w.len()) {
        return Err(Error::domain(format!("position {bad} is outside 1..={}", w.len())));
    }
    let letters = w.letters();
    let dropped: Vec<u32> = r.iter().map(|&i| letters[i - 1]).collect();
    let kept = letters
        .iter()
        .enumerate()
        .filter(|(i, _)| !r.contains(&(i + 1)))
        .map(|(_, &l)| l - dropped.iter().filter(|&&d| d < l).count() as u32)
        .collect();
    Word::new(kept)
}

pub(crate) fn delete_slice(w: &[u8], r: &BTreeSet<usize>) -> Vec<u8> {
    let dropped: Vec<u8> = r.iter().map(|&i| w[i - 1]).collect();
    w.iter()
        .enumerate()
        .filter(|(i, _)| !r.contains(&(i + 1)))
        .map(|(_, &l)| l - dropped.iter().filter(|&&d| d < l).count() as u8)
        .collect()
}

/// A vincular pattern of the form `σ1⋯σk-σ(k+1)`: one run followed by a
/// single trailing letter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "VincularPattern", into = "VincularPattern")]
pub struct VincularTailPattern {
    pattern: VincularPattern,
}

impl VincularTailPattern {
    pub fn new(pattern: VincularPattern) -> Result<Self> {
        if pattern.len() < 2 || !pattern.has_single_trailing_dash() {
            return Err(Error::domain(format!("{pattern} is not of the form run-letter")));
        }
        Ok(VincularTailPattern { pattern })
    }

    pub fn pattern(&self) -> &VincularPattern {
        &self.pattern
    }

    /// `k`, the length of the run.
    pub fn k(&self) -> usize {
        self.pattern.len() - 1
    }

    pub fn head(&self) -> &[u8] {
        &self.pattern.sigma().letters()[..self.k()]
    }

    pub fn tail(&self) -> u8 {
        self.pattern.sigma().letters()[self.k()]
    }
}

impl TryFrom<VincularPattern> for VincularTailPattern {
    type Error = Error;

    fn try_from(p: VincularPattern) -> Result<Self> {
        Self::new(p)
    }
}

impl From<VincularTailPattern> for VincularPattern {
    fn from(t: VincularTailPattern) -> Self {
        t.pattern
    }
}

impl std::str::FromStr for VincularTailPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }
}

impl fmt::Display for VincularTailPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.pattern.fmt(f)
    }
}

/// Sufficient conditions, read off the prefix alone, for `S_n[σ; p; w]` to
/// be empty. `false` says nothing about nonemptiness.
pub fn gap_forced_empty(sigma: &VincularTailPattern, w: &Word, n: usize) -> Result<bool> {
    let head = sigma.head();
    let k = head.len();
    if w.len() != k || !w.has_distinct_letters() {
        return Err(Error::domain(format!("{w} is not a prefix word of length {k}")));
    }
    let w: Vec<u32> = w.letters().to_vec();
    if !slices_isomorphic(&w, head) {
        return Err(Error::domain("prefix word is not order-isomorphic to the run"));
    }
    let at = |value: u8| head.iter().position(|&h| h == value).expect("head letter");
    let tail = sigma.tail();
    Ok(if tail == 1 {
        w[at(2)] > 1
    } else if tail as usize == k + 1 {
        (w[at(k as u8)] as usize) < n
    } else {
        w[at(tail + 1)] - w[at(tail - 1)] > 1
    })
}

/// The deletable prefix positions `{1..r}` given by the two overlap rules
/// for tail patterns, or `None` when neither rule applies to `p`.
pub fn reversibly_deletable_predicted(sigma: &VincularTailPattern, p: &Permutation) -> Option<BTreeSet<usize>> {
    let head = sigma.head();
    let k = head.len();
    let p = p.letters();
    let t = p.len();
    if t == 0 {
        return None;
    }
    let suffix_fits = |r: usize| slices_isomorphic(&p[r..], &head[..t - r]);
    let smallest = |from: usize| (from..t).find(|&r| suffix_fits(r));
    let r = if t <= k && !slices_isomorphic(p, &head[..t]) {
        smallest(1)
    } else if t >= k && (0..t - k).all(|s| !slices_isomorphic(&p[s..s + k], head)) {
        smallest(t - k + 1)
    } else {
        None
    }?;
    Some((1..=r).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevDelCounterexample {
    pub n: usize,
    pub prefix_word: Vec<u8>,
    pub source_size: usize,
    pub target_size: usize,
    /// A class member whose image contains a pattern, if that is the failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bad_image_of: Option<Permutation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevDelReport {
    pub patterns: Vec<String>,
    pub prefix_pattern: Permutation,
    pub deleted: BTreeSet<usize>,
    /// Every length up to this bound was checked; nothing beyond it is claimed.
    pub n_max: usize,
    pub classes_checked: usize,
    pub counterexample: Option<RevDelCounterexample>,
}

impl RevDelReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks, for every `n <= n_max` and every `w` with a nonempty class, that
/// `d_R` maps `S_n[B; p; w]` bijectively onto `S_{n-|R|}[B; d_R(p); d_R(w)]`.
pub fn certify_reversibly_deletable(
    patterns: &[VincularPattern],
    p: &Permutation,
    r: &BTreeSet<usize>,
    n_max: usize,
) -> Result<RevDelReport> {
    let t = p.len();
    if r.iter().any(|&i| i == 0 || i > t) {
        return Err(Error::domain(format!("deletion set must lie in 1..={t}")));
    }
    let mut report = RevDelReport {
        patterns: patterns.iter().map(ToString::to_string).collect(),
        prefix_pattern: p.clone(),
        deleted: r.clone(),
        n_max,
        classes_checked: 0,
        counterexample: None,
    };
    let short_t = t - r.len();
    for n in t.max(1)..=n_max {
        let target = Level::build(patterns, n - r.len(), short_t);
        let source = Level::build(patterns, n, t);
        for (w, members) in source.sorted_groups() {
            if reduce_slice(w) != p.letters() {
                continue;
            }
            report.classes_checked += 1;
            let image_prefix = delete_slice(w, r);
            let target_size = target.groups.get(&image_prefix).map_or(0, Vec::len);
            let mut images = HashSet::with_capacity(members.len());
            let mut bad_image_of = None;
            for pi in members {
                let image = delete_slice(pi, r);
                if !target.members.contains(&image) {
                    bad_image_of = Some(Permutation::from_vec_unchecked(pi.clone()));
                    break;
                }
                images.insert(image);
            }
            if bad_image_of.is_some() || images.len() != members.len() || members.len() != target_size {
                report.counterexample = Some(RevDelCounterexample {
                    n,
                    prefix_word: w.clone(),
                    source_size: members.len(),
                    target_size,
                    bad_image_of,
                });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// All avoiders of one length, grouped by their first `t` letters.
struct Level {
    members: HashSet<Vec<u8>>,
    groups: HashMap<Vec<u8>, Vec<Vec<u8>>>,
}

impl Level {
    fn build(patterns: &[VincularPattern], n: usize, t: usize) -> Level {
        let mut members = HashSet::new();
        let mut groups: HashMap<Vec<u8>, Vec<Vec<u8>>> = HashMap::new();
        let mut it = Avoiders::new(patterns, n);
        while it.advance() {
            let pi = it.current().to_vec();
            if t <= n {
                groups.entry(pi[..t].to_vec()).or_default().push(pi.clone());
            }
            members.insert(pi);
        }
        Level { members, groups }
    }

    fn sorted_groups(&self) -> Vec<(&Vec<u8>, &Vec<Vec<u8>>)> {
        let mut g: Vec<_> = self.groups.iter().collect();
        g.sort();
        g
    }
}

/// Number of increasing runs `a = π1 < ⋯ < πℓ = b` with
/// `π(i+r) = π(i) + r` for `1 <= r <= ℓ-k`, counted by direct enumeration.
pub fn gen1_prefix_count(a: u32, b: u32, ell: u32, i: u32, k: u32) -> Result<u64> {
    if k < 3 || i < 1 || i > k - 1 || ell < k || b < ell + 1 || a < 1 {
        return Err(Error::domain(format!(
            "need k >= 3, 1 <= i <= k-1, k <= ell <= b-1, a >= 1 (got a={a} b={b} ell={ell} i={i} k={k})"
        )));
    }
    if a >= b {
        return Ok(0);
    }
    let (i, run) = (i as usize, (ell - k) as usize);
    let count = itertools::Itertools::combinations(a + 1..b, ell as usize - 2)
        .filter(|mid| {
            let mut seq = Vec::with_capacity(ell as usize);
            seq.push(a);
            seq.extend_from_slice(mid);
            seq.push(b);
            (1..=run).all(|r| seq[i - 1 + r] == seq[i - 1] + r as u32)
        })
        .count();
    Ok(count as u64)
}

/// `C(n, k)`, zero when `n < k` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1u64, |acc, j| acc * (n - j) / (j + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    fn tail(s: &str) -> VincularTailPattern {
        s.parse().unwrap()
    }

    fn class(b: &str, p: &str, w: &str, n: usize) -> PrefixClass {
        PrefixClass {
            patterns: vec![b.parse().unwrap()],
            prefix_pattern: p.parse().unwrap(),
            prefix_word: w.parse().unwrap(),
            n,
        }
    }

    #[test]
    fn delete_examples() {
        let d = |w: &str, r: &[usize]| delete_map(&w.parse().unwrap(), &set(r)).unwrap().to_string();
        assert_eq!(d("3154276", &[1, 3]), "13254");
        assert_eq!(d("63485", &[1, 3]), "364");
        assert_eq!(d("63485", &[]), "63485");
        assert!(delete_map(&"123".parse().unwrap(), &set(&[4])).is_err());
        assert!(delete_map(&"121".parse().unwrap(), &set(&[1])).is_err());
    }

    #[test]
    fn prefix_classes() {
        let got: Vec<String> = prefix_class_members(&class("1-2-3", "21", "53", 5))
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(got, ["53142", "53214", "53241", "53412", "53421"]);
        assert!(prefix_class_members(&class("1-2-3", "12", "53", 5)).is_empty());
        assert!(prefix_class_members(&class("124-3", "123", "125", 5)).is_empty());
        assert!(prefix_class_members(&class("124-3", "12", "16", 5)).is_empty());
    }

    #[test]
    fn gaps() {
        let g = |s: &str, w: &str, n| gap_forced_empty(&tail(s), &w.parse().unwrap(), n).unwrap();
        assert!(g("124-3", "135", 6));
        assert!(g("134-2", "146", 6));
        assert!(!g("124-3", "134", 6));
        assert!(g("124-3", "124", 6));
        assert!(g("23-1", "34", 5));
        assert!(!g("23-1", "14", 5));
        assert!(g("12-3", "24", 5));
        assert!(!g("12-3", "25", 5));
        assert!(gap_forced_empty(&tail("124-3"), &"132".parse().unwrap(), 6).is_err());
        assert!("1-23".parse::<VincularTailPattern>().is_err());
    }

    #[test]
    fn predicted_sets() {
        let pr = |s: &str, p: &str| reversibly_deletable_predicted(&tail(s), &p.parse().unwrap());
        assert_eq!(pr("124-3", "21"), Some(set(&[1])));
        assert_eq!(pr("124-3", "132"), Some(set(&[1, 2])));
        assert_eq!(pr("124-3", "231"), Some(set(&[1, 2])));
        assert_eq!(pr("124-3", "123"), Some(set(&[1])));
        assert_eq!(pr("132-4", "123"), Some(set(&[1])));
        assert_eq!(pr("231-4", "132"), Some(set(&[1, 2])));
        assert_eq!(pr("124-3", "12"), None);
    }

    #[test]
    fn certification() {
        let vp = |s: &str| -> VincularPattern { s.parse().unwrap() };
        let ok = certify_reversibly_deletable(&[vp("124-3")], &"123".parse().unwrap(), &set(&[2]), 7).unwrap();
        assert!(ok.holds(), "{:?}", ok.counterexample);
        assert!(ok.classes_checked > 0);
        let ok = certify_reversibly_deletable(&[vp("132-4")], &"231".parse().unwrap(), &set(&[1, 2]), 7).unwrap();
        assert!(ok.holds());
        let bad = certify_reversibly_deletable(&[vp("1-2-3")], &"12".parse().unwrap(), &set(&[1]), 6).unwrap();
        let c = bad.counterexample.expect("deleting the 1 of a 12 prefix is not reversible");
        assert_eq!((c.n, c.prefix_word.as_slice()), (4, &[1u8, 4][..]));
        assert_eq!((c.source_size, c.target_size), (1, 2));
        assert!(certify_reversibly_deletable(&[vp("1-2-3")], &"12".parse().unwrap(), &set(&[3]), 6).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(-1, 0), 0);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(30, 15), 155117520);
    }

    #[test]
    fn gen1_counts() {
        for k in 3..=6 {
            for i in 1..k {
                assert_eq!(gen1_prefix_count(1, k + 1, k, i, k).unwrap(), (k - 1) as u64);
            }
        }
        assert_eq!(gen1_prefix_count(4, 6, 5, 2, 4).unwrap(), 0);
        assert!(gen1_prefix_count(1, 5, 4, 4, 4).is_err());
        assert!(gen1_prefix_count(1, 4, 4, 1, 4).is_err());
    }
}
