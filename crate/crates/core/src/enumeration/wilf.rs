use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::search::Avoiders;
use crate::patterns::{
    avoids_all, avoids_barred_slice, statistic_of, BarredPattern, Pattern, Permutation, StatKind,
    StatValue, VincularPattern,
};

/// Runs `visit` on every member of `S_n(pattern)`, sharded by first letter.
/// Shards run on the rayon pool; their outputs are combined in first-letter
/// order, so the result never depends on the thread count.
fn sharded<T, F>(pattern: &Pattern, n: usize, init: impl Fn() -> T + Sync, visit: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut T, &[u8]) + Sync,
{
    if n == 0 {
        let mut acc = init();
        visit(&mut acc, &[]);
        return vec![acc];
    }
    (1..=n as u8)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            match pattern {
                Pattern::Vincular(p) => {
                    let mut it = Avoiders::with_prefix(std::slice::from_ref(p), n, &[first]);
                    while it.advance() {
                        visit(&mut acc, it.current());
                    }
                }
                Pattern::Barred(b) => {
                    let rest: Vec<u8> = (1..=n as u8).filter(|&l| l != first).collect();
                    for tail in rest.iter().copied().permutations(n - 1) {
                        let mut host = Vec::with_capacity(n);
                        host.push(first);
                        host.extend(tail);
                        if avoids_barred_slice(&host, b) {
                            visit(&mut acc, &host);
                        }
                    }
                }
            }
            acc
        })
        .collect()
}

/// `|S_n(B)|` for a set of vincular patterns.
pub fn count_avoiders(patterns: &[VincularPattern], n: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=n as u8)
        .into_par_iter()
        .map(|first| Avoiders::with_prefix(patterns, n, &[first]).count_remaining())
        .sum()
}

/// `|S_n(pattern)|` for either pattern kind. Barred classes are counted by
/// filtering all of `S_n`.
pub fn count_pattern(pattern: &Pattern, n: usize) -> u64 {
    match pattern {
        Pattern::Vincular(p) => count_avoiders(std::slice::from_ref(p), n),
        Pattern::Barred(_) => sharded(pattern, n, || 0u64, |c, _| *c += 1).into_iter().sum(),
    }
}

/// Members of `S_n(pattern)` in lexicographic order.
pub fn avoiders_of(pattern: &Pattern, n: usize) -> Vec<Permutation> {
    sharded(pattern, n, Vec::new, |v, p| {
        v.push(Permutation::from_vec_unchecked(p.to_vec()))
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Counts of avoiders per value of one statistic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatTable {
    kind: StatKind,
    counts: BTreeMap<StatValue, BigUint>,
    total: BigUint,
}

impl StatTable {
    pub fn new(kind: StatKind) -> Self {
        StatTable {
            kind,
            counts: BTreeMap::new(),
            total: BigUint::zero(),
        }
    }

    pub fn kind(&self) -> StatKind {
        self.kind
    }

    pub fn add(&mut self, value: StatValue, count: impl Into<BigUint>) {
        let count = count.into();
        self.total += &count;
        *self.counts.entry(value).or_default() += count;
    }

    pub fn merge(&mut self, other: StatTable) {
        assert_eq!(self.kind, other.kind, "merging tables of different statistics");
        for (v, c) in other.counts {
            self.add(v, c);
        }
    }

    pub fn get(&self, value: &StatValue) -> BigUint {
        self.counts.get(value).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn iter(&self) -> impl Iterator<Item = (&StatValue, &BigUint)> {
        self.counts.iter()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

pub(crate) fn big_to_json(v: &BigUint) -> serde_json::Number {
    v.to_string().parse().expect("decimal digits form a JSON number")
}

pub(crate) fn json_to_big(n: &serde_json::Number) -> Option<BigUint> {
    n.to_string().parse().ok()
}

#[derive(Serialize, Deserialize)]
struct StatTableRepr {
    kind: StatKind,
    total: serde_json::Number,
    counts: BTreeMap<String, serde_json::Number>,
}

impl Serialize for StatTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        StatTableRepr {
            kind: self.kind,
            total: big_to_json(&self.total),
            counts: self
                .counts
                .iter()
                .map(|(k, v)| (k.key(), big_to_json(v)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StatTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = StatTableRepr::deserialize(d)?;
        let mut table = StatTable::new(repr.kind);
        for (k, v) in repr.counts {
            let value = StatValue::from_key(repr.kind, &k).map_err(D::Error::custom)?;
            let count = json_to_big(&v).ok_or_else(|| D::Error::custom("count must be a nonnegative integer"))?;
            table.add(value, count);
        }
        let total = json_to_big(&repr.total).ok_or_else(|| D::Error::custom("bad total"))?;
        if total != table.total {
            return Err(D::Error::custom("total disagrees with the counts"));
        }
        Ok(table)
    }
}

/// Distribution of `kind` over `S_n(pattern)`, `n >= 1`.
pub fn stat_distribution(pattern: &Pattern, n: usize, kind: StatKind) -> StatTable {
    assert!(n >= 1, "statistics are defined for nonempty permutations");
    let shards = sharded(pattern, n, BTreeMap::<StatValue, u64>::new, |m, p| {
        *m.entry(statistic_of(p, kind)).or_default() += 1;
    });
    let mut table = StatTable::new(kind);
    for shard in shards {
        for (v, c) in shard {
            table.add(v, c);
        }
    }
    table
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WilfRow {
    pub n: usize,
    pub left: u64,
    pub right: u64,
    /// Present only when a statistic was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tables_agree: Option<bool>,
}

impl WilfRow {
    pub fn agrees(&self) -> bool {
        self.left == self.right && self.tables_agree.unwrap_or(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WilfReport {
    pub left: String,
    pub right: String,
    pub n_max: usize,
    pub statistic: Option<StatKind>,
    pub rows: Vec<WilfRow>,
    /// Smallest `n` where counts or tables differ.
    pub first_discrepancy: Option<usize>,
}

impl WilfReport {
    pub fn holds(&self) -> bool {
        self.first_discrepancy.is_none()
    }
}

/// Compares `|S_n(sigma)|` with `|S_n(tau)|`, and optionally their statistic
/// tables, for `1 <= n <= n_max`.
pub fn wilf_check(sigma: &Pattern, tau: &Pattern, n_max: usize, kind: Option<StatKind>) -> WilfReport {
    let rows: Vec<WilfRow> = (1..=n_max)
        .map(|n| match kind {
            Some(kind) => {
                let a = stat_distribution(sigma, n, kind);
                let b = stat_distribution(tau, n, kind);
                WilfRow {
                    n,
                    left: to_u64(a.total()),
                    right: to_u64(b.total()),
                    tables_agree: Some(a == b),
                }
            }
            None => WilfRow {
                n,
                left: count_pattern(sigma, n),
                right: count_pattern(tau, n),
                tables_agree: None,
            },
        })
        .collect();
    let first_discrepancy = rows.iter().find(|r| !r.agrees()).map(|r| r.n);
    WilfReport {
        left: sigma.to_string(),
        right: tau.to_string(),
        n_max,
        statistic: kind,
        rows,
        first_discrepancy,
    }
}

fn to_u64(v: &BigUint) -> u64 {
    u64::try_from(v).expect("enumerated totals fit in 64 bits")
}

/// First permutation on which two classes disagree, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetDifference {
    pub n: usize,
    pub permutation: Permutation,
    pub avoids_vincular: bool,
    pub avoids_barred: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoincidenceReport {
    pub vincular: String,
    pub barred: String,
    pub n_max: usize,
    pub class_sizes: Vec<u64>,
    pub difference: Option<SetDifference>,
}

impl CoincidenceReport {
    pub fn holds(&self) -> bool {
        self.difference.is_none()
    }
}

/// Set equality `S_n(v) = S_n(b)` for every `n <= n_max`. The vincular side
/// comes from the pruned enumerator, the barred side from filtering `S_n`.
pub fn barred_set_coincidence(v: &VincularPattern, b: &BarredPattern, n_max: usize) -> CoincidenceReport {
    let mut class_sizes = Vec::new();
    let mut difference = None;
    for n in 1..=n_max {
        let left: Vec<Permutation> = Avoiders::new(std::slice::from_ref(v), n).collect();
        let right = avoiders_of(&Pattern::Barred(b.clone()), n);
        class_sizes.push(left.len() as u64);
        if left != right {
            let perm = left
                .iter()
                .merge(right.iter())
                .dedup_with_count()
                .find(|(c, _)| *c == 1)
                .map(|(_, p)| p.clone())
                .expect("unequal sorted lists differ somewhere");
            difference = Some(SetDifference {
                n,
                avoids_vincular: avoids_all(&perm, std::slice::from_ref(v)),
                avoids_barred: avoids_barred_slice(perm.letters(), b),
                permutation: perm,
            });
            break;
        }
    }
    CoincidenceReport {
        vincular: v.to_string(),
        barred: b.to_string(),
        n_max,
        class_sizes,
        difference,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn vp(s: &str) -> VincularPattern {
        s.parse().unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(count_avoiders(&[vp("134-2")], 4), 23);
        assert_eq!(count_avoiders(&[vp("21-3")], 0), 1);
        assert_eq!(
            count_avoiders(&[vp("134-2")], 6),
            count_avoiders(&[vp("124-3")], 6)
        );
        assert_eq!(count_pattern(&pat("23~14"), 0), 1);
    }

    #[test]
    fn first_letter_table_at_four() {
        let t = stat_distribution(&pat("124-3"), 4, StatKind::FirstLetter);
        let got: Vec<(String, String)> =
            t.iter().map(|(k, v)| (k.key(), v.to_string())).collect();
        let want = [("1", "5"), ("2", "6"), ("3", "6"), ("4", "6")]
            .map(|(a, b)| (a.to_string(), b.to_string()));
        assert_eq!(got, want);
        assert_eq!(t.total(), &BigUint::from(23u32));
    }

    #[test]
    fn totals_match_counts() {
        for kind in StatKind::ALL {
            let t = stat_distribution(&pat("1-32-4"), 6, kind);
            assert_eq!(to_u64(t.total()), count_pattern(&pat("1-32-4"), 6));
        }
    }

    #[test]
    fn table_json_round_trip() {
        let t = stat_distribution(&pat("124-3"), 5, StatKind::DescentSet);
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.contains("\"1,3\""), "{json}");
        let back: StatTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        let huge = r#"{"kind":"first_letter","total":123456789012345678901234567890,"counts":{"1":123456789012345678901234567890}}"#;
        let big: StatTable = serde_json::from_str(huge).unwrap();
        assert_eq!(big.total().to_string(), "123456789012345678901234567890");
        let bad = r#"{"kind":"first_letter","total":2,"counts":{"1":1}}"#;
        assert!(serde_json::from_str::<StatTable>(bad).is_err());
    }

    #[test]
    fn wilf_reports() {
        let r = wilf_check(&pat("124-3"), &pat("134-2"), 6, Some(StatKind::FirstLetter));
        assert!(r.holds());
        let r = wilf_check(&pat("124-3"), &pat("123-4"), 6, None);
        let n = r.first_discrepancy.expect("different classes");
        assert!(n <= 6);
        assert!(r.rows[..n - 1].iter().all(WilfRow::agrees));
    }

    #[test]
    fn coincidence_detects_differences() {
        assert!(barred_set_coincidence(&vp("3-14-2"), &"41~352".parse().unwrap(), 6).holds());
        let r = barred_set_coincidence(&vp("1-24-3"), &"25~134".parse().unwrap(), 6);
        let d = r.difference.expect("1-24-3 matches 23~154, not 25~134");
        assert_ne!(d.avoids_vincular, d.avoids_barred);
    }
}
