use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumeration::Avoiders;
use crate::error::Result;
use crate::patterns::{statistic_of, Permutation, StatKind, VincularPattern};

/// The first thing that went wrong, with the permutations involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    MapFailed { input: Permutation, message: String },
    NotInCodomain { input: Permutation, output: Permutation },
    StatisticChanged { input: Permutation, output: Permutation, statistic: StatKind },
    NotInjective { first: Permutation, second: Permutation, output: Permutation },
    SizeMismatch { domain: u64, codomain: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub domain: String,
    pub codomain: String,
    pub n: usize,
    pub preserved: Vec<StatKind>,
    pub domain_size: u64,
    pub codomain_size: u64,
    pub violation: Option<Violation>,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Applies `map` to all of `S_n(domain)` and checks that it lands in
/// `S_n(codomain)`, is injective, hits every element and keeps each listed
/// statistic. Images are computed in parallel; violations are reported in
/// lexicographic order of the input, so the report is deterministic.
pub fn verify_bijection<F>(
    map: F,
    domain: &VincularPattern,
    codomain: &VincularPattern,
    n: usize,
    preserved: &[StatKind],
) -> BijectionReport
where
    F: Fn(&Permutation) -> Result<Permutation> + Sync,
{
    let source: Vec<Permutation> = Avoiders::new(std::slice::from_ref(domain), n).collect();
    let target: HashSet<Permutation> = Avoiders::new(std::slice::from_ref(codomain), n).collect();
    let images: Vec<Result<Permutation>> = source.par_iter().map(&map).collect();
    let mut report = BijectionReport {
        domain: domain.to_string(),
        codomain: codomain.to_string(),
        n,
        preserved: preserved.to_vec(),
        domain_size: source.len() as u64,
        codomain_size: target.len() as u64,
        violation: None,
    };
    report.violation = first_violation(&source, images, &target, preserved);
    report
}

fn first_violation(
    source: &[Permutation],
    images: Vec<Result<Permutation>>,
    target: &HashSet<Permutation>,
    preserved: &[StatKind],
) -> Option<Violation> {
    let mut seen: HashMap<Permutation, &Permutation> = HashMap::with_capacity(source.len());
    for (input, image) in source.iter().zip(images) {
        let output = match image {
            Ok(o) => o,
            Err(e) => {
                return Some(Violation::MapFailed {
                    input: input.clone(),
                    message: e.to_string(),
                })
            }
        };
        if !target.contains(&output) {
            return Some(Violation::NotInCodomain { input: input.clone(), output });
        }
        if !input.is_empty() {
            for &kind in preserved {
                if statistic_of(input.letters(), kind) != statistic_of(output.letters(), kind) {
                    return Some(Violation::StatisticChanged {
                        input: input.clone(),
                        output,
                        statistic: kind,
                    });
                }
            }
        }
        if let Some(first) = seen.get(&output) {
            return Some(Violation::NotInjective {
                first: (*first).clone(),
                second: input.clone(),
                output,
            });
        }
        seen.insert(output, input);
    }
    (source.len() != target.len()).then_some(Violation::SizeMismatch {
        domain: source.len() as u64,
        codomain: target.len() as u64,
    })
}
