//! The sum-of-pairwise-weighted-Hamming-distances measure and the copy
//! weights that turn it into a linear objective over copied elements.

use serde::Serialize;

use crate::error::{Error, Result};

/// Non-negative element weights indexed by element id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSetWeights(Vec<u64>);

impl GroundSetWeights {
    pub fn new(weights: Vec<u64>) -> Self {
        GroundSetWeights(weights)
    }

    pub fn unit(n: usize) -> Self {
        GroundSetWeights(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, e: usize) -> u64 {
        self.0[e]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// Rejects `(weights, k)` pairs for which `k^2 * sum(w)` reaches 2^62.
    /// Below that bound no intermediate sum in this crate can overflow `i64`.
    pub fn check_bound(&self, k: usize) -> Result<()> {
        let total: u128 = self.0.iter().map(|&w| w as u128).sum();
        let value = (k as u128) * (k as u128) * total;
        if value >= 1u128 << 62 {
            return Err(Error::WeightBound { value });
        }
        Ok(())
    }
}

/// `w(e) * (k - 2i + 1)`, the weight of the `i`-th copy (1-based) of an
/// element of weight `w(e)`. The first `m` copies sum to `w(e) * m * (k - m)`.
pub fn copy_weight(weight: u64, k: usize, i: usize) -> Result<i64> {
    if i == 0 || i > k {
        return Err(Error::CopyIndex { index: i, k });
    }
    Ok(weight as i64 * (k as i64 - 2 * i as i64 + 1))
}

/// Sorted, deduplicated copy of `set`.
pub fn normalize(set: &[usize]) -> Vec<usize> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn symmetric_difference_weight(a: &[usize], b: &[usize], w: &GroundSetWeights) -> i64 {
    let (mut i, mut j, mut total) = (0, 0, 0i64);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                total += w.get(a[i]) as i64;
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                total += w.get(b[j]) as i64;
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    total += a[i..].iter().map(|&e| w.get(e) as i64).sum::<i64>();
    total += b[j..].iter().map(|&e| w.get(e) as i64).sum::<i64>();
    total
}

/// Sum over all unordered pairs of the weight of their symmetric difference.
pub fn diversity_pairwise(sets: &[Vec<usize>], w: &GroundSetWeights) -> i64 {
    let sorted: Vec<Vec<usize>> = sets.iter().map(|s| normalize(s)).collect();
    let mut total = 0;
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            total += symmetric_difference_weight(&sorted[i], &sorted[j], w);
        }
    }
    total
}

/// Number of sets containing each element.
pub fn multiplicities(sets: &[Vec<usize>], ground_size: usize) -> Vec<usize> {
    let mut m = vec![0; ground_size];
    for set in sets {
        for e in normalize(set) {
            m[e] += 1;
        }
    }
    m
}

/// `sum_e w(e) * m(e) * (k - m(e))`, equal to [`diversity_pairwise`].
pub fn diversity_multiplicity(sets: &[Vec<usize>], w: &GroundSetWeights) -> i64 {
    let k = sets.len() as i64;
    multiplicities(sets, w.len())
        .iter()
        .enumerate()
        .map(|(e, &m)| w.get(e) as i64 * m as i64 * (k - m as i64))
        .sum()
}

/// `k` solutions over a weighted ground set together with their element
/// multiplicities and diversity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionSet {
    sets: Vec<Vec<usize>>,
    multiplicity: Vec<usize>,
    diversity: i64,
}

impl SolutionSet {
    pub fn new(sets: Vec<Vec<usize>>, w: &GroundSetWeights) -> Self {
        let sets: Vec<Vec<usize>> = sets.iter().map(|s| normalize(s)).collect();
        let multiplicity = multiplicities(&sets, w.len());
        let diversity = diversity_multiplicity(&sets, w);
        debug_assert_eq!(diversity, diversity_pairwise(&sets, w));
        SolutionSet {
            sets,
            multiplicity,
            diversity,
        }
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn k(&self) -> usize {
        self.sets.len()
    }

    pub fn multiplicity(&self) -> &[usize] {
        &self.multiplicity
    }

    pub fn diversity(&self) -> i64 {
        self.diversity
    }
}
