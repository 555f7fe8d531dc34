//! Comparison by ranks: per-function competition ranks of mean results,
//! rank-sums per algorithm and the final ordering of algorithms by rank-sum.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt::Display;

use crate::benchmarks::FunctionId;
use crate::harness::CellSummary;
use crate::optimizers::Algorithm;
use crate::{Error, Result};

/// Competition ("1-2-2-4") ranking, smaller value first: each entry's rank is
/// one plus the number of strictly smaller values.
pub fn competition_rank<K: Ord + Clone>(values: &BTreeMap<K, f64>) -> Result<BTreeMap<K, usize>> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    if values.values().any(|v| v.is_nan()) {
        return Err(Error::NanValue);
    }
    Ok(values
        .iter()
        .map(|(k, v)| (k.clone(), 1 + values.values().filter(|o| *o < v).count()))
        .collect())
}

/// Dense ("1-2-2-3") ranking, smaller value first.
pub fn dense_rank<K: Ord + Clone, V: PartialOrd + Copy>(values: &BTreeMap<K, V>) -> BTreeMap<K, usize> {
    let mut distinct: Vec<V> = Vec::new();
    for v in values.values() {
        if !distinct.iter().any(|d| d == v) {
            distinct.push(*v);
        }
    }
    values
        .iter()
        .map(|(k, v)| (k.clone(), 1 + distinct.iter().filter(|d| *d < v).count()))
        .collect()
}

/// Sum of `algorithm`'s ranks over every function.
pub fn rank_sum<F: Ord + Display, A: Ord>(
    per_function: &BTreeMap<F, BTreeMap<A, usize>>,
    algorithm: &A,
) -> Result<usize> {
    per_function
        .iter()
        .map(|(f, ranks)| {
            ranks.get(algorithm).copied().ok_or_else(|| Error::MissingRank { function: f.to_string() })
        })
        .sum()
}

/// Final ordering by rank-sum. Algorithms with equal sums share a place and
/// the next sum takes the following place (dense ranking).
pub fn lexicographic_rank<K: Ord + Clone>(rank_sums: &BTreeMap<K, usize>) -> Result<BTreeMap<K, usize>> {
    if rank_sums.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(dense_rank(rank_sums))
}

/// Ranks, rank-sums and final ordering over a table of functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable<F: Ord, A: Ord> {
    /// Competition rank of each algorithm within each function.
    pub per_function_ranks: BTreeMap<F, BTreeMap<A, usize>>,
    /// Sum of each algorithm's ranks.
    pub rank_sums: BTreeMap<A, usize>,
    /// Dense ranking of the rank-sums.
    pub lexicographic_ranks: BTreeMap<A, usize>,
}

impl<F: Ord + Clone + Display, A: Ord + Clone> RankTable<F, A> {
    /// Builds the table from `(function, algorithm, mean)` rows. Every
    /// function must report every algorithm.
    pub fn from_means<I: IntoIterator<Item = (F, A, f64)>>(rows: I) -> Result<Self> {
        let mut means: BTreeMap<F, BTreeMap<A, f64>> = BTreeMap::new();
        for (f, a, m) in rows {
            means.entry(f).or_default().insert(a, m);
        }
        if means.is_empty() {
            return Err(Error::EmptySample);
        }
        let per_function_ranks = means
            .iter()
            .map(|(f, m)| competition_rank(m).map(|r| (f.clone(), r)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let mut algorithms: Vec<A> = Vec::new();
        for ranks in per_function_ranks.values() {
            for a in ranks.keys() {
                if !algorithms.contains(a) {
                    algorithms.push(a.clone());
                }
            }
        }
        let rank_sums = algorithms
            .into_iter()
            .map(|a| rank_sum(&per_function_ranks, &a).map(|s| (a, s)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let lexicographic_ranks = lexicographic_rank(&rank_sums)?;
        Ok(Self { per_function_ranks, rank_sums, lexicographic_ranks })
    }
}

impl RankTable<FunctionId, Algorithm> {
    /// Ranks harness output by cell means.
    pub fn from_summaries(cells: &[CellSummary]) -> Result<Self> {
        Self::from_means(cells.iter().map(|c| (c.function, c.algorithm, c.mean)))
    }
}
