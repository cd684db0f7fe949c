//! Feature orderings: which feature occupies each fill rank.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::corr::CorrMatrix;
use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// A permutation of `0..N`; `order[n]` is the feature placed at rank `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct FeatureOrdering(Vec<usize>);

impl FeatureOrdering {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &f in &order {
            if f >= n || std::mem::replace(&mut seen[f], true) {
                return Err(Error::invalid_argument(format!(
                    "ordering is not a permutation of 0..{n} (offending entry {f})"
                )));
            }
        }
        Ok(FeatureOrdering(order))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<usize>> for FeatureOrdering {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        FeatureOrdering::new(v)
    }
}

impl From<FeatureOrdering> for Vec<usize> {
    fn from(o: FeatureOrdering) -> Self {
        o.0
    }
}

fn check_nonempty(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid_argument("feature count must be at least 1"));
    }
    Ok(())
}

pub fn identity_ordering(n_features: usize) -> Result<FeatureOrdering> {
    check_nonempty(n_features)?;
    Ok(FeatureOrdering((0..n_features).collect()))
}

/// Fisher–Yates shuffle of `0..n` driven by [`SeededRng`].
pub fn random_ordering(n_features: usize, seed: u64) -> Result<FeatureOrdering> {
    check_nonempty(n_features)?;
    Ok(FeatureOrdering(SeededRng::new(seed).permutation(n_features)))
}

/// Greedy correlation chain.
///
/// 1. Seed with the unused pair `(i, j)`, `i < j`, of largest signed
///    correlation; ties go to the lexicographically smallest `(i, j)`.
///    Emit `i`, then `j`.
/// 2. From the last emitted feature, append the unused feature it is most
///    correlated with (ties to the smallest index) while that correlation is
///    strictly positive.
/// 3. Otherwise reseed as in step 1 among the unused features. A single
///    leftover feature is appended as is.
///
/// Pairs are sorted once up front; the reseed cursor only moves forward
/// because a pair with a used endpoint never becomes usable again.
pub fn sdic_ordering(corr: &CorrMatrix) -> Result<FeatureOrdering> {
    let n = corr.n();
    check_nonempty(n)?;

    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i as u32, j as u32));
        }
    }
    pairs.sort_by(|&(a, b), &(c, d)| {
        let lhs = corr.get(a as usize, b as usize);
        let rhs = corr.get(c as usize, d as usize);
        rhs.total_cmp(&lhs).then_with(|| (a, b).cmp(&(c, d)))
    });

    let mut used = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut cursor = 0;

    'outer: while order.len() < n {
        if n - order.len() == 1 {
            order.push(used.iter().position(|u| !u).expect("one feature left"));
            break;
        }
        let (i, j) = loop {
            let (a, b) = pairs[cursor];
            cursor += 1;
            if !used[a as usize] && !used[b as usize] {
                break (a as usize, b as usize);
            }
        };
        for f in [i, j] {
            used[f] = true;
            order.push(f);
        }

        let mut last = j;
        loop {
            let row = corr.row(last);
            let best = (0..n)
                .filter(|&k| !used[k])
                .max_by(|&a, &b| match row[a].total_cmp(&row[b]) {
                    Ordering::Equal => b.cmp(&a),
                    o => o,
                });
            match best {
                Some(k) if row[k] > 0.0 => {
                    used[k] = true;
                    order.push(k);
                    last = k;
                }
                Some(_) => continue 'outer,
                None => break 'outer,
            }
        }
    }
    Ok(FeatureOrdering(order))
}
