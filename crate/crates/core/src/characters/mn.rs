//! Symmetric-group characters by border-strip removal.
//!
//! Partitions are handled as beta-sets: a rim hook of length `r` is removed by
//! lowering one bead by `r` onto an empty position; its leg length is the
//! number of beads jumped over.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid("partition parts must be weakly decreasing"));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// All partitions of `n` in descending lexicographic order, `(n)` first.
    pub fn all(n: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Keyed by (beta-set, remaining cycle lengths).
type Memo = HashMap<(Vec<u32>, Vec<u32>), i64>;

/// `χ_λ(μ)` for a partition `λ` and a cycle type `μ` of the same size.
pub fn mn_value(lambda: &Partition, mu: &[u32]) -> Result<i64> {
    let mut mu: Vec<u32> = mu.iter().copied().filter(|&m| m > 0).collect();
    if mu.iter().sum::<u32>() != lambda.size() {
        return Err(Error::invalid(format!(
            "partition {lambda} and cycle type of size {} differ in size",
            mu.iter().sum::<u32>()
        )));
    }
    mu.sort_unstable_by(|a, b| b.cmp(a));
    Ok(value_with(lambda, &mu, &mut Memo::new()))
}

fn value_with(lambda: &Partition, mu_desc: &[u32], memo: &mut Memo) -> i64 {
    let l = lambda.0.len() as u32;
    // Beta-set, descending.
    let beta: Vec<u32> = lambda.0.iter().enumerate().map(|(i, &p)| p + l - 1 - i as u32).collect();
    rec(beta, mu_desc, 0, memo)
}

fn rec(beta: Vec<u32>, mu: &[u32], idx: usize, memo: &mut Memo) -> i64 {
    if idx == mu.len() {
        return 1;
    }
    let key = (beta.clone(), mu[idx..].to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = mu[idx];
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let jumped = beta.iter().filter(|&&g| g > target && g < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let v = rec(next, mu, idx + 1, memo);
        total += if jumped % 2 == 0 { v } else { -v };
    }
    memo.insert(key, total);
    total
}

/// Full integer table: rows follow `Partition::all(n)`, columns the given cycle types.
pub(crate) fn integer_table(n: u32, class_types: &[Vec<u32>]) -> Vec<Vec<i64>> {
    let mut memo = Memo::new();
    Partition::all(n)
        .iter()
        .map(|lambda| {
            class_types
                .iter()
                .map(|ct| {
                    let mut mu = ct.clone();
                    mu.sort_unstable_by(|a, b| b.cmp(a));
                    value_with(lambda, &mu, &mut memo)
                })
                .collect()
        })
        .collect()
}
