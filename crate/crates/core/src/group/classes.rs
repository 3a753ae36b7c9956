//! Conjugacy class data.
//!
//! Classes are ordered identity first, then by `(size, smallest member index)`;
//! the representative of a class is its smallest member.

use std::collections::HashMap;

use super::perm;
use super::{Group, SymmetricRepr};

pub(crate) enum ClassKind {
    /// Abelian: class index equals element index.
    Singleton,
    Explicit { class_of: Vec<u32>, inverse: Vec<u32> },
    Symmetric { by_type: HashMap<Vec<u32>, u32>, inverse: Vec<u32> },
    Product { of_pair: Vec<u32>, k2: usize, inverse: Vec<u32>, pairs: Vec<(u32, u32)> },
}

/// Conjugacy classes of a group.
pub struct ConjugacyData {
    count: usize,
    reps: Vec<usize>,
    sizes: Vec<u64>,
    pub(crate) kind: ClassKind,
}

impl ConjugacyData {
    pub(crate) fn singletons(order: usize) -> Self {
        ConjugacyData { count: order, reps: Vec::new(), sizes: Vec::new(), kind: ClassKind::Singleton }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn size(&self, c: usize) -> u64 {
        match self.kind {
            ClassKind::Singleton => 1,
            _ => self.sizes[c],
        }
    }

    pub fn rep(&self, c: usize) -> usize {
        match self.kind {
            ClassKind::Singleton => c,
            _ => self.reps[c],
        }
    }

    pub fn sizes(&self) -> Vec<u64> {
        (0..self.count).map(|c| self.size(c)).collect()
    }

    /// Cycle type of each class, for symmetric groups.
    pub fn cycle_types(&self) -> Option<Vec<Vec<u32>>> {
        match &self.kind {
            ClassKind::Symmetric { by_type, .. } => {
                let mut out = vec![Vec::new(); self.count];
                for (t, &c) in by_type {
                    out[c as usize] = t.clone();
                }
                Some(out)
            }
            _ => None,
        }
    }

    /// Factor class pair of each class of a direct product.
    pub fn product_pairs(&self) -> Option<&[(u32, u32)]> {
        match &self.kind {
            ClassKind::Product { pairs, .. } => Some(pairs),
            _ => None,
        }
    }
}

/// Orbit partition under conjugation by generators.
pub(crate) fn enumerate_classes(
    order: usize,
    gens: &[usize],
    mul: impl Fn(usize, usize) -> usize,
    inv: impl Fn(usize) -> usize,
) -> ConjugacyData {
    let gen_inv: Vec<usize> = gens.iter().map(|&s| inv(s)).collect();
    let mut raw = vec![u32::MAX; order];
    let mut found: Vec<(u64, usize)> = Vec::new();
    for g in 0..order {
        if raw[g] != u32::MAX {
            continue;
        }
        let id = found.len() as u32;
        raw[g] = id;
        let mut stack = vec![g];
        let mut size = 1u64;
        while let Some(x) = stack.pop() {
            for (s, si) in gens.iter().zip(&gen_inv) {
                let y = mul(mul(*s, x), *si);
                if raw[y] == u32::MAX {
                    raw[y] = id;
                    size += 1;
                    stack.push(y);
                }
            }
        }
        found.push((size, g));
    }
    let mut order_idx: Vec<usize> = (0..found.len()).collect();
    order_idx.sort_by_key(|&i| found[i]);
    let mut new_id = vec![0u32; found.len()];
    for (new, &old) in order_idx.iter().enumerate() {
        new_id[old] = new as u32;
    }
    let class_of: Vec<u32> = raw.iter().map(|&c| new_id[c as usize]).collect();
    let reps: Vec<usize> = order_idx.iter().map(|&i| found[i].1).collect();
    let sizes: Vec<u64> = order_idx.iter().map(|&i| found[i].0).collect();
    let inverse: Vec<u32> = reps.iter().map(|&r| class_of[inv(r)]).collect();
    ConjugacyData { count: reps.len(), reps, sizes, kind: ClassKind::Explicit { class_of, inverse } }
}

/// Classes of `S_n` by cycle type; representatives are lexicographically least.
pub(crate) fn symmetric_classes(s: &SymmetricRepr) -> ConjugacyData {
    let mut first: HashMap<Vec<u32>, (u64, u64)> = HashMap::new();
    let mut p = perm::identity(s.n);
    let mut rank = 0u64;
    loop {
        let ct = perm::cycle_type(&p);
        first.entry(ct).or_insert((rank, 0)).1 += 1;
        rank += 1;
        if !perm::next_lex(&mut p) {
            break;
        }
    }
    let mut entries: Vec<(Vec<u32>, u64, u64)> = first.into_iter().map(|(t, (r, n))| (t, n, r)).collect();
    entries.sort_by_key(|(_, size, rep)| (*size, *rep));
    let by_type: HashMap<Vec<u32>, u32> = entries
        .iter()
        .enumerate()
        .map(|(i, (t, _, _))| (t.clone(), i as u32))
        .collect();
    ConjugacyData {
        count: entries.len(),
        reps: entries.iter().map(|e| e.2 as usize).collect(),
        sizes: entries.iter().map(|e| e.1).collect(),
        kind: ClassKind::Symmetric { inverse: (0..entries.len() as u32).collect(), by_type },
    }
}

/// Pairs of factor classes, reordered by the standard rule.
pub(crate) fn product_classes(g: &Group, h: &Group) -> ConjugacyData {
    let (k1, k2) = (g.class_count(), h.class_count());
    let n2 = h.order();
    let mut entries: Vec<(u64, usize, u32, u32)> = Vec::with_capacity(k1 * k2);
    for c1 in 0..k1 {
        for c2 in 0..k2 {
            let size = g.class_size(c1) * h.class_size(c2);
            let rep = g.class_rep(c1) * n2 + h.class_rep(c2);
            entries.push((size, rep, c1 as u32, c2 as u32));
        }
    }
    entries.sort_unstable();
    let mut of_pair = vec![0u32; k1 * k2];
    for (i, e) in entries.iter().enumerate() {
        of_pair[e.2 as usize * k2 + e.3 as usize] = i as u32;
    }
    let inverse = entries
        .iter()
        .map(|e| of_pair[g.inverse_class(e.2 as usize) * k2 + h.inverse_class(e.3 as usize)])
        .collect();
    ConjugacyData {
        count: entries.len(),
        reps: entries.iter().map(|e| e.1).collect(),
        sizes: entries.iter().map(|e| e.0).collect(),
        kind: ClassKind::Product {
            of_pair,
            k2,
            inverse,
            pairs: entries.iter().map(|e| (e.2, e.3)).collect(),
        },
    }
}
