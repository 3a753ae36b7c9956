//! Subgroups and quotients of enumerable groups.

use std::collections::HashMap;

use super::{Group, Repr};
use crate::error::{Error, Result};

/// Largest parent order for which quotients are materialized.
const QUOTIENT_BUDGET: usize = 10_000_000;

pub(crate) struct SubRepr {
    pub parent: Group,
    /// Parent indices, sorted ascending (identity first).
    pub elems: Vec<usize>,
    pub index: HashMap<usize, u32>,
}

pub(crate) struct QuotRepr {
    pub parent: Group,
    /// Smallest parent element of each coset, ascending.
    pub reps: Vec<usize>,
    pub coset_of: Vec<u32>,
}

/// A subgroup, usable as a group in its own right.
#[derive(Clone, Debug)]
pub struct SubgroupHandle {
    group: Group,
}

/// A quotient `G/N` with its projection.
#[derive(Clone, Debug)]
pub struct QuotientHandle {
    quotient: Group,
    kernel: SubgroupHandle,
}

impl SubgroupHandle {
    pub fn group(&self) -> &Group {
        &self.group
    }

    fn repr(&self) -> &SubRepr {
        match self.group.repr() {
            Repr::Sub(s) => s,
            _ => unreachable!("subgroup handle wraps a subgroup"),
        }
    }

    pub fn parent(&self) -> &Group {
        &self.repr().parent
    }

    /// Parent indices of the members, ascending.
    pub fn elements(&self) -> &[usize] {
        &self.repr().elems
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn contains(&self, parent_elem: usize) -> bool {
        self.repr().index.contains_key(&parent_elem)
    }

    /// Subgroup index of a parent element.
    pub fn local(&self, parent_elem: usize) -> Option<usize> {
        self.repr().index.get(&parent_elem).map(|&i| i as usize)
    }

    /// Parent index of a subgroup element.
    pub fn embed(&self, local: usize) -> usize {
        self.repr().elems[local]
    }

    pub fn is_normal(&self) -> bool {
        let g = self.parent();
        g.generators().iter().all(|&s| {
            self.group
                .generators()
                .iter()
                .all(|&n| self.contains(g.conjugate(self.embed(n), s)))
        })
    }
}

impl QuotientHandle {
    pub fn group(&self) -> &Group {
        &self.quotient
    }

    pub fn kernel(&self) -> &SubgroupHandle {
        &self.kernel
    }

    pub fn parent(&self) -> &Group {
        self.kernel.parent()
    }

    /// The coset of a parent element.
    pub fn project(&self, parent_elem: usize) -> usize {
        match self.quotient.repr() {
            Repr::Quot(q) => q.coset_of[parent_elem] as usize,
            _ => unreachable!("quotient handle wraps a quotient"),
        }
    }

    /// Smallest parent element of a coset.
    pub fn lift(&self, coset: usize) -> usize {
        match self.quotient.repr() {
            Repr::Quot(q) => q.reps[coset],
            _ => unreachable!("quotient handle wraps a quotient"),
        }
    }
}

impl Group {
    /// Subgroup generated by the given elements.
    pub fn subgroup(&self, generators: &[usize]) -> Result<SubgroupHandle> {
        if let Some(&bad) = generators.iter().find(|&&g| g >= self.order()) {
            return Err(Error::invalid(format!("element {bad} is not in {}", self.name())));
        }
        let mut index: HashMap<usize, u32> = HashMap::from([(0usize, 0u32)]);
        let mut elems = vec![0usize];
        let mut i = 0;
        while i < elems.len() {
            for &s in generators {
                let y = self.mul(elems[i], s);
                if !index.contains_key(&y) {
                    index.insert(y, 0);
                    elems.push(y);
                    if elems.len() > super::ENUMERATION_BUDGET {
                        return Err(Error::Budget("subgroup exceeds the enumeration budget".into()));
                    }
                }
            }
            i += 1;
        }
        Ok(self.subgroup_from_sorted(elems))
    }

    /// Wraps a set of elements already known to be a subgroup.
    pub(crate) fn subgroup_from_sorted(&self, mut elems: Vec<usize>) -> SubgroupHandle {
        elems.sort_unstable();
        elems.dedup();
        let index: HashMap<usize, u32> = elems.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        let name = format!("{}<{}>", self.name(), elems.len());
        let order = elems.len();
        let repr = Repr::Sub(SubRepr { parent: self.clone(), elems, index });
        let group = Group::assemble(name, order, repr, None).expect("subgroup within budget");
        SubgroupHandle { group }
    }

    /// The whole group as a subgroup of itself.
    pub fn as_subgroup(&self) -> Result<SubgroupHandle> {
        let gens = self.generators().to_vec();
        self.subgroup(&gens)
    }

    /// Quotient by a normal subgroup.
    pub fn quotient(&self, normal: &SubgroupHandle) -> Result<QuotientHandle> {
        if normal.parent() != self {
            return Err(Error::GroupMismatch("subgroup belongs to a different group".into()));
        }
        if self.order() > QUOTIENT_BUDGET {
            return Err(Error::Budget("quotient parent exceeds the budget".into()));
        }
        if !normal.is_normal() {
            return Err(Error::NotNormal(format!("subgroup of order {} is not normal", normal.order())));
        }
        let mut coset_of = vec![u32::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if coset_of[g] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for &n in normal.elements() {
                coset_of[self.mul(g, n)] = id;
            }
        }
        let order = reps.len();
        let name = format!("{}/{}", self.name(), normal.order());
        let gens: Vec<usize> = {
            let mut v: Vec<usize> = self
                .generators()
                .iter()
                .map(|&s| coset_of[s] as usize)
                .filter(|&c| c != 0)
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let repr = Repr::Quot(QuotRepr { parent: self.clone(), reps, coset_of });
        let quotient = Group::assemble(name, order, repr, Some(gens))?;
        let handle = QuotientHandle { quotient, kernel: normal.clone() };
        for &a in self.generators() {
            for &b in self.generators() {
                let lhs = handle.project(self.mul(a, b));
                let rhs = handle.quotient.mul(handle.project(a), handle.project(b));
                if lhs != rhs {
                    return Err(Error::Invariant("projection is not a homomorphism".into()));
                }
            }
        }
        Ok(handle)
    }

    /// Center of the group, as parent indices.
    pub fn center(&self) -> Vec<usize> {
        if self.is_abelian() {
            return (0..self.order()).collect();
        }
        (0..self.class_count())
            .filter(|&c| self.class_size(c) == 1)
            .map(|c| self.class_rep(c))
            .collect()
    }
}
