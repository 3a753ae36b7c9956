//! Conjugation-invariant subsets, stored as class masks, and their mini-language.
//!
//! Grammar:
//! `all` | `class:<elem>` | `union:<elem>,<elem>,…` | `gen` | `ncycle` | `fix=0` |
//! `fix>=k` | `trace=a[,dr|,nr]` | `coset:<elem>,{<elem>,…}` | `file:<path>` | `!<set>`.
//! `dr` keeps elements with distinct eigenvalues in `F_l`; `nr` keeps the rest.

use crate::error::{Error, Result};
use crate::group::elements::split_top_level;
use crate::group::perm;
use crate::group::Group;

/// A union of conjugacy classes of a group.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassSet {
    group: Group,
    members: Vec<bool>,
}

impl ClassSet {
    pub fn from_mask(group: &Group, members: Vec<bool>) -> Result<Self> {
        if members.len() != group.class_count() {
            return Err(Error::invalid(format!(
                "class mask has length {}, expected {}",
                members.len(),
                group.class_count()
            )));
        }
        Ok(ClassSet { group: group.clone(), members })
    }

    pub fn from_classes(group: &Group, classes: impl IntoIterator<Item = usize>) -> Self {
        let mut members = vec![false; group.class_count()];
        for c in classes {
            members[c] = true;
        }
        ClassSet { group: group.clone(), members }
    }

    pub fn empty(group: &Group) -> Self {
        ClassSet { group: group.clone(), members: vec![false; group.class_count()] }
    }

    pub fn all(group: &Group) -> Self {
        ClassSet { group: group.clone(), members: vec![true; group.class_count()] }
    }

    /// Classes satisfying a predicate on the class representative.
    pub fn filter(group: &Group, pred: impl Fn(usize) -> bool) -> Self {
        let members = (0..group.class_count()).map(|c| pred(group.class_rep(c))).collect();
        ClassSet { group: group.clone(), members }
    }

    /// The set of the given elements; fails unless it is a union of classes.
    pub fn from_elements(group: &Group, elems: &[usize]) -> Result<Self> {
        let mut count = vec![0u64; group.class_count()];
        let mut seen = std::collections::HashSet::new();
        for &x in elems {
            if x >= group.order() {
                return Err(Error::invalid(format!("element {x} is not in {}", group.name())));
            }
            if seen.insert(x) {
                count[group.class_of(x)] += 1;
            }
        }
        let mut members = vec![false; group.class_count()];
        for (c, &n) in count.iter().enumerate() {
            if n > 0 && n != group.class_size(c) {
                return Err(Error::invalid("element set is not a union of conjugacy classes"));
            }
            members[c] = n > 0;
        }
        Ok(ClassSet { group: group.clone(), members })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn mask(&self) -> &[bool] {
        &self.members
    }

    pub fn contains(&self, c: usize) -> bool {
        self.members[c]
    }

    pub fn contains_element(&self, x: usize) -> bool {
        self.members[self.group.class_of(x)]
    }

    pub fn classes(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&c| self.members[c]).collect()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&b| b)
    }

    /// Number of elements.
    pub fn size(&self) -> u64 {
        self.classes().iter().map(|&c| self.group.class_size(c)).sum()
    }

    /// Member elements, ascending.
    pub fn elements(&self) -> Vec<usize> {
        if self.group.is_abelian() {
            return self.classes();
        }
        (0..self.group.order()).filter(|&x| self.contains_element(x)).collect()
    }

    pub fn complement(&self) -> Self {
        ClassSet { group: self.group.clone(), members: self.members.iter().map(|b| !b).collect() }
    }

    fn zip(&self, other: &ClassSet, op: impl Fn(bool, bool) -> bool) -> Self {
        debug_assert!(self.group == other.group);
        let members = self.members.iter().zip(&other.members).map(|(&a, &b)| op(a, b)).collect();
        ClassSet { group: self.group.clone(), members }
    }

    pub fn union(&self, other: &ClassSet) -> Self {
        self.zip(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &ClassSet) -> Self {
        self.zip(other, |a, b| a && b)
    }

    /// Closed under `g ↦ g⁻¹`.
    pub fn is_symmetric(&self) -> bool {
        (0..self.members.len()).all(|c| !self.members[c] || self.members[self.group.inverse_class(c)])
    }

    /// Parses the set mini-language against a group.
    pub fn parse(group: &Group, spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(rest) = spec.strip_prefix('!') {
            return Ok(Self::parse(group, rest)?.complement());
        }
        if spec == "all" {
            return Ok(Self::all(group));
        }
        if let Some(lit) = spec.strip_prefix("class:") {
            let x = group.parse_element(lit)?;
            return Ok(Self::from_classes(group, [group.class_of(x)]));
        }
        if let Some(list) = spec.strip_prefix("union:") {
            let classes = split_top_level(list, ',')
                .into_iter()
                .map(|lit| group.parse_element(lit).map(|x| group.class_of(x)))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Self::from_classes(group, classes));
        }
        if spec == "gen" {
            let n = group.order() as u64;
            let set = Self::filter(group, |x| group.element_order(x) == n);
            if set.is_empty() {
                return Err(Error::invalid(format!("{} is not cyclic; 'gen' is empty", group.name())));
            }
            return Ok(set);
        }
        if spec == "ncycle" {
            let n = perm_degree(group)?;
            return Ok(Self::filter(group, |x| perm::cycle_type(&group.as_permutation(x).unwrap()) == [n as u32]));
        }
        if let Some(k) = spec.strip_prefix("fix>=") {
            let k: usize = k.trim().parse().map_err(|_| Error::parse(format!("bad fixed-point count in '{spec}'")))?;
            perm_degree(group)?;
            return Ok(Self::filter(group, |x| perm::fixed_points(&group.as_permutation(x).unwrap()) >= k));
        }
        if let Some(k) = spec.strip_prefix("fix=") {
            let k: usize = k.trim().parse().map_err(|_| Error::parse(format!("bad fixed-point count in '{spec}'")))?;
            perm_degree(group)?;
            return Ok(Self::filter(group, |x| perm::fixed_points(&group.as_permutation(x).unwrap()) == k));
        }
        if let Some(rest) = spec.strip_prefix("trace=") {
            return trace_set(group, rest);
        }
        if let Some(rest) = spec.strip_prefix("coset:") {
            let parts = split_top_level(rest, ',');
            if parts.len() != 2 {
                return Err(Error::parse("coset expects coset:<elem>,{<elem>,...}"));
            }
            let a = group.parse_element(parts[0])?;
            let body = parts[1]
                .trim()
                .strip_prefix('{')
                .and_then(|r| r.strip_suffix('}'))
                .ok_or_else(|| Error::parse("coset subgroup must be written {h1,h2,...}"))?;
            let gens = split_top_level(body, ',')
                .into_iter()
                .filter(|s| !s.trim().is_empty())
                .map(|lit| group.parse_element(lit))
                .collect::<Result<Vec<_>>>()?;
            let h = group.subgroup(&gens)?;
            let elems: Vec<usize> = h.elements().iter().map(|&y| group.mul(a, y)).collect();
            return Self::from_elements(group, &elems);
        }
        if let Some(path) = spec.strip_prefix("file:") {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            let elems = text
                .split_whitespace()
                .map(|lit| group.parse_element(lit))
                .collect::<Result<Vec<_>>>()?;
            return Self::from_elements(group, &elems);
        }
        Err(Error::parse(format!("unknown set '{spec}'")))
    }
}

fn perm_degree(group: &Group) -> Result<usize> {
    group
        .permutation_degree()
        .ok_or_else(|| Error::invalid(format!("{} is not a permutation group", group.name())))
}

/// Whether a matrix over `F_l` has distinct eigenvalues, all in `F_l`.
fn distinct_rational_eigenvalues(m: &[u64], n: usize, l: u64) -> Result<bool> {
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || m[i * n + j] == 0));
    if diagonal {
        let mut d: Vec<u64> = (0..n).map(|i| m[i * n + i]).collect();
        d.sort_unstable();
        return Ok(d.windows(2).all(|w| w[0] != w[1]));
    }
    if n != 2 {
        return Err(Error::invalid("eigenvalue test supports diagonal or 2×2 matrices"));
    }
    // Roots of x² - t x + det in F_l, counted directly.
    let t = (m[0] + m[3]) % l;
    let det = (m[0] * m[3] % l + l * l - m[1] * m[2] % l) % l;
    let roots = (0..l).filter(|&x| (x * x % l + l * l - t * x % l + det) % l == 0).count();
    Ok(roots == 2)
}

fn trace_set(group: &Group, rest: &str) -> Result<ClassSet> {
    let (a, flag) = match rest.split_once(',') {
        Some((a, f)) => (a, Some(f.trim())),
        None => (rest, None),
    };
    let a: i64 = a.trim().parse().map_err(|_| Error::parse(format!("bad trace '{a}'")))?;
    if group.as_matrix(0).is_none() {
        return Err(Error::invalid(format!("{} is not a matrix group", group.name())));
    }
    if let Some(f) = flag {
        if f != "dr" && f != "nr" {
            return Err(Error::parse(format!("unknown trace qualifier '{f}' (dr|nr)")));
        }
    }
    let err = std::cell::RefCell::new(None);
    let set = ClassSet::filter(group, |x| {
        let (m, n, l) = group.as_matrix(x).unwrap();
        let tr = (0..n).map(|i| m[i * n + i]).sum::<u64>() % l;
        if tr != a.rem_euclid(l as i64) as u64 {
            return false;
        }
        match flag {
            None => true,
            Some(f) => match distinct_rational_eigenvalues(&m, n, l) {
                Ok(dr) => dr == (f == "dr"),
                Err(e) => {
                    *err.borrow_mut() = Some(e);
                    false
                }
            },
        }
    });
    match err.into_inner() {
        Some(e) => Err(e),
        None => Ok(set),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> Group {
        Group::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn basic_forms() {
        let c6 = build("C6");
        assert_eq!(ClassSet::parse(&c6, "gen").unwrap().elements(), vec![1, 5]);
        assert_eq!(ClassSet::parse(&c6, "!gen").unwrap().size(), 4);
        assert_eq!(ClassSet::parse(&c6, "union:1,3").unwrap().elements(), vec![1, 3]);
        let c4 = build("C4");
        assert_eq!(ClassSet::parse(&c4, "coset:1,{2}").unwrap().elements(), vec![1, 3]);
        assert!(ClassSet::parse(&build("C2xC2"), "gen").is_err());
        let s3 = build("S3");
        assert_eq!(ClassSet::parse(&s3, "ncycle").unwrap().size(), 2);
        assert_eq!(ClassSet::parse(&s3, "fix=0").unwrap(), ClassSet::parse(&s3, "ncycle").unwrap());
        assert_eq!(ClassSet::parse(&s3, "fix>=1").unwrap().size(), 4);
        assert_eq!(ClassSet::parse(&s3, "class:(1,2)").unwrap().size(), 3);
        assert!(ClassSet::parse(&s3, "coset:(1,2),{}").is_err());
        assert!(ClassSet::parse(&s3, "bogus").is_err());
        assert!(ClassSet::parse(&c6, "ncycle").is_err());
    }

    #[test]
    fn trace_sets() {
        let gl = build("GL2(3)");
        let total: u64 = (0..3).map(|a| ClassSet::parse(&gl, &format!("trace={a}")).unwrap().size()).sum();
        assert_eq!(total, 48);
        // Trace 0 with eigenvalues {1, 2}: the conjugacy class of diag(1,2), of size 12.
        assert_eq!(ClassSet::parse(&gl, "trace=0,dr").unwrap().size(), 12);
        let t0 = ClassSet::parse(&gl, "trace=0").unwrap();
        let dr = ClassSet::parse(&gl, "trace=0,dr").unwrap();
        let nr = ClassSet::parse(&gl, "trace=0,nr").unwrap();
        assert_eq!(dr.union(&nr), t0);
        assert!(dr.intersection(&nr).is_empty());
        let t = build("T-diag(2,5)");
        // diag(a, 1-a) with a ∉ {0, 1}, excluding a = 3 where both entries agree.
        assert_eq!(ClassSet::parse(&t, "trace=1,dr").unwrap().size(), 2);
        assert!(ClassSet::parse(&build("S3"), "trace=0").is_err());
    }

    #[test]
    fn element_lists_must_be_class_unions() {
        let s3 = build("S3");
        let t = s3.parse_element("(1,2)").unwrap();
        assert!(ClassSet::from_elements(&s3, &[t]).is_err());
        let path = std::env::temp_dir().join("ll_set_test.txt");
        std::fs::write(&path, "(1,2,3) (1,3,2)\n").unwrap();
        let set = ClassSet::parse(&s3, &format!("file:{}", path.display())).unwrap();
        assert_eq!(set, ClassSet::parse(&s3, "ncycle").unwrap());
        std::fs::write(&path, "(1,2)").unwrap();
        assert!(ClassSet::parse(&s3, &format!("file:{}", path.display())).is_err());
    }

    #[test]
    fn symmetry() {
        let c5 = build("C5");
        assert!(!ClassSet::parse(&c5, "union:1").unwrap().is_symmetric());
        assert!(ClassSet::parse(&c5, "union:1,4").unwrap().is_symmetric());
    }
}
