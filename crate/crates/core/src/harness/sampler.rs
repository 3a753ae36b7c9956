//! Frobenius samplers: from a prime to the conjugacy data it determines.
//!
//! Each sampler partitions the classes of its target group into blocks, the
//! finest data observable from a prime. For cyclotomic fields a block is one
//! class; for polynomials it is a cycle type; for elliptic curves mod ℓ it is a
//! (trace, determinant) fiber. Class powers respect every partition, so powers
//! of Frobenius are well defined on blocks.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;

use super::par_map;
use crate::arith::{ap, factor_pattern, primes_up_to, radical, Ap, ECurve, FactorPattern, PolyZ};
use crate::characters::{auto_table, CharacterTable};
use crate::error::{Error, Result};
use crate::group::{perm, Group, GroupSpec};
use crate::littlewood::ClassFunction;
use crate::nt::gcd;
use crate::sets::ClassSet;

#[derive(Clone, Debug)]
pub enum SamplerKind {
    /// `Q(ζ_n)`, group `(Z/n)^×`.
    Cyclotomic(u64),
    /// Splitting field of a squarefree polynomial, Galois group inside `S_n`.
    Polynomial(PolyZ),
    /// Mod-ℓ representation of an elliptic curve inside `GL2(F_ℓ)`.
    Elliptic { curve: ECurve, ell: u64 },
}

enum Lookup {
    Residue(Vec<usize>),
    CycleType(HashMap<Vec<u32>, usize>),
    TraceDet(Vec<usize>),
}

pub struct FrobSampler {
    kind: SamplerKind,
    group: Group,
    table: OnceLock<CharacterTable>,
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    labels: Vec<String>,
    lookup: Lookup,
    modulus: u64,
}

/// Frobenius blocks for consecutive primes; `None` marks ramified primes.
#[derive(Clone, Debug)]
pub struct Samples {
    pub primes: Vec<u64>,
    pub blocks: Vec<Option<usize>>,
}

impl Samples {
    pub fn ramified(&self) -> usize {
        self.blocks.iter().filter(|b| b.is_none()).count()
    }

    /// Restriction to primes `< x`.
    pub fn below(&self, x: u64) -> Samples {
        let k = self.primes.partition_point(|&p| p < x);
        Samples { primes: self.primes[..k].to_vec(), blocks: self.blocks[..k].to_vec() }
    }
}

const NONE: usize = usize::MAX;

fn partition(group: &Group, key: impl Fn(usize) -> String) -> (Vec<usize>, Vec<Vec<usize>>, Vec<String>) {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut block_of = Vec::with_capacity(group.class_count());
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut labels = Vec::new();
    for c in 0..group.class_count() {
        let k = key(c);
        let b = *index.entry(k.clone()).or_insert_with(|| {
            blocks.push(Vec::new());
            labels.push(k);
            blocks.len() - 1
        });
        blocks[b].push(c);
        block_of.push(b);
    }
    (block_of, blocks, labels)
}

fn format_type(t: &[u32]) -> String {
    let parts: Vec<String> = t.iter().map(u32::to_string).collect();
    format!("[{}]", parts.join(","))
}

impl FrobSampler {
    pub fn cyclotomic(n: u64) -> Result<Self> {
        let group = Group::build(&GroupSpec::Units(n))?;
        let (block_of, blocks, labels) = partition(&group, |c| group.format_element(group.class_rep(c)));
        let mut residue = vec![NONE; n as usize];
        for x in 0..group.order() {
            let r: usize = group.format_element(x).parse().map_err(|_| Error::Invariant("unit residue".into()))?;
            residue[r] = block_of[group.class_of(x)];
        }
        let modulus = radical(&BigInt::from(n))?;
        Ok(FrobSampler {
            kind: SamplerKind::Cyclotomic(n),
            group,
            table: OnceLock::new(),
            block_of,
            blocks,
            labels,
            lookup: Lookup::Residue(residue),
            modulus,
        })
    }

    /// Polynomial sampler with target group `S_n`, or a supplied permutation
    /// group of degree `n` known to contain the Galois group.
    pub fn polynomial(p: PolyZ, group: Option<Group>) -> Result<Self> {
        let n = p.degree();
        let group = match group {
            Some(g) => {
                if g.permutation_degree() != Some(n) {
                    return Err(Error::invalid(format!("{} does not act on {n} points", g.name())));
                }
                g
            }
            None => Group::build(&GroupSpec::Symmetric(n))?,
        };
        let disc = p.discriminant();
        if disc == BigInt::from(0) {
            return Err(Error::invalid(format!("{p} is not squarefree")));
        }
        let type_of = |c: usize| perm::cycle_type(&group.as_permutation(group.class_rep(c)).unwrap());
        let (block_of, blocks, labels) = partition(&group, |c| format_type(&type_of(c)));
        let lookup = blocks.iter().enumerate().map(|(b, cs)| (type_of(cs[0]), b)).collect();
        let modulus = radical(&(disc * BigInt::from(p.leading())))?;
        Ok(FrobSampler {
            kind: SamplerKind::Polynomial(p),
            group,
            table: OnceLock::new(),
            block_of,
            blocks,
            labels,
            lookup: Lookup::CycleType(lookup),
            modulus,
        })
    }

    pub fn elliptic(curve: ECurve, ell: u64) -> Result<Self> {
        let group = Group::build(&GroupSpec::GL2(ell))?;
        let td = |c: usize| {
            let (m, _, l) = group.as_matrix(group.class_rep(c)).unwrap();
            ((m[0] + m[3]) % l, (m[0] * m[3] + l * l - m[1] * m[2]) % l)
        };
        let (block_of, blocks, labels) = partition(&group, |c| {
            let (t, d) = td(c);
            format!("tr={t},det={d}")
        });
        let mut table = vec![NONE; (ell * ell) as usize];
        for (b, cs) in blocks.iter().enumerate() {
            let (t, d) = td(cs[0]);
            table[(t * ell + d) as usize] = b;
        }
        let mut modulus = curve.bad_support()?;
        if modulus % ell != 0 {
            modulus *= ell;
        }
        Ok(FrobSampler {
            kind: SamplerKind::Elliptic { curve, ell },
            group,
            table: OnceLock::new(),
            block_of,
            blocks,
            labels,
            lookup: Lookup::TraceDet(table),
            modulus,
        })
    }

    /// Parses `cyc:n`, `poly:...[@group]`, or `ec:...@ℓ`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(n) = spec.strip_prefix("cyc:") {
            let n = n.trim().parse().map_err(|_| Error::parse(format!("bad modulus in '{spec}'")))?;
            return FrobSampler::cyclotomic(n);
        }
        if spec.starts_with("poly:") {
            let (p, g) = match spec.split_once('@') {
                Some((p, g)) => (p, Some(Group::build(&g.parse()?)?)),
                None => (spec, None),
            };
            return FrobSampler::polynomial(p.parse()?, g);
        }
        if spec.starts_with("ec:") {
            let (c, l) = spec
                .split_once('@')
                .ok_or_else(|| Error::parse("elliptic sampler needs ec:...@ℓ"))?;
            let ell = l.trim().parse().map_err(|_| Error::parse(format!("bad prime in '{spec}'")))?;
            return FrobSampler::elliptic(c.parse()?, ell);
        }
        Err(Error::parse(format!("unknown sampler '{spec}' (cyc:n | poly:... | ec:...@ℓ)")))
    }

    pub fn kind(&self) -> &SamplerKind {
        &self.kind
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn table(&self) -> Result<&CharacterTable> {
        if let Some(t) = self.table.get() {
            return Ok(t);
        }
        let t = auto_table(&self.group)?;
        Ok(self.table.get_or_init(|| t))
    }

    /// Product of the primes where this sampler may be ramified.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// How ramified primes are recognised.
    pub fn ramification_convention(&self) -> &'static str {
        match self.kind {
            SamplerKind::Cyclotomic(_) => "p divides n",
            SamplerKind::Polynomial(_) => "P mod p not squarefree or p divides the leading coefficient",
            SamplerKind::Elliptic { .. } => "p divides the discriminant or p = ℓ",
        }
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_classes(&self, b: usize) -> &[usize] {
        &self.blocks[b]
    }

    pub fn block_label(&self, b: usize) -> &str {
        &self.labels[b]
    }

    pub fn block_of_class(&self, c: usize) -> usize {
        self.block_of[c]
    }

    /// `Σ |c|` over the block.
    pub fn block_size(&self, b: usize) -> u64 {
        self.blocks[b].iter().map(|&c| self.group.class_size(c)).sum()
    }

    /// Block containing the `k`-th power of any element of block `b`.
    pub fn block_power(&self, b: usize, k: u32) -> usize {
        self.block_of[self.group.class_power(self.blocks[b][0], k as i64)]
    }

    /// Frobenius block at `p`, or `None` when `p` is ramified.
    pub fn frob(&self, p: u64) -> Result<Option<usize>> {
        match (&self.kind, &self.lookup) {
            (SamplerKind::Cyclotomic(n), Lookup::Residue(r)) => {
                if gcd(*n, p) != 1 {
                    return Ok(None);
                }
                Ok(Some(r[(p % n) as usize]))
            }
            (SamplerKind::Polynomial(poly), Lookup::CycleType(map)) => match factor_pattern(poly, p) {
                FactorPattern::Ramified => Ok(None),
                FactorPattern::Degrees(mut d) => {
                    // Cycle types are stored in decreasing order.
                    d.sort_unstable_by(|a, b| b.cmp(a));
                    map.get(&d).copied().map(Some).ok_or_else(|| {
                        Error::Invariant(format!(
                            "pattern {} at p = {p} has no class in {}",
                            format_type(&d),
                            self.group.name()
                        ))
                    })
                }
            },
            (SamplerKind::Elliptic { curve, ell }, Lookup::TraceDet(t)) => {
                if p == *ell {
                    return Ok(None);
                }
                match ap(curve, p)? {
                    Ap::Bad => Ok(None),
                    Ap::Good(a) => {
                        let tr = a.rem_euclid(*ell as i64) as u64;
                        Ok(Some(t[(tr * ell + p % ell) as usize]))
                    }
                }
            }
            _ => unreachable!("lookup matches kind"),
        }
    }

    /// Frobenius blocks of all primes `≤ x`, computed in parallel.
    pub fn sample(&self, x: u64) -> Result<Samples> {
        let primes = primes_up_to(x)?.primes().to_vec();
        let blocks = par_map(&primes, |p| self.frob(p)).into_iter().collect::<Result<Vec<_>>>()?;
        Ok(Samples { primes, blocks })
    }

    /// Value of `f` on each block; `f` must be constant on blocks.
    pub fn block_values(&self, f: &ClassFunction) -> Result<Vec<Complex64>> {
        if f.group() != &self.group {
            return Err(Error::GroupMismatch(format!(
                "function on {} but sampler on {}",
                f.group().name(),
                self.group.name()
            )));
        }
        self.blocks
            .iter()
            .enumerate()
            .map(|(b, cs)| {
                let v = f.value(cs[0]);
                if cs.iter().any(|&c| (f.value(c) - v).norm() > 1e-12 * (1.0 + v.norm())) {
                    return Err(Error::invalid(format!(
                        "function is not determined by the observed Frobenius data ({})",
                        self.labels[b]
                    )));
                }
                Ok(v)
            })
            .collect()
    }

    /// Membership of each block in `d`; `d` must be a union of blocks.
    pub fn block_mask(&self, d: &ClassSet) -> Result<Vec<bool>> {
        let f = ClassFunction::indicator(d);
        Ok(self.block_values(&f)?.iter().map(|v| v.re > 0.5).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_blocks_are_residues() {
        let s = FrobSampler::cyclotomic(4).unwrap();
        assert_eq!(s.block_count(), 2);
        let b5 = s.frob(5).unwrap().unwrap();
        let b3 = s.frob(3).unwrap().unwrap();
        assert_ne!(b5, b3);
        assert_eq!(s.block_label(b5), "1");
        assert_eq!(s.frob(2).unwrap(), None);
        assert_eq!(s.modulus(), 2);
    }

    #[test]
    fn polynomial_blocks_are_cycle_types() {
        let s = FrobSampler::parse("poly:1,0,-1,-1").unwrap();
        assert_eq!(s.group().order(), 6);
        assert_eq!(s.modulus(), 23);
        let b = s.frob(2).unwrap().unwrap();
        assert_eq!(s.block_size(b), 2);
        assert_eq!(s.frob(23).unwrap(), None);
        // x^3 - x - 1 has exactly one root mod 5 (x = 2): a transposition.
        let b5 = s.frob(5).unwrap().unwrap();
        assert_eq!(s.block_size(b5), 3);
        assert_eq!(s.block_power(b, 3), s.block_of_class(0));
    }

    #[test]
    fn elliptic_blocks_are_trace_det_fibres() {
        let s = FrobSampler::parse("ec:0,0,1,-1,0@3").unwrap();
        assert_eq!(s.group().order(), 48);
        let total: u64 = (0..s.block_count()).map(|b| s.block_size(b)).sum();
        assert_eq!(total, 48);
        assert_eq!(s.frob(3).unwrap(), None);
        assert_eq!(s.frob(37).unwrap(), None);
        // a_2 = -2 ≡ 1, det 2.
        let b = s.frob(2).unwrap().unwrap();
        assert_eq!(s.block_label(b), "tr=1,det=2");
    }

    #[test]
    fn block_measurability() {
        // Klein four-group on the roots of x^4 + 1: the three involutions share a cycle type.
        let s = FrobSampler::parse("poly:1,0,0,0,1@perm:(1,2)(3,4);(1,3)(2,4)").unwrap();
        assert_eq!(s.block_count(), 2);
        let g = s.group().clone();
        let one = ClassSet::from_classes(&g, [1]);
        assert!(s.block_mask(&one).is_err());
        assert!(s.block_mask(&ClassSet::from_classes(&g, [0]).complement()).is_ok());
        assert_eq!(s.frob(3).unwrap(), Some(s.block_of_class(1)));
    }
}
