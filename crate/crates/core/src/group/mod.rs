//! Finite groups with canonical element indexing and conjugacy data.
//!
//! Every group indexes its elements `0..order` with the identity at 0.
//! Enumerated families keep explicit element lists; abelian families
//! (cyclic products and tori) and symmetric groups are parameterized
//! so their elements are never materialized.

mod classes;
pub(crate) mod elements;
pub mod perm;
mod spec;
mod sub;

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

pub use classes::ConjugacyData;
pub use spec::GroupSpec;
pub use sub::{QuotientHandle, SubgroupHandle};

use crate::error::{Error, Result};
use crate::nt::{gcd, lcm, primitive_root};
use classes::ClassKind;

/// Largest group enumerated element by element.
pub const ENUMERATION_BUDGET: usize = 100_000;
/// Largest parameterized abelian group.
pub const ABELIAN_BUDGET: u64 = 100_000_000;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// A finite group. Cloning is cheap (shared handle).
#[derive(Clone)]
pub struct Group(Arc<GroupData>);

pub(crate) struct GroupData {
    id: u64,
    name: String,
    order: usize,
    repr: Repr,
    gens: Vec<usize>,
    abelian: bool,
    exponent: u64,
    classes: ConjugacyData,
}

/// Embedding of a torus into diagonal matrices over `F_l`.
#[derive(Debug, Clone)]
pub(crate) enum TorusKind {
    Diag,
    Symp,
    GSymp,
}

#[derive(Debug, Clone)]
pub(crate) struct Torus {
    pub kind: TorusKind,
    pub l: u64,
    /// Powers of the chosen primitive root: `pow[k] = g^k mod l`.
    pub pow: Vec<u64>,
}

pub(crate) struct AbelianRepr {
    pub moduli: Vec<u64>,
    /// Mixed-radix strides; the first coordinate is the most significant.
    pub strides: Vec<u64>,
    pub torus: Option<Torus>,
}

pub(crate) struct SymmetricRepr {
    pub n: usize,
    pub fact: Vec<u64>,
}

pub(crate) struct PermRepr {
    pub degree: usize,
    pub elems: Vec<perm::Perm>,
    pub index: HashMap<u128, u32>,
}

pub(crate) struct Matrix2Repr {
    pub q: u64,
    pub elems: Vec<[u64; 4]>,
    pub lookup: Vec<u32>,
}

pub(crate) struct UnitsRepr {
    pub n: u64,
    pub residues: Vec<u64>,
    pub lookup: Vec<u32>,
}

pub(crate) struct TableRepr {
    pub mult: Vec<u32>,
    /// Label of each element in the source table.
    pub labels: Vec<usize>,
}

pub(crate) enum Repr {
    Abelian(AbelianRepr),
    Symmetric(SymmetricRepr),
    Perm(PermRepr),
    Dihedral(usize),
    Matrix2(Matrix2Repr),
    Units(UnitsRepr),
    Table(TableRepr),
    Product(Group, Group),
    Sub(sub::SubRepr),
    Quot(sub::QuotRepr),
}

impl Repr {
    fn mul(&self, order: usize, a: usize, b: usize) -> usize {
        match self {
            Repr::Abelian(ab) => {
                let mut out = 0u64;
                let (mut a, mut b) = (a as u64, b as u64);
                for (i, &m) in ab.moduli.iter().enumerate() {
                    let s = ab.strides[i];
                    let (xa, xb) = (a / s, b / s);
                    a %= s;
                    b %= s;
                    out += ((xa + xb) % m) * s;
                }
                out as usize
            }
            Repr::Symmetric(sym) => {
                let pa = perm::lex_unrank(a as u64, sym.n, &sym.fact);
                let pb = perm::lex_unrank(b as u64, sym.n, &sym.fact);
                perm::lex_rank(&perm::compose(&pa, &pb), &sym.fact) as usize
            }
            Repr::Perm(p) => {
                let c = perm::compose(&p.elems[a], &p.elems[b]);
                p.index[&perm::key(&c)] as usize
            }
            Repr::Dihedral(n) => {
                let (ra, sa) = (a % n, a / n);
                let (rb, sb) = (b % n, b / n);
                let r = if sa == 0 { (ra + rb) % n } else { (ra + n - rb) % n };
                r + n * ((sa + sb) % 2)
            }
            Repr::Matrix2(m) => {
                let x = mat_mul(&m.elems[a], &m.elems[b], m.q);
                m.lookup[mat_code(&x, m.q)] as usize
            }
            Repr::Units(u) => {
                let r = u.residues[a] * u.residues[b] % u.n;
                u.lookup[r as usize] as usize
            }
            Repr::Table(t) => t.mult[a * order + b] as usize,
            Repr::Product(g, h) => {
                let n2 = h.order();
                g.mul(a / n2, b / n2) * n2 + h.mul(a % n2, b % n2)
            }
            Repr::Sub(s) => s.index[&s.parent.mul(s.elems[a], s.elems[b])] as usize,
            Repr::Quot(q) => q.coset_of[q.parent.mul(q.reps[a], q.reps[b])] as usize,
        }
    }

    fn inv(&self, order: usize, a: usize) -> usize {
        match self {
            Repr::Abelian(ab) => {
                let mut out = 0u64;
                let mut a = a as u64;
                for (i, &m) in ab.moduli.iter().enumerate() {
                    let s = ab.strides[i];
                    let x = a / s;
                    a %= s;
                    out += ((m - x) % m) * s;
                }
                out as usize
            }
            Repr::Symmetric(sym) => {
                let pa = perm::lex_unrank(a as u64, sym.n, &sym.fact);
                perm::lex_rank(&perm::inverse(&pa), &sym.fact) as usize
            }
            Repr::Perm(p) => p.index[&perm::key(&perm::inverse(&p.elems[a]))] as usize,
            Repr::Dihedral(n) => {
                if a < *n {
                    (n - a) % n
                } else {
                    a
                }
            }
            Repr::Matrix2(m) => {
                let [x, y, z, w] = m.elems[a];
                let q = m.q;
                let det = (x * w % q + q * q - y * z % q) % q;
                let di = crate::nt::inv_mod(det, q).expect("invertible matrix");
                let inv = [w * di % q, (q - y) % q * di % q, (q - z) % q * di % q, x * di % q];
                m.lookup[mat_code(&inv, q)] as usize
            }
            Repr::Units(u) => {
                if u.n == 1 {
                    return 0;
                }
                let r = crate::nt::inv_mod(u.residues[a], u.n).expect("unit");
                u.lookup[r as usize] as usize
            }
            Repr::Table(t) => (0..order)
                .find(|&b| t.mult[a * order + b] == 0)
                .expect("table inverse"),
            Repr::Product(g, h) => {
                let n2 = h.order();
                g.inv(a / n2) * n2 + h.inv(a % n2)
            }
            Repr::Sub(s) => s.index[&s.parent.inv(s.elems[a])] as usize,
            Repr::Quot(q) => q.coset_of[q.parent.inv(q.reps[a])] as usize,
        }
    }
}

pub(crate) fn mat_mul(a: &[u64; 4], b: &[u64; 4], q: u64) -> [u64; 4] {
    [
        (a[0] * b[0] + a[1] * b[2]) % q,
        (a[0] * b[1] + a[1] * b[3]) % q,
        (a[2] * b[0] + a[3] * b[2]) % q,
        (a[2] * b[1] + a[3] * b[3]) % q,
    ]
}

pub(crate) fn mat_code(a: &[u64; 4], q: u64) -> usize {
    (((a[0] * q + a[1]) * q + a[2]) * q + a[3]) as usize
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Group({}, order {})", self.0.name, self.0.order)
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Group {
    /// Builds a group from a specification.
    pub fn build(spec: &GroupSpec) -> Result<Group> {
        spec.validate()?;
        let name = spec.to_string();
        match spec {
            GroupSpec::Abelian(m) => Self::abelian(name, m.clone(), None),
            GroupSpec::TorusDiag { n, l } => {
                let m = l - 1;
                Self::abelian(name, vec![m; *n], Some(Torus::new(TorusKind::Diag, *l)))
            }
            GroupSpec::TorusSymp(l) => {
                let m = l - 1;
                Self::abelian(name, vec![m, m], Some(Torus::new(TorusKind::Symp, *l)))
            }
            GroupSpec::TorusGSymp(l) => {
                let m = l - 1;
                Self::abelian(name, vec![m / 2, m, m], Some(Torus::new(TorusKind::GSymp, *l)))
            }
            GroupSpec::Symmetric(n) => Self::symmetric(*n),
            GroupSpec::Alternating(n) => {
                if *n > 8 {
                    return Err(Error::Budget(format!("A{n} exceeds the enumeration budget")));
                }
                let mut elems = Vec::new();
                let mut p = perm::identity(*n);
                loop {
                    if perm::is_even(&p) {
                        elems.push(p.clone());
                    }
                    if !perm::next_lex(&mut p) {
                        break;
                    }
                }
                let gens = if *n >= 3 {
                    vec![
                        perm::from_cycles(&[vec![0, 1, 2]], *n)?,
                        if n % 2 == 1 {
                            perm::from_cycles(&[(0..*n).collect()], *n)?
                        } else {
                            perm::from_cycles(&[(1..*n).collect()], *n)?
                        },
                    ]
                } else {
                    Vec::new()
                };
                Self::from_perms(name, *n, elems, &gens)
            }
            GroupSpec::Perm { degree, generators } => {
                let gens = generators
                    .iter()
                    .map(|g| perm::from_cycles(g, *degree))
                    .collect::<Result<Vec<_>>>()?;
                let elems = perm_closure(*degree, &gens)?;
                Self::from_perms(name, *degree, elems, &gens)
            }
            GroupSpec::Dihedral(n) => {
                let order = 2 * n;
                let gens = if *n > 1 { vec![1, *n] } else { vec![*n] };
                Self::assemble(name, order, Repr::Dihedral(*n), Some(gens))
            }
            GroupSpec::Quaternion => {
                // Elements +-1, +-i, +-j, +-k encoded as sign * unit with unit in {1,i,j,k}.
                let unit_mul = |a: usize, b: usize| -> (bool, usize) {
                    const T: [[(bool, usize); 4]; 4] = [
                        [(false, 0), (false, 1), (false, 2), (false, 3)],
                        [(false, 1), (true, 0), (false, 3), (true, 2)],
                        [(false, 2), (true, 3), (true, 0), (false, 1)],
                        [(false, 3), (false, 2), (true, 1), (true, 0)],
                    ];
                    T[a][b]
                };
                let mut mult = vec![0u32; 64];
                for a in 0..8 {
                    for b in 0..8 {
                        let (neg, u) = unit_mul(a % 4, b % 4);
                        let sign = (a / 4 + b / 4 + neg as usize) % 2;
                        mult[a * 8 + b] = (sign * 4 + u) as u32;
                    }
                }
                Self::from_table(name, 8, mult)
            }
            GroupSpec::Units(n) => {
                let residues: Vec<u64> = (0..*n).filter(|&r| gcd(r, *n) == 1 || *n == 1).collect();
                let residues = if *n == 1 { vec![0] } else { residues };
                let mut lookup = vec![u32::MAX; *n as usize];
                for (i, &r) in residues.iter().enumerate() {
                    lookup[r as usize] = i as u32;
                }
                let order = residues.len();
                Self::assemble(name, order, Repr::Units(UnitsRepr { n: *n, residues, lookup }), None)
            }
            GroupSpec::GL2(q) | GroupSpec::SL2(q) => {
                let special = matches!(spec, GroupSpec::SL2(_));
                Self::matrix2(name, *q, special)
            }
            GroupSpec::Product(a, b) => {
                let g = Group::build(a)?;
                let h = Group::build(b)?;
                Ok(Group::direct_product(&g, &h))
            }
            GroupSpec::Table { order, mult } => Self::from_table(name, *order, mult.clone()),
        }
    }

    fn abelian(name: String, moduli: Vec<u64>, torus: Option<Torus>) -> Result<Group> {
        let order = moduli
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .filter(|&o| o <= ABELIAN_BUDGET)
            .ok_or_else(|| Error::Budget(format!("{name} exceeds the abelian budget")))?;
        let mut strides = vec![1u64; moduli.len()];
        for i in (0..moduli.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1];
        }
        let gens: Vec<usize> = (0..moduli.len())
            .filter(|&i| moduli[i] > 1)
            .map(|i| strides[i] as usize)
            .collect();
        let repr = Repr::Abelian(AbelianRepr { moduli, strides, torus });
        Self::assemble(name, order as usize, repr, Some(gens))
    }

    fn symmetric(n: usize) -> Result<Group> {
        if n > 10 {
            return Err(Error::Budget(format!("S{n} exceeds the supported degree 10")));
        }
        let fact = perm::factorials(n);
        let order = fact[n] as usize;
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(perm::lex_rank(&perm::from_cycles(&[vec![0, 1]], n)?, &fact) as usize);
        }
        if n >= 3 {
            let cycle = perm::from_cycles(&[(0..n).collect()], n)?;
            gens.push(perm::lex_rank(&cycle, &fact) as usize);
        }
        let repr = Repr::Symmetric(SymmetricRepr { n, fact });
        Self::assemble(format!("S{n}"), order, repr, Some(gens))
    }

    fn from_perms(name: String, degree: usize, mut elems: Vec<perm::Perm>, gens: &[perm::Perm]) -> Result<Group> {
        if elems.len() > ENUMERATION_BUDGET {
            return Err(Error::Budget(format!("{name} exceeds the enumeration budget")));
        }
        elems.sort();
        let index: HashMap<u128, u32> = elems
            .iter()
            .enumerate()
            .map(|(i, p)| (perm::key(p), i as u32))
            .collect();
        let mut gen_idx: Vec<usize> = gens
            .iter()
            .map(|g| index[&perm::key(g)] as usize)
            .filter(|&i| i != 0)
            .collect();
        gen_idx.dedup();
        let order = elems.len();
        Self::assemble(name, order, Repr::Perm(PermRepr { degree, elems, index }), Some(gen_idx))
    }

    fn matrix2(name: String, q: u64, special: bool) -> Result<Group> {
        let size = (q * q - 1) * (q * q - q) / if special { q - 1 } else { 1 };
        if size as usize > ENUMERATION_BUDGET {
            return Err(Error::Budget(format!("{name} exceeds the enumeration budget")));
        }
        let mut elems = vec![[1, 0, 0, 1]];
        for code in 0..q.pow(4) {
            let m = [code / (q * q * q), code / (q * q) % q, code / q % q, code % q];
            let det = (m[0] * m[3] + q * q - m[1] * m[2] % q) % q;
            let ok = if special { det == 1 } else { det != 0 };
            if ok && m != [1, 0, 0, 1] {
                elems.push(m);
            }
        }
        let mut lookup = vec![u32::MAX; q.pow(4) as usize];
        for (i, m) in elems.iter().enumerate() {
            lookup[mat_code(m, q)] = i as u32;
        }
        let order = elems.len();
        Self::assemble(name, order, Repr::Matrix2(Matrix2Repr { q, elems, lookup }), None)
    }

    fn from_table(name: String, order: usize, mult: Vec<u32>) -> Result<Group> {
        if order > 5000 {
            return Err(Error::Budget("multiplication tables are limited to order 5000".into()));
        }
        // Identity: the element e with e*x = x for all x.
        let e = (0..order)
            .find(|&e| (0..order).all(|x| mult[e * order + x] as usize == x))
            .ok_or_else(|| Error::invalid("multiplication table has no identity"))?;
        for i in 0..order {
            let mut in_row = vec![false; order];
            let mut in_col = vec![false; order];
            for j in 0..order {
                let r = mult[i * order + j] as usize;
                let c = mult[j * order + i] as usize;
                if in_row[r] || in_col[c] {
                    return Err(Error::invalid("multiplication table is not a Latin square"));
                }
                in_row[r] = true;
                in_col[c] = true;
            }
        }
        // Relabel so the identity is index 0, keeping the remaining order.
        let relabel: Vec<usize> = std::iter::once(e).chain((0..order).filter(|&x| x != e)).collect();
        let mut pos = vec![0usize; order];
        for (i, &x) in relabel.iter().enumerate() {
            pos[x] = i;
        }
        let mut m2 = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                m2[a * order + b] = pos[mult[relabel[a] * order + relabel[b]] as usize] as u32;
            }
        }
        let mut rng_state = 0x9e37_79b9_7f4a_7c15u64;
        for _ in 0..order.min(2000) {
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = (rng_state >> 33) as usize % order;
            let b = (rng_state >> 13) as usize % order;
            let c = (rng_state >> 3) as usize % order;
            let ab_c = m2[m2[a * order + b] as usize * order + c];
            let a_bc = m2[a * order + m2[b * order + c] as usize];
            if ab_c != a_bc {
                return Err(Error::invalid("multiplication table is not associative"));
            }
        }
        if order <= 200 {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        let ab_c = m2[m2[a * order + b] as usize * order + c];
                        let a_bc = m2[a * order + m2[b * order + c] as usize];
                        if ab_c != a_bc {
                            return Err(Error::invalid("multiplication table is not associative"));
                        }
                    }
                }
            }
        }
        Self::assemble(name, order, Repr::Table(TableRepr { mult: m2, labels: relabel }), None)
    }

    pub(crate) fn assemble(name: String, order: usize, repr: Repr, gens: Option<Vec<usize>>) -> Result<Group> {
        let enumerated = !matches!(repr, Repr::Abelian(_) | Repr::Symmetric(_) | Repr::Product(..));
        if enumerated && order > ENUMERATION_BUDGET {
            return Err(Error::Budget(format!("{name} has order {order}, over the enumeration budget")));
        }
        let gens = match gens {
            Some(g) => g,
            None => greedy_generators(&repr, order),
        };
        let abelian = match &repr {
            Repr::Abelian(_) => true,
            Repr::Product(g, h) => g.is_abelian() && h.is_abelian(),
            _ => gens
                .iter()
                .all(|&a| gens.iter().all(|&b| repr.mul(order, a, b) == repr.mul(order, b, a))),
        };
        let exponent = match &repr {
            Repr::Abelian(ab) => ab.moduli.iter().fold(1, |acc, &m| lcm(acc, m)),
            Repr::Symmetric(s) => (1..=s.n as u64).fold(1, lcm),
            Repr::Product(g, h) => lcm(g.exponent(), h.exponent()),
            _ => (0..order).fold(1, |acc, a| lcm(acc, generic_order(&repr, order, a))),
        };
        let classes = if abelian {
            ConjugacyData::singletons(order)
        } else {
            match &repr {
                Repr::Symmetric(s) => classes::symmetric_classes(s),
                Repr::Product(g, h) => classes::product_classes(g, h),
                _ => classes::enumerate_classes(order, &gens, |a, b| repr.mul(order, a, b), |a| {
                    repr.inv(order, a)
                }),
            }
        };
        Ok(Group(Arc::new(GroupData {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name,
            order,
            repr,
            gens,
            abelian,
            exponent,
            classes,
        })))
    }

    /// Direct product with element index `i * |H| + j`.
    pub fn direct_product(g: &Group, h: &Group) -> Group {
        let name = format!("prod:{}*{}", g.name(), h.name());
        let n2 = h.order();
        let mut gens: Vec<usize> = g.generators().iter().map(|&a| a * n2).collect();
        gens.extend(h.generators().iter().copied());
        Self::assemble(name, g.order() * n2, Repr::Product(g.clone(), h.clone()), Some(gens))
            .expect("products of built groups are within budget")
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn is_abelian(&self) -> bool {
        self.0.abelian
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.0.exponent
    }

    pub fn generators(&self) -> &[usize] {
        &self.0.gens
    }

    pub(crate) fn repr(&self) -> &Repr {
        &self.0.repr
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.repr.mul(self.0.order, a, b)
    }

    pub fn inv(&self, a: usize) -> usize {
        self.0.repr.inv(self.0.order, a)
    }

    pub fn conjugate(&self, x: usize, by: usize) -> usize {
        self.mul(self.mul(by, x), self.inv(by))
    }

    pub fn pow(&self, a: usize, m: i64) -> usize {
        if let Repr::Abelian(ab) = &self.0.repr {
            return abelian_scale(ab, a as u64, m) as usize;
        }
        let mut base = if m < 0 { self.inv(a) } else { a };
        let mut e = m.unsigned_abs();
        let mut acc = 0usize;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        match &self.0.repr {
            Repr::Abelian(ab) => abelian_coords(ab, a as u64)
                .iter()
                .zip(&ab.moduli)
                .fold(1, |acc, (&x, &m)| lcm(acc, m / gcd(x, m))),
            Repr::Symmetric(s) => perm::cycle_type(&perm::lex_unrank(a as u64, s.n, &s.fact))
                .iter()
                .fold(1, |acc, &l| lcm(acc, l as u64)),
            Repr::Product(g, h) => {
                let n2 = h.order();
                lcm(g.element_order(a / n2), h.element_order(a % n2))
            }
            repr => generic_order(repr, self.0.order, a),
        }
    }

    pub fn classes(&self) -> &ConjugacyData {
        &self.0.classes
    }

    pub fn class_count(&self) -> usize {
        self.0.classes.count()
    }

    pub fn class_size(&self, c: usize) -> u64 {
        self.0.classes.size(c)
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.0.classes.rep(c)
    }

    pub fn class_of(&self, x: usize) -> usize {
        match &self.0.classes.kind {
            ClassKind::Singleton => x,
            ClassKind::Explicit { class_of, .. } => class_of[x] as usize,
            ClassKind::Symmetric { by_type, .. } => {
                let Repr::Symmetric(s) = &self.0.repr else { unreachable!() };
                let ct = perm::cycle_type(&perm::lex_unrank(x as u64, s.n, &s.fact));
                by_type[&ct] as usize
            }
            ClassKind::Product { of_pair, k2, .. } => {
                let Repr::Product(g, h) = &self.0.repr else { unreachable!() };
                let n2 = h.order();
                of_pair[g.class_of(x / n2) * k2 + h.class_of(x % n2)] as usize
            }
        }
    }

    /// Class of `g^{-1}` for `g` in class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        match &self.0.classes.kind {
            ClassKind::Singleton => self.inv(c),
            ClassKind::Explicit { inverse, .. }
            | ClassKind::Symmetric { inverse, .. }
            | ClassKind::Product { inverse, .. } => inverse[c] as usize,
        }
    }

    /// Class of `g^m` for `g` in class `c`.
    pub fn class_power(&self, c: usize, m: i64) -> usize {
        self.class_of(self.pow(self.class_rep(c), m))
    }

    /// Iterates over the members of class `c` by enumerating the group.
    pub fn class_members(&self, c: usize) -> Vec<usize> {
        if self.is_abelian() {
            return vec![c];
        }
        (0..self.order()).filter(|&x| self.class_of(x) == c).collect()
    }

    /// Permutation (one-line, 0-based) of an element of a permutation group.
    pub fn as_permutation(&self, x: usize) -> Option<perm::Perm> {
        match &self.0.repr {
            Repr::Symmetric(s) => Some(perm::lex_unrank(x as u64, s.n, &s.fact)),
            Repr::Perm(p) => Some(p.elems[x].clone()),
            Repr::Sub(s) => s.parent.as_permutation(s.elems[x]),
            _ => None,
        }
    }

    pub fn permutation_degree(&self) -> Option<usize> {
        match &self.0.repr {
            Repr::Symmetric(s) => Some(s.n),
            Repr::Perm(p) => Some(p.degree),
            Repr::Sub(s) => s.parent.permutation_degree(),
            _ => None,
        }
    }

    /// The matrix of an element of a matrix group (`GL2`, `SL2`, tori), row-major, with the field size.
    pub fn as_matrix(&self, x: usize) -> Option<(Vec<u64>, usize, u64)> {
        match &self.0.repr {
            Repr::Matrix2(m) => Some((m.elems[x].to_vec(), 2, m.q)),
            Repr::Abelian(ab) => {
                let t = ab.torus.as_ref()?;
                let diag = t.diagonal(&abelian_coords(ab, x as u64));
                let n = diag.len();
                let mut out = vec![0u64; n * n];
                for (i, d) in diag.iter().enumerate() {
                    out[i * n + i] = *d;
                }
                Some((out, n, t.l))
            }
            Repr::Sub(s) => s.parent.as_matrix(s.elems[x]),
            _ => None,
        }
    }

    /// Diagonal entries of a torus element.
    pub fn torus_diagonal(&self, x: usize) -> Option<(Vec<u64>, u64)> {
        match &self.0.repr {
            Repr::Abelian(ab) => {
                let t = ab.torus.as_ref()?;
                Some((t.diagonal(&abelian_coords(ab, x as u64)), t.l))
            }
            _ => None,
        }
    }

    /// Cyclic moduli when the group is a parameterized abelian group.
    pub fn abelian_moduli(&self) -> Option<&[u64]> {
        match &self.0.repr {
            Repr::Abelian(ab) => Some(&ab.moduli),
            _ => None,
        }
    }

    pub fn abelian_coordinates(&self, x: usize) -> Option<Vec<u64>> {
        match &self.0.repr {
            Repr::Abelian(ab) => Some(abelian_coords(ab, x as u64)),
            _ => None,
        }
    }

    pub fn product_factors(&self) -> Option<(&Group, &Group)> {
        match &self.0.repr {
            Repr::Product(g, h) => Some((g, h)),
            _ => None,
        }
    }

    /// Factor classes `(c1, c2)` of a class of a direct product.
    pub fn product_class_split(&self, c: usize) -> Option<(usize, usize)> {
        let (_, h) = self.product_factors()?;
        Some(match self.classes().product_pairs() {
            Some(pairs) => (pairs[c].0 as usize, pairs[c].1 as usize),
            None => (c / h.order(), c % h.order()),
        })
    }

    /// Class of a direct product with the given factor classes.
    pub fn product_class_join(&self, c1: usize, c2: usize) -> Option<usize> {
        let (_, h) = self.product_factors()?;
        match self.classes().product_pairs() {
            Some(pairs) => pairs.iter().position(|&(a, b)| (a as usize, b as usize) == (c1, c2)),
            None => Some(c1 * h.order() + c2),
        }
    }

    /// Element enumeration is available (explicit indices can be iterated cheaply).
    pub fn is_enumerable(&self) -> bool {
        self.order() <= ENUMERATION_BUDGET || self.is_abelian()
    }
}

impl Torus {
    fn new(kind: TorusKind, l: u64) -> Torus {
        let g = primitive_root(l);
        let mut pow = Vec::with_capacity(l as usize - 1);
        let mut x = 1u64;
        for _ in 0..(l - 1).max(1) {
            pow.push(x);
            x = x * g % l;
        }
        Torus { kind, l, pow }
    }

    fn diagonal(&self, coords: &[u64]) -> Vec<u64> {
        let m = (self.l - 1).max(1);
        let e = |k: i64| self.pow[k.rem_euclid(m as i64) as usize];
        match self.kind {
            TorusKind::Diag => coords.iter().map(|&x| e(x as i64)).collect(),
            TorusKind::Symp => {
                let (x, y) = (coords[0] as i64, coords[1] as i64);
                vec![e(x), e(y), e(-y), e(-x)]
            }
            TorusKind::GSymp => {
                let (s, u, w) = (coords[0] as i64, coords[1] as i64, coords[2] as i64);
                vec![e(2 * s + u), e(2 * s + w), e(-w), e(-u)]
            }
        }
    }
}

pub(crate) fn abelian_coords(ab: &AbelianRepr, mut a: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(ab.moduli.len());
    for &s in &ab.strides {
        out.push(a / s);
        a %= s;
    }
    out
}

fn abelian_scale(ab: &AbelianRepr, a: u64, m: i64) -> u64 {
    abelian_coords(ab, a)
        .iter()
        .zip(&ab.moduli)
        .zip(&ab.strides)
        .map(|((&x, &n), &s)| ((x as i128 * m as i128).rem_euclid(n as i128) as u64) * s)
        .sum()
}

fn generic_order(repr: &Repr, order: usize, a: usize) -> u64 {
    let mut x = a;
    let mut k = 1u64;
    while x != 0 {
        x = repr.mul(order, x, a);
        k += 1;
    }
    k
}

/// Greedy generating set: scan elements in index order, keeping each one
/// outside the subgroup generated so far.
fn greedy_generators(repr: &Repr, order: usize) -> Vec<usize> {
    let mut inside = vec![false; order];
    inside[0] = true;
    let mut members = vec![0usize];
    let mut gens = Vec::new();
    for g in 1..order {
        if inside[g] {
            continue;
        }
        gens.push(g);
        let mut frontier = members.clone();
        while let Some(x) = frontier.pop() {
            for &s in &gens {
                let y = repr.mul(order, x, s);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                    frontier.push(y);
                }
            }
        }
        if members.len() == order {
            break;
        }
    }
    gens
}

fn perm_closure(degree: usize, gens: &[perm::Perm]) -> Result<Vec<perm::Perm>> {
    let id = perm::identity(degree);
    let mut seen: HashMap<u128, ()> = HashMap::new();
    seen.insert(perm::key(&id), ());
    let mut elems = vec![id];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let y = perm::compose(&elems[i], g);
            if seen.insert(perm::key(&y), ()).is_none() {
                elems.push(y);
                if elems.len() > ENUMERATION_BUDGET {
                    return Err(Error::Budget("permutation group exceeds the enumeration budget".into()));
                }
            }
        }
        i += 1;
    }
    Ok(elems)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> Group {
        Group::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(build("C6").order(), 6);
        assert_eq!(build("S4").order(), 24);
        assert_eq!(build("GL2(3)").order(), 48);
        assert_eq!(build("SL2(5)").order(), 120);
        assert_eq!(build("A5").order(), 60);
        assert_eq!(build("D8").order(), 16);
        assert_eq!(build("Q8").order(), 8);
        assert_eq!(build("T-gsymp(7)").order(), 3 * 6 * 6);
        assert_eq!(build("perm:(1,2,3)(4,5);(1,2)").order(), 12);
        assert_eq!(build("prod:C2*S4").order(), 48);
    }

    #[test]
    fn class_counts() {
        let s3 = build("S3");
        assert_eq!(s3.class_count(), 3);
        let sizes: Vec<u64> = (0..3).map(|c| s3.class_size(c)).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(build("C4").class_count(), 4);
        assert_eq!(build("GL2(3)").class_count(), 8);
        assert_eq!(build("prod:S3*S3").class_count(), 9);
        assert_eq!(build("S5").class_count(), 7);
        assert_eq!(build("Q8").class_count(), 5);
        assert_eq!(build("D5").class_count(), 4);
        assert_eq!(build("A5").class_count(), 5);
    }

    #[test]
    fn class_data_is_consistent() {
        for spec in ["S4", "GL2(3)", "D6", "Q8", "prod:S3*C2", "A4", "SL2(3)", "U(15)"] {
            let g = build(spec);
            let total: u64 = (0..g.class_count()).map(|c| g.class_size(c)).sum();
            assert_eq!(total as usize, g.order(), "{spec}");
            assert_eq!(g.class_size(0), 1);
            assert_eq!(g.class_of(0), 0);
            for x in 0..g.order() {
                assert_eq!(g.class_of(g.inv(x)), g.inverse_class(g.class_of(x)), "{spec}");
                assert_eq!(g.mul(x, g.inv(x)), 0);
            }
            for c in 0..g.class_count() {
                assert_eq!(g.inverse_class(g.inverse_class(c)), c);
                assert_eq!(g.class_power(c, 1), c);
            }
        }
    }

    #[test]
    fn class_powers() {
        let s4 = build("S4");
        let four = (0..s4.class_count())
            .find(|&c| perm::cycle_type(&s4.as_permutation(s4.class_rep(c)).unwrap()) == vec![4])
            .unwrap();
        let sq = s4.class_power(four, 2);
        assert_eq!(perm::cycle_type(&s4.as_permutation(s4.class_rep(sq)).unwrap()), vec![2, 2]);
        let c6 = build("C6");
        assert_eq!(c6.class_power(1, 3), 3);
    }

    #[test]
    fn symmetric_matches_enumerated_permutations() {
        let s4 = build("S4");
        let p4 = build("perm:(1,2,3,4);(1,2)");
        assert_eq!(p4.order(), 24);
        let mut a: Vec<u64> = (0..5).map(|c| s4.class_size(c)).collect();
        let mut b: Vec<u64> = (0..5).map(|c| p4.class_size(c)).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        for x in 0..24 {
            for y in [1usize, 7, 23] {
                let px = s4.as_permutation(x).unwrap();
                let py = s4.as_permutation(y).unwrap();
                assert_eq!(s4.as_permutation(s4.mul(x, y)).unwrap(), perm::compose(&px, &py));
            }
        }
    }

    #[test]
    fn torus_embeddings_are_homomorphisms() {
        for spec in ["T-symp(7)", "T-gsymp(7)", "T-diag(3,5)"] {
            let t = build(spec);
            let l = t.torus_diagonal(0).unwrap().1;
            let mut seen = std::collections::HashSet::new();
            for x in 0..t.order() {
                let dx = t.torus_diagonal(x).unwrap().0;
                assert!(seen.insert(dx.clone()), "{spec} not injective");
                let y = (x * 7 + 3) % t.order();
                let dy = t.torus_diagonal(y).unwrap().0;
                let dxy = t.torus_diagonal(t.mul(x, y)).unwrap().0;
                let prod: Vec<u64> = dx.iter().zip(&dy).map(|(a, b)| a * b % l).collect();
                assert_eq!(prod, dxy);
            }
        }
    }

    #[test]
    fn multiplication_table_validation() {
        let bad = GroupSpec::Table { order: 2, mult: vec![0, 1, 0, 1] };
        assert!(Group::build(&bad).is_err());
        let c3 = GroupSpec::Table { order: 3, mult: vec![1, 2, 0, 2, 0, 1, 0, 1, 2] };
        let g = Group::build(&c3).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.mul(1, 2), 0);
    }
}
