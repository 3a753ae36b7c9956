//! Passing to `G/H` for the largest normal `H` with `HD = D`.
//!
//! Inflation preserves λ and μ, and averaging over `H`-cosets (convolution with
//! the uniform measure on a normal subgroup) does not increase λ, so
//! `φ_G(D) = φ_{G/H}(D/H)`.

use crate::characters::{auto_table, CharacterTable};
use crate::error::Result;
use crate::group::{Group, QuotientHandle};
use crate::sets::ClassSet;

pub struct PhiReduction {
    /// `None` when no nontrivial `H` exists.
    pub quotient: Option<QuotientHandle>,
    pub group: Group,
    pub table: CharacterTable,
    pub set: ClassSet,
}

impl PhiReduction {
    pub fn kernel_order(&self) -> usize {
        self.quotient.as_ref().map_or(1, |q| q.kernel().order())
    }
}

pub fn phi_quotient_reduce(table: CharacterTable, d: &ClassSet) -> Result<PhiReduction> {
    let g = table.group().clone();
    let elems = d.elements();
    // Left stabilizer {h : hD = D}; a subgroup since D is finite.
    let mut stab: Vec<usize> =
        (0..g.order()).filter(|&h| elems.iter().all(|&x| d.contains_element(g.mul(h, x)))).collect();
    // Its normal core: drop elements whose conjugates by generators leave it,
    // until stable.
    loop {
        let member: std::collections::HashSet<usize> = stab.iter().copied().collect();
        let before = stab.len();
        stab.retain(|&h| g.generators().iter().all(|&s| member.contains(&g.conjugate(h, s))));
        if stab.len() == before {
            break;
        }
    }
    if stab.len() <= 1 {
        return Ok(PhiReduction { quotient: None, group: g, table, set: d.clone() });
    }
    let h = g.subgroup(&stab)?;
    let q = g.quotient(&h)?;
    let qg = q.group().clone();
    let image: Vec<usize> = elems.iter().map(|&x| q.project(x)).collect();
    let set = ClassSet::from_elements(&qg, &image)?;
    let table = auto_table(&qg)?;
    Ok(PhiReduction { quotient: Some(q), group: qg, table, set })
}

#[cfg(test)]
mod tests {
    use super::super::{phi_solve, PhiInstance};
    use super::*;

    fn reduce(g: &str, set: &str) -> (PhiReduction, Group, ClassSet) {
        let g = Group::build(&g.parse().unwrap()).unwrap();
        let d = ClassSet::parse(&g, set).unwrap();
        (phi_quotient_reduce(auto_table(&g).unwrap(), &d).unwrap(), g, d)
    }

    #[test]
    fn coset_reduces_to_c2() {
        let (r, _, _) = reduce("C4", "union:1,3");
        assert_eq!(r.group.order(), 2);
        assert_eq!(r.set.size(), 1);
        let s = phi_solve(&PhiInstance::new(&r.table, r.set.clone()).unwrap()).unwrap();
        assert_eq!(s.exact_value.unwrap(), num_rational::BigRational::from_integer(2.into()));
    }

    #[test]
    fn whole_group_reduces_to_trivial() {
        let (r, _, _) = reduce("S4", "all");
        assert_eq!(r.group.order(), 1);
    }

    #[test]
    fn units_mod_twelve_reduce_by_six() {
        let (r, g, d) = reduce("C12", "gen");
        assert_eq!(r.kernel_order(), 2);
        let before = phi_solve(&PhiInstance::new(&auto_table(&g).unwrap(), d).unwrap()).unwrap();
        let after = phi_solve(&PhiInstance::new(&r.table, r.set.clone()).unwrap()).unwrap();
        assert_eq!(before.exact_value, after.exact_value);
        let (r, _, _) = reduce("S3", "ncycle");
        assert!(r.quotient.is_none());
    }
}
