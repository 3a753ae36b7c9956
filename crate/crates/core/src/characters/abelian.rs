//! Implicit character tables of abelian groups.
//!
//! Elements get coordinates `s_i(x) ∈ Z/m_i` along a generator chain and each
//! character a vector `u_i ∈ Z/e`; then `χ(x) = ζ_e^{Σ s_i u_i}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::Group;

/// Largest exponent for which a root-of-unity table is cached.
const ROOT_CACHE: u64 = 1 << 22;

pub(crate) struct AbelianChars {
    pub e: u64,
    /// Relative orders `m_i` of the chain generators.
    orders: Vec<u64>,
    coords: Coords,
    duals: Duals,
    roots: Vec<Complex64>,
}

enum Coords {
    /// Mixed radix with the group's own strides (parameterized families).
    Direct(Vec<u64>),
    /// `r` coordinates per element, flattened.
    Stored(Vec<u32>),
}

enum Duals {
    /// Character index in the same mixed radix; `u_i = a_i · e / m_i`.
    Direct(Vec<u64>),
    Stored(Vec<u32>),
}

impl AbelianChars {
    pub fn build(g: &Group) -> Result<Self> {
        if !g.is_abelian() {
            return Err(Error::invalid(format!("{} is not abelian", g.name())));
        }
        let e = g.exponent();
        let (orders, coords, duals) = match g.abelian_moduli() {
            Some(moduli) => {
                let mut strides = vec![1u64; moduli.len()];
                for i in (0..moduli.len().saturating_sub(1)).rev() {
                    strides[i] = strides[i + 1] * moduli[i + 1];
                }
                (moduli.to_vec(), Coords::Direct(strides.clone()), Duals::Direct(strides))
            }
            None => chain(g)?,
        };
        let roots = if e <= ROOT_CACHE {
            let step = std::f64::consts::TAU / e as f64;
            (0..e)
                .map(|j| {
                    let (s, c) = (step * j as f64).sin_cos();
                    Complex64::new(c, s)
                })
                .collect()
        } else {
            Vec::new()
        };
        Ok(AbelianChars { e, orders, coords, duals, roots })
    }

    fn rank(&self) -> usize {
        self.orders.len()
    }

    fn coord(&self, x: usize, i: usize) -> u64 {
        match &self.coords {
            Coords::Direct(strides) => (x as u64 / strides[i]) % self.orders[i],
            Coords::Stored(v) => v[x * self.rank() + i] as u64,
        }
    }

    fn dual(&self, pi: usize, i: usize) -> u64 {
        match &self.duals {
            Duals::Direct(strides) => (pi as u64 / strides[i]) % self.orders[i] * (self.e / self.orders[i]),
            Duals::Stored(v) => v[pi * self.rank() + i] as u64,
        }
    }

    /// `χ_π(x) = ζ_e^{exponent(π, x)}`.
    pub fn exponent(&self, pi: usize, x: usize) -> u64 {
        let e = self.e as u128;
        let mut acc = 0u128;
        for i in 0..self.rank() {
            acc = (acc + self.coord(x, i) as u128 * self.dual(pi, i) as u128) % e;
        }
        acc as u64
    }

    pub fn root(&self, j: u64) -> Complex64 {
        match self.roots.get(j as usize) {
            Some(&z) => z,
            None => {
                let (s, c) = (std::f64::consts::TAU * j as f64 / self.e as f64).sin_cos();
                Complex64::new(c, s)
            }
        }
    }

    pub fn value(&self, pi: usize, x: usize) -> Complex64 {
        self.root(self.exponent(pi, x))
    }
}

type Chain = (Vec<u64>, Coords, Duals);

/// Coordinates along a greedy generator chain `1 = H_0 < H_1 < … < H_r = G`
/// with `H_i = H_{i-1}⟨g_i⟩` and `m_i = [H_i : H_{i-1}]`.
fn chain(g: &Group) -> Result<Chain> {
    let n = g.order();
    let e = g.exponent();
    let mut member = vec![false; n];
    member[0] = true;
    let mut elems = vec![0usize];
    // Coordinates of each element of the current H, indexed by element.
    let mut coords: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut gens: Vec<usize> = Vec::new();
    let mut orders: Vec<u64> = Vec::new();
    for cand in 1..n {
        if member[cand] {
            continue;
        }
        // Relative order: least m with cand^m in H.
        let mut m = 1u64;
        let mut p = cand;
        while !member[p] {
            p = g.mul(p, cand);
            m += 1;
        }
        let base: Vec<(usize, Vec<u32>)> = elems.iter().map(|&h| (h, coords[h].clone())).collect();
        let mut power = 0usize;
        for s in 0..m {
            if s > 0 {
                power = g.mul(power, cand);
            }
            for (h, hc) in &base {
                let y = g.mul(*h, power);
                if s > 0 {
                    member[y] = true;
                    elems.push(y);
                }
                let mut c = hc.clone();
                c.push(s as u32);
                coords[y] = c;
            }
        }
        gens.push(cand);
        orders.push(m);
        if elems.len() == n {
            break;
        }
    }
    let r = orders.len();
    let flat: Vec<u32> = (0..n)
        .flat_map(|x| {
            let mut c = coords[x].clone();
            c.resize(r, 0);
            c
        })
        .collect();

    // Characters: extend along the chain; χ(g_i)^{m_i} = χ(g_i^{m_i}) fixes u_i
    // up to multiples of e/m_i.
    let mut duals: Vec<Vec<u64>> = vec![Vec::new()];
    for i in 0..r {
        let target = g.pow(gens[i], orders[i] as i64);
        let mut next = Vec::with_capacity(duals.len() * orders[i] as usize);
        for k in 0..orders[i] {
            for u in &duals {
                let t = (0..i).fold(0u128, |acc, j| {
                    (acc + flat[target * r + j] as u128 * u[j] as u128) % e as u128
                }) as u64;
                if t % orders[i] != 0 {
                    return Err(Error::Invariant("abelian character extension failed".into()));
                }
                let mut v = u.clone();
                v.push(t / orders[i] + k * (e / orders[i]));
                next.push(v);
            }
        }
        duals = next;
    }
    let dual_flat: Vec<u32> = duals.iter().flat_map(|u| u.iter().map(|&x| x as u32)).collect();
    Ok((orders, Coords::Stored(flat), Duals::Stored(dual_flat)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> Group {
        Group::build(&s.parse().unwrap()).unwrap()
    }

    fn check_homomorphisms(g: &Group) {
        let a = AbelianChars::build(g).unwrap();
        let n = g.order();
        let mut seen = std::collections::HashSet::new();
        for pi in 0..n {
            let row: Vec<u64> = (0..n).map(|x| a.exponent(pi, x)).collect();
            assert_eq!(row[0], 0);
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(a.exponent(pi, g.mul(x, y)), (row[x] + row[y]) % a.e, "{}", g.name());
                }
            }
            assert!(seen.insert(row), "duplicate character on {}", g.name());
        }
    }

    #[test]
    fn characters_are_distinct_homomorphisms() {
        for s in ["C6", "C2xC4", "U(15)", "U(16)", "prod:C3*C4", "T-symp(5)"] {
            check_homomorphisms(&build(s));
        }
    }
}
