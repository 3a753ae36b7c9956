//! Dixon–Schneider: class-sum eigenvectors over `F_p`, lifted to roots of unity.
//!
//! With `K_j` the class sums, `K_j K_l = Σ_m a_{jlm} K_m`; every central
//! character `ω` satisfies `A_j ω = ω_j ω` for `A_j[l][m] = a_{jlm}`. Common
//! eigenvectors are found by splitting subspaces with one matrix at a time.
//! `p ≡ 1 (mod e)` makes the `e`-th roots of unity live in `F_p`, and
//! `p > 2√|G|` makes degrees recoverable from `d² mod p`.

use crate::error::{Error, Result};
use crate::group::{Group, ENUMERATION_BUDGET};
use crate::nt::{inv_mod, is_prime, isqrt, pow_mod, primitive_root};

use super::cyclo::Cyclo;

/// Largest class count handled by the generic engine.
pub const MAX_CLASSES: usize = 250;

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b) % p
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2√n`.
pub(crate) fn dixon_prime(e: u64, n: u64) -> u64 {
    let floor = 2 * isqrt(n) + 1;
    let mut p = e + 1;
    while p <= floor || !is_prime(p) {
        p += e;
    }
    p
}

/// Row-reduced basis of a subspace; pivots are strictly increasing.
#[derive(Clone)]
struct Space {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

/// In-place reduced row echelon form; returns pivot columns.
fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(r, sel);
        let inv = inv_mod(rows[r][col], p).expect("nonzero mod prime");
        for v in rows[r].iter_mut() {
            *v = mulm(*v, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let f = rows[i][col];
                for c in 0..ncols {
                    rows[i][c] = subm(rows[i][c], mulm(f, rows[r][c], p), p);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the right nullspace of a square matrix.
fn nullspace(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let pivots = rref(&mut m, p);
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = (p - row[free]) % p;
        }
        basis.push(v);
    }
    basis
}

/// Upper Hessenberg form `H = S⁻¹ B S`; returns `(H, S)`.
fn hessenberg(mut h: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, Vec<Vec<u64>>) {
    let n = h.len();
    let mut s: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    for j in 0..n.saturating_sub(2) {
        let Some(r) = (j + 1..n).find(|&i| h[i][j] != 0) else { continue };
        if r != j + 1 {
            h.swap(r, j + 1);
            for row in h.iter_mut().chain(s.iter_mut()) {
                row.swap(r, j + 1);
            }
        }
        let inv = inv_mod(h[j + 1][j], p).expect("nonzero pivot");
        for i in j + 2..n {
            if h[i][j] == 0 {
                continue;
            }
            let u = mulm(h[i][j], inv, p);
            let (top, bottom) = h.split_at_mut(i);
            for (x, &y) in bottom[0][j..].iter_mut().zip(&top[j + 1][j..]) {
                *x = subm(*x, mulm(u, y, p), p);
            }
            for row in h.iter_mut().chain(s.iter_mut()) {
                row[j + 1] = (row[j + 1] + mulm(u, row[i], p)) % p;
            }
        }
    }
    (h, s)
}

/// Characteristic polynomial (low degree first) of an upper Hessenberg matrix.
fn charpoly(h: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = h.len();
    // p_m = (x - h_mm) p_{m-1} - Σ_{i<m} h_{im} (Π_{t=i+1..m} h_{t,t-1}) p_{i-1}, 1-based.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut cur = vec![0u64; m + 1];
        for (d, &c) in prev.iter().enumerate() {
            cur[d + 1] = (cur[d + 1] + c) % p;
            cur[d] = subm(cur[d], mulm(h[m - 1][m - 1], c, p), p);
        }
        let mut t = 1u64;
        for i in (1..m).rev() {
            t = mulm(t, h[i][i - 1], p);
            let coef = mulm(t, h[i - 1][m - 1], p);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i - 1].iter().enumerate() {
                cur[d] = subm(cur[d], mulm(coef, c, p), p);
            }
        }
        polys.push(cur);
    }
    polys.pop().unwrap()
}

fn roots(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| (mulm(acc, x, p) + c) % p) == 0)
        .collect()
}

/// Tries to split `space` by the eigenspaces of `mat`.
fn split(space: &Space, mat: &[Vec<u64>], p: u64) -> Result<Option<Vec<Space>>> {
    let d = space.rows.len();
    let k = mat.len();
    // Column i of the restriction holds the coordinates of mat·R_i.
    let mut b = vec![vec![0u64; d]; d];
    for (i, r) in space.rows.iter().enumerate() {
        for (i2, &pc) in space.pivots.iter().enumerate() {
            let row = &mat[pc];
            let mut s = 0u64;
            for m in 0..k {
                if r[m] != 0 {
                    s = (s + mulm(row[m], r[m], p)) % p;
                }
            }
            b[i2][i] = s;
        }
    }
    // Conjugate so that the Krylov sequence starts at a pseudo-random vector v:
    // P = I + w e₀ᵀ with w = v - e₀, P⁻¹ = I - w e₀ᵀ.
    let mut state = 0x853c_49e6_748f_ea9bu64 ^ d as u64;
    let w: Vec<u64> = (0..d)
        .map(|i| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            if i == 0 { 0 } else { state % p }
        })
        .collect();
    let mut bp = b.clone();
    for r in 0..d {
        let bv = (0..d).fold(b[r][0], |acc, j| (acc + mulm(b[r][j], w[j], p)) % p);
        bp[r][0] = bv;
    }
    let row0 = bp[0].clone();
    for r in 1..d {
        for c in 0..d {
            bp[r][c] = subm(bp[r][c], mulm(w[r], row0[c], p), p);
        }
    }
    let (h, sim) = hessenberg(bp, p);
    let cp = charpoly(&h, p);
    let eig = roots(&cp, p);
    if eig.len() <= 1 {
        return Ok(None);
    }
    let dcp: Vec<u64> = cp.iter().enumerate().skip(1).map(|(i, &c)| mulm(i as u64 % p, c, p)).collect();
    let eval = |poly: &[u64], x: u64| poly.iter().rev().fold(0u64, |acc, &c| (mulm(acc, x, p) + c) % p);
    // Leading unreduced block; it carries every eigenvalue when v is cyclic.
    let i0 = (1..d).find(|&i| h[i][i - 1] == 0).unwrap_or(d);
    let line = |lam: u64| -> Option<Vec<u64>> {
        let mut y = vec![0u64; d];
        y[i0 - 1] = 1;
        let entry = |i: usize, j: usize| if i == j { subm(h[i][j], lam, p) } else { h[i][j] };
        for i in (1..i0).rev() {
            let acc = (i..i0).fold(0u64, |a, j| (a + mulm(entry(i, j), y[j], p)) % p);
            y[i - 1] = mulm(p - acc, inv_mod(h[i][i - 1], p).unwrap(), p);
        }
        if (0..i0).fold(0u64, |a, j| (a + mulm(entry(0, j), y[j], p)) % p) != 0 {
            return None;
        }
        let mut x: Vec<u64> = (0..d)
            .map(|r| sim[r].iter().zip(&y).fold(0u64, |a, (&s, &v)| (a + mulm(s, v, p)) % p))
            .collect();
        let x0 = x[0];
        for (xi, wi) in x.iter_mut().zip(&w) {
            *xi = (*xi + mulm(*wi, x0, p)) % p;
        }
        Some(x)
    };
    let mut parts = Vec::with_capacity(eig.len());
    let mut total = 0;
    for lam in eig {
        let fast = if eval(&dcp, lam) != 0 { line(lam) } else { None };
        let coeffs: Vec<Vec<u64>> = match fast {
            Some(x) => vec![x],
            None => {
                let mut shifted = b.clone();
                for (i, row) in shifted.iter_mut().enumerate() {
                    row[i] = subm(row[i], lam, p);
                }
                nullspace(shifted, p)
            }
        };
        let mut rows: Vec<Vec<u64>> = coeffs
            .iter()
            .map(|c| {
                let mut v = vec![0u64; k];
                for (ci, r) in c.iter().zip(&space.rows) {
                    if *ci != 0 {
                        for m in 0..k {
                            v[m] = (v[m] + mulm(*ci, r[m], p)) % p;
                        }
                    }
                }
                v
            })
            .collect();
        let pivots = rref(&mut rows, p);
        total += rows.len();
        parts.push(Space { rows, pivots });
    }
    if total != d {
        return Err(Error::Invariant("class-sum matrix is not diagonalizable mod p".into()));
    }
    Ok(Some(parts))
}

/// The generic table: dims and exact values over `Q(ζ_e)`, rows unsorted.
pub(crate) fn dixon_values(g: &Group) -> Result<(Vec<u64>, Vec<Vec<Cyclo>>)> {
    let n = g.order();
    if n > ENUMERATION_BUDGET {
        return Err(Error::Budget(format!("{} exceeds the enumeration budget", g.name())));
    }
    let k = g.class_count();
    if k > MAX_CLASSES {
        return Err(Error::Budget(format!("{} has {k} classes, over the limit {MAX_CLASSES}", g.name())));
    }
    let e = g.exponent();
    let p = dixon_prime(e, n as u64);
    let class_of: Vec<usize> = (0..n).map(|x| g.class_of(x)).collect();
    let reps: Vec<usize> = (0..k).map(|c| g.class_rep(c)).collect();
    let sizes: Vec<u64> = (0..k).map(|c| g.class_size(c)).collect();

    // coef[j][l][m] = #{x ∈ C_j : x⁻¹ z_m ∈ C_l}.
    let mut coef = vec![0u32; k * k * k];
    for x in 0..n {
        let j = class_of[x];
        let xi = g.inv(x);
        for (m, &z) in reps.iter().enumerate() {
            let l = class_of[g.mul(xi, z)];
            coef[(j * k + l) * k + m] += 1;
        }
    }
    let matrix = |j: usize| -> Vec<Vec<u64>> {
        (0..k)
            .map(|l| (0..k).map(|m| coef[(j * k + l) * k + m] as u64 % p).collect())
            .collect()
    };
    // Fixed pseudo-random combination first; single class matrices as fallback.
    let mut combo = vec![vec![0u64; k]; k];
    let mut state = 0x2545_f491_4f6c_dd1du64;
    for j in 1..k {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        let r = state % p;
        for l in 0..k {
            for m in 0..k {
                combo[l][m] = (combo[l][m] + r * (coef[(j * k + l) * k + m] as u64 % p)) % p;
            }
        }
    }

    let full = Space { rows: (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect(), pivots: (0..k).collect() };
    let mut work: Vec<(Space, usize)> = vec![(full, 0)];
    let mut lines: Vec<Vec<u64>> = Vec::with_capacity(k);
    while let Some((space, start)) = work.pop() {
        if space.rows.len() == 1 {
            lines.push(space.rows[0].clone());
            continue;
        }
        let mut done = false;
        for idx in start..k {
            let mat = if idx == 0 { combo.clone() } else { matrix(idx) };
            if let Some(parts) = split(&space, &mat, p)? {
                work.extend(parts.into_iter().map(|s| (s, idx + 1)));
                done = true;
                break;
            }
        }
        if !done {
            return Err(Error::Invariant("class-sum matrices failed to separate characters".into()));
        }
    }

    let z = pow_mod(primitive_root(p), (p - 1) / e, p);
    let inv_class: Vec<usize> = (0..k).map(|c| g.inverse_class(c)).collect();
    let orders: Vec<u64> = reps.iter().map(|&r| g.element_order(r)).collect();
    let powers: Vec<Vec<usize>> = (0..k)
        .map(|c| (0..orders[c]).map(|j| g.class_power(c, j as i64)).collect())
        .collect();
    // inv_roots[m][t] = ζ_o^{-t} for the order o of class m.
    let inv_roots: Vec<Vec<u64>> = orders
        .iter()
        .map(|&o| {
            let w = pow_mod(pow_mod(z, e / o, p), o - 1, p);
            let mut out = Vec::with_capacity(o as usize);
            let mut x = 1u64;
            for _ in 0..o {
                out.push(x);
                x = mulm(x, w, p);
            }
            out
        })
        .collect();
    let nn = n as u64 % p;
    let mut dims = Vec::with_capacity(k);
    let mut values = Vec::with_capacity(k);
    for omega in lines {
        if omega[0] != 1 {
            return Err(Error::Invariant("central character not normalized at the identity".into()));
        }
        let s = (0..k).fold(0u64, |acc, m| {
            let t = mulm(mulm(omega[m], omega[inv_class[m]], p), inv_mod(sizes[m] % p, p).unwrap(), p);
            (acc + t) % p
        });
        let d2 = mulm(nn, inv_mod(s, p).ok_or_else(|| Error::LiftFailure("degree sum vanished".into()))?, p);
        let d = (1..=isqrt(n as u64))
            .find(|&d| d * d % p == d2)
            .ok_or_else(|| Error::LiftFailure("no degree matches d² mod p".into()))?;
        let chi: Vec<u64> = (0..k)
            .map(|m| mulm(mulm(omega[m], d, p), inv_mod(sizes[m] % p, p).unwrap(), p))
            .collect();
        let mut row = Vec::with_capacity(k);
        for m in 0..k {
            let o = orders[m] as usize;
            let step = e / o as u64;
            let inv_o = inv_mod(orders[m] % p, p).unwrap();
            let vals: Vec<u64> = powers[m].iter().map(|&c| chi[c]).collect();
            let wpow = &inv_roots[m];
            let mut terms = Vec::new();
            let mut total = 0u64;
            for kk in 0..o {
                // m_kk = (1/o) Σ_j χ(g^j) ζ_o^{-j kk}; products stay below p², sums are reduced lazily.
                let mut acc = 0u64;
                let mut idx = 0usize;
                for &v in &vals {
                    acc += v * wpow[idx];
                    if acc >= 1 << 63 {
                        acc %= p;
                    }
                    idx += kk;
                    if idx >= o {
                        idx -= o;
                    }
                }
                let mult = mulm(acc % p, inv_o, p);
                if mult > d {
                    return Err(Error::LiftFailure(format!("eigenvalue multiplicity {mult} exceeds degree {d}")));
                }
                total += mult;
                if mult > 0 {
                    terms.push((kk as u64 * step, mult as i64));
                }
            }
            if total != d {
                return Err(Error::LiftFailure("eigenvalue multiplicities do not sum to the degree".into()));
            }
            row.push(Cyclo::from_terms(terms, e));
        }
        dims.push(d);
        values.push(row);
    }
    Ok((dims, values))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_choice() {
        assert_eq!(dixon_prime(6, 6), 7);
        let p = dixon_prime(12, 48);
        assert!(is_prime(p) && p % 12 == 1 && p * p > 4 * 48);
    }

    #[test]
    fn charpoly_of_companion() {
        // x^3 - 2x^2 + 3x - 5 mod 101 from its companion matrix.
        let p = 101;
        let m = vec![vec![0, 0, 5], vec![1, 0, p - 3], vec![0, 1, 2]];
        assert_eq!(charpoly(&m, p), vec![p - 5, 3, p - 2, 1]);
        // A dense matrix keeps its characteristic polynomial under the reduction.
        let dense = vec![vec![2, 7, 1], vec![3, 3, 9], vec![5, 0, 4]];
        let (h, s) = hessenberg(dense.clone(), p);
        assert!(h[2][0] == 0);
        // Constant term is -det = -240 ≡ 63, trace 9 gives the x² coefficient -9.
        let cp = charpoly(&h, p);
        assert_eq!((cp[0], cp[2], cp[3]), (63, p - 9, 1));
        // S⁻¹ B S = H, checked as B S = S H.
        let mul = |a: &Vec<Vec<u64>>, b: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
            (0..3).map(|i| (0..3).map(|j| (0..3).map(|t| a[i][t] * b[t][j]).sum::<u64>() % p).collect()).collect()
        };
        assert_eq!(mul(&dense, &s), mul(&s, &h));
    }

    #[test]
    fn nullspace_dimension() {
        let p = 7;
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 1]];
        let ns = nullspace(m.clone(), p);
        assert_eq!(ns.len(), 1);
        for row in &m {
            assert_eq!(row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum::<u64>() % p, 0);
        }
    }
}
