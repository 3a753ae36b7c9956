//! Permutations in one-line notation on `{0, .., n-1}`.
//!
//! Products compose right to left: `(a * b)(x) = a(b(x))`.

use crate::error::{Error, Result};

pub type Perm = Vec<u8>;

pub fn identity(n: usize) -> Perm {
    (0..n as u8).collect()
}

pub fn compose(a: &[u8], b: &[u8]) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub fn inverse(a: &[u8]) -> Perm {
    let mut out = vec![0u8; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u8;
    }
    out
}

/// Cycle lengths in decreasing order, fixed points included.
pub fn cycle_type(a: &[u8]) -> Vec<u32> {
    let mut seen = vec![false; a.len()];
    let mut out = Vec::new();
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = a[x] as usize;
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

pub fn fixed_points(a: &[u8]) -> usize {
    a.iter().enumerate().filter(|&(i, &x)| i == x as usize).count()
}

pub fn is_even(a: &[u8]) -> bool {
    let ct = cycle_type(a);
    ct.iter().map(|&l| l as usize - 1).sum::<usize>() % 2 == 0
}

/// Packs a permutation of degree at most 25 into a hash key.
pub fn key(a: &[u8]) -> u128 {
    a.iter().fold(0u128, |acc, &x| (acc << 5) | x as u128)
}

pub fn factorials(n: usize) -> Vec<u64> {
    let mut f = vec![1u64; n + 1];
    for i in 1..=n {
        f[i] = f[i - 1] * i as u64;
    }
    f
}

/// Lexicographic rank among all permutations of the same degree.
pub fn lex_rank(a: &[u8], fact: &[u64]) -> u64 {
    let n = a.len();
    let mut rank = 0u64;
    let mut used = 0u32;
    for (i, &x) in a.iter().enumerate() {
        let smaller = (0..x).filter(|&y| used & (1 << y) == 0).count() as u64;
        rank += smaller * fact[n - 1 - i];
        used |= 1 << x;
    }
    rank
}

pub fn lex_unrank(mut rank: u64, n: usize, fact: &[u64]) -> Perm {
    let mut avail: Vec<u8> = (0..n as u8).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let f = fact[n - 1 - i];
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(avail.remove(idx));
    }
    out
}

/// Advances to the next permutation in lexicographic order; false at the last one.
pub fn next_lex(a: &mut [u8]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Parses cycle notation such as `(1,2,3)(4,5)` with 1-based points.
/// Returns the cycles with 0-based points.
pub fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let s = s.trim();
    if s.is_empty() || s == "()" || s == "e" {
        return Ok(Vec::new());
    }
    let mut cycles = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::parse(format!("expected '(' in cycle notation '{s}'")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::parse(format!("unclosed cycle in '{s}'")))?;
        let body = &open[..close];
        let mut cycle = Vec::new();
        if !body.trim().is_empty() {
            for tok in body.split(',') {
                let v: usize = tok
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(format!("bad point '{tok}' in '{s}'")))?;
                if v == 0 {
                    return Err(Error::parse("permutation points are 1-based"));
                }
                if cycle.contains(&(v - 1)) {
                    return Err(Error::invalid(format!("repeated point {v} in cycle '{s}'")));
                }
                cycle.push(v - 1);
            }
        }
        cycles.push(cycle);
        rest = open[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Builds a permutation of the given degree from disjoint-or-not cycles,
/// multiplying them right to left.
pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Perm> {
    let mut acc = identity(degree);
    for cycle in cycles.iter().rev() {
        let mut c = identity(degree);
        for (i, &x) in cycle.iter().enumerate() {
            if x >= degree {
                return Err(Error::invalid(format!("point {} exceeds degree {degree}", x + 1)));
            }
            c[x] = cycle[(i + 1) % cycle.len()] as u8;
        }
        acc = compose(&c, &acc);
    }
    Ok(acc)
}

pub fn format_cycles(a: &[u8]) -> String {
    let mut seen = vec![false; a.len()];
    let mut out = String::new();
    for start in 0..a.len() {
        if seen[start] || a[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = a[x] as usize;
        }
        out.push('(');
        out.push_str(&cycle.join(","));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_roundtrip() {
        let fact = factorials(5);
        let mut p = identity(5);
        let mut r = 0;
        loop {
            assert_eq!(lex_rank(&p, &fact), r);
            assert_eq!(lex_unrank(r, 5, &fact), p);
            r += 1;
            if !next_lex(&mut p) {
                break;
            }
        }
        assert_eq!(r, 120);
    }

    #[test]
    fn cycles_parse_and_compose() {
        let a = from_cycles(&parse_cycles("(1,2,3)(4,5)").unwrap(), 5).unwrap();
        assert_eq!(a, vec![1, 2, 0, 4, 3]);
        assert_eq!(cycle_type(&a), vec![3, 2]);
        assert_eq!(format_cycles(&a), "(1,2,3)(4,5)");
        assert_eq!(compose(&a, &inverse(&a)), identity(5));
        assert!(!is_even(&a));
        assert!(parse_cycles("(1,1)").is_err());
    }
}
