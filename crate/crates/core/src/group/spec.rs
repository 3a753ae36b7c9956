//! The group specification language.

use std::fmt;
use std::str::FromStr;

use super::perm;
use crate::error::{Error, Result};
use crate::nt::is_prime;

/// A parsed group specification.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupSpec {
    /// Direct product of cyclic groups with the given moduli (`C6`, `C2xC4`).
    Abelian(Vec<u64>),
    Symmetric(usize),
    Alternating(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    Quaternion,
    /// The unit group `(Z/n)*`.
    Units(u64),
    GL2(u64),
    SL2(u64),
    /// Diagonal torus of `GL_n(F_l)`.
    TorusDiag { n: usize, l: u64 },
    /// Torus of `diag(x, y, 1/y, 1/x)` in `GL_4(F_l)`.
    TorusSymp(u64),
    /// Torus of `diag(zx, zy, z/y, z/x)` in `GL_4(F_l)`.
    TorusGSymp(u64),
    /// Permutation group generated by cycles; points are 0-based.
    Perm { degree: usize, generators: Vec<Vec<Vec<usize>>> },
    Product(Box<GroupSpec>, Box<GroupSpec>),
    /// Explicit multiplication table, row-major: `mult[a * order + b] = a * b`.
    Table { order: usize, mult: Vec<u32> },
}

impl GroupSpec {
    pub fn cyclic(n: u64) -> Self {
        GroupSpec::Abelian(vec![n])
    }

    pub fn validate(&self) -> Result<()> {
        let prime_field = |l: u64| {
            if is_prime(l) {
                Ok(())
            } else {
                Err(Error::invalid(format!("field size {l} is not prime")))
            }
        };
        match self {
            GroupSpec::Abelian(m) => {
                if m.is_empty() || m.contains(&0) {
                    return Err(Error::invalid("cyclic factors must be positive"));
                }
                Ok(())
            }
            GroupSpec::Symmetric(n) | GroupSpec::Alternating(n) | GroupSpec::Dihedral(n) => {
                if *n == 0 {
                    Err(Error::invalid("degree must be positive"))
                } else {
                    Ok(())
                }
            }
            GroupSpec::Units(n) => {
                if *n == 0 {
                    Err(Error::invalid("modulus must be positive"))
                } else {
                    Ok(())
                }
            }
            GroupSpec::Quaternion => Ok(()),
            GroupSpec::GL2(q) | GroupSpec::SL2(q) | GroupSpec::TorusSymp(q) => prime_field(*q),
            GroupSpec::TorusGSymp(q) => {
                prime_field(*q)?;
                if *q == 2 {
                    return Err(Error::invalid("similitude torus needs an odd prime"));
                }
                Ok(())
            }
            GroupSpec::TorusDiag { n, l } => {
                if *n == 0 {
                    return Err(Error::invalid("torus rank must be positive"));
                }
                prime_field(*l)
            }
            GroupSpec::Perm { degree, generators } => {
                if *degree == 0 || *degree > 25 {
                    return Err(Error::invalid("permutation degree must be in 1..=25"));
                }
                for g in generators {
                    perm::from_cycles(g, *degree)?;
                }
                Ok(())
            }
            GroupSpec::Product(a, b) => {
                a.validate()?;
                b.validate()
            }
            GroupSpec::Table { order, mult } => {
                if *order == 0 || mult.len() != order * order {
                    return Err(Error::invalid("multiplication table has the wrong size"));
                }
                if mult.iter().any(|&x| x as usize >= *order) {
                    return Err(Error::invalid("multiplication table entry out of range"));
                }
                Ok(())
            }
        }
    }
}

fn parse_u64(s: &str, what: &str) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| Error::parse(format!("bad {what} '{s}'")))
}

fn parse_table_file(path: &str) -> Result<GroupSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    let mut tokens = text.split_whitespace();
    let order = tokens
        .next()
        .ok_or_else(|| Error::parse("empty multiplication table file"))?;
    let order = parse_u64(order, "order")? as usize;
    let mult = tokens
        .map(|t| t.parse::<u32>().map_err(|_| Error::parse(format!("bad table entry '{t}'"))))
        .collect::<Result<Vec<u32>>>()?;
    if mult.len() != order * order {
        return Err(Error::parse(format!(
            "table file lists {} entries, expected {}",
            mult.len(),
            order * order
        )));
    }
    Ok(GroupSpec::Table { order, mult })
}

fn parse_call(s: &str, name: &str) -> Option<String> {
    s.strip_prefix(name)
        .and_then(|r| r.strip_prefix('('))
        .and_then(|r| r.strip_suffix(')'))
        .map(str::to_string)
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let spec = if let Some(rest) = s.strip_prefix("prod:") {
            let (a, b) = split_product(rest)?;
            GroupSpec::Product(Box::new(a.parse()?), Box::new(b.parse()?))
        } else if let Some(rest) = s.strip_prefix("perm:") {
            let gens = rest
                .split(';')
                .map(perm::parse_cycles)
                .collect::<Result<Vec<_>>>()?;
            let degree = gens
                .iter()
                .flatten()
                .flatten()
                .map(|&x| x + 1)
                .max()
                .unwrap_or(1);
            GroupSpec::Perm { degree, generators: gens }
        } else if let Some(path) = s.strip_prefix("mul:") {
            parse_table_file(path)?
        } else if let Some(a) = parse_call(s, "GL2") {
            GroupSpec::GL2(parse_u64(&a, "field size")?)
        } else if let Some(a) = parse_call(s, "SL2") {
            GroupSpec::SL2(parse_u64(&a, "field size")?)
        } else if let Some(a) = parse_call(s, "T-diag") {
            let (n, l) = a
                .split_once(',')
                .ok_or_else(|| Error::parse("T-diag expects (n,l)"))?;
            GroupSpec::TorusDiag { n: parse_u64(n, "rank")? as usize, l: parse_u64(l, "field size")? }
        } else if let Some(a) = parse_call(s, "T-symp") {
            GroupSpec::TorusSymp(parse_u64(&a, "field size")?)
        } else if let Some(a) = parse_call(s, "T-gsymp") {
            GroupSpec::TorusGSymp(parse_u64(&a, "field size")?)
        } else if let Some(a) = parse_call(s, "U") {
            GroupSpec::Units(parse_u64(&a, "modulus")?)
        } else if s == "Q8" {
            GroupSpec::Quaternion
        } else if s.starts_with('C') {
            let moduli = s
                .split('x')
                .map(|part| {
                    part.strip_prefix('C')
                        .ok_or_else(|| Error::parse(format!("bad cyclic factor '{part}'")))
                        .and_then(|n| parse_u64(n, "cyclic order"))
                })
                .collect::<Result<Vec<_>>>()?;
            GroupSpec::Abelian(moduli)
        } else if let Some(n) = s.strip_prefix('S') {
            GroupSpec::Symmetric(parse_u64(n, "degree")? as usize)
        } else if let Some(n) = s.strip_prefix('A') {
            GroupSpec::Alternating(parse_u64(n, "degree")? as usize)
        } else if let Some(n) = s.strip_prefix('D') {
            GroupSpec::Dihedral(parse_u64(n, "dihedral parameter")? as usize)
        } else {
            return Err(Error::parse(format!("unknown group '{s}'")));
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Splits `a*b` at the top-level `*` (outside parentheses).
fn split_product(s: &str) -> Result<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => return Ok((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    Err(Error::parse(format!("product spec '{s}' needs '*'")))
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Abelian(m) => {
                let parts: Vec<String> = m.iter().map(|n| format!("C{n}")).collect();
                write!(f, "{}", parts.join("x"))
            }
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Quaternion => write!(f, "Q8"),
            GroupSpec::Units(n) => write!(f, "U({n})"),
            GroupSpec::GL2(q) => write!(f, "GL2({q})"),
            GroupSpec::SL2(q) => write!(f, "SL2({q})"),
            GroupSpec::TorusDiag { n, l } => write!(f, "T-diag({n},{l})"),
            GroupSpec::TorusSymp(l) => write!(f, "T-symp({l})"),
            GroupSpec::TorusGSymp(l) => write!(f, "T-gsymp({l})"),
            GroupSpec::Perm { generators, .. } => {
                let gens: Vec<String> = generators
                    .iter()
                    .map(|cycles| {
                        cycles
                            .iter()
                            .map(|c| {
                                let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                                format!("({})", pts.join(","))
                            })
                            .collect::<String>()
                    })
                    .collect();
                write!(f, "perm:{}", gens.join(";"))
            }
            GroupSpec::Product(a, b) => write!(f, "prod:{a}*{b}"),
            GroupSpec::Table { order, .. } => write!(f, "table({order})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_families() {
        assert_eq!("C6".parse::<GroupSpec>().unwrap(), GroupSpec::Abelian(vec![6]));
        assert_eq!("C2xC4".parse::<GroupSpec>().unwrap(), GroupSpec::Abelian(vec![2, 4]));
        assert_eq!("GL2(7)".parse::<GroupSpec>().unwrap(), GroupSpec::GL2(7));
        assert_eq!(
            "T-diag(2,5)".parse::<GroupSpec>().unwrap(),
            GroupSpec::TorusDiag { n: 2, l: 5 }
        );
        let p: GroupSpec = "perm:(1,2,3)(4,5);(1,2)".parse().unwrap();
        assert!(matches!(p, GroupSpec::Perm { degree: 5, .. }));
        let q: GroupSpec = "prod:S3*C2".parse().unwrap();
        assert_eq!(q.to_string(), "prod:S3*C2");
        assert!("GL2(6)".parse::<GroupSpec>().is_err());
        assert!("X7".parse::<GroupSpec>().is_err());
    }
}
