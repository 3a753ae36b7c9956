//! Element literals: parsing and formatting per family.
//!
//! Every family accepts `#k` for the raw element index.

use super::{abelian_coords, mat_code, perm, Group, Repr};
use crate::error::{Error, Result};

/// Splits on a separator that is not nested inside brackets.
pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim()
        .parse::<i64>()
        .map_err(|_| Error::parse(format!("bad integer '{s}'")))
}

impl Group {
    pub fn format_element(&self, x: usize) -> String {
        match self.repr() {
            Repr::Abelian(ab) => {
                let coords = abelian_coords(ab, x as u64);
                if coords.len() == 1 {
                    coords[0].to_string()
                } else {
                    let parts: Vec<String> = coords.iter().map(u64::to_string).collect();
                    format!("({})", parts.join(","))
                }
            }
            Repr::Symmetric(_) | Repr::Perm(_) => perm::format_cycles(&self.as_permutation(x).unwrap()),
            Repr::Dihedral(n) => {
                let (k, e) = (x % n, x / n);
                match (k, e) {
                    (0, 0) => "e".into(),
                    (0, _) => "s".into(),
                    (k, 0) => format!("r^{k}"),
                    (k, _) => format!("r^{k}s"),
                }
            }
            Repr::Matrix2(m) => {
                let [a, b, c, d] = m.elems[x];
                format!("[{a},{b};{c},{d}]")
            }
            Repr::Units(u) => u.residues[x].to_string(),
            Repr::Table(t) => t.labels[x].to_string(),
            Repr::Product(g, h) => {
                let n2 = h.order();
                format!("{}*{}", g.format_element(x / n2), h.format_element(x % n2))
            }
            Repr::Sub(s) => s.parent.format_element(s.elems[x]),
            Repr::Quot(q) => format!("[{}]", q.parent.format_element(q.reps[x])),
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        if let Some(raw) = s.strip_prefix('#') {
            let i: usize = raw
                .parse()
                .map_err(|_| Error::parse(format!("bad element index '{s}'")))?;
            if i >= self.order() {
                return Err(Error::invalid(format!("element index {i} out of range")));
            }
            return Ok(i);
        }
        match self.repr() {
            Repr::Abelian(ab) => {
                let body = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(s);
                let parts: Vec<&str> = body.split(',').collect();
                if parts.len() != ab.moduli.len() {
                    return Err(Error::parse(format!(
                        "element '{s}' needs {} coordinates",
                        ab.moduli.len()
                    )));
                }
                let mut idx = 0u64;
                for ((p, &m), &stride) in parts.iter().zip(&ab.moduli).zip(&ab.strides) {
                    idx += (parse_int(p)?.rem_euclid(m as i64) as u64) * stride;
                }
                Ok(idx as usize)
            }
            Repr::Symmetric(sym) => {
                let p = perm::from_cycles(&perm::parse_cycles(s)?, sym.n)?;
                Ok(perm::lex_rank(&p, &sym.fact) as usize)
            }
            Repr::Perm(pr) => {
                let p = perm::from_cycles(&perm::parse_cycles(s)?, pr.degree)?;
                pr.index
                    .get(&perm::key(&p))
                    .map(|&i| i as usize)
                    .ok_or_else(|| Error::invalid(format!("{s} is not in {}", self.name())))
            }
            Repr::Dihedral(n) => {
                let n = *n;
                let (rot, refl) = match s.strip_suffix('s') {
                    Some(r) => (r, true),
                    None => (s, false),
                };
                let k = match rot {
                    "" | "e" => 0,
                    "r" => 1,
                    r => parse_int(
                        r.strip_prefix("r^")
                            .ok_or_else(|| Error::parse(format!("bad dihedral element '{s}'")))?,
                    )?
                    .rem_euclid(n as i64) as usize,
                };
                Ok(k % n + if refl { n } else { 0 })
            }
            Repr::Matrix2(m) => {
                let body = s
                    .strip_prefix('[')
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(|| Error::parse(format!("matrix literal '{s}' needs [a,b;c,d]")))?;
                let entries: Vec<u64> = body
                    .split([',', ';'])
                    .map(|t| parse_int(t).map(|v| v.rem_euclid(m.q as i64) as u64))
                    .collect::<Result<_>>()?;
                if entries.len() != 4 {
                    return Err(Error::parse(format!("matrix literal '{s}' needs four entries")));
                }
                let code = mat_code(&[entries[0], entries[1], entries[2], entries[3]], m.q);
                match m.lookup[code] {
                    u32::MAX => Err(Error::invalid(format!("{s} is not in {}", self.name()))),
                    i => Ok(i as usize),
                }
            }
            Repr::Units(u) => {
                let r = parse_int(s)?.rem_euclid(u.n as i64) as usize;
                match u.lookup.get(r) {
                    Some(&i) if i != u32::MAX => Ok(i as usize),
                    _ => Err(Error::invalid(format!("{s} is not a unit mod {}", u.n))),
                }
            }
            Repr::Table(t) => {
                let label = parse_int(s)? as usize;
                t.labels
                    .iter()
                    .position(|&l| l == label)
                    .ok_or_else(|| Error::invalid(format!("no element labelled {label}")))
            }
            Repr::Product(g, h) => {
                let parts = split_top_level(s, '*');
                if parts.len() != 2 {
                    return Err(Error::parse(format!("product element '{s}' needs a*b")));
                }
                Ok(g.parse_element(parts[0])? * h.order() + h.parse_element(parts[1])?)
            }
            Repr::Sub(sr) => {
                let x = sr.parent.parse_element(s)?;
                sr.index
                    .get(&x)
                    .map(|&i| i as usize)
                    .ok_or_else(|| Error::invalid(format!("{s} is not in the subgroup")))
            }
            Repr::Quot(q) => {
                let body = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(s);
                Ok(q.coset_of[q.parent.parse_element(body)?] as usize)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_all_families() {
        for spec in ["C6", "C2xC4", "S4", "A4", "D5", "GL2(3)", "U(12)", "Q8", "prod:S3*C2", "T-symp(5)"] {
            let g = Group::build(&spec.parse().unwrap()).unwrap();
            for x in 0..g.order() {
                let lit = g.format_element(x);
                assert_eq!(g.parse_element(&lit).unwrap(), x, "{spec} {lit}");
            }
        }
    }

    #[test]
    fn literals() {
        let gl = Group::build(&"GL2(3)".parse().unwrap()).unwrap();
        assert_eq!(gl.parse_element("[1,0;0,1]").unwrap(), 0);
        assert!(gl.parse_element("[1,1;1,1]").is_err());
        let d = Group::build(&"D4".parse().unwrap()).unwrap();
        assert_eq!(d.parse_element("r^3s").unwrap(), 7);
        assert_eq!(split_top_level("(1,2),{3,4}", ','), vec!["(1,2)", "{3,4}"]);
    }
}
