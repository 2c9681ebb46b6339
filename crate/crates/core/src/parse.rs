//! Element mini-language: `1*r[1] + 1*r[2] - 2*r[1,1]`, `h[2]`.
//!
//! `r[a_1, ..., a_l]` is the root vector with those simple-root coordinates;
//! a single index `r[i]` is shorthand for the i-th simple root. `h[i]` is the
//! i-th simple coroot.

use crate::chevalley::{AlgebraElement, ChevalleyAlgebra};
use crate::error::{Error, Result};
use crate::scalars::{fmt_q, parse_q, CycloScalar, Field, Q};

fn err(s: &str, why: &str) -> Error {
    Error::Parse(format!("{} in {:?}", why, s))
}

/// Basis index named by `r[...]` or `h[...]`.
fn basis_index(chev: &ChevalleyAlgebra, kind: char, args: &[i64], src: &str) -> Result<usize> {
    let rs = &chev.root_system;
    let l = rs.rank;
    match kind {
        'h' => {
            if args.len() != 1 || args[0] < 1 || args[0] as usize > l {
                return Err(err(src, "coroot index out of range"));
            }
            Ok(args[0] as usize - 1)
        }
        _ => {
            let root: Vec<i64> = if args.len() == l {
                args.to_vec()
            } else if args.len() == 1 && args[0].unsigned_abs() as usize >= 1 && args[0].unsigned_abs() as usize <= l {
                let mut r = vec![0; l];
                r[args[0].unsigned_abs() as usize - 1] = args[0].signum();
                r
            } else {
                return Err(err(src, "root needs one index or one coordinate per simple root"));
            };
            let a = rs.root_index(&root).ok_or_else(|| Error::Domain(format!("{:?} is not a root", root)))?;
            Ok(chev.root_vector_index(a))
        }
    }
}

pub fn parse_element(chev: &ChevalleyAlgebra, s: &str) -> Result<AlgebraElement> {
    let mut coords = vec![Q::from_integer(0.into()); chev.dim];
    let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(err(s, "empty element"));
    }
    let b = src.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let mut sign = Q::from_integer(1.into());
        if b[i] == b'+' || b[i] == b'-' {
            if b[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        } else if i > 0 {
            return Err(err(s, "expected + or -"));
        }
        let start = i;
        while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'/') {
            i += 1;
        }
        let coef = if i > start {
            let c = parse_q(&src[start..i])?;
            if i < b.len() && b[i] == b'*' {
                i += 1;
            }
            c
        } else {
            Q::from_integer(1.into())
        };
        if i + 1 >= b.len() || !(b[i] == b'r' || b[i] == b'h') || b[i + 1] != b'[' {
            return Err(err(s, "expected r[...] or h[...]"));
        }
        let kind = b[i] as char;
        let close = src[i..].find(']').ok_or_else(|| err(s, "unclosed bracket"))? + i;
        let args: Vec<i64> = src[i + 2..close]
            .split(',')
            .map(|t| t.parse::<i64>().map_err(|_| err(s, "bad index")))
            .collect::<Result<_>>()?;
        let k = basis_index(chev, kind, &args, s)?;
        coords[k] = &coords[k] + sign * coef;
        i = close + 1;
    }
    Ok(AlgebraElement { coords: coords.into_iter().map(CycloScalar::rational).collect() })
}

/// Inverse of `parse_element` for elements with rational coordinates.
pub fn format_element(chev: &ChevalleyAlgebra, x: &AlgebraElement) -> String {
    let rs = &chev.root_system;
    let mut parts = Vec::new();
    for (k, c) in x.coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let coef = match c.to_rational() {
            Some(r) => fmt_q(&r),
            None => format!("({})", c),
        };
        let name = match chev.root_of_basis(k) {
            None => format!("h[{}]", k + 1),
            Some(a) => {
                let r: Vec<String> = rs.roots[a].iter().map(|v| v.to_string()).collect();
                format!("r[{}]", r.join(","))
            }
        };
        parts.push(format!("{}*{}", coef, name));
    }
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        match (i, p.strip_prefix('-')) {
            (0, _) => out.push_str(p),
            (_, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            (_, None) => {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{DynkinType, RootSystem};

    #[test]
    fn mini_language() {
        let rs = RootSystem::new(DynkinType::A, 2).unwrap();
        let chev = ChevalleyAlgebra::new(&rs);
        let x = parse_element(&chev, "1*r[1] + 1*r[2] - 2*r[1,1]").unwrap();
        let y = parse_element(&chev, "r[1,0] + r[0,1] - 2*r[1,1]").unwrap();
        assert_eq!(x, y);
        assert_eq!(x.coords.iter().filter(|c| !c.is_zero()).count(), 3);
        let z = parse_element(&chev, &format_element(&chev, &x)).unwrap();
        assert_eq!(x, z);
        assert!(parse_element(&chev, "r[2,2]").is_err());
        assert!(parse_element(&chev, "r[1").is_err());
        parse_element(&chev, "1/2*h[1] - r[-1,-1]").unwrap();
    }
}
