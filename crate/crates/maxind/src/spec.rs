//! Group-spec grammar.
//!
//! ```text
//! spec := builtin                       sym:4, agl:3,2, ...
//!       | "perm:" degree ":" gen (";" gen)*      gen in 1-based cycle notation
//!       | "dp:" item ("+" item)*
//!       | "lk:" spec "," k
//!       | "hat:" spec ";" d
//!       | "sub:" spec "[" gen (";" gen)* "]" ("+" spec "[" .. "]")*
//! item := spec | "(" spec ")"
//! ```
//!
//! Delimiters are found at bracket depth zero, taking the last `,` for
//! `lk` and the last `;` for `hat`, so any spec can be nested. A nested
//! `dp` or `sub` inside a `dp`/`sub` list needs parentheses.

use std::fmt;

use maxind_core::{catalog, Error, Perm, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Spec {
    Builtin(String),
    Perm { degree: usize, gens: Vec<Perm> },
    Dp(Vec<Spec>),
    Lk(Box<Spec>, usize),
    Hat(Box<Spec>, u32),
    Sub(Vec<(Spec, Vec<Perm>)>),
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

/// Byte positions of `delim` at bracket depth zero.
fn top_level(s: &str, delim: char) -> Vec<usize> {
    let mut depth = 0i32;
    let mut out = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ if c == delim && depth == 0 => out.push(i),
            _ => {}
        }
    }
    out
}

fn balanced(s: &str, at: usize) -> Result<()> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(err(at + i, "unbalanced closing bracket"));
                }
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(err(at + s.len(), "unclosed bracket"));
    }
    Ok(())
}

impl Spec {
    pub fn parse(text: &str) -> Result<Spec> {
        let t = text.trim();
        let at = text.len() - text.trim_start().len();
        balanced(t, at)?;
        parse_at(t, at)
    }
}

fn parse_gens(degree: usize, s: &str, at: usize) -> Result<Vec<Perm>> {
    let mut gens = Vec::new();
    let mut start = 0;
    let cuts: Vec<usize> = top_level(s, ';').into_iter().chain([s.len()]).collect();
    for cut in cuts {
        let piece = s[start..cut].trim();
        if piece.is_empty() {
            return Err(err(at + start, "empty generator"));
        }
        let p = Perm::parse(degree, piece).map_err(|e| err(at + start, e.to_string()))?;
        gens.push(p);
        start = cut + 1;
    }
    Ok(gens)
}

fn parse_item(s: &str, at: usize) -> Result<Spec> {
    let t = s.trim();
    let at = at + (s.len() - s.trim_start().len());
    if t.starts_with('(') && t.ends_with(')') && matching_close(t) == Some(t.len() - 1) {
        return parse_at(&t[1..t.len() - 1], at + 1);
    }
    parse_at(t, at)
}

fn matching_close(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn split_list(s: &str, at: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for cut in top_level(s, '+').into_iter().chain([s.len()]) {
        out.push((&s[start..cut], at + start));
        start = cut + 1;
    }
    out
}

fn parse_at(s: &str, at: usize) -> Result<Spec> {
    if s.is_empty() {
        return Err(err(at, "empty spec"));
    }
    let (head, rest) = s.split_once(':').ok_or_else(|| err(at, "expected `name:`"))?;
    let rat = at + head.len() + 1;
    match head {
        "perm" => {
            let (deg, gens) = rest.split_once(':').ok_or_else(|| err(rat, "expected `perm:degree:gens`"))?;
            let degree: usize = deg.trim().parse().map_err(|_| err(rat, "bad degree"))?;
            if degree == 0 {
                return Err(err(rat, "degree must be positive"));
            }
            let gens = parse_gens(degree, gens, rat + deg.len() + 1)?;
            Ok(Spec::Perm { degree, gens })
        }
        "dp" => {
            let items = split_list(rest, rat)
                .into_iter()
                .map(|(p, a)| parse_item(p, a))
                .collect::<Result<Vec<_>>>()?;
            if items.len() < 2 {
                return Err(err(rat, "dp needs at least two factors"));
            }
            Ok(Spec::Dp(items))
        }
        "lk" | "hat" => {
            let delim = if head == "lk" { ',' } else { ';' };
            let cut = *top_level(rest, delim)
                .last()
                .ok_or_else(|| err(rat + rest.len(), format!("expected `{delim}` and a number")))?;
            let num: u32 = rest[cut + 1..]
                .trim()
                .parse()
                .map_err(|_| err(rat + cut + 1, "expected a positive integer"))?;
            if num == 0 {
                return Err(err(rat + cut + 1, "expected a positive integer"));
            }
            let inner = Box::new(parse_item(&rest[..cut], rat)?);
            Ok(if head == "lk" { Spec::Lk(inner, num as usize) } else { Spec::Hat(inner, num) })
        }
        "sub" => {
            let mut items = Vec::new();
            for (piece, pat) in split_list(rest, rat) {
                let p = piece.trim_end();
                if !p.ends_with(']') {
                    return Err(err(pat + p.len(), "expected `[generators]`"));
                }
                let open = p.rfind('[').ok_or_else(|| err(pat, "expected `[`"))?;
                let spec = parse_item(&p[..open], pat)?;
                let degree = spec_degree(&spec).ok_or_else(|| err(pat, "sub needs factors of known degree"))?;
                let gens = parse_gens(degree, &p[open + 1..p.len() - 1], pat + open + 1)?;
                items.push((spec, gens));
            }
            Ok(Spec::Sub(items))
        }
        _ => {
            let name = format!("{head}:{}", rest.split_whitespace().collect::<String>());
            catalog::builtin(&name).map_err(|e| err(at, e.to_string()))?;
            Ok(Spec::Builtin(name))
        }
    }
}

/// Degree of the permutation representation a spec denotes, when cheap.
pub fn spec_degree(spec: &Spec) -> Option<usize> {
    match spec {
        Spec::Builtin(n) => catalog::builtin(n).ok().map(|g| g.degree()),
        Spec::Perm { degree, .. } => Some(*degree),
        Spec::Dp(items) => items.iter().map(spec_degree).sum(),
        Spec::Lk(inner, k) => spec_degree(inner).map(|d| d * k),
        Spec::Sub(items) => items.iter().map(|(s, _)| spec_degree(s)).sum(),
        Spec::Hat(..) => None,
    }
}

fn write_item(f: &mut fmt::Formatter<'_>, s: &Spec) -> fmt::Result {
    match s {
        Spec::Dp(_) | Spec::Sub(_) => write!(f, "({s})"),
        _ => write!(f, "{s}"),
    }
}

fn write_gens(f: &mut fmt::Formatter<'_>, gens: &[Perm]) -> fmt::Result {
    for (i, g) in gens.iter().enumerate() {
        if i > 0 {
            f.write_str(";")?;
        }
        write!(f, "{g}")?;
    }
    Ok(())
}

impl fmt::Display for Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spec::Builtin(n) => f.write_str(n),
            Spec::Perm { degree, gens } => {
                write!(f, "perm:{degree}:")?;
                write_gens(f, gens)
            }
            Spec::Dp(items) => {
                f.write_str("dp:")?;
                for (i, s) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write_item(f, s)?;
                }
                Ok(())
            }
            Spec::Lk(s, k) => write!(f, "lk:{s},{k}"),
            Spec::Hat(s, d) => write!(f, "hat:{s};{d}"),
            Spec::Sub(items) => {
                f.write_str("sub:")?;
                for (i, (s, gens)) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write_item(f, s)?;
                    f.write_str("[")?;
                    write_gens(f, gens)?;
                    f.write_str("]")?;
                }
                Ok(())
            }
        }
    }
}

impl std::str::FromStr for Spec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Spec> {
        Spec::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round(s: &str) {
        let spec = Spec::parse(s).unwrap();
        assert_eq!(spec.to_string(), s);
        assert_eq!(Spec::parse(&spec.to_string()).unwrap(), spec);
    }

    #[test]
    fn canonical_round_trips() {
        for s in [
            "sym:4",
            "agl:3,2",
            "perm:4:(1,2);(1,2,3,4)",
            "perm:3:()",
            "dp:sym:3+cyc:2",
            "lk:sym:4,2",
            "hat:agl:1,8;2",
            "dp:hat:agl:1,8;2+hat:agammal:1,8;2+hat:agl:3,2;2",
            "hat:perm:4:(1,2);(1,2,3,4);2",
            "lk:hat:cyc:3;1,2",
            "dp:(dp:cyc:2+cyc:3)+sym:3",
            "sub:sym:4[(1,2);(1,2,3,4)]+cyc:2[(1,2);()]",
        ] {
            round(s);
        }
    }

    #[test]
    fn normalizes() {
        assert_eq!(Spec::parse(" agl:3, 2 ").unwrap().to_string(), "agl:3,2");
        assert_eq!(Spec::parse("perm:4:(2,1);(4,1,2,3)").unwrap().to_string(), "perm:4:(1,2);(1,2,3,4)");
        assert_eq!(Spec::parse("dp:(sym:3)+cyc:2").unwrap().to_string(), "dp:sym:3+cyc:2");
    }

    #[test]
    fn structure() {
        match Spec::parse("dp:hat:agl:1,8;2+hat:agammal:1,8;2+hat:agl:3,2;2").unwrap() {
            Spec::Dp(items) => {
                assert_eq!(items.len(), 3);
                assert!(matches!(&items[2], Spec::Hat(inner, 2) if **inner == Spec::Builtin("agl:3,2".into())));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |s: &str| match Spec::parse(s) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("foo:3"), 0);
        assert_eq!(pos("dp:sym:3+bar:2"), 9);
        assert_eq!(pos("perm:0:()"), 5);
        assert!(pos("lk:sym:4") >= 3);
        assert_eq!(pos("sym:4)"), 5);
        assert!(Spec::parse("hat:sym:3;0").is_err());
        assert!(Spec::parse("dp:sym:3").is_err());
    }
}
