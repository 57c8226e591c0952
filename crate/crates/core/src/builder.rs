//! A small language naming braces and groups, e.g. `c:9,3`, `bp:3`,
//! `trivial:quaternion:8`, `prod:c:3,3|c:4,2` or `op:(prod:bp:2|c:4,2)`.
//!
//! Groups: `cyclic:n`, `klein[:4]`, `s3`, `quaternion[:8]`, `q8`,
//! `dihedral:2n`, `abelian:a,b,...`, `opposite:<group>`, `trivial`.
//! Braces: `c:n,d`, `bp:p`, `trivial:<group>`, `almosttrivial:<group>`,
//! `prod:a|b`, `op:<brace>`, `point`. Parentheses group sub-specs.

use crate::brace::SkewBrace;
use crate::error::{Error, Result};
use crate::group::GroupTable;

fn err(offset: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("at offset {offset}: {msg}"))
}

/// Removes one pair of enclosing parentheses, adjusting the offset.
fn unwrap_parens(s: &str, offset: usize) -> Result<(&str, usize)> {
    let t = s.trim();
    let offset = offset + (s.len() - s.trim_start().len());
    if t.starts_with('(') {
        if !t.ends_with(')') {
            return Err(err(offset, "unbalanced parenthesis"));
        }
        return Ok((&t[1..t.len() - 1], offset + 1));
    }
    Ok((t, offset))
}

fn numbers(s: &str, offset: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut pos = offset;
    for part in s.split(',') {
        let v = part
            .trim()
            .parse::<usize>()
            .map_err(|_| err(pos, format!("expected a positive integer, found {part:?}")))?;
        out.push(v);
        pos += part.len() + 1;
    }
    Ok(out)
}

fn one_number(s: &str, offset: usize) -> Result<usize> {
    match numbers(s, offset)?.as_slice() {
        [v] => Ok(*v),
        _ => Err(err(offset, format!("expected one integer, found {s:?}"))),
    }
}

fn need<'a>(rest: Option<&'a str>, h: &str, offset: usize) -> Result<&'a str> {
    rest.ok_or_else(|| err(offset, format!("{h:?} needs an argument")))
}

fn head(s: &str) -> (&str, Option<&str>) {
    match s.split_once(':') {
        Some((h, rest)) => (h, Some(rest)),
        None => (s, None),
    }
}

pub fn parse_group(spec: &str) -> Result<GroupTable> {
    group_at(spec, 0)
}

fn group_at(spec: &str, offset: usize) -> Result<GroupTable> {
    let (s, offset) = unwrap_parens(spec, offset)?;
    let (h, rest) = head(s);
    let arg = offset + h.len() + 1;
    let ctx = |e: Error| match e {
        Error::Parse(_) | Error::OrderTooLarge { .. } => e,
        other => err(offset, other),
    };
    match h {
        "cyclic" | "z" => GroupTable::abelian(&[one_number(need(rest, h, offset)?, arg)?]).map_err(ctx),
        "klein" | "v4" => match rest {
            None => Ok(GroupTable::klein()),
            Some(r) if one_number(r, arg)? == 4 => Ok(GroupTable::klein()),
            Some(_) => Err(err(arg, "the Klein group has order 4")),
        },
        "s3" | "symmetric3" => Ok(GroupTable::symmetric3()),
        "q8" => Ok(GroupTable::quaternion()),
        "quaternion" => match rest {
            None => Ok(GroupTable::quaternion()),
            Some(r) if one_number(r, arg)? == 8 => Ok(GroupTable::quaternion()),
            Some(_) => Err(err(arg, "only the quaternion group of order 8 is built in")),
        },
        "dihedral" => GroupTable::dihedral(one_number(need(rest, h, offset)?, arg)?).map_err(ctx),
        "abelian" => GroupTable::abelian(&numbers(need(rest, h, offset)?, arg)?).map_err(ctx),
        "opposite" => Ok(group_at(need(rest, h, offset)?, arg)?.opposite()),
        "trivial" if rest.is_none() => Ok(GroupTable::trivial()),
        _ => Err(err(offset, format!("unknown group {h:?}"))),
    }
}

/// Splits `a|b` at the first `|` outside parentheses.
fn split_pair(s: &str, offset: usize) -> Result<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '|' if depth == 0 => return Ok((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    Err(err(offset, "a product needs two factors separated by '|'"))
}

pub fn parse_brace(spec: &str) -> Result<SkewBrace> {
    brace_at(spec, 0)
}

fn brace_at(spec: &str, offset: usize) -> Result<SkewBrace> {
    let (s, offset) = unwrap_parens(spec, offset)?;
    let (h, rest) = head(s);
    let arg = offset + h.len() + 1;
    let ctx = |e: Error| match e {
        Error::Parse(_) | Error::OrderTooLarge { .. } => e,
        other => err(offset, other),
    };
    match h {
        "c" => match numbers(need(rest, h, offset)?, arg)?.as_slice() {
            [n, d] => SkewBrace::c_nd(*n, *d).map_err(ctx),
            _ => Err(err(arg, "c:n,d takes two integers")),
        },
        "bp" => SkewBrace::b_p(one_number(need(rest, h, offset)?, arg)?).map_err(ctx),
        "trivial" => Ok(SkewBrace::trivial(&group_at(need(rest, h, offset)?, arg)?)),
        "almosttrivial" => Ok(SkewBrace::almost_trivial(&group_at(need(rest, h, offset)?, arg)?)),
        "prod" => {
            let r = need(rest, h, offset)?;
            let (a, b) = split_pair(r, arg)?;
            let left = brace_at(a, arg)?;
            let right = brace_at(b, arg + a.len() + 1)?;
            left.direct_product(&right).map_err(ctx)
        }
        "op" => Ok(brace_at(need(rest, h, offset)?, arg)?.opposite()),
        "point" if rest.is_none() => Ok(SkewBrace::point()),
        _ => Err(err(offset, format!("unknown brace {h:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::find_isomorphism;

    #[test]
    fn specs() {
        assert_eq!(parse_brace("c:9,3").unwrap(), SkewBrace::c_nd(9, 3).unwrap());
        assert_eq!(parse_brace("trivial:cyclic:4").unwrap(), SkewBrace::trivial(&GroupTable::cyclic(4)));
        assert_eq!(parse_brace("prod:c:3,3|c:4,2").unwrap().order(), 12);
        assert_eq!(parse_brace("prod:(prod:c:2,2|c:2,2)|c:3,3").unwrap().order(), 12);
        assert_eq!(parse_brace("trivial:quaternion:8").unwrap().order(), 8);
        assert_eq!(parse_group("dihedral:8").unwrap().order(), 8);
        assert_eq!(parse_group("abelian:2,4").unwrap().order(), 8);
        let op = parse_brace("op:bp:3").unwrap();
        assert_eq!(op, SkewBrace::b_p(3).unwrap().opposite());
        let at = parse_brace("almosttrivial:s3").unwrap();
        assert_eq!(at.circ_group(), &GroupTable::symmetric3().opposite());
        assert!(find_isomorphism(&parse_brace("trivial:opposite:s3").unwrap(), &parse_brace("trivial:s3").unwrap())
            .is_some());
        assert_eq!(parse_brace("point").unwrap().order(), 1);
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_brace("prod:c:3,3|c:4,x").unwrap_err();
        assert_eq!(e, Error::Parse("at offset 15: expected a positive integer, found \"x\"".into()));
        assert!(matches!(parse_brace("bp:4"), Err(Error::Parse(m)) if m.contains("offset 0")));
        assert!(matches!(parse_brace("wat"), Err(Error::Parse(_))));
        assert!(matches!(parse_group("klein:5"), Err(Error::Parse(_))));
    }
}
