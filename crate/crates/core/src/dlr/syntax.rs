use super::{top_arity, DlrBinRel, DlrConcept, DlrRole};
use crate::text::{Cursor, ParseError, Tok};

const KEYWORDS: [&str; 4] = ["exists", "eps", "o", "u"];

pub fn parse_dlr_concept(text: &str) -> Result<DlrConcept, ParseError> {
    let mut cur = Cursor::new(text)?;
    let c = concept(&mut cur)?;
    cur.expect_eof()?;
    Ok(c)
}

pub fn parse_dlr_role(text: &str) -> Result<DlrRole, ParseError> {
    let mut cur = Cursor::new(text)?;
    let r = role(&mut cur)?;
    cur.expect_eof()?;
    Ok(r)
}

pub fn parse_dlr_binrel(text: &str) -> Result<DlrBinRel, ParseError> {
    let mut cur = Cursor::new(text)?;
    let e = binrel(&mut cur)?;
    cur.expect_eof()?;
    Ok(e)
}

fn name(cur: &mut Cursor) -> Result<String, ParseError> {
    let pos = cur.pos();
    let n = cur.expect_ident()?;
    if KEYWORDS.contains(&n.as_str()) || top_arity(&n).is_some() {
        return Err(ParseError::new(pos, format!("`{n}` is reserved and cannot be used as a name")));
    }
    Ok(n)
}

fn dollar_index(cur: &mut Cursor) -> Result<usize, ParseError> {
    cur.expect(&Tok::Dollar)?;
    let pos = cur.pos();
    let i = cur.expect_int()?;
    if i == 0 {
        return Err(ParseError::new(pos, "indices start at 1"));
    }
    Ok(i)
}

fn concept(cur: &mut Cursor) -> Result<DlrConcept, ParseError> {
    match cur.peek().clone() {
        Tok::Tilde => {
            cur.bump();
            Ok(DlrConcept::not(concept(cur)?))
        }
        Tok::LParen if *cur.peek_at(1) == Tok::Le => {
            cur.bump();
            cur.bump();
            let k = cur.expect_int()?;
            cur.expect(&Tok::LBracket)?;
            let i = dollar_index(cur)?;
            cur.expect(&Tok::RBracket)?;
            let r = role(cur)?;
            cur.expect(&Tok::RParen)?;
            Ok(DlrConcept::AtMost(k, i, r))
        }
        Tok::LParen => {
            cur.bump();
            let a = concept(cur)?;
            if cur.eat(&Tok::RParen) {
                return Ok(a);
            }
            cur.expect(&Tok::Amp)?;
            let b = concept(cur)?;
            cur.expect(&Tok::RParen)?;
            Ok(DlrConcept::and(a, b))
        }
        Tok::Ident(kw) if kw == "top1" => {
            cur.bump();
            Ok(DlrConcept::Top)
        }
        Tok::Ident(kw) if kw == "exists" => {
            cur.bump();
            if cur.eat(&Tok::LBracket) {
                let i = dollar_index(cur)?;
                cur.expect(&Tok::RBracket)?;
                return Ok(DlrConcept::ExistsProj(i, role(cur)?));
            }
            let e = binrel(cur)?;
            cur.expect(&Tok::Dot)?;
            Ok(DlrConcept::exists(e, concept(cur)?))
        }
        Tok::Ident(_) => Ok(DlrConcept::Atomic(name(cur)?)),
        _ => Err(cur.unexpected("a concept")),
    }
}

fn role(cur: &mut Cursor) -> Result<DlrRole, ParseError> {
    match cur.peek().clone() {
        Tok::Tilde => {
            cur.bump();
            Ok(DlrRole::not(role(cur)?))
        }
        Tok::LParen if *cur.peek_at(1) == Tok::Dollar => {
            cur.bump();
            let i = dollar_index(cur)?;
            cur.expect(&Tok::Slash)?;
            let n = cur.expect_int()?;
            cur.expect(&Tok::Colon)?;
            let c = concept(cur)?;
            cur.expect(&Tok::RParen)?;
            Ok(DlrRole::sel(i, n, c))
        }
        Tok::LParen => {
            cur.bump();
            let a = role(cur)?;
            cur.expect(&Tok::Amp)?;
            let b = role(cur)?;
            cur.expect(&Tok::RParen)?;
            Ok(DlrRole::and(a, b))
        }
        Tok::Ident(n) if top_arity(&n).is_some() => {
            let pos = cur.pos();
            cur.bump();
            match top_arity(&n) {
                Some(1) => Err(ParseError::new(pos, "top1 is a concept, not a role")),
                Some(k) => Ok(DlrRole::Top(k)),
                None => unreachable!(),
            }
        }
        Tok::Ident(_) => Ok(DlrRole::Atomic(name(cur)?)),
        _ => Err(cur.unexpected("a role")),
    }
}

fn binrel(cur: &mut Cursor) -> Result<DlrBinRel, ParseError> {
    let mut e = binrel_primary(cur)?;
    while cur.eat(&Tok::Star) {
        e = DlrBinRel::star(e);
    }
    Ok(e)
}

fn binrel_primary(cur: &mut Cursor) -> Result<DlrBinRel, ParseError> {
    if cur.eat_keyword("eps") {
        return Ok(DlrBinRel::Eps);
    }
    if *cur.peek() == Tok::LParen && *cur.peek_at(1) != Tok::Dollar {
        // either a parenthesised role intersection to be projected or a composite
        let start = cur.mark();
        let as_role = projection(cur);
        if as_role.is_ok() {
            return as_role;
        }
        let role_end = cur.pos();
        cur.reset(start);
        return composite(cur).map_err(|e| {
            let composite_err = e;
            match as_role {
                Err(role_err)
                    if (role_end.line, role_end.column)
                        > (composite_err.line, composite_err.column) =>
                {
                    role_err
                }
                _ => composite_err,
            }
        });
    }
    projection(cur)
}

fn projection(cur: &mut Cursor) -> Result<DlrBinRel, ParseError> {
    let r = role(cur)?;
    if cur.eat(&Tok::Bar) {
        let i = dollar_index(cur)?;
        cur.expect(&Tok::Comma)?;
        let j = dollar_index(cur)?;
        return Ok(DlrBinRel::Proj(r, i, j));
    }
    match r {
        DlrRole::Atomic(_) => Ok(DlrBinRel::Proj(r, 1, 2)),
        _ => Err(cur.unexpected("`|` and a projection")),
    }
}

fn composite(cur: &mut Cursor) -> Result<DlrBinRel, ParseError> {
    cur.expect(&Tok::LParen)?;
    let a = binrel(cur)?;
    let op = if cur.eat_keyword("o") {
        DlrBinRel::comp
    } else if cur.eat_keyword("u") {
        DlrBinRel::union
    } else {
        return Err(cur.unexpected("`o` or `u`"));
    };
    let b = binrel(cur)?;
    cur.expect(&Tok::RParen)?;
    Ok(op(a, b))
}

pub fn print_dlr_concept(c: &DlrConcept) -> String {
    let mut out = String::new();
    write_concept(&mut out, c);
    out
}

pub fn print_dlr_role(r: &DlrRole) -> String {
    let mut out = String::new();
    write_role(&mut out, r);
    out
}

pub fn print_dlr_binrel(e: &DlrBinRel) -> String {
    let mut out = String::new();
    write_binrel(&mut out, e);
    out
}

fn write_concept(out: &mut String, c: &DlrConcept) {
    match c {
        DlrConcept::Top => out.push_str("top1"),
        DlrConcept::Atomic(n) => out.push_str(n),
        DlrConcept::Not(c) => {
            out.push('~');
            write_concept(out, c);
        }
        DlrConcept::And(a, b) => {
            out.push('(');
            write_concept(out, a);
            out.push_str(" & ");
            write_concept(out, b);
            out.push(')');
        }
        DlrConcept::Exists(e, c) => {
            out.push_str("exists ");
            write_binrel(out, e);
            out.push_str(" . ");
            write_concept(out, c);
        }
        DlrConcept::ExistsProj(i, r) => {
            out.push_str(&format!("exists[${i}] "));
            write_role(out, r);
        }
        DlrConcept::AtMost(k, i, r) => {
            out.push_str(&format!("(<={k}[${i}] "));
            write_role(out, r);
            out.push(')');
        }
    }
}

fn write_role(out: &mut String, r: &DlrRole) {
    match r {
        DlrRole::Top(n) => out.push_str(&format!("top{n}")),
        DlrRole::Atomic(n) => out.push_str(n),
        DlrRole::Sel(i, n, c) => {
            out.push_str(&format!("(${i}/{n}:"));
            write_concept(out, c);
            out.push(')');
        }
        DlrRole::Not(r) => {
            out.push('~');
            write_role(out, r);
        }
        DlrRole::And(a, b) => {
            out.push('(');
            write_role(out, a);
            out.push_str(" & ");
            write_role(out, b);
            out.push(')');
        }
    }
}

fn write_binrel(out: &mut String, e: &DlrBinRel) {
    match e {
        DlrBinRel::Eps => out.push_str("eps"),
        DlrBinRel::Proj(r, i, j) => {
            write_role(out, r);
            out.push_str(&format!("|${i},${j}"));
        }
        DlrBinRel::Comp(a, b) | DlrBinRel::Union(a, b) => {
            out.push('(');
            write_binrel(out, a);
            out.push_str(if matches!(e, DlrBinRel::Comp(..)) { " o " } else { " u " });
            write_binrel(out, b);
            out.push(')');
        }
        DlrBinRel::Star(e) => {
            write_binrel(out, e);
            out.push('*');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for text in [
            "(<=1[$2] R)",
            "exists[$2] Q",
            "exists (R|$1,$2 o S|$2,$1) . A",
            "exists (eps u ~R|$1,$2)* . top1",
            "exists[$1] (($1/2:A) & ~top2)",
            "exists (R & ($2/2:~A))|$2,$1 . (A & top1)",
            "exists R|$1,$2** . A",
        ] {
            let c = parse_dlr_concept(text).unwrap();
            assert_eq!(print_dlr_concept(&c), text, "{c:?}");
        }
    }

    #[test]
    fn sugar_and_grouping() {
        let c = parse_dlr_concept("(exists e* . A)").unwrap();
        assert_eq!(
            c,
            DlrConcept::exists(
                DlrBinRel::star(DlrBinRel::proj(DlrRole::atomic("e"), 1, 2)),
                DlrConcept::atomic("A")
            )
        );
        assert!(c.has_star());
    }

    #[test]
    fn reserved_names_and_errors() {
        assert!(parse_dlr_concept("u").is_err());
        assert!(parse_dlr_concept("exists[$0] R").is_err());
        assert!(parse_dlr_role("top1").is_err());
        assert!(parse_dlr_concept("exists ~R . A").is_err());
        let e = parse_dlr_concept("exists (R|$1,$2 x S|$1,$2) . A").unwrap_err();
        assert_eq!((e.line, e.column), (1, 17));
    }
}
