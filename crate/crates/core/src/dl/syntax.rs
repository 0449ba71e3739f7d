use super::{Concept, Role, Surjection};
use crate::text::{Cursor, ParseError, Tok};

const KEYWORDS: [&str; 5] = ["top", "bottom", "exists", "eps", "perm"];

pub fn parse_concept(text: &str) -> Result<Concept, ParseError> {
    let mut cur = Cursor::new(text)?;
    let c = concept(&mut cur)?;
    cur.expect_eof()?;
    Ok(c)
}

pub fn parse_role(text: &str) -> Result<Role, ParseError> {
    let mut cur = Cursor::new(text)?;
    let r = role(&mut cur)?;
    cur.expect_eof()?;
    Ok(r)
}

fn name(cur: &mut Cursor) -> Result<String, ParseError> {
    let pos = cur.pos();
    let n = cur.expect_ident()?;
    if KEYWORDS.contains(&n.as_str()) {
        return Err(ParseError::new(pos, format!("`{n}` is a keyword, not a name")));
    }
    Ok(n)
}

fn concept(cur: &mut Cursor) -> Result<Concept, ParseError> {
    match cur.peek().clone() {
        Tok::Tilde => {
            cur.bump();
            Ok(Concept::not(concept(cur)?))
        }
        Tok::LParen => {
            cur.bump();
            let a = concept(cur)?;
            cur.expect(&Tok::Amp)?;
            let b = concept(cur)?;
            cur.expect(&Tok::RParen)?;
            Ok(Concept::and(a, b))
        }
        Tok::Ident(kw) if kw == "top" => {
            cur.bump();
            Ok(Concept::Top)
        }
        Tok::Ident(kw) if kw == "bottom" => {
            cur.bump();
            Ok(Concept::Bottom)
        }
        Tok::Ident(kw) if kw == "exists" => {
            cur.bump();
            let r = role(cur)?;
            cur.expect(&Tok::Dot)?;
            cur.expect(&Tok::LParen)?;
            let mut args = vec![concept(cur)?];
            while cur.eat(&Tok::Comma) {
                args.push(concept(cur)?);
            }
            cur.expect(&Tok::RParen)?;
            Ok(Concept::Exists(r, args))
        }
        Tok::Ident(_) => Ok(Concept::Atomic(name(cur)?)),
        _ => Err(cur.unexpected("a concept")),
    }
}

fn role(cur: &mut Cursor) -> Result<Role, ParseError> {
    match cur.peek().clone() {
        Tok::Tilde => {
            cur.bump();
            Ok(Role::not(role(cur)?))
        }
        Tok::LParen => {
            cur.bump();
            let a = role(cur)?;
            cur.expect(&Tok::Amp)?;
            let b = role(cur)?;
            cur.expect(&Tok::RParen)?;
            Ok(Role::and(a, b))
        }
        Tok::Ident(kw) if kw == "eps" => {
            cur.bump();
            Ok(Role::Epsilon)
        }
        Tok::Ident(kw) if kw == "perm" => {
            cur.bump();
            let pos = cur.pos();
            cur.expect(&Tok::LBracket)?;
            let mut map = vec![cur.expect_int()?];
            while cur.eat(&Tok::Comma) {
                map.push(cur.expect_int()?);
            }
            cur.expect(&Tok::RBracket)?;
            let sigma = Surjection::new(map).map_err(|e| ParseError::new(pos, e.to_string()))?;
            Ok(Role::apply(sigma, role(cur)?))
        }
        Tok::Ident(_) => Ok(Role::Atomic(name(cur)?)),
        _ => Err(cur.unexpected("a role")),
    }
}

pub fn print_concept(c: &Concept) -> String {
    let mut out = String::new();
    write_concept(&mut out, c);
    out
}

pub fn print_role(r: &Role) -> String {
    let mut out = String::new();
    write_role(&mut out, r);
    out
}

fn write_concept(out: &mut String, c: &Concept) {
    match c {
        Concept::Top => out.push_str("top"),
        Concept::Bottom => out.push_str("bottom"),
        Concept::Atomic(n) => out.push_str(n),
        Concept::Not(c) => {
            out.push('~');
            write_concept(out, c);
        }
        Concept::And(a, b) => {
            out.push('(');
            write_concept(out, a);
            out.push_str(" & ");
            write_concept(out, b);
            out.push(')');
        }
        Concept::Exists(r, args) => {
            out.push_str("exists ");
            write_role(out, r);
            out.push_str(".(");
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_concept(out, a);
            }
            out.push(')');
        }
    }
}

fn write_role(out: &mut String, r: &Role) {
    match r {
        Role::Atomic(n) => out.push_str(n),
        Role::Epsilon => out.push_str("eps"),
        Role::Not(r) => {
            out.push('~');
            write_role(out, r);
        }
        Role::And(a, b) => {
            out.push('(');
            write_role(out, a);
            out.push_str(" & ");
            write_role(out, b);
            out.push(')');
        }
        Role::Apply(sigma, r) => {
            let vals: Vec<String> = sigma.values().iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("perm[{}] ", vals.join(",")));
            write_role(out, r);
        }
    }
}
