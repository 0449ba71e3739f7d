//! Text syntax for first-order formulae.
//!
//! ```text
//! f ::= true | false | NAME '(' var (',' var)* ')' | var '=' var | '~' f
//!     | '(' f ('&' | '|' | '->') f ')' | ('E' | 'A') var+ '.' f
//!     | 'E[' ('>=' | '<=' | '=') INT ']' var '.' f
//! ```
//!
//! The parser also accepts chains such as `(a & b & c)` (left-nested), unparenthesised
//! connectives with the usual precedence (`~` > `&` > `|` > `->`, the last right-associative)
//! and plain grouping parentheses. Quantifier bodies extend as far to the right as possible.
//! The printer always emits fully parenthesised binary connectives.

use std::fmt;

use super::formula::{Comparator, Formula, Var};
use super::vocab::Vocabulary;
use crate::text::{Cursor, ParseError, Pos, Tok};

const RESERVED: [&str; 4] = ["true", "false", "E", "A"];

/// Parses `text` and checks every atom against `vocab`.
pub fn parse_formula(text: &str, vocab: &Vocabulary) -> Result<Formula, ParseError> {
    Parser { cur: Cursor::new(text)?, vocab: Some(vocab) }.parse_all()
}

/// Parses `text` without a vocabulary; atom arities are checked for mutual consistency only.
pub fn parse_formula_untyped(text: &str) -> Result<Formula, ParseError> {
    let f = Parser { cur: Cursor::new(text)?, vocab: None }.parse_all()?;
    f.infer_vocabulary()
        .map_err(|e| ParseError::new(Pos { line: 1, column: 1 }, e.to_string()))?;
    Ok(f)
}

struct Parser<'v> {
    cur: Cursor,
    vocab: Option<&'v Vocabulary>,
}

impl Parser<'_> {
    fn parse_all(&mut self) -> Result<Formula, ParseError> {
        let f = self.implication()?;
        self.cur.expect_eof()?;
        Ok(f)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.cur.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.cur.eat(&Tok::Bar) {
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.cur.eat(&Tok::Amp) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.cur.eat(&Tok::Tilde) {
            return Ok(Formula::not(self.unary()?));
        }
        if let Tok::Ident(kw) = self.cur.peek() {
            let is_quant = match kw.as_str() {
                "E" => matches!(self.cur.peek_at(1), Tok::Ident(_) | Tok::LBracket),
                "A" => matches!(self.cur.peek_at(1), Tok::Ident(_)),
                _ => false,
            };
            if is_quant {
                return self.quantifier();
            }
        }
        self.primary()
    }

    fn quantifier(&mut self) -> Result<Formula, ParseError> {
        let universal = self.cur.expect_ident()? == "A";
        if !universal && self.cur.eat(&Tok::LBracket) {
            let cmp = match self.cur.bump() {
                Tok::Ge => Comparator::AtLeast,
                Tok::Le => Comparator::AtMost,
                Tok::Eq => Comparator::Exactly,
                _ => return Err(self.cur.error("expected `>=`, `<=` or `=` in counting quantifier")),
            };
            let bound = self.cur.expect_int()?;
            self.cur.expect(&Tok::RBracket)?;
            let v = self.variable()?;
            self.cur.expect(&Tok::Dot)?;
            let body = self.implication()?;
            return Ok(Formula::Count(cmp, bound, v, Box::new(body)));
        }
        let mut vars = Vec::new();
        while let Tok::Ident(_) = self.cur.peek() {
            let pos = self.cur.pos();
            let v = self.variable()?;
            if vars.contains(&v) {
                return Err(ParseError::new(
                    pos,
                    format!("variable `{v}` occurs twice in one quantifier block"),
                ));
            }
            vars.push(v);
        }
        if vars.is_empty() {
            return Err(self.cur.unexpected("a quantified variable"));
        }
        self.cur.expect(&Tok::Dot)?;
        let body = Box::new(self.implication()?);
        Ok(if universal { Formula::Forall(vars, body) } else { Formula::Exists(vars, body) })
    }

    fn variable(&mut self) -> Result<Var, ParseError> {
        let pos = self.cur.pos();
        let name = self.cur.expect_ident()?;
        if RESERVED.contains(&name.as_str()) {
            return Err(ParseError::new(pos, format!("`{name}` is reserved and cannot name a variable")));
        }
        Ok(Var::new(name))
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.cur.pos();
        match self.cur.peek().clone() {
            Tok::LParen => {
                self.cur.bump();
                let f = self.implication()?;
                self.cur.expect(&Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(name) if name == "true" => {
                self.cur.bump();
                Ok(Formula::Top)
            }
            Tok::Ident(name) if name == "false" => {
                self.cur.bump();
                Ok(Formula::Bottom)
            }
            Tok::Ident(name) if *self.cur.peek_at(1) == Tok::LParen => {
                self.cur.bump();
                self.cur.bump();
                let mut args = vec![self.variable()?];
                while self.cur.eat(&Tok::Comma) {
                    args.push(self.variable()?);
                }
                self.cur.expect(&Tok::RParen)?;
                if let Some(vocab) = self.vocab {
                    match vocab.arity(&name) {
                        None => return Err(ParseError::new(pos, format!("unknown relation `{name}`"))),
                        Some(a) if a != args.len() => {
                            return Err(ParseError::new(
                                pos,
                                format!(
                                    "relation `{name}` has arity {a} but is applied to {} arguments",
                                    args.len()
                                ),
                            ))
                        }
                        _ => {}
                    }
                }
                Ok(Formula::Atom(name, args))
            }
            Tok::Ident(_) => {
                let a = self.variable()?;
                self.cur.expect(&Tok::Eq)?;
                let b = self.variable()?;
                Ok(Formula::Equals(a, b))
            }
            _ => Err(self.cur.unexpected("a formula")),
        }
    }
}

pub fn print_formula(f: &Formula) -> String {
    let mut s = String::new();
    write_formula(&mut s, f);
    s
}

/// True when the printed form ends in a quantifier body, which would swallow
/// whatever follows it.
fn open_ended(f: &Formula) -> bool {
    match f {
        Formula::Not(a) => open_ended(a),
        f => f.is_quantifier(),
    }
}

fn write_formula(out: &mut String, f: &Formula) {
    match f {
        Formula::Top => out.push_str("true"),
        Formula::Bottom => out.push_str("false"),
        Formula::Atom(r, args) => {
            out.push_str(r);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(a.name());
            }
            out.push(')');
        }
        Formula::Equals(a, b) => {
            out.push_str(a.name());
            out.push_str(" = ");
            out.push_str(b.name());
        }
        Formula::Not(a) => {
            out.push('~');
            if matches!(**a, Formula::Equals(..)) {
                out.push('(');
                write_formula(out, a);
                out.push(')');
            } else {
                write_formula(out, a);
            }
        }
        Formula::And(a, b) => write_binary(out, a, " & ", b),
        Formula::Or(a, b) => write_binary(out, a, " | ", b),
        Formula::Implies(a, b) => write_binary(out, a, " -> ", b),
        Formula::Exists(vs, body) | Formula::Forall(vs, body) => {
            out.push(if matches!(f, Formula::Exists(..)) { 'E' } else { 'A' });
            for v in vs {
                out.push(' ');
                out.push_str(v.name());
            }
            out.push_str(". ");
            write_formula(out, body);
        }
        Formula::Count(cmp, k, v, body) => {
            out.push_str(&format!("E[{}{}] {}. ", cmp.symbol(), k, v));
            write_formula(out, body);
        }
    }
}

fn write_binary(out: &mut String, a: &Formula, op: &str, b: &Formula) {
    out.push('(');
    if open_ended(a) {
        out.push('(');
        write_formula(out, a);
        out.push(')');
    } else {
        write_formula(out, a);
    }
    out.push_str(op);
    write_formula(out, b);
    out.push(')');
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}
