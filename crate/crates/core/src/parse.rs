//! Recursive-descent parsers for the modal and first-order concrete syntax.
//!
//! Precedence, tightest first: `~ [] <>` (and quantifiers in FO), `&`, `|`,
//! `->` (right-associative), `<->` (right-associative).

use crate::error::ParseError;
use crate::formula::{
    is_identifier, is_reserved_fo_word, FoFormula, IndVar, ModalFormula, PredSym, PropLetter, SoFormula,
};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Lower(String),
    Upper(String),
    Not,
    Box,
    Dia,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    Dot,
    Comma,
    Eq,
    Neq,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Lower(s) | Tok::Upper(s) => format!("`{s}`"),
            Tok::Not => "`~`".into(),
            Tok::Box => "`[]`".into(),
            Tok::Dia => "`<>`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Neq => "`!=`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let start = (line, column);
        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        let three: String = chars[i..(i + 3).min(chars.len())].iter().collect();
        let (tok, width) = if three == "<->" {
            (Tok::Iff, 3)
        } else if two == "->" {
            (Tok::Implies, 2)
        } else if two == "[]" {
            (Tok::Box, 2)
        } else if two == "<>" {
            (Tok::Dia, 2)
        } else if two == "!=" {
            (Tok::Neq, 2)
        } else if c.is_ascii_alphabetic() {
            let mut j = i + 1;
            while j < chars.len() && (chars[j].is_ascii_lowercase() || chars[j].is_ascii_digit() || chars[j] == '_') {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            let tok = if c.is_ascii_uppercase() { Tok::Upper(word) } else { Tok::Lower(word) };
            (tok, j - i)
        } else {
            let tok = match c {
                '~' => Tok::Not,
                '&' => Tok::And,
                '|' => Tok::Or,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '.' => Tok::Dot,
                ',' => Tok::Comma,
                '=' => Tok::Eq,
                _ => {
                    return Err(ParseError {
                        line,
                        column,
                        expected: vec!["a token".into()],
                        found: format!("`{c}`"),
                    })
                }
            };
            (tok, 1)
        };
        out.push(Spanned { tok, line: start.0, column: start.1 });
        i += width;
        column += width;
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        &self.toks[(self.pos + offset).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let here = &self.toks[self.pos];
        ParseError {
            line: here.line,
            column: here.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: here.tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error(&["`&`", "`|`", "`->`", "`<->`", "end of input"]))
        }
    }

    // ---- modal ----

    fn modal_iff(&mut self) -> Result<ModalFormula, ParseError> {
        let lhs = self.modal_implies()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.modal_iff()?;
            return Ok(ModalFormula::Iff(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn modal_implies(&mut self) -> Result<ModalFormula, ParseError> {
        let lhs = self.modal_or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.modal_implies()?;
            return Ok(ModalFormula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn modal_or(&mut self) -> Result<ModalFormula, ParseError> {
        let mut acc = self.modal_and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.modal_and()?;
            acc = ModalFormula::Or(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn modal_and(&mut self) -> Result<ModalFormula, ParseError> {
        let mut acc = self.modal_unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.modal_unary()?;
            acc = ModalFormula::And(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn modal_unary(&mut self) -> Result<ModalFormula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(ModalFormula::Not(Box::new(self.modal_unary()?)))
            }
            Tok::Box => {
                self.bump();
                Ok(ModalFormula::Box(Box::new(self.modal_unary()?)))
            }
            Tok::Dia => {
                self.bump();
                Ok(ModalFormula::Dia(Box::new(self.modal_unary()?)))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.modal_iff()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Lower(w) if w == "true" => {
                self.bump();
                Ok(ModalFormula::Top)
            }
            Tok::Lower(w) if w == "false" => {
                self.bump();
                Ok(ModalFormula::Bottom)
            }
            Tok::Lower(w) if is_identifier(&w) => {
                self.bump();
                Ok(ModalFormula::Prop(PropLetter::new(&w)))
            }
            _ => Err(self.error(&["proposition letter", "`true`", "`false`", "`~`", "`[]`", "`<>`", "`(`"])),
        }
    }

    // ---- first order ----

    fn fo_iff(&mut self) -> Result<FoFormula, ParseError> {
        let lhs = self.fo_implies()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.fo_iff()?;
            return Ok(FoFormula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn fo_implies(&mut self) -> Result<FoFormula, ParseError> {
        let lhs = self.fo_or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.fo_implies()?;
            return Ok(FoFormula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn fo_or(&mut self) -> Result<FoFormula, ParseError> {
        let first = self.fo_and()?;
        if *self.peek() != Tok::Or {
            return Ok(first);
        }
        let mut parts = vec![first];
        while *self.peek() == Tok::Or {
            self.bump();
            parts.push(self.fo_and()?);
        }
        Ok(FoFormula::Or(parts))
    }

    fn fo_and(&mut self) -> Result<FoFormula, ParseError> {
        let first = self.fo_unary()?;
        if *self.peek() != Tok::And {
            return Ok(first);
        }
        let mut parts = vec![first];
        while *self.peek() == Tok::And {
            self.bump();
            parts.push(self.fo_unary()?);
        }
        Ok(FoFormula::And(parts))
    }

    fn variable(&mut self) -> Result<IndVar, ParseError> {
        match self.peek().clone() {
            Tok::Lower(w) if !is_reserved_fo_word(&w) => {
                self.bump();
                Ok(IndVar::new(&w))
            }
            _ => Err(self.error(&["variable"])),
        }
    }

    fn fo_unary(&mut self) -> Result<FoFormula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(FoFormula::not(self.fo_unary()?))
            }
            Tok::Lower(w) if w == "all" || w == "exists" => {
                self.bump();
                let v = self.variable()?;
                self.expect(Tok::Dot, "`.`")?;
                let body = self.fo_unary()?;
                Ok(if w == "all" {
                    FoFormula::forall(&v, body)
                } else {
                    FoFormula::exists(&v, body)
                })
            }
            Tok::Lower(w) if w == "true" => {
                self.bump();
                Ok(FoFormula::True)
            }
            Tok::Lower(w) if w == "false" => {
                self.bump();
                Ok(FoFormula::False)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.fo_iff()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Upper(name) => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let a = self.variable()?;
                let atom = if name == "R" && *self.peek() == Tok::Comma {
                    self.bump();
                    let b = self.variable()?;
                    FoFormula::Rel(a, b)
                } else {
                    FoFormula::Pred(pred_from_display(&name), a)
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(atom)
            }
            Tok::Lower(_) => {
                let a = self.variable()?;
                match self.peek() {
                    Tok::Eq => {
                        self.bump();
                        Ok(FoFormula::Eq(a, self.variable()?))
                    }
                    Tok::Neq => {
                        self.bump();
                        Ok(FoFormula::neq(&a, &self.variable()?))
                    }
                    _ => Err(self.error(&["`=`", "`!=`"])),
                }
            }
            _ => Err(self.error(&["`all`", "`exists`", "`~`", "predicate", "variable", "`true`", "`false`", "`(`"])),
        }
    }

    fn so(&mut self) -> Result<SoFormula, ParseError> {
        let mut prefix = Vec::new();
        while matches!(self.peek(), Tok::Lower(w) if w == "all") && matches!(self.peek_at(1), Tok::Upper(_)) {
            self.bump();
            let Tok::Upper(name) = self.bump() else { unreachable!() };
            self.expect(Tok::Dot, "`.`")?;
            prefix.push(pred_from_display(&name));
        }
        let matrix = self.fo_iff()?;
        Ok(SoFormula { prefix, matrix })
    }
}

fn pred_from_display(name: &str) -> PredSym {
    let mut letter = name[..1].to_ascii_lowercase();
    letter.push_str(&name[1..]);
    PropLetter::new(&letter).pred()
}

/// Parses a modal formula.
pub fn parse_modal(text: &str) -> Result<ModalFormula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.modal_iff()?;
    p.finish()?;
    Ok(f)
}

/// Parses a first-order formula. `a != b` is read as `~(a = b)`; a one-place
/// atom `R(a)` is the predicate for letter `r`.
pub fn parse_fo(text: &str) -> Result<FoFormula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.fo_iff()?;
    p.finish()?;
    Ok(f)
}

/// Parses a second-order formula: a block of `all P.` binders over an FO matrix.
pub fn parse_so(text: &str) -> Result<SoFormula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.so()?;
    p.finish()?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::build::*;

    #[test]
    fn modal_precedence() {
        assert_eq!(
            parse_modal("p & <>p -> []p").unwrap(),
            implies(and(prop("p"), dia(prop("p"))), boxed(prop("p")))
        );
        assert_eq!(parse_modal("false").unwrap(), ModalFormula::Bottom);
        assert_eq!(parse_modal("[](p -> []q)").unwrap(), boxed(implies(prop("p"), boxed(prop("q")))));
        assert_eq!(
            parse_modal("p -> q -> r").unwrap(),
            implies(prop("p"), implies(prop("q"), prop("r")))
        );
        assert_eq!(parse_modal("p | q & r").unwrap(), or(prop("p"), and(prop("q"), prop("r"))));
        assert_eq!(parse_modal("p & q & r").unwrap(), and(and(prop("p"), prop("q")), prop("r")));
        assert_eq!(
            parse_modal("p <-> q -> r").unwrap(),
            iff(prop("p"), implies(prop("q"), prop("r")))
        );
        assert_eq!(parse_modal("~[]~p").unwrap(), not(boxed(not(prop("p")))));
    }

    #[test]
    fn modal_errors_carry_position() {
        let e = parse_modal("p &\n  & q").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.expected.iter().any(|s| s.contains("letter")));
        assert_eq!(e.found, "`&`");

        let e = parse_modal("(p").unwrap_err();
        assert_eq!(e.expected, vec!["`)`".to_string()]);
        assert_eq!(e.found, "end of input");

        assert!(parse_modal("p q").is_err());
        assert!(parse_modal("P").is_err());
        assert!(parse_modal("p # q").is_err());
    }

    #[test]
    fn first_order_atoms() {
        let x = IndVar::new("x");
        let y = IndVar::new("y");
        assert_eq!(parse_fo("R(x,y)").unwrap(), FoFormula::rel(&x, &y));
        assert_eq!(parse_fo("P(x)").unwrap(), FoFormula::pred(&PropLetter::new("p"), &x));
        assert_eq!(parse_fo("R(x)").unwrap(), FoFormula::pred(&PropLetter::new("r"), &x));
        assert_eq!(parse_fo("x != y").unwrap(), FoFormula::neq(&x, &y));
        assert_eq!(
            parse_fo("all y. ~R(x,y)").unwrap(),
            FoFormula::forall(&y, FoFormula::not(FoFormula::rel(&x, &y)))
        );
        assert_eq!(
            parse_fo("exists y. (R(x,y) & P(y))").unwrap(),
            FoFormula::exists(
                &y,
                FoFormula::And(vec![FoFormula::rel(&x, &y), FoFormula::pred(&PropLetter::new("p"), &y)])
            )
        );
        // quantifier binds at unary level
        assert!(matches!(parse_fo("all y. R(x,y) & x = x").unwrap(), FoFormula::And(_)));
    }

    #[test]
    fn second_order_prefix() {
        let f = parse_so("all P. all Q. P(x) -> Q(x)").unwrap();
        assert_eq!(f.prefix.len(), 2);
        assert_eq!(f.prefix[1].source().name(), "q");
        assert!(parse_so("R(x,x)").unwrap().prefix.is_empty());
    }
}
