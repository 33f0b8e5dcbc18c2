//! Printers producing the concrete syntax accepted by [`crate::parse`], with
//! the fewest parentheses the precedence rules allow.

use std::fmt::{self, Display, Formatter, Write};

use crate::formula::{FoFormula, ModalFormula, SoFormula};

const IFF: u8 = 1;
const IMPLIES: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

fn modal_level(f: &ModalFormula) -> u8 {
    match f {
        ModalFormula::Iff(..) => IFF,
        ModalFormula::Implies(..) => IMPLIES,
        ModalFormula::Or(..) => OR,
        ModalFormula::And(..) => AND,
        _ => UNARY,
    }
}

fn write_modal(out: &mut Formatter<'_>, f: &ModalFormula, min: u8) -> fmt::Result {
    use ModalFormula::*;
    let level = modal_level(f);
    if level < min {
        out.write_char('(')?;
        write_modal(out, f, 0)?;
        return out.write_char(')');
    }
    let binary = |out: &mut Formatter<'_>, a, op: &str, b, left_assoc: bool| {
        let (la, lb) = if left_assoc { (level, level + 1) } else { (level + 1, level) };
        write_modal(out, a, la)?;
        write!(out, " {op} ")?;
        write_modal(out, b, lb)
    };
    match f {
        Bottom => out.write_str("false"),
        Top => out.write_str("true"),
        Prop(p) => write!(out, "{p}"),
        Not(a) => {
            out.write_char('~')?;
            write_modal(out, a, UNARY)
        }
        Box(a) => {
            out.write_str("[]")?;
            write_modal(out, a, UNARY)
        }
        Dia(a) => {
            out.write_str("<>")?;
            write_modal(out, a, UNARY)
        }
        And(a, b) => binary(out, a, "&", b, true),
        Or(a, b) => binary(out, a, "|", b, true),
        Implies(a, b) => binary(out, a, "->", b, false),
        Iff(a, b) => binary(out, a, "<->", b, false),
    }
}

impl Display for ModalFormula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_modal(f, self, 0)
    }
}

fn fo_level(f: &FoFormula) -> u8 {
    match f {
        FoFormula::Iff(..) => IFF,
        FoFormula::Implies(..) => IMPLIES,
        FoFormula::Or(xs) if xs.len() >= 2 => OR,
        FoFormula::And(xs) if xs.len() >= 2 => AND,
        FoFormula::Or(xs) | FoFormula::And(xs) if xs.len() == 1 => fo_level(&xs[0]),
        _ => UNARY,
    }
}

fn write_fo(out: &mut Formatter<'_>, f: &FoFormula, min: u8) -> fmt::Result {
    use FoFormula::*;
    let level = fo_level(f);
    if level < min {
        out.write_char('(')?;
        write_fo(out, f, 0)?;
        return out.write_char(')');
    }
    match f {
        True => out.write_str("true"),
        False => out.write_str("false"),
        Eq(a, b) => write!(out, "{a} = {b}"),
        Rel(a, b) => write!(out, "R({a},{b})"),
        Pred(p, a) => write!(out, "{p}({a})"),
        Not(inner) => match inner.as_ref() {
            Eq(a, b) => write!(out, "{a} != {b}"),
            other => {
                out.write_char('~')?;
                write_fo(out, other, UNARY)
            }
        },
        And(xs) | Or(xs) => match xs.len() {
            0 => out.write_str(if matches!(f, And(_)) { "true" } else { "false" }),
            1 => write_fo(out, &xs[0], min),
            _ => {
                let op = if matches!(f, And(_)) { " & " } else { " | " };
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        out.write_str(op)?;
                    }
                    write_fo(out, x, level + 1)?;
                }
                Ok(())
            }
        },
        Implies(a, b) => {
            write_fo(out, a, level + 1)?;
            out.write_str(" -> ")?;
            write_fo(out, b, level)
        }
        Iff(a, b) => {
            write_fo(out, a, level + 1)?;
            out.write_str(" <-> ")?;
            write_fo(out, b, level)
        }
        Forall(v, body) => {
            write!(out, "all {v}. ")?;
            write_fo(out, body, UNARY)
        }
        Exists(v, body) => {
            write!(out, "exists {v}. ")?;
            write_fo(out, body, UNARY)
        }
    }
}

impl Display for FoFormula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_fo(f, self, 0)
    }
}

impl Display for SoFormula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.prefix.is_empty() {
            return write_fo(f, &self.matrix, 0);
        }
        for p in &self.prefix {
            write!(f, "all {p}. ")?;
        }
        write_fo(f, &self.matrix, UNARY)
    }
}

pub fn print_modal(f: &ModalFormula) -> String {
    f.to_string()
}

pub fn print_fo(f: &FoFormula) -> String {
    f.to_string()
}

pub fn print_so(f: &SoFormula) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::build::*;
    use crate::formula::{IndVar, PropLetter};
    use crate::parse::{parse_fo, parse_modal, parse_so};

    #[test]
    fn modal_examples() {
        assert_eq!(print_modal(&boxed(ModalFormula::Bottom)), "[]false");
        assert_eq!(print_modal(&implies(prop("p"), dia(prop("p")))), "p -> <>p");
        assert_eq!(print_modal(&dia(boxed(prop("p")))), "<>[]p");
        assert_eq!(
            print_modal(&implies(implies(prop("p"), prop("q")), prop("r"))),
            "(p -> q) -> r"
        );
        assert_eq!(print_modal(&and(prop("p"), and(prop("q"), prop("r")))), "p & (q & r)");
        assert_eq!(print_modal(&and(and(prop("p"), prop("q")), prop("r"))), "p & q & r");
        assert_eq!(print_modal(&not(and(prop("p"), prop("q")))), "~(p & q)");
        assert_eq!(print_modal(&boxed(implies(prop("p"), boxes(2, prop("q"))))), "[](p -> [][]q)");
    }

    #[test]
    fn fo_examples() {
        let x = IndVar::new("x");
        let y = IndVar::new("y");
        let p = PropLetter::new("p");
        assert_eq!(
            print_fo(&FoFormula::forall(&y, FoFormula::not(FoFormula::rel(&x, &y)))),
            "all y. ~R(x,y)"
        );
        assert_eq!(print_fo(&FoFormula::eq(&x, &x)), "x = x");
        assert_eq!(print_fo(&FoFormula::neq(&x, &x)), "x != x");
        let ex = FoFormula::exists(&y, FoFormula::and(vec![FoFormula::rel(&x, &y), FoFormula::pred(&p, &y)]));
        assert_eq!(print_fo(&ex), "exists y. (R(x,y) & P(y))");
        let nested = FoFormula::And(vec![FoFormula::rel(&x, &y), FoFormula::Or(vec![FoFormula::True, FoFormula::False])]);
        assert_eq!(print_fo(&nested), "R(x,y) & (true | false)");
    }

    #[test]
    fn round_trips() {
        for text in [
            "p & <>p -> []p",
            "<>[]p & []q -> []<>(p & q)",
            "(p <-> q) <-> r",
            "~~p | ~[]~<>q",
            "p -> (q -> r) -> s",
        ] {
            let f = parse_modal(text).unwrap();
            assert_eq!(parse_modal(&print_modal(&f)).unwrap(), f, "{text}");
        }
        for text in [
            "all y. (R(x,y) -> exists z. (R(y,z) & z != z))",
            "x = y | R(x,y) & P(y)",
            "~~(x = x) <-> (true -> false)",
        ] {
            let f = parse_fo(text).unwrap();
            assert_eq!(parse_fo(&print_fo(&f)).unwrap(), f, "{text}");
        }
        let so = parse_so("all P. (P(x) -> exists y. (R(x,y) & P(y)))").unwrap();
        assert_eq!(print_so(&so), "all P. (P(x) -> exists y. (R(x,y) & P(y)))");
    }
}
