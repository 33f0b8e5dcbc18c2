//! Equivalence-preserving simplification of first-order formulas.
//!
//! Rules are tried at each node in the order of [`RULES`], children before
//! parents, and whole-tree passes repeat until nothing changes. Every rule
//! shrinks the formula, so this terminates, and the result is a fixed point,
//! so [`simplify`] is idempotent.

use crate::formula::{FoFormula, IndVar};

pub use crate::semantics::{equivalent_on_small_frames, Equivalence};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Merge nested `∧`/`∨`; collapse 0- and 1-ary `∧`/`∨`.
    Flatten,
    /// `t = t ↦ ⊤`, `¬⊤ ↦ ⊥`, `¬⊥ ↦ ⊤`.
    ConstantFold,
    /// Unit and zero laws for `∧`, `∨`, `→`, `↔`.
    Units,
    /// `¬¬a ↦ a`.
    DoubleNegation,
    /// Drop repeated `∧`/`∨` children.
    Idempotence,
    /// `∀y a ↦ a` and `∃y a ↦ a` when `y` is not free in `a`.
    VacuousQuantifier,
    /// `∃y(y = t ∧ a) ↦ a[t/y]` and `∀y(y = t ∧ b → a) ↦ (b → a)[t/y]`.
    OnePoint,
}

pub const RULES: [Rule; 7] = [
    Rule::Flatten,
    Rule::ConstantFold,
    Rule::Units,
    Rule::DoubleNegation,
    Rule::Idempotence,
    Rule::VacuousQuantifier,
    Rule::OnePoint,
];

/// Applies `rule` at the root of `f`, if it matches.
pub fn apply_rule(rule: Rule, f: &FoFormula) -> Option<FoFormula> {
    use FoFormula::*;
    match rule {
        Rule::Flatten => match f {
            And(xs) | Or(xs) => {
                let is_and = matches!(f, And(_));
                let nested = xs.iter().any(|x| if is_and { matches!(x, And(_)) } else { matches!(x, Or(_)) });
                if !nested && xs.len() >= 2 {
                    return None;
                }
                Some(if is_and { FoFormula::and(xs.clone()) } else { FoFormula::or(xs.clone()) })
            }
            _ => None,
        },
        Rule::ConstantFold => match f {
            Eq(a, b) if a == b => Some(True),
            Not(a) if **a == True => Some(False),
            Not(a) if **a == False => Some(True),
            _ => None,
        },
        Rule::Units => units(f),
        Rule::DoubleNegation => match f {
            Not(a) => match a.as_ref() {
                Not(b) => Some((**b).clone()),
                _ => None,
            },
            _ => None,
        },
        Rule::Idempotence => match f {
            And(xs) | Or(xs) => {
                let mut kept: Vec<FoFormula> = Vec::with_capacity(xs.len());
                for x in xs {
                    if !kept.contains(x) {
                        kept.push(x.clone());
                    }
                }
                if kept.len() == xs.len() {
                    return None;
                }
                Some(if matches!(f, And(_)) { FoFormula::and(kept) } else { FoFormula::or(kept) })
            }
            _ => None,
        },
        Rule::VacuousQuantifier => match f {
            Forall(v, body) | Exists(v, body) if !body.has_free(v) => Some((**body).clone()),
            _ => None,
        },
        Rule::OnePoint => one_point(f),
    }
}

fn units(f: &FoFormula) -> Option<FoFormula> {
    use FoFormula::*;
    match f {
        And(xs) => {
            if xs.contains(&False) {
                return Some(False);
            }
            if xs.contains(&True) {
                return Some(FoFormula::and(xs.iter().filter(|x| **x != True).cloned().collect()));
            }
            None
        }
        Or(xs) => {
            if xs.contains(&True) {
                return Some(True);
            }
            if xs.contains(&False) {
                return Some(FoFormula::or(xs.iter().filter(|x| **x != False).cloned().collect()));
            }
            None
        }
        Implies(a, b) => match (a.as_ref(), b.as_ref()) {
            (False, _) | (_, True) => Some(True),
            (True, b) => Some(b.clone()),
            (a, False) => Some(FoFormula::not(a.clone())),
            _ => None,
        },
        Iff(a, b) => match (a.as_ref(), b.as_ref()) {
            (True, x) | (x, True) => Some(x.clone()),
            (False, x) | (x, False) => Some(FoFormula::not(x.clone())),
            _ => None,
        },
        _ => None,
    }
}

/// The term `t` if `c` is `y = t` or `t = y` with `t ≠ y`.
fn equation_for(y: &IndVar, c: &FoFormula) -> Option<IndVar> {
    match c {
        FoFormula::Eq(a, b) if a == y && b != y => Some(b.clone()),
        FoFormula::Eq(a, b) if b == y && a != y => Some(a.clone()),
        _ => None,
    }
}

/// Finds a conjunct `y = t` usable for substitution in `scope`, returning its
/// index (within `conjuncts`) and `t`. `t` must not be bound anywhere in
/// `scope` or by the enclosing `block`, so substituting it cannot be captured.
fn find_equation(y: &IndVar, conjuncts: &[FoFormula], scope: &FoFormula, block: &[IndVar]) -> Option<(usize, IndVar)> {
    let bound = scope.bound_vars();
    conjuncts.iter().enumerate().find_map(|(i, c)| {
        equation_for(y, c)
            .filter(|t| !bound.contains(t) && !block.contains(t))
            .map(|t| (i, t))
    })
}

fn as_conjuncts(f: &FoFormula) -> Vec<FoFormula> {
    match f {
        FoFormula::And(xs) => xs.clone(),
        other => vec![other.clone()],
    }
}

/// One-point elimination of the outermost variable of a block of quantifiers
/// of the same kind, e.g. `∀y∀z(y = t ∧ a → b) ↦ ∀z(a → b)[t/y]`. Blocks of
/// one kind commute, so the equation may sit below later binders.
fn one_point(f: &FoFormula) -> Option<FoFormula> {
    let (universal, y, body) = match f {
        FoFormula::Forall(y, b) => (true, y, b.as_ref()),
        FoFormula::Exists(y, b) => (false, y, b.as_ref()),
        _ => return None,
    };
    let mut block: Vec<IndVar> = Vec::new();
    let mut core = body;
    loop {
        match core {
            FoFormula::Forall(v, b) if universal => {
                block.push(v.clone());
                core = b;
            }
            FoFormula::Exists(v, b) if !universal => {
                block.push(v.clone());
                core = b;
            }
            _ => break,
        }
    }
    if block.contains(y) {
        return None;
    }
    let reduced = if universal {
        let FoFormula::Implies(a, b) = core else { return None };
        let cs = as_conjuncts(a);
        let (i, t) = find_equation(y, &cs, core, &block)?;
        let mut rest = cs;
        rest.remove(i);
        let r = if rest.is_empty() {
            (**b).clone()
        } else {
            FoFormula::implies(FoFormula::and(rest), (**b).clone())
        };
        r.rename_free(y, &t)
    } else {
        let cs = as_conjuncts(core);
        let (i, t) = find_equation(y, &cs, core, &block)?;
        let mut rest = cs;
        rest.remove(i);
        FoFormula::and(rest).rename_free(y, &t)
    };
    Some(block.iter().rev().fold(reduced, |acc, v| {
        if universal {
            FoFormula::forall(v, acc)
        } else {
            FoFormula::exists(v, acc)
        }
    }))
}

fn rewrite_root(mut f: FoFormula) -> FoFormula {
    'outer: loop {
        for rule in RULES {
            if let Some(g) = apply_rule(rule, &f) {
                f = g;
                continue 'outer;
            }
        }
        return f;
    }
}

fn pass(f: &FoFormula) -> FoFormula {
    use FoFormula::*;
    let rebuilt = match f {
        True | False | Eq(..) | Rel(..) | Pred(..) => f.clone(),
        Not(a) => Not(Box::new(pass(a))),
        And(xs) => And(xs.iter().map(pass).collect()),
        Or(xs) => Or(xs.iter().map(pass).collect()),
        Implies(a, b) => Implies(Box::new(pass(a)), Box::new(pass(b))),
        Iff(a, b) => Iff(Box::new(pass(a)), Box::new(pass(b))),
        Forall(v, b) => Forall(v.clone(), Box::new(pass(b))),
        Exists(v, b) => Exists(v.clone(), Box::new(pass(b))),
    };
    rewrite_root(rebuilt)
}

/// Rewrites `f` to a fixed point of all rules.
pub fn simplify(f: &FoFormula) -> FoFormula {
    let mut cur = f.clone();
    loop {
        let next = pass(&cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_fo;

    fn fo(s: &str) -> FoFormula {
        parse_fo(s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(simplify(&fo("all y. (R(x,y) -> exists z. (R(y,z) & z != z))")), fo("all y. ~R(x,y)"));
        assert_eq!(simplify(&fo("exists u. (R(x,u) & R(z2,x) & u = x)")), fo("R(x,x) & R(z2,x)"));
        assert_eq!(simplify(&fo("R(x,x) & true")), fo("R(x,x)"));
    }

    #[test]
    fn universal_one_point() {
        assert_eq!(simplify(&fo("all y. (y = x -> R(y,y))")), fo("R(x,x)"));
        assert_eq!(simplify(&fo("all y. (R(x,y) & x = y -> P(y))")), fo("R(x,x) -> P(x)"));
    }

    #[test]
    fn one_point_through_blocks() {
        assert_eq!(
            simplify(&fo("all z0. all z1. (x = z0 & R(z1,z0) -> R(z0,z1))")),
            fo("all z1. (R(z1,x) -> R(x,z1))")
        );
        assert_eq!(simplify(&fo("exists v0. exists v1. (z1 = v0 & R(v0,v1))")), fo("exists v1. R(z1,v1)"));
        // the equation's term is bound by the block itself
        assert_eq!(apply_rule(Rule::OnePoint, &fo("all y. all u. (y = u -> R(y,u))")), None);
    }

    #[test]
    fn one_point_avoids_capture() {
        // substituting u for y under a binder of u would capture it
        let f = fo("exists y. (y = u & exists u. R(y,u))");
        assert_eq!(apply_rule(Rule::OnePoint, &f), None);
        // shadowed occurrences stay put
        let g = fo("exists y. (y = x & R(y,y) & all y. R(y,x))");
        assert_eq!(apply_rule(Rule::OnePoint, &g), Some(fo("R(x,x) & all y. R(y,x)")));
        let h = fo("exists y. (y = x & R(y,y) & all v. R(v,x))");
        assert_eq!(apply_rule(Rule::OnePoint, &h), Some(fo("R(x,x) & all v. R(v,x)")));
    }

    #[test]
    fn individual_rules() {
        assert_eq!(apply_rule(Rule::ConstantFold, &fo("x = x")), Some(FoFormula::True));
        assert_eq!(simplify(&fo("x != x")), FoFormula::False);
        assert_eq!(apply_rule(Rule::Units, &fo("R(x,x) -> false")), Some(fo("~R(x,x)")));
        assert_eq!(apply_rule(Rule::Units, &fo("false | R(x,x)")), Some(fo("R(x,x)")));
        assert_eq!(apply_rule(Rule::DoubleNegation, &fo("~~R(x,x)")), Some(fo("R(x,x)")));
        assert_eq!(apply_rule(Rule::Idempotence, &fo("R(x,x) | R(x,x)")), Some(fo("R(x,x)")));
        assert_eq!(apply_rule(Rule::VacuousQuantifier, &fo("all y. R(x,x)")), Some(fo("R(x,x)")));
        assert_eq!(apply_rule(Rule::VacuousQuantifier, &fo("all y. R(x,y)")), None);
        let nested = FoFormula::And(vec![fo("R(x,x)"), FoFormula::And(vec![fo("x = x"), fo("P(x)")])]);
        assert_eq!(apply_rule(Rule::Flatten, &nested), Some(fo("R(x,x) & x = x & P(x)")));
    }

    #[test]
    fn idempotent_on_examples() {
        for s in [
            "all z0. all z1. ((x = z0 | x = z1) & exists y0. (R(x,y0) & (y0 = z0 | y0 = z1)) -> all y1. (R(x,y1) -> y1 = z0 | y1 = z1))",
            "exists y. (R(x,y) & ~~(y = y | false))",
        ] {
            let once = simplify(&fo(s));
            assert_eq!(simplify(&once), once);
        }
    }
}
