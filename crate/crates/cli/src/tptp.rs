//! TPTP FOF emission. The designated free variable becomes a constant and
//! bound variables are upper-cased.

use sahl_core::{FoFormula, IndVar};

fn var(v: &IndVar, free: &IndVar, bound: &[&IndVar]) -> String {
    if v == free && !bound.contains(&v) {
        return v.name().to_lowercase();
    }
    let mut cs = v.name().chars();
    let first = cs.next().unwrap().to_ascii_uppercase();
    format!("{first}{}", cs.as_str())
}

fn term<'a>(f: &'a FoFormula, free: &IndVar, bound: &mut Vec<&'a IndVar>) -> String {
    match f {
        FoFormula::True => "$true".into(),
        FoFormula::False => "$false".into(),
        FoFormula::Eq(a, b) => format!("{} = {}", var(a, free, bound), var(b, free, bound)),
        FoFormula::Rel(a, b) => format!("r({},{})", var(a, free, bound), var(b, free, bound)),
        FoFormula::Pred(p, a) => format!("{}({})", p.source().name().to_lowercase(), var(a, free, bound)),
        FoFormula::Not(inner) => match inner.as_ref() {
            FoFormula::Eq(a, b) => format!("{} != {}", var(a, free, bound), var(b, free, bound)),
            other => format!("~ ({})", term(other, free, bound)),
        },
        FoFormula::And(xs) | FoFormula::Or(xs) => {
            let op = if matches!(f, FoFormula::And(_)) { " & " } else { " | " };
            match xs.len() {
                0 => if matches!(f, FoFormula::And(_)) { "$true" } else { "$false" }.into(),
                _ => {
                    let parts: Vec<String> = xs.iter().map(|x| format!("({})", term(x, free, bound))).collect();
                    parts.join(op)
                }
            }
        }
        FoFormula::Implies(a, b) => format!("({}) => ({})", term(a, free, bound), term(b, free, bound)),
        FoFormula::Iff(a, b) => format!("({}) <=> ({})", term(a, free, bound), term(b, free, bound)),
        FoFormula::Forall(v, body) | FoFormula::Exists(v, body) => {
            let q = if matches!(f, FoFormula::Forall(..)) { "!" } else { "?" };
            bound.push(v);
            let s = format!("{q}[{}] : ({})", var(v, free, bound), term(body, free, bound));
            bound.pop();
            s
        }
    }
}

/// One `fof(corr, conjecture, …)` unit for `f`, with `free` as a constant.
pub fn fof_unit(f: &FoFormula, free: &IndVar) -> String {
    format!("fof(corr, conjecture, {}).", term(f, free, &mut Vec::new()))
}
