//! The standard translation into first-order logic and its second-order
//! closure.

use crate::formula::{FoFormula, IndVar, ModalFormula, Origin, SoFormula, VarSupply};

/// `ST_x(f)` with fresh `y` variables drawn from a private supply.
pub fn standard_translation(x: &IndVar, f: &ModalFormula) -> FoFormula {
    standard_translation_with(x, f, &mut VarSupply::new())
}

/// `ST_x(f)` drawing fresh variables from `supply`, so the caller can keep
/// names unique across several translations.
pub fn standard_translation_with(x: &IndVar, f: &ModalFormula, supply: &mut VarSupply) -> FoFormula {
    use ModalFormula::*;
    match f {
        Bottom => FoFormula::neq(x, x),
        Top => FoFormula::eq(x, x),
        Prop(p) => FoFormula::pred(p, x),
        Not(a) => FoFormula::not(standard_translation_with(x, a, supply)),
        And(a, b) => {
            let a = standard_translation_with(x, a, supply);
            FoFormula::and(vec![a, standard_translation_with(x, b, supply)])
        }
        Or(a, b) => {
            let a = standard_translation_with(x, a, supply);
            FoFormula::or(vec![a, standard_translation_with(x, b, supply)])
        }
        Implies(a, b) => {
            let a = standard_translation_with(x, a, supply);
            FoFormula::implies(a, standard_translation_with(x, b, supply))
        }
        Iff(a, b) => {
            let a = standard_translation_with(x, a, supply);
            FoFormula::iff(a, standard_translation_with(x, b, supply))
        }
        Box(a) => {
            let y = supply.fresh(Origin::Translation);
            let body = standard_translation_with(&y, a, supply);
            FoFormula::forall(&y, FoFormula::implies(FoFormula::rel(x, &y), body))
        }
        Dia(a) => {
            let y = supply.fresh(Origin::Translation);
            let body = standard_translation_with(&y, a, supply);
            FoFormula::exists(&y, FoFormula::and(vec![FoFormula::rel(x, &y), body]))
        }
    }
}

/// `∀P̄ ST_x(f)`, with the prefix in first-occurrence order of the letters.
pub fn second_order_translation(f: &ModalFormula) -> SoFormula {
    SoFormula {
        prefix: f.prop_letters().iter().map(|p| p.pred()).collect(),
        matrix: standard_translation(&IndVar::source(), f),
    }
}
