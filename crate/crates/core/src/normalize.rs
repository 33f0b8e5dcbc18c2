//! Rewrites into negation normal form, negated-antecedent implications,
//! conjunctions of definite implications, and uniform-letter elimination.

use std::collections::BTreeMap;

use crate::classify::{decompose_antecedent, is_positive_formula, polarity_map, Decomposition, DependencyDigraph, Polarity, Skeleton};
use crate::error::{Error, Result};
use crate::formula::{build::*, ModalFormula, PropLetter};

/// Default limit on the number of definite conjuncts produced by distribution.
pub const DEFAULT_CONJUNCT_CAP: usize = 256;

/// Negation normal form: negation only on letters, no `→` or `↔`.
pub fn nnf(f: &ModalFormula) -> ModalFormula {
    nnf_signed(f, false)
}

fn nnf_signed(f: &ModalFormula, negated: bool) -> ModalFormula {
    use ModalFormula::*;
    match (f, negated) {
        (Bottom, false) | (Top, true) => Bottom,
        (Top, false) | (Bottom, true) => Top,
        (Prop(p), false) => Prop(p.clone()),
        (Prop(p), true) => not(Prop(p.clone())),
        (Not(a), s) => nnf_signed(a, !s),
        (And(a, b), false) => and(nnf_signed(a, false), nnf_signed(b, false)),
        (And(a, b), true) => or(nnf_signed(a, true), nnf_signed(b, true)),
        (Or(a, b), false) => or(nnf_signed(a, false), nnf_signed(b, false)),
        (Or(a, b), true) => and(nnf_signed(a, true), nnf_signed(b, true)),
        (Implies(a, b), false) => or(nnf_signed(a, true), nnf_signed(b, false)),
        (Implies(a, b), true) => and(nnf_signed(a, false), nnf_signed(b, true)),
        (Iff(a, b), false) => and(
            or(nnf_signed(a, true), nnf_signed(b, false)),
            or(nnf_signed(b, true), nnf_signed(a, false)),
        ),
        (Iff(a, b), true) => or(
            and(nnf_signed(a, false), nnf_signed(b, true)),
            and(nnf_signed(b, false), nnf_signed(a, true)),
        ),
        (Box(a), false) => boxed(nnf_signed(a, false)),
        (Box(a), true) => dia(nnf_signed(a, true)),
        (Dia(a), false) => dia(nnf_signed(a, false)),
        (Dia(a), true) => boxed(nnf_signed(a, true)),
    }
}

fn antecedent_shaped(f: &ModalFormula) -> bool {
    decompose_antecedent(f).is_ok()
}

/// A formula equivalent to `¬f`, built by importing the negation through
/// boxes, conjunctions, disjunctions and implications. Subformulas that are
/// already antecedents are kept verbatim so their box-formulas stay intact.
fn negate(f: &ModalFormula) -> ModalFormula {
    use ModalFormula::*;
    match f {
        Implies(a, b) => {
            let a = if antecedent_shaped(a) { (**a).clone() } else { nnf(a) };
            match nnf_signed(b, true) {
                Top => a,
                nb => and(a, nb),
            }
        }
        Box(g) => dia(negate(g)),
        And(a, b) => or(negate(a), negate(b)),
        Or(a, b) => and(negate(a), negate(b)),
        Not(g) if antecedent_shaped(g) => (**g).clone(),
        _ => nnf_signed(f, true),
    }
}

/// For `f` built from implications by `□`, `∧`, `∨`: an antecedent `φ'`
/// with `f ≡ φ' → ⊥`. Fails unless `φ'` decomposes with an acyclic
/// dependency digraph.
pub fn negate_to_antecedent(f: &ModalFormula) -> Result<ModalFormula> {
    let neg = negate(f);
    let d = decompose_antecedent(&neg).map_err(|_| Error::NotInClass(format!("negation of `{f}` is not an antecedent")))?;
    if !DependencyDigraph::from_box_formulas(d.chis().map(|(_, c)| c)).is_acyclic() {
        return Err(Error::NotInClass(format!("negation of `{f}` has a cyclic dependency digraph")));
    }
    Ok(neg)
}

/// Splits an implication into definite implications by distributing `◇`
/// and `∧` over `∨` in the antecedent skeleton. Disjunctions inside
/// negative subformulas are left alone. Duplicates are removed, keeping
/// first occurrences.
pub fn to_definite_implications(imp: &ModalFormula) -> Result<Vec<ModalFormula>> {
    let ModalFormula::Implies(a, c) = imp else {
        return Err(Error::NotInClass(format!("`{imp}` is not an implication")));
    };
    if !is_positive_formula(c) {
        return Err(Error::NotInClass(format!("consequent `{c}` is not positive")));
    }
    let d = decompose_antecedent(a).map_err(|_| Error::NotInClass(format!("antecedent `{a}` does not decompose")))?;
    to_definite_implications_with(imp, &d, DEFAULT_CONJUNCT_CAP)
}

/// As [`to_definite_implications`], given the antecedent's decomposition
/// and an explicit conjunct cap.
pub fn to_definite_implications_with(imp: &ModalFormula, d: &Decomposition, cap: usize) -> Result<Vec<ModalFormula>> {
    let ModalFormula::Implies(_, c) = imp else {
        return Err(Error::NotInClass(format!("`{imp}` is not an implication")));
    };
    let branches = disjuncts(&d.skeleton, cap)?;
    let mut out: Vec<ModalFormula> = Vec::with_capacity(branches.len());
    for s in branches {
        let f = implies(s.assemble(&|i| d.slots[i].formula.clone()), (**c).clone());
        if !out.contains(&f) {
            out.push(f);
        }
    }
    Ok(out)
}

fn disjuncts(s: &Skeleton, cap: usize) -> Result<Vec<Skeleton>> {
    let out = match s {
        Skeleton::Slot(_) => vec![s.clone()],
        Skeleton::Or(a, b) => {
            let mut l = disjuncts(a, cap)?;
            l.extend(disjuncts(b, cap)?);
            l
        }
        Skeleton::Dia(a) => disjuncts(a, cap)?.into_iter().map(|x| Skeleton::Dia(Box::new(x))).collect(),
        Skeleton::And(a, b) => {
            let (l, r) = (disjuncts(a, cap)?, disjuncts(b, cap)?);
            if l.len().saturating_mul(r.len()) > cap {
                return Err(Error::ConjunctCap { cap });
            }
            l.iter()
                .flat_map(|x| r.iter().map(move |y| Skeleton::And(Box::new(x.clone()), Box::new(y.clone()))))
                .collect()
        }
    };
    if out.len() > cap {
        return Err(Error::ConjunctCap { cap });
    }
    Ok(out)
}

/// Replaces every letter occurring only positively by `⊥` and every letter
/// occurring only negatively by `⊤`. Returns the rewritten formula and the
/// substitution used. Frame validity is preserved; truth under a fixed
/// valuation is not.
pub fn eliminate_uniform_variables(f: &ModalFormula) -> (ModalFormula, BTreeMap<PropLetter, ModalFormula>) {
    let s: BTreeMap<PropLetter, ModalFormula> = polarity_map(f)
        .into_iter()
        .filter_map(|(p, pol)| match pol {
            Polarity::Positive => Some((p, ModalFormula::Bottom)),
            Polarity::Negative => Some((p, ModalFormula::Top)),
            _ => None,
        })
        .collect();
    if s.is_empty() {
        return (f.clone(), s);
    }
    (f.substitute(&s), s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_modal;

    fn m(s: &str) -> ModalFormula {
        parse_modal(s).unwrap()
    }

    #[test]
    fn nnf_examples() {
        assert_eq!(nnf(&m("~(p | q)")), m("~p & ~q"));
        assert_eq!(nnf(&m("~[]p")), m("<>~p"));
        assert_eq!(nnf(&m("~(p & <>q -> []r)")), m("p & <>q & <>~r"));
        assert_eq!(nnf(&m("~true | ~~false")), m("false | false"));
    }

    #[test]
    fn negated_antecedents() {
        // (α → Pos) ↦ α ∧ nnf(¬Pos)
        assert_eq!(negate_to_antecedent(&m("p & []q -> <>q")).unwrap(), m("p & []q & []~q"));
        // □(α → Pos) ↦ ◇(α ∧ nnf(¬Pos))
        assert_eq!(negate_to_antecedent(&m("[]([]p -> p)")).unwrap(), m("<>([]p & ~p)"));
        // (α → ⊥) ∧ (β → ⊥) ↦ α ∨ β
        assert_eq!(negate_to_antecedent(&m("([]p -> false) & (p -> false)")).unwrap(), m("[]p | p"));
        assert!(negate_to_antecedent(&m("[]<>p -> <>[]p")).is_err());
    }

    #[test]
    fn definite_split() {
        let parts = to_definite_implications(&m("[]p | p -> <>p")).unwrap();
        assert_eq!(parts, vec![m("[]p -> <>p"), m("p -> <>p")]);
        let parts = to_definite_implications(&m("<>([]p | p) -> <>p")).unwrap();
        assert_eq!(parts, vec![m("<>[]p -> <>p"), m("<>p -> <>p")]);
        let single = m("p & <>p -> []p");
        assert_eq!(to_definite_implications(&single).unwrap(), vec![single]);
        // γ slots keep their disjunctions
        let g = m("(~q | ~p) & p -> <>p");
        assert_eq!(to_definite_implications(&g).unwrap(), vec![g]);
        // duplicates collapse
        assert_eq!(to_definite_implications(&m("p | p -> p")).unwrap(), vec![m("p -> p")]);
        assert!(to_definite_implications(&m("[]<>p -> p")).is_err());
    }

    #[test]
    fn conjunct_cap() {
        let wide = m("(p | q) & (p | q) & (p | q) & (p | q) & (p | q) & (p | q) & (p | q) & (p | q) & (p | q) -> p");
        let d = decompose_antecedent(match &wide {
            ModalFormula::Implies(a, _) => a,
            _ => unreachable!(),
        })
        .unwrap();
        assert!(matches!(to_definite_implications_with(&wide, &d, 256), Err(Error::ConjunctCap { cap: 256 })));
        assert_eq!(to_definite_implications_with(&wide, &d, 512).unwrap().len(), 512);
    }

    #[test]
    fn uniform_elimination() {
        let (g, s) = eliminate_uniform_variables(&m("[]<>p"));
        assert_eq!(g, m("[]<>false"));
        assert_eq!(s[&PropLetter::new("p")], ModalFormula::Bottom);
        let f = m("p -> <>p");
        assert_eq!(eliminate_uniform_variables(&f), (f, BTreeMap::new()));
        let (g, s) = eliminate_uniform_variables(&m("~q & p -> <>p"));
        assert_eq!(g, m("~false & p -> <>p"));
        assert_eq!(s.len(), 1);
        let (g, _) = eliminate_uniform_variables(&m("q -> []<>p | ~p"));
        assert_eq!(g, m("true -> []<>p | ~p"));
    }
}
