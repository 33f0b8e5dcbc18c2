//! Syntax trees for the modal object language and the first/second-order
//! correspondence language, plus basic structural queries.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

/// A proposition letter. Equality and order are by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropLetter(Arc<str>);

impl PropLetter {
    /// Creates a letter. Panics if `name` is not of the form `[a-z][a-z0-9_]*`.
    pub fn new(name: &str) -> Self {
        assert!(
            is_identifier(name) && !matches!(name, "true" | "false"),
            "proposition letter `{name}` must match [a-z][a-z0-9_]* and not be a constant"
        );
        PropLetter(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// The unary predicate symbol this letter translates to.
    pub fn pred(&self) -> PredSym {
        PredSym(self.clone())
    }
}

impl fmt::Debug for PropLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for PropLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for PropLetter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
}

pub(crate) fn is_reserved_fo_word(name: &str) -> bool {
    matches!(name, "all" | "exists" | "true" | "false")
}

/// Formulas of the basic modal language.
///
/// `Top`, `And`, `Implies`, `Iff` and `Box` are kept as first-class nodes so
/// that class membership can be decided on surface syntax; [`desugar`]
/// rewrites them into the primitive basis `{⊥, p, ¬, ∨, ◇}`.
///
/// [`desugar`]: ModalFormula::desugar
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ModalFormula {
    Bottom,
    Top,
    Prop(PropLetter),
    Not(Box<ModalFormula>),
    And(Box<ModalFormula>, Box<ModalFormula>),
    Or(Box<ModalFormula>, Box<ModalFormula>),
    Implies(Box<ModalFormula>, Box<ModalFormula>),
    Iff(Box<ModalFormula>, Box<ModalFormula>),
    Box(Box<ModalFormula>),
    Dia(Box<ModalFormula>),
}

impl fmt::Debug for ModalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ModalFormula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Short constructors, mostly for tests and builders.
pub mod build {
    use super::{ModalFormula, PropLetter};

    pub fn prop(name: &str) -> ModalFormula {
        ModalFormula::Prop(PropLetter::new(name))
    }
    pub fn not(f: ModalFormula) -> ModalFormula {
        ModalFormula::Not(Box::new(f))
    }
    pub fn and(a: ModalFormula, b: ModalFormula) -> ModalFormula {
        ModalFormula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: ModalFormula, b: ModalFormula) -> ModalFormula {
        ModalFormula::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: ModalFormula, b: ModalFormula) -> ModalFormula {
        ModalFormula::Implies(Box::new(a), Box::new(b))
    }
    pub fn iff(a: ModalFormula, b: ModalFormula) -> ModalFormula {
        ModalFormula::Iff(Box::new(a), Box::new(b))
    }
    pub fn boxed(f: ModalFormula) -> ModalFormula {
        ModalFormula::Box(Box::new(f))
    }
    pub fn dia(f: ModalFormula) -> ModalFormula {
        ModalFormula::Dia(Box::new(f))
    }
    /// `□^k f`
    pub fn boxes(k: usize, f: ModalFormula) -> ModalFormula {
        (0..k).fold(f, |acc, _| boxed(acc))
    }
}

impl ModalFormula {
    /// Maximum nesting of modal operators (both `□` and `◇`).
    pub fn modal_depth(&self) -> usize {
        use ModalFormula::*;
        match self {
            Bottom | Top | Prop(_) => 0,
            Not(a) => a.modal_depth(),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => a.modal_depth().max(b.modal_depth()),
            Box(a) | Dia(a) => 1 + a.modal_depth(),
        }
    }

    /// Letters in order of first occurrence (left to right).
    pub fn prop_letters(&self) -> Vec<PropLetter> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.visit_letters(&mut |p| {
            if seen.insert(p.clone()) {
                out.push(p.clone());
            }
        });
        out
    }

    fn visit_letters(&self, visit: &mut impl FnMut(&PropLetter)) {
        use ModalFormula::*;
        match self {
            Bottom | Top => {}
            Prop(p) => visit(p),
            Not(a) | Box(a) | Dia(a) => a.visit_letters(visit),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                a.visit_letters(visit);
                b.visit_letters(visit);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.prop_letters().is_empty()
    }

    /// Simultaneous substitution of formulas for letters.
    pub fn substitute(&self, s: &BTreeMap<PropLetter, ModalFormula>) -> ModalFormula {
        use ModalFormula::*;
        let sub = |a: &ModalFormula| std::boxed::Box::new(a.substitute(s));
        match self {
            Bottom => Bottom,
            Top => Top,
            Prop(p) => s.get(p).cloned().unwrap_or_else(|| Prop(p.clone())),
            Not(a) => Not(sub(a)),
            And(a, b) => And(sub(a), sub(b)),
            Or(a, b) => Or(sub(a), sub(b)),
            Implies(a, b) => Implies(sub(a), sub(b)),
            Iff(a, b) => Iff(sub(a), sub(b)),
            Box(a) => Box(sub(a)),
            Dia(a) => Dia(sub(a)),
        }
    }

    /// Rewrites into the primitive basis `{⊥, p, ¬, ∨, ◇}`.
    pub fn desugar(&self) -> ModalFormula {
        use build::*;
        use ModalFormula::*;
        match self {
            Bottom => Bottom,
            Top => not(Bottom),
            Prop(p) => Prop(p.clone()),
            Not(a) => not(a.desugar()),
            Or(a, b) => or(a.desugar(), b.desugar()),
            And(a, b) => not(or(not(a.desugar()), not(b.desugar()))),
            Implies(a, b) => or(not(a.desugar()), b.desugar()),
            Iff(a, b) => {
                let (a, b) = (a.desugar(), b.desugar());
                let ab = or(not(a.clone()), b.clone());
                let ba = or(not(b), a);
                not(or(not(ab), not(ba)))
            }
            Box(a) => not(dia(not(a.desugar()))),
            Dia(a) => dia(a.desugar()),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        use ModalFormula::*;
        match self {
            Bottom | Top | Prop(_) => 1,
            Not(a) | Box(a) | Dia(a) => 1 + a.size(),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => 1 + a.size() + b.size(),
        }
    }
}

/// Free functions mirroring the operation names used throughout the crate.
pub fn modal_depth(f: &ModalFormula) -> usize {
    f.modal_depth()
}

pub fn prop_letters(f: &ModalFormula) -> Vec<PropLetter> {
    f.prop_letters()
}

pub fn substitute_prop(f: &ModalFormula, s: &BTreeMap<PropLetter, ModalFormula>) -> ModalFormula {
    f.substitute(s)
}

/// Where an individual variable came from. The origin fixes the name prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Origin {
    /// The designated free variable `x`.
    Source,
    /// Fresh variables introduced by the standard translation (`y0, y1, …`).
    Translation,
    /// Parameters replacing second-order quantifiers (`z0, z1, …`).
    Parameter,
    /// Path/chain variables inside R-path formulas (`v0, v1, …`).
    Chain,
    /// Anything else, e.g. names written by a user.
    Named,
}

impl Origin {
    pub fn prefix(self) -> &'static str {
        match self {
            Origin::Source => "x",
            Origin::Translation => "y",
            Origin::Parameter => "z",
            Origin::Chain => "v",
            Origin::Named => "",
        }
    }
}

/// An individual (first-order) variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndVar(Arc<str>);

impl IndVar {
    pub fn new(name: &str) -> Self {
        assert!(
            is_identifier(name) && !is_reserved_fo_word(name),
            "variable `{name}` must match [a-z][a-z0-9_]* and not be a keyword"
        );
        IndVar(Arc::from(name))
    }

    /// The designated free variable of every correspondent.
    pub fn source() -> Self {
        IndVar::new("x")
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn origin(&self) -> Origin {
        let rest = &self.0[1..];
        let numbered = !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit());
        match (self.0.as_bytes()[0], numbered) {
            (b'x', _) if rest.is_empty() => Origin::Source,
            (b'y', true) => Origin::Translation,
            (b'z', true) => Origin::Parameter,
            (b'v', true) => Origin::Chain,
            _ => Origin::Named,
        }
    }
}

impl fmt::Debug for IndVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for IndVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for IndVar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

/// Supplies fresh variables for one produced formula. Each origin has its own
/// monotone counter, so names never collide across origins or within one.
#[derive(Clone, Debug, Default)]
pub struct VarSupply {
    next: BTreeMap<Origin, usize>,
}

impl VarSupply {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fresh(&mut self, origin: Origin) -> IndVar {
        assert!(
            !matches!(origin, Origin::Source | Origin::Named),
            "only numbered origins have fresh supplies"
        );
        let n = self.next.entry(origin).or_insert(0);
        let v = IndVar::new(&format!("{}{}", origin.prefix(), n));
        *n += 1;
        v
    }
}

/// Unary predicate symbol standing for a proposition letter.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PredSym(PropLetter);

impl PredSym {
    pub fn source(&self) -> &PropLetter {
        &self.0
    }

    /// Printed name: the letter with its first character capitalized.
    pub fn display_name(&self) -> String {
        let name = self.0.name();
        let mut out = name[..1].to_ascii_uppercase();
        out.push_str(&name[1..]);
        out
    }
}

impl fmt::Debug for PredSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_name())
    }
}

impl Serialize for PredSym {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for PredSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_name())
    }
}

/// First-order formulas over `{R, =}` and unary predicates.
///
/// `And`/`Or` are n-ary. The smart constructors [`FoFormula::and`] and
/// [`FoFormula::or`] flatten and collapse the 0- and 1-ary cases, so values
/// they build never hold fewer than two children.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FoFormula {
    True,
    False,
    Eq(IndVar, IndVar),
    Rel(IndVar, IndVar),
    Pred(PredSym, IndVar),
    Not(Box<FoFormula>),
    And(Vec<FoFormula>),
    Or(Vec<FoFormula>),
    Implies(Box<FoFormula>, Box<FoFormula>),
    Iff(Box<FoFormula>, Box<FoFormula>),
    Forall(IndVar, Box<FoFormula>),
    Exists(IndVar, Box<FoFormula>),
}

impl fmt::Debug for FoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for FoFormula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FoFormula {
    pub fn eq(a: &IndVar, b: &IndVar) -> Self {
        FoFormula::Eq(a.clone(), b.clone())
    }

    pub fn neq(a: &IndVar, b: &IndVar) -> Self {
        FoFormula::not(FoFormula::eq(a, b))
    }

    pub fn rel(a: &IndVar, b: &IndVar) -> Self {
        FoFormula::Rel(a.clone(), b.clone())
    }

    pub fn pred(p: &PropLetter, v: &IndVar) -> Self {
        FoFormula::Pred(p.pred(), v.clone())
    }

    pub fn not(f: FoFormula) -> Self {
        FoFormula::Not(Box::new(f))
    }

    pub fn implies(a: FoFormula, b: FoFormula) -> Self {
        FoFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: FoFormula, b: FoFormula) -> Self {
        FoFormula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &IndVar, body: FoFormula) -> Self {
        FoFormula::Forall(v.clone(), Box::new(body))
    }

    pub fn exists(v: &IndVar, body: FoFormula) -> Self {
        FoFormula::Exists(v.clone(), Box::new(body))
    }

    /// Conjunction, flattening nested conjunctions; `[]` is `True`.
    pub fn and(parts: Vec<FoFormula>) -> Self {
        let mut out = Vec::with_capacity(parts.len());
        for p in parts {
            match p {
                FoFormula::And(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => FoFormula::True,
            1 => out.pop().unwrap(),
            _ => FoFormula::And(out),
        }
    }

    /// Disjunction, flattening nested disjunctions; `[]` is `False`.
    pub fn or(parts: Vec<FoFormula>) -> Self {
        let mut out = Vec::with_capacity(parts.len());
        for p in parts {
            match p {
                FoFormula::Or(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => FoFormula::False,
            1 => out.pop().unwrap(),
            _ => FoFormula::Or(out),
        }
    }

    /// Free individual variables, sorted.
    pub fn free_vars(&self) -> BTreeSet<IndVar> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<IndVar>, out: &mut BTreeSet<IndVar>) {
        use FoFormula::*;
        let mut note = |v: &IndVar, bound: &Vec<IndVar>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            True | False => {}
            Eq(a, b) | Rel(a, b) => {
                note(a, bound);
                note(b, bound);
            }
            Pred(_, a) => note(a, bound),
            Not(a) => a.collect_free(bound, out),
            And(xs) | Or(xs) => xs.iter().for_each(|x| x.collect_free(bound, out)),
            Implies(a, b) | Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Forall(v, body) | Exists(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Whether `v` occurs free.
    pub fn has_free(&self, v: &IndVar) -> bool {
        self.free_vars().contains(v)
    }

    /// Variables bound by some quantifier, in order of first binding.
    pub fn bound_vars(&self) -> Vec<IndVar> {
        let mut out = Vec::new();
        self.visit(&mut |f| {
            if let FoFormula::Forall(v, _) | FoFormula::Exists(v, _) = f {
                out.push(v.clone());
            }
        });
        out
    }

    /// Every variable occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<IndVar> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            FoFormula::Eq(a, b) | FoFormula::Rel(a, b) => {
                out.insert(a.clone());
                out.insert(b.clone());
            }
            FoFormula::Pred(_, a) | FoFormula::Forall(a, _) | FoFormula::Exists(a, _) => {
                out.insert(a.clone());
            }
            _ => {}
        });
        out
    }

    /// Predicate symbols in order of first occurrence.
    pub fn preds(&self) -> Vec<PredSym> {
        let mut out: Vec<PredSym> = Vec::new();
        self.visit(&mut |f| {
            if let FoFormula::Pred(p, _) = f {
                if !out.contains(p) {
                    out.push(p.clone());
                }
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut impl FnMut(&FoFormula)) {
        use FoFormula::*;
        f(self);
        match self {
            True | False | Eq(..) | Rel(..) | Pred(..) => {}
            Not(a) | Forall(_, a) | Exists(_, a) => a.visit(f),
            And(xs) | Or(xs) => xs.iter().for_each(|x| x.visit(f)),
            Implies(a, b) | Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// Replaces free occurrences of `from` with `to`. Stops at binders of
    /// `from`. The caller guarantees `to` is not captured, i.e. no binder of
    /// `to` has a free `from` in its scope.
    pub fn rename_free(&self, from: &IndVar, to: &IndVar) -> FoFormula {
        use FoFormula::*;
        let r = |v: &IndVar| if v == from { to.clone() } else { v.clone() };
        match self {
            True => True,
            False => False,
            Eq(a, b) => Eq(r(a), r(b)),
            Rel(a, b) => Rel(r(a), r(b)),
            Pred(p, a) => Pred(p.clone(), r(a)),
            Not(a) => Not(Box::new(a.rename_free(from, to))),
            And(xs) => And(xs.iter().map(|x| x.rename_free(from, to)).collect()),
            Or(xs) => Or(xs.iter().map(|x| x.rename_free(from, to)).collect()),
            Implies(a, b) => Implies(Box::new(a.rename_free(from, to)), Box::new(b.rename_free(from, to))),
            Iff(a, b) => Iff(Box::new(a.rename_free(from, to)), Box::new(b.rename_free(from, to))),
            Forall(v, body) if v == from => Forall(v.clone(), body.clone()),
            Exists(v, body) if v == from => Exists(v.clone(), body.clone()),
            Forall(v, body) => Forall(v.clone(), Box::new(body.rename_free(from, to))),
            Exists(v, body) => Exists(v.clone(), Box::new(body.rename_free(from, to))),
        }
    }

    /// Replaces every atom `P(t)` with `replace(P, t)`.
    pub fn map_preds(&self, replace: &mut impl FnMut(&PredSym, &IndVar) -> FoFormula) -> FoFormula {
        use FoFormula::*;
        match self {
            True | False | Eq(..) | Rel(..) => self.clone(),
            Pred(p, t) => replace(p, t),
            Not(a) => Not(Box::new(a.map_preds(replace))),
            And(xs) => And(xs.iter().map(|x| x.map_preds(replace)).collect()),
            Or(xs) => Or(xs.iter().map(|x| x.map_preds(replace)).collect()),
            Implies(a, b) => {
                let a = a.map_preds(replace);
                Implies(Box::new(a), Box::new(b.map_preds(replace)))
            }
            Iff(a, b) => {
                let a = a.map_preds(replace);
                Iff(Box::new(a), Box::new(b.map_preds(replace)))
            }
            Forall(v, body) => Forall(v.clone(), Box::new(body.map_preds(replace))),
            Exists(v, body) => Exists(v.clone(), Box::new(body.map_preds(replace))),
        }
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    pub fn quantifier_count(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |f| {
            if matches!(f, FoFormula::Forall(..) | FoFormula::Exists(..)) {
                n += 1
            }
        });
        n
    }
}

/// Structural equality up to renaming of bound variables.
pub fn alpha_equivalent(a: &FoFormula, b: &FoFormula) -> bool {
    fn go(a: &FoFormula, b: &FoFormula, env: &mut Vec<(IndVar, IndVar)>) -> bool {
        use FoFormula::*;
        // innermost binding wins; free variables must match by name
        let same = |x: &IndVar, y: &IndVar, env: &Vec<(IndVar, IndVar)>| {
            let lx = env.iter().rposition(|(l, _)| l == x);
            let ry = env.iter().rposition(|(_, r)| r == y);
            match (lx, ry) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            }
        };
        match (a, b) {
            (True, True) | (False, False) => true,
            (Eq(a1, a2), Eq(b1, b2)) | (Rel(a1, a2), Rel(b1, b2)) => {
                same(a1, b1, env) && same(a2, b2, env)
            }
            (Pred(p, x), Pred(q, y)) => p == q && same(x, y, env),
            (Not(x), Not(y)) => go(x, y, env),
            (And(xs), And(ys)) | (Or(xs), Or(ys)) => {
                xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| go(x, y, env))
            }
            (Implies(a1, a2), Implies(b1, b2)) | (Iff(a1, a2), Iff(b1, b2)) => {
                go(a1, b1, env) && go(a2, b2, env)
            }
            (Forall(v, x), Forall(w, y)) | (Exists(v, x), Exists(w, y)) => {
                env.push((v.clone(), w.clone()));
                let r = go(x, y, env);
                env.pop();
                r
            }
            _ => false,
        }
    }
    go(a, b, &mut Vec::new())
}

/// A universally quantified block of predicate variables over a first-order
/// matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SoFormula {
    pub prefix: Vec<PredSym>,
    pub matrix: FoFormula,
}

impl fmt::Debug for SoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SoFormula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::build::*;
    use super::*;

    #[test]
    fn depth_counts_both_modalities() {
        assert_eq!(prop("p").modal_depth(), 0);
        assert_eq!(boxed(boxed(prop("p"))).modal_depth(), 2);
        assert_eq!(dia(boxed(prop("p"))).modal_depth(), 2);
        assert_eq!(and(dia(prop("p")), boxes(3, prop("q"))).modal_depth(), 3);
    }

    #[test]
    fn letters_in_first_occurrence_order() {
        let f = implies(and(dia(boxed(prop("p"))), boxed(prop("q"))), boxed(dia(and(prop("p"), prop("q")))));
        assert_eq!(prop_letters(&f), vec![PropLetter::new("p"), PropLetter::new("q")]);
        assert!(prop_letters(&boxed(ModalFormula::Bottom)).is_empty());
        let g = or(prop("r"), prop("a"));
        assert_eq!(prop_letters(&g), vec![PropLetter::new("r"), PropLetter::new("a")]);
    }

    #[test]
    fn substitution_is_simultaneous() {
        let f = boxed(implies(prop("p"), prop("q")));
        let mut s = BTreeMap::new();
        s.insert(PropLetter::new("q"), prop("p"));
        assert_eq!(f.substitute(&s), boxed(implies(prop("p"), prop("p"))));

        let mut swap = BTreeMap::new();
        swap.insert(PropLetter::new("p"), prop("q"));
        swap.insert(PropLetter::new("q"), prop("p"));
        assert_eq!(f.substitute(&swap), boxed(implies(prop("q"), prop("p"))));
    }

    #[test]
    fn var_origins() {
        assert_eq!(IndVar::source().origin(), Origin::Source);
        let mut s = VarSupply::new();
        let y0 = s.fresh(Origin::Translation);
        let z0 = s.fresh(Origin::Parameter);
        let y1 = s.fresh(Origin::Translation);
        assert_eq!((y0.name(), z0.name(), y1.name()), ("y0", "z0", "y1"));
        assert_eq!(z0.origin(), Origin::Parameter);
        assert_eq!(IndVar::new("v12").origin(), Origin::Chain);
        assert_eq!(IndVar::new("u").origin(), Origin::Named);
        assert_eq!(IndVar::new("y").origin(), Origin::Named);
    }

    #[test]
    fn smart_constructors_flatten() {
        let x = IndVar::source();
        let a = FoFormula::rel(&x, &x);
        let b = FoFormula::eq(&x, &x);
        let nested = FoFormula::and(vec![a.clone(), FoFormula::and(vec![b.clone(), a.clone()])]);
        assert_eq!(nested, FoFormula::And(vec![a.clone(), b.clone(), a.clone()]));
        assert_eq!(FoFormula::and(vec![]), FoFormula::True);
        assert_eq!(FoFormula::or(vec![]), FoFormula::False);
        assert_eq!(FoFormula::or(vec![a.clone()]), a);
    }

    #[test]
    fn alpha_equivalence_respects_binding() {
        let x = IndVar::source();
        let y = IndVar::new("y");
        let u = IndVar::new("u");
        let f = FoFormula::forall(&y, FoFormula::rel(&x, &y));
        let g = FoFormula::forall(&u, FoFormula::rel(&x, &u));
        let h = FoFormula::forall(&u, FoFormula::rel(&u, &x));
        assert!(alpha_equivalent(&f, &g));
        assert!(!alpha_equivalent(&f, &h));
        // free variable mismatch
        let k = FoFormula::forall(&y, FoFormula::rel(&u, &y));
        assert!(!alpha_equivalent(&f, &k));
    }

    #[test]
    fn free_vars_and_renaming() {
        let x = IndVar::source();
        let y = IndVar::new("y");
        let z = IndVar::new("z");
        let f = FoFormula::and(vec![
            FoFormula::rel(&x, &y),
            FoFormula::exists(&y, FoFormula::rel(&y, &x)),
        ]);
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec![x.clone(), y.clone()]);
        let g = f.rename_free(&y, &z);
        assert_eq!(
            g,
            FoFormula::and(vec![FoFormula::rel(&x, &z), FoFormula::exists(&y, FoFormula::rel(&y, &x))])
        );
    }
}
