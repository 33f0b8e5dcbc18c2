//! First-order local correspondents by minimal-valuation reduction.
//!
//! Each definite implication `A → C` is handled by replacing every
//! second-order quantifier `∀P` by first-order parameters `∀z̄` and every
//! atom `P(t)` by a first-order description of the least valuation that
//! makes the antecedent true at the chosen parameters:
//!
//! * very simple implications: `P` is a finite set `{z₁,…,zₘ}`;
//! * boxed-atom implications: `P` is a union of `R^k`-images of points;
//! * atomic inductive implications: `P` is a union of images along chains
//!   whose intermediate steps are constrained by earlier letters.

use std::collections::BTreeMap;
use std::fmt::{self, Write};

use serde::Serialize;

use crate::classify::{
    classify, decompose_antecedent, polarity_map, topological_order, ClassificationReport, Decomposition,
    DependencyDigraph, Polarity, SyntacticClass,
};
use crate::error::{Error, Result};
use crate::formula::{build, FoFormula, IndVar, ModalFormula, Origin, PropLetter, VarSupply};
use crate::fosimp::simplify;
use crate::normalize::{eliminate_uniform_variables, negate_to_antecedent, to_definite_implications_with, DEFAULT_CONJUNCT_CAP};
use crate::translate::standard_translation_with;

/// One member of an inductive union: the image of `z` along a chain that
/// passes through the letters of `rho` and ends with `k` further steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductiveEntry {
    pub z: IndVar,
    pub rho: Vec<PropLetter>,
    pub k: usize,
}

/// The shape of the restricted valuations ranged over for one letter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LetterScheme {
    ConstEmpty,
    ConstFull,
    /// `{z₁,…,zₘ}`.
    FiniteSet(Vec<IndVar>),
    /// `⋃ R^k[z]`.
    BoxAtomUnion(Vec<(IndVar, usize)>),
    /// `⋃ S_ρ^k[z, …]`.
    InductiveUnion(Vec<InductiveEntry>),
}

impl LetterScheme {
    fn parameters(&self) -> Vec<IndVar> {
        match self {
            LetterScheme::ConstEmpty | LetterScheme::ConstFull => vec![],
            LetterScheme::FiniteSet(zs) => zs.clone(),
            LetterScheme::BoxAtomUnion(es) => es.iter().map(|(z, _)| z.clone()).collect(),
            LetterScheme::InductiveUnion(es) => es.iter().map(|e| e.z.clone()).collect(),
        }
    }
}

impl fmt::Display for LetterScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |items: Vec<String>| items.join(", ");
        match self {
            LetterScheme::ConstEmpty => f.write_str("empty"),
            LetterScheme::ConstFull => f.write_str("full"),
            LetterScheme::FiniteSet(zs) => write!(f, "finite{{{}}}", join(zs.iter().map(|z| z.to_string()).collect())),
            LetterScheme::BoxAtomUnion(es) => {
                write!(f, "union{{{}}}", join(es.iter().map(|(z, k)| format!("R^{k}[{z}]")).collect()))
            }
            LetterScheme::InductiveUnion(es) => {
                let items = es
                    .iter()
                    .map(|e| {
                        let rho: Vec<_> = e.rho.iter().map(|p| p.to_string()).collect();
                        format!("({}, [{}], {})", e.z, rho.join(","), e.k)
                    })
                    .collect();
                write!(f, "inductive{{{}}}", join(items))
            }
        }
    }
}

/// Per-letter schemes, in processing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TameScheme {
    pub letters: Vec<(PropLetter, LetterScheme)>,
}

impl TameScheme {
    pub fn get(&self, p: &PropLetter) -> Option<&LetterScheme> {
        self.letters.iter().find(|(q, _)| q == p).map(|(_, s)| s)
    }

    /// All parameters, in allocation order.
    pub fn parameters(&self) -> Vec<IndVar> {
        let mut zs: Vec<IndVar> = self.letters.iter().flat_map(|(_, s)| s.parameters()).collect();
        zs.sort_by_key(|z| z.name()[1..].parse::<usize>().unwrap_or(usize::MAX));
        zs
    }
}

impl fmt::Display for TameScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.letters.iter().map(|(p, s)| format!("{p} = {s}")).collect();
        f.write_str(&parts.join("; "))
    }
}

/// `α_p(y)`: the first-order description of a letter's restricted valuation,
/// with hole variable `free`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaDefinition {
    pub letter: PropLetter,
    pub free: IndVar,
    pub body: FoFormula,
}

/// The result for one definite conjunct.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjunctResult {
    pub implication: ModalFormula,
    pub class: SyntacticClass,
    pub scheme: TameScheme,
    pub alphas: Vec<AlphaDefinition>,
    pub raw: FoFormula,
    pub simplified: FoFormula,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceResult {
    pub input: ModalFormula,
    pub class_used: SyntacticClass,
    pub conjuncts: Vec<ConjunctResult>,
    /// Conjunction of the unsimplified conjunct correspondents.
    pub combined_raw: FoFormula,
    /// Conjunction of the simplified conjunct correspondents.
    pub combined: FoFormula,
    pub eliminated_uniform: BTreeMap<PropLetter, ModalFormula>,
    pub free_var: IndVar,
}

impl CorrespondenceResult {
    /// Per-conjunct scheme, α-definitions, raw and simplified forms.
    pub fn trace(&self) -> String {
        let mut out = String::new();
        writeln!(out, "input: {}", self.input).unwrap();
        writeln!(out, "class: {}", self.class_used).unwrap();
        if !self.eliminated_uniform.is_empty() {
            let parts: Vec<_> = self.eliminated_uniform.iter().map(|(p, c)| format!("{p}:={c}")).collect();
            writeln!(out, "eliminated: {}", parts.join(" ")).unwrap();
        }
        for (i, c) in self.conjuncts.iter().enumerate() {
            writeln!(out, "conjunct {}: {}", i + 1, c.implication).unwrap();
            writeln!(out, "  class: {}", c.class).unwrap();
            if !c.scheme.letters.is_empty() {
                writeln!(out, "  scheme: {}", c.scheme).unwrap();
            }
            for a in &c.alphas {
                writeln!(out, "  alpha {}({}) := {}", a.letter, a.free, a.body).unwrap();
            }
            writeln!(out, "  raw: {}", c.raw).unwrap();
            writeln!(out, "  simplified: {}", c.simplified).unwrap();
        }
        writeln!(out, "combined: {}", self.combined).unwrap();
        out
    }
}

/// `R^k(a, b)` as an existential chain; `R^0(a, b)` is `a = b`.
pub fn rpath(k: usize, a: &IndVar, b: &IndVar, supply: &mut VarSupply) -> FoFormula {
    match k {
        0 => FoFormula::eq(a, b),
        1 => FoFormula::rel(a, b),
        _ => {
            let mids: Vec<IndVar> = (1..k).map(|_| supply.fresh(Origin::Chain)).collect();
            let mut chain = Vec::with_capacity(k);
            let mut prev = a.clone();
            for v in &mids {
                chain.push(FoFormula::rel(&prev, v));
                prev = v.clone();
            }
            chain.push(FoFormula::rel(&prev, b));
            mids.iter().rev().fold(FoFormula::and(chain), |acc, v| FoFormula::exists(v, acc))
        }
    }
}

fn alpha_at(scheme: &TameScheme, p: &PropLetter, t: &IndVar, supply: &mut VarSupply) -> FoFormula {
    match scheme.get(p) {
        None | Some(LetterScheme::ConstEmpty) => FoFormula::neq(t, t),
        Some(LetterScheme::ConstFull) => FoFormula::eq(t, t),
        Some(LetterScheme::FiniteSet(zs)) => FoFormula::or(zs.iter().map(|z| FoFormula::eq(t, z)).collect()),
        Some(LetterScheme::BoxAtomUnion(es)) => FoFormula::or(
            es.iter()
                .map(|(z, k)| if *k == 0 { FoFormula::eq(t, z) } else { rpath(*k, z, t, supply) })
                .collect(),
        ),
        Some(LetterScheme::InductiveUnion(es)) => {
            let mut disjuncts = Vec::with_capacity(es.len());
            for e in es {
                if e.rho.is_empty() {
                    disjuncts.push(if e.k == 0 { FoFormula::eq(t, &e.z) } else { rpath(e.k, &e.z, t, supply) });
                    continue;
                }
                let vs: Vec<IndVar> = (0..=e.rho.len()).map(|_| supply.fresh(Origin::Chain)).collect();
                let mut parts = vec![FoFormula::eq(&e.z, &vs[0])];
                for (j, q) in e.rho.iter().enumerate() {
                    parts.push(FoFormula::rel(&vs[j], &vs[j + 1]));
                    parts.push(alpha_at(scheme, q, &vs[j + 1], supply));
                }
                parts.push(rpath(e.k, &vs[e.rho.len()], t, supply));
                let body = FoFormula::and(parts);
                disjuncts.push(vs.iter().rev().fold(body, |acc, v| FoFormula::exists(v, acc)));
            }
            FoFormula::or(disjuncts)
        }
    }
}

fn hole() -> IndVar {
    IndVar::new("y")
}

/// `∀z̄ ST_x(imp)[P(t) ↦ α_P(t)]`.
fn instantiate(imp: &ModalFormula, scheme: &TameScheme, supply: &mut VarSupply) -> FoFormula {
    let matrix = standard_translation_with(&IndVar::source(), imp, supply);
    let body = matrix.map_preds(&mut |p, t| alpha_at(scheme, p.source(), t, supply));
    scheme.parameters().iter().rev().fold(body, |acc, z| FoFormula::forall(z, acc))
}

fn alpha_definitions(scheme: &TameScheme) -> Vec<AlphaDefinition> {
    let mut supply = VarSupply::new();
    scheme
        .letters
        .iter()
        .map(|(p, _)| AlphaDefinition { letter: p.clone(), free: hole(), body: alpha_at(scheme, p, &hole(), &mut supply) })
        .collect()
}

fn split_implication(imp: &ModalFormula) -> Result<(&ModalFormula, Decomposition)> {
    let ModalFormula::Implies(a, _) = imp else {
        return Err(Error::NotInClass(format!("`{imp}` is not an implication")));
    };
    let d = decompose_antecedent(a).map_err(|_| Error::NotInClass(format!("antecedent `{a}` does not decompose")))?;
    if !d.is_definite() {
        return Err(Error::NotInClass(format!("`{imp}` is not definite")));
    }
    Ok((a, d))
}

/// Letters of `imp` with no head occurrence in the antecedent. Those occurring
/// only positively get the empty valuation when `allow_const` is set; any
/// other such letter is rejected.
fn constant_letters(imp: &ModalFormula, d: &Decomposition, allow_const: bool) -> Result<BTreeMap<PropLetter, LetterScheme>> {
    let pol = polarity_map(imp);
    let mut out = BTreeMap::new();
    for p in imp.prop_letters() {
        if d.chis().any(|(_, c)| c.head == p) {
            continue;
        }
        if !allow_const {
            return Err(Error::NotInClass(format!("letter `{p}` has no positive occurrence in the antecedent")));
        }
        match pol[&p] {
            Polarity::Positive => out.insert(p, LetterScheme::ConstEmpty),
            Polarity::Negative => out.insert(p, LetterScheme::ConstFull),
            _ => return Err(Error::NotInClass(format!("letter `{p}` has no positive occurrence in the antecedent"))),
        };
    }
    Ok(out)
}

fn finish(imp: &ModalFormula, class: SyntacticClass, scheme: TameScheme, supply: &mut VarSupply) -> ConjunctResult {
    let raw = instantiate(imp, &scheme, supply);
    ConjunctResult {
        implication: imp.clone(),
        class,
        alphas: alpha_definitions(&scheme),
        simplified: simplify(&raw),
        scheme,
        raw,
    }
}

fn vssi_scheme(imp: &ModalFormula, d: &Decomposition, allow_const: bool, supply: &mut VarSupply) -> Result<TameScheme> {
    if d.chis().any(|(_, c)| !c.rho.is_empty() || c.k != 0) {
        return Err(Error::NotInClass(format!("`{imp}` has boxed antecedent atoms")));
    }
    let consts = constant_letters(imp, d, allow_const)?;
    let mut scheme = TameScheme::default();
    for p in imp.prop_letters() {
        if let Some(c) = consts.get(&p) {
            scheme.letters.push((p, c.clone()));
            continue;
        }
        let m = d.chis().filter(|(_, c)| c.head == p).count();
        let zs = (0..m).map(|_| supply.fresh(Origin::Parameter)).collect();
        scheme.letters.push((p, LetterScheme::FiniteSet(zs)));
    }
    Ok(scheme)
}

fn si_scheme(imp: &ModalFormula, d: &Decomposition, allow_const: bool, supply: &mut VarSupply) -> Result<TameScheme> {
    if d.chis().any(|(_, c)| !c.rho.is_empty()) {
        return Err(Error::NotInClass(format!("`{imp}` has box-formulas with inessential letters")));
    }
    let consts = constant_letters(imp, d, allow_const)?;
    let mut scheme = TameScheme::default();
    for p in imp.prop_letters() {
        if let Some(c) = consts.get(&p) {
            scheme.letters.push((p, c.clone()));
            continue;
        }
        let entries = d
            .chis()
            .filter(|(_, c)| c.head == p)
            .map(|(_, c)| (supply.fresh(Origin::Parameter), c.k))
            .collect();
        scheme.letters.push((p, LetterScheme::BoxAtomUnion(entries)));
    }
    Ok(scheme)
}

fn aii_scheme(imp: &ModalFormula, d: &Decomposition, supply: &mut VarSupply) -> Result<TameScheme> {
    let g = DependencyDigraph::from_box_formulas(d.chis().map(|(_, c)| c));
    let order = topological_order(&g).ok_or(Error::CyclicDigraph)?;
    let consts = constant_letters(imp, d, true)?;
    let mut scheme = TameScheme::default();
    for p in order.iter().chain(imp.prop_letters().iter().filter(|p| !order.contains(p))) {
        if scheme.get(p).is_some() || !imp.prop_letters().contains(p) {
            continue;
        }
        if let Some(c) = consts.get(p) {
            scheme.letters.push((p.clone(), c.clone()));
            continue;
        }
        let entries = d
            .chis()
            .filter(|(_, c)| &c.head == p)
            .map(|(_, c)| InductiveEntry { z: supply.fresh(Origin::Parameter), rho: c.rho.clone(), k: c.k })
            .collect();
        scheme.letters.push((p.clone(), LetterScheme::InductiveUnion(entries)));
    }
    Ok(scheme)
}

/// Correspondent of a uniform (or closed) formula: every positive letter is
/// read as `∅` and every negative one as `W`.
pub fn correspond_uniform(f: &ModalFormula) -> Result<FoFormula> {
    Ok(uniform_result(f, &mut VarSupply::new())?.raw)
}

fn uniform_result(f: &ModalFormula, supply: &mut VarSupply) -> Result<ConjunctResult> {
    let mut scheme = TameScheme::default();
    let pol = polarity_map(f);
    for p in f.prop_letters() {
        let s = match pol[&p] {
            Polarity::Positive => LetterScheme::ConstEmpty,
            Polarity::Negative => LetterScheme::ConstFull,
            _ => return Err(Error::NotUniform),
        };
        scheme.letters.push((p, s));
    }
    let class = if scheme.letters.is_empty() { SyntacticClass::Closed } else { SyntacticClass::Uniform };
    Ok(finish(f, class, scheme, supply))
}

/// Very simple implications: each letter ranges over sets of at most as many
/// points as it has antecedent occurrences. Returns the scheme and the raw
/// correspondent.
pub fn correspond_vssi(imp: &ModalFormula) -> Result<(TameScheme, FoFormula)> {
    let (_, d) = split_implication(imp)?;
    let mut supply = VarSupply::new();
    let scheme = vssi_scheme(imp, &d, false, &mut supply)?;
    let raw = instantiate(imp, &scheme, &mut supply);
    Ok((scheme, raw))
}

/// Implications with boxed-atom antecedents: one parameter per occurrence.
pub fn correspond_si(imp: &ModalFormula) -> Result<(TameScheme, FoFormula)> {
    let (_, d) = split_implication(imp)?;
    let mut supply = VarSupply::new();
    let scheme = si_scheme(imp, &d, false, &mut supply)?;
    let raw = instantiate(imp, &scheme, &mut supply);
    Ok((scheme, raw))
}

/// Atomic inductive implications: letters processed in dependency order.
pub fn correspond_aii(imp: &ModalFormula) -> Result<(TameScheme, Vec<AlphaDefinition>, FoFormula)> {
    let (_, d) = split_implication(imp)?;
    let mut supply = VarSupply::new();
    let scheme = aii_scheme(imp, &d, &mut supply)?;
    let raw = instantiate(imp, &scheme, &mut supply);
    let alphas = alpha_definitions(&scheme);
    Ok((scheme, alphas, raw))
}

/// Correspondent of one definite implication (or closed/uniform formula),
/// using the most specific strategy that applies.
fn correspond_conjunct(c: &ModalFormula, supply: &mut VarSupply) -> Result<ConjunctResult> {
    let pol = polarity_map(c);
    if pol.values().all(|p| *p != Polarity::Both) {
        return uniform_result(c, supply);
    }
    let (_, d) = split_implication(c)?;
    let g = DependencyDigraph::from_box_formulas(d.chis().map(|(_, x)| x));
    let chis: Vec<_> = d.chis().map(|(_, x)| x).collect();
    if chis.iter().all(|x| x.rho.is_empty() && x.k == 0) {
        let scheme = vssi_scheme(c, &d, true, supply)?;
        Ok(finish(c, SyntacticClass::VSSI, scheme, supply))
    } else if chis.iter().all(|x| x.rho.is_empty()) {
        let scheme = si_scheme(c, &d, true, supply)?;
        Ok(finish(c, SyntacticClass::SI, scheme, supply))
    } else if g.is_acyclic() {
        let scheme = aii_scheme(c, &d, supply)?;
        Ok(finish(c, SyntacticClass::AII, scheme, supply))
    } else {
        Err(Error::CyclicDigraph)
    }
}

fn supported(class: SyntacticClass) -> bool {
    !matches!(class, SyntacticClass::AtomicRegularImp | SyntacticClass::Unclassified)
}

/// The definite conjuncts to process for a formula of a supported class.
fn conjuncts_of(f: &ModalFormula, report: &ClassificationReport) -> Result<Vec<ModalFormula>> {
    use SyntacticClass::*;
    match report.class {
        Closed | Uniform => Ok(vec![f.clone()]),
        VSSI | SI | AII => {
            to_definite_implications_with(f, report.decomposition.as_ref().unwrap(), DEFAULT_CONJUNCT_CAP)
        }
        SF | AIF => {
            let neg = negate_to_antecedent(f)?;
            let imp = build::implies(neg, ModalFormula::Bottom);
            to_definite_implications_with(&imp, report.decomposition.as_ref().unwrap(), DEFAULT_CONJUNCT_CAP)
        }
        AtomicRegularImp | Unclassified => Err(Error::Unsupported(Box::new(report.clone()))),
    }
}

/// Computes a local first-order correspondent. Fails with
/// [`Error::Unsupported`] when no strategy applies, which says nothing about
/// whether a correspondent exists.
pub fn correspond(f: &ModalFormula) -> Result<CorrespondenceResult> {
    let original = classify(f);
    let (eliminated, subst) = eliminate_uniform_variables(f);
    let reduced = classify(&eliminated);
    let (target, report, subst) = if supported(reduced.class) {
        (eliminated, reduced, subst)
    } else if supported(original.class) {
        (f.clone(), original, BTreeMap::new())
    } else {
        return Err(Error::Unsupported(Box::new(original)));
    };

    let mut supply = VarSupply::new();
    let conjuncts = conjuncts_of(&target, &report)?
        .iter()
        .map(|c| correspond_conjunct(c, &mut supply))
        .collect::<Result<Vec<_>>>()?;
    Ok(CorrespondenceResult {
        input: f.clone(),
        class_used: report.class,
        combined_raw: compose_conjunction(conjuncts.iter().map(|c| c.raw.clone()).collect()),
        combined: compose_conjunction(conjuncts.iter().map(|c| c.simplified.clone()).collect()),
        conjuncts,
        eliminated_uniform: subst,
        free_var: IndVar::source(),
    })
}

/// `⋀ αᵢ`; the empty conjunction is `⊤`.
pub fn compose_conjunction(results: Vec<FoFormula>) -> FoFormula {
    FoFormula::and(results)
}

fn fresh_avoiding(f: &FoFormula, origin: Origin) -> impl FnMut() -> IndVar {
    let used = f.all_vars();
    let mut supply = VarSupply::new();
    move || loop {
        let v = supply.fresh(origin);
        if !used.contains(&v) {
            return v;
        }
    }
}

/// Correspondent of `□^k φ` from a correspondent `alpha` of `φ`:
/// `∀y(R^k(x,y) → alpha[y/x])`.
pub fn compose_box(alpha: &FoFormula, k: usize) -> FoFormula {
    if k == 0 {
        return alpha.clone();
    }
    let x = IndVar::source();
    let y = fresh_avoiding(alpha, Origin::Translation)();
    let mut chain_vars = fresh_avoiding(alpha, Origin::Chain);
    let mut supply = VarSupply::new();
    let mut path = rpath(k, &x, &y, &mut supply);
    // rename chain variables away from anything in alpha
    for v in path.bound_vars() {
        path = rename_bound(&path, &v, &chain_vars());
    }
    FoFormula::forall(&y, FoFormula::implies(path, alpha.rename_free(&x, &y)))
}

fn rename_bound(f: &FoFormula, from: &IndVar, to: &IndVar) -> FoFormula {
    match f {
        FoFormula::Exists(v, body) if v == from => FoFormula::exists(to, body.rename_free(from, to)),
        FoFormula::Exists(v, body) => FoFormula::exists(v, rename_bound(body, from, to)),
        other => other.clone(),
    }
}

/// Correspondent of `⋁ φᵢ` for letter-disjoint `φᵢ`: `⋁ αᵢ`.
pub fn compose_disjoint_disjunction(pairs: &[(ModalFormula, FoFormula)]) -> Result<FoFormula> {
    let mut seen: BTreeMap<PropLetter, usize> = BTreeMap::new();
    let mut shared = Vec::new();
    for (i, (f, _)) in pairs.iter().enumerate() {
        for p in f.prop_letters() {
            match seen.get(&p) {
                Some(j) if *j != i => {
                    if !shared.contains(&p) {
                        shared.push(p.clone())
                    }
                }
                _ => {
                    seen.insert(p, i);
                }
            }
        }
    }
    if !shared.is_empty() {
        return Err(Error::SharedLetters(shared));
    }
    Ok(FoFormula::or(pairs.iter().map(|(_, a)| a.clone()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_fo, parse_modal};
    use crate::semantics::check_local_correspondence;

    fn m(s: &str) -> ModalFormula {
        parse_modal(s).unwrap()
    }

    fn fo(s: &str) -> FoFormula {
        parse_fo(s).unwrap()
    }

    fn names(zs: &[IndVar]) -> Vec<&str> {
        zs.iter().map(|z| z.name()).collect()
    }

    #[test]
    fn very_simple_raw_shape() {
        let (scheme, raw) = correspond_vssi(&m("p & <>p -> []p")).unwrap();
        assert!(matches!(scheme.get(&PropLetter::new("p")), Some(LetterScheme::FiniteSet(zs)) if names(zs) == ["z0", "z1"]));
        assert_eq!(
            raw,
            fo("all z0. all z1. ((x = z0 | x = z1) & exists y0. (R(x,y0) & (y0 = z0 | y0 = z1)) -> all y1. (R(x,y1) -> y1 = z0 | y1 = z1))")
        );
        let (scheme, _) = correspond_vssi(&m("p -> <>p")).unwrap();
        assert!(matches!(scheme.get(&PropLetter::new("p")), Some(LetterScheme::FiniteSet(zs)) if zs.len() == 1));
        assert!(matches!(correspond_vssi(&m("~q & p -> <>p")), Err(Error::NotInClass(_))));
        assert!(matches!(correspond_vssi(&m("[]p -> p")), Err(Error::NotInClass(_))));
    }

    #[test]
    fn boxed_atom_raw_shape() {
        let (_, raw) = correspond_si(&m("<>[]p & []q -> []<>(p & q)")).unwrap();
        assert_eq!(
            raw,
            fo("all z0. all z1. (exists y0. (R(x,y0) & all y1. (R(y0,y1) -> R(z0,y1))) & all y2. (R(x,y2) -> R(z1,y2)) -> all y3. (R(x,y3) -> exists y4. (R(y3,y4) & R(z0,y4) & R(z1,y4))))")
        );
        let (_, raw) = correspond_si(&m("[][]p -> []p")).unwrap();
        let density = fo("all y. (R(x,y) -> exists u. (R(x,u) & R(u,y)))");
        assert!(check_local_correspondence(&m("[][]p -> []p"), &raw, 3, 0).unwrap().is_pass());
        assert!(check_local_correspondence(&m("[][]p -> []p"), &density, 3, 0).unwrap().is_pass());
    }

    #[test]
    fn inductive_alpha_inlining() {
        let (scheme, alphas, raw) = correspond_aii(&m("p & [](p -> q) -> <>q")).unwrap();
        assert_eq!(scheme.letters[0].0.name(), "p");
        assert_eq!(alphas[0].body, fo("y = z0"));
        assert_eq!(alphas[1].body, fo("exists v0. exists v1. (z1 = v0 & R(v0,v1) & v1 = z0 & v1 = y)"));
        assert!(check_local_correspondence(&m("p & [](p -> q) -> <>q"), &raw, 3, 0).unwrap().is_pass());
    }

    #[test]
    fn pipeline_examples() {
        let r = correspond(&m("[]p -> p")).unwrap();
        assert!(check_local_correspondence(&m("[]p -> p"), &r.combined, 3, 0).unwrap().is_pass());
        assert_eq!(correspond(&m("true")).unwrap().combined, FoFormula::True);
        assert_eq!(correspond(&m("true")).unwrap().combined_raw, fo("x = x"));
        assert!(matches!(correspond(&m("[]<>p -> <>[]p")), Err(Error::Unsupported(_))));
        let closed = correspond(&m("[]false")).unwrap();
        assert_eq!(closed.combined_raw, fo("all y0. (R(x,y0) -> y0 != y0)"));
    }

    #[test]
    fn uniform_examples() {
        assert_eq!(correspond_uniform(&m("[]<>p")).unwrap(), fo("all y0. (R(x,y0) -> exists y1. (R(y0,y1) & y1 != y1))"));
        assert_eq!(simplify(&correspond_uniform(&m("[]<>p")).unwrap()), fo("all y0. ~R(x,y0)"));
        assert_eq!(correspond_uniform(&m("<>true")).unwrap(), fo("exists y0. (R(x,y0) & y0 = y0)"));
        assert!(matches!(correspond_uniform(&m("p -> p")), Err(Error::NotUniform)));
    }

    #[test]
    fn composition() {
        assert_eq!(compose_conjunction(vec![]), FoFormula::True);
        assert_eq!(compose_conjunction(vec![fo("R(x,x)")]), fo("R(x,x)"));
        assert_eq!(compose_box(&fo("R(x,x)"), 1), fo("all y0. (R(x,y0) -> R(y0,y0))"));
        assert_eq!(compose_box(&fo("R(x,x)"), 0), fo("R(x,x)"));
        assert_eq!(compose_box(&fo("all y0. ~R(x,y0)"), 1), fo("all y1. (R(x,y1) -> all y0. ~R(y1,y0))"));
        assert_eq!(
            compose_box(&fo("exists v0. R(x,v0)"), 2),
            fo("all y0. ((exists v1. (R(x,v1) & R(v1,y0))) -> exists v0. R(y0,v0))")
        );
        let d = compose_disjoint_disjunction(&[(m("[]p -> p"), fo("R(x,x)")), (m("q -> <>q"), fo("R(x,x)"))]).unwrap();
        assert_eq!(d, fo("R(x,x) | R(x,x)"));
        assert!(matches!(
            compose_disjoint_disjunction(&[(m("[]p -> p"), fo("R(x,x)")), (m("p -> <>p"), fo("R(x,x)"))]),
            Err(Error::SharedLetters(_))
        ));
    }
}
