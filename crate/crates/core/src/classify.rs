//! Polarity analysis, antecedent decomposition, dependency digraphs and the
//! syntactic class hierarchy.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{build, ModalFormula, PropLetter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Polarity {
    Positive,
    Negative,
    Both,
    Absent,
}

impl Polarity {
    fn join(self, other: Polarity) -> Polarity {
        use Polarity::*;
        match (self, other) {
            (Absent, p) | (p, Absent) => p,
            (a, b) if a == b => a,
            _ => Both,
        }
    }

    fn flip(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
            p => p,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
            Polarity::Both => "both",
            Polarity::Absent => "absent",
        }
    }
}

/// Polarity of every letter of `f`. The left side of `→` counts as negated
/// and both sides of `↔` count as both polarities.
pub fn polarity_map(f: &ModalFormula) -> BTreeMap<PropLetter, Polarity> {
    fn go(f: &ModalFormula, pol: Polarity, out: &mut BTreeMap<PropLetter, Polarity>) {
        use ModalFormula::*;
        match f {
            Bottom | Top => {}
            Prop(p) => {
                let e = out.entry(p.clone()).or_insert(Polarity::Absent);
                *e = e.join(pol);
            }
            Not(a) => go(a, pol.flip(), out),
            Box(a) | Dia(a) => go(a, pol, out),
            And(a, b) | Or(a, b) => {
                go(a, pol, out);
                go(b, pol, out);
            }
            Implies(a, b) => {
                go(a, pol.flip(), out);
                go(b, pol, out);
            }
            Iff(a, b) => {
                go(a, Polarity::Both, out);
                go(b, Polarity::Both, out);
            }
        }
    }
    let mut out = BTreeMap::new();
    go(f, Polarity::Positive, &mut out);
    out
}

/// Every letter occurs only negatively (closed formulas qualify).
pub fn is_negative_formula(f: &ModalFormula) -> bool {
    polarity_map(f).values().all(|p| *p == Polarity::Negative)
}

/// Every letter occurs only positively (closed formulas qualify).
pub fn is_positive_formula(f: &ModalFormula) -> bool {
    polarity_map(f).values().all(|p| *p == Polarity::Positive)
}

/// `□^k p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxedAtom {
    pub k: usize,
    pub head: PropLetter,
}

/// `□(ρ¹ → □(ρ² → … □(ρʰ → □^k head)…))`; with `ρ` empty this is the boxed
/// atom `□^k head`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomicBoxFormula {
    pub rho: Vec<PropLetter>,
    pub k: usize,
    pub head: PropLetter,
}

impl AtomicBoxFormula {
    pub fn boxed_atom(&self) -> Option<BoxedAtom> {
        self.rho.is_empty().then(|| BoxedAtom { k: self.k, head: self.head.clone() })
    }

    pub fn to_formula(&self) -> ModalFormula {
        let mut f = build::boxes(self.k, ModalFormula::Prop(self.head.clone()));
        for q in self.rho.iter().rev() {
            f = build::boxed(build::implies(ModalFormula::Prop(q.clone()), f));
        }
        f
    }
}

/// Matches the atomic box-formula shape exactly.
pub fn decompose_atomic_box_formula(f: &ModalFormula) -> Option<AtomicBoxFormula> {
    match f {
        ModalFormula::Prop(h) => Some(AtomicBoxFormula { rho: vec![], k: 0, head: h.clone() }),
        ModalFormula::Box(inner) => match inner.as_ref() {
            ModalFormula::Implies(q, rest) => {
                let ModalFormula::Prop(q) = q.as_ref() else { return None };
                let mut tail = decompose_atomic_box_formula(rest)?;
                tail.rho.insert(0, q.clone());
                Some(tail)
            }
            other => {
                let atom = decompose_atomic_box_formula(other)?;
                atom.rho.is_empty().then(|| AtomicBoxFormula { k: atom.k + 1, ..atom })
            }
        },
        _ => None,
    }
}

/// The shape of an antecedent once its box-formulas and negative
/// subformulas are replaced by numbered slots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Skeleton {
    Slot(usize),
    And(Box<Skeleton>, Box<Skeleton>),
    Or(Box<Skeleton>, Box<Skeleton>),
    Dia(Box<Skeleton>),
}

impl Skeleton {
    /// Rebuilds a formula, filling slot `i` with `fill(i)`.
    pub fn assemble(&self, fill: &impl Fn(usize) -> ModalFormula) -> ModalFormula {
        match self {
            Skeleton::Slot(i) => fill(*i),
            Skeleton::And(a, b) => build::and(a.assemble(fill), b.assemble(fill)),
            Skeleton::Or(a, b) => build::or(a.assemble(fill), b.assemble(fill)),
            Skeleton::Dia(a) => build::dia(a.assemble(fill)),
        }
    }

    pub fn has_or(&self) -> bool {
        match self {
            Skeleton::Slot(_) => false,
            Skeleton::Or(..) => true,
            Skeleton::And(a, b) => a.has_or() || b.has_or(),
            Skeleton::Dia(a) => a.has_or(),
        }
    }

    fn write(&self, out: &mut String, min: u8) {
        let level = match self {
            Skeleton::Or(..) => 3,
            Skeleton::And(..) => 4,
            _ => 5,
        };
        if level < min {
            out.push('(');
            self.write(out, 0);
            out.push(')');
            return;
        }
        match self {
            Skeleton::Slot(i) => write!(out, "#{i}").unwrap(),
            Skeleton::Dia(a) => {
                out.push_str("<>");
                a.write(out, 5);
            }
            Skeleton::And(a, b) | Skeleton::Or(a, b) => {
                a.write(out, level);
                out.push_str(if level == 4 { " & " } else { " | " });
                b.write(out, level + 1);
            }
        }
    }
}

impl fmt::Display for Skeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s, 0);
        f.write_str(&s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SlotContent {
    /// An atomic box-formula occurrence.
    Chi(AtomicBoxFormula),
    /// A maximal negative subformula (including constants).
    Gamma,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slot {
    pub content: SlotContent,
    pub formula: ModalFormula,
}

/// An antecedent split into a `∧/∨/◇` skeleton over slots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub skeleton: Skeleton,
    pub slots: Vec<Slot>,
}

impl Decomposition {
    /// The atomic box-formula occurrences with their slot indices.
    pub fn chis(&self) -> impl Iterator<Item = (usize, &AtomicBoxFormula)> {
        self.slots.iter().enumerate().filter_map(|(i, s)| match &s.content {
            SlotContent::Chi(c) => Some((i, c)),
            SlotContent::Gamma => None,
        })
    }

    pub fn gammas(&self) -> impl Iterator<Item = (usize, &ModalFormula)> {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, s)| s.content == SlotContent::Gamma)
            .map(|(i, s)| (i, &s.formula))
    }

    pub fn reassemble(&self) -> ModalFormula {
        self.skeleton.assemble(&|i| self.slots[i].formula.clone())
    }

    pub fn is_definite(&self) -> bool {
        !self.skeleton.has_or()
    }
}

/// Splits an antecedent into negative formulas, atomic box-formulas and a
/// skeleton of `∧`, `∨`, `◇` above them.
pub fn decompose_antecedent(f: &ModalFormula) -> Result<Decomposition> {
    fn go(f: &ModalFormula, slots: &mut Vec<Slot>) -> Result<Skeleton> {
        if is_negative_formula(f) {
            slots.push(Slot { content: SlotContent::Gamma, formula: f.clone() });
            return Ok(Skeleton::Slot(slots.len() - 1));
        }
        if let Some(chi) = decompose_atomic_box_formula(f) {
            slots.push(Slot { content: SlotContent::Chi(chi), formula: f.clone() });
            return Ok(Skeleton::Slot(slots.len() - 1));
        }
        match f {
            ModalFormula::And(a, b) => Ok(Skeleton::And(Box::new(go(a, slots)?), Box::new(go(b, slots)?))),
            ModalFormula::Or(a, b) => Ok(Skeleton::Or(Box::new(go(a, slots)?), Box::new(go(b, slots)?))),
            ModalFormula::Dia(a) => Ok(Skeleton::Dia(Box::new(go(a, slots)?))),
            _ => Err(Error::NotRegularAntecedent),
        }
    }
    let mut slots = Vec::new();
    let skeleton = go(f, &mut slots)?;
    Ok(Decomposition { skeleton, slots })
}

/// Heads of box-formulas, with an edge from each inessential letter to the
/// head of its box-formula.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DependencyDigraph {
    pub vertices: BTreeSet<PropLetter>,
    pub edges: BTreeSet<(PropLetter, PropLetter)>,
}

impl DependencyDigraph {
    pub fn from_box_formulas<'a>(chis: impl IntoIterator<Item = &'a AtomicBoxFormula>) -> Self {
        let mut g = DependencyDigraph::default();
        for chi in chis {
            g.vertices.insert(chi.head.clone());
            for q in &chi.rho {
                g.edges.insert((q.clone(), chi.head.clone()));
            }
        }
        g
    }

    pub fn is_acyclic(&self) -> bool {
        topological_order(self).is_some()
    }
}

impl fmt::Display for DependencyDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<_> = self.vertices.iter().map(|v| v.to_string()).collect();
        let es: Vec<_> = self.edges.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        write!(f, "vertices={{{}}} edges={{{}}}", vs.join(","), es.join(","))
    }
}

/// Dependency digraph of an antecedent.
pub fn dependency_digraph(antecedent: &ModalFormula) -> Result<DependencyDigraph> {
    let d = decompose_antecedent(antecedent)?;
    Ok(DependencyDigraph::from_box_formulas(d.chis().map(|(_, c)| c)))
}

/// A linear extension of the digraph over its vertices and edge endpoints,
/// choosing the alphabetically least available letter at each step; `None`
/// if there is a cycle.
pub fn topological_order(g: &DependencyDigraph) -> Option<Vec<PropLetter>> {
    let mut nodes: BTreeSet<PropLetter> = g.vertices.clone();
    for (a, b) in &g.edges {
        nodes.insert(a.clone());
        nodes.insert(b.clone());
    }
    let mut indegree: BTreeMap<&PropLetter, usize> = nodes.iter().map(|v| (v, 0)).collect();
    for (_, b) in &g.edges {
        *indegree.get_mut(b).unwrap() += 1;
    }
    let mut ready: BTreeSet<&PropLetter> = indegree.iter().filter(|(_, d)| **d == 0).map(|(v, _)| *v).collect();
    let mut order = Vec::with_capacity(nodes.len());
    while let Some(v) = ready.pop_first() {
        order.push(v.clone());
        for (_, b) in g.edges.iter().filter(|(a, _)| a == v) {
            let d = indegree.get_mut(b).unwrap();
            *d -= 1;
            if *d == 0 {
                ready.insert(b);
            }
        }
    }
    (order.len() == nodes.len()).then_some(order)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SyntacticClass {
    Closed,
    Uniform,
    VSSI,
    SI,
    AII,
    AtomicRegularImp,
    SF,
    AIF,
    Unclassified,
}

impl SyntacticClass {
    /// Classes whose members are implications `antecedent → positive`.
    pub fn is_implication_class(self) -> bool {
        matches!(self, Self::VSSI | Self::SI | Self::AII | Self::AtomicRegularImp)
    }
}

impl fmt::Display for SyntacticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Which implication class an antecedent shape supports.
fn antecedent_class(d: &Decomposition, g: &DependencyDigraph) -> SyntacticClass {
    let chis: Vec<_> = d.chis().map(|(_, c)| c).collect();
    if chis.iter().all(|c| c.rho.is_empty() && c.k == 0) {
        SyntacticClass::VSSI
    } else if chis.iter().all(|c| c.rho.is_empty()) {
        SyntacticClass::SI
    } else if g.is_acyclic() {
        SyntacticClass::AII
    } else {
        SyntacticClass::AtomicRegularImp
    }
}

/// Everything learned about a formula's syntactic shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub input: ModalFormula,
    pub class: SyntacticClass,
    /// For implication classes: whether the antecedent avoids `∨` outside
    /// negative formulas. For SF/AIF: the same for the negated antecedent.
    pub definite: bool,
    pub polarity: BTreeMap<PropLetter, Polarity>,
    /// The implication antecedent, or for SF/AIF the negated antecedent.
    pub antecedent: Option<ModalFormula>,
    pub consequent: Option<ModalFormula>,
    pub decomposition: Option<Decomposition>,
    pub digraph: Option<DependencyDigraph>,
    pub order: Option<Vec<PropLetter>>,
    pub definite_conjuncts: Option<usize>,
    pub note: Option<String>,
}

pub const NO_ELEMENTARITY_CLAIM: &str =
    "no elementarity claim: the formula is outside the supported classes, which says nothing about whether it has a first-order correspondent";

impl ClassificationReport {
    fn bare(f: &ModalFormula, class: SyntacticClass) -> Self {
        ClassificationReport {
            input: f.clone(),
            class,
            definite: false,
            polarity: polarity_map(f),
            antecedent: None,
            consequent: None,
            decomposition: None,
            digraph: None,
            order: None,
            definite_conjuncts: None,
            note: None,
        }
    }

    fn with_antecedent(mut self, antecedent: &ModalFormula, consequent: Option<&ModalFormula>, d: Decomposition) -> Self {
        let g = DependencyDigraph::from_box_formulas(d.chis().map(|(_, c)| c));
        self.definite = d.is_definite();
        self.order = topological_order(&g);
        self.antecedent = Some(antecedent.clone());
        self.consequent = consequent.cloned();
        let imp = build::implies(antecedent.clone(), consequent.cloned().unwrap_or(ModalFormula::Bottom));
        self.definite_conjuncts =
            crate::normalize::to_definite_implications_with(&imp, &d, crate::normalize::DEFAULT_CONJUNCT_CAP)
                .ok()
                .map(|v| v.len());
        self.digraph = Some(g);
        self.decomposition = Some(d);
        self
    }
}

/// Assigns the most specific class.
pub fn classify(f: &ModalFormula) -> ClassificationReport {
    let pol = polarity_map(f);
    if pol.is_empty() {
        return ClassificationReport::bare(f, SyntacticClass::Closed);
    }
    if pol.values().all(|p| *p != Polarity::Both) {
        return ClassificationReport::bare(f, SyntacticClass::Uniform);
    }
    if let ModalFormula::Implies(a, c) = f {
        if is_positive_formula(c) {
            if let Ok(d) = decompose_antecedent(a) {
                let g = DependencyDigraph::from_box_formulas(d.chis().map(|(_, c)| c));
                let class = antecedent_class(&d, &g);
                return ClassificationReport::bare(f, class).with_antecedent(a, Some(c), d);
            }
        }
    }
    if let Ok(neg) = crate::normalize::negate_to_antecedent(f) {
        if let Ok(d) = decompose_antecedent(&neg) {
            let g = DependencyDigraph::from_box_formulas(d.chis().map(|(_, c)| c));
            let class = match antecedent_class(&d, &g) {
                SyntacticClass::VSSI | SyntacticClass::SI => Some(SyntacticClass::SF),
                SyntacticClass::AII => Some(SyntacticClass::AIF),
                _ => None,
            };
            if let Some(class) = class {
                return ClassificationReport::bare(f, class).with_antecedent(&neg, None, d);
            }
        }
    }
    let mut r = ClassificationReport::bare(f, SyntacticClass::Unclassified);
    r.note = Some(NO_ELEMENTARITY_CLAIM.to_string());
    r
}

impl fmt::Display for ClassificationReport {
    /// Line-oriented text report.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "input: {}", self.input)?;
        writeln!(f, "class: {}", self.class)?;
        let pol: Vec<_> = self.polarity.iter().map(|(p, v)| format!("{p}={}", v.label())).collect();
        writeln!(f, "polarity: {}", pol.join(" "))?;
        if let Some(d) = &self.decomposition {
            writeln!(f, "definite: {}", self.definite)?;
            let label = if self.consequent.is_some() { "antecedent" } else { "negated_antecedent" };
            writeln!(f, "{label}: {}", self.antecedent.as_ref().unwrap())?;
            if let Some(c) = &self.consequent {
                writeln!(f, "consequent: {c}")?;
            }
            writeln!(f, "skeleton: {}", d.skeleton)?;
            writeln!(f, "slots:")?;
            for (i, s) in d.slots.iter().enumerate() {
                match &s.content {
                    SlotContent::Chi(c) => {
                        let rho: Vec<_> = c.rho.iter().map(|p| p.to_string()).collect();
                        writeln!(f, "  #{i} chi head={} k={} rho=[{}] : {}", c.head, c.k, rho.join(","), s.formula)?
                    }
                    SlotContent::Gamma => writeln!(f, "  #{i} gamma : {}", s.formula)?,
                }
            }
            if let Some(g) = &self.digraph {
                writeln!(f, "digraph: {g}")?;
            }
            match &self.order {
                Some(o) => {
                    let o: Vec<_> = o.iter().map(|p| p.to_string()).collect();
                    writeln!(f, "order: [{}]", o.join(", "))?
                }
                None => writeln!(f, "order: none (cycle)")?,
            }
            match self.definite_conjuncts {
                Some(n) => writeln!(f, "definite_conjuncts: {n}")?,
                None => writeln!(f, "definite_conjuncts: over cap")?,
            }
        }
        if let Some(note) = &self.note {
            writeln!(f, "note: {note}")?;
        }
        Ok(())
    }
}
