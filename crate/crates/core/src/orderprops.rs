//! Order-theoretic properties of set operations on the powerset algebra of a
//! finite frame: `m̄`-additivity, complete operators, adjoints, residuals and
//! the relations realizing them. Every candidate is computed pointwise and
//! then checked exhaustively.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::classify::{decompose_atomic_box_formula, is_negative_formula, AtomicBoxFormula, ClassificationReport, Skeleton, SlotContent};
use crate::error::{Error, Result};
use crate::formula::{ModalFormula, PropLetter};
use crate::semantics::{CompiledModal, Frame, Valuation, WorldSet};

/// Largest frame accepted by the exhaustive order checks.
pub const MAX_ORDER_WORLDS: usize = 5;
/// Largest frame accepted by the meet-preservation and residual checks.
pub const MAX_RESIDUAL_WORLDS: usize = 4;
/// Limit on `|W| · arity` for sweeps over all argument tuples.
pub const MAX_TUPLE_BITS: usize = 16;

type SetMap = Arc<dyn Fn(&[WorldSet]) -> WorldSet + Send + Sync>;

/// A map `P(W)^arity → P(W)` on the subsets of a frame's worlds.
#[derive(Clone)]
pub struct SetFunction {
    frame: Frame,
    arity: usize,
    eval: SetMap,
}

impl fmt::Debug for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetFunction").field("frame", &self.frame.to_string()).field("arity", &self.arity).finish()
    }
}

impl SetFunction {
    pub fn new(frame: &Frame, arity: usize, eval: impl Fn(&[WorldSet]) -> WorldSet + Send + Sync + 'static) -> Self {
        SetFunction { frame: frame.clone(), arity, eval: Arc::new(eval) }
    }

    /// `⟦f⟧` as a function of `args`; every other letter takes its value
    /// from `params`, or `∅` when absent.
    pub fn from_formula(f: &ModalFormula, frame: &Frame, args: &[PropLetter], params: &Valuation) -> Self {
        let mut letters = args.to_vec();
        letters.extend(f.prop_letters().into_iter().filter(|p| !args.contains(p)));
        let fixed: Vec<WorldSet> = letters[args.len()..].iter().map(|p| params.get(p).copied().unwrap_or_default()).collect();
        let compiled = CompiledModal::with_letters(f, letters);
        let fr = frame.clone();
        SetFunction::new(frame, args.len(), move |xs| {
            let mut vals = xs.to_vec();
            vals.extend_from_slice(&fixed);
            compiled.extension(&fr, &vals)
        })
    }

    /// The function whose value at the tuple with code `c` is `table[c]`;
    /// see [`SetFunction::table`] for the coding.
    pub fn tabulated(frame: &Frame, arity: usize, table: Vec<WorldSet>) -> Self {
        assert_eq!(table.len(), 1 << (frame.size() * arity), "table size does not match arity");
        let n = frame.size();
        SetFunction::new(frame, arity, move |xs| table[encode(xs, n)])
    }

    pub fn identity(frame: &Frame) -> Self {
        SetFunction::new(frame, 1, |xs| xs[0])
    }

    pub fn constant(frame: &Frame, arity: usize, value: WorldSet) -> Self {
        SetFunction::new(frame, arity, move |_| value)
    }

    /// `X ↦ m_R(X)`.
    pub fn diamond(frame: &Frame) -> Self {
        let fr = frame.clone();
        SetFunction::new(frame, 1, move |xs| fr.m_r(xs[0]))
    }

    /// `X ↦ l_R(X)`.
    pub fn boxed(frame: &Frame) -> Self {
        let fr = frame.clone();
        SetFunction::new(frame, 1, move |xs| fr.l_r(xs[0]))
    }

    /// `X ↦ l_R^k(X)`, the meaning of `□^k p`.
    pub fn box_k(frame: &Frame, k: usize) -> Self {
        let fr = frame.clone();
        SetFunction::new(frame, 1, move |xs| (0..k).fold(xs[0], |acc, _| fr.l_r(acc)))
    }

    /// `X ↦ R^k[X]`.
    pub fn image_k(frame: &Frame, k: usize) -> Self {
        let fr = frame.clone();
        SetFunction::new(frame, 1, move |xs| fr.image_k(k, xs[0]))
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn eval(&self, xs: &[WorldSet]) -> WorldSet {
        debug_assert_eq!(xs.len(), self.arity);
        (self.eval)(xs)
    }

    /// All values, indexed by tuple code: coordinate `i` occupies bits
    /// `i·n .. (i+1)·n` of the code.
    pub fn table(&self) -> Result<Vec<WorldSet>> {
        let n = self.frame.size();
        check_bits(n * self.arity)?;
        Ok(tuples(n, self.arity).map(|xs| self.eval(&xs)).collect())
    }

    /// Whether both functions agree on every argument tuple.
    pub fn same_as(&self, other: &SetFunction) -> Result<bool> {
        if self.arity != other.arity || self.frame.size() != other.frame.size() {
            return Ok(false);
        }
        check_bits(self.frame.size() * self.arity)?;
        Ok(tuples(self.frame.size(), self.arity).all(|xs| self.eval(&xs) == other.eval(&xs)))
    }
}

/// Outcome of an exhaustive property check. A counterexample carries the
/// argument tuple at which the property fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Check {
    Pass,
    Counterexample(Vec<WorldSet>),
}

impl Check {
    pub fn is_pass(&self) -> bool {
        matches!(self, Check::Pass)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Pass => f.write_str("pass"),
            Check::Counterexample(xs) => {
                f.write_str("fail at (")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn encode(xs: &[WorldSet], n: usize) -> usize {
    xs.iter().enumerate().fold(0, |acc, (i, x)| acc | (x.0 as usize) << (i * n))
}

fn decode(code: u64, n: usize, arity: usize) -> Vec<WorldSet> {
    let mask = (1u64 << n) - 1;
    (0..arity).map(|i| WorldSet((code >> (i * n) & mask) as u32)).collect()
}

/// Every tuple in `P(W)^arity`, in increasing code order.
fn tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<WorldSet>> {
    (0..1u64 << (n * arity)).map(move |c| decode(c, n, arity))
}

fn check_bits(bits: usize) -> Result<()> {
    if bits > MAX_TUPLE_BITS {
        return Err(Error::ResourceCap { what: "argument tuple bits (worlds × arity)", requested: bits, limit: MAX_TUPLE_BITS });
    }
    Ok(())
}

fn check_worlds(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::ResourceCap { what: "worlds for order checks", requested: n, limit });
    }
    Ok(())
}

/// Union of `f` over the tuples `Z̄` with `Z_i ⊆ X_i`, `1 ≤ |Z_i| ≤ m_i`.
fn small_union(f: &SetFunction, xs: &[WorldSet], mbar: &[usize]) -> WorldSet {
    fn go(f: &SetFunction, xs: &[WorldSet], mbar: &[usize], zs: &mut Vec<WorldSet>) -> WorldSet {
        let i = zs.len();
        if i == xs.len() {
            return f.eval(zs);
        }
        let mut acc = WorldSet::EMPTY;
        for z in xs[i].subsets().filter(|z| !z.is_empty() && z.len() <= mbar[i]) {
            zs.push(z);
            acc = acc.union(go(f, xs, mbar, zs));
            zs.pop();
        }
        acc
    }
    if xs.iter().any(|x| x.is_empty()) {
        return WorldSet::EMPTY;
    }
    go(f, xs, mbar, &mut Vec::with_capacity(xs.len()))
}

/// `f(X̄) = ⋃{f(Z̄) | Z_i ⊆ X_i, |Z_i| ≤ m_i}` for every `X̄`, where the union
/// is empty as soon as some `X_i` is empty.
pub fn is_m_additive(f: &SetFunction, mbar: &[usize]) -> Result<Check> {
    assert_eq!(mbar.len(), f.arity, "one bound per coordinate");
    let n = f.frame.size();
    check_worlds(n, MAX_ORDER_WORLDS)?;
    check_bits(n * f.arity)?;
    for xs in tuples(n, f.arity) {
        if f.eval(&xs) != small_union(f, &xs, mbar) {
            return Ok(Check::Counterexample(xs));
        }
    }
    Ok(Check::Pass)
}

/// Families of at most three subsets of `W`, as nondecreasing index lists.
fn small_families(n: usize) -> impl Iterator<Item = Vec<WorldSet>> {
    let m = 1u32 << n;
    let empty = std::iter::once(Vec::new());
    let ones = (0..m).map(|a| vec![WorldSet(a)]);
    let twos = (0..m).flat_map(move |a| (a..m).map(move |b| vec![WorldSet(a), WorldSet(b)]));
    let threes = (0..m).flat_map(move |a| (a..m).flat_map(move |b| (b..m).map(move |c| vec![WorldSet(a), WorldSet(b), WorldSet(c)])));
    empty.chain(ones).chain(twos).chain(threes)
}

/// `1̄`-additivity together with union preservation in each coordinate for
/// every family of at most three sets, including the empty family.
pub fn is_complete_operator(f: &SetFunction) -> Result<Check> {
    let verdict = is_m_additive(f, &vec![1; f.arity])?;
    if !verdict.is_pass() {
        return Ok(verdict);
    }
    let n = f.frame.size();
    for i in 0..f.arity {
        for base in tuples(n, f.arity).filter(|xs| xs[i].is_empty()) {
            for fam in small_families(n) {
                let mut xs = base.clone();
                xs[i] = fam.iter().fold(WorldSet::EMPTY, |a, &y| a.union(y));
                let lhs = f.eval(&xs);
                let rhs = fam.iter().fold(WorldSet::EMPTY, |acc, &y| {
                    let mut ys = base.clone();
                    ys[i] = y;
                    acc.union(f.eval(&ys))
                });
                if lhs != rhs {
                    return Ok(Check::Counterexample(xs));
                }
            }
        }
    }
    Ok(Check::Pass)
}

/// Order preservation in every coordinate.
pub fn is_order_preserving(f: &SetFunction) -> Result<Check> {
    monotone(f, true)
}

/// Order reversal in every coordinate.
pub fn is_order_reversing(f: &SetFunction) -> Result<Check> {
    monotone(f, false)
}

fn monotone(f: &SetFunction, up: bool) -> Result<Check> {
    let n = f.frame.size();
    check_bits(n * f.arity)?;
    // Single-world steps generate the pointwise order.
    for xs in tuples(n, f.arity) {
        let here = f.eval(&xs);
        for i in 0..f.arity {
            for w in (0..n).filter(|&w| !xs[i].contains(w)) {
                let mut ys = xs.clone();
                ys[i] = ys[i].union(WorldSet::singleton(w));
                let there = f.eval(&ys);
                let ok = if up { here.is_subset(there) } else { there.is_subset(here) };
                if !ok {
                    return Ok(Check::Counterexample(xs));
                }
            }
        }
    }
    Ok(Check::Pass)
}

fn unary(f: &SetFunction) {
    assert_eq!(f.arity, 1, "expected a unary set function");
}

/// The `g` with `f(X) ⊆ Y ⟺ X ⊆ g(Y)`, if one exists.
pub fn right_adjoint_of(f: &SetFunction) -> Result<Option<SetFunction>> {
    unary(f);
    let n = f.frame.size();
    check_worlds(n, MAX_ORDER_WORLDS)?;
    let fx: Vec<WorldSet> = WorldSet::all(n).map(|x| f.eval(&[x])).collect();
    let g: Vec<WorldSet> = WorldSet::all(n)
        .map(|y| WorldSet::all(n).filter(|x| fx[x.0 as usize].is_subset(y)).fold(WorldSet::EMPTY, WorldSet::union))
        .collect();
    let holds = WorldSet::all(n)
        .all(|x| WorldSet::all(n).all(|y| fx[x.0 as usize].is_subset(y) == x.is_subset(g[y.0 as usize])));
    Ok(holds.then(|| SetFunction::tabulated(&f.frame, 1, g)))
}

/// The `f` with `f(X) ⊆ Y ⟺ X ⊆ g(Y)`, if one exists.
pub fn left_adjoint_of(g: &SetFunction) -> Result<Option<SetFunction>> {
    unary(g);
    let n = g.frame.size();
    check_worlds(n, MAX_ORDER_WORLDS)?;
    let gy: Vec<WorldSet> = WorldSet::all(n).map(|y| g.eval(&[y])).collect();
    let full = WorldSet::full(n);
    let f: Vec<WorldSet> = WorldSet::all(n)
        .map(|x| WorldSet::all(n).filter(|y| x.is_subset(gy[y.0 as usize])).fold(full, WorldSet::inter))
        .collect();
    let holds = WorldSet::all(n)
        .all(|x| WorldSet::all(n).all(|y| f[x.0 as usize].is_subset(y) == x.is_subset(gy[y.0 as usize])));
    Ok(holds.then(|| SetFunction::tabulated(&g.frame, 1, f)))
}

/// `g(⋂F) = ⋂g[F]` for every family `F` of at most three sets, for the
/// empty family (`g(W) = W`) and for the family of all subsets. The witness
/// is the meet at which the equation fails.
pub fn is_completely_meet_preserving(g: &SetFunction) -> Result<Check> {
    unary(g);
    let n = g.frame.size();
    check_worlds(n, MAX_RESIDUAL_WORLDS)?;
    let full = WorldSet::full(n);
    let gy: Vec<WorldSet> = WorldSet::all(n).map(|y| g.eval(&[y])).collect();
    let all_meet = gy.iter().fold(full, |a, &b| a.inter(b));
    if gy[0] != all_meet {
        return Ok(Check::Counterexample(vec![WorldSet::EMPTY]));
    }
    for fam in small_families(n) {
        let meet = fam.iter().fold(full, |a, &y| a.inter(y));
        let rhs = fam.iter().fold(full, |a, &y| a.inter(gy[y.0 as usize]));
        if gy[meet.0 as usize] != rhs {
            return Ok(Check::Counterexample(vec![meet]));
        }
    }
    Ok(Check::Pass)
}

/// The relation `S` with `g = l_S`, read off as `S(x, z) ⟺ x ∉ g(W∖{z})`.
pub fn extract_relation(g: &SetFunction) -> Result<Frame> {
    if !is_completely_meet_preserving(g)?.is_pass() {
        return Err(Error::NotMeetPreserving);
    }
    let n = g.frame.size();
    let full = WorldSet::full(n);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|z| {
            let gz = g.eval(&[full.minus(WorldSet::singleton(z))]);
            (0..n).filter(move |&x| !gz.contains(x)).map(move |x| (x, z))
        })
        .collect();
    let s = Frame::new(n, edges);
    if !WorldSet::all(n).all(|y| g.eval(&[y]) == s.l_r(y)) {
        return Err(Error::NotMeetPreserving);
    }
    Ok(s)
}

/// The residual of `f` in coordinate `h`: the map `g_h` of the same arity,
/// with `Y` in position `h`, such that `f(X̄) ⊆ Y ⟺ X_h ⊆ g_h(X̄[h := Y])`.
pub fn residual(f: &SetFunction, h: usize) -> Result<Option<SetFunction>> {
    assert!(h < f.arity, "coordinate out of range");
    let n = f.frame.size();
    check_worlds(n, MAX_RESIDUAL_WORLDS)?;
    check_bits(n * (f.arity + 1))?;
    let table: Vec<WorldSet> = tuples(n, f.arity)
        .map(|ys| {
            let y = ys[h];
            let mut xs = ys.clone();
            WorldSet::all(n)
                .filter(|&x| {
                    xs[h] = x;
                    f.eval(&xs).is_subset(y)
                })
                .fold(WorldSet::EMPTY, WorldSet::union)
        })
        .collect();
    for xs in tuples(n, f.arity) {
        let fx = f.eval(&xs);
        let mut ys = xs.clone();
        for y in WorldSet::all(n) {
            ys[h] = y;
            if fx.is_subset(y) != xs[h].is_subset(table[encode(&ys, n)]) {
                return Ok(None);
            }
        }
    }
    Ok(Some(SetFunction::tabulated(&f.frame, f.arity, table)))
}

/// [`residual`] in the last coordinate.
pub fn residual_in_last(f: &SetFunction) -> Result<Option<SetFunction>> {
    residual(f, f.arity - 1)
}

/// A relation of arity `j + 1` acting as a `j`-ary direct-image map:
/// `S[X̄] = {y | ∃x̄ ∈ X̄. S(x̄, y)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectImageRelation {
    pub worlds: usize,
    pub tuples: BTreeSet<Vec<usize>>,
}

impl DirectImageRelation {
    pub fn image(&self, xs: &[WorldSet]) -> WorldSet {
        self.tuples
            .iter()
            .filter(|t| t.iter().zip(xs).all(|(&w, x)| x.contains(w)))
            .fold(WorldSet::EMPTY, |acc, t| acc.union(WorldSet::singleton(*t.last().unwrap())))
    }

    /// The binary relation as a frame, when the arity is two.
    pub fn to_frame(&self) -> Option<Frame> {
        self.tuples.iter().all(|t| t.len() == 2).then(|| Frame::new(self.worlds, self.tuples.iter().map(|t| (t[0], t[1]))))
    }
}

impl fmt::Display for DirectImageRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, t) in self.tuples.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let parts: Vec<String> = t.iter().map(|w| w.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        f.write_str("}")
    }
}

/// The relation `S` with `f(X̄) = S[X̄]`, where
/// `S(x̄, y) ⟺ y ∈ f({x_1}, …, {x_j})`. Fails unless `f` has a residual in
/// every coordinate.
pub fn relation_from_residuated(f: &SetFunction) -> Result<DirectImageRelation> {
    for h in 0..f.arity {
        if residual(f, h)?.is_none() {
            return Err(Error::NotResiduated(h));
        }
    }
    let n = f.frame.size();
    let mut out = BTreeSet::new();
    for code in 0..n.pow(f.arity as u32) {
        let xs: Vec<usize> = (0..f.arity).map(|i| code / n.pow(i as u32) % n).collect();
        let singles: Vec<WorldSet> = xs.iter().map(|&x| WorldSet::singleton(x)).collect();
        for y in f.eval(&singles).iter() {
            let mut t = xs.clone();
            t.push(y);
            out.insert(t);
        }
    }
    let s = DirectImageRelation { worlds: n, tuples: out };
    // A map residuated in each coordinate preserves all joins coordinatewise,
    // so this only fails on a broken residual check.
    if let Some(bad) = tuples(n, f.arity).find(|xs| f.eval(xs) != s.image(xs)) {
        let h = bad.iter().position(|x| x.len() > 1).unwrap_or(0);
        return Err(Error::NotResiduated(h));
    }
    Ok(s)
}

// ---------------------------------------------------------------------------
// strategy preconditions

/// The order-theoretic conditions behind the correspondence strategies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Condition {
    /// The antecedent is `m̄`-additive in its letters, `m_i` counting
    /// occurrences (antecedents whose box-formulas are bare letters).
    LetterAdditive,
    /// The skeleton is `1̄`-additive in its box-formula slots, for every
    /// value of the negative slots.
    SkeletonAdditive,
    /// Each box-formula, as a map of its head, has a left adjoint for every
    /// value of its other letters.
    BoxFormulaRightAdjoint,
    /// That left adjoint is the relational map `R^k[U_h ∩ R[… U_1 ∩ R[X]]]`.
    BoxFormulaPathForm,
    /// Each negative slot is order-reversing.
    NegativeAntitone,
    /// The consequent is order-preserving.
    ConsequentMonotone,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::LetterAdditive => "letter-additive",
            Condition::SkeletonAdditive => "skeleton-additive",
            Condition::BoxFormulaRightAdjoint => "box-formula-right-adjoint",
            Condition::BoxFormulaPathForm => "box-formula-path-form",
            Condition::NegativeAntitone => "negative-antitone",
            Condition::ConsequentMonotone => "consequent-monotone",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionResult {
    pub condition: Condition,
    /// The subformula the condition is about.
    pub subject: String,
    pub check: Check,
    pub detail: Option<String>,
}

/// Per-condition results on one frame.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checklist {
    pub frame: Frame,
    pub items: Vec<ConditionResult>,
}

impl Checklist {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.check.is_pass())
    }

    pub fn get(&self, c: Condition) -> impl Iterator<Item = &ConditionResult> {
        self.items.iter().filter(move |i| i.condition == c)
    }
}

impl fmt::Display for Checklist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "frame: {}", self.frame)?;
        for item in &self.items {
            write!(f, "{} [{}]: {}", item.condition, item.subject, item.check)?;
            if let Some(d) = &item.detail {
                write!(f, " ({d})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A slot of the antecedent as seen by the checks. Box-formula candidates
/// that are not atomic box-formulas are treated as maps of their last
/// letter, with the other letters as parameters.
#[derive(Clone, Debug)]
enum SlotView {
    Atomic(AtomicBoxFormula),
    Candidate(ModalFormula, PropLetter),
    Negative(ModalFormula),
}

impl SlotView {
    fn formula(&self) -> ModalFormula {
        match self {
            SlotView::Atomic(c) => c.to_formula(),
            SlotView::Candidate(f, _) | SlotView::Negative(f) => f.clone(),
        }
    }
}

/// Splits along `∧`, `∨`, `◇` down to negative formulas and anything else.
fn loose_decompose(f: &ModalFormula, slots: &mut Vec<SlotView>) -> Skeleton {
    let mut push = |v: SlotView| {
        slots.push(v);
        Skeleton::Slot(slots.len() - 1)
    };
    if is_negative_formula(f) {
        return push(SlotView::Negative(f.clone()));
    }
    if let Some(c) = decompose_atomic_box_formula(f) {
        return push(SlotView::Atomic(c));
    }
    match f {
        ModalFormula::And(a, b) => Skeleton::And(Box::new(loose_decompose(a, slots)), Box::new(loose_decompose(b, slots))),
        ModalFormula::Or(a, b) => Skeleton::Or(Box::new(loose_decompose(a, slots)), Box::new(loose_decompose(b, slots))),
        ModalFormula::Dia(a) => Skeleton::Dia(Box::new(loose_decompose(a, slots))),
        _ => {
            let head = f.prop_letters().pop().expect("a formula with no letters is negative");
            push(SlotView::Candidate(f.clone(), head))
        }
    }
}

fn skeleton_eval(s: &Skeleton, frame: &Frame, slots: &[WorldSet]) -> WorldSet {
    match s {
        Skeleton::Slot(i) => slots[*i],
        Skeleton::And(a, b) => skeleton_eval(a, frame, slots).inter(skeleton_eval(b, frame, slots)),
        Skeleton::Or(a, b) => skeleton_eval(a, frame, slots).union(skeleton_eval(b, frame, slots)),
        Skeleton::Dia(a) => frame.m_r(skeleton_eval(a, frame, slots)),
    }
}

/// `⟦□(ρ¹ → □(… □(ρʰ → □^k q)…))⟧` with `ρ^j := us[j]`, `q := y`.
fn atomic_box_map(frame: &Frame, k: usize, us: &[WorldSet], y: WorldSet) -> WorldSet {
    let n = frame.size();
    let inner = (0..k).fold(y, |acc, _| frame.l_r(acc));
    us.iter().rev().fold(inner, |acc, u| frame.l_r(u.complement(n).union(acc)))
}

/// `R^k[U_h ∩ R[… U_1 ∩ R[X]]]`.
fn path_map(frame: &Frame, k: usize, us: &[WorldSet], x: WorldSet) -> WorldSet {
    frame.image_k(k, us.iter().fold(x, |acc, &u| u.inter(frame.image(acc))))
}

fn path_text(c: &AtomicBoxFormula) -> String {
    let inner = c.rho.iter().fold("X".to_string(), |acc, u| format!("{u} ∩ R[{acc}]"));
    match c.k {
        0 => inner,
        1 => format!("R[{inner}]"),
        k => format!("R^{k}[{inner}]"),
    }
}

fn all_params(n: usize, count: usize) -> Result<impl Iterator<Item = Vec<WorldSet>>> {
    check_bits(n * count)?;
    Ok(tuples(n, count))
}

/// Evaluates the conditions under which the strategy for `imp` is sound, on
/// one frame. Uses the decomposition in `report` when there is one and a
/// loose split of the antecedent otherwise.
pub fn validate_conditions(imp: &ModalFormula, report: &ClassificationReport, frame: &Frame) -> Result<Checklist> {
    let n = frame.size();
    check_worlds(n, MAX_ORDER_WORLDS)?;
    let (antecedent, consequent) = match (&report.antecedent, imp) {
        (Some(a), _) => (Some(a.clone()), report.consequent.clone().unwrap_or(ModalFormula::Bottom)),
        (None, ModalFormula::Implies(a, c)) => (Some((**a).clone()), (**c).clone()),
        (None, other) => (None, other.clone()),
    };
    let mut items = Vec::new();

    if let Some(antecedent) = antecedent {
        let mut slots = Vec::new();
        let skeleton = match &report.decomposition {
            Some(d) => {
                slots = d
                    .slots
                    .iter()
                    .map(|s| match &s.content {
                        SlotContent::Chi(c) => SlotView::Atomic(c.clone()),
                        SlotContent::Gamma => SlotView::Negative(s.formula.clone()),
                    })
                    .collect();
                d.skeleton.clone()
            }
            None => loose_decompose(&antecedent, &mut slots),
        };
        let boxes: Vec<usize> = (0..slots.len()).filter(|&i| !matches!(slots[i], SlotView::Negative(_))).collect();
        let negs: Vec<usize> = (0..slots.len()).filter(|&i| matches!(slots[i], SlotView::Negative(_))).collect();

        if !boxes.is_empty() {
            items.push(skeleton_additivity(frame, &skeleton, &slots, &boxes, &negs, &antecedent)?);
        }
        let bare: Option<Vec<PropLetter>> = boxes
            .iter()
            .map(|&i| match &slots[i] {
                SlotView::Atomic(c) if c.rho.is_empty() && c.k == 0 => Some(c.head.clone()),
                _ => None,
            })
            .collect();
        if let Some(heads) = bare.filter(|h| !h.is_empty()) {
            items.push(letter_additivity(frame, &skeleton, &slots, &boxes, &negs, &heads, &antecedent)?);
        }
        for &i in &boxes {
            items.extend(box_formula_conditions(frame, i, &slots[i])?);
        }
        for &i in &negs {
            let g = slots[i].formula();
            let f = SetFunction::from_formula(&g, frame, &g.prop_letters(), &Valuation::new());
            items.push(ConditionResult {
                condition: Condition::NegativeAntitone,
                subject: format!("#{i} {g}"),
                check: is_order_reversing(&f)?,
                detail: None,
            });
        }
    }
    let f = SetFunction::from_formula(&consequent, frame, &consequent.prop_letters(), &Valuation::new());
    items.push(ConditionResult {
        condition: Condition::ConsequentMonotone,
        subject: consequent.to_string(),
        check: is_order_preserving(&f)?,
        detail: None,
    });
    Ok(Checklist { frame: frame.clone(), items })
}

fn skeleton_additivity(
    frame: &Frame,
    skeleton: &Skeleton,
    slots: &[SlotView],
    boxes: &[usize],
    negs: &[usize],
    antecedent: &ModalFormula,
) -> Result<ConditionResult> {
    let n = frame.size();
    check_bits(n * (boxes.len() + negs.len()))?;
    let mut check = Check::Pass;
    for params in all_params(n, negs.len())? {
        let (sk, fr, bx, ng) = (skeleton.clone(), frame.clone(), boxes.to_vec(), negs.to_vec());
        let total = slots.len();
        let f = SetFunction::new(frame, boxes.len(), move |xs| {
            let mut vals = vec![WorldSet::EMPTY; total];
            bx.iter().zip(xs).for_each(|(&i, &x)| vals[i] = x);
            ng.iter().zip(&params).for_each(|(&i, &p)| vals[i] = p);
            skeleton_eval(&sk, &fr, &vals)
        });
        check = is_m_additive(&f, &vec![1; boxes.len()])?;
        if !check.is_pass() {
            break;
        }
    }
    Ok(ConditionResult {
        condition: Condition::SkeletonAdditive,
        subject: antecedent.to_string(),
        check,
        detail: Some(format!("{} box-formula slot(s), {} negative slot(s)", boxes.len(), negs.len())),
    })
}

fn letter_additivity(
    frame: &Frame,
    skeleton: &Skeleton,
    slots: &[SlotView],
    boxes: &[usize],
    negs: &[usize],
    heads: &[PropLetter],
    antecedent: &ModalFormula,
) -> Result<ConditionResult> {
    let mut letters: Vec<PropLetter> = Vec::new();
    for h in heads {
        if !letters.contains(h) {
            letters.push(h.clone());
        }
    }
    let mbar: Vec<usize> = letters.iter().map(|p| heads.iter().filter(|h| *h == p).count()).collect();
    let slot_letter: Vec<usize> = heads.iter().map(|h| letters.iter().position(|p| p == h).unwrap()).collect();
    let n = frame.size();
    check_bits(n * (letters.len() + negs.len()))?;
    let mut check = Check::Pass;
    for params in all_params(n, negs.len())? {
        let (sk, fr, bx, ng, sl) = (skeleton.clone(), frame.clone(), boxes.to_vec(), negs.to_vec(), slot_letter.clone());
        let total = slots.len();
        let f = SetFunction::new(frame, letters.len(), move |xs| {
            let mut vals = vec![WorldSet::EMPTY; total];
            bx.iter().zip(&sl).for_each(|(&i, &l)| vals[i] = xs[l]);
            ng.iter().zip(&params).for_each(|(&i, &p)| vals[i] = p);
            skeleton_eval(&sk, &fr, &vals)
        });
        check = is_m_additive(&f, &mbar)?;
        if !check.is_pass() {
            break;
        }
    }
    let bounds: Vec<String> = letters.iter().zip(&mbar).map(|(p, m)| format!("{p}:{m}")).collect();
    Ok(ConditionResult {
        condition: Condition::LetterAdditive,
        subject: antecedent.to_string(),
        check,
        detail: Some(format!("m = [{}]", bounds.join(", "))),
    })
}

fn box_formula_conditions(frame: &Frame, index: usize, slot: &SlotView) -> Result<Vec<ConditionResult>> {
    let n = frame.size();
    let subject = format!("#{index} {}", slot.formula());
    match slot {
        SlotView::Atomic(c) => {
            let (mut adjoint, mut path) = (Check::Pass, Check::Pass);
            for us in all_params(n, c.rho.len())? {
                let (fr, k, ps) = (frame.clone(), c.k, us.clone());
                let g = SetFunction::new(frame, 1, move |ys| atomic_box_map(&fr, k, &ps, ys[0]));
                match left_adjoint_of(&g)? {
                    None => {
                        adjoint = Check::Counterexample(us.clone());
                        path = Check::Counterexample(us);
                        break;
                    }
                    Some(f) => {
                        if path.is_pass() && !WorldSet::all(n).all(|x| f.eval(&[x]) == path_map(frame, c.k, &us, x)) {
                            path = Check::Counterexample(us);
                        }
                    }
                }
            }
            Ok(vec![
                ConditionResult {
                    condition: Condition::BoxFormulaRightAdjoint,
                    subject: subject.clone(),
                    check: adjoint,
                    detail: Some(format!("map of {}", c.head)),
                },
                ConditionResult {
                    condition: Condition::BoxFormulaPathForm,
                    subject,
                    check: path,
                    detail: Some(format!("left adjoint X ↦ {}", path_text(c))),
                },
            ])
        }
        SlotView::Candidate(f, head) => {
            let others: Vec<PropLetter> = f.prop_letters().into_iter().filter(|p| p != head).collect();
            let mut check = Check::Pass;
            for us in all_params(n, others.len())? {
                let v: Valuation = others.iter().cloned().zip(us.iter().copied()).collect();
                let g = SetFunction::from_formula(f, frame, std::slice::from_ref(head), &v);
                if left_adjoint_of(&g)?.is_none() {
                    check = Check::Counterexample(us);
                    break;
                }
            }
            Ok(vec![ConditionResult {
                condition: Condition::BoxFormulaRightAdjoint,
                subject,
                check,
                detail: Some(format!("map of {head}; not an atomic box-formula")),
            }])
        }
        SlotView::Negative(_) => Ok(vec![]),
    }
}

/// Aggregate of [`validate_conditions`] over many frames: for each
/// condition and subject, the number of frames checked and the first
/// failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionSweep {
    pub condition: Condition,
    pub subject: String,
    pub frames: usize,
    pub first_failure: Option<(Frame, Check)>,
    pub detail: Option<String>,
}

impl fmt::Display for ConditionSweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: ", self.condition, self.subject)?;
        match &self.first_failure {
            None => write!(f, "pass on {} frames", self.frames)?,
            Some((frame, check)) => write!(f, "FAIL on frame {frame}: {check}")?,
        }
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

/// Runs [`validate_conditions`] on every frame of `frames` and merges the
/// results. Every frame yields the same list of conditions, so results are
/// merged by position.
pub fn validate_on_frames(
    imp: &ModalFormula,
    report: &ClassificationReport,
    frames: impl IntoIterator<Item = Frame>,
) -> Result<Vec<ConditionSweep>> {
    let mut out: Vec<ConditionSweep> = Vec::new();
    for frame in frames {
        let items = validate_conditions(imp, report, &frame)?.items;
        if out.is_empty() {
            out = items
                .iter()
                .map(|i| ConditionSweep {
                    condition: i.condition,
                    subject: i.subject.clone(),
                    frames: 0,
                    first_failure: None,
                    detail: i.detail.clone(),
                })
                .collect();
        }
        debug_assert_eq!(out.len(), items.len());
        for (entry, item) in out.iter_mut().zip(items) {
            entry.frames += 1;
            if entry.first_failure.is_none() && !item.check.is_pass() {
                entry.first_failure = Some((frame.clone(), item.check));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::parse::parse_modal;
    use crate::semantics::enumerate_frames;

    fn m(s: &str) -> ModalFormula {
        parse_modal(s).unwrap()
    }

    fn fr(s: &str) -> Frame {
        s.parse().unwrap()
    }

    fn of(text: &str, frame: &Frame) -> SetFunction {
        let f = m(text);
        SetFunction::from_formula(&f, frame, &f.prop_letters(), &Valuation::new())
    }

    fn frames_upto(n: usize) -> Vec<Frame> {
        (1..=n).flat_map(|k| enumerate_frames(k).unwrap()).collect()
    }

    #[test]
    fn additivity_examples() {
        for frame in frames_upto(3) {
            assert!(is_m_additive(&of("<>p", &frame), &[1]).unwrap().is_pass());
            assert!(is_m_additive(&of("p & <>p", &frame), &[2]).unwrap().is_pass());
        }
        let w = fr("3;0->1,1->2");
        let f = of("<>p & <><>p", &w);
        assert_eq!(is_m_additive(&f, &[1]).unwrap(), Check::Counterexample(vec![WorldSet::from_worlds([1, 2])]));
        assert!(is_m_additive(&f, &[2]).unwrap().is_pass());
    }

    #[test]
    fn complete_operators() {
        for frame in frames_upto(3) {
            assert!(is_complete_operator(&of("<>p", &frame)).unwrap().is_pass());
        }
        assert!(!is_complete_operator(&of("[]p", &fr("2;0->0,0->1"))).unwrap().is_pass());
        let and2 = of("<>p & q", &fr("2;0->1,1->1"));
        assert!(is_complete_operator(&and2).unwrap().is_pass());
    }

    #[test]
    fn adjoints() {
        for frame in frames_upto(3) {
            let g = right_adjoint_of(&SetFunction::diamond(&frame.inverse())).unwrap().unwrap();
            assert!(g.same_as(&SetFunction::boxed(&frame)).unwrap(), "{frame}");
            let f = left_adjoint_of(&SetFunction::boxed(&frame)).unwrap().unwrap();
            assert!(f.same_as(&SetFunction::image_k(&frame, 1)).unwrap(), "{frame}");
        }
        let one = fr("2;0->1");
        let id = right_adjoint_of(&SetFunction::identity(&one)).unwrap().unwrap();
        assert!(id.same_as(&SetFunction::identity(&one)).unwrap());
        assert!(right_adjoint_of(&of("[]p", &fr("2;0->0,0->1"))).unwrap().is_none());
    }

    #[test]
    fn meet_preservation_and_extraction() {
        for frame in frames_upto(3) {
            let l = SetFunction::boxed(&frame);
            assert!(is_completely_meet_preserving(&l).unwrap().is_pass());
            assert_eq!(extract_relation(&l).unwrap(), frame);
        }
        let d = fr("2;0->0,0->1");
        assert!(!is_completely_meet_preserving(&SetFunction::diamond(&d)).unwrap().is_pass());
        assert!(matches!(extract_relation(&SetFunction::diamond(&d)), Err(Error::NotMeetPreserving)));
        let full = SetFunction::constant(&d, 1, WorldSet::full(2));
        assert!(is_completely_meet_preserving(&full).unwrap().is_pass());
        assert_eq!(extract_relation(&full).unwrap(), Frame::new(2, []));
        let diag = extract_relation(&SetFunction::identity(&d)).unwrap();
        assert_eq!(diag, Frame::new(2, [(0, 0), (1, 1)]));
    }

    #[test]
    fn residuals() {
        let frame = fr("3;0->1,1->2,2->0,1->1");
        // f(U, X) = R[U ∩ R[X]] has residual ⟦□(p → □q)⟧ in X.
        let fr2 = frame.clone();
        let f = SetFunction::new(&frame, 2, move |xs| fr2.image(xs[0].inter(fr2.image(xs[1]))));
        let g = residual_in_last(&f).unwrap().unwrap();
        let chi = m("[](p -> []q)");
        let expected = SetFunction::from_formula(&chi, &frame, &[PropLetter::new("p"), PropLetter::new("q")], &Valuation::new());
        assert!(g.same_as(&expected).unwrap());
        let g = residual_in_last(&SetFunction::diamond(&frame)).unwrap().unwrap();
        assert!(g.same_as(&SetFunction::boxed(&frame.inverse())).unwrap());
        assert!(residual_in_last(&of("[]p", &fr("2;0->0,0->1"))).unwrap().is_none());
    }

    #[test]
    fn residuated_relations() {
        for frame in frames_upto(3) {
            let s = relation_from_residuated(&SetFunction::diamond(&frame.inverse())).unwrap();
            assert_eq!(s.to_frame().unwrap(), frame);
        }
        let frame = fr("3;");
        let meet = SetFunction::new(&frame, 2, |xs| xs[0].inter(xs[1]));
        let s = relation_from_residuated(&meet).unwrap();
        assert_eq!(s.tuples, (0..3).map(|a| vec![a, a, a]).collect());
        let empty = relation_from_residuated(&SetFunction::constant(&frame, 1, WorldSet::EMPTY)).unwrap();
        assert!(empty.tuples.is_empty());
        assert!(matches!(relation_from_residuated(&of("[]p", &fr("2;0->0,0->1"))), Err(Error::NotResiduated(0))));
    }

    #[test]
    fn box_composition() {
        // l_{R2} ∘ l_{R1} = l_S where S takes an R2 step and then an R1 step
        for (a, b) in [("3;0->1,1->2", "3;1->0,2->2"), ("3;0->0,0->2,2->1", "3;0->1,2->0,2->2")] {
            let (r1, r2) = (fr(a), fr(b));
            let comp = Frame::new(3, r2.edges().flat_map(|(x, y)| r1.successors(y).iter().map(move |z| (x, z))).collect::<Vec<_>>());
            for y in WorldSet::all(3) {
                assert_eq!(r2.l_r(r1.l_r(y)), comp.l_r(y));
            }
        }
    }

    #[test]
    fn conditions_on_examples() {
        for text in ["<>[]p & []q -> []<>(p & q)", "p & [](p -> q) -> <>q", "p & <>p -> []p"] {
            let f = m(text);
            let r = classify(&f);
            for frame in frames_upto(3) {
                let c = validate_conditions(&f, &r, &frame).unwrap();
                assert!(c.all_pass(), "{text} on {frame}:\n{c}");
            }
        }
        let f = m("p & <>p -> []p");
        let c = validate_conditions(&f, &classify(&f), &fr("2;0->1")).unwrap();
        let la = c.get(Condition::LetterAdditive).next().unwrap();
        assert_eq!(la.detail.as_deref(), Some("m = [p:2]"));
    }

    #[test]
    fn mckinsey_candidate_fails() {
        let f = m("[]<>p -> <>[]p");
        let sweep = validate_on_frames(&f, &classify(&f), frames_upto(3)).unwrap();
        let chi = sweep.iter().find(|s| s.condition == Condition::BoxFormulaRightAdjoint).unwrap();
        assert_eq!(chi.subject, "#0 []<>p");
        assert!(chi.first_failure.is_some());
    }

    #[test]
    fn path_form_detail() {
        let f = m("[]p -> p");
        let c = validate_conditions(&f, &classify(&f), &fr("2;0->1")).unwrap();
        let item = c.get(Condition::BoxFormulaPathForm).next().unwrap();
        assert!(item.check.is_pass());
        assert_eq!(item.detail.as_deref(), Some("left adjoint X ↦ R[X]"));
    }
}
