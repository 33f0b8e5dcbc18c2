//! Finite Kripke semantics and the brute-force correspondence oracle.
//!
//! Worlds are `0..n` and sets of worlds are bitmasks, so frames are limited
//! to [`MAX_WORLDS`] worlds. Exhaustive sweeps are further limited by
//! [`DEFAULT_MAX_FRAME_N`] unless the caller raises the cap explicitly.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{FoFormula, IndVar, ModalFormula, PredSym, PropLetter, SoFormula};

/// Hard limit on worlds per frame imposed by the bitmask representation.
pub const MAX_WORLDS: usize = 8;
/// Default largest `n` for which all `2^(n²)` frames may be enumerated.
pub const DEFAULT_MAX_FRAME_N: usize = 4;
/// Default limit on `n · letters` when enumerating valuations.
pub const DEFAULT_VALUATION_BITS: usize = 16;
/// Seed used for the `|W| = 4` sample when none is given.
pub const DEFAULT_SEED: u64 = 0x5a41_1c0f;

/// A set of worlds.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct WorldSet(pub u32);

impl WorldSet {
    pub const EMPTY: WorldSet = WorldSet(0);

    pub fn full(n: usize) -> Self {
        WorldSet(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(w: usize) -> Self {
        WorldSet(1 << w)
    }

    pub fn from_worlds(ws: impl IntoIterator<Item = usize>) -> Self {
        WorldSet(ws.into_iter().fold(0, |acc, w| acc | (1 << w)))
    }

    pub fn contains(self, w: usize) -> bool {
        self.0 >> w & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        WorldSet(self.0 | other.0)
    }

    pub fn inter(self, other: Self) -> Self {
        WorldSet(self.0 & other.0)
    }

    pub fn minus(self, other: Self) -> Self {
        WorldSet(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        WorldSet::full(n).minus(self)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&w| self.contains(w))
    }

    /// All subsets of `0..n`, in increasing bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = WorldSet> + Clone {
        (0..1u32 << n).map(WorldSet)
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = WorldSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(WorldSet(cur))
        })
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

/// A finite Kripke frame. `succ[w]` is the set `R[w]` of successors of `w`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    n: usize,
    succ: Vec<WorldSet>,
}

impl Frame {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        assert!((1..=MAX_WORLDS).contains(&n), "frames need 1..={MAX_WORLDS} worlds");
        let mut succ = vec![WorldSet::EMPTY; n];
        for (a, b) in edges {
            assert!(a < n && b < n, "edge {a}->{b} out of range for {n} worlds");
            succ[a] = succ[a].union(WorldSet::singleton(b));
        }
        Frame { n, succ }
    }

    /// The frame whose relation bit `i·n + j` of `bits` says whether `R(i, j)`.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        let edges = (0..n * n).filter(|k| bits >> k & 1 == 1).map(|k| (k / n, k % n));
        Frame::new(n, edges)
    }

    /// Inverse of [`Frame::from_bits`].
    pub fn bits(&self) -> u64 {
        self.edges().fold(0, |acc, (a, b)| acc | 1 << (a * self.n + b))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn worlds(&self) -> WorldSet {
        WorldSet::full(self.n)
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.succ[a].contains(b)
    }

    pub fn successors(&self, w: usize) -> WorldSet {
        self.succ[w]
    }

    /// Edges in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| self.succ[a].iter().map(move |b| (a, b)))
    }

    pub fn inverse(&self) -> Frame {
        Frame::new(self.n, self.edges().map(|(a, b)| (b, a)))
    }

    /// `m_R(X)`: worlds with some successor in `X`.
    pub fn m_r(&self, x: WorldSet) -> WorldSet {
        WorldSet::from_worlds((0..self.n).filter(|&w| !self.succ[w].inter(x).is_empty()))
    }

    /// `l_R(X)`: worlds all of whose successors lie in `X`.
    pub fn l_r(&self, x: WorldSet) -> WorldSet {
        WorldSet::from_worlds((0..self.n).filter(|&w| self.succ[w].is_subset(x)))
    }

    /// `R[X]`: the direct image, worlds reachable in one step from `X`.
    pub fn image(&self, x: WorldSet) -> WorldSet {
        x.iter().fold(WorldSet::EMPTY, |acc, w| acc.union(self.succ[w]))
    }

    /// `R^k[X]`, with `R^0[X] = X`.
    pub fn image_k(&self, k: usize, x: WorldSet) -> WorldSet {
        (0..k).fold(x, |acc, _| self.image(acc))
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.n)?;
        for (i, (a, b)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}->{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Frame {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Frame {
    type Err = Error;

    /// Reads the literal `n;i->j,i->k,...`.
    fn from_str(text: &str) -> Result<Frame> {
        let bad = |why: &str| Error::FrameLiteral(format!("`{text}`: {why}"));
        let (n, rest) = text.split_once(';').ok_or_else(|| bad("missing `;`"))?;
        let n: usize = n.trim().parse().map_err(|_| bad("world count is not a number"))?;
        if !(1..=MAX_WORLDS).contains(&n) {
            return Err(bad(&format!("world count must be in 1..={MAX_WORLDS}")));
        }
        let mut edges = Vec::new();
        for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (a, b) = item.split_once("->").ok_or_else(|| bad("edge without `->`"))?;
            let a: usize = a.trim().parse().map_err(|_| bad("edge source is not a number"))?;
            let b: usize = b.trim().parse().map_err(|_| bad("edge target is not a number"))?;
            if a >= n || b >= n {
                return Err(bad("edge endpoint out of range"));
            }
            edges.push((a, b));
        }
        Ok(Frame::new(n, edges))
    }
}

/// Letters absent from the map denote the empty set.
pub type Valuation = BTreeMap<PropLetter, WorldSet>;

/// Values for individual variables.
pub type Assignment = BTreeMap<IndVar, usize>;

/// All `2^(n²)` frames on `n` worlds, in row-major bit order, with the
/// default cap on `n`.
pub fn enumerate_frames(n: usize) -> Result<impl Iterator<Item = Frame>> {
    enumerate_frames_capped(n, DEFAULT_MAX_FRAME_N)
}

pub fn enumerate_frames_capped(n: usize, cap: usize) -> Result<impl Iterator<Item = Frame>> {
    check_frame_cap(n, cap)?;
    Ok((0..1u64 << (n * n)).map(move |bits| Frame::from_bits(n, bits)))
}

fn check_frame_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap || n > MAX_WORLDS {
        return Err(Error::ResourceCap { what: "frame enumeration size", requested: n, limit: cap.min(MAX_WORLDS) });
    }
    Ok(())
}

fn check_valuation_bits(n: usize, letters: usize) -> Result<()> {
    if n * letters > DEFAULT_VALUATION_BITS {
        return Err(Error::ResourceCap {
            what: "valuation bits (worlds × letters)",
            requested: n * letters,
            limit: DEFAULT_VALUATION_BITS,
        });
    }
    Ok(())
}

/// Every valuation of `letters` on `n` worlds.
pub fn valuations(n: usize, letters: &[PropLetter]) -> Result<impl Iterator<Item = Valuation> + '_> {
    check_valuation_bits(n, letters.len())?;
    let mask = (1u64 << n) - 1;
    Ok((0..1u64 << (n * letters.len())).map(move |code| {
        letters
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), WorldSet((code >> (i * n) & mask) as u32)))
            .collect()
    }))
}

// ---------------------------------------------------------------------------
// modal evaluation

#[derive(Clone, Copy, Debug)]
enum Op {
    Bot,
    Top,
    Var(usize),
    Not,
    And,
    Or,
    Implies,
    Iff,
    Box,
    Dia,
}

/// A modal formula compiled to postfix form over an indexed letter list.
#[derive(Clone, Debug)]
pub struct CompiledModal {
    ops: Vec<Op>,
    letters: Vec<PropLetter>,
}

impl CompiledModal {
    /// Compiles `f`; the letters are indexed in first-occurrence order.
    pub fn new(f: &ModalFormula) -> Self {
        Self::with_letters(f, f.prop_letters())
    }

    /// Compiles `f` against an explicit letter list, which must contain every
    /// letter of `f`.
    pub fn with_letters(f: &ModalFormula, letters: Vec<PropLetter>) -> Self {
        fn go(f: &ModalFormula, letters: &[PropLetter], ops: &mut Vec<Op>) {
            use ModalFormula::*;
            match f {
                Bottom => ops.push(Op::Bot),
                Top => ops.push(Op::Top),
                Prop(p) => {
                    let i = letters.iter().position(|q| q == p).expect("letter missing from index");
                    ops.push(Op::Var(i));
                }
                Not(a) => {
                    go(a, letters, ops);
                    ops.push(Op::Not)
                }
                Box(a) => {
                    go(a, letters, ops);
                    ops.push(Op::Box)
                }
                Dia(a) => {
                    go(a, letters, ops);
                    ops.push(Op::Dia)
                }
                And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                    go(a, letters, ops);
                    go(b, letters, ops);
                    ops.push(match f {
                        And(..) => Op::And,
                        Or(..) => Op::Or,
                        Implies(..) => Op::Implies,
                        _ => Op::Iff,
                    });
                }
            }
        }
        let mut ops = Vec::new();
        go(f, &letters, &mut ops);
        CompiledModal { ops, letters }
    }

    pub fn letters(&self) -> &[PropLetter] {
        &self.letters
    }

    /// Extension under the valuation given positionally by `vals`.
    pub fn extension(&self, frame: &Frame, vals: &[WorldSet]) -> WorldSet {
        let full = frame.worlds().0;
        let mut stack: Vec<u32> = Vec::with_capacity(16);
        for op in &self.ops {
            match *op {
                Op::Bot => stack.push(0),
                Op::Top => stack.push(full),
                Op::Var(i) => stack.push(vals[i].0),
                Op::Not => {
                    let a = stack.pop().unwrap();
                    stack.push(!a & full);
                }
                Op::Box => {
                    let a = stack.pop().unwrap();
                    stack.push(frame.l_r(WorldSet(a)).0);
                }
                Op::Dia => {
                    let a = stack.pop().unwrap();
                    stack.push(frame.m_r(WorldSet(a)).0);
                }
                Op::And | Op::Or | Op::Implies | Op::Iff => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    stack.push(match *op {
                        Op::And => a & b,
                        Op::Or => a | b,
                        Op::Implies => (!a | b) & full,
                        _ => !(a ^ b) & full,
                    });
                }
            }
        }
        WorldSet(stack.pop().unwrap())
    }

    /// Worlds at which the formula is valid: the intersection of extensions
    /// over all valuations. Stops early once no world is left.
    pub fn validity_set(&self, frame: &Frame) -> Result<WorldSet> {
        let n = frame.size();
        check_valuation_bits(n, self.letters.len())?;
        let k = self.letters.len();
        let mask = (1u64 << n) - 1;
        let mut vals = vec![WorldSet::EMPTY; k];
        let mut acc = frame.worlds();
        for code in 0..1u64 << (n * k) {
            for (i, v) in vals.iter_mut().enumerate() {
                *v = WorldSet((code >> (i * n) & mask) as u32);
            }
            acc = acc.inter(self.extension(frame, &vals));
            if acc.is_empty() {
                break;
            }
        }
        Ok(acc)
    }
}

/// `⟦f⟧(V)`.
pub fn extension(f: &ModalFormula, frame: &Frame, v: &Valuation) -> WorldSet {
    let c = CompiledModal::new(f);
    let vals: Vec<WorldSet> = c.letters.iter().map(|p| v.get(p).copied().unwrap_or_default()).collect();
    c.extension(frame, &vals)
}

/// `F, w ⊩ f`: truth at `w` under every valuation.
pub fn frame_valid_at(frame: &Frame, w: usize, f: &ModalFormula) -> Result<bool> {
    Ok(CompiledModal::new(f).validity_set(frame)?.contains(w))
}

// ---------------------------------------------------------------------------
// first-order evaluation

#[derive(Clone, Debug)]
enum Node {
    True,
    False,
    Eq(usize, usize),
    Rel(usize, usize),
    Pred(usize, usize),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Forall(usize, Box<Node>),
    Exists(usize, Box<Node>),
}

/// A first-order formula with variables resolved to slots and predicates
/// resolved to indices.
#[derive(Clone, Debug)]
pub struct CompiledFo {
    root: Node,
    free: Vec<IndVar>,
    preds: Vec<PredSym>,
    slots: usize,
}

impl CompiledFo {
    /// Compiles `f`. Free variables take the first slots in the order given
    /// by `free`, which must list every free variable; predicates are indexed
    /// in the order given by `preds`, extended by any others in first
    /// occurrence order.
    pub fn new(f: &FoFormula, free: &[IndVar], preds: &[PredSym]) -> Result<Self> {
        if let Some(v) = f.free_vars().into_iter().find(|v| !free.contains(v)) {
            return Err(Error::UnboundVariable(v));
        }
        let mut preds = preds.to_vec();
        for p in f.preds() {
            if !preds.contains(&p) {
                preds.push(p);
            }
        }
        let mut scope: Vec<(IndVar, usize)> = free.iter().cloned().zip(0..).collect();
        let mut slots = free.len();
        let root = Self::compile(f, &mut scope, &mut slots, &preds);
        Ok(CompiledFo { root, free: free.to_vec(), preds, slots })
    }

    fn compile(f: &FoFormula, scope: &mut Vec<(IndVar, usize)>, slots: &mut usize, preds: &[PredSym]) -> Node {
        let slot = |v: &IndVar, scope: &Vec<(IndVar, usize)>| scope.iter().rev().find(|(w, _)| w == v).unwrap().1;
        match f {
            FoFormula::True => Node::True,
            FoFormula::False => Node::False,
            FoFormula::Eq(a, b) => Node::Eq(slot(a, scope), slot(b, scope)),
            FoFormula::Rel(a, b) => Node::Rel(slot(a, scope), slot(b, scope)),
            FoFormula::Pred(p, a) => Node::Pred(preds.iter().position(|q| q == p).unwrap(), slot(a, scope)),
            FoFormula::Not(a) => Node::Not(Box::new(Self::compile(a, scope, slots, preds))),
            FoFormula::And(xs) => Node::And(xs.iter().map(|x| Self::compile(x, scope, slots, preds)).collect()),
            FoFormula::Or(xs) => Node::Or(xs.iter().map(|x| Self::compile(x, scope, slots, preds)).collect()),
            FoFormula::Implies(a, b) => Node::Implies(
                Box::new(Self::compile(a, scope, slots, preds)),
                Box::new(Self::compile(b, scope, slots, preds)),
            ),
            FoFormula::Iff(a, b) => Node::Iff(
                Box::new(Self::compile(a, scope, slots, preds)),
                Box::new(Self::compile(b, scope, slots, preds)),
            ),
            FoFormula::Forall(v, body) | FoFormula::Exists(v, body) => {
                let s = *slots;
                *slots += 1;
                scope.push((v.clone(), s));
                let body = Box::new(Self::compile(body, scope, slots, preds));
                scope.pop();
                if matches!(f, FoFormula::Forall(..)) {
                    Node::Forall(s, body)
                } else {
                    Node::Exists(s, body)
                }
            }
        }
    }

    pub fn free(&self) -> &[IndVar] {
        &self.free
    }

    pub fn preds(&self) -> &[PredSym] {
        &self.preds
    }

    /// Evaluates with the free variables valued positionally by `free` and
    /// predicates interpreted positionally by `interp` (missing ones are ∅).
    pub fn eval(&self, frame: &Frame, free: &[usize], interp: &[WorldSet]) -> bool {
        let mut env = vec![0usize; self.slots.max(1)];
        env[..free.len()].copy_from_slice(free);
        Self::go(&self.root, frame, &mut env, interp)
    }

    fn go(node: &Node, frame: &Frame, env: &mut [usize], interp: &[WorldSet]) -> bool {
        match node {
            Node::True => true,
            Node::False => false,
            Node::Eq(a, b) => env[*a] == env[*b],
            Node::Rel(a, b) => frame.related(env[*a], env[*b]),
            Node::Pred(p, a) => interp.get(*p).is_some_and(|s| s.contains(env[*a])),
            Node::Not(a) => !Self::go(a, frame, env, interp),
            Node::And(xs) => xs.iter().all(|x| Self::go(x, frame, env, interp)),
            Node::Or(xs) => xs.iter().any(|x| Self::go(x, frame, env, interp)),
            Node::Implies(a, b) => !Self::go(a, frame, env, interp) || Self::go(b, frame, env, interp),
            Node::Iff(a, b) => Self::go(a, frame, env, interp) == Self::go(b, frame, env, interp),
            Node::Forall(s, body) => (0..frame.size()).all(|w| {
                env[*s] = w;
                Self::go(body, frame, env, interp)
            }),
            Node::Exists(s, body) => (0..frame.size()).any(|w| {
                env[*s] = w;
                Self::go(body, frame, env, interp)
            }),
        }
    }
}

/// Tarskian truth of `f` under `a`. Predicates are interpreted as empty.
pub fn eval_fo(frame: &Frame, a: &Assignment, f: &FoFormula) -> Result<bool> {
    eval_fo_with(frame, a, &BTreeMap::new(), f)
}

/// Tarskian truth with predicate `P` interpreted by the valuation of its letter.
pub fn eval_fo_with(frame: &Frame, a: &Assignment, v: &Valuation, f: &FoFormula) -> Result<bool> {
    let free: Vec<IndVar> = f.free_vars().into_iter().collect();
    if let Some(missing) = free.iter().find(|x| !a.contains_key(x)) {
        return Err(Error::UnboundVariable(missing.clone()));
    }
    let c = CompiledFo::new(f, &free, &[])?;
    let vals: Vec<usize> = free.iter().map(|x| a[x]).collect();
    let interp: Vec<WorldSet> = c.preds.iter().map(|p| v.get(p.source()).copied().unwrap_or_default()).collect();
    Ok(c.eval(frame, &vals, &interp))
}

/// Truth of `∀P̄ matrix` under `a`: the matrix must hold for every
/// interpretation of the prefix.
pub fn eval_so(frame: &Frame, a: &Assignment, f: &SoFormula) -> Result<bool> {
    let n = frame.size();
    check_valuation_bits(n, f.prefix.len())?;
    let free: Vec<IndVar> = f.matrix.free_vars().into_iter().collect();
    if let Some(missing) = free.iter().find(|x| !a.contains_key(x)) {
        return Err(Error::UnboundVariable(missing.clone()));
    }
    let c = CompiledFo::new(&f.matrix, &free, &f.prefix)?;
    let vals: Vec<usize> = free.iter().map(|x| a[x]).collect();
    let k = f.prefix.len();
    let mask = (1u64 << n) - 1;
    let mut interp = vec![WorldSet::EMPTY; c.preds.len()];
    for code in 0..1u64 << (n * k) {
        for (i, slot) in interp.iter_mut().take(k).enumerate() {
            *slot = WorldSet((code >> (i * n) & mask) as u32);
        }
        if !c.eval(frame, &vals, &interp) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// oracle

/// Which side of a claimed correspondence held at the counterexample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// The modal formula is valid at the world but the FO formula is false.
    ModalOnly,
    /// The FO formula is true at the world but the modal formula is not valid.
    FirstOrderOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass { frames: usize },
    Counterexample { frame: Frame, world: usize, direction: Direction },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass { frames } => write!(f, "pass ({frames} frames)"),
            Verdict::Counterexample { frame, world, direction } => {
                let which = match direction {
                    Direction::ModalOnly => "modal formula valid, first-order formula false",
                    Direction::FirstOrderOnly => "first-order formula true, modal formula not valid",
                };
                write!(f, "counterexample {frame} at world {world}: {which}")
            }
        }
    }
}

/// Settings for [`check_local_correspondence_with`].
#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Frames of every size `1..=max_n` are enumerated exhaustively.
    pub max_n: usize,
    /// Number of pseudo-random frames drawn at `|W| = 4`.
    pub sample4: usize,
    pub seed: u64,
    /// Largest `max_n` accepted.
    pub frame_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_n: 3, sample4: 0, seed: DEFAULT_SEED, frame_cap: DEFAULT_MAX_FRAME_N }
    }
}

/// The reproducible `|W| = 4` sample: relation bitmasks drawn from ChaCha8
/// seeded with `seed`.
pub fn sample_frames(count: usize, seed: u64) -> Vec<Frame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| Frame::from_bits(4, rng.gen::<u16>() as u64)).collect()
}

fn frame_disagreement(modal: &CompiledModal, fo: &CompiledFo, frame: &Frame) -> Result<Option<(usize, Direction)>> {
    let valid = modal.validity_set(frame)?;
    for w in 0..frame.size() {
        let holds = fo.eval(frame, &[w], &[]);
        match (valid.contains(w), holds) {
            (true, false) => return Ok(Some((w, Direction::ModalOnly))),
            (false, true) => return Ok(Some((w, Direction::FirstOrderOnly))),
            _ => {}
        }
    }
    Ok(None)
}

/// Checks `F, w ⊩ f ⟺ F ⊨ alpha[x := w]` on all frames with at most `max_n`
/// worlds plus `sample4` seeded frames on four worlds.
pub fn check_local_correspondence(f: &ModalFormula, alpha: &FoFormula, max_n: usize, sample4: usize) -> Result<Verdict> {
    check_local_correspondence_with(f, alpha, &OracleConfig { max_n, sample4, ..OracleConfig::default() })
}

/// As [`check_local_correspondence`]. The reported counterexample is the
/// least one: smallest frame size, then smallest relation bitmask (or
/// earliest sample), then smallest world.
pub fn check_local_correspondence_with(f: &ModalFormula, alpha: &FoFormula, cfg: &OracleConfig) -> Result<Verdict> {
    check_frame_cap(cfg.max_n, cfg.frame_cap)?;
    let x = IndVar::source();
    let fo = CompiledFo::new(alpha, &[x], &[])?;
    let modal = CompiledModal::new(f);
    check_valuation_bits(cfg.max_n.max(if cfg.sample4 > 0 { 4 } else { 0 }), modal.letters.len())?;

    let mut frames = 0;
    for n in 1..=cfg.max_n {
        let total = 1u64 << (n * n);
        let hit = (0..total).into_par_iter().find_map_first(|bits| {
            let frame = Frame::from_bits(n, bits);
            frame_disagreement(&modal, &fo, &frame)
                .map(|d| d.map(|(w, dir)| (frame, w, dir)))
                .transpose()
        });
        if let Some(hit) = hit {
            let (frame, world, direction) = hit?;
            return Ok(Verdict::Counterexample { frame, world, direction });
        }
        frames += total as usize;
    }
    let sample = sample_frames(cfg.sample4, cfg.seed);
    let hit = sample.par_iter().find_map_first(|frame| {
        frame_disagreement(&modal, &fo, frame)
            .map(|d| d.map(|(w, dir)| (frame.clone(), w, dir)))
            .transpose()
    });
    if let Some(hit) = hit {
        let (frame, world, direction) = hit?;
        return Ok(Verdict::Counterexample { frame, world, direction });
    }
    Ok(Verdict::Pass { frames: frames + sample.len() })
}

/// Outcome of comparing two first-order formulas on small frames.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Equivalence {
    Pass,
    Counterexample { frame: Frame, assignment: Vec<(IndVar, usize)>, predicates: Vec<(PredSym, WorldSet)> },
}

impl Equivalence {
    pub fn is_pass(&self) -> bool {
        matches!(self, Equivalence::Pass)
    }
}

/// Whether `a` and `b` agree on every frame with at most `max_n` worlds,
/// every assignment of their free variables and every interpretation of
/// their predicates.
pub fn equivalent_on_small_frames(a: &FoFormula, b: &FoFormula, max_n: usize) -> Result<Equivalence> {
    check_frame_cap(max_n, DEFAULT_MAX_FRAME_N)?;
    let mut free: Vec<IndVar> = a.free_vars().into_iter().collect();
    for v in b.free_vars() {
        if !free.contains(&v) {
            free.push(v);
        }
    }
    let mut preds = a.preds();
    for p in b.preds() {
        if !preds.contains(&p) {
            preds.push(p);
        }
    }
    let ca = CompiledFo::new(a, &free, &preds)?;
    let cb = CompiledFo::new(b, &free, &preds)?;
    let k = preds.len();
    for n in 1..=max_n {
        check_valuation_bits(n, k)?;
        let assignments = n.pow(free.len() as u32);
        let hit = (0..1u64 << (n * n)).into_par_iter().find_map_first(|bits| {
            let frame = Frame::from_bits(n, bits);
            let mask = (1u64 << n) - 1;
            let mut interp = vec![WorldSet::EMPTY; k];
            let mut vals = vec![0usize; free.len()];
            for code in 0..1u64 << (n * k) {
                for (i, s) in interp.iter_mut().enumerate() {
                    *s = WorldSet((code >> (i * n) & mask) as u32);
                }
                for mut idx in 0..assignments {
                    for v in vals.iter_mut() {
                        *v = idx % n;
                        idx /= n;
                    }
                    if ca.eval(&frame, &vals, &interp) != cb.eval(&frame, &vals, &interp) {
                        return Some((frame, vals.clone(), interp.clone()));
                    }
                }
            }
            None
        });
        if let Some((frame, vals, interp)) = hit {
            return Ok(Equivalence::Counterexample {
                frame,
                assignment: free.iter().cloned().zip(vals).collect(),
                predicates: preds.iter().cloned().zip(interp).collect(),
            });
        }
    }
    Ok(Equivalence::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_fo, parse_modal};
    use crate::translate::second_order_translation;

    fn frame(s: &str) -> Frame {
        s.parse().unwrap()
    }

    fn at(w: usize) -> Assignment {
        [(IndVar::source(), w)].into_iter().collect()
    }

    #[test]
    fn frame_literals() {
        let f = frame("3;0->1,1->2");
        assert_eq!(f.to_string(), "3;0->1,1->2");
        assert_eq!(frame("1;").to_string(), "1;");
        assert_eq!(Frame::from_bits(f.size(), f.bits()), f);
        assert!("0;".parse::<Frame>().is_err());
        assert!("2;0->2".parse::<Frame>().is_err());
        assert!("2,0->1".parse::<Frame>().is_err());
    }

    #[test]
    fn frame_counts() {
        assert_eq!(enumerate_frames(1).unwrap().count(), 2);
        assert_eq!(enumerate_frames(2).unwrap().count(), 16);
        assert_eq!(enumerate_frames(3).unwrap().count(), 512);
        assert!(matches!(enumerate_frames(5), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn subsets_enumeration() {
        let s = WorldSet::from_worlds([0, 2]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs, vec![WorldSet(0), WorldSet(1), WorldSet(4), WorldSet(5)]);
        assert_eq!(WorldSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn meaning_functions() {
        let chain = frame("2;0->1");
        assert_eq!(chain.m_r(WorldSet::singleton(1)), WorldSet::singleton(0));
        assert_eq!(chain.l_r(chain.worlds()), chain.worlds());
        let empty = frame("3;");
        for x in WorldSet::all(3) {
            assert_eq!(empty.m_r(x), WorldSet::EMPTY);
            assert_eq!(empty.l_r(x), empty.worlds());
        }
    }

    #[test]
    fn extension_table() {
        let f = frame("3;0->1,1->2");
        let x = WorldSet::from_worlds([1, 2]);
        let v: Valuation = [(PropLetter::new("p"), x)].into_iter().collect();
        assert_eq!(extension(&parse_modal("false").unwrap(), &f, &v), WorldSet::EMPTY);
        assert_eq!(extension(&parse_modal("p").unwrap(), &f, &v), x);
        assert_eq!(extension(&parse_modal("~p").unwrap(), &f, &v), WorldSet::singleton(0));
        assert_eq!(extension(&parse_modal("<>p").unwrap(), &f, &v), f.m_r(x));
    }

    #[test]
    fn validity() {
        let refl = frame("1;0->0");
        let irrefl = frame("1;");
        let t = parse_modal("p -> <>p").unwrap();
        assert!(frame_valid_at(&refl, 0, &t).unwrap());
        assert!(!frame_valid_at(&irrefl, 0, &t).unwrap());
        assert!(frame_valid_at(&frame("2;0->1"), 1, &parse_modal("true").unwrap()).unwrap());
        let wide = parse_modal("p & q & r & s & t").unwrap();
        assert!(matches!(frame_valid_at(&frame("4;"), 0, &wide), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn first_order_evaluation() {
        let refl = frame("1;0->0");
        assert!(eval_fo(&refl, &at(0), &parse_fo("R(x,x)").unwrap()).unwrap());
        assert!(eval_fo(&frame("2;0->1"), &at(1), &parse_fo("x = x").unwrap()).unwrap());
        let f = parse_fo("all y. (R(x,y) -> y != y)").unwrap();
        assert!(!eval_fo(&frame("2;0->1"), &at(0), &f).unwrap());
        assert!(eval_fo(&frame("2;0->1"), &at(1), &f).unwrap());
        let unbound = eval_fo(&refl, &at(0), &parse_fo("R(x,u)").unwrap());
        assert!(matches!(unbound, Err(Error::UnboundVariable(v)) if v.name() == "u"));
        // shadowing
        let g = parse_fo("exists y. (R(x,y) & all y. y = y)").unwrap();
        assert!(eval_fo(&refl, &at(0), &g).unwrap());
    }

    #[test]
    fn second_order_evaluation() {
        let so = second_order_translation(&parse_modal("p -> <>p").unwrap());
        assert!(eval_so(&frame("1;0->0"), &at(0), &so).unwrap());
        assert!(!eval_so(&frame("1;"), &at(0), &so).unwrap());
        let closed = second_order_translation(&parse_modal("[]false").unwrap());
        let f = frame("2;0->1");
        for w in 0..2 {
            assert_eq!(eval_so(&f, &at(w), &closed).unwrap(), eval_fo(&f, &at(w), &closed.matrix).unwrap());
        }
    }

    #[test]
    fn oracle_examples() {
        let v = check_local_correspondence(
            &parse_modal("[]false").unwrap(),
            &parse_fo("all y. ~R(x,y)").unwrap(),
            3,
            0,
        )
        .unwrap();
        assert!(v.is_pass());
        let t = parse_modal("p -> <>p").unwrap();
        assert!(check_local_correspondence(&t, &parse_fo("R(x,x)").unwrap(), 3, 50).unwrap().is_pass());
        let v = check_local_correspondence(&t, &FoFormula::True, 2, 0).unwrap();
        assert_eq!(
            v,
            Verdict::Counterexample { frame: frame("1;"), world: 0, direction: Direction::FirstOrderOnly }
        );
        assert!(matches!(
            check_local_correspondence(&t, &FoFormula::True, 5, 0),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn sample_is_reproducible() {
        assert_eq!(sample_frames(20, 7), sample_frames(20, 7));
        assert_ne!(sample_frames(20, 7), sample_frames(20, 8));
    }

    #[test]
    fn small_frame_equivalence() {
        let rxx = parse_fo("R(x,x)").unwrap();
        assert!(equivalent_on_small_frames(&rxx, &rxx, 3).unwrap().is_pass());
        match equivalent_on_small_frames(&rxx, &FoFormula::True, 2).unwrap() {
            Equivalence::Counterexample { frame: f, .. } => assert_eq!(f, frame("1;")),
            Equivalence::Pass => panic!("expected a counterexample"),
        }
    }
}
