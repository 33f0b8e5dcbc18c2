//! Seeded random generation of definite implications in a chosen class,
//! for soundness sweeps.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{classify, SyntacticClass};
use crate::formula::{build::*, ModalFormula};

const LETTERS: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];

/// Size limits for generated implications.
#[derive(Clone, Debug)]
pub struct GeneratorConfig {
    /// Number of distinct letters, taken from `p, q, r, …`.
    pub letters: usize,
    pub max_depth: usize,
    /// Largest number of slots in the antecedent skeleton.
    pub max_slots: usize,
    /// Rejection attempts per requested formula before giving up.
    pub attempts: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig { letters: 2, max_depth: 3, max_slots: 3, attempts: 10_000 }
    }
}

/// Draws implications and keeps those whose classification is the target
/// class with a definite antecedent.
pub struct ImplicationGenerator {
    rng: ChaCha8Rng,
    cfg: GeneratorConfig,
    names: Vec<String>,
}

impl ImplicationGenerator {
    pub fn new(seed: u64, cfg: GeneratorConfig) -> Self {
        assert!((1..=LETTERS.len()).contains(&cfg.letters), "between 1 and {} letters", LETTERS.len());
        let names = LETTERS[..cfg.letters].iter().map(|s| s.to_string()).collect();
        ImplicationGenerator { rng: ChaCha8Rng::seed_from_u64(seed), cfg, names }
    }

    fn letter(&mut self) -> ModalFormula {
        prop(self.names.choose(&mut self.rng).unwrap())
    }

    /// A box-formula slot shaped for `class`.
    fn box_formula(&mut self, class: SyntacticClass) -> ModalFormula {
        let head = self.letter();
        match class {
            SyntacticClass::VSSI => head,
            SyntacticClass::SI => boxes(self.rng.gen_range(0..=2), head),
            _ => {
                let h = self.rng.gen_range(0..=2);
                let mut f = boxes(self.rng.gen_range(0..=1), head);
                for _ in 0..h {
                    f = boxed(implies(self.letter(), f));
                }
                f
            }
        }
    }

    fn negative(&mut self) -> ModalFormula {
        match self.rng.gen_range(0..6) {
            0 => ModalFormula::Bottom,
            1 => ModalFormula::Top,
            2 => boxed(not(self.letter())),
            3 => dia(not(self.letter())),
            4 => or(not(self.letter()), not(self.letter())),
            _ => not(self.letter()),
        }
    }

    fn skeleton(&mut self, class: SyntacticClass, slots: usize) -> ModalFormula {
        if slots == 1 {
            if self.rng.gen_bool(0.2) {
                return dia(self.skeleton(class, 1));
            }
            return if self.rng.gen_bool(0.15) { self.negative() } else { self.box_formula(class) };
        }
        let left = self.rng.gen_range(1..slots);
        let body = and(self.skeleton(class, left), self.skeleton(class, slots - left));
        if self.rng.gen_bool(0.2) {
            dia(body)
        } else {
            body
        }
    }

    fn positive(&mut self, depth: usize) -> ModalFormula {
        let choice = if depth == 0 { self.rng.gen_range(0..2) } else { self.rng.gen_range(0..7) };
        match choice {
            0 | 1 => {
                if self.rng.gen_bool(0.05) {
                    if self.rng.gen_bool(0.5) {
                        ModalFormula::Top
                    } else {
                        ModalFormula::Bottom
                    }
                } else {
                    self.letter()
                }
            }
            2 => boxed(self.positive(depth - 1)),
            3 => dia(self.positive(depth - 1)),
            4 => and(self.positive(depth - 1), self.positive(depth - 1)),
            5 => or(self.positive(depth - 1), self.positive(depth - 1)),
            _ => {
                let inner = self.positive(depth - 1);
                if self.rng.gen_bool(0.5) {
                    boxed(inner)
                } else {
                    dia(inner)
                }
            }
        }
    }

    /// One candidate implication, not yet filtered.
    fn candidate(&mut self, class: SyntacticClass) -> ModalFormula {
        let slots = self.rng.gen_range(1..=self.cfg.max_slots);
        let a = self.skeleton(class, slots);
        let depth = self.rng.gen_range(0..=self.cfg.max_depth);
        let c = self.positive(depth);
        implies(a, c)
    }

    /// The next definite implication of class `class` within the size
    /// limits, or `None` after too many rejected candidates.
    pub fn next_definite(&mut self, class: SyntacticClass) -> Option<ModalFormula> {
        assert!(
            matches!(class, SyntacticClass::VSSI | SyntacticClass::SI | SyntacticClass::AII),
            "generation is supported for VSSI, SI and AII"
        );
        for _ in 0..self.cfg.attempts {
            let f = self.candidate(class);
            if f.modal_depth() > self.cfg.max_depth {
                continue;
            }
            let r = classify(&f);
            if r.class == class && r.definite {
                return Some(f);
            }
        }
        None
    }

    /// `count` distinct definite implications of class `class`, or fewer if
    /// the attempt budget runs out.
    pub fn corpus(&mut self, class: SyntacticClass, count: usize) -> Vec<ModalFormula> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(count);
        let mut misses = 0;
        while out.len() < count && misses < self.cfg.attempts {
            match self.next_definite(class) {
                Some(f) if seen.insert(f.to_string()) => out.push(f),
                Some(_) => misses += 1,
                None => break,
            }
        }
        out
    }
}
