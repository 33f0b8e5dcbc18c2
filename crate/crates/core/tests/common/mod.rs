//! Helpers shared by the integration tests: random formulas and
//! brute-force extension comparison.

#![allow(dead_code)]

use rand::Rng;

use sahl_core::formula::build::*;
use sahl_core::semantics::{enumerate_frames, CompiledModal, Frame, WorldSet};
use sahl_core::{FoFormula, IndVar, ModalFormula, PropLetter};

pub fn m(s: &str) -> ModalFormula {
    sahl_core::parse_modal(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn fo(s: &str) -> FoFormula {
    sahl_core::parse_fo(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn frames_upto(n: usize) -> Vec<Frame> {
    (1..=n).flat_map(|k| enumerate_frames(k).unwrap()).collect()
}

/// A random modal formula of at most `depth` constructor levels over `letters`.
pub fn random_modal(rng: &mut impl Rng, depth: usize, letters: &[&str]) -> ModalFormula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..10) {
            0 => ModalFormula::Top,
            1 => ModalFormula::Bottom,
            _ => prop(letters[rng.gen_range(0..letters.len())]),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..8) {
        0 => not(random_modal(rng, d, letters)),
        1 => and(random_modal(rng, d, letters), random_modal(rng, d, letters)),
        2 => or(random_modal(rng, d, letters), random_modal(rng, d, letters)),
        3 => implies(random_modal(rng, d, letters), random_modal(rng, d, letters)),
        4 => iff(random_modal(rng, d, letters), random_modal(rng, d, letters)),
        5 | 6 => boxed(random_modal(rng, d, letters)),
        _ => dia(random_modal(rng, d, letters)),
    }
}

/// A random first-order formula in the shape the parser produces: `∧` and
/// `∨` nodes have at least two children, none of the same kind.
pub fn random_fo(rng: &mut impl Rng, depth: usize, vars: &[&str], preds: &[&str]) -> FoFormula {
    let v = |rng: &mut dyn rand::RngCore| IndVar::new(vars[rng.gen_range(0..vars.len())]);
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..8) {
            0 => FoFormula::True,
            1 => FoFormula::False,
            2 | 3 => FoFormula::Eq(v(rng), v(rng)),
            4 | 5 => FoFormula::Rel(v(rng), v(rng)),
            _ => FoFormula::pred(&PropLetter::new(preds[rng.gen_range(0..preds.len())]), &v(rng)),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..8) {
        0 => FoFormula::Not(Box::new(random_fo(rng, d, vars, preds))),
        1 | 2 => {
            let conj = rng.gen_bool(0.5);
            let n = rng.gen_range(2..=3);
            let parts = (0..n)
                .map(|_| loop {
                    let f = random_fo(rng, d, vars, preds);
                    let same = matches!((&f, conj), (FoFormula::And(_), true) | (FoFormula::Or(_), false));
                    if !same {
                        break f;
                    }
                })
                .collect();
            if conj {
                FoFormula::And(parts)
            } else {
                FoFormula::Or(parts)
            }
        }
        3 => FoFormula::Implies(Box::new(random_fo(rng, d, vars, preds)), Box::new(random_fo(rng, d, vars, preds))),
        4 => FoFormula::Iff(Box::new(random_fo(rng, d, vars, preds)), Box::new(random_fo(rng, d, vars, preds))),
        5 | 6 => FoFormula::Forall(v(rng), Box::new(random_fo(rng, d, vars, preds))),
        _ => FoFormula::Exists(v(rng), Box::new(random_fo(rng, d, vars, preds))),
    }
}

/// Whether `a` and `b` have the same extension on every frame with at most
/// `max_n` worlds under every valuation of their letters.
pub fn extension_equal(a: &ModalFormula, b: &ModalFormula, max_n: usize) -> Result<(), String> {
    let mut letters = a.prop_letters();
    for p in b.prop_letters() {
        if !letters.contains(&p) {
            letters.push(p);
        }
    }
    let ca = CompiledModal::with_letters(a, letters.clone());
    let cb = CompiledModal::with_letters(b, letters.clone());
    for frame in frames_upto(max_n) {
        let n = frame.size();
        let mask = (1u64 << n) - 1;
        for code in 0..1u64 << (n * letters.len()) {
            let vals: Vec<WorldSet> = (0..letters.len()).map(|i| WorldSet((code >> (i * n) & mask) as u32)).collect();
            if ca.extension(&frame, &vals) != cb.extension(&frame, &vals) {
                return Err(format!("`{a}` and `{b}` differ on {frame} at valuation {vals:?}"));
            }
        }
    }
    Ok(())
}
