//! Property tests for parsing, normalization, simplification,
//! classification and the order-theoretic checks.

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{extension_equal, random_fo};
use sahl_core::classify::{classify, polarity_map, Polarity, SyntacticClass};
use sahl_core::formula::build::*;
use sahl_core::fosimp::simplify;
use sahl_core::generate::{GeneratorConfig, ImplicationGenerator};
use sahl_core::normalize::nnf;
use sahl_core::orderprops::{is_m_additive, is_order_preserving, left_adjoint_of, right_adjoint_of, SetFunction};
use sahl_core::print::{print_fo, print_modal};
use sahl_core::semantics::{equivalent_on_small_frames, Frame, Valuation, WorldSet};
use sahl_core::{parse_fo, parse_modal, ModalFormula, PropLetter};

fn modal_strategy(letters: &'static [&'static str]) -> impl Strategy<Value = ModalFormula> {
    let leaf = prop_oneof![
        Just(ModalFormula::Top),
        Just(ModalFormula::Bottom),
        (0..letters.len()).prop_map(move |i| prop(letters[i])),
        (0..letters.len()).prop_map(move |i| prop(letters[i])),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(not),
            inner.clone().prop_map(boxed),
            inner.clone().prop_map(dia),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| iff(a, b)),
        ]
    })
}

fn frame_strategy() -> impl Strategy<Value = Frame> {
    (1usize..=3).prop_flat_map(|n| (0u64..1 << (n * n)).prop_map(move |bits| Frame::from_bits(n, bits)))
}

const PQ: &[&str] = &["p", "q"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn modal_print_parse_round_trip(f in modal_strategy(&["p", "q", "r"])) {
        let back = parse_modal(&print_modal(&f)).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn fo_print_parse_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_fo(&mut rng, 5, &["x", "y", "z"], &["p", "q"]);
        let back = parse_fo(&print_fo(&f)).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn negation_flips_polarity(f in modal_strategy(PQ)) {
        let pos = polarity_map(&f);
        let neg = polarity_map(&not(f));
        prop_assert_eq!(pos.len(), neg.len());
        for (p, pol) in pos {
            let flipped = match pol {
                Polarity::Positive => Polarity::Negative,
                Polarity::Negative => Polarity::Positive,
                other => other,
            };
            prop_assert_eq!(neg[&p], flipped);
        }
    }

    #[test]
    fn desugaring_preserves_extension(f in modal_strategy(PQ)) {
        let d = f.desugar();
        prop_assert!(extension_equal(&f, &d, 2).is_ok());
        prop_assert!(d.prop_letters().len() <= f.prop_letters().len());
    }

    #[test]
    fn nnf_preserves_extension_and_is_stable(f in modal_strategy(PQ)) {
        let n = nnf(&f);
        if let Err(e) = extension_equal(&f, &n, 3) {
            return Err(TestCaseError::fail(e));
        }
        prop_assert_eq!(nnf(&n), n);
    }

    #[test]
    fn simplify_is_sound_and_idempotent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_fo(&mut rng, 4, &["x", "y", "z"], &["p"]);
        let s = simplify(&f);
        prop_assert!(equivalent_on_small_frames(&f, &s, 3).unwrap().is_pass(), "{} vs {}", f, s);
        prop_assert_eq!(simplify(&s), s);
    }

    #[test]
    fn additive_maps_are_monotone(f in modal_strategy(&["p"]), frame in frame_strategy(), m in 1usize..=3) {
        let map = SetFunction::from_formula(&f, &frame, &[PropLetter::new("p")], &Valuation::new());
        if is_m_additive(&map, &[m]).unwrap().is_pass() {
            prop_assert!(is_order_preserving(&map).unwrap().is_pass(), "{} on {}", f, frame);
        }
    }

    #[test]
    fn right_adjoints_are_unique(f in modal_strategy(&["p"]), frame in frame_strategy()) {
        let map = SetFunction::from_formula(&f, &frame, &[PropLetter::new("p")], &Valuation::new());
        if let Some(g) = right_adjoint_of(&map).unwrap() {
            let n = frame.size();
            // any right adjoint sends Y to the union of all X with f(X) ⊆ Y
            for y in WorldSet::all(n) {
                let expected = WorldSet::all(n).filter(|&x| map.eval(&[x]).is_subset(y)).fold(WorldSet::EMPTY, WorldSet::union);
                prop_assert_eq!(g.eval(&[y]), expected);
            }
            let back = left_adjoint_of(&g).unwrap().expect("a right adjoint has a left adjoint");
            prop_assert!(back.same_as(&map).unwrap());
        }
    }
}

#[test]
fn generated_classes_satisfy_the_wider_class_conditions() {
    let mut g = ImplicationGenerator::new(19, GeneratorConfig::default());
    for class in [SyntacticClass::VSSI, SyntacticClass::SI, SyntacticClass::AII] {
        for f in g.corpus(class, 80) {
            let r = classify(&f);
            let d = r.decomposition.as_ref().expect("implication classes carry a decomposition");
            let chis: Vec<_> = d.chis().map(|(_, c)| c).collect();
            let vssi = chis.iter().all(|c| c.rho.is_empty() && c.k == 0);
            let si = chis.iter().all(|c| c.rho.is_empty());
            let aii = r.digraph.as_ref().map_or(true, |g| g.is_acyclic());
            match class {
                SyntacticClass::VSSI => assert!(vssi && si && aii, "{f}"),
                SyntacticClass::SI => assert!(!vssi && si && aii, "{f}"),
                _ => assert!(!si && aii, "{f}"),
            }
        }
    }
}
