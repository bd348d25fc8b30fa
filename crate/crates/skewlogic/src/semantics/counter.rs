//! Finite countermodel search: a frame plus valuation refuting `A |- B`
//! certifies non-derivability through soundness.

use crate::formula::Formula;

use super::frame::{DownSet, Frame, Valuation};
use super::gen::{enumerate_frames, random_frame, random_skmbica_frame};
use super::laws::{frame_satisfies, FrameCondition, SetAlgebra};

/// How many random frames to try per world count when exhaustive
/// enumeration is out of reach.
const SAMPLES_PER_SIZE: u64 = 3000;

fn eval_on(alg: &SetAlgebra, f: &Formula, assignment: &[(String, u16)]) -> u16 {
    match f {
        Formula::Atom(x) => {
            assignment
                .iter()
                .find(|(name, _)| name == x)
                .expect("assignment covers all atoms")
                .1
        }
        Formula::Unit => alg.unit(),
        Formula::TensL(a, b) => alg.tens_l(eval_on(alg, a, assignment), eval_on(alg, b, assignment)),
        Formula::TensR(a, b) => alg.tens_r(eval_on(alg, a, assignment), eval_on(alg, b, assignment)),
        Formula::LolliL(a, b) => {
            alg.lolli_l(eval_on(alg, a, assignment), eval_on(alg, b, assignment))
        }
        Formula::LolliR(a, b) => {
            alg.lolli_r(eval_on(alg, a, assignment), eval_on(alg, b, assignment))
        }
    }
}

/// Searches one frame for a refuting valuation by enumerating all downset
/// assignments to the atoms of the sequent.
pub fn refute_in_frame(frame: &Frame, src: &Formula, tgt: &Formula) -> Option<Valuation> {
    let alg = SetAlgebra::new(frame);
    let mut atoms = Vec::new();
    src.atoms(&mut atoms);
    tgt.atoms(&mut atoms);
    let k = alg.len() as u16;
    let m = atoms.len();
    let mut assignment: Vec<(String, u16)> = atoms.iter().map(|a| (a.clone(), 0)).collect();
    let combos = (k as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
    for combo in 0..combos {
        let mut c = combo;
        for slot in assignment.iter_mut() {
            slot.1 = (c % k as u64) as u16;
            c /= k as u64;
        }
        let lhs = eval_on(&alg, src, &assignment);
        let rhs = eval_on(&alg, tgt, &assignment);
        if !alg.subset(lhs, rhs) {
            let mut v = Valuation::new();
            for (name, idx) in &assignment {
                v.assign(name.clone(), DownSet(alg.mask(*idx)));
            }
            return Some(v);
        }
    }
    None
}

/// Searches frames of up to `max_worlds` worlds satisfying `require` for a
/// model refuting `src |- tgt`. Exhaustive (isomorph-pruned) for one and
/// two worlds, seeded random sampling beyond. Absence of a countermodel at
/// this size proves nothing.
pub fn countermodel(
    src: &Formula,
    tgt: &Formula,
    max_worlds: usize,
    require: &[FrameCondition],
    seed: u64,
) -> Option<(Frame, Valuation)> {
    let want_skmbica = FrameCondition::skmbica_set()
        .iter()
        .all(|c| require.contains(c));
    for n in 1..=max_worlds {
        if n <= 2 {
            for frame in enumerate_frames(n) {
                if !frame_satisfies(&frame, require) {
                    continue;
                }
                if let Some(v) = refute_in_frame(&frame, src, tgt) {
                    return Some((frame, v));
                }
            }
        } else {
            for tick in 0..SAMPLES_PER_SIZE {
                let s = seed.wrapping_add(tick).wrapping_mul(2 * n as u64 + 1);
                let frame = if want_skmbica {
                    match random_skmbica_frame(n, s) {
                        Some(f) => f,
                        None => continue,
                    }
                } else {
                    random_frame(n, s)
                };
                if !frame_satisfies(&frame, require) {
                    continue;
                }
                if let Some(v) = refute_in_frame(&frame, src, tgt) {
                    return Some((frame, v));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn refutes_reversed_left_unitor() {
        // X |- I *L X is not derivable; soundness demands a countermodel.
        let found = countermodel(&f("X"), &f("I *L X"), 4, FrameCondition::skmbica_set(), 1);
        let (frame, v) = found.expect("a two-world countermodel exists");
        assert!(frame.is_valid());
        assert!(frame_satisfies(&frame, FrameCondition::skmbica_set()));
        assert!(!frame.valid_in_model(&f("X"), &f("I *L X"), &v).unwrap());
    }

    #[test]
    fn never_refutes_the_lambda_axiom() {
        // I *L X |- X is an axiom: soundness forbids any countermodel.
        assert!(countermodel(&f("I *L X"), &f("X"), 3, FrameCondition::skmbica_set(), 1).is_none());
    }

    #[test]
    fn refutes_reversed_associator() {
        let found = countermodel(
            &f("X *L (Y *L Z)"),
            &f("(X *L Y) *L Z"),
            4,
            FrameCondition::skmbica_set(),
            1,
        );
        let (frame, v) = found.expect("reverse-α must be refutable");
        assert!(!frame
            .valid_in_model(&f("X *L (Y *L Z)"), &f("(X *L Y) *L Z"), &v)
            .unwrap());
    }
}
