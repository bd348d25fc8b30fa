//! Frame conditions, structural laws over downsets, and the
//! condition/law correspondence verifier.
//!
//! Laws are evaluated in the thin reading: the connectives act directly on
//! downward-closed sets and a law is valid in a frame when its inclusion
//! holds under every assignment of downsets to its letters.

use std::fmt;

use super::frame::{DownSet, Frame, TernaryRel};

/// Properties of the ternary relations. The `LS*` conditions are checked
/// on the left relation, the `RS*` conditions on the right one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameCondition {
    LSA,
    LSLU,
    LSRU,
    RSA,
    RSLU,
    RSRU,
    LRReverse,
}

impl FrameCondition {
    /// The conditions an SkMBiCA frame must satisfy. The right-skew
    /// conditions follow automatically via LR-reverse.
    pub fn skmbica_set() -> &'static [FrameCondition] {
        &[
            FrameCondition::LSA,
            FrameCondition::LSLU,
            FrameCondition::LSRU,
            FrameCondition::LRReverse,
        ]
    }

    pub fn all() -> &'static [FrameCondition] {
        &[
            FrameCondition::LSA,
            FrameCondition::LSLU,
            FrameCondition::LSRU,
            FrameCondition::RSA,
            FrameCondition::RSLU,
            FrameCondition::RSRU,
            FrameCondition::LRReverse,
        ]
    }
}

impl fmt::Display for FrameCondition {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FrameCondition::LSA => "LSA",
            FrameCondition::LSLU => "LSLU",
            FrameCondition::LSRU => "LSRU",
            FrameCondition::RSA => "RSA",
            FrameCondition::RSLU => "RSLU",
            FrameCondition::RSRU => "RSRU",
            FrameCondition::LRReverse => "LR-reverse",
        };
        write!(out, "{s}")
    }
}

/// Outcome of a finite condition check, with a violating tuple on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CondOutcome {
    Holds,
    Fails { witness: Vec<usize> },
}

impl CondOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, CondOutcome::Holds)
    }
}

// Kind of skewness, shared by the two associativity/unitality checks.
fn left_skew_assoc(frame: &Frame, rel: &TernaryRel) -> CondOutcome {
    let n = frame.worlds();
    for a in 0..n {
        for b in 0..n {
            for x in 0..n {
                if !rel.holds(a, b, x) {
                    continue;
                }
                for c in 0..n {
                    for d in 0..n {
                        if !rel.holds(x, c, d) {
                            continue;
                        }
                        let found = (0..n).any(|y| rel.holds(b, c, y) && rel.holds(a, y, d));
                        if !found {
                            return CondOutcome::Fails { witness: vec![a, b, c, d, x] };
                        }
                    }
                }
            }
        }
    }
    CondOutcome::Holds
}

fn right_skew_assoc(frame: &Frame, rel: &TernaryRel) -> CondOutcome {
    let n = frame.worlds();
    for b in 0..n {
        for c in 0..n {
            for x in 0..n {
                if !rel.holds(b, c, x) {
                    continue;
                }
                for a in 0..n {
                    for d in 0..n {
                        if !rel.holds(a, x, d) {
                            continue;
                        }
                        let found = (0..n).any(|y| rel.holds(a, b, y) && rel.holds(y, c, d));
                        if !found {
                            return CondOutcome::Fails { witness: vec![a, b, c, d, x] };
                        }
                    }
                }
            }
        }
    }
    CondOutcome::Holds
}

fn first_arg_unital(frame: &Frame, rel: &TernaryRel) -> CondOutcome {
    let n = frame.worlds();
    for e in 0..n {
        if frame.unit_set() & (1 << e) == 0 {
            continue;
        }
        for a in 0..n {
            for b in 0..n {
                if rel.holds(e, a, b) && !frame.leq(b, a) {
                    return CondOutcome::Fails { witness: vec![e, a, b] };
                }
            }
        }
    }
    CondOutcome::Holds
}

fn second_arg_unital(frame: &Frame, rel: &TernaryRel) -> CondOutcome {
    let n = frame.worlds();
    for a in 0..n {
        let found = (0..n)
            .any(|e| frame.unit_set() & (1 << e) != 0 && rel.holds(a, e, a));
        if !found {
            return CondOutcome::Fails { witness: vec![a] };
        }
    }
    CondOutcome::Holds
}

fn first_arg_witness_unital(frame: &Frame, rel: &TernaryRel) -> CondOutcome {
    let n = frame.worlds();
    for a in 0..n {
        let found = (0..n)
            .any(|e| frame.unit_set() & (1 << e) != 0 && rel.holds(e, a, a));
        if !found {
            return CondOutcome::Fails { witness: vec![a] };
        }
    }
    CondOutcome::Holds
}

fn second_arg_bound_unital(frame: &Frame, rel: &TernaryRel) -> CondOutcome {
    let n = frame.worlds();
    for e in 0..n {
        if frame.unit_set() & (1 << e) == 0 {
            continue;
        }
        for a in 0..n {
            for b in 0..n {
                if rel.holds(a, e, b) && !frame.leq(b, a) {
                    return CondOutcome::Fails { witness: vec![a, e, b] };
                }
            }
        }
    }
    CondOutcome::Holds
}

/// Exact finite evaluation of a frame condition.
pub fn check_condition(frame: &Frame, cond: FrameCondition) -> CondOutcome {
    match cond {
        FrameCondition::LSA => left_skew_assoc(frame, frame.rel_l()),
        FrameCondition::LSLU => first_arg_unital(frame, frame.rel_l()),
        FrameCondition::LSRU => second_arg_unital(frame, frame.rel_l()),
        FrameCondition::RSA => right_skew_assoc(frame, frame.rel_r()),
        FrameCondition::RSLU => first_arg_witness_unital(frame, frame.rel_r()),
        FrameCondition::RSRU => second_arg_bound_unital(frame, frame.rel_r()),
        FrameCondition::LRReverse => {
            let n = frame.worlds();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if frame.rel_l().holds(a, b, c) != frame.rel_r().holds(b, a, c) {
                            return CondOutcome::Fails { witness: vec![a, b, c] };
                        }
                    }
                }
            }
            CondOutcome::Holds
        }
    }
}

pub fn frame_satisfies(frame: &Frame, conds: &[FrameCondition]) -> bool {
    conds.iter().all(|c| check_condition(frame, *c).holds())
}

/// The semantically stated structural laws of Theorem-style rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructuralLaw {
    Lambda,
    Rho,
    Alpha,
    LambdaR,
    RhoR,
    AlphaR,
    Gamma,
    GammaInv,
    J,
    I,
    L,
    JR,
    IR,
    LR,
}

impl fmt::Display for StructuralLaw {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StructuralLaw::Lambda => "λ",
            StructuralLaw::Rho => "ρ",
            StructuralLaw::Alpha => "α",
            StructuralLaw::LambdaR => "λR",
            StructuralLaw::RhoR => "ρR",
            StructuralLaw::AlphaR => "αR",
            StructuralLaw::Gamma => "γ",
            StructuralLaw::GammaInv => "γ⁻¹",
            StructuralLaw::J => "j",
            StructuralLaw::I => "i",
            StructuralLaw::L => "L",
            StructuralLaw::JR => "jR",
            StructuralLaw::IR => "iR",
            StructuralLaw::LR => "LR",
        };
        write!(out, "{s}")
    }
}

/// Outcome of a law check; the witness is a refuting downset assignment to
/// the law's letters (for `LR`, the four letters of the hypothesis).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawOutcome {
    Valid,
    Refuted { witness: Vec<DownSet> },
}

impl LawOutcome {
    pub fn valid(&self) -> bool {
        matches!(self, LawOutcome::Valid)
    }
}

/// Precomputed action of the four connectives on the downsets of a frame,
/// as index tables. Used by the law checker and by semantic pruning in
/// bounded proof search.
pub struct SetAlgebra {
    sets: Vec<u32>,
    /// mask -> index into `sets` (only meaningful for downward-closed masks).
    index: Vec<u16>,
    unit: u16,
    full: u16,
    tens_l: Vec<u16>,
    tens_r: Vec<u16>,
    lolli_l: Vec<u16>,
    lolli_r: Vec<u16>,
}

impl SetAlgebra {
    pub fn new(frame: &Frame) -> SetAlgebra {
        let downsets = frame.all_downsets();
        let sets: Vec<u32> = downsets.iter().map(|d| d.0).collect();
        let k = sets.len();
        let mut index = vec![0u16; 1 << frame.worlds()];
        for (i, m) in sets.iter().enumerate() {
            index[*m as usize] = i as u16;
        }
        let mut tens_l = vec![0u16; k * k];
        let mut tens_r = vec![0u16; k * k];
        let mut lolli_l = vec![0u16; k * k];
        let mut lolli_r = vec![0u16; k * k];
        for (i, a) in downsets.iter().enumerate() {
            for (j, b) in downsets.iter().enumerate() {
                tens_l[i * k + j] = index[frame.tens_l_sets(*a, *b).0 as usize];
                tens_r[i * k + j] = index[frame.tens_r_sets(*a, *b).0 as usize];
                lolli_l[i * k + j] = index[frame.lolli_l_sets(*a, *b).0 as usize];
                lolli_r[i * k + j] = index[frame.lolli_r_sets(*a, *b).0 as usize];
            }
        }
        SetAlgebra {
            unit: index[frame.unit_set() as usize],
            full: index[frame.full_mask() as usize],
            sets,
            index,
            tens_l,
            tens_r,
            lolli_l,
            lolli_r,
        }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn mask(&self, i: u16) -> u32 {
        self.sets[i as usize]
    }

    pub fn index_of(&self, d: DownSet) -> u16 {
        self.index[d.0 as usize]
    }

    pub fn unit(&self) -> u16 {
        self.unit
    }

    pub fn full(&self) -> u16 {
        self.full
    }

    pub fn tens_l(&self, a: u16, b: u16) -> u16 {
        self.tens_l[a as usize * self.sets.len() + b as usize]
    }

    pub fn tens_r(&self, a: u16, b: u16) -> u16 {
        self.tens_r[a as usize * self.sets.len() + b as usize]
    }

    pub fn lolli_l(&self, a: u16, b: u16) -> u16 {
        self.lolli_l[a as usize * self.sets.len() + b as usize]
    }

    pub fn lolli_r(&self, a: u16, b: u16) -> u16 {
        self.lolli_r[a as usize * self.sets.len() + b as usize]
    }

    pub fn subset(&self, a: u16, b: u16) -> bool {
        self.sets[a as usize] & !self.sets[b as usize] == 0
    }
}

/// Exact validity of a structural law in a frame, by enumerating all
/// downset assignments to its letters.
pub fn law_valid(frame: &Frame, law: StructuralLaw) -> LawOutcome {
    let alg = SetAlgebra::new(frame);
    law_valid_in(&alg, law)
}

pub fn law_valid_in(alg: &SetAlgebra, law: StructuralLaw) -> LawOutcome {
    let k = alg.len() as u16;
    let refuted = |w: &[u16]| LawOutcome::Refuted {
        witness: w.iter().map(|i| DownSet(alg.mask(*i))).collect(),
    };
    match law {
        StructuralLaw::Lambda => {
            for a in 0..k {
                if !alg.subset(alg.tens_l(alg.unit(), a), a) {
                    return refuted(&[a]);
                }
            }
        }
        StructuralLaw::Rho => {
            for a in 0..k {
                if !alg.subset(a, alg.tens_l(a, alg.unit())) {
                    return refuted(&[a]);
                }
            }
        }
        StructuralLaw::Alpha => {
            for a in 0..k {
                for b in 0..k {
                    for c in 0..k {
                        let lhs = alg.tens_l(alg.tens_l(a, b), c);
                        let rhs = alg.tens_l(a, alg.tens_l(b, c));
                        if !alg.subset(lhs, rhs) {
                            return refuted(&[a, b, c]);
                        }
                    }
                }
            }
        }
        StructuralLaw::LambdaR => {
            for a in 0..k {
                if !alg.subset(a, alg.tens_r(alg.unit(), a)) {
                    return refuted(&[a]);
                }
            }
        }
        StructuralLaw::RhoR => {
            for a in 0..k {
                if !alg.subset(alg.tens_r(a, alg.unit()), a) {
                    return refuted(&[a]);
                }
            }
        }
        StructuralLaw::AlphaR => {
            for a in 0..k {
                for b in 0..k {
                    for c in 0..k {
                        let lhs = alg.tens_r(a, alg.tens_r(b, c));
                        let rhs = alg.tens_r(alg.tens_r(a, b), c);
                        if !alg.subset(lhs, rhs) {
                            return refuted(&[a, b, c]);
                        }
                    }
                }
            }
        }
        StructuralLaw::Gamma => {
            for a in 0..k {
                for b in 0..k {
                    if !alg.subset(alg.tens_l(a, b), alg.tens_r(b, a)) {
                        return refuted(&[a, b]);
                    }
                }
            }
        }
        StructuralLaw::GammaInv => {
            for a in 0..k {
                for b in 0..k {
                    if !alg.subset(alg.tens_r(a, b), alg.tens_l(b, a)) {
                        return refuted(&[a, b]);
                    }
                }
            }
        }
        StructuralLaw::J => {
            for a in 0..k {
                if !alg.subset(alg.unit(), alg.lolli_l(a, a)) {
                    return refuted(&[a]);
                }
            }
        }
        StructuralLaw::I => {
            for a in 0..k {
                if !alg.subset(alg.lolli_l(alg.unit(), a), a) {
                    return refuted(&[a]);
                }
            }
        }
        StructuralLaw::L => {
            for a in 0..k {
                for b in 0..k {
                    for c in 0..k {
                        let lhs = alg.lolli_l(b, c);
                        let rhs = alg.lolli_l(alg.lolli_l(a, b), alg.lolli_l(a, c));
                        if !alg.subset(lhs, rhs) {
                            return refuted(&[a, b, c]);
                        }
                    }
                }
            }
        }
        StructuralLaw::JR => {
            for a in 0..k {
                for b in 0..k {
                    if alg.subset(alg.unit(), alg.lolli_r(a, b)) && !alg.subset(a, b) {
                        return refuted(&[a, b]);
                    }
                }
            }
        }
        StructuralLaw::IR => {
            for a in 0..k {
                if !alg.subset(a, alg.lolli_r(alg.unit(), a)) {
                    return refuted(&[a]);
                }
            }
        }
        StructuralLaw::LR => {
            // If A ⊆ B -oR (C -oR D) then some X has A ⊆ X -oR D and
            // B ⊆ C -oR X. The existential ranges over all downsets; the
            // paper's coend reduces to it in the thin setting.
            for a in 0..k {
                for b in 0..k {
                    for c in 0..k {
                        for d in 0..k {
                            if !alg.subset(a, alg.lolli_r(b, alg.lolli_r(c, d))) {
                                continue;
                            }
                            let found = (0..k).any(|x| {
                                alg.subset(a, alg.lolli_r(x, d))
                                    && alg.subset(b, alg.lolli_r(c, x))
                            });
                            if !found {
                                return refuted(&[a, b, c, d]);
                            }
                        }
                    }
                }
            }
        }
    }
    LawOutcome::Valid
}

/// One biconditional row of the correspondence table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceRow {
    pub name: &'static str,
    pub condition_holds: bool,
    pub law_valid: bool,
}

impl CorrespondenceRow {
    pub fn agrees(&self) -> bool {
        self.condition_holds == self.law_valid
    }
}

/// Evaluates conditions and laws independently for each of the 13 rows.
/// Any disagreement is an implementation failure, never a property of the
/// frame: the correspondence theorem is unconditional.
pub fn correspondence_report(frame: &Frame) -> Vec<CorrespondenceRow> {
    let alg = SetAlgebra::new(frame);
    let cond = |c: FrameCondition| check_condition(frame, c).holds();
    let law = |l: StructuralLaw| law_valid_in(&alg, l).valid();
    vec![
        CorrespondenceRow {
            name: "LR-reverse ⟷ γ and γ⁻¹",
            condition_holds: cond(FrameCondition::LRReverse),
            law_valid: law(StructuralLaw::Gamma) && law(StructuralLaw::GammaInv),
        },
        CorrespondenceRow {
            name: "LSA ⟷ α",
            condition_holds: cond(FrameCondition::LSA),
            law_valid: law(StructuralLaw::Alpha),
        },
        CorrespondenceRow {
            name: "LSA ⟷ L",
            condition_holds: cond(FrameCondition::LSA),
            law_valid: law(StructuralLaw::L),
        },
        CorrespondenceRow {
            name: "LSLU ⟷ λ",
            condition_holds: cond(FrameCondition::LSLU),
            law_valid: law(StructuralLaw::Lambda),
        },
        CorrespondenceRow {
            name: "LSLU ⟷ j",
            condition_holds: cond(FrameCondition::LSLU),
            law_valid: law(StructuralLaw::J),
        },
        CorrespondenceRow {
            name: "LSRU ⟷ ρ",
            condition_holds: cond(FrameCondition::LSRU),
            law_valid: law(StructuralLaw::Rho),
        },
        CorrespondenceRow {
            name: "LSRU ⟷ i",
            condition_holds: cond(FrameCondition::LSRU),
            law_valid: law(StructuralLaw::I),
        },
        CorrespondenceRow {
            name: "RSA ⟷ αR",
            condition_holds: cond(FrameCondition::RSA),
            law_valid: law(StructuralLaw::AlphaR),
        },
        CorrespondenceRow {
            name: "RSA ⟷ LR",
            condition_holds: cond(FrameCondition::RSA),
            law_valid: law(StructuralLaw::LR),
        },
        CorrespondenceRow {
            name: "RSLU ⟷ λR",
            condition_holds: cond(FrameCondition::RSLU),
            law_valid: law(StructuralLaw::LambdaR),
        },
        CorrespondenceRow {
            name: "RSLU ⟷ jR",
            condition_holds: cond(FrameCondition::RSLU),
            law_valid: law(StructuralLaw::JR),
        },
        CorrespondenceRow {
            name: "RSRU ⟷ ρR",
            condition_holds: cond(FrameCondition::RSRU),
            law_valid: law(StructuralLaw::RhoR),
        },
        CorrespondenceRow {
            name: "RSRU ⟷ iR",
            condition_holds: cond(FrameCondition::RSRU),
            law_valid: law(StructuralLaw::IR),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full_one_world() -> Frame {
        Frame::new(
            1,
            &[(0, 0)],
            &[0],
            TernaryRel::from_triples(1, &[(0, 0, 0)]),
            TernaryRel::from_triples(1, &[(0, 0, 0)]),
        )
        .unwrap()
    }

    #[test]
    fn one_world_full_frame_satisfies_everything() {
        let f = full_one_world();
        for c in FrameCondition::all() {
            assert!(check_condition(&f, *c).holds(), "{c} should hold");
        }
        for l in [
            StructuralLaw::Lambda,
            StructuralLaw::Rho,
            StructuralLaw::Alpha,
            StructuralLaw::AlphaR,
            StructuralLaw::Gamma,
            StructuralLaw::L,
            StructuralLaw::LR,
        ] {
            assert!(law_valid(&f, l).valid(), "{l} should be valid");
        }
    }

    #[test]
    fn empty_relation_vacuous_conditions() {
        let f = Frame::new(
            1,
            &[(0, 0)],
            &[0],
            TernaryRel::empty(1),
            TernaryRel::empty(1),
        )
        .unwrap();
        assert!(check_condition(&f, FrameCondition::LSA).holds());
        assert!(check_condition(&f, FrameCondition::LSLU).holds());
        // LSRU needs a witness for every world; the empty relation fails.
        assert!(!check_condition(&f, FrameCondition::LSRU).holds());
    }

    #[test]
    fn lambda_fails_with_witness_when_lslu_fails() {
        // Two discrete worlds, 1 in the unit set, L(1,0,1) pushes 0-stuff
        // up to 1: LSLU demands 1 <= 0.
        let f = Frame::new(
            2,
            &[(0, 0), (1, 1)],
            &[1],
            TernaryRel::from_triples(2, &[(1, 0, 1)]),
            TernaryRel::empty(2),
        )
        .unwrap();
        assert!(f.is_valid());
        assert!(!check_condition(&f, FrameCondition::LSLU).holds());
        match law_valid(&f, StructuralLaw::Lambda) {
            LawOutcome::Refuted { witness } => assert_eq!(witness.len(), 1),
            LawOutcome::Valid => panic!("λ must fail alongside LSLU"),
        }
    }

    #[test]
    fn gamma_valid_iff_lr_reverse() {
        let f = Frame::new(
            2,
            &[(0, 0), (1, 1)],
            &[0],
            TernaryRel::from_triples(2, &[(0, 1, 0)]),
            TernaryRel::empty(2),
        )
        .unwrap();
        // No LR-reverse: γ fails.
        assert!(!check_condition(&f, FrameCondition::LRReverse).holds());
        assert!(!law_valid(&f, StructuralLaw::Gamma).valid());
        let g = f.derive_rel_r();
        assert!(check_condition(&g, FrameCondition::LRReverse).holds());
        assert!(law_valid(&g, StructuralLaw::Gamma).valid());
        assert!(law_valid(&g, StructuralLaw::GammaInv).valid());
    }

    #[test]
    fn correspondence_rows_agree_on_samples() {
        let frames = [
            full_one_world(),
            Frame::new(
                2,
                &[(0, 0), (1, 1), (0, 1)],
                &[0],
                TernaryRel::from_triples(2, &[(0, 0, 0), (1, 0, 1), (0, 1, 0)]),
                TernaryRel::from_triples(2, &[(1, 1, 1), (1, 1, 0)]),
            )
            .unwrap(),
        ];
        for f in frames {
            // Only run on well-formed frames; closure violations void the theorem.
            if !f.is_valid() {
                continue;
            }
            for row in correspondence_report(&f) {
                assert!(row.agrees(), "row {} disagrees on frame {:?}", row.name, f);
            }
        }
    }
}
