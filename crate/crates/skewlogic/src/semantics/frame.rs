//! Preordered ternary frames, downward-closed world sets and valuations.
//!
//! Worlds are indices `0..n` with `n <= 32`; world sets are bitmasks.
//! Ternary relations are stored as, for each argument pair `(a, b)`, the
//! mask of worlds `c` with `rel(a, b, c)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Formula;

pub const MAX_WORLDS: usize = 32;

/// A ternary relation on `0..n`, indexed by the first two arguments.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TernaryRel {
    n: usize,
    by_ab: Vec<u32>,
}

impl TernaryRel {
    pub fn empty(n: usize) -> TernaryRel {
        TernaryRel { n, by_ab: vec![0; n * n] }
    }

    pub fn from_triples(n: usize, triples: &[(usize, usize, usize)]) -> TernaryRel {
        let mut rel = TernaryRel::empty(n);
        for &(a, b, c) in triples {
            rel.insert(a, b, c);
        }
        rel
    }

    pub fn holds(&self, a: usize, b: usize, c: usize) -> bool {
        self.by_ab[a * self.n + b] & (1 << c) != 0
    }

    pub fn insert(&mut self, a: usize, b: usize, c: usize) {
        self.by_ab[a * self.n + b] |= 1 << c;
    }

    /// Mask of `c` with `rel(a, b, c)`.
    pub fn image(&self, a: usize, b: usize) -> u32 {
        self.by_ab[a * self.n + b]
    }

    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                for c in 0..self.n {
                    if self.holds(a, b, c) {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.by_ab.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_ab.iter().all(|m| *m == 0)
    }
}

/// A preordered ternary frame with a distinguished downward-closed unit
/// set and two ternary relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    worlds: usize,
    /// `up[a]`: mask of `b` with `a <= b`.
    up: Vec<u32>,
    /// `down[a]`: mask of `b` with `b <= a`.
    down: Vec<u32>,
    unit: u32,
    rel_l: TernaryRel,
    rel_r: TernaryRel,
}

/// A downward-closed world set of a particular frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DownSet(pub u32);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("frame has {0} worlds; at most {MAX_WORLDS} are supported")]
    TooManyWorlds(usize),
    #[error("world index {0} out of range (frame has {1} worlds)")]
    WorldOutOfRange(usize, usize),
    #[error("set {0:#b} is not downward closed")]
    NotDownwardClosed(u32),
    #[error("atom {0} has no assigned value")]
    UnassignedAtom(String),
}

/// One violation of the frame well-formedness conditions, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrameViolation {
    NotReflexive { a: usize },
    NotTransitive { a: usize, b: usize, c: usize },
    UnitNotDownClosed { inside: usize, below: usize },
    RelNotUpClosedArg1 { rel: char, a: usize, b: usize, c: usize, above: usize },
    RelNotUpClosedArg2 { rel: char, a: usize, b: usize, c: usize, above: usize },
    RelNotDownClosedArg3 { rel: char, a: usize, b: usize, c: usize, below: usize },
}

impl fmt::Display for FrameViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameViolation::NotReflexive { a } => write!(out, "leq is not reflexive at {a}"),
            FrameViolation::NotTransitive { a, b, c } => {
                write!(out, "leq is not transitive: {a} <= {b} <= {c} but not {a} <= {c}")
            }
            FrameViolation::UnitNotDownClosed { inside, below } => {
                write!(out, "unit set contains {inside} but not {below} <= {inside}")
            }
            FrameViolation::RelNotUpClosedArg1 { rel, a, b, c, above } => {
                write!(out, "{rel}({a},{b},{c}) holds but not {rel}({above},{b},{c}) with {a} <= {above}")
            }
            FrameViolation::RelNotUpClosedArg2 { rel, a, b, c, above } => {
                write!(out, "{rel}({a},{b},{c}) holds but not {rel}({a},{above},{c}) with {b} <= {above}")
            }
            FrameViolation::RelNotDownClosedArg3 { rel, a, b, c, below } => {
                write!(out, "{rel}({a},{b},{c}) holds but not {rel}({a},{b},{below}) with {below} <= {c}")
            }
        }
    }
}

impl Frame {
    /// Builds a frame from raw data. The relations and unit set are taken
    /// as given; use [`validate`](Frame::validate) to check closure.
    pub fn new(
        worlds: usize,
        leq: &[(usize, usize)],
        unit: &[usize],
        rel_l: TernaryRel,
        rel_r: TernaryRel,
    ) -> Result<Frame, FrameError> {
        if worlds > MAX_WORLDS {
            return Err(FrameError::TooManyWorlds(worlds));
        }
        let check = |w: usize| {
            if w >= worlds {
                Err(FrameError::WorldOutOfRange(w, worlds))
            } else {
                Ok(())
            }
        };
        let mut up = vec![0u32; worlds];
        let mut down = vec![0u32; worlds];
        for &(a, b) in leq {
            check(a)?;
            check(b)?;
            up[a] |= 1 << b;
            down[b] |= 1 << a;
        }
        let mut unit_mask = 0u32;
        for &w in unit {
            check(w)?;
            unit_mask |= 1 << w;
        }
        Ok(Frame { worlds, up, down, unit: unit_mask, rel_l, rel_r })
    }

    pub fn worlds(&self) -> usize {
        self.worlds
    }

    pub fn unit_set(&self) -> u32 {
        self.unit
    }

    pub fn rel_l(&self) -> &TernaryRel {
        &self.rel_l
    }

    pub fn rel_r(&self) -> &TernaryRel {
        &self.rel_r
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] & (1 << b) != 0
    }

    /// Mask of worlds `b >= a`.
    pub fn up_mask(&self, a: usize) -> u32 {
        self.up[a]
    }

    /// Mask of worlds `b <= a`.
    pub fn down_mask(&self, a: usize) -> u32 {
        self.down[a]
    }

    pub fn full_mask(&self) -> u32 {
        if self.worlds == 32 {
            u32::MAX
        } else {
            (1u32 << self.worlds) - 1
        }
    }

    fn world_iter(mask: u32) -> impl Iterator<Item = usize> {
        (0..32).filter(move |w| mask & (1 << w) != 0)
    }

    pub fn is_down_closed(&self, mask: u32) -> bool {
        Frame::world_iter(mask).all(|w| self.down[w] & !mask == 0)
    }

    /// Downward closure of an arbitrary mask.
    pub fn down_close(&self, mask: u32) -> u32 {
        let mut out = 0;
        for w in Frame::world_iter(mask) {
            out |= self.down[w];
        }
        out | mask
    }

    pub fn downset(&self, mask: u32) -> Result<DownSet, FrameError> {
        if mask & !self.full_mask() != 0 {
            return Err(FrameError::WorldOutOfRange(31, self.worlds));
        }
        if !self.is_down_closed(mask) {
            return Err(FrameError::NotDownwardClosed(mask));
        }
        Ok(DownSet(mask))
    }

    /// The principal downset of a world.
    pub fn principal(&self, w: usize) -> DownSet {
        DownSet(self.down[w])
    }

    /// All downward-closed subsets, ascending by mask.
    pub fn all_downsets(&self) -> Vec<DownSet> {
        let full = self.full_mask();
        (0..=full)
            .filter(|m| self.is_down_closed(*m))
            .map(DownSet)
            .collect()
    }

    /// Checks the preorder laws, downward closure of the unit set, and the
    /// monotonicity closures of both ternary relations.
    pub fn validate(&self) -> Vec<FrameViolation> {
        let mut out = Vec::new();
        let n = self.worlds;
        for a in 0..n {
            if !self.leq(a, a) {
                out.push(FrameViolation::NotReflexive { a });
            }
        }
        for a in 0..n {
            for b in Frame::world_iter(self.up[a]) {
                for c in Frame::world_iter(self.up[b]) {
                    if !self.leq(a, c) {
                        out.push(FrameViolation::NotTransitive { a, b, c });
                    }
                }
            }
        }
        for inside in Frame::world_iter(self.unit) {
            for below in Frame::world_iter(self.down[inside]) {
                if self.unit & (1 << below) == 0 {
                    out.push(FrameViolation::UnitNotDownClosed { inside, below });
                }
            }
        }
        for (rel, name) in [(&self.rel_l, 'L'), (&self.rel_r, 'R')] {
            for (a, b, c) in rel.triples() {
                for above in Frame::world_iter(self.up[a]) {
                    if !rel.holds(above, b, c) {
                        out.push(FrameViolation::RelNotUpClosedArg1 { rel: name, a, b, c, above });
                    }
                }
                for above in Frame::world_iter(self.up[b]) {
                    if !rel.holds(a, above, c) {
                        out.push(FrameViolation::RelNotUpClosedArg2 { rel: name, a, b, c, above });
                    }
                }
                for below in Frame::world_iter(self.down[c]) {
                    if !rel.holds(a, b, below) {
                        out.push(FrameViolation::RelNotDownClosedArg3 { rel: name, a, b, c, below });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Replaces the right relation by the LR-reverse of the left one:
    /// `R b a c` iff `L a b c`.
    pub fn derive_rel_r(&self) -> Frame {
        let mut rel_r = TernaryRel::empty(self.worlds);
        for (a, b, c) in self.rel_l.triples() {
            rel_r.insert(b, a, c);
        }
        Frame { rel_r, ..self.clone() }
    }

    // ---- The five connective actions on downsets ----

    /// `A *L B = {c : exists a in A, b in B, L a b c}`.
    pub fn tens_l_sets(&self, a: DownSet, b: DownSet) -> DownSet {
        self.tens_sets(&self.rel_l, a, b)
    }

    /// `A *R B` over the right relation.
    pub fn tens_r_sets(&self, a: DownSet, b: DownSet) -> DownSet {
        self.tens_sets(&self.rel_r, a, b)
    }

    fn tens_sets(&self, rel: &TernaryRel, a: DownSet, b: DownSet) -> DownSet {
        let mut out = 0;
        for wa in Frame::world_iter(a.0) {
            for wb in Frame::world_iter(b.0) {
                out |= rel.image(wa, wb);
            }
        }
        debug_assert!(self.is_down_closed(out), "tensor broke downward closure");
        DownSet(out)
    }

    /// `A -oL B = {c : forall a in A, b, L c a b implies b in B}`.
    pub fn lolli_l_sets(&self, a: DownSet, b: DownSet) -> DownSet {
        self.lolli_sets(&self.rel_l, a, b)
    }

    /// `A -oR B` over the right relation.
    pub fn lolli_r_sets(&self, a: DownSet, b: DownSet) -> DownSet {
        self.lolli_sets(&self.rel_r, a, b)
    }

    fn lolli_sets(&self, rel: &TernaryRel, a: DownSet, b: DownSet) -> DownSet {
        let mut out = 0;
        'c: for c in 0..self.worlds {
            for wa in Frame::world_iter(a.0) {
                if rel.image(c, wa) & !b.0 != 0 {
                    continue 'c;
                }
            }
            out |= 1 << c;
        }
        debug_assert!(self.is_down_closed(out), "implication broke downward closure");
        DownSet(out)
    }

    /// Evaluates a formula under a valuation.
    pub fn eval(&self, f: &Formula, v: &Valuation) -> Result<DownSet, FrameError> {
        match f {
            Formula::Atom(x) => {
                v.get(x).ok_or_else(|| FrameError::UnassignedAtom(x.clone()))
            }
            Formula::Unit => Ok(DownSet(self.unit)),
            Formula::TensL(a, b) => Ok(self.tens_l_sets(self.eval(a, v)?, self.eval(b, v)?)),
            Formula::TensR(a, b) => Ok(self.tens_r_sets(self.eval(a, v)?, self.eval(b, v)?)),
            Formula::LolliL(a, b) => Ok(self.lolli_l_sets(self.eval(a, v)?, self.eval(b, v)?)),
            Formula::LolliR(a, b) => Ok(self.lolli_r_sets(self.eval(a, v)?, self.eval(b, v)?)),
        }
    }

    /// `A |- B` is valid in the model `(frame, v)` iff `v(A) ⊆ v(B)`.
    pub fn valid_in_model(
        &self,
        src: &Formula,
        tgt: &Formula,
        v: &Valuation,
    ) -> Result<bool, FrameError> {
        let a = self.eval(src, v)?;
        let b = self.eval(tgt, v)?;
        Ok(a.0 & !b.0 == 0)
    }
}

/// Assignment of downsets to atom names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation {
    map: BTreeMap<String, DownSet>,
}

impl Valuation {
    pub fn new() -> Valuation {
        Valuation::default()
    }

    pub fn assign(&mut self, atom: impl Into<String>, set: DownSet) {
        self.map.insert(atom.into(), set);
    }

    pub fn get(&self, atom: &str) -> Option<DownSet> {
        self.map.get(atom).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &DownSet)> {
        self.map.iter()
    }
}

// ---- JSON file format ----

#[derive(Serialize, Deserialize)]
struct FrameFile {
    worlds: usize,
    leq: Vec<(usize, usize)>,
    #[serde(rename = "I")]
    unit: Vec<usize>,
    #[serde(rename = "L")]
    rel_l: Vec<(usize, usize, usize)>,
    #[serde(rename = "R")]
    rel_r: RelRField,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RelRField {
    Derived(String),
    Triples(Vec<(usize, usize, usize)>),
}

#[derive(Debug, Error)]
pub enum FrameFileError {
    #[error("bad frame JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("unknown R field value {0:?} (expected triples or \"lr-reverse\")")]
    BadRelR(String),
}

impl Frame {
    /// Parses the JSON frame format. `"R": "lr-reverse"` derives the right
    /// relation from the left one.
    pub fn from_json(text: &str) -> Result<Frame, FrameFileError> {
        let file: FrameFile = serde_json::from_str(text)?;
        for &(a, b, c) in &file.rel_l {
            for w in [a, b, c] {
                if w >= file.worlds {
                    return Err(FrameError::WorldOutOfRange(w, file.worlds).into());
                }
            }
        }
        let rel_l = TernaryRel::from_triples(file.worlds, &file.rel_l);
        let (rel_r, derive) = match &file.rel_r {
            RelRField::Derived(s) if s == "lr-reverse" => (TernaryRel::empty(file.worlds), true),
            RelRField::Derived(s) => return Err(FrameFileError::BadRelR(s.clone())),
            RelRField::Triples(ts) => {
                for &(a, b, c) in ts {
                    for w in [a, b, c] {
                        if w >= file.worlds {
                            return Err(FrameError::WorldOutOfRange(w, file.worlds).into());
                        }
                    }
                }
                (TernaryRel::from_triples(file.worlds, ts), false)
            }
        };
        let frame = Frame::new(file.worlds, &file.leq, &file.unit, rel_l, rel_r)?;
        Ok(if derive { frame.derive_rel_r() } else { frame })
    }

    pub fn to_json(&self) -> String {
        let file = FrameFile {
            worlds: self.worlds,
            leq: (0..self.worlds)
                .flat_map(|a| {
                    let up = self.up[a];
                    (0..self.worlds).filter(move |b| up & (1 << b) != 0).map(move |b| (a, b))
                })
                .collect(),
            unit: (0..self.worlds).filter(|w| self.unit & (1 << w) != 0).collect(),
            rel_l: self.rel_l.triples(),
            rel_r: RelRField::Triples(self.rel_r.triples()),
        };
        serde_json::to_string_pretty(&file).expect("frame serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;

    fn one_world_frame() -> Frame {
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
    fn one_world_frame_is_valid() {
        assert!(one_world_frame().validate().is_empty());
    }

    #[test]
    fn missing_reflexivity_reported() {
        let f = Frame::new(1, &[], &[0], TernaryRel::empty(1), TernaryRel::empty(1)).unwrap();
        assert!(f.validate().contains(&FrameViolation::NotReflexive { a: 0 }));
    }

    #[test]
    fn unit_down_closure_reported() {
        let f = Frame::new(
            2,
            &[(0, 0), (1, 1), (0, 1)],
            &[1],
            TernaryRel::empty(2),
            TernaryRel::empty(2),
        )
        .unwrap();
        assert!(f
            .validate()
            .contains(&FrameViolation::UnitNotDownClosed { inside: 1, below: 0 }));
    }

    #[test]
    fn derive_rel_r_reverses() {
        let f = Frame::new(
            3,
            &[(0, 0), (1, 1), (2, 2)],
            &[],
            TernaryRel::from_triples(3, &[(0, 1, 2)]),
            TernaryRel::empty(3),
        )
        .unwrap();
        let g = f.derive_rel_r();
        assert!(g.rel_r().holds(1, 0, 2));
        assert_eq!(g.rel_r().len(), 1);
        // Reversing twice gives back the left relation on the R side.
        let mut swapped = g.clone();
        std::mem::swap(&mut swapped.rel_l, &mut swapped.rel_r);
        assert_eq!(swapped.derive_rel_r().rel_r(), f.rel_l());
    }

    #[test]
    fn eval_clauses() {
        let f = one_world_frame();
        let mut v = Valuation::new();
        v.assign("X", DownSet(1));
        v.assign("Y", DownSet(0));
        assert_eq!(f.eval(&Formula::Unit, &v).unwrap(), DownSet(1));
        // Empty first argument gives an empty tensor.
        assert_eq!(
            f.eval(&parse_formula("Y *L X").unwrap(), &v).unwrap(),
            DownSet(0)
        );
        // Full second argument makes the implication vacuously full.
        assert_eq!(
            f.eval(&parse_formula("Y -oL X").unwrap(), &v).unwrap(),
            DownSet(1)
        );
        assert!(matches!(
            f.eval(&parse_formula("Z").unwrap(), &v),
            Err(FrameError::UnassignedAtom(_))
        ));
    }

    #[test]
    fn valid_in_model_reflexive() {
        let f = one_world_frame();
        let mut v = Valuation::new();
        v.assign("X", DownSet(1));
        assert!(f
            .valid_in_model(&parse_formula("X").unwrap(), &parse_formula("X").unwrap(), &v)
            .unwrap());
    }

    #[test]
    fn json_round_trip_and_lr_reverse() {
        let text = r#"{"worlds": 2, "leq": [[0,0],[1,1]], "I": [0], "L": [[0,1,0]], "R": "lr-reverse"}"#;
        let f = Frame::from_json(text).unwrap();
        assert!(f.rel_r().holds(1, 0, 0));
        let f2 = Frame::from_json(&f.to_json()).unwrap();
        assert_eq!(f, f2);

        assert!(Frame::from_json(
            r#"{"worlds": 1, "leq": [[0,0]], "I": [], "L": [[0,0,5]], "R": []}"#
        )
        .is_err());
    }

    #[test]
    fn downsets_enumeration() {
        let f = Frame::new(
            2,
            &[(0, 0), (1, 1), (0, 1)],
            &[0],
            TernaryRel::empty(2),
            TernaryRel::empty(2),
        )
        .unwrap();
        // Downsets of the chain 0 <= 1: {}, {0}, {0,1}.
        let sets: Vec<u32> = f.all_downsets().iter().map(|d| d.0).collect();
        assert_eq!(sets, vec![0b00, 0b01, 0b11]);
    }
}
