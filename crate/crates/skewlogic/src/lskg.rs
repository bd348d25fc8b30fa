//! LSkG, the sequent calculus with stoup for left skew monoidal closed
//! categories: derivation checking, terminating backward proof search, and
//! the admissible cuts `scut`/`ccut` as total proof transformations.

use std::collections::HashMap;

use thiserror::Error;

use crate::check::CheckReport;
use crate::formula::{Formula, Stoup, StoupSequent};

/// Rule labels. `TensR`/`LolliL` record where the context was split so that
/// re-checking needs no re-inference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GRule {
    Ax,
    IR,
    IL,
    TensL,
    TensR { split: usize },
    LolliL { split: usize },
    LolliR,
    Pass,
}

/// A derivation tree. Every node stores its conclusion, so derivations are
/// independently checkable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GDerivation {
    pub conclusion: StoupSequent,
    pub rule: GRule,
    pub premises: Vec<GDerivation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("outside the LSk fragment: {0}")]
pub struct FragmentError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CutError {
    #[error("cut formula mismatch: left premise proves {left}, right premise has {right}")]
    Mismatch { left: String, right: String },
    #[error("ccut left premise must have an empty stoup, found {0}")]
    StoupNotEmpty(String),
    #[error("context position {pos} out of range ({len} formulas)")]
    BadPosition { pos: usize, len: usize },
    #[error("premise does not check: {0}")]
    BadPremise(String),
}

impl GDerivation {
    fn node(conclusion: StoupSequent, rule: GRule, premises: Vec<GDerivation>) -> GDerivation {
        GDerivation { conclusion, rule, premises }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(GDerivation::size).sum::<usize>()
    }

    pub fn ax(a: Formula) -> GDerivation {
        GDerivation::node(
            StoupSequent::new(Stoup::Just(a.clone()), vec![], a),
            GRule::Ax,
            vec![],
        )
    }

    pub fn ir() -> GDerivation {
        GDerivation::node(
            StoupSequent::new(Stoup::Empty, vec![], Formula::Unit),
            GRule::IR,
            vec![],
        )
    }

    /// `pass`: moves the leftmost context formula of the premise's stoup
    /// back into the context. Premise must have a formula in the stoup.
    pub fn pass(d: GDerivation) -> GDerivation {
        let Stoup::Just(a) = d.conclusion.stoup.clone() else {
            panic!("pass needs a stoup formula in the premise");
        };
        let mut context = vec![a];
        context.extend_from_slice(&d.conclusion.context);
        let concl = StoupSequent::new(Stoup::Empty, context, d.conclusion.succedent.clone());
        GDerivation::node(concl, GRule::Pass, vec![d])
    }

    pub fn il(d: GDerivation) -> GDerivation {
        assert!(d.conclusion.stoup.is_empty(), "IL needs an empty stoup in the premise");
        let concl = StoupSequent::new(
            Stoup::Just(Formula::Unit),
            d.conclusion.context.clone(),
            d.conclusion.succedent.clone(),
        );
        GDerivation::node(concl, GRule::IL, vec![d])
    }

    /// `*L`: premise `A | B , Γ |- C` yields `A *L B | Γ |- C`.
    pub fn tens_l(d: GDerivation) -> GDerivation {
        let Stoup::Just(a) = d.conclusion.stoup.clone() else {
            panic!("*L needs a stoup formula in the premise");
        };
        let (b, rest) = d
            .conclusion
            .context
            .split_first()
            .expect("*L needs a nonempty premise context");
        let concl = StoupSequent::new(
            Stoup::Just(Formula::tens_l(a, b.clone())),
            rest.to_vec(),
            d.conclusion.succedent.clone(),
        );
        GDerivation::node(concl, GRule::TensL, vec![d])
    }

    /// `*R`: the stoup always stays with the left premise.
    pub fn tens_r(l: GDerivation, r: GDerivation) -> GDerivation {
        assert!(r.conclusion.stoup.is_empty(), "*R right premise must have an empty stoup");
        let split = l.conclusion.context.len();
        let mut context = l.conclusion.context.clone();
        context.extend_from_slice(&r.conclusion.context);
        let concl = StoupSequent::new(
            l.conclusion.stoup.clone(),
            context,
            Formula::tens_l(l.conclusion.succedent.clone(), r.conclusion.succedent.clone()),
        );
        GDerivation::node(concl, GRule::TensR { split }, vec![l, r])
    }

    /// `-oL`: premises `- | Γ |- A` and `B | Δ |- C` yield
    /// `A -oL B | Γ , Δ |- C`.
    pub fn lolli_l(l: GDerivation, r: GDerivation) -> GDerivation {
        assert!(l.conclusion.stoup.is_empty(), "-oL left premise must have an empty stoup");
        let Stoup::Just(b) = r.conclusion.stoup.clone() else {
            panic!("-oL right premise needs a stoup formula");
        };
        let split = l.conclusion.context.len();
        let mut context = l.conclusion.context.clone();
        context.extend_from_slice(&r.conclusion.context);
        let concl = StoupSequent::new(
            Stoup::Just(Formula::lolli_l(l.conclusion.succedent.clone(), b)),
            context,
            r.conclusion.succedent.clone(),
        );
        GDerivation::node(concl, GRule::LolliL { split }, vec![l, r])
    }

    pub fn lolli_r(d: GDerivation) -> GDerivation {
        let mut context = d.conclusion.context.clone();
        let a = context.pop().expect("-oR needs a nonempty premise context");
        let concl = StoupSequent::new(
            d.conclusion.stoup.clone(),
            context,
            Formula::lolli_l(a, d.conclusion.succedent.clone()),
        );
        GDerivation::node(concl, GRule::LolliR, vec![d])
    }
}

/// Checks every node of `d` against its rule schema.
pub fn check_g(d: &GDerivation) -> CheckReport {
    let mut report = CheckReport::default();
    let mut path = Vec::new();
    check_node(d, &mut path, &mut report);
    report
}

fn check_node(d: &GDerivation, path: &mut Vec<usize>, report: &mut CheckReport) {
    let s = &d.conclusion;
    if !s.in_lsk_fragment() {
        report.push(path, format!("sequent {s} is outside the LSk fragment"));
    }
    let arity = match d.rule {
        GRule::Ax | GRule::IR => 0,
        GRule::IL | GRule::TensL | GRule::LolliR | GRule::Pass => 1,
        GRule::TensR { .. } | GRule::LolliL { .. } => 2,
    };
    if d.premises.len() != arity {
        report.push(
            path,
            format!("rule {:?} expects {} premises, found {}", d.rule, arity, d.premises.len()),
        );
        return;
    }
    match d.rule {
        GRule::Ax => {
            if s.stoup != Stoup::Just(s.succedent.clone()) || !s.context.is_empty() {
                report.push(path, format!("ax must conclude A | |- A, found {s}"));
            }
        }
        GRule::IR => {
            if !s.stoup.is_empty() || !s.context.is_empty() || s.succedent != Formula::Unit {
                report.push(path, format!("IR must conclude - | |- I, found {s}"));
            }
        }
        GRule::IL => {
            if s.stoup != Stoup::Just(Formula::Unit) {
                report.push(path, format!("IL needs I in the stoup, found {s}"));
            } else {
                let want = StoupSequent::new(Stoup::Empty, s.context.clone(), s.succedent.clone());
                expect_premise(d, 0, &want, path, report);
            }
        }
        GRule::TensL => match &s.stoup {
            Stoup::Just(Formula::TensL(a, b)) => {
                let mut ctx = vec![b.as_ref().clone()];
                ctx.extend_from_slice(&s.context);
                let want =
                    StoupSequent::new(Stoup::Just(a.as_ref().clone()), ctx, s.succedent.clone());
                expect_premise(d, 0, &want, path, report);
            }
            _ => report.push(path, format!("*L needs a tensor in the stoup, found {s}")),
        },
        GRule::TensR { split } => match &s.succedent {
            Formula::TensL(a, b) if split <= s.context.len() => {
                let left = StoupSequent::new(
                    s.stoup.clone(),
                    s.context[..split].to_vec(),
                    a.as_ref().clone(),
                );
                let right = StoupSequent::new(
                    Stoup::Empty,
                    s.context[split..].to_vec(),
                    b.as_ref().clone(),
                );
                expect_premise(d, 0, &left, path, report);
                expect_premise(d, 1, &right, path, report);
            }
            Formula::TensL(_, _) => {
                report.push(path, format!("*R split {split} exceeds context length"));
            }
            _ => report.push(path, format!("*R needs a tensor succedent, found {s}")),
        },
        GRule::LolliL { split } => match &s.stoup {
            Stoup::Just(Formula::LolliL(a, b)) if split <= s.context.len() => {
                let left = StoupSequent::new(
                    Stoup::Empty,
                    s.context[..split].to_vec(),
                    a.as_ref().clone(),
                );
                let right = StoupSequent::new(
                    Stoup::Just(b.as_ref().clone()),
                    s.context[split..].to_vec(),
                    s.succedent.clone(),
                );
                expect_premise(d, 0, &left, path, report);
                expect_premise(d, 1, &right, path, report);
            }
            Stoup::Just(Formula::LolliL(_, _)) => {
                report.push(path, format!("-oL split {split} exceeds context length"));
            }
            _ => report.push(path, format!("-oL needs an implication in the stoup, found {s}")),
        },
        GRule::LolliR => match &s.succedent {
            Formula::LolliL(a, b) => {
                let mut ctx = s.context.clone();
                ctx.push(a.as_ref().clone());
                let want = StoupSequent::new(s.stoup.clone(), ctx, b.as_ref().clone());
                expect_premise(d, 0, &want, path, report);
            }
            _ => report.push(path, format!("-oR needs an implication succedent, found {s}")),
        },
        GRule::Pass => {
            if !s.stoup.is_empty() || s.context.is_empty() {
                report.push(path, format!("pass must conclude - | A , Γ |- C, found {s}"));
            } else {
                let want = StoupSequent::new(
                    Stoup::Just(s.context[0].clone()),
                    s.context[1..].to_vec(),
                    s.succedent.clone(),
                );
                expect_premise(d, 0, &want, path, report);
            }
        }
    }
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        check_node(p, path, report);
        path.pop();
    }
}

fn expect_premise(
    d: &GDerivation,
    idx: usize,
    want: &StoupSequent,
    path: &[usize],
    report: &mut CheckReport,
) {
    let got = &d.premises[idx].conclusion;
    if got != want {
        report.push(path, format!("premise {idx} must be {want}, found {got}"));
    }
}

/// Search measure: twice the total formula size plus one for an empty
/// stoup. Every backward rule application strictly decreases it.
pub fn measure(s: &StoupSequent) -> usize {
    let stoup = match &s.stoup {
        Stoup::Empty => 0,
        Stoup::Just(f) => f.size(),
    };
    let total = stoup + s.context.iter().map(Formula::size).sum::<usize>() + s.succedent.size();
    2 * total + usize::from(s.stoup.is_empty())
}

/// Exhaustive backward proof search. Terminating, so this is a decision
/// procedure: `None` means the sequent has no derivation.
pub fn prove_g(s: &StoupSequent) -> Result<Option<GDerivation>, FragmentError> {
    if !s.in_lsk_fragment() {
        return Err(FragmentError(s.to_string()));
    }
    let mut memo = HashMap::new();
    Ok(search(s, &mut memo))
}

fn search(s: &StoupSequent, memo: &mut HashMap<StoupSequent, Option<GDerivation>>) -> Option<GDerivation> {
    if let Some(hit) = memo.get(s) {
        return hit.clone();
    }
    let result = expand(s, memo);
    memo.insert(s.clone(), result.clone());
    result
}

fn sub_search(
    s: &StoupSequent,
    parent: &StoupSequent,
    memo: &mut HashMap<StoupSequent, Option<GDerivation>>,
) -> Option<GDerivation> {
    debug_assert!(measure(s) < measure(parent), "measure must decrease: {parent} -> {s}");
    search(s, memo)
}

fn expand(s: &StoupSequent, memo: &mut HashMap<StoupSequent, Option<GDerivation>>) -> Option<GDerivation> {
    if !s.is_balanced() {
        return None;
    }
    // Leaf rules.
    if s.context.is_empty() {
        match &s.stoup {
            Stoup::Just(a) if *a == s.succedent => return Some(GDerivation::ax(a.clone())),
            Stoup::Empty if s.succedent == Formula::Unit => return Some(GDerivation::ir()),
            _ => {}
        }
    }
    // Stoup left rules.
    match &s.stoup {
        Stoup::Just(Formula::Unit) => {
            let premise = StoupSequent::new(Stoup::Empty, s.context.clone(), s.succedent.clone());
            if let Some(d) = sub_search(&premise, s, memo) {
                return Some(GDerivation::il(d));
            }
        }
        Stoup::Just(Formula::TensL(a, b)) => {
            let mut ctx = vec![b.as_ref().clone()];
            ctx.extend_from_slice(&s.context);
            let premise =
                StoupSequent::new(Stoup::Just(a.as_ref().clone()), ctx, s.succedent.clone());
            if let Some(d) = sub_search(&premise, s, memo) {
                return Some(GDerivation::tens_l(d));
            }
        }
        Stoup::Just(Formula::LolliL(a, b)) => {
            for split in 0..=s.context.len() {
                let left = StoupSequent::new(
                    Stoup::Empty,
                    s.context[..split].to_vec(),
                    a.as_ref().clone(),
                );
                let right = StoupSequent::new(
                    Stoup::Just(b.as_ref().clone()),
                    s.context[split..].to_vec(),
                    s.succedent.clone(),
                );
                if let Some(l) = sub_search(&left, s, memo) {
                    if let Some(r) = sub_search(&right, s, memo) {
                        return Some(GDerivation::lolli_l(l, r));
                    }
                }
            }
        }
        _ => {}
    }
    // pass.
    if s.stoup.is_empty() && !s.context.is_empty() {
        let premise = StoupSequent::new(
            Stoup::Just(s.context[0].clone()),
            s.context[1..].to_vec(),
            s.succedent.clone(),
        );
        if let Some(d) = sub_search(&premise, s, memo) {
            return Some(GDerivation::pass(d));
        }
    }
    // Right rules.
    match &s.succedent {
        Formula::LolliL(a, b) => {
            let mut ctx = s.context.clone();
            ctx.push(a.as_ref().clone());
            let premise = StoupSequent::new(s.stoup.clone(), ctx, b.as_ref().clone());
            if let Some(d) = sub_search(&premise, s, memo) {
                return Some(GDerivation::lolli_r(d));
            }
        }
        Formula::TensL(a, b) => {
            for split in 0..=s.context.len() {
                let left = StoupSequent::new(
                    s.stoup.clone(),
                    s.context[..split].to_vec(),
                    a.as_ref().clone(),
                );
                let right = StoupSequent::new(
                    Stoup::Empty,
                    s.context[split..].to_vec(),
                    b.as_ref().clone(),
                );
                if let Some(l) = sub_search(&left, s, memo) {
                    if let Some(r) = sub_search(&right, s, memo) {
                        return Some(GDerivation::tens_r(l, r));
                    }
                }
            }
        }
        _ => {}
    }
    None
}

/// Admissible stoup cut: from `f : S | Γ |- A` and `g : A | Δ |- C`
/// produces a derivation of `S | Γ , Δ |- C` with no cut node.
pub fn scut(f: &GDerivation, g: &GDerivation) -> Result<GDerivation, CutError> {
    match &g.conclusion.stoup {
        Stoup::Just(a) if *a == f.conclusion.succedent => Ok(scut_rec(f, g)),
        other => Err(CutError::Mismatch {
            left: f.conclusion.succedent.to_string(),
            right: match other {
                Stoup::Empty => "an empty stoup".to_string(),
                Stoup::Just(b) => b.to_string(),
            },
        }),
    }
}

/// Admissible context cut: from `f : - | Γ |- A` and
/// `g : S | Δ0 , A , Δ1 |- C` with `A` at context index `pos` produces a
/// derivation of `S | Δ0 , Γ , Δ1 |- C`.
pub fn ccut(f: &GDerivation, g: &GDerivation, pos: usize) -> Result<GDerivation, CutError> {
    if !f.conclusion.stoup.is_empty() {
        return Err(CutError::StoupNotEmpty(f.conclusion.stoup.to_string()));
    }
    match g.conclusion.context.get(pos) {
        None => Err(CutError::BadPosition { pos, len: g.conclusion.context.len() }),
        Some(a) if *a != f.conclusion.succedent => Err(CutError::Mismatch {
            left: f.conclusion.succedent.to_string(),
            right: a.to_string(),
        }),
        Some(_) => Ok(ccut_rec(f, g, pos)),
    }
}

// Induction on f; for the right rules IR / *R / -oR a subinduction on g.
// The measure (cut formula size, |f| + |g|) decreases lexicographically in
// every recursive call.
fn scut_rec(f: &GDerivation, g: &GDerivation) -> GDerivation {
    match f.rule {
        GRule::Ax => g.clone(),
        GRule::Pass => GDerivation::pass(scut_rec(&f.premises[0], g)),
        GRule::IL => GDerivation::il(scut_rec(&f.premises[0], g)),
        GRule::TensL => GDerivation::tens_l(scut_rec(&f.premises[0], g)),
        GRule::LolliL { .. } => {
            GDerivation::lolli_l(f.premises[0].clone(), scut_rec(&f.premises[1], g))
        }
        GRule::IR => scut_unit(g),
        GRule::TensR { .. } => scut_tens(f, g),
        GRule::LolliR => scut_lolli(f, g),
    }
}

// f = IR, so the cut formula is I and g's stoup is I.
fn scut_unit(g: &GDerivation) -> GDerivation {
    match g.rule {
        GRule::Ax => GDerivation::ir(),
        GRule::IL => g.premises[0].clone(),
        GRule::LolliR => GDerivation::lolli_r(scut_unit(&g.premises[0])),
        GRule::TensR { .. } => {
            GDerivation::tens_r(scut_unit(&g.premises[0]), g.premises[1].clone())
        }
        _ => unreachable!("no rule with stoup I: {:?}", g.rule),
    }
}

// f = *R (f1, f2), so the cut formula is a tensor.
fn scut_tens(f: &GDerivation, g: &GDerivation) -> GDerivation {
    match g.rule {
        GRule::Ax => f.clone(),
        GRule::TensL => {
            // Principal case: both cut formulas shrink.
            let inner = ccut_rec(&f.premises[1], &g.premises[0], 0);
            scut_rec(&f.premises[0], &inner)
        }
        GRule::LolliR => GDerivation::lolli_r(scut_tens(f, &g.premises[0])),
        GRule::TensR { .. } => {
            GDerivation::tens_r(scut_tens(f, &g.premises[0]), g.premises[1].clone())
        }
        _ => unreachable!("no rule with tensor stoup: {:?}", g.rule),
    }
}

// f = -oR f', so the cut formula is an implication.
fn scut_lolli(f: &GDerivation, g: &GDerivation) -> GDerivation {
    match g.rule {
        GRule::Ax => f.clone(),
        GRule::LolliL { .. } => {
            // Principal case: cut A -oL B against its left rule.
            let inner = scut_rec(&f.premises[0], &g.premises[1]);
            ccut_rec(&g.premises[0], &inner, f.conclusion.context.len())
        }
        GRule::LolliR => GDerivation::lolli_r(scut_lolli(f, &g.premises[0])),
        GRule::TensR { .. } => {
            GDerivation::tens_r(scut_lolli(f, &g.premises[0]), g.premises[1].clone())
        }
        _ => unreachable!("no rule with implication stoup: {:?}", g.rule),
    }
}

// Induction on g.
fn ccut_rec(f: &GDerivation, g: &GDerivation, pos: usize) -> GDerivation {
    match g.rule {
        GRule::Pass => {
            if pos == 0 {
                // The cut formula is the passivated one.
                scut_rec(f, &g.premises[0])
            } else {
                GDerivation::pass(ccut_rec(f, &g.premises[0], pos - 1))
            }
        }
        GRule::IL => GDerivation::il(ccut_rec(f, &g.premises[0], pos)),
        GRule::TensL => GDerivation::tens_l(ccut_rec(f, &g.premises[0], pos + 1)),
        GRule::LolliR => GDerivation::lolli_r(ccut_rec(f, &g.premises[0], pos)),
        GRule::LolliL { split } => {
            if pos < split {
                GDerivation::lolli_l(ccut_rec(f, &g.premises[0], pos), g.premises[1].clone())
            } else {
                GDerivation::lolli_l(g.premises[0].clone(), ccut_rec(f, &g.premises[1], pos - split))
            }
        }
        GRule::TensR { split } => {
            if pos < split {
                GDerivation::tens_r(ccut_rec(f, &g.premises[0], pos), g.premises[1].clone())
            } else {
                GDerivation::tens_r(g.premises[0].clone(), ccut_rec(f, &g.premises[1], pos - split))
            }
        }
        GRule::Ax | GRule::IR => unreachable!("context of {:?} is empty", g.rule),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_formula, parse_stoup_sequent};

    fn prove(s: &str) -> Option<GDerivation> {
        prove_g(&parse_stoup_sequent(s).unwrap()).unwrap()
    }

    #[test]
    fn prove_unit() {
        let d = prove("- | |- I").unwrap();
        assert_eq!(d.rule, GRule::IR);
    }

    #[test]
    fn prove_lolli_ax() {
        let d = prove("X -oL Y | X |- Y").unwrap();
        assert!(check_g(&d).is_ok());
        assert!(matches!(d.rule, GRule::LolliL { .. }));
    }

    #[test]
    fn prove_identity_implication() {
        let d = prove("- | |- (X *L Y) -oL (X *L Y)").unwrap();
        assert!(check_g(&d).is_ok());
        assert!(prove("X *L Y | |- X *L Y").is_some());
    }

    #[test]
    fn left_unitor_is_one_directional() {
        assert!(prove("I *L X | |- X").is_some());
        assert!(prove("X | |- I *L X").is_none());
    }

    #[test]
    fn accepted_display_derivation() {
        // I *L X | |- X via *L, IL, pass, ax.
        let d = GDerivation::tens_l(GDerivation::il(GDerivation::pass(GDerivation::ax(
            parse_formula("X").unwrap(),
        ))));
        assert_eq!(d.conclusion, parse_stoup_sequent("I *L X | |- X").unwrap());
        assert!(check_g(&d).is_ok());
    }

    #[test]
    fn ax_with_context_rejected() {
        let d = GDerivation {
            conclusion: parse_stoup_sequent("X | Y |- X").unwrap(),
            rule: GRule::Ax,
            premises: vec![],
        };
        assert!(!check_g(&d).is_ok());
    }

    #[test]
    fn tens_r_stoup_on_right_premise_rejected() {
        // A well-formed node would put the stoup X on the left premise.
        let bad = GDerivation {
            conclusion: parse_stoup_sequent("X | |- Y *L X").unwrap(),
            rule: GRule::TensR { split: 0 },
            premises: vec![
                GDerivation {
                    conclusion: parse_stoup_sequent("- | |- Y").unwrap(),
                    rule: GRule::IR,
                    premises: vec![],
                },
                GDerivation::ax(parse_formula("X").unwrap()),
            ],
        };
        assert!(!check_g(&bad).is_ok());
    }

    #[test]
    fn scut_with_ax_is_identity() {
        let f = prove("X -oL Y | X |- Y").unwrap();
        let g = GDerivation::ax(parse_formula("Y").unwrap());
        let cut = scut(&f, &g).unwrap();
        assert_eq!(cut, f);
    }

    #[test]
    fn scut_permutes_into_lolli_l() {
        // f ends in -oL, so the cut goes into its right premise.
        let f = prove("X -oL Y | X |- Y").unwrap();
        let g = prove("Y | |- Y *L I").unwrap();
        let cut = scut(&f, &g).unwrap();
        assert!(check_g(&cut).is_ok());
        assert_eq!(cut.conclusion, parse_stoup_sequent("X -oL Y | X |- Y *L I").unwrap());
        assert!(matches!(cut.rule, GRule::LolliL { .. }));
        assert_eq!(cut.premises[0], f.premises[0]);
    }

    #[test]
    fn scut_principal_lolli() {
        // f = -oR f', g = -oL (g', g''): the cut formulas shrink.
        let f = prove("X | |- Y -oL (X *L Y)").unwrap();
        assert_eq!(f.rule, GRule::LolliR);
        let g = prove("Y -oL (X *L Y) | Y |- X *L Y").unwrap();
        assert!(matches!(g.rule, GRule::LolliL { .. }));
        let cut = scut(&f, &g).unwrap();
        assert!(check_g(&cut).is_ok());
        assert_eq!(cut.conclusion, parse_stoup_sequent("X | Y |- X *L Y").unwrap());
    }

    #[test]
    fn scut_mismatch_reported() {
        let f = prove("- | |- I").unwrap();
        let g = GDerivation::ax(parse_formula("X").unwrap());
        assert!(matches!(scut(&f, &g), Err(CutError::Mismatch { .. })));
    }

    #[test]
    fn ccut_pass_interaction() {
        // g = pass g' with the cut formula passivated.
        let f = prove("- | X |- I *L X").unwrap();
        let g = prove("- | I *L X |- I *L X").unwrap();
        assert_eq!(g.rule, GRule::Pass);
        let cut = ccut(&f, &g, 0).unwrap();
        assert!(check_g(&cut).is_ok());
        assert_eq!(cut.conclusion, parse_stoup_sequent("- | X |- I *L X").unwrap());
    }

    #[test]
    fn ccut_permutes_up_lolli_r() {
        let f = prove("- | X |- I *L X").unwrap();
        let g = prove("Y | I *L X |- Z -oL ((Y *L (I *L X)) *L Z)").unwrap();
        assert_eq!(g.rule, GRule::LolliR);
        let cut = ccut(&f, &g, 0).unwrap();
        assert!(check_g(&cut).is_ok());
        assert_eq!(
            cut.conclusion,
            parse_stoup_sequent("Y | X |- Z -oL ((Y *L (I *L X)) *L Z)").unwrap()
        );
        assert_eq!(cut.rule, GRule::LolliR);
    }

    #[test]
    fn ccut_splits_into_lolli_l_premises() {
        let f = prove("- | X |- X *L I").unwrap();
        // Cut formula inside the left premise context of -oL.
        let g = prove("(X *L I) -oL Y | X *L I |- Y").unwrap();
        assert!(matches!(g.rule, GRule::LolliL { .. }));
        let cut = ccut(&f, &g, 0).unwrap();
        assert!(check_g(&cut).is_ok());
        assert_eq!(cut.conclusion, parse_stoup_sequent("(X *L I) -oL Y | X |- Y").unwrap());
        assert!(matches!(cut.rule, GRule::LolliL { .. }));
    }

    #[test]
    fn cut_agreement_with_derivability() {
        // If S | Γ |- A and A | Δ |- C are derivable then S | Γ , Δ |- C is.
        let pairs = [
            ("- | X |- I *L X", "I *L X | |- I *L X"),
            ("X *L Y | |- X *L Y", "X *L Y | I |- (X *L Y) *L I"),
        ];
        for (fs, gs) in pairs {
            let f = prove(fs).unwrap();
            let g = prove(gs).unwrap();
            let cut = scut(&f, &g).unwrap();
            assert!(check_g(&cut).is_ok());
            assert!(prove_g(&cut.conclusion).unwrap().is_some());
        }
    }

    #[test]
    fn prove_fragment_violation() {
        let s = parse_stoup_sequent("X *R Y | |- X *R Y").unwrap();
        assert!(prove_g(&s).is_err());
    }
}
