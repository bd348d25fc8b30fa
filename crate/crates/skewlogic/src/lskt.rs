//! LSkT, the tree-antecedent calculus à la Lambek for left skew monoidal
//! closed categories: derivation checking, admissible cut, the admissible
//! inverse rules, and depth-bounded backward search.
//!
//! Structural rules carry explicit positions (the paper works with
//! schematic contexts `T[..]`), which makes checking deterministic.

use std::collections::HashMap;

use thiserror::Error;

use crate::check::CheckReport;
use crate::formula::Formula;
use crate::lskg::FragmentError;
use crate::tree::{Step, Tree, TreePath, TreeSequent};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TRule {
    Ax,
    IR,
    IL(TreePath),
    TensL(TreePath),
    TensR,
    LolliL(TreePath),
    LolliR,
    /// Premise `T[U0 , (U1 , U2)]`, conclusion `T[(U0 , U1) , U2]`.
    Assoc(TreePath),
    /// Premise `T[U]`, conclusion `T[- , U]`.
    UnitL(TreePath),
    /// Premise `T[U , -]`, conclusion `T[U]`.
    UnitR(TreePath),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TDerivation {
    pub conclusion: TreeSequent,
    pub rule: TRule,
    pub premises: Vec<TDerivation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeCutError {
    #[error("no leaf {want} at position {pos}: found {found}")]
    Mismatch { pos: TreePath, want: String, found: String },
    #[error("position {0} leaves the antecedent")]
    BadPosition(TreePath),
}

impl TDerivation {
    fn node(conclusion: TreeSequent, rule: TRule, premises: Vec<TDerivation>) -> TDerivation {
        TDerivation { conclusion, rule, premises }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(TDerivation::size).sum::<usize>()
    }

    pub fn ax(a: Formula) -> TDerivation {
        TDerivation::node(TreeSequent::new(Tree::leaf(a.clone()), a), TRule::Ax, vec![])
    }

    pub fn ir() -> TDerivation {
        TDerivation::node(TreeSequent::new(Tree::EmptyLeaf, Formula::Unit), TRule::IR, vec![])
    }

    /// `IL`: turns the empty leaf at `pos` of the premise into `I`.
    pub fn il(d: TDerivation, pos: TreePath) -> TDerivation {
        debug_assert_eq!(d.conclusion.antecedent.subtree(&pos), Ok(&Tree::EmptyLeaf));
        let ante = d.conclusion.antecedent.replace(&pos, Tree::leaf(Formula::Unit)).unwrap();
        let concl = TreeSequent::new(ante, d.conclusion.succedent.clone());
        TDerivation::node(concl, TRule::IL(pos), vec![d])
    }

    /// `*L`: folds the pair `(A , B)` of formula leaves at `pos` into the
    /// leaf `A *L B`.
    pub fn tens_l(d: TDerivation, pos: TreePath) -> TDerivation {
        let sub = d.conclusion.antecedent.subtree(&pos).unwrap();
        let Tree::Comma(l, r) = sub else {
            panic!("*L needs a comma pair at {pos}, found {sub}");
        };
        let (Tree::Leaf(a), Tree::Leaf(b)) = (l.as_ref(), r.as_ref()) else {
            panic!("*L needs two formula leaves at {pos}, found {sub}");
        };
        let folded = Tree::leaf(Formula::tens_l(a.clone(), b.clone()));
        let ante = d.conclusion.antecedent.replace(&pos, folded).unwrap();
        let concl = TreeSequent::new(ante, d.conclusion.succedent.clone());
        TDerivation::node(concl, TRule::TensL(pos), vec![d])
    }

    pub fn tens_r(l: TDerivation, r: TDerivation) -> TDerivation {
        let concl = TreeSequent::new(
            Tree::comma(l.conclusion.antecedent.clone(), r.conclusion.antecedent.clone()),
            Formula::tens_l(l.conclusion.succedent.clone(), r.conclusion.succedent.clone()),
        );
        TDerivation::node(concl, TRule::TensR, vec![l, r])
    }

    /// `-oL`: premises `U |- A` and `T[B] |- C` (with `B` the leaf at
    /// `pos`) yield `T[(A -oL B , U)] |- C`.
    pub fn lolli_l(arg: TDerivation, main: TDerivation, pos: TreePath) -> TDerivation {
        let sub = main.conclusion.antecedent.subtree(&pos).unwrap();
        let Tree::Leaf(b) = sub else {
            panic!("-oL needs a formula leaf at {pos}, found {sub}");
        };
        let lolli = Formula::lolli_l(arg.conclusion.succedent.clone(), b.clone());
        let pair = Tree::comma(Tree::leaf(lolli), arg.conclusion.antecedent.clone());
        let ante = main.conclusion.antecedent.replace(&pos, pair).unwrap();
        let concl = TreeSequent::new(ante, main.conclusion.succedent.clone());
        TDerivation::node(concl, TRule::LolliL(pos), vec![arg, main])
    }

    pub fn lolli_r(d: TDerivation) -> TDerivation {
        let Tree::Comma(t, a) = &d.conclusion.antecedent else {
            panic!("-oR needs a comma pair at the root");
        };
        let Tree::Leaf(a) = a.as_ref() else {
            panic!("-oR needs a formula leaf on the right of the root");
        };
        let concl = TreeSequent::new(
            t.as_ref().clone(),
            Formula::lolli_l(a.clone(), d.conclusion.succedent.clone()),
        );
        TDerivation::node(concl, TRule::LolliR, vec![d])
    }

    /// `assoc`: rebalances `U0 , (U1 , U2)` at `pos` to `(U0 , U1) , U2`.
    pub fn assoc(d: TDerivation, pos: TreePath) -> TDerivation {
        let sub = d.conclusion.antecedent.subtree(&pos).unwrap();
        let Tree::Comma(u0, rest) = sub else {
            panic!("assoc needs a comma pair at {pos}");
        };
        let Tree::Comma(u1, u2) = rest.as_ref() else {
            panic!("assoc needs a right-nested pair at {pos}");
        };
        let rotated = Tree::comma(
            Tree::comma(u0.as_ref().clone(), u1.as_ref().clone()),
            u2.as_ref().clone(),
        );
        let ante = d.conclusion.antecedent.replace(&pos, rotated).unwrap();
        let concl = TreeSequent::new(ante, d.conclusion.succedent.clone());
        TDerivation::node(concl, TRule::Assoc(pos), vec![d])
    }

    /// `unitL`: wraps the subtree at `pos` as `(- , U)`.
    pub fn unit_l(d: TDerivation, pos: TreePath) -> TDerivation {
        let sub = d.conclusion.antecedent.subtree(&pos).unwrap().clone();
        let ante =
            d.conclusion.antecedent.replace(&pos, Tree::comma(Tree::EmptyLeaf, sub)).unwrap();
        let concl = TreeSequent::new(ante, d.conclusion.succedent.clone());
        TDerivation::node(concl, TRule::UnitL(pos), vec![d])
    }

    /// `unitR`: collapses the pair `(U , -)` at `pos` to `U`.
    pub fn unit_r(d: TDerivation, pos: TreePath) -> TDerivation {
        let sub = d.conclusion.antecedent.subtree(&pos).unwrap();
        let Tree::Comma(u, e) = sub else {
            panic!("unitR needs a comma pair at {pos}");
        };
        assert_eq!(e.as_ref(), &Tree::EmptyLeaf, "unitR needs an empty right child at {pos}");
        let ante = d.conclusion.antecedent.replace(&pos, u.as_ref().clone()).unwrap();
        let concl = TreeSequent::new(ante, d.conclusion.succedent.clone());
        TDerivation::node(concl, TRule::UnitR(pos), vec![d])
    }
}

/// Checks every node of `d` against its schema at its stated position.
pub fn check_t(d: &TDerivation) -> CheckReport {
    let mut report = CheckReport::default();
    let mut path = Vec::new();
    check_node(d, &mut path, &mut report);
    report
}

fn check_node(d: &TDerivation, path: &mut Vec<usize>, report: &mut CheckReport) {
    let s = &d.conclusion;
    if !s.in_lsk_fragment() {
        report.push(path, format!("sequent {s} is outside the LSk fragment"));
    }
    let arity = match d.rule {
        TRule::Ax | TRule::IR => 0,
        TRule::TensR | TRule::LolliL(_) => 2,
        _ => 1,
    };
    if d.premises.len() != arity {
        report.push(
            path,
            format!("rule {:?} expects {} premises, found {}", d.rule, arity, d.premises.len()),
        );
        return;
    }
    check_schema(d, path, report);
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        check_node(p, path, report);
        path.pop();
    }
}

fn check_schema(d: &TDerivation, path: &[usize], report: &mut CheckReport) {
    let s = &d.conclusion;
    let mut expect = |idx: usize, want: TreeSequent| {
        let got = &d.premises[idx].conclusion;
        if *got != want {
            report.push(path, format!("premise {idx} must be {want}, found {got}"));
        }
    };
    match &d.rule {
        TRule::Ax => {
            if s.antecedent != Tree::leaf(s.succedent.clone()) {
                report.push(path, format!("ax must conclude A |- A, found {s}"));
            }
        }
        TRule::IR => {
            if s.antecedent != Tree::EmptyLeaf || s.succedent != Formula::Unit {
                report.push(path, format!("IR must conclude - |- I, found {s}"));
            }
        }
        TRule::IL(pos) => match s.antecedent.subtree(pos) {
            Ok(Tree::Leaf(Formula::Unit)) => {
                let ante = s.antecedent.replace(pos, Tree::EmptyLeaf).unwrap();
                expect(0, TreeSequent::new(ante, s.succedent.clone()));
            }
            _ => report.push(path, format!("IL needs the leaf I at {pos} in {s}")),
        },
        TRule::TensL(pos) => match s.antecedent.subtree(pos) {
            Ok(Tree::Leaf(Formula::TensL(a, b))) => {
                let pair =
                    Tree::comma(Tree::leaf(a.as_ref().clone()), Tree::leaf(b.as_ref().clone()));
                let ante = s.antecedent.replace(pos, pair).unwrap();
                expect(0, TreeSequent::new(ante, s.succedent.clone()));
            }
            _ => report.push(path, format!("*L needs a tensor leaf at {pos} in {s}")),
        },
        TRule::TensR => match (&s.antecedent, &s.succedent) {
            (Tree::Comma(l, r), Formula::TensL(a, b)) => {
                expect(0, TreeSequent::new(l.as_ref().clone(), a.as_ref().clone()));
                expect(1, TreeSequent::new(r.as_ref().clone(), b.as_ref().clone()));
            }
            _ => report.push(path, format!("*R must conclude T , U |- A *L B, found {s}")),
        },
        TRule::LolliL(pos) => match s.antecedent.subtree(pos) {
            Ok(Tree::Comma(head, u)) => match head.as_ref() {
                Tree::Leaf(Formula::LolliL(a, b)) => {
                    expect(0, TreeSequent::new(u.as_ref().clone(), a.as_ref().clone()));
                    let ante = s.antecedent.replace(pos, Tree::leaf(b.as_ref().clone())).unwrap();
                    expect(1, TreeSequent::new(ante, s.succedent.clone()));
                }
                _ => report.push(path, format!("-oL needs an implication leaf at {pos}l in {s}")),
            },
            _ => report.push(path, format!("-oL needs a comma pair at {pos} in {s}")),
        },
        TRule::LolliR => match &s.succedent {
            Formula::LolliL(a, b) => {
                let ante = Tree::comma(s.antecedent.clone(), Tree::leaf(a.as_ref().clone()));
                expect(0, TreeSequent::new(ante, b.as_ref().clone()));
            }
            _ => report.push(path, format!("-oR needs an implication succedent in {s}")),
        },
        TRule::Assoc(pos) => match s.antecedent.subtree(pos) {
            Ok(Tree::Comma(l, u2)) => match l.as_ref() {
                Tree::Comma(u0, u1) => {
                    let rotated = Tree::comma(
                        u0.as_ref().clone(),
                        Tree::comma(u1.as_ref().clone(), u2.as_ref().clone()),
                    );
                    let ante = s.antecedent.replace(pos, rotated).unwrap();
                    expect(0, TreeSequent::new(ante, s.succedent.clone()));
                }
                _ => report.push(path, format!("assoc needs a left-nested pair at {pos} in {s}")),
            },
            _ => report.push(path, format!("assoc needs a comma pair at {pos} in {s}")),
        },
        TRule::UnitL(pos) => match s.antecedent.subtree(pos) {
            Ok(Tree::Comma(e, u)) if e.as_ref() == &Tree::EmptyLeaf => {
                let ante = s.antecedent.replace(pos, u.as_ref().clone()).unwrap();
                expect(0, TreeSequent::new(ante, s.succedent.clone()));
            }
            _ => report.push(path, format!("unitL needs (- , U) at {pos} in {s}")),
        },
        TRule::UnitR(pos) => match s.antecedent.subtree(pos) {
            Ok(u) => {
                let pair = Tree::comma(u.clone(), Tree::EmptyLeaf);
                let ante = s.antecedent.replace(pos, pair).unwrap();
                expect(0, TreeSequent::new(ante, s.succedent.clone()));
            }
            Err(_) => report.push(path, format!("unitR position {pos} leaves the antecedent")),
        },
    }
}

/// Where a leaf position `p` of the conclusion lands in the premises:
/// `Premise(i, q)` when the occurrence persists at `q` in premise `i`,
/// `Principal` when `p` is the formula introduced by the rule itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Transport {
    Premise(usize, TreePath),
    Principal,
}

pub(crate) fn transport_t(rule: &TRule, p: &TreePath) -> Transport {
    use Transport::*;
    match rule {
        TRule::Ax | TRule::IR => unreachable!("leaf rules have no premises"),
        TRule::IL(q) | TRule::TensL(q) => {
            if q == p {
                Principal
            } else {
                Premise(0, p.clone())
            }
        }
        TRule::TensR => match p.0.split_first() {
            Some((Step::Left, rest)) => Premise(0, TreePath(rest.to_vec())),
            Some((Step::Right, rest)) => Premise(1, TreePath(rest.to_vec())),
            None => unreachable!("leaf path cannot stop at the root pair"),
        },
        TRule::LolliL(q) => {
            if *p == q.child(Step::Left) {
                Principal
            } else if let Some(rest) = q.child(Step::Right).strip_prefix(p) {
                Premise(0, rest)
            } else {
                Premise(1, p.clone())
            }
        }
        TRule::LolliR => Premise(0, TreePath(vec![Step::Left]).join(p)),
        TRule::Assoc(q) => match q.strip_prefix(p) {
            None => Premise(0, p.clone()),
            Some(rest) => {
                let mapped = match rest.0.as_slice() {
                    [Step::Left, Step::Left, tail @ ..] => {
                        let mut v = vec![Step::Left];
                        v.extend_from_slice(tail);
                        v
                    }
                    [Step::Left, Step::Right, tail @ ..] => {
                        let mut v = vec![Step::Right, Step::Left];
                        v.extend_from_slice(tail);
                        v
                    }
                    [Step::Right, tail @ ..] => {
                        let mut v = vec![Step::Right, Step::Right];
                        v.extend_from_slice(tail);
                        v
                    }
                    _ => unreachable!("leaf path cannot stop inside the rotated pair"),
                };
                Premise(0, q.join(&TreePath(mapped)))
            }
        },
        TRule::UnitL(q) => match q.strip_prefix(p) {
            None => Premise(0, p.clone()),
            Some(rest) => match rest.0.as_slice() {
                [Step::Right, tail @ ..] => Premise(0, q.join(&TreePath(tail.to_vec()))),
                _ => unreachable!("leaf path cannot hit the introduced empty leaf"),
            },
        },
        TRule::UnitR(q) => match q.strip_prefix(p) {
            None => Premise(0, p.clone()),
            Some(rest) => {
                let mut v = vec![Step::Left];
                v.extend_from_slice(&rest.0);
                Premise(0, q.join(&TreePath(v)))
            }
        },
    }
}

fn expect_leaf(g: &TDerivation, pos: &TreePath, want: &Formula) -> Result<(), TreeCutError> {
    match g.conclusion.antecedent.subtree(pos) {
        Err(_) => Err(TreeCutError::BadPosition(pos.clone())),
        Ok(Tree::Leaf(a)) if a == want => Ok(()),
        Ok(other) => Err(TreeCutError::Mismatch {
            pos: pos.clone(),
            want: want.to_string(),
            found: other.to_string(),
        }),
    }
}

/// Admissible cut: from `f : U |- A` and `g : T[A] |- C` with the leaf `A`
/// at `pos` produces a cut-free derivation of `T[U] |- C`.
pub fn cut_t(
    f: &TDerivation,
    g: &TDerivation,
    pos: &TreePath,
) -> Result<TDerivation, TreeCutError> {
    expect_leaf(g, pos, &f.conclusion.succedent)?;
    Ok(cut_rec(f, g, pos))
}

// Induction on f; subinduction on g when f ends in a right rule. The
// measure (cut formula size, |f| + |g|) decreases lexicographically.
fn cut_rec(f: &TDerivation, g: &TDerivation, p: &TreePath) -> TDerivation {
    match &f.rule {
        TRule::Ax => g.clone(),
        TRule::IL(q) => TDerivation::il(cut_rec(&f.premises[0], g, p), p.join(q)),
        TRule::TensL(q) => TDerivation::tens_l(cut_rec(&f.premises[0], g, p), p.join(q)),
        TRule::Assoc(q) => TDerivation::assoc(cut_rec(&f.premises[0], g, p), p.join(q)),
        TRule::UnitL(q) => TDerivation::unit_l(cut_rec(&f.premises[0], g, p), p.join(q)),
        TRule::UnitR(q) => TDerivation::unit_r(cut_rec(&f.premises[0], g, p), p.join(q)),
        TRule::LolliL(q) => TDerivation::lolli_l(
            f.premises[0].clone(),
            cut_rec(&f.premises[1], g, p),
            p.join(q),
        ),
        TRule::IR => cut_unit(f, g, p),
        TRule::TensR => cut_tens(f, g, p),
        TRule::LolliR => cut_lolli(f, g, p),
    }
}

// Permutes the cut into the premise of g that carries the occurrence.
fn descend_g(f: &TDerivation, g: &TDerivation, p: &TreePath) -> TDerivation {
    let Transport::Premise(idx, q) = transport_t(&g.rule, p) else {
        unreachable!("principal cases are handled by the caller");
    };
    let mut premises = g.premises.clone();
    premises[idx] = cut_rec(f, &g.premises[idx], &q);
    let ante = g.conclusion.antecedent.replace(p, f.conclusion.antecedent.clone()).unwrap();
    TDerivation::node(
        TreeSequent::new(ante, g.conclusion.succedent.clone()),
        g.rule.clone(),
        premises,
    )
}

// f = IR, so the cut leaf is I and U is the empty tree.
fn cut_unit(f: &TDerivation, g: &TDerivation, p: &TreePath) -> TDerivation {
    match &g.rule {
        TRule::Ax => TDerivation::ir(),
        TRule::IL(q) if q == p => g.premises[0].clone(),
        _ => descend_g(f, g, p),
    }
}

// f = *R (f1, f2), antecedent U1 , U2 and succedent A1 *L A2.
fn cut_tens(f: &TDerivation, g: &TDerivation, p: &TreePath) -> TDerivation {
    match &g.rule {
        TRule::Ax => f.clone(),
        TRule::TensL(q) if q == p => {
            let step = cut_rec(&f.premises[1], &g.premises[0], &p.child(Step::Right));
            cut_rec(&f.premises[0], &step, &p.child(Step::Left))
        }
        _ => descend_g(f, g, p),
    }
}

// f = -oR f', cut formula A -oL B.
fn cut_lolli(f: &TDerivation, g: &TDerivation, p: &TreePath) -> TDerivation {
    match &g.rule {
        TRule::Ax => f.clone(),
        TRule::LolliL(q) if *p == q.child(Step::Left) => {
            let step = cut_rec(&f.premises[0], &g.premises[1], q);
            cut_rec(&g.premises[0], &step, &q.child(Step::Right))
        }
        _ => descend_g(f, g, p),
    }
}

/// The admissible rule `IL⁻¹`: from `T[I] |- C` with the unit leaf at
/// `pos` produces a derivation of `T[-] |- C`.
pub fn il_inverse(d: &TDerivation, pos: &TreePath) -> Result<TDerivation, TreeCutError> {
    expect_leaf(d, pos, &Formula::Unit)?;
    Ok(il_inv_rec(d, pos))
}

fn il_inv_rec(d: &TDerivation, p: &TreePath) -> TDerivation {
    match &d.rule {
        TRule::Ax => TDerivation::ir(),
        TRule::IL(q) if q == p => d.premises[0].clone(),
        _ => descend_replacing(d, p, Tree::EmptyLeaf, il_inv_rec),
    }
}

/// The admissible rule `*L⁻¹`: from `T[A *L B] |- C` with the tensor leaf
/// at `pos` produces a derivation of `T[(A , B)] |- C`.
pub fn tensl_inverse(d: &TDerivation, pos: &TreePath) -> Result<TDerivation, TreeCutError> {
    match d.conclusion.antecedent.subtree(pos) {
        Err(_) => Err(TreeCutError::BadPosition(pos.clone())),
        Ok(Tree::Leaf(Formula::TensL(_, _))) => Ok(tensl_inv_rec(d, pos)),
        Ok(other) => Err(TreeCutError::Mismatch {
            pos: pos.clone(),
            want: "a tensor leaf".to_string(),
            found: other.to_string(),
        }),
    }
}

fn tensl_inv_rec(d: &TDerivation, p: &TreePath) -> TDerivation {
    match &d.rule {
        TRule::Ax => {
            let Formula::TensL(a, b) = &d.conclusion.succedent else {
                unreachable!("validated: the leaf at p is a tensor");
            };
            TDerivation::tens_r(
                TDerivation::ax(a.as_ref().clone()),
                TDerivation::ax(b.as_ref().clone()),
            )
        }
        TRule::TensL(q) if q == p => d.premises[0].clone(),
        _ => {
            let Ok(Tree::Leaf(Formula::TensL(a, b))) = d.conclusion.antecedent.subtree(p) else {
                unreachable!("validated on entry");
            };
            let pair =
                Tree::comma(Tree::leaf(a.as_ref().clone()), Tree::leaf(b.as_ref().clone()));
            descend_replacing(d, p, pair, tensl_inv_rec)
        }
    }
}

// Shared permute step for the inverse rules: rebuilds the node with the
// subtree at `p` replaced and the recursion pushed into the right premise.
fn descend_replacing(
    d: &TDerivation,
    p: &TreePath,
    replacement: Tree,
    rec: fn(&TDerivation, &TreePath) -> TDerivation,
) -> TDerivation {
    let Transport::Premise(idx, q) = transport_t(&d.rule, p) else {
        unreachable!("principal cases are handled by the caller");
    };
    let mut premises = d.premises.clone();
    premises[idx] = rec(&d.premises[idx], &q);
    let ante = d.conclusion.antecedent.replace(p, replacement).unwrap();
    TDerivation::node(
        TreeSequent::new(ante, d.conclusion.succedent.clone()),
        d.rule.clone(),
        premises,
    )
}

/// Reusable bounded prover with caches shared across queries.
///
/// Sound: every returned derivation re-checks. Complete exactly up to the
/// depth bound: a minimal proof never repeats a sequent along a branch
/// (repetitions splice out), so pruning on-stack revisits loses nothing.
/// Failures are cached only when they did not depend on a pruned revisit
/// of a strict ancestor, tracked Tarjan-style via the lowest stack index a
/// failure touched. Deciding LSkT sequents exactly goes through the LSkG
/// translation (`equiv::decide_lskt`).
#[derive(Default)]
pub struct TProver {
    /// Proofs found so far, with their heights: a hit only counts when the
    /// cached proof fits the current budget.
    proved: HashMap<TreeSequent, (TDerivation, usize)>,
    /// Largest budget at which a sequent is known to have no derivation.
    failed: HashMap<TreeSequent, usize>,
    on_stack: HashMap<TreeSequent, usize>,
    /// Failures whose validity still depends on an in-progress ancestor:
    /// (sequent, budget, lowest stack index depended on).
    pending: Vec<(TreeSequent, usize, usize)>,
    depth: usize,
    /// Refutation models: a sequent invalid in one of them has no
    /// derivation at any depth. None disables semantic pruning.
    battery: Option<crate::semantics::ModelBattery>,
}

const CLEAN: usize = usize::MAX;

fn t_height(d: &TDerivation) -> usize {
    1 + d.premises.iter().map(t_height).max().unwrap_or(0)
}

impl TProver {
    /// A prover with the standard semantic-pruning battery.
    pub fn new() -> TProver {
        TProver { battery: Some(crate::semantics::ModelBattery::standard()), ..TProver::default() }
    }

    /// A prover with purely syntactic search.
    pub fn without_semantic_prune() -> TProver {
        TProver::default()
    }

    /// Iterative deepening up to `depth` rule applications per branch.
    pub fn prove(&mut self, s: &TreeSequent, depth: usize) -> Option<TDerivation> {
        if let Some(batt) = &self.battery {
            // Root goals get the exhaustive-valuation sweep.
            if !self.failed.contains_key(s) && batt.refutes_exhaustive(s) {
                self.failed.insert(s.clone(), usize::MAX);
                return None;
            }
        }
        for d in 1..=depth {
            if let (Some(w), _) = self.dfs(s, d) {
                return Some(w);
            }
        }
        None
    }

    // Returns the search result and the lowest stack index of an
    // in-progress ancestor this failure depended on (CLEAN if none).
    fn dfs(&mut self, s: &TreeSequent, budget: usize) -> (Option<TDerivation>, usize) {
        if let Some((w, h)) = self.proved.get(s) {
            if *h <= budget {
                return (Some(w.clone()), CLEAN);
            }
        }
        if self.failed.get(s).is_some_and(|&b| b >= budget) {
            return (None, CLEAN);
        }
        if budget == 0 || !s.is_balanced() {
            return (None, CLEAN);
        }
        if let Some(batt) = &mut self.battery {
            if batt.refutes(s) {
                self.failed.insert(s.clone(), usize::MAX);
                return (None, CLEAN);
            }
        }
        if let Some(&i) = self.on_stack.get(s) {
            return (None, i);
        }
        let idx = self.depth;
        let mark = self.pending.len();
        self.on_stack.insert(s.clone(), idx);
        self.depth += 1;
        let (result, mut dep) = self.expand(s, budget);
        self.depth -= 1;
        self.on_stack.remove(s);
        match &result {
            Some(w) => {
                let h = t_height(w);
                match self.proved.entry(s.clone()) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        if h < e.get().1 {
                            e.insert((w.clone(), h));
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert((w.clone(), h));
                    }
                }
                // Provisional failures that relied on pruning revisits of
                // this now-proved sequent are unreliable: drop them. Ones
                // depending on still-open outer frames stay pending.
                let kept: Vec<_> =
                    self.pending.drain(mark..).filter(|(_, _, d)| *d < idx).collect();
                self.pending.extend(kept);
                dep = CLEAN;
            }
            None => {
                if dep >= idx {
                    // The failure depended on revisits of this frame only,
                    // so it and everything pending below it are final.
                    for (t, b, _) in self.pending.drain(mark..) {
                        let e = self.failed.entry(t).or_insert(0);
                        *e = (*e).max(b);
                    }
                    let e = self.failed.entry(s.clone()).or_insert(0);
                    *e = (*e).max(budget);
                    dep = CLEAN;
                } else {
                    self.pending.push((s.clone(), budget, dep));
                }
            }
        }
        (result, dep)
    }

    fn expand(&mut self, s: &TreeSequent, budget: usize) -> (Option<TDerivation>, usize) {
        let ante = s.antecedent.clone();
        if ante == Tree::leaf(s.succedent.clone()) {
            return (Some(TDerivation::ax(s.succedent.clone())), CLEAN);
        }
        if ante == Tree::EmptyLeaf && s.succedent == Formula::Unit {
            return (Some(TDerivation::ir()), CLEAN);
        }
        let b = budget - 1;
        let mut dep = CLEAN;
        macro_rules! attempt {
            ($prem:expr, $mk:expr) => {
                match self.dfs(&$prem, b) {
                    (Some(w), _) => return (Some($mk(w)), CLEAN),
                    (None, d) => dep = dep.min(d),
                }
            };
        }
        macro_rules! attempt2 {
            ($p1:expr, $p2:expr, $mk:expr) => {
                match self.dfs(&$p1, b) {
                    (None, d) => dep = dep.min(d),
                    (Some(w1), _) => match self.dfs(&$p2, b) {
                        (Some(w2), _) => return (Some($mk(w1, w2)), CLEAN),
                        (None, d) => dep = dep.min(d),
                    },
                }
            };
        }
        // Shrinking left rules first.
        for pos in ante.all_paths() {
            let sub = ante.subtree(&pos).unwrap();
            match sub {
                Tree::Leaf(Formula::Unit) => {
                    let prem = TreeSequent::new(
                        ante.replace(&pos, Tree::EmptyLeaf).unwrap(),
                        s.succedent.clone(),
                    );
                    attempt!(prem, |w| TDerivation::il(w, pos.clone()));
                }
                Tree::Leaf(Formula::TensL(a, bb)) => {
                    let pair = Tree::comma(
                        Tree::leaf(a.as_ref().clone()),
                        Tree::leaf(bb.as_ref().clone()),
                    );
                    let prem =
                        TreeSequent::new(ante.replace(&pos, pair).unwrap(), s.succedent.clone());
                    attempt!(prem, |w| TDerivation::tens_l(w, pos.clone()));
                }
                Tree::Comma(e, u) if e.as_ref() == &Tree::EmptyLeaf => {
                    let prem = TreeSequent::new(
                        ante.replace(&pos, u.as_ref().clone()).unwrap(),
                        s.succedent.clone(),
                    );
                    attempt!(prem, |w| TDerivation::unit_l(w, pos.clone()));
                }
                _ => {}
            }
            if let Tree::Comma(l, u2) = sub {
                if let Tree::Comma(u0, u1) = l.as_ref() {
                    let rotated = Tree::comma(
                        u0.as_ref().clone(),
                        Tree::comma(u1.as_ref().clone(), u2.as_ref().clone()),
                    );
                    let prem = TreeSequent::new(
                        ante.replace(&pos, rotated).unwrap(),
                        s.succedent.clone(),
                    );
                    attempt!(prem, |w| TDerivation::assoc(w, pos.clone()));
                }
            }
        }
        // Right rules.
        if let Formula::LolliL(a, c) = &s.succedent {
            let prem = TreeSequent::new(
                Tree::comma(ante.clone(), Tree::leaf(a.as_ref().clone())),
                c.as_ref().clone(),
            );
            attempt!(prem, TDerivation::lolli_r);
        }
        if let (Tree::Comma(l, r), Formula::TensL(a, bb)) = (&ante, &s.succedent) {
            let left = TreeSequent::new(l.as_ref().clone(), a.as_ref().clone());
            let right = TreeSequent::new(r.as_ref().clone(), bb.as_ref().clone());
            attempt2!(left, right, TDerivation::tens_r);
        }
        // -oL at every matching pair.
        for pos in ante.all_paths() {
            if let Ok(Tree::Comma(head, u)) = ante.subtree(&pos) {
                if let Tree::Leaf(Formula::LolliL(a, bb)) = head.as_ref() {
                    let arg = TreeSequent::new(u.as_ref().clone(), a.as_ref().clone());
                    let main = TreeSequent::new(
                        ante.replace(&pos, Tree::leaf(bb.as_ref().clone())).unwrap(),
                        s.succedent.clone(),
                    );
                    attempt2!(arg, main, |wa, wm| TDerivation::lolli_l(wa, wm, pos.clone()));
                }
            }
        }
        // unitR grows the antecedent; try it last, at every position.
        for pos in ante.all_paths() {
            let sub = ante.subtree(&pos).unwrap().clone();
            let grown = Tree::comma(sub, Tree::EmptyLeaf);
            let prem = TreeSequent::new(ante.replace(&pos, grown).unwrap(), s.succedent.clone());
            attempt!(prem, |w| TDerivation::unit_r(w, pos.clone()));
        }
        (None, dep)
    }
}

/// Depth-bounded backward search with a fresh cache.
pub fn prove_t_bounded(
    s: &TreeSequent,
    depth: usize,
) -> Result<Option<TDerivation>, FragmentError> {
    if !s.in_lsk_fragment() {
        return Err(FragmentError(s.to_string()));
    }
    Ok(TProver::new().prove(s, depth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_formula, parse_tree_sequent};

    fn path(s: &str) -> TreePath {
        if s == "." {
            return TreePath::root();
        }
        TreePath(s.chars().map(|c| if c == 'l' { Step::Left } else { Step::Right }).collect())
    }

    #[test]
    fn displayed_left_unitor_derivation() {
        // I *L A |- A via *L, IL, unitL, ax.
        let d = TDerivation::tens_l(
            TDerivation::il(
                TDerivation::unit_l(TDerivation::ax(parse_formula("A").unwrap()), path(".")),
                path("l"),
            ),
            path("."),
        );
        assert_eq!(d.conclusion, parse_tree_sequent("I *L A |- A").unwrap());
        assert!(check_t(&d).is_ok());
    }

    #[test]
    fn displayed_right_unitor_derivation() {
        // A |- A *L I via unitR, *R, (ax, IR).
        let d = TDerivation::unit_r(
            TDerivation::tens_r(TDerivation::ax(parse_formula("A").unwrap()), TDerivation::ir()),
            path("."),
        );
        assert_eq!(d.conclusion, parse_tree_sequent("A |- A *L I").unwrap());
        assert!(check_t(&d).is_ok());
    }

    #[test]
    fn reversed_assoc_rejected() {
        let good = TDerivation::assoc(
            TDerivation::tens_r(
                TDerivation::ax(parse_formula("X").unwrap()),
                TDerivation::tens_r(
                    TDerivation::ax(parse_formula("Y").unwrap()),
                    TDerivation::ax(parse_formula("Z").unwrap()),
                ),
            ),
            path("."),
        );
        assert!(check_t(&good).is_ok());
        // A node claiming the inverse rotation must not check.
        let bad = TDerivation {
            conclusion: good.premises[0].conclusion.clone(),
            rule: TRule::Assoc(path(".")),
            premises: vec![good.clone()],
        };
        assert!(!check_t(&bad).is_ok());
    }

    #[test]
    fn cut_ir_against_principal_il() {
        // g introduces the cut I at the cut position: the cut is g's premise.
        let g = TDerivation::il(
            TDerivation::unit_l(TDerivation::ax(parse_formula("X").unwrap()), path(".")),
            path("l"),
        );
        assert_eq!(g.conclusion, parse_tree_sequent("(I , X) |- X").unwrap());
        let cut = cut_t(&TDerivation::ir(), &g, &path("l")).unwrap();
        assert_eq!(cut, g.premises[0]);
        assert!(check_t(&cut).is_ok());
    }

    #[test]
    fn cut_ir_against_other_il() {
        // Two unit leaves; cut at one while IL introduces the other.
        let base = TDerivation::unit_l(
            TDerivation::unit_l(TDerivation::ax(parse_formula("X").unwrap()), path(".")),
            path("."),
        );
        let with_i = TDerivation::il(base, path("rl"));
        let g = TDerivation::il(with_i, path("l"));
        assert_eq!(g.conclusion, parse_tree_sequent("(I , (I , X)) |- X").unwrap());
        let cut = cut_t(&TDerivation::ir(), &g, &path("rl")).unwrap();
        assert!(check_t(&cut).is_ok());
        assert_eq!(cut.conclusion, parse_tree_sequent("(I , (- , X)) |- X").unwrap());
        assert!(matches!(cut.rule, TRule::IL(_)));
    }

    #[test]
    fn cut_permutes_past_unit_l() {
        // f = unitL f' permutes the cut up.
        let f = TDerivation::unit_l(TDerivation::ax(parse_formula("X").unwrap()), path("."));
        let g = TDerivation::tens_r(
            TDerivation::ax(parse_formula("X").unwrap()),
            TDerivation::ax(parse_formula("Y").unwrap()),
        );
        let cut = cut_t(&f, &g, &path("l")).unwrap();
        assert!(check_t(&cut).is_ok());
        assert_eq!(cut.conclusion, parse_tree_sequent("((- , X) , Y) |- X *L Y").unwrap());
        assert!(matches!(cut.rule, TRule::UnitL(_)));
    }

    #[test]
    fn il_inverse_examples() {
        let d = TDerivation::il(
            TDerivation::unit_l(TDerivation::ax(parse_formula("X").unwrap()), path(".")),
            path("l"),
        );
        let inv = il_inverse(&d, &path("l")).unwrap();
        assert_eq!(inv, d.premises[0]);

        let ax_i = TDerivation::ax(Formula::Unit);
        let inv = il_inverse(&ax_i, &TreePath::root()).unwrap();
        assert_eq!(inv, TDerivation::ir());
    }

    #[test]
    fn il_inverse_round_trip_small() {
        // IL after IL⁻¹ rederives the original sequent.
        let samples = [
            TDerivation::il(
                TDerivation::unit_l(TDerivation::ax(parse_formula("X").unwrap()), path(".")),
                path("l"),
            ),
            TDerivation::tens_r(
                TDerivation::ax(Formula::Unit),
                TDerivation::ax(parse_formula("Y").unwrap()),
            ),
        ];
        let positions = [path("l"), path("l")];
        for (d, pos) in samples.iter().zip(&positions) {
            let inv = il_inverse(d, pos).unwrap();
            let back = TDerivation::il(inv, pos.clone());
            assert!(check_t(&back).is_ok());
            assert_eq!(back.conclusion, d.conclusion);
        }
    }

    #[test]
    fn bounded_search_finds_displayed_proofs() {
        let found = prove_t_bounded(&parse_tree_sequent("(I , X) |- X").unwrap(), 4)
            .unwrap()
            .unwrap();
        assert!(check_t(&found).is_ok());
        assert!(prove_t_bounded(&parse_tree_sequent("I *L X |- X").unwrap(), 5)
            .unwrap()
            .is_some());
        assert!(prove_t_bounded(&parse_tree_sequent("X |- X *L I").unwrap(), 5)
            .unwrap()
            .is_some());
    }

    #[test]
    fn bounded_search_misses_unprovable_unitors() {
        // The paper's ?? displays: no rule chain closes these.
        assert!(prove_t_bounded(&parse_tree_sequent("X |- I *L X").unwrap(), 7)
            .unwrap()
            .is_none());
        assert!(prove_t_bounded(&parse_tree_sequent("X *L I |- X").unwrap(), 7)
            .unwrap()
            .is_none());
    }

    #[test]
    fn fragment_rejected() {
        assert!(prove_t_bounded(&parse_tree_sequent("(X ; Y) |- X *R Y").unwrap(), 3).is_err());
    }
}
