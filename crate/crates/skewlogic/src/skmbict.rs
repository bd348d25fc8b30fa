//! SkMBiCT, the tree calculus for skew monoidal bi-closed categories:
//! derivation checking, admissible cut and inverse rules, depth-bounded
//! search, and the translations `a2g` / `g2a` to and from the axiomatic
//! calculus.
//!
//! The calculus glues a left-skew system (comma nodes) and a right-skew
//! system (semicolon nodes), linked by the two-directional `⊗comm`.

use std::collections::HashMap;

use crate::check::CheckReport;
use crate::formula::Formula;
use crate::lskt::TreeCutError;
use crate::skmbica::{
    check_a, derived_alpha_r, derived_lambda_r, derived_rho_r, derived_tens_r, ADerivation,
};
use crate::tree::{Step, Tree, TreeContext, TreePath, TreeSequent};

/// Orientation of the double-line rule `⊗comm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommDir {
    /// Premise `T[U0 , U1]`, conclusion `T[U1 ; U0]`.
    CommaToSemi,
    /// Premise `T[U1 ; U0]`, conclusion `T[U0 , U1]`.
    SemiToComma,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BiTRule {
    Ax,
    IR,
    IL(TreePath),
    /// `*L L`: premise `T[(A , B)]`, conclusion `T[A *L B]`.
    TensLL(TreePath),
    /// `*L R`: premises `T |- A` and `U |- B`, conclusion `T , U |- A *L B`.
    TensLR,
    /// `*R L`: premise `T[(A ; B)]`, conclusion `T[A *R B]`.
    TensRL(TreePath),
    /// `*R R`: premises `T |- A` and `U |- B`, conclusion `T ; U |- A *R B`.
    TensRR,
    LolliLL(TreePath),
    LolliLR,
    LolliRL(TreePath),
    LolliRR,
    /// Premise `T[U0 , (U1 , U2)]`, conclusion `T[(U0 , U1) , U2]`.
    AssocL(TreePath),
    /// Premise `T[(U0 ; U1) ; U2]`, conclusion `T[U0 ; (U1 ; U2)]`.
    AssocR(TreePath),
    TensComm(TreePath, CommDir),
    /// Premise `T[U]`, conclusion `T[- , U]`.
    UnitLL(TreePath),
    /// Premise `T[U , -]`, conclusion `T[U]`.
    UnitRL(TreePath),
    /// Premise `T[U]`, conclusion `T[U ; -]`.
    UnitLR(TreePath),
    /// Premise `T[- ; U]`, conclusion `T[U]`.
    UnitRR(TreePath),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiTDerivation {
    pub conclusion: TreeSequent,
    pub rule: BiTRule,
    pub premises: Vec<BiTDerivation>,
}

impl BiTDerivation {
    fn node(conclusion: TreeSequent, rule: BiTRule, premises: Vec<BiTDerivation>) -> BiTDerivation {
        BiTDerivation { conclusion, rule, premises }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(BiTDerivation::size).sum::<usize>()
    }

    pub fn ax(a: Formula) -> BiTDerivation {
        BiTDerivation::node(TreeSequent::new(Tree::leaf(a.clone()), a), BiTRule::Ax, vec![])
    }

    pub fn ir() -> BiTDerivation {
        BiTDerivation::node(TreeSequent::new(Tree::EmptyLeaf, Formula::Unit), BiTRule::IR, vec![])
    }

    pub fn il(d: BiTDerivation, pos: TreePath) -> BiTDerivation {
        debug_assert_eq!(d.conclusion.antecedent.subtree(&pos), Ok(&Tree::EmptyLeaf));
        let ante = d.conclusion.antecedent.replace(&pos, Tree::leaf(Formula::Unit)).unwrap();
        let concl = TreeSequent::new(ante, d.conclusion.succedent.clone());
        BiTDerivation::node(concl, BiTRule::IL(pos), vec![d])
    }

    fn fold_pair(d: BiTDerivation, pos: TreePath, semi: bool) -> BiTDerivation {
        let sub = d.conclusion.antecedent.subtree(&pos).unwrap();
        let (l, r) = match (sub, semi) {
            (Tree::Comma(l, r), false) | (Tree::Semi(l, r), true) => (l, r),
            _ => panic!("tensor left rule needs a matching pair at {pos}, found {sub}"),
        };
        let (Tree::Leaf(a), Tree::Leaf(b)) = (l.as_ref(), r.as_ref()) else {
            panic!("tensor left rule needs two formula leaves at {pos}, found {sub}");
        };
        let folded = if semi {
            Tree::leaf(Formula::tens_r(a.clone(), b.clone()))
        } else {
            Tree::leaf(Formula::tens_l(a.clone(), b.clone()))
        };
        let rule = if semi { BiTRule::TensRL(pos.clone()) } else { BiTRule::TensLL(pos.clone()) };
        let ante = d.conclusion.antecedent.replace(&pos, folded).unwrap();
        let concl = TreeSequent::new(ante, d.conclusion.succedent.clone());
        BiTDerivation::node(concl, rule, vec![d])
    }

    pub fn tens_ll(d: BiTDerivation, pos: TreePath) -> BiTDerivation {
        BiTDerivation::fold_pair(d, pos, false)
    }

    pub fn tens_rl(d: BiTDerivation, pos: TreePath) -> BiTDerivation {
        BiTDerivation::fold_pair(d, pos, true)
    }

    pub fn tens_lr(l: BiTDerivation, r: BiTDerivation) -> BiTDerivation {
        let concl = TreeSequent::new(
            Tree::comma(l.conclusion.antecedent.clone(), r.conclusion.antecedent.clone()),
            Formula::tens_l(l.conclusion.succedent.clone(), r.conclusion.succedent.clone()),
        );
        BiTDerivation::node(concl, BiTRule::TensLR, vec![l, r])
    }

    pub fn tens_rr(l: BiTDerivation, r: BiTDerivation) -> BiTDerivation {
        let concl = TreeSequent::new(
            Tree::semi(l.conclusion.antecedent.clone(), r.conclusion.antecedent.clone()),
            Formula::tens_r(l.conclusion.succedent.clone(), r.conclusion.succedent.clone()),
        );
        BiTDerivation::node(concl, BiTRule::TensRR, vec![l, r])
    }

    fn lolli_left(arg: BiTDerivation, main: BiTDerivation, pos: TreePath, semi: bool) -> BiTDerivation {
        let sub = main.conclusion.antecedent.subtree(&pos).unwrap();
        let Tree::Leaf(b) = sub else {
            panic!("implication left rule needs a formula leaf at {pos}, found {sub}");
        };
        let (head, rule) = if semi {
            (
                Formula::lolli_r(arg.conclusion.succedent.clone(), b.clone()),
                BiTRule::LolliRL(pos.clone()),
            )
        } else {
            (
                Formula::lolli_l(arg.conclusion.succedent.clone(), b.clone()),
                BiTRule::LolliLL(pos.clone()),
            )
        };
        let pair = if semi {
            Tree::semi(Tree::leaf(head), arg.conclusion.antecedent.clone())
        } else {
            Tree::comma(Tree::leaf(head), arg.conclusion.antecedent.clone())
        };
        let ante = main.conclusion.antecedent.replace(&pos, pair).unwrap();
        let concl = TreeSequent::new(ante, main.conclusion.succedent.clone());
        BiTDerivation::node(concl, rule, vec![arg, main])
    }

    pub fn lolli_ll(arg: BiTDerivation, main: BiTDerivation, pos: TreePath) -> BiTDerivation {
        BiTDerivation::lolli_left(arg, main, pos, false)
    }

    pub fn lolli_rl(arg: BiTDerivation, main: BiTDerivation, pos: TreePath) -> BiTDerivation {
        BiTDerivation::lolli_left(arg, main, pos, true)
    }

    pub fn lolli_lr(d: BiTDerivation) -> BiTDerivation {
        let Tree::Comma(t, a) = &d.conclusion.antecedent else {
            panic!("-oL right rule needs a comma pair at the root");
        };
        let Tree::Leaf(a) = a.as_ref() else {
            panic!("-oL right rule needs a formula leaf on the right");
        };
        let concl = TreeSequent::new(
            t.as_ref().clone(),
            Formula::lolli_l(a.clone(), d.conclusion.succedent.clone()),
        );
        BiTDerivation::node(concl, BiTRule::LolliLR, vec![d])
    }

    pub fn lolli_rr(d: BiTDerivation) -> BiTDerivation {
        let Tree::Semi(t, a) = &d.conclusion.antecedent else {
            panic!("-oR right rule needs a semicolon pair at the root");
        };
        let Tree::Leaf(a) = a.as_ref() else {
            panic!("-oR right rule needs a formula leaf on the right");
        };
        let concl = TreeSequent::new(
            t.as_ref().clone(),
            Formula::lolli_r(a.clone(), d.conclusion.succedent.clone()),
        );
        BiTDerivation::node(concl, BiTRule::LolliRR, vec![d])
    }

    pub fn assoc_l(d: BiTDerivation, pos: TreePath) -> BiTDerivation {
        let sub = d.conclusion.antecedent.subtree(&pos).unwrap();
        let Tree::Comma(u0, rest) = sub else {
            panic!("assocL needs a comma pair at {pos}");
        };
        let Tree::Comma(u1, u2) = rest.as_ref() else {
            panic!("assocL needs a right-nested comma pair at {pos}");
        };
        let rotated = Tree::comma(
            Tree::comma(u0.as_ref().clone(), u1.as_ref().clone()),
            u2.as_ref().clone(),
        );
        let ante = d.conclusion.antecedent.replace(&pos, rotated).unwrap();
        let concl = TreeSequent::new(ante, d.conclusion.succedent.clone());
        BiTDerivation::node(concl, BiTRule::AssocL(pos), vec![d])
    }

    /// Right-skew rotation: premise `(U0 ; U1) ; U2`, conclusion
    /// `U0 ; (U1 ; U2)`.
    pub fn assoc_r(d: BiTDerivation, pos: TreePath) -> BiTDerivation {
        let sub = d.conclusion.antecedent.subtree(&pos).unwrap();
        let Tree::Semi(rest, u2) = sub else {
            panic!("assocR needs a semicolon pair at {pos}");
        };
        let Tree::Semi(u0, u1) = rest.as_ref() else {
            panic!("assocR needs a left-nested semicolon pair at {pos}");
        };
        let rotated = Tree::semi(
            u0.as_ref().clone(),
            Tree::semi(u1.as_ref().clone(), u2.as_ref().clone()),
        );
        let ante = d.conclusion.antecedent.replace(&pos, rotated).unwrap();
        let concl = TreeSequent::new(ante, d.conclusion.succedent.clone());
        BiTDerivation::node(concl, BiTRule::AssocR(pos), vec![d])
    }

    /// `⊗comm` downward: premise `(U0 , U1)` at `pos`, conclusion
    /// `(U1 ; U0)`.
    pub fn comm_cs(d: BiTDerivation, pos: TreePath) -> BiTDerivation {
        let sub = d.conclusion.antecedent.subtree(&pos).unwrap();
        let Tree::Comma(u0, u1) = sub else {
            panic!("⊗comm needs a comma pair at {pos}");
        };
        let swapped = Tree::semi(u1.as_ref().clone(), u0.as_ref().clone());
        let ante = d.conclusion.antecedent.replace(&pos, swapped).unwrap();
        let concl = TreeSequent::new(ante, d.conclusion.succedent.clone());
        BiTDerivation::node(concl, BiTRule::TensComm(pos, CommDir::CommaToSemi), vec![d])
    }

    /// `⊗comm` upward: premise `(U1 ; U0)` at `pos`, conclusion
    /// `(U0 , U1)`.
    pub fn comm_sc(d: BiTDerivation, pos: TreePath) -> BiTDerivation {
        let sub = d.conclusion.antecedent.subtree(&pos).unwrap();
        let Tree::Semi(u1, u0) = sub else {
            panic!("⊗comm needs a semicolon pair at {pos}");
        };
        let swapped = Tree::comma(u0.as_ref().clone(), u1.as_ref().clone());
        let ante = d.conclusion.antecedent.replace(&pos, swapped).unwrap();
        let concl = TreeSequent::new(ante, d.conclusion.succedent.clone());
        BiTDerivation::node(concl, BiTRule::TensComm(pos, CommDir::SemiToComma), vec![d])
    }

    pub fn unit_ll(d: BiTDerivation, pos: TreePath) -> BiTDerivation {
        let sub = d.conclusion.antecedent.subtree(&pos).unwrap().clone();
        let ante =
            d.conclusion.antecedent.replace(&pos, Tree::comma(Tree::EmptyLeaf, sub)).unwrap();
        let concl = TreeSequent::new(ante, d.conclusion.succedent.clone());
        BiTDerivation::node(concl, BiTRule::UnitLL(pos), vec![d])
    }

    pub fn unit_rl(d: BiTDerivation, pos: TreePath) -> BiTDerivation {
        let sub = d.conclusion.antecedent.subtree(&pos).unwrap();
        let Tree::Comma(u, e) = sub else {
            panic!("unitR (left-skew) needs a comma pair at {pos}");
        };
        assert_eq!(e.as_ref(), &Tree::EmptyLeaf);
        let ante = d.conclusion.antecedent.replace(&pos, u.as_ref().clone()).unwrap();
        let concl = TreeSequent::new(ante, d.conclusion.succedent.clone());
        BiTDerivation::node(concl, BiTRule::UnitRL(pos), vec![d])
    }

    pub fn unit_lr(d: BiTDerivation, pos: TreePath) -> BiTDerivation {
        let sub = d.conclusion.antecedent.subtree(&pos).unwrap().clone();
        let ante =
            d.conclusion.antecedent.replace(&pos, Tree::semi(sub, Tree::EmptyLeaf)).unwrap();
        let concl = TreeSequent::new(ante, d.conclusion.succedent.clone());
        BiTDerivation::node(concl, BiTRule::UnitLR(pos), vec![d])
    }

    pub fn unit_rr(d: BiTDerivation, pos: TreePath) -> BiTDerivation {
        let sub = d.conclusion.antecedent.subtree(&pos).unwrap();
        let Tree::Semi(e, u) = sub else {
            panic!("unitR (right-skew) needs a semicolon pair at {pos}");
        };
        assert_eq!(e.as_ref(), &Tree::EmptyLeaf);
        let ante = d.conclusion.antecedent.replace(&pos, u.as_ref().clone()).unwrap();
        let concl = TreeSequent::new(ante, d.conclusion.succedent.clone());
        BiTDerivation::node(concl, BiTRule::UnitRR(pos), vec![d])
    }
}

/// Checks every node of `d` against its schema at its stated position.
pub fn check_bt(d: &BiTDerivation) -> CheckReport {
    let mut report = CheckReport::default();
    let mut path = Vec::new();
    check_node(d, &mut path, &mut report);
    report
}

fn check_node(d: &BiTDerivation, path: &mut Vec<usize>, report: &mut CheckReport) {
    let arity = match d.rule {
        BiTRule::Ax | BiTRule::IR => 0,
        BiTRule::TensLR | BiTRule::TensRR | BiTRule::LolliLL(_) | BiTRule::LolliRL(_) => 2,
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

fn check_schema(d: &BiTDerivation, path: &[usize], report: &mut CheckReport) {
    let s = &d.conclusion;
    macro_rules! expect {
        ($idx:expr, $want:expr) => {{
            let want = $want;
            let got = &d.premises[$idx].conclusion;
            if *got != want {
                report.push(path, format!("premise {} must be {}, found {}", $idx, want, got));
            }
        }};
    }
    macro_rules! fail {
        ($msg:expr) => {
            report.push(path, format!("{} in {}", $msg, s))
        };
    }
    match &d.rule {
        BiTRule::Ax => {
            if s.antecedent != Tree::leaf(s.succedent.clone()) {
                fail!("ax must conclude A |- A".to_string());
            }
        }
        BiTRule::IR => {
            if s.antecedent != Tree::EmptyLeaf || s.succedent != Formula::Unit {
                fail!("IR must conclude - |- I".to_string());
            }
        }
        BiTRule::IL(pos) => match s.antecedent.subtree(pos) {
            Ok(Tree::Leaf(Formula::Unit)) => {
                let ante = s.antecedent.replace(pos, Tree::EmptyLeaf).unwrap();
                expect!(0, TreeSequent::new(ante, s.succedent.clone()));
            }
            _ => fail!(format!("IL needs the leaf I at {pos}")),
        },
        BiTRule::TensLL(pos) => match s.antecedent.subtree(pos) {
            Ok(Tree::Leaf(Formula::TensL(a, b))) => {
                let pair =
                    Tree::comma(Tree::leaf(a.as_ref().clone()), Tree::leaf(b.as_ref().clone()));
                let ante = s.antecedent.replace(pos, pair).unwrap();
                expect!(0, TreeSequent::new(ante, s.succedent.clone()));
            }
            _ => fail!(format!("*L left rule needs a *L leaf at {pos}")),
        },
        BiTRule::TensRL(pos) => match s.antecedent.subtree(pos) {
            Ok(Tree::Leaf(Formula::TensR(a, b))) => {
                let pair =
                    Tree::semi(Tree::leaf(a.as_ref().clone()), Tree::leaf(b.as_ref().clone()));
                let ante = s.antecedent.replace(pos, pair).unwrap();
                expect!(0, TreeSequent::new(ante, s.succedent.clone()));
            }
            _ => fail!(format!("*R left rule needs a *R leaf at {pos}")),
        },
        BiTRule::TensLR => match (&s.antecedent, &s.succedent) {
            (Tree::Comma(l, r), Formula::TensL(a, b)) => {
                expect!(0, TreeSequent::new(l.as_ref().clone(), a.as_ref().clone()));
                expect!(1, TreeSequent::new(r.as_ref().clone(), b.as_ref().clone()));
            }
            _ => fail!("*L right rule must conclude T , U |- A *L B".to_string()),
        },
        BiTRule::TensRR => match (&s.antecedent, &s.succedent) {
            (Tree::Semi(l, r), Formula::TensR(a, b)) => {
                expect!(0, TreeSequent::new(l.as_ref().clone(), a.as_ref().clone()));
                expect!(1, TreeSequent::new(r.as_ref().clone(), b.as_ref().clone()));
            }
            _ => fail!("*R right rule must conclude T ; U |- A *R B".to_string()),
        },
        BiTRule::LolliLL(pos) => match s.antecedent.subtree(pos) {
            Ok(Tree::Comma(head, u)) => match head.as_ref() {
                Tree::Leaf(Formula::LolliL(a, b)) => {
                    expect!(0, TreeSequent::new(u.as_ref().clone(), a.as_ref().clone()));
                    let ante = s.antecedent.replace(pos, Tree::leaf(b.as_ref().clone())).unwrap();
                    expect!(1, TreeSequent::new(ante, s.succedent.clone()));
                }
                _ => fail!(format!("-oL left rule needs a -oL leaf at {pos}l")),
            },
            _ => fail!(format!("-oL left rule needs a comma pair at {pos}")),
        },
        BiTRule::LolliRL(pos) => match s.antecedent.subtree(pos) {
            Ok(Tree::Semi(head, u)) => match head.as_ref() {
                Tree::Leaf(Formula::LolliR(a, b)) => {
                    expect!(0, TreeSequent::new(u.as_ref().clone(), a.as_ref().clone()));
                    let ante = s.antecedent.replace(pos, Tree::leaf(b.as_ref().clone())).unwrap();
                    expect!(1, TreeSequent::new(ante, s.succedent.clone()));
                }
                _ => fail!(format!("-oR left rule needs a -oR leaf at {pos}l")),
            },
            _ => fail!(format!("-oR left rule needs a semicolon pair at {pos}")),
        },
        BiTRule::LolliLR => match &s.succedent {
            Formula::LolliL(a, b) => {
                let ante = Tree::comma(s.antecedent.clone(), Tree::leaf(a.as_ref().clone()));
                expect!(0, TreeSequent::new(ante, b.as_ref().clone()));
            }
            _ => fail!("-oL right rule needs a -oL succedent".to_string()),
        },
        BiTRule::LolliRR => match &s.succedent {
            Formula::LolliR(a, b) => {
                let ante = Tree::semi(s.antecedent.clone(), Tree::leaf(a.as_ref().clone()));
                expect!(0, TreeSequent::new(ante, b.as_ref().clone()));
            }
            _ => fail!("-oR right rule needs a -oR succedent".to_string()),
        },
        BiTRule::AssocL(pos) => match s.antecedent.subtree(pos) {
            Ok(Tree::Comma(l, u2)) => match l.as_ref() {
                Tree::Comma(u0, u1) => {
                    let rotated = Tree::comma(
                        u0.as_ref().clone(),
                        Tree::comma(u1.as_ref().clone(), u2.as_ref().clone()),
                    );
                    let ante = s.antecedent.replace(pos, rotated).unwrap();
                    expect!(0, TreeSequent::new(ante, s.succedent.clone()));
                }
                _ => fail!(format!("assocL needs a left-nested comma pair at {pos}")),
            },
            _ => fail!(format!("assocL needs a comma pair at {pos}")),
        },
        BiTRule::AssocR(pos) => match s.antecedent.subtree(pos) {
            Ok(Tree::Semi(u0, r)) => match r.as_ref() {
                Tree::Semi(u1, u2) => {
                    let rotated = Tree::semi(
                        Tree::semi(u0.as_ref().clone(), u1.as_ref().clone()),
                        u2.as_ref().clone(),
                    );
                    let ante = s.antecedent.replace(pos, rotated).unwrap();
                    expect!(0, TreeSequent::new(ante, s.succedent.clone()));
                }
                _ => fail!(format!("assocR needs a right-nested semicolon pair at {pos}")),
            },
            _ => fail!(format!("assocR needs a semicolon pair at {pos}")),
        },
        BiTRule::TensComm(pos, dir) => match (dir, s.antecedent.subtree(pos)) {
            (CommDir::CommaToSemi, Ok(Tree::Semi(u1, u0))) => {
                let swapped = Tree::comma(u0.as_ref().clone(), u1.as_ref().clone());
                let ante = s.antecedent.replace(pos, swapped).unwrap();
                expect!(0, TreeSequent::new(ante, s.succedent.clone()));
            }
            (CommDir::SemiToComma, Ok(Tree::Comma(u0, u1))) => {
                let swapped = Tree::semi(u1.as_ref().clone(), u0.as_ref().clone());
                let ante = s.antecedent.replace(pos, swapped).unwrap();
                expect!(0, TreeSequent::new(ante, s.succedent.clone()));
            }
            _ => fail!(format!("⊗comm pair mismatch at {pos}")),
        },
        BiTRule::UnitLL(pos) => match s.antecedent.subtree(pos) {
            Ok(Tree::Comma(e, u)) if e.as_ref() == &Tree::EmptyLeaf => {
                let ante = s.antecedent.replace(pos, u.as_ref().clone()).unwrap();
                expect!(0, TreeSequent::new(ante, s.succedent.clone()));
            }
            _ => fail!(format!("unitL (left-skew) needs (- , U) at {pos}")),
        },
        BiTRule::UnitRL(pos) => match s.antecedent.subtree(pos) {
            Ok(u) => {
                let pair = Tree::comma(u.clone(), Tree::EmptyLeaf);
                let ante = s.antecedent.replace(pos, pair).unwrap();
                expect!(0, TreeSequent::new(ante, s.succedent.clone()));
            }
            Err(_) => fail!(format!("unitR (left-skew) position {pos} leaves the antecedent")),
        },
        BiTRule::UnitLR(pos) => match s.antecedent.subtree(pos) {
            Ok(Tree::Semi(u, e)) if e.as_ref() == &Tree::EmptyLeaf => {
                let ante = s.antecedent.replace(pos, u.as_ref().clone()).unwrap();
                expect!(0, TreeSequent::new(ante, s.succedent.clone()));
            }
            _ => fail!(format!("unitL (right-skew) needs (U ; -) at {pos}")),
        },
        BiTRule::UnitRR(pos) => match s.antecedent.subtree(pos) {
            Ok(u) => {
                let pair = Tree::semi(Tree::EmptyLeaf, u.clone());
                let ante = s.antecedent.replace(pos, pair).unwrap();
                expect!(0, TreeSequent::new(ante, s.succedent.clone()));
            }
            Err(_) => fail!(format!("unitR (right-skew) position {pos} leaves the antecedent")),
        },
    }
}

enum Transport {
    Premise(usize, TreePath),
    Principal,
}

fn transport_bt(rule: &BiTRule, p: &TreePath) -> Transport {
    use Transport::*;
    match rule {
        BiTRule::Ax | BiTRule::IR => unreachable!("leaf rules have no premises"),
        BiTRule::IL(q) | BiTRule::TensLL(q) | BiTRule::TensRL(q) => {
            if q == p {
                Principal
            } else {
                Premise(0, p.clone())
            }
        }
        BiTRule::TensLR | BiTRule::TensRR => match p.0.split_first() {
            Some((Step::Left, rest)) => Premise(0, TreePath(rest.to_vec())),
            Some((Step::Right, rest)) => Premise(1, TreePath(rest.to_vec())),
            None => unreachable!("leaf path cannot stop at the root pair"),
        },
        BiTRule::LolliLL(q) | BiTRule::LolliRL(q) => {
            if *p == q.child(Step::Left) {
                Principal
            } else if let Some(rest) = q.child(Step::Right).strip_prefix(p) {
                Premise(0, rest)
            } else {
                Premise(1, p.clone())
            }
        }
        BiTRule::LolliLR | BiTRule::LolliRR => Premise(0, TreePath(vec![Step::Left]).join(p)),
        BiTRule::AssocL(q) => match q.strip_prefix(p) {
            None => Premise(0, p.clone()),
            Some(rest) => {
                let mapped = match rest.0.as_slice() {
                    [Step::Left, Step::Left, tail @ ..] => [&[Step::Left][..], tail].concat(),
                    [Step::Left, Step::Right, tail @ ..] => {
                        [&[Step::Right, Step::Left][..], tail].concat()
                    }
                    [Step::Right, tail @ ..] => [&[Step::Right, Step::Right][..], tail].concat(),
                    _ => unreachable!("leaf path cannot stop inside the rotated pair"),
                };
                Premise(0, q.join(&TreePath(mapped)))
            }
        },
        BiTRule::AssocR(q) => match q.strip_prefix(p) {
            None => Premise(0, p.clone()),
            Some(rest) => {
                let mapped = match rest.0.as_slice() {
                    [Step::Left, tail @ ..] => [&[Step::Left, Step::Left][..], tail].concat(),
                    [Step::Right, Step::Left, tail @ ..] => {
                        [&[Step::Left, Step::Right][..], tail].concat()
                    }
                    [Step::Right, Step::Right, tail @ ..] => [&[Step::Right][..], tail].concat(),
                    _ => unreachable!("leaf path cannot stop inside the rotated pair"),
                };
                Premise(0, q.join(&TreePath(mapped)))
            }
        },
        BiTRule::TensComm(q, _) => match q.strip_prefix(p) {
            None => Premise(0, p.clone()),
            Some(rest) => {
                let mapped = match rest.0.as_slice() {
                    [Step::Left, tail @ ..] => [&[Step::Right][..], tail].concat(),
                    [Step::Right, tail @ ..] => [&[Step::Left][..], tail].concat(),
                    _ => unreachable!("leaf path cannot stop at the swapped pair"),
                };
                Premise(0, q.join(&TreePath(mapped)))
            }
        },
        BiTRule::UnitLL(q) => match q.strip_prefix(p) {
            None => Premise(0, p.clone()),
            Some(rest) => match rest.0.as_slice() {
                [Step::Right, tail @ ..] => Premise(0, q.join(&TreePath(tail.to_vec()))),
                _ => unreachable!("leaf path cannot hit the introduced empty leaf"),
            },
        },
        BiTRule::UnitLR(q) => match q.strip_prefix(p) {
            None => Premise(0, p.clone()),
            Some(rest) => match rest.0.as_slice() {
                [Step::Left, tail @ ..] => Premise(0, q.join(&TreePath(tail.to_vec()))),
                _ => unreachable!("leaf path cannot hit the introduced empty leaf"),
            },
        },
        BiTRule::UnitRL(q) => match q.strip_prefix(p) {
            None => Premise(0, p.clone()),
            Some(rest) => {
                Premise(0, q.join(&TreePath([&[Step::Left][..], &rest.0].concat())))
            }
        },
        BiTRule::UnitRR(q) => match q.strip_prefix(p) {
            None => Premise(0, p.clone()),
            Some(rest) => {
                Premise(0, q.join(&TreePath([&[Step::Right][..], &rest.0].concat())))
            }
        },
    }
}

fn expect_leaf(g: &BiTDerivation, pos: &TreePath, want: &Formula) -> Result<(), TreeCutError> {
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
pub fn cut_bt(
    f: &BiTDerivation,
    g: &BiTDerivation,
    pos: &TreePath,
) -> Result<BiTDerivation, TreeCutError> {
    expect_leaf(g, pos, &f.conclusion.succedent)?;
    Ok(cut_rec(f, g, pos))
}

fn cut_rec(f: &BiTDerivation, g: &BiTDerivation, p: &TreePath) -> BiTDerivation {
    use BiTDerivation as D;
    match &f.rule {
        BiTRule::Ax => g.clone(),
        // One-premise left rules of f permute up, offset by p.
        BiTRule::IL(q) => D::il(cut_rec(&f.premises[0], g, p), p.join(q)),
        BiTRule::TensLL(q) => D::tens_ll(cut_rec(&f.premises[0], g, p), p.join(q)),
        BiTRule::TensRL(q) => D::tens_rl(cut_rec(&f.premises[0], g, p), p.join(q)),
        BiTRule::AssocL(q) => D::assoc_l(cut_rec(&f.premises[0], g, p), p.join(q)),
        BiTRule::AssocR(q) => D::assoc_r(cut_rec(&f.premises[0], g, p), p.join(q)),
        BiTRule::TensComm(q, CommDir::CommaToSemi) => {
            D::comm_cs(cut_rec(&f.premises[0], g, p), p.join(q))
        }
        BiTRule::TensComm(q, CommDir::SemiToComma) => {
            D::comm_sc(cut_rec(&f.premises[0], g, p), p.join(q))
        }
        BiTRule::UnitLL(q) => D::unit_ll(cut_rec(&f.premises[0], g, p), p.join(q)),
        BiTRule::UnitRL(q) => D::unit_rl(cut_rec(&f.premises[0], g, p), p.join(q)),
        BiTRule::UnitLR(q) => D::unit_lr(cut_rec(&f.premises[0], g, p), p.join(q)),
        BiTRule::UnitRR(q) => D::unit_rr(cut_rec(&f.premises[0], g, p), p.join(q)),
        BiTRule::LolliLL(q) => {
            D::lolli_ll(f.premises[0].clone(), cut_rec(&f.premises[1], g, p), p.join(q))
        }
        BiTRule::LolliRL(q) => {
            D::lolli_rl(f.premises[0].clone(), cut_rec(&f.premises[1], g, p), p.join(q))
        }
        // Right rules: subinduction on g.
        BiTRule::IR => match &g.rule {
            BiTRule::Ax => D::ir(),
            BiTRule::IL(q) if q == p => g.premises[0].clone(),
            _ => descend_g(f, g, p),
        },
        BiTRule::TensLR => match &g.rule {
            BiTRule::Ax => f.clone(),
            BiTRule::TensLL(q) if q == p => {
                let step = cut_rec(&f.premises[1], &g.premises[0], &p.child(Step::Right));
                cut_rec(&f.premises[0], &step, &p.child(Step::Left))
            }
            _ => descend_g(f, g, p),
        },
        BiTRule::TensRR => match &g.rule {
            BiTRule::Ax => f.clone(),
            BiTRule::TensRL(q) if q == p => {
                let step = cut_rec(&f.premises[1], &g.premises[0], &p.child(Step::Right));
                cut_rec(&f.premises[0], &step, &p.child(Step::Left))
            }
            _ => descend_g(f, g, p),
        },
        BiTRule::LolliLR => match &g.rule {
            BiTRule::Ax => f.clone(),
            BiTRule::LolliLL(q) if *p == q.child(Step::Left) => {
                let step = cut_rec(&f.premises[0], &g.premises[1], q);
                cut_rec(&g.premises[0], &step, &q.child(Step::Right))
            }
            _ => descend_g(f, g, p),
        },
        BiTRule::LolliRR => match &g.rule {
            BiTRule::Ax => f.clone(),
            BiTRule::LolliRL(q) if *p == q.child(Step::Left) => {
                let step = cut_rec(&f.premises[0], &g.premises[1], q);
                cut_rec(&g.premises[0], &step, &q.child(Step::Right))
            }
            _ => descend_g(f, g, p),
        },
    }
}

fn descend_g(f: &BiTDerivation, g: &BiTDerivation, p: &TreePath) -> BiTDerivation {
    let Transport::Premise(idx, q) = transport_bt(&g.rule, p) else {
        unreachable!("principal cases are handled by the caller");
    };
    let mut premises = g.premises.clone();
    premises[idx] = cut_rec(f, &g.premises[idx], &q);
    let ante = g.conclusion.antecedent.replace(p, f.conclusion.antecedent.clone()).unwrap();
    BiTDerivation::node(
        TreeSequent::new(ante, g.conclusion.succedent.clone()),
        g.rule.clone(),
        premises,
    )
}

// ---- Admissible inverse rules -------------------------------------------

/// `IL⁻¹`: from `T[I] |- C` to `T[-] |- C`.
pub fn il_inverse_bt(d: &BiTDerivation, pos: &TreePath) -> Result<BiTDerivation, TreeCutError> {
    expect_leaf(d, pos, &Formula::Unit)?;
    Ok(il_inv_rec(d, pos))
}

fn il_inv_rec(d: &BiTDerivation, p: &TreePath) -> BiTDerivation {
    match &d.rule {
        BiTRule::Ax => BiTDerivation::ir(),
        BiTRule::IL(q) if q == p => d.premises[0].clone(),
        _ => descend_replacing(d, p, Tree::EmptyLeaf, il_inv_rec),
    }
}

/// `*L L⁻¹`: from `T[A *L B] |- C` to `T[(A , B)] |- C`.
pub fn tensll_inverse(d: &BiTDerivation, pos: &TreePath) -> Result<BiTDerivation, TreeCutError> {
    match d.conclusion.antecedent.subtree(pos) {
        Ok(Tree::Leaf(Formula::TensL(_, _))) => Ok(tensll_inv_rec(d, pos)),
        Ok(other) => Err(TreeCutError::Mismatch {
            pos: pos.clone(),
            want: "a *L leaf".to_string(),
            found: other.to_string(),
        }),
        Err(_) => Err(TreeCutError::BadPosition(pos.clone())),
    }
}

fn tensll_inv_rec(d: &BiTDerivation, p: &TreePath) -> BiTDerivation {
    match &d.rule {
        BiTRule::Ax => {
            let Formula::TensL(a, b) = &d.conclusion.succedent else { unreachable!() };
            BiTDerivation::tens_lr(
                BiTDerivation::ax(a.as_ref().clone()),
                BiTDerivation::ax(b.as_ref().clone()),
            )
        }
        BiTRule::TensLL(q) if q == p => d.premises[0].clone(),
        _ => {
            let Ok(Tree::Leaf(Formula::TensL(a, b))) = d.conclusion.antecedent.subtree(p) else {
                unreachable!()
            };
            let pair =
                Tree::comma(Tree::leaf(a.as_ref().clone()), Tree::leaf(b.as_ref().clone()));
            descend_replacing(d, p, pair, tensll_inv_rec)
        }
    }
}

/// `*R L⁻¹`: from `T[A *R B] |- C` to `T[(A ; B)] |- C`.
pub fn tensrl_inverse(d: &BiTDerivation, pos: &TreePath) -> Result<BiTDerivation, TreeCutError> {
    match d.conclusion.antecedent.subtree(pos) {
        Ok(Tree::Leaf(Formula::TensR(_, _))) => Ok(tensrl_inv_rec(d, pos)),
        Ok(other) => Err(TreeCutError::Mismatch {
            pos: pos.clone(),
            want: "a *R leaf".to_string(),
            found: other.to_string(),
        }),
        Err(_) => Err(TreeCutError::BadPosition(pos.clone())),
    }
}

fn tensrl_inv_rec(d: &BiTDerivation, p: &TreePath) -> BiTDerivation {
    match &d.rule {
        BiTRule::Ax => {
            let Formula::TensR(a, b) = &d.conclusion.succedent else { unreachable!() };
            BiTDerivation::tens_rr(
                BiTDerivation::ax(a.as_ref().clone()),
                BiTDerivation::ax(b.as_ref().clone()),
            )
        }
        BiTRule::TensRL(q) if q == p => d.premises[0].clone(),
        _ => {
            let Ok(Tree::Leaf(Formula::TensR(a, b))) = d.conclusion.antecedent.subtree(p) else {
                unreachable!()
            };
            let pair = Tree::semi(Tree::leaf(a.as_ref().clone()), Tree::leaf(b.as_ref().clone()));
            descend_replacing(d, p, pair, tensrl_inv_rec)
        }
    }
}

fn descend_replacing(
    d: &BiTDerivation,
    p: &TreePath,
    replacement: Tree,
    rec: fn(&BiTDerivation, &TreePath) -> BiTDerivation,
) -> BiTDerivation {
    let Transport::Premise(idx, q) = transport_bt(&d.rule, p) else {
        unreachable!("principal cases are handled by the caller");
    };
    let mut premises = d.premises.clone();
    premises[idx] = rec(&d.premises[idx], &q);
    let ante = d.conclusion.antecedent.replace(p, replacement).unwrap();
    BiTDerivation::node(
        TreeSequent::new(ante, d.conclusion.succedent.clone()),
        d.rule.clone(),
        premises,
    )
}

/// `-oL R⁻¹`: from `T |- A -oL B` to `T , A |- B`.
pub fn lollilr_inverse(d: &BiTDerivation) -> Result<BiTDerivation, TreeCutError> {
    match &d.conclusion.succedent {
        Formula::LolliL(_, _) => Ok(lollilr_inv_rec(d)),
        other => Err(TreeCutError::Mismatch {
            pos: TreePath::root(),
            want: "a -oL succedent".to_string(),
            found: other.to_string(),
        }),
    }
}

fn lollilr_inv_rec(d: &BiTDerivation) -> BiTDerivation {
    match &d.rule {
        BiTRule::Ax => {
            let Formula::LolliL(a, b) = &d.conclusion.succedent else { unreachable!() };
            BiTDerivation::lolli_ll(
                BiTDerivation::ax(a.as_ref().clone()),
                BiTDerivation::ax(b.as_ref().clone()),
                TreePath::root(),
            )
        }
        BiTRule::LolliLR => d.premises[0].clone(),
        _ => descend_under_root(d, lollilr_inv_rec, false),
    }
}

/// `-oR R⁻¹`: from `T |- A -oR B` to `T ; A |- B`.
pub fn lollirr_inverse(d: &BiTDerivation) -> Result<BiTDerivation, TreeCutError> {
    match &d.conclusion.succedent {
        Formula::LolliR(_, _) => Ok(lollirr_inv_rec(d)),
        other => Err(TreeCutError::Mismatch {
            pos: TreePath::root(),
            want: "a -oR succedent".to_string(),
            found: other.to_string(),
        }),
    }
}

fn lollirr_inv_rec(d: &BiTDerivation) -> BiTDerivation {
    match &d.rule {
        BiTRule::Ax => {
            let Formula::LolliR(a, b) = &d.conclusion.succedent else { unreachable!() };
            BiTDerivation::lolli_rl(
                BiTDerivation::ax(a.as_ref().clone()),
                BiTDerivation::ax(b.as_ref().clone()),
                TreePath::root(),
            )
        }
        BiTRule::LolliRR => d.premises[0].clone(),
        _ => descend_under_root(d, lollirr_inv_rec, true),
    }
}

// Pushes an implication-right inverse under a left rule: the conclusion
// antecedent gains `(. , A)` or `(. ; A)` at the root, so the rule's
// position shifts below a Left step; the premise carrying the rewritten
// tree is recursed into, the argument premise (if any) is untouched.
fn descend_under_root(
    d: &BiTDerivation,
    rec: fn(&BiTDerivation) -> BiTDerivation,
    semi: bool,
) -> BiTDerivation {
    let shift = |q: &TreePath| TreePath(vec![Step::Left]).join(q);
    let (rule, main) = match &d.rule {
        BiTRule::IL(q) => (BiTRule::IL(shift(q)), 0),
        BiTRule::TensLL(q) => (BiTRule::TensLL(shift(q)), 0),
        BiTRule::TensRL(q) => (BiTRule::TensRL(shift(q)), 0),
        BiTRule::AssocL(q) => (BiTRule::AssocL(shift(q)), 0),
        BiTRule::AssocR(q) => (BiTRule::AssocR(shift(q)), 0),
        BiTRule::TensComm(q, dir) => (BiTRule::TensComm(shift(q), *dir), 0),
        BiTRule::UnitLL(q) => (BiTRule::UnitLL(shift(q)), 0),
        BiTRule::UnitRL(q) => (BiTRule::UnitRL(shift(q)), 0),
        BiTRule::UnitLR(q) => (BiTRule::UnitLR(shift(q)), 0),
        BiTRule::UnitRR(q) => (BiTRule::UnitRR(shift(q)), 0),
        BiTRule::LolliLL(q) => (BiTRule::LolliLL(shift(q)), 1),
        BiTRule::LolliRL(q) => (BiTRule::LolliRL(shift(q)), 1),
        other => unreachable!("no other rule can conclude an implication: {other:?}"),
    };
    let (Formula::LolliL(a, b) | Formula::LolliR(a, b)) = &d.conclusion.succedent else {
        unreachable!("validated on entry");
    };
    let arg = Tree::leaf(a.as_ref().clone());
    let ante = if semi {
        Tree::semi(d.conclusion.antecedent.clone(), arg)
    } else {
        Tree::comma(d.conclusion.antecedent.clone(), arg)
    };
    let mut premises = d.premises.clone();
    premises[main] = rec(&d.premises[main]);
    BiTDerivation::node(
        TreeSequent::new(ante, b.as_ref().clone()),
        rule,
        premises,
    )
}

// ---- Translations --------------------------------------------------------

/// Lifts `h : U# |- V#` through a (possibly mixed comma/semicolon) context
/// in the axiomatic calculus.
pub fn bi_subst_lift(ctx: &TreeContext, h: &ADerivation) -> ADerivation {
    match ctx {
        TreeContext::Hole => h.clone(),
        TreeContext::CommaL(inner, t) => ADerivation::tens_l_cong(
            bi_subst_lift(inner, h),
            ADerivation::id(t.flatten_sharp()),
        ),
        TreeContext::CommaR(t, inner) => ADerivation::tens_l_cong(
            ADerivation::id(t.flatten_sharp()),
            bi_subst_lift(inner, h),
        ),
        TreeContext::SemiL(inner, t) => {
            derived_tens_r(&bi_subst_lift(inner, h), &ADerivation::id(t.flatten_sharp()))
        }
        TreeContext::SemiR(t, inner) => {
            derived_tens_r(&ADerivation::id(t.flatten_sharp()), &bi_subst_lift(inner, h))
        }
    }
}

/// Translates an axiomatic derivation of `A |- C` into a tree derivation
/// of `A |- C` (single-leaf antecedent). Composition goes through the
/// admissible cut, so the result is cut-free by construction.
pub fn a2g(f: &ADerivation) -> BiTDerivation {
    use crate::skmbica::ARule;
    let root = TreePath::root();
    match &f.rule {
        ARule::Id => BiTDerivation::ax(f.conclusion.source.clone()),
        ARule::Comp => {
            let left = a2g(&f.premises[0]);
            let right = a2g(&f.premises[1]);
            cut_bt(&left, &right, &root).expect("middle formulas match by schema")
        }
        ARule::TensLCong => BiTDerivation::tens_ll(
            BiTDerivation::tens_lr(a2g(&f.premises[0]), a2g(&f.premises[1])),
            root,
        ),
        ARule::LolliLCong => BiTDerivation::lolli_lr(BiTDerivation::lolli_ll(
            a2g(&f.premises[0]),
            a2g(&f.premises[1]),
            root,
        )),
        ARule::LolliRCong => BiTDerivation::lolli_rr(BiTDerivation::lolli_rl(
            a2g(&f.premises[0]),
            a2g(&f.premises[1]),
            root,
        )),
        ARule::Lambda => {
            let Formula::TensL(_, a) = &f.conclusion.source else { unreachable!() };
            let d = BiTDerivation::unit_ll(BiTDerivation::ax(a.as_ref().clone()), root.clone());
            BiTDerivation::tens_ll(BiTDerivation::il(d, TreePath(vec![Step::Left])), root)
        }
        ARule::Rho => {
            let a = &f.conclusion.source;
            BiTDerivation::unit_rl(
                BiTDerivation::tens_lr(BiTDerivation::ax(a.clone()), BiTDerivation::ir()),
                root,
            )
        }
        ARule::Alpha => {
            let Formula::TensL(ab, c) = &f.conclusion.source else { unreachable!() };
            let Formula::TensL(a, b) = ab.as_ref() else { unreachable!() };
            let spine = BiTDerivation::tens_lr(
                BiTDerivation::ax(a.as_ref().clone()),
                BiTDerivation::tens_lr(
                    BiTDerivation::ax(b.as_ref().clone()),
                    BiTDerivation::ax(c.as_ref().clone()),
                ),
            );
            let rotated = BiTDerivation::assoc_l(spine, root.clone());
            BiTDerivation::tens_ll(
                BiTDerivation::tens_ll(rotated, TreePath(vec![Step::Left])),
                root,
            )
        }
        ARule::Gamma => {
            let Formula::TensL(a, b) = &f.conclusion.source else { unreachable!() };
            let spine = BiTDerivation::tens_rr(
                BiTDerivation::ax(b.as_ref().clone()),
                BiTDerivation::ax(a.as_ref().clone()),
            );
            BiTDerivation::tens_ll(BiTDerivation::comm_sc(spine, root.clone()), root)
        }
        ARule::GammaInv => {
            let Formula::TensR(a, b) = &f.conclusion.source else { unreachable!() };
            let spine = BiTDerivation::tens_lr(
                BiTDerivation::ax(b.as_ref().clone()),
                BiTDerivation::ax(a.as_ref().clone()),
            );
            BiTDerivation::tens_rl(BiTDerivation::comm_cs(spine, root.clone()), root)
        }
        ARule::Pi => {
            let inner = tensll_inverse(&a2g(&f.premises[0]), &root).expect("*L source by schema");
            BiTDerivation::lolli_lr(inner)
        }
        ARule::PiInv => {
            let inner = lollilr_inverse(&a2g(&f.premises[0])).expect("-oL target by schema");
            BiTDerivation::tens_ll(inner, root)
        }
        ARule::PiR => {
            let inner = tensrl_inverse(&a2g(&f.premises[0]), &root).expect("*R source by schema");
            BiTDerivation::lolli_rr(inner)
        }
        ARule::PiRInv => {
            let inner = lollirr_inverse(&a2g(&f.premises[0])).expect("-oR target by schema");
            BiTDerivation::tens_rl(inner, root)
        }
    }
}

/// Translates a tree derivation of `T |- C` into an axiomatic derivation
/// of `T# |- C`.
pub fn g2a(f: &BiTDerivation) -> ADerivation {
    let ante = &f.conclusion.antecedent;
    match &f.rule {
        BiTRule::Ax => ADerivation::id(f.conclusion.succedent.clone()),
        BiTRule::IR => ADerivation::id(Formula::Unit),
        // Sharp-flattening identifies premise and conclusion antecedents.
        BiTRule::IL(_) | BiTRule::TensLL(_) | BiTRule::TensRL(_) => g2a(&f.premises[0]),
        BiTRule::TensLR => ADerivation::tens_l_cong(g2a(&f.premises[0]), g2a(&f.premises[1])),
        BiTRule::TensRR => derived_tens_r(&g2a(&f.premises[0]), &g2a(&f.premises[1])),
        BiTRule::LolliLR => ADerivation::pi(g2a(&f.premises[0])),
        BiTRule::LolliRR => ADerivation::pi_r(g2a(&f.premises[0])),
        BiTRule::LolliLL(pos) => {
            let Ok(Tree::Comma(_, u)) = ante.subtree(pos) else { unreachable!() };
            let b = leaf_at(&f.premises[1].conclusion.antecedent, pos);
            let h = ADerivation::pi_inv(ADerivation::lolli_l_cong(
                g2a(&f.premises[0]),
                ADerivation::id(b),
            ));
            let _ = u;
            lift_and_comp(ante, pos, h, &f.premises[1])
        }
        BiTRule::LolliRL(pos) => {
            let b = leaf_at(&f.premises[1].conclusion.antecedent, pos);
            let h = ADerivation::pi_r_inv(ADerivation::lolli_r_cong(
                g2a(&f.premises[0]),
                ADerivation::id(b),
            ));
            lift_and_comp(ante, pos, h, &f.premises[1])
        }
        BiTRule::AssocL(pos) => {
            let Ok(Tree::Comma(l, u2)) = ante.subtree(pos) else { unreachable!() };
            let Tree::Comma(u0, u1) = l.as_ref() else { unreachable!() };
            let h = ADerivation::alpha(u0.flatten_sharp(), u1.flatten_sharp(), u2.flatten_sharp());
            lift_and_comp(ante, pos, h, &f.premises[0])
        }
        BiTRule::AssocR(pos) => {
            let Ok(Tree::Semi(u0, r)) = ante.subtree(pos) else { unreachable!() };
            let Tree::Semi(u1, u2) = r.as_ref() else { unreachable!() };
            let h =
                derived_alpha_r(u0.flatten_sharp(), u1.flatten_sharp(), u2.flatten_sharp());
            lift_and_comp(ante, pos, h, &f.premises[0])
        }
        BiTRule::TensComm(pos, CommDir::CommaToSemi) => {
            let Ok(Tree::Semi(u1, u0)) = ante.subtree(pos) else { unreachable!() };
            let h = ADerivation::gamma_inv(u1.flatten_sharp(), u0.flatten_sharp());
            lift_and_comp(ante, pos, h, &f.premises[0])
        }
        BiTRule::TensComm(pos, CommDir::SemiToComma) => {
            let Ok(Tree::Comma(u0, u1)) = ante.subtree(pos) else { unreachable!() };
            let h = ADerivation::gamma(u0.flatten_sharp(), u1.flatten_sharp());
            lift_and_comp(ante, pos, h, &f.premises[0])
        }
        BiTRule::UnitLL(pos) => {
            let Ok(Tree::Comma(_, u)) = ante.subtree(pos) else { unreachable!() };
            let h = ADerivation::lambda(u.flatten_sharp());
            lift_and_comp(ante, pos, h, &f.premises[0])
        }
        BiTRule::UnitRL(pos) => {
            let u = ante.subtree(pos).unwrap();
            let h = ADerivation::rho(u.flatten_sharp());
            lift_and_comp(ante, pos, h, &f.premises[0])
        }
        BiTRule::UnitLR(pos) => {
            let Ok(Tree::Semi(u, _)) = ante.subtree(pos) else { unreachable!() };
            let h = derived_rho_r(u.flatten_sharp());
            lift_and_comp(ante, pos, h, &f.premises[0])
        }
        BiTRule::UnitRR(pos) => {
            let u = ante.subtree(pos).unwrap();
            let h = derived_lambda_r(u.flatten_sharp());
            lift_and_comp(ante, pos, h, &f.premises[0])
        }
    }
}

fn leaf_at(t: &Tree, pos: &TreePath) -> Formula {
    match t.subtree(pos) {
        Ok(Tree::Leaf(f)) => f.clone(),
        other => unreachable!("expected a formula leaf, found {other:?}"),
    }
}

// Lifts `h : (conclusion subtree)# |- (premise subtree)#` through the
// context at `pos` and composes with the translated premise.
fn lift_and_comp(
    ante: &Tree,
    pos: &TreePath,
    h: ADerivation,
    premise: &BiTDerivation,
) -> ADerivation {
    let ctx = crate::tree::find_context(ante, pos).unwrap().0;
    let lifted = bi_subst_lift(&ctx, &h);
    debug_assert!(check_a(&lifted).is_ok());
    ADerivation::comp(lifted, g2a(premise))
}

// ---- Bounded search ------------------------------------------------------

/// Reusable bounded prover with caches shared across queries.
///
/// Sound, and complete exactly up to the depth bound: a minimal proof
/// never repeats a sequent along a branch, so pruning on-stack revisits
/// (the `⊗comm` flips and unit growers loop otherwise) loses nothing.
/// Failures are cached only when independent of pruned strict-ancestor
/// revisits, tracked via the lowest stack index a failure touched.
#[derive(Default)]
pub struct BtProver {
    /// Proofs found so far, with their heights: a hit only counts when the
    /// cached proof fits the current budget.
    proved: HashMap<TreeSequent, (BiTDerivation, usize)>,
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
    pub stat_expand: usize,
    pub stat_hit: usize,
    pub stat_prune: usize,
}

const CLEAN: usize = usize::MAX;

fn bt_height(d: &BiTDerivation) -> usize {
    1 + d.premises.iter().map(bt_height).max().unwrap_or(0)
}

impl BtProver {
    /// A prover with the standard semantic-pruning battery.
    pub fn new() -> BtProver {
        BtProver { battery: Some(crate::semantics::ModelBattery::standard()), ..BtProver::default() }
    }

    /// A prover with purely syntactic search.
    pub fn without_semantic_prune() -> BtProver {
        BtProver::default()
    }

    pub fn prove(&mut self, s: &TreeSequent, depth: usize) -> Option<BiTDerivation> {
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

    fn dfs(&mut self, s: &TreeSequent, budget: usize) -> (Option<BiTDerivation>, usize) {
        if let Some((w, h)) = self.proved.get(s) {
            if *h <= budget {
                return (Some(w.clone()), CLEAN);
            }
        }
        if self.failed.get(s).is_some_and(|&b| b >= budget) {
            self.stat_hit += 1;
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
            self.stat_prune += 1;
            return (None, i);
        }
        let idx = self.depth;
        let mark = self.pending.len();
        self.on_stack.insert(s.clone(), idx);
        self.depth += 1;
        self.stat_expand += 1;
        let (result, mut dep) = self.expand(s, budget);
        self.depth -= 1;
        self.on_stack.remove(s);
        match &result {
            Some(w) => {
                let h = bt_height(w);
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

    fn expand(&mut self, s: &TreeSequent, budget: usize) -> (Option<BiTDerivation>, usize) {
        use BiTDerivation as D;
        let ante = s.antecedent.clone();
        if ante == Tree::leaf(s.succedent.clone()) {
            return (Some(D::ax(s.succedent.clone())), CLEAN);
        }
        if ante == Tree::EmptyLeaf && s.succedent == Formula::Unit {
            return (Some(D::ir()), CLEAN);
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
        macro_rules! attempt_replace {
            ($pos:expr, $replacement:expr, $mk:expr) => {{
                let prem = TreeSequent::new(
                    ante.replace($pos, $replacement).unwrap(),
                    s.succedent.clone(),
                );
                attempt!(prem, $mk);
            }};
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
        // Shrinking and rearranging left rules.
        for pos in ante.all_paths() {
            let sub = ante.subtree(&pos).unwrap().clone();
            match &sub {
                Tree::Leaf(Formula::Unit) => {
                    attempt_replace!(&pos, Tree::EmptyLeaf, |w| D::il(w, pos.clone()));
                }
                Tree::Leaf(Formula::TensL(a, bb)) => {
                    let pair = Tree::comma(
                        Tree::leaf(a.as_ref().clone()),
                        Tree::leaf(bb.as_ref().clone()),
                    );
                    attempt_replace!(&pos, pair, |w| D::tens_ll(w, pos.clone()));
                }
                Tree::Leaf(Formula::TensR(a, bb)) => {
                    let pair = Tree::semi(
                        Tree::leaf(a.as_ref().clone()),
                        Tree::leaf(bb.as_ref().clone()),
                    );
                    attempt_replace!(&pos, pair, |w| D::tens_rl(w, pos.clone()));
                }
                Tree::Comma(l, r) => {
                    if l.as_ref() == &Tree::EmptyLeaf {
                        attempt_replace!(&pos, r.as_ref().clone(), |w| D::unit_ll(w, pos.clone()));
                    }
                    if let Tree::Comma(u0, u1) = l.as_ref() {
                        let rotated = Tree::comma(
                            u0.as_ref().clone(),
                            Tree::comma(u1.as_ref().clone(), r.as_ref().clone()),
                        );
                        attempt_replace!(&pos, rotated, |w| D::assoc_l(w, pos.clone()));
                    }
                    // ⊗comm upward: premise (U1 ; U0).
                    let swapped = Tree::semi(r.as_ref().clone(), l.as_ref().clone());
                    attempt_replace!(&pos, swapped, |w| D::comm_sc(w, pos.clone()));
                }
                Tree::Semi(l, r) => {
                    if r.as_ref() == &Tree::EmptyLeaf {
                        attempt_replace!(&pos, l.as_ref().clone(), |w| D::unit_lr(w, pos.clone()));
                    }
                    if let Tree::Semi(u1, u2) = r.as_ref() {
                        let rotated = Tree::semi(
                            Tree::semi(l.as_ref().clone(), u1.as_ref().clone()),
                            u2.as_ref().clone(),
                        );
                        attempt_replace!(&pos, rotated, |w| D::assoc_r(w, pos.clone()));
                    }
                    // ⊗comm downward: premise (U0 , U1).
                    let swapped = Tree::comma(r.as_ref().clone(), l.as_ref().clone());
                    attempt_replace!(&pos, swapped, |w| D::comm_cs(w, pos.clone()));
                }
                _ => {}
            }
        }
        // Right rules.
        match &s.succedent {
            Formula::LolliL(a, c) => {
                let prem = TreeSequent::new(
                    Tree::comma(ante.clone(), Tree::leaf(a.as_ref().clone())),
                    c.as_ref().clone(),
                );
                attempt!(prem, D::lolli_lr);
            }
            Formula::LolliR(a, c) => {
                let prem = TreeSequent::new(
                    Tree::semi(ante.clone(), Tree::leaf(a.as_ref().clone())),
                    c.as_ref().clone(),
                );
                attempt!(prem, D::lolli_rr);
            }
            _ => {}
        }
        match (&ante, &s.succedent) {
            (Tree::Comma(l, r), Formula::TensL(a, bb)) => {
                let left = TreeSequent::new(l.as_ref().clone(), a.as_ref().clone());
                let right = TreeSequent::new(r.as_ref().clone(), bb.as_ref().clone());
                attempt2!(left, right, D::tens_lr);
            }
            (Tree::Semi(l, r), Formula::TensR(a, bb)) => {
                let left = TreeSequent::new(l.as_ref().clone(), a.as_ref().clone());
                let right = TreeSequent::new(r.as_ref().clone(), bb.as_ref().clone());
                attempt2!(left, right, D::tens_rr);
            }
            _ => {}
        }
        // Implication left rules.
        for pos in ante.all_paths() {
            match ante.subtree(&pos).unwrap() {
                Tree::Comma(head, u) => {
                    if let Tree::Leaf(Formula::LolliL(a, bb)) = head.as_ref() {
                        let arg = TreeSequent::new(u.as_ref().clone(), a.as_ref().clone());
                        let main = TreeSequent::new(
                            ante.replace(&pos, Tree::leaf(bb.as_ref().clone())).unwrap(),
                            s.succedent.clone(),
                        );
                        attempt2!(arg, main, |wa, wm| D::lolli_ll(wa, wm, pos.clone()));
                    }
                }
                Tree::Semi(head, u) => {
                    if let Tree::Leaf(Formula::LolliR(a, bb)) = head.as_ref() {
                        let arg = TreeSequent::new(u.as_ref().clone(), a.as_ref().clone());
                        let main = TreeSequent::new(
                            ante.replace(&pos, Tree::leaf(bb.as_ref().clone())).unwrap(),
                            s.succedent.clone(),
                        );
                        attempt2!(arg, main, |wa, wm| D::lolli_rl(wa, wm, pos.clone()));
                    }
                }
                _ => {}
            }
        }
        // Growing unit rules last, at every position.
        for pos in ante.all_paths() {
            let sub = ante.subtree(&pos).unwrap().clone();
            attempt_replace!(&pos, Tree::comma(sub.clone(), Tree::EmptyLeaf), |w| D::unit_rl(
                w,
                pos.clone()
            ));
            attempt_replace!(&pos, Tree::semi(Tree::EmptyLeaf, sub), |w| D::unit_rr(
                w,
                pos.clone()
            ));
        }
        (None, dep)
    }
}

/// Depth-bounded backward search with a fresh cache.
pub fn prove_bt_bounded(s: &TreeSequent, depth: usize) -> Option<BiTDerivation> {
    BtProver::new().prove(s, depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_arrow_sequent, parse_formula, parse_tree_sequent};
    use crate::skmbica::Arrow;

    fn path(s: &str) -> TreePath {
        if s == "." {
            return TreePath::root();
        }
        TreePath(s.chars().map(|c| if c == 'l' { Step::Left } else { Step::Right }).collect())
    }

    fn xf() -> Formula {
        parse_formula("X").unwrap()
    }
    fn yf() -> Formula {
        parse_formula("Y").unwrap()
    }

    #[test]
    fn tens_r_left_prime_macro_checks() {
        // ⊗R L' : T[B *R A] from T[(A , B)] via ⊗comm then *R L.
        let base = BiTDerivation::tens_rr(BiTDerivation::ax(yf()), BiTDerivation::ax(xf()));
        let spine = BiTDerivation::comm_sc(base, path("."));
        assert_eq!(spine.conclusion, parse_tree_sequent("(X , Y) |- Y *R X").unwrap());
        let folded = BiTDerivation::comm_cs(spine, path("."));
        let folded = BiTDerivation::tens_rl(folded, path("."));
        assert_eq!(folded.conclusion, parse_tree_sequent("Y *R X |- Y *R X").unwrap());
        assert!(check_bt(&folded).is_ok());
    }

    #[test]
    fn lolli_r_left_prime_macro_checks() {
        // -oR L' : T[U , A -oR B] via -oR L then ⊗comm.
        let inner = BiTDerivation::lolli_rl(BiTDerivation::ax(xf()), BiTDerivation::ax(yf()), path("."));
        assert_eq!(
            inner.conclusion,
            parse_tree_sequent("((X -oR Y) ; X) |- Y").unwrap()
        );
        let outer = BiTDerivation::comm_sc(inner, path("."));
        assert_eq!(outer.conclusion, parse_tree_sequent("(X , (X -oR Y)) |- Y").unwrap());
        assert!(check_bt(&outer).is_ok());
    }

    #[test]
    fn assoc_r_left_skew_orientation_rejected() {
        let spine = BiTDerivation::tens_rr(
            BiTDerivation::ax(xf()),
            BiTDerivation::tens_rr(BiTDerivation::ax(yf()), BiTDerivation::ax(parse_formula("Z").unwrap())),
        );
        // Claiming assocR with the premise already right-nested is invalid.
        let bad = BiTDerivation {
            conclusion: TreeSequent::new(
                Tree::semi(
                    Tree::semi(Tree::leaf(xf()), Tree::leaf(yf())),
                    Tree::leaf(parse_formula("Z").unwrap()),
                ),
                spine.conclusion.succedent.clone(),
            ),
            rule: BiTRule::AssocR(path(".")),
            premises: vec![spine],
        };
        assert!(!check_bt(&bad).is_ok());
    }

    #[test]
    fn cut_permutes_past_comm() {
        // f ends in ⊗comm; the cut permutes up.
        let f = BiTDerivation::comm_cs(
            BiTDerivation::tens_lr(BiTDerivation::ax(xf()), BiTDerivation::ax(yf())),
            path("."),
        );
        assert_eq!(f.conclusion, parse_tree_sequent("(Y ; X) |- X *L Y").unwrap());
        let g = BiTDerivation::ax(parse_formula("X *L Y").unwrap());
        let cut = cut_bt(&f, &g, &path(".")).unwrap();
        assert_eq!(cut, f);

        let g2 = BiTDerivation::unit_lr(g, path("."));
        let cut = cut_bt(&f, &g2, &path("l")).unwrap();
        assert!(check_bt(&cut).is_ok());
        assert_eq!(cut.conclusion, parse_tree_sequent("((Y ; X) ; -) |- X *L Y").unwrap());
        assert!(matches!(cut.rule, BiTRule::TensComm(_, CommDir::CommaToSemi)));
    }

    #[test]
    fn cut_ir_against_il() {
        let g = BiTDerivation::il(
            BiTDerivation::unit_ll(BiTDerivation::ax(xf()), path(".")),
            path("l"),
        );
        assert_eq!(g.conclusion, parse_tree_sequent("(I , X) |- X").unwrap());
        let cut = cut_bt(&BiTDerivation::ir(), &g, &path("l")).unwrap();
        assert_eq!(cut, g.premises[0]);
    }

    #[test]
    fn search_finds_gamma_both_ways() {
        let w = prove_bt_bounded(&parse_tree_sequent("X *L Y |- Y *R X").unwrap(), 6).unwrap();
        assert!(check_bt(&w).is_ok());
        let w = prove_bt_bounded(&parse_tree_sequent("Y *R X |- X *L Y").unwrap(), 6).unwrap();
        assert!(check_bt(&w).is_ok());
    }

    #[test]
    fn search_finds_tens_rr() {
        let w = prove_bt_bounded(&parse_tree_sequent("(X ; Y) |- X *R Y").unwrap(), 3).unwrap();
        assert!(check_bt(&w).is_ok());
        assert_eq!(w.rule, BiTRule::TensRR);
    }

    #[test]
    fn search_misses_gamma_wrong_pairing() {
        // X *R Y |- X *L Y has no proof (γ⁻¹ swaps the components).
        assert!(prove_bt_bounded(&parse_tree_sequent("X *R Y |- X *L Y").unwrap(), 6).is_none());
    }

    #[test]
    fn a2g_examples() {
        let id = ADerivation::id(xf());
        assert_eq!(a2g(&id), BiTDerivation::ax(xf()));

        let gamma = ADerivation::gamma(xf(), yf());
        let t = a2g(&gamma);
        assert!(check_bt(&t).is_ok());
        assert_eq!(t.conclusion, parse_tree_sequent("X *L Y |- Y *R X").unwrap());

        let alpha = ADerivation::alpha(xf(), yf(), parse_formula("Z").unwrap());
        let t = a2g(&alpha);
        assert!(check_bt(&t).is_ok());
        assert_eq!(
            t.conclusion,
            parse_tree_sequent("(X *L Y) *L Z |- X *L (Y *L Z)").unwrap()
        );

        // Composition goes through the admissible cut.
        let comp = ADerivation::comp(ADerivation::rho(xf()), ADerivation::gamma(xf(), Formula::Unit));
        let t = a2g(&comp);
        assert!(check_bt(&t).is_ok());
        assert_eq!(t.conclusion, parse_tree_sequent("X |- I *R X").unwrap());
    }

    #[test]
    fn a2g_pi_cases() {
        let pi = ADerivation::pi(ADerivation::lambda(xf()));
        let t = a2g(&pi);
        assert!(check_bt(&t).is_ok());
        assert_eq!(t.conclusion, parse_tree_sequent("I |- X -oL X").unwrap());

        let pi_r_inv = ADerivation::pi_r_inv(ADerivation::pi_r(ADerivation::gamma_inv(xf(), yf())));
        let t = a2g(&pi_r_inv);
        assert!(check_bt(&t).is_ok());
        assert_eq!(t.conclusion, parse_tree_sequent("X *R Y |- Y *L X").unwrap());
    }

    #[test]
    fn g2a_examples() {
        let ax = BiTDerivation::ax(xf());
        assert_eq!(g2a(&ax), ADerivation::id(xf()));

        // ⊗comm over (X , Y) -> (Y ; X) maps to γ lifted into the context.
        let spine = BiTDerivation::tens_rr(BiTDerivation::ax(yf()), BiTDerivation::ax(xf()));
        let commed = BiTDerivation::comm_sc(spine, path("."));
        let a = g2a(&commed);
        assert!(check_a(&a).is_ok());
        assert_eq!(a.conclusion, Arrow::new(parse_formula("X *L Y").unwrap(), parse_formula("Y *R X").unwrap()));

        // The ⊗R L' macro lands on a source containing *R.
        let base = BiTDerivation::tens_rr(BiTDerivation::ax(yf()), BiTDerivation::ax(xf()));
        let spine = BiTDerivation::comm_sc(base, path("."));
        let folded = BiTDerivation::tens_rl(BiTDerivation::comm_cs(spine, path(".")), path("."));
        let a = g2a(&folded);
        assert!(check_a(&a).is_ok());
        assert_eq!(a.conclusion.source, parse_formula("Y *R X").unwrap());
    }

    #[test]
    fn g2a_endsequent_is_sharp_flattening() {
        let w = prove_bt_bounded(&parse_tree_sequent("((X , Y) ; -) |- Y *R X").unwrap(), 6)
            .unwrap();
        let a = g2a(&w);
        assert!(check_a(&a).is_ok());
        let (src, tgt) = parse_arrow_sequent("(X *L Y) *R I |- Y *R X").unwrap();
        assert_eq!(a.conclusion, Arrow::new(src, tgt));
    }

    #[test]
    fn inverse_rules_round_trip() {
        let d = a2g(&ADerivation::gamma(xf(), yf()));
        // T |- Y *R X, unfold the source tensor leaf.
        let unfolded = tensll_inverse(&d, &path(".")).unwrap();
        assert!(check_bt(&unfolded).is_ok());
        assert_eq!(unfolded.conclusion, parse_tree_sequent("(X , Y) |- Y *R X").unwrap());

        let refolded = BiTDerivation::tens_ll(unfolded, path("."));
        assert_eq!(refolded.conclusion, d.conclusion);
    }
}
