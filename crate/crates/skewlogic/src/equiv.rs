//! The equivalence of LSkG and LSkT at the level of derivations: the
//! substitution-lifting lemma, the translations `g2t` and `t2g`, and the
//! resulting decision procedure for LSkT sequents.

use crate::formula::{Formula, Stoup};
use crate::lskg::{check_g, prove_g, scut, FragmentError, GDerivation, GRule};
use crate::lskt::{check_t, il_inverse, tensl_inverse, TDerivation, TRule};
use crate::tree::{Step, Tree, TreeContext, TreePath, TreeSequent};

/// Lifts `f : A | |- B` through a comma context: the result derives
/// `T[A]* | |- T[B]*`, following the `*L`/`*R`/`pass`/`ax` construction of
/// the lifting lemma.
pub fn subst_lift(ctx: &TreeContext, f: &GDerivation) -> Result<GDerivation, FragmentError> {
    debug_assert!(f.conclusion.context.is_empty(), "subst_lift needs A | |- B");
    match ctx {
        TreeContext::Hole => Ok(f.clone()),
        TreeContext::CommaL(inner, t) => {
            let lifted = subst_lift(inner, f)?;
            let side = t.flatten_star().map_err(|_| FragmentError(t.to_string()))?;
            Ok(GDerivation::tens_l(GDerivation::tens_r(
                lifted,
                GDerivation::pass(GDerivation::ax(side)),
            )))
        }
        TreeContext::CommaR(t, inner) => {
            let lifted = subst_lift(inner, f)?;
            let side = t.flatten_star().map_err(|_| FragmentError(t.to_string()))?;
            Ok(GDerivation::tens_l(GDerivation::tens_r(
                GDerivation::ax(side),
                GDerivation::pass(lifted),
            )))
        }
        TreeContext::SemiL(_, _) | TreeContext::SemiR(_, _) => {
            Err(FragmentError("semicolon context".to_string()))
        }
    }
}

fn left_spine(len: usize) -> TreePath {
    TreePath(vec![Step::Left; len])
}

/// Translates an LSkG derivation of `S | Γ |- C` into an LSkT derivation
/// of `[[s(S) | Γ]] |- C`.
pub fn g2t(f: &GDerivation) -> TDerivation {
    match &f.rule {
        GRule::Ax => TDerivation::ax(f.conclusion.succedent.clone()),
        // s(-) = I, so the empty antecedent becomes the unit leaf.
        GRule::IR => TDerivation::il(TDerivation::ir(), TreePath::root()),
        // [[s(I) | Γ]] and [[s(-) | Γ]] coincide.
        GRule::IL => g2t(&f.premises[0]),
        GRule::Pass => {
            let n = f.premises[0].conclusion.context.len();
            let head = left_spine(n);
            let lifted = TDerivation::unit_l(g2t(&f.premises[0]), head.clone());
            TDerivation::il(lifted, head.child(Step::Left))
        }
        GRule::TensL => {
            let n = f.conclusion.context.len();
            TDerivation::tens_l(g2t(&f.premises[0]), left_spine(n))
        }
        GRule::LolliR => TDerivation::lolli_r(g2t(&f.premises[0])),
        GRule::TensR { split } => {
            let delta = f.conclusion.context.len() - split;
            let d = TDerivation::tens_r(g2t(&f.premises[0]), g2t(&f.premises[1]));
            fold_unit_spine(d, &TreePath::root(), delta)
        }
        GRule::LolliL { split } => {
            let delta = f.conclusion.context.len() - split;
            let offset = left_spine(delta);
            let d = TDerivation::lolli_l(g2t(&f.premises[0]), g2t(&f.premises[1]), offset.clone());
            fold_unit_spine(d, &offset, *split)
        }
    }
}

// From an antecedent with `(H , [[I | Γ]])` at `offset` (|Γ| = len),
// produces the left-nested `[[H | Γ]]` there: assoc*, then IL⁻¹, then
// unitR, exactly the block displayed in the equivalence proof.
fn fold_unit_spine(mut d: TDerivation, offset: &TreePath, len: usize) -> TDerivation {
    for k in 0..len {
        d = TDerivation::assoc(d, offset.join(&left_spine(k)));
    }
    let unit_pair = offset.join(&left_spine(len));
    d = il_inverse(&d, &unit_pair.child(Step::Right)).expect("unit leaf by construction");
    TDerivation::unit_r(d, unit_pair)
}

/// Translates an LSkT derivation of `T |- C` into an LSkG derivation of
/// `T* | |- C`.
pub fn t2g(f: &TDerivation) -> Result<GDerivation, FragmentError> {
    if !f.conclusion.in_lsk_fragment() {
        return Err(FragmentError(f.conclusion.to_string()));
    }
    Ok(t2g_rec(f))
}

fn t2g_rec(f: &TDerivation) -> GDerivation {
    let ante = &f.conclusion.antecedent;
    match &f.rule {
        TRule::Ax => GDerivation::ax(f.conclusion.succedent.clone()),
        TRule::IR => GDerivation::il(GDerivation::ir()),
        // Star-flattening identifies the premise and conclusion antecedents.
        TRule::IL(_) | TRule::TensL(_) => t2g_rec(&f.premises[0]),
        TRule::TensR => GDerivation::tens_l(GDerivation::tens_r(
            t2g_rec(&f.premises[0]),
            GDerivation::pass(t2g_rec(&f.premises[1])),
        )),
        TRule::LolliR => {
            let star = ante.flatten_star().unwrap();
            let Formula::LolliL(a, _) = &f.conclusion.succedent else {
                unreachable!("-oR concludes an implication");
            };
            let pair = GDerivation::tens_r(
                GDerivation::ax(star),
                GDerivation::pass(GDerivation::ax(a.as_ref().clone())),
            );
            GDerivation::lolli_r(scut(&pair, &t2g_rec(&f.premises[0])).unwrap())
        }
        TRule::LolliL(pos) => {
            let arg = &f.premises[0];
            let main = &f.premises[1];
            let b = main.conclusion.antecedent.subtree(pos).unwrap();
            let Tree::Leaf(b) = b else { unreachable!("-oL rewrites a leaf") };
            let witness = GDerivation::tens_l(GDerivation::lolli_l(
                GDerivation::pass(t2g_rec(arg)),
                GDerivation::ax(b.clone()),
            ));
            let ctx = crate::tree::find_context(ante, pos).unwrap().0;
            let lifted = subst_lift(&ctx, &witness).unwrap();
            scut(&lifted, &t2g_rec(main)).unwrap()
        }
        TRule::Assoc(pos) => {
            let Ok(Tree::Comma(left, u2)) = ante.subtree(pos) else {
                unreachable!("assoc rewrites a left-nested pair");
            };
            let Tree::Comma(u0, u1) = left.as_ref() else {
                unreachable!("assoc rewrites a left-nested pair");
            };
            let a = u0.flatten_star().unwrap();
            let b = u1.flatten_star().unwrap();
            let c = u2.flatten_star().unwrap();
            lift_and_cut(ante, pos, &alpha_g(a, b, c), &f.premises[0])
        }
        TRule::UnitL(pos) => {
            let Ok(Tree::Comma(_, u)) = ante.subtree(pos) else {
                unreachable!("unitL rewrites (- , U)");
            };
            let a = u.flatten_star().unwrap();
            // λ : I *L A | |- A.
            let lambda = GDerivation::tens_l(GDerivation::il(GDerivation::pass(
                GDerivation::ax(a),
            )));
            lift_and_cut(ante, pos, &lambda, &f.premises[0])
        }
        TRule::UnitR(pos) => {
            let u = ante.subtree(pos).unwrap();
            let a = u.flatten_star().unwrap();
            // ρ : A | |- A *L I.
            let rho = GDerivation::tens_r(GDerivation::ax(a), GDerivation::ir());
            lift_and_cut(ante, pos, &rho, &f.premises[0])
        }
    }
}

// α : (A *L B) *L C | |- A *L (B *L C) in LSkG.
fn alpha_g(a: Formula, b: Formula, c: Formula) -> GDerivation {
    let inner = GDerivation::tens_r(GDerivation::ax(b), GDerivation::pass(GDerivation::ax(c)));
    let mid = GDerivation::tens_r(GDerivation::ax(a), GDerivation::pass(inner));
    GDerivation::tens_l(GDerivation::tens_l(mid))
}

// Lifts `h : U* | |- V*` through the context of `ante` at `pos` and cuts
// with the translated premise.
fn lift_and_cut(
    ante: &Tree,
    pos: &TreePath,
    h: &GDerivation,
    premise: &TDerivation,
) -> GDerivation {
    let ctx = crate::tree::find_context(ante, pos).unwrap().0;
    let lifted = subst_lift(&ctx, h).unwrap();
    scut(&lifted, &t2g_rec(premise)).unwrap()
}

/// Decides derivability of an LSk-fragment tree sequent by deciding the
/// star-flattened stoup sequent in LSkG. On success returns a checked
/// LSkT witness, reconstructed by translating the LSkG proof and
/// unfolding the antecedent with `*L⁻¹`/`IL⁻¹` steps.
pub fn decide_lskt(s: &TreeSequent) -> Result<Option<TDerivation>, FragmentError> {
    if !s.in_lsk_fragment() {
        return Err(FragmentError(s.to_string()));
    }
    let star = s.antecedent.flatten_star().map_err(|_| FragmentError(s.to_string()))?;
    let goal = crate::formula::StoupSequent::new(Stoup::Just(star), vec![], s.succedent.clone());
    let Some(gd) = prove_g(&goal)? else {
        return Ok(None);
    };
    debug_assert!(check_g(&gd).is_ok());
    let flat_witness = g2t(&gd);
    let witness = unflatten(flat_witness, &s.antecedent, &TreePath::root());
    debug_assert!(check_t(&witness).is_ok());
    debug_assert_eq!(witness.conclusion, *s);
    Ok(Some(witness))
}

// Rebuilds the tree shape `shape` from the single leaf `shape*` at `pos`.
fn unflatten(d: TDerivation, shape: &Tree, pos: &TreePath) -> TDerivation {
    match shape {
        Tree::Leaf(_) => d,
        Tree::EmptyLeaf => il_inverse(&d, pos).expect("unit leaf by construction"),
        Tree::Comma(l, r) => {
            let d = tensl_inverse(&d, pos).expect("tensor leaf by construction");
            let d = unflatten(d, l, &pos.child(Step::Left));
            unflatten(d, r, &pos.child(Step::Right))
        }
        Tree::Semi(_, _) => unreachable!("fragment checked on entry"),
    }
}

/// The translated endsequent of `g2t`: `[[s(S) | Γ]] |- C`.
pub fn g2t_target(s: &crate::formula::StoupSequent) -> TreeSequent {
    let tree = crate::tree::encode(Tree::leaf(s.stoup.formula()), &s.context);
    TreeSequent::new(tree, s.succedent.clone())
}

/// The translated endsequent of `t2g`: `T* | |- C`.
pub fn t2g_target(s: &TreeSequent) -> Result<crate::formula::StoupSequent, FragmentError> {
    let star = s.antecedent.flatten_star().map_err(|_| FragmentError(s.to_string()))?;
    Ok(crate::formula::StoupSequent::new(Stoup::Just(star), vec![], s.succedent.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_formula, parse_stoup_sequent, parse_tree, parse_tree_sequent};

    fn prove(s: &str) -> GDerivation {
        prove_g(&parse_stoup_sequent(s).unwrap()).unwrap().unwrap()
    }

    #[test]
    fn subst_lift_hole_is_identity() {
        let f = prove("I *L X | |- X");
        let lifted = subst_lift(&TreeContext::Hole, &f).unwrap();
        assert_eq!(lifted, f);
    }

    #[test]
    fn subst_lift_comma_left() {
        let f = prove("I *L X | |- X");
        let ctx = TreeContext::CommaL(
            Box::new(TreeContext::Hole),
            Box::new(Tree::leaf(parse_formula("C").unwrap())),
        );
        let lifted = subst_lift(&ctx, &f).unwrap();
        assert!(check_g(&lifted).is_ok());
        assert_eq!(
            lifted.conclusion,
            parse_stoup_sequent("(I *L X) *L C | |- X *L C").unwrap()
        );
    }

    #[test]
    fn subst_lift_comma_right() {
        let f = prove("I *L X | |- X");
        let ctx = TreeContext::CommaR(
            Box::new(Tree::leaf(parse_formula("C").unwrap())),
            Box::new(TreeContext::Hole),
        );
        let lifted = subst_lift(&ctx, &f).unwrap();
        assert!(check_g(&lifted).is_ok());
        assert_eq!(
            lifted.conclusion,
            parse_stoup_sequent("C *L (I *L X) | |- C *L X").unwrap()
        );
    }

    #[test]
    fn g2t_of_ax_and_ir() {
        let ax = GDerivation::ax(parse_formula("A").unwrap());
        let t = g2t(&ax);
        assert_eq!(t.conclusion, parse_tree_sequent("A |- A").unwrap());
        assert!(check_t(&t).is_ok());

        // s(-) = I: the translated endsequent is I |- I.
        let t = g2t(&GDerivation::ir());
        assert_eq!(t.conclusion, parse_tree_sequent("I |- I").unwrap());
        assert!(check_t(&t).is_ok());
    }

    #[test]
    fn g2t_tens_r_block() {
        // unitR; IL⁻¹; assoc*; *R.
        let f = prove("X | Y , Z |- X *L (Y *L Z)");
        let t = g2t(&f);
        assert!(check_t(&t).is_ok());
        assert_eq!(t.conclusion, g2t_target(&f.conclusion));
        assert_eq!(
            t.conclusion.antecedent,
            parse_tree("((X , Y) , Z)").unwrap()
        );
    }

    #[test]
    fn g2t_matches_target_on_searched_proofs() {
        for s in [
            "I *L X | |- X",
            "- | X |- X *L I",
            "X -oL Y | X , I |- Y *L I",
            "- | |- (X *L Y) -oL (X *L Y)",
            "X | Y |- X *L Y",
        ] {
            let f = prove(s);
            let t = g2t(&f);
            assert!(check_t(&t).is_ok(), "g2t broke on {s}");
            assert_eq!(t.conclusion, g2t_target(&f.conclusion), "wrong endsequent for {s}");
        }
    }

    #[test]
    fn t2g_of_ax() {
        let t = TDerivation::ax(parse_formula("A").unwrap());
        let g = t2g(&t).unwrap();
        assert_eq!(g, GDerivation::ax(parse_formula("A").unwrap()));
    }

    #[test]
    fn t2g_unit_r_uses_lift_and_cut() {
        let t = TDerivation::unit_r(
            TDerivation::tens_r(TDerivation::ax(parse_formula("A").unwrap()), TDerivation::ir()),
            TreePath::root(),
        );
        let g = t2g(&t).unwrap();
        assert!(check_g(&g).is_ok());
        assert_eq!(g.conclusion, parse_stoup_sequent("A | |- A *L I").unwrap());
    }

    #[test]
    fn t2g_of_display_derivation() {
        // (I , X) |- X translates to I *L X | |- X.
        let t = crate::lskt::prove_t_bounded(&parse_tree_sequent("(I , X) |- X").unwrap(), 4)
            .unwrap()
            .unwrap();
        let g = t2g(&t).unwrap();
        assert!(check_g(&g).is_ok());
        assert_eq!(g.conclusion, parse_stoup_sequent("I *L X | |- X").unwrap());
    }

    #[test]
    fn decide_lskt_display_examples() {
        let yes = decide_lskt(&parse_tree_sequent("(I , X) |- X").unwrap()).unwrap();
        let w = yes.unwrap();
        assert!(check_t(&w).is_ok());
        assert_eq!(w.conclusion, parse_tree_sequent("(I , X) |- X").unwrap());

        assert!(decide_lskt(&parse_tree_sequent("X |- I *L X").unwrap()).unwrap().is_none());
        assert!(decide_lskt(&parse_tree_sequent("(X , (Y , Z)) |- (X *L Y) *L Z").unwrap())
            .unwrap()
            .is_none());
    }

    #[test]
    fn orientation_asymmetry() {
        let derivable = ["I *L X |- X", "X |- X *L I"];
        let not_derivable = ["X |- I *L X", "X *L I |- X"];
        for s in derivable {
            assert!(
                decide_lskt(&parse_tree_sequent(s).unwrap()).unwrap().is_some(),
                "{s} should be derivable"
            );
        }
        for s in not_derivable {
            assert!(
                decide_lskt(&parse_tree_sequent(s).unwrap()).unwrap().is_none(),
                "{s} should not be derivable"
            );
        }
    }

    #[test]
    fn semi_associativity_is_one_directional() {
        assert!(decide_lskt(&parse_tree_sequent("(X *L Y) *L Z |- X *L (Y *L Z)").unwrap())
            .unwrap()
            .is_some());
        assert!(decide_lskt(&parse_tree_sequent("X *L (Y *L Z) |- (X *L Y) *L Z").unwrap())
            .unwrap()
            .is_none());
    }

    #[test]
    fn decide_unflattens_deep_antecedents() {
        let s = parse_tree_sequent("((- , I) , (X , Y)) |- X *L Y").unwrap();
        let w = decide_lskt(&s).unwrap().unwrap();
        assert!(check_t(&w).is_ok());
        assert_eq!(w.conclusion, s);
    }
}
