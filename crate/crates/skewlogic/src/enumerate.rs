//! Exhaustive enumeration of formulas, tree sequents and small checked
//! derivations. This is verification machinery: the cut-admissibility,
//! translation and decision-agreement suites quantify over everything
//! these functions produce.

use crate::formula::{Formula, Stoup};
use crate::lskg::GDerivation;
use crate::lskt::TDerivation;
use crate::skmbica::ADerivation;
use crate::skmbict::BiTDerivation;
use crate::tree::{Tree, TreePath, TreeSequent};

/// All formulas over the given atoms (plus the unit) with at most
/// `max_conn` binary connectives. `bi` includes the right-skew
/// connectives.
pub fn formulas(atoms: &[&str], max_conn: usize, bi: bool) -> Vec<Formula> {
    let mut by_conn: Vec<Vec<Formula>> = Vec::new();
    let mut leaves: Vec<Formula> = vec![Formula::Unit];
    leaves.extend(atoms.iter().map(|a| Formula::atom(*a)));
    by_conn.push(leaves);
    for size in 1..=max_conn {
        let mut layer = Vec::new();
        for left_size in 0..size {
            let right_size = size - 1 - left_size;
            for l in &by_conn[left_size] {
                for r in &by_conn[right_size] {
                    layer.push(Formula::tens_l(l.clone(), r.clone()));
                    layer.push(Formula::lolli_l(l.clone(), r.clone()));
                    if bi {
                        layer.push(Formula::tens_r(l.clone(), r.clone()));
                        layer.push(Formula::lolli_r(l.clone(), r.clone()));
                    }
                }
            }
        }
        by_conn.push(layer);
    }
    by_conn.into_iter().flatten().collect()
}

/// All trees with exactly `leaves` leaves over the given leaf choices;
/// `semi` includes semicolon nodes.
pub fn trees(leaf_choices: &[Tree], leaves: usize, semi: bool) -> Vec<Tree> {
    if leaves == 1 {
        return leaf_choices.to_vec();
    }
    let mut out = Vec::new();
    for k in 1..leaves {
        for l in trees(leaf_choices, k, semi) {
            for r in trees(leaf_choices, leaves - k, semi) {
                out.push(Tree::comma(l.clone(), r.clone()));
                if semi {
                    out.push(Tree::semi(l.clone(), r));
                }
            }
        }
    }
    out
}

/// All LSk-fragment tree sequents over two atoms with at most `max_conn`
/// connectives in total and at most `max_leaves` tree leaves.
pub fn lsk_tree_sequents(max_conn: usize, max_leaves: usize) -> Vec<TreeSequent> {
    let fmas = formulas(&["X", "Y"], max_conn, false);
    let mut out = Vec::new();
    let mut leaf_choices: Vec<Tree> = vec![Tree::EmptyLeaf];
    leaf_choices.extend(fmas.iter().map(|f| Tree::leaf(f.clone())));
    for n in 1..=max_leaves {
        for t in trees(&leaf_choices, n, false) {
            let used: usize = tree_connectives(&t);
            if used > max_conn {
                continue;
            }
            for succ in &fmas {
                if used + succ.connectives() <= max_conn {
                    out.push(TreeSequent::new(t.clone(), succ.clone()));
                }
            }
        }
    }
    out
}

fn tree_connectives(t: &Tree) -> usize {
    match t {
        Tree::Leaf(f) => f.connectives(),
        Tree::EmptyLeaf => 0,
        Tree::Comma(l, r) | Tree::Semi(l, r) => tree_connectives(l) + tree_connectives(r),
    }
}

/// All checked LSkG derivations with at most `max_nodes` rule nodes, with
/// axioms drawn from `seeds`. Built forward: every rule is applied to
/// every smaller derivation it fits.
pub fn g_derivations(seeds: &[Formula], max_nodes: usize) -> Vec<GDerivation> {
    let mut by_size: Vec<Vec<GDerivation>> = vec![Vec::new(); max_nodes + 1];
    if max_nodes == 0 {
        return Vec::new();
    }
    by_size[1] = seeds.iter().map(|f| GDerivation::ax(f.clone())).collect();
    by_size[1].push(GDerivation::ir());
    for size in 2..=max_nodes {
        let mut layer = Vec::new();
        for d in &by_size[size - 1] {
            let c = &d.conclusion;
            if let Stoup::Just(_) = &c.stoup {
                layer.push(GDerivation::pass(d.clone()));
                if !c.context.is_empty() {
                    layer.push(GDerivation::tens_l(d.clone()));
                }
            }
            if c.stoup.is_empty() {
                layer.push(GDerivation::il(d.clone()));
            }
            if !c.context.is_empty() {
                layer.push(GDerivation::lolli_r(d.clone()));
            }
        }
        for left_size in 1..size - 1 {
            let right_size = size - 1 - left_size;
            for l in &by_size[left_size] {
                for r in &by_size[right_size] {
                    if r.conclusion.stoup.is_empty() {
                        layer.push(GDerivation::tens_r(l.clone(), r.clone()));
                    }
                    if l.conclusion.stoup.is_empty() && !r.conclusion.stoup.is_empty() {
                        layer.push(GDerivation::lolli_l(l.clone(), r.clone()));
                    }
                }
            }
        }
        by_size[size] = layer;
    }
    by_size.into_iter().flatten().collect()
}

/// All checked LSkT derivations with at most `max_nodes` rule nodes.
pub fn t_derivations(seeds: &[Formula], max_nodes: usize) -> Vec<TDerivation> {
    let mut by_size: Vec<Vec<TDerivation>> = vec![Vec::new(); max_nodes + 1];
    if max_nodes == 0 {
        return Vec::new();
    }
    by_size[1] = seeds.iter().map(|f| TDerivation::ax(f.clone())).collect();
    by_size[1].push(TDerivation::ir());
    for size in 2..=max_nodes {
        let mut layer = Vec::new();
        for d in &by_size[size - 1] {
            let ante = &d.conclusion.antecedent;
            for pos in ante.all_paths() {
                let sub = ante.subtree(&pos).unwrap();
                // Every position grows with unitL; the other unary rules
                // need a matching shape.
                layer.push(TDerivation::unit_l(d.clone(), pos.clone()));
                match sub {
                    Tree::EmptyLeaf => layer.push(TDerivation::il(d.clone(), pos.clone())),
                    Tree::Comma(l, r) => {
                        if let (Tree::Leaf(_), Tree::Leaf(_)) = (l.as_ref(), r.as_ref()) {
                            layer.push(TDerivation::tens_l(d.clone(), pos.clone()));
                        }
                        if r.as_ref() == &Tree::EmptyLeaf {
                            layer.push(TDerivation::unit_r(d.clone(), pos.clone()));
                        }
                        if matches!(r.as_ref(), Tree::Comma(_, _)) {
                            layer.push(TDerivation::assoc(d.clone(), pos.clone()));
                        }
                    }
                    _ => {}
                }
            }
            if let Tree::Comma(_, r) = ante {
                if matches!(r.as_ref(), Tree::Leaf(_)) {
                    layer.push(TDerivation::lolli_r(d.clone()));
                }
            }
        }
        for left_size in 1..size - 1 {
            let right_size = size - 1 - left_size;
            for l in &by_size[left_size] {
                for r in &by_size[right_size] {
                    layer.push(TDerivation::tens_r(l.clone(), r.clone()));
                    for pos in r.conclusion.antecedent.leaf_paths() {
                        if matches!(r.conclusion.antecedent.subtree(&pos), Ok(Tree::Leaf(_))) {
                            layer.push(TDerivation::lolli_l(l.clone(), r.clone(), pos));
                        }
                    }
                }
            }
        }
        by_size[size] = layer;
    }
    by_size.into_iter().flatten().collect()
}

/// All checked SkMBiCT derivations with at most `max_nodes` rule nodes.
pub fn bt_derivations(seeds: &[Formula], max_nodes: usize) -> Vec<BiTDerivation> {
    let mut by_size: Vec<Vec<BiTDerivation>> = vec![Vec::new(); max_nodes + 1];
    if max_nodes == 0 {
        return Vec::new();
    }
    by_size[1] = seeds.iter().map(|f| BiTDerivation::ax(f.clone())).collect();
    by_size[1].push(BiTDerivation::ir());
    for size in 2..=max_nodes {
        let mut layer = Vec::new();
        for d in &by_size[size - 1] {
            let ante = &d.conclusion.antecedent;
            for pos in ante.all_paths() {
                let sub = ante.subtree(&pos).unwrap();
                layer.push(BiTDerivation::unit_ll(d.clone(), pos.clone()));
                layer.push(BiTDerivation::unit_lr(d.clone(), pos.clone()));
                match sub {
                    Tree::EmptyLeaf => layer.push(BiTDerivation::il(d.clone(), pos.clone())),
                    Tree::Comma(l, r) => {
                        layer.push(BiTDerivation::comm_cs(d.clone(), pos.clone()));
                        if let (Tree::Leaf(_), Tree::Leaf(_)) = (l.as_ref(), r.as_ref()) {
                            layer.push(BiTDerivation::tens_ll(d.clone(), pos.clone()));
                        }
                        if r.as_ref() == &Tree::EmptyLeaf {
                            layer.push(BiTDerivation::unit_rl(d.clone(), pos.clone()));
                        }
                        if matches!(r.as_ref(), Tree::Comma(_, _)) {
                            layer.push(BiTDerivation::assoc_l(d.clone(), pos.clone()));
                        }
                    }
                    Tree::Semi(l, r) => {
                        layer.push(BiTDerivation::comm_sc(d.clone(), pos.clone()));
                        if let (Tree::Leaf(_), Tree::Leaf(_)) = (l.as_ref(), r.as_ref()) {
                            layer.push(BiTDerivation::tens_rl(d.clone(), pos.clone()));
                        }
                        if l.as_ref() == &Tree::EmptyLeaf {
                            layer.push(BiTDerivation::unit_rr(d.clone(), pos.clone()));
                        }
                        if matches!(l.as_ref(), Tree::Semi(_, _)) {
                            layer.push(BiTDerivation::assoc_r(d.clone(), pos.clone()));
                        }
                    }
                    _ => {}
                }
            }
            match ante {
                Tree::Comma(_, r) if matches!(r.as_ref(), Tree::Leaf(_)) => {
                    layer.push(BiTDerivation::lolli_lr(d.clone()));
                }
                Tree::Semi(_, r) if matches!(r.as_ref(), Tree::Leaf(_)) => {
                    layer.push(BiTDerivation::lolli_rr(d.clone()));
                }
                _ => {}
            }
        }
        for left_size in 1..size - 1 {
            let right_size = size - 1 - left_size;
            for l in &by_size[left_size] {
                for r in &by_size[right_size] {
                    layer.push(BiTDerivation::tens_lr(l.clone(), r.clone()));
                    layer.push(BiTDerivation::tens_rr(l.clone(), r.clone()));
                    for pos in r.conclusion.antecedent.leaf_paths() {
                        if matches!(r.conclusion.antecedent.subtree(&pos), Ok(Tree::Leaf(_))) {
                            layer.push(BiTDerivation::lolli_ll(l.clone(), r.clone(), pos.clone()));
                            layer.push(BiTDerivation::lolli_rl(l.clone(), r.clone(), pos));
                        }
                    }
                }
            }
        }
        by_size[size] = layer;
    }
    by_size.into_iter().flatten().collect()
}

/// All checked SkMBiCA derivations with at most `max_nodes` rule nodes.
/// Axiom schemas are instantiated over `seeds`.
pub fn a_derivations(seeds: &[Formula], max_nodes: usize) -> Vec<ADerivation> {
    let mut by_size: Vec<Vec<ADerivation>> = vec![Vec::new(); max_nodes + 1];
    if max_nodes == 0 {
        return Vec::new();
    }
    let mut base = Vec::new();
    for a in seeds {
        base.push(ADerivation::id(a.clone()));
        base.push(ADerivation::lambda(a.clone()));
        base.push(ADerivation::rho(a.clone()));
        for b in seeds {
            base.push(ADerivation::gamma(a.clone(), b.clone()));
            base.push(ADerivation::gamma_inv(a.clone(), b.clone()));
            for c in seeds {
                base.push(ADerivation::alpha(a.clone(), b.clone(), c.clone()));
            }
        }
    }
    by_size[1] = base;
    for size in 2..=max_nodes {
        let mut layer = Vec::new();
        for d in &by_size[size - 1] {
            if matches!(d.conclusion.source, Formula::TensL(_, _)) {
                layer.push(ADerivation::pi(d.clone()));
            }
            if matches!(d.conclusion.target, Formula::LolliL(_, _)) {
                layer.push(ADerivation::pi_inv(d.clone()));
            }
            if matches!(d.conclusion.source, Formula::TensR(_, _)) {
                layer.push(ADerivation::pi_r(d.clone()));
            }
            if matches!(d.conclusion.target, Formula::LolliR(_, _)) {
                layer.push(ADerivation::pi_r_inv(d.clone()));
            }
        }
        for left_size in 1..size - 1 {
            let right_size = size - 1 - left_size;
            for l in &by_size[left_size] {
                for r in &by_size[right_size] {
                    if l.conclusion.target == r.conclusion.source {
                        layer.push(ADerivation::comp(l.clone(), r.clone()));
                    }
                    layer.push(ADerivation::tens_l_cong(l.clone(), r.clone()));
                    layer.push(ADerivation::lolli_l_cong(l.clone(), r.clone()));
                    layer.push(ADerivation::lolli_r_cong(l.clone(), r.clone()));
                }
            }
        }
        by_size[size] = layer;
    }
    by_size.into_iter().flatten().collect()
}

/// Positions of leaves matching a formula, for assembling cut pairs.
pub fn matching_leaf_positions(t: &Tree, want: &Formula) -> Vec<TreePath> {
    t.leaf_paths()
        .into_iter()
        .filter(|p| matches!(t.subtree(p), Ok(Tree::Leaf(f)) if f == want))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lskg::check_g;
    use crate::lskt::check_t;
    use crate::skmbica::check_a;
    use crate::skmbict::check_bt;

    #[test]
    fn formula_counts() {
        // Leaves: I, X, Y. One connective, non-bi: 2 * 3 * 3 = 18.
        assert_eq!(formulas(&["X", "Y"], 0, false).len(), 3);
        assert_eq!(formulas(&["X", "Y"], 1, false).len(), 3 + 18);
        assert_eq!(formulas(&["X", "Y"], 1, true).len(), 3 + 36);
    }

    #[test]
    fn enumerated_g_derivations_check() {
        let seeds = [Formula::atom("X"), Formula::Unit];
        let all = g_derivations(&seeds, 4);
        assert!(!all.is_empty());
        for d in &all {
            assert!(check_g(d).is_ok(), "bad derivation {d:?}");
        }
    }

    #[test]
    fn enumerated_t_derivations_check() {
        let seeds = [Formula::atom("X"), Formula::Unit];
        let all = t_derivations(&seeds, 4);
        for d in &all {
            assert!(check_t(d).is_ok(), "bad derivation {d:?}");
        }
    }

    #[test]
    fn enumerated_bt_derivations_check() {
        let seeds = [Formula::atom("X")];
        let all = bt_derivations(&seeds, 4);
        for d in &all {
            assert!(check_bt(d).is_ok(), "bad derivation {d:?}");
        }
    }

    #[test]
    fn enumerated_a_derivations_check() {
        let seeds = [Formula::atom("X")];
        let all = a_derivations(&seeds, 3);
        for d in &all {
            assert!(check_a(d).is_ok(), "bad derivation {d:?}");
        }
    }
}
