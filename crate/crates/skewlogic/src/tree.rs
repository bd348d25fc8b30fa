//! Tree antecedents, one-hole contexts, paths and flattening maps.

use std::fmt;

use thiserror::Error;

use crate::formula::Formula;

/// Binary antecedent structure. Comma nodes pair with `*L`, semicolon nodes
/// with `*R`; the latter are forbidden in LSkT sequents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf(Formula),
    EmptyLeaf,
    Comma(Box<Tree>, Box<Tree>),
    Semi(Box<Tree>, Box<Tree>),
}

/// One step into a binary node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Left,
    Right,
}

/// A path addressing a subtree as a list of left/right steps from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TreePath(pub Vec<Step>);

/// A tree with exactly one hole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeContext {
    Hole,
    CommaL(Box<TreeContext>, Box<Tree>),
    CommaR(Box<Tree>, Box<TreeContext>),
    SemiL(Box<TreeContext>, Box<Tree>),
    SemiR(Box<Tree>, Box<TreeContext>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("path {0} leaves the tree")]
    InvalidPosition(TreePath),
    #[error("tree contains a semicolon node outside the LSk fragment")]
    SemiInLskFragment,
}

impl Tree {
    pub fn leaf(f: Formula) -> Tree {
        Tree::Leaf(f)
    }

    pub fn comma(l: Tree, r: Tree) -> Tree {
        Tree::Comma(Box::new(l), Box::new(r))
    }

    pub fn semi(l: Tree, r: Tree) -> Tree {
        Tree::Semi(Box::new(l), Box::new(r))
    }

    /// Number of tree nodes (leaves included).
    pub fn node_count(&self) -> usize {
        match self {
            Tree::Leaf(_) | Tree::EmptyLeaf => 1,
            Tree::Comma(l, r) | Tree::Semi(l, r) => 1 + l.node_count() + r.node_count(),
        }
    }

    /// True iff the tree has no semicolon node and every leaf formula is in
    /// the LSk fragment.
    pub fn in_lsk_fragment(&self) -> bool {
        match self {
            Tree::Leaf(f) => f.in_lsk_fragment(),
            Tree::EmptyLeaf => true,
            Tree::Comma(l, r) => l.in_lsk_fragment() && r.in_lsk_fragment(),
            Tree::Semi(_, _) => false,
        }
    }

    pub fn subtree(&self, path: &TreePath) -> Result<&Tree, TreeError> {
        let mut cur = self;
        for step in &path.0 {
            cur = match (cur, step) {
                (Tree::Comma(l, _), Step::Left) | (Tree::Semi(l, _), Step::Left) => l,
                (Tree::Comma(_, r), Step::Right) | (Tree::Semi(_, r), Step::Right) => r,
                _ => return Err(TreeError::InvalidPosition(path.clone())),
            };
        }
        Ok(cur)
    }

    /// Returns a copy with the subtree at `path` replaced by `sub`.
    pub fn replace(&self, path: &TreePath, sub: Tree) -> Result<Tree, TreeError> {
        fn go(t: &Tree, steps: &[Step], sub: Tree, whole: &TreePath) -> Result<Tree, TreeError> {
            match steps.split_first() {
                None => Ok(sub),
                Some((step, rest)) => match (t, step) {
                    (Tree::Comma(l, r), Step::Left) => {
                        Ok(Tree::comma(go(l, rest, sub, whole)?, r.as_ref().clone()))
                    }
                    (Tree::Comma(l, r), Step::Right) => {
                        Ok(Tree::comma(l.as_ref().clone(), go(r, rest, sub, whole)?))
                    }
                    (Tree::Semi(l, r), Step::Left) => {
                        Ok(Tree::semi(go(l, rest, sub, whole)?, r.as_ref().clone()))
                    }
                    (Tree::Semi(l, r), Step::Right) => {
                        Ok(Tree::semi(l.as_ref().clone(), go(r, rest, sub, whole)?))
                    }
                    _ => Err(TreeError::InvalidPosition(whole.clone())),
                },
            }
        }
        go(self, &path.0, sub, path)
    }

    /// Paths to all leaves (formula leaves and empty leaves), left to right.
    pub fn leaf_paths(&self) -> Vec<TreePath> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        fn go(t: &Tree, prefix: &mut Vec<Step>, out: &mut Vec<TreePath>) {
            match t {
                Tree::Leaf(_) | Tree::EmptyLeaf => out.push(TreePath(prefix.clone())),
                Tree::Comma(l, r) | Tree::Semi(l, r) => {
                    prefix.push(Step::Left);
                    go(l, prefix, out);
                    prefix.pop();
                    prefix.push(Step::Right);
                    go(r, prefix, out);
                    prefix.pop();
                }
            }
        }
        go(self, &mut prefix, &mut out);
        out
    }

    /// Paths to all subtrees (internal nodes and leaves), preorder.
    pub fn all_paths(&self) -> Vec<TreePath> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        fn go(t: &Tree, prefix: &mut Vec<Step>, out: &mut Vec<TreePath>) {
            out.push(TreePath(prefix.clone()));
            if let Tree::Comma(l, r) | Tree::Semi(l, r) = t {
                prefix.push(Step::Left);
                go(l, prefix, out);
                prefix.pop();
                prefix.push(Step::Right);
                go(r, prefix, out);
                prefix.pop();
            }
        }
        go(self, &mut prefix, &mut out);
        out
    }

    /// `T*`: commas become `*L`, the empty tree becomes `I`. Errors on
    /// semicolon nodes, which have no image in the LSk fragment.
    pub fn flatten_star(&self) -> Result<Formula, TreeError> {
        match self {
            Tree::Leaf(f) => Ok(f.clone()),
            Tree::EmptyLeaf => Ok(Formula::Unit),
            Tree::Comma(l, r) => Ok(Formula::tens_l(l.flatten_star()?, r.flatten_star()?)),
            Tree::Semi(_, _) => Err(TreeError::SemiInLskFragment),
        }
    }

    /// `T#`: commas become `*L`, semicolons become `*R`, the empty tree
    /// becomes `I`.
    pub fn flatten_sharp(&self) -> Formula {
        match self {
            Tree::Leaf(f) => f.clone(),
            Tree::EmptyLeaf => Formula::Unit,
            Tree::Comma(l, r) => Formula::tens_l(l.flatten_sharp(), r.flatten_sharp()),
            Tree::Semi(l, r) => Formula::tens_r(l.flatten_sharp(), r.flatten_sharp()),
        }
    }

    pub fn atoms(&self, out: &mut Vec<String>) {
        match self {
            Tree::Leaf(f) => f.atoms(out),
            Tree::EmptyLeaf => {}
            Tree::Comma(l, r) | Tree::Semi(l, r) => {
                l.atoms(out);
                r.atoms(out);
            }
        }
    }
}

/// `[[T | Γ]]`: extends `t` by the formulas of `gamma` as a comma tree
/// associating to the left.
pub fn encode(t: Tree, gamma: &[Formula]) -> Tree {
    gamma
        .iter()
        .fold(t, |acc, f| Tree::comma(acc, Tree::Leaf(f.clone())))
}

/// Substitutes `u` into the hole of `ctx`.
pub fn subst(ctx: &TreeContext, u: Tree) -> Tree {
    match ctx {
        TreeContext::Hole => u,
        TreeContext::CommaL(c, t) => Tree::comma(subst(c, u), t.as_ref().clone()),
        TreeContext::CommaR(t, c) => Tree::comma(t.as_ref().clone(), subst(c, u)),
        TreeContext::SemiL(c, t) => Tree::semi(subst(c, u), t.as_ref().clone()),
        TreeContext::SemiR(t, c) => Tree::semi(t.as_ref().clone(), subst(c, u)),
    }
}

/// Splits `t` at `path` into (context, subtree), so that
/// `subst(context, subtree) == t`.
pub fn find_context(t: &Tree, path: &TreePath) -> Result<(TreeContext, Tree), TreeError> {
    fn go(t: &Tree, steps: &[Step], whole: &TreePath) -> Result<(TreeContext, Tree), TreeError> {
        match steps.split_first() {
            None => Ok((TreeContext::Hole, t.clone())),
            Some((step, rest)) => match (t, step) {
                (Tree::Comma(l, r), Step::Left) => {
                    let (c, u) = go(l, rest, whole)?;
                    Ok((TreeContext::CommaL(Box::new(c), r.clone()), u))
                }
                (Tree::Comma(l, r), Step::Right) => {
                    let (c, u) = go(r, rest, whole)?;
                    Ok((TreeContext::CommaR(l.clone(), Box::new(c)), u))
                }
                (Tree::Semi(l, r), Step::Left) => {
                    let (c, u) = go(l, rest, whole)?;
                    Ok((TreeContext::SemiL(Box::new(c), r.clone()), u))
                }
                (Tree::Semi(l, r), Step::Right) => {
                    let (c, u) = go(r, rest, whole)?;
                    Ok((TreeContext::SemiR(l.clone(), Box::new(c)), u))
                }
                _ => Err(TreeError::InvalidPosition(whole.clone())),
            },
        }
    }
    go(t, &path.0, path)
}

impl TreePath {
    pub fn root() -> TreePath {
        TreePath(Vec::new())
    }

    pub fn child(&self, step: Step) -> TreePath {
        let mut steps = self.0.clone();
        steps.push(step);
        TreePath(steps)
    }

    pub fn join(&self, other: &TreePath) -> TreePath {
        let mut steps = self.0.clone();
        steps.extend_from_slice(&other.0);
        TreePath(steps)
    }

    pub fn is_prefix_of(&self, other: &TreePath) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    /// The remainder of `other` after `self`, when `self` is a prefix.
    pub fn strip_prefix(&self, other: &TreePath) -> Option<TreePath> {
        if self.is_prefix_of(other) {
            Some(TreePath(other.0[self.0.len()..].to_vec()))
        } else {
            None
        }
    }
}

impl fmt::Display for TreePath {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(out, ".");
        }
        for step in &self.0 {
            write!(out, "{}", if *step == Step::Left { 'l' } else { 'r' })?;
        }
        Ok(())
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(f) => write!(out, "{f}"),
            Tree::EmptyLeaf => write!(out, "-"),
            Tree::Comma(l, r) => write!(out, "({l} , {r})"),
            Tree::Semi(l, r) => write!(out, "({l} ; {r})"),
        }
    }
}

/// A sequent `T |- A` of the tree calculi.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeSequent {
    pub antecedent: Tree,
    pub succedent: Formula,
}

impl TreeSequent {
    pub fn new(antecedent: Tree, succedent: Formula) -> TreeSequent {
        TreeSequent { antecedent, succedent }
    }

    pub fn in_lsk_fragment(&self) -> bool {
        self.antecedent.in_lsk_fragment() && self.succedent.in_lsk_fragment()
    }

    /// Necessary condition for derivability: per-atom polarity counts of
    /// antecedent and succedent cancel (there is no weakening or
    /// contraction to absorb a mismatch).
    pub fn is_balanced(&self) -> bool {
        let mut balance = std::collections::HashMap::new();
        fn tree(t: &Tree, balance: &mut std::collections::HashMap<String, i32>) {
            match t {
                Tree::Leaf(f) => f.add_balance(1, balance),
                Tree::EmptyLeaf => {}
                Tree::Comma(l, r) | Tree::Semi(l, r) => {
                    tree(l, balance);
                    tree(r, balance);
                }
            }
        }
        tree(&self.antecedent, &mut balance);
        self.succedent.add_balance(-1, &mut balance);
        balance.values().all(|v| *v == 0)
    }
}

impl fmt::Display for TreeSequent {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{} |- {}", self.antecedent, self.succedent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::atom("A")
    }
    fn b() -> Formula {
        Formula::atom("B")
    }
    fn c() -> Formula {
        Formula::atom("C")
    }

    #[test]
    fn subst_clauses() {
        assert_eq!(subst(&TreeContext::Hole, Tree::leaf(a())), Tree::leaf(a()));
        let ctx = TreeContext::CommaL(Box::new(TreeContext::Hole), Box::new(Tree::leaf(b())));
        assert_eq!(
            subst(&ctx, Tree::EmptyLeaf),
            Tree::comma(Tree::EmptyLeaf, Tree::leaf(b()))
        );
        // Hand-unfolded nested case.
        let ctx = TreeContext::CommaR(
            Box::new(Tree::leaf(a())),
            Box::new(TreeContext::CommaL(
                Box::new(TreeContext::Hole),
                Box::new(Tree::leaf(c())),
            )),
        );
        let u = Tree::comma(Tree::leaf(Formula::atom("B1")), Tree::leaf(Formula::atom("B2")));
        assert_eq!(
            subst(&ctx, u.clone()),
            Tree::comma(Tree::leaf(a()), Tree::comma(u, Tree::leaf(c())))
        );
    }

    #[test]
    fn find_context_examples() {
        let (ctx, sub) = find_context(&Tree::leaf(a()), &TreePath::root()).unwrap();
        assert_eq!(ctx, TreeContext::Hole);
        assert_eq!(sub, Tree::leaf(a()));

        let t = Tree::comma(Tree::leaf(a()), Tree::leaf(b()));
        let (ctx, sub) = find_context(&t, &TreePath(vec![Step::Left])).unwrap();
        assert_eq!(
            ctx,
            TreeContext::CommaL(Box::new(TreeContext::Hole), Box::new(Tree::leaf(b())))
        );
        assert_eq!(sub, Tree::leaf(a()));

        assert!(matches!(
            find_context(&Tree::leaf(a()), &TreePath(vec![Step::Left])),
            Err(TreeError::InvalidPosition(_))
        ));
    }

    #[test]
    fn find_context_reassembles() {
        // All trees with up to 4 leaves over {A, -}, every valid path.
        fn trees(leaves: usize) -> Vec<Tree> {
            if leaves == 1 {
                return vec![Tree::leaf(a()), Tree::EmptyLeaf];
            }
            let mut out = Vec::new();
            for k in 1..leaves {
                for l in trees(k) {
                    for r in trees(leaves - k) {
                        out.push(Tree::comma(l.clone(), r.clone()));
                        out.push(Tree::semi(l.clone(), r));
                    }
                }
            }
            out
        }
        for n in 1..=4 {
            for t in trees(n) {
                for p in t.all_paths() {
                    let (ctx, sub) = find_context(&t, &p).unwrap();
                    assert_eq!(subst(&ctx, sub), t);
                }
            }
        }
    }

    #[test]
    fn flatten_star_clauses() {
        assert_eq!(Tree::EmptyLeaf.flatten_star().unwrap(), Formula::Unit);
        assert_eq!(
            Tree::comma(Tree::leaf(a()), Tree::EmptyLeaf).flatten_star().unwrap(),
            Formula::tens_l(a(), Formula::Unit)
        );
        assert_eq!(
            Tree::comma(Tree::comma(Tree::leaf(a()), Tree::leaf(b())), Tree::leaf(c()))
                .flatten_star()
                .unwrap(),
            Formula::tens_l(Formula::tens_l(a(), b()), c())
        );
        assert_eq!(
            Tree::semi(Tree::leaf(a()), Tree::leaf(b())).flatten_star(),
            Err(TreeError::SemiInLskFragment)
        );
    }

    #[test]
    fn flatten_sharp_clauses() {
        assert_eq!(
            Tree::semi(Tree::leaf(a()), Tree::leaf(b())).flatten_sharp(),
            Formula::tens_r(a(), b())
        );
        assert_eq!(Tree::EmptyLeaf.flatten_sharp(), Formula::Unit);
        assert_eq!(
            Tree::comma(Tree::leaf(a()), Tree::semi(Tree::leaf(b()), Tree::EmptyLeaf))
                .flatten_sharp(),
            Formula::tens_l(a(), Formula::tens_r(b(), Formula::Unit))
        );
    }

    #[test]
    fn flatten_sharp_agrees_with_star_on_fragment() {
        let t = Tree::comma(
            Tree::comma(Tree::leaf(a()), Tree::EmptyLeaf),
            Tree::leaf(Formula::tens_l(b(), c())),
        );
        assert_eq!(t.flatten_sharp(), t.flatten_star().unwrap());
    }

    #[test]
    fn encode_clauses() {
        assert_eq!(encode(Tree::leaf(a()), &[]), Tree::leaf(a()));
        assert_eq!(
            encode(Tree::leaf(a()), &[b()]),
            Tree::comma(Tree::leaf(a()), Tree::leaf(b()))
        );
        assert_eq!(
            encode(Tree::EmptyLeaf, &[a(), b(), c()]),
            Tree::comma(
                Tree::comma(
                    Tree::comma(Tree::EmptyLeaf, Tree::leaf(a())),
                    Tree::leaf(b())
                ),
                Tree::leaf(c())
            )
        );
    }

    #[test]
    fn encode_flattens_left_nested() {
        let t = Tree::comma(Tree::leaf(a()), Tree::EmptyLeaf);
        let gamma = [b(), c()];
        let flat = encode(t.clone(), &gamma).flatten_star().unwrap();
        let expect = Formula::tens_l(
            Formula::tens_l(t.flatten_star().unwrap(), b()),
            c(),
        );
        assert_eq!(flat, expect);
    }
}
