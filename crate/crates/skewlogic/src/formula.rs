//! Formulas of the object language and stoup sequents.
//!
//! The full language has a unit, two tensors and two implications. The
//! left-skew calculi (`lskg`, `lskt`) only use the left connectives; this
//! restriction is the "LSk fragment".

use std::fmt;

/// Formulas over atoms, the unit `I`, tensors `*L`/`*R` and implication
/// arrows `-oL`/`-oR`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Unit,
    /// `A *L B`, the left-skew tensor.
    TensL(Box<Formula>, Box<Formula>),
    /// `A -oL B`, right residuation of `*L`.
    LolliL(Box<Formula>, Box<Formula>),
    /// `A *R B`, the right-skew tensor.
    TensR(Box<Formula>, Box<Formula>),
    /// `A -oR B`, right residuation of `*R`.
    LolliR(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn tens_l(a: Formula, b: Formula) -> Formula {
        Formula::TensL(Box::new(a), Box::new(b))
    }

    pub fn lolli_l(a: Formula, b: Formula) -> Formula {
        Formula::LolliL(Box::new(a), Box::new(b))
    }

    pub fn tens_r(a: Formula, b: Formula) -> Formula {
        Formula::TensR(Box::new(a), Box::new(b))
    }

    pub fn lolli_r(a: Formula, b: Formula) -> Formula {
        Formula::LolliR(Box::new(a), Box::new(b))
    }

    /// Number of atom, unit and connective occurrences; always >= 1.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Unit => 1,
            Formula::TensL(a, b)
            | Formula::LolliL(a, b)
            | Formula::TensR(a, b)
            | Formula::LolliR(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Number of binary connective occurrences.
    pub fn connectives(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Unit => 0,
            Formula::TensL(a, b)
            | Formula::LolliL(a, b)
            | Formula::TensR(a, b)
            | Formula::LolliR(a, b) => 1 + a.connectives() + b.connectives(),
        }
    }

    /// True iff no `*R`/`-oR` occurs, as required by LSkG/LSkT sequents.
    pub fn in_lsk_fragment(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Unit => true,
            Formula::TensL(a, b) | Formula::LolliL(a, b) => {
                a.in_lsk_fragment() && b.in_lsk_fragment()
            }
            Formula::TensR(_, _) | Formula::LolliR(_, _) => false,
        }
    }

    /// Adds this formula's atom occurrences to a polarity balance. The
    /// left argument of an implication flips the sign. Provable sequents
    /// have antecedent and succedent balances that cancel exactly, which
    /// backward search uses to discard dead branches early.
    pub fn add_balance(&self, sign: i32, balance: &mut std::collections::HashMap<String, i32>) {
        match self {
            Formula::Atom(x) => {
                *balance.entry(x.clone()).or_insert(0) += sign;
            }
            Formula::Unit => {}
            Formula::TensL(a, b) | Formula::TensR(a, b) => {
                a.add_balance(sign, balance);
                b.add_balance(sign, balance);
            }
            Formula::LolliL(a, b) | Formula::LolliR(a, b) => {
                a.add_balance(-sign, balance);
                b.add_balance(sign, balance);
            }
        }
    }

    /// Collects atom names in order of first occurrence.
    pub fn atoms(&self, out: &mut Vec<String>) {
        match self {
            Formula::Atom(x) => {
                if !out.iter().any(|a| a == x) {
                    out.push(x.clone());
                }
            }
            Formula::Unit => {}
            Formula::TensL(a, b)
            | Formula::LolliL(a, b)
            | Formula::TensR(a, b)
            | Formula::LolliR(a, b) => {
                a.atoms(out);
                b.atoms(out);
            }
        }
    }
}

// Precedence levels for printing: implications bind loosest and associate
// right, tensors bind tighter and associate left, atoms/unit are primary.
fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Atom(_) | Formula::Unit => 2,
        Formula::TensL(_, _) | Formula::TensR(_, _) => 1,
        Formula::LolliL(_, _) | Formula::LolliR(_, _) => 0,
    }
}

fn fmt_formula(f: &Formula, out: &mut fmt::Formatter<'_>, min: u8, full: bool) -> fmt::Result {
    let parens = full && prec(f) < 2 || prec(f) < min;
    if parens {
        write!(out, "(")?;
    }
    match f {
        Formula::Atom(x) => write!(out, "{x}")?,
        Formula::Unit => write!(out, "I")?,
        Formula::TensL(a, b) | Formula::TensR(a, b) => {
            let op = if matches!(f, Formula::TensL(_, _)) { "*L" } else { "*R" };
            fmt_formula(a, out, 1, full)?;
            write!(out, " {op} ")?;
            fmt_formula(b, out, 2, full)?;
        }
        Formula::LolliL(a, b) | Formula::LolliR(a, b) => {
            let op = if matches!(f, Formula::LolliL(_, _)) { "-oL" } else { "-oR" };
            fmt_formula(a, out, 1, full)?;
            write!(out, " {op} ")?;
            fmt_formula(b, out, 0, full)?;
        }
    }
    if parens {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    /// Minimal parenthesization; `{:#}` parenthesizes every connective.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_formula(self, out, 0, out.alternate())
    }
}

/// The optional formula in the leftmost antecedent position of an LSkG
/// sequent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Stoup {
    Empty,
    Just(Formula),
}

impl Stoup {
    /// `s(S)`: the empty stoup reads as the unit.
    pub fn formula(&self) -> Formula {
        match self {
            Stoup::Empty => Formula::Unit,
            Stoup::Just(f) => f.clone(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Stoup::Empty)
    }
}

impl fmt::Display for Stoup {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stoup::Empty => write!(out, "-"),
            Stoup::Just(f) => write!(out, "{f}"),
        }
    }
}

/// A sequent `S | Γ |- A` of the stoup calculus LSkG.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StoupSequent {
    pub stoup: Stoup,
    pub context: Vec<Formula>,
    pub succedent: Formula,
}

impl StoupSequent {
    pub fn new(stoup: Stoup, context: Vec<Formula>, succedent: Formula) -> StoupSequent {
        StoupSequent { stoup, context, succedent }
    }

    pub fn in_lsk_fragment(&self) -> bool {
        let stoup_ok = match &self.stoup {
            Stoup::Empty => true,
            Stoup::Just(f) => f.in_lsk_fragment(),
        };
        stoup_ok
            && self.context.iter().all(Formula::in_lsk_fragment)
            && self.succedent.in_lsk_fragment()
    }

    /// Necessary condition for derivability: per-atom polarity counts of
    /// antecedent and succedent cancel.
    pub fn is_balanced(&self) -> bool {
        let mut balance = std::collections::HashMap::new();
        if let Stoup::Just(f) = &self.stoup {
            f.add_balance(1, &mut balance);
        }
        for f in &self.context {
            f.add_balance(1, &mut balance);
        }
        self.succedent.add_balance(-1, &mut balance);
        balance.values().all(|v| *v == 0)
    }
}

impl fmt::Display for StoupSequent {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{} |", self.stoup)?;
        for (i, f) in self.context.iter().enumerate() {
            if i > 0 {
                write!(out, " ,")?;
            }
            write!(out, " {f}")?;
        }
        write!(out, " |- {}", self.succedent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Formula {
        Formula::atom("X")
    }

    #[test]
    fn stoup_formula_maps_empty_to_unit() {
        assert_eq!(Stoup::Empty.formula(), Formula::Unit);
        assert_eq!(Stoup::Just(x()).formula(), x());
        assert!(Stoup::Empty.formula().size() >= 1);
    }

    #[test]
    fn fragment_predicate() {
        assert!(Formula::tens_l(Formula::Unit, x()).in_lsk_fragment());
        assert!(!Formula::tens_r(x(), x()).in_lsk_fragment());
        assert!(!Formula::lolli_l(Formula::lolli_r(x(), x()), x()).in_lsk_fragment());
    }

    #[test]
    fn display_minimal_parens() {
        let f = Formula::lolli_l(x(), Formula::lolli_l(Formula::atom("Y"), Formula::atom("Z")));
        assert_eq!(f.to_string(), "X -oL Y -oL Z");
        let g = Formula::tens_l(Formula::tens_l(x(), Formula::atom("Y")), Formula::atom("Z"));
        assert_eq!(g.to_string(), "X *L Y *L Z");
        let h = Formula::tens_l(x(), Formula::tens_l(Formula::atom("Y"), Formula::atom("Z")));
        assert_eq!(h.to_string(), "X *L (Y *L Z)");
        let i = Formula::tens_l(Formula::lolli_l(x(), x()), x());
        assert_eq!(i.to_string(), "(X -oL X) *L X");
        assert_eq!(format!("{h:#}"), "(X *L (Y *L Z))");
    }

    #[test]
    fn sequent_display() {
        let s = StoupSequent::new(
            Stoup::Empty,
            vec![x(), Formula::atom("Y")],
            Formula::tens_l(x(), Formula::atom("Y")),
        );
        assert_eq!(s.to_string(), "- | X , Y |- X *L Y");
        let empty = StoupSequent::new(Stoup::Empty, vec![], Formula::Unit);
        assert_eq!(empty.to_string(), "- | |- I");
    }
}
