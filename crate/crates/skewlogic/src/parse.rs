//! Concrete syntax for formulas, trees and sequents.
//!
//! Tokens: atoms `[A-Za-z][A-Za-z0-9_]*` (with `I` reserved for the unit),
//! `*L` / `*R`, `-oL` / `-oR`, empty tree or stoup `-`, `,`, `;`, turnstile
//! `|-`, stoup separator `|` and parentheses. Implications bind loosest and
//! associate right; tensors associate left.

use std::fmt;

use thiserror::Error;

use crate::formula::{Formula, Stoup, StoupSequent};
use crate::tree::{Tree, TreeSequent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, message: message.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Unit,
    TensL,
    TensR,
    LolliL,
    LolliR,
    Dash,
    Comma,
    Semi,
    Turnstile,
    Bar,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(x) => return write!(out, "`{x}`"),
            Tok::Unit => "`I`",
            Tok::TensL => "`*L`",
            Tok::TensR => "`*R`",
            Tok::LolliL => "`-oL`",
            Tok::LolliR => "`-oR`",
            Tok::Dash => "`-`",
            Tok::Comma => "`,`",
            Tok::Semi => "`;`",
            Tok::Turnstile => "`|-`",
            Tok::Bar => "`|`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
        };
        write!(out, "{s}")
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b',' => {
                toks.push((Tok::Comma, i));
                i += 1;
            }
            b';' => {
                toks.push((Tok::Semi, i));
                i += 1;
            }
            b'|' => {
                if bytes.get(i + 1) == Some(&b'-') {
                    toks.push((Tok::Turnstile, i));
                    i += 2;
                } else {
                    toks.push((Tok::Bar, i));
                    i += 1;
                }
            }
            b'*' => match bytes.get(i + 1) {
                Some(b'L') => {
                    toks.push((Tok::TensL, i));
                    i += 2;
                }
                Some(b'R') => {
                    toks.push((Tok::TensR, i));
                    i += 2;
                }
                _ => return err(i, "expected `*L` or `*R`"),
            },
            b'-' => match (bytes.get(i + 1), bytes.get(i + 2)) {
                (Some(b'o'), Some(b'L')) => {
                    toks.push((Tok::LolliL, i));
                    i += 3;
                }
                (Some(b'o'), Some(b'R')) => {
                    toks.push((Tok::LolliR, i));
                    i += 3;
                }
                (Some(b'o'), _) => return err(i, "expected `-oL` or `-oR`"),
                _ => {
                    toks.push((Tok::Dash, i));
                    i += 1;
                }
            },
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let name = &input[start..i];
                if name == "I" {
                    toks.push((Tok::Unit, start));
                } else {
                    toks.push((Tok::Ident(name.to_string()), start));
                }
            }
            _ => return err(i, format!("unexpected character `{}`", input[i..].chars().next().unwrap())),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn new(input: &str) -> Result<Parser, ParseError> {
        Ok(Parser { toks: lex(input)?, at: 0, end: input.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            Some(t) => err(self.toks[self.at - 1].1, format!("expected {want}, found {t}")),
            None => err(self.end, format!("expected {want}, found end of input")),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => err(self.pos(), format!("unexpected trailing {t}")),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.tensor()?;
        match self.peek() {
            Some(Tok::LolliL) => {
                self.next();
                Ok(Formula::lolli_l(lhs, self.formula()?))
            }
            Some(Tok::LolliR) => {
                self.next();
                Ok(Formula::lolli_r(lhs, self.formula()?))
            }
            _ => Ok(lhs),
        }
    }

    fn tensor(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.primary()?;
        loop {
            match self.peek() {
                Some(Tok::TensL) => {
                    self.next();
                    acc = Formula::tens_l(acc, self.primary()?);
                }
                Some(Tok::TensR) => {
                    self.next();
                    acc = Formula::tens_r(acc, self.primary()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::Ident(x)) => Ok(Formula::Atom(x)),
            Some(Tok::Unit) => Ok(Formula::Unit),
            Some(Tok::LParen) => {
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Some(t) => err(pos, format!("expected a formula, found {t}")),
            None => err(pos, "expected a formula, found end of input"),
        }
    }

    // A tree is `-`, a formula leaf, or a parenthesized pair. One unpaired
    // binary node is allowed at the top level of a group; deeper nesting
    // must be parenthesized, so `X , Y , Z` is rejected as ambiguous.
    fn tree(&mut self) -> Result<Tree, ParseError> {
        let first = self.tree_atom()?;
        match self.peek() {
            Some(Tok::Comma) => {
                self.next();
                let second = self.tree_atom()?;
                self.reject_chain()?;
                Ok(Tree::comma(first, second))
            }
            Some(Tok::Semi) => {
                self.next();
                let second = self.tree_atom()?;
                self.reject_chain()?;
                Ok(Tree::semi(first, second))
            }
            _ => Ok(first),
        }
    }

    fn reject_chain(&self) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Comma) | Some(Tok::Semi) => {
                err(self.pos(), "ambiguous tree: parenthesize nested pairs")
            }
            _ => Ok(()),
        }
    }

    fn tree_atom(&mut self) -> Result<Tree, ParseError> {
        match self.peek() {
            Some(Tok::Dash) => {
                self.next();
                Ok(Tree::EmptyLeaf)
            }
            Some(Tok::LParen) => {
                // Either a tree pair or a parenthesized formula; parse as a
                // tree and collapse the redundant group.
                self.next();
                let inner = self.tree()?;
                self.expect(Tok::RParen)?;
                // A leaf followed by a formula operator means the parens
                // belonged to the formula, e.g. `(X -oL Y) *L Z`.
                if let Tree::Leaf(f) = inner {
                    let f = self.formula_tail(f)?;
                    Ok(Tree::Leaf(f))
                } else {
                    Ok(inner)
                }
            }
            _ => Ok(Tree::Leaf(self.formula()?)),
        }
    }

    // Continues a formula whose first operand has already been parsed.
    fn formula_tail(&mut self, lhs: Formula) -> Result<Formula, ParseError> {
        let mut acc = lhs;
        loop {
            match self.peek() {
                Some(Tok::TensL) => {
                    self.next();
                    acc = Formula::tens_l(acc, self.primary()?);
                }
                Some(Tok::TensR) => {
                    self.next();
                    acc = Formula::tens_r(acc, self.primary()?);
                }
                Some(Tok::LolliL) => {
                    self.next();
                    return Ok(Formula::lolli_l(acc, self.formula()?));
                }
                Some(Tok::LolliR) => {
                    self.next();
                    return Ok(Formula::lolli_r(acc, self.formula()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn stoup_sequent(&mut self) -> Result<StoupSequent, ParseError> {
        let stoup = match self.peek() {
            Some(Tok::Dash) => {
                self.next();
                Stoup::Empty
            }
            _ => Stoup::Just(self.formula()?),
        };
        self.expect(Tok::Bar)?;
        let mut context = Vec::new();
        if !matches!(self.peek(), Some(Tok::Turnstile)) {
            context.push(self.formula()?);
            while matches!(self.peek(), Some(Tok::Comma)) {
                self.next();
                context.push(self.formula()?);
            }
        }
        self.expect(Tok::Turnstile)?;
        let succedent = self.formula()?;
        Ok(StoupSequent::new(stoup, context, succedent))
    }

    fn tree_sequent(&mut self) -> Result<TreeSequent, ParseError> {
        let antecedent = self.tree()?;
        self.expect(Tok::Turnstile)?;
        let succedent = self.formula()?;
        Ok(TreeSequent::new(antecedent, succedent))
    }

    fn arrow_sequent(&mut self) -> Result<(Formula, Formula), ParseError> {
        let source = self.formula()?;
        self.expect(Tok::Turnstile)?;
        let target = self.formula()?;
        Ok((source, target))
    }
}

pub fn parse_formula(input: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(input)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_tree(input: &str) -> Result<Tree, ParseError> {
    let mut p = Parser::new(input)?;
    let t = p.tree()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_tree_sequent(input: &str) -> Result<TreeSequent, ParseError> {
    let mut p = Parser::new(input)?;
    let s = p.tree_sequent()?;
    p.finish()?;
    Ok(s)
}

pub fn parse_stoup_sequent(input: &str) -> Result<StoupSequent, ParseError> {
    let mut p = Parser::new(input)?;
    let s = p.stoup_sequent()?;
    p.finish()?;
    Ok(s)
}

/// Parses `A |- B`, the sequent form of the axiomatic calculus.
pub fn parse_arrow_sequent(input: &str) -> Result<(Formula, Formula), ParseError> {
    let mut p = Parser::new(input)?;
    let s = p.arrow_sequent()?;
    p.finish()?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Formula as F;
    use crate::tree::Tree as T;

    #[test]
    fn formula_examples() {
        assert_eq!(
            parse_formula("I *L X").unwrap(),
            F::tens_l(F::Unit, F::atom("X"))
        );
        assert_eq!(
            parse_formula("X -oL Y -oL Z").unwrap(),
            F::lolli_l(F::atom("X"), F::lolli_l(F::atom("Y"), F::atom("Z")))
        );
        assert_eq!(
            parse_formula("X *L Y *L Z").unwrap(),
            F::tens_l(F::tens_l(F::atom("X"), F::atom("Y")), F::atom("Z"))
        );
        assert_eq!(
            parse_formula("X *L Y -oR I").unwrap(),
            F::lolli_r(F::tens_l(F::atom("X"), F::atom("Y")), F::Unit)
        );
    }

    #[test]
    fn parse_error_has_position() {
        let e = parse_formula("X *L *L Y").unwrap_err();
        assert_eq!(e.pos, 5);
        let e = parse_formula("X * Y").unwrap_err();
        assert_eq!(e.pos, 2);
    }

    #[test]
    fn tree_sequents() {
        let s = parse_tree_sequent("((X , Y) ; -) |- X *R Y").unwrap();
        assert_eq!(
            s.antecedent,
            T::semi(T::comma(T::leaf(F::atom("X")), T::leaf(F::atom("Y"))), T::EmptyLeaf)
        );
        assert_eq!(s.succedent, F::tens_r(F::atom("X"), F::atom("Y")));

        let s = parse_tree_sequent("(I , X) |- X").unwrap();
        assert_eq!(s.antecedent, T::comma(T::leaf(F::Unit), T::leaf(F::atom("X"))));

        // A parenthesized formula is a single leaf.
        let s = parse_tree_sequent("(X *L Y) |- X *L Y").unwrap();
        assert_eq!(s.antecedent, T::leaf(F::tens_l(F::atom("X"), F::atom("Y"))));

        // Formula parens followed by an operator.
        let s = parse_tree_sequent("(X -oL Y) *L Z |- I").unwrap();
        assert_eq!(
            s.antecedent,
            T::leaf(F::tens_l(F::lolli_l(F::atom("X"), F::atom("Y")), F::atom("Z")))
        );

        assert!(parse_tree_sequent("X , Y , Z |- I").is_err());
    }

    #[test]
    fn stoup_sequents() {
        let s = parse_stoup_sequent("- | X , Y |- X *L Y").unwrap();
        assert_eq!(s.stoup, crate::formula::Stoup::Empty);
        assert_eq!(s.context, vec![F::atom("X"), F::atom("Y")]);

        let s = parse_stoup_sequent("- | |- I").unwrap();
        assert!(s.context.is_empty());
        assert_eq!(s.succedent, F::Unit);

        let s = parse_stoup_sequent("X -oL Y | X |- Y").unwrap();
        assert_eq!(s.stoup, crate::formula::Stoup::Just(F::lolli_l(F::atom("X"), F::atom("Y"))));
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "X -oL (Y -oL Z) -oL I",
            "(X *L Y) *R (I -oR X_1)",
            "- | X , Y *L Z |- (X -oL Y) *L I",
            "((X , Y) ; (- , I)) |- X *R Y",
        ] {
            if text.contains("|-") && text.contains('|') && text.find('|') != text.find("|-") {
                let s = parse_stoup_sequent(text).unwrap();
                assert_eq!(parse_stoup_sequent(&s.to_string()).unwrap(), s);
            } else if text.contains("|-") {
                let s = parse_tree_sequent(text).unwrap();
                assert_eq!(parse_tree_sequent(&s.to_string()).unwrap(), s);
            } else {
                let f = parse_formula(text).unwrap();
                assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
            }
        }
    }
}
