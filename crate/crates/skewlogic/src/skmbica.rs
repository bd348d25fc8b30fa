//! SkMBiCA, the axiomatic calculus for skew monoidal bi-closed categories:
//! derivation checking, the derived right-skew morphisms, and the
//! congruence-equation ledger (shipped as data; the congruence itself is
//! not decided here).

use std::fmt;

use crate::check::CheckReport;
use crate::formula::Formula;

/// A sequent `A |- B` of the axiomatic calculus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: Formula,
    pub target: Formula,
}

impl Arrow {
    pub fn new(source: Formula, target: Formula) -> Arrow {
        Arrow { source, target }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{} |- {}", self.source, self.target)
    }
}

/// Rule labels. `Pi`/`PiR` read the double-line rules upward (premise
/// `A *X B |- C`, conclusion `A |- B -oX C`); `PiInv`/`PiRInv` read them
/// downward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ARule {
    Id,
    Comp,
    TensLCong,
    LolliLCong,
    LolliRCong,
    Lambda,
    Rho,
    Alpha,
    Gamma,
    GammaInv,
    Pi,
    PiInv,
    PiR,
    PiRInv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ADerivation {
    pub conclusion: Arrow,
    pub rule: ARule,
    pub premises: Vec<ADerivation>,
}

impl ADerivation {
    fn node(conclusion: Arrow, rule: ARule, premises: Vec<ADerivation>) -> ADerivation {
        ADerivation { conclusion, rule, premises }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ADerivation::size).sum::<usize>()
    }

    pub fn id(a: Formula) -> ADerivation {
        ADerivation::node(Arrow::new(a.clone(), a), ARule::Id, vec![])
    }

    pub fn comp(f: ADerivation, g: ADerivation) -> ADerivation {
        assert_eq!(f.conclusion.target, g.conclusion.source, "comp needs matching middles");
        let concl = Arrow::new(f.conclusion.source.clone(), g.conclusion.target.clone());
        ADerivation::node(concl, ARule::Comp, vec![f, g])
    }

    pub fn tens_l_cong(f: ADerivation, g: ADerivation) -> ADerivation {
        let concl = Arrow::new(
            Formula::tens_l(f.conclusion.source.clone(), g.conclusion.source.clone()),
            Formula::tens_l(f.conclusion.target.clone(), g.conclusion.target.clone()),
        );
        ADerivation::node(concl, ARule::TensLCong, vec![f, g])
    }

    /// `-oL` congruence, contravariant in the argument: premises
    /// `C |- A` and `B |- D` yield `A -oL B |- C -oL D`.
    pub fn lolli_l_cong(f: ADerivation, g: ADerivation) -> ADerivation {
        let concl = Arrow::new(
            Formula::lolli_l(f.conclusion.target.clone(), g.conclusion.source.clone()),
            Formula::lolli_l(f.conclusion.source.clone(), g.conclusion.target.clone()),
        );
        ADerivation::node(concl, ARule::LolliLCong, vec![f, g])
    }

    pub fn lolli_r_cong(f: ADerivation, g: ADerivation) -> ADerivation {
        let concl = Arrow::new(
            Formula::lolli_r(f.conclusion.target.clone(), g.conclusion.source.clone()),
            Formula::lolli_r(f.conclusion.source.clone(), g.conclusion.target.clone()),
        );
        ADerivation::node(concl, ARule::LolliRCong, vec![f, g])
    }

    /// λ : I *L A |- A.
    pub fn lambda(a: Formula) -> ADerivation {
        let concl = Arrow::new(Formula::tens_l(Formula::Unit, a.clone()), a);
        ADerivation::node(concl, ARule::Lambda, vec![])
    }

    /// ρ : A |- A *L I.
    pub fn rho(a: Formula) -> ADerivation {
        let concl = Arrow::new(a.clone(), Formula::tens_l(a, Formula::Unit));
        ADerivation::node(concl, ARule::Rho, vec![])
    }

    /// α : (A *L B) *L C |- A *L (B *L C).
    pub fn alpha(a: Formula, b: Formula, c: Formula) -> ADerivation {
        let concl = Arrow::new(
            Formula::tens_l(Formula::tens_l(a.clone(), b.clone()), c.clone()),
            Formula::tens_l(a, Formula::tens_l(b, c)),
        );
        ADerivation::node(concl, ARule::Alpha, vec![])
    }

    /// γ : A *L B |- B *R A.
    pub fn gamma(a: Formula, b: Formula) -> ADerivation {
        let concl = Arrow::new(Formula::tens_l(a.clone(), b.clone()), Formula::tens_r(b, a));
        ADerivation::node(concl, ARule::Gamma, vec![])
    }

    /// γ⁻¹ : A *R B |- B *L A.
    pub fn gamma_inv(a: Formula, b: Formula) -> ADerivation {
        let concl = Arrow::new(Formula::tens_r(a.clone(), b.clone()), Formula::tens_l(b, a));
        ADerivation::node(concl, ARule::GammaInv, vec![])
    }

    /// π upward: from `A *L B |- C` to `A |- B -oL C`.
    pub fn pi(f: ADerivation) -> ADerivation {
        let Formula::TensL(a, b) = f.conclusion.source.clone() else {
            panic!("pi needs a *L source in the premise");
        };
        let concl = Arrow::new(*a, Formula::lolli_l(*b, f.conclusion.target.clone()));
        ADerivation::node(concl, ARule::Pi, vec![f])
    }

    /// π downward: from `A |- B -oL C` to `A *L B |- C`.
    pub fn pi_inv(f: ADerivation) -> ADerivation {
        let Formula::LolliL(b, c) = f.conclusion.target.clone() else {
            panic!("pi⁻¹ needs a -oL target in the premise");
        };
        let concl = Arrow::new(Formula::tens_l(f.conclusion.source.clone(), *b), *c);
        ADerivation::node(concl, ARule::PiInv, vec![f])
    }

    /// πR upward: from `A *R B |- C` to `A |- B -oR C`.
    pub fn pi_r(f: ADerivation) -> ADerivation {
        let Formula::TensR(a, b) = f.conclusion.source.clone() else {
            panic!("piR needs a *R source in the premise");
        };
        let concl = Arrow::new(*a, Formula::lolli_r(*b, f.conclusion.target.clone()));
        ADerivation::node(concl, ARule::PiR, vec![f])
    }

    /// πR downward: from `A |- B -oR C` to `A *R B |- C`.
    pub fn pi_r_inv(f: ADerivation) -> ADerivation {
        let Formula::LolliR(b, c) = f.conclusion.target.clone() else {
            panic!("piR⁻¹ needs a -oR target in the premise");
        };
        let concl = Arrow::new(Formula::tens_r(f.conclusion.source.clone(), *b), *c);
        ADerivation::node(concl, ARule::PiRInv, vec![f])
    }
}

/// Checks every node of `d` against its rule schema.
pub fn check_a(d: &ADerivation) -> CheckReport {
    let mut report = CheckReport::default();
    let mut path = Vec::new();
    check_node(d, &mut path, &mut report);
    report
}

fn check_node(d: &ADerivation, path: &mut Vec<usize>, report: &mut CheckReport) {
    let arity = match d.rule {
        ARule::Id | ARule::Lambda | ARule::Rho | ARule::Alpha | ARule::Gamma | ARule::GammaInv => 0,
        ARule::Pi | ARule::PiInv | ARule::PiR | ARule::PiRInv => 1,
        ARule::Comp | ARule::TensLCong | ARule::LolliLCong | ARule::LolliRCong => 2,
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

fn check_schema(d: &ADerivation, path: &[usize], report: &mut CheckReport) {
    let c = &d.conclusion;
    let bad = |report: &mut CheckReport, why: &str| {
        report.push(path, format!("{why}, found {c}"));
    };
    match d.rule {
        ARule::Id => {
            if c.source != c.target {
                bad(report, "id must conclude A |- A");
            }
        }
        ARule::Comp => {
            let f = &d.premises[0].conclusion;
            let g = &d.premises[1].conclusion;
            if f.source != c.source || g.target != c.target || f.target != g.source {
                bad(report, "comp premises must chain A |- B and B |- C");
            }
        }
        ARule::TensLCong => {
            let f = &d.premises[0].conclusion;
            let g = &d.premises[1].conclusion;
            let want = Arrow::new(
                Formula::tens_l(f.source.clone(), g.source.clone()),
                Formula::tens_l(f.target.clone(), g.target.clone()),
            );
            if *c != want {
                bad(report, "*L congruence must pair its premises");
            }
        }
        ARule::LolliLCong => {
            let f = &d.premises[0].conclusion;
            let g = &d.premises[1].conclusion;
            let want = Arrow::new(
                Formula::lolli_l(f.target.clone(), g.source.clone()),
                Formula::lolli_l(f.source.clone(), g.target.clone()),
            );
            if *c != want {
                bad(report, "-oL congruence is contravariant on the left");
            }
        }
        ARule::LolliRCong => {
            let f = &d.premises[0].conclusion;
            let g = &d.premises[1].conclusion;
            let want = Arrow::new(
                Formula::lolli_r(f.target.clone(), g.source.clone()),
                Formula::lolli_r(f.source.clone(), g.target.clone()),
            );
            if *c != want {
                bad(report, "-oR congruence is contravariant on the left");
            }
        }
        ARule::Lambda => match &c.source {
            Formula::TensL(i, a) if **i == Formula::Unit && **a == c.target => {}
            _ => bad(report, "λ must conclude I *L A |- A"),
        },
        ARule::Rho => match &c.target {
            Formula::TensL(a, i) if **i == Formula::Unit && **a == c.source => {}
            _ => bad(report, "ρ must conclude A |- A *L I"),
        },
        ARule::Alpha => {
            let ok = matches!((&c.source, &c.target), (Formula::TensL(ab, c1), Formula::TensL(a, bc))
                if matches!((ab.as_ref(), bc.as_ref()), (Formula::TensL(a1, b1), Formula::TensL(b2, c2))
                    if a1 == a && b1 == b2 && c1 == c2));
            if !ok {
                bad(report, "α must conclude (A *L B) *L C |- A *L (B *L C)");
            }
        }
        ARule::Gamma => {
            let ok = matches!((&c.source, &c.target), (Formula::TensL(a, b), Formula::TensR(b2, a2))
                if a == a2 && b == b2);
            if !ok {
                bad(report, "γ must conclude A *L B |- B *R A");
            }
        }
        ARule::GammaInv => {
            let ok = matches!((&c.source, &c.target), (Formula::TensR(a, b), Formula::TensL(b2, a2))
                if a == a2 && b == b2);
            if !ok {
                bad(report, "γ⁻¹ must conclude A *R B |- B *L A");
            }
        }
        ARule::Pi => {
            let f = &d.premises[0].conclusion;
            let ok = matches!((&f.source, &c.target), (Formula::TensL(a, b), Formula::LolliL(b2, c2))
                if **a == c.source && b == b2 && **c2 == f.target);
            if !ok {
                bad(report, "π must turn A *L B |- C into A |- B -oL C");
            }
        }
        ARule::PiInv => {
            let f = &d.premises[0].conclusion;
            let ok = matches!((&c.source, &f.target), (Formula::TensL(a, b), Formula::LolliL(b2, c2))
                if **a == f.source && b == b2 && **c2 == c.target);
            if !ok {
                bad(report, "π⁻¹ must turn A |- B -oL C into A *L B |- C");
            }
        }
        ARule::PiR => {
            let f = &d.premises[0].conclusion;
            let ok = matches!((&f.source, &c.target), (Formula::TensR(a, b), Formula::LolliR(b2, c2))
                if **a == c.source && b == b2 && **c2 == f.target);
            if !ok {
                bad(report, "πR must turn A *R B |- C into A |- B -oR C");
            }
        }
        ARule::PiRInv => {
            let f = &d.premises[0].conclusion;
            let ok = matches!((&c.source, &f.target), (Formula::TensR(a, b), Formula::LolliR(b2, c2))
                if **a == f.source && b == b2 && **c2 == c.target);
            if !ok {
                bad(report, "πR⁻¹ must turn A |- B -oR C into A *R B |- C");
            }
        }
    }
}

/// `f *R g`, defined as `γ ∘ (g *L f) ∘ γ⁻¹`: from `f : A |- B` and
/// `g : C |- D` a derivation of `A *R C |- B *R D`.
pub fn derived_tens_r(f: &ADerivation, g: &ADerivation) -> ADerivation {
    let gi = ADerivation::gamma_inv(f.conclusion.source.clone(), g.conclusion.source.clone());
    let mid = ADerivation::tens_l_cong(g.clone(), f.clone());
    let ga = ADerivation::gamma(g.conclusion.target.clone(), f.conclusion.target.clone());
    ADerivation::comp(ADerivation::comp(gi, mid), ga)
}

/// λR : A |- I *R A, as the composite γ ∘ ρ.
pub fn derived_lambda_r(a: Formula) -> ADerivation {
    ADerivation::comp(ADerivation::rho(a.clone()), ADerivation::gamma(a, Formula::Unit))
}

/// ρR : A *R I |- A, as the composite λ ∘ γ⁻¹.
pub fn derived_rho_r(a: Formula) -> ADerivation {
    ADerivation::comp(ADerivation::gamma_inv(a.clone(), Formula::Unit), ADerivation::lambda(a))
}

/// αR : A *R (B *R C) |- (A *R B) *R C, built from γ, γ⁻¹ and α.
pub fn derived_alpha_r(a: Formula, b: Formula, c: Formula) -> ADerivation {
    // A *R (B *R C) |- (B *R C) *L A |- (C *L B) *L A |- C *L (B *L A)
    //               |- (B *L A) *R C |- (A *R B) *R C.
    let step1 = ADerivation::gamma_inv(a.clone(), Formula::tens_r(b.clone(), c.clone()));
    let step2 = ADerivation::tens_l_cong(
        ADerivation::gamma_inv(b.clone(), c.clone()),
        ADerivation::id(a.clone()),
    );
    let step3 = ADerivation::alpha(c.clone(), b.clone(), a.clone());
    let step4 = ADerivation::gamma(c.clone(), Formula::tens_l(b.clone(), a.clone()));
    let step5 = derived_tens_r(&ADerivation::gamma(b, a), &ADerivation::id(c));
    ADerivation::comp(
        ADerivation::comp(ADerivation::comp(ADerivation::comp(step1, step2), step3), step4),
        step5,
    )
}

/// One congruence equation of the free category, shipped as data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquationSchema {
    pub group: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
}

/// The equation ledger for derivations, keyed by group. Morphism
/// composition is written `∘`, congruence rules apply infix. The
/// congruence is represented, not decided.
pub const EQUATIONS: &[EquationSchema] = &[
    EquationSchema { group: "category laws", lhs: "id ∘ f", rhs: "f" },
    EquationSchema { group: "category laws", lhs: "f", rhs: "f ∘ id" },
    EquationSchema { group: "category laws", lhs: "(f ∘ g) ∘ h", rhs: "f ∘ (g ∘ h)" },
    EquationSchema { group: "*L functorial", lhs: "id *L id", rhs: "id" },
    EquationSchema { group: "*L functorial", lhs: "(h ∘ f) *L (k ∘ g)", rhs: "(h *L k) ∘ (f *L g)" },
    EquationSchema { group: "-oL functorial", lhs: "id -oL id", rhs: "id" },
    EquationSchema { group: "-oL functorial", lhs: "(f ∘ h) -oL (k ∘ g)", rhs: "(h -oL k) ∘ (f -oL g)" },
    EquationSchema { group: "-oR functorial", lhs: "id -oR id", rhs: "id" },
    EquationSchema { group: "-oR functorial", lhs: "(f ∘ h) -oR (k ∘ g)", rhs: "(h -oR k) ∘ (f -oR g)" },
    EquationSchema { group: "λ ρ α natural", lhs: "λ ∘ (id *L f)", rhs: "f ∘ λ" },
    EquationSchema { group: "λ ρ α natural", lhs: "ρ ∘ f", rhs: "(f *L id) ∘ ρ" },
    EquationSchema { group: "λ ρ α natural", lhs: "α ∘ ((f *L g) *L h)", rhs: "(f *L (g *L h)) ∘ α" },
    EquationSchema { group: "Mac Lane axioms", lhs: "λ ∘ ρ", rhs: "id" },
    EquationSchema { group: "Mac Lane axioms", lhs: "id", rhs: "(id *L λ) ∘ α ∘ (ρ *L id)" },
    EquationSchema { group: "Mac Lane axioms", lhs: "λ ∘ α", rhs: "λ *L id" },
    EquationSchema { group: "Mac Lane axioms", lhs: "α ∘ ρ", rhs: "id *L ρ" },
    EquationSchema { group: "Mac Lane axioms", lhs: "α ∘ α", rhs: "(id *L α) ∘ α ∘ (α *L id)" },
    EquationSchema { group: "γ isomorphism", lhs: "γ ∘ γ⁻¹", rhs: "id" },
    EquationSchema { group: "γ isomorphism", lhs: "γ⁻¹ ∘ γ", rhs: "id" },
    EquationSchema { group: "π πR natural", lhs: "π f ∘ g", rhs: "π (f ∘ (g *L id))" },
    EquationSchema { group: "π πR natural", lhs: "π (f ∘ g)", rhs: "(id -oL f) ∘ π g" },
    EquationSchema { group: "π πR natural", lhs: "π (id *L f)", rhs: "(g -oL id) ∘ π id" },
    EquationSchema { group: "π πR natural", lhs: "πR (id *R f)", rhs: "(g -oR id) ∘ πR id" },
    EquationSchema { group: "π πR natural", lhs: "πR f ∘ g", rhs: "πR (f ∘ (g *R id))" },
    EquationSchema { group: "π πR natural", lhs: "πR (f ∘ g)", rhs: "(id -oR f) ∘ πR g" },
    EquationSchema { group: "π πR isomorphism", lhs: "π (π⁻¹ f)", rhs: "f" },
    EquationSchema { group: "π πR isomorphism", lhs: "π⁻¹ (π f)", rhs: "f" },
    EquationSchema { group: "π πR isomorphism", lhs: "πR (πR⁻¹ f)", rhs: "f" },
    EquationSchema { group: "π πR isomorphism", lhs: "πR⁻¹ (πR f)", rhs: "f" },
];

/// The equation ledger rendered as a text table.
pub fn equation_table() -> String {
    let width = EQUATIONS.iter().map(|e| e.group.len()).max().unwrap_or(0);
    let mut out = String::new();
    for e in EQUATIONS {
        out.push_str(&format!("{:width$}  {} ≐ {}\n", e.group, e.lhs, e.rhs));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;

    fn x() -> Formula {
        parse_formula("X").unwrap()
    }
    fn y() -> Formula {
        parse_formula("Y").unwrap()
    }
    fn z() -> Formula {
        parse_formula("Z").unwrap()
    }

    #[test]
    fn axioms_check() {
        let g = ADerivation::gamma(x(), y());
        assert_eq!(g.conclusion, Arrow::new(parse_formula("X *L Y").unwrap(), parse_formula("Y *R X").unwrap()));
        assert!(check_a(&g).is_ok());

        let a = ADerivation::alpha(x(), y(), z());
        assert_eq!(
            a.conclusion,
            Arrow::new(
                parse_formula("(X *L Y) *L Z").unwrap(),
                parse_formula("X *L (Y *L Z)").unwrap()
            )
        );
        assert!(check_a(&a).is_ok());
    }

    #[test]
    fn reversed_lambda_rejected() {
        let bad = ADerivation {
            conclusion: Arrow::new(x(), parse_formula("I *L X").unwrap()),
            rule: ARule::Lambda,
            premises: vec![],
        };
        assert!(!check_a(&bad).is_ok());
    }

    #[test]
    fn derived_tens_r_endsequents() {
        let d = derived_tens_r(&ADerivation::id(x()), &ADerivation::id(y()));
        assert!(check_a(&d).is_ok());
        assert_eq!(
            d.conclusion,
            Arrow::new(parse_formula("X *R Y").unwrap(), parse_formula("X *R Y").unwrap())
        );

        // f : X |- Y lifts to X *R C |- Y *R C.
        let f = ADerivation::comp(ADerivation::rho(x()), ADerivation::pi_inv(ADerivation::pi(
            ADerivation::comp(
                ADerivation::tens_l_cong(ADerivation::id(x()), ADerivation::id(Formula::Unit)),
                ADerivation::rho(parse_formula("X *L I").unwrap()),
            ),
        )));
        assert!(check_a(&f).is_ok());
        let lifted = derived_tens_r(&f, &ADerivation::id(z()));
        assert!(check_a(&lifted).is_ok());
        assert_eq!(lifted.conclusion.source, parse_formula("X *R Z").unwrap());

        // Constructor count of the defining composite: two comps, γ, γ⁻¹
        // and the *L congruence node.
        let d = derived_tens_r(&ADerivation::id(x()), &ADerivation::id(y()));
        assert_eq!(d.size(), ADerivation::id(x()).size() + ADerivation::id(y()).size() + 5);
    }

    #[test]
    fn derived_right_structurals_check() {
        let lam_r = derived_lambda_r(x());
        assert!(check_a(&lam_r).is_ok());
        assert_eq!(lam_r.conclusion, Arrow::new(x(), parse_formula("I *R X").unwrap()));
        // λR = γ ∘ ρ literally.
        assert_eq!(lam_r.rule, ARule::Comp);
        assert_eq!(lam_r.premises[0].rule, ARule::Rho);
        assert_eq!(lam_r.premises[1].rule, ARule::Gamma);

        let rho_r = derived_rho_r(x());
        assert!(check_a(&rho_r).is_ok());
        assert_eq!(rho_r.conclusion, Arrow::new(parse_formula("X *R I").unwrap(), x()));

        let alpha_r = derived_alpha_r(x(), y(), z());
        assert!(check_a(&alpha_r).is_ok());
        assert_eq!(
            alpha_r.conclusion,
            Arrow::new(
                parse_formula("X *R (Y *R Z)").unwrap(),
                parse_formula("(X *R Y) *R Z").unwrap()
            )
        );
    }

    #[test]
    fn pi_round_trip() {
        let f = ADerivation::lambda(x());
        let up = ADerivation::pi(f.clone());
        assert!(check_a(&up).is_ok());
        assert_eq!(up.conclusion, Arrow::new(Formula::Unit, parse_formula("X -oL X").unwrap()));
        let down = ADerivation::pi_inv(up);
        assert!(check_a(&down).is_ok());
        assert_eq!(down.conclusion, f.conclusion);
    }

    #[test]
    fn equation_table_lists_all_groups() {
        let table = equation_table();
        for group in [
            "category laws",
            "*L functorial",
            "-oL functorial",
            "-oR functorial",
            "λ ρ α natural",
            "Mac Lane axioms",
            "γ isomorphism",
            "π πR natural",
            "π πR isomorphism",
        ] {
            assert!(table.contains(group), "missing group {group}");
        }
        assert_eq!(EQUATIONS.len(), 29);
    }
}
