//! Proof synthesis for variable-free formulas via the book-keeping axioms.

use super::builder::ProofBuilder;
use super::proof::Proof;
use super::scheme::{const_impl, const_op};
use crate::algebra::{value, Valuation};
use crate::error::SynthesisError;
use crate::rational::Rational01;
use crate::syntax::{to_core, Formula, LogicProfile, Theory};

/// A ground formula folded to the constant of its value, with proofs of
/// both directions unless it already is that constant.
struct Folded {
    value: Rational01,
    /// `(φ → c̄, c̄ → φ)`.
    links: Option<(usize, usize)>,
}

fn bk3(b: &mut ProofBuilder, op: Formula, forward: bool) -> usize {
    b.axiom("BK3", const_op(&op, forward).expect("operation on constants"))
}

fn fold(f: &Formula, b: &mut ProofBuilder) -> Folded {
    use Formula::*;
    match f {
        Const(c) => Folded {
            value: c.clone(),
            links: None,
        },
        Zero => {
            let back = b.axiom_pattern("BK1", 0, &[]);
            let fwd = b.axiom_pattern("BK1", 1, &[]);
            Folded {
                value: Rational01::zero(),
                links: Some((fwd, back)),
            }
        }
        FixK => Folded {
            value: Rational01::half(),
            links: Some((bk3(b, FixK, true), bk3(b, FixK, false))),
        },
        Impl(x, y) => {
            let (fx, fy) = (fold(x, b), fold(y, b));
            let (cx, cy) = (Const(fx.value.clone()), Const(fy.value.clone()));
            let value = fx.value.implies(&fy.value);
            let to_const = b.axiom("BK2", const_impl(&fx.value, &fy.value, true));
            let from_const = b.axiom("BK2", const_impl(&fx.value, &fy.value, false));
            if fx.links.is_none() && fy.links.is_none() {
                return Folded {
                    value,
                    links: Some((to_const, from_const)),
                };
            }
            let (x_fwd, x_back) = unzip(fx.links);
            let (y_fwd, y_back) = unzip(fy.links);
            // (x → y) → (c̄x → c̄y) and back.
            let down = b.impl_mono(x, y, x_back, y_fwd);
            let up = b.impl_mono(&cx, &cy, x_fwd, y_back);
            let fwd = b.syllogism(down, to_const);
            let back = b.syllogism(from_const, up);
            Folded {
                value,
                links: Some((fwd, back)),
            }
        }
        Bullet(x, y) => {
            let (fx, fy) = (fold(x, b), fold(y, b));
            let (cx, cy) = (Const(fx.value.clone()), Const(fy.value.clone()));
            let value = fx.value.product(&fy.value);
            let op = Formula::bullet(cx.clone(), cy.clone());
            let mut fwd = bk3(b, op.clone(), true);
            let mut back = bk3(b, op, false);
            // x • y → c̄x • y → c̄x • c̄y, and the converse chain.
            if let Some((y_fwd, y_back)) = fy.links {
                let r = b.bullet_right(&cx, y_fwd);
                fwd = b.syllogism(r, fwd);
                let r = b.bullet_right(&cx, y_back);
                back = b.syllogism(back, r);
            }
            if let Some((x_fwd, x_back)) = fx.links {
                let l = b.bullet_left(y, x_fwd);
                fwd = b.syllogism(l, fwd);
                let l = b.bullet_left(y, x_back);
                back = b.syllogism(back, l);
            }
            Folded {
                value,
                links: Some((fwd, back)),
            }
        }
        Div(n, x) => {
            let fx = fold(x, b);
            let op = Formula::div(*n, Const(fx.value.clone()));
            let mut fwd = bk3(b, op.clone(), true);
            let mut back = bk3(b, op, false);
            if let Some((x_fwd, x_back)) = fx.links {
                let m = b.div_mono(*n, x_fwd);
                fwd = b.syllogism(m, fwd);
                let m = b.div_mono(*n, x_back);
                back = b.syllogism(back, m);
            }
            Folded {
                value: fx.value.divide(*n),
                links: Some((fwd, back)),
            }
        }
        Var(_) => unreachable!("ground formula"),
        One | Neg(_) | Odot(..) | Oplus(..) | Meet(..) | Join(..) => unreachable!("core form"),
    }
}

fn unzip(links: Option<(usize, usize)>) -> (Option<usize>, Option<usize>) {
    match links {
        Some((f, b)) => (Some(f), Some(b)),
        None => (None, None),
    }
}

/// `⊢ r̄ → s̄` for `r ≤ s`.
pub(crate) fn const_le(b: &mut ProofBuilder, r: &Rational01, s: &Rational01) -> usize {
    if r == s {
        return b.identity(Formula::Const(r.clone()));
    }
    let zero = Rational01::zero();
    let id0 = b.identity(Formula::Const(zero.clone()));
    let top_rule = b.axiom("BK2", const_impl(&zero, &zero, true));
    let top = b.mp(id0, top_rule);
    let unfold = b.axiom("BK2", const_impl(r, s, false));
    b.mp(top, unfold)
}

/// Proof of `r̄ → φ` from no hypotheses, for ground `φ` and `r ≤ value(φ)`.
///
/// The formula is folded bottom-up to the constant of its value with the
/// book-keeping axioms, transporting along `→`, `•` and `δ_n` with derived
/// monotonicity rules. No registered lemmas are used.
pub fn synthesize_ground_proof(
    phi: &Formula,
    r: &Rational01,
    profile: &LogicProfile,
) -> Result<Proof, SynthesisError> {
    if !profile.constants {
        return Err(SynthesisError::ConstantsDisabled);
    }
    if !phi.is_ground() {
        return Err(SynthesisError::NotGround);
    }
    if let Some(c) = phi.profile_violation(profile) {
        return Err(SynthesisError::ProfileViolation(c));
    }
    let v = value(phi, &Valuation::new()).expect("ground formula evaluates");
    if r > &v {
        return Err(SynthesisError::DegreeTooHigh {
            requested: r.to_string(),
            value: v.to_string(),
        });
    }
    let mut b = ProofBuilder::new(Theory::empty(*profile));
    let folded = fold(&to_core(phi), &mut b);
    debug_assert_eq!(folded.value, v);
    let le = const_le(&mut b, r, &v);
    if let Some((_, back)) = folded.links {
        b.syllogism(le, back);
    }
    Ok(b.finish(&Formula::imp(Formula::Const(r.clone()), phi.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::check_proof;
    use crate::syntax::parse;

    fn q(n: i64, d: i64) -> Rational01 {
        Rational01::new(n, d).unwrap()
    }

    fn accepted(text: &str, r: Rational01) -> Proof {
        let phi = parse(text, &LogicProfile::ALL).unwrap();
        let p = synthesize_ground_proof(&phi, &r, &LogicProfile::ALL).unwrap();
        let v = check_proof(&p);
        assert!(v.accepted(), "{text}: {:?}\n{}", v.issues, p.to_file());
        assert_eq!(p.conclusion(), Some(&Formula::imp(Formula::Const(r), phi)));
        assert!(v.lemmas_used.is_empty());
        p
    }

    #[test]
    fn spot_values() {
        accepted("[1/2] + [1/3]", q(5, 6));
        accepted("[3/4]", q(3, 4));
        accepted("d2([1/2])", q(1, 4));
        accepted("K -> 0", q(1, 2));
        accepted("[1/2] * ([1/3] -> 0)", q(1, 3));
        accepted("!(K & [2/3]) /\\ d3(1)", q(1, 3));
    }

    #[test]
    fn weaker_degrees_are_accepted() {
        accepted("[1/2] + [1/3]", q(1, 2));
        accepted("[3/4]", Rational01::zero());
    }

    #[test]
    fn preconditions() {
        let p = parse("p", &LogicProfile::ALL).unwrap();
        assert_eq!(
            synthesize_ground_proof(&p, &Rational01::zero(), &LogicProfile::ALL),
            Err(SynthesisError::NotGround)
        );
        let c = parse("[1/2]", &LogicProfile::ALL).unwrap();
        assert_eq!(
            synthesize_ground_proof(&c, &Rational01::zero(), &LogicProfile::BASE),
            Err(SynthesisError::ConstantsDisabled)
        );
        assert!(matches!(
            synthesize_ground_proof(&c, &q(3, 4), &LogicProfile::ALL),
            Err(SynthesisError::DegreeTooHigh { .. })
        ));
    }
}
