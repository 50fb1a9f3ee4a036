use std::fmt;

use super::Formula;
use super::Formula::*;

// Binding strength; larger binds tighter.
const IMPL: u8 = 1;
const OPLUS: u8 = 2;
const ODOT: u8 = 3;
const BULLET: u8 = 4;
const MEET: u8 = 5;
const JOIN: u8 = 6;
const PREFIX: u8 = 7;
const ATOM: u8 = 8;

fn strength(f: &Formula) -> u8 {
    match f {
        Impl(..) => IMPL,
        Oplus(..) => OPLUS,
        Odot(..) => ODOT,
        Bullet(..) => BULLET,
        Meet(..) => MEET,
        Join(..) => JOIN,
        Neg(_) | Div(..) => PREFIX,
        Var(_) | Zero | One | FixK | Const(_) => ATOM,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Formula {
    /// Minimal parenthesization; the output parses back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var(name) => f.write_str(name),
            Zero => f.write_str("0"),
            One => f.write_str("1"),
            FixK => f.write_str("K"),
            Const(r) => write!(f, "[{r}]"),
            Neg(a) => {
                f.write_str("!")?;
                write_child(f, a, strength(a) < PREFIX)
            }
            Div(n, a) => write!(f, "d{n}({a})"),
            Impl(a, b) => {
                write_child(f, a, strength(a) <= IMPL)?;
                f.write_str(" -> ")?;
                write_child(f, b, strength(b) < IMPL)
            }
            Oplus(a, b) | Odot(a, b) | Bullet(a, b) | Meet(a, b) | Join(a, b) => {
                let (level, op) = match self {
                    Oplus(..) => (OPLUS, "+"),
                    Odot(..) => (ODOT, "&"),
                    Bullet(..) => (BULLET, "*"),
                    Meet(..) => (MEET, "/\\"),
                    _ => (JOIN, "\\/"),
                };
                write_child(f, a, strength(a) < level)?;
                write!(f, " {op} ")?;
                write_child(f, b, strength(b) <= level)
            }
        }
    }
}
