use novikov_core::arith::{Integer, Rational};
use num_traits::{One, Signed, Zero};

const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn digits(n: u64, table: &[char; 10]) -> String {
    n.to_string()
        .bytes()
        .map(|b| table[(b - b'0') as usize])
        .collect()
}

pub fn sub(n: usize) -> String {
    digits(n as u64, &SUB)
}

pub fn sup(n: u64) -> String {
    digits(n, &SUP)
}

pub fn rat(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn tuple<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn rat_tuple(xs: &[Rational]) -> String {
    let parts: Vec<String> = xs.iter().map(rat).collect();
    format!("({})", parts.join(", "))
}

/// `t₁²t₃`, or `1` for the empty monomial. A single variable is `t`.
pub fn monomial<E: Copy + Into<u64>>(exp: &[E]) -> String {
    let single = exp.len() == 1;
    let mut out = String::new();
    for (i, &e) in exp.iter().enumerate() {
        let e: u64 = e.into();
        if e == 0 {
            continue;
        }
        out.push('t');
        if !single {
            out.push_str(&sub(i + 1));
        }
        if e > 1 {
            out.push_str(&sup(e));
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

/// `c₀ + c₁t + c₂t² + ...`, constant term first.
pub fn poly_ascending(coeffs: &[Integer]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t{}", sup(i as u64)),
        };
        if i == 0 || !a.is_one() {
            out.push_str(&a.to_string());
        }
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A sum of `coefficient * term` pairs with signs folded in.
pub fn signed_sum(terms: &[(Integer, String)]) -> String {
    let mut out = String::new();
    for (c, m) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m == "1" {
            out.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                out.push_str(&a.to_string());
            }
            out.push_str(m);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
