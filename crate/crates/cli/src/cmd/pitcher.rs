use clap::Args;
use novikov_core::complex::BaseRing;
use novikov_core::pitcher::{homology_modules, inequality_report, novikov_betti, InequalityFamily};
use serde_json::{json, Value};

use super::Report;
use crate::doc;
use crate::error::{domain, Result};
use crate::text;

#[derive(Args)]
pub struct PitcherArgs {
    /// Complex document over Q[t] (`-` for stdin).
    #[arg(long)]
    complex: String,
    /// Morse counts M_0,M_1,...; defaults to the ranks of the complex.
    #[arg(long)]
    morse: Option<String>,
}

pub fn run(a: PitcherArgs) -> Result<Report> {
    let (_, p) = doc::read_document(&a.complex, &["complex"])?;
    let c = doc::complex(&p)?;
    if c.ring() != BaseRing::Polynomials {
        return Err(domain(format!(
            "pitcher needs a complex over Q[t], got {}",
            c.ring().name()
        )));
    }
    let morse = match &a.morse {
        Some(s) => doc::usize_list(s)?,
        None => c.ranks().to_vec(),
    };
    let modules = homology_modules(&c).map_err(domain)?;
    let report = inequality_report(&morse, &c).map_err(domain)?;
    let nb = novikov_betti(&c).map_err(domain)?;
    let n = &report.numbers;

    let verdicts: Vec<Value> = report
        .verdicts
        .iter()
        .map(|v| {
            json!({
                "family": v.family.name(),
                "degree": v.degree,
                "lhs": v.lhs,
                "rhs": v.rhs,
                "holds": v.holds,
            })
        })
        .collect();
    let payload = json!({
        "modules": modules
            .iter()
            .map(|m| json!({
                "free_rank": m.free_rank,
                "t_torsion": m.t_torsion,
                "coprime_torsion": m.coprime_torsion.iter().map(doc::poly_json).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>(),
        "morse": morse,
        "numbers": {"R": n.r, "S": n.s, "Q": n.q},
        "beta": report.beta,
        "novikov_betti": nb,
        "verdicts": verdicts,
        "all_hold": report.all_hold(),
    });

    let at = |v: &[usize], k: usize| v.get(k).copied().unwrap_or(0);
    let top = morse.len().max(report.beta.len()).max(n.q.len());
    let mut t =
        String::from(" k | M_k | β_k | R_k | S_k | Q_k\n---+-----+-----+-----+-----+-----\n");
    for k in 0..top {
        t.push_str(&format!(
            "{k:>2} | {:>3} | {:>3} | {:>3} | {:>3} | {:>3}\n",
            at(&morse, k),
            at(&report.beta, k),
            at(&n.r, k),
            at(&n.s, k),
            at(&n.q, k)
        ));
    }
    t.push('\n');
    for v in &report.verdicts {
        let mark = if v.holds { "ok" } else { "VIOLATED" };
        let line = match (v.family, v.degree) {
            (InequalityFamily::Pitcher, Some(k)) => {
                format!(
                    "{} = {} ≥ {} = {}",
                    alternating("M", k),
                    v.lhs,
                    v.rhs,
                    alternating("Q", k)
                )
            }
            (InequalityFamily::Morse, Some(k)) => {
                format!(
                    "{} = {} ≥ {} = {}",
                    alternating("M", k),
                    v.lhs,
                    v.rhs,
                    alternating("β", k)
                )
            }
            (InequalityFamily::EulerCharacteristic, _) => {
                format!("Σ(−1)ᵏ M_k = {} = {} = Σ(−1)ᵏ β_k", v.lhs, v.rhs)
            }
            (f, Some(k)) => {
                let (l, r) = match f {
                    InequalityFamily::TorsionFreeNovikov => ("M", "Q"),
                    InequalityFamily::MorseOverRelative => ("M", "β"),
                    InequalityFamily::RelativeOverR => ("β", "R"),
                    _ => ("R", "Q"),
                };
                format!(
                    "{l}{} = {} ≥ {} = {r}{}",
                    text::sub(k),
                    v.lhs,
                    v.rhs,
                    text::sub(k)
                )
            }
            (f, None) => format!("{}: {} vs {}", f.name(), v.lhs, v.rhs),
        };
        t.push_str(&format!("{:<22} {line}  {mark}\n", v.family.name()));
    }
    t.push_str(&format!(
        "all inequalities hold: {}\n",
        text::yes_no(report.all_hold())
    ));
    Ok(Report::new(
        "report",
        json!({"complex": p, "morse": morse}),
        payload,
        t,
    ))
}

/// `X₂ − X₁ + X₀`.
fn alternating(x: &str, k: usize) -> String {
    let mut out = String::new();
    for j in (0..=k).rev() {
        if j < k {
            out.push_str(if (k - j).is_multiple_of(2) { " + " } else { " − " });
        }
        out.push_str(&format!("{x}{}", text::sub(j)));
    }
    out
}
