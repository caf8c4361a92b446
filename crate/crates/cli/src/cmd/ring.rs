use clap::{Args, Subcommand};
use novikov_core::arith::Integer;
use novikov_core::ring::{
    mul_truncated, projection_kernel, to_dual_coordinates, twisted_mul_truncated, GroupRingElt,
    TruncatedSeries,
};
use serde_json::{json, Value};

use super::Report;
use crate::doc;
use crate::error::{domain, parse_err, Result};
use crate::text;

#[derive(Subcommand)]
pub enum RingCommand {
    /// Product of two integer series.
    Mul(PairArgs),
    /// Product of two series over Z[H] in a twisted ring.
    TwistedMul(TwistedArgs),
    /// Reduce modulo a single variable's power.
    JnProject(ProjectArgs),
    /// Rewrite a group-ring element in the dual basis of a unimodular family.
    Dual(DualArgs),
}

#[derive(Args)]
pub struct PairArgs {
    /// Series document (`-` for stdin).
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
}

#[derive(Args)]
pub struct TwistedArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    /// Twist document.
    #[arg(long)]
    twist: String,
}

#[derive(Args)]
pub struct ProjectArgs {
    #[arg(long)]
    a: String,
    /// Variable index, starting at 1.
    #[arg(long)]
    var: usize,
    /// Reduce to this truncation order first; at most the series order.
    #[arg(long)]
    order: Option<u32>,
}

#[derive(Args)]
pub struct DualArgs {
    /// Form-family document.
    #[arg(long)]
    family: String,
    /// Terms `g:c` separated by `;`, with `g` comma-separated, e.g. `1,0:3;0,-1:2`.
    #[arg(long, allow_hyphen_values = true)]
    element: String,
}

pub fn run(c: RingCommand) -> Result<Report> {
    match c {
        RingCommand::Mul(a) => mul(a),
        RingCommand::TwistedMul(a) => twisted_mul(a),
        RingCommand::JnProject(a) => jn_project(a),
        RingCommand::Dual(a) => dual(a),
    }
}

fn series_text(s: &TruncatedSeries<Integer>) -> String {
    let terms: Vec<(Integer, String)> = s
        .terms()
        .map(|(e, c)| (c.clone(), text::monomial(e)))
        .collect();
    format!("{}  (order {})\n", text::signed_sum(&terms), s.order())
}

fn group_text(x: &GroupRingElt) -> String {
    let terms: Vec<(Integer, String)> = x
        .terms()
        .map(|(g, c)| {
            let h = if g.iter().all(num_traits::Zero::is_zero) {
                "1".to_string()
            } else {
                format!("h{}", text::tuple(g))
            };
            (c.clone(), h)
        })
        .collect();
    text::signed_sum(&terms)
}

fn twisted_text(s: &TruncatedSeries<GroupRingElt>) -> String {
    if s.is_zero() {
        return format!("0  (order {})\n", s.order());
    }
    let parts: Vec<String> = s
        .terms()
        .map(|(e, c)| format!("({}) τ^{}", group_text(c), text::tuple(e)))
        .collect();
    format!("{}  (order {})\n", parts.join(" + "), s.order())
}

fn mul(a: PairArgs) -> Result<Report> {
    let (_, pa) = doc::read_document(&a.a, &["series"])?;
    let (_, pb) = doc::read_document(&a.b, &["series"])?;
    let (x, y) = (doc::series(&pa)?, doc::series(&pb)?);
    let z = mul_truncated(&x, &y).map_err(domain)?;
    let payload = doc::series_json(&z);
    let t = series_text(&z);
    Ok(Report::new("series", json!({"a": pa, "b": pb}), payload, t))
}

fn twisted_mul(a: TwistedArgs) -> Result<Report> {
    let (_, pa) = doc::read_document(&a.a, &["series"])?;
    let (_, pb) = doc::read_document(&a.b, &["series"])?;
    let (_, pt) = doc::read_document(&a.twist, &["twist"])?;
    let tw = doc::twist(&pt)?;
    let (x, y) = (doc::twisted_series(&pa)?, doc::twisted_series(&pb)?);
    let z = twisted_mul_truncated(&x, &y, &tw).map_err(domain)?;
    let payload = doc::twisted_series_json(&z, tw.rank());
    let t = twisted_text(&z);
    Ok(Report::new(
        "series",
        json!({"a": pa, "b": pb, "twist": doc::twist_json(&tw)}),
        payload,
        t,
    ))
}

fn reorder<C: novikov_core::ring::Coefficient>(
    s: &TruncatedSeries<C>,
    order: Option<u32>,
) -> Result<TruncatedSeries<C>> {
    match order {
        None => Ok(s.clone()),
        Some(n) if n > s.order() => Err(domain(format!(
            "cannot raise the truncation order from {} to {n}",
            s.order()
        ))),
        Some(n) => {
            TruncatedSeries::from_terms(s.vars(), n, s.terms().map(|(e, c)| (e.clone(), c.clone())))
                .map_err(domain)
        }
    }
}

fn jn_project(a: ProjectArgs) -> Result<Report> {
    let (_, pa) = doc::read_document(&a.a, &["series"])?;
    if a.var == 0 {
        return Err(parse_err("--var starts at 1"));
    }
    let i = a.var - 1;
    let input = json!({"a": pa, "var": a.var, "order": a.order});
    let (vars, order, support, terms, text_terms): (usize, u32, Vec<Vec<u32>>, Vec<Value>, String) =
        if doc::is_twisted_series(&pa) {
            let s = reorder(&doc::twisted_series(&pa)?, a.order)?;
            let p = s.j_n_project(i).map_err(domain)?;
            let terms = p
                .terms
                .iter()
                .map(|(e, c)| json!({"exp": e, "coeff": doc::group_ring_json(c)}))
                .collect();
            let shown = TruncatedSeries::from_terms(s.vars(), s.order(), p.terms.clone())
                .map_err(domain)?;
            (
                s.vars(),
                s.order(),
                s.terms().map(|(e, _)| e.clone()).collect(),
                terms,
                twisted_text(&shown),
            )
        } else {
            let s = reorder(&doc::series(&pa)?, a.order)?;
            let p = s.j_n_project(i).map_err(domain)?;
            let terms = p
                .terms
                .iter()
                .map(|(e, c)| json!({"exp": e, "coeff": doc::int_json(c)}))
                .collect();
            let shown: Vec<(Integer, String)> = p
                .terms
                .iter()
                .map(|(e, c)| (c.clone(), text::monomial(e)))
                .collect();
            (
                s.vars(),
                s.order(),
                s.terms().map(|(e, _)| e.clone()).collect(),
                terms,
                format!("{}\n", text::signed_sum(&shown)),
            )
        };
    let kernel = projection_kernel(vars, order, &support).map_err(domain)?;
    let payload = json!({
        "vars": vars,
        "order": order,
        "var": a.var,
        "terms": terms,
        "joint_kernel_dim_on_support": kernel.len(),
    });
    let mut t = format!("image mod t{}^{order}:\n  {}", text::sub(a.var), text_terms);
    t.push_str(&format!(
        "kernel of the joint projection on the support: dimension {}\n",
        kernel.len()
    ));
    Ok(Report::new("report", input, payload, t))
}

/// Parses `1,0:3;0,-1:2`.
fn parse_element(s: &str, rank: usize) -> Result<GroupRingElt> {
    let terms = s
        .split(';')
        .map(|part| {
            let (g, c) = part
                .split_once(':')
                .ok_or_else(|| parse_err(format!("term `{part}` is not of the form g:c")))?;
            let c: Integer = c
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("`{}` is not an integer", c.trim())))?;
            Ok((doc::integer_list(g)?, c))
        })
        .collect::<Result<Vec<_>>>()?;
    GroupRingElt::from_terms(rank, terms).map_err(domain)
}

fn dual(a: DualArgs) -> Result<Report> {
    let (_, pf) = doc::read_document(&a.family, &["form-family"])?;
    let family = doc::form_family(&pf)?;
    let lam = parse_element(&a.element, family.dim())?;
    let d = to_dual_coordinates(&lam, &family).map_err(domain)?;
    let input =
        json!({"family": {"forms": pf["forms"].clone()}, "element": doc::group_ring_json(&lam)});
    let payload = json!({
        "terms": d
            .terms
            .iter()
            .map(|(coords, c)| json!({"coords": doc::ints_json(coords), "coeff": doc::int_json(c)}))
            .collect::<Vec<_>>(),
        "member": d.member,
    });
    let shown: Vec<(Integer, String)> = d
        .terms
        .iter()
        .map(|(coords, c)| {
            let m = if !coords.iter().any(num_traits::Signed::is_negative) {
                let e: Vec<u64> = coords
                    .iter()
                    .map(|x| u64::try_from(x).unwrap_or(u64::MAX))
                    .collect();
                text::monomial(&e)
            } else {
                format!("t^{}", text::tuple(coords))
            };
            (c.clone(), m)
        })
        .collect();
    let t = format!(
        "{}\npolynomial in t: {}\n",
        text::signed_sum(&shown),
        text::yes_no(d.member)
    );
    Ok(Report::new("report", input, payload, t))
}
