use clap::{Args, Subcommand};
use novikov_core::complex::{
    compose_triangle, lift_through, make_epimorphic, BaseRing, ChainMap, FreeComplex,
};
use serde_json::{json, Value};

use super::Report;
use crate::doc;
use crate::error::{domain, Result};
use crate::text;

#[derive(Subcommand)]
pub enum ComplexCommand {
    /// Check that the boundary squares to zero.
    Validate(ComplexArg),
    /// Homology: Betti numbers over Q, Q-dimensions over Q[t]/(t^n),
    /// module structure over Q[t].
    Betti(ComplexArg),
    /// Lift alpha : A -> F through an epimorphism gamma : E -> F with
    /// acyclic kernel.
    Lift(LiftArgs),
    /// Add collapsible summands to the source of phi to make it onto.
    MakeEpi(PhiArg),
    /// Given homology equivalences alpha : A -> D and beta : B -> D, find
    /// gamma : A -> B with beta gamma homotopic to alpha.
    Triangle(TriangleArgs),
}

#[derive(Args)]
pub struct ComplexArg {
    /// Complex document (`-` for stdin).
    #[arg(long)]
    complex: String,
}

#[derive(Args)]
pub struct LiftArgs {
    /// Chain-map document.
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    gamma: String,
}

#[derive(Args)]
pub struct PhiArg {
    #[arg(long)]
    phi: String,
}

#[derive(Args)]
pub struct TriangleArgs {
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    beta: String,
}

pub fn run(c: ComplexCommand) -> Result<Report> {
    match c {
        ComplexCommand::Validate(a) => validate(a),
        ComplexCommand::Betti(a) => betti(a),
        ComplexCommand::Lift(a) => lift(a),
        ComplexCommand::MakeEpi(a) => make_epi(a),
        ComplexCommand::Triangle(a) => triangle(a),
    }
}

fn read_complex(path: &str) -> Result<(Value, FreeComplex)> {
    let (_, p) = doc::read_document(path, &["complex"])?;
    let c = doc::complex(&p)?;
    Ok((p, c))
}

fn read_map(path: &str) -> Result<(Value, ChainMap)> {
    let (_, p) = doc::read_document(path, &["chain-map"])?;
    let f = doc::chain_map(&p)?;
    Ok((p, f))
}

fn validate(a: ComplexArg) -> Result<Report> {
    let (p, c) = read_complex(&a.complex)?;
    let ok = c.validate();
    let failing: Vec<usize> = (2..=c.top())
        .filter(|&r| {
            !c.ring()
                .reduce_matrix(&c.boundary(r - 1).mul(&c.boundary(r)).expect("shapes"))
                .is_zero()
        })
        .collect();
    let payload = json!({
        "ring": c.ring().name(),
        "ranks": c.ranks(),
        "valid": ok,
        "failing_degrees": failing,
    });
    let t = if ok {
        format!(
            "complex over {} with ranks {}: d∘d = 0\n",
            c.ring().name(),
            text::tuple(c.ranks())
        )
    } else {
        format!("d∘d ≠ 0 in degrees {}\n", text::tuple(&failing))
    };
    let mut r = Report::new("report", json!({"complex": p}), payload, t);
    if !ok {
        r.exit = 1;
    }
    Ok(r)
}

fn betti(a: ComplexArg) -> Result<Report> {
    let (p, c) = read_complex(&a.complex)?;
    let input = json!({"complex": p});
    let (payload, t) = match c.ring() {
        BaseRing::Rationals => {
            let b = c.betti().map_err(domain)?;
            let lines: Vec<String> = b
                .iter()
                .enumerate()
                .map(|(k, x)| format!("b{} = {x}", text::sub(k)))
                .collect();
            (
                json!({"ring": "Q", "betti": b}),
                format!("{}\n", lines.join("\n")),
            )
        }
        BaseRing::Truncated(_) => {
            let d = c.homology_dims().map_err(domain)?;
            let lines: Vec<String> = d
                .iter()
                .enumerate()
                .map(|(k, x)| format!("dim_Q H{} = {x}", text::sub(k)))
                .collect();
            (
                json!({"ring": c.ring().name(), "homology_dims": d}),
                format!("{}\n", lines.join("\n")),
            )
        }
        BaseRing::Polynomials => {
            let h = c.homology_poly().map_err(domain)?;
            let modules: Vec<Value> = h
                .iter()
                .map(|m| json!({"free_rank": m.free_rank, "torsion": m.torsion.iter().map(doc::poly_json).collect::<Vec<_>>()}))
                .collect();
            let lines: Vec<String> = h
                .iter()
                .enumerate()
                .map(|(k, m)| {
                    let mut parts = Vec::new();
                    if m.free_rank > 0 {
                        parts.push(if m.free_rank == 1 {
                            "Q[t]".to_string()
                        } else {
                            format!("Q[t]^{}", m.free_rank)
                        });
                    }
                    parts.extend(m.torsion.iter().map(|f| format!("Q[t]/({f})")));
                    let body = if parts.is_empty() {
                        "0".to_string()
                    } else {
                        parts.join(" ⊕ ")
                    };
                    format!("H{} = {body}", text::sub(k))
                })
                .collect();
            (
                json!({"ring": "Q[t]", "homology": modules}),
                format!("{}\n", lines.join("\n")),
            )
        }
    };
    Ok(Report::new("report", input, payload, t))
}

fn lift(a: LiftArgs) -> Result<Report> {
    let (pa, alpha) = read_map(&a.alpha)?;
    let (pg, gamma) = read_map(&a.gamma)?;
    let xi = lift_through(&alpha, &gamma).map_err(domain)?;
    let commutes = gamma.compose(&xi).map_err(domain)? == alpha;
    let chain = xi.validate();
    let payload = json!({
        "xi": doc::chain_map_json(&xi),
        "checks": {"gamma_xi_equals_alpha": commutes, "chain_map": chain},
    });
    let mut t = String::from("lift ξ : A → E\n");
    t.push_str(&maps_text(&xi));
    t.push_str(&format!("check γ∘ξ = α: {}\n", text::yes_no(commutes)));
    t.push_str(&format!("check chain map: {}\n", text::yes_no(chain)));
    Ok(Report::new(
        "chain-map",
        json!({"alpha": pa, "gamma": pg}),
        payload,
        t,
    ))
}

fn make_epi(a: PhiArg) -> Result<Report> {
    let (pp, phi) = read_map(&a.phi)?;
    let ext = make_epimorphic(&phi).map_err(domain)?;
    let onto = ext.phi_prime.is_epimorphic();
    let restricts = ext.phi_prime.compose(&ext.inclusion).map_err(domain)? == phi;
    let payload = json!({
        "summands": ext.summands.iter().map(|s| json!({"degree": s.degree, "rank": s.rank})).collect::<Vec<_>>(),
        "extended": doc::complex_json(&ext.extended),
        "phi_prime": doc::chain_map_json(&ext.phi_prime),
        "checks": {"epimorphic": onto, "restricts_to_phi": restricts},
    });
    let mut t = String::new();
    for s in &ext.summands {
        t.push_str(&format!(
            "collapsible summand of rank {} in degrees {} and {}\n",
            s.rank,
            s.degree,
            s.degree - 1
        ));
    }
    t.push_str(&format!(
        "extended ranks {}\n",
        text::tuple(ext.extended.ranks())
    ));
    t.push_str(&maps_text(&ext.phi_prime));
    t.push_str(&format!(
        "check φ' onto in every degree: {}\n",
        text::yes_no(onto)
    ));
    t.push_str(&format!(
        "check φ' restricts to φ: {}\n",
        text::yes_no(restricts)
    ));
    Ok(Report::new("chain-map", json!({"phi": pp}), payload, t))
}

fn triangle(a: TriangleArgs) -> Result<Report> {
    let (pa, alpha) = read_map(&a.alpha)?;
    let (pb, beta) = read_map(&a.beta)?;
    let tri = compose_triangle(&alpha, &beta).map_err(domain)?;
    let composite = beta.compose(&tri.gamma).map_err(domain)?;
    let homotopy = alpha.homotopic_via(&composite, &tri.homotopy);
    let on_homology = composite.agrees_on_homology(&alpha).ok();
    let payload = json!({
        "gamma": doc::chain_map_json(&tri.gamma),
        "homotopy": tri.homotopy.iter().map(doc::poly_matrix_json).collect::<Vec<_>>(),
        "checks": {"homotopy_witness": homotopy, "agrees_on_homology": on_homology},
    });
    let mut t = String::from("γ : A → B\n");
    t.push_str(&maps_text(&tri.gamma));
    t.push_str(&format!(
        "check α − β∘γ = dh + hd: {}\n",
        text::yes_no(homotopy)
    ));
    match on_homology {
        Some(ok) => t.push_str(&format!("check H(β)∘H(γ) = H(α): {}\n", text::yes_no(ok))),
        None => t.push_str("check H(β)∘H(γ) = H(α): implied by the homotopy over Q[t]\n"),
    }
    Ok(Report::new(
        "chain-map",
        json!({"alpha": pa, "beta": pb}),
        payload,
        t,
    ))
}

fn maps_text(f: &ChainMap) -> String {
    let mut t = String::new();
    for (r, m) in f.maps().iter().enumerate() {
        let rows: Vec<String> = m
            .to_rows()
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        t.push_str(&format!("  degree {r}: [{}]\n", rows.join(", ")));
    }
    t
}
