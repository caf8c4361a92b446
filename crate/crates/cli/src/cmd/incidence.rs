use clap::Args;
use novikov_core::arith::{Integer, Rational};
use novikov_core::incidence::{
    appendix_example, appendix_growth, appendix_radius, closed_form_check, convergence_radius,
    detect_rational, incidence_series_bounded, is_symplectic, DescentData, IncidenceError,
    QuadSurd, RadiusEstimate,
};
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::Report;
use crate::doc;
use crate::error::{domain, parse_err, Result};
use crate::text;

#[derive(Args)]
pub struct IncidenceArgs {
    /// Matrix or descent document (`-` for stdin).
    #[arg(
        long,
        conflicts_with = "appendix_q",
        required_unless_present = "appendix_q"
    )]
    matrix: Option<String>,
    /// Use the four-dimensional example family with parameter q >= 3.
    #[arg(long, allow_hyphen_values = true)]
    appendix_q: Option<String>,
    /// Vector iterated by the matrix, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    /// Vector paired with each iterate, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    pairing: Option<String>,
    /// Constant coefficient.
    #[arg(long, allow_hyphen_values = true)]
    n0: Option<String>,
    /// Number of coefficients to compute.
    #[arg(long, default_value_t = 10)]
    terms: usize,
    /// Look for a rational generating function P/Q.
    #[arg(long)]
    detect_rational: bool,
    /// Radius of convergence of the detected rational function.
    #[arg(long)]
    radius: bool,
}

fn integer_arg(s: &str) -> Result<Integer> {
    s.trim()
        .parse()
        .map_err(|_| parse_err(format!("`{}` is not an integer", s.trim())))
}

fn surd_json(s: &QuadSurd) -> Value {
    json!({
        "a": doc::rat_json(s.a()),
        "b": doc::rat_json(s.b()),
        "d": doc::int_json(s.d()),
        "text": s.to_string(),
    })
}

fn width() -> Rational {
    Rational::new(Integer::one(), Integer::from(10u64.pow(12)))
}

pub fn run(a: IncidenceArgs) -> Result<Report> {
    if a.terms == 0 {
        return Err(parse_err("--terms must be at least 1"));
    }
    let mut input = serde_json::Map::new();
    let (symplectic, mut data, q) = match (&a.appendix_q, &a.matrix) {
        (Some(q), _) => {
            let q = integer_arg(q)?;
            input.insert("appendix_q".into(), doc::int_json(&q));
            let (s, d) = appendix_example(&q).map_err(domain)?;
            (Some(s), d, Some(q))
        }
        (None, Some(path)) => {
            let (schema, p) = doc::read_document(path, &["matrix", "descent"])?;
            input.insert(
                "document".into(),
                json!({"schema": schema, "payload": p.clone()}),
            );
            let d = if schema == "descent" {
                doc::descent(&p)?
            } else {
                let m = doc::int_matrix(&p)?;
                let tau = a
                    .tau
                    .as_deref()
                    .ok_or_else(|| parse_err("--tau is required with a matrix document"))?;
                let pairing = a
                    .pairing
                    .as_deref()
                    .ok_or_else(|| parse_err("--pairing is required with a matrix document"))?;
                DescentData::new(
                    m,
                    doc::integer_list(tau)?,
                    doc::integer_list(pairing)?,
                    Integer::zero(),
                )
                .map_err(domain)?
            };
            (None, d, None)
        }
        (None, None) => return Err(parse_err("one of --matrix or --appendix-q is required")),
    };
    if let Some(tau) = &a.tau {
        data.tau = doc::integer_list(tau)?;
        input.insert("tau".into(), doc::ints_json(&data.tau));
    }
    if let Some(pairing) = &a.pairing {
        data.pairing = doc::integer_list(pairing)?;
        input.insert("pairing".into(), doc::ints_json(&data.pairing));
    }
    if let Some(n0) = &a.n0 {
        data = data.with_n0(integer_arg(n0)?);
        input.insert("n0".into(), doc::int_json(&data.n0));
    }
    let data = DescentData::new(data.m, data.tau, data.pairing, data.n0).map_err(domain)?;
    input.insert("terms".into(), json!(a.terms));
    input.insert("detect_rational".into(), json!(a.detect_rational));
    input.insert("radius".into(), json!(a.radius));

    let cap = doc::max_bits()?;
    let series = incidence_series_bounded(&data, a.terms - 1, cap).map_err(|e| match e {
        IncidenceError::SizeCap { .. } => domain(format!("{e} ({})", doc::MAX_BITS_VAR)),
        other => domain(other),
    })?;
    let coeffs = series.coefficients();

    let mut payload = serde_json::Map::new();
    payload.insert("matrix".into(), doc::int_matrix_json(&data.m));
    payload.insert("tau".into(), doc::ints_json(&data.tau));
    payload.insert("pairing".into(), doc::ints_json(&data.pairing));
    payload.insert("coefficients".into(), doc::ints_json(coeffs));
    let mut t = format!(
        "coefficients n₀..n{}: {}\n",
        text::sub(coeffs.len() - 1),
        text::tuple(coeffs)
    );
    let mut checks = serde_json::Map::new();

    let form = if a.detect_rational || a.radius {
        let f = detect_rational(&series);
        match &f {
            Some(f) => {
                payload.insert(
                    "rational_form".into(),
                    json!({"p": doc::ints_json(&f.p), "q": doc::ints_json(&f.q)}),
                );
                t.push_str(&format!(
                    "rational form: ({}) / ({})\n",
                    text::poly_ascending(&f.p),
                    text::poly_ascending(&f.q)
                ));
            }
            None => {
                payload.insert("rational_form".into(), Value::Null);
                t.push_str("rational form: not confirmed by this prefix\n");
            }
        }
        f
    } else {
        None
    };

    if a.radius {
        let est = form.as_ref().map(convergence_radius);
        let value = match &est {
            None => Value::Null,
            Some(RadiusEstimate::Infinite) => json!({"kind": "infinite"}),
            Some(RadiusEstimate::Exact(s)) => {
                let (lo, hi) = s.enclosure(&width());
                t.push_str(&format!("radius: {s} ≈ {:.12}\n", s.to_f64()));
                json!({
                    "kind": "exact",
                    "value": surd_json(s),
                    "enclosure": [doc::rat_json(&lo), doc::rat_json(&hi)],
                    "approx": format!("{:.12}", s.to_f64()),
                })
            }
            Some(RadiusEstimate::Enclosure { lo, hi }) => {
                let approx = est.as_ref().map(RadiusEstimate::approx).unwrap_or(f64::NAN);
                t.push_str(&format!(
                    "radius in ({}, {}] ≈ {approx:.12}\n",
                    text::rat(lo),
                    text::rat(hi)
                ));
                json!({
                    "kind": "enclosure",
                    "enclosure": [doc::rat_json(lo), doc::rat_json(hi)],
                    "approx": format!("{approx:.12}"),
                })
            }
        };
        match &est {
            None => t.push_str("radius: needs a confirmed rational form\n"),
            Some(RadiusEstimate::Infinite) => t.push_str("radius: infinite\n"),
            _ => {}
        }
        payload.insert("radius".into(), value);
    }

    if let (Some(q), Some(s)) = (&q, &symplectic) {
        let closed = closed_form_check(q, coeffs.len() - 1).map_err(domain)?;
        checks.insert("closed_form".into(), json!(closed));
        checks.insert("symplectic".into(), json!(is_symplectic(s)));
        let one = QuadSurd::rational(Rational::one());
        let product = appendix_radius(q).mul(&appendix_growth(q));
        checks.insert(
            "radius_times_growth_is_one".into(),
            json!(product.as_ref() == Some(&one)),
        );
        if let Some(f) = &form {
            let expected = vec![Integer::one(), -q.clone(), Integer::one()];
            checks.insert("denominator".into(), json!(f.q == expected));
        }
        if let Some(RadiusEstimate::Exact(r)) = form.as_ref().map(convergence_radius) {
            checks.insert(
                "radius_matches_family".into(),
                json!(r == appendix_radius(q)),
            );
        }
        let asymptotic = Rational::new(Integer::one(), q.clone());
        payload.insert(
            "asymptotic_radius".into(),
            json!({"value": doc::rat_json(&asymptotic), "note": "radius ~ 1/q as q grows; the exact radius is 1/A"}),
        );
        t.push_str(&format!(
            "asymptotic radius: 1/{q} (exact radius is 1/A, A = q/2 + √(q²−4)/2)\n"
        ));
        t.push_str(&format!(
            "matrix is symplectic: {}\n",
            text::yes_no(is_symplectic(s))
        ));
        t.push_str(&format!(
            "closed form −4·x_(k−1): {}\n",
            text::yes_no(closed)
        ));
    }
    payload.insert("checks".into(), Value::Object(checks));
    Ok(Report::new(
        "series",
        Value::Object(input),
        Value::Object(payload),
        t,
    ))
}
