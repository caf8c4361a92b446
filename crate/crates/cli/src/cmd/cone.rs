use clap::Args;
use novikov_core::arith::{sin2_between, Rational};
use novikov_core::cone::{
    admissibility_witness, forms_of, regular_family as build, FormFamily, TargetDirection,
};
use num_traits::Signed;
use serde_json::{json, Value};

use super::Report;
use crate::doc;
use crate::error::{domain, parse_err, Result};
use crate::text;

#[derive(Args)]
pub struct RegularFamilyArgs {
    /// Target direction as comma-separated exact rationals, e.g. `610/1,987/1`.
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    /// Bound on the squared sine between each basis vector and the target.
    ///
    /// Angle to bound: 0.1 deg ~ 3/1000000, 1 deg ~ 3/10000,
    /// 5 deg ~ 7/1000, 10 deg ~ 3/100.
    #[arg(long)]
    tol_sin2: String,
    /// Jitter the target off lattice rays and walls before subdividing.
    #[arg(long)]
    perturb: bool,
}

#[derive(Args)]
pub struct AdmissibleArgs {
    /// Forms separated by `;`, coefficients by `,`, e.g. `1;-1` or `1,0;0,1`.
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "family",
        required_unless_present = "family"
    )]
    forms: Option<String>,
    /// A form-family document (`-` for stdin).
    #[arg(long)]
    family: Option<String>,
}

pub fn regular_family(a: RegularFamilyArgs) -> Result<Report> {
    let v = doc::rational_list(&a.v)?;
    let tol =
        novikov_core::arith::parse_rational(&a.tol_sin2).map_err(|e| parse_err(e.to_string()))?;
    let mut target = TargetDirection::new(v.clone(), tol.clone()).map_err(domain)?;
    if a.perturb {
        target = target.perturbed();
    }
    let fam = build(&target).map_err(domain)?;
    let basis = &fam.basis;
    let forms = forms_of(basis);

    let tv = target.v();
    let sin2: Vec<Rational> = basis
        .vectors()
        .iter()
        .map(|u| sin2_between(tv, u))
        .collect::<std::result::Result<_, _>>()
        .map_err(domain)?;
    let unimodular = basis.is_unimodular();
    let positive = fam.coefficients.iter().all(Signed::is_positive);
    let within = sin2.iter().all(|s| s < &tol);
    let first = basis.vectors().iter().all(|u| u[0].is_positive());
    let decreasing = fam.trace.is_strictly_decreasing();

    let trace: Vec<Value> = fam
        .trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "abs_det": doc::int_json(&s.abs_det),
                "point": s.point.as_deref().map(doc::ints_json),
                "replaced": s.replaced,
            })
        })
        .collect();
    let input = json!({
        "v": doc::rats_json(&v),
        "tol_sin2": doc::rat_json(&tol),
        "perturb": a.perturb,
    });
    let payload = json!({
        "forms": forms.forms().iter().map(|f| doc::ints_json(f)).collect::<Vec<_>>(),
        "basis": basis.vectors().iter().map(|u| doc::ints_json(u)).collect::<Vec<_>>(),
        "target": doc::rats_json(tv),
        "coefficients": doc::rats_json(&fam.coefficients),
        "sin2": doc::rats_json(&sin2),
        "height": doc::int_json(&fam.height),
        "trace": trace,
        "checks": {
            "unimodular": unimodular,
            "positive_coefficients": positive,
            "within_tolerance": within,
            "positive_first_coordinates": first,
            "trace_strictly_decreasing": decreasing,
        },
    });

    let mut t = String::new();
    t.push_str(&format!("target v = {}\n", text::rat_tuple(tv)));
    t.push_str(&format!("tolerance sin² < {}\n", text::rat(&tol)));
    t.push_str(&format!("height N = {}\n", fam.height));
    t.push_str(&format!("basis (det = {}):\n", basis.det()));
    for (i, u) in basis.vectors().iter().enumerate() {
        t.push_str(&format!(
            "  u{} = {}  coefficient {}  sin² {}\n",
            text::sub(i + 1),
            text::tuple(u),
            text::rat(&fam.coefficients[i]),
            text::rat(&sin2[i])
        ));
    }
    t.push_str("forms:\n");
    for (i, f) in forms.forms().iter().enumerate() {
        t.push_str(&format!("  ξ{} = {}\n", text::sub(i + 1), text::tuple(f)));
    }
    let dets: Vec<String> = fam.trace.dets().iter().map(ToString::to_string).collect();
    t.push_str(&format!("|det| trace: {}\n", dets.join(" > ")));
    for (name, ok) in [
        ("unimodular", unimodular),
        ("positive coefficients", positive),
        ("within tolerance", within),
        ("positive first coordinates", first),
        ("trace strictly decreasing", decreasing),
    ] {
        t.push_str(&format!("check {name}: {}\n", text::yes_no(ok)));
    }
    Ok(Report::new("form-family", input, payload, t))
}

/// Parses `1,0;0,1` into forms.
pub fn parse_forms(s: &str) -> Result<FormFamily> {
    let forms = s
        .split(';')
        .map(doc::integer_list)
        .collect::<Result<Vec<_>>>()?;
    FormFamily::new(forms).map_err(domain)
}

pub fn admissible(a: AdmissibleArgs) -> Result<Report> {
    let family = match (&a.forms, &a.family) {
        (Some(s), _) => parse_forms(s)?,
        (None, Some(path)) => {
            let (_, payload) = doc::read_document(path, &["form-family"])?;
            doc::form_family(&payload)?
        }
        (None, None) => return Err(parse_err("one of --forms or --family is required")),
    };
    let witness = admissibility_witness(&family);
    let forms_json: Vec<Value> = family.forms().iter().map(|f| doc::ints_json(f)).collect();
    let input = json!({ "forms": forms_json });
    let payload = json!({
        "forms": forms_json,
        "admissible": witness.is_some(),
        "witness": witness.as_deref().map(doc::ints_json),
    });
    let mut t = String::new();
    for (i, f) in family.forms().iter().enumerate() {
        t.push_str(&format!("ξ{} = {}\n", text::sub(i + 1), text::tuple(f)));
    }
    match &witness {
        Some(g) => {
            let values: Vec<String> = family
                .forms()
                .iter()
                .map(|f| novikov_core::arith::dot_int(f, g).to_string())
                .collect();
            t.push_str(&format!(
                "admissible: yes, witness g = {} with ξ(g) = {}\n",
                text::tuple(g),
                text::tuple(&values)
            ));
        }
        None => t.push_str("admissible: no, no lattice point is negative under every form\n"),
    }
    Ok(Report::new("report", input, payload, t))
}
