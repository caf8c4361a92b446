use std::io::Read;

use novikov_core::arith::{
    parse_rational, IntMatrix, IntVector, Integer, Poly, PolyMatrix, Rational,
};
use novikov_core::complex::{BaseRing, ChainMap, FreeComplex};
use novikov_core::cone::FormFamily;
use novikov_core::incidence::DescentData;
use novikov_core::ring::{GroupRingElt, SignedElt, TruncatedSeries, TwistData};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{domain, parse_err, Result};

pub const VERSION: u64 = 1;
pub const MAX_BITS_VAR: &str = "NOVIKOV_CONE_MAX_BITS";

/// Reads `path` (`-` for stdin) as JSON, rejecting floating-point literals.
pub fn read_json(path: &str) -> Result<Value> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| parse_err(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| parse_err(format!("{path}: {e}")))?
    };
    parse_json(&text)
}

pub fn parse_json(text: &str) -> Result<Value> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    reject_floats(&v)?;
    Ok(v)
}

fn reject_floats(v: &Value) -> Result<()> {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            if s.contains(['.', 'e', 'E']) {
                return Err(parse_err(format!(
                    "floating-point literal {s} is not allowed"
                )));
            }
            Ok(())
        }
        Value::Array(xs) => xs.iter().try_for_each(reject_floats),
        Value::Object(m) => m.values().try_for_each(reject_floats),
        _ => Ok(()),
    }
}

/// Reads an envelope and returns its schema tag and payload.
pub fn read_document(path: &str, accepted: &[&str]) -> Result<(String, Value)> {
    let v = read_json(path)?;
    let (schema, payload) = open_document(v, accepted).map_err(|e| match e {
        crate::error::CliError::Parse(m) => parse_err(format!("{path}: {m}")),
        other => other,
    })?;
    if let Some(cap) = max_bits()? {
        check_bits(&payload, cap, path)?;
    }
    Ok((schema, payload))
}

pub fn open_document(v: Value, accepted: &[&str]) -> Result<(String, Value)> {
    let Value::Object(mut m) = v else {
        return Err(parse_err("document must be a JSON object"));
    };
    let schema = match m.get("schema") {
        Some(Value::String(s)) => s.clone(),
        _ => return Err(parse_err("missing schema tag")),
    };
    if !accepted.contains(&schema.as_str()) {
        return Err(parse_err(format!(
            "schema `{schema}` where {} was expected",
            accepted.join(" or ")
        )));
    }
    match m.get("version").and_then(Value::as_u64) {
        Some(VERSION) => {}
        _ => {
            return Err(parse_err(format!(
                "unsupported version, expected {VERSION}"
            )))
        }
    }
    let payload = m
        .remove("payload")
        .ok_or_else(|| parse_err("missing payload"))?;
    Ok((schema, payload))
}

pub fn envelope(schema: &str, input: Value, payload: Value) -> Value {
    json!({
        "schema": schema,
        "version": VERSION,
        "input": input,
        "payload": payload,
    })
}

/// The bit cap from the environment, if set.
pub fn max_bits() -> Result<Option<u64>> {
    match std::env::var(MAX_BITS_VAR) {
        Ok(s) => s.trim().parse::<u64>().map(Some).map_err(|_| {
            parse_err(format!(
                "{MAX_BITS_VAR} must be a nonnegative integer, got `{s}`"
            ))
        }),
        Err(_) => Ok(None),
    }
}

/// Fails when any exact number in `v` needs more than `cap` bits.
pub fn check_bits(v: &Value, cap: u64, what: &str) -> Result<()> {
    let too_big = |x: &Integer| x.bits() > cap;
    match v {
        Value::Number(n) => {
            if let Ok(x) = n.to_string().parse::<Integer>() {
                if too_big(&x) {
                    return Err(domain(format!(
                        "{what}: integer with {} bits exceeds {MAX_BITS_VAR}={cap}",
                        x.bits()
                    )));
                }
            }
            Ok(())
        }
        Value::String(s) => {
            if let Ok(r) = parse_rational(s) {
                let bits = r.numer().bits().max(r.denom().bits());
                if bits > cap {
                    return Err(domain(format!(
                        "{what}: number with {bits} bits exceeds {MAX_BITS_VAR}={cap}"
                    )));
                }
            }
            Ok(())
        }
        Value::Array(xs) => xs.iter().try_for_each(|x| check_bits(x, cap, what)),
        Value::Object(m) => m.values().try_for_each(|x| check_bits(x, cap, what)),
        _ => Ok(()),
    }
}

fn field<'a>(m: &'a Value, key: &str) -> Result<&'a Value> {
    m.get(key)
        .ok_or_else(|| parse_err(format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("{what} must be an array")))
}

pub fn usize_of(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| parse_err(format!("{what} must be a nonnegative integer")))
}

pub fn integer(v: &Value) -> Result<Integer> {
    let s = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => return Err(parse_err(format!("expected an integer, found {v}"))),
    };
    s.parse()
        .map_err(|_| parse_err(format!("`{s}` is not an integer")))
}

/// An integer, a `"p/q"` string or a `[p, q]` pair.
pub fn rational(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(_) => Ok(Rational::from_integer(integer(v)?)),
        Value::String(s) => parse_rational(s).map_err(|e| parse_err(e.to_string())),
        Value::Array(xs) if xs.len() == 2 => {
            let (n, d) = (integer(&xs[0])?, integer(&xs[1])?);
            if d.is_zero() {
                return Err(parse_err("zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
        _ => Err(parse_err(format!("expected an exact rational, found {v}"))),
    }
}

pub fn int_vector(v: &Value) -> Result<IntVector> {
    array(v, "vector")?.iter().map(integer).collect()
}

pub fn int_matrix(v: &Value) -> Result<IntMatrix> {
    let rows: Vec<IntVector> = array(v, "matrix")?
        .iter()
        .map(int_vector)
        .collect::<Result<_>>()?;
    IntMatrix::from_rows(rows).map_err(|e| parse_err(e.to_string()))
}

/// A coefficient list, constant term first, or a single scalar.
pub fn poly(v: &Value) -> Result<Poly> {
    match v {
        Value::Array(xs) => Ok(Poly::new(xs.iter().map(rational).collect::<Result<_>>()?)),
        _ => Ok(Poly::constant(rational(v)?)),
    }
}

pub fn poly_matrix(v: &Value, rows: usize, cols: usize, what: &str) -> Result<PolyMatrix> {
    let entries = array(v, what)?;
    if entries.len() != rows {
        return Err(parse_err(format!(
            "{what} has {} rows, expected {rows}",
            entries.len()
        )));
    }
    let rows: Vec<Vec<Poly>> = entries
        .iter()
        .map(|r| array(r, what)?.iter().map(poly).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    PolyMatrix::from_rows_with_cols(rows, cols).map_err(|e| parse_err(format!("{what}: {e}")))
}

pub fn base_ring(s: &str) -> Result<BaseRing> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    match compact.as_str() {
        "Q" => return Ok(BaseRing::Rationals),
        "Q[t]" => return Ok(BaseRing::Polynomials),
        _ => {}
    }
    compact
        .strip_prefix("Q[t]/(t^")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|n| n.parse::<u32>().ok())
        .filter(|&n| n >= 1)
        .map(BaseRing::Truncated)
        .ok_or_else(|| {
            parse_err(format!(
                "unknown base ring `{s}`; use Q, Q[t] or Q[t]/(t^n)"
            ))
        })
}

pub fn complex(v: &Value) -> Result<FreeComplex> {
    let ring = base_ring(
        field(v, "ring")?
            .as_str()
            .ok_or_else(|| parse_err("ring must be a string"))?,
    )?;
    let ranks: Vec<usize> = array(field(v, "ranks")?, "ranks")?
        .iter()
        .map(|x| usize_of(x, "rank"))
        .collect::<Result<_>>()?;
    if ranks.is_empty() {
        return Err(parse_err("ranks must be nonempty"));
    }
    let bs = array(field(v, "boundaries")?, "boundaries")?;
    if bs.len() + 1 != ranks.len() {
        return Err(parse_err(format!(
            "{} degrees need {} boundaries, got {}",
            ranks.len(),
            ranks.len() - 1,
            bs.len()
        )));
    }
    let boundaries = bs
        .iter()
        .enumerate()
        .map(|(i, b)| poly_matrix(b, ranks[i], ranks[i + 1], &format!("d_{}", i + 1)))
        .collect::<Result<_>>()?;
    FreeComplex::new(ring, ranks, boundaries).map_err(domain)
}

pub fn chain_map(v: &Value) -> Result<ChainMap> {
    let source = complex(field(v, "source")?)?;
    let target = complex(field(v, "target")?)?;
    let top = source.top().max(target.top());
    let ms = array(field(v, "maps")?, "maps")?;
    if ms.len() > top + 1 {
        return Err(parse_err(format!(
            "{} maps for degrees 0..={top}",
            ms.len()
        )));
    }
    let maps = ms
        .iter()
        .enumerate()
        .map(|(r, m)| poly_matrix(m, target.rank(r), source.rank(r), &format!("f_{r}")))
        .collect::<Result<_>>()?;
    ChainMap::new(source, target, maps).map_err(domain)
}

pub fn form_family(v: &Value) -> Result<FormFamily> {
    let forms = array(field(v, "forms")?, "forms")?
        .iter()
        .map(int_vector)
        .collect::<Result<_>>()?;
    FormFamily::new(forms).map_err(domain)
}

pub fn descent(v: &Value) -> Result<DescentData> {
    let m = int_matrix(field(v, "matrix")?)?;
    let tau = int_vector(field(v, "tau")?)?;
    let pairing = int_vector(field(v, "pairing")?)?;
    let n0 = match v.get("n0") {
        Some(x) => integer(x)?,
        None => Integer::zero(),
    };
    DescentData::new(m, tau, pairing, n0).map_err(domain)
}

fn exponent(v: &Value) -> Result<Vec<u32>> {
    array(v, "exponent")?
        .iter()
        .map(|x| {
            x.as_u64()
                .and_then(|e| u32::try_from(e).ok())
                .ok_or_else(|| {
                    parse_err(format!("exponent entry {x} must be a nonnegative integer"))
                })
        })
        .collect()
}

fn series_header(v: &Value) -> Result<(usize, u32, &Vec<Value>)> {
    let vars = usize_of(field(v, "vars")?, "vars")?;
    let order = field(v, "order")?
        .as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| parse_err("order must be a nonnegative integer"))?;
    Ok((vars, order, array(field(v, "terms")?, "terms")?))
}

pub fn is_twisted_series(v: &Value) -> bool {
    v.get("rank").is_some()
}

pub fn series(v: &Value) -> Result<TruncatedSeries<Integer>> {
    if is_twisted_series(v) {
        return Err(parse_err(
            "series has group-ring coefficients; use twisted-mul",
        ));
    }
    let (vars, order, terms) = series_header(v)?;
    let terms = terms
        .iter()
        .map(|t| Ok((exponent(field(t, "exp")?)?, integer(field(t, "coeff")?)?)))
        .collect::<Result<Vec<_>>>()?;
    TruncatedSeries::from_terms(vars, order, terms).map_err(domain)
}

pub fn group_ring_elt(v: &Value, rank: usize) -> Result<GroupRingElt> {
    let terms = array(v, "group-ring element")?
        .iter()
        .map(|t| Ok((int_vector(field(t, "g")?)?, integer(field(t, "c")?)?)))
        .collect::<Result<Vec<_>>>()?;
    GroupRingElt::from_terms(rank, terms).map_err(domain)
}

pub fn twisted_series(v: &Value) -> Result<TruncatedSeries<GroupRingElt>> {
    let (vars, order, terms) = series_header(v)?;
    let rank = usize_of(field(v, "rank")?, "rank")?;
    let terms = terms
        .iter()
        .map(|t| {
            Ok((
                exponent(field(t, "exp")?)?,
                group_ring_elt(field(t, "coeff")?, rank)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    TruncatedSeries::from_terms(vars, order, terms).map_err(domain)
}

fn signed_elt(v: &Value) -> Result<SignedElt> {
    let negative = match v.get("negative") {
        None => false,
        Some(b) => b
            .as_bool()
            .ok_or_else(|| parse_err("negative must be a boolean"))?,
    };
    Ok(SignedElt::new(negative, int_vector(field(v, "h")?)?))
}

/// `{rank, sigma: [matrix], comm?: [[{negative?, h}]]}`; an absent
/// commutator table means all `r_ij = 1`.
pub fn twist(v: &Value) -> Result<TwistData> {
    let m = usize_of(field(v, "rank")?, "rank")?;
    let sigma: Vec<IntMatrix> = array(field(v, "sigma")?, "sigma")?
        .iter()
        .map(int_matrix)
        .collect::<Result<_>>()?;
    let k = sigma.len();
    let comm = match v.get("comm") {
        None => vec![vec![SignedElt::identity(m); k]; k],
        Some(c) => array(c, "comm")?
            .iter()
            .map(|row| array(row, "comm row")?.iter().map(signed_elt).collect())
            .collect::<Result<_>>()?,
    };
    TwistData::new(m, sigma, comm).map_err(domain)
}

pub fn int_json(x: &Integer) -> Value {
    serde_json::from_str(&x.to_string()).expect("integer literal")
}

pub fn rat_json(x: &Rational) -> Value {
    if x.is_integer() {
        int_json(x.numer())
    } else {
        Value::String(format!("{}/{}", x.numer(), x.denom()))
    }
}

pub fn ints_json(xs: &[Integer]) -> Value {
    Value::Array(xs.iter().map(int_json).collect())
}

pub fn rats_json(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rat_json).collect())
}

pub fn int_matrix_json(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| ints_json(r)).collect())
}

pub fn poly_json(p: &Poly) -> Value {
    rats_json(p.coeffs())
}

pub fn poly_matrix_json(m: &PolyMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(poly_json).collect()))
            .collect(),
    )
}

pub fn complex_json(c: &FreeComplex) -> Value {
    json!({
        "ring": c.ring().name(),
        "ranks": c.ranks(),
        "boundaries": (1..=c.top()).map(|r| poly_matrix_json(&c.boundary(r))).collect::<Vec<_>>(),
    })
}

pub fn chain_map_json(f: &ChainMap) -> Value {
    json!({
        "source": complex_json(f.source()),
        "target": complex_json(f.target()),
        "maps": f.maps().iter().map(poly_matrix_json).collect::<Vec<_>>(),
    })
}

pub fn series_json(s: &TruncatedSeries<Integer>) -> Value {
    json!({
        "vars": s.vars(),
        "order": s.order(),
        "terms": s
            .terms()
            .map(|(e, c)| json!({"exp": e, "coeff": int_json(c)}))
            .collect::<Vec<_>>(),
    })
}

pub fn group_ring_json(x: &GroupRingElt) -> Value {
    Value::Array(
        x.terms()
            .map(|(g, c)| json!({"g": ints_json(g), "c": int_json(c)}))
            .collect(),
    )
}

pub fn twisted_series_json(s: &TruncatedSeries<GroupRingElt>, rank: usize) -> Value {
    json!({
        "vars": s.vars(),
        "order": s.order(),
        "rank": rank,
        "terms": s
            .terms()
            .map(|(e, c)| json!({"exp": e, "coeff": group_ring_json(c)}))
            .collect::<Vec<_>>(),
    })
}

pub fn twist_json(tw: &TwistData) -> Value {
    let k = tw.vars();
    json!({
        "rank": tw.rank(),
        "sigma": tw.sigma().iter().map(int_matrix_json).collect::<Vec<_>>(),
        "comm": (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let r = tw.comm(i, j);
                        json!({"negative": r.negative, "h": ints_json(&r.h)})
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>(),
    })
}

/// Comma-separated exact rationals, e.g. `610/1,987/1`.
pub fn rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|x| parse_rational(x).map_err(|e| parse_err(e.to_string())))
        .collect()
}

pub fn integer_list(s: &str) -> Result<Vec<Integer>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| parse_err(format!("`{}` is not an integer", x.trim())))
        })
        .collect()
}

pub fn usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| parse_err(format!("`{}` is not a count", x.trim())))
        })
        .collect()
}
