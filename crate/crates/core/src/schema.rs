//! JSON forms of divisors, conic matrices, PL cycles, subspaces, hypersurfaces
//! and table rows. Exact rationals travel as `"p/q"` strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::conic::{BinaryForm, ConicMatrix};
use crate::error::{Error, Result};
use crate::lattice::ClassVector;
use crate::search::TableRow;
use crate::topology::{Closure, GreatSubsphere, HypersurfaceSpec, PLCycle};

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed JSON: {e}")))
}

/// Compact form with sorted keys.
pub fn canonical(v: &Value) -> String {
    v.to_string()
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value, what: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::Input(format!("bad {what}: {e}")))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Input(format!("bad rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn rational_string(q: &BigRational) -> String {
    q.to_string()
}

/// Integers are JSON numbers when they fit in `i64`, strings otherwise.
pub fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => json!(x),
        None => json!(n.to_string()),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawInt {
    Small(i64),
    Text(String),
}

impl RawInt {
    fn big(&self) -> Result<BigInt> {
        match self {
            RawInt::Small(x) => Ok(BigInt::from(*x)),
            RawInt::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("bad integer {s:?}"))),
        }
    }
}

fn bigs(raw: &[RawInt]) -> Result<Vec<BigInt>> {
    raw.iter().map(RawInt::big).collect()
}

fn rationals(raw: &[String]) -> Result<Vec<BigRational>> {
    raw.iter().map(|s| parse_rational(s)).collect()
}

fn rational_list(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(|q| json!(rational_string(q))).collect())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDivisor {
    basis: Vec<String>,
    coeffs: Vec<RawInt>,
}

pub fn divisor_to_json(basis: &[String], coeffs: &ClassVector) -> Value {
    json!({
        "basis": basis,
        "coeffs": coeffs.coeffs().iter().map(int_json).collect::<Vec<_>>(),
    })
}

pub fn divisor_from_json(v: &Value) -> Result<(Vec<String>, ClassVector)> {
    let raw: RawDivisor = from_value(v, "divisor")?;
    if raw.basis.len() != raw.coeffs.len() {
        return Err(Error::DimensionMismatch {
            expected: raw.basis.len(),
            found: raw.coeffs.len(),
        });
    }
    Ok((raw.basis, ClassVector::new(bigs(&raw.coeffs)?)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawForm {
    degree: usize,
    coeffs: Vec<RawInt>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConic {
    splitting: [i64; 3],
    entries: [[RawForm; 3]; 3],
}

pub fn form_to_json(f: &BinaryForm) -> Value {
    json!({
        "degree": f.degree(),
        "coeffs": f.coeffs().iter().map(int_json).collect::<Vec<_>>(),
    })
}

pub fn form_from_json(v: &Value) -> Result<BinaryForm> {
    let raw: RawForm = from_value(v, "binary form")?;
    BinaryForm::new(raw.degree, bigs(&raw.coeffs)?)
}

pub fn conic_to_json(m: &ConicMatrix) -> Value {
    let entries: Vec<Value> = m
        .entries()
        .iter()
        .map(|row| Value::Array(row.iter().map(form_to_json).collect()))
        .collect();
    json!({ "splitting": m.splitting(), "entries": entries })
}

pub fn conic_from_json(v: &Value) -> Result<ConicMatrix> {
    let raw: RawConic = from_value(v, "conic matrix")?;
    let mut forms = Vec::with_capacity(9);
    for row in &raw.entries {
        for f in row {
            forms.push(BinaryForm::new(f.degree, bigs(&f.coeffs)?)?);
        }
    }
    let mut it = forms.into_iter();
    let entries: [[BinaryForm; 3]; 3] =
        std::array::from_fn(|_| std::array::from_fn(|_| it.next().expect("nine entries")));
    ConicMatrix::new(raw.splitting, entries)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCycle {
    ambient: usize,
    closure: String,
    points: Vec<Vec<String>>,
}

pub fn cycle_to_json(c: &PLCycle) -> Value {
    json!({
        "ambient": c.ambient(),
        "closure": c.closure().to_string(),
        "points": c.points().iter().map(|p| rational_list(p)).collect::<Vec<_>>(),
    })
}

pub fn cycle_from_json(v: &Value) -> Result<PLCycle> {
    let raw: RawCycle = from_value(v, "cycle")?;
    let closure: Closure = raw.closure.parse()?;
    let points = raw
        .points
        .iter()
        .map(|p| rationals(p))
        .collect::<Result<Vec<_>>>()?;
    PLCycle::new(raw.ambient, closure, points)
}

/// A single cycle object or an array of them.
pub fn cycles_from_json(v: &Value) -> Result<Vec<PLCycle>> {
    match v {
        Value::Array(items) => items.iter().map(cycle_from_json).collect(),
        _ => Ok(vec![cycle_from_json(v)?]),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubspace {
    normals: Vec<Vec<String>>,
}

pub fn subspace_to_json(s: &GreatSubsphere) -> Value {
    json!({ "normals": s.normals().iter().map(|n| rational_list(n)).collect::<Vec<_>>() })
}

/// The ambient dimension is one less than the length of the normals.
pub fn subspace_from_json(v: &Value) -> Result<GreatSubsphere> {
    let raw: RawSubspace = from_value(v, "subspace")?;
    let normals = raw
        .normals
        .iter()
        .map(|n| rationals(n))
        .collect::<Result<Vec<_>>>()?;
    let len = normals.first().map_or(0, Vec::len);
    if len < 3 {
        return Err(Error::Input("normals need at least three coordinates".into()));
    }
    GreatSubsphere::new(len - 1, normals)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    exponents: [u32; 4],
    coeff: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHypersurface {
    terms: Vec<RawTerm>,
}

pub fn hypersurface_to_json(h: &HypersurfaceSpec) -> Value {
    let terms: Vec<Value> = h
        .terms()
        .iter()
        .map(|(e, c)| json!({ "exponents": e, "coeff": rational_string(c) }))
        .collect();
    json!({ "terms": terms })
}

pub fn hypersurface_from_json(v: &Value) -> Result<HypersurfaceSpec> {
    let raw: RawHypersurface = from_value(v, "hypersurface")?;
    let terms = raw
        .terms
        .iter()
        .map(|t| Ok((t.exponents, parse_rational(&t.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    HypersurfaceSpec::new(terms)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSection {
    splitting: [i64; 3],
    roots: [Vec<String>; 3],
}

/// `{"splitting": [a1, a2, a3], "roots": [[...], [...], [...]]}` for a diagonal
/// section with prescribed real singular fibers.
pub fn section_spec_from_json(v: &Value) -> Result<([i64; 3], [Vec<BigRational>; 3])> {
    let raw: RawSection = from_value(v, "section spec")?;
    let [r0, r1, r2] = &raw.roots;
    Ok((raw.splitting, [rationals(r0)?, rationals(r1)?, rationals(r2)?]))
}

/// A comma-separated rational point such as `1,0,-1/2,0`.
pub fn parse_point(s: &str) -> Result<Vec<BigRational>> {
    s.split(',').map(parse_rational).collect()
}

pub fn table_row_to_json(row: &TableRow) -> Value {
    let divisor = match &row.divisor {
        None => Value::Null,
        Some(d) => json!({
            "basis": d.basis,
            "coeffs": d.coeffs.coeffs().iter().map(int_json).collect::<Vec<_>>(),
            "text": d.text(),
            "ell": int_json(&d.ell),
            "genus": int_json(&d.genus),
            "very_ample": d.very_ample.to_string(),
        }),
    };
    json!({
        "surface": row.surface,
        "degree": row.degree,
        "s": row.s,
        "r": row.r,
        "divisor": divisor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip(text: &str, f: impl Fn(&Value) -> Result<Value>) {
        let v = parse(text).unwrap();
        let once = f(&v).unwrap();
        assert_eq!(canonical(&once), canonical(&v));
        assert_eq!(canonical(&f(&once).unwrap()), canonical(&once));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-6/4").unwrap(), BigRational::new((-3).into(), 2.into()));
        assert_eq!(rational_string(&parse_rational("4/2").unwrap()), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(parse_point("1,0,-1/2").unwrap().len(), 3);
    }

    #[test]
    fn divisors() {
        round_trip(r#"{"basis":["F","K"],"coeffs":[1,-1]}"#, |v| {
            let (b, c) = divisor_from_json(v)?;
            Ok(divisor_to_json(&b, &c))
        });
        let huge = r#"{"basis":["K"],"coeffs":["123456789012345678901234567890"]}"#;
        round_trip(huge, |v| {
            let (b, c) = divisor_from_json(v)?;
            Ok(divisor_to_json(&b, &c))
        });
        assert!(divisor_from_json(&parse(r#"{"basis":["F"],"coeffs":[1,2]}"#).unwrap()).is_err());
    }

    #[test]
    fn conics() {
        let f = |d: usize, c: &str| format!(r#"{{"coeffs":{c},"degree":{d}}}"#);
        let z = f(2, "[0,0,0]");
        let text = format!(
            r#"{{"entries":[[{},{z},{z}],[{z},{},{z}],[{z},{z},{}]],"splitting":[1,1,1]}}"#,
            f(2, "[0,1,0]"),
            f(2, "[-1,0,1]"),
            f(2, "[-4,0,1]"),
        );
        round_trip(&text, |v| Ok(conic_to_json(&conic_from_json(v)?)));
        let bad = text.replace(r#""splitting":[1,1,1]"#, r#""splitting":[1,1,2]"#);
        assert!(conic_from_json(&parse(&bad).unwrap()).is_err());
    }

    #[test]
    fn cycles_and_subspaces() {
        let c = r#"{"ambient":2,"closure":"antipode","points":[["1","2","-1"],["1","2","1/3"]]}"#;
        round_trip(c, |v| Ok(cycle_to_json(&cycle_from_json(v)?)));
        let s = r#"{"normals":[["0","1","0"],["0","0","1"]]}"#;
        round_trip(s, |v| Ok(subspace_to_json(&subspace_from_json(v)?)));
        assert_eq!(cycles_from_json(&parse(&format!("[{c},{c}]")).unwrap()).unwrap().len(), 2);
        assert!(cycle_from_json(&parse(&c.replace("antipode", "torus")).unwrap()).is_err());
    }

    #[test]
    fn hypersurfaces() {
        let h = r#"{"terms":[{"coeff":"1","exponents":[0,0,0,2]},{"coeff":"-1/2","exponents":[2,0,0,0]}]}"#;
        round_trip(h, |v| Ok(hypersurface_to_json(&hypersurface_from_json(v)?)));
        let bad = r#"{"terms":[{"coeff":"1","exponents":[0,0,0,1]},{"coeff":"1","exponents":[2,0,0,0]}]}"#;
        assert!(hypersurface_from_json(&parse(bad).unwrap()).is_err());
    }
}
