//! JSON exchange formats with validating decoders.
//!
//! Scalars are field-dependent: rationals are `"a/b"` strings, tower
//! elements are `{"level": k, "coeffs": ["c0", ...]}` with base-p
//! digits; Laurent polynomials map degree strings to scalars; matrices
//! are `{"rows", "cols", "entries"}` with a nested row-major array.
//! Decoders validate everything against the supplied field context and
//! report malformed data as [`Error::Invalid`].

use std::str::FromStr;

use num::{BigInt, BigRational, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::field::{Field, Rationals, Ring};
use crate::laurent::{LaurentPoly, LaurentRing};
use crate::matrix::Matrix;
use crate::tower::Tower;
use crate::tuple::{RankCertificate, RankValue};
use crate::witness::{TargetCorner, TuplePoint, VerifyOutcome, WitnessCurve};

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(format!("{what} must be a JSON object")))
}

fn get<'a>(m: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| bad(format!("{what} is missing the \"{key}\" field")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| bad(format!("{what} must be a nonnegative integer")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be a JSON array")))
}

/// Field-specific scalar encoding next to the generic structure codecs.
pub trait JsonField: Field {
    fn scalar_to_json(&self, e: &Self::Elem) -> Value;
    fn scalar_from_json(&self, v: &Value) -> Result<Self::Elem>;
    /// Enough data to reconstruct the field with [`field_from_json`].
    fn config_to_json(&self) -> Value;
}

impl JsonField for Rationals {
    fn scalar_to_json(&self, e: &BigRational) -> Value {
        Value::String(format!("{}/{}", e.numer(), e.denom()))
    }

    fn scalar_from_json(&self, v: &Value) -> Result<BigRational> {
        let s = v
            .as_str()
            .ok_or_else(|| bad("rational scalar must be a string like \"a/b\""))?;
        let mut parts = s.splitn(2, '/');
        let numer = parts.next().unwrap_or("");
        let numer = BigInt::from_str(numer.trim())
            .map_err(|_| bad(format!("bad rational numerator in {s:?}")))?;
        let denom = match parts.next() {
            Some(d) => BigInt::from_str(d.trim())
                .map_err(|_| bad(format!("bad rational denominator in {s:?}")))?,
            None => BigInt::from(1),
        };
        if denom.is_zero() {
            return Err(bad(format!("zero denominator in {s:?}")));
        }
        Ok(BigRational::new(numer, denom))
    }

    fn config_to_json(&self) -> Value {
        json!({ "kind": "rational" })
    }
}

impl JsonField for Tower {
    fn scalar_to_json(&self, e: &crate::tower::TowerElem) -> Value {
        let coeffs: Vec<Value> =
            e.coeffs().iter().map(|c| Value::String(c.to_string())).collect();
        json!({ "level": e.level(), "coeffs": coeffs })
    }

    fn scalar_from_json(&self, v: &Value) -> Result<crate::tower::TowerElem> {
        let m = obj(v, "tower scalar")?;
        let level = get(m, "level", "tower scalar")?;
        let level = level
            .as_u64()
            .and_then(|x| u32::try_from(x).ok())
            .ok_or_else(|| bad("tower level must be a small nonnegative integer"))?;
        let coeffs = as_array(get(m, "coeffs", "tower scalar")?, "tower coeffs")?;
        let coeffs: Vec<u64> = coeffs
            .iter()
            .map(|c| match c {
                Value::Number(n) => {
                    n.as_u64().ok_or_else(|| bad("tower coefficient must be nonnegative"))
                }
                Value::String(s) => {
                    u64::from_str(s.trim()).map_err(|_| bad(format!("bad tower coefficient {s:?}")))
                }
                _ => Err(bad("tower coefficient must be a number or string")),
            })
            .collect::<Result<_>>()?;
        self.elem_from_parts(level, coeffs)
    }

    fn config_to_json(&self) -> Value {
        let adjoined: Vec<Value> =
            self.adjoined_snapshot().iter().map(|e| self.scalar_to_json(e)).collect();
        json!({ "kind": "tower", "prime": self.prime(), "adjoined": adjoined })
    }
}

/// Runtime field selection decoded from a config object.
#[derive(Debug, Clone)]
pub enum AnyField {
    Rational(Rationals),
    Tower(Tower),
}

pub fn field_from_json(v: &Value) -> Result<AnyField> {
    let m = obj(v, "field config")?;
    match get(m, "kind", "field config")?.as_str() {
        Some("rational") => Ok(AnyField::Rational(Rationals)),
        Some("tower") => {
            let prime = get(m, "prime", "tower config")?
                .as_u64()
                .ok_or_else(|| bad("tower prime must be an integer"))?;
            let mut chain = Vec::new();
            if let Some(adj) = m.get("adjoined") {
                for e in as_array(adj, "adjoined chain")? {
                    let em = obj(e, "adjoined element")?;
                    let level = get(em, "level", "adjoined element")?
                        .as_u64()
                        .and_then(|x| u32::try_from(x).ok())
                        .ok_or_else(|| bad("adjoined level must be a small integer"))?;
                    let coeffs = as_array(get(em, "coeffs", "adjoined element")?, "coeffs")?
                        .iter()
                        .map(|c| match c {
                            Value::Number(n) => n
                                .as_u64()
                                .ok_or_else(|| bad("adjoined coefficient must be nonnegative")),
                            Value::String(s) => u64::from_str(s.trim())
                                .map_err(|_| bad(format!("bad adjoined coefficient {s:?}"))),
                            _ => Err(bad("adjoined coefficient must be a number or string")),
                        })
                        .collect::<Result<Vec<u64>>>()?;
                    chain.push((level, coeffs));
                }
            }
            Ok(AnyField::Tower(Tower::from_adjoined(prime, &chain)?))
        }
        _ => Err(bad("field config kind must be \"rational\" or \"tower\"")),
    }
}

pub fn matrix_to_json<F: JsonField>(f: &F, m: &Matrix<F>) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array((0..m.cols()).map(|j| f.scalar_to_json(m.at(i, j))).collect())
        })
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

pub fn matrix_from_json<F: JsonField>(f: &F, v: &Value) -> Result<Matrix<F>> {
    let m = obj(v, "matrix")?;
    let rows = as_usize(get(m, "rows", "matrix")?, "matrix rows")?;
    let cols = as_usize(get(m, "cols", "matrix")?, "matrix cols")?;
    let entries = as_array(get(m, "entries", "matrix")?, "matrix entries")?;
    if entries.len() != rows {
        return Err(bad(format!("matrix claims {rows} rows, entries have {}", entries.len())));
    }
    let mut out = Matrix::zeros(f.clone(), rows, cols);
    for (i, row) in entries.iter().enumerate() {
        let row = as_array(row, "matrix row")?;
        if row.len() != cols {
            return Err(bad(format!("matrix row {i} has {} entries, expected {cols}", row.len())));
        }
        for (j, e) in row.iter().enumerate() {
            out.set(i, j, f.scalar_from_json(e)?);
        }
    }
    Ok(out)
}

pub fn laurent_to_json<F: JsonField>(f: &F, p: &LaurentPoly<F::Elem>) -> Value {
    let mut m = Map::new();
    for (deg, c) in p.terms() {
        m.insert(deg.to_string(), f.scalar_to_json(c));
    }
    Value::Object(m)
}

pub fn laurent_from_json<F: JsonField>(
    ring: &LaurentRing<F>,
    v: &Value,
) -> Result<LaurentPoly<F::Elem>> {
    let m = obj(v, "Laurent polynomial")?;
    let mut acc = ring.constant(ring.base.zero());
    for (k, c) in m {
        let deg = i64::from_str(k).map_err(|_| bad(format!("bad Laurent degree {k:?}")))?;
        let coeff = ring.base.scalar_from_json(c)?;
        acc = ring.add(&acc, &ring.monomial(coeff, deg));
    }
    Ok(acc)
}

pub fn laurent_matrix_to_json<F: JsonField>(
    f: &F,
    m: &Matrix<LaurentRing<F>>,
) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| laurent_to_json(f, m.at(i, j))).collect()))
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

pub fn laurent_matrix_from_json<F: JsonField>(
    ring: &LaurentRing<F>,
    v: &Value,
) -> Result<Matrix<LaurentRing<F>>> {
    let m = obj(v, "Laurent matrix")?;
    let rows = as_usize(get(m, "rows", "Laurent matrix")?, "rows")?;
    let cols = as_usize(get(m, "cols", "Laurent matrix")?, "cols")?;
    let entries = as_array(get(m, "entries", "Laurent matrix")?, "entries")?;
    if entries.len() != rows {
        return Err(bad(format!("matrix claims {rows} rows, entries have {}", entries.len())));
    }
    let mut out = Matrix::zeros(ring.clone(), rows, cols);
    for (i, row) in entries.iter().enumerate() {
        let row = as_array(row, "Laurent matrix row")?;
        if row.len() != cols {
            return Err(bad(format!("row {i} has {} entries, expected {cols}", row.len())));
        }
        for (j, e) in row.iter().enumerate() {
            out.set(i, j, laurent_from_json(ring, e)?);
        }
    }
    Ok(out)
}

pub fn point_to_json<F: JsonField>(f: &F, p: &TuplePoint<F>) -> Value {
    json!({
        "syms": p.syms.iter().map(|m| matrix_to_json(f, m)).collect::<Vec<_>>(),
        "alts": p.alts.iter().map(|m| matrix_to_json(f, m)).collect::<Vec<_>>(),
        "col": matrix_to_json(f, &p.col),
    })
}

pub fn point_from_json<F: JsonField>(f: &F, v: &Value) -> Result<TuplePoint<F>> {
    let m = obj(v, "point")?;
    let syms = as_array(get(m, "syms", "point")?, "syms")?
        .iter()
        .map(|x| matrix_from_json(f, x))
        .collect::<Result<Vec<_>>>()?;
    let alts = as_array(get(m, "alts", "point")?, "alts")?
        .iter()
        .map(|x| matrix_from_json(f, x))
        .collect::<Result<Vec<_>>>()?;
    let col = matrix_from_json(f, get(m, "col", "point")?)?;
    Ok(TuplePoint { syms, alts, col })
}

pub fn target_to_json<F: JsonField>(f: &F, t: &TargetCorner<F>) -> Value {
    json!({
        "syms": t.syms.iter().map(|m| matrix_to_json(f, m)).collect::<Vec<_>>(),
        "alts": t.alts.iter().map(|m| matrix_to_json(f, m)).collect::<Vec<_>>(),
        "col": matrix_to_json(f, &t.col),
    })
}

pub fn target_from_json<F: JsonField>(f: &F, v: &Value) -> Result<TargetCorner<F>> {
    let m = obj(v, "target")?;
    let syms = as_array(get(m, "syms", "target")?, "syms")?
        .iter()
        .map(|x| matrix_from_json(f, x))
        .collect::<Result<Vec<_>>>()?;
    let alts = as_array(get(m, "alts", "target")?, "alts")?
        .iter()
        .map(|x| matrix_from_json(f, x))
        .collect::<Result<Vec<_>>>()?;
    let col = matrix_from_json(f, get(m, "col", "target")?)?;
    Ok(TargetCorner { syms, alts, col })
}

pub fn witness_to_json<F: JsonField>(f: &F, w: &WitnessCurve<F>) -> Value {
    json!({
        "g": laurent_matrix_to_json(f, &w.g),
        "g_inv": laurent_matrix_to_json(f, &w.g_inv),
        "det_coeff": f.scalar_to_json(&w.det_coeff),
        "det_power": w.det_power,
        "report": w.report,
    })
}

pub fn witness_from_json<F: JsonField>(f: &F, v: &Value) -> Result<WitnessCurve<F>> {
    let m = obj(v, "witness")?;
    let ring = LaurentRing::new(f.clone());
    let g = laurent_matrix_from_json(&ring, get(m, "g", "witness")?)?;
    let g_inv = laurent_matrix_from_json(&ring, get(m, "g_inv", "witness")?)?;
    let det_coeff = f.scalar_from_json(get(m, "det_coeff", "witness")?)?;
    let det_power = get(m, "det_power", "witness")?
        .as_i64()
        .ok_or_else(|| bad("witness det_power must be an integer"))?;
    let report = match m.get("report") {
        Some(Value::Array(a)) => {
            a.iter().filter_map(|s| s.as_str().map(str::to_owned)).collect()
        }
        _ => Vec::new(),
    };
    Ok(WitnessCurve { g, g_inv, det_coeff, det_power, report })
}

/// Self-contained witness document: field, instance, target, curve.
/// `verify` consumes this exact shape.
pub fn witness_bundle_to_json<F: JsonField>(
    f: &F,
    point: &TuplePoint<F>,
    target: &TargetCorner<F>,
    w: &WitnessCurve<F>,
) -> Value {
    json!({
        "field": f.config_to_json(),
        "point": point_to_json(f, point),
        "target": target_to_json(f, target),
        "witness": witness_to_json(f, w),
    })
}

pub fn witness_bundle_from_json<F: JsonField>(
    f: &F,
    v: &Value,
) -> Result<(TuplePoint<F>, TargetCorner<F>, WitnessCurve<F>)> {
    let m = obj(v, "witness bundle")?;
    let point = point_from_json(f, get(m, "point", "witness bundle")?)?;
    let target = target_from_json(f, get(m, "target", "witness bundle")?)?;
    let witness = witness_from_json(f, get(m, "witness", "witness bundle")?)?;
    Ok((point, target, witness))
}

pub fn certificate_to_json<F: JsonField>(f: &F, c: &RankCertificate<F>) -> Value {
    let value = match c.value {
        RankValue::Finite(r) => Value::from(r as u64),
        RankValue::Infinite => Value::String("infinity".into()),
    };
    let witness = match &c.witness {
        Some(w) => Value::Array(w.iter().map(|e| f.scalar_to_json(e)).collect()),
        None => Value::Null,
    };
    json!({
        "value": value,
        "witness": witness,
        "certified": c.certified,
        "search_domain": c.search_domain,
        "points_checked": c.points_checked,
    })
}

pub fn verify_outcome_to_json<F: JsonField>(f: &F, o: &VerifyOutcome<F>) -> Value {
    json!({
        "ok": o.ok,
        "failures": o.failures,
        "corners": o.corners.iter().map(|m| matrix_to_json(f, m)).collect::<Vec<_>>(),
        "col_corner": matrix_to_json(f, &o.col_corner),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Ring;
    use crate::fixtures::planted_rank_symmetric;
    use crate::witness::{verify_witness, witness_sym};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rational_scalars_roundtrip_and_validate() {
        let f = Rationals;
        for (n, d) in [(3i64, 7i64), (-3, 7), (0, 1), (22, -4)] {
            let e = BigRational::new(n.into(), d.into());
            let v = f.scalar_to_json(&e);
            assert_eq!(f.scalar_from_json(&v).unwrap(), e);
        }
        assert_eq!(
            f.scalar_from_json(&json!("5")).unwrap(),
            BigRational::from(BigInt::from(5))
        );
        assert!(f.scalar_from_json(&json!("1/0")).is_err());
        assert!(f.scalar_from_json(&json!("x/2")).is_err());
        assert!(f.scalar_from_json(&json!(5)).is_err());
    }

    #[test]
    fn tower_scalars_roundtrip_across_levels() {
        let f = Tower::new(5).unwrap();
        let three = f.from_i64(3);
        let root = f.sqrt(&three).unwrap();
        let mixed = f.add(&root, &f.from_i64(2));
        for e in [f.zero(), f.from_i64(4), root, mixed] {
            let v = f.scalar_to_json(&e);
            assert_eq!(f.scalar_from_json(&v).unwrap(), e);
        }
        // wrong coefficient count for the level
        assert!(f
            .scalar_from_json(&json!({"level": 1, "coeffs": ["1"]}))
            .is_err());
        // coefficient out of range
        assert!(f
            .scalar_from_json(&json!({"level": 0, "coeffs": ["7"]}))
            .is_err());
    }

    #[test]
    fn field_config_rebuilds_the_same_tower() {
        let f = Tower::new(5).unwrap();
        let a = f.sqrt(&f.from_i64(2)).unwrap();
        let _ = f.sqrt(&a); // grows further
        let cfg = f.config_to_json();
        let AnyField::Tower(g) = field_from_json(&cfg).unwrap() else {
            panic!("expected a tower");
        };
        assert_eq!(g.prime(), 5);
        assert_eq!(g.top_level(), f.top_level());
        assert_eq!(g.adjoined_snapshot(), f.adjoined_snapshot());
        // element JSON from one tower decodes in the rebuilt one
        let v = f.scalar_to_json(&a);
        assert_eq!(g.scalar_from_json(&v).unwrap(), a);
    }

    #[test]
    fn field_config_rejects_residue_chains() {
        // 4 is a square mod 5, so it cannot be an adjoined non-residue
        let cfg = json!({"kind": "tower", "prime": 5, "adjoined": [{"level": 0, "coeffs": ["4"]}]});
        assert!(field_from_json(&cfg).is_err());
    }

    #[test]
    fn matrices_roundtrip_and_validate_shape() {
        let f = Rationals;
        let m = Matrix::from_fn(f, 2, 3, |i, j| {
            BigRational::new(((i * 3 + j) as i64).into(), 2.into())
        });
        let v = matrix_to_json(&Rationals, &m);
        assert_eq!(matrix_from_json(&Rationals, &v).unwrap(), m);
        let broken = json!({"rows": 2, "cols": 3, "entries": [["1/1", "2/1", "3/1"]]});
        assert!(matrix_from_json(&Rationals, &broken).is_err());
    }

    #[test]
    fn laurent_polynomials_roundtrip_with_negative_degrees() {
        let ring = LaurentRing::new(Rationals);
        let p = ring.add(
            &ring.monomial(BigRational::new(2.into(), 1.into()), -1),
            &ring.monomial(BigRational::new((-1i64).into(), 3.into()), 4),
        );
        let v = laurent_to_json(&Rationals, &p);
        assert_eq!(laurent_from_json(&ring, &v).unwrap(), p);
        assert!(laurent_from_json(&ring, &json!({"x": "1/1"})).is_err());
    }

    #[test]
    fn witness_bundle_roundtrips_and_still_verifies() {
        let f = Tower::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let m = planted_rank_symmetric(&f, 5, 5, &mut rng).unwrap();
        let point =
            TuplePoint { syms: vec![m], alts: vec![], col: Matrix::zeros(f.clone(), 5, 0) };
        let target = TargetCorner {
            syms: vec![Matrix::from_fn(f.clone(), 1, 1, |_, _| f.from_i64(2))],
            alts: vec![],
            col: Matrix::zeros(f.clone(), 1, 0),
        };
        let w = witness_sym(&f, &point, &target, &mut rng, 16).unwrap();
        let bundle = witness_bundle_to_json(&f, &point, &target, &w);
        let text = serde_json::to_string(&bundle).unwrap();
        let back: Value = serde_json::from_str(&text).unwrap();
        let AnyField::Tower(g) = field_from_json(back.get("field").unwrap()).unwrap() else {
            panic!("expected a tower");
        };
        let (p2, t2, w2) = witness_bundle_from_json(&g, &back).unwrap();
        let out = verify_witness(&g, &p2, &t2, &w2).unwrap();
        assert!(out.ok, "{:?}", out.failures);
    }

    #[test]
    fn certificates_encode_infinite_and_finite_ranks() {
        let f = Rationals;
        let fin = RankCertificate::<Rationals> {
            value: RankValue::Finite(3),
            witness: Some(vec![BigRational::from(BigInt::from(1))]),
            certified: true,
            search_domain: "P^0(F_5)".into(),
            points_checked: 1,
        };
        let v = certificate_to_json(&f, &fin);
        assert_eq!(v["value"], json!(3));
        assert_eq!(v["certified"], json!(true));
        let inf = RankCertificate::<Rationals> {
            value: RankValue::Infinite,
            witness: None,
            certified: true,
            search_domain: "empty tuple".into(),
            points_checked: 0,
        };
        let v = certificate_to_json(&f, &inf);
        assert_eq!(v["value"], json!("infinity"));
        assert_eq!(v["witness"], Value::Null);
    }
}
