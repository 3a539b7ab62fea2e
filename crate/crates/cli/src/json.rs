//! JSON encoding of every domain type.
//!
//! Rationals are canonical `"p/q"` strings, Gaussian rationals are
//! `{"re", "im"}` objects, and floating-point values are written with 17
//! significant digits so that identical inputs give identical bytes. Object
//! keys are sorted. Every file is a document
//! `{"format_version": 1, "kind": ..., ...}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::{json, Map, Number, Value};

use typei_core::algebra::NormValue;
use typei_core::automorphism::{validate, PairFailure};
use typei_core::measure::Witness;
use typei_core::scalar::{format_rational, parse_rational};
use typei_core::topology::{HardFailure, Report};
use typei_core::{
    AlgebraElement, AlgebraSpec, Automorphism, Block, CentralAutomorphism, CentralFunction,
    CentralProjection, Decomposition, Error, GaussianRational, Generator, MeasureSpace,
    MembershipVerdict, NeighborhoodSpec, QMatrix, Rational, Result, Status, ValidationReport,
};

pub const FORMAT_VERSION: u64 = 1;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field `{key}`")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| parse_err(format!("{what}: expected a string")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| parse_err(format!("{what}: expected an unsigned integer")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what}: expected an array")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| parse_err(format!("{what}: expected an object")))
}

fn as_bool(v: &Value, what: &str) -> Result<bool> {
    v.as_bool().ok_or_else(|| parse_err(format!("{what}: expected a boolean")))
}

fn strings(v: &Value, what: &str) -> Result<Vec<String>> {
    as_array(v, what)?
        .iter()
        .map(|s| as_str(s, what).map(str::to_string))
        .collect()
}

/// `x` with 17 significant digits.
pub fn float(x: f64) -> Value {
    let text = format!("{x:.16e}");
    Value::Number(text.parse::<Number>().expect("finite float"))
}

pub fn float_from(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| parse_err(format!("{what}: expected a number")))
}

pub fn rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rational_from(v: &Value) -> Result<Rational> {
    parse_rational(as_str(v, "rational")?)
}

pub fn scalar(q: &GaussianRational) -> Value {
    json!({"re": rational(&q.re), "im": rational(&q.im)})
}

pub fn scalar_from(v: &Value) -> Result<GaussianRational> {
    Ok(GaussianRational::new(
        rational_from(field(v, "re")?)?,
        rational_from(field(v, "im")?)?,
    ))
}

pub fn matrix(m: &QMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(scalar).collect()))
            .collect(),
    )
}

pub fn matrix_from(v: &Value, n: usize) -> Result<QMatrix> {
    let rows = as_array(v, "matrix")?;
    if rows.len() != n {
        return Err(parse_err(format!("matrix: expected {n} rows, found {}", rows.len())));
    }
    let rows = rows
        .iter()
        .map(|r| {
            let r = as_array(r, "matrix row")?;
            if r.len() != n {
                return Err(parse_err(format!("matrix row: expected {n} entries")));
            }
            r.iter().map(scalar_from).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QMatrix::from_rows(rows))
}

pub fn space(s: &MeasureSpace) -> Value {
    let weights: Map<String, Value> = s
        .atoms()
        .iter()
        .zip(s.weights())
        .map(|(a, w)| (a.clone(), rational(w)))
        .collect();
    json!({"atoms": s.atoms(), "weights": weights})
}

pub fn space_from(v: &Value) -> Result<MeasureSpace> {
    let atoms = strings(field(v, "atoms")?, "atoms")?;
    let weights = as_object(field(v, "weights")?, "weights")?;
    if weights.len() != atoms.len() {
        return Err(parse_err("weights must list exactly the atoms"));
    }
    let pairs = atoms
        .into_iter()
        .map(|a| {
            let w = weights
                .get(&a)
                .ok_or_else(|| parse_err(format!("no weight for atom `{a}`")))?;
            Ok((a, rational_from(w)?))
        })
        .collect::<Result<Vec<_>>>()?;
    MeasureSpace::new(pairs)
}

pub fn spec(s: &AlgebraSpec) -> Value {
    let blocks: Vec<Value> = s
        .blocks()
        .iter()
        .map(|b| json!({"id": b.id, "degree": b.degree, "space": space(&b.space)}))
        .collect();
    json!({"id": s.id(), "blocks": blocks})
}

pub fn spec_from(v: &Value) -> Result<Arc<AlgebraSpec>> {
    let id = as_str(field(v, "id")?, "spec id")?;
    let blocks = as_array(field(v, "blocks")?, "blocks")?
        .iter()
        .map(|b| {
            let degree = as_u64(field(b, "degree")?, "degree")? as usize;
            Ok(Block {
                id: as_str(field(b, "id")?, "block id")?.to_string(),
                degree,
                space: Arc::new(space_from(field(b, "space")?)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraSpec::new(id, blocks).map(Arc::new)
}

fn check_spec_id(v: &Value, s: &AlgebraSpec) -> Result<()> {
    let id = as_str(field(v, "spec")?, "spec reference")?;
    if id != s.id() {
        return Err(parse_err(format!("refers to spec `{id}`, expected `{}`", s.id())));
    }
    Ok(())
}

pub fn element(x: &AlgebraElement) -> Value {
    let s = x.spec();
    let data: Map<String, Value> = (0..s.num_slots())
        .map(|k| (s.slot(k).label.clone(), matrix(x.slot(k))))
        .collect();
    json!({"spec": s.id(), "data": data})
}

/// Missing slots are zero.
pub fn element_from(v: &Value, s: &Arc<AlgebraSpec>) -> Result<AlgebraElement> {
    check_spec_id(v, s)?;
    let data = as_object(field(v, "data")?, "element data")?;
    let mut x = AlgebraElement::zero(s.clone());
    for (label, m) in data {
        let k = s
            .slot_by_label(label)
            .ok_or_else(|| parse_err(format!("unknown slot `{label}`")))?;
        *x.slot_mut(k) = matrix_from(m, s.slot(k).degree)?;
    }
    Ok(x)
}

/// Nonzero coordinates keyed by basis label.
pub fn coordinates(x: &AlgebraElement) -> Value {
    let s = x.spec();
    Value::Object(
        x.coordinates()
            .iter()
            .map(|(b, c)| (s.basis_label(*b), scalar(c)))
            .collect(),
    )
}

pub fn coordinates_from(v: &Value, s: &Arc<AlgebraSpec>) -> Result<AlgebraElement> {
    let mut x = AlgebraElement::zero(s.clone());
    for (label, c) in as_object(v, "coordinates")? {
        let b = s
            .parse_basis_label(label)
            .ok_or_else(|| parse_err(format!("unknown basis vector `{label}`")))?;
        x.add_scaled(&scalar_from(c)?, &AlgebraElement::basis(s.clone(), b));
    }
    Ok(x)
}

pub fn central_function(f: &CentralFunction) -> Value {
    let sp = f.space();
    Value::Object(
        sp.atoms()
            .iter()
            .zip(f.values())
            .map(|(a, v)| (a.clone(), scalar(v)))
            .collect(),
    )
}

pub fn central_function_from(v: &Value, sp: &Arc<MeasureSpace>) -> Result<CentralFunction> {
    let obj = as_object(v, "central function")?;
    let values = sp
        .atoms()
        .iter()
        .map(|a| {
            scalar_from(
                obj.get(a)
                    .ok_or_else(|| parse_err(format!("no value for atom `{a}`")))?,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    CentralFunction::new(sp.clone(), values)
}

pub fn central_projection(z: &CentralProjection) -> Value {
    json!({"support": z.space().ids_of(z.support())})
}

pub fn central_projection_from(v: &Value, sp: &Arc<MeasureSpace>) -> Result<CentralProjection> {
    let ids = strings(field(v, "support")?, "support")?;
    CentralProjection::new(sp.clone(), sp.mask_of(&ids)?)
}

pub fn central_automorphism(phi: &CentralAutomorphism) -> Value {
    let pairs: Vec<Value> = phi.pairs().into_iter().map(|(a, b)| json!([a, b])).collect();
    json!({"map": pairs})
}

pub fn central_automorphism_from(v: &Value, s: &Arc<AlgebraSpec>) -> Result<CentralAutomorphism> {
    let pairs = as_array(field(v, "map")?, "map")?
        .iter()
        .map(|p| {
            let p = as_array(p, "map pair")?;
            match p.as_slice() {
                [a, b] => Ok((as_str(a, "slot")?.to_string(), as_str(b, "slot")?.to_string())),
                _ => Err(parse_err("map pair must have two entries")),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    CentralAutomorphism::from_pairs(s.clone(), &pairs)
}

pub fn generator(g: &Generator) -> Value {
    match g {
        Generator::Inner(a) => json!({"inner": element(a)}),
        Generator::Central(phi) => json!({"central": central_automorphism(phi)}),
    }
}

pub fn generator_from(v: &Value, s: &Arc<AlgebraSpec>) -> Result<Generator> {
    if let Some(a) = v.get("inner") {
        Ok(Generator::Inner(element_from(a, s)?))
    } else if let Some(phi) = v.get("central") {
        Ok(Generator::Central(central_automorphism_from(phi, s)?))
    } else {
        Err(parse_err("generator must be {\"inner\": ...} or {\"central\": ...}"))
    }
}

pub fn word(w: &[Generator]) -> Value {
    Value::Array(w.iter().map(generator).collect())
}

pub fn word_from(v: &Value, s: &Arc<AlgebraSpec>) -> Result<Vec<Generator>> {
    as_array(v, "word")?.iter().map(|g| generator_from(g, s)).collect()
}

pub fn basis_images(s: &AlgebraSpec, images: &[AlgebraElement]) -> Value {
    Value::Object(
        images
            .iter()
            .enumerate()
            .map(|(b, x)| (s.basis_label(b), coordinates(x)))
            .collect(),
    )
}

pub fn basis_images_from(v: &Value, s: &Arc<AlgebraSpec>) -> Result<Vec<AlgebraElement>> {
    let obj = as_object(v, "basis_images")?;
    if let Some(bad) = obj.keys().find(|k| s.parse_basis_label(k).is_none()) {
        return Err(parse_err(format!("unknown basis vector `{bad}`")));
    }
    (0..s.dim())
        .map(|b| {
            let label = s.basis_label(b);
            let img = obj
                .get(&label)
                .ok_or_else(|| parse_err(format!("no image for basis vector `{label}`")))?;
            coordinates_from(img, s)
        })
        .collect()
}

/// An automorphism as stored: a word, a table, or both.
#[derive(Debug, Clone)]
pub struct AutomorphismData {
    pub spec: Arc<AlgebraSpec>,
    pub word: Option<Vec<Generator>>,
    pub table: Option<Vec<AlgebraElement>>,
}

impl AutomorphismData {
    /// Validates the table (or the evaluated word when no table is stored).
    /// `Err(Ok(report))` means the data parsed but is not an automorphism.
    pub fn into_automorphism(self) -> std::result::Result<Automorphism, std::result::Result<ValidationReport, Error>> {
        let images = match self.table {
            Some(t) => t,
            None => {
                let w = self
                    .word
                    .as_ref()
                    .ok_or_else(|| Err(parse_err("automorphism needs a word or basis_images")))?;
                typei_core::automorphism::evaluate_word(self.spec.clone(), w)
                    .map_err(Err)?
                    .basis_images()
                    .to_vec()
            }
        };
        validate(self.spec, images, self.word).map_err(Ok)
    }
}

pub fn automorphism(t: &Automorphism, with_table: bool) -> Value {
    let mut obj = Map::new();
    obj.insert("spec".into(), json!(t.spec().id()));
    obj.insert("word".into(), t.word().map_or(Value::Null, word));
    if with_table || t.word().is_none() {
        obj.insert("basis_images".into(), basis_images(t.spec(), t.basis_images()));
    }
    Value::Object(obj)
}

pub fn automorphism_from(v: &Value, s: &Arc<AlgebraSpec>) -> Result<AutomorphismData> {
    check_spec_id(v, s)?;
    let word = match v.get("word") {
        None | Some(Value::Null) => None,
        Some(w) => Some(word_from(w, s)?),
    };
    let table = v.get("basis_images").map(|t| basis_images_from(t, s)).transpose()?;
    Ok(AutomorphismData {
        spec: s.clone(),
        word,
        table,
    })
}

pub fn decomposition(d: &Decomposition) -> Value {
    json!({
        "phi": central_automorphism(&d.phi),
        "a": element(&d.a),
        "certificate": d.certificate,
    })
}

pub fn decomposition_from(v: &Value, s: &Arc<AlgebraSpec>) -> Result<Decomposition> {
    let a = element_from(field(v, "a")?, s)?;
    let a_inv = a.inverse()?;
    Ok(Decomposition {
        phi: central_automorphism_from(field(v, "phi")?, s)?,
        a,
        a_inv,
        certificate: as_bool(field(v, "certificate")?, "certificate")?,
    })
}

pub fn validation_report(r: &ValidationReport, s: &AlgebraSpec) -> Value {
    let pairs: Vec<Value> = r
        .failing_pairs
        .iter()
        .map(|p| json!([s.basis_label(p.left), s.basis_label(p.right)]))
        .collect();
    json!({
        "valid": r.is_valid(),
        "dim": r.dim,
        "table_errors": r.table_errors,
        "unital": r.unital,
        "rank": r.rank,
        "failing_pairs": pairs,
        "failure_count": r.failure_count,
        "word_consistent": r.word_consistent,
    })
}

pub fn validation_report_from(v: &Value, s: &AlgebraSpec) -> Result<ValidationReport> {
    let label = |x: &Value| -> Result<usize> {
        let l = as_str(x, "basis label")?;
        s.parse_basis_label(l)
            .ok_or_else(|| parse_err(format!("unknown basis vector `{l}`")))
    };
    let failing_pairs = as_array(field(v, "failing_pairs")?, "failing_pairs")?
        .iter()
        .map(|p| match as_array(p, "pair")?.as_slice() {
            [l, r] => Ok(PairFailure {
                left: label(l)?,
                right: label(r)?,
            }),
            _ => Err(parse_err("pair must have two entries")),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ValidationReport {
        dim: as_u64(field(v, "dim")?, "dim")? as usize,
        table_errors: strings(field(v, "table_errors")?, "table_errors")?,
        unital: as_bool(field(v, "unital")?, "unital")?,
        rank: as_u64(field(v, "rank")?, "rank")? as usize,
        failing_pairs,
        failure_count: as_u64(field(v, "failure_count")?, "failure_count")? as usize,
        word_consistent: match field(v, "word_consistent")? {
            Value::Null => None,
            b => Some(as_bool(b, "word_consistent")?),
        },
    })
}

fn per_slot(s: &AlgebraSpec, values: &[f64]) -> Value {
    Value::Object(
        values
            .iter()
            .enumerate()
            .map(|(k, x)| (s.slot(k).label.clone(), float(*x)))
            .collect(),
    )
}

fn per_slot_from(v: &Value, s: &AlgebraSpec, what: &str) -> Result<Vec<f64>> {
    let obj = as_object(v, what)?;
    (0..s.num_slots())
        .map(|k| {
            let label = &s.slot(k).label;
            float_from(
                obj.get(label)
                    .ok_or_else(|| parse_err(format!("{what}: no value for `{label}`")))?,
                what,
            )
        })
        .collect()
}

pub fn norm_value(n: &NormValue, s: &AlgebraSpec) -> Value {
    json!({"values": per_slot(s, &n.values), "bounds": per_slot(s, &n.bounds)})
}

pub fn norm_value_from(v: &Value, s: &AlgebraSpec) -> Result<NormValue> {
    Ok(NormValue {
        values: per_slot_from(field(v, "values")?, s, "values")?,
        bounds: per_slot_from(field(v, "bounds")?, s, "bounds")?,
    })
}

pub fn neighborhood(nb: &NeighborhoodSpec) -> Value {
    json!({"set": nb.set, "eps": rational(&nb.eps), "delta": rational(&nb.delta)})
}

pub fn neighborhood_from(v: &Value) -> Result<NeighborhoodSpec> {
    Ok(NeighborhoodSpec::new(
        strings(field(v, "set")?, "set")?,
        rational_from(field(v, "eps")?)?,
        rational_from(field(v, "delta")?)?,
    ))
}

pub fn status(s: Status) -> Value {
    json!(match s {
        Status::In => "In",
        Status::Out => "Out",
        Status::Boundary => "Boundary",
    })
}

pub fn status_from(v: &Value) -> Result<Status> {
    match as_str(v, "status")? {
        "In" => Ok(Status::In),
        "Out" => Ok(Status::Out),
        "Boundary" => Ok(Status::Boundary),
        other => Err(parse_err(format!("unknown status `{other}`"))),
    }
}

fn complex_matrix(m: &DMatrix<Complex64>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    (0..m.ncols())
                        .map(|j| json!({"re": float(m[(i, j)].re), "im": float(m[(i, j)].im)}))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn complex_matrix_from(v: &Value, n: usize) -> Result<DMatrix<Complex64>> {
    let rows = as_array(v, "matrix")?;
    if rows.len() != n {
        return Err(parse_err(format!("matrix: expected {n} rows")));
    }
    let mut m = DMatrix::zeros(n, n);
    for (i, r) in rows.iter().enumerate() {
        let r = as_array(r, "matrix row")?;
        if r.len() != n {
            return Err(parse_err(format!("matrix row: expected {n} entries")));
        }
        for (j, e) in r.iter().enumerate() {
            m[(i, j)] = Complex64::new(float_from(field(e, "re")?, "re")?, float_from(field(e, "im")?, "im")?);
        }
    }
    Ok(m)
}

pub fn verdict(v: &MembershipVerdict, s: &AlgebraSpec) -> Value {
    let witness = match &v.witness {
        None => Value::Null,
        Some(Witness::Set(b)) => json!({"set": b}),
        Some(Witness::Projections { p, z }) => {
            let p: Map<String, Value> = p
                .iter()
                .enumerate()
                .map(|(k, m)| (s.slot(k).label.clone(), complex_matrix(m)))
                .collect();
            json!({"p": p, "z": z})
        }
    };
    json!({"status": status(v.status), "margin": float(v.margin), "witness": witness})
}

pub fn verdict_from(v: &Value, s: &AlgebraSpec) -> Result<MembershipVerdict> {
    let w = field(v, "witness")?;
    let witness = if w.is_null() {
        None
    } else if let Some(b) = w.get("set") {
        Some(Witness::Set(strings(b, "set")?))
    } else {
        let pm = as_object(field(w, "p")?, "p")?;
        let p = (0..s.num_slots())
            .map(|k| {
                let label = &s.slot(k).label;
                complex_matrix_from(
                    pm.get(label)
                        .ok_or_else(|| parse_err(format!("p: no slot `{label}`")))?,
                    s.slot(k).degree,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Some(Witness::Projections {
            p,
            z: strings(field(w, "z")?, "z")?,
        })
    };
    Ok(MembershipVerdict {
        status: status_from(field(v, "status")?)?,
        witness,
        margin: float_from(field(v, "margin")?, "margin")?,
    })
}

pub fn topology_report(r: &Report) -> Value {
    let failures: Vec<Value> = r
        .hard_failures
        .iter()
        .map(|h| {
            json!({
                "sample": h.sample,
                "element": element(&h.element),
                "o": status(h.o_status),
                "v": status(h.v_status),
            })
        })
        .collect();
    json!({
        "suite": r.suite,
        "samples": r.samples,
        "hard_failures": failures,
        "boundary_count": r.boundary_count,
        "seed": r.seed,
    })
}

pub fn topology_report_from(v: &Value, s: &Arc<AlgebraSpec>) -> Result<Report> {
    let hard_failures = as_array(field(v, "hard_failures")?, "hard_failures")?
        .iter()
        .map(|h| {
            Ok(HardFailure {
                sample: as_u64(field(h, "sample")?, "sample")?,
                element: element_from(field(h, "element")?, s)?,
                o_status: status_from(field(h, "o")?)?,
                v_status: status_from(field(h, "v")?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report {
        suite: as_str(field(v, "suite")?, "suite")?.to_string(),
        samples: as_u64(field(v, "samples")?, "samples")?,
        hard_failures,
        boundary_count: as_u64(field(v, "boundary_count")?, "boundary_count")?,
        seed: as_u64(field(v, "seed")?, "seed")?,
    })
}

/// `{"format_version", "kind", ...fields}`.
pub fn document(kind: &str, fields: Vec<(&str, Value)>) -> Value {
    let mut obj: BTreeMap<String, Value> = fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    obj.insert("format_version".into(), json!(FORMAT_VERSION));
    obj.insert("kind".into(), json!(kind));
    Value::Object(obj.into_iter().collect())
}

/// Parses a document and checks its version and kind.
pub fn parse_document(text: &str, kind: &str) -> Result<Value> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let version = as_u64(field(&v, "format_version")?, "format_version")?;
    if version != FORMAT_VERSION {
        return Err(parse_err(format!("unsupported format_version {version}")));
    }
    let found = as_str(field(&v, "kind")?, "kind")?;
    if found != kind {
        return Err(parse_err(format!("expected a `{kind}` document, found `{found}`")));
    }
    Ok(v)
}

/// The `spec` field of a document.
pub fn document_spec(doc: &Value) -> Result<Arc<AlgebraSpec>> {
    spec_from(field(doc, "spec")?)
}

pub fn document_field<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    field(doc, key)
}

/// Pretty-printed with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use typei_core::scalar::rational as q;

    #[test]
    fn float_formatting_is_fixed() {
        assert_eq!(float(0.1).to_string(), "1.0000000000000001e-1");
        assert_eq!(float(0.0).to_string(), "0.0000000000000000e+0");
        let x = 1.0 / 3.0;
        assert_eq!(float_from(&float(x), "x").unwrap(), x);
    }

    #[test]
    fn rationals_are_canonical() {
        assert_eq!(rational(&q(10, -4)), json!("-5/2"));
        assert_eq!(rational(&q(3, 1)), json!("3/1"));
        assert_eq!(rational_from(&json!("6/4")).unwrap(), q(3, 2));
    }

    #[test]
    fn wrong_kind_is_a_parse_error() {
        let doc = render(&document("spec", vec![]));
        assert!(matches!(parse_document(&doc, "automorphism"), Err(Error::Parse(_))));
        assert!(parse_document("{", "spec").is_err());
    }
}
