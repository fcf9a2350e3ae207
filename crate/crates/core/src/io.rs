//! JSON interchange: field elements, polynomials, matrices and instance files.
//!
//! Rationals are `"num/den"` strings, prime-field elements integers in
//! `[0, p)`, cyclotomic elements `[a, b]` pairs meaning `a + bξ`.
//! Polynomials are `{"vars": [...], "terms": [[coefficient, [exponents]], ...]}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::field::parse_rational;
use crate::algebra::matrix::{FMatrix, Matrix};
use crate::algebra::poly::MultiPoly;
use crate::algebra::{BaseField, Field, FieldElement};
use crate::equivariant::A4FamilyParams;
use crate::error::{Error, Result};
use crate::gale::NonSyzygeticEquation;

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn rational_json(r: &num_rational::BigRational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

fn base_json(v: &Value, base: BaseField) -> Result<FieldElement> {
    match base {
        BaseField::Rational => element_from_json(Field::Rational, v),
        BaseField::Prime(p) => element_from_json(Field::Prime(p), v),
    }
}

pub fn element_to_json(x: &FieldElement) -> Value {
    match x {
        FieldElement::Rational(r) => rational_json(r),
        FieldElement::Modular { value, .. } => json!(value),
        FieldElement::CycRational { a, b } => json!([rational_json(a), rational_json(b)]),
        FieldElement::CycModular { a, b, .. } => json!([a, b]),
    }
}

pub fn element_from_json(field: Field, v: &Value) -> Result<FieldElement> {
    match field {
        Field::Rational => match v {
            Value::String(s) => Ok(FieldElement::Rational(parse_rational(s)?)),
            Value::Number(n) if n.is_i64() => Ok(field.from_i64(n.as_i64().unwrap())),
            _ => Err(bad(format!("expected a rational string, got {v}"))),
        },
        Field::Prime(p) => {
            let n = v.as_u64().ok_or_else(|| bad(format!("expected an integer in [0, {p}), got {v}")))?;
            if n >= p {
                return Err(bad(format!("{n} is not reduced modulo {p}")));
            }
            Ok(FieldElement::Modular { value: n, modulus: p })
        }
        Field::Cyclotomic3(base) => {
            let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad(format!("expected a pair [a, b], got {v}")))?;
            let a = base_json(&arr[0], base)?;
            let b = base_json(&arr[1], base)?;
            Ok(match (a, b) {
                (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::CycRational { a, b },
                (FieldElement::Modular { value: a, modulus }, FieldElement::Modular { value: b, .. }) => {
                    FieldElement::CycModular { a, b, modulus }
                }
                _ => unreachable!(),
            })
        }
    }
}

pub fn vector_to_json(v: &[FieldElement]) -> Value {
    Value::Array(v.iter().map(element_to_json).collect())
}

pub fn vector_from_json(field: Field, v: &Value, len: Option<usize>) -> Result<Vec<FieldElement>> {
    let arr = v.as_array().ok_or_else(|| bad(format!("expected an array, got {v}")))?;
    if let Some(n) = len {
        if arr.len() != n {
            return Err(bad(format!("expected {n} entries, got {}", arr.len())));
        }
    }
    arr.iter().map(|x| element_from_json(field, x)).collect()
}

/// Matrices are lists of rows.
pub fn matrix_to_json(m: &FMatrix) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| vector_to_json(r)).collect())
}

pub fn matrix_from_json(field: Field, v: &Value, shape: Option<(usize, usize)>) -> Result<FMatrix> {
    let rows = v.as_array().ok_or_else(|| bad("expected a list of rows"))?;
    let ncols = shape.map(|s| s.1).or_else(|| rows.first().and_then(|r| r.as_array()).map(|r| r.len()));
    let parsed: Vec<Vec<FieldElement>> = rows.iter().map(|r| vector_from_json(field, r, ncols)).collect::<Result<_>>()?;
    if let Some((r, _)) = shape {
        if parsed.len() != r {
            return Err(bad(format!("expected {r} rows, got {}", parsed.len())));
        }
    }
    if parsed.is_empty() {
        return Ok(Matrix::zeros(field, 0, ncols.unwrap_or(0)));
    }
    Ok(Matrix::from_rows(parsed, field.zero()))
}

pub fn poly_to_json(p: &MultiPoly) -> Value {
    let terms: Vec<Value> = p.terms().iter().map(|(e, c)| json!([element_to_json(c), e])).collect();
    json!({ "vars": p.vars().to_vec(), "terms": terms })
}

pub fn poly_from_json(field: Field, v: &Value) -> Result<MultiPoly> {
    let vars: Vec<String> = serde_json::from_value(v.get("vars").cloned().ok_or_else(|| bad("polynomial without vars"))?)
        .map_err(|e| bad(e.to_string()))?;
    let vars: Arc<[String]> = vars.into();
    let terms = v.get("terms").and_then(|t| t.as_array()).ok_or_else(|| bad("polynomial without terms"))?;
    let mut out = MultiPoly::zero(field, vars.clone());
    for t in terms {
        let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("term must be [coefficient, exponents]"))?;
        let c = element_from_json(field, &pair[0])?;
        let e: Vec<u16> = serde_json::from_value(pair[1].clone()).map_err(|e| bad(e.to_string()))?;
        if e.len() != vars.len() {
            return Err(bad("exponent vector length differs from the variable count"));
        }
        out.add_term(e, c);
    }
    Ok(out)
}

/// Serialized equation: nine rows for `M` (row by row), three for `L`,
/// each a coefficient vector over the six variables.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EquationJson {
    pub vars: Vec<String>,
    pub m: Vec<Value>,
    pub l: Vec<Value>,
    pub sign: i8,
}

pub fn equation_to_json(eq: &NonSyzygeticEquation) -> EquationJson {
    let c = eq.coefficient_map();
    EquationJson {
        vars: eq.vars().to_vec(),
        m: (0..9).map(|j| vector_to_json(&c.col(j))).collect(),
        l: (9..12).map(|j| vector_to_json(&c.col(j))).collect(),
        sign: eq.sign(),
    }
}

pub fn equation_from_json(field: Field, e: &EquationJson) -> Result<NonSyzygeticEquation> {
    if e.m.len() != 9 || e.l.len() != 3 {
        return Err(bad("an equation needs nine M rows and three L rows"));
    }
    let cols: Vec<Vec<FieldElement>> = e.m.iter().chain(&e.l).map(|v| vector_from_json(field, v, Some(6))).collect::<Result<_>>()?;
    let forms = Matrix::from_cols(cols, field.zero(), 6);
    NonSyzygeticEquation::from_forms(e.vars.clone().into(), forms, e.sign)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ParamsJson {
    pub alpha: Value,
    pub beta: Value,
    pub gamma: Value,
    pub delta: Value,
    pub lambda: Value,
    pub xi: Value,
}

/// On-disk shape of an instance file.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct InstanceJson {
    pub field: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equations: Vec<EquationJson>,
    /// Columns of a 20×10 basis, each in the grade-3 basis order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lagrangian: Option<Vec<Value>>,
    /// 6×6 generators as lists of rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsJson>,
    /// EPW points `λ = (e, f)` as 6-vectors.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Value>,
    /// Lines in `P⁵` as 6×2 matrices (columns span the line).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lines: Vec<Value>,
}

/// Parsed instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub field: Field,
    pub equations: Vec<NonSyzygeticEquation>,
    pub lagrangian: Option<FMatrix>,
    pub generators: Option<Vec<FMatrix>>,
    pub params: Option<A4FamilyParams>,
    pub points: Vec<Vec<FieldElement>>,
    pub lines: Vec<FMatrix>,
}

impl Instance {
    pub fn new(field: Field) -> Self {
        Instance { field, equations: vec![], lagrangian: None, generators: None, params: None, points: vec![], lines: vec![] }
    }

    pub fn to_json(&self) -> InstanceJson {
        InstanceJson {
            field: self.field.to_string(),
            equations: self.equations.iter().map(equation_to_json).collect(),
            lagrangian: self.lagrangian.as_ref().map(|a| a.col_vecs().iter().map(|c| vector_to_json(c)).collect()),
            generators: self.generators.as_ref().map(|gs| gs.iter().map(matrix_to_json).collect()),
            params: self.params.as_ref().map(|p| ParamsJson {
                alpha: element_to_json(&p.alpha),
                beta: element_to_json(&p.beta),
                gamma: element_to_json(&p.gamma),
                delta: element_to_json(&p.delta),
                lambda: element_to_json(&p.lambda),
                xi: element_to_json(&p.xi),
            }),
            points: self.points.iter().map(|p| vector_to_json(p)).collect(),
            lines: self.lines.iter().map(matrix_to_json).collect(),
        }
    }

    pub fn from_json(j: &InstanceJson) -> Result<Self> {
        let field = Field::parse(&j.field)?;
        let equations = j.equations.iter().map(|e| equation_from_json(field, e)).collect::<Result<_>>()?;
        let lagrangian = match &j.lagrangian {
            Some(cols) => {
                let cols: Vec<Vec<FieldElement>> = cols.iter().map(|c| vector_from_json(field, c, Some(20))).collect::<Result<_>>()?;
                Some(Matrix::from_cols(cols, field.zero(), 20))
            }
            None => None,
        };
        let generators = match &j.generators {
            Some(gs) => Some(gs.iter().map(|g| matrix_from_json(field, g, Some((6, 6)))).collect::<Result<_>>()?),
            None => None,
        };
        let params = match &j.params {
            Some(p) => {
                let el = |v: &Value| element_from_json(field, v);
                Some(A4FamilyParams {
                    alpha: el(&p.alpha)?,
                    beta: el(&p.beta)?,
                    gamma: el(&p.gamma)?,
                    delta: el(&p.delta)?,
                    lambda: el(&p.lambda)?,
                    xi: el(&p.xi)?,
                })
            }
            None => None,
        };
        let points = j.points.iter().map(|p| vector_from_json(field, p, Some(6))).collect::<Result<_>>()?;
        let lines = j.lines.iter().map(|l| matrix_from_json(field, l, Some((6, 2)))).collect::<Result<_>>()?;
        Ok(Instance { field, equations, lagrangian, generators, params, points, lines })
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn parse(s: &str) -> Result<Self> {
        let j: InstanceJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Instance::from_json(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::Ring;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fields() -> Vec<Field> {
        vec![
            Field::Rational,
            Field::Prime(101),
            Field::Cyclotomic3(BaseField::Rational),
            Field::Cyclotomic3(BaseField::Prime(5)),
        ]
    }

    #[test]
    fn element_encodings() {
        let q = Field::Rational;
        let x = q.from_i64(-3).mul(&q.from_i64(7).inv().unwrap());
        assert_eq!(element_to_json(&x), json!("-3/7"));
        assert_eq!(element_to_json(&q.from_i64(4)), json!("4/1"));
        assert_eq!(element_from_json(q, &json!("6/-4")).unwrap(), q.from_i64(-3).mul(&q.from_i64(2).inv().unwrap()));
        assert_eq!(element_to_json(&Field::Prime(97).from_i64(-1)), json!(96));
        assert!(element_from_json(Field::Prime(97), &json!(97)).is_err());
        let c = Field::Cyclotomic3(BaseField::Prime(5));
        let xi = c.xi().unwrap();
        assert_eq!(element_to_json(&xi), json!([0, 1]));
        assert_eq!(element_from_json(c, &json!([0, 1])).unwrap(), xi);
        assert!(element_from_json(c, &json!([0, 1, 2])).is_err());
        assert!(element_from_json(Field::Rational, &json!("1/0")).is_err());
    }

    #[test]
    fn polynomial_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for f in fields() {
            let eq = NonSyzygeticEquation::random_valid(f, &mut rng);
            let p = eq.cubic_polynomial();
            let text = serde_json::to_string(&poly_to_json(&p)).unwrap();
            let back = poly_from_json(f, &serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn malformed_instances_are_rejected() {
        assert!(Instance::parse("{").is_err());
        assert!(Instance::parse(r#"{"field": "prime:4"}"#).is_err());
        let bad_len = r#"{"field": "prime:7", "points": [[1, 2, 3]]}"#;
        assert!(Instance::parse(bad_len).is_err());
        let ok = r#"{"field": "prime:7", "points": [[1, 2, 3, 0, 0, 6]]}"#;
        assert_eq!(Instance::parse(ok).unwrap().points.len(), 1);
    }

    fn random_instance(f: Field, seed: u64) -> Instance {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eq = NonSyzygeticEquation::random_valid(f, &mut rng);
        let mut inst = Instance::new(f);
        inst.equations = vec![eq.clone(), eq.gale_dual().unwrap()];
        inst.lagrangian = crate::lagrangian::lagrangian_from_gale(&eq, 1).ok().map(|(a, _)| a.basis().clone());
        inst.generators = Some(vec![Matrix::from_fn(6, 6, f.zero(), |_, _| f.random(&mut rng))]);
        if let Some(xi) = f.xi() {
            inst.params = Some(A4FamilyParams {
                alpha: f.random(&mut rng),
                beta: f.random(&mut rng),
                gamma: f.random(&mut rng),
                delta: f.random(&mut rng),
                lambda: f.random_nonzero(&mut rng),
                xi,
            });
        }
        inst.points = vec![(0..6).map(|_| f.random(&mut rng)).collect()];
        inst.lines = vec![Matrix::from_fn(6, 2, f.zero(), |_, _| f.random(&mut rng))];
        inst
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn instance_roundtrip(seed in any::<u64>(), which in 0usize..4) {
            let f = fields()[which];
            let inst = random_instance(f, seed);
            let text = inst.to_string_pretty();
            let back = Instance::parse(&text).unwrap();
            prop_assert_eq!(&back, &inst);
            prop_assert_eq!(back.to_string_pretty(), text);
        }
    }
}
