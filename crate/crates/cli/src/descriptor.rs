//! Input documents: pair descriptors and exponent profiles.
//!
//! A descriptor carries either a built-in `family` with `params` or a `raw`
//! datum (rank, roots, simple indices, multiplicities, involution matrix,
//! fixed traces). Rationals in profiles are strings "p/q" (or "p"), or
//! plain JSON integers.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value;

use sympair_core::criteria::{CoordsMode, ExponentProfile};
use sympair_core::families::{FamilySpec, SplitType};
use sympair_core::linalg::parse_rat;
use sympair_core::sympair::{InvolutionData, RootDatumG};
use sympair_core::{DescendentSystem, Error, IntMat, RatVec, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorDoc {
    pub family: Option<String>,
    pub params: Option<Value>,
    pub raw: Option<RawDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDoc {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub simple: Vec<usize>,
    pub mult: Vec<u32>,
    pub theta: Vec<Vec<i64>>,
    #[serde(default)]
    pub fixed_traces: BTreeMap<String, i64>,
}

fn param_usize(params: &Value, key: &str) -> Result<usize> {
    params
        .get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| Error::BadParameters(format!("missing or invalid parameter {key:?}")))
}

fn param_bool(params: &Value, key: &str, default: bool) -> Result<bool> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => v
            .as_bool()
            .ok_or_else(|| Error::BadParameters(format!("parameter {key:?} must be a boolean"))),
    }
}

pub fn parse_family(name: &str, params: &Value) -> Result<FamilySpec> {
    match name {
        "galois_doubling" => {
            let htype = params
                .get("htype")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::BadParameters("galois_doubling needs htype".into()))?;
            Ok(FamilySpec::GaloisDoubling {
                htype: SplitType::parse(htype)?,
                rank: param_usize(params, "rank")?,
            })
        }
        "gl_orthogonal" => Ok(FamilySpec::GlOrthogonal {
            n: param_usize(params, "n")?,
            r: param_usize(params, "r")?,
        }),
        "unitary_orthogonal" => Ok(FamilySpec::UnitaryOrthogonal {
            n: param_usize(params, "n")?,
            r: param_usize(params, "r")?,
        }),
        "gl2n_gln_E" => Ok(FamilySpec::Gl2nGlnE {
            n: param_usize(params, "n")?,
        }),
        "sp_unitary" => Ok(FamilySpec::SpUnitary {
            n: param_usize(params, "n")?,
            quasi_split: param_bool(params, "quasi_split", true)?,
        }),
        "sp_gln" => Ok(FamilySpec::SpGln {
            n: param_usize(params, "n")?,
        }),
        "gl_linear" => Ok(FamilySpec::GlLinear {
            n1: param_usize(params, "n1")?,
            n2: param_usize(params, "n2")?,
        }),
        other => Err(Error::BadParameters(format!("unknown family {other:?}"))),
    }
}

pub struct LoadedPair {
    pub datum: RootDatumG,
    pub involution: InvolutionData,
    pub family: Option<(String, Value)>,
}

pub fn load_descriptor(doc: &DescriptorDoc) -> Result<LoadedPair> {
    match (&doc.family, &doc.raw) {
        (Some(name), None) => {
            let params = doc.params.clone().unwrap_or(Value::Null);
            let spec = parse_family(name, &params)?;
            let (datum, involution) = sympair_core::families::instantiate(&spec)?;
            Ok(LoadedPair {
                datum,
                involution,
                family: Some((name.clone(), params)),
            })
        }
        (None, Some(raw)) => {
            if doc.params.is_some() {
                return Err(Error::BadParameters(
                    "raw descriptors do not take params".into(),
                ));
            }
            let roots: Vec<RatVec> = raw.roots.iter().map(|v| RatVec::from_ints(v)).collect();
            let datum = RootDatumG::new(raw.rank, roots, raw.simple.clone(), raw.mult.clone())?;
            let theta = IntMat::from_rows_i64(&raw.theta)?;
            let mut traces = BTreeMap::new();
            for (k, v) in &raw.fixed_traces {
                let idx: usize = k.parse().map_err(|_| {
                    Error::BadParameters(format!("fixed_traces key {k:?} is not a root index"))
                })?;
                traces.insert(idx, *v);
            }
            let involution = InvolutionData::new(&datum, theta, traces)?;
            Ok(LoadedPair {
                datum,
                involution,
                family: None,
            })
        }
        _ => Err(Error::BadParameters(
            "descriptor must have exactly one of `family` or `raw`".into(),
        )),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileEntryDoc {
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub exponents: Vec<Vec<Value>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ProfileDoc {
    Tagged {
        coords: String,
        entries: Vec<ProfileEntryDoc>,
    },
    List(Vec<ProfileEntryDoc>),
}

/// Schema-level check that a JSON cell parses as a rational.
pub fn rational_cell_ok(v: &Value) -> Result<()> {
    value_to_rat(v).map(|_| ())
}

fn value_to_rat(v: &Value) -> Result<sympair_core::Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => n
            .as_i64()
            .map(sympair_core::linalg::rat_int)
            .ok_or_else(|| Error::BadParameters(format!("non-integer numeric rational {n}"))),
        other => Err(Error::BadParameters(format!(
            "expected a rational string or integer, got {other}"
        ))),
    }
}

pub fn load_profile(doc: &ProfileDoc, ds: &DescendentSystem) -> Result<ExponentProfile> {
    let (mode, entries) = match doc {
        ProfileDoc::List(entries) => (CoordsMode::Full, entries),
        ProfileDoc::Tagged { coords, entries } => {
            let mode = match coords.as_str() {
                "full" => CoordsMode::Full,
                "restricted" => CoordsMode::Restricted,
                other => {
                    return Err(Error::BadParameters(format!(
                        "coords must be \"full\" or \"restricted\", got {other:?}"
                    )))
                }
            };
            (mode, entries)
        }
    };
    let mut raw = Vec::new();
    for entry in entries {
        let vecs: Vec<RatVec> = entry
            .exponents
            .iter()
            .map(|coords| {
                let parsed: Result<Vec<sympair_core::Rat>> =
                    coords.iter().map(value_to_rat).collect();
                parsed.map(RatVec::new)
            })
            .collect::<Result<_>>()?;
        raw.push((entry.j.clone(), vecs));
    }
    ExponentProfile::new(ds, &raw, mode)
}
