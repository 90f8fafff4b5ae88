//! JSON file formats: codes, Φ profiles, repair plans and codewords.
//!
//! Field symbols are hex strings holding the coefficient bit-vector in
//! little-endian byte order, two digits per byte, `⌈m/8⌉` bytes per
//! symbol. Coordinates are 1-based in every format.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::code::{CodeMetadata, LinearCode};
use crate::coords::CoordSet;
use crate::error::{usage, Result};
use crate::field::{decode_hex_le, encode_hex_le, FieldElement, FieldSpec};
use crate::regset::{PhiProfile, RegSetSequence, RegeneratingSet};
use crate::repair::{RepairPlan, RepairStep};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodeFile {
    q: u32,
    m: u32,
    modulus_hex: String,
    n: usize,
    #[serde(rename = "M")]
    dimension: usize,
    columns: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<MetadataFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MetadataFile {
    family: String,
    r: usize,
    #[serde(rename = "M")]
    dimension: usize,
}

/// Serializes a code in the code-file format.
pub fn code_to_json(code: &LinearCode) -> String {
    let f = code.field();
    let file = CodeFile {
        q: 2,
        m: f.degree(),
        modulus_hex: encode_hex_le(f.modulus(), (f.degree() as usize + 1).div_ceil(8)),
        n: code.len(),
        dimension: code.dimension(),
        columns: code
            .columns()
            .iter()
            .map(|c| c.iter().map(|&e| f.to_hex(e)).collect())
            .collect(),
        metadata: code.metadata().map(|m| MetadataFile {
            family: m.family.clone(),
            r: m.r,
            dimension: m.dimension,
        }),
    };
    serde_json::to_string_pretty(&file).expect("code file serializes") + "\n"
}

/// Parses a code file, checking the field, shape and rank.
pub fn code_from_json(text: &str) -> Result<LinearCode> {
    let file: CodeFile = serde_json::from_str(text)?;
    if file.q != 2 {
        return usage(format!("only q = 2 is supported, got q = {}", file.q));
    }
    let field = FieldSpec::new(file.m, decode_hex_le(&file.modulus_hex)?)?;
    if file.columns.len() != file.n {
        return usage(format!(
            "n = {} but {} columns given",
            file.n,
            file.columns.len()
        ));
    }
    let columns = file
        .columns
        .iter()
        .enumerate()
        .map(|(i, col)| {
            if col.len() != file.dimension {
                return usage(format!(
                    "column {} has {} entries, expected M = {}",
                    i + 1,
                    col.len(),
                    file.dimension
                ));
            }
            col.iter().map(|s| field.from_hex(s)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut code = LinearCode::new(field, file.dimension, columns)?;
    if let Some(meta) = file.metadata {
        if meta.dimension != file.dimension {
            return usage(format!(
                "metadata M = {} disagrees with code M = {}",
                meta.dimension, file.dimension
            ));
        }
        code = code.with_metadata(CodeMetadata {
            family: meta.family,
            r: meta.r,
            dimension: meta.dimension,
        });
    }
    Ok(code)
}

pub fn read_code(path: impl AsRef<Path>) -> Result<LinearCode> {
    code_from_json(&fs::read_to_string(path)?)
}

pub fn write_code(code: &LinearCode, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, code_to_json(code))?;
    Ok(())
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct RegSetJson {
    target: usize,
    members: Vec<usize>,
}

impl From<&RegeneratingSet> for RegSetJson {
    fn from(r: &RegeneratingSet) -> Self {
        RegSetJson {
            target: r.target() + 1,
            members: r.members().labels(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct PhiProfileJson {
    phi: Vec<usize>,
    rho: usize,
    witnesses: Vec<Vec<RegSetJson>>,
    size_cap: usize,
}

pub fn profile_to_json(profile: &PhiProfile) -> String {
    let file = PhiProfileJson {
        phi: profile.phi.clone(),
        rho: profile.rho,
        witnesses: profile
            .witnesses
            .iter()
            .map(|seq| seq.items().iter().map(RegSetJson::from).collect())
            .collect(),
        size_cap: profile.size_cap,
    };
    serde_json::to_string_pretty(&file).expect("profile serializes") + "\n"
}

/// Parses a Φ profile. Sets are checked only for target membership.
pub fn profile_from_json(text: &str) -> Result<PhiProfile> {
    let file: PhiProfileJson = serde_json::from_str(text)?;
    let witnesses = file
        .witnesses
        .into_iter()
        .map(|seq| {
            seq.into_iter()
                .map(|r| {
                    let members = labels_to_set(&r.members)?;
                    if r.target == 0 {
                        return usage("coordinate labels start at 1");
                    }
                    RegeneratingSet::new(r.target - 1, members)
                })
                .collect::<Result<Vec<_>>>()
                .map(RegSetSequence::new)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhiProfile {
        phi: file.phi,
        rho: file.rho,
        witnesses,
        size_cap: file.size_cap,
    })
}

fn labels_to_set(labels: &[usize]) -> Result<CoordSet> {
    CoordSet::from_labels(labels, crate::coords::MAX_LENGTH)
}

#[derive(Debug, Serialize, Deserialize)]
struct PlanJson {
    n: usize,
    steps: Vec<StepJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct StepJson {
    target: usize,
    members: Vec<usize>,
    coefficients: Vec<String>,
}

pub fn plan_to_json(plan: &RepairPlan) -> String {
    let f = plan.field();
    let file = PlanJson {
        n: plan.length(),
        steps: plan
            .steps()
            .iter()
            .map(|s| StepJson {
                target: s.target() + 1,
                members: s.set.members().labels(),
                coefficients: s.coefficients.iter().map(|&c| f.to_hex(c)).collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("plan serializes") + "\n"
}

/// Parses a plan for `code` and validates it against the code.
pub fn plan_from_json(code: &LinearCode, text: &str) -> Result<RepairPlan> {
    let file: PlanJson = serde_json::from_str(text)?;
    if file.n != code.len() {
        return usage(format!("plan is for n = {}, code has n = {}", file.n, code.len()));
    }
    let f = code.field();
    let steps = file
        .steps
        .into_iter()
        .map(|s| {
            let members = CoordSet::from_labels(&s.members, code.len())?;
            if s.target == 0 {
                return usage("coordinate labels start at 1");
            }
            let set = RegeneratingSet::new(s.target - 1, members)?;
            let coefficients = s
                .coefficients
                .iter()
                .map(|c| f.from_hex(c))
                .collect::<Result<Vec<_>>>()?;
            Ok(RepairStep { set, coefficients })
        })
        .collect::<Result<Vec<_>>>()?;
    let plan = RepairPlan::from_steps(f.clone(), code.len(), steps);
    plan.validate(code)?;
    Ok(plan)
}

/// A codeword as a JSON array of hex symbols, `null` for erasures.
pub fn codeword_to_json(field: &FieldSpec, word: &[Option<FieldElement>]) -> String {
    let v: Vec<Option<String>> = word.iter().map(|s| s.map(|e| field.to_hex(e))).collect();
    serde_json::to_string(&v).expect("codeword serializes")
}

pub fn codeword_from_json(field: &FieldSpec, text: &str) -> Result<Vec<Option<FieldElement>>> {
    let v: Vec<Option<String>> = serde_json::from_str(text)?;
    v.iter()
        .map(|s| s.as_deref().map(|h| field.from_hex(h)).transpose())
        .collect()
}
