//! Scenario ingestion and field/report export.
//!
//! Scenario files are JSON with four blocks: `grid` (optional, defaults
//! ħ=1, L=8, Nx=256), `state`, `operation`, and `output` (optional). Keys
//! are validated before execution and unknown keys are rejected by name.
//! Field exports are CSV (`x,p,value` rows, row-major) or JSON (grid
//! metadata plus a flat row-major value array); every number is printed in
//! shortest round-trip form, so the JSON path reloads bit-exactly.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::claims::ClaimId;
use crate::error::{Error, Result};
use crate::field::{FieldKind, PhaseSpaceField};
use crate::grid::{build_grid, PhaseSpaceGrid};
use crate::statelib::StateSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_lowercase().as_str() {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::InvalidParameter {
                name: "format",
                reason: format!("expected csv or json, got {other:?}"),
            }),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OutputSpec {
    pub path: PathBuf,
    pub format: ExportFormat,
}

/// What a scenario runs.
#[derive(Debug, Clone)]
pub enum Operation {
    Wigner,
    Husimi {
        kappa: f64,
    },
    Entropy {
        kappa: f64,
    },
    Admissibility,
    Smooth {
        sigma_x: Option<f64>,
        sigma_p: Option<f64>,
    },
    Probe {
        a: f64,
        sigma_x: f64,
        sigma_p: f64,
        cutoffs: Vec<f64>,
    },
    Claim {
        id: ClaimId,
    },
}

/// A validated scenario: grid, state payload, operation, optional output.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub grid: PhaseSpaceGrid,
    pub state: StateSpec,
    pub operation: Operation,
    pub output: Option<OutputSpec>,
}

fn object<'v>(value: &'v Value, ctx: &str) -> Result<&'v serde_json::Map<String, Value>> {
    value
        .as_object()
        .ok_or_else(|| Error::Scenario(format!("{ctx} must be a JSON object")))
}

fn check_keys(map: &serde_json::Map<String, Value>, ctx: &str, allowed: &[&str]) -> Result<()> {
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(Error::Scenario(format!(
                "unknown key {key:?} in {ctx} (allowed: {})",
                allowed.join(", ")
            )));
        }
    }
    Ok(())
}

fn get_f64(map: &serde_json::Map<String, Value>, key: &str, ctx: &str) -> Result<Option<f64>> {
    match map.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_f64()
            .map(Some)
            .ok_or_else(|| Error::Scenario(format!("{key} in {ctx} must be a number"))),
    }
}

fn parse_grid(value: Option<&Value>) -> Result<PhaseSpaceGrid> {
    let (mut hbar, mut l, mut nx) = (1.0, 8.0, 256usize);
    if let Some(v) = value {
        let map = object(v, "grid")?;
        check_keys(map, "grid", &["hbar", "L", "Nx"])?;
        if let Some(h) = get_f64(map, "hbar", "grid")? {
            hbar = h;
        }
        if let Some(lw) = get_f64(map, "L", "grid")? {
            l = lw;
        }
        if let Some(n) = map.get("Nx") {
            nx = n.as_u64().ok_or_else(|| Error::Scenario("Nx must be a non-negative integer".into()))? as usize;
        }
    }
    build_grid(hbar, l, nx)
}

const STATE_KEYS: &[(&str, &[&str])] = &[
    ("fock", &["kind", "n"]),
    ("coherent", &["kind", "x0", "p0"]),
    ("cat", &["kind", "separation", "parity"]),
    ("box", &["kind", "omega", "shape"]),
    ("exp_quadratic", &["kind", "a"]),
    ("gaussian_field", &["kind", "sigma_x", "sigma_p", "x0", "p0"]),
];

fn parse_state(value: &Value) -> Result<StateSpec> {
    let map = object(value, "state")?;
    let kind = map
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Scenario("state requires a string \"kind\"".into()))?;
    let allowed = STATE_KEYS
        .iter()
        .find(|(k, _)| *k == kind)
        .map(|(_, keys)| *keys)
        .ok_or_else(|| {
            Error::Scenario(format!(
                "unknown state kind {kind:?} (expected one of: fock, coherent, cat, box, \
                 exp_quadratic, gaussian_field)"
            ))
        })?;
    check_keys(map, "state", allowed)?;
    Ok(serde_json::from_value(value.clone())?)
}

fn parse_operation(value: &Value) -> Result<Operation> {
    let map = object(value, "operation")?;
    let name = map
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Scenario("operation requires a string \"name\"".into()))?;
    let kappa_of = |map: &serde_json::Map<String, Value>| -> Result<f64> {
        let kappa = get_f64(map, "kappa", "operation")?.unwrap_or(1.0);
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::InvalidParameter {
                name: "kappa",
                reason: format!("must be positive, got {kappa}"),
            });
        }
        Ok(kappa)
    };
    match name {
        "wigner" => {
            check_keys(map, "operation", &["name"])?;
            Ok(Operation::Wigner)
        }
        "husimi" => {
            check_keys(map, "operation", &["name", "kappa"])?;
            Ok(Operation::Husimi { kappa: kappa_of(map)? })
        }
        "entropy" => {
            check_keys(map, "operation", &["name", "kappa"])?;
            Ok(Operation::Entropy { kappa: kappa_of(map)? })
        }
        "admissibility" => {
            check_keys(map, "operation", &["name"])?;
            Ok(Operation::Admissibility)
        }
        "smooth" => {
            check_keys(map, "operation", &["name", "sigma_x", "sigma_p"])?;
            Ok(Operation::Smooth {
                sigma_x: get_f64(map, "sigma_x", "operation")?,
                sigma_p: get_f64(map, "sigma_p", "operation")?,
            })
        }
        "probe" => {
            check_keys(map, "operation", &["name", "a", "sigma_x", "sigma_p", "cutoffs"])?;
            let a = get_f64(map, "a", "operation")?
                .ok_or_else(|| Error::Scenario("probe requires \"a\"".into()))?;
            let cutoffs = match map.get("cutoffs") {
                None => (2..=8).map(|r| r as f64).collect(),
                Some(v) => v
                    .as_array()
                    .ok_or_else(|| Error::Scenario("cutoffs must be an array".into()))?
                    .iter()
                    .map(|x| {
                        x.as_f64()
                            .ok_or_else(|| Error::Scenario("cutoffs must be numbers".into()))
                    })
                    .collect::<Result<Vec<f64>>>()?,
            };
            Ok(Operation::Probe {
                a,
                sigma_x: get_f64(map, "sigma_x", "operation")?.unwrap_or(1.0),
                sigma_p: get_f64(map, "sigma_p", "operation")?.unwrap_or(1.0),
                cutoffs,
            })
        }
        "claim" => {
            check_keys(map, "operation", &["name", "id"])?;
            let id = map
                .get("id")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Scenario("claim requires a string \"id\"".into()))?;
            Ok(Operation::Claim { id: id.parse()? })
        }
        other => Err(Error::Scenario(format!(
            "unknown operation {other:?} (expected wigner, husimi, entropy, admissibility, \
             smooth, probe, or claim)"
        ))),
    }
}

fn parse_output(value: Option<&Value>) -> Result<Option<OutputSpec>> {
    let Some(v) = value else { return Ok(None) };
    let map = object(v, "output")?;
    check_keys(map, "output", &["path", "format"])?;
    let path = map
        .get("path")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Scenario("output requires a string \"path\"".into()))?;
    let format = match map.get("format") {
        None => ExportFormat::Csv,
        Some(f) => f
            .as_str()
            .ok_or_else(|| Error::Scenario("format must be a string".into()))?
            .parse()?,
    };
    Ok(Some(OutputSpec {
        path: PathBuf::from(path),
        format,
    }))
}

/// Load and schema-validate a scenario file.
pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&text)?;
    let root = object(&value, "scenario")?;
    check_keys(root, "scenario", &["grid", "state", "operation", "output"])?;
    let grid = parse_grid(root.get("grid"))?;
    let state = parse_state(
        root.get("state")
            .ok_or_else(|| Error::Scenario("scenario requires \"state\"".into()))?,
    )?;
    // validate state parameters by constructing on the grid
    state.build(&grid)?;
    let operation = parse_operation(
        root.get("operation")
            .ok_or_else(|| Error::Scenario("scenario requires \"operation\"".into()))?,
    )?;
    let output = parse_output(root.get("output"))?;
    Ok(Scenario {
        grid,
        state,
        operation,
        output,
    })
}

/// Serialized form of a field: grid metadata plus the flat row-major value
/// array of the coarse grid.
#[derive(Debug, Serialize, Deserialize)]
struct FieldJson {
    hbar: f64,
    #[serde(rename = "L")]
    l: f64,
    #[serde(rename = "Nx")]
    nx: usize,
    #[serde(rename = "Np")]
    np: usize,
    dx: f64,
    dp: f64,
    kind: FieldKind,
    values: Vec<f64>,
}

/// Write file contents atomically (temp file in the same directory, then
/// rename).
pub fn atomic_write(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp-{}",
            path.file_name().and_then(|n| n.to_str()).unwrap_or("out"),
            std::process::id()
        )),
        None => PathBuf::from(format!(".pslab-tmp-{}", std::process::id())),
    };
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Export a field as CSV (`x,p,value`, row-major) or JSON.
pub fn export_field(field: &PhaseSpaceField, format: ExportFormat, path: &Path) -> Result<()> {
    let g = field.grid;
    let values = field.values();
    if values.is_empty() {
        return Err(Error::Export("field has no samples".into()));
    }
    match format {
        ExportFormat::Csv => {
            let mut out = String::with_capacity(g.nx * g.np * 24);
            out.push_str("x,p,value\n");
            for j in 0..g.nx {
                for k in 0..g.np {
                    out.push_str(&format!("{:?},{:?},{:?}\n", g.x(j), g.p(k), values[[j, k]]));
                }
            }
            atomic_write(path, out.as_bytes())
        }
        ExportFormat::Json => {
            if !field.is_finite() {
                return Err(Error::Export(
                    "field contains non-finite values; JSON cannot represent them — use csv"
                        .into(),
                ));
            }
            let doc = FieldJson {
                hbar: g.hbar,
                l: g.half_width,
                nx: g.nx,
                np: g.np,
                dx: g.dx,
                dp: g.dp,
                kind: field.kind,
                values: values.iter().copied().collect(),
            };
            atomic_write(path, serde_json::to_string(&doc)?.as_bytes())
        }
    }
}

/// Reload a JSON field export; coarse values round-trip bitwise.
pub fn load_field_json(path: &Path) -> Result<PhaseSpaceField> {
    let doc: FieldJson = serde_json::from_str(&fs::read_to_string(path)?)?;
    let grid = build_grid(doc.hbar, doc.l, doc.nx)?;
    if doc.np != grid.np
        || (doc.dx - grid.dx).abs() > 1e-15
        || (doc.dp - grid.dp).abs() > 1e-15
    {
        return Err(Error::Scenario(
            "field metadata is inconsistent with its grid parameters".into(),
        ));
    }
    if doc.values.len() != grid.nx * grid.np {
        return Err(Error::Scenario(format!(
            "expected {} values, got {}",
            grid.nx * grid.np,
            doc.values.len()
        )));
    }
    let values = ndarray::Array2::from_shape_vec((grid.nx, grid.np), doc.values)
        .expect("length checked above");
    PhaseSpaceField::from_view_values(grid, doc.kind, values)
}

/// Serialize any report type as pretty JSON, written atomically.
pub fn write_json_report<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    atomic_write(path, text.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statelib::BoxShape;

    fn write_tmp(contents: &str) -> tempfile::NamedTempFile {
        let f = tempfile::NamedTempFile::new().unwrap();
        fs::write(f.path(), contents).unwrap();
        f
    }

    #[test]
    fn minimal_scenario_fills_defaults() {
        let f = write_tmp(
            r#"{"state": {"kind": "fock", "n": 0}, "operation": {"name": "wigner"}}"#,
        );
        let s = load_scenario(f.path()).unwrap();
        assert_eq!(s.grid.nx, 256);
        assert_eq!(s.grid.hbar, 1.0);
        assert_eq!(s.grid.half_width, 8.0);
        assert!(matches!(s.operation, Operation::Wigner));
        assert!(s.output.is_none());
    }

    #[test]
    fn negative_kappa_error_names_kappa() {
        let f = write_tmp(
            r#"{"state": {"kind": "fock", "n": 0},
                "operation": {"name": "husimi", "kappa": -1.0}}"#,
        );
        let err = load_scenario(f.path()).unwrap_err().to_string();
        assert!(err.contains("kappa"), "error was: {err}");
    }

    #[test]
    fn odd_nx_error_names_nx() {
        let f = write_tmp(
            r#"{"grid": {"Nx": 255},
                "state": {"kind": "fock", "n": 0},
                "operation": {"name": "wigner"}}"#,
        );
        let err = load_scenario(f.path()).unwrap_err().to_string();
        assert!(err.contains("Nx"), "error was: {err}");
    }

    #[test]
    fn unknown_keys_rejected_by_name() {
        let f = write_tmp(
            r#"{"state": {"kind": "fock", "n": 0, "m": 2},
                "operation": {"name": "wigner"}}"#,
        );
        let err = load_scenario(f.path()).unwrap_err().to_string();
        assert!(err.contains("\"m\""), "error was: {err}");

        let f = write_tmp(
            r#"{"state": {"kind": "fock", "n": 0},
                "operation": {"name": "wigner"}, "extra": 1}"#,
        );
        let err = load_scenario(f.path()).unwrap_err().to_string();
        assert!(err.contains("\"extra\""), "error was: {err}");
    }

    #[test]
    fn csv_layout_and_json_roundtrip() {
        let grid = build_grid(1.0, 8.0, 16).unwrap();
        let field = crate::statelib::box_field(4.0, BoxShape::Square, &grid).unwrap();
        let dir = tempfile::tempdir().unwrap();

        let csv_path = dir.path().join("f.csv");
        export_field(&field, ExportFormat::Csv, &csv_path).unwrap();
        let text = fs::read_to_string(&csv_path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "x,p,value");
        let first = lines.next().unwrap();
        assert!(first.starts_with("-8.0,"), "first row {first:?}");
        // values parse back to the exact doubles
        for (line, (j, k)) in text.lines().skip(1).zip(
            (0..grid.nx).flat_map(|j| (0..grid.np).map(move |k| (j, k))),
        ) {
            let v: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
            assert_eq!(v.to_bits(), field.value_at(j, k).to_bits());
        }

        let json_path = dir.path().join("f.json");
        export_field(&field, ExportFormat::Json, &json_path).unwrap();
        let back = load_field_json(&json_path).unwrap();
        for j in 0..grid.nx {
            for k in 0..grid.np {
                assert_eq!(
                    back.value_at(j, k).to_bits(),
                    field.value_at(j, k).to_bits()
                );
            }
        }
    }

    #[test]
    fn json_export_rejects_non_finite_fields() {
        let grid = build_grid(1.0, 8.0, 64).unwrap();
        let field = crate::statelib::exp_quadratic_field(4.0, &grid).unwrap();
        assert!(!field.is_finite());
        let dir = tempfile::tempdir().unwrap();
        let res = export_field(&field, ExportFormat::Json, &dir.path().join("f.json"));
        assert!(matches!(res, Err(Error::Export(_))));
    }
}
