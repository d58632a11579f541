//! FOLD-subset document parsing and canonical serialization.
//!
//! The on-disk format is a strict subset of the community FOLD JSON
//! convention: `vertices_coords` ([x, y] in mm), `edges_vertices`,
//! `edges_assignment` ("M"/"V"/"B"/"S"), plus a nonstandard
//! `edges_seamPair` array (pair id per edge, -1 for non-seam edges) that is
//! required whenever an "S" assignment appears. `file_title` is optional.
//! Units are fixed to millimeters; a `frame_unit` other than "mm" is
//! rejected rather than converted. Unknown top-level keys round-trip through
//! [`CreasePattern::metadata`] untouched.
//!
//! Canonical form: sorted keys, two-space pretty printing, LF endings, and
//! shortest round-trip decimals, so serializing is a fixed point after one
//! pass.

use serde_json::{json, Map, Value};

use super::{validate_pattern, CreaseAssignment, CreasePattern, Diagnostic, Edge};
use crate::geom::Point2;

/// Failure to load a FOLD-subset document.
#[derive(Debug, thiserror::Error)]
pub enum FoldError {
    /// Missing required key, wrong type, or out-of-contract value.
    #[error("schema: {0}")]
    Schema(String),
    /// Structurally well-formed document whose pattern violates an invariant.
    #[error("geometry: {}", format_diagnostics(.0))]
    Geometry(Vec<Diagnostic>),
}

fn format_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

const KNOWN_KEYS: &[&str] = &[
    "vertices_coords",
    "edges_vertices",
    "edges_assignment",
    "edges_seamPair",
    "file_title",
    "frame_unit",
];

/// Parses a FOLD-subset document into a validated [`CreasePattern`].
pub fn parse_pattern(text: &str) -> Result<CreasePattern, FoldError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| FoldError::Schema(format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| FoldError::Schema("top-level value must be an object".into()))?;

    if let Some(unit) = obj.get("frame_unit") {
        let unit = unit
            .as_str()
            .ok_or_else(|| FoldError::Schema("frame_unit must be a string".into()))?;
        if unit != "mm" {
            return Err(FoldError::Schema(format!(
                "unsupported frame_unit {unit:?}; units are fixed to \"mm\""
            )));
        }
    }

    let coords = require_array(obj, "vertices_coords")?;
    let mut vertices = Vec::with_capacity(coords.len());
    for (i, c) in coords.iter().enumerate() {
        let pair = c.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
            FoldError::Schema(format!("vertices_coords[{i}] must be a [x, y] pair"))
        })?;
        let x = number(&pair[0], &format!("vertices_coords[{i}][0]"))?;
        let y = number(&pair[1], &format!("vertices_coords[{i}][1]"))?;
        vertices.push(Point2::new(x, y));
    }

    let edge_verts = require_array(obj, "edges_vertices")?;
    let assignments = require_array(obj, "edges_assignment")?;
    if edge_verts.len() != assignments.len() {
        return Err(FoldError::Schema(format!(
            "edges_vertices has {} entries but edges_assignment has {}",
            edge_verts.len(),
            assignments.len()
        )));
    }

    let letters: Vec<&str> = assignments
        .iter()
        .enumerate()
        .map(|(i, a)| {
            a.as_str()
                .ok_or_else(|| FoldError::Schema(format!("edges_assignment[{i}] must be a string")))
        })
        .collect::<Result<_, _>>()?;
    let has_seams = letters.iter().any(|&l| l == "S");

    let seam_pairs: Option<Vec<i64>> = match obj.get("edges_seamPair") {
        Some(v) => {
            let arr = v.as_array().ok_or_else(|| {
                FoldError::Schema("edges_seamPair must be an array of integers".into())
            })?;
            if arr.len() != edge_verts.len() {
                return Err(FoldError::Schema(format!(
                    "edges_seamPair has {} entries but edges_vertices has {}",
                    arr.len(),
                    edge_verts.len()
                )));
            }
            Some(
                arr.iter()
                    .enumerate()
                    .map(|(i, v)| {
                        v.as_i64().ok_or_else(|| {
                            FoldError::Schema(format!("edges_seamPair[{i}] must be an integer"))
                        })
                    })
                    .collect::<Result<_, _>>()?,
            )
        }
        None if has_seams => {
            return Err(FoldError::Schema(
                "edges_seamPair is required when any edge is assigned \"S\"".into(),
            ))
        }
        None => None,
    };

    let mut edges = Vec::with_capacity(edge_verts.len());
    for (i, ev) in edge_verts.iter().enumerate() {
        let pair = ev.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
            FoldError::Schema(format!("edges_vertices[{i}] must be a [v1, v2] pair"))
        })?;
        let v1 = vertex_index(&pair[0], i, vertices.len())?;
        let v2 = vertex_index(&pair[1], i, vertices.len())?;
        let pair_id = seam_pairs.as_ref().map(|p| p[i]).unwrap_or(-1);
        let assignment = match letters[i] {
            "M" => CreaseAssignment::Mountain,
            "V" => CreaseAssignment::Valley,
            "B" => CreaseAssignment::Boundary,
            "S" => {
                if pair_id < 0 {
                    return Err(FoldError::Schema(format!(
                        "edge {i} is assigned \"S\" but edges_seamPair[{i}] is {pair_id}"
                    )));
                }
                let id = u32::try_from(pair_id).map_err(|_| {
                    FoldError::Schema(format!("edges_seamPair[{i}] = {pair_id} is out of range"))
                })?;
                CreaseAssignment::Seam(id)
            }
            other => {
                return Err(FoldError::Schema(format!(
                    "edges_assignment[{i}] = {other:?}; expected \"M\", \"V\", \"B\", or \"S\""
                )))
            }
        };
        if letters[i] != "S" && pair_id != -1 {
            return Err(FoldError::Schema(format!(
                "edge {i} is assigned {:?} but edges_seamPair[{i}] = {pair_id}; expected -1",
                letters[i]
            )));
        }
        edges.push(Edge::new(v1, v2, assignment));
    }

    let name = match obj.get("file_title") {
        Some(v) => v
            .as_str()
            .ok_or_else(|| FoldError::Schema("file_title must be a string".into()))?
            .to_string(),
        None => String::new(),
    };

    let metadata = obj
        .iter()
        .filter(|(k, _)| !KNOWN_KEYS.contains(&k.as_str()))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();

    let pattern = CreasePattern {
        name,
        vertices,
        edges,
        metadata,
    };

    let errors: Vec<Diagnostic> = validate_pattern(&pattern)
        .into_iter()
        .filter(|d| d.severity == super::Severity::Error)
        .collect();
    if !errors.is_empty() {
        return Err(FoldError::Geometry(errors));
    }
    Ok(pattern)
}

/// Serializes a valid pattern to its canonical FOLD-subset document.
///
/// `parse_pattern(serialize_pattern(p))` equals `p` field for field, and a
/// second serialization is byte-identical to the first.
pub fn serialize_pattern(p: &CreasePattern) -> String {
    let mut obj = Map::new();
    for (k, v) in &p.metadata {
        if !KNOWN_KEYS.contains(&k.as_str()) {
            obj.insert(k.clone(), v.clone());
        }
    }

    obj.insert(
        "vertices_coords".into(),
        Value::Array(p.vertices.iter().map(|v| json!([v.x, v.y])).collect()),
    );
    obj.insert(
        "edges_vertices".into(),
        Value::Array(p.edges.iter().map(|e| json!([e.v1, e.v2])).collect()),
    );
    obj.insert(
        "edges_assignment".into(),
        Value::Array(
            p.edges
                .iter()
                .map(|e| {
                    json!(match e.assignment {
                        CreaseAssignment::Mountain => "M",
                        CreaseAssignment::Valley => "V",
                        CreaseAssignment::Boundary => "B",
                        CreaseAssignment::Seam(_) => "S",
                    })
                })
                .collect(),
        ),
    );
    if p.edges
        .iter()
        .any(|e| matches!(e.assignment, CreaseAssignment::Seam(_)))
    {
        obj.insert(
            "edges_seamPair".into(),
            Value::Array(
                p.edges
                    .iter()
                    .map(|e| match e.assignment {
                        CreaseAssignment::Seam(id) => json!(i64::from(id)),
                        _ => json!(-1),
                    })
                    .collect(),
            ),
        );
    }
    if !p.name.is_empty() {
        obj.insert("file_title".into(), json!(p.name));
    }
    obj.insert("frame_unit".into(), json!("mm"));

    // serde_json's default map is ordered; keys come out sorted.
    let mut text = serde_json::to_string_pretty(&Value::Object(obj)).expect("finite coordinates");
    text.push('\n');
    text
}

fn require_array<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Vec<Value>, FoldError> {
    obj.get(key)
        .ok_or_else(|| FoldError::Schema(format!("missing required key {key:?}")))?
        .as_array()
        .ok_or_else(|| FoldError::Schema(format!("{key} must be an array")))
}

fn number(v: &Value, what: &str) -> Result<f64, FoldError> {
    v.as_f64()
        .ok_or_else(|| FoldError::Schema(format!("{what} must be a number")))
}

fn vertex_index(v: &Value, edge: usize, nv: usize) -> Result<usize, FoldError> {
    let idx = v
        .as_u64()
        .ok_or_else(|| {
            FoldError::Schema(format!(
                "edges_vertices[{edge}] entries must be non-negative integers"
            ))
        })?
        .try_into()
        .map_err(|_| FoldError::Schema(format!("edges_vertices[{edge}] index is out of range")))?;
    if idx >= nv {
        // Out-of-range indices are a document-level fault, caught here rather
        // than by the validator so the error names the edge.
        return Err(FoldError::Schema(format!(
            "edges_vertices[{edge}] references vertex {idx} but only {nv} vertices exist"
        )));
    }
    Ok(idx)
}
