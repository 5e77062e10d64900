//! Versioned text formats for graphs and families, plus canonical
//! serialization.
//!
//! Both formats are JSON documents with a leading `format` tag
//! (`kgraph/1`, `kgraph-family/1`). Parsing is strict by default: unknown
//! fields are errors, every field is type-checked, and family files must
//! assign every color subset exactly once. The lenient variants downgrade
//! unknown fields to warnings; everything else stays an error.
//!
//! Serialization is canonical: members sorted by id, fixed field order,
//! two-space indentation, one trailing newline. Serializing, parsing and
//! serializing again is byte-identical.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::degree::{parse_face_set, FaceSet};
use crate::family::{FamilyKind, SubsetFamily};
use crate::graph::{EdgeSpec, KGraph, KGraphSpec, SquareSpec, VertexSet};

pub const GRAPH_FORMAT: &str = "kgraph/1";
pub const FAMILY_FORMAT: &str = "kgraph-family/1";

#[derive(Clone, PartialEq, Eq, Error, Debug)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("invalid field {field}: {msg}")]
    Schema { field: String, msg: String },
    #[error("unsupported format tag {found:?}")]
    VersionUnsupported { found: String },
    #[error("family was written for graph {found}, not {expected}")]
    GraphMismatch { expected: String, found: String },
}

fn schema(field: impl Into<String>, msg: impl Into<String>) -> FormatError {
    FormatError::Schema {
        field: field.into(),
        msg: msg.into(),
    }
}

/// Kind tag carried by a family file. `Raw` claims nothing.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyTag {
    Kind(FamilyKind),
    Raw,
}

impl FamilyTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyTag::Kind(FamilyKind::T) => "t",
            FamilyTag::Kind(FamilyKind::O) => "o",
            FamilyTag::Kind(FamilyKind::Invariant) => "invariant",
            FamilyTag::Raw => "raw",
        }
    }

    pub fn parse(text: &str) -> Option<FamilyTag> {
        Some(match text {
            "t" => FamilyTag::Kind(FamilyKind::T),
            "o" => FamilyTag::Kind(FamilyKind::O),
            "invariant" => FamilyTag::Kind(FamilyKind::Invariant),
            "raw" => FamilyTag::Raw,
            _ => return None,
        })
    }
}

/// A parsed family file: the claimed tag and the components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilyDoc {
    pub tag: FamilyTag,
    pub family: SubsetFamily,
}

/// Hex rendering of a graph fingerprint, as stored in family files.
pub fn fingerprint_hex(g: &KGraph) -> String {
    format!("{:016x}", g.fingerprint())
}

fn parse_json(text: &str) -> Result<Value, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })
}

/// Strict walk support: typed getters with field-path errors, and unknown
/// field collection.
struct Walk {
    lenient: bool,
    warnings: Vec<String>,
}

impl Walk {
    fn new(lenient: bool) -> Walk {
        Walk {
            lenient,
            warnings: Vec::new(),
        }
    }

    fn object<'a>(
        &self,
        v: &'a Value,
        field: &str,
    ) -> Result<&'a serde_json::Map<String, Value>, FormatError> {
        v.as_object().ok_or_else(|| schema(field, "expected an object"))
    }

    fn known(
        &mut self,
        map: &serde_json::Map<String, Value>,
        allowed: &[&str],
        context: &str,
    ) -> Result<(), FormatError> {
        for key in map.keys() {
            if !allowed.contains(&key.as_str()) {
                let field = if context.is_empty() {
                    key.clone()
                } else {
                    format!("{context}.{key}")
                };
                if self.lenient {
                    self.warnings.push(format!("ignoring unknown field {field}"));
                } else {
                    return Err(schema(field, "unknown field"));
                }
            }
        }
        Ok(())
    }

    fn req<'a>(
        &self,
        map: &'a serde_json::Map<String, Value>,
        key: &str,
        context: &str,
    ) -> Result<&'a Value, FormatError> {
        map.get(key).ok_or_else(|| {
            let field = if context.is_empty() {
                key.to_string()
            } else {
                format!("{context}.{key}")
            };
            schema(field, "missing required field")
        })
    }

    fn string(&self, v: &Value, field: &str) -> Result<String, FormatError> {
        v.as_str()
            .map(str::to_string)
            .ok_or_else(|| schema(field, "expected a string"))
    }

    fn nat(&self, v: &Value, field: &str) -> Result<usize, FormatError> {
        v.as_u64()
            .map(|n| n as usize)
            .ok_or_else(|| schema(field, "expected a nonnegative integer"))
    }

    fn array<'a>(&self, v: &'a Value, field: &str) -> Result<&'a [Value], FormatError> {
        v.as_array()
            .map(Vec::as_slice)
            .ok_or_else(|| schema(field, "expected an array"))
    }
}

fn check_format_tag(walk: &Walk, v: &Value, expected: &str) -> Result<(), FormatError> {
    let map = walk.object(v, "document")?;
    let tag = walk.string(walk.req(map, "format", "")?, "format")?;
    if tag != expected {
        return Err(FormatError::VersionUnsupported { found: tag });
    }
    Ok(())
}

fn graph_from_value(walk: &mut Walk, root: &Value) -> Result<KGraphSpec, FormatError> {
    check_format_tag(walk, root, GRAPH_FORMAT)?;
    let map = walk.object(root, "document")?;
    walk.known(map, &["format", "rank", "vertices", "edges", "squares"], "")?;
    let rank = walk.nat(walk.req(map, "rank", "")?, "rank")?;
    let mut vertices = Vec::new();
    for (i, v) in walk
        .array(walk.req(map, "vertices", "")?, "vertices")?
        .iter()
        .enumerate()
    {
        vertices.push(walk.string(v, &format!("vertices[{i}]"))?);
    }
    let mut edges = Vec::new();
    for (i, e) in walk
        .array(walk.req(map, "edges", "")?, "edges")?
        .iter()
        .enumerate()
    {
        let ctx = format!("edges[{i}]");
        let emap = walk.object(e, &ctx)?;
        walk.known(emap, &["id", "color", "range", "source"], &ctx)?;
        edges.push(EdgeSpec {
            id: walk.string(walk.req(emap, "id", &ctx)?, &format!("{ctx}.id"))?,
            color: walk.nat(walk.req(emap, "color", &ctx)?, &format!("{ctx}.color"))?,
            range: walk.string(walk.req(emap, "range", &ctx)?, &format!("{ctx}.range"))?,
            source: walk.string(walk.req(emap, "source", &ctx)?, &format!("{ctx}.source"))?,
        });
    }
    let mut squares = Vec::new();
    for (i, s) in walk
        .array(walk.req(map, "squares", "")?, "squares")?
        .iter()
        .enumerate()
    {
        let ctx = format!("squares[{i}]");
        let pair = walk.array(s, &ctx)?;
        if pair.len() != 2 {
            return Err(schema(ctx, "expected two edge pairs"));
        }
        let mut sides = Vec::new();
        for (j, side) in pair.iter().enumerate() {
            let sctx = format!("{ctx}[{j}]");
            let ids = walk.array(side, &sctx)?;
            if ids.len() != 2 {
                return Err(schema(sctx, "expected two edge ids"));
            }
            sides.push((
                walk.string(&ids[0], &format!("{sctx}[0]"))?,
                walk.string(&ids[1], &format!("{sctx}[1]"))?,
            ));
        }
        squares.push(SquareSpec {
            lo_hi: sides[0].clone(),
            hi_lo: sides[1].clone(),
        });
    }
    Ok(KGraphSpec {
        rank,
        vertices,
        edges,
        squares,
    })
}

/// Strict parse of a graph document.
pub fn parse_graph(text: &str) -> Result<KGraphSpec, FormatError> {
    let mut walk = Walk::new(false);
    graph_from_value(&mut walk, &parse_json(text)?)
}

/// Lenient parse: unknown fields become warnings.
pub fn parse_graph_lenient(text: &str) -> Result<(KGraphSpec, Vec<String>), FormatError> {
    let mut walk = Walk::new(true);
    let spec = graph_from_value(&mut walk, &parse_json(text)?)?;
    Ok((spec, walk.warnings))
}

#[derive(Serialize)]
struct EdgeDoc<'a> {
    id: &'a str,
    color: usize,
    range: &'a str,
    source: &'a str,
}

#[derive(Serialize)]
struct GraphDoc<'a> {
    format: &'static str,
    rank: usize,
    vertices: &'a [String],
    edges: Vec<EdgeDoc<'a>>,
    squares: Vec<[[&'a str; 2]; 2]>,
}

/// Canonical text of a graph presentation.
pub fn serialize_graph(spec: &KGraphSpec) -> String {
    let canon = spec.canonicalize();
    let doc = GraphDoc {
        format: GRAPH_FORMAT,
        rank: canon.rank,
        vertices: &canon.vertices,
        edges: canon
            .edges
            .iter()
            .map(|e| EdgeDoc {
                id: &e.id,
                color: e.color,
                range: &e.range,
                source: &e.source,
            })
            .collect(),
        squares: canon
            .squares
            .iter()
            .map(|s| {
                [
                    [s.lo_hi.0.as_str(), s.lo_hi.1.as_str()],
                    [s.hi_lo.0.as_str(), s.hi_lo.1.as_str()],
                ]
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("graph docs serialize");
    out.push('\n');
    out
}

#[derive(Serialize)]
struct FamilyFileDoc<'a> {
    format: &'static str,
    kind: &'static str,
    graph: String,
    entries: BTreeMap<String, Vec<&'a str>>,
}

/// Canonical text of a family over its graph, with the claimed tag and
/// the graph fingerprint.
pub fn serialize_family(g: &KGraph, tag: FamilyTag, fam: &SubsetFamily) -> String {
    let mut entries = BTreeMap::new();
    for (face, set) in fam.components() {
        let mut names: Vec<&str> = set.iter().map(|v| g.vertex_name(v)).collect();
        names.sort_unstable();
        entries.insert(face.to_string(), names);
    }
    let doc = FamilyFileDoc {
        format: FAMILY_FORMAT,
        kind: tag.as_str(),
        graph: fingerprint_hex(g),
        entries,
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("family docs serialize");
    out.push('\n');
    out
}

fn family_from_value(walk: &mut Walk, root: &Value, g: &KGraph) -> Result<FamilyDoc, FormatError> {
    check_format_tag(walk, root, FAMILY_FORMAT)?;
    let map = walk.object(root, "document")?;
    walk.known(map, &["format", "kind", "graph", "entries"], "")?;
    let kind_text = walk.string(walk.req(map, "kind", "")?, "kind")?;
    let tag = FamilyTag::parse(&kind_text)
        .ok_or_else(|| schema("kind", "expected one of t, o, invariant, raw"))?;
    if let Some(v) = map.get("graph") {
        let found = walk.string(v, "graph")?;
        let expected = fingerprint_hex(g);
        if found != expected {
            return Err(FormatError::GraphMismatch { expected, found });
        }
    }
    let entries_val = walk.req(map, "entries", "")?;
    let entries_map = walk.object(entries_val, "entries")?;
    let mut components = vec![None; 1usize << g.rank()];
    for (key, val) in entries_map {
        let field = format!("entries.{key}");
        let face = parse_face_set(key).ok_or_else(|| schema(&field, "not a color subset"))?;
        if face.colors().any(|c| c > g.rank()) {
            return Err(schema(&field, format!("color beyond rank {}", g.rank())));
        }
        let mut set = VertexSet::EMPTY;
        for (i, name_val) in walk.array(val, &field)?.iter().enumerate() {
            let name = walk.string(name_val, &format!("{field}[{i}]"))?;
            let v = g
                .vertex(&name)
                .ok_or_else(|| schema(&field, format!("unknown vertex {name:?}")))?;
            if set.contains(v) {
                return Err(schema(&field, format!("vertex {name:?} listed twice")));
            }
            set.insert(v);
        }
        components[face.index()] = Some(set);
    }
    let mut sets = Vec::with_capacity(components.len());
    for (i, c) in components.into_iter().enumerate() {
        match c {
            Some(s) => sets.push(s),
            None => {
                return Err(schema(
                    format!("entries.{}", FaceSet::from_mask(i as u16)),
                    "missing component",
                ))
            }
        }
    }
    let family = SubsetFamily::new(g, sets).expect("component count and sets checked");
    Ok(FamilyDoc { tag, family })
}

/// Strict parse of a family document against its graph.
pub fn parse_family(text: &str, g: &KGraph) -> Result<FamilyDoc, FormatError> {
    let mut walk = Walk::new(false);
    family_from_value(&mut walk, &parse_json(text)?, g)
}

/// Lenient parse: unknown fields become warnings.
pub fn parse_family_lenient(
    text: &str,
    g: &KGraph,
) -> Result<(FamilyDoc, Vec<String>), FormatError> {
    let mut walk = Walk::new(true);
    let doc = family_from_value(&mut walk, &parse_json(text)?, g)?;
    Ok((doc, walk.warnings))
}
