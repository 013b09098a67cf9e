//! JSON documents: spaces, extension instances, maps, and reports.
//!
//! Parsing validates everything the core types require (topology axioms,
//! density of `S`, continuity of `f`). Serialization is canonical: opens in
//! canonical order, keys in a fixed order, `", "` and `": "` separators, and
//! a trailing newline.

use std::io;
use std::sync::Arc;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use topo_core::oracle::VerificationReport;
use topo_core::{build_space, ExtensionInstance, FinSpace, PartialMap};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("Syntax: {0}")]
    Syntax(String),
    #[error("MissingField: `{0}`")]
    MissingField(String),
    #[error("Malformed: `{field}` should be {expected}")]
    Malformed { field: String, expected: &'static str },
    #[error("InvariantViolation at `{location}`: {source}")]
    InvariantViolation {
        location: String,
        source: topo_core::Error,
    },
    #[error("InvariantViolation at `{location}`: {detail}")]
    Inconsistent { location: String, detail: String },
    #[error("UnsupportedKind: {0}")]
    UnsupportedKind(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceDoc {
    pub space: FinSpace,
    /// Display names for point ids; presentation only.
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceDoc {
    pub instance: ExtensionInstance,
    pub x_labels: Option<Vec<String>>,
    pub y_labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDoc {
    pub assignment: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Space(SpaceDoc),
    Instance(InstanceDoc),
    Map(MapDoc),
    Report(VerificationReport),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Space(_) => "space",
            Document::Instance(_) => "instance",
            Document::Map(_) => "map",
            Document::Report(_) => "report",
        }
    }
}

pub fn parse_document(text: &str) -> Result<Document, DocError> {
    let value: Value = serde_json::from_str(text).map_err(|e| DocError::Syntax(e.to_string()))?;
    let obj = value.as_object().ok_or(DocError::Malformed {
        field: "<document>".into(),
        expected: "a JSON object",
    })?;
    if obj.contains_key("opens") {
        parse_space(obj, "").map(Document::Space)
    } else if obj.contains_key("X") {
        parse_instance(obj).map(Document::Instance)
    } else if obj.contains_key("assignment") {
        Ok(Document::Map(MapDoc {
            assignment: usize_list(obj, "assignment", "assignment")?,
        }))
    } else if obj.contains_key("claim") {
        serde_json::from_value(value.clone())
            .map(Document::Report)
            .map_err(|e| DocError::Syntax(e.to_string()))
    } else {
        Err(DocError::MissingField("opens | X | assignment | claim".into()))
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, DocError> {
    obj.get(key).ok_or_else(|| DocError::MissingField(path.to_string()))
}

fn as_usize(v: &Value, path: &str) -> Result<usize, DocError> {
    v.as_u64().map(|x| x as usize).ok_or(DocError::Malformed {
        field: path.to_string(),
        expected: "a non-negative integer",
    })
}

fn usize_list(obj: &Map<String, Value>, key: &str, path: &str) -> Result<Vec<usize>, DocError> {
    field(obj, key, path)?
        .as_array()
        .ok_or(DocError::Malformed {
            field: path.to_string(),
            expected: "a list of point ids",
        })?
        .iter()
        .enumerate()
        .map(|(i, v)| as_usize(v, &format!("{path}[{i}]")))
        .collect()
}

fn prefixed(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn parse_labels(obj: &Map<String, Value>, n: usize, prefix: &str) -> Result<Option<Vec<String>>, DocError> {
    let path = prefixed(prefix, "labels");
    let Some(v) = obj.get("labels") else {
        return Ok(None);
    };
    let labels = v
        .as_array()
        .and_then(|a| a.iter().map(|l| l.as_str().map(str::to_string)).collect::<Option<Vec<_>>>())
        .ok_or(DocError::Malformed {
            field: path.clone(),
            expected: "a list of strings",
        })?;
    if labels.len() != n {
        return Err(DocError::Inconsistent {
            location: path,
            detail: format!("LabelCount: {} labels for {n} points", labels.len()),
        });
    }
    Ok(Some(labels))
}

fn parse_space(obj: &Map<String, Value>, prefix: &str) -> Result<SpaceDoc, DocError> {
    let n = as_usize(field(obj, "n", &prefixed(prefix, "n"))?, &prefixed(prefix, "n"))?;
    let opens_path = prefixed(prefix, "opens");
    let opens = field(obj, "opens", &opens_path)?
        .as_array()
        .ok_or(DocError::Malformed {
            field: opens_path.clone(),
            expected: "a list of point lists",
        })?
        .iter()
        .enumerate()
        .map(|(i, u)| {
            u.as_array()
                .ok_or(DocError::Malformed {
                    field: format!("{opens_path}[{i}]"),
                    expected: "a list of point ids",
                })?
                .iter()
                .enumerate()
                .map(|(j, p)| as_usize(p, &format!("{opens_path}[{i}][{j}]")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let space = build_space(n, &opens).map_err(|source| DocError::InvariantViolation {
        location: opens_path,
        source,
    })?;
    let labels = parse_labels(obj, n, prefix)?;
    Ok(SpaceDoc { space, labels })
}

fn parse_instance(obj: &Map<String, Value>) -> Result<InstanceDoc, DocError> {
    let sub = |key: &str| -> Result<SpaceDoc, DocError> {
        let v = field(obj, key, key)?.as_object().ok_or(DocError::Malformed {
            field: key.to_string(),
            expected: "a space object",
        })?;
        parse_space(v, key)
    };
    let x = sub("X")?;
    let y = sub("Y")?;
    let s = usize_list(obj, "S", "S")?;
    let f_obj = field(obj, "f", "f")?.as_object().ok_or(DocError::Malformed {
        field: "f".into(),
        expected: "an object from point ids to point ids",
    })?;
    let mut pairs = Vec::with_capacity(f_obj.len());
    for (k, v) in f_obj {
        let path = format!("f.{k}");
        let p: usize = k.parse().map_err(|_| DocError::Malformed {
            field: path.clone(),
            expected: "a key that is a point id",
        })?;
        pairs.push((p, as_usize(v, &path)?));
    }
    pairs.sort_unstable();
    let mut s_sorted = s.clone();
    s_sorted.sort_unstable();
    s_sorted.dedup();
    let keys: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    if s_sorted != keys {
        return Err(DocError::Inconsistent {
            location: "f".into(),
            detail: format!("DomainMismatch: S is {s_sorted:?} but f is defined on {keys:?}"),
        });
    }
    let (xs, ys) = (Arc::new(x.space), Arc::new(y.space));
    let f = PartialMap::new(xs, ys, pairs).map_err(|source| DocError::InvariantViolation {
        location: "f".into(),
        source,
    })?;
    let instance = ExtensionInstance::new(f).map_err(|source| {
        let location = match source {
            topo_core::Error::DensityFailed { .. } => "S",
            _ => "f",
        };
        DocError::InvariantViolation {
            location: location.into(),
            source,
        }
    })?;
    Ok(InstanceDoc {
        instance,
        x_labels: x.labels,
        y_labels: y.labels,
    })
}

/// Compact JSON with a space after every `:` and `,`.
struct SpacedFormatter;

impl serde_json::ser::Formatter for SpacedFormatter {
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            writer.write_all(b", ")
        }
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            writer.write_all(b", ")
        }
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        writer.write_all(b": ")
    }
}

/// Writes `value` in the spaced single-line style, newline-terminated.
pub fn to_spaced_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SpacedFormatter);
    value.serialize(&mut ser).expect("in-memory serialization");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

#[derive(Serialize)]
pub(crate) struct SpaceRepr<'a> {
    n: usize,
    opens: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<&'a [String]>,
}

impl<'a> SpaceRepr<'a> {
    pub(crate) fn new(space: &FinSpace, labels: Option<&'a [String]>) -> Self {
        SpaceRepr {
            n: space.n(),
            opens: space.open_lists(),
            labels,
        }
    }
}

/// `f` as a JSON object keyed by point id, in ascending id order.
struct PointMap(Vec<(usize, usize)>);

impl Serialize for PointMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(&k.to_string(), v)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
#[allow(non_snake_case)]
pub(crate) struct InstanceRepr<'a> {
    X: SpaceRepr<'a>,
    Y: SpaceRepr<'a>,
    S: Vec<usize>,
    f: PointMap,
}

impl<'a> InstanceRepr<'a> {
    pub(crate) fn new(inst: &ExtensionInstance, x_labels: Option<&'a [String]>, y_labels: Option<&'a [String]>) -> Self {
        InstanceRepr {
            X: SpaceRepr::new(inst.x(), x_labels),
            Y: SpaceRepr::new(inst.y(), y_labels),
            S: inst.s().to_vec(),
            f: PointMap(inst.f().pairs().collect()),
        }
    }
}

#[derive(Serialize)]
struct MapRepr<'a> {
    assignment: &'a [usize],
}

pub fn serialize_document(doc: &Document) -> String {
    match doc {
        Document::Space(d) => to_spaced_json(&SpaceRepr::new(&d.space, d.labels.as_deref())),
        Document::Instance(d) => to_spaced_json(&InstanceRepr::new(
            &d.instance,
            d.x_labels.as_deref(),
            d.y_labels.as_deref(),
        )),
        Document::Map(d) => to_spaced_json(&MapRepr {
            assignment: &d.assignment,
        }),
        Document::Report(r) => serialize_report(r),
    }
}

/// Reports are multi-line; pretty-printed with a trailing newline.
pub fn serialize_report(report: &VerificationReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("in-memory serialization");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"{"X": {"n": 3, "opens": [[], [0], [2], [0,2], [0,1,2]], "labels": ["l", "m", "r"]},
        "Y": {"n": 3, "opens": [[0,1,2], [], [2], [0,2], [1,2]]},
        "S": [0, 2], "f": {"2": 1, "0": 0}}"#;

    #[test]
    fn parse_example_instance() {
        let Document::Instance(d) = parse_document(EXAMPLE).unwrap() else {
            panic!("not an instance");
        };
        assert_eq!(d.instance.s().to_vec(), vec![0, 2]);
        assert_eq!(d.instance.f().values(), vec![0, 1]);
        assert_eq!(d.x_labels.as_deref(), Some(&["l".to_string(), "m".into(), "r".into()][..]));
    }

    #[test]
    fn canonical_space_text() {
        let d = parse_document(r#"{"opens": [[0,1],[0],[]], "n": 2}"#).unwrap();
        assert_eq!(serialize_document(&d), "{\"n\": 2, \"opens\": [[], [0], [0, 1]]}\n");
    }

    #[test]
    fn canonical_map_text() {
        let d = Document::Map(MapDoc {
            assignment: vec![0, 1, 1],
        });
        assert_eq!(serialize_document(&d), "{\"assignment\": [0, 1, 1]}\n");
        assert_eq!(parse_document(&serialize_document(&d)).unwrap(), d);
    }

    #[test]
    fn instance_text_is_idempotent() {
        let once = serialize_document(&parse_document(EXAMPLE).unwrap());
        let twice = serialize_document(&parse_document(&once).unwrap());
        assert_eq!(once, twice);
        assert!(once.starts_with("{\"X\": {\"n\": 3, \"opens\": [[], [0], [2], [0, 2], [0, 1, 2]], \"labels\": [\"l\", \"m\", \"r\"]}, \"Y\""));
        assert!(once.ends_with("\"S\": [0, 2], \"f\": {\"0\": 0, \"2\": 1}}\n"));
    }

    #[test]
    fn invariant_violations_name_the_problem() {
        let e = parse_document(r#"{"n": 3, "opens": [[], [0], [1], [0,1,2]]}"#).unwrap_err();
        assert!(e.to_string().contains("NotClosedUnderUnion"), "{e}");
        assert!(e.to_string().contains("{0}") && e.to_string().contains("{1}"), "{e}");

        let e = parse_document(
            r#"{"X": {"n": 2, "opens": [[], [0], [1], [0,1]]}, "Y": {"n": 1, "opens": [[], [0]]}, "S": [0], "f": {"0": 0}}"#,
        )
        .unwrap_err();
        assert!(e.to_string().contains("DensityFailed"), "{e}");

        let e = parse_document(
            r#"{"X": {"n": 2, "opens": [[], [0], [0,1]]}, "Y": {"n": 2, "opens": [[], [0], [0,1]]}, "S": [0,1], "f": {"0": 1, "1": 0}}"#,
        )
        .unwrap_err();
        assert!(e.to_string().contains("DiscontinuousMap"), "{e}");

        let e = parse_document(r#"{"n": 2, "opens": [[], [0], [3], [0,1]]}"#).unwrap_err();
        assert!(e.to_string().contains("PointOutOfRange: point 3"), "{e}");
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(parse_document("{"), Err(DocError::Syntax(_))));
        assert!(matches!(parse_document(r#"{"opens": []}"#), Err(DocError::MissingField(f)) if f == "n"));
        assert!(matches!(parse_document(r#"{"foo": 1}"#), Err(DocError::MissingField(_))));
        assert!(matches!(
            parse_document(r#"{"n": 2, "opens": [[], [0, "a"], [0, 1]]}"#),
            Err(DocError::Malformed { field, .. }) if field == "opens[1][1]"
        ));
        assert!(matches!(
            parse_document(r#"{"X": {"n": 1, "opens": [[], [0]]}, "Y": {"n": 1, "opens": [[], [0]]}, "S": [0], "f": {}}"#),
            Err(DocError::Inconsistent { .. })
        ));
        assert!(matches!(
            parse_document(r#"{"n": 2, "opens": [[], [0,1]], "labels": ["a"]}"#),
            Err(DocError::Inconsistent { .. })
        ));
    }
}
