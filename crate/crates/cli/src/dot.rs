//! Graphviz rendering of specialization preorders and extensions.

use std::fmt::Write;

use topo_core::oracle::brute_force_existence;
use topo_core::{check_conditions, construct_extension, FinSpace, TieBreak, TotalMap};

use crate::document::{DocError, Document};

fn label(labels: Option<&[String]>, x: usize) -> String {
    labels
        .and_then(|l| l.get(x).cloned())
        .unwrap_or_else(|| x.to_string())
        .replace('"', "\\\"")
}

/// Nodes and specialization edges `x -> y` for `x ∈ [{y}]`, `x ≠ y`.
fn space_body(out: &mut String, space: &FinSpace, labels: Option<&[String]>, prefix: &str, indent: &str) {
    for x in 0..space.n() {
        let _ = writeln!(out, "{indent}{prefix}{x} [label=\"{}\"];", label(labels, x));
    }
    for x in 0..space.n() {
        for y in 0..space.n() {
            if x != y && space.specializes(x, y) {
                let _ = writeln!(out, "{indent}{prefix}{x} -> {prefix}{y};");
            }
        }
    }
}

/// DOT for a space, or for an instance with its `f` arcs and the arcs of an
/// extension `F` off `S`. Without an explicit `F`, the constructed extension
/// is drawn when the closure condition holds, otherwise the first
/// θ-continuous extension found by search, otherwise none.
pub fn emit_dot(doc: &Document) -> Result<String, DocError> {
    emit_dot_with_map(doc, None)
}

pub fn emit_dot_with_map(doc: &Document, extension: Option<&TotalMap>) -> Result<String, DocError> {
    let mut out = String::new();
    match doc {
        Document::Space(d) => {
            out.push_str("digraph space {\n  rankdir=BT;\n");
            space_body(&mut out, &d.space, d.labels.as_deref(), "p", "  ");
            out.push_str("}\n");
        }
        Document::Instance(d) => {
            let inst = &d.instance;
            let chosen = match extension {
                Some(f) => Some(f.clone()),
                None if check_conditions(inst).sufficient_holds => construct_extension(inst, TieBreak::Min).ok(),
                None => brute_force_existence(inst, 1).ok().flatten(),
            };
            out.push_str("digraph instance {\n  rankdir=BT;\n");
            out.push_str("  subgraph cluster_x {\n    label=\"X\";\n");
            space_body(&mut out, inst.x(), d.x_labels.as_deref(), "x", "    ");
            out.push_str("  }\n  subgraph cluster_y {\n    label=\"Y\";\n");
            space_body(&mut out, inst.y(), d.y_labels.as_deref(), "y", "    ");
            out.push_str("  }\n");
            for (x, y) in inst.f().pairs() {
                let _ = writeln!(out, "  x{x} -> y{y} [label=\"f\", style=dashed, constraint=false];");
            }
            if let Some(big_f) = chosen {
                for x in inst.free_points() {
                    let _ = writeln!(
                        out,
                        "  x{x} -> y{} [label=\"F\", color=blue, constraint=false];",
                        big_f.apply(x)
                    );
                }
            }
            out.push_str("}\n");
        }
        Document::Map(_) => return Err(DocError::UnsupportedKind("map documents have no spaces to draw")),
        Document::Report(_) => return Err(DocError::UnsupportedKind("reports cannot be drawn")),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::parse_document;

    fn edges(dot: &str) -> Vec<&str> {
        dot.lines().filter(|l| l.contains("->")).map(str::trim).collect()
    }

    #[test]
    fn point_space() {
        let d = parse_document(r#"{"n": 1, "opens": [[], [0]]}"#).unwrap();
        let dot = emit_dot(&d).unwrap();
        assert!(dot.contains("p0 [label=\"0\"];"));
        assert!(edges(&dot).is_empty());
    }

    #[test]
    fn sierpinski_edge() {
        let d = parse_document(r#"{"n": 2, "opens": [[], [0], [0, 1]]}"#).unwrap();
        assert_eq!(edges(&emit_dot(&d).unwrap()), vec!["p1 -> p0;"]);
    }

    #[test]
    fn discrete_has_no_edges() {
        let d = parse_document(r#"{"n": 3, "opens": [[], [0], [1], [2], [0,1], [0,2], [1,2], [0,1,2]]}"#).unwrap();
        assert!(edges(&emit_dot(&d).unwrap()).is_empty());
    }

    #[test]
    fn instance_arcs() {
        let d = parse_document(
            r#"{"X": {"n": 3, "opens": [[], [0], [2], [0,2], [0,1,2]]}, "Y": {"n": 3, "opens": [[], [2], [0,2], [1,2], [0,1,2]]}, "S": [0,2], "f": {"0": 0, "2": 1}}"#,
        )
        .unwrap();
        let dot = emit_dot(&d).unwrap();
        assert!(dot.contains("x0 -> y0 [label=\"f\""));
        assert!(dot.contains("x2 -> y1 [label=\"f\""));
        // closure condition fails, so F comes from search: F(1) = 0
        assert!(dot.contains("x1 -> y0 [label=\"F\""));
        assert!(dot.contains("x1 -> x0;") && dot.contains("x1 -> x2;"));
    }

    #[test]
    fn maps_are_unsupported() {
        let d = parse_document(r#"{"assignment": [0]}"#).unwrap();
        assert!(matches!(emit_dot(&d), Err(DocError::UnsupportedKind(_))));
    }
}
