//! Canonical JSON instance format.
//!
//! ```text
//! {"kind":"imst"|"wildag","n":int,"budget":int,
//!  "edges":[{"id":int,"u":int,"v":int,"ladder":[[len,cost],...]}],
//!  "source":int?,"sink":int?,"directed":bool,"known_optimum":int?}
//! ```
//!
//! Serialization is compact, edges are ordered by id and ladders by level, so
//! equal instances serialize to identical bytes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{
    validate_dag, validate_graph, DagEdge, DagInstance, ImprovementLevel, Instance, Problem, Sense,
    UpgradableEdge, UpgradableGraph, Violation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Malformed {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at line {line}, column {column}: {message}")]
    Schema {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid instance: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Imst,
    Wildag,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    kind: Kind,
    n: usize,
    budget: i64,
    edges: Vec<RawEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sink: Option<usize>,
    directed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    known_optimum: Option<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    id: usize,
    u: usize,
    v: usize,
    ladder: Vec<[i64; 2]>,
}

/// Parses and validates an instance document. `sense` selects the ladder
/// direction that is accepted.
pub fn parse(bytes: &[u8], sense: Sense) -> Result<Instance, ParseError> {
    let doc: Document = serde_json::from_slice(bytes).map_err(|e| {
        let (line, column, message) = (e.line(), e.column(), e.to_string());
        match e.classify() {
            serde_json::error::Category::Data => ParseError::Schema {
                line,
                column,
                message,
            },
            _ => ParseError::Malformed {
                line,
                column,
                message,
            },
        }
    })?;
    let mut violations = Vec::new();
    if doc.budget < 0 {
        violations.push(Violation::new("budget", "budget must be nonnegative"));
    }
    let problem = match doc.kind {
        Kind::Imst => {
            if doc.directed {
                violations.push(Violation::new("directed", "imst instances are undirected"));
            }
            if doc.source.is_some() || doc.sink.is_some() {
                violations.push(Violation::new(
                    "source",
                    "imst instances have no source or sink",
                ));
            }
            let edges: Vec<UpgradableEdge> = doc
                .edges
                .iter()
                .map(|e| {
                    let ladder = e
                        .ladder
                        .iter()
                        .map(|&[l, c]| ImprovementLevel::new(l, c))
                        .collect();
                    UpgradableEdge::new(e.id, e.u, e.v, ladder)
                })
                .collect();
            violations.extend(validate_graph(doc.n, &edges, sense));
            if !violations.is_empty() {
                return Err(ParseError::Invalid(violations));
            }
            Problem::Imst(UpgradableGraph::with_sense(doc.n, edges, sense).map_err(invalid)?)
        }
        Kind::Wildag => {
            if !doc.directed {
                violations.push(Violation::new("directed", "wildag instances are directed"));
            }
            let (source, sink) = match (doc.source, doc.sink) {
                (Some(s), Some(t)) => (s, t),
                (s, t) => {
                    if s.is_none() {
                        violations.push(Violation::new("source", "missing field `source`"));
                    }
                    if t.is_none() {
                        violations.push(Violation::new("sink", "missing field `sink`"));
                    }
                    return Err(ParseError::Invalid(violations));
                }
            };
            let mut edges = Vec::with_capacity(doc.edges.len());
            for (pos, e) in doc.edges.iter().enumerate() {
                match e.ladder.as_slice() {
                    [[l, c0], [h, q]] => {
                        if *c0 != 0 {
                            violations.push(Violation::new(
                                format!("edges[{pos}].ladder[0]"),
                                "level 0 must cost 0",
                            ));
                        }
                        edges.push(DagEdge::new(e.id, e.u, e.v, *l, *h, *q));
                    }
                    _ => violations.push(Violation::new(
                        format!("edges[{pos}].ladder"),
                        "wildag ladders have exactly two levels",
                    )),
                }
            }
            violations.extend(validate_dag(doc.n, &edges, source, sink, sense));
            if !violations.is_empty() {
                return Err(ParseError::Invalid(violations));
            }
            Problem::Wildag(
                DagInstance::with_sense(doc.n, edges, source, sink, sense).map_err(invalid)?,
            )
        }
    };
    Ok(Instance {
        problem,
        budget: doc.budget,
        known_optimum: doc.known_optimum,
    })
}

fn invalid(e: crate::Error) -> ParseError {
    match e {
        crate::Error::Invalid(v) => ParseError::Invalid(v),
        other => ParseError::Invalid(vec![Violation::new("", other.to_string())]),
    }
}

/// Canonical compact serialization.
pub fn serialize(instance: &Instance) -> Vec<u8> {
    let doc = match &instance.problem {
        Problem::Imst(g) => Document {
            kind: Kind::Imst,
            n: g.vertex_count(),
            budget: instance.budget,
            edges: g
                .edges()
                .iter()
                .map(|e| RawEdge {
                    id: e.id,
                    u: e.u,
                    v: e.v,
                    ladder: e.ladder.iter().map(|l| [l.length, l.cost]).collect(),
                })
                .collect(),
            source: None,
            sink: None,
            directed: false,
            known_optimum: instance.known_optimum,
        },
        Problem::Wildag(d) => Document {
            kind: Kind::Wildag,
            n: d.vertex_count(),
            budget: instance.budget,
            edges: d
                .edges()
                .iter()
                .map(|e| RawEdge {
                    id: e.id,
                    u: e.tail,
                    v: e.head,
                    ladder: vec![[e.base, 0], [e.improved, e.cost]],
                })
                .collect(),
            source: Some(d.source()),
            sink: Some(d.sink()),
            directed: true,
            known_optimum: instance.known_optimum,
        },
    };
    serde_json::to_vec(&doc).expect("instance documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_VERTEX: &str = r#"{"kind":"imst","n":2,"budget":3,"edges":[{"id":0,"u":0,"v":1,"ladder":[[2,0],[5,3]]}],"directed":false}"#;

    #[test]
    fn parses_minimal_document() {
        let inst = parse(TWO_VERTEX.as_bytes(), Sense::Maximize).unwrap();
        assert_eq!(inst.graph().unwrap().vertex_count(), 2);
        assert_eq!(inst.budget, 3);
        assert_eq!(serialize(&inst), TWO_VERTEX.as_bytes());
    }

    #[test]
    fn missing_budget_names_the_field() {
        let doc = TWO_VERTEX.replace(r#""budget":3,"#, "");
        match parse(doc.as_bytes(), Sense::Maximize) {
            Err(ParseError::Schema { message, .. }) => {
                assert!(message.contains("`budget`"), "{message}")
            }
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_json_reports_position() {
        match parse(b"{\"kind\":\n  \"imst\",,}", Sense::Maximize) {
            Err(ParseError::Malformed { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected malformed error, got {other:?}"),
        }
    }

    #[test]
    fn invariant_violation_has_location() {
        let doc = TWO_VERTEX.replace("[[2,0]", "[[2,1]");
        match parse(doc.as_bytes(), Sense::Maximize) {
            Err(ParseError::Invalid(v)) => {
                assert_eq!(v[0].location, "edges[0].ladder[0]");
                assert_eq!(v[0].message, "level 0 must cost 0");
            }
            other => panic!("expected invalid, got {other:?}"),
        }
    }

    #[test]
    fn wildag_document() {
        let doc = r#"{"kind":"wildag","n":2,"budget":1,"edges":[{"id":0,"u":0,"v":1,"ladder":[[1,0],[4,1]]}],"source":0,"sink":1,"directed":true}"#;
        let inst = parse(doc.as_bytes(), Sense::Maximize).unwrap();
        let d = inst.dag().unwrap();
        assert_eq!(
            (d.edge(0).base, d.edge(0).improved, d.edge(0).cost),
            (1, 4, 1)
        );
        assert_eq!(serialize(&inst), doc.as_bytes());

        let no_sink = doc.replace(r#""sink":1,"#, "");
        assert!(matches!(
            parse(no_sink.as_bytes(), Sense::Maximize),
            Err(ParseError::Invalid(_))
        ));
        let three = doc.replace("[[1,0],[4,1]]", "[[1,0],[4,1],[5,2]]");
        assert!(matches!(
            parse(three.as_bytes(), Sense::Maximize),
            Err(ParseError::Invalid(_))
        ));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let doc = TWO_VERTEX.replace(r#""directed":false"#, r#""directed":false,"extra":1"#);
        assert!(matches!(
            parse(doc.as_bytes(), Sense::Maximize),
            Err(ParseError::Schema { .. })
        ));
    }

    #[test]
    fn whitespace_and_edge_order_canonicalize() {
        let doc = r#"{ "kind": "imst", "n": 3, "budget": 0,
            "edges": [ {"id":1,"u":1,"v":2,"ladder":[[1,0]]}, {"id":0,"u":0,"v":1,"ladder":[[2,0]]} ],
            "directed": false }"#;
        let inst = parse(doc.as_bytes(), Sense::Maximize).unwrap();
        let canon = serialize(&inst);
        assert!(std::str::from_utf8(&canon)
            .unwrap()
            .starts_with(r#"{"kind":"imst","n":3,"budget":0,"edges":[{"id":0,"#));
        assert_eq!(serialize(&parse(&canon, Sense::Maximize).unwrap()), canon);
    }
}
