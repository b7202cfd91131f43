//! Text and JSON formats for algebra presentations.
//!
//! Text format, one declaration per line, `#` starts a comment:
//!
//! ```text
//! vertex 1
//! vertex 2
//! arrow a 1 2 1
//! arrow b 2 1 0
//! rel a b
//! ```

use std::collections::HashMap;

use crate::algebra::{ArrowDecl, GentleAlgebra, Presentation};
use crate::error::{Error, Result};

pub fn parse_text(input: &str) -> Result<Presentation> {
    let mut p = Presentation::default();
    let mut vertex_lines: HashMap<String, usize> = HashMap::new();
    let mut arrow_lines: HashMap<String, usize> = HashMap::new();
    let mut rel_lines: HashMap<(String, String), usize> = HashMap::new();
    // references are resolved after reading everything so declarations may come in any order
    let mut vertex_refs = Vec::new();
    let mut arrow_refs = Vec::new();

    for (i, raw) in input.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some(&keyword) = tokens.first() else { continue };
        let err = |message: String| Error::Parse { line, message };
        let arity = |n: usize| {
            if tokens.len() == n + 1 {
                Ok(())
            } else {
                Err(err(format!("`{keyword}` takes {n} argument(s), found {}", tokens.len() - 1)))
            }
        };
        match keyword {
            "vertex" => {
                arity(1)?;
                let name = tokens[1].to_string();
                if let Some(prev) = vertex_lines.insert(name.clone(), line) {
                    return Err(err(format!("duplicate vertex id `{name}` (first declared on line {prev})")));
                }
                p.vertices.push(name);
            }
            "arrow" => {
                arity(4)?;
                let id = tokens[1].to_string();
                let deg =
                    tokens[4].parse::<i64>().map_err(|_| err(format!("degree `{}` is not an integer", tokens[4])))?;
                if let Some(prev) = arrow_lines.insert(id.clone(), line) {
                    return Err(err(format!("duplicate arrow id `{id}` (first declared on line {prev})")));
                }
                vertex_refs.push((line, tokens[2].to_string()));
                vertex_refs.push((line, tokens[3].to_string()));
                p.arrows.push(ArrowDecl { id, src: tokens[2].to_string(), tgt: tokens[3].to_string(), deg });
            }
            "rel" => {
                arity(2)?;
                let pair = (tokens[1].to_string(), tokens[2].to_string());
                if let Some(prev) = rel_lines.insert(pair.clone(), line) {
                    return Err(err(format!(
                        "duplicate relation `{} {}` (first declared on line {prev})",
                        pair.0, pair.1
                    )));
                }
                arrow_refs.push((line, pair.0.clone()));
                arrow_refs.push((line, pair.1.clone()));
                p.relations.push(pair);
            }
            other => return Err(err(format!("unknown declaration `{other}`"))),
        }
    }
    for (line, v) in vertex_refs {
        if !vertex_lines.contains_key(&v) {
            return Err(Error::Parse { line, message: format!("undeclared vertex `{v}`") });
        }
    }
    for (line, a) in arrow_refs {
        if !arrow_lines.contains_key(&a) {
            return Err(Error::Parse { line, message: format!("undeclared arrow `{a}`") });
        }
    }
    Ok(p)
}

pub fn parse_json(input: &str) -> Result<Presentation> {
    serde_json::from_str(input).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
}

/// JSON if the first non-blank character is `{`, text otherwise.
pub fn parse_any(input: &str) -> Result<Presentation> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

/// Parses and validates in one step.
pub fn read_algebra(input: &str) -> Result<GentleAlgebra> {
    GentleAlgebra::from_presentation(&parse_any(input)?)
}

pub fn to_text(algebra: &GentleAlgebra) -> String {
    let p = algebra.to_presentation();
    let mut out = String::new();
    for v in &p.vertices {
        out.push_str(&format!("vertex {v}\n"));
    }
    for a in &p.arrows {
        out.push_str(&format!("arrow {} {} {} {}\n", a.id, a.src, a.tgt, a.deg));
    }
    for (a, b) in &p.relations {
        out.push_str(&format!("rel {a} {b}\n"));
    }
    out
}

pub fn to_json(algebra: &GentleAlgebra) -> serde_json::Value {
    serde_json::to_value(algebra.to_presentation()).expect("presentation serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blank_lines() {
        let p = parse_text("# header\n\nvertex 1 # the only one\n   \n").unwrap();
        assert_eq!(p.vertices, ["1"]);
    }

    #[test]
    fn duplicate_vertex_reports_line() {
        let err = parse_text("vertex 1\nvertex 2\nvertex 1\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 3, message: "duplicate vertex id `1` (first declared on line 1)".into() });
    }

    #[test]
    fn duplicate_arrow_reports_line() {
        let err = parse_text("vertex 1\nvertex 2\narrow a 1 2 0\n\narrow a 2 1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 5, .. }), "{err:?}");
    }

    #[test]
    fn bad_lines() {
        assert!(matches!(parse_text("vertex\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_text("vertex 1\nloop x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_text("vertex 1\narrow a 1 1 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_text("vertex 1\narrow a 1 7 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_text("vertex 1\nrel a b\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn negative_degrees() {
        let p = parse_text("vertex u\nvertex v\narrow x u v -3\n").unwrap();
        assert_eq!(p.arrows[0].deg, -3);
    }

    #[test]
    fn json_round_trip() {
        let text = "vertex 1\nvertex 2\narrow a 1 2 1\narrow b 2 1 0\narrow c 1 2 1\nrel a b\nrel b c\n";
        let a = read_algebra(text).unwrap();
        let json = to_json(&a).to_string();
        let b = read_algebra(&json).unwrap();
        assert_eq!(a, b);
        assert_eq!(to_text(&b), text);
    }

    #[test]
    fn json_shape() {
        let json = r#"{"vertices":["1","2"],"arrows":[{"id":"x","src":"1","tgt":"2","deg":4}],"relations":[]}"#;
        let a = read_algebra(json).unwrap();
        assert_eq!(a.arrow(0).degree, 4);
        assert!(parse_json("{\"vertices\": 3}").is_err());
    }
}
