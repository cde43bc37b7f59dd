//! File formats: JSON codecs for signatures, gadgets/grids, similar pairs,
//! signature sets, matrices, and graphs, with named schema and invariant
//! diagnostics. Rationals travel as strings ("p/q"), floats as JSON numbers.

use crate::gadget::{Gadget, SignatureGrid, Terminal};
use crate::homs::{Graph, WeightedGraph};
use crate::mat::Mat;
use crate::scalar::Scalar;
use crate::signature::{Signature, SimilarPair};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Syntax {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

fn read<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, JsonError> {
    let text = std::fs::read_to_string(path).map_err(|source| JsonError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| JsonError::Syntax {
        path: path.display().to_string(),
        source,
    })
}

fn schema_err(path: &Path, message: impl Into<String>) -> JsonError {
    JsonError::Schema { path: path.display().to_string(), message: message.into() }
}

/// `{"q": int, "arity": int, "values": [...]}` with values in canonical
/// linear index order.
pub fn parse_signature(path: &Path) -> Result<Signature, JsonError> {
    read(path)
}

#[derive(Deserialize)]
struct GadgetData {
    signatures: BTreeMap<String, Signature>,
    vertices: Vec<VertexData>,
    #[serde(default)]
    edges: Vec<String>,
    #[serde(default)]
    loops: usize,
    #[serde(default)]
    left: Vec<String>,
    #[serde(default)]
    right: Vec<String>,
}

#[derive(Deserialize)]
struct VertexData {
    sig: String,
    ports: Vec<String>,
}

/// Gadget format: edge ids must each appear exactly twice across the port
/// lists and the left/right dangling lists.
pub fn parse_gadget(path: &Path) -> Result<Gadget, JsonError> {
    let data: GadgetData = read(path)?;
    let ids: Vec<&String> = data.signatures.keys().collect();
    let q = match data.signatures.values().next() {
        Some(s) => s.q(),
        None if data.vertices.is_empty() => {
            // Wire-only gadgets still need a domain size; infer q = 1 is
            // wrong, so require at least one signature unless told otherwise.
            return Err(schema_err(
                path,
                "empty signature table: add at least one signature (or use loops with a table)",
            ));
        }
        None => return Err(schema_err(path, "vertices present but signature table empty")),
    };
    let sigs: Vec<Signature> = data.signatures.values().cloned().collect();
    for (id, s) in data.signatures.iter() {
        if s.q() != q {
            return Err(schema_err(path, format!("signature {id:?} has domain {} != {}", s.q(), q)));
        }
    }

    let mut vertices = Vec::with_capacity(data.vertices.len());
    let mut occurrences: BTreeMap<&str, Vec<Terminal>> = BTreeMap::new();
    for (v, vd) in data.vertices.iter().enumerate() {
        let sid = ids
            .iter()
            .position(|&id| *id == vd.sig)
            .ok_or_else(|| schema_err(path, format!("vertex {v} references unknown signature {:?}", vd.sig)))?;
        let arity = sigs[sid].arity();
        if vd.ports.len() != arity {
            return Err(schema_err(
                path,
                format!(
                    "vertex {v} lists {} ports but signature {:?} has arity {arity}",
                    vd.ports.len(),
                    vd.sig
                ),
            ));
        }
        for (slot, edge) in vd.ports.iter().enumerate() {
            occurrences.entry(edge).or_default().push(Terminal::Port { vertex: v, slot });
        }
        vertices.push(sid);
    }
    for (rank, edge) in data.left.iter().enumerate() {
        occurrences.entry(edge).or_default().push(Terminal::Left(rank));
    }
    for (rank, edge) in data.right.iter().enumerate() {
        occurrences.entry(edge).or_default().push(Terminal::Right(rank));
    }
    if !data.edges.is_empty() {
        for edge in occurrences.keys() {
            if !data.edges.iter().any(|e| e == edge) {
                return Err(schema_err(path, format!("edge {edge:?} used but not declared")));
            }
        }
    }
    let mut pairs = Vec::new();
    for (edge, ends) in occurrences {
        if ends.len() != 2 {
            return Err(schema_err(
                path,
                format!("edge {edge:?} has {} ends, expected exactly 2", ends.len()),
            ));
        }
        pairs.push((ends[0], ends[1]));
    }
    let (m, d) = (data.left.len(), data.right.len());
    Gadget::new(q, sigs, vertices, pairs, data.loops, m, d)
        .map_err(|e| schema_err(path, e.to_string()))
}

pub fn parse_grid(path: &Path) -> Result<SignatureGrid, JsonError> {
    let gadget = parse_gadget(path)?;
    SignatureGrid::new(gadget).map_err(|e| schema_err(path, e.to_string()))
}

#[derive(Deserialize)]
struct PairData {
    left: Vec<Signature>,
    right: Vec<Signature>,
    /// Optional bijection: left[i] corresponds to right[correspondence[i]].
    correspondence: Option<Vec<usize>>,
}

pub fn parse_pair(path: &Path) -> Result<SimilarPair, JsonError> {
    let data: PairData = read(path)?;
    let right = match data.correspondence {
        None => data.right,
        Some(corr) => {
            if corr.len() != data.left.len() {
                return Err(schema_err(path, "correspondence length differs from left side"));
            }
            let mut seen = vec![false; data.right.len()];
            let mut right = Vec::with_capacity(data.right.len());
            for (i, &c) in corr.iter().enumerate() {
                if c >= data.right.len() || std::mem::replace(&mut seen[c], true) {
                    return Err(schema_err(
                        path,
                        format!("correspondence entry {i} -> {c} is not a bijection"),
                    ));
                }
                right.push(data.right[c].clone());
            }
            right
        }
    };
    SimilarPair::new(data.left, right)
        .map_err(|e| schema_err(path, format!("similar-pair violation: {e}")))
}

#[derive(Deserialize)]
struct SetData {
    q: usize,
    signatures: Vec<Signature>,
}

/// `{"q": int, "signatures": [...]}`; `q` makes the empty set well-typed.
pub fn parse_set(path: &Path) -> Result<(usize, Vec<Signature>), JsonError> {
    let data: SetData = read(path)?;
    for (i, s) in data.signatures.iter().enumerate() {
        if s.q() != data.q {
            return Err(schema_err(
                path,
                format!("signature {i} has domain {} but the set declares q = {}", s.q(), data.q),
            ));
        }
    }
    Ok((data.q, data.signatures))
}

#[derive(Deserialize)]
struct MatrixData {
    matrix: Vec<Vec<Scalar>>,
}

pub fn parse_matrix(path: &Path) -> Result<Mat, JsonError> {
    let data: MatrixData = read(path)?;
    let rows = data.matrix.len();
    let cols = data.matrix.first().map_or(0, Vec::len);
    if rows == 0 || data.matrix.iter().any(|r| r.len() != cols) {
        return Err(schema_err(path, "matrix rows must be nonempty and equal length"));
    }
    Ok(Mat::from_fn(rows, cols, |i, j| data.matrix[i][j].clone()))
}

#[derive(Deserialize)]
struct GraphData {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

pub fn parse_graph(path: &Path) -> Result<Graph, JsonError> {
    let data: GraphData = read(path)?;
    Graph::new(data.vertices, data.edges).map_err(|e| schema_err(path, e.to_string()))
}

#[derive(Deserialize)]
struct AdjacencyData {
    adjacency: Vec<Vec<Scalar>>,
}

pub fn parse_weighted_graph(path: &Path) -> Result<WeightedGraph, JsonError> {
    let data: AdjacencyData = read(path)?;
    let n = data.adjacency.len();
    if data.adjacency.iter().any(|r| r.len() != n) {
        return Err(schema_err(path, "adjacency matrix must be square"));
    }
    let m = Mat::from_fn(n, n, |i, j| data.adjacency[i][j].clone());
    WeightedGraph::new(m).map_err(|e| schema_err(path, e.to_string()))
}

/// Serialize a gadget back into the file format (used for grid witnesses).
pub fn gadget_to_json(g: &Gadget) -> serde_json::Value {
    let sig_id = |i: usize| format!("s{i}");
    let edge_id = |i: usize| format!("e{i}");
    let signatures: BTreeMap<String, &Signature> =
        g.sig_table().iter().enumerate().map(|(i, s)| (sig_id(i), s)).collect();
    // Assign edge names by pair index; collect the names each terminal sees.
    let mut port_edges: BTreeMap<(usize, usize), String> = BTreeMap::new();
    let mut left = vec![String::new(); g.m()];
    let mut right = vec![String::new(); g.d()];
    for (i, &(a, b)) in g.pairs().iter().enumerate() {
        for t in [a, b] {
            match t {
                Terminal::Port { vertex, slot } => {
                    port_edges.insert((vertex, slot), edge_id(i));
                }
                Terminal::Left(r) => left[r] = edge_id(i),
                Terminal::Right(r) => right[r] = edge_id(i),
            }
        }
    }
    let vertices: Vec<serde_json::Value> = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(v, &sid)| {
            let arity = g.sig_table()[sid].arity();
            let ports: Vec<String> =
                (0..arity).map(|slot| port_edges[&(v, slot)].clone()).collect();
            serde_json::json!({ "sig": sig_id(sid), "ports": ports })
        })
        .collect();
    let edges: Vec<String> = (0..g.pairs().len()).map(edge_id).collect();
    serde_json::json!({
        "signatures": signatures,
        "vertices": vertices,
        "edges": edges,
        "loops": g.loops(),
        "left": left,
        "right": right,
    })
}

/// Matrix as nested JSON arrays (rationals as strings).
pub fn mat_to_json(m: &Mat) -> serde_json::Value {
    let rows: Vec<Vec<&Scalar>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| &m[(i, j)]).collect())
        .collect();
    serde_json::json!({ "rows": m.rows(), "cols": m.cols(), "matrix": rows })
}

/// Round-trip helper for tests and tooling.
pub fn signature_to_string(s: &Signature) -> String {
    serde_json::to_string(s).expect("signature serializes")
}

#[derive(Serialize)]
struct WitnessOut<'a> {
    grid: serde_json::Value,
    left_value: &'a Scalar,
    right_value: &'a Scalar,
}

pub fn witness_to_json(w: &crate::indist::Witness) -> serde_json::Value {
    serde_json::to_value(WitnessOut {
        grid: gadget_to_json(w.grid.gadget()),
        left_value: &w.left_value,
        right_value: &w.right_value,
    })
    .expect("witness serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard;

    fn write_tmp(name: &str, content: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join("holant-json-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, content).unwrap();
        path
    }

    #[test]
    fn signature_roundtrip_and_validation() {
        let path = write_tmp(
            "eq2.json",
            r#"{"q": 2, "arity": 2, "values": ["1", "0", "0", "1"]}"#,
        );
        let s = parse_signature(&path).unwrap();
        assert_eq!(s, standard::equality(2, 2));

        let bad = write_tmp("bad.json", r#"{"q": 2, "arity": 2, "values": ["1"]}"#);
        let err = parse_signature(&bad).unwrap_err();
        assert!(err.to_string().contains('4'), "should name q^n = 4: {err}");
    }

    #[test]
    fn grid_parse_and_eval() {
        // Two unary vertices (1,2) joined by one edge: Holant 5.
        let path = write_tmp(
            "grid.json",
            r#"{
              "signatures": {"u": {"q": 2, "arity": 1, "values": ["1", "2"]}},
              "vertices": [{"sig": "u", "ports": ["e0"]}, {"sig": "u", "ports": ["e0"]}],
              "edges": ["e0"],
              "loops": 0
            }"#,
        );
        let grid = parse_grid(&path).unwrap();
        assert_eq!(grid.holant(), Scalar::from_int(5));
        // Round-trip through gadget_to_json.
        let json = gadget_to_json(grid.gadget());
        let path2 = write_tmp("grid2.json", &serde_json::to_string(&json).unwrap());
        let grid2 = parse_grid(&path2).unwrap();
        assert_eq!(grid2.holant(), Scalar::from_int(5));
    }

    #[test]
    fn gadget_with_dangling_edges() {
        let path = write_tmp(
            "gadget.json",
            r#"{
              "signatures": {"w": {"q": 2, "arity": 2, "values": ["1", "0", "0", "1"]}},
              "vertices": [{"sig": "w", "ports": ["a", "b"]}],
              "edges": ["a", "b"],
              "left": ["a"],
              "right": ["b"]
            }"#,
        );
        let g = parse_gadget(&path).unwrap();
        assert_eq!((g.m(), g.d()), (1, 1));
        assert_eq!(*g.matrix().mat(), Mat::identity(2));
    }

    #[test]
    fn edge_multiplicity_diagnosed() {
        let path = write_tmp(
            "badgrid.json",
            r#"{
              "signatures": {"u": {"q": 2, "arity": 1, "values": ["1", "2"]}},
              "vertices": [{"sig": "u", "ports": ["e0"]}]
            }"#,
        );
        let err = parse_grid(&path).unwrap_err();
        assert!(err.to_string().contains("e0"), "names the bad edge: {err}");
    }

    #[test]
    fn pair_parse_with_correspondence() {
        let path = write_tmp(
            "pair.json",
            r#"{
              "left": [{"q": 2, "arity": 1, "values": ["1", "0"]},
                        {"q": 2, "arity": 2, "values": ["1","0","0","1"]}],
              "right": [{"q": 2, "arity": 2, "values": ["1","0","0","1"]},
                         {"q": 2, "arity": 1, "values": ["0", "1"]}],
              "correspondence": [1, 0]
            }"#,
        );
        let pair = parse_pair(&path).unwrap();
        assert_eq!(pair.left[0].arity(), 1);
        assert_eq!(pair.right[0].arity(), 1);

        let bad = write_tmp(
            "badpair.json",
            r#"{
              "left": [{"q": 2, "arity": 1, "values": ["1", "0"]}],
              "right": [{"q": 2, "arity": 2, "values": ["1","0","0","1"]}]
            }"#,
        );
        let err = parse_pair(&bad).unwrap_err();
        assert!(err.to_string().contains("similar-pair violation"), "{err}");
    }
}
