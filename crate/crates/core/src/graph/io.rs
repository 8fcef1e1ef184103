use serde::{Deserialize, Serialize};

use super::{GraphError, Sign, SignedGraph};
use crate::util::natural_cmp;

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    vertices: Vec<String>,
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    label: String,
    ends: Vec<String>,
    sign: Sign,
    /// Incidence entries at the two ends of a link (1 = into, -1 = out of).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dirs: Option<[i8; 2]>,
}

impl SignedGraph {
    /// Vertices and edges sorted by label.
    fn sorted_edges(&self) -> Vec<&super::Edge> {
        let mut edges: Vec<_> = self.edges.iter().collect();
        edges.sort_by(|a, b| natural_cmp(&a.label, &b.label));
        edges
    }

    fn sorted_vertices(&self) -> Vec<String> {
        let mut v = self.vertices.clone();
        v.sort_by(|a, b| natural_cmp(a, b));
        v
    }

    /// Structured text: `{"vertices": [...], "edges": [{"label", "ends", "sign", "dirs"}]}`.
    pub fn to_json(&self) -> String {
        let doc = GraphDoc {
            vertices: self.sorted_vertices(),
            edges: self
                .sorted_edges()
                .into_iter()
                .map(|e| {
                    let name = |i: usize| self.vertices[i].clone();
                    if e.is_loop() {
                        EdgeDoc { label: e.label.clone(), ends: vec![name(e.u)], sign: e.sign(), dirs: None }
                    } else {
                        let d = |into: bool| if into { 1 } else { -1 };
                        EdgeDoc {
                            label: e.label.clone(),
                            ends: vec![name(e.u), name(e.v)],
                            sign: e.sign(),
                            dirs: Some([d(e.into[0]), d(e.into[1])]),
                        }
                    }
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<SignedGraph, GraphError> {
        let doc: GraphDoc = serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
        let mut g = SignedGraph::new(doc.vertices)?;
        for e in doc.edges {
            match (e.ends.as_slice(), e.dirs) {
                ([u], _) => g.add_oriented(e.label, u, u, [false; 2], e.sign)?,
                ([u, v], Some([a, b])) => {
                    let into = [a > 0, b > 0];
                    if (into[0] != into[1]) != (e.sign == Sign::Positive) {
                        return Err(GraphError::Parse(format!("edge {:?}: directions disagree with sign", e.label)));
                    }
                    g.add_oriented(e.label, u, v, into, e.sign)?
                }
                ([u, v], None) => g.add_edge(e.label, u, v, e.sign)?,
                _ => return Err(GraphError::Parse(format!("edge {:?} needs one or two ends", e.label))),
            }
        }
        Ok(g)
    }

    /// Graphviz rendering; negative edges are dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in self.sorted_vertices() {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for e in self.sorted_edges() {
            let style = match e.sign() {
                Sign::Positive => "solid",
                Sign::Negative => "dashed",
            };
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [label=\"{}\", style={style}];\n",
                self.vertices[e.u], self.vertices[e.v], e.label
            ));
        }
        out.push_str("}\n");
        out
    }
}
