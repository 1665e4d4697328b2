//! JSON instance files.
//!
//! Function: `{"kind":"function","n":N,"ordered":bool,"values":[...]}`
//! Graph:    `{"kind":"graph","n":n,"edges":[[u,v],...]}`
//!
//! Loaders re-validate every instance invariant and reject violations.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{FunctionInstance, GraphInstance};

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum InstanceFile {
    Function {
        n: usize,
        ordered: bool,
        values: Vec<i64>,
    },
    Graph {
        n: usize,
        edges: Vec<(usize, usize)>,
    },
}

/// A loaded instance of either kind.
#[derive(Debug, Clone)]
pub enum Instance {
    Function(FunctionInstance),
    Graph(GraphInstance),
}

pub fn load_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)?;
    parse_instance(&text)
}

/// Parses an instance from JSON text (same schema as the files).
pub fn parse_instance_text(text: &str) -> Result<Instance> {
    parse_instance(text)
}

pub(crate) fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text)?;
    match file {
        InstanceFile::Function { n, ordered, values } => {
            if values.len() != n {
                return Err(Error::InvalidInstance(format!(
                    "declared n={n} but {} values",
                    values.len()
                )));
            }
            Ok(Instance::Function(FunctionInstance::new(values, ordered)?))
        }
        InstanceFile::Graph { n, edges } => Ok(Instance::Graph(GraphInstance::new(n, &edges)?)),
    }
}

pub fn save_function(path: &Path, f: &FunctionInstance) -> Result<()> {
    let file = InstanceFile::Function {
        n: f.size(),
        ordered: f.is_ordered(),
        values: f.values().to_vec(),
    };
    std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

pub fn save_graph(path: &Path, g: &GraphInstance) -> Result<()> {
    let file = InstanceFile::Graph {
        n: g.node_count(),
        edges: g.edges(),
    };
    std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_roundtrip() {
        let text = r#"{"kind":"function","n":3,"ordered":false,"values":[3,1,2]}"#;
        match parse_instance(text).unwrap() {
            Instance::Function(f) => {
                assert_eq!(f.size(), 3);
                assert_eq!(f.values(), &[3, 1, 2]);
            }
            _ => panic!("expected function"),
        }
    }

    #[test]
    fn graph_roundtrip() {
        let text = r#"{"kind":"graph","n":4,"edges":[[1,2],[2,3]]}"#;
        match parse_instance(text).unwrap() {
            Instance::Graph(g) => {
                assert_eq!(g.node_count(), 4);
                assert_eq!(g.edge_count(), 2);
                assert!(g.has_edge(2, 3).unwrap());
            }
            _ => panic!("expected graph"),
        }
    }

    #[test]
    fn save_and_load_roundtrip() {
        let dir = std::env::temp_dir().join(format!("qclaw-io-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();

        let f = FunctionInstance::new(vec![4, 4, 2], false).unwrap();
        let fp = dir.join("f.json");
        save_function(&fp, &f).unwrap();
        match load_instance(&fp).unwrap() {
            Instance::Function(back) => assert_eq!(back, f),
            _ => panic!("expected function"),
        }

        let g = GraphInstance::new(5, &[(1, 2), (2, 5), (3, 4)]).unwrap();
        let gp = dir.join("g.json");
        save_graph(&gp, &g).unwrap();
        match load_instance(&gp).unwrap() {
            Instance::Graph(back) => assert_eq!(back, g),
            _ => panic!("expected graph"),
        }
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn loader_rejects_violations() {
        // Length mismatch.
        assert!(
            parse_instance(r#"{"kind":"function","n":2,"ordered":false,"values":[1]}"#).is_err()
        );
        // Ordered flag with decreasing values.
        assert!(
            parse_instance(r#"{"kind":"function","n":2,"ordered":true,"values":[2,1]}"#).is_err()
        );
        // Self-loop.
        assert!(parse_instance(r#"{"kind":"graph","n":3,"edges":[[2,2]]}"#).is_err());
        // Unknown kind.
        assert!(parse_instance(r#"{"kind":"matrix","n":1}"#).is_err());
    }
}
