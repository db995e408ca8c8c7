//! JSON file formats.
//!
//! Weights:  `{"weights": [3, 2, "1/2"]}`
//!
//! Trees, one of:
//!   `{"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]}`
//!   `{"spider": [2, 2, 2]}`
//!   `{"diam4": [3, 2, 2, 1]}`
//!
//! Drawings: `{"tree": <tree>, "positions": [[0, "1/2", "3"], ...]}`, one
//! entry per vertex; coordinates are integers or `"p/q"` strings.

use std::path::Path;

use extremalkit_core::geometry::{Drawing, Point, Scalar};
use extremalkit_core::rational::{self, Rational};
use extremalkit_core::{Diam4Descriptor, SpiderDescriptor, Tree};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    pub fn to_rational(&self) -> Result<Rational, CliError> {
        match self {
            Number::Int(v) => Ok(rational::from_int(*v)),
            Number::Text(s) => Ok(rational::parse(s)?),
        }
    }

    pub fn from_rational(value: &Rational) -> Self {
        Number::Text(rational::format(value))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsFile {
    pub weights: Vec<Number>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TreeSpec {
    Edges { n: usize, edges: Vec<(usize, usize)> },
    Spider { spider: Vec<usize> },
    Diam4 { diam4: Vec<usize> },
}

impl TreeSpec {
    pub fn to_tree(&self) -> Result<Tree, CliError> {
        Ok(match self {
            TreeSpec::Edges { n, edges } => Tree::from_edges(*n, edges)?,
            TreeSpec::Spider { spider } => SpiderDescriptor::new(spider.clone())?.to_tree(),
            TreeSpec::Diam4 { diam4 } => Diam4Descriptor::new(diam4.clone())?.to_tree(),
        })
    }

    pub fn from_tree(tree: &Tree) -> Self {
        TreeSpec::Edges {
            n: tree.vertex_count(),
            edges: tree.graph().edges(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrawingFile {
    pub tree: TreeSpec,
    pub positions: Vec<(usize, Number, Number)>,
}

impl DrawingFile {
    pub fn from_drawing<T: Scalar + ToNumber>(tree: &Tree, drawing: &Drawing<T>) -> Self {
        DrawingFile {
            tree: TreeSpec::from_tree(tree),
            positions: drawing
                .positions()
                .iter()
                .enumerate()
                .map(|(v, p)| (v, p.x.to_number(), p.y.to_number()))
                .collect(),
        }
    }

    pub fn to_drawing(&self) -> Result<(Tree, Drawing), CliError> {
        let tree = self.tree.to_tree()?;
        let n = tree.vertex_count();
        let mut slots: Vec<Option<Point>> = vec![None; n];
        for (v, x, y) in &self.positions {
            let slot = slots
                .get_mut(*v)
                .ok_or_else(|| CliError::Input(format!("position for vertex {v}, but the tree has {n} vertices")))?;
            if slot.is_some() {
                return Err(CliError::Input(format!("vertex {v} is positioned twice")));
            }
            *slot = Some(Point::new(x.to_rational()?, y.to_rational()?));
        }
        let positions = slots
            .into_iter()
            .enumerate()
            .map(|(v, p)| p.ok_or_else(|| CliError::Input(format!("vertex {v} has no position"))))
            .collect::<Result<Vec<_>, _>>()?;
        let drawing = Drawing::new(tree.graph().clone(), positions)?;
        Ok((tree, drawing))
    }
}

pub trait ToNumber {
    fn to_number(&self) -> Number;
}

impl ToNumber for i64 {
    fn to_number(&self) -> Number {
        Number::Int(*self)
    }
}

impl ToNumber for Rational {
    fn to_number(&self) -> Number {
        Number::from_rational(self)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e))
}

/// Comma-separated list of integers or `p/q` rationals.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',').map(|s| Ok(rational::parse(s)?)).collect()
}

pub fn parse_usize_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Input(format!("not a non-negative integer: {s:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_forms() {
        let t: TreeSpec = serde_json::from_str(r#"{"spider":[2,2,2]}"#).unwrap();
        assert_eq!(t.to_tree().unwrap().vertex_count(), 7);
        let t: TreeSpec = serde_json::from_str(r#"{"diam4":[3,2,2,1]}"#).unwrap();
        assert_eq!(t.to_tree().unwrap().vertex_count(), 13);
        let t: TreeSpec = serde_json::from_str(r#"{"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(t.to_tree().unwrap().graph().edge_count(), 2);
    }

    #[test]
    fn drawing_round_trip() {
        let text = r#"{"tree":{"n":2,"edges":[[0,1]]},"positions":[[1,"1/2",3],[0,0,"-7/3"]]}"#;
        let file: DrawingFile = serde_json::from_str(text).unwrap();
        let (tree, d) = file.to_drawing().unwrap();
        assert_eq!(d.position(1).x, rational::parse("1/2").unwrap());
        let back = DrawingFile::from_drawing(&tree, &d);
        assert_eq!(back.to_drawing().unwrap().1, d);
    }

    #[test]
    fn weights() {
        let w: WeightsFile = serde_json::from_str(r#"{"weights":[3,"1/2"]}"#).unwrap();
        let r: Vec<_> = w.weights.iter().map(|n| n.to_rational().unwrap()).collect();
        assert_eq!(r, parse_rational_list("3, 1/2").unwrap());
    }

    #[test]
    fn bad_positions() {
        let dup = r#"{"tree":{"n":2,"edges":[[0,1]]},"positions":[[0,0,0],[0,1,1]]}"#;
        assert!(serde_json::from_str::<DrawingFile>(dup).unwrap().to_drawing().is_err());
        let missing = r#"{"tree":{"n":2,"edges":[[0,1]]},"positions":[[0,0,0]]}"#;
        assert!(serde_json::from_str::<DrawingFile>(missing).unwrap().to_drawing().is_err());
    }
}
