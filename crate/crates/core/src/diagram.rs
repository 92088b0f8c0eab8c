//! Arrow diagrams: one row per summand of `M(d)`, one node per Δ-factor.

use std::fmt::Write as _;

use crate::builder::{build_M, SummandDecomposition};
use crate::error::Result;
use crate::gluing::SupportSet;
use crate::quiver::TypeAQuiver;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Node {
    /// quiver vertex, 0-based
    pub vertex: usize,
    pub row: usize,
    /// position in the column-wise, bottom-to-top numbering, 1-based
    pub number: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDiagram {
    pub nodes: Vec<Node>,
    /// double arrows as pairs of node numbers, from the higher factor to the lower
    pub edges: Vec<(usize, usize)>,
}

impl ArrowDiagram {
    /// Lay out the summands bottom to top in the given order.
    pub fn from_supports(q: &TypeAQuiver, rows: &[SupportSet]) -> Self {
        let mut cells: Vec<(usize, usize)> = rows
            .iter()
            .enumerate()
            .flat_map(|(r, k)| k.vertices().iter().map(move |&v| (v, r)))
            .collect();
        cells.sort();
        let number = |v: usize, r: usize| cells.binary_search(&(v, r)).unwrap() + 1;
        let nodes = cells
            .iter()
            .map(|&(vertex, row)| Node {
                vertex,
                row,
                number: number(vertex, row),
            })
            .collect();
        let mut edges = Vec::new();
        for (r, k) in rows.iter().enumerate() {
            for &hi in k.vertices() {
                for &lo in k.vertices() {
                    let covers = q.gt(hi, lo) && !k.vertices().iter().any(|&z| q.gt(hi, z) && q.gt(z, lo));
                    if covers {
                        edges.push((number(hi, r), number(lo, r)));
                    }
                }
            }
        }
        edges.sort();
        ArrowDiagram { nodes, edges }
    }

    pub fn from_decomposition(m: &SummandDecomposition) -> Self {
        Self::from_supports(&m.quiver, &m.supports())
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn column_counts(&self, vertices: usize) -> Vec<usize> {
        let mut out = vec![0; vertices];
        for n in &self.nodes {
            out[n.vertex] += 1;
        }
        out
    }

    /// `x = Σ E_{i,j}` over double arrows `Δ(i) ⇒ Δ(j)`, with nodes numbered.
    pub fn richardson(&self) -> Vec<Vec<i64>> {
        let n = self.nodes.len();
        let mut x = vec![vec![0; n]; n];
        for &(from, to) in &self.edges {
            x[from - 1][to - 1] = 1;
        }
        x
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph arrow_diagram {\n  rankdir=BT;\n");
        for n in &self.nodes {
            let _ = writeln!(
                s,
                "  n{} [label=\"Δ({})#{} / {}\"];",
                n.number,
                n.vertex + 1,
                n.row,
                n.number
            );
        }
        for (a, b) in &self.edges {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }
}

pub fn arrow_diagram(q: &TypeAQuiver, d: &[usize]) -> Result<ArrowDiagram> {
    Ok(ArrowDiagram::from_decomposition(&build_M(q, d)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Edge;

    #[test]
    fn worked_example_diagram() {
        let q: TypeAQuiver = "<,>,>,<".parse().unwrap();
        let d = [1, 2, 1, 3, 2];
        let g = arrow_diagram(&q, &d).unwrap();
        assert_eq!(g.node_count(), 9);
        assert_eq!(g.column_counts(5), d);
        assert_eq!(g.edges.len(), 6);
        let x = g.richardson();
        let mut ones: Vec<(usize, usize)> = Vec::new();
        for (i, row) in x.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    ones.push((i + 1, j + 1));
                }
            }
        }
        ones.sort();
        let mut expected = vec![(3, 1), (2, 4), (4, 5), (3, 6), (8, 6), (9, 7)];
        expected.sort();
        assert_eq!(ones, expected);
    }

    #[test]
    fn small_diagrams() {
        let q: TypeAQuiver = "<,>,>,<".parse().unwrap();
        let g = arrow_diagram(&q, &[0, 0, 1, 0, 0]).unwrap();
        assert_eq!(g.node_count(), 1);
        assert!(g.edges.is_empty());
        let q = TypeAQuiver::linear(2, Edge::Left);
        let g = arrow_diagram(&q, &[1, 1]).unwrap();
        assert_eq!((g.node_count(), g.edges.len()), (2, 1));
        assert!(g.to_dot().contains("n2 -> n1"));
    }
}
