//! Type-A quivers, the double quiver and its relations.
//!
//! Vertices are 0-based. Edge `e` joins vertices `e` and `e + 1`; its arrow
//! `α_e` follows the edge orientation and `β_e` runs backwards.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Edge {
    Absent,
    /// `e -> e + 1`
    Right,
    /// `e + 1 -> e`
    Left,
}

impl Edge {
    pub fn token(self) -> char {
        match self {
            Edge::Absent => '.',
            Edge::Right => '>',
            Edge::Left => '<',
        }
    }

    pub fn reversed(self) -> Edge {
        match self {
            Edge::Absent => Edge::Absent,
            Edge::Right => Edge::Left,
            Edge::Left => Edge::Right,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    Alpha(usize),
    Beta(usize),
}

impl Arrow {
    pub fn edge(self) -> usize {
        match self {
            Arrow::Alpha(e) | Arrow::Beta(e) => e,
        }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arrow::Alpha(e) => write!(f, "α{}", e + 1),
            Arrow::Beta(e) => write!(f, "β{}", e + 1),
        }
    }
}

/// One monomial `sign * second ∘ first`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub sign: i8,
    pub second: Arrow,
    pub first: Arrow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<Term>,
    pub source: usize,
    pub target: usize,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            match (k, t.sign) {
                (0, s) if s < 0 => write!(f, "-")?,
                (0, _) => {}
                (_, s) if s < 0 => write!(f, " - ")?,
                _ => write!(f, " + ")?,
            }
            write!(f, "{}{}", t.second, t.first)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeAQuiver {
    edges: Vec<Edge>,
}

impl TypeAQuiver {
    pub fn new(edges: Vec<Edge>) -> Self {
        TypeAQuiver { edges }
    }

    /// `n` vertices, every edge oriented the same way.
    pub fn linear(n: usize, edge: Edge) -> Self {
        assert!(n >= 1, "a quiver needs at least one vertex");
        TypeAQuiver::new(vec![edge; n - 1])
    }

    pub fn vertex_count(&self) -> usize {
        self.edges.len() + 1
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    /// `(source, target)` of `α_e`, `None` for an absent edge.
    pub fn alpha_ends(&self, e: usize) -> Option<(usize, usize)> {
        match self.edges[e] {
            Edge::Absent => None,
            Edge::Right => Some((e, e + 1)),
            Edge::Left => Some((e + 1, e)),
        }
    }

    pub fn arrow_ends(&self, a: Arrow) -> Option<(usize, usize)> {
        match a {
            Arrow::Alpha(e) => self.alpha_ends(e),
            Arrow::Beta(e) => self.alpha_ends(e).map(|(s, t)| (t, s)),
        }
    }

    /// All arrows of the double quiver, α's first.
    pub fn arrows(&self) -> Vec<Arrow> {
        let present: Vec<usize> = (0..self.edges.len())
            .filter(|&e| self.edges[e] != Edge::Absent)
            .collect();
        present
            .iter()
            .map(|&e| Arrow::Alpha(e))
            .chain(present.iter().map(|&e| Arrow::Beta(e)))
            .collect()
    }

    /// Edges whose α ends at `v`, ordered by the neighbouring vertex.
    pub fn incoming_alpha(&self, v: usize) -> Vec<usize> {
        self.neighbour_edges(v)
            .filter(|&e| self.alpha_ends(e).map(|(_, t)| t) == Some(v))
            .collect()
    }

    pub fn outgoing_alpha(&self, v: usize) -> Vec<usize> {
        self.neighbour_edges(v)
            .filter(|&e| self.alpha_ends(e).map(|(s, _)| s) == Some(v))
            .collect()
    }

    fn neighbour_edges(&self, v: usize) -> impl Iterator<Item = usize> {
        let left = (v > 0).then(|| v - 1);
        let right = (v + 1 < self.vertex_count()).then_some(v);
        left.into_iter().chain(right)
    }

    /// Source vertices of α's into `v`.
    pub fn predecessors(&self, v: usize) -> Vec<usize> {
        self.incoming_alpha(v)
            .into_iter()
            .map(|e| self.alpha_ends(e).unwrap().0)
            .collect()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.incoming_alpha(v).is_empty()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.outgoing_alpha(v).is_empty()
    }

    pub fn is_admissible(&self, v: usize) -> bool {
        self.is_source(v) || self.is_sink(v)
    }

    /// Maximal vertex ranges joined by present edges.
    pub fn components(&self) -> Vec<Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for (e, edge) in self.edges.iter().enumerate() {
            if *edge == Edge::Absent {
                out.push(start..e + 1);
                start = e + 1;
            }
        }
        out.push(start..self.vertex_count());
        out
    }

    pub fn component_of(&self, v: usize) -> Range<usize> {
        self.components()
            .into_iter()
            .find(|r| r.contains(&v))
            .expect("vertex in range")
    }

    pub fn is_component_endpoint(&self, v: usize) -> bool {
        let r = self.component_of(v);
        v == r.start || v + 1 == r.end
    }

    /// Sources and sinks that are not ends of their component, ascending.
    pub fn interior_admissible(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.is_admissible(v) && !self.is_component_endpoint(v))
            .collect()
    }

    /// `i ⪰ j`: there is an α-path from `i` to `j`.
    pub fn geq(&self, i: usize, j: usize) -> bool {
        if i == j {
            return true;
        }
        let (lo, hi, want) = if i < j {
            (i, j, Edge::Right)
        } else {
            (j, i, Edge::Left)
        };
        self.edges[lo..hi].iter().all(|&e| e == want)
    }

    pub fn gt(&self, i: usize, j: usize) -> bool {
        i != j && self.geq(i, j)
    }

    /// Vertices reachable from `i` along α's, including `i`.
    pub fn alpha_reach(&self, i: usize) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&j| self.geq(i, j)).collect()
    }

    /// Vertices ordered so every α goes from an earlier to a later vertex.
    pub fn alpha_order(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.incoming_alpha(v).len()).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).rev().collect();
        let mut out = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            out.push(v);
            for e in self.outgoing_alpha(v) {
                let t = self.alpha_ends(e).unwrap().1;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.push(t);
                }
            }
        }
        debug_assert_eq!(out.len(), n);
        out
    }

    /// Generators of the relation ideal, grouped by the vertex they start at.
    ///
    /// For each α starting at `v`: `β α − Σ_{γ into v} γ β_γ`. For each
    /// ordered pair of distinct α's into a common vertex: `β_second α_first`.
    pub fn relations(&self) -> Vec<Relation> {
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            for e in self.outgoing_alpha(v) {
                let mut terms = vec![Term {
                    sign: 1,
                    second: Arrow::Beta(e),
                    first: Arrow::Alpha(e),
                }];
                for g in self.incoming_alpha(v) {
                    terms.push(Term {
                        sign: -1,
                        second: Arrow::Alpha(g),
                        first: Arrow::Beta(g),
                    });
                }
                out.push(Relation {
                    terms,
                    source: v,
                    target: v,
                });
            }
            let inc = self.incoming_alpha(v);
            for &a in &inc {
                for &b in &inc {
                    if a != b {
                        out.push(Relation {
                            terms: vec![Term {
                                sign: 1,
                                second: Arrow::Beta(b),
                                first: Arrow::Alpha(a),
                            }],
                            source: self.alpha_ends(a).unwrap().0,
                            target: self.alpha_ends(b).unwrap().0,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn orientation_string(&self) -> String {
        self.edges
            .iter()
            .map(|e| e.token().to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// The full subquiver on a vertex range, re-indexed from 0.
    pub fn restrict(&self, r: Range<usize>) -> TypeAQuiver {
        TypeAQuiver::new(self.edges[r.start..r.end - 1].to_vec())
    }

    pub fn reversed(&self) -> TypeAQuiver {
        TypeAQuiver::new(self.edges.iter().rev().map(|e| e.reversed()).collect())
    }
}

impl fmt::Display for TypeAQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1")?;
        for (e, edge) in self.edges.iter().enumerate() {
            let sym = match edge {
                Edge::Absent => "  ",
                Edge::Right => "→",
                Edge::Left => "←",
            };
            write!(f, "{sym}{}", e + 2)?;
        }
        Ok(())
    }
}

impl FromStr for TypeAQuiver {
    type Err = Error;

    /// Comma-separated `<`, `>` or `.` per edge; the empty string is one vertex.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(TypeAQuiver::new(Vec::new()));
        }
        s.split(',')
            .map(|tok| match tok.trim() {
                "<" => Ok(Edge::Left),
                ">" => Ok(Edge::Right),
                "." => Ok(Edge::Absent),
                other => Err(Error::Orientation(format!("unknown token {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(TypeAQuiver::new)
    }
}

impl Serialize for TypeAQuiver {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.orientation_string())
    }
}

impl<'de> Deserialize<'de> for TypeAQuiver {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
