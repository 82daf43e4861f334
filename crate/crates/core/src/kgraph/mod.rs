//! Finite k-graphs presented by a colored skeleton and a set of commuting
//! squares.
//!
//! Paths are words of edges `e₁e₂⋯eₙ` with `s(eᵢ) = r(eᵢ₊₁)`, so the range of
//! a path is the range of its first edge. A square `fg ~ g′f′` lets two
//! adjacent edges of different colors trade places; the color-normal form of a
//! path sorts its edges by color using squares only.

mod functor;
mod path;
mod structure;

pub use functor::Functor;
pub use path::{join, Degree, Path};
pub use structure::{
    aperiodicity_bounded, aperiodicity_check, cofinality_check, simplicity_verdict,
    AperiodicityVerdict, CofinalityVerdict, SimplicityVerdict, StructureBounds,
};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::grp::GroupError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KGraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("duplicate identifier {0}")]
    DuplicateId(String),
    #[error("edge {edge} has color {color}, expected 1..={k}")]
    InvalidColor { edge: String, color: usize, k: usize },
    #[error("paths are not composable: {0}")]
    NotComposable(String),
    #[error("segment bounds violated: {0}")]
    Bounds(String),
    #[error("no square for the pair ({0}, {1})")]
    MissingSquare(String, String),
    #[error("degree has length {found}, graph has rank {k}")]
    Rank { k: usize, found: usize },
    #[error("functor is not compatible with the square {0}")]
    IncompatibleFunctor(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    /// Zero-based color; displayed one-based.
    pub color: usize,
    pub range: usize,
    pub source: usize,
}

/// A finite k-graph. Construction checks only that identifiers resolve;
/// [`KGraph::validate`] checks the k-graph axioms.
#[derive(Clone, Debug)]
pub struct KGraph {
    k: usize,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    squares: HashMap<(usize, usize), (usize, usize)>,
    square_conflicts: Vec<((usize, usize), (usize, usize), (usize, usize))>,
    /// `in_edges[v][c]` lists the edges of color `c` with range `v`.
    in_edges: Vec<Vec<Vec<usize>>>,
}

impl KGraph {
    /// `edges` are `(id, color, range, source)` with one-based colors;
    /// each square `((f, g), (g2, f2))` declares `fg = g2 f2`.
    pub fn new(
        k: usize,
        vertices: &[&str],
        edges: &[(&str, usize, &str, &str)],
        squares: &[((&str, &str), (&str, &str))],
    ) -> Result<Self, KGraphError> {
        let own = |s: &&str| s.to_string();
        KGraph::from_parts(
            k,
            vertices.iter().map(own).collect(),
            edges.iter().map(|(id, c, r, s)| (id.to_string(), *c, r.to_string(), s.to_string())).collect(),
            squares
                .iter()
                .map(|((a, b), (c, d))| ((a.to_string(), b.to_string()), (c.to_string(), d.to_string())))
                .collect(),
        )
    }

    #[allow(clippy::type_complexity)]
    pub fn from_parts(
        k: usize,
        vertices: Vec<String>,
        edges: Vec<(String, usize, String, String)>,
        squares: Vec<((String, String), (String, String))>,
    ) -> Result<Self, KGraphError> {
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(KGraphError::DuplicateId(v.clone()));
            }
        }
        let vid = |name: &str| {
            vertex_index.get(name).copied().ok_or_else(|| KGraphError::UnknownVertex(name.to_string()))
        };
        let mut edge_list = Vec::with_capacity(edges.len());
        let mut edge_index = HashMap::new();
        for (id, color, r, s) in edges {
            if color == 0 || color > k {
                return Err(KGraphError::InvalidColor { edge: id, color, k });
            }
            if vertex_index.contains_key(&id) || edge_index.insert(id.clone(), edge_list.len()).is_some() {
                return Err(KGraphError::DuplicateId(id));
            }
            edge_list.push(Edge { id, color: color - 1, range: vid(&r)?, source: vid(&s)? });
        }
        let eid = |name: &str| {
            edge_index.get(name).copied().ok_or_else(|| KGraphError::UnknownEdge(name.to_string()))
        };
        let mut square_map: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        let mut conflicts = Vec::new();
        let mut record = |from: (usize, usize), to: (usize, usize)| match square_map.get(&from) {
            Some(prev) if *prev != to => conflicts.push((from, *prev, to)),
            Some(_) => {}
            None => {
                square_map.insert(from, to);
            }
        };
        for ((a, b), (c, d)) in &squares {
            let lhs = (eid(a)?, eid(b)?);
            let rhs = (eid(c)?, eid(d)?);
            record(lhs, rhs);
            record(rhs, lhs);
        }
        let mut in_edges = vec![vec![Vec::new(); k]; vertices.len()];
        for (i, e) in edge_list.iter().enumerate() {
            in_edges[e.range][e.color].push(i);
        }
        Ok(KGraph {
            k,
            vertices,
            edges: edge_list,
            vertex_index,
            edge_index,
            squares: square_map,
            square_conflicts: conflicts,
            in_edges,
        })
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_id(&self, name: &str) -> Result<usize, KGraphError> {
        self.vertex_index.get(name).copied().ok_or_else(|| KGraphError::UnknownVertex(name.into()))
    }

    pub fn edge_id(&self, name: &str) -> Result<usize, KGraphError> {
        self.edge_index.get(name).copied().ok_or_else(|| KGraphError::UnknownEdge(name.into()))
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    /// Edges of zero-based color `c` with range `v`.
    pub fn edges_into(&self, v: usize, c: usize) -> &[usize] {
        &self.in_edges[v][c]
    }

    /// The partner `(g′, f′)` of a bichromatic composable pair `(f, g)`.
    pub fn square_partner(&self, f: usize, g: usize) -> Option<(usize, usize)> {
        self.squares.get(&(f, g)).copied()
    }

    pub(crate) fn swap(&self, f: usize, g: usize) -> Result<(usize, usize), KGraphError> {
        self.square_partner(f, g).ok_or_else(|| {
            KGraphError::MissingSquare(self.edges[f].id.clone(), self.edges[g].id.clone())
        })
    }

    /// Checks the k-graph axioms: no sources in any color, squares forming an
    /// involutive bijection on bichromatic composable pairs, and for k ≥ 3 the
    /// cube condition on every tricolored composable triple.
    pub fn validate(&self) -> ValidationReport {
        let mut out = Vec::new();
        for v in 0..self.num_vertices() {
            for c in 0..self.k {
                if self.in_edges[v][c].is_empty() {
                    out.push(Violation::Source { vertex: self.vertices[v].clone(), color: c + 1 });
                }
            }
        }
        let name = |e: usize| self.edges[e].id.clone();
        for ((a, b), prev, new) in &self.square_conflicts {
            out.push(Violation::ConflictingSquares {
                pair: (name(*a), name(*b)),
                first: (name(prev.0), name(prev.1)),
                second: (name(new.0), name(new.1)),
            });
        }
        let mut keys: Vec<_> = self.squares.keys().copied().collect();
        keys.sort_unstable();
        for (f, g) in keys {
            let (g2, f2) = self.squares[&(f, g)];
            let (ef, eg, eg2, ef2) = (&self.edges[f], &self.edges[g], &self.edges[g2], &self.edges[f2]);
            let shape_ok = ef.color != eg.color
                && ef.source == eg.range
                && eg2.color == eg.color
                && ef2.color == ef.color
                && eg2.source == ef2.range
                && eg2.range == ef.range
                && ef2.source == eg.source;
            if !shape_ok {
                out.push(Violation::BadSquare { lhs: (name(f), name(g)), rhs: (name(g2), name(f2)) });
            }
        }
        for f in 0..self.edges.len() {
            for g in 0..self.edges.len() {
                let (ef, eg) = (&self.edges[f], &self.edges[g]);
                if ef.color != eg.color && ef.source == eg.range && !self.squares.contains_key(&(f, g)) {
                    out.push(Violation::UnmatchedPair { pair: (name(f), name(g)) });
                }
            }
        }
        if self.k >= 3 {
            out.extend(self.cube_violations());
        }
        ValidationReport { violations: out }
    }

    fn cube_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let swap_at = |w: &mut [usize; 3], i: usize| -> Option<()> {
            let (a, b) = self.square_partner(w[i], w[i + 1])?;
            w[i] = a;
            w[i + 1] = b;
            Some(())
        };
        for (e, ee) in self.edges.iter().enumerate() {
            for f in self.in_edges_from(ee.source) {
                for g in self.in_edges_from(self.edges[f].source) {
                    let colors = [ee.color, self.edges[f].color, self.edges[g].color];
                    if colors[0] == colors[1] || colors[1] == colors[2] || colors[0] == colors[2] {
                        continue;
                    }
                    let mut x = [e, f, g];
                    let mut y = [e, f, g];
                    let ok_x = swap_at(&mut x, 0).and_then(|_| swap_at(&mut x, 1)).and_then(|_| swap_at(&mut x, 0));
                    let ok_y = swap_at(&mut y, 1).and_then(|_| swap_at(&mut y, 0)).and_then(|_| swap_at(&mut y, 1));
                    // missing squares are reported separately
                    if ok_x.is_some() && ok_y.is_some() && x != y {
                        out.push(Violation::Cube {
                            triple: [e, f, g].map(|i| self.edges[i].id.clone()),
                        });
                    }
                }
            }
        }
        out
    }

    fn in_edges_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.in_edges[v].iter().flatten().copied()
    }

    /// Path built from a sequence of edge names, normalized.
    pub fn path(&self, word: &[&str]) -> Result<Path, KGraphError> {
        let ids = word.iter().map(|w| self.edge_id(w)).collect::<Result<Vec<_>, _>>()?;
        Path::from_word(self, &ids)
    }

    pub fn vertex_path(&self, name: &str) -> Result<Path, KGraphError> {
        Ok(Path::vertex(self, self.vertex_id(name)?))
    }

    /// Edge names of a path, or the vertex name for a vertex path.
    pub fn path_label(&self, p: &Path) -> String {
        if p.is_vertex() {
            self.vertices[p.range()].clone()
        } else {
            p.edges().iter().map(|e| self.edges[*e].id.as_str()).collect::<Vec<_>>().join(",")
        }
    }

    /// The one-edge graph of rank `k`: a single vertex carrying one loop of
    /// each color, with all squares trivial.
    pub fn one_loop_per_color(k: usize) -> Self {
        let names: Vec<String> = (1..=k).map(|c| format!("e{c}")).collect();
        let edges = names.iter().enumerate().map(|(i, n)| (n.clone(), i + 1, "v".into(), "v".into())).collect();
        let mut squares = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                squares.push(((names[i].clone(), names[j].clone()), (names[j].clone(), names[i].clone())));
            }
        }
        KGraph::from_parts(k, vec!["v".into()], edges, squares).expect("well-formed presentation")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Source { vertex: String, color: usize },
    UnmatchedPair { pair: (String, String) },
    ConflictingSquares { pair: (String, String), first: (String, String), second: (String, String) },
    BadSquare { lhs: (String, String), rhs: (String, String) },
    Cube { triple: [String; 3] },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Source { vertex, color } => {
                write!(f, "vertex {vertex} receives no edge of color {color}")
            }
            Violation::UnmatchedPair { pair } => {
                write!(f, "unmatched bichromatic pair ({},{})", pair.0, pair.1)
            }
            Violation::ConflictingSquares { pair, first, second } => write!(
                f,
                "pair ({},{}) has two partners ({},{}) and ({},{})",
                pair.0, pair.1, first.0, first.1, second.0, second.1
            ),
            Violation::BadSquare { lhs, rhs } => write!(
                f,
                "square ({},{}) ~ ({},{}) has mismatched colors or endpoints",
                lhs.0, lhs.1, rhs.0, rhs.1
            ),
            Violation::Cube { triple } => {
                write!(f, "cube condition fails at ({},{},{})", triple[0], triple[1], triple[2])
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "graph is a valid k-graph");
        }
        writeln!(f, "graph validation FAILED ({} violations)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Small graphs used throughout the tests and the CLI examples.
pub mod examples {
    use super::KGraph;

    /// One vertex, loops `e` (color 1) and `f` (color 2), square `ef = fe`.
    pub fn t2() -> KGraph {
        KGraph::new(2, &["v"], &[("e", 1, "v", "v"), ("f", 2, "v", "v")], &[(("e", "f"), ("f", "e"))])
            .unwrap()
    }

    /// Rank 3 analogue of [`t2`].
    pub fn t3() -> KGraph {
        KGraph::new(
            3,
            &["v"],
            &[("e", 1, "v", "v"), ("f", 2, "v", "v"), ("g", 3, "v", "v")],
            &[(("e", "f"), ("f", "e")), (("e", "g"), ("g", "e")), (("f", "g"), ("g", "f"))],
        )
        .unwrap()
    }

    /// The 1-graph with one vertex and two loops `e`, `f`.
    pub fn e2() -> KGraph {
        KGraph::new(1, &["v"], &[("e", 1, "v", "v"), ("f", 1, "v", "v")], &[]).unwrap()
    }

    /// The directed 3-cycle `u ← w ← x ← u` with edges `a: w→u`, `b: x→w`,
    /// `c: u→x` (written source→range).
    pub fn c3() -> KGraph {
        KGraph::new(
            1,
            &["u", "w", "x"],
            &[("a", 1, "u", "w"), ("b", 1, "w", "x"), ("c", 1, "x", "u")],
            &[],
        )
        .unwrap()
    }

    /// A single-vertex 2-graph with two edges of each color whose squares
    /// permute the blue indices: `e_i f_j = f_{j'} e_{i'}`.
    pub fn flip2() -> KGraph {
        KGraph::new(
            2,
            &["v"],
            &[("e1", 1, "v", "v"), ("e2", 1, "v", "v"), ("f1", 2, "v", "v"), ("f2", 2, "v", "v")],
            &[
                (("e1", "f1"), ("f1", "e1")),
                (("e1", "f2"), ("f2", "e2")),
                (("e2", "f1"), ("f2", "e1")),
                (("e2", "f2"), ("f1", "e2")),
            ],
        )
        .unwrap()
    }

    /// Two vertices each carrying a single loop, with no edges between them.
    pub fn disjoint_loops() -> KGraph {
        KGraph::new(1, &["u", "w"], &[("a", 1, "u", "u"), ("b", 1, "w", "w")], &[]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn bundled_graphs_validate() {
        for g in [t2(), t3(), e2(), c3(), flip2(), disjoint_loops(), KGraph::one_loop_per_color(4)] {
            let r = g.validate();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn missing_square_is_reported() {
        let g = KGraph::new(2, &["v"], &[("e", 1, "v", "v"), ("f", 2, "v", "v")], &[]).unwrap();
        let r = g.validate();
        assert!(r.violations.contains(&Violation::UnmatchedPair { pair: ("e".into(), "f".into()) }));
        assert!(r.to_string().contains("(e,f)"));
    }

    #[test]
    fn sources_are_reported() {
        let g = KGraph::new(1, &["u", "w"], &[("a", 1, "u", "w")], &[]).unwrap();
        let r = g.validate();
        assert_eq!(r.violations, vec![Violation::Source { vertex: "w".into(), color: 1 }]);
    }

    #[test]
    fn bad_square_shape_is_reported() {
        let g = KGraph::new(
            2,
            &["v"],
            &[("e", 1, "v", "v"), ("f", 2, "v", "v"), ("e2", 1, "v", "v")],
            &[(("e", "f"), ("e2", "f"))],
        )
        .unwrap();
        assert!(g.validate().violations.iter().any(|v| matches!(v, Violation::BadSquare { .. })));
    }

    #[test]
    fn conflicting_squares_are_reported() {
        let g = KGraph::new(
            2,
            &["v"],
            &[("e1", 1, "v", "v"), ("e2", 1, "v", "v"), ("f", 2, "v", "v")],
            &[(("e1", "f"), ("f", "e1")), (("e1", "f"), ("f", "e2"))],
        )
        .unwrap();
        assert!(g.validate().violations.iter().any(|v| matches!(v, Violation::ConflictingSquares { .. })));
    }

    #[test]
    fn cube_condition_failure_is_detected() {
        // Three colors on one vertex with three edges of color 1. Passing f
        // permutes the color-1 edges by (1 2) and passing g by (2 3); these do
        // not commute, so the two ways of sorting a tricolored word disagree.
        let g = KGraph::new(
            3,
            &["v"],
            &[
                ("e1", 1, "v", "v"),
                ("e2", 1, "v", "v"),
                ("e3", 1, "v", "v"),
                ("f", 2, "v", "v"),
                ("g", 3, "v", "v"),
            ],
            &[
                (("e1", "f"), ("f", "e2")),
                (("e2", "f"), ("f", "e1")),
                (("e3", "f"), ("f", "e3")),
                (("e1", "g"), ("g", "e1")),
                (("e2", "g"), ("g", "e3")),
                (("e3", "g"), ("g", "e2")),
                (("f", "g"), ("g", "f")),
            ],
        )
        .unwrap();
        let r = g.validate();
        assert!(r.violations.iter().all(|v| matches!(v, Violation::Cube { .. })), "{r}");
        assert!(!r.passed());
    }

    #[test]
    fn unknown_ids_are_rejected() {
        assert_eq!(
            KGraph::new(1, &["v"], &[("e", 1, "v", "w")], &[]).unwrap_err(),
            KGraphError::UnknownVertex("w".into())
        );
        assert!(matches!(
            KGraph::new(1, &["v"], &[("e", 2, "v", "v")], &[]),
            Err(KGraphError::InvalidColor { .. })
        ));
    }
}
