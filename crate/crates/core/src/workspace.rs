//! JSON descriptions of graphs, functors and cocycles.
//!
//! A graph file carries the k-graph itself, optionally named functors and
//! named cocycles:
//!
//! ```json
//! {"rank": 2, "vertices": ["v"],
//!  "edges": [{"id": "e", "color": 1, "range": "v", "source": "v"},
//!            {"id": "f", "color": 2, "range": "v", "source": "v"}],
//!  "squares": [[["e", "f"], ["f", "e"]]],
//!  "functors": {"eta": {"target": {"kind": "Zk", "k": 2},
//!                       "edge_values": {"e": [1, 0], "f": [0, 1]}}},
//!  "cocycles": {"third": {"group": {"kind": "Zk", "k": 2},
//!                         "cocycle": {"kind": "matrix_circle",
//!                                     "entries": [["0", "1/3"], ["0", "0"]]}}}}
//! ```
//!
//! A standalone cocycle file is one entry of the `cocycles` map. Phases are
//! strings `"p/q"` (exact) or numbers (exact when integral, float otherwise).
//! The functor `degree` is always available unless a file overrides it.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, TwistContext};
use crate::grp::{CoboundaryFn, CoeffGroup, Cocycle, FiniteGroup, Group, GroupElem, GroupError};
use crate::kgraph::{Functor, KGraph, KGraphError};
use crate::phase::{parse_rational, Phase};

#[derive(Debug, Error)]
pub enum WorkspaceError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] KGraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("bad phase '{0}'")]
    Phase(String),
    #[error("functor '{functor}': {msg}")]
    Functor { functor: String, msg: String },
    #[error("unknown functor '{0}'")]
    UnknownFunctor(String),
    #[error("unknown cocycle '{0}'")]
    UnknownCocycle(String),
    #[error("cocycle '{name}': {msg}")]
    Cocycle { name: String, msg: String },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GraphFile {
    pub rank: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    #[serde(default)]
    pub squares: Vec<[[String; 2]; 2]>,
    #[serde(default)]
    pub functors: BTreeMap<String, FunctorSpec>,
    #[serde(default)]
    pub cocycles: BTreeMap<String, CocycleFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EdgeSpec {
    pub id: String,
    pub color: usize,
    pub range: String,
    pub source: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FunctorSpec {
    pub target: GroupSpec,
    pub edge_values: BTreeMap<String, ElemSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind")]
pub enum GroupSpec {
    Zk { k: usize },
    #[serde(rename = "finite")]
    Finite { table: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ElemSpec {
    Vector(Vec<i64>),
    Index(usize),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum PhaseSpec {
    Text(String),
    Number(f64),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CocycleFile {
    pub group: GroupSpec,
    pub cocycle: CocycleSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CocycleSpec {
    /// Circle-valued unless `int_rank` asks for values in ℤ^d.
    Trivial {
        #[serde(default)]
        int_rank: Option<usize>,
    },
    MatrixCircle { entries: Vec<Vec<PhaseSpec>> },
    /// One matrix (`entries`) for ℤ-values or several (`matrices`) for ℤ^d.
    MatrixInt {
        #[serde(default)]
        entries: Option<Vec<Vec<i64>>>,
        #[serde(default)]
        matrices: Option<Vec<Vec<Vec<i64>>>>,
    },
    Table { values: Vec<Vec<PhaseSpec>> },
    /// `base` multiplied by the coboundary of `b(m) = e^{2πi mᵗQm}`.
    CoboundaryQuadratic { base: Box<CocycleSpec>, quadratic: Vec<Vec<PhaseSpec>> },
}

impl PhaseSpec {
    pub fn to_phase(&self) -> Result<Phase, WorkspaceError> {
        match self {
            PhaseSpec::Text(s) => match parse_rational(s) {
                Some(q) => Ok(Phase::exact(q)),
                None => s.trim().parse::<f64>().map(Phase::float).map_err(|_| WorkspaceError::Phase(s.clone())),
            },
            PhaseSpec::Number(x) if x.fract() == 0.0 && x.abs() < 1e15 => Ok(Phase::identity()),
            PhaseSpec::Number(x) if x.is_finite() => Ok(Phase::float(*x)),
            PhaseSpec::Number(x) => Err(WorkspaceError::Phase(x.to_string())),
        }
    }
}

fn phase_matrix(rows: &[Vec<PhaseSpec>]) -> Result<Vec<Vec<Phase>>, WorkspaceError> {
    rows.iter().map(|r| r.iter().map(PhaseSpec::to_phase).collect()).collect()
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group, GroupError> {
        match self {
            GroupSpec::Zk { k } => Ok(Group::Zk(*k)),
            GroupSpec::Finite { table } => Ok(Group::finite(FiniteGroup::new(table.clone())?)),
        }
    }
}

impl ElemSpec {
    fn build(&self) -> GroupElem {
        match self {
            ElemSpec::Vector(v) => GroupElem::Zk(v.clone()),
            ElemSpec::Index(i) => GroupElem::Finite(*i),
        }
    }
}

impl CocycleSpec {
    pub fn build(&self, group: &Group) -> Result<Cocycle, WorkspaceError> {
        let expect_k = |n: usize| match group {
            Group::Zk(k) if *k == n => Ok(()),
            _ => Err(GroupError::Coefficients(format!("a {n}x{n} matrix needs the group Z^{n}, got {group}"))),
        };
        Ok(match self {
            CocycleSpec::Trivial { int_rank: None } => Cocycle::trivial(group.clone(), CoeffGroup::Circle),
            CocycleSpec::Trivial { int_rank: Some(d) } => Cocycle::trivial(group.clone(), CoeffGroup::Int(*d)),
            CocycleSpec::MatrixCircle { entries } => {
                expect_k(entries.len())?;
                Cocycle::matrix_circle(phase_matrix(entries)?)?
            }
            CocycleSpec::MatrixInt { entries, matrices } => {
                let ms = match (entries, matrices) {
                    (Some(e), None) => vec![e.clone()],
                    (None, Some(ms)) => ms.clone(),
                    _ => {
                        return Err(GroupError::InvalidCocycle(
                            "matrix_int takes exactly one of 'entries' or 'matrices'".into(),
                        )
                        .into())
                    }
                };
                expect_k(ms.first().map(Vec::len).unwrap_or(0))?;
                Cocycle::matrix_int_multi(ms)?
            }
            CocycleSpec::Table { values } => match group {
                Group::Finite(g) => Cocycle::table(g.clone(), phase_matrix(values)?)?,
                Group::Zk(_) => return Err(GroupError::Coefficients("tables need a finite group".into()).into()),
            },
            CocycleSpec::CoboundaryQuadratic { base, quadratic } => {
                expect_k(quadratic.len())?;
                base.build(group)?.apply_coboundary(CoboundaryFn::Quadratic(phase_matrix(quadratic)?))?
            }
        })
    }
}

impl CocycleFile {
    pub fn from_json(text: &str) -> Result<Self, WorkspaceError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self) -> Result<Cocycle, WorkspaceError> {
        self.cocycle.build(&self.group.build()?)
    }
}

/// A parsed graph file: the graph with its named functors and cocycles.
#[derive(Clone, Debug)]
pub struct Workspace {
    graph: Arc<KGraph>,
    functors: BTreeMap<String, Functor>,
    cocycles: BTreeMap<String, Cocycle>,
}

impl Workspace {
    pub fn from_json(text: &str) -> Result<Self, WorkspaceError> {
        Workspace::from_file(&serde_json::from_str(text)?)
    }

    pub fn from_file(file: &GraphFile) -> Result<Self, WorkspaceError> {
        let graph = KGraph::from_parts(
            file.rank,
            file.vertices.clone(),
            file.edges.iter().map(|e| (e.id.clone(), e.color, e.range.clone(), e.source.clone())).collect(),
            file.squares
                .iter()
                .map(|[[a, b], [c, d]]| ((a.clone(), b.clone()), (c.clone(), d.clone())))
                .collect(),
        )?;
        let mut functors = BTreeMap::new();
        functors.insert("degree".to_string(), Functor::degree(&graph));
        for (name, spec) in &file.functors {
            let err = |msg: String| WorkspaceError::Functor { functor: name.clone(), msg };
            let target = spec.target.build()?;
            for id in spec.edge_values.keys() {
                graph.edge_id(id).map_err(|e| err(e.to_string()))?;
            }
            let values = graph
                .edges()
                .iter()
                .map(|e| spec.edge_values.get(&e.id).map(ElemSpec::build).ok_or_else(|| err(format!("no value for edge {}", e.id))))
                .collect::<Result<Vec<_>, _>>()?;
            let f = Functor::new(&graph, target, values).map_err(|e| err(e.to_string()))?;
            functors.insert(name.clone(), f);
        }
        let mut cocycles = BTreeMap::new();
        for (name, spec) in &file.cocycles {
            let c = spec.build().map_err(|e| WorkspaceError::Cocycle { name: name.clone(), msg: e.to_string() })?;
            cocycles.insert(name.clone(), c);
        }
        Ok(Workspace { graph: Arc::new(graph), functors, cocycles })
    }

    pub fn graph(&self) -> &Arc<KGraph> {
        &self.graph
    }

    pub fn functors(&self) -> &BTreeMap<String, Functor> {
        &self.functors
    }

    pub fn cocycles(&self) -> &BTreeMap<String, Cocycle> {
        &self.cocycles
    }

    pub fn functor(&self, name: &str) -> Result<&Functor, WorkspaceError> {
        self.functors.get(name).ok_or_else(|| WorkspaceError::UnknownFunctor(name.to_string()))
    }

    pub fn cocycle(&self, name: &str) -> Result<&Cocycle, WorkspaceError> {
        self.cocycles.get(name).ok_or_else(|| WorkspaceError::UnknownCocycle(name.to_string()))
    }

    pub fn add_cocycle(&mut self, name: &str, cocycle: Cocycle) {
        self.cocycles.insert(name.to_string(), cocycle);
    }

    /// The twisted context for a named functor (default `degree`) and an
    /// optional cocycle (default trivial).
    pub fn context(&self, functor: Option<&str>, cocycle: Option<&Cocycle>) -> Result<TwistContext, WorkspaceError> {
        let f = self.functor(functor.unwrap_or("degree"))?.clone();
        let c = match cocycle {
            Some(c) => c.clone(),
            None => Cocycle::trivial(f.target().clone(), CoeffGroup::Circle),
        };
        Ok(TwistContext::new(self.graph.clone(), f, c)?)
    }
}
