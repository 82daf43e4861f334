use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::path::{join, Degree};
use super::{KGraph, Path};

/// Search bounds for the structural checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureBounds {
    /// Witness paths for aperiodicity have degree at most this.
    pub degree_bound: Degree,
    /// Pairs `m ≠ n` are checked for `m, n` at most this.
    pub pair_bound: Degree,
    /// Largest diagonal step `t` tried by the cofinality search.
    pub cofinality_bound: u32,
}

impl StructureBounds {
    /// Pair bound 2, degree bound 6 and cofinality bound `2^|Λ⁰|` (capped).
    pub fn defaults(graph: &KGraph) -> Self {
        let k = graph.rank();
        StructureBounds {
            degree_bound: vec![6; k],
            pair_bound: vec![2; k],
            cofinality_bound: 1u32 << graph.num_vertices().min(20),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AperiodicityVerdict {
    /// Every `(v, m, n)` inside the pair bound has a witness path.
    AperiodicWitnessed { witnesses: Vec<(usize, Degree, Degree, Path)> },
    /// No witness of degree within the bound exists for this triple.
    NotAperiodicUpToBound { vertex: usize, m: Degree, n: Degree },
    /// Exact: every cycle has an entrance (rank 1 only).
    Aperiodic,
    /// Exact: a cycle without an entrance, as a path (rank 1 only).
    Periodic { cycle: Path },
}

impl AperiodicityVerdict {
    pub fn is_positive(&self) -> bool {
        matches!(self, AperiodicityVerdict::AperiodicWitnessed { .. } | AperiodicityVerdict::Aperiodic)
    }

    pub fn describe(&self, graph: &KGraph) -> String {
        match self {
            AperiodicityVerdict::AperiodicWitnessed { witnesses } => {
                format!("aperiodic (witnessed, {} triples)", witnesses.len())
            }
            AperiodicityVerdict::NotAperiodicUpToBound { vertex, m, n } => format!(
                "not aperiodic up to bound: no witness at vertex {} for m={m:?}, n={n:?}",
                graph.vertices()[*vertex]
            ),
            AperiodicityVerdict::Aperiodic => "aperiodic (exact: every cycle has an entrance)".into(),
            AperiodicityVerdict::Periodic { cycle } => {
                format!("periodic (exact: cycle {} has no entrance)", graph.path_label(cycle))
            }
        }
    }
}

fn degree_box(bound: &[u32]) -> Vec<Degree> {
    let mut out = vec![Vec::new()];
    for b in bound {
        out = out
            .into_iter()
            .flat_map(|p: Degree| (0..=*b).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    out.sort_by_key(|d| (d.iter().sum::<u32>(), d.clone()));
    out
}

/// Bounded search for the finite-path form of aperiodicity: for every vertex
/// `v` and `m ≠ n`, some `λ ∈ vΛ` with `m ∨ n ≤ d(λ)` and
/// `λ(m, m + d(λ) − m∨n) ≠ λ(n, n + d(λ) − m∨n)`.
pub fn aperiodicity_bounded(graph: &KGraph, degree_bound: &[u32], pair_bound: &[u32]) -> AperiodicityVerdict {
    let pairs = degree_box(pair_bound);
    let degrees = degree_box(degree_bound);
    let mut cache: HashMap<(usize, Degree), Vec<Path>> = HashMap::new();
    let mut witnesses = Vec::new();
    for v in 0..graph.num_vertices() {
        for (i, m) in pairs.iter().enumerate() {
            for n in &pairs[i + 1..] {
                let top = join(m, n);
                let mut found = None;
                'search: for p in degrees.iter().filter(|p| p.iter().zip(&top).all(|(a, b)| a >= b)) {
                    let paths = cache
                        .entry((v, p.clone()))
                        .or_insert_with(|| graph.enumerate(v, p).expect("vertex in range"));
                    let shift: Degree = p.iter().zip(&top).map(|(a, b)| a - b).collect();
                    let end = |s: &Degree| -> Degree { s.iter().zip(&shift).map(|(a, b)| a + b).collect() };
                    for lambda in paths.iter() {
                        let a = lambda.segment(graph, m, &end(m));
                        let b = lambda.segment(graph, n, &end(n));
                        if let (Ok(a), Ok(b)) = (a, b) {
                            if a != b {
                                found = Some(lambda.clone());
                                break 'search;
                            }
                        }
                    }
                }
                match found {
                    Some(lambda) => witnesses.push((v, m.clone(), n.clone(), lambda)),
                    None => {
                        return AperiodicityVerdict::NotAperiodicUpToBound {
                            vertex: v,
                            m: m.clone(),
                            n: n.clone(),
                        }
                    }
                }
            }
        }
    }
    AperiodicityVerdict::AperiodicWitnessed { witnesses }
}

/// Exact for rank 1 (every cycle has an entrance), bounded search otherwise.
pub fn aperiodicity_check(graph: &KGraph, degree_bound: &[u32], pair_bound: &[u32]) -> AperiodicityVerdict {
    if graph.rank() != 1 {
        return aperiodicity_bounded(graph, degree_bound, pair_bound);
    }
    // A cycle without an entrance runs through vertices that each receive
    // exactly one edge, so it is a cycle of the map w ↦ s(unique edge into w).
    let unique_in: Vec<Option<usize>> = (0..graph.num_vertices())
        .map(|w| match graph.edges_into(w, 0) {
            [e] => Some(*e),
            _ => None,
        })
        .collect();
    let mut state = vec![0u8; graph.num_vertices()]; // 0 new, 1 on stack, 2 done
    for start in 0..graph.num_vertices() {
        let mut trail = Vec::new();
        let mut w = start;
        while state[w] == 0 {
            let Some(e) = unique_in[w] else { break };
            state[w] = 1;
            trail.push(w);
            w = graph.edge(e).source;
        }
        if state[w] == 1 {
            let pos = trail.iter().position(|x| *x == w).expect("w is on the trail");
            let word: Vec<usize> = trail[pos..].iter().map(|x| unique_in[*x].unwrap()).collect();
            let cycle = Path::from_word(graph, &word).expect("consecutive unique in-edges compose");
            return AperiodicityVerdict::Periodic { cycle };
        }
        for x in trail {
            state[x] = 2;
        }
    }
    AperiodicityVerdict::Aperiodic
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CofinalityVerdict {
    /// For each `(v, w)`, a diagonal degree `n` with `vΛs(λ) ≠ ∅` for all
    /// `λ ∈ wΛ^n`.
    Cofinal { witnesses: Vec<(usize, usize, Degree)> },
    NotCofinalUpToBound { v: usize, w: usize },
    /// Exact: the sources of `wΛ^n` cycle without entering the set of
    /// vertices that reach `v`.
    NotCofinal { v: usize, w: usize },
}

impl CofinalityVerdict {
    pub fn is_positive(&self) -> bool {
        matches!(self, CofinalityVerdict::Cofinal { .. })
    }

    pub fn describe(&self, graph: &KGraph) -> String {
        let name = |x: &usize| graph.vertices()[*x].as_str();
        match self {
            CofinalityVerdict::Cofinal { .. } => "cofinal".into(),
            CofinalityVerdict::NotCofinalUpToBound { v, w } => {
                format!("not cofinal up to bound (v={}, w={})", name(v), name(w))
            }
            CofinalityVerdict::NotCofinal { v, w } => {
                format!("not cofinal (exact, v={}, w={})", name(v), name(w))
            }
        }
    }
}

/// Vertices `u` with `vΛu ≠ ∅`.
fn reaching(graph: &KGraph, v: usize) -> Vec<bool> {
    let mut seen = vec![false; graph.num_vertices()];
    let mut stack = vec![v];
    seen[v] = true;
    while let Some(x) = stack.pop() {
        for c in 0..graph.rank() {
            for e in graph.edges_into(x, c) {
                let s = graph.edge(*e).source;
                if !seen[s] {
                    seen[s] = true;
                    stack.push(s);
                }
            }
        }
    }
    seen
}

/// Cofinality along the diagonal `n = t·(1,…,1)`. The property is monotone
/// in `n`, so the diagonal loses nothing, and the source sets evolve by a
/// fixed map, so a repeated set decides the negative case exactly.
pub fn cofinality_check(graph: &KGraph, t_bound: u32) -> CofinalityVerdict {
    let k = graph.rank();
    let step = |set: &BTreeSet<usize>| -> BTreeSet<usize> {
        let mut cur = set.clone();
        for c in 0..k {
            cur = cur.iter().flat_map(|x| graph.edges_into(*x, c)).map(|e| graph.edge(*e).source).collect();
        }
        cur
    };
    let mut witnesses = Vec::new();
    for v in 0..graph.num_vertices() {
        let reach = reaching(graph, v);
        for w in 0..graph.num_vertices() {
            let mut set: BTreeSet<usize> = [w].into();
            let mut seen: HashMap<BTreeSet<usize>, u32> = HashMap::new();
            let mut t = 0;
            loop {
                if set.iter().all(|x| reach[*x]) {
                    witnesses.push((v, w, vec![t; k]));
                    break;
                }
                if seen.insert(set.clone(), t).is_some() {
                    return CofinalityVerdict::NotCofinal { v, w };
                }
                if t == t_bound {
                    return CofinalityVerdict::NotCofinalUpToBound { v, w };
                }
                set = step(&set);
                t += 1;
            }
        }
    }
    CofinalityVerdict::Cofinal { witnesses }
}

/// Aperiodicity plus cofinality is sufficient for simplicity; the converse
/// is not used, so a negative sub-verdict only means no conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicityVerdict {
    Simple { aperiodicity: AperiodicityVerdict, cofinality: CofinalityVerdict },
    NotConcluded { reasons: Vec<&'static str>, aperiodicity: AperiodicityVerdict, cofinality: CofinalityVerdict },
}

impl SimplicityVerdict {
    pub fn is_simple(&self) -> bool {
        matches!(self, SimplicityVerdict::Simple { .. })
    }
}

pub fn simplicity_verdict(graph: &KGraph, bounds: &StructureBounds) -> SimplicityVerdict {
    let aperiodicity = aperiodicity_check(graph, &bounds.degree_bound, &bounds.pair_bound);
    let cofinality = cofinality_check(graph, bounds.cofinality_bound);
    let mut reasons = Vec::new();
    if !aperiodicity.is_positive() {
        reasons.push("aperiodicity");
    }
    if !cofinality.is_positive() {
        reasons.push("cofinality");
    }
    if reasons.is_empty() {
        SimplicityVerdict::Simple { aperiodicity, cofinality }
    } else {
        SimplicityVerdict::NotConcluded { reasons, aperiodicity, cofinality }
    }
}

impl fmt::Display for SimplicityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimplicityVerdict::Simple { .. } => f.write_str("Simple"),
            SimplicityVerdict::NotConcluded { reasons, .. } => {
                write!(f, "NotConcluded ({})", reasons.join(", "))
            }
        }
    }
}
