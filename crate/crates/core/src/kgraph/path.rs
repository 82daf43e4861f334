use std::fmt;

use super::{KGraph, KGraphError};

/// A multidegree in ℕ^k.
pub type Degree = Vec<u32>;

/// Coordinatewise maximum `m ∨ n`.
pub fn join(m: &[u32], n: &[u32]) -> Degree {
    m.iter().zip(n).map(|(a, b)| *a.max(b)).collect()
}

fn leq(m: &[u32], n: &[u32]) -> bool {
    m.iter().zip(n).all(|(a, b)| a <= b)
}

fn sub(n: &[u32], m: &[u32]) -> Degree {
    n.iter().zip(m).map(|(a, b)| a - b).collect()
}

fn color_run(d: &[u32]) -> impl Iterator<Item = usize> + '_ {
    d.iter().enumerate().flat_map(|(c, n)| std::iter::repeat_n(c, *n as usize))
}

/// A path stored in color-normal form. Vertex paths have an empty word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    degree: Degree,
    range: usize,
    source: usize,
    edges: Vec<usize>,
}

impl Path {
    pub fn vertex(graph: &KGraph, v: usize) -> Path {
        Path { degree: vec![0; graph.rank()], range: v, source: v, edges: Vec::new() }
    }

    /// Normalizes a composable word of edge indices.
    pub fn from_word(graph: &KGraph, word: &[usize]) -> Result<Path, KGraphError> {
        let Some(first) = word.first() else {
            return Err(KGraphError::NotComposable("empty word has no vertex".into()));
        };
        for pair in word.windows(2) {
            let (a, b) = (graph.edge(pair[0]), graph.edge(pair[1]));
            if a.source != b.range {
                return Err(KGraphError::NotComposable(format!("{} then {}", a.id, b.id)));
            }
        }
        let mut degree = vec![0; graph.rank()];
        for e in word {
            degree[graph.edge(*e).color] += 1;
        }
        let range = graph.edge(*first).range;
        let source = graph.edge(*word.last().unwrap()).source;
        let mut edges = word.to_vec();
        normalize(graph, &mut edges)?;
        Ok(Path { degree, range, source, edges })
    }

    pub fn range(&self) -> usize {
        self.range
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn degree(&self) -> &[u32] {
        &self.degree
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    /// `λμ`, defined when `s(λ) = r(μ)`.
    pub fn compose(&self, graph: &KGraph, other: &Path) -> Result<Path, KGraphError> {
        if self.source != other.range {
            return Err(KGraphError::NotComposable(format!(
                "source {} differs from range {}",
                graph.vertices()[self.source],
                graph.vertices()[other.range]
            )));
        }
        if self.is_vertex() {
            return Ok(other.clone());
        }
        if other.is_vertex() {
            return Ok(self.clone());
        }
        let mut edges = Vec::with_capacity(self.len() + other.len());
        edges.extend_from_slice(&self.edges);
        edges.extend_from_slice(&other.edges);
        normalize(graph, &mut edges)?;
        Ok(Path {
            degree: self.degree.iter().zip(&other.degree).map(|(a, b)| a + b).collect(),
            range: self.range,
            source: other.source,
            edges,
        })
    }

    /// The factor `λ(m, n)` with `λ = λ(0,m) λ(m,n) λ(n,d(λ))`.
    pub fn segment(&self, graph: &KGraph, m: &[u32], n: &[u32]) -> Result<Path, KGraphError> {
        let k = graph.rank();
        if m.len() != k || n.len() != k {
            return Err(KGraphError::Rank { k, found: m.len().max(n.len()) });
        }
        if !leq(m, n) || !leq(n, &self.degree) {
            return Err(KGraphError::Bounds(format!("need {m:?} <= {n:?} <= {:?}", self.degree)));
        }
        let target: Vec<usize> = color_run(m)
            .chain(color_run(&sub(n, m)))
            .chain(color_run(&sub(&self.degree, n)))
            .collect();
        let word = reorder(graph, &self.edges, &target)?;
        let (lo, hi) = (m.iter().sum::<u32>() as usize, n.iter().sum::<u32>() as usize);
        if lo == hi {
            let v = if lo == 0 { self.range } else { graph.edge(word[lo - 1]).source };
            return Ok(Path::vertex(graph, v));
        }
        Path::from_word(graph, &word[lo..hi])
    }

    /// Splits `λ` as `(λ(0,m), λ(m,d(λ)))`.
    pub fn split(&self, graph: &KGraph, m: &[u32]) -> Result<(Path, Path), KGraphError> {
        let zero = vec![0; graph.rank()];
        Ok((self.segment(graph, &zero, m)?, self.segment(graph, m, &self.degree)?))
    }

    pub fn display<'a>(&'a self, graph: &'a KGraph) -> impl fmt::Display + 'a {
        PathDisplay { path: self, graph }
    }
}

struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a KGraph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.graph.path_label(self.path))
    }
}

/// Bubble sort by color, each transposition realized by a square.
fn normalize(graph: &KGraph, word: &mut [usize]) -> Result<(), KGraphError> {
    let color = |e: usize| graph.edge(e).color;
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..word.len().saturating_sub(1) {
            if color(word[i]) > color(word[i + 1]) {
                let (a, b) = graph.swap(word[i], word[i + 1])?;
                word[i] = a;
                word[i + 1] = b;
                changed = true;
            }
        }
    }
    Ok(())
}

/// Rewrites `word` into the representative whose color sequence is `target`.
/// Position `p` is filled by the nearest later edge of the wanted color,
/// which is carried leftward past edges of other colors.
fn reorder(graph: &KGraph, word: &[usize], target: &[usize]) -> Result<Vec<usize>, KGraphError> {
    let mut w = word.to_vec();
    for (p, want) in target.iter().enumerate() {
        let q = (p..w.len())
            .find(|&q| graph.edge(w[q]).color == *want)
            .expect("target is a permutation of the color census");
        for i in (p..q).rev() {
            let (a, b) = graph.swap(w[i], w[i + 1])?;
            w[i] = a;
            w[i + 1] = b;
        }
    }
    Ok(w)
}

impl KGraph {
    /// All paths in `vΛ^n`, i.e. with range `v` and degree `n`.
    pub fn enumerate(&self, v: usize, n: &[u32]) -> Result<Vec<Path>, KGraphError> {
        if v >= self.num_vertices() {
            return Err(KGraphError::UnknownVertex(format!("#{v}")));
        }
        if n.len() != self.rank() {
            return Err(KGraphError::Rank { k: self.rank(), found: n.len() });
        }
        let colors: Vec<usize> = color_run(n).collect();
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(colors.len());
        self.extend_words(v, &colors, &mut word, &mut out);
        if colors.is_empty() {
            return Ok(vec![Path::vertex(self, v)]);
        }
        Ok(out
            .into_iter()
            .map(|edges: Vec<usize>| Path {
                degree: n.to_vec(),
                range: v,
                source: self.edge(*edges.last().unwrap()).source,
                edges,
            })
            .collect())
    }

    fn extend_words(&self, cur: usize, colors: &[usize], word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some((c, rest)) = colors.split_first() else {
            out.push(word.clone());
            return;
        };
        for &e in self.edges_into(cur, *c) {
            word.push(e);
            self.extend_words(self.edge(e).source, rest, word, out);
            word.pop();
        }
    }

    /// `Λ^min(λ, μ)`: pairs `(α, β)` with `λα = μβ` of degree `d(λ) ∨ d(μ)`.
    pub fn lambda_min(&self, lambda: &Path, mu: &Path) -> Result<Vec<(Path, Path)>, KGraphError> {
        if lambda.range != mu.range {
            return Ok(Vec::new());
        }
        if lambda == mu {
            let s = Path::vertex(self, lambda.source);
            return Ok(vec![(s.clone(), s)]);
        }
        let top = join(&lambda.degree, &mu.degree);
        let mut out = Vec::new();
        for alpha in self.enumerate(lambda.source, &sub(&top, &lambda.degree))? {
            let la = lambda.compose(self, &alpha)?;
            let (head, beta) = la.split(self, &mu.degree)?;
            if head == *mu {
                out.push((alpha, beta));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;

    #[test]
    fn compose_uses_the_square() {
        let g = t2();
        let f = g.path(&["f"]).unwrap();
        let e = g.path(&["e"]).unwrap();
        let fe = f.compose(&g, &e).unwrap();
        assert_eq!(g.path_label(&fe), "e,f");
        assert_eq!(fe.degree(), &[1, 1]);
        let v = g.vertex_path("v").unwrap();
        assert_eq!(v.compose(&g, &fe).unwrap(), fe);
    }

    #[test]
    fn segment_examples() {
        let g = t2();
        let ef = g.path(&["e", "f"]).unwrap();
        assert_eq!(ef.segment(&g, &[0, 0], &[1, 0]).unwrap(), g.path(&["e"]).unwrap());
        assert_eq!(ef.segment(&g, &[0, 0], &[0, 1]).unwrap(), g.path(&["f"]).unwrap());
        assert_eq!(ef.segment(&g, &[0, 0], &[1, 1]).unwrap(), ef);
        assert!(ef.segment(&g, &[1, 1], &[1, 1]).unwrap().is_vertex());
        assert!(matches!(ef.segment(&g, &[1, 0], &[0, 1]), Err(KGraphError::Bounds(_))));
    }

    #[test]
    fn segment_through_flip_squares() {
        // e2 f2 = f1 e2, so the color-2 prefix of e2f2 is f1
        let g = flip2();
        let p = g.path(&["e2", "f2"]).unwrap();
        assert_eq!(p.segment(&g, &[0, 0], &[0, 1]).unwrap(), g.path(&["f1"]).unwrap());
        assert_eq!(p.segment(&g, &[0, 1], &[1, 1]).unwrap(), g.path(&["e2"]).unwrap());
    }

    #[test]
    fn enumerate_examples() {
        let g = t2();
        assert_eq!(g.enumerate(0, &[1, 1]).unwrap(), vec![g.path(&["e", "f"]).unwrap()]);
        assert_eq!(g.enumerate(0, &[0, 0]).unwrap(), vec![g.vertex_path("v").unwrap()]);
        let e2 = e2();
        assert_eq!(e2.enumerate(0, &[3]).unwrap().len(), 8);
        let c3 = c3();
        let p = c3.enumerate(0, &[4]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(c3.path_label(&p[0]), "a,b,c,a");
        assert!(g.enumerate(3, &[0, 0]).is_err());
    }

    #[test]
    fn lambda_min_examples() {
        let g = t2();
        let e = g.path(&["e"]).unwrap();
        let f = g.path(&["f"]).unwrap();
        assert_eq!(g.lambda_min(&e, &f).unwrap(), vec![(f.clone(), e.clone())]);
        let v = g.vertex_path("v").unwrap();
        assert_eq!(g.lambda_min(&e, &e).unwrap(), vec![(v.clone(), v)]);
        let h = e2();
        let (e, f) = (h.path(&["e"]).unwrap(), h.path(&["f"]).unwrap());
        assert!(h.lambda_min(&e, &f).unwrap().is_empty());
        let ee = h.path(&["e", "e"]).unwrap();
        let ev = h.vertex_path("v").unwrap();
        assert_eq!(h.lambda_min(&ee, &e).unwrap(), vec![(ev, e.clone())]);
    }

    #[test]
    fn non_composable_word_is_rejected() {
        let g = c3();
        assert!(matches!(g.path(&["a", "c"]), Err(KGraphError::NotComposable(_))));
        let a = g.path(&["a"]).unwrap();
        assert!(a.compose(&g, &a).is_err());
    }
}
