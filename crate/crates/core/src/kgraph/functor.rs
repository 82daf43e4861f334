use crate::grp::{Group, GroupElem};

use super::{KGraph, KGraphError, Path};

/// A functor `η: Λ → G`, determined by its values on edges. Vertices go to
/// the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Functor {
    target: Group,
    edge_values: Vec<GroupElem>,
}

impl Functor {
    /// Values are indexed like the graph's edge list. Square compatibility is
    /// not checked here; see [`Functor::compatibility_violations`].
    pub fn new(graph: &KGraph, target: Group, edge_values: Vec<GroupElem>) -> Result<Self, KGraphError> {
        if edge_values.len() != graph.edges().len() {
            return Err(KGraphError::Rank { k: graph.edges().len(), found: edge_values.len() });
        }
        for v in &edge_values {
            target.check(v)?;
        }
        Ok(Functor { target, edge_values })
    }

    /// The degree functor `d: Λ → ℤ^k`.
    pub fn degree(graph: &KGraph) -> Self {
        let k = graph.rank();
        let values = graph
            .edges()
            .iter()
            .map(|e| {
                let mut v = vec![0; k];
                v[e.color] = 1;
                GroupElem::Zk(v)
            })
            .collect();
        Functor { target: Group::Zk(k), edge_values: values }
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn edge_value(&self, e: usize) -> &GroupElem {
        &self.edge_values[e]
    }

    /// Squares `fg = g′f′` with `η(f)η(g) ≠ η(g′)η(f′)`, as labels.
    pub fn compatibility_violations(&self, graph: &KGraph) -> Vec<String> {
        let mut out = Vec::new();
        for f in 0..graph.edges().len() {
            for g in 0..graph.edges().len() {
                let Some((g2, f2)) = graph.square_partner(f, g) else { continue };
                let lhs = self.target.mul(&self.edge_values[f], &self.edge_values[g]);
                let rhs = self.target.mul(&self.edge_values[g2], &self.edge_values[f2]);
                if lhs != rhs {
                    let id = |e: usize| graph.edge(e).id.as_str();
                    out.push(format!("{}{} = {}{}", id(f), id(g), id(g2), id(f2)));
                }
            }
        }
        out
    }

    pub fn check_compatible(&self, graph: &KGraph) -> Result<(), KGraphError> {
        match self.compatibility_violations(graph).into_iter().next() {
            Some(sq) => Err(KGraphError::IncompatibleFunctor(sq)),
            None => Ok(()),
        }
    }

    /// `η(λ)`, the ordered product of edge values along λ.
    pub fn eval(&self, path: &Path) -> GroupElem {
        path.edges().iter().fold(self.target.identity(), |acc, e| {
            self.target.mul(&acc, &self.edge_values[*e]).expect("values checked at construction")
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;
    use crate::grp::FiniteGroup;

    #[test]
    fn degree_functor_on_t2() {
        let g = t2();
        let d = Functor::degree(&g);
        assert_eq!(d.eval(&g.path(&["e", "f"]).unwrap()), GroupElem::Zk(vec![1, 1]));
        assert_eq!(d.eval(&g.vertex_path("v").unwrap()), GroupElem::Zk(vec![0, 0]));
        assert!(d.check_compatible(&g).is_ok());
    }

    #[test]
    fn e2_functor_into_z2() {
        let g = e2();
        let eta = Functor::new(&g, Group::Zk(2), vec![GroupElem::Zk(vec![1, 0]), GroupElem::Zk(vec![0, 1])])
            .unwrap();
        assert_eq!(eta.eval(&g.path(&["e", "f", "f"]).unwrap()), GroupElem::Zk(vec![1, 2]));
    }

    #[test]
    fn incompatible_functor_is_detected() {
        let g = flip2();
        // e1 f2 = f2 e2 forces η(e1) = η(e2) in an abelian target
        let z3 = Group::finite(FiniteGroup::cyclic(3));
        let vals = [1, 2, 0, 0].map(GroupElem::Finite).to_vec();
        let eta = Functor::new(&g, z3, vals).unwrap();
        assert!(!eta.compatibility_violations(&g).is_empty());
        assert!(matches!(eta.check_compatible(&g), Err(KGraphError::IncompatibleFunctor(_))));
    }
}
