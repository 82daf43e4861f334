use std::fmt;

use super::cocycle::{Coefficient, Cocycle};
use super::group::GroupElem;
use super::GroupError;

/// An element `(z, g)` of the central extension `H_σ` with product
/// `(z,g)(w,h) = (z + w + σ(g,h), gh)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtElement {
    pub z: Coefficient,
    pub g: GroupElem,
}

impl ExtElement {
    /// The canonical lift `(0, g)`.
    pub fn section(sigma: &Cocycle, g: GroupElem) -> Self {
        ExtElement { z: Coefficient::identity(sigma.coeff_group()), g }
    }

    pub fn identity(sigma: &Cocycle) -> Self {
        ExtElement::section(sigma, sigma.group().identity())
    }

    /// The quotient map `H_σ → G`.
    pub fn project(&self) -> &GroupElem {
        &self.g
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.z, self.g)
    }
}

pub fn ext_mul(sigma: &Cocycle, x: &ExtElement, y: &ExtElement) -> Result<ExtElement, GroupError> {
    let g = sigma.group().mul(&x.g, &y.g)?;
    let z = x.z.add(&y.z)?.add(&sigma.eval(&x.g, &y.g)?)?;
    Ok(ExtElement { z, g })
}

/// `(z,g)⁻¹ = (−z − σ(g,g⁻¹), g⁻¹)`.
pub fn ext_inv(sigma: &Cocycle, x: &ExtElement) -> Result<ExtElement, GroupError> {
    let gi = sigma.group().inv(&x.g)?;
    let z = x.z.neg().sub(&sigma.eval(&x.g, &gi)?)?;
    Ok(ExtElement { z, g: gi })
}

/// The cocycle `c(g)c(h)c(gh)⁻¹` of the section `c(g) = (0,g)`, computed in
/// the extension itself. It coincides with `σ`.
pub fn section_cocycle(sigma: &Cocycle) -> Cocycle {
    Cocycle::section(sigma.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{lattice_box, CheckSample, FiniteGroup, Group};
    use crate::phase::{Phase, Rational};
    use std::sync::Arc;

    fn heisenberg_like() -> Cocycle {
        Cocycle::matrix_int(vec![vec![0, 1], vec![0, 0]]).unwrap()
    }

    #[test]
    fn extension_group_axioms_on_a_box() {
        let s = heisenberg_like();
        let els: Vec<ExtElement> = lattice_box(2, 1)
            .into_iter()
            .flat_map(|g| {
                (-1..=1).map(move |z| ExtElement { z: Coefficient::Int(vec![z]), g: GroupElem::Zk(g.clone()) })
            })
            .take(20)
            .collect();
        let e = ExtElement::identity(&s);
        for x in &els {
            assert_eq!(ext_mul(&s, x, &e).unwrap(), *x);
            assert_eq!(ext_mul(&s, &e, x).unwrap(), *x);
            let xi = ext_inv(&s, x).unwrap();
            assert_eq!(ext_mul(&s, x, &xi).unwrap(), e);
            assert_eq!(ext_mul(&s, &xi, x).unwrap(), e);
            for y in &els {
                for w in els.iter().step_by(3) {
                    let l = ext_mul(&s, &ext_mul(&s, x, y).unwrap(), w).unwrap();
                    let r = ext_mul(&s, x, &ext_mul(&s, y, w).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn heisenberg_commutator_is_central() {
        let s = heisenberg_like();
        let a = ExtElement::section(&s, GroupElem::Zk(vec![1, 0]));
        let b = ExtElement::section(&s, GroupElem::Zk(vec![0, 1]));
        let ab = ext_mul(&s, &a, &b).unwrap();
        let ba = ext_mul(&s, &b, &a).unwrap();
        let comm = ext_mul(&s, &ab, &ext_inv(&s, &ba).unwrap()).unwrap();
        assert_eq!(comm, ExtElement { z: Coefficient::Int(vec![1]), g: GroupElem::Zk(vec![0, 0]) });
    }

    #[test]
    fn section_cocycle_recovers_sigma() {
        let s = Cocycle::matrix_circle_rational(&[
            vec![Rational::new(1, 4), Rational::new(2, 3)],
            vec![Rational::new(1, 5), Rational::new(0, 1)],
        ])
        .unwrap();
        let c = section_cocycle(&s);
        for m in lattice_box(2, 2) {
            for n in lattice_box(2, 2) {
                let (m, n) = (GroupElem::Zk(m.clone()), GroupElem::Zk(n));
                assert!(c.eval(&m, &n).unwrap().same_as(&s.eval(&m, &n).unwrap()));
            }
        }
    }

    #[test]
    fn section_cocycle_on_finite_group() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let b = |i: usize| Phase::from_ratio((i * i) as i64, 9);
        let vals = (0..3).map(|i| (0..3).map(|j| b(i) + b(j) - b((i + j) % 3)).collect()).collect();
        let s = Cocycle::table(g, vals).unwrap();
        let c = section_cocycle(&s);
        assert!(c.check(&CheckSample::Exhaustive).passed());
        assert!(matches!(c.group(), Group::Finite(_)));
    }
}
