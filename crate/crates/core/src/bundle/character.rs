use std::fmt;

use crate::phase::{Phase, Rational};

/// The character `γ(z) = e^{2πi θ·z}` of ℤ^d.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    theta: Vec<Phase>,
}

impl Character {
    pub fn new(theta: Vec<Phase>) -> Self {
        Character { theta }
    }

    pub fn rational(theta: &[Rational]) -> Self {
        Character::new(theta.iter().map(|q| Phase::exact(*q)).collect())
    }

    pub fn trivial(d: usize) -> Self {
        Character::new(vec![Phase::identity(); d])
    }

    pub fn dim(&self) -> usize {
        self.theta.len()
    }

    pub fn angles(&self) -> &[Phase] {
        &self.theta
    }

    pub fn is_exact(&self) -> bool {
        self.theta.iter().all(Phase::is_exact)
    }

    /// `γ(z)` as a phase. Panics on a length mismatch.
    pub fn eval(&self, z: &[i64]) -> Phase {
        assert_eq!(z.len(), self.theta.len(), "character dimension");
        self.theta.iter().zip(z).map(|(t, n)| t.scale(*n)).sum()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.theta.iter().map(|p| p.to_string()).collect();
        write!(f, "γ[{}]", parts.join(", "))
    }
}
