use std::fmt;
use std::sync::Arc;

use num::{Integer, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::extension::{ext_inv, ext_mul, ExtElement};
use super::group::{FiniteGroup, Group, GroupElem};
use super::GroupError;
use crate::phase::{reduce_mod_one, Phase, Rational};

/// Value group of a cocycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffGroup {
    Circle,
    /// ℤ^d, written additively.
    Int(usize),
}

/// A coefficient: a point of the circle or an integer vector.
#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Circle(Phase),
    Int(Vec<i64>),
}

impl Coefficient {
    pub fn identity(group: CoeffGroup) -> Self {
        match group {
            CoeffGroup::Circle => Coefficient::Circle(Phase::identity()),
            CoeffGroup::Int(d) => Coefficient::Int(vec![0; d]),
        }
    }

    pub fn group(&self) -> CoeffGroup {
        match self {
            Coefficient::Circle(_) => CoeffGroup::Circle,
            Coefficient::Int(v) => CoeffGroup::Int(v.len()),
        }
    }

    pub fn add(&self, other: &Coefficient) -> Result<Coefficient, GroupError> {
        match (self, other) {
            (Coefficient::Circle(a), Coefficient::Circle(b)) => Ok(Coefficient::Circle(*a + *b)),
            (Coefficient::Int(a), Coefficient::Int(b)) if a.len() == b.len() => {
                Ok(Coefficient::Int(a.iter().zip(b).map(|(x, y)| x + y).collect()))
            }
            _ => Err(GroupError::Coefficients(format!("cannot combine {self} and {other}"))),
        }
    }

    pub fn neg(&self) -> Coefficient {
        match self {
            Coefficient::Circle(a) => Coefficient::Circle(-*a),
            Coefficient::Int(a) => Coefficient::Int(a.iter().map(|x| -x).collect()),
        }
    }

    pub fn sub(&self, other: &Coefficient) -> Result<Coefficient, GroupError> {
        self.add(&other.neg())
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Coefficient::Circle(p) => p.is_identity(),
            Coefficient::Int(v) => v.iter().all(|x| *x == 0),
        }
    }

    /// Equality, exact for exact data and tolerant for float phases.
    pub fn same_as(&self, other: &Coefficient) -> bool {
        match (self, other) {
            (Coefficient::Circle(a), Coefficient::Circle(b)) => a.same_as(b),
            (Coefficient::Int(a), Coefficient::Int(b)) => a == b,
            _ => false,
        }
    }

    pub fn as_phase(&self) -> Option<Phase> {
        match self {
            Coefficient::Circle(p) => Some(*p),
            Coefficient::Int(_) => None,
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Circle(p) => write!(f, "e^(2πi·{p})"),
            Coefficient::Int(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

/// A function `b: G → 𝕋` used to move within a cohomology class.
#[derive(Clone)]
pub enum CoboundaryFn {
    /// `b(m) = e^{2πi mᵗQm}` on ℤ^k.
    Quadratic(Vec<Vec<Phase>>),
    /// Explicit values on a finite group, indexed like its table.
    Values(Vec<Phase>),
    Custom(Arc<dyn Fn(&GroupElem) -> Phase + Send + Sync>),
}

impl CoboundaryFn {
    pub fn eval(&self, g: &GroupElem) -> Result<Phase, GroupError> {
        match (self, g) {
            (CoboundaryFn::Quadratic(q), GroupElem::Zk(m)) => bilinear_phase(q, m, m),
            (CoboundaryFn::Values(vals), GroupElem::Finite(i)) => vals
                .get(*i)
                .copied()
                .ok_or(GroupError::DimensionMismatch { expected: vals.len(), found: *i + 1 }),
            (CoboundaryFn::Custom(f), g) => Ok(f(g)),
            _ => Err(GroupError::InvalidCocycle("coboundary does not match the group".into())),
        }
    }
}

impl fmt::Debug for CoboundaryFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoboundaryFn::Quadratic(q) => f.debug_tuple("Quadratic").field(q).finish(),
            CoboundaryFn::Values(v) => f.debug_tuple("Values").field(v).finish(),
            CoboundaryFn::Custom(_) => f.write_str("Custom(<fn>)"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum CocycleKind {
    Trivial(CoeffGroup),
    /// `σ_A(m,n) = e^{2πi mᵗAn}`; entries are kept mod 1.
    MatrixCircle(Vec<Vec<Phase>>),
    /// `τ(m,n) = (mᵗA₁n, …, mᵗA_dn) ∈ ℤ^d`.
    MatrixInt(Vec<Vec<Vec<i64>>>),
    /// Circle values on a finite group, `values[g][h] = σ(g,h)`.
    Table(Vec<Vec<Phase>>),
    /// `b(g)b(h)b(gh)⁻¹·base(g,h)`.
    Coboundary { base: Box<Cocycle>, b: CoboundaryFn },
    /// The cocycle `c(g)c(h)c(gh)⁻¹` of the canonical section `c(g) = (0,g)`
    /// of the central extension defined by `base`.
    Section(Box<Cocycle>),
}

/// A normalized 2-cocycle on a group.
#[derive(Clone, Debug)]
pub struct Cocycle {
    group: Group,
    kind: CocycleKind,
}

impl Cocycle {
    pub fn trivial(group: Group, coeff: CoeffGroup) -> Self {
        Cocycle { group, kind: CocycleKind::Trivial(coeff) }
    }

    /// `σ_A` from a square matrix of phases (entries taken mod 1).
    pub fn matrix_circle(entries: Vec<Vec<Phase>>) -> Result<Self, GroupError> {
        let k = entries.len();
        check_square(entries.iter().map(Vec::len), k)?;
        Ok(Cocycle { group: Group::Zk(k), kind: CocycleKind::MatrixCircle(entries) })
    }

    pub fn matrix_circle_rational(entries: &[Vec<Rational>]) -> Result<Self, GroupError> {
        Cocycle::matrix_circle(
            entries.iter().map(|row| row.iter().map(|q| Phase::exact(*q)).collect()).collect(),
        )
    }

    /// The k = 2 cocycle with `A = [[0, θ], [0, 0]]`.
    pub fn rotation(theta: Rational) -> Self {
        Cocycle::matrix_circle_rational(&[
            vec![Rational::zero(), theta],
            vec![Rational::zero(), Rational::zero()],
        ])
        .expect("2x2 matrix")
    }

    /// `τ_A(m,n) = mᵗAn` with values in ℤ.
    pub fn matrix_int(entries: Vec<Vec<i64>>) -> Result<Self, GroupError> {
        Cocycle::matrix_int_multi(vec![entries])
    }

    /// Integer cocycle with values in ℤ^d, one matrix per coordinate.
    pub fn matrix_int_multi(matrices: Vec<Vec<Vec<i64>>>) -> Result<Self, GroupError> {
        let k = matrices.first().map(Vec::len).unwrap_or(0);
        if matrices.is_empty() {
            return Err(GroupError::InvalidCocycle("no coefficient matrices".into()));
        }
        for m in &matrices {
            if m.len() != k {
                return Err(GroupError::DimensionMismatch { expected: k, found: m.len() });
            }
            check_square(m.iter().map(Vec::len), k)?;
        }
        Ok(Cocycle { group: Group::Zk(k), kind: CocycleKind::MatrixInt(matrices) })
    }

    /// A circle-valued cocycle on a finite group given by its value table.
    /// Only shapes are checked here; normalization and the cocycle identity
    /// are left to [`Cocycle::check`].
    pub fn table(group: Arc<FiniteGroup>, values: Vec<Vec<Phase>>) -> Result<Self, GroupError> {
        let n = group.order();
        if values.len() != n {
            return Err(GroupError::DimensionMismatch { expected: n, found: values.len() });
        }
        check_square(values.iter().map(Vec::len), n)?;
        Ok(Cocycle { group: Group::Finite(group), kind: CocycleKind::Table(values) })
    }

    pub(super) fn section(base: Cocycle) -> Cocycle {
        Cocycle { group: base.group.clone(), kind: CocycleKind::Section(Box::new(base)) }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn kind(&self) -> &CocycleKind {
        &self.kind
    }

    pub fn coeff_group(&self) -> CoeffGroup {
        match &self.kind {
            CocycleKind::Trivial(c) => *c,
            CocycleKind::MatrixCircle(_) | CocycleKind::Table(_) => CoeffGroup::Circle,
            CocycleKind::MatrixInt(ms) => CoeffGroup::Int(ms.len()),
            CocycleKind::Coboundary { .. } => CoeffGroup::Circle,
            CocycleKind::Section(base) => base.coeff_group(),
        }
    }

    /// `σ(g,h)`.
    pub fn eval(&self, g: &GroupElem, h: &GroupElem) -> Result<Coefficient, GroupError> {
        self.group.check(g)?;
        self.group.check(h)?;
        match &self.kind {
            CocycleKind::Trivial(c) => Ok(Coefficient::identity(*c)),
            CocycleKind::MatrixCircle(a) => {
                let (m, n) = (zk(g), zk(h));
                Ok(Coefficient::Circle(bilinear_phase(a, m, n)?))
            }
            CocycleKind::MatrixInt(ms) => {
                let (m, n) = (zk(g), zk(h));
                Ok(Coefficient::Int(ms.iter().map(|a| bilinear_int(a, m, n)).collect()))
            }
            CocycleKind::Table(values) => match (g, h) {
                (GroupElem::Finite(a), GroupElem::Finite(b)) => {
                    Ok(Coefficient::Circle(values[*a][*b]))
                }
                _ => unreachable!("membership checked above"),
            },
            CocycleKind::Coboundary { base, b } => {
                let gh = self.group.mul(g, h)?;
                let shift = b.eval(g)? + b.eval(h)? - b.eval(&gh)?;
                base.eval(g, h)?.add(&Coefficient::Circle(shift))
            }
            CocycleKind::Section(base) => {
                let cg = ExtElement::section(base, g.clone());
                let ch = ExtElement::section(base, h.clone());
                let gh = self.group.mul(g, h)?;
                let cgh_inv = ext_inv(base, &ExtElement::section(base, gh))?;
                let prod = ext_mul(base, &ext_mul(base, &cg, &ch)?, &cgh_inv)?;
                if !self.group.is_identity(&prod.g) {
                    return Err(GroupError::InvalidCocycle(
                        "section product does not lie in the centre".into(),
                    ));
                }
                Ok(prod.z)
            }
        }
    }

    /// `σ(g,h)` as a phase; errors for integer-valued cocycles.
    pub fn eval_phase(&self, g: &GroupElem, h: &GroupElem) -> Result<Phase, GroupError> {
        self.eval(g, h)?
            .as_phase()
            .ok_or_else(|| GroupError::Coefficients("cocycle is not circle-valued".into()))
    }

    /// True when every value is an exact rational phase (or an integer).
    pub fn is_exact(&self) -> bool {
        match &self.kind {
            CocycleKind::Trivial(_) | CocycleKind::MatrixInt(_) => true,
            CocycleKind::MatrixCircle(a) | CocycleKind::Table(a) => {
                a.iter().flatten().all(Phase::is_exact)
            }
            CocycleKind::Coboundary { base, b } => {
                base.is_exact()
                    && match b {
                        CoboundaryFn::Quadratic(q) => q.iter().flatten().all(Phase::is_exact),
                        CoboundaryFn::Values(v) => v.iter().all(Phase::is_exact),
                        CoboundaryFn::Custom(_) => true,
                    }
            }
            CocycleKind::Section(base) => base.is_exact(),
        }
    }

    /// Least common multiple of the denominators of the stored exact phases;
    /// every value of the cocycle is then a power of `e^{2πi/N}`.
    pub fn conductor(&self) -> i64 {
        fn absorb<'a>(n: i64, phases: impl Iterator<Item = &'a Phase>) -> i64 {
            phases.filter_map(Phase::denominator).fold(n, |acc, d| acc.lcm(&d))
        }
        match &self.kind {
            CocycleKind::MatrixCircle(a) | CocycleKind::Table(a) => absorb(1, a.iter().flatten()),
            CocycleKind::Coboundary { base, b } => {
                let n = base.conductor();
                match b {
                    CoboundaryFn::Quadratic(q) => absorb(n, q.iter().flatten()),
                    CoboundaryFn::Values(v) => absorb(n, v.iter()),
                    CoboundaryFn::Custom(_) => n,
                }
            }
            CocycleKind::Section(base) => base.conductor(),
            CocycleKind::Trivial(_) | CocycleKind::MatrixInt(_) => 1,
        }
    }

    /// Checks normalization, the cocycle identity and `σ(g,g⁻¹) = σ(g⁻¹,g)`.
    pub fn check(&self, sample: &CheckSample) -> CocycleReport {
        let mut report = CocycleReport::default();
        let singles: Vec<GroupElem>;
        let triples: Vec<(GroupElem, GroupElem, GroupElem)> = match sample {
            CheckSample::Exhaustive => match self.group.elements() {
                Some(els) => {
                    singles = els.clone();
                    let mut t = Vec::with_capacity(els.len().pow(3));
                    for a in &els {
                        for b in &els {
                            for c in &els {
                                t.push((a.clone(), b.clone(), c.clone()));
                            }
                        }
                    }
                    t
                }
                None => {
                    report.errors.push("exhaustive check requested for an infinite group".into());
                    return report;
                }
            },
            CheckSample::Triples(t) => {
                singles = t.iter().map(|(a, _, _)| a.clone()).collect();
                t.clone()
            }
        };
        let e = self.group.identity();
        for g in &singles {
            let ok = self.eval(&e, g).map(|c| c.is_identity()).unwrap_or(false)
                && self.eval(g, &e).map(|c| c.is_identity()).unwrap_or(false);
            if !ok {
                report.normalization_violations.push(g.clone());
            }
            let sym = self.group.inv(g).and_then(|gi| {
                Ok(self.eval(g, &gi)?.same_as(&self.eval(&gi, g)?))
            });
            if sym != Ok(true) {
                report.inverse_violations.push(g.clone());
            }
        }
        for (g, h, k) in triples {
            report.checked += 1;
            match self.identity_holds(&g, &h, &k) {
                Ok(true) => {}
                Ok(false) => report.identity_violations.push((g, h, k)),
                Err(err) => report.errors.push(err.to_string()),
            }
        }
        report
    }

    fn identity_holds(&self, g: &GroupElem, h: &GroupElem, k: &GroupElem) -> Result<bool, GroupError> {
        let gh = self.group.mul(g, h)?;
        let hk = self.group.mul(h, k)?;
        let lhs = self.eval(g, h)?.add(&self.eval(&gh, k)?)?;
        let rhs = self.eval(g, &hk)?.add(&self.eval(h, k)?)?;
        Ok(lhs.same_as(&rhs))
    }

    /// `σ′(g,h) = b(g)b(h)b(gh)⁻¹σ(g,h)`.
    pub fn apply_coboundary(&self, b: CoboundaryFn) -> Result<Cocycle, GroupError> {
        if self.coeff_group() != CoeffGroup::Circle {
            return Err(GroupError::Coefficients("coboundaries act on circle-valued cocycles".into()));
        }
        let at_e = b.eval(&self.group.identity())?;
        if !at_e.is_identity() {
            return Err(GroupError::CoboundaryNotNormalized(at_e.to_string()));
        }
        Ok(Cocycle {
            group: self.group.clone(),
            kind: CocycleKind::Coboundary { base: Box::new(self.clone()), b },
        })
    }

    /// `σ(g,h)·σ(h,g)⁻¹` for commuting `g`, `h`.
    pub fn commutation_phase(&self, g: &GroupElem, h: &GroupElem) -> Result<Coefficient, GroupError> {
        if !self.group.commute(g, h)? {
            return Err(GroupError::NonCommuting(g.to_string(), h.to_string()));
        }
        self.eval(g, h)?.sub(&self.eval(h, g)?)
    }

    /// The pointwise composite with a character of ℤ^d: for `τ = (τ_A₁,…)`
    /// and `γ(z) = e^{2πi θ·z}` this is `σ_{Σθᵢ Aᵢ}`.
    pub fn compose_character(&self, theta: &[Phase]) -> Result<Cocycle, GroupError> {
        match &self.kind {
            CocycleKind::MatrixInt(ms) => {
                if ms.len() != theta.len() {
                    return Err(GroupError::DimensionMismatch { expected: ms.len(), found: theta.len() });
                }
                let k = ms[0].len();
                let mut entries = vec![vec![Phase::identity(); k]; k];
                for (a, t) in ms.iter().zip(theta) {
                    for i in 0..k {
                        for j in 0..k {
                            entries[i][j] = entries[i][j] + t.scale(a[i][j]);
                        }
                    }
                }
                Cocycle::matrix_circle(entries)
            }
            CocycleKind::Trivial(CoeffGroup::Int(d)) => {
                if *d != theta.len() {
                    return Err(GroupError::DimensionMismatch { expected: *d, found: theta.len() });
                }
                Ok(Cocycle::trivial(self.group.clone(), CoeffGroup::Circle))
            }
            _ => Err(GroupError::Coefficients(
                "characters compose with integer matrix cocycles only".into(),
            )),
        }
    }
}

fn zk(g: &GroupElem) -> &[i64] {
    match g {
        GroupElem::Zk(v) => v,
        GroupElem::Finite(_) => &[],
    }
}

fn check_square(rows: impl Iterator<Item = usize>, k: usize) -> Result<(), GroupError> {
    for len in rows {
        if len != k {
            return Err(GroupError::DimensionMismatch { expected: k, found: len });
        }
    }
    Ok(())
}

fn bilinear_phase(a: &[Vec<Phase>], m: &[i64], n: &[i64]) -> Result<Phase, GroupError> {
    if m.len() != a.len() || n.len() != a.len() {
        return Err(GroupError::DimensionMismatch { expected: a.len(), found: m.len().max(n.len()) });
    }
    let mut acc = Phase::identity();
    for (i, mi) in m.iter().enumerate() {
        if *mi == 0 {
            continue;
        }
        for (j, nj) in n.iter().enumerate() {
            if *nj != 0 {
                acc = acc + a[i][j].scale(mi * nj);
            }
        }
    }
    Ok(acc)
}

fn bilinear_int(a: &[Vec<i64>], m: &[i64], n: &[i64]) -> i64 {
    let mut acc = 0;
    for (i, mi) in m.iter().enumerate() {
        for (j, nj) in n.iter().enumerate() {
            acc += mi * a[i][j] * nj;
        }
    }
    acc
}

/// Which triples [`Cocycle::check`] inspects.
#[derive(Clone, Debug)]
pub enum CheckSample {
    /// All triples of a finite group.
    Exhaustive,
    Triples(Vec<(GroupElem, GroupElem, GroupElem)>),
}

/// Seeded random triples from the box `[-radius, radius]^k` (or uniformly
/// from a finite group).
pub fn sample_triples(group: &Group, count: usize, radius: i64, seed: u64) -> CheckSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| match group {
        Group::Zk(k) => GroupElem::Zk((0..*k).map(|_| rng.random_range(-radius..=radius)).collect()),
        Group::Finite(g) => GroupElem::Finite(rng.random_range(0..g.order())),
    };
    let triples = (0..count)
        .map(|_| (draw(&mut rng), draw(&mut rng), draw(&mut rng)))
        .collect();
    CheckSample::Triples(triples)
}

#[derive(Clone, Debug, Default)]
pub struct CocycleReport {
    pub checked: usize,
    pub identity_violations: Vec<(GroupElem, GroupElem, GroupElem)>,
    pub normalization_violations: Vec<GroupElem>,
    pub inverse_violations: Vec<GroupElem>,
    pub errors: Vec<String>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.identity_violations.is_empty()
            && self.normalization_violations.is_empty()
            && self.inverse_violations.is_empty()
            && self.errors.is_empty()
    }
}

impl fmt::Display for CocycleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "cocycle check passed ({} triples)", self.checked);
        }
        writeln!(f, "cocycle check FAILED ({} triples)", self.checked)?;
        for (g, h, k) in self.identity_violations.iter().take(10) {
            writeln!(f, "  cocycle identity fails at ({g}, {h}, {k})")?;
        }
        for g in &self.normalization_violations {
            writeln!(f, "  not normalized at {g}")?;
        }
        for g in &self.inverse_violations {
            writeln!(f, "  σ(g,g⁻¹) ≠ σ(g⁻¹,g) at g = {g}")?;
        }
        for e in &self.errors {
            writeln!(f, "  error: {e}")?;
        }
        Ok(())
    }
}

/// Strictly upper triangular representative `U` with
/// `U_ij = (A_ij − A_ji) mod 1` for `i < j`. Two matrices give cohomologous
/// cocycles exactly when their normal forms agree.
pub fn class_normal_form(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let k = a.len();
    let mut u = vec![vec![Rational::zero(); k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            u[i][j] = reduce_mod_one(a[i][j] - a[j][i]);
        }
    }
    u
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkewVerdict {
    TotallySkew,
    /// A nonzero `m` with `σ_A(m,n) = σ_A(n,m)` for every `n`.
    NotTotallySkew { witness: Vec<i64> },
}

/// Decides whether `σ_A` is totally skew. `m` is symmetric against all of
/// ℤ^k exactly when `mᵗ(A − Aᵗ)` is an integer vector, so the search runs over
/// the box `[0, D]^k` with `D` the common denominator, ordered by ℓ¹ size and
/// then by descending lexicographic order.
pub fn totally_skew_check(a: &[Vec<Rational>]) -> SkewVerdict {
    let k = a.len();
    if k == 0 {
        return SkewVerdict::TotallySkew;
    }
    let skew: Vec<Vec<Rational>> =
        (0..k).map(|i| (0..k).map(|j| a[i][j] - a[j][i]).collect()).collect();
    let denom = skew.iter().flatten().fold(1i64, |acc, q| acc.lcm(q.denom()));
    let is_central = |m: &[i64]| {
        (0..k).all(|j| {
            let s: Rational = (0..k).map(|i| skew[i][j] * m[i]).sum();
            s.is_integer()
        })
    };
    let mut candidates: Vec<Vec<i64>> = super::group::lattice_box(k, denom)
        .into_iter()
        .filter(|m| m.iter().all(|x| *x >= 0) && m.iter().any(|x| *x != 0))
        .collect();
    candidates.sort_by(|x, y| {
        let sx: i64 = x.iter().sum();
        let sy: i64 = y.iter().sum();
        sx.cmp(&sy).then_with(|| y.cmp(x))
    });
    match candidates.into_iter().find(|m| is_central(m)) {
        Some(witness) => SkewVerdict::NotTotallySkew { witness },
        None => SkewVerdict::TotallySkew,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn v(x: &[i64]) -> GroupElem {
        GroupElem::Zk(x.to_vec())
    }

    #[test]
    fn matrix_circle_eval() {
        let s = Cocycle::rotation(q(1, 3));
        assert_eq!(s.eval_phase(&v(&[1, 0]), &v(&[0, 1])).unwrap(), Phase::from_ratio(1, 3));
        assert!(s.eval_phase(&v(&[0, 1]), &v(&[1, 0])).unwrap().is_identity());
        assert!(s.eval_phase(&v(&[0, 0]), &v(&[5, 7])).unwrap().is_identity());
        assert!(matches!(
            s.eval(&v(&[1, 0, 0]), &v(&[0, 1])),
            Err(GroupError::NotInGroup { .. })
        ));
    }

    #[test]
    fn matrix_int_eval() {
        let t = Cocycle::matrix_int(vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(t.eval(&v(&[2, 0]), &v(&[0, 3])).unwrap(), Coefficient::Int(vec![6]));
        assert_eq!(t.eval(&v(&[0, 3]), &v(&[2, 0])).unwrap(), Coefficient::Int(vec![0]));
    }

    #[test]
    fn matrix_cocycles_pass_sampled_check() {
        let s = Cocycle::matrix_circle_rational(&[
            vec![q(1, 5), q(2, 7), q(-1, 3)],
            vec![q(3, 4), q(0, 1), q(1, 2)],
            vec![q(1, 9), q(5, 6), q(2, 3)],
        ])
        .unwrap();
        let sample = sample_triples(s.group(), 100, 6, 7);
        let report = s.check(&sample);
        assert!(report.passed(), "{report}");
        assert_eq!(report.checked, 100);
    }

    /// A valid table cocycle on ℤ/4: the coboundary of `b(i) = e^{2πi i²/8}`.
    fn z4_table() -> (Arc<FiniteGroup>, Vec<Vec<Phase>>) {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let b = |i: usize| Phase::from_ratio((i * i) as i64, 8);
        let values = (0..4)
            .map(|i| (0..4).map(|j| b(i) + b(j) - b((i + j) % 4)).collect())
            .collect();
        (g, values)
    }

    #[test]
    fn corrupted_table_is_caught_by_brute_force() {
        let (g, mut values) = z4_table();
        let good = Cocycle::table(g.clone(), values.clone()).unwrap();
        assert!(good.check(&CheckSample::Exhaustive).passed());

        values[1][2] = values[1][2] + Phase::from_ratio(1, 3);
        let bad = Cocycle::table(g, values).unwrap();
        let report = bad.check(&CheckSample::Exhaustive);
        assert!(!report.passed());
        // every violating triple must involve the corrupted entry
        let corrupted = (GroupElem::Finite(1), GroupElem::Finite(2));
        for (a, b, c) in &report.identity_violations {
            let grp = bad.group();
            let ab = grp.mul(a, b).unwrap();
            let bc = grp.mul(b, c).unwrap();
            let touched = [(a.clone(), b.clone()), (ab, c.clone()), (a.clone(), bc), (b.clone(), c.clone())];
            assert!(touched.contains(&corrupted));
        }
    }

    #[test]
    fn trivial_cocycle_passes() {
        let t = Cocycle::trivial(Group::finite(FiniteGroup::cyclic(3)), CoeffGroup::Circle);
        assert!(t.check(&CheckSample::Exhaustive).passed());
    }

    #[test]
    fn coboundary_with_trivial_function_is_unchanged() {
        let s = Cocycle::rotation(q(2, 5));
        let id = s
            .apply_coboundary(CoboundaryFn::Custom(Arc::new(|_| Phase::identity())))
            .unwrap();
        for m in super::super::lattice_box(2, 2) {
            for n in super::super::lattice_box(2, 2) {
                assert_eq!(s.eval(&v(&m), &v(&n)).unwrap(), id.eval(&v(&m), &v(&n)).unwrap());
            }
        }
    }

    #[test]
    fn coboundary_must_be_normalized() {
        let s = Cocycle::rotation(q(1, 3));
        let err = s
            .apply_coboundary(CoboundaryFn::Custom(Arc::new(|_| Phase::from_ratio(1, 2))))
            .unwrap_err();
        assert!(matches!(err, GroupError::CoboundaryNotNormalized(_)));
    }

    #[test]
    fn quadratic_coboundary_of_trivial_cocycle() {
        // b(m) = e^{2πi mᵗQm}; the resulting cocycle is symmetric, so all
        // commutation phases vanish. Values checked on a grid against the
        // defining formula.
        let qm = vec![
            vec![Phase::from_ratio(1, 3), Phase::from_ratio(1, 4)],
            vec![Phase::identity(), Phase::from_ratio(1, 6)],
        ];
        let t = Cocycle::trivial(Group::Zk(2), CoeffGroup::Circle);
        let s = t.apply_coboundary(CoboundaryFn::Quadratic(qm.clone())).unwrap();
        let b = |m: &[i64]| bilinear_phase(&qm, m, m).unwrap();
        for m in super::super::lattice_box(2, 2) {
            for n in super::super::lattice_box(2, 2) {
                let sum: Vec<i64> = m.iter().zip(&n).map(|(x, y)| x + y).collect();
                let expected = b(&m) + b(&n) - b(&sum);
                assert_eq!(s.eval_phase(&v(&m), &v(&n)).unwrap(), expected);
                assert!(s.commutation_phase(&v(&m), &v(&n)).unwrap().is_identity());
            }
        }
        assert!(s.check(&sample_triples(s.group(), 50, 4, 1)).passed());
    }

    #[test]
    fn commutation_phase_examples() {
        let s = Cocycle::rotation(q(2, 7));
        assert_eq!(
            s.commutation_phase(&v(&[1, 0]), &v(&[0, 1])).unwrap(),
            Coefficient::Circle(Phase::from_ratio(2, 7))
        );
        assert!(s.commutation_phase(&v(&[3, 1]), &v(&[3, 1])).unwrap().is_identity());
    }

    #[test]
    fn commutation_phase_rejects_noncommuting() {
        // S3 as permutations of {0,1,2}; table built by composition.
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|x| *x == p).unwrap();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        let g = Group::finite(FiniteGroup::new(table).unwrap());
        let t = Cocycle::trivial(g, CoeffGroup::Circle);
        assert!(matches!(
            t.commutation_phase(&GroupElem::Finite(1), &GroupElem::Finite(2)),
            Err(GroupError::NonCommuting(..))
        ));
    }

    #[test]
    fn normal_form_examples() {
        let z = Rational::zero();
        let upper = vec![vec![z, q(1, 3)], vec![z, z]];
        assert_eq!(class_normal_form(&upper), upper);
        let anti = vec![vec![z, q(2, 5)], vec![q(-2, 5), z]];
        assert_eq!(class_normal_form(&anti), vec![vec![z, q(4, 5)], vec![z, z]]);
        let sym = vec![vec![q(1, 2), q(1, 7)], vec![q(1, 7), q(3, 4)]];
        assert_eq!(class_normal_form(&sym), vec![vec![z, z], vec![z, z]]);
    }

    #[test]
    fn totally_skew_examples() {
        let z = Rational::zero();
        assert_eq!(
            totally_skew_check(&[vec![z, q(1, 2)], vec![z, z]]),
            SkewVerdict::NotTotallySkew { witness: vec![2, 0] }
        );
        assert_eq!(
            totally_skew_check(&[vec![z, q(1, 3)], vec![z, z]]),
            SkewVerdict::NotTotallySkew { witness: vec![3, 0] }
        );
        assert_eq!(
            totally_skew_check(&[vec![z, z, z], vec![z, z, z], vec![z, z, z]]),
            SkewVerdict::NotTotallySkew { witness: vec![1, 0, 0] }
        );
    }

    #[test]
    fn compose_character_scales_matrix() {
        let t = Cocycle::matrix_int(vec![vec![0, 1], vec![0, 0]]).unwrap();
        let s = t.compose_character(&[Phase::from_ratio(1, 3)]).unwrap();
        assert_eq!(s.eval_phase(&v(&[2, 0]), &v(&[0, 1])).unwrap(), Phase::from_ratio(2, 3));
        let triv = t.compose_character(&[Phase::identity()]).unwrap();
        assert!(triv.eval_phase(&v(&[4, 1]), &v(&[3, 5])).unwrap().is_identity());
    }
}
