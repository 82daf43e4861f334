use std::fmt;
use std::sync::Arc;

use super::GroupError;

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from `table[a][b] = a·b`, checking the group axioms
    /// exhaustively.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!("row {i} has length {}", row.len())));
            }
            if let Some(x) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::InvalidTable(format!("entry {x} out of range in row {i}")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| GroupError::InvalidTable("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| GroupError::InvalidTable(format!("element {g} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::InvalidTable(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, identity, inverses })
    }

    /// The cyclic group ℤ/n with `i·j = i+j mod n`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroup::new(table).expect("cyclic table is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

/// A group in which functors and cocycles take values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Group {
    /// The free abelian group ℤ^k.
    Zk(usize),
    Finite(Arc<FiniteGroup>),
}

/// An element of a [`Group`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElem {
    Zk(Vec<i64>),
    Finite(usize),
}

impl GroupElem {
    pub fn as_vector(&self) -> Option<&[i64]> {
        match self {
            GroupElem::Zk(v) => Some(v),
            GroupElem::Finite(_) => None,
        }
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElem::Zk(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            GroupElem::Finite(i) => write!(f, "g{i}"),
        }
    }
}

impl Group {
    pub fn finite(g: FiniteGroup) -> Self {
        Group::Finite(Arc::new(g))
    }

    pub fn identity(&self) -> GroupElem {
        match self {
            Group::Zk(k) => GroupElem::Zk(vec![0; *k]),
            Group::Finite(g) => GroupElem::Finite(g.identity()),
        }
    }

    pub fn contains(&self, x: &GroupElem) -> bool {
        match (self, x) {
            (Group::Zk(k), GroupElem::Zk(v)) => v.len() == *k,
            (Group::Finite(g), GroupElem::Finite(i)) => *i < g.order(),
            _ => false,
        }
    }

    pub fn check(&self, x: &GroupElem) -> Result<(), GroupError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(GroupError::NotInGroup { elem: x.to_string(), group: self.to_string() })
        }
    }

    pub fn mul(&self, a: &GroupElem, b: &GroupElem) -> Result<GroupElem, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (Group::Zk(_), GroupElem::Zk(x), GroupElem::Zk(y)) => {
                GroupElem::Zk(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (Group::Finite(g), GroupElem::Finite(x), GroupElem::Finite(y)) => {
                GroupElem::Finite(g.mul(*x, *y))
            }
            _ => unreachable!("membership checked above"),
        })
    }

    pub fn inv(&self, a: &GroupElem) -> Result<GroupElem, GroupError> {
        self.check(a)?;
        Ok(match (self, a) {
            (Group::Zk(_), GroupElem::Zk(x)) => GroupElem::Zk(x.iter().map(|p| -p).collect()),
            (Group::Finite(g), GroupElem::Finite(x)) => GroupElem::Finite(g.inv(*x)),
            _ => unreachable!("membership checked above"),
        })
    }

    pub fn is_identity(&self, a: &GroupElem) -> bool {
        *a == self.identity()
    }

    /// All elements, for finite groups only.
    pub fn elements(&self) -> Option<Vec<GroupElem>> {
        match self {
            Group::Zk(_) => None,
            Group::Finite(g) => Some((0..g.order()).map(GroupElem::Finite).collect()),
        }
    }

    /// All elements of ℤ^k with every coordinate in `[-radius, radius]`, or all
    /// elements of a finite group.
    pub fn box_elements(&self, radius: i64) -> Vec<GroupElem> {
        match self {
            Group::Finite(_) => self.elements().unwrap_or_default(),
            Group::Zk(k) => lattice_box(*k, radius).into_iter().map(GroupElem::Zk).collect(),
        }
    }

    pub fn commute(&self, a: &GroupElem, b: &GroupElem) -> Result<bool, GroupError> {
        Ok(self.mul(a, b)? == self.mul(b, a)?)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Zk(k) => write!(f, "Z^{k}"),
            Group::Finite(g) => write!(f, "finite group of order {}", g.order()),
        }
    }
}

/// Every integer vector of length `k` with coordinates in `[-radius, radius]`,
/// in lexicographic order.
pub fn lattice_box(k: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(k)];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * (2 * radius as usize + 1));
        for prefix in &out {
            for x in -radius..=radius {
                let mut v = prefix.clone();
                v.push(x);
                next.push(v);
            }
        }
        out = next;
    }
    out
}
