//! Finite groups stored as full multiplication tables.
//!
//! Element `0` is always the identity.

mod constructors;
pub mod iso;
pub mod lattice;

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

pub use lattice::{ConjugacyClass, LevelClasses, Subgroup, SubgroupId, SubgroupLattice};

pub const DEFAULT_ORDER_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("multiplication table is not associative: ({0}*{1})*{2} differs from {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("multiplication table has no two-sided identity")]
    NoIdentity,
    #[error("multiplication table is not a group: {0}")]
    NotClosed(String),
    #[error("group order {order} exceeds the cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid constructor arguments: {0}")]
    BadArguments(String),
    #[error("subgroup is not normal")]
    NotNormal,
}

#[derive(Clone)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.order)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

fn check_cap(order: usize, cap: usize) -> Result<(), GroupError> {
    if order > cap {
        Err(GroupError::OrderCapExceeded { order, cap })
    } else {
        Ok(())
    }
}

impl FiniteGroup {
    /// Validates a Cayley table. If the identity is not element `0` the labels are
    /// permuted so that it becomes `0`.
    pub fn from_table(label: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        Self::from_table_capped(label, table, DEFAULT_ORDER_CAP)
    }

    pub fn from_table_capped(
        label: impl Into<String>,
        table: Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        let n = table.len();
        check_cap(n, cap)?;
        if n == 0 {
            return Err(GroupError::NotClosed("empty table".into()));
        }
        for row in &table {
            if row.len() != n {
                return Err(GroupError::NotClosed("table is not square".into()));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::NotClosed(format!("entry {x} out of range")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(0, identity);
        // perm maps old label -> new label and is an involution
        let mut flat = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[perm[a] * n + perm[b]] = perm[table[a][b]];
            }
        }
        Self::from_flat(label.into(), n, flat)
    }

    fn from_flat(label: String, n: usize, table: Vec<usize>) -> Result<Self, GroupError> {
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let c = table[a * n + b];
                if seen[c] {
                    return Err(GroupError::NotClosed(format!("row {a} repeats {c}")));
                }
                seen[c] = true;
                if c == 0 {
                    inverses[a] = b;
                }
            }
        }
        for a in 0..n {
            if table[inverses[a] * n + a] != 0 {
                return Err(GroupError::NotClosed(format!("element {a} has no two-sided inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(Self { label, order: n, table, inverses })
    }

    /// Trusted constructor for tables produced by this crate.
    fn from_flat_unchecked(label: String, n: usize, table: Vec<usize>) -> Self {
        let mut inverses = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inverses[a] = b;
                }
            }
        }
        Self { label, order: n, table, inverses }
    }

    /// Closure of permutations of `0..degree`; the product `gh` applies `h` first.
    pub fn from_permutations(
        label: impl Into<String>,
        generators: &[Vec<usize>],
        degree: usize,
    ) -> Result<Self, GroupError> {
        Self::from_permutations_capped(label, generators, degree, DEFAULT_ORDER_CAP)
    }

    pub fn from_permutations_capped(
        label: impl Into<String>,
        generators: &[Vec<usize>],
        degree: usize,
        cap: usize,
    ) -> Result<Self, GroupError> {
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(GroupError::BadArguments(format!("permutation has length {}", g.len())));
            }
            for &x in g {
                if x >= degree || std::mem::replace(&mut seen[x], true) {
                    return Err(GroupError::BadArguments("not a permutation".into()));
                }
            }
        }
        let compose = |g: &[usize], h: &[usize]| -> Vec<usize> { h.iter().map(|&x| g[x]).collect() };
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let next = compose(&elements[i], g);
                if !index.contains_key(&next) {
                    check_cap(elements.len() + 1, cap)?;
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&compose(&elements[a], &elements[b])];
            }
        }
        Ok(Self::from_flat_unchecked(label.into(), n, table))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|g| self.element_order(g) == self.order)
    }

    /// Sorted elements of the subgroup generated by `generators`.
    pub fn generate(&self, generators: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in generators {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Row-per-element Cayley table.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// The group on `elements` (sorted, containing `0`), with the inclusion map.
    pub fn subgroup_group(&self, elements: &[usize], label: impl Into<String>) -> (FiniteGroup, Vec<usize>) {
        let position: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let n = elements.len();
        let mut table = vec![0; n * n];
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                table[i * n + j] = position[&self.mul(a, b)];
            }
        }
        (Self::from_flat_unchecked(label.into(), n, table), elements.to_vec())
    }

    /// `G/N` for a normal subgroup, with the projection `G -> G/N`.
    ///
    /// Cosets are numbered by their smallest element, so the identity coset is `0`.
    pub fn quotient(&self, normal: &[usize], label: impl Into<String>) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        let mut member = vec![false; self.order];
        for &x in normal {
            member[x] = true;
        }
        for g in 0..self.order {
            if normal.iter().any(|&x| !member[self.conj(g, x)]) {
                return Err(GroupError::NotNormal);
            }
        }
        let mut coset = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset[g] == usize::MAX {
                for &x in normal {
                    coset[self.mul(g, x)] = reps.len();
                }
                reps.push(g);
            }
        }
        let m = reps.len();
        let mut table = vec![0; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * m + j] = coset[self.mul(a, b)];
            }
        }
        Ok((Self::from_flat_unchecked(label.into(), m, table), coset))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_validation() {
        let c2 = vec![vec![0, 1], vec![1, 0]];
        assert!(FiniteGroup::from_table("C2", c2).is_ok());
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(FiniteGroup::from_table("x", bad), Err(GroupError::NotClosed(_))));
        let no_id = vec![vec![1, 0], vec![1, 0]];
        assert!(FiniteGroup::from_table("x", no_id).is_err());
        // identity listed second gets relabelled
        let swapped = vec![vec![1, 0], vec![0, 1]];
        let g = FiniteGroup::from_table("C2", swapped).unwrap();
        assert_eq!(g.mul(0, 1), 1);
    }

    #[test]
    fn nonassociative_rejected() {
        // a latin square with identity 0 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table("loop", t), Err(GroupError::NotAssociative(..))));
    }

    #[test]
    fn cap_is_enforced() {
        let err = FiniteGroup::symmetric_capped(6, 100).unwrap_err();
        assert_eq!(err, GroupError::OrderCapExceeded { order: 101, cap: 100 });
        assert!(matches!(FiniteGroup::cyclic(513), Err(GroupError::OrderCapExceeded { .. })));
    }

    #[test]
    fn quotient_and_subgroup() {
        let d6 = FiniteGroup::dihedral(6).unwrap();
        let rotations = d6.generate(&[1]);
        assert_eq!(rotations.len(), 3);
        let (q, proj) = d6.quotient(&rotations, "C2").unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj[0], 0);
        let (sub, incl) = d6.subgroup_group(&rotations, "C3");
        assert!(sub.is_cyclic());
        assert_eq!(incl, rotations);
        let reflection = d6.generate(&[3]);
        assert_eq!(d6.quotient(&reflection, "x").unwrap_err(), GroupError::NotNormal);
    }
}
