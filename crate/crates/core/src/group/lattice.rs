//! Subgroup lattices with conjugacy data.
//!
//! Subgroups are numbered in canonical order: by order, then by sorted element list.
//! A conjugacy class is represented by its member with the smallest number.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::FiniteGroup;

pub type SubgroupId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
    mask: Vec<u64>,
}

fn mask_of(group_order: usize, elements: &[usize]) -> Vec<u64> {
    let mut mask = vec![0u64; group_order.div_ceil(64)];
    for &x in elements {
        mask[x / 64] |= 1 << (x % 64);
    }
    mask
}

impl Subgroup {
    /// Wraps a sorted element list that is known to be a subgroup.
    pub fn from_sorted(group_order: usize, elements: Vec<usize>) -> Self {
        let mask = mask_of(group_order, &elements);
        Self { elements, mask }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        self.mask[g / 64] >> (g % 64) & 1 == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.mask.iter().zip(&other.mask).all(|(a, b)| a & !b == 0)
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub members: Vec<SubgroupId>,
}

impl ConjugacyClass {
    pub fn rep(&self) -> SubgroupId {
        self.members[0]
    }
}

/// Subgroups of a level `L` up to `L`-conjugacy.
#[derive(Clone, Debug)]
pub struct LevelClasses {
    pub level: SubgroupId,
    /// All subgroups of `L`, as lattice ids.
    pub members: Vec<SubgroupId>,
    /// Classes in canonical order; the first member of each is its representative.
    pub classes: Vec<Vec<SubgroupId>>,
    class_of: HashMap<SubgroupId, usize>,
    /// `|N_L(K)| / |K|` for each class.
    pub weyl: Vec<usize>,
}

impl LevelClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn rep(&self, class: usize) -> SubgroupId {
        self.classes[class][0]
    }

    pub fn reps(&self) -> Vec<SubgroupId> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    /// Class index of a subgroup of `L`.
    pub fn class_index(&self, id: SubgroupId) -> usize {
        *self.class_of.get(&id).unwrap_or_else(|| panic!("subgroup {id} is not inside level {}", self.level))
    }

    pub fn try_class_index(&self, id: SubgroupId) -> Option<usize> {
        self.class_of.get(&id).copied()
    }
}

#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Subgroup>,
    lookup: HashMap<Vec<u64>, SubgroupId>,
    class_of: Vec<usize>,
    classes: Vec<ConjugacyClass>,
    normalizer: Vec<SubgroupId>,
    subconjugate: Vec<Vec<bool>>,
}

impl SubgroupLattice {
    pub fn new(group: &FiniteGroup) -> Self {
        Self::from_arc(Arc::new(group.clone()))
    }

    pub fn from_arc(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let mut found: HashMap<Vec<u64>, (Vec<usize>, Vec<usize>)> = HashMap::new();
        let mut cyclic: Vec<(usize, Vec<u64>)> = Vec::new();
        for g in 0..n {
            let elems = group.generate(&[g]);
            let mask = mask_of(n, &elems);
            if !found.contains_key(&mask) {
                cyclic.push((g, mask.clone()));
                found.insert(mask, (elems, vec![g]));
            }
        }
        let mut queue: VecDeque<Vec<u64>> = found.keys().cloned().collect();
        while let Some(key) = queue.pop_front() {
            let gens = found[&key].1.clone();
            for (g, cmask) in &cyclic {
                if cmask.iter().zip(&key).all(|(a, b)| a & !b == 0) {
                    continue;
                }
                let mut new_gens = gens.clone();
                new_gens.push(*g);
                let elems = group.generate(&new_gens);
                let mask = mask_of(n, &elems);
                if !found.contains_key(&mask) {
                    queue.push_back(mask.clone());
                    found.insert(mask, (elems, new_gens));
                }
            }
        }
        let mut subgroups: Vec<Subgroup> =
            found.into_values().map(|(elems, _)| Subgroup::from_sorted(n, elems)).collect();
        subgroups.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        let lookup: HashMap<Vec<u64>, SubgroupId> =
            subgroups.iter().enumerate().map(|(i, s)| (s.mask.clone(), i)).collect();

        let count = subgroups.len();
        let mut class_of = vec![usize::MAX; count];
        let mut classes = Vec::new();
        let mut normalizer = vec![0; count];
        for id in 0..count {
            let mut norm = Vec::new();
            let mut conjugates = Vec::new();
            for g in 0..n {
                let mut image: Vec<usize> = subgroups[id].elements.iter().map(|&x| group.conj(g, x)).collect();
                image.sort_unstable();
                let j = lookup[&mask_of(n, &image)];
                if j == id {
                    norm.push(g);
                }
                conjugates.push(j);
            }
            normalizer[id] = lookup[&mask_of(n, &norm)];
            if class_of[id] == usize::MAX {
                conjugates.sort_unstable();
                conjugates.dedup();
                for &j in &conjugates {
                    class_of[j] = classes.len();
                }
                classes.push(ConjugacyClass { members: conjugates });
            }
        }
        let k = classes.len();
        let mut subconjugate = vec![vec![false; k]; k];
        for a in 0..k {
            let rep = &subgroups[classes[a].rep()];
            for b in 0..k {
                subconjugate[a][b] = classes[b].members.iter().any(|&m| rep.is_subset_of(&subgroups[m]));
            }
        }
        Self { group, subgroups, lookup, class_of, classes, normalizer, subconjugate }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<FiniteGroup> {
        self.group.clone()
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, id: SubgroupId) -> &Subgroup {
        &self.subgroups[id]
    }

    pub fn order_of(&self, id: SubgroupId) -> usize {
        self.subgroups[id].order()
    }

    pub fn trivial(&self) -> SubgroupId {
        0
    }

    pub fn whole(&self) -> SubgroupId {
        self.subgroups.len() - 1
    }

    /// Id of the subgroup with exactly these elements.
    pub fn find(&self, elements: &[usize]) -> Option<SubgroupId> {
        if elements.iter().any(|&x| x >= self.group.order()) {
            return None;
        }
        self.lookup.get(&mask_of(self.group.order(), elements)).copied()
    }

    /// Id of the subgroup generated by `generators`.
    pub fn generated(&self, generators: &[usize]) -> SubgroupId {
        self.find(&self.group.generate(generators)).expect("every subgroup is enumerated")
    }

    pub fn from_mask_of(&self, predicate: impl Fn(usize) -> bool) -> Option<SubgroupId> {
        let elems: Vec<usize> = (0..self.group.order()).filter(|&g| predicate(g)).collect();
        self.find(&elems)
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, id: SubgroupId) -> usize {
        self.class_of[id]
    }

    pub fn class_rep(&self, class: usize) -> SubgroupId {
        self.classes[class].rep()
    }

    pub fn class_reps(&self) -> Vec<SubgroupId> {
        self.classes.iter().map(|c| c.rep()).collect()
    }

    pub fn normalizer(&self, id: SubgroupId) -> SubgroupId {
        self.normalizer[id]
    }

    pub fn weyl_order(&self, id: SubgroupId) -> usize {
        self.order_of(self.normalizer[id]) / self.order_of(id)
    }

    pub fn is_normal(&self, id: SubgroupId) -> bool {
        self.normalizer[id] == self.whole()
    }

    /// Whether subgroup `a` is contained in subgroup `b`.
    pub fn contains(&self, b: SubgroupId, a: SubgroupId) -> bool {
        self.subgroups[a].is_subset_of(&self.subgroups[b])
    }

    /// Whether some conjugate of class `a` lies in class `b`.
    pub fn class_subconjugate(&self, a: usize, b: usize) -> bool {
        self.subconjugate[a][b]
    }

    pub fn is_subconjugate(&self, a: SubgroupId, b: SubgroupId) -> bool {
        self.subconjugate[self.class_of[a]][self.class_of[b]]
    }

    /// `g H g^-1`.
    pub fn conjugate(&self, id: SubgroupId, g: usize) -> SubgroupId {
        let mut image: Vec<usize> = self.subgroups[id].elements.iter().map(|&x| self.group.conj(g, x)).collect();
        image.sort_unstable();
        self.find(&image).expect("conjugate of a subgroup is a subgroup")
    }

    pub fn intersection(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        let sb = &self.subgroups[b];
        let elems: Vec<usize> = self.subgroups[a].elements.iter().copied().filter(|&x| sb.contains(x)).collect();
        self.find(&elems).expect("intersection of subgroups is a subgroup")
    }

    pub fn join(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        let mut gens = self.subgroups[a].elements.clone();
        gens.extend_from_slice(&self.subgroups[b].elements);
        self.generated(&gens)
    }

    /// Elements of `within` commuting with every element of `set`.
    pub fn centralizer_in(&self, within: SubgroupId, set: &[usize]) -> SubgroupId {
        let elems: Vec<usize> = self.subgroups[within]
            .elements
            .iter()
            .copied()
            .filter(|&g| set.iter().all(|&x| self.group.mul(g, x) == self.group.mul(x, g)))
            .collect();
        self.find(&elems).expect("centralizer is a subgroup")
    }

    /// Subgroups of `level` (inclusive), in canonical order.
    pub fn subgroups_of(&self, level: SubgroupId) -> Vec<SubgroupId> {
        (0..self.len()).filter(|&k| self.contains(level, k)).collect()
    }

    /// Subgroups of `level` up to conjugacy by elements of `level`.
    pub fn level_classes(&self, level: SubgroupId) -> LevelClasses {
        let members = self.subgroups_of(level);
        let level_elems = self.subgroups[level].elements.clone();
        let mut class_of: HashMap<SubgroupId, usize> = HashMap::new();
        let mut classes: Vec<Vec<SubgroupId>> = Vec::new();
        let mut weyl = Vec::new();
        for &k in &members {
            if class_of.contains_key(&k) {
                continue;
            }
            let mut orbit = Vec::new();
            let mut stabilizer = 0usize;
            for &g in &level_elems {
                let j = self.conjugate(k, g);
                if j == k {
                    stabilizer += 1;
                }
                orbit.push(j);
            }
            orbit.sort_unstable();
            orbit.dedup();
            for &j in &orbit {
                class_of.insert(j, classes.len());
            }
            weyl.push(stabilizer / self.order_of(k));
            classes.push(orbit);
        }
        LevelClasses { level, members, classes, class_of, weyl }
    }

    /// Left cosets `gH` of `id` in the whole group, each sorted, ordered by smallest element.
    pub fn left_cosets(&self, id: SubgroupId) -> Vec<Vec<usize>> {
        let h = &self.subgroups[id];
        let mut assigned = vec![false; self.group.order()];
        let mut cosets = Vec::new();
        for g in 0..self.group.order() {
            if assigned[g] {
                continue;
            }
            let mut coset: Vec<usize> = h.elements.iter().map(|&x| self.group.mul(g, x)).collect();
            coset.sort_unstable();
            for &x in &coset {
                assigned[x] = true;
            }
            cosets.push(coset);
        }
        cosets
    }

    /// Short human-readable name such as `1`, `C3`, `G`, or `H12#5`.
    pub fn describe(&self, id: SubgroupId) -> String {
        let n = self.order_of(id);
        if id == self.whole() {
            return "G".into();
        }
        if n == 1 {
            return "1".into();
        }
        let cyclic = self.subgroups[id].elements.iter().any(|&g| self.group.element_order(g) == n);
        if cyclic {
            format!("C{n}#{id}")
        } else {
            format!("H{n}#{id}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d6_lattice() {
        let g = FiniteGroup::dihedral(6).unwrap();
        let l = SubgroupLattice::new(&g);
        assert_eq!(l.len(), 6);
        assert_eq!(l.classes().len(), 4);
        let weyl: Vec<usize> = l.class_reps().iter().map(|&r| l.weyl_order(r)).collect();
        assert_eq!(weyl, vec![6, 1, 2, 1]);
        let sizes: Vec<usize> = l.classes().iter().map(|c| c.members.len()).collect();
        assert_eq!(sizes, vec![1, 3, 1, 1]);
    }

    #[test]
    fn s4_and_a4_counts() {
        let s4 = SubgroupLattice::new(&FiniteGroup::symmetric(4).unwrap());
        assert_eq!(s4.len(), 30);
        assert_eq!(s4.classes().len(), 11);
        let a4 = SubgroupLattice::new(&FiniteGroup::alternating(4).unwrap());
        assert_eq!(a4.len(), 10);
        assert_eq!(a4.classes().len(), 5);
        let q8 = SubgroupLattice::new(&FiniteGroup::quaternion().unwrap());
        assert_eq!(q8.len(), 6);
    }

    #[test]
    fn level_classes_of_subgroup() {
        let g = FiniteGroup::symmetric(4).unwrap();
        let l = SubgroupLattice::new(&g);
        let whole = l.level_classes(l.whole());
        assert_eq!(whole.len(), 11);
        // a Klein four group that is normal in S4 splits its three C2s as one class
        let v4 = (0..l.len())
            .find(|&i| l.order_of(i) == 4 && l.is_normal(i))
            .expect("normal V4");
        let lv = l.level_classes(v4);
        assert_eq!(lv.len(), 5);
        assert!(lv.weyl.iter().zip(lv.reps()).all(|(&w, r)| w * l.order_of(r) == 4));
    }
}
