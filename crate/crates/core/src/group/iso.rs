//! Brute-force isomorphism search between small groups.

use super::FiniteGroup;

/// A small generating set, picked greedily by decreasing element order.
pub fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut by_order: Vec<usize> = g.elements().collect();
    by_order.sort_by_key(|&x| std::cmp::Reverse(g.element_order(x)));
    let mut gens = Vec::new();
    let mut span = vec![0usize];
    for x in by_order {
        if span.len() == g.order() {
            break;
        }
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = g.generate(&gens);
        }
    }
    gens
}

/// Extends generator images to a homomorphism `G -> H`, if consistent.
fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut phi = vec![usize::MAX; g.order()];
    phi[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (s, t) in gens.iter().zip(images) {
            let y = g.mul(x, *s);
            let image = h.mul(phi[x], *t);
            if phi[y] == usize::MAX {
                phi[y] = image;
                queue.push_back(y);
            } else if phi[y] != image {
                return None;
            }
        }
    }
    Some(phi)
}

/// An isomorphism `G -> H` as an element map, if one exists.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    let mut og: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
    let mut oh: Vec<usize> = h.elements().map(|x| h.element_order(x)).collect();
    let h_orders = oh.clone();
    og.sort_unstable();
    oh.sort_unstable();
    if og != oh {
        return None;
    }
    let gens = generating_set(g);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| h.elements().filter(|&t| h_orders[t] == g.element_order(s)).collect())
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    search(g, h, &gens, &candidates, &mut images)
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let depth = images.len();
    if depth == gens.len() {
        let phi = extend(g, h, gens, images)?;
        let mut hit = vec![false; h.order()];
        for &y in &phi {
            if std::mem::replace(&mut hit[y], true) {
                return None;
            }
        }
        return Some(phi);
    }
    for &t in &candidates[depth] {
        images.push(t);
        // prune: the partial assignment must already extend on the subgroup it generates
        let ok = extend(g, h, &gens[..=depth], images).is_some();
        if ok {
            if let Some(phi) = search(g, h, gens, candidates, images) {
                return Some(phi);
            }
        }
        images.pop();
    }
    None
}

pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    find_isomorphism(g, h).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_isomorphisms() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let d6 = FiniteGroup::dihedral(6).unwrap();
        assert!(is_isomorphic(&s3, &d6));
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert!(!is_isomorphic(&s3, &c6));
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let c3 = FiniteGroup::cyclic(3).unwrap();
        assert!(is_isomorphic(&FiniteGroup::direct_product(&c2, &c3).unwrap(), &c6));
        let q8 = FiniteGroup::quaternion().unwrap();
        let d8 = FiniteGroup::dihedral(8).unwrap();
        assert!(!is_isomorphic(&q8, &d8));
        let d12 = FiniteGroup::dihedral(12).unwrap();
        assert!(is_isomorphic(&FiniteGroup::direct_product(&s3, &c2).unwrap(), &d12));
    }
}
